//! Dirichlet characters with exact root-of-unity values, conductors, and
//! Gauss sums.
//!
//! A character mod q is stored as a table of exact exponents: the value at
//! a residue n coprime to q is e^{2 pi i t(n)} with t(n) a rational in
//! [0, 1). Multiplicativity, conductor computation, and parity are then
//! exact; floating point enters only when a value is materialized as a
//! complex number.
//!
//! Characters are addressed by (modulus, index). The group (Z/q)^x is
//! decomposed into cyclic factors with a fixed generator list (the factor
//! for 8 | q contributes -1 and 5; each odd prime power contributes its
//! smallest primitive root), and the index is read little-endian in mixed
//! radix over the generator orders: index = k_1 + n_1 (k_2 + n_2 (...)),
//! where the character sends generator g_i to e^{2 pi i k_i / n_i}.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::places::unit_phase;
use crate::primes::{self, factor, mul_mod, pow_mod};
use crate::rational::Rational;

/// One cyclic factor of (Z/q)^x: a generator lifted to Z/q and its order.
#[derive(Debug, Clone)]
struct CyclicFactor {
    generator: u64,
    order: u64,
}

/// Generator data for (Z/q)^x with the documented canonical ordering.
fn unit_group_factors(q: u64) -> Vec<CyclicFactor> {
    let mut factors = Vec::new();
    for (p, e) in factor(q) {
        let pe = p.pow(e);
        let rest = q / pe;
        // lift a generator of (Z/p^e)^x to Z/q: g mod p^e, 1 mod rest
        let lift = |g: u64| -> u64 {
            if rest == 1 {
                g % q
            } else {
                crt_pair(g, pe, 1, rest)
            }
        };
        if p == 2 {
            match e {
                1 => {}
                2 => factors.push(CyclicFactor {
                    generator: lift(3),
                    order: 2,
                }),
                _ => {
                    factors.push(CyclicFactor {
                        generator: lift(pe - 1),
                        order: 2,
                    });
                    factors.push(CyclicFactor {
                        generator: lift(5),
                        order: pe / 4,
                    });
                }
            }
        } else {
            let g = primitive_root_mod_odd_prime_power(p, e);
            factors.push(CyclicFactor {
                generator: lift(g),
                order: pe / p * (p - 1),
            });
        }
    }
    factors
}

fn crt_pair(a: u64, m: u64, b: u64, n: u64) -> u64 {
    // x = a mod m, x = b mod n with gcd(m, n) = 1
    let m_inv = primes::inv_mod(m % n, n);
    let diff = (b + n - a % n) % n;
    (a + m * mul_mod(diff, m_inv, n)) % (m * n)
}

fn primitive_root_mod_odd_prime_power(p: u64, e: u32) -> u64 {
    let order_p = p - 1;
    let prime_factors: Vec<u64> = factor(order_p).into_iter().map(|(q, _)| q).collect();
    let mut g = 2u64;
    loop {
        if prime_factors
            .iter()
            .all(|&q| pow_mod(g, order_p / q, p) != 1)
        {
            break;
        }
        g += 1;
    }
    if e == 1 {
        return g;
    }
    // g generates mod p; g or g + p generates mod p^e
    let pe = p.pow(e);
    if pow_mod(g, p - 1, p * p) != 1 {
        g % pe
    } else {
        (g + p) % pe
    }
}

/// A Dirichlet character given by its exact value table over Z/q.
///
/// The table stores the exponent t(n) of the root of unity e^{2 pi i t(n)}
/// at each residue coprime to q, and None elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    modulus: u64,
    exponents: Vec<Option<Rational>>,
}

impl DirichletCharacter {
    /// The character with the given index in the canonical enumeration of
    /// characters mod q. Index 0 is the principal character.
    pub fn from_index(modulus: u64, index: usize) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::OutOfDomain {
                reason: "character modulus must be positive".into(),
            });
        }
        let factors = unit_group_factors(modulus);
        let count: usize = factors.iter().map(|f| f.order as usize).product();
        if index >= count {
            return Err(Error::CharacterIndex {
                modulus,
                index,
                count,
            });
        }
        let mut rem = index;
        let mut exps = Vec::with_capacity(factors.len());
        for f in &factors {
            exps.push((rem % f.order as usize) as u64);
            rem /= f.order as usize;
        }
        Ok(Self::from_generator_exponents(modulus, &factors, &exps))
    }

    /// Number of characters mod q, i.e. phi(q).
    pub fn count(modulus: u64) -> usize {
        unit_group_factors(modulus)
            .iter()
            .map(|f| f.order as usize)
            .product()
    }

    /// All characters mod q in index order.
    pub fn all(modulus: u64) -> Vec<DirichletCharacter> {
        (0..Self::count(modulus))
            .map(|i| Self::from_index(modulus, i).expect("index in range"))
            .collect()
    }

    /// Build the full value table by walking the group as products of
    /// generator powers. The character sends g_i to e^{2 pi i k_i / n_i}.
    fn from_generator_exponents(modulus: u64, factors: &[CyclicFactor], exps: &[u64]) -> Self {
        let mut exponents: Vec<Option<Rational>> = vec![None; modulus as usize];
        let r = factors.len();
        let mut ks = vec![0u64; r];
        'walk: loop {
            let mut residue = 1u64 % modulus;
            let mut t = Rational::zero();
            for (i, f) in factors.iter().enumerate() {
                residue = mul_mod(residue, pow_mod(f.generator, ks[i], modulus), modulus);
                t += &Rational::new((ks[i] * exps[i]).into(), f.order.into()).unwrap();
            }
            exponents[residue as usize] = Some(t.mod_one());
            let mut i = 0;
            loop {
                if i == r {
                    break 'walk;
                }
                ks[i] += 1;
                if ks[i] < factors[i].order {
                    break;
                }
                ks[i] = 0;
                i += 1;
            }
        }
        DirichletCharacter { modulus, exponents }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Exact exponent t(n) with value e^{2 pi i t(n)}, or None when n is
    /// not coprime to the modulus.
    pub fn exponent(&self, n: u64) -> Option<&Rational> {
        self.exponents[(n % self.modulus) as usize].as_ref()
    }

    /// Character value at n, zero when gcd(n, q) > 1.
    pub fn eval(&self, n: u64) -> Complex64 {
        match self.exponent(n) {
            Some(t) => unit_phase(t),
            None => Complex64::new(0.0, 0.0),
        }
    }

    pub fn is_principal(&self) -> bool {
        self.exponents
            .iter()
            .all(|t| t.as_ref().is_none_or(|t| t.is_zero()))
    }

    /// Parity: 0 when the character is even (value 1 at -1), 1 when odd.
    pub fn parity(&self) -> u8 {
        if self.modulus <= 2 {
            return 0;
        }
        let t = self
            .exponent(self.modulus - 1)
            .expect("-1 is a unit");
        if t.is_zero() {
            0
        } else {
            1
        }
    }

    pub fn conjugate(&self) -> DirichletCharacter {
        DirichletCharacter {
            modulus: self.modulus,
            exponents: self
                .exponents
                .iter()
                .map(|t| t.as_ref().map(|t| (-t).mod_one()))
                .collect(),
        }
    }

    /// Smallest f | q through which the character factors.
    pub fn conductor(&self) -> u64 {
        conductor_of_exponent_table(self.modulus, &self.exponents)
            .expect("stored table is multiplicative by construction")
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// Gauss sum tau(chi) = sum over n mod q of chi(n) e^{2 pi i n / q}.
    ///
    /// Requires primitivity; for a primitive character |tau| = sqrt(q).
    pub fn gauss_sum(&self) -> Result<Complex64> {
        let c = self.conductor();
        if c != self.modulus {
            return Err(Error::ImprimitiveCharacter {
                modulus: self.modulus,
                conductor: c,
            });
        }
        let q = self.modulus;
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 0..q {
            if let Some(t) = self.exponent(n) {
                let e = t + &Rational::new(n.into(), q.into()).unwrap();
                acc += unit_phase(&e);
            }
        }
        Ok(acc)
    }

    /// Epsilon factor tau(chi) / (i^a sqrt(q)); unit modulus for primitive
    /// characters.
    pub fn epsilon_factor(&self) -> Result<Complex64> {
        let tau = self.gauss_sum()?;
        let ia = if self.parity() == 1 {
            Complex64::new(0.0, 1.0)
        } else {
            Complex64::new(1.0, 0.0)
        };
        Ok(tau / (ia * (self.modulus as f64).sqrt()))
    }
}

/// Conductor of an explicit exponent table over Z/q: the smallest divisor
/// f of q such that the character is trivial on every unit congruent to 1
/// mod f. Errors when the table is not a character of (Z/q)^x.
pub fn conductor_of_exponent_table(q: u64, table: &[Option<Rational>]) -> Result<u64> {
    if table.len() != q as usize {
        return Err(Error::NonMultiplicativeTable { modulus: q });
    }
    // multiplicativity and unit-support check
    for a in 0..q {
        for b in a..q {
            let (ta, tb) = (&table[a as usize], &table[b as usize]);
            let tab = &table[mul_mod(a, b, q) as usize];
            match (ta, tb, tab) {
                (Some(ta), Some(tb), Some(tab)) => {
                    if (ta + tb).mod_one() != tab.mod_one() {
                        return Err(Error::NonMultiplicativeTable { modulus: q });
                    }
                }
                (Some(_), Some(_), None) => {
                    return Err(Error::NonMultiplicativeTable { modulus: q })
                }
                _ => {}
            }
        }
    }
    for n in 0..q {
        let coprime = num_integer::Integer::gcd(&n, &q) == 1;
        if coprime != table[n as usize].is_some() {
            return Err(Error::NonMultiplicativeTable { modulus: q });
        }
    }
    let mut divisors: Vec<u64> = (1..=q).filter(|d| q.is_multiple_of(*d)).collect();
    divisors.sort_unstable();
    'next: for f in divisors {
        for n in 0..q {
            if n % f == 1 % f {
                if let Some(t) = &table[n as usize] {
                    if !t.is_zero() {
                        continue 'next;
                    }
                }
            }
        }
        return Ok(f);
    }
    Ok(q)
}

//! Exact rational arithmetic with p-adic valuations and the p-adic
//! fractional part.
//!
//! Every finite-place computation in this crate runs on [`Rational`]: the
//! rationals are dense in each Q_p, and everything in scope (coset
//! membership, character values, measures) depends only on valuations and
//! residues, so no truncated digit expansions are ever stored.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::primes;

/// An exact rational number, always in lowest terms with positive
/// denominator. Zero is canonically 0/1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

/// A p-adic valuation value: an integer, or infinity exactly for the
/// valuation of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    /// Finite value, or None for infinity.
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// True when self >= other in the extended ordering (infinity on top).
    pub fn at_least(self, bound: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= bound,
            Valuation::Infinite => true,
        }
    }

    pub fn min(self, other: Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Infinite, o) => o,
            (s, Valuation::Infinite) => s,
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a.min(b)),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

fn vp_bigint(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0i64;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&n, &p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

impl Rational {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn from_integer<T: Into<BigInt>>(n: T) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// a/b from machine integers; panics on b = 0.
    pub fn ratio(a: i64, b: i64) -> Self {
        assert!(b != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(a), BigInt::from(b)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    pub fn pow(&self, exp: i32) -> Rational {
        if exp == 0 {
            return Rational::one();
        }
        assert!(!self.is_zero() || exp > 0, "negative power of zero");
        Rational(self.0.pow(exp))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().expect("rational representable as f64")
    }

    /// p-adic valuation: the exponent of p in self, infinity for zero.
    ///
    /// Errors when p is not prime.
    pub fn valuation(&self, p: u64) -> Result<Valuation> {
        if !primes::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(self.valuation_unchecked(p))
    }

    /// As [`Rational::valuation`] but without the primality gate, for
    /// internal call sites that already hold a known prime.
    pub(crate) fn valuation_unchecked(&self, p: u64) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        Valuation::Finite(vp_bigint(self.numer(), p) - vp_bigint(self.denom(), p))
    }

    /// Normalized absolute value at a finite place: p^{-v_p(x)} as an exact
    /// rational, with |0| = 0.
    pub fn abs_finite(&self, p: u64) -> Result<Rational> {
        match self.valuation(p)? {
            Valuation::Infinite => Ok(Rational::zero()),
            Valuation::Finite(v) => {
                let pk = Rational::from_integer(p);
                Ok(pk.pow(i32::try_from(-v).expect("valuation fits in i32")))
            }
        }
    }

    /// p-adic fractional part: the unique r in [0,1) with denominator a
    /// power of p such that v_p(x - r) >= 0. Zero exactly when x is p-integral.
    ///
    /// Computed by writing x = a / (b p^k) with p coprime to a, b and k > 0,
    /// then r = (a b^{-1} mod p^k) / p^k.
    pub fn frac_p(&self, p: u64) -> Result<Rational> {
        if !primes::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let v = match self.valuation_unchecked(p) {
            Valuation::Infinite => return Ok(Rational::zero()),
            Valuation::Finite(v) => v,
        };
        if v >= 0 {
            return Ok(Rational::zero());
        }
        let k = u32::try_from(-v).expect("valuation magnitude fits in u32");
        let pk = BigInt::from(p).pow(k);
        // self = a / (b * p^k) with p coprime to a and b
        let a = self.numer();
        let b = self.denom() / &pk;
        let b_inv = mod_inverse_bigint(&b, &pk);
        let c = num_integer::Integer::mod_floor(&(a * b_inv), &pk);
        Ok(Rational(BigRational::new(c, pk)))
    }

    /// Reduce into [0, 1) modulo 1.
    pub fn mod_one(&self) -> Rational {
        let f = num_integer::Integer::mod_floor(self.numer(), self.denom());
        Rational(BigRational::new(f, self.denom().clone()))
    }

    /// Residue of a p-integral unit modulo p^e, as an integer in [0, p^e).
    ///
    /// Requires v_p(self) = 0 so that the denominator is invertible mod p^e.
    pub fn residue_mod(&self, p: u64, e: u32) -> Result<u64> {
        match self.valuation(p)? {
            Valuation::Finite(0) => {}
            _ => {
                return Err(Error::OutOfDomain {
                    reason: format!("residue mod {p}^{e} needs a p-adic unit"),
                })
            }
        }
        let m = BigInt::from(p).pow(e);
        let d_inv = mod_inverse_bigint(&num_integer::Integer::mod_floor(self.denom(), &m), &m);
        let r = num_integer::Integer::mod_floor(&(self.numer() * d_inv), &m);
        Ok(r.to_u64().expect("residue fits in u64"))
    }
}

fn mod_inverse_bigint(a: &BigInt, m: &BigInt) -> BigInt {
    let e = num_integer::Integer::extended_gcd(a, m);
    assert!(e.gcd.is_one(), "mod_inverse of non-unit");
    num_integer::Integer::mod_floor(&e.x, m)
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Accepts "a/b" or "a" with an optional leading minus; rejects b = 0.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let s = s.trim();
        let (num_s, den_s) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let numer: BigInt = num_s.parse().map_err(|_| bad())?;
        let denom: BigInt = match den_s {
            Some(d) => {
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_negative() || d.is_zero() {
                    return Err(if d.is_zero() {
                        Error::ZeroDenominator
                    } else {
                        bad()
                    });
                }
                d
            }
            None => BigInt::one(),
        };
        Rational::new(numer, denom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(
            rat("12").valuation(2).unwrap(),
            Valuation::Finite(2),
            "12 = 2^2 * 3"
        );
        assert_eq!(rat("0").valuation(5).unwrap(), Valuation::Infinite);
        assert_eq!(rat("1/9").valuation(3).unwrap(), Valuation::Finite(-2));
    }

    #[test]
    fn valuation_rejects_composite() {
        assert_eq!(rat("12").valuation(6), Err(Error::NotPrime(6)));
        assert_eq!(rat("1/2").frac_p(4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn abs_at_finite_place() {
        assert_eq!(rat("12").abs_finite(2).unwrap(), rat("1/4"));
        assert_eq!(rat("0").abs_finite(7).unwrap(), Rational::zero());
        assert_eq!(rat("-1/9").abs_finite(3).unwrap(), rat("9"));
    }

    #[test]
    fn frac_p_examples() {
        assert_eq!(rat("3/8").frac_p(2).unwrap(), rat("3/8"));
        assert_eq!(rat("1/3").frac_p(5).unwrap(), Rational::zero());
        // 7/6 - 1/2 = 2/3 has v_2 = 1 >= 0
        assert_eq!(rat("7/6").frac_p(2).unwrap(), rat("1/2"));
    }

    #[test]
    fn frac_p_defect_and_idempotence() {
        for s in ["7/6", "-22/45", "355/113", "1/1024", "-3/250"] {
            let x = rat(s);
            for p in [2u64, 3, 5, 7, 11, 113] {
                let r = x.frac_p(p).unwrap();
                assert!(r >= Rational::zero() && r < Rational::one());
                assert!((&x - &r).valuation(p).unwrap().at_least(0));
                assert_eq!(r.frac_p(p).unwrap(), r);
                if x.valuation(p).unwrap().at_least(0) {
                    assert!(r.is_zero());
                }
            }
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(rat(" -3 / 4 "), Rational::ratio(-3, 4));
        assert_eq!(rat("6/4"), Rational::ratio(3, 2));
        assert!(matches!(
            "1/0".parse::<Rational>(),
            Err(Error::ZeroDenominator)
        ));
        assert!("a/b".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
    }

    #[test]
    fn residue_of_unit() {
        // 7/6 mod 5^2: 6^{-1} mod 25 = 21, 7*21 = 147 = 22 mod 25
        assert_eq!(rat("7/6").residue_mod(5, 2).unwrap(), 22);
        assert!(rat("1/5").residue_mod(5, 2).is_err());
    }

    #[test]
    fn mod_one_reduction() {
        assert_eq!(rat("7/6").mod_one(), rat("1/6"));
        assert_eq!(rat("-1/6").mod_one(), rat("5/6"));
        assert_eq!(rat("3").mod_one(), Rational::zero());
    }
}

//! Places of Q, adele and idele points with finite nonstandard support,
//! the global norm, and standard additive characters.
//!
//! An adele or idele is stored as one real component plus a finite map
//! prime -> rational. Unlisted primes are standard: semantically an element
//! of Z_p for adeles and a unit of Z_p for ideles, and no operation ever
//! reads them; correctness relies on standard components contributing a
//! factor 1.
//!
//! Character conventions, fixed once for the whole crate: the real place
//! uses psi(x) = e^{-2 pi i x} and each finite place uses
//! psi_p(x) = e^{+2 pi i frac_p(x)}. This is the sign pairing that makes
//! the global character trivial on diagonally embedded rationals and the
//! standard test function self-dual.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::primes;
use crate::rational::{Rational, Valuation};

/// A place of Q: the real place or one finite place per prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Real,
    Finite(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

/// A real number that is exact when it entered the computation as a
/// rational (diagonal embeddings, literals) and floating point otherwise.
/// Keeping the exact form is what lets the Artin product formula and the
/// global character triviality be tested with zero tolerance.
#[derive(Debug, Clone, PartialEq)]
pub enum RealPoint {
    Exact(Rational),
    Approx(f64),
}

impl RealPoint {
    pub fn one() -> Self {
        RealPoint::Exact(Rational::one())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RealPoint::Exact(q) => q.to_f64(),
            RealPoint::Approx(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RealPoint::Exact(q) => q.is_zero(),
            RealPoint::Approx(x) => *x == 0.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            RealPoint::Exact(q) => q.is_negative(),
            RealPoint::Approx(x) => *x < 0.0,
        }
    }

    pub fn abs(&self) -> RealPoint {
        match self {
            RealPoint::Exact(q) => RealPoint::Exact(q.abs()),
            RealPoint::Approx(x) => RealPoint::Approx(x.abs()),
        }
    }

    pub fn recip(&self) -> RealPoint {
        match self {
            RealPoint::Exact(q) => RealPoint::Exact(q.recip()),
            RealPoint::Approx(x) => RealPoint::Approx(1.0 / x),
        }
    }

    fn mul(&self, other: &RealPoint) -> RealPoint {
        match (self, other) {
            (RealPoint::Exact(a), RealPoint::Exact(b)) => RealPoint::Exact(a * b),
            _ => RealPoint::Approx(self.to_f64() * other.to_f64()),
        }
    }

    /// Exact value if this point carries one.
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            RealPoint::Exact(q) => Some(q),
            RealPoint::Approx(_) => None,
        }
    }
}

impl From<f64> for RealPoint {
    fn from(x: f64) -> Self {
        RealPoint::Approx(x)
    }
}

impl From<Rational> for RealPoint {
    fn from(q: Rational) -> Self {
        RealPoint::Exact(q)
    }
}

/// An adele of Q: real component plus finitely many listed finite
/// components; unlisted primes are integral.
///
/// The `tail` field is the canonical representative reported for unlisted
/// components: 0 for hand-built adeles, q for diagonal(q), gamma for a
/// scaled idele. It is integral at every unlisted prime by construction,
/// so the semantic tail constraint always holds.
#[derive(Debug, Clone, PartialEq)]
pub struct AdelePoint {
    real: RealPoint,
    finite: BTreeMap<u64, Rational>,
    tail: Rational,
}

/// An idele of Q: like an adele but invertible, so the real component and
/// every listed finite component are nonzero; unlisted primes are units.
#[derive(Debug, Clone, PartialEq)]
pub struct IdelePoint {
    real: RealPoint,
    finite: BTreeMap<u64, Rational>,
}

fn check_prime_keys(finite: &BTreeMap<u64, Rational>) -> Result<()> {
    for &p in finite.keys() {
        if !primes::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
    }
    Ok(())
}

impl AdelePoint {
    pub fn new(real: RealPoint, finite: BTreeMap<u64, Rational>) -> Result<Self> {
        check_prime_keys(&finite)?;
        Ok(AdelePoint {
            real,
            finite,
            tail: Rational::zero(),
        })
    }

    /// The diagonal embedding x -> (x, x, x, ...): the listed support is
    /// the set of primes dividing the numerator or denominator, which is
    /// exactly where the component fails to be a unit. Unlisted components
    /// report x itself.
    pub fn diagonal(q: &Rational) -> Self {
        AdelePoint {
            real: RealPoint::Exact(q.clone()),
            finite: diagonal_support(q),
            tail: q.clone(),
        }
    }

    pub fn real(&self) -> &RealPoint {
        &self.real
    }

    pub fn finite_components(&self) -> &BTreeMap<u64, Rational> {
        &self.finite
    }

    /// Listed component at a finite place, or None when unlisted.
    pub fn finite_component(&self, p: u64) -> Option<&Rational> {
        self.finite.get(&p)
    }

    /// The canonical representative carried by unlisted components.
    pub fn tail_representative(&self) -> Rational {
        self.tail.clone()
    }

    /// The adele -x.
    pub fn negate(&self) -> AdelePoint {
        let real = match &self.real {
            RealPoint::Exact(q) => RealPoint::Exact(-q),
            RealPoint::Approx(x) => RealPoint::Approx(-x),
        };
        AdelePoint {
            real,
            finite: self.finite.iter().map(|(&p, x)| (p, -x)).collect(),
            tail: -&self.tail,
        }
    }

    /// Exact-plus-float exponent of the global additive character: the
    /// character value is e^{2 pi i (rational + float)}. The rational part
    /// collects -x_real (when exact) and all finite frac_p contributions,
    /// reduced mod 1; the float part is -x_real when the real component is
    /// floating point.
    pub fn additive_exponent(&self) -> ExponentSum {
        let mut rational = Rational::zero();
        let mut float = 0.0f64;
        match &self.real {
            RealPoint::Exact(q) => rational -= q,
            RealPoint::Approx(x) => float -= x,
        }
        for (&p, x) in &self.finite {
            rational += &x.frac_p(p).expect("listed key is prime");
        }
        ExponentSum {
            rational: rational.mod_one(),
            float,
        }
    }
}

impl IdelePoint {
    pub fn new(real: RealPoint, finite: BTreeMap<u64, Rational>) -> Result<Self> {
        if real.is_zero() {
            return Err(Error::ZeroComponent {
                what: "real place".into(),
            });
        }
        check_prime_keys(&finite)?;
        for (p, x) in &finite {
            if x.is_zero() {
                return Err(Error::ZeroComponent {
                    what: format!("prime {p}"),
                });
            }
        }
        Ok(IdelePoint { real, finite })
    }

    /// Idele with the given real component and all finite places standard.
    pub fn from_real(real: impl Into<RealPoint>) -> Result<Self> {
        IdelePoint::new(real.into(), BTreeMap::new())
    }

    pub fn diagonal(q: &Rational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::ZeroComponent {
                what: "diagonal of zero".into(),
            });
        }
        Ok(IdelePoint {
            real: RealPoint::Exact(q.clone()),
            finite: diagonal_support(q),
        })
    }

    pub fn real(&self) -> &RealPoint {
        &self.real
    }

    pub fn finite_components(&self) -> &BTreeMap<u64, Rational> {
        &self.finite
    }

    /// Listed component at p, or the standard unit 1 when unlisted.
    pub fn component_or_unit(&self, p: u64) -> Rational {
        self.finite.get(&p).cloned().unwrap_or_else(Rational::one)
    }

    /// Global idele norm: the product of normalized local absolute values
    /// over all places. Tail units contribute 1, so only the real place
    /// and the listed primes are read. Exact when the real component is.
    pub fn norm(&self) -> RealPoint {
        let mut acc = self.real.abs();
        for (&p, x) in &self.finite {
            let local = x.abs_finite(p).expect("listed key is prime, x nonzero");
            acc = acc.mul(&RealPoint::Exact(local));
        }
        acc
    }

    /// Componentwise inverse; tail units invert to tail units.
    pub fn inverse(&self) -> IdelePoint {
        IdelePoint {
            real: self.real.recip(),
            finite: self
                .finite
                .iter()
                .map(|(&p, x)| (p, x.recip()))
                .collect(),
        }
    }

    /// Componentwise product over the union of listed supports.
    pub fn mul(&self, other: &IdelePoint) -> IdelePoint {
        let mut finite = self.finite.clone();
        for (&p, y) in &other.finite {
            finite
                .entry(p)
                .and_modify(|x| *x *= y)
                .or_insert_with(|| y.clone());
        }
        IdelePoint {
            real: self.real.mul(&other.real),
            finite,
        }
    }

    /// Forget invertibility. Unlisted idele components are units; the
    /// canonical representative is 1.
    pub fn to_adele(&self) -> AdelePoint {
        AdelePoint {
            real: self.real.clone(),
            finite: self.finite.clone(),
            tail: Rational::one(),
        }
    }

    /// Scale by a rational at every place: the adele gamma * x for gamma
    /// in Q. Primes dividing gamma are promoted from the tail into the
    /// listed support; the remaining tail units scale to gamma.
    pub fn scale_diagonal(&self, gamma: &Rational) -> AdelePoint {
        let real = match &self.real {
            RealPoint::Exact(q) => RealPoint::Exact(q * gamma),
            RealPoint::Approx(x) => RealPoint::Approx(x * gamma.to_f64()),
        };
        let mut finite = self.finite.clone();
        for p in primes::prime_divisors_bigint(gamma.numer())
            .into_iter()
            .chain(primes::prime_divisors_bigint(gamma.denom()))
        {
            finite.entry(p).or_insert_with(Rational::one);
        }
        for x in finite.values_mut() {
            *x *= gamma;
        }
        AdelePoint {
            real,
            finite,
            tail: gamma.clone(),
        }
    }
}

fn diagonal_support(q: &Rational) -> BTreeMap<u64, Rational> {
    let mut finite = BTreeMap::new();
    if q.is_zero() {
        return finite;
    }
    for p in primes::prime_divisors_bigint(q.numer())
        .into_iter()
        .chain(primes::prime_divisors_bigint(q.denom()))
    {
        finite.insert(p, q.clone());
    }
    finite
}

fn parse_point_literal(s: &str) -> Result<(RealPoint, BTreeMap<u64, Rational>)> {
    let bad = |msg: &str| Error::OutOfDomain {
        reason: format!("bad point literal `{s}`: {msg}"),
    };
    let mut real: Option<RealPoint> = None;
    let mut finite = BTreeMap::new();
    for part in s.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| bad("expected key=value"))?;
        if key.trim() == "real" {
            let x: f64 = value
                .trim()
                .parse()
                .map_err(|_| bad("real component must be a float"))?;
            real = Some(RealPoint::Approx(x));
        } else {
            let p: u64 = key
                .trim()
                .parse()
                .map_err(|_| bad("finite key must be a prime"))?;
            let q: Rational = value.trim().parse()?;
            finite.insert(p, q);
        }
    }
    Ok((real.ok_or_else(|| bad("missing real component"))?, finite))
}

/// Literal syntax `real=<float>;2=<rational>;3=<rational>`; unlisted
/// primes are the standard tail.
impl std::str::FromStr for IdelePoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (real, finite) = parse_point_literal(s)?;
        IdelePoint::new(real, finite)
    }
}

impl std::str::FromStr for AdelePoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (real, finite) = parse_point_literal(s)?;
        AdelePoint::new(real, finite)
    }
}

/// Exact rational plus floating remainder, representing a character
/// exponent; the character value is e^{2 pi i (rational + float)}.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentSum {
    pub rational: Rational,
    pub float: f64,
}

impl ExponentSum {
    /// True when the exponent is exactly an integer, i.e. the character
    /// value is exactly 1. Only meaningful for fully exact inputs.
    pub fn is_exactly_integral(&self) -> bool {
        self.float == 0.0 && self.rational.mod_one().is_zero()
    }

    pub fn to_phase(&self) -> Complex64 {
        let t = self.rational.mod_one().to_f64() + self.float;
        Complex64::from_polar(1.0, std::f64::consts::TAU * t)
    }
}

/// e^{2 pi i t} with the exponent reduced exactly mod 1 before the single
/// floating-point exponential.
pub fn unit_phase(t: &Rational) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * t.mod_one().to_f64())
}

/// Standard additive character of the real place: e^{-2 pi i x}.
pub fn additive_character_real(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, -std::f64::consts::TAU * x)
}

/// Standard additive character of Q_p: e^{2 pi i frac_p(x)}, well defined
/// because frac_p only changes by integers under p-integral perturbations.
pub fn additive_character_finite(p: u64, x: &Rational) -> Result<Complex64> {
    Ok(unit_phase(&x.frac_p(p)?))
}

/// Local additive character at a place, for exact rational arguments.
pub fn additive_character(place: Place, x: &Rational) -> Result<Complex64> {
    match place {
        Place::Real => Ok(additive_character_real(x.to_f64())),
        Place::Finite(p) => additive_character_finite(p, x),
    }
}

/// Global additive character: the product of the local characters over the
/// real place and all listed finite places. Exponents are accumulated
/// exactly mod 1 before a single complex exponential whenever the real
/// component is exact.
pub fn global_additive_character(x: &AdelePoint) -> Complex64 {
    x.additive_exponent().to_phase()
}

/// Normalized absolute value at one place. Finite places return an exact
/// rational p^{-v}; the real place returns |x| exactly as well.
pub fn abs_at_place(x: &Rational, place: Place) -> Rational {
    match place {
        Place::Real => x.abs(),
        Place::Finite(p) => x.abs_finite(p).expect("place carries a prime"),
    }
}

/// Membership test for the coset a + p^n Z_p, decided exactly.
pub fn in_coset(x: &Rational, a: &Rational, p: u64, n: i64) -> bool {
    match (x - a).valuation_unchecked(p) {
        Valuation::Infinite => true,
        Valuation::Finite(v) => v >= n,
    }
}

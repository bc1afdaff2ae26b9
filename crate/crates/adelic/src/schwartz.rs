//! Local and global Schwartz-Bruhat test functions, closed under Fourier
//! transform.
//!
//! At the real place a test function is a finite sum of terms
//! c x^k e^{-pi a x^2} with k in {0, 1}; the two degrees are the even and
//! odd functions the zeta machinery needs, one per parity of unitary part.
//! At a finite place it is a twisted step function: a finite sum of terms
//! c psi_p(b x) 1[x in a + p^n Z_p], the smallest transform-closed class
//! containing coset indicators.
//!
//! Transform conventions follow the crate-wide characters from
//! [`crate::places`]: the finite-place transform of one term is
//!
//!   (c, b, a, n)  ->  (c p^{-n} psi_p(a b), b' = a, a' = -b, n' = -n)
//!
//! and the archimedean rules are (c, 0, a) -> (c a^{-1/2}, 0, 1/a) and
//! (c, 1, a) -> (-i c a^{-3/2}, 1, 1/a). Applying either rule twice gives
//! x -> f(-x) on the nose.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::places::{in_coset, unit_phase, AdelePoint};
use crate::primes;
use crate::rational::Rational;

/// One archimedean term c x^k e^{-pi a x^2}.
#[derive(Debug, Clone, PartialEq)]
pub struct ArchTerm {
    pub coeff: Complex64,
    /// Degree k in {0, 1}.
    pub degree: u8,
    /// Gaussian scale a > 0.
    pub scale: f64,
}

/// A finite sum of Gaussian-polynomial terms; the empty sum is zero.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ArchFunction {
    terms: Vec<ArchTerm>,
}

impl ArchFunction {
    pub fn new(terms: Vec<ArchTerm>) -> Result<Self> {
        for t in &terms {
            if t.scale.is_nan() || t.scale <= 0.0 {
                return Err(Error::OutOfDomain {
                    reason: format!("gaussian scale must be positive, got {}", t.scale),
                });
            }
            if t.degree > 1 {
                return Err(Error::OutOfDomain {
                    reason: format!("term degree must be 0 or 1, got {}", t.degree),
                });
            }
        }
        Ok(ArchFunction { terms })
    }

    /// The standard self-dual component e^{-pi x^2}.
    pub fn standard_gaussian() -> Self {
        ArchFunction {
            terms: vec![ArchTerm {
                coeff: Complex64::new(1.0, 0.0),
                degree: 0,
                scale: 1.0,
            }],
        }
    }

    /// x e^{-pi x^2}, the odd standard component.
    pub fn standard_odd() -> Self {
        ArchFunction {
            terms: vec![ArchTerm {
                coeff: Complex64::new(1.0, 0.0),
                degree: 1,
                scale: 1.0,
            }],
        }
    }

    pub fn gaussian(scale: f64) -> Result<Self> {
        ArchFunction::new(vec![ArchTerm {
            coeff: Complex64::new(1.0, 0.0),
            degree: 0,
            scale,
        }])
    }

    pub fn terms(&self) -> &[ArchTerm] {
        &self.terms
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let poly = if t.degree == 0 { 1.0 } else { x };
            acc += t.coeff * poly * (-std::f64::consts::PI * t.scale * x * x).exp();
        }
        acc
    }

    pub fn at_zero(&self) -> Complex64 {
        self.terms
            .iter()
            .filter(|t| t.degree == 0)
            .map(|t| t.coeff)
            .sum()
    }

    /// Fourier transform with kernel e^{-2 pi i x y}.
    pub fn fourier_transform(&self) -> ArchFunction {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let inv = 1.0 / t.scale;
                if t.degree == 0 {
                    ArchTerm {
                        coeff: t.coeff * t.scale.sqrt().recip(),
                        degree: 0,
                        scale: inv,
                    }
                } else {
                    ArchTerm {
                        coeff: t.coeff * Complex64::new(0.0, -1.0) * t.scale.powf(-1.5),
                        degree: 1,
                        scale: inv,
                    }
                }
            })
            .collect();
        ArchFunction { terms }
    }

    /// Additive integral: each even term contributes c a^{-1/2}, odd terms
    /// integrate to zero.
    pub fn integral(&self) -> Complex64 {
        self.terms
            .iter()
            .filter(|t| t.degree == 0)
            .map(|t| t.coeff * t.scale.sqrt().recip())
            .sum()
    }

    /// Smallest Gaussian scale, governing truncation of lattice sums.
    pub fn min_scale(&self) -> Option<f64> {
        self.terms
            .iter()
            .map(|t| t.scale)
            .min_by(|a, b| a.partial_cmp(b).expect("scales are finite"))
    }

    pub fn negate_argument(&self) -> ArchFunction {
        ArchFunction {
            terms: self
                .terms
                .iter()
                .map(|t| ArchTerm {
                    coeff: if t.degree == 1 { -t.coeff } else { t.coeff },
                    ..*t
                })
                .collect(),
        }
    }
}

/// One finite-place term c psi_p(b x) 1[x in a + p^n Z_p].
#[derive(Debug, Clone, PartialEq)]
pub struct StepTerm {
    pub coeff: Complex64,
    /// Additive twist b.
    pub twist: Rational,
    /// Coset center a.
    pub center: Rational,
    /// Coset level n: membership means v_p(x - a) >= n.
    pub level: i64,
}

/// A twisted step function on Q_p.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistedStepFunction {
    prime: u64,
    terms: Vec<StepTerm>,
}

impl TwistedStepFunction {
    pub fn new(prime: u64, terms: Vec<StepTerm>) -> Result<Self> {
        if !primes::is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        Ok(TwistedStepFunction { prime, terms })
    }

    /// The standard component 1_{Z_p}.
    pub fn integers_indicator(prime: u64) -> Self {
        TwistedStepFunction {
            prime,
            terms: vec![StepTerm {
                coeff: Complex64::new(1.0, 0.0),
                twist: Rational::zero(),
                center: Rational::zero(),
                level: 0,
            }],
        }
    }

    /// Indicator of the coset a + p^n Z_p.
    pub fn coset_indicator(prime: u64, center: Rational, level: i64) -> Result<Self> {
        TwistedStepFunction::new(
            prime,
            vec![StepTerm {
                coeff: Complex64::new(1.0, 0.0),
                twist: Rational::zero(),
                center,
                level,
            }],
        )
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn terms(&self) -> &[StepTerm] {
        &self.terms
    }

    pub fn is_standard(&self) -> bool {
        self.terms.len() == 1 && {
            let t = &self.terms[0];
            t.coeff == Complex64::new(1.0, 0.0)
                && t.twist.is_zero()
                && t.center.is_zero()
                && t.level == 0
        }
    }

    /// Pointwise evaluation; coset membership is decided exactly via the
    /// valuation of x - a.
    pub fn eval(&self, x: &Rational) -> Complex64 {
        let p = self.prime;
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            if !in_coset(x, &t.center, p, t.level) {
                continue;
            }
            if t.twist.is_zero() {
                acc += t.coeff;
            } else {
                let e = (&t.twist * x).frac_p(p).expect("prime checked at build");
                acc += t.coeff * unit_phase(&e);
            }
        }
        acc
    }

    pub fn at_zero(&self) -> Complex64 {
        self.terms
            .iter()
            .filter(|t| t.center.valuation_unchecked(self.prime).at_least(t.level))
            .map(|t| t.coeff)
            .sum()
    }

    /// Termwise Fourier transform; the class is closed under it.
    pub fn fourier_transform(&self) -> TwistedStepFunction {
        let p = self.prime;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let phase = (&t.center * &t.twist).frac_p(p).expect("prime checked");
                let vol = (p as f64).powi(-i32::try_from(t.level).expect("level fits i32"));
                StepTerm {
                    coeff: t.coeff * vol * unit_phase(&phase),
                    twist: t.center.clone(),
                    center: -&t.twist,
                    level: -t.level,
                }
            })
            .collect();
        TwistedStepFunction { prime: p, terms }
    }

    /// Additive integral over Q_p, i.e. the transform evaluated at 0: the
    /// term (c, b, a, n) contributes c p^{-n} psi_p(a b) when v_p(b) >= -n
    /// and nothing otherwise.
    pub fn integral(&self) -> Complex64 {
        let p = self.prime;
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            if !t.twist.valuation_unchecked(p).at_least(-t.level) {
                continue;
            }
            let phase = (&t.center * &t.twist).frac_p(p).expect("prime checked");
            let vol = (p as f64).powi(-i32::try_from(t.level).expect("level fits i32"));
            acc += t.coeff * vol * unit_phase(&phase);
        }
        acc
    }

    /// Scalar multiple, staying in the term algebra.
    pub fn scaled(&self, factor: Complex64) -> TwistedStepFunction {
        TwistedStepFunction {
            prime: self.prime,
            terms: self
                .terms
                .iter()
                .map(|t| StepTerm {
                    coeff: t.coeff * factor,
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// Termwise sum of two step functions at the same prime.
    pub fn add(&self, other: &TwistedStepFunction) -> Result<TwistedStepFunction> {
        if self.prime != other.prime {
            return Err(Error::Unsupported {
                reason: "cannot add step functions at different primes".into(),
            });
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(TwistedStepFunction {
            prime: self.prime,
            terms,
        })
    }

    pub fn negate_argument(&self) -> TwistedStepFunction {
        TwistedStepFunction {
            prime: self.prime,
            terms: self
                .terms
                .iter()
                .map(|t| StepTerm {
                    coeff: t.coeff,
                    twist: -&t.twist,
                    center: -&t.center,
                    level: t.level,
                })
                .collect(),
        }
    }
}

/// A factorizable global test function: one archimedean component, finitely
/// many nonstandard finite components, and the indicator of Z_p at every
/// other prime.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalTestFunction {
    arch: ArchFunction,
    finite: BTreeMap<u64, TwistedStepFunction>,
}

impl GlobalTestFunction {
    /// The standard self-dual function: Gaussian at the real place, 1_{Z_p}
    /// everywhere else.
    pub fn standard() -> Self {
        GlobalTestFunction {
            arch: ArchFunction::standard_gaussian(),
            finite: BTreeMap::new(),
        }
    }

    /// Standard function for a given parity: the Gaussian for even unitary
    /// parts, x times the Gaussian for odd ones.
    pub fn standard_for_parity(parity: u8) -> Self {
        GlobalTestFunction {
            arch: if parity == 0 {
                ArchFunction::standard_gaussian()
            } else {
                ArchFunction::standard_odd()
            },
            finite: BTreeMap::new(),
        }
    }

    pub fn new(arch: ArchFunction, finite: BTreeMap<u64, TwistedStepFunction>) -> Result<Self> {
        for (&p, f) in &finite {
            if f.prime() != p {
                return Err(Error::Unsupported {
                    reason: format!("component keyed {p} is a step function at {}", f.prime()),
                });
            }
        }
        Ok(GlobalTestFunction { arch, finite })
    }

    pub fn with_finite_part(mut self, part: TwistedStepFunction) -> Self {
        self.finite.insert(part.prime(), part);
        self
    }

    pub fn arch(&self) -> &ArchFunction {
        &self.arch
    }

    pub fn finite_parts(&self) -> &BTreeMap<u64, TwistedStepFunction> {
        &self.finite
    }

    /// The local component at p: the listed part, or 1_{Z_p}.
    pub fn finite_part_or_standard(&self, p: u64) -> TwistedStepFunction {
        self.finite
            .get(&p)
            .cloned()
            .unwrap_or_else(|| TwistedStepFunction::integers_indicator(p))
    }

    /// Product of local evaluations over the union of the supports of f
    /// and x. At primes listed in x but standard for f the factor is the
    /// Z_p-indicator value; at primes listed for f but not in x the adele
    /// tail representative is used.
    pub fn eval(&self, x: &AdelePoint) -> Complex64 {
        let mut acc = self.arch.eval(x.real().to_f64());
        if acc == Complex64::new(0.0, 0.0) {
            // keep exact zeros exact
            return acc;
        }
        let support: BTreeSet<u64> = self
            .finite
            .keys()
            .copied()
            .chain(x.finite_components().keys().copied())
            .collect();
        for p in support {
            let xp = match x.finite_component(p) {
                Some(v) => v.clone(),
                None => x.tail_representative(),
            };
            match self.finite.get(&p) {
                Some(fp) => acc *= fp.eval(&xp),
                None => {
                    // standard factor: indicator of Z_p
                    if !xp.valuation_unchecked(p).at_least(0) {
                        return Complex64::new(0.0, 0.0);
                    }
                }
            }
            if acc == Complex64::new(0.0, 0.0) {
                return acc;
            }
        }
        acc
    }

    /// Componentwise Fourier transform; the tail maps to itself.
    pub fn fourier_transform(&self) -> GlobalTestFunction {
        GlobalTestFunction {
            arch: self.arch.fourier_transform(),
            finite: self
                .finite
                .iter()
                .map(|(&p, f)| (p, f.fourier_transform()))
                .collect(),
        }
    }

    /// Global value at zero: the product of the local values.
    pub fn at_zero(&self) -> Complex64 {
        let mut acc = self.arch.at_zero();
        for f in self.finite.values() {
            acc *= f.at_zero();
        }
        acc
    }

    /// Global additive integral, the product of the local integrals; equals
    /// the transform at zero.
    pub fn integral(&self) -> Complex64 {
        let mut acc = self.arch.integral();
        for f in self.finite.values() {
            acc *= f.integral();
        }
        acc
    }

    pub fn negate_argument(&self) -> GlobalTestFunction {
        GlobalTestFunction {
            arch: self.arch.negate_argument(),
            finite: self
                .finite
                .iter()
                .map(|(&p, f)| (p, f.negate_argument()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::places::global_additive_character;
    use crate::places::RealPoint;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn local_eval_examples() {
        let z2 = TwistedStepFunction::integers_indicator(2);
        assert_eq!(z2.eval(&rat("3/4")), c(0.0, 0.0));
        assert_eq!(z2.eval(&rat("6")), c(1.0, 0.0));

        let gauss = ArchFunction::standard_gaussian();
        assert_eq!(gauss.eval(0.0), c(1.0, 0.0));

        let twisted = TwistedStepFunction::new(
            2,
            vec![StepTerm {
                coeff: c(1.0, 0.0),
                twist: rat("1/2"),
                center: rat("0"),
                level: 0,
            }],
        )
        .unwrap();
        assert!((twisted.eval(&rat("1")) - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn ft_fixes_integers_indicator() {
        let z3 = TwistedStepFunction::integers_indicator(3);
        let hat = z3.fourier_transform();
        for x in ["0", "1", "-5", "1/3", "7/9", "4/3"] {
            let x = rat(x);
            assert!((hat.eval(&x) - z3.eval(&x)).norm() < 1e-15, "at {x}");
        }
    }

    #[test]
    fn ft_scales_small_balls() {
        // 1_{p^n Z_p} -> p^{-n} 1_{p^{-n} Z_p}
        let f = TwistedStepFunction::coset_indicator(2, Rational::zero(), 1).unwrap();
        let hat = f.fourier_transform();
        assert_eq!(hat.terms().len(), 1);
        let t = &hat.terms()[0];
        assert!((t.coeff - c(0.5, 0.0)).norm() < 1e-15);
        assert_eq!(t.level, -1);
        assert!(t.twist.is_zero() && t.center.is_zero());
    }

    #[test]
    fn double_transform_reflects() {
        let f = TwistedStepFunction::new(
            5,
            vec![
                StepTerm {
                    coeff: c(2.0, 1.0),
                    twist: rat("3/25"),
                    center: rat("1/5"),
                    level: -1,
                },
                StepTerm {
                    coeff: c(0.0, -1.0),
                    twist: rat("2"),
                    center: rat("4"),
                    level: 2,
                },
            ],
        )
        .unwrap();
        let ff = f.fourier_transform().fourier_transform();
        for x in ["0", "1/5", "-1/5", "2/25", "7", "-39/5"] {
            let x = rat(x);
            let lhs = ff.eval(&x);
            let rhs = f.eval(&(-&x));
            assert!((lhs - rhs).norm() < 1e-13, "at {x}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn arch_transform_rules() {
        let gauss = ArchFunction::standard_gaussian();
        assert_eq!(gauss.fourier_transform(), gauss);

        let odd = ArchFunction::standard_odd();
        let hat = odd.fourier_transform();
        assert_eq!(hat.terms().len(), 1);
        assert!((hat.terms()[0].coeff - c(0.0, -1.0)).norm() < 1e-15);
        assert_eq!(hat.terms()[0].degree, 1);
        assert_eq!(hat.terms()[0].scale, 1.0);

        // double transform of a scaled even term is the identity (even parity)
        let f = ArchFunction::gaussian(2.5).unwrap();
        let ff = f.fourier_transform().fourier_transform();
        for x in [0.0, 0.3, -1.7] {
            assert!((ff.eval(x) - f.eval(-x)).norm() < 1e-14);
        }
    }

    #[test]
    fn local_integral_examples() {
        let z7 = TwistedStepFunction::integers_indicator(7);
        assert!((z7.integral() - c(1.0, 0.0)).norm() < 1e-15);

        let coset = TwistedStepFunction::coset_indicator(3, rat("1"), 1).unwrap();
        assert!((coset.integral() - c(1.0 / 3.0, 0.0)).norm() < 1e-15);

        let gauss = ArchFunction::standard_gaussian();
        assert!((gauss.integral() - c(1.0, 0.0)).norm() < 1e-15);
        assert!((ArchFunction::standard_odd().integral()).norm() < 1e-15);
    }

    #[test]
    fn global_eval_examples() {
        let f0 = GlobalTestFunction::standard();
        assert_eq!(f0.eval(&AdelePoint::diagonal(&rat("0"))), c(1.0, 0.0));

        let x = AdelePoint::new(
            RealPoint::Approx(0.0),
            [(2, rat("1/2"))].into_iter().collect(),
        )
        .unwrap();
        assert_eq!(f0.eval(&x), c(0.0, 0.0));

        let f = GlobalTestFunction::standard()
            .with_finite_part(TwistedStepFunction::coset_indicator(3, rat("1"), 1).unwrap());
        let got = f.eval(&AdelePoint::diagonal(&rat("4")));
        let expect = (-16.0 * std::f64::consts::PI).exp();
        assert!((got - c(expect, 0.0)).norm() < 1e-25, "got {got}");
        // and 0 is outside 1 + 3 Z_3
        assert_eq!(f.eval(&AdelePoint::diagonal(&rat("0"))), c(0.0, 0.0));
    }

    #[test]
    fn global_ft_examples() {
        let f0 = GlobalTestFunction::standard();
        assert_eq!(f0.fourier_transform(), f0);

        let f = GlobalTestFunction::standard()
            .with_finite_part(TwistedStepFunction::coset_indicator(2, rat("0"), 1).unwrap());
        let hat = f.fourier_transform();
        let part = &hat.finite_parts()[&2];
        assert_eq!(part.terms().len(), 1);
        assert!((part.terms()[0].coeff - c(0.5, 0.0)).norm() < 1e-15);
        assert_eq!(part.terms()[0].level, -1);
        assert_eq!(hat.arch(), f.arch());
    }

    #[test]
    fn global_double_transform_reflects() {
        let f = GlobalTestFunction::standard()
            .with_finite_part(TwistedStepFunction::coset_indicator(3, rat("2"), 1).unwrap())
            .with_finite_part(
                TwistedStepFunction::new(
                    2,
                    vec![StepTerm {
                        coeff: c(1.0, 0.0),
                        twist: rat("1/2"),
                        center: rat("1/4"),
                        level: -2,
                    }],
                )
                .unwrap(),
            );
        let ff = f.fourier_transform().fourier_transform();
        for q in ["2", "-1/4", "5/6", "0", "-7/12"] {
            let x = AdelePoint::diagonal(&rat(q));
            let lhs = ff.eval(&x);
            let rhs = f.eval(&x.negate());
            assert!((lhs - rhs).norm() < 1e-13, "at {q}");
        }
    }

    #[test]
    fn integral_equals_transform_at_zero() {
        let f = GlobalTestFunction::standard()
            .with_finite_part(TwistedStepFunction::coset_indicator(5, rat("2"), 2).unwrap());
        let lhs = f.integral();
        let rhs = f.fourier_transform().at_zero();
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn character_flips_under_negation() {
        // sanity link between negate and the additive character
        let x = AdelePoint::diagonal(&rat("7/6"));
        let a = global_additive_character(&x);
        let b = global_additive_character(&x.negate());
        assert!((a * b - c(1.0, 0.0)).norm() < 1e-14);
    }
}

//! Numerical verification of adelic Poisson summation and the adelic
//! Riemann-Roch identity, with the classical theta transformation as the
//! standard-idele special case.
//!
//! The sum over the global field is made finite-dimensional by the support
//! of the test function: the finite-place constraints cut Q down to an
//! arithmetic progression r + mZ, and the Gaussian factor at the real
//! place gives a certified truncation window.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::global_zeta::theta_omega;
use crate::places::{in_coset, unit_phase, IdelePoint};
use crate::rational::{Rational, Valuation};
use crate::schwartz::{GlobalTestFunction, StepTerm, TwistedStepFunction};

/// The arithmetic progression r + mZ containing the rationals gamma for
/// which f(gamma x) can be nonzero, together with the smallest archimedean
/// Gaussian scale of f for truncation.
#[derive(Debug, Clone, PartialEq)]
pub enum LatticeProgression {
    Progression {
        /// Positive rational step m.
        modulus: Rational,
        /// Residue r, normalized into [0, m).
        residue: Rational,
        /// Smallest Gaussian scale in the archimedean component.
        arch_scale: f64,
    },
    /// The constraints cut the support down to nothing; the sum is 0.
    Empty,
}

impl LatticeProgression {
    /// All points of the progression with |gamma| <= bound, in increasing
    /// order.
    pub fn points_in_window(&self, bound: f64) -> Vec<Rational> {
        match self {
            LatticeProgression::Empty => Vec::new(),
            LatticeProgression::Progression {
                modulus, residue, ..
            } => {
                let m = modulus.to_f64();
                let r = residue.to_f64();
                let lo = ((-bound - r) / m).floor() as i64 - 1;
                let hi = ((bound - r) / m).ceil() as i64 + 1;
                let mut out = Vec::with_capacity((hi - lo + 1).max(0) as usize);
                for j in lo..=hi {
                    let gamma = residue + &(modulus * &Rational::from_integer(j));
                    if gamma.to_f64().abs() <= bound {
                        out.push(gamma);
                    }
                }
                out
            }
        }
    }

    pub fn contains(&self, gamma: &Rational) -> bool {
        match self {
            LatticeProgression::Empty => false,
            LatticeProgression::Progression {
                modulus, residue, ..
            } => ((gamma - residue) / modulus.clone()).is_integer(),
        }
    }
}

/// One per-prime congruence v_p(gamma - r_p) >= m_p.
struct Constraint {
    prime: u64,
    residue: Rational,
    level: i64,
}

/// Combine per-prime congruences with integrality everywhere else into a
/// single progression: with m = prod p^{m_p}, the solution set is
/// m (rho + Z) where rho = sum_p frac_p(r_p / m).
fn combine_constraints(constraints: &[Constraint], arch_scale: f64) -> LatticeProgression {
    let mut modulus = Rational::one();
    for c in constraints {
        let e = i32::try_from(c.level).expect("level fits i32");
        modulus = modulus * Rational::from_integer(c.prime).pow(e);
    }
    let mut rho = Rational::zero();
    for c in constraints {
        let scaled = &c.residue / &modulus;
        rho += &scaled.frac_p(c.prime).expect("constraint primes are prime");
    }
    // rho mod 1 lies in [0, 1), so m * rho is already the residue in [0, m)
    let residue = &modulus * &rho.mod_one();
    LatticeProgression::Progression {
        modulus,
        residue,
        arch_scale,
    }
}

/// The smallest coset a + p^l Z_p containing the support of a twisted step
/// function, or None for the empty support: the level drops to the
/// valuation of the spread between coset centers.
fn containing_coset(f: &TwistedStepFunction) -> Option<(Rational, i64)> {
    let mut terms = f.terms().iter();
    let first = terms.next()?;
    let center = first.center.clone();
    let mut level = first.level;
    for t in terms {
        level = level.min(t.level);
        if let Valuation::Finite(v) = (&t.center - &center).valuation_unchecked(f.prime()) {
            level = level.min(v);
        }
    }
    Some((center, level))
}

/// The progression containing {gamma in Q : f(gamma x) != 0}. For
/// single-coset finite components this is exact; multi-coset unions are
/// bounded by their smallest containing coset, and twists never affect
/// support. Inconsistent (empty) components give the empty progression.
pub fn support_progression(f: &GlobalTestFunction, x: &IdelePoint) -> LatticeProgression {
    let arch_scale = match f.arch().min_scale() {
        Some(s) => s,
        None => return LatticeProgression::Empty,
    };
    let mut constraints = Vec::new();
    let mut primes: Vec<u64> = f.finite_parts().keys().copied().collect();
    for &p in x.finite_components().keys() {
        if !primes.contains(&p) {
            primes.push(p);
        }
    }
    for p in primes {
        let xp = x.component_or_unit(p);
        let v = match xp.valuation_unchecked(p) {
            Valuation::Finite(v) => v,
            Valuation::Infinite => unreachable!("idele components are nonzero"),
        };
        match f.finite_parts().get(&p) {
            Some(fp) => match containing_coset(fp) {
                Some((a, n)) => constraints.push(Constraint {
                    prime: p,
                    residue: &a / &xp,
                    level: n - v,
                }),
                None => return LatticeProgression::Empty,
            },
            None => constraints.push(Constraint {
                prime: p,
                residue: Rational::zero(),
                level: -v,
            }),
        }
    }
    combine_constraints(&constraints, arch_scale)
}

/// Truncation window in gamma for an average against an idele with real
/// component x_real: Gaussian tail below tol outside it, plus two
/// progression steps of guard.
fn truncation_window(arch_scale: f64, x_real: f64, step: f64, tol: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let core = (1f64).max((1.0 / tol).ln() / (pi * arch_scale)).sqrt();
    core / x_real.abs() + 2.0 * step
}

/// One term of one finite component, evaluated at a rational point.
fn step_term_value(p: u64, t: &StepTerm, x: &Rational) -> Complex64 {
    if !in_coset(x, &t.center, p, t.level) {
        return Complex64::new(0.0, 0.0);
    }
    if t.twist.is_zero() {
        t.coeff
    } else {
        let e = (&t.twist * x).frac_p(p).expect("prime validated");
        t.coeff * unit_phase(&e)
    }
}

/// The average sum_{gamma in Q} f(gamma x) over an idele x, computed by
/// expanding the finite components term by term (the sum is bilinear in
/// the term algebra), walking each combination's support progression over
/// the certified window, and evaluating every local factor exactly.
pub fn adelic_average(f: &GlobalTestFunction, x: &IdelePoint, tol: f64) -> Result<Complex64> {
    let arch_scale = match f.arch().min_scale() {
        Some(s) if s > 0.0 => s,
        _ => return Ok(Complex64::new(0.0, 0.0)),
    };
    let x_real = x.real().to_f64();
    if x_real == 0.0 {
        return Err(Error::ZeroComponent {
            what: "real place".into(),
        });
    }

    let primes: Vec<u64> = f.finite_parts().keys().copied().collect();
    let term_counts: Vec<usize> = primes
        .iter()
        .map(|p| f.finite_parts()[p].terms().len())
        .collect();
    if term_counts.contains(&0) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let combos: usize = term_counts.iter().product::<usize>().max(1);

    let mut acc = Complex64::new(0.0, 0.0);
    for combo in 0..combos {
        // unpack the mixed-radix combination index into one term per prime
        let mut rem = combo;
        let mut picks: Vec<(u64, &StepTerm)> = Vec::with_capacity(primes.len());
        for (i, &p) in primes.iter().enumerate() {
            let t = &f.finite_parts()[&p].terms()[rem % term_counts[i]];
            rem /= term_counts[i];
            picks.push((p, t));
        }

        // single-coset progression for this combination
        let mut constraints = Vec::new();
        let mut extra: Vec<u64> = x
            .finite_components()
            .keys()
            .copied()
            .filter(|p| !primes.contains(p))
            .collect();
        for (p, t) in &picks {
            let xp = x.component_or_unit(*p);
            let v = xp
                .valuation_unchecked(*p)
                .finite()
                .expect("idele component nonzero");
            constraints.push(Constraint {
                prime: *p,
                residue: &t.center / &xp,
                level: t.level - v,
            });
        }
        for p in extra.drain(..) {
            let xp = x.component_or_unit(p);
            let v = xp
                .valuation_unchecked(p)
                .finite()
                .expect("idele component nonzero");
            constraints.push(Constraint {
                prime: p,
                residue: Rational::zero(),
                level: -v,
            });
        }
        let progression = combine_constraints(&constraints, arch_scale);
        let step = match &progression {
            LatticeProgression::Progression { modulus, .. } => modulus.to_f64(),
            LatticeProgression::Empty => continue,
        };

        let window = truncation_window(arch_scale, x_real, step, tol);
        for gamma in progression.points_in_window(window) {
            let mut value = f.arch().eval(gamma.to_f64() * x_real);
            for (p, t) in &picks {
                if value == Complex64::new(0.0, 0.0) {
                    break;
                }
                let xp = x.component_or_unit(*p);
                value *= step_term_value(*p, t, &(&gamma * &xp));
            }
            acc += value;
        }
    }
    Ok(acc)
}

/// |sum_gamma f(gamma x) - (1/|x|) sum_gamma fhat(gamma / x)|: the defect
/// of the adelic Riemann-Roch identity, with both sides summed
/// independently.
pub fn riemann_roch_defect(f: &GlobalTestFunction, x: &IdelePoint, tol: f64) -> Result<f64> {
    let lhs = adelic_average(f, x, tol)?;
    let fhat = f.fourier_transform();
    let rhs = adelic_average(&fhat, &x.inverse(), tol)?;
    let norm = x.norm().to_f64();
    Ok((lhs - rhs / norm).norm())
}

/// |theta(1/t) - sqrt(t) theta(t)| with theta(t) = 1 + 2 sum e^{-pi n^2 t}:
/// the classical transformation, i.e. Riemann-Roch at the idele with real
/// component sqrt(t).
pub fn theta_identity_defect(t: f64) -> f64 {
    assert!(t > 0.0, "theta transformation needs t > 0");
    let theta = |u: f64| 1.0 + 2.0 * theta_omega(u, 1e-15);
    (theta(1.0 / t) - t.sqrt() * theta(t)).abs()
}

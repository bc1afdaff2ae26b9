//! Quasi-characters of the idele group: a unitary part times a complex
//! power of the idele norm.
//!
//! The three unitary parts in scope are the trivial character, a pure norm
//! twist |x|^{-i tau}, and the idele-class lift of a primitive Dirichlet
//! character. The norm-twist sign is chosen so that the twisted exponent
//! reads s' = s - tau i and the induced poles of the global zeta function
//! sit at s = tau i and s = 1 + tau i.
//!
//! The Dirichlet lift is evaluated through strong approximation: every
//! idele x of Q factors as x = diagonal(r) * y with r = sign(x_real) *
//! prod_p p^{v_p(x_p)} and y positive at the real place and a unit
//! everywhere else. Triviality on the diagonal forces the value to be
//! chi(Y)^{-1} where Y is the residue of y modulo the conductor. At an
//! unramified prime this gives the value chi(p)^{v_p(x_p)}, so the Euler
//! factor attached to the unit ball is (1 - chi(p) p^{-s})^{-1}, matching
//! the classical L-function.

use num_complex::Complex64;

use crate::dirichlet::DirichletCharacter;
use crate::error::{Error, Result};
use crate::places::IdelePoint;
use crate::primes::{factor, mul_mod};
use crate::rational::Valuation;

/// The unitary part of a quasi-character.
#[derive(Debug, Clone, PartialEq)]
pub enum UnitaryPart {
    /// Identically 1.
    Trivial,
    /// x -> |x|^{-i tau}.
    NormTwist(f64),
    /// The idele-class lift of a primitive Dirichlet character.
    Dirichlet(DirichletCharacter),
}

impl UnitaryPart {
    /// True exactly when the unitary part is trivial on the norm-one
    /// ideles, i.e. when the global zeta function acquires poles.
    pub fn is_trivial_on_norm_one(&self) -> bool {
        match self {
            UnitaryPart::Trivial | UnitaryPart::NormTwist(_) => true,
            UnitaryPart::Dirichlet(chi) => chi.is_principal(),
        }
    }

    /// Inverse character; for unitary parts this is the conjugate.
    pub fn inverse(&self) -> UnitaryPart {
        match self {
            UnitaryPart::Trivial => UnitaryPart::Trivial,
            UnitaryPart::NormTwist(tau) => UnitaryPart::NormTwist(-tau),
            UnitaryPart::Dirichlet(chi) => UnitaryPart::Dirichlet(chi.conjugate()),
        }
    }

    /// The norm-twist offset tau, zero for the other variants.
    pub fn twist(&self) -> f64 {
        match self {
            UnitaryPart::NormTwist(tau) => *tau,
            _ => 0.0,
        }
    }

    /// Evaluate the unitary part on an idele.
    pub fn eval(&self, x: &IdelePoint) -> Complex64 {
        match self {
            UnitaryPart::Trivial => Complex64::new(1.0, 0.0),
            UnitaryPart::NormTwist(tau) => {
                let norm = x.norm().to_f64();
                // |x|^{-i tau} = e^{-i tau ln |x|}
                Complex64::from_polar(1.0, -tau * norm.ln())
            }
            UnitaryPart::Dirichlet(chi) => dirichlet_lift_eval(chi, x),
        }
    }
}

/// A quasi-character chi = mu * |.|^s of the idele group.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiCharacter {
    pub unitary: UnitaryPart,
    pub exponent: Complex64,
}

impl QuasiCharacter {
    pub fn new(unitary: UnitaryPart, exponent: Complex64) -> Self {
        QuasiCharacter { unitary, exponent }
    }

    pub fn trivial(exponent: Complex64) -> Self {
        QuasiCharacter::new(UnitaryPart::Trivial, exponent)
    }

    /// Same unitary part, different exponent: the one-parameter family the
    /// zeta integrals run over.
    pub fn with_exponent(&self, exponent: Complex64) -> Self {
        QuasiCharacter::new(self.unitary.clone(), exponent)
    }

    /// The shifted dual: the unitary part is inverted and the exponent
    /// goes to 1 - s.
    pub fn shifted_dual(&self) -> Self {
        QuasiCharacter::new(self.unitary.inverse(), Complex64::new(1.0, 0.0) - self.exponent)
    }

    /// mu(x) |x|^s.
    pub fn eval(&self, x: &IdelePoint) -> Complex64 {
        let norm = x.norm().to_f64();
        let power = Complex64::new(norm, 0.0).powc(self.exponent);
        self.unitary.eval(x) * power
    }
}

/// Value of the lifted primitive Dirichlet character on an idele.
fn dirichlet_lift_eval(chi: &DirichletCharacter, x: &IdelePoint) -> Complex64 {
    let q = chi.modulus();
    if q == 1 {
        return Complex64::new(1.0, 0.0);
    }
    // r = sign(x_real) * prod p^{v_p}; y = x / diagonal(r) is a unit at
    // every finite place, and chi_lift(x) = chi(y mod q)^{-1}.
    let mut y_residue_mod_q = 1u64 % q;
    let negative_real = x.real().is_negative();
    // product over prime powers of q via CRT, assembled as a residue mod q
    let mut combined: Option<(u64, u64)> = None; // (residue, modulus so far)
    for (p, e) in factor(q) {
        let pe = p.pow(e);
        let xp = x.component_or_unit(p);
        // v_p(r) = v_p(x_p); components at other primes contribute p-units
        let mut unit = xp.clone();
        match unit.valuation_unchecked(p) {
            Valuation::Finite(v) => {
                if v != 0 {
                    let shift =
                        crate::rational::Rational::from_integer(p).pow(i32::try_from(-v).unwrap());
                    unit = &unit * &shift;
                }
            }
            Valuation::Infinite => unreachable!("idele components are nonzero"),
        }
        // divide by the rest of r: every other listed prime power and the sign
        for (&ell, xl) in x.finite_components() {
            if ell == p {
                continue;
            }
            if let Valuation::Finite(v) = xl.valuation_unchecked(ell) {
                if v != 0 {
                    let shift =
                        crate::rational::Rational::from_integer(ell).pow(i32::try_from(-v).unwrap());
                    unit = &unit * &shift;
                }
            }
        }
        if negative_real {
            unit = -unit;
        }
        let r = unit.residue_mod(p, e).expect("unit after normalization");
        combined = Some(match combined {
            None => (r % pe, pe),
            Some((acc, m)) => {
                let inv = crate::primes::inv_mod(m % pe, pe);
                let diff = (r % pe + pe - acc % pe) % pe;
                ((acc + m * mul_mod(diff, inv, pe)) % (m * pe), m * pe)
            }
        });
    }
    if let Some((res, m)) = combined {
        debug_assert_eq!(m, q);
        y_residue_mod_q = res;
    }
    // chi(Y)^{-1} = conjugate (roots of unity)
    chi.eval(y_residue_mod_q).conj()
}

/// Evaluate chi = mu |.|^s on an idele. Mirrors [`QuasiCharacter::eval`].
pub fn quasichar_eval(chi: &QuasiCharacter, x: &IdelePoint) -> Complex64 {
    chi.eval(x)
}

/// The unramified local value u = chi_p(p) that drives the Euler factor
/// (1 - u p^{-s})^{-1} at a prime not dividing the conductor.
pub fn unramified_value(unitary: &UnitaryPart, p: u64) -> Result<Complex64> {
    match unitary {
        UnitaryPart::Trivial => Ok(Complex64::new(1.0, 0.0)),
        // folded into the exponent shift s' = s - i tau by callers
        UnitaryPart::NormTwist(_) => Ok(Complex64::new(1.0, 0.0)),
        UnitaryPart::Dirichlet(chi) => {
            if chi.modulus() % p == 0 {
                return Err(Error::Unsupported {
                    reason: format!("prime {p} is ramified for the character"),
                });
            }
            Ok(chi.eval(p % chi.modulus()))
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::places::RealPoint;
    use crate::rational::Rational;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn trivial_part_examples() {
        let x = IdelePoint::from_real(RealPoint::Approx(2.0)).unwrap();
        let one = QuasiCharacter::trivial(Complex64::new(0.0, 0.0)).eval(&x);
        assert!((one - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        let four = QuasiCharacter::trivial(Complex64::new(2.0, 0.0)).eval(&x);
        assert!((four - Complex64::new(4.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn norm_twist_at_e() {
        let x = IdelePoint::from_real(RealPoint::Approx(std::f64::consts::E)).unwrap();
        let chi = QuasiCharacter::new(UnitaryPart::NormTwist(std::f64::consts::PI), Complex64::new(0.0, 0.0));
        let got = chi.eval(&x);
        assert!((got - Complex64::new(-1.0, 0.0)).norm() < 1e-12, "got {got}");
    }

    #[test]
    fn unitary_parts_are_unimodular() {
        let chi5 = DirichletCharacter::from_index(5, 1).unwrap();
        let parts = [
            UnitaryPart::Trivial,
            UnitaryPart::NormTwist(2.5),
            UnitaryPart::Dirichlet(chi5),
        ];
        let x = IdelePoint::new(
            RealPoint::Approx(-1.7),
            [(2, rat("8")), (3, rat("-5/9"))].into_iter().collect(),
        )
        .unwrap();
        for part in parts {
            assert!((part.eval(&x).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn dirichlet_lift_trivial_on_diagonal() {
        let chi = DirichletCharacter::from_index(12, 3).unwrap();
        let part = UnitaryPart::Dirichlet(chi);
        for s in ["7/6", "-15/8", "22", "-1/720", "35/99"] {
            let x = IdelePoint::diagonal(&rat(s)).unwrap();
            let got = part.eval(&x);
            assert!(
                (got - Complex64::new(1.0, 0.0)).norm() < 1e-12,
                "diagonal({s}) -> {got}"
            );
        }
    }

    #[test]
    fn dirichlet_lift_unramified_value() {
        // concentrated idele at p = 3 with component 3 and chi mod 4:
        // value must be chi(3) so that Euler factors read (1 - chi(p) p^{-s})^{-1}
        let chi4 = DirichletCharacter::from_index(4, 1).unwrap();
        let part = UnitaryPart::Dirichlet(chi4.clone());
        let x = IdelePoint::new(RealPoint::one(), [(3, rat("3"))].into_iter().collect()).unwrap();
        let got = part.eval(&x);
        assert!((got - chi4.eval(3)).norm() < 1e-14);

        let x9 = IdelePoint::new(RealPoint::one(), [(3, rat("9/4"))].into_iter().collect()).unwrap();
        // v_3 = 2 and the 2-adic unit part 9/4 ... component at 2 unlisted, so
        // only v_3 matters: chi(3)^2 = -1 squared = 1... chi4(3) = -1, so value 1
        let got9 = part.eval(&x9);
        assert!((got9 - Complex64::new(1.0, 0.0)).norm() < 1e-14, "got {got9}");
    }

    #[test]
    fn dirichlet_lift_ramified_units() {
        // at the ramified prime the value on a unit u is chi(u)^{-1}
        let chi4 = DirichletCharacter::from_index(4, 1).unwrap();
        let part = UnitaryPart::Dirichlet(chi4.clone());
        let x = IdelePoint::new(RealPoint::one(), [(2, rat("3"))].into_iter().collect()).unwrap();
        let got = part.eval(&x);
        assert!((got - chi4.eval(3).conj()).norm() < 1e-14);
    }

    #[test]
    fn finite_ramification_data_dependence() {
        // adding unit components at unramified places that are congruent to
        // 1 mod the conductor leaves the value unchanged: it depends only on
        // the ramified components
        let chi4 = DirichletCharacter::from_index(4, 1).unwrap();
        let part = UnitaryPart::Dirichlet(chi4);
        let base: BTreeMap<u64, Rational> = [(2, rat("7/3"))].into_iter().collect();
        let a = IdelePoint::new(RealPoint::one(), base.clone()).unwrap();
        let mut extended = base;
        extended.insert(5, rat("7/3")); // a 5-adic unit
        extended.insert(7, rat("22/3")); // a 7-adic unit
        let b = IdelePoint::new(RealPoint::one(), extended).unwrap();
        assert!((part.eval(&a) - part.eval(&b)).norm() < 1e-13);
    }

    #[test]
    fn shifted_dual_inverts() {
        let chi = QuasiCharacter::new(UnitaryPart::NormTwist(1.5), Complex64::new(0.3, 2.0));
        let dual = chi.shifted_dual();
        assert_eq!(dual.unitary, UnitaryPart::NormTwist(-1.5));
        assert!((dual.exponent - Complex64::new(0.7, -2.0)).norm() < 1e-15);
        let double = dual.shifted_dual();
        assert_eq!(double.unitary, chi.unitary);
        assert!((double.exponent - chi.exponent).norm() < 1e-15);
    }
}

//! Local zeta integrals: exact rational functions of X = p^{-s} at finite
//! places, closed gamma-factor forms plus a quadrature oracle at the real
//! place, and the local gamma-factor ratio.
//!
//! The measure conventions, fixed crate-wide: additive measure with
//! Vol(Z_p) = 1 at finite places and Lebesgue measure at the real place;
//! multiplicative measure d*x = c_p dx/|x| with c_p = p/(p-1) at finite
//! places, so that Vol(Z_p^x, d*x) = 1, and d*x = dx/|x| (no constant) at
//! the real place. The multiplicative integral lives on Q_p^x: shells of
//! fixed valuation exhaust it, and the value of f at 0 enters only through
//! the constant geometric tail.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gamma::gamma;
use crate::quadrature::integrate;
use crate::rational::{Rational, Valuation};
use crate::schwartz::{ArchFunction, TwistedStepFunction};

/// c_p = p / (p - 1), the constant making Vol(Z_p^x, d*x) = 1.
pub fn measure_constant(p: u64) -> Rational {
    Rational::new(p.into(), (p - 1).into()).expect("p >= 2")
}

/// Multiplicative measure of the part of the coset a + p^n Z_p lying in
/// its own shell, computed exactly.
///
/// A coset avoiding 0 (v_p(a) < n) lies entirely in the shell v = v_p(a)
/// and has d*x-measure c_p p^{v_p(a) - n}. A coset containing 0 equals
/// p^n Z_p; intersected with its top shell v = n it is p^n Z_p^x, of
/// measure 1.
pub fn shell_measure(p: u64, center: &Rational, level: i64) -> Result<Rational> {
    if !crate::primes::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    match center.valuation_unchecked(p) {
        Valuation::Finite(v) if v < level => {
            let shift = i32::try_from(v - level).expect("level fits in i32");
            Ok(measure_constant(p) * Rational::from_integer(p).pow(shift))
        }
        _ => Ok(Rational::one()),
    }
}

/// Per-shell multiplicative masses of a twisted step function: explicit
/// masses on shells first_shell <= m < tail_start, and the constant value
/// f(0) on every shell m >= tail_start.
#[derive(Debug, Clone)]
pub struct ShellDecomposition {
    prime: u64,
    first_shell: i64,
    masses: Vec<Complex64>,
    tail_start: i64,
    constant: Complex64,
}

impl ShellDecomposition {
    /// Closed-form shell masses, term by term.
    ///
    /// A term c psi(b x) on a coset away from zero contributes only to the
    /// coset's shell, with mass c psi_p(a b) c_p p^{v(a) - n} when the
    /// twist is constant on the coset (v_p(b) >= -n) and zero otherwise.
    /// A term on p^n Z_p contributes to every shell m >= n the twisted
    /// unit-shell mass
    ///
    ///   c c_p p^m ( p^{-m} [v(b) >= -m] - p^{-m-1} [v(b) >= -m-1] ),
    ///
    /// which settles to the constant c once m >= max(n, -v(b)).
    pub fn of(f: &TwistedStepFunction) -> ShellDecomposition {
        let p = f.prime();
        let pf = p as f64;
        let cp = pf / (pf - 1.0);
        let mut first = i64::MAX;
        let mut tail = i64::MIN;
        for t in f.terms() {
            match t.center.valuation_unchecked(p) {
                Valuation::Finite(v) if v < t.level => {
                    first = first.min(v);
                    tail = tail.max(v + 1);
                }
                _ => {
                    first = first.min(t.level);
                    let b_floor = match t.twist.valuation_unchecked(p) {
                        Valuation::Finite(vb) => -vb,
                        Valuation::Infinite => i64::MIN,
                    };
                    tail = tail.max(t.level.max(b_floor));
                }
            }
        }
        if f.terms().is_empty() {
            return ShellDecomposition {
                prime: p,
                first_shell: 0,
                masses: Vec::new(),
                tail_start: 0,
                constant: Complex64::new(0.0, 0.0),
            };
        }
        let first_shell = first;
        let tail_start = tail.max(first);
        let mut masses = vec![Complex64::new(0.0, 0.0); (tail_start - first_shell) as usize];

        for t in f.terms() {
            let twist_phase = |x: &Rational| -> Complex64 {
                let e = (x * &t.twist).frac_p(p).expect("prime validated");
                crate::places::unit_phase(&e)
            };
            match t.center.valuation_unchecked(p) {
                Valuation::Finite(v) if v < t.level => {
                    if t.twist.valuation_unchecked(p).at_least(-t.level) {
                        let idx = (v - first_shell) as usize;
                        let vol = cp * pf.powi(i32::try_from(v - t.level).expect("fits"));
                        masses[idx] += t.coeff * twist_phase(&t.center) * vol;
                    }
                }
                _ => {
                    let vb = t.twist.valuation_unchecked(p);
                    for m in t.level..tail_start {
                        let idx = (m - first_shell) as usize;
                        let inner = if vb.at_least(-m) { 1.0 } else { 0.0 };
                        let outer = if vb.at_least(-m - 1) { 1.0 / pf } else { 0.0 };
                        masses[idx] += t.coeff * cp * (inner - outer);
                    }
                }
            }
        }

        ShellDecomposition {
            prime: p,
            first_shell,
            masses,
            tail_start,
            constant: f.at_zero(),
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn first_shell(&self) -> i64 {
        self.first_shell
    }

    pub fn tail_start(&self) -> i64 {
        self.tail_start
    }

    pub fn constant(&self) -> Complex64 {
        self.constant
    }

    /// Mass of shell m.
    pub fn mass(&self, m: i64) -> Complex64 {
        if m >= self.tail_start {
            self.constant
        } else if m < self.first_shell {
            Complex64::new(0.0, 0.0)
        } else {
            self.masses[(m - self.first_shell) as usize]
        }
    }
}

/// A polynomial in one formal variable, complex coefficients ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial(pub Vec<Complex64>);

impl Polynomial {
    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn trimmed(mut self) -> Polynomial {
        while self.0.len() > 1 && self.0.last() == Some(&Complex64::new(0.0, 0.0)) {
            self.0.pop();
        }
        Polynomial(self.0)
    }
}

/// A rational function of the formal variable X = p^{-s}.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    pub numerator: Polynomial,
    pub denominator: Polynomial,
}

impl RationalFunction {
    /// Evaluate at X, failing on a vanishing denominator.
    pub fn eval(&self, x: Complex64) -> Result<Complex64> {
        let den = self.denominator.eval(x);
        if den.norm() < 1e-140 {
            return Err(Error::SingularPoint {
                location: x,
            });
        }
        Ok(self.numerator.eval(x) / den)
    }

    /// Evaluate at X = p^{-s}.
    pub fn eval_at_exponent(&self, p: u64, s: Complex64) -> Result<Complex64> {
        let x = (-s * (p as f64).ln()).exp();
        self.eval(x)
    }
}

/// The local zeta integral of f against the unramified character with
/// value u at p, as an exact rational function of X = p^{-s}:
///
///   Z_p(f, u, s) = sum_{m < M} mass_m u^m X^m + f(0) u^M X^M / (1 - u X),
///
/// assembled from the shell decomposition. The only pole is at u X = 1.
pub fn local_zeta_factor(f: &TwistedStepFunction, u: Complex64) -> RationalFunction {
    let shells = ShellDecomposition::of(f);
    // clear negative exponents by shifting both sides by X^{shift}
    let shift = (-shells.first_shell()).max(0) as usize;
    let deg = shift + (shells.tail_start().max(0)) as usize + 2;
    let mut num = vec![Complex64::new(0.0, 0.0); deg];
    // explicit shells times (1 - u X)
    for (i, &mass) in shells.masses.iter().enumerate() {
        let m = shells.first_shell() + i as i64;
        let e = (m + shift as i64) as usize;
        let um = u.powi(i32::try_from(m).expect("shell fits i32"));
        num[e] += mass * um;
        num[e + 1] -= mass * um * u;
    }
    // geometric tail f(0) u^M X^M
    let m = shells.tail_start();
    let e = (m + shift as i64) as usize;
    let um = u.powi(i32::try_from(m).expect("shell fits i32"));
    num[e] += shells.constant() * um;

    // denominator X^{shift} (1 - u X)
    let mut den = vec![Complex64::new(0.0, 0.0); shift + 2];
    den[shift] = Complex64::new(1.0, 0.0);
    den[shift + 1] = -u;

    RationalFunction {
        numerator: Polynomial(num).trimmed(),
        denominator: Polynomial(den),
    }
}

/// A Laurent polynomial in X: coefficients ascending from X^{first}.
/// Entire as a function of s under X = p^{-s}, since X never vanishes.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPolynomial {
    pub first: i64,
    pub coeffs: Vec<Complex64>,
}

impl LaurentPolynomial {
    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc * x.powi(i32::try_from(self.first).expect("exponent fits i32"))
    }

    pub fn eval_at_exponent(&self, p: u64, s: Complex64) -> Complex64 {
        self.eval((-s * (p as f64).ln()).exp())
    }
}

/// The ratio Z_p(f, u, s) / Z_p(1_{Z_p}, u, s) as an exact Laurent
/// polynomial in X = p^{-s}:
///
///   sum_{m < M} mass_m u^m X^m (1 - u X) + f(0) u^M X^M.
///
/// Being entire, it carries the whole nonstandard-component correction
/// without touching the pole structure; its value at X = p^{-1} (s = 1)
/// is the local integral of f, and at X = 1 (s = 0) it telescopes to f(0).
pub fn local_zeta_ratio(f: &TwistedStepFunction, u: Complex64) -> LaurentPolynomial {
    let shells = ShellDecomposition::of(f);
    let first = shells.first_shell().min(shells.tail_start());
    let len = (shells.tail_start() - first) as usize + 2;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
    for (i, &mass) in shells.masses.iter().enumerate() {
        let m = shells.first_shell() + i as i64;
        let e = (m - first) as usize;
        let um = u.powi(i32::try_from(m).expect("fits"));
        coeffs[e] += mass * um;
        coeffs[e + 1] -= mass * um * u;
    }
    let m = shells.tail_start();
    let um = u.powi(i32::try_from(m).expect("fits"));
    coeffs[(m - first) as usize] += shells.constant() * um;
    while coeffs.len() > 1 && coeffs.last() == Some(&Complex64::new(0.0, 0.0)) {
        coeffs.pop();
    }
    LaurentPolynomial { first, coeffs }
}

/// Independent numerical route to the same integral: brute-force shell
/// masses summed term by term until the geometric tail bound drops below
/// tol. Each shell mass is a refinement sum of f over unit representatives,
/// not the closed per-term formula.
pub fn shell_sum_oracle(
    f: &TwistedStepFunction,
    u: Complex64,
    s: Complex64,
    tol: f64,
) -> Result<Complex64> {
    let p = f.prime();
    let shells = ShellDecomposition::of(f);
    let x = (-s * (p as f64).ln()).exp();
    let ux = u * x;
    if shells.constant().norm() > 0.0 && ux.norm() >= 1.0 {
        return Err(Error::Divergent {
            reason: format!("tail does not converge: |u p^{{-s}}| = {} >= 1", ux.norm()),
        });
    }

    let mut acc = Complex64::new(0.0, 0.0);
    for m in shells.first_shell()..shells.tail_start() {
        let mass = brute_force_shell_mass(f, m);
        acc += mass * ux.powi(i32::try_from(m).expect("fits"));
    }
    // constant-mass tail, term by term with a geometric remainder bound
    let c = shells.constant();
    if c.norm() > 0.0 {
        let mut m = shells.tail_start();
        let r = ux.norm();
        loop {
            acc += c * ux.powi(i32::try_from(m).expect("fits"));
            m += 1;
            let remainder = c.norm() * r.powi(i32::try_from(m).expect("fits")) / (1.0 - r);
            if remainder < tol {
                break;
            }
            if m > shells.tail_start() + 100_000 {
                return Err(Error::NonConvergence {
                    what: "shell sum tail".into(),
                    tol,
                });
            }
        }
    }
    Ok(acc)
}

/// Brute-force mass of one shell: refine {v = m} into cosets of p^L fine
/// enough that f is constant on each, evaluate f at the representatives
/// p^m t with t a unit mod p^{L-m}, and weight by c_p p^m p^{-L}.
fn brute_force_shell_mass(f: &TwistedStepFunction, m: i64) -> Complex64 {
    let p = f.prime();
    let pf = p as f64;
    let mut level = m + 1;
    for t in f.terms() {
        level = level.max(t.level);
        if let Valuation::Finite(vb) = t.twist.valuation_unchecked(p) {
            level = level.max(-vb);
        }
    }
    let width = u32::try_from(level - m).expect("refinement width fits u32");
    let count = p.pow(width);
    let mut acc = crate::quadrature::KahanComplex::default();
    let pm = Rational::from_integer(p).pow(i32::try_from(m).expect("fits"));
    for t in 0..count {
        if t % p == 0 {
            continue;
        }
        let x = &pm * &Rational::from_integer(t);
        acc.add(f.eval(&x));
    }
    let cp = pf / (pf - 1.0);
    acc.total() * cp * pf.powi(i32::try_from(m - level).expect("fits"))
}

/// Closed-form archimedean zeta integral of an arch component against
/// sign^parity |x|^s dx/|x|:
///
///   term (c, k, a) with k = parity contributes c (pi a)^{-(s+k)/2}
///   Gamma((s+k)/2); terms of the other degree integrate to zero.
///
/// The closed form continues the integral beyond Re(s) > 0; gamma poles
/// surface as errors.
pub fn arch_zeta(f: &ArchFunction, parity: u8, s: Complex64) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    let k = parity as f64;
    for t in f.terms() {
        if t.degree != parity {
            continue;
        }
        let half = (s + k) / 2.0;
        let g = gamma(half)?;
        let base = Complex64::new(std::f64::consts::PI * t.scale, 0.0);
        acc += t.coeff * base.powc(-half) * g;
    }
    Ok(acc)
}

/// Quadrature oracle for the same integral, independent of the gamma
/// function: after x = e^v the integral over R^x becomes
///
///   int_{-inf}^{inf} [ f(e^v) + (-1)^parity f(-e^v) ] e^{s v} dv,
///
/// a smooth integrand decaying like e^{Re(s) v} on the left and doubly
/// exponentially on the right. Requires Re(s) > 0.
pub fn arch_zeta_quadrature(
    f: &ArchFunction,
    parity: u8,
    s: Complex64,
    tol: f64,
) -> Result<Complex64> {
    let sigma = s.re;
    if sigma <= 0.0 {
        return Err(Error::Divergent {
            reason: format!("archimedean integral needs Re(s) > 0, got {sigma}"),
        });
    }
    let coeff_bound: f64 = f.terms().iter().map(|t| t.coeff.norm()).sum::<f64>() * 2.0 + 1e-300;
    // left cutoff: |integrand| <= coeff_bound e^{sigma v}
    let v_lo = ((tol / 10.0) * sigma / coeff_bound).ln() / sigma;
    // right cutoff: Gaussian decay e^{-pi a_min e^{2v}}
    let a_min = f.min_scale().unwrap_or(1.0);
    let mut v_hi = 1.0f64;
    while coeff_bound * ((sigma + 1.0) * v_hi - std::f64::consts::PI * a_min * (2.0 * v_hi).exp()).exp()
        > tol / 10.0
    {
        v_hi += 0.5;
    }
    let sign = if parity == 0 { 1.0 } else { -1.0 };
    integrate(
        |v| {
            let x = v.exp();
            let even_odd = f.eval(x) + sign * f.eval(-x);
            even_odd * (s * v).exp()
        },
        v_lo,
        v_hi,
        tol / 2.0,
    )
}

/// Local functional-equation ratio at a finite place:
/// Z_p(f^, u^{-1}, 1-s) / Z_p(f, u, s). Independent of f within the class.
pub fn finite_gamma_ratio(f: &TwistedStepFunction, u: Complex64, s: Complex64) -> Result<Complex64> {
    let p = f.prime();
    let dual = f.fourier_transform();
    let u_inv = 1.0 / u;
    let num = local_zeta_factor(&dual, u_inv).eval_at_exponent(p, Complex64::new(1.0, 0.0) - s)?;
    let den = local_zeta_factor(f, u).eval_at_exponent(p, s)?;
    if den.norm() < 1e-140 {
        return Err(Error::SingularPoint { location: s });
    }
    Ok(num / den)
}

/// Local functional-equation ratio at the real place:
/// Z_inf(f^, parity, 1-s) / Z_inf(f, parity, s).
pub fn arch_gamma_ratio(f: &ArchFunction, parity: u8, s: Complex64) -> Result<Complex64> {
    let num = arch_zeta(&f.fourier_transform(), parity, Complex64::new(1.0, 0.0) - s)?;
    let den = arch_zeta(f, parity, s)?;
    if den.norm() < 1e-140 {
        return Err(Error::SingularPoint { location: s });
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schwartz::StepTerm;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn one() -> Complex64 {
        c(1.0, 0.0)
    }

    #[test]
    fn shell_measure_examples() {
        // units of Z_p: the 0-coset intersected with its top shell
        for p in [2u64, 3, 5, 97] {
            assert_eq!(shell_measure(p, &Rational::zero(), 0).unwrap(), Rational::one());
        }
        // 1 + 3 Z_3: c_3 / 3 = 1/2
        assert_eq!(shell_measure(3, &rat("1"), 1).unwrap(), rat("1/2"));
        // 2 Z_2 in shell v = 1 is one full unit shell
        assert_eq!(shell_measure(2, &Rational::zero(), 1).unwrap(), Rational::one());
        assert!(shell_measure(4, &Rational::zero(), 0).is_err());
    }

    #[test]
    fn euler_factor_is_exact() {
        let f = TwistedStepFunction::integers_indicator(5);
        let z = local_zeta_factor(&f, one());
        assert_eq!(z.numerator, Polynomial(vec![one()]));
        assert_eq!(z.denominator, Polynomial(vec![one(), -one()]));
    }

    #[test]
    fn unit_indicator_factor_is_one() {
        // 1_{Z_p^x} = 1_{Z_p} - 1_{p Z_p}
        let f = TwistedStepFunction::new(
            3,
            vec![
                StepTerm {
                    coeff: one(),
                    twist: Rational::zero(),
                    center: Rational::zero(),
                    level: 0,
                },
                StepTerm {
                    coeff: -one(),
                    twist: Rational::zero(),
                    center: Rational::zero(),
                    level: 1,
                },
            ],
        )
        .unwrap();
        let z = local_zeta_factor(&f, one());
        let got = z.eval_at_exponent(3, c(0.5, 1.0)).unwrap();
        assert!((got - one()).norm() < 1e-14);
    }

    #[test]
    fn single_coset_factor_is_constant() {
        let f = TwistedStepFunction::coset_indicator(3, rat("1"), 1).unwrap();
        let z = local_zeta_factor(&f, one());
        for s in [c(2.0, 0.0), c(0.3, 5.0), c(-1.0, 0.5)] {
            let got = z.eval_at_exponent(3, s).unwrap();
            assert!((got - c(0.5, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn closed_masses_match_brute_force_per_shell() {
        let f = TwistedStepFunction::new(
            3,
            vec![
                StepTerm {
                    coeff: c(1.5, -0.25),
                    twist: rat("2/3"),
                    center: rat("1/3"),
                    level: -1,
                },
                StepTerm {
                    coeff: c(-0.5, 1.0),
                    twist: rat("1"),
                    center: rat("0"),
                    level: 1,
                },
            ],
        )
        .unwrap();
        let shells = ShellDecomposition::of(&f);
        for m in shells.first_shell() - 1..shells.tail_start() + 2 {
            let closed = shells.mass(m);
            let brute = brute_force_shell_mass(&f, m);
            assert!(
                (closed - brute).norm() < 1e-13,
                "shell {m}: {closed} vs {brute}"
            );
        }
    }

    #[test]
    fn shell_masses_match_shell_measure_for_cosets() {
        // untwisted single coset away from zero: one shell, measure mass
        let f = TwistedStepFunction::coset_indicator(5, rat("2/5"), 1).unwrap();
        let shells = ShellDecomposition::of(&f);
        let expect = shell_measure(5, &rat("2/5"), 1).unwrap().to_f64();
        assert!((shells.mass(-1) - c(expect, 0.0)).norm() < 1e-15);
        assert_eq!(shells.mass(0), c(0.0, 0.0));
    }

    #[test]
    fn shell_sum_oracle_examples() {
        let z2 = TwistedStepFunction::integers_indicator(2);
        let got = shell_sum_oracle(&z2, one(), c(2.0, 0.0), 1e-13).unwrap();
        assert!((got - c(4.0 / 3.0, 0.0)).norm() < 1e-12);

        let f = TwistedStepFunction::new(
            3,
            vec![
                StepTerm {
                    coeff: one(),
                    twist: Rational::zero(),
                    center: Rational::zero(),
                    level: 0,
                },
                StepTerm {
                    coeff: -one(),
                    twist: Rational::zero(),
                    center: Rational::zero(),
                    level: 1,
                },
            ],
        )
        .unwrap();
        let got = shell_sum_oracle(&f, one(), c(0.5, 1.0), 1e-13).unwrap();
        assert!((got - one()).norm() < 1e-12);

        let z5 = TwistedStepFunction::integers_indicator(5);
        let got = shell_sum_oracle(&z5, one(), c(1.0, 0.0), 1e-13).unwrap();
        assert!((got - c(1.25, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn shell_sum_oracle_rejects_divergent_tail() {
        let z2 = TwistedStepFunction::integers_indicator(2);
        assert!(matches!(
            shell_sum_oracle(&z2, one(), c(0.0, 1.0), 1e-10),
            Err(Error::Divergent { .. })
        ));
    }

    #[test]
    fn closed_form_matches_oracle_with_twists() {
        let f = TwistedStepFunction::new(
            2,
            vec![
                StepTerm {
                    coeff: c(1.0, 0.5),
                    twist: rat("1/4"),
                    center: rat("1/2"),
                    level: -1,
                },
                StepTerm {
                    coeff: c(0.0, 1.0),
                    twist: rat("3"),
                    center: rat("2"),
                    level: 2,
                },
            ],
        )
        .unwrap();
        for s in [c(0.7, 0.3), c(2.0, -1.0), c(1.5, 4.0)] {
            let closed = local_zeta_factor(&f, one()).eval_at_exponent(2, s).unwrap();
            let oracle = shell_sum_oracle(&f, one(), s, 1e-13).unwrap();
            assert!(
                (closed - oracle).norm() < 1e-12,
                "s = {s}: {closed} vs {oracle}"
            );
        }
    }

    #[test]
    fn value_at_one_bridge() {
        // Z_p(f, 1, s = 1) = c_p * integral of f
        for f in [
            TwistedStepFunction::integers_indicator(3),
            TwistedStepFunction::coset_indicator(3, rat("1"), 1).unwrap(),
            TwistedStepFunction::coset_indicator(3, rat("1/3"), 0).unwrap(),
        ] {
            let z1 = local_zeta_factor(&f, one())
                .eval_at_exponent(3, c(1.0, 0.0))
                .unwrap();
            let cp = measure_constant(3).to_f64();
            assert!((z1 - f.integral() * cp).norm() < 1e-13, "{f:?}");
        }
    }

    #[test]
    fn arch_zeta_examples() {
        let gauss = ArchFunction::standard_gaussian();
        let z1 = arch_zeta(&gauss, 0, c(1.0, 0.0)).unwrap();
        assert!((z1 - one()).norm() < 1e-13);

        let z2 = arch_zeta(&gauss, 0, c(2.0, 0.0)).unwrap();
        assert!((z2 - c(1.0 / std::f64::consts::PI, 0.0)).norm() < 1e-13);

        let odd = ArchFunction::standard_odd();
        let z_odd = arch_zeta(&odd, 1, c(1.0, 0.0)).unwrap();
        assert!((z_odd - c(1.0 / std::f64::consts::PI, 0.0)).norm() < 1e-13);

        // parity mismatch integrates to zero
        assert!(arch_zeta(&gauss, 1, c(1.5, 0.0)).unwrap().norm() < 1e-15);

        // pole of Gamma(s/2)
        assert!(matches!(
            arch_zeta(&gauss, 0, c(0.0, 0.0)),
            Err(Error::GammaPole { .. })
        ));
    }

    #[test]
    fn arch_zeta_matches_quadrature() {
        let gauss = ArchFunction::standard_gaussian();
        for s in [c(0.5, 0.0), c(1.0, 2.0), c(2.7, -5.0), c(4.0, 10.0)] {
            let closed = arch_zeta(&gauss, 0, s).unwrap();
            let quad = arch_zeta_quadrature(&gauss, 0, s, 1e-11).unwrap();
            assert!(
                (closed - quad).norm() < 1e-10,
                "s = {s}: {closed} vs {quad}"
            );
        }
        let odd = ArchFunction::standard_odd();
        for s in [c(0.7, 0.0), c(1.5, 3.0)] {
            let closed = arch_zeta(&odd, 1, s).unwrap();
            let quad = arch_zeta_quadrature(&odd, 1, s, 1e-11).unwrap();
            assert!((closed - quad).norm() < 1e-10, "odd s = {s}");
        }
    }

    #[test]
    fn finite_gamma_ratio_examples() {
        let s = c(2.0, 0.0);
        let f = TwistedStepFunction::integers_indicator(2);
        let got = finite_gamma_ratio(&f, one(), s).unwrap();
        assert!((got - c(-0.75, 0.0)).norm() < 1e-13, "got {got}");

        // f-independence: the unit-ball indicator gives the same ratio
        let units = TwistedStepFunction::new(
            2,
            vec![
                StepTerm {
                    coeff: one(),
                    twist: Rational::zero(),
                    center: Rational::zero(),
                    level: 0,
                },
                StepTerm {
                    coeff: -one(),
                    twist: Rational::zero(),
                    center: Rational::zero(),
                    level: 1,
                },
            ],
        )
        .unwrap();
        let got2 = finite_gamma_ratio(&units, one(), s).unwrap();
        assert!((got2 - c(-0.75, 0.0)).norm() < 1e-13, "got {got2}");
    }

    #[test]
    fn arch_gamma_ratio_example() {
        // at s = 2 the ratio is pi^{1/2} Gamma(-1/2) / (pi^{-1} Gamma(1)) = -2 pi^2
        let gauss = ArchFunction::standard_gaussian();
        let got = arch_gamma_ratio(&gauss, 0, c(2.0, 0.0)).unwrap();
        let expect = -2.0 * std::f64::consts::PI * std::f64::consts::PI;
        assert!((got - c(expect, 0.0)).norm() < 1e-10, "got {got}");

        // independent of the Gaussian scale
        let wide = ArchFunction::gaussian(2.5).unwrap();
        let got2 = arch_gamma_ratio(&wide, 0, c(2.0, 0.0)).unwrap();
        assert!((got - got2).norm() < 1e-10);
    }
}

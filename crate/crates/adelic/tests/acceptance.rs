//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line with the observed defect and failing loudly when a tolerance is
//! missed. Run with `cargo test -p adelic --test acceptance`.

use adelic::verify::{
    check_arch_zeta, check_artin_product_formula, check_completed_lambda, check_entire_branch,
    check_finite_fourier_oracle, check_functional_equation, check_global_character_triviality,
    check_kappa_bridge, check_local_zeta_oracle, check_poisson_shift_zero, check_residues,
    check_riemann_roch_matrix, check_theta_identity, CheckResult,
};

fn report(criterion: &str, results: &[&CheckResult]) {
    for r in results {
        println!(
            "[{}] {criterion} / {}: {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
    }
    assert!(
        results.iter().all(|r| r.passed),
        "criterion {criterion} failed: {results:?}"
    );
}

#[test]
fn criterion_01_artin_product_formula() {
    let r = check_artin_product_formula(1000);
    report("1 artin product formula", &[&r]);
}

#[test]
fn criterion_02_global_character_trivial_on_q() {
    let r = check_global_character_triviality(200);
    report("2 global additive character", &[&r]);
}

#[test]
fn criterion_03_finite_fourier_oracle() {
    let (ft, reflect) = check_finite_fourier_oracle();
    report("3 finite-place fourier oracle", &[&ft, &reflect]);
}

#[test]
fn criterion_04_local_zeta_oracle() {
    let (oracle, euler) = check_local_zeta_oracle();
    report("4 local zeta shell-sum oracle", &[&oracle, &euler]);
}

#[test]
fn criterion_05_archimedean_zeta() {
    let (quad, norm) = check_arch_zeta();
    report("5 archimedean zeta", &[&quad, &norm]);
}

#[test]
fn criterion_06_completed_zeta() {
    let (two, half_plane) = check_completed_lambda();
    report("6 completed zeta", &[&two, &half_plane]);
}

#[test]
fn criterion_07_functional_equation() {
    let (grid, dilated) = check_functional_equation();
    report("7 functional equation", &[&grid, &dilated]);
}

#[test]
fn criterion_08_residues() {
    let (closed, numeric) = check_residues();
    report("8 residues", &[&closed, &numeric]);
}

#[test]
fn criterion_09_theta_poisson_riemann_roch() {
    let theta = check_theta_identity();
    let poisson = check_poisson_shift_zero();
    let rr = check_riemann_roch_matrix();
    report("9 theta / poisson / riemann-roch", &[&theta, &poisson, &rr]);
}

#[test]
fn criterion_10_entire_branch() {
    let (entire, fe, gauss) = check_entire_branch();
    report("10 entire branch", &[&entire, &fe, &gauss]);
}

#[test]
fn criterion_11_kappa_bridge() {
    let r = check_kappa_bridge();
    report("11 kappa bridge", &[&r]);
}

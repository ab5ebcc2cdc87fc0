//! Validation battery: every numerical claim the artifact makes, checked
//! at pinned tolerances.
//!
//! The CLI `validate` subcommand and the acceptance test suite both run
//! this battery, so CI and an interactive verification session execute the
//! same checks.

use serde::Serialize;

use crate::constants::{ExperimentalLeptons, PhysicalConstants};
use crate::frobenius::{
    generate_coefficients, no_bound_state_report, terminate_case_a, terminate_case_b, Closure,
    Growth, ScanSpec, SeriesParams,
};
use crate::oracle::{
    coulomb_benchmark, count_negative_eigenvalues, cutoff_convergence_scan, discretize,
    grid_at_cutoff, perfect_square_residual, GridSpec, PotentialSpec, Spacing, NEGATIVE_THRESHOLD,
};
use crate::potential::couplings_from_field;
use crate::report::fmt_sig;
use crate::spectra::{
    barut_ratio, binomial_power_ratio, binomial_sum_ratio, double_binomial_ratio, generation_count,
    spectrum_report, FormulaId, GenerationCount,
};

/// Outcome of one named check.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Check {
            name,
            passed,
            detail,
        }
    }
}

/// Couplings swept by the no-bound-state verification.
pub const SCAN_G: [f64; 4] = [0.5, 1.0, 2.0, 5.0];
pub const SCAN_M: [i32; 4] = [0, 1, 2, 3];
/// Inner cutoffs of the standard dipole refinement.
pub const SCAN_CUTOFFS: [f64; 4] = [0.05, 0.02, 0.01, 0.005];
/// Ring radius used for the full-ring form of the scan.
pub const SCAN_RING_RADIUS: f64 = 1.0;

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn check_barut_muon(c: &PhysicalConstants, r: &ExperimentalLeptons) -> Check {
    let ratio = barut_ratio(1, c.alpha_inverse);
    let rel = (ratio - r.mu_over_e).abs() / r.mu_over_e;
    let ok = within(ratio, 206.554, 0.001) && within(rel, 1.04e-3, 1e-5);
    Check::new(
        "barut-muon-ratio",
        ok,
        format!(
            "ratio = {} (206.554 +/- 0.001), rel_error = {} (1.04e-3 +/- 1e-5)",
            fmt_sig(ratio, 12),
            fmt_sig(rel, 6)
        ),
    )
}

fn check_barut_tau(c: &PhysicalConstants, r: &ExperimentalLeptons) -> Check {
    let ratio = barut_ratio(2, c.alpha_inverse);
    let rel = (ratio - r.tau_over_e).abs() / r.tau_over_e;
    let report = spectrum_report(FormulaId::Barut, c, r, 3);
    let flagged = report.rows[2]
        .annotation
        .as_deref()
        .unwrap_or("")
        .contains("exceeds");
    let ok = within(ratio, 3495.42, 0.01) && within(rel, 5.2e-3, 1e-4) && flagged;
    Check::new(
        "barut-tau-ratio",
        ok,
        format!(
            "ratio = {} (3495.42 +/- 0.01), rel_error = {} (5.2e-3 +/- 1e-4), accuracy-claim flag = {flagged}",
            fmt_sig(ratio, 12),
            fmt_sig(rel, 6)
        ),
    )
}

fn check_formula_coincidences(c: &PhysicalConstants) -> Check {
    let mut worst = 0.0f64;
    for n in 0..=2u32 {
        let b = barut_ratio(n, c.alpha_inverse);
        let s = binomial_sum_ratio(n, c.alpha_inverse);
        worst = worst.max((b - s).abs() / b.abs());
        let p = binomial_power_ratio(n, c.alpha_inverse);
        let d = double_binomial_ratio(n, c.alpha_inverse);
        worst = worst.max((p - d).abs() / p.abs().max(1.0));
    }
    Check::new(
        "formula-coincidences",
        worst <= 1e-12,
        format!(
            "max relative deviation over n <= 2: {} (tol 1e-12)",
            fmt_sig(worst, 4)
        ),
    )
}

fn check_f_lepton_masses(c: &PhysicalConstants, r: &ExperimentalLeptons) -> Check {
    let power_gev = binomial_power_ratio(3, c.alpha_inverse) * c.electron_mass_mev / 1000.0;
    let sum_gev = binomial_sum_ratio(3, c.alpha_inverse) * c.electron_mass_mev / 1000.0;
    let quoted_ok = (power_gev - 2.6).abs() / 2.6 <= 0.02;
    let report = spectrum_report(FormulaId::BinomialSum, c, r, 3);
    let annotated = report.rows[3]
        .annotation
        .as_deref()
        .unwrap_or("")
        .contains("3.4 GeV");
    let ok =
        within(power_gev, 2.568, 0.01) && quoted_ok && within(sum_gev, 4.622, 0.01) && annotated;
    Check::new(
        "f-lepton-masses",
        ok,
        format!(
            "binomial-power f = {} GeV (2.568 +/- 0.01, within 2% of quoted 2.6), binomial-sum f = {} GeV (4.622 +/- 0.01), quoted-3.4-GeV annotation = {annotated}",
            fmt_sig(power_gev, 6),
            fmt_sig(sum_gev, 6)
        ),
    )
}

fn check_generation_counts() -> Check {
    let ok = generation_count(FormulaId::Barut) == GenerationCount::Unbounded
        && generation_count(FormulaId::BinomialSum) == GenerationCount::Finite(4)
        && generation_count(FormulaId::BinomialPower) == GenerationCount::Finite(4)
        && generation_count(FormulaId::DoubleBinomial) == GenerationCount::Finite(3);
    Check::new(
        "generation-counts",
        ok,
        "(barut, binomial-sum, binomial-power, double-binomial) = (unbounded, 4, 4, 3)".into(),
    )
}

fn check_case_a_theorem() -> Check {
    let mut failures = 0usize;
    for m_q in 0..=3 {
        for nu in 0..=10 {
            let v = terminate_case_a(0.0, m_q, nu, 1.0);
            if v.required_beta != Some(0.0) || v.bound_state_possible {
                failures += 1;
            }
        }
    }
    Check::new(
        "case-a-theorem",
        failures == 0,
        format!("44 orders scanned, {failures} deviations from required beta = 0"),
    )
}

fn check_case_b_sign_theorem() -> Check {
    let mut worst = f64::NEG_INFINITY;
    for m_q in 0..=3 {
        for nu in 0..=10 {
            for eta in [0.5, 1.0, 2.0, 5.0] {
                let beta = terminate_case_b(0.0, m_q, nu, eta)
                    .expect("regular branch is well-posed")
                    .required_beta
                    .expect("case B always produces a root");
                worst = worst.max(beta);
            }
        }
    }
    Check::new(
        "case-b-sign-theorem",
        worst <= 0.0,
        format!(
            "max required beta over the sweep: {} (must be <= 0)",
            fmt_sig(worst, 6)
        ),
    )
}

fn check_growth_law() -> Check {
    let params = SeriesParams {
        s: 0.0,
        m_q: 1,
        beta: 1.0,
        eta: 1.0,
        sigma: 0.0,
        nu_max: 200,
    };
    let sol = generate_coefficients(&params, Closure::CaseCForward, 1.0).expect("chain");
    let mut worst = 0.0f64;
    for nu in 150..200usize {
        let target = 2.0 / (nu as f64 + 1.0);
        let ratio = sol.coefficients[nu + 1] / sol.coefficients[nu];
        worst = worst.max((ratio - target).abs() / target);
    }
    let ok = worst <= 0.05 && sol.growth == Growth::ExpGrowth2Beta;
    Check::new(
        "growth-law",
        ok,
        format!(
            "max tail deviation over nu in 150..199: {} (tol 0.05), classification = {:?}",
            fmt_sig(worst, 4),
            sol.growth
        ),
    )
}

fn check_coulomb_benchmark() -> Check {
    let mut errs = Vec::new();
    for n in [1000usize, 2000, 4000] {
        let grid = GridSpec::new(1e-2, 60.0, n, Spacing::Logarithmic).expect("grid");
        let b = coulomb_benchmark(1.0, 0, 0, &grid).expect("benchmark");
        errs.push(b.rel_error);
    }
    let monotone = errs[1] < errs[0] && errs[2] < errs[1];
    let ok = errs[2] <= 1e-3 && monotone;
    Check::new(
        "coulomb-oracle-validation",
        ok,
        format!(
            "rel errors at n = 1000/2000/4000: {} / {} / {} (final tol 1e-3, monotone = {monotone})",
            fmt_sig(errs[0], 4),
            fmt_sig(errs[1], 4),
            fmt_sig(errs[2], 4)
        ),
    )
}

fn check_no_bound_state_scan() -> Check {
    let base = GridSpec::dipole_default();
    let mut total_counts = 0usize;
    let mut worst_square = 0.0f64;
    let mut scanned = 0usize;
    for &g in &SCAN_G {
        for &m_q in &SCAN_M {
            let couplings = couplings_from_field(g, m_q).expect("finite");
            worst_square = worst_square
                .max(perfect_square_residual(&couplings, m_q, &base).expect("physical"));
            let specs = [
                PotentialSpec::DipoleFarField { couplings },
                PotentialSpec::DipoleFullRing {
                    couplings,
                    ring_radius_a: SCAN_RING_RADIUS,
                },
            ];
            for spec in &specs {
                for &cutoff in &SCAN_CUTOFFS {
                    let grid = grid_at_cutoff(&base, cutoff).expect("cutoff grid");
                    let problem = discretize(spec, &grid).expect("assembly");
                    total_counts += count_negative_eigenvalues(&problem, NEGATIVE_THRESHOLD);
                    scanned += 1;
                }
            }
        }
    }
    let ok = total_counts == 0 && worst_square <= 1e-12;
    Check::new(
        "no-bound-state-verification",
        ok,
        format!(
            "{scanned} (g, m_q, form, cutoff) scans: total negative count = {total_counts} (threshold 1e-10), max perfect-square residual = {} (tol 1e-12)",
            fmt_sig(worst_square, 4)
        ),
    )
}

fn check_series_termination_sweep() -> Check {
    let mut bad = 0usize;
    for m_q in SCAN_M {
        for eta in [0.5, 1.0, 2.0, 5.0] {
            let report = no_bound_state_report(m_q, eta, &ScanSpec::regular(10)).expect("sweep");
            if report.bound_state_possible || !report.flagged.is_empty() {
                bad += 1;
            }
        }
    }
    Check::new(
        "series-termination-sweep",
        bad == 0,
        format!("16 (m_q, eta) sweeps of cases A/B/C: {bad} reported a terminating beta > 0"),
    )
}

fn check_singular_model_classification() -> Check {
    let spec = PotentialSpec::DipoleEtaOnly { eta: 2.0, m_q: 1 };
    let report =
        cutoff_convergence_scan(&spec, &GridSpec::dipole_default(), &SCAN_CUTOFFS).expect("scan");
    let decreasing = report.trace.windows(2).all(|p| p[1].lowest < p[0].lowest);
    let ok = !report.converged && decreasing;
    let levels: Vec<String> = report.trace.iter().map(|p| fmt_sig(p.lowest, 4)).collect();
    Check::new(
        "singular-model-classification",
        ok,
        format!(
            "eta-only lowest eigenvalue across cutoffs: [{}], strictly decreasing = {decreasing}, converged = {}",
            levels.join(", "),
            report.converged
        ),
    )
}

fn check_dipole_cutoff_convergence() -> Check {
    let couplings = couplings_from_field(1.0, 1).expect("finite");
    let spec = PotentialSpec::DipoleFarField { couplings };
    let report =
        cutoff_convergence_scan(&spec, &GridSpec::dipole_default(), &SCAN_CUTOFFS).expect("scan");
    Check::new(
        "physical-dipole-cutoff-convergence",
        report.converged,
        format!(
            "last deltas {} / {} vs tolerance {}",
            fmt_sig(report.last_deltas[0], 4),
            fmt_sig(report.last_deltas[1], 4),
            fmt_sig(report.tolerance, 4)
        ),
    )
}

/// Run the full battery with the given constants and reference data.
pub fn run_battery(c: &PhysicalConstants, r: &ExperimentalLeptons) -> Vec<Check> {
    vec![
        check_barut_muon(c, r),
        check_barut_tau(c, r),
        check_formula_coincidences(c),
        check_f_lepton_masses(c, r),
        check_generation_counts(),
        check_case_a_theorem(),
        check_case_b_sign_theorem(),
        check_growth_law(),
        check_coulomb_benchmark(),
        check_no_bound_state_scan(),
        check_series_termination_sweep(),
        check_singular_model_classification(),
        check_dipole_cutoff_convergence(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_is_green_at_defaults() {
        let checks = run_battery(
            &PhysicalConstants::default(),
            &ExperimentalLeptons::default(),
        );
        for check in &checks {
            assert!(check.passed, "{}: {}", check.name, check.detail);
        }
        assert_eq!(checks.len(), 13);
    }
}

//! Charged-lepton mass-spectrum evaluators.
//!
//! Four closed-form spectra for the ratio m_n/m_e, with n = 0, 1, 2, 3
//! labeling e, μ, τ and a hypothetical fourth lepton f:
//!
//! * Barut:          1 + (3/2)·α⁻¹·Σ_{l=0}^{n} l⁴          (n unbounded)
//! * BinomialSum:    1 + (1/2)·α⁻¹·Σ_{l=0}^{n} C(3,l)·l⁴   (4 generations)
//! * BinomialPower:  C(3,n)·(1/2)^{n²}·α⁻ⁿ·... α⁻¹ to the n (4 generations)
//! * DoubleBinomial: C(3,n)·C(2,n)·(α⁻¹/4)ⁿ                (3 generations)
//!
//! The binomial convention C(n,k) = 0 for k > n is what terminates the
//! finite spectra. Power sums are accumulated in exact integer arithmetic
//! before the single floating multiply, so golden values carry no summation
//! rounding ambiguity.

use serde::Serialize;

use crate::constants::{ExperimentalLeptons, PhysicalConstants};
use crate::error::{Error, Result};

/// Which mass formula to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FormulaId {
    Barut,
    BinomialSum,
    BinomialPower,
    DoubleBinomial,
}

impl FormulaId {
    pub const ALL: [FormulaId; 4] = [
        FormulaId::Barut,
        FormulaId::BinomialSum,
        FormulaId::BinomialPower,
        FormulaId::DoubleBinomial,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FormulaId::Barut => "barut",
            FormulaId::BinomialSum => "binomial-sum",
            FormulaId::BinomialPower => "binomial-power",
            FormulaId::DoubleBinomial => "double-binomial",
        }
    }
}

/// How many generations a formula admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GenerationCount {
    Unbounded,
    Finite(u32),
}

/// Binomial coefficient with the cutoff convention C(n,k) = 0 for k > n.
pub fn binom(n: i64, k: i64) -> Result<u64> {
    if n < 0 || k < 0 {
        return Err(Error::domain(format!(
            "binom requires nonnegative arguments, got ({n}, {k})"
        )));
    }
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Ok(acc)
}

/// Σ_{l=0}^{n} l⁴ in exact integer arithmetic.
fn power_sum_4(n: u32) -> u64 {
    (0..=u64::from(n)).map(|l| l * l * l * l).sum()
}

/// Σ_{l=0}^{min(n,3)} C(3,l)·l⁴ in exact integer arithmetic.
fn binomial_power_sum_4(n: u32) -> u64 {
    (0..=u64::from(n).min(3))
        .map(|l| binom(3, l as i64).expect("small args") * l * l * l * l)
        .sum()
}

/// Barut ratio: 1 + (3/2)·α⁻¹·Σ l⁴.
pub fn barut_ratio(n: u32, alpha_inverse: f64) -> f64 {
    1.0 + (1.5 * power_sum_4(n) as f64) * alpha_inverse
}

/// Magnetic self-energy increment (3/2)·α⁻¹·n⁴ in units of mₑc².
pub fn barut_magnetic_energy(n: u32, alpha_inverse: f64) -> f64 {
    let n4 = u64::from(n) * u64::from(n) * u64::from(n) * u64::from(n);
    (1.5 * n4 as f64) * alpha_inverse
}

/// Binomial-weighted sum ratio: 1 + (1/2)·α⁻¹·Σ C(3,l)·l⁴.
///
/// Terms vanish beyond l = 3, so the ratio freezes at its n = 3 value for
/// larger n ("beyond last generation").
pub fn binomial_sum_ratio(n: u32, alpha_inverse: f64) -> f64 {
    1.0 + (0.5 * binomial_power_sum_4(n) as f64) * alpha_inverse
}

/// Product-form ratio: C(3,n)·(1/2)^{n²}·(α⁻¹)ⁿ. Zero beyond n = 3.
pub fn binomial_power_ratio(n: u32, alpha_inverse: f64) -> f64 {
    let c = binom(3, i64::from(n)).expect("nonnegative") as f64;
    if c == 0.0 {
        return 0.0;
    }
    let n_i = i32::try_from(n).expect("small n");
    c * 0.5_f64.powi(n_i * n_i) * alpha_inverse.powi(n_i)
}

/// Double-binomial ratio: C(3,n)·C(2,n)·(α⁻¹/4)ⁿ. Zero from n = 3 on.
pub fn double_binomial_ratio(n: u32, alpha_inverse: f64) -> f64 {
    let c3 = binom(3, i64::from(n)).expect("nonnegative") as f64;
    let c2 = binom(2, i64::from(n)).expect("nonnegative") as f64;
    if c3 == 0.0 || c2 == 0.0 {
        return 0.0;
    }
    c3 * c2 * (alpha_inverse / 4.0).powi(i32::try_from(n).expect("small n"))
}

/// Ratio m_n/m_e for any formula.
pub fn ratio(formula: FormulaId, n: u32, alpha_inverse: f64) -> f64 {
    match formula {
        FormulaId::Barut => barut_ratio(n, alpha_inverse),
        FormulaId::BinomialSum => binomial_sum_ratio(n, alpha_inverse),
        FormulaId::BinomialPower => binomial_power_ratio(n, alpha_inverse),
        FormulaId::DoubleBinomial => double_binomial_ratio(n, alpha_inverse),
    }
}

/// Number of generations each formula accommodates.
pub fn generation_count(formula: FormulaId) -> GenerationCount {
    match formula {
        FormulaId::Barut => GenerationCount::Unbounded,
        FormulaId::BinomialSum | FormulaId::BinomialPower => GenerationCount::Finite(4),
        FormulaId::DoubleBinomial => GenerationCount::Finite(3),
    }
}

fn label_of(n: u32) -> String {
    match n {
        0 => "e".into(),
        1 => "mu".into(),
        2 => "tau".into(),
        3 => "f".into(),
        other => format!("n{other}"),
    }
}

/// One generation of a mass-spectrum table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub n: u32,
    pub label: String,
    pub ratio: f64,
    pub mass_mev: f64,
    pub experimental_ratio: Option<f64>,
    pub rel_error: Option<f64>,
    /// Quoted values and flags that must stay distinguishable from
    /// computed numbers.
    pub annotation: Option<String>,
}

/// Full evaluation of one formula against the reference leptons.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MassSpectrum {
    pub formula: FormulaId,
    pub alpha_inverse_used: f64,
    pub rows: Vec<SpectrumRow>,
    pub generation_count: GenerationCount,
}

/// Quoted fourth-generation masses printed alongside computed values.
const QUOTED_F_MASS_BINOMIAL_SUM_GEV: f64 = 3.4;
const QUOTED_F_MASS_BINOMIAL_POWER_GEV: f64 = 2.6;

/// Accuracy quoted for a formula, with a factor-2 reading of "about":
/// one part in 10³ for the Barut-type sums, under 1% for the
/// double-binomial spectrum.
fn quoted_accuracy(formula: FormulaId) -> Option<(f64, &'static str)> {
    match formula {
        FormulaId::Barut | FormulaId::BinomialSum => Some((2e-3, "one-part-in-10^3")),
        FormulaId::DoubleBinomial => Some((1e-2, "sub-1%")),
        FormulaId::BinomialPower => None,
    }
}

/// Build the spectrum table for generations 0..=max_n.
pub fn spectrum_report(
    formula: FormulaId,
    constants: &PhysicalConstants,
    reference: &ExperimentalLeptons,
    max_n: u32,
) -> MassSpectrum {
    let alpha_inverse = constants.alpha_inverse;
    let mut rows = Vec::with_capacity(max_n as usize + 1);
    for n in 0..=max_n {
        let r = ratio(formula, n, alpha_inverse);
        let mass_mev = r * constants.electron_mass_mev;
        let experimental_ratio = match n {
            0 => Some(1.0),
            1 => Some(reference.mu_over_e),
            2 => Some(reference.tau_over_e),
            _ => None,
        };
        let rel_error = experimental_ratio.map(|x| (r - x).abs() / x);
        let mut notes: Vec<String> = Vec::new();
        let beyond = match generation_count(formula) {
            GenerationCount::Unbounded => false,
            GenerationCount::Finite(count) => n >= count,
        };
        if beyond {
            if formula == FormulaId::BinomialSum {
                notes.push("beyond last generation: ratio frozen at n=3".into());
            } else {
                notes.push("beyond last generation".into());
            }
        }
        if n == 3 {
            match formula {
                FormulaId::BinomialSum => notes.push(format!(
                    "quoted f mass {QUOTED_F_MASS_BINOMIAL_SUM_GEV} GeV vs computed {:.3} GeV; discrepancy unresolved",
                    mass_mev / 1000.0
                )),
                FormulaId::BinomialPower => notes.push(format!(
                    "quoted f mass {QUOTED_F_MASS_BINOMIAL_POWER_GEV} GeV vs computed {:.3} GeV",
                    mass_mev / 1000.0
                )),
                _ => {}
            }
        }
        if let (Some(err), Some((limit, claim))) = (rel_error, quoted_accuracy(formula)) {
            if n > 0 && err > limit {
                notes.push(format!(
                    "rel. error {err:.2e} exceeds the quoted {claim} accuracy"
                ));
            }
        }
        rows.push(SpectrumRow {
            n,
            label: label_of(n),
            ratio: r,
            mass_mev,
            experimental_ratio,
            rel_error,
            annotation: if notes.is_empty() {
                None
            } else {
                Some(notes.join("; "))
            },
        });
    }
    MassSpectrum {
        formula,
        alpha_inverse_used: alpha_inverse,
        rows,
        generation_count: generation_count(formula),
    }
}

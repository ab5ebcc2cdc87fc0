//! Frobenius-series engine for the radial recurrence of the dipole problem.
//!
//! After the substitution R(ρ) = ρ^{|m|} e^{−βρ} u(ρ) with β = √(−ℰ), the
//! series u = Σ_ν b_ν ρ^{s+ν} obeys, at the coefficient of ρ^{s+ν−1},
//!
//!   q_ν b_{ν+1} = β p_ν b_ν − η b_{ν+2} − σ b_{ν+3},
//!   q_ν = (s+ν+1)(s+ν+2|m|+1),   p_ν = 2s+2ν+2|m|+1.
//!
//! The recurrence couples each coefficient to *higher* ones, so it does not
//! define a forward iteration by itself. Two closures are provided and both
//! report per-order residuals instead of silently choosing:
//!
//! * [`Closure::CaseCForward`]: the forward chain obtained by assuming the
//!   tail terminates two orders ahead (σ = 0 model only):
//!   b_{ν+1} = β p_ν b_ν / (q_ν + ηβ p_{ν+1}/q_{ν+1}).
//! * [`Closure::TruncatedLinearSystem`]: impose the recurrence rows
//!   ν = 0..nu_max−1 with b_{ν>nu_max} = 0 and solve the banded system.
//!
//! The low orders ν = −3, −2, −1 (where σb₀, ηb₀ and the indicial balance
//! live) are never imposed; their residuals are reported as-is, because the
//! model offers no way to satisfy them with b₀ ≠ 0 once σ is dropped.
//!
//! Termination analyses A, B, C decide whether any choice of β > 0 lets the
//! series terminate; the answer, swept over orders and indicial branches,
//! is the machine-checkable form of the no-bound-state claim.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::serialize_coefficients;

/// Helper quantities of the recurrence at order ν:
/// q = (s+ν+1)(s+ν+2|m|+1), p = 2s+2ν+2|m|+1.
pub fn qp(s: f64, nu: i64, m_q: i32) -> (f64, f64) {
    let two_m = 2.0 * f64::from(m_q.unsigned_abs());
    let x = s + nu as f64;
    let q = (x + 1.0) * (x + two_m + 1.0);
    let p = 2.0 * x + two_m + 1.0;
    (q, p)
}

/// Roots of the indicial balance s(s+2|m|) = 0 (regular root first).
pub fn indicial_candidates(m_q: i32) -> [f64; 2] {
    [0.0, -2.0 * f64::from(m_q.unsigned_abs())]
}

/// How the non-forward recurrence is closed into a computable scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Closure {
    CaseCForward,
    TruncatedLinearSystem,
}

/// Asymptotic behavior read off the generated coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Growth {
    /// All coefficients vanish beyond some order.
    Terminating,
    /// Tail ratios match b_{ν+1}/b_ν ≈ 2β/(ν+1), i.e. u ~ e^{2βρ}.
    ExpGrowth2Beta,
    Indeterminate,
}

/// Parameters of a series run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesParams {
    pub s: f64,
    pub m_q: i32,
    pub beta: f64,
    pub eta: f64,
    /// 0 for the σ-dropped model.
    pub sigma: f64,
    pub nu_max: usize,
}

impl SeriesParams {
    pub fn validate(&self) -> Result<()> {
        if self.nu_max < 4 {
            return Err(Error::domain("nu_max must be >= 4"));
        }
        if self.beta.is_nan() || self.beta < 0.0 {
            return Err(Error::domain("beta must be >= 0"));
        }
        for (name, v) in [("s", self.s), ("eta", self.eta), ("sigma", self.sigma)] {
            if !v.is_finite() {
                return Err(Error::domain(format!("{name} must be finite")));
            }
        }
        Ok(())
    }
}

/// Residual of the recurrence at one order, with b outside 0..=nu_max taken
/// as zero: r_ν = β p_ν b_ν − q_ν b_{ν+1} − η b_{ν+2} − σ b_{ν+3}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualEntry {
    pub order: i64,
    pub value: f64,
}

/// A generated series with its residual report and growth classification.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesSolution {
    pub params: SeriesParams,
    #[serde(serialize_with = "serialize_coefficients")]
    pub coefficients: Vec<f64>,
    pub closure: Closure,
    pub residuals: Vec<ResidualEntry>,
    pub growth: Growth,
}

fn coefficient(b: &[f64], order: i64) -> f64 {
    if order < 0 || order as usize >= b.len() {
        0.0
    } else {
        b[order as usize]
    }
}

/// Residuals for orders −3 ..= nu_max+2 (pairwise-grouped sums).
fn residual_report(params: &SeriesParams, b: &[f64]) -> Vec<ResidualEntry> {
    let nu_max = params.nu_max as i64;
    (-3..=nu_max + 2)
        .map(|nu| {
            let (q, p) = qp(params.s, nu, params.m_q);
            let lead = params.beta * p * coefficient(b, nu) - q * coefficient(b, nu + 1);
            let tail = params.eta * coefficient(b, nu + 2) + params.sigma * coefficient(b, nu + 3);
            ResidualEntry {
                order: nu,
                value: lead - tail,
            }
        })
        .collect()
}

/// Forward chain of the case-C closure.
///
/// b_{ν+1} = β p_ν b_ν / (q_ν + ηβ p_{ν+1}/q_{ν+1}); the β in the
/// denominator is what the substitution q_{ν+1}b_{ν+2} = βp_{ν+1}b_{ν+1}
/// produces, and the two closures only agree with it in place.
fn forward_chain(params: &SeriesParams, b0: f64) -> Result<Vec<f64>> {
    let mut b = Vec::with_capacity(params.nu_max + 1);
    b.push(b0);
    for nu in 0..params.nu_max as i64 {
        let (q, p) = qp(params.s, nu, params.m_q);
        let (q1, p1) = qp(params.s, nu + 1, params.m_q);
        if q1 == 0.0 {
            return Err(Error::SingularOrder { nu: nu + 1 });
        }
        let denom = q + params.eta * params.beta * p1 / q1;
        if denom == 0.0 {
            return Err(Error::SingularOrder { nu });
        }
        let prev = *b.last().expect("nonempty");
        b.push(params.beta * p * prev / denom);
    }
    Ok(b)
}

/// Banded solve of the truncated system: rows ν = 0..nu_max−1, unknowns
/// b_1..b_{nu_max}, b₀ fixed, b_{ν>nu_max} = 0. One subdiagonal, two
/// superdiagonals; partial pivoting fills a third.
#[allow(clippy::needless_range_loop)] // band algebra is clearer with explicit column indices
fn truncated_system(params: &SeriesParams, b0: f64) -> Result<Vec<f64>> {
    let n = params.nu_max;
    // w[i] holds columns i-1 .. i+3 of row i (slot = col - (i-1))
    let mut w = vec![[0.0f64; 5]; n];
    let mut rhs = vec![0.0f64; n];
    for nu in 0..n {
        let (q, p) = qp(params.s, nu as i64, params.m_q);
        if nu >= 1 {
            w[nu][0] = -params.beta * p;
        } else {
            rhs[0] = params.beta * p * b0;
        }
        w[nu][1] = q;
        if nu + 1 < n {
            w[nu][2] = params.eta;
        }
        if nu + 2 < n {
            w[nu][3] = params.sigma;
        }
    }
    for k in 0..n - 1 {
        if w[k + 1][0].abs() > w[k][1].abs() {
            for t in 0..4 {
                let tmp = w[k][t + 1];
                w[k][t + 1] = w[k + 1][t];
                w[k + 1][t] = tmp;
            }
            w[k + 1][4] = 0.0;
            rhs.swap(k, k + 1);
        }
        let pivot = w[k][1];
        if pivot == 0.0 {
            return Err(Error::SingularSystem(format!("zero pivot at column {k}")));
        }
        let f = w[k + 1][0] / pivot;
        w[k + 1][0] = 0.0;
        if f != 0.0 {
            for t in 1..4 {
                w[k + 1][t] -= f * w[k][t + 1];
            }
            rhs[k + 1] -= f * rhs[k];
        }
    }
    if w[n - 1][1] == 0.0 {
        return Err(Error::SingularSystem("zero pivot in final column".into()));
    }
    let mut x = vec![0.0f64; n];
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        for t in 2..5 {
            let col = i + t - 1;
            if col < n {
                acc -= w[i][t] * x[col];
            }
        }
        x[i] = acc / w[i][1];
    }
    let mut b = Vec::with_capacity(n + 1);
    b.push(b0);
    b.extend_from_slice(&x);
    Ok(b)
}

/// Generate series coefficients under the requested closure.
pub fn generate_coefficients(
    params: &SeriesParams,
    closure: Closure,
    b0: f64,
) -> Result<SeriesSolution> {
    params.validate()?;
    if b0 == 0.0 || !b0.is_finite() {
        return Err(Error::domain("b0 must be finite and nonzero"));
    }
    let coefficients = match closure {
        Closure::CaseCForward => {
            if params.sigma != 0.0 {
                return Err(Error::contract(
                    "the forward chain is defined for the sigma-dropped model (sigma = 0)",
                ));
            }
            forward_chain(params, b0)?
        }
        Closure::TruncatedLinearSystem => truncated_system(params, b0)?,
    };
    if coefficients.iter().any(|c| !c.is_finite()) {
        return Err(Error::SingularSystem(
            "non-finite coefficient generated".into(),
        ));
    }
    let residuals = residual_report(params, &coefficients);
    let growth = classify_growth(&coefficients, params.beta);
    Ok(SeriesSolution {
        params: *params,
        coefficients,
        closure,
        residuals,
        growth,
    })
}

/// Coefficients smaller than this are treated as underflow artifacts, not
/// genuine termination, when classifying growth.
const TERMINATION_FLOOR: f64 = 1e-290;

fn classify_growth(b: &[f64], beta: f64) -> Growth {
    let n = b.len().saturating_sub(1);
    let last_nonzero = b.iter().rposition(|&x| x != 0.0);
    match last_nonzero {
        None => return Growth::Terminating,
        Some(k) if k < n && b[k].abs() > TERMINATION_FLOOR => return Growth::Terminating,
        _ => {}
    }
    if beta > 0.0 && n >= 8 {
        let window_start = n - n / 4;
        let mut all_match = true;
        for nu in window_start..n {
            let target = 2.0 * beta / (nu as f64 + 1.0);
            if b[nu] == 0.0 {
                all_match = false;
                break;
            }
            let ratio = b[nu + 1] / b[nu];
            if (ratio - target).abs() > 0.05 * target {
                all_match = false;
                break;
            }
        }
        if all_match {
            return Growth::ExpGrowth2Beta;
        }
    }
    Growth::Indeterminate
}

/// Classify the asymptotic behavior of a generated series.
pub fn growth_classification(solution: &SeriesSolution) -> Growth {
    classify_growth(&solution.coefficients, solution.params.beta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseLabel {
    A,
    B,
    C,
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CaseLabel::A => write!(f, "A"),
            CaseLabel::B => write!(f, "B"),
            CaseLabel::C => write!(f, "C"),
        }
    }
}

/// Machine-readable explanation codes for termination verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Explanation {
    /// Termination at this order forces β = 0 (ℰ = 0, not a bound state).
    BetaMustVanish,
    /// p_ν = 0 here, so the order places no constraint on β.
    BetaUnconstrained,
    /// β fixed by a vanishing 2×2 determinant.
    DeterminantRoot,
    /// The case-C chain expresses every coefficient in terms of b_ν and β
    /// but cannot determine β.
    BetaUndeterminedByCaseC,
}

impl std::fmt::Display for Explanation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let code = match self {
            Explanation::BetaMustVanish => "beta-must-vanish",
            Explanation::BetaUnconstrained => "beta-unconstrained-at-order",
            Explanation::DeterminantRoot => "determinant-root",
            Explanation::BetaUndeterminedByCaseC => "beta-undetermined-by-case-c",
        };
        write!(f, "{code}")
    }
}

/// Outcome of one termination analysis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TerminationVerdict {
    pub case_label: CaseLabel,
    pub required_beta: Option<f64>,
    pub bound_state_possible: bool,
    pub explanation: Explanation,
    /// Set when the entry deserves attention in a sweep (β > 0 demanded,
    /// or an unconstrained order).
    pub flagged: bool,
}

/// Case A: demand b_{ν+1} = 0 with the whole tail zero. The surviving
/// equation is β p_ν b_ν = 0, so β = 0 unless p_ν itself vanishes.
/// η plays no role once the tail is zero; the parameter is kept so the
/// three cases share a calling convention.
pub fn terminate_case_a(s: f64, m_q: i32, nu: i64, _eta: f64) -> TerminationVerdict {
    let (_, p) = qp(s, nu, m_q);
    if p == 0.0 {
        TerminationVerdict {
            case_label: CaseLabel::A,
            required_beta: None,
            bound_state_possible: false,
            explanation: Explanation::BetaUnconstrained,
            flagged: true,
        }
    } else {
        TerminationVerdict {
            case_label: CaseLabel::A,
            required_beta: Some(0.0),
            bound_state_possible: false,
            explanation: Explanation::BetaMustVanish,
            flagged: false,
        }
    }
}

/// Case B: demand b_ν = 0, b_{ν+3} = 0 with b_{ν+1}, b_{ν+2} nonzero.
/// The 2×2 determinant q_ν q_{ν+1} + ηβ p_{ν+1} must vanish, so
/// β = −q_ν q_{ν+1}/(η p_{ν+1}).
pub fn terminate_case_b(s: f64, m_q: i32, nu: i64, eta: f64) -> Result<TerminationVerdict> {
    if eta == 0.0 {
        return Err(Error::NoSolution("case B requires eta != 0".into()));
    }
    let (q0, _) = qp(s, nu, m_q);
    let (q1, p1) = qp(s, nu + 1, m_q);
    if p1 == 0.0 {
        return Err(Error::NoSolution(format!(
            "case B requires p_(nu+1) != 0 at nu = {nu}"
        )));
    }
    let required = -(q0 * q1) / (eta * p1);
    let possible = required > 0.0;
    Ok(TerminationVerdict {
        case_label: CaseLabel::B,
        required_beta: Some(required),
        bound_state_possible: possible,
        explanation: Explanation::DeterminantRoot,
        flagged: possible,
    })
}

/// The two coefficients the case-C chain produces from b_ν.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseCChain {
    pub b_next: f64,
    pub b_next2: f64,
    pub verdict: TerminationVerdict,
}

/// Case C: assume b_{ν+3} = 0 and p_{ν+2} = 0, which zeroes the rest of the
/// tail and closes the chain:
///   b_{ν+1} = β p_ν b_ν / (q_ν + ηβ p_{ν+1}/q_{ν+1}),
///   b_{ν+2} = β² p_{ν+1} p_ν b_ν / (q_ν q_{ν+1} + ηβ p_{ν+1}).
/// Every later coefficient follows from b_ν and β, but nothing determines β.
pub fn terminate_case_c(
    s: f64,
    m_q: i32,
    nu: i64,
    eta: f64,
    beta: f64,
    b_nu: f64,
) -> Result<CaseCChain> {
    let (q0, p0) = qp(s, nu, m_q);
    let (q1, p1) = qp(s, nu + 1, m_q);
    if q1 == 0.0 {
        return Err(Error::SingularOrder { nu: nu + 1 });
    }
    let denom1 = q0 + eta * beta * p1 / q1;
    if denom1 == 0.0 {
        return Err(Error::SingularOrder { nu });
    }
    let denom2 = q0 * q1 + eta * beta * p1;
    if denom2 == 0.0 {
        return Err(Error::SingularOrder { nu });
    }
    let b_next = beta * p0 * b_nu / denom1;
    let b_next2 = beta * beta * p1 * p0 * b_nu / denom2;
    Ok(CaseCChain {
        b_next,
        b_next2,
        verdict: TerminationVerdict {
            case_label: CaseLabel::C,
            required_beta: None,
            bound_state_possible: false,
            explanation: Explanation::BetaUndeterminedByCaseC,
            flagged: false,
        },
    })
}

/// Grid of indicial branches and orders to sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSpec {
    pub s_values: Vec<f64>,
    pub nu_min: i64,
    pub nu_max: i64,
}

impl ScanSpec {
    /// Regular branch, orders 0..=nu_max.
    pub fn regular(nu_max: i64) -> Self {
        ScanSpec {
            s_values: vec![0.0],
            nu_min: 0,
            nu_max,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanEntry {
    pub case_label: CaseLabel,
    pub s: f64,
    pub nu: i64,
    pub verdict: TerminationVerdict,
    /// η > 0 on the regular indicial branch; only these entries can flip
    /// the overall verdict.
    pub physical_channel: bool,
}

/// Sweep of cases A, B, C over a scan grid for one (m_q, η).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoBoundStateReport {
    pub m_q: i32,
    pub eta: f64,
    pub entries: Vec<ScanEntry>,
    /// Entries demanding β > 0 (any channel) or leaving β unconstrained.
    pub flagged: Vec<ScanEntry>,
    pub bound_state_possible: bool,
    pub notes: Vec<String>,
}

/// Run the A/B/C termination sweep and aggregate the verdict.
pub fn no_bound_state_report(m_q: i32, eta: f64, scan: &ScanSpec) -> Result<NoBoundStateReport> {
    if scan.s_values.is_empty() || scan.nu_min > scan.nu_max {
        return Err(Error::domain("scan must be nonempty"));
    }
    let mut entries = Vec::new();
    let mut notes = Vec::new();
    if eta == 0.0 {
        notes.push("eta = 0: no attractive coupling; case B inapplicable".into());
    }
    for &s in &scan.s_values {
        let physical_channel = eta > 0.0 && s >= 0.0;
        for nu in scan.nu_min..=scan.nu_max {
            entries.push(ScanEntry {
                case_label: CaseLabel::A,
                s,
                nu,
                verdict: terminate_case_a(s, m_q, nu, eta),
                physical_channel,
            });
            if eta != 0.0 {
                match terminate_case_b(s, m_q, nu, eta) {
                    Ok(verdict) => entries.push(ScanEntry {
                        case_label: CaseLabel::B,
                        s,
                        nu,
                        verdict,
                        physical_channel,
                    }),
                    Err(e) => notes.push(format!("case B skipped at s={s}, nu={nu}: {e}")),
                }
            }
            // beta and b_nu do not affect the case-C verdict; probe at 1, 1.
            match terminate_case_c(s, m_q, nu, eta, 1.0, 1.0) {
                Ok(chain) => entries.push(ScanEntry {
                    case_label: CaseLabel::C,
                    s,
                    nu,
                    verdict: chain.verdict,
                    physical_channel,
                }),
                Err(e) => notes.push(format!("case C skipped at s={s}, nu={nu}: {e}")),
            }
        }
    }
    let flagged: Vec<ScanEntry> = entries
        .iter()
        .copied()
        .filter(|e| e.verdict.flagged)
        .collect();
    let bound_state_possible = entries
        .iter()
        .any(|e| e.physical_channel && e.verdict.required_beta.is_some_and(|b| b > 0.0));
    Ok(NoBoundStateReport {
        m_q,
        eta,
        entries,
        flagged,
        bound_state_possible,
        notes,
    })
}

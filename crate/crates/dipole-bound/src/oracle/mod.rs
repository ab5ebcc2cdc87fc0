//! Numerical spectral oracle for the radial problem.
//!
//! The radial equation R'' + R'/ρ + [ℰ − V_eff(ρ)]R = 0 is reduced with
//! χ = √ρ·R to −χ'' + [V_eff − 1/(4ρ²)]χ = ℰχ, discretized with second-order
//! differences, and solved as a symmetric-definite tridiagonal pencil
//! A φ = ℰ B φ. On a logarithmic grid (t = ln ρ, φ = χ/√ρ) the diagonal is
//! 2/dt² + ρ²V_eff(ρ) and B = diag(ρ²): the −1/(4ρ²) centrifugal shift
//! cancels exactly against the measure term, so non-negativity of V_eff is
//! inherited by the discrete operator entry-by-entry. Sturm counts of the
//! pencil are then an exact, rigorous test of the no-bound-state claim.
//!
//! Boundaries are hard-wall Dirichlet at ρ_min and ρ_max; for singular
//! attractive tails (η/ρ³) this inner cutoff is a physical regularization
//! whose effect the cutoff scan is designed to expose. The one exception is
//! the Coulomb validation problem on a log grid: its closed-form spectrum
//! belongs to the *regular* boundary condition at the origin (the m = 0
//! states keep a finite amplitude there, so a hard wall shifts them by
//! O(1/ln ρ_min) and never converges to the textbook values); the inner row
//! therefore applies the cusp log-derivative d(ln R)/d(ln ρ) = |m| − κρ/(2|m|+1)
//! instead of a wall.

pub mod tridiag;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::potential::{effective_potential, Couplings, DipoleField, PotentialForm};
use tridiag::{pencil_count_below, pencil_eigenvalue};

/// Radial potential fed to the oracle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum PotentialSpec {
    /// Physical dipole, far-field form: V = m²/ρ² − η/ρ³ − σ/ρ⁴.
    DipoleFarField { couplings: Couplings },
    /// Physical dipole with finite ring radius: V = (m/ρ − g·ρ/(ρ²+a²)^{3/2})².
    DipoleFullRing {
        couplings: Couplings,
        ring_radius_a: f64,
    },
    /// σ-dropped model: V = m²/ρ² − η/ρ³.
    DipoleEtaOnly { eta: f64, m_q: i32 },
    /// Validation benchmark: V = m²/ρ² − κ/ρ with a closed-form spectrum.
    Coulomb2D { kappa: f64, m_q: i32 },
}

impl PotentialSpec {
    pub fn m_q(&self) -> i32 {
        match self {
            PotentialSpec::DipoleFarField { couplings }
            | PotentialSpec::DipoleFullRing { couplings, .. } => couplings.m_q,
            PotentialSpec::DipoleEtaOnly { m_q, .. } | PotentialSpec::Coulomb2D { m_q, .. } => *m_q,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            PotentialSpec::DipoleFarField { .. } => "far",
            PotentialSpec::DipoleFullRing { .. } => "ring",
            PotentialSpec::DipoleEtaOnly { .. } => "eta-only",
            PotentialSpec::Coulomb2D { .. } => "coulomb",
        }
    }

    /// Effective radial potential V_eff(ρ).
    pub fn v_eff(&self, rho: f64) -> Result<f64> {
        match self {
            PotentialSpec::DipoleFarField { couplings } => {
                let field = DipoleField::far_field(1.0)?;
                effective_potential(couplings, &field, rho)
            }
            PotentialSpec::DipoleFullRing {
                couplings,
                ring_radius_a,
            } => {
                let field = DipoleField::new(1.0, *ring_radius_a, PotentialForm::FullRing)?;
                effective_potential(couplings, &field, rho)
            }
            PotentialSpec::DipoleEtaOnly { eta, m_q } => {
                let c = Couplings::free_form(*eta, 0.0, *m_q)?;
                let field = DipoleField::far_field(1.0)?;
                effective_potential(&c, &field, rho)
            }
            PotentialSpec::Coulomb2D { kappa, m_q } => {
                if rho.is_nan() || rho <= 0.0 {
                    return Err(Error::domain("rho must be > 0"));
                }
                let m = f64::from(*m_q);
                Ok((m * m / rho - *kappa) / rho)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Spacing {
    Uniform,
    Logarithmic,
}

/// Radial grid for the discretized problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub rho_min: f64,
    pub rho_max: f64,
    /// Number of interior nodes (unknowns).
    pub n_points: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn new(rho_min: f64, rho_max: f64, n_points: usize, spacing: Spacing) -> Result<Self> {
        let g = GridSpec {
            rho_min,
            rho_max,
            n_points,
            spacing,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rho_min.is_nan() || self.rho_min <= 0.0 {
            return Err(Error::config(format!(
                "rho_min must be > 0, got {}",
                self.rho_min
            )));
        }
        if self.rho_max.is_nan() || self.rho_max <= self.rho_min {
            return Err(Error::config("rho_max must exceed rho_min"));
        }
        if self.n_points < 100 {
            return Err(Error::config(format!(
                "n_points must be >= 100, got {}",
                self.n_points
            )));
        }
        Ok(())
    }

    /// Default box for the singular-potential scans.
    pub fn dipole_default() -> Self {
        GridSpec {
            rho_min: 5e-3,
            rho_max: 40.0,
            n_points: 1500,
            spacing: Spacing::Logarithmic,
        }
    }

    /// Default box for the Coulomb validation benchmark.
    pub fn coulomb_default() -> Self {
        GridSpec {
            rho_min: 1e-2,
            rho_max: 60.0,
            n_points: 4000,
            spacing: Spacing::Logarithmic,
        }
    }
}

/// Assembled pencil A φ = ℰ B φ with Dirichlet (or regular-inner) rows.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscretizedProblem {
    pub grid: GridSpec,
    /// Interior node radii ρ_i.
    pub nodes: Vec<f64>,
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
    /// Diagonal of B (all ones on uniform grids, ρ_i² on log grids).
    pub weight: Vec<f64>,
    /// True when the inner row realizes the regular (cusp) boundary.
    pub regular_inner: bool,
}

/// Discretize the radial problem on the given grid.
pub fn discretize(spec: &PotentialSpec, grid: &GridSpec) -> Result<DiscretizedProblem> {
    grid.validate()?;
    let n = grid.n_points;
    match grid.spacing {
        Spacing::Uniform => {
            let h = (grid.rho_max - grid.rho_min) / (n as f64 + 1.0);
            let mut nodes = Vec::with_capacity(n);
            let mut diag = Vec::with_capacity(n);
            for i in 1..=n {
                let rho = grid.rho_min + h * i as f64;
                let w_eff = spec.v_eff(rho)? - 0.25 / (rho * rho);
                nodes.push(rho);
                diag.push(2.0 / (h * h) + w_eff);
            }
            Ok(DiscretizedProblem {
                grid: *grid,
                nodes,
                diag,
                off: vec![-1.0 / (h * h); n - 1],
                weight: vec![1.0; n],
                regular_inner: false,
            })
        }
        Spacing::Logarithmic => {
            let t_min = grid.rho_min.ln();
            let dt = (grid.rho_max.ln() - t_min) / (n as f64 + 1.0);
            let mut nodes = Vec::with_capacity(n);
            let mut diag = Vec::with_capacity(n);
            let mut weight = Vec::with_capacity(n);
            for i in 1..=n {
                let rho = (t_min + dt * i as f64).exp();
                // 1/4 + rho^2 (V - 1/(4 rho^2)) = rho^2 V exactly
                nodes.push(rho);
                diag.push(2.0 / (dt * dt) + rho * rho * spec.v_eff(rho)?);
                weight.push(rho * rho);
            }
            let mut regular_inner = false;
            if let PotentialSpec::Coulomb2D { kappa, m_q } = spec {
                // regular-solution log-derivative at the inner edge
                let m_abs = f64::from(m_q.unsigned_abs());
                let slope = m_abs - kappa * grid.rho_min / (2.0 * m_abs + 1.0);
                diag[0] =
                    (1.0 + dt * slope) / (dt * dt) + nodes[0] * nodes[0] * spec.v_eff(nodes[0])?;
                regular_inner = true;
            }
            Ok(DiscretizedProblem {
                grid: *grid,
                nodes,
                diag,
                off: vec![-1.0 / (dt * dt); n - 1],
                weight,
                regular_inner,
            })
        }
    }
}

/// Exact count of eigenvalues below −threshold.
pub fn count_negative_eigenvalues(problem: &DiscretizedProblem, threshold: f64) -> usize {
    pencil_count_below(&problem.diag, &problem.off, &problem.weight, -threshold)
}

/// Smallest eigenvalue of the discretized problem.
pub fn lowest_eigenvalue(problem: &DiscretizedProblem) -> f64 {
    pencil_eigenvalue(&problem.diag, &problem.off, &problem.weight, 0)
}

/// k-th smallest eigenvalue (k = 0 is the lowest).
pub fn kth_eigenvalue(problem: &DiscretizedProblem, k: usize) -> f64 {
    pencil_eigenvalue(&problem.diag, &problem.off, &problem.weight, k)
}

const RESCALE_LIMIT: f64 = 1e150;

/// Two-sided shooting mismatch at energy ℰ < 0.
///
/// Propagates the discrete rows outward from the inner boundary and inward
/// from the outer wall, and returns the normalized cross-determinant of the
/// two solutions at the middle node. Zeros coincide with eigenvalues of the
/// assembled pencil; the function is sign-definite on any interval free of
/// them. Overflow is handled by rescaling (the recurrence is linear).
pub fn shoot(spec: &PotentialSpec, grid: &GridSpec, curly_e: f64) -> Result<f64> {
    if curly_e.is_nan() || curly_e >= 0.0 {
        return Err(Error::domain(format!(
            "shoot searches bound states and requires curly_e < 0, got {curly_e}"
        )));
    }
    let problem = discretize(spec, grid)?;
    Ok(shoot_mismatch(&problem, curly_e))
}

/// Mismatch for an already-assembled problem.
pub fn shoot_mismatch(problem: &DiscretizedProblem, curly_e: f64) -> f64 {
    let (a, e, w) = (&problem.diag, &problem.off, &problem.weight);
    let n = a.len();
    let mid = n / 2;
    // outward sweep: row i gives psi_{i+1} from psi_i, psi_{i-1}
    let (mut lo, mut l1) = (0.0f64, 1.0f64); // psi_{-1} (ghost), psi_0
    for i in 0..=mid {
        let sub = if i > 0 { e[i - 1] * lo } else { 0.0 };
        let next = -((a[i] - curly_e * w[i]) * l1 + sub) / e[i];
        lo = l1;
        l1 = next;
        let m = lo.abs().max(l1.abs());
        if m > RESCALE_LIMIT {
            lo /= m;
            l1 /= m;
        }
    }
    // inward sweep from the outer Dirichlet ghost
    let (mut r1, mut ro) = (1.0f64, 0.0f64); // psi_{n-1}, psi_n (ghost)
    for i in (mid + 1..n).rev() {
        let sup = if i < n - 1 { e[i] * ro } else { 0.0 };
        let prev = -((a[i] - curly_e * w[i]) * r1 + sup) / e[i - 1];
        ro = r1;
        r1 = prev;
        let m = ro.abs().max(r1.abs());
        if m > RESCALE_LIMIT {
            ro /= m;
            r1 /= m;
        }
    }
    // left pair (psi_mid, psi_mid+1) = (lo, l1); right pair = (r1, ro);
    // normalize each pair separately so the scale product cannot overflow
    let left_norm = f64::hypot(lo, l1);
    let right_norm = f64::hypot(ro, r1);
    (l1 / left_norm) * (r1 / right_norm) - (lo / left_norm) * (ro / right_norm)
}

/// One point of a cutoff-refinement trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CutoffPoint {
    pub rho_min: f64,
    pub n_points: usize,
    pub lowest: f64,
    /// Eigenvalues below −1e−10 at this cutoff.
    pub negative_count: usize,
}

/// Result of shrinking the inner cutoff at fixed grid spacing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub trace: Vec<CutoffPoint>,
    pub converged: bool,
    /// |Δℰ| of the final two refinements.
    pub last_deltas: [f64; 2],
    pub tolerance: f64,
}

/// Cauchy tolerance of the cutoff scan: |Δ| < 1e-6·max(1, |ℰ|).
pub const CUTOFF_CAUCHY_TOL: f64 = 1e-6;

/// Derive a grid with the same spacing as `base` but a new inner cutoff.
pub fn grid_at_cutoff(base: &GridSpec, cutoff: f64) -> Result<GridSpec> {
    let n = match base.spacing {
        Spacing::Logarithmic => {
            let dt = (base.rho_max.ln() - base.rho_min.ln()) / (base.n_points as f64 + 1.0);
            ((base.rho_max.ln() - cutoff.ln()) / dt).round() as i64 - 1
        }
        Spacing::Uniform => {
            let h = (base.rho_max - base.rho_min) / (base.n_points as f64 + 1.0);
            ((base.rho_max - cutoff) / h).round() as i64 - 1
        }
    };
    if n < 100 {
        return Err(Error::config(format!(
            "cutoff {cutoff} leaves only {n} nodes at the base spacing"
        )));
    }
    GridSpec::new(cutoff, base.rho_max, n as usize, base.spacing)
}

/// Track the lowest eigenvalue as the inner cutoff shrinks.
///
/// The spacing is held fixed (node count grows) so successive values differ
/// only through the cutoff itself. `converged` requires the last two deltas
/// to satisfy the Cauchy criterion; a singular attractive tail instead sends
/// the lowest eigenvalue to −∞ and fails it.
pub fn cutoff_convergence_scan(
    spec: &PotentialSpec,
    base: &GridSpec,
    cutoffs: &[f64],
) -> Result<ConvergenceReport> {
    if cutoffs.len() < 4 {
        return Err(Error::domain("cutoff scan needs at least 4 cutoffs"));
    }
    for pair in cutoffs.windows(2) {
        if pair[1].is_nan() || pair[1] >= pair[0] {
            return Err(Error::domain("cutoffs must be strictly descending"));
        }
    }
    if cutoffs[0].is_nan() || cutoffs[0] <= 0.0 || cutoffs[0] >= base.rho_max {
        return Err(Error::domain("cutoffs must lie in (0, rho_max)"));
    }
    let mut trace = Vec::with_capacity(cutoffs.len());
    for &cutoff in cutoffs {
        let grid = grid_at_cutoff(base, cutoff)?;
        let problem = discretize(spec, &grid)?;
        trace.push(CutoffPoint {
            rho_min: cutoff,
            n_points: grid.n_points,
            lowest: lowest_eigenvalue(&problem),
            negative_count: count_negative_eigenvalues(&problem, NEGATIVE_THRESHOLD),
        });
    }
    let k = trace.len();
    let d1 = (trace[k - 2].lowest - trace[k - 3].lowest).abs();
    let d2 = (trace[k - 1].lowest - trace[k - 2].lowest).abs();
    let tolerance = CUTOFF_CAUCHY_TOL * trace[k - 1].lowest.abs().max(1.0);
    Ok(ConvergenceReport {
        trace,
        converged: d1 < tolerance && d2 < tolerance,
        last_deltas: [d1, d2],
        tolerance,
    })
}

/// Closed-form validation of the eigensolver against the 2D Coulomb problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoulombBenchmark {
    pub kappa: f64,
    pub m_q: i32,
    pub n_r: usize,
    pub numeric: f64,
    pub analytic: f64,
    pub rel_error: f64,
}

/// Analytic 2D Coulomb level: ℰ = −κ²/(2n_r + 2|m| + 1)².
pub fn coulomb_analytic(kappa: f64, m_q: i32, n_r: usize) -> f64 {
    let d = 2.0 * n_r as f64 + 2.0 * f64::from(m_q.unsigned_abs()) + 1.0;
    -(kappa * kappa) / (d * d)
}

/// Compare the n_r-th numeric eigenvalue with the closed form.
pub fn coulomb_benchmark(
    kappa: f64,
    m_q: i32,
    n_r: usize,
    grid: &GridSpec,
) -> Result<CoulombBenchmark> {
    let spec = PotentialSpec::Coulomb2D { kappa, m_q };
    let problem = discretize(&spec, grid)?;
    let numeric = kth_eigenvalue(&problem, n_r);
    let analytic = coulomb_analytic(kappa, m_q, n_r);
    Ok(CoulombBenchmark {
        kappa,
        m_q,
        n_r,
        numeric,
        analytic,
        rel_error: (numeric - analytic).abs() / analytic.abs(),
    })
}

/// Max over grid nodes of |V_eff − (m/ρ − g/ρ²)²| / max(1, V_eff).
///
/// Checks the perfect-square identity along the far-field route (η, σ)
/// against the direct square route (g); only physical couplings have a g.
pub fn perfect_square_residual(couplings: &Couplings, m_q: i32, grid: &GridSpec) -> Result<f64> {
    if !couplings.physical {
        return Err(Error::contract(
            "perfect_square_residual requires physical couplings; use the eta-only model for free-form ones",
        ));
    }
    if couplings.m_q != m_q {
        return Err(Error::contract(format!(
            "m_q mismatch: couplings carry {}, caller passed {m_q}",
            couplings.m_q
        )));
    }
    grid.validate()?;
    let g = couplings.g.expect("physical couplings carry g");
    let field = DipoleField::far_field(1.0)?;
    let m = f64::from(m_q);
    let spec = PotentialSpec::DipoleFarField {
        couplings: *couplings,
    };
    let problem = discretize(&spec, grid)?;
    let mut worst = 0.0f64;
    for &rho in &problem.nodes {
        let v = effective_potential(couplings, &field, rho)?;
        let d = m / rho - g / (rho * rho);
        let square = d * d;
        let rel = (v - square).abs() / v.max(1.0);
        worst = worst.max(rel);
    }
    Ok(worst)
}

/// Aggregate scan outcome for a single potential over a cutoff refinement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenScanResult {
    pub grid: GridSpec,
    /// Count of eigenvalues below −1e−10 at the base grid.
    pub negative_count: usize,
    pub lowest_eigenvalues: Vec<f64>,
    pub converged: bool,
    pub cutoff_trace: Vec<CutoffPoint>,
}

/// Threshold below which an eigenvalue counts as negative in scans.
pub const NEGATIVE_THRESHOLD: f64 = 1e-10;

/// Cutoff ladder on which the Coulomb ground state passes the Cauchy
/// criterion (its cutoff dependence is polynomially small only once the
/// cutoff is well inside the wavefunction's flat region).
pub const COULOMB_SCAN_CUTOFFS: [f64; 4] = [1e-3, 1e-4, 5e-5, 2.5e-5];

/// Run counts, lowest levels, and the cutoff scan for one potential.
pub fn eigen_scan(
    spec: &PotentialSpec,
    base: &GridSpec,
    cutoffs: &[f64],
    k_lowest: usize,
) -> Result<EigenScanResult> {
    let problem = discretize(spec, base)?;
    let negative_count = count_negative_eigenvalues(&problem, NEGATIVE_THRESHOLD);
    let lowest_eigenvalues = (0..k_lowest).map(|k| kth_eigenvalue(&problem, k)).collect();
    let report = cutoff_convergence_scan(spec, base, cutoffs)?;
    Ok(EigenScanResult {
        grid: *base,
        negative_count,
        lowest_eigenvalues,
        converged: report.converged,
        cutoff_trace: report.trace,
    })
}

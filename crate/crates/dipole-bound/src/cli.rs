//! Command-line frontend.
//!
//! Exit codes: 0 success, 1 domain/config error (diagnostic on stderr),
//! 2 usage error. Output is deterministic: identical argv and config give
//! byte-identical bytes.

use std::collections::BTreeMap;
use std::io::{IsTerminal, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::constants::{
    load_constants, reference_leptons, ConfigFile, ExperimentalLeptons, PhysicalConstants,
};
use crate::error::{Error, Result};
use crate::frobenius::{
    generate_coefficients, no_bound_state_report, terminate_case_a, terminate_case_b,
    terminate_case_c, Closure, ScanSpec, SeriesParams,
};
use crate::oracle::{discretize, eigen_scan, shoot_mismatch, GridSpec, PotentialSpec, Spacing};
use crate::potential::couplings_from_field;
use crate::report::{
    fmt_sig, mass_spectrum_csv, mass_spectrum_text, mismatch_csv, scan_csv, scan_rows, series_csv,
    termination_text, ScanRow,
};
use crate::spectra::{spectrum_report, FormulaId, MassSpectrum};
use crate::validate::{run_battery, Check, SCAN_CUTOFFS, SCAN_G, SCAN_M, SCAN_RING_RADIUS};

/// Environment variable naming a default config file.
pub const CONFIG_ENV_VAR: &str = "DIPOLE_BOUND_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormulaArg {
    Barut,
    BinomialSum,
    BinomialPower,
    DoubleBinomial,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PotentialArg {
    /// Physical dipole, far-field form.
    Far,
    /// Physical dipole with finite ring radius.
    Ring,
    /// Attractive 1/rho^3 model with the 1/rho^4 term dropped.
    EtaOnly,
    /// Coulomb validation problem with a closed-form spectrum.
    Coulomb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CaseArg {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClosureArg {
    /// Forward chain of the case-C closure (sigma = 0 only).
    Forward,
    /// Banded solve of the hard-truncated recurrence.
    Truncated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpacingArg {
    Uniform,
    Log,
}

#[derive(Debug, Parser)]
#[command(
    name = "dipole-bound",
    version,
    about = "Bound-state analysis for a charged scalar in a magnetic dipole field, plus lepton mass-spectrum evaluators",
    long_about = "Series termination analysis and an independent numerical spectral check for a \
charged scalar particle in a magnetic dipole field, together with evaluators for Barut's \
lepton mass formula and three modified spectra compared against experimental mass ratios."
)]
struct Cli {
    /// Override the inverse fine-structure constant.
    #[arg(long, global = true, value_name = "X")]
    alpha_inv: Option<f64>,
    /// Override the electron mass in MeV.
    #[arg(long, global = true, value_name = "MEV")]
    me_mev: Option<f64>,
    /// Config file with constants overrides (TOML).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output format; defaults to text on a terminal, csv otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Evaluate lepton mass spectra against experimental ratios.
    Masses {
        #[arg(long, value_enum, default_value = "all")]
        formula: FormulaArg,
        /// Highest generation index to tabulate.
        #[arg(long, default_value_t = 3)]
        max_n: u32,
    },
    /// Generate radial series coefficients and their recurrence residuals.
    Series {
        #[command(flatten)]
        series: SeriesOpts,
    },
    /// Run one termination analysis (case a, b, or c) at a single order.
    Terminate {
        #[arg(long, value_enum)]
        case: CaseArg,
        /// Indicial exponent.
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        s: f64,
        /// Azimuthal quantum number.
        #[arg(long, allow_negative_numbers = true)]
        m: i32,
        /// Series order nu.
        #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
        nu: i64,
        #[arg(long, allow_negative_numbers = true)]
        eta: f64,
        /// Decay rate beta (case c chain).
        #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
        beta: f64,
        /// Reference coefficient b_nu (case c chain).
        #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
        b_nu: f64,
    },
    /// Discretize a radial potential and scan its spectrum.
    Spectrum {
        #[command(flatten)]
        spectrum: SpectrumOpts,
    },
    /// Run the full validation battery; exit 0 only if every check passes.
    Validate,
    /// Emit the standard report set (mass spectra, eigen scan, termination sweep).
    Report,
}

#[derive(Debug, Args)]
struct SeriesOpts {
    /// Azimuthal quantum number.
    #[arg(long, allow_negative_numbers = true)]
    m: i32,
    #[arg(long, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long, allow_negative_numbers = true)]
    eta: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    sigma: f64,
    /// Indicial exponent.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    s: f64,
    #[arg(long, default_value_t = 60)]
    nu_max: usize,
    #[arg(long, value_enum, default_value = "truncated")]
    closure: ClosureArg,
    /// Normalization coefficient b_0.
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    b0: f64,
}

#[derive(Debug, Args)]
struct SpectrumOpts {
    #[arg(long, value_enum)]
    potential: PotentialArg,
    /// Field coupling g = e*lambda/hbar (far/ring potentials).
    #[arg(long, allow_negative_numbers = true)]
    g: Option<f64>,
    /// Free-form eta (eta-only potential).
    #[arg(long, allow_negative_numbers = true)]
    eta: Option<f64>,
    /// Coulomb strength kappa.
    #[arg(long, allow_negative_numbers = true)]
    kappa: Option<f64>,
    /// Azimuthal quantum number.
    #[arg(long, allow_negative_numbers = true)]
    m: i32,
    /// Ring radius for the ring potential.
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long)]
    rho_min: Option<f64>,
    #[arg(long)]
    rho_max: Option<f64>,
    #[arg(long)]
    n_points: Option<usize>,
    #[arg(long, value_enum)]
    spacing: Option<SpacingArg>,
    /// Descending inner cutoffs for the refinement scan.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    cutoffs: Option<Vec<f64>>,
    /// How many lowest eigenvalues to report.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Emit a shooting-mismatch curve over the bound-state box instead of
    /// the eigen scan.
    #[arg(long, default_value_t = false)]
    mismatch: bool,
    /// Number of energy samples for the mismatch curve.
    #[arg(long, default_value_t = 200)]
    mismatch_points: usize,
}

/// Bound-state search box in units of (mc/hbar)^2; states below it are out
/// of scope and reports say so.
pub const ENERGY_BOX: (f64, f64) = (-25.0, -1e-6);

fn resolve_settings(cli: &Cli) -> Result<(PhysicalConstants, ExperimentalLeptons)> {
    let config = match &cli.config {
        Some(path) => Some(ConfigFile::load(path)?),
        None => match std::env::var_os(CONFIG_ENV_VAR) {
            Some(path) => Some(ConfigFile::load(std::path::Path::new(&path))?),
            None => None,
        },
    };
    let (mut cmap, lmap): (BTreeMap<String, f64>, _) =
        config.map(ConfigFile::into_overrides).unwrap_or_default();
    if let Some(a) = cli.alpha_inv {
        cmap.insert("alpha_inverse".into(), a);
    }
    if let Some(me) = cli.me_mev {
        cmap.insert("electron_mass_mev".into(), me);
    }
    Ok((load_constants(&cmap)?, reference_leptons(&lmap)?))
}

fn formulas_of(arg: FormulaArg) -> Vec<FormulaId> {
    match arg {
        FormulaArg::Barut => vec![FormulaId::Barut],
        FormulaArg::BinomialSum => vec![FormulaId::BinomialSum],
        FormulaArg::BinomialPower => vec![FormulaId::BinomialPower],
        FormulaArg::DoubleBinomial => vec![FormulaId::DoubleBinomial],
        FormulaArg::All => FormulaId::ALL.to_vec(),
    }
}

fn build_potential(opts: &SpectrumOpts) -> Result<PotentialSpec> {
    match opts.potential {
        PotentialArg::Far => {
            let g = opts
                .g
                .ok_or_else(|| Error::config("--g is required for --potential far"))?;
            Ok(PotentialSpec::DipoleFarField {
                couplings: couplings_from_field(g, opts.m)?,
            })
        }
        PotentialArg::Ring => {
            let g = opts
                .g
                .ok_or_else(|| Error::config("--g is required for --potential ring"))?;
            Ok(PotentialSpec::DipoleFullRing {
                couplings: couplings_from_field(g, opts.m)?,
                ring_radius_a: opts.a,
            })
        }
        PotentialArg::EtaOnly => {
            let eta = opts
                .eta
                .ok_or_else(|| Error::config("--eta is required for --potential eta-only"))?;
            Ok(PotentialSpec::DipoleEtaOnly { eta, m_q: opts.m })
        }
        PotentialArg::Coulomb => {
            let kappa = opts
                .kappa
                .ok_or_else(|| Error::config("--kappa is required for --potential coulomb"))?;
            Ok(PotentialSpec::Coulomb2D { kappa, m_q: opts.m })
        }
    }
}

fn build_grid(opts: &SpectrumOpts) -> Result<GridSpec> {
    let default = match opts.potential {
        PotentialArg::Coulomb => GridSpec::coulomb_default(),
        _ => GridSpec::dipole_default(),
    };
    GridSpec::new(
        opts.rho_min.unwrap_or(default.rho_min),
        opts.rho_max.unwrap_or(default.rho_max),
        opts.n_points.unwrap_or(default.n_points),
        match opts.spacing {
            Some(SpacingArg::Uniform) => Spacing::Uniform,
            Some(SpacingArg::Log) => Spacing::Logarithmic,
            None => default.spacing,
        },
    )
}

fn emit_masses(out: &mut dyn Write, spectra: &[MassSpectrum], format: Format) -> Result<()> {
    match format {
        Format::Csv => mass_spectrum_csv(out, spectra),
        Format::Text => mass_spectrum_text(out, spectra),
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, spectra)
                .map_err(|e| Error::config(format!("json: {e}")))?;
            writeln!(out)?;
            Ok(())
        }
    }
}

fn emit_checks(out: &mut dyn Write, checks: &[Check], format: Format) -> Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "check,passed,detail")?;
            for c in checks {
                writeln!(
                    out,
                    "{},{},\"{}\"",
                    c.name,
                    c.passed,
                    c.detail.replace('"', "\"\"")
                )?;
            }
        }
        Format::Text => {
            for c in checks {
                writeln!(
                    out,
                    "{} {} - {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                )?;
            }
            let passed = checks.iter().filter(|c| c.passed).count();
            writeln!(out, "{passed}/{} checks passed", checks.len())?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, checks)
                .map_err(|e| Error::config(format!("json: {e}")))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn standard_scan_rows() -> Result<Vec<ScanRow>> {
    let base = GridSpec::dipole_default();
    let mut rows = Vec::new();
    for &g in &SCAN_G {
        for &m_q in &SCAN_M {
            let couplings = couplings_from_field(g, m_q)?;
            let far = PotentialSpec::DipoleFarField { couplings };
            let ring = PotentialSpec::DipoleFullRing {
                couplings,
                ring_radius_a: SCAN_RING_RADIUS,
            };
            for spec in [far, ring] {
                let scan = eigen_scan(&spec, &base, &SCAN_CUTOFFS, 1)?;
                rows.extend(scan_rows(g, m_q, spec.label(), &scan));
            }
        }
    }
    Ok(rows)
}

fn run_command(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let format = cli.format.unwrap_or_else(|| {
        if cli.out.is_none() && std::io::stdout().is_terminal() {
            Format::Text
        } else {
            Format::Csv
        }
    });
    let (constants, reference) = resolve_settings(cli)?;
    match &cli.cmd {
        Cmd::Masses { formula, max_n } => {
            let spectra: Vec<MassSpectrum> = formulas_of(*formula)
                .into_iter()
                .map(|f| spectrum_report(f, &constants, &reference, *max_n))
                .collect();
            emit_masses(out, &spectra, format)
        }
        Cmd::Series { series } => {
            let params = SeriesParams {
                s: series.s,
                m_q: series.m,
                beta: series.beta,
                eta: series.eta,
                sigma: series.sigma,
                nu_max: series.nu_max,
            };
            let closure = match series.closure {
                ClosureArg::Forward => Closure::CaseCForward,
                ClosureArg::Truncated => Closure::TruncatedLinearSystem,
            };
            let solution = generate_coefficients(&params, closure, series.b0)?;
            match format {
                Format::Csv => series_csv(out, &solution),
                Format::Json => {
                    serde_json::to_writer_pretty(&mut *out, &solution)
                        .map_err(|e| Error::config(format!("json: {e}")))?;
                    writeln!(out)?;
                    Ok(())
                }
                Format::Text => {
                    writeln!(
                        out,
                        "series: growth = {:?}, {} coefficients",
                        solution.growth,
                        solution.coefficients.len()
                    )?;
                    let max_res = solution
                        .residuals
                        .iter()
                        .filter(|r| r.order >= 0 && (r.order as usize) < params.nu_max)
                        .fold(0.0f64, |m, r| m.max(r.value.abs()));
                    writeln!(out, "max interior residual: {}", fmt_sig(max_res, 12))?;
                    for (nu, b) in solution.coefficients.iter().take(8).enumerate() {
                        writeln!(out, "  b_{nu} = {}", fmt_sig(*b, 12))?;
                    }
                    Ok(())
                }
            }
        }
        Cmd::Terminate {
            case,
            s,
            m,
            nu,
            eta,
            beta,
            b_nu,
        } => {
            let (verdict, chain) = match case {
                CaseArg::A => (terminate_case_a(*s, *m, *nu, *eta), None),
                CaseArg::B => (terminate_case_b(*s, *m, *nu, *eta)?, None),
                CaseArg::C => {
                    let chain = terminate_case_c(*s, *m, *nu, *eta, *beta, *b_nu)?;
                    (chain.verdict, Some((chain.b_next, chain.b_next2)))
                }
            };
            match format {
                Format::Json => {
                    serde_json::to_writer_pretty(&mut *out, &verdict)
                        .map_err(|e| Error::config(format!("json: {e}")))?;
                    writeln!(out)?;
                }
                Format::Csv => {
                    writeln!(
                        out,
                        "case,s,m_q,nu,eta,required_beta,bound_state_possible,explanation,flagged"
                    )?;
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{},{},{}",
                        verdict.case_label,
                        fmt_sig(*s, 12),
                        m,
                        nu,
                        fmt_sig(*eta, 12),
                        verdict
                            .required_beta
                            .map(|b| fmt_sig(b, 12))
                            .unwrap_or_default(),
                        verdict.bound_state_possible,
                        verdict.explanation,
                        verdict.flagged,
                    )?;
                }
                Format::Text => {
                    let beta_text = verdict
                        .required_beta
                        .map(|b| fmt_sig(b, 12))
                        .unwrap_or_else(|| "undetermined".into());
                    let bound = if verdict.bound_state_possible {
                        "bound possible"
                    } else {
                        "not bound"
                    };
                    writeln!(out, "beta = {beta_text}, {bound} [{}]", verdict.explanation)?;
                    if let Some((b1, b2)) = chain {
                        writeln!(
                            out,
                            "b_(nu+1) = {}, b_(nu+2) = {}",
                            fmt_sig(b1, 12),
                            fmt_sig(b2, 12)
                        )?;
                    }
                }
            }
            Ok(())
        }
        Cmd::Spectrum { spectrum } => {
            let spec = build_potential(spectrum)?;
            let grid = build_grid(spectrum)?;
            if spectrum.mismatch {
                if spectrum.mismatch_points < 2 {
                    return Err(Error::config("--mismatch-points must be >= 2"));
                }
                let problem = discretize(&spec, &grid)?;
                let (lo, hi) = ENERGY_BOX;
                let n = spectrum.mismatch_points;
                let curve: Vec<(f64, f64)> = (0..n)
                    .map(|i| {
                        let e = lo + (hi - lo) * i as f64 / (n as f64 - 1.0);
                        (e, shoot_mismatch(&problem, e))
                    })
                    .collect();
                return match format {
                    Format::Json => {
                        serde_json::to_writer_pretty(&mut *out, &curve)
                            .map_err(|e| Error::config(format!("json: {e}")))?;
                        writeln!(out)?;
                        Ok(())
                    }
                    _ => mismatch_csv(out, &curve),
                };
            }
            let cutoffs = spectrum
                .cutoffs
                .clone()
                .unwrap_or_else(|| match spectrum.potential {
                    PotentialArg::Coulomb => crate::oracle::COULOMB_SCAN_CUTOFFS.to_vec(),
                    _ => SCAN_CUTOFFS.to_vec(),
                });
            let scan = eigen_scan(&spec, &grid, &cutoffs, spectrum.k)?;
            match format {
                Format::Json => {
                    serde_json::to_writer_pretty(&mut *out, &scan)
                        .map_err(|e| Error::config(format!("json: {e}")))?;
                    writeln!(out)?;
                    Ok(())
                }
                Format::Csv => {
                    let g = spectrum.g.unwrap_or(0.0);
                    scan_csv(out, &scan_rows(g, spectrum.m, spec.label(), &scan))
                }
                Format::Text => {
                    writeln!(
                        out,
                        "potential {} (m_q = {}): negative count = {}, converged = {}",
                        spec.label(),
                        spectrum.m,
                        scan.negative_count,
                        scan.converged
                    )?;
                    writeln!(
                        out,
                        "search box: curly_e in [{}, {}]; states below it are out of scope",
                        fmt_sig(ENERGY_BOX.0, 12),
                        fmt_sig(ENERGY_BOX.1, 12)
                    )?;
                    for (k, e) in scan.lowest_eigenvalues.iter().enumerate() {
                        writeln!(out, "  E_{k} = {}", fmt_sig(*e, 12))?;
                    }
                    for p in &scan.cutoff_trace {
                        writeln!(
                            out,
                            "  cutoff {}: n = {}, lowest = {}",
                            fmt_sig(p.rho_min, 12),
                            p.n_points,
                            fmt_sig(p.lowest, 12)
                        )?;
                    }
                    Ok(())
                }
            }
        }
        Cmd::Validate => {
            let checks = run_battery(&constants, &reference);
            emit_checks(out, &checks, format)?;
            if checks.iter().any(|c| !c.passed) {
                return Err(Error::Domain("validation failed".into()));
            }
            Ok(())
        }
        Cmd::Report => {
            let spectra: Vec<MassSpectrum> = FormulaId::ALL
                .iter()
                .map(|&f| spectrum_report(f, &constants, &reference, 3))
                .collect();
            let rows = standard_scan_rows()?;
            let sweep = no_bound_state_report(1, 2.0, &ScanSpec::regular(10))?;
            match format {
                Format::Json => {
                    #[derive(serde::Serialize)]
                    struct FullReport<'a> {
                        alpha_inverse_used: f64,
                        mass_spectra: &'a [MassSpectrum],
                        eigen_scan: &'a [ScanRow],
                        termination_sweep: &'a crate::frobenius::NoBoundStateReport,
                    }
                    let doc = FullReport {
                        alpha_inverse_used: constants.alpha_inverse,
                        mass_spectra: &spectra,
                        eigen_scan: &rows,
                        termination_sweep: &sweep,
                    };
                    serde_json::to_writer_pretty(&mut *out, &doc)
                        .map_err(|e| Error::config(format!("json: {e}")))?;
                    writeln!(out)?;
                }
                Format::Csv => {
                    mass_spectrum_csv(out, &spectra)?;
                    writeln!(out)?;
                    scan_csv(out, &rows)?;
                }
                Format::Text => {
                    writeln!(
                        out,
                        "alpha_inverse used: {}",
                        fmt_sig(constants.alpha_inverse, 12)
                    )?;
                    mass_spectrum_text(out, &spectra)?;
                    writeln!(out)?;
                    let no_bound = rows.iter().all(|r| r.negative_count == 0);
                    writeln!(
                        out,
                        "eigen scan over g x m_q x form x cutoff: no bound state = {no_bound}"
                    )?;
                    termination_text(out, &sweep)?;
                }
            }
            Ok(())
        }
    }
}

/// Parse argv and run. Writes results to `out`, diagnostics to `err`.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };
    let result = match &cli.out {
        Some(path) => {
            let mut file = match std::fs::File::create(path) {
                Ok(f) => f,
                Err(e) => {
                    let _ = writeln!(err, "error: cannot open {}: {e}", path.display());
                    return 1;
                }
            };
            run_command(&cli, &mut file)
        }
        None => run_command(&cli, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("dipole-bound".to_string())
            .chain(args.iter().map(|s| s.to_string()))
            .collect();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn masses_barut_table() {
        let (code, out, err) = run_args(&[
            "--format",
            "csv",
            "masses",
            "--formula",
            "barut",
            "--max-n",
            "3",
        ]);
        assert_eq!(code, 0, "stderr: {err}");
        assert!(out.contains("barut,1,mu,206.5539985,"));
        assert!(out.contains("barut,2,tau,3495.4179745,"));
        assert!(out.contains("barut,3,f,20145.291853,"), "{out}");
    }

    #[test]
    fn terminate_case_b_text() {
        let (code, out, _) = run_args(&[
            "--format",
            "text",
            "terminate",
            "--case",
            "b",
            "--s",
            "0",
            "--m",
            "1",
            "--nu",
            "0",
            "--eta",
            "1",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("beta = -4.8, not bound"), "{out}");
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        let (code, _, err) = run_args(&["masses", "--no-such-flag"]);
        assert_eq!(code, 2);
        assert!(!err.is_empty());
    }

    #[test]
    fn bad_domain_input_is_exit_one() {
        let (code, _, err) = run_args(&[
            "--format",
            "csv",
            "terminate",
            "--case",
            "b",
            "--m",
            "1",
            "--eta",
            "0",
        ]);
        assert_eq!(code, 1);
        assert!(err.contains("eta"), "{err}");
    }

    #[test]
    fn alpha_override_flows_through() {
        let (code, out, _) = run_args(&[
            "--format",
            "csv",
            "--alpha-inv",
            "137.0",
            "masses",
            "--formula",
            "barut",
            "--max-n",
            "1",
        ]);
        assert_eq!(code, 0);
        // 1 + 1.5*137 = 206.5
        assert!(out.contains("barut,1,mu,206.5,"), "{out}");
    }

    #[test]
    fn series_csv_has_low_order_rows() {
        let (code, out, _) = run_args(&[
            "--format", "csv", "series", "--m", "1", "--beta", "1", "--eta", "1", "--nu-max", "12",
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("nu,b_nu,residual"));
        assert!(out.contains("\n-3,,"));
        assert!(out.contains("\n-2,,"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("Usage"));
    }

    #[test]
    fn spectrum_far_field_scan() {
        let (code, out, err) = run_args(&[
            "--format",
            "csv",
            "spectrum",
            "--potential",
            "far",
            "--g",
            "1",
            "--m",
            "1",
            "--n-points",
            "300",
        ]);
        assert_eq!(code, 0, "stderr: {err}");
        assert!(out.starts_with("g,m_q,form,rho_min,n_points,negative_count,lowest_e,converged"));
        for line in out.lines().skip(1) {
            assert!(line.contains(",0,"), "negative_count must be 0: {line}");
        }
    }

    #[test]
    fn deterministic_output() {
        let args = ["--format", "csv", "masses", "--formula", "all"];
        let (c1, o1, _) = run_args(&args);
        let (c2, o2, _) = run_args(&args);
        assert_eq!(c1, 0);
        assert_eq!(c1, c2);
        assert_eq!(o1, o2);
    }

    #[test]
    fn config_file_and_flag_precedence() {
        let dir = std::env::temp_dir().join(format!("dipole-bound-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("constants.toml");
        std::fs::write(&path, "alpha_inverse = 137.0\n").unwrap();
        let path_str = path.to_str().unwrap();
        let (code, out, _) = run_args(&[
            "--format",
            "csv",
            "--config",
            path_str,
            "masses",
            "--formula",
            "barut",
            "--max-n",
            "1",
        ]);
        assert_eq!(code, 0);
        assert!(
            out.contains("barut,1,mu,206.5,"),
            "config alpha should apply: {out}"
        );
        // explicit flag beats the file
        let (code, out, _) = run_args(&[
            "--format",
            "csv",
            "--config",
            path_str,
            "--alpha-inv",
            "137.035999",
            "masses",
            "--formula",
            "barut",
            "--max-n",
            "1",
        ]);
        assert_eq!(code, 0);
        assert!(
            out.contains("barut,1,mu,206.5539985,"),
            "flag must override file: {out}"
        );
        std::fs::remove_file(&path).ok();
    }
}

//! Deterministic CSV/JSON emission.
//!
//! All floating-point output goes through [`fmt_sig`] (12 significant
//! digits, %g-style), so identical inputs produce byte-identical reports.

use std::io::Write;

use serde::Serializer;

use crate::error::Result;
use crate::frobenius::{NoBoundStateReport, SeriesSolution};
use crate::oracle::EigenScanResult;
use crate::spectra::{GenerationCount, MassSpectrum};

/// Significant digits used in CSV output.
pub const CSV_SIG_DIGITS: usize = 12;

/// Format with the given number of significant digits, C `%g` style:
/// fixed notation for moderate exponents, scientific otherwise, trailing
/// zeros trimmed. Pure function of the bit pattern.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let e_repr = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = e_repr.split_once('e').expect("exponential form");
    let exp: i32 = exp.parse().expect("exponent");
    let neg = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let sign = if neg { "-" } else { "" };
    if exp < -4 || exp >= sig as i32 {
        // scientific: d.ddde<exp>
        let (head, tail) = digits.split_at(1);
        if tail.is_empty() {
            return format!("{sign}{head}e{exp}");
        }
        return format!("{sign}{head}.{tail}e{exp}");
    }
    if exp >= 0 {
        let point = exp as usize + 1;
        if (digits.len() as i32) <= exp + 1 {
            let zeros = "0".repeat(point - digits.len());
            format!("{sign}{digits}{zeros}")
        } else {
            let (int_part, frac) = digits.split_at(point);
            format!("{sign}{int_part}.{frac}")
        }
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        format!("{sign}0.{zeros}{digits}")
    }
}

/// Serialize a coefficient list as decimal strings with 17 significant
/// digits (enough to reproduce every f64 bit pattern).
pub fn serialize_coefficients<S: Serializer>(
    v: &[f64],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| format!("{x:.16e}")))
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| fmt_sig(v, CSV_SIG_DIGITS)).unwrap_or_default()
}

/// CSV for a mass spectrum:
/// `formula,n,label,ratio,mass_mev,experimental_ratio,rel_error,paper_annotation`.
pub fn mass_spectrum_csv(out: &mut dyn Write, spectra: &[MassSpectrum]) -> Result<()> {
    writeln!(
        out,
        "formula,n,label,ratio,mass_mev,experimental_ratio,rel_error,paper_annotation"
    )?;
    for s in spectra {
        for row in &s.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                s.formula.name(),
                row.n,
                row.label,
                fmt_sig(row.ratio, CSV_SIG_DIGITS),
                fmt_sig(row.mass_mev, CSV_SIG_DIGITS),
                opt(row.experimental_ratio),
                opt(row.rel_error),
                csv_quote(row.annotation.as_deref().unwrap_or("")),
            )?;
        }
    }
    Ok(())
}

/// Plain-text rendering of mass spectra.
pub fn mass_spectrum_text(out: &mut dyn Write, spectra: &[MassSpectrum]) -> Result<()> {
    for s in spectra {
        let gen = match s.generation_count {
            GenerationCount::Unbounded => "unbounded".to_string(),
            GenerationCount::Finite(n) => n.to_string(),
        };
        writeln!(
            out,
            "formula {} (alpha_inverse = {}, generations: {gen})",
            s.formula.name(),
            fmt_sig(s.alpha_inverse_used, CSV_SIG_DIGITS)
        )?;
        writeln!(
            out,
            "  {:>2} {:>5} {:>16} {:>16} {:>12}  note",
            "n", "label", "ratio", "mass_mev", "rel_error"
        )?;
        for row in &s.rows {
            writeln!(
                out,
                "  {:>2} {:>5} {:>16} {:>16} {:>12}  {}",
                row.n,
                row.label,
                fmt_sig(row.ratio, CSV_SIG_DIGITS),
                fmt_sig(row.mass_mev, CSV_SIG_DIGITS),
                opt(row.rel_error),
                row.annotation.as_deref().unwrap_or("-"),
            )?;
        }
    }
    Ok(())
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// CSV for a series solution: `nu,b_nu,residual`. Rows cover the residual
/// report range; `b_nu` is blank outside the generated 0..=nu_max window.
pub fn series_csv(out: &mut dyn Write, solution: &SeriesSolution) -> Result<()> {
    writeln!(out, "nu,b_nu,residual")?;
    for r in &solution.residuals {
        let b = if r.order >= 0 && (r.order as usize) < solution.coefficients.len() {
            fmt_sig(solution.coefficients[r.order as usize], 17)
        } else {
            String::new()
        };
        writeln!(
            out,
            "{},{},{}",
            r.order,
            b,
            fmt_sig(r.value, CSV_SIG_DIGITS)
        )?;
    }
    Ok(())
}

/// One row of the no-bound-state eigen scan CSV.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ScanRow {
    pub g: f64,
    pub m_q: i32,
    pub form: &'static str,
    pub rho_min: f64,
    pub n_points: usize,
    pub negative_count: usize,
    pub lowest_e: f64,
    pub converged: bool,
}

/// CSV header + rows:
/// `g,m_q,form,rho_min,n_points,negative_count,lowest_e,converged`.
pub fn scan_csv(out: &mut dyn Write, rows: &[ScanRow]) -> Result<()> {
    writeln!(
        out,
        "g,m_q,form,rho_min,n_points,negative_count,lowest_e,converged"
    )?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            fmt_sig(r.g, CSV_SIG_DIGITS),
            r.m_q,
            r.form,
            fmt_sig(r.rho_min, CSV_SIG_DIGITS),
            r.n_points,
            r.negative_count,
            fmt_sig(r.lowest_e, CSV_SIG_DIGITS),
            r.converged,
        )?;
    }
    Ok(())
}

/// Flatten an [`EigenScanResult`] into CSV rows for one (g, m_q, form).
pub fn scan_rows(g: f64, m_q: i32, form: &'static str, scan: &EigenScanResult) -> Vec<ScanRow> {
    scan.cutoff_trace
        .iter()
        .map(|p| ScanRow {
            g,
            m_q,
            form,
            rho_min: p.rho_min,
            n_points: p.n_points,
            negative_count: p.negative_count,
            lowest_e: p.lowest,
            converged: scan.converged,
        })
        .collect()
}

/// CSV of a shooting-mismatch curve: `curly_e,mismatch`.
pub fn mismatch_csv(out: &mut dyn Write, curve: &[(f64, f64)]) -> Result<()> {
    writeln!(out, "curly_e,mismatch")?;
    for (e, m) in curve {
        writeln!(
            out,
            "{},{}",
            fmt_sig(*e, CSV_SIG_DIGITS),
            fmt_sig(*m, CSV_SIG_DIGITS)
        )?;
    }
    Ok(())
}

/// Text rendering of a termination sweep.
pub fn termination_text(out: &mut dyn Write, report: &NoBoundStateReport) -> Result<()> {
    writeln!(
        out,
        "termination sweep: m_q = {}, eta = {}, bound_state_possible = {}",
        report.m_q,
        fmt_sig(report.eta, CSV_SIG_DIGITS),
        report.bound_state_possible
    )?;
    for e in &report.entries {
        let beta = e.verdict.required_beta.map(|b| fmt_sig(b, CSV_SIG_DIGITS));
        writeln!(
            out,
            "  case {} s={} nu={}: required_beta={} bound={} [{}]{}",
            e.case_label,
            fmt_sig(e.s, CSV_SIG_DIGITS),
            e.nu,
            beta.unwrap_or_else(|| "none".into()),
            e.verdict.bound_state_possible,
            e.verdict.explanation,
            if e.verdict.flagged { " FLAGGED" } else { "" },
        )?;
    }
    for n in &report.notes {
        writeln!(out, "  note: {n}")?;
    }
    if !report.flagged.is_empty() {
        writeln!(out, "  flagged entries: {}", report.flagged.len())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt_sig_basics() {
        assert_eq!(fmt_sig(0.0, 12), "0");
        assert_eq!(fmt_sig(1.0, 12), "1");
        assert_eq!(fmt_sig(-1.5, 12), "-1.5");
        assert_eq!(fmt_sig(0.25, 12), "0.25");
        assert_eq!(fmt_sig(206.5539985, 12), "206.5539985");
        assert_eq!(fmt_sig(1.0e-5, 12), "1e-5");
        assert_eq!(fmt_sig(1.23e15, 3), "1.23e15");
        assert_eq!(fmt_sig(999.95, 4), "1000");
        assert_eq!(fmt_sig(-4.8, 12), "-4.8");
    }

    #[test]
    fn fmt_sig_rounding_carries_exponent() {
        assert_eq!(fmt_sig(9.9999, 3), "10");
        assert_eq!(fmt_sig(0.99999999, 4), "1");
    }

    #[test]
    fn fmt_sig_is_deterministic() {
        for &x in &[1.0 / 3.0, -2.0f64.sqrt(), 3495.417975, 1e-300, 1e300] {
            assert_eq!(fmt_sig(x, 12), fmt_sig(x, 12));
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn fmt_sig_parses_back(x in proptest::num::f64::NORMAL) {
                let s = fmt_sig(x, 12);
                let back: f64 = s.parse().expect("fmt_sig output must be valid f64 text");
                prop_assert!(
                    (back - x).abs() <= 1e-11 * x.abs(),
                    "{} -> {} -> {}", x, s, back
                );
            }
        }
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_quote("plain"), "plain");
        assert_eq!(csv_quote("a,b"), "\"a,b\"");
        assert_eq!(csv_quote("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn scan_csv_header() {
        let mut buf = Vec::new();
        scan_csv(&mut buf, &[]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("g,m_q,form,rho_min,n_points,negative_count,lowest_e,converged"));
    }

    #[test]
    fn mass_csv_header_and_determinism() {
        use crate::constants::{ExperimentalLeptons, PhysicalConstants};
        use crate::spectra::{spectrum_report, FormulaId};
        let s = [spectrum_report(
            FormulaId::Barut,
            &PhysicalConstants::default(),
            &ExperimentalLeptons::default(),
            3,
        )];
        let mut a = Vec::new();
        let mut b = Vec::new();
        mass_spectrum_csv(&mut a, &s).unwrap();
        mass_spectrum_csv(&mut b, &s).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with(
            "formula,n,label,ratio,mass_mev,experimental_ratio,rel_error,paper_annotation"
        ));
        assert!(text.contains("barut,1,mu,206.5539985,"));
    }
}

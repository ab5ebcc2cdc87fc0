//! Magnetic dipole vector potential and the radial couplings it induces.
//!
//! A circular current ring of radius `a` has azimuthal vector potential
//! A_φ = λ·ρ/(ρ²+a²)^{3/2} in the plane of the ring; far from the ring
//! (a ≪ ρ) this reduces to A_φ = λ/ρ². All of e, ħ and the dipole
//! strength enter the radial problem only through the single dimensionless
//! coupling g = eλ/ħ, giving
//!
//!   η = 2·m·g,   σ = −g²,
//!
//! and the effective radial potential of the 2D Klein–Gordon problem
//!
//!   V_eff(ρ) = m²/ρ² − η/ρ³ − σ/ρ⁴ = (m/ρ − g/ρ²)²,
//!
//! a perfect square, hence non-negative for every physical coupling. The
//! spectral parameter is ℰ = E²/(ħ²c²) − (mc/ħ)² in units of (mc/ħ)², so
//! E/mc² = √(1+ℰ) and bound states would need ℰ < 0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which form of the ring potential to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PotentialForm {
    /// A_φ = λ/ρ² (ring radius negligible).
    FarField,
    /// A_φ = λ·ρ/(ρ²+a²)^{3/2} (finite ring radius).
    FullRing,
}

/// A magnetic dipole modeled as a circular current ring.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DipoleField {
    /// Dimensionless dipole strength λ (absorbs μ₀Ia²/4).
    pub lambda_strength: f64,
    /// Ring radius; ignored by the far-field form.
    pub ring_radius_a: f64,
    pub form: PotentialForm,
}

impl DipoleField {
    pub fn new(lambda_strength: f64, ring_radius_a: f64, form: PotentialForm) -> Result<Self> {
        if !lambda_strength.is_finite() {
            return Err(Error::domain("lambda_strength must be finite"));
        }
        if ring_radius_a.is_nan() || ring_radius_a < 0.0 {
            return Err(Error::domain("ring_radius_a must be >= 0"));
        }
        Ok(DipoleField {
            lambda_strength,
            ring_radius_a,
            form,
        })
    }

    pub fn far_field(lambda_strength: f64) -> Result<Self> {
        Self::new(lambda_strength, 0.0, PotentialForm::FarField)
    }
}

/// Geometric factor A_φ/λ for the given form.
fn shape(form: PotentialForm, ring_radius_a: f64, rho: f64) -> f64 {
    match form {
        PotentialForm::FarField => 1.0 / (rho * rho),
        PotentialForm::FullRing => {
            let r2 = rho * rho + ring_radius_a * ring_radius_a;
            rho / (r2 * r2.sqrt())
        }
    }
}

/// Azimuthal vector potential A_φ(ρ) in the θ = π/2 plane.
pub fn vector_potential(field: &DipoleField, rho: f64) -> Result<f64> {
    if rho.is_nan() || rho <= 0.0 {
        return Err(Error::domain(format!(
            "vector_potential requires rho > 0, got {rho}"
        )));
    }
    Ok(field.lambda_strength * shape(field.form, field.ring_radius_a, rho))
}

/// Radial couplings of the 2D Klein–Gordon equation.
///
/// `physical` records whether (η, σ) satisfy the perfect-square constraint
/// η² + 4m²σ = 0 with σ ≤ 0 that any genuine field coupling obeys;
/// free-form couplings (used for the σ-dropped model) generally do not.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Couplings {
    pub eta: f64,
    pub sigma: f64,
    /// Azimuthal quantum number m (of e^{imφ}); not the particle mass.
    pub m_q: i32,
    /// g = eλ/ħ when the couplings derive from a field, else `None`.
    pub g: Option<f64>,
    pub physical: bool,
}

impl Couplings {
    /// Free-form couplings; η and σ are independent, but σ stays ≤ 0
    /// (a field contributes −g²/ρ⁴; σ > 0 corresponds to no model here).
    pub fn free_form(eta: f64, sigma: f64, m_q: i32) -> Result<Self> {
        if !eta.is_finite() || !sigma.is_finite() {
            return Err(Error::domain("couplings must be finite"));
        }
        if sigma > 0.0 {
            return Err(Error::domain(format!("sigma must be <= 0, got {sigma}")));
        }
        let mf = f64::from(m_q);
        let physical =
            sigma <= 0.0 && eta * eta + 4.0 * mf * mf * sigma == 0.0 && (m_q != 0 || eta == 0.0);
        let g = if physical {
            Some(if m_q != 0 {
                eta / (2.0 * mf)
            } else {
                (-sigma).sqrt()
            })
        } else {
            None
        };
        Ok(Couplings {
            eta,
            sigma,
            m_q,
            g,
            physical,
        })
    }
}

/// Couplings induced by a field with g = eλ/ħ: η = 2·m·g, σ = −g².
pub fn couplings_from_field(g: f64, m_q: i32) -> Result<Couplings> {
    if !g.is_finite() {
        return Err(Error::domain("g must be finite"));
    }
    Ok(Couplings {
        eta: 2.0 * f64::from(m_q) * g,
        sigma: -(g * g),
        m_q,
        g: Some(g),
        physical: true,
    })
}

/// Effective radial potential V_eff(ρ) of the 2D problem.
///
/// Far field: m²/ρ² − η/ρ³ − σ/ρ⁴ (valid for free-form couplings too).
/// Full ring: (m/ρ − (e/ħ)A_φ(ρ))², which requires physical couplings
/// because (e/ħ)A_φ = g·A_φ/λ.
pub fn effective_potential(c: &Couplings, field: &DipoleField, rho: f64) -> Result<f64> {
    if rho.is_nan() || rho <= 0.0 {
        return Err(Error::domain(format!(
            "effective_potential requires rho > 0, got {rho}"
        )));
    }
    let m = f64::from(c.m_q);
    match field.form {
        PotentialForm::FarField => {
            let inv = 1.0 / rho;
            let inv2 = inv * inv;
            let centrifugal = m * m * inv2;
            let eta_term = c.eta * inv2 * inv;
            let sigma_term = c.sigma * inv2 * inv2;
            Ok((centrifugal - eta_term) - sigma_term)
        }
        PotentialForm::FullRing => {
            let g = c.g.ok_or_else(|| {
                Error::contract("full-ring potential requires physical couplings (known g)")
            })?;
            let gauge = g * shape(field.form, field.ring_radius_a, rho);
            let diff = m / rho - gauge;
            Ok(diff * diff)
        }
    }
}

/// Spectral parameter ℰ with β = √(−ℰ) for the non-positive branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralParameter {
    pub curly_e: f64,
    pub beta: Option<f64>,
}

impl SpectralParameter {
    pub fn new(curly_e: f64) -> Result<Self> {
        if !curly_e.is_finite() {
            return Err(Error::domain("curly_e must be finite"));
        }
        let beta = if curly_e <= 0.0 {
            Some((-curly_e).sqrt())
        } else {
            None
        };
        Ok(SpectralParameter { curly_e, beta })
    }
}

/// E/mc² = √(1+ℰ), with ℰ in units of (mc/ħ)².
pub fn energy_of(curly_e: f64) -> Result<f64> {
    if curly_e.is_nan() || curly_e < -1.0 {
        return Err(Error::domain(format!(
            "curly_e = {curly_e} < -1 has no real energy in these units"
        )));
    }
    Ok((1.0 + curly_e).sqrt())
}

/// Inverse of [`energy_of`]: ℰ = (E/mc²)² − 1.
pub fn curly_e_of(e_over_mc2: f64) -> f64 {
    e_over_mc2 * e_over_mc2 - 1.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn far(lambda: f64) -> DipoleField {
        DipoleField::far_field(lambda).unwrap()
    }

    #[test]
    fn far_field_potential() {
        assert_eq!(vector_potential(&far(1.0), 2.0).unwrap(), 0.25);
    }

    #[test]
    fn full_ring_reduces_to_far_field_at_zero_radius() {
        let ring = DipoleField::new(1.0, 0.0, PotentialForm::FullRing).unwrap();
        assert!((vector_potential(&ring, 2.0).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn full_ring_value() {
        // lambda=1, a=2, rho=2: 2/8^(3/2)
        let ring = DipoleField::new(1.0, 2.0, PotentialForm::FullRing).unwrap();
        let expect = 2.0 / 8.0_f64.powf(1.5);
        assert!((vector_potential(&ring, 2.0).unwrap() - expect).abs() < 1e-15);
        assert!((expect - 0.088388348).abs() < 1e-8);
    }

    #[test]
    fn nonpositive_radius_rejected() {
        assert!(vector_potential(&far(1.0), 0.0).is_err());
        assert!(vector_potential(&far(1.0), -1.0).is_err());
    }

    #[test]
    fn couplings_examples() {
        let c = couplings_from_field(1.0, 1).unwrap();
        assert_eq!((c.eta, c.sigma), (2.0, -1.0));
        let c = couplings_from_field(2.0, 0).unwrap();
        assert_eq!((c.eta, c.sigma), (0.0, -4.0));
        let c = couplings_from_field(-1.5, 2).unwrap();
        assert_eq!((c.eta, c.sigma), (-6.0, -2.25));
        assert!(c.physical);
    }

    #[test]
    fn free_form_is_not_physical_unless_square() {
        let c = Couplings::free_form(1.0, 0.0, 1).unwrap();
        assert!(!c.physical);
        assert!(c.g.is_none());
        // eta = 2, sigma = -1, m = 1 is g = 1
        let c = Couplings::free_form(2.0, -1.0, 1).unwrap();
        assert!(c.physical);
        assert_eq!(c.g, Some(1.0));
    }

    #[test]
    fn free_form_rejects_positive_sigma() {
        assert!(Couplings::free_form(1.0, 0.5, 1).is_err());
    }

    #[test]
    fn effective_potential_examples() {
        // m=1, g=2, rho=1: 1 - 4 + 4 = 1
        let c = couplings_from_field(2.0, 1).unwrap();
        let v = effective_potential(&c, &far(1.0), 1.0).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
        // m=0, g=1, rho=2: only -sigma/rho^4 survives
        let c = couplings_from_field(1.0, 0).unwrap();
        let v = effective_potential(&c, &far(1.0), 2.0).unwrap();
        assert!((v - 0.0625).abs() < 1e-15);
        // m=1, g=1, rho=10: 0.01 - 0.002 + 0.0001
        let c = couplings_from_field(1.0, 1).unwrap();
        let v = effective_potential(&c, &far(1.0), 10.0).unwrap();
        assert!((v - 0.0081).abs() < 1e-15);
    }

    #[test]
    fn ring_effective_potential_nonnegative_and_needs_g() {
        let ring = DipoleField::new(1.0, 1.0, PotentialForm::FullRing).unwrap();
        let phys = couplings_from_field(2.0, 1).unwrap();
        for rho in [0.01, 0.1, 1.0, 5.0, 100.0] {
            assert!(effective_potential(&phys, &ring, rho).unwrap() >= 0.0);
        }
        let freeform = Couplings::free_form(1.0, 0.0, 1).unwrap();
        assert!(effective_potential(&freeform, &ring, 1.0).is_err());
    }

    #[test]
    fn full_ring_converges_to_far_field_monotonically() {
        // halving the ring radius from rho/4 shrinks |V_full - V_far|
        for m_q in 0..4 {
            for g in [0.5, 1.0, 2.0, 5.0] {
                for rho in [0.5, 1.0, 2.0, 10.0] {
                    let c = couplings_from_field(g, m_q).unwrap();
                    let v_far = effective_potential(&c, &far(1.0), rho).unwrap();
                    let mut prev = f64::INFINITY;
                    for k in 0..11 {
                        let a = rho / 4.0 * 0.5_f64.powi(k);
                        let ring = DipoleField::new(1.0, a, PotentialForm::FullRing).unwrap();
                        let v = effective_potential(&c, &ring, rho).unwrap();
                        let diff = (v - v_far).abs();
                        assert!(
                            diff <= prev + 1e-18,
                            "non-monotone at m={m_q} g={g} rho={rho} a={a}: {diff} > {prev}"
                        );
                        prev = diff;
                    }
                    assert!(prev <= 1e-6 * v_far.max(1.0), "tail not converged: {prev}");
                }
            }
        }
    }

    #[test]
    fn spectral_parameter_branches() {
        let s = SpectralParameter::new(-4.0).unwrap();
        assert_eq!(s.beta, Some(2.0));
        let s = SpectralParameter::new(0.0).unwrap();
        assert_eq!(s.beta, Some(0.0));
        let s = SpectralParameter::new(3.0).unwrap();
        assert_eq!(s.beta, None);
    }

    #[test]
    fn energy_examples() {
        assert_eq!(energy_of(0.0).unwrap(), 1.0);
        assert_eq!(energy_of(-1.0).unwrap(), 0.0);
        assert_eq!(energy_of(3.0).unwrap(), 2.0);
        assert!(energy_of(-1.5).is_err());
    }

    #[test]
    fn energy_round_trip() {
        for curly in [-1.0, -0.5, 0.0, 0.1, 3.0, 100.0] {
            let e = energy_of(curly).unwrap();
            let back = curly_e_of(e);
            assert!(
                (back - curly).abs() <= 1e-14 * curly.abs().max(1.0),
                "round trip {curly} -> {e} -> {back}"
            );
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn square_constraint_holds(g in -50.0f64..50.0, m_q in -5i32..=5) {
                let c = couplings_from_field(g, m_q).unwrap();
                let mf = f64::from(m_q);
                let lhs = c.eta * c.eta;
                let rhs = -4.0 * mf * mf * c.sigma;
                prop_assert!((lhs - rhs).abs() <= 1e-15 * lhs.max(1e-300), "{} vs {}", lhs, rhs);
                prop_assert!(c.sigma <= 0.0);
            }

            #[test]
            fn perfect_square_identity(
                g in 0.01f64..20.0,
                m_q in 0i32..=4,
                rho in 1e-3f64..1e3,
            ) {
                let c = couplings_from_field(g, m_q).unwrap();
                let v = effective_potential(&c, &DipoleField::far_field(1.0).unwrap(), rho).unwrap();
                let square = {
                    let d = f64::from(m_q) / rho - g / (rho * rho);
                    d * d
                };
                let tol = 1e-12 * v.max(1.0);
                prop_assert!((v - square).abs() <= tol, "v={} square={}", v, square);
                prop_assert!(v >= -tol);
            }
        }
    }
}

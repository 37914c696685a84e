//! Closed-form reflection of a plane wave by a uniformly moving hard wall.
//!
//! A wave `e^{i(kx − ωt)}` incident from the left on a wall at `x = vt`
//! produces the reflected component `−e^{i(k′x − ω′t)}` with
//! `k′ = −k + 2mv/ħ`. In the frame moving with the wall the total field is
//! the standing wave `2i sin(k̄x̄) e^{−iħk̄²t/2m}` with `x̄ = x − vt` and
//! `k̄ = k − mv/ħ`; the two descriptions are related by a Galilean boost.
//!
//! Fields are plane waves and are never normalized: the density is `|ψ|²`
//! with `|ψ_incident| = 1`.
//!
//! Regime labels follow phase velocities (`ħk/2m` for the incident wave).
//! Group velocities behave differently: the reflected group velocity is
//! `ħk′/m = 2v − ħk/m`, so a reflected packet co-moves with the incident one
//! for `v > ħk/2m` but it only exists as a packet when the wall is slower than
//! the incident group velocity `ħk/m`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSnapshot, Frame};

/// Density below which the drift ratio is treated as a node of the pattern.
pub const DEFAULT_NODE_TOLERANCE: f64 = 1e-12;

/// Reduced Planck constant and particle mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub hbar: f64,
    pub mass: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            mass: 1.0,
        }
    }
}

impl PhysicalParams {
    pub fn new(hbar: f64, mass: f64) -> Result<Self> {
        let p = Self { hbar, mass };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.hbar > 0.0 && self.hbar.is_finite()) {
            return Err(Error::Domain(format!("hbar must be > 0, got {}", self.hbar)));
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(Error::Domain(format!("mass must be > 0, got {}", self.mass)));
        }
        Ok(())
    }

    /// `m v / ħ`: the wavenumber carried by a boost of velocity `v`.
    pub fn boost_wavenumber(&self, v: f64) -> f64 {
        self.mass * v / self.hbar
    }
}

/// Direction/speed relation between the reflected and incident waves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegimeClass {
    /// `v < ħk/2m`: reflected wave travels toward −x.
    CounterPropagating,
    /// `v = ħk/2m`: reflected wave has `k′ = 0`.
    ZeroReflectedWavenumber,
    /// `ħk/2m < v < ħk/m`: reflected wave travels toward +x, no faster than
    /// the incident phase.
    CoPropagating,
    /// `v = ħk/m`: `k̄ = 0` and the total field vanishes identically.
    Degenerate,
    /// `v > ħk/m`: reflected phase velocity exceeds the incident one.
    CoPropagatingFaster,
}

impl RegimeClass {
    pub fn name(self) -> &'static str {
        match self {
            RegimeClass::CounterPropagating => "CounterPropagating",
            RegimeClass::ZeroReflectedWavenumber => "ZeroReflectedWavenumber",
            RegimeClass::CoPropagating => "CoPropagating",
            RegimeClass::Degenerate => "Degenerate",
            RegimeClass::CoPropagatingFaster => "CoPropagatingFaster",
        }
    }
}

impl std::fmt::Display for RegimeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn require_incident(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "incident wavenumber must satisfy k > 0, got {k}"
        )))
    }
}

/// One plane-wave scattering instance and everything derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlaneWaveScattering {
    k: f64,
    v: f64,
    params: PhysicalParams,
    k_prime: f64,
    omega: f64,
    omega_prime: f64,
    k_bar: f64,
    regime: RegimeClass,
}

impl PlaneWaveScattering {
    pub fn new(k: f64, v: f64, params: PhysicalParams) -> Result<Self> {
        params.validate()?;
        if !v.is_finite() {
            return Err(Error::Domain(format!("wall velocity must be finite, got {v}")));
        }
        let k_prime = reflected_wavenumber(k, v, &params)?;
        Ok(Self {
            k,
            v,
            params,
            k_prime,
            omega: dispersion(k, &params),
            omega_prime: dispersion(k_prime, &params),
            k_bar: k - params.boost_wavenumber(v),
            regime: classify_regime(k, v, &params)?,
        })
    }

    pub fn k(&self) -> f64 {
        self.k
    }
    pub fn v(&self) -> f64 {
        self.v
    }
    pub fn params(&self) -> PhysicalParams {
        self.params
    }
    pub fn k_prime(&self) -> f64 {
        self.k_prime
    }
    pub fn omega(&self) -> f64 {
        self.omega
    }
    pub fn omega_prime(&self) -> f64 {
        self.omega_prime
    }
    pub fn r(&self) -> Complex64 {
        reflection_coefficient()
    }
    pub fn k_bar(&self) -> f64 {
        self.k_bar
    }
    pub fn regime(&self) -> RegimeClass {
        self.regime
    }
    pub fn wall_position(&self, t: f64) -> f64 {
        self.v * t
    }
}

/// `k′ = −k + 2mv/ħ`.
pub fn reflected_wavenumber(k: f64, v: f64, params: &PhysicalParams) -> Result<f64> {
    require_incident(k)?;
    Ok(-k + 2.0 * params.mass * v / params.hbar)
}

/// Amplitude of the reflected wave relative to the incident one. Always `−1`.
pub fn reflection_coefficient() -> Complex64 {
    Complex64::new(-1.0, 0.0)
}

/// Free-particle dispersion `ω = ħk²/2m`.
pub fn dispersion(k: f64, params: &PhysicalParams) -> f64 {
    params.hbar * k * k / (2.0 * params.mass)
}

/// `v_p = v − ħk/2m`, the phase velocity of the reflected wave.
pub fn reflected_phase_velocity(k: f64, v: f64, params: &PhysicalParams) -> Result<f64> {
    require_incident(k)?;
    Ok(v - params.hbar * k / (2.0 * params.mass))
}

/// Phase velocity of the incident wave, `ħk/2m`.
pub fn incident_phase_velocity(k: f64, params: &PhysicalParams) -> f64 {
    params.hbar * k / (2.0 * params.mass)
}

/// Labels the reflection regime from exact comparisons against `ħk/2m` and
/// `ħk/m`. The degenerate point is tested first.
pub fn classify_regime(k: f64, v: f64, params: &PhysicalParams) -> Result<RegimeClass> {
    require_incident(k)?;
    let vc1 = params.hbar * k / (2.0 * params.mass);
    let vc2 = params.hbar * k / params.mass;
    let regime = if v == vc2 {
        RegimeClass::Degenerate
    } else if v < vc1 {
        RegimeClass::CounterPropagating
    } else if v == vc1 {
        RegimeClass::ZeroReflectedWavenumber
    } else if v < vc2 {
        RegimeClass::CoPropagating
    } else {
        RegimeClass::CoPropagatingFaster
    };
    Ok(regime)
}

/// Incident plus reflected wave, `e^{i(kx−ωt)} − e^{i(k′x−ω′t)}`, evaluated
/// for any `x`. Only `x ≤ vt` is physical.
pub fn total_wavefunction(x: f64, t: f64, scat: &PlaneWaveScattering) -> Complex64 {
    let incident = Complex64::cis(scat.k * x - scat.omega * t);
    let reflected = Complex64::cis(scat.k_prime * x - scat.omega_prime * t);
    incident + scat.r() * reflected
}

/// Standing wave seen from the wall, `2i sin(k̄x̄) e^{−iħk̄²t/2m}`.
pub fn comoving_wavefunction(x_bar: f64, t: f64, k_bar: f64, params: &PhysicalParams) -> Complex64 {
    let amplitude = 2.0 * (k_bar * x_bar).sin();
    Complex64::new(0.0, amplitude) * Complex64::cis(-dispersion(k_bar, params) * t)
}

/// Phase `m v x/ħ − m v² t/2ħ` of the boost from the wall frame to the lab.
pub fn boost_phase(x: f64, t: f64, v: f64, params: &PhysicalParams) -> f64 {
    params.mass * v * (x - 0.5 * v * t) / params.hbar
}

/// Galilean boost of a co-moving snapshot into the lab frame.
///
/// Node `x̄` maps to `x = x̄ + vt` and the value picks up
/// `exp[i(mvx/ħ − mv²t/2ħ)]`, so moduli are unchanged.
pub fn galilean_lift(
    snapshot: &FieldSnapshot,
    v: f64,
    params: &PhysicalParams,
) -> Result<FieldSnapshot> {
    snapshot.expect_frame(Frame::Comoving)?;
    let t = snapshot.time;
    let grid = snapshot.grid.shifted(v * t);
    let values = grid
        .nodes()
        .zip(&snapshot.values)
        .map(|(x, phi)| Complex64::cis(boost_phase(x, t, v, params)) * phi)
        .collect();
    FieldSnapshot::new(t, Frame::Lab, v, grid, values)
}

/// `|ψ|² = 4 sin²[(k − mv/ħ)(x − vt)]`.
pub fn probability_density(x: f64, t: f64, scat: &PlaneWaveScattering) -> f64 {
    let s = (scat.k_bar * (x - scat.v * t)).sin();
    4.0 * s * s
}

/// `J = 4v sin²[(k − mv/ħ)(x − vt)]`.
pub fn probability_current(x: f64, t: f64, scat: &PlaneWaveScattering) -> f64 {
    let s = (scat.k_bar * (x - scat.v * t)).sin();
    4.0 * scat.v * s * s
}

/// `J = (ħ/m) Im(ψ* ∂ₓψ)` by finite differences on the snapshot nodes.
///
/// Interior nodes use the centred difference, the two end nodes the
/// one-sided second-order stencils.
pub fn discrete_current(snapshot: &FieldSnapshot, params: &PhysicalParams) -> Result<Vec<f64>> {
    let psi = &snapshot.values;
    let n = psi.len();
    if n < 3 {
        return Err(Error::GridTooSmall { needed: 3, got: n });
    }
    let h = snapshot.grid.spacing();
    let scale = params.hbar / params.mass;
    let current = |z: Complex64, dz: Complex64| scale * (z.conj() * dz).im;

    let mut out = Vec::with_capacity(n);
    let d0 = (-3.0 * psi[0] + 4.0 * psi[1] - psi[2]) / (2.0 * h);
    out.push(current(psi[0], d0));
    for i in 1..n - 1 {
        let d = (psi[i + 1] - psi[i - 1]) / (2.0 * h);
        out.push(current(psi[i], d));
    }
    let dn = (3.0 * psi[n - 1] - 4.0 * psi[n - 2] + psi[n - 3]) / (2.0 * h);
    out.push(current(psi[n - 1], dn));
    Ok(out)
}

/// Drift velocity `J/|ψ|²` with the default node tolerance.
pub fn drift_velocity(x: f64, t: f64, scat: &PlaneWaveScattering) -> Result<f64> {
    drift_velocity_with_tolerance(x, t, scat, DEFAULT_NODE_TOLERANCE)
}

/// Literal ratio of the current to the density. Fails on nodes of the
/// standing pattern where both vanish.
pub fn drift_velocity_with_tolerance(
    x: f64,
    t: f64,
    scat: &PlaneWaveScattering,
    tolerance: f64,
) -> Result<f64> {
    let density = probability_density(x, t, scat);
    if density <= tolerance {
        return Err(Error::NodeSingularity {
            x,
            density,
            tolerance,
        });
    }
    Ok(probability_current(x, t, scat) / density)
}

/// Centred-difference residual of `iħ∂ₜψ + (ħ²/2m)∂²ₓψ` at `(x, t)`.
///
/// Second order in both `h` and `dt`; an exact solution leaves a residual of
/// size `O(h² + dt²)`.
pub fn schrodinger_residual<F>(
    field: F,
    x: f64,
    t: f64,
    h: f64,
    dt: f64,
    params: &PhysicalParams,
) -> Complex64
where
    F: Fn(f64, f64) -> Complex64,
{
    let i_hbar = Complex64::new(0.0, params.hbar);
    let dpsi_dt = (field(x, t + dt) - field(x, t - dt)) / (2.0 * dt);
    let d2psi_dx2 = (field(x + h, t) - 2.0 * field(x, t) + field(x - h, t)) / (h * h);
    i_hbar * dpsi_dt + params.hbar * params.hbar / (2.0 * params.mass) * d2psi_dx2
}

/// Spatial period of the density pattern, `π/|k̄|`.
pub fn pattern_period(k_bar: f64) -> f64 {
    PI / k_bar.abs()
}

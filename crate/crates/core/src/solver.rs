//! Crank–Nicolson propagation in the frame that moves with the wall.
//!
//! In that frame the wall is a fixed Dirichlet node at `x̄ = 0`, so the
//! moving-boundary problem becomes a static box `[−L, 0]` with hard walls at
//! both ends. Lab-frame fields are recovered with [`to_lab_frame`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::{self, PhysicalParams};
use crate::error::{Error, Result};
use crate::field::{FieldSnapshot, Frame};
use crate::grid::Grid1D;

/// Nodes next to the far wall inspected for spurious reflections.
pub const BOUNDARY_PROBE_NODES: usize = 4;
/// Norm share near the far wall above which a run is flagged.
pub const BOUNDARY_WARN_FRACTION: f64 = 1e-3;
/// Allowed norm drift over a whole run.
pub const NORM_DRIFT_TOLERANCE: f64 = 1e-9;

/// Gaussian initial condition, specified in the co-moving frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavepacketSpec {
    /// Initial centre `x̄₀ < 0`.
    pub x0: f64,
    /// Spatial width σ (the RMS width of `|φ|²`).
    pub sigma: f64,
    /// Central wavenumber in the lab frame.
    pub k0_lab: f64,
}

impl Default for WavepacketSpec {
    fn default() -> Self {
        Self {
            x0: -30.0,
            sigma: 2.0,
            k0_lab: 5.0,
        }
    }
}

impl WavepacketSpec {
    /// Central wavenumber seen from the wall, `k₀ − mv/ħ`.
    pub fn k_bar(&self, wall_velocity: f64, params: &PhysicalParams) -> f64 {
        self.k0_lab - params.boost_wavenumber(wall_velocity)
    }

    /// Time for the packet centre to reach the wall and come back to `x̄₀`.
    pub fn round_trip_time(&self, wall_velocity: f64, params: &PhysicalParams) -> f64 {
        let group = params.hbar * self.k_bar(wall_velocity, params) / params.mass;
        2.0 * self.x0.abs() / group
    }

    pub fn validate(&self, grid: &Grid1D, wall_velocity: f64, params: &PhysicalParams) -> Result<()> {
        let k_bar = self.k_bar(wall_velocity, params);
        if !(k_bar > 0.0) {
            return Err(Error::NoCollision {
                k_bar,
                threshold: params.hbar * self.k0_lab / params.mass,
            });
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::Clearance(format!("sigma must be > 0, got {}", self.sigma)));
        }
        if !(self.x0 + 4.0 * self.sigma < 0.0) {
            return Err(Error::Clearance(format!(
                "x0 + 4 sigma = {} must be < 0 (wall at 0)",
                self.x0 + 4.0 * self.sigma
            )));
        }
        if !(self.x0 - 4.0 * self.sigma > grid.x_min()) {
            return Err(Error::Clearance(format!(
                "x0 - 4 sigma = {} must be > x_min = {}",
                self.x0 - 4.0 * self.sigma,
                grid.x_min()
            )));
        }
        Ok(())
    }
}

/// Discretisation and physical setup of one co-moving run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolutionConfig {
    pub grid: Grid1D,
    pub dt: f64,
    pub n_steps: usize,
    pub snapshot_stride: usize,
    pub wall_velocity: f64,
    pub params: PhysicalParams,
}

impl EvolutionConfig {
    /// Desk-scale defaults: `[−120, 0]` with 4096 nodes and `dt = 0.002`.
    pub fn desk_default(wall_velocity: f64) -> Self {
        Self {
            grid: Grid1D::new(-120.0, 0.0, 4096).expect("static grid"),
            dt: 0.002,
            n_steps: 0,
            snapshot_stride: 1,
            wall_velocity,
            params: PhysicalParams::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        self.params.validate()?;
        if self.grid.x_max() != 0.0 {
            return Err(Error::InvalidConfig(format!(
                "co-moving grid must end at the wall (x_max = 0), got {}",
                self.grid.x_max()
            )));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidConfig(format!("dt must be > 0, got {}", self.dt)));
        }
        if self.snapshot_stride == 0 {
            return Err(Error::InvalidConfig("snapshot_stride must be >= 1".into()));
        }
        if !self.wall_velocity.is_finite() {
            return Err(Error::InvalidConfig("wall_velocity must be finite".into()));
        }
        Ok(())
    }

    /// Steps needed to cover the packet's round trip to the wall.
    pub fn steps_for_round_trip(&self, spec: &WavepacketSpec) -> usize {
        let t = spec.round_trip_time(self.wall_velocity, &self.params);
        (t / self.dt).ceil() as usize
    }
}

/// Normalised Gaussian `exp[−(x̄−x̄₀)²/4σ²] e^{ik̄₀x̄}` on a co-moving grid.
pub fn init_gaussian(
    grid: Grid1D,
    spec: &WavepacketSpec,
    wall_velocity: f64,
    params: &PhysicalParams,
) -> Result<FieldSnapshot> {
    params.validate()?;
    if grid.x_max() != 0.0 {
        return Err(Error::InvalidGrid(format!(
            "co-moving grid must end at x_max = 0, got {}",
            grid.x_max()
        )));
    }
    spec.validate(&grid, wall_velocity, params)?;
    let k_bar = spec.k_bar(wall_velocity, params);
    let mut snap = FieldSnapshot::sample(0.0, Frame::Comoving, wall_velocity, grid, |xb| {
        let env = (-(xb - spec.x0).powi(2) / (4.0 * spec.sigma * spec.sigma)).exp();
        Complex64::from_polar(env, k_bar * xb)
    });
    let n = snap.values.len();
    snap.values[0] = Complex64::new(0.0, 0.0);
    snap.values[n - 1] = Complex64::new(0.0, 0.0);
    let scale = snap.norm_sqr().sqrt().recip();
    snap.values.iter_mut().for_each(|z| *z *= scale);
    Ok(snap)
}

/// Factorised trapezoidal propagator for a fixed grid spacing and step.
///
/// Solves `(1 + iΔtH/2ħ) φⁿ⁺¹ = (1 − iΔtH/2ħ) φⁿ` on interior nodes with
/// `H = −(ħ²/2m) D₂`. The constant-coefficient tridiagonal system is
/// eliminated once; each step is then two O(n) sweeps.
#[derive(Debug, Clone)]
pub struct CrankNicolson {
    diag_rhs: Complex64,
    off_rhs: Complex64,
    off_lhs: Complex64,
    c_prime: Vec<Complex64>,
    inv_pivot: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl CrankNicolson {
    pub fn new(h: f64, dt: f64, n_nodes: usize, params: &PhysicalParams) -> Result<Self> {
        if n_nodes < 3 {
            return Err(Error::GridTooSmall {
                needed: 3,
                got: n_nodes,
            });
        }
        let r = params.hbar * dt / (4.0 * params.mass * h * h);
        let diag_lhs = Complex64::new(1.0, 2.0 * r);
        let off_lhs = Complex64::new(0.0, -r);
        let interior = n_nodes - 2;

        let mut c_prime = Vec::with_capacity(interior);
        let mut inv_pivot = Vec::with_capacity(interior);
        let mut prev = Complex64::new(0.0, 0.0);
        for row in 0..interior {
            let pivot = diag_lhs - off_lhs * prev;
            if pivot.norm() == 0.0 || !pivot.is_finite() {
                return Err(Error::SingularSystem(row));
            }
            let inv = pivot.inv();
            prev = off_lhs * inv;
            c_prime.push(prev);
            inv_pivot.push(inv);
        }
        Ok(Self {
            diag_rhs: Complex64::new(1.0, -2.0 * r),
            off_rhs: Complex64::new(0.0, r),
            off_lhs,
            c_prime,
            inv_pivot,
            scratch: vec![Complex64::new(0.0, 0.0); interior],
        })
    }

    /// Advances `values` (all nodes, endpoints included) by one step in place.
    /// Endpoint values are read as boundary data and left untouched.
    pub fn step(&mut self, values: &mut [Complex64]) {
        let n = values.len();
        let interior = n - 2;
        assert_eq!(interior, self.c_prime.len(), "propagator built for another grid");
        let d = &mut self.scratch;

        // forward sweep fused with the explicit half step
        let mut prev = Complex64::new(0.0, 0.0);
        for row in 0..interior {
            let i = row + 1;
            let rhs = self.diag_rhs * values[i] + self.off_rhs * (values[i - 1] + values[i + 1]);
            prev = (rhs - self.off_lhs * prev) * self.inv_pivot[row];
            d[row] = prev;
        }
        // back substitution
        let mut next = Complex64::new(0.0, 0.0);
        for row in (0..interior).rev() {
            next = d[row] - self.c_prime[row] * next;
            values[row + 1] = next;
        }
    }
}

/// One Crank–Nicolson step of a co-moving snapshot.
pub fn cn_step(field: &FieldSnapshot, dt: f64, params: &PhysicalParams) -> Result<FieldSnapshot> {
    field.expect_frame(Frame::Comoving)?;
    let mut prop = CrankNicolson::new(field.grid.spacing(), dt, field.grid.n(), params)?;
    let mut out = field.clone();
    prop.step(&mut out.values);
    out.time += dt;
    Ok(out)
}

/// Share of the norm sitting on the nodes next to the far wall `x̄ = −L`.
pub fn far_boundary_fraction(snapshot: &FieldSnapshot) -> f64 {
    let total: f64 = snapshot.values.iter().map(|z| z.norm_sqr()).sum();
    let edge: f64 = snapshot
        .values
        .iter()
        .take(BOUNDARY_PROBE_NODES + 1)
        .map(|z| z.norm_sqr())
        .sum();
    edge / total
}

/// Bookkeeping of one run, serialised as `meta.json` by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub n_steps: usize,
    pub dt: f64,
    pub t_final: f64,
    pub n_snapshots: usize,
    pub norm_initial: f64,
    pub norm_final: f64,
    /// Largest `|‖φₙ‖² − ‖φ₀‖²|` seen over all steps.
    pub norm_drift: f64,
    pub far_boundary_fraction: f64,
    pub boundary_contaminated: bool,
}

#[derive(Debug, Clone)]
pub struct Evolution {
    pub snapshots: Vec<FieldSnapshot>,
    pub meta: RunMetadata,
}

impl Evolution {
    pub fn last(&self) -> &FieldSnapshot {
        self.snapshots.last().expect("evolution always holds the initial state")
    }
}

/// Applies `config.n_steps` Crank–Nicolson steps, emitting every
/// `snapshot_stride`-th state plus the initial and final ones.
pub fn evolve(initial: &FieldSnapshot, config: &EvolutionConfig) -> Result<Evolution> {
    config.validate()?;
    initial.expect_frame(Frame::Comoving)?;
    if initial.grid != config.grid {
        return Err(Error::InvalidConfig(
            "initial snapshot is not defined on the configured grid".into(),
        ));
    }
    let mut prop = CrankNicolson::new(config.grid.spacing(), config.dt, config.grid.n(), &config.params)?;
    let h = config.grid.spacing();
    let norm_of = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>() * h;

    let t0 = initial.time;
    let norm_initial = norm_of(&initial.values);
    let mut norm_drift: f64 = 0.0;
    let mut state = initial.clone();
    let mut snapshots = vec![initial.clone()];
    for step in 1..=config.n_steps {
        prop.step(&mut state.values);
        norm_drift = norm_drift.max((norm_of(&state.values) - norm_initial).abs());
        if step % config.snapshot_stride == 0 || step == config.n_steps {
            state.time = t0 + step as f64 * config.dt;
            snapshots.push(state.clone());
        }
    }
    let last = snapshots.last().expect("non-empty");
    let fraction = far_boundary_fraction(last);
    let meta = RunMetadata {
        n_steps: config.n_steps,
        dt: config.dt,
        t_final: last.time,
        n_snapshots: snapshots.len(),
        norm_initial,
        norm_final: norm_of(&last.values),
        norm_drift,
        far_boundary_fraction: fraction,
        boundary_contaminated: fraction > BOUNDARY_WARN_FRACTION,
    };
    Ok(Evolution { snapshots, meta })
}

/// Lab-frame view of a co-moving snapshot.
pub fn to_lab_frame(snapshot: &FieldSnapshot, v: f64, params: &PhysicalParams) -> Result<FieldSnapshot> {
    analytic::galilean_lift(snapshot, v, params)
}

/// Closed-form free evolution of `exp[−(x−x₀)²/4σ²] e^{ikx}` on the whole line.
pub fn free_gaussian(x: f64, t: f64, x0: f64, sigma: f64, k: f64, params: &PhysicalParams) -> Complex64 {
    let tau = params.hbar * t / (2.0 * params.mass * sigma * sigma);
    let spread = Complex64::new(1.0, tau);
    let centre = x0 + params.hbar * k * t / params.mass;
    let gauss = (-(x - centre).powi(2) / (4.0 * sigma * sigma) / spread).exp();
    gauss / spread.sqrt() * Complex64::cis(k * x - analytic::dispersion(k, params) * t)
}

/// RMS width of `|ψ|²` for the free Gaussian at time `t`.
pub fn free_gaussian_width(t: f64, sigma: f64, params: &PhysicalParams) -> f64 {
    let tau = params.hbar * t / (2.0 * params.mass * sigma * sigma);
    sigma * (1.0 + tau * tau).sqrt()
}

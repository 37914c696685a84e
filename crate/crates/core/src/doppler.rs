//! Measuring the reflected wavenumber and the drift of the density pattern.
//!
//! The reflected wavenumber is read off the signed spectrum of the lab-frame
//! field once the packet has bounced off the wall. Only the sign and size of
//! the dominant wavenumber matter, so a windowed, zero-padded transform with
//! parabolic peak refinement is enough.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{classify_regime, reflected_wavenumber, PhysicalParams, RegimeClass};
use crate::error::{Error, Result};
use crate::field::FieldSnapshot;
use crate::grid::Grid1D;
use crate::solver::{self, EvolutionConfig, WavepacketSpec};
use crate::spectral;

/// Smallest analysis region accepted by [`estimate_peak_wavenumber`].
pub const MIN_REGION_NODES: usize = 64;
/// Zero-padding factor of the peak search.
pub const ZERO_PAD: usize = 8;
/// Share of the norm that must have reversed co-moving momentum before the
/// reflected packet is measured.
pub const REVERSAL_THRESHOLD: f64 = 0.99;
/// Relative tolerance of the Doppler comparison.
pub const DOPPLER_REL_TOLERANCE: f64 = 0.02;
/// Rows with `|k_predicted|` at or below this many resolutions are compared
/// absolutely.
pub const SMALL_K_RESOLUTIONS: f64 = 3.0;

const MAX_EXTENSIONS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralEstimate {
    /// Signed peak wavenumber; meaningful to ± `resolution / 2`.
    pub k_peak: f64,
    /// Interpolated peak magnitude divided by the window sum, so a unit tone
    /// reads as 1.
    pub amplitude: f64,
    /// `2π / window length`.
    pub resolution: f64,
}

/// Dominant signed wavenumber of `snapshot` over the nodes in `[x_lo, x_hi]`.
///
/// Hann window, 8× zero padding, 3-point parabolic refinement of the
/// magnitude peak.
pub fn estimate_peak_wavenumber(snapshot: &FieldSnapshot, x_lo: f64, x_hi: f64) -> Result<SpectralEstimate> {
    let grid = &snapshot.grid;
    let h = grid.spacing();
    let slack = 1e-9 * h;
    let xs: Vec<f64> = grid.nodes().collect();
    let first = xs.iter().position(|&x| x >= x_lo - slack);
    let last = xs.iter().rposition(|&x| x <= x_hi + slack);
    let (first, last) = match (first, last) {
        (Some(a), Some(b)) if b >= a => (a, b),
        _ => return Err(Error::RegionTooSmall { needed: MIN_REGION_NODES, got: 0 }),
    };
    let len = last - first + 1;
    if len < MIN_REGION_NODES {
        return Err(Error::RegionTooSmall { needed: MIN_REGION_NODES, got: len });
    }
    let segment = &snapshot.values[first..=last];
    if segment.iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-12 {
        return Err(Error::NoSignal);
    }

    let window = spectral::hann(len);
    let windowed: Vec<_> = segment.iter().zip(&window).map(|(z, w)| z * w).collect();
    let padded = len * ZERO_PAD;
    let mags: Vec<f64> = spectral::forward(&windowed, padded).iter().map(|z| z.norm()).collect();

    let (peak, &peak_mag) = mags
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty spectrum");
    let left = mags[(peak + padded - 1) % padded];
    let right = mags[(peak + 1) % padded];
    let offset = spectral::parabolic_offset(left, peak_mag, right);
    let refined_mag = peak_mag - 0.25 * (left - right) * offset;
    let bin = (peak as f64 + offset).rem_euclid(padded as f64);

    Ok(SpectralEstimate {
        k_peak: spectral::bin_wavenumber(bin, padded, h),
        amplitude: refined_mag / window.iter().sum::<f64>(),
        resolution: 2.0 * PI / (len as f64 * h),
    })
}

/// Outcome of one simulated reflection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReflectionMeasurement {
    pub v: f64,
    pub k_measured: f64,
    pub resolution: f64,
    /// Time of the analysed snapshot.
    pub t_measure: f64,
    /// Share of the norm with negative co-moving wavenumber at `t_measure`.
    pub reversed_fraction: f64,
    /// Lab-frame analysis window.
    pub region: (f64, f64),
}

/// Simulates a Gaussian packet of lab wavenumber `k0_lab` hitting a wall
/// moving at `v` and measures the wavenumber of the reflected packet in the
/// lab frame.
///
/// The grid, time step and units come from `sim`; its `n_steps` is ignored
/// and replaced by the packet's round-trip time, extended until the
/// co-moving momentum has reversed for at least 99% of the norm.
pub fn measure_reflection(
    k0_lab: f64,
    v: f64,
    sim: &EvolutionConfig,
    spec: &WavepacketSpec,
) -> Result<ReflectionMeasurement> {
    let spec = WavepacketSpec { k0_lab, ..*spec };
    let mut cfg = EvolutionConfig {
        wall_velocity: v,
        ..*sim
    };
    let params = cfg.params;
    let initial = solver::init_gaussian(cfg.grid, &spec, v, &params)?;
    cfg.n_steps = cfg.steps_for_round_trip(&spec).max(1);
    cfg.snapshot_stride = cfg.n_steps;

    let h = cfg.grid.spacing();
    let mut run = solver::evolve(&initial, &cfg)?;
    let mut reversed = spectral::negative_wavenumber_fraction(&run.last().values, h);
    let mut extensions = 0;
    let extra = EvolutionConfig {
        n_steps: (cfg.n_steps / 4).max(1),
        snapshot_stride: (cfg.n_steps / 4).max(1),
        ..cfg
    };
    while reversed <= REVERSAL_THRESHOLD {
        if extensions == MAX_EXTENSIONS {
            return Err(Error::IncompleteReflection { fraction: reversed });
        }
        run = solver::evolve(run.last(), &extra)?;
        reversed = spectral::negative_wavenumber_fraction(&run.last().values, h);
        extensions += 1;
    }
    if run.meta.boundary_contaminated {
        return Err(Error::ContaminatedRun {
            fraction: run.meta.far_boundary_fraction,
        });
    }

    let comoving = run.last();
    let lab = solver::to_lab_frame(comoving, v, &params)?;
    let (centre, width) = comoving.centroid_and_width();
    let margin = 2.0 * solver::BOUNDARY_PROBE_NODES as f64 * h;
    let half = (4.0 * width)
        .min(centre - (cfg.grid.x_min() + margin))
        .min(-margin - centre);
    let shift = v * comoving.time;
    let region = (centre - half + shift, centre + half + shift);
    let estimate = estimate_peak_wavenumber(&lab, region.0, region.1)?;

    Ok(ReflectionMeasurement {
        v,
        k_measured: estimate.k_peak,
        resolution: estimate.resolution,
        t_measure: comoving.time,
        reversed_fraction: reversed,
        region,
    })
}

/// One wall velocity of a Doppler sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DopplerRow {
    pub v: f64,
    pub k_predicted: f64,
    pub k_measured: Option<f64>,
    /// `|Δk| / |k_predicted|`, or the absolute `|Δk|` for rows whose
    /// prediction is within a few resolutions of zero.
    pub relative_error: Option<f64>,
    pub regime: RegimeClass,
    pub skipped_reason: Option<String>,
    #[serde(skip)]
    pub resolution: Option<f64>,
}

impl DopplerRow {
    pub fn is_skipped(&self) -> bool {
        self.skipped_reason.is_some()
    }

    /// `|Δk| < max(resolution, 2%·|k_predicted|)`. Skipped rows pass.
    pub fn passes(&self) -> bool {
        match (self.k_measured, self.resolution) {
            (Some(k), Some(res)) => {
                (k - self.k_predicted).abs() < res.max(DOPPLER_REL_TOLERANCE * self.k_predicted.abs())
            }
            (Some(_), None) => self
                .relative_error
                .map_or(false, |e| e < DOPPLER_REL_TOLERANCE),
            _ => true,
        }
    }

    /// Measured sign agrees with the predicted one, for rows where the
    /// prediction is clear of zero by more than three resolutions.
    pub fn sign_consistent(&self) -> bool {
        match (self.k_measured, self.resolution) {
            (Some(k), Some(res)) if self.k_predicted.abs() > SMALL_K_RESOLUTIONS * res => {
                k.signum() == self.k_predicted.signum()
            }
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DopplerReport {
    pub k0: f64,
    pub hbar: f64,
    pub mass: f64,
    pub rows: Vec<DopplerRow>,
}

impl DopplerReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(DopplerRow::passes)
    }

    pub fn params(&self) -> PhysicalParams {
        PhysicalParams {
            hbar: self.hbar,
            mass: self.mass,
        }
    }
}

fn sweep_row(
    k0_lab: f64,
    v: f64,
    sim: &EvolutionConfig,
    spec: &WavepacketSpec,
) -> Result<DopplerRow> {
    let params = sim.params;
    let k_predicted = reflected_wavenumber(k0_lab, v, &params)?;
    let regime = classify_regime(k0_lab, v, &params)?;
    let row = match measure_reflection(k0_lab, v, sim, spec) {
        Ok(m) => {
            let diff = (m.k_measured - k_predicted).abs();
            let relative = if k_predicted.abs() > SMALL_K_RESOLUTIONS * m.resolution {
                diff / k_predicted.abs()
            } else {
                diff
            };
            DopplerRow {
                v,
                k_predicted,
                k_measured: Some(m.k_measured),
                relative_error: Some(relative),
                regime,
                skipped_reason: None,
                resolution: Some(m.resolution),
            }
        }
        Err(e) => DopplerRow {
            v,
            k_predicted,
            k_measured: None,
            relative_error: None,
            regime,
            skipped_reason: Some(e.to_string()),
            resolution: None,
        },
    };
    Ok(row)
}

/// Predicted vs simulated reflected wavenumber for each wall velocity.
///
/// Rows are computed in parallel on the current rayon pool and returned in
/// input order. Per-velocity failures become skipped rows.
pub fn doppler_sweep(
    k0_lab: f64,
    velocities: &[f64],
    sim_template: &EvolutionConfig,
    spec: &WavepacketSpec,
) -> Result<DopplerReport> {
    if velocities.is_empty() {
        return Err(Error::Domain("velocity list is empty".into()));
    }
    sim_template.params.validate()?;
    let rows = velocities
        .par_iter()
        .map(|&v| sweep_row(k0_lab, v, sim_template, spec))
        .collect::<Result<Vec<_>>>()?;
    Ok(DopplerReport {
        k0: k0_lab,
        hbar: sim_template.params.hbar,
        mass: sim_template.params.mass,
        rows,
    })
}

/// Velocity of the density pattern from two samples `delta_t` apart.
///
/// Takes the Pearson correlation of the two densities over their overlap for lags
/// up to half the pattern period `π/|k̄|` each way, refines the best
/// lag parabolically and divides the shift by `delta_t`. A maximum on the
/// edge of that window means the true shift is out of range.
pub fn measure_drift_velocity(
    density_a: &[f64],
    density_b: &[f64],
    grid: &Grid1D,
    delta_t: f64,
    k_bar: f64,
) -> Result<f64> {
    if k_bar == 0.0 {
        return Err(Error::FlatPattern);
    }
    if !(delta_t > 0.0) {
        return Err(Error::Domain(format!("delta_t must be > 0, got {delta_t}")));
    }
    let n = grid.n();
    if density_a.len() != n || density_b.len() != n {
        return Err(Error::InvalidGrid("density arrays must match the grid".into()));
    }
    let h = grid.spacing();
    let half_period = PI / (2.0 * k_bar.abs());
    let max_lag = ((half_period / h).floor() as usize).min(n / 2);
    if max_lag < 2 {
        return Err(Error::GridTooSmall { needed: 2, got: max_lag });
    }

    // Pearson correlation over the overlap of the two arrays at a given lag
    let corr = |lag: isize| -> f64 {
        let (a0, b0) = if lag >= 0 { (0, lag as usize) } else { ((-lag) as usize, 0) };
        let count = n - lag.unsigned_abs();
        let a = &density_a[a0..a0 + count];
        let b = &density_b[b0..b0 + count];
        let ma = a.iter().sum::<f64>() / count as f64;
        let mb = b.iter().sum::<f64>() / count as f64;
        let (mut ab, mut aa, mut bb) = (0.0, 0.0, 0.0);
        for (x, y) in a.iter().zip(b) {
            let (dx, dy) = (x - ma, y - mb);
            ab += dx * dy;
            aa += dx * dx;
            bb += dy * dy;
        }
        if aa == 0.0 || bb == 0.0 {
            0.0
        } else {
            ab / (aa * bb).sqrt()
        }
    };

    let lags: Vec<isize> = (-(max_lag as isize)..=max_lag as isize).collect();
    let values: Vec<f64> = lags.iter().map(|&l| corr(l)).collect();
    let (best, _) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty lag range");
    if best == 0 || best == values.len() - 1 {
        return Err(Error::AliasedShift {
            limit: max_lag as f64 * h,
        });
    }
    let offset = spectral::parabolic_offset(values[best - 1], values[best], values[best + 1]);
    let shift = (lags[best] as f64 + offset) * h;
    Ok(shift / delta_t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Frame;
    use crate::analytic::{probability_density, PlaneWaveScattering};
    use num_complex::Complex64;

    fn tone(k: f64, grid: Grid1D) -> FieldSnapshot {
        FieldSnapshot::sample(0.0, Frame::Lab, 0.0, grid, |x| Complex64::cis(k * x))
    }

    #[test]
    fn peak_of_single_tone() {
        let grid = Grid1D::new(0.0, 80.0, 1601).unwrap();
        let est = estimate_peak_wavenumber(&tone(3.2, grid), 0.0, 80.0).unwrap();
        assert!((est.k_peak - 3.2).abs() < 0.02, "{est:?}");
        assert!((est.k_peak - 3.2).abs() < est.resolution / 10.0);
        assert!((est.amplitude - 1.0).abs() < 0.01);
        let conj = FieldSnapshot::sample(0.0, Frame::Lab, 0.0, grid, |x| Complex64::cis(-3.2 * x));
        let est = estimate_peak_wavenumber(&conj, 0.0, 80.0).unwrap();
        assert!((est.k_peak + 3.2).abs() < 0.02, "{est:?}");
    }

    #[test]
    fn peak_errors() {
        let grid = Grid1D::new(0.0, 80.0, 1601).unwrap();
        let zero = FieldSnapshot::sample(0.0, Frame::Lab, 0.0, grid, |_| Complex64::new(0.0, 0.0));
        assert_eq!(estimate_peak_wavenumber(&zero, 0.0, 80.0), Err(Error::NoSignal));
        assert!(matches!(
            estimate_peak_wavenumber(&tone(1.0, grid), 10.0, 11.0),
            Err(Error::RegionTooSmall { got: 21, .. })
        ));
        assert!(matches!(
            estimate_peak_wavenumber(&tone(1.0, grid), 90.0, 100.0),
            Err(Error::RegionTooSmall { .. })
        ));
    }

    #[test]
    fn drift_of_identical_arrays_is_zero() {
        let grid = Grid1D::new(-20.0, 0.0, 2001).unwrap();
        let s = PlaneWaveScattering::new(2.0, 1.5, PhysicalParams::default()).unwrap();
        let d: Vec<f64> = grid.nodes().map(|x| probability_density(x, 0.0, &s)).collect();
        let v = measure_drift_velocity(&d, &d, &grid, 0.3, s.k_bar()).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn drift_of_standing_pattern() {
        let grid = Grid1D::new(-20.0, 0.0, 2001).unwrap();
        let s = PlaneWaveScattering::new(2.0, 1.5, PhysicalParams::default()).unwrap();
        let a: Vec<f64> = grid.nodes().map(|x| probability_density(x, 0.0, &s)).collect();
        let b: Vec<f64> = grid.nodes().map(|x| probability_density(x, 0.05, &s)).collect();
        let v = measure_drift_velocity(&a, &b, &grid, 0.05, s.k_bar()).unwrap();
        assert!((v - 1.5).abs() < 0.1, "{v}");
    }

    #[test]
    fn drift_errors() {
        let grid = Grid1D::new(-20.0, 0.0, 2001).unwrap();
        let flat = vec![0.0; 2001];
        assert_eq!(
            measure_drift_velocity(&flat, &flat, &grid, 0.1, 0.0),
            Err(Error::FlatPattern)
        );
        // pattern moved by half a period: maxima sit on both search edges
        let k_bar = 0.5;
        let a: Vec<f64> = grid.nodes().map(|x| (k_bar * x).sin().powi(2)).collect();
        let b: Vec<f64> = grid
            .nodes()
            .map(|x| (k_bar * (x - 0.5 * PI / k_bar)).sin().powi(2))
            .collect();
        assert!(matches!(
            measure_drift_velocity(&a, &b, &grid, 1.0, k_bar),
            Err(Error::AliasedShift { .. })
        ));
        assert!(measure_drift_velocity(&a, &b, &grid, 0.0, k_bar).is_err());
    }

    #[test]
    fn row_pass_logic() {
        let mut row = DopplerRow {
            v: 0.0,
            k_predicted: -5.0,
            k_measured: Some(-5.05),
            relative_error: Some(0.01),
            regime: RegimeClass::CounterPropagating,
            skipped_reason: None,
            resolution: Some(0.2),
        };
        assert!(row.passes());
        row.k_measured = Some(-5.3);
        assert!(!row.passes());
        row.k_measured = Some(5.0);
        assert!(!row.sign_consistent());
        row.k_measured = None;
        row.skipped_reason = Some("NoCollision".into());
        assert!(row.passes());
    }

    #[test]
    fn report_json_uses_fixed_field_names() {
        let report = DopplerReport {
            k0: 5.0,
            hbar: 1.0,
            mass: 1.0,
            rows: vec![DopplerRow {
                v: 5.0,
                k_predicted: 5.0,
                k_measured: None,
                relative_error: None,
                regime: RegimeClass::Degenerate,
                skipped_reason: Some("NoCollision".into()),
                resolution: None,
            }],
        };
        let json = serde_json::to_value(&report).unwrap();
        let row = &json["rows"][0];
        let mut keys: Vec<_> = row.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(
            keys,
            ["k_measured", "k_predicted", "regime", "relative_error", "skipped_reason", "v"]
        );
        assert_eq!(row["regime"], "Degenerate");
        assert!(row["k_measured"].is_null());
    }
}

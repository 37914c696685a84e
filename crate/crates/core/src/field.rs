use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid1D;

/// Reference frame a field is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    /// Laboratory frame, wall at `x = v t`.
    Lab,
    /// Frame translating with the wall, wall at `x̄ = 0`.
    Comoving,
}

impl Frame {
    pub fn name(self) -> &'static str {
        match self {
            Frame::Lab => "lab",
            Frame::Comoving => "comoving",
        }
    }
}

/// Complex field sampled on a grid at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSnapshot {
    pub time: f64,
    pub frame: Frame,
    pub wall_velocity: f64,
    pub grid: Grid1D,
    pub values: Vec<Complex64>,
}

impl FieldSnapshot {
    pub fn new(
        time: f64,
        frame: Frame,
        wall_velocity: f64,
        grid: Grid1D,
        values: Vec<Complex64>,
    ) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::InvalidGrid(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.n()
            )));
        }
        Ok(Self {
            time,
            frame,
            wall_velocity,
            grid,
            values,
        })
    }

    /// Samples `f(x)` at every grid node.
    pub fn sample(
        time: f64,
        frame: Frame,
        wall_velocity: f64,
        grid: Grid1D,
        f: impl Fn(f64) -> Complex64,
    ) -> Self {
        let values = grid.nodes().map(f).collect();
        Self {
            time,
            frame,
            wall_velocity,
            grid,
            values,
        }
    }

    pub fn expect_frame(&self, frame: Frame) -> Result<()> {
        if self.frame == frame {
            Ok(())
        } else {
            Err(Error::FrameMismatch {
                expected: frame.name(),
                found: self.frame.name(),
            })
        }
    }

    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Discrete L² norm squared, `Σ |ψᵢ|² h`.
    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.grid.spacing()
    }

    /// Density-weighted mean position and RMS width.
    pub fn centroid_and_width(&self) -> (f64, f64) {
        let mut total = 0.0;
        let mut first = 0.0;
        for (x, z) in self.grid.nodes().zip(&self.values) {
            let d = z.norm_sqr();
            total += d;
            first += x * d;
        }
        if total == 0.0 {
            return (f64::NAN, f64::NAN);
        }
        let mean = first / total;
        let second: f64 = self
            .grid
            .nodes()
            .zip(&self.values)
            .map(|(x, z)| (x - mean).powi(2) * z.norm_sqr())
            .sum();
        (mean, (second / total).sqrt())
    }
}

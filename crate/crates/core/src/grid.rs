use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform one-dimensional grid with `n` nodes on `[x_min, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_min >= x_max {
            return Err(Error::InvalidGrid(format!(
                "need finite x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n < 3 {
            return Err(Error::GridTooSmall { needed: 3, got: n });
        }
        Ok(Self { x_min, x_max, n })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n - 1) as f64
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn node(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.x_max
        } else {
            self.x_min + i as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.node(i))
    }

    /// Index of the node closest to `x`, clamped to the grid.
    pub fn nearest(&self, x: f64) -> usize {
        let t = ((x - self.x_min) / self.spacing()).round();
        if t <= 0.0 {
            0
        } else {
            (t as usize).min(self.n - 1)
        }
    }

    /// Same spacing and node count, translated by `dx`.
    pub fn shifted(&self, dx: f64) -> Self {
        Self {
            x_min: self.x_min + dx,
            x_max: self.x_max + dx,
            n: self.n,
        }
    }
}

// Deserialization bypasses `new`; callers that read grids from files call this.
impl Grid1D {
    pub fn validate(&self) -> Result<()> {
        Grid1D::new(self.x_min, self.x_max, self.n).map(|_| ())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_are_uniform_and_hit_both_ends() {
        let g = Grid1D::new(-2.0, 2.0, 5).unwrap();
        let xs: Vec<f64> = g.nodes().collect();
        assert_eq!(xs, vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert_eq!(g.spacing(), 1.0);
    }

    #[test]
    fn rejects_degenerate_grids() {
        assert!(matches!(
            Grid1D::new(0.0, 1.0, 2),
            Err(Error::GridTooSmall { .. })
        ));
        assert!(Grid1D::new(1.0, 1.0, 10).is_err());
        assert!(Grid1D::new(f64::NAN, 1.0, 10).is_err());
    }

    #[test]
    fn nearest_clamps() {
        let g = Grid1D::new(0.0, 10.0, 11).unwrap();
        assert_eq!(g.nearest(-5.0), 0);
        assert_eq!(g.nearest(3.4), 3);
        assert_eq!(g.nearest(99.0), 10);
    }
}

use crate::error::{Error, Result};

/// Smallest grid any kernel accepts.
pub const MIN_GRID_LEN: usize = 9;

/// Nodes at each end excluded from verdict statistics (one-sided stencils).
pub const BOUNDARY_NODES: usize = 4;

/// Uniformly spaced, strictly increasing sample parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleGrid {
    start: f64,
    step: f64,
    len: usize,
}

impl SampleGrid {
    /// `len` nodes spanning `[start, end]`.
    pub fn new(start: f64, end: f64, len: usize) -> Result<Self> {
        if len < MIN_GRID_LEN {
            return Err(Error::GridTooShort {
                got: len,
                need: MIN_GRID_LEN,
            });
        }
        if !(start.is_finite() && end.is_finite() && start < end) {
            return Err(Error::InvalidGrid(format!("bad interval [{start}, {end}]")));
        }
        Ok(Self {
            start,
            step: (end - start) / (len - 1) as f64,
            len,
        })
    }

    /// Recovers the grid behind explicit sample values, checking uniform spacing.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        if values.len() < MIN_GRID_LEN {
            return Err(Error::GridTooShort {
                got: values.len(),
                need: MIN_GRID_LEN,
            });
        }
        let grid = Self::new(values[0], values[values.len() - 1], values.len())?;
        let scale = values[0].abs().max(values[values.len() - 1].abs()).max(grid.step);
        for (i, w) in values.windows(2).enumerate() {
            let h = w[1] - w[0];
            if !(h > 0.0) {
                return Err(Error::InvalidGrid(format!(
                    "values not strictly increasing at index {}",
                    i + 1
                )));
            }
            // Spacing tolerance: 1e-12 relative, with room for decimal round-off
            // of the stored values themselves.
            if (h - grid.step).abs() > 1e-12 * grid.step + 64.0 * f64::EPSILON * scale {
                return Err(Error::InvalidGrid(format!(
                    "non-uniform spacing at index {}: {h} vs {}",
                    i + 1,
                    grid.step
                )));
            }
        }
        Ok(grid)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.s(self.len - 1)
    }

    pub fn s(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.len).map(|i| self.s(i)).collect()
    }

    /// Indices kept for statistics: everything except the boundary nodes.
    pub fn interior(&self) -> std::ops::Range<usize> {
        BOUNDARY_NODES..self.len - BOUNDARY_NODES
    }

    /// Fractional node index of parameter `s`, if it lies inside the grid.
    pub fn position_of(&self, s: f64) -> Option<f64> {
        let p = (s - self.start) / self.step;
        let last = (self.len - 1) as f64;
        if p >= -1e-9 && p <= last + 1e-9 {
            Some(p.clamp(0.0, last))
        } else {
            None
        }
    }
}

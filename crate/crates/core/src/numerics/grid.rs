use crate::error::{Error, Result};
use crate::field::Interval;

/// Uniform node set on `[-L, L]`, closed under negation.
///
/// Node `i` and node `len - 1 - i` are exact negatives of each other, so a
/// reflected value `x(-t)` is a table lookup.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    nodes: Vec<f64>,
    step: f64,
}

impl Grid {
    /// `n` nodes on `[-half, half]`; `n` must be odd and at least 3.
    pub fn symmetric(half: f64, n: usize) -> Result<Self> {
        if n < 3 || n % 2 == 0 {
            return Err(Error::Domain(format!("grid size must be odd and >= 3, got {n}")));
        }
        if !(half > 0.0 && half.is_finite()) {
            return Err(Error::Domain(format!("grid half-width must be positive, got {half}")));
        }
        let m = (n - 1) as f64;
        let nodes = (0..n)
            .map(|i| half * ((2 * i) as f64 - m) / m)
            .collect();
        Ok(Self {
            nodes,
            step: 2.0 * half / m,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn half_width(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    pub fn interval(&self) -> Interval {
        Interval::symmetric(self.half_width())
    }

    /// Index of the node `-nodes[i]`.
    #[inline]
    pub fn mirror(&self, i: usize) -> usize {
        self.nodes.len() - 1 - i
    }

    /// Index of the node `0`.
    pub fn center(&self) -> usize {
        self.nodes.len() / 2
    }

    /// Same half-width with twice as many cells.
    pub fn refined(&self) -> Self {
        Self::symmetric(self.half_width(), 2 * self.nodes.len() - 1)
            .expect("refining a valid grid")
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Model parameters: the tree degree `d` and the stifling threshold `k`.
///
/// On the tree every vertex has `d + 1` neighbors: the root has `d + 1`
/// children, every other vertex one parent and `d` children. A spreader
/// stops propagating after its `k`-th stifling experience.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelParams {
    d: u32,
    k: u32,
}

impl ModelParams {
    /// Validates `d >= 2` and `k >= 1`. The line graph `d = 1` is
    /// rejected: the informed set is then bounded by a sum of two
    /// geometric variables and nothing here applies.
    pub fn new(d: u32, k: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDegree(d));
        }
        if k < 1 {
            return Err(Error::InvalidStiflingThreshold(k));
        }
        Ok(ModelParams { d, k })
    }

    #[must_use]
    pub fn degree(&self) -> u32 {
        self.d
    }

    #[must_use]
    pub fn stifling_threshold(&self) -> u32 {
        self.k
    }

    /// Number of neighbors of any vertex, `d + 1`.
    #[must_use]
    pub fn neighbor_count(&self) -> u32 {
        self.d + 1
    }
}

impl std::fmt::Display for ModelParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(d={}, k={})", self.d, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_line_graph() {
        assert!(matches!(ModelParams::new(1, 1), Err(Error::InvalidDegree(1))));
        assert!(matches!(ModelParams::new(0, 3), Err(Error::InvalidDegree(0))));
    }

    #[test]
    fn rejects_zero_stifling() {
        assert!(matches!(
            ModelParams::new(2, 0),
            Err(Error::InvalidStiflingThreshold(0))
        ));
    }

    #[test]
    fn accepts_valid() {
        let p = ModelParams::new(2, 1).unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.stifling_threshold(), 1);
        assert_eq!(p.neighbor_count(), 3);
    }
}

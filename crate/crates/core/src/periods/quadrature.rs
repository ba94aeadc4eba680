//! Gauss–Chebyshev quadrature of the first kind.
//!
//! ∫₋₁¹ h(t) / √(1 − t²) dt ≈ (π/n) Σ h(cos((2i − 1)π / 2n)), exact for
//! polynomial h of degree < 2n and geometrically convergent for h analytic
//! on a neighbourhood of [−1, 1].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    /// Target absolute error per entry.
    pub tolerance: f64,
    pub initial_order: usize,
    pub max_order: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            tolerance: 1e-10,
            initial_order: 16,
            max_order: 1 << 16,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.initial_order < 4 || self.max_order < self.initial_order {
            return Err(Error::Parse(format!(
                "quadrature order must satisfy 4 <= initial ({}) <= max ({})",
                self.initial_order, self.max_order
            )));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::Parse(format!("invalid tolerance {}", self.tolerance)));
        }
        Ok(())
    }
}

/// Nodes of the n-point rule; every weight equals π/n.
pub fn chebyshev_nodes(n: usize) -> impl Iterator<Item = f64> {
    let step = std::f64::consts::PI / (2 * n) as f64;
    (1..=n).map(move |i| ((2 * i - 1) as f64 * step).cos())
}

pub fn chebyshev_weight(n: usize) -> f64 {
    std::f64::consts::PI / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rule(n: usize, h: impl Fn(f64) -> f64) -> f64 {
        chebyshev_weight(n) * chebyshev_nodes(n).map(h).sum::<f64>()
    }

    #[test]
    fn exact_on_low_degree_polynomials() {
        // ∫ t^{2k} / √(1−t²) = π (2k−1)!! / (2k)!!
        assert!((rule(4, |_| 1.0) - PI).abs() < 1e-15);
        assert!((rule(4, |t| t * t) - PI / 2.0).abs() < 1e-15);
        assert!((rule(4, |t| t.powi(4)) - 3.0 * PI / 8.0).abs() < 1e-15);
        assert!(rule(4, |t| t.powi(5)).abs() < 1e-15);
    }

    #[test]
    fn analytic_integrand_converges() {
        // ∫ e^t / √(1−t²) dt = π I₀(1)
        let i0_of_1 = 1.266_065_877_752_008_4;
        assert!((rule(12, f64::exp) - PI * i0_of_1).abs() < 1e-14);
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::default().validate().is_ok());
        let bad = QuadratureConfig {
            initial_order: 2,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}

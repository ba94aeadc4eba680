//! The U(1) Goldman flow Ξ_s of a simple closed curve with class c.
//!
//! In holonomy coordinates the flow is θ_j ↦ θ_j + s·⟨λ_j, c⟩ (mod 1). When
//! c = λ₂ this moves θ₁ by +s and nothing else; when c = 0 it is the
//! identity. On ℂ^g it is translation by s·Σ_j ⟨λ_j, c⟩ F(λ_j), which for
//! c = λ₂ is z ↦ z + sF(λ₁).

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{complete_to_symplectic_basis, HomologyClass};
use crate::jacobian::{
    complex_structure_matrix, reduce_mod_lattice, v_to_z, wrap_centered, wrap_unit, HolonomyPoint, JacobianPointZ,
    Lattice, TorusPointV,
};

/// Default finite-difference step for [`cr_defect`].
pub const DEFAULT_CR_STEP: f64 = 1e-4;

/// Stencil displacements beyond this are treated as wrap artifacts.
pub const MAX_STENCIL_DISPLACEMENT: f64 = 0.25;

/// Flow time s ∈ ℝ/ℤ, stored reduced to [0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct FlowParameter(f64);

impl FlowParameter {
    pub fn new(s: f64) -> Result<Self> {
        if !s.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(FlowParameter(wrap_unit(s)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// s + t (mod 1).
impl std::ops::Add for FlowParameter {
    type Output = FlowParameter;

    fn add(self, other: FlowParameter) -> FlowParameter {
        FlowParameter(wrap_unit(self.0 + other.0))
    }
}

impl TryFrom<f64> for FlowParameter {
    type Error = Error;

    fn try_from(s: f64) -> Result<Self> {
        FlowParameter::new(s)
    }
}

impl From<FlowParameter> for f64 {
    fn from(s: FlowParameter) -> f64 {
        s.0
    }
}

fn check_rank(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// θ + k·s (mod 1) with the integer multiple reduced first.
fn rotate(theta: f64, k: i64, s: f64) -> f64 {
    if k == 0 {
        return theta;
    }
    wrap_unit(theta + (k as f64 * s).rem_euclid(1.0))
}

/// θ_j ↦ θ_j + s·⟨λ_j, c⟩ (mod 1).
pub fn goldman_flow_holonomy(theta: &HolonomyPoint, c: &HomologyClass, s: FlowParameter) -> Result<HolonomyPoint> {
    check_rank(c.coeffs().len(), theta.len())?;
    let shifts = c.pairing_vector();
    HolonomyPoint::new(
        theta
            .angles()
            .iter()
            .zip(shifts)
            .map(|(&t, k)| rotate(t, k, s.value()))
            .collect(),
    )
}

/// The same flow computed by passing to a symplectic basis with λ′₂ = c and
/// rotating only the first holonomy there.
///
/// New holonomies are θ′ = Mᵀθ; the inverse transform is θ = M⁻ᵀθ′ with
/// M⁻ᵀ = −JMJ, all integer.
pub fn flow_via_basis_change(theta: &HolonomyPoint, c: &HomologyClass, s: FlowParameter) -> Result<HolonomyPoint> {
    check_rank(c.coeffs().len(), theta.len())?;
    let basis = complete_to_symplectic_basis(c)?;
    let m = basis.matrix();
    let n = m.dim();
    let angles = theta.angles();
    let mut adapted: Vec<f64> = (0..n)
        .map(|k| wrap_unit((0..n).map(|i| m.get(i, k) as f64 * angles[i]).sum()))
        .collect();
    adapted[0] = wrap_unit(adapted[0] + s.value());
    let back = basis.inverse()?.transpose();
    HolonomyPoint::new(
        (0..n)
            .map(|i| (0..n).map(|k| back.get(i, k) as f64 * adapted[k]).sum())
            .collect(),
    )
}

/// z ↦ z + s·Σ_j ⟨λ_j, c⟩ F(λ_j), reduced mod Λ.
pub fn goldman_flow_jacobian(
    z: &JacobianPointZ,
    c: &HomologyClass,
    s: FlowParameter,
    lattice: &Lattice,
) -> Result<JacobianPointZ> {
    check_rank(lattice.genus().rank(), c.coeffs().len())?;
    check_rank(lattice.genus().get(), z.len())?;
    if c.is_zero() {
        return Ok(z.clone());
    }
    let displacement: Vec<f64> = c.pairing_vector().into_iter().map(|k| s.value() * k as f64).collect();
    let shift = lattice.combine(&displacement)?;
    let moved = JacobianPointZ::new(z.coords().iter().zip(shift.coords()).map(|(a, b)| a + b).collect())?;
    reduce_mod_lattice(&moved, lattice)
}

/// Torus distance between the two routes around the square
/// holonomy flow → z-chart and z-chart → lattice translation.
pub fn flows_commute_check(
    theta: &HolonomyPoint,
    c: &HomologyClass,
    s: FlowParameter,
    lattice: &Lattice,
) -> Result<f64> {
    check_rank(lattice.genus().rank(), theta.len())?;
    let v = TorusPointV::new(theta.angles().to_vec())?;
    let via_holonomy = v_to_z(
        &TorusPointV::new(goldman_flow_holonomy(theta, c, s)?.angles().to_vec())?,
        lattice,
    )?;
    let via_lattice = goldman_flow_jacobian(&v_to_z(&v, lattice)?, c, s, lattice)?;
    lattice.torus_distance(&via_holonomy, &via_lattice)
}

/// Period and group-law defects of the holonomy flow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OneParameterDefects {
    /// d(Ξ₁(θ), θ)
    pub period_defect: f64,
    /// d(Ξ_s(Ξ_t(θ)), Ξ_{s+t}(θ))
    pub group_defect: f64,
}

pub fn one_parameter_laws(
    theta: &HolonomyPoint,
    c: &HomologyClass,
    s: FlowParameter,
    t: FlowParameter,
) -> Result<OneParameterDefects> {
    let full_turn = FlowParameter::new(1.0)?;
    let period_defect = goldman_flow_holonomy(theta, c, full_turn)?.distance(theta);
    let composed = goldman_flow_holonomy(&goldman_flow_holonomy(theta, c, t)?, c, s)?;
    let direct = goldman_flow_holonomy(theta, c, s + t)?;
    Ok(OneParameterDefects {
        period_defect,
        group_defect: composed.distance(&direct),
    })
}

/// Max over samples of ‖D·I_v − I_v·D‖_max, where D is the central-difference
/// Jacobian of `map` in v-coordinates.
///
/// Each stencil difference is unwrapped to its nearest representative; a
/// difference larger than [`MAX_STENCIL_DISPLACEMENT`] means the stencil
/// straddles a discontinuity of the chosen lift and the call fails.
pub fn cr_defect<F>(map: F, lattice: &Lattice, samples: &[TorusPointV], h: f64) -> Result<f64>
where
    F: Fn(&TorusPointV) -> Result<TorusPointV>,
{
    if !(h > 1e-7 && h < 1e-2) {
        return Err(Error::InvalidStep(h));
    }
    let structure = complex_structure_matrix(lattice)?;
    let n = lattice.genus().rank();
    let mut worst: f64 = 0.0;
    for sample in samples {
        check_rank(n, sample.len())?;
        let mut jac = DMatrix::<f64>::zeros(n, n);
        for k in 0..n {
            let mut plus = sample.coords().to_vec();
            let mut minus = plus.clone();
            plus[k] += h;
            minus[k] -= h;
            let f_plus = map(&TorusPointV::new(plus)?)?;
            let f_minus = map(&TorusPointV::new(minus)?)?;
            check_rank(n, f_plus.len())?;
            check_rank(n, f_minus.len())?;
            for r in 0..n {
                let diff = wrap_centered(f_plus.coords()[r] - f_minus.coords()[r]);
                if diff.abs() > MAX_STENCIL_DISPLACEMENT {
                    return Err(Error::CutLocus(diff));
                }
                jac[(r, k)] = diff / (2.0 * h);
            }
        }
        worst = worst.max(structure.commutator_defect(&jac));
    }
    Ok(worst)
}

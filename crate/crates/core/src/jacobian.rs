//! The complex torus ℂ^g/Λ and its three charts.
//!
//! * z: a representative in ℂ^g,
//! * v: real coordinates with z = Σ v_j F(λ_j), reduced to [0, 1),
//! * holonomy angles θ with Φ_j = exp(2πiθ_j).
//!
//! Real coordinates on ℂ^g are ordered (Re z₁, …, Re z_g, Im z₁, …, Im z_g).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::Genus;
use crate::periods::{
    condition_number, real_matrix, BasisCycle, HyperellipticCurve, PeriodMatrix, QuadratureConfig, DEGENERACY_THRESHOLD,
};

/// Values within this distance below 1 reduce to 0.
pub const WRAP_TIE: f64 = 1e-12;

/// Tolerance for lattice membership in v-coordinates.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-9;

/// Reduces to [0, 1), mapping values within [`WRAP_TIE`] of 1 to 0.
pub fn wrap_unit(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r >= 1.0 - WRAP_TIE {
        0.0
    } else {
        r
    }
}

/// Signed representative in [−½, ½].
pub fn wrap_centered(x: f64) -> f64 {
    x - x.round()
}

/// max_j |x_j − y_j| on ℝ^n/ℤ^n.
pub fn circle_distance(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| wrap_centered(a - b).abs())
        .fold(0.0, f64::max)
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// Point of ℝ^{2g}/ℤ^{2g} in lattice coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct TorusPointV {
    v: Vec<f64>,
}

impl TryFrom<Vec<f64>> for TorusPointV {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        TorusPointV::new(v)
    }
}

impl From<TorusPointV> for Vec<f64> {
    fn from(p: TorusPointV) -> Vec<f64> {
        p.v
    }
}

impl TorusPointV {
    pub fn new(v: Vec<f64>) -> Result<Self> {
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(TorusPointV {
            v: v.into_iter().map(wrap_unit).collect(),
        })
    }

    pub fn zero(genus: Genus) -> Self {
        TorusPointV {
            v: vec![0.0; genus.rank()],
        }
    }

    pub fn coords(&self) -> &[f64] {
        &self.v
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }
}

/// Holonomy angles θ_j ∈ [0, 1) with Φ_j = exp(2πiθ_j).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct HolonomyPoint {
    theta: Vec<f64>,
}

impl TryFrom<Vec<f64>> for HolonomyPoint {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        HolonomyPoint::new(v)
    }
}

impl From<HolonomyPoint> for Vec<f64> {
    fn from(p: HolonomyPoint) -> Vec<f64> {
        p.theta
    }
}

impl HolonomyPoint {
    pub fn new(theta: Vec<f64>) -> Result<Self> {
        if theta.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(HolonomyPoint {
            theta: theta.into_iter().map(wrap_unit).collect(),
        })
    }

    pub fn zero(genus: Genus) -> Self {
        HolonomyPoint {
            theta: vec![0.0; genus.rank()],
        }
    }

    pub fn angles(&self) -> &[f64] {
        &self.theta
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    /// The U(1) elements exp(2πiθ_j).
    pub fn unit_values(&self) -> Vec<Complex64> {
        self.theta
            .iter()
            .map(|&t| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t))
            .collect()
    }

    pub fn distance(&self, other: &HolonomyPoint) -> f64 {
        circle_distance(&self.theta, &other.theta)
    }
}

/// A representative z ∈ ℂ^g.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JacobianPointZ {
    z: Vec<Complex64>,
}

impl JacobianPointZ {
    pub fn new(z: Vec<Complex64>) -> Result<Self> {
        if z.iter().any(|w| !w.re.is_finite() || !w.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(JacobianPointZ { z })
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.z
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }
}

/// Λ = span_ℤ {F(λ₁), …, F(λ_{2g})} with its real matrix pre-factored.
#[derive(Debug, Clone)]
pub struct Lattice {
    genus: Genus,
    generators: Vec<Vec<Complex64>>,
    real: DMatrix<f64>,
    real_inverse: DMatrix<f64>,
    condition_number: f64,
}

impl Lattice {
    /// `generators[j]` is F(λ_{j+1}); there must be 2g vectors of length g.
    pub fn new(generators: Vec<Vec<Complex64>>) -> Result<Self> {
        let g = generators.first().map_or(0, Vec::len);
        let genus = Genus::new(g)?;
        check_len(2 * g, generators.len())?;
        for gen in &generators {
            check_len(g, gen.len())?;
            if gen.iter().any(|w| !w.re.is_finite() || !w.im.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        let real = real_matrix(&generators);
        let condition_number = condition_number(&real);
        // NaN counts as degenerate.
        if condition_number.is_nan() || condition_number > DEGENERACY_THRESHOLD {
            return Err(Error::IllConditioned(condition_number));
        }
        let real_inverse = real
            .clone()
            .try_inverse()
            .ok_or(Error::IllConditioned(condition_number))?;
        Ok(Lattice {
            genus,
            generators,
            real,
            real_inverse,
            condition_number,
        })
    }

    pub fn from_period_matrix(periods: &PeriodMatrix) -> Result<Self> {
        Lattice::new(periods.vectors())
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn generators(&self) -> &[Vec<Complex64>] {
        &self.generators
    }

    /// P_real: v ↦ (Re z; Im z).
    pub fn real_matrix(&self) -> &DMatrix<f64> {
        &self.real
    }

    pub fn condition_number(&self) -> f64 {
        self.condition_number
    }

    fn to_real(&self, z: &[Complex64]) -> DVector<f64> {
        let g = self.genus.get();
        DVector::from_fn(2 * g, |row, _| if row < g { z[row].re } else { z[row - g].im })
    }

    /// Unreduced real coordinates of z.
    pub fn raw_v(&self, z: &JacobianPointZ) -> Result<Vec<f64>> {
        check_len(self.genus.get(), z.len())?;
        Ok((&self.real_inverse * self.to_real(&z.z)).iter().copied().collect())
    }

    /// Σ v_j F(λ_j) for arbitrary real coefficients.
    pub fn combine(&self, v: &[f64]) -> Result<JacobianPointZ> {
        check_len(self.genus.rank(), v.len())?;
        let mut z = vec![Complex64::new(0.0, 0.0); self.genus.get()];
        for (coef, gen) in v.iter().zip(&self.generators) {
            for (acc, w) in z.iter_mut().zip(gen) {
                *acc += w * coef;
            }
        }
        Ok(JacobianPointZ { z })
    }

    /// ‖(z₁ − z₂) mod Λ‖ measured as the largest wrapped v-coordinate.
    pub fn torus_distance(&self, a: &JacobianPointZ, b: &JacobianPointZ) -> Result<f64> {
        check_len(self.genus.get(), a.len())?;
        check_len(self.genus.get(), b.len())?;
        let diff = JacobianPointZ {
            z: a.z.iter().zip(&b.z).map(|(x, y)| x - y).collect(),
        };
        Ok(self
            .raw_v(&diff)?
            .into_iter()
            .map(|x| wrap_centered(x).abs())
            .fold(0.0, f64::max))
    }

    /// Whether z lies in Λ to [`MEMBERSHIP_TOLERANCE`] in v-coordinates.
    pub fn contains(&self, z: &JacobianPointZ) -> Result<bool> {
        let origin = JacobianPointZ {
            z: vec![Complex64::new(0.0, 0.0); self.genus.get()],
        };
        Ok(self.torus_distance(z, &origin)? < MEMBERSHIP_TOLERANCE)
    }
}

/// z = Σ v_j F(λ_j).
pub fn v_to_z(v: &TorusPointV, lattice: &Lattice) -> Result<JacobianPointZ> {
    lattice.combine(&v.v)
}

/// Solves the real system for v and reduces mod 1.
pub fn z_to_v(z: &JacobianPointZ, lattice: &Lattice) -> Result<TorusPointV> {
    TorusPointV::new(lattice.raw_v(z)?)
}

/// The identity on angle representatives: z_j = exp(2πiv_j).
pub fn v_to_holonomy(v: &TorusPointV) -> HolonomyPoint {
    HolonomyPoint { theta: v.v.clone() }
}

pub fn holonomy_to_v(theta: &HolonomyPoint) -> TorusPointV {
    TorusPointV { v: theta.theta.clone() }
}

/// The representative with v-coordinates in [0, 1).
pub fn reduce_mod_lattice(z: &JacobianPointZ, lattice: &Lattice) -> Result<JacobianPointZ> {
    v_to_z(&z_to_v(z, lattice)?, lattice)
}

/// Multiplication by i on ℂ^g written in v-coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexStructureMatrix {
    matrix: DMatrix<f64>,
}

impl ComplexStructureMatrix {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// ‖I_v² + Id‖_max
    pub fn square_defect(&self) -> f64 {
        let n = self.matrix.nrows();
        (&self.matrix * &self.matrix + DMatrix::<f64>::identity(n, n)).amax()
    }

    /// ‖D·I_v − I_v·D‖_max
    pub fn commutator_defect(&self, d: &DMatrix<f64>) -> f64 {
        (d * &self.matrix - &self.matrix * d).amax()
    }
}

/// I_v = P_real⁻¹ · [[0, −Id], [Id, 0]] · P_real.
pub fn complex_structure_matrix(lattice: &Lattice) -> Result<ComplexStructureMatrix> {
    let g = lattice.genus.get();
    let rotation = DMatrix::from_fn(2 * g, 2 * g, |r, c| {
        if r >= g && c + g == r {
            1.0
        } else if r < g && r + g == c {
            -1.0
        } else {
            0.0
        }
    });
    let matrix = &lattice.real_inverse * rotation * &lattice.real;
    let result = ComplexStructureMatrix { matrix };
    let defect = result.square_defect();
    if defect > 1e-10 * lattice.condition_number.max(1.0) {
        return Err(Error::IllConditioned(lattice.condition_number));
    }
    Ok(result)
}

/// A lattice together with what produced it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeFile {
    pub curve: HyperellipticCurve,
    pub contours: Vec<BasisCycle>,
    pub quadrature: QuadratureConfig,
    pub periods: PeriodMatrix,
}

impl LatticeFile {
    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::from_period_matrix(&self.periods)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn square() -> Lattice {
        Lattice::new(vec![vec![c(1.0, 0.0)], vec![c(0.0, 1.0)]]).unwrap()
    }

    fn skew_genus_two() -> Lattice {
        Lattice::new(vec![
            vec![c(1.0, 0.2), c(0.1, -0.3)],
            vec![c(0.4, 1.3), c(-0.2, 0.5)],
            vec![c(0.0, 0.1), c(0.9, 0.2)],
            vec![c(0.3, -0.1), c(0.6, 1.1)],
        ])
        .unwrap()
    }

    #[test]
    fn wrapping() {
        assert_eq!(wrap_unit(1.0), 0.0);
        assert_eq!(wrap_unit(-0.25), 0.75);
        assert_eq!(wrap_unit(1.0 - 1e-13), 0.0);
        assert_eq!(wrap_unit(-1e-20), 0.0);
        assert_eq!(wrap_unit(0.5), 0.5);
        assert!((wrap_centered(0.75) + 0.25).abs() < 1e-15);
    }

    #[test]
    fn v_to_z_basics() {
        let lat = skew_genus_two();
        let zero = v_to_z(&TorusPointV::zero(lat.genus()), &lat).unwrap();
        assert!(zero.coords().iter().all(|w| w.norm() == 0.0));
        for j in 0..4 {
            let mut e = vec![0.0; 4];
            e[j] = 0.5;
            let z = lat.combine(&e).unwrap();
            for (w, f) in z.coords().iter().zip(&lat.generators()[j]) {
                assert!((w - f * 0.5).norm() < 1e-15);
            }
        }
        let half = v_to_z(&TorusPointV::new(vec![0.5, 0.5, 0.0, 0.0]).unwrap(), &lat).unwrap();
        for k in 0..2 {
            let expected = (lat.generators()[0][k] + lat.generators()[1][k]) / 2.0;
            assert!((half.coords()[k] - expected).norm() < 1e-15);
        }
    }

    #[test]
    fn z_to_v_wraps_generators_to_zero() {
        let lat = skew_genus_two();
        let z = JacobianPointZ::new(lat.generators()[0].clone()).unwrap();
        let v = z_to_v(&z, &lat).unwrap();
        assert!(circle_distance(v.coords(), &[0.0; 4]) < 1e-12);
        assert!(lat.contains(&z).unwrap());
    }

    #[test]
    fn reduction_is_idempotent_and_periodic() {
        let lat = skew_genus_two();
        let z = JacobianPointZ::new(vec![c(3.7, -2.1), c(-0.4, 5.5)]).unwrap();
        let r = reduce_mod_lattice(&z, &lat).unwrap();
        let rr = reduce_mod_lattice(&r, &lat).unwrap();
        assert!(lat.torus_distance(&r, &rr).unwrap() < 1e-12);
        for (a, b) in r.coords().iter().zip(rr.coords()) {
            assert!((a - b).norm() < 1e-12);
        }
        let shifted = JacobianPointZ::new(
            z.coords()
                .iter()
                .zip(&lat.generators()[0])
                .map(|(a, b)| a + b)
                .collect(),
        )
        .unwrap();
        let rs = reduce_mod_lattice(&shifted, &lat).unwrap();
        for (a, b) in r.coords().iter().zip(rs.coords()) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn square_lattice_complex_structure() {
        let iv = complex_structure_matrix(&square()).unwrap();
        assert_eq!(iv.matrix(), &DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]));
    }

    #[test]
    fn complex_structure_squares_to_minus_one() {
        let iv = complex_structure_matrix(&skew_genus_two()).unwrap();
        assert!(iv.square_defect() < 1e-10);
        // Eigenvalues ±i, g each: trace 0, and the characteristic polynomial is (λ²+1)^g.
        assert!(iv.matrix().trace().abs() < 1e-12);
        let det = iv.matrix().determinant();
        assert!((det - 1.0).abs() < 1e-10);
    }

    #[test]
    fn conjugate_lattice_negates_complex_structure() {
        let lat = skew_genus_two();
        let conj = Lattice::new(
            lat.generators()
                .iter()
                .map(|g| g.iter().map(|w| w.conj()).collect())
                .collect(),
        )
        .unwrap();
        let a = complex_structure_matrix(&lat).unwrap();
        let b = complex_structure_matrix(&conj).unwrap();
        assert!((a.matrix() + b.matrix()).amax() < 1e-12);
    }

    #[test]
    fn degenerate_lattice_rejected() {
        let err = Lattice::new(vec![vec![c(1.0, 0.0)], vec![c(2.0, 0.0)]]).unwrap_err();
        assert!(matches!(err, Error::IllConditioned(_)));
        assert!(matches!(
            Lattice::new(vec![vec![c(1.0, 0.0)]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn holonomy_chart() {
        let v = TorusPointV::new(vec![0.25, 0.0]).unwrap();
        let theta = v_to_holonomy(&v);
        assert_eq!(theta.angles(), &[0.25, 0.0]);
        assert!((theta.unit_values()[0] - Complex64::i()).norm() < 1e-15);
        assert_eq!(holonomy_to_v(&theta), v);
    }

    #[test]
    fn dimension_errors() {
        let lat = square();
        let z = JacobianPointZ::new(vec![c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(matches!(z_to_v(&z, &lat), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn point_json() {
        let z = JacobianPointZ::new(vec![c(1.0, -2.0)]).unwrap();
        assert_eq!(serde_json::to_string(&z).unwrap(), "[[1.0,-2.0]]");
        let v: TorusPointV = serde_json::from_str("[0.25, 0.5]").unwrap();
        assert_eq!(v.coords(), &[0.25, 0.5]);
    }
}

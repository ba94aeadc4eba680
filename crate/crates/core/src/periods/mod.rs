//! Period vectors F(λ) = (∫_λ ω₁, …, ∫_λ ω_g) of a hyperelliptic curve with
//! the differentials ω_k = x^{k−1} dx / y.
//!
//! A [`CycleContour`] is a thin loop around the straight segment joining two
//! branch points. On that segment, with x = m + h·t (t ∈ [−1, 1]), the
//! chosen sheet is
//!
//! ```text
//! y(t) = i·h · √(1 − t²) · G(t),    G(t)² = c ∏_{m ≠ ends} (x(t) − e_m),
//! ```
//!
//! with G seeded at the midpoint by the principal square root and continued
//! factor by factor. The loop integral is twice the segment integral, and
//! the √(1 − t²) is absorbed by Gauss–Chebyshev quadrature.

mod curve;
mod quadrature;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::Genus;

pub use curve::{genus_of, polynomial_roots, CurveSpec, HyperellipticCurve, DEFAULT_DISTINCT_TOLERANCE};
pub use quadrature::{chebyshev_nodes, chebyshev_weight, QuadratureConfig};

/// Condition number above which a period matrix counts as rank deficient.
pub const DEGENERACY_THRESHOLD: f64 = 1e12;

/// A loop encircling exactly two branch points, on a chosen sheet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleContour {
    pub encircled_pair: (usize, usize),
    pub sheet_sign: i8,
}

impl CycleContour {
    pub fn new(from: usize, to: usize, sheet_sign: i8) -> Result<Self> {
        if from == to {
            return Err(Error::InvalidContour(format!("pair ({from}, {to}) is not distinct")));
        }
        if sheet_sign != 1 && sheet_sign != -1 {
            return Err(Error::InvalidContour(format!("sheet sign {sheet_sign} is not ±1")));
        }
        Ok(CycleContour {
            encircled_pair: (from, to),
            sheet_sign,
        })
    }

    /// The same loop traversed backwards.
    pub fn reversed(self) -> Self {
        CycleContour {
            sheet_sign: -self.sheet_sign,
            ..self
        }
    }

    fn check(&self, curve: &HyperellipticCurve) -> Result<()> {
        let (a, b) = self.encircled_pair;
        let n = curve.degree();
        if a >= n || b >= n {
            return Err(Error::InvalidContour(format!(
                "pair ({a}, {b}) out of range for {n} branch points"
            )));
        }
        CycleContour::new(a, b, self.sheet_sign).map(|_| ())
    }
}

/// A homology cycle written as a sum of pair loops.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BasisCycle {
    pub loops: Vec<CycleContour>,
}

impl BasisCycle {
    pub fn single(contour: CycleContour) -> Self {
        BasisCycle { loops: vec![contour] }
    }

    pub fn reversed(&self) -> Self {
        BasisCycle {
            loops: self.loops.iter().map(|c| c.reversed()).collect(),
        }
    }
}

/// F(λ) together with a per-entry absolute error estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodVector {
    pub entries: Vec<Complex64>,
    pub errors: Vec<f64>,
    /// Largest quadrature order used for any constituent segment.
    pub order: usize,
}

impl PeriodVector {
    fn zero(g: usize) -> Self {
        PeriodVector {
            entries: vec![Complex64::new(0.0, 0.0); g],
            errors: vec![0.0; g],
            order: 0,
        }
    }

    fn accumulate(&mut self, other: &PeriodVector) {
        for k in 0..self.entries.len() {
            self.entries[k] += other.entries[k];
            self.errors[k] += other.errors[k];
        }
        self.order = self.order.max(other.order);
    }
}

/// Samples G(t) along the segment `from → to` (see the module docs).
struct Segment<'a> {
    curve: &'a HyperellipticCurve,
    ends: (usize, usize),
    mid: Complex64,
    half: Complex64,
    seed: Complex64,
    mid_offsets: Vec<Complex64>,
}

impl<'a> Segment<'a> {
    fn new(curve: &'a HyperellipticCurve, from: usize, to: usize) -> Self {
        let e = curve.branch_points();
        let mid = (e[from] + e[to]) * 0.5;
        let half = (e[to] - e[from]) * 0.5;
        let mid_offsets: Vec<Complex64> = e
            .iter()
            .enumerate()
            .filter(|&(m, _)| m != from && m != to)
            .map(|(_, &p)| mid - p)
            .collect();
        let square = mid_offsets.iter().fold(curve.leading(), |acc, d| acc * d);
        Segment {
            curve,
            ends: (from, to),
            mid,
            half,
            seed: square.sqrt(),
            mid_offsets,
        }
    }

    fn x(&self, t: f64) -> Complex64 {
        self.mid + self.half * t
    }

    fn g(&self, t: f64) -> Complex64 {
        let x = self.x(t);
        let e = self.curve.branch_points();
        let mut offsets = self.mid_offsets.iter();
        let mut value = self.seed;
        for (m, &p) in e.iter().enumerate() {
            if m == self.ends.0 || m == self.ends.1 {
                continue;
            }
            let at_mid = offsets.next().expect("one offset per remaining branch point");
            // The segment avoids p, so the ratio never crosses the negative axis.
            value *= ((x - p) / at_mid).sqrt();
        }
        value
    }

    /// Direction of y near the end t = ±1 on the chosen sheet, i.e. i·h·G(±1).
    fn end_direction(&self, end: f64) -> Complex64 {
        Complex64::i() * self.half * self.g(end)
    }

    /// ∫_{from}^{to} x^{k−1} dx / y for k = 1..g with an n-point rule.
    fn integrals(&self, n: usize, g: usize) -> Vec<Complex64> {
        let mut sums = vec![Complex64::new(0.0, 0.0); g];
        for t in chebyshev_nodes(n) {
            let x = self.x(t);
            let mut term = self.g(t).inv();
            for sum in sums.iter_mut() {
                *sum += term;
                term *= x;
            }
        }
        // dx / y = h dt / (i h √(1−t²) G) = −i dt / (√(1−t²) G)
        let factor = -Complex64::i() * chebyshev_weight(n);
        sums.into_iter().map(|s| s * factor).collect()
    }
}

/// Period vector of a single pair loop with a fixed quadrature order and no
/// error estimate. Exposed for convergence studies.
pub fn period_vector_at_order(
    curve: &HyperellipticCurve,
    contour: &CycleContour,
    order: usize,
) -> Result<Vec<Complex64>> {
    contour.check(curve)?;
    let (a, b) = contour.encircled_pair;
    let scale = 2.0 * contour.sheet_sign as f64;
    Ok(Segment::new(curve, a, b)
        .integrals(order, curve.genus().get())
        .into_iter()
        .map(|z| z * scale)
        .collect())
}

/// Integrates ω₁, …, ω_g over a pair loop, doubling the quadrature order
/// until successive estimates agree to the configured tolerance.
///
/// The reported error is the change from the previous order, floored at a
/// small multiple of the rounding level of the entry.
pub fn period_vector(
    curve: &HyperellipticCurve,
    contour: &CycleContour,
    cfg: &QuadratureConfig,
) -> Result<PeriodVector> {
    cfg.validate()?;
    contour.check(curve)?;
    let g = curve.genus().get();
    let (a, b) = contour.encircled_pair;
    let segment = Segment::new(curve, a, b);
    let scale = 2.0 * contour.sheet_sign as f64;

    let mut order = cfg.initial_order;
    let mut previous = segment.integrals(order, g);
    loop {
        let next_order = order * 2;
        if next_order > cfg.max_order {
            let estimate = previous
                .iter()
                .zip(segment.integrals(order / 2, g))
                .map(|(x, y)| (x - y).norm() * 2.0)
                .fold(0.0, f64::max);
            return Err(Error::ConvergenceFailure {
                estimate,
                tolerance: cfg.tolerance,
                order,
            });
        }
        let current = segment.integrals(next_order, g);
        let errors: Vec<f64> = current
            .iter()
            .zip(&previous)
            .map(|(x, y)| ((x - y).norm() * 2.0).max(64.0 * f64::EPSILON * x.norm() * 2.0))
            .collect();
        if errors.iter().all(|&e| e < cfg.tolerance) {
            return Ok(PeriodVector {
                entries: current.into_iter().map(|z| z * scale).collect(),
                errors,
                order: next_order,
            });
        }
        previous = current;
        order = next_order;
    }
}

/// Period vector of a sum of pair loops.
pub fn cycle_period(curve: &HyperellipticCurve, cycle: &BasisCycle, cfg: &QuadratureConfig) -> Result<PeriodVector> {
    let mut total = PeriodVector::zero(curve.genus().get());
    for contour in &cycle.loops {
        total.accumulate(&period_vector(curve, contour, cfg)?);
    }
    Ok(total)
}

/// Columns F(λ₁), …, F(λ_{2g}).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodMatrix {
    pub genus: Genus,
    pub columns: Vec<PeriodVector>,
    /// Condition number of the real 2g×2g matrix v ↦ Σ v_j F(λ_j).
    pub condition_number: f64,
}

impl PeriodMatrix {
    /// Builds a period matrix from raw columns, checking the real rank.
    pub fn from_columns(columns: Vec<PeriodVector>) -> Result<Self> {
        let g = columns.first().map_or(0, |c| c.entries.len());
        let genus = Genus::new(g)?;
        if columns.len() != 2 * g {
            return Err(Error::DimensionMismatch {
                expected: 2 * g,
                got: columns.len(),
            });
        }
        if let Some(bad) = columns.iter().find(|c| c.entries.len() != g) {
            return Err(Error::DimensionMismatch {
                expected: g,
                got: bad.entries.len(),
            });
        }
        if columns
            .iter()
            .flat_map(|c| &c.entries)
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let vectors: Vec<Vec<Complex64>> = columns.iter().map(|c| c.entries.clone()).collect();
        let condition_number = condition_number(&real_matrix(&vectors));
        if condition_number.is_nan() || condition_number > DEGENERACY_THRESHOLD {
            return Err(Error::DegeneratePeriodMatrix(condition_number));
        }
        Ok(PeriodMatrix {
            genus,
            columns,
            condition_number,
        })
    }

    pub fn vectors(&self) -> Vec<Vec<Complex64>> {
        self.columns.iter().map(|c| c.entries.clone()).collect()
    }

    /// Same matrix with every entry multiplied by `c`.
    pub fn scaled(&self, c: Complex64) -> Result<Self> {
        PeriodMatrix::from_columns(
            self.columns
                .iter()
                .map(|col| PeriodVector {
                    entries: col.entries.iter().map(|z| z * c).collect(),
                    errors: col.errors.iter().map(|e| e * c.norm()).collect(),
                    order: col.order,
                })
                .collect(),
        )
    }
}

/// Real 2g×2g matrix with column j = (Re F(λ_j); Im F(λ_j)).
pub(crate) fn real_matrix(vectors: &[Vec<Complex64>]) -> DMatrix<f64> {
    let g = vectors.first().map_or(0, Vec::len);
    DMatrix::from_fn(2 * g, vectors.len(), |row, col| {
        let z = vectors[col][row % g];
        if row < g {
            z.re
        } else {
            z.im
        }
    })
}

pub(crate) fn condition_number(m: &DMatrix<f64>) -> f64 {
    let sv = m.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

pub fn period_matrix(curve: &HyperellipticCurve, basis: &[BasisCycle], cfg: &QuadratureConfig) -> Result<PeriodMatrix> {
    let g = curve.genus().get();
    if basis.len() != 2 * g {
        return Err(Error::DimensionMismatch {
            expected: 2 * g,
            got: basis.len(),
        });
    }
    let columns = basis
        .iter()
        .map(|cycle| cycle_period(curve, cycle, cfg))
        .collect::<Result<Vec<_>>>()?;
    PeriodMatrix::from_columns(columns)
}

fn lexicographic(points: &[Complex64]) -> Vec<usize> {
    let scale = points.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let tie = 1e-9 * scale;
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (points[i], points[j]);
        if (a.re - b.re).abs() > tie {
            a.re.total_cmp(&b.re)
        } else {
            a.im.total_cmp(&b.im)
        }
    });
    order
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    (a.conj() * b).im
}

fn point_segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let t = (((p - a).conj() * d).re / d.norm_sqr()).clamp(0.0, 1.0);
    (p - (a + d * t)).norm()
}

fn segments_intersect(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let o1 = cross(b - a, c - a);
    let o2 = cross(b - a, d - a);
    let o3 = cross(d - c, a - c);
    let o4 = cross(d - c, b - c);
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        return true;
    }
    let eps = 1e-12 * (1.0 + a.norm() + b.norm() + c.norm() + d.norm());
    point_segment_distance(c, a, b) < eps
        || point_segment_distance(d, a, b) < eps
        || point_segment_distance(a, c, d) < eps
        || point_segment_distance(b, c, d) < eps
}

/// A symplectic basis of contours for branch points ordered by real part
/// (ties broken by imaginary part).
///
/// With p₀, p₁, … the ordered branch points, let c_k be the loop around the
/// segment [p_{k−1}, p_k] for k = 1..2g, with sheets chosen so that
/// ⟨c_k, c_{k+1}⟩ = +1 along the chain. Then
///
/// ```text
/// λ_{2j−1} = a_j = c₁ + c₃ + … + c_{2j−1},   λ_{2j} = b_j = c_{2j}
/// ```
///
/// is symplectic. In genus 1 this is a around (p₀, p₁) and b around (p₁, p₂).
/// The polygonal chain through the ordered points must be simple.
pub fn standard_contours(curve: &HyperellipticCurve) -> Result<Vec<BasisCycle>> {
    let g = genus_of(curve)?.get();
    let points = curve.branch_points();
    let order = lexicographic(points);
    let chain: Vec<usize> = order[..=2 * g].to_vec();
    let scale = points.iter().map(|z| z.norm()).fold(1.0, f64::max);

    // Simplicity of the chain: no foreign branch point on a segment,
    // non-adjacent segments disjoint, adjacent ones meeting only at the joint.
    for k in 0..2 * g {
        let (a, b) = (points[chain[k]], points[chain[k + 1]]);
        for (m, &p) in points.iter().enumerate() {
            if m != chain[k] && m != chain[k + 1] && point_segment_distance(p, a, b) < 1e-9 * scale {
                return Err(Error::UnsupportedBranchConfiguration(format!(
                    "branch point {m} lies on the segment between {} and {}",
                    chain[k],
                    chain[k + 1]
                )));
            }
        }
        for l in k + 2..2 * g {
            let (c, d) = (points[chain[l]], points[chain[l + 1]]);
            if segments_intersect(a, b, c, d) {
                return Err(Error::UnsupportedBranchConfiguration(format!(
                    "segments {k} and {l} of the branch-point chain cross"
                )));
            }
        }
    }

    let segments: Vec<Segment> = (0..2 * g)
        .map(|k| Segment::new(curve, chain[k], chain[k + 1]))
        .collect();
    // ⟨c_k, c_{k+1}⟩ = −sign Im(conj(y_k) y_{k+1}) at the shared branch point,
    // from the local coordinate w = √(x − p) in which both loops are lines.
    let mut signs = vec![1i8; 2 * g];
    for k in 0..2 * g - 1 {
        let incoming = segments[k].end_direction(1.0);
        let outgoing = segments[k + 1].end_direction(-1.0);
        let im = cross(incoming, outgoing);
        if im.abs() <= 1e-12 * incoming.norm() * outgoing.norm() {
            return Err(Error::UnsupportedBranchConfiguration(format!(
                "segments {k} and {} overlap at branch point {}",
                k + 1,
                chain[k + 1]
            )));
        }
        let pairing: i8 = if im > 0.0 { -1 } else { 1 };
        signs[k + 1] = signs[k] * pairing;
    }
    let loop_k = |k: usize| CycleContour {
        encircled_pair: (chain[k], chain[k + 1]),
        sheet_sign: signs[k],
    };

    let mut basis = Vec::with_capacity(2 * g);
    for j in 0..g {
        basis.push(BasisCycle {
            loops: (0..=j).map(|i| loop_k(2 * i)).collect(),
        });
        basis.push(BasisCycle::single(loop_k(2 * j + 1)));
    }
    Ok(basis)
}

/// Output of the classical Riemann bilinear relation check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiemannRelations {
    /// ‖τ − τᵀ‖_max
    pub symmetry_defect: f64,
    /// Smallest eigenvalue of the symmetric part of Im τ.
    pub min_imag_eigenvalue: f64,
    /// τ = A⁻¹B, row-major.
    pub tau: Vec<Vec<Complex64>>,
}

/// τ = A⁻¹B with A the a-periods (odd columns) and B the b-periods (even columns).
pub fn riemann_relations(periods: &PeriodMatrix) -> Result<RiemannRelations> {
    let g = periods.genus.get();
    let a = DMatrix::from_fn(g, g, |i, k| periods.columns[2 * k].entries[i]);
    let b = DMatrix::from_fn(g, g, |i, k| periods.columns[2 * k + 1].entries[i]);
    let sv = a.clone().singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(smin > 0.0 && smax / smin <= DEGENERACY_THRESHOLD) {
        return Err(Error::SingularAPeriods);
    }
    let tau = a.lu().solve(&b).ok_or(Error::SingularAPeriods)?;
    let mut symmetry_defect: f64 = 0.0;
    for i in 0..g {
        for j in 0..g {
            symmetry_defect = symmetry_defect.max((tau[(i, j)] - tau[(j, i)]).norm());
        }
    }
    let imag = DMatrix::from_fn(g, g, |i, j| 0.5 * (tau[(i, j)].im + tau[(j, i)].im));
    let min_imag_eigenvalue = SymmetricEigen::new(imag)
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    Ok(RiemannRelations {
        symmetry_defect,
        min_imag_eigenvalue,
        tau: (0..g).map(|i| (0..g).map(|j| tau[(i, j)]).collect()).collect(),
    })
}

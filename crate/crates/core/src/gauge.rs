//! Flat U(1) connections on a cellulated closed surface.
//!
//! Angles are additive (ℝ/ℤ), so a connection is a real 1-cochain whose
//! signed sum around every face vanishes mod 1. A simple closed curve C is
//! encoded by its crossing cocycle: the integer 1-cochain counting signed
//! crossings of each edge with C. Regauging by the jump e^{2πis} across C
//! becomes A ↦ A + s·c, and a separating C has a coboundary crossing cocycle.
//!
//! Integer data (cycles, cocycles, witnesses) is checked exactly; real data
//! carries a 1e-12 tolerance.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flows::FlowParameter;
use crate::homology::{Genus, IntersectionForm};
use crate::jacobian::{wrap_centered, wrap_unit};

/// Curvature tolerance for real-valued connections.
pub const FLATNESS_TOLERANCE: f64 = 1e-12;

/// A closed oriented surface as vertices, directed edges and faces.
///
/// Each face is its boundary word: (edge index, ±1) in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplex {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub faces: Vec<Vec<(usize, i8)>>,
}

impl CellComplex {
    fn step(&self, (e, o): (usize, i8)) -> (usize, usize) {
        let (tail, head) = self.edges[e];
        if o > 0 {
            (tail, head)
        } else {
            (head, tail)
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.edges.len() {
            return Err(Error::DimensionMismatch {
                expected: self.edges.len(),
                got,
            });
        }
        Ok(())
    }

    /// Signed sum of an integer cochain around face `f`.
    fn face_sum_int(&self, f: usize, values: &[i64]) -> Result<i64> {
        self.faces[f].iter().try_fold(0i64, |acc, &(e, o)| {
            acc.checked_add(values[e] * o as i64).ok_or(Error::Overflow)
        })
    }

    fn face_sum_real(&self, f: usize, values: &[f64]) -> f64 {
        self.faces[f].iter().map(|&(e, o)| values[e] * o as f64).sum()
    }

    /// δh(e) = h(head) − h(tail).
    pub fn coboundary(&self, h: &[i64]) -> Result<Vec<i64>> {
        if h.len() != self.vertex_count {
            return Err(Error::DimensionMismatch {
                expected: self.vertex_count,
                got: h.len(),
            });
        }
        self.edges
            .iter()
            .map(|&(t, hd)| h[hd].checked_sub(h[t]).ok_or(Error::Overflow))
            .collect()
    }
}

/// Checks that `complex` is a closed oriented connected surface and returns
/// its genus from the Euler characteristic.
pub fn validate_complex(complex: &CellComplex) -> Result<Genus> {
    let invalid = |msg: String| Err(Error::InvalidComplex(msg));
    if complex.vertex_count == 0 {
        return invalid("no vertices".into());
    }
    for (i, &(t, h)) in complex.edges.iter().enumerate() {
        if t >= complex.vertex_count || h >= complex.vertex_count {
            return invalid(format!("edge {i} references a missing vertex"));
        }
    }
    let mut uses: Vec<Vec<i8>> = vec![Vec::new(); complex.edges.len()];
    for (f, word) in complex.faces.iter().enumerate() {
        if word.is_empty() {
            return invalid(format!("face {f} has an empty boundary"));
        }
        for (k, &(e, o)) in word.iter().enumerate() {
            if e >= complex.edges.len() {
                return invalid(format!("face {f} references missing edge {e}"));
            }
            if o != 1 && o != -1 {
                return invalid(format!("face {f} uses edge {e} with orientation {o}"));
            }
            uses[e].push(o);
            let (_, end) = complex.step((e, o));
            let (start, _) = complex.step(word[(k + 1) % word.len()]);
            if end != start {
                return invalid(format!("boundary of face {f} is not a closed walk at position {k}"));
            }
        }
    }
    for (e, u) in uses.iter().enumerate() {
        match u.as_slice() {
            [] => return invalid(format!("dangling edge {e}: not on any face")),
            [a, b] if a + b == 0 => {}
            [_, _] => return invalid(format!("edge {e} used twice with the same orientation")),
            other => return invalid(format!("edge {e} used {} times, expected 2", other.len())),
        }
    }
    // Connectivity through the 1-skeleton.
    let mut seen = vec![false; complex.vertex_count];
    let mut adjacency = vec![Vec::new(); complex.vertex_count];
    for &(t, h) in &complex.edges {
        adjacency[t].push(h);
        adjacency[h].push(t);
    }
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adjacency[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return invalid(format!("vertex {v} is not connected to vertex 0"));
    }
    let chi = complex.euler_characteristic();
    if chi > 0 || chi % 2 != 0 {
        return invalid(format!("wrong Euler characteristic {chi}: need 2 − 2g with g ≥ 1"));
    }
    Genus::new(((2 - chi) / 2) as usize)
}

/// Edge angles in [0, 1) with every face sum ≡ 0 (mod 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlatConnection {
    angles: Vec<f64>,
}

impl FlatConnection {
    pub fn new(complex: &CellComplex, angles: Vec<f64>) -> Result<Self> {
        complex.check_len(angles.len())?;
        if angles.iter().any(|a| !a.is_finite()) {
            return Err(Error::NonFinite);
        }
        let angles: Vec<f64> = angles.into_iter().map(wrap_unit).collect();
        for f in 0..complex.faces.len() {
            let defect = wrap_centered(complex.face_sum_real(f, &angles)).abs();
            if defect > FLATNESS_TOLERANCE {
                return Err(Error::NotFlat { face: f, defect });
            }
        }
        Ok(FlatConnection { angles })
    }

    pub fn trivial(complex: &CellComplex) -> Self {
        FlatConnection {
            angles: vec![0.0; complex.edges.len()],
        }
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// Largest face curvature, wrapped to [−½, ½].
    pub fn flatness_defect(&self, complex: &CellComplex) -> f64 {
        (0..complex.faces.len())
            .map(|f| wrap_centered(complex.face_sum_real(f, &self.angles)).abs())
            .fold(0.0, f64::max)
    }
}

/// Vertex angles h, acting by A(e) ↦ A(e) + h(head) − h(tail).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GaugeTransformation {
    pub values: Vec<f64>,
}

/// An integral 1-cycle: zero boundary at every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cycle1 {
    coeffs: Vec<i64>,
}

impl Cycle1 {
    pub fn new(complex: &CellComplex, coeffs: Vec<i64>) -> Result<Self> {
        complex.check_len(coeffs.len())?;
        let mut boundary = vec![0i64; complex.vertex_count];
        for (&(t, h), &k) in complex.edges.iter().zip(&coeffs) {
            boundary[h] = boundary[h].checked_add(k).ok_or(Error::Overflow)?;
            boundary[t] = boundary[t].checked_sub(k).ok_or(Error::Overflow)?;
        }
        if let Some(v) = boundary.iter().position(|&b| b != 0) {
            return Err(Error::NotACycle(v));
        }
        Ok(Cycle1 { coeffs })
    }

    /// The single edge `e`, which must be a loop.
    pub fn edge(complex: &CellComplex, e: usize) -> Result<Self> {
        let mut coeffs = vec![0; complex.edges.len()];
        coeffs[e] = 1;
        Cycle1::new(complex, coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn combine(&self, k: i64, other: &Cycle1, l: i64) -> Result<Cycle1> {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| {
                a.checked_mul(k)
                    .and_then(|x| b.checked_mul(l).and_then(|y| x.checked_add(y)))
                    .ok_or(Error::Overflow)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Cycle1 { coeffs })
    }
}

/// Integer 1-cochain with zero signed sum around every face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CrossingCocycle {
    values: Vec<i64>,
}

impl CrossingCocycle {
    pub fn new(complex: &CellComplex, values: Vec<i64>) -> Result<Self> {
        complex.check_len(values.len())?;
        for f in 0..complex.faces.len() {
            let sum = complex.face_sum_int(f, &values)?;
            if sum != 0 {
                return Err(Error::NotACocycle { face: f, sum });
            }
        }
        Ok(CrossingCocycle { values })
    }

    pub fn zero(complex: &CellComplex) -> Self {
        CrossingCocycle {
            values: vec![0; complex.edges.len()],
        }
    }

    /// δh for an integer vertex function h; always a cocycle.
    pub fn coboundary_of(complex: &CellComplex, h: &[i64]) -> Result<Self> {
        CrossingCocycle::new(complex, complex.coboundary(h)?)
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }
}

/// Σ γ(e)·A(e) (mod 1).
pub fn holonomy(connection: &FlatConnection, cycle: &Cycle1) -> Result<f64> {
    if connection.angles.len() != cycle.coeffs.len() {
        return Err(Error::DimensionMismatch {
            expected: connection.angles.len(),
            got: cycle.coeffs.len(),
        });
    }
    Ok(wrap_unit(
        connection
            .angles
            .iter()
            .zip(&cycle.coeffs)
            .map(|(a, &k)| (a * k as f64).rem_euclid(1.0))
            .sum(),
    ))
}

pub fn gauge_transform(
    complex: &CellComplex,
    connection: &FlatConnection,
    h: &GaugeTransformation,
) -> Result<FlatConnection> {
    complex.check_len(connection.angles.len())?;
    if h.values.len() != complex.vertex_count {
        return Err(Error::DimensionMismatch {
            expected: complex.vertex_count,
            got: h.values.len(),
        });
    }
    let angles = complex
        .edges
        .iter()
        .zip(&connection.angles)
        .map(|(&(t, hd), a)| wrap_unit(a + (h.values[hd] - h.values[t])))
        .collect();
    Ok(FlatConnection { angles })
}

/// A ↦ A + s·c (mod 1): regauging by the jump across C.
pub fn flow_connection(
    complex: &CellComplex,
    connection: &FlatConnection,
    cocycle: &CrossingCocycle,
    s: FlowParameter,
) -> Result<FlatConnection> {
    // Revalidate: the cocycle may have been built for a different complex.
    let cocycle = CrossingCocycle::new(complex, cocycle.values.clone())?;
    complex.check_len(connection.angles.len())?;
    let angles = connection
        .angles
        .iter()
        .zip(&cocycle.values)
        .map(|(a, &k)| {
            if k == 0 {
                *a
            } else {
                wrap_unit(a + (k as f64 * s.value()).rem_euclid(1.0))
            }
        })
        .collect();
    Ok(FlatConnection { angles })
}

/// Σ c(e)·γ(e): the intersection number ⟨γ, C⟩.
pub fn pairing(cocycle: &CrossingCocycle, cycle: &Cycle1) -> Result<i64> {
    if cocycle.values.len() != cycle.coeffs.len() {
        return Err(Error::DimensionMismatch {
            expected: cocycle.values.len(),
            got: cycle.coeffs.len(),
        });
    }
    cocycle
        .values
        .iter()
        .zip(&cycle.coeffs)
        .try_fold(0i64, |acc, (&c, &g)| {
            c.checked_mul(g).and_then(|t| acc.checked_add(t)).ok_or(Error::Overflow)
        })
}

/// An integer h with δh = c and h(0) = 0, or `None` if c is not exact.
///
/// Integrates c along a breadth-first spanning tree and then checks every
/// remaining edge; on a connected complex this decides exactness over ℤ.
pub fn is_coboundary(complex: &CellComplex, cocycle: &CrossingCocycle) -> Result<Option<Vec<i64>>> {
    complex.check_len(cocycle.values.len())?;
    let n = complex.vertex_count;
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(t, h)) in complex.edges.iter().enumerate() {
        incident[t].push(e);
        incident[h].push(e);
    }
    let mut h: Vec<Option<i64>> = vec![None; n];
    for root in 0..n {
        if h[root].is_some() {
            continue;
        }
        h[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let hv = h[v].expect("visited");
            for &e in &incident[v] {
                let (t, hd) = complex.edges[e];
                let (w, value) = if t == v {
                    (hd, hv.checked_add(cocycle.values[e]))
                } else {
                    (t, hv.checked_sub(cocycle.values[e]))
                };
                if h[w].is_none() {
                    h[w] = Some(value.ok_or(Error::Overflow)?);
                    queue.push_back(w);
                }
            }
        }
    }
    let h: Vec<i64> = h.into_iter().map(|x| x.expect("all visited")).collect();
    if complex.coboundary(&h)? == cocycle.values {
        Ok(Some(h))
    } else {
        Ok(None)
    }
}

/// A cellulated surface with a symplectic basis of edge cycles λ₁..λ_{2g}
/// and, for each λ_j, a crossing cocycle c_j with pairing(c_j, λ_k) = ⟨λ_k, λ_j⟩.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StandardComplex {
    pub complex: CellComplex,
    pub basis_cycles: Vec<Cycle1>,
    pub cocycles: Vec<CrossingCocycle>,
}

impl StandardComplex {
    pub fn genus(&self) -> Genus {
        Genus::new(self.basis_cycles.len() / 2).expect("at least one pair")
    }

    /// (holonomy(A, λ₁), …, holonomy(A, λ_{2g})).
    pub fn holonomy_vector(&self, connection: &FlatConnection) -> Result<Vec<f64>> {
        self.basis_cycles
            .iter()
            .map(|cycle| holonomy(connection, cycle))
            .collect()
    }

    /// pairing(c_j, λ_k) as a matrix indexed [k][j].
    pub fn pairing_table(&self) -> Result<Vec<Vec<i64>>> {
        self.basis_cycles
            .iter()
            .map(|cycle| self.cocycles.iter().map(|c| pairing(c, cycle)).collect())
            .collect()
    }

    /// A flat connection with holonomy θ_k on λ_k.
    ///
    /// Uses the dual cocycles d_k = Σ_j (J⁻¹)_{jk} c_j, which satisfy
    /// pairing(d_k, λ_m) = δ_{km}.
    pub fn connection_from_holonomies(&self, theta: &[f64]) -> Result<FlatConnection> {
        let n = self.genus().rank();
        if theta.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: theta.len(),
            });
        }
        let form = IntersectionForm::new(self.genus());
        let mut angles = vec![0.0; self.complex.edges.len()];
        for (k, &t) in theta.iter().enumerate() {
            for (j, c) in self.cocycles.iter().enumerate() {
                // J⁻¹ = −J
                let coef = -form.entry(j, k);
                if coef == 0 {
                    continue;
                }
                for (a, &v) in angles.iter_mut().zip(&c.values) {
                    *a += t * (coef * v) as f64;
                }
            }
        }
        FlatConnection::new(&self.complex, angles)
    }
}

/// The two standard cellulations of a genus-g surface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StandardModels {
    /// One vertex, 2g loop edges, one 4g-gon face.
    pub one_vertex: StandardComplex,
    /// The 4g-gon coned off from a centre vertex: 2 vertices, 6g edges, 4g triangles.
    pub refined: StandardComplex,
}

/// The boundary word [a₁, b₁]…[a_g, b_g] of the fundamental polygon, with
/// a_j = edge 2j and b_j = edge 2j + 1.
fn polygon_word(g: usize) -> Vec<(usize, i8)> {
    (0..g)
        .flat_map(|j| [(2 * j, 1), (2 * j + 1, 1), (2 * j, -1), (2 * j + 1, -1)])
        .collect()
}

pub fn standard_complexes(genus: Genus) -> Result<StandardModels> {
    let g = genus.get();
    let n = 2 * g;
    let form = IntersectionForm::new(genus);
    let word = polygon_word(g);

    let one_vertex = CellComplex {
        vertex_count: 1,
        edges: vec![(0, 0); n],
        faces: vec![word.clone()],
    };
    // Crossing cocycle of λ_j: value ⟨λ_k, λ_j⟩ on the edge of λ_k.
    let polygon_values: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|k| form.entry(k, j)).collect()).collect();

    // Refined model: vertex 0 is the polygon corner, vertex 1 the centre;
    // spoke i runs from the centre to corner i; triangle i is
    // side_i · spoke_{i+1}⁻¹ · spoke_i.
    let sides = word.len();
    let mut edges = vec![(0, 0); n];
    edges.extend((0..sides).map(|_| (1, 0)));
    let faces: Vec<Vec<(usize, i8)>> = (0..sides)
        .map(|i| vec![word[i], (n + (i + 1) % sides, -1), (n + i, 1)])
        .collect();
    let refined = CellComplex {
        vertex_count: 2,
        edges,
        faces,
    };
    // Extend a polygon-edge cochain across the spokes so every triangle closes.
    let extend = |values: &[i64]| -> Vec<i64> {
        let mut out = values.to_vec();
        let mut spoke = vec![0i64; sides];
        for i in 0..sides - 1 {
            let (e, o) = word[i];
            spoke[i + 1] = spoke[i] + o as i64 * values[e];
        }
        out.extend(spoke);
        out
    };

    let build = |complex: CellComplex, cocycle_values: Vec<Vec<i64>>| -> Result<StandardComplex> {
        let found = validate_complex(&complex)?;
        debug_assert_eq!(found, genus);
        let basis_cycles = (0..n).map(|k| Cycle1::edge(&complex, k)).collect::<Result<Vec<_>>>()?;
        let cocycles = cocycle_values
            .into_iter()
            .map(|v| CrossingCocycle::new(&complex, v))
            .collect::<Result<Vec<_>>>()?;
        Ok(StandardComplex {
            complex,
            basis_cycles,
            cocycles,
        })
    };

    Ok(StandardModels {
        one_vertex: build(one_vertex, polygon_values.clone())?,
        refined: build(refined, polygon_values.iter().map(|v| extend(v)).collect())?,
    })
}

/// A torus from a 2×1 periodic grid: two vertices, four edges, two squares.
///
/// Edges: h₀: 0→1, h₁: 1→0 (horizontal), u₀: 0→0, u₁: 1→1 (vertical loops).
pub fn two_square_torus() -> CellComplex {
    CellComplex {
        vertex_count: 2,
        edges: vec![(0, 1), (1, 0), (0, 0), (1, 1)],
        faces: vec![
            vec![(0, 1), (3, 1), (0, -1), (2, -1)],
            vec![(1, 1), (2, 1), (1, -1), (3, -1)],
        ],
    }
}

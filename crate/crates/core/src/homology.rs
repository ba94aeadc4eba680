//! Integer symplectic linear algebra on H₁(Σ, ℤ).
//!
//! Classes are integer vectors in a fixed symplectic basis λ₁, …, λ_{2g}
//! with ⟨λ_{2j−1}, λ_{2j}⟩ = +1 and every other basis pairing zero. All
//! arithmetic is exact: overflow is reported as [`Error::Overflow`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Genus of a closed orientable surface, always at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct Genus(usize);

impl Genus {
    pub fn new(g: usize) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidGenus(0));
        }
        Ok(Genus(g))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Rank of H₁, i.e. 2g.
    pub fn rank(self) -> usize {
        2 * self.0
    }
}

impl TryFrom<i64> for Genus {
    type Error = Error;

    fn try_from(g: i64) -> Result<Self> {
        if g < 1 {
            return Err(Error::InvalidGenus(g));
        }
        Genus::new(g as usize)
    }
}

impl From<Genus> for i64 {
    fn from(g: Genus) -> i64 {
        g.0 as i64
    }
}

impl std::fmt::Display for Genus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A homology class, serialized as a plain JSON integer array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct HomologyClass {
    coeffs: Vec<i64>,
}

impl HomologyClass {
    /// Fails unless the length is a positive even number.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() || !coeffs.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: 2 * coeffs.len().div_ceil(2).max(1),
                got: coeffs.len(),
            });
        }
        Ok(HomologyClass { coeffs })
    }

    pub fn zero(genus: Genus) -> Self {
        HomologyClass {
            coeffs: vec![0; genus.rank()],
        }
    }

    /// The basis class λ_j, with `j` one-based as in λ₁, …, λ_{2g}.
    pub fn basis(genus: Genus, j: usize) -> Self {
        assert!((1..=genus.rank()).contains(&j), "basis index out of range");
        let mut coeffs = vec![0; genus.rank()];
        coeffs[j - 1] = 1;
        HomologyClass { coeffs }
    }

    pub fn genus(&self) -> Genus {
        Genus(self.coeffs.len() / 2)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Coefficients of the linear functional x ↦ ⟨x, self⟩, i.e. the vector
    /// Jc whose j-th entry is ⟨λ_j, c⟩.
    pub fn pairing_vector(&self) -> Vec<i64> {
        self.coeffs.chunks_exact(2).flat_map(|pq| [pq[1], -pq[0]]).collect()
    }
}

impl TryFrom<Vec<i64>> for HomologyClass {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        HomologyClass::new(v)
    }
}

impl From<HomologyClass> for Vec<i64> {
    fn from(c: HomologyClass) -> Vec<i64> {
        c.coeffs
    }
}

/// Square integer matrix stored row-major; serializes as a list of rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(IntMatrix { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, value: i64) {
        self.data[i * self.n + j] = value;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::identity(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let n = self.n;
        let mut out = IntMatrix {
            n,
            data: vec![0; n * n],
        };
        for i in 0..n {
            for j in 0..n {
                let mut acc: i64 = 0;
                for k in 0..n {
                    let term = self.get(i, k).checked_mul(other.get(k, j)).ok_or(Error::Overflow)?;
                    acc = acc.checked_add(term).ok_or(Error::Overflow)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        (0..self.n)
            .map(|i| {
                (0..self.n).try_fold(0i64, |acc, k| {
                    self.get(i, k)
                        .checked_mul(v[k])
                        .and_then(|t| acc.checked_add(t))
                        .ok_or(Error::Overflow)
                })
            })
            .collect()
    }

    /// row_i += m · row_j
    fn add_row_multiple(&mut self, i: usize, j: usize, m: i64) -> Result<()> {
        for col in 0..self.n {
            let delta = self.get(j, col).checked_mul(m).ok_or(Error::Overflow)?;
            let value = self.get(i, col).checked_add(delta).ok_or(Error::Overflow)?;
            self.set(i, col, value);
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Result<()> {
        for col in 0..self.n {
            let value = self.get(i, col).checked_neg().ok_or(Error::Overflow)?;
            self.set(i, col, value);
        }
        Ok(())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for col in 0..self.n {
            self.data.swap(i * self.n + col, j * self.n + col);
        }
    }
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        IntMatrix::from_rows(rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.rows()
    }
}

/// The standard intersection form J: g diagonal blocks [[0, 1], [−1, 0]].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntersectionForm {
    genus: Genus,
}

impl IntersectionForm {
    pub fn new(genus: Genus) -> Self {
        IntersectionForm { genus }
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        if i / 2 != j / 2 {
            return 0;
        }
        match (i % 2, j % 2) {
            (0, 1) => 1,
            (1, 0) => -1,
            _ => 0,
        }
    }

    pub fn matrix(&self) -> IntMatrix {
        let n = self.genus.rank();
        let rows = (0..n).map(|i| (0..n).map(|j| self.entry(i, j)).collect()).collect();
        IntMatrix::from_rows(rows).expect("square by construction")
    }
}

/// Returns aᵀJb.
pub fn intersection(a: &HomologyClass, b: &HomologyClass) -> Result<i64> {
    if a.coeffs.len() != b.coeffs.len() {
        return Err(Error::DimensionMismatch {
            expected: a.coeffs.len(),
            got: b.coeffs.len(),
        });
    }
    a.coeffs
        .chunks_exact(2)
        .zip(b.coeffs.chunks_exact(2))
        .try_fold(0i64, |acc, (x, y)| {
            let p = x[0].checked_mul(y[1]).ok_or(Error::Overflow)?;
            let q = x[1].checked_mul(y[0]).ok_or(Error::Overflow)?;
            let d = p.checked_sub(q).ok_or(Error::Overflow)?;
            acc.checked_add(d).ok_or(Error::Overflow)
        })
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

pub fn content(c: &HomologyClass) -> i64 {
    c.coeffs.iter().fold(0, |acc, &x| gcd(acc, x))
}

/// True iff the gcd of the entries is 1. The zero class is an error.
pub fn is_primitive(c: &HomologyClass) -> Result<bool> {
    if c.is_zero() {
        return Err(Error::ZeroClass);
    }
    Ok(content(c) == 1)
}

/// A simple closed curve separates the surface iff its class vanishes.
pub fn is_separating(c: &HomologyClass) -> bool {
    c.is_zero()
}

/// A change of symplectic basis: column k holds λ′_k in the old basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IntMatrix", into = "IntMatrix")]
pub struct SymplecticBasisChange {
    matrix: IntMatrix,
}

impl TryFrom<IntMatrix> for SymplecticBasisChange {
    type Error = Error;

    fn try_from(m: IntMatrix) -> Result<Self> {
        SymplecticBasisChange::new(m)
    }
}

impl From<SymplecticBasisChange> for IntMatrix {
    fn from(m: SymplecticBasisChange) -> Self {
        m.matrix
    }
}

impl SymplecticBasisChange {
    /// Rejects matrices that do not satisfy MᵀJM = J.
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if matrix.dim() == 0 || !matrix.dim().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: matrix.dim() + matrix.dim() % 2,
                got: matrix.dim(),
            });
        }
        let change = SymplecticBasisChange { matrix };
        if !change.is_symplectic()? {
            return Err(Error::Parse("matrix is not symplectic".into()));
        }
        Ok(change)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn genus(&self) -> Genus {
        Genus(self.matrix.dim() / 2)
    }

    /// Exact check of MᵀJM = J.
    pub fn is_symplectic(&self) -> Result<bool> {
        let j = IntersectionForm::new(self.genus()).matrix();
        let lhs = self.matrix.transpose().mul(&j)?.mul(&self.matrix)?;
        Ok(lhs == j)
    }

    /// M⁻¹ = J⁻¹MᵀJ = −JMᵀJ.
    pub fn inverse(&self) -> Result<IntMatrix> {
        let j = IntersectionForm::new(self.genus()).matrix();
        let mut inv = j.mul(&self.matrix.transpose())?.mul(&j)?;
        for i in 0..inv.dim() {
            inv.negate_row(i)?;
        }
        Ok(inv)
    }

    /// The new basis vector λ′_k (one-based).
    pub fn new_basis_class(&self, k: usize) -> HomologyClass {
        HomologyClass {
            coeffs: self.matrix.column(k - 1),
        }
    }
}

/// Accumulates a product S of elementary symplectic moves while applying
/// the same moves to a working vector, so that S·c equals the vector.
struct Reducer {
    x: Vec<i64>,
    s: IntMatrix,
}

impl Reducer {
    // x_i += m x_j, mirrored as a row operation on S.
    fn add(&mut self, i: usize, j: usize, m: i64) -> Result<()> {
        if m == 0 {
            return Ok(());
        }
        let delta = self.x[j].checked_mul(m).ok_or(Error::Overflow)?;
        self.x[i] = self.x[i].checked_add(delta).ok_or(Error::Overflow)?;
        self.s.add_row_multiple(i, j, m)
    }

    fn p(j: usize) -> usize {
        2 * j
    }

    fn q(j: usize) -> usize {
        2 * j + 1
    }

    /// (p, q) ↦ (q, −p) within pair j.
    fn rotate(&mut self, j: usize) -> Result<()> {
        let (p, q) = (Self::p(j), Self::q(j));
        self.x.swap(p, q);
        self.x[q] = self.x[q].checked_neg().ok_or(Error::Overflow)?;
        self.s.swap_rows(p, q);
        self.s.negate_row(q)
    }

    /// Euclid inside pair j until it reads (0, d).
    fn reduce_pair(&mut self, j: usize) -> Result<()> {
        let (p, q) = (Self::p(j), Self::q(j));
        while self.x[p] != 0 {
            if self.x[q] == 0 {
                self.rotate(j)?;
            } else if self.x[p].abs() >= self.x[q].abs() {
                self.add(p, q, -(self.x[p] / self.x[q]))?;
            } else {
                self.add(q, p, -(self.x[q] / self.x[p]))?;
            }
        }
        Ok(())
    }

    /// Folds pair k (already (0, d_k)) into q₁ so that pair k becomes zero.
    fn merge_into_first(&mut self, k: usize) -> Result<()> {
        if self.x[Self::q(k)] == 0 {
            return Ok(());
        }
        // pair k -> (d_k, 0); pair 0 is (0, q0) throughout.
        self.rotate(k)?;
        let (q0, pk) = (Self::q(0), Self::p(k));
        while self.x[pk] != 0 {
            if self.x[q0] == 0 {
                // q₀ += p_k, q_k += p₀ (p₀ = 0)
                self.add(q0, pk, 1)?;
                self.add(Self::q(k), Self::p(0), 1)?;
            } else if self.x[q0].abs() > self.x[pk].abs() {
                let m = -(self.x[q0] / self.x[pk]);
                self.add(q0, pk, m)?;
                self.add(Self::q(k), Self::p(0), m)?;
            } else {
                // p_k += m q₀, p₀ += m q_k (q_k = 0)
                let m = -(self.x[pk] / self.x[q0]);
                self.add(pk, q0, m)?;
                self.add(Self::p(0), Self::q(k), m)?;
            }
        }
        Ok(())
    }
}

/// Completes a primitive class to a symplectic basis with λ′₂ = c.
///
/// The returned M satisfies MᵀJM = J and M·e₂ = c. The construction reduces
/// c to e₂ by a fixed sequence of elementary symplectic moves S (Euclid
/// within each hyperbolic pair, then across pairs), and returns M = S⁻¹.
/// The result depends only on c.
pub fn complete_to_symplectic_basis(c: &HomologyClass) -> Result<SymplecticBasisChange> {
    if c.is_zero() {
        return Err(Error::SeparatingClass);
    }
    let d = content(c);
    if d != 1 {
        return Err(Error::NonPrimitive(d));
    }
    let g = c.genus().get();
    let mut r = Reducer {
        x: c.coeffs.clone(),
        s: IntMatrix::identity(2 * g),
    };
    for j in 0..g {
        r.reduce_pair(j)?;
    }
    for k in 1..g {
        r.merge_into_first(k)?;
    }
    if r.x[1] == -1 {
        r.rotate(0)?;
        r.rotate(0)?;
    }
    debug_assert_eq!(r.x, HomologyClass::basis(c.genus(), 2).coeffs);
    let s = SymplecticBasisChange { matrix: r.s };
    let m = s.inverse()?;
    Ok(SymplecticBasisChange { matrix: m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn class(v: &[i64]) -> HomologyClass {
        HomologyClass::new(v.to_vec()).unwrap()
    }

    fn g(n: usize) -> Genus {
        Genus::new(n).unwrap()
    }

    #[test]
    fn basis_pairings() {
        let genus = g(3);
        for i in 1..=6 {
            for j in 1..=6 {
                let expected = IntersectionForm::new(genus).entry(i - 1, j - 1);
                let got = intersection(&HomologyClass::basis(genus, i), &HomologyClass::basis(genus, j)).unwrap();
                assert_eq!(got, expected, "<e{i}, e{j}>");
            }
        }
        assert_eq!(intersection(&class(&[1, 0]), &class(&[0, 1])).unwrap(), 1);
    }

    #[test]
    fn bilinear_example() {
        assert_eq!(intersection(&class(&[1, 0, 1, 0]), &class(&[0, 1, 0, 2])).unwrap(), 3);
    }

    #[test]
    fn intersection_length_mismatch() {
        let err = intersection(&class(&[1, 0]), &class(&[1, 0, 0, 0])).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn intersection_overflow_is_reported() {
        let a = class(&[i64::MAX, 0]);
        let b = class(&[0, 2]);
        assert_eq!(intersection(&a, &b), Err(Error::Overflow));
    }

    #[test]
    fn odd_length_rejected() {
        assert!(HomologyClass::new(vec![1, 2, 3]).is_err());
        assert!(HomologyClass::new(vec![]).is_err());
    }

    #[test]
    fn intersection_form_invariants() {
        for n in 1..=4 {
            let j = IntersectionForm::new(g(n)).matrix();
            let jt = j.transpose();
            let sq = j.mul(&j).unwrap();
            for a in 0..2 * n {
                for b in 0..2 * n {
                    assert_eq!(jt.get(a, b), -j.get(a, b));
                    assert_eq!(sq.get(a, b), if a == b { -1 } else { 0 });
                }
            }
        }
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&HomologyClass::basis(g(2), 2)).unwrap());
        assert!(!is_primitive(&class(&[2, 0, 0, 0])).unwrap());
        assert!(is_primitive(&class(&[2, 3, 0, 0])).unwrap());
        assert_eq!(is_primitive(&class(&[0, 0])), Err(Error::ZeroClass));
    }

    #[test]
    fn separating() {
        assert!(is_separating(&HomologyClass::zero(g(2))));
        assert!(!is_separating(&HomologyClass::basis(g(2), 2)));
        assert!(!is_separating(&class(&[1, 1, 0, 0])));
    }

    #[test]
    fn completion_of_e2_is_identity() {
        for n in 1..=3 {
            let m = complete_to_symplectic_basis(&HomologyClass::basis(g(n), 2)).unwrap();
            assert_eq!(m.matrix(), &IntMatrix::identity(2 * n));
        }
    }

    #[test]
    fn completion_of_e1_genus_one() {
        let m = complete_to_symplectic_basis(&class(&[1, 0])).unwrap();
        assert_eq!(m.matrix().rows(), vec![vec![0, 1], vec![-1, 0]]);
    }

    #[test]
    fn completion_errors() {
        assert_eq!(
            complete_to_symplectic_basis(&class(&[2, 0, 0, 0])),
            Err(Error::NonPrimitive(2))
        );
        assert_eq!(
            complete_to_symplectic_basis(&class(&[0, 0, 0, 0])),
            Err(Error::SeparatingClass)
        );
    }

    #[test]
    fn inverse_is_inverse() {
        let m = complete_to_symplectic_basis(&class(&[3, -5, 7, 2, 0, 4])).unwrap();
        let prod = m.matrix().mul(&m.inverse().unwrap()).unwrap();
        assert_eq!(prod, IntMatrix::identity(6));
    }

    #[test]
    fn serde_shapes() {
        let c = class(&[1, -2, 0, 3]);
        assert_eq!(serde_json::to_string(&c).unwrap(), "[1,-2,0,3]");
        let m = complete_to_symplectic_basis(&class(&[1, 0])).unwrap();
        assert_eq!(serde_json::to_string(&m).unwrap(), "[[0,1],[-1,0]]");
        assert!(serde_json::from_str::<HomologyClass>("[1,2,3]").is_err());
        assert!(serde_json::from_str::<SymplecticBasisChange>("[[1,1],[0,2]]").is_err());
    }

    fn primitive_class() -> impl Strategy<Value = HomologyClass> {
        (1usize..=3)
            .prop_flat_map(|n| proptest::collection::vec(-9i64..=9, 2 * n))
            .prop_filter("primitive", |v| v.iter().fold(0, |a, &x| gcd(a, x)) == 1)
            .prop_map(|v| HomologyClass::new(v).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn completion_postconditions(c in primitive_class()) {
            let m = complete_to_symplectic_basis(&c).unwrap();
            prop_assert!(m.is_symplectic().unwrap());
            prop_assert_eq!(m.new_basis_class(2), c.clone());
            prop_assert_eq!(complete_to_symplectic_basis(&c).unwrap(), m);
        }

        #[test]
        fn antisymmetry(a in proptest::collection::vec(-50i64..50, 4), b in proptest::collection::vec(-50i64..50, 4)) {
            let (a, b) = (class(&a), class(&b));
            prop_assert_eq!(intersection(&a, &b).unwrap(), -intersection(&b, &a).unwrap());
            prop_assert_eq!(intersection(&a, &a).unwrap(), 0);
        }

        #[test]
        fn pairing_vector_matches_intersection(c in proptest::collection::vec(-20i64..20, 6)) {
            let c = class(&c);
            let jc = c.pairing_vector();
            for (j, &entry) in jc.iter().enumerate() {
                prop_assert_eq!(entry, intersection(&HomologyClass::basis(c.genus(), j + 1), &c).unwrap());
            }
        }
    }
}

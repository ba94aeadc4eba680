//! Hyperelliptic curves y² = c·∏(x − e_m) given by their finite branch points.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::Genus;

/// Default minimum pairwise distance between branch points.
pub const DEFAULT_DISTINCT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HyperellipticCurve {
    branch_points: Vec<Complex64>,
    leading: Complex64,
}

impl HyperellipticCurve {
    /// y² = ∏(x − e_m) with the given roots.
    pub fn from_branch_points(branch_points: Vec<Complex64>) -> Result<Self> {
        Self::with_leading(branch_points, Complex64::new(1.0, 0.0), DEFAULT_DISTINCT_TOLERANCE)
    }

    pub fn with_leading(branch_points: Vec<Complex64>, leading: Complex64, tolerance: f64) -> Result<Self> {
        if branch_points
            .iter()
            .chain([&leading])
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        if leading == Complex64::new(0.0, 0.0) {
            return Err(Error::Parse("leading coefficient is zero".into()));
        }
        if branch_points.len() < 3 {
            return Err(Error::GenusZero(branch_points.len()));
        }
        for i in 0..branch_points.len() {
            for j in i + 1..branch_points.len() {
                if (branch_points[i] - branch_points[j]).norm() <= tolerance {
                    return Err(Error::CoincidentBranchPoints(i, j, tolerance));
                }
            }
        }
        Ok(HyperellipticCurve { branch_points, leading })
    }

    /// y² = Σ a_k x^k with coefficients listed from the constant term up.
    pub fn from_coefficients(coefficients: &[Complex64]) -> Result<Self> {
        let trimmed_len = coefficients
            .iter()
            .rposition(|c| *c != Complex64::new(0.0, 0.0))
            .map_or(0, |p| p + 1);
        let coefficients = &coefficients[..trimmed_len];
        if coefficients.len() < 4 {
            return Err(Error::GenusZero(coefficients.len().saturating_sub(1)));
        }
        let leading = coefficients[coefficients.len() - 1];
        let roots = polynomial_roots(coefficients)?;
        Self::with_leading(roots, leading, DEFAULT_DISTINCT_TOLERANCE)
    }

    pub fn branch_points(&self) -> &[Complex64] {
        &self.branch_points
    }

    pub fn leading(&self) -> Complex64 {
        self.leading
    }

    /// Degree of f, i.e. the number of finite branch points.
    pub fn degree(&self) -> usize {
        self.branch_points.len()
    }

    pub fn genus(&self) -> Genus {
        genus_of(self).expect("validated at construction")
    }

    /// f(x) = c·∏(x − e_m).
    pub fn eval_f(&self, x: Complex64) -> Complex64 {
        self.branch_points.iter().fold(self.leading, |acc, e| acc * (x - e))
    }
}

/// floor((degree − 1) / 2).
pub fn genus_of(curve: &HyperellipticCurve) -> Result<Genus> {
    let degree = curve.degree();
    if degree < 3 {
        return Err(Error::GenusZero(degree));
    }
    Genus::new((degree - 1) / 2)
}

/// A complex number in JSON: either `[re, im]` or a bare real.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
enum ComplexInput {
    Pair([f64; 2]),
    Real(f64),
}

impl From<ComplexInput> for Complex64 {
    fn from(c: ComplexInput) -> Self {
        match c {
            ComplexInput::Pair([re, im]) => Complex64::new(re, im),
            ComplexInput::Real(re) => Complex64::new(re, 0.0),
        }
    }
}

/// On-disk curve description: exactly one of `branch_points` or
/// `coefficients` (ascending powers); complex entries are `[re, im]` or reals.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    #[serde(default)]
    branch_points: Option<Vec<ComplexInput>>,
    #[serde(default)]
    coefficients: Option<Vec<ComplexInput>>,
    #[serde(default)]
    leading: Option<ComplexInput>,
    #[serde(default)]
    distinct_tolerance: Option<f64>,
}

impl CurveSpec {
    pub fn into_curve(self) -> Result<HyperellipticCurve> {
        match (self.branch_points, self.coefficients) {
            (Some(points), None) => HyperellipticCurve::with_leading(
                points.into_iter().map(Complex64::from).collect(),
                self.leading.map_or(Complex64::new(1.0, 0.0), Complex64::from),
                self.distinct_tolerance.unwrap_or(DEFAULT_DISTINCT_TOLERANCE),
            ),
            (None, Some(coefficients)) => {
                if self.leading.is_some() {
                    return Err(Error::Parse("`leading` is implied by `coefficients`".into()));
                }
                let coefficients: Vec<Complex64> = coefficients.into_iter().map(Complex64::from).collect();
                HyperellipticCurve::from_coefficients(&coefficients)
            }
            _ => Err(Error::Parse(
                "curve needs exactly one of `branch_points` or `coefficients`".into(),
            )),
        }
    }
}

impl<'de> Deserialize<'de> for HyperellipticCurve {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        CurveSpec::deserialize(deserializer)?
            .into_curve()
            .map_err(serde::de::Error::custom)
    }
}

fn horner(coefficients: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in coefficients.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Roots of Σ a_k x^k by Aberth–Ehrlich iteration followed by Newton polishing.
pub fn polynomial_roots(coefficients: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coefficients.len() - 1;
    let lead = coefficients[n];
    let monic: Vec<Complex64> = coefficients.iter().map(|a| a / lead).collect();
    // Cauchy bound on root moduli.
    let radius = 1.0 + monic[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(0.5 * radius, angle)
        })
        .collect();

    let mut converged = false;
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = horner(&monic, roots[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (roots[i] - roots[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                roots[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + roots[i].norm()));
            }
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::RootFinding);
    }
    for root in roots.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&monic, *root);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if step.re.is_finite() && step.im.is_finite() {
                *root -= step;
            }
        }
        let scale = 1e-13 * radius;
        if root.re.abs() < scale {
            root.re = 0.0;
        }
        if root.im.abs() < scale {
            root.im = 0.0;
        }
    }
    Ok(roots)
}

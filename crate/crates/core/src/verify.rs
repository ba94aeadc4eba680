//! The deterministic self-check suite run by `jacflow verify`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::flows::{
    cr_defect, flow_via_basis_change, flows_commute_check, goldman_flow_holonomy, goldman_flow_jacobian,
    one_parameter_laws, FlowParameter, DEFAULT_CR_STEP,
};
use crate::gauge::{
    flow_connection, gauge_transform, holonomy, is_coboundary, pairing, standard_complexes, CrossingCocycle,
    GaugeTransformation,
};
use crate::homology::{complete_to_symplectic_basis, content, intersection, Genus, HomologyClass};
use crate::jacobian::HolonomyPoint;
use crate::jacobian::{
    circle_distance, complex_structure_matrix, v_to_z, wrap_centered, z_to_v, JacobianPointZ, Lattice, TorusPointV,
};
use crate::periods::{
    period_matrix, period_vector, period_vector_at_order, riemann_relations, standard_contours, HyperellipticCurve,
    PeriodMatrix, QuadratureConfig, DEGENERACY_THRESHOLD,
};
use crate::report::Check;

/// Thresholds pinned by the suite.
pub mod thresholds {
    pub const TAU_LEMNISCATIC: f64 = 1e-8;
    pub const AGM_RELATIVE: f64 = 1e-9;
    pub const RIEMANN_SYMMETRY: f64 = 1e-8;
    pub const CONVERGENCE_FACTOR: f64 = 10.0;
    pub const ORIENTATION_RELATIVE: f64 = 1e-12;
    pub const CHART_ROUND_TRIP: f64 = 1e-10;
    pub const ADDITIVITY_RELATIVE: f64 = 1e-12;
    pub const COMPLEX_STRUCTURE: f64 = 1e-10;
    pub const COMMUTING_SQUARE: f64 = 1e-10;
    pub const GROUP_LAW: f64 = 1e-12;
    pub const BASIS_CHANGE: f64 = 1e-12;
    pub const CR_HOLOMORPHIC: f64 = 1e-6;
    pub const CR_CONJUGATION: f64 = 0.1;
    pub const GAUGE: f64 = 1e-12;
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VerifyConfig {
    pub seed: u64,
    pub negative_controls: bool,
    pub quadrature: QuadratureConfig,
}

/// A named curve of the test corpus.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusCurve {
    pub name: &'static str,
    pub curve: HyperellipticCurve,
}

fn real_points(points: &[f64]) -> Vec<Complex64> {
    points.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

/// y² = x³ − x.
pub fn lemniscatic_curve() -> HyperellipticCurve {
    HyperellipticCurve::from_branch_points(real_points(&[-1.0, 0.0, 1.0])).expect("distinct")
}

/// y² = x⁵ − x.
pub fn genus_two_curve() -> HyperellipticCurve {
    HyperellipticCurve::from_branch_points(vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, -1.0),
    ])
    .expect("distinct")
}

pub fn corpus() -> Vec<CorpusCurve> {
    let skew = [(-1.5, 0.2), (-0.5, -0.3), (0.1, 0.4), (0.9, -0.2), (1.7, 0.1)];
    vec![
        CorpusCurve {
            name: "lemniscatic",
            curve: lemniscatic_curve(),
        },
        CorpusCurve {
            name: "quartic-genus-1",
            curve: HyperellipticCurve::from_branch_points(real_points(&[-2.0, -0.5, 1.0, 3.0])).expect("distinct"),
        },
        CorpusCurve {
            name: "x5-minus-x",
            curve: genus_two_curve(),
        },
        CorpusCurve {
            name: "skew-genus-2",
            curve: HyperellipticCurve::from_branch_points(skew.iter().map(|&(r, i)| Complex64::new(r, i)).collect())
                .expect("distinct"),
        },
        CorpusCurve {
            name: "sextic-genus-2",
            curve: HyperellipticCurve::from_branch_points(real_points(&[-3.0, -2.0, -1.0, 1.0, 2.0, 3.0]))
                .expect("distinct"),
        },
        CorpusCurve {
            name: "septic-genus-3",
            curve: HyperellipticCurve::from_branch_points(real_points(&[-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]))
                .expect("distinct"),
        },
    ]
}

/// Arithmetic–geometric mean.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a.abs() {
            break;
        }
        (a, b) = (0.5 * (a + b), (a * b).sqrt());
    }
    0.5 * (a + b)
}

/// Complete elliptic integral K(k) = π / (2·AGM(1, √(1 − k²))).
pub fn elliptic_k(k: f64) -> f64 {
    PI / (2.0 * agm(1.0, (1.0 - k * k).sqrt()))
}

/// |∮ dx/y| for y² = x³ − x around [−1, 0].
pub fn lemniscatic_period_magnitude() -> f64 {
    2.0 * std::f64::consts::SQRT_2 * elliptic_k(std::f64::consts::FRAC_1_SQRT_2)
}

pub struct CorpusEntry {
    pub name: &'static str,
    pub curve: HyperellipticCurve,
    pub periods: PeriodMatrix,
    pub lattice: Lattice,
}

pub fn build_corpus(cfg: &QuadratureConfig) -> Result<Vec<CorpusEntry>> {
    corpus()
        .into_iter()
        .map(|c| {
            let basis = standard_contours(&c.curve)?;
            let periods = period_matrix(&c.curve, &basis, cfg)?;
            let lattice = Lattice::from_period_matrix(&periods)?;
            Ok(CorpusEntry {
                name: c.name,
                curve: c.curve,
                periods,
                lattice,
            })
        })
        .collect()
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ stream)
}

pub fn random_theta(rng: &mut ChaCha8Rng, genus: Genus) -> HolonomyPoint {
    HolonomyPoint::new((0..genus.rank()).map(|_| rng.random::<f64>()).collect()).expect("finite")
}

pub fn random_class(rng: &mut ChaCha8Rng, genus: Genus, bound: i64) -> HomologyClass {
    HomologyClass::new((0..genus.rank()).map(|_| rng.random_range(-bound..=bound)).collect()).expect("even length")
}

pub fn random_primitive_class(rng: &mut ChaCha8Rng, genus: Genus, bound: i64) -> HomologyClass {
    loop {
        let c = random_class(rng, genus, bound);
        if !c.is_zero() && content(&c) == 1 {
            return c;
        }
    }
}

fn param(s: f64) -> FlowParameter {
    FlowParameter::new(s).expect("finite")
}

fn guard(name: &str, threshold: f64, f: impl FnOnce() -> Result<Vec<Check>>) -> Vec<Check> {
    f().unwrap_or_else(|_| vec![Check::errored(name, threshold)])
}

fn homology_checks(seed: u64) -> Vec<Check> {
    guard("symplectic_completion", 0.5, || {
        let mut r = rng(seed, 50);
        let (mut bad, mut nondeterministic, mut asymmetric) = (0usize, 0usize, 0usize);
        for i in 0..1000 {
            let genus = Genus::new(1 + i % 3)?;
            let c = random_primitive_class(&mut r, genus, 9);
            let m = complete_to_symplectic_basis(&c)?;
            if !m.is_symplectic()? || m.new_basis_class(2) != c {
                bad += 1;
            }
            if complete_to_symplectic_basis(&c)? != m {
                nondeterministic += 1;
            }
            let d = random_class(&mut r, genus, 9);
            if intersection(&c, &d)? != -intersection(&d, &c)? {
                asymmetric += 1;
            }
        }
        Ok(vec![
            Check::below("completion_symplectic_and_exact", bad as f64, 0.5),
            Check::below("completion_deterministic", nondeterministic as f64, 0.5),
            Check::below("intersection_antisymmetric", asymmetric as f64, 0.5),
        ])
    })
}

fn period_checks(corpus: &[CorpusEntry], cfg: &QuadratureConfig) -> Vec<Check> {
    use thresholds::*;
    let mut checks = Vec::new();
    checks.extend(guard("lemniscatic_tau", TAU_LEMNISCATIC, || {
        let entry = &corpus[0];
        let rr = riemann_relations(&entry.periods)?;
        let tau = rr.tau[0][0];
        let magnitude = entry.periods.columns[0].entries[0].norm();
        let oracle = lemniscatic_period_magnitude();
        Ok(vec![
            Check::below(
                "lemniscatic_tau_equals_i",
                (tau - Complex64::i()).norm(),
                TAU_LEMNISCATIC,
            ),
            Check::below(
                "lemniscatic_period_vs_agm",
                (magnitude - oracle).abs() / oracle,
                AGM_RELATIVE,
            ),
        ])
    }));
    for entry in corpus {
        checks.extend(guard(
            &format!("riemann_relations[{}]", entry.name),
            RIEMANN_SYMMETRY,
            || {
                let rr = riemann_relations(&entry.periods)?;
                Ok(vec![
                    Check::below(
                        format!("riemann_symmetry[{}]", entry.name),
                        rr.symmetry_defect,
                        RIEMANN_SYMMETRY,
                    ),
                    Check::above(
                        format!("riemann_positivity[{}]", entry.name),
                        rr.min_imag_eigenvalue,
                        0.0,
                    ),
                    Check::below(
                        format!("period_real_rank[{}]", entry.name),
                        entry.periods.condition_number,
                        DEGENERACY_THRESHOLD,
                    ),
                ])
            },
        ));
        checks.extend(guard(
            &format!("quadrature_convergence[{}]", entry.name),
            CONVERGENCE_FACTOR,
            || {
                // Worst ratio of |F(2n) − F(n)| to the reported estimate.
                let basis = standard_contours(&entry.curve)?;
                let mut worst: f64 = 0.0;
                let mut orientation: f64 = 0.0;
                for contour in basis.iter().flat_map(|b| &b.loops) {
                    let pv = period_vector(&entry.curve, contour, cfg)?;
                    let doubled = period_vector_at_order(&entry.curve, contour, 2 * pv.order)?;
                    for ((x, y), err) in pv.entries.iter().zip(&doubled).zip(&pv.errors) {
                        worst = worst.max((x - y).norm() / err);
                    }
                    let rev = period_vector(&entry.curve, &contour.reversed(), cfg)?;
                    for (x, y) in pv.entries.iter().zip(&rev.entries) {
                        orientation = orientation.max((x + y).norm() / x.norm().max(f64::MIN_POSITIVE));
                    }
                }
                Ok(vec![
                    Check::below(
                        format!("quadrature_convergence[{}]", entry.name),
                        worst,
                        CONVERGENCE_FACTOR,
                    ),
                    Check::below(
                        format!("orientation_reversal[{}]", entry.name),
                        orientation,
                        ORIENTATION_RELATIVE,
                    ),
                ])
            },
        ));
    }
    checks
}

fn chart_checks(corpus: &[CorpusEntry], seed: u64) -> Vec<Check> {
    use thresholds::*;
    let mut checks = Vec::new();
    for (idx, entry) in corpus.iter().enumerate() {
        checks.extend(guard(&format!("charts[{}]", entry.name), CHART_ROUND_TRIP, || {
            let mut r = rng(seed, 100 + idx as u64);
            let lat = &entry.lattice;
            let (mut round_trip, mut additivity): (f64, f64) = (0.0, 0.0);
            for _ in 0..200 {
                let v = random_theta(&mut r, lat.genus());
                let w = random_theta(&mut r, lat.genus());
                let back = z_to_v(&v_to_z(&TorusPointV::new(v.angles().to_vec())?, lat)?, lat)?;
                round_trip = round_trip.max(circle_distance(back.coords(), v.angles()));
                let sum: Vec<f64> = v.angles().iter().zip(w.angles()).map(|(a, b)| a + b).collect();
                let zs = lat.combine(&sum)?;
                let (zv, zw) = (lat.combine(v.angles())?, lat.combine(w.angles())?);
                for k in 0..zs.len() {
                    let scale = zv.coords()[k].norm() + zw.coords()[k].norm();
                    let d = (zs.coords()[k] - zv.coords()[k] - zw.coords()[k]).norm() / scale.max(1e-300);
                    additivity = additivity.max(d);
                }
            }
            Ok(vec![
                Check::below(
                    format!("chart_round_trip[{}]", entry.name),
                    round_trip,
                    CHART_ROUND_TRIP,
                ),
                Check::below(
                    format!("v_to_z_additive[{}]", entry.name),
                    additivity,
                    ADDITIVITY_RELATIVE,
                ),
                Check::below(
                    format!("complex_structure_square[{}]", entry.name),
                    complex_structure_matrix(lat)?.square_defect(),
                    COMPLEX_STRUCTURE,
                ),
            ])
        }));
    }
    checks
}

fn flow_checks(corpus: &[CorpusEntry], seed: u64) -> Vec<Check> {
    use thresholds::*;
    let mut checks = Vec::new();

    checks.extend(guard("flow_formula_pin", 0.5, || {
        let mut r = rng(seed, 200);
        let mut mismatches = 0usize;
        for g in 1..=3 {
            let genus = Genus::new(g)?;
            let e2 = HomologyClass::basis(genus, 2);
            for _ in 0..200 {
                let theta = random_theta(&mut r, genus);
                let s = param(r.random::<f64>());
                let out = goldman_flow_holonomy(&theta, &e2, s)?;
                let expected_first = crate::jacobian::wrap_unit(theta.angles()[0] + s.value());
                if out.angles()[0] != expected_first || out.angles()[1..] != theta.angles()[1..] {
                    mismatches += 1;
                }
            }
        }
        Ok(vec![Check::below("flow_formula_pin", mismatches as f64, 0.5)])
    }));

    checks.extend(guard("commuting_square", COMMUTING_SQUARE, || {
        let mut r = rng(seed, 201);
        let mut worst: f64 = 0.0;
        let lattices: Vec<&CorpusEntry> = corpus.iter().filter(|e| e.lattice.genus().get() <= 2).collect();
        for i in 0..1000 {
            let lat = &lattices[i % lattices.len()].lattice;
            let theta = random_theta(&mut r, lat.genus());
            let c = random_class(&mut r, lat.genus(), 5);
            let s = param(r.random::<f64>());
            worst = worst.max(flows_commute_check(&theta, &c, s, lat)?);
        }
        Ok(vec![Check::below("commuting_square", worst, COMMUTING_SQUARE)])
    }));

    checks.extend(guard("group_laws", GROUP_LAW, || {
        let mut r = rng(seed, 202);
        let (mut period, mut group): (f64, f64) = (0.0, 0.0);
        for i in 0..1000 {
            let genus = Genus::new(1 + i % 3)?;
            let theta = random_theta(&mut r, genus);
            let c = random_class(&mut r, genus, 9);
            let d = one_parameter_laws(&theta, &c, param(r.random::<f64>()), param(r.random::<f64>()))?;
            period = period.max(d.period_defect);
            group = group.max(d.group_defect);
        }
        Ok(vec![
            Check::below("flow_period_one", period, GROUP_LAW),
            Check::below("flow_group_law", group, GROUP_LAW),
        ])
    }));

    checks.extend(guard("basis_change_equivalence", BASIS_CHANGE, || {
        let mut r = rng(seed, 203);
        let mut worst: f64 = 0.0;
        let mut bad_matrices = 0usize;
        for i in 0..500 {
            let genus = Genus::new(1 + i % 3)?;
            let c = random_primitive_class(&mut r, genus, 9);
            let m = complete_to_symplectic_basis(&c)?;
            if !m.is_symplectic()? || m.new_basis_class(2) != c {
                bad_matrices += 1;
            }
            let theta = random_theta(&mut r, genus);
            let s = param(r.random::<f64>());
            let a = goldman_flow_holonomy(&theta, &c, s)?;
            let b = flow_via_basis_change(&theta, &c, s)?;
            worst = worst.max(a.distance(&b));
        }
        Ok(vec![
            Check::below("basis_change_equivalence", worst, BASIS_CHANGE),
            Check::below("basis_completion_exact", bad_matrices as f64, 0.5),
        ])
    }));

    checks.extend(guard("separating_trivial", 0.5, || {
        let mut r = rng(seed, 204);
        let mut changed = 0usize;
        for entry in corpus {
            let lat = &entry.lattice;
            let zero = HomologyClass::zero(lat.genus());
            for _ in 0..50 {
                let theta = random_theta(&mut r, lat.genus());
                let s = param(r.random::<f64>());
                if goldman_flow_holonomy(&theta, &zero, s)? != theta {
                    changed += 1;
                }
                let z = lat.combine(theta.angles())?;
                if goldman_flow_jacobian(&z, &zero, s, lat)? != z {
                    changed += 1;
                }
            }
        }
        Ok(vec![Check::below("separating_flow_is_identity", changed as f64, 0.5)])
    }));

    checks
}

fn sample_points(r: &mut ChaCha8Rng, genus: Genus, count: usize) -> Vec<TorusPointV> {
    (0..count)
        .map(|_| TorusPointV::new((0..genus.rank()).map(|_| r.random::<f64>()).collect()).expect("finite"))
        .collect()
}

/// Conjugation z ↦ z̄ written in v-coordinates.
pub fn conjugation_map(lat: &Lattice) -> impl Fn(&TorusPointV) -> Result<TorusPointV> + '_ {
    move |v| {
        let z = v_to_z(v, lat)?;
        z_to_v(
            &JacobianPointZ::new(z.coords().iter().map(|w| w.conj()).collect())?,
            lat,
        )
    }
}

/// The Goldman flow Ξ_s of class c written in v-coordinates.
pub fn flow_map<'a>(
    lat: &'a Lattice,
    c: &'a HomologyClass,
    s: FlowParameter,
) -> impl Fn(&TorusPointV) -> Result<TorusPointV> + 'a {
    move |v| z_to_v(&goldman_flow_jacobian(&v_to_z(v, lat)?, c, s, lat)?, lat)
}

/// Samples away from the cut locus of the lift: retries points whose stencil wraps.
fn robust_cr<F>(map: F, lat: &Lattice, r: &mut ChaCha8Rng, count: usize) -> Result<f64>
where
    F: Fn(&TorusPointV) -> Result<TorusPointV>,
{
    let mut worst: f64 = 0.0;
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < count {
        attempts += 1;
        let sample = sample_points(r, lat.genus(), 1);
        match cr_defect(&map, lat, &sample, DEFAULT_CR_STEP) {
            Ok(d) => {
                worst = worst.max(d);
                accepted += 1;
            }
            Err(crate::Error::CutLocus(_)) if attempts < 20 * count => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(worst)
}

fn holomorphy_checks(corpus: &[CorpusEntry], seed: u64, negative_controls: bool) -> Vec<Check> {
    use thresholds::*;
    let mut checks = Vec::new();
    for (idx, entry) in corpus.iter().enumerate() {
        checks.extend(guard(&format!("holomorphy[{}]", entry.name), CR_HOLOMORPHIC, || {
            let mut r = rng(seed, 300 + idx as u64);
            let lat = &entry.lattice;
            let mut worst: f64 = 0.0;
            for j in 1..=lat.genus().rank() {
                let c = HomologyClass::basis(lat.genus(), j);
                let s = param(r.random::<f64>());
                worst = worst.max(robust_cr(
                    flow_map(lat, &c, s),
                    lat,
                    &mut r,
                    50 / lat.genus().rank() + 1,
                )?);
            }
            let c = random_class(&mut r, lat.genus(), 4);
            worst = worst.max(robust_cr(flow_map(lat, &c, param(0.3)), lat, &mut r, 50)?);
            let conj = robust_cr(conjugation_map(lat), lat, &mut r, 50)?;
            let mut out = vec![
                Check::below(format!("cr_goldman_flow[{}]", entry.name), worst, CR_HOLOMORPHIC),
                Check::above(format!("cr_conjugation_control[{}]", entry.name), conj, CR_CONJUGATION),
            ];
            if negative_controls {
                out.push(
                    Check::below(format!("cr_injected_conjugation[{}]", entry.name), conj, CR_HOLOMORPHIC)
                        .negative_control(),
                );
            }
            Ok(out)
        }));
    }
    checks
}

fn gauge_checks(seed: u64) -> Vec<Check> {
    use thresholds::*;
    let mut checks = Vec::new();
    for g in 1..=2usize {
        checks.extend(guard(&format!("gauge[g={g}]"), GAUGE, || {
            let genus = Genus::new(g)?;
            let models = standard_complexes(genus)?;
            let mut r = rng(seed, 400 + g as u64);
            let (mut equivalence, mut flatness, mut invariance, mut separating): (f64, f64, f64, f64) =
                (0.0, 0.0, 0.0, 0.0);
            let (mut law, mut disjoint): (f64, f64) = (0.0, 0.0);
            for model in [&models.one_vertex, &models.refined] {
                let k = &model.complex;
                for _ in 0..200 {
                    let theta = random_theta(&mut r, genus);
                    let base = model.connection_from_holonomies(theta.angles())?;
                    let h = GaugeTransformation {
                        values: (0..k.vertex_count).map(|_| r.random::<f64>()).collect(),
                    };
                    let a = gauge_transform(k, &base, &h)?;
                    let before = model.holonomy_vector(&a)?;
                    invariance = invariance.max(circle_distance(&before, theta.angles()));
                    let s = param(r.random::<f64>());
                    for (j, c) in model.cocycles.iter().enumerate() {
                        let flowed = flow_connection(k, &a, c, s)?;
                        flatness = flatness.max(flowed.flatness_defect(k));
                        let after = model.holonomy_vector(&flowed)?;
                        let expected = goldman_flow_holonomy(
                            &HolonomyPoint::new(before.clone())?,
                            &HomologyClass::basis(genus, j + 1),
                            s,
                        )?;
                        equivalence = equivalence.max(circle_distance(&after, expected.angles()));
                    }
                    // General cocycle Σ k_j c_j + δw against random integer cycles.
                    let mut values = CrossingCocycle::coboundary_of(
                        k,
                        &(0..k.vertex_count).map(|_| r.random_range(-2..=2)).collect::<Vec<_>>(),
                    )?
                    .values()
                    .to_vec();
                    for c in &model.cocycles {
                        let kj: i64 = r.random_range(-3..=3);
                        for (v, x) in values.iter_mut().zip(c.values()) {
                            *v += kj * x;
                        }
                    }
                    let general = CrossingCocycle::new(k, values)?;
                    let flowed = flow_connection(k, &a, &general, s)?;
                    let mut gamma = model.basis_cycles[0].combine(r.random_range(-3..=3), &model.basis_cycles[0], 0)?;
                    for cycle in &model.basis_cycles[1..] {
                        gamma = gamma.combine(1, cycle, r.random_range(-3..=3))?;
                    }
                    let expected = holonomy(&a, &gamma)? + s.value() * pairing(&general, &gamma)? as f64;
                    let d = wrap_centered(holonomy(&flowed, &gamma)? - expected).abs();
                    if pairing(&general, &gamma)? == 0 {
                        disjoint = disjoint.max(d);
                    }
                    law = law.max(d);
                    // Coboundary crossing cocycles: separating curves.
                    let witness: Vec<i64> = (0..k.vertex_count).map(|_| r.random_range(-3..=3)).collect();
                    let exact = CrossingCocycle::coboundary_of(k, &witness)?;
                    if is_coboundary(k, &exact)?.is_none() {
                        separating = f64::INFINITY;
                    }
                    let flowed = flow_connection(k, &a, &exact, s)?;
                    for cycle in &model.basis_cycles {
                        let d = wrap_centered(holonomy(&flowed, cycle)? - holonomy(&a, cycle)?).abs();
                        separating = separating.max(d);
                    }
                }
            }
            Ok(vec![
                Check::below(format!("gauge_flow_matches_holonomy_flow[g={g}]"), equivalence, GAUGE),
                Check::below(format!("gauge_flatness_preserved[g={g}]"), flatness, GAUGE),
                Check::below(format!("gauge_invariance[g={g}]"), invariance, GAUGE),
                Check::below(format!("gauge_separating_trivial[g={g}]"), separating, GAUGE),
                Check::below(format!("gauge_holonomy_law[g={g}]"), law, GAUGE),
                Check::below(format!("gauge_zero_pairing_cycles_fixed[g={g}]"), disjoint, GAUGE),
            ])
        }));
    }
    checks
}

/// Runs every check, in a fixed order, from the given seed.
pub fn run_suite(config: &VerifyConfig) -> Vec<Check> {
    let corpus = match build_corpus(&config.quadrature) {
        Ok(c) => c,
        Err(_) => return vec![Check::errored("build_corpus", 0.0)],
    };
    let mut checks = homology_checks(config.seed);
    checks.extend(period_checks(&corpus, &config.quadrature));
    checks.extend(chart_checks(&corpus, config.seed));
    checks.extend(flow_checks(&corpus, config.seed));
    checks.extend(holomorphy_checks(&corpus, config.seed, config.negative_controls));
    checks.extend(gauge_checks(config.seed));
    checks
}

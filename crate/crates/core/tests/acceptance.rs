//! Acceptance suite: one line per criterion; nonzero exit if any fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use jacflow::flows::{
    cr_defect, flow_via_basis_change, flows_commute_check, goldman_flow_holonomy, goldman_flow_jacobian,
    one_parameter_laws, FlowParameter,
};
use jacflow::gauge::{
    flow_connection, gauge_transform, holonomy, standard_complexes, CrossingCocycle, GaugeTransformation,
};
use jacflow::homology::{complete_to_symplectic_basis, content, Genus, HomologyClass, IntMatrix, IntersectionForm};
use jacflow::jacobian::{circle_distance, wrap_centered, wrap_unit, HolonomyPoint, Lattice, TorusPointV};
use jacflow::periods::{period_matrix, riemann_relations, standard_contours, HyperellipticCurve, QuadratureConfig};
use jacflow::verify::{conjugation_map, flow_map};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn real_curve(points: &[f64]) -> HyperellipticCurve {
    HyperellipticCurve::from_branch_points(points.iter().map(|&x| Complex64::new(x, 0.0)).collect()).unwrap()
}

fn x5_minus_x() -> HyperellipticCurve {
    let c = |re, im| Complex64::new(re, im);
    HyperellipticCurve::from_branch_points(vec![c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)])
        .unwrap()
}

fn lattice_of(curve: &HyperellipticCurve) -> Lattice {
    let cfg = QuadratureConfig::default();
    let pm = period_matrix(curve, &standard_contours(curve).unwrap(), &cfg).unwrap();
    Lattice::from_period_matrix(&pm).unwrap()
}

/// Genus-1 and genus-2 corpus lattices.
fn small_lattices() -> Vec<Lattice> {
    vec![
        lattice_of(&real_curve(&[-1.0, 0.0, 1.0])),
        lattice_of(&real_curve(&[-2.0, -0.5, 1.0, 3.0])),
        lattice_of(&x5_minus_x()),
        lattice_of(&real_curve(&[-3.0, -2.0, -1.0, 1.0, 2.0, 3.0])),
    ]
}

fn theta(r: &mut ChaCha8Rng, g: Genus) -> HolonomyPoint {
    HolonomyPoint::new((0..g.rank()).map(|_| r.random::<f64>()).collect()).unwrap()
}

fn class(r: &mut ChaCha8Rng, g: Genus, bound: i64) -> HomologyClass {
    HomologyClass::new((0..g.rank()).map(|_| r.random_range(-bound..=bound)).collect()).unwrap()
}

fn s(x: f64) -> FlowParameter {
    FlowParameter::new(x).unwrap()
}

fn agm(mut a: f64, mut b: f64) -> f64 {
    while (a - b).abs() > 1e-15 * a {
        (a, b) = ((a + b) / 2.0, (a * b).sqrt());
    }
    a
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let curve = real_curve(&[-1.0, 0.0, 1.0]);
    let pm = period_matrix(
        &curve,
        &standard_contours(&curve).unwrap(),
        &QuadratureConfig::default(),
    )
    .unwrap();
    let tau = riemann_relations(&pm).unwrap().tau[0][0];
    // K(1/√2) = π / (2·AGM(1, 1/√2)); the loop period is 2√2·K.
    let oracle = 2.0 * SQRT_2 * PI / (2.0 * agm(1.0, FRAC_1_SQRT_2));
    let magnitude = pm.columns[0].entries[0].norm();
    let rel = (magnitude - oracle).abs() / oracle;
    let elapsed = start.elapsed();
    let dtau = (tau - Complex64::i()).norm();
    outcome(
        dtau < 1e-8 && rel < 1e-9 && elapsed < Duration::from_secs(5),
        format!(
            "|tau - i| = {dtau:.2e}, |F1| rel err = {rel:.2e}, {:.0} ms",
            elapsed.as_secs_f64() * 1e3
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let curve = x5_minus_x();
    let pm = period_matrix(
        &curve,
        &standard_contours(&curve).unwrap(),
        &QuadratureConfig::default(),
    )
    .unwrap();
    let rr = riemann_relations(&pm).unwrap();
    let elapsed = start.elapsed();
    outcome(
        rr.symmetry_defect < 1e-8 && rr.min_imag_eigenvalue > 0.0 && elapsed < Duration::from_secs(30),
        format!(
            "|tau - tau^T| = {:.2e}, min eig Im tau = {:.4}, {:.0} ms",
            rr.symmetry_defect,
            rr.min_imag_eigenvalue,
            elapsed.as_secs_f64() * 1e3
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(3);
    let mut bad = 0;
    let mut draws = 0;
    for g in 1..=3 {
        let genus = Genus::new(g).unwrap();
        let e2 = HomologyClass::basis(genus, 2);
        for _ in 0..300 {
            let th = theta(&mut r, genus);
            // s lives in ℝ/ℤ: compare against its reduced representative.
            let t = s(r.random_range(-3.0..3.0));
            let out = goldman_flow_holonomy(&th, &e2, t).unwrap();
            let first_ok = out.angles()[0] == wrap_unit(th.angles()[0] + t.value());
            if !first_ok || out.angles()[1..] != th.angles()[1..] {
                bad += 1;
            }
            draws += 1;
        }
    }
    // θ = 0, s = 1/4.
    let zero = HolonomyPoint::zero(Genus::new(1).unwrap());
    let example = goldman_flow_holonomy(&zero, &HomologyClass::new(vec![0, 1]).unwrap(), s(0.25)).unwrap();
    let example_ok = example.angles() == [0.25, 0.0];
    outcome(
        bad == 0 && example_ok,
        format!(
            "{bad} mismatches of {draws}; e2 at theta=0, s=0.25 -> {:?}",
            example.angles()
        ),
    )
}

fn criterion_4() -> Outcome {
    let lattices = small_lattices();
    let mut r = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let lat = &lattices[i % lattices.len()];
        let th = theta(&mut r, lat.genus());
        let c = class(&mut r, lat.genus(), 5);
        worst = worst.max(flows_commute_check(&th, &c, s(r.random()), lat).unwrap());
    }
    outcome(worst < 1e-10, format!("max defect {worst:.2e} over 1000 draws"))
}

fn criterion_5() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(5);
    let (mut period, mut group): (f64, f64) = (0.0, 0.0);
    for i in 0..1000 {
        let genus = Genus::new(1 + i % 3).unwrap();
        let th = theta(&mut r, genus);
        let c = class(&mut r, genus, 9);
        let d = one_parameter_laws(&th, &c, s(r.random()), s(r.random())).unwrap();
        period = period.max(d.period_defect);
        group = group.max(d.group_defect);
    }
    outcome(
        period < 1e-12 && group < 1e-12,
        format!("Xi_1 defect {period:.2e}, composition defect {group:.2e}"),
    )
}

fn criterion_6() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(6);
    let mut changed = 0;
    for lat in small_lattices() {
        let zero = HomologyClass::zero(lat.genus());
        for _ in 0..100 {
            let th = theta(&mut r, lat.genus());
            let t = s(r.random());
            changed += usize::from(goldman_flow_holonomy(&th, &zero, t).unwrap() != th);
            let z = lat.combine(th.angles()).unwrap();
            changed += usize::from(goldman_flow_jacobian(&z, &zero, t, &lat).unwrap() != z);
        }
    }
    let mut gauge_worst: f64 = 0.0;
    for g in 1..=2 {
        let models = standard_complexes(Genus::new(g).unwrap()).unwrap();
        for model in [&models.one_vertex, &models.refined] {
            let k = &model.complex;
            for _ in 0..200 {
                let a = model
                    .connection_from_holonomies(theta(&mut r, model.genus()).angles())
                    .unwrap();
                let w: Vec<i64> = (0..k.vertex_count).map(|_| r.random_range(-5..=5)).collect();
                let exact = CrossingCocycle::coboundary_of(k, &w).unwrap();
                let flowed = flow_connection(k, &a, &exact, s(r.random())).unwrap();
                for cycle in &model.basis_cycles {
                    let d = wrap_centered(holonomy(&flowed, cycle).unwrap() - holonomy(&a, cycle).unwrap()).abs();
                    gauge_worst = gauge_worst.max(d);
                }
            }
        }
    }
    outcome(
        changed == 0 && gauge_worst < 1e-12,
        format!("{changed} non-identity c=0 flows; coboundary holonomy change {gauge_worst:.2e}"),
    )
}

fn samples(r: &mut ChaCha8Rng, g: Genus, n: usize) -> Vec<TorusPointV> {
    (0..n)
        .map(|_| TorusPointV::new((0..g.rank()).map(|_| 0.05 + 0.6 * r.random::<f64>()).collect()).unwrap())
        .collect()
}

fn criterion_7() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(7);
    let (mut flow_worst, mut conj_least): (f64, f64) = (0.0, f64::INFINITY);
    for lat in small_lattices() {
        let g = lat.genus();
        // Points in [0.05, 0.65]^2g with s ≤ 0.3 keep every stencil off the cut.
        let pts = samples(&mut r, g, 50);
        for j in 1..=g.rank() {
            let c = HomologyClass::basis(g, j);
            let d = cr_defect(flow_map(&lat, &c, s(0.3 * r.random::<f64>())), &lat, &pts, 1e-4).unwrap();
            flow_worst = flow_worst.max(d);
        }
        let conj = cr_defect(conjugation_map(&lat), &lat, &pts, 1e-4);
        conj_least = conj_least.min(conj.unwrap_or(f64::NAN));
    }
    outcome(
        flow_worst < 1e-6 && conj_least > 0.1,
        format!("flow CR defect {flow_worst:.2e}; conjugation control {conj_least:.3}"),
    )
}

fn criterion_8() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    let mut exact_failures = 0;
    for i in 0..500 {
        let genus = Genus::new(1 + i % 3).unwrap();
        let c = loop {
            let c = class(&mut r, genus, 12);
            if !c.is_zero() && content(&c) == 1 {
                break c;
            }
        };
        let m = complete_to_symplectic_basis(&c).unwrap();
        let mm: &IntMatrix = m.matrix();
        let j = IntersectionForm::new(genus).matrix();
        let symplectic = mm.transpose().mul(&j).unwrap().mul(mm).unwrap() == j;
        if !symplectic || mm.column(1) != c.coeffs() {
            exact_failures += 1;
        }
        let th = theta(&mut r, genus);
        let t = s(r.random());
        let a = goldman_flow_holonomy(&th, &c, t).unwrap();
        let b = flow_via_basis_change(&th, &c, t).unwrap();
        worst = worst.max(circle_distance(a.angles(), b.angles()));
    }
    outcome(
        worst < 1e-12 && exact_failures == 0,
        format!("max route disagreement {worst:.2e}; {exact_failures} bad completions of 500"),
    )
}

fn criterion_9() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for g in 1..=2 {
        let genus = Genus::new(g).unwrap();
        let models = standard_complexes(genus).unwrap();
        for model in [&models.one_vertex, &models.refined] {
            let k = &model.complex;
            for _ in 0..200 {
                let base = model.connection_from_holonomies(theta(&mut r, genus).angles()).unwrap();
                let h = GaugeTransformation {
                    values: (0..k.vertex_count).map(|_| r.random::<f64>()).collect(),
                };
                let a = gauge_transform(k, &base, &h).unwrap();
                let before = HolonomyPoint::new(model.holonomy_vector(&a).unwrap()).unwrap();
                let t = s(r.random());
                for (j, c) in model.cocycles.iter().enumerate() {
                    let after = model.holonomy_vector(&flow_connection(k, &a, c, t).unwrap()).unwrap();
                    let expected = goldman_flow_holonomy(&before, &HomologyClass::basis(genus, j + 1), t).unwrap();
                    worst = worst.max(circle_distance(&after, expected.angles()));
                }
            }
        }
    }
    outcome(worst < 1e-12, format!("max holonomy mismatch {worst:.2e}"))
}

fn run_verify(seed: &str) -> (i32, Value, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_jacflow"))
        .args(["verify", "--seed", seed])
        .output()
        .expect("run jacflow");
    let elapsed = start.elapsed();
    let mut report: Value = serde_json::from_slice(&out.stdout).expect("JSON report");
    report["wall_time_ms"] = Value::Null;
    (out.status.code().unwrap_or(-1), report, elapsed)
}

fn criterion_10() -> Outcome {
    let (code, a, elapsed) = run_verify("0");
    let (_, b, _) = run_verify("0");
    let (code42, _, _) = run_verify("42");
    let deterministic = a == b;
    outcome(
        code == 0 && code42 == 0 && deterministic && elapsed < Duration::from_secs(120),
        format!(
            "exit {code} (seed 42: {code42}), deterministic = {deterministic}, {:.2} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("lemniscatic periods", criterion_1),
        ("riemann relations, genus 2", criterion_2),
        ("flow formula pin", criterion_3),
        ("commuting square", criterion_4),
        ("one-parameter group laws", criterion_5),
        ("separating triviality", criterion_6),
        ("holomorphy", criterion_7),
        ("basis-change route", criterion_8),
        ("gauge-picture equivalence", criterion_9),
        ("verify end-to-end", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!(
            "criterion {:>2} {:<28} {}  {}",
            i + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

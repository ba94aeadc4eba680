use std::ffi::CStr;
use std::ptr;

use jacflow_ffi::*;

fn last_error() -> String {
    let p = jf_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn lemniscatic() -> *mut JfCurve {
    let points = [-1.0, 0.0, 0.0, 0.0, 1.0, 0.0];
    let mut curve = ptr::null_mut();
    assert_eq!(
        unsafe { jf_curve_from_branch_points(points.as_ptr(), 3, &mut curve) },
        JfStatus::Ok
    );
    curve
}

fn lattice_of(curve: *const JfCurve) -> *mut JfLattice {
    let mut lattice = ptr::null_mut();
    assert_eq!(unsafe { jf_lattice_from_curve(curve, 0.0, &mut lattice) }, JfStatus::Ok);
    lattice
}

#[test]
fn lemniscatic_tau_through_the_abi() {
    let curve = lemniscatic();
    assert_eq!(unsafe { jf_curve_genus(curve) }, 1);
    let lattice = lattice_of(curve);
    let (mut tau, mut sym, mut eig) = ([0.0; 2], 0.0, 0.0);
    assert_eq!(
        unsafe { jf_riemann_relations(lattice, tau.as_mut_ptr(), &mut sym, &mut eig) },
        JfStatus::Ok
    );
    assert!(tau[0].abs() < 1e-8 && (tau[1] - 1.0).abs() < 1e-8);
    assert!(eig > 0.0);
    unsafe {
        jf_lattice_free(lattice);
        jf_curve_free(curve);
    }
}

#[test]
fn json_curve_and_genus_two_relations() {
    let json = c"{\"coefficients\": [0, -1, 0, 0, 0, 1]}";
    let mut curve = ptr::null_mut();
    assert_eq!(unsafe { jf_curve_from_json(json.as_ptr(), &mut curve) }, JfStatus::Ok);
    assert_eq!(unsafe { jf_curve_genus(curve) }, 2);
    let lattice = lattice_of(curve);
    let (mut tau, mut sym, mut eig) = ([0.0; 8], 0.0, 0.0);
    assert_eq!(
        unsafe { jf_riemann_relations(lattice, tau.as_mut_ptr(), &mut sym, &mut eig) },
        JfStatus::Ok
    );
    assert!(sym < 1e-8 && eig > 0.0);
    unsafe {
        jf_lattice_free(lattice);
        jf_curve_free(curve);
    }
}

#[test]
fn homology_calls() {
    let (a, b) = ([1i64, 0, 1, 0], [0i64, 1, 0, 2]);
    let mut out = 0;
    assert_eq!(
        unsafe { jf_intersection(a.as_ptr(), b.as_ptr(), 4, &mut out) },
        JfStatus::Ok
    );
    assert_eq!(out, 3);

    let mut m = [0i64; 4];
    assert_eq!(
        unsafe { jf_complete_basis([1i64, 0].as_ptr(), 2, m.as_mut_ptr()) },
        JfStatus::Ok
    );
    assert_eq!(m, [0, 1, -1, 0]);
    assert_eq!(
        unsafe { jf_complete_basis([2i64, 0].as_ptr(), 2, m.as_mut_ptr()) },
        JfStatus::NonPrimitive
    );
    assert_eq!(
        unsafe { jf_complete_basis([0i64, 0].as_ptr(), 2, m.as_mut_ptr()) },
        JfStatus::SeparatingClass
    );
    assert!(last_error().contains("separating"));
}

#[test]
fn flows_and_charts() {
    let mut out = [0.0; 2];
    let status = unsafe { jf_flow_holonomy([0.0, 0.0].as_ptr(), [0i64, 1].as_ptr(), 2, 0.25, out.as_mut_ptr()) };
    assert_eq!(status, JfStatus::Ok);
    assert_eq!(out, [0.25, 0.0]);

    let curve = lemniscatic();
    let lattice = lattice_of(curve);
    let v = [0.3, 0.7];
    let (mut z, mut back) = ([0.0; 2], [0.0; 2]);
    unsafe {
        assert_eq!(jf_v_to_z(lattice, v.as_ptr(), z.as_mut_ptr()), JfStatus::Ok);
        assert_eq!(jf_z_to_v(lattice, z.as_ptr(), back.as_mut_ptr()), JfStatus::Ok);
    }
    assert!((back[0] - v[0]).abs() < 1e-12 && (back[1] - v[1]).abs() < 1e-12);

    let mut flowed = [0.0; 2];
    let c = [2i64, -1];
    assert_eq!(
        unsafe { jf_flow_jacobian(lattice, z.as_ptr(), c.as_ptr(), 0.4, flowed.as_mut_ptr()) },
        JfStatus::Ok
    );
    let mut defect = f64::NAN;
    assert_eq!(
        unsafe { jf_flows_commute_check(lattice, v.as_ptr(), c.as_ptr(), 0.4, &mut defect) },
        JfStatus::Ok
    );
    assert!(defect < 1e-10);
    unsafe {
        jf_lattice_free(lattice);
        jf_curve_free(curve);
    }
}

#[test]
fn square_lattice_from_generators() {
    let generators = [1.0, 0.0, 0.0, 1.0];
    let mut lattice = ptr::null_mut();
    assert_eq!(
        unsafe { jf_lattice_from_generators(generators.as_ptr(), 1, &mut lattice) },
        JfStatus::Ok
    );
    assert_eq!(unsafe { jf_lattice_genus(lattice) }, 1);
    let mut z = [0.0; 2];
    unsafe { jf_v_to_z(lattice, [0.25, 0.5].as_ptr(), z.as_mut_ptr()) };
    assert!((z[0] - 0.25).abs() < 1e-15 && (z[1] - 0.5).abs() < 1e-15);
    unsafe { jf_lattice_free(lattice) };

    let flat = [1.0, 0.0, 2.0, 0.0];
    assert_eq!(
        unsafe { jf_lattice_from_generators(flat.as_ptr(), 1, &mut lattice) },
        JfStatus::Degenerate
    );
}

#[test]
fn errors_are_reported() {
    let mut curve = ptr::null_mut();
    let points = [0.0, 0.0, 0.0, 0.0, 1.0, 0.0];
    assert_eq!(
        unsafe { jf_curve_from_branch_points(points.as_ptr(), 3, &mut curve) },
        JfStatus::CoincidentBranchPoints
    );
    assert!(last_error().contains("coincide"));
    assert_eq!(
        unsafe { jf_curve_from_json(c"{\"branch_points\": [".as_ptr(), &mut curve) },
        JfStatus::Parse
    );
    assert_eq!(
        unsafe { jf_curve_from_branch_points(ptr::null(), 3, &mut curve) },
        JfStatus::NullPointer
    );
    let mut out = [0.0; 4];
    let status = unsafe { jf_flow_holonomy([0.0; 4].as_ptr(), [1i64, 0, 0].as_ptr(), 3, 0.1, out.as_mut_ptr()) };
    assert_eq!(status, JfStatus::DimensionMismatch);
    assert!(!jf_status_message(JfStatus::Degenerate).is_null());
    unsafe {
        jf_curve_free(ptr::null_mut());
        jf_lattice_free(ptr::null_mut());
    }
}

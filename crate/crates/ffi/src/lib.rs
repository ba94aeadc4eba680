//! C ABI for jacflow.
//!
//! Conventions: every fallible function returns a [`JfStatus`] and writes
//! results through caller-owned out-pointers. Complex vectors of length g are
//! passed as 2g interleaved doubles (re, im, re, im, …); homology classes and
//! holonomy/v-points as arrays of length 2g. Handles come from the `jf_*_from_*`
//! constructors and are released with the matching `*_free`. On failure the
//! message of the last error on the calling thread is available from
//! [`jf_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use num_complex::Complex64;

use jacflow::flows::{flows_commute_check, goldman_flow_holonomy, goldman_flow_jacobian, FlowParameter};
use jacflow::homology::{complete_to_symplectic_basis, intersection, HomologyClass};
use jacflow::jacobian::{v_to_z, z_to_v, HolonomyPoint, JacobianPointZ, Lattice, TorusPointV};
use jacflow::periods::{
    period_matrix, riemann_relations, standard_contours, HyperellipticCurve, PeriodMatrix, PeriodVector,
    QuadratureConfig,
};
use jacflow::Error;

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JfStatus {
    Ok = 0,
    NullPointer = 1,
    /// Lengths disagree or are odd/zero.
    DimensionMismatch = 2,
    InvalidArgument = 3,
    Parse = 4,
    /// A class of content > 1 where a primitive one is required.
    NonPrimitive = 5,
    /// The zero class where a nonzero one is required.
    SeparatingClass = 6,
    CoincidentBranchPoints = 7,
    ConvergenceFailure = 8,
    /// Degenerate, ill-conditioned or singular period data.
    Degenerate = 9,
    Overflow = 10,
    Internal = 11,
}

/// An opaque hyperelliptic curve y² = f(x).
pub struct JfCurve {
    inner: HyperellipticCurve,
}

/// An opaque period lattice Λ ⊂ ℂ^g.
pub struct JfLattice {
    lattice: Lattice,
    periods: PeriodMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

fn status_of(e: &Error) -> JfStatus {
    match e {
        Error::DimensionMismatch { .. } => JfStatus::DimensionMismatch,
        Error::NonPrimitive(_) => JfStatus::NonPrimitive,
        Error::SeparatingClass | Error::ZeroClass => JfStatus::SeparatingClass,
        Error::CoincidentBranchPoints(..) => JfStatus::CoincidentBranchPoints,
        Error::ConvergenceFailure { .. } | Error::RootFinding => JfStatus::ConvergenceFailure,
        Error::DegeneratePeriodMatrix(_) | Error::SingularAPeriods | Error::IllConditioned(_) => JfStatus::Degenerate,
        Error::Overflow => JfStatus::Overflow,
        Error::Parse(_) => JfStatus::Parse,
        _ => JfStatus::InvalidArgument,
    }
}

struct Failure(JfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(JfStatus::NullPointer, format!("null pointer: {what}"))
}

/// Runs `f`, converting errors and panics into a status code.
fn guarded(f: impl FnOnce() -> Result<(), Failure>) -> JfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => JfStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            JfStatus::Internal
        }
    }
}

unsafe fn input<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn output<'a, T>(p: *mut T, len: usize, what: &str) -> Result<&'a mut [T], Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts_mut(p, len))
}

unsafe fn class_arg(c: *const i64, len: usize) -> Result<HomologyClass, Failure> {
    Ok(HomologyClass::new(input(c, len, "class")?.to_vec())?)
}

fn complex_from(parts: &[f64]) -> Vec<Complex64> {
    parts.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])).collect()
}

fn write_complex(out: &mut [f64], z: &[Complex64]) {
    for (pair, w) in out.chunks_exact_mut(2).zip(z) {
        pair[0] = w.re;
        pair[1] = w.im;
    }
}

fn quadrature(tolerance: f64) -> Result<QuadratureConfig, Failure> {
    let mut cfg = QuadratureConfig::default();
    if tolerance > 0.0 {
        cfg.tolerance = tolerance;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn jf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn jf_status_message(status: JfStatus) -> *const c_char {
    let text: &'static CStr = match status {
        JfStatus::Ok => c"ok",
        JfStatus::NullPointer => c"null pointer",
        JfStatus::DimensionMismatch => c"dimension mismatch",
        JfStatus::InvalidArgument => c"invalid argument",
        JfStatus::Parse => c"parse error",
        JfStatus::NonPrimitive => c"class is not primitive",
        JfStatus::SeparatingClass => c"class is zero",
        JfStatus::CoincidentBranchPoints => c"coincident branch points",
        JfStatus::ConvergenceFailure => c"numerical method did not converge",
        JfStatus::Degenerate => c"degenerate period data",
        JfStatus::Overflow => c"integer overflow",
        JfStatus::Internal => c"internal error",
    };
    text.as_ptr()
}

/// Curve from `n` branch points given as 2n interleaved doubles.
///
/// # Safety
/// `points` must hold 2n readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jf_curve_from_branch_points(points: *const f64, n: usize, out: *mut *mut JfCurve) -> JfStatus {
    guarded(|| {
        let pts = complex_from(input(points, 2 * n, "points")?);
        let out = output(out, 1, "out")?;
        let curve = HyperellipticCurve::from_branch_points(pts)?;
        out[0] = Box::into_raw(Box::new(JfCurve { inner: curve }));
        Ok(())
    })
}

/// Curve from the JSON curve description accepted by the CLI.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jf_curve_from_json(json: *const c_char, out: *mut *mut JfCurve) -> JfStatus {
    guarded(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(JfStatus::Parse, e.to_string()))?;
        let out = output(out, 1, "out")?;
        let spec: jacflow::periods::CurveSpec =
            serde_json::from_str(text).map_err(|e| Failure(JfStatus::Parse, e.to_string()))?;
        out[0] = Box::into_raw(Box::new(JfCurve {
            inner: spec.into_curve()?,
        }));
        Ok(())
    })
}

/// Genus of the curve, or 0 for NULL.
///
/// # Safety
/// `curve` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jf_curve_genus(curve: *const JfCurve) -> usize {
    curve.as_ref().map_or(0, |c| c.inner.genus().get())
}

/// # Safety
/// `curve` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jf_curve_free(curve: *mut JfCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Period lattice of `curve` over the standard contours. `tolerance <= 0`
/// selects the default quadrature tolerance.
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jf_lattice_from_curve(
    curve: *const JfCurve,
    tolerance: f64,
    out: *mut *mut JfLattice,
) -> JfStatus {
    guarded(|| {
        let curve = &curve.as_ref().ok_or_else(|| null("curve"))?.inner;
        let out = output(out, 1, "out")?;
        let cfg = quadrature(tolerance)?;
        let periods = period_matrix(curve, &standard_contours(curve)?, &cfg)?;
        let lattice = Lattice::from_period_matrix(&periods)?;
        out[0] = Box::into_raw(Box::new(JfLattice { lattice, periods }));
        Ok(())
    })
}

/// Lattice from 2g generators in ℂ^g: generator k occupies doubles
/// [2g·k, 2g·(k+1)), interleaved.
///
/// # Safety
/// `generators` must hold 4g² readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jf_lattice_from_generators(
    generators: *const f64,
    genus: usize,
    out: *mut *mut JfLattice,
) -> JfStatus {
    guarded(|| {
        let flat = input(generators, 4 * genus * genus, "generators")?;
        let out = output(out, 1, "out")?;
        let columns: Vec<PeriodVector> = flat
            .chunks_exact(2 * genus.max(1))
            .map(|col| PeriodVector {
                entries: complex_from(col),
                errors: vec![0.0; genus],
                order: 0,
            })
            .collect();
        let periods = PeriodMatrix::from_columns(columns)?;
        let lattice = Lattice::from_period_matrix(&periods)?;
        out[0] = Box::into_raw(Box::new(JfLattice { lattice, periods }));
        Ok(())
    })
}

/// Genus of the lattice, or 0 for NULL.
///
/// # Safety
/// `lattice` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jf_lattice_genus(lattice: *const JfLattice) -> usize {
    lattice.as_ref().map_or(0, |l| l.lattice.genus().get())
}

/// # Safety
/// `lattice` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jf_lattice_free(lattice: *mut JfLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// τ = A⁻¹B (g×g row-major, interleaved) with its symmetry defect and the
/// smallest eigenvalue of Im τ.
///
/// # Safety
/// `tau` must hold 2g² writable doubles; the scalar outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn jf_riemann_relations(
    lattice: *const JfLattice,
    tau: *mut f64,
    symmetry_defect: *mut f64,
    min_imag_eigenvalue: *mut f64,
) -> JfStatus {
    guarded(|| {
        let l = lattice.as_ref().ok_or_else(|| null("lattice"))?;
        let g = l.lattice.genus().get();
        let rr = riemann_relations(&l.periods)?;
        let tau = output(tau, 2 * g * g, "tau")?;
        let sym = output(symmetry_defect, 1, "symmetry_defect")?;
        let eig = output(min_imag_eigenvalue, 1, "min_imag_eigenvalue")?;
        let flat: Vec<Complex64> = rr.tau.into_iter().flatten().collect();
        write_complex(tau, &flat);
        sym[0] = rr.symmetry_defect;
        eig[0] = rr.min_imag_eigenvalue;
        Ok(())
    })
}

/// ⟨a, b⟩ for classes of length `len`.
///
/// # Safety
/// `a` and `b` must hold `len` readable integers; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jf_intersection(a: *const i64, b: *const i64, len: usize, out: *mut i64) -> JfStatus {
    guarded(|| {
        let (a, b) = (class_arg(a, len)?, class_arg(b, len)?);
        output(out, 1, "out")?[0] = intersection(&a, &b)?;
        Ok(())
    })
}

/// Symplectic M with M·e₂ = c, written row-major into `len × len` integers.
///
/// # Safety
/// `c` must hold `len` readable integers; `matrix` `len²` writable ones.
#[no_mangle]
pub unsafe extern "C" fn jf_complete_basis(c: *const i64, len: usize, matrix: *mut i64) -> JfStatus {
    guarded(|| {
        let c = class_arg(c, len)?;
        let m = complete_to_symplectic_basis(&c)?;
        let out = output(matrix, len * len, "matrix")?;
        for (dst, src) in out.iter_mut().zip(m.matrix().rows().into_iter().flatten()) {
            *dst = src;
        }
        Ok(())
    })
}

/// Ξ_s of class c at holonomy point θ; all arrays have length `len` = 2g.
///
/// # Safety
/// `theta` and `c` must hold `len` readable values; `out` `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn jf_flow_holonomy(
    theta: *const f64,
    c: *const i64,
    len: usize,
    s: f64,
    out: *mut f64,
) -> JfStatus {
    guarded(|| {
        let theta = HolonomyPoint::new(input(theta, len, "theta")?.to_vec())?;
        let c = class_arg(c, len)?;
        let flowed = goldman_flow_holonomy(&theta, &c, FlowParameter::new(s)?)?;
        output(out, len, "out")?.copy_from_slice(flowed.angles());
        Ok(())
    })
}

/// Ξ_s on ℂ^g/Λ: `z` and `out` are g interleaved complex numbers, `c` has 2g entries.
///
/// # Safety
/// `z` must hold 2g readable doubles, `c` 2g integers, `out` 2g writable doubles.
#[no_mangle]
pub unsafe extern "C" fn jf_flow_jacobian(
    lattice: *const JfLattice,
    z: *const f64,
    c: *const i64,
    s: f64,
    out: *mut f64,
) -> JfStatus {
    guarded(|| {
        let l = &lattice.as_ref().ok_or_else(|| null("lattice"))?.lattice;
        let rank = l.genus().rank();
        let z = JacobianPointZ::new(complex_from(input(z, rank, "z")?))?;
        let c = class_arg(c, rank)?;
        let flowed = goldman_flow_jacobian(&z, &c, FlowParameter::new(s)?, l)?;
        write_complex(output(out, rank, "out")?, flowed.coords());
        Ok(())
    })
}

/// v ∈ [0,1)^{2g} to z ∈ ℂ^g (interleaved).
///
/// # Safety
/// `v` must hold 2g readable doubles and `z` 2g writable ones.
#[no_mangle]
pub unsafe extern "C" fn jf_v_to_z(lattice: *const JfLattice, v: *const f64, z: *mut f64) -> JfStatus {
    guarded(|| {
        let l = &lattice.as_ref().ok_or_else(|| null("lattice"))?.lattice;
        let rank = l.genus().rank();
        let v = TorusPointV::new(input(v, rank, "v")?.to_vec())?;
        write_complex(output(z, rank, "z")?, v_to_z(&v, l)?.coords());
        Ok(())
    })
}

/// z ∈ ℂ^g (interleaved) to v ∈ [0,1)^{2g}.
///
/// # Safety
/// `z` must hold 2g readable doubles and `v` 2g writable ones.
#[no_mangle]
pub unsafe extern "C" fn jf_z_to_v(lattice: *const JfLattice, z: *const f64, v: *mut f64) -> JfStatus {
    guarded(|| {
        let l = &lattice.as_ref().ok_or_else(|| null("lattice"))?.lattice;
        let rank = l.genus().rank();
        let z = JacobianPointZ::new(complex_from(input(z, rank, "z")?))?;
        output(v, rank, "v")?.copy_from_slice(z_to_v(&z, l)?.coords());
        Ok(())
    })
}

/// Torus distance between the two routes around the holonomy/lattice square.
///
/// # Safety
/// `theta` and `c` must hold 2g readable values; `defect` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jf_flows_commute_check(
    lattice: *const JfLattice,
    theta: *const f64,
    c: *const i64,
    s: f64,
    defect: *mut f64,
) -> JfStatus {
    guarded(|| {
        let l = &lattice.as_ref().ok_or_else(|| null("lattice"))?.lattice;
        let rank = l.genus().rank();
        let theta = HolonomyPoint::new(input(theta, rank, "theta")?.to_vec())?;
        let c = class_arg(c, rank)?;
        output(defect, 1, "defect")?[0] = flows_commute_check(&theta, &c, FlowParameter::new(s)?, l)?;
        Ok(())
    })
}

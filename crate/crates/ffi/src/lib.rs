//! C ABI for the shadow-calculus and hyperbolic-geometry library.
//!
//! All objects are opaque handles created and released by the paired
//! `*_new`/`*_free` functions; every fallible call returns an `ScStatus`
//! code and writes results through out-pointers. Strings returned by the
//! library must be released with `sc_string_free`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use shadowcalc::diagram::{
    build_star_shadow, parse_pd, reduce_with_best_orientations, LinkDiagram, StarShadow,
};
use shadowcalc::hyp::{
    apply_regluing, build_double_cover, build_pentachoron_complex, cusp_moduli, gf2_face_signs,
    gluing_equations, parse_triangulation, perturbed_regular, serialize_triangulation,
    shipped_variants, solve_shapes, total_volume, volume_constants, IdealTriangulation,
};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum ScStatus {
    /// Success.
    ScOk = 0,
    /// A null pointer or malformed UTF-8 argument.
    ScNullArgument = 1,
    /// The input text failed to parse or validate.
    ScParseError = 2,
    /// The diagram reduction precondition failed.
    ScReductionError = 3,
    /// The Newton solve diverged or left the geometric region.
    ScSolveError = 4,
    /// An index argument is out of range.
    ScIndexError = 5,
    /// Arguments violate a documented precondition.
    ScDomainError = 6,
    /// An internal invariant failed.
    ScInternalError = 7,
}

/// Opaque parsed link diagram.
pub struct ScDiagram(LinkDiagram);

/// Opaque diagram shadow (polyhedron, branching, gleams).
pub struct ScShadow(StarShadow);

/// Opaque ideal triangulation.
pub struct ScTriangulation(IdealTriangulation);

/// Solution summary of a gluing-equation solve.
#[repr(C)]
pub struct ScSolution {
    pub tetrahedra: usize,
    pub residual: f64,
    pub volume: f64,
    pub cusp_count: usize,
    /// 1 when some tetrahedron is within tolerance of flat.
    pub flat_warning: i32,
}

fn read_str<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().ok()
}

fn write_out<T>(out: *mut *mut T, value: T) -> ScStatus {
    if out.is_null() {
        return ScStatus::ScNullArgument;
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    ScStatus::ScOk
}

/// Parse planar-diagram text into a diagram handle.
#[no_mangle]
pub extern "C" fn sc_diagram_parse(text: *const c_char, out: *mut *mut ScDiagram) -> ScStatus {
    let Some(text) = read_str(text) else {
        return ScStatus::ScNullArgument;
    };
    match parse_pd(text) {
        Ok(d) => write_out(out, ScDiagram(d)),
        Err(_) => ScStatus::ScParseError,
    }
}

/// Release a diagram handle.
#[no_mangle]
pub extern "C" fn sc_diagram_free(d: *mut ScDiagram) {
    if !d.is_null() {
        drop(unsafe { Box::from_raw(d) });
    }
}

/// Build the starred shadow (faces plus annuli) of a diagram.
#[no_mangle]
pub extern "C" fn sc_shadow_star(d: *const ScDiagram, out: *mut *mut ScShadow) -> ScStatus {
    if d.is_null() {
        return ScStatus::ScNullArgument;
    }
    let d = unsafe { &(*d).0 };
    match catch_unwind(AssertUnwindSafe(|| build_star_shadow(d, None))) {
        Ok(s) => write_out(out, ScShadow(s)),
        Err(_) => ScStatus::ScInternalError,
    }
}

/// Build the reduced shadow (outer region removed, best annulus
/// orientations).
#[no_mangle]
pub extern "C" fn sc_shadow_reduce(d: *const ScDiagram, out: *mut *mut ScShadow) -> ScStatus {
    if d.is_null() {
        return ScStatus::ScNullArgument;
    }
    let d = unsafe { &(*d).0 };
    match catch_unwind(AssertUnwindSafe(|| reduce_with_best_orientations(d))) {
        Ok(Ok((s, _))) => write_out(out, ScShadow(s)),
        Ok(Err(_)) => ScStatus::ScReductionError,
        Err(_) => ScStatus::ScInternalError,
    }
}

/// Release a shadow handle.
#[no_mangle]
pub extern "C" fn sc_shadow_free(s: *mut ScShadow) {
    if !s.is_null() {
        drop(unsafe { Box::from_raw(s) });
    }
}

/// Number of regions of the shadow polyhedron.
#[no_mangle]
pub extern "C" fn sc_shadow_region_count(s: *const ScShadow) -> usize {
    if s.is_null() {
        return 0;
    }
    unsafe { &(*s).0 }.dec.poly.regions.len()
}

/// Copy the gleams (one per internal region, in region order) into `buf`;
/// writes the required length to `len` and fills at most the given
/// capacity.
#[no_mangle]
pub extern "C" fn sc_shadow_gleams(
    s: *const ScShadow,
    buf: *mut f64,
    capacity: usize,
    len: *mut usize,
) -> ScStatus {
    if s.is_null() || len.is_null() {
        return ScStatus::ScNullArgument;
    }
    let gleams: Vec<f64> = unsafe { &(*s).0 }
        .dec
        .gleams
        .iter()
        .flatten()
        .map(|(_, g)| g.as_f64())
        .collect();
    unsafe { *len = gleams.len() };
    if capacity < gleams.len() {
        return ScStatus::ScOk;
    }
    if buf.is_null() {
        return ScStatus::ScNullArgument;
    }
    for (i, g) in gleams.iter().enumerate() {
        unsafe { *buf.add(i) = *g };
    }
    ScStatus::ScOk
}

/// Build the canonical 10-tetrahedron double cover.
#[no_mangle]
pub extern "C" fn sc_cover_build(out: *mut *mut ScTriangulation) -> ScStatus {
    let q = build_pentachoron_complex();
    let Ok((eps, _)) = gf2_face_signs(&q) else {
        return ScStatus::ScInternalError;
    };
    write_out(out, ScTriangulation(build_double_cover(&q, &eps)))
}

/// Parse triangulation text into a handle.
#[no_mangle]
pub extern "C" fn sc_triangulation_parse(
    text: *const c_char,
    out: *mut *mut ScTriangulation,
) -> ScStatus {
    let Some(text) = read_str(text) else {
        return ScStatus::ScNullArgument;
    };
    match parse_triangulation(text) {
        Ok(t) => write_out(out, ScTriangulation(t)),
        Err(_) => ScStatus::ScParseError,
    }
}

/// Serialize a triangulation; the returned string must be released with
/// `sc_string_free`.
#[no_mangle]
pub extern "C" fn sc_triangulation_serialize(
    t: *const ScTriangulation,
    out: *mut *mut c_char,
) -> ScStatus {
    if t.is_null() || out.is_null() {
        return ScStatus::ScNullArgument;
    }
    let text = serialize_triangulation(unsafe { &(*t).0 });
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            ScStatus::ScOk
        }
        Err(_) => ScStatus::ScInternalError,
    }
}

/// Release a triangulation handle.
#[no_mangle]
pub extern "C" fn sc_triangulation_free(t: *mut ScTriangulation) {
    if !t.is_null() {
        drop(unsafe { Box::from_raw(t) });
    }
}

/// Number of shipped pants regluings (index 0 is the identity).
#[no_mangle]
pub extern "C" fn sc_reglue_count() -> usize {
    shipped_variants().len()
}

/// Apply the shipped pants regluing with the given index to the canonical
/// cover.
#[no_mangle]
pub extern "C" fn sc_reglue_apply(index: usize, out: *mut *mut ScTriangulation) -> ScStatus {
    let variants = shipped_variants();
    let Some(variant) = variants.get(index) else {
        return ScStatus::ScIndexError;
    };
    let q = build_pentachoron_complex();
    let Ok((eps, _)) = gf2_face_signs(&q) else {
        return ScStatus::ScInternalError;
    };
    let cover = build_double_cover(&q, &eps);
    match apply_regluing(&cover, variant) {
        Ok(t) => write_out(out, ScTriangulation(t)),
        Err(_) => ScStatus::ScInternalError,
    }
}

/// Solve the gluing and completeness equations and summarize the solution.
#[no_mangle]
pub extern "C" fn sc_solve(
    t: *const ScTriangulation,
    seed: u64,
    tol: f64,
    out: *mut ScSolution,
) -> ScStatus {
    if t.is_null() || out.is_null() {
        return ScStatus::ScNullArgument;
    }
    let tri = unsafe { &(*t).0 };
    let solved = catch_unwind(AssertUnwindSafe(|| {
        let (sys, _) = gluing_equations(tri);
        let sol = solve_shapes(&sys, &perturbed_regular(tri.len(), seed), tol)?;
        let (volume, flat) = total_volume(&sol);
        let cusps = cusp_moduli(tri, &sol.shapes);
        Ok::<_, shadowcalc::hyp::solve::SolveError>((sol, volume, flat, cusps.len()))
    }));
    match solved {
        Ok(Ok((sol, volume, flat, cusp_count))) => {
            if !sol.geometric {
                return ScStatus::ScSolveError;
            }
            unsafe {
                *out = ScSolution {
                    tetrahedra: tri.len(),
                    residual: sol.residual,
                    volume,
                    cusp_count,
                    flat_warning: flat as i32,
                };
            }
            ScStatus::ScOk
        }
        Ok(Err(_)) => ScStatus::ScSolveError,
        Err(_) => ScStatus::ScInternalError,
    }
}

/// The two volume constants (regular ideal tetrahedron and octahedron).
#[no_mangle]
pub extern "C" fn sc_volume_constants(v_tet: *mut f64, v_oct: *mut f64) -> ScStatus {
    if v_tet.is_null() || v_oct.is_null() {
        return ScStatus::ScNullArgument;
    }
    let vc = volume_constants();
    unsafe {
        *v_tet = vc.v_tet;
        *v_oct = vc.v_oct;
    }
    ScStatus::ScOk
}

/// Closed volume formula 2(n - 2m) v_oct + 10 m v_tet; rejects n <= 0,
/// m < 0, and n < 2m.
#[no_mangle]
pub extern "C" fn sc_volume_formula(n: i64, m: i64, out: *mut f64) -> ScStatus {
    if out.is_null() {
        return ScStatus::ScNullArgument;
    }
    match shadowcalc::hyp::volume_formula(n, m, &volume_constants()) {
        Ok(v) => {
            unsafe { *out = v };
            ScStatus::ScOk
        }
        Err(_) => ScStatus::ScDomainError,
    }
}

/// Release a string returned by this library.
#[no_mangle]
pub extern "C" fn sc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

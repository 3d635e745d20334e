//! Exercises the C ABI through the exported functions.

use std::ffi::{CStr, CString};
use std::ptr;

use shadowcalc_ffi::*;

#[test]
fn diagram_shadow_lifecycle() {
    let text = CString::new("X(1,3,2,4) X(3,1,4,2)").unwrap();
    let mut d: *mut ScDiagram = ptr::null_mut();
    assert!(sc_diagram_parse(text.as_ptr(), &mut d) == ScStatus::ScOk);
    let mut s: *mut ScShadow = ptr::null_mut();
    assert!(sc_shadow_star(d, &mut s) == ScStatus::ScOk);
    assert_eq!(sc_shadow_region_count(s), 6);
    let mut len = 0usize;
    let mut buf = [0f64; 8];
    assert!(sc_shadow_gleams(s, buf.as_mut_ptr(), buf.len(), &mut len) == ScStatus::ScOk);
    assert_eq!(len, 3);
    let mut got = buf[..3].to_vec();
    got.sort_by(f64::total_cmp);
    assert_eq!(got, vec![-1.0, -1.0, 1.0]);
    sc_shadow_free(s);
    let mut r: *mut ScShadow = ptr::null_mut();
    assert!(sc_shadow_reduce(d, &mut r) == ScStatus::ScOk);
    assert_eq!(sc_shadow_region_count(r), 3);
    sc_shadow_free(r);
    sc_diagram_free(d);

    let bad = CString::new("X(1,2,1,2)").unwrap();
    let mut d2: *mut ScDiagram = ptr::null_mut();
    assert!(sc_diagram_parse(bad.as_ptr(), &mut d2) == ScStatus::ScParseError);
    let unknot = CString::new("U()").unwrap();
    let mut d3: *mut ScDiagram = ptr::null_mut();
    assert!(sc_diagram_parse(unknot.as_ptr(), &mut d3) == ScStatus::ScOk);
    let mut r3: *mut ScShadow = ptr::null_mut();
    assert!(sc_shadow_reduce(d3, &mut r3) == ScStatus::ScReductionError);
    sc_diagram_free(d3);
}

#[test]
fn triangulation_solve_lifecycle() {
    let mut t: *mut ScTriangulation = ptr::null_mut();
    assert!(sc_cover_build(&mut t) == ScStatus::ScOk);
    let mut text: *mut std::ffi::c_char = ptr::null_mut();
    assert!(sc_triangulation_serialize(t, &mut text) == ScStatus::ScOk);
    let serialized = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_owned();
    assert!(serialized.starts_with("ITRI 1"));
    let mut t2: *mut ScTriangulation = ptr::null_mut();
    assert!(sc_triangulation_parse(text, &mut t2) == ScStatus::ScOk);
    sc_string_free(text);
    sc_triangulation_free(t2);

    let mut sol = ScSolution {
        tetrahedra: 0,
        residual: 1.0,
        volume: 0.0,
        cusp_count: 0,
        flat_warning: 1,
    };
    assert!(sc_solve(t, 0, 1e-12, &mut sol) == ScStatus::ScOk);
    assert_eq!(sol.tetrahedra, 10);
    assert_eq!(sol.cusp_count, 5);
    assert_eq!(sol.flat_warning, 0);
    assert!(sol.residual < 1e-12);
    let mut v_tet = 0.0;
    let mut v_oct = 0.0;
    assert!(sc_volume_constants(&mut v_tet, &mut v_oct) == ScStatus::ScOk);
    assert!((sol.volume - 10.0 * v_tet).abs() < 1e-6);
    sc_triangulation_free(t);

    assert_eq!(sc_reglue_count(), 4);
    let mut r: *mut ScTriangulation = ptr::null_mut();
    assert!(sc_reglue_apply(1, &mut r) == ScStatus::ScOk);
    assert!(sc_solve(r, 0, 1e-12, &mut sol) == ScStatus::ScOk);
    assert!((sol.volume - 10.0 * v_tet).abs() < 1e-6);
    assert_eq!(sol.cusp_count, 4);
    sc_triangulation_free(r);
    assert!(sc_reglue_apply(99, &mut r) == ScStatus::ScIndexError);

    let mut out = 0.0f64;
    assert!(sc_volume_formula(1, 0, &mut out) == ScStatus::ScOk);
    assert!((out - 2.0 * v_oct).abs() < 1e-12);
    assert!(sc_volume_formula(1, 1, &mut out) == ScStatus::ScDomainError);

    assert!(sc_solve(ptr::null(), 0, 1e-12, &mut sol) == ScStatus::ScNullArgument);
    let garbage = CString::new("junk").unwrap();
    let mut t3: *mut ScTriangulation = ptr::null_mut();
    assert!(sc_triangulation_parse(garbage.as_ptr(), &mut t3) == ScStatus::ScParseError);
}

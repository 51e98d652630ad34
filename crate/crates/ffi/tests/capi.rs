use std::ffi::{CStr, CString};
use std::ptr;

use reachobs_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(ro_last_error()).to_string_lossy().into_owned() }
}

fn take_string(p: *mut std::os::raw::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p).to_string_lossy().into_owned() };
    unsafe { ro_string_free(p) };
    s
}

fn mat(rows: usize, cols: usize, data: &[i64]) -> *mut RoMatrix {
    assert_eq!(data.len(), rows * cols);
    let m = unsafe { ro_matrix_from_i64(rows, cols, data.as_ptr()) };
    assert!(!m.is_null());
    m
}

fn entry(m: *const RoMatrix, i: usize, j: usize) -> String {
    take_string(unsafe { ro_matrix_get_str(m, i, j) })
}

fn worked_problem() -> *mut RoProblem {
    let v = mat(2, 2, &[0, 1, 1, 0]);
    let w = mat(2, 2, &[1, 0, 0, 1]);
    let mut prob = ptr::null_mut();
    let st = unsafe { ro_problem_new(v, w, 1, 1, 2, 2, &mut prob) };
    assert_eq!(st, RoStatus::Ok);
    unsafe {
        ro_matrix_free(v);
        ro_matrix_free(w);
    }
    prob
}

#[test]
fn worked_realization() {
    let prob = worked_problem();
    let mut feas = RoFeasibility { cond_kernel: false, cond_image: false, cond_interlock: false, feasible: false };
    assert_eq!(unsafe { ro_check_feasibility(prob, &mut feas) }, RoStatus::Ok);
    assert!(feas.cond_kernel && feas.cond_image && feas.cond_interlock && feas.feasible);

    let (mut a, mut b, mut c) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { ro_realize(prob, ptr::null(), &mut a, &mut b, &mut c) }, RoStatus::Ok);
    let expect_a = mat(2, 2, &[0, 1, 0, 0]);
    let expect_b = mat(2, 1, &[0, 1]);
    let expect_c = mat(1, 2, &[1, 0]);
    unsafe {
        assert!(ro_matrix_equal(a, expect_a));
        assert!(ro_matrix_equal(b, expect_b));
        assert!(ro_matrix_equal(c, expect_c));
    }

    // Free parameter lands in A[1][0].
    let z = mat(2, 2, &[7, 7, 5, 7]);
    let mut a2 = ptr::null_mut();
    let (mut b2, mut c2) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { ro_realize(prob, z, &mut a2, &mut b2, &mut c2) }, RoStatus::Ok);
    assert_eq!(entry(a2, 0, 1), "1");
    assert_eq!(entry(a2, 1, 0), "5");
    assert_eq!(entry(a2, 1, 1), "0");

    let mut v = ptr::null_mut();
    let mut w = ptr::null_mut();
    unsafe {
        assert_eq!(ro_reachability_matrix(a2, b2, 2, &mut v), RoStatus::Ok);
        assert_eq!(ro_observability_matrix(a2, c2, 2, &mut w), RoStatus::Ok);
    }
    let v_expect = mat(2, 2, &[0, 1, 1, 0]);
    assert!(unsafe { ro_matrix_equal(v, v_expect) });

    unsafe {
        for m in [a, b, c, a2, b2, c2, z, v, w, expect_a, expect_b, expect_c, v_expect] {
            ro_matrix_free(m);
        }
        ro_problem_free(prob);
    }
}

#[test]
fn infeasible_interlock() {
    let v = mat(1, 2, &[1, 1]);
    let w = mat(2, 1, &[1, 0]);
    let mut prob = ptr::null_mut();
    assert_eq!(unsafe { ro_problem_new(v, w, 1, 1, 2, 2, &mut prob) }, RoStatus::Ok);
    let mut feas = RoFeasibility { cond_kernel: false, cond_image: false, cond_interlock: true, feasible: true };
    assert_eq!(unsafe { ro_check_feasibility(prob, &mut feas) }, RoStatus::Ok);
    assert!(feas.cond_kernel && feas.cond_image);
    assert!(!feas.cond_interlock && !feas.feasible);

    let (mut a, mut b, mut c) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { ro_realize(prob, ptr::null(), &mut a, &mut b, &mut c) }, RoStatus::Infeasible);
    assert!(a.is_null() && b.is_null() && c.is_null());
    assert!(last_error().contains("W_L V^U = W^U V_L"), "{}", last_error());
    unsafe {
        ro_problem_free(prob);
        ro_matrix_free(v);
        ro_matrix_free(w);
    }
}

#[test]
fn solve_pair_and_incompatibility() {
    let f = mat(1, 2, &[1, 0]);
    let c = mat(1, 2, &[0, 1]);
    let h = mat(2, 1, &[0, 1]);
    let d = mat(2, 1, &[1, 0]);
    let mut x = ptr::null_mut();
    assert_eq!(unsafe { ro_solve_pair(f, c, h, d, ptr::null(), &mut x) }, RoStatus::Ok);
    assert_eq!(entry(x, 0, 0), "0");
    assert_eq!(entry(x, 0, 1), "1");
    assert_eq!(entry(x, 1, 0), "0");
    assert_eq!(entry(x, 1, 1), "0");
    unsafe { ro_matrix_free(x) };

    let d_bad = mat(2, 1, &[2, 0]);
    let mut x = ptr::null_mut();
    assert_eq!(unsafe { ro_solve_pair(f, c, h, d_bad, ptr::null(), &mut x) }, RoStatus::Infeasible);
    assert!(x.is_null());
    assert!(last_error().contains("CH = FD is violated"), "{}", last_error());

    let z_bad = mat(3, 3, &[0; 9]);
    assert_eq!(unsafe { ro_solve_pair(f, c, h, d, z_bad, &mut x) }, RoStatus::Dimension);
    unsafe {
        for m in [f, c, h, d, d_bad, z_bad] {
            ro_matrix_free(m);
        }
    }
}

#[test]
fn null_pointers_are_reported() {
    let mut r = 0usize;
    assert_eq!(unsafe { ro_matrix_rank(ptr::null(), &mut r) }, RoStatus::NullPointer);
    assert!(!last_error().is_empty());
    let m = mat(1, 1, &[2]);
    assert_eq!(unsafe { ro_matrix_rank(m, ptr::null_mut()) }, RoStatus::NullPointer);
    assert_eq!(unsafe { ro_g1_inverse(m, ptr::null_mut()) }, RoStatus::NullPointer);
    let mut prob = ptr::null_mut();
    assert_eq!(unsafe { ro_problem_new(m, ptr::null(), 1, 1, 1, 1, &mut prob) }, RoStatus::NullPointer);
    assert!(prob.is_null());
    assert!(unsafe { ro_matrix_from_i64(1, 1, ptr::null()) }.is_null());
    unsafe {
        ro_matrix_free(ptr::null_mut());
        ro_problem_free(ptr::null_mut());
        ro_string_free(ptr::null_mut());
        ro_matrix_free(m);
    }
}

#[test]
fn scalar_entry_and_errors() {
    let m = ro_matrix_zeros(2, 3);
    unsafe {
        assert_eq!(ro_matrix_rows(m), 2);
        assert_eq!(ro_matrix_cols(m), 3);
        assert_eq!(ro_matrix_set_ratio(m, 0, 0, 6, -4), RoStatus::Ok);
        assert_eq!(ro_matrix_set_ratio(m, 0, 1, 1, 0), RoStatus::Parse);
        assert_eq!(ro_matrix_set_ratio(m, 5, 0, 1, 1), RoStatus::Dimension);
    }
    assert_eq!(entry(m, 0, 0), "-3/2");

    let good = CString::new("7/21").unwrap();
    let bad = CString::new("0.5").unwrap();
    unsafe {
        assert_eq!(ro_matrix_set_str(m, 1, 2, good.as_ptr()), RoStatus::Ok);
        assert_eq!(ro_matrix_set_str(m, 1, 2, bad.as_ptr()), RoStatus::Parse);
    }
    assert!(last_error().contains("0.5"), "{}", last_error());
    assert_eq!(entry(m, 1, 2), "1/3");
    assert!(unsafe { ro_matrix_get_str(m, 2, 0) }.is_null());

    let mut rank = 99usize;
    assert_eq!(unsafe { ro_matrix_rank(m, &mut rank) }, RoStatus::Ok);
    assert_eq!(rank, 2);
    unsafe { ro_matrix_free(m) };
}

#[test]
fn json_round_trip_and_ginverse() {
    let m = mat(2, 2, &[2, 4, 1, 2]);
    let json = take_string(unsafe { ro_matrix_to_json(m) });
    assert!(json.contains("\"scalar_kind\": \"rational\""));
    let text = CString::new(json).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { ro_matrix_from_json(text.as_ptr(), &mut back) }, RoStatus::Ok);
    assert!(unsafe { ro_matrix_equal(m, back) });

    let mut y = ptr::null_mut();
    let mut ok = false;
    unsafe {
        assert_eq!(ro_g1_inverse(m, &mut y), RoStatus::Ok);
        assert_eq!(ro_is_g1_inverse(m, y, &mut ok), RoStatus::Ok);
    }
    assert!(ok);
    let not_inverse = mat(2, 2, &[0, 0, 0, 0]);
    unsafe { assert_eq!(ro_is_g1_inverse(m, not_inverse, &mut ok), RoStatus::Ok) };
    assert!(!ok);

    let broken = CString::new("{\"rows\": 1").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ro_matrix_from_json(broken.as_ptr(), &mut out) }, RoStatus::Parse);
    assert!(out.is_null());
    unsafe {
        for h in [m, back, y, not_inverse] {
            ro_matrix_free(h);
        }
    }
}

#[test]
fn bad_problem_shape() {
    let v = mat(2, 3, &[0; 6]);
    let w = mat(2, 2, &[0; 4]);
    let mut prob = ptr::null_mut();
    assert_eq!(unsafe { ro_problem_new(v, w, 1, 1, 2, 2, &mut prob) }, RoStatus::Dimension);
    assert!(prob.is_null());
    unsafe {
        ro_matrix_free(v);
        ro_matrix_free(w);
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/reachobs.h")).unwrap();
    for needle in [
        "#ifndef REACHOBS_H",
        "typedef struct RoMatrix RoMatrix;",
        "typedef struct RoProblem RoProblem;",
        "RO_STATUS_OK = 0",
        "RO_STATUS_INFEASIBLE = 3",
        "RO_STATUS_PANIC = 6",
        "ro_realize(",
        "ro_solve_pair(",
        "ro_last_error(",
        "ro_string_free(",
    ] {
        assert!(header.contains(needle), "header lacks {needle}");
    }
}

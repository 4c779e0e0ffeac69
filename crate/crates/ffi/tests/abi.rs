use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use weylsum::branching::Pair;
use weylsum::charkit::{character, weyl_sum_direct, ExponentMap};
use weylsum::field::{Fp, DEFAULT_PRIME};
use weylsum::rootsys::{build_algebra, AlgebraKind, Weight};
use weylsum::schur::EvalContext;
use weylsum_ffi::*;

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { ws_string_free(s) };
    out
}

fn last_error() -> String {
    let p = ws_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn algebra_handle_round_trip() {
    let mut alg = ptr::null_mut();
    let name = CString::new("E8").unwrap();
    assert_eq!(unsafe { ws_algebra_new(name.as_ptr(), &mut alg) }, WsStatus::Ok);
    assert_eq!(unsafe { ws_algebra_rank(alg) }, 8);
    let rho = [1i64; 8];
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ws_orbit_size(alg, rho.as_ptr(), 8, &mut s) }, WsStatus::Ok);
    assert_eq!(take(s), "696729600");
    let l1 = [1i64, 0, 0, 0, 0, 0, 0, 0];
    assert_eq!(unsafe { ws_dimension(alg, l1.as_ptr(), 8, &mut s) }, WsStatus::Ok);
    assert_eq!(take(s), "248");
    let short = [1i64; 3];
    assert_eq!(unsafe { ws_dimension(alg, short.as_ptr(), 3, &mut s) }, WsStatus::InvalidArgument);
    assert!(last_error().contains("rank"));
    unsafe { ws_algebra_free(alg) };
}

#[test]
fn null_arguments_are_reported() {
    let mut alg = ptr::null_mut();
    assert_eq!(unsafe { ws_algebra_new(ptr::null(), &mut alg) }, WsStatus::NullPointer);
    assert_eq!(last_error(), "name is null");
    assert_eq!(unsafe { ws_algebra_rank(ptr::null()) }, 0);
    let name = CString::new("A3").unwrap();
    assert_eq!(unsafe { ws_algebra_new(name.as_ptr(), ptr::null_mut()) }, WsStatus::NullPointer);
}

#[test]
fn phi_entries_are_copied_out() {
    let pair = CString::new("E7:A7").unwrap();
    let rho = [1i64; 7];
    let mut pw = ptr::null_mut();
    assert_eq!(unsafe { ws_phi(pair.as_ptr(), rho.as_ptr(), 7, &mut pw) }, WsStatus::Ok);
    assert_eq!(unsafe { ws_permweights_len(pw) }, 72);
    let mut plus = 0;
    for i in 0..72 {
        let mut labels = [0i64; 7];
        let mut sign = 0;
        let st = unsafe { ws_permweights_get(pw, i, labels.as_mut_ptr(), 7, &mut sign) };
        assert_eq!(st, WsStatus::Ok);
        assert!(labels.iter().all(|&l| l > 0));
        plus += i32::from(sign == 1);
    }
    assert_eq!(plus, 36);
    let mut small = [0i64; 2];
    let mut sign = 0;
    let st = unsafe { ws_permweights_get(pw, 0, small.as_mut_ptr(), 2, &mut sign) };
    assert_eq!(st, WsStatus::InvalidArgument);
    unsafe { ws_permweights_free(pw) };

    let zero = [0i64; 7];
    assert_eq!(unsafe { ws_phi(pair.as_ptr(), zero.as_ptr(), 7, &mut pw) }, WsStatus::NotDominant);
}

#[test]
fn sums_match_the_engine() {
    let pair = CString::new("E7:A7").unwrap();
    let w = [2i64, 1, 1, 3, 1, 1, 2];
    let u: Vec<u64> = (0..7).map(|k| 1000 + 37 * k).collect();
    let mut got = 0u64;
    let st = unsafe { ws_weyl_sum_mod_p(pair.as_ptr(), w.as_ptr(), 7, u.as_ptr(), 7, DEFAULT_PRIME, &mut got) };
    assert_eq!(st, WsStatus::Ok);
    let ctx = EvalContext::from_free(u.iter().map(|&x| Fp::new(x, DEFAULT_PRIME).unwrap()).collect()).unwrap();
    let weight = Weight::new(AlgebraKind::E7, w.to_vec()).unwrap();
    let direct = weyl_sum_direct(
        &build_algebra(AlgebraKind::E7),
        &weight,
        &ExponentMap::for_pair(Pair::E7A7).unwrap(),
        &ctx,
    )
    .unwrap();
    assert_eq!(got, direct.value());

    let l1 = [1i64, 0, 0, 0, 0, 0, 0];
    let st = unsafe { ws_character_mod_p(pair.as_ptr(), l1.as_ptr(), 7, u.as_ptr(), 7, DEFAULT_PRIME, &mut got) };
    assert_eq!(st, WsStatus::Ok);
    let hw = Weight::new(AlgebraKind::E7, l1.to_vec()).unwrap();
    assert_eq!(got, character(Pair::E7A7, &hw, &ctx).unwrap().value());

    let st = unsafe { ws_weyl_sum_mod_p(pair.as_ptr(), w.as_ptr(), 7, u.as_ptr(), 6, DEFAULT_PRIME, &mut got) };
    assert_eq!(st, WsStatus::InvalidArgument);
    let st = unsafe { ws_weyl_sum_mod_p(pair.as_ptr(), w.as_ptr(), 7, u.as_ptr(), 7, 1 << 20, &mut got) };
    assert_eq!(st, WsStatus::InvalidModulus);
}

#[test]
fn q_dimension_coefficients() {
    let pair = CString::new("A2:A1").unwrap();
    let l = [1i64, 0];
    let mut s = ptr::null_mut();
    let st = unsafe { ws_q_dimension(pair.as_ptr(), l.as_ptr(), 2, DEFAULT_PRIME, &mut s) };
    assert_eq!(st, WsStatus::Ok);
    assert_eq!(take(s), "1,1,1");
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_header() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libweylsum_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let out = Path::new(env!("CARGO_TARGET_TMPDIR")).join("weylsum_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "{run:?}");
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}

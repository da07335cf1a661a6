use std::ffi::{CStr, CString};
use std::ptr;

use satgame_ffi::*;

fn last_error() -> String {
    let p = sg_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn family_lifecycle() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(sg_family_new(4, 2, &mut f), SgStatus::Ok);
        for s in [[1u32, 2], [1, 3], [2, 3]] {
            assert_eq!(sg_family_push(f, s.as_ptr(), 2), SgStatus::Ok);
        }
        let mut len = 0;
        assert_eq!(sg_family_len(f, &mut len), SgStatus::Ok);
        assert_eq!(len, 3);
        let (mut inter, mut maximal) = (false, false);
        assert_eq!(sg_family_is_intersecting(f, &mut inter), SgStatus::Ok);
        assert_eq!(sg_family_is_maximal(f, &mut maximal), SgStatus::Ok);
        assert!(inter && maximal);

        let mut tau = 0;
        let mut cover = [0u32; 4];
        assert_eq!(
            sg_family_covering_number(f, &mut tau, cover.as_mut_ptr(), 4),
            SgStatus::Ok
        );
        assert_eq!(tau, 2);
        assert_eq!(&cover[..2], &[1, 2]);
        assert_eq!(
            sg_family_covering_number(f, &mut tau, cover.as_mut_ptr(), 1),
            SgStatus::BufferTooSmall
        );

        let bad = [3u32, 4];
        assert_eq!(sg_family_push(f, bad.as_ptr(), 2), SgStatus::RuleViolation);
        assert!(last_error().contains("disjoint"));
        let short = [1u32];
        assert_eq!(
            sg_family_push(f, short.as_ptr(), 1),
            SgStatus::InvalidParameter
        );
        assert_eq!(sg_family_len(f, &mut len), SgStatus::Ok);
        assert_eq!(len, 3);
        sg_family_free(f);
    }
}

#[test]
fn null_and_parameter_errors() {
    unsafe {
        assert_eq!(sg_family_new(4, 2, ptr::null_mut()), SgStatus::NullPointer);
        let mut f = ptr::null_mut();
        assert_eq!(sg_family_new(3, 5, &mut f), SgStatus::InvalidParameter);
        assert!(f.is_null());
        let mut len = 0;
        assert_eq!(sg_family_len(ptr::null(), &mut len), SgStatus::NullPointer);
        assert!(last_error().contains("null"));
        sg_family_free(ptr::null_mut());
        sg_string_free(ptr::null_mut());
        let mut tau = 0;
        assert_eq!(sg_family_new(4, 2, &mut f), SgStatus::Ok);
        assert_eq!(
            sg_family_covering_number(f, &mut tau, ptr::null_mut(), 0),
            SgStatus::InvalidParameter
        );
        sg_family_free(f);
    }
}

#[test]
fn solver_values() {
    unsafe {
        let mut v = 0;
        assert_eq!(
            sg_solve(5, 2, SgKind::Saturation, SgRole::Minimizer, &mut v),
            SgStatus::Ok
        );
        assert_eq!(v, 3);
        assert_eq!(
            sg_solve(6, 2, SgKind::Saturation, SgRole::Maximizer, &mut v),
            SgStatus::Ok
        );
        assert_eq!(v, 5);
        assert_eq!(
            sg_solve(8, 2, SgKind::Tau, SgRole::Minimizer, &mut v),
            SgStatus::ResourceLimit
        );
        assert_eq!(sg_solve_sperner(4, SgRole::Minimizer, &mut v), SgStatus::Ok);
        assert_eq!(v, 1);
        let mut b = 0;
        assert_eq!(sg_round_cover_bound(5, 9, &mut b), SgStatus::Ok);
        assert_eq!(b, 5);
        assert_eq!(
            sg_round_cover_bound(1, 9, &mut b),
            SgStatus::InvalidParameter
        );
    }
}

#[test]
fn play_returns_a_transcript() {
    let a = CString::new("minimizer").unwrap();
    let b = CString::new("random").unwrap();
    unsafe {
        let mut out = ptr::null_mut();
        let st = sg_play_json(
            30,
            3,
            SgKind::Tau,
            SgRole::Minimizer,
            a.as_ptr(),
            b.as_ptr(),
            SgMode::Certify,
            1,
            &mut out,
        );
        assert_eq!(st, SgStatus::Ok);
        let json = CStr::from_ptr(out).to_str().unwrap().to_owned();
        sg_string_free(out);
        let t = satgame::game::Transcript::from_json(&json).unwrap();
        assert!(t.certificate.unwrap().cover.len() <= 5);

        let small = sg_play_json(
            20,
            3,
            SgKind::Tau,
            SgRole::Minimizer,
            a.as_ptr(),
            b.as_ptr(),
            SgMode::Certify,
            1,
            &mut out,
        );
        assert_eq!(small, SgStatus::UniverseTooSmall);
        let bogus = CString::new("oracle").unwrap();
        let st = sg_play_json(
            5,
            2,
            SgKind::Tau,
            SgRole::Minimizer,
            bogus.as_ptr(),
            b.as_ptr(),
            SgMode::Full,
            1,
            &mut out,
        );
        assert_eq!(st, SgStatus::InvalidParameter);
        assert!(last_error().contains("unknown strategy"));
    }
}

#[test]
fn header_declares_the_api() {
    let h =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/satgame.h")).unwrap();
    for name in [
        "sg_family_new",
        "sg_family_free",
        "sg_family_push",
        "sg_family_covering_number",
        "sg_solve",
        "sg_solve_sperner",
        "sg_play_json",
        "sg_string_free",
        "sg_last_error_message",
        "SG_STATUS_OK",
        "typedef struct SgFamily SgFamily",
    ] {
        assert!(h.contains(name), "{name} missing from the header");
    }
}

/// Compiles a small C program against the generated header and the static
/// library, when a C compiler is available.
#[test]
fn c_program_links_and_runs() {
    use std::path::PathBuf;
    use std::process::Command;

    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libsatgame_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!(
            "skipping: no C compiler or static library at {}",
            lib.display()
        );
        return;
    }
    let out_dir = tempfile::tempdir().unwrap();
    let bin = out_dir.path().join("smoke");
    let status = Command::new(&cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&bin).output().unwrap();
    assert!(
        run.status.success(),
        "smoke program exited with {}",
        run.status
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}

use std::ffi::{c_char, c_int, CStr, CString};
use std::path::{Path, PathBuf};
use std::ptr;

use catkit_ffi::*;

fn corpus(name: &str) -> CString {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(name);
    CString::new(std::fs::read_to_string(p).unwrap()).unwrap()
}

fn last_error() -> String {
    let p = catkit_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    catkit_string_free(s);
    out
}

#[test]
fn category_round_trip_and_compose() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(catkit_category_from_json(corpus("inputs/divisibility.json").as_ptr(), &mut c), CatkitStatus::Ok);
        assert_eq!(catkit_category_num_objects(c), 4);
        assert_eq!(catkit_category_num_morphisms(c), 9);
        let (g, f) = (CString::new("2->6").unwrap(), CString::new("1->2").unwrap());
        let mut out = ptr::null_mut();
        assert_eq!(catkit_category_compose(c, g.as_ptr(), f.as_ptr(), &mut out), CatkitStatus::Ok);
        assert_eq!(take(out), "1->6");
        assert_eq!(catkit_category_compose(c, f.as_ptr(), g.as_ptr(), &mut out), CatkitStatus::NotComposable);
        assert!(last_error().contains("not composable"));
        let mut json = ptr::null_mut();
        assert_eq!(catkit_category_to_json(c, &mut json), CatkitStatus::Ok);
        let text = CString::new(take(json)).unwrap();
        let mut again = ptr::null_mut();
        assert_eq!(catkit_category_from_json(text.as_ptr(), &mut again), CatkitStatus::Ok);
        assert_eq!(catkit_category_num_morphisms(again), 9);
        catkit_category_free(again);
        catkit_category_free(c);
    }
}

#[test]
fn invalid_category_reports_violations() {
    unsafe {
        let mut c = ptr::null_mut();
        let s = catkit_category_from_json(corpus("invalid/broken_chain3.json").as_ptr(), &mut c);
        assert_eq!(s, CatkitStatus::InvalidInput);
        assert!(c.is_null());
        assert!(last_error().contains("wrong boundary"));
        let garbage = CString::new("{").unwrap();
        assert_eq!(catkit_category_from_json(garbage.as_ptr(), &mut c), CatkitStatus::MalformedInput);
        assert_eq!(catkit_category_from_json(ptr::null(), &mut c), CatkitStatus::NullArgument);
    }
}

#[test]
fn presentation_queries() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(catkit_presentation_from_json(corpus("inputs/comm_monoid.json").as_ptr(), &mut p), CatkitStatus::Ok);
        let (l, r) = (CString::new("abab").unwrap(), CString::new("aabb").unwrap());
        let mut v = CatkitVerdict::Unknown;
        assert_eq!(catkit_presentation_word_eq(p, l.as_ptr(), r.as_ptr(), &mut v), CatkitStatus::Ok);
        assert_eq!(v, CatkitVerdict::Equal);
        catkit_presentation_free(p);

        assert_eq!(catkit_presentation_from_json(corpus("inputs/torus.json").as_ptr(), &mut p), CatkitStatus::Ok);
        let mut d = -1;
        assert_eq!(catkit_presentation_deficiency(p, &mut d), CatkitStatus::Ok);
        assert_eq!(d, 1);
        catkit_presentation_free(p);
    }
}

#[test]
fn monad_handles() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(catkit_monad_from_json(corpus("inputs/closure_monad.json").as_ptr(), &mut m), CatkitStatus::Ok);
        let mut iso = false;
        assert_eq!(catkit_monad_em_check(m, &mut iso), CatkitStatus::Ok);
        assert!(iso);
        catkit_monad_free(m);
        let mut bad = ptr::null_mut();
        assert_eq!(catkit_monad_from_json(corpus("invalid/bad_monad.json").as_ptr(), &mut bad), CatkitStatus::NotAMonad);
        assert!(bad.is_null());
        assert_eq!(catkit_monad_em_check(ptr::null(), &mut iso), CatkitStatus::NullArgument);
    }
}

#[test]
fn run_json_matches_cli() {
    let dir: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus/inputs/torus.json");
    let args: Vec<CString> = ["topo", "chi", "--in", dir.to_str().unwrap()]
        .iter()
        .map(|s| CString::new(*s).unwrap())
        .collect();
    let ptrs: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    unsafe {
        let mut out = ptr::null_mut();
        let mut exit: c_int = -1;
        assert_eq!(catkit_run_json(ptrs.len() as c_int, ptrs.as_ptr(), &mut out, &mut exit), CatkitStatus::Ok);
        assert_eq!(exit, 0);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["total"], 0);

        let bad = [CString::new("nonsense").unwrap()];
        let ptrs: Vec<*const c_char> = bad.iter().map(|a| a.as_ptr()).collect();
        assert_eq!(catkit_run_json(1, ptrs.as_ptr(), &mut out, &mut exit), CatkitStatus::Ok);
        assert_eq!(exit, 1);
        catkit_string_free(out);
        assert!(!last_error().is_empty());
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/catkit.h");
    let text = std::fs::read_to_string(&header).expect("generated header");
    for f in ["catkit_category_from_json", "catkit_run_json", "catkit_last_error", "catkit_string_free"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let t = tempfile_dir();
    let src = t.join("use.c");
    std::fs::write(
        &src,
        "#include \"catkit.h\"\nint main(void) {\n  CatkitCategory *c = 0;\n  CatkitStatus s = catkit_category_from_json(\"{}\", &c);\n  catkit_category_free(c);\n  return s == CATKIT_STATUS_OK;\n}\n",
    )
    .unwrap();
    let status = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status()
        .expect("a C compiler is installed");
    assert!(status.success());
}

fn tempfile_dir() -> PathBuf {
    let d = std::env::temp_dir().join(format!("catkit-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

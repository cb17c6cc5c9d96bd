use std::ffi::{c_char, CStr, CString};
use std::ptr;

use cutspectra_ffi::*;

struct Handle(*mut CsGraph);

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { cs_graph_free(self.0) }
    }
}

fn parse(text: &str) -> Result<Handle, CsStatus> {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    match unsafe { cs_graph_parse(c.as_ptr(), &mut g) } {
        CsStatus::Ok => Ok(Handle(g)),
        s => Err(s),
    }
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { cs_string_free(s) };
    out
}

fn last_error() -> String {
    let p = cs_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

const PETERSEN: &str = "n 10\n0 1\n1 2\n2 3\n3 4\n4 0\n0 5\n1 6\n2 7\n3 8\n4 9\n5 7\n7 9\n9 6\n6 8\n8 5\n";
const K3: &str = "n 3\n0 1\n1 2\n0 2\n";

#[test]
fn counts_and_oracle() {
    let g = parse(PETERSEN).unwrap();
    let (mut n, mut m) = (0usize, 0usize);
    assert_eq!(unsafe { cs_graph_vertex_count(g.0, &mut n) }, CsStatus::Ok);
    assert_eq!(unsafe { cs_graph_edge_count(g.0, &mut m) }, CsStatus::Ok);
    assert_eq!((n, m), (10, 15));
    let problem = CString::new("maxcut").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cs_oracle(g.0, problem.as_ptr(), &mut out) }, CsStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["value"], "4/5");
}

#[test]
fn mincut_oracle() {
    let g = parse("n 4\n0 1\n1 2\n2 3\n").unwrap();
    let problem = CString::new("mincut").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cs_oracle(g.0, problem.as_ptr(), &mut out) }, CsStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["value"], "1/3");
}

#[test]
fn verify_triangle() {
    let g = parse(K3).unwrap();
    let problem = CString::new("maxcut_inf").unwrap();
    let x = CString::new("1 -1 -1").unwrap();
    for (lambda, expect) in [("2/3", true), ("1/2", false)] {
        let l = CString::new(lambda).unwrap();
        let mut verdict = !expect;
        let mut out = ptr::null_mut();
        let s = unsafe { cs_verify(g.0, problem.as_ptr(), l.as_ptr(), x.as_ptr(), &mut verdict, &mut out) };
        assert_eq!(s, CsStatus::Ok);
        assert_eq!(verdict, expect);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["verdict"], expect);
    }
    let l = CString::new("2/3").unwrap();
    let mut verdict = false;
    let s =
        unsafe { cs_verify(g.0, problem.as_ptr(), l.as_ptr(), x.as_ptr(), &mut verdict, ptr::null_mut()) };
    assert_eq!(s, CsStatus::Ok);
    assert!(verdict);
}

#[test]
fn exact_and_seeded_cut() {
    let g = parse("n 4\n0 1\n1 2\n2 3\n").unwrap();
    let problem = CString::new("cheeger_tv").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cs_cut(g.0, problem.as_ptr(), true, 0, &mut out) }, CsStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["final"]["value"], "1/3");
    assert_eq!(v["heuristic"], false);

    let run = |seed| {
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { cs_cut(g.0, problem.as_ptr(), false, seed, &mut out) }, CsStatus::Ok);
        take(out)
    };
    assert_eq!(run(9), run(9));
}

#[test]
fn error_codes() {
    assert_eq!(parse("n 3\n0 0\n").err(), Some(CsStatus::InvalidGraph));
    assert!(last_error().contains("self-loop"));
    assert_eq!(parse("n x\n").err(), Some(CsStatus::Parse));
    assert_eq!(unsafe { cs_graph_parse(ptr::null(), &mut ptr::null_mut()) }, CsStatus::NullPointer);

    let g = parse(K3).unwrap();
    let bogus = CString::new("bogus").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cs_oracle(g.0, bogus.as_ptr(), &mut out) }, CsStatus::UnknownProblem);
    assert!(out.is_null());
    assert!(last_error().contains("bogus"));

    let problem = CString::new("maxcut_inf").unwrap();
    let l = CString::new("2/3").unwrap();
    let short = CString::new("1 -1").unwrap();
    let mut verdict = false;
    let s = unsafe {
        cs_verify(g.0, problem.as_ptr(), l.as_ptr(), short.as_ptr(), &mut verdict, ptr::null_mut())
    };
    assert_eq!(s, CsStatus::InvalidParameter);
    let junk = CString::new("1 a 2").unwrap();
    let s =
        unsafe { cs_verify(g.0, problem.as_ptr(), l.as_ptr(), junk.as_ptr(), &mut verdict, ptr::null_mut()) };
    assert_eq!(s, CsStatus::Parse);
    let s = unsafe {
        cs_verify(ptr::null(), problem.as_ptr(), l.as_ptr(), junk.as_ptr(), &mut verdict, ptr::null_mut())
    };
    assert_eq!(s, CsStatus::NullPointer);

    let mut n = 0usize;
    assert_eq!(unsafe { cs_graph_vertex_count(g.0, &mut n) }, CsStatus::Ok);
    assert!(cs_last_error().is_null());
}

#[test]
fn status_names_and_header() {
    let name = |s| unsafe { CStr::from_ptr(cs_status_name(s)) }.to_str().unwrap();
    assert_eq!(name(CsStatus::Ok), "ok");
    assert_eq!(name(CsStatus::TooLarge), "too_large");
    assert_eq!(CsStatus::Ok as i32, 0);
    unsafe { cs_graph_free(ptr::null_mut()) };
    unsafe { cs_string_free(ptr::null_mut()) };

    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/cutspectra.h")).unwrap();
    for f in [
        "cs_graph_parse",
        "cs_graph_free",
        "cs_oracle",
        "cs_verify",
        "cs_cut",
        "cs_last_error",
        "cs_string_free",
        "typedef struct CsGraph CsGraph",
        "CS_STATUS_OK = 0",
    ] {
        assert!(header.contains(f), "header lacks {f}");
    }
}

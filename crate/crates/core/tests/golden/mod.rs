//! Golden CLI transcripts: stdout, stderr and exit code of fixed invocations.
//!
//! Run with `COLORLIE_BLESS=1` to rewrite the expected files.
#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const CASES: &[Case] = &[
    Case { name: "verify_sl2", args: &["verify", "fixtures/sl2.json"], exit: 0 },
    Case { name: "verify_klein_json", args: &["verify", "fixtures/klein.json", "--json"], exit: 0 },
    Case { name: "verify_bad_jacobi", args: &["verify", "tests/data/sl2_bad_jacobi.json"], exit: 1 },
    Case { name: "cohomology_h3_trivial", args: &["cohomology", "2", "e", "fixtures/h3.json", "--module", "trivial"], exit: 0 },
    Case { name: "cohomology_klein_all", args: &["cohomology", "2", "all", "fixtures/klein.json"], exit: 0 },
    Case { name: "cohomology_sl2_json", args: &["cohomology", "1", "e", "fixtures/sl2.json", "--json"], exit: 0 },
    Case { name: "rigid_sl2", args: &["rigid", "fixtures/sl2.json"], exit: 0 },
    Case { name: "rigid_h3", args: &["rigid", "fixtures/h3.json"], exit: 0 },
    Case { name: "pbw_normalize_sl2", args: &["pbw-normalize", "fixtures/sl2.json", "f", "e"], exit: 0 },
    Case { name: "pbw_normalize_super_json", args: &["pbw-normalize", "fixtures/super.json", "theta*theta", "--json"], exit: 0 },
    Case { name: "multiply_sl2", args: &["multiply", "fixtures/sl2.json", "h + e", "f*e"], exit: 0 },
    Case { name: "multiply_qheis3", args: &["multiply", "fixtures/qheis3.json", "y", "x"], exit: 0 },
    Case { name: "central_extend_h3", args: &["central-extend", "fixtures/h3.json"], exit: 0 },
    Case { name: "central_extend_abelian2", args: &["central-extend", "fixtures/abelian2.json", "--truncation", "1"], exit: 0 },
    Case { name: "central_extend_bad_cocycle", args: &["central-extend", "tests/data/h3w_bad_cocycle.json"], exit: 1 },
    Case { name: "deform_h3", args: &["deform", "fixtures/h3.json", "2", "3"], exit: 0 },
    Case { name: "deform_h3_json", args: &["deform", "fixtures/h3.json", "--truncation", "1", "--filtration", "2", "--json"], exit: 0 },
    Case { name: "deform_bad", args: &["deform", "tests/data/h3_bad_deformation.json"], exit: 1 },
    Case { name: "star_h3", args: &["star", "fixtures/h3.json", "x", "y", "2"], exit: 0 },
    Case { name: "star_super_json", args: &["star", "fixtures/super.json", "theta", "theta", "1", "--json"], exit: 0 },
    Case { name: "star_threads", args: &["star", "fixtures/sl2.json", "e*f", "h", "2", "--threads", "2"], exit: 0 },
    Case { name: "error_missing_file", args: &["rigid", "fixtures/missing.json"], exit: 2 },
    Case { name: "error_malformed", args: &["rigid", "tests/data/malformed.json"], exit: 2 },
    Case { name: "error_invalid_algebra", args: &["rigid", "tests/data/sl2_bad_jacobi.json"], exit: 2 },
    Case { name: "no_verify_loads", args: &["pbw-normalize", "tests/data/sl2_bad_jacobi.json", "f", "e", "--no-verify"], exit: 0 },
    Case { name: "error_unknown_name", args: &["pbw-normalize", "fixtures/sl2.json", "e", "q"], exit: 2 },
    Case { name: "error_bad_degree", args: &["cohomology", "2", "1,0", "fixtures/h3.json"], exit: 2 },
    Case { name: "error_usage", args: &["star", "fixtures/h3.json"], exit: 2 },
];

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn transcript(case: &Case) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_colorlie"))
        .args(case.args)
        .current_dir(crate_dir())
        .output()
        .expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    let text = format!(
        "$ colorlie {}\n{}--- stderr ---\n{}--- exit {} ---\n",
        case.args.join(" "),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr),
        code
    );
    (text, code)
}

/// Runs every case; `Err` carries a description of the mismatch.
pub fn check_all() -> Vec<Result<(), String>> {
    let bless = std::env::var_os("COLORLIE_BLESS").is_some();
    CASES
        .iter()
        .map(|case| {
            let (text, code) = transcript(case);
            let path = crate_dir().join("tests/golden").join(format!("{}.txt", case.name));
            if bless {
                std::fs::write(&path, &text).unwrap();
            }
            if code != case.exit {
                return Err(format!("{}: exit {code}, expected {}", case.name, case.exit));
            }
            // a second run must reproduce the bytes
            if transcript(case).0 != text {
                return Err(format!("{}: output not deterministic", case.name));
            }
            match std::fs::read_to_string(&path) {
                Ok(expected) if expected == text => Ok(()),
                Ok(_) => Err(format!("{}: output differs from {}", case.name, path.display())),
                Err(_) => Err(format!("{}: missing {}", case.name, path.display())),
            }
        })
        .collect()
}

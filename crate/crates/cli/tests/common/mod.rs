#![allow(dead_code)]

use std::path::PathBuf;

/// One CLI invocation with a checked-in expected standard output.
pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const GOLDEN_CASES: &[GoldenCase] = &[
    GoldenCase {
        name: "dim_stair4.txt",
        args: &["dim", "stair:4"],
        exit: 0,
    },
    GoldenCase {
        name: "dim_5_2_1.json",
        args: &["dim", "5,2,1", "--format", "json"],
        exit: 0,
    },
    GoldenCase {
        name: "dim_hook6.csv",
        args: &["dim", "hook:6", "--format", "csv"],
        exit: 0,
    },
    GoldenCase {
        name: "charratio_2_2_r1.txt",
        args: &["charratio", "2,2", "--r", "1"],
        exit: 0,
    },
    GoldenCase {
        name: "charratio_3_1_r2_closed.json",
        args: &[
            "charratio",
            "3,1",
            "--r",
            "2",
            "--method",
            "closed",
            "--format",
            "json",
        ],
        exit: 0,
    },
    GoldenCase {
        name: "charratio_4_3_1_r3_mn.csv",
        args: &["charratio", "4,3,1", "--r", "3", "--format", "csv"],
        exit: 0,
    },
    GoldenCase {
        name: "charratio_3_2_1_r2_trace.json",
        args: &[
            "charratio",
            "3,2,1",
            "--r",
            "2",
            "--method",
            "trace",
            "--format",
            "json",
        ],
        exit: 0,
    },
    GoldenCase {
        name: "spectrum_3_2_1.csv",
        args: &[
            "spectrum", "3,2,1", "--trials", "40", "--seed", "7", "--bins", "9",
        ],
        exit: 0,
    },
    GoldenCase {
        name: "spectrum_4_2.json",
        args: &[
            "spectrum", "4,2", "--trials", "25", "--seed", "3", "--bins", "5", "--format", "json",
        ],
        exit: 0,
    },
    GoldenCase {
        name: "moments_3_2_1.json",
        args: &[
            "moments", "3,2,1", "--trials", "40", "--smax", "4", "--seed", "11",
        ],
        exit: 0,
    },
    GoldenCase {
        name: "moments_4_2_1.csv",
        args: &[
            "moments", "4,2,1", "--trials", "30", "--smax", "6", "--seed", "2", "--format", "csv",
        ],
        exit: 0,
    },
    GoldenCase {
        name: "check_coxeter_5_2_1.txt",
        args: &["check", "coxeter", "5,2,1"],
        exit: 0,
    },
    GoldenCase {
        name: "check_coxeter_2_2.json",
        args: &["check", "coxeter", "2,2", "--format", "json"],
        exit: 0,
    },
    GoldenCase {
        name: "check_identities_k3.txt",
        args: &[
            "check",
            "identities",
            "--K",
            "3",
            "--eta",
            "1,0",
            "--rmax",
            "3",
        ],
        exit: 0,
    },
    GoldenCase {
        name: "check_identities_k2.json",
        args: &[
            "check",
            "identities",
            "--K",
            "2",
            "--rmax",
            "4",
            "--format",
            "json",
        ],
        exit: 0,
    },
    GoldenCase {
        name: "check_plancherel_n3.txt",
        args: &["check", "plancherel", "--n", "3"],
        exit: 0,
    },
    GoldenCase {
        name: "check_plancherel_n10.json",
        args: &["check", "plancherel", "--n", "10", "--format", "json"],
        exit: 0,
    },
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

/// Runs the CLI in-process, returning (exit code, stdout, stderr).
pub fn run_cli(args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("youngspec").chain(args.iter().copied());
    let code = youngspec_cli::run(argv, &mut out, &mut err);
    (code, out, err)
}

/// Compares one case against its golden file; `Err` describes the mismatch.
pub fn check_golden(case: &GoldenCase) -> Result<(), String> {
    let (code, out, err) = run_cli(case.args);
    if code != case.exit {
        return Err(format!(
            "{}: exit {code}, expected {}; stderr: {}",
            case.name,
            case.exit,
            String::from_utf8_lossy(&err)
        ));
    }
    let path = golden_dir().join(case.name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected != out {
        return Err(format!(
            "{}: output differs from golden file\n--- expected\n{}\n--- actual\n{}",
            case.name,
            String::from_utf8_lossy(&expected),
            String::from_utf8_lossy(&out)
        ));
    }
    Ok(())
}

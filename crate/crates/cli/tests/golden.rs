//! Runs the CLI on the fixtures and compares stdout and exit codes with
//! `tests/golden/<name>.out`. `UPDATE_GOLDEN=1` rewrites the files.

use std::path::Path;
use std::process::Command;

const CASES: &[(&str, &str, i32)] = &[
    ("even_odd_loop", "even tests/fixtures/odd_loop.json", 1),
    ("even_chain", "even tests/fixtures/chain.json", 0),
    ("solve_pgsolver", "solve tests/fixtures/sample.pg", 0),
    ("attract_adam", "attract tests/fixtures/sample.pg --targets 2 --player adam", 0),
    ("ad_build", "ad build tests/fixtures/chain.json", 0),
    ("ad_build_odd", "ad build tests/fixtures/odd_loop.json", 1),
    ("ad_build_dot", "ad build tests/fixtures/chain.json --format dot", 0),
    ("strahler", "strahler (()(())) -n 1", 0),
    ("universal", "universal -n 1 -k 2 -d 2 -w 2", 0),
    ("embed_yes", "embed (()()) ((())()())", 0),
    ("embed_no", "embed ((())) (()())", 1),
    ("bound_yes", "bound check tests/fixtures/pair.json -n 1", 0),
    ("bound_no", "bound check tests/fixtures/unbounded.json -n 3", 1),
    ("reg_solve_one_register", "reg solve tests/fixtures/chain.json --j 1,2 -n 1", 1),
    ("reg_solve_two_registers", "reg solve tests/fixtures/chain.json --j 1,4 -n 1", 0),
    ("reg_synth", "reg synth tests/fixtures/chain.json -n 1", 0),
    ("reg_cap", "reg build tests/fixtures/chain.json --j 1,4 -n 2 --cap-states 5 --json-errors", 3),
    ("aut_member_yes", "aut member tests/fixtures/eventually_one.json tests/fixtures/alternating.json", 0),
    ("aut_member_no", "aut member tests/fixtures/eventually_one.json tests/fixtures/zeros.json", 1),
    ("aut_game", "aut game tests/fixtures/eventually_one.json tests/fixtures/zeros.json --format pgsolver", 0),
    (
        "aut_guide",
        "aut guide tests/fixtures/eventually_one.json tests/fixtures/eventually_one.json tests/fixtures/identity_guide.json tests/fixtures/alternating.json",
        0,
    ),
    ("convert_dot", "convert tests/fixtures/sample.pg --format dot", 0),
    ("convert_pgsolver", "convert tests/fixtures/chain.json --format pgsolver", 2),
    ("lab_random", "lab random --kind game --vertices 3 --seed 7", 0),
    ("lab_random_even_dot", "lab random --kind even --vertices 4 --seed 7 --format dot", 0),
    ("lab_battery_empty", "lab battery --scale 0", 0),
    ("lab_battery_one", "lab battery --scale 5 --criterion 9", 0),
    ("unknown_flag", "even --bogus tests/fixtures/chain.json", 2),
    ("missing_file", "even tests/fixtures/nope.json --json-errors", 2),
];

/// Wall times differ between runs.
fn scrub(s: &str) -> String {
    let re_time = |line: &str| match (line.find(" failures, "), line.find(" s")) {
        (Some(a), Some(_)) => {
            let rest = &line[a + " failures, ".len()..];
            let end = rest.find(" s").unwrap();
            format!("{}{}{}", &line[..a + " failures, ".len()], "<t>", &rest[end..])
        }
        _ => line.to_string(),
    };
    s.lines().map(re_time).collect::<Vec<_>>().join("\n")
}

#[test]
fn golden_outputs() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatches = Vec::new();
    for &(name, args, code) in CASES {
        let out = Command::new(env!("CARGO_BIN_EXE_pix"))
            .args(args.split_whitespace())
            .current_dir(dir)
            .output()
            .unwrap();
        let stdout = scrub(&String::from_utf8_lossy(&out.stdout));
        let got = out.status.code().unwrap();
        if got != code {
            mismatches.push(format!("{name}: exit {got}, expected {code}; stderr: {}", String::from_utf8_lossy(&out.stderr)));
        }
        let path = dir.join("tests/golden").join(format!("{name}.out"));
        if update {
            std::fs::write(&path, &stdout).unwrap();
        } else {
            let want = std::fs::read_to_string(&path).unwrap_or_default();
            if want != stdout {
                mismatches.push(format!("{name}: stdout differs\n--- want\n{want}\n--- got\n{stdout}"));
            }
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn output_file_is_written() {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("universal.json");
    let status = Command::new(env!("CARGO_BIN_EXE_pix"))
        .args(["universal", "-n", "1", "-k", "1", "-d", "2", "-o"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"kind\": \"tree\""));
}

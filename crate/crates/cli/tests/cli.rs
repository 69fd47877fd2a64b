use assert_cmd::Command;
use predicates::prelude::*;

fn cli() -> Command {
    Command::cargo_bin("traceideal").unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = cli().args(args).output().unwrap();
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

#[test]
fn zform_trace_of_a_curve_module() {
    cli()
        .args([
            "mf",
            "trace",
            "--ring",
            "x,y;QQ;y^2+x^5",
            "--phi",
            "[[0,-x^3];[x^2,0]]",
            "--z",
            "y",
        ])
        .assert()
        .success()
        .stdout("(x^2, y)\n");
}

#[test]
fn zform_trace_with_oracle() {
    cli()
        .args([
            "mf",
            "trace",
            "--ring",
            "x,y;QQ;y^2+x^5",
            "--phi",
            "[[0,-x^3];[x^2,0]]",
            "--z",
            "y",
            "--oracle",
        ])
        .assert()
        .success()
        .stdout(predicate::str::contains("oracle (x^2, y) PASS"));
}

#[test]
fn intersect_coprime_principal_ideals() {
    cli()
        .args(["ideal", "intersect", "(x)", "(y)", "--ring", "x,y;QQ;"])
        .assert()
        .success()
        .stdout("(x*y)\n");
}

#[test]
fn ideal_operations() {
    assert_eq!(
        stdout(&["ideal", "sum", "(x)", "(y^2)", "--ring", "x,y;QQ;"]),
        "(x, y^2)"
    );
    assert_eq!(
        stdout(&["ideal", "quotient", "(0)", "(y)", "--ring", "x,y;QQ;x^2*y"]),
        "(x^2)"
    );
    cli()
        .args(["ideal", "equal", "(x, y)", "(y, x+y)", "--ring", "x,y;QQ;"])
        .assert()
        .success()
        .stdout("true\n");
    cli()
        .args(["ideal", "equal", "(x)", "(y)", "--ring", "x,y;QQ;"])
        .assert()
        .code(1)
        .stdout("false\n");
    cli()
        .args(["ideal", "contains", "(x, y)", "x*y+y", "--ring", "x,y;QQ;"])
        .assert()
        .success();
    cli()
        .args(["ideal", "radical", "(x^3)", "x", "--ring", "x,y;QQ;"])
        .assert()
        .success()
        .stdout("true\n");
    cli()
        .args(["ideal", "radical", "(x^3)", "y", "--ring", "x,y;QQ;"])
        .assert()
        .code(1);
}

#[test]
fn mcm_e6_passes() {
    cli()
        .args(["mcm", "E6"])
        .assert()
        .success()
        .stdout("(x, y^2, z)\nPASS (claimed (x, y^2, z))\n");
}

#[test]
fn mcm_lines_format() {
    cli()
        .args(["--format", "lines", "mcm", "An-dim1-odd", "--param", "n=7"])
        .assert()
        .success()
        .stdout("tau_MCM\t(x^3, y)\t(x^3, y)\tPASS\n");
}

#[test]
fn domain_and_field_errors() {
    cli()
        .args(["mcm", "Dn-dim2", "--param", "n=3"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("n >= 4"));
    cli()
        .args(["mcm", "E6", "--field", "QQ"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("square root of -1"));
}

#[test]
fn parse_errors_carry_positions() {
    cli()
        .args(["ideal", "sum", "(x, y^)", "(y)", "--ring", "x,y;QQ;"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("line 1, column 7"));
    cli()
        .args(["trace", "--ring", "x,y;QQ;x^2*y", "--matrix", "[[y, x]; [x]]"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("column"));
    cli().args(["bogus"]).assert().code(2);
}

#[test]
fn invalid_factorization_reports_residual() {
    cli()
        .args([
            "mf",
            "zform",
            "--ring",
            "x,y;QQ;y^2+x^5",
            "--phi",
            "[[0,-x^3];[x,0]]",
            "--z",
            "y",
        ])
        .assert()
        .code(1)
        .stderr(predicate::str::contains("(1, 1)"));
    cli()
        .args([
            "mf", "verify", "--ring", "x,y;QQ;", "--a", "[[x]]", "--b", "[[y]]", "--f", "x*y+1",
        ])
        .assert()
        .code(1);
    cli()
        .args([
            "mf", "verify", "--ring", "x,y;QQ;", "--a", "[[x]]", "--b", "[[y]]", "--f", "x*y",
        ])
        .assert()
        .success();
}

#[test]
fn kernel_image_and_transpose() {
    let args = ["--ring", "x,y;QQ;y^2+x^3", "--phi", "[[0,-x^2];[x,0]]", "--z", "y"];
    cli()
        .args(["mf", "kerimage"])
        .args(args)
        .assert()
        .success()
        .stdout("true\n");
    cli()
        .args(["mf", "transpose"])
        .args(args)
        .assert()
        .success()
        .stdout("[[0, x]; [-x^2, 0]]\n");
}

#[test]
fn oracle_trace_of_a_presentation() {
    cli()
        .args(["trace", "--ring", "x,y;QQ;x^2*y", "--matrix", "[[y]]"])
        .assert()
        .success()
        .stdout("(x^2)\n");
}

#[test]
fn gb_output_round_trips() {
    let ring = "x,y,z;QQ;";
    let gb = stdout(&["gb", "--ring", ring, "(x^2+y*z-3/2*z, x*y-z^2)"]);
    assert!(gb.starts_with('(') && gb.ends_with(')'), "{gb}");
    cli()
        .args(["ideal", "equal", &gb, "(x^2+y*z-3/2*z, x*y-z^2)", "--ring", ring])
        .assert()
        .success();
    let lines = stdout(&["--format", "lines", "gb", "--ring", ring, "(x^2+y*z-3/2*z, x*y-z^2)"]);
    assert_eq!(format!("({})", lines.lines().collect::<Vec<_>>().join(", ")), gb);
}

#[test]
fn printed_ideals_and_matrices_round_trip() {
    let ring = "x,y,z;QQi;z^2+x^3+y^4";
    let tau = stdout(&[
        "mf",
        "trace",
        "--ring",
        ring,
        "--phi",
        "[[i*y^2, -x]; [x^2, -i*y^2]]",
        "--z",
        "z",
    ]);
    assert_eq!(tau, "(x, y^2, z)");
    cli()
        .args(["ideal", "equal", &tau, "(z, y^2, x)", "--ring", ring])
        .assert()
        .success();
    let t = stdout(&[
        "mf",
        "transpose",
        "--ring",
        ring,
        "--phi",
        "[[i*y^2, -x]; [x^2, -i*y^2]]",
        "--z",
        "z",
    ]);
    let back = stdout(&["mf", "transpose", "--ring", ring, "--phi", &t, "--z", "z"]);
    assert_eq!(back, "[[i*y^2, -x]; [x^2, -i*y^2]]");
}

#[test]
fn field_override() {
    cli()
        .args([
            "--field", "Fp:5", "ideal", "contains", "(x)", "5*y", "--ring", "x,y;QQ;",
        ])
        .assert()
        .success();
    cli()
        .args(["--field", "Fp:4", "ideal", "sum", "(x)", "(y)", "--ring", "x,y;;"])
        .assert()
        .code(2);
}

#[test]
fn degree_guard_from_environment() {
    cli()
        .env("TRACEIDEAL_MAX_DEGREE", "2")
        .args(["gb", "--ring", "x,y,z;QQ;", "(x^3-y*z, y^3-x*z, z^3-x*y)"])
        .assert()
        .code(1)
        .stderr(predicate::str::contains("degree limit"));
    cli()
        .env("TRACEIDEAL_MAX_DEGREE", "lots")
        .args(["catalog"])
        .assert()
        .code(2);
}

#[test]
fn catalog_listing() {
    let all = stdout(&["catalog"]);
    for name in ["E6", "E7", "E8", "Dn-dim2", "Veronese2", "Ainf-dim1"] {
        assert!(all.contains(name), "{name} missing from\n{all}");
    }
    let e6 = stdout(&["--format", "lines", "catalog", "E6"]);
    assert_eq!(e6.lines().filter(|l| l.starts_with("phi")).count(), 4);
}

#[test]
fn verify_paper_reports_every_criterion() {
    let out = cli().args(["--format", "lines", "verify-paper"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let verdict = |c: u32| {
        text.lines()
            .find(|l| l.starts_with(&format!("criterion\t{c}\t")))
            .unwrap_or_else(|| panic!("no summary for criterion {c}"))
            .rsplit('\t')
            .next()
            .unwrap()
            .to_string()
    };
    let all_pass = (1..=15).all(|c| verdict(c) == "PASS");
    assert_eq!(out.status.code(), Some(if all_pass { 0 } else { 1 }));
    for c in [1, 2, 3, 4, 8, 9, 10, 11, 12, 13, 14, 15] {
        assert_eq!(verdict(c), "PASS", "criterion {c}");
    }
    // Each claim row quotes the catalog's ideal next to the computed one.
    assert!(text.contains("8\tE6\t-\ttau_MCM\t(x, y^2, z)\t(x, y^2, z)\tPASS"));
    assert!(text.contains("7\tDn-dim2\tn=6\tM5 & M6\t(x^2, x*y, y^3, z)\t(x^2, x*y, y^3, z)\tPASS"));
}

#[test]
fn output_is_deterministic() {
    let a = cli().args(["verify-paper"]).output().unwrap().stdout;
    let b = cli().args(["verify-paper"]).output().unwrap().stdout;
    assert_eq!(a, b);
}

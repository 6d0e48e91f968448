use std::collections::BTreeSet;

use rascal_cli::{run, GridConfig, EXIT_LIMIT, EXIT_OK, EXIT_USAGE};
use rascal_core::identity::{list_identities, LhsMode};

fn rascal(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("rascal").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = rascal(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    out
}

#[test]
fn triangle_formats() {
    assert_eq!(ok(&["triangle", "0"]), "1\n");
    assert_eq!(
        ok(&["triangle", "2", "--format", "bfile"]),
        "0 1\n1 1\n2 1\n3 1\n4 2\n5 1\n"
    );
    assert_eq!(
        ok(&["triangle", "2", "--format", "bfile", "--offset", "1"])
            .lines()
            .next(),
        Some("1 1")
    );
    assert_eq!(ok(&["triangle", "4", "--j", "2"]).lines().last(), Some("1 4 6 4 1"));
    let csv = ok(&["triangle", "1", "--format", "csv"]);
    assert_eq!(csv, "n,k,value\n0,0,1\n1,0,1\n1,1,1\n");
    let json: serde_json::Value = serde_json::from_str(&ok(&["triangle", "3", "--format", "json"])).unwrap();
    assert_eq!(json["rows"][3], serde_json::json!(["1", "3", "3", "1"]));
}

#[test]
fn values() {
    assert_eq!(ok(&["value", "6", "3"]), "10\n");
    assert_eq!(ok(&["value", "3", "5"]), "0\n");
    assert_eq!(ok(&["value", "6", "3", "--j", "2"]), "19\n");
    for m in ["closed", "linear", "multiplicative", "enumeration"] {
        assert_eq!(ok(&["value", "9", "4", "--method", m]), "21\n", "{m}");
    }
    let (code, _, _) = rascal(&["value", "6", "3", "--j", "2", "--method", "multiplicative"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn enumeration() {
    assert_eq!(
        ok(&["enumerate", "words", "--n", "6", "--k", "4", "--j", "1", "--count-only"]),
        "9\n"
    );
    let avoiders = ok(&["enumerate", "avoiders", "--n", "4", "--patterns", "001,210"]);
    assert_eq!(avoiders, "0000\n0100\n0110\n0111\n0120\n0121\n0122\n0123\n");
    assert_eq!(ok(&["enumerate", "ascseq", "--n", "4", "--count-only"]), "15\n");
    assert_eq!(
        ok(&["enumerate", "subsets", "--n", "4", "--k", "2", "--j", "0"]),
        "3 4\n"
    );
    let (code, _, err) = rascal(&["enumerate", "words", "--n", "30"]);
    assert_eq!(code, EXIT_LIMIT, "{err}");
    let (code, _, _) = rascal(&["--max-items", "3", "enumerate", "ascseq", "--n", "4"]);
    assert_eq!(code, EXIT_LIMIT);
}

#[test]
fn usage_errors() {
    assert_eq!(rascal(&["verify", "no_such_identity"]).0, EXIT_USAGE);
    assert_eq!(rascal(&["bijection", "nope"]).0, EXIT_USAGE);
    assert_eq!(rascal(&["triangle"]).0, EXIT_USAGE);
    assert_eq!(
        rascal(&["enumerate", "avoiders", "--n", "4", "--patterns", "0x1"]).0,
        EXIT_USAGE
    );
    let (code, out, _) = rascal(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verify"));
}

#[test]
fn verify_reports() {
    let out = ok(&["verify", "weighted_row_sum", "--n-max", "8"]);
    assert!(out.contains("n=2: lhs 6 vs rhs 5"), "{out}");
    let out = ok(&["verify", "row_sum", "--n-max", "16", "--oracle"]);
    assert!(out.contains("all pass"), "{out}");

    let json = ok(&[
        "verify",
        "weighted_row_sum",
        "--n-max",
        "6",
        "--formula",
        "--format",
        "json",
    ]);
    let reports: Vec<rascal_core::identity::IdentityReport> = serde_json::from_str(&json).unwrap();
    assert_eq!(reports.len(), 2);
    assert!(!reports[0].passed());
    assert!(reports[1].passed());
    assert!(reports.iter().all(|r| r.elapsed_ms.is_none()));
    let timed = ok(&[
        "verify",
        "row_sum",
        "--n-max",
        "6",
        "--formula",
        "--format",
        "json",
        "--timing",
    ]);
    let timed: Vec<rascal_core::identity::IdentityReport> = serde_json::from_str(&timed).unwrap();
    assert!(timed[0].elapsed_ms.is_some());
}

#[test]
fn bijection_reports() {
    let out = ok(&["bijection", "ratio", "--n", "3", "--k", "2"]);
    assert!(out.contains("n=3 k=2: image 3 of 4, missed: 110 mark 1"), "{out}");
    let out = ok(&["bijection", "genalt", "--n", "6", "--j", "1"]);
    assert!(out.contains("n=6 j=1: 4 fixed points, signed sum -2"), "{out}");
    let json: serde_json::Value =
        serde_json::from_str(&ok(&["bijection", "sym", "--n-max", "6", "--format", "json"])).unwrap();
    assert_eq!(json["failure_count"], 0);
}

#[test]
fn etable() {
    let out = ok(&["etable", "6", "2", "--format", "csv"]);
    assert!(out.lines().any(|l| l == "6,3,2,14"), "{out}");
    let out = ok(&["etable", "40", "4"]);
    assert!(out.contains("negative entries: none"));
}

#[test]
fn shipped_config_covers_every_identity_in_both_modes() {
    let config = GridConfig::load_default().unwrap();
    let mut seen = BTreeSet::new();
    for r in &config.runs {
        assert!(r.grid.parse::<rascal_core::identity::Grid>().is_ok(), "{}", r.grid);
        seen.insert((r.identity.clone(), r.mode.to_string()));
    }
    for id in list_identities() {
        for mode in [LhsMode::Oracle, LhsMode::Formula] {
            assert!(
                seen.contains(&(id.name().to_string(), mode.to_string())),
                "{} {mode}",
                id.name()
            );
        }
    }
    assert_eq!(config.runs.len(), 2 * list_identities().len());
}

#[test]
fn verify_all_small() {
    let out = ok(&["verify", "all", "--n-max", "10"]);
    assert!(out.contains("13 identities"), "{out}");
    assert!(
        out.contains("printed formula disagrees with the oracle: weighted_row_sum"),
        "{out}"
    );
}

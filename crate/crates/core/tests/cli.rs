use lieform::cli::run;
use std::path::{Path, PathBuf};

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn lieform(args: &[&str]) -> Out {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<String> = std::iter::once("lieform").chain(args.iter().copied()).map(String::from).collect();
    let code = run(argv, &mut out, &mut err);
    Out { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn corpus(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus").join(name).display().to_string()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lieform-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn betti_outputs() {
    let o = lieform(&["betti", "su3"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout.trim(), "1,0,0,1,0,1,0,0,1");
    let o = lieform(&["betti", "su2"]);
    assert_eq!(o.stdout.trim(), "1,0,0,1");
    let o = lieform(&["betti", "so5", "--max-degree", "5"]);
    assert_eq!(o.code, 0);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines[0], "1,0,0,1,0,0");
    assert!(lines[1].ends_with("1,0,0,1,0,0,0,1,0,0,1"), "{}", lines[1]);
}

#[test]
fn table_matches_reference() {
    for form in ["omega", "star-omega"] {
        let o = lieform(&["table", "su3", "--form", form]);
        assert_eq!(o.code, 0, "{form}: {}", o.stdout);
        assert!(o.stdout.contains("reference minus row: PASS"), "{}", o.stdout);
    }
}

#[test]
fn verify_differential_passes_and_json_is_deterministic() {
    let a = tmp("a.json");
    let b = tmp("b.json");
    let o1 = lieform(&["verify", "su3", "--suite", "differential", "--json", a.to_str().unwrap()]);
    let o2 = lieform(&["verify", "su3", "--suite", "differential", "--json", b.to_str().unwrap()]);
    assert_eq!(o1.code, 0, "{}", o1.stdout);
    assert_eq!(o2.code, 0);
    assert!(o1.stdout.trim_end().ends_with("verdict: PASS"));
    let ja = std::fs::read(&a).unwrap();
    assert_eq!(ja, std::fs::read(&b).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["algebra"], "su3");
}

#[test]
fn verify_torsion_reports_constant_mismatches() {
    let o = lieform(&["verify", "su3", "--suite", "torsion"]);
    assert_eq!(o.code, 1);
    let fails: Vec<&str> = o.stdout.lines().filter(|l| l.starts_with("FAIL")).collect();
    let ids: Vec<&str> = fails.iter().map(|l| l[5..].split(':').next().unwrap()).collect();
    assert_eq!(
        ids,
        vec!["d_plus_theta.constant", "d_minus_theta.constant", "d_minus_theta_d.constant", "wedge_rho_constant", "contract_rho_constant"]
    );
    assert!(o.stdout.contains("PASS d_plus_theta.proportional"));
    assert!(o.stdout.contains("PASS r_max.in_ker_d_plus_iff_su3"));
}

#[test]
fn classify_commands() {
    let o = lieform(&["classify", "omega:su3"]);
    assert_eq!(o.code, 0);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "cartan(su3)");
    let o = lieform(&["classify", &corpus("g2.json")]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("g2_type"));
    let o = lieform(&["classify", &corpus("random_1.json")]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("unrecognized"));
}

#[test]
fn classify_usage_errors() {
    let empty = tmp("empty.json");
    std::fs::write(&empty, r#"{"algebra": "R6", "degree": 3, "terms": []}"#).unwrap();
    assert_eq!(lieform(&["classify", empty.to_str().unwrap()]).code, 2);
    let two = tmp("two.json");
    std::fs::write(&two, r#"{"algebra": "R4", "degree": 2, "terms": [{"idx": [1, 2], "num": 1}]}"#).unwrap();
    assert_eq!(lieform(&["classify", two.to_str().unwrap()]).code, 2);
    let o = lieform(&["classify", "/nonexistent/form.json"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.starts_with("error:"));
    let garbage = tmp("garbage.json");
    std::fs::write(&garbage, "not json").unwrap();
    assert_eq!(lieform(&["classify", garbage.to_str().unwrap()]).code, 2);
}

#[test]
fn stab_and_subspace() {
    let o = lieform(&["stab", "omega:su3"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("dim 8"));
    let o = lieform(&["subspace", "su3", "--preset", "root-su2"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("strongly associative: true"));
    assert!(o.stdout.contains("criteria agree: true"));
    let o = lieform(&["subspace", "su3", "--preset", "random", "--seed", "3"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("strongly associative: false"));
    let basis = tmp("basis.json");
    std::fs::write(&basis, r#"{"vectors": [[1,0,0,0,0,0,0,0],[0,1,0,0,0,0,0,0]]}"#).unwrap();
    let o = lieform(&["subspace", "su3", "--basis", basis.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("bracket closed: true"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(lieform(&["verify", "su9"]).code, 2);
    assert_eq!(lieform(&["verify", "e8"]).code, 2);
    assert_eq!(lieform(&["verify", "su3", "--suite", "bogus"]).code, 2);
    assert_eq!(lieform(&["verify", "su3", "--backend", "float", "--precision", "64"]).code, 2);
    assert_eq!(lieform(&["verify", "su3", "--guardrail", "7"]).code, 2);
    assert_eq!(lieform(&["frobnicate"]).code, 2);
    assert_eq!(lieform(&[]).code, 2);
    assert_eq!(lieform(&["subspace", "su3"]).code, 2);
    assert_eq!(lieform(&["--help"]).code, 0);
}

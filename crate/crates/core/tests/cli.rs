use affine_mix::harness::cli::{dispatch, EXIT_BUDGET, EXIT_FAILED, EXIT_INPUT, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("affine-mix").chain(args.iter().copied());
    let code = dispatch(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn evolve_prints_the_exact_law_and_a_summary() {
    let (code, out, err) = run(&["evolve", "--mu", "0:1/2,1:1/2", "--p", "5", "--a", "2", "--n", "2"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out, "x,prob\n0,0.25\n1,0.25\n2,0.25\n3,0.25\n4,0\n");
    let summary: serde_json::Value = serde_json::from_str(&err).unwrap();
    assert_eq!(summary["config"]["p"], 5);
    assert!((summary["results"]["tv"].as_f64().unwrap() - 0.2).abs() < 1e-12);
    assert_eq!(summary["failures"], serde_json::json!([]));
}

#[test]
fn mahler_prints_the_product_measure() {
    let (code, out, _) = run(&["mahler", "--poly", "-2,0,0,1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "2\n");
    let (code, out, _) = run(&["mahler", "--poly", "-1,-1,1", "--poly", "-1,-1,1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "2.61803398875\n");
}

#[test]
fn root_count_and_strip_emit_json() {
    let (code, out, _) = run(&["root-count", "--poly", "1,0,1", "--p", "13"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["results"]["count"], 2);
    assert_eq!(v["results"]["roots"], serde_json::json!([5, 8]));

    let (code, out, _) = run(&["strip", "--poly", "0,-1,0,0,1"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["results"]["monomial_power"], 1);
    assert_eq!(v["results"]["reduced"], "1");
}

#[test]
fn csv_and_summary_go_to_out_paths() {
    let dir = std::env::temp_dir().join(format!("affine-mix-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("sweep.csv");
    let args = [
        "cutoff-sweep", "--mu", "0:1/2,1:1/2", "--prime-lo", "100", "--prime-hi", "200", "--a", "3,5", "--n",
        "4,8", "--seed", "1", "--out", csv.to_str().unwrap(),
    ];
    let (code, out, _) = run(&args);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let table = std::fs::read_to_string(&csv).unwrap();
    assert!(table.starts_with("p,a,n,order_a,admissible,tv,p_l2sq,entb_n,entb_bound,l2_lb\n"));
    // 21 primes in [100, 200], two multipliers, two step counts
    assert_eq!(table.lines().count(), 1 + 21 * 2 * 2);
    let summary: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(csv.with_extension("json")).unwrap()).unwrap();
    assert_eq!(summary["results"]["rows"], 84);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn identity_check_and_verify_succeed() {
    let (code, out, _) = run(&["identity-check", "--mu", "0:1/2,1:1/2", "--p", "7", "--n", "4"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["results"]["passed"], true);

    let (code, out, _) = run(&["verify", "--level", "quick"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn exit_codes_distinguish_failure_kinds() {
    assert_eq!(run(&["no-such-command"]).0, EXIT_USAGE);
    assert_eq!(run(&["evolve", "--p", "7", "--a", "2"]).0, EXIT_USAGE);
    assert_eq!(run(&["evolve", "--p", "9", "--a", "2", "--n", "1"]).0, EXIT_INPUT);
    assert_eq!(run(&["evolve", "--p", "7", "--a", "2", "--n", "1", "--mu", "0:1"]).0, EXIT_INPUT);
    assert_eq!(run(&["evolve", "--p", "7", "--a", "2", "--n", "50", "--budget-n", "10"]).0, EXIT_BUDGET);
    assert_eq!(run(&["verify", "--level", "loud"]).0, EXIT_INPUT);
    let (code, _, err) = run(&["mixing-time", "--p", "101", "--a", "1", "--q", "2", "--budget-n", "20"]);
    assert_eq!(code, EXIT_BUDGET, "{err}");
    assert_ne!(EXIT_FAILED, EXIT_OK);
}

#[test]
fn help_goes_to_standard_output() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    for cmd in [
        "evolve", "mixing-time", "cutoff-sweep", "support", "konyagin", "root-count", "prime-average",
        "identity-check", "mahler", "strip", "verify",
    ] {
        assert!(out.contains(cmd), "{cmd} missing from help");
    }
}

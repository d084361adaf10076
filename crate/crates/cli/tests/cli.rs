use std::path::PathBuf;

fn docs(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(docs(&format!("golden/{name}"))).unwrap()
}

fn orbits(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("orbits").chain(args.iter().copied());
    let code = orbits_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn zoo_conflicts_match_golden() {
    let (code, out, _) = orbits(&["conflicts", &docs("zoo.okb")]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("zoo.conflicts"));
}

#[test]
fn zoo_repairs_match_golden() {
    for k in ["s", "p", "g", "c"] {
        let (code, out, _) = orbits(&["repairs", "--kind", k, &docs("zoo.okb")]);
        assert_eq!(code, 0);
        assert_eq!(out, golden(&format!("zoo.repairs.{k}")), "kind {k}");
    }
}

#[test]
fn zoo_completion_repairs_are_the_two_expected_sets() {
    let (_, out, _) = orbits(&["repairs", "--kind", "c", &docs("zoo.okb")]);
    assert_eq!(out, "{b c em}\n{c em r}\n");
}

#[test]
fn carnivorous_iar_under_completion_repairs() {
    let (code, out, _) = orbits(&["entail", "--kind", "c", "--mode", "iar", &docs("zoo.okb"), &docs("q_carnivorous.oq")]);
    assert_eq!(code, 0);
    assert_eq!(out, "q_carnivorous: yes\n");
}

#[test]
fn carnivorous_not_ar_under_pareto_repairs() {
    let (code, out, _) = orbits(&["entail", "--kind", "p", "--mode", "ar", &docs("zoo.okb"), &docs("q_carnivorous.oq")]);
    assert_eq!(code, 1);
    assert_eq!(out, "q_carnivorous: no\n");
}

#[test]
fn open_queries_list_answers() {
    let (code, out, _) = orbits(&["entail", "--kind", "c", "--mode", "brave", &docs("zoo.okb"), &docs("q_open.oq")]);
    assert_eq!(code, 0);
    assert_eq!(out, "eats(b)\nsnake: yes\n");
    let (code, out, _) = orbits(&["entail", "--kind", "c", "--mode", "iar", &docs("zoo.okb"), &docs("q_open.oq")]);
    assert_eq!(code, 1);
    assert_eq!(out, "eats(b)\nsnake: no\n");
}

#[test]
fn check_repair_reports_json_refutation() {
    let (code, out, _) = orbits(&["--json", "check-repair", "--kind", "c", &docs("zoo.okb"), "--set", "r,c"]);
    assert_eq!(code, 1);
    assert_eq!(out, golden("zoo.check-c.json"));
    let (code, out, _) = orbits(&["check-repair", "--kind", "g", &docs("zoo.okb"), "--set", "c,em,m,o"]);
    assert_eq!((code, out.as_str()), (0, "yes\n"));
}

#[test]
fn check_repair_rejects_unknown_ids() {
    let (code, _, err) = orbits(&["check-repair", "--kind", "s", &docs("zoo.okb"), "--set", "r,zzz"]);
    assert_eq!(code, 2);
    assert!(err.contains("zzz"), "{err}");
}

#[test]
fn export_and_stable_extensions() {
    let (code, out, _) = orbits(&["af", "export", &docs("zoo.okb")]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("zoo.setaf"));
    let (_, stable, _) = orbits(&["af", "extensions", "--sem", "stable", &docs("golden/zoo.setaf")]);
    assert_eq!(stable, golden("zoo.stable"));
    assert_eq!(stable, golden("zoo.repairs.p"));
}

#[test]
fn analyze_reports_incoherence() {
    let fixture: PathBuf =
        [env!("CARGO_MANIFEST_DIR"), "..", "core", "tests", "fixtures", "symm1_noncoherent.setaf"].iter().collect();
    let (code, out, _) = orbits(&["af", "analyze", fixture.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("coherent no"), "{out}");
    let (_, out, _) = orbits(&["af", "analyze", &docs("golden/zoo.setaf")]);
    assert!(out.contains("coherent yes"), "{out}");
}

#[test]
fn elect_and_grounded() {
    assert_eq!(orbits(&["elect", &docs("elect.okb")]).1, "{alpha}\n");
    assert_eq!(orbits(&["grounded", &docs("elect.okb")]).1, "{alpha gamma}\n");
    assert_eq!(orbits(&["grounded", "--depth", "1", &docs("elect.okb")]).1, "{alpha}\n");
}

#[test]
fn kb_program_matches_golden_and_its_model() {
    let (_, program, _) = orbits(&["lp", "emit", "kb", &docs("elect.okb")]);
    assert_eq!(program, golden("elect.lp"));
    let (code, model, _) = orbits(&["lp", "wfs", &docs("golden/elect.lp")]);
    assert_eq!(code, 0);
    assert_eq!(model, golden("elect.wfs"));
    let accepted: Vec<&str> = model.lines().filter(|l| l.starts_with("true acc(")).collect();
    assert_eq!(accepted, ["true acc(alpha)", "true acc(gamma)"]);
    assert!(!model.contains("unknown"));
}

#[test]
fn gamma_program_emits() {
    let (code, out, _) = orbits(&["lp", "emit", "gamma", "--depth", "2", &docs("zoo.okb")]);
    assert_eq!(code, 0);
    assert!(out.contains("acc"), "{out}");
}

#[test]
fn partialpr_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let pre = dir.path().join("zoo.pre");
    std::fs::write(&pre, "r >= m\nb >= o\nc >= h\nem >= ep\nem >= s\nep >= s\n").unwrap();
    let (code, out, err) = orbits(&["partialpr", &docs("zoo.okb"), pre.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with('{') && out.ends_with("}\n"), "{out}");
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = orbits(&["repairs", "--kind", "x", &docs("zoo.okb")]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown repair kind"), "{err}");
    let (code, _, err) = orbits(&["conflicts", "/nonexistent.okb"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"), "{err}");
    let (code, _, _) = orbits(&["entail", "--kind", "c", &docs("zoo.okb"), &docs("q_open.oq")]);
    assert_eq!(code, 2);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.okb");
    std::fs::write(&bad, "[concepts]\nA\n[tbox]\nA <= B\n").unwrap();
    let (code, _, err) = orbits(&["conflicts", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn size_guard_and_force() {
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.okb");
    let mut text = String::from("[facts]\n");
    for i in 0..30 {
        text.push_str(&format!("x{i}\n"));
    }
    std::fs::write(&big, text).unwrap();
    let (code, _, err) = orbits(&["repairs", "--kind", "s", big.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("limit"), "{err}");
    let (code, out, _) = orbits(&["--force", "repairs", "--kind", "s", big.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1);
}

#[test]
fn oracle_verify_passes() {
    let (code, out, _) = orbits(&["oracle", "verify", "--trials", "20", "--seed", "7"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("failures 0"));
}

use super::*;

fn p() -> &'static Path {
    Path::new("test.toml")
}

fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

#[test]
fn rationals() {
    assert_eq!(parse_rational("1/10").unwrap(), r(1, 10));
    assert_eq!(parse_rational(" -3 ").unwrap(), r(-3, 1));
    assert_eq!(parse_rational("0.05").unwrap(), r(1, 20));
    assert_eq!(parse_rational("-0.5").unwrap(), r(-1, 2));
    assert_eq!(parse_rational("2.25").unwrap(), r(9, 4));
    for bad in ["", "1/0", "x", "1.", "1.2.3", "1/2/3"] {
        assert!(parse_rational(bad).is_err(), "{bad}");
    }
}

#[test]
fn shipped_instance_matches_builtin() {
    let inst = parse_instance(scenarios::embedded_instance("appendix_c.instance").unwrap(), p()).unwrap();
    assert_eq!(inst, appendix_c());
}

#[test]
fn negative_value_reports_its_line() {
    let src = "m = 2\n\n[[agents]]\nid = 1\natoms = [{ items = [0], value = -1 }]\n";
    let err = parse_instance(src, p()).unwrap_err().to_string();
    assert!(err.contains("line 5"), "{err}");
    assert!(err.contains("positive"), "{err}");
}

#[test]
fn instance_invariants() {
    let dup = "m = 2\n[[agents]]\nid = 1\n[[agents]]\nid = 1\n";
    assert!(parse_instance(dup, p()).unwrap_err().to_string().contains("line 5"));
    let gap = "m = 2\n[[agents]]\nid = 2\n";
    assert!(parse_instance(gap, p()).is_err());
    assert!(parse_instance("m = 33\n", p()).is_err());
    assert!(parse_instance("m = 2\nitems = [\"a\", \"a\"]\n", p()).is_err());
    assert!(parse_instance("m = 2\nitems = [\"a\"]\n", p()).is_err());
    assert!(parse_instance("m = 2\nbogus = 1\n", p()).is_err());
    let over = format!("m = 1\n[[agents]]\nid = 1\natoms = [{{ items = [0], value = {} }}]\n", MAX_VALUE + 1);
    assert!(parse_instance(&over, p()).is_err());
    let unknown = "m = 2\nitems = [\"a\", \"b\"]\n[[agents]]\nid = 1\natoms = [{ items = [\"z\"], value = 1 }]\n";
    assert!(parse_instance(unknown, p()).unwrap_err().to_string().contains("`z`"));
}

#[test]
fn empty_agent_list_is_valid() {
    let inst = parse_instance("m = 3\n", p()).unwrap();
    assert_eq!(inst.agents(), 0);
}

#[test]
fn instance_round_trip() {
    let inst = appendix_c();
    let text = instance_to_toml(&inst).unwrap();
    assert_eq!(parse_instance(&text, p()).unwrap(), inst);
    let mut rng = seeded(4);
    let plain = random_sca(&mut rng, 5, 7, 2, 20);
    let text = instance_to_toml(&plain).unwrap();
    assert_eq!(parse_instance(&text, p()).unwrap(), plain);
}

#[test]
fn every_scenario_loads_and_round_trips() {
    assert!(list_scenarios().len() >= 8);
    for name in list_scenarios() {
        let exp = load_scenario(name, &Overrides::default()).unwrap();
        assert_eq!(exp.name, name);
        assert!(!exp.runs.is_empty());
        let text = experiment_to_toml(&exp.file).unwrap();
        let again = parse_experiment(&text, p(), Origin::Embedded, &Overrides::default()).unwrap();
        assert_eq!(again.instances, exp.instances);
        assert_eq!(experiment_to_toml(&again.file).unwrap(), text);
    }
    assert!(load_scenario("nope", &Overrides::default()).is_err());
}

const MINIMAL: &str = r#"
[instance]
builtin = "appendix-c"

[mechanism]
kind = "greedy"

[dynamics]
kind = "best-response"
rounds = 5
"#;

fn with(extra_mech: &str, rounds: &str) -> String {
    MINIMAL
        .replace("kind = \"greedy\"", extra_mech)
        .replace("rounds = 5", rounds)
}

#[test]
fn experiment_validation() {
    let ok = |s: &str| parse_experiment(s, p(), Origin::Embedded, &Overrides::default());
    ok(MINIMAL).unwrap();
    let err = ok(&with("kind = \"greedy\"", "rounds = 0")).unwrap_err().to_string();
    assert!(err.contains("line 10"), "{err}");
    assert!(ok(&with("kind = \"ca\"", "rounds = 5")).is_err());
    ok(&with("kind = \"ca\"\ngamma = \"1/100\"", "rounds = 5")).unwrap();
    assert!(ok(&with("kind = \"sca\"\ngamma = \"1/100\"", "rounds = 5")).is_err());
    assert!(ok(&with("kind = \"magic\"", "rounds = 5")).is_err());
    assert!(ok(&with("kind = \"greedy\"", "rounds = 5\nscripted_order = [5]")).is_err());
    assert!(ok(&with("kind = \"greedy\"", "rounds = 5\nscripted_order = [0]")).is_err());
    assert!(ok(&format!("{MINIMAL}\n[agents]\nbyzantine = [9]\n")).is_err());
    assert!(ok(&format!("{MINIMAL}\n[agents]\nbehaviors = {{ \"7\" = \"mw\" }}\n")).is_err());
    assert!(ok(&format!("{MINIMAL}\n[agents]\nbehavior = \"mw\"\n")).is_err());
    assert!(ok(&with("kind = \"greedy\"", "rounds = 5\nempty_start = false")).is_err());
    ok(&with("kind = \"sca\"\nappendix_b_lottery = \"1/20\"", "rounds = 5\nempty_start = false")).unwrap();
}

#[test]
fn overrides_apply() {
    let o = Overrides {
        seed: Some(9),
        replicas: Some(3),
        scripted_order: Some(vec![1, 2]),
        ..Overrides::default()
    };
    let exp = parse_experiment(MINIMAL, p(), Origin::Embedded, &o).unwrap();
    assert_eq!(exp.runs[0].seed, 9);
    assert_eq!(exp.runs[0].replicas, 3);
    assert_eq!(exp.runs[0].scripted_order, Some(vec![0, 1]));
    let g = Overrides {
        gamma: Some("1/10".into()),
        ..Overrides::default()
    };
    assert!(parse_experiment(MINIMAL, p(), Origin::Embedded, &g).is_err());
}

#[test]
fn appendix_cycle_scenario_passes() {
    let exp = load_scenario("appendix-c-cycle", &Overrides::default()).unwrap();
    let s = run_experiment(&exp, None).unwrap();
    assert!(s.passed, "{:?}", s.checks);
    assert_eq!(s.replicas[0].cycle_period, Some(4));
    assert!(!s.replicas[0].converged);
}

#[test]
fn sided_scenario_passes() {
    let exp = load_scenario("section-3-3", &Overrides::default()).unwrap();
    let s = run_experiment(&exp, None).unwrap();
    assert!(s.passed, "{:?}", s.checks);
    assert_eq!(s.replicas[0].ratio, "5/18");
    assert!(s.replicas[0].regret.iter().all(|r| r.as_deref() == Some("0")));
}

#[test]
fn outputs_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let exp = load_scenario("appendix-c-cycle", &Overrides::default()).unwrap();
    run_experiment(&exp, Some(dir.path())).unwrap();
    let csv = fs::read_to_string(dir.path().join("trace-i0-r0.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "round,updater,set_1,bid_1,set_2,bid_2,set_3,bid_3,set_4,bid_4,coin,won_1,won_2,won_3,won_4,pay_1,pay_2,pay_3,pay_4,declared_sw,true_sw"
    );
    assert_eq!(lines.next().unwrap(), "1,3,0,0,0,0,4,4,0,0,keep,0,0,4,0,0,0,0,0,4,4");
    assert_eq!(csv.lines().count(), 14);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(json["passed"], true);
    assert_eq!(json["replicas"][0]["cycle_period"], 4);
}

#[test]
fn degenerate_instance_runs_with_zero_welfare() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("empty.instance"), "m = 2\ns = 1\n").unwrap();
    let exp_path = dir.path().join("e.toml");
    fs::write(
        &exp_path,
        "[instance]\npath = \"empty.instance\"\n[mechanism]\nkind = \"sca\"\n[dynamics]\nkind = \"best-response\"\nrounds = 4\n",
    )
    .unwrap();
    let exp = load_experiment(&exp_path, &Overrides::default()).unwrap();
    let s = run_experiment(&exp, None).unwrap();
    assert_eq!(s.replicas[0].average_welfare, "0");
    assert!(s.passed);
}

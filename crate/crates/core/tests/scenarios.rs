use auctionlab::experiment::{list_scenarios, load_scenario, run_experiment, Overrides};

#[test]
fn every_scenario_self_validates() {
    assert!(list_scenarios().len() >= 8);
    for name in list_scenarios() {
        let exp = load_scenario(name, &Overrides::default()).unwrap_or_else(|e| panic!("{name}: {e}"));
        for cfg in &exp.runs {
            cfg.validate().unwrap();
        }
    }
}

#[test]
fn quick_scenarios_pass() {
    for name in ["appendix-c-cycle", "appendix-c-random", "section-3-3", "random-sca", "random-ca"] {
        let exp = load_scenario(name, &Overrides::default()).unwrap();
        let s = run_experiment(&exp, None).unwrap();
        assert!(s.passed, "{name}: {:?}", s.checks);
        assert!(!s.checks.is_empty());
    }
}

#[test]
fn reduced_heavy_scenarios_run() {
    let o = Overrides {
        replicas: Some(1),
        ..Overrides::default()
    };
    for name in ["byzantine-mix", "regret-theorem-3", "best-response-theorem-10", "ca-theorem-11"] {
        let mut exp = load_scenario(name, &o).unwrap();
        exp.runs.truncate(2);
        for cfg in &mut exp.runs {
            cfg.rounds = cfg.rounds.min(500);
        }
        let s = run_experiment(&exp, None).unwrap();
        assert_eq!(s.replicas.len(), 2, "{name}");
    }
}

use ia_bench::objective::{LeakageObjective, ObjectiveMode};
use ia_bench::oracle::{closed_form_3user, oracle_scenario};
use ia_core::{leakage, ChannelSet};
use ia_swarm::{cc_run, CoopConfig, InnerAlgorithm};

#[test]
fn cabc_approaches_but_does_not_beat_the_closed_form() {
    let spec = oracle_scenario();
    for seed in 0..3 {
        let h = ChannelSet::generate(&spec, seed);
        let exact = leakage(&h, &closed_form_3user(&h).unwrap()).unwrap();
        let obj = LeakageObjective::new(h, ObjectiveMode::Raw);
        let t = cc_run(&obj, &CoopConfig::new(InnerAlgorithm::Abc { limit: 5 }, 15, 400, seed)).unwrap();
        assert!(t.final_cost() < 1e-8, "seed {seed}: {}", t.final_cost());
        assert!(exact <= t.final_cost());
    }
}

use ia_swarm::{
    abc_run, cc_run, fitness_transform, pso_run, roulette_probabilities, AbcConfig, Bounds, Colony, CoopConfig,
    Counting, FnObjective, FullProblem, InnerAlgorithm, Objective, OmegaMode, PsoConfig, Swarm, Trace,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sphere(dim: usize) -> FnObjective<impl Fn(&[f64]) -> f64 + Sync> {
    FnObjective::new(Bounds::uniform(dim, -1.0, 1.0), |x: &[f64]| x.iter().map(|v| v * v).sum())
}

fn rastrigin(dim: usize) -> FnObjective<impl Fn(&[f64]) -> f64 + Sync> {
    FnObjective::new(Bounds::uniform(dim, -1.0, 1.0), |x: &[f64]| {
        x.iter().map(|v| v * v - 0.1 * (10.0 * v).cos() + 0.1).sum()
    })
}

fn assert_trace_sane(t: &Trace, iterations: usize) {
    assert_eq!(t.best_cost.len(), iterations + 1);
    assert_eq!(t.evaluations.len(), iterations + 1);
    assert!(t.is_non_increasing());
    assert!(t.evaluations.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn separable_ten_dim_sphere_solved_by_both_cooperative_variants() {
    let f = sphere(10);
    for seed in 0..10 {
        for inner in [InnerAlgorithm::Pso { omega: OmegaMode::Fixed(1e-3) }, InnerAlgorithm::Abc { limit: 5 }] {
            let pop = if matches!(inner, InnerAlgorithm::Pso { .. }) { 50 } else { 15 };
            let t = cc_run(&f, &CoopConfig::new(inner, pop, 100, seed)).unwrap();
            assert!(t.final_cost() < 1e-8, "{inner:?} seed {seed}: {}", t.final_cost());
            assert_eq!(f.evaluate(&t.best_position), t.final_cost());
        }
    }
}

#[test]
fn budget_accounting_matches_evaluation_counter() {
    let f = Counting::new(rastrigin(4));
    let t = pso_run(&f, &PsoConfig::new(12, OmegaMode::Fixed(0.7), 30, 1)).unwrap();
    assert_eq!(t.total_evaluations(), 12 + 30 * 12);
    assert_eq!(f.count(), t.total_evaluations());

    let f = Counting::new(rastrigin(4));
    let t = abc_run(&f, &AbcConfig::new(10, 5, 30, 1)).unwrap();
    // SN initial, then per cycle SN employed + SN onlooker + at most one scout
    let cycles_base = 10 + 30 * 20;
    assert!(t.total_evaluations() >= cycles_base && t.total_evaluations() <= cycles_base + 30);
    assert_eq!(f.count(), t.total_evaluations());

    let f = Counting::new(rastrigin(4));
    let t = cc_run(&f, &CoopConfig::new(InnerAlgorithm::Pso { omega: OmegaMode::Fixed(0.5) }, 6, 20, 1)).unwrap();
    assert_eq!(t.total_evaluations(), 1 + 4 * 6 + 20 * 4 * 6);
    assert_eq!(f.count(), t.total_evaluations());
}

#[test]
fn traces_are_monotone_and_deterministic() {
    let f = rastrigin(6);
    let runs: [(&str, Box<dyn Fn(u64) -> Trace>); 4] = [
        ("pso", Box::new(|s| pso_run(&f, &PsoConfig::new(15, OmegaMode::Random { c: 1.0 }, 40, s)).unwrap())),
        ("abc", Box::new(|s| abc_run(&f, &AbcConfig::new(15, 3, 40, s)).unwrap())),
        (
            "cpso",
            Box::new(|s| cc_run(&f, &CoopConfig::new(InnerAlgorithm::Pso { omega: OmegaMode::Fixed(0.3) }, 8, 15, s)).unwrap()),
        ),
        ("cabc", Box::new(|s| cc_run(&f, &CoopConfig::new(InnerAlgorithm::Abc { limit: 3 }, 8, 15, s)).unwrap())),
    ];
    for (name, run) in &runs {
        let a = run(7);
        assert_trace_sane(&a, a.iterations());
        assert_eq!(a, run(7), "{name} not reproducible");
        assert_ne!(a.best_position, run(8).best_position, "{name} ignores the seed");
    }
}

#[test]
fn initial_populations_lie_in_the_box() {
    let bounds = Bounds::new(vec![-2.0, 0.0, 5.0], vec![-1.0, 0.5, 9.0]);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let swarm = Swarm::init(bounds.clone(), 50, &mut rng);
    assert!(swarm.particles().iter().all(|p| bounds.contains(&p.position)));
    let colony = Colony::init(bounds.clone(), 50, 5, false, &mut rng);
    assert!(colony.sources().iter().all(|s| bounds.contains(&s.position)));
}

#[test]
fn clamped_runs_stay_in_the_box() {
    let f = FnObjective::new(Bounds::uniform(3, -1.0, 1.0), |x: &[f64]| x.iter().map(|v| (v - 3.0).powi(2)).sum());
    let mut cfg = PsoConfig::new(10, OmegaMode::Fixed(2.0), 50, 0);
    cfg.clamp = true;
    let t = pso_run(&f, &cfg).unwrap();
    assert!(f.bounds().contains(&t.best_position));
    let mut cfg = AbcConfig::new(10, 5, 50, 0);
    cfg.clamp = true;
    let t = abc_run(&f, &cfg).unwrap();
    assert!(f.bounds().contains(&t.best_position));
}

#[test]
fn greedy_selection_never_worsens_and_counts_trials() {
    let f = rastrigin(3);
    let mut problem = FullProblem::new(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut colony = Colony::init(f.bounds().clone(), 4, 5, false, &mut rng);
    colony.evaluate_all(&mut problem).unwrap();
    let before = colony.sources()[2].clone();

    assert!(!colony.greedy_select(2, vec![0.9; 3], before.cost + 1.0).unwrap());
    assert_eq!(colony.sources()[2].position, before.position);
    assert_eq!(colony.sources()[2].trials, before.trials + 1);

    // equal cost is not an improvement
    assert!(!colony.greedy_select(2, vec![0.9; 3], before.cost).unwrap());
    assert_eq!(colony.sources()[2].trials, before.trials + 2);

    assert!(colony.greedy_select(2, vec![0.0; 3], 0.0).unwrap());
    assert_eq!(colony.sources()[2].trials, 0);
    assert_eq!(colony.sources()[2].cost, 0.0);
    assert_eq!(colony.sources()[2].fitness, 1.0);

    assert!(colony.greedy_select(1, vec![0.0; 3], -1.0).is_err());
}

#[test]
fn abc_colony_costs_never_increase_across_cycles() {
    let f = rastrigin(5);
    let mut problem = FullProblem::new(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    // a large limit keeps scouts out, so every source is greedy-only
    let mut colony = Colony::init(f.bounds().clone(), 8, 1_000, false, &mut rng);
    colony.evaluate_all(&mut problem).unwrap();
    for _ in 0..30 {
        let before: Vec<f64> = colony.sources().iter().map(|s| s.cost).collect();
        colony.cycle(&mut problem, &mut rng).unwrap();
        for (s, b) in colony.sources().iter().zip(&before) {
            assert!(s.cost <= *b);
        }
        let p = colony.last_probabilities();
        assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }
}

proptest! {
    #[test]
    fn roulette_probabilities_sum_to_one(costs in prop::collection::vec(0.0f64..1e6, 1..200)) {
        let fit: Vec<f64> = costs.iter().map(|&c| fitness_transform(c).unwrap()).collect();
        let p = roulette_probabilities(&fit);
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert!(p.iter().all(|&v| v > 0.0 && v <= 1.0));
    }

    #[test]
    fn fitness_is_decreasing_in_cost(a in 0.0f64..1e9, b in 0.0f64..1e9) {
        let (fa, fb) = (fitness_transform(a).unwrap(), fitness_transform(b).unwrap());
        prop_assert!(fa > 0.0 && fa <= 1.0);
        if a < b { prop_assert!(fa >= fb); }
    }

    #[test]
    fn pso_trace_monotone_for_any_seed(seed in any::<u64>(), omega in 0.0f64..4.0) {
        let t = pso_run(&rastrigin(3), &PsoConfig::new(6, OmegaMode::Fixed(omega), 10, seed)).unwrap();
        prop_assert!(t.is_non_increasing());
        prop_assert_eq!(t.total_evaluations(), 6 + 10 * 6);
    }

    #[test]
    fn cabc_trace_monotone_for_any_seed(seed in any::<u64>(), limit in 1u32..10) {
        let t = cc_run(&rastrigin(3), &CoopConfig::new(InnerAlgorithm::Abc { limit }, 4, 5, seed)).unwrap();
        prop_assert!(t.is_non_increasing());
        prop_assert_eq!(t.best_cost.len(), 6);
    }
}

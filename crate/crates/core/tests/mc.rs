use lcwalk::fixtures::walk_fixtures;
use lcwalk::mc::{compare_empirical, simulate, simulate_strip};
use lcwalk::walker::{exact_exit_distribution, ladder_limit, StripModel, TransitionModel};
use lcwalk::{BigRational, LatticePoint, Region};

#[test]
fn two_by_two_within_four_sigma() {
    let r = Region::rectangle(1, 0, 1).unwrap();
    let model = TransitionModel::<BigRational>::uniform(1);
    let exact = exact_exit_distribution(&r, &model, LatticePoint::new(0, 0)).unwrap();
    let res = simulate(&r, &model, LatticePoint::new(0, 0), 300_000, 42).unwrap();
    let cmp = compare_empirical(&exact, &res);
    assert!(cmp.passed, "{cmp:#?}");
    assert_eq!(res.hits() + res.kills, res.trajectories);
}

#[test]
fn thread_count_does_not_change_results() {
    let f = &walk_fixtures(4, 1, false)[0];
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| simulate(&f.region, &f.model, f.start, 20_000, 42).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn random_fixtures_pass_z_checks() {
    let mut checks = 0;
    let mut flagged = 0;
    for f in walk_fixtures(77, 10, false) {
        let exact = exact_exit_distribution(&f.region, &f.model, f.start).unwrap();
        let cmp = compare_empirical(&exact, &simulate(&f.region, &f.model, f.start, 20_000, 7).unwrap());
        checks += cmp.rows.len();
        flagged += cmp.flagged;
    }
    assert!(checks > 0);
    assert_eq!(flagged, 0);
}

#[test]
fn ladder_simulation_is_near_the_limit() {
    let n = 100_000u64;
    let res = simulate_strip(&StripModel::ladder(), n, 42, 100_000).unwrap();
    for k in -2..=2 {
        let p = ladder_limit(k);
        let sigma = (p * (1.0 - p) / n as f64).sqrt();
        assert!((res.frequency(k) - p).abs() < 4.0 * sigma, "k={k}");
    }
}

use num_complex::Complex64;
use proptest::prelude::*;
use unary_search::continuous::ContinuousProblem;
use unary_search::entangle::{
    max_entanglement, schmidt_spectrum, second_quantized_embedding, DecompositionView, ViewKind,
};
use unary_search::grover::{
    apply_inverter, grover_pass, success_trace, PreparedSearch, SearchConfig,
};
use unary_search::mode::TwoModeSplitter;
use unary_search::oracle::expected_classical_transits;
use unary_search::report::{
    compare, loglog_slope, render_table, CompareConfig, DeviceKind, Format,
};
use unary_search::wave::{cost_scaling_table, direct_search, DetectorModel, WaveConfig};
use unary_search::{ModeState, OracleBox, SplitterNetwork};

fn random_state(n: usize) -> impl Strategy<Value = ModeState> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
        .prop_filter("non-zero", |v| {
            v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3)
        })
        .prop_map(|v| {
            ModeState::normalized(v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
                .unwrap()
        })
}

fn sized_state(max_n: usize) -> impl Strategy<Value = ModeState> {
    (2..=max_n).prop_flat_map(random_state)
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_device_preserves_norm(state in sized_state(64), target_seed in any::<usize>()) {
        let n = state.n();
        let target = 1 + target_seed % n;
        let net = SplitterNetwork::synthesize_balanced(n).unwrap();
        let oracle = OracleBox::new(n, target).unwrap();
        for out in [
            net.apply(&state).unwrap(),
            net.apply_adjoint(&state).unwrap(),
            oracle.quantum_query(&state).unwrap(),
            apply_inverter(&state),
            grover_pass(&state, &oracle, &net).unwrap(),
        ] {
            prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn network_is_linear(n in 2usize..40, a in -1.0f64..1.0, b in -1.0f64..1.0, seed in any::<u64>()) {
        let net = SplitterNetwork::synthesize_balanced(n).unwrap();
        let u = ModeState::basis(n, 1 + (seed as usize) % n).unwrap();
        let v = ModeState::uniform(n).unwrap();
        let combo: Vec<Complex64> = u.amplitudes().iter().zip(v.amplitudes()).map(|(x, y)| a * x + b * y).collect();
        prop_assume!(combo.iter().map(|c| c.norm_sqr()).sum::<f64>() > 1e-6);
        let mut lhs = combo.clone();
        net.apply_to_slice(&mut lhs).unwrap();
        let nu = net.apply(&u).unwrap();
        let nv = net.apply(&v).unwrap();
        let rhs: Vec<Complex64> = nu.amplitudes().iter().zip(nv.amplitudes()).map(|(x, y)| a * x + b * y).collect();
        prop_assert!(max_diff(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn netlist_round_trips(n in 1usize..64) {
        let net = SplitterNetwork::synthesize_balanced(n).unwrap();
        let parsed: SplitterNetwork = net.to_netlist().parse().unwrap();
        prop_assert_eq!(parsed, net);
    }

    #[test]
    fn frame_equivalence(n in 2usize..48, target_seed in any::<usize>(), k in 0usize..8) {
        let target = 1 + target_seed % n;
        let net = SplitterNetwork::synthesize_balanced(n).unwrap();
        let oracle = OracleBox::new(n, target).unwrap();

        let mut lab = ModeState::basis(n, 1).unwrap();
        for _ in 0..k {
            lab = grover_pass(&lab, &oracle, &net).unwrap();
        }
        let lab = net.apply(&lab).unwrap();

        let mut frame = net.apply(&ModeState::basis(n, 1).unwrap()).unwrap();
        for _ in 0..k {
            let flipped = oracle.quantum_query(&frame).unwrap();
            let d = net.apply_adjoint(&flipped).unwrap();
            frame = net.apply(&apply_inverter(&d)).unwrap();
        }
        prop_assert!(max_diff(lab.amplitudes(), frame.amplitudes()) < 1e-10);
    }

    #[test]
    fn success_does_not_depend_on_target(n in 2usize..128, a in any::<usize>(), b in any::<usize>()) {
        let k_max = (3.0 * (n as f64).sqrt()) as usize;
        let ta = success_trace(n, 1 + a % n, k_max).unwrap();
        let tb = success_trace(n, 1 + b % n, k_max).unwrap();
        for (x, y) in ta.iter().zip(&tb) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn analytic_matches_rk4(psi in sized_state(64), target_seed in any::<usize>(), t in 0.0f64..20.0, energy in 0.2f64..3.0) {
        let n = psi.n();
        let problem = ContinuousProblem::new(psi, 1 + target_seed % n, energy).unwrap();
        let analytic = problem.evolve(t).unwrap();
        let stepped = problem.evolve_oracle(t, 2e-3).unwrap();
        prop_assert!(max_diff(analytic.amplitudes(), stepped.state.amplitudes()) < 1e-6);
        prop_assert!((analytic.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn energy_is_conserved(psi in sized_state(32), target_seed in any::<usize>(), t in 0.0f64..50.0) {
        let n = psi.n();
        let problem = ContinuousProblem::new(psi.clone(), 1 + target_seed % n, 1.3).unwrap();
        let e0 = problem.energy_expectation(&psi).unwrap();
        let et = problem.energy_expectation(&problem.evolve(t).unwrap()).unwrap();
        prop_assert!((e0 - et).abs() < 1e-10);
    }

    #[test]
    fn peak_law_holds(n in 2usize..2048, target_seed in any::<usize>(), energy in 0.1f64..10.0) {
        let problem = ContinuousProblem::uniform(n, 1 + target_seed % n, energy).unwrap();
        let t = problem.time_to_peak().unwrap();
        let want = std::f64::consts::PI * (n as f64).sqrt() / (2.0 * energy);
        prop_assert!((t - want).abs() <= 1e-9 * want);
        prop_assert!(problem.target_probability(t).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn schmidt_is_symmetric_under_complement(state in random_state(16), mask in 1u32..15) {
        let view = DecompositionView::new(ViewKind::Qubit, 16).unwrap();
        let side: Vec<usize> = (1..=4).filter(|q| mask & (1 << (q - 1)) != 0).collect();
        let rest: Vec<usize> = (1..=4).filter(|q| mask & (1 << (q - 1)) == 0).collect();
        let a = schmidt_spectrum(&state, &view, &side).unwrap();
        let b = schmidt_spectrum(&state, &view, &rest).unwrap();
        prop_assert!((a.entropy - b.entropy).abs() < 1e-9);
        let sum: f64 = a.schmidt_values.iter().map(|s| s * s).sum();
        prop_assert!((sum - 1.0).abs() < 1e-9);
    }

    #[test]
    fn local_unitaries_keep_entropy(state in random_state(8), theta in -3.0f64..3.0, phi in -3.0f64..3.0) {
        // A splitter between modes differing only in qubit 3 acts locally on qubit 3.
        let view = DecompositionView::new(ViewKind::Qubit, 8).unwrap();
        let before = schmidt_spectrum(&state, &view, &[1]).unwrap();
        let mut after = state.clone();
        for (i, j) in [(1, 2), (3, 4), (5, 6), (7, 8)] {
            after = after.apply_two_mode_splitter(&TwoModeSplitter::new(i, j, theta, phi).unwrap()).unwrap();
        }
        let after = schmidt_spectrum(&after, &view, &[1]).unwrap();
        prop_assert!((before.entropy - after.entropy).abs() < 1e-9);
    }

    #[test]
    fn product_states_have_zero_entropy(a in random_state(2), b in random_state(4)) {
        let amps: Vec<Complex64> = a.amplitudes().iter()
            .flat_map(|x| b.amplitudes().iter().map(move |y| x * y))
            .collect();
        let state = ModeState::from_amplitudes(amps).unwrap();
        let view = DecompositionView::new(ViewKind::Qubit, 8).unwrap();
        let report = schmidt_spectrum(&state, &view, &[1]).unwrap();
        prop_assert!(report.is_product);
        prop_assert_eq!(report.schmidt_rank(1e-9), 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn splitters_round_trip(
        state in sized_state(32),
        pair in (any::<usize>(), any::<usize>()),
        theta in -10.0f64..10.0,
        phi in -10.0f64..10.0,
    ) {
        let n = state.n();
        let i = 1 + pair.0 % n;
        let j = 1 + (i + pair.1 % (n - 1)) % n;
        let s = TwoModeSplitter::new(i, j, theta, phi).unwrap();
        let back = state.apply_two_mode_splitter(&s).unwrap().apply_two_mode_splitter(&s.inverse()).unwrap();
        prop_assert!(max_diff(back.amplitudes(), state.amplitudes()) < 1e-12);
    }
}

#[test]
fn balanced_network_is_unitary_as_a_matrix() {
    for n in 1..=16 {
        let net = SplitterNetwork::synthesize_balanced(n).unwrap();
        let columns: Vec<Vec<Complex64>> = (1..=n)
            .map(|j| {
                net.apply(&ModeState::basis(n, j).unwrap())
                    .unwrap()
                    .into_amplitudes()
            })
            .collect();
        for (a, ca) in columns.iter().enumerate() {
            for (b, cb) in columns.iter().enumerate() {
                let dot: Complex64 = ca.iter().zip(cb).map(|(x, y)| x.conj() * y).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((dot - want).norm() < 1e-12, "n={n} <{a}|{b}> = {dot}");
            }
        }
    }
}

#[test]
fn uniformity_holds_for_every_size() {
    for n in 1..=1024 {
        let out = SplitterNetwork::synthesize_balanced(n)
            .unwrap()
            .apply(&ModeState::basis(n, 1).unwrap())
            .unwrap();
        for p in out.probabilities() {
            assert!((p - 1.0 / n as f64).abs() < 1e-12);
        }
    }
}

#[test]
fn unit_vectors_are_products_in_every_view() {
    let state = ModeState::basis(8, 6).unwrap();
    let report =
        max_entanglement(&state, &DecompositionView::new(ViewKind::Qubit, 8).unwrap()).unwrap();
    assert!(report.is_product);
    let occupation = second_quantized_embedding(&state)
        .unwrap()
        .max_entanglement()
        .unwrap();
    assert!(occupation.is_product);
}

#[test]
fn uniform_occupation_entropy_matches_binary_entropy() {
    // Cutting one register off a W-type state leaves a 1/n : (n-1)/n split.
    for n in 2..=12 {
        let emb = second_quantized_embedding(&ModeState::uniform(n).unwrap()).unwrap();
        let report = emb.schmidt_spectrum(&[1]).unwrap();
        let p = 1.0 / n as f64;
        let h = -(p * p.log2() + (1.0 - p) * (1.0 - p).log2());
        assert!((report.entropy - h).abs() < 1e-9, "n={n}");
    }
}

#[test]
fn cost_slopes() {
    let sizes = [16usize, 64, 256, 1024];
    let quantum: Vec<(f64, f64)> = sizes
        .iter()
        .map(|&n| {
            (
                n as f64,
                PreparedSearch::run(n, 1, &SearchConfig::default())
                    .unwrap()
                    .transits as f64,
            )
        })
        .collect();
    let coin: Vec<(f64, f64)> = sizes
        .iter()
        .map(|&n| (n as f64, expected_classical_transits(n)))
        .collect();
    let detector = DetectorModel::default();
    let table = cost_scaling_table(&sizes, &detector).unwrap();
    let wave: Vec<(f64, f64)> = table
        .rows
        .iter()
        .map(|r| (r.n as f64, r.interferometric_cost))
        .collect();
    let direct: Vec<(f64, f64)> = sizes
        .iter()
        .map(|&n| {
            (
                n as f64,
                direct_search(n, 1, &detector, &WaveConfig::default())
                    .unwrap()
                    .integrated_cost,
            )
        })
        .collect();

    assert!((loglog_slope(&quantum) - 0.5).abs() <= 0.05);
    assert!((loglog_slope(&coin) - 1.0).abs() <= 0.05);
    assert!((loglog_slope(&wave) - 0.5).abs() <= 0.05);
    assert!((loglog_slope(&direct) - 1.0).abs() <= 0.02);
}

#[test]
fn compare_is_deterministic_and_seed_sensitive() {
    let config = CompareConfig {
        seed: 5,
        trials: 1_000,
        ..CompareConfig::default()
    };
    let a = compare(&[4, 16, 64], &config).unwrap();
    let b = compare(&[4, 16, 64], &config).unwrap();
    assert_eq!(
        render_table(&a, Format::Json).unwrap(),
        render_table(&b, Format::Json).unwrap()
    );
    let coin_a = a
        .iter()
        .find(|r| r.n == 64 && r.device_kind == DeviceKind::ClassicalCoin)
        .unwrap();
    let other = compare(&[4, 16, 64], &CompareConfig { seed: 6, ..config }).unwrap();
    let coin_b = other
        .iter()
        .find(|r| r.n == 64 && r.device_kind == DeviceKind::ClassicalCoin)
        .unwrap();
    assert_ne!(coin_a.transits, coin_b.transits);
}

//! Cross-module property tests: register invariants, oracle identities,
//! determinism, and statistical-function laws.

use ebcm_core::dlm::DlmState;
use ebcm_core::*;
use proptest::collection::vec;
use proptest::prelude::*;

fn port() -> impl Strategy<Value = Port> {
    prop_oneof![Just(Port::Zero), Just(Port::One)]
}

fn tag() -> impl Strategy<Value = Tag> {
    prop_oneof![Just(Tag::Data), Just(Tag::Reset)]
}

fn message() -> impl Strategy<Value = Message> {
    (-10.0f64..10.0, tag(), port()).prop_map(|(phase, tag, port)| Message::new(phase, tag, port))
}

fn gamma() -> impl Strategy<Value = f64> {
    0.0f64..0.9999
}

/// Random runnable schedule: arbitrary blocks plus one guaranteed data
/// block so the validity invariant holds by construction.
fn runnable_schedule() -> impl Strategy<Value = Schedule> {
    let block = prop_oneof![
        (1u64..50, port()).prop_map(|(count, port)| Block::Data { count, port }),
        (
            1u64..50,
            port(),
            prop_oneof![
                Just(PhasePolicy::UniformRandom),
                (-7.0f64..7.0).prop_map(PhasePolicy::Fixed),
            ]
        )
            .prop_map(|(count, port, phase)| Block::Reset { count, port, phase }),
        prop_oneof![
            Just(ResetScope::All),
            Just(ResetScope::Bs1),
            Just(ResetScope::Bs2)
        ]
        .prop_map(|scope| Block::HwReset { scope }),
    ];
    (vec(block, 0..6), 1u64..50, 0usize..6).prop_map(|(mut blocks, count, at)| {
        let at = at.min(blocks.len());
        blocks.insert(at, Block::data(count));
        Schedule::new(blocks)
    })
}

proptest! {
    #[test]
    fn registers_stay_normalized_under_any_update_sequence(
        g in gamma(),
        msgs in vec(message(), 0..120),
    ) {
        let mut dlm = DlmState::new(g).unwrap();
        for msg in &msgs {
            dlm.update(msg);
            let (x0, x1) = dlm.x();
            prop_assert!((x0 + x1 - 1.0).abs() <= 1e-12);
            prop_assert!((0.0..=1.0).contains(&x0));
            prop_assert!((0.0..=1.0).contains(&x1));
            let (y0, y1) = dlm.y();
            prop_assert!((y0.norm() - 1.0).abs() <= 1e-12);
            prop_assert!((y1.norm() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn amplitudes_conserve_weight(
        g in gamma(),
        msgs in vec(message(), 0..120),
    ) {
        let mut dlm = DlmState::new(g).unwrap();
        for msg in &msgs {
            dlm.update(msg);
        }
        prop_assert!((dlm.amplitudes().weight() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn repeated_updates_follow_the_geometric_closed_form(
        g in gamma(),
        p in port(),
        k in 1usize..300,
    ) {
        let mut dlm = DlmState::new(g).unwrap();
        let msg = Message::new(0.0, Tag::Data, p);
        for _ in 0..k {
            dlm.update(&msg);
        }
        let expected = 1.0 - g.powi(k as i32) * 0.5;
        let x = match p {
            Port::Zero => dlm.x().0,
            Port::One => dlm.x().1,
        };
        prop_assert!((x - expected).abs() <= 1e-10, "x = {x}, expected = {expected}");
    }

    #[test]
    fn oracle_probabilities_are_normalized(
        phi0 in -10.0f64..10.0,
        phi1 in -10.0f64..10.0,
    ) {
        let p = mzi_probabilities(phi0, phi1);
        prop_assert!((p.p0 + p.p1 - 1.0).abs() <= 1e-12);
        prop_assert!((0.0..=1.0).contains(&p.p0));
        prop_assert!((0.0..=1.0).contains(&p.p1));
    }

    #[test]
    fn oracle_depends_only_on_the_phase_difference(
        phi0 in -8.0f64..8.0,
        phi1 in -8.0f64..8.0,
        c in -8.0f64..8.0,
    ) {
        let a = mzi_probabilities(phi0, phi1);
        let b = mzi_probabilities(phi0 + c, phi1 + c);
        prop_assert!((a.p0 - b.p0).abs() <= 1e-12);
        prop_assert!((a.p1 - b.p1).abs() <= 1e-12);
    }

    #[test]
    fn oracle_offset_invariance_is_exact_on_exact_sums(
        phi0 in -1000i32..1000,
        phi1 in -1000i32..1000,
        c in -1000i32..1000,
    ) {
        // Integer-valued phases make the additions exact, so the two
        // calls see bit-identical phase differences.
        let a = mzi_probabilities(phi0 as f64, phi1 as f64);
        let b = mzi_probabilities(phi0 as f64 + c as f64, phi1 as f64 + c as f64);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn oracle_is_periodic(phi0 in -8.0f64..8.0, phi1 in -8.0f64..8.0) {
        let a = mzi_probabilities(phi0, phi1);
        let b = mzi_probabilities(phi0 + core::f64::consts::TAU, phi1);
        prop_assert!((a.p0 - b.p0).abs() <= 1e-12);
    }

    #[test]
    fn runs_reproduce_bit_for_bit(
        schedule in runnable_schedule(),
        g in gamma(),
        phi0 in -7.0f64..7.0,
        phi1 in -7.0f64..7.0,
        seed in any::<u64>(),
    ) {
        let config = RunConfig::new(g, phi0, phi1, seed).with_clicks();
        let a = run_schedule(&config, &schedule).unwrap();
        let b = run_schedule(&config, &schedule).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn prediction_ignores_partitioning_and_resets(
        parts in vec(1u64..2000, 1..12),
        resets in vec(1u64..500, 0..12),
        phi0 in -7.0f64..7.0,
        phi1 in -7.0f64..7.0,
    ) {
        let total: u64 = parts.iter().sum();
        let whole = Schedule::new(vec![Block::data(total)]);

        let mut blocks = Vec::new();
        let mut resets = resets.into_iter();
        for &n in &parts {
            blocks.push(Block::data(n));
            if let Some(r) = resets.next() {
                blocks.push(Block::reset(r));
            }
        }
        let split = Schedule::new(blocks);

        let a = aggregate_prediction(&whole, phi0, phi1).unwrap();
        let b = aggregate_prediction(&split, phi0, phi1).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn transient_length_is_monotone_in_eps(
        raw in vec(prop_oneof![Just(Detector::D0), Just(Detector::D1)], 60..400),
        window in 10usize..50,
        p0 in 0.0f64..1.0,
        eps_lo in 0.01f64..0.5,
        extra in 0.0f64..0.5,
    ) {
        let eps_hi = eps_lo + extra;
        let rank = |outcome: TransientOutcome| match outcome {
            TransientOutcome::Converged(t) => t,
            TransientOutcome::NotConverged => usize::MAX,
        };
        let tight = rank(transient_length(&raw, p0, window, eps_lo).unwrap());
        let loose = rank(transient_length(&raw, p0, window, eps_hi).unwrap());
        prop_assert!(loose <= tight);
    }

    #[test]
    fn two_sample_test_is_symmetric(
        a0 in 0u64..1_000_000,
        a1 in 0u64..1_000_000,
        b0 in 0u64..1_000_000,
        b1 in 0u64..1_000_000,
    ) {
        prop_assume!(a0 + a1 > 0 && b0 + b1 > 0);
        let ab = compare_runs((a0, a1), (b0, b1)).unwrap();
        let ba = compare_runs((b0, b1), (a0, a1)).unwrap();
        prop_assert_eq!(ab, ba);
        prop_assert!((0.0..=1.0).contains(&ab.p_value));
    }

    #[test]
    fn z_is_exactly_zero_at_an_integral_mean(j in 1u64..256, m in 1u64..40) {
        // p = j/256 is dyadic and n = 256·m, so n·p = j·m is exact.
        let p = j as f64 / 256.0;
        let n = 256 * m;
        prop_assert_eq!(z_score(j * m, n, p).unwrap(), ZScore::Value(0.0));
    }

    #[test]
    fn reset_plus_reseed_equals_a_fresh_machine(
        seed in any::<u64>(),
        warmup in 1u64..300,
    ) {
        let msg = Message::new(0.0, Tag::Data, Port::Zero);

        let mut fresh = MziState::new(0.99, 0.0, 0.0, seed).unwrap();
        let expected: Vec<Detector> = (0..100).map(|_| fresh.step(&msg).detector).collect();

        let mut recycled = MziState::new(0.99, 0.0, 0.0, seed).unwrap();
        for _ in 0..warmup {
            recycled.step(&msg);
        }
        recycled.reset_hard(ResetScope::All);
        recycled.reseed(seed);
        let replay: Vec<Detector> = (0..100).map(|_| recycled.step(&msg).detector).collect();

        prop_assert_eq!(expected, replay);
    }
}

mod common;

use influence_core::checkerboard::{path_weight, reversal_count, Amplitude, PropagatorPair, Weighting};
use influence_core::kinematics::{
    energy_momentum, enumerate_orderings, kinematic_state, net_displacement, sequence_to_path, transform_energy_momentum,
    transform_rates, InfluenceSequence, Move, UnorderedInfluenceCount,
};
use influence_core::quantify::{
    chain_length, distance, interval_pair, interval_scalar, pair_transform, to_spacetime, ChainValuation, Frame,
    IntervalPair, LinearRelation,
};
use influence_core::scalar::{int, ratio, Rational};
use influence_core::{ChainId, EventId, Surd};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=60, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn causal_order_is_a_partial_order(seed in any::<u64>()) {
        let generated = common::random_valid_poset(seed, 12);
        let poset = generated.build();
        prop_assert!(poset.validate().ok());
        let ids: Vec<EventId> = poset.events().map(|(e, _)| e.clone()).collect();
        let leq = |a: &EventId, b: &EventId| poset.causal_leq(a, b).unwrap();
        for x in &ids {
            prop_assert!(leq(x, x));
            for y in &ids {
                if x != y {
                    prop_assert!(!(leq(x, y) && leq(y, x)));
                }
                for z in &ids {
                    if leq(x, y) && leq(y, z) {
                        prop_assert!(leq(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn reversal_gives_the_dual_order(seed in any::<u64>()) {
        let poset = common::random_valid_poset(seed, 12).build();
        let dual = poset.reversed();
        prop_assert!(dual.validate().ok());
        let ids: Vec<EventId> = poset.events().map(|(e, _)| e.clone()).collect();
        for x in &ids {
            for y in &ids {
                prop_assert_eq!(poset.causal_leq(x, y).unwrap(), dual.causal_leq(y, x).unwrap());
            }
        }
        prop_assert_eq!(dual.reversed(), poset);
    }

    #[test]
    fn topological_sort_tracks_acyclicity(seed in any::<u64>()) {
        let generated = common::random_valid_poset(seed, 12);
        let poset = generated.build();
        let order = poset.topological_sort().unwrap();
        let pos = |e: &EventId| order.iter().position(|o| *o == e).unwrap();
        for (a, b) in poset.influence_edges() {
            prop_assert!(pos(a) < pos(b));
        }
        if let Some(cyclic) = common::with_cycle(generated) {
            let cyclic = cyclic.build();
            prop_assert!(!cyclic.validate().ok());
            prop_assert!(cyclic.topological_sort().is_err());
        }
    }

    #[test]
    fn chain_length_is_additive(len in 3usize..20, picks in prop::collection::vec(0usize..1000, 3), mu in positive_rational()) {
        let poset = common::coordinated_pair(len, 1);
        let v = ChainValuation::new(&poset, &ChainId::from("p"), mu).unwrap();
        let mut k: Vec<usize> = picks.iter().map(|p| p % len).collect();
        k.sort();
        let (a, b, c) = (v.member(k[0]).unwrap().clone(), v.member(k[1]).unwrap().clone(), v.member(k[2]).unwrap().clone());
        let ab = chain_length(&v, &a, &b).unwrap();
        let bc = chain_length(&v, &b, &c).unwrap();
        prop_assert_eq!(chain_length(&v, &a, &c).unwrap(), ab + bc);
    }

    #[test]
    fn scalar_is_homogeneous(dp in rational(), dq in rational(), c in rational()) {
        let base = interval_scalar(&IntervalPair::coordinated(dp.clone(), dq.clone())).value;
        let scaled = interval_scalar(&IntervalPair::coordinated(&c * dp, &c * dq)).value;
        prop_assert_eq!(scaled, &c * &c * base);
    }

    #[test]
    fn pair_transform_preserves_scalar_and_class(dp in rational(), dq in rational(), m in positive_rational(), n in positive_rational()) {
        let pair = IntervalPair::coordinated(dp, dq);
        let rel = LinearRelation::new(m, n).unwrap();
        let moved = pair_transform(&pair, &rel).unwrap();
        let before = interval_scalar(&pair);
        let after = interval_scalar(&moved);
        prop_assert_eq!(after.value, Surd::from(before.value));
        prop_assert_eq!(after.class, before.class);
    }

    #[test]
    fn spacetime_round_trip(dp in rational(), dq in rational()) {
        let pair = IntervalPair::coordinated(dp, dq);
        let st = to_spacetime(&pair);
        prop_assert_eq!(&st.dt + &st.dx, pair.dp.clone());
        prop_assert_eq!(&st.dt - &st.dx, pair.dq.clone());
        prop_assert_eq!(st.to_pair(), pair);
    }

    #[test]
    fn energy_momentum_identity(rp in positive_rational(), rq in positive_rational()) {
        let s = kinematic_state(&rp, &rq).unwrap();
        let lhs = s.mass.clone() * s.mass.clone();
        let rhs = &s.energy * &s.energy - &s.momentum * &s.momentum;
        prop_assert_eq!(lhs, Surd::from(rhs.clone()));
        prop_assert_eq!(s.mass_squared(), rhs);
    }

    #[test]
    fn rate_and_energy_transforms_commute(rp in positive_rational(), rq in positive_rational(), m in positive_rational(), n in positive_rational()) {
        let rel = LinearRelation::new(m, n).unwrap();
        let (rp2, rq2) = transform_rates(rp.clone(), rq.clone(), &rel).unwrap();
        let via_rates = energy_momentum(&rp2, &rq2);
        let (e, p) = energy_momentum(&rp, &rq);
        let via_state = transform_energy_momentum(e, p, &rel).unwrap();
        prop_assert_eq!(&via_rates, &via_state);
        prop_assert!((via_rates.0.to_f64() - via_state.0.to_f64()).abs() <= 1e-12 * (1.0 + via_state.0.to_f64().abs()));
    }

    #[test]
    fn orderings_share_endpoints(p in 0u64..6, q in 0u64..6) {
        let counts = UnorderedInfluenceCount::new(p, q);
        let expected = net_displacement(counts);
        for seq in enumerate_orderings(counts).unwrap() {
            let path = sequence_to_path(&seq, (int(0), int(0)));
            prop_assert_eq!(path.endpoint(), &expected);
            for (t, x) in &path.points {
                prop_assert!((t + x).is_integer());
            }
        }
    }

    #[test]
    fn reversal_law(moves in prop::collection::vec(any::<bool>(), 0..40), start in any::<bool>()) {
        let mv = |b: bool| if b { Move::P } else { Move::Q };
        let seq = InfluenceSequence::new(moves.iter().copied().map(mv).collect()).with_helicity(mv(start));
        let r = reversal_count(&seq).unwrap();
        prop_assert!(r <= seq.len());
        let w = path_weight(&seq, &Weighting::Derived(PropagatorPair::zero_momentum())).unwrap();
        let phase = [Amplitude::ONE, Amplitude::I, Amplitude::new(-1.0, 0.0), Amplitude::new(0.0, -1.0)][r % 4];
        let expected = phase.scale(std::f64::consts::FRAC_1_SQRT_2.powi(seq.len() as i32));
        prop_assert!(w.weight.max_diff(expected) <= 1e-15);
    }
}

#[test]
fn distance_does_not_depend_on_endpoints() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for d in 1..=3usize {
        let len = 30;
        let poset = common::coordinated_pair(len, d);
        let p = ChainValuation::natural(&poset, &ChainId::from("p")).unwrap();
        let q = ChainValuation::natural(&poset, &ChainId::from("q")).unwrap();
        for _ in 0..100 {
            let i = rng.random_range(1..=len - d);
            let j = rng.random_range(1..=len - d);
            let a = EventId::from(format!("p{i}"));
            let b = EventId::from(format!("q{j}"));
            let pair = interval_pair(&poset, &a, &b, Frame::Coordinated(&p, &q)).unwrap();
            assert_eq!(distance(&pair).unwrap(), int(d as i64));
        }
    }
}

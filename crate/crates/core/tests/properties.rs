use proptest::prelude::*;

use boolecode::boolfn::BooleanFunction;
use boolecode::schemes::{
    outer_bound, security_threshold, CodedScheme, LinearScheme, SchemeKind, Threshold, ThresholdParams,
};
use boolecode::simulator::{run_trial, AdversaryModel, Strategy as Attack};

fn function() -> impl Strategy<Value = BooleanFunction> {
    (1usize..=5).prop_flat_map(|m| {
        proptest::collection::vec(any::<bool>(), 1 << m)
            .prop_map(move |t| BooleanFunction::from_fn(m, |x| t[x]).unwrap())
    })
}

fn adversary() -> impl Strategy<Value = Attack> {
    prop_oneof![
        Just(Attack::RandomReplace),
        Just(Attack::AdditiveOffset),
        Just(Attack::CodewordTargeted),
        Just(Attack::Erase),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn thresholds_never_exceed_outer_bound(
        k in 1usize..10, extra in 0usize..60, w in 1usize..200, deg in 1usize..10, q in 1usize..5, d_pick in 0usize..200,
    ) {
        let n = k + extra;
        let p = ThresholdParams { weight: Some(w), degree: Some(deg), d: Some(1 + d_pick % w), q: Some(q), ..ThresholdParams::new(n, k) };
        for kind in SchemeKind::ALL {
            let t = security_threshold(kind, &p).unwrap();
            prop_assert!(t.beta <= outer_bound(n, k));
        }
    }

    #[test]
    fn threshold_monotone(n in 1usize..200, k in 1usize..20, deg in 0usize..20) {
        prop_assume!(k <= n);
        let t = Threshold::from_degree(n, k, deg);
        prop_assert!(Threshold::from_degree(n + 1, k, deg).beta >= t.beta);
        prop_assert!(Threshold::from_degree(n, k, deg + 1).beta <= t.beta);
    }

    #[test]
    fn dptf_threshold_grows_with_partitions(n in 1usize..200, k in 1usize..20, w in 1usize..300) {
        prop_assume!(k <= n);
        let at = |d| security_threshold(SchemeKind::DPtf, &ThresholdParams { weight: Some(w), d: Some(d), ..ThresholdParams::new(n, k) }).unwrap().beta;
        for d in 1..w.min(40) {
            prop_assert!(at(d) <= at(d + 1));
        }
    }

    #[test]
    fn linear_schemes_survive_beta_adversaries(
        f in function(), k in 1usize..4, extra in 0usize..6, strategy in adversary(), seed in any::<u64>(), dnf in any::<bool>(),
    ) {
        let n = k + extra;
        let s = if dnf { LinearScheme::dnf(&f, n, k, None) } else { LinearScheme::anf(&f, n, k, None) }.unwrap();
        let beta = s.threshold().beta;
        let o = run_trial(&s, &AdversaryModel { count: beta, strategy, seed }).unwrap();
        prop_assert!(o.success, "{:?}", o);
        prop_assert_eq!(o.adversaries.len(), beta);
        prop_assert!(o.adversaries.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn trials_are_deterministic(f in function(), seed in any::<u64>(), b in 0usize..5, strategy in adversary()) {
        let s = LinearScheme::dnf(&f, 8, 3, None).unwrap();
        let adv = AdversaryModel { count: b, strategy, seed };
        prop_assert_eq!(run_trial(&s, &adv).unwrap(), run_trial(&s, &adv).unwrap());
    }
}

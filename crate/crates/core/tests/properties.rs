use proptest::prelude::*;

use ordcalc::sampler::{sample_restriction, strict_order_violation};
use ordcalc::{attrs, parse, CnfOrdinal, FinPoset, OrderTerm};

fn ordinal() -> impl Strategy<Value = CnfOrdinal> {
    let leaf = (0u64..5).prop_map(CnfOrdinal::finite);
    leaf.prop_recursive(2, 12, 3, |inner| {
        prop::collection::vec((inner, 1u64..4), 1..4).prop_map(|ms| {
            ms.into_iter().fold(CnfOrdinal::zero(), |acc, (e, c)| {
                acc.nat_sum(&CnfOrdinal::monomial(e, c))
            })
        })
    })
}

fn poset() -> impl Strategy<Value = FinPoset> {
    (0usize..7)
        .prop_flat_map(|n| {
            let pairs = prop::collection::vec((0..n.max(1), 0..n.max(1)), 0..10);
            (Just(n), pairs, any::<bool>())
        })
        .prop_map(|(n, raw, flip)| {
            let pairs: Vec<(usize, usize)> = raw.into_iter().filter(|(a, b)| a < b).collect();
            let p = FinPoset::from_relations(n, &pairs).expect("acyclic");
            if flip {
                p.inverse()
            } else {
                p
            }
        })
}

fn term_source() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("w".to_string()),
        Just("w*".to_string()),
        Just("k".to_string()),
        Just("k*".to_string()),
        Just("Q".to_string()),
        Just("Qk".to_string()),
        Just("ac(2)".to_string()),
        Just("ac(w)".to_string()),
        (1u64..4).prop_map(|n| n.to_string()),
        Just("ord(w^2+1)".to_string()),
    ];
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| format!("inv({t})")),
            (inner.clone(), inner.clone()).prop_map(|(i, b)| format!("sum({i}, {b})")),
            (inner.clone(), inner.clone(), inner)
                .prop_map(|(a, b, c)| format!("lsum(fin(3; 0<1); {a}, {b}, {c})")),
        ]
    })
}

fn term() -> impl Strategy<Value = OrderTerm> {
    term_source().prop_filter_map("valid term", |s| parse(&s).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn natural_sum_commutes_and_associates(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(a.nat_sum(&b), b.nat_sum(&a));
        prop_assert_eq!(a.nat_sum(&b).nat_sum(&c), a.nat_sum(&b.nat_sum(&c)));
        prop_assert_eq!(a.nat_prod(&b), b.nat_prod(&a));
    }

    #[test]
    fn standard_sum_associates_and_is_dominated(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(a.std_add(&b).std_add(&c), a.std_add(&b.std_add(&c)));
        let s = a.std_add(&b);
        prop_assert!(a <= s && b <= s);
        prop_assert!(s <= a.nat_sum(&b));
        prop_assert_eq!(s.left_sub(&a), Some(b.clone()));
    }

    #[test]
    fn ordinal_text_round_trips(a in ordinal()) {
        let back: CnfOrdinal = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn successor_and_limit(a in ordinal()) {
        let s = a.succ();
        prop_assert!(s > a && s.is_successor() && !s.is_limit());
    }

    #[test]
    fn poset_inverse_and_rank(p in poset()) {
        prop_assert!(p.is_valid());
        prop_assert_eq!(p.inverse().inverse(), p.clone());
        let r = p.antichain_rank_exact();
        prop_assert_eq!(p.inverse().antichain_rank_exact(), r.clone());
        prop_assert!(r >= CnfOrdinal::finite(p.width() as u64));
        let n = p.len();
        for mask in 0u64..(1 << n) {
            prop_assert!(p.restrict_mask(mask).antichain_rank_exact() <= r);
        }
    }

    #[test]
    fn linear_extensions_are_linear_augmentations(p in poset()) {
        for e in p.linear_extensions().take(50) {
            prop_assert!(e.is_linear() && e.is_augmentation_of(&p));
        }
    }

    #[test]
    fn term_text_round_trips(t in term()) {
        let back = parse(&t.to_string()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn inversion_swaps_ends(t in term()) {
        let r = attrs(&t).unwrap();
        let ri = attrs(&OrderTerm::inv(t.clone())).unwrap();
        prop_assert_eq!(r.card, ri.card);
        prop_assert_eq!(r.linear, ri.linear);
        prop_assert_eq!(r.fac, ri.fac);
        prop_assert_eq!(r.wf_omega, ri.cowf_omega);
        prop_assert_eq!(r.cowf_kappa, ri.wf_kappa);
        prop_assert_eq!(r.has_first, ri.has_last);
        prop_assert_eq!(r.min_upset, ri.min_downset);
        prop_assert_eq!(attrs(&OrderTerm::inv(OrderTerm::inv(t.clone()))).unwrap(), r);
    }

    #[test]
    fn samples_are_strict_and_reproducible(t in term(), seed in 0u64..1000) {
        let s = sample_restriction(&t, 10, seed).unwrap();
        prop_assert!(strict_order_violation(&t, &s.addresses).unwrap().is_none());
        prop_assert!(s.poset.is_valid());
        if attrs(&t).unwrap().linear {
            prop_assert!(s.poset.is_linear());
        }
        let again = sample_restriction(&t, 10, seed).unwrap();
        prop_assert_eq!(again.addresses, s.addresses);
    }
}

//! Randomized structural invariants: digit arithmetic round-trips, the
//! odometer's algebraic laws, canonical forms, idempotent products, and the
//! rotation on level functions.

use num_complex::Complex64;
use odometer_core::{
    converges_to, cylinder_measure, multiply, odometer_inverse, odometer_partial, odometer_total,
    prefix_increment, step_x, v_k_neighborhood, BasicIdempotent, CantorPoint, DigitWord, Error,
    LevelFunction, RadixSchedule, Tail, XPoint,
};
use proptest::prelude::*;

fn schedules() -> impl Strategy<Value = RadixSchedule> {
    (proptest::collection::vec(2u32..=6, 1..=4), any::<bool>()).prop_map(|(radices, cyclic)| {
        if cyclic {
            RadixSchedule::cycle(radices).unwrap()
        } else {
            RadixSchedule::repeat_last(radices).unwrap()
        }
    })
}

fn points_over(schedule: RadixSchedule) -> impl Strategy<Value = CantorPoint> {
    (proptest::collection::vec(any::<u32>(), 0..=8), any::<bool>()).prop_map(
        move |(raw, max_tail)| {
            let digits = raw
                .iter()
                .enumerate()
                .map(|(j, &r)| r % schedule.radix(j))
                .collect();
            let word = DigitWord::new(digits, &schedule).unwrap();
            CantorPoint::new(word, if max_tail { Tail::Max } else { Tail::Zeros })
        },
    )
}

fn cantor_points() -> impl Strategy<Value = CantorPoint> {
    schedules().prop_flat_map(points_over)
}

fn point_pairs() -> impl Strategy<Value = (CantorPoint, CantorPoint)> {
    schedules().prop_flat_map(|s| (points_over(s.clone()), points_over(s)))
}

fn x_points() -> impl Strategy<Value = XPoint> {
    prop_oneof![
        (0u64..1_000_000).prop_map(XPoint::Nat),
        cantor_points().prop_map(XPoint::Cantor),
    ]
}

fn words_over(schedule: RadixSchedule) -> impl Strategy<Value = DigitWord> {
    (0usize..=5, any::<u64>()).prop_map(move |(k, seed)| {
        let size = schedule.level_size(k).unwrap();
        DigitWord::from_value(seed % size, k, &schedule).unwrap()
    })
}

fn words() -> impl Strategy<Value = DigitWord> {
    schedules().prop_flat_map(words_over)
}

fn idempotents_over(schedule: RadixSchedule) -> impl Strategy<Value = BasicIdempotent> {
    let word = words_over(schedule);
    prop_oneof![
        proptest::collection::btree_set(0u64..100, 0..6)
            .prop_map(BasicIdempotent::finite),
        (
            word,
            proptest::collection::btree_set(0u64..60, 0..5),
            proptest::collection::btree_set(0u64..60, 0..5),
        )
            .prop_map(|(beta, add, remove)| {
                BasicIdempotent::modified_cylinder(beta, add, remove).unwrap()
            }),
    ]
}

fn idempotent_pairs() -> impl Strategy<Value = (BasicIdempotent, BasicIdempotent)> {
    schedules().prop_flat_map(|s| (idempotents_over(s.clone()), idempotents_over(s)))
}

fn level_functions() -> impl Strategy<Value = LevelFunction> {
    (schedules(), 0usize..=3).prop_flat_map(|(schedule, k)| {
        let size = schedule.level_size(k).unwrap() as usize;
        proptest::collection::vec((any::<i32>(), any::<i32>()), size).prop_map(move |entries| {
            let values = entries
                .iter()
                .map(|&(re, im)| Complex64::new(re as f64, im as f64))
                .collect();
            LevelFunction::new(&schedule, k, values).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn digit_value_roundtrip(word in words()) {
        let v = word.value().unwrap();
        let again = DigitWord::from_value(v, word.len(), word.schedule()).unwrap();
        prop_assert_eq!(again, word);
    }

    #[test]
    fn value_prefixes_cohere(word in words()) {
        // The first k digits of any longer word encode its value mod n_k.
        let v = word.value().unwrap();
        for k in 0..=word.len() {
            let prefix = DigitWord::new(word.digits()[..k].to_vec(), word.schedule()).unwrap();
            let size = word.schedule().level_size(k).unwrap();
            prop_assert_eq!(prefix.value().unwrap(), v % size);
        }
    }

    #[test]
    fn canonicalization_is_idempotent(p in cantor_points()) {
        let again = CantorPoint::new(p.prefix().clone(), p.tail());
        prop_assert_eq!(again, p);
    }

    #[test]
    fn equality_is_digitwise_agreement((p, q) in point_pairs()) {
        // Prefixes are at most 8 digits, so 64 digits decide equality.
        let same_digits = (0..64).all(|j| p.digit(j) == q.digit(j));
        prop_assert_eq!(p == q, same_digits);
    }

    #[test]
    fn truncating_the_stepped_point_increments_the_prefix(
        p in cantor_points(),
        k in 0usize..=6,
    ) {
        let stepped = odometer_total(&p);
        prop_assert_eq!(
            stepped.truncate(k),
            prefix_increment(&p.truncate(k)).unwrap()
        );
    }

    #[test]
    fn inverse_undoes_the_odometer(p in cantor_points()) {
        prop_assert_eq!(odometer_inverse(&odometer_total(&p)), p.clone());
        prop_assert_eq!(odometer_total(&odometer_inverse(&p)), p);
    }

    #[test]
    fn partial_map_agrees_with_total_away_from_all_max(p in cantor_points()) {
        if p.is_all_max() {
            prop_assert_eq!(odometer_partial(&p), Err(Error::OdometerDomain));
        } else {
            prop_assert_eq!(odometer_partial(&p).unwrap(), odometer_total(&p));
        }
    }

    #[test]
    fn step_is_the_successor_and_never_reaches_zero(x in x_points()) {
        let next = step_x(&x).unwrap();
        prop_assert_ne!(&next, &XPoint::Nat(0));
        if let (XPoint::Nat(n), XPoint::Nat(m)) = (&x, &next) {
            prop_assert_eq!(*m, n + 1);
        }
    }

    #[test]
    fn cylinder_measure_is_the_reciprocal_level_size(word in words()) {
        let measure = cylinder_measure(&word).unwrap();
        prop_assert_eq!(*measure.numer(), 1);
        prop_assert_eq!(*measure.denom(), word.level_size().unwrap());
    }

    #[test]
    fn product_is_pointwise_and_commutative((p, q) in idempotent_pairs()) {
        let pq = multiply(&p, &q).unwrap();
        let qp = multiply(&q, &p).unwrap();
        prop_assert_eq!(&pq, &qp);
        for n in 0..200u64 {
            prop_assert_eq!(
                pq.contains_nat(n),
                p.contains_nat(n) && q.contains_nat(n),
                "at n = {}", n
            );
        }
        if let (
            BasicIdempotent::ModifiedCylinder { beta: bp, .. },
            BasicIdempotent::ModifiedCylinder { beta: bq, .. },
        ) = (&p, &q)
        {
            for word in [bp, bq] {
                for tail in [Tail::Zeros, Tail::Max] {
                    let sample = CantorPoint::new((*word).clone(), tail);
                    prop_assert_eq!(
                        pq.contains_cantor(&sample),
                        p.contains_cantor(&sample) && q.contains_cantor(&sample)
                    );
                }
            }
        }
    }

    #[test]
    fn product_stays_canonical_and_squares_fix((p, q) in idempotent_pairs()) {
        if let BasicIdempotent::ModifiedCylinder { beta, add, remove } = multiply(&p, &q).unwrap() {
            let size = beta.level_size().unwrap();
            let residue = beta.value().unwrap();
            prop_assert!(add.iter().all(|&n| n % size != residue));
            prop_assert!(remove.iter().all(|&n| n % size == residue));
        }
        prop_assert_eq!(multiply(&p, &p).unwrap(), p);
    }

    #[test]
    fn neighborhoods_nest_and_contain_their_center(
        gamma in cantor_points(),
        k in 0usize..4,
        n in 0u64..500,
    ) {
        let coarse = v_k_neighborhood(&gamma, k).unwrap();
        let fine = v_k_neighborhood(&gamma, k + 1).unwrap();
        let x = XPoint::Nat(n);
        if fine.contains(&x) {
            prop_assert!(coarse.contains(&x));
        }
        prop_assert!(coarse.contains(&XPoint::Cantor(gamma.clone())));
    }

    #[test]
    fn convergent_prefixes_extend(gamma in cantor_points(), k_max in 0usize..=4) {
        // The sequence of truncation values converges to the point it came
        // from: entry m is value(gamma | m), padded to stay nonempty.
        let schedule = gamma.schedule().clone();
        let seq: Vec<u64> = (0..=k_max + 2)
            .map(|m| {
                let word = gamma.truncate(m);
                word.value().unwrap() + schedule.level_size(m).unwrap() * (m as u64)
            })
            .collect();
        // Adding multiples of n_m keeps entry m in V_m while pushing it past
        // the n >= k floor.
        prop_assert!(converges_to(&seq, &gamma, k_max).unwrap());
    }

    #[test]
    fn rotation_commutes_with_refinement(f in level_functions(), extra in 0usize..=2) {
        let fine = f.level() + extra;
        prop_assert_eq!(
            f.induced_automorphism().refine(fine).unwrap(),
            f.refine(fine).unwrap().induced_automorphism()
        );
    }

    #[test]
    fn rotation_has_full_order(f in level_functions()) {
        let n = f.values().len();
        let mut g = f.clone();
        for _ in 0..n {
            g = g.induced_automorphism();
        }
        prop_assert_eq!(g, f);
    }
}

use caratheodory::finite_oracle::{self, FiniteSpace};
use caratheodory::interval_algebra::{self, normalize, AlgebraElement, Interval};
use caratheodory::limit_points::{
    approx, countable_union, distance_between, embed, limit_complement, limit_intersect, limit_union,
    measure_with_error, MeasurableSet,
};
use caratheodory::set_dsl::builtins::{cantor3, dyadic_piece, dyadic_tail_bound, dyadictail, fatcantor};
use caratheodory::set_dsl::{eval_expr, parse, Builtin, SetExpr};
use caratheodory::Rat;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_element() -> impl Strategy<Value = AlgebraElement> {
    (1i64..=64, prop::collection::vec((0i64..=64, 0i64..=64), 0..=6)).prop_map(|(q, raw)| {
        let ivs = raw
            .into_iter()
            .map(|(a, b)| {
                let (a, b) = (a % (q + 1), b % (q + 1));
                Interval::new(Rat::new(a, q), Rat::new(b, q)).unwrap()
            })
            .collect();
        normalize(ivs).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn operations_stay_canonical(a in arb_element(), b in arb_element()) {
        for out in [a.union(&b), a.intersect(&b), a.complement(), a.sym_diff(&b)] {
            prop_assert!(out.is_canonical());
        }
        prop_assert_eq!(normalize(a.intervals().to_vec()).unwrap(), a);
    }

    #[test]
    fn text_form_round_trips(a in arb_element()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<AlgebraElement>().unwrap(), a);
    }
}

proptest! {
    #[test]
    fn pseudometric_axioms(a in arb_element(), b in arb_element(), c in arb_element()) {
        let d = interval_algebra::distance;
        prop_assert!(d(&a, &a).is_zero());
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
    }

    #[test]
    fn union_bound(a1 in arb_element(), a2 in arb_element(), a3 in arb_element(), a4 in arb_element()) {
        let d = interval_algebra::distance;
        prop_assert!(d(&a1.union(&a2), &a3.union(&a4)) <= d(&a1, &a3) + d(&a2, &a4));
    }

    #[test]
    fn complement_is_an_isometry(a in arb_element(), b in arb_element()) {
        prop_assert_eq!(a.complement().distance(&b.complement()), a.distance(&b));
    }

    #[test]
    fn premeasure_is_additive(a in arb_element(), b in arb_element()) {
        let rest = b.intersect(&a.complement());
        prop_assert_eq!(a.union(&rest).premeasure(), a.premeasure() + rest.premeasure());
    }

    #[test]
    fn zero_distance_means_equal(a in arb_element(), b in arb_element()) {
        prop_assert_eq!(a.distance(&b).is_zero(), a == b);
    }
}

fn grid() -> Vec<Rat> {
    [1, 3, 6, 10].iter().map(|&k| Rat::pow2_neg(k)).collect()
}

fn assert_self_consistent(name: &str, s: &MeasurableSet) {
    let eps = grid();
    let approximants: Vec<AlgebraElement> = eps.iter().map(|e| approx(s, e).unwrap()).collect();
    for i in 0..eps.len() {
        for j in i + 1..eps.len() {
            let d = approximants[i].distance(&approximants[j]);
            assert!(d <= &eps[i] + &eps[j], "{name}: d(B({}), B({})) = {d}", eps[i], eps[j]);
        }
    }
}

#[test]
fn oracles_are_self_consistent() {
    let a: AlgebraElement = "1/8,1/4 1/2,3/4".parse().unwrap();
    let cases: Vec<(&str, MeasurableSet)> = vec![
        ("embed", embed(a.clone())),
        ("cantor3", cantor3()),
        ("fatcantor", fatcantor()),
        ("dyadictail", dyadictail()),
        ("union", limit_union(&fatcantor(), &embed(a.clone()))),
        ("complement", limit_complement(&fatcantor())),
        ("intersect", limit_intersect(&dyadictail(), &fatcantor())),
        (
            "countable",
            countable_union(
                |i| {
                    if i % 2 == 0 {
                        fatcantor()
                    } else {
                        embed(dyadic_piece(i))
                    }
                },
                dyadic_tail_bound(),
            ),
        ),
    ];
    for (name, s) in &cases {
        assert_self_consistent(name, s);
    }
}

#[test]
fn finite_additivity_for_gap_fixtures() {
    // Cantor set and a piece of its first removed gap [1/3, 2/3).
    let pairs: Vec<(MeasurableSet, MeasurableSet)> = vec![
        (cantor3(), embed("2/5,3/5".parse().unwrap())),
        (fatcantor(), embed("3/8,5/8".parse().unwrap())),
        (
            limit_intersect(&fatcantor(), &embed("0/1,1/2".parse().unwrap())),
            limit_intersect(&fatcantor(), &embed("1/2,1/1".parse().unwrap())),
        ),
    ];
    for (k, (s1, s2)) in pairs.iter().enumerate() {
        for e in [Rat::new(1, 4), Rat::new(1, 32), Rat::new(1, 256)] {
            let parts = measure_with_error(s1, &e)
                .unwrap()
                .add(&measure_with_error(s2, &e).unwrap());
            let whole = measure_with_error(&limit_union(s1, s2), &(&e + &e)).unwrap();
            assert!(parts.overlaps(&whole), "pair {k} eps {e}: {parts} vs {whole}");
        }
    }
}

#[test]
fn measure_width_is_twice_eps() {
    for s in [cantor3(), fatcantor(), dyadictail()] {
        let mut eps = Rat::new(1, 4);
        let mut prev = measure_with_error(&s, &eps).unwrap().width();
        assert_eq!(prev, &eps + &eps);
        for _ in 0..5 {
            eps = &eps / &Rat::from_integer(2);
            let w = measure_with_error(&s, &eps).unwrap().width();
            assert_eq!(&w + &w, prev);
            prev = w;
        }
    }
}

#[test]
fn countable_additivity_at_truncation() {
    let s = dyadictail();
    let tail = dyadic_tail_bound();
    for level in 1..=32u64 {
        let n = tail.bound_at(level);
        let partial: Rat = (1..=n).map(|i| dyadic_piece(i).premeasure()).sum();
        let radius = Rat::from_u64_ratio(1, level);
        let certified = measure_with_error(&s, &radius).unwrap();
        let lower = &partial - &radius;
        let upper = &partial + &radius;
        assert!(certified.lo() <= &upper && &lower <= certified.hi(), "L={level}");
        assert!(certified.contains(&Rat::one()));
    }
}

#[test]
fn distance_between_examples() {
    let eps = Rat::new(1, 64);
    let a: AlgebraElement = "0/1,1/2".parse().unwrap();
    let b: AlgebraElement = "1/4,3/4".parse().unwrap();
    assert!(distance_between(&embed(a.clone()), &embed(b.clone()), &eps)
        .unwrap()
        .contains(&Rat::new(1, 2)));
    assert!(distance_between(&cantor3(), &embed(AlgebraElement::empty()), &eps)
        .unwrap()
        .contains(&Rat::zero()));
    let twice = limit_complement(&limit_complement(&fatcantor()));
    assert!(distance_between(&twice, &fatcantor(), &eps)
        .unwrap()
        .contains(&Rat::zero()));
    let uu = limit_union(&fatcantor(), &fatcantor());
    assert!(distance_between(&uu, &fatcantor(), &eps)
        .unwrap()
        .contains(&Rat::zero()));
    let both = limit_intersect(&fatcantor(), &limit_complement(&fatcantor()));
    assert!(measure_with_error(&both, &eps).unwrap().contains(&Rat::zero()));
    let full = limit_union(&cantor3(), &embed(AlgebraElement::full()));
    assert!(measure_with_error(&full, &Rat::new(1, 1000))
        .unwrap()
        .contains(&Rat::one()));
}

fn arb_expr() -> impl Strategy<Value = SetExpr> {
    let lit = (0i64..=16, 0i64..=16, 1i64..=16).prop_filter_map("nonempty literal", |(a, b, q)| {
        let (a, b) = (a % (q + 1), b % (q + 1));
        (a < b).then(|| SetExpr::IntervalLit(Rat::new(a, q), Rat::new(b, q)))
    });
    let leaf = prop_oneof![
        4 => lit,
        1 => prop::sample::select(vec![Builtin::Cantor3, Builtin::FatCantor, Builtin::DyadicTail]).prop_map(SetExpr::Builtin),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SetExpr::Union(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SetExpr::Intersect(Box::new(a), Box::new(b))),
            inner.prop_map(|a| SetExpr::Complement(Box::new(a))),
        ]
    })
}

fn literal_only(e: &SetExpr) -> bool {
    match e {
        SetExpr::IntervalLit(..) => true,
        SetExpr::Builtin(_) => false,
        SetExpr::Complement(a) => literal_only(a),
        SetExpr::Union(a, b) | SetExpr::Intersect(a, b) => literal_only(a) && literal_only(b),
    }
}

proptest! {
    #[test]
    fn printed_expressions_reparse(e in arb_expr()) {
        prop_assert_eq!(parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn evaluation_is_a_homomorphism(e in arb_expr().prop_filter("literals only", literal_only)) {
        let exact = e.as_algebra_element().unwrap().premeasure();
        let s = eval_expr(&e);
        for eps in [Rat::new(1, 2), Rat::new(1, 64), Rat::new(1, 1024)] {
            prop_assert!(measure_with_error(&s, &eps).unwrap().contains(&exact));
        }
    }
}

#[test]
fn cover_reduction_and_closure_equivalence_on_random_spaces() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut cover_checked = 0;
    for _ in 0..150 {
        let space = FiniteSpace::random(&mut rng, 6);
        assert!(finite_oracle::verify_closure_equivalence(&space), "{space}");
        assert!(finite_oracle::verify_extension(&space), "{space}");
        assert!(finite_oracle::verify_measure_space(&space), "{space}");
        if space.blocks().len() <= finite_oracle::EXHAUSTIVE_COVER_BLOCKS {
            cover_checked += 1;
            let by_covers = finite_oracle::outer_measures_by_covers(&space).unwrap();
            for e in space.all_sets() {
                assert_eq!(
                    by_covers[e.bits() as usize],
                    finite_oracle::outer_measure(&space, e),
                    "{space} {e:?}"
                );
            }
        }
    }
    assert!(cover_checked > 50, "only {cover_checked} spaces small enough");
}

#[test]
fn truncated_covers_of_measurable_sets_are_close() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let space = FiniteSpace::random(&mut rng, 6);
        for e in space.all_sets() {
            match finite_oracle::truncated_cover(&space, e, 7) {
                Ok(c) => {
                    assert!(space.is_algebra_element(c.cover));
                    assert!(c.distance <= Rat::new(1, 7));
                    assert!(finite_oracle::is_measurable(&space, e));
                }
                Err(_) => assert!(!finite_oracle::is_measurable(&space, e)),
            }
        }
    }
}

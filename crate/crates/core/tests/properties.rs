use proptest::prelude::*;
use qadv::constructions::{gen_random_partial, Budget};
use qadv::measures::witness::{
    eval_mm_witness, eval_rank1, eval_relational, eval_weighted, relational_from_fbs,
    DistributionFamily, MmBound, Rank1Witness, WeightScheme,
};
use qadv::measures::{
    bs, bs_at, ca1, ca1_solution, cert_at, fbs, fbs_at, fbs_parametrized, fbs_solution, fc_at,
    fc_solution, mm_solution, IndexWeighting,
};
use qadv::{PartialFunction, Rational, Word};

fn function(n: usize, g: usize, h: usize, quarters: i64, seed: u64) -> PartialFunction {
    gen_random_partial(
        n,
        g,
        h,
        &Rational::new(quarters, 4),
        seed,
        &Budget::default(),
    )
    .unwrap()
}

fn any_function() -> impl Strategy<Value = PartialFunction> {
    (1usize..=4, 2usize..=3, 2usize..=3, 1i64..=4, any::<u64>())
        .prop_map(|(n, g, h, q, s)| function(n, g, h, q, s))
}

fn boolean_inputs() -> impl Strategy<Value = PartialFunction> {
    (1usize..=4, 2usize..=3, 1i64..=4, any::<u64>())
        .prop_map(|(n, h, q, s)| function(n, 2, h, q, s))
}

fn total_boolean() -> impl Strategy<Value = PartialFunction> {
    (1usize..=3, 2usize..=3, any::<u64>()).prop_map(|(n, h, s)| function(n, 2, h, 4, s))
}

/// Domains of at most 14 words; the minimax program grows quadratically in `|S|`.
fn small_function() -> impl Strategy<Value = PartialFunction> {
    (1usize..=3, 2usize..=3, 2usize..=3, 1i64..=4, any::<u64>()).prop_map(|(n, g, h, q, s)| {
        let q = if n == 3 && g == 3 { q.min(2) } else { q };
        function(n, g, h, q, s)
    })
}

fn positive_weights(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(1i64..=5, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sensitive_blocks_come_from_domain_witnesses(f in any_function()) {
        for x in f.words() {
            let fam = f.sensitive_blocks(x).unwrap();
            prop_assert!(fam.len() < f.domain_size());
            for (block, y) in &fam.blocks {
                prop_assert!(f.contains(y));
                prop_assert_ne!(f.get(y), f.get(x));
                prop_assert_eq!(block.indices().to_vec(), x.diff(y));
            }
            let mut sets: Vec<_> = fam.iter_blocks().collect();
            sets.sort();
            sets.dedup();
            prop_assert_eq!(sets.len(), fam.len());
        }
    }

    #[test]
    fn output_classes_partition_the_domain(f in any_function()) {
        let mut all: Vec<&Word> = (0..f.h() as u8)
            .flat_map(|b| f.inputs_with_output(b).unwrap())
            .collect();
        all.sort();
        prop_assert_eq!(all, f.words().collect::<Vec<_>>());
    }

    #[test]
    fn serialization_roundtrips(f in any_function()) {
        prop_assert_eq!(PartialFunction::parse_qfn(&f.to_qfn()).unwrap(), f);
    }

    #[test]
    fn duality_and_sandwich(f in any_function()) {
        for x in f.words() {
            let v = fbs_at(&f, x).unwrap();
            prop_assert_eq!(&v, &fc_at(&f, x).unwrap());
            prop_assert!(Rational::from(bs_at(&f, x).unwrap()) <= v);
            prop_assert!(v <= Rational::from(cert_at(&f, x).unwrap()));
        }
    }

    #[test]
    fn fbs_is_below_ca1(f in boolean_inputs()) {
        let sol = ca1_solution(&f).unwrap();
        prop_assert!(fbs(&f).unwrap().value <= sol.value);
        prop_assert_eq!(eval_rank1(&f, &sol.to_witness()).unwrap(), sol.value);
    }

    #[test]
    fn rank1_witnesses_are_below_ca1(
        f in boolean_inputs(),
        px in positive_weights(64),
        qy in positive_weights(64),
    ) {
        let a = vec![f.achieved_outputs()[0]];
        let mut w = Rank1Witness::uniform(&f, &a);
        for (k, e) in w.p.iter_mut().enumerate() {
            e.1 = Rational::from_integer(px[k]);
        }
        for (k, e) in w.q.iter_mut().enumerate() {
            e.1 = Rational::from_integer(qy[k]);
        }
        prop_assert!(eval_rank1(&f, &w).unwrap() <= ca1(&f).unwrap());
    }

    #[test]
    fn fbs_relation_evaluates_to_fbs(f in any_function()) {
        for x in f.words() {
            let sol = fbs_solution(&f, x).unwrap();
            let r = relational_from_fbs(&sol);
            let v = eval_relational(&f, &r).unwrap();
            prop_assert_eq!(&v, &sol.value);
            prop_assert_eq!(eval_weighted(&f, &WeightScheme::from_relational(&r)).unwrap(), v.clone());
            if f.g() == 2 {
                prop_assert!(v <= ca1(&f).unwrap());
            }
        }
    }

    #[test]
    fn total_functions_mm_equals_fc(f in total_boolean()) {
        let mm = mm_solution(&f).unwrap();
        let mut weights = Vec::new();
        let mut fc_max = Rational::zero();
        for x in f.words() {
            let s = fc_solution(&f, x).unwrap();
            fc_max = fc_max.max(s.value);
            weights.push((x.clone(), s.weights));
        }
        prop_assert_eq!(&mm.value, &fc_max);
        prop_assert_eq!(&fc_max, &fbs(&f).unwrap().value);
        let fc_weights = IndexWeighting { weights };
        prop_assert!(fc_weights.satisfies_min_sum(&f));
    }

    #[test]
    fn mm_optimum_satisfies_raw_constraints(f in small_function()) {
        let sol = mm_solution(&f).unwrap();
        prop_assert!(sol.weights.satisfies_min_sum(&f));
        prop_assert_eq!(sol.weights.max_total(), sol.value.clone());
        let fam = DistributionFamily::from_mm(&sol);
        prop_assert_eq!(eval_mm_witness(&f, &fam).unwrap(), MmBound::Finite(sol.value));
    }

    #[test]
    fn mm_witnesses_are_above_mm(f in small_function(), raw in prop::collection::vec(0i64..=4, 64 * 4)) {
        let n = f.n();
        let mut fam = DistributionFamily::default();
        for (k, x) in f.words().enumerate() {
            let mut v: Vec<Rational> = (0..n).map(|i| Rational::from_integer(raw[k * 4 + i])).collect();
            if v.iter().all(Rational::is_zero) {
                v[0] = Rational::one();
            }
            let total: Rational = v.iter().sum();
            fam.distributions.insert(x.clone(), v.iter().map(|e| e / &total).collect());
        }
        let mm = mm_solution(&f).unwrap().value;
        match eval_mm_witness(&f, &fam).unwrap() {
            MmBound::Finite(v) => prop_assert!(v >= mm),
            MmBound::Infinite => {}
        }
    }

    #[test]
    fn sqrt_barrier(f in any_function(), num in 0i64..=8, den in 1i64..=2) {
        let n = Rational::from(f.n());
        let top = fbs(&f).unwrap();
        prop_assert!(top.value.square() <= &n * &Rational::from(bs(&f).unwrap().value));
        let budget = Rational::new(num, den).min(n.clone());
        for x in f.words() {
            let v = fbs_parametrized(&f, x, &budget).unwrap();
            prop_assert!(v.square() <= &budget * &Rational::from(bs_at(&f, x).unwrap()));
            prop_assert!(v <= fbs_at(&f, x).unwrap());
        }
    }
}

use num_bigint::BigUint;
use parkfiber::enumerator::{brute_force, compare, fiber_witnesses, Budget, OracleOptions};
use parkfiber::fibers::pref_counts;
use parkfiber::par::Jobs;
use parkfiber::perm;
use parkfiber::simulator::StreetState;
use parkfiber::types::lengths_from_signed;
use parkfiber::{
    classical_fiber, fiber, fiber_table, generate_lengths, identity_fiber_sequence, outcome,
    pa_fiber, ps_fiber, simulate, street_length, total_sum, validate, CarLengths, Count,
    FamilySpec, ParkingOrder, ParkingResult, PreferenceList, Rule,
};
use proptest::prelude::*;

fn lengths_strategy(max_n: usize, max_len: usize) -> impl Strategy<Value = CarLengths> {
    prop::collection::vec(1..=max_len, 1..=max_n).prop_map(|v| CarLengths::new(v).unwrap())
}

fn with_prefs(max_n: usize, max_len: usize) -> impl Strategy<Value = (CarLengths, PreferenceList)> {
    lengths_strategy(max_n, max_len).prop_flat_map(|y| {
        let m = y.street_length();
        let n = y.len();
        prop::collection::vec(1..=m, n)
            .prop_map(move |x| (y.clone(), PreferenceList::new(&y, x).unwrap()))
    })
}

fn with_order(max_n: usize, max_len: usize) -> impl Strategy<Value = (CarLengths, ParkingOrder)> {
    lengths_strategy(max_n, max_len).prop_flat_map(|y| {
        let n = y.len();
        Just((1..=n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(move |v| (y.clone(), ParkingOrder::new(v).unwrap()))
    })
}

fn product(counts: &[Count]) -> Count {
    counts.iter().product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn street_length_is_additive(a in lengths_strategy(6, 9), b in lengths_strategy(6, 9)) {
        let joined = CarLengths::new([a.as_slice(), b.as_slice()].concat()).unwrap();
        prop_assert_eq!(street_length(&joined), street_length(&a) + street_length(&b));
    }

    #[test]
    fn validate_accepts_exactly_the_box(
        y in prop::collection::vec(1i64..=4, 1..=4),
        x in prop::collection::vec(-2i64..=20, 1..=4),
    ) {
        let m: i64 = y.iter().sum();
        let in_box = x.len() == y.len() && x.iter().all(|&v| (1..=m).contains(&v));
        prop_assert_eq!(validate(&y, &x).is_ok(), in_box);
    }

    #[test]
    fn sequence_success_implies_same_assortment_result((y, x) in with_prefs(5, 4)) {
        if let ParkingResult::Parked(a) = simulate(&y, &x, Rule::Sequence) {
            prop_assert_eq!(simulate(&y, &x, Rule::Assortment), ParkingResult::Parked(a));
        }
    }

    #[test]
    fn successful_runs_tile_the_street((y, x) in with_prefs(5, 4), rule in prop::sample::select(Rule::ALL.to_vec())) {
        if let ParkingResult::Parked(a) = simulate(&y, &x, rule) {
            prop_assert!(parkfiber::Assignment::new(&y, a.as_slice().to_vec()).is_ok());
            prop_assert!(outcome(&y, &a).is_ok());
        }
    }

    #[test]
    fn failure_leaves_the_prefix_parked((y, x) in with_prefs(5, 4), rule in prop::sample::select(Rule::ALL.to_vec())) {
        let mut street = StreetState::new(&y);
        match street.run(&y, x.as_slice(), rule) {
            Ok(()) => prop_assert!(simulate(&y, &x, rule).is_parked()),
            Err((car, reason)) => {
                prop_assert_eq!(simulate(&y, &x, rule), ParkingResult::Failed { car, reason });
                for earlier in 1..car {
                    prop_assert!(street.start(earlier).is_some());
                }
                prop_assert!(street.start(car).is_none());
            }
        }
    }

    #[test]
    fn simulation_is_deterministic((y, x) in with_prefs(5, 4)) {
        for rule in Rule::ALL {
            prop_assert_eq!(simulate(&y, &x, rule), simulate(&y, &x, rule));
        }
    }

    #[test]
    fn assortment_count_routes_agree((y, sigma) in with_order(7, 6)) {
        // case analysis over explicit blocks vs the single-scan hot path
        let per = pref_counts(&y, &sigma, Rule::Assortment).unwrap();
        prop_assert_eq!(product(&per), pa_fiber(&y, &sigma).unwrap());
        let per = pref_counts(&y, &sigma, Rule::Sequence).unwrap();
        prop_assert_eq!(product(&per), ps_fiber(&y, &sigma).unwrap());
    }

    #[test]
    fn fiber_nesting_and_bounds((y, sigma) in with_order(7, 6)) {
        let ps = ps_fiber(&y, &sigma).unwrap();
        let pa = pa_fiber(&y, &sigma).unwrap();
        prop_assert!(ps <= pa);
        let n = y.len();
        prop_assert_eq!(ps_fiber(&y, &ParkingOrder::identity(n)).unwrap(), pa_fiber(&y, &ParkingOrder::identity(n)).unwrap());
        prop_assert_eq!(pa_fiber(&y, &ParkingOrder::decreasing(n)).unwrap(), Count::from(1u32));
        prop_assert_eq!(ps_fiber(&y, &ParkingOrder::decreasing(n)).unwrap(), Count::from(1u32));
    }

    #[test]
    fn unit_lengths_collapse(sigma in (1usize..=7).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())) {
        let sigma = ParkingOrder::new(sigma).unwrap();
        let y = CarLengths::unit(sigma.len()).unwrap();
        let c = classical_fiber(&sigma);
        prop_assert_eq!(ps_fiber(&y, &sigma).unwrap(), c.clone());
        prop_assert_eq!(pa_fiber(&y, &sigma).unwrap(), c);
    }

    #[test]
    fn table_sums_to_total(y in lengths_strategy(6, 5)) {
        for rule in Rule::ALL {
            prop_assert_eq!(fiber_table(&y, rule).total(), total_sum(&y, rule, Jobs::SERIAL));
        }
        prop_assert_eq!(total_sum(&y, Rule::Sequence, Jobs::SERIAL), parkfiber::ps_total_product(&y));
    }

    #[test]
    fn identity_fibers_are_prefix_sum_products(y in lengths_strategy(8, 50)) {
        let mut prefix = 0;
        let mut expected = Count::from(1u32);
        for &len in y.as_slice() {
            expected *= Count::from(1 + prefix);
            prefix += len;
        }
        prop_assert_eq!(fiber(&y, &ParkingOrder::identity(y.len()), Rule::Assortment).unwrap(), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    // Beyond the acceptance grid: five cars and lengths up to 4.
    #[test]
    fn formulas_match_oracle((y, rule) in (lengths_strategy(5, 4), prop::sample::select(Rule::ALL.to_vec()))) {
        let report = brute_force(&y, rule, OracleOptions::default()).unwrap();
        let verdict = compare(&fiber_table(&y, rule), &report);
        prop_assert!(verdict.passed(), "y={} {}: {:?}", y, rule, verdict.mismatches);
    }

    #[test]
    fn witness_count_equals_fiber((y, sigma) in with_order(5, 4), rule in prop::sample::select(Rule::ALL.to_vec())) {
        let w = fiber_witnesses(&y, &sigma, rule, Budget::DEFAULT, Jobs::SERIAL).unwrap();
        prop_assert_eq!(Count::from(w.len()), fiber(&y, &sigma, rule).unwrap());
    }

    #[test]
    fn parallel_oracle_matches_serial(y in lengths_strategy(4, 4), rule in prop::sample::select(Rule::ALL.to_vec())) {
        let serial = OracleOptions { collect_witnesses: true, ..OracleOptions::default() };
        let parallel = OracleOptions { jobs: Jobs(3), ..serial };
        prop_assert_eq!(brute_force(&y, rule, serial).unwrap(), brute_force(&y, rule, parallel).unwrap());
    }
}

#[test]
fn oracle_reports_are_self_consistent_and_nested() {
    for v in [
        vec![1, 2, 1],
        vec![2, 2, 1, 1],
        vec![3, 1, 2],
        vec![1, 1, 1, 1],
    ] {
        let y = CarLengths::new(v).unwrap();
        let opts = OracleOptions {
            collect_witnesses: true,
            ..OracleOptions::default()
        };
        let ps = brute_force(&y, Rule::Sequence, opts).unwrap();
        let pa = brute_force(&y, Rule::Assortment, opts).unwrap();
        for r in [&ps, &pa] {
            assert_eq!(r.total, r.fibers.entries.values().sum::<Count>());
            for (sigma, lists) in r.witnesses.as_ref().unwrap() {
                assert_eq!(Count::from(lists.len()), r.fibers.get(sigma));
                for x in lists {
                    assert_eq!(parkfiber::classify(&y, x, r.rule).as_ref(), Some(sigma));
                }
            }
        }
        assert!(ps
            .success_set()
            .unwrap()
            .is_subset(&pa.success_set().unwrap()));
        for (sigma, c) in &ps.fibers.entries {
            assert!(*c <= pa.fibers.get(sigma));
        }
    }
}

#[test]
fn two_cars_agree_up_to_length_five() {
    let opts = OracleOptions {
        collect_witnesses: true,
        ..OracleOptions::default()
    };
    for a in 1..=5 {
        for b in 1..=5 {
            let y = CarLengths::new(vec![a, b]).unwrap();
            assert_eq!(
                brute_force(&y, Rule::Sequence, opts).unwrap().success_set(),
                brute_force(&y, Rule::Assortment, opts)
                    .unwrap()
                    .success_set(),
                "y = ({a}, {b})"
            );
        }
    }
}

#[test]
fn three_cars_can_differ() {
    let y = CarLengths::new(vec![1, 2, 1]).unwrap();
    let x = PreferenceList::new(&y, vec![2, 1, 1]).unwrap();
    assert!(!simulate(&y, &x, Rule::Sequence).is_parked());
    assert!(simulate(&y, &x, Rule::Assortment).is_parked());
}

#[test]
fn family_prefixes_are_consistent() {
    for family in [
        FamilySpec::Staircase,
        FamilySpec::Fibonacci,
        FamilySpec::CatalanShape,
        FamilySpec::Unit,
    ] {
        let full = identity_fiber_sequence(&family, 7).unwrap();
        for k in 1..=7 {
            assert_eq!(identity_fiber_sequence(&family, k).unwrap(), full[..k]);
            let shorter = generate_lengths(&family, k).unwrap();
            let longer = generate_lengths(&family, 7).unwrap();
            assert_eq!(shorter.as_slice(), &longer.as_slice()[..k]);
        }
    }
    let unit = identity_fiber_sequence(&FamilySpec::Unit, 8).unwrap();
    let factorials: Vec<Count> = (1..=8).map(perm::factorial).collect();
    assert_eq!(unit, factorials);
}

#[test]
fn totals_for_unit_lengths_are_cayley_numbers() {
    for n in 1..=8usize {
        let y = lengths_from_signed(&vec![1; n]).unwrap();
        let expected = BigUint::from(n + 1).pow(n as u32 - 1);
        assert_eq!(parkfiber::ps_total_product(&y), expected);
        assert_eq!(parkfiber::ps_total_sum(&y), expected);
        assert_eq!(parkfiber::pa_total_sum(&y), expected);
    }
}

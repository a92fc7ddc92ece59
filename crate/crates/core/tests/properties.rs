use proptest::prelude::*;

use shiftlab_core::betti::BettiRecord;
use shiftlab_core::checks::{
    check_consecutive, check_covering, check_subadditivity_profile, find_covering_pairs, Analysis,
};
use shiftlab_core::complex::ComplexDump;
use shiftlab_core::golden;
use shiftlab_core::ideal::IdealJson;
use shiftlab_core::symbolic::derive_all_symbolic_bounds;
use shiftlab_core::{
    graded_ranks, is_minimal, minimalize, multigraded_betti, scarf_complex, taylor_complex, verify_complex,
    BettiTable, FieldSpec, FreeComplex, MonomialIdeal, Multidegree, RingContext,
};

fn ideal_strategy(max_n: usize, max_m: usize, max_exp: u32) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_n)
        .prop_flat_map(move |n| {
            proptest::collection::vec(proptest::collection::vec(0..=max_exp, n), 1..=max_m)
                .prop_map(move |vs| (n, vs))
        })
        .prop_filter_map("needs a nonzero generator", |(n, vs)| {
            let gens: Vec<Multidegree> = vs
                .into_iter()
                .filter(|v| v.iter().any(|&e| e > 0))
                .map(Multidegree::new)
                .collect();
            if gens.is_empty() {
                return None;
            }
            MonomialIdeal::new(RingContext::numbered(n), gens).ok()
        })
}

/// No two generators share a positive exponent in any variable.
fn strongly_generic(i: &MonomialIdeal) -> bool {
    let gens = i.generators();
    (0..i.nvars()).all(|v| {
        let mut seen: Vec<u32> = gens.iter().map(|g| g.exponents()[v]).filter(|&e| e > 0).collect();
        let len = seen.len();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == len
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn strand_betti_matches_minimal_resolution(i in ideal_strategy(5, 6, 3)) {
        for field in [FieldSpec::Rationals, FieldSpec::PrimeField(2)] {
            let strand = multigraded_betti(&i, field).unwrap();
            let minimal = minimalize(&taylor_complex(&i).unwrap(), field).unwrap();
            prop_assert!(verify_complex(&minimal).ok);
            prop_assert!(is_minimal(&minimal));
            prop_assert_eq!(graded_ranks(&minimal), strand);
        }
    }

    #[test]
    fn euler_characteristic_vanishes(i in ideal_strategy(5, 7, 3)) {
        let totals = multigraded_betti(&i, FieldSpec::Rationals).unwrap().totals();
        let chi: i64 = totals.iter().enumerate().map(|(a, &b)| if a % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        prop_assert_eq!(chi, 0);
    }

    #[test]
    fn scarf_resolves_strongly_generic_ideals(i in ideal_strategy(4, 5, 6)) {
        prop_assume!(strongly_generic(&i));
        let scarf = scarf_complex(&i).unwrap();
        prop_assert!(verify_complex(&scarf).ok);
        prop_assert_eq!(graded_ranks(&scarf), multigraded_betti(&i, FieldSpec::Rationals).unwrap());
    }

    #[test]
    fn reports_are_consistent_and_proven_ones_hold(i in ideal_strategy(4, 5, 3)) {
        let an = Analysis::new(i, FieldSpec::Rationals).unwrap();
        let mut reports = check_consecutive(&an);
        reports.extend(check_subadditivity_profile(an.shifts()));
        for (alpha, beta) in find_covering_pairs(&an, None).unwrap().into_iter().take(40) {
            reports.extend(check_covering(&an, &alpha, &beta).unwrap());
        }
        for r in &reports {
            prop_assert_eq!(r.holds, r.lhs <= r.rhs);
            prop_assert!(!r.is_bug(), "{}", r);
        }
    }

    #[test]
    fn json_formats_round_trip(i in ideal_strategy(4, 5, 3)) {
        let json = serde_json::to_string(&i.to_json()).unwrap();
        let back: IdealJson = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.into_ideal().unwrap(), i.clone());
        prop_assert_eq!(MonomialIdeal::parse(&i.to_text()).unwrap(), i.clone());

        let betti = multigraded_betti(&i, FieldSpec::Rationals).unwrap();
        let records: Vec<BettiRecord> = serde_json::from_str(&serde_json::to_string(&betti.records()).unwrap()).unwrap();
        prop_assert_eq!(BettiTable::from_records(&records), betti);

        let t = taylor_complex(&i).unwrap();
        let dump: ComplexDump = serde_json::from_str(&serde_json::to_string(&t.to_dump()).unwrap()).unwrap();
        prop_assert_eq!(FreeComplex::from_dump(&dump).unwrap(), t);
    }
}

#[test]
fn symbolic_bounds_hold_on_zero_dimensional_fixture() {
    let i = golden::general7();
    let t = multigraded_betti(&i, FieldSpec::Rationals).unwrap().shift_profile();
    let (n, m) = (i.nvars(), i.num_generators());
    for a in 2..=t.projdim {
        for b in derive_all_symbolic_bounds(n, m, a).unwrap() {
            let (lhs, rhs) = b.evaluate(&t.shifts).unwrap();
            assert!(lhs <= rhs, "{b}: {lhs} > {rhs}");
        }
    }
}

#[test]
fn field_dependence_is_detected() {
    // Stanley-Reisner ideal of the six-vertex real projective plane
    let faces = [
        [1, 2, 3], [1, 2, 4], [1, 3, 5], [1, 4, 6], [1, 5, 6],
        [2, 3, 6], [2, 4, 5], [2, 5, 6], [3, 4, 5], [3, 4, 6],
    ];
    let mut gens = Vec::new();
    for s in 1..(1u32 << 6) {
        let set: Vec<usize> = (0..6).filter(|v| s & (1 << v) != 0).map(|v| v + 1).collect();
        let in_face = |set: &[usize]| faces.iter().any(|f| set.iter().all(|v| f.contains(v)));
        if !in_face(&set) && (0..set.len()).all(|k| {
            let mut sub = set.clone();
            sub.remove(k);
            in_face(&sub)
        }) {
            let mut e = vec![0; 6];
            for v in &set {
                e[v - 1] = 1;
            }
            gens.push(Multidegree::new(e));
        }
    }
    let i = MonomialIdeal::new(RingContext::numbered(6), gens).unwrap();
    let q = multigraded_betti(&i, FieldSpec::Rationals).unwrap();
    let f2 = multigraded_betti(&i, FieldSpec::PrimeField(2)).unwrap();
    assert_ne!(q, f2);
    let t = taylor_complex(&i).unwrap();
    assert_eq!(graded_ranks(&minimalize(&t, FieldSpec::PrimeField(2)).unwrap()), f2);
    assert_eq!(graded_ranks(&minimalize(&t, FieldSpec::Rationals).unwrap()), q);
}

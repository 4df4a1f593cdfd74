use std::collections::HashSet;

use arrcalc_core::*;
use proptest::prelude::*;

/// Drops zero and repeated hyperplanes.
fn arrangement(dim: usize, rows: Vec<Vec<i64>>) -> CentralArrangement {
    let mut seen = HashSet::new();
    let forms: Vec<LinearForm> = rows
        .iter()
        .filter_map(|r| LinearForm::from_integers(r))
        .filter(|f| seen.insert(f.clone()))
        .collect();
    CentralArrangement::from_forms(dim, forms).unwrap()
}

fn arrangements(dims: std::ops::RangeInclusive<usize>, max_len: usize) -> impl Strategy<Value = CentralArrangement> {
    dims.prop_flat_map(move |dim| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 1..=max_len)
            .prop_map(move |rows| arrangement(dim, rows))
            .prop_filter("nonempty", |a| !a.is_empty())
    })
}

fn rank2_multis() -> impl Strategy<Value = Multiarrangement> {
    (
        prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 2..=5),
        prop::collection::vec(1u32..=3, 5),
    )
        .prop_map(|(rows, mult)| {
            let a = arrangement(2, rows);
            let m = mult[..a.len()].to_vec();
            Multiarrangement::new(a, m).unwrap()
        })
        .prop_filter("rank two", |m| m.rank() == 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn char_poly_shape(a in arrangements(1..=4, 7)) {
        let chi = char_poly(&a);
        prop_assert!(chi.is_monic());
        prop_assert_eq!(chi.degree(), Some(a.dim()));
        prop_assert!(chi.div_t_minus_one().is_ok());
        for k in 0..=a.dim() {
            let sign = if (a.dim() - k) % 2 == 0 { 1 } else { -1 };
            prop_assert!(sign * chi.coeff(k) >= 0);
        }
    }

    #[test]
    fn lattice_moebius_matches_bruteforce(a in arrangements(2..=3, 6)) {
        let l = intersection_lattice(&a);
        for (i, f) in l.flats().iter().enumerate() {
            prop_assert_eq!(moebius_bruteforce(&a, f).unwrap(), l.moebius(i));
            let sign = if f.codim % 2 == 0 { 1 } else { -1 };
            prop_assert!(sign * l.moebius(i) > 0);
        }
    }

    #[test]
    fn oracles_agree(a in arrangements(1..=3, 6)) {
        let primes = guarded_primes(&a, a.dim() + 2);
        prop_assert_eq!(finite_field_char_poly(&a, &primes).unwrap(), char_poly(&a));
        prop_assert_eq!(region_count_recursion(&a), chamber_count(&a));
    }

    #[test]
    fn deconing_and_rho(a in arrangements(2..=3, 6)) {
        let chi0 = reduced_char_poly(&a).unwrap();
        for h0 in 0..a.len() {
            let d = decone(&a, h0).unwrap();
            prop_assert_eq!(&char_poly(&d), &chi0);
            prop_assert_eq!(region_count_recursion(&d), chamber_count(&d));

            let dr = DeconeRestriction::new(&a, h0).unwrap();
            let (_, fibers) = ziegler_with_fibers(&a, h0).unwrap();
            for (y, &x) in dr.rho_map().iter().enumerate() {
                let yf = dr.decone_lattice.flat(y);
                let xf = dr.restriction_lattice.flat(x);
                prop_assert_eq!(yf.codim, xf.codim);
                // every hyperplane through Y restricts to one through ρ(Y)
                for &k in &yf.hyperplanes {
                    let k = if k < h0 { k } else { k + 1 };
                    let h = fibers.iter().position(|f| f.contains(&k)).unwrap();
                    prop_assert!(xf.hyperplanes.contains(&h));
                }
            }
            let t = b_coefficients(&a, h0).unwrap();
            for (i, &bi) in t.b.iter().enumerate() {
                let s: i64 = t.per_flat.iter().filter(|f| f.codim == i).map(|f| f.b).sum();
                prop_assert_eq!(s, bi);
            }
            prop_assert_eq!(t.b[0], 1);
            prop_assert_eq!(t.b[1], a.len() as i64 - 1);
        }
    }

    #[test]
    fn coefficient_inequality_in_rank_at_most_three(a in arrangements(2..=3, 6)) {
        for h0 in 0..a.len() {
            let r = compare_coefficients(&a, h0, None, false).unwrap();
            prop_assert!(r.sigma_exact());
            prop_assert!(r.inequality_holds.iter().all(|h| *h == Some(true)));
            prop_assert!(criteria::local_inequalities_hold(&r.table));
        }
    }

    #[test]
    fn rank2_exponents_sum_to_total(m in rank2_multis()) {
        let fb = rank2_exponents(&m).unwrap();
        prop_assert_eq!(fb.exponents.len(), 2);
        prop_assert_eq!(fb.exponents.sum(), m.total());
        prop_assert!(saito_check(&fb.basis, &m).unwrap());
    }

    #[test]
    fn dimension_grows_when_multiplicities_drop(m in rank2_multis(), which in 0usize..5, d in 0u32..5) {
        let i = which % m.mult().len();
        let mut lower = m.mult().to_vec();
        lower[i] -= 1;
        let smaller = Multiarrangement::new(m.base().clone(), lower).unwrap();
        prop_assert!(derivation_space_dim(&smaller, d) >= derivation_space_dim(&m, d));
    }

    #[test]
    fn free_verdicts_factor_the_char_poly(a in arrangements(2..=3, 6)) {
        let m = Multiarrangement::simple(a.clone());
        match find_free_basis(&m, m.total()) {
            FreenessVerdict::Free { exponents, basis: Some(basis) } => {
                prop_assert!(saito_check(&basis, &m).unwrap());
                prop_assert_eq!(exponents.sum(), m.total());
                prop_assert_eq!(multi_char_poly_free(&exponents), char_poly(&a));
            }
            FreenessVerdict::Free { .. } => prop_assert!(false, "basis missing"),
            FreenessVerdict::NotFree { .. } => {}
            FreenessVerdict::Unknown { .. } => prop_assert!(false, "bound |m| must decide"),
        }
    }

    #[test]
    fn rank3_criteria_agree(a in arrangements(3..=3, 6).prop_filter("essential", |a| a.is_essential())) {
        let direct = saito_free_check(&a, None);
        for h0 in 0..a.len() {
            let verdicts = [yoshinaga_3d(&a, h0).unwrap(), abe_yoshinaga_free_check(&a, h0, None).unwrap(), direct.clone()];
            prop_assert!(merge_verdicts(&verdicts).consistent, "{:?}", verdicts);
        }
    }

    #[test]
    fn arrangement_files_round_trip(a in arrangements(1..=4, 6), mult in prop::collection::vec(0u32..4, 6)) {
        let m = Multiarrangement::new(a.clone(), mult[..a.len()].to_vec()).unwrap();
        let f = ArrangementFile::from_multiarrangement(&m);
        let back = parse_arrangement_file(&f.to_json()).unwrap();
        prop_assert_eq!(back.multiarrangement().unwrap(), m);
    }
}

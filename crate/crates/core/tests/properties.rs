mod common;

use common::{basis, brute_sparsity, diag_apply, intersection_dim, rank, span_le, sum_dim};
use ia_workbench::alignment::{contract, extend, grid_span, second_order, width};
use ia_workbench::rational::{int, Rational};
use ia_workbench::sparsity::{dim_on_support, n_sparsity, sparsity_profile, support_dim, SparsityValue};
use ia_workbench::{DiagMap, Subspace};
use proptest::prelude::*;

fn rows_strategy(n: usize, max_rows: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), 0..=max_rows)
}

fn subspace(rows: &[Vec<i64>], n: usize) -> Subspace {
    Subspace::from_int_rows(rows, n).unwrap()
}

type PairCase = (usize, Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<i64>, Vec<i64>);

/// Ambient dimension, then two subspaces and two maps (entries 1..=5 so
/// repeated eigenvalues are common).
fn pair_case() -> impl Strategy<Value = PairCase> {
    (2usize..=7).prop_flat_map(|n| {
        (
            Just(n),
            rows_strategy(n, n),
            rows_strategy(n, n),
            prop::collection::vec(1i64..=5, n),
            prop::collection::vec(1i64..=5, n),
        )
    })
}

fn map(e: &[i64]) -> DiagMap {
    DiagMap::from_ints(e, 1).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sum_and_intersection_dimensions((n, a, b, _, _) in pair_case()) {
        let v = subspace(&a, n);
        let w = subspace(&b, n);
        let s = v.sum(&w).unwrap();
        let i = v.intersect(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), v.dim() + w.dim());
        prop_assert_eq!(s.dim(), sum_dim(&basis(&v), &basis(&w)));
        prop_assert_eq!(i.dim(), intersection_dim(&basis(&v), &basis(&w)));
        prop_assert!(v.contains_subspace(&i).unwrap() && w.contains_subspace(&i).unwrap());
        prop_assert!(s.contains_subspace(&v).unwrap() && s.contains_subspace(&w).unwrap());
    }

    #[test]
    fn canonical_form_is_idempotent((n, a, _, _, _) in pair_case()) {
        let v = subspace(&a, n);
        prop_assert_eq!(Subspace::canonicalize(v.basis(), n).unwrap(), v.clone());
        prop_assert_eq!(v.dim(), rank(&a.iter().map(|r| common::ints(r)).collect::<Vec<_>>()));
    }

    #[test]
    fn image_then_inverse_is_identity((n, a, _, e, _) in pair_case()) {
        let v = subspace(&a, n);
        let m = map(&e);
        let image = v.apply(&m).unwrap();
        prop_assert_eq!(image.dim(), v.dim());
        prop_assert_eq!(image.apply(&m.inverse()).unwrap(), v.clone());
        let reference = diag_apply(m.entries(), &basis(&v));
        prop_assert!(span_le(&reference, image.basis()) && span_le(image.basis(), &reference));
    }

    #[test]
    fn extension_contraction_identity((n, a, _, e, _) in pair_case()) {
        let v = subspace(&a, n);
        let m = map(&e);
        let ext = extend(&v, &m, 1).unwrap().dim();
        let con = contract(&v, &m, 1).unwrap().dim();
        prop_assert_eq!(ext + con, 2 * v.dim());
        let image = diag_apply(m.entries(), &basis(&v));
        prop_assert_eq!(ext, sum_dim(&basis(&v), &image));
        prop_assert_eq!(con, intersection_dim(&basis(&v), &image));
    }

    #[test]
    fn operators_commute((n, a, _, e1, e2) in pair_case()) {
        let v = subspace(&a, n);
        let (t1, t2) = (map(&e1), map(&e2));
        let e12 = extend(&extend(&v, &t2, 1).unwrap(), &t1, 1).unwrap();
        let e21 = extend(&extend(&v, &t1, 1).unwrap(), &t2, 1).unwrap();
        prop_assert_eq!(e12, e21);
        let c12 = contract(&contract(&v, &t2, 1).unwrap(), &t1, 1).unwrap();
        let c21 = contract(&contract(&v, &t1, 1).unwrap(), &t2, 1).unwrap();
        prop_assert_eq!(c12, c21);
    }

    #[test]
    fn sum_is_associative_and_commutative((n, a, b, e, _) in pair_case()) {
        let u = subspace(&a, n);
        let v = subspace(&b, n);
        let w = v.apply(&map(&e)).unwrap();
        prop_assert_eq!(u.sum(&v).unwrap(), v.sum(&u).unwrap());
        prop_assert_eq!(u.intersect(&v).unwrap(), v.intersect(&u).unwrap());
        prop_assert_eq!(u.sum(&v).unwrap().sum(&w).unwrap(), u.sum(&v.sum(&w).unwrap()).unwrap());
        prop_assert_eq!(
            u.intersect(&v).unwrap().intersect(&w).unwrap(),
            u.intersect(&v.intersect(&w).unwrap()).unwrap()
        );
    }

    #[test]
    fn width_does_not_grow((n, a, _, e, _) in pair_case()) {
        let v = subspace(&a, n);
        let m = map(&e);
        let base = width(&v, &m).unwrap();
        prop_assert!(width(&extend(&v, &m, 1).unwrap(), &m).unwrap() <= base);
        prop_assert!(width(&contract(&v, &m, 1).unwrap(), &m).unwrap() <= base);
        // consequences for iterates
        let dims: Vec<usize> = (0..4).map(|k| extend(&v, &m, k).unwrap().dim()).collect();
        for k in 1..3 {
            prop_assert!(dims[k + 1] - dims[k] <= dims[k] - dims[k - 1]);
        }
        for k in 0..4 {
            prop_assert!(contract(&v, &m, k).unwrap().dim() + k * base >= v.dim());
        }
    }

    #[test]
    fn containments((n, a, _, e1, e2) in pair_case()) {
        let v = subspace(&a, n);
        let (t1, t2) = (map(&e1), map(&e2));
        let lhs = extend(&contract(&v, &t2, 1).unwrap(), &t1, 1).unwrap();
        let rhs = contract(&extend(&v, &t1, 1).unwrap(), &t2, 1).unwrap();
        prop_assert!(rhs.contains_subspace(&lhs).unwrap());
        let inv = t1.inverse();
        prop_assert!(v.contains_subspace(&extend(&contract(&v, &inv, 1).unwrap(), &t1, 1).unwrap()).unwrap());
        prop_assert!(contract(&extend(&v, &t1, 1).unwrap(), &inv, 1).unwrap().contains_subspace(&v).unwrap());
    }

    #[test]
    fn second_order_inequality((n, a, _, e1, e2) in pair_case()) {
        let v = subspace(&a, n);
        let r = second_order(&v, &map(&e1), &map(&e2)).unwrap();
        prop_assert!(r.ext2 <= r.con2);
    }

    #[test]
    fn grid_span_is_capped_by_support(
        x in prop::collection::vec(-2i64..=2, 5),
        e1 in prop::collection::vec(1i64..=9, 5),
        e2 in prop::collection::vec(1i64..=9, 5),
        n1 in 0usize..=3,
        n2 in 0usize..=3,
    ) {
        let x: Vec<Rational> = x.into_iter().map(int).collect();
        let g = grid_span(&x, &[&map(&e1), &map(&e2)], &[n1, n2]).unwrap();
        let support = ia_workbench::rational::support_size(&x);
        prop_assert!(g.dim() <= ((n1 + 1) * (n2 + 1)).min(support));
        prop_assert!(g.support().len() <= support);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sparsity_matches_exhaustive_search((n, a, _, _, _) in pair_case()) {
        let v = subspace(&a, n);
        let profile = sparsity_profile(&v, n, 1).unwrap();
        prop_assert_eq!(profile.len(), v.dim());
        let mut prev = 0;
        for r in &profile {
            let value = r.value.finite().unwrap();
            prop_assert!(r.exact);
            prop_assert!(value >= r.n);
            prop_assert!(value >= prev);
            prev = value;
            prop_assert_eq!(Some(value), brute_sparsity(&basis(&v), r.n, n));
            let s = r.witness_support.clone().unwrap();
            prop_assert_eq!(s.len(), value);
            prop_assert!(dim_on_support(&v, &s).unwrap() >= r.n);
        }
        prop_assert_eq!(n_sparsity(&v, v.dim() + 1, n, 1).unwrap().value, SparsityValue::Infinite);
    }

    #[test]
    fn extension_costs_at_most_its_width((n, a, _, e, _) in pair_case()) {
        let v = subspace(&a, n);
        let m = map(&e);
        let w = width(&v, &m).unwrap();
        let ext = extend(&v, &m, 1).unwrap();
        for r in sparsity_profile(&v, n, 1).unwrap() {
            let after = n_sparsity(&ext, r.n + w, n, 1).unwrap().value;
            prop_assert!(after >= r.value);
        }
    }

    #[test]
    fn block_contraction_keeps_sparsity(
        rows in rows_strategy(6, 4),
        e in prop::collection::vec(1i64..=4, 3),
    ) {
        // L = 3, T = 2
        let v = subspace(&rows, 6);
        let m = DiagMap::block_lift(e.into_iter().map(int).collect(), 2).unwrap();
        let c = contract(&v, &m, 1).unwrap();
        for nn in 1..=c.dim() {
            let before = n_sparsity(&v, nn, 3, 2).unwrap();
            let after = n_sparsity(&c, nn, 3, 2).unwrap();
            prop_assert!(before.lower_bound <= before.value);
            // certified lower bound after against the value before
            prop_assert!(after.value >= before.lower_bound);
            if before.exact && after.exact {
                prop_assert!(after.value >= before.value);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn block_witnesses_certify_values(rows in rows_strategy(8, 4)) {
        // L = 4, T = 2
        let v = subspace(&rows, 8);
        for r in sparsity_profile(&v, 4, 2).unwrap() {
            let value = r.value.finite().unwrap();
            let lower = r.lower_bound.finite().unwrap();
            prop_assert!(r.n <= lower && lower <= value);
            prop_assert_eq!(r.exact, lower == value);
            match (&r.witness_support, &r.witness_periods) {
                (Some(s), None) => {
                    prop_assert_eq!(s.len(), value);
                    prop_assert!(dim_on_support(&v, s).unwrap() >= r.n);
                }
                (None, Some(periods)) => {
                    let coords: Vec<usize> = (0..8).filter(|c| periods.contains(&(c % 4))).collect();
                    let u = v.intersect(&Subspace::coordinate(&coords, 8).unwrap()).unwrap();
                    prop_assert!(u.dim() >= r.n);
                    prop_assert_eq!(support_dim(&u, 4, 2).unwrap(), value);
                }
                _ => prop_assert!(false, "exactly one witness kind"),
            }
        }
    }
}

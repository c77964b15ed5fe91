//! Worked values checked twice: once against the library, once against the
//! reference routines in `common`.

mod common;

use common::{basis, brute_sparsity, diag_apply, intersection_dim, ints, rank, span_le, sum_dim};
use ia_workbench::alignment::{alignment_width, average_width, contract, extend, grid_span, second_order, width};
use ia_workbench::channel::{check_lin_indep, derive_t, sample_instance, t_family, ChannelInstance};
use ia_workbench::rational::{frac, int, Rational};
use ia_workbench::sparsity::{n_sparsity, support_dim, SparsityValue};
use ia_workbench::verify::builders::{build_orthogonal_scheme, random_search};
use ia_workbench::verify::{check_sparsity_requirement, check_width_requirement, grid_witness, verify_decoding};
use ia_workbench::{BlockProjection, DiagMap, Subspace};

fn sub(rows: &[&[i64]], n: usize) -> Subspace {
    Subspace::from_int_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), n).unwrap()
}

#[test]
fn proportional_rows_collapse_to_one_pivot() {
    let v = sub(&[&[2, 4], &[1, 2]], 2);
    assert_eq!(v.dim(), 1);
    assert_eq!(v.basis(), &[ints(&[1, 2])]);
    assert_eq!(rank(&[ints(&[2, 4]), ints(&[1, 2])]), 1);
}

#[test]
fn sum_of_two_lines_in_r3() {
    let a = sub(&[&[1, 1, 0]], 3);
    let b = sub(&[&[0, 1, 1]], 3);
    assert_eq!(a.sum(&b).unwrap().dim(), 2);
    assert_eq!(sum_dim(&basis(&a), &basis(&b)), 2);
}

#[test]
fn intersection_of_coordinate_planes() {
    let a = sub(&[&[1, 0, 0], &[0, 1, 0]], 3);
    let b = sub(&[&[0, 1, 0], &[0, 0, 1]], 3);
    let c = a.intersect(&b).unwrap();
    assert_eq!(c, sub(&[&[0, 1, 0]], 3));
    assert_eq!(intersection_dim(&basis(&a), &basis(&b)), 1);
}

#[test]
fn diagonal_image_of_a_line() {
    let v = sub(&[&[1, 1]], 2);
    let m = DiagMap::from_ints(&[2, 3], 1).unwrap();
    let image = v.apply(&m).unwrap();
    assert_eq!(image.basis(), &[vec![int(1), frac(3, 2)]]);
    let reference = diag_apply(&ints(&[2, 3]), &basis(&v));
    assert!(span_le(&reference, image.basis()) && span_le(image.basis(), &reference));
}

#[test]
fn cross_ratio_on_scalars() {
    // receiver 0 anchors; i = 1, j = 2, k = 3
    let mut h = vec![vec![vec![1u64]; 4]; 4];
    h[0][1] = vec![2];
    h[0][3] = vec![3];
    h[2][3] = vec![5];
    h[2][1] = vec![7];
    let inst = ChannelInstance::from_coefficients(1, 1, 16, 0, &h).unwrap();
    let t = derive_t(&inst, 1, 2, 3).unwrap();
    assert_eq!(t.entries(), &[frac(21, 10)]);
    assert!(derive_t(&inst, 1, 1, 3).is_err());
}

#[test]
fn family_sizes() {
    assert_eq!(t_family(&sample_instance(4, 2, 1, 16, 0).unwrap(), 1).unwrap().m(), 2);
    assert_eq!(t_family(&sample_instance(5, 2, 1, 16, 0).unwrap(), 1).unwrap().m(), (5 - 2) * (5 - 3));
    assert!(t_family(&sample_instance(3, 2, 1, 16, 0).unwrap(), 1).unwrap().is_empty());
}

#[test]
fn two_by_two_independence() {
    let t1 = DiagMap::from_ints(&[2, 3], 1).unwrap();
    let t2 = DiagMap::identity(2, 1);
    let v = ints(&[1, 1]);
    assert!(check_lin_indep(&[&t1, &t2], &[vec![0, 0], vec![1, 0]], &v).unwrap());
    assert_eq!(rank(&[ints(&[1, 1]), ints(&[2, 3])]), 2);
    let id = DiagMap::identity(2, 1);
    assert!(!check_lin_indep(&[&id, &t2], &[vec![0, 0], vec![1, 0]], &v).unwrap());
}

#[test]
fn block_projection_index() {
    assert_eq!(BlockProjection::new(1, 2, 2).unwrap().coordinates(), vec![1, 3]);
}

#[test]
fn extension_and_contraction_of_a_line() {
    let v = sub(&[&[1, 1]], 2);
    let m = DiagMap::from_ints(&[1, 2], 1).unwrap();
    assert!(extend(&v, &m, 1).unwrap().is_full());
    assert!(contract(&v, &m, 1).unwrap().is_zero());
    assert_eq!(rank(&[ints(&[1, 1]), ints(&[1, 2])]), 2);
    assert_eq!(width(&v, &m).unwrap(), 1);
}

#[test]
fn second_order_on_a_generic_plane() {
    let inst = sample_instance(4, 4, 1, 16, 21).unwrap();
    let fam = t_family(&inst, 1).unwrap();
    let v = sub(&[&[1, -2, 3, 1], &[0, 1, 1, -1]], 4);
    let (t1, t2) = (fam.map(0), fam.map(1));
    let r = second_order(&v, t1, t2).unwrap();
    // recompute every width from ranks
    let w = |rows: &[Vec<Rational>]| sum_dim(rows, &diag_apply(t1.entries(), rows)) - rank(rows);
    let b = basis(&v);
    let ext = basis(&extend(&v, t2, 1).unwrap());
    let con = basis(&contract(&v, t2, 1).unwrap());
    assert_eq!(r.ext2, w(&ext) as i64 - w(&b) as i64);
    assert_eq!(r.con2, w(&b) as i64 - w(&con) as i64);
    assert!(r.ext2 <= r.con2);
}

#[test]
fn average_width_matches_members() {
    let inst = sample_instance(4, 4, 1, 16, 5).unwrap();
    let fam = t_family(&inst, 1).unwrap();
    let v = sub(&[&[1, 2, 0, -1], &[0, 1, 3, 1]], 4);
    let total: usize = fam.maps().iter().map(|m| alignment_width(&v, m).unwrap().width).sum();
    assert_eq!(average_width(&v, &fam).unwrap(), frac(total as i64, fam.m() as i64));
}

#[test]
fn grid_span_dimension_law() {
    let inst = sample_instance(4, 4, 1, 16, 8).unwrap();
    let fam = t_family(&inst, 1).unwrap();
    let maps = [fam.map(0), fam.map(1)];
    let explicit = |x: &[Rational]| -> usize {
        let mut rows = Vec::new();
        for a in 0..=1 {
            for b in 0..=1 {
                rows.push(maps[0].pow(a).compose(&maps[1].pow(b)).unwrap().apply_vector(x).unwrap());
            }
        }
        rank(&rows)
    };
    let ones = vec![int(1); 4];
    assert_eq!(grid_span(&ones, &maps, &[1, 1]).unwrap().dim(), 4);
    assert_eq!(explicit(&ones), 4);
    let inst3 = sample_instance(4, 3, 1, 16, 8).unwrap();
    let fam3 = t_family(&inst3, 1).unwrap();
    let x = ints(&[1, 0, 1]);
    assert_eq!(grid_span(&x, &[fam3.map(0), fam3.map(1)], &[1, 1]).unwrap().dim(), 2);
}

#[test]
fn sparsity_of_a_small_plane() {
    let v = sub(&[&[1, 0, 0], &[0, 1, 1]], 3);
    assert_eq!(support_dim(&v, 3, 1).unwrap(), 3);
    let one = n_sparsity(&v, 1, 3, 1).unwrap();
    assert_eq!(one.value, SparsityValue::Finite(1));
    assert_eq!(one.witness_support, Some(vec![0]));
    assert_eq!(n_sparsity(&v, 2, 3, 1).unwrap().value, SparsityValue::Finite(3));
    assert_eq!(n_sparsity(&v, 3, 3, 1).unwrap().value, SparsityValue::Infinite);
    assert_eq!(brute_sparsity(&basis(&v), 1, 3), Some(1));
    assert_eq!(brute_sparsity(&basis(&v), 2, 3), Some(3));
}

#[test]
fn orthogonal_scheme_at_k4_l8() {
    let inst = sample_instance(4, 8, 1, 16, 2).unwrap();
    let s = build_orthogonal_scheme(4, 8, 1, 2).unwrap();
    let r = verify_decoding(&inst, &s).unwrap();
    assert!(r.feasible);
    assert_eq!(r.dof, int(1));
    assert!(check_width_requirement(&inst, &s).unwrap().iter().all(|c| c.pass && c.width <= 2));
    assert!(check_sparsity_requirement(&inst, &s).unwrap().iter().all(|c| c.pass));
    let fam = t_family(&inst, 1).unwrap();
    let w = grid_witness(s.subspace(1), fam.map(0), fam.map(1), 2, &frac(1, 2), 8).unwrap();
    assert!(w.inequality_holds);
}

#[test]
fn orthogonal_scheme_at_k3_l3() {
    let inst = sample_instance(3, 3, 1, 16, 2).unwrap();
    assert_eq!(verify_decoding(&inst, &build_orthogonal_scheme(3, 3, 1, 1).unwrap()).unwrap().dof, int(1));
}

#[test]
fn random_lines_at_k3_l3() {
    for seed in 0..10 {
        let inst = sample_instance(3, 3, 1, 16, seed).unwrap();
        let found = random_search(&inst, 1, 10, seed).unwrap();
        let s = found.scheme.expect("a feasible scheme within 10 trials");
        assert!(found.trials <= 3);
        // every receiver: signal line outside the interference plane
        for i in 0..3 {
            let sig = diag_apply(inst.h(i, i).entries(), &basis(s.subspace(i)));
            let mut intf = Vec::new();
            for j in (0..3).filter(|&j| j != i) {
                intf.extend(diag_apply(inst.h(i, j).entries(), &basis(s.subspace(j))));
            }
            assert_eq!(intersection_dim(&sig, &intf), 0);
        }
    }
}

#[test]
fn random_scheme_k3_l6_meets_sparsity_requirement() {
    let inst = sample_instance(3, 6, 1, 16, 4).unwrap();
    let s = random_search(&inst, 2, 20, 4).unwrap().scheme.expect("feasible");
    let checks = check_sparsity_requirement(&inst, &s).unwrap();
    assert_eq!(checks.len(), 6);
    for c in &checks {
        let brute = brute_sparsity(&basis(s.subspace(c.i)), c.n, 6).unwrap();
        assert_eq!(c.sp, SparsityValue::Finite(brute));
        assert!(c.pass);
    }
    assert!(check_width_requirement(&inst, &s).unwrap().is_empty());
}

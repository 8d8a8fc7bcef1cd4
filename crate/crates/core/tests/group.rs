use std::collections::BTreeSet;

use proptest::prelude::*;
use qcentral::free_model::{free_level3, Variant};
use qcentral::group::{
    build_group, commutator_subgroup, cyclic, dihedral4, direct_product, elementary_abelian, enumerate_homs,
    fibred_product, heisenberg, is_isomorphic, lower3, modular, normal_subgroups_within, power_subgroup,
    q_central_series, quaternion8, quotient, subgroup_closure, FiniteGroup, GroupHom, GroupSpecDocument, Subgroup,
};
use qcentral::zq::Modulus;
use qcentral::Error;

fn md(q: u32) -> Modulus {
    Modulus::new(q).unwrap()
}

fn element_of_order(g: &FiniteGroup, n: usize) -> usize {
    (0..g.order()).find(|&x| g.element_order(x) == n).unwrap()
}

fn center(g: &FiniteGroup) -> Vec<usize> {
    (0..g.order()).filter(|&x| g.is_central(x)).collect()
}

/// `<x^m : x in H>` computed by brute closure.
fn brute_power(g: &FiniteGroup, h: &Subgroup, m: u64) -> BTreeSet<usize> {
    closure(g, h.members().iter().map(|&x| g.pow(x, m)).collect())
}

fn closure(g: &FiniteGroup, seeds: Vec<usize>) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = seeds.into_iter().chain([g.identity()]).collect();
    loop {
        let next: BTreeSet<usize> = set.iter().flat_map(|&a| set.iter().map(move |&b| (a, b))).map(|(a, b)| g.mul(a, b)).collect();
        if next == set {
            return set;
        }
        set = next;
    }
}

fn members(s: &Subgroup) -> BTreeSet<usize> {
    s.members().iter().copied().collect()
}

fn test_groups() -> Vec<FiniteGroup> {
    vec![
        cyclic(16).unwrap(),
        dihedral4().unwrap(),
        quaternion8().unwrap(),
        heisenberg(3).unwrap(),
        modular(3).unwrap(),
        elementary_abelian(2, 3).unwrap(),
        direct_product(&dihedral4().unwrap(), &cyclic(2).unwrap()).unwrap(),
        free_level3(2, md(2), Variant::Sharp).unwrap().group,
        free_level3(2, md(3), Variant::Sharp).unwrap().group,
    ]
}

fn assert_associative(g: &FiniteGroup) {
    let n = g.order();
    for a in 0..n {
        for b in 0..n {
            let ab = g.mul(a, b);
            for c in 0..n {
                assert_eq!(g.mul(ab, c), g.mul(a, g.mul(b, c)));
            }
        }
    }
}

#[test]
fn presets_have_the_expected_shape() {
    assert_eq!(cyclic(16).unwrap().order(), 16);
    let h = heisenberg(3).unwrap();
    assert_eq!((h.order(), h.exponent(), h.is_abelian()), (27, 3, false));
    let m = modular(3).unwrap();
    assert_eq!((m.order(), m.exponent(), m.is_abelian()), (27, 9, false));
    assert_eq!(elementary_abelian(3, 2).unwrap().order(), 9);
    let d4 = dihedral4().unwrap();
    assert_eq!((d4.order(), center(&d4).len()), (8, 2));
    let h5 = heisenberg(5).unwrap();
    assert_eq!(h5.order(), 125);
    assert!((1..125).all(|x| h5.element_order(x) == 5));
    assert!(matches!(heisenberg(2), Err(Error::InvalidParams(_))));
    assert!(matches!(modular(4), Err(Error::InvalidParams(_))));
}

#[test]
fn every_test_group_is_associative() {
    for g in test_groups() {
        assert_associative(&g);
    }
}

#[test]
fn build_group_from_each_source() {
    let doc: GroupSpecDocument = serde_json::from_str(r#"{"preset": {"name": "cyclic", "params": {"n": 16}}}"#).unwrap();
    assert_eq!(build_group(&doc, 4096).unwrap().order(), 16);
    let doc: GroupSpecDocument =
        serde_json::from_str(r#"{"permutations": {"degree": 4, "generators": [[2,3,4,1],[1,4,3,2]]}}"#).unwrap();
    let g = build_group(&doc, 4096).unwrap();
    assert!(is_isomorphic(&g, &dihedral4().unwrap()).unwrap());
    let q8 = quaternion8().unwrap();
    let doc = GroupSpecDocument {
        table: Some(q8.table_rows()),
        ..Default::default()
    };
    assert!(is_isomorphic(&build_group(&doc, 4096).unwrap(), &q8).unwrap());
    // 0 - 1 - 2 with x*y = x - y mod 3 is not associative.
    let bad = GroupSpecDocument {
        table: Some(vec![vec![0, 2, 1], vec![1, 0, 2], vec![2, 1, 0]]),
        ..Default::default()
    };
    assert!(build_group(&bad, 4096).is_err());
    let big: GroupSpecDocument = serde_json::from_str(r#"{"preset": {"name": "cyclic", "params": {"n": 64}}}"#).unwrap();
    assert!(matches!(build_group(&big, 32), Err(Error::LimitExceeded { .. })));
}

#[test]
fn subgroup_closure_examples() {
    let d4 = dihedral4().unwrap();
    assert!(subgroup_closure(&d4, &[d4.identity()]).is_trivial());
    let r = element_of_order(&d4, 4);
    assert_eq!(subgroup_closure(&d4, &[r]).order(), 4);
    let h = heisenberg(3).unwrap();
    let t = h.commutator(h.generators()[0], h.generators()[1]);
    let z = subgroup_closure(&h, &[t]);
    assert_eq!(members(&z), center(&h).into_iter().collect());
}

#[test]
fn power_and_commutator_subgroups() {
    let z16 = cyclic(16).unwrap();
    let p = power_subgroup(&z16, &Subgroup::whole(&z16), 4);
    assert_eq!(p.order(), 4);
    let h = heisenberg(3).unwrap();
    assert!(power_subgroup(&h, &Subgroup::whole(&h), 3).is_trivial());
    let m = modular(3).unwrap();
    let pm = power_subgroup(&m, &Subgroup::whole(&m), 3);
    assert_eq!(pm.order(), 3);
    assert!(pm.contains(m.pow(m.generators()[0], 3)));

    assert!(commutator_subgroup(&z16, &Subgroup::whole(&z16), &Subgroup::whole(&z16)).is_trivial());
    let d4 = dihedral4().unwrap();
    let r = element_of_order(&d4, 4);
    let c = commutator_subgroup(&d4, &Subgroup::whole(&d4), &Subgroup::whole(&d4));
    assert_eq!(members(&c), BTreeSet::from([0, d4.pow(r, 2)]));
    let ch = commutator_subgroup(&h, &Subgroup::whole(&h), &Subgroup::whole(&h));
    assert_eq!(members(&ch), center(&h).into_iter().collect());
}

#[test]
fn q_central_series_examples() {
    let z16 = cyclic(16).unwrap();
    let s = q_central_series(&z16, md(4), 3);
    assert_eq!(s.orders(), [16, 4, 1]);
    assert_eq!(s.lower3.order(), 2);
    assert_eq!(s.delta, 2);

    let h = heisenberg(3).unwrap();
    let s = q_central_series(&h, md(3), 3);
    assert_eq!(s.orders(), [27, 3, 1]);
    assert!(s.lower3.is_trivial());

    let d4 = dihedral4().unwrap();
    let s = q_central_series(&d4, md(2), 3);
    assert_eq!(s.orders(), [8, 2, 1]);
    assert!(s.lower3.is_trivial());
}

#[test]
fn series_recursion_and_containments() {
    for g in test_groups() {
        let p = g.order().trailing_zeros();
        let prime = if p > 0 { 2 } else { 3 };
        for q in [prime, prime * prime] {
            let m = md(q);
            let s = q_central_series(&g, m, 4);
            for w in s.terms.windows(2) {
                let pw = brute_power(&g, &w[0], q as u64);
                let comm: Vec<usize> = w[0]
                    .members()
                    .iter()
                    .flat_map(|&x| (0..g.order()).map(move |y| (x, y)))
                    .map(|(x, y)| g.commutator(x, y))
                    .collect();
                let expected = closure(&g, pw.into_iter().chain(comm).collect());
                assert_eq!(members(&w[1]), expected);
            }
            let g2 = &s.terms[1];
            let g3 = s.term(3).unwrap();
            assert!(g3.is_subgroup_of(&s.lower3) && s.lower3.is_subgroup_of(g2));
            if q == 2 {
                assert_eq!(g3, &s.lower3);
            }
            assert_eq!(lower3(&g, m), s.lower3);
        }
    }
}

#[test]
fn quotient_examples() {
    let d4 = dihedral4().unwrap();
    assert_eq!(quotient(&d4, &Subgroup::whole(&d4)).unwrap().quotient.order(), 1);
    let h = heisenberg(3).unwrap();
    let z = subgroup_closure(&h, &center(&h));
    let qh = quotient(&h, &z).unwrap();
    assert!(is_isomorphic(&qh.quotient, &elementary_abelian(3, 2).unwrap()).unwrap());
    let zd = subgroup_closure(&d4, &center(&d4));
    let qd = quotient(&d4, &zd).unwrap();
    assert!(is_isomorphic(&qd.quotient, &elementary_abelian(2, 2).unwrap()).unwrap());
    assert_eq!(qd.projection.kernel(&d4), zd);
    let s = subgroup_closure(&d4, &[4]);
    assert!(!s.is_normal_in(&d4));
    assert!(matches!(quotient(&d4, &s), Err(Error::NotNormal(_))));
}

/// All homomorphisms found by trying every assignment of generator images
/// and checking the full table.
fn brute_hom_count(g: &FiniteGroup, b: &FiniteGroup, surjective: bool) -> usize {
    let gens = g.generators();
    let mut count = 0;
    let mut images = vec![0usize; gens.len()];
    loop {
        let mut map = vec![usize::MAX; g.order()];
        map[g.identity()] = b.identity();
        for &x in g.bfs_order().iter().skip(1) {
            let (y, i) = g.tree_parent(x);
            map[x] = b.mul(map[y], images[i]);
        }
        let hom = (0..g.order()).all(|x| (0..g.order()).all(|y| map[g.mul(x, y)] == b.mul(map[x], map[y])));
        let onto = map.iter().collect::<BTreeSet<_>>().len() == b.order();
        if hom && (onto || !surjective) {
            count += 1;
        }
        let mut k = 0;
        while k < images.len() {
            images[k] += 1;
            if images[k] < b.order() {
                break;
            }
            images[k] = 0;
            k += 1;
        }
        if k == images.len() {
            return count;
        }
    }
}

#[test]
fn enumerate_homs_examples() {
    let z3 = cyclic(3).unwrap();
    let z2 = cyclic(2).unwrap();
    let homs = enumerate_homs(&z3, &z2, false).unwrap();
    assert_eq!(homs.len(), 1);
    let e9 = elementary_abelian(3, 2).unwrap();
    let epis = enumerate_homs(&e9, &z3, true).unwrap();
    assert_eq!(epis.len(), 8);
    let kernels: BTreeSet<Vec<usize>> = epis.iter().map(|f| f.kernel(&e9).members().to_vec()).collect();
    assert_eq!(kernels.len(), 4);
    assert!(enumerate_homs(&modular(3).unwrap(), &heisenberg(3).unwrap(), true).unwrap().is_empty());
}

#[test]
fn enumerate_homs_matches_exhaustive_search() {
    let small = [
        cyclic(4).unwrap(),
        cyclic(8).unwrap(),
        dihedral4().unwrap(),
        quaternion8().unwrap(),
        elementary_abelian(2, 2).unwrap(),
        cyclic(9).unwrap(),
        elementary_abelian(3, 2).unwrap(),
        heisenberg(3).unwrap(),
        modular(3).unwrap(),
    ];
    for g in &small {
        for b in &small {
            if g.order() % 2 != b.order() % 2 {
                continue;
            }
            for surjective in [false, true] {
                let homs = enumerate_homs(g, b, surjective).unwrap();
                for f in &homs {
                    for x in 0..g.order() {
                        for y in 0..g.order() {
                            assert_eq!(f.apply(g.mul(x, y)), b.mul(f.apply(x), f.apply(y)));
                        }
                    }
                }
                assert_eq!(homs.len(), brute_hom_count(g, b, surjective));
            }
        }
    }
}

#[test]
fn isomorphism_examples() {
    assert!(!is_isomorphic(&heisenberg(3).unwrap(), &modular(3).unwrap()).unwrap());
    assert!(!is_isomorphic(&dihedral4().unwrap(), &quaternion8().unwrap()).unwrap());
    let flat = free_level3(2, md(3), Variant::Flat).unwrap().group;
    assert!(is_isomorphic(&flat, &heisenberg(3).unwrap()).unwrap());
    let z2z4 = direct_product(&cyclic(2).unwrap(), &cyclic(4).unwrap()).unwrap();
    let z4z2 = direct_product(&cyclic(4).unwrap(), &cyclic(2).unwrap()).unwrap();
    assert!(is_isomorphic(&z2z4, &z4z2).unwrap());
    assert!(!is_isomorphic(&z2z4, &cyclic(8).unwrap()).unwrap());
}

#[test]
fn normal_subgroups_examples() {
    let d4 = dihedral4().unwrap();
    let one = normal_subgroups_within(&d4, &Subgroup::trivial(&d4)).unwrap();
    assert_eq!(one.len(), 1);
    let zd = subgroup_closure(&d4, &center(&d4));
    assert_eq!(normal_subgroups_within(&d4, &zd).unwrap().len(), 2);
    let h = heisenberg(3).unwrap();
    let zh = subgroup_closure(&h, &center(&h));
    assert_eq!(normal_subgroups_within(&h, &zh).unwrap().len(), 2);
    // Normal subgroups of D4: 1, Z, three of order 4, D4.
    let all = normal_subgroups_within(&d4, &Subgroup::whole(&d4)).unwrap();
    assert_eq!(all.len(), 6);
    assert!(all.iter().all(|n| n.is_normal_in(&d4)));
}

#[test]
fn fibred_product_examples() {
    let q = dihedral4().unwrap();
    let id = GroupHom::identity(&q);
    let diag = fibred_product(&q, &id, &q, &id).unwrap();
    assert!(is_isomorphic(&diag.group, &q).unwrap());

    let z4 = cyclic(4).unwrap();
    let z2 = cyclic(2).unwrap();
    let red = GroupHom::from_generator_images(&z4, &z2, &[1]).unwrap();
    let fp = fibred_product(&z4, &red, &z2, &GroupHom::identity(&z2)).unwrap();
    assert_eq!(fp.group.order(), 4);

    let h = heisenberg(3).unwrap();
    let e2 = elementary_abelian(3, 2).unwrap();
    let e3 = elementary_abelian(3, 3).unwrap();
    let f = GroupHom::from_generator_images(&h, &e2, e2.generators()).unwrap();
    let g = GroupHom::from_generator_images(&e3, &e2, &[e2.generators()[0], e2.generators()[1], 0]).unwrap();
    let fp = fibred_product(&h, &f, &e3, &g).unwrap();
    assert_eq!(fp.group.order(), 81);
    for (i, &(x, y)) in fp.pairs.iter().enumerate() {
        assert_eq!(fp.left.apply(i), x);
        assert_eq!(fp.right.apply(i), y);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quotient_kernel_is_the_subgroup(which in 0usize..9, picks in prop::collection::vec(0usize..1000, 0..3)) {
        let g = &test_groups()[which];
        let seeds: Vec<usize> = picks.iter().map(|&i| i % g.order()).collect();
        let n = subgroup_closure(g, &seeds).normal_closure(g);
        let q = quotient(g, &n).unwrap();
        prop_assert_eq!(q.projection.kernel(g), n.clone());
        prop_assert_eq!(q.quotient.order() * n.order(), g.order());
    }

    #[test]
    fn closure_is_the_smallest_subgroup(which in 0usize..9, picks in prop::collection::vec(0usize..1000, 0..3)) {
        let g = &test_groups()[which];
        let seeds: Vec<usize> = picks.iter().map(|&i| i % g.order()).collect();
        let s = subgroup_closure(g, &seeds);
        prop_assert_eq!(members(&s), closure(g, seeds));
    }
}

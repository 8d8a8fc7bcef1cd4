use qcentral::cohomology::*;
use qcentral::free_model::{free_level3, Variant};
use qcentral::group::*;
use qcentral::zq::Modulus;

fn md(q: u32) -> Modulus {
    Modulus::new(q).unwrap()
}

#[test]
fn h2_dimensions_elementary() {
    for (q, d, expect) in [(2, 1, 1), (2, 2, 3), (3, 2, 3), (2, 3, 6), (3, 3, 6), (4, 2, 3)] {
        let g = elementary_abelian(q, d).unwrap();
        let h = h2(&g, md(q as u32)).unwrap();
        let s = h.summary();
        assert_eq!(s.rank, expect, "q={q} d={d}");
        assert!(s.free);
    }
}

#[test]
fn h1_examples() {
    assert_eq!(h1(&dihedral4().unwrap(), md(2)).rank(), 2);
    assert_eq!(h1(&heisenberg(3).unwrap(), md(3)).rank(), 2);
}

#[test]
fn degree_two_data_heisenberg() {
    let g = heisenberg(3).unwrap();
    let data = DegreeTwoData::new(&g, md(3)).unwrap();
    assert_eq!(data.d(), 2);
    assert_eq!(data.classes.relations().log_order(), 0);
    assert_eq!(data.dec.log_order(), 1);
    assert_eq!(data.kernel.log_order(), 1);
    assert!(data.kernel.is_subset_of(&data.dec));
}

#[test]
fn five_term_small() {
    let g = dihedral4().unwrap();
    let t = next_term(&g, md(2), &Subgroup::whole(&g));
    let r = five_term_check(&g, &t, md(2)).unwrap();
    assert!(r.exact(), "{r:?}");
    let s = free_level3(2, md(3), Variant::Sharp).unwrap();
    let t = next_term(&s.group, md(3), &Subgroup::whole(&s.group));
    let r = five_term_check(&s.group, &t, md(3)).unwrap();
    assert!(r.exact(), "{r:?}");
}

mod operations {
    use proptest::prelude::*;
    use qcentral::cohomology::*;
    use qcentral::duality::character_with_values;
    use qcentral::free_model::{free_level3, Variant};
    use qcentral::group::*;
    use qcentral::zq::{howell_form, kernel, Modulus, ZqMatrix};
    use qcentral::Error;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn md(q: u32) -> Modulus {
        Modulus::new(q).unwrap()
    }

    fn zero_class(g: &FiniteGroup, c: &Cochain2) -> bool {
        is_coboundary(g, c).unwrap().is_some()
    }

    /// `log_p |H^2|` from the full normalized cochain complex: cocycles as a
    /// kernel, coboundaries as an image.
    fn brute_h2_log(g: &FiniteGroup, m: Modulus) -> u32 {
        let n = g.order();
        let idx = |x: usize, y: usize| (x - 1) * (n - 1) + (y - 1);
        let unknowns = (n - 1) * (n - 1);
        let mut rows = Vec::new();
        for x in 1..n {
            for y in 1..n {
                for z in 1..n {
                    // c(x,y) + c(xy,z) - c(y,z) - c(x,yz) = 0
                    let mut row = vec![0u32; unknowns];
                    let mut add = |a: usize, b: usize, s: u32| {
                        if a != 0 && b != 0 {
                            let k = idx(a, b);
                            row[k] = m.add(row[k], s);
                        }
                    };
                    add(x, y, 1);
                    add(g.mul(x, y), z, 1);
                    add(y, z, m.neg(1));
                    add(x, g.mul(y, z), m.neg(1));
                    rows.push(row);
                }
            }
        }
        let cocycles = kernel(&ZqMatrix::from_residue_rows(m, unknowns, &rows));
        let z_log = howell_form(&cocycles).log_size();
        let boundaries: Vec<Vec<u32>> = (1..n)
            .map(|e| {
                // du(x,y) = u(x) + u(y) - u(xy) for u the indicator of e.
                let mut row = vec![0u32; unknowns];
                for x in 1..n {
                    for y in 1..n {
                        let v = u32::from(x == e) + u32::from(y == e);
                        let v = m.sub(v % m.q(), u32::from(g.mul(x, y) == e));
                        row[idx(x, y)] = v;
                    }
                }
                row
            })
            .collect();
        let b_log = howell_form(&ZqMatrix::from_residue_rows(m, unknowns, &boundaries)).log_size();
        z_log - b_log
    }

    #[test]
    fn h1_bases_are_characters() {
        let e = elementary_abelian(3, 2).unwrap();
        let h = h1(&e, md(3));
        assert_eq!(h.rank(), 2);
        for (g, q) in [(e, 3), (dihedral4().unwrap(), 2), (heisenberg(3).unwrap(), 3), (cyclic(8).unwrap(), 4)] {
            for chi in &h1(&g, md(q)).basis {
                assert!(chi.is_homomorphism(&g));
            }
        }
        assert_eq!(h1(&cyclic(8).unwrap(), md(4)).summary().invariants, [4]);
    }

    #[test]
    fn h2_matches_the_cochain_complex() {
        let cases: Vec<(FiniteGroup, u32)> = vec![
            (elementary_abelian(2, 2).unwrap(), 2),
            (elementary_abelian(3, 2).unwrap(), 3),
            (cyclic(4).unwrap(), 2),
            (cyclic(4).unwrap(), 4),
            (cyclic(8).unwrap(), 4),
            (dihedral4().unwrap(), 2),
            (quaternion8().unwrap(), 2),
            (dihedral4().unwrap(), 4),
            (direct_product(&cyclic(2).unwrap(), &cyclic(4).unwrap()).unwrap(), 4),
            (cyclic(9).unwrap(), 3),
        ];
        for (g, q) in cases {
            let h = h2(&g, md(q)).unwrap();
            assert_eq!(h.summary().log_order, brute_h2_log(&g, md(q)), "order {} q={q}", g.order());
            for (c, _) in h.basis() {
                assert!(c.is_cocycle(&g));
            }
        }
    }

    #[test]
    fn h2_of_cyclic_group_is_generated_by_bockstein() {
        for q in [2u32, 3, 4, 5, 9] {
            let g = cyclic(q as usize).unwrap();
            let h = h2(&g, md(q)).unwrap();
            assert_eq!(h.summary().invariants, [q as u64]);
            let chi = &h1(&g, md(q)).basis[0];
            let v = h.class_of(&bockstein(&g, chi).unwrap()).unwrap();
            assert_eq!(h.presentation().order_of(&v), q as u64);
        }
    }

    #[test]
    fn coboundary_examples() {
        let g = cyclic(4).unwrap();
        let zero = Cochain2::zero(md(4), 4);
        assert!(is_coboundary(&g, &zero).unwrap().unwrap().is_zero());
        let chi = &h1(&g, md(4)).basis[0];
        assert!(is_coboundary(&g, &bockstein(&g, chi).unwrap()).unwrap().is_none());

        let h = heisenberg(3).unwrap();
        let data = DegreeTwoData::new(&h, md(3)).unwrap();
        let base = data.base();
        let cup = cup11(base, &data.frame.character(&[1, 0]), &data.frame.character(&[0, 1])).unwrap();
        assert!(!zero_class(base, &cup));
        let up = inflation(data.projection(), &cup).unwrap();
        let u = is_coboundary(&h, &up).unwrap().expect("inflated cup product is a coboundary");
        assert_eq!(u.coboundary(&h), up);

        let bad = Cochain2::from_fn(md(4), 4, |x, y| i64::from(x == 1 && y == 2));
        assert!(matches!(is_coboundary(&g, &bad), Err(Error::NotCocycle(_))));
    }

    #[test]
    fn cup_product_examples() {
        let z2 = cyclic(2).unwrap();
        let chi = &h1(&z2, md(2)).basis[0];
        let zero = Cochain1::zero(md(2), 2);
        assert!(cup11(&z2, chi, &zero).unwrap().is_zero());
        let sq = cup11(&z2, chi, chi).unwrap();
        assert!(zero_class(&z2, &sq.sub(&bockstein(&z2, chi).unwrap())));

        let e = elementary_abelian(3, 2).unwrap();
        let b = h1(&e, md(3)).basis;
        let c12 = cup11(&e, &b[0], &b[1]).unwrap();
        let c21 = cup11(&e, &b[1], &b[0]).unwrap();
        assert!(!zero_class(&e, &c12));
        assert!(zero_class(&e, &c12.add(&c21)));
        assert!(matches!(cup11(&z2, chi, &Cochain1::zero(md(2), 4)), Err(Error::CarrierMismatch(_))));
    }

    #[test]
    fn bockstein_examples() {
        for q in [2u32, 3, 4] {
            let g = cyclic((q * q) as usize).unwrap();
            for chi in &h1(&g, md(q)).basis {
                assert!(zero_class(&g, &bockstein(&g, chi).unwrap()));
            }
        }
        let e = elementary_abelian(3, 2).unwrap();
        let b = h1(&e, md(3)).basis;
        let sum = b[0].add(&b[1]);
        let lhs = bockstein(&e, &sum).unwrap();
        let rhs = bockstein(&e, &b[0]).unwrap().add(&bockstein(&e, &b[1]).unwrap());
        assert!(zero_class(&e, &lhs.sub(&rhs)));
    }

    #[test]
    fn bockstein_is_independent_of_the_lift() {
        for (g, q) in [(elementary_abelian(3, 2).unwrap(), 3u32), (cyclic(8).unwrap(), 4), (dihedral4().unwrap(), 2)] {
            for chi in &h1(&g, md(q)).basis {
                let a = bockstein(&g, chi).unwrap();
                let shifted = bockstein_with_lift(&g, chi, |i| if i % 2 == 1 { i as u64 + q as u64 } else { i as u64 }).unwrap();
                assert!(a.is_cocycle(&g) && shifted.is_cocycle(&g));
                assert!(zero_class(&g, &a.sub(&shifted)));
            }
        }
    }

    #[test]
    fn invariant_characters_examples() {
        let e = elementary_abelian(2, 3).unwrap();
        let t = subgroup_closure(&e, &e.generators()[..2]);
        let inv = invariants_h1(&e, &t, md(2)).unwrap();
        assert_eq!(inv.module().log_order(), 2);

        let s = free_level3(2, md(3), Variant::Sharp).unwrap().group;
        let t = next_term(&s, md(3), &Subgroup::whole(&s));
        assert_eq!(invariants_h1(&s, &t, md(3)).unwrap().module().log_order(), 3);

        let d4 = dihedral4().unwrap();
        let z = next_term(&d4, md(2), &Subgroup::whole(&d4));
        assert_eq!(invariants_h1(&d4, &z, md(2)).unwrap().module().log_order(), 1);
    }

    fn random_section(trg: &Transgression, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let proj = &trg.quotient.projection;
        let mut fibres = vec![Vec::new(); trg.base().order()];
        for x in 0..trg.group.order() {
            fibres[proj.apply(x)].push(x);
        }
        fibres
            .iter()
            .enumerate()
            .map(|(i, f)| if i == 0 { 0 } else { f[rng.gen_range(0..f.len())] })
            .collect()
    }

    #[test]
    fn transgression_examples() {
        let z4 = cyclic(4).unwrap();
        let t = next_term(&z4, md(2), &Subgroup::whole(&z4));
        let trg = Transgression::new(&z4, &t, md(2)).unwrap();
        assert!(trg.cocycle(&[0]).unwrap().is_zero());
        let c = trg.cocycle(&[1]).unwrap();
        assert!(c.is_cocycle(trg.base()));
        assert!(!zero_class(trg.base(), &c));

        let model = free_level3(2, md(3), Variant::Sharp).unwrap();
        let g = &model.group;
        let data = DegreeTwoData::with_lifts(g, md(3), &model.sigma).unwrap();
        let trg = Transgression::new(g, &data.level2, md(3)).unwrap();
        let (s1, s2) = (model.sigma[0], model.sigma[1]);
        let psi = character_with_values(
            &trg.invariants,
            &[g.pow(s1, 3), g.pow(s2, 3), g.commutator(s1, s2)],
            &[0, 0, 1],
        )
        .unwrap()
        .unwrap();
        let v = data.classes.express_one(&trg.cocycle(&psi).unwrap()).unwrap();
        let cup = data.frame.cup_vector(&[1, 0], &[0, 1]);
        let m = md(3);
        let plus: Vec<u32> = v.iter().zip(&cup).map(|(&a, &b)| m.sub(a, b)).collect();
        let minus: Vec<u32> = v.iter().zip(&cup).map(|(&a, &b)| m.add(a, b)).collect();
        assert!(data.classes.relations().contains(&plus) || data.classes.relations().contains(&minus));
    }

    #[test]
    fn transgression_is_independent_of_the_section() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cases = [
            (dihedral4().unwrap(), 2u32),
            (quaternion8().unwrap(), 2),
            (heisenberg(3).unwrap(), 3),
            (cyclic(16).unwrap(), 4),
        ];
        for (g, q) in cases {
            let t = next_term(&g, md(q), &Subgroup::whole(&g));
            let trg = Transgression::new(&g, &t, md(q)).unwrap();
            for psi in trg.generators() {
                let base = trg.cocycle(&psi).unwrap();
                for _ in 0..10 {
                    let s = random_section(&trg, &mut rng);
                    let other = trg.cocycle_with_section(&psi, &s).unwrap();
                    assert!(zero_class(trg.base(), &base.sub(&other)));
                }
            }
        }
    }

    #[test]
    fn pairing_is_well_defined_modulo_restrictions() {
        // Characters of G vanish on G^(2), so adding one to psi never changes psi on T.
        for (g, q) in [(dihedral4().unwrap(), 2u32), (heisenberg(3).unwrap(), 3), (modular(3).unwrap(), 3)] {
            let t = next_term(&g, md(q), &Subgroup::whole(&g));
            for theta in &h1(&g, md(q)).basis {
                assert!(t.members().iter().all(|&x| theta.value(x) == 0));
            }
        }
    }

    #[test]
    fn inflation_and_restriction_examples() {
        let d4 = dihedral4().unwrap();
        let z = next_term(&d4, md(2), &Subgroup::whole(&d4));
        let qd = quotient(&d4, &z).unwrap();
        let zero = Cochain2::zero(md(2), qd.quotient.order());
        assert!(inflation(&qd.projection, &zero).unwrap().is_zero());

        let e = elementary_abelian(3, 2).unwrap();
        let b = h1(&e, md(3)).basis;
        let first: Vec<usize> = (0..e.order()).filter(|&x| b[1].value(x) == 0).collect();
        let k = Subgroup::from_members(&e, &first).unwrap();
        let (kg, embedding) = k.as_group(&e).unwrap();
        let res = restriction(&embedding, &cup11(&e, &b[0], &b[1]).unwrap()).unwrap();
        assert!(zero_class(&kg, &res));
        assert!(matches!(restriction(&[100], &Cochain2::zero(md(3), 9)), Err(Error::CarrierMismatch(_))));

        for (g, q) in [(d4.clone(), 2u32), (heisenberg(3).unwrap(), 3), (cyclic(16).unwrap(), 4)] {
            let t = next_term(&g, md(q), &Subgroup::whole(&g));
            let qt = quotient(&g, &t).unwrap();
            let inflated: Vec<Cochain1> = h1(&qt.quotient, md(q))
                .basis
                .iter()
                .map(|c| inflation1(&qt.projection, c).unwrap())
                .collect();
            assert!(inflated.iter().all(|c| c.is_homomorphism(&g)));
            let r = five_term_check(&g, &t, md(q)).unwrap();
            assert!(r.injective_inflation);
            assert_eq!(r.log_orders.h1_quotient, r.log_orders.h1_group);
        }
    }

    #[test]
    fn decomposable_part_examples() {
        let cases = [(elementary_abelian(3, 2).unwrap(), 3u32, 1u32, 3u32), (elementary_abelian(2, 2).unwrap(), 2, 3, 3)];
        for (g, q, dec_log, h2_log) in cases {
            let h = h2(&g, md(q)).unwrap();
            let dec = h2_dec(&h, &h1(&g, md(q))).unwrap();
            assert_eq!(h.sub_summary(&dec).log_order, dec_log);
            assert_eq!(h.summary().log_order, h2_log);
        }
        let z3 = cyclic(3).unwrap();
        let h = h2(&z3, md(3)).unwrap();
        let one = h1(&z3, md(3));
        assert_eq!(h.sub_summary(&h2_dec(&h, &one).unwrap()).log_order, 0);
        assert_eq!(h.sub_summary(&image_beta(&h, &one).unwrap()).log_order, 1);
    }

    #[test]
    fn bockstein_image_and_decomposables_fill_h2() {
        for q in [2u32, 3, 4] {
            for d in 1..=3usize {
                let g = elementary_abelian(q as usize, d).unwrap();
                let data = DegreeTwoData::new(&g, md(q)).unwrap();
                assert_eq!(data.dec.sum(&data.bock), data.classes.everything());
            }
        }
    }

    #[test]
    fn extension_examples() {
        let q4 = elementary_abelian(2, 2).unwrap();
        let split = extension_from_class(&q4, &Cochain2::zero(md(2), 4)).unwrap();
        assert!(is_isomorphic(&split.group, &elementary_abelian(2, 3).unwrap()).unwrap());
        let z3 = cyclic(3).unwrap();
        let split = extension_from_class(&z3, &Cochain2::zero(md(3), 3)).unwrap();
        assert!(is_isomorphic(&split.group, &elementary_abelian(3, 2).unwrap()).unwrap());
        for p in [3u32, 5] {
            let e = elementary_abelian(p as usize, 2).unwrap();
            let data = DegreeTwoData::new(&e, md(p)).unwrap();
            let x = data.base();
            let c1 = data.frame.character(&[1, 0]);
            let c2 = data.frame.character(&[0, 1]);
            let cup = cup11(x, &c1, &c2).unwrap();
            let h = extension_from_class(x, &cup).unwrap();
            assert!(is_isomorphic(&h.group, &heisenberg(p).unwrap()).unwrap());
            let m = extension_from_class(x, &cup.sub(&bockstein(x, &c1).unwrap())).unwrap();
            assert!(is_isomorphic(&m.group, &modular(p).unwrap()).unwrap());
        }
        let bad = Cochain2::from_fn(md(2), 4, |x, y| i64::from(x == 1 && y == 2));
        assert!(matches!(extension_from_class(&q4, &bad), Err(Error::NotCocycle(_))));
    }

    #[test]
    fn class_from_extension_examples() {
        for q in [2u32, 3, 4] {
            let m = md(q);
            let g = cyclic(q as usize).unwrap();
            let split = extension_from_class(&g, &Cochain2::zero(m, q as usize)).unwrap();
            assert!(split.class().unwrap().is_zero());

            // Z/q^2 over Z/q: the factor set is beta of a generating character.
            let big = cyclic((q * q) as usize).unwrap();
            let z = subgroup_closure(&big, &[q as usize]);
            let qd = quotient(&big, &z).unwrap();
            let c = class_from_extension(&big, &qd.quotient, &qd.projection, q as usize, &qd.representatives, m).unwrap();
            let chi = &h1(&qd.quotient, m).basis[0];
            let matches_beta = (1..q).filter(|k| k % m.p() != 0).any(|k| {
                let beta = bockstein(&qd.quotient, &chi.scale(k)).unwrap();
                zero_class(&qd.quotient, &c.sub(&beta))
            });
            assert!(matches_beta, "q={q}");
        }

        let d4 = dihedral4().unwrap();
        let z = next_term(&d4, md(2), &Subgroup::whole(&d4));
        let qd = quotient(&d4, &z).unwrap();
        let zgen = z.members().iter().copied().find(|&x| x != 0).unwrap();
        let c = class_from_extension(&d4, &qd.quotient, &qd.projection, zgen, &qd.representatives, md(2)).unwrap();
        let frame = LevelTwoFrame::new(&qd.quotient, md(2)).unwrap();
        let classes = frame.class_frame(&qd.quotient).unwrap();
        let v = classes.express_one(&c).unwrap();
        let cup = frame.cup_vector(&[1, 0], &[0, 1]);
        let diff: Vec<u32> = v.iter().zip(&cup).map(|(&a, &b)| md(2).sub(a, b)).collect();
        let betas = classes.span(&[frame.beta_vector(&[1, 0]), frame.beta_vector(&[0, 1])]);
        assert!(betas.contains(&diff));
        assert!(!betas.contains(&v));

        let not_central = subgroup_closure(&d4, &[4]);
        assert!(class_from_extension(&d4, &qd.quotient, &qd.projection, not_central.members()[1], &qd.representatives, md(2)).is_err());
    }

    fn hat_rank(r: &HatRing, degree: usize) -> usize {
        r.degrees.iter().find(|d| d.degree == degree).unwrap().hat.rank
    }

    #[test]
    fn hat_ring_examples() {
        let e = elementary_abelian(3, 2).unwrap();
        let r = hat_ring(&e, md(3), 3).unwrap();
        assert_eq!(hat_rank(&r, 2), 1);
        assert_eq!(r.dec.rank, 1);
        assert!(r.quadratic_in_degree_two);
        let r = hat_ring(&cyclic(3).unwrap(), md(3), 2).unwrap();
        assert_eq!(hat_rank(&r, 2), 0);
        assert!(r.quadratic_in_degree_two);
        // (Z/2)^2: all cup products independent, nothing killed in degree 2.
        let r = hat_ring(&elementary_abelian(2, 2).unwrap(), md(2), 2).unwrap();
        let two = r.degrees.iter().find(|d| d.degree == 2).unwrap();
        assert_eq!(two.relations_log, 0);
    }

    #[test]
    fn c_rt_examples() {
        for (g, q) in [(heisenberg(3).unwrap(), 3u32), (dihedral4().unwrap(), 2), (elementary_abelian(3, 2).unwrap(), 3)] {
            let data = DegreeTwoData::new(&g, md(q)).unwrap();
            assert!(c_rt(&data, AlphaSpec::CUP, 1, 2).unwrap().is_zero());
            let hat = hat_ring_of(&data, 3).unwrap();
            for r in 1..=3 {
                let c = c_rt(&data, AlphaSpec::CUP, r, 2).unwrap();
                let degree = hat.degrees.iter().find(|d| d.degree == r).unwrap();
                assert_eq!(c.log_order(), degree.relations_log);
            }
        }
        // B_1 is the kernel of beta on H^1 (inflated to G).
        let z3 = DegreeTwoData::new(&cyclic(3).unwrap(), md(3)).unwrap();
        assert_eq!(c_rt(&z3, AlphaSpec::BOCKSTEIN, 1, 1).unwrap().log_order(), 0);
        let z9 = DegreeTwoData::new(&cyclic(9).unwrap(), md(3)).unwrap();
        assert_eq!(c_rt(&z9, AlphaSpec::BOCKSTEIN, 1, 1).unwrap().log_order(), 1);
        assert_eq!(h_t_alpha(&z9, AlphaSpec::BOCKSTEIN, 1, 1).unwrap().log_order(), 0);
    }

    #[test]
    fn five_term_with_whole_group() {
        for (g, q) in [(cyclic(4).unwrap(), 2u32), (elementary_abelian(3, 2).unwrap(), 3)] {
            let r = five_term_check(&g, &Subgroup::whole(&g), md(q)).unwrap();
            assert!(r.exact(), "{r:?}");
        }
    }

    fn pool() -> Vec<(FiniteGroup, u32)> {
        vec![
            (dihedral4().unwrap(), 2),
            (quaternion8().unwrap(), 4),
            (heisenberg(3).unwrap(), 3),
            (modular(3).unwrap(), 9),
            (elementary_abelian(2, 3).unwrap(), 2),
            (cyclic(8).unwrap(), 4),
            (direct_product(&cyclic(4).unwrap(), &cyclic(2).unwrap()).unwrap(), 4),
        ]
    }

    fn combination(m: Modulus, n: usize, coeffs: &[u32], basis: &[Cochain1]) -> Cochain1 {
        basis
            .iter()
            .zip(coeffs)
            .fold(Cochain1::zero(m, n), |acc, (b, &c)| acc.add(&b.scale(c)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn cup_products_anticommute(which in 0usize..7, a in prop::collection::vec(0u32..9, 3), b in prop::collection::vec(0u32..9, 3)) {
            let (g, q) = &pool()[which];
            let m = md(*q);
            let basis = h1(g, m).basis;
            let x = combination(m, g.order(), &a, &basis);
            let y = combination(m, g.order(), &b, &basis);
            let s = cup11(g, &x, &y).unwrap().add(&cup11(g, &y, &x).unwrap());
            prop_assert!(zero_class(g, &s));
        }

        #[test]
        fn cup_square_is_scaled_bockstein(q in prop::sample::select(vec![2u32, 3, 4]), d in 1usize..=3, a in prop::collection::vec(0u32..4, 3)) {
            let m = md(q);
            let g = elementary_abelian(q as usize, d).unwrap();
            let chi = combination(m, g.order(), &a, &h1(&g, m).basis);
            let diff = cup11(&g, &chi, &chi).unwrap().sub(&bockstein(&g, &chi).unwrap().scale(q / m.delta()));
            prop_assert!(zero_class(&g, &diff));
        }

        #[test]
        fn extensions_round_trip(which in 0usize..4, coeffs in prop::collection::vec(0u32..9, 6), seed in 0u64..1000) {
            let bases = [
                (elementary_abelian(2, 2).unwrap(), 2u32),
                (elementary_abelian(3, 2).unwrap(), 3),
                (cyclic(4).unwrap(), 4),
                (dihedral4().unwrap(), 2),
            ];
            let (x, q) = &bases[which];
            let m = md(*q);
            let h = h2(x, m).unwrap();
            let c = h
                .basis()
                .iter()
                .zip(&coeffs)
                .fold(Cochain2::zero(m, x.order()), |acc, ((r, _), &k)| acc.add(&r.scale(k)));
            let ext = extension_from_class(x, &c).unwrap();
            prop_assert!(zero_class(x, &ext.class().unwrap().sub(&c)));
            // Another section: shift each lift by a random central power.
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let e = &ext.group;
            let z = ext.kernel_generator;
            let section: Vec<usize> = ext
                .section
                .iter()
                .enumerate()
                .map(|(i, &s)| if i == 0 { s } else { e.mul(s, e.pow(z, rng.gen_range(0..*q as u64))) })
                .collect();
            let other = class_from_extension(e, x, &ext.projection, z, &section, m).unwrap();
            prop_assert!(zero_class(x, &other.sub(&c)));
        }
    }
}

//! End-to-end acceptance criteria. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use qcentral::cohomology::{all_vectors, bockstein, cup11, extension_from_class, five_term_check, h2, DegreeTwoData};
use qcentral::duality::{
    check_duality_conditions, cohomological_data, identify, is_dual, local_global_check, reconstruct_quotient,
    sharp_pairing, quotient_criterion_harness, theorem_d_check, dual_basis_check, DualitySetting, TripleKind, Verdict,
};
use qcentral::free_model::{free_level3, CentralGenerator, Variant};
use qcentral::group::{
    cyclic, dihedral4, direct_product, elementary_abelian, heisenberg, is_isomorphic, modular, q_central_series,
    quaternion8, quotient, subgroup_closure, FiniteGroup,
};
use qcentral::zq::{howell_form, kernel, solve, Modulus, ZqMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn md(q: u32) -> Modulus {
    Modulus::new(q).unwrap()
}

fn ok_if(cond: bool, pass: String, fail: String) -> Outcome {
    if cond {
        Ok(pass)
    } else {
        Err(fail)
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    format!("error: {err}")
}

const FREE_CASES: [(usize, u32); 7] = [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4), (3, 2)];

/// The duality-corollary group list with the modulus each is read at.
fn corollary_groups() -> Vec<(&'static str, u32, FiniteGroup)> {
    vec![
        ("D4", 2, dihedral4().unwrap()),
        ("Q8", 2, quaternion8().unwrap()),
        ("Z/4", 2, cyclic(4).unwrap()),
        ("Z/16", 4, cyclic(16).unwrap()),
        ("H27", 3, heisenberg(3).unwrap()),
        ("M27", 3, modular(3).unwrap()),
        ("sharp(2,2)", 2, free_level3(2, md(2), Variant::Sharp).unwrap().group),
        ("sharp(2,3)", 3, free_level3(2, md(3), Variant::Sharp).unwrap().group),
        ("flat(2,3)", 3, free_level3(2, md(3), Variant::Flat).unwrap().group),
    ]
}

fn h2_dimensions() -> Outcome {
    let mut bad = Vec::new();
    for q in [2u32, 3, 4] {
        for d in 1..=3usize {
            let g = elementary_abelian(q as usize, d).map_err(e)?;
            let inv = h2(&g, md(q)).map_err(e)?.presentation().invariants().to_vec();
            let rank = d + d * (d - 1) / 2;
            if inv.len() != rank || inv.iter().any(|&o| o != q as u64) {
                bad.push(format!("(Z/{q})^{d}: {inv:?}"));
            }
        }
    }
    ok_if(bad.is_empty(), "9 groups, H^2 free of rank d + d(d-1)/2".into(), bad.join("; "))
}

fn dual_basis() -> Outcome {
    let mut bad = Vec::new();
    for (d, q) in FREE_CASES {
        let r = dual_basis_check(d, q).map_err(e)?;
        if !r.identity {
            bad.push(format!("d={d} q={q}: {:?}", r.pairing.matrix));
        }
    }
    ok_if(bad.is_empty(), "identity on all 7 sharp models".into(), bad.join("; "))
}

/// Transgression-computed pairing values against the closed formulas,
/// with the formula side evaluated here from the definitions of the
/// basis characters (`chi_a(s_k) = [a = k]`).
fn closed_formulas() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for (d, q) in FREE_CASES {
        let m = md(q);
        let sp = sharp_pairing(d, q).map_err(e)?;
        let basis = sp.model.canonical_basis().map_err(e)?;
        let chi = |a: usize, k: usize| u32::from(a == k);
        let square = (q / m.delta()) % q;
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|a| (a + 1..d).map(move |b| (a, b))).collect();
        for (row, kind) in basis.kinds.iter().enumerate() {
            let mut expect = Vec::new();
            for a in 0..d {
                expect.push(match *kind {
                    CentralGenerator::Power(k) => chi(a, k),
                    CentralGenerator::Commutator(..) => 0,
                });
            }
            for &(a, b) in &pairs {
                expect.push(match *kind {
                    CentralGenerator::Power(k) => m.mul(square, m.mul(chi(a, k), chi(b, k))),
                    CentralGenerator::Commutator(k, l) => m.sub(m.mul(chi(a, l), chi(b, k)), m.mul(chi(a, k), chi(b, l))),
                });
            }
            for (col, (&got, &want)) in sp.matrix[row].iter().zip(&expect).enumerate() {
                checked += 1;
                if got != want {
                    bad.push(format!(
                        "d={d} q={q} <{}, {}> = {got}, formula {want}",
                        basis.labels[row], sp.class_labels[col]
                    ));
                }
            }
        }
    }
    ok_if(bad.is_empty(), format!("{checked} basis pairings match"), format!("{} of {checked} differ: {}", bad.len(), bad.join("; ")))
}

fn cup_square() -> Outcome {
    let mut bad = Vec::new();
    for q in [2u32, 3, 4] {
        let m = md(q);
        let square = (q / m.delta()) % q;
        for d in 1..=3usize {
            let g = elementary_abelian(q as usize, d).map_err(e)?;
            let data = DegreeTwoData::new(&g, m).map_err(e)?;
            let x = data.base();
            for a in all_vectors(q, d) {
                let c = data.frame.character(&a);
                let lhs = data.classes.express_one(&cup11(x, &c, &c).map_err(e)?).map_err(e)?;
                let rhs = data
                    .classes
                    .express_one(&bockstein(x, &c).map_err(e)?.scale(square))
                    .map_err(e)?;
                let diff: Vec<u32> = lhs.iter().zip(&rhs).map(|(&l, &r)| m.sub(l, r)).collect();
                if !data.classes.relations().contains(&diff) {
                    bad.push(format!("(Z/{q})^{d} chi={a:?}"));
                }
                if m.p() > 2 && !data.classes.relations().contains(&lhs) {
                    bad.push(format!("(Z/{q})^{d} chi={a:?} square nonzero"));
                }
            }
        }
    }
    ok_if(bad.is_empty(), "all characters on 9 groups".into(), bad.join("; "))
}

fn local_global() -> Outcome {
    let mut bad = Vec::new();
    let mut classes = 0;
    for q in [2u32, 3, 4] {
        for d in 1..=3usize {
            let r = local_global_check(d, q).map_err(e)?;
            classes += r.classes_checked;
            if !r.passed() {
                bad.push(format!("(Z/{q})^{d}"));
            }
        }
    }
    ok_if(bad.is_empty(), format!("{classes} classes"), bad.join("; "))
}

fn duality_corollary() -> Outcome {
    let mut bad = Vec::new();
    for (name, q, g) in corollary_groups() {
        let m = md(q);
        let (s, _) = DualitySetting::for_triple(&g, m, TripleKind::DecCup).map_err(e)?;
        let series = q_central_series(&g, m, 3);
        let right_pair = s.t == series.terms[1] && s.t0 == series.lower3;
        if !right_pair || !is_dual(&s).map_err(e)? {
            bad.push(name.to_string());
        }
    }
    ok_if(bad.is_empty(), "9 groups".into(), bad.join(", "))
}

fn theorem_d() -> Outcome {
    let odd = [
        ("H27", heisenberg(3)),
        ("M27", modular(3)),
        ("(Z/3)^2", elementary_abelian(3, 2)),
        ("flat(2,3)", free_level3(2, md(3), Variant::Flat).map(|m| m.group)),
        ("sharp(2,3)", free_level3(2, md(3), Variant::Sharp).map(|m| m.group)),
    ];
    let even = [
        ("Z/4", cyclic(4)),
        ("Z/16", cyclic(16)),
        ("D4", dihedral4()),
        ("Q8", quaternion8()),
        ("sharp(2,2)", free_level3(2, md(2), Variant::Sharp).map(|m| m.group)),
    ];
    let mut bad = Vec::new();
    let mut asserted = 0;
    let mut reported = Vec::new();
    for (p, list) in [(3u32, odd), (2, even)] {
        for (name, g) in list {
            let r = theorem_d_check(&g.map_err(e)?, p).map_err(e)?;
            match r.verdict {
                Verdict::Pass => asserted += 1,
                Verdict::Fail => bad.push(format!("{name}: {} vs {}", r.lower3_order, r.intersection_order)),
                Verdict::HypothesisNotMet => {
                    reported.push(format!("{name} ({} vs {})", r.lower3_order, r.intersection_order))
                }
            }
        }
    }
    ok_if(
        bad.is_empty(),
        format!("{asserted} asserted equal; outside the hypothesis: {}", reported.join(", ")),
        bad.join("; "),
    )
}

fn conditions() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for (name, q, g) in corollary_groups() {
        for t in TripleKind::ALL {
            let (s, _) = DualitySetting::for_triple(&g, md(q), t).map_err(e)?;
            let c = check_duality_conditions(&s).map_err(e)?;
            n += 1;
            if !c.consistent() {
                bad.push(format!("{name} {t}: {:?}", c.verdicts()));
            }
        }
    }
    ok_if(bad.is_empty(), format!("{n} instances agree"), bad.join("; "))
}

fn quotient_harness() -> Outcome {
    let mut bad = Vec::new();
    let mut rows = 0;
    for (name, q, g) in corollary_groups() {
        for t in TripleKind::ALL {
            let h = quotient_criterion_harness(&g, md(q), t).map_err(e)?;
            rows += h.rows.len();
            if !h.passed() {
                bad.push(format!(
                    "{name} {t}: {} equivalence, {} implication failures",
                    h.equivalence_failures(),
                    h.implication_failures()
                ));
            }
        }
    }
    ok_if(bad.is_empty(), format!("{rows} normal subgroups, no exceptions"), bad.join("; "))
}

fn reconstruction() -> Outcome {
    let groups = [
        ("H27", 3u32, heisenberg(3)),
        ("M27", 3, modular(3)),
        ("(Z/3)^2", 3, elementary_abelian(3, 2)),
        ("D4", 2, dihedral4()),
        ("Z/4", 2, cyclic(4)),
        ("Q8", 2, quaternion8()),
    ];
    let mut bad = Vec::new();
    for (name, q, g) in groups {
        let g = g.map_err(e)?;
        for t in TripleKind::ALL {
            let (d, data) = cohomological_data(&g, md(q), t).map_err(e)?;
            let r = reconstruct_quotient(d, q, t, &data).map_err(e)?;
            let target = quotient(&g, &t.t0(&g, md(q))).map_err(e)?.quotient;
            if !is_isomorphic(&r.group, &target).map_err(e)? {
                bad.push(format!("{name} {t}"));
            }
        }
    }
    ok_if(bad.is_empty(), "18 quotients rebuilt".into(), bad.join(", "))
}

fn brute_span(m: Modulus, rows: &[Vec<u32>], cols: usize) -> BTreeSet<Vec<u32>> {
    let mut span = BTreeSet::from([vec![0; cols]]);
    for r in rows {
        let mut next = BTreeSet::new();
        for v in &span {
            for c in 0..m.q() {
                next.insert(v.iter().zip(r).map(|(&a, &b)| m.add(a, m.mul(c, b))).collect::<Vec<u32>>());
            }
        }
        span = next;
    }
    span
}

fn linalg_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    let mut bad = Vec::new();
    for q in [2u32, 3, 4, 8, 9] {
        let m = md(q);
        for trial in 0..200 {
            let unknowns = rng.gen_range(1..=5usize);
            let equations = rng.gen_range(1..=5usize);
            let rows: Vec<Vec<u32>> = (0..equations)
                .map(|_| (0..unknowns).map(|_| rng.gen_range(0..q)).collect())
                .collect();
            let a = ZqMatrix::from_residue_rows(m, unknowns, &rows);
            let vectors = all_vectors(q, unknowns);

            let h = howell_form(&a);
            let span = brute_span(m, &rows, unknowns);
            let howell_span = brute_span(m, h.rows(), unknowns);
            let size_ok = (m.p() as usize).pow(h.log_size()) == span.len();
            let members_ok = vectors.iter().all(|v| h.contains(v) == span.contains(v));

            let null: BTreeSet<Vec<u32>> = vectors
                .iter()
                .filter(|x| a.mul_vec(x).unwrap().iter().all(|&v| v == 0))
                .cloned()
                .collect();
            let k = kernel(&a);
            let kernel_ok = brute_span(m, &k.row_vecs(), unknowns) == null;

            let rhs: Vec<u32> = (0..equations).map(|_| rng.gen_range(0..q)).collect();
            let solvable = vectors.iter().any(|x| a.mul_vec(x).unwrap() == rhs);
            let solve_ok = match solve(&a, &rhs).map_err(e)? {
                Some(x) => solvable && a.mul_vec(&x).unwrap() == rhs,
                None => !solvable,
            };
            if !(span == howell_span && size_ok && members_ok && kernel_ok && solve_ok) {
                bad.push(format!("q={q} trial {trial}"));
            }
        }
    }
    ok_if(bad.is_empty(), "1000 random systems".into(), bad.join(", "))
}

/// Groups of order at most 64 with their prime.
fn small_groups() -> Vec<(String, u32, FiniteGroup)> {
    let z = |n: usize| cyclic(n).unwrap();
    let dp = |a: FiniteGroup, b: FiniteGroup| direct_product(&a, &b).unwrap();
    vec![
        ("D4".into(), 2, dihedral4().unwrap()),
        ("Q8".into(), 2, quaternion8().unwrap()),
        ("Z/16".into(), 2, z(16)),
        ("Z/32".into(), 2, z(32)),
        ("D4 x Z/2".into(), 2, dp(dihedral4().unwrap(), z(2))),
        ("Q8 x Z/4".into(), 2, dp(quaternion8().unwrap(), z(4))),
        ("D4 x Z/8".into(), 2, dp(dihedral4().unwrap(), z(8))),
        ("D4 x D4".into(), 2, dp(dihedral4().unwrap(), dihedral4().unwrap())),
        ("Z/4 x Z/16".into(), 2, dp(z(4), z(16))),
        ("sharp(2,2)".into(), 2, free_level3(2, md(2), Variant::Sharp).unwrap().group),
        ("H27".into(), 3, heisenberg(3).unwrap()),
        ("M27".into(), 3, modular(3).unwrap()),
        ("Z/27".into(), 3, z(27)),
        ("Z/9 x Z/3".into(), 3, dp(z(9), z(3))),
        ("Z/5 x Z/5".into(), 5, dp(z(5), z(5))),
        ("Z/25".into(), 5, z(25)),
    ]
    .into_iter()
    .filter(|(_, _, g)| g.order() <= 64)
    .collect()
}

fn five_term() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0012);
    let pool = small_groups();
    let mut bad = Vec::new();
    let mut seen = Vec::new();
    for _ in 0..20 {
        let (name, p, g) = &pool[rng.gen_range(0..pool.len())];
        let q = if rng.gen_bool(0.5) { *p } else { p * p };
        let m = md(q);
        let top = &q_central_series(g, m, 2).terms[1];
        let picks: Vec<usize> = (0..rng.gen_range(1..=2))
            .map(|_| top.members()[rng.gen_range(0..top.order())])
            .collect();
        let t = subgroup_closure(g, &picks).normal_closure(g);
        assert!(t.is_subgroup_of(top) && t.is_normal_in(g));
        let r = five_term_check(g, &t, m).map_err(e)?;
        seen.push(format!("{name}/{}@{q}", t.order()));
        if !r.exact() {
            bad.push(format!("{name} T of order {} q={q}: {r:?}", t.order()));
        }
    }
    ok_if(bad.is_empty(), format!("exact on {}", seen.join(" ")), bad.join("; "))
}

fn extensions() -> Outcome {
    let mut bad = Vec::new();
    for p in [3u32, 5, 7] {
        let m = md(p);
        let base = elementary_abelian(p as usize, 2).map_err(e)?;
        let data = DegreeTwoData::new(&base, m).map_err(e)?;
        let c1 = data.frame.character(&[1, 0]);
        let c2 = data.frame.character(&[0, 1]);
        let cup = cup11(&base, &c1, &c2).map_err(e)?;
        let twisted = cup.sub(&bockstein(&base, &c1).map_err(e)?);
        for (class, target, want) in [(cup, heisenberg(p), "H"), (twisted, modular(p), "M")] {
            let ext = extension_from_class(&base, &class).map_err(e)?.group;
            let name = identify(&ext).map_err(e)?;
            if !is_isomorphic(&ext, &target.map_err(e)?).map_err(e)? || name != format!("{want}_{}", p * p * p) {
                bad.push(format!("p={p} {want}: got {name}"));
            }
        }
    }
    for q in [2u32, 3, 4, 5, 8, 9] {
        let base = cyclic(q as usize).map_err(e)?;
        let data = DegreeTwoData::new(&base, md(q)).map_err(e)?;
        let beta = bockstein(&base, &data.frame.character(&[1])).map_err(e)?;
        let ext = extension_from_class(&base, &beta).map_err(e)?.group;
        if !is_isomorphic(&ext, &cyclic((q * q) as usize).map_err(e)?).map_err(e)? {
            bad.push(format!("Z/{q}: got {}", identify(&ext).map_err(e)?));
        }
    }
    ok_if(bad.is_empty(), "H_p3, M_p3 for p = 3, 5, 7; Z/q^2 for 6 moduli".into(), bad.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 13] = [
        ("H^2 dimensions of elementary abelian groups", h2_dimensions, 30),
        ("dual bases on sharp models", dual_basis, 60),
        ("closed pairing formulas on sharp models", closed_formulas, 60),
        ("cup square equals scaled Bockstein", cup_square, 60),
        ("local-global exactness", local_global, 60),
        ("decomposable duality for G^(2), G_(3)", duality_corollary, 120),
        ("G_(3) as intersection of kernels", theorem_d, 120),
        ("six duality conditions agree", conditions, 120),
        ("quotient harness (a) <=> (b) => (c)", quotient_harness, 120),
        ("reconstruction of G/T_0(G)", reconstruction, 60),
        ("Z/q linear algebra against exhaustive search", linalg_oracle, 30),
        ("five-term exactness on random pairs", five_term, 120),
        ("extension classes and their groups", extensions, 60),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > Duration::from_secs(*budget) => {
                Err(format!("{msg}; took {took:.1?}, over the {budget} s budget"))
            }
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {:>2}: {name} ({msg}) [{took:.2?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name} ({msg}) [{took:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

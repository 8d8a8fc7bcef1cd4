//! Packaged verification suites, one record per instance.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use qcentral::cohomology::{all_vectors, bockstein, cup11, extension_from_class, h2, Cochain2, DegreeTwoData};
use qcentral::duality::{
    check_duality_conditions, closed_formula_check, cohomological_data, dual_basis_check, is_dual,
    local_global_check, reconstruct_quotient, quotient_criterion_harness, theorem_d_check, DualitySetting, TripleKind, Verdict,
};
use qcentral::free_model::{free_level3, Variant};
use qcentral::group::{
    cyclic, dihedral4, elementary_abelian, heisenberg, is_isomorphic, modular, quaternion8, quotient, FiniteGroup,
};
use qcentral::zq::Modulus;

use crate::report::{Check, Status};
use crate::CliError;

pub const SUITES: &[&str] = &[
    "h2-dimensions",
    "dual-basis",
    "closed-formulas",
    "cup-square",
    "local-global",
    "duality-corollary",
    "theorem-d",
    "conditions",
    "quotient-harness",
    "reconstruction",
    "extensions",
];

type Job = Box<dyn Fn() -> qcentral::Result<Check> + Send + Sync>;

fn md(q: u32) -> Modulus {
    Modulus::new(q).expect("suite moduli are prime powers")
}

fn check(name: String, ok: bool, details: String) -> Check {
    Check {
        name,
        status: Status::from_bool(ok),
        details,
    }
}

/// Groups with elementary abelian `G^[2]` used across suites, with their `q`.
fn test_groups() -> Vec<(&'static str, u32, fn() -> qcentral::Result<FiniteGroup>)> {
    vec![
        ("D4", 2, dihedral4),
        ("Q8", 2, quaternion8),
        ("Z/4", 2, || cyclic(4)),
        ("Z/16", 4, || cyclic(16)),
        ("H27", 3, || heisenberg(3)),
        ("M27", 3, || modular(3)),
        ("sharp(2,2)", 2, || Ok(free_level3(2, md(2), Variant::Sharp)?.group)),
        ("sharp(2,3)", 3, || Ok(free_level3(2, md(3), Variant::Sharp)?.group)),
        ("flat(2,3)", 3, || Ok(free_level3(2, md(3), Variant::Flat)?.group)),
    ]
}

const FREE_CASES: [(usize, u32); 7] = [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4), (3, 2)];

fn jobs_for(suite: &str) -> Result<Vec<Job>, CliError> {
    let mut jobs: Vec<Job> = Vec::new();
    match suite {
        "h2-dimensions" => {
            for (q, d) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3)] {
                jobs.push(Box::new(move || {
                    let g = elementary_abelian(q as usize, d)?;
                    let inv = h2(&g, md(q))?.presentation().invariants().to_vec();
                    let want = d + d * (d - 1) / 2;
                    let ok = inv.len() == want && inv.iter().all(|&o| o == q as u64);
                    Ok(check(format!("H^2((Z/{q})^{d})"), ok, format!("invariants {inv:?}, expected {want} x Z/{q}")))
                }));
            }
        }
        "dual-basis" => {
            for (d, q) in FREE_CASES {
                jobs.push(Box::new(move || {
                    let r = dual_basis_check(d, q)?;
                    Ok(check(format!("d={d} q={q}"), r.identity, format!("matrix {:?}", r.pairing.matrix)))
                }));
            }
        }
        "closed-formulas" => {
            for (d, q) in FREE_CASES {
                jobs.push(Box::new(move || {
                    let r = closed_formula_check(d, q)?;
                    let details = format!(
                        "{} entries, {} mismatches (commutator sign only: {})",
                        r.entries,
                        r.mismatches.len(),
                        r.sign_only
                    );
                    Ok(check(format!("d={d} q={q}"), r.passed(), details))
                }));
            }
        }
        "cup-square" => {
            for q in [2u32, 3, 4] {
                for d in 1..=3 {
                    jobs.push(Box::new(move || {
                        let m = md(q);
                        let g = elementary_abelian(q as usize, d)?;
                        let data = DegreeTwoData::new(&g, m)?;
                        let x = data.base();
                        let square = (q / m.delta()) % q;
                        let mut ok = true;
                        for a in all_vectors(q, d) {
                            let chi = data.frame.character(&a);
                            let lhs = data.classes.express_one(&cup11(x, &chi, &chi)?)?;
                            let rhs = data.classes.express_one(&bockstein(x, &chi)?.scale(square))?;
                            let diff: Vec<u32> = lhs.iter().zip(&rhs).map(|(&l, &r)| m.sub(l, r)).collect();
                            ok &= data.classes.relations().contains(&diff);
                        }
                        Ok(check(format!("(Z/{q})^{d}"), ok, format!("{} characters", (q as usize).pow(d as u32))))
                    }));
                }
            }
        }
        "local-global" => {
            for q in [2u32, 3, 4] {
                for d in 1..=3 {
                    jobs.push(Box::new(move || {
                        let r = local_global_check(d, q)?;
                        let details = format!(
                            "{} classes, {} decomposable, {} cyclic subgroups",
                            r.classes_checked, r.decomposable, r.cyclic_subgroups
                        );
                        Ok(check(format!("(Z/{q})^{d}"), r.passed(), details))
                    }));
                }
            }
        }
        "duality-corollary" => {
            for (name, q, build) in test_groups() {
                jobs.push(Box::new(move || {
                    let g = build()?;
                    let (s, _) = DualitySetting::for_triple(&g, md(q), TripleKind::DecCup)?;
                    let ok = is_dual(&s)?;
                    Ok(check(format!("{name} q={q}"), ok, format!("|G^(2)/G_(3)| = {}", s.t.order() / s.t0.order())))
                }));
            }
        }
        "theorem-d" => {
            let odd: Vec<(&str, fn() -> qcentral::Result<FiniteGroup>)> = vec![
                ("H27", || heisenberg(3)),
                ("M27", || modular(3)),
                ("(Z/3)^2", || elementary_abelian(3, 2)),
                ("flat(2,3)", || Ok(free_level3(2, md(3), Variant::Flat)?.group)),
                ("sharp(2,3)", || Ok(free_level3(2, md(3), Variant::Sharp)?.group)),
            ];
            let even: Vec<(&str, fn() -> qcentral::Result<FiniteGroup>)> = vec![
                ("Z/4", || cyclic(4)),
                ("Z/16", || cyclic(16)),
                ("D4", dihedral4),
                ("Q8", quaternion8),
                ("sharp(2,2)", || Ok(free_level3(2, md(2), Variant::Sharp)?.group)),
            ];
            for (p, list) in [(3u32, odd), (2, even)] {
                for (name, build) in list {
                    jobs.push(Box::new(move || {
                        let r = theorem_d_check(&build()?, p)?;
                        let status = match r.verdict {
                            Verdict::Pass => Status::Pass,
                            Verdict::Fail => Status::Fail,
                            Verdict::HypothesisNotMet => Status::HypothesisNotMet,
                        };
                        Ok(Check {
                            name: format!("{name} p={p}"),
                            status,
                            details: format!(
                                "G_(3) order {}, intersection order {}, Galois relation type {}",
                                r.lower3_order,
                                r.intersection_order,
                                r.galois.passes()
                            ),
                        })
                    }));
                }
            }
        }
        "conditions" | "quotient-harness" => {
            let harness = suite == "quotient-harness";
            for (name, q, build) in test_groups() {
                for t in TripleKind::ALL {
                    jobs.push(Box::new(move || {
                        let g = build()?;
                        if harness {
                            let h = quotient_criterion_harness(&g, md(q), t)?;
                            let details = format!(
                                "{} subgroups, (a)xor(b) {}, (b) without (c) {}",
                                h.rows.len(),
                                h.equivalence_failures(),
                                h.implication_failures()
                            );
                            Ok(check(format!("{name} {t}"), h.passed(), details))
                        } else {
                            let (s, _) = DualitySetting::for_triple(&g, md(q), t)?;
                            let c = check_duality_conditions(&s)?;
                            Ok(check(format!("{name} {t}"), c.consistent(), format!("{:?}", c.verdicts())))
                        }
                    }));
                }
            }
        }
        "reconstruction" => {
            let groups: Vec<(&str, u32, fn() -> qcentral::Result<FiniteGroup>)> = vec![
                ("H27", 3, || heisenberg(3)),
                ("M27", 3, || modular(3)),
                ("(Z/3)^2", 3, || elementary_abelian(3, 2)),
                ("D4", 2, dihedral4),
                ("Z/4", 2, || cyclic(4)),
                ("Q8", 2, quaternion8),
            ];
            for (name, q, build) in groups {
                for t in TripleKind::ALL {
                    jobs.push(Box::new(move || {
                        let g = build()?;
                        let (d, kernel) = cohomological_data(&g, md(q), t)?;
                        let r = reconstruct_quotient(d, q, t, &kernel)?;
                        let target = quotient(&g, &t.t0(&g, md(q)))?.quotient;
                        let ok = is_isomorphic(&r.group, &target)?;
                        Ok(check(format!("{name} {t}"), ok, format!("order {} vs {}", r.order, target.order())))
                    }));
                }
            }
        }
        "extensions" => {
            for p in [3u32, 5] {
                jobs.push(Box::new(move || extension_case(p, false)));
                jobs.push(Box::new(move || extension_case(p, true)));
            }
            for q in [2u32, 3, 4, 5] {
                jobs.push(Box::new(move || {
                    let m = md(q);
                    let base = cyclic(q as usize)?;
                    let data = DegreeTwoData::new(&base, m)?;
                    let beta = bockstein(&base, &data.frame.character(&[1]))?;
                    let e = extension_from_class(&base, &beta)?.group;
                    let ok = is_isomorphic(&e, &cyclic((q * q) as usize)?)?;
                    Ok(check(format!("Z/{q} with beta"), ok, format!("order {}", e.order())))
                }));
            }
        }
        other => return Err(CliError::Usage(format!("unknown suite {other:?}; known: all, {}", SUITES.join(", ")))),
    }
    Ok(jobs)
}

fn extension_case(p: u32, bock: bool) -> qcentral::Result<Check> {
    let m = md(p);
    let base = elementary_abelian(p as usize, 2)?;
    let data = DegreeTwoData::new(&base, m)?;
    let x = data.base();
    let c1 = data.frame.character(&[1, 0]);
    let c2 = data.frame.character(&[0, 1]);
    let mut class: Cochain2 = cup11(x, &c1, &c2)?;
    if bock {
        class = class.sub(&bockstein(x, &c1)?);
    }
    let e = extension_from_class(x, &class)?.group;
    let (label, target) = if bock { ("M", modular(p)?) } else { ("H", heisenberg(p)?) };
    let ok = is_isomorphic(&e, &target)?;
    let what = if bock { "-beta(chi1) + chi1∪chi2" } else { "chi1∪chi2" };
    Ok(check(
        format!("(Z/{p})^2 with {what}"),
        ok,
        format!("isomorphic to {label}_{}: {ok}", p * p * p),
    ))
}

/// Runs the named suite (or `all`) on up to `jobs` threads; records come
/// back in a fixed order.
pub fn run_suite(suite: &str, jobs: usize) -> Result<Vec<(String, Check, u128)>, CliError> {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut work: Vec<(String, Job)> = Vec::new();
    for s in names {
        for j in jobs_for(s)? {
            work.push((s.to_string(), j));
        }
    }
    let results: Vec<Mutex<Option<(Check, u128)>>> = work.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.max(1).min(work.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some((_, job)) = work.get(i) else { break };
                let start = std::time::Instant::now();
                let c = job().unwrap_or_else(|e| Check {
                    name: format!("item {i}"),
                    status: match e {
                        qcentral::Error::LimitExceeded { .. } => Status::Skipped,
                        qcentral::Error::Hypothesis(_) => Status::HypothesisNotMet,
                        _ => Status::Fail,
                    },
                    details: e.to_string(),
                });
                *results[i].lock().expect("result slot") = Some((c, start.elapsed().as_millis()));
            });
        }
    });
    Ok(work
        .into_iter()
        .zip(results)
        .map(|((s, _), r)| {
            let (c, ms) = r.into_inner().expect("result slot").expect("every job ran");
            (s, c, ms)
        })
        .collect())
}

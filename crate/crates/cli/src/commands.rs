use std::collections::BTreeMap;
use std::time::Instant;

use qcentral::cohomology::{abelian_structure, cohomology_summary, h1, hat_ring_of, DegreeTwoData};
use qcentral::duality::{
    check_duality_conditions, cohomological_data, dual_basis_check, pairing_a, pairing_b, reconstruct_quotient,
    sample_epimorphisms, t0_by_intersection, quotient_criterion_harness, theorem_d_check, triple_axioms_check, DualitySetting,
    TripleKind, Verdict,
};
use qcentral::free_model::{free_level3, Variant};
use qcentral::group::{heisenberg, is_isomorphic, lower3, next_term, q_central_series, quotient};
use qcentral::group::{FiniteGroup, Subgroup};
use qcentral::zq::Modulus;
use qcentral::Error;

use crate::report::{ModulusInfo, Report, Status};
use crate::CliError;

/// Collects per-check timings next to a report.
pub struct Run {
    pub report: Report,
    pub timing: BTreeMap<String, u128>,
}

impl Run {
    pub fn new(command: &str) -> Self {
        Run {
            report: Report::new(command),
            timing: BTreeMap::new(),
        }
    }

    pub fn modulus(&mut self, md: Modulus) {
        self.report.modulus = Some(ModulusInfo::of(md));
    }

    /// Runs `f`, records its time under `name`, and turns recoverable
    /// errors into `skipped` or `hypothesis-not-met` records.
    pub fn step<T>(&mut self, name: &str, f: impl FnOnce() -> qcentral::Result<T>) -> Result<Option<T>, CliError> {
        let start = Instant::now();
        let out = f();
        self.timing.insert(name.to_string(), start.elapsed().as_millis());
        match out {
            Ok(v) => Ok(Some(v)),
            Err(e @ Error::LimitExceeded { .. }) => {
                self.report.check(name, Status::Skipped, e.to_string());
                Ok(None)
            }
            Err(Error::Hypothesis(msg)) => {
                self.report.check(name, Status::HypothesisNotMet, msg);
                Ok(None)
            }
            Err(e) => Err(e.into()),
        }
    }
}

fn triples(t: Option<TripleKind>) -> Vec<TripleKind> {
    t.map_or_else(|| TripleKind::ALL.to_vec(), |t| vec![t])
}

pub fn series(run: &mut Run, g: &FiniteGroup, md: Modulus, depth: usize) -> Result<(), CliError> {
    run.modulus(md);
    let Some(s) = run.step("series", || Ok(q_central_series(g, md, depth)))? else { return Ok(()) };
    let whole = Subgroup::whole(g);
    let g2 = next_term(g, md, &whole);
    let g3 = next_term(g, md, &g2);
    let l3 = lower3(g, md);
    let chain = g3.is_subgroup_of(&l3) && l3.is_subgroup_of(&g2);
    run.report.check(
        "G^(3) <= G_(3) <= G^(2)",
        Status::from_bool(chain),
        format!("orders {} <= {} <= {}", g3.order(), l3.order(), g2.order()),
    );
    if md.q() == 2 {
        run.report
            .check("G^(3) = G_(3) at q = 2", Status::from_bool(g3 == l3), format!("{} vs {}", g3.order(), l3.order()));
    }
    let q2 = quotient(g, &g2)?.quotient;
    let structure = abelian_structure(&q2, md)?.presentation.invariants().to_vec();
    let q3 = quotient(g, &g3)?.quotient;
    let ql3 = quotient(g, &l3)?.quotient;
    run.report.check(
        "series",
        Status::Pass,
        format!("orders {:?}, G_(3) of order {}", s.orders(), l3.order()),
    );
    run.report.data("orders", s.orders());
    run.report.data("stabilized", s.stabilized);
    run.report.data("lower3_order", l3.order());
    run.report.data("delta", md.delta());
    run.report.data("level2_quotient_invariants", structure);
    run.report.data("level3_quotient", serde_json::json!({"order": q3.order(), "abelian": q3.is_abelian()}));
    run.report.data("lower3_quotient", serde_json::json!({"order": ql3.order(), "abelian": ql3.is_abelian()}));
    Ok(())
}

pub fn cohomology(run: &mut Run, g: &FiniteGroup, md: Modulus, deg: usize, h2_cap: usize) -> Result<(), CliError> {
    run.modulus(md);
    let one = h1(g, md);
    run.report.check("H^1", Status::Pass, format!("invariants {:?}", one.summary().invariants));
    run.report.data("h1", one.summary());
    if let Some(c) = run.step("H^2", || cohomology_summary(g, md, h2_cap))? {
        let all = c.h2.summary();
        let dec = c.h2.sub_summary(&c.dec);
        let beta = c.h2.sub_summary(&c.beta);
        let dec_all = dec.log_order == all.log_order;
        run.report.check("H^2", Status::Pass, format!("invariants {:?}", all.invariants));
        run.report.check("H^2_dec", Status::Pass, format!("invariants {:?}; equals H^2: {dec_all}", dec.invariants));
        run.report.check("Img(beta)", Status::Pass, format!("invariants {:?}", beta.invariants));
        run.report.data("h2", all);
        run.report.data("h2_dec", dec);
        run.report.data("image_beta", beta);
        run.report.data("h2_equals_dec", dec_all);
    }
    let data = match DegreeTwoData::new(g, md) {
        Ok(d) => d,
        Err(Error::Hypothesis(msg)) => {
            run.report.check("hat ring", Status::Skipped, msg);
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(hat) = run.step("hat ring", || hat_ring_of(&data, deg))? {
        run.report.check(
            "hat ring",
            Status::Pass,
            format!("degree-2 map onto H^2_dec injective: {}", hat.quadratic_in_degree_two),
        );
        run.report.data("hat_ring", hat);
    }
    Ok(())
}

pub fn pairing(run: &mut Run, g: &FiniteGroup, md: Modulus, triple: Option<TripleKind>) -> Result<(), CliError> {
    run.modulus(md);
    let Some(data) = run.step("degree-two data", || DegreeTwoData::new(g, md))? else { return Ok(()) };
    for t in triples(triple) {
        let setting = DualitySetting::for_triple_with(&data, t)?;
        let name = format!("{t}: substitution pairing");
        if let Some(a) = run.step(&name, || pairing_a(g, &setting.t, &setting.t0, md))? {
            run.report.check(&name, Status::from_bool(a.perfect), format!("|T/T_0| = p^{}", a.left_log));
            run.report.data(format!("{t}/substitution"), a);
        }
        let name = format!("{t}: transgression pairing");
        if let Some(b) = run.step(&name, || pairing_b(&setting))? {
            run.report.check(&name, Status::from_bool(b.perfect), format!("|Ker| = p^{}", b.right_log));
            run.report.data(format!("{t}/transgression"), b);
        }
    }
    Ok(())
}

pub fn duality_check(
    run: &mut Run,
    g: &FiniteGroup,
    md: Modulus,
    triple: Option<TripleKind>,
    harness: bool,
) -> Result<(), CliError> {
    run.modulus(md);
    let Some(data) = run.step("degree-two data", || DegreeTwoData::new(g, md))? else { return Ok(()) };
    let epis = sample_epimorphisms(g, md)?;
    for t in triples(triple) {
        let name = format!("{t}: conditions (a)-(f)");
        let setting = DualitySetting::for_triple_with(&data, t)?;
        if let Some(c) = run.step(&name, || check_duality_conditions(&setting))? {
            let details = format!("verdicts {:?}", c.verdicts());
            run.report.check(&name, Status::from_bool(c.consistent()), details);
            run.report.check(format!("{t}: dual"), Status::from_bool(c.all()), format!("|T/T_0| = {}", c.t_order / c.t0_order));
            run.report.data(format!("{t}/conditions"), c);
        }
        let name = format!("{t}: axioms");
        if let Some(a) = run.step(&name, || triple_axioms_check(g, md, t, &epis))? {
            run.report.check(&name, Status::from_bool(a.passed()), format!("{} epimorphisms", a.epimorphisms));
            run.report.data(format!("{t}/axioms"), a);
        }
        if harness {
            let name = format!("{t}: quotient harness");
            if let Some(h) = run.step(&name, || quotient_criterion_harness(g, md, t))? {
                let details = format!(
                    "{} normal subgroups; (a)xor(b): {}, (b) without (c): {}",
                    h.rows.len(),
                    h.equivalence_failures(),
                    h.implication_failures()
                );
                run.report.check(&name, Status::from_bool(h.passed()), details);
                run.report.data(format!("{t}/harness"), h);
            }
        }
    }
    Ok(())
}

pub fn theorem_d(run: &mut Run, g: &FiniteGroup, p: u32) -> Result<(), CliError> {
    let md = Modulus::new(p)?;
    if md.s() != 1 {
        return Err(CliError::Usage(format!("--p must be prime, got {p}")));
    }
    run.modulus(md);
    let Some(r) = run.step("theorem D", || theorem_d_check(g, p))? else { return Ok(()) };
    let status = match r.verdict {
        Verdict::Pass => Status::Pass,
        Verdict::Fail => Status::Fail,
        Verdict::HypothesisNotMet => Status::HypothesisNotMet,
    };
    let details = format!(
        "G_(3) of order {}, intersection of order {}; Galois relation type: {}",
        r.lower3_order,
        r.intersection_order,
        r.galois.passes()
    );
    let galois = r.galois.passes();
    run.report.check("theorem D", status, details);
    run.report.data("theorem_d", &r);
    for t in TripleKind::ALL {
        let name = format!("{t}: T_0 as intersection");
        if let Some((_, rep)) = run.step(&name, || t0_by_intersection(g, md, t))? {
            let status = match (rep.equal, galois) {
                (true, _) => Status::Pass,
                (false, true) => Status::Fail,
                (false, false) => Status::HypothesisNotMet,
            };
            let details = format!("L(G) = {:?}; orders {} vs {}", rep.list, rep.order, rep.t0_order);
            run.report.check(&name, status, details);
            run.report.data(format!("{t}/intersection"), rep);
        }
    }
    Ok(())
}

pub fn free_model(run: &mut Run, d: usize, md: Modulus, variant: Variant, cap: usize) -> Result<FiniteGroup, CliError> {
    run.modulus(md);
    let model = free_level3(d, md, variant)?;
    let g = model.group.clone();
    if g.order() > cap {
        return Err(Error::LimitExceeded {
            what: "free model".into(),
            order: g.order(),
            limit: cap,
        }
        .into());
    }
    run.report.check("model", Status::Pass, format!("order {}", g.order()));
    run.report.data("order", g.order());
    run.report.data("generators", &model.sigma);
    if variant == Variant::Flat && d == 2 && md.s() == 1 && md.p() > 2 {
        let name = "isomorphic-to-heisenberg";
        if let Some(iso) = run.step(name, || is_isomorphic(&g, &heisenberg(md.p())?))? {
            run.report.check(name, Status::from_bool(iso), iso.to_string());
        }
    }
    if variant == Variant::Sharp {
        let name = "dual bases";
        if let Some(r) = run.step(name, || dual_basis_check(d, md.q()))? {
            run.report.check(name, Status::from_bool(r.identity), format!("perfect: {}", r.pairing.perfect));
            run.report.data("dual_basis", r);
        }
    }
    Ok(g)
}

pub fn reconstruct(run: &mut Run, g: &FiniteGroup, md: Modulus, triple: Option<TripleKind>) -> Result<(), CliError> {
    run.modulus(md);
    for t in triples(triple) {
        let name = format!("{t}: reconstruction");
        let Some((d, kernel)) = run.step(&name, || cohomological_data(g, md, t))? else { continue };
        let Some(r) = run.step(&name, || reconstruct_quotient(d, md.q(), t, &kernel))? else { continue };
        let target = quotient(g, &t.t0(g, md))?.quotient;
        let iso = is_isomorphic(&r.group, &target)?;
        run.report.check(&name, Status::from_bool(iso), format!("reconstruction isomorphic: {iso}"));
        run.report.data(format!("{t}/kernel_data"), &kernel);
        run.report.data(format!("{t}/reconstruction"), &r);
        run.report.data(format!("{t}/target_order"), target.order());
    }
    Ok(())
}

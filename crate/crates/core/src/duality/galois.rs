//! Galois relation type, special sets, the extension lists `L(G)`, and the
//! resulting intersection formulas for `T_0(G)` and `G_(3)`.

use serde::Serialize;

use super::triple::TripleKind;
use crate::cohomology::{
    bockstein, cup11, extension_from_class, inflation, Cochain1, Cochain2, DegreeTwoData,
};
use crate::error::{Error, Result};
use crate::group::{
    cyclic, dihedral4, direct_product, elementary_abelian, enumerate_homs, heisenberg, is_isomorphic, lower3, modular,
    quaternion8, quotient, subgroup_closure, FiniteGroup, GroupHom, Subgroup,
};
use crate::zq::{solve, Modulus, Submodule, ZqMatrix};

/// Conditions (i) to (iii) of Galois relation type.
#[derive(Clone, Debug, Serialize)]
pub struct GaloisReport {
    pub modulus: u32,
    /// `G^[2]` is free over `Z/q`.
    pub elementary: bool,
    /// Some `xi` with `beta(psi) = psi ∪ xi` in `H^2(G)` for all `psi`.
    pub xi: Option<Vec<u32>>,
    /// `Ker(inf: H^2_dec(G^[2]) -> H^2(G))` is spanned by cup products lying in it.
    pub cup_generated: bool,
    pub rank: usize,
    pub note: Option<String>,
}

impl GaloisReport {
    pub fn beta_is_cup(&self) -> bool {
        self.xi.is_some()
    }
    pub fn passes(&self) -> bool {
        self.elementary && self.beta_is_cup() && self.cup_generated
    }
}

pub fn galois_relation_type(g: &FiniteGroup, modulus: Modulus) -> Result<GaloisReport> {
    match DegreeTwoData::new(g, modulus) {
        Ok(data) => galois_relation_type_of(&data),
        Err(Error::Hypothesis(msg)) => Ok(GaloisReport {
            modulus: modulus.q(),
            elementary: false,
            xi: None,
            cup_generated: false,
            rank: 0,
            note: Some(msg),
        }),
        Err(e) => Err(e),
    }
}

pub fn galois_relation_type_of(data: &DegreeTwoData) -> Result<GaloisReport> {
    let md = data.modulus;
    let frame = &data.frame;
    let d = frame.d;
    let dim = frame.class_dim();
    let units: Vec<Vec<u32>> = (0..d).map(|i| unit(d, i)).collect();

    // Unknowns: xi (d entries), then one combination of kernel generators per i.
    let lgens = data.kernel.generators();
    let nl = lgens.len();
    let cols = d + d * nl;
    let mut rows = Vec::with_capacity(d * dim);
    let mut rhs = Vec::with_capacity(d * dim);
    for i in 0..d {
        let beta = frame.beta_vector(&units[i]);
        let cups: Vec<Vec<u32>> = (0..d).map(|j| frame.cup_vector(&units[i], &units[j])).collect();
        for c in 0..dim {
            let mut row = vec![0u32; cols];
            for j in 0..d {
                row[j] = cups[j][c];
            }
            for (k, l) in lgens.iter().enumerate() {
                row[d + i * nl + k] = l[c];
            }
            rows.push(row);
            rhs.push(beta[c]);
        }
    }
    let xi = if d == 0 {
        Some(Vec::new())
    } else {
        let mat = ZqMatrix::from_residue_rows(md, cols, &rows);
        solve(&mat, &rhs)?.map(|x| x[..d].to_vec())
    };

    let dec_ker = data.dec.intersection(&data.kernel);
    let vs = frame.all_vectors();
    let mut cup_gens = Vec::new();
    for a in &vs {
        for b in &vs {
            let v = frame.cup_vector(a, b);
            if data.kernel.contains(&v) {
                cup_gens.push(v);
            }
        }
    }
    let cup_generated = data.classes.span(&cup_gens) == dec_ker;
    Ok(GaloisReport {
        modulus: md.q(),
        elementary: true,
        xi,
        cup_generated,
        rank: d,
        note: None,
    })
}

fn unit(d: usize, i: usize) -> Vec<u32> {
    (0..d).map(|k| u32::from(k == i)).collect()
}

/// The tensor `phi` of a special pair, in characters of `G^[2]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SpecialTensor {
    /// `psi ⊗ psi'`, sent to `psi ∪ psi'`.
    Cup(Vec<u32>, Vec<u32>),
    /// `-psi ⊕ (psi ⊗ psi')`, sent to `-beta(psi) + psi ∪ psi'`.
    BockCup(Vec<u32>, Vec<u32>),
    /// `psi`, sent to `beta(psi)`.
    Bock(Vec<u32>),
}

impl SpecialTensor {
    fn characters(&self) -> Vec<&Vec<u32>> {
        match self {
            SpecialTensor::Cup(a, b) | SpecialTensor::BockCup(a, b) => vec![a, b],
            SpecialTensor::Bock(a) => vec![a],
        }
    }
}

/// A pair `(Gbar, phibar)` with `Gbar` a quotient of `G^[2]`.
#[derive(Clone, Debug, Serialize)]
pub struct SpecialPair {
    pub tensor: SpecialTensor,
    /// `alpha(phi)` on `G^[2]`, in frame coordinates.
    pub class_vector: Vec<u32>,
    #[serde(skip)]
    pub quotient: FiniteGroup,
    /// `G^[2] -> Gbar`.
    #[serde(skip)]
    pub projection: GroupHom,
    /// `alpha(phibar)` on `Gbar`.
    #[serde(skip)]
    pub class: Cochain2,
    pub quotient_order: usize,
    /// Inflating `alpha(phibar)` back to `G^[2]` gives `class_vector`.
    pub descends: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialSet {
    pub triple: TripleKind,
    pub galois: GaloisReport,
    pub pairs: Vec<SpecialPair>,
    /// The classes `alpha(phi)` generate `Ker(inf: A(G^[2]) -> H^2(G))`.
    pub generates: bool,
}

/// Greedy special set: candidates are scanned in a fixed order and kept when
/// they enlarge the span, until the kernel is reached.
pub fn special_set(g: &FiniteGroup, modulus: Modulus, triple: TripleKind) -> Result<SpecialSet> {
    let data = DegreeTwoData::new(g, modulus)?;
    special_set_of(&data, triple)
}

pub fn special_set_of(data: &DegreeTwoData, triple: TripleKind) -> Result<SpecialSet> {
    let galois = galois_relation_type_of(data)?;
    let md = data.modulus;
    let frame = &data.frame;
    let classes = &data.classes;
    let target = triple.a_module(data).intersection(&data.kernel);
    let rel = classes.relations().clone();
    let vs = frame.all_vectors();
    let nonzero: Vec<&Vec<u32>> = vs.iter().filter(|a| a.iter().any(|&x| x != 0)).collect();

    let mut candidates: Vec<(SpecialTensor, Vec<u32>)> = Vec::new();
    match triple {
        TripleKind::DecCup => {
            for a in &nonzero {
                for b in &nonzero {
                    candidates.push((SpecialTensor::Cup((*a).clone(), (*b).clone()), frame.cup_vector(a, b)));
                }
            }
        }
        TripleKind::BockCup => {
            for a in &nonzero {
                for b in &vs {
                    let beta = frame.beta_vector(a);
                    let cup = frame.cup_vector(a, b);
                    let v: Vec<u32> = cup.iter().zip(&beta).map(|(&c, &x)| md.sub(c, x)).collect();
                    candidates.push((SpecialTensor::BockCup((*a).clone(), b.clone()), v));
                }
            }
        }
        TripleKind::Bock => {
            for a in &nonzero {
                candidates.push((SpecialTensor::Bock((*a).clone()), frame.beta_vector(a)));
            }
        }
    }

    let mut span = rel.clone();
    let mut pairs = Vec::new();
    for (tensor, v) in candidates {
        if span == target {
            break;
        }
        if !data.kernel.contains(&v) || span.contains(&v) {
            continue;
        }
        span = span.sum(&Submodule::new(md, classes.dim(), std::slice::from_ref(&v)));
        pairs.push(descend(data, tensor, v)?);
    }
    Ok(SpecialSet {
        triple,
        generates: span == target,
        galois,
        pairs,
    })
}

fn descend(data: &DegreeTwoData, tensor: SpecialTensor, v: Vec<u32>) -> Result<SpecialPair> {
    let md = data.modulus;
    let q = data.base();
    let frame = &data.frame;
    let chars = tensor.characters();
    let members: Vec<usize> = (0..q.order())
        .filter(|&x| {
            chars
                .iter()
                .all(|a| a.iter().zip(frame.coords(x)).fold(0, |acc, (&ai, &ci)| md.add(acc, md.mul(ai, ci))) == 0)
        })
        .collect();
    let n = subgroup_closure(q, &members);
    let qd = quotient(q, &n)?;
    let bar = &qd.quotient;
    let descended: Vec<Cochain1> = chars
        .iter()
        .map(|a| {
            let chi = frame.character(a);
            Cochain1::from_fn(md, bar.order(), |y| chi.value(qd.representatives[y]) as i64)
        })
        .collect();
    let class = match &tensor {
        SpecialTensor::Cup(..) => cup11(bar, &descended[0], &descended[1])?,
        SpecialTensor::BockCup(..) => {
            let cup = cup11(bar, &descended[0], &descended[1])?;
            cup.sub(&bockstein(bar, &descended[0])?)
        }
        SpecialTensor::Bock(_) => bockstein(bar, &descended[0])?,
    };
    let back = data.classes.express_one(&inflation(&qd.projection, &class)?)?;
    let diff: Vec<u32> = back.iter().zip(&v).map(|(&x, &y)| md.sub(x, y)).collect();
    let descends = data.classes.relations().contains(&diff);
    Ok(SpecialPair {
        tensor,
        class_vector: v,
        quotient_order: bar.order(),
        quotient: qd.quotient,
        projection: qd.projection,
        class,
        descends,
    })
}

/// One member of `L(G)` with the extension class that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct ExtensionMember {
    pub name: String,
    pub order: usize,
    #[serde(skip)]
    pub group: FiniteGroup,
    #[serde(skip)]
    pub class: Cochain2,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionList {
    pub triple: TripleKind,
    /// Distinct isomorphism types, in the order first met.
    pub members: Vec<ExtensionMember>,
    pub special: SpecialSet,
}

impl ExtensionList {
    pub fn names(&self) -> Vec<String> {
        self.members.iter().map(|m| m.name.clone()).collect()
    }
}

pub fn l_of_g(g: &FiniteGroup, modulus: Modulus, triple: TripleKind) -> Result<ExtensionList> {
    let special = special_set(g, modulus, triple)?;
    extension_list(special)
}

pub fn extension_list(special: SpecialSet) -> Result<ExtensionList> {
    let mut members: Vec<ExtensionMember> = Vec::new();
    for pair in &special.pairs {
        let ext = extension_from_class(&pair.quotient, &pair.class)?;
        let mut known = false;
        for m in &members {
            if is_isomorphic(&m.group, &ext.group)? {
                known = true;
                break;
            }
        }
        if !known {
            members.push(ExtensionMember {
                name: identify(&ext.group)?,
                order: ext.group.order(),
                group: ext.group,
                class: pair.class.clone(),
            });
        }
    }
    Ok(ExtensionList {
        triple: special.triple,
        members,
        special,
    })
}

fn prime_power(n: usize) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut k = 0;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p as u32, k))
}

/// Named groups of order `n` used to label extensions.
pub fn catalog(n: usize) -> Result<Vec<(String, FiniteGroup)>> {
    let mut out = vec![(format!("Z/{n}"), cyclic(n)?)];
    let Some((p, k)) = prime_power(n) else {
        return Ok(out);
    };
    let pu = p as usize;
    if k == 2 {
        out.push((format!("Z/{p} x Z/{p}"), elementary_abelian(pu, 2)?));
    }
    if k == 3 {
        out.push((format!("Z/{} x Z/{p}", pu * pu), direct_product(&cyclic(pu * pu)?, &cyclic(pu)?)?));
        out.push((format!("(Z/{p})^3"), elementary_abelian(pu, 3)?));
        if p == 2 {
            out.push(("D4".into(), dihedral4()?));
            out.push(("Q8".into(), quaternion8()?));
        } else {
            out.push((format!("H_{n}"), heisenberg(p)?));
            out.push((format!("M_{n}"), modular(p)?));
        }
    }
    Ok(out)
}

/// A catalog name for `b`, or a description by order when none matches.
pub fn identify(b: &FiniteGroup) -> Result<String> {
    for (name, c) in catalog(b.order())? {
        if is_isomorphic(b, &c)? {
            return Ok(name);
        }
    }
    Ok(format!("group of order {}", b.order()))
}

/// `⋂ Ker(G -> B)` over all epimorphisms onto the given groups, inside `start`.
pub fn intersect_epi_kernels(g: &FiniteGroup, targets: &[FiniteGroup], start: &Subgroup) -> Result<Subgroup> {
    let mut keep = start.mask().to_vec();
    for b in targets {
        for h in enumerate_homs(g, b, true)? {
            for (x, k) in keep.iter_mut().enumerate() {
                if *k && h.apply(x) != 0 {
                    *k = false;
                }
            }
        }
    }
    let members: Vec<usize> = (0..g.order()).filter(|&x| keep[x]).collect();
    Ok(subgroup_closure(g, &members))
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionReport {
    pub triple: TripleKind,
    pub list: Vec<String>,
    pub order: usize,
    pub t0_order: usize,
    pub equal: bool,
    pub galois_passes: bool,
}

/// `T(G) ∩ ⋂{M ⊴ G : G/M ∈ L(G)}`.
pub fn t0_by_intersection(g: &FiniteGroup, modulus: Modulus, triple: TripleKind) -> Result<(Subgroup, IntersectionReport)> {
    let list = l_of_g(g, modulus, triple)?;
    let t = triple.t(g, modulus);
    let targets: Vec<FiniteGroup> = list.members.iter().map(|m| m.group.clone()).collect();
    let result = intersect_epi_kernels(g, &targets, &t)?;
    let t0 = triple.t0(g, modulus);
    let report = IntersectionReport {
        triple,
        list: list.names(),
        order: result.order(),
        t0_order: t0.order(),
        equal: result == t0,
        galois_passes: list.special.galois.passes(),
    };
    Ok((result, report))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisNotMet,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremDReport {
    pub p: u32,
    pub list: Vec<String>,
    pub lower3_order: usize,
    pub intersection_order: usize,
    pub equal: bool,
    pub galois: GaloisReport,
    pub verdict: Verdict,
}

/// Compares `G_(3)` (with `q = p`) to the intersection of the kernels of all
/// epimorphisms onto `Z/p` and `H_{p^3}` (`p` odd) or `Z/2`, `Z/4`, `D4`.
/// A mismatch counts as a failure only when `G` has Galois relation type.
pub fn theorem_d_check(g: &FiniteGroup, p: u32) -> Result<TheoremDReport> {
    let md = Modulus::new(p)?;
    if md.s() != 1 {
        return Err(Error::InvalidParams(format!("{p} is not prime")));
    }
    let targets: Vec<(String, FiniteGroup)> = if p == 2 {
        vec![("Z/2".into(), cyclic(2)?), ("Z/4".into(), cyclic(4)?), ("D4".into(), dihedral4()?)]
    } else {
        vec![(format!("Z/{p}"), cyclic(p as usize)?), (format!("H_{}", p * p * p), heisenberg(p)?)]
    };
    let groups: Vec<FiniteGroup> = targets.iter().map(|t| t.1.clone()).collect();
    let lhs = lower3(g, md);
    let rhs = intersect_epi_kernels(g, &groups, &Subgroup::whole(g))?;
    let galois = galois_relation_type(g, md)?;
    let equal = lhs == rhs;
    let verdict = if equal {
        Verdict::Pass
    } else if galois.passes() {
        Verdict::Fail
    } else {
        Verdict::HypothesisNotMet
    };
    Ok(TheoremDReport {
        p,
        list: targets.into_iter().map(|t| t.0).collect(),
        lower3_order: lhs.order(),
        intersection_order: rhs.order(),
        equal,
        galois,
        verdict,
    })
}

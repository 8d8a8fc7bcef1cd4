//! Instance-wise checks of the triple axioms, of the quotient criterion over
//! all normal subgroups of `T(G)`, and of the conditions on an epimorphism.

use serde::Serialize;

use super::conditions::is_dual;
use super::pairing::DualitySetting;
use super::triple::TripleKind;
use crate::cohomology::{c_rt_with_kernel, DegreeTwoData, MAX_TENSOR_DEGREE};
use crate::error::{Error, Result};
use crate::group::{
    commutator_subgroup, normal_subgroups_within, power_subgroup, quotient, FiniteGroup, GroupHom, Subgroup,
};
use crate::zq::Modulus;

/// An epimorphism from the group under test, with its target.
#[derive(Clone, Debug)]
pub struct Epimorphism {
    pub target: FiniteGroup,
    pub map: GroupHom,
}

/// Quotients of `G` by normal subgroups inside `G^(2)` (when that search
/// is within caps) and by `G` itself.
pub fn sample_epimorphisms(g: &FiniteGroup, modulus: Modulus) -> Result<Vec<Epimorphism>> {
    let whole = Subgroup::whole(g);
    let level2 = TripleKind::DecCup.t(g, modulus);
    let search = if g.order() <= 64 { whole.clone() } else { level2 };
    let mut normals = if search.order() <= 64 {
        normal_subgroups_within(g, &search)?
    } else {
        vec![Subgroup::trivial(g)]
    };
    if !normals.contains(&whole) {
        normals.push(whole);
    }
    normals
        .iter()
        .map(|n| {
            let qd = quotient(g, n)?;
            Ok(Epimorphism {
                target: qd.quotient,
                map: qd.projection,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub triple: TripleKind,
    /// `T(G)` and `T_0(G)` are normal.
    pub a1: bool,
    /// `T^q[T, G] ≤ T_0 ≤ T ≤ G^(2)`.
    pub a2: bool,
    /// Images under every sampled epimorphism are the subgroups of the image.
    pub a3: bool,
    pub a3_failures: Vec<usize>,
    pub epimorphisms: usize,
    /// `A(G^[2])` dual to `(T, T_0)`; `None` when `G^[2]` is not free over `Z/q`.
    pub a4: Option<bool>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.a1 && self.a2 && self.a3 && self.a4.unwrap_or(true)
    }
}

pub fn triple_axioms_check(
    g: &FiniteGroup,
    modulus: Modulus,
    triple: TripleKind,
    epis: &[Epimorphism],
) -> Result<AxiomReport> {
    let t = triple.t(g, modulus);
    let t0 = triple.t0(g, modulus);
    let a1 = t.is_normal_in(g) && t0.is_normal_in(g);
    let floor = power_subgroup(g, &t, modulus.q() as u64).join(g, &commutator_subgroup(g, &t, &Subgroup::whole(g)));
    let level2 = TripleKind::DecCup.t(g, modulus);
    let a2 = floor.is_subgroup_of(&t0) && t0.is_subgroup_of(&t) && t.is_subgroup_of(&level2);
    let mut a3_failures = Vec::new();
    for (i, e) in epis.iter().enumerate() {
        if e.map.source_order() != g.order() || !e.map.is_surjective() {
            return Err(Error::Precondition(format!("sample {i} is not an epimorphism from G")));
        }
        let ok = e.map.map_subgroup(&e.target, &t) == triple.t(&e.target, modulus)
            && e.map.map_subgroup(&e.target, &t0) == triple.t0(&e.target, modulus);
        if !ok {
            a3_failures.push(i);
        }
    }
    let a4 = match DegreeTwoData::new(g, modulus) {
        Ok(data) => Some(is_dual(&DualitySetting::for_triple_with(&data, triple)?)?),
        Err(Error::Hypothesis(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(AxiomReport {
        triple,
        a1,
        a2,
        a3: a3_failures.is_empty(),
        a3_failures,
        epimorphisms: epis.len(),
        a4,
    })
}

/// One normal subgroup `N ≤ T(G)`.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientRow {
    pub order: usize,
    pub members: Vec<usize>,
    /// `N ≤ T_0(G)`.
    pub a: bool,
    /// `inf: A(G/N) -> A(G)` is an isomorphism.
    pub b: bool,
    /// `(r, t, iso)` for the inflation `H^r_{t,alpha}(G/N) -> H^r_{t,alpha}(G)`.
    pub c: Vec<(usize, usize, bool)>,
}

impl QuotientRow {
    pub fn c_all(&self) -> bool {
        self.c.iter().all(|x| x.2)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientTable {
    pub triple: TripleKind,
    pub t_order: usize,
    pub t0_order: usize,
    pub rows: Vec<QuotientRow>,
}

impl QuotientTable {
    /// Rows where (a) and (b) disagree.
    pub fn equivalence_failures(&self) -> usize {
        self.rows.iter().filter(|r| r.a != r.b).count()
    }
    /// Rows where (b) holds but (c) fails.
    pub fn implication_failures(&self) -> usize {
        self.rows.iter().filter(|r| r.b && !r.c_all()).count()
    }
    pub fn passed(&self) -> bool {
        self.equivalence_failures() == 0 && self.implication_failures() == 0
    }
}

/// Evaluates, for every normal `N ≤ T(G)`: (a) `N ≤ T_0(G)`, (b) `A(G/N) ≅ A(G)`
/// via inflation, (c) `H^r_{t,alpha}(G/N) ≅ H^r_{t,alpha}(G)` for `r ≤ 3`.
pub fn quotient_criterion_harness(g: &FiniteGroup, modulus: Modulus, triple: TripleKind) -> Result<QuotientTable> {
    let data = DegreeTwoData::new(g, modulus)?;
    let t = triple.t(g, modulus);
    let t0 = triple.t0(g, modulus);
    let a = triple.a_module(&data);
    let alpha = triple.alpha();
    let setting = DualitySetting::from_data(&data, &t0, &a)?;
    let l_g = data.kernel.clone();
    let a_ker = a.intersection(&l_g);
    let mut reference = Vec::new();
    for r in 1..=MAX_TENSOR_DEGREE {
        for tt in 1..=r {
            reference.push((r, tt, c_rt_with_kernel(&data, &l_g, alpha, r, tt)?));
        }
    }
    let mut rows = Vec::new();
    for n in normal_subgroups_within(g, &t)? {
        let l_n = setting.kernel_to(&n)?;
        let b = a.intersection(&l_n) == a_ker;
        let mut c = Vec::with_capacity(reference.len());
        for (r, tt, cg) in &reference {
            let cn = c_rt_with_kernel(&data, &l_n, alpha, *r, *tt)?;
            c.push((*r, *tt, &cn == cg));
        }
        rows.push(QuotientRow {
            order: n.order(),
            members: n.members().to_vec(),
            a: n.is_subgroup_of(&t0),
            b,
            c,
        });
    }
    Ok(QuotientTable {
        triple,
        t_order: t.order(),
        t0_order: t0.order(),
        rows,
    })
}

/// Conditions on an epimorphism `G_1 -> G_2` inducing `G_1^[2] ≅ G_2^[2]`.
#[derive(Clone, Debug, Serialize)]
pub struct EpimorphismConditions {
    pub triple: TripleKind,
    /// `G_1/T_0(G_1) -> G_2/T_0(G_2)` is an isomorphism.
    pub a: bool,
    /// `Ker(pi) ≤ T_0(G_1)`.
    pub b: bool,
    /// `A(pi): A(G_2) -> A(G_1)` is an isomorphism.
    pub c: bool,
    /// `A(pi)` is injective.
    pub d: bool,
}

impl EpimorphismConditions {
    pub fn consistent(&self) -> bool {
        self.a == self.b && self.b == self.c && self.c == self.d
    }
}

pub fn ppp_conditions(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    pi: &GroupHom,
    modulus: Modulus,
    triple: TripleKind,
) -> Result<EpimorphismConditions> {
    if pi.source_order() != g1.order() || pi.target_order() != g2.order() || !pi.is_surjective() {
        return Err(Error::Precondition("map is not an epimorphism G1 -> G2".into()));
    }
    let data1 = DegreeTwoData::new(g1, modulus)?;
    let data2 = DegreeTwoData::new(g2, modulus)?;
    if data1.base().order() != data2.base().order() {
        return Err(Error::Precondition("epimorphism does not induce an isomorphism on [2]-quotients".into()));
    }
    let t0_1 = triple.t0(g1, modulus);
    let t0_2 = triple.t0(g2, modulus);
    let a = g1.order() / t0_1.order() == g2.order() / t0_2.order()
        && pi.map_subgroup(g2, &t0_1) == t0_2;
    let kernel = pi.kernel(g1);
    let b = kernel.is_subgroup_of(&t0_1);

    // G_2 -> G_1^[2] through any preimage; well defined since Ker(pi) ≤ G_1^(2).
    let mut pre = vec![usize::MAX; g2.order()];
    for x in 0..g1.order() {
        let y = pi.apply(x);
        if pre[y] == usize::MAX {
            pre[y] = x;
        }
    }
    let images = pre.iter().map(|&x| data1.projection().apply(x)).collect();
    let to_base = GroupHom::new(g2, data1.base(), images)?;
    let l1 = data1.kernel.clone();
    let l2 = data1.kernel_for(g2, &to_base)?;
    let am = triple.a_module(&data1);
    let k1 = am.intersection(&l1);
    let k2 = am.intersection(&l2);
    let c = k1 == k2;
    let d = k1.is_subset_of(&k2);
    Ok(EpimorphismConditions { triple, a, b, c, d })
}

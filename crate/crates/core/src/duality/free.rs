//! Checks that live on the free level-3 models and on `(Z/q)^d`: the
//! character conditions for decomposable transgressions, local-global
//! detection of decomposable classes, dual bases, explicit pairing values,
//! reconstruction of `G/T_0(G)` from inflation kernels, and surjectivity of
//! `alpha_G`.

use serde::Serialize;

use super::pairing::DualitySetting;
use super::triple::TripleKind;
use crate::cohomology::{all_vectors, h2, Cochain2, CharacterSpace, DegreeTwoData, InvariantCharacters, Transgression};
use crate::error::{Error, Result};
use crate::free_model::{free_level3, pairs, CentralGenerator, FreeLevel3Model, Variant};
use crate::group::{elementary_abelian, lower3, quotient, subgroup_closure, FiniteGroup, Subgroup};
use crate::zq::{pairing_perfection, solve, AbGroupPresentation, Modulus, PairingReport, ZqMatrix};

/// Cyclic subgroups of order `q` of `x`, each given by one generator.
pub fn cyclic_subgroups_of_order(x: &FiniteGroup, q: usize) -> Vec<usize> {
    let mut seen = vec![false; x.order()];
    let mut gens = Vec::new();
    for g in 0..x.order() {
        if seen[g] || x.element_order(g) != q {
            continue;
        }
        let mut y = g;
        for _ in 0..q {
            seen[y] = true;
            y = x.mul(y, g);
        }
        gens.push(g);
    }
    gens
}

/// The class invariant `sum_{k<q} f(x^k, x)` of the restriction of a
/// 2-cocycle `f` to the cyclic group generated by `x` of order `q`.
fn cyclic_invariant(x: &FiniteGroup, md: Modulus, f: &Cochain2, gen: usize) -> u32 {
    let mut acc = 0;
    let mut y = 0;
    for _ in 0..md.q() {
        acc = md.add(acc, f.get(y, gen));
        y = x.mul(y, gen);
    }
    acc
}

/// A character in `space` taking the value `values[k]` at `elements[k]`.
pub fn character_with_values(space: &InvariantCharacters, elements: &[usize], values: &[u32]) -> Result<Option<Vec<u32>>> {
    let md = space.space.modulus();
    let gens = space.module().generators().to_vec();
    if gens.is_empty() {
        return Ok(values.iter().all(|&v| v % md.q() == 0).then(|| vec![0; space.module().dim()]));
    }
    let rows: Vec<Vec<u32>> = elements.iter().map(|&x| gens.iter().map(|m| space.eval(m, x)).collect()).collect();
    let mat = ZqMatrix::from_residue_rows(md, gens.len(), &rows);
    Ok(solve(&mat, values)?.map(|c| crate::zq::combine(md, space.module().dim(), &c, &gens)))
}

/// Conditions (a) to (d) on `psi` in `H^1(G^(2))^G`.
#[derive(Clone, Debug, Serialize)]
pub struct KkkReport {
    /// `trg(psi)` lies in `H^2_dec(G^[2])`.
    pub a: bool,
    /// `delta * trg(psi)` restricts to zero on every cyclic subgroup of order `q`.
    pub b: bool,
    /// `delta * psi` extends to every `M` with `M / G^(2)` cyclic of order `q`.
    pub c: bool,
    /// `psi` vanishes on `G_(3)`.
    pub d: bool,
    pub transgression: Vec<u32>,
    pub cyclic_subgroups: usize,
}

impl KkkReport {
    pub fn consistent(&self) -> bool {
        self.a == self.b && self.b == self.c && self.c == self.d
    }
}

/// The setting for [`kkk_conditions`]: `T = G^(2)` with its transgression.
pub fn kkk_setting(g: &FiniteGroup, md: Modulus) -> Result<(DegreeTwoData, Transgression)> {
    let data = DegreeTwoData::new(g, md)?;
    let trg = Transgression::new(g, &data.level2, md)?;
    Ok((data, trg))
}

pub fn kkk_conditions(data: &DegreeTwoData, trg: &Transgression, psi: &[u32]) -> Result<KkkReport> {
    let md = data.modulus;
    let g = &data.group;
    let base = data.base();
    let delta = md.delta();
    let f = trg.cocycle(psi)?;
    let phi = data.classes.express_one(&f)?;
    let a = data.dec.contains(&phi);

    let cyclic = cyclic_subgroups_of_order(base, md.q() as usize);
    let b = cyclic
        .iter()
        .all(|&x| md.mul(delta, cyclic_invariant(base, md, &f, x)) == 0);

    let inv = &trg.invariants;
    let t_gens: Vec<usize> = inv.group.generators().iter().map(|&s| inv.embedding[s]).collect();
    let target: Vec<u32> = t_gens.iter().map(|&x| md.mul(delta, inv.eval(psi, x))).collect();
    let mut c = true;
    for &x in &cyclic {
        let m = data.projection().preimage(g, &subgroup_closure(base, &[x]));
        let (mg, emb) = m.as_group(g)?;
        let mut pos = vec![usize::MAX; g.order()];
        for (i, &e) in emb.iter().enumerate() {
            pos[e] = i;
        }
        let space = CharacterSpace::new(&mg, md);
        let gens = space.module().generators().to_vec();
        let rows: Vec<Vec<u32>> = t_gens
            .iter()
            .map(|&t| gens.iter().map(|chi| space.eval(chi, pos[t])).collect())
            .collect();
        let solvable = if gens.is_empty() {
            target.iter().all(|&v| v == 0)
        } else {
            solve(&ZqMatrix::from_residue_rows(md, gens.len(), &rows), &target)?.is_some()
        };
        if !solvable {
            c = false;
            break;
        }
    }

    let l3 = lower3(g, md);
    let d = l3.members().iter().all(|&x| inv.eval(psi, x) == 0);
    Ok(KkkReport {
        a,
        b,
        c,
        d,
        transgression: phi,
        cyclic_subgroups: cyclic.len(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalGlobalReport {
    pub d: usize,
    pub q: u32,
    pub classes_checked: usize,
    pub cyclic_subgroups: usize,
    pub decomposable: usize,
    /// Decomposable exactly when `delta * res_C` vanishes for every `C`.
    pub exact: bool,
    /// The coefficient test `delta * lambda_i = 0` on the Bockstein slots agrees.
    pub coefficient_route: bool,
    /// Restriction invariants match `sum d_i a_i + (q/delta) sum d_ij a_i a_j`.
    pub restriction_formula: bool,
}

impl LocalGlobalReport {
    pub fn passed(&self) -> bool {
        self.exact && self.coefficient_route && self.restriction_formula
    }
}

pub fn local_global_check(d: usize, q: u32) -> Result<LocalGlobalReport> {
    let md = Modulus::new(q)?;
    let g = elementary_abelian(q as usize, d)?;
    let data = DegreeTwoData::new(&g, md)?;
    let x = data.base();
    let frame = &data.frame;
    let dim = frame.class_dim();
    let delta = md.delta();
    let cyclic = cyclic_subgroups_of_order(x, q as usize);

    // invariants[c][k]: restriction invariant of frame class c on the k-th cyclic subgroup.
    let invariants: Vec<Vec<u32>> = data
        .classes
        .cocycles()
        .iter()
        .map(|f| cyclic.iter().map(|&gen| cyclic_invariant(x, md, f, gen)).collect())
        .collect();
    let mut formula_ok = true;
    for (k, &gen) in cyclic.iter().enumerate() {
        let a = frame.coords(gen);
        for c in 0..dim {
            let expected = if c < d {
                a[c]
            } else {
                let (i, j) = pairs(d)[c - d];
                md.mul((q / delta) % q, md.mul(a[i], a[j]))
            };
            formula_ok &= invariants[c][k] == expected;
        }
    }

    let mut exact = true;
    let mut coeff = true;
    let mut decomposable = 0;
    let total = (q as usize).pow(dim as u32);
    for lambda in all_vectors(q, dim) {
        let dec = data.dec.contains(&lambda);
        decomposable += usize::from(dec);
        let local = (0..cyclic.len()).all(|k| {
            let r = (0..dim).fold(0, |acc, c| md.add(acc, md.mul(lambda[c], invariants[c][k])));
            md.mul(delta, r) == 0
        });
        exact &= dec == local;
        coeff &= dec == lambda[..d].iter().all(|&l| md.mul(delta, l) == 0);
    }
    Ok(LocalGlobalReport {
        d,
        q,
        classes_checked: total,
        cyclic_subgroups: cyclic.len(),
        decomposable,
        exact,
        coefficient_route: coeff,
        restriction_formula: formula_ok,
    })
}

/// The sharp model with its degree-two data framed by the designated
/// generators, and the transgression setting with `T_0 = 1`.
pub struct SharpPairing {
    pub model: FreeLevel3Model,
    pub data: DegreeTwoData,
    pub setting: DualitySetting,
    /// `matrix[k][c] = <x_k, e_c>` for the central basis `x_k` and the unit frame classes `e_c`.
    pub matrix: Vec<Vec<u32>>,
    pub element_labels: Vec<String>,
    pub class_labels: Vec<String>,
}

pub fn sharp_pairing(d: usize, q: u32) -> Result<SharpPairing> {
    let md = Modulus::new(q)?;
    let model = free_level3(d, md, Variant::Sharp)?;
    let data = DegreeTwoData::with_lifts(&model.group, md, &model.sigma)?;
    let setting = DualitySetting::from_data(&data, &Subgroup::trivial(&model.group), &data.classes.everything())?;
    let basis = model.canonical_basis()?;
    let dim = data.frame.class_dim();
    let mut columns = Vec::with_capacity(dim);
    for c in 0..dim {
        let e: Vec<u32> = (0..dim).map(|k| u32::from(k == c)).collect();
        let psi = setting.trg_inverse(&e)?;
        columns.push(basis.elements.iter().map(|&x| setting.eval(&psi, x)).collect::<Vec<u32>>());
    }
    let matrix = (0..basis.elements.len())
        .map(|k| columns.iter().map(|col| col[k]).collect())
        .collect();
    let class_labels = data.classes.labels().to_vec();
    Ok(SharpPairing {
        model,
        data,
        setting,
        matrix,
        element_labels: basis.labels,
        class_labels,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DualBasisReport {
    pub d: usize,
    pub q: u32,
    pub identity: bool,
    pub pairing: PairingReport,
}

/// Pairs `s_i^q, [s_i, s_j]` with `beta(chi_i), chi_i ∪ chi_j` on the sharp model.
pub fn dual_basis_check(d: usize, q: u32) -> Result<DualBasisReport> {
    let sp = sharp_pairing(d, q)?;
    let md = sp.data.modulus;
    let n = sp.matrix.len();
    let identity = sp
        .matrix
        .iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == u32::from(i == j)));
    let mat = ZqMatrix::from_residue_rows(md, n, &sp.matrix);
    let free = AbGroupPresentation::free(md, n);
    let pairing = pairing_perfection(&mat, &free, &free)?.with_labels(sp.element_labels, sp.class_labels);
    Ok(DualBasisReport { d, q, identity, pairing })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaEntry {
    pub element: String,
    pub class: String,
    pub computed: u32,
    pub formula: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosedFormulaReport {
    pub d: usize,
    pub q: u32,
    pub entries: usize,
    pub mismatches: Vec<FormulaEntry>,
    /// Every mismatch has `computed = -formula` on a commutator.
    pub sign_only: bool,
}

impl ClosedFormulaReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares transgression-computed values `<x, phi>` against
/// `<s_k^q, chi_a ∪ chi_b> = (q/delta) chi_a(s_k) chi_b(s_k)`,
/// `<[s_k, s_l], chi_a ∪ chi_b> = chi_a(s_l) chi_b(s_k) - chi_a(s_k) chi_b(s_l)`,
/// `<s_k^q, beta(chi_a)> = chi_a(s_k)` and `<[s_k, s_l], beta(chi_a)> = 0`,
/// for all basis characters `chi_a, chi_b` (including `a >= b`).
pub fn closed_formula_check(d: usize, q: u32) -> Result<ClosedFormulaReport> {
    let sp = sharp_pairing(d, q)?;
    let md = sp.data.modulus;
    let frame = &sp.data.frame;
    let basis = sp.model.canonical_basis()?;
    let units: Vec<Vec<u32>> = (0..d).map(|i| (0..d).map(|k| u32::from(k == i)).collect()).collect();
    let ind = |x: bool| u32::from(x);
    let square = (md.q() / md.delta()) % md.q();

    let value = |k: usize, phi: &[u32]| {
        phi.iter()
            .zip(&sp.matrix[k])
            .fold(0, |acc, (&p, &m)| md.add(acc, md.mul(p, m)))
    };
    let mut entries = 0;
    let mut mismatches = Vec::new();
    let mut sign_only = true;
    for (k, kind) in basis.kinds.iter().enumerate() {
        let mut check = |class: String, phi: Vec<u32>, formula: u32, commutator: bool| {
            entries += 1;
            let computed = value(k, &phi);
            if computed != formula {
                sign_only &= commutator && computed == md.neg(formula);
                mismatches.push(FormulaEntry {
                    element: basis.labels[k].clone(),
                    class,
                    computed,
                    formula,
                });
            }
        };
        for a in 0..d {
            let beta = frame.beta_vector(&units[a]);
            let f = match *kind {
                CentralGenerator::Power(s) => ind(a == s),
                CentralGenerator::Commutator(..) => 0,
            };
            check(format!("beta(chi{})", a + 1), beta, f, false);
            for b in 0..d {
                let cup = frame.cup_vector(&units[a], &units[b]);
                let (f, comm) = match *kind {
                    CentralGenerator::Power(s) => (md.mul(square, ind(a == s && b == s)), false),
                    CentralGenerator::Commutator(s, t) => (md.sub(ind(a == t && b == s), ind(a == s && b == t)), true),
                };
                check(format!("chi{}∪chi{}", a + 1, b + 1), cup, f, comm);
            }
        }
    }
    Ok(ClosedFormulaReport {
        d,
        q,
        entries,
        mismatches,
        sign_only,
    })
}

/// `d` and generators of `Ker(inf: A(G^[2]) -> H^2(G))` in frame coordinates.
pub fn cohomological_data(g: &FiniteGroup, md: Modulus, triple: TripleKind) -> Result<(usize, Vec<Vec<u32>>)> {
    let data = DegreeTwoData::new(g, md)?;
    let k = triple.a_module(&data).intersection(&data.kernel);
    Ok((data.d(), k.generators().to_vec()))
}

#[derive(Clone, Debug, Serialize)]
pub struct Reconstruction {
    pub d: usize,
    pub q: u32,
    pub triple: TripleKind,
    pub model_order: usize,
    /// Order of the annihilator of the data in `S^(2)`.
    pub annihilator_order: usize,
    #[serde(skip)]
    pub group: FiniteGroup,
    pub order: usize,
}

/// `(S / T_0(S)) / Ker^∨` on the sharp model `S`, where `Ker^∨` is the
/// annihilator of `kernel_data` in `S^(2)` under the dual-basis pairing.
pub fn reconstruct_quotient(d: usize, q: u32, triple: TripleKind, kernel_data: &[Vec<u32>]) -> Result<Reconstruction> {
    let md = Modulus::new(q)?;
    let a = triple.symbolic_a_module(md, d);
    for v in kernel_data {
        if v.len() != a.dim() {
            return Err(Error::Dimension(format!("class vector of length {} for {} frame classes", v.len(), a.dim())));
        }
        if !a.contains(v) {
            return Err(Error::Precondition(format!("class {v:?} is not in A for {triple}")));
        }
    }
    let model = free_level3(d, md, Variant::Sharp)?;
    let s = &model.group;
    let members: Vec<usize> = (0..s.order())
        .filter(|&x| {
            model.central_coords(x).is_some_and(|c| {
                kernel_data
                    .iter()
                    .all(|v| v.iter().zip(&c).fold(0, |acc, (&p, &m)| md.add(acc, md.mul(p, m))) == 0)
            })
        })
        .collect();
    let ann = Subgroup::from_members(s, &members)?;
    let t0 = triple.t0(s, md);
    if !t0.is_subgroup_of(&ann) {
        return Err(Error::Precondition("T_0 of the free model is not inside the annihilator".into()));
    }
    let qd = quotient(s, &ann)?;
    Ok(Reconstruction {
        d,
        q,
        triple,
        model_order: s.order(),
        annihilator_order: ann.order(),
        order: qd.quotient.order(),
        group: qd.quotient,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SurjectivityReport {
    pub triple: TripleKind,
    /// `log_p |A(G)|`, computed as `|A(G^[2]) / Ker(inf)|`.
    pub image_log: u32,
    pub h2_log: u32,
    pub onto: bool,
}

/// Whether `alpha_G` maps onto `H^2(G)`.
pub fn alpha_surjectivity(g: &FiniteGroup, md: Modulus, triple: TripleKind) -> Result<SurjectivityReport> {
    let data = DegreeTwoData::new(g, md)?;
    let a = triple.a_module(&data);
    let image_log = data.classes.quotient_log(&a, &a.intersection(&data.kernel));
    let h2_log = h2(g, md)?.presentation().log_order();
    Ok(SurjectivityReport {
        triple,
        image_log,
        h2_log,
        onto: image_log == h2_log,
    })
}

//! Degree-one cohomology: homomorphisms to `Z/q`, described by their values
//! on the generators.

use serde::Serialize;

use super::cochain::Cochain1;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::zq::{dot, kernel, AbGroupPresentation, Modulus, Submodule, ZqMatrix};

/// Word-count forms over a spanning tree: `forms[x]` counts generator
/// letters along the tree path to `x`, plus the cycle relations that the
/// non-tree edges impose on any additive function of the generators.
#[derive(Clone, Debug)]
struct TreeForms {
    forms: Vec<Vec<u32>>,
    cycles: Vec<Vec<u32>>,
}

fn tree_forms(g: &FiniteGroup, modulus: Modulus) -> TreeForms {
    let n = g.order();
    let gens = g.generators();
    let k = gens.len();
    let mut forms = vec![Vec::new(); n];
    forms[0] = vec![0u32; k];
    for &x in g.bfs_order() {
        for (t, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            if y != 0 && g.tree_parent(y) == (x, t) {
                let mut v = forms[x].clone();
                v[t] = modulus.add(v[t], 1);
                forms[y] = v;
            }
        }
    }
    let mut cycles = Vec::new();
    for x in 0..n {
        for (t, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            if y != 0 && g.tree_parent(y) == (x, t) {
                continue;
            }
            // forms[x] + e_t - forms[y] must vanish under any homomorphism.
            let mut row = forms[x].clone();
            row[t] = modulus.add(row[t], 1);
            for (r, &f) in row.iter_mut().zip(&forms[y]) {
                *r = modulus.sub(*r, f);
            }
            if row.iter().any(|&e| e != 0) {
                cycles.push(row);
            }
        }
    }
    TreeForms { forms, cycles }
}

/// A submodule of `Hom(X, Z/q)` recorded by generator values.
#[derive(Clone, Debug)]
pub struct CharacterSpace {
    modulus: Modulus,
    forms: Vec<Vec<u32>>,
    module: Submodule,
}

impl CharacterSpace {
    /// All homomorphisms `X -> Z/q`.
    pub fn new(x: &FiniteGroup, modulus: Modulus) -> Self {
        Self::with_constraints(x, modulus, &[])
    }

    /// Homomorphisms whose generator values `v` also satisfy `row . v = 0`
    /// for every extra row.
    pub fn with_constraints(x: &FiniteGroup, modulus: Modulus, extra: &[Vec<u32>]) -> Self {
        let TreeForms { forms, mut cycles } = tree_forms(x, modulus);
        let k = x.generators().len();
        cycles.extend(extra.iter().cloned());
        let module = if cycles.is_empty() {
            Submodule::full(modulus, k)
        } else {
            let ker = kernel(&ZqMatrix::from_residue_rows(modulus, k, &cycles));
            Submodule::new(modulus, k, &ker.row_vecs())
        };
        CharacterSpace { modulus, forms, module }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }
    /// Generator-value vectors of the characters in this space.
    pub fn module(&self) -> &Submodule {
        &self.module
    }
    pub fn generator_count(&self) -> usize {
        self.module.dim()
    }
    /// Word-count form of an element: `chi(x) = form(x) . values(chi)`.
    pub fn form(&self, x: usize) -> &[u32] {
        &self.forms[x]
    }
    pub fn eval(&self, chi: &[u32], x: usize) -> u32 {
        dot(self.modulus, &self.forms[x], chi)
    }
    pub fn cochain(&self, chi: &[u32]) -> Cochain1 {
        let values = (0..self.forms.len()).map(|x| self.eval(chi, x)).collect();
        Cochain1::new(self.modulus, values).expect("characters are normalized")
    }
    /// Generator values of a homomorphism given on all elements.
    pub fn values_of(&self, x: &FiniteGroup, chi: &Cochain1) -> Vec<u32> {
        x.generators().iter().map(|&s| chi.value(s)).collect()
    }
    /// Invariant-factor presentation with generator vectors of the factors.
    pub fn structure(&self) -> (AbGroupPresentation, Vec<Vec<u32>>) {
        let (pres, gens) = AbGroupPresentation::subquotient(&self.module, &Submodule::zero(self.modulus, self.module.dim()));
        let basis = pres
            .basis()
            .iter()
            .map(|c| crate::zq::combine(self.modulus, self.module.dim(), c, &gens))
            .collect();
        (pres, basis)
    }
}

/// `H^1(G) = Hom(G, Z/q)` with a basis adapted to its cyclic decomposition.
#[derive(Clone, Debug)]
pub struct H1Space {
    pub space: CharacterSpace,
    /// Orders of the cyclic factors, one per basis element.
    pub orders: Vec<u32>,
    /// Generator values of the basis characters.
    pub basis_values: Vec<Vec<u32>>,
    pub basis: Vec<Cochain1>,
}

impl H1Space {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
    /// True when `H^1` is free over `Z/q`.
    pub fn is_free(&self) -> bool {
        let q = self.space.modulus().q();
        self.orders.iter().all(|&o| o == q)
    }
    pub fn summary(&self) -> ModuleSummary {
        ModuleSummary::from_orders(self.space.modulus(), self.orders.iter().map(|&o| o as u64).collect())
    }
}

/// Orders of cyclic factors of a finite `Z/q`-module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleSummary {
    pub invariants: Vec<u64>,
    pub rank: usize,
    pub log_order: u32,
    pub free: bool,
}

impl ModuleSummary {
    pub fn from_orders(modulus: Modulus, mut invariants: Vec<u64>) -> Self {
        invariants.retain(|&o| o > 1);
        invariants.sort_unstable_by(|a, b| b.cmp(a));
        let p = modulus.p() as u64;
        let log_order = invariants
            .iter()
            .map(|&o| {
                let mut k = 0;
                let mut v = o;
                while v > 1 {
                    v /= p;
                    k += 1;
                }
                k
            })
            .sum();
        let free = invariants.iter().all(|&o| o == modulus.q() as u64);
        ModuleSummary {
            rank: invariants.len(),
            invariants,
            log_order,
            free,
        }
    }
    pub fn of(pres: &AbGroupPresentation) -> Self {
        Self::from_orders(pres.modulus(), pres.invariants().to_vec())
    }
}

pub fn h1(g: &FiniteGroup, modulus: Modulus) -> H1Space {
    let space = CharacterSpace::new(g, modulus);
    let (pres, basis_values) = space.structure();
    let orders = pres.factor_orders();
    let basis = basis_values.iter().map(|v| space.cochain(v)).collect();
    H1Space {
        space,
        orders,
        basis_values,
        basis,
    }
}

/// `H^1(T)^G` for a normal subgroup `T`, as characters of `T` recorded by
/// their values on the generators of `T` (viewed as a group).
#[derive(Clone, Debug)]
pub struct InvariantCharacters {
    pub subgroup: Subgroup,
    pub group: FiniteGroup,
    /// Subgroup index to ambient index.
    pub embedding: Vec<usize>,
    /// Ambient index to subgroup index.
    pub position: Vec<Option<usize>>,
    pub space: CharacterSpace,
}

impl InvariantCharacters {
    /// `psi(x)` for an ambient element `x` of `T`.
    pub fn eval(&self, psi: &[u32], x: usize) -> u32 {
        let i = self.position[x].expect("element outside the subgroup");
        self.space.eval(psi, i)
    }
    pub fn module(&self) -> &Submodule {
        self.space.module()
    }
    /// Canonical generators of the module and its presentation.
    pub fn structure(&self) -> (AbGroupPresentation, Vec<Vec<u32>>) {
        self.space.structure()
    }
    /// Values on the generators of `T` of an ambient-indexed function on `T`.
    pub fn values_from(&self, f: impl Fn(usize) -> u32) -> Vec<u32> {
        self.group.generators().iter().map(|&s| f(self.embedding[s])).collect()
    }
    /// Constraint rows forcing `psi` to vanish on the listed ambient elements.
    pub fn vanishing_rows(&self, elements: &[usize]) -> Vec<Vec<u32>> {
        elements
            .iter()
            .map(|&x| self.space.form(self.position[x].expect("element outside the subgroup")).to_vec())
            .collect()
    }
}

/// G-invariant homomorphisms `T -> Z/q`; `extra_vanishing` lists ambient
/// elements of `T` on which the characters must also vanish.
pub fn invariants_h1_with(
    g: &FiniteGroup,
    t: &Subgroup,
    modulus: Modulus,
    extra_vanishing: &[usize],
) -> Result<InvariantCharacters> {
    if !t.is_normal_in(g) {
        return Err(Error::NotNormal("invariant characters need a normal subgroup".into()));
    }
    let (tg, embedding) = t.as_group(g)?;
    let mut position = vec![None; g.order()];
    for (i, &x) in embedding.iter().enumerate() {
        position[x] = Some(i);
    }
    let plain = CharacterSpace::new(&tg, modulus);
    let mut rows = Vec::new();
    for &gen in g.generators() {
        for (j, &s) in tg.generators().iter().enumerate() {
            let conj = g.conjugate(embedding[s], gen);
            let idx = position[conj].expect("normal subgroup");
            let mut row = plain.form(idx).to_vec();
            row[j] = modulus.sub(row[j], 1);
            if row.iter().any(|&e| e != 0) {
                rows.push(row);
            }
        }
    }
    for &x in extra_vanishing {
        let idx = position[x].ok_or_else(|| Error::Precondition("vanishing element outside T".into()))?;
        rows.push(plain.form(idx).to_vec());
    }
    let space = CharacterSpace::with_constraints(&tg, modulus, &rows);
    Ok(InvariantCharacters {
        subgroup: t.clone(),
        group: tg,
        embedding,
        position,
        space,
    })
}

pub fn invariants_h1(g: &FiniteGroup, t: &Subgroup, modulus: Modulus) -> Result<InvariantCharacters> {
    invariants_h1_with(g, t, modulus, &[])
}

/// An abelian group of exponent dividing `q` as a `Z/q`-module on its
/// generators, with the coordinate vector of every element.
#[derive(Clone, Debug)]
pub struct AbelianStructure {
    pub presentation: AbGroupPresentation,
    pub coords: Vec<Vec<u32>>,
}

pub fn abelian_structure(a: &FiniteGroup, modulus: Modulus) -> Result<AbelianStructure> {
    if !a.is_abelian() {
        return Err(Error::Precondition("group is not abelian".into()));
    }
    if !(modulus.q() as usize).is_multiple_of(a.exponent()) {
        return Err(Error::Precondition(format!(
            "exponent {} does not divide q = {}",
            a.exponent(),
            modulus.q()
        )));
    }
    let TreeForms { forms, cycles } = tree_forms(a, modulus);
    let presentation = AbGroupPresentation::new(modulus, a.generators().len(), &cycles)?;
    Ok(AbelianStructure {
        presentation,
        coords: forms,
    })
}

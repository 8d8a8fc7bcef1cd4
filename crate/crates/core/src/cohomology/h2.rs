//! Second cohomology: the full cocycle solve for small groups, and class
//! frames that give coordinates in `H^2(Q)` from a generating family of
//! cocycles.

use super::characters::{h1, H1Space, ModuleSummary};
use super::cochain::{bockstein, cochain_from_edges, cup11, edge_values, Cochain2, EdgeValues};
use super::solver::CoboundarySolver;
use crate::error::{limit, Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::zq::{kernel, solve, AbGroupPresentation, Modulus, Submodule, ZqMatrix};

/// Default bound on `|G|` for the full cocycle solve.
pub const DEFAULT_H2_CAP: usize = 64;

/// `H^2(G, Z/q)` computed from all normalized cocycles.
///
/// Cocycles are recorded by their values on Cayley edges, which determine
/// them. `cocycles` spans `Z^2`, `coboundaries` spans `B^2`, and classes are
/// vectors over the canonical generators of `Z^2` modulo
/// `presentation.relations()`.
#[derive(Clone, Debug)]
pub struct H2Space {
    modulus: Modulus,
    group: FiniteGroup,
    cocycles: Submodule,
    coboundaries: Submodule,
    presentation: AbGroupPresentation,
    generators: Vec<EdgeValues>,
}

pub fn h2(g: &FiniteGroup, modulus: Modulus) -> Result<H2Space> {
    h2_capped(g, modulus, DEFAULT_H2_CAP)
}

pub fn h2_capped(g: &FiniteGroup, modulus: Modulus, cap: usize) -> Result<H2Space> {
    limit("full H^2 solve", g.order(), cap)?;
    let n = g.order();
    let gens = g.generators();
    let k = gens.len();
    let w = n * k;
    let mut eqs: Vec<Vec<u32>> = Vec::new();
    for t in 0..k {
        let mut r = vec![0u32; w];
        r[t] = 1;
        eqs.push(r);
    }
    let mut forms: Vec<Vec<u32>> = vec![Vec::new(); n];
    for x in 0..n {
        forms[0] = vec![0; w];
        let edge = |y: usize, t: usize, fy: &[u32]| -> Vec<u32> {
            let mut v = fy.to_vec();
            let a = g.mul(x, y) * k + t;
            let b = y * k + t;
            v[a] = modulus.add(v[a], 1);
            v[b] = modulus.sub(v[b], 1);
            v
        };
        for &y in &g.bfs_order()[1..] {
            let (z, t) = g.tree_parent(y);
            forms[y] = edge(z, t, &forms[z]);
        }
        for y in 0..n {
            for (t, &s) in gens.iter().enumerate() {
                let ys = g.mul(y, s);
                if ys != 0 && g.tree_parent(ys) == (y, t) {
                    continue;
                }
                let v = edge(y, t, &forms[y]);
                let row: Vec<u32> = v.iter().zip(&forms[ys]).map(|(&a, &b)| modulus.sub(a, b)).collect();
                if row.iter().any(|&e| e != 0) {
                    eqs.push(row);
                }
            }
        }
    }
    let ker = kernel(&ZqMatrix::from_residue_rows(modulus, w, &eqs));
    let cocycles = Submodule::new(modulus, w, &ker.row_vecs());
    let bgens: Vec<Vec<u32>> = (1..n)
        .map(|h| {
            edge_values(g, |x, s| {
                let v = u32::from(x == h) + u32::from(s == h);
                modulus.sub(v % modulus.q(), u32::from(g.mul(x, s) == h))
            })
        })
        .collect();
    let coboundaries = Submodule::new(modulus, w, &bgens);
    debug_assert!(coboundaries.is_subset_of(&cocycles));
    let (presentation, generators) = AbGroupPresentation::subquotient(&cocycles, &coboundaries);
    Ok(H2Space {
        modulus,
        group: g.clone(),
        cocycles,
        coboundaries,
        presentation,
        generators,
    })
}

impl H2Space {
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
    /// Module structure; its generators are the canonical generators of `Z^2`.
    pub fn presentation(&self) -> &AbGroupPresentation {
        &self.presentation
    }
    pub fn summary(&self) -> ModuleSummary {
        ModuleSummary::of(&self.presentation)
    }
    pub fn cocycle_log_order(&self) -> u32 {
        self.cocycles.log_order()
    }
    pub fn coboundary_log_order(&self) -> u32 {
        self.coboundaries.log_order()
    }
    /// Number of generators used for class vectors.
    pub fn dim(&self) -> usize {
        self.generators.len()
    }
    /// Class vector of a cocycle, or an error if it is not one.
    pub fn class_of(&self, c: &Cochain2) -> Result<Vec<u32>> {
        c.check_cocycle(&self.group)?;
        self.class_of_edges(&c.edge_values(&self.group))
    }
    pub fn class_of_edges(&self, e: &[u32]) -> Result<Vec<u32>> {
        self.cocycles
            .form()
            .decompose(e)
            .ok_or_else(|| Error::NotCocycle("edge values outside the cocycle module".into()))
    }
    pub fn is_zero_class(&self, v: &[u32]) -> bool {
        self.presentation.is_zero(v)
    }
    /// A cocycle representing the class vector `v`.
    pub fn representative(&self, v: &[u32]) -> Cochain2 {
        let e = crate::zq::combine(self.modulus, self.cocycles.dim(), v, &self.generators);
        cochain_from_edges(&self.group, self.modulus, &e).expect("edge vector of a cocycle")
    }
    /// Cocycle representatives of the cyclic factors, with their orders.
    pub fn basis(&self) -> Vec<(Cochain2, u32)> {
        self.presentation
            .basis()
            .iter()
            .zip(self.presentation.factor_orders())
            .map(|(v, o)| (self.representative(v), o))
            .collect()
    }
    /// Submodule spanned by the classes of the given cocycles, relations included.
    pub fn span_of(&self, cocycles: &[Cochain2]) -> Result<Submodule> {
        let mut gens: Vec<Vec<u32>> = cocycles.iter().map(|c| self.class_of(c)).collect::<Result<_>>()?;
        gens.extend(self.presentation.relations().generators().iter().cloned());
        Ok(Submodule::new(self.modulus, self.dim(), &gens))
    }
    /// The relation module as a submodule (the zero class).
    pub fn zero(&self) -> Submodule {
        self.presentation.relations().clone()
    }
    /// Summary of a submodule `S` (containing the relations) as `S / relations`.
    pub fn sub_summary(&self, s: &Submodule) -> ModuleSummary {
        let (pres, _) = AbGroupPresentation::subquotient(s, self.presentation.relations());
        ModuleSummary::of(&pres)
    }
}

/// `H^2_dec(G)`: classes of cup products of an `H^1` basis.
pub fn h2_dec(h2: &H2Space, h1: &H1Space) -> Result<Submodule> {
    let g = h2.group();
    let mut cups = Vec::new();
    for a in &h1.basis {
        for b in &h1.basis {
            cups.push(cup11(g, a, b)?);
        }
    }
    h2.span_of(&cups)
}

/// `Img(beta)` inside `H^2(G)`.
pub fn image_beta(h2: &H2Space, h1: &H1Space) -> Result<Submodule> {
    let g = h2.group();
    let bs: Vec<Cochain2> = h1.basis.iter().map(|c| bockstein(g, c)).collect::<Result<_>>()?;
    h2.span_of(&bs)
}

/// `H^1`, `H^2`, `H^2_dec` and `Img(beta)` of a small group.
#[derive(Clone, Debug)]
pub struct CohomologySummary {
    pub h1: H1Space,
    pub h2: H2Space,
    pub dec: Submodule,
    pub beta: Submodule,
}

pub fn cohomology_summary(g: &FiniteGroup, modulus: Modulus, cap: usize) -> Result<CohomologySummary> {
    let h1 = h1(g, modulus);
    let h2 = h2_capped(g, modulus, cap)?;
    let dec = h2_dec(&h2, &h1)?;
    let beta = image_beta(&h2, &h1)?;
    Ok(CohomologySummary { h1, h2, dec, beta })
}

/// Coordinates in `H^2(Q)` relative to a family of cocycles that generates
/// it. A class is a vector `lambda` standing for `sum lambda_j c_j`; the
/// vectors representing zero form `relations`.
#[derive(Clone, Debug)]
pub struct ClassFrame {
    modulus: Modulus,
    base: FiniteGroup,
    cocycles: Vec<Cochain2>,
    labels: Vec<String>,
    relations: Submodule,
}

impl ClassFrame {
    /// The cocycles must generate `H^2(Q)`; this is not checked here.
    pub fn new(base: &FiniteGroup, modulus: Modulus, cocycles: Vec<Cochain2>, labels: Vec<String>) -> Result<Self> {
        assert_eq!(cocycles.len(), labels.len());
        for c in &cocycles {
            c.check_cocycle(base)?;
        }
        let edges: Vec<EdgeValues> = cocycles.iter().map(|c| c.edge_values(base)).collect();
        let relations = CoboundarySolver::new(base, modulus, &edges).relations().clone();
        Ok(ClassFrame {
            modulus,
            base: base.clone(),
            cocycles,
            labels,
            relations,
        })
    }

    /// Frame built from the cyclic-factor representatives of the full `H^2`.
    pub fn full(base: &FiniteGroup, modulus: Modulus, cap: usize) -> Result<Self> {
        let space = h2_capped(base, modulus, cap)?;
        let reps: Vec<Cochain2> = space.basis().into_iter().map(|(c, _)| c).collect();
        let labels = (0..reps.len()).map(|i| format!("h{}", i + 1)).collect();
        Self::new(base, modulus, reps, labels)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }
    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }
    pub fn dim(&self) -> usize {
        self.cocycles.len()
    }
    pub fn cocycles(&self) -> &[Cochain2] {
        &self.cocycles
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn relations(&self) -> &Submodule {
        &self.relations
    }
    pub fn presentation(&self) -> AbGroupPresentation {
        AbGroupPresentation::from_relations(self.relations.clone())
    }
    /// `S + relations`.
    pub fn saturate(&self, s: &Submodule) -> Submodule {
        s.sum(&self.relations)
    }
    /// Submodule spanned by the vectors, together with the relations.
    pub fn span(&self, vectors: &[Vec<u32>]) -> Submodule {
        self.saturate(&Submodule::new(self.modulus, self.dim(), vectors))
    }
    pub fn everything(&self) -> Submodule {
        Submodule::full(self.modulus, self.dim())
    }
    /// Summary of `S / (S ∩ relations)`.
    pub fn summary(&self, s: &Submodule) -> ModuleSummary {
        let (pres, _) = AbGroupPresentation::subquotient(&self.saturate(s), &self.relations);
        ModuleSummary::of(&pres)
    }
    /// `log_p |S / D|` for `D ⊆ S` after adding the relations to both.
    pub fn quotient_log(&self, s: &Submodule, d: &Submodule) -> u32 {
        self.saturate(s).log_order() - self.saturate(d).log_order()
    }

    /// Cocycle representing `sum lambda_j c_j`.
    pub fn cocycle(&self, lambda: &[u32]) -> Cochain2 {
        Cochain2::linear_combination(self.modulus, self.base.order(), lambda, &self.cocycles)
    }

    /// Coordinates of the classes of the given cocycles on the base.
    pub fn express(&self, targets: &[Cochain2]) -> Result<Vec<Vec<u32>>> {
        if targets.is_empty() {
            return Ok(Vec::new());
        }
        for c in targets {
            c.check_cocycle(&self.base)?;
        }
        let m = self.dim();
        let nt = targets.len();
        let mut family: Vec<EdgeValues> = self.cocycles.iter().map(|c| c.edge_values(&self.base)).collect();
        family.extend(targets.iter().map(|c| c.edge_values(&self.base)));
        let solver = CoboundarySolver::new(&self.base, self.modulus, &family);
        let gens = solver.relations().generators();
        let md = self.modulus;
        let tail: Vec<Vec<u32>> = (0..nt).map(|j| gens.iter().map(|g| g[m + j]).collect()).collect();
        let mat = ZqMatrix::from_residue_rows(md, gens.len(), &tail);
        let mut out = Vec::with_capacity(nt);
        for j in 0..nt {
            let mut e = vec![0u32; nt];
            e[j] = 1;
            let y = if gens.is_empty() { None } else { solve(&mat, &e)? };
            let y = y.ok_or_else(|| Error::Precondition("class frame does not generate H^2 of the base".into()))?;
            let mut v = vec![0u32; m];
            for (yr, g) in y.iter().zip(gens) {
                crate::zq::axpy(md, &mut v, md.neg(*yr), &g[..m]);
            }
            out.push(v);
        }
        Ok(out)
    }

    pub fn express_one(&self, c: &Cochain2) -> Result<Vec<u32>> {
        Ok(self.express(std::slice::from_ref(c))?.remove(0))
    }

    /// Edge values of the inflated frame cocycles on `X`.
    pub fn inflated_edges(&self, x: &FiniteGroup, projection: &GroupHom) -> Result<Vec<EdgeValues>> {
        if projection.source_order() != x.order() || projection.target_order() != self.base.order() {
            return Err(Error::CarrierMismatch("projection does not end at the frame base".into()));
        }
        Ok(self
            .cocycles
            .iter()
            .map(|c| edge_values(x, |a, s| c.get(projection.apply(a), projection.apply(s))))
            .collect())
    }

    /// Solver for coboundary questions about inflated classes on `X`.
    pub fn inflation_solver(&self, x: &FiniteGroup, projection: &GroupHom) -> Result<CoboundarySolver> {
        Ok(CoboundarySolver::new(x, self.modulus, &self.inflated_edges(x, projection)?))
    }

    /// `Ker(inf: H^2(Q) -> H^2(X))` in frame coordinates.
    pub fn inflation_kernel(&self, x: &FiniteGroup, projection: &GroupHom) -> Result<Submodule> {
        Ok(self.inflation_solver(x, projection)?.relations().clone())
    }
}

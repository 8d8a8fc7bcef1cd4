//! Coboundary tests against a whole family of 2-cocycles at once.
//!
//! Unknowns are the values `u(s)` on the generators together with family
//! coefficients `lambda`. A spanning tree of the right Cayley graph fixes
//! `u(x)` as a linear form via `u(xs) = u(x) + u(s) - sum lambda_j f_j(x, s)`;
//! every non-tree edge gives one linear equation. The solutions describe all
//! `(u, lambda)` with `du = sum lambda_j f_j`.

use super::cochain::{Cochain1, Cochain2, EdgeValues};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::zq::{kernel, solve, Modulus, Submodule, ZqMatrix};

#[derive(Clone, Debug)]
pub struct CoboundarySolver {
    modulus: Modulus,
    k: usize,
    m: usize,
    /// Linear form of `u(x)` in the unknowns `(u(s_1..s_k), lambda_1..lambda_m)`.
    forms: Vec<Vec<u32>>,
    solutions: Vec<Vec<u32>>,
    relations: Submodule,
}

impl CoboundarySolver {
    /// `family[j]` holds `f_j(x, s)` for every element and generator (see
    /// [`super::edge_values`]). The `f_j` must be cocycles.
    pub fn new(g: &FiniteGroup, modulus: Modulus, family: &[EdgeValues]) -> Self {
        let n = g.order();
        let gens = g.generators();
        let k = gens.len();
        let m = family.len();
        let w = k + m;
        for f in family {
            assert_eq!(f.len(), n * k, "edge table has the wrong size");
        }
        let mut forms: Vec<Vec<u32>> = vec![Vec::new(); n];
        forms[0] = vec![0; w];
        let step = |ux: &[u32], x: usize, t: usize| -> Vec<u32> {
            let mut v = ux.to_vec();
            v[t] = modulus.add(v[t], 1);
            for (j, f) in family.iter().enumerate() {
                v[k + j] = modulus.sub(v[k + j], f[x * k + t]);
            }
            v
        };
        for &x in g.bfs_order() {
            for (t, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                if y != 0 && g.tree_parent(y) == (x, t) {
                    forms[y] = step(&forms[x], x, t);
                }
            }
        }
        let mut eqs: Vec<Vec<u32>> = Vec::new();
        for x in 0..n {
            for (t, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                if y != 0 && g.tree_parent(y) == (x, t) {
                    continue;
                }
                let v = step(&forms[x], x, t);
                let row: Vec<u32> = forms[y].iter().zip(&v).map(|(&a, &b)| modulus.sub(a, b)).collect();
                if row.iter().any(|&e| e != 0) {
                    eqs.push(row);
                }
            }
        }
        let mat = ZqMatrix::from_residue_rows(modulus, w, &eqs);
        let ker = kernel(&mat);
        let solutions = ker.row_vecs();
        let lambdas: Vec<Vec<u32>> = solutions.iter().map(|r| r[k..].to_vec()).collect();
        let relations = Submodule::new(modulus, m, &lambdas);
        CoboundarySolver {
            modulus,
            k,
            m,
            forms,
            solutions,
            relations,
        }
    }

    pub fn family_size(&self) -> usize {
        self.m
    }

    /// All `lambda` with `sum lambda_j f_j` a coboundary.
    pub fn relations(&self) -> &Submodule {
        &self.relations
    }

    /// Some `u` with `du = sum lambda_j f_j`, if one exists.
    pub fn witness(&self, lambda: &[u32]) -> Option<Cochain1> {
        assert_eq!(lambda.len(), self.m);
        let md = self.modulus;
        let full = if self.m == 0 {
            vec![0; self.k]
        } else {
            if !self.relations.contains(lambda) {
                return None;
            }
            let cols = self.solutions.len();
            let mut rows = vec![vec![0u32; cols]; self.m];
            for (c, sol) in self.solutions.iter().enumerate() {
                for j in 0..self.m {
                    rows[j][c] = sol[self.k + j];
                }
            }
            let mat = ZqMatrix::from_residue_rows(md, cols, &rows);
            let y = solve(&mat, lambda).ok()??;
            let mut v = vec![0u32; self.k + self.m];
            for (c, &yc) in y.iter().enumerate() {
                crate::zq::axpy(md, &mut v, yc, &self.solutions[c]);
            }
            v
        };
        let mut coeffs = full;
        coeffs.resize(self.k + self.m, 0);
        let values = self.forms.iter().map(|f| crate::zq::dot(md, f, &coeffs)).collect();
        Cochain1::new(md, values).ok()
    }
}

/// Some `u` with `du = c`, or `None` when `c` is not a coboundary.
pub fn is_coboundary(g: &FiniteGroup, c: &Cochain2) -> Result<Option<Cochain1>> {
    c.check_cocycle(g)?;
    let solver = CoboundarySolver::new(g, c.modulus(), &[c.edge_values(g)]);
    Ok(solver.witness(&[1]))
}

/// Coboundary test for a cocycle known only on Cayley edges.
pub fn is_coboundary_edges(g: &FiniteGroup, modulus: Modulus, edges: EdgeValues) -> Result<Option<Cochain1>> {
    if edges.len() != g.order() * g.generators().len() {
        return Err(Error::Dimension("edge table has the wrong size".into()));
    }
    let solver = CoboundarySolver::new(g, modulus, &[edges]);
    Ok(solver.witness(&[1]))
}

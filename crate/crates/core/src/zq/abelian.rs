use serde::Serialize;

use super::matrix::axpy;
use super::span::combine;
use super::{Modulus, Submodule};
use crate::error::{Error, Result};

/// A finite `Z/q`-module `(Z/q)^g / R`, with its invariant-factor
/// decomposition computed by diagonalising the relations over the local ring.
#[derive(Clone, Debug, Serialize)]
pub struct AbGroupPresentation {
    modulus: Modulus,
    generators: usize,
    /// Orders `p^k` of the cyclic factors, largest first.
    invariants: Vec<u64>,
    #[serde(skip)]
    relations: Submodule,
    /// New coordinates are `y = x V`.
    #[serde(skip)]
    v: Vec<Vec<u32>>,
    #[serde(skip)]
    v_inv: Vec<Vec<u32>>,
    /// Exponent `k` of each new coordinate (`0` means the coordinate is dead).
    #[serde(skip)]
    exps: Vec<u32>,
}

impl AbGroupPresentation {
    pub fn new<R: AsRef<[u32]>>(modulus: Modulus, generators: usize, relations: &[R]) -> Result<Self> {
        for r in relations {
            if r.as_ref().len() != generators {
                return Err(Error::Dimension(format!(
                    "relation of length {} for {generators} generators",
                    r.as_ref().len()
                )));
            }
        }
        let relations = Submodule::new(modulus, generators, relations);
        Ok(Self::from_relations(relations))
    }

    pub fn free(modulus: Modulus, generators: usize) -> Self {
        Self::from_relations(Submodule::zero(modulus, generators))
    }

    /// The module `num / den` with generators the canonical generators of `num`;
    /// returns the presentation and those generators as ambient vectors.
    pub fn subquotient(num: &Submodule, den: &Submodule) -> (Self, Vec<Vec<u32>>) {
        let gens = num.generators().to_vec();
        let rel = Submodule::preimage(&gens, den);
        (Self::from_relations(rel), gens)
    }

    pub fn from_relations(relations: Submodule) -> Self {
        let md = relations.modulus();
        let g = relations.dim();
        let mut w: Vec<Vec<u32>> = relations.generators().to_vec();
        let mut v = identity(g);
        let mut v_inv = identity(g);
        let r = w.len();
        let mut exps = vec![md.s(); g];
        let mut t = 0;
        while t < r.min(g) {
            let mut best: Option<(usize, usize, u32)> = None;
            'scan: for (i, row) in w.iter().enumerate().skip(t) {
                for (j, &e) in row.iter().enumerate().skip(t) {
                    if e == 0 {
                        continue;
                    }
                    let k = md.valuation(e);
                    if best.is_none_or(|(_, _, bk)| k < bk) {
                        best = Some((i, j, k));
                        if k == 0 {
                            break 'scan;
                        }
                    }
                }
            }
            let Some((bi, bj, k)) = best else { break };
            w.swap(t, bi);
            if bj != t {
                for row in w.iter_mut() {
                    row.swap(t, bj);
                }
                for row in v.iter_mut() {
                    row.swap(t, bj);
                }
                v_inv.swap(t, bj);
            }
            let (u, _) = md.split(w[t][t]);
            let uinv = md.unit_inverse(u).unwrap();
            for x in w[t].iter_mut() {
                *x = md.mul(*x, uinv);
            }
            let pk = md.p_pow(k);
            let pivot_row = w[t].clone();
            for (i, row) in w.iter_mut().enumerate() {
                if i != t && row[t] != 0 {
                    let f = md.neg(row[t] / pk);
                    axpy(md, row, f, &pivot_row);
                }
            }
            for j in 0..g {
                if j == t || w[t][j] == 0 {
                    continue;
                }
                let f = w[t][j] / pk;
                let nf = md.neg(f);
                for row in w.iter_mut() {
                    let add = md.mul(nf, row[t]);
                    row[j] = md.add(row[j], add);
                }
                for row in v.iter_mut() {
                    let add = md.mul(nf, row[t]);
                    row[j] = md.add(row[j], add);
                }
                let rj = v_inv[j].clone();
                axpy(md, &mut v_inv[t], f, &rj);
            }
            exps[t] = k;
            t += 1;
        }
        let mut invariants: Vec<u64> = exps.iter().filter(|&&k| k > 0).map(|&k| (md.p() as u64).pow(k)).collect();
        invariants.sort_unstable_by(|a, b| b.cmp(a));
        AbGroupPresentation {
            modulus: md,
            generators: g,
            invariants,
            relations,
            v,
            v_inv,
            exps,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }
    pub fn generator_count(&self) -> usize {
        self.generators
    }
    pub fn relations(&self) -> &Submodule {
        &self.relations
    }
    /// Orders `p^k` of the cyclic factors, largest first.
    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }
    /// Number of nontrivial cyclic factors.
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
    /// `log_p` of the module order.
    pub fn log_order(&self) -> u32 {
        self.exps.iter().sum()
    }
    pub fn is_trivial(&self) -> bool {
        self.log_order() == 0
    }
    /// True when every cyclic factor has order `q`.
    pub fn is_free(&self) -> bool {
        self.exps.iter().all(|&k| k == 0 || k == self.modulus.s())
    }

    pub fn is_zero(&self, x: &[u32]) -> bool {
        self.relations.contains(x)
    }

    /// Coordinates of `x` in the cyclic decomposition, one per nontrivial
    /// factor (in internal order), each reduced modulo the factor order.
    pub fn coords(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.generators);
        let md = self.modulus;
        let y = combine(md, self.generators, x, &self.v);
        y.iter()
            .zip(&self.exps)
            .filter(|(_, &k)| k > 0)
            .map(|(&val, &k)| val % md.p_pow(k))
            .collect()
    }

    /// Orders of the factors in the order used by [`Self::coords`].
    pub fn factor_orders(&self) -> Vec<u32> {
        self.exps
            .iter()
            .filter(|&&k| k > 0)
            .map(|&k| self.modulus.p_pow(k))
            .collect()
    }

    /// Generators of the cyclic factors as vectors over the original
    /// generators, in the order used by [`Self::coords`].
    pub fn basis(&self) -> Vec<Vec<u32>> {
        self.v_inv
            .iter()
            .zip(&self.exps)
            .filter(|(_, &k)| k > 0)
            .map(|(r, _)| r.clone())
            .collect()
    }

    /// Vector over the original generators with the given factor coordinates.
    pub fn from_coords(&self, c: &[u32]) -> Vec<u32> {
        combine(self.modulus, self.generators, c, &self.basis())
    }

    /// Additive order of an element.
    pub fn order_of(&self, x: &[u32]) -> u64 {
        self.coords(x)
            .iter()
            .zip(self.factor_orders())
            .map(|(&c, o)| (o / gcd(c, o).max(1)) as u64)
            .max()
            .unwrap_or(1)
    }

    /// All elements as factor-coordinate vectors, if there are at most `cap`.
    pub fn enumerate_coords(&self, cap: usize) -> Option<Vec<Vec<u32>>> {
        let orders = self.factor_orders();
        let total = orders.iter().try_fold(1usize, |acc, &o| acc.checked_mul(o as usize))?;
        if total > cap {
            return None;
        }
        let mut out = Vec::with_capacity(total);
        let mut cur = vec![0u32; orders.len()];
        for _ in 0..total {
            out.push(cur.clone());
            for (c, &o) in cur.iter_mut().zip(&orders) {
                *c += 1;
                if *c < o {
                    break;
                }
                *c = 0;
            }
        }
        Some(out)
    }
}

fn identity(n: usize) -> Vec<Vec<u32>> {
    (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect()
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_of_small_modules() {
        let m = Modulus::new(8).unwrap();
        let a = AbGroupPresentation::new(m, 2, &[[2u32, 4], [0, 4]]).unwrap();
        // (Z/8)^2 / <(2,4),(0,4)> ~ Z/2 x Z/4
        assert_eq!(a.invariants(), &[4, 2]);
        assert_eq!(a.log_order(), 3);
        let b = a.basis();
        assert_eq!(b.len(), 2);
        for (i, e) in b.iter().enumerate() {
            let c = a.coords(e);
            for (j, cj) in c.iter().enumerate() {
                assert_eq!(*cj, u32::from(i == j));
            }
        }
        assert!(a.is_zero(&[2, 4]));
        assert!(!a.is_free());
        assert_eq!(a.enumerate_coords(100).unwrap().len(), 8);
    }

    #[test]
    fn free_module() {
        let m = Modulus::new(3).unwrap();
        let f = AbGroupPresentation::free(m, 3);
        assert_eq!(f.invariants(), &[3, 3, 3]);
        assert!(f.is_free());
        assert_eq!(f.order_of(&[0, 1, 0]), 3);
        assert_eq!(f.order_of(&[0, 0, 0]), 1);
    }
}

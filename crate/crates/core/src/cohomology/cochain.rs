use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::zq::Modulus;

/// A normalized 1-cochain `G -> Z/q` (value 0 at the identity).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cochain1 {
    modulus: Modulus,
    values: Vec<u32>,
}

/// A normalized 2-cochain `G x G -> Z/q`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cochain2 {
    modulus: Modulus,
    n: usize,
    values: Vec<u32>,
}

/// Values `f(x, g_t)` of a 2-cochain on the edges of the right Cayley graph,
/// indexed by `x * k + t` for `k` generators.
pub type EdgeValues = Vec<u32>;

impl Cochain1 {
    pub fn new(modulus: Modulus, values: Vec<u32>) -> Result<Self> {
        if values.first().is_some_and(|&v| v % modulus.q() != 0) {
            return Err(Error::NotCocycle("1-cochain is not normalized".into()));
        }
        let values = values.into_iter().map(|v| v % modulus.q()).collect();
        Ok(Cochain1 { modulus, values })
    }
    pub fn zero(modulus: Modulus, n: usize) -> Self {
        Cochain1 {
            modulus,
            values: vec![0; n],
        }
    }
    pub fn from_fn(modulus: Modulus, n: usize, f: impl Fn(usize) -> i64) -> Self {
        let mut values: Vec<u32> = (0..n).map(|x| modulus.reduce(f(x))).collect();
        if let Some(v) = values.first_mut() {
            *v = 0;
        }
        Cochain1 { modulus, values }
    }
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }
    pub fn order(&self) -> usize {
        self.values.len()
    }
    pub fn values(&self) -> &[u32] {
        &self.values
    }
    #[inline]
    pub fn value(&self, x: usize) -> u32 {
        self.values[x]
    }
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// True when the cochain is a homomorphism `G -> Z/q`.
    pub fn is_homomorphism(&self, g: &FiniteGroup) -> bool {
        if g.order() != self.order() {
            return false;
        }
        let md = self.modulus;
        (0..g.order()).all(|x| {
            g.generators()
                .iter()
                .all(|&s| self.values[g.mul(x, s)] == md.add(self.values[x], self.values[s]))
        })
    }

    pub fn add(&self, other: &Cochain1) -> Cochain1 {
        self.combine(other, |a, b| self.modulus.add(a, b))
    }
    pub fn sub(&self, other: &Cochain1) -> Cochain1 {
        self.combine(other, |a, b| self.modulus.sub(a, b))
    }
    pub fn scale(&self, a: u32) -> Cochain1 {
        Cochain1 {
            modulus: self.modulus,
            values: self.values.iter().map(|&v| self.modulus.mul(v, a)).collect(),
        }
    }
    fn combine(&self, other: &Cochain1, f: impl Fn(u32, u32) -> u32) -> Cochain1 {
        assert_eq!(self.order(), other.order(), "cochains on different groups");
        Cochain1 {
            modulus: self.modulus,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// `(du)(x, y) = u(x) + u(y) - u(xy)`.
    pub fn coboundary(&self, g: &FiniteGroup) -> Cochain2 {
        let md = self.modulus;
        Cochain2::from_fn(md, g.order(), |x, y| {
            self.values[x] as i64 + self.values[y] as i64 - self.values[g.mul(x, y)] as i64
        })
    }
}

impl Cochain2 {
    pub fn new(modulus: Modulus, n: usize, values: Vec<u32>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::Dimension(format!("2-cochain table of {} entries for n = {n}", values.len())));
        }
        let c = Cochain2 {
            modulus,
            n,
            values: values.into_iter().map(|v| v % modulus.q()).collect(),
        };
        if (0..n).any(|x| c.get(0, x) != 0 || c.get(x, 0) != 0) {
            return Err(Error::NotCocycle("2-cochain is not normalized".into()));
        }
        Ok(c)
    }
    pub fn zero(modulus: Modulus, n: usize) -> Self {
        Cochain2 {
            modulus,
            n,
            values: vec![0; n * n],
        }
    }
    /// Builds from a function; entries with an identity argument are forced to 0.
    pub fn from_fn(modulus: Modulus, n: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let mut values = vec![0u32; n * n];
        for x in 1..n {
            for y in 1..n {
                values[x * n + y] = modulus.reduce(f(x, y));
            }
        }
        Cochain2 { modulus, n, values }
    }
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }
    pub fn order(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.values[x * self.n + y]
    }
    pub fn values(&self) -> &[u32] {
        &self.values
    }
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Full check of `c(x,y) + c(xy,z) = c(y,z) + c(x,yz)`. All triples are
    /// scanned for `n <= 64`; above that `z` runs over the generators, which
    /// is equivalent for normalized cochains.
    pub fn is_cocycle(&self, g: &FiniteGroup) -> bool {
        if g.order() != self.n {
            return false;
        }
        let n = self.n;
        let all: Vec<usize> = (0..n).collect();
        let zs: &[usize] = if n <= 64 { &all } else { g.generators() };
        let md = self.modulus;
        for x in 0..n {
            for y in 0..n {
                let xy = g.mul(x, y);
                let left0 = self.get(x, y);
                for &z in zs {
                    let l = md.add(left0, self.get(xy, z));
                    let r = md.add(self.get(y, z), self.get(x, g.mul(y, z)));
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn check_cocycle(&self, g: &FiniteGroup) -> Result<()> {
        if g.order() != self.n {
            return Err(Error::CarrierMismatch(format!(
                "2-cochain on {} elements used with a group of order {}",
                self.n,
                g.order()
            )));
        }
        if self.is_cocycle(g) {
            Ok(())
        } else {
            Err(Error::NotCocycle("2-cochain fails the cocycle identity".into()))
        }
    }

    pub fn add(&self, other: &Cochain2) -> Cochain2 {
        self.combine(other, |a, b| self.modulus.add(a, b))
    }
    pub fn sub(&self, other: &Cochain2) -> Cochain2 {
        self.combine(other, |a, b| self.modulus.sub(a, b))
    }
    pub fn scale(&self, a: u32) -> Cochain2 {
        Cochain2 {
            modulus: self.modulus,
            n: self.n,
            values: self.values.iter().map(|&v| self.modulus.mul(v, a)).collect(),
        }
    }
    fn combine(&self, other: &Cochain2, f: impl Fn(u32, u32) -> u32) -> Cochain2 {
        assert_eq!(self.n, other.n, "cochains on different groups");
        Cochain2 {
            modulus: self.modulus,
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// `sum coeffs[i] * cochains[i]`.
    pub fn linear_combination(modulus: Modulus, n: usize, coeffs: &[u32], cochains: &[Cochain2]) -> Cochain2 {
        let mut out = Cochain2::zero(modulus, n);
        for (&a, c) in coeffs.iter().zip(cochains) {
            if a == 0 {
                continue;
            }
            assert_eq!(c.n, n, "cochains on different groups");
            for (o, &v) in out.values.iter_mut().zip(&c.values) {
                *o = modulus.add(*o, modulus.mul(a, v));
            }
        }
        out
    }

    pub fn edge_values(&self, g: &FiniteGroup) -> EdgeValues {
        edge_values(g, |x, s| self.get(x, s))
    }
}

/// Tabulates `f(x, s)` over elements `x` and generators `s`.
pub fn edge_values(g: &FiniteGroup, f: impl Fn(usize, usize) -> u32) -> EdgeValues {
    let gens = g.generators();
    let mut out = Vec::with_capacity(g.order() * gens.len());
    for x in 0..g.order() {
        for &s in gens {
            out.push(f(x, s));
        }
    }
    out
}

fn same_group(g: &FiniteGroup, n: usize) -> Result<()> {
    if g.order() != n {
        return Err(Error::CarrierMismatch(format!(
            "cochain on {n} elements used with a group of order {}",
            g.order()
        )));
    }
    Ok(())
}

/// `(a cup b)(x, y) = a(x) b(y)`.
pub fn cup11(g: &FiniteGroup, a: &Cochain1, b: &Cochain1) -> Result<Cochain2> {
    same_group(g, a.order())?;
    same_group(g, b.order())?;
    if a.modulus != b.modulus {
        return Err(Error::ModulusMismatch(a.modulus.q(), b.modulus.q()));
    }
    let md = a.modulus;
    Ok(Cochain2::from_fn(md, g.order(), |x, y| md.mul(a.value(x), b.value(y)) as i64))
}

/// Bockstein representative with the least-nonnegative-residue lift.
pub fn bockstein(g: &FiniteGroup, chi: &Cochain1) -> Result<Cochain2> {
    bockstein_with_lift(g, chi, |a| a as u64)
}

/// Bockstein representative `(L(chi x) + L(chi y) - L(chi xy)) / q` for a
/// lift `L: Z/q -> Z/q^2` with `L(a) = a mod q`.
pub fn bockstein_with_lift(g: &FiniteGroup, chi: &Cochain1, lift: impl Fn(u32) -> u64) -> Result<Cochain2> {
    same_group(g, chi.order())?;
    if !chi.is_homomorphism(g) {
        return Err(Error::NotHomomorphism("Bockstein needs a homomorphism to Z/q".into()));
    }
    let q = chi.modulus.q() as u64;
    let q2 = q * q;
    let lifted: Vec<u64> = chi
        .values()
        .iter()
        .map(|&a| {
            let l = lift(a) % q2;
            assert_eq!(l % q, a as u64, "lift does not reduce to the residue");
            l
        })
        .collect();
    let md = chi.modulus;
    Ok(Cochain2::from_fn(md, g.order(), |x, y| {
        let s = (lifted[x] + lifted[y] + q2 - lifted[g.mul(x, y)]) % q2;
        debug_assert_eq!(s % q, 0);
        (s / q) as i64
    }))
}

/// Pulls a 1-cochain back along a projection `G -> Q`.
pub fn inflation1(projection: &GroupHom, c: &Cochain1) -> Result<Cochain1> {
    if projection.target_order() != c.order() {
        return Err(Error::CarrierMismatch("1-cochain is not on the quotient".into()));
    }
    Ok(Cochain1 {
        modulus: c.modulus,
        values: projection.images().iter().map(|&x| c.value(x)).collect(),
    })
}

/// Pulls a 2-cochain back along a projection `G -> Q`.
pub fn inflation(projection: &GroupHom, c: &Cochain2) -> Result<Cochain2> {
    if projection.target_order() != c.order() {
        return Err(Error::CarrierMismatch("2-cochain is not on the quotient".into()));
    }
    let im = projection.images();
    Ok(Cochain2::from_fn(c.modulus, im.len(), |x, y| c.get(im[x], im[y]) as i64))
}

/// Restricts a 1-cochain along an embedding (subgroup index to group index).
pub fn restriction1(embedding: &[usize], c: &Cochain1) -> Result<Cochain1> {
    if embedding.iter().any(|&x| x >= c.order()) {
        return Err(Error::CarrierMismatch("embedding leaves the carrier".into()));
    }
    Ok(Cochain1 {
        modulus: c.modulus,
        values: embedding.iter().map(|&x| c.value(x)).collect(),
    })
}

/// Restricts a 2-cochain along an embedding (subgroup index to group index).
pub fn restriction(embedding: &[usize], c: &Cochain2) -> Result<Cochain2> {
    if embedding.iter().any(|&x| x >= c.order()) {
        return Err(Error::CarrierMismatch("embedding leaves the carrier".into()));
    }
    Ok(Cochain2::from_fn(c.modulus, embedding.len(), |x, y| {
        c.get(embedding[x], embedding[y]) as i64
    }))
}

/// Rebuilds a normalized 2-cocycle from its Cayley-edge values using
/// `f(x, ys) = f(x, y) + f(xy, s) - f(y, s)`. The edge values must come from
/// a cocycle; use [`Cochain2::check_cocycle`] when in doubt.
pub fn cochain_from_edges(g: &FiniteGroup, modulus: Modulus, edges: &[u32]) -> Result<Cochain2> {
    let n = g.order();
    let k = g.generators().len();
    if edges.len() != n * k {
        return Err(Error::Dimension("edge table has the wrong size".into()));
    }
    let mut values = vec![0u32; n * n];
    for x in 0..n {
        let row = &mut values[x * n..(x + 1) * n];
        for &y in &g.bfs_order()[1..] {
            let (z, t) = g.tree_parent(y);
            // y = z * s_t
            let v = modulus.add(row[z], edges[g.mul(x, z) * k + t]);
            row[y] = modulus.sub(v, edges[z * k + t]);
        }
    }
    Cochain2::new(modulus, n, values)
}

//! Finite models of the level-3 quotients of a free group on `d` generators:
//! `sharp = F/F^(3)` and `flat = F/F_(3)`.
//!
//! Sharp elements are normal forms `prod s_i^{a_i} * prod s_i^{q c_i} *
//! prod_{i<j} [s_i, s_j]^{b_ij}` with `a_i in [0, q)` and `c, b in Z/q`.
//! Multiplication collects letters: `s_j s_i = s_i s_j [s_i, s_j]^-1` for
//! `i < j`, and an exponent overflow past `q` emits a central `s_i^q`.

use serde::{Deserialize, Serialize};

use crate::error::{limit, Error, Result};
use crate::group::{power_subgroup, quotient, FiniteGroup, Subgroup, DEFAULT_ORDER_CAP};
use crate::zq::Modulus;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Sharp,
    Flat,
}

/// Exponent coordinates of the sharp normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NormalForm {
    pub a: Vec<u32>,
    pub c: Vec<u32>,
    /// Entries for pairs `i < j` in lexicographic order.
    pub b: Vec<u32>,
}

/// One basis element of the central part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CentralGenerator {
    /// `s_i^q`.
    Power(usize),
    /// `[s_i, s_j]` with `i < j`.
    Commutator(usize, usize),
}

/// A level-3 free model with designated generators.
#[derive(Clone, Debug)]
pub struct FreeLevel3Model {
    pub d: usize,
    pub modulus: Modulus,
    pub variant: Variant,
    pub group: FiniteGroup,
    /// Element indices of the designated generators `s_1, ..., s_d`.
    pub sigma: Vec<usize>,
    /// Sharp normal form of each element (of the coset representative for flat).
    forms: Vec<NormalForm>,
}

/// Index of the pair `(i, j)`, `i < j`, among all pairs in lexicographic order.
pub fn pair_index(d: usize, i: usize, j: usize) -> usize {
    assert!(i < j && j < d);
    i * (2 * d - i - 1) / 2 + (j - i - 1)
}

/// All pairs `i < j` in lexicographic order.
pub fn pairs(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect()
}

struct SharpLaw {
    d: usize,
    q: usize,
    len: usize,
}

impl SharpLaw {
    fn decode(&self, mut x: usize) -> Vec<usize> {
        (0..self.len)
            .map(|_| {
                let r = x % self.q;
                x /= self.q;
                r
            })
            .collect()
    }
    fn encode(&self, v: &[usize]) -> usize {
        v.iter().rev().fold(0, |acc, &x| acc * self.q + x)
    }
    fn mul(&self, x: usize, y: usize) -> usize {
        let (d, q) = (self.d, self.q);
        let u = self.decode(x);
        let v = self.decode(y);
        let mut w = vec![0usize; self.len];
        for i in 0..d {
            let s = u[i] + v[i];
            w[i] = s % q;
            w[d + i] = (u[d + i] + v[d + i] + usize::from(s >= q)) % q;
        }
        for (k, (i, j)) in pairs(d).into_iter().enumerate() {
            let cross = (u[j] * v[i]) % q;
            w[2 * d + k] = (u[2 * d + k] + v[2 * d + k] + q - cross) % q;
        }
        self.encode(&w)
    }
    fn form(&self, x: usize) -> NormalForm {
        let v: Vec<u32> = self.decode(x).into_iter().map(|t| t as u32).collect();
        NormalForm {
            a: v[..self.d].to_vec(),
            c: v[self.d..2 * self.d].to_vec(),
            b: v[2 * self.d..].to_vec(),
        }
    }
}

/// Builds the sharp or flat model on `d` generators over `Z/q`.
pub fn free_level3(d: usize, modulus: Modulus, variant: Variant) -> Result<FreeLevel3Model> {
    free_level3_capped(d, modulus, variant, DEFAULT_ORDER_CAP)
}

pub fn free_level3_capped(d: usize, modulus: Modulus, variant: Variant, cap: usize) -> Result<FreeLevel3Model> {
    if d == 0 {
        return Err(Error::InvalidParams("free model needs d >= 1".into()));
    }
    let q = modulus.q() as usize;
    let len = 2 * d + d * (d - 1) / 2;
    let order = (len as u32)
        .checked_mul(1)
        .and_then(|l| q.checked_pow(l))
        .ok_or_else(|| Error::LimitExceeded {
            what: "free model".into(),
            order: usize::MAX,
            limit: cap,
        })?;
    limit("free model", order, cap)?;
    let law = SharpLaw { d, q, len };
    let sigma: Vec<usize> = (0..d).map(|i| q.pow(i as u32)).collect();
    let names: Vec<String> = (1..=d).map(|i| format!("s{i}")).collect();
    let sharp = FiniteGroup::from_indexed_law(order, |x, y| law.mul(x, y), sigma.clone(), names, cap)?;
    let forms: Vec<NormalForm> = (0..order).map(|x| law.form(x)).collect();
    let model = FreeLevel3Model {
        d,
        modulus,
        variant: Variant::Sharp,
        group: sharp,
        sigma,
        forms,
    };
    match variant {
        Variant::Sharp => Ok(model),
        Variant::Flat => {
            let g = &model.group;
            let kernel = power_subgroup(g, &Subgroup::whole(g), (modulus.delta() * modulus.q()) as u64);
            let qd = quotient(g, &kernel)?;
            let sigma = model.sigma.iter().map(|&s| qd.projection.apply(s)).collect();
            let forms = qd.representatives.iter().map(|&r| model.forms[r].clone()).collect();
            Ok(FreeLevel3Model {
                d,
                modulus,
                variant: Variant::Flat,
                group: qd.quotient,
                sigma,
                forms,
            })
        }
    }
}

impl FreeLevel3Model {
    /// Normal-form coordinates of an element (of its coset representative
    /// for the flat model).
    pub fn normal_form(&self, x: usize) -> &NormalForm {
        &self.forms[x]
    }

    /// Rebuilds an element from coordinates using only group operations.
    pub fn element(&self, nf: &NormalForm) -> usize {
        let g = &self.group;
        let q = self.modulus.q() as u64;
        let mut x = 0;
        for (i, &s) in self.sigma.iter().enumerate() {
            x = g.mul(x, g.pow(s, nf.a[i] as u64));
        }
        for (i, &s) in self.sigma.iter().enumerate() {
            x = g.mul(x, g.pow(g.pow(s, q), nf.c[i] as u64));
        }
        for (k, (i, j)) in pairs(self.d).into_iter().enumerate() {
            let c = g.commutator(self.sigma[i], self.sigma[j]);
            x = g.mul(x, g.pow(c, nf.b[k] as u64));
        }
        x
    }

    /// The central basis: `s_i^q` for all `i`, then `[s_i, s_j]` for `i < j`.
    pub fn canonical_basis(&self) -> Result<CentralBasis> {
        let exact = self.variant == Variant::Sharp || self.modulus.q() == 2;
        if !exact {
            return Err(Error::Precondition(
                "the canonical central basis is defined on the sharp model (flat equals sharp only for q = 2)".into(),
            ));
        }
        let g = &self.group;
        let q = self.modulus.q() as u64;
        let mut kinds = Vec::new();
        let mut elements = Vec::new();
        let mut labels = Vec::new();
        for (i, &s) in self.sigma.iter().enumerate() {
            kinds.push(CentralGenerator::Power(i));
            elements.push(g.pow(s, q));
            labels.push(format!("s{}^{}", i + 1, q));
        }
        for (i, j) in pairs(self.d) {
            kinds.push(CentralGenerator::Commutator(i, j));
            elements.push(g.commutator(self.sigma[i], self.sigma[j]));
            labels.push(format!("[s{},s{}]", i + 1, j + 1));
        }
        Ok(CentralBasis {
            kinds,
            elements,
            labels,
            d: self.d,
        })
    }

    /// Coordinates `(c, b)` of a central-part element, or `None` if `x` has a
    /// nonzero `a`-part.
    pub fn central_coords(&self, x: usize) -> Option<Vec<u32>> {
        let nf = &self.forms[x];
        if nf.a.iter().any(|&v| v != 0) {
            return None;
        }
        Some(nf.c.iter().chain(&nf.b).copied().collect())
    }
}

/// Ordered central basis of the sharp model.
#[derive(Clone, Debug, Serialize)]
pub struct CentralBasis {
    pub kinds: Vec<CentralGenerator>,
    pub elements: Vec<usize>,
    pub labels: Vec<String>,
    pub d: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_indexing() {
        let d = 4;
        for (k, (i, j)) in pairs(d).into_iter().enumerate() {
            assert_eq!(pair_index(d, i, j), k);
        }
    }

    #[test]
    fn small_models() {
        let m3 = Modulus::new(3).unwrap();
        let sharp = free_level3(2, m3, Variant::Sharp).unwrap();
        assert_eq!(sharp.group.order(), 243);
        let flat = free_level3(2, m3, Variant::Flat).unwrap();
        assert_eq!(flat.group.order(), 27);
        let m2 = Modulus::new(2).unwrap();
        assert_eq!(free_level3(2, m2, Variant::Flat).unwrap().group.order(), 32);
        assert!(free_level3(3, Modulus::new(4).unwrap(), Variant::Sharp).is_err());
    }
}

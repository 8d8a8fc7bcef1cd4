//! Tensor-power constructions over `H^1 ≅ (Z/q)^d`: the subgroups
//! `C_{r,t}`, the quotients `H^r_{t,alpha}`, and the hat ring.

use serde::Serialize;

use super::characters::ModuleSummary;
use super::frame::DegreeTwoData;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::zq::{AbGroupPresentation, Modulus, Submodule};

/// Largest tensor degree handled.
pub const MAX_TENSOR_DEGREE: usize = 3;

/// Which degrees `alpha` acts nontrivially in: `beta` on `H^1`, cup on
/// `H^1 ⊗ H^1`; zero everywhere else.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaSpec {
    pub bockstein: bool,
    pub cup: bool,
}

impl AlphaSpec {
    pub const CUP: AlphaSpec = AlphaSpec {
        bockstein: false,
        cup: true,
    };
    pub const BOCKSTEIN: AlphaSpec = AlphaSpec {
        bockstein: true,
        cup: false,
    };
    pub const BOTH: AlphaSpec = AlphaSpec {
        bockstein: true,
        cup: true,
    };
}

/// Vanishing of `alpha` on pure tensors of degree 1 and 2 over one group.
struct Vanishing {
    q: u32,
    d: usize,
    deg1: Vec<bool>,
    /// Indexed by `index(a) * q^d + index(b)`.
    deg2: Vec<bool>,
}

fn vec_index(q: u32, a: &[u32]) -> usize {
    a.iter().rev().fold(0usize, |acc, &x| acc * q as usize + x as usize)
}

impl Vanishing {
    fn new(data: &DegreeTwoData, kernel: &Submodule, alpha: AlphaSpec) -> Self {
        let frame = &data.frame;
        let vs = frame.all_vectors();
        let deg1 = vs
            .iter()
            .map(|a| !alpha.bockstein || kernel.contains(&frame.beta_vector(a)))
            .collect();
        let mut deg2 = Vec::with_capacity(vs.len() * vs.len());
        for a in &vs {
            for b in &vs {
                deg2.push(!alpha.cup || kernel.contains(&frame.cup_vector(a, b)));
            }
        }
        Vanishing {
            q: frame.modulus.q(),
            d: frame.d,
            deg1,
            deg2,
        }
    }

    fn kills(&self, tuple: &[&Vec<u32>], t: usize) -> bool {
        let r = tuple.len();
        let n = (self.q as usize).pow(self.d as u32);
        match t {
            0 => false,
            1 => tuple.iter().any(|a| self.deg1[vec_index(self.q, a)]),
            2 => (0..r).any(|i| {
                (i + 1..r).any(|j| self.deg2[vec_index(self.q, tuple[i]) * n + vec_index(self.q, tuple[j])])
            }),
            _ => r >= t,
        }
    }
}

fn kron(md: Modulus, tuple: &[&Vec<u32>]) -> Vec<u32> {
    let mut out = vec![1u32];
    for a in tuple {
        let mut next = Vec::with_capacity(out.len() * a.len());
        for &x in &out {
            for &y in a.iter() {
                next.push(md.mul(x, y));
            }
        }
        out = next;
    }
    out
}

/// `C_{r,t}(X) ⊆ H^1(X)^{⊗r}` in the basis `chi_{i_1} ⊗ ... ⊗ chi_{i_r}`
/// (last index fastest), for `X` whose inflation kernel from `G^[2]` is `kernel`.
pub fn c_rt_with_kernel(data: &DegreeTwoData, kernel: &Submodule, alpha: AlphaSpec, r: usize, t: usize) -> Result<Submodule> {
    if r > MAX_TENSOR_DEGREE {
        return Err(Error::LimitExceeded {
            what: "tensor degree".into(),
            order: r,
            limit: MAX_TENSOR_DEGREE,
        });
    }
    let md = data.modulus;
    let d = data.d();
    let dim = d.pow(r as u32);
    if t == 0 || r < t {
        return Ok(Submodule::zero(md, dim));
    }
    let van = Vanishing::new(data, kernel, alpha);
    let vs = data.frame.all_vectors();
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut idx = vec![0usize; r];
    loop {
        let tuple: Vec<&Vec<u32>> = idx.iter().map(|&i| &vs[i]).collect();
        if tuple.iter().all(|a| a.iter().any(|&x| x != 0)) && van.kills(&tuple, t) {
            gens.push(kron(md, &tuple));
        }
        let mut k = 0;
        loop {
            if k == r {
                return Ok(Submodule::new(md, dim, &gens));
            }
            idx[k] += 1;
            if idx[k] < vs.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

pub fn c_rt(data: &DegreeTwoData, alpha: AlphaSpec, r: usize, t: usize) -> Result<Submodule> {
    c_rt_with_kernel(data, &data.kernel, alpha, r, t)
}

/// `H^r_{t,alpha} = H^1^{⊗r} / C_{r,t}`.
pub fn h_t_alpha(data: &DegreeTwoData, alpha: AlphaSpec, r: usize, t: usize) -> Result<AbGroupPresentation> {
    Ok(AbGroupPresentation::from_relations(c_rt(data, alpha, r, t)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct HatDegree {
    pub degree: usize,
    pub relations_log: u32,
    pub hat: ModuleSummary,
}

/// `Ĥ^r = H^1^{⊗r} / C_r` up to `max_degree` and the degree-2 verdict.
#[derive(Clone, Debug, Serialize)]
pub struct HatRing {
    pub degrees: Vec<HatDegree>,
    pub dec: ModuleSummary,
    /// `Ĥ^2 -> H^2_dec` is injective.
    pub quadratic_in_degree_two: bool,
}

pub fn hat_ring(g: &FiniteGroup, modulus: Modulus, max_degree: usize) -> Result<HatRing> {
    let data = DegreeTwoData::new(g, modulus)?;
    hat_ring_of(&data, max_degree)
}

pub fn hat_ring_of(data: &DegreeTwoData, max_degree: usize) -> Result<HatRing> {
    let mut degrees = Vec::new();
    let mut hat2 = None;
    for r in 0..=max_degree {
        let c = c_rt(data, AlphaSpec::CUP, r, 2)?;
        let pres = AbGroupPresentation::from_relations(c.clone());
        if r == 2 {
            hat2 = Some(pres.log_order());
        }
        degrees.push(HatDegree {
            degree: r,
            relations_log: c.log_order(),
            hat: ModuleSummary::of(&pres),
        });
    }
    let dec_in_g = data.dec.intersection(&data.kernel);
    let (dec_pres, _) = AbGroupPresentation::subquotient(&data.dec, &dec_in_g);
    let dec = ModuleSummary::of(&dec_pres);
    let hat2 = match hat2 {
        Some(v) => v,
        None => AbGroupPresentation::from_relations(c_rt(data, AlphaSpec::CUP, 2, 2)?).log_order(),
    };
    Ok(HatRing {
        degrees,
        quadratic_in_degree_two: hat2 == dec.log_order,
        dec,
    })
}

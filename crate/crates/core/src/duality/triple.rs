use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cohomology::{AlphaSpec, DegreeTwoData};
use crate::error::{Error, Result};
use crate::group::{commutator_subgroup, lower3, next_term, power_subgroup, FiniteGroup, Subgroup};
use crate::zq::{Modulus, Submodule};

/// The three duality triples; `T(G) = G^(2)` for each.
///
/// | kind       | `T_0(G)`              | `A(G)`                      |
/// |------------|-----------------------|-----------------------------|
/// | `DecCup`   | `G_(3)`               | `H^2_dec`                   |
/// | `BockCup`  | `G^(3)`               | `Img(beta) + H^2_dec`       |
/// | `Bock`     | `G^{q^2}[G, G]`       | `Img(beta)`                 |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TripleKind {
    DecCup,
    BockCup,
    Bock,
}

pub type DualityTriple = TripleKind;

impl TripleKind {
    pub const ALL: [TripleKind; 3] = [TripleKind::DecCup, TripleKind::BockCup, TripleKind::Bock];

    pub fn name(self) -> &'static str {
        match self {
            TripleKind::DecCup => "dec-cup",
            TripleKind::BockCup => "bock-cup",
            TripleKind::Bock => "bock",
        }
    }

    pub fn t(self, g: &FiniteGroup, modulus: Modulus) -> Subgroup {
        next_term(g, modulus, &Subgroup::whole(g))
    }

    pub fn t0(self, g: &FiniteGroup, modulus: Modulus) -> Subgroup {
        let whole = Subgroup::whole(g);
        match self {
            TripleKind::DecCup => lower3(g, modulus),
            TripleKind::BockCup => next_term(g, modulus, &next_term(g, modulus, &whole)),
            TripleKind::Bock => {
                let q = modulus.q() as u64;
                let pw = power_subgroup(g, &whole, q * q);
                pw.join(g, &commutator_subgroup(g, &whole, &whole))
            }
        }
    }

    pub fn alpha(self) -> AlphaSpec {
        match self {
            TripleKind::DecCup => AlphaSpec::CUP,
            TripleKind::BockCup => AlphaSpec::BOTH,
            TripleKind::Bock => AlphaSpec::BOCKSTEIN,
        }
    }

    /// `A(G^[2])` in the class coordinates of `data`.
    pub fn a_module(self, data: &DegreeTwoData) -> Submodule {
        match self {
            TripleKind::DecCup => data.dec.clone(),
            TripleKind::BockCup => data.dec.sum(&data.bock),
            TripleKind::Bock => data.bock.clone(),
        }
    }

    /// The same submodule described directly in symbolic coordinates
    /// `(d_i ; d_ij)`, without reference to any group.
    pub fn symbolic_a_module(self, modulus: Modulus, d: usize) -> Submodule {
        let dim = d + d * d.saturating_sub(1) / 2;
        let unit = |k: usize, v: u32| {
            let mut e = vec![0u32; dim];
            e[k] = v % modulus.q();
            e
        };
        let square = modulus.q() / modulus.delta();
        let gens: Vec<Vec<u32>> = match self {
            TripleKind::DecCup => (0..d).map(|i| unit(i, square)).chain((d..dim).map(|k| unit(k, 1))).collect(),
            TripleKind::BockCup => (0..dim).map(|k| unit(k, 1)).collect(),
            TripleKind::Bock => (0..d).map(|i| unit(i, 1)).collect(),
        };
        Submodule::new(modulus, dim, &gens)
    }
}

impl fmt::Display for TripleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TripleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dec-cup" | "1" => Ok(TripleKind::DecCup),
            "bock-cup" | "2" => Ok(TripleKind::BockCup),
            "bock" | "3" => Ok(TripleKind::Bock),
            other => Err(Error::InvalidParams(format!("unknown triple '{other}'"))),
        }
    }
}

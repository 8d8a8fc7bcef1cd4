//! The transgression `H^1(T)^G -> H^2(G/T)` and the five-term sequence.

use serde::Serialize;

use super::characters::{h1, invariants_h1, CharacterSpace, InvariantCharacters};
use super::cochain::{inflation1, Cochain2};
use super::h2::{ClassFrame, DEFAULT_H2_CAP};
use crate::error::{Error, Result};
use crate::group::{quotient, FiniteGroup, QuotientData, Subgroup};
use crate::zq::{Modulus, Submodule};

/// Transgression from a normal subgroup `T` to `H^2(G/T)`.
///
/// Sign convention: `trg(psi)(x, y) = psi(s(x) s(y) s(xy)^-1)` for a section
/// `s` with `s(1) = 1`. With this choice, for `phi = trg(psi)` and any `u`
/// with `du = inf(phi)` one has `psi = -u` on `T`.
#[derive(Clone, Debug)]
pub struct Transgression {
    pub modulus: Modulus,
    pub group: FiniteGroup,
    pub quotient: QuotientData,
    pub invariants: InvariantCharacters,
}

impl Transgression {
    pub fn new(g: &FiniteGroup, t: &Subgroup, modulus: Modulus) -> Result<Self> {
        let quotient = quotient(g, t)?;
        let invariants = invariants_h1(g, t, modulus)?;
        Ok(Transgression {
            modulus,
            group: g.clone(),
            quotient,
            invariants,
        })
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.quotient.quotient
    }

    /// The canonical section: smallest element of each coset.
    pub fn default_section(&self) -> &[usize] {
        &self.quotient.representatives
    }

    /// `trg(psi)` for `psi` given by its values on the generators of `T`.
    pub fn cocycle(&self, psi: &[u32]) -> Result<Cochain2> {
        self.cocycle_with_section(psi, &self.quotient.representatives)
    }

    pub fn cocycle_with_section(&self, psi: &[u32], section: &[usize]) -> Result<Cochain2> {
        if !self.invariants.module().contains(psi) {
            return Err(Error::NotHomomorphism(
                "character is not a G-invariant homomorphism on T".into(),
            ));
        }
        let q = self.base();
        let g = &self.group;
        let proj = &self.quotient.projection;
        if section.len() != q.order() || section[0] != 0 || section.iter().enumerate().any(|(x, &s)| proj.apply(s) != x)
        {
            return Err(Error::Precondition("not a normalized section of G -> G/T".into()));
        }
        let inv: Vec<usize> = section.iter().map(|&s| g.inv(s)).collect();
        let c = Cochain2::from_fn(self.modulus, q.order(), |x, y| {
            let z = g.mul(g.mul(section[x], section[y]), inv[q.mul(x, y)]);
            self.invariants.eval(psi, z) as i64
        });
        Ok(c)
    }

    /// Generators of `H^1(T)^G` (as generator-value vectors).
    pub fn generators(&self) -> Vec<Vec<u32>> {
        self.invariants.module().generators().to_vec()
    }

    /// Images of the generators of `H^1(T)^G` in a frame for `H^2(G/T)`.
    pub fn images(&self, frame: &ClassFrame) -> Result<Vec<Vec<u32>>> {
        let cocycles: Vec<Cochain2> = self.generators().iter().map(|p| self.cocycle(p)).collect::<Result<_>>()?;
        frame.express(&cocycles)
    }

    /// Image of a combination of generators under a linear map given by
    /// the images of the generators.
    pub fn combine_generators(&self, coeffs: &[u32]) -> Vec<u32> {
        let gens = self.generators();
        crate::zq::combine(self.modulus, self.invariants.module().dim(), coeffs, &gens)
    }

    /// `trg^-1` on frame vectors: a character `psi` with `trg(psi) = phi`,
    /// given the generator images from [`Self::images`].
    pub fn preimage(&self, frame: &ClassFrame, images: &[Vec<u32>], phi: &[u32]) -> Result<Option<Vec<u32>>> {
        let m = frame.dim();
        let mut cols: Vec<Vec<u32>> = images.to_vec();
        cols.extend(frame.relations().generators().iter().cloned());
        if cols.is_empty() {
            return Ok(phi.iter().all(|&x| x == 0).then(|| vec![0; self.invariants.module().dim()]));
        }
        let rows: Vec<Vec<u32>> = (0..m).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        let mat = crate::zq::ZqMatrix::from_residue_rows(self.modulus, cols.len(), &rows);
        Ok(crate::zq::solve(&mat, phi)?.map(|y| self.combine_generators(&y[..images.len()])))
    }
}

/// Exactness of `0 -> H^1(G/T) -> H^1(G) -> H^1(T)^G -> H^2(G/T) -> H^2(G)`,
/// node by node.
#[derive(Clone, Debug, Serialize)]
pub struct FiveTermReport {
    pub group_order: usize,
    pub subgroup_order: usize,
    /// Inflation `H^1(G/T) -> H^1(G)` is injective.
    pub injective_inflation: bool,
    /// Image of inflation equals the kernel of restriction.
    pub exact_at_h1_group: bool,
    /// Image of restriction equals the kernel of transgression.
    pub exact_at_invariants: bool,
    /// Image of transgression equals the kernel of inflation to `G`.
    pub exact_at_h2_quotient: bool,
    pub log_orders: FiveTermOrders,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiveTermOrders {
    pub h1_quotient: u32,
    pub h1_group: u32,
    pub invariants: u32,
    pub h2_quotient: u32,
    pub inflation_kernel: u32,
}

impl FiveTermReport {
    pub fn exact(&self) -> bool {
        self.injective_inflation && self.exact_at_h1_group && self.exact_at_invariants && self.exact_at_h2_quotient
    }
}

pub fn five_term_check(g: &FiniteGroup, t: &Subgroup, modulus: Modulus) -> Result<FiveTermReport> {
    five_term_check_capped(g, t, modulus, DEFAULT_H2_CAP)
}

pub fn five_term_check_capped(g: &FiniteGroup, t: &Subgroup, modulus: Modulus, cap: usize) -> Result<FiveTermReport> {
    let trg = Transgression::new(g, t, modulus)?;
    let qg = trg.base().clone();
    let proj = &trg.quotient.projection;

    // H^1(G/T) -> H^1(G), in G-generator values.
    let h1q = h1(&qg, modulus);
    let h1g = CharacterSpace::new(g, modulus);
    let inflated: Vec<Vec<u32>> = h1q
        .basis
        .iter()
        .map(|c| {
            let inf = inflation1(proj, c).expect("projection");
            h1g.values_of(g, &inf)
        })
        .collect();
    let inf_image = Submodule::new(modulus, g.generators().len(), &inflated);
    let h1q_log = h1q.summary().log_order;
    let injective_inflation = inf_image.log_order() == h1q_log;
    let vanish: Vec<Vec<u32>> = t.generators().iter().map(|&x| h1g.form(x).to_vec()).collect();
    let res_kernel = CharacterSpace::with_constraints(g, modulus, &vanish);
    let exact_at_h1_group = &inf_image == res_kernel.module();

    // H^1(G) -> H^1(T)^G.
    let inv = &trg.invariants;
    let restricted: Vec<Vec<u32>> = h1g
        .module()
        .generators()
        .iter()
        .map(|v| inv.values_from(|x| h1g.eval(v, x)))
        .collect();
    let res_image = Submodule::new(modulus, inv.module().dim(), &restricted);

    let frame = ClassFrame::full(&qg, modulus, cap)?;
    let images = trg.images(&frame)?;
    let coeff_kernel = Submodule::preimage(&images, frame.relations());
    let kernel_vectors: Vec<Vec<u32>> = coeff_kernel
        .generators()
        .iter()
        .map(|c| trg.combine_generators(c))
        .collect();
    let trg_kernel = Submodule::new(modulus, inv.module().dim(), &kernel_vectors);
    let exact_at_invariants = res_image == trg_kernel;

    let trg_image = frame.span(&images);
    let inf_kernel = frame.inflation_kernel(g, proj)?;
    let exact_at_h2_quotient = trg_image == inf_kernel;

    Ok(FiveTermReport {
        group_order: g.order(),
        subgroup_order: t.order(),
        injective_inflation,
        exact_at_h1_group,
        exact_at_invariants,
        exact_at_h2_quotient,
        log_orders: FiveTermOrders {
            h1_quotient: h1q_log,
            h1_group: h1g.module().log_order(),
            invariants: inv.module().log_order(),
            h2_quotient: frame.summary(&frame.everything()).log_order,
            inflation_kernel: frame.summary(&inf_kernel).log_order,
        },
    })
}

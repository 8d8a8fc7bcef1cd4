//! The six equivalent conditions for `A ⊆ H^2(G/T)` to be dual to `(T, T_0)`.

use serde::Serialize;

use super::pairing::{pairing_b, DualitySetting};
use crate::cohomology::{extension_from_class, invariants_h1_with};
use crate::error::Result;
use crate::group::{enumerate_homs_with, subgroup_closure, Subgroup};
use crate::zq::Submodule;

/// Verdicts of conditions (a) to (f), evaluated independently.
#[derive(Clone, Debug, Serialize)]
pub struct DualityConditions {
    /// `K = trg^-1[A]`.
    pub a: bool,
    /// `0 -> K -> A -> H^2(G)` is exact (via `trg`).
    pub b: bool,
    /// `0 -> K' -> A -> H^2(G)` is exact, `K' = Ker(H^2(G/T) -> H^2(G/T_0))`.
    pub c: bool,
    /// The transgression pairing on `T/T_0 x Ker(A -> H^2(G))` is perfect.
    pub d: bool,
    /// `T_0` is the annihilator of `A ∩ trg(H^1(T)^G)`.
    pub e: bool,
    /// `T_0` is the intersection of the kernels of the lifts `G -> C`.
    pub f: bool,
    /// Number of classes in `A_0`.
    pub a0_size: usize,
    /// Order of the intersection in (f).
    pub f_intersection_order: usize,
    /// Order of the annihilator in (e).
    pub e_annihilator_order: usize,
    pub t_order: usize,
    pub t0_order: usize,
}

impl DualityConditions {
    pub fn verdicts(&self) -> [bool; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }
    /// All six agree.
    pub fn consistent(&self) -> bool {
        let v = self.verdicts();
        v.iter().all(|&x| x == v[0])
    }
    pub fn all(&self) -> bool {
        self.verdicts().iter().all(|&x| x)
    }
}

pub fn check_duality_conditions(s: &DualitySetting) -> Result<DualityConditions> {
    let md = s.modulus;
    let g = &s.group;
    let inv = &s.trg.invariants;
    let a_ker = s.a_kernel();

    // K as generator-value vectors of characters of T.
    let k = invariants_h1_with(g, &s.t, md, s.t0.generators())?;
    let k_mod = k.module().clone();
    let dim = inv.module().dim();

    // (a): trg^-1[A], as characters.
    let coeffs = Submodule::preimage(&s.images, &s.a);
    let pre: Vec<Vec<u32>> = coeffs
        .generators()
        .iter()
        .map(|c| s.trg.combine_generators(c))
        .collect();
    let pre_a = Submodule::new(md, dim, &pre);
    let a = pre_a == k_mod;

    // (b): trg(K) ⊆ A and trg(K) = Ker(A -> H^2(G)).
    let k_coeffs = Submodule::preimage(&s.trg.generators(), &k_mod);
    let trg_k_vecs: Vec<Vec<u32>> = k_coeffs
        .generators()
        .iter()
        .map(|c| crate::zq::combine(md, s.classes.dim(), c, &s.images))
        .collect();
    let trg_k = s.classes.span(&trg_k_vecs);
    let b = trg_k.is_subset_of(&s.a) && trg_k == a_ker;

    // (c): K' ⊆ A and K' = Ker(A -> H^2(G)).
    let k_prime = s.kernel_to(&s.t0)?;
    let c = k_prime.is_subset_of(&s.a) && k_prime == a_ker;

    // (d)
    let d = pairing_b(s)?.perfect;

    // (e): annihilator in T.
    let a0 = s.a0();
    let chars: Vec<Vec<u32>> = a0.iter().map(|phi| s.trg_inverse(phi)).collect::<Result<_>>()?;
    let ann: Vec<usize> = s
        .t
        .members()
        .iter()
        .copied()
        .filter(|&x| chars.iter().all(|psi| s.eval(psi, x) == 0))
        .collect();
    let e = ann.len() == s.t0.order() && ann.iter().all(|&x| s.t0.contains(x));

    // (f): kernels of lifts G -> C for the extensions of the classes in A_0.
    let base = s.trg.base();
    let proj = s.projection();
    let m = md.q() as usize;
    let mut inter: Vec<bool> = s.t.mask().to_vec();
    for phi in &a0 {
        let ext = extension_from_class(base, &s.classes.cocycle(phi))?;
        let candidates: Vec<Vec<usize>> = g
            .generators()
            .iter()
            .map(|&x| (0..m).map(|r| r + m * proj.apply(x)).collect())
            .collect();
        let lifts = enumerate_homs_with(g, &ext.group, Some(&candidates), false, None)?;
        for psi in &lifts {
            for (x, keep) in inter.iter_mut().enumerate() {
                if *keep && psi.apply(x) != 0 {
                    *keep = false;
                }
            }
        }
    }
    let members: Vec<usize> = (0..g.order()).filter(|&x| inter[x]).collect();
    let f_group: Subgroup = subgroup_closure(g, &members);
    let f = f_group == s.t0;

    Ok(DualityConditions {
        a,
        b,
        c,
        d,
        e,
        f,
        a0_size: a0.len(),
        f_intersection_order: f_group.order(),
        e_annihilator_order: ann.len(),
        t_order: s.t.order(),
        t0_order: s.t0.order(),
    })
}

/// `A` is dual to `(T, T_0)`: conditions (a) to (f) all hold.
pub fn is_dual(s: &DualitySetting) -> Result<bool> {
    Ok(check_duality_conditions(s)?.all())
}

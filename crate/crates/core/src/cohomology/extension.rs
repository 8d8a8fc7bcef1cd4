//! Central extensions `0 -> Z/q -> E -> Q -> 1` and their classes.

use super::cochain::Cochain2;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom, DEFAULT_ORDER_CAP};
use crate::zq::Modulus;

/// The extension `E = Z/q x Q` with `(a, x)(b, y) = (a + b + c(x, y), xy)`.
/// The pair `(a, x)` has index `a + q x`.
#[derive(Clone, Debug)]
pub struct CentralExtensionSpec {
    pub base: FiniteGroup,
    pub cocycle: Cochain2,
    pub group: FiniteGroup,
    pub projection: GroupHom,
    /// The element `(1, 1)`.
    pub kernel_generator: usize,
    /// `x -> (0, x)`.
    pub section: Vec<usize>,
}

pub fn extension_from_class(q: &FiniteGroup, c: &Cochain2) -> Result<CentralExtensionSpec> {
    c.check_cocycle(q)?;
    let md = c.modulus();
    let m = md.q() as usize;
    let n = q.order();
    let law = |a: usize, b: usize| {
        let (ra, xa) = (a % m, a / m);
        let (rb, xb) = (b % m, b / m);
        let r = (ra + rb + c.get(xa, xb) as usize) % m;
        r + m * q.mul(xa, xb)
    };
    let mut gens: Vec<usize> = q.generators().iter().map(|&s| m * s).collect();
    let mut names: Vec<String> = q.generator_names().to_vec();
    gens.push(1);
    names.push("z".into());
    let group = FiniteGroup::from_indexed_law(m * n, law, gens, names, DEFAULT_ORDER_CAP)?;
    let projection = GroupHom::from_images_unchecked(m * n, n, (0..m * n).map(|e| e / m).collect());
    Ok(CentralExtensionSpec {
        base: q.clone(),
        cocycle: c.clone(),
        group,
        projection,
        kernel_generator: 1,
        section: (0..n).map(|x| m * x).collect(),
    })
}

impl CentralExtensionSpec {
    /// Factor set of the stored section; cohomologous to (here equal to) the input cocycle.
    pub fn class(&self) -> Result<Cochain2> {
        class_from_extension(
            &self.group,
            &self.base,
            &self.projection,
            self.kernel_generator,
            &self.section,
            self.cocycle.modulus(),
        )
    }
}

/// Factor set `c` with `s(x) s(y) = z^c(x, y) s(xy)` for a central extension
/// `E -> Q` whose kernel is generated by `z` of order `q`, and a section `s`
/// with `s(1) = 1`.
pub fn class_from_extension(
    e: &FiniteGroup,
    q: &FiniteGroup,
    projection: &GroupHom,
    z: usize,
    section: &[usize],
    modulus: Modulus,
) -> Result<Cochain2> {
    let m = modulus.q() as usize;
    if projection.source_order() != e.order() || projection.target_order() != q.order() {
        return Err(Error::CarrierMismatch("projection does not match the groups".into()));
    }
    if e.order() != m * q.order() {
        return Err(Error::Precondition("extension order is not q |Q|".into()));
    }
    if !e.is_central(z) {
        return Err(Error::Precondition("kernel generator is not central".into()));
    }
    if e.element_order(z) != m {
        return Err(Error::Precondition("kernel generator does not have order q".into()));
    }
    let mut power_of = vec![usize::MAX; e.order()];
    let mut cur = 0;
    for a in 0..m {
        power_of[cur] = a;
        if projection.apply(cur) != 0 {
            return Err(Error::Precondition("kernel generator does not map to 1".into()));
        }
        cur = e.mul(cur, z);
    }
    if section.len() != q.order() || section[0] != 0 || section.iter().enumerate().any(|(x, &s)| projection.apply(s) != x)
    {
        return Err(Error::Precondition("not a normalized section".into()));
    }
    let mut values = vec![0u32; q.order() * q.order()];
    for x in 0..q.order() {
        for y in 0..q.order() {
            let w = e.mul(e.mul(section[x], section[y]), e.inv(section[q.mul(x, y)]));
            let a = power_of[w];
            if a == usize::MAX {
                return Err(Error::Precondition("projection kernel is larger than <z>".into()));
            }
            values[x * q.order() + y] = a as u32;
        }
    }
    Cochain2::new(modulus, q.order(), values)
}

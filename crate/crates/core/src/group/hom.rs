use std::collections::HashMap;

use super::{subgroup_closure, FiniteGroup, Subgroup};
use crate::error::{limit, Error, Result};

/// Default bound on the order of homomorphism targets.
pub const DEFAULT_HOM_TARGET_CAP: usize = 512;

/// A homomorphism given by the image of every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source_order: usize,
    target_order: usize,
    images: Vec<usize>,
}

impl GroupHom {
    /// Checks `f(xy) = f(x) f(y)` on all pairs.
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.order() {
            return Err(Error::NotHomomorphism(format!(
                "{} images for a source of order {}",
                images.len(),
                source.order()
            )));
        }
        if images.iter().any(|&y| y >= target.order()) {
            return Err(Error::NotHomomorphism("image out of range".into()));
        }
        for x in 0..source.order() {
            for y in 0..source.order() {
                if images[source.mul(x, y)] != target.mul(images[x], images[y]) {
                    return Err(Error::NotHomomorphism(format!("fails on ({x}, {y})")));
                }
            }
        }
        Ok(Self::from_images_unchecked(source.order(), target.order(), images))
    }

    pub(crate) fn from_images_unchecked(source_order: usize, target_order: usize, images: Vec<usize>) -> Self {
        GroupHom {
            source_order,
            target_order,
            images,
        }
    }

    /// Extends generator images along the Cayley tree; `None` if they do not
    /// define a homomorphism.
    pub fn from_generator_images(source: &FiniteGroup, target: &FiniteGroup, gen_images: &[usize]) -> Option<Self> {
        assert_eq!(gen_images.len(), source.generators().len());
        let n = source.order();
        let mut img = vec![usize::MAX; n];
        img[0] = 0;
        for &x in &source.bfs_order()[1..] {
            let (y, i) = source.tree_parent(x);
            img[x] = target.mul(img[y], gen_images[i]);
        }
        for x in 0..n {
            for (i, &g) in source.generators().iter().enumerate() {
                if img[source.mul(x, g)] != target.mul(img[x], gen_images[i]) {
                    return None;
                }
            }
        }
        Some(Self::from_images_unchecked(n, target.order(), img))
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Self::from_images_unchecked(g.order(), g.order(), (0..g.order()).collect())
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }
    pub fn images(&self) -> &[usize] {
        &self.images
    }
    pub fn source_order(&self) -> usize {
        self.source_order
    }
    pub fn target_order(&self) -> usize {
        self.target_order
    }

    pub fn kernel(&self, source: &FiniteGroup) -> Subgroup {
        let k: Vec<usize> = (0..self.source_order).filter(|&x| self.images[x] == 0).collect();
        subgroup_closure(source, &k)
    }

    pub fn image(&self, target: &FiniteGroup) -> Subgroup {
        let mut seen = vec![false; self.target_order];
        let mut seeds = Vec::new();
        for &y in &self.images {
            if !seen[y] {
                seen[y] = true;
                seeds.push(y);
            }
        }
        subgroup_closure(target, &seeds)
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target_order];
        self.images.iter().for_each(|&y| seen[y] = true);
        seen.iter().all(|&s| s)
    }

    /// Image of a subgroup of the source.
    pub fn map_subgroup(&self, target: &FiniteGroup, h: &Subgroup) -> Subgroup {
        let seeds: Vec<usize> = h.members().iter().map(|&x| self.images[x]).collect();
        subgroup_closure(target, &seeds)
    }

    /// Preimage of a subgroup of the target.
    pub fn preimage(&self, source: &FiniteGroup, h: &Subgroup) -> Subgroup {
        let seeds: Vec<usize> = (0..self.source_order).filter(|&x| h.contains(self.images[x])).collect();
        subgroup_closure(source, &seeds)
    }

    /// `other after self`.
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        assert_eq!(self.target_order, other.source_order);
        GroupHom::from_images_unchecked(
            self.source_order,
            other.target_order,
            self.images.iter().map(|&y| other.images[y]).collect(),
        )
    }
}

/// Prefix subgroups `<g_1, ..., g_k>` with their Cayley spanning trees.
struct PrefixTrees {
    /// For each k: elements in BFS order, with the edge `(parent, gen)`.
    trees: Vec<Vec<(usize, usize, usize)>>,
}

impl PrefixTrees {
    fn new(g: &FiniteGroup) -> Self {
        let gens = g.generators();
        let mut trees = Vec::new();
        for k in 1..=gens.len() {
            let mut seen = vec![false; g.order()];
            seen[0] = true;
            let mut order = vec![(0usize, usize::MAX, usize::MAX)];
            let mut head = 0;
            while head < order.len() {
                let x = order[head].0;
                head += 1;
                for (i, &s) in gens[..k].iter().enumerate() {
                    let y = g.mul(x, s);
                    if !seen[y] {
                        seen[y] = true;
                        order.push((y, x, i));
                    }
                }
            }
            trees.push(order);
        }
        PrefixTrees { trees }
    }

    /// Whether the first `k` generator images are consistent on `<g_1..g_k>`.
    fn consistent(&self, g: &FiniteGroup, b: &FiniteGroup, images: &[usize], scratch: &mut [usize]) -> bool {
        let k = images.len();
        let tree = &self.trees[k - 1];
        scratch[0] = 0;
        for &(x, parent, i) in &tree[1..] {
            scratch[x] = b.mul(scratch[parent], images[i]);
        }
        let gens = g.generators();
        for &(x, _, _) in tree {
            for (i, &s) in gens[..k].iter().enumerate() {
                if scratch[g.mul(x, s)] != b.mul(scratch[x], images[i]) {
                    return false;
                }
            }
        }
        true
    }
}

/// All homomorphisms `G -> B` (or only the surjective ones).
pub fn enumerate_homs(g: &FiniteGroup, b: &FiniteGroup, surjective_only: bool) -> Result<Vec<GroupHom>> {
    enumerate_homs_with(g, b, None, surjective_only, None)
}

/// Backtracking over generator images. `candidates[i]` optionally restricts
/// the image of the `i`-th generator; `stop_after` truncates the search.
pub fn enumerate_homs_with(
    g: &FiniteGroup,
    b: &FiniteGroup,
    candidates: Option<&[Vec<usize>]>,
    surjective_only: bool,
    stop_after: Option<usize>,
) -> Result<Vec<GroupHom>> {
    limit("hom source", g.order(), super::DEFAULT_ORDER_CAP)?;
    limit("hom target", b.order(), DEFAULT_HOM_TARGET_CAP)?;
    let orders: Vec<usize> = g.generators().iter().map(|&x| g.element_order(x)).collect();
    let b_orders: Vec<usize> = (0..b.order()).map(|y| b.element_order(y)).collect();
    let options: Vec<Vec<usize>> = (0..g.generators().len())
        .map(|i| {
            let base: Vec<usize> = match candidates {
                Some(c) => c[i].clone(),
                None => (0..b.order()).collect(),
            };
            base.into_iter().filter(|&y| orders[i].is_multiple_of(b_orders[y])).collect()
        })
        .collect();
    let trees = PrefixTrees::new(g);
    let mut out = Vec::new();
    let mut scratch = vec![0usize; g.order()];
    let mut chosen = Vec::new();
    search(g, b, &options, &trees, &mut chosen, &mut scratch, surjective_only, stop_after, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: &FiniteGroup,
    b: &FiniteGroup,
    options: &[Vec<usize>],
    trees: &PrefixTrees,
    chosen: &mut Vec<usize>,
    scratch: &mut [usize],
    surjective_only: bool,
    stop_after: Option<usize>,
    out: &mut Vec<GroupHom>,
) {
    if stop_after.is_some_and(|s| out.len() >= s) {
        return;
    }
    let k = chosen.len();
    if k == options.len() {
        if surjective_only && subgroup_closure(b, chosen).order() != b.order() {
            return;
        }
        if let Some(h) = GroupHom::from_generator_images(g, b, chosen) {
            out.push(h);
        }
        return;
    }
    for &y in &options[k] {
        chosen.push(y);
        if trees.consistent(g, b, chosen, scratch) {
            search(g, b, options, trees, chosen, scratch, surjective_only, stop_after, out);
        }
        chosen.pop();
        if stop_after.is_some_and(|s| out.len() >= s) {
            return;
        }
    }
}

fn center_order(g: &FiniteGroup) -> usize {
    (0..g.order()).filter(|&x| g.is_central(x)).count()
}

fn derived_order(g: &FiniteGroup) -> usize {
    let w = Subgroup::whole(g);
    super::commutator_subgroup(g, &w, &w).order()
}

/// An isomorphism `G -> H`, if one exists.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<GroupHom>> {
    limit("isomorphism test", g.order().max(h.order()), DEFAULT_HOM_TARGET_CAP)?;
    if g.order() != h.order()
        || g.order_profile() != h.order_profile()
        || center_order(g) != center_order(h)
        || derived_order(g) != derived_order(h)
    {
        return Ok(None);
    }
    let h_orders: Vec<usize> = (0..h.order()).map(|y| h.element_order(y)).collect();
    let candidates: Vec<Vec<usize>> = g
        .generators()
        .iter()
        .map(|&x| {
            let o = g.element_order(x);
            (0..h.order()).filter(|&y| h_orders[y] == o).collect()
        })
        .collect();
    let found = enumerate_homs_with(g, h, Some(&candidates), true, Some(1))?;
    Ok(found.into_iter().next())
}

pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<bool> {
    Ok(find_isomorphism(g, h)?.is_some())
}

/// `{(b, p) : f(b) = g(p)}` with its two projections.
#[derive(Clone, Debug)]
pub struct FibredProduct {
    pub group: FiniteGroup,
    pub left: GroupHom,
    pub right: GroupHom,
    pub pairs: Vec<(usize, usize)>,
}

pub fn fibred_product(b: &FiniteGroup, f: &GroupHom, p: &FiniteGroup, g: &GroupHom) -> Result<FibredProduct> {
    if f.target_order() != g.target_order() {
        return Err(Error::CarrierMismatch("maps with different targets".into()));
    }
    let mut pairs = vec![(0usize, 0usize)];
    for x in 0..b.order() {
        for y in 0..p.order() {
            if (x, y) != (0, 0) && f.apply(x) == g.apply(y) {
                pairs.push((x, y));
            }
        }
    }
    limit("fibred product", pairs.len(), super::DEFAULT_ORDER_CAP)?;
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let n = pairs.len();
    let table: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (x1, y1) = pairs[i];
                    let (x2, y2) = pairs[j];
                    index[&(b.mul(x1, x2), p.mul(y1, y2))]
                })
                .collect()
        })
        .collect();
    let group = FiniteGroup::from_table(table, None, None, super::DEFAULT_ORDER_CAP)?;
    let left = GroupHom::from_images_unchecked(n, b.order(), pairs.iter().map(|e| e.0).collect());
    let right = GroupHom::from_images_unchecked(n, p.order(), pairs.iter().map(|e| e.1).collect());
    Ok(FibredProduct {
        group,
        left,
        right,
        pairs,
    })
}

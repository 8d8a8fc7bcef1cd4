use std::collections::{HashSet, VecDeque};

use super::{FiniteGroup, GroupHom};
use crate::error::{limit, Error, Result};

/// A subgroup of a parent group, stored as a sorted member list.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent_order: usize,
    members: Vec<usize>,
    mask: Vec<bool>,
    gens: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent_order == other.parent_order && self.members == other.members
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    pub fn trivial(g: &FiniteGroup) -> Self {
        let mut mask = vec![false; g.order()];
        mask[0] = true;
        Subgroup {
            parent_order: g.order(),
            members: vec![0],
            mask,
            gens: Vec::new(),
        }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup {
            parent_order: g.order(),
            members: (0..g.order()).collect(),
            mask: vec![true; g.order()],
            gens: g.generators().to_vec(),
        }
    }

    /// Validates that `members` is a subgroup of `g`.
    pub fn from_members(g: &FiniteGroup, members: &[usize]) -> Result<Self> {
        let mut mask = vec![false; g.order()];
        for &x in members {
            if x >= g.order() {
                return Err(Error::InvalidGroup(format!("element {x} out of range")));
            }
            mask[x] = true;
        }
        if !mask[0] {
            return Err(Error::InvalidGroup("subset misses the identity".into()));
        }
        for &a in members {
            if !mask[g.inv(a)] {
                return Err(Error::InvalidGroup("subset not closed under inverses".into()));
            }
            for &b in members {
                if !mask[g.mul(a, b)] {
                    return Err(Error::InvalidGroup("subset not closed under products".into()));
                }
            }
        }
        let s = subgroup_closure(g, members);
        Ok(s)
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }
    pub fn order(&self) -> usize {
        self.members.len()
    }
    pub fn members(&self) -> &[usize] {
        &self.members
    }
    pub fn mask(&self) -> &[bool] {
        &self.mask
    }
    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }
    /// A small generating set.
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }
    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_normal_in(&self, g: &FiniteGroup) -> bool {
        g.generators()
            .iter()
            .all(|&x| self.gens.iter().all(|&h| self.contains(g.conjugate(h, x))))
    }

    pub fn intersection(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let common: Vec<usize> = self.members.iter().copied().filter(|&x| other.contains(x)).collect();
        subgroup_closure(g, &common)
    }

    /// The subgroup generated by both.
    pub fn join(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let seeds: Vec<usize> = self.gens.iter().chain(other.generators()).copied().collect();
        subgroup_closure(g, &seeds)
    }

    /// Smallest normal subgroup of `g` containing this one.
    pub fn normal_closure(&self, g: &FiniteGroup) -> Subgroup {
        let mut cur = self.clone();
        loop {
            let conj: Vec<usize> = cur
                .gens
                .iter()
                .flat_map(|&h| g.generators().iter().map(move |&x| (h, x)))
                .map(|(h, x)| g.conjugate(h, x))
                .filter(|&y| !cur.contains(y))
                .collect();
            if conj.is_empty() {
                return cur;
            }
            let seeds: Vec<usize> = cur.gens.iter().copied().chain(conj).collect();
            cur = subgroup_closure(g, &seeds);
        }
    }

    /// The subgroup as a group in its own right, with the embedding of its
    /// elements (index `i` of the new group is `embedding[i]` in the parent).
    pub fn as_group(&self, g: &FiniteGroup) -> Result<(FiniteGroup, Vec<usize>)> {
        let emb = self.members.clone();
        let mut pos = vec![usize::MAX; g.order()];
        for (i, &x) in emb.iter().enumerate() {
            pos[x] = i;
        }
        let gens: Vec<usize> = self.gens.iter().map(|&x| pos[x]).collect();
        let names: Vec<String> = self.gens.iter().map(|&x| g.label(x).to_string()).collect();
        let sub = FiniteGroup::from_indexed_law(
            emb.len(),
            |a, b| pos[g.mul(emb[a], emb[b])],
            gens,
            names,
            usize::MAX,
        )?;
        Ok((sub, emb))
    }
}

/// Smallest subgroup containing `seeds`.
pub fn subgroup_closure(g: &FiniteGroup, seeds: &[usize]) -> Subgroup {
    let n = g.order();
    let mut mask = vec![false; n];
    mask[0] = true;
    let mut members = vec![0usize];
    let mut gens: Vec<usize> = Vec::new();
    for &s in seeds {
        if mask[s] {
            continue;
        }
        gens.push(s);
        let mut queue: VecDeque<usize> = members.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &h in &gens {
                let y = g.mul(x, h);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
    }
    members.sort_unstable();
    Subgroup {
        parent_order: n,
        members,
        mask,
        gens,
    }
}

/// Subgroup generated by all `m`-th powers of elements of `h`.
pub fn power_subgroup(g: &FiniteGroup, h: &Subgroup, m: u64) -> Subgroup {
    let seeds: Vec<usize> = h.members().iter().map(|&x| g.pow(x, m)).collect();
    subgroup_closure(g, &seeds)
}

/// Subgroup generated by all commutators `[x, y]`, `x` in `h`, `y` in `k`.
pub fn commutator_subgroup(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let mut seen = vec![false; g.order()];
    let mut seeds = Vec::new();
    for &x in h.members() {
        for &y in k.members() {
            let c = g.commutator(x, y);
            if !seen[c] {
                seen[c] = true;
                seeds.push(c);
            }
        }
    }
    subgroup_closure(g, &seeds)
}

/// All subgroups of `h` that are normal in `g`.
pub fn normal_subgroups_within(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Subgroup>> {
    limit("subgroup searched for normal subgroups", h.order(), 64)?;
    let start = Subgroup::trivial(g);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(start.members.clone());
    let mut found = vec![start];
    let mut head = 0;
    while head < found.len() {
        let s = found[head].clone();
        head += 1;
        for &x in h.members() {
            if s.contains(x) {
                continue;
            }
            let seeds: Vec<usize> = s.gens.iter().copied().chain([x]).collect();
            let n = subgroup_closure(g, &seeds).normal_closure(g);
            if !n.is_subgroup_of(h) {
                continue;
            }
            if seen.insert(n.members.clone()) {
                found.push(n);
            }
        }
    }
    found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    Ok(found)
}

/// A quotient group with its projection.
#[derive(Clone, Debug)]
pub struct QuotientData {
    pub quotient: FiniteGroup,
    pub projection: GroupHom,
    /// Smallest element of each coset.
    pub representatives: Vec<usize>,
}

/// `G / N` for a normal subgroup `N`.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<QuotientData> {
    if n.parent_order() != g.order() {
        return Err(Error::CarrierMismatch("subgroup of a different group".into()));
    }
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal(format!("subgroup of order {}", n.order())));
    }
    let size = g.order();
    let mut coset = vec![usize::MAX; size];
    let mut reps = Vec::new();
    for x in 0..size {
        if coset[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &m in n.members() {
            coset[g.mul(x, m)] = c;
        }
    }
    let k = reps.len();
    let mut gens = Vec::new();
    let mut names = Vec::new();
    for (&x, name) in g.generators().iter().zip(g.generator_names()) {
        let c = coset[x];
        if c != 0 && !gens.contains(&c) {
            gens.push(c);
            names.push(name.clone());
        }
    }
    let quotient = FiniteGroup::from_indexed_law(k, |a, b| coset[g.mul(reps[a], reps[b])], gens, names, usize::MAX)?;
    let projection = GroupHom::from_images_unchecked(size, k, coset);
    Ok(QuotientData {
        quotient,
        projection,
        representatives: reps,
    })
}

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::error::{limit, Error, Result};

/// Default upper bound on group orders.
pub const DEFAULT_ORDER_CAP: usize = 4096;

/// A finite group stored as a full multiplication table.
///
/// Element `0` is the identity. Labels are shortest words in the generators
/// found by breadth-first search over right multiplication.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    generators: Vec<usize>,
    generator_names: Vec<String>,
    /// BFS order of the right Cayley graph, starting at the identity.
    bfs: Vec<usize>,
    /// Tree edge `(x, i)` with `x * g_i` reaching each non-identity element.
    parent: Vec<(usize, usize)>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates a multiplication table (identity at index 0) and builds the group.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        generators: Option<Vec<usize>>,
        generator_names: Option<Vec<String>>,
        cap: usize,
    ) -> Result<Self> {
        let n = table.len();
        limit("group", n, cap.min(1 << 16))?;
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("table row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::InvalidGroup(format!("table[{i}][{j}] = {v} is out of range")));
                }
                flat.push(v as u16);
            }
        }
        Self::from_flat(n, flat, generators, generator_names)
    }

    /// Builds a group from a law on indices `0..n` (identity `0`).
    pub fn from_indexed_law(
        n: usize,
        mul: impl Fn(usize, usize) -> usize,
        generators: Vec<usize>,
        generator_names: Vec<String>,
        cap: usize,
    ) -> Result<Self> {
        limit("group", n, cap.min(1 << 16))?;
        let mut flat = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let c = mul(a, b);
                if c >= n {
                    return Err(Error::InvalidGroup(format!("product of {a} and {b} out of range")));
                }
                flat.push(c as u16);
            }
        }
        Self::from_flat(n, flat, Some(generators), Some(generator_names))
    }

    /// Closes `gens` under an associative law by breadth-first search.
    /// Returns the group and the element values in index order.
    pub fn from_closure<T, F>(identity: T, gens: &[T], mul: F, names: Vec<String>, cap: usize) -> Result<(Self, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut right = Vec::new();
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head].clone();
            for g in gens {
                let y = mul(&x, g);
                let id = match index.get(&y) {
                    Some(&i) => i,
                    None => {
                        let i = elems.len();
                        limit("closure", i + 1, cap.min(1 << 16))?;
                        index.insert(y.clone(), i);
                        elems.push(y);
                        i
                    }
                };
                right.push(id);
            }
            head += 1;
        }
        let n = elems.len();
        let gen_idx: Vec<usize> = gens.iter().map(|g| index[g]).collect();
        let mut flat = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = mul(&elems[a], &elems[b]);
                let ci = *index
                    .get(&c)
                    .ok_or_else(|| Error::InvalidGroup("law is not closed on the generated set".into()))?;
                flat[a * n + b] = ci as u16;
            }
        }
        let g = Self::from_flat(n, flat, Some(gen_idx), Some(names))?;
        Ok((g, elems))
    }

    fn from_flat(n: usize, table: Vec<u16>, generators: Option<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        for x in 0..n {
            if table[x] as usize != x || table[x * n] as usize != x {
                return Err(Error::InvalidGroup(format!("index 0 is not an identity (fails at element {x})")));
            }
        }
        let mut inverse = vec![u16::MAX; n];
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let c = table[a * n + b] as usize;
                if seen[c] {
                    return Err(Error::InvalidGroup(format!("row {a} repeats element {c}")));
                }
                seen[c] = true;
                if c == 0 {
                    inverse[a] = b as u16;
                }
            }
        }
        for b in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for a in 0..n {
                let c = table[a * n + b] as usize;
                if seen[c] {
                    return Err(Error::InvalidGroup(format!("column {b} repeats element {c}")));
                }
                seen[c] = true;
            }
        }
        let generators = match generators {
            Some(g) => {
                if let Some(&bad) = g.iter().find(|&&x| x >= n) {
                    return Err(Error::InvalidGroup(format!("generator {bad} is out of range")));
                }
                g
            }
            None => greedy_generators(n, &table),
        };
        let names = match names {
            Some(v) if v.len() == generators.len() => v,
            Some(v) => {
                return Err(Error::InvalidGroup(format!(
                    "{} generator names for {} generators",
                    v.len(),
                    generators.len()
                )))
            }
            None => (1..=generators.len()).map(|i| format!("g{i}")).collect(),
        };
        let (bfs, parent) = cayley_bfs(n, &table, &generators);
        if bfs.len() != n {
            return Err(Error::InvalidGroup(format!(
                "generators span only {} of {n} elements",
                bfs.len()
            )));
        }
        // Associativity: (x g) y = x (g y) for generators g suffices once the
        // generators are known to generate.
        for &g in &generators {
            for x in 0..n {
                let xg = table[x * n + g] as usize;
                for y in 0..n {
                    let gy = table[g * n + y] as usize;
                    if table[xg * n + y] != table[x * n + gy] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative: ({x}*{g})*{y} != {x}*({g}*{y})"
                        )));
                    }
                }
            }
        }
        let mut group = FiniteGroup {
            n,
            table,
            inverse,
            generators,
            generator_names: names,
            bfs,
            parent,
            labels: Vec::new(),
        };
        group.labels = (0..n).map(|x| group.word_label(x)).collect();
        Ok(group)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn identity(&self) -> usize {
        0
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }
    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }
    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    /// Elements in breadth-first order of the right Cayley graph.
    pub fn bfs_order(&self) -> &[usize] {
        &self.bfs
    }
    /// For a non-identity `x`, the tree edge `(y, i)` with `y * g_i = x`.
    pub fn tree_parent(&self, x: usize) -> (usize, usize) {
        self.parent[x]
    }

    /// Shortest word (generator positions) found for `x`.
    pub fn word(&self, x: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut cur = x;
        while cur != 0 {
            let (prev, i) = self.parent[cur];
            w.push(i);
            cur = prev;
        }
        w.reverse();
        w
    }

    fn word_label(&self, x: usize) -> String {
        let w = self.word(x);
        if w.is_empty() {
            return "e".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let name = &self.generator_names[w[i]];
            parts.push(if j - i == 1 { name.clone() } else { format!("{name}^{}", j - i) });
            i = j;
        }
        parts.join("*")
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let (mut base, mut acc, mut k) = (x, 0usize, k);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `[h, g] = h^-1 g^-1 h g`.
    pub fn commutator(&self, h: usize, g: usize) -> usize {
        let a = self.mul(self.inv(h), self.inv(g));
        self.mul(self.mul(a, h), g)
    }

    /// `g^-1 x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn element_order(&self, x: usize) -> usize {
        let (mut y, mut k) = (x, 1);
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.n).map(|x| self.element_order(x)).fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.n).map(|x| self.element_order(x)).collect();
        v.sort_unstable();
        v
    }

    pub fn is_central(&self, x: usize) -> bool {
        self.generators.iter().all(|&g| self.mul(x, g) == self.mul(g, x))
    }

    /// Table rows as plain indices.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// The same group with a different generating list.
    pub fn with_generators(&self, generators: Vec<usize>, names: Vec<String>) -> Result<Self> {
        Self::from_flat(self.n, self.table.clone(), Some(generators), Some(names))
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn cayley_bfs(n: usize, table: &[u16], gens: &[usize]) -> (Vec<usize>, Vec<(usize, usize)>) {
    let mut parent = vec![(usize::MAX, usize::MAX); n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut order = vec![0];
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (i, &g) in gens.iter().enumerate() {
            let y = table[x * n + g] as usize;
            if !seen[y] {
                seen[y] = true;
                parent[y] = (x, i);
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    (order, parent)
}

fn greedy_generators(n: usize, table: &[u16]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut reached = vec![false; n];
    reached[0] = true;
    for x in 1..n {
        if reached[x] {
            continue;
        }
        gens.push(x);
        let (order, _) = cayley_bfs(n, table, &gens);
        reached.iter_mut().for_each(|r| *r = false);
        for y in order {
            reached[y] = true;
        }
    }
    gens
}

impl FiniteGroup {
    /// Replaces the display labels.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidGroup(format!("{} labels for {} elements", labels.len(), self.n)));
        }
        self.labels = labels;
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_broken_tables() {
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::from_table(bad, None, None, 16).is_err());
        // Latin square with identity but not associative (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table(loop5, None, None, 16).unwrap_err();
        assert!(matches!(err, Error::InvalidGroup(_)));
        let z3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        assert!(FiniteGroup::from_table(z3.clone(), None, None, 2).is_err());
        assert!(FiniteGroup::from_table(z3, Some(vec![0]), None, 16).is_err());
    }

    #[test]
    fn closure_of_permutations() {
        let compose = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> { (0..a.len()).map(|i| b[a[i]]).collect() };
        let r = vec![1, 2, 3, 0];
        let s = vec![0, 3, 2, 1];
        let (g, elems) = FiniteGroup::from_closure(vec![0, 1, 2, 3], &[r, s], compose, vec!["r".into(), "s".into()], 100).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(elems.len(), 8);
        assert!(!g.is_abelian());
        assert_eq!(g.exponent(), 4);
        for x in 0..8 {
            let w = g.word(x);
            let y = w.iter().fold(0, |acc, &i| g.mul(acc, g.generators()[i]));
            assert_eq!(x, y);
        }
        assert_eq!(g.label(0), "e");
    }
}

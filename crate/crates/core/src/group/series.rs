use super::{commutator_subgroup, power_subgroup, FiniteGroup, Subgroup};
use crate::zq::Modulus;

/// The descending q-central series `G^(1) >= G^(2) >= ...` together with
/// `G_(3) = G^{dq}[G^(2), G]` (`d = 2` for `p = 2`, else `1`).
#[derive(Clone, Debug)]
pub struct QCentralSeries {
    pub modulus: Modulus,
    /// `terms[i]` is `G^(i+1)`.
    pub terms: Vec<Subgroup>,
    pub lower3: Subgroup,
    pub delta: u32,
    /// True if the last two computed terms coincide.
    pub stabilized: bool,
}

impl QCentralSeries {
    /// `G^(i)` for `i >= 1`; past a stabilized end the last term repeats.
    pub fn term(&self, i: usize) -> Option<&Subgroup> {
        assert!(i >= 1, "series is indexed from 1");
        match self.terms.get(i - 1) {
            Some(t) => Some(t),
            None if self.stabilized => self.terms.last(),
            None => None,
        }
    }
    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.order()).collect()
    }
}

/// `(H)^q [H, G]`.
pub fn next_term(g: &FiniteGroup, q: Modulus, h: &Subgroup) -> Subgroup {
    let pw = power_subgroup(g, h, q.q() as u64);
    let cm = commutator_subgroup(g, h, &Subgroup::whole(g));
    let t = pw.join(g, &cm);
    assert!(t.is_normal_in(g), "verbal subgroup failed the normality check");
    t
}

/// `G_(3) = G^{dq}[G^(2), G]`.
pub fn lower3(g: &FiniteGroup, q: Modulus) -> Subgroup {
    let whole = Subgroup::whole(g);
    let g2 = next_term(g, q, &whole);
    let pw = power_subgroup(g, &whole, (q.delta() * q.q()) as u64);
    let cm = commutator_subgroup(g, &g2, &whole);
    let t = pw.join(g, &cm);
    assert!(t.is_normal_in(g), "verbal subgroup failed the normality check");
    t
}

/// Series up to `G^(depth)` (stopping early once it stabilizes).
pub fn q_central_series(g: &FiniteGroup, q: Modulus, depth: usize) -> QCentralSeries {
    let mut terms = vec![Subgroup::whole(g)];
    let mut stabilized = false;
    while terms.len() < depth.max(2) {
        let next = next_term(g, q, terms.last().unwrap());
        if &next == terms.last().unwrap() {
            stabilized = true;
            break;
        }
        terms.push(next);
    }
    if !stabilized && terms.last().unwrap().is_trivial() {
        stabilized = true;
    }
    QCentralSeries {
        modulus: q,
        lower3: lower3(g, q),
        terms,
        delta: q.delta(),
        stabilized,
    }
}

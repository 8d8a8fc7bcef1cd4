//! Coordinates adapted to `G^[2] ≅ (Z/q)^d`: a character basis with dual
//! lifts, the classes `beta(chi_i)`, `chi_i ∪ chi_j` as a frame of `H^2`,
//! and the kernel of inflation back to `G`.

use super::characters::h1;
use super::cochain::{bockstein, cup11, inflation1, Cochain1, Cochain2};
use super::h2::ClassFrame;
use crate::error::{Error, Result};
use crate::free_model::{pair_index, pairs};
use crate::group::{next_term, quotient, FiniteGroup, GroupHom, QuotientData, Subgroup};
use crate::zq::{solve, Modulus, Submodule, ZqMatrix};

/// A basis `chi_1..chi_d` of `H^1(Q)` for `Q ≅ (Z/q)^d` together with
/// elements `lifts[j]` of `Q` satisfying `chi_i(lifts[j]) = [i = j]`.
#[derive(Clone, Debug)]
pub struct LevelTwoFrame {
    pub modulus: Modulus,
    pub d: usize,
    pub characters: Vec<Cochain1>,
    pub lifts: Vec<usize>,
    coords: Vec<Vec<u32>>,
    by_coords: std::collections::HashMap<Vec<u32>, usize>,
}

impl LevelTwoFrame {
    /// Any dual pair of bases; fails unless `Q ≅ (Z/q)^d`.
    pub fn new(q: &FiniteGroup, modulus: Modulus) -> Result<Self> {
        let space = h1(q, modulus);
        if !space.is_free() {
            return Err(Error::Hypothesis(format!(
                "H^1 has cyclic factors {:?}, not free over Z/{}",
                space.orders,
                modulus.q()
            )));
        }
        let d = space.rank();
        let expected = (modulus.q() as u128).pow(d as u32);
        if q.order() as u128 != expected {
            return Err(Error::Hypothesis(format!(
                "group of order {} is not (Z/{})^{d}",
                q.order(),
                modulus.q()
            )));
        }
        let coords: Vec<Vec<u32>> = (0..q.order())
            .map(|x| space.basis.iter().map(|c| c.value(x)).collect())
            .collect();
        let mut lifts = Vec::with_capacity(d);
        for j in 0..d {
            let e: Vec<u32> = (0..d).map(|i| u32::from(i == j)).collect();
            let x = coords
                .iter()
                .position(|c| *c == e)
                .ok_or_else(|| Error::Hypothesis("character basis is not dual to any elements".into()))?;
            lifts.push(x);
        }
        Ok(Self::assemble(modulus, space.basis, lifts, coords))
    }

    /// The basis of characters dual to the given elements of `Q`.
    pub fn from_lifts(q: &FiniteGroup, modulus: Modulus, lifts: &[usize]) -> Result<Self> {
        let base = Self::new(q, modulus)?;
        let d = base.d;
        if lifts.len() != d {
            return Err(Error::Dimension(format!("{} lifts for rank {d}", lifts.len())));
        }
        // m[i][j] = psi_i(lift_j); we need n with n m = 1.
        let mt: Vec<Vec<u32>> = (0..d)
            .map(|j| (0..d).map(|i| base.characters[i].value(lifts[j])).collect())
            .collect();
        let mat = ZqMatrix::from_residue_rows(modulus, d, &mt);
        let mut n = Vec::with_capacity(d);
        for i in 0..d {
            let e: Vec<u32> = (0..d).map(|k| u32::from(k == i)).collect();
            let row = solve(&mat, &e)?
                .ok_or_else(|| Error::Hypothesis("lifts do not form a basis of G^[2]".into()))?;
            n.push(row);
        }
        let characters: Vec<Cochain1> = n
            .iter()
            .map(|row| {
                Cochain1::from_fn(modulus, q.order(), |x| {
                    row.iter()
                        .zip(&base.characters)
                        .map(|(&a, c)| modulus.mul(a, c.value(x)) as i64)
                        .sum()
                })
            })
            .collect();
        let coords = (0..q.order())
            .map(|x| characters.iter().map(|c| c.value(x)).collect())
            .collect();
        Ok(Self::assemble(modulus, characters, lifts.to_vec(), coords))
    }

    fn assemble(modulus: Modulus, characters: Vec<Cochain1>, lifts: Vec<usize>, coords: Vec<Vec<u32>>) -> Self {
        let by_coords = coords.iter().enumerate().map(|(x, c)| (c.clone(), x)).collect();
        LevelTwoFrame {
            modulus,
            d: characters.len(),
            characters,
            lifts,
            coords,
            by_coords,
        }
    }

    /// `(chi_1(x), ..., chi_d(x))`.
    pub fn coords(&self, x: usize) -> &[u32] {
        &self.coords[x]
    }
    /// The element with the given coordinates.
    pub fn element(&self, a: &[u32]) -> usize {
        self.by_coords[a]
    }
    /// `sum a_i chi_i`.
    pub fn character(&self, a: &[u32]) -> Cochain1 {
        let md = self.modulus;
        Cochain1::from_fn(md, self.coords.len(), |x| {
            a.iter().zip(&self.coords[x]).map(|(&ai, &ci)| md.mul(ai, ci) as i64).sum()
        })
    }
    /// Number of classes in the symbolic frame, `d + d(d-1)/2`.
    pub fn class_dim(&self) -> usize {
        self.d + self.d * (self.d.saturating_sub(1)) / 2
    }

    /// Class vector of `beta(sum a_i chi_i)`.
    pub fn beta_vector(&self, a: &[u32]) -> Vec<u32> {
        let mut v = vec![0u32; self.class_dim()];
        v[..self.d].copy_from_slice(a);
        v
    }

    /// Class vector of `(sum a_i chi_i) ∪ (sum b_j chi_j)`, using
    /// `chi_j ∪ chi_i = -chi_i ∪ chi_j` and `chi ∪ chi = (q/delta) beta(chi)`.
    pub fn cup_vector(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let md = self.modulus;
        let d = self.d;
        let mut v = vec![0u32; self.class_dim()];
        let square = md.q() / md.delta();
        for i in 0..d {
            for j in 0..d {
                let ab = md.mul(a[i], b[j]);
                if ab == 0 {
                    continue;
                }
                match i.cmp(&j) {
                    std::cmp::Ordering::Less => {
                        let k = d + pair_index(d, i, j);
                        v[k] = md.add(v[k], ab);
                    }
                    std::cmp::Ordering::Greater => {
                        let k = d + pair_index(d, j, i);
                        v[k] = md.sub(v[k], ab);
                    }
                    std::cmp::Ordering::Equal => {
                        v[i] = md.add(v[i], md.mul(square % md.q(), ab));
                    }
                }
            }
        }
        v
    }

    /// The frame `beta(chi_i)`, then `chi_i ∪ chi_j` for `i < j`.
    pub fn class_frame(&self, q: &FiniteGroup) -> Result<ClassFrame> {
        let mut cocycles: Vec<Cochain2> = Vec::with_capacity(self.class_dim());
        let mut labels = Vec::with_capacity(self.class_dim());
        for (i, chi) in self.characters.iter().enumerate() {
            cocycles.push(bockstein(q, chi)?);
            labels.push(format!("beta(chi{})", i + 1));
        }
        for (i, j) in pairs(self.d) {
            cocycles.push(cup11(q, &self.characters[i], &self.characters[j])?);
            labels.push(format!("chi{}∪chi{}", i + 1, j + 1));
        }
        ClassFrame::new(q, self.modulus, cocycles, labels)
    }

    /// All elements of `(Z/q)^d` in lexicographic order (first coordinate fastest).
    pub fn all_vectors(&self) -> Vec<Vec<u32>> {
        all_vectors(self.modulus.q(), self.d)
    }
}

/// Every vector of `(Z/q)^d`, first coordinate varying fastest.
pub fn all_vectors(q: u32, d: usize) -> Vec<Vec<u32>> {
    let total = (q as usize).pow(d as u32);
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![0u32; d];
    for _ in 0..total {
        out.push(cur.clone());
        for c in cur.iter_mut() {
            *c += 1;
            if *c < q {
                break;
            }
            *c = 0;
        }
    }
    out
}

/// Degree-two data of `G` over `Q = G^[2] ≅ (Z/q)^d`.
#[derive(Clone, Debug)]
pub struct DegreeTwoData {
    pub modulus: Modulus,
    pub group: FiniteGroup,
    /// `G^(2)`.
    pub level2: Subgroup,
    pub quotient: QuotientData,
    pub frame: LevelTwoFrame,
    pub classes: ClassFrame,
    /// `H^2_dec(Q)` and `Img(beta_Q)` in class coordinates (relations included).
    pub dec: Submodule,
    pub bock: Submodule,
    /// `Ker(inf: H^2(Q) -> H^2(G))`.
    pub kernel: Submodule,
}

impl DegreeTwoData {
    pub fn new(g: &FiniteGroup, modulus: Modulus) -> Result<Self> {
        Self::build(g, modulus, None)
    }

    /// Uses the characters dual to the images of `lifts` (elements of `G`).
    pub fn with_lifts(g: &FiniteGroup, modulus: Modulus, lifts: &[usize]) -> Result<Self> {
        Self::build(g, modulus, Some(lifts))
    }

    fn build(g: &FiniteGroup, modulus: Modulus, lifts: Option<&[usize]>) -> Result<Self> {
        let level2 = next_term(g, modulus, &Subgroup::whole(g));
        let quotient = quotient(g, &level2)?;
        let q = &quotient.quotient;
        let frame = match lifts {
            Some(l) => {
                let images: Vec<usize> = l.iter().map(|&x| quotient.projection.apply(x)).collect();
                LevelTwoFrame::from_lifts(q, modulus, &images)?
            }
            None => LevelTwoFrame::new(q, modulus)?,
        };
        let classes = frame.class_frame(q)?;
        let d = frame.d;
        let mut cups = Vec::with_capacity(d * d);
        for a in &frame.characters {
            for b in &frame.characters {
                cups.push(cup11(q, a, b)?);
            }
        }
        let dec = classes.span(&classes.express(&cups)?);
        let bock_gens: Vec<Vec<u32>> = (0..d)
            .map(|i| frame.beta_vector(&(0..d).map(|k| u32::from(k == i)).collect::<Vec<_>>()))
            .collect();
        let bock = classes.span(&bock_gens);
        let kernel = classes.inflation_kernel(g, &quotient.projection)?;
        Ok(DegreeTwoData {
            modulus,
            group: g.clone(),
            level2,
            quotient,
            frame,
            classes,
            dec,
            bock,
            kernel,
        })
    }

    pub fn d(&self) -> usize {
        self.frame.d
    }
    pub fn base(&self) -> &FiniteGroup {
        &self.quotient.quotient
    }
    pub fn projection(&self) -> &GroupHom {
        &self.quotient.projection
    }
    /// `chi_i` inflated to `G`.
    pub fn character_on_group(&self, a: &[u32]) -> Cochain1 {
        inflation1(&self.quotient.projection, &self.frame.character(a)).expect("projection matches frame")
    }
    /// Lifts of the frame elements to `G` (smallest coset members).
    pub fn group_lifts(&self) -> Vec<usize> {
        self.frame.lifts.iter().map(|&x| self.quotient.representatives[x]).collect()
    }
    /// `Ker(inf: H^2(Q) -> H^2(X))` for a group `X` mapping onto `Q` by `to_base`.
    pub fn kernel_for(&self, x: &FiniteGroup, to_base: &GroupHom) -> Result<Submodule> {
        self.classes.inflation_kernel(x, to_base)
    }
    /// The map `G/N -> Q` for a normal `N ≤ G^(2)`.
    pub fn factor_map(&self, n: &Subgroup) -> Result<(QuotientData, GroupHom)> {
        if !n.is_subgroup_of(&self.level2) {
            return Err(Error::Precondition("normal subgroup not inside G^(2)".into()));
        }
        let qn = quotient(&self.group, n)?;
        let images = qn
            .representatives
            .iter()
            .map(|&r| self.quotient.projection.apply(r))
            .collect();
        let hom = GroupHom::new(&qn.quotient, self.base(), images)?;
        Ok((qn, hom))
    }
}

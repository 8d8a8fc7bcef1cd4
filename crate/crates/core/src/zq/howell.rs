use super::matrix::{axpy, scale};
use super::{Modulus, ZqMatrix};
use crate::error::{Error, Result};

/// Canonical row-reduced form of a matrix over `Z/p^s`.
///
/// Rows are in echelon form, every pivot is a power `p^k` of `p`, entries
/// above a pivot `p^k` lie in `[0, p^k)`, and the Howell property holds: for
/// every column `c`, the span vectors vanishing on the first `c` columns are
/// spanned by the rows whose pivot is at or after `c`. The form depends only
/// on the row span.
#[derive(Clone, Debug)]
pub struct HowellForm {
    modulus: Modulus,
    cols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<(usize, u32)>,
    transform: Option<Vec<Vec<u32>>>,
    input_rows: usize,
}

impl PartialEq for HowellForm {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.cols == other.cols && self.rows == other.rows
    }
}
impl Eq for HowellForm {}

/// Howell form of `m` without recording the transform.
pub fn howell_form(m: &ZqMatrix) -> HowellForm {
    HowellForm::compute(m.modulus(), m.cols(), m.row_vecs(), false)
}

/// Howell form of `m` together with the row operations: `H = U m`.
pub fn howell_form_with_transform(m: &ZqMatrix) -> HowellForm {
    HowellForm::compute(m.modulus(), m.cols(), m.row_vecs(), true)
}

impl HowellForm {
    pub(crate) fn compute(modulus: Modulus, cols: usize, input: Vec<Vec<u32>>, track: bool) -> Self {
        let md = modulus;
        let input_rows = input.len();
        let mut work: Vec<(Vec<u32>, Vec<u32>)> = input
            .into_iter()
            .enumerate()
            .filter(|(_, v)| v.iter().any(|&x| x != 0))
            .map(|(i, v)| {
                debug_assert_eq!(v.len(), cols);
                let mut t = Vec::new();
                if track {
                    t = vec![0; input_rows];
                    t[i] = 1;
                }
                (v, t)
            })
            .collect();

        let mut rows = Vec::new();
        let mut combos = Vec::new();
        let mut pivots = Vec::new();
        for c in 0..cols {
            if work.is_empty() {
                break;
            }
            let mut best: Option<(usize, u32)> = None;
            for (i, (v, _)) in work.iter().enumerate() {
                if v[c] == 0 {
                    continue;
                }
                let k = md.valuation(v[c]);
                if best.is_none_or(|(_, bk)| k < bk) {
                    best = Some((i, k));
                    if k == 0 {
                        break;
                    }
                }
            }
            let Some((bi, k)) = best else { continue };
            let (mut pv, mut pt) = work.swap_remove(bi);
            let (u, _) = md.split(pv[c]);
            if u != 1 {
                let uinv = md.unit_inverse(u).expect("unit part is invertible");
                scale(md, &mut pv, uinv);
                scale(md, &mut pt, uinv);
            }
            let pk = md.p_pow(k);
            for (v, t) in work.iter_mut() {
                let e = v[c];
                if e == 0 {
                    continue;
                }
                let f = md.neg(e / pk);
                axpy(md, v, f, &pv);
                axpy(md, t, f, &pt);
            }
            work.retain(|(v, _)| v.iter().any(|&x| x != 0));
            if k > 0 {
                let mult = md.p_pow(md.s() - k);
                let mut ev = pv.clone();
                scale(md, &mut ev, mult);
                if ev.iter().any(|&x| x != 0) {
                    let mut et = pt.clone();
                    scale(md, &mut et, mult);
                    work.push((ev, et));
                }
            }
            rows.push(pv);
            combos.push(pt);
            pivots.push((c, k));
        }
        debug_assert!(work.is_empty());

        for i in 0..rows.len() {
            let (c, k) = pivots[i];
            let pk = md.p_pow(k);
            let (lo, hi) = rows.split_at_mut(i);
            let (clo, chi) = combos.split_at_mut(i);
            for j in 0..i {
                let f = lo[j][c] / pk;
                if f != 0 {
                    let nf = md.neg(f);
                    axpy(md, &mut lo[j], nf, &hi[0]);
                    axpy(md, &mut clo[j], nf, &chi[0]);
                }
            }
        }

        HowellForm {
            modulus,
            cols,
            rows,
            pivots,
            transform: track.then_some(combos),
            input_rows,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    /// The nonzero canonical rows.
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }
    /// `(column, k)` for each row, the pivot entry being `p^k`.
    pub fn pivots(&self) -> &[(usize, u32)] {
        &self.pivots
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn h(&self) -> ZqMatrix {
        ZqMatrix::from_residue_rows(self.modulus, self.cols, &self.rows)
    }
    /// Row operations `U` with `H = U M`, when recorded.
    pub fn transform(&self) -> Option<ZqMatrix> {
        self.transform
            .as_ref()
            .map(|t| ZqMatrix::from_residue_rows(self.modulus, self.input_rows, t))
    }

    /// `log_p` of the number of vectors in the row span.
    pub fn log_size(&self) -> u32 {
        self.pivots.iter().map(|&(_, k)| self.modulus.s() - k).sum()
    }

    /// Reduces `v` against the rows; returns the remainder and the
    /// coefficients used. The remainder is zero exactly for span members.
    pub fn reduce(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let md = self.modulus;
        let mut r: Vec<u32> = v.iter().map(|&x| x % md.q()).collect();
        let mut coeffs = vec![0u32; self.rows.len()];
        for (i, &(c, k)) in self.pivots.iter().enumerate() {
            let f = r[c] / md.p_pow(k);
            if f != 0 {
                axpy(md, &mut r, md.neg(f), &self.rows[i]);
                coeffs[i] = f;
            }
        }
        (r, coeffs)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).0.iter().all(|&x| x == 0)
    }

    /// Coefficients over the canonical rows expressing `v`, if it is in the span.
    pub fn decompose(&self, v: &[u32]) -> Option<Vec<u32>> {
        let (r, c) = self.reduce(v);
        r.iter().all(|&x| x == 0).then_some(c)
    }

    /// Coefficients over the input rows expressing `v`; needs the transform.
    pub fn express(&self, v: &[u32]) -> Option<Vec<u32>> {
        let t = self.transform.as_ref()?;
        let c = self.decompose(v)?;
        let mut out = vec![0u32; self.input_rows];
        for (ci, ti) in c.iter().zip(t) {
            axpy(self.modulus, &mut out, *ci, ti);
        }
        Some(out)
    }
}

/// Generators (as rows) of `{x : M x = 0}`.
pub fn kernel(m: &ZqMatrix) -> ZqMatrix {
    let md = m.modulus();
    let n = m.cols();
    let h = howell_form(m);
    let hr = h.rank();
    let brows: Vec<Vec<u32>> = (0..n)
        .map(|j| {
            let mut row: Vec<u32> = h.rows.iter().map(|r| r[j]).collect();
            row.resize(hr + n, 0);
            row[hr + j] = 1;
            row
        })
        .collect();
    let hb = HowellForm::compute(md, hr + n, brows, false);
    let gens: Vec<Vec<u32>> = hb
        .rows
        .iter()
        .zip(&hb.pivots)
        .filter(|(_, &(c, _))| c >= hr)
        .map(|(r, _)| r[hr..].to_vec())
        .collect();
    ZqMatrix::from_residue_rows(md, n, &gens)
}

/// Generators of `{y : y M = 0}`.
pub fn left_kernel(m: &ZqMatrix) -> ZqMatrix {
    kernel(&m.transpose())
}

/// Some `x` with `M x = b`, or `None` when the system is unsolvable.
pub fn solve(m: &ZqMatrix, b: &[u32]) -> Result<Option<Vec<u32>>> {
    if b.len() != m.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side of length {} for {} equations",
            b.len(),
            m.rows()
        )));
    }
    let md = m.modulus();
    let n = m.cols();
    let bcol = ZqMatrix::from_residue_rows(md, 1, &b.iter().map(|&x| [x % md.q()]).collect::<Vec<_>>());
    let aug = m.hstack(&bcol)?;
    let ker = kernel(&aug);
    for i in 0..ker.rows() {
        let row = ker.row(i);
        if let Some(tinv) = md.unit_inverse(row[n]) {
            let f = md.neg(tinv);
            let x: Vec<u32> = row[..n].iter().map(|&v| md.mul(v, f)).collect();
            debug_assert_eq!(m.mul_vec(&x).unwrap(), b.iter().map(|&x| x % md.q()).collect::<Vec<_>>());
            return Ok(Some(x));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(q: u32) -> Modulus {
        Modulus::new(q).unwrap()
    }

    #[test]
    fn single_entry_forms() {
        let m = ZqMatrix::from_rows(md(4), 1, &[[2]]).unwrap();
        let h = howell_form(&m);
        assert_eq!(h.rows(), &[vec![2]]);
        assert_eq!(h.log_size(), 1);
        let zero = ZqMatrix::zeros(md(4), 3, 2);
        assert_eq!(howell_form(&zero).rank(), 0);
    }

    #[test]
    fn howell_property_adds_rows() {
        // [[2,1]] over Z/4 spans {0, (2,1), (0,2), (2,3)}.
        let m = ZqMatrix::from_rows(md(4), 2, &[[2, 1]]).unwrap();
        let h = howell_form(&m);
        assert_eq!(h.rows(), &[vec![2, 1], vec![0, 2]]);
        assert!(h.contains(&[0, 2]));
        assert!(!h.contains(&[0, 1]));
    }

    #[test]
    fn transform_reproduces_rows() {
        let m = ZqMatrix::from_rows(md(9), 3, &[[3, 6, 1], [0, 3, 3], [6, 0, 2]]).unwrap();
        let h = howell_form_with_transform(&m);
        let u = h.transform().unwrap();
        assert_eq!(u.mul(&m).unwrap(), h.h());
        let v = m.vec_mul(&[2, 5, 7]).unwrap();
        let c = h.express(&v).unwrap();
        assert_eq!(m.vec_mul(&c).unwrap(), v);
    }

    #[test]
    fn solve_and_kernel_small() {
        let m = ZqMatrix::from_rows(md(4), 1, &[[2]]).unwrap();
        assert_eq!(solve(&m, &[1]).unwrap(), None);
        let x = solve(&m, &[2]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![2]);
        let k = kernel(&m);
        assert_eq!(howell_form(&k).rows(), &[vec![2]]);
        let i = ZqMatrix::identity(md(3), 2);
        assert_eq!(kernel(&i).rows(), 0);
        assert!(solve(&i, &[1]).is_err());
    }
}

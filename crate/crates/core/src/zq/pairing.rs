use serde::Serialize;

use super::matrix::dot;
use super::{kernel, AbGroupPresentation, Submodule, ZqMatrix};
use crate::error::{Error, Result};

/// Outcome of testing a bilinear pairing `A x B -> Z/q` for perfection.
#[derive(Clone, Debug, Serialize)]
pub struct PairingReport {
    /// Values on generator pairs: `matrix[i][j] = <a_i, b_j>`.
    pub matrix: Vec<Vec<u32>>,
    pub left_labels: Vec<String>,
    pub right_labels: Vec<String>,
    pub left_invariants: Vec<u64>,
    pub right_invariants: Vec<u64>,
    /// Nonzero elements of `A` generating the left annihilator, over A's generators.
    pub left_annihilator: Vec<Vec<u32>>,
    pub right_annihilator: Vec<Vec<u32>>,
    /// `log_p` of the annihilator orders.
    pub left_annihilator_log: u32,
    pub right_annihilator_log: u32,
    pub perfect: bool,
}

impl PairingReport {
    pub fn with_labels(mut self, left: Vec<String>, right: Vec<String>) -> Self {
        self.left_labels = left;
        self.right_labels = right;
        self
    }
}

/// Decides whether the pairing with value table `p` on the generators of
/// `a` and `b` is perfect.
pub fn pairing_perfection(p: &ZqMatrix, a: &AbGroupPresentation, b: &AbGroupPresentation) -> Result<PairingReport> {
    let md = p.modulus();
    if a.modulus() != md || b.modulus() != md {
        return Err(Error::ModulusMismatch(a.modulus().q(), md.q()));
    }
    if p.rows() != a.generator_count() || p.cols() != b.generator_count() {
        return Err(Error::Dimension(format!(
            "{}x{} table for modules with {} and {} generators",
            p.rows(),
            p.cols(),
            a.generator_count(),
            b.generator_count()
        )));
    }
    for r in a.relations().generators() {
        if p.vec_mul(r)?.iter().any(|&x| x != 0) {
            return Err(Error::Incompatible(format!("left relation {r:?} pairs nontrivially")));
        }
    }
    for r in b.relations().generators() {
        if p.mul_vec(r)?.iter().any(|&x| x != 0) {
            return Err(Error::Incompatible(format!("right relation {r:?} pairs nontrivially")));
        }
    }
    let (left, left_log) = annihilator(&p.transpose(), a);
    let (right, right_log) = annihilator(p, b);
    let perfect = left_log == 0 && right_log == 0 && a.log_order() == b.log_order();
    Ok(PairingReport {
        matrix: p.row_vecs(),
        left_labels: Vec::new(),
        right_labels: Vec::new(),
        left_invariants: a.invariants().to_vec(),
        right_invariants: b.invariants().to_vec(),
        left_annihilator: left,
        right_annihilator: right,
        left_annihilator_log: left_log,
        right_annihilator_log: right_log,
        perfect,
    })
}

/// Annihilator in `module` of everything, where `m x = 0` expresses that
/// `x` pairs to zero with all generators on the other side.
fn annihilator(m: &ZqMatrix, module: &AbGroupPresentation) -> (Vec<Vec<u32>>, u32) {
    let md = m.modulus();
    let n = module.generator_count();
    let ker = kernel(m);
    let gens: Vec<Vec<u32>> = ker.row_vecs();
    let total = Submodule::new(md, n, &gens).sum(module.relations());
    let log = total.log_order() - module.relations().log_order();
    let nonzero = gens.into_iter().filter(|g| !module.is_zero(g)).collect();
    (nonzero, log)
}

/// `<x, y>` for generator-coordinate vectors under the table `p`.
pub fn evaluate(p: &ZqMatrix, x: &[u32], y: &[u32]) -> u32 {
    let px = p.vec_mul(x).expect("dimension");
    dot(p.modulus(), &px, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zq::Modulus;

    #[test]
    fn identity_is_perfect_and_doubling_is_not() {
        let m = Modulus::new(4).unwrap();
        let a = AbGroupPresentation::free(m, 1);
        let id = ZqMatrix::identity(m, 1);
        assert!(pairing_perfection(&id, &a, &a).unwrap().perfect);
        let two = ZqMatrix::from_rows(m, 1, &[[2]]).unwrap();
        let r = pairing_perfection(&two, &a, &a).unwrap();
        assert!(!r.perfect);
        assert_eq!(r.left_annihilator, vec![vec![2]]);
        assert_eq!(r.right_annihilator, vec![vec![2]]);
        assert_eq!(r.left_annihilator_log, 1);
        assert_eq!(evaluate(&two, &[1], &[3]), 2);
    }

    #[test]
    fn relation_violation_is_an_error() {
        let m = Modulus::new(4).unwrap();
        let a = AbGroupPresentation::new(m, 1, &[[2u32]]).unwrap();
        let b = AbGroupPresentation::free(m, 1);
        let one = ZqMatrix::identity(m, 1);
        assert!(matches!(pairing_perfection(&one, &a, &b), Err(Error::Incompatible(_))));
        let two = ZqMatrix::from_rows(m, 1, &[[2]]).unwrap();
        // Z/2 x Z/4 with <1,1> = 2: left annihilator trivial, right = {0,2}.
        let r = pairing_perfection(&two, &a, &b).unwrap();
        assert_eq!(r.left_annihilator_log, 0);
        assert_eq!(r.right_annihilator_log, 1);
        assert!(!r.perfect);
    }
}

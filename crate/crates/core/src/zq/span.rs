use super::howell::HowellForm;
use super::matrix::axpy;
use super::{left_kernel, Modulus, ZqMatrix};

/// A submodule of `(Z/q)^dim`, held in canonical Howell form so that
/// equality of submodules is equality of values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    dim: usize,
    form: HowellForm,
}

impl Submodule {
    pub fn new<R: AsRef<[u32]>>(modulus: Modulus, dim: usize, gens: &[R]) -> Self {
        let rows = gens
            .iter()
            .map(|r| {
                let r = r.as_ref();
                assert_eq!(r.len(), dim, "generator length mismatch");
                r.iter().map(|&x| x % modulus.q()).collect()
            })
            .collect();
        Submodule {
            dim,
            form: HowellForm::compute(modulus, dim, rows, false),
        }
    }

    pub fn zero(modulus: Modulus, dim: usize) -> Self {
        Self::new::<Vec<u32>>(modulus, dim, &[])
    }

    pub fn full(modulus: Modulus, dim: usize) -> Self {
        let gens: Vec<Vec<u32>> = (0..dim)
            .map(|i| {
                let mut e = vec![0; dim];
                e[i] = 1;
                e
            })
            .collect();
        Self::new(modulus, dim, &gens)
    }

    pub fn modulus(&self) -> Modulus {
        self.form.modulus()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    /// Canonical generators.
    pub fn generators(&self) -> &[Vec<u32>] {
        self.form.rows()
    }
    pub fn form(&self) -> &HowellForm {
        &self.form
    }
    pub fn is_zero(&self) -> bool {
        self.form.rank() == 0
    }
    /// `log_p` of the number of elements.
    pub fn log_order(&self) -> u32 {
        self.form.log_size()
    }
    pub fn contains(&self, v: &[u32]) -> bool {
        self.form.contains(v)
    }
    pub fn is_subset_of(&self, other: &Submodule) -> bool {
        self.generators().iter().all(|g| other.contains(g))
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        assert_eq!(self.dim, other.dim);
        let gens: Vec<Vec<u32>> = self.generators().iter().chain(other.generators()).cloned().collect();
        Submodule::new(self.modulus(), self.dim, &gens)
    }

    pub fn intersection(&self, other: &Submodule) -> Submodule {
        assert_eq!(self.dim, other.dim);
        let md = self.modulus();
        let a = self.generators();
        let b = other.generators();
        if a.is_empty() || b.is_empty() {
            return Submodule::zero(md, self.dim);
        }
        let stacked: Vec<Vec<u32>> = a.iter().chain(b).cloned().collect();
        let lk = left_kernel(&ZqMatrix::from_residue_rows(md, self.dim, &stacked));
        let gens: Vec<Vec<u32>> = (0..lk.rows())
            .map(|i| combine(md, self.dim, &lk.row(i)[..a.len()], a))
            .collect();
        Submodule::new(md, self.dim, &gens)
    }

    /// Image under the linear map sending `e_i` to `map[i]`.
    pub fn image<R: AsRef<[u32]>>(&self, target_dim: usize, map: &[R]) -> Submodule {
        assert_eq!(map.len(), self.dim);
        let md = self.modulus();
        let rows: Vec<&[u32]> = map.iter().map(|r| r.as_ref()).collect();
        let gens: Vec<Vec<u32>> = self
            .generators()
            .iter()
            .map(|g| combine(md, target_dim, g, &rows))
            .collect();
        Submodule::new(md, target_dim, &gens)
    }

    /// `{x in (Z/q)^n : sum x_i map[i] in target}` where `n = map.len()`.
    pub fn preimage<R: AsRef<[u32]>>(map: &[R], target: &Submodule) -> Submodule {
        let md = target.modulus();
        let n = map.len();
        let dim = target.dim;
        let mut stacked: Vec<Vec<u32>> = map
            .iter()
            .map(|r| {
                assert_eq!(r.as_ref().len(), dim);
                r.as_ref().to_vec()
            })
            .collect();
        stacked.extend(target.generators().iter().cloned());
        if stacked.is_empty() || dim == 0 {
            return Submodule::full(md, n);
        }
        let lk = left_kernel(&ZqMatrix::from_residue_rows(md, dim, &stacked));
        let gens: Vec<Vec<u32>> = (0..lk.rows()).map(|i| lk.row(i)[..n].to_vec()).collect();
        Submodule::new(md, n, &gens)
    }
}

/// `sum c_i rows[i]` as a vector of length `dim`.
pub(crate) fn combine<R: AsRef<[u32]>>(md: Modulus, dim: usize, c: &[u32], rows: &[R]) -> Vec<u32> {
    let mut out = vec![0u32; dim];
    for (ci, r) in c.iter().zip(rows) {
        axpy(md, &mut out, *ci, r.as_ref());
    }
    out
}

use crate::flag::Flag;
use crate::linalg::{Matrix, Scalar, Subspace, Vector};

/// The flag-adapted basis of ker ω* (quotient bases of E_0/E_1, E_1/E_2, …)
/// as a change of basis on kernel coordinates.
pub(crate) struct Adapted {
    ker: Subspace,
    offsets: Vec<usize>,
    p: Matrix,
    p_inv: Matrix,
}

impl Adapted {
    pub(crate) fn new(flag: &Flag) -> Self {
        let ker = flag.ambient().clone();
        let mut offsets = vec![0];
        let mut cols = Vec::new();
        for block in flag.adapted_basis() {
            offsets.push(offsets.last().unwrap() + block.len());
            cols.extend(block.iter().map(|u| ker.coords(u).expect("in kernel")));
        }
        let p = Matrix::from_columns(ker.dim(), &cols);
        let p_inv = p.inverse().expect("adapted basis");
        Adapted { ker, offsets, p, p_inv }
    }

    pub(crate) fn dim(&self) -> usize {
        self.ker.dim()
    }

    pub(crate) fn offset(&self, j: usize) -> usize {
        self.offsets[j]
    }

    pub(crate) fn block_len(&self, j: usize) -> usize {
        self.offsets[j + 1] - self.offsets[j]
    }

    /// A map given in adapted coordinates, rewritten in kernel coordinates.
    pub(crate) fn to_kernel(&self, ra: &Matrix) -> Matrix {
        &(&self.p * ra) * &self.p_inv
    }

    pub(crate) fn coords(&self, v: &[Scalar]) -> Vector {
        self.p_inv.mul_vec(&self.ker.coords(v).expect("in kernel"))
    }
}

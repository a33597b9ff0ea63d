use num_traits::Zero;

use super::{sign, Matrix, Scalar};

/// Diagonal entries of a congruent diagonalisation PᵀGP of a symmetric matrix.
pub fn congruence_diagonal(g: &Matrix) -> Vec<Scalar> {
    assert!(g.is_symmetric(), "congruence diagonalisation needs a symmetric matrix");
    let n = g.rows();
    let mut a = g.to_rows();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                swap_sym(&mut a, k, i);
            } else if let Some((i, j)) =
                (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
            {
                // a_ii = a_jj = 0 here, so adding j to i makes a_ii = 2a_ij.
                add_sym(&mut a, i, j);
                swap_sym(&mut a, k, i);
            } else {
                diag.extend(std::iter::repeat(Scalar::zero()).take(n - k));
                return diag;
            }
        }
        let p = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
            for j in k..n {
                let t = &f * &a[j][k];
                a[j][i] -= t;
            }
        }
        diag.push(p);
    }
    diag
}

fn swap_sym(a: &mut [Vec<Scalar>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

// row_i += row_j; col_i += col_j
fn add_sym(a: &mut [Vec<Scalar>], i: usize, j: usize) {
    let rj = a[j].clone();
    for (x, y) in a[i].iter_mut().zip(&rj) {
        *x += y;
    }
    for row in a.iter_mut() {
        let y = row[j].clone();
        row[i] += y;
    }
}

/// (positive, negative, zero) counts of a symmetric form (Sylvester).
pub fn signature(g: &Matrix) -> (usize, usize, usize) {
    let d = congruence_diagonal(g);
    let count = |s| d.iter().filter(|x| sign(x) == s).count();
    (count(1), count(-1), count(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signatures() {
        assert_eq!(signature(&Matrix::from_ints(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(signature(&Matrix::from_ints(&[&[2, 1], &[1, 2]])), (2, 0, 0));
        assert_eq!(signature(&Matrix::from_ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])), (2, 1, 0));
        assert_eq!(signature(&Matrix::from_ints(&[&[1, 1], &[1, 1]])), (1, 0, 1));
        assert_eq!(signature(&Matrix::zeros(2, 2)), (0, 0, 2));
    }
}

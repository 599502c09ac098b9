//! Gaussian elimination over a [`Field`]: rank, kernels, images and
//! subspace intersections.

use crate::matrix::Matrix;
use crate::ring::Field;

/// Reduced row echelon form. Returns the reduced matrix and the pivot
/// columns. Among candidate pivots in a column the lightest entry is used.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(p) = (row..a.rows())
            .filter(|&i| !a[(i, col)].is_zero())
            .min_by_key(|&i| a[(i, col)].weight())
        else {
            continue;
        };
        a.swap_rows(row, p);
        let inv = a[(row, col)].inverse().expect("nonzero pivot");
        for j in 0..a.cols() {
            a[(row, j)] = a[(row, j)].times(&inv);
        }
        for i in 0..a.rows() {
            if i != row && !a[(i, col)].is_zero() {
                let c = a[(i, col)].clone();
                a.add_row_multiple(i, row, &c);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

/// Rank by forward elimination only.
pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut a = m.clone();
    let mut row = 0;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(p) = (row..a.rows())
            .filter(|&i| !a[(i, col)].is_zero())
            .min_by_key(|&i| a[(i, col)].weight())
        else {
            continue;
        };
        a.swap_rows(row, p);
        let inv = a[(row, col)].inverse().expect("nonzero pivot");
        for i in row + 1..a.rows() {
            if !a[(i, col)].is_zero() {
                let c = a[(i, col)].times(&inv);
                a.add_row_multiple(i, row, &c);
            }
        }
        row += 1;
    }
    row
}

/// Basis of the kernel, as the columns of the returned `cols x k` matrix.
pub fn kernel<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    Matrix::from_fn(m.cols(), free.len(), |i, k| {
        let f = free[k];
        if i == f {
            F::one()
        } else if let Some(row) = pivots.iter().position(|&p| p == i) {
            // char 2: -r = r
            r[(row, f)].clone()
        } else {
            F::zero()
        }
    })
}

/// Basis of the column space, taken from the pivot columns of `m`.
pub fn image<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let (_, pivots) = rref(m);
    Matrix::from_fn(m.rows(), pivots.len(), |i, k| m[(i, pivots[k])].clone())
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let (r, pivots) = rref(&m.hstack(&Matrix::identity(n)));
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
}

/// A subspace of `F^n`, given by a basis of column vectors.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    basis: Matrix<F>,
}

impl<F: Field> Subspace<F> {
    pub fn whole(n: usize) -> Self {
        Self {
            basis: Matrix::identity(n),
        }
    }

    /// Span of the columns of `m` (not necessarily independent).
    pub fn span(m: &Matrix<F>) -> Self {
        Self { basis: image(m) }
    }

    pub fn kernel_of(m: &Matrix<F>) -> Self {
        Self { basis: kernel(m) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self::span(&self.basis.hstack(&other.basis))
    }

    /// Intersection, from the kernel of `[A | B]`: `A x = B y` gives the
    /// common vectors `A x`.
    pub fn intersect(&self, other: &Self) -> Self {
        let n = self.ambient_dim();
        if self.dim() == 0 || other.dim() == 0 {
            return Self {
                basis: Matrix::zeros(n, 0),
            };
        }
        let k = kernel(&self.basis.hstack(&other.basis));
        let x = Matrix::from_fn(self.dim(), k.cols(), |i, j| k[(i, j)].clone());
        Self::span(&self.basis.times(&x))
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let col = Matrix::from_fn(v.len(), 1, |i, _| v[i].clone());
        rank(&self.basis.hstack(&col)) == self.dim()
    }
}

//! Small dense-matrix helpers on top of nalgebra.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::Result;
use crate::scalar::Real;

pub fn commutator<T: Real>(a: &DMatrix<T>, b: &DMatrix<T>) -> DMatrix<T> {
    a * b - b * a
}

pub fn diag<T: Real>(values: &[T]) -> DMatrix<T> {
    DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(values))
}

pub fn identity<T: Real>(n: usize) -> DMatrix<T> {
    DMatrix::identity(n, n)
}

/// Largest absolute off-diagonal entry.
pub fn off_diagonal_max<T: Real>(m: &DMatrix<T>) -> T {
    let mut worst = T::zero();
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            if r != c {
                worst = worst.max(m[(r, c)].abs());
            }
        }
    }
    worst
}

pub fn diagonal_values<T: Real>(m: &DMatrix<T>) -> Vec<T> {
    (0..m.nrows().min(m.ncols())).map(|i| m[(i, i)]).collect()
}

/// `f(A)` for symmetric `A` via its eigendecomposition.
pub fn symmetric_apply<T, F>(a: &DMatrix<T>, mut f: F) -> Result<DMatrix<T>>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    let n = a.nrows();
    if n == 0 {
        return Ok(a.clone());
    }
    let eig = SymmetricEigen::new(a.clone());
    let mut vals = Vec::with_capacity(n);
    for &l in eig.eigenvalues.iter() {
        vals.push(f(l)?);
    }
    let v = &eig.eigenvectors;
    Ok(v * diag(&vals) * v.transpose())
}

/// Sorted eigenvalues of a symmetric matrix.
pub fn symmetric_eigenvalues<T: Real>(a: &DMatrix<T>) -> Vec<T> {
    if a.nrows() == 0 {
        return Vec::new();
    }
    let mut v: Vec<T> = SymmetricEigen::new(a.clone()).eigenvalues.iter().copied().collect();
    v.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    v
}

/// Permutation swapping the factors of `C^d (x) C^d`.
pub fn swap_permutation<T: Real>(d: usize) -> DMatrix<T> {
    let n = d * d;
    let mut p = DMatrix::zeros(n, n);
    for a in 0..d {
        for b in 0..d {
            p[(b * d + a, a * d + b)] = T::one();
        }
    }
    p
}

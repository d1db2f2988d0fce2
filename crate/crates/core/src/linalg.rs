//! Small dense linear-algebra kernels used by the numeric engine.
//!
//! Everything here is dependency-free (no LAPACK): a cyclic Jacobi
//! eigensolver for symmetric matrices, modified Gram-Schmidt with
//! reorthogonalization, Cholesky, and a conjugate-gradient solve for
//! positive-semidefinite operator equations.

use ndarray::{Array1, Array2};

use crate::scalar::Real;

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order with matching eigenvector
/// columns. Deterministic; accuracy near machine epsilon for the sizes
/// used here (≤ a few hundred).
pub fn sym_eigen<F: Real>(a: &Array2<F>) -> (Array1<F>, Array2<F>) {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let mut m = a.clone();
    let mut v = Array2::<F>::eye(n);
    let eps = F::of(1e-14);
    for _sweep in 0..60 {
        let mut off = F::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off + m[[p, q]] * m[[p, q]];
            }
        }
        let scale = (0..n).map(|i| m[[i, i]].abs()).fold(F::zero(), F::max);
        if off.sqrt() <= eps * F::max(scale, F::one()) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[[p, q]];
                if apq.abs() <= eps * F::of(1e-4) * F::max(scale, F::one()) {
                    continue;
                }
                let app = m[[p, p]];
                let aqq = m[[q, q]];
                let theta = (aqq - app) / (F::of(2.0) * apq);
                let t = {
                    let s = if theta >= F::zero() {
                        F::one()
                    } else {
                        -F::one()
                    };
                    s / (theta.abs() + (theta * theta + F::one()).sqrt())
                };
                let c = F::one() / (t * t + F::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[[k, p]];
                    let mkq = m[[k, q]];
                    m[[k, p]] = c * mkp - s * mkq;
                    m[[k, q]] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[[p, k]];
                    let mqk = m[[q, k]];
                    m[[p, k]] = c * mpk - s * mqk;
                    m[[q, k]] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[[k, p]];
                    let vkq = v[[k, q]];
                    v[[k, p]] = c * vkp - s * vkq;
                    v[[k, q]] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    let diag: Vec<F> = (0..n).map(|i| m[[i, i]]).collect();
    idx.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());
    let vals = Array1::from_iter(idx.iter().map(|&i| diag[i]));
    let mut vecs = Array2::<F>::zeros((n, n));
    for (newcol, &oldcol) in idx.iter().enumerate() {
        for r in 0..n {
            vecs[[r, newcol]] = v[[r, oldcol]];
        }
    }
    (vals, vecs)
}

/// Cholesky factor `R` (upper triangular) of a positive-definite matrix,
/// `a = Rᵀ R`. Returns `None` if a pivot drops below `tol`.
pub fn cholesky<F: Real>(a: &Array2<F>, tol: F) -> Option<Array2<F>> {
    let n = a.nrows();
    let mut r = Array2::<F>::zeros((n, n));
    for i in 0..n {
        for j in i..n {
            let mut s = a[[i, j]];
            for k in 0..i {
                s = s - r[[k, i]] * r[[k, j]];
            }
            if i == j {
                if s <= tol {
                    return None;
                }
                r[[i, i]] = s.sqrt();
            } else {
                r[[i, j]] = s / r[[i, i]];
            }
        }
    }
    Some(r)
}

/// Invert an upper-triangular matrix by back substitution.
pub fn invert_upper<F: Real>(r: &Array2<F>) -> Array2<F> {
    let n = r.nrows();
    let mut inv = Array2::<F>::zeros((n, n));
    for i in (0..n).rev() {
        inv[[i, i]] = F::one() / r[[i, i]];
        for j in (i + 1)..n {
            let mut s = F::zero();
            for k in (i + 1)..=j {
                s = s + r[[i, k]] * inv[[k, j]];
            }
            inv[[i, j]] = -s / r[[i, i]];
        }
    }
    inv
}

/// In-place modified Gram-Schmidt with one reorthogonalization pass over
/// the columns of `q` (each column a flattened vector). Returns the
/// numerical rank found; columns past the rank are zeroed.
pub fn orthonormalize_columns<F: Real>(q: &mut [Vec<F>], drop_tol: F) -> usize {
    let mut rank = 0;
    let ncols = q.len();
    for j in 0..ncols {
        let mut col = std::mem::take(&mut q[j]);
        let initial = norm(&col);
        for _pass in 0..2 {
            for i in 0..rank {
                let proj = dot(&q[i], &col);
                axpy(&mut col, -proj, &q[i]);
            }
        }
        let nrm = norm(&col);
        if nrm <= drop_tol * F::max(initial, F::one()) {
            q[j] = vec![F::zero(); col.len()];
            continue;
        }
        let inv = F::one() / nrm;
        for x in &mut col {
            *x *= inv;
        }
        q.swap(j, rank);
        q[rank] = col;
        rank += 1;
    }
    rank
}

pub fn dot<F: Real>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub fn norm<F: Real>(a: &[F]) -> F {
    dot(a, a).sqrt()
}

pub fn axpy<F: Real>(y: &mut [F], alpha: F, x: &[F]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Conjugate gradients for `A x = b` with `A` symmetric positive
/// (semi)definite, given as an operator. Used to project onto operator
/// kernels: `x* = argmin |Ax - b|` restricted to range(A).
pub fn cg_solve<F: Real>(
    apply: impl Fn(&[F]) -> Vec<F>,
    b: &[F],
    tol: F,
    max_iter: usize,
) -> Vec<F> {
    let mut x = vec![F::zero(); b.len()];
    let mut r = b.to_vec();
    let mut p = r.clone();
    let mut rs = dot(&r, &r);
    let bnorm = F::max(norm(b), F::one());
    for _ in 0..max_iter {
        if rs.sqrt() <= tol * bnorm {
            break;
        }
        let ap = apply(&p);
        let denom = dot(&p, &ap);
        if denom <= F::zero() {
            break;
        }
        let alpha = rs / denom;
        axpy(&mut x, alpha, &p);
        axpy(&mut r, -alpha, &ap);
        let rs2 = dot(&r, &r);
        let beta = rs2 / rs;
        for (pi, &ri) in p.iter_mut().zip(&r) {
            *pi = ri + beta * *pi;
        }
        rs = rs2;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn jacobi_diagonalizes() {
        let a: Array2<f64> = array![[4.0, 1.0, 0.5], [1.0, 3.0, -0.25], [0.5, -0.25, 1.0]];
        let (w, v) = sym_eigen(&a);
        // reconstruct
        let n = 3;
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0f64;
                for k in 0..n {
                    s += v[[i, k]] * w[k] * v[[j, k]];
                }
                assert!((s - a[[i, j]]).abs() < 1e-12);
            }
        }
        assert!(w[0] <= w[1] && w[1] <= w[2]);
    }

    #[test]
    fn cholesky_roundtrip() {
        let a: Array2<f64> = array![[4.0, 2.0], [2.0, 3.0]];
        let r = cholesky(&a, 1e-12).unwrap();
        let rt_r = r.t().dot(&r);
        assert!((rt_r - &a).iter().all(|x| x.abs() < 1e-12));
        let rinv = invert_upper(&r);
        let prod = r.dot(&rinv);
        assert!((prod - Array2::<f64>::eye(2)).iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn mgs_detects_rank() {
        let mut cols = vec![
            vec![1.0, 0.0, 0.0],
            vec![1.0, 1e-13, 0.0],
            vec![0.0, 1.0, 1.0],
        ];
        let r = orthonormalize_columns(&mut cols, 1e-10);
        assert_eq!(r, 2);
    }
}

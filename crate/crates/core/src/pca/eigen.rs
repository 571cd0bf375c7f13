//! Cyclic Jacobi eigensolver for small dense symmetric matrices.

use super::matrix::Matrix;
use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 100;
pub const MAX_DIMENSION: usize = 64;

/// Eigenpairs sorted by descending eigenvalue. Column `l` of `vectors` pairs
/// with `values[l]`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Matrix,
    pub sweeps: usize,
}

impl EigenDecomposition {
    pub fn vector(&self, l: usize) -> Vec<f64> {
        self.vectors.column(l)
    }
}

/// Full spectrum of a symmetric matrix by cyclic Jacobi rotations.
///
/// Each eigenvector is signed so that its largest-magnitude entry is
/// positive, the lowest index winning ties. Residuals and orthonormality are
/// checked before returning.
pub fn symmetric_eigen(sigma: &Matrix) -> Result<EigenDecomposition> {
    let p = sigma.rows();
    if sigma.cols() != p {
        return Err(Error::invalid(format!("{}x{} matrix is not square", p, sigma.cols())));
    }
    if p > MAX_DIMENSION {
        return Err(Error::invalid(format!(
            "dimension {p} exceeds the dense solver limit {MAX_DIMENSION}"
        )));
    }
    let fnorm = sigma.frobenius_norm();
    let scale = fnorm.max(1.0);
    let asym = (0..p)
        .flat_map(|i| (i + 1..p).map(move |j| (i, j)))
        .map(|(i, j)| (sigma[(i, j)] - sigma[(j, i)]).abs())
        .fold(0.0, f64::max);
    if asym > 1e-12 * scale || !fnorm.is_finite() {
        return Err(Error::NotSymmetric(asym));
    }

    let mut a = sigma.clone();
    for i in 0..p {
        for j in i + 1..p {
            let m = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = m;
            a[(j, i)] = m;
        }
    }
    let mut v = Matrix::identity(p);
    let tol = 1e-14 * fnorm;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= tol {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off });
        }
        sweeps += 1;
        for ip in 0..p {
            for iq in ip + 1..p {
                rotate(&mut a, &mut v, ip, iq);
            }
        }
    }

    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&i, &j| a[(j, j)].total_cmp(&a[(i, i)]));
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = Matrix::zeros(p, p);
    for (l, &src) in order.iter().enumerate() {
        let mut col = v.column(src);
        normalize_sign(&mut col);
        for (k, x) in col.into_iter().enumerate() {
            vectors[(k, l)] = x;
        }
    }

    let decomposition = EigenDecomposition {
        values,
        vectors,
        sweeps,
    };
    let residual = max_residual(sigma, &decomposition);
    if residual > 1e-10 * scale {
        return Err(Error::EigenCheck {
            what: "residual",
            value: residual,
        });
    }
    let ortho = orthonormality_error(&decomposition.vectors);
    if ortho > 1e-10 {
        return Err(Error::EigenCheck {
            what: "orthonormality",
            value: ortho,
        });
    }
    Ok(decomposition)
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let p = a.rows();
    let mut sum = 0.0;
    for i in 0..p {
        for j in 0..p {
            if i != j {
                sum += a[(i, j)] * a[(i, j)];
            }
        }
    }
    sum.sqrt()
}

/// Annihilates `a[p][q]` with a plane rotation and accumulates it into `v`.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    // theta^2 would overflow; use the leading term of the expansion.
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = a.rows();
    for k in 0..n {
        if k != p && k != q {
            let akp = a[(k, p)];
            let akq = a[(k, q)];
            let new_kp = c * akp - s * akq;
            let new_kq = s * akp + c * akq;
            a[(k, p)] = new_kp;
            a[(p, k)] = new_kp;
            a[(k, q)] = new_kq;
            a[(q, k)] = new_kq;
        }
    }
    a[(p, p)] -= t * apq;
    a[(q, q)] += t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

fn normalize_sign(col: &mut [f64]) {
    let mut best = 0;
    for (i, x) in col.iter().enumerate() {
        if x.abs() > col[best].abs() {
            best = i;
        }
    }
    if col[best] < 0.0 {
        col.iter_mut().for_each(|x| *x = -*x);
    }
}

/// `max_l || sigma v_l - lambda_l v_l ||`.
pub fn max_residual(sigma: &Matrix, eig: &EigenDecomposition) -> f64 {
    let p = sigma.rows();
    (0..p)
        .map(|l| {
            (0..p)
                .map(|i| {
                    let sv: f64 = (0..p).map(|k| sigma[(i, k)] * eig.vectors[(k, l)]).sum();
                    let r = sv - eig.values[l] * eig.vectors[(i, l)];
                    r * r
                })
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max)
}

/// `max_{a,b} |<v_a, v_b> - delta_ab|` over the columns of `vectors`.
pub fn orthonormality_error(vectors: &Matrix) -> f64 {
    let gram = vectors.transpose().matmul(vectors).expect("square");
    gram.max_abs_diff(&Matrix::identity(vectors.cols()))
}

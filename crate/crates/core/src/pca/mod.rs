//! Row standardization, covariance, eigendecomposition and the derived PCA
//! quantities (scores, variance explained, contributions, reconstruction).
//!
//! Both the covariance and the row standard deviations use the `1/N`
//! convention, so a unit-sd standardized matrix has a covariance with unit
//! diagonal.

mod eigen;
mod matrix;

use serde::{Deserialize, Serialize};

pub use eigen::{
    max_residual, orthonormality_error, symmetric_eigen, EigenDecomposition, MAX_DIMENSION,
    MAX_SWEEPS,
};
pub use matrix::Matrix;

use crate::error::{Error, Result};
use matrix::dot;

/// Rows whose standard deviation falls below this are dropped.
pub const ZERO_VARIANCE_SD: f64 = 1e-14;

/// Relative eigenvalue gap below which neighbors are flagged as degenerate.
pub const DEGENERATE_GAP: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DroppedRow {
    pub name: String,
    pub reason: String,
}

/// A `p x N` density matrix (configurations by graphs) after centering and,
/// optionally, unit-sd scaling.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub values: Matrix,
    pub row_names: Vec<String>,
    pub col_ids: Vec<String>,
    /// Mean of each retained row before centering.
    pub row_means: Vec<f64>,
    /// `1/N` standard deviation of each retained row before scaling.
    pub row_sds: Vec<f64>,
    pub unit_sd: bool,
    pub dropped_rows: Vec<DroppedRow>,
}

impl DensityMatrix {
    pub fn p(&self) -> usize {
        self.values.rows()
    }

    pub fn n(&self) -> usize {
        self.values.cols()
    }

    /// Undoes the standardization of `m`, which must have this matrix's shape.
    pub fn unstandardize(&self, m: &Matrix) -> Matrix {
        let mut out = m.clone();
        for j in 0..out.rows() {
            let sd = if self.unit_sd { self.row_sds[j] } else { 1.0 };
            for x in out.row_mut(j) {
                *x = *x * sd + self.row_means[j];
            }
        }
        out
    }
}

/// Centers every row of `raw` and, if `unit_sd`, scales it to unit `1/N`
/// standard deviation. Zero-variance rows are removed and recorded.
pub fn standardize_rows(
    raw: &Matrix,
    row_names: &[String],
    col_ids: &[String],
    unit_sd: bool,
) -> Result<DensityMatrix> {
    let (p, n) = (raw.rows(), raw.cols());
    if row_names.len() != p || col_ids.len() != n {
        return Err(Error::invalid("row/column names do not match the matrix shape"));
    }
    if n < 2 {
        return Err(Error::invalid(format!("need at least 2 graphs, got {n}")));
    }
    let mut kept = Vec::new();
    let mut names = Vec::new();
    let mut means = Vec::new();
    let mut sds = Vec::new();
    let mut dropped = Vec::new();
    for (j, name) in row_names.iter().enumerate().take(p) {
        let row = raw.row(j);
        let mean = row.iter().sum::<f64>() / n as f64;
        let centered: Vec<f64> = row.iter().map(|x| x - mean).collect();
        let sd = (centered.iter().map(|x| x * x).sum::<f64>() / n as f64).sqrt();
        if sd.is_nan() || sd < ZERO_VARIANCE_SD {
            dropped.push(DroppedRow {
                name: name.clone(),
                reason: "zero variance".into(),
            });
            continue;
        }
        let scaled = if unit_sd {
            centered.iter().map(|x| x / sd).collect()
        } else {
            centered
        };
        kept.push(scaled);
        names.push(name.clone());
        means.push(mean);
        sds.push(sd);
    }
    if kept.is_empty() {
        return Err(Error::NothingToAnalyze);
    }
    Ok(DensityMatrix {
        values: Matrix::from_rows(&kept)?,
        row_names: names,
        col_ids: col_ids.to_vec(),
        row_means: means,
        row_sds: sds,
        unit_sd,
        dropped_rows: dropped,
    })
}

/// `(1/N) S S^T`, filled from the upper triangle so it is exactly symmetric.
pub fn covariance(d: &DensityMatrix) -> Matrix {
    let (p, n) = (d.p(), d.n());
    let mut sigma = Matrix::zeros(p, p);
    for a in 0..p {
        for b in a..p {
            let c = dot(d.values.row(a), d.values.row(b)) / n as f64;
            sigma[(a, b)] = c;
            sigma[(b, a)] = c;
        }
    }
    sigma
}

/// Result of a principal component analysis of a [`DensityMatrix`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaResult {
    /// Descending, reported raw (tiny negatives from round-off are kept).
    pub eigenvalues: Vec<f64>,
    /// `p x p`; column `l` is the loading vector of component `l`.
    pub loadings: Matrix,
    /// `N x r`; entry `(i, l)` is graph `i`'s score on component `l`.
    pub scores: Matrix,
    pub r: usize,
    /// Per-component share `lambda_l / sum(lambda)`.
    pub variance_explained: Vec<f64>,
    pub row_names: Vec<String>,
    pub col_ids: Vec<String>,
    /// Indices `l` with `lambda_l - lambda_{l+1} < 1e-8 * lambda_1`.
    pub near_degenerate: Vec<usize>,
}

impl PcaResult {
    pub fn p(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn loading(&self, l: usize) -> Vec<f64> {
        self.loadings.column(l)
    }

    pub fn score_column(&self, l: usize) -> Vec<f64> {
        self.scores.column(l)
    }

    /// Whether components `l` and `l + 1` have a resolvable gap.
    pub fn has_gap_after(&self, l: usize) -> bool {
        !self.near_degenerate.contains(&l)
    }
}

/// Decomposes the covariance of `d` and scores every graph on the first `r`
/// components (`None` keeps all `p`).
pub fn fit(d: &DensityMatrix, r: Option<usize>) -> Result<PcaResult> {
    let p = d.p();
    let r = r.unwrap_or(p);
    if r > p {
        return Err(Error::invalid(format!("requested {r} components but only {p} rows remain")));
    }
    let sigma = covariance(d);
    let eig = symmetric_eigen(&sigma)?;
    let scores = scores(d, &eig.vectors, r)?;
    let total: f64 = eig.values.iter().map(|&l| l.max(0.0)).sum();
    let variance_explained = if total > 0.0 {
        eig.values.iter().map(|&l| l.max(0.0) / total).collect()
    } else {
        vec![0.0; p]
    };
    let lead = eig.values.first().copied().unwrap_or(0.0);
    let near_degenerate = eig
        .values
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] - w[1] < DEGENERATE_GAP * lead || lead <= 0.0)
        .map(|(l, _)| l)
        .collect();
    Ok(PcaResult {
        eigenvalues: eig.values,
        loadings: eig.vectors,
        scores,
        r,
        variance_explained,
        row_names: d.row_names.clone(),
        col_ids: d.col_ids.clone(),
        near_degenerate,
    })
}

/// `N x r` score matrix: column `l` is `values^T * loadings[:, l]`.
pub fn scores(d: &DensityMatrix, loadings: &Matrix, r: usize) -> Result<Matrix> {
    let (p, n) = (d.p(), d.n());
    if loadings.rows() != p {
        return Err(Error::invalid("loadings do not match the number of rows"));
    }
    if r > loadings.cols() {
        return Err(Error::invalid(format!("r = {r} exceeds {} components", loadings.cols())));
    }
    let mut out = Matrix::zeros(n, r);
    for l in 0..r {
        let v = loadings.column(l);
        for i in 0..n {
            out[(i, l)] = (0..p).map(|j| d.values[(j, i)] * v[j]).sum();
        }
    }
    Ok(out)
}

/// Share of total variance carried by the first `r` eigenvalues. Negative
/// round-off eigenvalues count as zero.
pub fn variance_explained(eigenvalues: &[f64], r: usize) -> Result<f64> {
    if r > eigenvalues.len() {
        return Err(Error::invalid(format!("r = {r} exceeds {} eigenvalues", eigenvalues.len())));
    }
    let total: f64 = eigenvalues.iter().map(|&l| l.max(0.0)).sum();
    if total <= 0.0 {
        return Err(Error::invalid("all eigenvalues are zero"));
    }
    if r == eigenvalues.len() {
        return Ok(1.0);
    }
    Ok(eigenvalues[..r].iter().map(|&l| l.max(0.0)).sum::<f64>() / total)
}

/// Percentage contribution of each configuration to a loading vector:
/// `100 |v_j| / sum_k |v_k|`.
pub fn contributions(loading: &[f64]) -> Result<Vec<f64>> {
    let total: f64 = loading.iter().map(|x| x.abs()).sum();
    if total == 0.0 {
        return Err(Error::invalid("contributions of a zero loading vector"));
    }
    Ok(loading.iter().map(|x| 100.0 * x.abs() / total).collect())
}

/// Rank-`r` reconstruction `sum_{l<r} v_l u_l^T` of the standardized matrix.
pub fn reconstruct(result: &PcaResult, r: usize) -> Result<Matrix> {
    if r > result.scores.cols() {
        return Err(Error::invalid(format!(
            "r = {r} exceeds the {} scored components",
            result.scores.cols()
        )));
    }
    let (p, n) = (result.p(), result.scores.rows());
    let mut out = Matrix::zeros(p, n);
    for l in 0..r {
        for j in 0..p {
            let v = result.loadings[(j, l)];
            for i in 0..n {
                out[(j, i)] += v * result.scores[(i, l)];
            }
        }
    }
    Ok(out)
}

/// Absolute cosine between two vectors.
pub fn abs_cosine(a: &[f64], b: &[f64]) -> f64 {
    // sqrt(x * x) == x exactly, so identical inputs give exactly 1.
    let denom = (dot(a, a) * dot(b, b)).sqrt();
    if denom == 0.0 {
        return 0.0;
    }
    (dot(a, b) / denom).abs().min(1.0)
}

//! Offline feature selection: a self-organizing map over candidate features,
//! weight-plane inspection, and correlation-based pruning.

use crate::rng::{self, ChaCha8Rng};
use crate::{Error, Result};

/// Kohonen map on a hexagonal grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SofmGrid {
    pub rows: usize,
    pub cols: usize,
    /// One weight vector of the input dimension per neuron, row-major.
    pub weights: Vec<Vec<f64>>,
    pub trained: bool,
}

impl SofmGrid {
    pub fn neuron_count(&self) -> usize {
        self.rows * self.cols
    }

    pub fn dim(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }

    /// Index of the neuron nearest to `x` (Euclidean); ties go to the
    /// lowest index.
    pub fn winner(&self, x: &[f64]) -> usize {
        let mut best = 0usize;
        let mut best_d = f64::INFINITY;
        for (i, w) in self.weights.iter().enumerate() {
            let d = sq_dist(w, x);
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        best
    }

    /// Hexagonal grid distance between two neurons (axial-coordinate hex
    /// metric on an odd-row offset layout).
    pub fn grid_distance(&self, a: usize, b: usize) -> f64 {
        let to_axial = |i: usize| {
            let row = (i / self.cols) as i64;
            let col = (i % self.cols) as i64;
            let q = col - (row - (row & 1)) / 2;
            (q, row)
        };
        let (qa, ra) = to_axial(a);
        let (qb, rb) = to_axial(b);
        let (dq, dr) = (qa - qb, ra - rb);
        ((dq.abs() + dr.abs() + (dq + dr).abs()) / 2) as f64
    }
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Train a sequential Kohonen map: per sample, the winner and its Gaussian
/// hex-grid neighborhood move toward the sample. The neighborhood radius
/// decays linearly from `max(rows, cols)/2` to 0.5 and the learning rate
/// from 0.5 to 0.01 over the epochs. Weights initialize from randomly drawn
/// training points, so the map is deterministic under a fixed seed.
///
/// Expects feature columns already standardized (z-score).
pub fn train_sofm(
    data: &[Vec<f64>],
    rows: usize,
    cols: usize,
    epochs: usize,
    seed: u64,
) -> Result<SofmGrid> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    let dim = data[0].len();
    if dim == 0 || data.iter().any(|r| r.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: data.iter().map(Vec::len).find(|&l| l != dim).unwrap_or(0),
        });
    }
    let mut rng = rng::rng_from(rng::derive_seed(seed, 0x50F1));
    let n_neurons = rows * cols;
    let weights: Vec<Vec<f64>> = (0..n_neurons)
        .map(|_| data[rng::uniform_usize(&mut rng, data.len())].clone())
        .collect();
    let mut grid = SofmGrid {
        rows,
        cols,
        weights,
        trained: false,
    };

    let sigma0 = rows.max(cols) as f64 / 2.0;
    let sigma1 = 0.5;
    let (alpha0, alpha1) = (0.5, 0.01);
    let mut order: Vec<usize> = (0..data.len()).collect();

    for epoch in 0..epochs {
        let t = if epochs > 1 {
            epoch as f64 / (epochs - 1) as f64
        } else {
            1.0
        };
        let sigma = sigma0 + (sigma1 - sigma0) * t;
        let alpha = alpha0 + (alpha1 - alpha0) * t;
        rng::shuffle(&mut rng, &mut order);
        for &i in &order {
            let x = &data[i];
            let win = grid.winner(x);
            for n in 0..n_neurons {
                let d = grid.grid_distance(win, n);
                let hsig = (-d * d / (2.0 * sigma * sigma)).exp();
                let w = &mut grid.weights[n];
                for (wj, xj) in w.iter_mut().zip(x) {
                    *wj += alpha * hsig * (xj - *wj);
                }
            }
        }
    }
    grid.trained = true;
    Ok(grid)
}

/// Per-feature weight plane: the rows x cols matrix of that component across
/// all neurons.
pub fn weight_planes(grid: &SofmGrid) -> Result<Vec<Vec<f64>>> {
    if !grid.trained {
        return Err(Error::UntrainedGrid);
    }
    let dim = grid.dim();
    Ok((0..dim)
        .map(|f| grid.weights.iter().map(|w| w[f]).collect())
        .collect())
}

/// Population variance of one weight plane.
pub fn plane_variance(plane: &[f64]) -> f64 {
    let n = plane.len() as f64;
    let mean = plane.iter().sum::<f64>() / n;
    plane.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n
}

/// Pearson correlation matrix of feature columns. Zero-variance columns get
/// 0 off-diagonal and 1 on the diagonal.
pub fn correlation_matrix(data: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    if data.len() < 2 {
        return Err(Error::EmptyData);
    }
    let n = data.len() as f64;
    let dim = data[0].len();
    let means: Vec<f64> = (0..dim)
        .map(|j| data.iter().map(|r| r[j]).sum::<f64>() / n)
        .collect();
    let stds: Vec<f64> = (0..dim)
        .map(|j| {
            (data.iter().map(|r| (r[j] - means[j]).powi(2)).sum::<f64>() / n).sqrt()
        })
        .collect();
    let mut m = vec![vec![0.0; dim]; dim];
    for i in 0..dim {
        m[i][i] = 1.0;
        for j in i + 1..dim {
            let rho = if stds[i] <= 1e-12 || stds[j] <= 1e-12 {
                0.0
            } else {
                let cov = data
                    .iter()
                    .map(|r| (r[i] - means[i]) * (r[j] - means[j]))
                    .sum::<f64>()
                    / n;
                cov / (stds[i] * stds[j])
            };
            m[i][j] = rho;
            m[j][i] = rho;
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq)]
pub enum DropReason {
    /// Weight plane variance below the floor: the feature does not
    /// participate in the map's organization.
    UniformPlane,
    /// Correlated above the threshold with the named kept feature.
    CorrelatedWith(usize),
}

#[derive(Debug, Clone)]
pub struct SelectionReport {
    pub correlations: Vec<Vec<f64>>,
    pub plane_variances: Vec<f64>,
    pub keep: Vec<usize>,
    pub drop: Vec<(usize, DropReason)>,
}

/// Prune features: drop uniform weight planes, then break correlated pairs
/// by dropping the member with the lower plane variance (ties: the higher
/// index goes).
pub fn select_features(
    grid: &SofmGrid,
    correlations: &[Vec<f64>],
    rho_max: f64,
    var_min: f64,
) -> Result<SelectionReport> {
    let planes = weight_planes(grid)?;
    let dim = planes.len();
    if correlations.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: correlations.len(),
        });
    }
    let variances: Vec<f64> = planes.iter().map(|p| plane_variance(p)).collect();
    let mut dropped: Vec<Option<DropReason>> = vec![None; dim];
    for (i, &v) in variances.iter().enumerate() {
        if v < var_min {
            dropped[i] = Some(DropReason::UniformPlane);
        }
    }
    for i in 0..dim {
        if dropped[i].is_some() {
            continue;
        }
        for j in i + 1..dim {
            if dropped[j].is_some() {
                continue;
            }
            if correlations[i][j].abs() > rho_max {
                // drop the less informative member; ties drop the higher index
                if variances[j] <= variances[i] {
                    dropped[j] = Some(DropReason::CorrelatedWith(i));
                } else {
                    dropped[i] = Some(DropReason::CorrelatedWith(j));
                    break; // i is gone; stop comparing against it
                }
            }
        }
    }
    let keep = (0..dim).filter(|&i| dropped[i].is_none()).collect();
    let drop = dropped
        .into_iter()
        .enumerate()
        .filter_map(|(i, r)| r.map(|r| (i, r)))
        .collect();
    Ok(SelectionReport {
        correlations: correlations.to_vec(),
        plane_variances: variances,
        keep,
        drop,
    })
}

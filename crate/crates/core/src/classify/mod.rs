//! The trainable classifiers: an MLP trained with scaled conjugate gradient,
//! a neuro-fuzzy TSK model (subtractive clustering + ANFIS-style hybrid
//! training), and a labeled SOFM. All share stratified k-fold
//! cross-validation for stopping-epoch selection and carry their input
//! standardization with them.

mod mlp;
mod nf;
mod sofm;

pub use mlp::{mlp_train, MlpModel};
pub use nf::{anfis_train, subtractive_clustering, NfModel, Rule};
pub use sofm::{sofm_classify_train, SofmClassifier};

use crate::rng;
use crate::{Error, Result};

/// Per-feature z-score parameters, fitted on training data and persisted
/// with every model. Zero-variance features divide by 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardizer {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl Standardizer {
    pub fn fit(x: &[Vec<f64>]) -> Self {
        let n = x.len() as f64;
        let dim = x.first().map_or(0, Vec::len);
        let mean: Vec<f64> = (0..dim)
            .map(|j| x.iter().map(|r| r[j]).sum::<f64>() / n)
            .collect();
        let std: Vec<f64> = (0..dim)
            .map(|j| {
                let v = x.iter().map(|r| (r[j] - mean[j]).powi(2)).sum::<f64>() / n;
                let s = v.sqrt();
                if s < 1e-12 {
                    1.0
                } else {
                    s
                }
            })
            .collect();
        Self { mean, std }
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn transform_row(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(self.mean.iter().zip(&self.std))
            .map(|(x, (m, s))| (x - m) / s)
            .collect()
    }

    pub fn transform(&self, x: &[Vec<f64>]) -> Vec<Vec<f64>> {
        x.iter().map(|r| self.transform_row(r)).collect()
    }
}

/// Everything recorded during training: loss curves, the cross-validated
/// stopping epoch, per-fold validation rates at that epoch, and the
/// out-of-fold scores used downstream for fusion weight search.
#[derive(Debug, Clone)]
pub struct TrainReport {
    /// Per-epoch training MSE of the final model (trained on all data).
    pub train_loss: Vec<f64>,
    /// Mean validation MSE across folds, per epoch.
    pub val_loss: Vec<f64>,
    /// Per-fold (tp_rate, fp_rate) on the held-out fold at the selected
    /// epoch, 0.5 threshold.
    pub fold_val_rates: Vec<(f64, f64)>,
    /// 1-based epoch chosen by cross-validation.
    pub selected_epoch: usize,
    pub seed: u64,
    /// Out-of-fold score for every training sample, from the fold model that
    /// held it out, at the selected epoch.
    pub oof_scores: Vec<f64>,
    /// Worst relative least-squares residual orthogonality |A^T r|/(|A||r|)
    /// seen across epochs (neuro-fuzzy training only).
    pub ls_orthogonality: Option<f64>,
}

pub(crate) fn check_binary_labels(y: &[u8]) -> Result<()> {
    if y.is_empty() || y.iter().any(|&l| l > 1) {
        return Err(Error::DegenerateLabels);
    }
    let pos = y.iter().filter(|&&l| l == 1).count();
    if pos == 0 || pos == y.len() {
        return Err(Error::DegenerateLabels);
    }
    Ok(())
}

pub(crate) fn check_matrix(x: &[Vec<f64>], y: &[u8]) -> Result<usize> {
    if x.is_empty() {
        return Err(Error::EmptyData);
    }
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    let dim = x[0].len();
    for row in x {
        if row.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: row.len(),
            });
        }
    }
    Ok(dim)
}

/// Stratified fold assignment: within each class, shuffled samples go to the
/// currently least-filled fold (ties to the lowest index), so fold sizes
/// differ by at most one and each class spreads evenly.
pub fn kfold_split(labels: &[u8], folds: usize, seed: u64) -> Result<Vec<usize>> {
    let n = labels.len();
    if folds < 2 || n < folds {
        return Err(Error::InvalidParam(format!(
            "need 2 <= folds <= n, got folds={folds}, n={n}"
        )));
    }
    let mut rng = rng::rng_from(rng::derive_seed(seed, 0xF01D));
    let mut assignment = vec![0usize; n];
    let mut fill = vec![0usize; folds];
    for class in [1u8, 0u8] {
        let mut idx: Vec<usize> = (0..n).filter(|&i| labels[i] == class).collect();
        rng::shuffle(&mut rng, &mut idx);
        for i in idx {
            let fold = (0..folds).min_by_key(|&f| (fill[f], f)).unwrap();
            assignment[i] = fold;
            fill[fold] += 1;
        }
    }
    Ok(assignment)
}

/// (tp_rate, fp_rate) at a strict `score > threshold` decision.
pub(crate) fn tp_fp(scores: &[f64], labels: &[u8], threshold: f64) -> (f64, f64) {
    let (mut tp, mut p, mut fp, mut ng) = (0usize, 0usize, 0usize, 0usize);
    for (&s, &l) in scores.iter().zip(labels) {
        if l == 1 {
            p += 1;
            if s > threshold {
                tp += 1;
            }
        } else {
            ng += 1;
            if s > threshold {
                fp += 1;
            }
        }
    }
    (
        if p > 0 { tp as f64 / p as f64 } else { 0.0 },
        if ng > 0 { fp as f64 / ng as f64 } else { 0.0 },
    )
}

/// Shared cross-validation scaffold: `train_fold(train_idx, epochs, sub_seed)`
/// returns per-epoch snapshots scored by `score(snapshot, sample_idx)`.
pub(crate) struct CvOutcome {
    pub val_loss: Vec<f64>,
    pub selected_epoch: usize,
    pub oof_scores: Vec<f64>,
    pub fold_val_rates: Vec<(f64, f64)>,
}

pub(crate) fn cross_validate<Snap>(
    y: &[u8],
    folds: usize,
    epochs: usize,
    seed: u64,
    mut train_fold: impl FnMut(&[usize], u64) -> Vec<Snap>,
    score: impl Fn(&Snap, usize) -> f64,
) -> Result<CvOutcome> {
    let n = y.len();
    let assignment = kfold_split(y, folds, seed)?;
    let mut val_sum = vec![0.0f64; epochs];
    let mut fold_snaps: Vec<Vec<Snap>> = Vec::with_capacity(folds);
    let mut fold_indices: Vec<(Vec<usize>, Vec<usize>)> = Vec::with_capacity(folds);

    for fold in 0..folds {
        let train_idx: Vec<usize> = (0..n).filter(|&i| assignment[i] != fold).collect();
        let val_idx: Vec<usize> = (0..n).filter(|&i| assignment[i] == fold).collect();
        let snaps = train_fold(&train_idx, rng::derive_seed(seed, fold as u64 + 1));
        debug_assert_eq!(snaps.len(), epochs);
        for (e, snap) in snaps.iter().enumerate() {
            let mse: f64 = val_idx
                .iter()
                .map(|&i| {
                    let o = score(snap, i);
                    (o - y[i] as f64).powi(2)
                })
                .sum::<f64>()
                / val_idx.len().max(1) as f64;
            val_sum[e] += mse;
        }
        fold_snaps.push(snaps);
        fold_indices.push((train_idx, val_idx));
    }

    let val_loss: Vec<f64> = val_sum.iter().map(|s| s / folds as f64).collect();
    let best = val_loss
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap().then(a.0.cmp(&b.0)))
        .map(|(e, _)| e)
        .unwrap_or(0);

    let mut oof_scores = vec![0.0f64; n];
    let mut fold_val_rates = Vec::with_capacity(folds);
    for (snaps, (_, val_idx)) in fold_snaps.iter().zip(&fold_indices) {
        let snap = &snaps[best];
        let scores: Vec<f64> = val_idx.iter().map(|&i| score(snap, i)).collect();
        let labels: Vec<u8> = val_idx.iter().map(|&i| y[i]).collect();
        fold_val_rates.push(tp_fp(&scores, &labels, 0.5));
        for (&i, &s) in val_idx.iter().zip(&scores) {
            oof_scores[i] = s;
        }
    }

    Ok(CvOutcome {
        val_loss,
        selected_epoch: best + 1,
        oof_scores,
        fold_val_rates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kfold_even_sizes() {
        let labels = [1, 1, 1, 1, 1, 0, 0, 0, 0, 0];
        let a = kfold_split(&labels, 5, 3).unwrap();
        let mut sizes = vec![0usize; 5];
        for &f in &a {
            sizes[f] += 1;
        }
        assert_eq!(sizes, vec![2; 5]);
    }

    #[test]
    fn kfold_stratified() {
        let labels = [1, 1, 1, 1, 1, 0, 0, 0, 0, 0];
        let a = kfold_split(&labels, 5, 9).unwrap();
        for fold in 0..5 {
            let pos = (0..10).filter(|&i| a[i] == fold && labels[i] == 1).count();
            assert_eq!(pos, 1, "fold {fold}");
        }
    }

    #[test]
    fn kfold_deterministic() {
        let labels = [1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 0, 0];
        assert_eq!(
            kfold_split(&labels, 4, 42).unwrap(),
            kfold_split(&labels, 4, 42).unwrap()
        );
    }

    #[test]
    fn kfold_rejects_bad_params() {
        let labels = [1, 0, 1];
        assert!(kfold_split(&labels, 1, 0).is_err());
        assert!(kfold_split(&labels, 4, 0).is_err());
    }

    #[test]
    fn kfold_uneven_sizes_differ_by_at_most_one() {
        let labels: Vec<u8> = (0..23).map(|i| u8::from(i % 3 == 0)).collect();
        let a = kfold_split(&labels, 5, 7).unwrap();
        let mut sizes = vec![0usize; 5];
        for &f in &a {
            sizes[f] += 1;
        }
        let (&min, &max) = (
            sizes.iter().min().unwrap(),
            sizes.iter().max().unwrap(),
        );
        assert!(max - min <= 1, "sizes {sizes:?}");
    }

    #[test]
    fn standardizer_zero_variance_column() {
        let x = vec![vec![1.0, 5.0], vec![3.0, 5.0]];
        let s = Standardizer::fit(&x);
        let z = s.transform_row(&[2.0, 5.0]);
        assert_eq!(z[1], 0.0);
        assert_eq!(z[0], 0.0); // mean 2, std 1
    }

    #[test]
    fn binary_label_checks() {
        assert!(check_binary_labels(&[0, 1, 0]).is_ok());
        assert!(check_binary_labels(&[0, 0, 0]).is_err());
        assert!(check_binary_labels(&[1, 1]).is_err());
        assert!(check_binary_labels(&[]).is_err());
        assert!(check_binary_labels(&[0, 2]).is_err());
    }

    #[test]
    fn tp_fp_strict_threshold() {
        let scores = [0.9, 0.6, 0.4, 0.7, 0.1, 0.2];
        let labels = [1, 1, 1, 1, 0, 0];
        let (tp, fp) = tp_fp(&scores, &labels, 0.5);
        assert_eq!(tp, 0.75);
        assert_eq!(fp, 0.0);
        // exactly at threshold counts negative
        let (tp, _) = tp_fp(&[0.5], &[1], 0.5);
        assert_eq!(tp, 0.0);
    }
}

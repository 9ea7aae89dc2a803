//! Centroid-to-boundary distance signature and its peak count.

use super::boundary::BoundarySequence;
use crate::regions::RegionSet;
use crate::{Error, Result};

pub const SIGNATURE_BINS: usize = 360;

/// Smoothing window for peak detection (circular moving average).
const SMOOTH_WINDOW: usize = 5;
/// A peak must rise at least this fraction of the mean radius above its
/// surroundings to count.
const PROMINENCE_FRACTION: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct Signature {
    /// r(theta) at one-degree steps, theta measured counterclockwise from
    /// the +x axis in the y-up frame.
    pub samples: Vec<f64>,
    pub mean_radius: f64,
    pub peak_count: usize,
}

/// Radial signature of a region boundary around the region centroid.
///
/// Boundary points are binned by angle to the nearest degree and averaged
/// within a bin; empty bins are filled by circular linear interpolation.
pub fn boundary_signature(rs: &RegionSet, region_id: u32, b: &BoundarySequence) -> Result<Signature> {
    let region = rs.region(region_id).ok_or(Error::NoSkinRegion)?;
    let (cx, cy_raster) = region.centroid;
    let cy = (rs.height - 1) as f64 - cy_raster;
    Ok(signature_around((cx, cy), b))
}

/// Signature around an explicit center (y-up coordinates).
pub fn signature_around(center: (f64, f64), b: &BoundarySequence) -> Signature {
    let mut sums = vec![0.0f64; SIGNATURE_BINS];
    let mut counts = vec![0u32; SIGNATURE_BINS];
    for &(x, y) in &b.points {
        let (dx, dy) = (x - center.0, y - center.1);
        let r = (dx * dx + dy * dy).sqrt();
        let mut theta = dy.atan2(dx).to_degrees();
        if theta < 0.0 {
            theta += 360.0;
        }
        let bin = (theta.round() as usize) % SIGNATURE_BINS;
        sums[bin] += r;
        counts[bin] += 1;
    }
    let mut samples = vec![f64::NAN; SIGNATURE_BINS];
    for i in 0..SIGNATURE_BINS {
        if counts[i] > 0 {
            samples[i] = sums[i] / counts[i] as f64;
        }
    }
    fill_empty_bins(&mut samples);
    let mean_radius = samples.iter().sum::<f64>() / SIGNATURE_BINS as f64;
    let mut sig = Signature {
        samples,
        mean_radius,
        peak_count: 0,
    };
    sig.peak_count = count_signature_peaks(&sig);
    sig
}

/// Circular linear interpolation across NaN runs.
fn fill_empty_bins(samples: &mut [f64]) {
    let n = samples.len();
    let filled: Vec<usize> = (0..n).filter(|&i| !samples[i].is_nan()).collect();
    if filled.is_empty() {
        samples.iter_mut().for_each(|s| *s = 0.0);
        return;
    }
    if filled.len() == 1 {
        let v = samples[filled[0]];
        samples.iter_mut().for_each(|s| *s = v);
        return;
    }
    for w in 0..filled.len() {
        let a = filled[w];
        let b = filled[(w + 1) % filled.len()];
        let gap = (b + n - a - 1) % n;
        for step in 1..=gap {
            let idx = (a + step) % n;
            let t = step as f64 / (gap + 1) as f64;
            samples[idx] = samples[a] * (1.0 - t) + samples[b] * t;
        }
    }
}

/// Count circular local maxima of the smoothed signature whose topographic
/// prominence is at least 5% of the mean radius. Plateaus count once.
pub fn count_signature_peaks(sig: &Signature) -> usize {
    let smoothed = circular_moving_average(&sig.samples, SMOOTH_WINDOW);
    let threshold = PROMINENCE_FRACTION * sig.mean_radius;
    count_peaks_circular(&smoothed, threshold)
}

fn circular_moving_average(samples: &[f64], window: usize) -> Vec<f64> {
    let n = samples.len();
    let half = window / 2;
    (0..n)
        .map(|i| {
            let mut acc = 0.0;
            for d in 0..window {
                let idx = (i + n + d - half) % n;
                acc += samples[idx];
            }
            acc / window as f64
        })
        .collect()
}

fn count_peaks_circular(values: &[f64], min_prominence: f64) -> usize {
    let n = values.len();
    // collapse plateaus into runs
    let mut runs: Vec<(f64, usize)> = Vec::new(); // (value, start index)
    for i in 0..n {
        match runs.last() {
            Some(&(v, _)) if v == values[i] => {}
            _ => runs.push((values[i], i)),
        }
    }
    // merge wraparound run
    if runs.len() > 1 && runs[0].0 == runs.last().unwrap().0 {
        runs.pop();
    }
    let m = runs.len();
    if m < 2 {
        return 0; // constant signal
    }
    let mut count = 0usize;
    for i in 0..m {
        let prev = runs[(i + m - 1) % m].0;
        let next = runs[(i + 1) % m].0;
        let v = runs[i].0;
        if v > prev && v > next {
            let prominence = peak_prominence(&runs, i);
            if prominence >= min_prominence {
                count += 1;
            }
        }
    }
    count
}

/// Topographic prominence over the circular run sequence: descend on both
/// sides until a strictly higher value appears (or the walk wraps), and take
/// the peak height minus the higher of the two valley floors.
fn peak_prominence(runs: &[(f64, usize)], peak: usize) -> f64 {
    let m = runs.len();
    let v = runs[peak].0;
    let walk = |dir: isize| -> f64 {
        let mut lowest = v;
        let mut idx = peak as isize;
        for _ in 0..m {
            idx = (idx + dir).rem_euclid(m as isize);
            let val = runs[idx as usize].0;
            if val > v {
                break;
            }
            lowest = lowest.min(val);
        }
        lowest
    };
    v - walk(-1).max(walk(1))
}

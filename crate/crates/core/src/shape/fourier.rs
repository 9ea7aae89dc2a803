//! Fourier descriptors of a closed boundary.
//!
//! The boundary is treated as the complex sequence `s(k) = x(k) + j y(k)`.
//! Forward coefficients follow the unnormalized DFT convention
//! `a(u) = sum_k s(k) exp(-j 2 pi u k / K)`; the inverse carries the `1/K`
//! factor. The feature set keeps the magnitudes at indices {0, 2..=10}
//! divided by `|a(1)|`, which makes it scale, rotation, and starting-point
//! invariant (and, for indices >= 2, translation invariant).

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::boundary::BoundarySequence;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DescriptorSet {
    /// a(u) for u = 0..K-1.
    pub raw: Vec<Complex64>,
}

impl DescriptorSet {
    pub fn k(&self) -> usize {
        self.raw.len()
    }
}

/// Forward DFT of the boundary (Eq. `a(u) = sum s(k) e^{-j2pi uk/K}`).
pub fn fourier_descriptors(b: &BoundarySequence) -> DescriptorSet {
    let mut buf: Vec<Complex64> = b
        .points
        .iter()
        .map(|&(x, y)| Complex64::new(x, y))
        .collect();
    FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    DescriptorSet { raw: buf }
}

/// Scale-normalized descriptor magnitudes: `(|a(0)|, |a(2)|, ..., |a(10)|) / |a(1)|`.
///
/// Indices beyond K-1 do not exist in a K-point transform and contribute 0.
/// A vanishing first harmonic (contour collapsed to a point) is reported as
/// [`Error::DegenerateContour`]; callers substitute a zero vector and flag
/// the image.
pub fn normalize_descriptors(d: &DescriptorSet) -> Result<[f64; 10]> {
    let k = d.k();
    debug_assert!(k >= 4);
    let a1 = d.raw[1].norm();
    if a1 <= f64::EPSILON * d.raw[0].norm().max(1.0) {
        return Err(Error::DegenerateContour);
    }
    let mut out = [0.0f64; 10];
    out[0] = d.raw[0].norm() / a1;
    for (slot, u) in (2..=10).enumerate() {
        if u < k {
            out[slot + 1] = d.raw[u].norm() / a1;
        }
    }
    Ok(out)
}

/// Inverse DFT keeping the `2m - 1` lowest frequencies
/// (u in {0..m-1} and {K-m+1..K-1}), zeroing the rest.
///
/// `m = K` restores the boundary; `m = 1` collapses every point onto the
/// centroid `a(0)/K`.
pub fn reconstruct_boundary(d: &DescriptorSet, m: usize) -> Vec<(f64, f64)> {
    let k = d.k();
    assert!(m >= 1 && m <= k, "m must be in 1..=K");
    let mut buf: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); k];
    for u in 0..k {
        // keep u in {0..m-1} or {k-m+1..k-1}
        if u < m || u + m > k {
            buf[u] = d.raw[u];
        }
    }
    FftPlanner::new().plan_fft_inverse(k).process(&mut buf);
    buf.iter().map(|c| (c.re / k as f64, c.im / k as f64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn square() -> BoundarySequence {
        BoundarySequence::from_points(vec![(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)])
            .unwrap()
    }

    /// Definition-level O(K^2) DFT, the oracle route.
    pub fn dft_by_definition(points: &[(f64, f64)]) -> Vec<Complex64> {
        let k = points.len();
        (0..k)
            .map(|u| {
                (0..k)
                    .map(|i| {
                        let s = Complex64::new(points[i].0, points[i].1);
                        let ang = -2.0 * std::f64::consts::PI * (u * i) as f64 / k as f64;
                        s * Complex64::new(ang.cos(), ang.sin())
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn square_coefficients_by_hand() {
        let d = fourier_descriptors(&square());
        assert_abs_diff_eq!(d.raw[0].norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d.raw[1].norm(), 4.0 * 2f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(d.raw[2].norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d.raw[3].norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn matches_definition_dft() {
        let pts: Vec<(f64, f64)> = (0..97)
            .map(|i| {
                let t = i as f64 / 97.0 * std::f64::consts::TAU;
                (30.0 * t.cos() + 3.0 * (5.0 * t).cos(), 20.0 * t.sin())
            })
            .collect();
        let b = BoundarySequence::from_points(pts).unwrap();
        let d = fourier_descriptors(&b);
        let oracle = dft_by_definition(&b.points);
        let scale: f64 = oracle.iter().map(|c| c.norm()).fold(0.0, f64::max);
        for (a, o) in d.raw.iter().zip(&oracle) {
            assert!((a - o).norm() <= 1e-9 * scale);
        }
    }

    #[test]
    fn translation_changes_only_dc() {
        let b = square();
        let shifted = BoundarySequence::from_points(
            b.points.iter().map(|&(x, y)| (x + 5.0, y - 2.0)).collect(),
        )
        .unwrap();
        let d0 = fourier_descriptors(&b);
        let d1 = fourier_descriptors(&shifted);
        let k = b.len() as f64;
        let expected_dc = d0.raw[0] + Complex64::new(5.0 * k, -2.0 * k);
        assert_abs_diff_eq!((d1.raw[0] - expected_dc).norm(), 0.0, epsilon = 1e-9);
        for u in 1..b.len() {
            assert_abs_diff_eq!((d1.raw[u] - d0.raw[u]).norm(), 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn normalized_square_is_all_zero() {
        let n = normalize_descriptors(&fourier_descriptors(&square())).unwrap();
        for v in n {
            assert_abs_diff_eq!(v, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn normalized_invariant_to_scale_rotation_start() {
        let pts: Vec<(f64, f64)> = (0..64)
            .map(|i| {
                let t = i as f64 / 64.0 * std::f64::consts::TAU;
                let r = 10.0 + 2.0 * (3.0 * t).cos();
                (r * t.cos(), r * t.sin())
            })
            .collect();
        let base = BoundarySequence::from_points(pts.clone()).unwrap();
        let n0 = normalize_descriptors(&fourier_descriptors(&base)).unwrap();

        let scaled = BoundarySequence::from_points(
            pts.iter().map(|&(x, y)| (3.0 * x, 3.0 * y)).collect(),
        )
        .unwrap();
        let n1 = normalize_descriptors(&fourier_descriptors(&scaled)).unwrap();

        let (c, s) = (0.5f64.cos(), 0.5f64.sin());
        let rotated = BoundarySequence::from_points(
            pts.iter().map(|&(x, y)| (c * x - s * y, s * x + c * y)).collect(),
        )
        .unwrap();
        let n2 = normalize_descriptors(&fourier_descriptors(&rotated)).unwrap();

        let mut shifted_pts = pts.clone();
        shifted_pts.rotate_left(17);
        let shifted = BoundarySequence::from_points(shifted_pts).unwrap();
        let n3 = normalize_descriptors(&fourier_descriptors(&shifted)).unwrap();

        for i in 0..10 {
            assert_abs_diff_eq!(n0[i], n1[i], epsilon = 1e-9);
            assert_abs_diff_eq!(n0[i], n2[i], epsilon = 1e-9);
            assert_abs_diff_eq!(n0[i], n3[i], epsilon = 1e-9);
        }
    }

    #[test]
    fn degenerate_contour_rejected() {
        // all points equal: a(1) = 0; bypass from_points validation on purpose
        let b = BoundarySequence {
            points: vec![(2.0, 2.0); 8],
        };
        let d = fourier_descriptors(&b);
        assert!(matches!(
            normalize_descriptors(&d),
            Err(Error::DegenerateContour)
        ));
    }

    #[test]
    fn full_reconstruction_restores_boundary() {
        let pts: Vec<(f64, f64)> = (0..50)
            .map(|i| {
                let t = i as f64 / 50.0 * std::f64::consts::TAU;
                (12.0 * t.cos(), 7.0 * t.sin())
            })
            .collect();
        let b = BoundarySequence::from_points(pts).unwrap();
        let d = fourier_descriptors(&b);
        let rec = reconstruct_boundary(&d, b.len());
        for (p, q) in b.points.iter().zip(&rec) {
            assert_abs_diff_eq!(p.0, q.0, epsilon = 1e-9);
            assert_abs_diff_eq!(p.1, q.1, epsilon = 1e-9);
        }
    }

    #[test]
    fn dc_only_reconstruction_is_centroid() {
        let b = square();
        let shifted = BoundarySequence::from_points(
            b.points.iter().map(|&(x, y)| (x + 4.0, y + 9.0)).collect(),
        )
        .unwrap();
        let d = fourier_descriptors(&shifted);
        let rec = reconstruct_boundary(&d, 1);
        for (x, y) in rec {
            assert_abs_diff_eq!(x, 4.0, epsilon = 1e-9);
            assert_abs_diff_eq!(y, 9.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn parseval_identity() {
        let pts: Vec<(f64, f64)> = (0..81)
            .map(|i| {
                let t = i as f64 / 81.0 * std::f64::consts::TAU;
                let r = 20.0 + 4.0 * (4.0 * t).sin();
                (r * t.cos() + 3.0, r * t.sin() - 2.0)
            })
            .collect();
        let b = BoundarySequence::from_points(pts).unwrap();
        let d = fourier_descriptors(&b);
        let time: f64 = b.points.iter().map(|&(x, y)| x * x + y * y).sum();
        let freq: f64 = d.raw.iter().map(|c| c.norm_sqr()).sum::<f64>() / b.len() as f64;
        assert!((time - freq).abs() <= 1e-6 * time.max(1.0));
    }
}

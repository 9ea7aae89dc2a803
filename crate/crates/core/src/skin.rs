//! Per-pixel skin probability from a pair of quantized RGB histograms.
//!
//! Two histograms (skin / non-skin) over a `bins^3` color cube act as
//! class-conditional likelihoods in a Bayes ratio test. Laplace add-1
//! smoothing keeps unseen cells away from zero, so posteriors always lie
//! strictly inside (0, 1).

use crate::raster::RasterImage;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SkinHistogramModel {
    bins: u32,
    skin_counts: Vec<u32>,
    nonskin_counts: Vec<u32>,
    skin_total: u64,
    nonskin_total: u64,
}

/// Binary skin map plus the per-pixel posterior it was thresholded from.
#[derive(Debug, Clone, PartialEq)]
pub struct SkinMask {
    pub width: u32,
    pub height: u32,
    /// 1 = skin.
    pub bits: Vec<u8>,
    /// Posterior P(skin | rgb) in (0, 1).
    pub prob: Vec<f64>,
}

impl SkinMask {
    #[inline]
    pub fn bit(&self, x: u32, y: u32) -> u8 {
        self.bits[(y * self.width + x) as usize]
    }

    pub fn skin_pixel_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }
}

impl SkinHistogramModel {
    pub fn bins(&self) -> u32 {
        self.bins
    }

    pub fn skin_total(&self) -> u64 {
        self.skin_total
    }

    pub fn nonskin_total(&self) -> u64 {
        self.nonskin_total
    }

    pub fn skin_counts(&self) -> &[u32] {
        &self.skin_counts
    }

    pub fn nonskin_counts(&self) -> &[u32] {
        &self.nonskin_counts
    }

    /// Rebuild from persisted parts, re-deriving the totals.
    pub fn from_parts(bins: u32, skin_counts: Vec<u32>, nonskin_counts: Vec<u32>) -> Result<Self> {
        if !matches!(bins, 16 | 32 | 64) {
            return Err(Error::InvalidBins(bins));
        }
        let cells = (bins * bins * bins) as usize;
        if skin_counts.len() != cells || nonskin_counts.len() != cells {
            return Err(Error::ModelFormat(format!(
                "histogram cell count mismatch: want {cells}"
            )));
        }
        let skin_total = skin_counts.iter().map(|&c| c as u64).sum();
        let nonskin_total = nonskin_counts.iter().map(|&c| c as u64).sum();
        Ok(Self {
            bins,
            skin_counts,
            nonskin_counts,
            skin_total,
            nonskin_total,
        })
    }

    #[inline]
    pub fn cell_index(&self, rgb: [u8; 3]) -> usize {
        let b = self.bins as usize;
        let q = |c: u8| (c as usize * b) / 256;
        (q(rgb[0]) * b + q(rgb[1])) * b + q(rgb[2])
    }

    /// Posterior P(skin | rgb) with add-1 smoothing on both likelihoods.
    pub fn posterior(&self, rgb: [u8; 3]) -> f64 {
        let cells = self.skin_counts.len() as f64;
        let idx = self.cell_index(rgb);
        let ls = (self.skin_counts[idx] as f64 + 1.0) / (self.skin_total as f64 + cells);
        let ln = (self.nonskin_counts[idx] as f64 + 1.0) / (self.nonskin_total as f64 + cells);
        ls / (ls + ln)
    }
}

/// Populate skin and non-skin histograms from labeled pixel streams.
pub fn train_skin_histogram<S, N>(skin_pixels: S, nonskin_pixels: N, bins: u32) -> Result<SkinHistogramModel>
where
    S: IntoIterator<Item = [u8; 3]>,
    N: IntoIterator<Item = [u8; 3]>,
{
    if !matches!(bins, 16 | 32 | 64) {
        return Err(Error::InvalidBins(bins));
    }
    let cells = (bins * bins * bins) as usize;
    let mut model = SkinHistogramModel {
        bins,
        skin_counts: vec![0; cells],
        nonskin_counts: vec![0; cells],
        skin_total: 0,
        nonskin_total: 0,
    };
    for rgb in skin_pixels {
        let idx = model.cell_index(rgb);
        model.skin_counts[idx] += 1;
        model.skin_total += 1;
    }
    for rgb in nonskin_pixels {
        let idx = model.cell_index(rgb);
        model.nonskin_counts[idx] += 1;
        model.nonskin_total += 1;
    }
    if model.skin_total == 0 || model.nonskin_total == 0 {
        return Err(Error::EmptyPixelStream);
    }
    Ok(model)
}

/// Per-pixel posterior grid for a whole image.
pub fn skin_probability_map(img: &RasterImage, model: &SkinHistogramModel) -> Result<Vec<f64>> {
    if model.skin_total == 0 || model.nonskin_total == 0 {
        return Err(Error::UntrainedSkinModel);
    }
    Ok(img.pixels.iter().map(|&p| model.posterior(p)).collect())
}

/// Binarize a probability grid at `theta` (inclusive).
pub fn threshold_mask(prob: &[f64], width: u32, height: u32, theta: f64) -> SkinMask {
    assert_eq!(prob.len(), (width * height) as usize);
    let bits = prob.iter().map(|&p| u8::from(p >= theta)).collect();
    SkinMask {
        width,
        height,
        bits,
        prob: prob.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_quantization() {
        // 224*32/256 = 28, 160*32/256 = 20, 128*32/256 = 16
        let model =
            train_skin_histogram([[224, 160, 128]], [[32, 64, 32]], 32).unwrap();
        let skin_idx = (28 * 32 + 20) * 32 + 16;
        let nonskin_idx = (4 * 32 + 8) * 32 + 4;
        assert_eq!(model.skin_counts[skin_idx], 1);
        assert_eq!(model.skin_total, 1);
        assert_eq!(model.nonskin_counts[nonskin_idx], 1);
        assert_eq!(model.nonskin_total, 1);
    }

    #[test]
    fn identical_streams_give_half() {
        let pixels = [[10u8, 20, 30], [200, 100, 50], [10, 20, 30]];
        let model = train_skin_histogram(pixels, pixels, 32).unwrap();
        for p in pixels {
            assert!((model.posterior(p) - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_nonskin_stream_rejected() {
        let err = train_skin_histogram([[1, 2, 3]], [], 32).unwrap_err();
        assert!(matches!(err, Error::EmptyPixelStream));
    }

    #[test]
    fn invalid_bins_rejected() {
        let err = train_skin_histogram([[1, 2, 3]], [[4, 5, 6]], 20).unwrap_err();
        assert!(matches!(err, Error::InvalidBins(20)));
    }

    #[test]
    fn posterior_with_smoothing() {
        // Cell with skin count 9, nonskin count 0, equal totals:
        // (9+1)/(T+N) vs (0+1)/(T+N) -> 10/11.
        let skin: Vec<[u8; 3]> = vec![[224, 160, 128]; 9];
        let nonskin: Vec<[u8; 3]> = vec![[32, 64, 32]; 9];
        let model = train_skin_histogram(skin, nonskin, 32).unwrap();
        let p = model.posterior([224, 160, 128]);
        assert!((p - 10.0 / 11.0).abs() < 1e-12);
    }

    #[test]
    fn unseen_cell_is_half_for_equal_totals() {
        let model = train_skin_histogram([[255, 0, 0]], [[0, 255, 0]], 32).unwrap();
        assert!((model.posterior([0, 0, 255]) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn posterior_strictly_inside_unit_interval() {
        let model =
            train_skin_histogram(vec![[224, 160, 128]; 1000], vec![[32, 64, 32]; 3], 32).unwrap();
        for p in [[224, 160, 128], [32, 64, 32], [0, 0, 0], [255, 255, 255]] {
            let q = model.posterior(p);
            assert!(q > 0.0 && q < 1.0, "posterior {q} out of (0,1)");
        }
    }

    #[test]
    fn threshold_rules() {
        let prob = [0.4, 0.5, 0.6, 0.9];
        let mask = threshold_mask(&prob, 4, 1, 0.5);
        assert_eq!(mask.bits, vec![0, 1, 1, 1]);
        let all = threshold_mask(&prob, 4, 1, 0.0);
        assert_eq!(all.bits, vec![1, 1, 1, 1]);
    }

    #[test]
    fn probability_map_matches_posterior() {
        let model = train_skin_histogram([[224, 160, 128]], [[32, 64, 32]], 32).unwrap();
        let mut img = RasterImage::filled(8, 8, [32, 64, 32]);
        img.set(2, 2, [224, 160, 128]);
        let prob = skin_probability_map(&img, &model).unwrap();
        assert!((prob[(2 * 8 + 2) as usize] - model.posterior([224, 160, 128])).abs() < 1e-15);
        assert!((prob[0] - model.posterior([32, 64, 32])).abs() < 1e-15);
    }
}

//! Image decoding, down-sampling, and whole-image color statistics.

use std::path::Path;

use crate::{Error, Result};

/// Decoded 8-bit RGB image, row-major.
///
/// Invariants: `width >= 8`, `height >= 8` for decoded images, and
/// `pixels.len() == width * height`. Images produced by [`downsample`] may
/// have a shorter side below 8 for extreme aspect ratios.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterImage {
    pub width: u32,
    pub height: u32,
    pub pixels: Vec<[u8; 3]>,
}

impl RasterImage {
    pub fn new(width: u32, height: u32, pixels: Vec<[u8; 3]>) -> Self {
        assert_eq!(pixels.len(), (width as usize) * (height as usize));
        Self {
            width,
            height,
            pixels,
        }
    }

    pub fn filled(width: u32, height: u32, rgb: [u8; 3]) -> Self {
        Self::new(width, height, vec![rgb; (width * height) as usize])
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> [u8; 3] {
        self.pixels[(y * self.width + x) as usize]
    }

    #[inline]
    pub fn set(&mut self, x: u32, y: u32, rgb: [u8; 3]) {
        self.pixels[(y * self.width + x) as usize] = rgb;
    }

    pub fn diagonal(&self) -> f64 {
        ((self.width as f64).powi(2) + (self.height as f64).powi(2)).sqrt()
    }

    /// Rec. 601 luma, used by the gradient features.
    pub fn grayscale(&self) -> Vec<f64> {
        self.pixels
            .iter()
            .map(|p| 0.299 * p[0] as f64 + 0.587 * p[1] as f64 + 0.114 * p[2] as f64)
            .collect()
    }
}

/// Decode a PNG, JPEG, or BMP file into 8-bit RGB.
///
/// Alpha is discarded and grayscale is replicated across the three channels.
/// Images smaller than 8x8 are rejected.
pub fn load_image<P: AsRef<Path>>(path: P) -> Result<RasterImage> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    decode_image(&bytes)
}

/// Decode from an in-memory PNG/JPEG/BMP byte buffer.
pub fn decode_image(bytes: &[u8]) -> Result<RasterImage> {
    let format = image::guess_format(bytes).map_err(|e| Error::Decode(e.to_string()))?;
    match format {
        image::ImageFormat::Png | image::ImageFormat::Jpeg | image::ImageFormat::Bmp => {}
        other => return Err(Error::Decode(format!("{other:?} not supported"))),
    }
    let img = image::load_from_memory_with_format(bytes, format)
        .map_err(|e| Error::Decode(e.to_string()))?;
    let rgb = img.to_rgb8();
    let (width, height) = (rgb.width(), rgb.height());
    if width < 8 || height < 8 {
        return Err(Error::ImageTooSmall { width, height });
    }
    let pixels = rgb.pixels().map(|p| [p[0], p[1], p[2]]).collect();
    Ok(RasterImage {
        width,
        height,
        pixels,
    })
}

/// Round-half-up to the nearest integer.
pub(crate) fn round_half_up(x: f64) -> i64 {
    (x + 0.5).floor() as i64
}

/// Scale so the longer side equals `max_side` (bilinear), preserving aspect
/// ratio with round-half-up on the short side. Images already within bounds
/// are returned unchanged.
pub fn downsample(img: &RasterImage, max_side: u32) -> RasterImage {
    assert!(max_side >= 8, "max_side must be >= 8");
    let long = img.width.max(img.height);
    if long <= max_side {
        return img.clone();
    }
    let scale = max_side as f64 / long as f64;
    let (nw, nh) = if img.width >= img.height {
        let nh = round_half_up(img.height as f64 * scale).max(1) as u32;
        (max_side, nh)
    } else {
        let nw = round_half_up(img.width as f64 * scale).max(1) as u32;
        (nw, max_side)
    };
    let buf = image::RgbImage::from_fn(img.width, img.height, |x, y| {
        image::Rgb(img.get(x, y))
    });
    let resized = image::imageops::resize(&buf, nw, nh, image::imageops::FilterType::Triangle);
    let pixels = resized.pixels().map(|p| [p[0], p[1], p[2]]).collect();
    RasterImage {
        width: nw,
        height: nh,
        pixels,
    }
}

/// Number of distinct colors after quantizing each channel to its top 4 bits
/// (a 4096-cell color cube).
pub fn count_colors(img: &RasterImage) -> usize {
    let mut seen = vec![false; 4096];
    let mut count = 0usize;
    for p in &img.pixels {
        let idx = ((p[0] >> 4) as usize) << 8 | ((p[1] >> 4) as usize) << 4 | (p[2] >> 4) as usize;
        if !seen[idx] {
            seen[idx] = true;
            count += 1;
        }
    }
    count
}

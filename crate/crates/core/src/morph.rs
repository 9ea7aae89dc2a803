//! Binary morphology with a disk structuring element sized from the image.
//!
//! Opening and closing are built on exact squared Euclidean distance
//! transforms (Felzenszwalb-Huttenlocher two-pass), which agree exactly with
//! direct min/max over the rasterized disk `{(dx,dy): dx^2+dy^2 <= r^2}`.
//! Out-of-bounds neighborhoods count as background for erosion and dilation
//! alike.

use crate::raster::round_half_up;
use crate::skin::SkinMask;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorphologyConfig {
    pub c_open: f64,
    pub c_close: f64,
}

impl Default for MorphologyConfig {
    fn default() -> Self {
        Self {
            c_open: 75.0,
            c_close: 100.0,
        }
    }
}

/// Automatic disk radius: round((width + height) / c), clamped below at 1.
pub fn disk_radius(width: u32, height: u32, c: f64) -> u32 {
    assert!(c > 0.0, "c must be positive");
    round_half_up((width + height) as f64 / c).max(1) as u32
}

const INF: f64 = f64::INFINITY;

/// 1-D squared distance transform (lower envelope of parabolas).
/// Infinite entries never contribute a parabola; an all-infinite row stays
/// infinite.
fn dt1d(f: &[f64], d: &mut [f64], v: &mut [usize], z: &mut [f64]) {
    let n = f.len();
    let Some(first) = (0..n).find(|&i| f[i] != INF) else {
        d[..n].fill(INF);
        return;
    };
    let mut k = 0usize;
    v[0] = first;
    z[0] = -INF;
    z[1] = INF;
    for q in first + 1..n {
        if f[q] == INF {
            continue;
        }
        loop {
            let p = v[k];
            let s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * (q - p) as f64);
            if s <= z[k] {
                // s is finite and z[0] = -inf, so k never underflows
                k -= 1;
            } else {
                k += 1;
                v[k] = q;
                z[k] = s;
                z[k + 1] = INF;
                break;
            }
        }
    }
    let mut k = 0usize;
    for q in 0..n {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let p = v[k];
        d[q] = (q as f64 - p as f64) * (q as f64 - p as f64) + f[p];
    }
}

/// Squared distance from every pixel to the nearest feature pixel
/// (`feature(i) == true`). `INF` where no feature exists.
fn distance_transform(width: usize, height: usize, feature: impl Fn(usize) -> bool) -> Vec<f64> {
    let mut grid = vec![INF; width * height];
    for (i, cell) in grid.iter_mut().enumerate() {
        if feature(i) {
            *cell = 0.0;
        }
    }
    let n = width.max(height);
    let mut f = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut v = vec![0usize; n];
    let mut z = vec![0.0; n + 1];
    // columns
    for x in 0..width {
        for y in 0..height {
            f[y] = grid[y * width + x];
        }
        dt1d(&f[..height], &mut d[..height], &mut v, &mut z);
        for y in 0..height {
            grid[y * width + x] = d[y];
        }
    }
    // rows
    for y in 0..height {
        f[..width].copy_from_slice(&grid[y * width..(y + 1) * width]);
        dt1d(&f[..width], &mut d[..width], &mut v, &mut z);
        grid[y * width..(y + 1) * width].copy_from_slice(&d[..width]);
    }
    grid
}

/// Squared distance to the nearest background pixel, where everything outside
/// the image border also counts as background.
fn background_distance(mask: &SkinMask) -> Vec<f64> {
    let (w, h) = (mask.width as usize, mask.height as usize);
    let mut dist = distance_transform(w, h, |i| mask.bits[i] == 0);
    for y in 0..h {
        for x in 0..w {
            let border = (x + 1).min(y + 1).min(w - x).min(h - y) as f64;
            let i = y * w + x;
            dist[i] = dist[i].min(border * border);
        }
    }
    dist
}

fn erode(mask: &SkinMask, radius: u32) -> SkinMask {
    let r2 = (radius * radius) as f64;
    let dist = background_distance(mask);
    let bits = dist.iter().map(|&d| u8::from(d > r2)).collect();
    SkinMask {
        width: mask.width,
        height: mask.height,
        bits,
        prob: mask.prob.clone(),
    }
}

fn dilate(mask: &SkinMask, radius: u32) -> SkinMask {
    let r2 = (radius * radius) as f64;
    let (w, h) = (mask.width as usize, mask.height as usize);
    let dist = distance_transform(w, h, |i| mask.bits[i] == 1);
    let bits = dist.iter().map(|&d| u8::from(d <= r2)).collect();
    SkinMask {
        width: mask.width,
        height: mask.height,
        bits,
        prob: mask.prob.clone(),
    }
}

/// Erosion then dilation: removes specks smaller than the disk.
pub fn morph_open(mask: &SkinMask, radius: u32) -> SkinMask {
    assert!(radius >= 1);
    dilate(&erode(mask, radius), radius)
}

/// Dilation then erosion: fills holes smaller than the disk.
pub fn morph_close(mask: &SkinMask, radius: u32) -> SkinMask {
    assert!(radius >= 1);
    erode(&dilate(mask, radius), radius)
}

/// Open with the `c_open` radius, then close with the `c_close` radius,
/// both computed from the working image size.
pub fn refine(mask: &SkinMask, cfg: &MorphologyConfig, width: u32, height: u32) -> SkinMask {
    let opened = morph_open(mask, disk_radius(width, height, cfg.c_open));
    morph_close(&opened, disk_radius(width, height, cfg.c_close))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{rng_from, uniform};

    fn mask_from_bits(width: u32, height: u32, bits: Vec<u8>) -> SkinMask {
        let prob = bits.iter().map(|&b| if b == 1 { 0.9 } else { 0.1 }).collect();
        SkinMask {
            width,
            height,
            bits,
            prob,
        }
    }

    fn disk_offsets(radius: u32) -> Vec<(i64, i64)> {
        let r = radius as i64;
        let mut out = Vec::new();
        for dy in -r..=r {
            for dx in -r..=r {
                if dx * dx + dy * dy <= r * r {
                    out.push((dx, dy));
                }
            }
        }
        out
    }

    /// Direct structuring-element erosion/dilation, out-of-bounds = 0.
    pub fn brute_erode(mask: &SkinMask, radius: u32) -> Vec<u8> {
        let (w, h) = (mask.width as i64, mask.height as i64);
        let offs = disk_offsets(radius);
        let mut out = vec![0u8; (w * h) as usize];
        for y in 0..h {
            for x in 0..w {
                let all_one = offs.iter().all(|&(dx, dy)| {
                    let (nx, ny) = (x + dx, y + dy);
                    nx >= 0 && ny >= 0 && nx < w && ny < h
                        && mask.bits[(ny * w + nx) as usize] == 1
                });
                out[(y * w + x) as usize] = u8::from(all_one);
            }
        }
        out
    }

    pub fn brute_dilate(mask: &SkinMask, radius: u32) -> Vec<u8> {
        let (w, h) = (mask.width as i64, mask.height as i64);
        let offs = disk_offsets(radius);
        let mut out = vec![0u8; (w * h) as usize];
        for y in 0..h {
            for x in 0..w {
                let any_one = offs.iter().any(|&(dx, dy)| {
                    let (nx, ny) = (x + dx, y + dy);
                    nx >= 0 && ny >= 0 && nx < w && ny < h
                        && mask.bits[(ny * w + nx) as usize] == 1
                });
                out[(y * w + x) as usize] = u8::from(any_one);
            }
        }
        out
    }

    fn random_mask(seed: u64, w: u32, h: u32, density: f64) -> SkinMask {
        let mut rng = rng_from(seed);
        let bits = (0..w * h)
            .map(|_| u8::from(uniform(&mut rng) < density))
            .collect();
        mask_from_bits(w, h, bits)
    }

    #[test]
    fn disk_radius_eq1_values() {
        assert_eq!(disk_radius(300, 450, 75.0), 10);
        assert_eq!(disk_radius(800, 700, 100.0), 15);
        assert_eq!(disk_radius(8, 8, 100.0), 1);
    }

    #[test]
    fn disk_radius_monotonic() {
        let mut last = 0;
        for s in (100..2000).step_by(37) {
            let r = disk_radius(s, s, 75.0);
            assert!(r >= last);
            last = r;
        }
        assert!(disk_radius(400, 400, 75.0) >= disk_radius(400, 400, 100.0));
    }

    #[test]
    fn edt_matches_brute_force_oracle() {
        for seed in 0..30 {
            let mask = random_mask(seed, 21, 17, 0.25 + 0.02 * seed as f64);
            for radius in 1..=3 {
                let e = erode(&mask, radius);
                assert_eq!(e.bits, brute_erode(&mask, radius), "erode seed={seed} r={radius}");
                let d = dilate(&mask, radius);
                assert_eq!(d.bits, brute_dilate(&mask, radius), "dilate seed={seed} r={radius}");
            }
        }
    }

    #[test]
    fn empty_mask_preserved() {
        let mask = mask_from_bits(12, 12, vec![0; 144]);
        assert_eq!(morph_open(&mask, 2).bits, mask.bits);
        assert_eq!(morph_close(&mask, 2).bits, mask.bits);
    }

    #[test]
    fn opening_removes_specks() {
        let mut bits = vec![0u8; 144];
        bits[6 * 12 + 6] = 1;
        let mask = mask_from_bits(12, 12, bits);
        assert!(morph_open(&mask, 2).bits.iter().all(|&b| b == 0));
    }

    #[test]
    fn closing_fills_interior_hole() {
        // 20x20 solid square with one interior hole, embedded with margin.
        let (w, h) = (30u32, 30u32);
        let mut bits = vec![0u8; (w * h) as usize];
        for y in 5..25 {
            for x in 5..25 {
                bits[(y * w + x) as usize] = 1;
            }
        }
        let hole = (15 * w + 15) as usize;
        bits[hole] = 0;
        let mask = mask_from_bits(w, h, bits.clone());
        let closed = morph_close(&mask, 2);
        assert_eq!(closed.bits[hole], 1, "hole must be filled");
        // oracle route: brute dilate then brute erode
        let dil = mask_from_bits(w, h, brute_dilate(&mask, 2));
        let oracle = brute_erode(&dil, 2);
        assert_eq!(closed.bits, oracle);
    }

    #[test]
    fn open_close_idempotent() {
        for seed in 100..110 {
            let mask = random_mask(seed, 24, 18, 0.45);
            for radius in 1..=3 {
                let o1 = morph_open(&mask, radius);
                assert_eq!(morph_open(&o1, radius).bits, o1.bits);
                let c1 = morph_close(&mask, radius);
                assert_eq!(morph_close(&c1, radius).bits, c1.bits);
            }
        }
    }

    #[test]
    fn opening_anti_extensive() {
        for seed in 200..210 {
            let mask = random_mask(seed, 20, 20, 0.5);
            let opened = morph_open(&mask, 2);
            for i in 0..mask.bits.len() {
                assert!(opened.bits[i] <= mask.bits[i]);
            }
        }
    }

    #[test]
    fn closing_extensive_away_from_border() {
        // With out-of-bounds treated as background, closing can trim the
        // border band; extensivity holds for pixels >= radius from the edge.
        let radius = 2u32;
        for seed in 300..310 {
            let mask = random_mask(seed, 20, 20, 0.5);
            let closed = morph_close(&mask, radius);
            let (w, h) = (20usize, 20usize);
            for y in radius as usize..h - radius as usize {
                for x in radius as usize..w - radius as usize {
                    let i = y * w + x;
                    assert!(closed.bits[i] >= mask.bits[i], "seed={seed} ({x},{y})");
                }
            }
        }
    }

    #[test]
    fn refine_composes_open_then_close() {
        let mask = random_mask(42, 40, 30, 0.55);
        let cfg = MorphologyConfig::default();
        let refined = refine(&mask, &cfg, 40, 30);
        let manual = morph_close(
            &morph_open(&mask, disk_radius(40, 30, cfg.c_open)),
            disk_radius(40, 30, cfg.c_close),
        );
        assert_eq!(refined.bits, manual.bits);
    }

    #[test]
    fn prob_passes_through_unchanged() {
        let mask = random_mask(9, 15, 15, 0.4);
        assert_eq!(morph_open(&mask, 2).prob, mask.prob);
        assert_eq!(morph_close(&mask, 2).prob, mask.prob);
    }
}

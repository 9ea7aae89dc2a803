//! 8-connected component labeling with per-region properties.

use crate::skin::SkinMask;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub id: u32,
    pub area: usize,
    /// (min_x, min_y, max_x, max_y), inclusive.
    pub bbox: (u32, u32, u32, u32),
    /// (x, y) in raster coordinates (y grows downward).
    pub centroid: (f64, f64),
    /// Count of region pixels with at least one 4-neighbor outside the region
    /// (out-of-bounds counts as outside).
    pub perimeter: usize,
    pub pixels: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionSet {
    pub width: u32,
    pub height: u32,
    /// 0 = background, otherwise a region id.
    pub labels: Vec<u32>,
    /// Sorted by area descending, ties by ascending id.
    pub regions: Vec<Region>,
}

impl RegionSet {
    #[inline]
    pub fn label(&self, x: u32, y: u32) -> u32 {
        self.labels[(y * self.width + x) as usize]
    }

    pub fn region(&self, id: u32) -> Option<&Region> {
        self.regions.iter().find(|r| r.id == id)
    }

    pub fn total_skin_area(&self) -> usize {
        self.regions.iter().map(|r| r.area).sum()
    }
}

/// Label 8-connected components and compute their properties.
pub fn label_components(mask: &SkinMask) -> RegionSet {
    let (w, h) = (mask.width as i64, mask.height as i64);
    let mut labels = vec![0u32; (w * h) as usize];
    let mut regions: Vec<Region> = Vec::new();
    let mut next_id = 0u32;
    let mut stack: Vec<(i64, i64)> = Vec::new();

    for sy in 0..h {
        for sx in 0..w {
            let si = (sy * w + sx) as usize;
            if mask.bits[si] == 0 || labels[si] != 0 {
                continue;
            }
            next_id += 1;
            let id = next_id;
            let mut pixels = Vec::new();
            labels[si] = id;
            stack.push((sx, sy));
            while let Some((x, y)) = stack.pop() {
                pixels.push((x as u32, y as u32));
                for dy in -1..=1i64 {
                    for dx in -1..=1i64 {
                        if dx == 0 && dy == 0 {
                            continue;
                        }
                        let (nx, ny) = (x + dx, y + dy);
                        if nx < 0 || ny < 0 || nx >= w || ny >= h {
                            continue;
                        }
                        let ni = (ny * w + nx) as usize;
                        if mask.bits[ni] == 1 && labels[ni] == 0 {
                            labels[ni] = id;
                            stack.push((nx, ny));
                        }
                    }
                }
            }
            regions.push(build_region(id, pixels, &labels, w, h));
        }
    }
    regions.sort_by(|a, b| b.area.cmp(&a.area).then(a.id.cmp(&b.id)));
    RegionSet {
        width: mask.width,
        height: mask.height,
        labels,
        regions,
    }
}

fn build_region(id: u32, mut pixels: Vec<(u32, u32)>, labels: &[u32], w: i64, h: i64) -> Region {
    pixels.sort_unstable_by_key(|&(x, y)| (y, x));
    let area = pixels.len();
    let (mut min_x, mut min_y, mut max_x, mut max_y) = (u32::MAX, u32::MAX, 0u32, 0u32);
    let (mut sx, mut sy) = (0f64, 0f64);
    let mut perimeter = 0usize;
    for &(x, y) in &pixels {
        min_x = min_x.min(x);
        min_y = min_y.min(y);
        max_x = max_x.max(x);
        max_y = max_y.max(y);
        sx += x as f64;
        sy += y as f64;
        let on_edge = [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)].iter().any(|&(dx, dy)| {
            let (nx, ny) = (x as i64 + dx, y as i64 + dy);
            nx < 0 || ny < 0 || nx >= w || ny >= h || labels[(ny * w + nx) as usize] != id
        });
        if on_edge {
            perimeter += 1;
        }
    }
    Region {
        id,
        area,
        bbox: (min_x, min_y, max_x, max_y),
        centroid: (sx / area as f64, sy / area as f64),
        perimeter,
        pixels,
    }
}

/// Id of the maximum-area region; ties go to the smallest id.
pub fn largest_component(rs: &RegionSet) -> Result<u32> {
    rs.regions.first().map(|r| r.id).ok_or(Error::NoSkinRegion)
}

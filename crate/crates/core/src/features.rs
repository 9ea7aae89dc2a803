//! The per-image feature vector: 40 scalars assembled from the skin mask,
//! its regions, and the largest region's shape descriptors.

use crate::raster::{count_colors, RasterImage};
use crate::regions::{Region, RegionSet};
use crate::shape::Signature;
use crate::skin::SkinMask;

pub const FEATURE_DIM: usize = 40;

/// Fixed feature order; the CSV header and classifier input both use it.
pub fn feature_names() -> Vec<&'static str> {
    vec![
        "skin_ratio",
        "component_count",
        "fd0",
        "fd2",
        "fd3",
        "fd4",
        "fd5",
        "fd6",
        "fd7",
        "fd8",
        "fd9",
        "fd10",
        "signature_peaks",
        "eccentricity",
        "equiv_diameter",
        "perimeter_area",
        "color_count",
        "hu1",
        "hu2",
        "global_cx",
        "global_cy",
        "local_cx",
        "local_cy",
        "global_major",
        "global_minor",
        "local_major",
        "local_minor",
        "global_axis_ratio",
        "local_axis_ratio",
        "orientation_diff",
        "solidity",
        "extent",
        "bbox_aspect",
        "largest_share",
        "edge_0",
        "edge_45",
        "edge_90",
        "edge_135",
        "edge_225",
        "edge_315",
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub values: Vec<f64>,
}

impl FeatureVector {
    pub fn zeros() -> Self {
        Self {
            values: vec![0.0; FEATURE_DIM],
        }
    }
}

/// Second-central-moment ellipse fit of a pixel set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    pub center: (f64, f64),
    pub major: f64,
    pub minor: f64,
    /// Degrees in (-90, 90]; 0 when degenerate.
    pub orientation: f64,
    pub degenerate: bool,
}

/// Fit an ellipse from the second central moments of a pixel set: axes are
/// `4 sqrt(eigenvalue)` of the coordinate covariance, orientation is the
/// principal eigenvector angle. Collinear or tiny sets come back flagged
/// degenerate with `minor = 0`.
pub fn ellipse_fit<I>(pixels: I) -> Ellipse
where
    I: IntoIterator<Item = (u32, u32)>,
{
    let pts: Vec<(f64, f64)> = pixels
        .into_iter()
        .map(|(x, y)| (x as f64, y as f64))
        .collect();
    let n = pts.len() as f64;
    if pts.len() < 3 {
        let center = if pts.is_empty() {
            (0.0, 0.0)
        } else {
            (
                pts.iter().map(|p| p.0).sum::<f64>() / n,
                pts.iter().map(|p| p.1).sum::<f64>() / n,
            )
        };
        return Ellipse {
            center,
            major: 0.0,
            minor: 0.0,
            orientation: 0.0,
            degenerate: true,
        };
    }
    let cx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let cy = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut mxx, mut myy, mut mxy) = (0.0, 0.0, 0.0);
    for &(x, y) in &pts {
        let (dx, dy) = (x - cx, y - cy);
        mxx += dx * dx;
        myy += dy * dy;
        mxy += dx * dy;
    }
    mxx /= n;
    myy /= n;
    mxy /= n;
    let tr = mxx + myy;
    let det = ((mxx - myy) / 2.0).hypot(mxy);
    let l1 = (tr / 2.0 + det).max(0.0);
    let l2 = (tr / 2.0 - det).max(0.0);
    let major = 4.0 * l1.sqrt();
    let minor = 4.0 * l2.sqrt();
    let degenerate = minor <= 1e-9;
    let orientation = if degenerate && major <= 1e-9 {
        0.0
    } else {
        let mut deg = 0.5 * (2.0 * mxy).atan2(mxx - myy).to_degrees();
        if deg <= -90.0 {
            deg += 180.0;
        } else if deg > 90.0 {
            deg -= 180.0;
        }
        deg
    };
    Ellipse {
        center: (cx, cy),
        major,
        minor,
        orientation,
        degenerate,
    }
}

/// Hu's first two invariant moments of the binary skin mask.
/// Empty masks get the (0, 0) sentinel.
pub fn hu_moments(mask: &SkinMask) -> (f64, f64) {
    let (w, h) = (mask.width as usize, mask.height as usize);
    let mut m00 = 0.0f64;
    let (mut sx, mut sy) = (0.0f64, 0.0f64);
    for y in 0..h {
        for x in 0..w {
            if mask.bits[y * w + x] == 1 {
                m00 += 1.0;
                sx += x as f64;
                sy += y as f64;
            }
        }
    }
    if m00 == 0.0 {
        return (0.0, 0.0);
    }
    let (cx, cy) = (sx / m00, sy / m00);
    let (mut mu20, mut mu02, mut mu11) = (0.0f64, 0.0f64, 0.0f64);
    for y in 0..h {
        for x in 0..w {
            if mask.bits[y * w + x] == 1 {
                let (dx, dy) = (x as f64 - cx, y as f64 - cy);
                mu20 += dx * dx;
                mu02 += dy * dy;
                mu11 += dx * dy;
            }
        }
    }
    let norm = m00 * m00; // mu00^(1 + (p+q)/2) with p+q = 2
    let (n20, n02, n11) = (mu20 / norm, mu02 / norm, mu11 / norm);
    let phi1 = n20 + n02;
    let phi2 = (n20 - n02).powi(2) + 4.0 * n11 * n11;
    (phi1, phi2)
}

/// Directions of the edge histogram, degrees.
pub const EDGE_DIRECTIONS: [f64; 6] = [0.0, 45.0, 90.0, 135.0, 225.0, 315.0];

/// Sobel edge-direction histogram over the pixels of one region.
///
/// Gradients are taken on the Rec. 601 grayscale with clamp-to-edge
/// sampling; pixels above 10% of the region's maximum magnitude vote for
/// the nearest listed direction. The histogram is normalized to sum 1, or
/// all-zero when the region has no gradient at all.
pub fn edge_direction_histogram(img: &RasterImage, rs: &RegionSet, region_id: u32) -> [f64; 6] {
    let Some(region) = rs.region(region_id) else {
        return [0.0; 6];
    };
    let gray = img.grayscale();
    let (w, h) = (img.width as i64, img.height as i64);
    let sample = |x: i64, y: i64| -> f64 {
        let xc = x.clamp(0, w - 1);
        let yc = y.clamp(0, h - 1);
        gray[(yc * w + xc) as usize]
    };
    let mut grads: Vec<(f64, f64)> = Vec::with_capacity(region.pixels.len());
    let mut max_mag = 0.0f64;
    for &(px, py) in &region.pixels {
        let (x, y) = (px as i64, py as i64);
        let gx = sample(x + 1, y - 1) + 2.0 * sample(x + 1, y) + sample(x + 1, y + 1)
            - sample(x - 1, y - 1)
            - 2.0 * sample(x - 1, y)
            - sample(x - 1, y + 1);
        let gy = sample(x - 1, y + 1) + 2.0 * sample(x, y + 1) + sample(x + 1, y + 1)
            - sample(x - 1, y - 1)
            - 2.0 * sample(x, y - 1)
            - sample(x + 1, y - 1);
        let mag = gx.hypot(gy);
        max_mag = max_mag.max(mag);
        grads.push((mag, gy.atan2(gx).to_degrees().rem_euclid(360.0)));
    }
    let mut hist = [0.0f64; 6];
    if max_mag <= 0.0 {
        return hist;
    }
    let gate = 0.1 * max_mag;
    let mut total = 0.0f64;
    for (mag, angle) in grads {
        if mag >= gate {
            let bin = nearest_direction(angle);
            hist[bin] += 1.0;
            total += 1.0;
        }
    }
    if total > 0.0 {
        for v in &mut hist {
            *v /= total;
        }
    }
    hist
}

/// Nearest direction by circular distance; ties go to the earlier entry.
fn nearest_direction(angle: f64) -> usize {
    let mut best = 0usize;
    let mut best_dist = f64::INFINITY;
    for (i, &d) in EDGE_DIRECTIONS.iter().enumerate() {
        let diff = (angle - d).rem_euclid(360.0);
        let dist = diff.min(360.0 - diff);
        if dist < best_dist {
            best_dist = dist;
            best = i;
        }
    }
    best
}

/// Convex hull area in "rasterized" terms: the number of grid pixels whose
/// centers lie inside or on the hull of the region's pixel centers. This
/// keeps solidity in (0, 1] even for thin regions.
fn convex_hull_pixel_area(region: &Region) -> usize {
    let pts: Vec<(i64, i64)> = region
        .pixels
        .iter()
        .map(|&(x, y)| (x as i64, y as i64))
        .collect();
    let hull = convex_hull(&pts);
    if hull.len() < 3 {
        // collinear region: the hull rasterizes back onto the region itself
        return region.area;
    }
    let (min_x, min_y, max_x, max_y) = region.bbox;
    let mut count = 0usize;
    for y in min_y as i64..=max_y as i64 {
        for x in min_x as i64..=max_x as i64 {
            if point_in_convex_hull(&hull, (x, y)) {
                count += 1;
            }
        }
    }
    count
}

/// Andrew's monotone chain, counterclockwise in raster coordinates.
fn convex_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(pts.len() * 2);
    for &p in pts.iter().chain(pts.iter().rev().skip(1)) {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

fn point_in_convex_hull(hull: &[(i64, i64)], p: (i64, i64)) -> bool {
    let n = hull.len();
    for i in 0..n {
        let a = hull[i];
        let b = hull[(i + 1) % n];
        let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
        if cross < 0 {
            return false;
        }
    }
    true
}

/// Shape descriptors of the largest region; may be missing when its contour
/// is degenerate, in which case zeros are substituted.
#[derive(Debug, Clone, Default)]
pub struct ShapeInputs {
    pub descriptors: Option<[f64; 10]>,
    pub signature: Option<Signature>,
}

/// Assemble the 40-entry feature vector. All inputs must come from the same
/// working image; `largest_id` must refer to a region in `rs`.
pub fn extract_features(
    img: &RasterImage,
    mask: &SkinMask,
    rs: &RegionSet,
    largest_id: u32,
    shape: &ShapeInputs,
) -> FeatureVector {
    let region = rs.region(largest_id).expect("largest region must exist");
    let (w, h) = (img.width as f64, img.height as f64);
    let diag = img.diagonal();
    let mut v = Vec::with_capacity(FEATURE_DIM);

    // 1: weighted skin ratio
    let prob_sum: f64 = mask.prob.iter().sum();
    v.push(prob_sum / (w * h));
    // 2: component count, /100 capped at 1
    v.push((rs.regions.len() as f64 / 100.0).min(1.0));
    // 3: ten normalized Fourier descriptors
    let fd = shape.descriptors.unwrap_or([0.0; 10]);
    v.extend_from_slice(&fd);
    // 4: signature peak count, /20 capped at 1
    let peaks = shape.signature.as_ref().map_or(0, |s| s.peak_count);
    v.push((peaks as f64 / 20.0).min(1.0));

    let local = ellipse_fit(region.pixels.iter().copied());
    // 5: eccentricity of the local ellipse
    v.push(if local.major <= 1e-9 {
        0.0
    } else {
        (1.0 - (local.minor / local.major).powi(2)).max(0.0).sqrt()
    });
    // 6: equivalent-circle diameter / image diagonal
    v.push(2.0 * (region.area as f64 / std::f64::consts::PI).sqrt() / diag);
    // 7: perimeter / area
    v.push(region.perimeter as f64 / region.area as f64);
    // 8: color count / 4096
    v.push(count_colors(img) as f64 / 4096.0);
    // 9: Hu invariant moments of the skin mask
    let (phi1, phi2) = hu_moments(mask);
    v.push(phi1);
    v.push(phi2);

    // 10: global and local ellipse centers, normalized by image size
    let all_skin = rs.regions.iter().flat_map(|r| r.pixels.iter().copied());
    let global = ellipse_fit(all_skin);
    v.push(global.center.0 / w);
    v.push(global.center.1 / h);
    v.push(local.center.0 / w);
    v.push(local.center.1 / h);
    // 11: axes / image diagonal
    v.push(global.major / diag);
    v.push(global.minor / diag);
    v.push(local.major / diag);
    v.push(local.minor / diag);
    // 12: minor/major ratios
    let ratio = |e: &Ellipse| if e.major <= 1e-9 { 0.0 } else { e.minor / e.major };
    v.push(ratio(&global));
    v.push(ratio(&local));
    // 13: orientation difference folded into [0, 90], /90
    v.push(if global.degenerate || local.degenerate {
        0.0
    } else {
        let mut d = (global.orientation - local.orientation).abs() % 180.0;
        if d > 90.0 {
            d = 180.0 - d;
        }
        d / 90.0
    });
    // 14: solidity and extent
    let hull_area = convex_hull_pixel_area(region);
    v.push(region.area as f64 / hull_area.max(1) as f64);
    let (bx0, by0, bx1, by1) = region.bbox;
    let bbox_w = (bx1 - bx0 + 1) as f64;
    let bbox_h = (by1 - by0 + 1) as f64;
    v.push(region.area as f64 / (bbox_w * bbox_h));
    // 15: bounding-box aspect, capped at 4 then /4
    v.push((bbox_w / bbox_h).min(4.0) / 4.0);
    // 16: largest region area / total skin area
    v.push(region.area as f64 / rs.total_skin_area() as f64);
    // 17: edge-direction histogram
    v.extend_from_slice(&edge_direction_histogram(img, rs, largest_id));

    debug_assert_eq!(v.len(), FEATURE_DIM);
    debug_assert!(v.iter().all(|x| x.is_finite()));
    FeatureVector { values: v }
}

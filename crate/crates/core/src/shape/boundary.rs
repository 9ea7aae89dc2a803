//! Moore-neighbor boundary tracing.

use crate::regions::RegionSet;
use crate::{Error, Result};

/// Closed outer boundary of a region: ordered pixel centers, counterclockwise
/// in a y-up frame, first point not repeated at the end.
///
/// Boundaries produced by [`trace_boundary`] additionally guarantee that
/// consecutive points are 8-neighbors on the pixel grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySequence {
    pub points: Vec<(f64, f64)>,
}

impl BoundarySequence {
    /// Build from explicit points, checking only closure-independent
    /// invariants: at least 4 points and positive signed area.
    pub fn from_points(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 4 || signed_area(&points) <= 0.0 {
            return Err(Error::DegenerateBoundary);
        }
        Ok(Self { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn signed_area(&self) -> f64 {
        signed_area(&self.points)
    }
}

fn signed_area(points: &[(f64, f64)]) -> f64 {
    let k = points.len();
    let mut acc = 0.0;
    for i in 0..k {
        let (x0, y0) = points[i];
        let (x1, y1) = points[(i + 1) % k];
        acc += x0 * y1 - x1 * y0;
    }
    acc / 2.0
}

/// 8 neighbor offsets in clockwise raster order (y grows downward).
const DIRS: [(i64, i64); 8] = [
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
];

/// Trace the outer boundary of a region with Moore-neighbor following,
/// starting at its uppermost-leftmost pixel and stopping by Jacob's
/// criterion (re-entering the start from the initial direction).
///
/// Output points are y-up pixel centers in counterclockwise order. Regions
/// with area < 4 or that collapse to a zero-area polygon (one-pixel-wide
/// lines) are rejected as degenerate.
pub fn trace_boundary(rs: &RegionSet, region_id: u32) -> Result<BoundarySequence> {
    let region = rs
        .region(region_id)
        .ok_or(Error::NoSkinRegion)?;
    if region.area < 4 {
        return Err(Error::DegenerateBoundary);
    }
    let (w, h) = (rs.width as i64, rs.height as i64);
    let inside = |x: i64, y: i64| {
        x >= 0 && y >= 0 && x < w && y < h && rs.labels[(y * w + x) as usize] == region_id
    };
    // pixels are sorted by (row, col): first is uppermost-leftmost
    let start = region.pixels[0];
    let start = (start.0 as i64, start.1 as i64);

    // entered "from the west"
    let initial_dir = 4usize; // index of (-1, 0) in DIRS
    let mut raster_points: Vec<(i64, i64)> = vec![start];
    let mut cur = start;
    let mut backtrack_dir = initial_dir;
    let max_steps = 8 * region.area + 8;
    let mut closed = false;

    for _ in 0..max_steps {
        // scan clockwise starting just after the backtrack direction
        let mut found = None;
        for step in 1..=8 {
            let dir = (backtrack_dir + step) % 8;
            let (dx, dy) = DIRS[dir];
            let (nx, ny) = (cur.0 + dx, cur.1 + dy);
            if inside(nx, ny) {
                // backtrack for the next pixel: the position we scanned just
                // before finding it, expressed as a direction from (nx, ny)
                let (px, py) = {
                    let prev = (backtrack_dir + step - 1) % 8;
                    (cur.0 + DIRS[prev].0, cur.1 + DIRS[prev].1)
                };
                let rel = (px - nx, py - ny);
                let next_backtrack = DIRS
                    .iter()
                    .position(|&d| d == rel)
                    .expect("backtrack is always an 8-neighbor");
                found = Some(((nx, ny), next_backtrack));
                break;
            }
        }
        let Some((next, next_backtrack)) = found else {
            // isolated pixel; area >= 4 makes this unreachable
            return Err(Error::DegenerateBoundary);
        };
        if next == start && next_backtrack == initial_dir {
            closed = true;
            break;
        }
        raster_points.push(next);
        cur = next;
        backtrack_dir = next_backtrack;
    }
    if !closed {
        return Err(Error::DegenerateBoundary);
    }

    let mut points: Vec<(f64, f64)> = raster_points
        .iter()
        .map(|&(x, y)| (x as f64, (h - 1 - y) as f64))
        .collect();
    // reorient to counterclockwise in the y-up frame, keeping the start point
    let area = signed_area(&points);
    if points.len() < 4 || area == 0.0 {
        return Err(Error::DegenerateBoundary);
    }
    if area < 0.0 {
        points[1..].reverse();
    }
    debug_assert!(signed_area(&points) > 0.0);
    Ok(BoundarySequence { points })
}

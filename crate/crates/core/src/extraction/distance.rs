//! Hausdorff and mean distances between curve sets.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;


use super::CurveSet;
use crate::error::{Error, Result};
use crate::vector::Vec3;

/// Symmetric distances between two curve sets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveDistance {
    /// `max(h(A,B), h(B,A))` with `h` the directed Hausdorff distance.
    pub hausdorff: f64,
    /// Mean of the two directed mean point-to-set distances.
    pub mean: f64,
}

/// Points along every curve, spaced at most `step` apart.
pub fn densify(set: &CurveSet, step: f64) -> Vec<Vec3> {
    let mut out = Vec::new();
    for curve in &set.curves {
        if curve.points.len() == 1 {
            out.push(curve.points[0]);
            continue;
        }
        for (a, b) in curve.segments() {
            let pieces = (a.distance(b) / step).ceil().max(1.0) as usize;
            out.extend((0..pieces).map(|i| a.lerp(b, i as f64 / pieces as f64)));
        }
        if !curve.closed {
            if let Some(&last) = curve.points.last() {
                out.push(last);
            }
        }
    }
    out
}

fn pieces(set: &CurveSet, step: f64) -> Vec<(Vec3, Vec3)> {
    let mut out = Vec::new();
    for curve in &set.curves {
        if curve.points.len() == 1 {
            out.push((curve.points[0], curve.points[0]));
        }
        for (a, b) in curve.segments() {
            let n = (a.distance(b) / step).ceil().max(1.0) as usize;
            let mut prev = a;
            for i in 1..=n {
                let next = if i == n { b } else { a.lerp(b, i as f64 / n as f64) };
                out.push((prev, next));
                prev = next;
            }
        }
    }
    out
}

fn point_segment_distance(p: Vec3, a: Vec3, b: Vec3) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    let s = if len2 > 0.0 { ((p - a).dot(ab) / len2).clamp(0.0, 1.0) } else { 0.0 };
    p.distance(a + ab * s)
}

const MAX_RING_SEARCH: usize = 6;

/// Uniform bucket grid over short segment pieces.
struct SegmentIndex {
    pieces: Vec<(Vec3, Vec3)>,
    origin: Vec3,
    cell: f64,
    dims: [usize; 3],
    offsets: Vec<usize>,
    items: Vec<u32>,
}

impl SegmentIndex {
    fn new(pieces: Vec<(Vec3, Vec3)>, lo: Vec3, hi: Vec3, step: f64) -> Self {
        let extent = (hi - lo).max_abs();
        let cell = (2.0 * step).max(extent / 96.0).max(f64::MIN_POSITIVE);
        let dims = [0, 1, 2].map(|a| (((hi[a] - lo[a]) / cell).floor() as usize + 1).max(1));
        let index = |p: Vec3| -> [usize; 3] {
            [0, 1, 2].map(|a| (((p[a] - lo[a]) / cell).floor().max(0.0) as usize).min(dims[a] - 1))
        };
        let flat = |c: [usize; 3]| (c[0] * dims[1] + c[1]) * dims[2] + c[2];

        let mut pairs: Vec<(usize, u32)> = Vec::new();
        for (id, &(a, b)) in pieces.iter().enumerate() {
            let (ca, cb) = (index(a), index(b));
            let lo_c = [0, 1, 2].map(|i| ca[i].min(cb[i]));
            let hi_c = [0, 1, 2].map(|i| ca[i].max(cb[i]));
            for x in lo_c[0]..=hi_c[0] {
                for y in lo_c[1]..=hi_c[1] {
                    for z in lo_c[2]..=hi_c[2] {
                        pairs.push((flat([x, y, z]), id as u32));
                    }
                }
            }
        }
        pairs.sort_unstable();
        let total = dims[0] * dims[1] * dims[2];
        let mut offsets = alloc::vec![0usize; total + 1];
        for &(c, _) in &pairs {
            offsets[c + 1] += 1;
        }
        for i in 0..total {
            offsets[i + 1] += offsets[i];
        }
        let items = pairs.into_iter().map(|(_, id)| id).collect();
        Self {
            pieces,
            origin: lo,
            cell,
            dims,
            offsets,
            items,
        }
    }

    fn nearest(&self, p: Vec3) -> f64 {
        let c = [0, 1, 2].map(|a| {
            (((p[a] - self.origin[a]) / self.cell).floor().max(0.0) as usize).min(self.dims[a] - 1)
        });
        let max_ring = self.dims.iter().copied().max().unwrap_or(1);
        let mut best = f64::INFINITY;
        for ring in 0..=max_ring {
            if ring > MAX_RING_SEARCH {
                // Far from every piece: a linear scan is cheaper than more shells.
                return self
                    .pieces
                    .iter()
                    .map(|&(a, b)| point_segment_distance(p, a, b))
                    .fold(f64::INFINITY, f64::min);
            }
            let r = ring as isize;
            for dx in -r..=r {
                for dy in -r..=r {
                    for dz in -r..=r {
                        if dx.abs().max(dy.abs()).max(dz.abs()) != r {
                            continue;
                        }
                        let cell = [c[0] as isize + dx, c[1] as isize + dy, c[2] as isize + dz];
                        if (0..3).any(|a| cell[a] < 0 || cell[a] >= self.dims[a] as isize) {
                            continue;
                        }
                        let flat = (cell[0] as usize * self.dims[1] + cell[1] as usize) * self.dims[2] + cell[2] as usize;
                        for &id in &self.items[self.offsets[flat]..self.offsets[flat + 1]] {
                            let (a, b) = self.pieces[id as usize];
                            best = best.min(point_segment_distance(p, a, b));
                        }
                    }
                }
            }
            if best <= ring as f64 * self.cell {
                break;
            }
        }
        best
    }
}

fn bounds(points: impl Iterator<Item = Vec3>) -> (Vec3, Vec3) {
    points.fold(
        (Vec3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY), Vec3::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY)),
        |(lo, hi), p| {
            (
                Vec3::new(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z)),
                Vec3::new(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z)),
            )
        },
    )
}

/// Directed (max, mean) distance from the points of `from` to the curves of `to`.
fn directed(from: &[Vec3], to: &SegmentIndex) -> (f64, f64) {
    let mut max = 0.0f64;
    let mut sum = 0.0;
    for &p in from {
        let d = to.nearest(p);
        max = max.max(d);
        sum += d;
    }
    (max, sum / from.len() as f64)
}

/// Symmetric Hausdorff and mean distances, with both polylines densified to
/// spacing `step` (use at most half the grid spacing).
pub fn curve_set_distance(a: &CurveSet, b: &CurveSet, step: f64) -> Result<CurveDistance> {
    if !(step > 0.0) {
        return Err(Error::NonPositive("densification step"));
    }
    if a.point_count() == 0 || b.point_count() == 0 {
        return Err(Error::EmptyCurveSet);
    }
    let (lo, hi) = bounds(a.points().chain(b.points()));
    let pa = densify(a, step);
    let pb = densify(b, step);
    let ia = SegmentIndex::new(pieces(a, step), lo, hi, step);
    let ib = SegmentIndex::new(pieces(b, step), lo, hi, step);
    let (hab, mab) = directed(&pa, &ib);
    let (hba, mba) = directed(&pb, &ia);
    Ok(CurveDistance {
        hausdorff: hab.max(hba),
        mean: 0.5 * (mab + mba),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extraction::Polyline;
    use alloc::vec;

    fn line(offset: Vec3) -> CurveSet {
        CurveSet::new(vec![Polyline::open(vec![offset, offset + Vec3::X * 3.0])])
    }

    #[test]
    fn identical_sets_are_at_zero() {
        let a = line(Vec3::ZERO);
        assert_eq!(curve_set_distance(&a, &a, 0.1).unwrap(), CurveDistance { hausdorff: 0.0, mean: 0.0 });
    }

    #[test]
    fn parallel_lines() {
        let d = curve_set_distance(&line(Vec3::ZERO), &line(Vec3::Y * 0.25), 0.05).unwrap();
        assert!((d.hausdorff - 0.25).abs() < 1e-12);
        assert!((d.mean - 0.25).abs() < 1e-12);
    }

    #[test]
    fn empty_rejected() {
        assert_eq!(
            curve_set_distance(&CurveSet::default(), &line(Vec3::ZERO), 0.1),
            Err(Error::EmptyCurveSet)
        );
    }

    #[test]
    fn densify_respects_step() {
        let c = CurveSet::new(vec![Polyline::closed(vec![Vec3::ZERO, Vec3::X, Vec3::Y])]);
        let pts = densify(&c, 0.1);
        for w in pts.windows(2) {
            assert!(w[0].distance(w[1]) <= 0.1 + 1e-12);
        }
        assert!(pts.last().unwrap().distance(Vec3::ZERO) <= 0.1 + 1e-12);
    }
}

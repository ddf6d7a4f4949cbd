//! Marching-tetrahedra zero-curve kernel.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::predicates::sos_det_sign;
use super::{for_each_slab, CurveSet, ExtractOptions, Polyline, ScalarGrid};
use crate::error::{Degeneracy, Error, Result};
use crate::vector::Vec3;

/// Sorted global vertex ids of a triangular face.
type FaceKey = [usize; 3];

#[derive(Clone, Copy, Debug)]
struct Vertex {
    id: usize,
    pos: Vec3,
    u: f64,
    v: f64,
}

#[derive(Clone, Copy, Debug)]
struct Segment {
    keys: [FaceKey; 2],
    points: [Vec3; 2],
}

/// Corner offsets of the six Kuhn tetrahedra; all share the diagonal
/// `(0,0,0)–(1,1,1)`, so neighbouring cells triangulate shared faces
/// identically.
const KUHN_TETS: [[[usize; 3]; 4]; 6] = {
    const fn tet(a: usize, b: usize) -> [[usize; 3]; 4] {
        let mut first = [0; 3];
        first[a] = 1;
        let mut second = first;
        second[b] = 1;
        [[0, 0, 0], first, second, [1, 1, 1]]
    }
    [tet(0, 1), tet(0, 2), tet(1, 0), tet(1, 2), tet(2, 0), tet(2, 1)]
};

/// Extracts `{Re ψ = 0} ∩ {Im ψ = 0}` with default thresholds.
pub fn extract_zero_curves(grid: &ScalarGrid) -> Result<CurveSet> {
    extract_zero_curves_with(grid, &ExtractOptions::default())
}

pub fn extract_zero_curves_with(grid: &ScalarGrid, opts: &ExtractOptions) -> Result<CurveSet> {
    check_degeneracy(grid.values().iter().map(|v| v.norm()), grid.reference(), opts)?;
    let segments = collect_segments(grid);
    let link_tol = opts.link_tolerance * grid.spec().max_spacing();
    Ok(link_segments(&segments, link_tol))
}

/// Rejects grids whose samples vanish (relative to the maximum) on more than
/// the allowed fraction of points, including the all-zero grid.
pub(crate) fn check_degeneracy<I>(magnitudes: I, reference: f64, opts: &ExtractOptions) -> Result<()>
where
    I: Iterator<Item = f64> + Clone,
{
    let max_abs = magnitudes.clone().fold(0.0, f64::max);
    let total = magnitudes.clone().count();
    let threshold = opts.zero_threshold * max_abs.max(reference);
    let zeros = if max_abs > 0.0 {
        magnitudes.filter(|&m| m < threshold).count()
    } else {
        total
    };
    let zero_fraction = if total == 0 { 1.0 } else { zeros as f64 / total as f64 };
    if zero_fraction > opts.degenerate_fraction || !(max_abs > 0.0) {
        return Err(Error::Degenerate(Degeneracy { zero_fraction, max_abs }));
    }
    Ok(())
}

fn collect_segments(grid: &ScalarGrid) -> Vec<Segment> {
    let spec = *grid.spec();
    let [nx, ny, nz] = spec.counts();
    let values = grid.values();
    // One slab per cell layer along x.
    for_each_slab(nx - 1, |i| {
        let mut out = Vec::new();
        for j in 0..ny - 1 {
            for k in 0..nz - 1 {
                let mut corners = [[[None::<Vertex>; 2]; 2]; 2];
                let mut all = [true; 4]; // u>0, u<0, v>0, v<0
                for (di, plane) in corners.iter_mut().enumerate() {
                    for (dj, row) in plane.iter_mut().enumerate() {
                        for (dk, slot) in row.iter_mut().enumerate() {
                            let id = spec.index(i + di, j + dj, k + dk);
                            let val = values[id];
                            all[0] &= val.re > 0.0;
                            all[1] &= val.re < 0.0;
                            all[2] &= val.im > 0.0;
                            all[3] &= val.im < 0.0;
                            *slot = Some(Vertex {
                                id,
                                pos: spec.point(i + di, j + dj, k + dk),
                                u: val.re,
                                v: val.im,
                            });
                        }
                    }
                }
                if all.iter().any(|&b| b) {
                    continue;
                }
                for tet in &KUHN_TETS {
                    let verts = tet.map(|[a, b, c]| corners[a][b][c].expect("corner filled"));
                    if let Some(seg) = tet_segment(&verts) {
                        out.push(seg);
                    }
                }
            }
        }
        out
    })
}

/// Segment of the common zero set inside one tetrahedron, if any.
fn tet_segment(verts: &[Vertex; 4]) -> Option<Segment> {
    let mut hits: [Option<(FaceKey, Vec3)>; 2] = [None, None];
    let mut count = 0;
    for skip in 0..4 {
        let mut face = [verts[0]; 3];
        let mut n = 0;
        for (idx, v) in verts.iter().enumerate() {
            if idx != skip {
                face[n] = *v;
                n += 1;
            }
        }
        face.sort_unstable_by_key(|v| v.id);
        if let Some(p) = face_crossing(&face) {
            if count < 2 {
                hits[count] = Some(([face[0].id, face[1].id, face[2].id], p));
            }
            count += 1;
        }
    }
    // Under the symbolic perturbation a tetrahedron is crossed 0 or 2 times.
    debug_assert!(count == 0 || count == 2, "tetrahedron crossed {count} times");
    match (count, hits) {
        (2, [Some((ka, pa)), Some((kb, pb))]) => Some(Segment {
            keys: [ka, kb],
            points: [pa, pb],
        }),
        _ => None,
    }
}

/// Crossing point of the zero line with a face whose vertices are sorted by
/// id, or `None` when the perturbed zero line misses the face.
fn face_crossing(f: &[Vertex; 3]) -> Option<Vec3> {
    let s01 = sos_det_sign(f[0].u, f[0].v, f[1].u, f[1].v);
    let s12 = sos_det_sign(f[1].u, f[1].v, f[2].u, f[2].v);
    let s20 = sos_det_sign(f[0].u, f[0].v, f[2].u, f[2].v).reverse();
    if s01 != s12 || s12 != s20 {
        return None;
    }
    Some(face_point(f))
}

fn face_point(f: &[Vertex; 3]) -> Vec3 {
    let det = |a: &Vertex, b: &Vertex| a.u * b.v - b.u * a.v;
    let lambda = [det(&f[1], &f[2]), det(&f[2], &f[0]), det(&f[0], &f[1])];
    let sum: f64 = lambda.iter().sum();
    let spread: f64 = lambda.iter().map(|l| l.abs()).sum();
    if sum.is_finite() && sum.abs() > 1e-12 * spread && sum != 0.0 {
        let mut w = lambda.map(|l| (l / sum).max(0.0));
        let total: f64 = w.iter().sum();
        w = w.map(|x| x / total);
        return f[0].pos * w[0] + f[1].pos * w[1] + f[2].pos * w[2];
    }
    degenerate_face_point(f)
}

/// Representative point when the barycentric system is singular: the zero
/// set on the face is a vertex, an edge, or a chord.
fn degenerate_face_point(f: &[Vertex; 3]) -> Vec3 {
    let mut acc = Vec3::ZERO;
    let mut n = 0.0;
    for v in f.iter().filter(|v| v.u == 0.0 && v.v == 0.0) {
        acc += v.pos;
        n += 1.0;
    }
    if n > 0.0 {
        return acc / n;
    }
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        let (va, vb) = (&f[a], &f[b]);
        let na = va.u.hypot(va.v);
        let nb = vb.u.hypot(vb.v);
        let cross = va.u * vb.v - vb.u * va.v;
        let dot = va.u * vb.u + va.v * vb.v;
        if cross.abs() <= 1e-12 * na * nb && dot < 0.0 {
            acc += va.pos.lerp(vb.pos, na / (na + nb));
            n += 1.0;
        }
    }
    if n > 0.0 {
        acc / n
    } else {
        (f[0].pos + f[1].pos + f[2].pos) / 3.0
    }
}

/// Joins segments that share a face into polylines, then merges open
/// polylines whose endpoints lie within `tol` of each other.
fn link_segments(segments: &[Segment], tol: f64) -> CurveSet {
    let mut ends: Vec<(FaceKey, usize, usize)> = segments
        .iter()
        .enumerate()
        .flat_map(|(s, seg)| [(seg.keys[0], s, 0), (seg.keys[1], s, 1)])
        .collect();
    ends.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut neighbour = alloc::vec![[None::<(usize, usize)>; 2]; segments.len()];
    let mut idx = 0;
    while idx < ends.len() {
        let mut run = idx + 1;
        while run < ends.len() && ends[run].0 == ends[idx].0 {
            run += 1;
        }
        debug_assert!(run - idx <= 2, "face shared by {} segments", run - idx);
        if run - idx >= 2 {
            let (_, sa, ea) = ends[idx];
            let (_, sb, eb) = ends[idx + 1];
            neighbour[sa][ea] = Some((sb, eb));
            neighbour[sb][eb] = Some((sa, ea));
        }
        idx = run;
    }

    let mut visited = alloc::vec![false; segments.len()];
    let mut curves = Vec::new();
    for start in 0..segments.len() {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let (forward, closed) = walk(start, 1, &neighbour, &mut visited);
        let mut points = Vec::new();
        if !closed {
            let (backward, _) = walk(start, 0, &neighbour, &mut visited);
            points.extend(backward.iter().rev().map(|&(s, e)| segments[s].points[e]));
        }
        points.push(segments[start].points[0]);
        points.push(segments[start].points[1]);
        points.extend(forward.iter().map(|&(s, e)| segments[s].points[e]));
        if closed {
            // The walk re-entered `start`; its last point is `start`'s first.
            points.pop();
        }
        curves.push(Polyline { points, closed });
    }
    finish_curves(curves, tol)
}

/// Follows neighbours from `start` leaving through `exit`. Returns the
/// visited segments with the end through which each is left, and whether the
/// walk came back to `start`.
fn walk(
    start: usize,
    exit: usize,
    neighbour: &[[Option<(usize, usize)>; 2]],
    visited: &mut [bool],
) -> (Vec<(usize, usize)>, bool) {
    let mut out = Vec::new();
    let (mut cur, mut out_end) = (start, exit);
    while let Some((next, entry)) = neighbour[cur][out_end] {
        if next == start {
            return (out, true);
        }
        if visited[next] {
            break;
        }
        visited[next] = true;
        out_end = 1 - entry;
        out.push((next, out_end));
        cur = next;
    }
    (out, false)
}

/// Drops repeated points, merges open curves that touch end to end and
/// closes open curves whose ends meet.
pub(crate) fn finish_curves(curves: Vec<Polyline>, tol: f64) -> CurveSet {
    let mut cleaned: Vec<Polyline> = curves
        .into_iter()
        .filter_map(|c| dedup_curve(c, tol))
        .collect();

    loop {
        let mut merged = false;
        'outer: for a in 0..cleaned.len() {
            if cleaned[a].closed {
                continue;
            }
            for b in a + 1..cleaned.len() {
                if cleaned[b].closed {
                    continue;
                }
                if let Some(joined) = join_open(&cleaned[a], &cleaned[b], tol) {
                    cleaned[a] = joined;
                    cleaned.swap_remove(b);
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            break;
        }
    }
    for c in &mut cleaned {
        if !c.closed && c.points.len() > 2 {
            let first = c.points[0];
            let last = *c.points.last().expect("nonempty");
            if first.distance(last) <= tol {
                c.points.pop();
                c.closed = true;
            }
        }
    }
    cleaned.retain(|c| c.points.len() >= if c.closed { 3 } else { 2 });
    CurveSet::new(cleaned)
}

fn dedup_curve(mut c: Polyline, tol: f64) -> Option<Polyline> {
    c.points.dedup_by(|b, a| a.distance(*b) <= tol);
    if c.closed {
        while c.points.len() > 1 && c.points[0].distance(*c.points.last().expect("nonempty")) <= tol {
            c.points.pop();
        }
        if c.points.len() < 3 {
            c.closed = false;
        }
    }
    (c.points.len() >= 2).then_some(c)
}

fn join_open(a: &Polyline, b: &Polyline, tol: f64) -> Option<Polyline> {
    let near = |p: Vec3, q: Vec3| p.distance(q) <= tol;
    let (a0, a1) = (a.points[0], *a.points.last()?);
    let (b0, b1) = (b.points[0], *b.points.last()?);
    let mut pts: Vec<Vec3>;
    if near(a1, b0) {
        pts = a.points.clone();
        pts.extend_from_slice(&b.points[1..]);
    } else if near(a1, b1) {
        pts = a.points.clone();
        pts.extend(b.points.iter().rev().skip(1));
    } else if near(a0, b1) {
        pts = b.points.clone();
        pts.extend_from_slice(&a.points[1..]);
    } else if near(a0, b0) {
        pts = b.points.iter().rev().copied().collect();
        pts.extend_from_slice(&a.points[1..]);
    } else {
        return None;
    }
    Some(Polyline::open(pts))
}

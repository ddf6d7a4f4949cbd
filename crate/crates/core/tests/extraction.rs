mod common;

use std::f64::consts::{PI, TAU};

use common::*;
use proptest::prelude::*;
use rand::Rng;
use rsvortex_core::extraction::{densify, extract_zero_curves_with};
use rsvortex_core::scalars::{l_field, rs_polarization_scalar};
use rsvortex_core::{
    curve_set_distance, extract_l_lines, extract_zero_curves, make_helicity_mode, psi_grid, sample_grid, Complex64,
    CurveSet, Error, ExtractOptions, FieldSuperposition, GridSpec, Helicity, MonochromaticField, Polyline, Vec3,
};

const R: f64 = 0.5;

fn circle_function(p: Vec3, _t: f64) -> Complex64 {
    Complex64::new(p.x * p.x + p.y * p.y - R * R, p.z)
}

/// Exact distance from `p` to the circle of radius `R` in the plane z = 0.
fn distance_to_circle(p: Vec3) -> f64 {
    let rho = p.x.hypot(p.y);
    (rho - R).hypot(p.z)
}

fn circle_error(n: usize) -> (f64, CurveSet) {
    let spec = GridSpec::cube(1.0, n).unwrap();
    let curves = extract_zero_curves(&sample_grid(&spec, 0.0, circle_function)).unwrap();
    let truth = CurveSet::new(vec![Polyline::closed(
        (0..20_000).map(|j| {
            let a = TAU * j as f64 / 20_000.0;
            Vec3::new(R * a.cos(), R * a.sin(), 0.0)
        }).collect(),
    )]);
    let h = spec.max_spacing();
    let d = curve_set_distance(&curves, &truth, h / 2.0).unwrap();
    let pointwise = curves.points().map(distance_to_circle).fold(0.0, f64::max);
    (d.hausdorff.max(pointwise), curves)
}

fn mixed_mono(seed: u64, n: usize) -> (FieldSuperposition, MonochromaticField) {
    let mut rng = rng(seed);
    let field = mono_field(&mut rng, n, 1.0, Helicity::Positive, true);
    let mono = MonochromaticField::from_field(&field).unwrap();
    (field, mono)
}

#[test]
fn sampling_examples() {
    let spec = GridSpec::new(Vec3::new(-1.0, 0.0, 2.0), Vec3::new(1.0, 3.0, 5.0), [2, 2, 2]).unwrap();
    let ones = sample_grid(&spec, 0.0, |_, _| Complex64::new(1.0, 0.0));
    assert!(ones.values().iter().all(|&v| v == Complex64::new(1.0, 0.0)));
    let corners = sample_grid(&spec, 0.0, |p, _| Complex64::new(p.x + 10.0 * p.y + 100.0 * p.z, 0.0));
    assert_eq!(corners.values().len(), 8);
    for (i, j, k) in [(0, 0, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)] {
        let p = Vec3::new([-1.0, 1.0][i], [0.0, 3.0][j], [2.0, 5.0][k]);
        assert_eq!(corners.get(i, j, k).re, p.x + 10.0 * p.y + 100.0 * p.z);
    }
    let mut rng = rng(51);
    let wave = FieldSuperposition::new(vec![mode(&mut rng, 1.0, Helicity::Positive)]).unwrap();
    let psi = psi_grid(&wave, &GridSpec::cube(3.0, 9).unwrap(), 0.2);
    assert!(psi.max_abs() <= 1e-15);
}

#[test]
fn linear_field_gives_the_z_axis() {
    for (n, lo) in [(9, -1.0), (10, -1.0), (11, -0.73)] {
        let spec = GridSpec::new(Vec3::new(lo, lo, -1.0), Vec3::new(1.0, 1.0, 1.0), [n, n, n]).unwrap();
        let grid = sample_grid(&spec, 0.0, |p, _| Complex64::new(p.x, p.y));
        let curves = extract_zero_curves(&grid).unwrap();
        assert_eq!(curves.len(), 1, "n = {n}");
        let c = &curves.curves[0];
        assert!(!c.closed);
        for p in &c.points {
            assert!(p.x.abs() <= 1e-12 && p.y.abs() <= 1e-12, "{p:?}");
        }
        let zs: Vec<f64> = c.points.iter().map(|p| p.z).collect();
        let (zmin, zmax) = zs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &z| (a.min(z), b.max(z)));
        assert!((zmin + 1.0).abs() < 1e-12 && (zmax - 1.0).abs() < 1e-12);
    }
}

#[test]
fn circle_is_closed_and_converges_quadratically() {
    let mut errors = Vec::new();
    for n in [17, 33, 65] {
        let (err, curves) = circle_error(n);
        assert_eq!(curves.len(), 1, "n = {n}");
        assert!(curves.curves[0].closed);
        errors.push(err);
    }
    for w in errors.windows(2) {
        assert!(w[0] / w[1] >= 3.0, "errors {errors:?}");
    }
    // Even sample counts keep the nodes off z = 0.
    let (err, curves) = circle_error(32);
    assert!(curves.curves[0].closed && err < errors[0]);
}

#[test]
fn plane_wave_is_degenerate() {
    let mut rng = rng(52);
    for h in [Helicity::Positive, Helicity::Negative] {
        let wave = FieldSuperposition::new(vec![mode(&mut rng, 1.3, h)]).unwrap();
        let grid = psi_grid(&wave, &GridSpec::cube(4.0, 17).unwrap(), 0.7);
        match extract_zero_curves(&grid) {
            Err(Error::Degenerate(d)) => assert!(d.zero_fraction > 0.5),
            other => panic!("expected degenerate, got {other:?}"),
        }
    }
}

#[test]
fn relabelled_axes_give_the_same_curves() {
    let (field, _) = mixed_mono(53, 5);
    let spec = GridSpec::new(Vec3::new(-3.0, -2.5, -3.5), Vec3::new(3.5, 3.0, 2.5), [31, 27, 29]).unwrap();
    let grid = psi_grid(&field, &spec, 0.4);
    let direct = extract_zero_curves(&grid).unwrap();
    let swapped = extract_zero_curves(&grid.swap_xy()).unwrap().map_points(|p| Vec3::new(p.y, p.x, p.z));
    assert!(!direct.is_empty());
    let d = curve_set_distance(&direct, &swapped, spec.max_spacing() / 2.0).unwrap();
    assert!(d.hausdorff <= 1e-9, "{d:?}");
}

#[test]
fn linking_leaves_no_joinable_ends() {
    for seed in 54..58 {
        let (field, _) = mixed_mono(seed, 6);
        let spec = GridSpec::cube(2.0 * PI, 41).unwrap();
        let opts = ExtractOptions::default();
        let curves = extract_zero_curves_with(&psi_grid(&field, &spec, 0.0), &opts).unwrap();
        let tol = opts.link_tolerance * spec.max_spacing();
        let mut ends = Vec::new();
        for (id, c) in curves.curves.iter().enumerate() {
            for w in c.points.windows(2) {
                assert!(w[0] != w[1], "repeated point");
            }
            if c.closed {
                assert!(c.points.len() >= 3);
                assert!(c.points[0] != c.points[c.points.len() - 1]);
            } else {
                ends.push((id, c.points[0]));
                ends.push((id, c.points[c.points.len() - 1]));
            }
        }
        for (a, &(ia, pa)) in ends.iter().enumerate() {
            for &(ib, pb) in &ends[a + 1..] {
                if ia != ib {
                    assert!(pa.distance(pb) > tol, "curves {ia} and {ib} should have been joined");
                }
            }
        }
        // Open curves end on the boundary of the box.
        for &(_, p) in &ends {
            let outer = (p.max_abs() - 2.0 * PI).abs();
            assert!(outer <= 1e-9, "open end inside the box: {p:?}");
        }
    }
}

#[test]
fn curve_points_have_small_true_psi() {
    // ψ = F·F with |k| = 1 has second directional derivatives bounded by
    // 4A², A = Σ|f|. Linear interpolation over a cell of diagonal √3·h errs
    // by at most ½·4A²·3h² in each of Re ψ and Im ψ.
    let (field, _) = mixed_mono(58, 4);
    let a2 = field.amplitude_bound().powi(2);
    let mut worst = Vec::new();
    for n in [25, 49] {
        let spec = GridSpec::cube(PI, n).unwrap();
        let h = spec.max_spacing();
        let curves = extract_zero_curves(&psi_grid(&field, &spec, 0.0)).unwrap();
        let bound = std::f64::consts::SQRT_2 * 6.0 * a2 * h * h;
        let max = curves.points().map(|p| rs_polarization_scalar(&field, p, 0.0).norm()).fold(0.0, f64::max);
        assert!(max <= bound, "max |ψ| {max} exceeds {bound}");
        worst.push(max / (h * h));
    }
    // The observed constant does not grow under refinement.
    assert!(worst[1] <= 1.5 * worst[0], "{worst:?}");
}

#[test]
fn translated_sets_are_exactly_delta_apart() {
    let mut rng = rng(59);
    for _ in 0..20 {
        let closed = rng.gen_bool(0.5);
        let pts: Vec<Vec3> = (0..rng.gen_range(3..12)).map(|_| point(&mut rng, 2.0)).collect();
        let a = CurveSet::new(vec![Polyline { points: pts, closed }]);
        let delta = unit_vector(&mut rng) * rng.gen_range(0.01..0.5);
        let b = a.map_points(|p| p + delta);
        let d = curve_set_distance(&a, &b, 0.02).unwrap();
        // The vertex extreme along δ moves exactly |δ| away from the set.
        assert!(d.hausdorff <= delta.norm() + 1e-12);
        assert!(d.hausdorff >= delta.norm() - 1e-12);
        assert!(d.mean <= d.hausdorff);
    }
}

#[test]
fn standing_wave_has_no_generic_l_lines() {
    // Equal-amplitude circular waves along ±z: E_ω = √2(cos z, −sin z, 0) is real.
    let a = make_helicity_mode(Vec3::Z, Helicity::Positive, Complex64::new(1.0, 0.0)).unwrap();
    let b = make_helicity_mode(-Vec3::Z, Helicity::Positive, Complex64::new(1.0, 0.0)).unwrap();
    let mono = MonochromaticField::from_field(&FieldSuperposition::new(vec![a, b]).unwrap()).unwrap();
    let spec = GridSpec::cube(3.0, 13).unwrap();
    for _ in 0..5 {
        assert!(rsvortex_core::scalars::electric_phasor(&mono, Vec3::new(0.3, 0.1, 0.7)).im().max_abs() < 1e-15);
    }
    assert!(matches!(extract_l_lines(&mono, &spec), Err(Error::Degenerate(_))));
    let zero = make_helicity_mode(Vec3::X, Helicity::Positive, Complex64::new(0.0, 0.0)).unwrap();
    let mono = MonochromaticField::from_field(&FieldSuperposition::new(vec![zero]).unwrap()).unwrap();
    assert!(matches!(extract_l_lines(&mono, &spec), Err(Error::Degenerate(_))));
}

#[test]
fn l_lines_match_brute_force_minima() {
    let (_, mono) = mixed_mono(60, 3);
    let spec = GridSpec::cube(PI, 41).unwrap();
    let h = spec.max_spacing();
    let result = extract_l_lines(&mono, &spec).unwrap();
    assert!(!result.curves.is_empty());
    assert!(result.kept > 0);
    for p in result.curves.points() {
        let v = l_field(&mono, p);
        assert!(v.norm() <= result.validation_bound, "|V| = {} at {p:?}", v.norm());
    }

    // Oracle: strict local minima of |V| on a grid four times finer whose
    // value is far below the typical |V| sit next to an L-line.
    let fine = GridSpec::cube(PI - 2.0 * h, 161).unwrap();
    let hf = fine.max_spacing();
    let [n, _, _] = fine.counts();
    let mags: Vec<f64> = (0..n * n * n)
        .map(|idx| {
            let (i, j, k) = (idx / (n * n), (idx / n) % n, idx % n);
            l_field(&mono, fine.point(i, j, k)).norm()
        })
        .collect();
    let at = |i: usize, j: usize, k: usize| mags[fine.index(i, j, k)];
    let threshold = 1e-2 * result.max_norm;
    let track = densify(&result.curves, h / 4.0);
    let mut checked = 0;
    for i in 1..n - 1 {
        for j in 1..n - 1 {
            for k in 1..n - 1 {
                let m = at(i, j, k);
                if m > threshold {
                    continue;
                }
                let neighbours = [
                    at(i - 1, j, k), at(i + 1, j, k), at(i, j - 1, k),
                    at(i, j + 1, k), at(i, j, k - 1), at(i, j, k + 1),
                ];
                if neighbours.iter().all(|&x| x > m) {
                    let p = fine.point(i, j, k);
                    let d = track.iter().map(|q| q.distance(p)).fold(f64::INFINITY, f64::min);
                    assert!(d <= 2.0 * hf + h / 4.0, "minimum at {p:?} is {d} from the extracted lines");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 10, "only {checked} minima found");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn extracted_vortices_are_duality_invariant(seed in seed(), chi in 0.0f64..TAU) {
        let mut rng = rng(seed);
        let field = mono_field(&mut rng, 4, 1.0, Helicity::Positive, true);
        let spec = GridSpec::cube(PI, 21).unwrap();
        let rotated = rsvortex_core::duality_rotate(&field, chi);
        let a = extract_zero_curves(&psi_grid(&field, &spec, 0.3));
        let b = extract_zero_curves(&psi_grid(&rotated, &spec, 0.3));
        match (a, b) {
            (Ok(a), Ok(b)) if !a.is_empty() => {
                let d = curve_set_distance(&a, &b, spec.max_spacing() / 2.0).unwrap();
                prop_assert!(d.hausdorff <= 1e-9, "{:?}", d);
            }
            (Ok(a), Ok(b)) => prop_assert!(b.is_empty() && a.is_empty()),
            (a, b) => prop_assert!(false, "{:?} / {:?}", a.err(), b.err()),
        }
    }
}

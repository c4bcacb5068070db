//! Randomized invariants across modules.

use std::f64::consts::PI;

use loewner::capacity::{hcap_mc, hcap_union_two_slits, hcap_zipper_with, segment_capacity, segment_length, SegmentSpec};
use loewner::chordal::{weld, weld_detailed, DrivingPath, ElementaryMap};
use loewner::experiments::branch_sweep;
use loewner::geom::{format_polyline, parse_polyline};
use loewner::radial::{lmr_of_boundary_slit, radial_solve_forward, RadialDrivingPath};
use loewner::{Hull, PolylineSlit};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Upward polyline from `base` with strictly increasing heights, hence simple.
fn upward(base: f64, steps: &[(f64, f64)]) -> PolylineSlit {
    let mut p = c(base, 0.0);
    let vertices = steps
        .iter()
        .map(|&(dx, dy)| {
            p += c(dx, dy);
            p
        })
        .collect();
    PolylineSlit::half_plane(base, vertices).unwrap()
}

fn steps() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-0.3f64..0.3, 0.1f64..0.4), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn segment_length_inverts_capacity(alpha in 0.01f64..3.13, len in 0.0f64..10.0) {
        let b = segment_capacity(alpha, len).unwrap();
        prop_assert!((segment_length(alpha, b).unwrap() - len).abs() <= 1e-12 * len.max(1.0));
    }

    #[test]
    fn segment_capacity_scales_quadratically(alpha in 0.05f64..3.1, len in 0.1f64..3.0, k in 0.2f64..5.0) {
        let (b, bk) = (segment_capacity(alpha, len).unwrap(), segment_capacity(alpha, k * len).unwrap());
        prop_assert!((bk - k * k * b).abs() <= 1e-12 * bk);
    }

    #[test]
    fn elementary_map_inverts_and_is_normalized(
        base in -2.0f64..2.0, cap in 0.01f64..2.0, a in 0.05f64..0.95, x in -3.0f64..3.0, y in 0.01f64..3.0,
    ) {
        let m = ElementaryMap::tilted(base, cap, a).unwrap();
        let z = c(x, y);
        if let Ok(w) = m.apply(z) {
            prop_assert!(w.im > 0.0);
            prop_assert!((m.invert(w) - z).norm() <= 1e-9 * (1.0 + z.norm()));
        }
        let far = c(0.0, 1e4);
        let w = m.apply(far).unwrap();
        prop_assert!((w - far - cap / far).norm() <= 1e-4 * cap);
    }

    #[test]
    fn weld_capacity_is_sum_of_steps(s in steps(), base in -1.0f64..1.0) {
        let slit = upward(base, &s);
        let (path, map) = weld(&slit, 1e-2 * slit.diameter().powi(2)).unwrap();
        let sum: f64 = map.steps().iter().map(|m| m.capacity()).sum();
        prop_assert!((map.total_capacity() - sum).abs() <= 1e-12 * sum);
        prop_assert!((path.final_time() - sum).abs() <= 1e-12 * sum);
    }

    #[test]
    fn mirrored_slit_has_negated_driving(s in steps()) {
        let slit = upward(0.0, &s);
        let step = 1e-2 * slit.diameter().powi(2);
        let (p, _) = weld(&slit, step).unwrap();
        let (q, _) = weld(&slit.reflect_imaginary_axis().unwrap(), step).unwrap();
        prop_assert!((p.final_time() - q.final_time()).abs() <= 1e-10 * p.final_time());
        for k in 0..=20 {
            let t = p.final_time() * f64::from(k) / 20.0;
            prop_assert!((p.u_at(t) + q.u_at(t)).abs() <= 1e-10);
        }
    }

    #[test]
    fn polyline_text_round_trips(s in steps(), base in -5.0f64..5.0) {
        let slit = upward(base, &s);
        prop_assert_eq!(parse_polyline(&format_polyline(&slit)).unwrap(), slit);
    }

    #[test]
    fn driving_csv_keeps_twelve_digits(u in prop::collection::vec(-5.0f64..5.0, 2..10)) {
        let times: Vec<f64> = (0..u.len()).map(|k| 0.1 * k as f64).collect();
        let p = DrivingPath::capacity_parametrized(&times, &u).unwrap();
        let q = DrivingPath::from_csv(&p.to_csv()).unwrap();
        for (a, b) in p.samples().iter().zip(q.samples()) {
            prop_assert!((a.u - b.u).abs() <= 1e-11 * a.u.abs().max(1.0));
        }
    }

    #[test]
    fn radial_flow_keeps_origin_and_disk(t_end in 0.01f64..1.5, w in -2.0f64..2.0, r in 0.0f64..0.6, th in -3.0f64..3.0) {
        let path = RadialDrivingPath::from_angle_fn(t_end, 8, |t| w * t).unwrap();
        prop_assert_eq!(radial_solve_forward(&path, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        // the hull stays near the boundary point, so small |z| is never swallowed
        let g = radial_solve_forward(&path, Complex64::from_polar(r * (-t_end).exp(), th)).unwrap();
        prop_assert!(g.norm() < 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, ..ProptestConfig::default() })]

    #[test]
    fn union_of_branch_segments_is_strictly_subadditive(
        a1 in 0.3f64..1.4, da in 0.3f64..1.4, b1 in 0.2f64..1.0, b2 in 0.2f64..1.0,
    ) {
        let e = hcap_union_two_slits(
            &SegmentSpec::new(a1, b1, 0.0).unwrap(),
            &SegmentSpec::new(a1 + da, b2, 0.0).unwrap(),
            true,
        ).unwrap();
        prop_assert!(e.value - b1.max(b2) > 3.0 * e.err, "{e:?}");
        prop_assert!(b1 + b2 - e.value > 3.0 * e.err, "{e:?}");
    }

    #[test]
    fn branch_sweep_is_mirror_symmetric(a1 in 0.3f64..1.2, da in 0.3f64..1.2, b1 in 0.3f64..1.0, b2 in 0.3f64..1.0) {
        let a2 = a1 + da;
        let v = branch_sweep(&[(a1, a2)], b1, b2).unwrap().rows[0].cdot0;
        // reflecting in the imaginary axis swaps the roles and mirrors angles
        let m = branch_sweep(&[(PI - a2, PI - a1)], b2, b1).unwrap().rows[0].cdot0;
        prop_assert!((v - m).abs() <= 1e-6, "{v} vs {m}");
    }

    #[test]
    fn lmr_is_nonnegative_and_grows(th in -3.0f64..3.0, r in 0.3f64..0.9, tilt in -0.2f64..0.2) {
        let base = Complex64::from_polar(1.0, th);
        let tip = base * c(r, tilt * (1.0 - r));
        let short = PolylineSlit::disk(base, vec![tip]).unwrap();
        let longer = PolylineSlit::disk(base, vec![tip, tip * 0.9]).unwrap();
        let (a, b) = (lmr_of_boundary_slit(&short).unwrap(), lmr_of_boundary_slit(&longer).unwrap());
        prop_assert!(a.value >= 0.0);
        prop_assert!(b.value - a.value > a.err + b.err, "{a:?} {b:?}");
    }

    #[test]
    fn truncations_are_nested_and_monotone(s in steps(), f1 in 0.05f64..0.5, f2 in 0.5f64..0.95) {
        let slit = upward(0.0, &s);
        let step = 1e-2 * slit.diameter().powi(2);
        let w = weld_detailed(&slit, step).unwrap();
        let t = w.capacity();
        let cap = |f: f64| {
            let cut = w.truncate(f * t).unwrap();
            hcap_zipper_with(&Hull::single(cut), 1e-2).unwrap().value
        };
        let (c1, c2) = (cap(f1), cap(f2));
        prop_assert!(c1 < c2 && c2 < t * (1.0 + 1e-3));
        // the cut is placed within one weld step
        prop_assert!((c1 - f1 * t).abs() <= 0.25 * step, "{c1} vs {}", f1 * t);
    }
}

#[test]
fn monte_carlo_is_independent_of_thread_count() {
    let hull = Hull::single(PolylineSlit::segment(0.3, c(0.5, 0.8)).unwrap());
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| hcap_mc(&hull, 30_000, 11).unwrap().to_json())
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn monte_carlo_scales_quadratically() {
    let a = Hull::single(PolylineSlit::half_plane(0.0, vec![c(0.2, 0.5), c(-0.1, 0.9)]).unwrap());
    let (x, y) = (hcap_mc(&a, 200_000, 3).unwrap(), hcap_mc(&a.scale(2.0).unwrap(), 200_000, 4).unwrap());
    let diff = (y.value - 4.0 * x.value).abs();
    assert!(diff <= 3.0 * (y.err.powi(2) + 16.0 * x.err.powi(2)).sqrt(), "{x:?} {y:?}");
}

//! Region geometry against hand-computed values and brute-force scans.

use approx::assert_abs_diff_eq;
use krein::regions::{EnclosureRegion, Neighborhood};
use num_complex::Complex64;
use proptest::prelude::*;

fn z(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Membership of the ball union gamma=1, c0=c1=1/4 at hand-checked points.
///
/// For z = 1.3 the clipped stationary point is t = 1 and the membership
/// quadratic evaluates to 0.3^2 - 0.25 - 0.25 = -0.41, so z is inside.
#[test]
fn ball_union_membership_hand_values() {
    let k = EnclosureRegion::ball_union(1.0, 0.25, 0.25).unwrap();
    assert!(k.contains(z(1.3, 0.0)));
    assert!(!k.contains(z(1.9, 0.0)));
    assert!(k.contains(z(0.0, 0.45)));
    assert!(!k.contains(z(0.0, 0.55)));
    // Rightmost extent is gamma + sqrt(c0 + c1) = 1 + sqrt(1/2).
    let m = k.signed_margin(z(2.0, 0.0));
    assert_abs_diff_eq!(m, 1.0 - 0.5_f64.sqrt(), epsilon = 1e-9);
    assert_abs_diff_eq!(k.diameter(), 2.0 * (1.0 + 0.5_f64.sqrt()), epsilon = 1e-12);
}

#[test]
fn capsule_membership_hand_values() {
    let k = EnclosureRegion::capsule(-1.0, 1.0, 1.0).unwrap();
    assert!(k.contains(z(1.9, 0.0)));
    assert!(!k.contains(z(2.1, 0.0)));
    assert!(k.contains(z(0.5, 0.99)));
    assert!(!k.contains(z(-1.5, 0.9)));
    assert_abs_diff_eq!(
        k.signed_margin(z(-1.5, 0.9)),
        1.06_f64.sqrt() - 1.0,
        epsilon = 1e-12
    );
    assert_abs_diff_eq!(k.diameter(), 4.0, epsilon = 1e-15);
}

#[test]
fn large_c1_membership_without_envelope() {
    // c1 >= 1 has no boundary envelope but membership stays well defined.
    let k = EnclosureRegion::ball_union(1.0, 0.25, 4.0).unwrap();
    assert!(k.contains(z(0.0, 0.4)));
    assert!(k.contains(z(2.5, 0.0)));
    assert!(!k.contains(z(5.0, 0.0)));
    assert!(k.boundary_samples(64).is_err());
}

#[test]
fn boundary_samples_lie_on_boundary_and_wind_ccw() {
    for k in [
        EnclosureRegion::capsule(-1.0, 2.0, 0.5).unwrap(),
        EnclosureRegion::ball_union(1.0, 0.25, 0.25).unwrap(),
        EnclosureRegion::ball_union(2.0, 0.04, 0.4).unwrap(),
        EnclosureRegion::ball_union(0.0, 1.0, 0.3).unwrap(),
    ] {
        let pts = k.boundary_samples(256).unwrap();
        assert_eq!(pts.len(), 256);
        let diam = k.diameter();
        for p in &pts {
            assert!(k.contains(*p));
            assert!(
                k.signed_margin(*p).abs() <= 1e-6 * diam,
                "sample off boundary for {}: margin {}",
                k.label(),
                k.signed_margin(*p)
            );
        }
        // Shoelace area is positive for counterclockwise loops.
        let mut area = 0.0;
        for i in 0..pts.len() {
            let a = pts[i];
            let b = pts[(i + 1) % pts.len()];
            area += a.re * b.im - b.re * a.im;
        }
        assert!(area > 0.0, "expected ccw orientation for {}", k.label());
    }
}

#[test]
fn degenerate_shapes() {
    let point = EnclosureRegion::capsule(0.5, 0.5, 0.0).unwrap();
    assert!(point.contains(z(0.5, 0.0)));
    assert!(!point.contains(z(0.5, 1e-9)));
    let pts = point.boundary_samples(8).unwrap();
    assert!(pts.iter().all(|p| *p == z(0.5, 0.0)));

    let segment = EnclosureRegion::capsule(-1.0, 1.0, 0.0).unwrap();
    let pts = segment.boundary_samples(32).unwrap();
    assert!(pts.iter().all(|p| p.im == 0.0 && segment.contains(*p)));
}

#[test]
fn dilation_scales_parameters() {
    let k = EnclosureRegion::ball_union(1.0, 0.25, 0.25).unwrap();
    let d = k.dilate(1.5).unwrap();
    match d {
        EnclosureRegion::BallUnion { gamma, c0, c1 } => {
            assert_abs_diff_eq!(gamma, 1.5, epsilon = 1e-15);
            assert_abs_diff_eq!(c0, 0.5625, epsilon = 1e-15);
            assert_abs_diff_eq!(c1, 0.25, epsilon = 1e-15);
        }
        _ => panic!("dilation changed the region shape"),
    }
    assert!(k.dilate(0.9).is_err());

    let c = EnclosureRegion::capsule(-1.0, 1.0, 0.5).unwrap();
    match c.dilate(2.0).unwrap() {
        EnclosureRegion::Capsule { p, q, r } => {
            assert_eq!((p, q), (-1.0, 1.0));
            assert_abs_diff_eq!(r, 1.0, epsilon = 1e-15);
        }
        _ => panic!("dilation changed the region shape"),
    }
}

#[test]
fn boundary_of_region_sits_inside_dilation() {
    let k = EnclosureRegion::ball_union(1.0, 0.25, 0.25).unwrap();
    let grown = k.dilate(1.05).unwrap();
    for p in k.boundary_samples(128).unwrap() {
        assert!(grown.signed_margin(p) < 0.0);
    }
}

#[test]
fn csv_export_shape() {
    let k = EnclosureRegion::ball_union(1.0, 0.25, 0.25).unwrap();
    let csv = k.boundary_csv(64).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "# region=ball_union params=gamma=1 c0=0.25 c1=0.25");
    assert_eq!(lines[1], "re,im");
    assert_eq!(lines.len(), 2 + 64 + 1);
    assert_eq!(lines[2], lines[lines.len() - 1]);
}

#[test]
fn serde_round_trip() {
    let k = EnclosureRegion::ball_union(1.0, 0.25, 0.25).unwrap();
    let text = serde_json::to_string(&k).unwrap();
    assert!(text.contains("ball_union"));
    let back: EnclosureRegion = serde_json::from_str(&text).unwrap();
    assert_eq!(k, back);
}

#[test]
fn neighborhood_variants() {
    let discs = Neighborhood::Discs(vec![
        krein::regions::Disc {
            center: z(0.0, 0.0),
            radius: 1.0,
        },
        krein::regions::Disc {
            center: z(3.0, 0.0),
            radius: 0.5,
        },
    ]);
    assert!(discs.contains(z(0.5, 0.5)));
    assert!(discs.contains(z(3.2, 0.0)));
    assert!(!discs.contains(z(2.0, 0.0)));

    let region = Neighborhood::Region(
        EnclosureRegion::capsule(-1.0, 1.0, 0.5)
            .unwrap()
            .dilate(1.2)
            .unwrap(),
    );
    assert!(region.contains(z(1.5, 0.0)));
    assert!(!region.contains(z(1.7, 0.0)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Membership from the clipped-stationary-point formula agrees with a
    /// dense scan of the quadratic over the parameter interval.
    #[test]
    fn ball_union_membership_matches_grid(
        gamma in 0.05f64..3.0,
        c0 in 0.0f64..2.0,
        c1 in 0.0f64..2.0,
        x in -4.0f64..4.0,
        y in -3.0f64..3.0,
    ) {
        let k = EnclosureRegion::ball_union(gamma, c0, c1).unwrap();
        let n = 200_000usize;
        let mut grid_min = f64::INFINITY;
        for i in 0..=n {
            let t = -gamma + 2.0 * gamma * i as f64 / n as f64;
            let q = (x - t) * (x - t) + y * y - c0 - c1 * t * t;
            grid_min = grid_min.min(q);
        }
        let scale = (1.0 + x.abs() + gamma) * (1.0 + x.abs() + gamma);
        prop_assume!(grid_min.abs() > 1e-3 * scale);
        prop_assert_eq!(k.contains(Complex64::new(x, y)), grid_min <= 0.0);
    }

    /// The signed margin agrees with a brute-force distance scan.
    #[test]
    fn ball_union_margin_matches_grid(
        gamma in 0.05f64..3.0,
        c0 in 0.001f64..2.0,
        c1 in 0.0f64..0.95,
        x in -4.0f64..4.0,
        y in -3.0f64..3.0,
    ) {
        let k = EnclosureRegion::ball_union(gamma, c0, c1).unwrap();
        let n = 20_000usize;
        let mut grid_min = f64::INFINITY;
        for i in 0..=n {
            let t = -gamma + 2.0 * gamma * i as f64 / n as f64;
            let g = ((x - t).hypot(y)) - (c0 + c1 * t * t).sqrt();
            grid_min = grid_min.min(g);
        }
        let m = k.signed_margin(Complex64::new(x, y));
        prop_assert!(m <= grid_min + 1e-9);
        prop_assert!(m >= grid_min - 1e-4 * (1.0 + gamma + x.abs()));
    }

    /// Dilation keeps every member point a member.
    #[test]
    fn dilation_is_monotone(
        gamma in 0.05f64..2.0,
        c0 in 0.001f64..1.0,
        c1 in 0.0f64..0.9,
        x in -3.0f64..3.0,
        y in -2.0f64..2.0,
        factor in 1.0f64..3.0,
    ) {
        let k = EnclosureRegion::ball_union(gamma, c0, c1).unwrap();
        let zz = Complex64::new(x, y);
        if k.contains(zz) {
            prop_assert!(k.dilate(factor).unwrap().contains(zz));
        }
    }
}

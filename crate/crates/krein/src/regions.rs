//! Compact enclosure regions in the complex plane and the open
//! neighborhoods used by local non-negativity analyses.
//!
//! Two region shapes cover every bound produced by the perturbation module:
//! capsules (all points within distance `r` of a real segment `[p, q]`) and
//! ball unions (the union of discs `B(t, sqrt(c0 + c1 t^2))` over a real
//! parameter `t` in `[-gamma, gamma]`). Both store their defining parameters
//! so reports and CSV exports stay exact.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum RegionError {
    #[error("empty region has no boundary")]
    EmptyRegion,
    #[error("need at least {min} boundary samples, got {got}")]
    BadCount { min: usize, got: usize },
    #[error("dilation factor must be >= 1, got {0}")]
    BadFactor(f64),
    #[error("invalid region parameters: {0}")]
    InvalidParams(String),
    #[error("boundary sampling unsupported: {0}")]
    UnsupportedShape(String),
}

/// A compact region of the complex plane, symmetric about the real axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnclosureRegion {
    /// Points within distance `r` of the real segment `[p, q]`.
    Capsule { p: f64, q: f64, r: f64 },
    /// Union of discs centered at real `t` in `[-gamma, gamma]` with radius
    /// `sqrt(c0 + c1 t^2)`.
    BallUnion { gamma: f64, c0: f64, c1: f64 },
    /// The empty region; every point is outside.
    Empty,
}

impl EnclosureRegion {
    pub fn capsule(p: f64, q: f64, r: f64) -> Result<Self, RegionError> {
        if !(p.is_finite() && q.is_finite() && r.is_finite()) || p > q || r < 0.0 {
            return Err(RegionError::InvalidParams(format!(
                "capsule needs p <= q and r >= 0, got p={p}, q={q}, r={r}"
            )));
        }
        Ok(EnclosureRegion::Capsule { p, q, r })
    }

    pub fn ball_union(gamma: f64, c0: f64, c1: f64) -> Result<Self, RegionError> {
        if !(gamma.is_finite() && c0.is_finite() && c1.is_finite())
            || gamma < 0.0
            || c0 < 0.0
            || c1 < 0.0
        {
            return Err(RegionError::InvalidParams(format!(
                "ball union needs gamma, c0, c1 >= 0, got gamma={gamma}, c0={c0}, c1={c1}"
            )));
        }
        Ok(EnclosureRegion::BallUnion { gamma, c0, c1 })
    }

    pub fn label(&self) -> &'static str {
        match self {
            EnclosureRegion::Capsule { .. } => "capsule",
            EnclosureRegion::BallUnion { .. } => "ball_union",
            EnclosureRegion::Empty => "empty",
        }
    }

    /// Exact membership test (boundary counts as inside).
    pub fn contains(&self, z: Complex64) -> bool {
        match self {
            EnclosureRegion::Capsule { .. } => self.signed_margin(z) <= 0.0,
            EnclosureRegion::BallUnion { .. } => self.ball_union_form_min(z.re, z.im) <= 0.0,
            EnclosureRegion::Empty => false,
        }
    }

    /// Signed distance proxy to the boundary: negative inside, positive
    /// outside, and close to the Euclidean distance near the boundary.
    pub fn signed_margin(&self, z: Complex64) -> f64 {
        match *self {
            EnclosureRegion::Capsule { p, q, r } => {
                let dx = (p - z.re).max(z.re - q).max(0.0);
                (dx.hypot(z.im)) - r
            }
            EnclosureRegion::BallUnion { gamma, c0, c1 } => {
                ball_union_margin(z.re, z.im, gamma, c0, c1)
            }
            EnclosureRegion::Empty => f64::INFINITY,
        }
    }

    /// Minimum over `t` of `(x - t)^2 + y^2 - c0 - c1 t^2`, the quadratic
    /// whose sign decides ball-union membership.
    ///
    /// For `c1 < 1` the quadratic is convex in `t` and the minimum sits at
    /// the stationary point `t* = x / (1 - c1)` clipped to `[-gamma, gamma]`;
    /// otherwise it is attained at an endpoint. Endpoints are evaluated in
    /// both cases.
    fn ball_union_form_min(&self, x: f64, y: f64) -> f64 {
        let EnclosureRegion::BallUnion { gamma, c0, c1 } = *self else {
            unreachable!("caller matched the variant");
        };
        let eval = |t: f64| {
            let dx = x - t;
            dx * dx + y * y - c0 - c1 * t * t
        };
        let mut best = eval(gamma).min(eval(-gamma));
        let lead = 1.0 - c1;
        if lead > 0.0 {
            let t_star = (x / lead).clamp(-gamma, gamma);
            best = best.min(eval(t_star));
        }
        best
    }

    /// Grow the region by a factor `>= 1`. The result contains the original
    /// pointwise: capsules keep their segment and scale `r`, ball unions
    /// scale `gamma` and `c0` (by the squared factor) and keep `c1`.
    pub fn dilate(&self, factor: f64) -> Result<EnclosureRegion, RegionError> {
        if !(factor >= 1.0) || !factor.is_finite() {
            return Err(RegionError::BadFactor(factor));
        }
        Ok(match *self {
            EnclosureRegion::Capsule { p, q, r } => EnclosureRegion::Capsule {
                p,
                q,
                r: r * factor,
            },
            EnclosureRegion::BallUnion { gamma, c0, c1 } => EnclosureRegion::BallUnion {
                gamma: gamma * factor,
                c0: c0 * factor * factor,
                c1,
            },
            EnclosureRegion::Empty => EnclosureRegion::Empty,
        })
    }

    pub fn diameter(&self) -> f64 {
        match *self {
            EnclosureRegion::Capsule { p, q, r } => (q - p) + 2.0 * r,
            EnclosureRegion::BallUnion { gamma, c0, c1 } => {
                2.0 * (gamma + (c0 + c1 * gamma * gamma).sqrt())
            }
            EnclosureRegion::Empty => 0.0,
        }
    }

    /// Axis-aligned bounding box `(re_min, re_max, im_min, im_max)`.
    pub fn bounding_box(&self) -> (f64, f64, f64, f64) {
        match *self {
            EnclosureRegion::Capsule { p, q, r } => (p - r, q + r, -r, r),
            EnclosureRegion::BallUnion { gamma, c0, c1 } => {
                let r_end = (c0 + c1 * gamma * gamma).sqrt();
                (-gamma - r_end, gamma + r_end, -r_end, r_end)
            }
            EnclosureRegion::Empty => (0.0, 0.0, 0.0, 0.0),
        }
    }

    /// `count` boundary points ordered counterclockwise.
    ///
    /// The loop closes cyclically (the first point is not repeated). Each
    /// returned point satisfies `contains`, and moving it outward along the
    /// local normal by `1e-6 * diameter` leaves the region; both properties
    /// are checked before returning. Ball unions require `c1 < 1` so the
    /// boundary envelope exists.
    pub fn boundary_samples(&self, count: usize) -> Result<Vec<Complex64>, RegionError> {
        if count < 4 {
            return Err(RegionError::BadCount { min: 4, got: count });
        }
        let diam = self.diameter();
        if diam == 0.0 {
            // Degenerate single point: the boundary is the point itself.
            let z = match *self {
                EnclosureRegion::Capsule { p, .. } => Complex64::new(p, 0.0),
                EnclosureRegion::BallUnion { .. } => Complex64::new(0.0, 0.0),
                EnclosureRegion::Empty => return Err(RegionError::EmptyRegion),
            };
            return Ok(vec![z; count]);
        }
        let poly = self.boundary_polyline(count.max(1024) * 4)?;
        let samples = resample_closed(&poly, count);
        let nudge = 1e-9 * diam;
        let delta = 1e-6 * diam;
        let mut out = Vec::with_capacity(count);
        for (x, y) in samples {
            // Project the resampled point back onto the exact boundary and
            // read the outward normal off the nearest disc or segment; the
            // region is not convex in general, so chord points can fall
            // slightly outside.
            let (bx, by, nx, ny) = match *self {
                EnclosureRegion::Capsule { p, q, r } => {
                    if r == 0.0 {
                        // Flat segment: points are exact already.
                        out.push(Complex64::new(x, y));
                        continue;
                    }
                    let sx = x.clamp(p, q);
                    let (dx, dy) = (x - sx, y);
                    let len = dx.hypot(dy);
                    let (nx, ny) = if len > 0.0 {
                        (dx / len, dy / len)
                    } else {
                        (0.0, 1.0)
                    };
                    (sx + r * nx, r * ny, nx, ny)
                }
                EnclosureRegion::BallUnion { gamma, c0, c1 } => {
                    let (_, t_star) = ball_union_nearest(x, y, gamma, c0, c1);
                    let r = (c0 + c1 * t_star * t_star).sqrt();
                    let (dx, dy) = (x - t_star, y);
                    let len = dx.hypot(dy);
                    let (nx, ny) = if len > 0.0 {
                        (dx / len, dy / len)
                    } else {
                        (0.0, 1.0)
                    };
                    (t_star + r * nx, r * ny, nx, ny)
                }
                EnclosureRegion::Empty => return Err(RegionError::EmptyRegion),
            };
            let z = Complex64::new(bx - nudge * nx, by - nudge * ny);
            let z_out = Complex64::new(z.re + delta * nx, z.im + delta * ny);
            if !self.contains(z) || self.contains(z_out) {
                return Err(RegionError::UnsupportedShape(format!(
                    "boundary sample validation failed at ({bx}, {by})"
                )));
            }
            out.push(z);
        }
        Ok(out)
    }

    /// Dense counterclockwise polyline along the exact boundary.
    fn boundary_polyline(&self, nodes: usize) -> Result<Vec<(f64, f64)>, RegionError> {
        match *self {
            EnclosureRegion::Empty => Err(RegionError::EmptyRegion),
            EnclosureRegion::Capsule { p, q, r } => {
                let mut pts = Vec::with_capacity(nodes);
                if r == 0.0 {
                    // Degenerate segment: top pass and return pass.
                    let half = nodes / 2;
                    for k in 0..half {
                        let s = k as f64 / half as f64;
                        pts.push((q + (p - q) * s, 0.0));
                    }
                    for k in 0..(nodes - half) {
                        let s = k as f64 / (nodes - half) as f64;
                        pts.push((p + (q - p) * s, 0.0));
                    }
                    return Ok(pts);
                }
                let quarter = nodes / 4;
                // Right cap, bottom to top.
                for k in 0..quarter {
                    let th = -std::f64::consts::FRAC_PI_2
                        + std::f64::consts::PI * k as f64 / quarter as f64;
                    pts.push((q + r * th.cos(), r * th.sin()));
                }
                // Top edge, right to left.
                for k in 0..quarter {
                    let s = k as f64 / quarter as f64;
                    pts.push((q + (p - q) * s, r));
                }
                // Left cap, top to bottom.
                for k in 0..quarter {
                    let th = std::f64::consts::FRAC_PI_2
                        + std::f64::consts::PI * k as f64 / quarter as f64;
                    pts.push((p + r * th.cos(), r * th.sin()));
                }
                // Bottom edge, left to right.
                let rest = nodes - 3 * quarter;
                for k in 0..rest {
                    let s = k as f64 / rest as f64;
                    pts.push((p + (q - p) * s, -r));
                }
                Ok(pts)
            }
            EnclosureRegion::BallUnion { gamma, c0, c1 } => {
                if c1 >= 1.0 {
                    return Err(RegionError::UnsupportedShape(format!(
                        "ball-union boundary needs c1 < 1, got c1={c1}"
                    )));
                }
                if gamma == 0.0 {
                    let r = c0.sqrt();
                    let mut pts = Vec::with_capacity(nodes);
                    for k in 0..nodes {
                        let th = 2.0 * std::f64::consts::PI * k as f64 / nodes as f64;
                        pts.push((r * th.cos(), r * th.sin()));
                    }
                    return Ok(pts);
                }
                // Envelope of the disc family: x = (1 - c1) t,
                // y^2 = c0 + c1 (1 - c1) t^2, plus end caps at t = +-gamma.
                let r_end = (c0 + c1 * gamma * gamma).sqrt();
                let x_tan = (1.0 - c1) * gamma;
                let y_tan = (c0 + c1 * (1.0 - c1) * gamma * gamma).sqrt();
                // Tangency angle seen from the end-cap center (gamma, 0).
                let th_tan = (y_tan).atan2(x_tan - gamma);
                let quarter = nodes / 4;
                let mut pts = Vec::with_capacity(nodes);
                // Right cap from the lower tangency point through the real
                // axis up to the upper one.
                for k in 0..quarter {
                    let th = -th_tan + 2.0 * th_tan * k as f64 / quarter as f64;
                    pts.push((gamma + r_end * th.cos(), r_end * th.sin()));
                }
                // Upper envelope, t from gamma to -gamma.
                for k in 0..quarter {
                    let t = gamma - 2.0 * gamma * k as f64 / quarter as f64;
                    let y = (c0 + c1 * (1.0 - c1) * t * t).sqrt();
                    pts.push(((1.0 - c1) * t, y));
                }
                // Left cap through the leftmost point.
                for k in 0..quarter {
                    let th = (std::f64::consts::PI - th_tan)
                        + 2.0 * th_tan * k as f64 / quarter as f64;
                    pts.push((-gamma + r_end * th.cos(), r_end * th.sin()));
                }
                // Lower envelope, t from -gamma to gamma.
                let rest = nodes - 3 * quarter;
                for k in 0..rest {
                    let t = -gamma + 2.0 * gamma * k as f64 / rest as f64;
                    let y = (c0 + c1 * (1.0 - c1) * t * t).sqrt();
                    pts.push(((1.0 - c1) * t, -y));
                }
                Ok(pts)
            }
        }
    }

    /// CSV rendering of the boundary: a comment header with the region
    /// parameters, a `re,im` column header, and the loop closed by
    /// repeating the first point.
    pub fn boundary_csv(&self, count: usize) -> Result<String, RegionError> {
        let samples = self.boundary_samples(count)?;
        let mut out = String::new();
        out.push_str(&format!("# region={} params={}\n", self.label(), self.params_string()));
        out.push_str("re,im\n");
        for z in &samples {
            out.push_str(&format!("{},{}\n", z.re, z.im));
        }
        if let Some(first) = samples.first() {
            out.push_str(&format!("{},{}\n", first.re, first.im));
        }
        Ok(out)
    }

    pub fn params_string(&self) -> String {
        match *self {
            EnclosureRegion::Capsule { p, q, r } => format!("p={p} q={q} r={r}"),
            EnclosureRegion::BallUnion { gamma, c0, c1 } => {
                format!("gamma={gamma} c0={c0} c1={c1}")
            }
            EnclosureRegion::Empty => String::from("-"),
        }
    }
}

/// Signed margin for a ball union: `min_t (|z - t| - r(t))` over the
/// parameter interval, computed by a coarse scan plus golden-section
/// refinement.
fn ball_union_margin(x: f64, y: f64, gamma: f64, c0: f64, c1: f64) -> f64 {
    ball_union_nearest(x, y, gamma, c0, c1).0
}

/// Margin together with the minimizing parameter `t`.
fn ball_union_nearest(x: f64, y: f64, gamma: f64, c0: f64, c1: f64) -> (f64, f64) {
    let g = |t: f64| ((x - t).hypot(y)) - (c0 + c1 * t * t).sqrt();
    if gamma == 0.0 {
        return (g(0.0), 0.0);
    }
    let grid = 257;
    let mut best_t = -gamma;
    let mut best = g(-gamma);
    for k in 1..=grid {
        let t = -gamma + 2.0 * gamma * k as f64 / grid as f64;
        let v = g(t);
        if v < best {
            best = v;
            best_t = t;
        }
    }
    let h = 2.0 * gamma / grid as f64;
    let (mut lo, mut hi) = ((best_t - h).max(-gamma), (best_t + h).min(gamma));
    let phi = 0.5 * (3.0 - 5.0_f64.sqrt());
    for _ in 0..80 {
        let d = hi - lo;
        if d <= 1e-14 * (1.0 + gamma) {
            break;
        }
        let a = lo + phi * d;
        let b = hi - phi * d;
        if g(a) <= g(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    let t = 0.5 * (lo + hi);
    if g(t) < best {
        (g(t), t)
    } else {
        (best, best_t)
    }
}

/// Resample a closed polyline to `count` points uniformly by arc length.
fn resample_closed(poly: &[(f64, f64)], count: usize) -> Vec<(f64, f64)> {
    let n = poly.len();
    let mut cum = Vec::with_capacity(n + 1);
    cum.push(0.0);
    for i in 0..n {
        let (x0, y0) = poly[i];
        let (x1, y1) = poly[(i + 1) % n];
        cum.push(cum[i] + (x1 - x0).hypot(y1 - y0));
    }
    let total = *cum.last().expect("nonempty polyline");
    let mut out = Vec::with_capacity(count);
    let mut seg = 0usize;
    for k in 0..count {
        let target = total * k as f64 / count as f64;
        while seg + 1 < n && cum[seg + 1] < target {
            seg += 1;
        }
        let seg_len = cum[seg + 1] - cum[seg];
        let s = if seg_len > 0.0 {
            (target - cum[seg]) / seg_len
        } else {
            0.0
        };
        let (x0, y0) = poly[seg];
        let (x1, y1) = poly[(seg + 1) % n];
        out.push((x0 + (x1 - x0) * s, y0 + (y1 - y0) * s));
    }
    out
}

/// A bounded open neighborhood of part of the spectrum.
///
/// `signed_margin` is a distance proxy: exact for a single component,
/// and a safe underestimate of the distance to the boundary for unions.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Neighborhood {
    Discs(Vec<Disc>),
    Rects(Vec<Rect>),
    /// The interior of an enclosure region (typically a dilated one).
    Region(EnclosureRegion),
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Disc {
    pub center: Complex64,
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Rect {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Neighborhood {
    pub fn disc(center: Complex64, radius: f64) -> Self {
        Neighborhood::Discs(vec![Disc { center, radius }])
    }

    /// Negative inside the (open) neighborhood, positive outside.
    pub fn signed_margin(&self, z: Complex64) -> f64 {
        match self {
            Neighborhood::Discs(ds) => ds
                .iter()
                .map(|d| (z - d.center).norm() - d.radius)
                .fold(f64::INFINITY, f64::min),
            Neighborhood::Rects(rs) => rs
                .iter()
                .map(|r| {
                    let dx = (r.re_min - z.re).max(z.re - r.re_max);
                    let dy = (r.im_min - z.im).max(z.im - r.im_max);
                    if dx <= 0.0 && dy <= 0.0 {
                        dx.max(dy)
                    } else {
                        dx.max(0.0).hypot(dy.max(0.0))
                    }
                })
                .fold(f64::INFINITY, f64::min),
            Neighborhood::Region(region) => region.signed_margin(z),
        }
    }

    /// Interior membership (strictly inside).
    pub fn contains(&self, z: Complex64) -> bool {
        self.signed_margin(z) < 0.0
    }

    pub fn describe(&self) -> String {
        match self {
            Neighborhood::Discs(ds) => format!("{} disc(s)", ds.len()),
            Neighborhood::Rects(rs) => format!("{} rectangle(s)", rs.len()),
            Neighborhood::Region(r) => format!("interior of {} ({})", r.label(), r.params_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capsule_rejects_bad_params() {
        assert!(EnclosureRegion::capsule(1.0, -1.0, 0.5).is_err());
        assert!(EnclosureRegion::capsule(-1.0, 1.0, -0.5).is_err());
        assert!(EnclosureRegion::ball_union(-1.0, 0.1, 0.1).is_err());
    }

    #[test]
    fn empty_region_behaviour() {
        let e = EnclosureRegion::Empty;
        assert!(!e.contains(Complex64::new(0.0, 0.0)));
        assert_eq!(e.signed_margin(Complex64::new(1.0, 1.0)), f64::INFINITY);
        assert!(e.boundary_samples(16).is_err());
        assert_eq!(e.dilate(2.0).unwrap(), EnclosureRegion::Empty);
    }

    #[test]
    fn neighborhood_rect_margin() {
        let nb = Neighborhood::Rects(vec![Rect {
            re_min: -1.0,
            re_max: 1.0,
            im_min: -0.5,
            im_max: 0.5,
        }]);
        assert!(nb.contains(Complex64::new(0.0, 0.0)));
        assert!(!nb.contains(Complex64::new(0.0, 0.5)));
        let m = nb.signed_margin(Complex64::new(2.0, 0.0));
        assert!((m - 1.0).abs() < 1e-12);
    }
}

//! Rate regions in the (R1, R2) plane: half-plane constraint lists with
//! extracted corner points, fixed named regions, the sender-sender
//! time-sharing region, and convex hulls of unions.

use crate::error::{Error, Result};
use crate::linalg::binary_entropy;

/// Feasibility tolerance for vertices against constraints.
const FEAS_TOL: f64 = 1e-9;
/// Two vertices closer than this are the same corner.
const TIE_TOL: f64 = 1e-12;

/// An intersection of half planes a·R1 + b·R2 ≤ c in the nonnegative
/// quadrant, with corner points extracted.
#[derive(Debug, Clone)]
pub struct RateRegion {
    constraints: Vec<(f64, f64, f64)>,
    vertices: Vec<(f64, f64)>,
}

impl RateRegion {
    /// Build from constraints; nonnegativity of both rates is implicit.
    /// The region must contain the origin.
    pub fn from_constraints(constraints: Vec<(f64, f64, f64)>) -> Result<Self> {
        if constraints.iter().any(|&(_, _, c)| c < -FEAS_TOL) {
            return Err(Error::InvalidParameter(
                "region does not contain the origin".into(),
            ));
        }
        let vertices = extract_vertices(&constraints);
        Ok(Self {
            constraints,
            vertices,
        })
    }

    pub fn constraints(&self) -> &[(f64, f64, f64)] {
        &self.constraints
    }

    /// Corner points, counterclockwise, starting at the lexicographically
    /// smallest (the origin whenever the region is full-dimensional).
    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }

    /// Whether a rate pair satisfies every constraint within `tol`.
    pub fn contains(&self, point: (f64, f64), tol: f64) -> bool {
        point.0 >= -tol
            && point.1 >= -tol
            && self
                .constraints
                .iter()
                .all(|&(a, b, c)| a * point.0 + b * point.1 <= c + tol)
    }

    /// The largest value of R1 + R2 over the corner points.
    pub fn max_rate_sum(&self) -> f64 {
        self.vertices
            .iter()
            .map(|&(x, y)| x + y)
            .fold(0.0, f64::max)
    }
}

/// Enumerate pairwise boundary intersections (including the axes), keep the
/// feasible ones, and order them counterclockwise.
fn extract_vertices(constraints: &[(f64, f64, f64)]) -> Vec<(f64, f64)> {
    let mut lines: Vec<(f64, f64, f64)> = vec![(1.0, 0.0, 0.0), (0.0, 1.0, 0.0)];
    // Axis lines are x = 0 and y = 0 written as a·x + b·y = c with c = 0.
    lines.extend(constraints.iter().copied());

    let feasible = |x: f64, y: f64| {
        x >= -FEAS_TOL
            && y >= -FEAS_TOL
            && constraints
                .iter()
                .all(|&(a, b, c)| a * x + b * y <= c + FEAS_TOL)
    };

    let mut points: Vec<(f64, f64)> = Vec::new();
    for (i, &(a1, b1, c1)) in lines.iter().enumerate() {
        for &(a2, b2, c2) in &lines[i + 1..] {
            let det = a1 * b2 - a2 * b1;
            if det.abs() < 1e-12 {
                continue;
            }
            let x = (c1 * b2 - c2 * b1) / det;
            let y = (a1 * c2 - a2 * c1) / det;
            if feasible(x, y) {
                let x = if x.abs() < TIE_TOL { 0.0 } else { x };
                let y = if y.abs() < TIE_TOL { 0.0 } else { y };
                if !points
                    .iter()
                    .any(|&(px, py)| (px - x).abs() <= TIE_TOL && (py - y).abs() <= TIE_TOL)
                {
                    points.push((x, y));
                }
            }
        }
    }

    order_counterclockwise(points)
}

fn order_counterclockwise(mut points: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    if points.len() <= 2 {
        points.sort_by(|a, b| a.partial_cmp(b).unwrap());
        return points;
    }
    let n = points.len() as f64;
    let cx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let cy = points.iter().map(|p| p.1).sum::<f64>() / n;
    points.sort_by(|a, b| {
        let ang_a = (a.1 - cy).atan2(a.0 - cx);
        let ang_b = (b.1 - cy).atan2(b.0 - cx);
        ang_a.partial_cmp(&ang_b).unwrap()
    });
    // Rotate so the lexicographically smallest corner comes first.
    let start = points
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.partial_cmp(b).unwrap())
        .map(|(i, _)| i)
        .unwrap_or(0);
    points.rotate_left(start);
    points
}

/// Amplitude α of the sender-sender resource α|00⟩ + β|11⟩ with the derived
/// entanglement entropy H(α², β²).
#[derive(Debug, Clone, Copy)]
pub struct TimeSharingParams {
    alpha: f64,
    entropy: f64,
}

impl TimeSharingParams {
    pub fn new(alpha: f64) -> Result<Self> {
        // rounding slack admits truncated decimal spellings of 1/sqrt(2)
        let lo = std::f64::consts::FRAC_1_SQRT_2;
        if !(lo - 1e-6..=1.0 + 1e-6).contains(&alpha) {
            return Err(Error::InvalidParameter(format!(
                "alpha {alpha} outside [1/sqrt(2), 1]"
            )));
        }
        let alpha = alpha.clamp(lo, 1.0);
        Ok(Self {
            alpha,
            entropy: binary_entropy(alpha * alpha),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// H(α², β²) in bits.
    pub fn entropy(&self) -> f64 {
        self.entropy
    }
}

/// Time-sharing region for sender-sender entanglement of amplitude α:
/// R1, R2 ≤ 1 + h and R1 + R2 ≤ 3/2 + h/2 with h = H(α², β²). The sum
/// bound is achievable; its converse is conjectured, not proved.
pub fn time_sharing_region(params: TimeSharingParams) -> RateRegion {
    let h = params.entropy();
    RateRegion::from_constraints(vec![
        (1.0, 0.0, 1.0 + h),
        (0.0, 1.0, 1.0 + h),
        (1.0, 1.0, 1.5 + 0.5 * h),
    ])
    .expect("constants are nonnegative")
}

/// The fixed regions of the four studied settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedRegion {
    /// Unassisted: R1, R2 ≤ 1 and R1 + R2 ≤ 3/2.
    Classical,
    /// GHZ assistance: R1, R2 ≤ 2 and R1 + R2 ≤ 5/2.
    Ghz,
    /// Two-ebit assistance under unitary encodings:
    /// R1, R2 ≤ 2 and R1 + R2 ≤ 4 − H(1/4, 3/4).
    TwoEbitUnitary,
    /// Maximal sender-sender entanglement: R1, R2, R1 + R2 ≤ 2.
    SsMaximal,
}

impl std::str::FromStr for NamedRegion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(Self::Classical),
            "ghz" => Ok(Self::Ghz),
            "two_ebit_unitary" => Ok(Self::TwoEbitUnitary),
            "ss_maximal" => Ok(Self::SsMaximal),
            other => Err(Error::InvalidParameter(format!(
                "unknown region tag {other:?}"
            ))),
        }
    }
}

pub fn named_region(tag: NamedRegion) -> RateRegion {
    let constraints = match tag {
        NamedRegion::Classical => vec![(1.0, 0.0, 1.0), (0.0, 1.0, 1.0), (1.0, 1.0, 1.5)],
        NamedRegion::Ghz => vec![(1.0, 0.0, 2.0), (0.0, 1.0, 2.0), (1.0, 1.0, 2.5)],
        NamedRegion::TwoEbitUnitary => {
            let cap = 4.0 - binary_entropy(0.25);
            vec![(1.0, 0.0, 2.0), (0.0, 1.0, 2.0), (1.0, 1.0, cap)]
        }
        NamedRegion::SsMaximal => vec![(1.0, 0.0, 2.0), (0.0, 1.0, 2.0), (1.0, 1.0, 2.0)],
    };
    RateRegion::from_constraints(constraints).expect("constants are nonnegative")
}

/// Convex hull of the union of regions, re-expressed as constraints.
pub fn convex_hull_union(regions: &[RateRegion]) -> Result<RateRegion> {
    if regions.is_empty() {
        return Err(Error::InvalidParameter("hull of no regions".into()));
    }
    let mut points: Vec<(f64, f64)> = Vec::new();
    for region in regions {
        points.extend_from_slice(region.vertices());
    }
    points.push((0.0, 0.0));
    let hull = monotone_chain(points);

    // Each counterclockwise hull edge becomes an outward half plane; edges
    // along the axes reduce to the implicit nonnegativity constraints and
    // are dropped.
    let mut constraints = Vec::new();
    let m = hull.len();
    for i in 0..m {
        let (x1, y1) = hull[i];
        let (x2, y2) = hull[(i + 1) % m];
        let (a, b) = (y2 - y1, -(x2 - x1));
        if a.hypot(b) < TIE_TOL {
            continue;
        }
        if a <= TIE_TOL && b <= TIE_TOL {
            continue; // faces the origin: an axis-side edge
        }
        let norm = a.hypot(b);
        constraints.push((a / norm, b / norm, (a * x1 + b * y1) / norm));
    }
    let vertices = order_counterclockwise(hull);
    Ok(RateRegion {
        constraints,
        vertices,
    })
}

/// Andrew's monotone chain; returns hull vertices in counterclockwise order.
fn monotone_chain(mut points: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    points.dedup_by(|a, b| (a.0 - b.0).abs() <= TIE_TOL && (a.1 - b.1).abs() <= TIE_TOL);
    if points.len() <= 2 {
        return points;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &points {
        while lower.len() >= 2
            && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= TIE_TOL
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in points.iter().rev() {
        while upper.len() >= 2
            && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= TIE_TOL
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_vertex_sets_match(actual: &[(f64, f64)], expected: &[(f64, f64)]) {
        assert_eq!(actual.len(), expected.len(), "{actual:?} vs {expected:?}");
        for e in expected {
            assert!(
                actual
                    .iter()
                    .any(|a| (a.0 - e.0).abs() < 1e-9 && (a.1 - e.1).abs() < 1e-9),
                "missing vertex {e:?} in {actual:?}"
            );
        }
    }

    #[test]
    fn classical_region_vertices() {
        let region = named_region(NamedRegion::Classical);
        assert_vertex_sets_match(
            region.vertices(),
            &[(0.0, 0.0), (1.0, 0.0), (1.0, 0.5), (0.5, 1.0), (0.0, 1.0)],
        );
        // counterclockwise from the origin
        assert_eq!(region.vertices()[0], (0.0, 0.0));
        assert!((region.vertices()[1].0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn named_region_caps() {
        assert!((named_region(NamedRegion::Ghz).max_rate_sum() - 2.5).abs() < 1e-12);
        let cap = named_region(NamedRegion::TwoEbitUnitary).max_rate_sum();
        assert!((cap - 3.188_721_875_540_867).abs() < 1e-9);
        assert!((named_region(NamedRegion::SsMaximal).max_rate_sum() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn unknown_tag_rejected() {
        assert!("pentagon".parse::<NamedRegion>().is_err());
    }

    #[test]
    fn degenerate_region_with_zero_bound() {
        let region = RateRegion::from_constraints(vec![(1.0, 0.0, 0.0), (0.0, 1.0, 1.0)]).unwrap();
        assert_vertex_sets_match(region.vertices(), &[(0.0, 0.0), (0.0, 1.0)]);
    }

    #[test]
    fn time_sharing_extremes() {
        let none = time_sharing_region(TimeSharingParams::new(1.0).unwrap());
        assert_vertex_sets_match(
            none.vertices(),
            named_region(NamedRegion::Classical).vertices(),
        );

        let maximal =
            time_sharing_region(TimeSharingParams::new(std::f64::consts::FRAC_1_SQRT_2).unwrap());
        for &(_, _, c) in maximal.constraints() {
            assert!((c - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn time_sharing_at_alpha_squared_089() {
        let params = TimeSharingParams::new(0.89f64.sqrt()).unwrap();
        assert!((params.entropy() - 0.499_915_958).abs() < 1e-6);
        let region = time_sharing_region(params);
        let caps: Vec<f64> = region.constraints().iter().map(|&(_, _, c)| c).collect();
        assert!((caps[0] - 1.499_916).abs() < 1e-5);
        assert!((caps[2] - 1.749_958).abs() < 1e-5);
    }

    #[test]
    fn time_sharing_monotone_in_entanglement() {
        let mut previous: Option<Vec<f64>> = None;
        for step in 0..=20 {
            let alpha = 1.0 - (1.0 - std::f64::consts::FRAC_1_SQRT_2) * step as f64 / 20.0;
            let region = time_sharing_region(TimeSharingParams::new(alpha).unwrap());
            let caps: Vec<f64> = region.constraints().iter().map(|&(_, _, c)| c).collect();
            if let Some(prev) = previous {
                for (now, before) in caps.iter().zip(prev) {
                    assert!(*now >= before - 1e-12);
                }
            }
            previous = Some(caps);
        }
    }

    #[test]
    fn hull_of_single_region_is_itself() {
        let region = named_region(NamedRegion::Classical);
        let hull = convex_hull_union(std::slice::from_ref(&region)).unwrap();
        assert_vertex_sets_match(hull.vertices(), region.vertices());
    }

    #[test]
    fn hull_of_two_rectangles() {
        let a = RateRegion::from_constraints(vec![(1.0, 0.0, 2.0), (0.0, 1.0, 1.0)]).unwrap();
        let b = RateRegion::from_constraints(vec![(1.0, 0.0, 1.0), (0.0, 1.0, 2.0)]).unwrap();
        let hull = convex_hull_union(&[a, b]).unwrap();
        assert_vertex_sets_match(
            hull.vertices(),
            &[(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (1.0, 2.0), (0.0, 2.0)],
        );
        assert!(hull.contains((1.4, 1.4), 1e-9));
        assert!(!hull.contains((1.8, 1.8), 1e-9));
    }
}

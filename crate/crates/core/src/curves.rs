//! Convex integration contours inside the closed unit disk.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::quadrature::adaptive::gk15;

/// Relative tolerance of the cross-product sign test, scaled by the squared diameter.
pub const CONVEXITY_TOL: f64 = 1e-9;
/// Slack allowed on `|z| ≤ 1`.
const CONTAINMENT_SLACK: f64 = 1e-12;

/// A convex contour. Serialized as `{"variant": ..., fields}` with points as `[re, im]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum ConvexCurve {
    Circle {
        center: Complex64,
        radius: f64,
    },
    Segment {
        a: Complex64,
        b: Complex64,
    },
    /// Vertices in counterclockwise order; the polygon is closed.
    Polygon {
        vertices: Vec<Complex64>,
    },
    Ellipse {
        center: Complex64,
        semi_axes: (f64, f64),
        rotation: f64,
    },
    /// Catmull–Rom spline through `nodes`.
    Parametric {
        nodes: Vec<Complex64>,
        closed: bool,
    },
}

impl ConvexCurve {
    pub fn circle(center: Complex64, radius: f64) -> Result<Self> {
        ConvexCurve::Circle { center, radius }.validated()
    }

    pub fn segment(a: Complex64, b: Complex64) -> Result<Self> {
        ConvexCurve::Segment { a, b }.validated()
    }

    /// The diameter `[−1, 1]`.
    pub fn diameter() -> Self {
        ConvexCurve::Segment { a: Complex64::new(-1.0, 0.0), b: Complex64::new(1.0, 0.0) }
    }

    /// The unit circle, used only as the right-hand-side contour.
    pub fn unit_circle() -> Self {
        ConvexCurve::Circle { center: Complex64::new(0.0, 0.0), radius: 1.0 }
    }

    pub fn polygon(vertices: Vec<Complex64>) -> Result<Self> {
        ConvexCurve::Polygon { vertices }.validated()
    }

    /// Regular polygon with `n` vertices on the circle `|z − center| = radius`.
    pub fn regular_polygon(n: usize, center: Complex64, radius: f64, phase: f64) -> Result<Self> {
        let vertices = (0..n)
            .map(|j| center + Complex64::from_polar(radius, phase + 2.0 * PI * j as f64 / n as f64))
            .collect();
        Self::polygon(vertices)
    }

    pub fn ellipse(center: Complex64, semi_axes: (f64, f64), rotation: f64) -> Result<Self> {
        ConvexCurve::Ellipse { center, semi_axes, rotation }.validated()
    }

    pub fn parametric(nodes: Vec<Complex64>, closed: bool) -> Result<Self> {
        ConvexCurve::Parametric { nodes, closed }.validated()
    }

    /// Checks geometry, containment in the closed disk, and convexity.
    pub fn validated(self) -> Result<Self> {
        let finite = |z: &Complex64| z.re.is_finite() && z.im.is_finite();
        match &self {
            ConvexCurve::Circle { center, radius } => {
                if !finite(center) || !(*radius > 0.0) {
                    return Err(LabError::domain("circle needs a finite center and radius > 0"));
                }
            }
            ConvexCurve::Segment { a, b } => {
                if !finite(a) || !finite(b) || a == b {
                    return Err(LabError::domain("segment needs two distinct finite endpoints"));
                }
            }
            ConvexCurve::Polygon { vertices } => {
                if !vertices.iter().all(finite) {
                    return Err(LabError::domain("polygon vertices must be finite"));
                }
                if !convexity_check(vertices, true)? {
                    return Err(LabError::domain("polygon is not convex"));
                }
                if signed_area(vertices) < 0.0 {
                    return Err(LabError::domain("polygon vertices must be counterclockwise"));
                }
            }
            ConvexCurve::Ellipse { center, semi_axes: (alpha, beta), rotation } => {
                if !finite(center) || !rotation.is_finite() || !(*alpha > 0.0 && *beta > 0.0) {
                    return Err(LabError::domain("ellipse needs positive semi-axes"));
                }
            }
            ConvexCurve::Parametric { nodes, closed } => {
                if !nodes.iter().all(finite) {
                    return Err(LabError::domain("parametric nodes must be finite"));
                }
                if !convexity_check(nodes, *closed)? {
                    return Err(LabError::domain("parametric node list is not convex"));
                }
            }
        }
        let margin = containment_margin(&self);
        if margin < -CONTAINMENT_SLACK {
            return Err(LabError::domain(format!("curve leaves the closed unit disk (margin {margin:e})")));
        }
        Ok(self)
    }

    pub fn is_closed(&self) -> bool {
        match self {
            ConvexCurve::Segment { .. } => false,
            ConvexCurve::Parametric { closed, .. } => *closed,
            _ => true,
        }
    }

    /// True for `Circle{0, 1}`.
    pub fn is_unit_circle(&self) -> bool {
        matches!(self, ConvexCurve::Circle { center, radius }
            if center.norm() < CONTAINMENT_SLACK && (radius - 1.0).abs() < CONTAINMENT_SLACK)
    }

    pub fn length(&self) -> f64 {
        arc_panels(self, 0.25).iter().map(Panel::length).sum()
    }

    /// The same curve multiplied by `e^{iα}`.
    pub fn rotated(&self, alpha: f64) -> Self {
        let w = Complex64::from_polar(1.0, alpha);
        match self {
            ConvexCurve::Circle { center, radius } => {
                ConvexCurve::Circle { center: center * w, radius: *radius }
            }
            ConvexCurve::Segment { a, b } => ConvexCurve::Segment { a: a * w, b: b * w },
            ConvexCurve::Polygon { vertices } => {
                ConvexCurve::Polygon { vertices: vertices.iter().map(|v| v * w).collect() }
            }
            ConvexCurve::Ellipse { center, semi_axes, rotation } => {
                ConvexCurve::Ellipse { center: center * w, semi_axes: *semi_axes, rotation: rotation + alpha }
            }
            ConvexCurve::Parametric { nodes, closed } => {
                ConvexCurve::Parametric { nodes: nodes.iter().map(|v| v * w).collect(), closed: *closed }
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            ConvexCurve::Circle { center, radius } => {
                format!("circle({:.6}{:+.6}i;{:.6})", center.re, center.im, radius)
            }
            ConvexCurve::Segment { a, b } => {
                format!("segment({:.6}{:+.6}i;{:.6}{:+.6}i)", a.re, a.im, b.re, b.im)
            }
            ConvexCurve::Polygon { vertices } => format!("polygon({})", vertices.len()),
            ConvexCurve::Ellipse { center, semi_axes, rotation } => format!(
                "ellipse({:.6}{:+.6}i;{:.6},{:.6};{:.6})",
                center.re, center.im, semi_axes.0, semi_axes.1, rotation
            ),
            ConvexCurve::Parametric { nodes, closed } => {
                format!("parametric({},{})", nodes.len(), if *closed { "closed" } else { "open" })
            }
        }
    }

    /// Dense samples along the curve (including vertices for polygons).
    pub fn sample_points(&self, per_panel: usize) -> Vec<Complex64> {
        let mut out = Vec::new();
        for p in arc_panels(self, 0.05) {
            for j in 0..=per_panel {
                let t = p.t0 + (p.t1 - p.t0) * j as f64 / per_panel as f64;
                out.push(p.point(t));
            }
        }
        out
    }
}

fn cross(u: Complex64, v: Complex64) -> f64 {
    u.re * v.im - u.im * v.re
}

fn signed_area(vertices: &[Complex64]) -> f64 {
    let n = vertices.len();
    0.5 * (0..n).map(|i| cross(vertices[i], vertices[(i + 1) % n])).sum::<f64>()
}

/// Sign test on consecutive edge cross products plus a total-turning bound
/// (`2π` for closed point lists, `π` for open ones). Repeated points are skipped.
pub fn convexity_check(points: &[Complex64], closed: bool) -> Result<bool> {
    let need = if closed { 3 } else { 2 };
    if points.len() < need {
        return Err(LabError::domain(format!(
            "convexity check needs at least {need} points (got {})",
            points.len()
        )));
    }
    let mut pts: Vec<Complex64> = Vec::with_capacity(points.len());
    for &p in points {
        if pts.last() != Some(&p) {
            pts.push(p);
        }
    }
    if closed && pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    let n = pts.len();
    let diameter = pts.iter().flat_map(|a| pts.iter().map(move |b| (a - b).norm())).fold(0.0, f64::max);
    let tol = CONVEXITY_TOL * diameter * diameter;

    let edges: Vec<Complex64> = if closed {
        (0..n).map(|i| pts[(i + 1) % n] - pts[i]).collect()
    } else {
        (0..n.saturating_sub(1)).map(|i| pts[i + 1] - pts[i]).collect()
    };
    let pairs: Vec<(Complex64, Complex64)> = if closed {
        (0..edges.len()).map(|i| (edges[i], edges[(i + 1) % edges.len()])).collect()
    } else {
        edges.windows(2).map(|w| (w[0], w[1])).collect()
    };

    let (mut neg, mut pos) = (false, false);
    let mut turning = 0.0;
    for (u, v) in pairs {
        let c = cross(u, v);
        if c < -tol {
            neg = true;
        }
        if c > tol {
            pos = true;
        }
        turning += (v / u).arg().abs();
    }
    let limit = if closed { 2.0 * PI } else { PI };
    Ok(!(neg && pos) && turning <= limit + 1e-9)
}

/// `1 − max |z|` over the curve.
pub fn containment_margin(curve: &ConvexCurve) -> f64 {
    let max_modulus = match curve {
        ConvexCurve::Circle { center, radius } => center.norm() + radius,
        ConvexCurve::Segment { a, b } => a.norm().max(b.norm()),
        ConvexCurve::Polygon { vertices } => vertices.iter().map(|v| v.norm()).fold(0.0, f64::max),
        _ => {
            // smooth curves: dense sampling then local golden-section polish
            let panels = arc_panels(curve, 0.05);
            let mut best = 0.0f64;
            for p in &panels {
                let g = |t: f64| p.point(t).norm();
                let k = 16;
                let h = (p.t1 - p.t0) / k as f64;
                let (mut arg, mut val) = (p.t0, g(p.t0));
                for j in 1..=k {
                    let t = p.t0 + j as f64 * h;
                    if g(t) > val {
                        (arg, val) = (t, g(t));
                    }
                }
                let lo = (arg - h).max(p.t0);
                let hi = (arg + h).min(p.t1);
                best = best.max(val).max(golden(&g, lo, hi));
            }
            best
        }
    };
    1.0 - max_modulus
}

fn golden(g: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    const R: f64 = 0.618_033_988_749_894_9;
    for _ in 0..60 {
        let c = b - R * (b - a);
        let d = a + R * (b - a);
        if g(c) > g(d) {
            b = d;
        } else {
            a = c;
        }
    }
    g(0.5 * (a + b))
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum PanelGeom {
    /// `center + radius·e^{it}`
    Arc { center: Complex64, radius: f64 },
    /// `a + (b − a)·t`, `t ∈ [0, 1]`
    Line { a: Complex64, b: Complex64 },
    /// `center + e^{iφ}(α cos t + iβ sin t)`
    Ellipse { center: Complex64, alpha: f64, beta: f64, rotation: Complex64 },
    /// Catmull–Rom between `p1` and `p2`, `t ∈ [0, 1]`
    Spline { p0: Complex64, p1: Complex64, p2: Complex64, p3: Complex64 },
}

/// A parameter interval of one smooth piece of a curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Panel {
    pub t0: f64,
    pub t1: f64,
    geom: PanelGeom,
}

impl Panel {
    pub fn point(&self, t: f64) -> Complex64 {
        match self.geom {
            PanelGeom::Arc { center, radius } => center + Complex64::from_polar(radius, t),
            PanelGeom::Line { a, b } => a + (b - a) * t,
            PanelGeom::Ellipse { center, alpha, beta, rotation } => {
                center + rotation * Complex64::new(alpha * t.cos(), beta * t.sin())
            }
            PanelGeom::Spline { p0, p1, p2, p3 } => {
                let t2 = t * t;
                let t3 = t2 * t;
                0.5 * (2.0 * p1
                    + (p2 - p0) * t
                    + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t2
                    + (3.0 * p1 - p0 - 3.0 * p2 + p3) * t3)
            }
        }
    }

    pub fn velocity(&self, t: f64) -> Complex64 {
        match self.geom {
            PanelGeom::Arc { radius, .. } => Complex64::new(0.0, radius) * Complex64::from_polar(1.0, t),
            PanelGeom::Line { a, b } => b - a,
            PanelGeom::Ellipse { alpha, beta, rotation, .. } => {
                rotation * Complex64::new(-alpha * t.sin(), beta * t.cos())
            }
            PanelGeom::Spline { p0, p1, p2, p3 } => {
                0.5 * ((p2 - p0)
                    + 2.0 * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t
                    + 3.0 * (3.0 * p1 - p0 - 3.0 * p2 + p3) * t * t)
            }
        }
    }

    /// `|dz/dt|`
    pub fn speed(&self, t: f64) -> f64 {
        self.velocity(t).norm()
    }

    pub fn length(&self) -> f64 {
        match self.geom {
            PanelGeom::Arc { radius, .. } => radius * (self.t1 - self.t0),
            PanelGeom::Line { a, b } => (b - a).norm() * (self.t1 - self.t0),
            _ => {
                let (v, _) = gk15(&|t| self.speed(t), self.t0, self.t1);
                let (v1, _) = gk15(&|t| self.speed(t), self.t0, 0.5 * (self.t0 + self.t1));
                let (v2, _) = gk15(&|t| self.speed(t), 0.5 * (self.t0 + self.t1), self.t1);
                if (v1 + v2 - v).abs() < 1e-13 {
                    v
                } else {
                    v1 + v2
                }
            }
        }
    }
}

fn split(geom: PanelGeom, t0: f64, t1: f64, approx_len: f64, max_len: f64, min_count: usize) -> Vec<Panel> {
    let k = ((approx_len / max_len).ceil() as usize).max(min_count).max(1);
    (0..k)
        .map(|j| Panel {
            t0: t0 + (t1 - t0) * j as f64 / k as f64,
            t1: if j + 1 == k { t1 } else { t0 + (t1 - t0) * (j + 1) as f64 / k as f64 },
            geom,
        })
        .collect()
}

/// Splits the curve into smooth panels no longer than `max_len` (closed smooth curves get
/// at least 8). The panels cover the curve exactly once, in order.
pub fn arc_panels(curve: &ConvexCurve, max_len: f64) -> Vec<Panel> {
    match curve {
        ConvexCurve::Circle { center, radius } => split(
            PanelGeom::Arc { center: *center, radius: *radius },
            0.0,
            2.0 * PI,
            2.0 * PI * radius,
            max_len,
            8,
        ),
        ConvexCurve::Segment { a, b } => {
            split(PanelGeom::Line { a: *a, b: *b }, 0.0, 1.0, (b - a).norm(), max_len, 1)
        }
        ConvexCurve::Polygon { vertices } => {
            let n = vertices.len();
            (0..n)
                .flat_map(|i| {
                    let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                    split(PanelGeom::Line { a, b }, 0.0, 1.0, (b - a).norm(), max_len, 1)
                })
                .collect()
        }
        ConvexCurve::Ellipse { center, semi_axes: (alpha, beta), rotation } => {
            let geom = PanelGeom::Ellipse {
                center: *center,
                alpha: *alpha,
                beta: *beta,
                rotation: Complex64::from_polar(1.0, *rotation),
            };
            split(geom, 0.0, 2.0 * PI, 2.0 * PI * alpha.max(*beta), max_len, 8)
        }
        ConvexCurve::Parametric { nodes, closed } => {
            let n = nodes.len();
            let count = if *closed { n } else { n - 1 };
            let at = |i: isize| -> Complex64 {
                if *closed {
                    nodes[i.rem_euclid(n as isize) as usize]
                } else if i < 0 {
                    // reflect the first node so the end tangent follows the first chord
                    2.0 * nodes[0] - nodes[1]
                } else if i as usize >= n {
                    2.0 * nodes[n - 1] - nodes[n - 2]
                } else {
                    nodes[i as usize]
                }
            };
            (0..count as isize)
                .flat_map(|i| {
                    let geom = PanelGeom::Spline { p0: at(i - 1), p1: at(i), p2: at(i + 1), p3: at(i + 2) };
                    split(geom, 0.0, 1.0, (at(i + 1) - at(i)).norm() * 1.2, max_len, 1)
                })
                .collect()
        }
    }
}

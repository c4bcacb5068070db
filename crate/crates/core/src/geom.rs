//! Complex-plane primitives: polyline slits, hulls, affine images and the
//! logarithmic / exponential transforms between the disk and half-plane
//! pictures.
//!
//! A half-plane slit is attached to the real axis at `base` and its vertices
//! lie strictly in the upper half-plane. A disk slit is attached to the unit
//! circle and its vertices lie in the punctured open disk.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::{Error, Result};

pub type ComplexPoint = Complex64;

/// Which picture a slit lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    HalfPlane,
    Disk,
}

impl Chart {
    pub fn as_str(self) -> &'static str {
        match self {
            Chart::HalfPlane => "half-plane",
            Chart::Disk => "disk",
        }
    }
}

/// A slit given by an ordered vertex chain starting from a boundary point.
#[derive(Debug, Clone, PartialEq)]
pub struct PolylineSlit {
    chart: Chart,
    base: ComplexPoint,
    vertices: Vec<ComplexPoint>,
}

impl PolylineSlit {
    /// Slit in the upper half-plane attached at the real point `base`.
    pub fn half_plane(base: f64, vertices: Vec<ComplexPoint>) -> Result<Self> {
        let slit = PolylineSlit {
            chart: Chart::HalfPlane,
            base: Complex64::new(base, 0.0),
            vertices,
        };
        slit.validate()?;
        Ok(slit)
    }

    /// Slit in the unit disk attached at the boundary point `base`; the base
    /// is renormalized to unit modulus.
    pub fn disk(base: ComplexPoint, vertices: Vec<ComplexPoint>) -> Result<Self> {
        let r = base.norm();
        if !r.is_finite() || (r - 1.0).abs() > 1e-6 {
            return Err(Error::geometry(format!("disk slit base {base} is not on the unit circle")));
        }
        let slit = PolylineSlit {
            chart: Chart::Disk,
            base: base / r,
            vertices,
        };
        slit.validate()?;
        Ok(slit)
    }

    /// Straight segment from `base` to `tip` in the half-plane.
    pub fn segment(base: f64, tip: ComplexPoint) -> Result<Self> {
        Self::half_plane(base, vec![tip])
    }

    /// Slit without vertices: only the base point.
    pub fn empty(chart: Chart, base: ComplexPoint) -> Self {
        PolylineSlit { chart, base, vertices: Vec::new() }
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn base(&self) -> ComplexPoint {
        self.base
    }

    /// Real base point of a half-plane slit.
    pub fn base_real(&self) -> f64 {
        self.base.re
    }

    pub fn vertices(&self) -> &[ComplexPoint] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn tip(&self) -> ComplexPoint {
        self.vertices.last().copied().unwrap_or(self.base)
    }

    /// Base followed by all vertices.
    pub fn points(&self) -> impl Iterator<Item = ComplexPoint> + '_ {
        std::iter::once(self.base).chain(self.vertices.iter().copied())
    }

    pub fn segments(&self) -> impl Iterator<Item = (ComplexPoint, ComplexPoint)> + '_ {
        self.points().zip(self.vertices.iter().copied())
    }

    pub fn length(&self) -> f64 {
        self.segments().map(|(a, b)| (b - a).norm()).sum()
    }

    /// Largest distance between two points of the slit (base included).
    pub fn diameter(&self) -> f64 {
        let pts: Vec<_> = self.points().collect();
        let mut d: f64 = 0.0;
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                d = d.max((a - b).norm());
            }
        }
        d
    }

    /// Direction angle of the first segment, measured in `(0, π)` for
    /// half-plane slits.
    pub fn initial_angle(&self) -> Option<f64> {
        self.vertices.first().map(|v| (v - self.base).arg())
    }

    fn validate(&self) -> Result<()> {
        if !self.base.re.is_finite() || !self.base.im.is_finite() {
            return Err(Error::geometry("non-finite base point"));
        }
        for v in &self.vertices {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::geometry("non-finite vertex"));
            }
            match self.chart {
                Chart::HalfPlane if v.im <= 0.0 => {
                    return Err(Error::geometry(format!("vertex {v} not in the open upper half-plane")));
                }
                Chart::Disk => {
                    let r = v.norm();
                    if r <= 0.0 || r >= 1.0 {
                        return Err(Error::geometry(format!("vertex {v} not in the punctured open disk")));
                    }
                }
                _ => {}
            }
        }
        for (a, b) in self.segments() {
            if a == b {
                return Err(Error::geometry("consecutive vertices coincide"));
            }
        }
        if !is_simple_chain(&self.points().collect::<Vec<_>>()) {
            return Err(Error::geometry("polyline slit is not simple"));
        }
        Ok(())
    }

    fn map_vertices(&self, base: ComplexPoint, f: impl Fn(ComplexPoint) -> ComplexPoint) -> PolylineSlit {
        PolylineSlit {
            chart: self.chart,
            base,
            vertices: self.vertices.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scale(&self, c: f64) -> Result<Self> {
        if self.chart != Chart::HalfPlane {
            return Err(Error::domain("scaling is only defined for half-plane slits"));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::domain(format!("scale factor must be positive, got {c}")));
        }
        Ok(self.map_vertices(self.base * c, |v| v * c))
    }

    /// Image under `z ↦ −z̄`.
    pub fn reflect_imaginary_axis(&self) -> Result<Self> {
        if self.chart != Chart::HalfPlane {
            return Err(Error::domain("reflection is only defined for half-plane slits"));
        }
        Ok(self.map_vertices(-self.base.conj(), |v| -v.conj()))
    }

    pub fn translate(&self, dx: f64) -> Result<Self> {
        if self.chart != Chart::HalfPlane {
            return Err(Error::domain("translation is only defined for half-plane slits"));
        }
        Ok(self.map_vertices(self.base + dx, |v| v + dx))
    }

    /// Subdivide every segment into equal pieces no longer than `max_seg_len`.
    pub fn refine(&self, max_seg_len: f64) -> Result<Self> {
        refine(self, max_seg_len)
    }
}

/// O(n²) simplicity check of a chain `p0, p1, ..., pn` of segments.
fn is_simple_chain(points: &[ComplexPoint]) -> bool {
    let n = points.len();
    if n < 3 {
        return true;
    }
    let segs: Vec<_> = points.windows(2).map(|w| (w[0], w[1])).collect();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (a, b) = segs[i];
            let (c, d) = segs[j];
            if j == i + 1 {
                // shared endpoint b == c; reject only a fold back along the same line
                let u = b - a;
                let v = d - c;
                let cross = u.re * v.im - u.im * v.re;
                let dot = u.re * v.re + u.im * v.im;
                if cross.abs() <= 1e-14 * u.norm() * v.norm() && dot < 0.0 {
                    return false;
                }
            } else if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

fn orient(a: ComplexPoint, b: ComplexPoint, c: ComplexPoint) -> f64 {
    (b.re - a.re) * (c.im - a.im) - (b.im - a.im) * (c.re - a.re)
}

fn on_segment(a: ComplexPoint, b: ComplexPoint, p: ComplexPoint) -> bool {
    p.re >= a.re.min(b.re) && p.re <= a.re.max(b.re) && p.im >= a.im.min(b.im) && p.im <= a.im.max(b.im)
}

/// Closed-segment intersection test (touching counts).
pub fn segments_intersect(a: ComplexPoint, b: ComplexPoint, c: ComplexPoint, d: ComplexPoint) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(c, d, a))
        || (d2 == 0.0 && on_segment(c, d, b))
        || (d3 == 0.0 && on_segment(a, b, c))
        || (d4 == 0.0 && on_segment(a, b, d))
}

/// Closest point of the segment `[a, b]` to `p`.
pub fn project_to_segment(p: ComplexPoint, a: ComplexPoint, b: ComplexPoint) -> ComplexPoint {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return a;
    }
    let t = ((p - a).re * ab.re + (p - a).im * ab.im) / len2;
    a + ab * t.clamp(0.0, 1.0)
}

/// Refine a slit so that each segment is at most `max_seg_len` long.
pub fn refine(slit: &PolylineSlit, max_seg_len: f64) -> Result<PolylineSlit> {
    if !(max_seg_len > 0.0) {
        return Err(Error::domain(format!("max_seg_len must be positive, got {max_seg_len}")));
    }
    let mut out = Vec::with_capacity(slit.vertices.len());
    for (a, b) in slit.segments() {
        let len = (b - a).norm();
        let pieces = ((len / max_seg_len) - 1e-12).ceil().max(1.0) as usize;
        for k in 1..pieces {
            out.push(a + (b - a) * (k as f64 / pieces as f64));
        }
        out.push(b);
    }
    Ok(PolylineSlit { chart: slit.chart, base: slit.base, vertices: out })
}

/// One or two slits sharing a chart.
#[derive(Debug, Clone, PartialEq)]
pub struct Hull {
    slits: Vec<PolylineSlit>,
    disjoint: bool,
}

impl Hull {
    pub fn new(slits: Vec<PolylineSlit>) -> Result<Self> {
        if slits.len() > 2 {
            return Err(Error::geometry("a hull holds at most two slits"));
        }
        if slits.len() == 2 && slits[0].chart != slits[1].chart {
            return Err(Error::geometry("slits of a hull must share a chart"));
        }
        let disjoint = slits.len() < 2 || open_parts_disjoint(&slits[0], &slits[1]);
        Ok(Hull { slits, disjoint })
    }

    pub fn single(slit: PolylineSlit) -> Self {
        Hull { slits: vec![slit], disjoint: true }
    }

    pub fn empty() -> Self {
        Hull { slits: Vec::new(), disjoint: true }
    }

    pub fn slits(&self) -> &[PolylineSlit] {
        &self.slits
    }

    /// Non-empty slits only.
    pub fn nonempty_slits(&self) -> impl Iterator<Item = &PolylineSlit> {
        self.slits.iter().filter(|s| !s.is_empty())
    }

    pub fn is_empty(&self) -> bool {
        self.slits.iter().all(|s| s.is_empty())
    }

    /// Whether the open parts of the slits are pairwise disjoint.
    pub fn is_disjoint(&self) -> bool {
        self.disjoint
    }

    pub fn chart(&self) -> Option<Chart> {
        self.slits.first().map(|s| s.chart)
    }

    pub fn common_base(&self) -> bool {
        self.slits.len() == 2 && self.slits[0].base == self.slits[1].base
    }

    pub fn diameter(&self) -> f64 {
        let pts: Vec<_> = self.slits.iter().flat_map(|s| s.points()).collect();
        let mut d: f64 = 0.0;
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                d = d.max((a - b).norm());
            }
        }
        d
    }

    fn try_map(&self, f: impl Fn(&PolylineSlit) -> Result<PolylineSlit>) -> Result<Hull> {
        let slits = self.slits.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Hull { slits, disjoint: self.disjoint })
    }

    pub fn scale(&self, c: f64) -> Result<Hull> {
        self.try_map(|s| s.scale(c))
    }

    pub fn reflect_imaginary_axis(&self) -> Result<Hull> {
        self.try_map(|s| s.reflect_imaginary_axis())
    }

    pub fn translate(&self, dx: f64) -> Result<Hull> {
        self.try_map(|s| s.translate(dx))
    }
}

fn open_parts_disjoint(s1: &PolylineSlit, s2: &PolylineSlit) -> bool {
    let shared_base = s1.base == s2.base;
    for (i, (a, b)) in s1.segments().enumerate() {
        for (j, (c, d)) in s2.segments().enumerate() {
            if !segments_intersect(a, b, c, d) {
                continue;
            }
            if shared_base && i == 0 && j == 0 {
                // the first segments may only meet at the common base
                let u = b - a;
                let v = d - c;
                let cross = u.re * v.im - u.im * v.re;
                let dot = u.re * v.re + u.im * v.im;
                if cross.abs() > 1e-14 * u.norm() * v.norm() || dot < 0.0 {
                    continue;
                }
            }
            return false;
        }
    }
    true
}

/// `z ↦ −i log z` with the branch centered at the base of the slit, so the
/// base maps to its argument on the real axis.
pub fn log_transform(slit: &PolylineSlit) -> Result<PolylineSlit> {
    if slit.chart != Chart::Disk {
        return Err(Error::domain("log_transform expects a disk slit"));
    }
    let base = slit.base;
    let cut_end = -base;
    for (a, b) in slit.segments() {
        if segments_intersect(a, b, Complex64::new(0.0, 0.0), cut_end) {
            return Err(Error::domain("slit crosses the branch cut of the logarithm"));
        }
    }
    let base_arg = base.arg();
    let vertices = slit
        .vertices
        .iter()
        .map(|&v| {
            let rel = v / base;
            Complex64::new(base_arg + rel.arg(), -v.norm().ln())
        })
        .collect();
    PolylineSlit::half_plane(base_arg, vertices)
}

/// Inverse of [`log_transform`]: `w ↦ exp(i w)`.
pub fn exp_transform(slit: &PolylineSlit) -> Result<PolylineSlit> {
    if slit.chart != Chart::HalfPlane {
        return Err(Error::domain("exp_transform expects a half-plane slit"));
    }
    let e = |w: Complex64| (Complex64::i() * w).exp();
    let base = Complex64::from_polar(1.0, slit.base.re);
    PolylineSlit::disk(base, slit.vertices.iter().map(|&w| e(w)).collect())
}

/// Serialize in the plain-text polyline format.
pub fn format_polyline(slit: &PolylineSlit) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "chart={} base={},{}", slit.chart.as_str(), slit.base.re, slit.base.im);
    for v in &slit.vertices {
        let _ = writeln!(out, "{},{}", v.re, v.im);
    }
    out
}

fn parse_pair(s: &str) -> Result<ComplexPoint> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected `re,im`, got `{s}`")))?;
    let re: f64 = re.trim().parse().map_err(|_| Error::Parse(format!("bad number `{re}`")))?;
    let im: f64 = im.trim().parse().map_err(|_| Error::Parse(format!("bad number `{im}`")))?;
    Ok(Complex64::new(re, im))
}

/// Parse the plain-text polyline format.
pub fn parse_polyline(text: &str) -> Result<PolylineSlit> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty polyline file".into()))?;
    let mut chart = None;
    let mut base = None;
    for field in header.split_whitespace() {
        match field.split_once('=') {
            Some(("chart", "half-plane")) => chart = Some(Chart::HalfPlane),
            Some(("chart", "disk")) => chart = Some(Chart::Disk),
            Some(("base", v)) => base = Some(parse_pair(v)?),
            _ => return Err(Error::Parse(format!("unexpected header field `{field}`"))),
        }
    }
    let chart = chart.ok_or_else(|| Error::Parse("header lacks chart=".into()))?;
    let base = base.ok_or_else(|| Error::Parse("header lacks base=".into()))?;
    let vertices = lines.map(parse_pair).collect::<Result<Vec<_>>>()?;
    match chart {
        Chart::HalfPlane => {
            if base.im != 0.0 {
                return Err(Error::geometry("half-plane base must be real"));
            }
            PolylineSlit::half_plane(base.re, vertices)
        }
        Chart::Disk => PolylineSlit::disk(base, vertices),
    }
}

pub fn read_polyline(path: &Path) -> Result<PolylineSlit> {
    parse_polyline(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn refine_vertical_segment() {
        let s = PolylineSlit::segment(0.0, c(0.0, 1.0)).unwrap();
        let r = s.refine(0.25).unwrap();
        assert_eq!(r.vertices().len(), 4);
        assert_eq!(r.tip(), c(0.0, 1.0));
        assert!(r.vertices().iter().all(|v| v.re == 0.0));
        assert_eq!(r.refine(0.25).unwrap(), r);
    }

    #[test]
    fn refine_coarse_is_identity() {
        let s = PolylineSlit::half_plane(0.0, vec![c(0.1, 0.5), c(0.3, 0.9)]).unwrap();
        assert_eq!(s.refine(10.0).unwrap(), s);
    }

    #[test]
    fn refine_zigzag_counts() {
        let pts = vec![c(0.0, 0.75), c(0.0, 1.0), c(0.5, 1.0), c(0.5, 1.5), c(0.0, 1.5)];
        let s = PolylineSlit::half_plane(0.0, pts).unwrap();
        let expected: usize = s.segments().map(|(a, b)| ((b - a).norm() / 0.1 - 1e-12).ceil() as usize).sum();
        let r = s.refine(0.1).unwrap();
        assert_eq!(r.vertices().len(), expected);
        assert_eq!(expected, 8 + 3 + 5 + 5 + 5);
        assert!(r.segments().all(|(a, b)| (b - a).norm() <= 0.1 + 1e-15));
    }

    #[test]
    fn rejects_bad_geometry() {
        assert!(PolylineSlit::half_plane(0.0, vec![c(0.0, -1.0)]).is_err());
        assert!(PolylineSlit::half_plane(0.0, vec![c(0.0, 1.0), c(0.0, 1.0)]).is_err());
        // crossing chain
        let pts = vec![c(0.0, 1.0), c(1.0, 2.0), c(1.0, 1.0), c(-0.5, 1.5)];
        assert!(PolylineSlit::half_plane(0.0, pts).is_err());
        // fold back
        assert!(PolylineSlit::half_plane(0.0, vec![c(0.0, 2.0), c(0.0, 1.0)]).is_err());
        assert!(PolylineSlit::disk(c(1.0, 0.0), vec![c(1.2, 0.0)]).is_err());
    }

    #[test]
    fn affine_images() {
        let s = PolylineSlit::segment(0.0, c(0.0, 1.0)).unwrap();
        assert_eq!(s.scale(2.0).unwrap().tip(), c(0.0, 2.0));
        let t = PolylineSlit::segment(1.0, c(1.0, 1.0)).unwrap();
        let r = t.reflect_imaginary_axis().unwrap();
        assert_eq!(r.base_real(), -1.0);
        assert_eq!(r.tip(), c(-1.0, 1.0));
        let m = s.translate(3.0).unwrap();
        assert_eq!(m.base_real(), 3.0);
        assert_eq!(m.tip(), c(3.0, 1.0));
        let d = PolylineSlit::disk(c(1.0, 0.0), vec![c(0.5, 0.0)]).unwrap();
        assert!(Hull::single(d).scale(2.0).is_err());
    }

    #[test]
    fn log_of_radial_slit() {
        let d = PolylineSlit::disk(c(1.0, 0.0), vec![c(0.9, 0.0)]).unwrap();
        let h = log_transform(&d).unwrap();
        assert_eq!(h.base_real(), 0.0);
        assert!((h.tip() - c(0.0, -(0.9f64).ln())).norm() < 1e-15);
        assert!((h.tip().im - 0.105360515657826).abs() < 1e-12);
    }

    #[test]
    fn log_rejects_branch_cut() {
        let d = PolylineSlit::disk(c(1.0, 0.0), vec![c(0.5, 0.1), c(-0.5, 0.1), c(-0.5, -0.1)]).unwrap();
        assert!(log_transform(&d).is_err());
    }

    #[test]
    fn hull_disjointness() {
        let a = PolylineSlit::segment(0.0, c(1.0, 1.0)).unwrap();
        let b = PolylineSlit::segment(0.0, c(-1.0, 1.0)).unwrap();
        let h = Hull::new(vec![a.clone(), b]).unwrap();
        assert!(h.is_disjoint() && h.common_base());
        let nested = PolylineSlit::segment(0.0, c(0.5, 0.5)).unwrap();
        assert!(!Hull::new(vec![a, nested]).unwrap().is_disjoint());
    }

    #[test]
    fn polyline_text_round_trip() {
        let s = PolylineSlit::half_plane(0.25, vec![c(0.3, 0.5), c(1.0 / 3.0, 0.75)]).unwrap();
        let text = format_polyline(&s);
        assert!(text.starts_with("chart=half-plane base=0.25,0\n"));
        assert_eq!(parse_polyline(&text).unwrap(), s);
        assert!(parse_polyline("chart=cube base=0,0\n").is_err());
    }

    proptest! {
        #[test]
        fn scale_composes(a in 0.1f64..5.0, b in 0.1f64..5.0, x in -1.0f64..1.0, y in 0.1f64..2.0) {
            let s = PolylineSlit::segment(0.0, c(x, y)).unwrap();
            let lhs = s.scale(a).unwrap().scale(b).unwrap();
            let rhs = s.scale(a * b).unwrap();
            prop_assert!((lhs.tip() - rhs.tip()).norm() <= 1e-12 * (1.0 + rhs.tip().norm()));
        }

        #[test]
        fn reflect_is_involution(x in -2.0f64..2.0, y in 0.1f64..2.0, base in -1.0f64..1.0) {
            let s = PolylineSlit::segment(base, c(x, y)).unwrap();
            prop_assert_eq!(s.reflect_imaginary_axis().unwrap().reflect_imaginary_axis().unwrap(), s);
        }

        #[test]
        fn log_exp_inverse(theta in -3.0f64..3.0, r1 in 0.3f64..0.95, dth in -0.3f64..0.3, r2 in 0.2f64..0.9) {
            let base = Complex64::from_polar(1.0, theta);
            let v1 = Complex64::from_polar(r1, theta + dth * 0.5);
            let v2 = Complex64::from_polar(r1 * r2, theta + dth);
            let d = PolylineSlit::disk(base, vec![v1, v2]).unwrap();
            let back = exp_transform(&log_transform(&d).unwrap()).unwrap();
            for (p, q) in back.vertices().iter().zip(d.vertices()) {
                prop_assert!((p - q).norm() <= 1e-12);
            }
        }

        #[test]
        fn refine_idempotent(len in 0.05f64..0.5, x in -1.0f64..1.0, y in 0.2f64..3.0) {
            let s = PolylineSlit::half_plane(0.0, vec![c(x * 0.5, y * 0.5), c(x, y)]).unwrap();
            let r = s.refine(len).unwrap();
            prop_assert_eq!(r.refine(len).unwrap(), r);
        }
    }
}

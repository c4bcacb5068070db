//! Discrete welding: factor the normalized map of a slit into elementary
//! straight-slit maps, recording the driving function along the way.
//!
//! At each step the next vertex image `z` is pulled to the real axis by the
//! straight slit from the current driving point `U` to `z`; the new driving
//! point is the image of that slit's tip. Vertices are inserted (by bisecting
//! the original edge and mapping the midpoint through everything welded so
//! far) until every step has capacity at most `max_cap_step`.

use num_complex::Complex64;

use super::composed::ComposedMap;
use super::driving::{DrivingPath, DrivingSample};
use super::elementary::{unit_tip_modulus, ElementaryMap, Side};
use crate::geom::{project_to_segment, Chart, PolylineSlit};
use crate::numeric::arg_upper;
use crate::{Error, Result};

/// Steps below this capacity are dropped.
pub const MIN_STEP_CAPACITY: f64 = 1e-14;

/// Bound on a step's capacity relative to the capacity already welded, at a
/// step of `1e-3` times the squared size of the curve. It scales with the
/// step so that step halving refines the whole curve.
const GROWTH: f64 = 0.05;
const GROWTH_REF_STEP: f64 = 1e-3;

/// A point of the original curve reached by the weld.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeldNode {
    /// Point in the coordinates the curve was given in.
    pub point: Complex64,
    /// Cumulative capacity once this point is welded.
    pub t: f64,
    /// Index of the step that welded this point, if it was not dropped.
    pub step: Option<usize>,
}

/// Full record of a weld.
#[derive(Debug, Clone)]
pub struct Weld {
    path: DrivingPath,
    map: ComposedMap,
    nodes: Vec<WeldNode>,
    /// Cumulative capacity at each input vertex.
    vertex_capacity: Vec<f64>,
    end_image: Option<f64>,
    base: Complex64,
    source: Option<PolylineSlit>,
}

impl Weld {
    pub fn path(&self) -> &DrivingPath {
        &self.path
    }

    pub fn map(&self) -> &ComposedMap {
        &self.map
    }

    pub fn into_parts(self) -> (DrivingPath, ComposedMap) {
        (self.path, self.map)
    }

    pub fn nodes(&self) -> &[WeldNode] {
        &self.nodes
    }

    pub fn capacity(&self) -> f64 {
        self.map.total_capacity()
    }

    /// Capacity of the part of the curve up to and including input vertex `i`.
    pub fn vertex_capacity(&self, i: usize) -> f64 {
        self.vertex_capacity[i]
    }

    /// Final driving position.
    pub fn final_driving(&self) -> f64 {
        self.path.samples().last().map_or(0.0, |s| s.u)
    }

    /// Image of the closing endpoint of an arc ending on the real axis.
    pub fn end_image(&self) -> Option<f64> {
        self.end_image
    }

    /// Capacity welded up to the point `p` of the curve. `premap` is the map
    /// the curve was welded through. Within a step the point is measured
    /// along the step's chord, inverting [`Weld::truncate`].
    pub fn capacity_at(&self, p: Complex64, premap: impl Fn(Complex64) -> Result<Complex64>) -> Result<f64> {
        let mut best = (f64::INFINITY, 0, p);
        let mut prev = self.base;
        for (j, n) in self.nodes.iter().enumerate() {
            let q = project_to_segment(p, prev, n.point);
            if (q - p).norm() < best.0 {
                best = ((q - p).norm(), j, q);
            }
            prev = n.point;
        }
        let (_, j, q) = best;
        let node = self.nodes[j];
        let Some(k) = node.step else {
            return Ok(node.t);
        };
        let step = self.map.steps()[k];
        let z = self.map.steps()[..k].iter().try_fold(premap(q)?, |z, m| m.apply(z))?;
        let frac = ((z - step.base()).norm() / (step.tip() - step.base()).norm()).min(1.0);
        let t_prev = node.t - step.capacity();
        Ok(t_prev + step.capacity() * frac * frac)
    }

    /// Initial piece of the welded slit with half-plane capacity `t`.
    ///
    /// The last vertex is placed on the straight slit of the step that
    /// crosses capacity `t`, pulled back through the preceding steps, so the
    /// returned polyline welds to capacity `t` exactly.
    pub fn truncate(&self, t: f64) -> Result<PolylineSlit> {
        let source = self.source_slit()?;
        if t <= 0.0 {
            return Ok(PolylineSlit::empty(Chart::HalfPlane, source.base()));
        }
        if t >= self.capacity() {
            return Ok(source.clone());
        }
        let (j, end) = self.cut(t);
        let mut vertices: Vec<Complex64> = self.nodes[..j].iter().map(|n| n.point).collect();
        vertices.push(end);
        PolylineSlit::half_plane(source.base_real(), vertices)
    }

    /// The curve of [`Weld::truncate`] with only the input vertices and the
    /// end point, so that it can be rediscretized from scratch.
    pub fn prefix(&self, t: f64) -> Result<PolylineSlit> {
        let source = self.source_slit()?;
        if t <= 0.0 || t >= self.capacity() {
            return self.truncate(t);
        }
        let end = self.cut(t).1;
        let mut vertices: Vec<Complex64> = source
            .vertices()
            .iter()
            .zip(&self.vertex_capacity)
            .take_while(|(_, &c)| c < t)
            .map(|(&v, _)| v)
            .collect();
        if vertices.last() != Some(&end) {
            vertices.push(end);
        }
        PolylineSlit::half_plane(source.base_real(), vertices)
    }

    /// Point of the slit at capacity `t`, the end point of [`Weld::truncate`].
    pub fn point_at(&self, t: f64) -> Result<Complex64> {
        let source = self.source_slit()?;
        Ok(if t <= 0.0 {
            source.base()
        } else if t >= self.capacity() {
            source.tip()
        } else {
            self.cut(t).1
        })
    }

    /// The part of the slit welded between capacities `t0 < t1`: its
    /// starting point and its remaining vertices.
    pub fn piece(&self, t0: f64, t1: f64) -> Result<(Complex64, Vec<Complex64>)> {
        let source = self.source_slit()?;
        if !(0.0 <= t0 && t0 < t1 && t1 <= self.capacity()) {
            return Err(Error::domain(format!("piece ({t0}, {t1}] outside [0, {}]", self.capacity())));
        }
        let (j0, start) = if t0 == 0.0 { (0, source.base()) } else { self.cut(t0) };
        let (j1, end) = if t1 == self.capacity() { (self.nodes.len() - 1, source.tip()) } else { self.cut(t1) };
        let mut vertices: Vec<Complex64> = self.nodes[j0..j1].iter().map(|n| n.point).filter(|&p| p != start).collect();
        vertices.push(end);
        Ok((start, vertices))
    }

    fn source_slit(&self) -> Result<&PolylineSlit> {
        self.source
            .as_ref()
            .ok_or_else(|| Error::domain("truncation needs a weld of a plain half-plane slit"))
    }

    /// For `0 < t < capacity`: the number of nodes strictly before the cut
    /// and the point at capacity `t`.
    fn cut(&self, t: f64) -> (usize, Complex64) {
        let j = self.nodes.partition_point(|n| n.t < t);
        let node = self.nodes[j];
        if node.t == t {
            return (j, node.point);
        }
        let k = node.step.expect("a node that raises capacity carries a step");
        let step = self.map.steps()[k];
        let t_prev = self.nodes[..j].last().map_or(0.0, |n| n.t);
        let frac = ((t - t_prev) / step.capacity()).clamp(0.0, 1.0);
        let chord_point = step.base() + (step.tip() - step.base()) * frac.sqrt();
        (j, self.map.invert_prefix(k, chord_point))
    }
}

/// Curve to be welded: vertices in source coordinates plus the map taking
/// source coordinates into the current half-plane picture.
pub(crate) struct CurveSpec<'a> {
    pub base_source: Complex64,
    pub base_image: f64,
    pub vertices: Vec<Complex64>,
    pub premap: &'a dyn Fn(Complex64) -> Result<Complex64>,
    /// When set, the last vertex lies on the real axis with this image and
    /// the curve is an arc closing onto the axis.
    pub end_image: Option<f64>,
    pub max_cap_step: f64,
}

pub(crate) fn weld_curve(spec: CurveSpec<'_>) -> Result<Weld> {
    let CurveSpec { base_source, base_image, vertices, premap, end_image, max_cap_step } = spec;
    if !(max_cap_step > 0.0) {
        return Err(Error::domain(format!("max_cap_step must be positive, got {max_cap_step}")));
    }
    if vertices.is_empty() {
        return Err(Error::geometry("cannot weld an empty slit"));
    }
    let closes = end_image.is_some();
    let n_input = vertices.len();
    let scale = vertices.iter().map(|v| (v - base_source).norm()).fold(0.0, f64::max);
    let min_len = 1e-13 * scale.max(f64::MIN_POSITIVE);
    let close_tol = 1e-4 * max_cap_step;

    let mut src = vertices;
    // input index of each entry of `src`, None for inserted points
    let mut origin: Vec<Option<usize>> = (0..n_input).map(Some).collect();
    let pending_len = if closes { n_input - 1 } else { n_input };
    let mut cur: Vec<Complex64> = src[..pending_len].iter().map(|&v| premap(v)).collect::<Result<_>>()?;
    let mut end = end_image;
    let size = cur.iter().map(|z| (z - base_image).norm_sqr()).fold(0.0, f64::max);
    let growth = if size > 0.0 { GROWTH * max_cap_step / (GROWTH_REF_STEP * size) } else { GROWTH };

    let mut map = ComposedMap::identity();
    let mut u = base_image;
    let mut t = 0.0;
    let mut samples = vec![DrivingSample { t: 0.0, u, b: 0.0 }];
    let mut nodes = Vec::new();
    let mut vertex_capacity = vec![0.0; n_input];
    let mut prev = base_source;

    let image_of = |map: &ComposedMap, p: Complex64| -> Result<Complex64> { map.apply(premap(p)?) };

    let mut k = 0;
    while k < src.len() {
        if closes && k == src.len() - 1 {
            // closing edge: refine until the remaining bump is negligible
            let edge = src[k] - prev;
            if edge.norm() < min_len {
                break;
            }
            let mid = prev + edge * 0.5;
            let z = image_of(&map, mid)?;
            if z.im <= 0.0 {
                break;
            }
            let chord = ElementaryMap::from_chord(u, z)?;
            if chord.capacity() <= close_tol {
                break;
            }
            src.insert(k, mid);
            origin.insert(k, None);
            cur.insert(k, z);
            continue;
        }
        let z = cur[k];
        let d = z - u;
        if !(d.im > 0.0) {
            return Err(Error::numerical(format!("vertex image {z} is not above the driving point {u}")));
        }
        let a = arg_upper(d) / std::f64::consts::PI;
        let cap = (d.norm() / unit_tip_modulus(a)).powi(2);
        // the floor keeps steps above the drop threshold after a tiny first step
        let limit = if t > 0.0 { max_cap_step.min((growth * t).max(1e3 * MIN_STEP_CAPACITY)) } else { max_cap_step };
        if cap > limit {
            let edge = src[k] - prev;
            if edge.norm() < min_len {
                return Err(Error::numerical("capacity step underflow while refining an edge"));
            }
            // capacity grows roughly quadratically along the edge
            let frac = (0.9 * (limit / cap).sqrt()).clamp(1e-3, 0.9);
            let mid = prev + edge * frac;
            let zm = image_of(&map, mid)?;
            src.insert(k, mid);
            origin.insert(k, None);
            cur.insert(k, zm);
            continue;
        }
        let mut step_index = None;
        if cap >= MIN_STEP_CAPACITY {
            let step = ElementaryMap::from_chord(u, z)?;
            for w in cur[k + 1..].iter_mut() {
                *w = step.apply(*w)?;
            }
            if let Some(e) = end.as_mut() {
                *e = step.apply_real(*e, Side::Left);
            }
            u = step.tip_image();
            t += step.capacity();
            samples.push(DrivingSample { t, u, b: t });
            step_index = Some(map.len());
            map.push(step);
        }
        nodes.push(WeldNode { point: src[k], t, step: step_index });
        if let Some(i) = origin[k] {
            vertex_capacity[i] = t;
        }
        prev = src[k];
        k += 1;
    }
    if closes {
        vertex_capacity[n_input - 1] = t;
    }
    Ok(Weld {
        path: DrivingPath::new(samples)?,
        map,
        nodes,
        vertex_capacity,
        end_image: end,
        base: base_source,
        source: None,
    })
}

/// One slit of a hull to be welded jointly with [`weld_union`].
pub(crate) struct SlitInput {
    pub base_source: Complex64,
    pub base_image: f64,
    pub vertices: Vec<Complex64>,
    /// Initial angle of the image slit against the real axis.
    pub angle: f64,
}

impl SlitInput {
    /// A half-plane slit taken as is.
    pub fn chordal(slit: &PolylineSlit) -> Self {
        SlitInput {
            base_source: slit.base(),
            base_image: slit.base_real(),
            vertices: slit.vertices().to_vec(),
            angle: slit.initial_angle().unwrap_or(0.0),
        }
    }
}

/// Normalized map of the image of one or two slits under `premap`: the
/// first slit is welded, the second is welded through the result. At a
/// shared base the slit leaving at the larger angle goes first, otherwise
/// the slit with the smaller base.
pub(crate) fn weld_union(
    mut inputs: Vec<SlitInput>,
    premap: &dyn Fn(Complex64) -> Result<Complex64>,
    max_cap_step: f64,
) -> Result<ComposedMap> {
    if inputs.len() == 2 {
        let (a, b) = (&inputs[0], &inputs[1]);
        let swap = if a.base_image == b.base_image { b.angle > a.angle } else { b.base_image < a.base_image };
        if swap {
            inputs.swap(0, 1);
        }
    }
    let mut it = inputs.into_iter();
    let Some(first) = it.next() else {
        return Ok(ComposedMap::identity());
    };
    let first_base = first.base_image;
    let first_angle = first.angle;
    let mut map = weld_curve(CurveSpec {
        base_source: first.base_source,
        base_image: first.base_image,
        vertices: first.vertices,
        premap,
        end_image: None,
        max_cap_step,
    })?
    .map;
    if let Some(second) = it.next() {
        let side = if second.base_image == first_base && second.angle > first_angle { Side::Left } else { Side::Right };
        let through = |z: Complex64| map.apply(premap(z)?);
        let w = weld_curve(CurveSpec {
            base_source: second.base_source,
            base_image: map.apply_real(second.base_image, side),
            vertices: second.vertices,
            premap: &through,
            end_image: None,
            max_cap_step,
        })?;
        map.extend(w.map());
    }
    Ok(map)
}

/// Weld a half-plane slit, keeping the full record.
pub fn weld_detailed(slit: &PolylineSlit, max_cap_step: f64) -> Result<Weld> {
    if slit.chart() != Chart::HalfPlane {
        return Err(Error::domain("weld expects a half-plane slit"));
    }
    let identity = |z: Complex64| Ok(z);
    let mut weld = weld_curve(CurveSpec {
        base_source: slit.base(),
        base_image: slit.base_real(),
        vertices: slit.vertices().to_vec(),
        premap: &identity,
        end_image: None,
        max_cap_step,
    })?;
    weld.source = Some(slit.clone());
    Ok(weld)
}

/// Weld a half-plane slit into its driving path (in capacity
/// parametrization) and the composed elementary maps.
pub fn weld(slit: &PolylineSlit, max_cap_step: f64) -> Result<(DrivingPath, ComposedMap)> {
    Ok(weld_detailed(slit, max_cap_step)?.into_parts())
}

/// Weld the image of `slit` under an already welded map `prior`. The base of
/// `slit` is sent to the real axis through `prior`, using `side` if it is a
/// base of one of `prior`'s steps.
pub fn weld_through(prior: &ComposedMap, slit: &PolylineSlit, side: Side, max_cap_step: f64) -> Result<Weld> {
    if slit.chart() != Chart::HalfPlane {
        return Err(Error::domain("weld expects a half-plane slit"));
    }
    let premap = |z: Complex64| prior.apply(z);
    weld_curve(CurveSpec {
        base_source: slit.base(),
        base_image: prior.apply_real(slit.base_real(), side),
        vertices: slit.vertices().to_vec(),
        premap: &premap,
        end_image: None,
        max_cap_step,
    })
}

/// Side of `slit`'s base relative to the first step of `prior` when both
/// start at the same point: the slit leaving at the larger angle is on the left.
pub fn attachment_side(prior: &ComposedMap, slit: &PolylineSlit) -> Side {
    match (prior.steps().first(), slit.initial_angle()) {
        (Some(first), Some(angle)) if first.base() == slit.base_real() => {
            if angle > first.angle() * std::f64::consts::PI {
                Side::Left
            } else {
                Side::Right
            }
        }
        _ => Side::Right,
    }
}

/// Image polyline of `slit` under `cm`, vertexwise after refining to
/// segments of length at most `max_seg_len`.
pub fn map_hull_forward_with(cm: &ComposedMap, slit: &PolylineSlit, side: Side, max_seg_len: f64) -> Result<PolylineSlit> {
    if slit.chart() != Chart::HalfPlane {
        return Err(Error::domain("map_hull_forward expects a half-plane slit"));
    }
    let fine = slit.refine(max_seg_len)?;
    let base = cm.apply_real(fine.base_real(), side);
    let verts = fine
        .vertices()
        .iter()
        .map(|&v| cm.apply(v))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::geometry(format!("slit meets the absorbed hull: {e}")))?;
    PolylineSlit::half_plane(base, verts).map_err(|e| Error::geometry(format!("image slit invalid: {e}")))
}

/// Image of `slit` under `cm` with 200 sub-segments per slit diameter.
pub fn map_hull_forward(cm: &ComposedMap, slit: &PolylineSlit) -> Result<PolylineSlit> {
    if slit.is_empty() {
        return Ok(PolylineSlit::empty(Chart::HalfPlane, Complex64::new(cm.apply_real(slit.base_real(), Side::Right), 0.0)));
    }
    let side = attachment_side(cm, slit);
    map_hull_forward_with(cm, slit, side, slit.diameter() / 200.0)
}

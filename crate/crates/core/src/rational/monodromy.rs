//! Monodromy of `R: ℙ¹ → ℙ¹` by analytic continuation of the fibre along
//! polygonal loops.
//!
//! Sheets near `t = ∞` are tracked in the chart `s = 1/t`, so poles and
//! preimages that pass through infinity cause no trouble.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::critical::critical_data;
use super::permutation::{group_order, is_transitive, Permutation};
use super::{Point, RationalMap};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Parameters of the loop construction and of the path tracker.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonodromyOptions {
    /// Chords per small circle; the loop around infinity uses twice as many.
    pub segments_per_circle: usize,
    /// Upper bound on the radius of the circle around a critical value.
    pub loop_radius: f64,
    /// Largest step, as a fraction of one polygon edge.
    pub max_step: f64,
    /// Smallest step before continuation is declared failed.
    pub min_step: f64,
    /// Loops must keep at least this distance from every critical value.
    pub margin: f64,
    pub root_tol: f64,
    /// Group closure stops after this many elements.
    pub group_cap: usize,
}

impl Default for MonodromyOptions {
    fn default() -> Self {
        MonodromyOptions {
            segments_per_circle: 64,
            loop_radius: 0.25,
            max_step: 1.0,
            min_step: 1e-9,
            margin: 1e-6,
            root_tol: 1e-8,
            group_cap: 40_320,
        }
    }
}

impl MonodromyOptions {
    /// Twice the chords and half the step.
    pub fn refined(&self) -> Self {
        MonodromyOptions {
            segments_per_circle: self.segments_per_circle * 2,
            max_step: self.max_step / 2.0,
            ..*self
        }
    }
}

/// Where a sheet currently lives.
#[derive(Clone, Copy, Debug)]
enum Chart {
    Affine(Complex64),
    Inverted(Complex64),
}

const SWITCH: f64 = 1.5;

impl Chart {
    fn from_point(p: Point) -> Chart {
        match p {
            Point::Infinity => Chart::Inverted(Complex64::new(0.0, 0.0)),
            Point::Finite(t) if t.norm() > SWITCH => Chart::Inverted(t.inv()),
            Point::Finite(t) => Chart::Affine(t),
        }
    }

    fn point(self) -> Point {
        match self {
            Chart::Affine(t) => Point::Finite(t),
            Chart::Inverted(s) if s.norm() == 0.0 => Point::Infinity,
            Chart::Inverted(s) => Point::Finite(s.inv()),
        }
    }

    fn normalized(self) -> Chart {
        match self {
            Chart::Affine(t) if t.norm() > SWITCH => Chart::Inverted(t.inv()),
            Chart::Inverted(s) if s.norm() > SWITCH => Chart::Affine(s.inv()),
            c => c,
        }
    }
}

/// `num - w·den` in both charts.
struct Fibre {
    num: Poly,
    den: Poly,
    dnum: Poly,
    dden: Poly,
    num_r: Poly,
    den_r: Poly,
    dnum_r: Poly,
    dden_r: Poly,
}

impl Fibre {
    fn new(r: &RationalMap) -> Self {
        let d = r.degree();
        let num_r = r.num().reversed(d);
        let den_r = r.den().reversed(d);
        Fibre {
            num: r.num().clone(),
            den: r.den().clone(),
            dnum: r.num().derivative(),
            dden: r.den().derivative(),
            dnum_r: num_r.derivative(),
            dden_r: den_r.derivative(),
            num_r,
            den_r,
        }
    }

    /// `(P, ∂P/∂z, ∂P/∂w)` at `z` in the given chart.
    fn eval(&self, chart: Chart, w: Complex64) -> (Complex64, Complex64, Complex64, f64) {
        let (z, n, d, dn, dd) = match chart {
            Chart::Affine(z) => (z, &self.num, &self.den, &self.dnum, &self.dden),
            Chart::Inverted(z) => (z, &self.num_r, &self.den_r, &self.dnum_r, &self.dden_r),
        };
        let dz = d.eval(z);
        let scale = n.eval_scale(z) + w.norm() * d.eval_scale(z);
        (n.eval(z) - w * dz, dn.eval(z) - w * dd.eval(z), -dz, scale)
    }

    fn with(chart: Chart, z: Complex64) -> Chart {
        match chart {
            Chart::Affine(_) => Chart::Affine(z),
            Chart::Inverted(_) => Chart::Inverted(z),
        }
    }

    fn coord(chart: Chart) -> Complex64 {
        match chart {
            Chart::Affine(z) | Chart::Inverted(z) => z,
        }
    }

    /// Newton correction at fixed `w`; `None` without convergence.
    fn correct(&self, mut chart: Chart, w: Complex64) -> Option<Chart> {
        for _ in 0..12 {
            let (p, dp, _, scale) = self.eval(chart, w);
            if dp.norm() == 0.0 {
                return None;
            }
            let step = p / dp;
            let z = Fibre::coord(chart) - step;
            chart = Fibre::with(chart, z);
            if step.norm() <= 1e-13 * z.norm().max(1.0) {
                let (p, _, _, scale2) = self.eval(chart, w);
                return (p.norm() <= 1e-9 * scale2.max(scale).max(1e-300)).then_some(chart);
            }
        }
        None
    }
}

/// Tracks every sheet along the straight segment `w0 → w1`.
fn track_segment(
    fibre: &Fibre,
    sheets: &mut [Chart],
    w0: Complex64,
    w1: Complex64,
    opts: &MonodromyOptions,
    segment: usize,
) -> Result<()> {
    let mut tau = 0.0;
    let mut h = opts.max_step;
    while tau < 1.0 {
        let step = h.min(1.0 - tau);
        let wa = w0 + (w1 - w0) * tau;
        let wb = w0 + (w1 - w0) * (tau + step);
        let old: Vec<Point> = sheets.iter().map(|c| c.point()).collect();
        let min_old = min_separation(&old);
        let mut next = Vec::with_capacity(sheets.len());
        let mut ok = true;
        for &chart in sheets.iter() {
            let chart = chart.normalized();
            let (_, dp, dw, _) = fibre.eval(chart, wa);
            if dp.norm() == 0.0 {
                ok = false;
                break;
            }
            let pred = Fibre::with(chart, Fibre::coord(chart) - dw / dp * (wb - wa));
            let Some(c) = fibre.correct(pred, wb) else {
                ok = false;
                break;
            };
            if c.point().chordal(pred.point()) > 0.1 * min_old
                || c.point().chordal(Chart::point(chart)) > 0.25 * min_old
            {
                ok = false;
                break;
            }
            next.push(c);
        }
        if ok {
            let pts: Vec<Point> = next.iter().map(|c| c.point()).collect();
            ok = min_separation(&pts) > 1e-9;
        }
        if ok {
            sheets.copy_from_slice(&next);
            tau += step;
            h = (2.0 * step).min(opts.max_step);
        } else {
            h = step / 2.0;
            if h < opts.min_step {
                return Err(Error::Continuation {
                    segment,
                    message: format!("step fell below {:e} at parameter {tau:.6}", opts.min_step),
                });
            }
        }
    }
    Ok(())
}

fn min_separation(points: &[Point]) -> f64 {
    let mut m: f64 = 1.0;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            m = m.min(points[i].chordal(points[j]));
        }
    }
    m
}

fn sorted_fibre(r: &RationalMap, w: Complex64) -> Result<Vec<Point>> {
    let mut pts = r.preimages(w)?;
    pts.sort_by(|a, b| match (a, b) {
        (Point::Finite(x), Point::Finite(y)) => (x.re, x.im)
            .partial_cmp(&(y.re, y.im))
            .unwrap_or(std::cmp::Ordering::Equal),
        (Point::Finite(_), Point::Infinity) => std::cmp::Ordering::Less,
        (Point::Infinity, Point::Finite(_)) => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    });
    Ok(pts)
}

fn segment_distance(a: Complex64, b: Complex64, p: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let s = ((p - a) * ab.conj()).re / len2;
    (a + ab * s.clamp(0.0, 1.0) - p).norm()
}

fn finite_critical_values(r: &RationalMap, root_tol: f64) -> Result<(Vec<Complex64>, bool)> {
    let mut values: Vec<Complex64> = Vec::new();
    let mut infinite = false;
    for c in critical_data(r, root_tol)? {
        match c.value {
            Point::Infinity => infinite = true,
            Point::Finite(v) => {
                if !values
                    .iter()
                    .any(|u| (u - v).norm() <= 1e-8 * v.norm().max(1.0))
                {
                    values.push(v);
                }
            }
        }
    }
    Ok((values, infinite))
}

/// Permutation of the sorted fibre over `loop_points[0]` induced by the
/// closed polygon `loop_points` (the last vertex is joined to the first).
pub fn monodromy(
    r: &RationalMap,
    loop_points: &[Complex64],
    opts: &MonodromyOptions,
) -> Result<Permutation> {
    if loop_points.len() < 2 {
        return Err(Error::InvalidArgument(
            "a loop needs at least two vertices".into(),
        ));
    }
    let (values, _) = finite_critical_values(r, opts.root_tol)?;
    let n = loop_points.len();
    for k in 0..n {
        let (a, b) = (loop_points[k], loop_points[(k + 1) % n]);
        for &v in &values {
            if segment_distance(a, b, v) < opts.margin * v.norm().max(1.0) {
                return Err(Error::InvalidArgument(format!(
                    "loop passes within {:e} of the critical value {v}",
                    opts.margin
                )));
            }
        }
    }
    track_loop(r, loop_points, opts)
}

fn track_loop(
    r: &RationalMap,
    loop_points: &[Complex64],
    opts: &MonodromyOptions,
) -> Result<Permutation> {
    let fibre = Fibre::new(r);
    let base = sorted_fibre(r, loop_points[0])?;
    let mut sheets: Vec<Chart> = base.iter().map(|&p| Chart::from_point(p)).collect();
    let n = loop_points.len();
    for k in 0..n {
        let (a, b) = (loop_points[k], loop_points[(k + 1) % n]);
        if a != b {
            track_segment(&fibre, &mut sheets, a, b, opts, k)?;
        }
    }
    let sep = min_separation(&base);
    let mut images = Vec::with_capacity(base.len());
    for (i, c) in sheets.iter().enumerate() {
        let p = c.point();
        let (j, dist) = base
            .iter()
            .enumerate()
            .map(|(j, &q)| (j, p.chordal(q)))
            .fold(
                (0, f64::INFINITY),
                |acc, x| if x.1 < acc.1 { x } else { acc },
            );
        if dist > 1e-6f64.min(0.25 * sep) {
            return Err(Error::Continuation {
                segment: n,
                message: format!(
                    "sheet {} does not return to the fibre (distance {dist:e})",
                    i + 1
                ),
            });
        }
        images.push(j);
    }
    Permutation::new(images).map_err(|_| Error::Continuation {
        segment: n,
        message: "two sheets returned to the same point".into(),
    })
}

/// A standard generating system of loops based at one regular value.
#[derive(Clone, Debug, PartialEq)]
pub struct Bouquet {
    pub base: Complex64,
    /// Critical value encircled by each loop, in product order; a loop
    /// around infinity comes last.
    pub values: Vec<Point>,
    pub loops: Vec<Vec<Complex64>>,
}

/// Builds lollipop loops: a straight stem from the base point to a small
/// circle around each finite critical value, traversed counterclockwise.
///
/// The base point sits on a large circle around all finite critical values.
/// Loops are ordered by the direction of their stems, starting next to the
/// counterclockwise tangent of that circle, so that their concatenation is
/// the large circle itself. When infinity is a critical value the large
/// circle, traversed clockwise, is appended and the full product is trivial.
pub fn bouquet(r: &RationalMap, opts: &MonodromyOptions) -> Result<Bouquet> {
    let (values, infinite) = finite_critical_values(r, opts.root_tol)?;
    let k = values.len();
    let centre = if k == 0 {
        Complex64::new(0.0, 0.0)
    } else {
        values.iter().sum::<Complex64>() / k as f64
    };
    let spread = values
        .iter()
        .map(|v| (v - centre).norm())
        .fold(0.0, f64::max);
    let big = 1.5 * spread + 1.0;
    let radii: Vec<f64> = (0..k)
        .map(|i| {
            let nearest = (0..k)
                .filter(|&j| j != i)
                .map(|j| (values[i] - values[j]).norm())
                .fold(f64::INFINITY, f64::min);
            opts.loop_radius.min(0.5 * nearest).min(0.5 * big)
        })
        .collect();

    let golden = PI * (3.0 - 5f64.sqrt());
    // smaller circles free up more stem directions
    for shrink in 0..6 {
        let radii: Vec<f64> = radii.iter().map(|r| r * 0.5f64.powi(shrink)).collect();
        for attempt in 0..64 {
            let phi0 = -PI / 2.0 + 0.137 + golden * attempt as f64;
            let base = centre + Complex64::from_polar(big, phi0);
            let feet: Vec<Complex64> = (0..k)
                .map(|i| {
                    let dir = (base - values[i]) / (base - values[i]).norm();
                    values[i] + dir * radii[i]
                })
                .collect();
            let clear = (0..k).all(|i| {
                (0..k)
                    .filter(|&j| j != i)
                    .all(|j| segment_distance(base, feet[i], values[j]) > 1.5 * radii[j])
            });
            if !clear {
                continue;
            }
            let tangent = phi0 + PI / 2.0;
            let mut order: Vec<usize> = (0..k).collect();
            let rel = |i: usize| ((values[i] - base).arg() - tangent).rem_euclid(TAU);
            order.sort_by(|&a, &b| {
                rel(a)
                    .partial_cmp(&rel(b))
                    .unwrap_or(std::cmp::Ordering::Equal)
            });

            let m = opts.segments_per_circle.max(8);
            let mut loops = Vec::new();
            let mut tags = Vec::new();
            for &i in &order {
                let v = values[i];
                let theta = (feet[i] - v).arg();
                let mut poly = vec![base];
                for s in 0..=m {
                    poly.push(
                        v + Complex64::from_polar(radii[i], theta + TAU * s as f64 / m as f64),
                    );
                }
                loops.push(poly);
                tags.push(Point::Finite(v));
            }
            if infinite {
                let m = 2 * m;
                let poly: Vec<Complex64> = (0..m)
                    .map(|s| centre + Complex64::from_polar(big, phi0 - TAU * s as f64 / m as f64))
                    .collect();
                loops.push(poly);
                tags.push(Point::Infinity);
            }
            return Ok(Bouquet {
                base,
                values: tags,
                loops,
            });
        }
    }
    Err(Error::Numerical(
        "no base point found whose loop stems avoid the other critical values".into(),
    ))
}

/// Monodromy generators of a bouquet and the group they generate.
#[derive(Clone, Debug, PartialEq)]
pub struct MonodromyGroup {
    pub degree: usize,
    pub base: Complex64,
    pub values: Vec<Point>,
    pub generators: Vec<Permutation>,
    /// The generators multiplied in bouquet order give the identity.
    pub product_is_identity: bool,
    pub transitive: bool,
    /// `None` when the closure exceeded the cap.
    pub order: Option<usize>,
}

pub fn monodromy_group(r: &RationalMap, opts: &MonodromyOptions) -> Result<MonodromyGroup> {
    let b = bouquet(r, opts)?;
    let d = r.degree();
    let generators = b
        .loops
        .iter()
        .map(|l| track_loop(r, l, opts))
        .collect::<Result<Vec<_>>>()?;
    let product = generators
        .iter()
        .fold(Permutation::identity(d), |acc, g| acc.then(g));
    Ok(MonodromyGroup {
        degree: d,
        base: b.base,
        values: b.values,
        transitive: is_transitive(d, &generators),
        order: group_order(d, &generators, opts.group_cap),
        product_is_identity: product.is_identity(),
        generators,
    })
}

//! Tracing the real-preimage curves of `f = Q1^2 / Q2`.
//!
//! The curve `Im f = 0` always contains the real axis, which would swamp any
//! contour extraction, so we contour the bivariate polynomial
//! `M(x, y) = Im(Q1^2(x+iy) * conj(Q2(x+iy))) / y` instead: dividing by `y`
//! removes the real line and keeps exact rational coefficients, allowing an
//! optional certified sign grid. The remaining zero set consists of the
//! ovals: components crossing the axis (at real critical points of `f`) and
//! components disjoint from it.

use num::complex::Complex64;
use num::{BigRational, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{all_complex_roots, RootFindConfig};
use crate::poly::RatPoly;
use crate::rat::rat_to_f64;
use crate::recurrence::RecurrencePair;

/// Rectangular sampling window with a square-ish grid.
#[derive(Clone, Debug)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    /// Cells per axis.
    pub resolution: usize,
}

impl Window {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, resolution: usize) -> Result<Self> {
        if !(x_min < x_max && y_min < y_max) {
            return Err(Error::InvalidInput("window must have positive extent".into()));
        }
        if resolution < 16 {
            return Err(Error::InvalidInput("window resolution must be at least 16".into()));
        }
        Ok(Window { x_min, x_max, y_min, y_max, resolution })
    }

    /// Default view: a square of half-width 1.5 times the largest Cauchy
    /// bound among Q1, Q2 and the discriminant, 512 cells per axis.
    pub fn default_for(pair: &RecurrencePair) -> Window {
        let b1 = rat_to_f64(&pair.q1().cauchy_root_bound());
        let b2 = rat_to_f64(&pair.q2().cauchy_root_bound());
        let bd = rat_to_f64(&pair.discriminant().cauchy_root_bound());
        let r = 1.5 * b1.max(b2).max(bd);
        Window {
            x_min: -r,
            x_max: r,
            y_min: -r,
            y_max: r,
            resolution: 512,
        }
    }

    pub fn cell(&self) -> (f64, f64) {
        (
            (self.x_max - self.x_min) / self.resolution as f64,
            (self.y_max - self.y_min) / self.resolution as f64,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    RealAxis,
    CrossingOval,
    DisjointOval,
    Unresolved,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::RealAxis => "real-axis",
            Classification::CrossingOval => "crossing-oval",
            Classification::DisjointOval => "disjoint-oval",
            Classification::Unresolved => "unresolved",
        }
    }
}

/// One connected polyline of the traced curve.
#[derive(Clone, Debug)]
pub struct CurveComponent {
    pub points: Vec<(f64, f64)>,
    pub closed: bool,
    pub classification: Classification,
    /// Abscissae where the component meets `y = 0`.
    pub crossing_points: Vec<f64>,
}

/// Dense bivariate polynomial with exact rational coefficients,
/// `coeffs[i][j]` on `x^i y^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly {
    coeffs: Vec<Vec<BigRational>>,
}

impl BiPoly {
    fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly { coeffs: vec![vec![c]] }
    }

    fn get(&self, i: usize, j: usize) -> BigRational {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn set(&mut self, i: usize, j: usize, v: BigRational) {
        while self.coeffs.len() <= i {
            self.coeffs.push(Vec::new());
        }
        let row = &mut self.coeffs[i];
        while row.len() <= j {
            row.push(BigRational::zero());
        }
        row[j] = v;
    }

    fn trim(mut self) -> Self {
        for row in &mut self.coeffs {
            while row.last().is_some_and(Zero::is_zero) {
                row.pop();
            }
        }
        while self.coeffs.last().is_some_and(Vec::is_empty) {
            self.coeffs.pop();
        }
        self
    }

    fn add(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (i, row) in other.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.set(i, j, out.get(i, j) + c);
                }
            }
        }
        out.trim()
    }

    fn sub(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (i, row) in other.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.set(i, j, out.get(i, j) - c);
                }
            }
        }
        out.trim()
    }

    fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, orow) in other.coeffs.iter().enumerate() {
                    for (l, b) in orow.iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i + k, j + l, out.get(i + k, j + l) + a * b);
                    }
                }
            }
        }
        out.trim()
    }

    /// Multiply by `x` (shift i) or `y` (shift j).
    fn shift_x(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.set(i + 1, j, c.clone());
                }
            }
        }
        out
    }

    fn shift_y(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.set(i, j + 1, c.clone());
                }
            }
        }
        out
    }

    /// Exact division by `y`; panics if any term lacks a factor of `y`.
    fn div_y(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                assert!(j > 0, "term x^{} y^0 is not divisible by y", i);
                out.set(i, j - 1, c.clone());
            }
        }
        out.trim()
    }

    pub fn eval_exact(&self, x: &BigRational, y: &BigRational) -> BigRational {
        // Horner in x of Horner-in-y rows.
        let mut acc = BigRational::zero();
        for row in self.coeffs.iter().rev() {
            let mut row_acc = BigRational::zero();
            for c in row.iter().rev() {
                row_acc = row_acc * y + c;
            }
            acc = acc * x + row_acc;
        }
        acc
    }

    fn to_f64(&self) -> Vec<Vec<f64>> {
        self.coeffs
            .iter()
            .map(|row| row.iter().map(rat_to_f64).collect())
            .collect()
    }
}

/// Split `p(x + iy)` into exact real and imaginary bivariate parts.
fn complexify(p: &RatPoly) -> (BiPoly, BiPoly) {
    let mut re = BiPoly::zero();
    let mut im = BiPoly::zero();
    for c in p.coeffs().iter().rev() {
        // (re + i im) * (x + i y) + c
        let new_re = re.shift_x().sub(&im.shift_y()).add(&BiPoly::constant(c.clone()));
        let new_im = re.shift_y().add(&im.shift_x());
        re = new_re;
        im = new_im;
    }
    (re, im)
}

/// The field whose zero set is the off-axis part of the curve
/// `Im(Q1^2/Q2) = 0`.
pub struct GammaTildeField {
    /// Exact `M = Im(Q1^2 * conj(Q2)) / y`.
    pub m: BiPoly,
    mf: Vec<Vec<f64>>,
}

impl GammaTildeField {
    pub fn new(pair: &RecurrencePair) -> Self {
        let (a1, b1) = complexify(&pair.q1().square());
        let (a2, b2) = complexify(pair.q2());
        // Im((A1 + iB1)(A2 - iB2)) = B1 A2 - A1 B2, odd in y.
        let n = b1.mul(&a2).sub(&a1.mul(&b2));
        let m = n.div_y();
        let mf = m.to_f64();
        GammaTildeField { m, mf }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let mut acc = 0.0;
        for row in self.mf.iter().rev() {
            let mut row_acc = 0.0;
            for &c in row.iter().rev() {
                row_acc = row_acc * y + c;
            }
            acc = acc * x + row_acc;
        }
        acc
    }

    /// Certified sign grid: the exact sign of the field at every grid node
    /// of the window. Slower than the `f64` fast path; intended for spot
    /// certification of a traced picture rather than routine plotting.
    pub fn certified_sign_grid(&self, window: &Window) -> Vec<Vec<i8>> {
        let res = window.resolution;
        let (dx, dy) = window.cell();
        let xs: Vec<BigRational> = (0..=res)
            .map(|i| crate::rat::rat_from_f64(window.x_min + dx * i as f64))
            .collect();
        let ys: Vec<BigRational> = (0..=res)
            .map(|j| crate::rat::rat_from_f64(window.y_min + dy * j as f64))
            .collect();
        xs.par_iter()
            .map(|x| {
                ys.iter()
                    .map(|y| crate::rat::sign_i8(&self.m.eval_exact(x, y)))
                    .collect()
            })
            .collect()
    }
}

/// Trace the curve `Im f = 0` inside the window.
///
/// Returns the synthesized real-axis band (always part of the curve) followed
/// by the marching-squares components of `M = 0`, unclassified. Components
/// with fewer than 8 points are dropped as grid noise.
pub fn trace_gamma_tilde(pair: &RecurrencePair, window: &Window) -> Vec<CurveComponent> {
    let field = GammaTildeField::new(pair);
    trace_field(&field, pair, window)
}

/// As [`trace_gamma_tilde`] but reusing a prepared field.
pub fn trace_field(
    field: &GammaTildeField,
    _pair: &RecurrencePair,
    window: &Window,
) -> Vec<CurveComponent> {
    let res = window.resolution;
    let (dx, dy) = window.cell();
    let xs: Vec<f64> = (0..=res).map(|i| window.x_min + dx * i as f64).collect();
    let ys: Vec<f64> = (0..=res).map(|j| window.y_min + dy * j as f64).collect();

    // Grid values, rows data-parallel.
    let values: Vec<Vec<f64>> = xs
        .par_iter()
        .map(|&x| ys.iter().map(|&y| field.eval(x, y)).collect())
        .collect();

    let mut components = vec![CurveComponent {
        points: xs.iter().map(|&x| (x, 0.0)).collect(),
        closed: false,
        classification: Classification::RealAxis,
        crossing_points: Vec::new(),
    }];
    components.extend(march(&values, &xs, &ys, |x, y| field.eval(x, y)));
    components
}

/// Edge identifiers for marching squares: horizontal edges then vertical.
fn h_edge(i: usize, j: usize, res: usize) -> usize {
    j * res + i
}
fn v_edge(i: usize, j: usize, res: usize) -> usize {
    res * (res + 1) + i * res + j
}

fn march(
    values: &[Vec<f64>],
    xs: &[f64],
    ys: &[f64],
    center_eval: impl Fn(f64, f64) -> f64,
) -> Vec<CurveComponent> {
    let res = xs.len() - 1;
    let pos = |v: f64| v > 0.0;
    let mut crossings: Vec<Option<(f64, f64)>> = vec![None; 2 * res * (res + 1)];

    // Horizontal edges (i, j) -> (i+1, j).
    for j in 0..=res {
        for i in 0..res {
            let (a, b) = (values[i][j], values[i + 1][j]);
            if pos(a) != pos(b) {
                let t = a / (a - b);
                crossings[h_edge(i, j, res)] = Some((xs[i] + t * (xs[i + 1] - xs[i]), ys[j]));
            }
        }
    }
    // Vertical edges (i, j) -> (i, j+1).
    for i in 0..=res {
        for j in 0..res {
            let (a, b) = (values[i][j], values[i][j + 1]);
            if pos(a) != pos(b) {
                let t = a / (a - b);
                crossings[v_edge(i, j, res)] = Some((xs[i], ys[j] + t * (ys[j + 1] - ys[j])));
            }
        }
    }

    // Segments as pairs of edge ids.
    let mut segments: Vec<(usize, usize)> = Vec::new();
    for i in 0..res {
        for j in 0..res {
            let bl = pos(values[i][j]);
            let br = pos(values[i + 1][j]);
            let tr = pos(values[i + 1][j + 1]);
            let tl = pos(values[i][j + 1]);
            let case = (bl as usize) | (br as usize) << 1 | (tr as usize) << 2 | (tl as usize) << 3;
            let bottom = h_edge(i, j, res);
            let top = h_edge(i, j + 1, res);
            let left = v_edge(i, j, res);
            let right = v_edge(i + 1, j, res);
            match case {
                0 | 15 => {}
                1 | 14 => segments.push((left, bottom)),
                2 | 13 => segments.push((bottom, right)),
                3 | 12 => segments.push((left, right)),
                4 | 11 => segments.push((right, top)),
                6 | 9 => segments.push((bottom, top)),
                7 | 8 => segments.push((top, left)),
                5 | 10 => {
                    // Saddle: resolve with the sign at the cell center.
                    let cx = 0.5 * (xs[i] + xs[i + 1]);
                    let cy = 0.5 * (ys[j] + ys[j + 1]);
                    let center_pos = pos(center_eval(cx, cy));
                    let connect_bl = (case == 5) == center_pos;
                    if connect_bl {
                        segments.push((left, bottom));
                        segments.push((right, top));
                    } else {
                        segments.push((bottom, right));
                        segments.push((top, left));
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    // Edge adjacency and polyline walks.
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); crossings.len()];
    for (si, &(a, b)) in segments.iter().enumerate() {
        adjacency[a].push(si);
        adjacency[b].push(si);
    }
    let mut visited = vec![false; segments.len()];
    let mut components = Vec::new();
    for start in 0..segments.len() {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let (a, b) = segments[start];
        let mut chain = vec![a, b];
        // Extend forward from b, then backward from a.
        for dir in 0..2 {
            loop {
                let tip = if dir == 0 { *chain.last().unwrap() } else { chain[0] };
                let next = adjacency[tip].iter().copied().find(|&s| !visited[s]);
                match next {
                    None => break,
                    Some(s) => {
                        visited[s] = true;
                        let (p, q) = segments[s];
                        let new_edge = if p == tip { q } else { p };
                        if dir == 0 {
                            chain.push(new_edge);
                        } else {
                            chain.insert(0, new_edge);
                        }
                    }
                }
            }
        }
        let closed = chain.len() > 2 && chain.first() == chain.last();
        let points: Vec<(f64, f64)> = chain
            .iter()
            .filter_map(|&e| crossings[e])
            .collect();
        if points.len() >= 8 {
            components.push(CurveComponent {
                points,
                closed,
                classification: Classification::Unresolved,
                crossing_points: Vec::new(),
            });
        }
    }
    components
}

/// Fill in classifications. Components meeting `y = 0` are crossing ovals and
/// every crossing abscissa must sit within 3 cells of a real critical point
/// of `f`; otherwise the component is left unresolved (grid too coarse).
/// Components clear of the axis by more than 2 cells are disjoint ovals.
pub fn classify(
    mut components: Vec<CurveComponent>,
    real_critical_xs: &[f64],
    window: &Window,
) -> Vec<CurveComponent> {
    let (dx, dy) = window.cell();
    for comp in &mut components {
        if comp.classification == Classification::RealAxis {
            continue;
        }
        let min_abs_y = comp
            .points
            .iter()
            .map(|p| p.1.abs())
            .fold(f64::INFINITY, f64::min);
        if min_abs_y > 2.0 * dy {
            comp.classification = Classification::DisjointOval;
            continue;
        }
        // Crossing abscissae: sign changes of y along the polyline, falling
        // back to the nearest-approach point for tangential contact.
        let mut crossings = Vec::new();
        for w in comp.points.windows(2) {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            if y0 == 0.0 {
                crossings.push(x0);
            } else if (y0 > 0.0) != (y1 > 0.0) {
                let t = y0 / (y0 - y1);
                crossings.push(x0 + t * (x1 - x0));
            }
        }
        if crossings.is_empty() {
            if let Some(p) = comp
                .points
                .iter()
                .min_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
            {
                crossings.push(p.0);
            }
        }
        crossings.sort_by(|a, b| a.partial_cmp(b).unwrap());
        crossings.dedup_by(|a, b| (*a - *b).abs() < dx);
        let all_matched = crossings
            .iter()
            .all(|&cx| real_critical_xs.iter().any(|&r| (cx - r).abs() <= 3.0 * dx));
        comp.crossing_points = crossings;
        comp.classification = if all_matched {
            Classification::CrossingOval
        } else {
            Classification::Unresolved
        };
    }
    components
}

/// One slice of the curve `f^{-1}([0,4])` sampled at a level `s`.
#[derive(Clone, Debug)]
pub struct CloudSlice {
    pub s: f64,
    pub s_exact: BigRational,
    pub roots: Vec<Complex64>,
    pub converged: bool,
}

/// Sample the curve as preimages: the roots of `Q1^2 - s Q2` for `s` on a
/// uniform grid over `[0, 4]` with `s_count` nodes (endpoints included, so
/// `s = 0` gives the roots of `Q1^2` and `s = 4` the roots of the
/// discriminant).
pub fn gamma_point_cloud(
    pair: &RecurrencePair,
    s_count: usize,
    config: &RootFindConfig,
) -> Result<Vec<CloudSlice>> {
    if s_count < 2 {
        return Err(Error::InvalidInput("point cloud needs at least 2 levels".into()));
    }
    let q1sq = pair.q1().square();
    (0..s_count)
        .into_par_iter()
        .map(|j| {
            let s_exact = BigRational::new((4 * j).into(), ((s_count - 1) as i64).into());
            let g = &q1sq - &pair.q2().scale(&s_exact);
            let (roots, converged) = if g.degree().unwrap_or(0) >= 1 {
                let rs = all_complex_roots(&g, config)?;
                (rs.roots, rs.converged)
            } else {
                (Vec::new(), true)
            };
            Ok(CloudSlice {
                s: rat_to_f64(&s_exact),
                s_exact,
                roots,
                converged,
            })
        })
        .collect()
}

fn svg_xy(window: &Window, size: f64, p: (f64, f64)) -> (f64, f64) {
    let sx = (p.0 - window.x_min) / (window.x_max - window.x_min) * size;
    let sy = size - (p.1 - window.y_min) / (window.y_max - window.y_min) * size;
    (sx, sy)
}

/// Render traced components as a standalone SVG. Discriminant zeros are drawn
/// red and real critical points green, matching the CSV/JSON conventions.
pub fn render_svg(
    components: &[CurveComponent],
    window: &Window,
    discriminant_roots: &[f64],
    real_critical_xs: &[f64],
) -> String {
    let size = 640.0;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">\n",
        s = size
    ));
    out.push_str(&format!(
        "<rect width=\"{s}\" height=\"{s}\" fill=\"white\"/>\n",
        s = size
    ));
    for comp in components {
        let color = match comp.classification {
            Classification::RealAxis => "#909090",
            Classification::CrossingOval => "#1f77b4",
            Classification::DisjointOval => "#ff7f0e",
            Classification::Unresolved => "#c0c0c0",
        };
        let pts: Vec<String> = comp
            .points
            .iter()
            .map(|&p| {
                let (sx, sy) = svg_xy(window, size, p);
                format!("{},{}", sx, sy)
            })
            .collect();
        out.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1\"/>\n",
            pts.join(" "),
            color
        ));
    }
    for &x in discriminant_roots {
        let (sx, sy) = svg_xy(window, size, (x, 0.0));
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#d62728\"/>\n",
            sx, sy
        ));
    }
    for &x in real_critical_xs {
        let (sx, sy) = svg_xy(window, size, (x, 0.0));
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#2ca02c\"/>\n",
            sx, sy
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// CSV rows `x,y,component_id,classification` for every traced point.
pub fn render_components_csv(components: &[CurveComponent]) -> String {
    let mut out = String::from("x,y,component_id,classification\n");
    for (id, comp) in components.iter().enumerate() {
        for &(x, y) in &comp.points {
            out.push_str(&format!("{},{},{},{}\n", x, y, id, comp.classification.as_str()));
        }
    }
    out
}

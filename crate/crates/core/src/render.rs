//! SVG pictures of a map: images of concentric circles and radial segments, plus
//! the image of a circle close to the boundary.
//!
//! Output is plain SVG 1.1 with one `<path>` per curve and coordinates printed to six
//! decimals, so identical inputs give identical bytes.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::shear::HarmonicMap;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rect {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
}

impl Rect {
    fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    fn height(&self) -> f64 {
        self.y_max - self.y_min
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Viewport {
    /// Fitted to the bulk of the sampled image, padded by 5%.
    Auto,
    Explicit(Rect),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RenderOptions {
    pub circles: usize,
    pub rays: usize,
    /// Outermost grid circle and ray length.
    pub r_max: f64,
    /// Radius of the boundary curve.
    pub boundary_r: f64,
    pub samples_per_curve: usize,
    pub viewport: Viewport,
    /// Pixel size of the longer side.
    pub size_px: u32,
    /// Stroke widths in pixels.
    pub grid_stroke: f64,
    pub boundary_stroke: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            circles: 10,
            rays: 24,
            r_max: 0.99,
            boundary_r: 0.999,
            samples_per_curve: 720,
            viewport: Viewport::Auto,
            size_px: 600,
            grid_stroke: 0.6,
            boundary_stroke: 1.4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("invalid render options: {0}")]
    InvalidOptions(&'static str),
    #[error("no point of the picture could be evaluated")]
    Empty,
}

impl RenderOptions {
    fn validate(&self) -> Result<(), RenderError> {
        if self.circles == 0 || self.rays == 0 {
            return Err(RenderError::InvalidOptions("circles and rays must be at least 1"));
        }
        if !(self.r_max > 0.0 && self.r_max < 1.0) || !(self.boundary_r > 0.0 && self.boundary_r < 1.0) {
            return Err(RenderError::InvalidOptions("radii must lie in (0, 1)"));
        }
        if self.samples_per_curve < 2 {
            return Err(RenderError::InvalidOptions("need at least 2 samples per curve"));
        }
        if let Viewport::Explicit(r) = self.viewport {
            if !(r.width() > 0.0 && r.height() > 0.0) {
                return Err(RenderError::InvalidOptions("empty viewport"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Role {
    Circle,
    Ray,
    Boundary,
}

struct Curve {
    role: Role,
    points: Vec<Option<Complex64>>,
    closed: bool,
}

fn sample(f: &HarmonicMap, zs: impl Iterator<Item = Complex64>) -> Vec<Option<Complex64>> {
    zs.map(|z| f.eval(z).ok().filter(|w| w.re.is_finite() && w.im.is_finite()))
        .collect()
}

fn curves(f: &HarmonicMap, o: &RenderOptions) -> Vec<Curve> {
    let n = o.samples_per_curve;
    let circle = |r: f64| (0..n).map(move |k| Complex64::from_polar(r, TAU * k as f64 / n as f64));
    let mut out = Vec::new();
    for k in 1..=o.circles {
        let r = o.r_max * k as f64 / o.circles as f64;
        out.push(Curve { role: Role::Circle, points: sample(f, circle(r)), closed: true });
    }
    for j in 0..o.rays {
        let dir = Complex64::from_polar(1.0, TAU * j as f64 / o.rays as f64);
        let zs = (0..n).map(move |k| dir * (o.r_max * k as f64 / (n - 1) as f64));
        out.push(Curve { role: Role::Ray, points: sample(f, zs), closed: false });
    }
    out.push(Curve { role: Role::Boundary, points: sample(f, circle(o.boundary_r)), closed: true });
    out
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    sorted[((q * (sorted.len() - 1) as f64).round() as usize).min(sorted.len() - 1)]
}

/// Central 98% of the points in each coordinate, padded by 5% per side; square-ish
/// frames are not forced.
fn auto_viewport(curves: &[Curve]) -> Option<Rect> {
    let (mut xs, mut ys): (Vec<f64>, Vec<f64>) =
        curves.iter().flat_map(|c| c.points.iter().flatten()).map(|w| (w.re, w.im)).unzip();
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (mut x0, mut x1) = (quantile(&xs, 0.01), quantile(&xs, 0.99));
    let (mut y0, mut y1) = (quantile(&ys, 0.01), quantile(&ys, 0.99));
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    // keep a degenerate side visible
    if x1 - x0 < 1e-3 * span {
        x0 -= 0.05 * span;
        x1 += 0.05 * span;
    }
    if y1 - y0 < 1e-3 * span {
        y0 -= 0.05 * span;
        y1 += 0.05 * span;
    }
    let (px, py) = (0.05 * (x1 - x0), 0.05 * (y1 - y0));
    Some(Rect { x_min: x0 - px, y_min: y0 - py, x_max: x1 + px, y_max: y1 + py })
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Path data; a missing point, or one far outside the frame, starts a new subpath.
fn path_data(c: &Curve, far: &Rect) -> String {
    let inside = |w: &Complex64| {
        w.re >= far.x_min && w.re <= far.x_max && w.im >= far.y_min && w.im <= far.y_max
    };
    let mut runs: Vec<Vec<Complex64>> = Vec::new();
    let mut cur = Vec::new();
    for p in &c.points {
        match p.filter(inside) {
            Some(w) => cur.push(w),
            None if !cur.is_empty() => runs.push(std::mem::take(&mut cur)),
            None => {}
        }
    }
    if !cur.is_empty() {
        runs.push(cur);
    }
    let whole = runs.len() == 1 && runs[0].len() == c.points.len();
    // join the wrap-around piece of a closed curve to its head
    if c.closed && !whole && runs.len() > 1 && c.points[0].filter(inside).is_some()
        && c.points.last().copied().flatten().filter(inside).is_some()
    {
        let tail = runs.pop().unwrap();
        let head = std::mem::take(&mut runs[0]);
        runs[0] = tail.into_iter().chain(head).collect();
    }
    let mut d = String::new();
    for run in runs.iter().filter(|r| r.len() >= 2) {
        for (k, w) in run.iter().enumerate() {
            if !d.is_empty() {
                d.push(' ');
            }
            // SVG y axis points down
            let _ = write!(d, "{}{} {}", if k == 0 { "M" } else { "L" }, num(w.re), num(-w.im));
        }
    }
    if c.closed && whole && !d.is_empty() {
        d.push_str(" Z");
    }
    d
}

pub fn render_svg(f: &HarmonicMap, opts: &RenderOptions) -> Result<String, RenderError> {
    opts.validate()?;
    let curves = curves(f, opts);
    let view = match opts.viewport {
        Viewport::Explicit(r) => r,
        Viewport::Auto => auto_viewport(&curves).ok_or(RenderError::Empty)?,
    };
    let (w, h) = (view.width(), view.height());
    let far = Rect {
        x_min: view.x_min - 4.0 * w,
        y_min: view.y_min - 4.0 * h,
        x_max: view.x_max + 4.0 * w,
        y_max: view.y_max + 4.0 * h,
    };
    let longer = w.max(h);
    let unit = longer / opts.size_px as f64;
    let (px_w, px_h) = (
        (opts.size_px as f64 * w / longer).round().max(1.0),
        (opts.size_px as f64 * h / longer).round().max(1.0),
    );

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{px_w}\" height=\"{px_h}\" viewBox=\"{} {} {} {}\">",
        num(view.x_min),
        num(-view.y_max),
        num(w),
        num(h)
    );
    let _ = writeln!(
        svg,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\"/>",
        num(view.x_min),
        num(-view.y_max),
        num(w),
        num(h)
    );
    for c in &curves {
        let d = path_data(c, &far);
        if d.is_empty() {
            continue;
        }
        let (class, stroke, width) = match c.role {
            Role::Circle => ("circle", "#4a6fa5", opts.grid_stroke),
            Role::Ray => ("ray", "#a5564a", opts.grid_stroke),
            Role::Boundary => ("boundary", "#000000", opts.boundary_stroke),
        };
        let _ = writeln!(
            svg,
            "<path class=\"{class}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{}\" stroke-linejoin=\"round\" d=\"{d}\"/>",
            num(width * unit)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

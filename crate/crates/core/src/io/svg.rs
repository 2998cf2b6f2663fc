use std::fmt::Write as _;

use rug::{Assign, Float};

use crate::construct::Drawing;
use crate::geometry::{dist, Point};
use crate::tree::VertexId;

/// A region drawn translucently over the edges.
#[derive(Clone, Debug, PartialEq)]
pub enum Overlay {
    /// The lens of the pair: the points strictly closer to both endpoints
    /// than they are to each other.
    Lens(VertexId, VertexId),
    /// `disc(q, delta)` minus the closed disc around `p` through `q`.
    Lune { p: VertexId, q: VertexId, delta: Float },
}

#[derive(Clone, Debug)]
pub struct SvgOptions {
    /// Width of the main panel in user units.
    pub width: f64,
    pub overlay: Option<Overlay>,
    pub labels: bool,
    /// Bounding-box extent over shortest edge above which zoom insets are
    /// added.
    pub inset_threshold: f64,
    pub max_insets: usize,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { width: 800.0, overlay: None, labels: true, inset_threshold: 200.0, max_insets: 4 }
    }
}

const MARGIN: f64 = 24.0;
const INSET_SIZE: f64 = 240.0;
const INSET_GAP: f64 = 16.0;
const VERTEX_RADIUS: f64 = 3.5;

const PALETTE: [(u8, u8, u8); 10] = [
    (0x1f, 0x77, 0xb4),
    (0xd6, 0x27, 0x28),
    (0x2c, 0xa0, 0x2c),
    (0xff, 0x7f, 0x0e),
    (0x94, 0x67, 0xbd),
    (0x8c, 0x56, 0x4b),
    (0xe3, 0x77, 0xc2),
    (0x17, 0xbe, 0xcf),
    (0xbc, 0xbd, 0x22),
    (0x7f, 0x7f, 0x7f),
];

fn part_color(i: usize) -> (u8, u8, u8) {
    if i < PALETTE.len() {
        return PALETTE[i];
    }
    // golden-angle hues at fixed saturation and lightness
    let h = (i as f64 * 137.507_764) % 360.0;
    let (s, l) = (0.65, 0.45);
    let c = (1.0 - (2.0 * l - 1.0_f64).abs()) * s;
    let x = c * (1.0 - ((h / 60.0) % 2.0 - 1.0).abs());
    let (r, g, b) = match (h / 60.0) as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let byte = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    (byte(r), byte(g), byte(b))
}

fn blend(parts: &[usize]) -> String {
    let (mut r, mut g, mut b) = (0u32, 0u32, 0u32);
    for &p in parts {
        let (pr, pg, pb) = part_color(p);
        r += pr as u32;
        g += pg as u32;
        b += pb as u32;
    }
    let n = parts.len().max(1) as u32;
    format!("#{:02x}{:02x}{:02x}", r / n, g / n, b / n)
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Maps drawing coordinates to a panel: subtract `origin`, scale, flip y.
/// The subtraction happens at full precision so that deep detail survives
/// the trip to `f64`.
struct View {
    origin: Point,
    scale: Float,
    offset: (f64, f64),
}

impl View {
    fn map(&self, p: &Point) -> (f64, f64) {
        let prec = p.prec().max(self.origin.prec());
        let dx = Float::with_val(prec, p.x() - self.origin.x()) * &self.scale;
        let dy = Float::with_val(prec, p.y() - self.origin.y()) * &self.scale;
        (self.offset.0 + dx.to_f64(), self.offset.1 - dy.to_f64())
    }
}

/// Bounding-box extent divided by the shortest edge length, with the
/// shortest edge. `None` for drawings without a positive-length edge.
fn scale_ratio(d: &Drawing) -> Option<(f64, usize)> {
    let t = d.tree();
    let (lo, hi) = bbox(d.positions());
    let prec = d.meta().precision_bits;
    let extent = Float::with_val(prec, &hi.0 - &lo.0).max(&Float::with_val(prec, &hi.1 - &lo.1));
    let mut best: Option<(Float, usize)> = None;
    for (i, &(a, b)) in t.edges().iter().enumerate() {
        let len = dist(d.position(a), d.position(b));
        if len.is_zero() {
            continue;
        }
        if best.as_ref().is_none_or(|(l, _)| len < *l) {
            best = Some((len, i));
        }
    }
    let (len, i) = best?;
    Some(((extent / len).to_f64(), i))
}

fn bbox(points: &[Point]) -> ((Float, Float), (Float, Float)) {
    let prec = points.iter().map(Point::prec).max().unwrap_or(crate::MIN_PRECISION);
    let mut lo = (Float::with_val(prec, f64::INFINITY), Float::with_val(prec, f64::INFINITY));
    let mut hi = (Float::with_val(prec, f64::NEG_INFINITY), Float::with_val(prec, f64::NEG_INFINITY));
    for p in points {
        if *p.x() < lo.0 {
            lo.0.assign(p.x());
        }
        if *p.y() < lo.1 {
            lo.1.assign(p.y());
        }
        if *p.x() > hi.0 {
            hi.0.assign(p.x());
        }
        if *p.y() > hi.1 {
            hi.1.assign(p.y());
        }
    }
    if points.is_empty() {
        let zero = (Float::new(prec), Float::new(prec));
        return (zero.clone(), zero);
    }
    (lo, hi)
}

/// Liang-Barsky clip of `a..b` to the square `[lo, hi]²`.
fn clip(a: (f64, f64), b: (f64, f64), lo: f64, hi: f64) -> Option<((f64, f64), (f64, f64))> {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let (mut t0, mut t1) = (0.0_f64, 1.0_f64);
    for (p, q) in [(-dx, a.0 - lo), (dx, hi - a.0), (-dy, a.1 - lo), (dy, hi - a.1)] {
        if p == 0.0 {
            if q < 0.0 {
                return None;
            }
        } else {
            let r = q / p;
            if p < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
        }
        if t0 > t1 {
            return None;
        }
    }
    Some(((a.0 + t0 * dx, a.1 + t0 * dy), (a.0 + t1 * dx, a.1 + t1 * dy)))
}

fn f(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Renders the drawing as an SVG 1.1 document.
///
/// Each edge is one `<polyline>` stroked in its part's colour; edges in
/// several parts of a covering get the blend of those colours and a dash
/// pattern. Each vertex appears once, as a `<g class="vertex">` holding a
/// circle and its label. Drawings whose extent dwarfs their shortest edge
/// get a row of `<g class="inset">` panels magnifying the neighbourhood of
/// that edge at logarithmically spaced zoom factors.
pub fn render_svg(d: &Drawing, options: &SvgOptions) -> String {
    let t = d.tree();
    let prec = d.meta().precision_bits;
    let width = options.width.max(2.0 * MARGIN + 1.0);
    let inner = width - 2.0 * MARGIN;

    let (lo, hi) = bbox(d.positions());
    let span_x = Float::with_val(prec, &hi.0 - &lo.0);
    let span_y = Float::with_val(prec, &hi.1 - &lo.1);
    let span = Float::with_val(prec, span_x.max_ref(&span_y));
    let scale = if span.is_zero() { Float::with_val(prec, 1) } else { Float::with_val(prec, inner / &span) };
    let panel_h = 2.0 * MARGIN + (Float::with_val(prec, &span_y * &scale)).to_f64();
    let main = View {
        origin: Point::new(lo.0.clone(), lo.1.clone()).expect("finite"),
        scale,
        offset: (MARGIN, panel_h - MARGIN),
    };

    let membership = match &d.instance().decomposition {
        Some(dec) => dec.membership(t.edge_count()),
        None => vec![vec![0]; t.edge_count()],
    };
    let stroke = |e: usize| -> (String, bool) {
        let m = &membership[e];
        (blend(m), m.len() > 1)
    };

    let mapped: Vec<(f64, f64)> = d.positions().iter().map(|p| main.map(p)).collect();

    let insets = match scale_ratio(d) {
        Some((ratio, e)) if ratio > options.inset_threshold && options.max_insets > 0 => Some((ratio, e)),
        _ => None,
    };
    let n_insets = insets.map_or(0, |(ratio, _)| {
        let decades = (ratio / options.inset_threshold).log10().ceil() as usize;
        decades.clamp(1, options.max_insets)
    });
    let total_w = width.max(n_insets as f64 * (INSET_SIZE + INSET_GAP) + 2.0 * MARGIN - INSET_GAP);
    let total_h = if n_insets > 0 { panel_h + INSET_SIZE + INSET_GAP } else { panel_h };

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        f(total_w),
        f(total_h),
        f(total_w),
        f(total_h)
    );
    let _ = writeln!(s, "<title>{}</title>", escape(&d.meta().construction));
    s.push_str("<rect class=\"background\" x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n");

    if let Some(overlay) = &options.overlay {
        render_overlay(&mut s, d, &main, overlay);
    }

    s.push_str("<g class=\"edges\" fill=\"none\" stroke-width=\"1.5\" stroke-linecap=\"round\">\n");
    for (e, &(a, b)) in t.edges().iter().enumerate() {
        let (color, shared) = stroke(e);
        let (pa, pb) = (mapped[a.index()], mapped[b.index()]);
        let parts: Vec<String> = membership[e].iter().map(ToString::to_string).collect();
        let _ = write!(
            s,
            "<polyline class=\"edge\" data-edge=\"{e}\" data-parts=\"{}\" points=\"{},{} {},{}\" stroke=\"{color}\"",
            parts.join(" "),
            f(pa.0),
            f(pa.1),
            f(pb.0),
            f(pb.1)
        );
        if shared {
            s.push_str(" stroke-dasharray=\"6 3\"");
        }
        s.push_str("/>\n");
    }
    s.push_str("</g>\n");

    s.push_str("<g class=\"vertices\" font-family=\"sans-serif\" font-size=\"10\">\n");
    for v in t.vertices() {
        let (x, y) = mapped[v.index()];
        let name = escape(t.name(v));
        let _ = write!(
            s,
            "<g class=\"vertex\" id=\"v{}\" data-name=\"{name}\"><circle cx=\"{}\" cy=\"{}\" r=\"{VERTEX_RADIUS}\" fill=\"#000000\"/>",
            v.index(),
            f(x),
            f(y)
        );
        if options.labels {
            let _ = write!(
                s,
                "<text x=\"{}\" y=\"{}\">{name}</text>",
                f(x + VERTEX_RADIUS + 1.5),
                f(y - VERTEX_RADIUS - 1.5)
            );
        }
        s.push_str("</g>\n");
    }
    s.push_str("</g>\n");

    if let Some((ratio, e)) = insets {
        let (a, b) = t.edges()[e];
        let (pa, pb) = (d.position(a), d.position(b));
        let focus =
            Point::new(Float::with_val(prec, pa.x() + pb.x()) / 2u32, Float::with_val(prec, pa.y() + pb.y()) / 2u32)
                .expect("finite");
        let fm = main.map(&focus);
        let _ = writeln!(
            s,
            "<circle class=\"inset-focus\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#444444\" stroke-width=\"0.8\"/>",
            f(fm.0),
            f(fm.1),
            f(VERTEX_RADIUS * 3.0)
        );
        // The last inset shows the shortest edge at a quarter of the panel.
        let deepest = (ratio / 4.0).max(1.0);
        for i in 1..=n_insets {
            let zoom = deepest.powf(i as f64 / n_insets as f64);
            let x0 = MARGIN + (i - 1) as f64 * (INSET_SIZE + INSET_GAP);
            render_inset(&mut s, d, &membership, &focus, &main.scale, zoom, (x0, panel_h + INSET_GAP / 2.0), i);
        }
    }

    s.push_str("</svg>\n");
    s
}

#[allow(clippy::too_many_arguments)]
fn render_inset(
    s: &mut String,
    d: &Drawing,
    membership: &[Vec<usize>],
    focus: &Point,
    base: &Float,
    zoom: f64,
    corner: (f64, f64),
    index: usize,
) {
    let t = d.tree();
    let half = INSET_SIZE / 2.0;
    let scale = Float::with_val(base.prec(), base * zoom);
    let view = View { origin: focus.clone(), scale, offset: (half, half) };
    let _ = writeln!(
        s,
        "<g class=\"inset\" data-zoom=\"{zoom:e}\" transform=\"translate({},{})\">",
        f(corner.0),
        f(corner.1)
    );
    let _ = writeln!(s, "<clipPath id=\"inset-clip-{index}\"><rect x=\"0\" y=\"0\" width=\"{INSET_SIZE}\" height=\"{INSET_SIZE}\"/></clipPath>");
    let _ = writeln!(
        s,
        "<rect x=\"0\" y=\"0\" width=\"{INSET_SIZE}\" height=\"{INSET_SIZE}\" fill=\"#fafafa\" stroke=\"#444444\" stroke-width=\"0.8\"/>"
    );
    let _ = writeln!(s, "<g clip-path=\"url(#inset-clip-{index})\" fill=\"none\" stroke-width=\"1.5\">");
    let mapped: Vec<(f64, f64)> = d.positions().iter().map(|p| view.map(p)).collect();
    for (e, &(a, b)) in t.edges().iter().enumerate() {
        let Some((p, q)) = clip(mapped[a.index()], mapped[b.index()], 0.0, INSET_SIZE) else { continue };
        let _ = write!(
            s,
            "<polyline class=\"inset-edge\" data-edge=\"{e}\" points=\"{},{} {},{}\" stroke=\"{}\"",
            f(p.0),
            f(p.1),
            f(q.0),
            f(q.1),
            blend(&membership[e])
        );
        if membership[e].len() > 1 {
            s.push_str(" stroke-dasharray=\"6 3\"");
        }
        s.push_str("/>\n");
    }
    for &(x, y) in &mapped {
        if (0.0..=INSET_SIZE).contains(&x) && (0.0..=INSET_SIZE).contains(&y) {
            let _ = writeln!(
                s,
                "<circle class=\"inset-vertex\" cx=\"{}\" cy=\"{}\" r=\"2.5\" fill=\"#000000\"/>",
                f(x),
                f(y)
            );
        }
    }
    s.push_str("</g>\n");
    let _ = writeln!(s, "<text x=\"4\" y=\"12\" font-family=\"sans-serif\" font-size=\"10\">×{zoom:.3e}</text>");
    s.push_str("</g>\n");
}

fn render_overlay(s: &mut String, d: &Drawing, view: &View, overlay: &Overlay) {
    let radius = |a: &Point, b: &Point| (dist(a, b) * &view.scale).to_f64();
    match overlay {
        Overlay::Lens(u, v) => {
            let (a, b) = (d.position(*u), d.position(*v));
            let (pa, pb) = (view.map(a), view.map(b));
            let r = radius(a, b);
            let mid = ((pa.0 + pb.0) / 2.0, (pa.1 + pb.1) / 2.0);
            let h = r * 3f64.sqrt() / 2.0;
            let (nx, ny) = if r > 0.0 { ((pa.1 - pb.1) / r, (pb.0 - pa.0) / r) } else { (0.0, 0.0) };
            let top = (mid.0 + nx * h, mid.1 + ny * h);
            let bottom = (mid.0 - nx * h, mid.1 - ny * h);
            let _ = writeln!(
                s,
                "<path class=\"overlay lens\" d=\"M {} {} A {r} {r} 0 0 1 {} {} A {r} {r} 0 0 1 {} {} Z\" fill=\"#ffcc00\" fill-opacity=\"0.25\" stroke=\"#cc9900\" stroke-width=\"0.8\"/>",
                f(top.0),
                f(top.1),
                f(bottom.0),
                f(bottom.1),
                f(top.0),
                f(top.1),
                r = f(r)
            );
        }
        Overlay::Lune { p, q, delta } => {
            let (a, b) = (d.position(*p), d.position(*q));
            let (pa, pb) = (view.map(a), view.map(b));
            let outer = (Float::with_val(delta.prec(), delta * &view.scale)).to_f64();
            let inner = radius(a, b);
            s.push_str(
                "<mask id=\"lune-mask\"><rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"#000000\"/>",
            );
            let _ = write!(s, "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#ffffff\"/>", f(pb.0), f(pb.1), f(outer));
            let _ = write!(s, "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#000000\"/>", f(pa.0), f(pa.1), f(inner));
            s.push_str("</mask>\n");
            let _ = writeln!(
                s,
                "<circle class=\"overlay lune\" cx=\"{}\" cy=\"{}\" r=\"{}\" mask=\"url(#lune-mask)\" fill=\"#66ccff\" fill-opacity=\"0.3\"/>",
                f(pb.0),
                f(pb.1),
                f(outer)
            );
        }
    }
}

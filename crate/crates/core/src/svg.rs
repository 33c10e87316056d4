//! Static SVG rendering of solution paths.
//!
//! Document units equal world units. The viewBox covers the start
//! position, the target circle and every path with 10% padding per axis,
//! and the y axis is flipped so counter-clockwise angles look as usual.

use std::fmt::Write as _;

use crate::dubins::{sample_path, DubinsPath};
use crate::instance::InstanceRecord;

const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// A path to draw, in the circle-centered frame, with a tooltip label.
pub struct Drawn<'a> {
    pub path: &'a DubinsPath,
    pub label: String,
}

struct Frame {
    left: f64,
    top: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn x(&self, x: f64) -> f64 {
        x - self.left
    }

    fn y(&self, y: f64) -> f64 {
        self.top - y
    }
}

/// Roughly 400 samples per path, and at least 30 per turning circle.
fn sample_step(path: &DubinsPath) -> f64 {
    (path.total_length() / 400.0)
        .min(path.rho() * std::f64::consts::TAU / 30.0)
        .max(1e-6)
}

/// Renders the target circle, the start pose and each path as one polyline.
pub fn render(world: &InstanceRecord, paths: &[Drawn<'_>]) -> String {
    let polylines: Vec<Vec<(f64, f64)>> = paths
        .iter()
        .map(|d| {
            sample_path(d.path, sample_step(d.path))
                .expect("positive step")
                .into_iter()
                .map(|s| (s.pose.x + world.cx, s.pose.y + world.cy))
                .collect()
        })
        .collect();

    let (mut xmin, mut xmax) = (world.cx - world.r, world.cx + world.r);
    let (mut ymin, mut ymax) = (world.cy - world.r, world.cy + world.r);
    for &(x, y) in polylines.iter().flatten().chain(std::iter::once(&(world.x0, world.y0))) {
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymin = ymin.min(y);
        ymax = ymax.max(y);
    }
    let (pad_x, pad_y) = (0.1 * (xmax - xmin), 0.1 * (ymax - ymin));
    let frame = Frame {
        left: xmin - pad_x,
        top: ymax + pad_y,
        width: xmax - xmin + 2.0 * pad_x,
        height: ymax - ymin + 2.0 * pad_y,
    };
    let extent = frame.width.max(frame.height);
    let stroke = extent * 0.004;
    let (px_w, px_h) = (800.0 * frame.width / extent, 800.0 * frame.height / extent);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{px_w:.0}" height="{px_h:.0}" viewBox="0 0 {:.9} {:.9}">"#,
        frame.width, frame.height
    );
    let _ = writeln!(
        s,
        r##"<circle cx="{:.9}" cy="{:.9}" r="{:.9}" fill="none" stroke="#555555" stroke-width="{stroke:.9}" stroke-dasharray="{:.9}"/>"##,
        frame.x(world.cx),
        frame.y(world.cy),
        world.r,
        4.0 * stroke
    );
    for (k, (pts, d)) in polylines.iter().zip(paths).enumerate() {
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.9},{:.9}", frame.x(x), frame.y(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{}" stroke-width="{stroke:.9}" points="{}"><title>{}</title></polyline>"#,
            COLORS[k % COLORS.len()],
            coords.join(" "),
            d.label
        );
    }
    let a = 0.03 * extent;
    let (sin, cos) = world.theta0.sin_cos();
    let tip = (world.x0 + a * cos, world.y0 + a * sin);
    let back = |side: f64| {
        (
            world.x0 - 0.5 * a * cos - side * 0.5 * a * sin,
            world.y0 - 0.5 * a * sin + side * 0.5 * a * cos,
        )
    };
    let marker: Vec<String> = [tip, back(1.0), back(-1.0)]
        .iter()
        .map(|&(x, y)| format!("{:.9},{:.9}", frame.x(x), frame.y(y)))
        .collect();
    let _ = writeln!(s, r##"<polygon fill="#000000" points="{}"/>"##, marker.join(" "));
    s.push_str("</svg>\n");
    s
}

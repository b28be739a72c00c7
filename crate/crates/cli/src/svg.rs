//! Plot of a planar dual ball with its carriers and integral exceptional
//! classes. Coordinates are exact halves, so everything is printed with one
//! decimal and the output is byte-stable.

use std::fmt::Write;

use num_traits::ToPrimitive;
use thurstonlab::exceptional::{exceptional_segments, xi_enumerate};
use thurstonlab::linalg::Q;
use thurstonlab::norms::DualBall;

const SCALE: f64 = 40.0;
const MARGIN: f64 = 30.0;

fn coord(x: &Q) -> f64 {
    x.to_f64().expect("small rationals convert")
}

pub fn plot(ball: &DualBall) -> String {
    let set = exceptional_segments(ball);
    let xi = xi_enumerate(ball);

    let mut r: i64 = 1;
    for v in ball.vertices() {
        r = r.max(v[0].abs()).max(v[1].abs());
    }
    for w in &xi {
        r = r.max(w[0].abs()).max(w[1].abs());
    }
    let size = 2.0 * (r as f64) * SCALE + 2.0 * MARGIN;
    let centre = size / 2.0;
    let px = |x: f64| centre + x * SCALE;
    let py = |y: f64| centre - y * SCALE;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size:.1}" height="{size:.1}" viewBox="0 0 {size:.1} {size:.1}">"#
    );
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(
        s,
        r##"<line x1="0" y1="{c:.1}" x2="{size:.1}" y2="{c:.1}" stroke="#cccccc"/><line x1="{c:.1}" y1="0" x2="{c:.1}" y2="{size:.1}" stroke="#cccccc"/>"##,
        c = centre
    );

    // vertices come sorted; walk them by angle for the outline
    let mut vs: Vec<(f64, f64)> = ball
        .vertices()
        .iter()
        .map(|v| (v[0] as f64, v[1] as f64))
        .collect();
    vs.sort_by(|a, b| a.1.atan2(a.0).total_cmp(&b.1.atan2(b.0)));
    let pts: Vec<String> = vs.iter().map(|(x, y)| format!("{:.1},{:.1}", px(*x), py(*y))).collect();
    let _ = writeln!(
        s,
        r##"<polygon points="{}" fill="#dde8f5" stroke="#1f4e8c" stroke-width="2"/>"##,
        pts.join(" ")
    );

    for c in &set.carriers {
        let (a, b) = (&c.segment.a, &c.segment.b);
        let _ = writeln!(
            s,
            r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#c0392b" stroke-opacity="0.5"/>"##,
            px(coord(&a[0])),
            py(coord(&a[1])),
            px(coord(&b[0])),
            py(coord(&b[1]))
        );
    }
    for w in &xi {
        let _ = writeln!(
            s,
            r##"<circle cx="{:.1}" cy="{:.1}" r="4" fill="#111111"/>"##,
            px(w[0] as f64),
            py(w[1] as f64)
        );
    }
    s.push_str("</svg>\n");
    s
}

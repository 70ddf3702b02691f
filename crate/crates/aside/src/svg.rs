use std::fmt::Write;

use weights_core::Weights;

use crate::strip::Strip;
use crate::AsideError;

const SCALE: f64 = 24.0;
const MARGIN: f64 = 20.0;

/// One period of the strip with every curve drawn, as a standalone SVG file.
pub fn strip_svg(w: &Weights) -> Result<String, AsideError> {
    let strip = Strip::new(w)?;
    let ll = strip.big_l() as f64;
    let period = strip.period() as f64;
    let y_lo = -2.0 * ll;
    let y_hi = y_lo + period + 2.0 * ll;
    let width = (ll + 1.0) * SCALE + 2.0 * MARGIN;
    let height = (y_hi - y_lo) * SCALE + 2.0 * MARGIN;
    let px = |x: f64| MARGIN + (x + ll) * SCALE;
    let py = |y: f64| MARGIN + (y_hi - y) * SCALE;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(
        out,
        r##"<line x1="{x:.1}" y1="{:.1}" x2="{x:.1}" y2="{:.1}" stroke="#999" stroke-dasharray="4 3"/>"##,
        py(y_hi),
        py(y_lo),
        x = px(1.0)
    );
    let mut a = (y_lo / period).ceil() as i64;
    while (a as f64) * period <= y_hi {
        let y = a as f64 * period;
        let _ = writeln!(out, r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="black"/>"#, px(0.0), py(y));
        a += 1;
    }
    for k in 0..strip.curve_count() {
        let c = strip.curve(k);
        let hue = 360.0 * k as f64 / strip.curve_count() as f64;
        let (qm, pm, pp, qp) = (c.q_minus, c.p_minus, c.p_plus, c.q_plus);
        let _ = writeln!(
            out,
            r#"<path d="M {:.1} {:.1} L {:.1} {:.1} A {r:.1} {r:.1} 0 0 1 {:.1} {:.1} L {:.1} {:.1}" fill="none" stroke="hsl({hue:.0},70%,40%)" stroke-width="1.5"><title>L_{k}</title></path>"#,
            px(qm.re as f64),
            py(qm.im as f64),
            px(pm.re as f64),
            py(pm.im as f64),
            px(pp.re as f64),
            py(pp.im as f64),
            px(qp.re as f64),
            py(qp.im as f64),
            r = c.arc_radius as f64 * SCALE,
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

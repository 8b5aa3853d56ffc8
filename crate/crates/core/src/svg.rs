//! SVG rendering of a profile in the box `[0,a] × [0,h]`, y axis up.

use std::fmt::Write;

use crate::curve::{Params, Polyline};
use crate::fmt::svg6;

pub fn render(p: &Polyline, params: &Params) -> String {
    let (a, h) = (svg6(params.a), svg6(params.h));
    let points: Vec<String> = p
        .vertices()
        .iter()
        .map(|v| format!("{},{}", svg6(v.x), svg6(v.y)))
        .collect();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {a} {h}" width="600" height="{}" preserveAspectRatio="xMidYMid meet">"#,
        svg6(600.0 * params.h / params.a)
    );
    let _ = writeln!(s, r#"  <g transform="translate(0,{h}) scale(1,-1)">"#);
    let _ = writeln!(
        s,
        r##"    <rect x="0" y="0" width="{a}" height="{h}" fill="none" stroke="#bbbbbb" stroke-width="1" vector-effect="non-scaling-stroke"/>"##
    );
    let _ = writeln!(
        s,
        r##"    <polyline points="{}" fill="none" stroke="#1f4e9c" stroke-width="2" vector-effect="non-scaling-stroke"/>"##,
        points.join(" ")
    );
    s.push_str("  </g>\n</svg>\n");
    s
}

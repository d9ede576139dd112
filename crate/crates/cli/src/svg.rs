//! Deterministic SVG: fixed precision, fixed element order, no timestamps.

use std::fmt::Write;

use num::ToPrimitive;

use toricsg::rat;
use toricsg::{LatticeVec, NVec, RatPoint, RatPolygon};

const SIZE: f64 = 560.0;
const MARGIN: f64 = 48.0;
/// Lattice dots are drawn only below this span.
const MAX_DOTS_SPAN: f64 = 80.0;

pub struct Figure {
    pub title: String,
    pub axes: (String, String),
    pub polygon: Option<RatPolygon>,
    pub arrows: Vec<NVec>,
}

impl Figure {
    pub fn polygon(title: impl Into<String>, p: RatPolygon) -> Self {
        Figure {
            title: title.into(),
            axes: ("x".into(), "y".into()),
            polygon: Some(p),
            arrows: Vec::new(),
        }
    }

    pub fn fan(title: impl Into<String>, rays: &[NVec]) -> Self {
        Figure {
            title: title.into(),
            axes: ("x".into(), "y".into()),
            polygon: None,
            arrows: rays.to_vec(),
        }
    }

    pub fn render(&self) -> String {
        let mut pts: Vec<(f64, f64)> = vec![(0.0, 0.0)];
        if let Some(p) = &self.polygon {
            pts.extend(p.vertices().iter().map(xy));
        }
        pts.extend(self.arrows.iter().map(|r| (r.x() as f64, r.y() as f64)));
        let (mut x0, mut x1, mut y0, mut y1) = pts.iter().fold(
            (f64::MAX, f64::MIN, f64::MAX, f64::MIN),
            |(a, b, c, d), &(x, y)| (a.min(x), b.max(x), c.min(y), d.max(y)),
        );
        x0 = x0.floor() - 1.0;
        y0 = y0.floor() - 1.0;
        x1 = x1.ceil() + 1.0;
        y1 = y1.ceil() + 1.0;
        let span = (x1 - x0).max(y1 - y0);
        let scale = (SIZE - 2.0 * MARGIN) / span;
        let sx = |x: f64| MARGIN + (x - x0) * scale;
        let sy = |y: f64| SIZE - MARGIN - (y - y0) * scale;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" font-family="monospace" font-size="11">"#
        );
        let _ = writeln!(s, r#"<title>{}</title>"#, escape(&self.title));
        let _ = writeln!(s, r##"<rect width="{SIZE}" height="{SIZE}" fill="#ffffff"/>"##);
        let _ = writeln!(
            s,
            r##"<defs><marker id="head" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="#1f4e79"/></marker></defs>"##
        );

        // lattice
        let _ = writeln!(s, r#"<g id="lattice">"#);
        if span <= MAX_DOTS_SPAN {
            for i in x0 as i64..=x1 as i64 {
                for j in y0 as i64..=y1 as i64 {
                    let _ = writeln!(
                        s,
                        r##"<circle cx="{:.2}" cy="{:.2}" r="1.5" fill="#b0b0b0"/>"##,
                        sx(i as f64),
                        sy(j as f64)
                    );
                }
            }
        }
        let _ = writeln!(s, "</g>");

        // axes through the origin
        let _ = writeln!(
            s,
            r##"<g id="axes" stroke="#808080" stroke-width="0.8"><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/></g>"##,
            sx(x0), sy(0.0), sx(x1), sy(0.0), sx(0.0), sy(y0), sx(0.0), sy(y1)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}">{}</text><text x="{:.2}" y="{:.2}">{}</text>"#,
            sx(x1) - 10.0,
            sy(0.0) - 6.0,
            escape(&self.axes.0),
            sx(0.0) + 6.0,
            sy(y1) + 12.0,
            escape(&self.axes.1)
        );

        if let Some(p) = &self.polygon {
            let coords: Vec<String> = p
                .vertices()
                .iter()
                .map(|v| {
                    let (x, y) = xy(v);
                    format!("{:.2},{:.2}", sx(x), sy(y))
                })
                .collect();
            let _ = writeln!(
                s,
                r##"<polygon id="body" points="{}" fill="#9ecae1" fill-opacity="0.6" stroke="#08519c" stroke-width="1.5"/>"##,
                coords.join(" ")
            );
            let _ = writeln!(s, r#"<g id="vertices">"#);
            for v in p.vertices() {
                let (x, y) = xy(v);
                let _ = writeln!(
                    s,
                    r##"<circle cx="{:.2}" cy="{:.2}" r="3" fill="#08519c"/><text x="{:.2}" y="{:.2}">{}</text>"##,
                    sx(x),
                    sy(y),
                    sx(x) + 5.0,
                    sy(y) - 5.0,
                    label(v)
                );
            }
            let _ = writeln!(s, "</g>");
        }

        if !self.arrows.is_empty() {
            let _ = writeln!(s, r##"<g id="rays" stroke="#1f4e79" stroke-width="1.5">"##);
            for r in &self.arrows {
                let (x, y) = (r.x() as f64, r.y() as f64);
                let _ = writeln!(
                    s,
                    r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" marker-end="url(#head)"/><text x="{:.2}" y="{:.2}" stroke="none">({},{})</text>"#,
                    sx(0.0),
                    sy(0.0),
                    sx(x),
                    sy(y),
                    sx(x) + 5.0,
                    sy(y) - 5.0,
                    r.x(),
                    r.y()
                );
            }
            let _ = writeln!(s, "</g>");
        }
        s.push_str("</svg>\n");
        s
    }
}

fn xy(p: &RatPoint) -> (f64, f64) {
    (
        p.x.to_f64().expect("finite"),
        p.y.to_f64().expect("finite"),
    )
}

pub fn label(p: &RatPoint) -> String {
    format!("({},{})", rat::fmt(&p.x), rat::fmt(&p.y))
}

/// Swaps coordinates, for plotting the body with `t` horizontal.
pub fn flipped(p: &RatPolygon) -> RatPolygon {
    RatPolygon::from_points(p.vertices().iter().map(|v| RatPoint::new(v.y.clone(), v.x.clone())))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use toricsg::lattice::pt;

    #[test]
    fn labels_are_exact() {
        let p = RatPoint::new(rat::rat(2, 3), rat::rat(35, 3));
        assert_eq!(label(&p), "(2/3,35/3)");
        let svg = Figure::polygon("t", RatPolygon::from_points([pt(0, 0), pt(2, 0), pt(0, 1)])).render();
        assert!(svg.contains("(2,0)") && svg.starts_with("<svg"));
        assert_eq!(svg, Figure::polygon("t", RatPolygon::from_points([pt(0, 0), pt(2, 0), pt(0, 1)])).render());
    }
}

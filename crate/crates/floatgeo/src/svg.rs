//! SVG figures of planar results in a 1000-unit view box.

use std::fmt::Write;

use floatgeo_core::Vec3;

const SIZE: f64 = 1000.0;
const MARGIN: f64 = 50.0;

enum Shape {
    Polygon(Vec<Vec3>),
    Polyline(Vec<Vec3>),
    Segment(Vec3, Vec3),
    Dot(Vec3),
}

struct Layer {
    id: String,
    stroke: &'static str,
    shapes: Vec<Shape>,
}

/// Layers are drawn in insertion order; the view fits every point.
#[derive(Default)]
pub struct Figure {
    layers: Vec<Layer>,
}

impl Figure {
    pub fn new() -> Self {
        Self::default()
    }

    fn layer(&mut self, id: &str, stroke: &'static str) -> &mut Layer {
        if let Some(k) = self.layers.iter().position(|l| l.id == id) {
            return &mut self.layers[k];
        }
        self.layers.push(Layer {
            id: id.into(),
            stroke,
            shapes: Vec::new(),
        });
        self.layers.last_mut().unwrap()
    }

    pub fn polygon(&mut self, id: &str, stroke: &'static str, pts: &[Vec3]) {
        self.layer(id, stroke).shapes.push(Shape::Polygon(pts.to_vec()));
    }

    pub fn polyline(&mut self, id: &str, stroke: &'static str, pts: &[Vec3]) {
        self.layer(id, stroke).shapes.push(Shape::Polyline(pts.to_vec()));
    }

    pub fn segment(&mut self, id: &str, stroke: &'static str, a: Vec3, b: Vec3) {
        self.layer(id, stroke).shapes.push(Shape::Segment(a, b));
    }

    pub fn dot(&mut self, id: &str, stroke: &'static str, p: Vec3) {
        self.layer(id, stroke).shapes.push(Shape::Dot(p));
    }

    fn bounds(&self) -> (Vec3, f64) {
        let mut lo = Vec3::planar(f64::INFINITY, f64::INFINITY);
        let mut hi = Vec3::planar(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut grow = |p: &Vec3| {
            lo = Vec3::planar(lo.x.min(p.x), lo.y.min(p.y));
            hi = Vec3::planar(hi.x.max(p.x), hi.y.max(p.y));
        };
        for l in &self.layers {
            for s in &l.shapes {
                match s {
                    Shape::Polygon(p) | Shape::Polyline(p) => p.iter().for_each(&mut grow),
                    Shape::Segment(a, b) => {
                        grow(a);
                        grow(b);
                    }
                    Shape::Dot(p) => grow(p),
                }
            }
        }
        if !lo.x.is_finite() {
            return (Vec3::ZERO, 1.0);
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-12);
        let scale = (SIZE - 2.0 * MARGIN) / span;
        // centre the drawing
        let pad = Vec3::planar(span - (hi.x - lo.x), span - (hi.y - lo.y)) * 0.5;
        (lo - pad, scale)
    }

    pub fn render(&self) -> String {
        let (origin, scale) = self.bounds();
        let map = |p: &Vec3| {
            let x = MARGIN + (p.x - origin.x) * scale;
            let y = SIZE - MARGIN - (p.y - origin.y) * scale;
            format!("{x:.3},{y:.3}")
        };
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">"#
        );
        for l in &self.layers {
            let _ = writeln!(
                out,
                r#"<g id="{}" stroke="{}" fill="none" stroke-width="1.5">"#,
                l.id, l.stroke
            );
            for s in &l.shapes {
                let _ = match s {
                    Shape::Polygon(p) => writeln!(
                        out,
                        r#"<polygon points="{}"/>"#,
                        p.iter().map(map).collect::<Vec<_>>().join(" ")
                    ),
                    Shape::Polyline(p) => writeln!(
                        out,
                        r#"<polyline points="{}"/>"#,
                        p.iter().map(map).collect::<Vec<_>>().join(" ")
                    ),
                    Shape::Segment(a, b) => {
                        let (a, b) = (map(a), map(b));
                        let (a, b) = (a.split_once(',').unwrap(), b.split_once(',').unwrap());
                        writeln!(
                            out,
                            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                            a.0, a.1, b.0, b.1
                        )
                    }
                    Shape::Dot(p) => {
                        let c = map(p);
                        let c = c.split_once(',').unwrap();
                        writeln!(out, r#"<circle cx="{}" cy="{}" r="3" fill="{}"/>"#, c.0, c.1, l.stroke)
                    }
                };
            }
            let _ = writeln!(out, "</g>");
        }
        out.push_str("</svg>\n");
        out
    }
}

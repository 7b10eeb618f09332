use std::collections::VecDeque;
use std::fmt::Write;

use serde::Serialize;

use super::RenderError;
use crate::fpgroup::{perm_group_exponent, regular_representation, CosetTable};

/// Point of the triangular lattice: `(i, j)` maps to `(i + j/2, j*sqrt(3)/2)`.
pub type LatticePoint = (i64, i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triangle {
    pub vertices: [LatticePoint; 3],
    pub color: Color,
    /// Group element (coset index, 0-based).
    pub element: usize,
}

/// Alternately coloured triangles, two per group element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleTiling {
    pub triangles: Vec<Triangle>,
    pub group_order: usize,
}

fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn separated_by_edges(s: &[LatticePoint; 3], t: &[LatticePoint; 3]) -> bool {
    (0..3).any(|k| {
        let (a, b, c) = (s[k], s[(k + 1) % 3], s[(k + 2) % 3]);
        let side = cross(a, b, c).signum();
        t.iter().all(|&p| side * cross(a, b, p) <= 0)
    })
}

/// Exact test whether two lattice triangles share interior points. Lines through
/// lattice edges are preserved by the lattice-to-plane map, so separation is
/// decided in lattice coordinates.
pub fn interiors_overlap(s: &[LatticePoint; 3], t: &[LatticePoint; 3]) -> bool {
    !(separated_by_edges(s, t) || separated_by_edges(t, s))
}

fn shared_edge(s: &[LatticePoint; 3], t: &[LatticePoint; 3]) -> bool {
    s.iter().filter(|p| t.contains(p)).count() == 2
}

impl TriangleTiling {
    pub fn new(triangles: Vec<Triangle>, group_order: usize) -> Result<Self, RenderError> {
        let tiling = TriangleTiling { triangles, group_order };
        tiling.validate()?;
        Ok(tiling)
    }

    pub fn count(&self, color: Color) -> usize {
        self.triangles.iter().filter(|t| t.color == color).count()
    }

    /// Count, colour balance, alternation across shared edges, element coverage and
    /// pairwise interior-disjointness.
    pub fn validate(&self) -> Result<(), RenderError> {
        let n = self.group_order;
        if n == 0 || self.triangles.len() != 2 * n {
            return Err(RenderError::Domain(format!(
                "{} triangles for a group of order {n}",
                self.triangles.len()
            )));
        }
        if self.count(Color::Black) != n {
            return Err(RenderError::Domain("black and white counts differ".into()));
        }
        let mut per_element = vec![(0, 0); n];
        for t in &self.triangles {
            let slot = per_element
                .get_mut(t.element)
                .ok_or_else(|| RenderError::Domain(format!("element {} out of range", t.element)))?;
            match t.color {
                Color::Black => slot.0 += 1,
                Color::White => slot.1 += 1,
            }
        }
        if per_element.iter().any(|&c| c != (1, 1)) {
            return Err(RenderError::Domain("each element needs one black and one white triangle".into()));
        }
        for (i, s) in self.triangles.iter().enumerate() {
            for t in &self.triangles[i + 1..] {
                if interiors_overlap(&s.vertices, &t.vertices) {
                    return Err(RenderError::Domain("triangles overlap".into()));
                }
                if shared_edge(&s.vertices, &t.vertices) && s.color == t.color {
                    return Err(RenderError::Domain("adjacent triangles share a colour".into()));
                }
            }
        }
        Ok(())
    }
}

/// Unit triangles of the regular hexagon of side `side`, in row-major order
/// (rows bottom to top, left to right). Upward triangles are black.
pub fn hexagon_triangles(side: i64) -> Vec<([LatticePoint; 3], Color)> {
    let inside = |(i, j): LatticePoint| i.abs() <= side && j.abs() <= side && (i + j).abs() <= side;
    let mut out = Vec::new();
    for j in -side..side {
        for i in -side..=side {
            let up = [(i, j), (i + 1, j), (i, j + 1)];
            let down = [(i + 1, j), (i + 1, j + 1), (i, j + 1)];
            if up.iter().all(|&p| inside(p)) {
                out.push(((j, 2 * i + j + 1), up, Color::Black));
            }
            if down.iter().all(|&p| inside(p)) {
                out.push(((j, 2 * i + j + 2), down, Color::White));
            }
        }
    }
    out.sort_by_key(|t| t.0);
    out.into_iter().map(|(_, v, c)| (v, c)).collect()
}

/// The 54-triangle hexagon for B(2, 3): each group element gets one black and one
/// white triangle, assigned in breadth-first order from the identity coset.
pub fn hexagon_tiling_b23(t: &CosetTable) -> Result<TriangleTiling, RenderError> {
    if !t.is_complete() || t.nrows() != 27 || t.ngens() != 2 {
        return Err(RenderError::Domain(
            "expected a complete 2-generator coset table of order 27".into(),
        ));
    }
    let exponent = regular_representation(t)
        .and_then(|g| perm_group_exponent(&g, 27))
        .map_err(|e| RenderError::Domain(e.to_string()))?;
    if exponent != 3 {
        return Err(RenderError::Domain(format!("group exponent is {exponent}, expected 3")));
    }

    let mut visit = vec![false; t.nrows()];
    let mut order = Vec::with_capacity(t.nrows());
    let mut queue = VecDeque::from([0usize]);
    visit[0] = true;
    while let Some(c) = queue.pop_front() {
        order.push(c);
        for col in 0..t.ncols() {
            let d = t.get(c, col).expect("complete table");
            if !visit[d] {
                visit[d] = true;
                queue.push_back(d);
            }
        }
    }

    let cells = hexagon_triangles(3);
    let blacks: Vec<_> = cells.iter().filter(|c| c.1 == Color::Black).collect();
    let whites: Vec<_> = cells.iter().filter(|c| c.1 == Color::White).collect();
    let mut triangles = Vec::with_capacity(54);
    for (slot, &element) in order.iter().enumerate() {
        triangles.push(Triangle { vertices: blacks[slot].0, color: Color::Black, element });
        triangles.push(Triangle { vertices: whites[slot].0, color: Color::White, element });
    }
    TriangleTiling::new(triangles, t.nrows())
}

fn plane(p: LatticePoint) -> (f64, f64) {
    (p.0 as f64 + p.1 as f64 / 2.0, p.1 as f64 * 3f64.sqrt() / 2.0)
}

/// SVG 1.1 document with one `<polygon>` per triangle.
pub fn emit_svg_tiling(tiling: &TriangleTiling, scale: f64) -> Result<String, RenderError> {
    if !scale.is_finite() || scale <= 0.0 {
        return Err(RenderError::Domain(format!("scale must be positive, got {scale}")));
    }
    let pts: Vec<(f64, f64)> = tiling.triangles.iter().flat_map(|t| t.vertices.map(plane)).collect();
    let minx = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let maxx = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let miny = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let maxy = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let (w, h) = (scale * (maxx - minx), scale * (maxy - miny));

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.4}" height="{h:.4}" viewBox="0 0 {w:.4} {h:.4}">"#
    )
    .unwrap();
    for t in &tiling.triangles {
        let coords: Vec<String> = t
            .vertices
            .iter()
            .map(|&p| {
                let (x, y) = plane(p);
                format!("{:.4},{:.4}", scale * (x - minx), scale * (maxy - y))
            })
            .collect();
        let fill = match t.color {
            Color::Black => "black",
            Color::White => "white",
        };
        writeln!(
            out,
            r#"<polygon points="{}" fill="{fill}" stroke="gray" data-element="{}"/>"#,
            coords.join(" "),
            t.element + 1
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

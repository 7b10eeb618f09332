//! Cayley graphs of coset tables (DOT) and the two-coloured triangle tiling of
//! B(2, 3) (SVG).

mod cayley;
mod tiling;

pub use cayley::{cayley_from_table, emit_dot, CayleyGraph};
pub use tiling::{
    emit_svg_tiling, hexagon_tiling_b23, hexagon_triangles, interiors_overlap, Color, LatticePoint,
    Triangle, TriangleTiling,
};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum RenderError {
    #[error("state error: {0}")]
    State(String),
    #[error("domain error: {0}")]
    Domain(String),
}

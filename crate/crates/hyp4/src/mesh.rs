//! Quad meshes over grids of 4-space vertices, with a 3-coordinate chart per
//! vertex for export to standard viewers.
//!
//! Vertices keep both the ambient half-space position `(x1, x2, x3, x4)` and
//! a chart triple chosen by the producer (for cone boundaries: distance to
//! the rotational fixed plane, fiber angle and height in the loxodromic
//! case; the two horosphere grid coordinates and height in the parabolic
//! case). OBJ output writes the chart, CSV output writes the ambient
//! coordinates in the fixed column order `x1,x2,x3,x4`.

use std::io::{self, Write};

/// A mesh vertex: ambient position plus a 3-coordinate chart for viewing.
#[derive(Clone, Copy, Debug)]
pub struct MeshVertex {
    /// Ambient half-space coordinates `(x1, x2, x3, x4)`.
    pub position: [f64; 4],
    /// Chart coordinates used for OBJ export.
    pub chart: [f64; 3],
}

/// A quad mesh over a regular grid.
#[derive(Clone, Debug)]
pub struct QuadMesh {
    /// Vertices in row-major grid order.
    pub vertices: Vec<MeshVertex>,
    /// Quads as counterclockwise index quadruples into `vertices`.
    pub quads: Vec<[u32; 4]>,
}

impl QuadMesh {
    /// Builds a mesh from a `rows × cols` grid of vertices produced by `f`.
    ///
    /// With `wrap_cols` the last column is stitched back to the first, which
    /// closes meshes parametrized by an angle.
    pub fn from_grid(
        rows: usize,
        cols: usize,
        wrap_cols: bool,
        mut f: impl FnMut(usize, usize) -> MeshVertex,
    ) -> QuadMesh {
        let mut vertices = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                vertices.push(f(i, j));
            }
        }
        let idx = |i: usize, j: usize| (i * cols + j % cols) as u32;
        let mut quads = Vec::new();
        let col_spans = if wrap_cols { cols } else { cols - 1 };
        for i in 0..rows - 1 {
            for j in 0..col_spans {
                quads.push([idx(i, j), idx(i, j + 1), idx(i + 1, j + 1), idx(i + 1, j)]);
            }
        }
        QuadMesh { vertices, quads }
    }

    /// Writes the mesh in Wavefront OBJ format: one `v` line per vertex with
    /// the chart coordinates, then one `f` line per quad (1-based indices).
    pub fn write_obj<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for v in &self.vertices {
            writeln!(w, "v {} {} {}", v.chart[0], v.chart[1], v.chart[2])?;
        }
        for q in &self.quads {
            writeln!(w, "f {} {} {} {}", q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1)?;
        }
        Ok(())
    }

    /// Writes the vertices in CSV format: a `x1,x2,x3,x4` header, then one
    /// vertex per row in ambient coordinates, in grid order.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "x1,x2,x3,x4")?;
        for v in &self.vertices {
            writeln!(
                w,
                "{},{},{},{}",
                v.position[0], v.position[1], v.position[2], v.position[3]
            )?;
        }
        Ok(())
    }
}

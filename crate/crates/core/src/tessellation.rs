//! Watertight triangulation of the dome plus its flat base.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::SolidSpec;
use crate::mesh::TriangleMesh;
use crate::scalar::Scalar;

/// Sampling density of the `(r, t)` grid.
///
/// The azimuthal grid is laid out per sector, so polygon corners always fall on grid lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MeshResolution {
    segments_per_sector: usize,
    rings: usize,
}

impl MeshResolution {
    pub fn new(segments_per_sector: usize, rings: usize) -> Result<Self> {
        if segments_per_sector < 1 {
            return Err(Error::CountTooSmall {
                name: "segments_per_sector",
                min: 1,
                value: segments_per_sector,
            });
        }
        if rings < 1 {
            return Err(Error::CountTooSmall {
                name: "rings",
                min: 1,
                value: rings,
            });
        }
        Ok(Self {
            segments_per_sector,
            rings,
        })
    }

    pub fn segments_per_sector(&self) -> usize {
        self.segments_per_sector
    }

    pub fn rings(&self) -> usize {
        self.rings
    }
}

/// Triangulates the dome and base of `spec`.
///
/// Vertex layout: `rings` rings of `n * segments_per_sector` vertices at
/// `t_k = k·(π/2)/rings`, then the apex, then the base centre. The top ring is closed by a
/// fan to the apex, the base polygon by a fan from the centre.
pub fn tessellate<T: Scalar>(spec: &SolidSpec<T>, res: MeshResolution) -> Result<TriangleMesh<T>> {
    let n = spec.sides();
    let segs = res.segments_per_sector;
    let cols = n * segs;
    let dom = spec.domain();
    let dr = dom.sector_width / T::from_count(segs);
    let dt = T::FRAC_PI_2() / T::from_count(res.rings);

    let mut mesh = TriangleMesh::new();
    mesh.vertices.reserve(cols * res.rings + 2);
    for k in 0..res.rings {
        let t = T::from_count(k) * dt;
        for sector in 0..n {
            let start = dom.lo + T::from_count(sector) * dom.sector_width;
            for j in 0..segs {
                let r = start + T::from_count(j) * dr;
                mesh.push_vertex(spec.surface_point(r, t)?);
            }
        }
    }
    let apex = mesh.push_vertex([T::zero(), T::zero(), spec.apothem()]);
    let center = mesh.push_vertex([T::zero(); 3]);

    let idx = |k: usize, j: usize| k * cols + j % cols;
    for k in 0..res.rings - 1 {
        for j in 0..cols {
            let (a, b) = (idx(k, j), idx(k, j + 1));
            let (c, d) = (idx(k + 1, j + 1), idx(k + 1, j));
            mesh.push_triangle([a, b, c]);
            mesh.push_triangle([a, c, d]);
        }
    }
    let top = res.rings - 1;
    for j in 0..cols {
        mesh.push_triangle([idx(top, j), idx(top, j + 1), apex]);
    }
    for j in 0..cols {
        mesh.push_triangle([center, idx(0, j + 1), idx(0, j)]);
    }
    Ok(mesh)
}

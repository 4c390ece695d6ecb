//! Indexed triangle meshes and their topological checks.

use std::collections::HashMap;

use crate::error::{EdgeDefect, Error, Result};
use crate::scalar::{cross, dot, norm, sub, Scalar};

/// Indexed triangle soup. Triangles wind counter-clockwise seen from outside.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TriangleMesh<T> {
    pub vertices: Vec<[T; 3]>,
    pub triangles: Vec<[usize; 3]>,
    /// Zero-area triangles removed during construction.
    pub dropped_degenerate: usize,
}

/// Counts describing a mesh's closed-surface topology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Topology {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
}

impl<T: Scalar> TriangleMesh<T> {
    pub fn new() -> Self {
        Self {
            vertices: Vec::new(),
            triangles: Vec::new(),
            dropped_degenerate: 0,
        }
    }

    pub fn push_vertex(&mut self, v: [T; 3]) -> usize {
        self.vertices.push(v);
        self.vertices.len() - 1
    }

    /// Adds a triangle unless its area is zero, in which case it is counted as dropped.
    pub fn push_triangle(&mut self, tri: [usize; 3]) {
        if self.triangle_area(tri) > T::zero() {
            self.triangles.push(tri);
        } else {
            self.dropped_degenerate += 1;
        }
    }

    pub fn triangle_points(&self, tri: [usize; 3]) -> [[T; 3]; 3] {
        tri.map(|i| self.vertices[i])
    }

    pub fn triangle_area(&self, tri: [usize; 3]) -> T {
        let [a, b, c] = self.triangle_points(tri);
        norm(cross(sub(b, a), sub(c, a))) / T::lit(2.0)
    }

    /// Unit normal from the winding; zero for degenerate triangles.
    pub fn triangle_normal(&self, tri: [usize; 3]) -> [T; 3] {
        let [a, b, c] = self.triangle_points(tri);
        let n = cross(sub(b, a), sub(c, a));
        let len = norm(n);
        if len > T::zero() {
            n.map(|x| x / len)
        } else {
            [T::zero(); 3]
        }
    }

    /// Divergence-theorem volume `Σ (v0 · (v1 × v2)) / 6`, without any validity check.
    pub fn signed_volume(&self) -> T {
        let six = T::lit(6.0);
        self.triangles
            .iter()
            .map(|&tri| {
                let [a, b, c] = self.triangle_points(tri);
                dot(a, cross(b, c))
            })
            .fold(T::zero(), |acc, v| acc + v)
            / six
    }

    /// Edges that are not shared by exactly two oppositely wound triangles.
    pub fn edge_defects(&self) -> Vec<EdgeDefect> {
        let mut counts: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        for tri in &self.triangles {
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                let key = (a.min(b), a.max(b));
                let e = counts.entry(key).or_default();
                e.0 += 1;
                if a < b {
                    e.1 += 1;
                }
            }
        }
        let mut bad: Vec<EdgeDefect> = counts
            .into_iter()
            .filter(|(_, (uses, fwd))| *uses != 2 || *fwd != 1)
            .map(|((a, b), (uses, forward))| EdgeDefect {
                a,
                b,
                uses,
                forward,
            })
            .collect();
        bad.sort_by_key(|d| (d.a, d.b));
        bad
    }

    pub fn is_watertight(&self) -> bool {
        self.edge_defects().is_empty()
    }

    pub fn check_watertight(&self) -> Result<()> {
        let edges = self.edge_defects();
        if edges.is_empty() {
            Ok(())
        } else {
            Err(Error::NotWatertight { edges })
        }
    }

    /// V, E, F over vertices referenced by at least one triangle.
    pub fn topology(&self) -> Topology {
        let mut used = vec![false; self.vertices.len()];
        let mut edges = std::collections::HashSet::new();
        for tri in &self.triangles {
            for k in 0..3 {
                used[tri[k]] = true;
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                edges.insert((a.min(b), a.max(b)));
            }
        }
        let v = used.iter().filter(|&&u| u).count();
        let (e, f) = (edges.len(), self.triangles.len());
        Topology {
            vertices: v,
            edges: e,
            faces: f,
            euler_characteristic: v as i64 - e as i64 + f as i64,
        }
    }

    /// Same mesh with coordinates converted to another scalar type.
    pub fn cast<U: Scalar>(&self) -> TriangleMesh<U> {
        TriangleMesh {
            vertices: self
                .vertices
                .iter()
                .map(|v| v.map(|c| U::lit(c.as_f64())))
                .collect(),
            triangles: self.triangles.clone(),
            dropped_degenerate: self.dropped_degenerate,
        }
    }

    /// Mesh with every triangle's winding reversed.
    pub fn flipped(&self) -> Self {
        Self {
            vertices: self.vertices.clone(),
            triangles: self.triangles.iter().map(|&[a, b, c]| [a, c, b]).collect(),
            dropped_degenerate: self.dropped_degenerate,
        }
    }

    /// Verifies every closed-surface invariant: watertight, sphere topology, positive volume.
    pub fn validate_closed(&self) -> Result<()> {
        self.check_watertight()?;
        let vol = self.signed_volume();
        if vol.is_nan() || vol <= T::zero() {
            return Err(Error::InwardOrientation(vol.as_f64()));
        }
        Ok(())
    }
}

/// Axis-aligned cube `[0, side]^3` as 12 outward triangles.
pub fn cube<T: Scalar>(side: T) -> TriangleMesh<T> {
    let z = T::zero();
    let s = side;
    let vertices = vec![
        [z, z, z],
        [s, z, z],
        [s, s, z],
        [z, s, z],
        [z, z, s],
        [s, z, s],
        [s, s, s],
        [z, s, s],
    ];
    let triangles = vec![
        [0, 2, 1],
        [0, 3, 2],
        [4, 5, 6],
        [4, 6, 7],
        [0, 1, 5],
        [0, 5, 4],
        [1, 2, 6],
        [1, 6, 5],
        [2, 3, 7],
        [2, 7, 6],
        [3, 0, 4],
        [3, 4, 7],
    ];
    TriangleMesh {
        vertices,
        triangles,
        dropped_degenerate: 0,
    }
}

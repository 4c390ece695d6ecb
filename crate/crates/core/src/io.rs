//! Binary STL and Wavefront OBJ export, plus readers for self round-trips.

use std::io::{BufRead, Read, Write};

use crate::error::{Error, Result};
use crate::mesh::TriangleMesh;
use crate::scalar::Scalar;

pub const STL_HEADER_LEN: usize = 80;
pub const STL_TRIANGLE_LEN: usize = 50;
const STL_TAG: &[u8] = b"polydome binary STL";

/// Writes `mesh` as little-endian binary STL and returns the number of bytes written.
///
/// Normals are recomputed from the winding. Coordinates are narrowed to `f32`.
pub fn write_stl<T: Scalar, W: Write>(mesh: &TriangleMesh<T>, mut out: W) -> Result<u64> {
    let count = u32::try_from(mesh.triangles.len())
        .map_err(|_| Error::TooManyTriangles(mesh.triangles.len()))?;
    let mut header = [0u8; STL_HEADER_LEN];
    header[..STL_TAG.len()].copy_from_slice(STL_TAG);
    out.write_all(&header)?;
    out.write_all(&count.to_le_bytes())?;

    let mut record = [0u8; STL_TRIANGLE_LEN];
    for &tri in &mesh.triangles {
        let normal = mesh.triangle_normal(tri);
        let pts = mesh.triangle_points(tri);
        let floats = std::iter::once(normal).chain(pts).flatten();
        for (slot, v) in record.chunks_exact_mut(4).zip(floats) {
            let v = v.to_f32().unwrap_or(f32::NAN);
            slot.copy_from_slice(&v.to_le_bytes());
        }
        // attribute byte count stays zero
        record[48] = 0;
        record[49] = 0;
        out.write_all(&record)?;
    }
    out.flush()?;
    Ok((STL_HEADER_LEN + 4 + STL_TRIANGLE_LEN * count as usize) as u64)
}

/// Reads a binary STL into an unindexed mesh: three fresh vertices per facet.
pub fn read_stl<R: Read>(mut input: R) -> Result<TriangleMesh<f32>> {
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes)?;
    if bytes.len() < STL_HEADER_LEN + 4 {
        return Err(parse_err("stl", "file shorter than header"));
    }
    let count = u32::from_le_bytes(bytes[80..84].try_into().unwrap()) as usize;
    let body = &bytes[84..];
    if body.len() != count * STL_TRIANGLE_LEN {
        return Err(parse_err(
            "stl",
            format!("expected {count} facets, found {} bytes", body.len()),
        ));
    }
    let mut mesh = TriangleMesh::new();
    for rec in body.chunks_exact(STL_TRIANGLE_LEN) {
        let f = |k: usize| f32::from_le_bytes(rec[4 * k..4 * k + 4].try_into().unwrap());
        let base = mesh.vertices.len();
        for v in 0..3 {
            let o = 3 + 3 * v;
            mesh.vertices.push([f(o), f(o + 1), f(o + 2)]);
        }
        mesh.triangles.push([base, base + 1, base + 2]);
    }
    Ok(mesh)
}

/// Shortest decimal that parses back to exactly `v`.
fn coord<T: Scalar>(v: T) -> String {
    let s = format!("{v}");
    if s == "-0" {
        "0".to_owned()
    } else {
        s
    }
}

/// Writes `v` and 1-based `f` records and returns the number of lines written.
///
/// Coordinates are printed losslessly, so reading the file back reproduces every vertex bit
/// for bit.
pub fn write_obj<T: Scalar, W: Write>(mesh: &TriangleMesh<T>, mut out: W) -> Result<usize> {
    for v in &mesh.vertices {
        writeln!(out, "v {} {} {}", coord(v[0]), coord(v[1]), coord(v[2]))?;
    }
    for t in &mesh.triangles {
        writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
    }
    out.flush()?;
    Ok(mesh.vertices.len() + mesh.triangles.len())
}

/// Reads the `v`/`f` subset emitted by [`write_obj`].
pub fn read_obj<R: BufRead>(input: R) -> Result<TriangleMesh<f64>> {
    let mut mesh = TriangleMesh::new();
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        let mut it = line.split_whitespace();
        let bad = |what: &str| parse_err("obj", format!("line {}: {what}", lineno + 1));
        match it.next() {
            Some("v") => {
                let mut p = [0.0; 3];
                for c in &mut p {
                    *c = it
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("bad vertex"))?;
                }
                mesh.vertices.push(p);
            }
            Some("f") => {
                let mut tri = [0usize; 3];
                for c in &mut tri {
                    let i: usize = it
                        .next()
                        .and_then(|s| s.split('/').next())
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("bad face"))?;
                    if i == 0 || i > mesh.vertices.len() {
                        return Err(bad("face index out of range"));
                    }
                    *c = i - 1;
                }
                mesh.triangles.push(tri);
            }
            _ => {}
        }
    }
    Ok(mesh)
}

fn parse_err(format: &'static str, reason: impl Into<String>) -> Error {
    Error::Parse {
        format,
        reason: reason.into(),
    }
}

//! Slab-stacking construction of the dome.
//!
//! The prism of height `R` over the base polygon, minus the inverted pyramid with apex at the
//! base centre, has horizontal cross-sections that are n-gons of apothem `√(R² - z²)`. Cutting it
//! into `m` equal-height slices and replacing each slice by an n-gonal prism slab of the same
//! height and volume gives a staircase solid whose total volume equals the dome's for every `m`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::SolidSpec;
use crate::mesh::TriangleMesh;
use crate::scalar::Scalar;

/// `n·tan(π/n)`: polygon area per squared apothem.
fn area_factor<T: Scalar>(spec: &SolidSpec<T>) -> T {
    T::from_count(spec.sides()) * spec.half_angle().tan()
}

fn check_count(m: usize) -> Result<()> {
    if m < 1 {
        return Err(Error::CountTooSmall {
            name: "slab count m",
            min: 1,
            value: m,
        });
    }
    Ok(())
}

fn check_index(i: usize, m: usize) -> Result<()> {
    check_count(m)?;
    if i < 1 || i > m {
        return Err(Error::SlabIndexOutOfRange { index: i, count: m });
    }
    Ok(())
}

/// Heights `(z_lo, z_hi)` of slice `i` of `m`.
pub fn slice_bounds<T: Scalar>(i: usize, m: usize, spec: &SolidSpec<T>) -> Result<(T, T)> {
    check_index(i, m)?;
    let h = spec.apothem() / T::from_count(m);
    let hi = if i == m {
        spec.apothem()
    } else {
        T::from_count(i) * h
    };
    Ok((T::from_count(i - 1) * h, hi))
}

/// Mean of `z²` over `[lo, hi]`: `(lo² + lo·hi + hi²) / 3`.
fn mean_square<T: Scalar>(lo: T, hi: T) -> T {
    (lo * lo + lo * hi + hi * hi) / T::lit(3.0)
}

/// Volume of slice `i` of `m`, `∫ n·tan(π/n)·(R² - z²) dz` in closed form.
pub fn slice_volume<T: Scalar>(i: usize, m: usize, spec: &SolidSpec<T>) -> Result<T> {
    let (lo, hi) = slice_bounds(i, m, spec)?;
    let r = spec.apothem();
    Ok(area_factor(spec) * (hi - lo) * (r * r - mean_square(lo, hi)))
}

/// Apothem of the equal-volume prism slab replacing slice `i` of `m`.
pub fn slab_apothem<T: Scalar>(i: usize, m: usize, spec: &SolidSpec<T>) -> Result<T> {
    let (lo, hi) = slice_bounds(i, m, spec)?;
    let r = spec.apothem();
    // volume / (height · area_factor) reduces to the mean of R² - z² over the slice
    Ok((r * r - mean_square(lo, hi)).sqrt())
}

/// One prism slab of the staircase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Slab<T> {
    pub index: usize,
    pub z_lo: T,
    pub z_hi: T,
    pub apothem: T,
    pub volume: T,
}

/// The stacked slabs for a slice count `m`, bottom to top.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlabStack<T> {
    pub m: usize,
    pub slab_height: T,
    pub slabs: Vec<Slab<T>>,
}

impl<T: Scalar> SlabStack<T> {
    pub fn apothems(&self) -> Vec<T> {
        self.slabs.iter().map(|s| s.apothem).collect()
    }

    pub fn total_volume(&self) -> T {
        self.slabs.iter().fold(T::zero(), |acc, s| acc + s.volume)
    }

    pub fn total_height(&self) -> T {
        self.slabs.last().map_or(T::zero(), |s| s.z_hi)
    }

    /// CSV with header `index,z_lo,z_hi,apothem,volume`, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,z_lo,z_hi,apothem,volume\n");
        for s in &self.slabs {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                s.index, s.z_lo, s.z_hi, s.apothem, s.volume
            ));
        }
        out
    }
}

pub fn build_slab_stack<T: Scalar>(m: usize, spec: &SolidSpec<T>) -> Result<SlabStack<T>> {
    check_count(m)?;
    let slabs = (1..=m)
        .map(|i| {
            let (z_lo, z_hi) = slice_bounds(i, m, spec)?;
            Ok(Slab {
                index: i,
                z_lo,
                z_hi,
                apothem: slab_apothem(i, m, spec)?,
                volume: slice_volume(i, m, spec)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SlabStack {
        m,
        slab_height: spec.apothem() / T::from_count(m),
        slabs,
    })
}

/// Watertight mesh of the staircase solid.
///
/// Each slab contributes its own bottom and top corner rings. Side walls join them, horizontal
/// annuli join the top ring of one slab to the bottom ring of the next, and the bottom face of
/// the first slab and top face of the last are fanned from their first corner.
pub fn slab_stack_mesh<T: Scalar>(stack: &SlabStack<T>, spec: &SolidSpec<T>) -> TriangleMesh<T> {
    let n = spec.sides();
    let dom = spec.domain();
    let sec = spec.half_angle().cos();
    let dirs: Vec<(T, T)> = (0..n)
        .map(|k| {
            let ang = dom.lo + T::from_count(k) * dom.sector_width;
            (ang.cos(), ang.sin())
        })
        .collect();

    let mut mesh = TriangleMesh::new();
    let mut rings = Vec::with_capacity(stack.slabs.len());
    for slab in &stack.slabs {
        let rc = slab.apothem / sec;
        let mut ring = |z: T| {
            let start = mesh.vertices.len();
            for &(c, s) in &dirs {
                mesh.push_vertex([rc * c, rc * s, z]);
            }
            start
        };
        let bottom = ring(slab.z_lo);
        let top = ring(slab.z_hi);
        rings.push((bottom, top));
    }

    let quad = |mesh: &mut TriangleMesh<T>, lower: usize, upper: usize| {
        for j in 0..n {
            let jn = (j + 1) % n;
            mesh.push_triangle([lower + j, lower + jn, upper + jn]);
            mesh.push_triangle([lower + j, upper + jn, upper + j]);
        }
    };
    for &(bottom, top) in &rings {
        quad(&mut mesh, bottom, top);
    }
    // annulus: outer = top ring of the lower slab, inner = bottom ring of the upper slab
    for w in rings.windows(2) {
        let (outer, inner) = (w[0].1, w[1].0);
        for j in 0..n {
            let jn = (j + 1) % n;
            mesh.push_triangle([outer + j, outer + jn, inner + jn]);
            mesh.push_triangle([outer + j, inner + jn, inner + j]);
        }
    }
    if let (Some(&(bottom, _)), Some(&(_, top))) = (rings.first(), rings.last()) {
        for j in 1..n - 1 {
            mesh.push_triangle([bottom, bottom + j + 1, bottom + j]);
            mesh.push_triangle([top, top + j, top + j + 1]);
        }
    }
    mesh
}

/// Per-slab comparison with the smooth surface at the slab's mid-height.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileRow<T> {
    pub z_mid: T,
    pub slab_apothem: T,
    pub smooth_apothem: T,
    /// `|slab_apothem - smooth_apothem|`.
    pub error: T,
    /// `smooth_apothem² - slab_apothem²`, identically `(R/m)²/12`.
    pub squared_deficit: T,
}

pub fn convergence_profile<T: Scalar>(m: usize, spec: &SolidSpec<T>) -> Result<Vec<ProfileRow<T>>> {
    let stack = build_slab_stack(m, spec)?;
    let r = spec.apothem();
    Ok(stack
        .slabs
        .iter()
        .map(|s| {
            let z_mid = (s.z_lo + s.z_hi) / T::lit(2.0);
            let smooth_sq = r * r - z_mid * z_mid;
            let smooth = smooth_sq.max(T::zero()).sqrt();
            ProfileRow {
                z_mid,
                slab_apothem: s.apothem,
                smooth_apothem: smooth,
                error: (s.apothem - smooth).abs(),
                squared_deficit: smooth_sq - s.apothem * s.apothem,
            }
        })
        .collect())
}

/// Largest absolute apothem error and largest squared-apothem deficit over the stack.
pub fn max_profile_errors<T: Scalar>(rows: &[ProfileRow<T>]) -> (T, T) {
    rows.iter().fold((T::zero(), T::zero()), |(e, d), row| {
        (e.max(row.error), d.max(row.squared_deficit.abs()))
    })
}

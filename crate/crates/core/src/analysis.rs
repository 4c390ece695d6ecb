//! Volume by closed form, by mesh integration and by Monte Carlo, plus vertical plane sections.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::SolidSpec;
use crate::mesh::TriangleMesh;
use crate::scalar::Scalar;

/// Base polygon area, `n·R²·tan(π/n)`.
pub fn polygon_area<T: Scalar>(spec: &SolidSpec<T>) -> T {
    let r = spec.apothem();
    T::from_count(spec.sides()) * r * r * spec.half_angle().tan()
}

/// Prism of height `R` over the base, `n·R³·tan(π/n)`.
pub fn prism_volume<T: Scalar>(spec: &SolidSpec<T>) -> T {
    polygon_area(spec) * spec.apothem()
}

/// Inverted pyramid removed from the prism, one third of it.
pub fn pyramid_volume<T: Scalar>(spec: &SolidSpec<T>) -> T {
    prism_volume(spec) / T::lit(3.0)
}

/// Dome volume, `(2/3)·n·R³·tan(π/n)`.
pub fn solid_volume<T: Scalar>(spec: &SolidSpec<T>) -> T {
    T::lit(2.0) * prism_volume(spec) / T::lit(3.0)
}

/// Volume of the hemisphere of radius `R`, the `n → ∞` limit of [`solid_volume`].
pub fn hemisphere_volume<T: Scalar>(radius: T) -> T {
    T::lit(2.0) * T::PI() * radius * radius * radius / T::lit(3.0)
}

/// Divergence-theorem volume of a closed mesh.
///
/// Rejects meshes that are open, non-manifold or inconsistently wound, and meshes whose
/// signed volume is not positive (inward orientation).
pub fn mesh_volume<T: Scalar>(mesh: &TriangleMesh<T>) -> Result<T> {
    mesh.check_watertight()?;
    let v = mesh.signed_volume();
    if v > T::zero() {
        Ok(v)
    } else {
        Err(Error::InwardOrientation(v.as_f64()))
    }
}

/// Samples per Monte Carlo chunk. Chunk `k` draws from the ChaCha8 stream `k` of the seed, so
/// results do not depend on how chunks are spread across threads.
pub const MC_CHUNK: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloEstimate<T> {
    pub estimate: T,
    pub std_error: T,
    pub hits: u64,
    pub samples: u64,
}

/// Hit-or-miss volume estimate over the box `[-Rc, Rc]² × [0, R]`, `Rc` the circumradius.
pub fn monte_carlo_volume<T: Scalar>(
    spec: &SolidSpec<T>,
    samples: usize,
    seed: u64,
) -> Result<MonteCarloEstimate<T>> {
    if samples < 1 {
        return Err(Error::CountTooSmall {
            name: "samples",
            min: 1,
            value: samples,
        });
    }
    let half = spec.circumradius().as_f64();
    let height = spec.apothem().as_f64();
    let chunks = samples.div_ceil(MC_CHUNK);
    let hits = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let len = MC_CHUNK.min(samples - k * MC_CHUNK);
            let mut hits = 0u64;
            for _ in 0..len {
                let x = (2.0 * rng.random::<f64>() - 1.0) * half;
                let y = (2.0 * rng.random::<f64>() - 1.0) * half;
                let z = rng.random::<f64>() * height;
                if spec.inside_solid([T::lit(x), T::lit(y), T::lit(z)])? {
                    hits += 1;
                }
            }
            Ok(hits)
        })
        .collect::<Result<Vec<u64>>>()?
        .into_iter()
        .sum::<u64>();

    let box_volume = 4.0 * half * half * height;
    let n = samples as f64;
    let p = hits as f64 / n;
    Ok(MonteCarloEstimate {
        estimate: T::lit(box_volume * p),
        std_error: T::lit(box_volume * (p * (1.0 - p) / n).sqrt()),
        hits,
        samples: samples as u64,
    })
}

/// Cross-validated volume figures. Field order is the JSON field order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VolumeReport<T> {
    pub analytic: T,
    pub mesh_estimate: Option<T>,
    pub mc_estimate: Option<T>,
    pub mc_std_error: Option<T>,
    pub sample_count: Option<u64>,
    pub seed: Option<u64>,
}

impl<T: Scalar> VolumeReport<T> {
    pub fn analytic(spec: &SolidSpec<T>) -> Self {
        Self {
            analytic: solid_volume(spec),
            mesh_estimate: None,
            mc_estimate: None,
            mc_std_error: None,
            sample_count: None,
            seed: None,
        }
    }

    pub fn with_mesh(mut self, mesh: &TriangleMesh<T>) -> Result<Self> {
        self.mesh_estimate = Some(mesh_volume(mesh)?);
        Ok(self)
    }

    pub fn with_monte_carlo(mut self, mc: &MonteCarloEstimate<T>, seed: u64) -> Self {
        self.mc_estimate = Some(mc.estimate);
        self.mc_std_error = Some(mc.std_error);
        self.sample_count = Some(mc.samples);
        self.seed = Some(seed);
        self
    }
}

/// Intersection of the dome with the vertical plane through the axis at `azimuth`.
///
/// Each half-plane branch is a set of `(ρ, z)` points, sorted by increasing `z`. The branch at
/// `azimuth` is a quarter ellipse with semi-axes `semi_axis_pos` and `R`; the branch at
/// `azimuth + π` uses `semi_axis_neg`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlaneSection<T> {
    pub azimuth: T,
    pub branch_pos: Vec<[T; 2]>,
    pub branch_neg: Vec<[T; 2]>,
    pub semi_axis_pos: T,
    pub semi_axis_neg: T,
    pub vertical_semi_axis: T,
}

impl<T: Scalar> PlaneSection<T> {
    fn empty(spec: &SolidSpec<T>, azimuth: T) -> Result<Self> {
        let r = spec.apothem();
        Ok(Self {
            azimuth,
            branch_pos: Vec::new(),
            branch_neg: Vec::new(),
            semi_axis_pos: r / spec.scaling_factor(azimuth)?,
            semi_axis_neg: r / spec.scaling_factor(azimuth + T::PI())?,
            vertical_semi_axis: r,
        })
    }

    /// CSV rows `branch,rho,z` with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("branch,rho,z\n");
        for (name, pts) in [("pos", &self.branch_pos), ("neg", &self.branch_neg)] {
            for p in pts {
                out.push_str(&format!("{name},{},{}\n", p[0], p[1]));
            }
        }
        out
    }
}

/// Analytic section sampled at `points_per_branch` uniformly spaced values of `t`.
pub fn plane_section<T: Scalar>(
    azimuth: T,
    spec: &SolidSpec<T>,
    points_per_branch: usize,
) -> Result<PlaneSection<T>> {
    if points_per_branch < 2 {
        return Err(Error::CountTooSmall {
            name: "points_per_branch",
            min: 2,
            value: points_per_branch,
        });
    }
    let mut section = PlaneSection::empty(spec, azimuth)?;
    let dt = T::FRAC_PI_2() / T::from_count(points_per_branch - 1);
    let branch = |phi: T| -> Result<Vec<[T; 2]>> {
        (0..points_per_branch)
            .map(|k| {
                let t = if k + 1 == points_per_branch {
                    T::FRAC_PI_2()
                } else {
                    T::from_count(k) * dt
                };
                let [x, y, z] = spec.surface_point(phi, t)?;
                Ok([x.hypot(y), z])
            })
            .collect()
    };
    section.branch_pos = branch(azimuth)?;
    section.branch_neg = branch(azimuth + T::PI())?;
    Ok(section)
}

/// Largest `|ρ²/A² + z²/R² - 1|` over both branches, `A` the branch's horizontal semi-axis.
pub fn ellipse_residual<T: Scalar>(section: &PlaneSection<T>) -> T {
    let vz = section.vertical_semi_axis;
    let worst = |pts: &[[T; 2]], a: T| {
        pts.iter()
            .map(|p| ((p[0] / a).powi(2) + (p[1] / vz).powi(2) - T::one()).abs())
            .fold(T::zero(), T::max)
    };
    worst(&section.branch_pos, section.semi_axis_pos)
        .max(worst(&section.branch_neg, section.semi_axis_neg))
}

/// Section of a tessellated dome by the vertical plane at `azimuth`.
///
/// Triangles lying in the base plane are skipped. Points within tolerance of the axis belong
/// to both branches.
pub fn mesh_plane_section<T: Scalar>(
    mesh: &TriangleMesh<T>,
    azimuth: T,
    spec: &SolidSpec<T>,
) -> Result<PlaneSection<T>> {
    let mut section = PlaneSection::empty(spec, azimuth)?;
    let scale = mesh
        .vertices
        .iter()
        .flatten()
        .fold(T::zero(), |acc, &c| acc.max(c.abs()));
    let tol = T::length_tolerance(scale);
    let (c, s) = (azimuth.cos(), azimuth.sin());
    let offset = |p: &[T; 3]| -s * p[0] + c * p[1];
    let along = |p: &[T; 3]| c * p[0] + s * p[1];

    let mut hits: Vec<[T; 3]> = Vec::new();
    for &tri in &mesh.triangles {
        let pts = mesh.triangle_points(tri);
        if pts.iter().all(|p| p[2].abs() <= tol) {
            continue;
        }
        let d = pts.map(|p| offset(&p));
        for k in 0..3 {
            if d[k].abs() <= tol {
                hits.push(pts[k]);
            }
            let (a, b) = (k, (k + 1) % 3);
            if (d[a] < -tol && d[b] > tol) || (d[a] > tol && d[b] < -tol) {
                let w = d[a] / (d[a] - d[b]);
                hits.push([0, 1, 2].map(|i| pts[a][i] + w * (pts[b][i] - pts[a][i])));
            }
        }
    }

    for p in hits {
        if p[2] < -tol {
            continue;
        }
        let u = along(&p);
        let pt = [u.abs(), p[2].max(T::zero())];
        if u >= -tol {
            section.branch_pos.push(pt);
        }
        if u <= tol {
            section.branch_neg.push(pt);
        }
    }
    for branch in [&mut section.branch_pos, &mut section.branch_neg] {
        branch.sort_by(|p, q| {
            p[1].partial_cmp(&q[1])
                .unwrap()
                .then(p[0].partial_cmp(&q[0]).unwrap())
        });
        branch.dedup_by(|q, p| (q[0] - p[0]).abs() <= tol && (q[1] - p[1]).abs() <= tol);
    }
    Ok(section)
}

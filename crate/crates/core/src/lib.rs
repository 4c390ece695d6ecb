//! Dome solids over regular polygons.
//!
//! A quarter-circle profile is swept around the vertical axis with its radius scaled so that
//! the foot traces a regular n-gon of apothem `R`. The crate evaluates that surface, meshes it,
//! rebuilds it from stacked equal-volume prism slabs, and computes its volume three independent
//! ways.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the `*64` aliases below fix `f64`.

pub mod analysis;
pub mod construction;
pub mod error;
pub mod geometry;
pub mod io;
pub mod mesh;
pub mod scalar;
pub mod tessellation;

pub use analysis::{
    ellipse_residual, hemisphere_volume, mesh_plane_section, mesh_volume, monte_carlo_volume,
    plane_section, polygon_area, prism_volume, pyramid_volume, solid_volume, MonteCarloEstimate,
    PlaneSection, VolumeReport,
};
pub use construction::{
    build_slab_stack, convergence_profile, max_profile_errors, slab_apothem, slab_stack_mesh,
    slice_volume, ProfileRow, Slab, SlabStack,
};
pub use error::{EdgeDefect, Error, Result};
pub use geometry::{AngularDomain, SolidSpec, SurfaceSample};
pub use io::{read_obj, read_stl, write_obj, write_stl};
pub use mesh::{Topology, TriangleMesh};
pub use scalar::Scalar;
pub use tessellation::{tessellate, MeshResolution};

pub type SolidSpec64 = SolidSpec<f64>;
pub type SolidSpec32 = SolidSpec<f32>;
pub type TriangleMesh64 = TriangleMesh<f64>;
pub type TriangleMesh32 = TriangleMesh<f32>;
pub type SlabStack64 = SlabStack<f64>;
pub type PlaneSection64 = PlaneSection<f64>;
pub type VolumeReport64 = VolumeReport<f64>;

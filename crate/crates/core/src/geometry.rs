//! Parametrization of the dome over a regular n-gon.
//!
//! The azimuth `r` is split into `n` sectors of width `2π/n`, the first centred on the
//! positive x-axis. Inside sector `i` the support radius of the base polygon at azimuth
//! `r` is `R / a(r)` with `a(r) = cos(r - (i-1)·2π/n)`. The dome sweeps the quarter
//! circle `(R cos t, 0, R sin t)` around the axis with that radial scaling, so every
//! horizontal cross-section is a regular n-gon of apothem `R cos t`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A solid fixed by its side count and the in-circle radius (apothem) of the base.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolidSpec<T> {
    sides: usize,
    apothem: T,
}

impl<T: Scalar> SolidSpec<T> {
    pub fn new(sides: usize, apothem: T) -> Result<Self> {
        if sides < 3 {
            return Err(Error::TooFewSides(sides));
        }
        if !(apothem.is_finite() && apothem > T::zero()) {
            return Err(Error::InvalidApothem(apothem.as_f64()));
        }
        Ok(Self { sides, apothem })
    }

    pub fn sides(&self) -> usize {
        self.sides
    }

    pub fn apothem(&self) -> T {
        self.apothem
    }

    /// Distance from the centre to a polygon corner, `R / cos(π/n)`.
    pub fn circumradius(&self) -> T {
        self.apothem / self.half_angle().cos()
    }

    /// `π/n`, half the angle subtended by one side.
    pub fn half_angle(&self) -> T {
        T::PI() / T::from_count(self.sides)
    }

    pub fn domain(&self) -> AngularDomain<T> {
        AngularDomain::new(self.sides)
    }

    /// Tolerance for comparing lengths of this solid.
    pub fn tolerance(&self) -> T {
        T::length_tolerance(self.apothem)
    }

    /// The 1-based sector whose half-open interval contains `r` after wrapping.
    pub fn sector_index(&self, r: T) -> Result<usize> {
        let dom = self.domain();
        let w = dom.wrap(finite("azimuth", r)?);
        let k = ((w - dom.lo) / dom.sector_width).floor();
        // rounding can push k to n at the very top of the range
        let k = k.to_usize().unwrap_or(0).min(self.sides - 1);
        Ok(k + 1)
    }

    /// The apothem scaling factor `a(r)`, in `[cos(π/n), 1]`.
    pub fn scaling_factor(&self, r: T) -> Result<T> {
        let i = self.sector_index(r)?;
        let w = self.domain().wrap(r);
        Ok(self.scaling_factor_in_sector(w, i))
    }

    /// `cos(r - (i-1)·2π/n)` for an explicitly chosen sector `i`, without lookup.
    pub fn scaling_factor_in_sector(&self, r: T, sector: usize) -> T {
        let width = self.domain().sector_width;
        (r - T::from_count(sector - 1) * width).cos()
    }

    /// Point on the base polygon boundary at azimuth `r`.
    pub fn base_point(&self, r: T) -> Result<[T; 2]> {
        let rho = self.apothem / self.scaling_factor(r)?;
        Ok([rho * r.cos(), rho * r.sin()])
    }

    /// Point on the quarter-circle generator in the xz-plane.
    pub fn profile_arc_point(&self, t: T) -> Result<[T; 3]> {
        let t = check_profile(t)?;
        Ok([self.apothem * t.cos(), T::zero(), self.apothem * t.sin()])
    }

    /// Image of the parameter pair `(r, t)` on the dome.
    pub fn surface_point(&self, r: T, t: T) -> Result<[T; 3]> {
        let t = check_profile(t)?;
        let rho = self.apothem / self.scaling_factor(r)? * t.cos();
        Ok([rho * r.cos(), rho * r.sin(), self.apothem * t.sin()])
    }

    pub fn sample(&self, r: T, t: T) -> Result<SurfaceSample<T>> {
        Ok(SurfaceSample {
            r,
            t,
            point: self.surface_point(r, t)?,
        })
    }

    /// Apothem of the horizontal cross-section at height `z`, `√(R² - z²)`; `None` outside `[0, R]`.
    pub fn section_apothem(&self, z: T) -> Option<T> {
        if z < T::zero() || z > self.apothem {
            return None;
        }
        Some((self.apothem * self.apothem - z * z).max(T::zero()).sqrt())
    }

    /// Membership in the closed solid. Boundary points are inside, up to `tolerance()`.
    pub fn inside_solid(&self, p: [T; 3]) -> Result<bool> {
        for (name, v) in ["x", "y", "z"].into_iter().zip(p) {
            finite(name, v)?;
        }
        let tol = self.tolerance();
        let [x, y, z] = p;
        if z < -tol || z > self.apothem + tol {
            return Ok(false);
        }
        let limit = self
            .section_apothem(z.max(T::zero()).min(self.apothem))
            .unwrap_or_default();
        let rho = x.hypot(y);
        if rho == T::zero() {
            return Ok(true);
        }
        let a = self.scaling_factor(y.atan2(x))?;
        Ok(rho * a <= limit + tol)
    }

    /// Corners of the base polygon, counter-clockwise starting at angle `-π/n`.
    pub fn polygon_vertices(&self) -> Vec<[T; 2]> {
        let dom = self.domain();
        let rc = self.circumradius();
        (0..self.sides)
            .map(|k| {
                let ang = dom.lo + T::from_count(k) * dom.sector_width;
                [rc * ang.cos(), rc * ang.sin()]
            })
            .collect()
    }
}

/// The azimuth range `[-π/n, 2π - π/n)` split into `n` equal sectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngularDomain<T> {
    pub lo: T,
    pub hi: T,
    pub sector_width: T,
}

impl<T: Scalar> AngularDomain<T> {
    pub fn new(sides: usize) -> Self {
        let n = T::from_count(sides);
        let two_pi = T::TAU();
        let lo = -T::PI() / n;
        Self {
            lo,
            hi: lo + two_pi,
            sector_width: two_pi / n,
        }
    }

    /// Maps `r` into `[lo, hi)`.
    pub fn wrap(&self, r: T) -> T {
        let two_pi = T::TAU();
        let mut d = (r - self.lo) % two_pi;
        if d < T::zero() {
            d = d + two_pi;
        }
        if d >= two_pi {
            d = d - two_pi;
        }
        self.lo + d
    }

    /// Half-open interval `[start, end)` of the 1-based sector `i`.
    pub fn sector_interval(&self, i: usize) -> (T, T) {
        let start = self.lo + T::from_count(i - 1) * self.sector_width;
        (start, start + self.sector_width)
    }

    /// Midline angle of sector `i`, the outward normal direction of its side.
    pub fn sector_midline(&self, i: usize) -> T {
        T::from_count(i - 1) * self.sector_width
    }
}

/// A parameter pair and its image on the dome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceSample<T> {
    pub r: T,
    pub t: T,
    pub point: [T; 3],
}

fn finite<T: Scalar>(name: &'static str, v: T) -> Result<T> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite {
            name,
            value: v.as_f64(),
        })
    }
}

fn check_profile<T: Scalar>(t: T) -> Result<T> {
    if t.is_finite() && t >= T::zero() && t <= T::FRAC_PI_2() {
        Ok(t)
    } else {
        Err(Error::ProfileOutOfRange(t.as_f64()))
    }
}

//! Compact surfaces identified by orientability, genus and boundary count.
//!
//! Every connected compact surface is determined up to homeomorphism by
//! whether it is orientable, its genus (handle count when orientable,
//! cross-cap count otherwise) and the number of boundary circles.  The crate
//! recognises residue surfaces, vertex links, boundary components and
//! embedding surfaces in exactly this normal form.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// A connected compact surface up to homeomorphism.
///
/// The genus convention follows the Euler characteristic round-trip: an
/// orientable surface of genus `g` closes up to χ = 2 − 2g, a non-orientable
/// one of genus `k` (the number of cross-caps, so the Klein bottle is genus 2)
/// closes up to χ = 2 − k.  Boundary circles subtract 1 from χ each.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceType {
    /// Whether the surface is orientable.
    pub orientable: bool,
    /// Handle count (orientable) or cross-cap count (non-orientable).
    pub genus: u32,
    /// Number of boundary circles; 0 for closed surfaces.
    pub boundary_components: u32,
}

impl SurfaceType {
    /// The 2-sphere.
    pub const SPHERE: SurfaceType = SurfaceType {
        orientable: true,
        genus: 0,
        boundary_components: 0,
    };

    /// The closed disk.
    pub const DISK: SurfaceType = SurfaceType {
        orientable: true,
        genus: 0,
        boundary_components: 1,
    };

    /// The torus.
    pub const TORUS: SurfaceType = SurfaceType {
        orientable: true,
        genus: 1,
        boundary_components: 0,
    };

    /// Builds the surface with the given Euler characteristic, boundary
    /// count and orientability.
    ///
    /// Fails when no such surface exists (χ too large, or parity mismatch:
    /// an orientable surface needs `2 − χ − b` even and non-negative, a
    /// non-orientable one needs `2 − χ − b ≥ 1`).
    pub fn from_euler(chi: i64, boundary_components: u32, orientable: bool) -> Result<SurfaceType> {
        let closed_chi = chi + i64::from(boundary_components);
        let defect = 2 - closed_chi;
        if defect < 0 {
            return Err(Error::consistency(format!(
                "no surface with euler characteristic {chi} and {boundary_components} boundary circles"
            )));
        }
        let genus = if orientable {
            if defect % 2 != 0 {
                return Err(Error::consistency(format!(
                    "odd genus defect {defect} for an orientable surface (chi {chi}, {boundary_components} boundary circles)"
                )));
            }
            (defect / 2) as u32
        } else {
            if defect == 0 {
                return Err(Error::consistency(format!(
                    "chi {chi} with {boundary_components} boundary circles forces a sphere, which is orientable"
                )));
            }
            defect as u32
        };
        Ok(SurfaceType {
            orientable,
            genus,
            boundary_components,
        })
    }

    /// Euler characteristic of the surface (with its boundary).
    pub fn euler_characteristic(&self) -> i64 {
        self.closed_euler_characteristic() - i64::from(self.boundary_components)
    }

    /// Euler characteristic after capping every boundary circle with a disk.
    pub fn closed_euler_characteristic(&self) -> i64 {
        if self.orientable {
            2 - 2 * i64::from(self.genus)
        } else {
            2 - i64::from(self.genus)
        }
    }

    /// True for the closed 2-sphere.
    pub fn is_sphere(&self) -> bool {
        *self == SurfaceType::SPHERE
    }

    /// True for the disk.
    pub fn is_disk(&self) -> bool {
        *self == SurfaceType::DISK
    }

    /// True for the closed torus.
    pub fn is_torus(&self) -> bool {
        *self == SurfaceType::TORUS
    }

    /// True when the surface is closed (no boundary circles).
    pub fn is_closed(&self) -> bool {
        self.boundary_components == 0
    }

    /// Genus of the closed surface obtained by capping all boundary circles,
    /// doubled.  For orientable surfaces this is `2·genus`; for
    /// non-orientable ones the cross-cap count (one cross-cap counts as half
    /// a handle).  Working with the doubled value keeps the arithmetic exact.
    pub fn doubled_capped_genus(&self) -> i64 {
        2 - self.closed_euler_characteristic()
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match (self.orientable, self.genus, self.boundary_components) {
            (true, 0, 0) => return write!(f, "sphere"),
            (true, 0, 1) => return write!(f, "disk"),
            (true, 1, 0) => return write!(f, "torus"),
            (true, 0, 2) => return write!(f, "annulus"),
            (false, 1, 0) => return write!(f, "projective plane"),
            (false, 2, 0) => return write!(f, "Klein bottle"),
            (true, g, _) => format!("orientable genus-{g} surface"),
            (false, g, _) => format!("non-orientable genus-{g} surface"),
        };
        if self.boundary_components == 0 {
            write!(f, "{base}")
        } else {
            write!(f, "{base} with {} boundary circle(s)", self.boundary_components)
        }
    }
}

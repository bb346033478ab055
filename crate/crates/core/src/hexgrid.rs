//! Hexagonal 13-cell topology.
//!
//! Cell 0 is the serving cell at the origin. Cells 1-6 form the first ring at
//! inter-site distance `√3·r`; cells 7-12 are the six second-ring sites at
//! `3·r` that reuse the serving cell's primary band. The UE moves on the
//! straight line from site 0 toward vertex A, the corner shared by cells 0, 1
//! and 6.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of sites in the layout.
pub const CELL_COUNT: usize = 13;

/// Direction of the UE line, in degrees from the x axis.
pub const UE_AXIS_DEG: f64 = 60.0;

/// Distances from a UE to every site, in layout order.
pub type Distances = [f64; CELL_COUNT];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn polar(radius: f64, angle_deg: f64) -> Self {
        let (s, c) = angle_deg.to_radians().sin_cos();
        Self::new(radius * c, radius * s)
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Site coordinates (km) for the 13-cell network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkLayout {
    pub cell_radius_km: f64,
    pub centers: [Point; CELL_COUNT],
    pub ue_axis_deg: f64,
}

/// A UE on the evaluation line at `beta0 · r` from site 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UePosition {
    pub beta0: f64,
    pub point: Point,
}

impl NetworkLayout {
    /// Builds the layout for cell radius `r` (km).
    ///
    /// First-ring site `n` (1..=6) sits at angle `30° + 60°·n`, so sites 6
    /// (30°) and 1 (90°) flank the UE axis. Second-ring site `6 + n` sits at
    /// `60°·n`, which puts site 12 on the x axis and site 7 on the UE axis.
    pub fn new(r: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidRadius(r));
        }
        let ring1 = 3f64.sqrt() * r;
        let ring2 = 3.0 * r;
        let mut centers = [Point::new(0.0, 0.0); CELL_COUNT];
        for n in 1..=6 {
            centers[n] = Point::polar(ring1, 30.0 + 60.0 * n as f64);
            centers[6 + n] = Point::polar(ring2, 60.0 * n as f64);
        }
        Ok(Self {
            cell_radius_km: r,
            centers,
            ue_axis_deg: UE_AXIS_DEG,
        })
    }

    /// The cell corner shared by sites 0, 1 and 6.
    pub fn vertex_a(&self) -> Point {
        Point::polar(self.cell_radius_km, self.ue_axis_deg)
    }

    pub fn ue_position(&self, beta0: f64) -> Result<UePosition> {
        check_beta(beta0)?;
        Ok(UePosition {
            beta0,
            point: Point::polar(beta0 * self.cell_radius_km, self.ue_axis_deg),
        })
    }

    /// Distances from the UE at `beta0` to every site.
    ///
    /// `d[0]` is exactly `beta0 · r` rather than the recomputed norm.
    pub fn distances(&self, beta0: f64) -> Result<Distances> {
        let ue = self.ue_position(beta0)?;
        Ok(self.distances_from(beta0 * self.cell_radius_km, &ue.point))
    }

    fn distances_from(&self, d0: f64, p: &Point) -> Distances {
        let mut d = [0.0; CELL_COUNT];
        d[0] = d0;
        for (dn, c) in d.iter_mut().zip(self.centers.iter()).skip(1) {
            *dn = p.distance(c);
        }
        d
    }

    /// A point at `beta0 · r` from site `cell` on the line toward vertex A.
    ///
    /// Only sites 0, 1 and 6 touch vertex A; for those the point lies inside
    /// the site's own cell.
    pub fn point_toward_vertex(&self, cell: usize, beta0: f64) -> Result<Point> {
        check_beta(beta0)?;
        let c = self.centers[cell];
        let a = self.vertex_a();
        let len = c.distance(&a);
        let t = beta0 * self.cell_radius_km / len;
        Ok(Point::new(c.x + t * (a.x - c.x), c.y + t * (a.y - c.y)))
    }
}

pub(crate) fn check_beta(beta0: f64) -> Result<()> {
    if beta0 > 0.0 && beta0 <= 1.0 {
        Ok(())
    } else {
        Err(Error::BetaOutOfRange(beta0))
    }
}

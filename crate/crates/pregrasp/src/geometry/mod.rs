//! Meshes, point clouds, barycentric parameterization, environment SDFs, and
//! occlusion culling.
//!
//! Conventions: lengths in meters, object geometry in the object frame with
//! the center of mass at the origin, triangle normals unit-length and outward,
//! point-cloud normals unit-length and outward.

mod decimate;
mod mesh;
mod occlusion;
mod sdf;
pub mod shapes;

pub use decimate::decimate_mesh;
pub use mesh::{load_off, parse_off, sample_surface, write_off};
pub use occlusion::{remove_occluded_points, OcclusionParams};
pub use sdf::{build_sdf, Aabb, EnvironmentSDF, Primitive, PrimitiveSet};

use nalgebra::{Point3, UnitQuaternion, Vector3};
use serde::{Deserialize, Serialize};

const UNIT_TOL: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum GeometryError {
    #[error("mesh is not a closed manifold: {0}")]
    NonManifold(String),
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),
    #[error("decimation target {0} is below the minimum of 4 triangles")]
    TargetTooSmall(usize),
    #[error("triangle index {index} out of range ({count} triangles)")]
    BadTriangleIndex { index: usize, count: usize },
    #[error("invalid barycentric coordinates ({alpha}, {beta})")]
    BadBarycentric { alpha: f64, beta: f64 },
    #[error("SDF resolution must be positive, got {0}")]
    BadResolution(f64),
    #[error("SDF requires at least one environment primitive")]
    EmptyPrimitives,
    #[error("SDF bounds must enclose all primitives with a margin of 2 cells")]
    BoundsTooTight,
    #[error("point cloud must be nonempty")]
    EmptyCloud,
    #[error("OFF parse error: {0}")]
    OffParse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Rigid transform: rotation followed by translation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RigidPose {
    pub translation: Vector3<f64>,
    pub rotation: UnitQuaternion<f64>,
}

impl RigidPose {
    pub fn identity() -> Self {
        Self {
            translation: Vector3::zeros(),
            rotation: UnitQuaternion::identity(),
        }
    }

    pub fn new(translation: Vector3<f64>, rotation: UnitQuaternion<f64>) -> Self {
        Self {
            translation,
            rotation,
        }
    }

    pub fn transform_point(&self, p: &Point3<f64>) -> Point3<f64> {
        self.rotation.transform_point(p) + self.translation
    }

    pub fn rotate_vector(&self, v: &Vector3<f64>) -> Vector3<f64> {
        self.rotation.transform_vector(v)
    }

    pub fn inverse_transform_point(&self, p: &Point3<f64>) -> Point3<f64> {
        self.rotation
            .inverse_transform_point(&(p - self.translation))
    }

    /// Quaternion norm within `1e-9` of one.
    pub fn is_valid(&self) -> bool {
        (self.rotation.as_ref().norm() - 1.0).abs() < UNIT_TOL
            && self.translation.iter().all(|c| c.is_finite())
    }
}

/// Point inside a triangle, parameterized as
/// `alpha * v0 + beta * v1 + (1 - alpha - beta) * v2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarycentricCoord {
    pub triangle_index: usize,
    pub alpha: f64,
    pub beta: f64,
}

impl BarycentricCoord {
    pub fn new(triangle_index: usize, alpha: f64, beta: f64) -> Self {
        Self {
            triangle_index,
            alpha,
            beta,
        }
    }

    pub fn centroid(triangle_index: usize) -> Self {
        Self::new(triangle_index, 1.0 / 3.0, 1.0 / 3.0)
    }

    pub fn is_valid(&self) -> bool {
        self.alpha >= 0.0 && self.beta >= 0.0 && self.alpha + self.beta <= 1.0
    }

    /// Clamp `(alpha, beta)` to the unit simplex by Euclidean projection.
    pub fn projected(self) -> Self {
        let (a, b) = project_to_simplex(self.alpha, self.beta);
        Self::new(self.triangle_index, a, b)
    }
}

/// Euclidean projection of `(a, b)` onto `{a >= 0, b >= 0, a + b <= 1}`.
pub fn project_to_simplex(a: f64, b: f64) -> (f64, f64) {
    let (mut a, mut b) = (a.max(0.0), b.max(0.0));
    if a + b > 1.0 {
        // Project onto the line a + b = 1, then clip.
        let t = (a + b - 1.0) / 2.0;
        a -= t;
        b -= t;
        if a < 0.0 {
            a = 0.0;
            b = 1.0;
        } else if b < 0.0 {
            b = 0.0;
            a = 1.0;
        }
    }
    (a, b)
}

/// Triangle surface mesh with per-triangle outward unit normals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleMesh {
    pub vertices: Vec<Point3<f64>>,
    pub triangles: Vec<[usize; 3]>,
    pub normals: Vec<Vector3<f64>>,
}

/// Surface samples with outward unit normals, in the object frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointCloud {
    pub points: Vec<Point3<f64>>,
    pub normals: Vec<Vector3<f64>>,
}

impl PointCloud {
    pub fn new(points: Vec<Point3<f64>>, normals: Vec<Vector3<f64>>) -> Result<Self, GeometryError> {
        if points.is_empty() {
            return Err(GeometryError::EmptyCloud);
        }
        if points.len() != normals.len() {
            return Err(GeometryError::InvalidMesh(format!(
                "{} points but {} normals",
                points.len(),
                normals.len()
            )));
        }
        for n in &normals {
            if (n.norm() - 1.0).abs() > UNIT_TOL {
                return Err(GeometryError::InvalidMesh(format!(
                    "cloud normal {n:?} is not unit length"
                )));
            }
        }
        Ok(Self { points, normals })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of the point nearest to `p`, with its distance.
    pub fn nearest(&self, p: &Point3<f64>) -> Option<(usize, f64)> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, q)| (i, (q - p).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }
}

/// World-frame position and normal of a barycentric point under a pose.
pub fn bary_to_world(
    mesh: &TriangleMesh,
    b: &BarycentricCoord,
    pose: &RigidPose,
) -> Result<(Point3<f64>, Vector3<f64>), GeometryError> {
    let (p, n) = mesh.bary_to_point(b)?;
    Ok((pose.transform_point(&p), pose.rotate_vector(&n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn simplex_projection_cases() {
        assert_eq!(project_to_simplex(0.2, 0.3), (0.2, 0.3));
        assert_eq!(project_to_simplex(-0.5, 0.3), (0.0, 0.3));
        let (a, b) = project_to_simplex(0.9, 0.9);
        assert_relative_eq!(a + b, 1.0, epsilon = 1e-12);
        assert_relative_eq!(a, b, epsilon = 1e-12);
        let (a, b) = project_to_simplex(2.0, -1.0);
        assert!((a, b) == (1.0, 0.0));
    }

    #[test]
    fn pose_roundtrip() {
        let pose = RigidPose::new(
            Vector3::new(0.1, -0.2, 0.3),
            UnitQuaternion::from_euler_angles(0.3, -0.1, 0.7),
        );
        let p = Point3::new(0.5, 0.25, -0.125);
        let q = pose.inverse_transform_point(&pose.transform_point(&p));
        assert_relative_eq!((q - p).norm(), 0.0, epsilon = 1e-12);
        assert!(pose.is_valid());
    }
}

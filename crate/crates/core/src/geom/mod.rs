//! Foundational 3D math shared by all metric modules: rigid/similarity
//! transforms, rotation distances, perspective projection, triangle-mesh
//! utilities and point-cloud distances.
//!
//! All operations are pure functions over immutable inputs and are safe to
//! call from any number of workers.

mod align;
mod chamfer;
mod kdtree;
pub mod primitives;
mod sampling;

pub use align::{kabsch_rigid, procrustes_similarity};
pub use chamfer::{chamfer, chamfer_exhaustive};
pub use kdtree::KdTree;
pub use sampling::{sample_surface, sample_surface_with_rng};

use crate::error::{Error, Result};
use nalgebra as na;
use rand::Rng;

pub type Vec3 = na::Vector3<f64>;
pub type Mat3 = na::Matrix3<f64>;

/// A sampled or corresponded set of 3D points, meters.
pub type PointCloud = Vec<Vec3>;

/// Tolerance for accepting a matrix as a rotation at ingestion. Inputs
/// violating orthonormality beyond this are rejected, never silently
/// re-orthonormalized.
pub const ROTATION_TOL: f64 = 1e-6;

/// Checks orthonormality and `det = +1` within [`ROTATION_TOL`].
pub fn is_rotation(m: &Mat3) -> bool {
    let gram = m.transpose() * m;
    let mut dev: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let target = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((gram[(i, j)] - target).abs());
        }
    }
    dev <= ROTATION_TOL && (m.determinant() - 1.0).abs() <= ROTATION_TOL
}

pub fn validate_rotation(m: &Mat3) -> Result<()> {
    if is_rotation(m) {
        Ok(())
    } else {
        Err(Error::NonRotation)
    }
}

/// Rotation of `angle` radians about `axis` (need not be unit length).
pub fn rotation_about_axis(axis: &Vec3, angle: f64) -> Mat3 {
    na::Rotation3::from_axis_angle(&na::Unit::new_normalize(*axis), angle).into_inner()
}

/// Uniform random rotation (normalized quaternion of four gaussians).
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> Mat3 {
    use rand_distr::StandardNormal;
    loop {
        let q = na::Quaternion::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        );
        if q.norm() > 1e-6 {
            return na::UnitQuaternion::from_quaternion(q)
                .to_rotation_matrix()
                .into_inner();
        }
    }
}

/// Geodesic distance on SO(3) in radians:
/// `arccos(clamp((trace(aᵀb) − 1)/2, −1, 1)) ∈ [0, π]`.
pub fn geodesic_so3(a: &Mat3, b: &Mat3) -> f64 {
    let cos = ((a.transpose() * b).trace() - 1.0) / 2.0;
    cos.clamp(-1.0, 1.0).acos()
}

/// Anything that maps points to points; lets metric code treat rigid and
/// similarity transforms uniformly.
pub trait PointTransform {
    fn apply(&self, p: &Vec3) -> Vec3;

    fn apply_points(&self, pts: &[Vec3]) -> PointCloud {
        pts.iter().map(|p| self.apply(p)).collect()
    }
}

/// Rotation + translation of an object or template in camera space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidPose {
    pub rotation: Mat3,
    pub translation: Vec3,
}

impl RigidPose {
    pub fn new(rotation: Mat3, translation: Vec3) -> Self {
        Self { rotation, translation }
    }

    pub fn identity() -> Self {
        Self::new(Mat3::identity(), Vec3::zeros())
    }

    pub fn validate(&self) -> Result<()> {
        validate_rotation(&self.rotation)?;
        if !self.translation.iter().all(|v| v.is_finite()) {
            return Err(Error::Invalid("non-finite translation".into()));
        }
        Ok(())
    }

    pub fn inverse(&self) -> Self {
        let rt = self.rotation.transpose();
        Self::new(rt, -(rt * self.translation))
    }

    /// This pose with `rot` applied first in the model frame
    /// (`x ↦ R·(rot·x) + t`), as used for symmetry transforms.
    pub fn with_model_rotation(&self, rot: &Mat3) -> Self {
        Self::new(self.rotation * rot, self.translation)
    }
}

impl PointTransform for RigidPose {
    fn apply(&self, p: &Vec3) -> Vec3 {
        self.rotation * p + self.translation
    }
}

/// Scale + rotation + translation, the result of a Procrustes alignment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityTransform {
    pub scale: f64,
    pub rotation: Mat3,
    pub translation: Vec3,
}

impl SimilarityTransform {
    pub fn new(scale: f64, rotation: Mat3, translation: Vec3) -> Self {
        Self { scale, rotation, translation }
    }

    pub fn identity() -> Self {
        Self::new(1.0, Mat3::identity(), Vec3::zeros())
    }

    pub fn validate(&self) -> Result<()> {
        validate_rotation(&self.rotation)?;
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(Error::Invalid("scale must be strictly positive and finite".into()));
        }
        if !self.translation.iter().all(|v| v.is_finite()) {
            return Err(Error::Invalid("non-finite translation".into()));
        }
        Ok(())
    }

    pub fn inverse(&self) -> Self {
        let s = 1.0 / self.scale;
        let rt = self.rotation.transpose();
        Self::new(s, rt, -(rt * self.translation) * s)
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &SimilarityTransform) -> Self {
        Self::new(
            self.scale * other.scale,
            self.rotation * other.rotation,
            self.scale * (self.rotation * other.translation) + self.translation,
        )
    }
}

impl PointTransform for SimilarityTransform {
    fn apply(&self, p: &Vec3) -> Vec3 {
        self.scale * (self.rotation * p) + self.translation
    }
}

/// Applies a transform to every point of a cloud; length preserved.
pub fn transform_points<T: PointTransform>(pose: &T, pts: &[Vec3]) -> PointCloud {
    pose.apply_points(pts)
}

/// Pinhole camera: `u = fx·x/z + cx`, `v = fy·y/z + cy`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraIntrinsics {
    pub fx: f64,
    pub fy: f64,
    pub cx: f64,
    pub cy: f64,
}

impl CameraIntrinsics {
    pub fn new(fx: f64, fy: f64, cx: f64, cy: f64) -> Self {
        Self { fx, fy, cx, cy }
    }

    pub fn validate(&self) -> Result<()> {
        if self.fx > 0.0 && self.fy > 0.0 && [self.fx, self.fy, self.cx, self.cy].iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::Invalid("intrinsics require finite values and fx, fy > 0".into()))
        }
    }

    /// Perspective projection to pixel coordinates. Fails for z ≤ 0.
    pub fn project(&self, p: &Vec3) -> Result<(f64, f64)> {
        if p.z <= 0.0 {
            return Err(Error::BehindCamera { z: p.z });
        }
        Ok((self.fx * p.x / p.z + self.cx, self.fy * p.y / p.z + self.cy))
    }
}

/// Triangle surface, meters. Quads are triangulated at load; faces here are
/// always triples of distinct in-range vertex indices.
#[derive(Debug, Clone, PartialEq)]
pub struct TriMesh {
    pub vertices: Vec<Vec3>,
    pub faces: Vec<[usize; 3]>,
}

impl TriMesh {
    pub fn new(vertices: Vec<Vec3>, faces: Vec<[usize; 3]>) -> Self {
        Self { vertices, faces }
    }

    pub fn validate(&self) -> Result<()> {
        for v in &self.vertices {
            if !v.iter().all(|c| c.is_finite()) {
                return Err(Error::Invalid("non-finite mesh vertex".into()));
            }
        }
        for f in &self.faces {
            if f.iter().any(|&i| i >= self.vertices.len()) {
                return Err(Error::Invalid("face index out of range".into()));
            }
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(Error::Invalid("degenerate face with repeated indices".into()));
            }
        }
        Ok(())
    }

    pub fn face_area(&self, face: &[usize; 3]) -> f64 {
        let a = self.vertices[face[0]];
        let b = self.vertices[face[1]];
        let c = self.vertices[face[2]];
        0.5 * (b - a).cross(&(c - a)).norm()
    }

    pub fn total_area(&self) -> f64 {
        self.faces.iter().map(|f| self.face_area(f)).sum()
    }

    /// Same topology with every vertex transformed.
    pub fn transformed<T: PointTransform>(&self, t: &T) -> TriMesh {
        TriMesh::new(t.apply_points(&self.vertices), self.faces.clone())
    }
}

/// Maximum pairwise vertex distance.
pub fn mesh_diameter(mesh: &TriMesh) -> Result<f64> {
    let pts = &mesh.vertices;
    if pts.len() < 2 {
        return Err(Error::EmptyMesh);
    }
    let mut best = 0.0f64;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            best = best.max((pts[i] - pts[j]).norm_squared());
        }
    }
    Ok(best.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn transform_points_identity_and_translation_and_scale() {
        let cloud = vec![Vec3::new(0.0, 0.0, 0.0), Vec3::new(1.0, 2.0, 3.0)];
        let id = RigidPose::identity();
        assert_eq!(transform_points(&id, &cloud), cloud);

        let shift = RigidPose::new(Mat3::identity(), Vec3::new(1.0, 0.0, 0.0));
        assert_eq!(transform_points(&shift, &[Vec3::zeros()]), vec![Vec3::new(1.0, 0.0, 0.0)]);

        let scale = SimilarityTransform::new(2.0, Mat3::identity(), Vec3::zeros());
        assert_eq!(
            transform_points(&scale, &[Vec3::new(1.0, 1.0, 1.0)]),
            vec![Vec3::new(2.0, 2.0, 2.0)]
        );
    }

    #[test]
    fn pose_inverse_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let pose = RigidPose::new(random_rotation(&mut rng), Vec3::new(0.3, -0.7, 1.1));
            let p = Vec3::new(0.2, 0.4, -0.9);
            let back = pose.inverse().apply(&pose.apply(&p));
            assert_abs_diff_eq!(back, p, epsilon = 1e-12);

            let sim = SimilarityTransform::new(1.7, random_rotation(&mut rng), Vec3::new(-0.1, 0.5, 0.2));
            let back = sim.inverse().apply(&sim.apply(&p));
            assert_abs_diff_eq!(back, p, epsilon = 1e-12);
        }
    }

    #[test]
    fn geodesic_matches_quaternion_oracle() {
        // identity and single-axis cases
        let i = Mat3::identity();
        assert_eq!(geodesic_so3(&i, &i), 0.0);
        let z90 = rotation_about_axis(&Vec3::z(), std::f64::consts::FRAC_PI_2);
        assert_abs_diff_eq!(geodesic_so3(&i, &z90), std::f64::consts::FRAC_PI_2, epsilon = 1e-12);

        // random pairs against 2·arccos(|q_a · q_b|)
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let a = random_rotation(&mut rng);
            let b = random_rotation(&mut rng);
            let qa = nalgebra::UnitQuaternion::from_matrix(&a);
            let qb = nalgebra::UnitQuaternion::from_matrix(&b);
            let dot = qa.coords.dot(&qb.coords).abs().clamp(0.0, 1.0);
            let oracle = 2.0 * dot.acos();
            assert_abs_diff_eq!(geodesic_so3(&a, &b), oracle, epsilon = 1e-9);
        }
    }

    #[test]
    fn projection_arithmetic() {
        let k = CameraIntrinsics::new(500.0, 500.0, 320.0, 320.0);
        assert_eq!(k.project(&Vec3::new(0.0, 0.0, 2.0)).unwrap(), (320.0, 320.0));
        assert_eq!(k.project(&Vec3::new(0.1, 0.0, 2.0)).unwrap(), (345.0, 320.0));
        assert!(matches!(
            k.project(&Vec3::new(0.0, 0.0, -1.0)),
            Err(Error::BehindCamera { .. })
        ));
    }

    #[test]
    fn diameter_of_simple_shapes() {
        let cube = primitives::box_mesh(1.0, 1.0, 1.0);
        assert_abs_diff_eq!(mesh_diameter(&cube).unwrap(), 3.0f64.sqrt(), epsilon = 1e-12);

        let segment = TriMesh::new(vec![Vec3::zeros(), Vec3::new(0.0, 3.0, 0.0)], vec![]);
        assert_eq!(mesh_diameter(&segment).unwrap(), 3.0);
    }

    #[test]
    fn diameter_matches_exhaustive_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pts: Vec<Vec3> = (0..1000)
            .map(|_| Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let mesh = TriMesh::new(pts.clone(), vec![]);
        // independent O(n²) pass, distances accumulated in the opposite order
        let mut best = 0.0f64;
        for j in (0..pts.len()).rev() {
            for i in (0..j).rev() {
                best = best.max((pts[i] - pts[j]).norm());
            }
        }
        assert_eq!(mesh_diameter(&mesh).unwrap(), best);
    }

    #[test]
    fn rotation_validation_rejects_sheared_matrices() {
        let mut m = Mat3::identity();
        m[(0, 1)] = 1e-3;
        assert!(!is_rotation(&m));
        assert!(is_rotation(&rotation_about_axis(&Vec3::new(1.0, 2.0, 0.5), 1.234)));
    }
}

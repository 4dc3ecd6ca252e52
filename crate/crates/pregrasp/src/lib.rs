//! Planning library for nonprehensile pregrasp manipulation.
//!
//! Given a rigid object resting in a static cluttered environment, the planner
//! searches for a physically plausible fingertip trajectory (at most two
//! fingertip contacts, thumb and index) that reconfigures the object until a
//! wrench-closure five-finger grasp becomes available.
//!
//! The pipeline:
//!
//! 1. [`geometry`] — meshes, point clouds, environment signed-distance fields,
//!    occlusion culling, quadric mesh decimation.
//! 2. [`feasibility`] — wrench-closure (dynamic) and reachability surrogate
//!    (kinematic) tests for grasp candidates.
//! 3. [`grasp_oracle`] — sampling-based graspability score and grasp
//!    completion, the classical stand-in for a learned scorer.
//! 4. [`contact_graph`] — contact state graph over ordered triangle pairs of
//!    the decimated mesh, plus best-first path enumeration.
//! 5. [`simulator`] — quasi-dynamic penalty-contact rigid-body simulation with
//!    PD fingertip forces.
//! 6. [`trajopt`] — MPPI optimization over per-stage contact decisions and
//!    control knots, and the outer path loop.
//! 7. [`scene`] — scene description, planner configuration, and persistence.

pub mod contact_graph;
pub mod feasibility;
pub mod geometry;
pub mod grasp_oracle;
pub mod rng;
pub mod scene;
pub mod simulator;
pub mod trajopt;

pub use contact_graph::{ContactGraph, ContactNode, GraphError, Path};
pub use feasibility::{
    ContactPoint, FeasibilityError, Finger, FrictionModel, GraspCandidate, KinematicParams,
};
pub use geometry::{
    BarycentricCoord, EnvironmentSDF, GeometryError, PointCloud, PrimitiveSet, RigidPose,
    TriangleMesh,
};
pub use grasp_oracle::{OracleConfig, OracleError, SamplingOracle, ScoreQuery};
pub use scene::{PlannerConfig, SceneError, SceneSpec};
pub use simulator::{BodyParams, FingerCommand, SimConfig, SimError, SimState, Trajectory};
pub use trajopt::{MppiConfig, PlanError, PlanResult, PlanStatus};

//! Canonical skeleton, forward kinematics and pose canonicalization.
//!
//! All signs are rendered onto one skeleton so that sequences coming from
//! different signers share bone lengths. Dictionary entries store per-joint
//! local rotations (intrinsic X-Y-Z Euler angles, radians); forward
//! kinematics turns them into 3D pose tracks, which are then normalized so
//! the hips midpoint sits at the origin and the shoulder line runs along the
//! horizontal axis. Coordinates are right-handed, Y up, Z toward the viewer.

use std::collections::HashSet;
use std::path::Path;

use nalgebra::{Rotation3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{self, Point3};

/// One joint of the canonical skeleton.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Joint {
    pub name: String,
    /// Parent joint index; `None` marks the single root.
    pub parent: Option<usize>,
    /// Bone length from the parent, canonical units.
    pub bone_length: f64,
    /// Unit direction of the bone in the parent's rest frame.
    pub rest_direction: [f64; 3],
}

/// Indices of the joints the pipeline needs to find by role.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Anchors {
    pub hips_left: usize,
    pub hips_right: usize,
    pub shoulder_left: usize,
    pub shoulder_right: usize,
    pub dominant_wrist: usize,
    pub head_root: usize,
}

/// Joint hierarchy plus bone lengths defining the single body applied to all
/// signs.
#[derive(Debug, Clone)]
pub struct CanonicalSkeleton {
    pub version: String,
    pub joints: Vec<Joint>,
    pub anchors: Anchors,
}

/// Per-joint local rotations over time. Each frame holds one
/// `[x, y, z]` Euler triple (radians, intrinsic X-Y-Z) per skeleton joint.
#[derive(Debug, Clone, PartialEq)]
pub struct JointAngleSequence {
    pub frames: Vec<Vec<[f64; 3]>>,
    pub fps: f64,
}

/// A frames x joints x 3 Euclidean pose track.
#[derive(Debug, Clone, PartialEq)]
pub struct PoseSequence {
    pub frames: Vec<Vec<Point3>>,
    pub fps: f64,
}

impl CanonicalSkeleton {
    pub fn joint_count(&self) -> usize {
        self.joints.len()
    }

    /// Checks the structural invariants: topological parent order, exactly
    /// one root, positive bone lengths, unit rest directions, resolvable
    /// anchors.
    pub fn validate(&self) -> Result<()> {
        if self.joints.is_empty() {
            return Err(Error::Argument("skeleton has no joints".to_string()));
        }
        let mut roots = 0usize;
        for (i, j) in self.joints.iter().enumerate() {
            match j.parent {
                None => roots += 1,
                Some(p) if p >= i => {
                    return Err(Error::Argument(format!(
                        "joint {} ({}) has parent index {} >= its own index",
                        i, j.name, p
                    )));
                }
                Some(_) => {}
            }
            if !(j.bone_length > 0.0) || !j.bone_length.is_finite() {
                return Err(Error::Argument(format!(
                    "joint {} ({}) has non-positive bone length {}",
                    i, j.name, j.bone_length
                )));
            }
            let n = geom::norm(j.rest_direction);
            if !n.is_finite() || (n - 1.0).abs() > 1e-6 {
                return Err(Error::Argument(format!(
                    "joint {} ({}) rest direction has norm {}, expected 1",
                    i, j.name, n
                )));
            }
        }
        if roots != 1 {
            return Err(Error::Argument(format!(
                "skeleton must have exactly one root, found {roots}"
            )));
        }
        let count = self.joints.len();
        for (label, idx) in [
            ("hips_left", self.anchors.hips_left),
            ("hips_right", self.anchors.hips_right),
            ("shoulder_left", self.anchors.shoulder_left),
            ("shoulder_right", self.anchors.shoulder_right),
            ("dominant_wrist", self.anchors.dominant_wrist),
            ("head_root", self.anchors.head_root),
        ] {
            if idx >= count {
                return Err(Error::Argument(format!(
                    "anchor {label} points at joint {idx}, skeleton has {count} joints"
                )));
            }
        }
        Ok(())
    }
}

impl JointAngleSequence {
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn validate(&self, joint_count: usize) -> Result<()> {
        if !(self.fps > 0.0) {
            return Err(Error::Argument(format!("fps must be > 0, got {}", self.fps)));
        }
        for (u, frame) in self.frames.iter().enumerate() {
            if frame.len() != joint_count {
                return Err(Error::Dimension(format!(
                    "frame {} has {} joint rotations, skeleton has {} joints",
                    u,
                    frame.len(),
                    joint_count
                )));
            }
            if !frame.iter().all(|a| geom::is_finite(*a)) {
                return Err(Error::Data(format!("non-finite angle in frame {u}")));
            }
        }
        Ok(())
    }
}

impl PoseSequence {
    pub fn new(frames: Vec<Vec<Point3>>, fps: f64) -> Self {
        PoseSequence { frames, fps }
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    /// Points per frame, 0 for an empty sequence.
    pub fn joint_count(&self) -> usize {
        self.frames.first().map_or(0, |f| f.len())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.fps > 0.0) {
            return Err(Error::Argument(format!("fps must be > 0, got {}", self.fps)));
        }
        let width = self.joint_count();
        for (u, frame) in self.frames.iter().enumerate() {
            if frame.len() != width {
                return Err(Error::Dimension(format!(
                    "frame {} has {} points, frame 0 has {}",
                    u,
                    frame.len(),
                    width
                )));
            }
            if !frame.iter().all(|p| geom::is_finite(*p)) {
                return Err(Error::Data(format!("non-finite coordinate in frame {u}")));
            }
        }
        Ok(())
    }
}

/// Intrinsic X-Y-Z Euler rotation: `R = Rx(a) * Ry(b) * Rz(c)`.
fn euler_xyz(angles: [f64; 3]) -> Rotation3<f64> {
    Rotation3::from_axis_angle(&Vector3::x_axis(), angles[0])
        * Rotation3::from_axis_angle(&Vector3::y_axis(), angles[1])
        * Rotation3::from_axis_angle(&Vector3::z_axis(), angles[2])
}

/// Converts a joint-angle sequence to a 3D pose sequence.
///
/// Per frame the root sits at the origin and each child is placed at
/// `parent position + (chain rotation up to and including the parent) *
/// (bone_length * rest_direction)`. Bone lengths of the output therefore
/// equal the skeleton's bone lengths exactly, up to floating error.
pub fn forward_kinematics(
    skeleton: &CanonicalSkeleton,
    angles: &JointAngleSequence,
) -> Result<PoseSequence> {
    let count = skeleton.joint_count();
    angles.validate(count)?;
    let mut frames = Vec::with_capacity(angles.frames.len());
    let mut global_rot: Vec<Rotation3<f64>> = vec![Rotation3::identity(); count];
    for frame in &angles.frames {
        let mut points: Vec<Point3> = vec![[0.0; 3]; count];
        for (i, joint) in skeleton.joints.iter().enumerate() {
            let local = euler_xyz(frame[i]);
            match joint.parent {
                None => {
                    global_rot[i] = local;
                    points[i] = [0.0; 3];
                }
                Some(p) => {
                    let offset = global_rot[p]
                        * (geom::to_vec(joint.rest_direction) * joint.bone_length);
                    points[i] = geom::from_vec(geom::to_vec(points[p]) + offset);
                    global_rot[i] = global_rot[p] * local;
                }
            }
        }
        frames.push(points);
    }
    Ok(PoseSequence::new(frames, angles.fps))
}

/// Canonicalizes position and orientation of every frame.
///
/// The hips midpoint is moved to the origin, then the frame is rotated
/// rigidly so that the shoulder-left -> shoulder-right vector points along
/// +X (zero depth and vertical components) and the shoulder midpoint has
/// zero depth with non-negative height. The last constraint pins the
/// remaining rotation freedom about the shoulder axis, making the result
/// invariant to any rigid transform of the input.
pub fn normalize_orientation(
    poses: &PoseSequence,
    skeleton: &CanonicalSkeleton,
) -> Result<PoseSequence> {
    let a = skeleton.anchors;
    let needed = [a.hips_left, a.hips_right, a.shoulder_left, a.shoulder_right];
    let width = poses.joint_count();
    if let Some(&bad) = needed.iter().find(|&&i| i >= width) {
        return Err(Error::Dimension(format!(
            "anchor joint {bad} outside pose width {width}"
        )));
    }
    let mut frames = Vec::with_capacity(poses.len());
    for (u, frame) in poses.frames.iter().enumerate() {
        let hips_mid = geom::to_vec(geom::midpoint(frame[a.hips_left], frame[a.hips_right]));
        let sl = geom::to_vec(frame[a.shoulder_left]) - hips_mid;
        let sr = geom::to_vec(frame[a.shoulder_right]) - hips_mid;
        let shoulder = sr - sl;
        if shoulder.norm() < 1e-12 {
            return Err(Error::Geometry {
                frame: u,
                msg: "shoulders coincident; orientation undefined".to_string(),
            });
        }
        // Yaw about Y zeroes the shoulder vector's depth, roll about Z its
        // height; both leave it on +X. A final pitch about X zeroes the
        // shoulder midpoint's depth, fixing the rotation about the shoulder
        // axis.
        let yaw = Rotation3::from_axis_angle(&Vector3::y_axis(), shoulder.z.atan2(shoulder.x));
        let s1 = yaw * shoulder;
        let roll = Rotation3::from_axis_angle(&Vector3::z_axis(), -s1.y.atan2(s1.x));
        let partial = roll * yaw;
        let center = partial * (0.5 * (sl + sr));
        let pitch = Rotation3::from_axis_angle(&Vector3::x_axis(), -center.z.atan2(center.y));
        let rot = pitch * partial;
        frames.push(
            frame
                .iter()
                .map(|p| geom::from_vec(rot * (geom::to_vec(*p) - hips_mid)))
                .collect(),
        );
    }
    Ok(PoseSequence::new(frames, poses.fps))
}

// --- skeleton definition file -------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct AnchorNames {
    hips_left: String,
    hips_right: String,
    shoulder_left: String,
    shoulder_right: String,
    dominant_wrist: String,
    head_root: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct SkeletonFile {
    version: String,
    joints: Vec<Joint>,
    anchors: AnchorNames,
}

/// Parses a skeleton definition document (JSON). Joints are listed in
/// topological order; anchors reference joints by name.
pub fn skeleton_from_json(text: &str, path: &str) -> Result<CanonicalSkeleton> {
    let file: SkeletonFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        path: path.to_string(),
        line: e.line(),
        msg: e.to_string(),
    })?;
    let mut seen = HashSet::new();
    for j in &file.joints {
        if !seen.insert(j.name.clone()) {
            return Err(Error::Parse {
                path: path.to_string(),
                line: 0,
                msg: format!("duplicate joint name {:?}", j.name),
            });
        }
    }
    let index_of = |name: &str| -> Result<usize> {
        file.joints
            .iter()
            .position(|j| j.name == name)
            .ok_or_else(|| Error::Parse {
                path: path.to_string(),
                line: 0,
                msg: format!("anchor references unknown joint {name:?}"),
            })
    };
    let anchors = Anchors {
        hips_left: index_of(&file.anchors.hips_left)?,
        hips_right: index_of(&file.anchors.hips_right)?,
        shoulder_left: index_of(&file.anchors.shoulder_left)?,
        shoulder_right: index_of(&file.anchors.shoulder_right)?,
        dominant_wrist: index_of(&file.anchors.dominant_wrist)?,
        head_root: index_of(&file.anchors.head_root)?,
    };
    let mut joints = file.joints;
    // Rest directions are required to be unit within 1e-6; renormalize so FK
    // reproduces bone lengths exactly.
    for j in &mut joints {
        let n = geom::norm(j.rest_direction);
        if n > 0.0 {
            j.rest_direction = geom::scale(j.rest_direction, 1.0 / n);
        }
    }
    let skeleton = CanonicalSkeleton {
        version: file.version,
        joints,
        anchors,
    };
    skeleton.validate()?;
    Ok(skeleton)
}

pub fn load_skeleton(path: &Path) -> Result<CanonicalSkeleton> {
    let text = std::fs::read_to_string(path)?;
    skeleton_from_json(&text, &path.display().to_string())
}

pub fn skeleton_to_json(skeleton: &CanonicalSkeleton) -> String {
    let file = SkeletonFile {
        version: skeleton.version.clone(),
        joints: skeleton.joints.clone(),
        anchors: AnchorNames {
            hips_left: skeleton.joints[skeleton.anchors.hips_left].name.clone(),
            hips_right: skeleton.joints[skeleton.anchors.hips_right].name.clone(),
            shoulder_left: skeleton.joints[skeleton.anchors.shoulder_left].name.clone(),
            shoulder_right: skeleton.joints[skeleton.anchors.shoulder_right]
                .name
                .clone(),
            dominant_wrist: skeleton.joints[skeleton.anchors.dominant_wrist]
                .name
                .clone(),
            head_root: skeleton.joints[skeleton.anchors.head_root].name.clone(),
        },
    };
    serde_json::to_string_pretty(&file).expect("skeleton serializes")
}

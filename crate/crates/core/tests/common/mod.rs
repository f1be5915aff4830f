//! Shared synthetic fixtures: a small humanoid skeleton, smooth random sign
//! dictionaries, a face dictionary and a toy embedding table.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use signstitch_core::dictionary::{
    DictionarySource, EmbeddingTable, FaceAnchors, FaceDictionary, SignDictionary,
};
use signstitch_core::geom::Point3;
use signstitch_core::skeleton::{Anchors, CanonicalSkeleton, Joint, JointAngleSequence};

pub const WRIST: usize = 11;

/// Twelve-joint humanoid: hips, spine, neck/head, and two three-joint arms.
pub fn humanoid_skeleton() -> CanonicalSkeleton {
    let mk = |name: &str, parent: Option<usize>, len: f64, dir: [f64; 3]| Joint {
        name: name.into(),
        parent,
        bone_length: len,
        rest_direction: dir,
    };
    let skeleton = CanonicalSkeleton {
        version: "fixture-1".into(),
        joints: vec![
            mk("root", None, 1.0, [0.0, 1.0, 0.0]),
            mk("hip_l", Some(0), 0.2, [-1.0, 0.0, 0.0]),
            mk("hip_r", Some(0), 0.2, [1.0, 0.0, 0.0]),
            mk("spine", Some(0), 0.5, [0.0, 1.0, 0.0]),
            mk("neck", Some(3), 0.15, [0.0, 1.0, 0.0]),
            mk("head", Some(4), 0.15, [0.0, 1.0, 0.0]),
            mk("shoulder_l", Some(3), 0.22, [-1.0, 0.0, 0.0]),
            mk("elbow_l", Some(6), 0.3, [-0.7, -0.714142842854285, 0.0]),
            mk("wrist_l", Some(7), 0.28, [0.0, -1.0, 0.0]),
            mk("shoulder_r", Some(3), 0.22, [1.0, 0.0, 0.0]),
            mk("elbow_r", Some(9), 0.3, [0.7, -0.714142842854285, 0.0]),
            mk("wrist_r", Some(10), 0.28, [0.0, -1.0, 0.0]),
        ],
        anchors: Anchors {
            hips_left: 1,
            hips_right: 2,
            shoulder_left: 6,
            shoulder_right: 9,
            dominant_wrist: WRIST,
            head_root: 5,
        },
    };
    skeleton.validate().expect("fixture skeleton is valid");
    skeleton
}

/// A smooth sign: sinusoid-driven right arm over a rest ramp, with seeded
/// jitter so no two entries are alike.
pub fn smooth_sign(rng: &mut StdRng, frames: usize, fps: f64) -> JointAngleSequence {
    let joints = humanoid_skeleton().joint_count();
    let f0 = rng.gen_range(0.4..1.1);
    let phase = rng.gen_range(0.0..std::f64::consts::TAU);
    let amp = rng.gen_range(0.5..1.0);
    let mut out = Vec::with_capacity(frames);
    for u in 0..frames {
        let t = u as f64 / fps;
        // Ease in/out so the sign starts and ends near rest.
        let env = (std::f64::consts::PI * u as f64 / (frames - 1).max(1) as f64).sin();
        let mut frame = vec![[0.0f64; 3]; joints];
        // Right arm carries the motion.
        frame[9] = [
            amp * env * (std::f64::consts::TAU * f0 * t + phase).sin() * 0.8,
            0.2 * env * (std::f64::consts::TAU * f0 * 0.7 * t).cos(),
            0.3 * env,
        ];
        frame[10] = [
            0.6 * env * (std::f64::consts::TAU * f0 * 1.3 * t + 0.5 * phase).cos(),
            0.0,
            0.2 * env,
        ];
        // Light secondary motion elsewhere.
        frame[6] = [0.0, 0.0, -0.15 * env];
        frame[4] = [0.05 * env, 0.0, 0.0];
        out.push(frame);
    }
    JointAngleSequence { frames: out, fps }
}

pub fn sign_dictionary(keys: &[&str], seed: u64, fps: f64) -> SignDictionary {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut entries = BTreeMap::new();
    for key in keys {
        let frames = rng.gen_range(18..40);
        entries.insert(key.to_string(), smooth_sign(&mut rng, frames, fps));
    }
    SignDictionary {
        entries,
        source: DictionarySource::Isolated,
        skeleton_version: "fixture-1".into(),
    }
}

/// Five-point face with non-collinear anchors and a gentle wiggle.
pub fn face_dictionary(tokens: usize, frames: usize) -> FaceDictionary {
    let mut entries = Vec::with_capacity(tokens);
    for token in 0..tokens {
        let mut seq: Vec<Vec<Point3>> = Vec::with_capacity(frames);
        for u in 0..frames {
            let w = 0.01 * ((u + token) as f64).sin();
            seq.push(vec![
                [0.0, 0.08 + w, 0.02],
                [-0.06, 0.0, 0.03],
                [0.06, 0.0, 0.03],
                [0.0, 0.04, 0.06 + w],
                [0.0, -0.03, 0.04],
            ]);
        }
        entries.push(seq);
    }
    let dict = FaceDictionary {
        entries,
        frame_count: frames,
        point_count: 5,
        anchors: FaceAnchors {
            head_root: 0,
            left: 1,
            right: 2,
        },
    };
    dict.validate().expect("fixture face dictionary is valid");
    dict
}

/// Deterministic toy embeddings: dictionary keys plus a few extra words.
pub fn embeddings(tokens: &[&str], dim: usize, seed: u64) -> EmbeddingTable {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut vectors = HashMap::new();
    for token in tokens {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        vectors.insert(token.to_string(), v);
    }
    EmbeddingTable::new(vectors, dim).expect("fixture embeddings are valid")
}

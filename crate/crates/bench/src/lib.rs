//! Synthetic fixtures shared by the benchmarks.

use std::collections::{BTreeMap, HashMap};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use signstitch_core::dictionary::{
    DictionarySource, EmbeddingTable, FaceAnchors, FaceDictionary, SignDictionary,
};
use signstitch_core::geom::Point3;
use signstitch_core::skeleton::{Anchors, CanonicalSkeleton, Joint, JointAngleSequence};
use signstitch_core::stitcher::GlossScript;
use signstitch_core::PoseSequence;

pub const KEYS: [&str; 8] = [
    "HAUS", "WETTER", "MORGEN", "REGEN", "SONNE", "NORD", "WIND", "KALT",
];

pub fn humanoid_skeleton() -> CanonicalSkeleton {
    let mk = |name: &str, parent: Option<usize>, len: f64, dir: [f64; 3]| Joint {
        name: name.into(),
        parent,
        bone_length: len,
        rest_direction: dir,
    };
    CanonicalSkeleton {
        version: "bench-1".into(),
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
            dominant_wrist: 11,
            head_root: 5,
        },
    }
}

pub fn smooth_sign(rng: &mut StdRng, joints: usize, frames: usize, fps: f64) -> JointAngleSequence {
    let f0 = rng.gen_range(0.4..1.1);
    let phase = rng.gen_range(0.0..std::f64::consts::TAU);
    let amp = rng.gen_range(0.5..1.0);
    let mut out = Vec::with_capacity(frames);
    for u in 0..frames {
        let t = u as f64 / fps;
        let env = (std::f64::consts::PI * u as f64 / (frames - 1).max(1) as f64).sin();
        let mut frame = vec![[0.0f64; 3]; joints];
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
        frame[6] = [0.0, 0.0, -0.15 * env];
        frame[4] = [0.05 * env, 0.0, 0.0];
        out.push(frame);
    }
    JointAngleSequence { frames: out, fps }
}

pub fn sign_dictionary(seed: u64) -> SignDictionary {
    let joints = humanoid_skeleton().joint_count();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut entries = BTreeMap::new();
    for key in KEYS {
        let frames = rng.gen_range(18..40);
        entries.insert(key.to_string(), smooth_sign(&mut rng, joints, frames, 25.0));
    }
    SignDictionary {
        entries,
        source: DictionarySource::Isolated,
        skeleton_version: "bench-1".into(),
    }
}

pub fn face_dictionary() -> FaceDictionary {
    let mut entries = Vec::new();
    for token in 0..4usize {
        let mut seq: Vec<Vec<Point3>> = Vec::new();
        for u in 0..12 {
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
    FaceDictionary {
        entries,
        frame_count: 12,
        point_count: 5,
        anchors: FaceAnchors {
            head_root: 0,
            left: 1,
            right: 2,
        },
    }
}

pub fn embeddings(seed: u64) -> EmbeddingTable {
    let mut rng = StdRng::seed_from_u64(seed);
    let vectors: HashMap<String, Vec<f64>> = KEYS
        .iter()
        .map(|k| {
            (
                k.to_string(),
                (0..8).map(|_| rng.gen_range(-1.0f64..1.0)).collect(),
            )
        })
        .collect();
    EmbeddingTable::new(vectors, 8).unwrap()
}

pub fn script(glosses: usize, fps: f64, seed: u64) -> GlossScript {
    let mut rng = StdRng::seed_from_u64(seed);
    GlossScript {
        id: "bench".into(),
        glosses: (0..glosses)
            .map(|_| KEYS[rng.gen_range(0..KEYS.len())].to_string())
            .collect(),
        durations_frames: (0..glosses).map(|_| rng.gen_range(20..40)).collect(),
        face_tokens: (0..glosses).map(|_| rng.gen_range(0..4)).collect(),
        cutoff_hz: 6.0,
        fps,
    }
}

/// Multi-joint sinusoidal pose track for the dsp-heavy benchmarks.
pub fn sinusoid_track(joints: usize, frames: usize, fps: f64) -> PoseSequence {
    let data: Vec<Vec<Point3>> = (0..frames)
        .map(|i| {
            let t = i as f64 / fps;
            (0..joints)
                .map(|j| {
                    let p = j as f64;
                    [
                        (std::f64::consts::TAU * 1.3 * t + p).sin(),
                        (std::f64::consts::TAU * 2.1 * t + 0.5 * p).cos(),
                        (std::f64::consts::TAU * 0.7 * t).sin() * 0.5,
                    ]
                })
                .collect()
        })
        .collect();
    PoseSequence::new(data, fps)
}

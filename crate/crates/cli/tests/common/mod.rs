//! File-based fixtures for CLI tests: a humanoid skeleton, synthetic sign
//! and face dictionaries, a toy embedding table and scripts, all written
//! into a temp directory, plus a helper to invoke the real binary.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use signstitch_core::dictionary::{
    save_face_dictionary, save_sign_dictionary, DictionarySource, FaceAnchors, FaceDictionary,
    SignDictionary,
};
use signstitch_core::geom::Point3;
use signstitch_core::skeleton::{
    skeleton_to_json, Anchors, CanonicalSkeleton, Joint, JointAngleSequence,
};
use signstitch_core::stitcher::GlossScript;

pub const WRIST: usize = 11;

pub fn humanoid_skeleton() -> CanonicalSkeleton {
    let mk = |name: &str, parent: Option<usize>, len: f64, dir: [f64; 3]| Joint {
        name: name.into(),
        parent,
        bone_length: len,
        rest_direction: dir,
    };
    CanonicalSkeleton {
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
    }
}

/// Twenty-joint chain used by the FK stress checks: a torso plus one long
/// appendage, with anchors placed on distinct joints.
pub fn chain20_skeleton() -> CanonicalSkeleton {
    let mut joints = vec![
        Joint {
            name: "root".into(),
            parent: None,
            bone_length: 1.0,
            rest_direction: [0.0, 1.0, 0.0],
        },
        Joint {
            name: "hip_l".into(),
            parent: Some(0),
            bone_length: 0.2,
            rest_direction: [-1.0, 0.0, 0.0],
        },
        Joint {
            name: "hip_r".into(),
            parent: Some(0),
            bone_length: 0.2,
            rest_direction: [1.0, 0.0, 0.0],
        },
        Joint {
            name: "spine".into(),
            parent: Some(0),
            bone_length: 0.45,
            rest_direction: [0.0, 1.0, 0.0],
        },
        Joint {
            name: "shoulder_l".into(),
            parent: Some(3),
            bone_length: 0.25,
            rest_direction: [-1.0, 0.0, 0.0],
        },
        Joint {
            name: "shoulder_r".into(),
            parent: Some(3),
            bone_length: 0.25,
            rest_direction: [1.0, 0.0, 0.0],
        },
        Joint {
            name: "head".into(),
            parent: Some(3),
            bone_length: 0.3,
            rest_direction: [0.0, 1.0, 0.0],
        },
    ];
    let mut parent = 5;
    for i in joints.len()..20 {
        joints.push(Joint {
            name: format!("seg{i}"),
            parent: Some(parent),
            bone_length: 0.1 + 0.01 * i as f64,
            rest_direction: [0.6, -0.8, 0.0],
        });
        parent = i;
    }
    CanonicalSkeleton {
        version: "chain20".into(),
        joints,
        anchors: Anchors {
            hips_left: 1,
            hips_right: 2,
            shoulder_left: 4,
            shoulder_right: 5,
            dominant_wrist: 19,
            head_root: 6,
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

pub fn sign_dictionary(keys: &[&str], seed: u64, fps: f64) -> SignDictionary {
    let joints = humanoid_skeleton().joint_count();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut entries = BTreeMap::new();
    for key in keys {
        let frames = rng.gen_range(18..40);
        entries.insert(key.to_string(), smooth_sign(&mut rng, joints, frames, fps));
    }
    SignDictionary {
        entries,
        source: DictionarySource::Isolated,
        skeleton_version: "fixture-1".into(),
    }
}

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
    FaceDictionary {
        entries,
        frame_count: frames,
        point_count: 5,
        anchors: FaceAnchors {
            head_root: 0,
            left: 1,
            right: 2,
        },
    }
}

/// Writes a deterministic embedding table covering `tokens`.
pub fn write_embeddings(path: &Path, tokens: &[&str], dim: usize, seed: u64) {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = std::fs::File::create(path).unwrap();
    writeln!(out, "{} {}", tokens.len(), dim).unwrap();
    for token in tokens {
        let values: Vec<String> = (0..dim)
            .map(|_| format!("{:.6}", rng.gen_range(-1.0f64..1.0)))
            .collect();
        writeln!(out, "{} {}", token, values.join(" ")).unwrap();
    }
}

pub fn write_scripts(path: &Path, scripts: &[GlossScript]) {
    let mut out = std::fs::File::create(path).unwrap();
    for script in scripts {
        writeln!(out, "{}", serde_json::to_string(script).unwrap()).unwrap();
    }
}

/// A full on-disk corpus.
pub struct Fixture {
    pub dir: tempfile::TempDir,
    pub skeleton: PathBuf,
    pub signs: PathBuf,
    pub faces: PathBuf,
    pub embeddings: PathBuf,
    pub script: PathBuf,
    pub out_dir: PathBuf,
    pub keys: Vec<String>,
}

pub const FIXTURE_KEYS: [&str; 12] = [
    "HAUS", "WETTER", "MORGEN", "REGEN", "SONNE", "NORD", "WIND", "KALT", "WARM", "SCHNEE",
    "HEUTE", "BLEIBEN",
];

impl Fixture {
    /// Builds the corpus with `scripts` records over the standard key set.
    pub fn new(scripts: &[GlossScript], seed: u64) -> Fixture {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path();
        let skeleton_path = root.join("skeleton.json");
        std::fs::write(&skeleton_path, skeleton_to_json(&humanoid_skeleton())).unwrap();

        let signs_path = root.join("signs.jsonl");
        save_sign_dictionary(&sign_dictionary(&FIXTURE_KEYS, seed, 25.0), &signs_path).unwrap();

        let faces_path = root.join("faces.jsonl");
        save_face_dictionary(&face_dictionary(4, 12), &faces_path).unwrap();

        let embeddings_path = root.join("embeddings.txt");
        write_embeddings(&embeddings_path, &FIXTURE_KEYS, 8, seed ^ 0x5eed);

        let script_path = root.join("script.jsonl");
        write_scripts(&script_path, scripts);

        let out_dir = root.join("out");
        Fixture {
            skeleton: skeleton_path,
            signs: signs_path,
            faces: faces_path,
            embeddings: embeddings_path,
            script: script_path,
            out_dir,
            keys: FIXTURE_KEYS.iter().map(|s| s.to_string()).collect(),
            dir,
        }
    }

    /// Random script over the fixture key set.
    pub fn random_script(rng: &mut StdRng, id: &str, fps: f64) -> GlossScript {
        let g = rng.gen_range(1..=5);
        GlossScript {
            id: id.to_string(),
            glosses: (0..g)
                .map(|_| FIXTURE_KEYS[rng.gen_range(0..FIXTURE_KEYS.len())].to_string())
                .collect(),
            durations_frames: (0..g).map(|_| rng.gen_range(8..40)).collect(),
            face_tokens: (0..g).map(|_| rng.gen_range(0..4)).collect(),
            cutoff_hz: rng.gen_range(2.0..10.0),
            fps,
        }
    }

    pub fn stitch_args(&self) -> Vec<String> {
        vec![
            "stitch".into(),
            "--skeleton".into(),
            self.skeleton.display().to_string(),
            "--signs".into(),
            self.signs.display().to_string(),
            "--faces".into(),
            self.faces.display().to_string(),
            "--embeddings".into(),
            self.embeddings.display().to_string(),
            "--script".into(),
            self.script.display().to_string(),
            "--out-dir".into(),
            self.out_dir.display().to_string(),
        ]
    }
}

/// Runs the signstitch binary with a clean config environment.
pub fn run_cli<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_signstitch"))
        .args(args)
        .env_remove("SIGNSTITCH_CONFIG")
        .output()
        .expect("binary runs")
}

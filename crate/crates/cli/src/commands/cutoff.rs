//! `estimate-cutoff`: regenerate each script record without filtering and
//! pick the cutoff that best reconciles its spectrum with the original.

use std::collections::HashMap;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use serde::Serialize;

use crate::config::{require_path, sanitize_id, write_atomic, FileConfig};
use crate::{PipelineInputs, EXIT_OK, EXIT_PARTIAL};
use signstitch_core::cutoff::{estimate_cutoff, CutoffParams};
use signstitch_core::dsp::resample_linear;
use signstitch_core::stitcher::{load_pose_file, run_pipeline};

use super::{effective_params, load_inputs, pose_file_paths, EffectiveParams, TOOL_VERSION};

#[derive(Debug, Args)]
pub struct CutoffArgs {
    #[command(flatten)]
    inputs: PipelineInputs,
    /// Original pose file, or a directory of them; matched to script
    /// records by id.
    #[arg(long)]
    original: PathBuf,
    /// Directory for per-sequence cutoff reports.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Candidate grid spacing in Hz.
    #[arg(long)]
    grid_step: Option<f64>,
    /// Use the literal original-minus-stitched set difference.
    #[arg(long)]
    literal_set_difference: bool,
    /// Fraction of wrist travel cropped from each end of a sign.
    #[arg(long)]
    alpha_crop: Option<f64>,
    /// Reject embedding substitutions below this cosine similarity.
    #[arg(long)]
    similarity_floor: Option<f64>,
}

#[derive(Debug, Serialize)]
struct CutoffReport<'a> {
    id: &'a str,
    tool_version: &'a str,
    params: &'a EffectiveParams,
    chosen_cutoff: f64,
    grid: Vec<f64>,
    intersection: Vec<f64>,
    difference: Vec<f64>,
    warnings: Vec<String>,
}

pub fn run(args: CutoffArgs) -> Result<u8> {
    let file_cfg = FileConfig::from_env()?;
    let out_dir = require_path(args.out_dir, file_cfg.out_dir.as_ref(), "out-dir")?;
    let params = effective_params(
        &file_cfg,
        args.alpha_crop,
        args.similarity_floor,
        args.grid_step,
        args.literal_set_difference,
        true, // the stitched counterpart is regenerated unfiltered
    );
    let loaded = load_inputs(args.inputs, &file_cfg)?;
    std::fs::create_dir_all(&out_dir)
        .with_context(|| format!("creating {}", out_dir.display()))?;

    // Index originals by their embedded id.
    let mut originals = HashMap::new();
    for path in pose_file_paths(&args.original)? {
        let pose = load_pose_file(&path)
            .with_context(|| format!("loading original pose file {}", path.display()))?;
        originals.insert(pose.id.clone(), pose);
    }

    let cutoff_params = CutoffParams {
        grid_step_hz: params.grid_step_hz,
        literal_set_difference: params.literal_set_difference,
    };
    let pipeline_params = params.pipeline_params();
    let mut failures = 0usize;
    for script in &loaded.scripts {
        let outcome = (|| -> Result<f64> {
            let original_file = originals.get(&script.id).with_context(|| {
                format!("no original pose file carries id {:?}", script.id)
            })?;
            let original = original_file.to_poses()?;
            let out = run_pipeline(
                script,
                &loaded.signs,
                &loaded.faces,
                &loaded.embeddings,
                &loaded.skeleton,
                &pipeline_params,
            )?;
            // Compare body joints only; originals are body-tracked.
            let body = signstitch_core::PoseSequence::new(
                out.assembled
                    .frames
                    .iter()
                    .map(|f| f[..out.body_joints].to_vec())
                    .collect(),
                out.assembled.fps,
            );
            if original.joint_count() != body.joint_count() {
                anyhow::bail!(
                    "original has {} joints, stitched body has {}",
                    original.joint_count(),
                    body.joint_count()
                );
            }
            let stitched = resample_linear(&body, original.len())?;
            let comparison = estimate_cutoff(&original, &stitched, &cutoff_params)?;
            for w in &comparison.warnings {
                log::warn!("{}: {w}", script.id);
            }
            let report = CutoffReport {
                id: &script.id,
                tool_version: TOOL_VERSION,
                params: &params,
                chosen_cutoff: comparison.chosen_cutoff,
                grid: comparison.grid,
                intersection: comparison.intersection,
                difference: comparison.difference,
                warnings: comparison.warnings,
            };
            let path = out_dir.join(format!("{}.cutoff.json", sanitize_id(&script.id)));
            write_atomic(
                &path,
                format!("{}\n", serde_json::to_string_pretty(&report)?).as_bytes(),
            )?;
            Ok(comparison.chosen_cutoff)
        })();
        match outcome {
            Ok(chosen) => println!("{}: cutoff {chosen:.2} Hz", script.id),
            Err(e) => {
                failures += 1;
                eprintln!("{}: FAILED: {e:#}", script.id);
            }
        }
    }
    if failures > 0 {
        eprintln!("{failures} of {} sequence(s) failed", loaded.scripts.len());
        Ok(EXIT_PARTIAL)
    } else {
        Ok(EXIT_OK)
    }
}

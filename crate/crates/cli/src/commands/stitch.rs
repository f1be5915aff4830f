//! `stitch`: run the pipeline for every script record and write pose files
//! plus provenance sidecars.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use serde::Serialize;

use crate::config::{require_path, sanitize_id, write_atomic, FileConfig};
use crate::{PipelineInputs, EXIT_OK, EXIT_PARTIAL};
use signstitch_core::stitcher::{
    output_joint_names, run_pipeline, BoundaryPlan, CropRecord, GlossResolution, PoseFile,
};

use super::{effective_params, load_inputs, EffectiveParams, TOOL_VERSION};

#[derive(Debug, Args)]
pub struct StitchArgs {
    #[command(flatten)]
    inputs: PipelineInputs,
    /// Directory for pose files and provenance sidecars.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Fraction of wrist travel cropped from each end of a sign.
    #[arg(long)]
    alpha_crop: Option<f64>,
    /// Reject embedding substitutions below this cosine similarity.
    #[arg(long)]
    similarity_floor: Option<f64>,
    /// Skip the final low-pass filter (step 7).
    #[arg(long)]
    skip_filter: bool,
}

/// Provenance sidecar written next to each pose file.
#[derive(Debug, Serialize)]
struct Sidecar<'a> {
    id: &'a str,
    tool_version: &'a str,
    params: &'a EffectiveParams,
    cutoff_hz: f64,
    fps: f64,
    resolutions: &'a [GlossResolution],
    boundaries: &'a [BoundaryPlan],
    crops: &'a [CropRecord],
    max_face_residual: f64,
    filter_skipped: bool,
    warnings: &'a [String],
}

pub fn run(args: StitchArgs) -> Result<u8> {
    let file_cfg = FileConfig::from_env()?;
    let out_dir = require_path(args.out_dir, file_cfg.out_dir.as_ref(), "out-dir")?;
    let params = effective_params(
        &file_cfg,
        args.alpha_crop,
        args.similarity_floor,
        None,
        false,
        args.skip_filter,
    );
    let loaded = load_inputs(args.inputs, &file_cfg)?;
    std::fs::create_dir_all(&out_dir)
        .with_context(|| format!("creating {}", out_dir.display()))?;

    let pipeline_params = params.pipeline_params();
    let mut failures = 0usize;
    for script in &loaded.scripts {
        match run_pipeline(
            script,
            &loaded.signs,
            &loaded.faces,
            &loaded.embeddings,
            &loaded.skeleton,
            &pipeline_params,
        ) {
            Ok(out) => {
                let stem = sanitize_id(&script.id);
                let names = output_joint_names(&loaded.skeleton, out.face_points);
                let pose = PoseFile::from_poses(&script.id, &out.poses, names);
                let pose_path = out_dir.join(format!("{stem}.pose.json"));
                write_atomic(
                    &pose_path,
                    format!("{}\n", serde_json::to_string(&pose)?).as_bytes(),
                )?;
                let sidecar = Sidecar {
                    id: &script.id,
                    tool_version: TOOL_VERSION,
                    params: &params,
                    cutoff_hz: script.cutoff_hz,
                    fps: script.fps,
                    resolutions: &out.report.resolutions,
                    boundaries: &out.plan.boundaries,
                    crops: &out.report.crops,
                    max_face_residual: out.report.max_face_residual,
                    filter_skipped: out.report.filter_skipped,
                    warnings: &out.report.warnings,
                };
                let sidecar_path = out_dir.join(format!("{stem}.provenance.json"));
                write_atomic(
                    &sidecar_path,
                    format!("{}\n", serde_json::to_string_pretty(&sidecar)?).as_bytes(),
                )?;
                let substituted = out
                    .report
                    .resolutions
                    .iter()
                    .filter(|r| {
                        matches!(
                            r.resolution,
                            signstitch_core::dictionary::Resolution::Substituted { .. }
                        )
                    })
                    .count();
                let clamped = out.plan.boundaries.iter().filter(|b| b.clamped).count();
                println!(
                    "{}: {} frames, {} substitution(s), {} clamped boundarie(s)",
                    script.id,
                    out.poses.len(),
                    substituted,
                    clamped
                );
            }
            Err(e) => {
                failures += 1;
                eprintln!("{}: FAILED: {e}", script.id);
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

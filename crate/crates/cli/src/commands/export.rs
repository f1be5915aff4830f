//! `export-frames`: orthographic front-view projections for plotting.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use serde::Serialize;

use crate::config::{require_path, write_atomic, FileConfig};
use crate::EXIT_OK;
use signstitch_core::skeleton::load_skeleton;
use signstitch_core::stitcher::load_pose_file;

use super::TOOL_VERSION;

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// Pose file to project.
    #[arg(long)]
    input: PathBuf,
    /// Skeleton definition file supplying the bone edge list.
    #[arg(long)]
    skeleton: Option<PathBuf>,
    /// Sample every Nth frame; the final frame is always included.
    #[arg(long, default_value_t = 1)]
    stride: usize,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct FrameProjection {
    index: usize,
    /// One `[x, y]` pair per point, front view (depth dropped).
    points: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize)]
struct ExportFile {
    id: String,
    tool_version: &'static str,
    stride: usize,
    /// Parent-child joint index pairs; face marker points carry no edges.
    edges: Vec<[usize; 2]>,
    joint_names: Vec<String>,
    frames: Vec<FrameProjection>,
}

pub fn run(args: ExportArgs) -> Result<u8> {
    if args.stride == 0 {
        anyhow::bail!("stride must be at least 1");
    }
    let file_cfg = FileConfig::from_env()?;
    let skeleton_path = require_path(args.skeleton, file_cfg.skeleton.as_ref(), "skeleton")?;
    let skeleton = load_skeleton(&skeleton_path)?;
    let pose_file = load_pose_file(&args.input)
        .with_context(|| format!("loading {}", args.input.display()))?;
    let poses = pose_file.to_poses()?;
    if poses.joint_count() < skeleton.joint_count() {
        anyhow::bail!(
            "pose file has {} points per frame, skeleton defines {} joints",
            poses.joint_count(),
            skeleton.joint_count()
        );
    }
    for (i, joint) in skeleton.joints.iter().enumerate() {
        if pose_file.joint_names.get(i).map(String::as_str) != Some(joint.name.as_str()) {
            anyhow::bail!(
                "pose joint {} is {:?}, skeleton expects {:?}",
                i,
                pose_file.joint_names.get(i),
                joint.name
            );
        }
    }

    let edges: Vec<[usize; 2]> = skeleton
        .joints
        .iter()
        .enumerate()
        .filter_map(|(i, j)| j.parent.map(|p| [p, i]))
        .collect();

    let last = poses.len() - 1;
    let mut indices: Vec<usize> = (0..poses.len()).step_by(args.stride).collect();
    if *indices.last().unwrap() != last {
        indices.push(last);
    }
    let frames = indices
        .into_iter()
        .map(|index| FrameProjection {
            index,
            points: poses.frames[index].iter().map(|p| [p[0], p[1]]).collect(),
        })
        .collect();

    let export = ExportFile {
        id: pose_file.id,
        tool_version: TOOL_VERSION,
        stride: args.stride,
        edges,
        joint_names: pose_file.joint_names,
        frames,
    };
    let text = format!("{}\n", serde_json::to_string(&export)?);
    match &args.out {
        Some(path) => write_atomic(path, text.as_bytes())?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

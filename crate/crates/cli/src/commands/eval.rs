//! `eval`: DTW mean joint error between produced and reference pose files.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use serde::Serialize;

use crate::config::write_atomic;
use crate::{EXIT_OK, EXIT_PARTIAL};
use signstitch_core::metrics::dtw_mje;
use signstitch_core::stitcher::load_pose_file;

use super::{pose_file_paths, TOOL_VERSION};

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Produced pose file or directory of them.
    #[arg(long)]
    produced: PathBuf,
    /// Reference pose file or directory; directory entries pair by file
    /// name.
    #[arg(long)]
    reference: PathBuf,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct PairResult {
    id: String,
    dtw_mje: f64,
    path_len: usize,
    produced_frames: usize,
    reference_frames: usize,
}

#[derive(Debug, Serialize)]
struct EvalReport {
    tool_version: &'static str,
    pairs: Vec<PairResult>,
    aggregate: Aggregate,
}

#[derive(Debug, Serialize)]
struct Aggregate {
    count: usize,
    mean_dtw_mje: f64,
}

pub fn run(args: EvalArgs) -> Result<u8> {
    let produced = pose_file_paths(&args.produced)?;
    let reference = pose_file_paths(&args.reference)?;

    // Pair by file name when both sides are directories; otherwise both must
    // be single files.
    let pairs: Vec<(PathBuf, PathBuf)> = if produced.len() == 1 && reference.len() == 1 {
        vec![(produced[0].clone(), reference[0].clone())]
    } else {
        let mut out = Vec::new();
        for p in &produced {
            let name = p.file_name().unwrap();
            if let Some(r) = reference.iter().find(|r| r.file_name() == Some(name)) {
                out.push((p.clone(), r.clone()));
            } else {
                log::warn!("no reference for {}", p.display());
            }
        }
        out
    };
    if pairs.is_empty() {
        anyhow::bail!("no produced/reference pairs to evaluate");
    }

    let mut results = Vec::new();
    let mut failures = 0usize;
    for (p_path, r_path) in &pairs {
        let outcome = (|| -> Result<PairResult> {
            let p_file = load_pose_file(p_path)
                .with_context(|| format!("loading {}", p_path.display()))?;
            let r_file = load_pose_file(r_path)
                .with_context(|| format!("loading {}", r_path.display()))?;
            let p = p_file.to_poses()?;
            let r = r_file.to_poses()?;
            let res = dtw_mje(&p, &r)?;
            Ok(PairResult {
                id: p_file.id,
                dtw_mje: res.cost,
                path_len: res.path_len(),
                produced_frames: p.len(),
                reference_frames: r.len(),
            })
        })();
        match outcome {
            Ok(pair) => {
                println!("{}: dtw_mje {:.6}", pair.id, pair.dtw_mje);
                results.push(pair);
            }
            Err(e) => {
                failures += 1;
                eprintln!("{} vs {}: FAILED: {e:#}", p_path.display(), r_path.display());
            }
        }
    }
    if results.is_empty() {
        anyhow::bail!("every pair failed");
    }
    let mean = results.iter().map(|r| r.dtw_mje).sum::<f64>() / results.len() as f64;
    println!("aggregate over {} pair(s): mean dtw_mje {:.6}", results.len(), mean);
    let report = EvalReport {
        tool_version: TOOL_VERSION,
        aggregate: Aggregate {
            count: results.len(),
            mean_dtw_mje: mean,
        },
        pairs: results,
    };
    let text = format!("{}\n", serde_json::to_string_pretty(&report)?);
    match &args.out {
        Some(path) => write_atomic(path, text.as_bytes())?,
        None => print!("{text}"),
    }
    Ok(if failures > 0 { EXIT_PARTIAL } else { EXIT_OK })
}

//! `dict build` and `dict validate`.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader};
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use serde::Deserialize;

use crate::config::{require_path, FileConfig};
use crate::{EXIT_OK, EXIT_PARTIAL};
use signstitch_core::dictionary::{
    save_sign_dictionary, validate_entry, DictionarySource, SignDictionary, SignRecord,
};
use signstitch_core::skeleton::load_skeleton;

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Skeleton definition file the entries must match.
    #[arg(long)]
    skeleton: Option<PathBuf>,
    /// Raw entries: header line, then one record per line.
    #[arg(long)]
    input: PathBuf,
    /// Where to write the validated dictionary.
    #[arg(long)]
    output: PathBuf,
    /// Override the source label from the input header.
    #[arg(long, value_parser = parse_source)]
    source: Option<DictionarySource>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Skeleton definition file the dictionary must match.
    #[arg(long)]
    skeleton: Option<PathBuf>,
    /// Dictionary file to check.
    #[arg(long)]
    input: PathBuf,
}

fn parse_source(s: &str) -> std::result::Result<DictionarySource, String> {
    match s {
        "isolated" => Ok(DictionarySource::Isolated),
        "continuous" => Ok(DictionarySource::Continuous),
        other => Err(format!("unknown source {other:?}, expected isolated|continuous")),
    }
}

#[derive(Debug, Deserialize)]
struct RawHeader {
    skeleton_version: String,
    source: DictionarySource,
}

/// Validates and normalizes raw entries into a dictionary file. Keys are
/// trimmed and uppercased; entries violating the invariants are rejected
/// with per-entry diagnostics and a partial-failure exit code.
pub fn build(args: BuildArgs) -> Result<u8> {
    let file_cfg = FileConfig::from_env()?;
    let skeleton_path = require_path(args.skeleton, file_cfg.skeleton.as_ref(), "skeleton")?;
    let skeleton = load_skeleton(&skeleton_path)?;

    let reader = BufReader::new(
        std::fs::File::open(&args.input)
            .with_context(|| format!("opening {}", args.input.display()))?,
    );
    let mut lines = reader.lines();
    let header: RawHeader = match lines.next() {
        Some(line) => serde_json::from_str(&line?).context("parsing header line")?,
        None => anyhow::bail!("{} is empty", args.input.display()),
    };
    if header.skeleton_version != skeleton.version {
        anyhow::bail!(
            "input header names skeleton version {:?}, loaded skeleton is {:?}",
            header.skeleton_version,
            skeleton.version
        );
    }

    let mut entries: BTreeMap<String, _> = BTreeMap::new();
    let mut rejected = 0usize;
    for (idx, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = idx + 2;
        let record: SignRecord = match serde_json::from_str(&line) {
            Ok(r) => r,
            Err(e) => {
                println!("line {lineno}: rejected (unparseable: {e})");
                rejected += 1;
                continue;
            }
        };
        let key = record.gloss.trim().to_uppercase();
        let seq = match record.to_sequence() {
            Ok(s) => s,
            Err(e) => {
                println!("{key}: rejected ({e})");
                rejected += 1;
                continue;
            }
        };
        if let Err(e) = validate_entry(&key, &seq, skeleton.joint_count()) {
            println!("{key}: rejected ({e})");
            rejected += 1;
            continue;
        }
        if entries.contains_key(&key) {
            println!("{key}: rejected (duplicate gloss key {key:?})");
            rejected += 1;
            continue;
        }
        println!("{key}: {} frames, ok", seq.len());
        entries.insert(key, seq);
    }
    if entries.is_empty() {
        anyhow::bail!("no valid entries; nothing to write");
    }

    let dict = SignDictionary {
        entries,
        source: args.source.unwrap_or(header.source),
        skeleton_version: skeleton.version.clone(),
    };
    save_sign_dictionary(&dict, &args.output)
        .with_context(|| format!("writing {}", args.output.display()))?;
    println!(
        "wrote {} entries to {} ({} rejected)",
        dict.entries.len(),
        args.output.display(),
        rejected
    );
    Ok(if rejected == 0 { EXIT_OK } else { EXIT_PARTIAL })
}

/// Loads a dictionary file strictly and reports its shape.
pub fn validate(args: ValidateArgs) -> Result<u8> {
    let file_cfg = FileConfig::from_env()?;
    let skeleton_path = require_path(args.skeleton, file_cfg.skeleton.as_ref(), "skeleton")?;
    let skeleton = load_skeleton(&skeleton_path)?;
    match signstitch_core::dictionary::load_sign_dictionary(&args.input, skeleton.joint_count())
    {
        Ok(dict) => {
            if dict.skeleton_version != skeleton.version {
                println!(
                    "INVALID: dictionary skeleton version {:?} does not match {:?}",
                    dict.skeleton_version, skeleton.version
                );
                return Ok(EXIT_PARTIAL);
            }
            for (gloss, seq) in &dict.entries {
                println!("{gloss}: {} frames at {} fps", seq.len(), seq.fps);
            }
            println!("OK: {} entries", dict.entries.len());
            Ok(EXIT_OK)
        }
        Err(e) => {
            println!("INVALID: {e}");
            Ok(EXIT_PARTIAL)
        }
    }
}

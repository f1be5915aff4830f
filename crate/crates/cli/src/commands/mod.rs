pub mod cutoff;
pub mod dict;
pub mod eval;
pub mod export;
pub mod stitch;

use std::path::PathBuf;

use anyhow::{Context, Result};

use crate::config::{require_path, resolve, FileConfig};
use crate::PipelineInputs;
use signstitch_core::dictionary::{
    load_embeddings, load_face_dictionary, load_sign_dictionary, EmbeddingTable, FaceDictionary,
    LookupParams, SignDictionary,
};
use signstitch_core::skeleton::{load_skeleton, CanonicalSkeleton};
use signstitch_core::stitcher::{load_scripts, CropParams, GlossScript, PipelineParams};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Effective pipeline parameters, echoed into every output for
/// reproducibility.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EffectiveParams {
    pub alpha_crop: f64,
    pub similarity_floor: f64,
    pub grid_step_hz: f64,
    pub literal_set_difference: bool,
    pub skip_filter: bool,
}

impl EffectiveParams {
    pub fn pipeline_params(&self) -> PipelineParams {
        PipelineParams {
            crop: CropParams {
                alpha_crop: self.alpha_crop,
            },
            lookup: LookupParams {
                similarity_floor: self.similarity_floor,
                exceptions: Default::default(),
            },
            skip_filter: self.skip_filter,
        }
    }
}

/// Everything the pipeline commands need, loaded and validated.
pub struct LoadedInputs {
    pub skeleton: CanonicalSkeleton,
    pub signs: SignDictionary,
    pub faces: FaceDictionary,
    pub embeddings: EmbeddingTable,
    pub scripts: Vec<GlossScript>,
}

pub fn load_inputs(inputs: PipelineInputs, file_cfg: &FileConfig) -> Result<LoadedInputs> {
    let skeleton_path = require_path(inputs.skeleton, file_cfg.skeleton.as_ref(), "skeleton")?;
    let signs_path = require_path(inputs.signs, file_cfg.signs.as_ref(), "signs")?;
    let faces_path = require_path(inputs.faces, file_cfg.faces.as_ref(), "faces")?;
    let embeddings_path =
        require_path(inputs.embeddings, file_cfg.embeddings.as_ref(), "embeddings")?;
    let script_path = require_path(inputs.script, file_cfg.script.as_ref(), "script")?;

    let skeleton = load_skeleton(&skeleton_path)
        .with_context(|| format!("loading skeleton {}", skeleton_path.display()))?;
    let signs = load_sign_dictionary(&signs_path, skeleton.joint_count())
        .with_context(|| format!("loading sign dictionary {}", signs_path.display()))?;
    if signs.skeleton_version != skeleton.version {
        anyhow::bail!(
            "sign dictionary was built for skeleton version {:?}, loaded skeleton is {:?}",
            signs.skeleton_version,
            skeleton.version
        );
    }
    let faces = load_face_dictionary(&faces_path)
        .with_context(|| format!("loading face dictionary {}", faces_path.display()))?;
    let embeddings = load_embeddings(&embeddings_path)
        .with_context(|| format!("loading embeddings {}", embeddings_path.display()))?;
    let scripts = load_scripts(&script_path)
        .with_context(|| format!("loading script {}", script_path.display()))?;
    log::info!(
        "loaded {} signs, {} faces, {} embeddings, {} script record(s)",
        signs.entries.len(),
        faces.token_count(),
        embeddings.len(),
        scripts.len()
    );
    Ok(LoadedInputs {
        skeleton,
        signs,
        faces,
        embeddings,
        scripts,
    })
}

pub fn effective_params(
    file_cfg: &FileConfig,
    alpha_crop: Option<f64>,
    similarity_floor: Option<f64>,
    grid_step_hz: Option<f64>,
    literal_set_difference: bool,
    skip_filter: bool,
) -> EffectiveParams {
    EffectiveParams {
        alpha_crop: resolve(alpha_crop, file_cfg.alpha_crop, 0.05),
        similarity_floor: resolve(similarity_floor, file_cfg.similarity_floor, 0.0),
        grid_step_hz: resolve(grid_step_hz, file_cfg.grid_step_hz, 0.5),
        literal_set_difference: literal_set_difference
            || file_cfg.literal_set_difference.unwrap_or(false),
        skip_filter,
    }
}

/// Collects pose files from a path: the file itself, or `*.json` files in a
/// directory sorted by name.
pub fn pose_file_paths(path: &PathBuf) -> Result<Vec<PathBuf>> {
    if path.is_dir() {
        let mut files: Vec<PathBuf> = std::fs::read_dir(path)
            .with_context(|| format!("reading directory {}", path.display()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|e| e == "json"))
            .collect();
        files.sort();
        Ok(files)
    } else {
        Ok(vec![path.clone()])
    }
}

//! The stitching pipeline: per-sign preparation (crop, resample, face
//! attachment), transition planning and synthesis between consecutive
//! signs, assembly to the scripted length, and the final low-pass style
//! filter.

use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dictionary::{
    lookup, lookup_face, EmbeddingTable, FaceDictionary, LookupParams, Resolution, SignDictionary,
};
use crate::dsp::{self, FilterSpec};
use crate::error::{Error, Result};
use crate::geom::{self, Point3};
use crate::skeleton::{forward_kinematics, normalize_orientation, CanonicalSkeleton, PoseSequence};

/// One sequence worth of translation outputs: glosses, per-gloss durations
/// and face tokens, plus the sequence-level filter cutoff.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GlossScript {
    pub id: String,
    pub glosses: Vec<String>,
    pub durations_frames: Vec<usize>,
    pub face_tokens: Vec<usize>,
    pub cutoff_hz: f64,
    pub fps: f64,
}

impl GlossScript {
    pub fn len(&self) -> usize {
        self.glosses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.glosses.is_empty()
    }

    pub fn total_frames(&self) -> usize {
        self.durations_frames.iter().sum()
    }

    pub fn validate(&self) -> Result<()> {
        let g = self.glosses.len();
        if g == 0 {
            return Err(Error::Argument(format!(
                "script {:?} has no glosses",
                self.id
            )));
        }
        if self.durations_frames.len() != g || self.face_tokens.len() != g {
            return Err(Error::Dimension(format!(
                "script {:?}: {} glosses, {} durations, {} face tokens",
                self.id,
                g,
                self.durations_frames.len(),
                self.face_tokens.len()
            )));
        }
        if let Some(d) = self.durations_frames.iter().find(|&&d| d < 2) {
            return Err(Error::Argument(format!(
                "script {:?}: duration {d} is below the 2-frame minimum",
                self.id
            )));
        }
        if !(self.fps > 0.0) {
            return Err(Error::Argument(format!(
                "script {:?}: fps must be > 0, got {}",
                self.id, self.fps
            )));
        }
        if !(self.cutoff_hz > 0.0) || self.cutoff_hz >= self.fps / 2.0 {
            return Err(Error::Argument(format!(
                "script {:?}: cutoff {} Hz must lie in (0, fps/2 = {})",
                self.id,
                self.cutoff_hz,
                self.fps / 2.0
            )));
        }
        Ok(())
    }
}

/// Fraction of total wrist travel trimmed from each end of a dictionary
/// sign.
#[derive(Debug, Clone, Copy)]
pub struct CropParams {
    pub alpha_crop: f64,
}

impl Default for CropParams {
    fn default() -> Self {
        CropParams { alpha_crop: 0.05 }
    }
}

impl CropParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha_crop > 0.0 && self.alpha_crop < 0.5) {
            return Err(Error::Argument(format!(
                "alpha_crop must lie in (0, 0.5), got {}",
                self.alpha_crop
            )));
        }
        Ok(())
    }
}

/// Result of cropping one sign: the retained frames and the bookkeeping the
/// provenance sidecar records.
#[derive(Debug, Clone)]
pub struct CropOutcome {
    pub poses: PoseSequence,
    /// First retained frame (index into the input).
    pub start: usize,
    /// One past the last retained frame.
    pub end: usize,
    /// True when the wrist never moves; the input is returned unchanged.
    pub still: bool,
}

/// Removes rest-pose dwell from both ends of a sign.
///
/// Wrist travel between consecutive frames is accumulated; the sign starts
/// at the frame from which the cumulative travel first reaches
/// `alpha_crop * total`, and the end crop applies the same rule to the
/// reversed sequence. A sign with zero total travel is returned unchanged
/// with the `still` flag set.
pub fn crop_sign(
    poses: &PoseSequence,
    skeleton: &CanonicalSkeleton,
    params: &CropParams,
) -> Result<CropOutcome> {
    params.validate()?;
    let u = poses.len();
    if u < 3 {
        return Err(Error::Argument(format!(
            "cropping needs at least 3 frames, got {u}"
        )));
    }
    let wrist = skeleton.anchors.dominant_wrist;
    if wrist >= poses.joint_count() {
        return Err(Error::Dimension(format!(
            "wrist joint {wrist} outside pose width {}",
            poses.joint_count()
        )));
    }
    let steps: Vec<f64> = poses
        .frames
        .windows(2)
        .map(|w| geom::dist(w[0][wrist], w[1][wrist]))
        .collect();
    let total: f64 = steps.iter().sum();
    if total <= 0.0 {
        return Ok(CropOutcome {
            poses: poses.clone(),
            start: 0,
            end: u,
            still: true,
        });
    }
    let threshold = params.alpha_crop * total;
    // Keep from the frame at which the threshold-crossing step begins, so a
    // vanishing alpha keeps the whole sign.
    let start = {
        let mut acc = 0.0;
        let mut idx = 0;
        for (i, s) in steps.iter().enumerate() {
            acc += s;
            if acc >= threshold {
                idx = i;
                break;
            }
        }
        idx
    };
    let end_crop = {
        let mut acc = 0.0;
        let mut idx = 0;
        for (i, s) in steps.iter().rev().enumerate() {
            acc += s;
            if acc >= threshold {
                idx = i;
                break;
            }
        }
        idx
    };
    let mut start = start;
    let mut end = u - end_crop;
    // Guarantee at least two frames even for aggressive crops.
    if start > u - 2 {
        start = u - 2;
    }
    if end < start + 2 {
        end = start + 2;
    }
    Ok(CropOutcome {
        poses: PoseSequence::new(poses.frames[start..end].to_vec(), poses.fps),
        start,
        end,
        still: false,
    })
}

/// Result of fitting a face onto the body: the combined frames plus the
/// worst per-frame anchor residual of the least-squares fit.
#[derive(Debug, Clone)]
pub struct AttachOutcome {
    pub poses: PoseSequence,
    pub max_anchor_residual: f64,
}

/// Rigidly fits the face onto the body per frame and appends the face
/// points after the body joints.
///
/// The face's three anchor points are aligned with the body's head root and
/// left/right shoulders by a least-squares rigid fit; the residual of that
/// fit is reported. The face must already be resampled to the body length.
pub fn attach_face(
    body: &PoseSequence,
    face: &[Vec<Point3>],
    skeleton: &CanonicalSkeleton,
    face_anchors: &crate::dictionary::FaceAnchors,
) -> Result<AttachOutcome> {
    if face.len() != body.len() {
        return Err(Error::Dimension(format!(
            "face has {} frames, body has {}; resample the face first",
            face.len(),
            body.len()
        )));
    }
    let a = skeleton.anchors;
    let mut frames = Vec::with_capacity(body.len());
    let mut max_residual = 0.0f64;
    for (u, (body_frame, face_frame)) in body.frames.iter().zip(face).enumerate() {
        let source = [
            face_frame[face_anchors.head_root],
            face_frame[face_anchors.left],
            face_frame[face_anchors.right],
        ];
        let target = [
            body_frame[a.head_root],
            body_frame[a.shoulder_left],
            body_frame[a.shoulder_right],
        ];
        let fit = geom::rigid_fit(&source, &target, u)?;
        let mut combined = body_frame.clone();
        combined.extend(face_frame.iter().map(|p| fit.apply(*p)));
        for (s, t) in source.iter().zip(&target) {
            max_residual = max_residual.max(geom::dist(fit.apply(*s), *t));
        }
        frames.push(combined);
    }
    Ok(AttachOutcome {
        poses: PoseSequence::new(frames, body.fps),
        max_anchor_residual: max_residual,
    })
}

/// Transition decision for one boundary between consecutive signs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundaryPlan {
    /// Number of synthesized transition frames (>= 1).
    pub frames: usize,
    /// Mean wrist speed over the last steps of the outgoing sign, units/s.
    pub exit_speed: f64,
    /// Mean wrist speed over the first steps of the incoming sign, units/s.
    pub entry_speed: f64,
    /// Wrist gap between the signs, canonical units.
    pub gap: f64,
    /// Realized transition wrist speed `fps * gap / frames`.
    pub speed: f64,
    /// Set when no frame count satisfies the strict velocity bounds and the
    /// closest approach was used instead.
    pub clamped: bool,
    /// Set when both reference speeds are zero across a nonzero gap; the
    /// transition falls back to a fixed half-second duration.
    pub unsatisfiable: bool,
}

/// Per-boundary transition decisions for a whole script.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct StitchPlan {
    pub boundaries: Vec<BoundaryPlan>,
}

/// Mean wrist speed (units per second) over up to `window` frame steps taken
/// from the end (`from_end`) or start of a sign.
fn edge_speed(poses: &PoseSequence, wrist: usize, fps: f64, window: usize, from_end: bool) -> f64 {
    let steps: Vec<f64> = poses
        .frames
        .windows(2)
        .map(|w| geom::dist(w[0][wrist], w[1][wrist]))
        .collect();
    let k = window.min(steps.len());
    let slice = if from_end {
        &steps[steps.len() - k..]
    } else {
        &steps[..k]
    };
    fps * slice.iter().sum::<f64>() / k as f64
}

/// Population standard deviation of three values.
fn std3(a: f64, b: f64, c: f64) -> f64 {
    let m = (a + b + c) / 3.0;
    (((a - m).powi(2) + (b - m).powi(2) + (c - m).powi(2)) / 3.0).sqrt()
}

const SPEED_WINDOW: usize = 3;

/// Plans the transition between two prepared signs.
///
/// The wrist gap must be crossed at a speed strictly between the outgoing
/// sign's exit speed and the incoming sign's entry speed. Among feasible
/// frame counts the one minimizing the standard deviation of
/// `{exit, transition, entry}` speeds wins; when no count is feasible the
/// closest approach to the bound interval is used and flagged.
pub fn plan_transition(
    sign_a: &PoseSequence,
    sign_b: &PoseSequence,
    skeleton: &CanonicalSkeleton,
    fps: f64,
) -> Result<BoundaryPlan> {
    if sign_a.len() < 2 || sign_b.len() < 2 {
        return Err(Error::Argument(
            "transition planning needs at least 2 frames per sign".into(),
        ));
    }
    let wrist = skeleton.anchors.dominant_wrist;
    let width = sign_a.joint_count().min(sign_b.joint_count());
    if wrist >= width {
        return Err(Error::Dimension(format!(
            "wrist joint {wrist} outside pose width {width}"
        )));
    }
    let v1 = edge_speed(sign_a, wrist, fps, SPEED_WINDOW, true);
    let v2 = edge_speed(sign_b, wrist, fps, SPEED_WINDOW, false);
    let gap = geom::dist(
        sign_a.frames.last().unwrap()[wrist],
        sign_b.frames.first().unwrap()[wrist],
    );
    let lo = v1.min(v2);
    let hi = v1.max(v2);

    let plan = |frames: usize, clamped: bool, unsatisfiable: bool| BoundaryPlan {
        frames,
        exit_speed: v1,
        entry_speed: v2,
        gap,
        speed: fps * gap / frames as f64,
        clamped,
        unsatisfiable,
    };

    if gap <= 0.0 {
        // Signs already adjacent: a single zero-motion frame. Zero speed can
        // never lie strictly inside the bounds, so this is always clamped.
        return Ok(plan(1, !(lo < 0.0 && 0.0 < hi), false));
    }
    if hi <= 0.0 {
        // No speed reference at all; fall back to half a second.
        let frames = ((fps / 2.0).round() as usize).max(1);
        return Ok(plan(frames, true, true));
    }

    let speed_at = |u: usize| fps * gap / u as f64;
    // Transition speed decreases in u, so the feasible set is a contiguous
    // integer range.
    let u_min = {
        let mut u = (fps * gap / hi).floor() as usize + 1;
        if u < 1 {
            u = 1;
        }
        u
    };
    let feasible_max: Option<usize> = if lo > 0.0 {
        let bound = fps * gap / lo;
        let candidate = if bound.fract() == 0.0 {
            bound as usize - 1
        } else {
            bound.floor() as usize
        };
        Some(candidate)
    } else {
        None
    };

    let midpoint = (v1 + v2) / 2.0;
    let upper = feasible_max.unwrap_or_else(|| {
        // lo == 0: everything above u_min is feasible; the std objective is
        // minimized near the midpoint speed, so search a little past it.
        ((fps * gap / (midpoint / 2.0).max(f64::MIN_POSITIVE)).ceil() as usize).max(u_min) + 2
    });

    let mut best_feasible: Option<(f64, usize)> = None;
    for u in u_min..=upper.max(u_min) {
        let s = speed_at(u);
        if lo < s && s < hi {
            let spread = std3(v1, s, v2);
            if best_feasible.map_or(true, |(b, _)| spread < b) {
                best_feasible = Some((spread, u));
            }
        }
    }
    if let Some((_, u)) = best_feasible {
        return Ok(plan(u, false, false));
    }

    // Infeasible: pick the frame count whose speed comes closest to the
    // bound interval. The distance is unimodal in u, so checking the
    // integers around the empty interval suffices; ties go to fewer frames.
    let mut candidates: Vec<usize> = Vec::new();
    let around = fps * gap / hi;
    for u in [around.floor() as isize, around.ceil() as isize] {
        if u >= 1 {
            candidates.push(u as usize);
        }
    }
    if lo > 0.0 {
        let around = fps * gap / lo;
        for u in [around.floor() as isize, around.ceil() as isize, around.ceil() as isize + 1] {
            if u >= 1 {
                candidates.push(u as usize);
            }
        }
    }
    candidates.push(1);
    candidates.sort_unstable();
    candidates.dedup();
    let dist_to_bounds = |s: f64| {
        if s < lo {
            lo - s
        } else if s > hi {
            s - hi
        } else {
            0.0
        }
    };
    let u = candidates
        .into_iter()
        .min_by(|&x, &y| {
            dist_to_bounds(speed_at(x))
                .partial_cmp(&dist_to_bounds(speed_at(y)))
                .unwrap()
                .then(x.cmp(&y))
        })
        .unwrap();
    Ok(plan(u, true, false))
}

/// Generates the transition frames between two signs: each joint moves in a
/// straight line from the last frame of `sign_a` to the first frame of
/// `sign_b`, sampled at fractions `k / (frames + 1)`. The boundary frames
/// themselves are not duplicated.
pub fn synthesize_transition(
    sign_a: &PoseSequence,
    sign_b: &PoseSequence,
    plan: &BoundaryPlan,
) -> Result<PoseSequence> {
    let from = sign_a
        .frames
        .last()
        .ok_or_else(|| Error::Argument("empty outgoing sign".into()))?;
    let to = sign_b
        .frames
        .first()
        .ok_or_else(|| Error::Argument("empty incoming sign".into()))?;
    if from.len() != to.len() {
        return Err(Error::Dimension(format!(
            "boundary frames have widths {} and {}",
            from.len(),
            to.len()
        )));
    }
    let n = plan.frames;
    let frames = (1..=n)
        .map(|k| {
            let t = k as f64 / (n + 1) as f64;
            from.iter().zip(to).map(|(p, q)| geom::lerp(*p, *q, t)).collect()
        })
        .collect();
    Ok(PoseSequence::new(frames, sign_a.fps))
}

/// Concatenates prepared signs and their transitions, then resamples the
/// whole sequence to the scripted total duration.
pub fn assemble(
    script: &GlossScript,
    signs: &[PoseSequence],
    transitions: &[PoseSequence],
) -> Result<PoseSequence> {
    if signs.is_empty() || transitions.len() != signs.len() - 1 {
        return Err(Error::Argument(format!(
            "{} signs need {} transitions, got {}",
            signs.len(),
            signs.len().saturating_sub(1),
            transitions.len()
        )));
    }
    let width = signs[0].joint_count();
    let mut frames: Vec<Vec<Point3>> = Vec::new();
    for (i, sign) in signs.iter().enumerate() {
        if sign.joint_count() != width {
            return Err(Error::Dimension(format!(
                "sign {i} has {} points per frame, expected {width}",
                sign.joint_count()
            )));
        }
        frames.extend(sign.frames.iter().cloned());
        if let Some(t) = transitions.get(i) {
            if t.joint_count() != width && !t.is_empty() {
                return Err(Error::Dimension(format!(
                    "transition {i} has {} points per frame, expected {width}",
                    t.joint_count()
                )));
            }
            frames.extend(t.frames.iter().cloned());
        }
    }
    let total = script.total_frames();
    let resampled = dsp::resample_frames(&frames, total)?;
    Ok(PoseSequence::new(resampled, script.fps))
}

/// Pipeline tuning knobs.
#[derive(Debug, Clone, Default)]
pub struct PipelineParams {
    pub crop: CropParams,
    pub lookup: LookupParams,
    /// When set, step 7 (low-pass filtering) is skipped; used when
    /// regenerating stitched sequences for cutoff estimation.
    pub skip_filter: bool,
}

/// How one gloss of the script was resolved.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GlossResolution {
    pub index: usize,
    pub gloss: String,
    #[serde(flatten)]
    pub resolution: Resolution,
}

/// Crop bookkeeping for one gloss.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CropRecord {
    pub index: usize,
    pub start: usize,
    pub end: usize,
    pub still: bool,
}

/// Everything the pipeline knows about how the output was produced.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProvenanceReport {
    pub resolutions: Vec<GlossResolution>,
    pub crops: Vec<CropRecord>,
    /// Worst face-anchor fit residual over all glosses and frames.
    pub max_face_residual: f64,
    /// True when the final filter was skipped (short sequence or disabled).
    pub filter_skipped: bool,
    pub warnings: Vec<String>,
}

/// Full pipeline result: the filtered sequence, the pre-filter intermediate,
/// the transition plan and the provenance report.
#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub poses: PoseSequence,
    /// Assembled sequence before step 7; differs from `poses` only by the
    /// filter.
    pub assembled: PoseSequence,
    pub plan: StitchPlan,
    pub report: ProvenanceReport,
    /// Body joint count of the output layout (face points follow).
    pub body_joints: usize,
    /// Face point count appended after the body joints.
    pub face_points: usize,
}

/// Runs the full seven-step pipeline for one script.
///
/// Steps: gloss and face lookup; forward kinematics plus orientation
/// normalization; crop; per-sign resample and face attachment; transition
/// planning and synthesis; assembly to the scripted length; Butterworth
/// low-pass at the scripted cutoff.
pub fn run_pipeline(
    script: &GlossScript,
    signs: &SignDictionary,
    faces: &FaceDictionary,
    embeddings: &EmbeddingTable,
    skeleton: &CanonicalSkeleton,
    params: &PipelineParams,
) -> Result<PipelineOutput> {
    script.validate()?;
    params.crop.validate()?;
    let mut report = ProvenanceReport {
        resolutions: Vec::new(),
        crops: Vec::new(),
        max_face_residual: 0.0,
        filter_skipped: false,
        warnings: Vec::new(),
    };

    let mut prepared: Vec<PoseSequence> = Vec::with_capacity(script.len());
    for (index, gloss) in script.glosses.iter().enumerate() {
        let at = |e: Error| e.at_gloss(index, gloss);

        // Step 1: resolve the gloss and the face token.
        let (angles, resolution) =
            lookup(signs, embeddings, gloss, &params.lookup).map_err(at)?;
        report.resolutions.push(GlossResolution {
            index,
            gloss: gloss.clone(),
            resolution,
        });
        let face = lookup_face(faces, script.face_tokens[index]).map_err(at)?;

        // Step 2: angles -> canonical 3D pose.
        let raw = forward_kinematics(skeleton, angles).map_err(at)?;
        let canonical = normalize_orientation(&raw, skeleton).map_err(at)?;

        // Step 3: crop rest-pose dwell.
        let cropped = crop_sign(&canonical, skeleton, &params.crop).map_err(at)?;
        report.crops.push(CropRecord {
            index,
            start: cropped.start,
            end: cropped.end,
            still: cropped.still,
        });
        if cropped.still {
            report
                .warnings
                .push(format!("gloss {index} ({gloss:?}): no wrist motion, crop skipped"));
        }

        // Step 4: resample body and face to the scripted duration, then fit
        // the face onto the body.
        let duration = script.durations_frames[index];
        let body = dsp::resample_linear(&cropped.poses, duration).map_err(at)?;
        let face_resampled = dsp::resample_frames(face, duration).map_err(at)?;
        let attached =
            attach_face(&body, &face_resampled, skeleton, &faces.anchors).map_err(at)?;
        report.max_face_residual = report.max_face_residual.max(attached.max_anchor_residual);
        prepared.push(attached.poses);
    }

    // Step 5: plan and synthesize transitions between consecutive signs.
    let mut plan = StitchPlan::default();
    let mut transitions: Vec<PoseSequence> = Vec::new();
    for i in 1..prepared.len() {
        let entry = plan_transition(&prepared[i - 1], &prepared[i], skeleton, script.fps)?;
        transitions.push(synthesize_transition(&prepared[i - 1], &prepared[i], &entry)?);
        plan.boundaries.push(entry);
    }

    // Step 6: concatenate and resample to the scripted total length.
    let assembled = assemble(script, &prepared, &transitions)?;

    // Step 7: style filter.
    let (poses, filter_skipped) = if params.skip_filter {
        (assembled.clone(), true)
    } else {
        let spec = FilterSpec::new(script.cutoff_hz, script.fps)
            .map_err(|e| Error::FilterSpec(format!("script {:?}: {e}", script.id)))?;
        let out = dsp::butterworth_lowpass(&assembled, &spec)?;
        if out.skipped_short {
            report.warnings.push(format!(
                "sequence of {} frames is too short to filter",
                assembled.len()
            ));
        }
        (out.poses, out.skipped_short)
    };
    report.filter_skipped = filter_skipped;

    Ok(PipelineOutput {
        poses,
        assembled,
        plan,
        report,
        body_joints: skeleton.joint_count(),
        face_points: faces.point_count,
    })
}

// --- script and pose files --------------------------------------------------

/// Loads a script file: one JSON record per line.
pub fn load_scripts(path: &Path) -> Result<Vec<GlossScript>> {
    let display = path.display().to_string();
    let reader = BufReader::new(std::fs::File::open(path)?);
    let mut scripts = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let script: GlossScript = serde_json::from_str(&line).map_err(|e| Error::Parse {
            path: display.clone(),
            line: idx + 1,
            msg: e.to_string(),
        })?;
        script.validate()?;
        scripts.push(script);
    }
    if scripts.is_empty() {
        return Err(Error::Parse {
            path: display,
            line: 1,
            msg: "no script records".into(),
        });
    }
    Ok(scripts)
}

/// On-disk pose sequence: flat `J * 3` coordinate rows per frame.
#[derive(Debug, Serialize, Deserialize)]
pub struct PoseFile {
    pub id: String,
    pub fps: f64,
    pub joint_names: Vec<String>,
    pub frames: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tool_version: Option<String>,
}

impl PoseFile {
    pub fn from_poses(id: &str, poses: &PoseSequence, joint_names: Vec<String>) -> Self {
        PoseFile {
            id: id.to_string(),
            fps: poses.fps,
            joint_names,
            frames: poses
                .frames
                .iter()
                .map(|f| f.iter().flat_map(|p| p.iter().copied()).collect())
                .collect(),
            tool_version: Some(env!("CARGO_PKG_VERSION").to_string()),
        }
    }

    pub fn to_poses(&self) -> Result<PoseSequence> {
        let width = self.joint_names.len();
        let mut frames = Vec::with_capacity(self.frames.len());
        for (u, row) in self.frames.iter().enumerate() {
            if row.len() != width * 3 {
                return Err(Error::Dimension(format!(
                    "pose {:?} frame {u} has {} values, expected {}",
                    self.id,
                    row.len(),
                    width * 3
                )));
            }
            frames.push(
                row.chunks_exact(3)
                    .map(|c| [c[0], c[1], c[2]])
                    .collect::<Vec<Point3>>(),
            );
        }
        let poses = PoseSequence::new(frames, self.fps);
        poses.validate()?;
        Ok(poses)
    }
}

pub fn load_pose_file(path: &Path) -> Result<PoseFile> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        line: e.line(),
        msg: e.to_string(),
    })
}

pub fn save_pose_file(file: &PoseFile, path: &Path) -> Result<()> {
    let mut out = std::fs::File::create(path)?;
    out.write_all(serde_json::to_string(file).expect("pose file serializes").as_bytes())?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Output joint naming: skeleton joints then `face_i` markers.
pub fn output_joint_names(skeleton: &CanonicalSkeleton, face_points: usize) -> Vec<String> {
    let mut names: Vec<String> = skeleton.joints.iter().map(|j| j.name.clone()).collect();
    names.extend((0..face_points).map(|i| format!("face_{i}")));
    names
}

//! Ground-truth cutoff generation: compares an original sequence against a
//! stitched reconstruction in the frequency domain and picks the low-pass
//! cutoff that retains shared spectrum while rejecting spurious stitching
//! energy.

use crate::dsp::{self, FilterSpec};
use crate::error::{Error, Result};
use crate::skeleton::PoseSequence;
use crate::spline::SmoothingSpline;

/// Candidate grid span in Hz.
pub const GRID_MIN_HZ: f64 = 1.0;
pub const GRID_MAX_HZ: f64 = 25.0;
/// Resolution of the argmax evaluation grid.
const EVAL_STEP_HZ: f64 = 0.01;

/// Knobs for [`estimate_cutoff`].
#[derive(Debug, Clone)]
pub struct CutoffParams {
    /// Candidate spacing in Hz.
    pub grid_step_hz: f64,
    /// Use the literal original-minus-stitched set difference instead of
    /// the default stitched-minus-original direction.
    pub literal_set_difference: bool,
}

impl Default for CutoffParams {
    fn default() -> Self {
        CutoffParams {
            grid_step_hz: 0.5,
            literal_set_difference: false,
        }
    }
}

/// Grid search record: intersection and set-difference per candidate cutoff
/// plus the chosen frequency.
#[derive(Debug, Clone)]
pub struct SpectralComparison {
    pub grid: Vec<f64>,
    pub intersection: Vec<f64>,
    pub difference: Vec<f64>,
    pub chosen_cutoff: f64,
    pub warnings: Vec<String>,
}

/// Per-channel magnitude spectra with the mean removed and the DC bin
/// dropped; position offsets carry no prosodic information.
fn channel_spectra(poses: &PoseSequence) -> Vec<Vec<f64>> {
    let joints = poses.joint_count();
    let len = poses.len();
    let mut spectra = Vec::with_capacity(joints * 3);
    let mut channel = vec![0.0f64; len];
    for j in 0..joints {
        for axis in 0..3 {
            for (u, frame) in poses.frames.iter().enumerate() {
                channel[u] = frame[j][axis];
            }
            let mean = channel.iter().sum::<f64>() / len as f64;
            for v in channel.iter_mut() {
                *v -= mean;
            }
            let mags = dsp::fft_magnitudes(&channel);
            spectra.push(mags[1..].to_vec());
        }
    }
    spectra
}

fn check_shapes(p: &PoseSequence, q: &PoseSequence) -> Result<()> {
    if p.len() != q.len() || p.joint_count() != q.joint_count() {
        return Err(Error::Dimension(format!(
            "sequences differ in shape: {}x{} vs {}x{}",
            p.len(),
            p.joint_count(),
            q.len(),
            q.joint_count()
        )));
    }
    if (p.fps - q.fps).abs() > 1e-9 {
        return Err(Error::Dimension(format!(
            "sequences differ in fps: {} vs {}",
            p.fps, q.fps
        )));
    }
    if p.len() < 8 {
        return Err(Error::Argument(format!(
            "spectral comparison needs at least 8 frames, got {}",
            p.len()
        )));
    }
    Ok(())
}

/// Shared spectral mass: sum over channels and bins of
/// `min(|FT(p)|, |FT(q)|)`.
pub fn spectral_intersection(p: &PoseSequence, q: &PoseSequence) -> Result<f64> {
    check_shapes(p, q)?;
    let sp = channel_spectra(p);
    let sq = channel_spectra(q);
    Ok(sp
        .iter()
        .zip(&sq)
        .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.min(*y)))
        .sum())
}

/// Spectral mass present in the stitched candidate `q` but absent from the
/// original `p`: sum of `max(0, |FT(q)| - |FT(p)|)`.
pub fn spectral_difference(p: &PoseSequence, q: &PoseSequence) -> Result<f64> {
    check_shapes(p, q)?;
    let sp = channel_spectra(p);
    let sq = channel_spectra(q);
    Ok(sp
        .iter()
        .zip(&sq)
        .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (y - x).max(0.0)))
        .sum())
}

/// Picks the cutoff for a sequence by sweeping candidates over the grid.
///
/// For each candidate `c` the stitched spectrum is attenuated by the
/// designed low-pass response at `c` and compared against the original: the
/// intersection measures retained shared spectrum, the set difference
/// measures spurious energy that survives the filter. Smoothing splines are
/// fitted to both curves and the cutoff maximizing
/// `intersection - difference` on a fine grid wins, ties going to the
/// smallest frequency.
pub fn estimate_cutoff(
    original: &PoseSequence,
    stitched: &PoseSequence,
    params: &CutoffParams,
) -> Result<SpectralComparison> {
    check_shapes(original, stitched)?;
    if !(params.grid_step_hz > 0.0) {
        return Err(Error::Argument(format!(
            "grid step must be > 0, got {}",
            params.grid_step_hz
        )));
    }
    let mut warnings = Vec::new();
    let fps = original.fps;
    let mut top = GRID_MAX_HZ;
    let nyquist = fps / 2.0;
    if nyquist <= GRID_MAX_HZ {
        top = nyquist - params.grid_step_hz;
        warnings.push(format!(
            "fps {fps} puts Nyquist at {nyquist} Hz; grid top shrunk to {top} Hz"
        ));
    }
    let mut grid = Vec::new();
    let mut c = GRID_MIN_HZ;
    while c <= top + 1e-9 {
        grid.push(c);
        c += params.grid_step_hz;
    }
    if grid.len() < 4 {
        return Err(Error::Spline(format!(
            "cutoff grid has {} points; need at least 4 for the spline fit",
            grid.len()
        )));
    }

    let original_spectra = channel_spectra(original);
    let stitched_spectra = channel_spectra(stitched);
    // Bin frequencies matching channel_spectra (DC dropped).
    let len = original.len();
    let bin_freqs: Vec<f64> = (1..=len / 2).map(|k| k as f64 * fps / len as f64).collect();

    let mut intersection = Vec::with_capacity(grid.len());
    let mut difference = Vec::with_capacity(grid.len());
    for &c in &grid {
        // Filtering a finite sequence in the time domain would smear the
        // causal transient across every bin; applying the designed response
        // per bin measures the filter itself and keeps both curves exactly
        // monotone in c.
        let sections = dsp::design_lowpass(&FilterSpec::new(c, fps)?)?;
        // The low-pass magnitude is analytically <= 1; the clamp strips
        // float noise that would otherwise show up as spurious difference.
        let gains: Vec<f64> = bin_freqs
            .iter()
            .map(|&f| dsp::cascade_gain(&sections, f, fps).min(1.0))
            .collect();
        let mut inter = 0.0;
        let mut diff = 0.0;
        for (p_ch, q_ch) in original_spectra.iter().zip(&stitched_spectra) {
            for ((&p_mag, &q_raw), &g) in p_ch.iter().zip(q_ch).zip(&gains) {
                let q_mag = g * q_raw;
                inter += p_mag.min(q_mag);
                diff += if params.literal_set_difference {
                    (p_mag - q_mag).max(0.0)
                } else {
                    (q_mag - p_mag).max(0.0)
                };
            }
        }
        intersection.push(inter);
        difference.push(diff);
    }

    // Retaining more spectrum can only increase binwise minima, and (in the
    // default direction) surplus energy; both curves must be non-decreasing
    // in c up to floating rounding.
    let slack = |values: &[f64]| 1e-9 * values.iter().cloned().fold(1.0f64, f64::max);
    let tol_i = slack(&intersection);
    for w in intersection.windows(2) {
        assert!(
            w[1] >= w[0] - tol_i,
            "intersection not monotone: {} then {}",
            w[0],
            w[1]
        );
    }
    if !params.literal_set_difference {
        let tol_d = slack(&difference);
        for w in difference.windows(2) {
            assert!(
                w[1] >= w[0] - tol_d,
                "set difference not monotone: {} then {}",
                w[0],
                w[1]
            );
        }
    }

    let spline_i = SmoothingSpline::fit(&grid, &intersection)?;
    let spline_d = SmoothingSpline::fit(&grid, &difference)?;
    let lo = grid[0];
    let hi = *grid.last().unwrap();
    let steps = ((hi - lo) / EVAL_STEP_HZ).round() as usize;
    let mut best_c = lo;
    let mut best_j = f64::NEG_INFINITY;
    for k in 0..=steps {
        let c = (lo + k as f64 * EVAL_STEP_HZ).min(hi);
        let j = spline_i.eval(c) - spline_d.eval(c);
        // Strict comparison keeps the smallest maximizing frequency.
        if j > best_j {
            best_j = j;
            best_c = c;
        }
    }

    Ok(SpectralComparison {
        grid,
        intersection,
        difference,
        chosen_cutoff: best_c,
        warnings,
    })
}

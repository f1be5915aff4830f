//! Signal-processing primitives used by the stitcher: linear-interpolation
//! resampling, a causal 4th-order Butterworth low-pass, and real-FFT
//! magnitude spectra.

use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::geom::{self, Point3};
use crate::skeleton::PoseSequence;

/// A single real-valued channel with its sample rate.
#[derive(Debug, Clone)]
pub struct ScalarSeries {
    pub samples: Vec<f64>,
    pub sample_rate: f64,
}

impl ScalarSeries {
    pub fn new(samples: Vec<f64>, sample_rate: f64) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Argument("series must have at least one sample".into()));
        }
        if !(sample_rate > 0.0) {
            return Err(Error::Argument(format!(
                "sample rate must be > 0, got {sample_rate}"
            )));
        }
        if !samples.iter().all(|s| s.is_finite()) {
            return Err(Error::Data("series contains non-finite samples".into()));
        }
        Ok(ScalarSeries {
            samples,
            sample_rate,
        })
    }
}

/// Low-pass filter specification. The cutoff is the -3 dB point; the order
/// is fixed at 4.
#[derive(Debug, Clone, Copy)]
pub struct FilterSpec {
    pub cutoff_hz: f64,
    pub sample_rate: f64,
}

pub const FILTER_ORDER: usize = 4;

/// Sequences shorter than this pass through the filter unchanged; the
/// transient would dominate the output.
pub const MIN_FILTER_LEN: usize = 8;

impl FilterSpec {
    pub fn new(cutoff_hz: f64, sample_rate: f64) -> Result<Self> {
        if !(sample_rate > 0.0) {
            return Err(Error::FilterSpec(format!(
                "sample rate must be > 0, got {sample_rate}"
            )));
        }
        if !(cutoff_hz > 0.0) || cutoff_hz >= sample_rate / 2.0 {
            return Err(Error::FilterSpec(format!(
                "cutoff {} Hz must lie in (0, {}) (half the sample rate)",
                cutoff_hz,
                sample_rate / 2.0
            )));
        }
        Ok(FilterSpec {
            cutoff_hz,
            sample_rate,
        })
    }
}

/// One second-order section, direct form II transposed. Denominator is
/// normalized to a0 = 1.
#[derive(Debug, Clone, Copy)]
pub struct Biquad {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub a1: f64,
    pub a2: f64,
}

impl Biquad {
    /// Magnitude of the section's response at digital frequency `omega`
    /// (radians per sample).
    fn gain_at(&self, omega: f64) -> f64 {
        let z1 = Complex64::from_polar(1.0, -omega);
        let z2 = Complex64::from_polar(1.0, -2.0 * omega);
        let num = Complex64::new(self.b0, 0.0) + z1 * self.b1 + z2 * self.b2;
        let den = Complex64::new(1.0, 0.0) + z1 * self.a1 + z2 * self.a2;
        (num / den).norm()
    }
}

/// Designs the 4th-order Butterworth low-pass as two cascaded second-order
/// sections via the bilinear transform.
///
/// The analog cutoff is prewarped (`w = 2 fs tan(pi fc / fs)`) so the
/// digital -3 dB point lands exactly on `cutoff_hz`.
pub fn design_lowpass(spec: &FilterSpec) -> Result<Vec<Biquad>> {
    FilterSpec::new(spec.cutoff_hz, spec.sample_rate)?;
    // tan of the normalized half-frequency; equals omega_prewarped / (2 fs).
    let c = (PI * spec.cutoff_hz / spec.sample_rate).tan();
    let n = FILTER_ORDER;
    let mut sections = Vec::with_capacity(n / 2);
    for k in 0..n / 2 {
        // Conjugate pole pair of the normalized analog prototype:
        // s^2 + 2 sin(theta) s + 1 with theta = (2k+1) pi / (2n).
        let q = 2.0 * ((2 * k + 1) as f64 * PI / (2.0 * n as f64)).sin();
        let a0 = 1.0 + q * c + c * c;
        sections.push(Biquad {
            b0: c * c / a0,
            b1: 2.0 * c * c / a0,
            b2: c * c / a0,
            a1: (2.0 * c * c - 2.0) / a0,
            a2: (1.0 - q * c + c * c) / a0,
        });
    }
    Ok(sections)
}

/// Cascade magnitude response at frequency `freq_hz`.
pub fn cascade_gain(sections: &[Biquad], freq_hz: f64, sample_rate: f64) -> f64 {
    let omega = 2.0 * PI * freq_hz / sample_rate;
    sections.iter().map(|s| s.gain_at(omega)).product()
}

/// Filters one channel in place, causal single pass.
///
/// Each section's state is initialized to the steady state for a constant
/// input equal to the first sample, so a constant channel stays constant and
/// filtering commutes with adding a constant offset.
fn filter_channel(sections: &[Biquad], samples: &mut [f64]) {
    let mut states: Vec<(f64, f64)> = Vec::with_capacity(sections.len());
    let mut level = samples.first().copied().unwrap_or(0.0);
    for s in sections {
        // Steady state of direct form II transposed for constant input; each
        // section has unit DC gain so its output level equals its input level.
        let s2 = (s.b2 - s.a2) * level;
        let s1 = (s.b1 - s.a1) * level + s2;
        states.push((s1, s2));
        level = s.b0 * level + s1;
    }
    for x in samples.iter_mut() {
        let mut v = *x;
        for (s, st) in sections.iter().zip(states.iter_mut()) {
            let y = s.b0 * v + st.0;
            st.0 = s.b1 * v - s.a1 * y + st.1;
            st.1 = s.b2 * v - s.a2 * y;
            v = y;
        }
        *x = v;
    }
}

/// Result of [`butterworth_lowpass`]: the filtered poses plus a flag telling
/// the caller whether filtering was skipped because the sequence is shorter
/// than [`MIN_FILTER_LEN`].
#[derive(Debug, Clone)]
pub struct FilterOutput {
    pub poses: PoseSequence,
    pub skipped_short: bool,
}

/// Applies the causal 4th-order Butterworth low-pass to every coordinate
/// channel of the sequence independently. Length and fps are unchanged.
pub fn butterworth_lowpass(poses: &PoseSequence, spec: &FilterSpec) -> Result<FilterOutput> {
    if (spec.sample_rate - poses.fps).abs() > 1e-9 {
        return Err(Error::FilterSpec(format!(
            "filter sample rate {} does not match sequence fps {}",
            spec.sample_rate, poses.fps
        )));
    }
    let sections = design_lowpass(spec)?;
    for (u, frame) in poses.frames.iter().enumerate() {
        if !frame.iter().all(|p| geom::is_finite(*p)) {
            return Err(Error::Data(format!("non-finite coordinate in frame {u}")));
        }
    }
    if poses.len() < MIN_FILTER_LEN {
        return Ok(FilterOutput {
            poses: poses.clone(),
            skipped_short: true,
        });
    }
    let joints = poses.joint_count();
    let len = poses.len();
    let mut out = poses.clone();
    let mut channel = vec![0.0f64; len];
    for j in 0..joints {
        for axis in 0..3 {
            for (u, frame) in poses.frames.iter().enumerate() {
                channel[u] = frame[j][axis];
            }
            filter_channel(&sections, &mut channel);
            for (u, frame) in out.frames.iter_mut().enumerate() {
                frame[j][axis] = channel[u];
            }
        }
    }
    Ok(FilterOutput {
        poses: out,
        skipped_short: false,
    })
}

/// Resamples per-frame point rows to `target_len` by linear interpolation at
/// uniform fractional indices over `[0, len-1]`. First and last rows are
/// preserved exactly.
pub fn resample_frames(frames: &[Vec<Point3>], target_len: usize) -> Result<Vec<Vec<Point3>>> {
    if frames.len() < 2 {
        return Err(Error::Argument(format!(
            "resampling needs at least 2 frames, got {}",
            frames.len()
        )));
    }
    if target_len < 2 {
        return Err(Error::Argument(format!(
            "resample target length must be >= 2, got {target_len}"
        )));
    }
    let last = frames.len() - 1;
    let mut out = Vec::with_capacity(target_len);
    for i in 0..target_len {
        if i == 0 {
            out.push(frames[0].clone());
            continue;
        }
        if i == target_len - 1 {
            out.push(frames[last].clone());
            continue;
        }
        let pos = i as f64 * last as f64 / (target_len - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = (lo + 1).min(last);
        let t = pos - lo as f64;
        out.push(
            frames[lo]
                .iter()
                .zip(&frames[hi])
                .map(|(a, b)| geom::lerp(*a, *b, t))
                .collect(),
        );
    }
    Ok(out)
}

/// [`resample_frames`] over a full pose sequence; fps is carried over.
pub fn resample_linear(poses: &PoseSequence, target_len: usize) -> Result<PoseSequence> {
    Ok(PoseSequence::new(
        resample_frames(&poses.frames, target_len)?,
        poses.fps,
    ))
}

/// One-sided magnitude spectrum of a real series: `|X_k|` at `k * fs / U`
/// for `k = 0 ..= U/2`.
pub fn magnitude_spectrum(series: &ScalarSeries) -> Result<Vec<(f64, f64)>> {
    let u = series.samples.len();
    if u < 8 {
        return Err(Error::Argument(format!(
            "spectrum needs at least 8 samples, got {u}"
        )));
    }
    let mags = fft_magnitudes(&series.samples);
    Ok(mags
        .into_iter()
        .enumerate()
        .map(|(k, m)| (k as f64 * series.sample_rate / u as f64, m))
        .collect())
}

/// Raw one-sided FFT magnitudes (bins `0 ..= U/2`) of a real signal.
pub(crate) fn fft_magnitudes(samples: &[f64]) -> Vec<f64> {
    let u = samples.len();
    let fft = plan_fft(u);
    let mut buf: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    fft.process(&mut buf);
    buf[..=u / 2].iter().map(|c| c.norm()).collect()
}

fn plan_fft(len: usize) -> Arc<dyn Fft<f64>> {
    FftPlanner::new().plan_fft_forward(len)
}

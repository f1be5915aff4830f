//! Pose-level evaluation: dynamic-time-warping mean joint error.

use crate::error::{Error, Result};
use crate::geom;
use crate::skeleton::PoseSequence;

/// Outcome of [`dtw_mje`]: the path-length-normalized cost and the aligned
/// index pairs.
#[derive(Debug, Clone)]
pub struct DtwResult {
    /// Total path cost divided by path length.
    pub cost: f64,
    /// Aligned `(frame in a, frame in b)` pairs, from `(0,0)` to the final
    /// frames, monotone in both indices.
    pub path: Vec<(usize, usize)>,
}

impl DtwResult {
    pub fn path_len(&self) -> usize {
        self.path.len()
    }
}

/// Mean-over-joints Euclidean distance between two frames.
fn frame_cost(a: &[geom::Point3], b: &[geom::Point3]) -> f64 {
    let sum: f64 = a.iter().zip(b).map(|(p, q)| geom::dist(*p, *q)).sum();
    sum / a.len() as f64
}

/// Dynamic-time-warping mean joint error between two pose sequences.
///
/// Frame-pair cost is the mean over joints of the Euclidean distance; the
/// standard recurrence with steps (-1,0), (0,-1), (-1,-1) minimizes total
/// path cost, and the result is normalized by the warping path length.
/// Backtracking prefers the diagonal step on ties.
pub fn dtw_mje(a: &PoseSequence, b: &PoseSequence) -> Result<DtwResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Argument("DTW inputs must be non-empty".into()));
    }
    if a.joint_count() != b.joint_count() {
        return Err(Error::Dimension(format!(
            "joint layouts differ: {} vs {}",
            a.joint_count(),
            b.joint_count()
        )));
    }
    let n = a.len();
    let m = b.len();
    let mut cost = vec![vec![0.0f64; m]; n];
    for i in 0..n {
        for j in 0..m {
            cost[i][j] = frame_cost(&a.frames[i], &b.frames[j]);
        }
    }
    let mut acc = vec![vec![f64::INFINITY; m]; n];
    acc[0][0] = cost[0][0];
    for i in 0..n {
        for j in 0..m {
            if i == 0 && j == 0 {
                continue;
            }
            let mut best = f64::INFINITY;
            if i > 0 && j > 0 {
                best = best.min(acc[i - 1][j - 1]);
            }
            if i > 0 {
                best = best.min(acc[i - 1][j]);
            }
            if j > 0 {
                best = best.min(acc[i][j - 1]);
            }
            acc[i][j] = cost[i][j] + best;
        }
    }
    // Backtrack to the cheapest predecessor; the diagonal wins ties, which
    // keeps the reconstructed path short.
    let mut path = vec![(n - 1, m - 1)];
    let (mut i, mut j) = (n - 1, m - 1);
    while i > 0 || j > 0 {
        let mut next = None;
        let mut best = f64::INFINITY;
        if i > 0 && j > 0 && acc[i - 1][j - 1] < best {
            best = acc[i - 1][j - 1];
            next = Some((i - 1, j - 1));
        }
        if i > 0 && acc[i - 1][j] < best {
            best = acc[i - 1][j];
            next = Some((i - 1, j));
        }
        if j > 0 && acc[i][j - 1] < best {
            next = Some((i, j - 1));
        }
        let (bi, bj) = next.expect("cell has a predecessor");
        i = bi;
        j = bj;
        path.push((i, j));
    }
    path.reverse();
    Ok(DtwResult {
        cost: acc[n - 1][m - 1] / path.len() as f64,
        path,
    })
}

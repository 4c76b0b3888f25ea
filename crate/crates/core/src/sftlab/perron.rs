//! Power iteration for the Perron eigenvalue of an irreducible nonnegative
//! integer matrix given as successor lists (repeated entries count as
//! parallel edges).

use super::SftlabError;

pub const DEFAULT_TOL: f64 = 1e-10;
const MAX_ITER: usize = 200_000;

/// Perron eigenvalue by power iteration from the all-ones vector.
///
/// Each step yields Collatz–Wielandt bounds `min (Ax)ᵢ/xᵢ ≤ λ ≤ max (Ax)ᵢ/xᵢ`;
/// iteration stops when they agree to `tol` (relative to `max(1, λ)`).
/// Periodic graphs never satisfy that test, so `lazy` iterates with
/// `(A + I)/2` instead, whose Perron value is `(λ + 1)/2`.
pub fn perron_of_lists(succ: &[Vec<usize>], tol: f64, lazy: bool) -> Result<f64, SftlabError> {
    let n = succ.len();
    if n == 0 {
        return Err(SftlabError::EmptyShift);
    }
    let mut x = vec![1.0f64; n];
    let mut y = vec![0.0f64; n];
    for _ in 0..MAX_ITER {
        for i in 0..n {
            let s: f64 = succ[i].iter().map(|&j| x[j]).sum();
            y[i] = if lazy { 0.5 * (x[i] + s) } else { s };
        }
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..n {
            let r = y[i] / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        let (lo, hi) = if lazy {
            (2.0 * lo - 1.0, 2.0 * hi - 1.0)
        } else {
            (lo, hi)
        };
        if hi - lo <= tol * hi.max(1.0) {
            return Ok(0.5 * (lo + hi));
        }
        let m = y.iter().cloned().fold(0.0, f64::max);
        if !(m > 0.0) || !m.is_finite() {
            return Err(SftlabError::NonConvergence { iterations: 0 });
        }
        for i in 0..n {
            // Entries stay positive for an irreducible matrix once the lazy
            // step has mixed them in; guard the plain iteration anyway.
            x[i] = (y[i] / m).max(f64::MIN_POSITIVE);
        }
    }
    Err(SftlabError::NonConvergence { iterations: MAX_ITER })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_minus_loops(k: usize) -> Vec<Vec<usize>> {
        (0..k).map(|i| (0..k).filter(|&j| j != i).collect()).collect()
    }

    #[test]
    fn ideal_spectrum() {
        for k in 3..=8 {
            let l = perron_of_lists(&complete_minus_loops(k), 1e-12, false).unwrap();
            assert!((l - (k - 1) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn golden_mean_and_cycles() {
        let gm = vec![vec![1, 2], vec![0], vec![1, 2]];
        let l = perron_of_lists(&gm, 1e-12, false).unwrap();
        assert!((l - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-10);
        let cycle: Vec<Vec<usize>> = (0..5).map(|i| vec![(i + 1) % 5]).collect();
        assert!((perron_of_lists(&cycle, 1e-12, true).unwrap() - 1.0).abs() < 1e-12);
        // The path 3 – 0 – 2 – 1 has period 2 and spectral radius 2 cos(π/5).
        let bip = vec![vec![2, 3], vec![2], vec![0, 1], vec![0]];
        let l = perron_of_lists(&bip, 1e-12, true).unwrap();
        assert!((l - 2.0 * (std::f64::consts::PI / 5.0).cos()).abs() < 1e-10);
    }
}

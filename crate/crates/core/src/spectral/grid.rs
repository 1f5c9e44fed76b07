use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::error::{CoreError, Result};

pub(crate) struct Plans {
    pub(crate) forward: Arc<dyn Fft<f64>>,
    pub(crate) inverse: Arc<dyn Fft<f64>>,
    pub(crate) padded_len: usize,
    pub(crate) padded_forward: Arc<dyn Fft<f64>>,
    pub(crate) padded_inverse: Arc<dyn Fft<f64>>,
}

/// Uniform collocation grid on the periodic circle of length 2π.
///
/// Collocation points are `x_j = 2πj/N`, `j = 0..N`. Wavenumbers run over
/// `-N/2+1 ..= N/2`; the Nyquist wavenumber `N/2` carries a real cosine
/// amplitude and is kept only so that sampling round-trips, every evolved
/// field has it at zero.
///
/// Cloning is cheap: FFT plans are shared.
#[derive(Clone)]
pub struct Grid {
    n: usize,
    plans: Arc<Plans>,
}

impl Grid {
    pub fn new(n_modes: usize) -> Result<Self> {
        if n_modes < 4 || n_modes % 2 != 0 {
            return Err(CoreError::Config(format!(
                "n_modes must be an even integer >= 4, got {n_modes}"
            )));
        }
        let padded_len = 3 * n_modes / 2;
        let mut planner = FftPlanner::new();
        let plans = Plans {
            forward: planner.plan_fft_forward(n_modes),
            inverse: planner.plan_fft_inverse(n_modes),
            padded_len,
            padded_forward: planner.plan_fft_forward(padded_len),
            padded_inverse: planner.plan_fft_inverse(padded_len),
        };
        Ok(Self {
            n: n_modes,
            plans: Arc::new(plans),
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n
    }

    /// Nyquist wavenumber `N/2`.
    pub fn nyquist(&self) -> i64 {
        (self.n / 2) as i64
    }

    /// Largest wavenumber that participates in the dynamics (`N/2 - 1`).
    pub fn k_max(&self) -> i64 {
        self.nyquist() - 1
    }

    pub fn contains(&self, k: i64) -> bool {
        k > -self.nyquist() && k <= self.nyquist()
    }

    /// Storage slot of wavenumber `k` (FFT ordering).
    pub fn index(&self, k: i64) -> usize {
        debug_assert!(self.contains(k), "wavenumber {k} outside grid of {} modes", self.n);
        k.rem_euclid(self.n as i64) as usize
    }

    /// Wavenumber stored in slot `idx`.
    pub fn wavenumber(&self, idx: usize) -> i64 {
        if idx <= self.n / 2 {
            idx as i64
        } else {
            idx as i64 - self.n as i64
        }
    }

    /// All wavenumbers in storage order.
    pub fn wavenumbers(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.n).map(move |i| self.wavenumber(i))
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n)
            .map(|j| 2.0 * PI * j as f64 / self.n as f64)
            .collect()
    }

    pub(crate) fn plans(&self) -> &Plans {
        &self.plans
    }

    pub(crate) fn check_same(&self, other: &Grid) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(CoreError::GridMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

impl Eq for Grid {}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid").field("n_modes", &self.n).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_odd_and_tiny_grids() {
        assert!(Grid::new(2).is_err());
        assert!(Grid::new(7).is_err());
        assert!(Grid::new(0).is_err());
        assert!(Grid::new(4).is_ok());
    }

    #[test]
    fn wavenumber_layout() {
        let g = Grid::new(8).unwrap();
        let ks: Vec<i64> = g.wavenumbers().collect();
        assert_eq!(ks, vec![0, 1, 2, 3, 4, -3, -2, -1]);
        for k in -3..=4 {
            assert_eq!(g.wavenumber(g.index(k)), k);
        }
        assert_eq!(g.k_max(), 3);
        assert!(!g.contains(-4));
    }
}

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Polar sampling grid on the closed disk `|z| <= r_cap`.
///
/// Angles are `2 pi j / n_angles` starting at 0. Radii are
/// `r_cap * sin(pi k / (2 (n_radii - 1)))`, which includes 0 and `r_cap`,
/// clusters near the cap, and nests when `n_radii - 1` doubles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub n_angles: usize,
    pub n_radii: usize,
    pub r_cap: f64,
    pub refinement_iters: usize,
}

impl GridSpec {
    pub fn new(n_angles: usize, n_radii: usize, r_cap: f64, refinement_iters: usize) -> Self {
        Self {
            n_angles,
            n_radii,
            r_cap,
            refinement_iters,
        }
    }

    /// 256 angles x 128 radii, used for class-membership evidence.
    pub fn membership_default() -> Self {
        Self::new(256, 128, 0.95, 0)
    }

    /// Default for norm estimation up to the given cap.
    pub fn norm_default(r_cap: f64) -> Self {
        Self::new(256, 129, r_cap, 24)
    }

    pub fn validate(&self, backend_cap: f64) -> Result<()> {
        if self.n_angles == 0 || self.n_radii == 0 {
            return Err(Error::InvalidGrid("grid needs at least one angle and one radius".into()));
        }
        if !(self.r_cap > 0.0 && self.r_cap < 1.0) {
            return Err(Error::InvalidGrid(format!("r_cap {} not in (0, 1)", self.r_cap)));
        }
        if self.r_cap > backend_cap {
            return Err(Error::InvalidGrid(format!(
                "r_cap {} exceeds the evaluator cap {}",
                self.r_cap, backend_cap
            )));
        }
        Ok(())
    }

    pub fn angle(&self, j: usize) -> f64 {
        TAU * j as f64 / self.n_angles as f64
    }

    pub fn radius(&self, k: usize) -> f64 {
        if self.n_radii == 1 {
            return self.r_cap;
        }
        if k + 1 == self.n_radii {
            return self.r_cap;
        }
        self.r_cap * (FRAC_PI_2 * k as f64 / (self.n_radii - 1) as f64).sin()
    }

    pub fn radii(&self) -> Vec<f64> {
        (0..self.n_radii).map(|k| self.radius(k)).collect()
    }

    pub fn point(&self, j: usize, k: usize) -> Complex64 {
        Complex64::from_polar(self.radius(k), self.angle(j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radii_span_and_cluster() {
        let g = GridSpec::new(8, 9, 0.9, 0);
        let r = g.radii();
        assert_eq!(r[0], 0.0);
        assert_eq!(r[8], 0.9);
        assert!(r.windows(2).all(|w| w[0] < w[1]));
        assert!(r[8] - r[7] < r[1] - r[0]);
    }

    #[test]
    fn radii_nest_when_doubled() {
        let coarse = GridSpec::new(4, 9, 0.8, 0);
        let fine = GridSpec::new(8, 17, 0.8, 0);
        for k in 0..9 {
            assert!((coarse.radius(k) - fine.radius(2 * k)).abs() < 1e-15);
            assert!((coarse.angle(k % 4) - fine.angle(2 * (k % 4))).abs() < 1e-15);
        }
    }

    #[test]
    fn validation() {
        assert!(GridSpec::new(0, 4, 0.5, 0).validate(0.999).is_err());
        assert!(GridSpec::new(4, 4, 1.0, 0).validate(0.999).is_err());
        assert!(GridSpec::new(4, 4, 0.9995, 0).validate(0.999).is_err());
        assert!(GridSpec::new(4, 4, 0.999, 0).validate(0.999).is_ok());
    }
}

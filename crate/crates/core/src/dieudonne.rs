//! Brute-force check of the pointwise Schwarzian bound.
//!
//! At a fixed `z0`, the admissible pairs `(omega(z0), omega'(z0))` over all
//! Schwarz functions are exactly `|w| <= |z0|` together with `omega'(z0)` in
//! the closed disk of Dieudonné's lemma. Sweeping that region and evaluating
//! `S_f(z0)` through the subordination formula gives an independent estimate
//! of `sup |S_f(z0)|` over the class.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bounds::{g_profile, h_gate, pointwise_bound, s0, ClassParams, PointwiseBound};
use crate::error::{Error, Result};
use crate::schwarzian::schwarzian_from_omega_raw;

/// Center `w / z0` and radius `(|z0|^2 - |w|^2) / (|z0| (1 - |z0|^2))` of the
/// region of values of `omega'(z0)` given `omega(z0) = w`.
pub fn dieudonne_disk(z0: Complex64, w: Complex64) -> Result<(Complex64, f64)> {
    let r = z0.norm();
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InadmissibleOmegaValue(format!(
            "z0 = {z0} must satisfy 0 < |z0| < 1"
        )));
    }
    let m = w.norm();
    if m > r * (1.0 + 1e-12) {
        return Err(Error::InadmissibleOmegaValue(format!(
            "|w| = {m} exceeds |z0| = {r}"
        )));
    }
    Ok((w / z0, ((r * r - m * m) / (r * (1.0 - r * r))).max(0.0)))
}

/// Resolution of the `(|w|, arg w, arg omega')` sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepSpec {
    /// Points in `|w| in [0, |z0|]`, endpoints included.
    pub moduli: usize,
    /// Phases of `w`, starting at 0.
    pub w_phases: usize,
    /// Phases of `omega'` on the Dieudonné circle, starting at 0.
    pub wprime_phases: usize,
}

impl SweepSpec {
    pub fn new(moduli: usize, w_phases: usize, wprime_phases: usize) -> Self {
        Self {
            moduli,
            w_phases,
            wprime_phases,
        }
    }

    pub fn cube(n: usize) -> Self {
        Self::new(n, n, n)
    }
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self::cube(256)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BruteForceMax {
    pub z0: Complex64,
    pub value: f64,
    /// Maximizing `omega(z0)`.
    pub w: Complex64,
    /// Maximizing `omega'(z0)`.
    pub wprime: Complex64,
    /// Distance of `wprime` from the Dieudonné center, over the radius
    /// (1 on the boundary circle; 0/0 is reported as 1).
    pub boundary_fraction: f64,
    pub bound: PointwiseBound,
}

impl BruteForceMax {
    /// `value / bound`.
    pub fn ratio(&self) -> f64 {
        if self.bound.value == 0.0 {
            return 0.0;
        }
        self.value / self.bound.value
    }
}

/// Maximizes `|S_f(z0)|` over a sweep of admissible Schwarz-function data at
/// a real `z0 in (0, 1)`.
pub fn brute_force_pointwise_max(
    z0: f64,
    p: &ClassParams,
    sweep: &SweepSpec,
) -> Result<BruteForceMax> {
    if !(z0 > 0.0 && z0 < 1.0) {
        return Err(Error::ParamOutOfRange(format!("z0 = {z0} not in (0, 1)")));
    }
    brute_force_pointwise_max_at(Complex64::new(z0, 0.0), p, sweep)
}

/// Sweep at an arbitrary `z0`. For non-real `z0` sharpness is not claimed;
/// the observed gap to the bound is just data.
pub fn brute_force_pointwise_max_at(
    z0: Complex64,
    p: &ClassParams,
    sweep: &SweepSpec,
) -> Result<BruteForceMax> {
    let r = z0.norm();
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::ParamOutOfRange(format!("|z0| = {r} not in (0, 1)")));
    }
    if sweep.moduli < 2 || sweep.w_phases == 0 || sweep.wprime_phases == 0 {
        return Err(Error::ParamOutOfRange(format!("degenerate sweep {sweep:?}")));
    }
    let bound = pointwise_bound(p, r)?;
    let a = p.a();
    let circle: Vec<Complex64> = (0..sweep.wprime_phases)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / sweep.wprime_phases as f64))
        .collect();
    let w_dirs: Vec<Complex64> = (0..sweep.w_phases)
        .map(|j| Complex64::from_polar(1.0, TAU * j as f64 / sweep.w_phases as f64))
        .collect();

    // (value, w, wprime, fraction), best per modulus
    type Cell = (f64, Complex64, Complex64, f64);
    let per_modulus: Vec<Result<Option<Cell>>> = (0..sweep.moduli)
        .into_par_iter()
        .map(|i| {
            let m = (r * i as f64 / (sweep.moduli - 1) as f64).min(r);
            let mut best: Option<Cell> = None;
            for &dir in &w_dirs {
                let w = dir * m;
                let (center, radius) = dieudonne_disk(z0, w)?;
                // The expression is affine in omega', so its modulus over the
                // disk peaks on the boundary circle.
                let ring: &[Complex64] = if radius > 0.0 { &circle } else { &circle[..1] };
                for &e in ring {
                    let wp = center + e * radius;
                    let s = match schwarzian_from_omega_raw(z0, w, wp, a) {
                        Ok(s) => s,
                        Err(Error::OmegaHitsOne(_)) => continue,
                        Err(e) => return Err(e),
                    };
                    let v = s.norm();
                    if best.is_none_or(|b| v > b.0) {
                        best = Some((v, w, wp, 1.0));
                    }
                }
            }
            Ok(best)
        })
        .collect();

    let mut best: Option<Cell> = None;
    for cell in per_modulus {
        if let Some(c) = cell? {
            if best.is_none_or(|b| c.0 > b.0) {
                best = Some(c);
            }
        }
    }
    let (value, w, wprime, _) = best.unwrap_or((0.0, Complex64::default(), Complex64::default(), 1.0));
    let (center, radius) = dieudonne_disk(z0, w)?;
    let boundary_fraction = if radius > 0.0 {
        (wprime - center).norm() / radius
    } else {
        1.0
    };
    Ok(BruteForceMax {
        z0,
        value,
        w,
        wprime,
        boundary_fraction,
        bound,
    })
}

/// Where the inner profile `g` on `[0, r]` should peak.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InnerMaxKind {
    /// `h(r) > 0`: an interior critical point at `s0(r)`.
    Interior { s0: f64 },
    /// `h(r) <= 0`: `g` is increasing, so the maximum is at `s = r`.
    Endpoint,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InnerMaxReport {
    pub r: f64,
    pub grid_points: usize,
    pub grid_argmax: f64,
    pub grid_max: f64,
    pub expected: InnerMaxKind,
    /// `|grid_argmax - s0|` (interior) or `r - grid_argmax` (endpoint).
    pub deviation: f64,
    /// Grid spacing `r / (n - 1)`.
    pub resolution: f64,
    /// Strictly increasing before the argmax and strictly decreasing after,
    /// on the discrete grid.
    pub unimodal: bool,
    pub agrees: bool,
}

/// Compares the brute-force argmax of `g` on an `n`-point grid of `[0, r]`
/// with the analytic classification.
pub fn verify_inner_max(p: &ClassParams, r: f64, n: usize) -> Result<InnerMaxReport> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::ParamOutOfRange(format!("r = {r} not in (0, 1)")));
    }
    if n < 2 {
        return Err(Error::ParamOutOfRange(format!("need n >= 2 grid points, got {n}")));
    }
    let resolution = r / (n - 1) as f64;
    let values: Vec<f64> = (0..n)
        .map(|i| g_profile(p, r, r * i as f64 / (n - 1) as f64))
        .collect();
    let (idx, &grid_max) = values
        .iter()
        .enumerate()
        .fold(None, |acc: Option<(usize, &f64)>, (i, v)| match acc {
            Some((_, b)) if *b >= *v => acc,
            _ => Some((i, v)),
        })
        .expect("n >= 2");
    let grid_argmax = r * idx as f64 / (n - 1) as f64;
    let unimodal = values[..=idx].windows(2).all(|w| w[1] > w[0])
        && values[idx..].windows(2).all(|w| w[1] < w[0]);

    let (expected, deviation) = if h_gate(p, r) > 0.0 {
        let s = s0(p, r)?;
        (InnerMaxKind::Interior { s0: s }, (grid_argmax - s).abs())
    } else {
        (InnerMaxKind::Endpoint, r - grid_argmax)
    };
    let agrees = deviation <= resolution && unimodal;
    Ok(InnerMaxReport {
        r,
        grid_points: n,
        grid_argmax,
        grid_max,
        expected,
        deviation,
        resolution,
        unimodal,
        agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Branch;
    use std::f64::consts::FRAC_PI_4;

    fn params(alpha: f64, beta: f64) -> ClassParams {
        ClassParams::new(alpha, beta).unwrap()
    }

    #[test]
    fn disk_examples() {
        let z0 = Complex64::new(0.5, 0.0);
        let (c, r) = dieudonne_disk(z0, Complex64::new(0.0, 0.5)).unwrap();
        assert_eq!(r, 0.0);
        assert!((c - Complex64::new(0.0, 1.0)).norm() < 1e-15);

        let (c, r) = dieudonne_disk(z0, Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(c, Complex64::new(0.0, 0.0));
        assert!((r - 2.0 / 3.0).abs() < 1e-15);

        let (c, r) = dieudonne_disk(z0, Complex64::new(0.25, 0.0)).unwrap();
        assert!((c - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((r - 0.5).abs() < 1e-15);

        assert!(matches!(
            dieudonne_disk(z0, Complex64::new(0.6, 0.0)),
            Err(Error::InadmissibleOmegaValue(_))
        ));
    }

    #[test]
    fn brute_force_approaches_interior_bound() {
        let p = params(0.0, 0.0);
        let res = brute_force_pointwise_max(0.5, &p, &SweepSpec::cube(64)).unwrap();
        let bound = 32.0 / 9.0;
        assert!((res.bound.value - bound).abs() < 1e-12);
        assert!(res.value <= bound + 1e-9);
        assert!(res.ratio() > 0.995, "ratio {}", res.ratio());
        assert!((res.w.re - 0.25).abs() <= 0.5 / 63.0 + 1e-12);
        assert!((res.boundary_fraction - 1.0).abs() < 1e-12);
    }

    #[test]
    fn brute_force_approaches_boundary_bound() {
        let p = params(FRAC_PI_4, 0.0);
        let res = brute_force_pointwise_max(0.9, &p, &SweepSpec::cube(64)).unwrap();
        assert_eq!(res.bound.branch, Branch::Boundary);
        assert!((res.bound.value - 100.0).abs() < 1e-9);
        assert!(res.value <= 100.0 + 1e-9);
        assert!(res.ratio() > 0.995, "ratio {}", res.ratio());
    }

    #[test]
    fn single_point_sweep_is_zero() {
        let p = params(0.4, 0.2);
        // moduli = 2 hits w = 0 and |w| = z0; restrict to the w = 0 cell via
        // the disk: omega' = 0 is the center, and S = 0 there.
        let z0 = Complex64::new(0.5, 0.0);
        let s = schwarzian_from_omega_raw(z0, Complex64::default(), Complex64::default(), p.a())
            .unwrap();
        assert_eq!(s.norm(), 0.0);
        let res = brute_force_pointwise_max(0.5, &p, &SweepSpec::new(2, 1, 1)).unwrap();
        assert!(res.value <= res.bound.value + 1e-9);
    }

    #[test]
    fn non_real_points_stay_below_the_bound() {
        let p = params(0.5, 0.3);
        let z0 = Complex64::from_polar(0.6, 1.1);
        let res = brute_force_pointwise_max_at(z0, &p, &SweepSpec::cube(48)).unwrap();
        assert!(res.value <= res.bound.value + 1e-9);
    }

    #[test]
    fn inner_max_examples() {
        let rep = verify_inner_max(&params(0.0, 0.0), 0.5, 100_001).unwrap();
        assert_eq!(rep.expected, InnerMaxKind::Interior { s0: 0.25 });
        assert!((rep.grid_argmax - 0.25).abs() <= rep.resolution);
        assert!(rep.agrees);

        let p = params(FRAC_PI_4, 0.0);
        let rep = verify_inner_max(&p, 0.9, 10_001).unwrap();
        assert_eq!(rep.expected, InnerMaxKind::Endpoint);
        assert_eq!(rep.grid_argmax, 0.9);
        assert!(rep.agrees);

        let rep = verify_inner_max(&params(0.3, 0.3), 1e-6, 1001).unwrap();
        assert!(rep.grid_argmax < 1e-6);
        assert!(rep.agrees);
    }
}

//! Pre-Schwarzian and Schwarzian derivatives, as series and pointwise from
//! Schwarz-function data, plus grid evidence of class membership.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bounds::ClassParams;
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::series::{ComplexSeries, DEFAULT_EVAL_CAP};

/// Margins above this floor count as numerical evidence of membership.
pub const MEMBERSHIP_FLOOR: f64 = -1e-9;

const ADMISSIBILITY_SLACK: f64 = 1e-12;
const OMEGA_ONE_TOL: f64 = 1e-14;

/// Values `w = omega(z)` and `wprime = omega'(z)` of a Schwarz function at a
/// point `z != 0` of the disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OmegaPointData {
    z: Complex64,
    w: Complex64,
    wprime: Complex64,
}

impl OmegaPointData {
    /// Checks `|w| <= |z|` and that `wprime` lies in the Dieudonné disk
    /// `|wprime - w/z| <= (|z|^2 - |w|^2) / (|z| (1 - |z|^2))`, both up to
    /// a `1e-12` relative slack.
    pub fn new(z: Complex64, w: Complex64, wprime: Complex64) -> Result<Self> {
        let rz = z.norm();
        if !(rz > 0.0 && rz < 1.0) {
            return Err(Error::InadmissibleOmegaValue(format!(
                "z = {z} must satisfy 0 < |z| < 1"
            )));
        }
        let rw = w.norm();
        if rw > rz * (1.0 + ADMISSIBILITY_SLACK) {
            return Err(Error::InadmissibleOmegaValue(format!(
                "|omega(z)| = {rw} exceeds |z| = {rz}"
            )));
        }
        let radius = ((rz * rz - rw * rw) / (rz * (1.0 - rz * rz))).max(0.0);
        let dist = (wprime - w / z).norm();
        if dist > radius + ADMISSIBILITY_SLACK * (1.0 + radius) {
            return Err(Error::InadmissibleOmegaValue(format!(
                "omega'(z) is {dist} from the disk center, radius is {radius}"
            )));
        }
        Ok(Self { z, w, wprime })
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn w(&self) -> Complex64 {
        self.w
    }

    pub fn wprime(&self) -> Complex64 {
        self.wprime
    }
}

fn first_derivative_nonzero(f: &ComplexSeries) -> Result<()> {
    if f.order() < 1 || f.coeff(1).norm() == 0.0 {
        return Err(Error::NotLocallyUnivalentAtOrigin);
    }
    Ok(())
}

/// `P_f = f'' / f'`, of order `N - 2`.
pub fn preschwarzian_series(f: &ComplexSeries) -> Result<ComplexSeries> {
    first_derivative_nonzero(f)?;
    let d1 = f.derivative();
    let d2 = d1.derivative();
    d2.div(&d1).map_err(|_| Error::NotLocallyUnivalentAtOrigin)
}

/// `S_f = P_f' - P_f^2 / 2`, of order `N - 3`.
pub fn schwarzian_series(f: &ComplexSeries) -> Result<ComplexSeries> {
    Ok(schwarzian_from_preschwarzian(&preschwarzian_series(f)?))
}

pub fn schwarzian_from_preschwarzian(pre: &ComplexSeries) -> ComplexSeries {
    let dp = pre.derivative();
    let sq = pre.mul(pre).scale(Complex64::new(0.5, 0.0));
    dp.sub(&sq)
}

/// `S_f(z)` for `1 + z f''/f' = (1 + A w)/(1 - w)`:
///
/// `(A+1) [ (w' - w/z) / (z (1-w)^2) - (A-1) w^2 / (2 z^2 (1-w)^2) ]`.
pub fn schwarzian_from_omega(pt: &OmegaPointData, p: &ClassParams) -> Result<Complex64> {
    schwarzian_from_omega_raw(pt.z, pt.w, pt.wprime, p.a())
}

/// Same as [`schwarzian_from_omega`] without the admissibility checks.
#[inline]
pub fn schwarzian_from_omega_raw(
    z: Complex64,
    w: Complex64,
    wprime: Complex64,
    a: Complex64,
) -> Result<Complex64> {
    let one_minus = 1.0 - w;
    if one_minus.norm() < OMEGA_ONE_TOL {
        return Err(Error::OmegaHitsOne(w));
    }
    let q = one_minus * one_minus;
    let first = (wprime - w / z) / (z * q);
    let second = (a - 1.0) * w * w / (2.0 * z * z * q);
    Ok((a + 1.0) * (first - second))
}

/// `P_f(z) = (A + 1) w / (z (1 - w))`.
pub fn preschwarzian_from_omega(
    z: Complex64,
    w: Complex64,
    p: &ClassParams,
) -> Result<Complex64> {
    let one_minus = 1.0 - w;
    if one_minus.norm() < OMEGA_ONE_TOL {
        return Err(Error::OmegaHitsOne(w));
    }
    Ok((p.a() + 1.0) * w / (z * one_minus))
}

/// Smallest value of `Re{e^{i alpha} (1 + z P_f(z))} - beta cos alpha` over
/// the grid. Nonnegative values (down to [`MEMBERSHIP_FLOOR`]) are evidence,
/// not proof, that `f` belongs to the class.
pub fn membership_margin(f: &ComplexSeries, p: &ClassParams, grid: &GridSpec) -> Result<f64> {
    grid.validate(DEFAULT_EVAL_CAP)
        .map_err(|_| Error::EvalRadiusExceeded {
            radius: grid.r_cap,
            cap: DEFAULT_EVAL_CAP,
        })?;
    let pre = preschwarzian_series(f)?;
    let rot = Complex64::from_polar(1.0, p.alpha());
    let floor = p.beta() * p.alpha().cos();
    let radii = grid.radii();
    let per_angle: Vec<f64> = (0..grid.n_angles)
        .into_par_iter()
        .map(|j| {
            let (s, c) = grid.angle(j).sin_cos();
            radii
                .iter()
                .map(|&r| {
                    let z = Complex64::new(r * c, r * s);
                    (rot * (1.0 + z * pre.horner(z))).re - floor
                })
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    Ok(per_angle.into_iter().fold(f64::INFINITY, f64::min))
}

pub fn is_member_evidence(margin: f64) -> bool {
    margin >= MEMBERSHIP_FLOOR
}

//! Hyperbolic sup-norm estimation on the unit disk.
//!
//! `||P_f|| = sup (1 - |z|^2) |P_f(z)|` and `||S_f|| = sup (1 - |z|^2)^2 |S_f(z)|`
//! are estimated by a coarse polar grid followed by local refinement. The
//! reported `value` is always a weighted modulus actually observed at
//! `argmax`, so it is a lower bound on the supremum. For closed-form
//! evaluators whose supremum is only approached as `|z| -> 1`, a one-sided
//! Richardson step in `1 - r` is reported separately as `extrapolated`.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::series::{ComplexSeries, DEFAULT_EVAL_CAP};

/// Radius cap for evaluators backed by closed forms.
pub const CLOSED_FORM_CAP: f64 = 1.0 - 1e-6;

const GOLDEN_STEPS: usize = 40;

/// A complex-valued function on (part of) the unit disk.
pub trait DiskFunction: Sync {
    fn value(&self, z: Complex64) -> Result<Complex64>;

    /// Largest modulus at which [`DiskFunction::value`] may be called.
    fn radius_cap(&self) -> f64;

    /// Tail heuristic for truncated backends.
    fn truncation_note(&self, _r: f64) -> Option<f64> {
        None
    }

    /// Whether the function is exact up to the cap, so that extrapolating
    /// the weighted modulus toward `|z| = 1` is meaningful.
    fn supports_boundary_extrapolation(&self) -> bool {
        false
    }
}

/// Truncated series evaluated by Horner's rule up to [`DEFAULT_EVAL_CAP`].
#[derive(Clone, Debug)]
pub struct SeriesFunction {
    series: ComplexSeries,
    cap: f64,
}

impl SeriesFunction {
    pub fn new(series: ComplexSeries) -> Self {
        Self {
            series,
            cap: DEFAULT_EVAL_CAP,
        }
    }

    pub fn series(&self) -> &ComplexSeries {
        &self.series
    }
}

impl DiskFunction for SeriesFunction {
    fn value(&self, z: Complex64) -> Result<Complex64> {
        self.series.eval_capped(z, self.cap)
    }

    fn radius_cap(&self) -> f64 {
        self.cap
    }

    fn truncation_note(&self, r: f64) -> Option<f64> {
        Some(self.series.truncation_note(r))
    }
}

/// A closure evaluated exactly, usable up to `cap` (default [`CLOSED_FORM_CAP`]).
pub struct ClosedForm<F> {
    f: F,
    cap: f64,
}

impl<F> ClosedForm<F>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    pub fn new(f: F) -> Self {
        Self {
            f,
            cap: CLOSED_FORM_CAP,
        }
    }

    pub fn with_cap(f: F, cap: f64) -> Self {
        Self { f, cap }
    }
}

impl<F> DiskFunction for ClosedForm<F>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    fn value(&self, z: Complex64) -> Result<Complex64> {
        (self.f)(z)
    }

    fn radius_cap(&self) -> f64 {
        self.cap
    }

    fn supports_boundary_extrapolation(&self) -> bool {
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightPower {
    /// `(1 - |z|^2)`, for the pre-Schwarzian norm.
    One,
    /// `(1 - |z|^2)^2`, for the Schwarzian norm.
    Two,
}

impl WeightPower {
    pub fn exponent(self) -> i32 {
        match self {
            WeightPower::One => 1,
            WeightPower::Two => 2,
        }
    }

    pub fn weight(self, z: Complex64) -> f64 {
        (1.0 - z.norm_sqr()).powi(self.exponent())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormEstimate {
    /// Largest weighted modulus observed; a lower bound on the supremum.
    pub value: f64,
    pub argmax: Complex64,
    pub weight_power: WeightPower,
    pub grid: GridSpec,
    pub refined: bool,
    /// Tail heuristic of a series backend at `|argmax|`.
    pub truncation_note: Option<f64>,
    /// Richardson limit `2 w(1 - e) - w(1 - 2e)`, `e = 1 - r_cap`, when the
    /// maximum sits on the cap of a closed-form evaluator.
    pub extrapolated: Option<f64>,
}

impl NormEstimate {
    /// The extrapolated limit when available, otherwise the observed value.
    pub fn best(&self) -> f64 {
        self.extrapolated.unwrap_or(self.value)
    }
}

/// Weighted modulus `(1 - |z|^2)^k |f(z)|`, wrapping evaluator errors.
pub fn weighted_modulus(f: &dyn DiskFunction, weight: WeightPower, z: Complex64) -> Result<f64> {
    let v = f.value(z).map_err(|e| Error::EvaluatorFailure {
        z,
        source: Box::new(e),
    })?;
    Ok(weight.weight(z) * v.norm())
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    value: f64,
    r: f64,
    theta: f64,
}

impl Candidate {
    /// Larger value first; ties go to the smaller radius, then smaller angle.
    fn beats(&self, other: &Candidate) -> bool {
        match self.value.partial_cmp(&other.value) {
            Some(Ordering::Greater) => true,
            Some(Ordering::Less) => false,
            _ => (self.r, self.theta) < (other.r, other.theta),
        }
    }

    fn point(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }
}

fn probe(f: &dyn DiskFunction, weight: WeightPower, r: f64, theta: f64) -> Result<Candidate> {
    let value = weighted_modulus(f, weight, Complex64::from_polar(r, theta))?;
    Ok(Candidate { value, r, theta })
}

fn golden_section(
    f: &dyn DiskFunction,
    weight: WeightPower,
    theta: f64,
    lo: f64,
    hi: f64,
) -> Result<Candidate> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut best = probe(f, weight, lo, theta)?;
    let end = probe(f, weight, hi, theta)?;
    if end.beats(&best) {
        best = end;
    }
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut c1 = probe(f, weight, x1, theta)?;
    let mut c2 = probe(f, weight, x2, theta)?;
    for _ in 0..GOLDEN_STEPS {
        if c1.value >= c2.value {
            b = x2;
            x2 = x1;
            c2 = c1;
            x1 = b - inv_phi * (b - a);
            c1 = probe(f, weight, x1, theta)?;
        } else {
            a = x1;
            x1 = x2;
            c1 = c2;
            x2 = a + inv_phi * (b - a);
            c2 = probe(f, weight, x2, theta)?;
        }
        for c in [c1, c2] {
            if c.beats(&best) {
                best = c;
            }
        }
    }
    Ok(best)
}

/// Grid search plus `grid.refinement_iters` rounds of local refinement.
///
/// Each round runs a golden-section search in the radius (bracketed by the
/// neighbouring grid radii, then by a bracket that halves every round) at the
/// best angle, then probes the two angles half an angular step away. Only
/// strict improvements are accepted, so the result is deterministic and never
/// decreases with more rounds.
pub fn estimate_norm(
    f: &dyn DiskFunction,
    weight: WeightPower,
    grid: &GridSpec,
) -> Result<NormEstimate> {
    grid.validate(f.radius_cap())?;
    let radii = grid.radii();

    let per_angle: Vec<Result<Candidate>> = (0..grid.n_angles)
        .into_par_iter()
        .map(|j| {
            let theta = grid.angle(j);
            let mut best: Option<Candidate> = None;
            for &r in &radii {
                let c = probe(f, weight, r, theta)?;
                if best.is_none_or(|b| c.beats(&b)) {
                    best = Some(c);
                }
            }
            Ok(best.expect("at least one radius"))
        })
        .collect();

    let mut best: Option<Candidate> = None;
    for c in per_angle {
        let c = c?;
        if best.is_none_or(|b| c.beats(&b)) {
            best = Some(c);
        }
    }
    let mut best = best.expect("at least one angle");

    let k = radii
        .iter()
        .position(|&r| r == best.r)
        .expect("coarse maximizer is a grid radius");
    let mut lo = if k == 0 { 0.0 } else { radii[k - 1] };
    let mut hi = if k + 1 < radii.len() { radii[k + 1] } else { grid.r_cap };
    let mut dtheta = TAU / grid.n_angles as f64;

    for _ in 0..grid.refinement_iters {
        let c = golden_section(f, weight, best.theta, lo, hi)?;
        if c.beats(&best) {
            best = c;
        }
        for theta in [best.theta - dtheta / 2.0, best.theta + dtheta / 2.0] {
            let c = probe(f, weight, best.r, theta.rem_euclid(TAU))?;
            if c.beats(&best) {
                best = c;
            }
        }
        dtheta /= 2.0;
        let half = (hi - lo) / 4.0;
        lo = (best.r - half).max(0.0);
        hi = (best.r + half).min(grid.r_cap);
    }

    let extrapolated = if f.supports_boundary_extrapolation() && grid.r_cap - best.r <= 1e-8 {
        let e = 1.0 - grid.r_cap;
        let w1 = weighted_modulus(f, weight, Complex64::from_polar(1.0 - e, best.theta))?;
        let w2 = weighted_modulus(f, weight, Complex64::from_polar(1.0 - 2.0 * e, best.theta))?;
        (w1 >= w2).then_some(2.0 * w1 - w2)
    } else {
        None
    };

    Ok(NormEstimate {
        value: best.value,
        argmax: best.point(),
        weight_power: weight,
        grid: *grid,
        refined: grid.refinement_iters > 0,
        truncation_note: f.truncation_note(best.r),
        extrapolated,
    })
}

/// Weighted modulus on the ray at `axis_angle`, `n` equally spaced radii in
/// `[0, cap]` where `cap` is the evaluator's radius cap.
pub fn radial_profile(
    f: &dyn DiskFunction,
    weight: WeightPower,
    axis_angle: f64,
    n: usize,
) -> Result<Vec<(f64, f64)>> {
    if n < 2 {
        return Err(Error::InvalidGrid(format!("radial profile needs n >= 2, got {n}")));
    }
    let cap = f.radius_cap();
    (0..n)
        .map(|k| {
            let r = if k + 1 == n {
                cap
            } else {
                cap * k as f64 / (n - 1) as f64
            };
            weighted_modulus(f, weight, Complex64::from_polar(r, axis_angle)).map(|v| (r, v))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::ClassParams;
    use crate::extremal::{closed_form_p_f0, closed_form_s_f0};

    fn params(alpha: f64, beta: f64) -> ClassParams {
        ClassParams::new(alpha, beta).unwrap()
    }

    #[test]
    fn zero_function_has_zero_norm() {
        let zero = ClosedForm::new(|_| Ok(Complex64::new(0.0, 0.0)));
        let est = estimate_norm(&zero, WeightPower::Two, &GridSpec::norm_default(0.99)).unwrap();
        assert_eq!(est.value, 0.0);
        assert_eq!(est.argmax, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn half_plane_schwarzian_norm() {
        let p = params(0.0, 0.75);
        let f = ClosedForm::new(|z| Ok(closed_form_s_f0(z, &p)));
        let est = estimate_norm(&f, WeightPower::Two, &GridSpec::norm_default(CLOSED_FORM_CAP))
            .unwrap();
        assert!(est.value <= 1.5);
        assert!((est.best() - 1.5).abs() <= 1e-6 * 1.5, "{est:?}");
        assert!(est.argmax.im.abs() < 1e-12 && est.argmax.re > 0.0);
    }

    #[test]
    fn half_plane_preschwarzian_norm() {
        let p = params(0.0, 0.0);
        let f = ClosedForm::new(|z| Ok(closed_form_p_f0(z, &p)));
        let est = estimate_norm(&f, WeightPower::One, &GridSpec::norm_default(CLOSED_FORM_CAP))
            .unwrap();
        assert!((est.value - 4.0).abs() < 1e-5);
        assert!((est.best() - 4.0).abs() < 1e-6, "{est:?}");
    }

    #[test]
    fn refinement_finds_interior_maximum() {
        // (1 - |z|^2) |z| peaks at |z| = 1/sqrt(3) with value 2 / (3 sqrt 3)
        let f = ClosedForm::new(|z| Ok(z * Complex64::new(0.0, 1.0)));
        let coarse = GridSpec::new(16, 5, 0.99, 0);
        let est0 = estimate_norm(&f, WeightPower::One, &coarse).unwrap();
        let refined = GridSpec { refinement_iters: 10, ..coarse };
        let est = estimate_norm(&f, WeightPower::One, &refined).unwrap();
        let want = 2.0 / (3.0 * 3f64.sqrt());
        assert!(est.value >= est0.value);
        assert!((est.value - want).abs() < 1e-12);
        assert!((est.argmax.norm() - 1.0 / 3f64.sqrt()).abs() < 1e-6);
        assert!(est.extrapolated.is_none());
    }

    #[test]
    fn more_work_never_lowers_the_estimate() {
        let p = params(0.5, 0.4);
        let f = ClosedForm::with_cap(
            |z: Complex64| Ok(closed_form_s_f0(z, &p) * (1.0 + 0.3 * z * z)),
            0.99,
        );
        let mut prev = 0.0;
        for iters in 0..6 {
            let est = estimate_norm(&f, WeightPower::Two, &GridSpec::new(12, 9, 0.99, iters))
                .unwrap();
            assert!(est.value >= prev);
            prev = est.value;
        }
        let mut prev = 0.0;
        for (na, nr) in [(8, 5), (16, 9), (32, 17), (64, 33)] {
            let est = estimate_norm(&f, WeightPower::Two, &GridSpec::new(na, nr, 0.99, 0))
                .unwrap();
            assert!(est.value >= prev);
            prev = est.value;
        }
    }

    #[test]
    fn evaluator_failure_carries_the_point() {
        let f = ClosedForm::new(|z: Complex64| {
            if z.re > 0.5 {
                Err(Error::OmegaHitsOne(z))
            } else {
                Ok(z)
            }
        });
        let err = estimate_norm(&f, WeightPower::One, &GridSpec::new(4, 8, 0.9, 0)).unwrap_err();
        match err {
            Error::EvaluatorFailure { z, .. } => assert!(z.re > 0.5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn grid_beyond_cap_is_rejected() {
        let s = SeriesFunction::new(ComplexSeries::identity(4));
        let g = GridSpec::new(4, 4, 0.9999, 0);
        assert!(matches!(
            estimate_norm(&s, WeightPower::One, &g),
            Err(Error::InvalidGrid(_))
        ));
    }

    #[test]
    fn series_backend_reports_truncation_note() {
        let s = SeriesFunction::new(ComplexSeries::geometric(Complex64::new(1.0, 0.0), 64));
        let est = estimate_norm(&s, WeightPower::One, &GridSpec::new(8, 17, 0.9, 2)).unwrap();
        assert!(est.truncation_note.is_some());
        assert!(est.extrapolated.is_none());
    }

    #[test]
    fn radial_profile_examples() {
        let zero = ClosedForm::new(|_| Ok(Complex64::new(0.0, 0.0)));
        let prof = radial_profile(&zero, WeightPower::Two, 0.0, 11).unwrap();
        assert!(prof.iter().all(|&(_, v)| v == 0.0));

        let p = params(std::f64::consts::FRAC_PI_4, 0.0);
        let a = p.a();
        let scale = (a * a - 1.0).norm() / 2.0;
        let f = ClosedForm::new(|z| Ok(closed_form_s_f0(z, &p)));
        let prof = radial_profile(&f, WeightPower::Two, 0.0, 50).unwrap();
        for w in prof.windows(2) {
            assert!(w[1].1 > w[0].1);
        }
        for &(r, v) in &prof {
            assert!((v - scale * (1.0 + r).powi(2)).abs() < 1e-9);
        }

        let p0 = params(0.0, 0.0);
        let f = ClosedForm::new(|z| Ok(closed_form_p_f0(z, &p0)));
        let prof = radial_profile(&f, WeightPower::One, 0.0, 20).unwrap();
        for &(r, v) in &prof {
            assert!((v - 2.0 * (1.0 + r)).abs() < 1e-9);
        }
        assert!((prof.last().unwrap().1 - 4.0).abs() < 1e-5);
        assert!(radial_profile(&f, WeightPower::One, 0.0, 1).is_err());
    }
}

//! Parameter algebra of the generalized Robertson class and its closed-form
//! Schwarzian and pre-Schwarzian bounds.
//!
//! For `|alpha| < pi/2` and `0 <= beta < 1` the class is characterized by
//! `1 + z f''/f' ≺ (1 + A z) / (1 - z)` with
//! `A = e^{-i alpha} (e^{-i alpha} - 2 beta cos alpha)`. Everything here is
//! expressed through three scalars:
//!
//! * `|A + 1| = 2 (1 - beta) cos alpha`
//! * `|A - 1| = 2 sqrt(d)` with `d = sin^2 alpha + beta^2 cos^2 alpha`
//! * `lambda = (1 - sqrt d) / sqrt d`, the root of `h(t) = 2 - |A-1| (1 + t)`,
//!   which lies in `(0, 1)` exactly when `d > 1/4`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `d <= 1/4`: the interior formula holds on the whole disk.
    SmallD,
    /// `d > 1/4`: the bound switches branch at `|z| = lambda`.
    LargeD,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::SmallD => "SmallD",
            Regime::LargeD => "LargeD",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassParams {
    alpha: f64,
    beta: f64,
    a: Complex64,
    sqrt_d: f64,
    lambda: Option<f64>,
    regime: Regime,
}

impl ClassParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha.abs() >= FRAC_PI_2 {
            return Err(Error::ParamOutOfRange(format!(
                "alpha = {alpha} must satisfy |alpha| < pi/2"
            )));
        }
        if !beta.is_finite() || !(0.0..1.0).contains(&beta) {
            return Err(Error::ParamOutOfRange(format!(
                "beta = {beta} must lie in [0, 1)"
            )));
        }
        let (sin, cos) = alpha.sin_cos();
        let rot = Complex64::new(cos, -sin);
        let a = rot * (rot - 2.0 * beta * cos);
        // hypot avoids cancellation near d = 0
        let sqrt_d = sin.hypot(beta * cos);
        let regime = if sqrt_d <= 0.5 {
            Regime::SmallD
        } else {
            Regime::LargeD
        };
        let lambda = match regime {
            Regime::SmallD => None,
            Regime::LargeD => Some((1.0 - sqrt_d) / sqrt_d),
        };
        Ok(Self {
            alpha,
            beta,
            a,
            sqrt_d,
            lambda,
            regime,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The constant `A` of the subordinating half-plane map.
    pub fn a(&self) -> Complex64 {
        self.a
    }

    /// `d = sin^2 alpha + beta^2 cos^2 alpha`.
    pub fn d(&self) -> f64 {
        self.sqrt_d * self.sqrt_d
    }

    pub fn sqrt_d(&self) -> f64 {
        self.sqrt_d
    }

    pub fn lambda(&self) -> Option<f64> {
        self.lambda
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// `|A + 1| = 2 (1 - beta) cos alpha`.
    pub fn abs_a_plus_one(&self) -> f64 {
        2.0 * (1.0 - self.beta) * self.alpha.cos()
    }

    /// `|A - 1| = 2 sqrt(d)`.
    pub fn abs_a_minus_one(&self) -> f64 {
        2.0 * self.sqrt_d
    }

    /// `e^{i theta}` with `theta = Arg(A - 1)`, taken as 1 when `A = 1`.
    pub fn a_minus_one_phase(&self) -> Complex64 {
        let w = self.a - 1.0;
        let m = w.norm();
        if m <= 1e-15 {
            Complex64::new(1.0, 0.0)
        } else {
            w / m
        }
    }
}

/// Which right-hand side of the pointwise estimate applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Interior,
    Boundary,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointwiseBound {
    pub r: f64,
    pub value: f64,
    pub branch: Branch,
}

fn check_radius(r: f64) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::ParamOutOfRange(format!("radius {r} not in [0, 1)")));
    }
    Ok(())
}

/// `h(t) = 2 - |A-1| (1 + t)`; positive exactly when the critical point
/// `s0(t)` lies strictly below `t`.
pub fn h_gate(p: &ClassParams, t: f64) -> f64 {
    2.0 - p.abs_a_minus_one() * (1.0 + t)
}

/// Critical point `s0(r) = 2 r^2 / (2 - |A-1| (1 - r^2))` of the inner profile.
pub fn s0(p: &ClassParams, r: f64) -> Result<f64> {
    check_radius(r)?;
    let h = h_gate(p, r);
    if h <= 0.0 {
        return Err(Error::CriticalPointOutsideRange { r, h });
    }
    Ok(2.0 * r * r / (2.0 - p.abs_a_minus_one() * (1.0 - r * r)))
}

/// The inner profile
/// `g(s) = (2 r^2 - s^2 (2 - |A-1| (1 - r^2))) / (2 r^2 (1 - r^2) (1 - s)^2)`
/// for `0 <= s <= r < 1`. At `r = 0` the only admissible point is `s = 0`,
/// where the limit is 1.
pub fn g_profile(p: &ClassParams, r: f64, s: f64) -> f64 {
    let r2 = r * r;
    if r2 == 0.0 {
        return 1.0;
    }
    let k = p.abs_a_minus_one();
    (2.0 * r2 - s * s * (2.0 - k * (1.0 - r2))) / (2.0 * r2 * (1.0 - r2) * (1.0 - s).powi(2))
}

/// First-line right-hand side, valid for all `r` when `d <= 1/4` and for
/// `r < lambda` otherwise.
pub fn interior_branch(p: &ClassParams, r: f64) -> f64 {
    let u = 1.0 - r * r;
    p.abs_a_plus_one() * (1.0 - u * p.sqrt_d) / (u * u * (1.0 - p.sqrt_d))
}

/// Second-line right-hand side `2 (1-beta) cos alpha sqrt(d) / (1 - r)^2`.
pub fn boundary_branch(p: &ClassParams, r: f64) -> f64 {
    p.abs_a_plus_one() * p.sqrt_d / (1.0 - r).powi(2)
}

/// Sharp bound on `|S_f(z)|` at `|z| = r`.
pub fn pointwise_bound(p: &ClassParams, r: f64) -> Result<PointwiseBound> {
    check_radius(r)?;
    let on_boundary = matches!(p.lambda, Some(lambda) if r >= lambda);
    let (value, branch) = if on_boundary {
        (boundary_branch(p, r), Branch::Boundary)
    } else {
        (interior_branch(p, r), Branch::Interior)
    };
    Ok(PointwiseBound { r, value, branch })
}

/// Sharp bound on `||S_f|| = sup (1 - |z|^2)^2 |S_f(z)|`.
pub fn schwarzian_norm_bound(p: &ClassParams) -> f64 {
    match p.regime {
        Regime::SmallD => p.abs_a_plus_one() / (1.0 - p.sqrt_d),
        Regime::LargeD => 4.0 * p.abs_a_plus_one() * p.sqrt_d,
    }
}

/// Sharp bound on `||P_f|| = sup (1 - |z|^2) |P_f(z)|`, i.e. `4 (1-beta) cos alpha`.
pub fn preschwarzian_norm_bound(p: &ClassParams) -> f64 {
    2.0 * p.abs_a_plus_one()
}

/// For `d > 1/4`, the two candidate suprema of the weighted bound:
/// `M1` from the interior branch on `[0, lambda)` and `M2` from the boundary
/// branch on `[lambda, 1)`. `None` in the small-`d` regime.
pub fn large_d_suprema(p: &ClassParams) -> Option<(f64, f64)> {
    let lambda = p.lambda?;
    let u = 1.0 - lambda * lambda;
    let m1 = p.abs_a_plus_one() * (1.0 - u * p.sqrt_d) / (1.0 - p.sqrt_d);
    let m2 = 4.0 * p.abs_a_plus_one() * p.sqrt_d;
    Some((m1, m2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, PI, SQRT_2};

    fn params(alpha: f64, beta: f64) -> ClassParams {
        ClassParams::new(alpha, beta).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn make_params_examples() {
        let p = params(0.0, 0.0);
        assert_eq!(p.a(), Complex64::new(1.0, 0.0));
        assert_eq!(p.d(), 0.0);
        assert_eq!(p.regime(), Regime::SmallD);
        assert_eq!(p.lambda(), None);

        let p = params(FRAC_PI_4, 0.0);
        assert!((p.a() - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!(close(p.d(), 0.5, 1e-15));
        assert!(close(p.lambda().unwrap(), SQRT_2 - 1.0, 1e-15));

        let p = params(0.0, 0.75);
        assert!((p.a() - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
        assert!(close(p.d(), 9.0 / 16.0, 1e-15));
        assert!(close(p.lambda().unwrap(), 1.0 / 3.0, 1e-15));
        assert_eq!(p.regime(), Regime::LargeD);
    }

    #[test]
    fn out_of_range_params_rejected() {
        for (a, b) in [(FRAC_PI_2, 0.0), (-2.0, 0.0), (0.0, 1.0), (0.0, -0.1), (f64::NAN, 0.0)] {
            assert!(matches!(ClassParams::new(a, b), Err(Error::ParamOutOfRange(_))));
        }
    }

    #[test]
    fn quarter_discriminant_is_small_regime() {
        assert_eq!(params(0.0, 0.5).regime(), Regime::SmallD);
        assert_eq!(params(0.0, 0.5).lambda(), None);
        assert_eq!(params(FRAC_PI_6, 0.0).regime(), Regime::SmallD);
        assert_eq!(params(0.0, 0.5 + 1e-12).regime(), Regime::LargeD);
    }

    #[test]
    fn s0_examples() {
        for r in [0.1, 0.5, 0.9] {
            assert!(close(s0(&params(0.0, 0.0), r).unwrap(), r * r, 1e-15));
        }
        assert_eq!(s0(&params(0.3, 0.2), 0.0).unwrap(), 0.0);
        assert!(s0(&params(0.3, 0.2), 1e-8).unwrap() < 1e-15);
        // 0.18 / (2 - sqrt(2) * 0.91)
        let want = 0.18 / (2.0 - SQRT_2 * 0.91);
        let got = s0(&params(FRAC_PI_4, 0.0), 0.3).unwrap();
        assert!(close(got, want, 1e-15));
        assert!(close(got, 0.252431, 1e-6));
        let err = s0(&params(FRAC_PI_4, 0.0), 0.9).unwrap_err();
        assert!(matches!(err, Error::CriticalPointOutsideRange { .. }));
    }

    #[test]
    fn g_profile_examples() {
        let p = params(0.4, 0.3);
        for r in [0.2, 0.6, 0.95] {
            assert!(close(g_profile(&p, r, 0.0), 1.0 / (1.0 - r * r), 1e-14));
        }
        assert_eq!(g_profile(&params(0.0, 0.0), 0.7, 0.7), 0.0);
        let p = params(0.0, 0.75);
        let r = p.lambda().unwrap();
        let want = p.abs_a_minus_one() / (2.0 * (1.0 - r).powi(2));
        assert!(close(g_profile(&p, r, r), want, 1e-14));
    }

    #[test]
    fn h_gate_examples() {
        let p = params(0.0, 0.75);
        assert!(h_gate(&p, p.lambda().unwrap()).abs() < 1e-15);
        assert_eq!(h_gate(&params(0.0, 0.0), 0.37), 2.0);
        assert!(close(h_gate(&p, 0.0), 0.5, 1e-15));
    }

    #[test]
    fn pointwise_bound_examples() {
        let b = pointwise_bound(&params(0.0, 0.0), 0.0).unwrap();
        assert_eq!(b.branch, Branch::Interior);
        assert!(close(b.value, 2.0, 1e-15));

        let b = pointwise_bound(&params(FRAC_PI_4, 0.0), 0.9).unwrap();
        assert_eq!(b.branch, Branch::Boundary);
        assert!(close(b.value, 100.0, 1e-10));

        let p = params(0.0, 0.75);
        let lambda = p.lambda().unwrap();
        let b = pointwise_bound(&p, lambda).unwrap();
        assert_eq!(b.branch, Branch::Boundary);
        assert!(close(interior_branch(&p, lambda), b.value, 1e-12 * b.value));
        assert_eq!(pointwise_bound(&p, 0.3).unwrap().branch, Branch::Interior);
        assert!(pointwise_bound(&p, 1.0).is_err());
    }

    #[test]
    fn norm_bound_examples() {
        assert!(close(schwarzian_norm_bound(&params(0.0, 0.0)), 2.0, 1e-15));
        for alpha in [-FRAC_PI_6 + 1e-9, -0.3, 0.1, 0.5] {
            let want = 2.0 * alpha.cos() / (1.0 - alpha.abs().sin());
            assert!(close(schwarzian_norm_bound(&params(alpha, 0.0)), want, 1e-12));
        }
        for beta in [0.55, 0.75, 0.9] {
            let want = 8.0 * beta * (1.0 - beta);
            assert!(close(schwarzian_norm_bound(&params(0.0, beta)), want, 1e-12));
        }
        assert!(close(preschwarzian_norm_bound(&params(0.0, 0.0)), 4.0, 1e-15));
        for alpha in [-1.2f64, 0.3, 1.0] {
            let want = 4.0 * alpha.cos();
            assert!(close(preschwarzian_norm_bound(&params(alpha, 0.0)), want, 1e-14));
        }
        assert!(close(preschwarzian_norm_bound(&params(0.0, 0.5)), 2.0, 1e-15));
    }

    #[test]
    fn m1_below_m2_matches_closed_form() {
        let p = params(PI / 3.0, 0.25);
        let (m1, m2) = large_d_suprema(&p).unwrap();
        let a = p.a();
        let a2m1 = (a * a - 1.0).norm();
        assert!(close(m1, a2m1 / (2.0 * p.d()), 1e-12));
        assert!(close(m2, 2.0 * a2m1, 1e-12));
        assert!(m1 < m2);
        assert!(large_d_suprema(&params(0.1, 0.1)).is_none());
    }

    #[test]
    fn identities_and_continuity_on_grid() {
        let n = 101;
        for i in 0..n {
            // open interval (-pi/2, pi/2)
            let alpha = -FRAC_PI_2 + PI * (i as f64 + 0.5) / n as f64;
            for j in 0..n {
                let beta = j as f64 / n as f64;
                let p = params(alpha, beta);
                assert!(close((p.a() + 1.0).norm(), p.abs_a_plus_one(), 1e-12));
                assert!(close((p.a() - 1.0).norm(), p.abs_a_minus_one(), 1e-12));
                if let Some(lambda) = p.lambda() {
                    assert!(lambda > 0.0 && lambda < 1.0);
                    let i_val = interior_branch(&p, lambda);
                    let b_val = boundary_branch(&p, lambda);
                    assert!((i_val - b_val).abs() <= 1e-10 * b_val);
                    let (m1, m2) = large_d_suprema(&p).unwrap();
                    assert!(m1 < m2);
                }
            }
        }
    }

    #[test]
    fn pointwise_bound_is_nondecreasing() {
        for (alpha, beta) in [(0.0, 0.0), (0.3, 0.2), (FRAC_PI_4, 0.0), (0.0, 0.75), (1.3, 0.9)] {
            let p = params(alpha, beta);
            let mut prev = 0.0;
            for k in 0..1000 {
                let r = 0.999 * k as f64 / 999.0;
                let v = pointwise_bound(&p, r).unwrap().value;
                assert!(v >= prev * (1.0 - 1e-14), "({alpha}, {beta}) r = {r}");
                prev = v;
            }
        }
    }
}

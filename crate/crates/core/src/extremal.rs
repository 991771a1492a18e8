//! Sharpness witnesses for the pointwise Schwarzian bound.
//!
//! Every witness is built from a Schwarz function `omega` through
//! `1 + z f''/f' = (1 + A omega) / (1 - omega)`, normalized by
//! `f(0) = 0`, `f'(0) = 1`:
//!
//! * the half-plane extremal `f_0` uses `omega(z) = z`, so
//!   `f_0'(z) = (1 - z)^{-(A+1)}`;
//! * the Blaschke extremal `f_{z0}` uses the degree-2 Blaschke product
//!   `phi(z) = z B(z)` with `B = M_tau(u T_{z0}(z))`, where
//!   `T_{z0}(z) = (z - z0)/(1 - z0 z)`, `M_tau(v) = (v + tau)/(1 + tau v)`,
//!   `tau = (b - z0)/(1 - b z0)` and `|u| = 1`.
//!
//! With `u = -1` this is exactly `phi(z) = -z (z - b)/(1 - b z)`. The choice
//! `u = -e^{i theta}`, `theta = Arg(A - 1)`, lines the two terms of `S_f(z0)`
//! up so that `|S_{f_z0}(z0)|` equals the interior bound; the two choices
//! coincide only when `A = 1`.

use num_complex::Complex64;

use crate::bounds::{h_gate, s0, ClassParams};
use crate::error::{Error, Result};
use crate::schwarzian::{preschwarzian_from_omega, schwarzian_from_omega_raw};
use crate::series::ComplexSeries;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtremalKind {
    BlaschkeZ0 {
        z0: f64,
        b: f64,
        /// Unimodular `u` in `B = M_tau(u T_{z0})`.
        rotation: Complex64,
    },
    HalfPlane,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtremalSpec {
    pub kind: ExtremalKind,
    pub params: ClassParams,
}

/// `b = z0 (4 - |A-1| (1 - z0^2)) / (2 (1 + z0^2) - |A-1| (1 - z0^2))`, the
/// Blaschke parameter that puts `phi(z0) = s0(|z0|)`.
pub fn blaschke_b(z0: f64, p: &ClassParams) -> Result<f64> {
    if !(z0 > -1.0 && z0 < 1.0) {
        return Err(Error::ParamOutOfRange(format!("z0 = {z0} not in (-1, 1)")));
    }
    let h = h_gate(p, z0.abs());
    if h <= 0.0 {
        return Err(Error::ExtremalNotDefined { z0, h });
    }
    let k = p.abs_a_minus_one();
    let u = 1.0 - z0 * z0;
    let b = z0 * (4.0 - k * u) / (2.0 * (1.0 + z0 * z0) - k * u);
    if !(b.abs() < 1.0) {
        return Err(Error::BlaschkeParamOutOfDisk(b));
    }
    Ok(b)
}

impl ExtremalSpec {
    pub fn half_plane(params: ClassParams) -> Self {
        Self {
            kind: ExtremalKind::HalfPlane,
            params,
        }
    }

    /// The sharpness witness `f_{z0}`: the Blaschke parameter from
    /// [`blaschke_b`] with the rotation aligned to `Arg(A - 1)`.
    pub fn blaschke(z0: f64, params: ClassParams) -> Result<Self> {
        let b = blaschke_b(z0, &params)?;
        let rotation = -params.a_minus_one_phase();
        Ok(Self::with_parts(z0, b, rotation, params))
    }

    /// `phi(z) = -z (z - b)/(1 - b z)` with the real `b` of [`blaschke_b`].
    /// Attains the pointwise bound at `z0` only when `A = 1`.
    pub fn blaschke_real(z0: f64, params: ClassParams) -> Result<Self> {
        let b = blaschke_b(z0, &params)?;
        Ok(Self::with_parts(z0, b, Complex64::new(-1.0, 0.0), params))
    }

    /// Raw constructor, used for fault injection and experiments.
    pub fn with_parts(z0: f64, b: f64, rotation: Complex64, params: ClassParams) -> Self {
        Self {
            kind: ExtremalKind::BlaschkeZ0 { z0, b, rotation },
            params,
        }
    }

    /// `s0(|z0|)` target for Blaschke witnesses, `None` for the half-plane one.
    pub fn target_value(&self) -> Option<f64> {
        match self.kind {
            ExtremalKind::BlaschkeZ0 { z0, .. } => s0(&self.params, z0.abs()).ok(),
            ExtremalKind::HalfPlane => None,
        }
    }

    /// Coefficients `(p, q, r, s)` of `B(z) = (p z + q)/(r z + s)`.
    fn mobius(&self) -> Option<[Complex64; 4]> {
        let ExtremalKind::BlaschkeZ0 { z0, b, rotation: u } = self.kind else {
            return None;
        };
        let tau = (b - z0) / (1.0 - b * z0);
        Some([
            u - tau * z0,
            tau - u * z0,
            u * tau - z0,
            1.0 - u * (tau * z0),
        ])
    }

    /// `omega(z) / z`: `B(z)` for Blaschke witnesses, 1 for the half-plane one.
    pub fn omega_over_z(&self, z: Complex64) -> Complex64 {
        match self.mobius() {
            Some([p, q, r, s]) => (p * z + q) / (r * z + s),
            None => Complex64::new(1.0, 0.0),
        }
    }

    /// `(omega(z), omega'(z))` in closed form.
    pub fn omega_eval(&self, z: Complex64) -> (Complex64, Complex64) {
        match self.mobius() {
            Some([p, q, r, s]) => {
                let den = r * z + s;
                let bz = (p * z + q) / den;
                let dbz = (p * s - q * r) / (den * den);
                (z * bz, bz + z * dbz)
            }
            None => (z, Complex64::new(1.0, 0.0)),
        }
    }

    /// Series of `omega(z) / z`, of the given order.
    pub fn omega_over_z_series(&self, order: usize) -> ComplexSeries {
        match self.mobius() {
            Some([p, q, r, s]) => ComplexSeries::linear(q, p, order)
                .div(&ComplexSeries::linear(s, r, order))
                .expect("s = 1 - u tau z0 is nonzero for |tau|, |z0| < 1"),
            None => ComplexSeries::one(order),
        }
    }

    /// `phi(z)` for Blaschke witnesses (`z` for the half-plane one).
    pub fn phi_eval(&self, z: Complex64) -> Complex64 {
        self.omega_eval(z).0
    }

    pub fn phi_series(&self, order: usize) -> ComplexSeries {
        let b = self.omega_over_z_series(order.saturating_sub(1));
        let mut coeffs = vec![Complex64::new(0.0, 0.0)];
        coeffs.extend_from_slice(b.coeffs());
        ComplexSeries::new(coeffs).truncate(order)
    }

    /// `P_f` series, `(A+1) B / (1 - z B)`, of the given order.
    pub fn preschwarzian_series(&self, order: usize) -> ComplexSeries {
        let a1 = self.params.a() + 1.0;
        match self.kind {
            ExtremalKind::HalfPlane => ComplexSeries::geometric(Complex64::new(1.0, 0.0), order)
                .scale(a1),
            ExtremalKind::BlaschkeZ0 { .. } => {
                let b = self.omega_over_z_series(order);
                let mut zb = vec![Complex64::new(0.0, 0.0)];
                zb.extend_from_slice(&b.coeffs()[..order]);
                let one_minus = &ComplexSeries::one(order) - &ComplexSeries::new(zb);
                b.div(&one_minus)
                    .expect("1 - z B has constant term 1")
                    .scale(a1)
            }
        }
    }

    /// Normalized `f` with `f(0) = 0`, `f'(0) = 1`, of order `order`.
    pub fn extremal_series(&self, order: usize) -> Result<ComplexSeries> {
        if order < 2 {
            return Err(Error::ParamOutOfRange(format!("series order {order} < 2")));
        }
        let fprime = match self.kind {
            ExtremalKind::HalfPlane => {
                // (1 - z)^{-(A+1)} = exp((A+1) * (-log(1 - z)))
                let neg_log = ComplexSeries::geometric(Complex64::new(1.0, 0.0), order - 2)
                    .integrate();
                neg_log.scale(self.params.a() + 1.0).exp()
            }
            ExtremalKind::BlaschkeZ0 { .. } => {
                self.preschwarzian_series(order - 2).integrate().exp()
            }
        };
        Ok(fprime.integrate())
    }

    /// `P_f(z)` in closed form.
    pub fn preschwarzian_closed(&self, z: Complex64) -> Result<Complex64> {
        match self.kind {
            ExtremalKind::HalfPlane => Ok(closed_form_p_f0(z, &self.params)),
            ExtremalKind::BlaschkeZ0 { .. } => {
                if z.norm() == 0.0 {
                    return Ok((self.params.a() + 1.0) * self.omega_over_z(z));
                }
                let (w, _) = self.omega_eval(z);
                preschwarzian_from_omega(z, w, &self.params)
            }
        }
    }

    /// `S_f(z)` in closed form, via the Schwarz-function representation.
    pub fn schwarzian_closed(&self, z: Complex64) -> Result<Complex64> {
        match self.kind {
            ExtremalKind::HalfPlane => Ok(closed_form_s_f0(z, &self.params)),
            ExtremalKind::BlaschkeZ0 { .. } => {
                if z.norm() == 0.0 {
                    // S(0) = P'(0) - P(0)^2 / 2 from the series.
                    let pre = self.preschwarzian_series(2);
                    return Ok(pre.coeff(1) - 0.5 * pre.coeff(0) * pre.coeff(0));
                }
                let (w, wp) = self.omega_eval(z);
                schwarzian_from_omega_raw(z, w, wp, self.params.a())
            }
        }
    }
}

/// `|S_{f_z0}(z0)| = |A+1| (2 - |A-1|(1 - z0^2)) / ((1 - z0^2)^2 (2 - |A-1|))`.
pub fn closed_form_s_fz0_at_z0(z0: f64, p: &ClassParams) -> f64 {
    let k = p.abs_a_minus_one();
    let u = 1.0 - z0 * z0;
    p.abs_a_plus_one() * (2.0 - k * u) / (u * u * (2.0 - k))
}

/// `S_{f_0}(z) = (1 - A^2) / (2 (1 - z)^2)`.
pub fn closed_form_s_f0(z: Complex64, p: &ClassParams) -> Complex64 {
    let a = p.a();
    let d = 1.0 - z;
    (1.0 - a * a) / (2.0 * d * d)
}

/// `P_{f_0}(z) = (A + 1)/(1 - z)`.
pub fn closed_form_p_f0(z: Complex64, p: &ClassParams) -> Complex64 {
    (p.a() + 1.0) / (1.0 - z)
}

/// Normalized `f` subordinate through an arbitrary Schwarz function, given
/// as the series of `omega(z) / z`.
pub fn subordinate_series(
    omega_over_z: &ComplexSeries,
    p: &ClassParams,
    order: usize,
) -> Result<ComplexSeries> {
    if order < 2 || omega_over_z.order() < order - 2 {
        return Err(Error::ParamOutOfRange(format!(
            "need omega/z of order >= {} for f of order {order}",
            order.saturating_sub(2)
        )));
    }
    let n = order - 2;
    let b = omega_over_z.truncate(n);
    let mut zb = vec![Complex64::new(0.0, 0.0)];
    zb.extend_from_slice(&b.coeffs()[..n]);
    let one_minus = &ComplexSeries::one(n) - &ComplexSeries::new(zb);
    let pre = b.div(&one_minus)?.scale(p.a() + 1.0);
    Ok(pre.integrate().exp().integrate())
}

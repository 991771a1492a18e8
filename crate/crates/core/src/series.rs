//! Truncated power series with complex coefficients.
//!
//! A [`ComplexSeries`] of order `N` stores the dense coefficients
//! `c_0, .., c_N` of an analytic function on the unit disk. Binary operations
//! truncate to the smaller of the two operand orders; nothing ever extends the
//! order except [`ComplexSeries::integrate`].
//!
//! The text record used for import/export is
//!
//! ```text
//! order N
//! n re im
//! ...
//! ```
//!
//! with one `n re im` line per stored coefficient. Missing indices are zero,
//! blank lines and `#` comments are skipped, anything else is rejected.

use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default truncation order for series built by this crate.
pub const DEFAULT_ORDER: usize = 512;

/// Largest modulus at which a truncated series may be evaluated.
pub const DEFAULT_EVAL_CAP: f64 = 0.999;

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSeries {
    coeffs: Vec<Complex64>,
}

/// Value of a truncated series together with the tail heuristic
/// `|c_N| |z|^N / (1 - |z|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub truncation_note: f64,
}

impl ComplexSeries {
    /// Builds a series from `c_0..c_N`. The order is `coeffs.len() - 1`.
    ///
    /// # Panics
    ///
    /// Panics if `coeffs` is empty.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c_0");
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Complex64) -> Self {
        Self::new((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); order + 1])
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex64::new(1.0, 0.0), order)
    }

    /// The identity function `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(Complex64::new(1.0, 0.0), 1, order)
    }

    /// `c z^k`, or zero when `k > order`.
    pub fn monomial(c: Complex64, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// `1 / (1 - q z) = sum q^n z^n`.
    pub fn geometric(q: Complex64, order: usize) -> Self {
        let mut acc = Complex64::new(1.0, 0.0);
        Self::from_fn(order, |_| {
            let c = acc;
            acc *= q;
            c
        })
    }

    /// Affine series `c0 + c1 z`.
    pub fn linear(c0: Complex64, c1: Complex64, order: usize) -> Self {
        let mut s = Self::constant(c0, order);
        if order >= 1 {
            s.coeffs[1] = c1;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Drops coefficients above `order` (no-op when `order >= self.order()`).
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Self::new(self.coeffs[..=n].to_vec())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |k| self.coeffs[k] + other.coeffs[k])
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |k| self.coeffs[k] - other.coeffs[k])
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let a = &self.coeffs;
        let b = &other.coeffs;
        Self::from_fn(n, |k| (0..=k).map(|j| a[j] * b[k - j]).sum())
    }

    /// Quotient `q` with `q * other = self` to the smaller order.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let b0 = other.coeffs[0];
        if b0.norm() == 0.0 {
            return Err(Error::DivisionByNonUnit);
        }
        let n = self.order().min(other.order());
        let b = &other.coeffs;
        let inv_b0 = b0.inv();
        let mut q: Vec<Complex64> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let conv: Complex64 = (0..k).map(|j| q[j] * b[k - j]).sum();
            q.push((self.coeffs[k] - conv) * inv_b0);
        }
        Ok(Self::new(q))
    }

    /// `1 / self`.
    pub fn recip(&self) -> Result<Self> {
        Self::one(self.order()).div(self)
    }

    /// `outer(inner(z))`, truncated to the smaller order.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let c = inner.coeffs[0];
        if c.norm() != 0.0 {
            return Err(Error::CompositionAtNonOrigin(c));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        // Horner in the series ring.
        let mut acc = Self::constant(self.coeffs[n], n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// Term-by-term derivative; the order drops by one (order 0 stays order 0).
    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zero(0);
        }
        Self::from_fn(n - 1, |k| self.coeffs[k + 1] * (k as f64 + 1.0))
    }

    /// Antiderivative with zero constant term; the order rises by one.
    pub fn integrate(&self) -> Self {
        let n = self.order() + 1;
        Self::from_fn(n, |k| {
            if k == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                self.coeffs[k - 1] / k as f64
            }
        })
    }

    /// `exp(self)` via `n g_n = sum_{k=1}^n k s_k g_{n-k}`.
    pub fn exp(&self) -> Self {
        let n = self.order();
        let s = &self.coeffs;
        let mut g = Vec::with_capacity(n + 1);
        g.push(s[0].exp());
        for m in 1..=n {
            let acc: Complex64 = (1..=m).map(|k| s[k] * g[m - k] * k as f64).sum();
            g.push(acc / m as f64);
        }
        Self::new(g)
    }

    /// Principal-branch logarithm, from `s l' = s'`.
    pub fn log(&self) -> Result<Self> {
        let s = &self.coeffs;
        if s[0].norm() == 0.0 {
            return Err(Error::LogOfZeroConstant);
        }
        let n = self.order();
        let mut l = Vec::with_capacity(n + 1);
        l.push(s[0].ln());
        let inv_s0 = s[0].inv();
        for m in 1..=n {
            let conv: Complex64 = (1..m).map(|k| l[k] * s[m - k] * k as f64).sum();
            l.push((s[m] * m as f64 - conv) * inv_s0 / m as f64);
        }
        Ok(Self::new(l))
    }

    /// `self^c = exp(c log self)` with the principal logarithm.
    pub fn powc(&self, c: Complex64) -> Result<Self> {
        Ok(self.log()?.scale(c).exp())
    }

    /// Horner evaluation, refusing `|z|` above [`DEFAULT_EVAL_CAP`].
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.eval_capped(z, DEFAULT_EVAL_CAP)
    }

    /// `|z|` may exceed `cap` by a few ulps, so points built with
    /// `from_polar(cap, theta)` are accepted.
    pub fn eval_capped(&self, z: Complex64, cap: f64) -> Result<Complex64> {
        let radius = z.norm();
        if radius > cap * (1.0 + 4.0 * f64::EPSILON) {
            return Err(Error::EvalRadiusExceeded { radius, cap });
        }
        Ok(self.horner(z))
    }

    /// Evaluation with the tail heuristic attached.
    pub fn eval_with_note(&self, z: Complex64) -> Result<SeriesValue> {
        let value = self.eval(z)?;
        Ok(SeriesValue {
            value,
            truncation_note: self.truncation_note(z.norm()),
        })
    }

    /// `|c_N| r^N / (1 - r)`: the size of the tail if the coefficients stopped
    /// growing at `N`. A heuristic, not a bound.
    pub fn truncation_note(&self, r: f64) -> f64 {
        let n = self.order();
        if r >= 1.0 {
            return f64::INFINITY;
        }
        self.coeffs[n].norm() * r.powi(n as i32) / (1.0 - r)
    }

    /// Unchecked Horner evaluation (no radius cap).
    pub fn horner(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.order().min(other.order());
        (0..=n)
            .map(|k| (self.coeffs[k] - other.coeffs[k]).norm())
            .fold(0.0, f64::max)
    }

    /// Renders the text record (`order N` then `n re im`).
    ///
    /// Floats use Rust's shortest round-trip representation, so
    /// [`ComplexSeries::from_text`] recovers the coefficients bit for bit.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "order {}", self.order()).unwrap();
        for (n, c) in self.coeffs.iter().enumerate() {
            writeln!(out, "{} {:e} {:e}", n, c.re, c.im).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut order: Option<usize> = None;
        let mut coeffs: Vec<Complex64> = Vec::new();
        let mut seen: Vec<bool> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match order {
                None => {
                    if fields.len() != 2 || fields[0] != "order" {
                        return Err(err(format!("expected `order N`, found `{line}`")));
                    }
                    let n: usize = fields[1]
                        .parse()
                        .map_err(|e| err(format!("bad order `{}`: {e}", fields[1])))?;
                    order = Some(n);
                    coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
                    seen = vec![false; n + 1];
                }
                Some(n) => {
                    if fields.len() != 3 {
                        return Err(err(format!("expected `n re im`, found `{line}`")));
                    }
                    let k: usize = fields[0]
                        .parse()
                        .map_err(|e| err(format!("bad index `{}`: {e}", fields[0])))?;
                    if k > n {
                        return Err(err(format!("index {k} exceeds order {n}")));
                    }
                    if seen[k] {
                        return Err(err(format!("duplicate coefficient {k}")));
                    }
                    let re: f64 = fields[1]
                        .parse()
                        .map_err(|e| err(format!("bad real part `{}`: {e}", fields[1])))?;
                    let im: f64 = fields[2]
                        .parse()
                        .map_err(|e| err(format!("bad imaginary part `{}`: {e}", fields[2])))?;
                    if !re.is_finite() || !im.is_finite() {
                        return Err(err("non-finite coefficient".into()));
                    }
                    seen[k] = true;
                    coeffs[k] = Complex64::new(re, im);
                }
            }
        }
        if order.is_none() {
            return Err(Error::Parse {
                line: 0,
                message: "missing `order N` header".into(),
            });
        }
        Ok(Self::new(coeffs))
    }
}

impl Add for &ComplexSeries {
    type Output = ComplexSeries;
    fn add(self, rhs: Self) -> ComplexSeries {
        ComplexSeries::add(self, rhs)
    }
}

impl Sub for &ComplexSeries {
    type Output = ComplexSeries;
    fn sub(self, rhs: Self) -> ComplexSeries {
        ComplexSeries::sub(self, rhs)
    }
}

impl Mul for &ComplexSeries {
    type Output = ComplexSeries;
    fn mul(self, rhs: Self) -> ComplexSeries {
        ComplexSeries::mul(self, rhs)
    }
}

impl Neg for &ComplexSeries {
    type Output = ComplexSeries;
    fn neg(self) -> ComplexSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

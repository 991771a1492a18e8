//! Verification suites behind the `verify` command.
//!
//! Each suite runs a family of checks of the form `deviation <= tolerance`
//! and reports the worst deviation seen. Failures are report content, not
//! errors.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{
    boundary_branch, h_gate, interior_branch, large_d_suprema, pointwise_bound,
    preschwarzian_norm_bound, schwarzian_norm_bound, ClassParams,
};
use crate::dieudonne::{brute_force_pointwise_max, dieudonne_disk, verify_inner_max, SweepSpec};
use crate::error::Result;
use crate::extremal::{
    blaschke_b, closed_form_s_fz0_at_z0, subordinate_series, ExtremalKind, ExtremalSpec,
};
use crate::grid::GridSpec;
use crate::schwarzian::{
    membership_margin, preschwarzian_series, schwarzian_from_omega_raw, schwarzian_series,
};
use crate::series::{ComplexSeries, DEFAULT_ORDER};

/// Inputs to [`run_verify`].
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub params: Vec<ClassParams>,
    /// Real points for the sharpness, membership and sweep suites.
    pub z0s: Vec<f64>,
    pub seed: u64,
    pub sweep: SweepSpec,
    pub membership_grid: GridSpec,
    pub series_order: usize,
    /// Random cases per randomized suite.
    pub random_cases: usize,
    /// Added to the Blaschke parameter `b` of every `f_{z0}` (fault injection).
    pub b_perturbation: Option<f64>,
}

impl VerifyConfig {
    pub fn new(params: Vec<ClassParams>, z0s: Vec<f64>) -> Self {
        Self {
            params,
            z0s,
            seed: 0,
            sweep: SweepSpec::default(),
            membership_grid: GridSpec::membership_default(),
            series_order: DEFAULT_ORDER,
            random_cases: 16,
            b_perturbation: None,
        }
    }
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self::new(default_params(), vec![0.5, 0.9])
    }
}

/// `(0,0)`, `(pi/12, 0.1)`, `(pi/4, 0)`, `(0, 3/4)`, `(pi/3, 1/4)`.
pub fn default_params() -> Vec<ClassParams> {
    [
        (0.0, 0.0),
        (FRAC_PI_4 / 3.0, 0.1),
        (FRAC_PI_4, 0.0),
        (0.0, 0.75),
        (std::f64::consts::FRAC_PI_3, 0.25),
    ]
    .into_iter()
    .map(|(a, b)| ClassParams::new(a, b).expect("valid default parameters"))
    .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
    /// Largest `deviation` seen; `-inf` when there were no checks.
    pub worst: f64,
    pub tolerance: f64,
    /// Where the worst deviation (or the first error) occurred.
    pub note: String,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }
}

struct Tally {
    report: SuiteReport,
    errored: bool,
}

impl Tally {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            report: SuiteReport {
                name,
                checks: 0,
                failures: 0,
                worst: f64::NEG_INFINITY,
                tolerance,
                note: String::new(),
            },
            errored: false,
        }
    }

    fn check(&mut self, deviation: f64, at: impl FnOnce() -> String) {
        let r = &mut self.report;
        r.checks += 1;
        let ok = deviation <= r.tolerance;
        if !ok {
            r.failures += 1;
        }
        if !(deviation <= r.worst) && !self.errored {
            r.worst = deviation;
            r.note = at();
        }
    }

    fn error(&mut self, e: impl std::fmt::Display, at: impl FnOnce() -> String) {
        let r = &mut self.report;
        r.checks += 1;
        r.failures += 1;
        if !self.errored {
            r.worst = f64::INFINITY;
            r.note = format!("{}: {e}", at());
            self.errored = true;
        }
    }

    fn finish(self) -> SuiteReport {
        self.report
    }
}

fn tag(p: &ClassParams) -> String {
    format!("alpha={:.6}, beta={:.6}", p.alpha(), p.beta())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Runs every suite. An empty parameter list gives an empty report.
pub fn run_verify(cfg: &VerifyConfig) -> VerifyReport {
    if cfg.params.is_empty() {
        return VerifyReport::default();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (sound, sharp) = suite_dieudonne(cfg);
    let suites = vec![
        suite_identities(cfg),
        suite_corollary_anchors(),
        suite_branch_continuity(cfg),
        suite_monotonicity(cfg),
        suite_m1_below_m2(cfg),
        suite_inner_max(cfg),
        suite_blaschke_validity(&mut rng, 100_000),
        suite_phi_admissibility(cfg),
        suite_sharpness_identity(cfg),
        suite_membership(cfg),
        sound,
        sharp,
        suite_mobius_invariance(&mut rng, cfg),
        suite_finite_difference(&mut rng, cfg),
        suite_omega_representation(&mut rng, cfg),
        suite_round_trips(&mut rng, cfg),
    ];
    VerifyReport { suites }
}

/// `|A+1| = 2(1-beta)cos alpha` and `|A-1| = 2 sqrt(d)`.
pub fn suite_identities(cfg: &VerifyConfig) -> SuiteReport {
    let mut t = Tally::new("identities", 1e-12);
    for p in &cfg.params {
        let (a, b) = (p.alpha(), p.beta());
        t.check((p.abs_a_plus_one() - 2.0 * (1.0 - b) * a.cos()).abs(), || tag(p));
        t.check((p.abs_a_minus_one() - 2.0 * p.sqrt_d()).abs(), || tag(p));
    }
    t.finish()
}

/// Reductions at `alpha = 0` and `beta = 0`.
pub fn suite_corollary_anchors() -> SuiteReport {
    let mut t = Tally::new("corollary_anchors", 1e-12);
    let cases = [
        ((0.0, 0.0), 2.0, 4.0),
        ((FRAC_PI_6, 0.0), 2.0 * 3f64.sqrt(), 4.0 * FRAC_PI_6.cos()),
        ((0.0, 0.75), 1.5, 1.0),
        ((0.0, 0.5), 2.0, 2.0),
    ];
    for ((a, b), s, pre) in cases {
        match ClassParams::new(a, b) {
            Ok(p) => {
                t.check(rel(schwarzian_norm_bound(&p), s), || tag(&p));
                t.check(rel(preschwarzian_norm_bound(&p), pre), || tag(&p));
            }
            Err(e) => t.error(e, || format!("alpha={a}, beta={b}")),
        }
    }
    // The regime boundary d = 1/4 meets the axes at |alpha| = pi/6 and beta = 1/2.
    for (a, b) in [(FRAC_PI_6, 0.0), (-FRAC_PI_6, 0.0), (0.0, 0.5)] {
        if let Ok(p) = ClassParams::new(a, b) {
            t.check((p.d() - 0.25).abs(), || tag(&p));
        }
    }
    t.finish()
}

/// Interior and boundary branches meet at `r = lambda`.
pub fn suite_branch_continuity(cfg: &VerifyConfig) -> SuiteReport {
    let mut t = Tally::new("branch_continuity", 1e-10);
    for p in &cfg.params {
        if let Some(l) = p.lambda().filter(|l| *l > 0.0 && *l < 1.0) {
            t.check(rel(interior_branch(p, l), boundary_branch(p, l)), || tag(p));
        }
    }
    t.finish()
}

/// `pointwise_bound(p, r)` is nondecreasing in `r`.
pub fn suite_monotonicity(cfg: &VerifyConfig) -> SuiteReport {
    let mut t = Tally::new("monotonicity", 0.0);
    for p in &cfg.params {
        let mut prev = None;
        for k in 0..=400 {
            let r = 0.995 * k as f64 / 400.0;
            match pointwise_bound(p, r) {
                Ok(b) => {
                    if let Some(v) = prev {
                        t.check(v - b.value, || format!("{}, r={r}", tag(p)));
                    }
                    prev = Some(b.value);
                }
                Err(e) => t.error(e, || format!("{}, r={r}", tag(p))),
            }
        }
    }
    t.finish()
}

/// In the large-`d` regime the interior supremum `M1` lies below the
/// boundary one `M2`, which is the stated norm.
pub fn suite_m1_below_m2(cfg: &VerifyConfig) -> SuiteReport {
    let mut t = Tally::new("m1_below_m2", 0.0);
    for p in &cfg.params {
        if let Some((m1, m2)) = large_d_suprema(p) {
            t.check(m1 - m2, || tag(p));
            t.check(rel(m2, schwarzian_norm_bound(p)) - 1e-12, || tag(p));
        }
    }
    t.finish()
}

/// Brute-force argmax of `g` against `s0` or the endpoint.
pub fn suite_inner_max(cfg: &VerifyConfig) -> SuiteReport {
    let mut t = Tally::new("inner_max", 0.0);
    for p in &cfg.params {
        for r in [0.1, 0.3, 0.5, 0.7, 0.9, 0.99] {
            match verify_inner_max(p, r, 4001) {
                // deviation in units of grid spacing, minus one
                Ok(rep) => t.check(
                    if rep.unimodal {
                        rep.deviation / rep.resolution - 1.0
                    } else {
                        f64::INFINITY
                    },
                    || format!("{}, r={r}", tag(p)),
                ),
                Err(e) => t.error(e, || format!("{}, r={r}", tag(p))),
            }
        }
    }
    t.finish()
}

/// `blaschke_b` lands in `(-1, 1)` whenever `h(|z0|) > 0`. Deviation is
/// `|b| - 1`, positive on violation.
pub fn suite_blaschke_validity(rng: &mut ChaCha8Rng, samples: usize) -> SuiteReport {
    let mut t = Tally::new("blaschke_validity", -f64::MIN_POSITIVE);
    for _ in 0..samples {
        let alpha = rng.gen_range(-FRAC_PI_2 + 1e-6..FRAC_PI_2 - 1e-6);
        let beta = rng.gen_range(0.0..1.0);
        let z0: f64 = rng.gen_range(-0.999..0.999);
        let Ok(p) = ClassParams::new(alpha, beta) else {
            continue;
        };
        if h_gate(&p, z0.abs()) <= 0.0 {
            continue;
        }
        let at = || format!("{}, z0={z0}", tag(&p));
        match blaschke_b(z0, &p) {
            Ok(b) => t.check(b.abs() - 1.0, at),
            Err(e) => t.error(e, at),
        }
    }
    t.finish()
}

fn witnesses(cfg: &VerifyConfig) -> Vec<(ClassParams, f64, Result<ExtremalSpec>)> {
    let mut out = Vec::new();
    for p in &cfg.params {
        for &z0 in &cfg.z0s {
            if !(z0 > 0.0 && z0 < 1.0) || h_gate(p, z0) <= 0.0 {
                continue;
            }
            let spec = ExtremalSpec::blaschke(z0, *p).map(|s| match (s.kind, cfg.b_perturbation) {
                (ExtremalKind::BlaschkeZ0 { z0, b, rotation }, Some(db)) => {
                    ExtremalSpec::with_parts(z0, b + db, rotation, *p)
                }
                _ => s,
            });
            out.push((*p, z0, spec));
        }
    }
    out
}

/// `phi(z0) = s0` and `phi'(z0)` sits on the Dieudonné circle.
pub fn suite_phi_admissibility(cfg: &VerifyConfig) -> SuiteReport {
    let mut t = Tally::new("phi_admissibility", 1e-10);
    for (p, z0, spec) in witnesses(cfg) {
        let at = || format!("{}, z0={z0}", tag(&p));
        let spec = match spec {
            Ok(s) => s,
            Err(e) => {
                t.error(e, at);
                continue;
            }
        };
        let z = Complex64::new(z0, 0.0);
        let (w, wp) = spec.omega_eval(z);
        if let Some(target) = spec.target_value() {
            t.check((w.norm() - target).abs(), at);
        }
        match dieudonne_disk(z, w) {
            Ok((c, r)) => t.check(((wp - c).norm() - r).abs(), at),
            Err(e) => t.error(e, at),
        }
    }
    t.finish()
}

/// Weighted `|S|` of the `f_{z0}` series at `z0` against the closed form, for
/// `z0 <= 0.9`.
pub fn suite_sharpness_identity(cfg: &VerifyConfig) -> SuiteReport {
    let mut t = Tally::new("sharpness_identity", 1e-6);
    for (p, z0, spec) in witnesses(cfg) {
        if z0 > 0.9 {
            continue;
        }
        let at = || format!("{}, z0={z0}", tag(&p));
        let got = spec
            .and_then(|s| s.extremal_series(cfg.series_order))
            .and_then(|f| schwarzian_series(&f))
            .and_then(|s| s.eval(Complex64::new(z0, 0.0)));
        match got {
            Ok(s) => {
                let w = (1.0 - z0 * z0).powi(2);
                t.check((w * s.norm() - w * closed_form_s_fz0_at_z0(z0, &p)).abs(), at);
            }
            Err(e) => t.error(e, at),
        }
    }
    t.finish()
}

/// Membership margins of `f_0` and every `f_{z0}` stay above `-1e-6`.
/// Deviation is the negated margin.
pub fn suite_membership(cfg: &VerifyConfig) -> SuiteReport {
    let mut t = Tally::new("membership", 1e-6);
    let mut specs: Vec<(String, Result<ExtremalSpec>)> = cfg
        .params
        .iter()
        .map(|p| (format!("{}, f0", tag(p)), Ok(ExtremalSpec::half_plane(*p))))
        .collect();
    specs.extend(
        witnesses(cfg)
            .into_iter()
            .map(|(p, z0, s)| (format!("{}, z0={z0}", tag(&p)), s)),
    );
    for (label, spec) in specs {
        let margin = spec.and_then(|s| {
            let f = s.extremal_series(cfg.series_order)?;
            membership_margin(&f, &s.params, &cfg.membership_grid)
        });
        match margin {
            Ok(m) => t.check(-m, || label.clone()),
            Err(e) => t.error(e, || label.clone()),
        }
    }
    t.finish()
}

fn sweep_points(cfg: &VerifyConfig) -> Vec<(ClassParams, f64)> {
    cfg.params
        .iter()
        .flat_map(|p| {
            cfg.z0s
                .iter()
                .filter(|z| **z > 0.0 && **z < 1.0)
                .map(move |&z| (*p, z))
        })
        .collect()
}

/// Soundness (the brute-force maximum never exceeds the bound, +1e-9) and
/// real-axis sharpness (it comes within 0.5% of the bound), from one sweep
/// per point.
pub fn suite_dieudonne(cfg: &VerifyConfig) -> (SuiteReport, SuiteReport) {
    let mut sound = Tally::new("dieudonne_soundness", 1e-9);
    let mut sharp = Tally::new("dieudonne_sharpness", 5e-3);
    for (p, z0) in sweep_points(cfg) {
        let at = || format!("{}, z0={z0}", tag(&p));
        match brute_force_pointwise_max(z0, &p, &cfg.sweep) {
            Ok(m) => {
                sound.check(m.value - m.bound.value, at);
                sharp.check(1.0 - m.ratio(), at);
            }
            Err(e) => {
                sound.error(&e, at);
                sharp.error(&e, at);
            }
        }
    }
    (sound.finish(), sharp.finish())
}

/// A random Schwarz function divided by `z`: `c * (z - a)/(1 - conj(a) z)`
/// with `|c| < 1`, `|a| < 1`, as a series of the given order.
pub fn random_schwarz_over_z(rng: &mut ChaCha8Rng, order: usize) -> ComplexSeries {
    let c = Complex64::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(0.0..TAU));
    let a = Complex64::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(0.0..TAU));
    ComplexSeries::linear(-a * c, c, order)
        .div(&ComplexSeries::linear(Complex64::new(1.0, 0.0), -a.conj(), order))
        .expect("unit constant term")
}

/// Random parameters in the class domain, away from its edges.
pub fn random_params(rng: &mut ChaCha8Rng) -> ClassParams {
    loop {
        let alpha = rng.gen_range(-1.4..1.4);
        let beta = rng.gen_range(0.0..0.95);
        if let Ok(p) = ClassParams::new(alpha, beta) {
            return p;
        }
    }
}

/// Series whose coefficients satisfy `|c_k| <= 2^-k` and, for units,
/// `|c_0| in [0.5, 2]` with the tail dominated by `c_0`, so that quotients
/// and logarithms stay well conditioned.
pub fn random_tame_series(rng: &mut ChaCha8Rng, order: usize, unit: bool) -> ComplexSeries {
    let mut coeffs: Vec<Complex64> = (0..=order)
        .map(|k| {
            Complex64::from_polar(rng.gen_range(0.0..1.0), rng.gen_range(0.0..TAU))
                * 0.5f64.powi(k as i32)
        })
        .collect();
    if unit {
        let m = rng.gen_range(0.5..2.0);
        coeffs[0] = Complex64::from_polar(m, rng.gen_range(0.0..TAU));
        for c in coeffs.iter_mut().skip(1) {
            *c *= 0.5 * m;
        }
    }
    ComplexSeries::new(coeffs)
}

/// Random normalized member of the class: subordinate through a random
/// Schwarz function.
pub fn random_member(rng: &mut ChaCha8Rng, order: usize) -> Result<(ClassParams, ComplexSeries)> {
    let p = random_params(rng);
    let w = random_schwarz_over_z(rng, order);
    Ok((p, subordinate_series(&w, &p, order)?))
}

/// `S_{T o f} = S_f` for Möbius `T`, coefficientwise within 1e-8.
pub fn suite_mobius_invariance(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> SuiteReport {
    let mut t = Tally::new("mobius_invariance", 1e-8);
    let order = 40;
    for case in 0..cfg.random_cases {
        let at = || format!("case {case}");
        let res = (|| {
            let (_, f) = random_member(rng, order)?;
            let coef = |rng: &mut ChaCha8Rng, r: f64| {
                Complex64::from_polar(rng.gen_range(0.0..r), rng.gen_range(0.0..TAU))
            };
            let (a, b) = (coef(rng, 2.0), coef(rng, 2.0));
            let c = coef(rng, 0.1);
            let d = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
            let num = &f.scale(a) + &ComplexSeries::constant(b, order);
            let den = &f.scale(c) + &ComplexSeries::constant(d, order);
            let g = num.div(&den)?;
            // a d - b c != 0 unless the draw is degenerate
            if (a * d - b * c).norm() < 1e-3 {
                return Ok(None);
            }
            let sf = schwarzian_series(&f)?;
            let sg = schwarzian_series(&g)?;
            Ok::<_, crate::Error>(Some(sf.max_abs_diff(&sg)))
        })();
        match res {
            Ok(Some(dev)) => t.check(dev, at),
            Ok(None) => {}
            Err(e) => t.error(e, at),
        }
    }
    t.finish()
}

/// The series `S_f` against `P' - P^2/2` with `P'` from a fourth-order
/// central difference of the evaluated `P_f` series.
pub fn suite_finite_difference(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> SuiteReport {
    let mut t = Tally::new("finite_difference", 1e-6);
    let order = 256;
    let h = 1e-3;
    for case in 0..cfg.random_cases {
        let at = || format!("case {case}");
        let res = (|| {
            let (_, f) = random_member(rng, order)?;
            let pre = preschwarzian_series(&f)?;
            let s = schwarzian_series(&f)?;
            let z = Complex64::from_polar(rng.gen_range(0.0..0.5), rng.gen_range(0.0..TAU));
            let pv = |dz: f64| pre.horner(z + dz);
            let dp = (-pv(2.0 * h) + 8.0 * pv(h) - 8.0 * pv(-h) + pv(-2.0 * h)) / (12.0 * h);
            let fd = dp - 0.5 * pv(0.0) * pv(0.0);
            Ok::<_, crate::Error>((fd - s.horner(z)).norm() / s.horner(z).norm().max(1.0))
        })();
        match res {
            Ok(dev) => t.check(dev, at),
            Err(e) => t.error(e, at),
        }
    }
    t.finish()
}

/// The `S_f` series of a subordinate function against the closed
/// Schwarz-function representation.
pub fn suite_omega_representation(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> SuiteReport {
    let mut t = Tally::new("omega_representation", 1e-9);
    let order = 256;
    for case in 0..cfg.random_cases {
        let at = || format!("case {case}");
        let res = (|| {
            let p = random_params(rng);
            let wz = random_schwarz_over_z(rng, order);
            let f = subordinate_series(&wz, &p, order)?;
            let s = schwarzian_series(&f)?;
            let z = Complex64::from_polar(rng.gen_range(0.05..0.5), rng.gen_range(0.0..TAU));
            let b = wz.horner(z);
            let db = wz.derivative().horner(z);
            let closed = schwarzian_from_omega_raw(z, z * b, b + z * db, p.a())?;
            Ok::<_, crate::Error>((closed - s.horner(z)).norm() / closed.norm().max(1.0))
        })();
        match res {
            Ok(dev) => t.check(dev, at),
            Err(e) => t.error(e, at),
        }
    }
    t.finish()
}

/// exp/log and div/mul within 1e-10 per coefficient on well-conditioned
/// random series; text export bit-exact.
pub fn suite_round_trips(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> SuiteReport {
    let mut t = Tally::new("round_trips", 1e-10);
    let order = 64;
    for case in 0..cfg.random_cases {
        let at = || format!("case {case}");
        let a = random_tame_series(rng, order, false);
        let b = random_tame_series(rng, order, true);
        match a.div(&b) {
            Ok(q) => t.check((&q * &b).max_abs_diff(&a), at),
            Err(e) => t.error(e, at),
        }
        match b.log() {
            Ok(l) => t.check(l.exp().max_abs_diff(&b), at),
            Err(e) => t.error(e, at),
        }
        let mut c = a.clone().into_coeffs();
        c[0] = Complex64::new(0.0, 0.0);
        let c = ComplexSeries::new(c);
        match c.exp().log() {
            Ok(l) => t.check(l.max_abs_diff(&c), at),
            Err(e) => t.error(e, at),
        }
        match ComplexSeries::from_text(&a.to_text()) {
            Ok(back) => t.check(if back == a { 0.0 } else { f64::INFINITY }, at),
            Err(e) => t.error(e, at),
        }
    }
    t.finish()
}

//! The five commands. Each returns a [`Table`]; `plot` can also return SVG.

use rayon::prelude::*;
use schwarzian_lab::verify::default_params;
use schwarzian_lab::{
    closed_form_p_f0, closed_form_s_f0, estimate_norm, h_gate, pointwise_bound,
    preschwarzian_norm_bound, preschwarzian_series, radial_profile, run_verify,
    schwarzian_norm_bound, schwarzian_series, ClassParams, ClosedForm, Complex64, ComplexSeries,
    ExtremalSpec, GridSpec, SeriesFunction, SweepSpec, VerifyConfig, WeightPower,
    DEFAULT_EVAL_CAP,
};
use thiserror::Error;

use crate::args::ConfigError;
use crate::svg;
use crate::table::{Cell, Table};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Lab(#[from] schwarzian_lab::Error),
    #[error("series is not normalized: {0} (pass --skip-normalization to accept it)")]
    NotNormalized(String),
}

/// Parameter grid and overrides shared by all commands.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub z0s: Option<Vec<f64>>,
    pub grid: Option<GridSpec>,
    pub sweep: Option<SweepSpec>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            alphas: vec![0.0],
            betas: vec![0.0],
            z0s: None,
            grid: None,
            sweep: None,
            seed: 0,
        }
    }
}

impl RunConfig {
    /// All `(alpha, beta)` pairs, alpha-major.
    pub fn params(&self) -> Result<Vec<ClassParams>, ConfigError> {
        let mut out = Vec::with_capacity(self.alphas.len() * self.betas.len());
        for &a in &self.alphas {
            for &b in &self.betas {
                out.push(
                    ClassParams::new(a, b).map_err(|e| ConfigError::Invalid(e.to_string()))?,
                );
            }
        }
        Ok(out)
    }
}

pub fn cmd_bounds(cfg: &RunConfig) -> Result<Table, CommandError> {
    let params = cfg.params()?;
    let mut t = Table::new(&[
        "alpha",
        "beta",
        "d",
        "regime",
        "lambda",
        "schwarzian_bound",
        "preschwarzian_bound",
    ]);
    let rows: Vec<Vec<Cell>> = params
        .par_iter()
        .map(|p| {
            vec![
                p.alpha().into(),
                p.beta().into(),
                p.d().into(),
                p.regime().as_str().into(),
                p.lambda().into(),
                schwarzian_norm_bound(p).into(),
                preschwarzian_norm_bound(p).into(),
            ]
        })
        .collect();
    for r in rows {
        t.push(r);
    }
    Ok(t)
}

pub const DEFAULT_SHARPNESS_Z0: [f64; 5] = [0.0, 0.5, 0.9, 0.99, 0.999];

/// Weighted `|S|` of the witness at each `z0`: `f_{z0}` where `h(|z0|) > 0`,
/// else `f_0`. With `series_order`, also the value from the series pipeline
/// (evaluated only where `|z0|` is within the series cap).
pub fn cmd_sharpness(cfg: &RunConfig, series_order: Option<usize>) -> Result<Table, CommandError> {
    let params = cfg.params()?;
    let z0s = cfg.z0s.clone().unwrap_or_else(|| DEFAULT_SHARPNESS_Z0.to_vec());
    for &z in &z0s {
        if !(z > -1.0 && z < 1.0) {
            return Err(ConfigError::Invalid(format!("z0 = {z} must lie in (-1, 1)")).into());
        }
    }
    let mut cols = vec![
        "alpha",
        "beta",
        "z0",
        "witness",
        "weighted_s",
        "bound",
        "ratio",
        "pointwise_ratio",
    ];
    if series_order.is_some() {
        cols.push("series_weighted_s");
    }
    cols.push("error");
    let jobs: Vec<(ClassParams, f64)> = params
        .iter()
        .flat_map(|p| z0s.iter().map(move |&z| (*p, z)))
        .collect();
    let rows: Vec<Vec<Cell>> = jobs
        .par_iter()
        .map(|&(p, z0)| sharpness_row(p, z0, series_order))
        .collect();
    let mut t = Table::new(&cols);
    for r in rows {
        t.push(r);
    }
    Ok(t)
}

fn sharpness_row(p: ClassParams, z0: f64, series_order: Option<usize>) -> Vec<Cell> {
    let bound = schwarzian_norm_bound(&p);
    let weight = (1.0 - z0 * z0).powi(2);
    let blaschke = h_gate(&p, z0.abs()) > 0.0;
    let spec = if blaschke {
        ExtremalSpec::blaschke(z0, p)
    } else {
        Ok(ExtremalSpec::half_plane(p))
    };
    let witness = if blaschke { "f_z0" } else { "f_0" };
    let z = Complex64::new(z0, 0.0);
    let value = spec.and_then(|s| s.schwarzian_closed(z).map(|v| (s, v.norm())));
    let mut row: Vec<Cell> = vec![p.alpha().into(), p.beta().into(), z0.into(), witness.into()];
    match value {
        Ok((spec, s)) => {
            let pw = pointwise_bound(&p, z0.abs()).map(|b| s / b.value).ok();
            row.extend([
                (weight * s).into(),
                bound.into(),
                (weight * s / bound).into(),
                pw.into(),
            ]);
            let mut err = None;
            if let Some(n) = series_order {
                let series = (z0.abs() <= DEFAULT_EVAL_CAP)
                    .then(|| {
                        spec.extremal_series(n)
                            .and_then(|f| schwarzian_series(&f))
                            .and_then(|s| s.eval(z))
                    })
                    .transpose();
                match series {
                    Ok(v) => row.push(v.map(|v| weight * v.norm()).into()),
                    Err(e) => {
                        row.push(Cell::Empty);
                        err = Some(e.to_string());
                    }
                }
            }
            row.push(err.into());
        }
        Err(e) => {
            row.extend([Cell::Empty, bound.into(), Cell::Empty, Cell::Empty]);
            if series_order.is_some() {
                row.push(Cell::Empty);
            }
            row.push(e.to_string().into());
        }
    }
    row
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifyOptions {
    /// Random cases per randomized suite; `None` keeps the library default.
    pub cases: Option<usize>,
    /// Fault injection: added to every Blaschke parameter `b`.
    pub perturb_b: Option<f64>,
    /// Use the built-in parameter sample instead of `cfg.alphas x cfg.betas`.
    pub default_params: bool,
}

/// Runs the suites. Returns the report table and whether every suite passed.
pub fn cmd_verify(cfg: &RunConfig, opts: &VerifyOptions) -> Result<(Table, bool), CommandError> {
    let params = if opts.default_params {
        default_params()
    } else {
        cfg.params()?
    };
    let mut vc = VerifyConfig::new(params, cfg.z0s.clone().unwrap_or_else(|| vec![0.5, 0.9]));
    vc.seed = cfg.seed;
    if let Some(s) = cfg.sweep {
        vc.sweep = s;
    }
    if let Some(g) = cfg.grid {
        g.validate(DEFAULT_EVAL_CAP)?;
        vc.membership_grid = g;
    }
    if let Some(n) = opts.cases {
        vc.random_cases = n;
    }
    vc.b_perturbation = opts.perturb_b;
    let report = run_verify(&vc);
    let mut t = Table::new(&["suite", "passed", "checks", "failures", "worst", "tolerance", "note"]);
    for s in &report.suites {
        t.push(vec![
            s.name.into(),
            s.passed().into(),
            s.checks.into(),
            s.failures.into(),
            if s.checks == 0 { Cell::Empty } else { s.worst.into() },
            s.tolerance.into(),
            s.note.clone().into(),
        ]);
    }
    Ok((t, report.all_passed()))
}

/// Norms of a series given in the text format: `order N`, then `n re im`.
pub fn cmd_norm(
    text: &str,
    grid: Option<GridSpec>,
    skip_normalization: bool,
) -> Result<Table, CommandError> {
    let f = ComplexSeries::from_text(text)?;
    if f.coeff(1) == Complex64::new(0.0, 0.0) {
        return Err(schwarzian_lab::Error::NotLocallyUnivalentAtOrigin.into());
    }
    if !skip_normalization {
        let (c0, c1) = (f.coeff(0), f.coeff(1));
        if c0.norm() > 1e-12 || (c1 - 1.0).norm() > 1e-12 {
            return Err(CommandError::NotNormalized(format!("c0 = {c0}, c1 = {c1}")));
        }
    }
    let grid = grid.unwrap_or_else(|| GridSpec::norm_default(DEFAULT_EVAL_CAP));
    let pre = SeriesFunction::new(preschwarzian_series(&f)?);
    let s = SeriesFunction::new(schwarzian_series(&f)?);
    let mut t = Table::new(&[
        "quantity",
        "weight_power",
        "value",
        "argmax_re",
        "argmax_im",
        "n_angles",
        "n_radii",
        "r_cap",
        "refinement_iters",
        "refined",
        "truncation_note",
    ]);
    for (name, func, w) in [
        ("preschwarzian", &pre, WeightPower::One),
        ("schwarzian", &s, WeightPower::Two),
    ] {
        let e = estimate_norm(func, w, &grid)?;
        t.push(vec![
            name.into(),
            (w.exponent() as usize).into(),
            e.value.into(),
            e.argmax.re.into(),
            e.argmax.im.into(),
            e.grid.n_angles.into(),
            e.grid.n_radii.into(),
            e.grid.r_cap.into(),
            e.grid.refinement_iters.into(),
            e.refined.into(),
            e.truncation_note.into(),
        ]);
    }
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotKind {
    /// Norm bound over the `(alpha, beta)` grid.
    Surface,
    /// Weighted `|S_f0|` or `|P_f0|` along a ray.
    Radial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Schwarzian,
    Preschwarzian,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlotOptions {
    pub kind: PlotKind,
    pub quantity: Quantity,
    pub axis_angle: f64,
    pub points: usize,
}

impl Default for PlotOptions {
    fn default() -> Self {
        Self {
            kind: PlotKind::Surface,
            quantity: Quantity::Schwarzian,
            axis_angle: 0.0,
            points: 200,
        }
    }
}

pub struct PlotOutput {
    pub table: Table,
    pub svg: String,
}

pub fn cmd_plot(cfg: &RunConfig, opts: &PlotOptions) -> Result<PlotOutput, CommandError> {
    match opts.kind {
        PlotKind::Surface => plot_surface(cfg, opts.quantity),
        PlotKind::Radial => plot_radial(cfg, opts),
    }
}

fn plot_surface(cfg: &RunConfig, q: Quantity) -> Result<PlotOutput, CommandError> {
    let bound = |p: &ClassParams| match q {
        Quantity::Schwarzian => schwarzian_norm_bound(p),
        Quantity::Preschwarzian => preschwarzian_norm_bound(p),
    };
    let params = cfg.params()?;
    let values: Vec<f64> = params.par_iter().map(bound).collect();
    let mut t = Table::new(&["alpha", "beta", "value"]);
    for (p, v) in params.iter().zip(&values) {
        t.push(vec![p.alpha().into(), p.beta().into(), (*v).into()]);
    }
    let title = match q {
        Quantity::Schwarzian => "Schwarzian norm bound",
        Quantity::Preschwarzian => "pre-Schwarzian norm bound",
    };
    let svg = svg::heatmap(&cfg.alphas, &cfg.betas, &values, title);
    Ok(PlotOutput { table: t, svg })
}

fn plot_radial(cfg: &RunConfig, opts: &PlotOptions) -> Result<PlotOutput, CommandError> {
    let p = cfg
        .params()?
        .first()
        .copied()
        .ok_or_else(|| ConfigError::Invalid("radial plot needs one (alpha, beta)".into()))?;
    let (profile, level, label) = match opts.quantity {
        Quantity::Schwarzian => {
            let f = ClosedForm::new(|z| Ok(closed_form_s_f0(z, &p)));
            let a = p.a();
            (
                radial_profile(&f, WeightPower::Two, opts.axis_angle, opts.points)?,
                2.0 * (a * a - 1.0).norm(),
                "(1-r^2)^2 |S_f0|",
            )
        }
        Quantity::Preschwarzian => {
            let f = ClosedForm::new(|z| Ok(closed_form_p_f0(z, &p)));
            (
                radial_profile(&f, WeightPower::One, opts.axis_angle, opts.points)?,
                preschwarzian_norm_bound(&p),
                "(1-r^2) |P_f0|",
            )
        }
    };
    let mut t = Table::new(&["r", "value"]);
    for &(r, v) in &profile {
        t.push(vec![r.into(), v.into()]);
    }
    let title = format!(
        "{label}, alpha={}, beta={}",
        crate::table::fmt_num(p.alpha()),
        crate::table::fmt_num(p.beta())
    );
    let svg = svg::line_plot(&profile, Some(level), &title);
    Ok(PlotOutput { table: t, svg })
}

//! Parsers for flag values: angles, inclusive ranges, grid and sweep specs.

use std::f64::consts::PI;

use schwarzian_lab::{GridSpec, SweepSpec};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("invalid number `{0}`")]
    Number(String),
    #[error("invalid range `{0}`: expected a:b:step")]
    RangeSyntax(String),
    #[error("range step must be positive, got {0}")]
    RangeStep(String),
    #[error("range `{0}` has more than {1} points")]
    RangeTooLong(String, usize),
    #[error("invalid grid `{0}`: expected angles,radii,rcap,refine")]
    Grid(String),
    #[error("invalid sweep `{0}`: expected m,p,q")]
    Sweep(String),
    #[error("{0}")]
    Invalid(String),
}

const MAX_RANGE_POINTS: usize = 1_000_000;

fn number(s: &str) -> Result<f64, ConfigError> {
    let t = s.trim();
    t.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| ConfigError::Number(t.to_string()))
}

/// An angle in radians. Accepts a `deg` or `rad` suffix; a bare number is
/// taken as radians.
pub fn parse_angle(s: &str) -> Result<f64, ConfigError> {
    let t = s.trim();
    if let Some(v) = t.strip_suffix("deg") {
        Ok(number(v)? * PI / 180.0)
    } else if let Some(v) = t.strip_suffix("rad") {
        number(v)
    } else {
        number(t)
    }
}

pub fn parse_real(s: &str) -> Result<f64, ConfigError> {
    number(s)
}

/// Inclusive `a:b:step` range with the given element parser. `a > b` gives
/// an empty list. Points are `a + k step`, so there is no accumulated drift.
pub fn parse_range(
    s: &str,
    elem: impl Fn(&str) -> Result<f64, ConfigError>,
) -> Result<Vec<f64>, ConfigError> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, step] = parts[..] else {
        return Err(ConfigError::RangeSyntax(s.to_string()));
    };
    let (a, b, step) = (elem(a)?, elem(b)?, elem(step)?);
    if !(step > 0.0) {
        return Err(ConfigError::RangeStep(format!("{step}")));
    }
    if a > b {
        return Ok(Vec::new());
    }
    let span = (b - a) / step;
    // tolerate b landing a hair past the last step
    let n = (span + 1e-9).floor();
    if n >= MAX_RANGE_POINTS as f64 {
        return Err(ConfigError::RangeTooLong(s.to_string(), MAX_RANGE_POINTS));
    }
    let n = n as usize;
    Ok((0..=n).map(|k| if k == n && (a + k as f64 * step - b).abs() <= 1e-9 * step {
        b
    } else {
        a + k as f64 * step
    })
    .collect())
}

/// A single value, a comma list, or an `a:b:step` range.
pub fn parse_values(
    s: &str,
    elem: impl Fn(&str) -> Result<f64, ConfigError>,
) -> Result<Vec<f64>, ConfigError> {
    if s.contains(':') {
        parse_range(s, elem)
    } else {
        s.split(',').map(elem).collect()
    }
}

/// `angles,radii,rcap,refine`.
pub fn parse_grid(s: &str) -> Result<GridSpec, ConfigError> {
    let err = || ConfigError::Grid(s.to_string());
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, r, cap, refine] = parts[..] else {
        return Err(err());
    };
    let grid = GridSpec::new(
        a.parse().map_err(|_| err())?,
        r.parse().map_err(|_| err())?,
        cap.parse().map_err(|_| err())?,
        refine.parse().map_err(|_| err())?,
    );
    if grid.n_angles == 0 || grid.n_radii == 0 || !(grid.r_cap > 0.0 && grid.r_cap < 1.0) {
        return Err(err());
    }
    Ok(grid)
}

/// `m,p,q`: moduli, w-phases, omega'-phases.
pub fn parse_sweep(s: &str) -> Result<SweepSpec, ConfigError> {
    let err = || ConfigError::Sweep(s.to_string());
    let parts: Vec<usize> = s
        .split(',')
        .map(|v| v.trim().parse().map_err(|_| err()))
        .collect::<Result<_, _>>()?;
    let [m, p, q] = parts[..] else {
        return Err(err());
    };
    if m < 2 || p == 0 || q == 0 {
        return Err(err());
    }
    Ok(SweepSpec::new(m, p, q))
}

//! Efficiency at maximum work: scan the heating field for the point where
//! the work output peaks, and report the efficiency there.

use crate::analytic::{analytic_eta, analytic_work};
use crate::cycle::run_otto;
use crate::error::{Error, Result};
use crate::model::{critical_field, ModelParams};

use rayon::prelude::*;

/// Points in the coarse bracketing scan.
pub const COARSE_GRID: usize = 129;
/// Golden-section stops when the bracket shrinks below this fraction of the
/// search interval.
pub const REFINE_TOL: f64 = 1e-6;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// How the work objective is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    /// Full numerics through `run_otto`.
    Numeric,
    /// The closed-form expression (valid for `k -> 0`, `j2 = 0`).
    Analytic,
}

/// Result of one work maximization over the heating field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WmaxResult {
    pub b_high_star: f64,
    pub w_max: f64,
    pub eta_at_wmax: f64,
    /// `b_low / b_high_star`.
    pub ratio: f64,
    /// Set when the maximum sits at a search-interval endpoint.
    pub boundary: bool,
}

/// Default search interval for the heating field:
/// `lo = max(b_low, j1/2) + 1e-6`, `hi = 10 * max(b_low, j1, t_hot)`.
pub fn default_search_interval(b_low: f64, j1: f64, t_hot: f64) -> (f64, f64) {
    let lo = b_low.max(critical_field(j1)) + 1e-6;
    let hi = 10.0 * b_low.max(j1).max(t_hot);
    (lo, hi)
}

fn work_at(p: &ModelParams, b_high: f64, mode: EvalMode) -> Result<f64> {
    match mode {
        EvalMode::Numeric => {
            let r = run_otto(&ModelParams { b_high, ..*p })?;
            Ok(r.w_net)
        }
        EvalMode::Analytic => analytic_work(p.j1, b_high, p.b_low, p.t_hot),
    }
}

fn eta_at(p: &ModelParams, b_high: f64, mode: EvalMode) -> Result<f64> {
    match mode {
        EvalMode::Numeric => {
            let r = run_otto(&ModelParams { b_high, ..*p })?;
            Ok(r.eta.unwrap_or(f64::NAN))
        }
        EvalMode::Analytic => analytic_eta(p.j1, b_high, p.b_low, p.t_hot),
    }
}

/// Locate the heating field maximizing the work output on `[lo, hi]` for
/// fixed `(b_low, j1, t_hot, ...)` taken from `p` (its `b_high` is ignored).
///
/// A coarse inclusive scan over [`COARSE_GRID`] points brackets the best
/// point first (the work curve is only empirically unimodal); golden-section
/// refinement then shrinks the bracket to `REFINE_TOL * (hi - lo)`. A
/// maximum on an interval endpoint is returned as-is with `boundary` set.
pub fn maximize_work_over_bh(
    p: &ModelParams,
    lo: f64,
    hi: f64,
    mode: EvalMode,
) -> Result<WmaxResult> {
    if hi.is_nan() || lo.is_nan() || hi <= lo {
        return Err(Error::EmptyInterval);
    }
    let floor = p.b_low.max(critical_field(p.j1));
    if lo < floor - 1e-9 {
        return Err(Error::InvalidParams(format!(
            "search interval must start at or above max(b_low, j1/2) = {floor}, got lo = {lo}"
        )));
    }

    let grid: Vec<f64> = (0..COARSE_GRID)
        .map(|i| {
            if i == COARSE_GRID - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (COARSE_GRID - 1) as f64
            }
        })
        .collect();
    let works: Vec<f64> = grid
        .par_iter()
        .map(|&x| work_at(p, x, mode))
        .collect::<Result<_>>()?;

    let best = works
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("coarse grid is non-empty");
    if works[best] <= 0.0 {
        return Err(Error::NoPositiveWork);
    }

    let (mut x_star, mut w_star) = (grid[best], works[best]);
    let boundary = best == 0 || best == COARSE_GRID - 1;
    if !boundary {
        // golden-section refinement inside the bracketing neighbors
        let mut a = grid[best - 1];
        let mut b = grid[best + 1];
        let tol = REFINE_TOL * (hi - lo);
        let mut c = b - INV_PHI * (b - a);
        let mut d = a + INV_PHI * (b - a);
        let mut fc = work_at(p, c, mode)?;
        let mut fd = work_at(p, d, mode)?;
        while b - a > tol {
            if fc > fd {
                b = d;
                d = c;
                fd = fc;
                c = b - INV_PHI * (b - a);
                fc = work_at(p, c, mode)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + INV_PHI * (b - a);
                fd = work_at(p, d, mode)?;
            }
        }
        let x = 0.5 * (a + b);
        let w = work_at(p, x, mode)?;
        if w > w_star {
            x_star = x;
            w_star = w;
        }
    }

    Ok(WmaxResult {
        b_high_star: x_star,
        w_max: w_star,
        eta_at_wmax: eta_at(p, x_star, mode)?,
        ratio: p.b_low / x_star,
        boundary,
    })
}

/// One work maximization per `b_low` grid point, every other parameter held
/// at `base`. Each point uses [`default_search_interval`] unless `search`
/// overrides it. Grid points are independent and evaluated in parallel.
pub fn eta_wmax_curve(
    base: &ModelParams,
    b_low_grid: &[f64],
    search: Option<(f64, f64)>,
    mode: EvalMode,
) -> Result<Vec<WmaxResult>> {
    for &bl in b_low_grid {
        if bl < critical_field(base.j1) {
            return Err(Error::OutOfEngineDomain(format!(
                "b_low = {bl} is below the critical field {}",
                critical_field(base.j1)
            )));
        }
    }
    b_low_grid
        .par_iter()
        .map(|&bl| {
            let p = ModelParams { b_low: bl, ..*base };
            let (lo, hi) = search.unwrap_or_else(|| default_search_interval(bl, p.j1, p.t_hot));
            maximize_work_over_bh(&p, lo, hi, mode)
        })
        .collect()
}

//! Single-axis parameter sweeps, the figure presets, and flat-record
//! serialization.
//!
//! Sweeps are referentially transparent: rows are pure functions of the
//! spec, evaluated independently (in parallel) and assembled in grid order,
//! so repeated runs yield byte-identical CSV.

use crate::cycle::{run_otto, CycleResult};
use crate::error::{Error, Result};
use crate::model::{MeasureBasis, ModelParams};
use crate::optimize::WmaxResult;

use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Column order of the sweep CSV output.
pub const CSV_HEADER: &str =
    "axis,b_low,b_high,j1,j2,k,omega,t_hot,measure,q_hot,w1,q_cold,w2,w_net,eta,s_vn,regime,error";

/// Column order of the work-maximization CSV output.
pub const WMAX_CSV_HEADER: &str =
    "b_low,b_high_star,w_max,eta_wmax,ratio,one_minus_ratio,one_minus_sqrt_ratio";

/// Which parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    BLow,
    BHigh,
    J1,
    J2,
    K,
    THot,
}

impl SweepAxis {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepAxis::BLow => "b_low",
            SweepAxis::BHigh => "b_high",
            SweepAxis::J1 => "j1",
            SweepAxis::J2 => "j2",
            SweepAxis::K => "k",
            SweepAxis::THot => "t_hot",
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepAxis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "b_low" | "bl" => Ok(SweepAxis::BLow),
            "b_high" | "bh" => Ok(SweepAxis::BHigh),
            "j1" => Ok(SweepAxis::J1),
            "j2" => Ok(SweepAxis::J2),
            "k" => Ok(SweepAxis::K),
            "t_hot" | "th" => Ok(SweepAxis::THot),
            other => Err(Error::InvalidParams(format!(
                "unknown sweep axis {other:?}"
            ))),
        }
    }
}

/// Constraint applied after the axis value is assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingRule {
    /// Pin the exhaust field to the critical point: `b_low = j1 / 2`.
    CriticalBLow,
}

impl FromStr for CouplingRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "critical" => Ok(CouplingRule::CriticalBLow),
            other => Err(Error::InvalidParams(format!("unknown rule {other:?}"))),
        }
    }
}

/// One swept axis over a fixed base configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: ModelParams,
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub rule: Option<CouplingRule>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::InvalidParams(format!(
                "a sweep needs at least 2 steps, got {}",
                self.steps
            )));
        }
        if self.start == self.stop {
            return Err(Error::InvalidParams(
                "sweep start and stop must differ".into(),
            ));
        }
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(Error::InvalidParams("sweep bounds must be finite".into()));
        }
        Ok(())
    }

    /// Linearly spaced axis values, inclusive of both endpoints.
    pub fn grid(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.steps)
    }

    /// Base parameters with the axis value assigned and the coupling rule
    /// applied afterwards.
    pub fn params_at(&self, x: f64) -> ModelParams {
        let mut p = self.base;
        match self.axis {
            SweepAxis::BLow => p.b_low = x,
            SweepAxis::BHigh => p.b_high = x,
            SweepAxis::J1 => p.j1 = x,
            SweepAxis::J2 => p.j2 = x,
            SweepAxis::K => p.k = x,
            SweepAxis::THot => p.t_hot = x,
        }
        if let Some(CouplingRule::CriticalBLow) = self.rule {
            p.b_low = p.j1 / 2.0;
        }
        p
    }
}

pub fn linspace(start: f64, stop: f64, steps: usize) -> Vec<f64> {
    assert!(steps >= 2);
    (0..steps)
        .map(|i| {
            if i == steps - 1 {
                stop
            } else {
                start + (stop - start) * i as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

/// Flat record for one grid point. Numeric result fields are `None` (empty
/// CSV fields, JSON `null`) when the cycle errored; the message lands in
/// `error` and the sweep continues.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub axis: &'static str,
    pub b_low: f64,
    pub b_high: f64,
    pub j1: f64,
    pub j2: f64,
    pub k: f64,
    pub omega: f64,
    pub t_hot: f64,
    pub measure: MeasureBasis,
    pub q_hot: Option<f64>,
    pub w1: Option<f64>,
    pub q_cold: Option<f64>,
    pub w2: Option<f64>,
    pub w_net: Option<f64>,
    pub eta: Option<f64>,
    pub s_vn: Option<f64>,
    pub regime: String,
    pub error: String,
}

impl SweepRow {
    fn new(axis: SweepAxis, p: &ModelParams, outcome: Result<CycleResult>) -> Self {
        let mut row = SweepRow {
            axis: axis.as_str(),
            b_low: p.b_low,
            b_high: p.b_high,
            j1: p.j1,
            j2: p.j2,
            k: p.k,
            omega: p.omega,
            t_hot: p.t_hot,
            measure: p.measure,
            q_hot: None,
            w1: None,
            q_cold: None,
            w2: None,
            w_net: None,
            eta: None,
            s_vn: None,
            regime: String::new(),
            error: String::new(),
        };
        match outcome {
            Ok(r) => {
                row.q_hot = Some(r.q_hot);
                row.w1 = Some(r.w1);
                row.q_cold = Some(r.q_cold);
                row.w2 = Some(r.w2);
                row.w_net = Some(r.w_net);
                row.eta = r.eta;
                row.s_vn = Some(r.entropy_heating);
                row.regime = r.regime.to_string();
                if let Some(note) = p.field_order_note() {
                    row.error = note.to_string();
                }
            }
            Err(e) => {
                // commas would break the flat CSV layout
                row.error = e.to_string().replace(',', ";");
            }
        }
        row
    }
}

/// Evaluate the single grid point `axis_value`. Errors are captured in the
/// row, never raised.
pub fn evaluate_row(spec: &SweepSpec, axis_value: f64) -> SweepRow {
    let p = spec.params_at(axis_value);
    SweepRow::new(spec.axis, &p, run_otto(&p))
}

/// Run the whole sweep. Rows are independent pure calls evaluated in
/// parallel; output order follows the grid regardless of scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    Ok(spec
        .grid()
        .par_iter()
        .map(|&x| evaluate_row(spec, x))
        .collect())
}

/// The figure presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig2a,
    Fig2b,
    Fig3a,
    Fig3b,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9a,
    Fig9b,
    Fig10a,
    Fig10b,
}

impl FigureId {
    pub const ALL: [FigureId; 13] = [
        FigureId::Fig2a,
        FigureId::Fig2b,
        FigureId::Fig3a,
        FigureId::Fig3b,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
        FigureId::Fig8,
        FigureId::Fig9a,
        FigureId::Fig9b,
        FigureId::Fig10a,
        FigureId::Fig10b,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FigureId::Fig2a => "fig2a",
            FigureId::Fig2b => "fig2b",
            FigureId::Fig3a => "fig3a",
            FigureId::Fig3b => "fig3b",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
            FigureId::Fig8 => "fig8",
            FigureId::Fig9a => "fig9a",
            FigureId::Fig9b => "fig9b",
            FigureId::Fig10a => "fig10a",
            FigureId::Fig10b => "fig10b",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .iter()
            .find(|id| id.as_str() == s.to_ascii_lowercase())
            .copied()
            .ok_or_else(|| Error::UnknownFigure(s.to_string()))
    }
}

/// A preset resolves to either a plain sweep or a work-maximization curve.
#[derive(Debug, Clone, PartialEq)]
pub enum FigureJob {
    Sweep(SweepSpec),
    /// One work maximization per `b_low`, everything else from `base`.
    WmaxCurve {
        base: ModelParams,
        b_low_grid: Vec<f64>,
    },
}

/// Parameter sets behind each figure preset, all built on the baseline
/// configuration (B_H = 10, J1 = J2 = 10, k = 0.1, omega = 1, T_H = 3.5).
///
/// Sweeps of `b_low` above the level crossing start at `critical + 0.05`;
/// the preset families that would overlay several curves ship one
/// representative each: fig7 uses J2 = 0 and the fig9 panels use k = 0.2.
pub fn figure_preset(id: FigureId) -> FigureJob {
    let base = ModelParams::default();
    let sweep = |base, axis, start, stop, steps, rule| {
        FigureJob::Sweep(SweepSpec {
            base,
            axis,
            start,
            stop,
            steps,
            rule,
        })
    };
    match id {
        // heat and work across the exhaust field, measured in |E1>
        FigureId::Fig2a => sweep(base, SweepAxis::BLow, 5.05, 10.0, 100, None),
        // same sweep below the critical point, measured in |E3>
        FigureId::Fig2b => sweep(
            ModelParams {
                measure: MeasureBasis::E3,
                ..base
            },
            SweepAxis::BLow,
            0.05,
            4.95,
            100,
            None,
        ),
        // efficiency (and the work-efficiency parametric view) over b_low
        FigureId::Fig3a | FigureId::Fig3b => sweep(base, SweepAxis::BLow, 5.05, 10.0, 100, None),
        // heat and work across the heating field at b_low = 6
        FigureId::Fig4 => sweep(base, SweepAxis::BHigh, 6.05, 20.0, 100, None),
        // efficiency and entropy against the internal coupling, weak ancilla
        FigureId::Fig5 => sweep(
            ModelParams { j2: 0.1, ..base },
            SweepAxis::J1,
            0.0,
            10.0,
            101,
            None,
        ),
        // critical-point sweeps: b_low pinned to j1/2
        FigureId::Fig6 => sweep(
            base,
            SweepAxis::J1,
            0.1,
            10.0,
            100,
            Some(CouplingRule::CriticalBLow),
        ),
        FigureId::Fig7 => sweep(
            ModelParams { j2: 0.0, ..base },
            SweepAxis::J1,
            0.1,
            10.0,
            100,
            Some(CouplingRule::CriticalBLow),
        ),
        FigureId::Fig8 => sweep(
            ModelParams { b_low: 5.0, ..base },
            SweepAxis::J2,
            0.0,
            10.0,
            251,
            None,
        ),
        // Lamb-Dicke variation of the spin-phonon coupling
        FigureId::Fig9a => sweep(
            ModelParams { k: 0.2, ..base },
            SweepAxis::BLow,
            5.05,
            10.0,
            100,
            None,
        ),
        FigureId::Fig9b => sweep(
            ModelParams { k: 0.2, ..base },
            SweepAxis::BHigh,
            6.05,
            20.0,
            100,
            None,
        ),
        // efficiency at maximum work against b_low/b_high*
        FigureId::Fig10a => FigureJob::WmaxCurve {
            base: ModelParams { j1: 1.0, ..base },
            b_low_grid: linspace(0.7, 10.0, 25),
        },
        FigureId::Fig10b => FigureJob::WmaxCurve {
            base: ModelParams { j1: 10.0, ..base },
            b_low_grid: linspace(6.0, 20.0, 25),
        },
    }
}

/// Format a real with 12 significant digits (scientific notation), the
/// resolution every CSV column carries.
pub fn fmt_sig(x: f64) -> String {
    format!("{x:.11e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_sig).unwrap_or_default()
}

/// Serialize sweep rows as CSV: fixed header, one line per row, reals at 12
/// significant digits, undefined efficiency as an empty field, regime as a
/// lowercase word.
pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.axis,
            fmt_sig(r.b_low),
            fmt_sig(r.b_high),
            fmt_sig(r.j1),
            fmt_sig(r.j2),
            fmt_sig(r.k),
            fmt_sig(r.omega),
            fmt_sig(r.t_hot),
            r.measure,
            fmt_opt(r.q_hot),
            fmt_opt(r.w1),
            fmt_opt(r.q_cold),
            fmt_opt(r.w2),
            fmt_opt(r.w_net),
            fmt_opt(r.eta),
            fmt_opt(r.s_vn),
            r.regime,
            r.error,
        ));
    }
    out
}

/// Sweep rows as a flat JSON array with the CSV field names.
pub fn to_json(rows: &[SweepRow]) -> String {
    serde_json::to_string_pretty(rows).expect("sweep rows serialize infallibly")
}

/// Flat record for one work-maximization grid point, with the two reference
/// curves for comparison plotting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WmaxRow {
    pub b_low: f64,
    pub b_high_star: f64,
    pub w_max: f64,
    pub eta_wmax: f64,
    pub ratio: f64,
    pub one_minus_ratio: f64,
    pub one_minus_sqrt_ratio: f64,
}

pub fn wmax_rows(grid: &[f64], results: &[WmaxResult]) -> Vec<WmaxRow> {
    grid.iter()
        .zip(results.iter())
        .map(|(&b_low, r)| WmaxRow {
            b_low,
            b_high_star: r.b_high_star,
            w_max: r.w_max,
            eta_wmax: r.eta_at_wmax,
            ratio: r.ratio,
            one_minus_ratio: 1.0 - r.ratio,
            one_minus_sqrt_ratio: 1.0 - r.ratio.sqrt(),
        })
        .collect()
}

pub fn wmax_to_csv(rows: &[WmaxRow]) -> String {
    let mut out = String::from(WMAX_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt_sig(r.b_low),
            fmt_sig(r.b_high_star),
            fmt_sig(r.w_max),
            fmt_sig(r.eta_wmax),
            fmt_sig(r.ratio),
            fmt_sig(r.one_minus_ratio),
            fmt_sig(r.one_minus_sqrt_ratio),
        ));
    }
    out
}

pub fn wmax_to_json(rows: &[WmaxRow]) -> String {
    serde_json::to_string_pretty(rows).expect("wmax rows serialize infallibly")
}

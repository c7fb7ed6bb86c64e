//! Command-line front end: single cycles, sweeps, figure presets, work
//! maximization, and the built-in verification suite.

use std::collections::HashMap;
use std::path::PathBuf;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use qotto::optimize::{eta_wmax_curve, EvalMode};
use qotto::sweep::{
    figure_preset, fmt_sig, linspace, run_sweep, to_csv, to_json, wmax_rows, wmax_to_csv,
    wmax_to_json, CouplingRule, FigureId, FigureJob, SweepAxis, SweepSpec,
};
use qotto::{run_otto, MeasureBasis, ModelParams};

#[derive(Parser)]
#[command(
    name = "qotto",
    version,
    about = "Measurement-based quantum Otto engine on a two-ion working substance",
    long_about = "Simulates the four-stroke cycle of two exchange-coupled trapped ions with an \
                  ancilla ion and a truncated phonon mode. Heating thermalizes the full \
                  sixteen-level system; cooling is a projective measurement. Units: hbar = k_B = 1.\n\
                  \n\
                  Unspecified parameters default to the baseline configuration \
                  B_H=10, B_L=6, J1=J2=10, k=0.1, omega=1, T_H=3.5, measurement in E1."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one engine cycle and print every result field
    Cycle {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep one parameter axis and emit one flat record per grid point
    Sweep {
        /// Axis and grid, e.g. b_low=5.05:10:100; the axis is one of
        /// b_low, b_high, j1, j2, k, t_hot
        #[arg(long, value_name = "AXIS=START:STOP:STEPS")]
        sweep: String,
        /// Coupling rule applied after axis assignment; `critical` pins
        /// b_low = j1/2
        #[arg(long, value_name = "RULE")]
        rule: Option<String>,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Emit the data behind a built-in figure preset
    Figure {
        /// One of: fig2a fig2b fig3a fig3b fig4 fig5 fig6 fig7 fig8 fig9a
        /// fig9b fig10a fig10b
        id: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Efficiency at maximum work: scan b_high for each b_low grid point
    Optimize {
        /// Exhaust-field grid, e.g. 6:20:25 (start:stop:steps)
        #[arg(long = "bl-grid", value_name = "START:STOP:STEPS")]
        bl_grid: String,
        /// Heating-field search interval; defaults to
        /// max(b_low, j1/2)+1e-6 .. 10*max(b_low, j1, t_hot)
        #[arg(long, value_name = "LO:HI")]
        search: Option<String>,
        /// Evaluate the work from the weak-coupling closed form instead of
        /// the full numerics
        #[arg(long)]
        analytic: bool,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the built-in verification suite (exit code 2 on any failure)
    Selftest,
}

#[derive(Args)]
struct ParamArgs {
    /// Magnetic field during the heating stroke (B_H)
    #[arg(long)]
    bh: Option<f64>,
    /// Magnetic field after the adiabatic expansion (B_L)
    #[arg(long)]
    bl: Option<f64>,
    /// Exchange coupling between the two working-substance ions (J1)
    #[arg(long)]
    j1: Option<f64>,
    /// Exchange coupling between ion 2 and the ancilla ion (J2)
    #[arg(long)]
    j2: Option<f64>,
    /// Spin-phonon coupling, identical for all three ions
    #[arg(long)]
    k: Option<f64>,
    /// Phonon frequency
    #[arg(long)]
    omega: Option<f64>,
    /// Hot-bath temperature k_B*T_H in energy units
    #[arg(long)]
    th: Option<f64>,
    /// Measurement basis for the cooling stroke: e1 or e3
    #[arg(long)]
    measure: Option<String>,
    /// Plain `key = value` file with the same keys as the flags above;
    /// flags override file values
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    /// Write to this path instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

const CONFIG_KEYS: [&str; 8] = ["bh", "bl", "j1", "j2", "k", "omega", "th", "measure"];

fn read_config(path: &PathBuf) -> Result<HashMap<String, String>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let mut map = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {} is not `key = value`: {line:?}", lineno + 1))?;
        let key = key.trim();
        if !CONFIG_KEYS.contains(&key) {
            return Err(format!(
                "config line {}: unknown key {key:?} (expected one of {})",
                lineno + 1,
                CONFIG_KEYS.join(", ")
            ));
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn resolve_params(args: &ParamArgs) -> Result<ModelParams, String> {
    let cfg = match &args.config {
        Some(path) => read_config(path)?,
        None => HashMap::new(),
    };
    let defaults = ModelParams::default();
    let real = |flag: Option<f64>, key: &str, default: f64| -> Result<f64, String> {
        match flag {
            Some(v) => Ok(v),
            None => match cfg.get(key) {
                Some(s) => s
                    .parse()
                    .map_err(|e| format!("config value for {key} is not a number: {e}")),
                None => Ok(default),
            },
        }
    };
    let measure = match (&args.measure, cfg.get("measure")) {
        (Some(s), _) | (None, Some(s)) => MeasureBasis::from_str(s).map_err(|e| e.to_string())?,
        (None, None) => defaults.measure,
    };
    Ok(ModelParams {
        b_high: real(args.bh, "bh", defaults.b_high)?,
        b_low: real(args.bl, "bl", defaults.b_low)?,
        j1: real(args.j1, "j1", defaults.j1)?,
        j2: real(args.j2, "j2", defaults.j2)?,
        k: real(args.k, "k", defaults.k)?,
        omega: real(args.omega, "omega", defaults.omega)?,
        t_hot: real(args.th, "th", defaults.t_hot)?,
        measure,
    })
}

fn parse_triple(s: &str, what: &str) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("{what} must be <start>:<stop>:<steps>, got {s:?}"));
    }
    let start: f64 = parts[0].parse().map_err(|e| format!("{what} start: {e}"))?;
    let stop: f64 = parts[1].parse().map_err(|e| format!("{what} stop: {e}"))?;
    let steps: usize = parts[2].parse().map_err(|e| format!("{what} steps: {e}"))?;
    Ok((start, stop, steps))
}

fn parse_sweep_flag(s: &str) -> Result<(SweepAxis, f64, f64, usize), String> {
    let (axis, grid) = s
        .split_once('=')
        .ok_or_else(|| format!("--sweep must be <axis>=<start>:<stop>:<steps>, got {s:?}"))?;
    let axis = SweepAxis::from_str(axis.trim()).map_err(|e| e.to_string())?;
    let (start, stop, steps) = parse_triple(grid.trim(), "--sweep grid")?;
    Ok((axis, start, stop, steps))
}

fn emit(output: &OutputArgs, text: &str) -> Result<(), String> {
    match &output.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn fmt_eta(eta: Option<f64>) -> String {
    eta.map(fmt_sig).unwrap_or_default()
}

fn cycle_text(p: &ModelParams, r: &qotto::CycleResult) -> String {
    let pops = |v: [f64; 4]| v.iter().map(|x| fmt_sig(*x)).collect::<Vec<_>>().join(",");
    format!(
        "b_low = {}\nb_high = {}\nj1 = {}\nj2 = {}\nk = {}\nomega = {}\nt_hot = {}\nmeasure = {}\n\
         q_hot = {}\nw1 = {}\nq_cold = {}\nw2 = {}\nw_net = {}\neta = {}\nregime = {}\n\
         pops_hot = {}\npops_cold = {}\ns_vn = {}\n",
        fmt_sig(p.b_low),
        fmt_sig(p.b_high),
        fmt_sig(p.j1),
        fmt_sig(p.j2),
        fmt_sig(p.k),
        fmt_sig(p.omega),
        fmt_sig(p.t_hot),
        p.measure,
        fmt_sig(r.q_hot),
        fmt_sig(r.w1),
        fmt_sig(r.q_cold),
        fmt_sig(r.w2),
        fmt_sig(r.w_net),
        fmt_eta(r.eta),
        r.regime,
        pops(r.pops_hot.as_array()),
        pops(r.pops_cold.as_array()),
        fmt_sig(r.entropy_heating),
    )
}

fn cycle_json(p: &ModelParams, r: &qotto::CycleResult) -> String {
    let v = serde_json::json!({
        "b_low": p.b_low,
        "b_high": p.b_high,
        "j1": p.j1,
        "j2": p.j2,
        "k": p.k,
        "omega": p.omega,
        "t_hot": p.t_hot,
        "measure": p.measure,
        "q_hot": r.q_hot,
        "w1": r.w1,
        "q_cold": r.q_cold,
        "w2": r.w2,
        "w_net": r.w_net,
        "eta": r.eta,
        "regime": r.regime,
        "pops_hot": r.pops_hot.as_array(),
        "pops_cold": r.pops_cold.as_array(),
        "s_vn": r.entropy_heating,
    });
    let mut s = serde_json::to_string_pretty(&v).expect("cycle report serializes infallibly");
    s.push('\n');
    s
}

fn run_cycle(params: &ParamArgs, output: &OutputArgs) -> Result<(), String> {
    let p = resolve_params(params)?;
    let r = run_otto(&p).map_err(|e| e.to_string())?;
    if let Some(note) = p.field_order_note() {
        eprintln!("warning: {note}");
    }
    let text = match output.format {
        Format::Csv => cycle_text(&p, &r),
        Format::Json => cycle_json(&p, &r),
    };
    emit(output, &text)
}

fn run_sweep_cmd(
    sweep: &str,
    rule: Option<&str>,
    params: &ParamArgs,
    output: &OutputArgs,
) -> Result<(), String> {
    let base = resolve_params(params)?;
    let (axis, start, stop, steps) = parse_sweep_flag(sweep)?;
    let rule = rule
        .map(|r| CouplingRule::from_str(r).map_err(|e| e.to_string()))
        .transpose()?;
    let spec = SweepSpec {
        base,
        axis,
        start,
        stop,
        steps,
        rule,
    };
    let rows = run_sweep(&spec).map_err(|e| e.to_string())?;
    let text = match output.format {
        Format::Csv => to_csv(&rows),
        Format::Json => to_json(&rows),
    };
    emit(output, &text)
}

fn run_figure(id: &str, output: &OutputArgs) -> Result<(), String> {
    let id = FigureId::from_str(id).map_err(|e| e.to_string())?;
    let text = match figure_preset(id) {
        FigureJob::Sweep(spec) => {
            let rows = run_sweep(&spec).map_err(|e| e.to_string())?;
            match output.format {
                Format::Csv => to_csv(&rows),
                Format::Json => to_json(&rows),
            }
        }
        FigureJob::WmaxCurve { base, b_low_grid } => {
            let curve = eta_wmax_curve(&base, &b_low_grid, None, EvalMode::Numeric)
                .map_err(|e| e.to_string())?;
            let rows = wmax_rows(&b_low_grid, &curve);
            match output.format {
                Format::Csv => wmax_to_csv(&rows),
                Format::Json => wmax_to_json(&rows),
            }
        }
    };
    emit(output, &text)
}

fn run_optimize(
    bl_grid: &str,
    search: Option<&str>,
    analytic: bool,
    params: &ParamArgs,
    output: &OutputArgs,
) -> Result<(), String> {
    let base = resolve_params(params)?;
    let (start, stop, steps) = parse_triple(bl_grid, "--bl-grid")?;
    if steps < 1 {
        return Err("--bl-grid needs at least one step".into());
    }
    let grid = if steps == 1 {
        vec![start]
    } else {
        linspace(start, stop, steps)
    };
    let search = search
        .map(|s| -> Result<(f64, f64), String> {
            let parts: Vec<&str> = s.split(':').collect();
            if parts.len() != 2 {
                return Err(format!("--search must be <lo>:<hi>, got {s:?}"));
            }
            let lo: f64 = parts[0].parse().map_err(|e| format!("--search lo: {e}"))?;
            let hi: f64 = parts[1].parse().map_err(|e| format!("--search hi: {e}"))?;
            Ok((lo, hi))
        })
        .transpose()?;
    let mode = if analytic {
        EvalMode::Analytic
    } else {
        EvalMode::Numeric
    };
    let curve = eta_wmax_curve(&base, &grid, search, mode).map_err(|e| e.to_string())?;
    let rows = wmax_rows(&grid, &curve);
    let text = match output.format {
        Format::Csv => wmax_to_csv(&rows),
        Format::Json => wmax_to_json(&rows),
    };
    emit(output, &text)
}

fn run_selftest() -> i32 {
    let checks = qotto::selftest::run_all();
    let total = checks.len();
    let mut failed = 0;
    for (i, c) in checks.iter().enumerate() {
        println!(
            "[{:>2}/{total}] {}  {}",
            i + 1,
            if c.passed { "pass" } else { "FAIL" },
            c.name
        );
        println!("        {}", c.detail);
        if !c.passed {
            failed += 1;
        }
    }
    println!("selftest: {} passed, {failed} failed", total - failed);
    if failed > 0 {
        2
    } else {
        0
    }
}

fn run(cli: Cli) -> i32 {
    let outcome = match &cli.command {
        Command::Cycle { params, output } => run_cycle(params, output),
        Command::Sweep {
            sweep,
            rule,
            params,
            output,
        } => run_sweep_cmd(sweep, rule.as_deref(), params, output),
        Command::Figure { id, output } => run_figure(id, output),
        Command::Optimize {
            bl_grid,
            search,
            analytic,
            params,
            output,
        } => run_optimize(bl_grid, search.as_deref(), *analytic, params, output),
        Command::Selftest => return run_selftest(),
    };
    match outcome {
        Ok(()) => 0,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprint!("{e}");
            std::process::exit(1);
        }
    };
    std::process::exit(run(cli));
}

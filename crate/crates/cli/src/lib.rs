//! Command-line front end: figure tables, single-point queries and parameter
//! sweeps, written as CSV or JSON.

pub mod args;
pub mod error;
pub mod figures;
pub mod format;
pub mod quantity;
pub mod table;

use std::io::Write;

use qreading::fock::FockCutoff;
use qreading::reading::Cutoff;

use args::{AxisSpec, Cli, Command, CommonArgs, Format};
pub use error::CliError;
use format::format_number;
use quantity::{Param, Params, Quantity};
use table::{linspace, run_job, Job, Report};

fn check_range(flag: &str, value: Option<f64>, lo: f64, hi: f64) -> Result<(), CliError> {
    match value {
        Some(v) if !(lo..=hi).contains(&v) => Err(CliError::Usage(format!(
            "--{flag} must lie in [{lo}, {hi}], got {v}"
        ))),
        _ => Ok(()),
    }
}

/// Validates the shared flags and returns the cutoff policy.
fn validate(common: &CommonArgs) -> Result<Cutoff, CliError> {
    check_range("kappa0", common.kappa0, 0.0, 1.0)?;
    check_range("kappa1", common.kappa1, 0.0, 1.0)?;
    check_range("prior", Some(common.prior), 0.0, 1.0)?;
    check_range("photons", common.photons, 0.0, f64::MAX)?;
    if common.threads == Some(0) {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    match common.cutoff {
        None => Ok(Cutoff::Auto),
        Some(d) => FockCutoff::new(d)
            .map(Cutoff::Fixed)
            .map_err(|e| CliError::Usage(format!("--cutoff: {e}"))),
    }
}

fn check_needs(quantities: &[Quantity], available: impl Fn(Param) -> bool) -> Result<(), CliError> {
    for q in quantities {
        for &p in q.needs() {
            if !available(p) {
                return Err(CliError::Usage(format!("quantity {q} needs --{p}")));
            }
        }
    }
    Ok(())
}

fn fixed_params(common: &CommonArgs) -> Params {
    Params {
        kappa0: common.kappa0,
        kappa1: common.kappa1,
        prior: Some(common.prior),
        photons: common.photons,
    }
}

fn fixed_list(params: &Params) -> Vec<(Param, f64)> {
    Param::ALL
        .into_iter()
        .filter_map(|p| params.get(p).map(|v| (p, v)))
        .collect()
}

fn capacity_job(quantities: &[Quantity], common: &CommonArgs) -> Result<Job, CliError> {
    let params = fixed_params(common);
    check_needs(quantities, |p| params.get(p).is_some())?;
    if common.grid.is_some() {
        return Err(CliError::Usage("--grid has no effect on capacity".into()));
    }
    Ok(Job {
        name: "capacity".into(),
        fixed: fixed_list(&params),
        axis_columns: Vec::new(),
        points: vec![(Vec::new(), params)],
        quantities: quantities.to_vec(),
    })
}

fn sweep_job(axes: &[AxisSpec], quantities: &[Quantity], common: &CommonArgs) -> Result<Job, CliError> {
    if axes.len() > 2 {
        return Err(CliError::Usage(format!("at most 2 axes, got {}", axes.len())));
    }
    if common.grid.is_some() {
        return Err(CliError::Usage("--grid has no effect on sweep; set points per --axis".into()));
    }
    let mut params = fixed_params(common);
    if axes.len() == 2 && axes[0].param == axes[1].param {
        return Err(CliError::Usage(format!("{} is swept twice", axes[0].param)));
    }
    for a in axes {
        // The prior always has a default, so sweeping it simply replaces it.
        if a.param != Param::Prior && params.get(a.param).is_some() {
            return Err(CliError::Usage(format!("--{0} is also swept by --axis {0}=...", a.param)));
        }
    }
    check_needs(quantities, |p| {
        params.get(p).is_some() || axes.iter().any(|a| a.param == p)
    })?;
    let swept: Vec<Param> = axes.iter().map(|a| a.param).collect();
    if swept.contains(&Param::Prior) {
        params.prior = None;
    }
    let fixed = fixed_list(&params);
    let values: Vec<Vec<f64>> = axes.iter().map(|a| linspace(a.start, a.stop, a.points)).collect();
    let mut points = Vec::new();
    let outer = &values[0];
    let inner: &[f64] = values.get(1).map_or(&[f64::NAN][..], |v| v.as_slice());
    for &x in outer {
        for &y in inner {
            let mut p = params;
            p.set(swept[0], x);
            let mut coords = vec![x];
            if swept.len() == 2 {
                p.set(swept[1], y);
                coords.push(y);
            }
            points.push((coords, p));
        }
    }
    Ok(Job {
        name: "sweep".into(),
        fixed,
        axis_columns: swept.iter().map(|p| p.name().to_string()).collect(),
        points,
        quantities: quantities.to_vec(),
    })
}

fn describe_axis(a: &AxisSpec) -> String {
    format!(
        "{}={}:{}:{}",
        a.param,
        format_number(a.start),
        format_number(a.stop),
        a.points
    )
}

/// Runs the command and returns the rendered output.
pub fn execute(cli: &Cli) -> Result<(String, Option<std::path::PathBuf>), CliError> {
    let (command, jobs, common) = match &cli.command {
        Command::Capacity { quantity, common } => {
            ("capacity".to_string(), vec![capacity_job(quantity, common)?], common)
        }
        Command::Fig { name, common } => (
            format!("fig {}", name.name()),
            figures::figure_jobs(*name, common)?,
            common,
        ),
        Command::Sweep {
            axes,
            quantity,
            common,
        } => {
            let desc: Vec<String> = axes.iter().map(describe_axis).collect();
            (
                format!("sweep {}", desc.join(" ")),
                vec![sweep_job(axes, quantity, common)?],
                common,
            )
        }
    };
    let cutoff = validate(common)?;
    let threads = common
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} threads: {e}")))?;
    let tables = pool.install(|| {
        jobs.iter()
            .map(|j| run_job(j, cutoff, common.timing))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let report = Report { command, tables };
    let text = match common.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    };
    Ok((text, common.out.clone()))
}

/// Runs the command and writes its output to `--out` or standard output.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let (text, out) = execute(cli)?;
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

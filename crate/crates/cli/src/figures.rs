//! Tables behind each figure. Caption values are the defaults; flags that
//! name a fixed parameter override it, flags naming a swept one are refused.

use crate::args::{CommonArgs, Figure};
use crate::error::CliError;
use crate::quantity::{Param, Params, Quantity};
use crate::table::{linspace, Job};

const DEFAULT_POINTS: usize = 101;
const DEFAULT_MAP: usize = 41;
/// Largest energy on the fig4 axis.
const FIG4_MAX_PHOTONS: f64 = 50.0;
/// Reflectivity gap of the close-memories figure.
const FIG7_GAP: f64 = 0.01;

fn base(common: &CommonArgs) -> Params {
    Params {
        kappa0: common.kappa0,
        kappa1: common.kappa1,
        prior: Some(common.prior),
        photons: common.photons,
    }
}

fn or_default(params: &mut Params, p: Param, default: f64) {
    if params.get(p).is_none() {
        params.set(p, default);
    }
}

fn refuse(params: &Params, p: Param, fig: Figure, why: &str) -> Result<(), CliError> {
    match params.get(p) {
        Some(_) => Err(CliError::Usage(format!("--{p} cannot be set for {}: {why}", fig.name()))),
        None => Ok(()),
    }
}

fn line_points(common: &CommonArgs, fig: Figure) -> Result<usize, CliError> {
    match common.grid {
        None => Ok(DEFAULT_POINTS),
        Some(g) if g.second.is_none() => Ok(g.first),
        Some(_) => Err(CliError::Usage(format!(
            "{} has a single axis; give --grid as one number",
            fig.name()
        ))),
    }
}

/// One row per value of `axis`, all other parameters from `params`.
fn line(name: &str, params: Params, axis: Param, values: &[f64], quantities: &[Quantity]) -> Job {
    let fixed = Param::ALL
        .into_iter()
        .filter(|&p| p != axis)
        .filter_map(|p| params.get(p).map(|v| (p, v)))
        .collect();
    let points = values
        .iter()
        .map(|&v| {
            let mut p = params;
            p.set(axis, v);
            (vec![v], p)
        })
        .collect();
    Job {
        name: name.into(),
        fixed,
        axis_columns: vec![axis.name().into()],
        points,
        quantities: quantities.to_vec(),
    }
}

fn photons_tag(n: f64) -> String {
    crate::format::format_number(n)
}

pub fn figure_jobs(fig: Figure, common: &CommonArgs) -> Result<Vec<Job>, CliError> {
    let mut p = base(common);
    use Quantity::*;
    match fig {
        Figure::Fig4 => {
            or_default(&mut p, Param::Kappa0, 0.5);
            or_default(&mut p, Param::Kappa1, 0.9);
            // --photons sets the largest energy of the axis.
            let top = p.photons.take().unwrap_or(FIG4_MAX_PHOTONS);
            if !(top > 0.0 && top.is_finite()) {
                return Err(CliError::Usage(format!("--photons must be positive for fig4, got {top}")));
            }
            let points = line_points(common, fig)?;
            let ns: Vec<f64> = (1..=points).map(|i| top * i as f64 / points as f64).collect();
            Ok(vec![line("fig4", p, Param::Photons, &ns, &[Cc, Ic])])
        }
        Figure::Fig5 => {
            refuse(&p, Param::Kappa0, fig, "it is swept")?;
            refuse(&p, Param::Kappa1, fig, "it is swept")?;
            let (rows, cols) = match common.grid {
                None => (DEFAULT_MAP, DEFAULT_MAP),
                Some(g) => (g.first, g.second.unwrap_or(g.first)),
            };
            let energies = match p.photons {
                Some(n) => vec![n],
                None => vec![5.0, 1.0],
            };
            let k0s = linspace(0.0, 1.0, rows);
            let k1s = linspace(0.0, 1.0, cols);
            Ok(energies
                .into_iter()
                .map(|n| {
                    let mut params = p;
                    params.photons = Some(n);
                    let points = k0s
                        .iter()
                        .flat_map(|&k0| {
                            k1s.iter().map(move |&k1| {
                                let mut q = params;
                                q.kappa0 = Some(k0);
                                q.kappa1 = Some(k1);
                                (vec![k0, k1], q)
                            })
                        })
                        .collect();
                    Job {
                        name: format!("fig5-n{}", photons_tag(n)),
                        fixed: vec![(Param::Prior, common.prior), (Param::Photons, n)],
                        axis_columns: vec!["kappa0".into(), "kappa1".into()],
                        points,
                        quantities: vec![Gain],
                    }
                })
                .collect())
        }
        Figure::Fig6 => {
            refuse(&p, Param::Kappa0, fig, "it is swept")?;
            or_default(&mut p, Param::Kappa1, 1.0);
            or_default(&mut p, Param::Photons, 1.0);
            let k0s = linspace(0.0, 1.0, line_points(common, fig)?);
            Ok(vec![line("fig6", p, Param::Kappa0, &k0s, &[Cc, ChiEpr1, ChiNoon, ChiFock])])
        }
        Figure::Fig7 => {
            refuse(&p, Param::Kappa0, fig, "it follows kappa1 - 0.01")?;
            refuse(&p, Param::Kappa1, fig, "it is swept")?;
            or_default(&mut p, Param::Photons, 1.0);
            let k1s = linspace(FIG7_GAP, 1.0, line_points(common, fig)?);
            let points = k1s
                .iter()
                .map(|&k1| {
                    let k0 = (k1 - FIG7_GAP).max(0.0);
                    let mut q = p;
                    q.kappa0 = Some(k0);
                    q.kappa1 = Some(k1);
                    (vec![k1, k0], q)
                })
                .collect();
            Ok(vec![Job {
                name: "fig7".into(),
                fixed: vec![(Param::Prior, common.prior), (Param::Photons, p.photons.unwrap_or(1.0))],
                axis_columns: vec!["kappa1".into(), "kappa0".into()],
                points,
                quantities: vec![Cc, ChiEpr1, ChiNoon, ChiFock],
            }])
        }
        Figure::Fig8 => {
            // --kappa0 fixes the squeezing table, --kappa1 the EPR-copies table.
            or_default(&mut p, Param::Photons, 1.0);
            let points = line_points(common, fig)?;
            let mut sqz = p;
            sqz.kappa1 = None;
            or_default(&mut sqz, Param::Kappa0, 0.0);
            let mut epr = p;
            epr.kappa0 = None;
            or_default(&mut epr, Param::Kappa1, 1.0);
            let grid = linspace(0.0, 1.0, points);
            Ok(vec![
                line("fig8", sqz, Param::Kappa1, &grid, &[Cc, ChiSqz, SqzSplit, ChiFock]),
                line("fig8-epr", epr, Param::Kappa0, &grid, &[Cc, ChiEpr1, ChiEpr2]),
            ])
        }
        Figure::Fig9 => {
            refuse(&p, Param::Kappa0, fig, "it is swept")?;
            refuse(&p, Param::Kappa1, fig, "the bounds assume an ideal memory")?;
            p.kappa1 = Some(1.0);
            or_default(&mut p, Param::Photons, 5.0);
            let k0s = linspace(0.0, 1.0, line_points(common, fig)?);
            Ok(vec![
                line("fig9", p, Param::Kappa0, &k0s, &[Cc, Q1, Qinf]),
                line("fig9-strict", p, Param::Kappa0, &k0s, &[Cc, Q1Half, QinfHalf]),
            ])
        }
    }
}

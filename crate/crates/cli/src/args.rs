use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::quantity::{Param, Quantity};

#[derive(Debug, Parser)]
#[command(
    name = "qreading",
    version,
    about = "Information capacities of optical memory cells read with classical and quantum light"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate quantities for one cell and energy.
    Capacity {
        /// Comma-separated quantity names.
        #[arg(long, value_delimiter = ',', required = true)]
        quantity: Vec<Quantity>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Reproduce the data behind one figure.
    Fig {
        name: Figure,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Evaluate quantities over a grid of one or two parameters.
    Sweep {
        /// Swept parameter as `name=start:stop:points`; give one or two.
        #[arg(long = "axis", required = true)]
        axes: Vec<AxisSpec>,
        /// Comma-separated quantity names.
        #[arg(long, value_delimiter = ',', required = true)]
        quantity: Vec<Quantity>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Reflectivity of the memory encoding bit 0.
    #[arg(long)]
    pub kappa0: Option<f64>,
    /// Reflectivity of the memory encoding bit 1.
    #[arg(long)]
    pub kappa1: Option<f64>,
    /// Probability of bit 0.
    #[arg(long, default_value_t = 0.5)]
    pub prior: f64,
    /// Mean signal photons per cell.
    #[arg(long)]
    pub photons: Option<f64>,
    /// Fixed per-mode Fock cutoff instead of the automatic choice.
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// Figure sampling, `N` or `NxM`.
    #[arg(long)]
    pub grid: Option<Grid>,
    /// Worker threads (default: all hardware threads).
    #[arg(long, env = "QREADING_THREADS")]
    pub threads: Option<usize>,
    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Record wall time in the metadata. Makes output vary between runs.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
}

impl Figure {
    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
            Figure::Fig6 => "fig6",
            Figure::Fig7 => "fig7",
            Figure::Fig8 => "fig8",
            Figure::Fig9 => "fig9",
        }
    }
}

/// `N` or `NxM` sample counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub first: usize,
    pub second: Option<usize>,
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let count = |t: &str| -> Result<usize, String> {
            let n: usize = t.trim().parse().map_err(|_| format!("`{t}` is not a point count"))?;
            if n < 2 {
                return Err(format!("grid needs at least 2 points per axis, got {n}"));
            }
            Ok(n)
        };
        match s.split_once(['x', 'X']) {
            Some((a, b)) => Ok(Grid {
                first: count(a)?,
                second: Some(count(b)?),
            }),
            None => Ok(Grid {
                first: count(s)?,
                second: None,
            }),
        }
    }
}

/// `name=start:stop:points`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec {
    pub param: Param,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl FromStr for AxisSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (name, range) = s
            .split_once('=')
            .ok_or_else(|| format!("axis `{s}` is not of the form name=start:stop:points"))?;
        let parts: Vec<&str> = range.split(':').collect();
        let [start, stop, points] = parts[..] else {
            return Err(format!("axis range `{range}` is not of the form start:stop:points"));
        };
        let number = |t: &str| -> Result<f64, String> {
            t.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| format!("`{t}` is not a finite number"))
        };
        let points: usize = points
            .parse()
            .map_err(|_| format!("`{points}` is not a point count"))?;
        if points < 2 {
            return Err(format!("an axis needs at least 2 points, got {points}"));
        }
        Ok(AxisSpec {
            param: name.parse()?,
            start: number(start)?,
            stop: number(stop)?,
            points,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn grid_parsing() {
        assert_eq!("41".parse::<Grid>().unwrap(), Grid { first: 41, second: None });
        assert_eq!("11x7".parse::<Grid>().unwrap(), Grid { first: 11, second: Some(7) });
        assert!("1".parse::<Grid>().is_err());
        assert!("ax3".parse::<Grid>().is_err());
    }

    #[test]
    fn axis_parsing() {
        let a: AxisSpec = "kappa0=0:1:11".parse().unwrap();
        assert_eq!((a.param, a.start, a.stop, a.points), (Param::Kappa0, 0.0, 1.0, 11));
        assert!("kappa0=0:1:1".parse::<AxisSpec>().is_err());
        assert!("kappa0=0:1".parse::<AxisSpec>().is_err());
        assert!("temperature=0:1:3".parse::<AxisSpec>().is_err());
        assert!("photons=0:inf:3".parse::<AxisSpec>().is_err());
    }

    #[test]
    fn quantity_lists() {
        let cli = Cli::try_parse_from(["qreading", "capacity", "--quantity", "cc,gain", "--photons", "1"]).unwrap();
        match cli.command {
            Command::Capacity { quantity, common } => {
                assert_eq!(quantity, vec![Quantity::Cc, Quantity::Gain]);
                assert_eq!(common.prior, 0.5);
            }
            _ => panic!("wrong subcommand"),
        }
        assert!(Cli::try_parse_from(["qreading", "capacity", "--quantity", "bogus"]).is_err());
        assert!(Cli::try_parse_from(["qreading", "fig", "fig10"]).is_err());
    }
}

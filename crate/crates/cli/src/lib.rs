//! Command-line front end for `gromtree-core`.
//!
//! [`run`] takes the argument list and two sinks so the whole tool can be
//! driven from tests; `main` only forwards the process streams. Exit codes:
//! `0` success, `1` input that fails to read, parse or validate, `2` usage.

pub mod format;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use gromtree_core::bottleneck::{apbp, maxmin_closure_naive};
use gromtree_core::metric::{
    delta_hyperbolicity, exte, gprd, igprd, CapacityMatrix, DistanceMatrix, ProductMatrix,
    SquareMatrix,
};
use gromtree_core::pipeline::{apbp_via_gtree, gtree, gtree_from_graph, AdjacencyGraph};
use gromtree_core::treeize::{realize_tree, to_newick, NewickOptions};
use gromtree_core::DEFAULT_TOL;
use thiserror::Error;

use crate::format::{format_number, parse_graph, parse_labels, parse_matrix, write_matrix};

#[derive(Debug, Parser)]
#[command(
    name = "gromtree",
    version,
    about = "Tree approximations of metric matrices and bottleneck capacities between all pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Approximating tree of a pseudo-metric matrix.
    Gtree {
        #[arg(long)]
        input: PathBuf,
        /// Basepoint index; defaults to the last point.
        #[arg(long)]
        base: Option<usize>,
        /// Also print the hyperbolicity constant and the distortion bound margin.
        #[arg(long)]
        show_delta: bool,
    },
    /// Approximating tree of an unweighted connected graph.
    GtreeGraph {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        base: Option<usize>,
    },
    /// All-pairs bottleneck capacities.
    Apbp {
        #[arg(long)]
        input: PathBuf,
        /// Use the cubic max-min closure instead.
        #[arg(long)]
        oracle: bool,
    },
    /// All-pairs bottleneck capacities computed through an approximating tree.
    ApbpViaTree {
        #[arg(long)]
        input: PathBuf,
    },
    /// Gromov products of a pseudo-metric matrix.
    Gprd {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        base: Option<usize>,
    },
    /// Pseudo-metric recovered from a Gromov product matrix.
    Igprd {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        base: Option<usize>,
    },
    /// Capacities embedded as products of a space with one extra basepoint.
    Exte {
        #[arg(long)]
        input: PathBuf,
    },
    /// Hyperbolicity constant by brute force, with a maximizing quadruple.
    Delta {
        #[arg(long)]
        input: PathBuf,
    },
    /// Approximating tree as a Newick string.
    Newick {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        base: Option<usize>,
        /// One label per line, in point order.
        #[arg(long)]
        labels: Option<PathBuf>,
        /// One leaf per point, co-located points on zero-length branches.
        #[arg(long)]
        split_coincident: bool,
    },
    /// Check a matrix is a metric, or with --pseudo a pseudo-metric.
    Validate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        pseudo: bool,
    },
}

#[derive(Debug, Error)]
enum Failure {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Parse {
        path: PathBuf,
        source: format::ParseError,
    },
    #[error("{}: {source}", path.display())]
    Invalid {
        path: PathBuf,
        source: gromtree_core::Error,
    },
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are not errors
            return if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                2
            } else {
                let _ = write!(stdout, "{}", e.render());
                0
            };
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|source| Failure::Io {
        path: path.to_owned(),
        source,
    })
}

fn matrix_file(path: &Path) -> Result<SquareMatrix, Failure> {
    parse_matrix(&read(path)?).map_err(|source| Failure::Parse {
        path: path.to_owned(),
        source,
    })
}

fn invalid(path: &Path) -> impl FnOnce(gromtree_core::Error) -> Failure + '_ {
    move |source| Failure::Invalid {
        path: path.to_owned(),
        source,
    }
}

fn distances(path: &Path, base: Option<usize>, strict: bool) -> Result<DistanceMatrix, Failure> {
    let m = matrix_file(path)?;
    let base = base.unwrap_or(m.n() - 1);
    DistanceMatrix::from_matrix(m, base, strict, DEFAULT_TOL).map_err(invalid(path))
}

fn capacities(path: &Path) -> Result<CapacityMatrix, Failure> {
    CapacityMatrix::from_matrix(matrix_file(path)?, DEFAULT_TOL).map_err(invalid(path))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Gtree {
            input,
            base,
            show_delta,
        } => {
            let d = distances(&input, base, false)?;
            let a = gtree(&d);
            out.write_all(write_matrix(a.distances().matrix()).as_bytes())?;
            if show_delta {
                let delta = delta_hyperbolicity(&d).delta;
                let slack = 2.0 * delta * (d.n() as f64).log2();
                let mut margin = f64::INFINITY;
                for i in 0..d.n() {
                    for j in 0..d.n() {
                        margin = margin.min(a.distances().get(i, j) - (d.get(i, j) - slack));
                    }
                }
                writeln!(out, "delta = {}", format_number(delta))?;
                writeln!(out, "bound margin = {}", format_number(margin))?;
            }
        }
        Command::GtreeGraph { input, base } => {
            let g = parse_graph(&read(&input)?).map_err(|source| Failure::Parse {
                path: input.clone(),
                source,
            })?;
            let base = base.unwrap_or(g.n - 1);
            let graph = AdjacencyGraph::new(g.n, &g.edges, base).map_err(invalid(&input))?;
            let a = gtree_from_graph(&graph).map_err(invalid(&input))?;
            out.write_all(write_matrix(a.distances().matrix()).as_bytes())?;
        }
        Command::Apbp { input, oracle } => {
            let c = capacities(&input)?;
            let r = if oracle {
                maxmin_closure_naive(&c)
            } else {
                apbp(&c)
            };
            out.write_all(write_matrix(r.matrix()).as_bytes())?;
        }
        Command::ApbpViaTree { input } => {
            let r = apbp_via_gtree(&capacities(&input)?);
            out.write_all(write_matrix(r.matrix()).as_bytes())?;
        }
        Command::Gprd { input, base } => {
            let l = gprd(&distances(&input, base, false)?);
            out.write_all(write_matrix(l.matrix()).as_bytes())?;
        }
        Command::Igprd { input, base } => {
            let m = matrix_file(&input)?;
            let base = base.unwrap_or(m.n() - 1);
            let l = ProductMatrix::from_matrix(m, base, DEFAULT_TOL).map_err(invalid(&input))?;
            let d = igprd(&l).map_err(invalid(&input))?;
            out.write_all(write_matrix(d.matrix()).as_bytes())?;
        }
        Command::Exte { input } => {
            let l = exte(&capacities(&input)?);
            out.write_all(write_matrix(l.matrix()).as_bytes())?;
        }
        Command::Delta { input } => {
            let h = delta_hyperbolicity(&distances(&input, None, false)?);
            let [x, y, z, w] = h.witness;
            writeln!(out, "delta = {}", format_number(h.delta))?;
            writeln!(out, "witness = {x} {y} {z} {w}")?;
        }
        Command::Newick {
            input,
            base,
            labels,
            split_coincident,
        } => {
            let names = labels
                .as_deref()
                .map(|p| read(p).map(|t| parse_labels(&t)))
                .transpose()?;
            let d = distances(&input, base, false)?;
            let tree = realize_tree(&gtree(&d)).map_err(invalid(&input))?;
            let options = NewickOptions {
                split_coincident,
                ..NewickOptions::default()
            };
            let text = to_newick(&tree, names.as_deref(), options)
                .map_err(invalid(labels.as_deref().unwrap_or(input.as_path())))?;
            writeln!(out, "{text}")?;
        }
        Command::Validate { input, pseudo } => {
            let d = distances(&input, None, !pseudo)?;
            let kind = if pseudo { "pseudo-metric" } else { "metric" };
            writeln!(out, "ok: {kind} on {} points", d.n())?;
        }
    }
    Ok(())
}

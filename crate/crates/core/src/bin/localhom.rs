use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use localhom::complex::{build_rips, verify_interleaving_chain};
use localhom::io;
use localhom::local::{alpha_pipeline, r_pipeline, translate_diagram, ApproxResult};
use localhom::metric::bottleneck_distance;
use localhom::persistence::reduce;
use localhom::synthetic::{generate, SpaceKind, SpaceSpec};
use localhom::{Error, LocalQuery};

#[derive(Parser)]
#[command(
    name = "localhom",
    version,
    about = "Multi-scale local homology of point samples"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a deterministic sample of a synthetic space.
    Gen {
        /// segment, circle, cross2d, planes3d or cone2d
        #[arg(long)]
        kind: String,
        /// Largest gap between neighbouring samples.
        #[arg(long)]
        density: f64,
        /// Overrides the kind's default size (length, radius or half-width).
        #[arg(long)]
        size: Option<f64>,
        /// Number of rays for cone2d.
        #[arg(long)]
        rays: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Persistence diagram of the Vietoris-Rips filtration.
    Rips {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        max_scale: f64,
        #[arg(long, default_value_t = 1)]
        max_dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Relative diagram of the Rips pair at a basepoint, with its certified bound.
    LocalAlpha {
        #[arg(long = "in")]
        input: PathBuf,
        /// Basepoint, comma-separated coordinates.
        #[arg(long = "x", value_parser = parse_coords, allow_hyphen_values = true)]
        basepoint: Coords,
        #[arg(long = "r")]
        radius: f64,
        /// Sample density of the input.
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        max_scale: f64,
        #[arg(long, default_value_t = 1)]
        max_dim: usize,
        /// Diagram path; the metadata goes to `<out>.meta`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sublevel diagram of the negated distance to a basepoint, plus the
    /// translated relative diagram.
    LocalR {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "x", value_parser = parse_coords, allow_hyphen_values = true)]
        basepoint: Coords,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 1)]
        max_dim: usize,
        /// Diagram path; also writes `<out>.relative` and `<out>.meta`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bottleneck distance between two diagram files.
    Bottleneck { first: PathBuf, second: PathBuf },
    /// Check the Čech/Rips interleaving chain on a cloud at one scale.
    CheckChain {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1)]
        max_dim: usize,
    },
}

#[derive(Clone)]
struct Coords(Vec<f64>);

fn parse_coords(s: &str) -> Result<Coords, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("'{t}' is not a number"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Coords)
}

fn sidecar(path: &Path, ext: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn emit(out: Option<&Path>, text: &str) -> localhom::Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn comment(text: &str) -> String {
    text.lines().map(|l| format!("# {l}\n")).collect()
}

fn write_result(result: &ApproxResult, out: Option<&Path>) -> localhom::Result<()> {
    let meta = io::format_metadata(result);
    match out {
        Some(p) => {
            fs::write(p, result.diagram.to_string())?;
            fs::write(sidecar(p, "meta"), meta)?;
        }
        None => print!("{}{}", comment(&meta), result.diagram),
    }
    Ok(())
}

fn run(command: Command) -> localhom::Result<ExitCode> {
    match command {
        Command::Gen {
            kind,
            density,
            size,
            rays,
            out,
        } => {
            let mut kind: SpaceKind = kind.parse()?;
            if let Some(s) = size {
                kind = match kind {
                    SpaceKind::Segment { .. } => SpaceKind::Segment { length: s },
                    SpaceKind::Circle { .. } => SpaceKind::Circle { radius: s },
                    SpaceKind::Cross2d { .. } => SpaceKind::Cross2d { half_length: s },
                    SpaceKind::Planes3d { .. } => SpaceKind::Planes3d { half_width: s },
                    SpaceKind::Cone2d { rays, .. } => SpaceKind::Cone2d { rays, length: s },
                };
            }
            if let Some(k) = rays {
                match &mut kind {
                    SpaceKind::Cone2d { rays, .. } => *rays = k,
                    _ => {
                        return Err(Error::InvalidArgument(
                            "--rays only applies to cone2d".into(),
                        ))
                    }
                }
            }
            let cloud = generate(&SpaceSpec::new(kind, density))?;
            emit(out.as_deref(), &io::format_point_cloud(&cloud))?;
        }
        Command::Rips {
            input,
            max_scale,
            max_dim,
            out,
        } => {
            let cloud = io::read_point_cloud(&input)?;
            let diagram = reduce(&build_rips(&cloud, max_scale, max_dim)?, max_dim)?;
            emit(out.as_deref(), &diagram.to_string())?;
        }
        Command::LocalAlpha {
            input,
            basepoint,
            radius,
            eps,
            max_scale,
            max_dim,
            out,
        } => {
            let cloud = io::read_point_cloud(&input)?;
            let query = LocalQuery {
                basepoint: basepoint.0,
                radius,
                epsilon: eps,
                max_scale,
                max_dim,
            };
            write_result(&alpha_pipeline(&cloud, &query)?, out.as_deref())?;
        }
        Command::LocalR {
            input,
            basepoint,
            eps,
            max_dim,
            out,
        } => {
            let cloud = io::read_point_cloud(&input)?;
            // the radius is the filtration parameter here; these two fields
            // only need to pass validation
            let query = LocalQuery {
                basepoint: basepoint.0,
                radius: 2.0 * eps,
                epsilon: eps,
                max_scale: 2.0 * eps,
                max_dim,
            };
            let result = r_pipeline(&cloud, &query)?;
            let relative = io::format_translated(&translate_diagram(&result.diagram));
            write_result(&result, out.as_deref())?;
            match out {
                Some(p) => fs::write(sidecar(&p, "relative"), relative)?,
                None => print!("# relative\n{}", comment(&relative)),
            }
        }
        Command::Bottleneck { first, second } => {
            let a = io::read_diagram(&first)?;
            let b = io::read_diagram(&second)?;
            println!("{}", bottleneck_distance(&a, &b));
        }
        Command::CheckChain {
            input,
            alpha,
            max_dim,
        } => {
            let cloud = io::read_point_cloud(&input)?;
            if verify_interleaving_chain(&cloud, alpha, max_dim)? {
                println!("PASS");
            } else {
                println!("FAIL");
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("error: {}", first.trim_start_matches("error: "));
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::GuaranteeLapsed { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

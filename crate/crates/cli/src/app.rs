//! Argument parsing and dispatch, kept free of process state so tests can
//! drive it directly.

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::Value;
use walland_core::walls::LatticeBounds;

use crate::commands::{self as cmd, require};
use crate::output::{render, CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "walland", version, about = "Exact tilt-stability computations on polarized surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Surface lattice JSON file; the projective plane when omitted.
    #[arg(long)]
    pub surface: Option<PathBuf>,
    /// Character `r,c1_1,...,c1_n,ch2` with rational entries.
    #[arg(long = "char", allow_hyphen_values = true)]
    pub character: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Compact single-line JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    #[arg(long = "to-s", allow_hyphen_values = true)]
    pub to_s: Option<String>,
    #[arg(long = "to-q", allow_hyphen_values = true)]
    pub to_q: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct Bounds {
    #[arg(long, default_value_t = 3)]
    pub rank_bound: u32,
    #[arg(long, default_value_t = 5)]
    pub c1_bound: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Central charge, heart membership and phase at (s, q).
    Charge {
        #[command(flatten)]
        common: Common,
    },
    /// Certificate that Hom(E, E (x) K) vanishes.
    Ext2 {
        #[command(flatten)]
        common: Common,
        /// Write the slope-comparison picture here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Interval that bounds the phases of factors at the target point.
    PhaseBounds {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        target: Target,
    },
    /// Candidate walls met along a segment or inside a box.
    Walls {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        target: Target,
        /// `s_min,s_max,q_min,q_max`.
        #[arg(long = "box", allow_hyphen_values = true)]
        bbox: Option<String>,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Tree of destabilizing factors along a segment.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long, default_value_t = 2)]
        max_depth: u32,
    },
    /// Expected dimension 1 - chi(v, v) of the moduli space.
    Dim {
        #[command(flatten)]
        common: Common,
    },
    /// Seeded random checks of the trace pairing on complexes.
    SupertraceFuzz {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000)]
        n: u64,
        /// Overridden by `WALLAND_SEED`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Render a bundled figure or a scene file as SVG.
    Figure {
        #[command(flatten)]
        common: Common,
        /// One of `phase-compare`, `deform`, `ext2`.
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        scene: Option<PathBuf>,
        /// SVG destination; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn success(stdout: String) -> Outcome {
    Outcome {
        code: 0,
        stdout,
        stderr: String::new(),
    }
}

fn failure(e: &CliError, compact: bool) -> Outcome {
    Outcome {
        code: e.exit_code(),
        stdout: String::new(),
        stderr: render(&e.to_json(), compact),
    }
}

pub fn run(args: &[String], env_seed: Option<String>) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return success(e.to_string());
        }
        Err(e) => return failure(&CliError::Usage(first_line(&e)), false),
    };
    let compact = common(&cli.command).json;
    match dispatch(cli.command, env_seed) {
        Ok(Output::Json(v)) => success(render(&v, compact)),
        Ok(Output::Text(s)) => success(s),
        Err(e) => failure(&e, compact),
    }
}

fn first_line(e: &clap::Error) -> String {
    let text = e.render().to_string();
    text.lines()
        .next()
        .unwrap_or_default()
        .trim_start_matches("error: ")
        .to_string()
}

fn common(c: &Command) -> &Common {
    match c {
        Command::Charge { common }
        | Command::Ext2 { common, .. }
        | Command::PhaseBounds { common, .. }
        | Command::Walls { common, .. }
        | Command::Simulate { common, .. }
        | Command::Dim { common }
        | Command::SupertraceFuzz { common, .. }
        | Command::Figure { common, .. } => common,
    }
}

enum Output {
    Json(Value),
    Text(String),
}

fn start(c: &Common) -> CliResult<walland_core::StabPoint> {
    cmd::stab_point(require("s", c.s.as_deref())?, require("q", c.q.as_deref())?)
}

fn end(t: &Target) -> CliResult<walland_core::StabPoint> {
    cmd::stab_point(
        require("to-s", t.to_s.as_deref())?,
        require("to-q", t.to_q.as_deref())?,
    )
}

fn dispatch(command: Command, env_seed: Option<String>) -> CliResult<Output> {
    let surface = |c: &Common| cmd::load_surface(c.surface.as_deref());
    let json = Output::Json;
    match command {
        Command::Charge { common } => {
            let l = surface(&common)?;
            let ch = cmd::parse_char(&l, common.character.as_deref())?;
            cmd::charge(&l, &ch, &start(&common)?).map(json)
        }
        Command::Ext2 { common, out } => {
            let l = surface(&common)?;
            let ch = cmd::parse_char(&l, common.character.as_deref())?;
            cmd::ext2(&l, &ch, &start(&common)?, out.as_deref()).map(json)
        }
        Command::PhaseBounds { common, target } => {
            let l = surface(&common)?;
            let ch = cmd::parse_char(&l, common.character.as_deref())?;
            cmd::phase_bounds(&l, &ch, &start(&common)?, &end(&target)?).map(json)
        }
        Command::Walls {
            common,
            target,
            bbox,
            bounds,
        } => {
            let l = surface(&common)?;
            let ch = cmd::parse_char(&l, common.character.as_deref())?;
            let segment = if bbox.is_some() {
                if common.s.is_some() || target.to_s.is_some() {
                    return Err(CliError::Usage("--box excludes --s/--q/--to-s/--to-q".into()));
                }
                None
            } else {
                Some((start(&common)?, end(&target)?))
            };
            let region = cmd::region(segment, bbox.as_deref())?;
            cmd::walls(&l, &ch, &region, bounds.rank_bound, bounds.c1_bound).map(json)
        }
        Command::Simulate {
            common,
            target,
            bounds,
            max_depth,
        } => {
            let l = surface(&common)?;
            let ch = cmd::parse_char(&l, common.character.as_deref())?;
            let b = LatticeBounds::new(bounds.rank_bound, bounds.c1_bound).with_depth(max_depth);
            cmd::simulate(&l, &ch, &start(&common)?, &end(&target)?, b).map(json)
        }
        Command::Dim { common } => {
            let l = surface(&common)?;
            let ch = cmd::parse_char(&l, common.character.as_deref())?;
            cmd::dim(&l, &ch).map(json)
        }
        Command::SupertraceFuzz { n, seed, .. } => {
            let seed = cmd::fuzz_seed(seed, env_seed)?;
            cmd::supertrace_fuzz(n, seed).map(json)
        }
        Command::Figure { name, scene, out, .. } => {
            let svg = cmd::figure(name.as_deref(), scene.as_deref())?;
            match out {
                Some(path) => {
                    cmd::write_file(&path, &svg)?;
                    Ok(Output::Text(String::new()))
                }
                None => Ok(Output::Text(svg)),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let args: Vec<String> = std::iter::once("walland").chain(args.iter().copied()).map(String::from).collect();
        run(&args, None)
    }

    #[test]
    fn usage_errors_are_json_with_code_2() {
        let out = run_args(&["charge", "--bogus"]);
        assert_eq!(out.code, 2);
        let v: Value = serde_json::from_str(&out.stderr).unwrap();
        assert_eq!(v["error"]["kind"], "usage");
        assert_eq!(run_args(&["charge", "--s", "0"]).code, 2);
        assert_eq!(run_args(&["nope"]).code, 2);
    }

    #[test]
    fn help_is_not_an_error() {
        let out = run_args(&["--help"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("supertrace-fuzz"));
    }

    #[test]
    fn negative_values_parse() {
        let out = run_args(&["charge", "--char", "-1,0,0", "--s", "-1", "--q", "1", "--json"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.ends_with('\n'));
        assert_eq!(out.stdout.lines().count(), 1);
    }

    #[test]
    fn seed_from_environment_wins() {
        assert_eq!(cmd::fuzz_seed(3, Some("11".into())).unwrap(), 11);
        assert_eq!(cmd::fuzz_seed(3, None).unwrap(), 3);
        assert!(cmd::fuzz_seed(3, Some("x".into())).is_err());
    }
}

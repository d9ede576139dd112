mod error;
mod input;
mod report;
mod svg;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use toricsg::criterion::{
    construct_bad_divisor_with, fg_for_all_divisors, is_finitely_generated, scan_directions,
};
use toricsg::oracle::DEFAULT_LAMBDA_MAX;
use toricsg::rat::int;
use toricsg::{Execution, FlagContext, NVec};

use error::CliError;
use input::{parse_direction, Problem};

#[derive(Parser)]
#[command(name = "toricsg", version, about = "Valuation semigroups of toric surfaces with one-parameter-subgroup flags")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Problem file (JSON)
    #[arg(long)]
    input: PathBuf,
    /// Direction "x,y"; overrides the file
    #[arg(long, allow_hyphen_values = true)]
    direction: Option<String>,
    /// Write here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: nef curve polytope, segment, cones, body, verdict, lifting
    Analyze {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lambda_max: Option<u64>,
    },
    /// CSV of e_bar(l, k)
    Semigroup {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lmax: Option<i64>,
        /// One row per triple (l, k, delta)
        #[arg(long)]
        expand: bool,
    },
    /// Vertices of the Newton-Okounkov body
    Nobody {
        #[command(flatten)]
        common: Common,
    },
    /// Finite generation verdict
    Fg {
        #[command(flatten)]
        common: Common,
    },
    /// Whether every ample divisor on the fan is finitely generated
    FgAll {
        #[command(flatten)]
        common: Common,
    },
    /// Verdicts for all primitive directions up to a bound
    Scan {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long)]
        sequential: bool,
    },
    /// Ample divisor on the fan with a non finitely generated semigroup
    ConstructBad {
        #[command(flatten)]
        common: Common,
    },
    /// SVG figure
    Plot {
        what: PlotKind,
        #[command(flatten)]
        common: Common,
        /// Level l of Theta(l, k)
        #[arg(long, default_value_t = 1)]
        l: i64,
        /// Order k of Theta(l, k)
        #[arg(long, default_value_t = 0)]
        k: i64,
        /// Put t on the horizontal axis of the body
        #[arg(long)]
        flip_axes: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotKind {
    Polytope,
    Fan,
    Theta,
    Nobody,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let body = json!({ "error": e.code(), "reason": e.to_string() });
            eprintln!("{body}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn direction(common: &Common, problem: &Problem) -> Result<NVec, CliError> {
    match &common.direction {
        Some(s) => parse_direction(s),
        None => problem
            .direction
            .ok_or_else(|| CliError::invalid("no direction: pass --direction or set `direction`")),
    }
}

fn context(common: &Common) -> Result<(Problem, FlagContext), CliError> {
    let problem = Problem::load(&common.input)?;
    let v = direction(common, &problem)?;
    let ctx = FlagContext::new(problem.divisor.clone(), v)?;
    Ok((problem, ctx))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    let io = |path: &Path, source| CliError::Io { path: path.to_path_buf(), source };
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| io(path, e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| io(Path::new("<stdout>"), e)),
    }
}

fn emit_json(out: &Option<PathBuf>, v: &Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(v).expect("serializable");
    text.push('\n');
    emit(out, &text)
}

fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Analyze { common, lambda_max } => {
            let (problem, ctx) = context(&common)?;
            let lambda_max = lambda_max.or(problem.lambda_max).unwrap_or(DEFAULT_LAMBDA_MAX);
            let verdict = is_finitely_generated(&ctx)?;
            let smooth = ctx.divisor().fan().is_smooth();
            emit_json(&common.output, &report::analyze(&ctx, &verdict, lambda_max, smooth, &problem.pairs)?)
        }
        Command::Semigroup { common, lmax, expand } => {
            let (problem, ctx) = context(&common)?;
            let lmax = lmax.or(problem.lmax).unwrap_or(3);
            if lmax < 1 {
                return Err(toricsg::Error::OutOfRange("lmax must be at least 1".into()).into());
            }
            emit(&common.output, &report::semigroup_csv(&ctx, lmax, expand))
        }
        Command::Nobody { common } => {
            let (_, ctx) = context(&common)?;
            emit_json(&common.output, &report::no_body(&ctx))
        }
        Command::Fg { common } => {
            let (_, ctx) = context(&common)?;
            let verdict = is_finitely_generated(&ctx)?;
            let mut body = report::verdict(&verdict);
            body["segment"] = report::segment(&verdict.segment);
            emit_json(&common.output, &body)
        }
        Command::FgAll { common } => {
            let problem = Problem::load(&common.input)?;
            let v = direction(&common, &problem)?;
            problem.divisor.fan().require_smooth()?;
            let failing = fg_for_all_divisors(problem.divisor.fan(), v)?;
            emit_json(&common.output, &report::failing_cone(&failing))
        }
        Command::Scan { common, bound, sequential } => {
            let problem = Problem::load(&common.input)?;
            let bound = bound.or(problem.bound).unwrap_or(5);
            let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
            let rows: Vec<Value> = scan_directions(&problem.divisor, bound, exec)?
                .into_iter()
                .map(|(v, r)| match r {
                    Ok(verdict) => json!({
                        "direction": report::vec2(v),
                        "finitely_generated": verdict.finitely_generated,
                        "source": report::verdict(&verdict)["source"].clone(),
                    }),
                    Err(e) => json!({ "direction": report::vec2(v), "error": e.to_string() }),
                })
                .collect();
            emit_json(&common.output, &json!({ "bound": bound, "directions": rows }))
        }
        Command::ConstructBad { common } => {
            let problem = Problem::load(&common.input)?;
            let v = direction(&common, &problem)?;
            let fan = problem.divisor.fan();
            let sigma = match problem.sigma {
                Some(s) => s,
                None => match fg_for_all_divisors(fan, v)? {
                    Some(f) => f.cone,
                    None => {
                        return Err(CliError::invalid(
                            "every ample divisor is finitely generated for this direction",
                        ))
                    }
                },
            };
            let w = if sigma.contains_interior(v) { v } else { -v };
            let bad = construct_bad_divisor_with(fan, &sigma, w, problem.d_theta.as_ref())?;
            let mut body = report::bad_divisor(&bad);
            body["direction"] = report::vec2(w);
            body["sigma"] = report::cone(&sigma);
            emit_json(&common.output, &body)
        }
        Command::Plot { what, common, l, k, flip_axes } => {
            let problem = Problem::load(&common.input)?;
            let fig = match what {
                PlotKind::Polytope => svg::Figure::polygon("polytope", problem.divisor.polytope()?),
                PlotKind::Fan => svg::Figure::fan("fan", problem.divisor.fan().rays()),
                PlotKind::Theta => {
                    let v = direction(&common, &problem)?;
                    let ctx = FlagContext::new(problem.divisor.clone(), v)?;
                    svg::Figure::polygon(format!("Theta({l},{k})"), ctx.theta(&int(l), &int(k)))
                }
                PlotKind::Nobody => {
                    let v = direction(&common, &problem)?;
                    let ctx = FlagContext::new(problem.divisor.clone(), v)?;
                    let body = ctx.newton_okounkov_body().polygon;
                    let mut fig = svg::Figure::polygon("Newton-Okounkov body", body.clone());
                    fig.axes = ("q".into(), "t".into());
                    if flip_axes {
                        fig.polygon = Some(svg::flipped(&body));
                        fig.axes = ("t".into(), "q".into());
                    }
                    fig
                }
            };
            emit(&common.output, &fig.render())
        }
    }
}

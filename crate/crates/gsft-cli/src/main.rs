//! Command-line front end: parse tileset documents, run the deciders and
//! the ball search, compile reductions, move configurations across them,
//! probe ball boundaries, and draw SVG pictures.
//!
//! Results go to stdout (or `-o FILE`, pretty-printed); diagnostics go to
//! stderr. Exit codes: 0 nonempty/success, 1 empty, 2 unknown, 64 usage,
//! 65 bad input, 70 budget exhausted.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use gsft::deciders::{
    decide_tree, decide_z, emptiness_semidecide_threaded, DeciderError, EmptinessVerdict,
    DEFAULT_NODE_BUDGET,
};
use gsft::ends::{thickness_profile, EndsError};
use gsft::formats::{self, FormatError, ParsedTileset};
use gsft::group::{CosetEmbedding, GroupError, GroupModel};
use gsft::reduction::{
    decode_g_config, encode_z2_config, find_ray, lift_subgroup_sft, reduce_z2_to_g,
    ReductionError,
};
use gsft::render::{configuration_svg, patch_svg, RenderError};
use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::exit;

const EXIT_NONEMPTY: i32 = 0;
const EXIT_EMPTY: i32 = 1;
const EXIT_UNKNOWN: i32 = 2;
const EXIT_USAGE: i32 = 64;
const EXIT_FORMAT: i32 = 65;
const EXIT_BUDGET: i32 = 70;

/// Ball vertex cap for encode/probe; generous for the supported ranks.
const BALL_CAP: usize = 1 << 22;
const RAY_SEARCH_BUDGET: u64 = 1 << 20;

#[derive(Parser)]
#[command(name = "gsft", version, about = "Subshifts of finite type on finitely generated groups")]
struct Cli {
    /// Worker threads for the ball search (1 = sequential).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide emptiness exactly (Z and free-group tilesets).
    Decide {
        /// Tileset file.
        #[arg(long)]
        sft: PathBuf,
    },
    /// Semi-decide emptiness by exhaustive ball search.
    Search {
        /// Tileset file.
        #[arg(long)]
        sft: PathBuf,
        /// Largest ball radius to search.
        #[arg(long, default_value_t = 3)]
        radius: u32,
        /// Node budget per radius (SFT_BUDGET env overrides the default).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Compile a plane tileset onto a group with a central direction.
    Reduce {
        /// Plane (z2) tileset file.
        #[arg(long)]
        sft: PathBuf,
        /// Target group name, e.g. heisenberg.
        #[arg(long)]
        group: String,
        /// Ray file; searched automatically when absent.
        #[arg(long)]
        ray: Option<PathBuf>,
        /// Output file (stdout when absent).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Lift a subgroup tileset along a coset embedding.
    Lift {
        /// Tileset file over the subgroup.
        #[arg(long)]
        sft: PathBuf,
        /// Embedding name: z-in-z2, 2z-in-z, z-in-heisenberg.
        #[arg(long)]
        embedding: String,
        /// Output file (stdout when absent).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Encode a periodic plane configuration into a ball of the target.
    Encode {
        /// constant, constant:SYM, checkerboard, stripes, or a plane-config file.
        #[arg(long)]
        config: String,
        /// Reduced tileset file (output of reduce).
        #[arg(long = "sft-reduced")]
        sft_reduced: PathBuf,
        /// Ball radius to fill.
        #[arg(long)]
        radius: u32,
        /// Output file (stdout when absent).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Read a plane patch back out of a window configuration.
    Decode {
        /// Configuration file over the reduced tileset's target.
        #[arg(long)]
        window: PathBuf,
        /// Reduced tileset file (output of reduce).
        #[arg(long = "sft-reduced")]
        sft_reduced: PathBuf,
        /// Patch width in cells.
        #[arg(long, default_value_t = 2)]
        width: usize,
        /// Patch height in cells.
        #[arg(long, default_value_t = 2)]
        height: usize,
        /// Output file (stdout when absent).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Search for a subword-free ray in a group.
    FindRay {
        /// Group name.
        #[arg(long)]
        group: String,
        /// Verified ray length.
        #[arg(long, default_value_t = 64)]
        length: usize,
        /// Output file (stdout when absent).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Profile ball boundaries: components and Menger widths.
    EndsProbe {
        /// Group name.
        #[arg(long)]
        group: String,
        /// Comma-separated strictly increasing radii, e.g. 1,2,3,4.
        #[arg(long, value_delimiter = ',', required = true)]
        radii: Vec<u32>,
        /// Output file (stdout when absent).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Draw a patch or a ball assignment as SVG.
    Render {
        /// Patch or configuration file.
        #[arg(long)]
        patch: PathBuf,
        /// Output file (stdout when absent).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn format(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_FORMAT,
            message: message.into(),
        }
    }

    fn budget(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_BUDGET,
            message: message.into(),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Failure {
        Failure::format(e.to_string())
    }
}

impl From<RenderError> for Failure {
    fn from(e: RenderError) -> Failure {
        Failure::format(e.to_string())
    }
}

fn group_failure(e: GroupError) -> Failure {
    match e {
        GroupError::BallBudget { .. } | GroupError::NormBudget { .. } => {
            Failure::budget(e.to_string())
        }
        GroupError::UnknownModel(_) | GroupError::RankOutOfRange { .. } => {
            Failure::usage(e.to_string())
        }
        _ => Failure::format(e.to_string()),
    }
}

fn decider_failure(e: DeciderError) -> Failure {
    match e {
        DeciderError::BudgetExhausted { .. } => Failure::budget(e.to_string()),
        DeciderError::WrongModel { .. } => Failure::usage(e.to_string()),
        DeciderError::Sft(inner) => Failure::format(inner.to_string()),
    }
}

fn reduction_failure(e: ReductionError) -> Failure {
    match e {
        ReductionError::RayNotFound { .. } => Failure::budget(e.to_string()),
        ReductionError::Group(g) => group_failure(g),
        ReductionError::WrongBase { .. }
        | ReductionError::MissingCentral { .. }
        | ReductionError::NoSecondDirection { .. }
        | ReductionError::RayModelMismatch { .. } => Failure::usage(e.to_string()),
        _ => Failure::format(e.to_string()),
    }
}

fn ends_failure(e: EndsError) -> Failure {
    match e {
        EndsError::Group(g) => group_failure(g),
        EndsError::BadRange { .. } | EndsError::BadRadii => Failure::usage(e.to_string()),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::format(format!("cannot read {}: {e}", path.display())))
}

fn model_from(name: &str) -> Result<GroupModel, Failure> {
    GroupModel::from_name(name).map_err(group_failure)
}

/// JSON result: compact on stdout, pretty into `-o FILE`.
fn emit_json(doc: &Value, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => {
            let mut text = serde_json::to_string_pretty(doc).expect("serializable");
            text.push('\n');
            std::fs::write(path, text)
                .map_err(|e| Failure::format(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            println!("{doc}");
            Ok(())
        }
    }
}

fn emit_text(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::format(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn node_budget(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("SFT_BUDGET") {
        Ok(text) => text
            .parse()
            .map_err(|_| Failure::usage(format!("SFT_BUDGET must be an integer, got `{text}`"))),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

/// Verdict document plus the exit code it implies.
fn verdict_document(
    model: &GroupModel,
    verdict: &EmptinessVerdict,
) -> Result<(Value, i32), Failure> {
    let code = match verdict {
        EmptinessVerdict::Nonempty(_) => EXIT_NONEMPTY,
        EmptinessVerdict::Empty(_) => EXIT_EMPTY,
        EmptinessVerdict::Unknown(_) => EXIT_UNKNOWN,
    };
    Ok((formats::serialize_verdict(model, verdict)?, code))
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Decide { sft } => {
            let parsed = formats::parse_tileset(&read_input(&sft)?)?;
            let s = parsed.sft();
            let verdict = match s.model {
                GroupModel::FreeAbelian(1) => decide_z(s),
                GroupModel::FreeGroup(_) => decide_tree(s),
                ref other => {
                    return Err(Failure::usage(format!(
                        "no exact decider for {}; use `gsft search`",
                        other.name()
                    )))
                }
            }
            .map_err(decider_failure)?;
            let (doc, code) = verdict_document(&s.model, &verdict)?;
            emit_json(&doc, None)?;
            Ok(code)
        }
        Command::Search {
            sft,
            radius,
            budget,
        } => {
            let parsed = formats::parse_tileset(&read_input(&sft)?)?;
            let s = parsed.sft();
            let budget = node_budget(budget)?;
            let verdict = emptiness_semidecide_threaded(s, radius, budget, cli.threads)
                .map_err(decider_failure)?;
            let (doc, code) = verdict_document(&s.model, &verdict)?;
            emit_json(&doc, None)?;
            Ok(code)
        }
        Command::Reduce {
            sft,
            group,
            ray,
            out,
        } => {
            let parsed = formats::parse_tileset(&read_input(&sft)?)?;
            let ParsedTileset::Plain(base) = parsed else {
                return Err(Failure::usage(
                    "reduce expects a plain plane tileset, not an already reduced one",
                ));
            };
            let target = model_from(&group)?;
            let ray = match ray {
                Some(path) => formats::parse_ray(&read_input(&path)?)?,
                None => {
                    find_ray(&target, 64, RAY_SEARCH_BUDGET).map_err(reduction_failure)?
                }
            };
            let reduced = reduce_z2_to_g(&base, &target, &ray).map_err(reduction_failure)?;
            emit_json(&formats::serialize_reduced(&reduced)?, out.as_deref())?;
            Ok(EXIT_NONEMPTY)
        }
        Command::Lift {
            sft,
            embedding,
            out,
        } => {
            let parsed = formats::parse_tileset(&read_input(&sft)?)?;
            let e = CosetEmbedding::from_name(&embedding).map_err(group_failure)?;
            let lifted = lift_subgroup_sft(parsed.sft(), &e).map_err(reduction_failure)?;
            emit_json(&formats::serialize_sft(&lifted)?, out.as_deref())?;
            Ok(EXIT_NONEMPTY)
        }
        Command::Encode {
            config,
            sft_reduced,
            radius,
            out,
        } => {
            let ParsedTileset::Reduced(reduced) =
                formats::parse_tileset(&read_input(&sft_reduced)?)?
            else {
                return Err(Failure::usage(
                    "encode expects a reduced tileset (output of `gsft reduce`)",
                ));
            };
            let plane = if Path::new(&config).exists() {
                formats::parse_plane_config(&read_input(Path::new(&config))?, &reduced.base.alphabet)?
            } else {
                formats::plane_config_from_spec(&config, &reduced.base.alphabet)?
            };
            let result =
                encode_z2_config(&plane, &reduced, radius).map_err(reduction_failure)?;
            let model = reduced.target().clone();
            let mut doc = formats::serialize_configuration(&model, &result.config)?;
            let uncovered = result
                .uncovered
                .iter()
                .map(|g| formats::word_value(&model, g))
                .collect::<Result<Vec<_>, _>>()?;
            doc.as_object_mut()
                .expect("configuration documents are objects")
                .insert("uncovered".into(), Value::Array(uncovered));
            emit_json(&doc, out.as_deref())?;
            Ok(EXIT_NONEMPTY)
        }
        Command::Decode {
            window,
            sft_reduced,
            width,
            height,
            out,
        } => {
            let ParsedTileset::Reduced(reduced) =
                formats::parse_tileset(&read_input(&sft_reduced)?)?
            else {
                return Err(Failure::usage(
                    "decode expects a reduced tileset (output of `gsft reduce`)",
                ));
            };
            let (model, c) = formats::parse_configuration(&read_input(&window)?)?;
            if &model != reduced.target() {
                return Err(Failure::format(format!(
                    "window is over {}, the reduced tileset targets {}",
                    model.name(),
                    reduced.target().name()
                )));
            }
            let patch =
                decode_g_config(&c, &reduced, width, height).map_err(reduction_failure)?;
            emit_json(&formats::serialize_patch(&patch), out.as_deref())?;
            Ok(EXIT_NONEMPTY)
        }
        Command::FindRay { group, length, out } => {
            let model = model_from(&group)?;
            let ray = find_ray(&model, length, RAY_SEARCH_BUDGET).map_err(reduction_failure)?;
            emit_json(&formats::serialize_ray(&ray)?, out.as_deref())?;
            Ok(EXIT_NONEMPTY)
        }
        Command::EndsProbe { group, radii, out } => {
            let model = model_from(&group)?;
            let report = thickness_profile(&model, &radii, BALL_CAP).map_err(ends_failure)?;
            emit_json(&formats::serialize_probe(&report), out.as_deref())?;
            Ok(EXIT_NONEMPTY)
        }
        Command::Render { patch, out } => {
            let text = read_input(&patch)?;
            let kind: Option<String> = serde_json::from_str::<Value>(&text)
                .ok()
                .and_then(|v| v.get("kind").and_then(Value::as_str).map(str::to_string));
            let svg = match kind.as_deref() {
                Some("patch") => patch_svg(&formats::parse_patch(&text)?)?,
                Some("configuration") => {
                    let (model, c) = formats::parse_configuration(&text)?;
                    configuration_svg(&model, &c)?
                }
                _ => {
                    return Err(Failure::format(
                        "render expects a patch or configuration document",
                    ))
                }
            };
            emit_text(&svg, out.as_deref())?;
            Ok(EXIT_NONEMPTY)
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            exit(code);
        }
    };
    match run(cli) {
        Ok(code) => exit(code),
        Err(f) => {
            eprintln!("gsft: {}", f.message);
            exit(f.code);
        }
    }
}

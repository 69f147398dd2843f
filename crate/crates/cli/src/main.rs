//! `amalgam`: command-line front end for geometric amalgamation diagrams.
//!
//! Exit codes: 0 success (or "valid" / "isomorphic"), 1 the negative answer of
//! `validate` and `iso`, 2 any error. Errors go to stderr with one of the
//! prefixes `usage error:`, `io error:`, `parse error:` or `invalid diagram:`,
//! and nothing is written to stdout.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use amalgam::{
    abelianization, automorphism_count, axis_degree, betti_numbers, boundary_count, build_cover_tree, canonical_code,
    enumerate_with, euler_characteristic, export_dot, export_json, find_isomorphism, limit_presentation,
    maximal_transitive_sets, parse_gaf, print_gaf, random_diagram_with, validate_with, Diagram, EnumBounds, Error,
    RandomOptions, ValidationOptions,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "amalgam",
    version,
    about = "Validate, compare and analyse geometric amalgamation diagrams"
)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a diagram; exit 0 if valid, 1 if not.
    Validate {
        file: PathBuf,
        /// Only require axis degree >= 3, not three distinct chambers.
        #[arg(long)]
        lax: bool,
        /// Also reject nonorientable chambers.
        #[arg(long)]
        orientable_only: bool,
    },
    /// Print the canonical code.
    Canon { file: PathBuf },
    /// Exit 0 if the two diagrams are isomorphic, 1 if not.
    Iso {
        first: PathBuf,
        second: PathBuf,
        /// Print the vertex bijection.
        #[arg(long)]
        witness: bool,
    },
    /// Print a presentation of the direct limit.
    Present {
        file: PathBuf,
        /// Keep the axis generators instead of eliminating them.
        #[arg(long)]
        keep_axes: bool,
    },
    /// Euler characteristic, Betti numbers, torsion and degree data.
    Invariants { file: PathBuf },
    /// One canonical code per isomorphism class, one per line.
    Enum {
        #[arg(long)]
        axes: u32,
        #[arg(long)]
        chambers: u32,
        #[arg(long)]
        max_rank: u32,
        #[arg(long)]
        orientable_only: bool,
        /// Largest number of parallel edges between an axis and a chamber.
        #[arg(long, default_value_t = 1)]
        max_multiplicity: u32,
    },
    /// Truncated model of the universal cover's tree.
    Cover {
        file: PathBuf,
        #[arg(long)]
        root: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        fanout: usize,
        /// Graphviz output.
        #[arg(long)]
        dot: bool,
    },
    /// A random valid diagram in GAF, determined by the seed.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        axes: u32,
        #[arg(long)]
        chambers: u32,
        #[arg(long)]
        max_rank: u32,
        #[arg(long)]
        orientable_only: bool,
    },
    /// Convert a diagram to another format.
    Export {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

enum Failure {
    Usage(String),
    Io(String),
    Parse(String),
    Invalid(String),
}

impl Failure {
    fn library(e: Error) -> Self {
        match e {
            Error::InvalidDiagram(report) => Failure::Invalid(report.to_string()),
            Error::Parse(e) => Failure::Parse(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// What to print, and the exit code to use.
struct Answer {
    text: String,
    json: Value,
    code: u8,
}

impl Answer {
    fn ok(text: String, json: Value) -> Self {
        Answer { text, json, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let message = rendered.trim().trim_start_matches("error: ");
            eprintln!("usage error: {message}");
            return ExitCode::from(2);
        }
    };
    match run(&cli.command) {
        Ok(answer) => {
            let mut out = if cli.json {
                serde_json::to_string_pretty(&answer.json).expect("json values serialize")
            } else {
                answer.text
            };
            if !out.is_empty() && !out.ends_with('\n') {
                out.push('\n');
            }
            // a closed pipe downstream is not our failure
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::from(answer.code)
        }
        Err(failure) => {
            let (prefix, message) = match failure {
                Failure::Usage(m) => ("usage error", m),
                Failure::Io(m) => ("io error", m),
                Failure::Parse(m) => ("parse error", m),
                Failure::Invalid(m) => ("invalid diagram", m),
            };
            eprintln!("{prefix}: {message}");
            ExitCode::from(2)
        }
    }
}

/// Reads and parses a GAF file without validating it.
fn read(path: &Path) -> Result<Diagram, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    parse_gaf(&bytes).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

/// Reads a file that must hold a valid diagram.
fn read_valid(path: &Path) -> Result<Diagram, Failure> {
    let d = read(path)?;
    let report = amalgam::validate(&d);
    if !report.is_valid() {
        return Err(Failure::Invalid(format!("{}: {report}", path.display())));
    }
    Ok(d)
}

fn run(command: &Command) -> Result<Answer, Failure> {
    let lib = Failure::library;
    match command {
        Command::Validate {
            file,
            lax,
            orientable_only,
        } => {
            let d = read(file)?;
            let mut opts = if *lax {
                ValidationOptions::lax()
            } else {
                ValidationOptions::default()
            };
            opts.orientable_only = *orientable_only;
            let report = validate_with(&d, opts);
            let mut text = String::new();
            if report.is_valid() {
                text.push_str("valid\n");
            } else {
                for v in report.violations() {
                    let _ = writeln!(text, "{}: {}", v.rule, v.message);
                }
            }
            let violations: Vec<Value> = report
                .violations()
                .iter()
                .map(|v| json!({"rule": v.rule.id(), "element": v.element, "message": v.message}))
                .collect();
            Ok(Answer {
                text,
                json: json!({"valid": report.is_valid(), "violations": violations}),
                code: if report.is_valid() { 0 } else { 1 },
            })
        }
        Command::Canon { file } => {
            let code = canonical_code(&read_valid(file)?).map_err(lib)?;
            Ok(Answer::ok(code.to_string(), json!({"code": code.to_string()})))
        }
        Command::Iso { first, second, witness } => {
            let (d1, d2) = (read_valid(first)?, read_valid(second)?);
            let found = find_isomorphism(&d1, &d2).map_err(lib)?;
            let mut text = String::from(if found.is_some() {
                "isomorphic\n"
            } else {
                "not isomorphic\n"
            });
            let mut out = json!({"isomorphic": found.is_some()});
            if let (true, Some(w)) = (*witness, &found) {
                for (a, b) in &w.axis_map {
                    let _ = writeln!(text, "axis {a} -> {b}");
                }
                for (a, b) in &w.chamber_map {
                    let _ = writeln!(text, "chamber {a} -> {b}");
                }
                out["witness"] = json!({"axis_map": w.axis_map, "chamber_map": w.chamber_map});
            }
            Ok(Answer {
                text,
                json: out,
                code: if found.is_some() { 0 } else { 1 },
            })
        }
        Command::Present { file, keep_axes } => {
            let p = limit_presentation(&read_valid(file)?, !keep_axes).map_err(lib)?;
            let relators: Vec<String> = p.relators.iter().map(ToString::to_string).collect();
            Ok(Answer::ok(
                p.to_string(),
                json!({"generators": p.generators, "relators": relators}),
            ))
        }
        Command::Invariants { file } => invariants(&read_valid(file)?).map_err(lib),
        Command::Enum {
            axes,
            chambers,
            max_rank,
            orientable_only,
            max_multiplicity,
        } => {
            if *max_multiplicity == 0 {
                return Err(Failure::Usage("--max-multiplicity must be at least 1".into()));
            }
            let bounds =
                EnumBounds::new(*axes, *chambers, *max_rank, *orientable_only).with_multiplicity(*max_multiplicity);
            let codes: Vec<String> = enumerate_with(&bounds).iter().map(ToString::to_string).collect();
            let mut text = codes.join("\n");
            if !text.is_empty() {
                text.push('\n');
            }
            Ok(Answer::ok(text, json!(codes)))
        }
        Command::Cover {
            file,
            root,
            depth,
            fanout,
            dot,
        } => {
            let d = read_valid(file)?;
            let t = build_cover_tree(&d, root, *depth, *fanout).map_err(lib)?;
            let sets = maximal_transitive_sets(&t);
            let text = if *dot {
                t.export_dot()
            } else {
                let mut s = String::new();
                for n in &t.nodes {
                    let parent = n.parent.map_or("-".to_string(), |p| p.to_string());
                    let _ = writeln!(s, "{} {} {} parent={parent} level={}", n.id, n.kind, n.label, n.level);
                }
                for set in &sets {
                    let ids: Vec<String> = set.iter().map(ToString::to_string).collect();
                    let _ = writeln!(s, "maximal set: {}", ids.join(" "));
                }
                s
            };
            Ok(Answer::ok(
                text,
                json!({
                    "depth": t.depth,
                    "fanout": t.fanout,
                    "nodes": t.nodes,
                    "maximal_transitive_sets": sets,
                }),
            ))
        }
        Command::Random {
            seed,
            axes,
            chambers,
            max_rank,
            orientable_only,
        } => {
            let mut opts = RandomOptions::new(*axes, *chambers, *max_rank);
            opts.orientable_only = *orientable_only;
            let d = random_diagram_with(*seed, &opts).map_err(lib)?;
            let json: Value = serde_json::from_str(&export_json(&d)).expect("export is json");
            Ok(Answer::ok(print_gaf(&d), json))
        }
        Command::Export { file, format } => {
            let d = read(file)?;
            let text = match format {
                Format::Json => export_json(&d),
                Format::Dot => export_dot(&d),
            };
            let json: Value = match format {
                Format::Json => serde_json::from_str(&text).expect("export is json"),
                Format::Dot => json!({"dot": text}),
            };
            Ok(Answer::ok(text, json))
        }
    }
}

fn invariants(d: &Diagram) -> amalgam::Result<Answer> {
    let chi = euler_characteristic(d)?;
    let betti = betti_numbers(d)?;
    let h1 = abelianization(d)?;
    let mut ranks: Vec<(u32, bool)> = d.chambers.iter().map(|c| (c.data.rank, c.data.orientable)).collect();
    ranks.sort_unstable();
    let mut axis_degrees = d
        .axes
        .iter()
        .map(|a| axis_degree(d, a))
        .collect::<amalgam::Result<Vec<_>>>()?;
    axis_degrees.sort_unstable_by(|a, b| b.cmp(a));
    let mut boundaries = d
        .chambers
        .iter()
        .map(|c| boundary_count(d, &c.name))
        .collect::<amalgam::Result<Vec<_>>>()?;
    boundaries.sort_unstable_by(|a, b| b.cmp(a));
    let automorphisms = automorphism_count(d)?;

    let list = |xs: &[u32]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    let torsion: Vec<String> = h1.invariant_factors.iter().map(ToString::to_string).collect();
    let rank_text: Vec<String> = ranks
        .iter()
        .map(|&(r, o)| format!("{r},{}", if o { "or" } else { "non" }))
        .collect();
    let mut text = String::new();
    let _ = writeln!(text, "chi: {chi}");
    let _ = writeln!(text, "betti: {} {} {}", betti.b0, betti.b1, betti.b2);
    let _ = writeln!(text, "torsion: {}", torsion.join(" "));
    let _ = writeln!(text, "free_rank: {}", h1.free_rank);
    let _ = writeln!(text, "ranks: {}", rank_text.join(" "));
    let _ = writeln!(text, "axis_degrees: {}", list(&axis_degrees));
    let _ = writeln!(text, "boundary_counts: {}", list(&boundaries));
    let _ = writeln!(text, "automorphisms: {automorphisms}");
    let json = json!({
        "chi": chi,
        "betti": betti.as_array(),
        "torsion": h1.invariant_factors,
        "free_rank": h1.free_rank,
        "ranks": ranks.iter().map(|&(rank, orientable)| json!({"rank": rank, "orientable": orientable})).collect::<Vec<_>>(),
        "axis_degrees": axis_degrees,
        "boundary_counts": boundaries,
        // may exceed 2^53, so kept exact as a string
        "automorphisms": automorphisms.to_string(),
    });
    Ok(Answer::ok(text, json))
}

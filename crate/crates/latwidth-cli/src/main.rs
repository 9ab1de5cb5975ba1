use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use latwidth::cli::{self, Request};
use latwidth::corpus::{CorpusSpec, Family};
use latwidth::io;
use latwidth::width::{lattice_width, WidthCertificate};
use latwidth::{Error, Instance};

#[derive(Parser)]
#[command(
    name = "latwidth",
    version,
    about = "Exact lattice widths, width directions, and lattice-point bound \
             verification for rational polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance file (JSON with exact rational coordinates).
    instance: PathBuf,
    /// Also write the report document to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Lattice width, classification, and certificate of an instance.
    Width {
        #[command(flatten)]
        common: InstanceArgs,
        /// Write a 2D sketch of the body and its width directions.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Complete set of lattice width directions of an instance.
    Directions {
        #[command(flatten)]
        common: InstanceArgs,
        /// Write a 2D sketch of the body and its width directions.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Hull of the width directions: central symmetry, interior, boundary.
    #[command(name = "dual-body")]
    DualBody {
        #[command(flatten)]
        common: InstanceArgs,
    },
    /// Direction-count bound 3^d - 1 with its cross-polytope equality case.
    #[command(name = "check-main")]
    CheckMain {
        #[command(flatten)]
        common: InstanceArgs,
    },
    /// Lattice-point count bound 3^d via injectivity of reduction mod 3.
    #[command(name = "verify-3d")]
    Verify3d {
        #[command(flatten)]
        common: InstanceArgs,
    },
    /// Convex-position refinement: count bound 2^(d+1) - 1.
    #[command(name = "verify-vertex-bound")]
    VerifyVertexBound {
        #[command(flatten)]
        common: InstanceArgs,
    },
    /// Packing of the tripled body by translates at doubled lattice points.
    #[command(name = "verify-packing")]
    VerifyPacking {
        #[command(flatten)]
        common: InstanceArgs,
    },
    /// Equality-case orchestration: 3^d points iff standard cube.
    #[command(name = "verify-equality")]
    VerifyEquality {
        #[command(flatten)]
        common: InstanceArgs,
    },
    /// Is the instance a standard lattice cube?
    #[command(name = "recognize-cube")]
    RecognizeCube {
        #[command(flatten)]
        common: InstanceArgs,
    },
    /// Is the instance a regular lattice cross-polytope?
    #[command(name = "recognize-cross")]
    RecognizeCross {
        #[command(flatten)]
        common: InstanceArgs,
    },
    /// Facet layering of a 3^d-point instance.
    Layering {
        #[command(flatten)]
        common: InstanceArgs,
    },
    /// Mod-3 completion: the unique z with x + y + z = 0 mod 3, and its average.
    Mod3 {
        #[command(flatten)]
        common: InstanceArgs,
        /// First point, comma-separated integers.
        #[arg(long)]
        x: String,
        /// Second point, comma-separated integers.
        #[arg(long)]
        y: String,
    },
    /// Brute-force width scan over a max-norm box of functionals.
    Oracle {
        #[command(flatten)]
        common: InstanceArgs,
        /// Scan radius in the max norm.
        #[arg(long)]
        radius: i64,
    },
    /// Generate a seeded instance corpus.
    Gen {
        /// cube | cross | random-symmetric | random-general |
        /// unimodular-orbit | exhaustive-symmetric
        #[arg(long)]
        family: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Coordinate box radius for sampled points.
        #[arg(long, default_value_t = 2)]
        bound: i64,
        /// Base instance (required by unimodular-orbit).
        #[arg(long)]
        base: Option<PathBuf>,
        /// Directory that receives one instance file per member.
        #[arg(long)]
        out: PathBuf,
    },
}

fn load_instance(path: &Path) -> Result<Instance, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    io::parse_instance(&text)
}

/// Print an error-verdict report document and return exit code 2.
fn fail_early(command: &str, e: &Error) -> u8 {
    let doc = json!({
        "format_version": io::FORMAT_VERSION,
        "command": command,
        "verdict": "error",
        "witness": serde_json::Value::Null,
        "error": e.to_string(),
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&doc).expect("static document")
    );
    2
}

fn write_svg(inst: &Instance, path: &Path) -> Result<(), Error> {
    let Instance::Polytope(p) = inst else {
        return Err(Error::Unsupported(
            "drawings need a bounded polytope instance".to_string(),
        ));
    };
    let dirs = match lattice_width(inst)? {
        WidthCertificate::Positive(c) => c.directions,
        _ => Vec::new(),
    };
    let svg = cli::svg_drawing(p, &dirs)?;
    std::fs::write(path, svg)
        .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
}

/// Execute a request, print its report, honor --out, return exit code.
fn dispatch(req: Request, out: Option<&Path>) -> u8 {
    let report = cli::execute(&req);
    let doc = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
    println!("{doc}");
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, &doc) {
            eprintln!("cannot write {}: {e}", path.display());
            return 2;
        }
    }
    report.verdict.exit_code() as u8
}

fn instance_command(
    name: &'static str,
    common: &InstanceArgs,
    svg: Option<&Path>,
    build: impl FnOnce(Instance) -> Result<Request, Error>,
) -> u8 {
    let inst = match load_instance(&common.instance) {
        Ok(i) => i,
        Err(e) => return fail_early(name, &e),
    };
    if let Some(svg_path) = svg {
        if let Err(e) = write_svg(&inst, svg_path) {
            return fail_early(name, &e);
        }
    }
    match build(inst) {
        Ok(req) => dispatch(req, common.out.as_deref()),
        Err(e) => fail_early(name, &e),
    }
}

fn run_gen(
    family: &str,
    dim: usize,
    seed: u64,
    count: usize,
    bound: i64,
    base: Option<&Path>,
    out: &Path,
) -> u8 {
    let inner = || -> Result<Vec<PathBuf>, Error> {
        let family = Family::from_str(family)?;
        let base_inst = base.map(load_instance).transpose()?;
        let spec = CorpusSpec {
            seed,
            dim,
            family,
            bound,
            count,
        };
        cli::generate_files(&spec, base_inst.as_ref(), out)
    };
    match inner() {
        Ok(paths) => {
            let doc = json!({
                "format_version": io::FORMAT_VERSION,
                "command": "gen",
                "verdict": "pass",
                "witness": {
                    "count": paths.len(),
                    "files": paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
                },
                "error": serde_json::Value::Null,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("static document")
            );
            0
        }
        Err(e) => fail_early("gen", &e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Cmd::Width { common, svg } => {
            instance_command("width", common, svg.as_deref(), |i| Ok(Request::Width(i)))
        }
        Cmd::Directions { common, svg } => {
            instance_command("directions", common, svg.as_deref(), |i| {
                Ok(Request::Directions(i))
            })
        }
        Cmd::DualBody { common } => {
            instance_command("dual-body", common, None, |i| Ok(Request::DualBody(i)))
        }
        Cmd::CheckMain { common } => {
            instance_command("check-main", common, None, |i| Ok(Request::CheckMain(i)))
        }
        Cmd::Verify3d { common } => {
            instance_command("verify-3d", common, None, |i| Ok(Request::Verify3d(i)))
        }
        Cmd::VerifyVertexBound { common } => {
            instance_command("verify-vertex-bound", common, None, |i| {
                Ok(Request::VertexBound(i))
            })
        }
        Cmd::VerifyPacking { common } => {
            instance_command("verify-packing", common, None, |i| Ok(Request::Packing(i)))
        }
        Cmd::VerifyEquality { common } => instance_command("verify-equality", common, None, |i| {
            Ok(Request::Equality(i))
        }),
        Cmd::RecognizeCube { common } => instance_command("recognize-cube", common, None, |i| {
            Ok(Request::RecognizeCube(i))
        }),
        Cmd::RecognizeCross { common } => instance_command("recognize-cross", common, None, |i| {
            Ok(Request::RecognizeCross(i))
        }),
        Cmd::Layering { common } => {
            instance_command("layering", common, None, |i| Ok(Request::Layering(i)))
        }
        Cmd::Mod3 { common, x, y } => instance_command("mod3", common, None, |instance| {
            let d = instance.ambient_dim();
            Ok(Request::Mod3 {
                x: cli::parse_int_csv(x, d)?,
                y: cli::parse_int_csv(y, d)?,
                instance,
            })
        }),
        Cmd::Oracle { common, radius } => instance_command("oracle", common, None, |instance| {
            Ok(Request::Oracle {
                instance,
                radius: *radius,
            })
        }),
        Cmd::Gen {
            family,
            dim,
            seed,
            count,
            bound,
            base,
            out,
        } => run_gen(family, *dim, *seed, *count, *bound, base.as_deref(), out),
    };
    ExitCode::from(code)
}

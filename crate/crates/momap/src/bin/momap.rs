//! Thin command-line front end over [`momap::commands`].
//!
//! Exit codes: 0 all checks pass, 2 invalid input, 3 obstructed,
//! 4 undecided within the configured degree cap.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use momap::commands::{
    cmd_analyze, cmd_construct, cmd_equivariance, cmd_extend, cmd_validate, cmd_verify,
};
use momap::complexes::Flavor;
use momap::moment::MomentMap;
use momap::report::Report;
use momap::scene::{load_moment_map, load_scene, Scene};
use momap::Error;

#[derive(Parser)]
#[command(
    name = "momap",
    version,
    about = "Exact constructor and verifier for weak and homotopy moment maps \
             on polynomial n-plectic structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Line-oriented report.
    Text,
    /// JSON document with the same content.
    Structured,
}

#[derive(Args)]
struct SceneArgs {
    /// Scene file (JSON) describing the algebra, structure, and action.
    #[arg(long)]
    scene: PathBuf,

    /// Override the scene's polynomial degree cap for correction searches.
    #[arg(long)]
    degree_cap: Option<usize>,

    /// Override the scene's number of random sample points.
    #[arg(long)]
    sample_points: Option<usize>,

    /// Override the scene's sampling seed.
    #[arg(long)]
    seed: Option<u64>,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct MapArg {
    /// Moment-map file; defaults to the scene's embedded `moment_map`.
    #[arg(long)]
    map: Option<PathBuf>,
}

#[derive(Args)]
struct OutArg {
    /// Where to write the resulting moment-map file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the scene's structural axioms (Jacobi, closedness,
    /// nondegeneracy, action axioms).
    Validate(SceneArgs),

    /// Report Lie kernels, cohomology, the obstruction map and its
    /// class, and the existence verdicts.
    Analyze(SceneArgs),

    /// Construct a moment map and optionally write it out.
    Construct {
        #[command(flatten)]
        scene: SceneArgs,

        /// Construct a weak moment map (defined on the Lie kernels).
        #[arg(long, conflicts_with = "homotopy")]
        weak: bool,

        /// Construct a homotopy moment map (the default).
        #[arg(long)]
        homotopy: bool,

        #[command(flatten)]
        out: OutArg,
    },

    /// Check a moment map against its defining equations.
    Verify {
        #[command(flatten)]
        scene: SceneArgs,

        #[command(flatten)]
        map: MapArg,
    },

    /// Extend a verified weak moment map to a homotopy moment map.
    Extend {
        #[command(flatten)]
        scene: SceneArgs,

        #[command(flatten)]
        map: MapArg,

        #[command(flatten)]
        out: OutArg,
    },

    /// Check infinitesimal equivariance and search for an equivariant
    /// correction when it fails.
    Equivariance {
        #[command(flatten)]
        scene: SceneArgs,

        #[command(flatten)]
        map: MapArg,

        #[command(flatten)]
        out: OutArg,
    },
}

impl Command {
    fn scene_args(&self) -> &SceneArgs {
        match self {
            Command::Validate(s) | Command::Analyze(s) => s,
            Command::Construct { scene, .. }
            | Command::Verify { scene, .. }
            | Command::Extend { scene, .. }
            | Command::Equivariance { scene, .. } => scene,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Analyze(_) => "analyze",
            Command::Construct { .. } => "construct",
            Command::Verify { .. } => "verify",
            Command::Extend { .. } => "extend",
            Command::Equivariance { .. } => "equivariance",
        }
    }
}

fn load(args: &SceneArgs) -> momap::Result<Scene> {
    let mut scene = load_scene(&args.scene)?;
    if let Some(cap) = args.degree_cap {
        scene.settings.degree_cap = cap;
    }
    if let Some(points) = args.sample_points {
        scene.settings.sample_points = points;
    }
    if let Some(seed) = args.seed {
        scene.settings.seed = seed;
    }
    Ok(scene)
}

/// The map file when given, else the scene's embedded map.
fn resolve_map(scene: &Scene, arg: &MapArg) -> momap::Result<MomentMap> {
    match &arg.map {
        Some(path) => {
            let structure = scene.structure.as_ref().ok_or_else(|| {
                Error::Precondition("a moment-map file needs a structure in the scene".into())
            })?;
            load_moment_map(path, structure)
        }
        None => scene.moment_map.clone().ok_or_else(|| {
            Error::Precondition(
                "no moment map given: pass --map PATH or embed `moment_map` in the scene".into(),
            )
        }),
    }
}

fn run(command: &Command) -> momap::Result<Report> {
    let scene = load(command.scene_args())?;
    let mut report = match command {
        Command::Validate(_) => cmd_validate(&scene),
        Command::Analyze(_) => cmd_analyze(&scene)?,
        Command::Construct {
            weak, out, ..
        } => {
            let flavor = if *weak { Flavor::Kernel } else { Flavor::Full };
            cmd_construct(&scene, flavor, out.out.as_deref())?
        }
        Command::Verify { map, .. } => {
            let map = resolve_map(&scene, map)?;
            cmd_verify(&scene, &map)?
        }
        Command::Extend { map, out, .. } => {
            let map = resolve_map(&scene, map)?;
            cmd_extend(&scene, &map, out.out.as_deref())?
        }
        Command::Equivariance { map, out, .. } => {
            let map = resolve_map(&scene, map)?;
            cmd_equivariance(&scene, &map, out.out.as_deref())?
        }
    };
    report.command = format!(
        "{} --scene {}",
        command.name(),
        command.scene_args().scene.display()
    );
    Ok(report)
}

/// Prints to stdout, staying quiet when the reader has gone away
/// (e.g. piping into `head`).
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli.command) {
        Ok(report) => {
            let elapsed = start.elapsed().as_millis();
            match cli.command.scene_args().format {
                Format::Text => emit(&report.render_text(Some(elapsed))),
                Format::Structured => {
                    let value = report.render_json(Some(elapsed));
                    let rendered =
                        serde_json::to_string_pretty(&value).expect("json renders");
                    emit(&rendered);
                    emit("\n");
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

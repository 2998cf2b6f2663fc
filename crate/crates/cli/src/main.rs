use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use proxtree_core::construct::{draw_instance, Algorithm, ConstructError};
use proxtree_core::gen::{gen_instance, six_star_instance, GenParams};
use proxtree_core::io::{
    emit_drawing, emit_instance, parse_drawing_with, parse_instance, render_svg, FormatError, Overlay, SvgOptions,
};
use proxtree_core::verify::verify_drawing;
use proxtree_core::{BoundMode, DecompositionKind, Drawing, Instance};

#[derive(Parser)]
#[command(name = "proxtree", version, about = "Proximity drawings of high-degree trees")]
struct Cli {
    /// Worker threads for verification (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw an instance.
    Draw(DrawArgs),
    /// Check a drawing and write a JSON report.
    Verify(VerifyArgs),
    /// Render a drawing as SVG.
    Render(RenderArgs),
    /// Generate a random instance.
    Gen(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Deg5,
    Part5,
    Part4,
    Part3,
    Cover2,
}

impl From<Algo> for Algorithm {
    fn from(a: Algo) -> Self {
        match a {
            Algo::Deg5 => Algorithm::Degree5,
            Algo::Part5 => Algorithm::Part5,
            Algo::Part4 => Algorithm::Part4,
            Algo::Part3 => Algorithm::Part3,
            Algo::Cover2 => Algorithm::Cover2,
        }
    }
}

#[derive(Args)]
struct DrawArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Starting precision in bits; raised automatically when exhausted.
    #[arg(long, env = "PROXTREE_PRECISION")]
    precision: Option<u32>,
    /// Recorded in the drawing metadata. The constructions themselves are
    /// deterministic.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    drawing: PathBuf,
    /// Check against this instance's decomposition instead of the one stored
    /// with the drawing.
    #[arg(long)]
    against_instance: Option<PathBuf>,
    #[arg(long)]
    report: PathBuf,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    drawing: PathBuf,
    #[arg(long)]
    svg: PathBuf,
    /// Shade the lens of two vertices, given by name as `u,v`.
    #[arg(long, value_name = "U,V")]
    overlay_lens: Option<String>,
    #[arg(long, default_value_t = 800.0)]
    width: f64,
    #[arg(long)]
    no_labels: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Partition,
    Covering,
    /// The six-leaf star with its three-part covering.
    SixStar,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Degree,
    Outdegree,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Kind::Partition)]
    kind: Kind,
    #[arg(long, value_enum, default_value_t = Mode::Degree)]
    mode: Mode,
    #[arg(long, default_value_t = 5)]
    bound: usize,
    /// Number of parts.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Cap on the degree (or outdegree) of the whole tree.
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    out: PathBuf,
}

/// Bad input: unreadable, malformed or unsuitable files and arguments.
#[derive(Debug)]
struct InputError(anyhow::Error);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InputError {}

fn input<E: Into<anyhow::Error>>(e: E) -> anyhow::Error {
    anyhow::Error::new(InputError(e.into()))
}

fn read(path: &Path) -> anyhow::Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display())).map_err(input)
}

fn write(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn load_instance(path: &Path) -> anyhow::Result<Instance> {
    parse_instance(&read(path)?).with_context(|| path.display().to_string()).map_err(input)
}

/// Loads a drawing, resolving an instance given by path relative to the
/// drawing's directory.
fn load_drawing(path: &Path) -> anyhow::Result<Drawing> {
    let bytes = read(path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_drawing_with(&bytes, |reference| {
        fs::read(base.join(reference))
            .map_err(|e| FormatError::Reference { reference: reference.to_string(), message: e.to_string() })
    })
    .with_context(|| path.display().to_string())
    .map_err(input)
}

fn draw(args: DrawArgs) -> anyhow::Result<ExitCode> {
    let inst = load_instance(&args.input)?;
    let mut d = draw_instance(args.algo.into(), &inst, args.precision).map_err(|e| match e {
        ConstructError::Model(_) | ConstructError::WrongInput(_) | ConstructError::DegreeTooLarge { .. } => input(e),
        e => anyhow!(e),
    })?;
    d.meta_mut().seed = args.seed;
    write(&args.out, &emit_drawing(&d))?;
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let mut d = load_drawing(&args.drawing)?;
    if let Some(path) = &args.against_instance {
        let inst = load_instance(path)?;
        inst.validate().with_context(|| path.display().to_string()).map_err(input)?;
        if inst.tree != *d.tree() {
            return Err(input(anyhow!("{} describes a different tree than the drawing", path.display())));
        }
        d = d.with_instance(inst).map_err(input)?;
    }
    let report = verify_drawing(&d);
    let passed = report.passed();
    let json = serde_json::json!({ "passed": passed, "report": report });
    let mut bytes = serde_json::to_vec_pretty(&json)?;
    bytes.push(b'\n');
    write(&args.report, &bytes)?;
    print!("{}", report.summary());
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn render(args: RenderArgs) -> anyhow::Result<ExitCode> {
    let d = load_drawing(&args.drawing)?;
    let overlay = match &args.overlay_lens {
        None => None,
        Some(pair) => {
            let (u, v) = pair.split_once(',').ok_or_else(|| input(anyhow!("--overlay-lens expects `u,v`")))?;
            let t = d.tree();
            let u = t.require(u.trim()).map_err(input)?;
            let v = t.require(v.trim()).map_err(input)?;
            if u == v || d.position(u) == d.position(v) {
                return Err(input(anyhow!("the lens of `{pair}` is degenerate")));
            }
            Some(Overlay::Lens(u, v))
        }
    };
    let opts = SvgOptions { width: args.width, overlay, labels: !args.no_labels, ..SvgOptions::default() };
    write(&args.svg, render_svg(&d, &opts).as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn gen(args: GenArgs) -> anyhow::Result<ExitCode> {
    let mode = match args.mode {
        Mode::Degree => BoundMode::Degree,
        Mode::Outdegree => BoundMode::Outdegree,
    };
    let inst = match args.kind {
        Kind::SixStar => six_star_instance(),
        Kind::Partition | Kind::Covering => {
            let mut params = GenParams::partition(args.n, mode, args.bound, args.k);
            if matches!(args.kind, Kind::Covering) {
                params.kind = DecompositionKind::Covering;
                params.max_degree = Some(9);
            }
            if let Some(cap) = args.max_degree {
                params.max_degree = Some(cap);
            }
            gen_instance(args.seed, &params).map_err(input)?
        }
    };
    write(&args.out, &emit_instance(&inst))?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            bail!(InputError(anyhow!("--jobs must be positive")));
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    match cli.command {
        Command::Draw(a) => draw(a),
        Command::Verify(a) => verify(a),
        Command::Render(a) => render(a),
        Command::Gen(a) => gen(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<InputError>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

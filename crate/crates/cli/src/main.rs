use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dualtile::complex::build_normal_complex;
use dualtile::develop::{develop, verify_tiling, VerificationReport};
use dualtile::generators::{random_convex_polyhedron, regular_polyhedron, RegularKind};
use dualtile::io::{
    render_svg, Metadata, PoleChoice, PolyhedronDocument, RenderOptions, TilingDocument,
};
use dualtile::polyhedron::{
    angle_duality_check, dual, total_area, ConvexPolyhedron, DualPair,
};
use dualtile::quaternion::Side;

const EXIT_USAGE: u8 = 2;
const EXIT_GENERATION: u8 = 3;
const EXIT_VERIFICATION: u8 = 4;

/// Convex polyhedra in S^3 and their Maurer-Cartan tilings of S^2.
#[derive(Parser)]
#[command(name = "dualtile", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a regular or random polyhedron document.
    Generate(GenerateArgs),
    /// Write the polar dual of a polyhedron document.
    Dual(IoArgs),
    /// Develop a polyhedron into tiling documents.
    Develop(DevelopArgs),
    /// Check every identity and both tilings for a polyhedron.
    Verify(VerifyArgs),
    /// Render a tiling document as SVG.
    Render(RenderArgs),
    /// Print counts and measures of a polyhedron.
    Info(IoArgs),
}

#[derive(Args)]
struct IoArgs {
    /// Input file, or `-` for stdin.
    #[arg(default_value = "-")]
    input: String,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["regular", "random"]))]
struct GenerateArgs {
    #[arg(long, value_parser = parse_kind)]
    regular: Option<RegularKind>,
    /// Edge length in radians.
    #[arg(long, requires = "regular")]
    edge: Option<f64>,
    /// Number of points sampled from the cap.
    #[arg(long)]
    random: Option<usize>,
    /// Cap half-angle in radians.
    #[arg(long, requires = "random", default_value_t = 0.6)]
    cap: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
    Both,
}

impl SideArg {
    fn sides(self) -> Vec<Side> {
        match self {
            SideArg::Left => vec![Side::Left],
            SideArg::Right => vec![Side::Right],
            SideArg::Both => vec![Side::Left, Side::Right],
        }
    }
}

#[derive(Args)]
struct DevelopArgs {
    #[arg(default_value = "-")]
    input: String,
    #[arg(long, value_enum, default_value_t = SideArg::Left)]
    side: SideArg,
    /// Fibonacci samples for coverage verification.
    #[arg(long)]
    verify: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; with `--side both`, `-left` and `-right` are appended to the stem.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(default_value = "-")]
    input: String,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Projection {
    Stereo,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(default_value = "-")]
    input: String,
    #[arg(long, value_enum, default_value_t = Projection::Stereo)]
    projection: Projection,
    /// `auto` or a direction `x,y,z`.
    #[arg(long, default_value = "auto", value_parser = parse_pole)]
    pole: PoleChoice,
    #[arg(long, default_value_t = 800, value_parser = clap::value_parser!(u32).range(1..))]
    size: u32,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn parse_kind(s: &str) -> Result<RegularKind, String> {
    s.parse().map_err(|e: dualtile::Error| e.to_string())
}

fn parse_pole(s: &str) -> Result<PoleChoice, String> {
    if s == "auto" {
        return Ok(PoleChoice::Auto);
    }
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    match parts.as_slice() {
        [x, y, z] if (x * x + y * y + z * z) > 0.0 => Ok(PoleChoice::Fixed([*x, *y, *z])),
        _ => Err("expected `auto` or three comma-separated numbers, not all zero".into()),
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure { code: EXIT_USAGE, message: message.to_string() }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_input(input: &str) -> CliResult<String> {
    if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(Failure::usage)?;
        Ok(s)
    } else {
        fs::read_to_string(input).map_err(|e| Failure::usage(format!("{input}: {e}")))
    }
}

fn write_output(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(Failure::usage)
        }
    }
}

fn read_polyhedron(input: &str) -> CliResult<(ConvexPolyhedron, PolyhedronDocument)> {
    let text = read_input(input)?;
    let doc = PolyhedronDocument::from_json(&text).map_err(Failure::usage)?;
    let p = doc.to_polyhedron().map_err(Failure::usage)?;
    Ok((p, doc))
}

fn dual_pair(p: &ConvexPolyhedron) -> CliResult<DualPair> {
    dual(p).map_err(|e| Failure { code: EXIT_GENERATION, message: e.to_string() })
}

fn side_path(path: &Path, side: Side) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}-{}.{}", side.as_str(), ext.to_string_lossy()),
        None => format!("{stem}-{}", side.as_str()),
    };
    path.with_file_name(name)
}

fn generate(args: GenerateArgs) -> CliResult<()> {
    let fail = |e: dualtile::Error| Failure { code: EXIT_GENERATION, message: e.to_string() };
    let (p, meta) = if let Some(kind) = args.regular {
        let edge = args.edge.ok_or_else(|| Failure::usage("--regular requires --edge"))?;
        let p = regular_polyhedron(kind, edge).map_err(fail)?;
        let meta = Metadata {
            generator: Some(kind.to_string()),
            edge_length: Some(edge),
            ..Default::default()
        };
        (p, meta)
    } else {
        let n = args.random.expect("clap enforces the source group");
        let p = random_convex_polyhedron(n, args.cap, args.seed).map_err(fail)?;
        let meta = Metadata {
            generator: Some("random".into()),
            seed: Some(args.seed),
            points: Some(n),
            cap: Some(args.cap),
            ..Default::default()
        };
        (p, meta)
    };
    let doc = PolyhedronDocument::from_polyhedron(&p, Some(meta));
    write_output(args.output.as_deref(), &doc.to_json())
}

fn dual_cmd(args: IoArgs) -> CliResult<()> {
    let (p, _) = read_polyhedron(&args.input)?;
    let dp = dual_pair(&p)?;
    let doc = PolyhedronDocument::from_polyhedron(&dp.dual, None);
    write_output(args.output.as_deref(), &doc.to_json())
}

fn develop_cmd(args: DevelopArgs) -> CliResult<()> {
    let (p, _) = read_polyhedron(&args.input)?;
    let dp = dual_pair(&p)?;
    let complex = build_normal_complex(&dp).map_err(Failure::usage)?;
    let mut texts = Vec::new();
    let mut failed = Vec::new();
    for side in args.side.sides() {
        let t = develop(&complex, side).map_err(Failure::usage)?;
        let report = match args.verify {
            Some(n) => {
                let r = verify_tiling(&t, n, args.seed).map_err(Failure::usage)?;
                if !r.accepted() {
                    failed.push(side);
                }
                Some(r)
            }
            None => None,
        };
        texts.push((side, TilingDocument::from_tiling(&t, report).to_json()));
    }
    match (&args.output, texts.len()) {
        (Some(path), 1) => write_output(Some(path), &texts[0].1)?,
        (Some(path), _) => {
            for (side, text) in &texts {
                write_output(Some(&side_path(path, *side)), text)?;
            }
        }
        (None, _) => {
            let all: String = texts.iter().map(|(_, t)| t.as_str()).collect();
            write_output(None, &all)?;
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        let sides: Vec<&str> = failed.iter().map(|s| s.as_str()).collect();
        Err(Failure {
            code: EXIT_VERIFICATION,
            message: format!("coverage verification failed for side {}", sides.join(", ")),
        })
    }
}

#[derive(serde::Serialize)]
struct VerifySummary {
    area_identity_deviation: f64,
    angle_duality_deviation: f64,
    complex_ok: bool,
    euler_characteristic: i64,
    max_cone_deviation: f64,
    left: VerificationReport,
    right: VerificationReport,
    passed: bool,
}

fn verify_cmd(args: VerifyArgs) -> CliResult<()> {
    let (p, _) = read_polyhedron(&args.input)?;
    let dp = dual_pair(&p)?;
    let err = Failure::usage;
    let area = total_area(&dp.primal).map_err(err)? + total_area(&dp.dual).map_err(err)?;
    let area_dev = (area - 4.0 * std::f64::consts::PI).abs();
    let angle_dev = angle_duality_check(&dp).map_err(err)?;
    let complex = build_normal_complex(&dp).map_err(err)?;
    let cr = complex.report().map_err(err)?;
    let mut reports = Vec::new();
    for side in [Side::Left, Side::Right] {
        let t = develop(&complex, side).map_err(err)?;
        reports.push(verify_tiling(&t, args.samples, args.seed).map_err(err)?);
    }
    let passed = area_dev < 1e-9
        && angle_dev < 1e-9
        && cr.is_ok()
        && reports.iter().all(VerificationReport::accepted);
    let summary = VerifySummary {
        area_identity_deviation: area_dev,
        angle_duality_deviation: angle_dev,
        complex_ok: cr.is_ok(),
        euler_characteristic: cr.euler_characteristic,
        max_cone_deviation: cr.max_cone_deviation,
        left: reports[0],
        right: reports[1],
        passed,
    };
    let mut text = serde_json::to_string(&summary).expect("summary serializes");
    text.push('\n');
    write_output(args.output.as_deref(), &text)?;
    if passed {
        Ok(())
    } else {
        Err(Failure { code: EXIT_VERIFICATION, message: "verification failed".into() })
    }
}

fn render_cmd(args: RenderArgs) -> CliResult<()> {
    let Projection::Stereo = args.projection;
    let text = read_input(&args.input)?;
    let doc = TilingDocument::from_json(&text).map_err(Failure::usage)?;
    let svg = render_svg(&doc, &RenderOptions { size: args.size, pole: args.pole })
        .map_err(Failure::usage)?;
    write_output(args.output.as_deref(), &svg)
}

#[derive(serde::Serialize)]
struct Info {
    vertices: usize,
    edges: usize,
    faces: usize,
    area: f64,
    dual_area: f64,
    angle_sum: f64,
    min_edge_length: f64,
    max_edge_length: f64,
}

fn info_cmd(args: IoArgs) -> CliResult<()> {
    let (p, _) = read_polyhedron(&args.input)?;
    let dp = dual_pair(&p)?;
    let err = Failure::usage;
    let lengths: Vec<f64> = p
        .edges()
        .iter()
        .map(|e| dualtile::sphere::distance(p.vertices()[e.start], p.vertices()[e.end]))
        .collect();
    let info = Info {
        vertices: p.num_vertices(),
        edges: p.num_edges(),
        faces: p.num_faces(),
        area: total_area(&p).map_err(err)?,
        dual_area: total_area(&dp.dual).map_err(err)?,
        angle_sum: p.angle_sum().map_err(err)?,
        min_edge_length: lengths.iter().copied().fold(f64::INFINITY, f64::min),
        max_edge_length: lengths.iter().copied().fold(0.0, f64::max),
    };
    let mut text = serde_json::to_string(&info).expect("info serializes");
    text.push('\n');
    write_output(args.output.as_deref(), &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Dual(a) => dual_cmd(a),
        Command::Develop(a) => develop_cmd(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Render(a) => render_cmd(a),
        Command::Info(a) => info_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("dualtile: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

mod output;
mod selftest;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hyptet::complex::{
    doubled_fixture, AssignmentDoc, ComplexError, ConeTarget, EdgeValuesDoc, Triangulation,
};
use hyptet::optimize::{
    duality_gap, maximize_volume, rigidity_check_seeded, solve_cone_angles, OptimizeError,
    DEFAULT_SEED,
};
use hyptet::structures::StructureError;
use hyptet::tetra::{
    angles_to_lengths, classify, covolume, covolume_gradient, extended_angles, volume_from_angles,
    DecoratedLengths, DihedralAngles, TetraError, DEFAULT_CLASSIFY_TOL,
};
use serde_json::json;

use output::{print_json, to_json};

const SLOT_HELP: &str = "Six comma-separated values in slot order 12,13,14,23,24,34";

#[derive(Debug, Parser)]
#[command(
    name = "hyptet",
    version,
    about = "Decorated 1-3 type hyperbolic tetrahedra and angle structures"
)]
#[command(after_help = "All 6-vectors use slot order (12,13,14,23,24,34); vertex 1 is hyperideal.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a triangulation document and print its edge and vertex classes.
    Validate { tri: PathBuf },
    /// Single-tetrahedron queries.
    Tetra {
        #[command(subcommand)]
        query: TetraQuery,
    },
    /// Maximize the volume over angle structures with cone angles k.
    Maximize(SolveArgs),
    /// Find a metric whose cone angles are k.
    Solve(SolveArgs),
    /// Compare the maximal volume with the minimal co-volume.
    Gap(SolveArgs),
    /// Solve for k from several random starts and compare the solutions.
    Rigidity {
        tri: PathBuf,
        #[arg(long)]
        k: PathBuf,
        #[arg(long, default_value_t = 5)]
        starts: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Generate test fixtures.
    Fixture {
        #[command(subcommand)]
        kind: FixtureKind,
    },
    /// Run the randomized invariant suites.
    Selftest {
        #[arg(long, default_value_t = selftest::SELFTEST_SEED)]
        seed: u64,
    },
}

#[derive(Debug, clap::Args)]
struct SolveArgs {
    tri: PathBuf,
    /// Cone target document.
    #[arg(long)]
    k: PathBuf,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Debug, Subcommand)]
enum TetraQuery {
    /// Canonical decorated lengths (l12 = l13 = l14 = 0) of a genuine tetrahedron.
    AnglesToLengths {
        #[arg(long, help = SLOT_HELP, allow_hyphen_values = true, value_parser = parse_six)]
        alpha: Six,
        /// Read angles in degrees.
        #[arg(long)]
        degrees: bool,
    },
    /// Extended dihedral angles of decorated lengths.
    LengthsToAngles {
        #[arg(long, help = SLOT_HELP, allow_hyphen_values = true, value_parser = parse_six)]
        l: Six,
    },
    /// Region of decorated lengths: InteriorL, Omega1..3 or X1..3.
    Classify {
        #[arg(long, help = SLOT_HELP, allow_hyphen_values = true, value_parser = parse_six)]
        l: Six,
        #[arg(long, default_value_t = DEFAULT_CLASSIFY_TOL)]
        tol: f64,
    },
    /// Volume of a tetrahedron with the given dihedral angles.
    Volume {
        #[arg(long, help = SLOT_HELP, allow_hyphen_values = true, value_parser = parse_six)]
        alpha: Six,
        /// Read angles in degrees.
        #[arg(long)]
        degrees: bool,
    },
    /// Co-volume and its gradient at decorated lengths.
    Covolume {
        #[arg(long, help = SLOT_HELP, allow_hyphen_values = true, value_parser = parse_six)]
        l: Six,
    },
}

#[derive(Debug, Subcommand)]
enum FixtureKind {
    /// Double of a tetrahedron with lengths l, glued by the identity on all faces.
    Double {
        #[arg(long, help = SLOT_HELP, allow_hyphen_values = true, value_parser = parse_six)]
        l: Six,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Debug, Clone, Copy)]
struct Six([f64; 6]);

fn parse_six(s: &str) -> Result<Six, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 6 {
        return Err(format!(
            "expected 6 comma-separated values, got {}",
            parts.len()
        ));
    }
    let mut out = [0.0; 6];
    for (slot, p) in out.iter_mut().zip(&parts) {
        let v: f64 = p.parse().map_err(|_| format!("not a number: {p:?}"))?;
        if !v.is_finite() {
            return Err(format!("not a finite number: {p:?}"));
        }
        *slot = v;
    }
    Ok(Six(out))
}

#[derive(Debug)]
enum CliError {
    Io(PathBuf, std::io::Error),
    Json(PathBuf, serde_json::Error),
    Complex(ComplexError),
    Tetra(TetraError),
    Optimize(OptimizeError),
    Selftest(usize),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Io(..) => "Io",
            CliError::Json(..) => "Json",
            CliError::Complex(e) => match e {
                ComplexError::IndexOutOfRange { .. } => "IndexOutOfRange",
                ComplexError::BadPermutation { .. } => "BadPermutation",
                ComplexError::TypeViolation { .. } => "TypeViolation",
                ComplexError::UnpairedFace { .. } => "UnpairedFace",
                ComplexError::Format(_) => "Format",
                ComplexError::EdgeMismatch(_) => "EdgeMismatch",
                ComplexError::NotInterior(_) => "NotInterior",
            },
            CliError::Tetra(e) => match e {
                TetraError::InvalidAngles(_) => "InvalidAngles",
                TetraError::NotInteriorAngle(_) => "NotInteriorAngle",
                TetraError::BoundaryGradient(_) => "BoundaryGradient",
                TetraError::AmbiguousClassification { .. } => "AmbiguousClassification",
                TetraError::NotInterior(_) => "NotInterior",
                TetraError::OutOfFace(_) => "OutOfFace",
                TetraError::NotHyperbolic(_) => "NotHyperbolic",
                TetraError::InvalidArgument(_) => "InvalidArgument",
            },
            CliError::Optimize(e) => match e {
                OptimizeError::Structure(StructureError::InadmissibleTarget(_)) => {
                    "InadmissibleTarget"
                }
                OptimizeError::Structure(StructureError::LpFailure(_)) => "LpFailure",
                OptimizeError::NoInteriorStart(_) => "NoInteriorStart",
                OptimizeError::MaxIterations { .. } => "MaxIterations",
                OptimizeError::Diverged { .. } => "Diverged",
                OptimizeError::InvalidArgument(_) => "InvalidArgument",
            },
            CliError::Selftest(_) => "SelftestFailed",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Io(p, e) => format!("{}: {e}", p.display()),
            CliError::Json(p, e) => format!("{}: {e}", p.display()),
            CliError::Complex(e) => e.to_string(),
            CliError::Tetra(e) => e.to_string(),
            CliError::Optimize(e) => e.to_string(),
            CliError::Selftest(n) => format!("{n} selftest checks failed"),
        }
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        CliError::Complex(e)
    }
}

impl From<TetraError> for CliError {
    fn from(e: TetraError) -> Self {
        CliError::Tetra(e)
    }
}

impl From<OptimizeError> for CliError {
    fn from(e: OptimizeError) -> Self {
        CliError::Optimize(e)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn load_triangulation(path: &Path) -> Result<Triangulation, CliError> {
    Ok(Triangulation::from_json(&read(path)?)?)
}

fn load_target(t: &Triangulation, path: &Path) -> Result<ConeTarget, CliError> {
    let doc: EdgeValuesDoc =
        serde_json::from_str(&read(path)?).map_err(|e| CliError::Json(path.to_path_buf(), e))?;
    Ok(ConeTarget {
        k: t.read_edge_values(&doc)?,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, format!("{text}\n")).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn angles(six: Six, degrees: bool) -> DihedralAngles {
    let a = if degrees {
        six.0.map(f64::to_radians)
    } else {
        six.0
    };
    DihedralAngles::from_array(a)
}

fn run_tetra(query: TetraQuery) -> Result<(), CliError> {
    match query {
        TetraQuery::AnglesToLengths { alpha, degrees } => {
            let l = angles_to_lengths(&angles(alpha, degrees))?;
            print_json(&json!({ "lengths": l.to_array() }));
        }
        TetraQuery::LengthsToAngles { l } => {
            let a = extended_angles(&DecoratedLengths::from_array(l.0));
            print_json(&json!({ "angles": a.to_array() }));
        }
        TetraQuery::Classify { l, tol } => {
            println!("{}", classify(&DecoratedLengths::from_array(l.0), tol)?);
        }
        TetraQuery::Volume { alpha, degrees } => {
            print_json(&json!({ "volume": volume_from_angles(&angles(alpha, degrees))? }));
        }
        TetraQuery::Covolume { l } => {
            let l = DecoratedLengths::from_array(l.0);
            print_json(&json!({ "covolume": covolume(&l), "gradient": covolume_gradient(&l) }));
        }
    }
    Ok(())
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Validate { tri } => {
            let t = load_triangulation(&tri)?;
            let edges: Vec<_> = t
                .edge_classes()
                .iter()
                .map(|e| {
                    json!({
                        "key": e.key(),
                        "slots": e.slots.iter().map(|s| s.key()).collect::<Vec<_>>(),
                        "endpoints": e.endpoints,
                    })
                })
                .collect();
            let vertices: Vec<_> = t
                .vertex_classes()
                .iter()
                .map(|v| json!({ "ideal": v.ideal, "corners": v.corners.len() }))
                .collect();
            print_json(&json!({
                "valid": true,
                "tetrahedra": t.n_tetrahedra(),
                "edges": edges,
                "vertex_classes": vertices,
            }));
        }
        Command::Tetra { query } => run_tetra(query)?,
        Command::Maximize(args) => {
            let t = load_triangulation(&args.tri)?;
            let k = load_target(&t, &args.k)?;
            let r = maximize_volume(&t, &k, args.tol)?;
            print_json(&json!({
                "maximizer": AssignmentDoc::from(&r.maximizer),
                "volume": r.volume,
                "kkt_residual": r.kkt_residual,
                "boundary_flags": r.boundary_flags,
                "iterations": r.iterations,
            }));
        }
        Command::Solve(args) => {
            let t = load_triangulation(&args.tri)?;
            let k = load_target(&t, &args.k)?;
            let r = solve_cone_angles(&t, &k, args.tol)?;
            print_json(&json!({
                "metric": t.edge_values_doc(&r.metric.lengths),
                "residual": r.residual,
                "diverged": r.diverged,
                "objective": r.objective,
                "iterations": r.iterations,
            }));
        }
        Command::Gap(args) => {
            let t = load_triangulation(&args.tri)?;
            let k = load_target(&t, &args.k)?;
            print_json(&duality_gap(&t, &k, args.tol)?);
        }
        Command::Rigidity {
            tri,
            k,
            starts,
            tol,
            seed,
        } => {
            let t = load_triangulation(&tri)?;
            let k = load_target(&t, &k)?;
            let r = rigidity_check_seeded(&t, &k, starts, tol, seed)?;
            let excluded: Vec<_> = r
                .excluded
                .iter()
                .map(|(start, reason)| json!({ "start": start, "reason": reason }))
                .collect();
            let solutions: Vec<_> = r
                .solutions
                .iter()
                .map(|m| t.edge_values_doc(&m.lengths))
                .collect();
            print_json(&json!({
                "n_starts": r.n_starts,
                "pairwise_distance": r.pairwise_distance,
                "all_agree": r.all_agree,
                "seed": r.seed,
                "excluded": excluded,
                "solutions": solutions,
            }));
        }
        Command::Fixture {
            kind: FixtureKind::Double { l, out_dir },
        } => {
            let fx = doubled_fixture(&DecoratedLengths::from_array(l.0))?;
            fs::create_dir_all(&out_dir).map_err(|e| CliError::Io(out_dir.clone(), e))?;
            let t = &fx.triangulation;
            let files = [
                ("tri.json", to_json(&t.to_doc())),
                ("k.json", to_json(&t.edge_values_doc(&fx.target.k))),
                (
                    "metric.json",
                    to_json(&t.edge_values_doc(&fx.metric.lengths)),
                ),
                (
                    "assignment.json",
                    to_json(&AssignmentDoc::from(&fx.assignment)),
                ),
            ];
            let mut written = Vec::new();
            for (name, text) in &files {
                let path = out_dir.join(name);
                write(&path, text)?;
                written.push(path.display().to_string());
            }
            print_json(&json!({ "written": written }));
        }
        Command::Selftest { seed } => {
            let summary = selftest::run(seed);
            print_json(&summary);
            if summary.failed > 0 {
                return Err(CliError::Selftest(summary.failed));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!(
                "{}",
                to_json(&json!({ "error": { "kind": e.kind(), "message": e.message() } }))
            );
            ExitCode::from(1)
        }
    }
}

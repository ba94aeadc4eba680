//! `jacflow` command line: argument parsing, dispatch and exit codes.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::flows::{
    flow_via_basis_change, flows_commute_check, goldman_flow_holonomy, goldman_flow_jacobian, FlowParameter,
};
use crate::gauge::{flow_connection, gauge_transform, standard_complexes, GaugeTransformation, StandardComplex};
use crate::homology::{complete_to_symplectic_basis, is_separating, Genus, HomologyClass};
use crate::jacobian::{
    circle_distance, holonomy_to_v, v_to_holonomy, v_to_z, z_to_v, HolonomyPoint, JacobianPointZ, Lattice, LatticeFile,
    TorusPointV,
};
use crate::periods::{
    period_matrix, riemann_relations, standard_contours, CurveSpec, HyperellipticCurve, QuadratureConfig,
};
use crate::report::{Check, RunReport};
use crate::verify::{run_suite, VerifyConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILURE: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "jacflow",
    version,
    about = "Goldman flows on Jacobians of hyperelliptic curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    Holonomy,
    V,
    Z,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Period matrix and Riemann relations of a curve.
    Periods {
        /// Curve JSON (file path or inline object).
        #[arg(long)]
        curve: String,
        #[arg(long)]
        tolerance: Option<f64>,
        /// Save the computed lattice for later `flow --lattice`.
        #[arg(long)]
        lattice_out: Option<PathBuf>,
    },
    /// Symplectic basis completion of a primitive class.
    Basis {
        /// Class as a JSON integer array, e.g. [1,0,0,1].
        #[arg(long)]
        class: String,
    },
    /// Evaluate the Goldman flow of a class at a point.
    Flow {
        #[arg(long)]
        class: String,
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long, value_enum, default_value_t = Chart::Holonomy)]
        chart: Chart,
        /// Point JSON in the chosen chart; drawn from --seed if absent.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, conflicts_with = "lattice")]
        curve: Option<String>,
        /// Lattice file written by `periods --lattice-out`.
        #[arg(long)]
        lattice: Option<PathBuf>,
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Flat connections on the standard cell complexes, before and after a flow.
    GaugeDemo {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.25)]
        s: f64,
    },
    /// Run the full self-check suite.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        tolerance: Option<f64>,
        /// Also run checks that are expected to fail.
        #[arg(long)]
        negative_controls: bool,
    },
}

/// An input error: bad arguments, unreadable or malformed files, invalid data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputError {
    pub kind: String,
    pub message: String,
}

impl InputError {
    fn new(kind: &str, message: impl std::fmt::Display) -> Self {
        InputError {
            kind: kind.to_string(),
            message: message.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        json!({ "error": self }).to_string()
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        let debug = format!("{e:?}");
        let kind = debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error");
        InputError::new(kind, e)
    }
}

type CmdResult<T> = std::result::Result<T, InputError>;

fn read_json_arg(arg: &str) -> CmdResult<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(Path::new(arg)).map_err(|e| InputError::new("Io", format!("{arg}: {e}")))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> CmdResult<T> {
    serde_json::from_str(text).map_err(|e| InputError::new("Parse", format!("{what}: {e}")))
}

fn parse_curve(arg: &str) -> CmdResult<HyperellipticCurve> {
    let spec: CurveSpec = parse_json(&read_json_arg(arg)?, "curve")?;
    Ok(spec.into_curve()?)
}

fn quadrature(tolerance: Option<f64>) -> CmdResult<QuadratureConfig> {
    let mut cfg = QuadratureConfig::default();
    if let Some(t) = tolerance {
        cfg.tolerance = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Everything a subcommand produces, before serialization.
struct Outcome {
    inputs: Value,
    outputs: Value,
    checks: Vec<Check>,
}

fn compute_lattice(curve: &HyperellipticCurve, cfg: &QuadratureConfig) -> CmdResult<LatticeFile> {
    let contours = standard_contours(curve)?;
    let periods = period_matrix(curve, &contours, cfg)?;
    Ok(LatticeFile {
        curve: curve.clone(),
        contours,
        quadrature: *cfg,
        periods,
    })
}

fn cmd_periods(curve: &str, tolerance: Option<f64>, lattice_out: Option<&Path>) -> CmdResult<Outcome> {
    let curve = parse_curve(curve)?;
    let cfg = quadrature(tolerance)?;
    let file = compute_lattice(&curve, &cfg)?;
    let rr = riemann_relations(&file.periods)?;
    let lattice = file.lattice()?;
    let max_error = file
        .periods
        .columns
        .iter()
        .flat_map(|c| c.errors.iter().copied())
        .fold(0.0, f64::max);
    if let Some(path) = lattice_out {
        let text = serde_json::to_string_pretty(&file).map_err(|e| InputError::new("Io", e))?;
        std::fs::write(path, text).map_err(|e| InputError::new("Io", format!("{}: {e}", path.display())))?;
    }
    let checks = vec![
        Check::below(
            "riemann_symmetry",
            rr.symmetry_defect,
            crate::verify::thresholds::RIEMANN_SYMMETRY,
        ),
        Check::above("riemann_positivity", rr.min_imag_eigenvalue, 0.0),
        Check::below("quadrature_error_estimate", max_error, cfg.tolerance),
    ];
    Ok(Outcome {
        inputs: json!({ "curve": file.curve, "quadrature": cfg }),
        outputs: json!({
            "genus": curve.genus(),
            "contours": file.contours,
            "period_matrix": file.periods,
            "riemann_relations": rr,
            "lattice_condition_number": lattice.condition_number(),
        }),
        checks,
    })
}

fn parse_class(text: &str) -> CmdResult<HomologyClass> {
    parse_json(text, "class")
}

fn cmd_basis(class: &str) -> CmdResult<Outcome> {
    let c = parse_class(class)?;
    let m = complete_to_symplectic_basis(&c)?;
    let symplectic = m.is_symplectic()?;
    let column_ok = m.new_basis_class(2) == c;
    Ok(Outcome {
        inputs: json!({ "class": c }),
        outputs: json!({
            "matrix": m.matrix(),
            "inverse": m.inverse()?,
            "new_basis": (1..=c.coeffs().len()).map(|k| m.new_basis_class(k)).collect::<Vec<_>>(),
        }),
        checks: vec![
            Check::below("symplectic", if symplectic { 0.0 } else { 1.0 }, 0.5),
            Check::below("second_column_is_class", if column_ok { 0.0 } else { 1.0 }, 0.5),
        ],
    })
}

#[derive(Serialize)]
struct ChartTriple {
    holonomy: HolonomyPoint,
    #[serde(skip_serializing_if = "Option::is_none")]
    v: Option<TorusPointV>,
    #[serde(skip_serializing_if = "Option::is_none")]
    z: Option<JacobianPointZ>,
}

impl ChartTriple {
    fn from_theta(theta: HolonomyPoint, lattice: Option<&Lattice>) -> CmdResult<Self> {
        let v = holonomy_to_v(&theta);
        let z = lattice.map(|l| v_to_z(&v, l)).transpose()?;
        Ok(ChartTriple {
            holonomy: theta,
            v: Some(v),
            z,
        })
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_flow(
    class: &str,
    s: f64,
    chart: Chart,
    point: Option<&str>,
    curve: Option<&str>,
    lattice_path: Option<&Path>,
    tolerance: Option<f64>,
    seed: u64,
) -> CmdResult<Outcome> {
    let c = parse_class(class)?;
    let genus = c.genus();
    let s = FlowParameter::new(s)?;
    let (lattice, provenance) = match (curve, lattice_path) {
        (Some(curve), _) => {
            let curve = parse_curve(curve)?;
            let file = compute_lattice(&curve, &quadrature(tolerance)?)?;
            (Some(file.lattice()?), Some(file))
        }
        (None, Some(path)) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| InputError::new("Io", format!("{}: {e}", path.display())))?;
            let file: LatticeFile = parse_json(&text, "lattice")?;
            (Some(file.lattice()?), Some(file))
        }
        (None, None) => (None, None),
    };
    if let Some(l) = &lattice {
        if l.genus() != genus {
            return Err(Error::DimensionMismatch {
                expected: l.genus().rank(),
                got: genus.rank(),
            }
            .into());
        }
    }
    if chart == Chart::Z && lattice.is_none() {
        return Err(InputError::new(
            "MissingLattice",
            "--chart z needs --curve or --lattice",
        ));
    }

    let theta = match point {
        Some(text) => {
            let text = read_json_arg(text)?;
            match chart {
                Chart::Holonomy => parse_json::<HolonomyPoint>(&text, "point")?,
                Chart::V => v_to_holonomy(&parse_json::<TorusPointV>(&text, "point")?),
                Chart::Z => {
                    let z: JacobianPointZ = parse_json(&text, "point")?;
                    v_to_holonomy(&z_to_v(&z, lattice.as_ref().expect("checked above"))?)
                }
            }
        }
        None => {
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            HolonomyPoint::new((0..genus.rank()).map(|_| r.random::<f64>()).collect())?
        }
    };
    if theta.len() != genus.rank() {
        return Err(Error::DimensionMismatch {
            expected: genus.rank(),
            got: theta.len(),
        }
        .into());
    }

    let flowed = goldman_flow_holonomy(&theta, &c, s)?;
    let mut checks = Vec::new();
    let mut note = None;
    if is_separating(&c) {
        note = Some("separating: trivial flow");
        checks.push(Check::below("unchanged", flowed.distance(&theta), f64::MIN_POSITIVE));
    } else if crate::homology::is_primitive(&c)? {
        let via = flow_via_basis_change(&theta, &c, s)?;
        checks.push(Check::below(
            "basis_change_equivalence",
            via.distance(&flowed),
            crate::verify::thresholds::BASIS_CHANGE,
        ));
    }
    if let Some(l) = &lattice {
        checks.push(Check::below(
            "commuting_square",
            flows_commute_check(&theta, &c, s, l)?,
            crate::verify::thresholds::COMMUTING_SQUARE,
        ));
        let z = v_to_z(&holonomy_to_v(&theta), l)?;
        let zf = goldman_flow_jacobian(&z, &c, s, l)?;
        if is_separating(&c) {
            checks.push(Check::below(
                "unchanged_z",
                l.torus_distance(&zf, &z)?,
                f64::MIN_POSITIVE,
            ));
        }
    }

    Ok(Outcome {
        inputs: json!({
            "class": c,
            "s": s,
            "chart": chart,
            "point": ChartTriple::from_theta(theta.clone(), lattice.as_ref())?,
            "lattice": provenance,
        }),
        outputs: json!({
            "flowed": ChartTriple::from_theta(flowed, lattice.as_ref())?,
            "note": note,
        }),
        checks,
    })
}

fn gauge_transcript(
    model: &StandardComplex,
    label: &str,
    r: &mut ChaCha8Rng,
    s: FlowParameter,
) -> CmdResult<(Value, Vec<Check>)> {
    let genus = model.genus();
    let k = &model.complex;
    let theta: Vec<f64> = (0..genus.rank()).map(|_| r.random::<f64>()).collect();
    let base = model.connection_from_holonomies(&theta)?;
    let h = GaugeTransformation {
        values: (0..k.vertex_count).map(|_| r.random::<f64>()).collect(),
    };
    let a = gauge_transform(k, &base, &h)?;
    let before = model.holonomy_vector(&a)?;
    let mut flows = Vec::new();
    let mut worst: f64 = 0.0;
    for (j, c) in model.cocycles.iter().enumerate() {
        let flowed = flow_connection(k, &a, c, s)?;
        let after = model.holonomy_vector(&flowed)?;
        let expected = goldman_flow_holonomy(
            &HolonomyPoint::new(before.clone())?,
            &HomologyClass::basis(genus, j + 1),
            s,
        )?;
        worst = worst.max(circle_distance(&after, expected.angles()));
        flows.push(json!({ "cocycle": j + 1, "after": after, "expected": expected }));
    }
    let transcript = json!({
        "model": label,
        "complex": k,
        "pairing_table": model.pairing_table()?,
        "before": before,
        "flows": flows,
    });
    let check = Check::below(
        format!("gauge_matches_holonomy[{label}]"),
        worst,
        crate::verify::thresholds::GAUGE,
    );
    Ok((transcript, vec![check]))
}

fn cmd_gauge_demo(seed: u64, s: f64) -> CmdResult<Outcome> {
    let s = FlowParameter::new(s)?;
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut transcripts = Vec::new();
    let mut checks = Vec::new();
    for g in 1..=2 {
        let models = standard_complexes(Genus::new(g)?)?;
        for (model, name) in [(&models.one_vertex, "one-vertex"), (&models.refined, "refined")] {
            let (t, c) = gauge_transcript(model, &format!("g={g},{name}"), &mut r, s)?;
            transcripts.push(t);
            checks.extend(c);
        }
    }
    Ok(Outcome {
        inputs: json!({ "seed": seed, "s": s }),
        outputs: json!({ "transcripts": transcripts }),
        checks,
    })
}

fn cmd_verify(seed: u64, tolerance: Option<f64>, negative_controls: bool) -> CmdResult<Outcome> {
    let config = VerifyConfig {
        seed,
        negative_controls,
        quadrature: quadrature(tolerance)?,
    };
    let checks = run_suite(&config);
    Ok(Outcome {
        inputs: json!({
            "seed": seed,
            "negative_controls": negative_controls,
            "quadrature": config.quadrature,
            "corpus": crate::verify::corpus(),
        }),
        outputs: json!({
            "checks_run": checks.len(),
            "checks_passed": checks.iter().filter(|c| c.pass).count(),
        }),
        checks,
    })
}

fn dispatch(command: &Command) -> CmdResult<Outcome> {
    match command {
        Command::Periods {
            curve,
            tolerance,
            lattice_out,
        } => cmd_periods(curve, *tolerance, lattice_out.as_deref()),
        Command::Basis { class } => cmd_basis(class),
        Command::Flow {
            class,
            s,
            chart,
            point,
            curve,
            lattice,
            tolerance,
            seed,
        } => cmd_flow(
            class,
            *s,
            *chart,
            point.as_deref(),
            curve.as_deref(),
            lattice.as_deref(),
            *tolerance,
            *seed,
        ),
        Command::GaugeDemo { seed, s } => cmd_gauge_demo(*seed, *s),
        Command::Verify {
            seed,
            tolerance,
            negative_controls,
        } => cmd_verify(*seed, *tolerance, *negative_controls),
    }
}

fn emit(text: &str, output: Option<&Path>) -> CmdResult<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| InputError::new("Io", format!("{}: {e}", path.display()))),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli, argv: Vec<String>) -> i32 {
    let start = Instant::now();
    let outcome = match dispatch(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            println!("{}", e.to_json());
            return EXIT_INPUT_ERROR;
        }
    };
    let report = RunReport {
        command: argv,
        inputs: outcome.inputs,
        outputs: outcome.outputs,
        checks: outcome.checks,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).unwrap_or_default(),
        Format::Table => report.to_table(),
    };
    if let Err(e) = emit(&text, cli.output.as_deref()) {
        println!("{}", e.to_json());
        return EXIT_INPUT_ERROR;
    }
    if report.all_pass() {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILURE
    }
}

/// Entry point for the binary: parses `argv`, maps usage errors to exit code 2.
pub fn main_with_args(argv: Vec<String>) -> i32 {
    match Cli::try_parse_from(&argv) {
        Ok(cli) => run(&cli, argv),
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            EXIT_PASS
        }
        Err(e) => {
            println!("{}", InputError::new("Usage", e.render().to_string().trim()).to_json());
            EXIT_INPUT_ERROR
        }
    }
}

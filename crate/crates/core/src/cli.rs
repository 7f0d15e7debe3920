//! Batch driver behind the `mdspace` binary.

use std::fmt::Write as _;
use std::io::Read as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::WeightedConfig;
use crate::error::{Error, Result};
use crate::idealspace::{
    injectivity_probe, local_types, membership_oracle, monomial_transversal, primary_decomposition,
    IdealPoint, IdealPointDump, LocalType, OracleReport, QuotientAlgebra, Subspace, Transversal,
};
use crate::kergin::InterpolationOperator;
use crate::limits::{
    collision_gallery, default_schedule, limit_ideal, ConfigCurve, LimitReport, DEFAULT_ORDER,
};
use crate::linalg::Matrix;
use crate::polycalc::multi_index::below_degree;
use crate::polycalc::MultivariatePolynomial;
use crate::selftest::{run_all, SuiteResult, SuiteSizes, DEFAULT_SEED};
use crate::tolerances::Tolerances;

#[derive(Parser, Debug)]
#[command(
    name = "mdspace",
    version,
    about = "Finite-codimension ideals: interpolation, certification, limits"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub tol_rank: Option<f64>,
    #[arg(long, global = true)]
    pub tol_angle: Option<f64>,
    #[arg(long, global = true)]
    pub cluster_radius: Option<f64>,
    #[arg(long, global = true)]
    pub tol_merge: Option<f64>,
    #[arg(long, global = true)]
    pub max_condition: Option<f64>,
    #[arg(long, global = true)]
    pub tol_membership: Option<f64>,
    /// Comma-separated sample times for `limit`, decreasing towards 0.
    #[arg(long, global = true, value_delimiter = ',')]
    pub schedule: Option<Vec<f64>>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// JSON input file (`-` for stdin).
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    /// Inline JSON input.
    #[arg(long, conflicts_with = "input")]
    pub json: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// A(Y, f) for a configuration and a polynomial.
    Interp(Input),
    /// Run the membership oracle on an ideal point.
    Member {
        #[command(flatten)]
        input: Input,
        /// Include Plücker coordinates of L.
        #[arg(long)]
        plucker: bool,
    },
    /// Weighted spectrum and local types of an ideal point.
    Wspec(Input),
    /// Primary decomposition of an ideal point.
    Decompose(Input),
    /// Limit of a curve of colliding configurations.
    Limit {
        #[command(flatten)]
        input: Input,
        /// Extrapolation order.
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Certified limits of the preset collisions.
    Gallery,
    /// Sample pairs of ideal points and check they are separated.
    ProbeInjectivity {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Transversal degree bound; defaults to d + 1.
        #[arg(long)]
        deg: Option<u32>,
        #[arg(long, default_value_t = 500)]
        pairs: usize,
    },
    /// Run every invariant suite.
    Selftest,
}

impl Common {
    pub fn tolerances(&self) -> Tolerances {
        let mut t = Tolerances::default();
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut t.rank, self.tol_rank);
        set(&mut t.angle, self.tol_angle);
        set(&mut t.cluster_radius, self.cluster_radius);
        set(&mut t.merge, self.tol_merge);
        set(&mut t.max_condition, self.max_condition);
        set(&mut t.membership, self.tol_membership);
        t
    }
}

/// Result of one command: the rendered output and the exit code.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

fn read_input(input: &Input) -> Result<String> {
    if let Some(s) = &input.json {
        return Ok(s.clone());
    }
    match &input.input {
        Some(p) if p.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
            Ok(s)
        }
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display()))),
        None => Err(Error::InvalidInput("missing --input or --json".into())),
    }
}

fn parse<T: for<'de> Deserialize<'de>>(input: &Input) -> Result<T> {
    let text = read_input(input)?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn point_cells(p: &[f64]) -> String {
    p.iter().map(|&c| num(c)).collect::<Vec<_>>().join(";")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InterpInput {
    config: WeightedConfig,
    f: MultivariatePolynomial,
    /// Explicit complement `D`; defaults to graded-lex monomials.
    #[serde(default)]
    basis: Option<Vec<MultivariatePolynomial>>,
    /// Point tuples per cluster, for spread (Kergin) interpolation.
    #[serde(default)]
    tuples: Option<Vec<Vec<Vec<f64>>>>,
}

#[derive(Serialize)]
struct InterpOutput {
    interpolant: MultivariatePolynomial,
    basis: Vec<MultivariatePolynomial>,
    condition_number: f64,
    jet_residual: f64,
}

fn cmd_interp(input: &Input, tol: &Tolerances, format: Format) -> Result<Outcome> {
    let req: InterpInput = parse(input)?;
    let m = req.config.dim();
    if req.f.dim() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: req.f.dim(),
        });
    }
    let d = req.config.total_weight();
    let tuples = req.tuples.unwrap_or_else(|| req.config.coalesced_tuples());
    let op = match req.basis {
        Some(basis) => InterpolationOperator::from_tuples(tuples, basis, tol)?,
        None => InterpolationOperator::with_default_complement(tuples, &below_degree(m, d), tol)?,
    };
    let out = InterpOutput {
        interpolant: op.interpolate(&req.f)?,
        basis: op.basis().to_vec(),
        condition_number: op.condition_number(),
        jet_residual: op.jet_residual(&req.f)?,
    };
    let text = match format {
        Format::Json => to_json(&out)?,
        Format::Csv => {
            let mut s = String::from("alpha,coefficient\n");
            for (a, c) in out.interpolant.terms() {
                let alpha: Vec<String> = a.entries().iter().map(u32::to_string).collect();
                writeln!(s, "{},{}", alpha.join(";"), num(c)).unwrap();
            }
            writeln!(s, "# condition_number,{}", num(out.condition_number)).unwrap();
            writeln!(s, "# jet_residual,{}", num(out.jet_residual)).unwrap();
            s
        }
    };
    Ok(Outcome { text, code: 0 })
}

/// Ideal point input: the frame may be any spanning set of `L`.
#[derive(Deserialize)]
struct PointInput {
    config: WeightedConfig,
    frame: Vec<Vec<f64>>,
    transversal: Transversal,
    #[serde(default)]
    #[allow(dead_code)]
    certified: Option<bool>,
}

fn frame_matrix(rows: &[Vec<f64>], r: usize) -> Result<Matrix> {
    if rows.len() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            got: rows.len(),
        });
    }
    let s = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != s) {
        return Err(Error::InvalidInput("ragged frame rows".into()));
    }
    Ok(Matrix::from_fn(r, s, |i, j| rows[i][j]))
}

impl PointInput {
    fn subspace(&self, tol: &Tolerances) -> Result<Subspace> {
        let cols = frame_matrix(&self.frame, self.transversal.dim())?;
        Subspace::from_spanning(self.transversal.clone(), &cols, tol.rank)
    }

    /// Certified ideal point, or the oracle report explaining the refusal.
    fn certify(&self, tol: &Tolerances) -> Result<std::result::Result<IdealPoint, OracleReport>> {
        let l = self.subspace(tol)?;
        let report = membership_oracle(&self.transversal, &self.config, &l, tol)?;
        if !report.is_certified() {
            return Ok(Err(report));
        }
        Ok(Ok(IdealPoint::certify(self.config.clone(), l, tol)?.0))
    }
}

#[derive(Serialize)]
struct MemberOutput {
    #[serde(flatten)]
    report: OracleReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    plucker: Option<Vec<(Vec<usize>, f64)>>,
}

fn rejection(report: OracleReport, format: Format) -> Result<Outcome> {
    let text = match format {
        Format::Json => to_json(&report)?,
        Format::Csv => format!("verdict\n\"{}\"\n", report.reason()),
    };
    Ok(Outcome { text, code: 3 })
}

fn cmd_member(input: &Input, plucker: bool, tol: &Tolerances, format: Format) -> Result<Outcome> {
    let req: PointInput = parse(input)?;
    let l = req.subspace(tol)?;
    let report = membership_oracle(&req.transversal, &req.config, &l, tol)?;
    let code = if report.is_certified() { 0 } else { 3 };
    let out = MemberOutput {
        plucker: if plucker { Some(l.plucker()?) } else { None },
        report,
    };
    let text = match format {
        Format::Json => to_json(&out)?,
        Format::Csv => {
            let r = &out.report;
            let mut s =
                String::from("verdict,containment_angle,closure_residual,spectrum_distance\n");
            writeln!(
                s,
                "\"{}\",{},{},{}",
                r.reason(),
                num(r.containment_angle),
                num(r.closure_residual),
                r.spectrum_distance.map(num).unwrap_or_default()
            )
            .unwrap();
            if let Some(p) = &out.plucker {
                s.push_str("plucker_index,value\n");
                for (idx, v) in p {
                    let idx: Vec<String> = idx.iter().map(usize::to_string).collect();
                    writeln!(s, "{},{}", idx.join(";"), num(*v)).unwrap();
                }
            }
            s
        }
    };
    Ok(Outcome { text, code })
}

#[derive(Serialize)]
struct WspecOutput {
    config: WeightedConfig,
    local_types: Vec<LocalType>,
}

fn cmd_wspec(input: &Input, tol: &Tolerances, format: Format) -> Result<Outcome> {
    let req: PointInput = parse(input)?;
    let p = match req.certify(tol)? {
        Ok(p) => p,
        Err(report) => return rejection(report, format),
    };
    let q = QuotientAlgebra::new(&p, tol)?;
    let types = local_types(&q, tol)?;
    let config = WeightedConfig::new(types.iter().map(|t| (t.point.clone(), t.weight)).collect())?;
    let out = WspecOutput {
        config,
        local_types: types,
    };
    let text = match format {
        Format::Json => to_json(&out)?,
        Format::Csv => {
            let mut s = String::from("point,weight,hilbert_function,nilpotency_index\n");
            for t in &out.local_types {
                let h: Vec<String> = t.hilbert_function.iter().map(usize::to_string).collect();
                writeln!(
                    s,
                    "{},{},{},{}",
                    point_cells(&t.point),
                    t.weight,
                    h.join(";"),
                    t.nilpotency_index
                )
                .unwrap();
            }
            s
        }
    };
    Ok(Outcome { text, code: 0 })
}

fn cmd_decompose(input: &Input, tol: &Tolerances, format: Format) -> Result<Outcome> {
    let req: PointInput = parse(input)?;
    let p = match req.certify(tol)? {
        Ok(p) => p,
        Err(report) => return rejection(report, format),
    };
    let parts = primary_decomposition(&req.transversal, &p, tol)?;
    let code = if parts.iter().all(IdealPoint::certified) {
        0
    } else {
        3
    };
    let text = match format {
        Format::Json => {
            let dumps: Vec<IdealPointDump> = parts.iter().map(IdealPointDump::from).collect();
            to_json(&dumps)?
        }
        Format::Csv => {
            let mut s = String::from("component,point,weight,codim,certified\n");
            for (i, c) in parts.iter().enumerate() {
                let (y, k) = &c.config().clusters()[0];
                writeln!(
                    s,
                    "{i},{},{k},{},{}",
                    point_cells(y),
                    c.codim(),
                    c.certified()
                )
                .unwrap();
            }
            s
        }
    };
    Ok(Outcome { text, code })
}

#[derive(Deserialize)]
struct LimitInput {
    #[serde(flatten)]
    curve: ConfigCurve,
    /// Defaults to `deg < d + 1`.
    #[serde(default)]
    transversal: Option<Transversal>,
}

fn cmd_limit(
    input: &Input,
    order: usize,
    schedule: &[f64],
    tol: &Tolerances,
    format: Format,
) -> Result<Outcome> {
    let req: LimitInput = parse(input)?;
    req.curve.validate()?;
    let f = match req.transversal {
        Some(f) => f,
        None => monomial_transversal(req.curve.m, req.curve.len() as u32 + 1)?,
    };
    let report = limit_ideal(&f, &req.curve, schedule, order, tol)?;
    let code = if report.certified { 0 } else { 3 };
    let text = match format {
        Format::Json => to_json(&report)?,
        Format::Csv => report.samples_csv(),
    };
    Ok(Outcome { text, code })
}

fn gallery_csv(entries: &[(String, &LimitReport)]) -> String {
    let mut s =
        String::from("name,certified,limit,cauchy_increment,projector_defect,hilbert_functions\n");
    for (name, r) in entries {
        let config: Vec<String> = r
            .limit
            .config()
            .clusters()
            .iter()
            .map(|(p, k)| format!("{}^{k}", point_cells(p)))
            .collect();
        let hilbert: Vec<String> = r
            .local_types
            .iter()
            .map(|t| {
                t.hilbert_function
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(";")
            })
            .collect();
        writeln!(
            s,
            "{name},{},{},{},{},{}",
            r.certified,
            config.join(" "),
            num(r.cauchy_increment),
            num(r.projector_defect),
            hilbert.join(" ")
        )
        .unwrap();
    }
    s
}

fn cmd_gallery(tol: &Tolerances, format: Format) -> Result<Outcome> {
    let entries = collision_gallery(tol)?;
    let code = if entries.iter().all(|e| e.report.certified) {
        0
    } else {
        3
    };
    let text = match format {
        Format::Json => to_json(&entries)?,
        Format::Csv => {
            let rows: Vec<(String, &LimitReport)> = entries
                .iter()
                .map(|e| (e.name.to_string(), &e.report))
                .collect();
            gallery_csv(&rows)
        }
    };
    Ok(Outcome { text, code })
}

fn cmd_probe(
    m: usize,
    d: usize,
    deg: Option<u32>,
    pairs: usize,
    seed: u64,
    tol: &Tolerances,
    format: Format,
) -> Result<Outcome> {
    if d == 0 || m == 0 {
        return Err(Error::InvalidInput("m and d must be positive".into()));
    }
    let f = monomial_transversal(m, deg.unwrap_or(d as u32 + 1))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = injectivity_probe(&f, d, pairs, &mut rng, tol)?;
    let text = match format {
        Format::Json => to_json(&report)?,
        Format::Csv => format!(
            "pairs,equal_config_pairs,min_separation,transversality_failure\n{},{},{},\"{}\"\n",
            report.pairs,
            report.equal_config_pairs,
            report.min_separation.map(num).unwrap_or_default(),
            report.transversality_failure.clone().unwrap_or_default()
        ),
    };
    Ok(Outcome { text, code: 0 })
}

fn cmd_selftest(seed: u64, tol: &Tolerances, format: Format) -> Result<Outcome> {
    let start = Instant::now();
    let results: Vec<SuiteResult> = run_all(seed, &SuiteSizes::default(), tol);
    eprintln!(
        "selftest finished in {:.2} s",
        start.elapsed().as_secs_f64()
    );
    let code = if results.iter().all(|r| r.passed) {
        0
    } else {
        3
    };
    let text = match format {
        Format::Json => to_json(&results)?,
        Format::Csv => {
            let mut s = String::from("criterion,suite,cases,passed,check,worst,threshold\n");
            for r in &results {
                for c in &r.checks {
                    writeln!(
                        s,
                        "{},{},{},{},{},{},{}",
                        r.criterion,
                        r.name,
                        r.cases,
                        c.passed,
                        c.label,
                        num(c.worst),
                        num(c.threshold)
                    )
                    .unwrap();
                }
            }
            s
        }
    };
    Ok(Outcome { text, code })
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let tol = cli.common.tolerances();
    let format = cli.common.format;
    match &cli.command {
        Command::Interp(input) => cmd_interp(input, &tol, format),
        Command::Member { input, plucker } => cmd_member(input, *plucker, &tol, format),
        Command::Wspec(input) => cmd_wspec(input, &tol, format),
        Command::Decompose(input) => cmd_decompose(input, &tol, format),
        Command::Limit { input, order } => {
            let schedule = cli.common.schedule.clone().unwrap_or_else(default_schedule);
            cmd_limit(input, *order, &schedule, &tol, format)
        }
        Command::Gallery => cmd_gallery(&tol, format),
        Command::ProbeInjectivity { m, d, deg, pairs } => {
            cmd_probe(*m, *d, *deg, *pairs, cli.common.seed, &tol, format)
        }
        Command::Selftest => cmd_selftest(cli.common.seed, &tol, format),
    }
}

/// Entry point: parses `args`, writes the output and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let written = match &cli.common.out {
                Some(path) => std::fs::write(path, &outcome.text)
                    .map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{}", outcome.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 1;
            }
            if outcome.code == 3 {
                eprintln!("certification failed");
            }
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

//! Command-line front end: every computation in the library behind one
//! verb, emitting JSON/CSV tables and data files.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qent::enumerators::{
    mds_existence_bound, mds_weight_distribution, qm_from_weights_exact, EnumeratorSet, Parity,
};
use qent::epower::{entangling_power_exact, entangling_power_mc, UnitaryOperator};
use qent::gf4::{extremal_bound, AdditiveCode, BuiltinCode, CodeType};
use qent::kicked_rotor::{epower_sweep, phase_portrait, rotor_unitary, SweepMethod};
use qent::stabilizer::{code_projector, stabilized_state, stabilizer_from_code};
use qent::states::{ghz, haar_state, meyer_wallach_q, q_m, w_state, StateVector};

#[derive(Parser)]
#[command(
    name = "qent",
    version,
    about = "Multipartite entanglement, GF(4) codes, weight enumerators, and entangling power"
)]
struct Cli {
    /// RNG seed; randomized commands generate and print one if absent
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format (default: bare value / JSON report / CSV table per command)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to a file (atomic: temp file + rename) instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Additive GF(4) codes: analysis, duals, shortening, built-ins
    Code {
        #[command(subcommand)]
        cmd: CodeCmd,
    },
    /// State construction and entanglement measures
    State {
        #[command(subcommand)]
        cmd: StateCmd,
    },
    /// Weight enumerators, MDS distributions, and bounds
    Enum {
        #[command(subcommand)]
        cmd: EnumCmd,
    },
    /// Stabilizer groups: code projectors and stabilized states
    Stab {
        #[command(subcommand)]
        cmd: StabCmd,
    },
    /// Entangling power of a unitary (exact or Monte Carlo)
    Epower(EpowerArgs),
    /// Kicked rotor: classical portraits and quantum sweeps
    Rotor {
        #[command(subcommand)]
        cmd: RotorCmd,
    },
}

#[derive(Args)]
struct CodeInput {
    /// Read a code file (format: `n=<int>` header, one generator per line)
    #[arg(long = "in", value_name = "FILE", conflicts_with = "builtin")]
    input: Option<PathBuf>,
    /// Use a built-in code: hexacode, epr2, triad3, short5
    #[arg(long)]
    builtin: Option<String>,
}

impl CodeInput {
    fn load(&self) -> Result<AdditiveCode, CliError> {
        match (&self.input, &self.builtin) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
                Ok(AdditiveCode::parse_file_str(&text)?)
            }
            (None, Some(name)) => {
                let which: BuiltinCode = name.parse()?;
                Ok(AdditiveCode::builtin(which))
            }
            _ => Err(CliError(
                "exactly one of --in or --builtin is required".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Weight distribution, duality flags, distance, type, and Q_m report
    Analyze {
        #[command(flatten)]
        code: CodeInput,
    },
    /// Emit the dual code in the code file format
    Dual {
        #[command(flatten)]
        code: CodeInput,
    },
    /// Delete a generator row and a coordinate column
    Shorten {
        #[command(flatten)]
        code: CodeInput,
        #[arg(long)]
        row: usize,
        #[arg(long)]
        col: usize,
    },
    /// Emit a built-in generator matrix
    Builtin {
        /// hexacode, epr2, triad3, or short5
        #[arg(long)]
        name: String,
    },
}

#[derive(Args)]
struct StateInput {
    /// Read a state JSON file {"D":..,"n":..,"re":[..],"im":[..]}
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Generalized GHZ state (needs --D and --n)
    #[arg(long, conflicts_with_all = ["input", "w"])]
    ghz: bool,
    /// n-qubit W state (needs --n)
    #[arg(long, conflicts_with = "input")]
    w: bool,
    /// Local dimension
    #[arg(long = "D")]
    d: Option<usize>,
    /// Number of qudits
    #[arg(long)]
    n: Option<usize>,
}

impl StateInput {
    fn load(&self) -> Result<StateVector, CliError> {
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
            return Ok(StateVector::from_json_str(&text)?);
        }
        let n = self.n.ok_or_else(|| CliError("--n is required".into()))?;
        if self.ghz {
            let d = self.d.unwrap_or(2);
            Ok(ghz(d, n)?)
        } else if self.w {
            Ok(w_state(n)?)
        } else {
            Err(CliError("one of --in, --ghz, or --w is required".into()))
        }
    }
}

#[derive(Subcommand)]
enum StateCmd {
    /// Q_m of a state
    Qm {
        #[command(flatten)]
        state: StateInput,
        #[arg(long)]
        m: usize,
    },
    /// Meyer-Wallach measure (qubits only)
    Mw {
        #[command(flatten)]
        state: StateInput,
    },
    /// Emit a generalized GHZ state as JSON
    Ghz {
        #[arg(long = "D", default_value_t = 2)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    /// Emit an n-qubit W state as JSON
    W {
        #[arg(long)]
        n: usize,
    },
    /// Emit a Haar-random state as JSON
    Random {
        #[arg(long = "D", default_value_t = 2)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum EnumCmd {
    /// Full enumerator report of a projector (from a state or a code)
    Weights {
        /// State JSON file: uses the rank-1 projector |ψ⟩⟨ψ|
        #[arg(long, conflicts_with_all = ["code", "builtin"])]
        state: Option<PathBuf>,
        /// Code file: uses the stabilizer projector
        #[arg(long)]
        code: Option<PathBuf>,
        /// Built-in code name
        #[arg(long, conflicts_with = "code")]
        builtin: Option<String>,
    },
    /// Candidate MDS weight distribution at distance ⌊n/2⌋+1
    Mds {
        #[arg(long)]
        n: usize,
        #[arg(long = "D", default_value_t = 2)]
        d: usize,
    },
    /// MDS existence bounds and (with --n) extremal bounds
    Bounds {
        #[arg(long = "D", default_value_t = 2)]
        d: usize,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Args)]
struct StabArgs {
    #[command(flatten)]
    code: CodeInput,
    /// Eigenvalue signs, one +/- per generator (default all +)
    #[arg(long)]
    signs: Option<String>,
}

impl StabArgs {
    fn group(&self) -> Result<qent::stabilizer::StabilizerGroup, CliError> {
        let code = self.code.load()?;
        let signs = match &self.signs {
            None => None,
            Some(text) => {
                let parsed: Result<Vec<i8>, CliError> = text
                    .chars()
                    .map(|c| match c {
                        '+' => Ok(1i8),
                        '-' => Ok(-1i8),
                        other => Err(CliError(format!("bad sign character `{other}`"))),
                    })
                    .collect();
                Some(parsed?)
            }
        };
        Ok(stabilizer_from_code(&code, signs.as_deref())?)
    }
}

#[derive(Subcommand)]
enum StabCmd {
    /// Enumerator report of the code projector
    Project(StabArgs),
    /// Stabilized state (self-dual codes) in the state JSON format
    State(StabArgs),
}

#[derive(Args)]
struct EpowerArgs {
    /// Exact swap-operator formula
    #[arg(long, conflicts_with = "mc")]
    exact: bool,
    /// Monte Carlo over Haar product states
    #[arg(long)]
    mc: bool,
    /// Sample count for --mc
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    samples: Option<u64>,
    /// Unitary source: cnot, haar, or rotor
    #[arg(long)]
    unitary: String,
    #[arg(long = "D", default_value_t = 2)]
    d: usize,
    /// Number of qudits (qubits for rotor)
    #[arg(long)]
    n: Option<usize>,
    /// Kick strength (rotor)
    #[arg(long)]
    k: Option<f64>,
    /// Map iterate U^t (rotor)
    #[arg(long, default_value_t = 1)]
    t: usize,
    #[arg(long)]
    m: usize,
}

#[derive(Subcommand)]
enum RotorCmd {
    /// e_p^{Q_m}(U^t) over kick strengths, subset sizes, and iterates
    Sweep {
        /// Number of qubits (N = 2^n)
        #[arg(long)]
        n: usize,
        /// Kick strengths, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<f64>,
        /// Subset sizes m, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<usize>,
        /// Largest iterate t
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "exact")]
        method: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..), default_value_t = 1000)]
        samples: u64,
    },
    /// Classical phase-space portrait
    Portrait {
        #[arg(long)]
        k: f64,
        #[arg(long, default_value_t = 100)]
        trajectories: usize,
        #[arg(long, default_value_t = 200)]
        steps: usize,
    },
}

/// Uniform runtime error wrapper; usage errors stay with clap (exit 2).
#[derive(Debug)]
struct CliError(String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! from_err {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self { CliError(e.to_string()) }
        }
    )*};
}
from_err!(
    qent::gf4::Gf4Error,
    qent::states::StateError,
    qent::enumerators::EnumError,
    qent::stabilizer::StabilizerError,
    qent::epower::EpowerError,
    qent::kicked_rotor::RotorError,
    std::io::Error
);

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .ok();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if cli.format == Some(Format::Json) {
                eprintln!("{}", json!({ "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::FAILURE
        }
    }
}

/// 15-significant-digit rendering used for bare scalar output.
fn fmt15(x: f64) -> String {
    format!("{x:.15}")
}

fn emit(cli: &Cli, content: &str) -> Result<(), CliError> {
    match &cli.out {
        None => {
            println!("{content}");
            Ok(())
        }
        Some(path) => {
            let dir = path
                .parent()
                .filter(|p| !p.as_os_str().is_empty())
                .unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(content.as_bytes())?;
            if !content.ends_with('\n') {
                tmp.write_all(b"\n")?;
            }
            tmp.persist(path).map_err(|e| CliError(e.to_string()))?;
            Ok(())
        }
    }
}

fn resolve_seed(cli: &Cli) -> u64 {
    match cli.seed {
        Some(s) => s,
        None => {
            let s: u64 = rand::random();
            eprintln!("seed: {s}");
            s
        }
    }
}

/// Render a scalar result respecting --format: bare 15-digit value by
/// default, or a single-field JSON/CSV document.
fn emit_scalar(
    cli: &Cli,
    fields: serde_json::Map<String, serde_json::Value>,
) -> Result<(), CliError> {
    let value = fields
        .get("value")
        .and_then(|v| v.as_f64())
        .expect("scalar results carry a `value` field");
    match cli.format {
        None => emit(cli, &fmt15(value)),
        Some(Format::Json) => emit(cli, &serde_json::Value::Object(fields).to_string()),
        Some(Format::Csv) => {
            let keys: Vec<&String> = fields.keys().collect();
            let header = keys
                .iter()
                .map(|k| k.as_str())
                .collect::<Vec<_>>()
                .join(",");
            let row = keys
                .iter()
                .map(|k| csv_cell(&fields[k.as_str()]))
                .collect::<Vec<_>>()
                .join(",");
            emit(cli, &format!("{header}\n{row}"))
        }
    }
}

fn csv_cell(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Null => String::new(),
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Array(items) => items.iter().map(csv_cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

/// Render a report (JSON object by default) or flatten to key,value CSV.
fn emit_report(cli: &Cli, value: serde_json::Value) -> Result<(), CliError> {
    match cli.format {
        Some(Format::Csv) => {
            let obj = value.as_object().expect("reports are objects");
            let mut lines = vec!["key,value".to_string()];
            for (k, v) in obj {
                lines.push(format!("{k},{}", csv_cell(v)));
            }
            emit(cli, &lines.join("\n"))
        }
        _ => emit(cli, &value.to_string()),
    }
}

/// Render a table: CSV by default, array of objects under --format json.
fn emit_table(
    cli: &Cli,
    columns: &[&str],
    rows: Vec<Vec<serde_json::Value>>,
) -> Result<(), CliError> {
    match cli.format {
        Some(Format::Json) => {
            let objs: Vec<serde_json::Value> = rows
                .into_iter()
                .map(|row| {
                    let map: serde_json::Map<String, serde_json::Value> =
                        columns.iter().map(|c| c.to_string()).zip(row).collect();
                    serde_json::Value::Object(map)
                })
                .collect();
            emit(cli, &serde_json::Value::Array(objs).to_string())
        }
        _ => {
            let mut lines = vec![columns.join(",")];
            for row in rows {
                lines.push(row.iter().map(csv_cell).collect::<Vec<_>>().join(","));
            }
            emit(cli, &lines.join("\n"))
        }
    }
}

fn jf(x: f64) -> serde_json::Value {
    json!(x)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Code { cmd } => run_code(cli, cmd),
        Command::State { cmd } => run_state(cli, cmd),
        Command::Enum { cmd } => run_enum(cli, cmd),
        Command::Stab { cmd } => run_stab(cli, cmd),
        Command::Epower(args) => run_epower(cli, args),
        Command::Rotor { cmd } => run_rotor(cli, cmd),
    }
}

fn run_code(cli: &Cli, cmd: &CodeCmd) -> Result<(), CliError> {
    match cmd {
        CodeCmd::Analyze { code } => {
            let code = code.load()?;
            let n = code.len();
            let wd = code.weight_distribution()?;
            let self_orth = code.is_self_orthogonal();
            let self_dual = code.is_self_dual();
            let a: Vec<f64> = wd.counts.iter().map(|&x| x as f64).collect();
            let (q, q_exact): (Vec<f64>, Vec<String>) = if self_dual {
                let ints: Vec<i128> = wd.counts.iter().map(|&x| x as i128).collect();
                let mut q = Vec::new();
                let mut qx = Vec::new();
                for m in 1..=n / 2 {
                    let exact = qm_from_weights_exact(&ints, 2, n, m)?;
                    q.push(num::ToPrimitive::to_f64(&exact).unwrap());
                    qx.push(exact.to_string());
                }
                (q, qx)
            } else {
                let dual_wd = code.dual().weight_distribution()?;
                let b: Vec<f64> = dual_wd.counts.iter().map(|&x| x as f64).collect();
                let k_dim = 2f64.powi((n - code.k_classical()) as i32);
                let mut q = Vec::new();
                for m in 1..=n / 2 {
                    q.push(qent::enumerators::code_average_qm(&a, &b, k_dim, 2, n, m)?);
                }
                (q, Vec::new())
            };
            let code_type = if self_dual {
                Some(match code.code_type()? {
                    CodeType::TypeI => "I",
                    CodeType::TypeII => "II",
                })
            } else {
                None
            };
            let bound = if self_dual {
                Some(extremal_bound(n, code.code_type()?)? as u64)
            } else {
                None
            };
            let report = json!({
                "n": n,
                "generators": code.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "codewords": code.codeword_count(),
                "selfOrthogonal": self_orth,
                "selfDual": self_dual,
                "A": wd.counts,
                "minimumWeight": code.minimum_weight()?,
                "d": code.distance()?,
                "pure": if self_orth { json!(code.is_pure()?) } else { serde_json::Value::Null },
                "type": code_type,
                "extremalBound": bound,
                "Q": q,
                "QExact": q_exact,
            });
            emit_report(cli, report)
        }
        CodeCmd::Dual { code } => {
            let dual = code.load()?.dual();
            emit(cli, dual.to_file_string().trim_end())
        }
        CodeCmd::Shorten { code, row, col } => {
            let shortened = code.load()?.shorten(*row, *col)?;
            emit(cli, shortened.to_file_string().trim_end())
        }
        CodeCmd::Builtin { name } => {
            let which: BuiltinCode = name.parse()?;
            emit(
                cli,
                AdditiveCode::builtin(which).to_file_string().trim_end(),
            )
        }
    }
}

fn run_state(cli: &Cli, cmd: &StateCmd) -> Result<(), CliError> {
    match cmd {
        StateCmd::Qm { state, m } => {
            let psi = state.load()?;
            let value = q_m(&psi, *m)?;
            let mut fields = serde_json::Map::new();
            fields.insert("D".into(), json!(psi.local_dim()));
            fields.insert("n".into(), json!(psi.n()));
            fields.insert("m".into(), json!(m));
            fields.insert("value".into(), jf(value));
            emit_scalar(cli, fields)
        }
        StateCmd::Mw { state } => {
            let psi = state.load()?;
            let value = meyer_wallach_q(&psi)?;
            let mut fields = serde_json::Map::new();
            fields.insert("D".into(), json!(psi.local_dim()));
            fields.insert("n".into(), json!(psi.n()));
            fields.insert("value".into(), jf(value));
            emit_scalar(cli, fields)
        }
        StateCmd::Ghz { d, n } => emit(cli, &ghz(*d, *n)?.to_json_string()),
        StateCmd::W { n } => emit(cli, &w_state(*n)?.to_json_string()),
        StateCmd::Random { d, n } => {
            use rand::SeedableRng;
            let seed = resolve_seed(cli);
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            emit(cli, &haar_state(*d, *n, &mut rng).to_json_string())
        }
    }
}

fn enum_report_json(set: &EnumeratorSet) -> Result<serde_json::Value, CliError> {
    let report = set.report()?;
    Ok(serde_json::to_value(&report).expect("report serializes"))
}

fn run_enum(cli: &Cli, cmd: &EnumCmd) -> Result<(), CliError> {
    match cmd {
        EnumCmd::Weights {
            state,
            code,
            builtin,
        } => {
            let (p, d, n) = if let Some(path) = state {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
                let psi = StateVector::from_json_str(&text)?;
                (psi.density_matrix(), psi.local_dim(), psi.n())
            } else {
                let input = CodeInput {
                    input: code.clone(),
                    builtin: builtin.clone(),
                };
                let code = input.load()?;
                let group = stabilizer_from_code(&code, None)?;
                let proj = code_projector(&group)?;
                (proj.matrix, 2, code.len())
            };
            let set = EnumeratorSet::compute(&p, d, n)?;
            emit_report(cli, enum_report_json(&set)?)
        }
        EnumCmd::Mds { n, d } => {
            let mds = mds_weight_distribution(*n, *d)?;
            let report = json!({
                "n": n,
                "D": d,
                "distance": mds.distance,
                "A": mds.a_f64(),
                "AExact": mds.a.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "feasible": mds.feasible,
                "boundEven": mds_existence_bound(*d, Parity::Even),
                "boundOdd": mds_existence_bound(*d, Parity::Odd),
            });
            emit_report(cli, report)
        }
        EnumCmd::Bounds { d, n } => {
            let mut report = serde_json::Map::new();
            report.insert("D".into(), json!(d));
            report.insert(
                "mdsEven".into(),
                json!(mds_existence_bound(*d, Parity::Even)),
            );
            report.insert("mdsOdd".into(), json!(mds_existence_bound(*d, Parity::Odd)));
            if let Some(n) = n {
                report.insert(
                    "dI".into(),
                    json!(extremal_bound(*n, CodeType::TypeI)? as u64),
                );
                if n % 2 == 0 {
                    report.insert(
                        "dII".into(),
                        json!(extremal_bound(*n, CodeType::TypeII)? as u64),
                    );
                }
            }
            emit_report(cli, serde_json::Value::Object(report))
        }
    }
}

fn run_stab(cli: &Cli, cmd: &StabCmd) -> Result<(), CliError> {
    match cmd {
        StabCmd::Project(args) => {
            let group = args.group()?;
            let proj = code_projector(&group)?;
            let set = EnumeratorSet::compute(&proj.matrix, 2, proj.n)?;
            emit_report(cli, enum_report_json(&set)?)
        }
        StabCmd::State(args) => {
            let group = args.group()?;
            let psi = stabilized_state(&group)?;
            emit(cli, &psi.to_json_string())
        }
    }
}

fn run_epower(cli: &Cli, args: &EpowerArgs) -> Result<(), CliError> {
    if !(args.exact || args.mc) {
        return Err(CliError("one of --exact or --mc is required".into()));
    }
    let mut seed_used: Option<u64> = None;
    let unitary = match args.unitary.as_str() {
        "cnot" => UnitaryOperator::cnot(),
        "haar" => {
            use rand::SeedableRng;
            let n = args
                .n
                .ok_or_else(|| CliError("--n is required for --unitary haar".into()))?;
            let seed = resolve_seed(cli);
            seed_used = Some(seed);
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            UnitaryOperator::haar(args.d, n, &mut rng)
        }
        "rotor" => {
            let n = args
                .n
                .ok_or_else(|| CliError("--n is required for --unitary rotor".into()))?;
            let k = args
                .k
                .ok_or_else(|| CliError("--k is required for --unitary rotor".into()))?;
            let step = rotor_unitary(1usize << n, k)?.to_qubit_unitary()?;
            let mut power = step.clone();
            for _ in 1..args.t.max(1) {
                power = step.compose(&power);
            }
            power
        }
        other => return Err(CliError(format!("unknown unitary `{other}`"))),
    };
    let mut fields = serde_json::Map::new();
    fields.insert("D".into(), json!(unitary.local_dim()));
    fields.insert("n".into(), json!(unitary.n()));
    fields.insert("m".into(), json!(args.m));
    if args.mc {
        use rand::SeedableRng;
        let samples = args
            .samples
            .ok_or_else(|| CliError("--samples is required with --mc".into()))?;
        let seed = seed_used.unwrap_or_else(|| resolve_seed(cli));
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed.wrapping_add(1));
        let (mean, stderr) = entangling_power_mc(&unitary, args.m, samples, &mut rng)?;
        fields.insert("method".into(), json!("mc"));
        fields.insert("value".into(), jf(mean));
        fields.insert("std_error".into(), jf(stderr));
        fields.insert("seed".into(), json!(seed));
        fields.insert("samples".into(), json!(samples));
    } else {
        let value = entangling_power_exact(&unitary, args.m)?;
        fields.insert("method".into(), json!("exact"));
        fields.insert("value".into(), jf(value));
        if let Some(seed) = seed_used {
            fields.insert("seed".into(), json!(seed));
        }
    }
    emit_scalar(cli, fields)
}

fn run_rotor(cli: &Cli, cmd: &RotorCmd) -> Result<(), CliError> {
    match cmd {
        RotorCmd::Sweep {
            n,
            k,
            m,
            t,
            method,
            samples,
        } => {
            let method = match method.as_str() {
                "exact" => SweepMethod::Exact,
                "mc" => {
                    let seed = resolve_seed(cli);
                    SweepMethod::MonteCarlo {
                        samples: *samples,
                        seed,
                    }
                }
                other => return Err(CliError(format!("unknown method `{other}`"))),
            };
            let rows = epower_sweep(*n, k, m, *t, method)?;
            let table: Vec<Vec<serde_json::Value>> = rows
                .iter()
                .map(|r| {
                    vec![
                        jf(r.k),
                        json!(r.m),
                        json!(r.t),
                        jf(r.e_p),
                        r.std_error.map(jf).unwrap_or(serde_json::Value::Null),
                        jf(r.baseline),
                    ]
                })
                .collect();
            emit_table(cli, &["k", "m", "t", "e_p", "std_error", "baseline"], table)
        }
        RotorCmd::Portrait {
            k,
            trajectories,
            steps,
        } => {
            use rand::SeedableRng;
            let seed = resolve_seed(cli);
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            let points = phase_portrait(*k, *trajectories, *steps, &mut rng);
            let table: Vec<Vec<serde_json::Value>> = points
                .iter()
                .map(|p| vec![json!(p.trajectory), json!(p.step), jf(p.q), jf(p.p)])
                .collect();
            emit_table(cli, &["trajectory_id", "step", "q", "p"], table)
        }
    }
}

//! Command-line front end: parse networks, synthesize strategies, verify
//! them, and print entropy reports. Every report is deterministic, so the
//! outputs diff cleanly across runs.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use coinshare::entropy::{exact_entropies, EntropyError, EntropyReport};
use coinshare::fixtures;
use coinshare::format::{
    parse_network, parse_strategy, write_network, write_strategy, NetworkFile, ParseError,
};
use coinshare::hypergraph::{binomial, validate_cluster};
use coinshare::simulate::{
    verify_zero_error, SimulateError, SimulationReport, UserVerification, VerifyMode,
};
use coinshare::strategy::{
    synthesize_cluster_from_parts, synthesize_forehead, synthesize_topological, synthesize_tree,
};
use coinshare::{HypergraphError, Strategy, StrategyError};

const EXIT_IO: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_UNIFORMITY: u8 = 3;
const EXIT_NOT_CONNECTED: u8 = 4;
const EXIT_INVALID_CLUSTER: u8 = 5;
const EXIT_TOO_LARGE: u8 = 6;
const EXIT_VERIFY_FAILED: u8 = 7;
const EXIT_UNKNOWN_FIXTURE: u8 = 8;

#[derive(Parser)]
#[command(
    name = "coinshare",
    version,
    about = "Synthesize and verify zero-error coin-sharing broadcast strategies",
    after_help = "Exit codes: 0 ok, 1 i/o, 2 parse, 3 scheme/uniformity mismatch, \
                  4 not connected, 5 invalid cluster, 6 too large, \
                  7 verification failed, 8 unknown fixture."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a network and report its connectivity properties
    Check {
        /// Network file, or the name of a bundled fixture
        input: String,
    },
    /// Build a zero-error strategy for a network
    Synthesize {
        /// Network file, or the name of a bundled fixture
        input: String,
        #[arg(long, value_enum, default_value_t = Scheme::Auto)]
        scheme: Scheme,
        /// Write the strategy here instead of standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a strategy over coin assignments and check zero-error decoding
    Simulate {
        /// Strategy file
        strategy: PathBuf,
        /// Check COUNT seeded pseudo-random assignments instead of all 2^|coins|
        #[arg(long, value_name = "COUNT")]
        sampled: Option<u64>,
        /// Seed for sampled mode
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Emit the report as a single JSON object
        #[arg(long)]
        json: bool,
    },
    /// Exact entropy report for a strategy under uniform coins
    Entropy {
        /// Strategy file
        strategy: PathBuf,
        /// Emit the report as a single JSON object
        #[arg(long)]
        json: bool,
    },
    /// Write a bundled example network to a file
    Fixtures {
        /// Fixture name, e.g. fig3, fig9_cluster, forehead_4, complete_5_3
        name: String,
        /// Directory to write into
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scheme {
    /// Components -> cluster; k=2 -> tree; complete (n-1)-uniform -> forehead; else topological
    Auto,
    Tree,
    Topological,
    Forehead,
    Cluster,
}

impl Scheme {
    fn name(self) -> &'static str {
        match self {
            Scheme::Auto => "auto",
            Scheme::Tree => "tree",
            Scheme::Topological => "topological",
            Scheme::Forehead => "forehead",
            Scheme::Cluster => "cluster",
        }
    }
}

/// A classified command failure: stable kind token, documented exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(code: u8, kind: &'static str, message: impl Into<String>) -> Failure {
        Failure {
            code,
            kind,
            message: message.into(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(err: ParseError) -> Failure {
        Failure::new(EXIT_PARSE, "PARSE_ERROR", err.to_string())
    }
}

impl From<HypergraphError> for Failure {
    fn from(err: HypergraphError) -> Failure {
        use HypergraphError::*;
        let (code, kind) = match &err {
            VertexOutOfRange { .. } | RepeatedVertex(_) | EmptyEdge | DuplicateEdge(_)
            | NotUniform { .. } => (EXIT_PARSE, "PARSE_ERROR"),
            UniformityTooLow { .. } => (EXIT_UNIFORMITY, "UNIFORMITY_ERROR"),
            NotConnected => (EXIT_NOT_CONNECTED, "NOT_CONNECTED"),
            NotPathConnected => (EXIT_INVALID_CLUSTER, "NOT_PATH_CONNECTED"),
            HasCycle => (EXIT_INVALID_CLUSTER, "HAS_CYCLE"),
            ComponentNotConnected { .. } => (EXIT_INVALID_CLUSTER, "COMPONENT_NOT_CONNECTED"),
            EdgeOutsideComponents { .. } => (EXIT_INVALID_CLUSTER, "EDGE_OUTSIDE_COMPONENTS"),
        };
        Failure::new(code, kind, err.to_string())
    }
}

impl From<StrategyError> for Failure {
    fn from(err: StrategyError) -> Failure {
        match err {
            StrategyError::Graph(e) => e.into(),
            StrategyError::NotPairwise(_) | StrategyError::TooSmall
            | StrategyError::NotForehead { .. } => {
                Failure::new(EXIT_UNIFORMITY, "UNIFORMITY_ERROR", err.to_string())
            }
            StrategyError::Invalid(_) => Failure::new(EXIT_IO, "INVALID_STRATEGY", err.to_string()),
        }
    }
}

impl From<SimulateError> for Failure {
    fn from(err: SimulateError) -> Failure {
        match err {
            SimulateError::TooLarge { .. } => Failure::new(
                EXIT_TOO_LARGE,
                "TOO_LARGE",
                format!("{err}; use --sampled COUNT for large networks"),
            ),
            SimulateError::SingularSystem { .. } | SimulateError::Inconsistent { .. } => {
                Failure::new(EXIT_VERIFY_FAILED, "SINGULAR_SYSTEM", err.to_string())
            }
            SimulateError::DomainMismatch { .. } => {
                Failure::new(EXIT_PARSE, "PARSE_ERROR", err.to_string())
            }
        }
    }
}

impl From<EntropyError> for Failure {
    fn from(err: EntropyError) -> Failure {
        Failure::new(EXIT_TOO_LARGE, "TOO_LARGE", err.to_string())
    }
}

/// Writes report text to stdout. A closed pipe downstream (`head`, `grep -q`)
/// ends the process quietly with the usual SIGPIPE status instead of a panic.
fn report_raw(text: &str) {
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(text.as_bytes()).is_err() {
        std::process::exit(141);
    }
}

macro_rules! report {
    ($($arg:tt)*) => {
        report_raw(&format!("{}\n", format_args!($($arg)*)))
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error[{}]: {}", f.kind, f.message);
            ExitCode::from(f.code)
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Check { input } => cmd_check(&input),
        Command::Synthesize {
            input,
            scheme,
            output,
        } => cmd_synthesize(&input, scheme, output.as_deref()),
        Command::Simulate {
            strategy,
            sampled,
            seed,
            json,
        } => cmd_simulate(&strategy, sampled, seed, json),
        Command::Entropy { strategy, json } => cmd_entropy(&strategy, json),
        Command::Fixtures { name, dir } => cmd_fixtures(&name, &dir),
    }
}

/// Reads a network from a file, or from the fixture catalog when no such
/// file exists.
fn resolve_network(input: &str) -> Result<NetworkFile, Failure> {
    let path = std::path::Path::new(input);
    if path.exists() {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::new(EXIT_IO, "IO_ERROR", format!("{input}: {e}")))?;
        return Ok(parse_network(&text)?);
    }
    if let Some((graph, components)) = fixtures::by_name(input) {
        return Ok(NetworkFile { graph, components });
    }
    Err(Failure::new(
        EXIT_UNKNOWN_FIXTURE,
        "UNKNOWN_FIXTURE",
        format!(
            "no file or bundled network named \"{input}\" (known: {})",
            fixtures::NAME_SCHEMAS.join(", ")
        ),
    ))
}

fn read_strategy(path: &std::path::Path) -> Result<Strategy, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_IO, "IO_ERROR", format!("{}: {e}", path.display())))?;
    Ok(parse_strategy(&text)?)
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_check(input: &str) -> Result<(), Failure> {
    let file = resolve_network(input)?;
    let g = &file.graph;
    report!("network: n={} k={} edges={}", g.n(), g.k(), g.edge_count());
    report!("k-uniform: yes");
    report!("path-connected: {}", yesno(g.is_path_connected()));
    report!("cycle-free: {}", yesno(g.is_cycle_free()));

    if let Some(components) = &file.components {
        report!("components: {}", components.len());
        for (i, c) in components.iter().enumerate() {
            report!("component {}: {}", i + 1, c);
        }
        match validate_cluster(g, components) {
            Ok(spec) => {
                report!("cluster-valid: yes");
                let (vl, vr) = spec.vertex_identity();
                report!("vertex-identity: sum(|A|-1) = {vl} = n-1 = {vr}");
                let (dl, dr) = spec.degree_identity();
                report!("degree-identity: sum(deg-1) = {dl} = m-1 = {dr}");
                Ok(())
            }
            Err(e) => {
                report!("cluster-valid: no");
                Err(e.into())
            }
        }
    } else if g.k() >= 2 {
        let connected = g.is_topologically_connected()?;
        report!("topologically-connected: {}", yesno(connected));
        if !connected {
            return Err(HypergraphError::NotConnected.into());
        }
        let want = binomial(g.n() - 1, g.k() - 1);
        let have = g.edge_count() as u64;
        if have == want {
            report!(
                "minimal: yes (edges = {have} = C({},{}))",
                g.n() - 1,
                g.k() - 1
            );
        } else {
            report!(
                "minimal: no (edges = {have} > C({},{}) = {want})",
                g.n() - 1,
                g.k() - 1
            );
        }
        Ok(())
    } else {
        // k = 1: no (k-1)-topology to speak of; path connectivity decides.
        if g.is_path_connected() {
            Ok(())
        } else {
            Err(HypergraphError::NotConnected.into())
        }
    }
}

fn pick_scheme(file: &NetworkFile, requested: Scheme) -> Scheme {
    if requested != Scheme::Auto {
        return requested;
    }
    let g = &file.graph;
    if g.k() == 2 {
        Scheme::Tree
    } else if g.n() >= 2 && g.k() + 1 == g.n() && g.is_complete() {
        Scheme::Forehead
    } else if file.components.is_some() {
        Scheme::Cluster
    } else {
        Scheme::Topological
    }
}

fn cmd_synthesize(input: &str, requested: Scheme, output: Option<&std::path::Path>) -> Result<(), Failure> {
    let file = resolve_network(input)?;
    let g = &file.graph;
    let scheme = pick_scheme(&file, requested);
    let strategy = match scheme {
        Scheme::Auto => unreachable!("pick_scheme resolves auto"),
        Scheme::Tree => synthesize_tree(g)?,
        Scheme::Topological => synthesize_topological(g)?,
        Scheme::Forehead => {
            if g.n() < 2 || g.k() + 1 != g.n() || !g.is_complete() {
                return Err(StrategyError::NotForehead {
                    n: g.n(),
                    expected: g.n().saturating_sub(1),
                }
                .into());
            }
            synthesize_forehead(g.n())?
        }
        Scheme::Cluster => {
            let components = file.components.as_deref().ok_or_else(|| {
                Failure::new(
                    EXIT_INVALID_CLUSTER,
                    "INVALID_CLUSTER",
                    "cluster scheme needs a network file with a components section",
                )
            })?;
            synthesize_cluster_from_parts(g, components)?
        }
    };

    let text = write_strategy(&strategy);
    match output {
        Some(path) => {
            fs::write(path, &text)
                .map_err(|e| Failure::new(EXIT_IO, "IO_ERROR", format!("{}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
        }
        None => report_raw(&text),
    }
    eprintln!("scheme: {}", scheme.name());
    eprintln!("coins: {}", strategy.coins.len());
    eprintln!("broadcasts: {}", strategy.broadcasts.len());
    eprintln!("rate: {}", strategy.rate());
    eprintln!("bound: {}", strategy.bound());
    Ok(())
}

fn user_status(u: &UserVerification) -> String {
    match (u.solvable, u.first_failure) {
        (true, None) => "ok".to_string(),
        (true, Some(mask)) => format!("decode failed at assignment {mask}"),
        (false, None) => "singular system (no failing assignment sampled)".to_string(),
        (false, Some(mask)) => format!("singular system, first failure at assignment {mask}"),
    }
}

fn print_simulation(report: &SimulationReport, json: bool) {
    if json {
        let per_user: Vec<serde_json::Value> = report
            .per_user_decoded
            .iter()
            .map(|u| {
                serde_json::json!({
                    "user": u.user,
                    "solvable": u.solvable,
                    "first_failure": u.first_failure,
                })
            })
            .collect();
        let value = serde_json::json!({
            "zero_error": report.zero_error,
            "assignments_checked": report.assignments_checked,
            "rate_num": report.rate.num(),
            "rate_den": report.rate.den(),
            "bound_num": report.bound.num(),
            "bound_den": report.bound.den(),
            "algebraic_certificate": report.algebraic_certificate,
            "per_user": per_user,
        });
        report!("{value}");
        return;
    }
    report!("zero_error: {}", report.zero_error);
    report!("assignments_checked: {}", report.assignments_checked);
    report!("rate: {}", report.rate);
    report!("bound: {}", report.bound);
    report!("algebraic_certificate: {}", report.algebraic_certificate);
    for u in &report.per_user_decoded {
        report!("user {}: {}", u.user, user_status(u));
    }
}

fn cmd_simulate(path: &std::path::Path, sampled: Option<u64>, seed: u64, json: bool) -> Result<(), Failure> {
    let strategy = read_strategy(path)?;
    let mode = match sampled {
        Some(count) => VerifyMode::Sampled { count, seed },
        None => VerifyMode::Exhaustive,
    };
    let report = verify_zero_error(&strategy, mode)?;
    print_simulation(&report, json);
    if report.zero_error {
        Ok(())
    } else {
        Err(Failure::new(
            EXIT_VERIFY_FAILED,
            "VERIFICATION_FAILED",
            "strategy does not decode with zero error",
        ))
    }
}

fn print_entropy(strategy: &Strategy, report: &EntropyReport, json: bool) {
    let sum: f64 = report.lemma42_lhs;
    if json {
        let value = serde_json::json!({
            "h_M_bits": report.h_m,
            "h_X_bits": report.h_x,
            "h_M_given_Ri_bits": report.h_m_given_ri,
            "sum_conditional_bits": sum,
            "lemma42_rhs_bits": report.lemma42_rhs,
            "lemma42_holds": report.lemma42_holds(),
            "theorem11_holds": report.theorem11_satisfied,
            "rate": format!("{}", strategy.rate()),
            "bound": format!("{}", strategy.bound()),
        });
        report!("{value}");
        return;
    }
    report!("h_M_bits: {}", report.h_m);
    report!("h_X_bits: {}", report.h_x);
    for (i, h) in report.h_m_given_ri.iter().enumerate() {
        report!("h_M_given_R{}_bits: {}", i + 1, h);
    }
    report!("sum_conditional_bits: {sum}");
    report!("lemma42_holds: {}", report.lemma42_holds());
    report!("theorem11_holds: {}", report.theorem11_satisfied);
    report!("rate: {}", strategy.rate());
    report!("bound: {}", strategy.bound());
}

fn cmd_entropy(path: &std::path::Path, json: bool) -> Result<(), Failure> {
    let strategy = read_strategy(path)?;
    let report = exact_entropies(&strategy)?;
    print_entropy(&strategy, &report, json);
    Ok(())
}

fn cmd_fixtures(name: &str, dir: &std::path::Path) -> Result<(), Failure> {
    let Some((graph, components)) = fixtures::by_name(name) else {
        return Err(Failure::new(
            EXIT_UNKNOWN_FIXTURE,
            "UNKNOWN_FIXTURE",
            format!(
                "no bundled network named \"{name}\" (known: {})",
                fixtures::NAME_SCHEMAS.join(", ")
            ),
        ));
    };
    let path = dir.join(format!("{name}.hg"));
    let text = write_network(&graph, components.as_deref());
    fs::write(&path, text)
        .map_err(|e| Failure::new(EXIT_IO, "IO_ERROR", format!("{}: {e}", path.display())))?;
    report!("wrote {}", path.display());
    Ok(())
}

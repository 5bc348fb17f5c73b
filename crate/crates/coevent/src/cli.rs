//! Command-line front end.
//!
//! Every subcommand reads its problem from a file (or stdin via `-`)
//! and/or inline flags, prints a plain-text report to stdout, and mirrors
//! the same report as JSON under `--json`. Exit codes: 0 on success, 1
//! when a verification suite reports a failed property, 2 on usage or
//! parse errors.

use std::fmt;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::event::OutcomeSpace;
use crate::poly::{self};
use crate::preclusion::{
    occurrence_query, precluding_basis, preclusive_basis, CoeventSubspace, PrecludedFamily,
    QueryMode,
};
use crate::projection::{lattice_search, LatticeSearchMode, MasterObservable, Projection};
use crate::suites::{run_suite, Suite};
use crate::text::{parse_event_list, parse_problem, ProblemSpec};
use crate::truth::{classify, decompose_additive, decompose_multiplicative, TruthTable};

#[derive(Debug, Parser)]
#[command(
    name = "coevent",
    version,
    about = "Grade-2 coevents over GF(2): classification, projections, the master observable and preclusion analysis"
)]
struct Cli {
    /// Emit the report as JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify the truth table that is 1 exactly on the query events.
    Classify(ProblemArgs),
    /// Build the unique coevent with the given singleton/doubleton values.
    ///
    /// The query events must all have one or two outcomes; listed events
    /// get value 1, every other singleton and doubleton gets 0.
    Interpolate(ProblemArgs),
    /// Compute the preclusive and precluding subspaces of a family.
    Preclusion {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Close the family under unions of disjoint members first.
        #[arg(long)]
        close_disjoint_unions: bool,
    },
    /// Ask whether each query event can occur under the family.
    Occurs {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Restrict to one subspace; both are queried when omitted.
        #[arg(long, value_parser = ["preclusive", "precluding"])]
        mode: Option<String>,
        /// Close the family under unions of disjoint members first.
        #[arg(long)]
        close_disjoint_unions: bool,
    },
    /// Print master-observable projections P(A) for the query events,
    /// and the observable of `f` when the problem defines one.
    Master(ProblemArgs),
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        /// interference, coevent, projection, master, preclusion, lattice or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Outcome count for the exhaustive scans (capped at 4).
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Scan projection pairs for greatest lower bounds.
    LatticeSearch {
        /// Outcome count; exhaustive mode requires n = 2 (D = 3).
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Sample this many random pairs instead of scanning all of them.
        #[arg(long)]
        budget: Option<usize>,
        /// Seed for the deterministic random mode.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct ProblemArgs {
    /// Problem file (`n = 3`, `precluded = {1,2};{2,3}`, `query = {1}`,
    /// `f = 1,1,2`); `-` reads stdin.
    file: Option<PathBuf>,
    /// Outcome count, overriding the file.
    #[arg(long)]
    n: Option<usize>,
    /// Precluded family, e.g. `{1,2};{2,3}`, overriding the file.
    #[arg(long)]
    precluded: Option<String>,
    /// Query events, e.g. `{1};{1,2}`, overriding the file.
    #[arg(long)]
    query: Option<String>,
}

/// A usage-level failure: reported on stderr with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn resolve_problem(args: &ProblemArgs) -> Result<ProblemSpec, UsageError> {
    let mut spec: Option<ProblemSpec> = None;
    if let Some(path) = &args.file {
        let text = if path.as_os_str() == "-" {
            let mut buffer = String::new();
            std::io::stdin().read_to_string(&mut buffer)?;
            buffer
        } else {
            std::fs::read_to_string(path)
                .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?
        };
        spec = Some(parse_problem(&text)?);
    }

    let space = match (args.n, &spec) {
        (Some(n), _) => OutcomeSpace::new(n)?,
        (None, Some(s)) => s.space,
        (None, None) => {
            return Err(UsageError(
                "an outcome count is required: pass --n or a problem file".into(),
            ))
        }
    };
    let mut resolved = match spec {
        Some(s) if s.space == space => s,
        // an --n override invalidates file events parsed against another n
        Some(s) => ProblemSpec {
            space,
            precluded: None,
            query: Vec::new(),
            random_variable: s.random_variable.filter(|f| f.space() == space),
        },
        None => ProblemSpec {
            space,
            precluded: None,
            query: Vec::new(),
            random_variable: None,
        },
    };
    if let Some(text) = &args.precluded {
        let events = parse_event_list(text, space)?;
        resolved.precluded = Some(PrecludedFamily::new(space, &events));
    }
    if let Some(text) = &args.query {
        resolved.query = parse_event_list(text, space)?;
    }
    Ok(resolved)
}

fn emit<T: Serialize + fmt::Display>(report: &T, json: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("serializable report")
        );
    } else {
        println!("{report}");
    }
}

/// Parse the process arguments, dispatch, and return the exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, UsageError> {
    let json = cli.json;
    match cli.command {
        Command::Classify(args) => {
            let problem = resolve_problem(&args)?;
            emit(&classify_report(&problem)?, json);
            Ok(0)
        }
        Command::Interpolate(args) => {
            let problem = resolve_problem(&args)?;
            emit(&interpolate_report(&problem)?, json);
            Ok(0)
        }
        Command::Preclusion {
            problem,
            close_disjoint_unions,
        } => {
            let problem = resolve_problem(&problem)?;
            emit(&preclusion_report(&problem, close_disjoint_unions)?, json);
            Ok(0)
        }
        Command::Occurs {
            problem,
            mode,
            close_disjoint_unions,
        } => {
            let problem = resolve_problem(&problem)?;
            let mode = match mode.as_deref() {
                Some("preclusive") => Some(QueryMode::Preclusive),
                Some("precluding") => Some(QueryMode::Precluding),
                Some(other) => return Err(UsageError(format!("unknown mode {other:?}"))),
                None => None,
            };
            emit(&occurs_report(&problem, mode, close_disjoint_unions)?, json);
            Ok(0)
        }
        Command::Master(args) => {
            let problem = resolve_problem(&args)?;
            emit(&master_report(&problem), json);
            Ok(0)
        }
        Command::Verify { suite, n } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite, n)?;
            emit(&report, json);
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::LatticeSearch { n, budget, seed } => {
            let space = OutcomeSpace::new(n)?;
            let mode = match budget {
                Some(budget) => LatticeSearchMode::Random { budget, seed },
                None => LatticeSearchMode::Exhaustive,
            };
            emit(&lattice_search(space, mode)?, json);
            Ok(0)
        }
    }
}

// --- classify ---------------------------------------------------------

#[derive(Debug, Serialize)]
struct ClassifyReport {
    n: usize,
    table: String,
    classification: crate::truth::ClassificationReport,
    additive_outcomes: Option<Vec<usize>>,
    multiplicative_generator: Option<String>,
    polynomial: Option<String>,
}

impl fmt::Display for ClassifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "table (n = {}): {}", self.n, self.table)?;
        let c = &self.classification;
        writeln!(f, "unital:               {}", c.unital)?;
        writeln!(f, "grade-1 additive:     {}", c.grade1_additive)?;
        writeln!(f, "multiplicative:       {}", c.multiplicative)?;
        writeln!(f, "grade-2 additive:     {}", c.grade2_additive)?;
        writeln!(f, "two-point condition:  {}", c.two_point_condition)?;
        writeln!(f, "homomorphism:         {}", c.homomorphism)?;
        if let Some(outcomes) = &self.additive_outcomes {
            let terms: Vec<String> = outcomes.iter().map(|i| format!("w{i}*")).collect();
            writeln!(f, "additive form:        {}", terms.join(" + "))?;
        }
        if let Some(generator) = &self.multiplicative_generator {
            writeln!(f, "multiplicative form:  product over {generator}")?;
        }
        match &self.polynomial {
            Some(p) => write!(f, "coevent polynomial:   {p}"),
            None => write!(f, "coevent polynomial:   none (not grade-2 additive)"),
        }
    }
}

fn classify_report(problem: &ProblemSpec) -> Result<ClassifyReport, UsageError> {
    let table = TruthTable::from_true_events(problem.space, &problem.query)?;
    let classification = classify(&table);
    Ok(ClassifyReport {
        n: problem.space.outcome_count(),
        table: table.to_string(),
        classification,
        additive_outcomes: decompose_additive(&table).ok(),
        multiplicative_generator: decompose_multiplicative(&table).ok().map(|e| e.to_string()),
        polynomial: poly::from_table(&table).ok().map(|phi| phi.to_string()),
    })
}

// --- interpolate ------------------------------------------------------

#[derive(Debug, Serialize)]
struct InterpolateReport {
    n: usize,
    coevent: String,
    unital: bool,
    monomial_count: usize,
    /// The full true-event list; omitted on large spaces.
    true_events: Option<String>,
}

impl fmt::Display for InterpolateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "coevent (n = {}): {}", self.n, self.coevent)?;
        writeln!(f, "monomials: {}", self.monomial_count)?;
        write!(f, "unital: {}", self.unital)?;
        if let Some(events) = &self.true_events {
            write!(f, "\ntrue on: {events}")?;
        }
        Ok(())
    }
}

fn interpolate_report(problem: &ProblemSpec) -> Result<InterpolateReport, UsageError> {
    let space = problem.space;
    let mut singleton_bits = 0u32;
    let mut doubleton_bits = 0u128;
    for event in &problem.query {
        let indices: Vec<usize> = event.indices().collect();
        match indices.as_slice() {
            [i] => singleton_bits |= 1 << (i - 1),
            [i, j] => doubleton_bits |= 1 << poly::pair_index(space, *i, *j)?,
            _ => {
                return Err(UsageError(format!(
                    "interpolation data must be singleton or doubleton events, got {event}"
                )))
            }
        }
    }
    let phi = poly::interpolate(space, singleton_bits, doubleton_bits);
    let (linear, pairs) = phi.monomials();
    let true_events = (space.outcome_count() <= 6).then(|| phi.to_table().to_string());
    Ok(InterpolateReport {
        n: space.outcome_count(),
        coevent: phi.to_string(),
        unital: phi.is_unital(),
        monomial_count: linear.len() + pairs.len(),
        true_events,
    })
}

// --- preclusion -------------------------------------------------------

#[derive(Debug, Serialize)]
struct BasisEntry {
    coevent: String,
    unital: bool,
}

#[derive(Debug, Serialize)]
struct SubspaceSummary {
    dimension: usize,
    basis: Vec<BasisEntry>,
}

impl SubspaceSummary {
    fn of(subspace: &CoeventSubspace) -> Self {
        SubspaceSummary {
            dimension: subspace.dimension(),
            basis: subspace
                .basis()
                .iter()
                .map(|phi| BasisEntry {
                    coevent: phi.to_string(),
                    unital: phi.is_unital(),
                })
                .collect(),
        }
    }
}

impl fmt::Display for SubspaceSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dimension {}", self.dimension)?;
        for entry in &self.basis {
            write!(
                f,
                "\n  {}{}",
                entry.coevent,
                if entry.unital { "  (unital)" } else { "" }
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Serialize)]
struct PreclusionReport {
    n: usize,
    family: String,
    union: String,
    closed_under_disjoint_unions: bool,
    preclusive: SubspaceSummary,
    precluding: SubspaceSummary,
}

impl fmt::Display for PreclusionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "precluded family (n = {}): {}", self.n, self.family)?;
        if self.closed_under_disjoint_unions {
            writeln!(f, "(closed under disjoint unions)")?;
        }
        writeln!(f, "union: {}", self.union)?;
        writeln!(f, "preclusive subspace: {}", self.preclusive)?;
        write!(f, "precluding subspace: {}", self.precluding)
    }
}

fn family_of(problem: &ProblemSpec, close: bool) -> Result<PrecludedFamily, UsageError> {
    let family = problem
        .precluded
        .clone()
        .unwrap_or_else(|| PrecludedFamily::new(problem.space, &[]));
    Ok(if close {
        family.close_under_disjoint_unions()
    } else {
        family
    })
}

fn preclusion_report(problem: &ProblemSpec, close: bool) -> Result<PreclusionReport, UsageError> {
    let family = family_of(problem, close)?;
    Ok(PreclusionReport {
        n: problem.space.outcome_count(),
        family: family.to_string(),
        union: family.union().to_string(),
        closed_under_disjoint_unions: close,
        preclusive: SubspaceSummary::of(&preclusive_basis(&family)),
        precluding: SubspaceSummary::of(&precluding_basis(&family)),
    })
}

// --- occurs -----------------------------------------------------------

#[derive(Debug, Serialize)]
struct OccursEntry {
    event: String,
    mode: QueryMode,
    exists: bool,
    witness: Option<String>,
    /// BA': the part of the event outside the precluded union.
    outside_union: String,
}

#[derive(Debug, Serialize)]
struct OccursReport {
    n: usize,
    family: String,
    union: String,
    entries: Vec<OccursEntry>,
}

impl fmt::Display for OccursReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "precluded family (n = {}): {} (union {})",
            self.n, self.family, self.union
        )?;
        for entry in &self.entries {
            write!(
                f,
                "\n{} {}: {}",
                entry.mode,
                entry.event,
                if entry.exists {
                    "can occur"
                } else {
                    "cannot occur"
                }
            )?;
            if let Some(witness) = &entry.witness {
                write!(f, ", witness {witness}")?;
            }
            write!(f, " (outside union: {})", entry.outside_union)?;
        }
        Ok(())
    }
}

fn occurs_report(
    problem: &ProblemSpec,
    mode: Option<QueryMode>,
    close: bool,
) -> Result<OccursReport, UsageError> {
    let family = family_of(problem, close)?;
    if problem.query.is_empty() {
        return Err(UsageError("occurs needs at least one query event".into()));
    }
    let union = family.union();
    let modes: &[QueryMode] = match mode {
        Some(QueryMode::Preclusive) => &[QueryMode::Preclusive],
        Some(QueryMode::Precluding) => &[QueryMode::Precluding],
        None => &[QueryMode::Preclusive, QueryMode::Precluding],
    };
    let mut entries = Vec::new();
    for &event in &problem.query {
        for &mode in modes {
            let answer = occurrence_query(&family, event, mode);
            entries.push(OccursEntry {
                event: event.to_string(),
                mode,
                exists: answer.exists,
                witness: answer.witness.map(|phi| phi.to_string()),
                outside_union: event.intersect(&union.complement()).to_string(),
            });
        }
    }
    Ok(OccursReport {
        n: problem.space.outcome_count(),
        family: family.to_string(),
        union: union.to_string(),
        entries,
    })
}

// --- master -----------------------------------------------------------

#[derive(Debug, Serialize)]
struct MatrixBlock {
    label: String,
    matrix: String,
    rank: usize,
}

#[derive(Debug, Serialize)]
struct MasterReport {
    n: usize,
    dimension: usize,
    generators: Vec<MatrixBlock>,
    projections: Vec<MatrixBlock>,
    observable: Vec<MatrixBlock>,
}

impl fmt::Display for MasterReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "master observable on n = {} outcomes (D = {})",
            self.n, self.dimension
        )?;
        for block in self
            .generators
            .iter()
            .chain(&self.projections)
            .chain(&self.observable)
        {
            write!(
                f,
                "\n{} (rank {}):\n{}",
                block.label, block.rank, block.matrix
            )?;
        }
        Ok(())
    }
}

fn block(label: String, p: &Projection) -> MatrixBlock {
    MatrixBlock {
        label,
        matrix: p.matrix().to_string(),
        rank: p.rank(),
    }
}

fn master_report(problem: &ProblemSpec) -> MasterReport {
    let space = problem.space;
    let obs = MasterObservable::new(space);
    let generators = if problem.query.is_empty() && problem.random_variable.is_none() {
        (1..=space.outcome_count())
            .map(|i| block(format!("P(w{i})"), &obs.generator(i)))
            .collect()
    } else {
        Vec::new()
    };
    let projections = problem
        .query
        .iter()
        .map(|&a| block(format!("P({a})"), &obs.projection(a)))
        .collect();
    let observable = problem
        .random_variable
        .as_ref()
        .map(|f| {
            let mut values: Vec<f64> = f.values().to_vec();
            values.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
            values.dedup();
            values
                .iter()
                .map(|&v| {
                    let preimage = f.preimage(&[v]);
                    block(
                        format!("P^f({{{v}}}) = P({preimage})"),
                        &obs.projection(preimage),
                    )
                })
                .collect()
        })
        .unwrap_or_default();
    MasterReport {
        n: space.outcome_count(),
        dimension: space.dimension(),
        generators,
        projections,
        observable,
    }
}

// --- a couple of report-shape tests ------------------------------------

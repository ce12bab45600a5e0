use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ycluster::family::{Family, FamilyKind};
use ycluster::mutclass::{
    coxeter_crosscheck, expected_type, find_dynkin, stored_script, ClassSearchResult, ReductionScript,
};
use ycluster::quiver::{build_quiver, dynkin_type, DynkinType, LabeledQuiver};
use ycluster::seed_engine::{random_initial_values, run, MutationSchedule, Seed, Trajectory, DEFAULT_SEED};
use ycluster::ysystem_verify::{
    check_periodicity_with, check_t_relations, check_y_relations_with, dilog_report_with, quiver_period_report,
    tropical_report, Tolerances, VerificationReport, YSolution, TOL_DILOG, TOL_RELATION,
};

#[derive(Parser)]
#[command(name = "ycluster", version, about = "Cluster-algebra verification of sine-Gordon Y-systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the initial quiver as JSON.
    Build(FamilyArgs),
    /// Run the mutation schedule and emit the trajectory as JSON.
    Run {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run verification checks and emit their reports.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Check::All)]
        check: Check,
        /// Relative tolerance for Y-relations and periodicity.
        #[arg(long, default_value_t = TOL_RELATION)]
        tol_rel: f64,
        /// Relative tolerance for dilogarithm sums.
        #[arg(long, default_value_t = TOL_DILOG)]
        tol_dilog: f64,
    },
    /// Search the mutation class for a Dynkin quiver, or replay a reduction script.
    Mutclass {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 200_000)]
        node_bound: usize,
        /// Replay a reduction script from a JSON file.
        #[arg(long, conflicts_with_all = ["stored", "reduce"])]
        script: Option<PathBuf>,
        /// Replay the built-in script for this family.
        #[arg(long, conflicts_with = "reduce")]
        stored: bool,
        /// Emit a reduction script found by greedy arrow-count descent.
        #[arg(long)]
        reduce: bool,
    },
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_parser = parse_kind)]
    family: FamilyKind,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: u32,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct RunArgs {
    #[arg(long, value_enum, default_value_t = SemifieldArg::Numeric)]
    semifield: SemifieldArg,
    /// Number of full periods to run.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    periods: u32,
    /// RNG seed for numeric initial values; YCLUSTER_SEED takes precedence.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SemifieldArg {
    Tropical,
    Numeric,
    Symbolic,
}

impl SemifieldArg {
    fn name(self) -> &'static str {
        match self {
            SemifieldArg::Tropical => "tropical",
            SemifieldArg::Numeric => "numeric",
            SemifieldArg::Symbolic => "symbolic",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    QuiverPeriod,
    Tropical,
    YRelations,
    TRelations,
    Periodicity,
    Dilog,
    Coxeter,
    All,
}

const CHECKS: [Check; 7] = [
    Check::QuiverPeriod,
    Check::Tropical,
    Check::YRelations,
    Check::TRelations,
    Check::Periodicity,
    Check::Dilog,
    Check::Coxeter,
];

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::QuiverPeriod => "quiver-period",
            Check::Tropical => "tropical",
            Check::YRelations => "y-relations",
            Check::TRelations => "t-relations",
            Check::Periodicity => "periodicity",
            Check::Dilog => "dilog",
            Check::Coxeter => "coxeter",
            Check::All => "all",
        }
    }

    /// Whether `--check all` runs this check for the semifield.
    fn applies_to(self, s: SemifieldArg) -> bool {
        match self {
            Check::Tropical => s == SemifieldArg::Tropical,
            Check::YRelations => s != SemifieldArg::Symbolic,
            Check::TRelations => s == SemifieldArg::Symbolic,
            Check::Dilog => s == SemifieldArg::Numeric,
            _ => true,
        }
    }
}

fn parse_kind(s: &str) -> Result<FamilyKind, String> {
    s.parse::<FamilyKind>().map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct RunConfig {
    family: FamilyKind,
    m: u32,
    n: u32,
    semifield: SemifieldArg,
    periods: u32,
    rng_seed: u64,
    tolerances: Tolerances,
}

#[derive(Serialize)]
struct VerifyOutput {
    config: RunConfig,
    pass: bool,
    reports: Vec<VerificationReport>,
    skipped: Vec<&'static str>,
}

#[derive(Serialize)]
struct MutclassOutput {
    family: Family,
    expected: DynkinType,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    search: Option<ClassSearchResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    script: Option<ReductionScript>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// A failure that maps to an exit code: 1 for a failed verification, 2 for bad input.
enum Failure {
    Verify,
    Usage(String),
}

impl From<ycluster::Error> for Failure {
    fn from(e: ycluster::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn family(args: &FamilyArgs) -> Result<Family, Failure> {
    Ok(Family::new(args.family, args.m, args.n)?)
}

fn rng_seed(args: &RunArgs) -> Result<u64, Failure> {
    match std::env::var("YCLUSTER_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("YCLUSTER_SEED is not an unsigned integer: {s:?}"))),
        Err(_) => Ok(args.seed),
    }
}

fn seed_for(q: LabeledQuiver, s: SemifieldArg, rng: u64) -> ycluster::Result<Seed> {
    match s {
        SemifieldArg::Tropical => Ok(Seed::tropical(q)),
        SemifieldArg::Symbolic => Ok(Seed::symbolic(q)),
        SemifieldArg::Numeric => {
            let values = random_initial_values(q.len(), rng);
            Seed::numeric(q, &values)
        }
    }
}

fn trajectory(f: &Family, args: &RunArgs, rng: u64, extra: i64) -> ycluster::Result<Trajectory> {
    let len = args.periods as i64 * f.full_period() + extra;
    let seed = seed_for(build_quiver(f), args.semifield, rng)?;
    run(&seed, &MutationSchedule::for_family(f), len as usize)
}

/// Write atomically to `out`, or to standard output.
fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    text.push('\n');
    match out {
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Usage(e.to_string()))?;
        }
        Some(path) => {
            let mut tmp = path.as_os_str().to_owned();
            tmp.push(".tmp");
            fs::write(&tmp, text).and_then(|_| fs::rename(&tmp, path)).map_err(|e| {
                Failure::Usage(format!("cannot write {}: {e}", path.display()))
            })?;
        }
    }
    Ok(())
}

fn verify(fa: &FamilyArgs, ra: &RunArgs, check: Check, tol: Tolerances) -> Result<(), Failure> {
    let f = family(fa)?;
    let rng = rng_seed(ra)?;
    let selected: Vec<Check> = if check == Check::All { CHECKS.to_vec() } else { vec![check] };
    let margin = f.schedule_period() as i64 + 2 * f.max_d();
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    let mut runs: Vec<(SemifieldArg, Trajectory)> = Vec::new();
    for c in selected {
        if check == Check::All && !c.applies_to(ra.semifield) {
            eprintln!("warning: skipping {} for the {} semifield", c.name(), ra.semifield.name());
            skipped.push(c.name());
            continue;
        }
        let kind = match c {
            Check::TRelations => Some(SemifieldArg::Symbolic),
            Check::YRelations | Check::Periodicity => Some(ra.semifield),
            _ => None,
        };
        let traj = match kind {
            Some(k) => {
                if !runs.iter().any(|(r, _)| *r == k) {
                    let args = RunArgs { semifield: k, ..*ra };
                    runs.push((k, trajectory(&f, &args, rng, margin)?));
                }
                runs.iter().find(|(r, _)| *r == k).map(|(_, t)| t)
            }
            None => None,
        };
        let rep = match c {
            Check::QuiverPeriod => quiver_period_report(&f)?,
            Check::Tropical => tropical_report(&f)?,
            Check::YRelations => check_y_relations_with(traj.unwrap(), &tol)?,
            Check::TRelations => check_t_relations(traj.unwrap())?,
            Check::Periodicity => check_periodicity_with(traj.unwrap(), &tol)?,
            Check::Dilog => dilog_report_with(&YSolution::random(&f, rng, rng.wrapping_add(1))?, &tol)?,
            Check::Coxeter => coxeter_crosscheck(&f),
            Check::All => unreachable!(),
        };
        reports.push(rep);
    }
    let pass = reports.iter().all(|r| r.pass);
    let output = VerifyOutput {
        config: RunConfig {
            family: f.kind,
            m: f.m,
            n: f.n,
            semifield: ra.semifield,
            periods: ra.periods,
            rng_seed: rng,
            tolerances: tol,
        },
        pass,
        reports,
        skipped,
    };
    emit(&output, fa.out.as_deref())?;
    if pass {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn mutclass(
    fa: &FamilyArgs,
    node_bound: usize,
    script: Option<&Path>,
    stored: bool,
    reduce: bool,
) -> Result<(), Failure> {
    let f = family(fa)?;
    if node_bound == 0 {
        return Err(Failure::Usage("--node-bound must be at least 1".into()));
    }
    let expected = expected_type(&f);
    let mut output = MutclassOutput {
        family: f,
        expected,
        pass: false,
        search: None,
        script: None,
        error: None,
    };
    if let Some(path) = script {
        let text =
            fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        let s: ReductionScript = serde_json::from_str(&text)
            .map_err(|e| Failure::Usage(format!("bad script {}: {e}", path.display())))?;
        if s.family != f {
            return Err(Failure::Usage(format!("script is for {}, not {f}", s.family)));
        }
        replay(&mut output, s);
    } else if stored {
        let s = stored_script(&f).ok_or_else(|| Failure::Usage(format!("no stored script for {f}")))?;
        replay(&mut output, s);
    } else if reduce {
        // the bare script, so that it can be fed back through --script
        return match ReductionScript::greedy(&f, 100 * f.rank(), 4) {
            Ok(s) => {
                emit(&s, fa.out.as_deref())?;
                if s.expected == expected {
                    Ok(())
                } else {
                    Err(Failure::Verify)
                }
            }
            Err(e) => {
                eprintln!("reduction failed: {e}");
                Err(Failure::Verify)
            }
        };
    } else {
        let res = find_dynkin(&build_quiver(&f), node_bound);
        output.pass = res.found.as_ref().is_some_and(|(t, path)| {
            *t == expected && end_type(&f, path.iter().map(|&v| vec![v])) == Some(*t)
        });
        output.search = Some(res);
    }
    emit(&output, fa.out.as_deref())?;
    if output.pass {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn end_type(f: &Family, steps: impl Iterator<Item = Vec<ycluster::VertexId>>) -> Option<DynkinType> {
    let mut q = build_quiver(f);
    for s in steps {
        q = q.mutate_all(&s).ok()?;
    }
    dynkin_type(q.matrix())
}

fn replay(output: &mut MutclassOutput, s: ReductionScript) {
    match s.apply() {
        Ok(_) => output.pass = s.expected == output.expected,
        Err(e) => output.error = Some(e.to_string()),
    }
    output.script = Some(s);
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Build(fa) => {
            let f = family(&fa)?;
            emit(&build_quiver(&f), fa.out.as_deref())
        }
        Command::Run { family: fa, run: ra } => {
            let f = family(&fa)?;
            let traj = trajectory(&f, &ra, rng_seed(&ra)?, 0)?;
            emit(&traj.report(), fa.out.as_deref())
        }
        Command::Verify {
            family: fa,
            run: ra,
            check,
            tol_rel,
            tol_dilog,
        } => {
            if !(tol_rel > 0.0 && tol_dilog > 0.0) {
                return Err(Failure::Usage("tolerances must be positive".into()));
            }
            let tol = Tolerances {
                relation: tol_rel,
                dilog: tol_dilog,
            };
            verify(&fa, &ra, check, tol)
        }
        Command::Mutclass {
            family: fa,
            node_bound,
            script,
            stored,
            reduce,
        } => mutclass(&fa, node_bound, script.as_deref(), stored, reduce),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

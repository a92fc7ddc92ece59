use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use shiftlab_core::betti::BettiRecord;
use shiftlab_core::checks::{
    check_consecutive, check_covering, check_general, check_multiple, check_range,
    check_subadditivity_profile, check_top, covering_support_pairs, find_covering_pairs,
    general_instances, minimal_covering_pairs, Analysis, InequalityReport,
};
use shiftlab_core::complex::{restrict_complex, scarf_complex, shifts_of_complex, taylor_complex_with_cap, verify_complex};
use shiftlab_core::golden::{verify, Fixtures};
use shiftlab_core::random::{random_instance, RandomParams};
use shiftlab_core::{
    minimalize, multigraded_betti_with_cap, parse_monomial, Error, FieldSpec, FreeComplex, MonomialIdeal,
    Multidegree, RingContext, DEFAULT_GENERATOR_CAP,
};

const EXIT_PROVEN_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_ARGS: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "shiftlab", version, about = "Betti numbers and maximal shifts of monomial ideals")]
struct Cli {
    /// Coefficient field: `q` or `p:<prime>`.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    field: FieldSpec,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Largest number of generators accepted for subset enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_GENERATOR_CAP)]
    cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    All,
    Consecutive,
    Top,
    Covering,
    Range,
    General,
    Multiple,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ComplexKind {
    Taylor,
    Scarf,
    Minimal,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coarse and multigraded Betti tables of S/I.
    Betti { ideal: PathBuf },
    /// Maximal shifts t_0 .. t_p.
    Shifts { ideal: PathBuf },
    /// Evaluate shift inequalities.
    Check {
        ideal: PathBuf,
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
        /// First multidegree of a covering pair (`3,2,0` or a monomial).
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        /// Homological index for range and general checks.
        #[arg(long)]
        a: Option<usize>,
        /// Split parameter for the general check.
        #[arg(long)]
        p: Option<usize>,
        /// Cover element `a:multidegree` for the multiple check; repeatable.
        #[arg(long = "cover")]
        covers: Vec<String>,
        /// File with one `a:multidegree` cover element per line.
        #[arg(long)]
        covers_file: Option<PathBuf>,
        /// Search covering pairs among Betti support multidegrees at this index.
        #[arg(long)]
        at: Option<usize>,
    },
    /// Random ideals checked against the subadditivity condition.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        maxexp: u32,
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Append ledger lines here instead of printing them.
        #[arg(long)]
        ledger: Option<PathBuf>,
    },
    /// Reproduce the published example values.
    VerifyPaper {
        /// Directory holding example1.ideal and example2.ideal.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Print a complex with its differentials.
    Dump {
        ideal: PathBuf,
        #[arg(long, value_enum, default_value_t = ComplexKind::Minimal)]
        complex: ComplexKind,
        /// Restrict to basis elements below this multidegree.
        #[arg(long)]
        alpha: Option<String>,
    },
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<Error>() {
            Some(e) => core_exit_code(e),
            None if error.downcast_ref::<io::Error>().is_some() => EXIT_PARSE,
            None => EXIT_ARGS,
        };
        Failure { code, error }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: core_exit_code(&e),
            error: e.into(),
        }
    }
}

fn core_exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::UnknownVariable(_) | Error::InvalidRing(_) | Error::UnitIdeal => EXIT_PARSE,
        Error::GeneratorCap { .. } => EXIT_CAP,
        Error::Inconsistent(_) => EXIT_PROVEN_FAILURE,
        _ => EXIT_ARGS,
    }
}

fn args_error(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_ARGS,
        error: anyhow::anyhow!(msg.into()),
    }
}

type CmdResult = Result<u8, Failure>;

macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to stdout: {e}");
        }
    }};
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_ARGS) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let ctx = Ctx {
        field: cli.field,
        format: cli.format,
        cap: cli.cap,
    };
    match cli.command {
        Command::Betti { ideal } => ctx.betti(&ideal),
        Command::Shifts { ideal } => ctx.shifts(&ideal),
        Command::Check {
            ideal,
            which,
            alpha,
            beta,
            a,
            p,
            covers,
            covers_file,
            at,
        } => {
            let args = CheckArgs {
                which,
                alpha,
                beta,
                a,
                p,
                covers,
                covers_file,
                at,
            };
            ctx.check(&ideal, args)
        }
        Command::Random {
            seed,
            n,
            m,
            maxexp,
            count,
            ledger,
        } => ctx.random(seed, RandomParams { n, m, maxexp }, count, ledger.as_deref()),
        Command::VerifyPaper { fixtures } => ctx.verify_paper(fixtures.as_deref()),
        Command::Dump { ideal, complex, alpha } => ctx.dump(&ideal, complex, alpha.as_deref()),
    }
}

struct Ctx {
    field: FieldSpec,
    format: Format,
    cap: usize,
}

struct CheckArgs {
    which: Which,
    alpha: Option<String>,
    beta: Option<String>,
    a: Option<usize>,
    p: Option<usize>,
    covers: Vec<String>,
    covers_file: Option<PathBuf>,
    at: Option<usize>,
}

fn read_ideal(path: &Path) -> Result<MonomialIdeal, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(|e| Failure { code: EXIT_PARSE, error: e })?;
    MonomialIdeal::parse(&text).map_err(|e| Failure {
        code: core_exit_code(&e),
        error: anyhow::Error::from(e).context(format!("parsing {}", path.display())),
    })
}

/// `3,2,0`, `(3,2,0)` or a monomial in the ring's variables.
fn parse_point(s: &str, ring: &RingContext) -> Result<Multidegree, Failure> {
    let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
    let point = if trimmed.chars().all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace()) && trimmed.contains(',')
    {
        let v = trimmed
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| args_error(format!("bad multidegree `{s}`")))?;
        Multidegree::new(v)
    } else {
        parse_monomial(trimmed, ring).map_err(|e| args_error(format!("bad multidegree `{s}`: {e}")))?
    };
    if point.len() != ring.nvars() {
        return Err(args_error(format!(
            "multidegree `{s}` has {} entries, the ring has {} variables",
            point.len(),
            ring.nvars()
        )));
    }
    Ok(point)
}

fn parse_cover(s: &str, ring: &RingContext) -> Result<(usize, Multidegree), Failure> {
    let (a, point) = s
        .split_once(':')
        .ok_or_else(|| args_error(format!("cover `{s}` is not of the form a:multidegree")))?;
    let a = a
        .trim()
        .parse()
        .map_err(|_| args_error(format!("bad index in cover `{s}`")))?;
    Ok((a, parse_point(point, ring)?))
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let s = serde_json::to_string(value).map_err(|e| args_error(e.to_string()))?;
    out!("{s}");
    Ok(())
}

impl Ctx {
    fn analysis(&self, ideal: MonomialIdeal) -> Result<Analysis, Failure> {
        Ok(Analysis::with_cap(ideal, self.field, self.cap)?)
    }

    fn betti(&self, path: &Path) -> CmdResult {
        let ideal = read_ideal(path)?;
        let betti = multigraded_betti_with_cap(&ideal, self.field, self.cap)?;
        match self.format {
            Format::Json => print_json(&betti.records())?,
            Format::Text => {
                out!(
                    "S/I over {}: {} generators in {} variables, projdim {}",
                    self.field,
                    ideal.num_generators(),
                    ideal.nvars(),
                    betti.projdim()
                );
                out!("betti numbers: {}", join(&betti.totals()));
                out!();
                out!("{}", betti.render_grid().trim_end_matches('\n'));
                out!();
                out!("{:>3}  {:>5}  {:>4}  multidegree", "a", "deg", "rank");
                for BettiRecord { a, mdeg, rank } in betti.records() {
                    out!("{a:>3}  {:>5}  {rank:>4}  {mdeg}", mdeg.total_degree());
                }
            }
        }
        Ok(0)
    }

    fn shifts(&self, path: &Path) -> CmdResult {
        let ideal = read_ideal(path)?;
        let t = multigraded_betti_with_cap(&ideal, self.field, self.cap)?.shift_profile();
        match self.format {
            Format::Json => print_json(&t)?,
            Format::Text => out!("{t}"),
        }
        Ok(0)
    }

    fn check(&self, path: &Path, args: CheckArgs) -> CmdResult {
        let ideal = read_ideal(path)?;
        let ring = ideal.ring().clone();
        let an = self.analysis(ideal)?;
        let pair = match (&args.alpha, &args.beta) {
            (Some(a), Some(b)) => Some((parse_point(a, &ring)?, parse_point(b, &ring)?)),
            (None, None) => None,
            _ => return Err(args_error("--alpha and --beta must be given together")),
        };
        let mut covers = args
            .covers
            .iter()
            .map(|c| parse_cover(c, &ring))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(file) = &args.covers_file {
            let text = fs::read_to_string(file)
                .with_context(|| format!("reading {}", file.display()))
                .map_err(|e| Failure { code: EXIT_PARSE, error: e })?;
            for line in text.lines() {
                let line = line.split('#').next().unwrap_or("").trim();
                if !line.is_empty() {
                    covers.push(parse_cover(line, &ring)?);
                }
            }
        }

        let which = args.which;
        let wants = |w: Which| which == Which::All || which == w;
        let mut reports: Vec<InequalityReport> = Vec::new();

        if which == Which::All {
            reports.extend(check_subadditivity_profile(an.shifts()));
        }
        if wants(Which::Consecutive) {
            reports.extend(check_consecutive(&an));
        }
        if wants(Which::Top) {
            match check_top(&an) {
                Ok(r) => reports.push(r),
                Err(e) if which == Which::Top => return Err(e.into()),
                Err(_) => {}
            }
        }
        let pairs: Vec<(Multidegree, Multidegree)> = match &pair {
            Some(p) => vec![p.clone()],
            None if wants(Which::Covering) || wants(Which::Range) => {
                minimal_covering_pairs(&find_covering_pairs(&an, args.at)?)
            }
            None => Vec::new(),
        };
        if wants(Which::Covering) {
            for (alpha, beta) in &pairs {
                reports.extend(check_covering(&an, alpha, beta).map_err(pair_error)?);
            }
        }
        if wants(Which::Range) {
            for (alpha, beta) in &pairs {
                let covering = check_covering(&an, alpha, beta).map_err(pair_error)?;
                let p = covering[0].params["p"].as_u64().unwrap_or(0) as usize;
                let q = covering[0].params["q"].as_u64().unwrap_or(0) as usize;
                let top = (p + q).min(an.projdim());
                let indices: Vec<usize> = match args.a {
                    Some(a) => vec![a],
                    None => (1..=top).collect(),
                };
                for a in indices {
                    reports.push(check_range(&an, alpha, beta, a)?);
                }
            }
        }
        if wants(Which::General) {
            match (args.a, args.p) {
                (Some(a), Some(p)) => reports.push(check_general(&an, a, p)?),
                (None, None) => {
                    let instances = general_instances(an.ideal());
                    if instances.is_empty() && which == Which::General {
                        let n = an.ideal().nvars();
                        let m = an.ideal().num_generators();
                        return Err(args_error(format!(
                            "no (a, p) satisfies the zero-dimensional hypotheses (n = {n}, m = {m})"
                        )));
                    }
                    for (a, p) in instances {
                        reports.push(check_general(&an, a, p)?);
                    }
                }
                _ if which == Which::General => return Err(args_error("--a and --p must be given together")),
                _ => {}
            }
        }
        if wants(Which::Multiple) {
            if covers.is_empty() {
                for [x, y] in covering_support_pairs(&an) {
                    reports.push(check_multiple(&an, &[x, y])?);
                }
            } else {
                reports.push(check_multiple(&an, &covers).map_err(pair_error)?);
            }
        }

        match self.format {
            Format::Json => {
                for r in &reports {
                    print_json(r)?;
                }
            }
            Format::Text => {
                out!("shifts over {}: {}", self.field, an.shifts());
                for r in &reports {
                    let tag = if r.proven { "" } else { "  (open)" };
                    out!("{r}{tag}");
                }
            }
        }
        let bugs = reports.iter().filter(|r| r.is_bug()).count();
        if bugs > 0 {
            eprintln!("{bugs} proven inequalities failed; this is a bug");
            return Ok(EXIT_PROVEN_FAILURE);
        }
        Ok(0)
    }

    fn random(&self, seed: u64, params: RandomParams, count: u64, ledger: Option<&Path>) -> CmdResult {
        if params.n == 0 || params.m == 0 || params.maxexp == 0 {
            return Err(args_error("--n, --m and --maxexp must be positive"));
        }
        let field = self.field;
        let cap = self.cap;
        let results: Vec<Result<serde_json::Value, String>> = (0..count)
            .into_par_iter()
            .map(|index| random_record(seed, index, params, field, cap))
            .collect();

        let mut out: Box<dyn Write> = match ledger {
            Some(path) => Box::new(
                OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(path)
                    .with_context(|| format!("opening {}", path.display()))
                    .map_err(|e| Failure { code: EXIT_ARGS, error: e })?,
            ),
            None => Box::new(io::stdout().lock()),
        };
        let mut written = 0;
        let mut open_violations = 0;
        for (index, result) in results.into_iter().enumerate() {
            match result {
                Ok(record) => {
                    if record["proven_ok"] == json!(false) {
                        out.flush().ok();
                        eprintln!("bug: proven inequality failed on instance {index}: {record}");
                        return Ok(EXIT_PROVEN_FAILURE);
                    }
                    if record["subadditive"] == json!(false) {
                        open_violations += 1;
                    }
                    writeln!(out, "{record}")
                        .context("writing ledger")
                        .map_err(|e| Failure { code: EXIT_ARGS, error: e })?;
                    written += 1;
                }
                Err(msg) => eprintln!("skipping instance {index}: {msg}"),
            }
        }
        out.flush().ok();
        eprintln!("{written} instances, {open_violations} subadditivity violations, 0 proven failures");
        Ok(0)
    }

    fn verify_paper(&self, dir: Option<&Path>) -> CmdResult {
        let fixtures = match dir {
            Some(d) => Fixtures::from_dir(d)
                .with_context(|| format!("reading fixtures from {}", d.display()))
                .map_err(|e| Failure { code: EXIT_PARSE, error: e })?,
            None => Fixtures::default(),
        };
        let checks = verify(&fixtures);
        match self.format {
            Format::Json => print_json(&checks)?,
            Format::Text => {
                for c in &checks {
                    out!("{c}");
                }
            }
        }
        let failed = checks.iter().filter(|c| !c.ok()).count();
        if self.format == Format::Text {
            out!("{} checks, {failed} failed", checks.len());
        }
        Ok(if failed == 0 { 0 } else { EXIT_PROVEN_FAILURE })
    }

    fn dump(&self, path: &Path, kind: ComplexKind, alpha: Option<&str>) -> CmdResult {
        let ideal = read_ideal(path)?;
        let mut complex = match kind {
            ComplexKind::Taylor => taylor_complex_with_cap(&ideal, self.cap)?.over(self.field)?,
            ComplexKind::Scarf => scarf_complex(&ideal)?.over(self.field)?,
            ComplexKind::Minimal => minimalize(&taylor_complex_with_cap(&ideal, self.cap)?, self.field)?,
        };
        if let Some(a) = alpha {
            let point = parse_point(a, ideal.ring())?;
            complex = restrict_complex(&complex, &point)?;
        }
        match self.format {
            Format::Json => print_json(&complex.to_dump())?,
            Format::Text => print_complex(&complex),
        }
        Ok(0)
    }
}

fn pair_error(e: Error) -> Failure {
    match e {
        Error::NotCoveringPair => args_error("the given multidegrees do not cover the ideal"),
        other => other.into(),
    }
}

fn random_record(
    seed: u64,
    index: u64,
    params: RandomParams,
    field: FieldSpec,
    cap: usize,
) -> Result<serde_json::Value, String> {
    let ideal = random_instance(seed, index, params).map_err(|e| e.to_string())?;
    let an = Analysis::with_cap(ideal, field, cap).map_err(|e| e.to_string())?;
    let open = check_subadditivity_profile(an.shifts());
    let violations: Vec<_> = open
        .iter()
        .filter(|r| !r.holds)
        .map(|r| json!({"a": r.params["a"], "b": r.params["b"], "lhs": r.lhs, "rhs": r.rhs}))
        .collect();
    let mut proven = check_consecutive(&an);
    if an.projdim() > 0 {
        proven.push(check_top(&an).map_err(|e| e.to_string())?);
    }
    let proven_ok = proven.iter().all(|r| r.holds);
    Ok(json!({
        "seed": seed,
        "index": index,
        "n": params.n,
        "m": params.m,
        "maxexp": params.maxexp,
        "field": field.to_string(),
        "gens": an.ideal().generators(),
        "shifts": an.shifts().shifts,
        "projdim": an.projdim(),
        "subadditive": violations.is_empty(),
        "violations": violations,
        "proven_ok": proven_ok,
    }))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn print_complex(c: &FreeComplex) {
    let report = verify_complex(c);
    out!(
        "complex over {}: ranks {}, shifts {}, d^2 = 0 and homogeneous: {}",
        c.field(),
        join(&c.ranks()),
        shifts_of_complex(c),
        report.ok
    );
    let dump = c.to_dump();
    for (a, module) in dump.modules.iter().enumerate() {
        out!("F_{a}:");
        for (i, b) in module.iter().enumerate() {
            out!("  [{i}] {} {}", serde_json::to_string(&b.label).unwrap_or_default(), b.mdeg);
        }
    }
    for (i, entries) in dump.differentials.iter().enumerate() {
        out!("d_{}:", i + 1);
        for e in entries {
            out!("  ({}, {}) {} {}", e.row, e.col, e.coeff, e.mdeg);
        }
    }
}

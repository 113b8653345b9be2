//! The `perm` command line.
//!
//! Results go to stdout as one JSON object per line (or CSV, b-file or plain
//! text where `--format` asks for it); human-readable text goes to stderr.
//! Exit status: 0 on success, 1 when a verification fails, 2 on a usage or
//! input error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::basis::compute_basis;
use crate::enumeration::{catalan, count_321p1_formula, count_bruteforce, CountTable};
use crate::machines::{sort_witness, sortability_class, MachineKind};
use crate::perm::{
    classify_essential, contains, essential_positions, occurrences, parse_permutation, DeletionSearch,
    Permutation,
};
use crate::rsk::{rsk, shape};
use crate::series::{gf_231p1, gf_321p1, solve_functional_equation_231, AlgebraicGF, TruncatedSeries, DEFAULT_ORDER};
use crate::verify::{check_fixtures, parse_class_basis, run_suite, seed_fixtures, CheckOutcome, Suite};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "perm", version, about = "Permutation pattern laboratory")]
struct Cli {
    /// Worker threads for exhaustive sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also print witnesses (e.g. the sorting moves).
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Bfile,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Gf,
    Bruteforce,
    FunctionalEq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Machine {
    Stack,
    Queues2,
}

impl From<Machine> for MachineKind {
    fn from(m: Machine) -> Self {
        match m {
            Machine::Stack => MachineKind::Stack,
            Machine::Queues2 => MachineKind::TwoParallelQueues,
        }
    }
}

#[derive(Args, Debug)]
struct HostPattern {
    #[arg(long)]
    host: String,
    #[arg(long)]
    pattern: String,
}

#[derive(Args, Debug)]
struct ClassArgs {
    /// A single pattern; shorthand for a one-element basis.
    #[arg(long, conflicts_with = "basis")]
    pattern: Option<String>,
    /// Comma- or semicolon-separated patterns, e.g. `321` or `2143;3412`.
    #[arg(long)]
    basis: Option<String>,
    #[arg(long, default_value_t = 1)]
    t: usize,
}

impl ClassArgs {
    fn basis(&self) -> Result<Vec<Permutation>> {
        match (&self.pattern, &self.basis) {
            (Some(p), None) => Ok(vec![parse_permutation(p)?]).and_then(check_nonempty),
            (None, Some(b)) => parse_class_basis(b),
            _ => Err(Error::InvalidBasis),
        }
    }
}

fn check_nonempty(b: Vec<Permutation>) -> Result<Vec<Permutation>> {
    if b.iter().any(Permutation::is_empty) {
        Err(Error::InvalidBasis)
    } else {
        Ok(b)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Whether the host contains the pattern.
    Contains(HostPattern),
    /// All occurrences of the pattern in the host (1-based positions).
    Occurrences(HostPattern),
    /// Membership of the host in `Av(basis)+t`.
    Member {
        #[arg(long)]
        host: String,
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Essential entries of a member of `Av(231)+1` and their kinds.
    Essential {
        #[arg(long)]
        host: String,
    },
    /// Robinson–Schensted tableaux and shape.
    Rsk {
        #[arg(long)]
        host: String,
    },
    /// Counting sequence of `Av(basis)+t`.
    Count {
        #[command(flatten)]
        class: ClassArgs,
        /// A single length.
        #[arg(long, conflicts_with = "nmax")]
        n: Option<usize>,
        /// Lengths `0..=nmax`.
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Coefficients of a generating function.
    Series {
        #[command(flatten)]
        class: ClassArgs,
        /// An explicit `(A; B; D)` meaning `(A + B sqrt(1-4x)) / D`.
        #[arg(long, conflicts_with_all = ["pattern", "basis"])]
        gf: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Method::Gf)]
        method: Method,
    },
    /// Basis of `Av(basis)+t` among permutations of bounded length.
    Basis {
        #[command(flatten)]
        class: ClassArgs,
        /// Longest candidate examined (default 9 for `{231}`, `t = 1`; otherwise 7).
        #[arg(long, alias = "max-len")]
        n: Option<usize>,
    },
    /// Sortability by a machine with one-time-use buffers.
    Sort {
        /// A single permutation; without it, count the sortable class at `--n`.
        #[arg(long)]
        host: Option<String>,
        #[arg(long, value_enum, default_value_t = Machine::Stack)]
        machine: Machine,
        #[arg(long, default_value_t = 0)]
        buffers: usize,
        #[arg(long, required_unless_present = "host")]
        n: Option<usize>,
    },
    /// Run the invariant suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        /// Write regression fixtures into this directory, then check them.
        #[arg(long)]
        seed_fixtures: Option<PathBuf>,
        /// Check the fixtures found in this directory.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

struct Io<'a> {
    out: &'a mut (dyn Write + Send),
    err: &'a mut (dyn Write + Send),
    format: Format,
    verbose: bool,
}

impl Io<'_> {
    fn json(&mut self, v: Value) {
        let _ = writeln!(self.out, "{v}");
    }

    fn raw(&mut self, s: &str) {
        let _ = write!(self.out, "{s}");
    }

    fn say(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.err, "{}", s.as_ref());
    }

    fn json_only(&self, what: &str) -> std::result::Result<(), String> {
        if self.format == Format::Json {
            Ok(())
        } else {
            Err(format!("{what} only supports --format json"))
        }
    }
}

enum Failure {
    Verify,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure::Usage(e)
    }
}

/// Runs the command line `args` (program name first), writing to the
/// process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let (mut out, mut err) = (std::io::stdout(), std::io::stderr());
    run_with(args, &mut out, &mut err)
}

/// Like [`run`], with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let mut io = Io { out, err, format: cli.format, verbose: cli.verbose };
    let result = match cli.jobs {
        Some(0) => Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command, &mut io)),
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        None => dispatch(cli.command, &mut io),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Verify) => EXIT_VERIFY_FAILED,
        Err(Failure::Usage(msg)) => {
            io.say(format!("error: {msg}"));
            io.json(json!({ "error": msg }));
            EXIT_USAGE
        }
    }
}

fn class_id(basis: &[Permutation], t: usize) -> String {
    let names: Vec<String> = basis.iter().map(|b| b.compact().unwrap_or_else(|| b.to_string())).collect();
    if t == 0 {
        format!("Av({})", names.join(","))
    } else {
        format!("Av({})+{t}", names.join(","))
    }
}

fn dispatch(cmd: Command, io: &mut Io) -> std::result::Result<(), Failure> {
    match cmd {
        Command::Contains(hp) => {
            io.json_only("contains")?;
            let (h, p) = (parse_permutation(&hp.host)?, parse_permutation(&hp.pattern)?);
            let c = contains(&h, &p);
            io.say(format!("{h} {} {p}", if c { "contains" } else { "avoids" }));
            io.json(json!({ "host": h, "pattern": p, "contains": c }));
        }
        Command::Occurrences(hp) => {
            io.json_only("occurrences")?;
            let (h, p) = (parse_permutation(&hp.host)?, parse_permutation(&hp.pattern)?);
            let occ = occurrences(&h, &p);
            io.say(format!("{} occurrence(s) of {p} in {h}", occ.len()));
            io.json(json!({ "host": h, "pattern": p, "count": occ.len(), "occurrences": occ }));
        }
        Command::Member { host, class } => {
            io.json_only("member")?;
            let h = parse_permutation(&host)?;
            let basis = class.basis()?;
            let mut search = DeletionSearch::new(&basis);
            let distance = search.distance(&h, class.t);
            let member = distance.is_some();
            let id = class_id(&basis, class.t);
            io.say(format!("{h} {} {id}", if member { "is in" } else { "is not in" }));
            io.json(json!({ "host": h, "class": id, "t": class.t, "member": member, "deletions_needed": distance }));
        }
        Command::Essential { host } => {
            io.json_only("essential")?;
            let h = parse_permutation(&host)?;
            let positions = essential_positions(&h);
            let kinds: Vec<Value> = positions
                .iter()
                .map(|&e| match classify_essential(&h, e) {
                    Ok(k) => json!({ "position": e, "value": h.at(e).expect("in range"), "class": k }),
                    Err(err) => json!({ "position": e, "error": err.to_string() }),
                })
                .collect();
            io.say(format!("essential positions of {h}: {positions:?}"));
            io.json(json!({ "host": h, "essential_positions": positions, "entries": kinds }));
        }
        Command::Rsk { host } => {
            io.json_only("rsk")?;
            let h = parse_permutation(&host)?;
            let pair = rsk(&h);
            io.say(format!("shape {}\nP:\n{}\nQ:\n{}", shape(&h), pair.p, pair.q));
            io.json(json!({ "host": h, "shape": shape(&h), "p": pair.p.rows(), "q": pair.q.rows() }));
        }
        Command::Count { class, n, nmax, method } => count(io, &class, n, nmax, method)?,
        Command::Series { class, gf, order, method } => series(io, &class, gf.as_deref(), order, method)?,
        Command::Basis { class, n } => {
            let basis = class.basis()?;
            let default_len = if basis == [crate::perm::perm("231")] && class.t == 1 { 9 } else { 7 };
            let max_len = n.unwrap_or(default_len);
            let r = compute_basis(&basis, class.t, max_len)?;
            io.say(format!(
                "{} basis elements of {} up to length {max_len} (bound {}, complete: {})",
                r.elements.len(),
                class_id(&basis, class.t),
                r.bound,
                r.complete_under_bound
            ));
            match io.format {
                Format::Json => {
                    let mut v = r.to_json();
                    v["class"] = json!(class_id(&basis, class.t));
                    io.json(v)
                }
                Format::Text => io.raw(&r.to_lines()),
                _ => return Err("basis supports --format json or text".to_string().into()),
            }
        }
        Command::Sort { host, machine, buffers, n } => {
            io.json_only("sort")?;
            let kind = MachineKind::from(machine);
            match host {
                Some(h) => {
                    let h = parse_permutation(&h)?;
                    let w = sort_witness(&h, kind, buffers)?;
                    io.say(format!("{h} {} by {kind} with {buffers} buffer(s)", if w.is_some() { "is sortable" } else { "is not sortable" }));
                    let mut v = json!({ "host": h, "machine": kind.to_string(), "buffers": buffers, "sortable": w.is_some() });
                    if io.verbose {
                        if let Some(moves) = &w {
                            io.say(moves.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" "));
                        }
                        v["moves"] = json!(w);
                    }
                    io.json(v);
                }
                None => {
                    let n = n.expect("required by clap");
                    let c = sortability_class(kind, buffers, n)?;
                    io.say(format!("{c} permutations of length {n} are sortable by {kind} with {buffers} buffer(s)"));
                    io.json(json!({ "machine": kind.to_string(), "buffers": buffers, "n": n, "count": c }));
                }
            }
        }
        Command::Verify { suite, nmax, seed_fixtures: seed, fixtures } => {
            io.json_only("verify")?;
            let mut outcomes = run_suite(suite, nmax);
            let dir = seed.as_ref().or(fixtures.as_ref());
            if let Some(d) = &seed {
                let files = seed_fixtures(d).map_err(|e| e.to_string())?;
                io.say(format!("wrote {} into {}", files.join(", "), d.display()));
            }
            if let Some(d) = dir {
                outcomes.extend(check_fixtures(d)?);
            }
            report(io, &outcomes)?;
        }
    }
    Ok(())
}

fn report(io: &mut Io, outcomes: &[CheckOutcome]) -> std::result::Result<(), Failure> {
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    for o in outcomes {
        let status = match (o.passed, o.known_failure) {
            (true, _) => "PASS",
            (false, true) => "KNOWN-FAIL",
            (false, false) => "FAIL",
        };
        io.say(format!("{status:<10} {:<12} {:<width$}  {}", o.suite.to_string(), o.name, o.detail));
        io.json(serde_json::to_value(o).expect("plain struct"));
    }
    let failed = outcomes.iter().filter(|o| !o.passed && !o.known_failure).count();
    let known = outcomes.iter().filter(|o| o.known_failure).count();
    io.say(format!("{} checks, {failed} failed, {known} known failure(s)", outcomes.len()));
    if failed > 0 {
        Err(Failure::Verify)
    } else {
        Ok(())
    }
}

fn is_single(basis: &[Permutation], s: &str) -> bool {
    basis.len() == 1 && basis[0] == crate::perm::perm(s)
}

/// Closed-form generating function for the class, if one is built in.
fn known_gf(basis: &[Permutation], t: usize, order: usize) -> Option<TruncatedSeries> {
    match t {
        0 if basis.len() == 1 && basis[0].len() == 3 => Some(crate::series::catalan_gf(order)),
        1 if is_single(basis, "321") => Some(gf_321p1().expand(order).expect("well formed")),
        1 if is_single(basis, "231") => Some(gf_231p1().expand(order).expect("well formed")),
        _ => None,
    }
}

fn series_counts(s: &TruncatedSeries) -> Result<Vec<BigUint>> {
    s.integer_coeffs()?
        .into_iter()
        .map(|c| c.to_biguint().ok_or_else(|| Error::NotIntegral(c.to_string())))
        .collect()
}

fn count(io: &mut Io, class: &ClassArgs, n: Option<usize>, nmax: usize, method: Option<Method>) -> std::result::Result<(), Failure> {
    let basis = class.basis()?;
    let t = class.t;
    let hi = n.unwrap_or(nmax);
    let lengths: Vec<usize> = match n {
        Some(n) => vec![n],
        None => (0..=nmax).collect(),
    };
    let formula_ok = (t == 0 && basis.len() == 1 && basis[0].len() == 3) || (t == 1 && is_single(&basis, "321"));
    let method = method.unwrap_or(if formula_ok {
        Method::Formula
    } else if known_gf(&basis, t, 0).is_some() {
        Method::Gf
    } else {
        Method::Bruteforce
    });
    let full: Vec<BigUint> = match method {
        Method::Formula if formula_ok => {
            lengths.iter().map(|&k| if t == 0 { catalan(k) } else { count_321p1_formula(k) }).collect()
        }
        Method::Gf => match known_gf(&basis, t, hi) {
            Some(s) => {
                let all = series_counts(&s)?;
                lengths.iter().map(|&k| all[k].clone()).collect()
            }
            None => return Err(format!("no generating function is built in for {}", class_id(&basis, t)).into()),
        },
        Method::FunctionalEq if t == 1 && is_single(&basis, "231") => {
            let all = series_counts(&solve_functional_equation_231(hi))?;
            lengths.iter().map(|&k| all[k].clone()).collect()
        }
        Method::Bruteforce => {
            lengths.iter().map(|&k| count_bruteforce(k, &basis, t).map(BigUint::from)).collect::<Result<_>>()?
        }
        _ => return Err(format!("method {method:?} is not available for {}", class_id(&basis, t)).into()),
    };
    let id = class_id(&basis, t);
    let method_name = method.to_possible_value().expect("no skipped variants").get_name().to_string();
    if let Some(n) = n {
        let c = &full[0];
        io.say(format!("|{id}| at n = {n}: {c} ({method_name})"));
        match io.format {
            Format::Json => io.json(json!({ "class": id, "t": t, "n": n, "count": num(c), "method": method_name })),
            Format::Text => io.raw(&format!("{c}\n")),
            Format::Csv => io.raw(&format!("n,count\n{n},{c}\n")),
            Format::Bfile => io.raw(&format!("{n} {c}\n")),
        }
        return Ok(());
    }
    let table = CountTable::new(id.clone(), t, full);
    io.say(format!("{id} for n = 0..={nmax} ({method_name})"));
    match io.format {
        Format::Json => {
            let mut v = serde_json::to_value(&table).expect("plain struct");
            v["method"] = json!(method_name);
            io.json(v)
        }
        Format::Csv => io.raw(&table.to_csv()),
        Format::Bfile => io.raw(&table.to_bfile()),
        Format::Text => io.raw(&table.counts.iter().map(|c| format!("{c}\n")).collect::<String>()),
    }
    Ok(())
}

/// JSON number when it fits in `u64`, otherwise a decimal string.
fn num(c: &BigUint) -> Value {
    use num_traits::ToPrimitive;
    c.to_u64().map_or_else(|| json!(c.to_string()), |x| json!(x))
}

fn series(io: &mut Io, class: &ClassArgs, gf: Option<&str>, order: usize, method: Method) -> std::result::Result<(), Failure> {
    let (label, s) = match gf {
        Some(text) => {
            let g = AlgebraicGF::parse(text)?;
            (g.to_text(), g.expand(order)?)
        }
        None => {
            let basis = class.basis()?;
            let id = class_id(&basis, class.t);
            let s = match method {
                Method::Gf => known_gf(&basis, class.t, order),
                Method::FunctionalEq if class.t == 1 && is_single(&basis, "231") => Some(solve_functional_equation_231(order)),
                _ => None,
            };
            (id.clone(), s.ok_or_else(|| format!("method {method:?} gives no series for {id}"))?)
        }
    };
    io.say(format!("{label} to order {order}"));
    match io.format {
        Format::Json => {
            let coeffs: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
            let ints: Option<Vec<Value>> = s
                .coeffs()
                .iter()
                .map(|c| c.is_integer().then(|| c.to_integer()).map(|i| i.to_biguint().map_or_else(|| json!(i.to_string()), |u| num(&u))))
                .collect();
            io.json(json!({ "series": label, "order": order, "coefficients": ints.map_or(json!(coeffs), Value::from) }))
        }
        Format::Csv => io.raw(&s.to_csv()),
        Format::Bfile => io.raw(&s.coeffs().iter().enumerate().map(|(n, c)| format!("{n} {c}\n")).collect::<String>()),
        Format::Text => io.raw(&format!("{s}\n")),
    }
    Ok(())
}

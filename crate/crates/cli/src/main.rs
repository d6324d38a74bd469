//! `medial`: count, enumerate, export and verify medial quasigroups.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use medial::enumerate::{
    closed_form_cyclic, closed_form_order_p2, closed_form_zp2, count_composite, enumerate, EnumerationReport,
};
use medial::fp::Prime;
use medial::group::GroupSpec;
use medial::interpolate::interpolate_count_polynomial;
use medial::oracle::{crosscheck, CLASSIFY_CAP};
use medial::quasigroup::{count_idempotents, is_latin, is_medial, parse_tables};
use medial::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_UNKNOWN_COUNT: u8 = 3;

/// Largest cyclic order `count` will also enumerate.
const CYCLIC_ENUMERATION_CAP: usize = 1024;
/// Largest prime `count --group zp2` will also enumerate.
const ZP2_ENUMERATION_CAP: u64 = 13;

#[derive(Parser)]
#[command(name = "medial", version, about = "Medial quasigroups of prime-power order")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form count, checked against enumeration when feasible.
    Count(CountArgs),
    /// Stream the isomorphism-class representatives.
    Enumerate(EnumerateArgs),
    /// Write one Cayley table file per representative.
    Export(ExportArgs),
    /// Check tables for the Latin and medial properties.
    Verify(VerifyArgs),
    /// Compare the enumeration with brute-force classification.
    Crosscheck(CrosscheckArgs),
    /// Interpolate a count sequence over the first primes.
    Interpolate(InterpolateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum CountGroup {
    Zp2,
    Cyclic,
    OrderP2,
    N,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumGroup {
    Zp2,
    Cyclic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Series {
    Zp2,
    OrderP2,
    Cyclic,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long, value_enum)]
    group: CountGroup,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long, value_enum)]
    group: EnumGroup,
    #[arg(long)]
    p: u64,
    /// Exponent, for cyclic groups.
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Include the Cayley table of each representative.
    #[arg(long)]
    tables: bool,
    #[arg(long, value_enum, default_value = "jsonl")]
    format: Format,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Args)]
struct CrosscheckArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct InterpolateArgs {
    #[arg(long, value_enum)]
    series: Series,
    /// Exponent, for the cyclic series.
    #[arg(long)]
    k: Option<u32>,
    /// Number of leading primes to sample.
    #[arg(long)]
    primes: usize,
}

/// A failed run: the exit code plus the message for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownPrimePowerCount { .. } => EXIT_UNKNOWN_COUNT,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 || rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().is_err() {
            eprintln!("error: invalid --jobs value");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let result = match cli.command {
        Command::Count(a) => run_count(&a),
        Command::Enumerate(a) => run_enumerate(&a),
        Command::Export(a) => run_export(&a),
        Command::Verify(a) => run_verify(&a),
        Command::Crosscheck(a) => run_crosscheck(&a),
        Command::Interpolate(a) => run_interpolate(&a),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            // a mismatch verdict still prints its report on stdout
            if f.code == EXIT_MISMATCH {
                print!("{}", f.message);
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn prime(p: Option<u64>) -> Result<Prime, Failure> {
    let p = p.ok_or_else(|| Failure::usage("--p is required"))?;
    Ok(Prime::new(p)?)
}

fn group_spec(a: &GroupArgs) -> Result<GroupSpec, Failure> {
    let p = prime(Some(a.p))?;
    match a.group {
        EnumGroup::Zp2 => Ok(GroupSpec::rank2(p)),
        EnumGroup::Cyclic => {
            let k = a.k.ok_or_else(|| Failure::usage("--k is required for cyclic groups"))?;
            Ok(GroupSpec::cyclic(p, k)?)
        }
    }
}

fn verdict(out: String, closed: i128, enumerated: Option<usize>) -> Outcome {
    let mut out = out;
    let Some(e) = enumerated else {
        return Ok(out);
    };
    writeln!(out, "enumerated {e}").unwrap();
    if closed == e as i128 {
        out.push_str("match\n");
        Ok(out)
    } else {
        out.push_str("MISMATCH\n");
        Err(Failure { code: EXIT_MISMATCH, message: out })
    }
}

fn run_count(a: &CountArgs) -> Outcome {
    match a.group {
        CountGroup::Zp2 => {
            let p = prime(a.p)?;
            let closed = closed_form_zp2(p);
            let enumerated = (p.get() <= ZP2_ENUMERATION_CAP).then(|| enumerate(&GroupSpec::rank2(p)).total);
            verdict(format!("closed-form {closed}\n"), closed, enumerated)
        }
        CountGroup::Cyclic => {
            let p = prime(a.p)?;
            let k = a.k.ok_or_else(|| Failure::usage("--k is required for cyclic groups"))?;
            let g = GroupSpec::cyclic(p, k)?;
            let closed = closed_form_cyclic(p, k)?;
            let enumerated = (g.order() <= CYCLIC_ENUMERATION_CAP).then(|| enumerate(&g).total);
            verdict(format!("closed-form {closed}\n"), closed, enumerated)
        }
        CountGroup::OrderP2 => {
            let p = prime(a.p)?;
            let closed = closed_form_order_p2(p);
            let mut out = format!("closed-form {closed}\n");
            let enumerated = if p.get() <= ZP2_ENUMERATION_CAP {
                let cyclic = enumerate(&GroupSpec::cyclic(p, 2)?).total;
                let rank2 = enumerate(&GroupSpec::rank2(p)).total;
                writeln!(out, "cyclic {cyclic}\nzp2 {rank2}").unwrap();
                Some(cyclic + rank2)
            } else {
                None
            };
            verdict(out, closed, enumerated)
        }
        CountGroup::N => {
            let n = a.n.ok_or_else(|| Failure::usage("--n is required"))?;
            Ok(format!("closed-form {}\n", count_composite(n)?))
        }
    }
}

fn enumeration(a: &GroupArgs) -> Result<(GroupSpec, EnumerationReport), Failure> {
    let g = group_spec(a)?;
    Ok((g, enumerate(&g)))
}

fn run_enumerate(a: &EnumerateArgs) -> Outcome {
    let (g, report) = enumeration(&a.group)?;
    let mut out = String::new();
    for (i, t) in report.triples.iter().enumerate() {
        let table = a.tables.then(|| t.table(g));
        match a.format {
            Format::Jsonl => {
                writeln!(out, "{}", t.to_json(g, table.as_ref())).unwrap();
            }
            Format::Text => {
                writeln!(out, "{i} {} phi={} psi={} c={}", t.case_tag, t.phi, t.psi, t.c).unwrap();
                if let Some(table) = table {
                    out.push_str(&table.to_text());
                }
            }
        }
    }
    if let Format::Text = a.format {
        for (tag, n) in &report.tallies {
            writeln!(out, "tally {tag} {n}").unwrap();
        }
        writeln!(out, "total {}", report.total).unwrap();
    }
    Ok(out)
}

fn run_export(a: &ExportArgs) -> Outcome {
    let (g, report) = enumeration(&a.group)?;
    fs::create_dir_all(&a.out).map_err(|e| Failure::usage(format!("{}: {e}", a.out.display())))?;
    for (i, t) in report.triples.iter().enumerate() {
        let path = a.out.join(format!("{i:05}_{}.txt", t.case_tag));
        fs::write(&path, t.table(g).to_text()).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    Ok(format!("wrote {} tables to {}\n", report.total, a.out.display()))
}

fn run_verify(a: &VerifyArgs) -> Outcome {
    let text = fs::read_to_string(&a.input).map_err(|e| Failure::usage(format!("{}: {e}", a.input.display())))?;
    let tables = parse_tables(&text)?;
    let mut out = String::new();
    let yes = |b: bool| if b { "yes" } else { "no" };
    for (i, t) in tables.iter().enumerate() {
        let latin = is_latin(t);
        writeln!(
            out,
            "table {i}: order {} latin {} medial {} idempotents {}",
            t.order(),
            yes(latin),
            yes(is_medial(t)),
            count_idempotents(t)
        )
        .unwrap();
    }
    writeln!(out, "checked {} tables", tables.len()).unwrap();
    Ok(out)
}

fn run_crosscheck(a: &CrosscheckArgs) -> Outcome {
    let g = group_spec(&a.group)?;
    if g.order() > CLASSIFY_CAP {
        return Err(Failure::usage(format!("order {} exceeds the oracle cap {CLASSIFY_CAP}", g.order())));
    }
    let r = crosscheck(&g)?;
    let out = match a.format {
        Format::Jsonl => format!("{}\n", r.to_json()),
        Format::Text => {
            let sizes: Vec<String> = r.class_sizes.iter().map(|s| s.to_string()).collect();
            format!(
                "group {}\naffine forms {}\nclass sizes {}\nbijection {}\n{} {} {} {}\n",
                g,
                r.forms,
                sizes.join(" "),
                if r.is_bijective() { "yes" } else { "no" },
                r.classes,
                if r.classes == r.enumerated { "=" } else { "!=" },
                r.enumerated,
                if r.agrees() { "OK" } else { "MISMATCH" },
            )
        }
    };
    if r.agrees() {
        Ok(out)
    } else {
        Err(Failure { code: EXIT_MISMATCH, message: out })
    }
}

fn run_interpolate(a: &InterpolateArgs) -> Outcome {
    if a.primes == 0 {
        return Err(Failure::usage("--primes must be positive"));
    }
    let k = match a.series {
        Series::Cyclic => Some(a.k.ok_or_else(|| Failure::usage("--k is required for the cyclic series"))?),
        _ => None,
    };
    let mut points = Vec::new();
    let mut out = String::new();
    for p in Prime::first(a.primes) {
        let count = match a.series {
            Series::Zp2 => enumerate(&GroupSpec::rank2(p)).total,
            Series::OrderP2 => enumerate(&GroupSpec::cyclic(p, 2)?).total + enumerate(&GroupSpec::rank2(p)).total,
            Series::Cyclic => enumerate(&GroupSpec::cyclic(p, k.unwrap())?).total,
        };
        writeln!(out, "p={p} count={count}").unwrap();
        points.push((p.get() as i64, count as i64));
    }
    let poly = interpolate_count_polynomial(&points)?;
    writeln!(out, "f(x) = {poly}").unwrap();
    writeln!(out, "integer coefficients: {}", if poly.is_integral() { "yes" } else { "no" }).unwrap();
    Ok(out)
}

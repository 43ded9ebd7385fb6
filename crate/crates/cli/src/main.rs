//! `sgsize`: validate Cayley tables, classify sets under the size notions,
//! compute whole families, run the claim-checking suite, enumerate
//! semigroups, search the open converse question, and analyze window sets.
//!
//! All output is JSON (JSONL for streams) with stable key order. Exit
//! codes: 0 success / all pass, 1 failed validation or failed claims,
//! 2 malformed input or flags.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use sgsize_core::natwin::{self, WindowSet};
use sgsize_core::notions;
use sgsize_core::semigroup::Dedupe;
use sgsize_core::setfam::{Family, Filter, Stack, SubsetMask};
use sgsize_core::theorems::search::search_question_4_6;
use sgsize_core::theorems::suite::{run_suite, SuiteConfig};
use sgsize_core::theorems::{parse_claim_list, ClaimId};
use sgsize_core::CayleyTable;

#[derive(Parser)]
#[command(
    name = "sgsize",
    version,
    about = "finite semigroup size-notion toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a Cayley table file for well-formedness and associativity.
    Validate { table: PathBuf },
    /// Decide one size notion for one subset of a semigroup.
    Classify {
        table: PathBuf,
        /// Comma-separated 0-based element indices (empty for the empty set).
        #[arg(long, allow_hyphen_values = false, default_value = "")]
        set: String,
        #[arg(long, value_enum)]
        notion: Notion,
        /// Family file (JSON) for the left parameter of relative notions.
        #[arg(long)]
        filter_f: Option<PathBuf>,
        /// Family file (JSON) for the right parameter of relative notions.
        #[arg(long)]
        filter_g: Option<PathBuf>,
    },
    /// Compute the syndetic, thick, and piecewise-syndetic families.
    Families {
        table: PathBuf,
        /// Left stack for the relative families (requires --g too).
        #[arg(long)]
        f: Option<PathBuf>,
        /// Right stack for the relative families.
        #[arg(long)]
        g: Option<PathBuf>,
    },
    /// Run the claim-checking suite over all tables up to an order.
    Check {
        #[arg(long)]
        max_order: u8,
        /// Claim ids or group prefixes, comma separated, or "all".
        #[arg(long, default_value = "all")]
        claims: String,
        #[arg(long, value_enum, default_value = "none")]
        dedupe: DedupeArg,
        /// Worker threads (default: SGSIZE_JOBS or all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// JSONL stream of per-universe reports.
        #[arg(long)]
        out: PathBuf,
    },
    /// Stream every semigroup table of one order as JSONL.
    Enumerate {
        #[arg(long)]
        order: u8,
        #[arg(long, value_enum, default_value = "none")]
        dedupe: DedupeArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Search for a counterexample to the converse of the
    /// ultrafilter-witness corollary over small semigroups.
    SearchQ46 {
        #[arg(long)]
        max_order: u8,
        /// Stop after this many (table, filter, set) triples.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Window-set analyses over subsets of {1..N}.
    Natwin {
        /// Input window set (run-length text unless --format bin).
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "rle")]
        format: SetFormat,
        #[arg(long, value_enum)]
        op: NatwinOp,
        /// Progression length for --op ap.
        #[arg(long)]
        k: Option<u64>,
        /// Gap bound for --op ps-witness.
        #[arg(long)]
        b: Option<u64>,
        /// Interval length for --op ps-witness.
        #[arg(long = "L")]
        l: Option<u64>,
        /// Piece bound for --op embed / example-3-4.
        #[arg(long)]
        m: Option<u64>,
        /// Second window set for --op embed.
        #[arg(long)]
        other: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Notion {
    Syndetic,
    Thick,
    Ps,
    RelSyn,
    RelThick,
    RelPs,
    SzzPs,
}

#[derive(Clone, Copy, ValueEnum)]
enum DedupeArg {
    None,
    Iso,
}

impl From<DedupeArg> for Dedupe {
    fn from(d: DedupeArg) -> Dedupe {
        match d {
            DedupeArg::None => Dedupe::None,
            DedupeArg::Iso => Dedupe::Iso,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SetFormat {
    Rle,
    Bin,
}

#[derive(Clone, Copy, ValueEnum)]
enum NatwinOp {
    GapBound,
    Runs,
    PsWitness,
    Ap,
    Embed,
    #[value(name = "example-3-4")]
    Example34,
}

struct Failure {
    message: String,
    code: u8,
}

fn bad_input(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        code: 2,
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("sgsize: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Validate { table } => cmd_validate(&table),
        Command::Classify {
            table,
            set,
            notion,
            filter_f,
            filter_g,
        } => cmd_classify(
            &table,
            &set,
            notion,
            filter_f.as_deref(),
            filter_g.as_deref(),
        ),
        Command::Families { table, f, g } => cmd_families(&table, f.as_deref(), g.as_deref()),
        Command::Check {
            max_order,
            claims,
            dedupe,
            jobs,
            out,
        } => cmd_check(max_order, &claims, dedupe.into(), jobs, &out),
        Command::Enumerate { order, dedupe, out } => cmd_enumerate(order, dedupe.into(), &out),
        Command::SearchQ46 {
            max_order,
            budget,
            out,
        } => cmd_search(max_order, budget, &out),
        Command::Natwin {
            input,
            format,
            op,
            k,
            b,
            l,
            m,
            other,
        } => cmd_natwin(&input, format, op, k, b, l, m, other.as_deref()),
    }
}

fn read_to_string(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| bad_input(format!("{}: {e}", path.display())))
}

fn load_table(path: &Path) -> Result<CayleyTable, Failure> {
    let text = read_to_string(path)?;
    CayleyTable::from_text(&text).map_err(|e| bad_input(format!("{}: {e}", path.display())))
}

fn load_family(path: &Path, n: u8) -> Result<Family, Failure> {
    let text = read_to_string(path)?;
    let fam: Family =
        serde_json::from_str(&text).map_err(|e| bad_input(format!("{}: {e}", path.display())))?;
    if fam.ground_size() != n {
        return Err(bad_input(format!(
            "{}: family ground set {} does not match table order {n}",
            path.display(),
            fam.ground_size()
        )));
    }
    Ok(fam)
}

fn load_stack(path: &Path, n: u8) -> Result<Stack, Failure> {
    Stack::new(load_family(path, n)?)
        .map_err(|_| bad_input(format!("{}: family is not a stack", path.display())))
}

fn load_filter(path: &Path, n: u8) -> Result<Filter, Failure> {
    Filter::new(load_family(path, n)?)
        .map_err(|_| bad_input(format!("{}: family is not a filter", path.display())))
}

fn load_window(path: &Path, format: SetFormat) -> Result<WindowSet, Failure> {
    match format {
        SetFormat::Rle => {
            let text = read_to_string(path)?;
            natwin::from_rle_text(&text).map_err(|e| bad_input(format!("{}: {e}", path.display())))
        }
        SetFormat::Bin => {
            let bytes =
                fs::read(path).map_err(|e| bad_input(format!("{}: {e}", path.display())))?;
            natwin::from_binary(&bytes).map_err(|e| bad_input(format!("{}: {e}", path.display())))
        }
    }
}

fn parse_set(spec: &str, n: u8) -> Result<SubsetMask, Failure> {
    let mut elements = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let v: u8 = part
            .parse()
            .map_err(|e| bad_input(format!("bad element {part:?}: {e}")))?;
        elements.push(v);
    }
    SubsetMask::from_elements(&elements, n).map_err(|e| bad_input(e.to_string()))
}

fn print_json(value: &impl Serialize) {
    println!(
        "{}",
        serde_json::to_string(value).expect("serializable output")
    );
}

fn cmd_validate(path: &Path) -> CmdResult {
    let text = read_to_string(path)?;
    match CayleyTable::from_text(&text) {
        Ok(t) => {
            print_json(&json!({ "ok": true, "n": t.order() }));
            Ok(0)
        }
        Err(sgsize_core::semigroup::TableError::NotAssociative { i, j, k }) => {
            print_json(&json!({ "ok": false, "violation": { "i": i, "j": j, "k": k } }));
            Ok(1)
        }
        Err(e) => Err(bad_input(format!("{}: {e}", path.display()))),
    }
}

fn cmd_classify(
    table: &Path,
    set: &str,
    notion: Notion,
    filter_f: Option<&Path>,
    filter_g: Option<&Path>,
) -> CmdResult {
    let t = load_table(table)?;
    let n = t.order();
    let a = parse_set(set, n)?;
    let need_f = |p: Option<&Path>| {
        p.ok_or_else(|| bad_input("this notion requires --filter-f"))
            .and_then(|p| load_stack(p, n))
    };
    let need_g = |p: Option<&Path>| {
        p.ok_or_else(|| bad_input("this notion requires --filter-g"))
            .and_then(|p| load_stack(p, n))
    };
    let (name, verdict) = match notion {
        Notion::Syndetic => ("syndetic", notions::is_syndetic(&t, a)),
        Notion::Thick => ("thick", notions::is_thick(&t, a)),
        Notion::Ps => ("ps", notions::is_piecewise_syndetic(&t, a)),
        Notion::RelSyn => (
            "rel-syn",
            notions::is_rel_syndetic(&t, a, need_f(filter_f)?, need_g(filter_g)?),
        ),
        Notion::RelThick => (
            "rel-thick",
            notions::is_rel_thick(&t, a, need_f(filter_f)?, need_g(filter_g)?),
        ),
        Notion::RelPs => {
            let fam = notions::rel_ps_family(&t, need_f(filter_f)?, need_g(filter_g)?)
                .map_err(|e| bad_input(e.to_string()))?;
            ("rel-ps", fam.contains(a))
        }
        Notion::SzzPs => {
            let f = filter_f
                .ok_or_else(|| bad_input("szz-ps requires --filter-f"))
                .and_then(|p| load_filter(p, n))?;
            let v = notions::is_szz_piecewise_syndetic(&t, a, f)
                .map_err(|e| bad_input(e.to_string()))?;
            ("szz-ps", v)
        }
    };
    print_json(&json!({
        "n": n,
        "set": a.element_vec(),
        "notion": name,
        "verdict": verdict,
    }));
    Ok(0)
}

fn cmd_families(table: &Path, f: Option<&Path>, g: Option<&Path>) -> CmdResult {
    let t = load_table(table)?;
    let n = t.order();
    let (relative, syn, thick, ps) = match (f, g) {
        (None, None) => {
            let sf = notions::size_families(&t).map_err(|e| bad_input(e.to_string()))?;
            (false, sf.syn, sf.thick, sf.ps)
        }
        (Some(f), Some(g)) => {
            let fs = load_stack(f, n)?;
            let gs = load_stack(g, n)?;
            let syn = notions::rel_syn_family(&t, fs, gs).map_err(|e| bad_input(e.to_string()))?;
            let thick =
                notions::rel_thick_family(&t, fs, gs).map_err(|e| bad_input(e.to_string()))?;
            let ps = notions::rel_ps_family(&t, fs, gs).map_err(|e| bad_input(e.to_string()))?;
            (true, syn, thick, ps)
        }
        _ => return Err(bad_input("relative families need both --f and --g")),
    };
    print_json(&json!({
        "n": n,
        "relative": relative,
        "syn": syn.member_indices(),
        "thick": thick.member_indices(),
        "ps": ps.member_indices(),
    }));
    Ok(0)
}

fn jobs_default(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| {
        std::env::var("SGSIZE_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
}

fn cmd_check(
    max_order: u8,
    claims: &str,
    dedupe: Dedupe,
    jobs: Option<usize>,
    out: &Path,
) -> CmdResult {
    let claims: Vec<ClaimId> = parse_claim_list(claims).map_err(|e| bad_input(e.to_string()))?;
    let config = SuiteConfig {
        max_order,
        dedupe,
        claims,
        jobs: jobs_default(jobs),
    };
    let report = run_suite(&config).map_err(|e| bad_input(e.to_string()))?;

    let file = fs::File::create(out).map_err(|e| bad_input(format!("{}: {e}", out.display())))?;
    let mut w = BufWriter::new(file);
    for r in &report.reports {
        serde_json::to_writer(&mut w, r).expect("serializable report");
        w.write_all(b"\n").expect("writable output");
    }
    w.flush().expect("flushable output");

    print_json(&json!({
        "summary": report.summary,
        "meta": {
            "elapsed_us": report.elapsed.as_micros() as u64,
            "jobs": config.jobs,
            "out": out.display().to_string(),
        },
    }));
    Ok(if report.summary.all_pass { 0 } else { 1 })
}

fn cmd_enumerate(order: u8, dedupe: Dedupe, out: &Path) -> CmdResult {
    let tables = sgsize_core::semigroup::enumerate_semigroups(order, dedupe)
        .map_err(|e| bad_input(e.to_string()))?;
    let file = fs::File::create(out).map_err(|e| bad_input(format!("{}: {e}", out.display())))?;
    let mut w = BufWriter::new(file);
    for t in &tables {
        serde_json::to_writer(&mut w, t).expect("serializable table");
        w.write_all(b"\n").expect("writable output");
    }
    w.flush().expect("flushable output");
    print_json(&json!({ "order": order, "count": tables.len() }));
    Ok(0)
}

fn cmd_search(max_order: u8, budget: Option<u64>, out: &Path) -> CmdResult {
    let report = search_question_4_6(max_order, budget.unwrap_or(u64::MAX))
        .map_err(|e| bad_input(e.to_string()))?;
    let body = json!({
        "report": report,
        "meta": { "elapsed_us": report.elapsed.as_micros() as u64 },
    });
    fs::write(
        out,
        serde_json::to_string_pretty(&body).expect("serializable report"),
    )
    .map_err(|e| bad_input(format!("{}: {e}", out.display())))?;
    print_json(&report);
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_natwin(
    input: &Path,
    format: SetFormat,
    op: NatwinOp,
    k: Option<u64>,
    b: Option<u64>,
    l: Option<u64>,
    m: Option<u64>,
    other: Option<&Path>,
) -> CmdResult {
    let w = load_window(input, format)?;
    let need = |v: Option<u64>, flag: &str| v.ok_or_else(|| bad_input(format!("missing --{flag}")));
    match op {
        NatwinOp::GapBound => {
            let r = w.gap_bound_report();
            print_json(&json!({
                "op": "gap_bound",
                "horizon": w.horizon(),
                "bound": r.bound,
                "last_start_checked": r.last_start_checked,
                "tail_gap": r.tail_gap,
                "scope": format!("within [1, {}]", w.horizon()),
            }));
        }
        NatwinOp::Runs => {
            print_json(&json!({
                "op": "runs",
                "horizon": w.horizon(),
                "max_run": w.max_block_run(),
            }));
        }
        NatwinOp::PsWitness => {
            let (b, l) = (need(b, "b")?, need(l, "L")?);
            let found = w.ps_witness(b, l);
            print_json(&json!({
                "op": "ps_witness",
                "b": b,
                "L": l,
                "found": found.is_some(),
                "start": found.map(|x| x.0),
                "end": found.map(|x| x.1),
            }));
        }
        NatwinOp::Ap => {
            let k = need(k, "k")?;
            if k < 1 {
                return Err(bad_input("--k must be at least 1"));
            }
            let found = w.find_ap(k);
            print_json(&json!({
                "a": found.map(|x| x.0),
                "d": found.map(|x| x.1),
            }));
        }
        NatwinOp::Embed => {
            let m = need(m, "m")?;
            let other = other.ok_or_else(|| bad_input("embed requires --other"))?;
            let target = load_window(other, format)?;
            let embeddable =
                natwin::finite_embeddable(&w, &target, m).map_err(|e| bad_input(e.to_string()))?;
            print_json(&json!({ "op": "embed", "m": m, "embeddable": embeddable }));
        }
        NatwinOp::Example34 => {
            let m = need(m, "m")?;
            let report =
                natwin::example_3_4_probe(w.horizon(), m).map_err(|e| bad_input(e.to_string()))?;
            print_json(&json!({
                "op": "example_3_4",
                "report": report,
                "passes": report.passes(),
            }));
        }
    }
    Ok(0)
}

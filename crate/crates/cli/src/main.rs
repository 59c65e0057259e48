use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use betti_core::decompose::default_iteration_limit;
use betti_core::*;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

mod fixtures;

const EXIT_VIOLATION: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "betti",
    version,
    about = "Exact betti tables, pure diagrams and Boij-Söderberg decomposition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Out {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum FieldChoice {
    One(FieldSpec),
    Both,
}

fn parse_field_choice(s: &str) -> Result<FieldChoice, String> {
    if s.eq_ignore_ascii_case("both") {
        return Ok(FieldChoice::Both);
    }
    FieldSpec::parse(s).map(FieldChoice::One).ok_or_else(|| {
        format!("expected `rational`, `gf P` with P a prime below 2^31, or `both`; got {s:?}")
    })
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (d, m) = s.split_once(',').ok_or("expected D,M")?;
    let d: usize = d.trim().parse().map_err(|_| format!("bad D in {s:?}"))?;
    let m: usize = m.trim().parse().map_err(|_| format!("bad M in {s:?}"))?;
    if d < 1 {
        return Err("D must be at least 1".into());
    }
    Ok((d, m))
}

#[derive(Subcommand)]
enum Command {
    /// Print the normalized pure diagram of a degree sequence such as 0,3,4,5
    Pure {
        #[arg(allow_hyphen_values = true)]
        degrees: String,
        /// Scale by the lcm of the denominators
        #[arg(long)]
        clear_denominators: bool,
        #[arg(long, value_enum, default_value_t = Out::Text)]
        out: Out,
    },
    /// Decompose a betti table into pure diagrams
    Decompose {
        file: PathBuf,
        /// Input format; detected from the contents when omitted
        #[arg(long, value_enum)]
        format: Option<InFormat>,
        /// Codimension used to sum the multiplicity
        #[arg(long)]
        codim: Option<usize>,
        #[arg(long)]
        max_iterations: Option<usize>,
        #[arg(long, value_enum, default_value_t = Out::Text)]
        out: Out,
    },
    /// Compute the betti table of S/I from an ideal file
    Betti {
        file: PathBuf,
        #[arg(long)]
        qmax: u32,
        /// rational, gf P, or both; overrides the file's field line
        #[arg(long, value_parser = parse_field_choice)]
        field: Option<FieldChoice>,
        #[arg(long, value_enum, default_value_t = Out::Text)]
        out: Out,
    },
    /// Check a table against the first-strand bounds
    Check {
        file: PathBuf,
        #[arg(long)]
        codim: u32,
        /// Strand row; defaults to the first nontrivial strand
        #[arg(long)]
        q: Option<usize>,
        /// Assert property ND(q)
        #[arg(long)]
        assert_nd: bool,
        /// Assert linearly general position of a general zero-dimensional section
        #[arg(long)]
        assert_lgp: bool,
        /// Also compare the linear strand with the next-to-maximal bounds
        #[arg(long)]
        next_to_max: bool,
        /// Report property N_{D,M}
        #[arg(long, value_name = "D,M", value_parser = parse_pair)]
        ndm: Option<(usize, usize)>,
        #[arg(long, value_enum)]
        format: Option<InFormat>,
        #[arg(long, value_enum, default_value_t = Out::Text)]
        out: Out,
    },
    /// List or run the fixture corpus
    Fixtures {
        /// Only list the fixtures
        #[arg(long)]
        list: bool,
        /// Run only these fixtures
        names: Vec<String>,
        #[arg(long, value_enum, default_value_t = Out::Text)]
        out: Out,
    },
    /// Run the exhaustive small-range sweeps
    Selftest,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Pure {
            degrees,
            clear_denominators,
            out,
        } => cmd_pure(&degrees, clear_denominators, out),
        Command::Decompose {
            file,
            format,
            codim,
            max_iterations,
            out,
        } => cmd_decompose(&file, format, codim, max_iterations, out),
        Command::Betti {
            file,
            qmax,
            field,
            out,
        } => cmd_betti(&file, qmax, field, out),
        Command::Check {
            file,
            codim,
            q,
            assert_nd,
            assert_lgp,
            next_to_max,
            ndm,
            format,
            out,
        } => {
            let a = Assumptions {
                nd_q: assert_nd,
                lgp: assert_lgp,
                codim_e: codim,
            };
            cmd_check(&file, format, a, q, next_to_max, ndm, out)
        }
        Command::Fixtures { list, names, out } => fixtures::run(list, &names, out == Out::Json),
        Command::Selftest => cmd_selftest(),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Reads a table and shifts it so the smallest generator degree sits at `(0, 0)`.
pub(crate) fn load_table(text: &str, format: Option<InFormat>) -> Result<BettiTable> {
    let t = match format {
        Some(InFormat::Text) => table_from_text(text)?,
        Some(InFormat::Json) => table_from_json(text)?,
        None => table_from_str(text)?,
    };
    if t.is_empty() {
        bail!("table is empty");
    }
    Ok(t.normalized()?)
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn cmd_pure(degrees: &str, clear: bool, out: Out) -> Result<ExitCode> {
    let d = DegreeSequence::parse(degrees)
        .with_context(|| format!("bad degree sequence {degrees:?}"))?;
    let pd = hk_diagram(&d)?;
    let (scale, table) = if clear {
        let (lcm, t) = pd.cleared();
        (Some(lcm), t)
    } else {
        (None, pd.table.clone())
    };
    match out {
        Out::Text => {
            print!("{}", table_to_text(&table));
            if let Some(s) = &scale {
                println!("scaled by: {s}");
            }
            println!("multiplicity: {}", pd.multiplicity);
        }
        Out::Json => {
            let mut v = json!({
                "degrees": d.degrees(),
                "table": table_to_json_value(&table),
                "multiplicity": pd.multiplicity.to_string(),
            });
            if let Some(s) = scale {
                v["scale"] = json!(s.to_string());
            }
            print_json(&v);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_decompose(
    file: &Path,
    format: Option<InFormat>,
    codim: Option<usize>,
    max_iterations: Option<usize>,
    out: Out,
) -> Result<ExitCode> {
    let t = load_table(&read(file)?, format)?;
    let limit = max_iterations.unwrap_or_else(|| default_iteration_limit(&t));
    let dec = bs_decompose(&t, limit)?;
    let multiplicity = codim.map(|e| multiplicity_from_decomposition(&dec, e));
    if let Some(e) = codim {
        let short: Vec<String> = dec
            .terms
            .iter()
            .filter(|(_, d)| d.length() < e)
            .map(|(_, d)| d.to_string())
            .collect();
        if !short.is_empty() {
            eprintln!(
                "warning: terms shorter than --codim {e}: {}",
                short.join(", ")
            );
        }
    }
    match out {
        Out::Text => {
            for (x, d) in &dec.terms {
                println!("{x}  {d}");
            }
            if let (Some(e), Some(m)) = (codim, &multiplicity) {
                println!("multiplicity (length {e} part): {m}");
            }
        }
        Out::Json => print_json(&dec.to_json_value(multiplicity.as_ref())),
    }
    Ok(ExitCode::SUCCESS)
}

/// Field order: `--field`, then the file's `field` line, then `GF(32003)`.
fn resolve_fields(ideal: &Ideal, flag: Option<FieldChoice>) -> Vec<FieldSpec> {
    match flag {
        Some(FieldChoice::One(f)) => vec![f],
        Some(FieldChoice::Both) => vec![FieldSpec::Rational, FieldSpec::default()],
        None => vec![ideal.field],
    }
}

fn cmd_betti(file: &Path, qmax: u32, field: Option<FieldChoice>, out: Out) -> Result<ExitCode> {
    if qmax < 1 {
        bail!("--qmax must be at least 1");
    }
    let ideal = parse_ideal(&read(file)?)?;
    let mut results = Vec::new();
    for f in resolve_fields(&ideal, field) {
        let res = betti_table(&ideal.with_field(f), qmax)?;
        let consistent = koszul::hilbert_consistency_with(
            ideal.num_vars,
            &res.hilbert_function,
            &res.table,
            qmax,
        );
        results.push((f, res, consistent));
    }
    let agree = results.windows(2).all(|w| w[0].1.table == w[1].1.table);
    match out {
        Out::Text => {
            for (i, (f, res, consistent)) in results.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                println!("field: {f}");
                print!("{}", table_to_text(&res.table));
                let hf: Vec<String> = res
                    .hilbert_function
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                println!("hilbert function: {}", hf.join(" "));
                println!(
                    "complete: {}",
                    if res.complete {
                        "yes"
                    } else {
                        "no (raise --qmax)"
                    }
                );
                println!(
                    "hilbert consistency: {}",
                    if *consistent { "ok" } else { "FAILED" }
                );
            }
            if results.len() > 1 {
                println!();
                println!("fields agree: {}", if agree { "yes" } else { "NO" });
            }
        }
        Out::Json => {
            let per: Vec<serde_json::Value> = results
                .iter()
                .map(|(f, res, consistent)| {
                    json!({
                        "field": f.to_string(),
                        "table": table_to_json_value(&res.table),
                        "complete": res.complete,
                        "hilbert_function": res.hilbert_function,
                        "hilbert_consistent": consistent,
                    })
                })
                .collect();
            if per.len() == 1 {
                print_json(&per[0]);
            } else {
                print_json(&json!({ "results": per, "fields_agree": agree }));
            }
        }
    }
    if !agree {
        eprintln!("warning: betti tables differ between fields");
    }
    Ok(ExitCode::SUCCESS)
}

fn print_report(title: &str, rep: &StrandReport) {
    println!("{title}");
    println!("  strand: q = {}", rep.q_strand);
    let a = &rep.assumptions;
    println!(
        "  codimension: e = {} (asserted){}",
        a.codim_e,
        rep.suggested_codim
            .map(|s| format!(", table width {s} (suggested, unverified)"))
            .unwrap_or_default()
    );
    println!(
        "  assumptions: ND({}) {}, linearly general position {}",
        rep.q_strand,
        if a.nd_q { "asserted" } else { "not asserted" },
        if a.lgp { "asserted" } else { "not asserted" }
    );
    println!("  {:>3}  {:>10}  {:>10}", "p", "observed", "bound");
    for c in &rep.per_p {
        let mark = if c.exceeds() {
            "  exceeds"
        } else if c.attains_max {
            "  attains"
        } else {
            ""
        };
        println!(
            "  {:>3}  {:>10}  {:>10}{mark}",
            c.p,
            c.observed.to_string(),
            c.bound.to_string()
        );
    }
    println!("  verdict: {}", rep.verdict);
    if let Some(d) = &rep.degree_predicted {
        println!("  predicted degree: {d}");
    }
    if let Some(s) = rep.shape_holds {
        println!("  extremal shape: {}", if s { "holds" } else { "fails" });
    }
    if let Some(d) = &rep.degree_observed {
        println!("  degree from decomposition: {d}");
    }
    for n in &rep.notes {
        println!("  note: {n}");
    }
}

fn cmd_check(
    file: &Path,
    format: Option<InFormat>,
    a: Assumptions,
    q: Option<usize>,
    next_to_max: bool,
    ndm: Option<(usize, usize)>,
    out: Out,
) -> Result<ExitCode> {
    let t = load_table(&read(file)?, format)?;
    let strand = first_nontrivial_strand(&t)?;
    let q = match (q, strand) {
        (Some(q), Some(s)) if q != s => {
            bail!("--q {q} is not the first nontrivial strand (q = {s})")
        }
        (Some(q), _) => Some(q),
        (None, s) => s,
    };
    let first = match q {
        Some(q) => Some(check_first_strand(&t, &a, q)?),
        None => None,
    };
    let ntm = if next_to_max {
        Some(check_next_to_max(&t, &a)?)
    } else {
        None
    };
    let ndm_holds = ndm.map(|(d, m)| (d, m, check_ndm(&t, d, m)));
    let bounds = q.map(|q| degree_bounds(a.codim_e, q as u32));
    let violated = first
        .iter()
        .chain(ntm.iter())
        .any(StrandReport::is_violation);

    match out {
        Out::Text => {
            match &first {
                Some(rep) => print_report("first-strand bound", rep),
                None => println!("no nontrivial strand: column 1 is empty"),
            }
            if let Some(rep) = &ntm {
                print_report("next-to-maximal bound", rep);
            }
            if let Some(b) = &bounds {
                println!(
                    "degree bounds: deg >= {} under {}, deg <= {} under {}",
                    b.lower, b.lower_hypothesis, b.upper, b.upper_hypothesis
                );
            }
            if let Some((d, m, holds)) = ndm_holds {
                println!(
                    "property N_{{{d},{m}}}: {}",
                    if holds { "holds" } else { "fails" }
                );
            }
        }
        Out::Json => {
            let v = json!({
                "first_strand": first,
                "next_to_max": ntm,
                "degree_bounds": bounds,
                "ndm": ndm_holds.map(|(d, m, holds)| json!({"d": d, "m": m, "holds": holds})),
            });
            print_json(&v);
        }
    }
    Ok(if violated {
        ExitCode::from(EXIT_VIOLATION)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_selftest() -> Result<ExitCode> {
    let start = std::time::Instant::now();
    let reports = verify::run_all();
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    println!(
        "selftest: {} sweeps, {failed} failed, {:.2?}",
        reports.len(),
        start.elapsed()
    );
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

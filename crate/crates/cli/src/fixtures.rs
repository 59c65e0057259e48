//! The fixture corpus: bundled in the binary, or read from `FIXTURES_DIR`.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use betti_core::*;
use serde::{Deserialize, Serialize};

const BUNDLED: &[(&str, &str)] = &[
    ("manifest.toml", include_str!("../fixtures/manifest.toml")),
    (
        "veronese_projection.table",
        include_str!("../fixtures/veronese_projection.table"),
    ),
    (
        "cubic_and_conic.table",
        include_str!("../fixtures/cubic_and_conic.table"),
    ),
    ("tilde_3_1.json", include_str!("../fixtures/tilde_3_1.json")),
    ("conic.ideal", include_str!("../fixtures/conic.ideal")),
    (
        "twisted_cubic.ideal",
        include_str!("../fixtures/twisted_cubic.ideal"),
    ),
    (
        "rational_quartic.ideal",
        include_str!("../fixtures/rational_quartic.ideal"),
    ),
    (
        "rational_quintic.ideal",
        include_str!("../fixtures/rational_quintic.ideal"),
    ),
    (
        "veronese_surface.ideal",
        include_str!("../fixtures/veronese_surface.ideal"),
    ),
    ("ci_2_2.ideal", include_str!("../fixtures/ci_2_2.ideal")),
    ("ci_2_3.ideal", include_str!("../fixtures/ci_2_3.ideal")),
    (
        "plane_cubic.ideal",
        include_str!("../fixtures/plane_cubic.ideal"),
    ),
];

#[derive(Debug, Deserialize)]
struct Manifest {
    fixture: Vec<Fixture>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Fixture {
    name: String,
    #[serde(default)]
    description: String,
    input: String,
    qmax: Option<u32>,
    /// Expected betti table in text form (ideal fixtures).
    table: Option<String>,
    codim: Option<u32>,
    #[serde(default)]
    assert_nd: bool,
    #[serde(default)]
    assert_lgp: bool,
    decomposition: Option<Vec<(String, String)>>,
    multiplicity: Option<String>,
    verdict: Option<String>,
    next_to_max: Option<String>,
}

#[derive(Debug, Serialize)]
struct Outcome {
    name: String,
    passed: bool,
    failures: Vec<String>,
}

enum Source {
    Bundled,
    Dir(PathBuf),
}

impl Source {
    fn from_env() -> Self {
        match std::env::var_os("FIXTURES_DIR") {
            Some(dir) => Source::Dir(dir.into()),
            None => Source::Bundled,
        }
    }

    fn read(&self, name: &str) -> Result<String> {
        match self {
            Source::Bundled => BUNDLED
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, text)| text.to_string())
                .ok_or_else(|| anyhow!("no bundled fixture file {name}")),
            Source::Dir(dir) => {
                let path = dir.join(name);
                std::fs::read_to_string(&path)
                    .with_context(|| format!("cannot read {}", path.display()))
            }
        }
    }

    fn describe(&self) -> String {
        match self {
            Source::Bundled => "bundled corpus".into(),
            Source::Dir(d) => d.display().to_string(),
        }
    }
}

/// The fixture's table, plus any problems found while computing it.
fn load_input(src: &Source, fx: &Fixture) -> Result<(BettiTable, Vec<String>)> {
    let text = src.read(&fx.input)?;
    if fx.input.ends_with(".ideal") {
        let ideal = parse_ideal(&text).with_context(|| fx.input.clone())?;
        let qmax = fx.qmax.ok_or_else(|| anyhow!("ideal fixture needs qmax"))?;
        let qq = betti_table(&ideal.with_field(FieldSpec::Rational), qmax)?;
        let gf = betti_table(&ideal.with_field(FieldSpec::default()), qmax)?;
        let mut problems = Vec::new();
        if qq.table != gf.table {
            problems.push("rational and GF(32003) tables differ".to_string());
        }
        if !koszul::hilbert_consistency_with(ideal.num_vars, &qq.hilbert_function, &qq.table, qmax)
        {
            problems.push("Hilbert consistency fails".to_string());
        }
        if !qq.complete {
            problems.push("table not complete at qmax".to_string());
        }
        Ok((qq.table, problems))
    } else {
        let t = crate::load_table(&text, None).with_context(|| fx.input.clone())?;
        Ok((t, Vec::new()))
    }
}

fn run_one(src: &Source, fx: &Fixture) -> Outcome {
    let mut failures = Vec::new();
    if let Err(e) = check_fixture(src, fx, &mut failures) {
        failures.push(format!("{e:#}"));
    }
    Outcome {
        name: fx.name.clone(),
        passed: failures.is_empty(),
        failures,
    }
}

fn check_fixture(src: &Source, fx: &Fixture, failures: &mut Vec<String>) -> Result<()> {
    let (table, problems) = load_input(src, fx)?;
    failures.extend(problems);
    let text = table_to_text(&table);
    if table_from_text(&text)? != table || table_from_json(&table_to_json(&table))? != table {
        failures.push("parse/emit round trip changed the table".into());
    }
    if let Some(expected) = &fx.table {
        let want = table_from_text(expected).context("expected table")?;
        if want != table {
            failures.push(format!("table:\n{text}expected:\n{}", table_to_text(&want)));
        }
    }

    let dec = bs_decompose_default(&table)?;
    if let Some(expected) = &fx.decomposition {
        let got: Vec<(String, String)> = dec
            .terms
            .iter()
            .map(|(x, d)| {
                let degs: Vec<String> = d.degrees().iter().map(ToString::to_string).collect();
                (x.to_string(), degs.join(","))
            })
            .collect();
        if &got != expected {
            failures.push(format!("decomposition {got:?}, expected {expected:?}"));
        }
    }
    if let Some(e) = fx.codim {
        if let Some(expected) = &fx.multiplicity {
            let m = multiplicity_from_decomposition(&dec, e as usize).to_string();
            if &m != expected {
                failures.push(format!("multiplicity {m}, expected {expected}"));
            }
        }
        let a = Assumptions {
            nd_q: fx.assert_nd,
            lgp: fx.assert_lgp,
            codim_e: e,
        };
        if let Some(expected) = &fx.verdict {
            let q =
                first_nontrivial_strand(&table)?.ok_or_else(|| anyhow!("no nontrivial strand"))?;
            let v = check_first_strand(&table, &a, q)?.verdict.to_string();
            if &v != expected {
                failures.push(format!("first-strand verdict {v}, expected {expected}"));
            }
        }
        if let Some(expected) = &fx.next_to_max {
            let v = check_next_to_max(&table, &a)?.verdict.to_string();
            if &v != expected {
                failures.push(format!("next-to-max verdict {v}, expected {expected}"));
            }
        }
    }
    Ok(())
}

pub fn run(list_only: bool, names: &[String], json: bool) -> Result<ExitCode> {
    let src = Source::from_env();
    let manifest: Manifest =
        toml::from_str(&src.read("manifest.toml")?).context("manifest.toml")?;
    for n in names {
        if !manifest.fixture.iter().any(|f| &f.name == n) {
            return Err(anyhow!("unknown fixture {n:?}"));
        }
    }
    let selected: Vec<&Fixture> = manifest
        .fixture
        .iter()
        .filter(|f| names.is_empty() || names.contains(&f.name))
        .collect();
    if list_only {
        for f in &selected {
            println!("{:<22} {:<28} {}", f.name, f.input, f.description);
        }
        return Ok(ExitCode::SUCCESS);
    }
    let outcomes: Vec<Outcome> = selected.iter().map(|f| run_one(&src, f)).collect();
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if json {
        println!("{}", serde_json::to_string_pretty(&outcomes)?);
    } else {
        println!("fixtures from {}", src.describe());
        for o in &outcomes {
            if o.passed {
                println!("ok    {}", o.name);
            } else {
                println!("FAIL  {}", o.name);
                for f in &o.failures {
                    println!("      {}", f.replace('\n', "\n      "));
                }
            }
        }
        println!("{} fixtures, {failed} failed", outcomes.len());
    }
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

//! Acceptance gate. Runs as a plain binary and prints one line per criterion.

use std::process::ExitCode;

use betti_core::decompose::chain_check;
use betti_core::koszul::hilbert_consistency_with;
use betti_core::*;
use num_traits::One;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

mod common;
use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Pascal's triangle, independent of the library's binomial.
fn pascal(n: usize) -> Vec<Vec<u128>> {
    let mut rows: Vec<Vec<u128>> = vec![vec![1]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![1u128; i + 1];
        for k in 1..i {
            row[k] = prev[k - 1] + prev[k];
        }
        rows.push(row);
    }
    rows
}

fn choose(tri: &[Vec<u128>], n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        tri[n as usize][k as usize]
    }
}

fn big(n: u128) -> Rational {
    Rational::from_integer(n.into())
}

fn seq(d: &[i64]) -> DegreeSequence {
    DegreeSequence::new(d.to_vec()).unwrap()
}

fn term_set(dec: &Decomposition) -> Vec<(String, String)> {
    let mut v: Vec<(String, String)> = dec
        .terms
        .iter()
        .map(|(c, d)| (c.to_string(), d.to_string()))
        .collect();
    v.sort();
    v
}

fn expect_terms(dec: &Decomposition, expected: &[(&str, &str)]) -> Result<(), String> {
    let mut want: Vec<(String, String)> = expected
        .iter()
        .map(|(c, d)| (c.to_string(), d.to_string()))
        .collect();
    want.sort();
    let got = term_set(dec);
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

fn criterion_1() -> Outcome {
    let t = table_from_text("0: 1\n1: .\n2: . 7 10 5 1\n").map_err(|e| e.to_string())?;
    let dec = bs_decompose_default(&t).map_err(|e| e.to_string())?;
    expect_terms(
        &dec,
        &[
            ("2/3", "(0,3,4)"),
            ("7/30", "(0,3,4,5)"),
            ("1/10", "(0,3,4,5,6)"),
        ],
    )?;
    Ok("three terms, exact coefficients".into())
}

fn criterion_2() -> Outcome {
    let t = table_from_text("0: 1\n1: . 5 6 2\n2: . 1 2 1\n").map_err(|e| e.to_string())?;
    let dec = bs_decompose_default(&t).map_err(|e| e.to_string())?;
    expect_terms(
        &dec,
        &[
            ("2/3", "(0,2,3,4)"),
            ("2/15", "(0,2,3,5)"),
            ("1/10", "(0,2,4,5)"),
            ("1/10", "(0,3,4,5)"),
        ],
    )?;
    let m = multiplicity_from_decomposition(&dec, 3);
    if m != big(5) {
        return Err(format!("multiplicity {m}, expected 5"));
    }
    Ok("four terms, multiplicity 5".into())
}

fn criterion_3() -> Outcome {
    let tri = pascal(40);
    let mut cases = 0;
    for e in 1..=10i64 {
        for q in 1..=10i64 {
            let pd = hk_diagram(&family_deq(e as u32, q as u32).unwrap()).unwrap();
            if pd.table.entry(0, 0) != Rational::one() || pd.table.len() != e as usize + 1 {
                return Err(format!("e={e} q={q}: unexpected support"));
            }
            for p in 1..=e {
                let want = choose(&tri, p + q - 1, q) * choose(&tri, e + q, p + q);
                let got = pd.table.entry(p as usize, q as usize);
                if got != big(want) {
                    return Err(format!("e={e} q={q} p={p}: {got} != {want}"));
                }
            }
            let want = choose(&tri, e + q, q);
            if pd.multiplicity != big(want) {
                return Err(format!(
                    "e={e} q={q}: multiplicity {} != {want}",
                    pd.multiplicity
                ));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn criterion_4() -> Outcome {
    let tri = pascal(20);
    let mut cases = 0;
    for e in 2..=10i64 {
        let pd = hk_diagram(&family_tilde(e as u32, 1).unwrap()).unwrap();
        for p in 1..e {
            let want = p as u128 * choose(&tri, e + 1, p + 1) - choose(&tri, e, p - 1);
            let got = pd.table.entry(p as usize, 1);
            if got != big(want) {
                return Err(format!("e={e} p={p}: {got} != {want}"));
            }
        }
        if pd.table.entry(e as usize, 2) != Rational::one() {
            return Err(format!(
                "e={e}: entry at (e,2) is {}",
                pd.table.entry(e as usize, 2)
            ));
        }
        if pd.table.len() != e as usize + 1 {
            return Err(format!("e={e}: unexpected support"));
        }
        if pd.multiplicity != big(e as u128 + 2) {
            return Err(format!("e={e}: multiplicity {}", pd.multiplicity));
        }
        cases += 1;
    }
    Ok(format!("{cases} cases"))
}

// All (0, d_1, …, d_e) with lo ≤ d_1 < … < d_e ≤ hi.
fn sequences(e: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0i64]];
    for _ in 0..e {
        out = out
            .into_iter()
            .flat_map(|s| {
                let from = if s.len() == 1 { lo } else { s[s.len() - 1] + 1 };
                (from..=hi).map(move |d| {
                    let mut n = s.clone();
                    n.push(d);
                    n
                })
            })
            .collect();
    }
    out
}

fn criterion_5() -> Outcome {
    let tri = pascal(20);
    let mut cases = 0;
    let mut extremal_seen = 0;
    for e in 1..=5i64 {
        for q in 1..=4i64 {
            let extremal: Vec<i64> = std::iter::once(0).chain((1..=e).map(|k| q + k)).collect();
            let deg_bound = big(choose(&tri, e + q, q));
            for d in sequences(e as usize, q + 1, q + e + 3) {
                let pd = hk_diagram(&seq(&d)).unwrap();
                let mut attains = Vec::new();
                for p in 1..=e {
                    let max = big(choose(&tri, p + q - 1, q) * choose(&tri, e + q, p + q));
                    let got = pd.table.entry(p as usize, q as usize);
                    if got > max {
                        return Err(format!("{d:?} p={p}: {got} > {max}"));
                    }
                    attains.push(got == max);
                }
                if pd.multiplicity < deg_bound {
                    return Err(format!("{d:?}: e(d) = {} < {deg_bound}", pd.multiplicity));
                }
                let is_extremal = d == extremal;
                let conditions = [
                    attains.iter().any(|&a| a),
                    attains.iter().all(|&a| a),
                    pd.multiplicity == deg_bound,
                    seq(&d) == family_deq(e as u32, q as u32).unwrap(),
                ];
                if conditions.iter().any(|&c| c != is_extremal) {
                    return Err(format!(
                        "{d:?}: conditions {conditions:?}, extremal {is_extremal}"
                    ));
                }
                extremal_seen += is_extremal as usize;
                cases += 1;
            }
        }
    }
    if extremal_seen != 20 {
        return Err(format!(
            "saw {extremal_seen} extremal sequences, expected 20"
        ));
    }
    let library = verify::extremal_sequence_sweep(5, 4);
    if !library.passed() {
        return Err(format!("library sweep disagrees: {library}"));
    }
    Ok(format!("{cases} sequences, zero counterexamples"))
}

fn koszul_fixture(name: &str, ideal: &Ideal, expected: &BettiTable) -> Result<(), String> {
    let q_max = 3;
    let qq =
        betti_table(&ideal.with_field(FieldSpec::Rational), q_max).map_err(|e| e.to_string())?;
    let gf = betti_table(&ideal.with_field(FieldSpec::Prime(32003)), q_max)
        .map_err(|e| e.to_string())?;
    if qq.table != *expected {
        return Err(format!(
            "{name}: computed\n{}expected\n{}",
            table_to_text(&qq.table),
            table_to_text(expected)
        ));
    }
    if gf.table != qq.table || gf.hilbert_function != qq.hilbert_function {
        return Err(format!("{name}: GF(32003) and QQ disagree"));
    }
    if !qq.complete {
        return Err(format!("{name}: table not marked complete"));
    }
    if !hilbert_consistency_with(ideal.num_vars, &qq.hilbert_function, &qq.table, q_max) {
        return Err(format!("{name}: Hilbert consistency fails"));
    }
    let dec = bs_decompose_default(&qq.table).map_err(|e| e.to_string())?;
    if dec.terms.len() != 1 || !dec.terms[0].0.is_one() {
        return Err(format!("{name}: decomposition is not a single unit term"));
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let mut names = Vec::new();
    for c in 2..=5 {
        let e = (c - 1) as u32;
        let expected = hk_diagram(&family_deq(e, 1).unwrap()).unwrap().table;
        let name = format!("rational normal curve of degree {c}");
        koszul_fixture(
            &name,
            &rational_normal_curve(c, FieldSpec::Rational),
            &expected,
        )?;
        names.push(name);
    }
    let expected = hk_diagram(&family_deq(3, 1).unwrap()).unwrap().table;
    koszul_fixture(
        "Veronese surface",
        &veronese_surface(FieldSpec::Rational),
        &expected,
    )?;
    names.push("Veronese surface".into());
    Ok(format!("{} ideals over QQ and GF(32003)", names.len()))
}

fn criterion_7() -> Outcome {
    let veronese_projection =
        table_from_text("0: 1\n2: . 7 10 5 1\n").map_err(|e| e.to_string())?;
    let a = Assumptions {
        nd_q: true,
        lgp: false,
        codim_e: 2,
    };
    let rep = check_first_strand(&veronese_projection, &a, 2).map_err(|e| e.to_string())?;
    if rep.verdict != Verdict::Violation(1) {
        return Err(format!("first strand verdict {}", rep.verdict));
    }
    if rep.violations() != vec![1, 2, 3, 4] {
        return Err(format!(
            "violations at {:?}, expected every p",
            rep.violations()
        ));
    }
    let ex2 = table_from_text("0: 1\n1: . 5 6 2\n2: . 1 2 1\n").map_err(|e| e.to_string())?;
    let rep = check_next_to_max(&ex2, &Assumptions::new(3)).map_err(|e| e.to_string())?;
    if rep.verdict != Verdict::Violation(2) {
        return Err(format!("next-to-max verdict {}", rep.verdict));
    }
    let cell = &rep.per_p[1];
    if cell.observed != big(6) || cell.bound != 5.into() {
        return Err(format!(
            "p=2 compared {} against {}",
            cell.observed, cell.bound
        ));
    }
    Ok("projected Veronese exceeds at p=1..4, next-to-max flags p=2 (6 > 5)".into())
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            failure_persistence: None,
            ..Config::with_cases(cases)
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn off_cone_tables() -> Vec<BettiTable> {
    let bases = [
        vec![0, 2, 3],
        vec![0, 2, 3, 4],
        vec![0, 3, 4, 5, 6],
        vec![0, 2, 4, 5],
        vec![0, 1, 3, 6],
        vec![1, 3, 4, 7],
        vec![0, 1, 2, 3, 4],
    ];
    let bump = rat(1, 7);
    let mut out = Vec::new();
    for d in &bases {
        let pd = hk_diagram(&seq(d)).unwrap();
        for p in 1..=pd.degrees.length() {
            let q = pd.row_of(p).unwrap();
            let mut t = pd.table.clone();
            t.set(p, q, pd.table.entry(p, q) + &bump).unwrap();
            out.push(t);
        }
    }
    out.truncate(20);
    out
}

fn criterion_8() -> Outcome {
    let mut counts = [0usize; 5];

    let strategy = (arb_chain(), proptest::collection::vec(arb_rational(), 7));
    runner(200)
        .run(&strategy, |(chain, coeffs)| {
            let t = combine(&chain, &coeffs);
            let dec = bs_decompose_default(&t).map_err(|e| fail(e.to_string()))?;
            if dec.reconstruct().unwrap() != t || !chain_check(&dec) {
                return Err(fail(format!("reconstruction failed for {chain:?}")));
            }
            Ok(())
        })
        .map_err(|e| format!("reconstruction: {e}"))?;
    counts[0] = 200;

    runner(50)
        .run(&arb_ideal(), |ideal| {
            let engine = KoszulEngine::new(&ideal, Rationals, 4).unwrap();
            for p in 2..=3 {
                for q in 0..=2 {
                    let composite = engine
                        .differential(p, q)
                        .then(&engine.differential(p - 1, q + 1), engine.field());
                    if !composite.is_zero() {
                        return Err(fail(format!("δ∘δ ≠ 0 at p={p} q={q} for\n{ideal}")));
                    }
                }
            }
            Ok(())
        })
        .map_err(|e| format!("δ∘δ: {e}"))?;
    counts[1] = 50;

    runner(100)
        .run(&arb_table(), |t| {
            let text = table_to_text(&t);
            let json = table_to_json(&t);
            let ok = table_from_text(&text).ok() == Some(t.clone())
                && table_from_json(&json).ok() == Some(t.clone())
                && table_to_text(&table_from_text(&text).unwrap()) == text;
            if ok {
                Ok(())
            } else {
                Err(fail(format!("table round trip failed:\n{text}")))
            }
        })
        .map_err(|e| format!("table round trip: {e}"))?;
    counts[2] = 100;

    runner(100)
        .run(&arb_ideal(), |ideal| {
            let text = ideal.to_string();
            match parse_ideal(&text) {
                Ok(back) if back == ideal && back.to_string() == text => Ok(()),
                _ => Err(fail(format!("ideal round trip failed:\n{text}"))),
            }
        })
        .map_err(|e| format!("ideal round trip: {e}"))?;
    counts[3] = 100;

    let off = off_cone_tables();
    if off.len() != 20 {
        return Err(format!("built {} off-cone tables", off.len()));
    }
    for t in &off {
        match bs_decompose_default(t) {
            Err(DecomposeError::NotInCone(_)) => counts[4] += 1,
            other => {
                return Err(format!(
                    "expected NotInCone for\n{}got {other:?}",
                    table_to_text(t)
                ))
            }
        }
    }
    Ok(format!(
        "{} reconstructions, {} δ∘δ checks, {}+{} round trips, {} NotInCone",
        counts[0], counts[1], counts[2], counts[3], counts[4]
    ))
}

fn fail(msg: String) -> proptest::test_runner::TestCaseError {
    proptest::test_runner::TestCaseError::fail(msg)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("decomposition of the projected Veronese table", criterion_1),
        ("decomposition of the cubic-and-conic table", criterion_2),
        ("maximal family closed forms", criterion_3),
        ("next-to-maximal family closed forms", criterion_4),
        ("extremal degree sequence sweep", criterion_5),
        ("Koszul tables of determinantal fixtures", criterion_6),
        ("negative controls", criterion_7),
        ("property suite", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!(
                    "FAIL criterion {}: {name}\n  {}",
                    i + 1,
                    why.replace('\n', "\n  ")
                );
            }
        }
    }
    if failed == 0 {
        println!("acceptance: 8/8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria failed");
        ExitCode::FAILURE
    }
}

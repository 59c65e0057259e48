//! Exhaustive small-range sweeps over degree sequences and sample ideals.
//!
//! Each sweep returns a [`SweepReport`] with the number of cases examined and
//! every counterexample found, so callers can print or assert on them.

use std::fmt;

use num_traits::One;

use crate::field::{FieldSpec, PrimeField, Rationals};
use crate::ideal::Ideal;
use crate::koszul::KoszulEngine;
use crate::pure::{binomial, family_deq, family_tilde, hk_diagram, kappa_max, kappa_next_max};
use crate::table::{DegreeSequence, Rational};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SweepReport {
    fn new(name: &str) -> Self {
        SweepReport {
            name: name.to_string(),
            ..Default::default()
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAILED" };
        write!(f, "{:<32} {:>6} cases  {}", self.name, self.cases, status)?;
        for fail in self.failures.iter().take(5) {
            write!(f, "\n    {fail}")?;
        }
        Ok(())
    }
}

fn int(n: impl Into<num_bigint::BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// All sequences `(0, d_1, …, d_e)` with `lo ≤ d_1 < … < d_e ≤ hi`.
pub fn degree_sequences(e: usize, lo: i64, hi: i64) -> Vec<DegreeSequence> {
    fn rec(e: usize, from: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<DegreeSequence>) {
        if cur.len() == e + 1 {
            out.push(DegreeSequence::new(cur.clone()).expect("increasing"));
            return;
        }
        let remaining = (e + 1 - cur.len()) as i64;
        for d in from..=hi - remaining + 1 {
            cur.push(d);
            rec(e, d + 1, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0];
    rec(e, lo, hi, &mut cur, &mut out);
    out
}

/// For `e ≤ max_e`, `q ≤ max_q`, `d_1 ≥ q+1`, `d_e ≤ q+e+3`: the inequalities
/// hold, and each of the four equality conditions holds iff `d = d^{e,q}`.
pub fn extremal_sequence_sweep(max_e: u32, max_q: u32) -> SweepReport {
    let mut rep = SweepReport::new("extremal sequence sweep");
    for e in 1..=max_e {
        for q in 1..=max_q {
            let extremal = family_deq(e, q).expect("in range");
            let deg_bound = int(binomial((e + q) as u64, q as u64));
            let lo = q as i64 + 1;
            let hi = (q + e + 3) as i64;
            for d in degree_sequences(e as usize, lo, hi) {
                let pd = hk_diagram(&d).expect("d_0 = 0");
                let is_extremal = d == extremal;
                let mut attains = Vec::new();
                for p in 1..=e {
                    let observed = pd.table.entry(p as usize, q as usize);
                    let max = int(kappa_max(p, q, e));
                    rep.check(observed <= max, || {
                        format!("{d}: κ_{p} = {observed} > {max}")
                    });
                    attains.push(observed == max);
                }
                rep.check(pd.multiplicity >= deg_bound, || {
                    format!("{d}: e(d) = {} < {deg_bound}", pd.multiplicity)
                });
                let some = attains.iter().any(|&a| a);
                let all = attains.iter().all(|&a| a);
                let deg_eq = pd.multiplicity == deg_bound;
                for (label, cond) in [("some", some), ("all", all), ("degree", deg_eq)] {
                    rep.check(cond == is_extremal, || {
                        format!("{d}: condition '{label}' is {cond} but extremal is {is_extremal}")
                    });
                }
            }
        }
    }
    rep
}

/// Product-formula entries of `d^{e,q}` against the closed forms.
pub fn secant_family_sweep(max_e: u32, max_q: u32) -> SweepReport {
    let mut rep = SweepReport::new("closed forms of d^{e,q}");
    for e in 1..=max_e {
        for q in 1..=max_q {
            let pd = hk_diagram(&family_deq(e, q).expect("in range")).expect("d_0 = 0");
            let mut ok = true;
            for p in 1..=e {
                ok &= pd.table.entry(p as usize, q as usize) == int(kappa_max(p, q, e));
            }
            ok &= pd.table.len() == e as usize + 1;
            ok &= pd.multiplicity == int(binomial((e + q) as u64, q as u64));
            rep.check(ok, || format!("e = {e}, q = {q}"));
        }
    }
    rep
}

/// Product-formula entries of `d̃^{e,1}` against the next-to-maximal closed forms.
pub fn tilde_family_sweep(max_e: u32) -> SweepReport {
    let mut rep = SweepReport::new("closed forms of tilde d^{e,1}");
    for e in 2..=max_e {
        let pd = hk_diagram(&family_tilde(e, 1).expect("e ≥ 2")).expect("d_0 = 0");
        let mut ok = true;
        for p in 1..e {
            ok &= pd.table.entry(p as usize, 1) == int(kappa_next_max(p, e));
        }
        ok &= pd.table.entry(e as usize, 2) == Rational::one();
        ok &= pd.table.len() == e as usize + 1;
        ok &= pd.multiplicity == int(e + 2);
        rep.check(ok, || format!("e = {e}"));
    }
    rep
}

/// Next-to-maximal bound strictly below the maximal one on the linear strand.
pub fn bound_ordering_sweep(max_e: u32) -> SweepReport {
    let mut rep = SweepReport::new("next-to-max below max");
    for e in 1..=max_e {
        for p in 1..e {
            let next = kappa_next_max(p, e);
            let max = kappa_max(p, 1, e);
            rep.check(next < max, || format!("e = {e}, p = {p}: {next} ≥ {max}"));
        }
    }
    rep
}

/// Herzog–Kühl exactness: the Hilbert numerator of `π(d)` vanishes to order `ℓ`
/// at `t = 1`, and the quotient at `t = 1` is `e(d)` times the cleared scale.
pub fn exactness_sweep(max_len: usize, max_degree: i64) -> SweepReport {
    let mut rep = SweepReport::new("Herzog-Kühl exactness");
    for ell in 1..=max_len {
        for d in degree_sequences(ell, 1, max_degree) {
            let pd = hk_diagram(&d).expect("d_0 = 0");
            let (lcm, cleared) = pd.cleared();
            let num = cleared.hilbert_numerator().expect("integral");
            let mut quotient = Some(num);
            for _ in 0..ell {
                quotient = quotient.and_then(|p| p.div_one_minus_t());
            }
            let ok = match quotient {
                None => false,
                Some(qt) => {
                    Rational::from_integer(qt.eval_at_one()) == &pd.multiplicity * int(lcm.clone())
                }
            };
            rep.check(ok, || format!("{d}"));
        }
    }
    rep
}

/// Sample ideals used for the `δ∘δ = 0` sweep and the CLI self test.
pub fn sample_ideals() -> Vec<(&'static str, Ideal)> {
    let f = FieldSpec::Rational;
    let mk = |n, gens: &[&str]| Ideal::from_strs(n, f, gens).expect("well-formed sample");
    vec![
        (
            "twisted cubic",
            mk(4, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]),
        ),
        ("complete intersection (2,2)", mk(3, &["x0^2", "x1^2"])),
        ("complete intersection (2,3)", mk(3, &["x0^2", "x1^3"])),
        ("plane cubic", mk(3, &["x0^3 + x1^3 + x2^3"])),
        ("mixed", mk(3, &["1/2*x0^2 - x1*x2", "x0*x1 + 3*x2^2"])),
        ("zero ideal", mk(3, &[])),
    ]
}

fn delta_squared<F: crate::field::Field>(ideal: &Ideal, field: F, max_q: u32) -> Vec<String> {
    let engine = KoszulEngine::new(ideal, field, max_q + 2).expect("sample ideal");
    let mut bad = Vec::new();
    for p in 2..=ideal.num_vars {
        for q in 0..=max_q {
            let first = engine.differential(p, q);
            let second = engine.differential(p - 1, q + 1);
            if !first.then(&second, engine.field()).is_zero() {
                bad.push(format!("p = {p}, q = {q}"));
            }
        }
    }
    bad
}

/// `δ∘δ = 0` over the rationals and `GF(32003)` on the given ideals.
pub fn differential_sweep(ideals: &[(&str, Ideal)], max_q: u32) -> SweepReport {
    let mut rep = SweepReport::new("δ∘δ = 0");
    let gf = PrimeField::new(FieldSpec::DEFAULT_PRIME).expect("prime");
    for (name, ideal) in ideals {
        let bad = delta_squared(ideal, Rationals, max_q);
        rep.check(bad.is_empty(), || {
            format!("{name} over QQ: {}", bad.join(", "))
        });
        let bad = delta_squared(ideal, gf, max_q);
        rep.check(bad.is_empty(), || {
            format!("{name} over GF: {}", bad.join(", "))
        });
    }
    rep
}

/// Every sweep at the self-test ranges.
pub fn run_all() -> Vec<SweepReport> {
    vec![
        extremal_sequence_sweep(5, 4),
        secant_family_sweep(10, 10),
        tilde_family_sweep(10),
        bound_ordering_sweep(8),
        exactness_sweep(4, 9),
        differential_sweep(&sample_ideals(), 3),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_sequence_enumeration() {
        let all = degree_sequences(2, 2, 4);
        let shown: Vec<String> = all.iter().map(ToString::to_string).collect();
        assert_eq!(shown, vec!["(0,2,3)", "(0,2,4)", "(0,3,4)"]);
        assert_eq!(degree_sequences(3, 2, 8).len(), 35);
    }

    #[test]
    fn small_sweeps_pass() {
        for rep in [
            extremal_sequence_sweep(3, 2),
            secant_family_sweep(4, 4),
            tilde_family_sweep(6),
            bound_ordering_sweep(8),
            exactness_sweep(3, 7),
        ] {
            assert!(rep.passed(), "{rep}");
            assert!(rep.cases > 0);
        }
    }

    #[test]
    fn differential_sweep_on_samples() {
        let rep = differential_sweep(&sample_ideals()[..3], 2);
        assert!(rep.passed(), "{rep}");
    }
}

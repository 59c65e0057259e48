//! First-strand bound checks.
//!
//! Geometric hypotheses (property ND(q), linearly general position of a
//! general zero-dimensional section) cannot be read off a table. They enter
//! as caller assertions in [`Assumptions`] and are echoed in every report;
//! only their table-level consequences are checked here.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::decompose::{bs_decompose_default, multiplicity_from_decomposition};
use crate::pure::{binomial, kappa_max, kappa_next_max};
use crate::table::{BettiTable, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("column 0 must hold exactly κ_{{0,0}} = 1")]
    MalformedColumnZero,
    #[error("codimension must be at least {0}")]
    CodimTooSmall(u32),
    #[error("strand row must be at least 1")]
    StrandRowZero,
    #[error("next-to-maximal bounds apply to the linear strand (q = 1), first strand is {0:?}")]
    NotLinearStrand(Option<usize>),
}

/// Caller assertions about the underlying scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Assumptions {
    /// Property ND(q) is asserted.
    pub nd_q: bool,
    /// The general zero-dimensional linear section is asserted to be in linearly general position.
    pub lgp: bool,
    pub codim_e: u32,
}

impl Assumptions {
    pub fn new(codim_e: u32) -> Self {
        Assumptions {
            nd_q: false,
            lgp: false,
            codim_e,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "p")]
pub enum Verdict {
    AllMax,
    NoneMax,
    Violation(usize),
    MixedMaxInconsistent(usize),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::AllMax => write!(f, "AllMax"),
            Verdict::NoneMax => write!(f, "NoneMax"),
            Verdict::Violation(p) => write!(f, "Violation({p})"),
            Verdict::MixedMaxInconsistent(p) => write!(f, "MixedMaxInconsistent({p})"),
        }
    }
}

/// One compared cell of the strand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrandCell {
    pub p: usize,
    #[serde(serialize_with = "ser_display")]
    pub observed: Rational,
    #[serde(serialize_with = "ser_display")]
    pub bound: BigInt,
    pub attains_max: bool,
}

impl StrandCell {
    pub fn exceeds(&self) -> bool {
        self.observed > Rational::from_integer(self.bound.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrandReport {
    pub q_strand: usize,
    pub per_p: Vec<StrandCell>,
    pub verdict: Verdict,
    /// Degree forced by the extremal shape, filled in on [`Verdict::AllMax`].
    #[serde(serialize_with = "ser_opt_display")]
    pub degree_predicted: Option<Rational>,
    /// Multiplicity of the length-`e` part of the decomposition, when the table is in the cone.
    #[serde(serialize_with = "ser_opt_display")]
    pub degree_observed: Option<Rational>,
    /// Whether the extremal resolution shape holds; only evaluated on [`Verdict::AllMax`].
    pub shape_holds: Option<bool>,
    pub assumptions: Assumptions,
    /// `projective_dimension(t)`, a codimension suggestion for ACM inputs. Unverified.
    pub suggested_codim: Option<usize>,
    pub notes: Vec<String>,
}

impl StrandReport {
    pub fn violations(&self) -> Vec<usize> {
        self.per_p
            .iter()
            .filter(|c| c.exceeds())
            .map(|c| c.p)
            .collect()
    }

    pub fn is_violation(&self) -> bool {
        matches!(self.verdict, Verdict::Violation(_))
    }
}

fn ser_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn ser_opt_display<T: fmt::Display, S: serde::Serializer>(
    v: &Option<T>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

fn check_column_zero(t: &BettiTable) -> Result<(), BoundsError> {
    let mut col0 = t.column(0);
    match (col0.next(), col0.next()) {
        (Some((0, v)), None) if *v == Rational::from_integer(1.into()) => Ok(()),
        _ => Err(BoundsError::MalformedColumnZero),
    }
}

/// Smallest `q ≥ 1` with an entry at `(1, q)`.
pub fn first_nontrivial_strand(t: &BettiTable) -> Result<Option<usize>, BoundsError> {
    check_column_zero(t)?;
    Ok(t.column(1).map(|(q, _)| q).find(|&q| q >= 1))
}

fn compare_row<B: Fn(u32) -> BigInt>(
    t: &BettiTable,
    q: usize,
    last_bounded: usize,
    bound: B,
) -> Vec<StrandCell> {
    let width = t
        .row(q)
        .map(|(p, _)| p)
        .max()
        .unwrap_or(0)
        .max(last_bounded);
    (1..=width)
        .map(|p| {
            let observed = t.entry(p, q);
            let b = bound(p as u32);
            let attains_max = !b.is_zero() && observed == Rational::from_integer(b.clone());
            StrandCell {
                p,
                observed,
                bound: b,
                attains_max,
            }
        })
        .collect()
}

// Violation outranks everything; then all / none / some attaining.
fn classify(cells: &[StrandCell], bounded: usize) -> Verdict {
    if let Some(c) = cells.iter().find(|c| c.exceeds()) {
        return Verdict::Violation(c.p);
    }
    let attaining: Vec<usize> = cells
        .iter()
        .filter(|c| c.p <= bounded && c.attains_max)
        .map(|c| c.p)
        .collect();
    if attaining.len() == bounded {
        Verdict::AllMax
    } else if attaining.is_empty() {
        Verdict::NoneMax
    } else {
        Verdict::MixedMaxInconsistent(attaining[0])
    }
}

fn observed_degree(t: &BettiTable, e: u32) -> Option<Rational> {
    bs_decompose_default(t)
        .ok()
        .map(|dec| multiplicity_from_decomposition(&dec, e as usize))
}

/// Compares row `q` against `C(p+q-1, q)·C(e+q, p+q)` and classifies it.
pub fn check_first_strand(
    t: &BettiTable,
    a: &Assumptions,
    q: usize,
) -> Result<StrandReport, BoundsError> {
    check_column_zero(t)?;
    if a.codim_e < 1 {
        return Err(BoundsError::CodimTooSmall(1));
    }
    if q < 1 {
        return Err(BoundsError::StrandRowZero);
    }
    let e = a.codim_e;
    let per_p = compare_row(t, q, e as usize, |p| kappa_max(p, q as u32, e));
    let verdict = classify(&per_p, e as usize);
    let mut notes = Vec::new();
    let mut degree_predicted = None;
    let mut shape_holds = None;
    if verdict == Verdict::AllMax {
        degree_predicted = Some(Rational::from_integer(binomial(
            (e + q as u32) as u64,
            q as u64,
        )));
        // Only rows 0 and q, row q confined to columns 1..=e.
        let shape = t
            .iter()
            .all(|(p, qq, _)| (p == 0 && qq == 0) || (qq == q && (1..=e as usize).contains(&p)));
        shape_holds = Some(shape);
    }
    if let Verdict::Violation(_) = verdict {
        if a.nd_q {
            notes.push(format!(
                "bound exceeded although ND({q}) is asserted: the assertion is false for this table"
            ));
        } else {
            notes.push(format!("ND({q}) not asserted; the bound is not guaranteed"));
        }
    }
    if let Verdict::MixedMaxInconsistent(_) = verdict {
        notes.push(if a.nd_q {
            format!("some but not all cells attain the maximum, impossible under ND({q})")
        } else {
            format!("some but not all cells attain the maximum; ND({q}) not asserted")
        });
    }
    Ok(StrandReport {
        q_strand: q,
        per_p,
        verdict,
        degree_predicted,
        degree_observed: observed_degree(t, e),
        shape_holds,
        assumptions: *a,
        suggested_codim: t.projective_dimension(),
        notes,
    })
}

/// Compares the linear strand against `p·C(e+1, p+1) - C(e, p-1)`.
pub fn check_next_to_max(t: &BettiTable, a: &Assumptions) -> Result<StrandReport, BoundsError> {
    let strand = first_nontrivial_strand(t)?;
    if strand != Some(1) {
        return Err(BoundsError::NotLinearStrand(strand));
    }
    if a.codim_e < 2 {
        return Err(BoundsError::CodimTooSmall(2));
    }
    let e = a.codim_e;
    let bounded = e as usize - 1;
    let per_p = compare_row(t, 1, bounded, |p| kappa_next_max(p, e));
    let verdict = classify(&per_p, bounded);
    let degree_observed = observed_degree(t, e);
    let mut notes = Vec::new();
    if !a.lgp {
        notes.push(
            "linearly general position not asserted; the bound is not guaranteed".to_string(),
        );
    }
    let min_degree = Rational::from_integer((e + 2).into());
    if let Some(deg) = &degree_observed {
        if *deg < min_degree {
            notes.push(format!(
                "degree hypothesis fails: observed degree {deg} < e+2 = {min_degree}"
            ));
        }
    }
    let mut degree_predicted = None;
    let mut shape_holds = None;
    if verdict == Verdict::AllMax {
        degree_predicted = Some(min_degree);
        // Rows 0 and 1 (columns 1..e-1) plus a single κ_{e,2} = 1.
        let one = Rational::from_integer(1.into());
        let cells_ok = t.iter().all(|(p, q, v)| {
            (p == 0 && q == 0)
                || (q == 1 && (1..=bounded).contains(&p))
                || (q == 2 && p == e as usize && *v == one)
        });
        shape_holds = Some(cells_ok && t.get(e as usize, 2).is_some());
    }
    Ok(StrandReport {
        q_strand: 1,
        per_p,
        verdict,
        degree_predicted,
        degree_observed,
        shape_holds,
        assumptions: *a,
        suggested_codim: t.projective_dimension(),
        notes,
    })
}

/// Property `N_{d,m}`: no entry at `(p, q)` with `p ≤ m` and `q ≥ d`.
pub fn check_ndm(t: &BettiTable, d: usize, m: usize) -> bool {
    !t.iter().any(|(p, q, _)| p <= m && q >= d)
}

/// The common value `C(e+q, q)` of both degree bounds, with the hypothesis behind each side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeBounds {
    /// `deg ≥ lower` under ND(q).
    #[serde(serialize_with = "ser_display")]
    pub lower: BigInt,
    pub lower_hypothesis: String,
    /// `deg ≤ upper` under `N_{q+1,e}`.
    #[serde(serialize_with = "ser_display")]
    pub upper: BigInt,
    pub upper_hypothesis: String,
}

pub fn degree_bounds(e: u32, q: u32) -> DegreeBounds {
    let c = binomial((e + q) as u64, q as u64);
    DegreeBounds {
        lower: c.clone(),
        lower_hypothesis: format!("ND({q})"),
        upper: c,
        upper_hypothesis: format!("N_{{{},{e}}}", q + 1),
    }
}

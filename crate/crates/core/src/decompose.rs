//! Boij–Söderberg decomposition by greedy top-strand peeling.
//!
//! Each step reads off the strand of column-wise minimal rows, subtracts the
//! largest multiple of that pure diagram that keeps the table nonnegative,
//! and repeats until the table is empty. Every subtraction zeroes at least one
//! strand cell, and a table lies in the cone exactly when the loop empties it.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::pure::{hk_diagram, PureError};
use crate::table::{BettiTable, DegreeSequence, Rational, TableError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrandError {
    #[error("table is empty")]
    EmptyTable,
    #[error("column {p} is empty")]
    NoColumn { p: usize },
    #[error("top strand is not strictly increasing at column {p}")]
    StrandNotIncreasing { p: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("table is not in the Boij–Söderberg cone: {0}")]
    NotInCone(#[from] NotInCone),
    #[error("iteration limit {0} exceeded")]
    IterationLimitExceeded(usize),
    #[error("table is empty")]
    EmptyTable,
}

/// Why peeling stopped before reaching the zero table.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotInCone {
    #[error(transparent)]
    Strand(StrandError),
    #[error(transparent)]
    Negative(TableError),
    #[error(transparent)]
    Placement(PureError),
}

/// An ordered positive rational combination of pure diagrams, in peeling order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Decomposition {
    pub terms: Vec<(Rational, DegreeSequence)>,
}

#[derive(Serialize)]
struct TermJson {
    coefficient: String,
    degrees: Vec<i64>,
}

impl Decomposition {
    /// Terms by increasing length, then lexicographically by degrees.
    pub fn sorted_by_length(&self) -> Vec<(Rational, DegreeSequence)> {
        let mut out = self.terms.clone();
        out.sort_by(|a, b| {
            a.1.length()
                .cmp(&b.1.length())
                .then_with(|| a.1.degrees().cmp(b.1.degrees()))
        });
        out
    }

    /// `Σ x_i π(d^i)`.
    pub fn reconstruct(&self) -> Result<BettiTable, PureError> {
        let mut acc = BettiTable::new();
        for (x, d) in &self.terms {
            let pd = hk_diagram(d)?;
            acc = acc.add(&pd.table.scale(x).expect("coefficients are positive"));
        }
        Ok(acc)
    }

    pub fn to_json_value(&self, multiplicity: Option<&Rational>) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(x, d)| TermJson {
                coefficient: x.to_string(),
                degrees: d.degrees().to_vec(),
            })
            .collect();
        let mut obj = serde_json::json!({ "terms": terms });
        if let Some(m) = multiplicity {
            obj["multiplicity"] = serde_json::Value::String(m.to_string());
        }
        obj
    }
}

/// The column-wise minimal-row strand: `d_p = p + min{q : κ_{p,q} ≠ 0}`.
pub fn top_strand(t: &BettiTable) -> Result<DegreeSequence, StrandError> {
    let width = t.projective_dimension().ok_or(StrandError::EmptyTable)?;
    let mut degrees = Vec::with_capacity(width + 1);
    for p in 0..=width {
        let (q, _) = t.column(p).next().ok_or(StrandError::NoColumn { p })?;
        let d = (p + q) as i64;
        if degrees.last().is_some_and(|&prev| prev >= d) {
            return Err(StrandError::StrandNotIncreasing { p });
        }
        degrees.push(d);
    }
    Ok(DegreeSequence::new(degrees).expect("checked increasing"))
}

/// Default iteration cap `10·(P+1)·(reg+1)`.
pub fn default_iteration_limit(t: &BettiTable) -> usize {
    let width = t.projective_dimension().unwrap_or(0);
    let height = t.regularity().unwrap_or(0);
    10 * (width + 1) * (height + 1)
}

/// Decomposes `t` into pure diagrams, emitting terms in peeling order.
pub fn bs_decompose(
    t: &BettiTable,
    max_iterations: usize,
) -> Result<Decomposition, DecomposeError> {
    if t.is_empty() {
        return Err(DecomposeError::EmptyTable);
    }
    let mut rest = t.clone();
    let mut terms = Vec::new();
    while !rest.is_empty() {
        if terms.len() >= max_iterations {
            return Err(DecomposeError::IterationLimitExceeded(max_iterations));
        }
        let d = top_strand(&rest).map_err(NotInCone::Strand)?;
        let pd = hk_diagram(&d).map_err(NotInCone::Placement)?;
        let coefficient = (0..=d.length())
            .map(|p| {
                let q = pd.row_of(p).expect("column within length");
                rest.entry(p, q) / pd.table.entry(p, q)
            })
            .min()
            .expect("at least one column");
        debug_assert!(!coefficient.is_zero());
        let peeled = pd.table.scale(&coefficient).expect("positive");
        rest = rest
            .subtract_checked(&peeled)
            .map_err(NotInCone::Negative)?;
        terms.push((coefficient, d));
    }
    Ok(Decomposition { terms })
}

/// [`bs_decompose`] with [`default_iteration_limit`].
pub fn bs_decompose_default(t: &BettiTable) -> Result<Decomposition, DecomposeError> {
    bs_decompose(t, default_iteration_limit(t))
}

/// `Σ x_i e(d^i)` over the terms of length exactly `codim_length`.
pub fn multiplicity_from_decomposition(dec: &Decomposition, codim_length: usize) -> Rational {
    dec.terms
        .iter()
        .filter(|(_, d)| d.length() == codim_length)
        .map(|(x, d)| {
            let pd = hk_diagram(d).expect("decomposition terms have table placements");
            x * pd.multiplicity
        })
        .sum()
}

/// Consecutive terms have non-increasing length and termwise non-decreasing degrees.
pub fn chain_check(dec: &Decomposition) -> bool {
    dec.terms.windows(2).all(|w| {
        let (a, b) = (&w[0].1, &w[1].1);
        a.length() >= b.length() && a.degrees().iter().zip(b.degrees()).all(|(x, y)| x <= y)
    })
}

//! Sparse exact betti tables and degree sequences.
//!
//! A [`BettiTable`] stores the nonzero cells `κ_{p,q}` keyed by column `p`
//! (homological degree) and row `q` (weight). The internal degree of a cell is
//! `p + q`; that conversion only happens when building Hilbert numerators.
//! Every stored entry is a strictly positive rational, so two tables are equal
//! exactly when their maps are equal.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number. Always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Errors produced by table arithmetic and construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("negative entry at (p={p}, q={q})")]
    NegativeEntry { p: usize, q: usize },
    #[error("negative scale factor {0}")]
    NegativeScale(Rational),
    #[error("non-integer entry {value} at (p={p}, q={q})")]
    NonInteger { p: usize, q: usize, value: Rational },
    #[error("entry at (p={p}, q={q}) lies above the generator row {min_row}")]
    AboveGeneratorRow { p: usize, q: usize, min_row: usize },
}

/// Errors produced when building a [`DegreeSequence`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeSequenceError {
    #[error("degree sequence is empty")]
    Empty,
    #[error("degree sequence is not strictly increasing at position {0}")]
    NotIncreasing(usize),
    #[error("invalid degree sequence token {0:?}")]
    BadToken(String),
}

/// A graded betti table with exact nonnegative rational entries.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), Rational>,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a table from `(p, q, value)` triples. Zero values are dropped,
    /// repeated cells are summed.
    pub fn from_cells<I, V>(cells: I) -> Result<Self, TableError>
    where
        I: IntoIterator<Item = (usize, usize, V)>,
        V: Into<Rational>,
    {
        let mut table = Self::new();
        for (p, q, v) in cells {
            let v = v.into();
            if v.is_negative() {
                return Err(TableError::NegativeEntry { p, q });
            }
            table.add_to(p, q, v);
        }
        Ok(table)
    }

    /// Convenience constructor for integer tables.
    pub fn from_integers(cells: &[(usize, usize, i64)]) -> Result<Self, TableError> {
        Self::from_cells(cells.iter().map(|&(p, q, v)| (p, q, BigInt::from(v))))
    }

    /// Sets a cell. A zero value clears it.
    pub fn set(&mut self, p: usize, q: usize, value: Rational) -> Result<(), TableError> {
        if value.is_negative() {
            return Err(TableError::NegativeEntry { p, q });
        }
        if value.is_zero() {
            self.entries.remove(&(p, q));
        } else {
            self.entries.insert((p, q), value);
        }
        Ok(())
    }

    // Callers guarantee the running sum stays nonnegative.
    fn add_to(&mut self, p: usize, q: usize, value: Rational) {
        if value.is_zero() {
            return;
        }
        let slot = self.entries.entry((p, q)).or_insert_with(Rational::zero);
        *slot += value;
        if slot.is_zero() {
            self.entries.remove(&(p, q));
        }
    }

    pub fn get(&self, p: usize, q: usize) -> Option<&Rational> {
        self.entries.get(&(p, q))
    }

    /// Entry at `(p, q)`, zero when absent.
    pub fn entry(&self, p: usize, q: usize) -> Rational {
        self.get(p, q).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Stored cells in `(p, q)` order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(p, q), v)| (p, q, v))
    }

    /// Nonzero cells of column `p`, ordered by row.
    pub fn column(&self, p: usize) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries
            .range((p, 0)..=(p, usize::MAX))
            .map(|(&(_, q), v)| (q, v))
    }

    /// Nonzero cells of row `q`, ordered by column.
    pub fn row(&self, q: usize) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.entries
            .iter()
            .filter(move |(&(_, qq), _)| qq == q)
            .map(|(&(p, _), v)| (p, v))
    }

    /// Largest column index holding an entry.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|&(p, _)| p).max()
    }

    /// Largest row index holding an entry.
    pub fn regularity(&self) -> Option<usize> {
        self.entries.keys().map(|&(_, q)| q).max()
    }

    pub fn is_integral(&self) -> bool {
        self.entries.values().all(|v| v.is_integer())
    }

    pub fn add(&self, other: &BettiTable) -> BettiTable {
        let mut out = self.clone();
        for (p, q, v) in other.iter() {
            out.add_to(p, q, v.clone());
        }
        out
    }

    /// Multiplies every entry by `factor`. Scaling by zero gives the empty table.
    pub fn scale(&self, factor: &Rational) -> Result<BettiTable, TableError> {
        if factor.is_negative() {
            return Err(TableError::NegativeScale(factor.clone()));
        }
        if factor.is_zero() {
            return Ok(BettiTable::new());
        }
        Ok(BettiTable {
            entries: self.entries.iter().map(|(k, v)| (*k, v * factor)).collect(),
        })
    }

    /// `self - other`, failing on the first cell (in `(p, q)` order) that
    /// would become negative.
    pub fn subtract_checked(&self, other: &BettiTable) -> Result<BettiTable, TableError> {
        let mut out = self.clone();
        for (p, q, v) in other.iter() {
            let cur = out.entry(p, q);
            let diff = cur - v;
            if diff.is_negative() {
                return Err(TableError::NegativeEntry { p, q });
            }
            out.set(p, q, diff)?;
        }
        Ok(out)
    }

    /// `Σ (-1)^p κ_{p,q} t^{p+q}`. Requires integer entries.
    pub fn hilbert_numerator(&self) -> Result<IntPoly, TableError> {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (p, q, v) in self.iter() {
            if !v.is_integer() {
                return Err(TableError::NonInteger {
                    p,
                    q,
                    value: v.clone(),
                });
            }
            let deg = p + q;
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, BigInt::zero());
            }
            let n = v.to_integer();
            if p % 2 == 0 {
                coeffs[deg] += n;
            } else {
                coeffs[deg] -= n;
            }
        }
        Ok(IntPoly::new(coeffs))
    }

    /// Least common multiple of the entry denominators (1 for an empty table).
    pub fn denominator_lcm(&self) -> BigInt {
        self.entries
            .values()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
    }

    /// Shifts rows up so that the smallest row of column 0 becomes row 0.
    /// Tables without a column 0 are returned unchanged.
    pub fn normalized(&self) -> Result<BettiTable, TableError> {
        let Some(min_row) = self.column(0).map(|(q, _)| q).next() else {
            return Ok(self.clone());
        };
        if min_row == 0 {
            return Ok(self.clone());
        }
        let mut out = BettiTable::new();
        for (p, q, v) in self.iter() {
            if q < min_row {
                return Err(TableError::AboveGeneratorRow { p, q, min_row });
            }
            out.entries.insert((p, q - min_row), v.clone());
        }
        Ok(out)
    }
}

/// Dense integer polynomial in one variable, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// `(1 - t)^n`.
    pub fn one_minus_t_pow(n: usize) -> IntPoly {
        let base = IntPoly::from_i64(&[1, -1]);
        (0..n).fold(IntPoly::from_i64(&[1]), |acc, _| acc.mul(&base))
    }

    /// Exact division by `(1 - t)`, or `None` when `t = 1` is not a root.
    pub fn div_one_minus_t(&self) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(IntPoly::default());
        }
        // f = (1 - t) g  <=>  g_k = Σ_{i<=k} f_i, with the last partial sum zero.
        let mut acc = BigInt::zero();
        let mut quotient = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            acc += c;
            quotient.push(acc.clone());
        }
        if !quotient.pop().is_some_and(|last| last.is_zero()) {
            return None;
        }
        Some(IntPoly::new(quotient))
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Strictly increasing integer tuple `(d_0, …, d_ℓ)`; `ℓ` is its length.
///
/// A single-entry sequence (length 0) stands for a free module.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSequence(Vec<i64>);

impl DegreeSequence {
    pub fn new(degrees: Vec<i64>) -> Result<Self, DegreeSequenceError> {
        if degrees.is_empty() {
            return Err(DegreeSequenceError::Empty);
        }
        if let Some(i) = degrees.windows(2).position(|w| w[0] >= w[1]) {
            return Err(DegreeSequenceError::NotIncreasing(i + 1));
        }
        Ok(DegreeSequence(degrees))
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    /// `ℓ`, the number of steps (one less than the number of degrees).
    pub fn length(&self) -> usize {
        self.0.len() - 1
    }

    pub fn get(&self, i: usize) -> Option<i64> {
        self.0.get(i).copied()
    }

    /// Parses `"0,3,4,5"`.
    pub fn parse(text: &str) -> Result<Self, DegreeSequenceError> {
        let degrees = text
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<i64>()
                    .map_err(|_| DegreeSequenceError::BadToken(tok.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(degrees)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn t(cells: &[(usize, usize, i64)]) -> BettiTable {
        BettiTable::from_integers(cells).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(BettiTable::new().add(&BettiTable::new()), BettiTable::new());
        assert_eq!(t(&[(0, 0, 1)]).add(&t(&[(0, 0, 1)])), t(&[(0, 0, 2)]));
        assert_eq!(
            t(&[(1, 2, 7)]).add(&t(&[(2, 2, 10)])),
            t(&[(1, 2, 7), (2, 2, 10)])
        );
    }

    #[test]
    fn scale_examples() {
        let a = t(&[(1, 2, 4), (2, 2, 3)]);
        let expect = BettiTable::from_cells([(1, 2, r(8, 3)), (2, 2, r(2, 1))]).unwrap();
        assert_eq!(a.scale(&r(2, 3)).unwrap(), expect);
        assert!(a.scale(&r(0, 1)).unwrap().is_empty());
        assert_eq!(
            t(&[(0, 0, 1)]).scale(&r(7, 30)).unwrap(),
            BettiTable::from_cells([(0, 0, r(7, 30))]).unwrap()
        );
        assert!(matches!(
            a.scale(&r(-1, 2)),
            Err(TableError::NegativeScale(_))
        ));
    }

    #[test]
    fn subtract_examples() {
        assert!(t(&[(1, 2, 7)])
            .subtract_checked(&t(&[(1, 2, 7)]))
            .unwrap()
            .is_empty());
        assert_eq!(
            t(&[(1, 2, 7)]).subtract_checked(&t(&[(1, 2, 2)])).unwrap(),
            t(&[(1, 2, 5)])
        );
        assert_eq!(
            t(&[(1, 2, 1)]).subtract_checked(&t(&[(1, 2, 2)])),
            Err(TableError::NegativeEntry { p: 1, q: 2 })
        );
    }

    #[test]
    fn zero_cells_are_never_stored() {
        let a = BettiTable::from_integers(&[(0, 0, 0), (1, 1, 3)]).unwrap();
        assert_eq!(a.len(), 1);
        assert!(BettiTable::from_integers(&[(0, 0, -1)]).is_err());
    }

    #[test]
    fn dimensions() {
        let a = t(&[(0, 0, 1), (1, 2, 7), (4, 2, 1)]);
        assert_eq!(a.projective_dimension(), Some(4));
        assert_eq!(a.regularity(), Some(2));
        assert_eq!(BettiTable::new().projective_dimension(), None);
    }

    #[test]
    fn hilbert_numerator_examples() {
        assert_eq!(
            t(&[(0, 0, 1)]).hilbert_numerator().unwrap(),
            IntPoly::from_i64(&[1])
        );
        let cubic = t(&[(0, 0, 1), (1, 1, 3), (2, 1, 2)]);
        assert_eq!(
            cubic.hilbert_numerator().unwrap(),
            IntPoly::from_i64(&[1, 0, -3, 2])
        );
        let veronese_projection = t(&[(0, 0, 1), (1, 2, 7), (2, 2, 10), (3, 2, 5), (4, 2, 1)]);
        assert_eq!(
            veronese_projection.hilbert_numerator().unwrap(),
            IntPoly::from_i64(&[1, 0, 0, -7, 10, -5, 1])
        );
        let frac = BettiTable::from_cells([(1, 1, r(1, 2))]).unwrap();
        assert!(matches!(
            frac.hilbert_numerator(),
            Err(TableError::NonInteger { p: 1, q: 1, .. })
        ));
    }

    #[test]
    fn poly_division() {
        let f = IntPoly::from_i64(&[1, 0, -3, 2]);
        let g = f.div_one_minus_t().unwrap();
        let h = g.div_one_minus_t().unwrap();
        assert_eq!(h, IntPoly::from_i64(&[1, 2]));
        assert!(h.div_one_minus_t().is_none());
        assert_eq!(f.to_string(), "1 - 3t^2 + 2t^3");
    }

    #[test]
    fn normalization_shifts_generator_row() {
        let a = t(&[(0, 2, 1), (1, 4, 3)]);
        assert_eq!(a.normalized().unwrap(), t(&[(0, 0, 1), (1, 2, 3)]));
        let bad = t(&[(0, 2, 1), (1, 1, 3)]);
        assert!(matches!(
            bad.normalized(),
            Err(TableError::AboveGeneratorRow { .. })
        ));
    }

    #[test]
    fn degree_sequence_validation() {
        assert!(DegreeSequence::new(vec![0, 3, 4, 5]).is_ok());
        assert_eq!(
            DegreeSequence::new(vec![0, 3, 3]),
            Err(DegreeSequenceError::NotIncreasing(2))
        );
        assert_eq!(DegreeSequence::new(vec![]), Err(DegreeSequenceError::Empty));
        let d = DegreeSequence::parse("0, 2,3").unwrap();
        assert_eq!(d.degrees(), &[0, 2, 3]);
        assert_eq!(d.length(), 2);
        assert_eq!(d.to_string(), "(0,2,3)");
        assert!(DegreeSequence::parse("0,x").is_err());
    }
}

//! Normalized pure diagrams and the closed-form first-strand bounds.
//!
//! For a degree sequence `d = (d_0, …, d_ℓ)` the normalized diagram `π(d)` has
//! a single entry per column, at row `d_p - p`:
//!
//! ```text
//! κ_0 = 1,   κ_p = ∏_{k ≥ 1, k ≠ p} (d_k - d_0) / |d_k - d_p|   (1 ≤ p ≤ ℓ)
//! e(d) = (1/ℓ!) ∏_{k ≥ 1} (d_k - d_0)
//! ```

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::table::{BettiTable, DegreeSequence, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PureError {
    #[error("degree sequence {0} starts below degree 0 and has no table placement")]
    NegativeTwist(DegreeSequence),
    #[error("family parameter out of range: {0}")]
    FamilyRange(&'static str),
}

/// A degree sequence with its normalized betti table and multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureDiagram {
    pub degrees: DegreeSequence,
    pub table: BettiTable,
    pub multiplicity: Rational,
}

impl PureDiagram {
    /// The diagram scaled by the lcm of its denominators, with that scale factor.
    pub fn cleared(&self) -> (BigInt, BettiTable) {
        let lcm = self.table.denominator_lcm();
        let scaled = self
            .table
            .scale(&Rational::from_integer(lcm.clone()))
            .expect("lcm is positive");
        (lcm, scaled)
    }

    /// Entry of column `p` (zero past the end).
    pub fn column_entry(&self, p: usize) -> Rational {
        match self.row_of(p) {
            Some(q) => self.table.entry(p, q),
            None => Rational::zero(),
        }
    }

    /// Row `d_p - p` holding column `p`.
    pub fn row_of(&self, p: usize) -> Option<usize> {
        let d = self.degrees.get(p)?;
        Some((d - p as i64) as usize)
    }
}

/// Builds `π(d)` and `e(d)` from the Herzog–Kühl product formula.
///
/// Rows are placed at `d_p - p`, so `d_0` must be nonnegative.
pub fn hk_diagram(d: &DegreeSequence) -> Result<PureDiagram, PureError> {
    let degs = d.degrees();
    let d0 = degs[0];
    if d0 < 0 {
        return Err(PureError::NegativeTwist(d.clone()));
    }
    let ell = d.length();
    let mut table = BettiTable::new();
    table
        .set(0, d0 as usize, Rational::one())
        .expect("positive");
    for p in 1..=ell {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for k in 1..=ell {
            if k == p {
                continue;
            }
            num *= degs[k] - d0;
            den *= (degs[k] - degs[p]).abs();
        }
        let row = (degs[p] - p as i64) as usize;
        table
            .set(p, row, Rational::new(num, den))
            .expect("positive");
    }
    let prod: BigInt = degs[1..].iter().map(|&x| BigInt::from(x - d0)).product();
    let multiplicity = Rational::new(prod, factorial(ell));
    Ok(PureDiagram {
        degrees: d.clone(),
        table,
        multiplicity,
    })
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `C(n, k)` via the multiplicative formula; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `d^{e,q} = (0, q+1, q+2, …, q+e)`.
pub fn family_deq(e: u32, q: u32) -> Result<DegreeSequence, PureError> {
    if e < 1 || q < 1 {
        return Err(PureError::FamilyRange("d^{e,q} needs e >= 1 and q >= 1"));
    }
    let (e, q) = (e as i64, q as i64);
    let mut v = vec![0];
    v.extend((1..=e).map(|k| q + k));
    Ok(DegreeSequence::new(v).expect("increasing by construction"))
}

/// `d̃^{e,q} = (0, q+1, …, q+e-1, 2q+e)`.
pub fn family_tilde(e: u32, q: u32) -> Result<DegreeSequence, PureError> {
    if e < 2 || q < 1 {
        return Err(PureError::FamilyRange("d~^{e,q} needs e >= 2 and q >= 1"));
    }
    let (e, q) = (e as i64, q as i64);
    let mut v = vec![0];
    v.extend((1..e).map(|k| q + k));
    v.push(2 * q + e);
    Ok(DegreeSequence::new(v).expect("increasing by construction"))
}

/// Maximal first-strand value `C(p+q-1, q)·C(e+q, p+q)`; zero outside `1 ≤ p ≤ e`.
pub fn kappa_max(p: u32, q: u32, e: u32) -> BigInt {
    if p == 0 || p > e {
        return BigInt::zero();
    }
    let (p, q, e) = (p as u64, q as u64, e as u64);
    binomial(p + q - 1, q) * binomial(e + q, p + q)
}

/// Next-to-maximal linear-strand value `p·C(e+1, p+1) - C(e, p-1)`; zero outside `1 ≤ p ≤ e-1`.
pub fn kappa_next_max(p: u32, e: u32) -> BigInt {
    if p == 0 || p >= e {
        return BigInt::zero();
    }
    let (p, e) = (p as u64, e as u64);
    BigInt::from(p) * binomial(e + 1, p + 1) - binomial(e, p - 1)
}

//! Coefficient fields for the Koszul engine.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::linalg;
use crate::table::Rational;

/// An exact field. Elements are plain values; the field object carries any
/// parameters (such as the characteristic).
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Image of a rational, or `None` when its denominator is not invertible.
    fn embed_rational(&self, r: &Rational) -> Option<Self::Elem>;

    fn characteristic(&self) -> u64;

    /// Rank of a sparse row list. The default is field-generic elimination.
    fn rank(&self, rows: &[linalg::SparseRow<Self::Elem>]) -> usize {
        linalg::rank_by_elimination(self, rows)
    }
}

/// The rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Rational {
        a.recip()
    }
    fn embed_rational(&self, r: &Rational) -> Option<Rational> {
        Some(r.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }

    /// Clears denominators row by row and runs fraction-free integer elimination.
    fn rank(&self, rows: &[linalg::SparseRow<Rational>]) -> usize {
        let int_rows: Vec<linalg::SparseRow<BigInt>> = rows.iter().map(clear_row).collect();
        linalg::integer_rank(&int_rows)
    }
}

fn clear_row(row: &linalg::SparseRow<Rational>) -> linalg::SparseRow<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    row.iter()
        .map(|(c, v)| (*c, (v * &lcm).to_integer()))
        .collect()
}

/// The prime field `GF(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Returns `None` unless `p` is a prime below `2^31`.
    pub fn new(p: u64) -> Option<Self> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return None;
        }
        Some(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let m = n.mod_floor(&BigInt::from(self.p));
        m.to_u64().expect("residue fits")
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        debug_assert!(*a != 0);
        self.pow(*a, self.p - 2)
    }
    fn embed_rational(&self, r: &Rational) -> Option<u64> {
        let den = self.reduce_bigint(r.denom());
        if den == 0 {
            return None;
        }
        let num = self.reduce_bigint(r.numer());
        Some(self.mul(&num, &self.inv(&den)))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// Field selector used by ideal files and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    pub const DEFAULT_PRIME: u64 = 32003;

    /// Accepts `rational`, `gf P`, `gf:P` and `gfP`.
    pub fn parse(text: &str) -> Option<FieldSpec> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("rational") || t.eq_ignore_ascii_case("qq") {
            return Some(FieldSpec::Rational);
        }
        let rest = t.strip_prefix("gf").or_else(|| t.strip_prefix("GF"))?;
        let rest = rest
            .trim_start_matches([':', ' ', '('])
            .trim_end_matches(')');
        let p: u64 = rest.trim().parse().ok()?;
        PrimeField::new(p).map(|_| FieldSpec::Prime(p))
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(Self::DEFAULT_PRIME)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Prime(p) => write!(f, "gf {p}"),
        }
    }
}

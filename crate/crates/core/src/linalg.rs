//! Sparse exact linear algebra: echelon bases over a [`Field`], fraction-free
//! integer elimination, and dense Bareiss rank.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::Field;

/// Sparse vector as `(column, value)` pairs, sorted by column, no zero values.
pub type SparseRow<E> = Vec<(usize, E)>;

/// Echelon basis with monic pivots, keyed by pivot (leading) column.
///
/// Rows are not back-reduced; [`EchelonBasis::reduce`] still yields the
/// unique representative that vanishes on every pivot column.
#[derive(Debug, Clone)]
pub struct EchelonBasis<F: Field> {
    field: F,
    pivots: BTreeMap<usize, SparseRow<F::Elem>>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: F) -> Self {
        EchelonBasis {
            field,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Basis rows in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseRow<F::Elem>> {
        self.pivots.values()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `v` against the basis; the result has no entries on pivot columns.
    pub fn reduce(&self, v: &[(usize, F::Elem)]) -> SparseRow<F::Elem> {
        let f = &self.field;
        let mut work: BTreeMap<usize, F::Elem> =
            v.iter().filter(|(_, x)| !f.is_zero(x)).cloned().collect();
        let mut out = Vec::new();
        while let Some((col, coeff)) = work.pop_first() {
            match self.pivots.get(&col) {
                Some(row) => {
                    for (c, x) in row.iter().skip(1) {
                        let delta = f.mul(&coeff, x);
                        let slot = work.entry(*c).or_insert_with(|| f.zero());
                        *slot = f.sub(slot, &delta);
                        if f.is_zero(slot) {
                            work.remove(c);
                        }
                    }
                }
                None => out.push((col, coeff)),
            }
        }
        out
    }

    /// Adds `v` to the span. Returns `true` when it was independent.
    pub fn insert(&mut self, v: &[(usize, F::Elem)]) -> bool {
        let reduced = self.reduce(v);
        let Some((lead, lead_val)) = reduced.first().cloned() else {
            return false;
        };
        let f = &self.field;
        let inv = f.inv(&lead_val);
        let row: SparseRow<F::Elem> = reduced.iter().map(|(c, x)| (*c, f.mul(x, &inv))).collect();
        self.pivots.insert(lead, row);
        true
    }
}

/// Rank by inserting rows into an [`EchelonBasis`].
pub fn rank_by_elimination<F: Field>(field: &F, rows: &[SparseRow<F::Elem>]) -> usize {
    let mut basis = EchelonBasis::new(field.clone());
    for row in rows {
        basis.insert(row);
    }
    basis.rank()
}

fn primitive(mut row: SparseRow<BigInt>) -> SparseRow<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    let negate = row.first().is_some_and(|(_, x)| x.is_negative());
    if g.is_zero() {
        return row;
    }
    for (_, x) in row.iter_mut() {
        *x /= &g;
        if negate {
            *x = -&*x;
        }
    }
    row
}

// a·u - b·w, dropping zeros.
fn combine(
    a: &BigInt,
    u: &[(usize, BigInt)],
    b: &BigInt,
    w: &[(usize, BigInt)],
) -> SparseRow<BigInt> {
    let mut out = Vec::with_capacity(u.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < u.len() || j < w.len() {
        let take_u = j >= w.len() || (i < u.len() && u[i].0 < w[j].0);
        let take_w = i >= u.len() || (j < w.len() && w[j].0 < u[i].0);
        let (col, val) = if take_u {
            i += 1;
            (u[i - 1].0, a * &u[i - 1].1)
        } else if take_w {
            j += 1;
            (w[j - 1].0, -(b * &w[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (u[i - 1].0, a * &u[i - 1].1 - b * &w[j - 1].1)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    out
}

/// Rank of an integer matrix (as sparse rows) by fraction-free elimination.
///
/// Each elimination step cross-multiplies by the two leading coefficients
/// divided by their gcd, then divides the row by its content.
pub fn integer_rank(rows: &[SparseRow<BigInt>]) -> usize {
    let mut pivots: BTreeMap<usize, SparseRow<BigInt>> = BTreeMap::new();
    for row in rows {
        let mut v = primitive(row.iter().filter(|(_, x)| !x.is_zero()).cloned().collect());
        while let Some((lead, lead_val)) = v.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => {
                    let g = lead_val.gcd(&p[0].1);
                    let a = &p[0].1 / &g;
                    let b = &lead_val / &g;
                    v = primitive(combine(&a, &v, &b, p));
                }
                None => {
                    pivots.insert(lead, v);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Rank of a dense integer matrix by Bareiss elimination with row pivoting.
pub fn bareiss_rank(matrix: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let val = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = val / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// A linear map stored as the images of the source basis vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap<E> {
    pub source_dim: usize,
    pub target_dim: usize,
    pub images: Vec<SparseRow<E>>,
}

impl<E: Clone> LinearMap<E> {
    pub fn zero(source_dim: usize, target_dim: usize) -> Self {
        LinearMap {
            source_dim,
            target_dim,
            images: vec![Vec::new(); source_dim],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Vec::is_empty)
    }

    pub fn rank<F: Field<Elem = E>>(&self, field: &F) -> usize {
        field.rank(&self.images)
    }

    /// `after ∘ self`.
    pub fn then<F: Field<Elem = E>>(&self, after: &LinearMap<E>, field: &F) -> LinearMap<E> {
        assert_eq!(self.target_dim, after.source_dim, "dimension mismatch");
        let images = self
            .images
            .iter()
            .map(|v| {
                let mut acc: BTreeMap<usize, E> = BTreeMap::new();
                for (j, x) in v {
                    for (k, y) in &after.images[*j] {
                        let slot = acc.entry(*k).or_insert_with(|| field.zero());
                        *slot = field.add(slot, &field.mul(x, y));
                    }
                }
                acc.into_iter().filter(|(_, x)| !field.is_zero(x)).collect()
            })
            .collect();
        LinearMap {
            source_dim: self.source_dim,
            target_dim: after.target_dim,
            images,
        }
    }

    /// Dense rows-by-target layout, mostly for inspection and tests.
    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        self.images
            .iter()
            .map(|v| {
                let mut row = vec![field.zero(); self.target_dim];
                for (c, x) in v {
                    row[*c] = x.clone();
                }
                row
            })
            .collect()
    }
}

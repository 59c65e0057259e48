//! Graded betti numbers of `S/I` as Koszul cohomology.
//!
//! `κ_{p,q}` is the middle cohomology of
//!
//! ```text
//! Λ^{p+1} V ⊗ M_{q-1} → Λ^p V ⊗ M_q → Λ^{p-1} V ⊗ M_{q+1}
//! ```
//!
//! with `M = S/I`. Each graded piece `M_q` is presented by the standard
//! monomials left over after row-reducing `I_q` inside `S_q`; the
//! differential sends `e_{i_1} ∧ … ∧ e_{i_p} ⊗ f` to
//! `Σ_j (-1)^{j+1} e_{i_1} ∧ … ê_{i_j} … ∧ e_{i_p} ⊗ (x_{i_j} f mod I)`.
//!
//! Ideals are used as given. Pass the saturated ideal to get the coordinate
//! ring of a scheme.

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::ideal::{monomials_of_degree, Ideal, Monomial};
use crate::linalg::{EchelonBasis, LinearMap, SparseRow};
use crate::pure::binomial;
use crate::table::{BettiTable, IntPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KoszulError {
    #[error("coefficient {0} is not defined over {1}")]
    CoefficientNotInField(String, FieldSpec),
    #[error("invalid prime field {0}")]
    BadPrime(u64),
    #[error("generator has degree 0")]
    ConstantGenerator,
}

/// `S_q`, `I_q` and `M_q = S_q / I_q` in one degree.
#[derive(Debug, Clone)]
pub struct GradedPiece<F: Field> {
    pub degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    ideal_part: EchelonBasis<F>,
    standard: Vec<usize>,
    standard_pos: HashMap<usize, usize>,
}

impl<F: Field> GradedPiece<F> {
    pub fn dim_ambient(&self) -> usize {
        self.monomials.len()
    }

    pub fn dim_ideal(&self) -> usize {
        self.ideal_part.rank()
    }

    /// `dim M_q`.
    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    /// Ambient monomial basis of `S_q`, largest first.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Monomials whose classes form the basis of `M_q`.
    pub fn standard_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.standard.iter().map(|&i| &self.monomials[i])
    }

    /// Coordinates of `m mod I_q` in the standard-monomial basis of `M_q`.
    pub fn normal_form(&self, m: &Monomial, field: &F) -> SparseRow<F::Elem> {
        let col = self.index[m];
        self.ideal_part
            .reduce(&[(col, field.one())])
            .into_iter()
            .map(|(c, x)| (self.standard_pos[&c], x))
            .collect()
    }
}

/// Builds `I_q` as the span of `m·g` over generators `g` of degree at most `q`.
pub fn graded_piece<F: Field>(
    ideal: &Ideal,
    field: &F,
    q: u32,
) -> Result<GradedPiece<F>, KoszulError> {
    let n = ideal.num_vars;
    let monomials = monomials_of_degree(n, q);
    let index: HashMap<Monomial, usize> = monomials
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut basis = EchelonBasis::new(field.clone());
    for g in &ideal.generators {
        let Some(dg) = g.homogeneous_degree() else {
            continue;
        };
        if dg == 0 {
            return Err(KoszulError::ConstantGenerator);
        }
        if dg > q {
            continue;
        }
        let coeffs: Vec<(&Monomial, F::Elem)> =
            g.terms()
                .map(|(m, c)| {
                    field.embed_rational(c).map(|x| (m, x)).ok_or_else(|| {
                        KoszulError::CoefficientNotInField(c.to_string(), ideal.field)
                    })
                })
                .collect::<Result<_, _>>()?;
        for shift in monomials_of_degree(n, q - dg) {
            let mut row: SparseRow<F::Elem> = coeffs
                .iter()
                .filter(|(_, x)| !field.is_zero(x))
                .map(|(m, x)| (index[&m.mul(&shift)], x.clone()))
                .collect();
            row.sort_by_key(|(c, _)| *c);
            basis.insert(&row);
        }
    }
    let standard: Vec<usize> = (0..monomials.len())
        .filter(|c| !basis.is_pivot(*c))
        .collect();
    let standard_pos = standard.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    Ok(GradedPiece {
        degree: q,
        monomials,
        index,
        ideal_part: basis,
        standard,
        standard_pos,
    })
}

/// Strictly increasing index tuples of size `p` from `0..n`, in lex order.
pub fn wedge_basis(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < p - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= n {
        rec(0, n, p, &mut Vec::with_capacity(p), &mut out);
    }
    out
}

/// Koszul complex of `S/I` with graded pieces cached through a fixed degree.
#[derive(Debug, Clone)]
pub struct KoszulEngine<F: Field> {
    field: F,
    num_vars: usize,
    pieces: Vec<GradedPiece<F>>,
    wedges: Vec<Vec<Vec<usize>>>,
    wedge_index: Vec<HashMap<Vec<usize>, usize>>,
}

impl<F: Field> KoszulEngine<F> {
    /// Precomputes `M_0, …, M_{max_degree}`.
    pub fn new(ideal: &Ideal, field: F, max_degree: u32) -> Result<Self, KoszulError> {
        let pieces = (0..=max_degree)
            .into_par_iter()
            .map(|q| graded_piece(ideal, &field, q))
            .collect::<Result<Vec<_>, _>>()?;
        let n = ideal.num_vars;
        let wedges: Vec<Vec<Vec<usize>>> = (0..=n).map(|p| wedge_basis(n, p)).collect();
        let wedge_index = wedges
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        Ok(KoszulEngine {
            field,
            num_vars: n,
            pieces,
            wedges,
            wedge_index,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn max_degree(&self) -> u32 {
        self.pieces.len() as u32 - 1
    }

    pub fn piece(&self, q: u32) -> &GradedPiece<F> {
        &self.pieces[q as usize]
    }

    /// `dim M_q` for `q ≤ max_degree`.
    pub fn hilbert_function(&self) -> Vec<usize> {
        self.pieces.iter().map(GradedPiece::dim).collect()
    }

    fn wedge_dim(&self, p: usize) -> usize {
        self.wedges.get(p).map_or(0, Vec::len)
    }

    /// `dim Λ^p V ⊗ M_q`.
    pub fn chain_dim(&self, p: usize, q: u32) -> usize {
        self.wedge_dim(p) * self.piece(q).dim()
    }

    /// `δ: Λ^p V ⊗ M_q → Λ^{p-1} V ⊗ M_{q+1}`. Needs `q + 1 ≤ max_degree`.
    ///
    /// Basis of `Λ^p V ⊗ M_q`: wedge tuple outer (lex), standard monomial inner.
    pub fn differential(&self, p: usize, q: u32) -> LinearMap<F::Elem> {
        let src_m = self.piece(q);
        let dst_m = self.piece(q + 1);
        let source_dim = self.chain_dim(p, q);
        let target_dim = if p == 0 {
            0
        } else {
            self.chain_dim(p - 1, q + 1)
        };
        if p == 0 || p > self.num_vars || source_dim == 0 || target_dim == 0 {
            return LinearMap::zero(source_dim, target_dim);
        }
        let f = &self.field;
        let std_monos: Vec<&Monomial> = src_m.standard_monomials().collect();
        // x_i · m mod I for every standard monomial and variable.
        let products: Vec<Vec<SparseRow<F::Elem>>> = std_monos
            .iter()
            .map(|m| {
                (0..self.num_vars)
                    .map(|i| dst_m.normal_form(&m.times_var(i), f))
                    .collect()
            })
            .collect();
        let dim_dst = dst_m.dim();
        let mut images = Vec::with_capacity(source_dim);
        for subset in &self.wedges[p] {
            for prods in &products {
                let mut image: SparseRow<F::Elem> = Vec::new();
                for (j, &var) in subset.iter().enumerate() {
                    let mut face = subset.clone();
                    face.remove(j);
                    let t = self.wedge_index[p - 1][&face];
                    let negate = j % 2 == 1;
                    for (k, x) in &prods[var] {
                        let val = if negate { f.neg(x) } else { x.clone() };
                        image.push((t * dim_dst + k, val));
                    }
                }
                // Faces are distinct, so no column repeats.
                image.sort_by_key(|(c, _)| *c);
                images.push(image);
            }
        }
        LinearMap {
            source_dim,
            target_dim,
            images,
        }
    }

    /// Rank of `δ_{p,q}`.
    pub fn differential_rank(&self, p: usize, q: u32) -> usize {
        self.differential(p, q).rank(&self.field)
    }

    /// `κ_{p,q} = dim ker δ_{p,q} - rank δ_{p+1,q-1}`. Needs `q + 1 ≤ max_degree`.
    pub fn betti_number(&self, p: usize, q: u32) -> usize {
        let outgoing = self.differential_rank(p, q);
        let incoming = if q == 0 {
            0
        } else {
            self.differential_rank(p + 1, q - 1)
        };
        self.chain_dim(p, q) - outgoing - incoming
    }

    /// All `κ_{p,q}` with `p ≤ r+1`, `q ≤ q_max`. Needs `q_max + 1 ≤ max_degree`.
    pub fn betti_table(&self, q_max: u32) -> BettiResult {
        let n = self.num_vars;
        let cells: Vec<(usize, u32)> = (1..=n)
            .flat_map(|p| (0..=q_max).map(move |q| (p, q)))
            .collect();
        let ranks: HashMap<(usize, u32), usize> = cells
            .par_iter()
            .map(|&(p, q)| ((p, q), self.differential_rank(p, q)))
            .collect();
        let rank = |p: usize, q: u32| ranks.get(&(p, q)).copied().unwrap_or(0);
        let mut table = BettiTable::new();
        for p in 0..=n {
            for q in 0..=q_max {
                let incoming = if q == 0 { 0 } else { rank(p + 1, q - 1) };
                let value = self.chain_dim(p, q) - rank(p, q) - incoming;
                table
                    .set(p, q as usize, Rational::from_integer(value.into()))
                    .expect("nonnegative");
            }
        }
        let row_empty = |q: u32| table.row(q as usize).next().is_none();
        let complete = q_max >= 1 && row_empty(q_max) && row_empty(q_max - 1);
        BettiResult {
            table,
            complete,
            hilbert_function: self.hilbert_function()[..=q_max as usize].to_vec(),
        }
    }

    /// `dim I_q - dim(S_1 · I_{q-1})`: the number of minimal generators of degree `q`.
    pub fn minimal_generators_in_degree(&self, q: u32) -> usize {
        let piece = self.piece(q);
        if q == 0 {
            return piece.dim_ideal();
        }
        let lower = self.piece(q - 1);
        let mut span = EchelonBasis::new(self.field.clone());
        for row in lower.ideal_part.rows() {
            for i in 0..self.num_vars {
                let mut shifted: SparseRow<F::Elem> = row
                    .iter()
                    .map(|(c, x)| (piece.index[&lower.monomials[*c].times_var(i)], x.clone()))
                    .collect();
                shifted.sort_by_key(|(c, _)| *c);
                span.insert(&shifted);
            }
        }
        piece.dim_ideal() - span.rank()
    }
}

/// A computed table with its completeness flag and Hilbert function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiResult {
    pub table: BettiTable,
    /// Rows `q_max` and `q_max - 1` are both empty. Advisory only.
    pub complete: bool,
    /// `dim M_q` for `q = 0, …, q_max`.
    pub hilbert_function: Vec<usize>,
}

fn engine_for<F: Field>(ideal: &Ideal, field: F, q_max: u32) -> Result<BettiResult, KoszulError> {
    Ok(KoszulEngine::new(ideal, field, q_max + 1)?.betti_table(q_max))
}

/// Betti table of `S/I` through row `q_max`, over the ideal's field.
pub fn betti_table(ideal: &Ideal, q_max: u32) -> Result<BettiResult, KoszulError> {
    match ideal.field {
        FieldSpec::Rational => engine_for(ideal, Rationals, q_max),
        FieldSpec::Prime(p) => {
            let f = PrimeField::new(p).ok_or(KoszulError::BadPrime(p))?;
            engine_for(ideal, f, q_max)
        }
    }
}

/// A single `κ_{p,q}` over the ideal's field.
pub fn betti_number(ideal: &Ideal, p: usize, q: u32) -> Result<usize, KoszulError> {
    fn go<F: Field>(ideal: &Ideal, f: F, p: usize, q: u32) -> Result<usize, KoszulError> {
        Ok(KoszulEngine::new(ideal, f, q + 1)?.betti_number(p, q))
    }
    match ideal.field {
        FieldSpec::Rational => go(ideal, Rationals, p, q),
        FieldSpec::Prime(pr) => go(
            ideal,
            PrimeField::new(pr).ok_or(KoszulError::BadPrime(pr))?,
            p,
            q,
        ),
    }
}

/// `dim M_q` over the ideal's field.
pub fn graded_piece_dim(ideal: &Ideal, q: u32) -> Result<usize, KoszulError> {
    match ideal.field {
        FieldSpec::Rational => Ok(graded_piece(ideal, &Rationals, q)?.dim()),
        FieldSpec::Prime(p) => {
            let f = PrimeField::new(p).ok_or(KoszulError::BadPrime(p))?;
            Ok(graded_piece(ideal, &f, q)?.dim())
        }
    }
}

/// Compares `Σ (-1)^p κ_{p,q} t^{p+q}` with `(1-t)^{r+1} Σ dim M_q t^q`
/// through degree `q_max`.
pub fn hilbert_consistency_with(
    num_vars: usize,
    hilbert_function: &[usize],
    table: &BettiTable,
    q_max: u32,
) -> bool {
    let Ok(numerator) = table.hilbert_numerator() else {
        return false;
    };
    let series = IntPoly::new(hilbert_function.iter().map(|&h| h.into()).collect());
    let expected = IntPoly::one_minus_t_pow(num_vars).mul(&series);
    (0..=q_max as usize).all(|k| numerator.coeff(k) == expected.coeff(k))
}

/// [`hilbert_consistency_with`], recomputing `dim M_q` from the ideal.
pub fn hilbert_consistency(
    ideal: &Ideal,
    table: &BettiTable,
    q_max: u32,
) -> Result<bool, KoszulError> {
    let dims = (0..=q_max)
        .map(|q| graded_piece_dim(ideal, q))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(hilbert_consistency_with(
        ideal.num_vars,
        &dims,
        table,
        q_max,
    ))
}

/// `dim S_q = C(q + r, r)`.
pub fn ambient_dim(num_vars: usize, q: u32) -> num_bigint::BigInt {
    binomial(q as u64 + num_vars as u64 - 1, num_vars as u64 - 1)
}

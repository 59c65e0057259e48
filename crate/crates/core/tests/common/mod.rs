#![allow(dead_code)]

use betti_core::ideal::{Monomial, Polynomial};
use betti_core::*;
use proptest::prelude::*;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn arb_rational() -> impl Strategy<Value = Rational> {
    (1i64..200, 1i64..=30).prop_map(|(n, d)| rat(n, d))
}

pub fn arb_table() -> impl Strategy<Value = BettiTable> {
    prop::collection::vec((0usize..6, 0usize..5, arb_rational()), 0..12).prop_map(|cells| {
        let mut t = BettiTable::new();
        for (p, q, v) in cells {
            t.set(p, q, v).unwrap();
        }
        t
    })
}

pub fn arb_sequence(max_len: usize) -> impl Strategy<Value = DegreeSequence> {
    (0i64..3, prop::collection::vec(1i64..4, 1..=max_len)).prop_map(|(d0, gaps)| {
        let mut d = vec![d0];
        for g in gaps {
            d.push(d.last().unwrap() + g);
        }
        DegreeSequence::new(d).unwrap()
    })
}

/// A chain `d^0 < d^1 < …`: each step either drops the last degree or raises
/// one degree while staying strictly increasing.
pub fn arb_chain() -> impl Strategy<Value = Vec<DegreeSequence>> {
    (
        arb_sequence(5),
        prop::collection::vec((any::<bool>(), 0usize..6, 1i64..3), 0..6),
    )
        .prop_map(|(start, moves)| {
            let mut chain = vec![start];
            for (shorten, idx, bump) in moves {
                let cur = chain.last().unwrap().degrees().to_vec();
                let mut next = cur.clone();
                if shorten && next.len() > 1 {
                    next.pop();
                } else {
                    let i = idx % next.len();
                    next[i] += bump;
                    for j in i + 1..next.len() {
                        if next[j] <= next[j - 1] {
                            next[j] = next[j - 1] + 1;
                        }
                    }
                }
                if next != cur {
                    chain.push(DegreeSequence::new(next).unwrap());
                }
            }
            chain
        })
}

pub fn combine(chain: &[DegreeSequence], coeffs: &[Rational]) -> BettiTable {
    chain
        .iter()
        .zip(coeffs)
        .fold(BettiTable::new(), |acc, (d, c)| {
            acc.add(&hk_diagram(d).unwrap().table.scale(c).unwrap())
        })
}

pub fn arb_ideal() -> impl Strategy<Value = Ideal> {
    let gen = (
        1u32..=3,
        prop::collection::vec(
            (prop::collection::vec(0u32..3, 3), -3i64..=3, 1i64..=3),
            1..4,
        ),
    );
    prop::collection::vec(gen, 1..4).prop_map(|gens| {
        let polys = gens
            .into_iter()
            .filter_map(|(deg, terms)| {
                let poly = Polynomial::from_terms(
                    terms
                        .into_iter()
                        .map(|(weights, n, d)| (monomial_of_degree(&weights, deg), rat(n, d))),
                );
                (!poly.is_zero()).then_some(poly)
            })
            .collect();
        Ideal::new(3, FieldSpec::Rational, polys)
    })
}

// Spreads `deg` across three variables following the weights.
pub fn monomial_of_degree(weights: &[u32], deg: u32) -> Monomial {
    let mut exps = vec![0u32; 3];
    let mut left = deg;
    for (i, &w) in weights.iter().enumerate().take(2) {
        let take = w.min(left);
        exps[i] = take;
        left -= take;
    }
    exps[2] += left;
    Monomial::new(exps)
}

/// 2×2 minors of the `2 × c` Hankel matrix: the rational normal curve of degree `c` in `P^c`.
pub fn rational_normal_curve(c: usize, field: FieldSpec) -> Ideal {
    let mut gens = Vec::new();
    for i in 0..c {
        for j in i + 1..c {
            gens.push(format!("x{i}*x{} - x{}*x{j}", j + 1, i + 1));
        }
    }
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    Ideal::from_strs(c + 1, field, &refs).unwrap()
}

/// 2×2 minors of the generic symmetric 3×3 matrix: the Veronese surface in `P^5`.
pub fn veronese_surface(field: FieldSpec) -> Ideal {
    // [[x0 x1 x2] [x1 x3 x4] [x2 x4 x5]]
    let gens = [
        "x0*x3 - x1^2",
        "x0*x4 - x1*x2",
        "x0*x5 - x2^2",
        "x1*x4 - x2*x3",
        "x1*x5 - x2*x4",
        "x3*x5 - x4^2",
    ];
    Ideal::from_strs(6, field, &gens).unwrap()
}

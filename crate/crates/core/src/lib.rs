//! Exact graded betti tables.
//!
//! Tables hold nonnegative rationals indexed by homological degree `p` and row
//! `q`. On top of them sit Herzog–Kühl pure diagrams, greedy Boij–Söderberg
//! decomposition, Koszul-cohomology computation of betti tables of `S/I`, and
//! checks against the maximal and next-to-maximal first-strand bounds.
//!
//! ```
//! use betti_core::{hk_diagram, DegreeSequence};
//!
//! let d = DegreeSequence::parse("0,3,4,5").unwrap();
//! let pure = hk_diagram(&d).unwrap();
//! assert_eq!(pure.multiplicity.to_string(), "10");
//! let text = betti_core::table_to_text(&pure.table);
//! assert!(text.ends_with("2: . 10 15 6\n"));
//! ```

pub mod bounds;
pub mod decompose;
pub mod field;
pub mod format;
pub mod ideal;
pub mod koszul;
pub mod linalg;
pub mod pure;
pub mod table;
pub mod verify;

pub use bounds::{
    check_first_strand, check_ndm, check_next_to_max, degree_bounds, first_nontrivial_strand,
    Assumptions, BoundsError, StrandReport, Verdict,
};
pub use decompose::{
    bs_decompose, bs_decompose_default, multiplicity_from_decomposition, DecomposeError,
    Decomposition, NotInCone,
};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use format::{
    table_from_json, table_from_str, table_from_text, table_to_json, table_to_json_value,
    table_to_text, ParseError, ParseErrorKind,
};
pub use ideal::{parse_ideal, Ideal, Monomial, Polynomial};
pub use koszul::{betti_table, hilbert_consistency, BettiResult, KoszulEngine, KoszulError};
pub use pure::{
    binomial, family_deq, family_tilde, hk_diagram, kappa_max, kappa_next_max, PureDiagram,
    PureError,
};
pub use table::{BettiTable, DegreeSequence, IntPoly, Rational, TableError};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/tables.md")]
    mod tables {}
    #[doc = include_str!("../../../book/src/pure.md")]
    mod pure {}
    #[doc = include_str!("../../../book/src/decomposition.md")]
    mod decomposition {}
    #[doc = include_str!("../../../book/src/koszul.md")]
    mod koszul {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

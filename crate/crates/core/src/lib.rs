//! A workbench for finite universal algebra: congruence lattices, factor
//! congruences and direct decompositions, central elements and their Boolean
//! algebra, principal-congruence witnesses, free algebras of finitely
//! generated varieties, and pushout-of-quotient machinery — all on finite
//! evidence, with exhaustive checkers for the definability, stability and
//! Fraser–Horn style properties these notions interact through.

pub mod algebra;
pub mod caps;
pub mod central;
pub mod congruence;
pub mod error;
mod exec;
pub mod factor;
pub mod fixtures;
pub mod formula;
pub mod free;
pub mod io;
pub mod transfer;

pub use algebra::{
    check_zero_one, eval_term, product, quotient, subalgebra_generated,
    validate_homomorphism, FiniteAlgebra, Homomorphism, OpSymbol, ProductAlgebra,
    QuotientAlgebra, Signature, Term,
};
pub use caps::Caps;
pub use central::{
    analyze_homomorphism, central_elements, check_dp, check_formula_l, check_formula_r,
    check_lexdfc, check_rexdfc, CentralAlgebra, CentralElement, PreservationReport,
};
pub use congruence::{
    all_congruences, cg, cg_tuples, join, maltsev_witness, solve_system, Congruence,
    CongruenceSystem, MaltsevChain, Relation,
};
pub use error::{Error, Result};
pub use factor::{
    check_fhp, decompose, factor_pairs, factorize, Decomposition, FactorPair, FhpReport,
};
pub use formula::PCFormula;
pub use free::{eval_pcformula, free_algebra, synthesize_right_formula, FreeAlgebra, Synthesis};
pub use transfer::{
    codisjointness_check, pushout_quotient, stability_pushout_check, CodisjointReport,
    PushoutSquare, StabilityReport,
};

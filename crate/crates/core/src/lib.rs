//! Rational cuspidal divisor classes on X0(N), an admissibility screen for
//! conductors of elliptic curves with odd modular degree, and explicit
//! families of such curves.

pub mod acceptance;
pub mod arith;
pub mod curves;
pub mod error;
pub mod eta;
pub mod hecke;
pub mod level;
pub mod matrix;
pub mod parse;
pub mod screen;

pub use arith::{Factorization, Int, Rat};
pub use error::{Error, Result};
pub use eta::{
    class_order, class_order_with, closed_form_order, divisor_of_eta_vector, eta_valuation, is_modular_function,
    lambda_map, EtaExponentVector, LambdaMap, OrderCertificate, TableShape,
};
pub use level::{Cusp, CuspDivisor, Level, TensorDecomposition};
pub use parse::parse_divisor;
pub use hecke::{
    atkin_lehner_matrix, hecke_matrix, obstruction_witness, verify_newness, CuspidalOperator,
    NewnessReport, SignAssignment, Witness,
};
pub use screen::{classify_conductor, classify_elliptic, CaseTag, Verdict};
pub use curves::{conductor, FamilyCandidate, WeierstrassModel};
pub use acceptance::{run_all, CriterionReport, Scope};

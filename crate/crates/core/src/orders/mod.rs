//! Reduction orders used as certificate parameters.

mod kbo;
mod poly;

use std::fmt;

use thiserror::Error;

use crate::term::Term;

pub use kbo::{kbo_compare, KboParams, Precedence, SymbolWeight};
pub use poly::{
    absorb, difference, poly_compare, poly_of_term, Absorption, AbsorptionMove, ArgVar, Monomial,
    PolyInterpretation, Polynomial, SymbolInterpretation,
};

/// Outcome of comparing two terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum OrderDecision {
    /// strictly decreasing
    Gt,
    /// weakly decreasing, not shown strict
    Ge,
    /// not even weakly decreasing
    Nge,
}

impl OrderDecision {
    pub fn is_strict(self) -> bool {
        self == OrderDecision::Gt
    }

    pub fn is_weak(self) -> bool {
        self != OrderDecision::Nge
    }
}

impl fmt::Display for OrderDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderDecision::Gt => "GT",
            OrderDecision::Ge => "GE",
            OrderDecision::Nge => "NGE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("w0 must be positive")]
    ZeroW0,
    #[error("constant {symbol} has weight {weight} below w0 = {w0}")]
    ConstantBelowW0 { symbol: String, weight: u64, w0: u64 },
    #[error("unary symbol {symbol} has weight 0 but is not greater than {other}")]
    UnaryZeroNotMaximal { symbol: String, other: String },
    #[error("precedence has a cycle through {0}")]
    PrecedenceCycle(String),
    #[error("symbol {0} is listed twice")]
    DuplicateSymbol(String),
    #[error("interpretation of {symbol}/{arity} mentions argument x{index}")]
    ArgumentOutOfRange { symbol: String, arity: usize, index: usize },
    #[error("no interpretation for symbol {0}")]
    UninterpretedSymbol(String),
    #[error("symbol {symbol} is interpreted with arity {expected} but used with arity {found}")]
    ArityMismatch { symbol: String, expected: usize, found: usize },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ReductionOrder {
    Kbo(KboParams),
    Poly(PolyInterpretation),
}

impl ReductionOrder {
    pub fn name(&self) -> &'static str {
        match self {
            ReductionOrder::Kbo(_) => "Knuth-Bendix order",
            ReductionOrder::Poly(_) => "polynomial interpretation",
        }
    }
}

pub fn order_compare(order: &ReductionOrder, s: &Term, t: &Term) -> Result<OrderDecision, OrderError> {
    match order {
        ReductionOrder::Kbo(p) => Ok(kbo_compare(p, s, t)),
        ReductionOrder::Poly(i) => Ok(poly_compare(&poly_of_term(i, s)?, &poly_of_term(i, t)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    #[test]
    fn identity_interpretation_is_weak_on_equal_terms() {
        let i = PolyInterpretation::new([("f".to_string(), 1, Polynomial::var(ArgVar(1)))]).unwrap();
        let t = parse_term("f(x)", &["x"]).unwrap();
        assert_eq!(order_compare(&ReductionOrder::Poly(i), &t, &t), Ok(OrderDecision::Ge));
    }

    #[test]
    fn errors_propagate() {
        let i = PolyInterpretation::default();
        let t = parse_term("f(x)", &["x"]).unwrap();
        assert!(order_compare(&ReductionOrder::Poly(i), &t, &t).is_err());
    }
}

//! Polynomial interpretations over the naturals.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use super::{OrderDecision, OrderError};
use crate::term::Term;

/// A power product, e.g. `x²y`. Variables with exponent zero are never stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial<V: Ord>(BTreeMap<V, u32>);

impl<V: Ord + Clone> Monomial<V> {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(v: V) -> Self {
        Monomial::power(v, 1)
    }

    pub fn power(v: V, e: u32) -> Self {
        let mut m = BTreeMap::new();
        if e > 0 {
            m.insert(v, e);
        }
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> impl Iterator<Item = (&V, u32)> {
        self.0.iter().map(|(v, &e)| (v, e))
    }

    pub fn exponent(&self, v: &V) -> u32 {
        self.0.get(v).copied().unwrap_or(0)
    }

    /// Componentwise `self ≤ other`.
    pub fn divides(&self, other: &Monomial<V>) -> bool {
        self.0.iter().all(|(v, &e)| other.exponent(v) >= e)
    }

    pub fn same_support(&self, other: &Monomial<V>) -> bool {
        self.0.len() == other.0.len() && self.0.keys().all(|v| other.0.contains_key(v))
    }

    pub fn mul(&self, other: &Monomial<V>) -> Monomial<V> {
        let mut m = self.0.clone();
        for (v, &e) in &other.0 {
            *m.entry(v.clone()).or_insert(0) += e;
        }
        Monomial(m)
    }

    pub fn eval(&self, assignment: &impl Fn(&V) -> u64) -> BigUint {
        self.0
            .iter()
            .map(|(v, &e)| BigUint::from(assignment(v)).pow(e))
            .fold(BigUint::one(), |a, b| a * b)
    }
}

/// Polynomial with natural coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial<V: Ord = String>(BTreeMap<Monomial<V>, BigUint>);

impl<V: Ord + Clone> Default for Polynomial<V> {
    fn default() -> Self {
        Polynomial(BTreeMap::new())
    }
}

impl<V: Ord + Clone> Polynomial<V> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigUint>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: V) -> Self {
        Self::term(1u32, Monomial::var(v))
    }

    pub fn term(c: impl Into<BigUint>, m: Monomial<V>) -> Self {
        let c = c.into();
        let mut p = BTreeMap::new();
        if !c.is_zero() {
            p.insert(m, c);
        }
        Polynomial(p)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<V>, &BigUint)> {
        self.0.iter()
    }

    pub fn coefficient(&self, m: &Monomial<V>) -> BigUint {
        self.0.get(m).cloned().unwrap_or_default()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Polynomial::constant(1u32), |acc, _| &acc * self)
    }

    pub fn eval(&self, assignment: &impl Fn(&V) -> u64) -> BigUint {
        self.0.iter().map(|(m, c)| c * m.eval(assignment)).sum()
    }

    /// Variables that occur in some monomial.
    pub fn vars(&self) -> impl Iterator<Item = &V> {
        let mut vs: Vec<&V> = self.0.keys().flat_map(|m| m.0.keys()).collect();
        vs.sort();
        vs.dedup();
        vs.into_iter()
    }
}

impl<V: Ord + Clone> Add for &Polynomial<V> {
    type Output = Polynomial<V>;

    fn add(self, rhs: &Polynomial<V>) -> Polynomial<V> {
        let mut out = self.0.clone();
        for (m, c) in &rhs.0 {
            *out.entry(m.clone()).or_default() += c;
        }
        Polynomial(out)
    }
}

impl<V: Ord + Clone> Mul for &Polynomial<V> {
    type Output = Polynomial<V>;

    fn mul(self, rhs: &Polynomial<V>) -> Polynomial<V> {
        let mut out: BTreeMap<Monomial<V>, BigUint> = BTreeMap::new();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &rhs.0 {
                *out.entry(m1.mul(m2)).or_default() += c1 * c2;
            }
        }
        Polynomial(out)
    }
}

impl<V: Ord + Clone + fmt::Display> fmt::Display for Polynomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.0.iter().collect();
        terms.sort_by_key(|(m, _)| (Reverse(m.degree()), *m));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut parts = Vec::new();
            if m.is_constant() || !c.is_one() {
                parts.push(c.to_string());
            }
            for (v, e) in m.exponents() {
                parts.push(if e == 1 { v.to_string() } else { format!("{v}^{e}") });
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Formal argument `x_i` (1-based) of an interpreted function symbol.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ArgVar(pub usize);

impl fmt::Display for ArgVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolInterpretation {
    pub arity: usize,
    pub poly: Polynomial<ArgVar>,
}

/// Maps each function symbol to a polynomial over its formal arguments.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PolyInterpretation {
    symbols: BTreeMap<String, SymbolInterpretation>,
}

impl PolyInterpretation {
    pub fn new(
        entries: impl IntoIterator<Item = (String, usize, Polynomial<ArgVar>)>,
    ) -> Result<Self, OrderError> {
        let mut symbols = BTreeMap::new();
        for (name, arity, poly) in entries {
            if let Some(v) = poly.vars().find(|v| v.0 == 0 || v.0 > arity) {
                return Err(OrderError::ArgumentOutOfRange { symbol: name, arity, index: v.0 });
            }
            if symbols.contains_key(&name) {
                return Err(OrderError::DuplicateSymbol(name));
            }
            symbols.insert(name, SymbolInterpretation { arity, poly });
        }
        Ok(PolyInterpretation { symbols })
    }

    pub fn get(&self, symbol: &str) -> Option<&SymbolInterpretation> {
        self.symbols.get(symbol)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &SymbolInterpretation)> {
        self.symbols.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// First symbol whose interpretation is not strictly monotone in every
    /// argument, if any.
    ///
    /// An argument counts as strictly monotone when some monomial is a pure
    /// positive power of it.
    pub fn non_monotone_symbol(&self) -> Option<&str> {
        self.symbols.iter().find_map(|(name, si)| {
            let ok = (1..=si.arity).all(|i| {
                si.poly.terms().any(|(m, _)| m.0.len() == 1 && m.exponent(&ArgVar(i)) > 0)
            });
            (!ok).then_some(name.as_str())
        })
    }
}

/// Interprets `t` homomorphically; variables stand for themselves.
pub fn poly_of_term(interp: &PolyInterpretation, t: &Term) -> Result<Polynomial, OrderError> {
    match t {
        Term::Var(x) => Ok(Polynomial::var(x.clone())),
        Term::App(f, args) => {
            let si = interp.get(f).ok_or_else(|| OrderError::UninterpretedSymbol(f.clone()))?;
            if si.arity != args.len() {
                return Err(OrderError::ArityMismatch { symbol: f.clone(), expected: si.arity, found: args.len() });
            }
            let args = args.iter().map(|a| poly_of_term(interp, a)).collect::<Result<Vec<_>, _>>()?;
            let mut out = Polynomial::zero();
            for (m, c) in si.poly.terms() {
                let mut prod = Polynomial::constant(c.clone());
                for (v, e) in m.exponents() {
                    prod = &prod * &args[v.0 - 1].pow(e);
                }
                out = &out + &prod;
            }
            Ok(out)
        }
    }
}

/// One unit transfer in the absorption procedure: `amount` of the positive
/// coefficient at `donor` covers a deficit at `deficit`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbsorptionMove<V: Ord> {
    pub donor: Monomial<V>,
    pub deficit: Monomial<V>,
    pub amount: BigUint,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Absorption<V: Ord> {
    pub nonnegative: bool,
    pub moves: Vec<AbsorptionMove<V>>,
}

/// Tries to show that a polynomial with integer coefficients is nonnegative
/// on all natural assignments.
///
/// A negative coefficient at `x^β` may be covered by positive coefficients at
/// `x^α` with `β ≤ α` componentwise and the same set of variables, since then
/// `x^α ≥ x^β` pointwise over the naturals. Deficits are handled in
/// monomial order, donors by decreasing degree.
pub fn absorb<V: Ord + Clone>(diff: &BTreeMap<Monomial<V>, BigInt>) -> Absorption<V> {
    let mut coeffs = diff.clone();
    let mut moves = Vec::new();
    let deficits: Vec<Monomial<V>> =
        coeffs.iter().filter(|(_, c)| c.sign() == Sign::Minus).map(|(m, _)| m.clone()).collect();
    for beta in deficits {
        let mut need: BigInt = -coeffs[&beta].clone();
        let mut donors: Vec<Monomial<V>> = coeffs
            .iter()
            .filter(|(alpha, c)| c.sign() == Sign::Plus && beta.divides(alpha) && beta.same_support(alpha))
            .map(|(alpha, _)| alpha.clone())
            .collect();
        donors.sort_by(|a, b| b.degree().cmp(&a.degree()).then_with(|| a.cmp(b)));
        for alpha in donors {
            if need.is_zero() {
                break;
            }
            let avail = coeffs[&alpha].clone();
            let take = if avail < need { avail } else { need.clone() };
            *coeffs.get_mut(&alpha).unwrap() -= &take;
            *coeffs.get_mut(&beta).unwrap() += &take;
            need -= &take;
            moves.push(AbsorptionMove {
                donor: alpha,
                deficit: beta.clone(),
                amount: take.to_biguint().expect("positive transfer"),
            });
        }
        if !need.is_zero() {
            return Absorption { nonnegative: false, moves };
        }
    }
    Absorption { nonnegative: true, moves }
}

/// `left − right − offset` as a signed coefficient map.
pub fn difference<V: Ord + Clone>(
    left: &Polynomial<V>,
    right: &Polynomial<V>,
    offset: u32,
) -> BTreeMap<Monomial<V>, BigInt> {
    let mut out: BTreeMap<Monomial<V>, BigInt> = BTreeMap::new();
    for (m, c) in left.terms() {
        *out.entry(m.clone()).or_default() += BigInt::from(c.clone());
    }
    for (m, c) in right.terms() {
        *out.entry(m.clone()).or_default() -= BigInt::from(c.clone());
    }
    if offset > 0 {
        *out.entry(Monomial::one()).or_default() -= BigInt::from(offset);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Compares two polynomials: `Gt` if `left − right − 1` is shown nonnegative,
/// `Ge` if `left − right` is, `Nge` otherwise.
pub fn poly_compare<V: Ord + Clone>(left: &Polynomial<V>, right: &Polynomial<V>) -> OrderDecision {
    if absorb(&difference(left, right, 1)).nonnegative {
        OrderDecision::Gt
    } else if absorb(&difference(left, right, 0)).nonnegative {
        OrderDecision::Ge
    } else {
        OrderDecision::Nge
    }
}

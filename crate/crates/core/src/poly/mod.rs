//! Sparse multivariate Laurent polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Two families of indeterminates exist: piece variables `x1..xm` and edge
//! variables `q1..qn`. Polynomials live in the ring over all such variables;
//! a [`VarSet`] names the subset relevant for one dissection and rejects
//! polynomials that mention anything else.

mod monomial;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use monomial::Monomial;
pub use parse::parse_poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable {0} is not part of the variable set")]
    ForeignVariable(Var),
    #[error("degree of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("cannot raise non-unit {0} to a negative power")]
    NegativePowerOfNonUnit(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// An indeterminate. Indices are 1-based: `X(l)` belongs to piece `l`,
/// `Q(i)` to boundary edge `e_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    X(u16),
    Q(u16),
}

impl Var {
    pub fn x(index: usize) -> Self {
        Var::X(index as u16)
    }

    pub fn q(index: usize) -> Self {
        Var::Q(index as u16)
    }

    pub fn index(self) -> usize {
        match self {
            Var::X(i) | Var::Q(i) => i as usize,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{i}"),
            Var::Q(i) => write!(f, "q{i}"),
        }
    }
}

/// The indeterminates attached to a dissection with `pieces` pieces of an
/// `edges`-gon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarSet {
    pub pieces: usize,
    pub edges: usize,
}

impl VarSet {
    pub fn new(pieces: usize, edges: usize) -> Self {
        assert!(pieces >= 1 && edges >= 3, "a variable set needs m >= 1 and n >= 3");
        VarSet { pieces, edges }
    }

    pub fn contains(&self, v: Var) -> bool {
        match v {
            Var::X(i) => (1..=self.pieces).contains(&(i as usize)),
            Var::Q(i) => (1..=self.edges).contains(&(i as usize)),
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (1..=self.pieces)
            .map(Var::x)
            .chain((1..=self.edges).map(Var::q))
    }

    pub fn check(&self, p: &LaurentPoly) -> Result<(), PolyError> {
        for (m, _) in p.terms() {
            if let Some(v) = m.vars().find(|v| !self.contains(*v)) {
                return Err(PolyError::ForeignVariable(v));
            }
        }
        Ok(())
    }

    pub fn add(&self, p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        self.check(p)?;
        self.check(q)?;
        Ok(p + q)
    }

    pub fn mul(&self, p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        self.check(p)?;
        self.check(q)?;
        Ok(p * q)
    }
}

/// Display names for variables. Missing entries fall back to `x<i>` / `q<i>`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VarNames {
    pub pieces: Vec<String>,
    pub edges: Vec<String>,
}

impl VarNames {
    pub fn with_pieces<S: AsRef<str>>(names: &[S]) -> Self {
        VarNames {
            pieces: names.iter().map(|s| s.as_ref().to_string()).collect(),
            edges: Vec::new(),
        }
    }

    pub fn name(&self, v: Var) -> String {
        let custom = match v {
            Var::X(i) => self.pieces.get(i as usize - 1),
            Var::Q(i) => self.edges.get(i as usize - 1),
        };
        custom.cloned().unwrap_or_else(|| v.to_string())
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        if let Some(pos) = self.pieces.iter().position(|s| s == name) {
            return Some(Var::x(pos + 1));
        }
        if let Some(pos) = self.edges.iter().position(|s| s == name) {
            return Some(Var::q(pos + 1));
        }
        let (kind, digits) = name.split_at(1);
        let index: usize = digits.parse().ok().filter(|&i| i >= 1)?;
        match kind {
            "x" => Some(Var::x(index)),
            "q" => Some(Var::q(index)),
            _ => None,
        }
    }
}

/// A Laurent polynomial in canonical form: no zero coefficients are stored,
/// so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::term(Monomial::one(), c.into())
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), BigInt::one())
    }

    pub fn x(index: usize) -> Self {
        Self::var(Var::x(index))
    }

    pub fn q(index: usize) -> Self {
        Self::var(Var::q(index))
    }

    pub fn term(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, BigInt::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(iter: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `Some((c, m))` when the polynomial is a single term `c * m`.
    pub fn as_term(&self) -> Option<(&BigInt, &Monomial)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((c, m))
        } else {
            None
        }
    }

    /// Units of the Laurent ring are exactly `±monomial`; returns the inverse.
    pub fn is_unit(&self) -> Option<LaurentPoly> {
        let (c, m) = self.as_term()?;
        if c.abs().is_one() {
            Some(LaurentPoly::term(m.inverse(), c.clone()))
        } else {
            None
        }
    }

    pub fn degree_in(&self, v: Var) -> Result<i32, PolyError> {
        self.terms
            .keys()
            .map(|m| m.exponent(v))
            .max()
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn min_degree_in(&self, v: Var) -> Result<i32, PolyError> {
        self.terms
            .keys()
            .map(|m| m.exponent(v))
            .min()
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn scale<T: Into<BigInt>>(&self, c: T) -> LaurentPoly {
        let c = c.into();
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * &c)).collect(),
        }
    }

    /// Multiply by the variable `v` and drop every term whose exponent of `v`
    /// then exceeds `cap`.
    pub fn mul_var_capped(&self, v: Var, cap: i32) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(v) < cap)
                .map(|(m, c)| (m.mul(&Monomial::var(v)), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut result = LaurentPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Integer power; negative exponents require a unit.
    pub fn powi(&self, e: i32) -> Result<LaurentPoly, PolyError> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            let inv = self
                .is_unit()
                .ok_or_else(|| PolyError::NegativePowerOfNonUnit(self.to_string()))?;
            Ok(inv.pow(e.unsigned_abs()))
        }
    }

    /// Substitute polynomials for variables. Variables without an assignment
    /// are kept. A negative exponent needs its substitute to be a unit.
    pub fn substitute(&self, assignment: &BTreeMap<Var, LaurentPoly>) -> Result<LaurentPoly, PolyError> {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut value = LaurentPoly::constant(c.clone());
            for (v, e) in m.iter() {
                match assignment.get(&v) {
                    Some(sub) => value = &value * &sub.powi(e)?,
                    None => kept = kept.mul(&Monomial::var_pow(v, e)),
                }
            }
            out += &value.mul_monomial(&kept);
        }
        Ok(out)
    }

    /// Keep only the terms for which `keep` returns true.
    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, keep: F) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Terms in printing order: ascending total degree, then graded
    /// lexicographic on `(kind, index)`.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.print_cmp(b.0));
        v
    }

    pub fn display<'a>(&'a self, names: &'a VarNames) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }

    pub fn to_string_with(&self, names: &VarNames) -> String {
        self.display(names).to_string()
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a LaurentPoly,
    names: &'a VarNames,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{}", m.display(self.names))?;
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(&VarNames::default()))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<Var> for LaurentPoly {
    fn from(v: Var) -> Self {
        LaurentPoly::var(v)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| &acc * &p)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_poly(&s, &VarNames::default()).map_err(serde::de::Error::custom)
    }
}

/// `Σ_{j=0}^{k} y^j`.
pub fn geometric_sum(y: &LaurentPoly, k: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    let mut power = LaurentPoly::one();
    for j in 0..=k {
        acc += &power;
        if j < k {
            power = &power * y;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        parse_poly(s, &VarNames::with_pieces(&["a", "b", "c", "d"])).unwrap()
    }

    #[test]
    fn additive_identity_and_inverse() {
        assert_eq!(p("a+b") + LaurentPoly::zero(), p("a+b"));
        assert!((p("a") + p("-a")).is_zero());
        assert_eq!(p("a+b") + p("b+c"), p("a + 2*b + c"));
    }

    #[test]
    fn product_of_walk_sums() {
        assert_eq!(p("a+b") * p("b+c"), p("a*b + a*c + b^2 + b*c"));
        assert_eq!(p("a+b") * LaurentPoly::one(), p("a+b"));
        assert!((p("x1") * p("x1^-1")).is_one());
    }

    #[test]
    fn units_are_signed_monomials() {
        let u = p("q1*x2^-3");
        assert_eq!(u.is_unit(), Some(p("q1^-1*x2^3")));
        assert_eq!(p("a+b").is_unit(), None);
        assert_eq!(p("-1").is_unit(), Some(p("-1")));
        assert_eq!(p("2").is_unit(), None);
        assert_eq!(LaurentPoly::zero().is_unit(), None);
    }

    #[test]
    fn degrees() {
        assert_eq!(p("(a+b)*(b+c)").degree_in(Var::x(2)), Ok(2));
        assert_eq!(p("b+c").degree_in(Var::x(1)), Ok(0));
        assert_eq!(p("x1^-2 + x1").degree_in(Var::x(1)), Ok(1));
        assert_eq!(
            LaurentPoly::zero().degree_in(Var::x(1)),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn varset_rejects_foreign_variables() {
        let vs = VarSet::new(2, 4);
        assert!(vs.add(&p("x1 + q4"), &p("x2")).is_ok());
        assert_eq!(
            vs.mul(&p("x3"), &p("x1")),
            Err(PolyError::ForeignVariable(Var::x(3)))
        );
        assert_eq!(
            vs.add(&p("q5"), &p("1")),
            Err(PolyError::ForeignVariable(Var::q(5)))
        );
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        let mut f = p("1000000*x1 + 999999*q2 - 123456");
        for _ in 0..5 {
            f = &f * &f;
        }
        // 32 factors: the leading coefficient is 10^192.
        let lead = f.coefficient(&Monomial::var_pow(Var::x(1), 32));
        assert_eq!(lead, BigInt::from(10u32).pow(192));
    }

    #[test]
    fn substitution() {
        let f = p("a*b^2*c*d + q1^-1");
        let mut assign = BTreeMap::new();
        for v in VarSet::new(4, 3).vars() {
            assign.insert(v, LaurentPoly::one());
        }
        assert_eq!(f.substitute(&assign), Ok(LaurentPoly::constant(2)));
        assign.insert(Var::q(1), p("a+b"));
        assert!(f.substitute(&assign).is_err());
    }

    #[test]
    fn geometric_sums() {
        let y = p("a");
        assert_eq!(geometric_sum(&y, 2), p("1 + a + a^2"));
        assert_eq!(geometric_sum(&y, 0), LaurentPoly::one());
    }
}

//! Exact multivariate rational functions in canonical form.
//!
//! Invariants maintained by every constructor:
//! - the denominator is nonzero and shares no polynomial factor with
//!   the numerator,
//! - the denominator has integer coefficients with collective gcd 1
//!   and a positive graded-lex leading coefficient,
//! - zero is stored as 0/1.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use super::poly::{gcd, CoordSet, Polynomial};
use super::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: denominator vanishes at the evaluation point")]
    Pole,
    #[error("coordinate `{0}` not assigned a value")]
    UnassignedCoordinate(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Expr {
    num: Polynomial,
    den: Polynomial,
}

impl Expr {
    /// Builds `num/den` in canonical form.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Expr, ExprError> {
        if den.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(Expr::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Expr {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Expr {
                num,
                den: Polynomial::one(den.coords()),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.divide_exact(&g).expect("gcd divides numerator"),
                den.divide_exact(&g).expect("gcd divides denominator"),
            )
        };
        // Push the denominator's rational content into the numerator.
        let (unit, den) = den.primitive();
        let num = num.scale(&unit.recip());
        Expr { num, den }
    }

    pub fn from_poly(p: Polynomial) -> Expr {
        let one = Polynomial::one(p.coords());
        Expr { num: p, den: one }
    }

    pub fn zero(coords: &CoordSet) -> Expr {
        Expr::from_poly(Polynomial::zero(coords))
    }

    pub fn one(coords: &CoordSet) -> Expr {
        Expr::from_poly(Polynomial::one(coords))
    }

    pub fn from_int(coords: &CoordSet, n: i64) -> Expr {
        Expr::from_poly(Polynomial::from_int(coords, n))
    }

    pub fn constant(coords: &CoordSet, c: Rational) -> Expr {
        Expr::from_poly(Polynomial::constant(coords, c))
    }

    pub fn var(coords: &CoordSet, idx: usize) -> Expr {
        Expr::from_poly(Polynomial::var(coords, idx))
    }

    pub fn coords(&self) -> &CoordSet {
        self.num.coords()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_constant() && self.num == self.den
    }

    /// The value of a constant expression, if it is one.
    pub fn constant_value(&self) -> Option<Rational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(n / d)
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn recip(&self) -> Result<Expr, ExprError> {
        if self.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(Expr::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, rhs: &Expr) -> Result<Expr, ExprError> {
        if rhs.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(Expr::normalized(
            &self.num * &rhs.den,
            &self.den * &rhs.num,
        ))
    }

    /// Integer power; negative exponents invert (error on zero base).
    pub fn pow(&self, exp: i32) -> Result<Expr, ExprError> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let e = exp.unsigned_abs();
        Ok(Expr::normalized(base.num.pow(e), base.den.pow(e)))
    }

    /// Exact partial derivative by coordinate name.
    pub fn diff(&self, coord: &str) -> Result<Expr, ExprError> {
        let idx = self
            .coords()
            .index_of(coord)
            .ok_or_else(|| ExprError::UnknownCoordinate(coord.to_string()))?;
        Ok(self.diff_idx(idx))
    }

    /// Exact partial derivative by coordinate index (quotient rule).
    pub fn diff_idx(&self, idx: usize) -> Expr {
        let dn = self.num.partial(idx);
        let dd = self.den.partial(idx);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        let den = &self.den * &self.den;
        Expr::normalized(num, den)
    }

    /// Exact evaluation; every coordinate must be assigned.
    pub fn evaluate(&self, point: &BTreeMap<String, Rational>) -> Result<Rational, ExprError> {
        let mut values = Vec::with_capacity(self.coords().len());
        for name in self.coords().names() {
            let v = point
                .get(name)
                .ok_or_else(|| ExprError::UnassignedCoordinate(name.clone()))?;
            values.push(v.clone());
        }
        self.evaluate_values(&values)
    }

    /// Exact evaluation at a point given in coordinate order.
    pub fn evaluate_values(&self, values: &[Rational]) -> Result<Rational, ExprError> {
        let d = self.den.eval(values);
        if d.is_zero() {
            return Err(ExprError::Pole);
        }
        Ok(self.num.eval(values) / d)
    }

    /// Coordinates that actually occur in the expression.
    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.coords().len())
            .filter(|&i| self.num.uses_var(i) || self.den.uses_var(i))
            .collect()
    }

    /// Deterministic canonical string; two expressions print
    /// identically iff they are equal as rational functions.
    pub fn canonical_text(&self) -> String {
        super::printer::expr_to_string(self)
    }

    /// Parses `text` over the given coordinates into canonical form.
    pub fn parse(text: &str, coords: &CoordSet) -> Result<Expr, ExprError> {
        super::parse::parse_expr(text, coords)
    }
}

impl Add for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Expr::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        Expr::normalized(num, &self.den * &rhs.den)
    }
}

impl Mul for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        Expr::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_text())
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_text())
    }
}

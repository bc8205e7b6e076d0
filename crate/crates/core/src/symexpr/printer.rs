//! Canonical text output for polynomials and rational functions.
//!
//! The printed form stays inside the input grammar, so a canonical
//! string reparses to the same value. Rational coefficients in the
//! numerator are cleared into an integer multiplier on the
//! denominator, which produces the familiar `14/(3*z^2)` shape.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::expr::Expr;
use super::poly::Polynomial;
use super::rational::Rational;

pub fn poly_to_string(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    // Descending graded-lex: highest term first.
    for (i, (mono, coeff)) in p.terms().rev().enumerate() {
        let neg = coeff.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = coeff.abs();
        let mono_str = monomial_to_string(p, mono.0.as_slice());
        if mono_str.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono_str);
        } else {
            out.push_str(&mag.to_string());
            out.push('*');
            out.push_str(&mono_str);
        }
    }
    out
}

fn monomial_to_string(p: &Polynomial, exps: &[u32]) -> String {
    let mut parts = Vec::new();
    for (idx, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = p.coords().name(idx);
        if e == 1 {
            parts.push(name.to_string());
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

/// Least common multiple of the coefficient denominators.
fn denom_lcm(p: &Polynomial) -> BigInt {
    let mut l = BigInt::one();
    for (_, c) in p.terms() {
        l = l.lcm(c.denom());
    }
    l
}

/// True when the polynomial prints as a single grammar factor and can
/// stand unparenthesized to the right of `/`.
fn atomic_divisor(p: &Polynomial) -> bool {
    if p.num_terms() != 1 {
        return false;
    }
    let (mono, coeff) = p.terms().next().unwrap();
    if mono.is_unit() {
        return coeff.is_integer();
    }
    coeff.is_one() && mono.0.iter().filter(|&&e| e > 0).count() == 1
}

pub fn expr_to_string(e: &Expr) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let scale = denom_lcm(e.num());
    let scale_rat = Rational::from_bigints(scale, BigInt::one());
    let num = e.num().scale(&scale_rat);
    let den = e.den().scale(&scale_rat);

    if den.constant_value().map_or(false, |c| c.is_one()) {
        return poly_to_string(&num);
    }
    let num_str = if num.num_terms() > 1 {
        format!("({})", poly_to_string(&num))
    } else {
        poly_to_string(&num)
    };
    let den_str = if atomic_divisor(&den) {
        poly_to_string(&den)
    } else {
        format!("({})", poly_to_string(&den))
    };
    format!("{num_str}/{den_str}")
}

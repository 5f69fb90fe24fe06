//! Canonical text form: terms in descending graded-lex order, written in the
//! same grammar the parser accepts, e.g. `T1^2 - 5*T0^2` or `1/3*T0*T1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::ring::Ring;
use super::sparse::Poly;

pub trait FormatCoeff {
    fn is_negative_coeff(&self) -> bool;
    /// Absolute value rendered, `None` when it equals one.
    fn abs_text(&self) -> Option<String>;
}

impl FormatCoeff for BigInt {
    fn is_negative_coeff(&self) -> bool {
        self.is_negative()
    }
    fn abs_text(&self) -> Option<String> {
        let a = self.abs();
        (!a.is_one()).then(|| a.to_string())
    }
}

impl FormatCoeff for BigRational {
    fn is_negative_coeff(&self) -> bool {
        self.is_negative()
    }
    fn abs_text(&self) -> Option<String> {
        let a = self.abs();
        if a.is_one() {
            None
        } else if a.is_integer() {
            Some(a.numer().to_string())
        } else {
            Some(format!("{}/{}", a.numer(), a.denom()))
        }
    }
}

impl FormatCoeff for u128 {
    fn is_negative_coeff(&self) -> bool {
        false
    }
    fn abs_text(&self) -> Option<String> {
        (*self != 1).then(|| self.to_string())
    }
}

pub fn format_poly<R: Ring>(p: &Poly<R>, prefix: &str) -> String
where
    R::Elem: FormatCoeff,
{
    if p.is_zero() {
        return "0".to_string();
    }
    let n = p.nvars();
    let mut terms: Vec<_> = p.terms().iter().collect();
    terms.sort_by(|a, b| b.0.grlex_cmp(a.0, n));
    let mut out = String::new();
    for (k, (m, c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative_coeff();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mut factors: Vec<String> = Vec::new();
        if let Some(t) = c.abs_text() {
            factors.push(t);
        }
        for v in 0..n {
            match m.exp(v) {
                0 => {}
                1 => factors.push(format!("{prefix}{v}")),
                e => factors.push(format!("{prefix}{v}^{e}")),
            }
        }
        if factors.is_empty() {
            factors.push("1".to_string());
        }
        out.push_str(&factors.join("*"));
    }
    out
}

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::ParseError;

/// Sparse Laurent polynomial in one variable `t` with integer coefficients.
///
/// Zero coefficients are never stored, so derived equality is term-wise
/// equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// `f(1)`, the coefficient sum.
    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// `f'(1) = Σ n·a_n`.
    pub fn derivative_at_one(&self) -> i64 {
        self.terms.iter().map(|(&e, &c)| e * c).sum()
    }

    /// Human-readable form such as `t^-1 + t - 2`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let var = match e {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{e}"),
            };
            if var.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag == 1 {
                out.push_str(&var);
            } else {
                out.push_str(&format!("{mag}{var}"));
            }
        }
        out
    }
}

/// `<exp>:<coeff>` pairs, highest exponent first; the zero polynomial is the
/// empty string.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (e, c)) in self.terms().rev().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}:{c}")?;
        }
        Ok(())
    }
}

impl FromStr for LaurentPolynomial {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut terms = BTreeMap::new();
        for tok in s.split_whitespace() {
            let bad = || ParseError::Polynomial(format!("bad term `{tok}` (expected `<exp>:<coeff>`)"));
            let (e, c) = tok.split_once(':').ok_or_else(bad)?;
            let e: i64 = e.parse().map_err(|_| bad())?;
            let c: i64 = c.parse().map_err(|_| bad())?;
            if c == 0 {
                return Err(ParseError::Polynomial(format!("zero coefficient in `{tok}`")));
            }
            if terms.insert(e, c).is_some() {
                return Err(ParseError::Polynomial(format!("exponent {e} given twice")));
            }
        }
        Ok(LaurentPolynomial { terms })
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(self.terms().map(|(e, c)| (e, -c)))
    }
}

impl Mul<i64> for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, k: i64) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(self.terms().map(|(e, c)| (e, c * k)))
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self + &rhs
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self - &rhs
    }
}

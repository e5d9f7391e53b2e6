//! Dense integer polynomials in `q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::Coefficient;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyParseError {
    #[error("empty polynomial text")]
    Empty,
    #[error("malformed term {term:?}")]
    BadTerm { term: String },
}

/// A polynomial `c_0 + c_1 q + c_2 q^2 + ...` with exact coefficients.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial
/// is the empty vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> QPoly<C> {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly {
            coeffs: vec![C::one()],
        }
    }

    /// `c·q^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        QPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul_exact(c)).collect())
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| self.coeff(k).checked_add(&other.coeff(k)))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::from_coeffs(coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| self.coeff(k).checked_sub(&other.coeff(k)))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::from_coeffs(coeffs))
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        if self.is_zero() || other.is_zero() {
            return Some(Self::zero());
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].checked_add(&a.checked_mul(b)?)?;
            }
        }
        Some(Self::from_coeffs(coeffs))
    }

    /// Evaluates at an integer point.
    pub fn eval(&self, q: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc.mul_exact(q).add_exact(c))
    }

    pub fn parse(text: &str) -> Result<Self, PolyParseError> {
        text.parse()
    }
}

#[cold]
fn overflow(op: &str) -> ! {
    panic!("coefficient overflow in polynomial {op}")
}

impl<C: Coefficient> Add for &QPoly<C> {
    type Output = QPoly<C>;
    fn add(self, rhs: Self) -> QPoly<C> {
        self.checked_add(rhs).unwrap_or_else(|| overflow("addition"))
    }
}

impl<C: Coefficient> Sub for &QPoly<C> {
    type Output = QPoly<C>;
    fn sub(self, rhs: Self) -> QPoly<C> {
        self.checked_sub(rhs).unwrap_or_else(|| overflow("subtraction"))
    }
}

impl<C: Coefficient> Mul for &QPoly<C> {
    type Output = QPoly<C>;
    fn mul(self, rhs: Self) -> QPoly<C> {
        self.checked_mul(rhs).unwrap_or_else(|| overflow("multiplication"))
    }
}

impl<C: Coefficient> Neg for &QPoly<C> {
    type Output = QPoly<C>;
    fn neg(self) -> QPoly<C> {
        &QPoly::zero() - self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<C: Coefficient> $tr for QPoly<C> {
            type Output = QPoly<C>;
            fn $m(self, rhs: Self) -> QPoly<C> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl<C: Coefficient> Zero for QPoly<C> {
    fn zero() -> Self {
        QPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Coefficient> One for QPoly<C> {
    fn one() -> Self {
        QPoly::one()
    }
}

/// Ascending-exponent form: `1 + 7q + 19q^2`.
impl<C: Coefficient> fmt::Display for QPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < C::zero();
            let magnitude = if negative { c.neg_exact() } else { c.clone() };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if k == 0 || !magnitude.is_one() {
                write!(f, "{magnitude}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for QPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

/// Accepts terms in any order, e.g. `5q^{10} +72q^9 + 1` or `1 - q^2`.
impl<C: Coefficient> FromStr for QPoly<C> {
    type Err = PolyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(PolyParseError::Empty);
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, c) in compact.char_indices() {
            if (c == '+' || c == '-') && i > start {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut result = QPoly::zero();
        for raw in terms {
            let bad = || PolyParseError::BadTerm {
                term: raw.to_string(),
            };
            let (negative, body) = match raw.as_bytes()[0] {
                b'+' => (false, &raw[1..]),
                b'-' => (true, &raw[1..]),
                _ => (false, raw),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coeff_text, exponent) = match body.find('q') {
                None => (body, 0),
                Some(at) => {
                    let rest = &body[at + 1..];
                    let exponent = if rest.is_empty() {
                        1
                    } else {
                        let e = rest.strip_prefix('^').ok_or_else(bad)?;
                        let e = e
                            .strip_prefix('{')
                            .and_then(|e| e.strip_suffix('}'))
                            .unwrap_or(e);
                        e.parse::<usize>().map_err(|_| bad())?
                    };
                    let coeff_text = body[..at].strip_suffix('*').unwrap_or(&body[..at]);
                    (coeff_text, exponent)
                }
            };
            let mut coeff = if coeff_text.is_empty() {
                if exponent == 0 && !body.contains('q') {
                    return Err(bad());
                }
                C::one()
            } else {
                if !coeff_text.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                coeff_text.parse::<C>().map_err(|_| bad())?
            };
            if negative {
                coeff = coeff.neg_exact();
            }
            result = &result + &QPoly::monomial(coeff, exponent);
        }
        Ok(result)
    }
}

//! Exact integer-coefficient polynomials in one variable `t`.
//!
//! Coefficients are arbitrary-precision integers stored in ascending degree
//! with no trailing zero; the zero polynomial is the empty list. Rendering
//! follows the descending-power convention, e.g. `t^15 - t^14 - t^11 + t^4 + t - 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    /// Ascending coefficients, canonical (no trailing zero).
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        IntPolynomial::from_coeffs(vec![BigInt::from(c)])
    }

    /// `t^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPolynomial { coeffs }
    }

    /// Ascending coefficients; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiplicity of the root t = 0.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + bigint_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> IntPolynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        IntPolynomial::from_coeffs(coeffs)
    }

    /// GCD of the coefficients (non-negative); 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content; sign chosen so the leading coefficient is positive.
    pub fn primitive_part(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// Coefficient reversal within the given degree: `t^d * p(1/t)`.
    /// Requires `d >= deg p`.
    pub fn reverse_within(&self, d: usize) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[d - k] = c.clone();
        }
        IntPolynomial::from_coeffs(coeffs)
    }

    /// Plain coefficient reversal `t^{deg p} p(1/t)` after dividing out the
    /// valuation, so 0 is never a root of the result.
    pub fn reversal(&self) -> IntPolynomial {
        match self.degree() {
            None => IntPolynomial::zero(),
            Some(d) => {
                let v = self.valuation().unwrap();
                let mut coeffs = vec![BigInt::zero(); d - v + 1];
                for (k, c) in self.coeffs.iter().enumerate().skip(v) {
                    coeffs[d - k] = c.clone();
                }
                IntPolynomial::from_coeffs(coeffs)
            }
        }
    }

    pub fn mul_scalar(&self, c: &BigInt) -> IntPolynomial {
        if c.is_zero() {
            return IntPolynomial::zero();
        }
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact division; error if the remainder is nonzero.
    pub fn div_exact(&self, rhs: &IntPolynomial) -> Result<IntPolynomial> {
        let (q, r) = self.div_rem_rational(rhs)?;
        if !r.is_zero() {
            return Err(Error::Domain(format!("inexact polynomial division, remainder {r}")));
        }
        Ok(q)
    }

    pub fn is_divisible_by(&self, rhs: &IntPolynomial) -> bool {
        matches!(self.div_rem_rational(rhs), Ok((_, ref r)) if r.is_zero())
    }

    /// Division with remainder when every intermediate quotient coefficient
    /// stays integral (always the case for monic divisors and for exact
    /// divisions). Errors on division by zero or a non-integral quotient step.
    fn div_rem_rational(&self, rhs: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
        let dr = rhs.degree().ok_or_else(|| Error::Domain("division by zero polynomial".into()))?;
        let Some(dl) = self.degree() else {
            return Ok((IntPolynomial::zero(), IntPolynomial::zero()));
        };
        if dl < dr {
            return Ok((IntPolynomial::zero(), self.clone()));
        }
        let lead = rhs.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dl - dr + 1];
        for k in (0..=dl - dr).rev() {
            let c = &rem[k + dr];
            if c.is_zero() {
                continue;
            }
            let (q, r) = c.div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::Domain("non-integral quotient in polynomial division".into()));
            }
            for (i, b) in rhs.coeffs.iter().enumerate() {
                let prod = &q * b;
                rem[k + i] -= prod;
            }
            quot[k] = q;
        }
        Ok((IntPolynomial::from_coeffs(quot), IntPolynomial::from_coeffs(rem)))
    }

    /// Pseudo-remainder of `self` by `rhs` (`lead(rhs)^(dl-dr+1) * self mod rhs`).
    fn pseudo_rem(&self, rhs: &IntPolynomial) -> IntPolynomial {
        let dr = rhs.degree().expect("pseudo_rem by zero");
        let Some(dl) = self.degree() else {
            return IntPolynomial::zero();
        };
        if dl < dr {
            return self.clone();
        }
        let lead = rhs.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        for k in (0..=dl - dr).rev() {
            let c = rem[k + dr].clone();
            for (i, x) in rem.iter_mut().enumerate() {
                *x *= &lead;
                if (k..k + dr).contains(&i) {
                    *x -= &c * &rhs.coeffs[i - k];
                }
            }
            rem[k + dr] = BigInt::zero();
        }
        IntPolynomial::from_coeffs(rem)
    }

    /// Polynomial GCD over the integers via primitive pseudo-remainder
    /// sequences; the result is primitive with positive leading coefficient
    /// (content of the inputs is ignored).
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Squarefree part `p / gcd(p, p')`, primitive with positive leading
    /// coefficient.
    pub fn squarefree_part(&self) -> IntPolynomial {
        if self.degree().unwrap_or(0) == 0 {
            return IntPolynomial::one();
        }
        let g = self.gcd(&self.derivative());
        self.primitive_part().div_exact(&g).expect("gcd divides")
    }

    /// Classification against the coefficient reversal.
    pub fn reciprocity(&self) -> Reciprocity {
        if self.is_zero() {
            return Reciprocity::Neither;
        }
        let d = self.degree().unwrap();
        let rev = self.reverse_within(d);
        if rev == *self {
            Reciprocity::Reciprocal
        } else if rev == -self.clone() {
            Reciprocity::AntiReciprocal
        } else {
            Reciprocity::Neither
        }
    }

    /// Coefficients as decimal strings, ascending (JSON-safe rendering).
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

/// Reciprocity status of a polynomial: `p(t) = ±t^{deg p} p(1/t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Reciprocity {
    Reciprocal,
    AntiReciprocal,
    Neither,
}

pub fn bigint_to_f64(c: &BigInt) -> f64 {
    // TryFrom<&BigInt> for f64 loses nothing we care about at catalog scale.
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - rhs.coeff(k));
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Parse the descending-power rendering, e.g. `t^8 - t^4 - t + 1` or
    /// `2t^5 + t^4 - 2t^3 - t^2 - t + 1`. Whitespace is insignificant.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Domain("empty polynomial string".into()));
        }
        let bytes = compact.as_bytes();
        let mut terms: Vec<(usize, BigInt)> = Vec::new();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = BigInt::one();
            match bytes[pos] {
                b'+' => pos += 1,
                b'-' => {
                    sign = -sign;
                    pos += 1;
                }
                _ => {}
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let mut coeff = if pos > start {
                sign * compact[start..pos].parse::<BigInt>().unwrap()
            } else {
                sign
            };
            let mut power = 0usize;
            if pos < bytes.len() && (bytes[pos] == b't' || bytes[pos] == b'*') {
                if bytes[pos] == b'*' {
                    pos += 1;
                    if pos >= bytes.len() || bytes[pos] != b't' {
                        return Err(Error::Domain(format!("bad polynomial term in {s:?}")));
                    }
                }
                pos += 1;
                power = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let ps = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if pos == ps {
                        return Err(Error::Domain(format!("missing exponent in {s:?}")));
                    }
                    power = compact[ps..pos]
                        .parse()
                        .map_err(|_| Error::Domain(format!("bad exponent in {s:?}")))?;
                }
            } else if pos == start {
                return Err(Error::Domain(format!("bad polynomial term in {s:?}")));
            }
            if pos == start && power == 0 {
                return Err(Error::Domain(format!("empty term in {s:?}")));
            }
            if let Some(t) = terms.iter_mut().find(|(p, _)| *p == power) {
                t.1 += std::mem::replace(&mut coeff, BigInt::zero());
            } else {
                terms.push((power, coeff));
            }
        }
        let deg = terms.iter().map(|(p, _)| *p).max().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (p, c) in terms {
            coeffs[p] = c;
        }
        Ok(IntPolynomial::from_coeffs(coeffs))
    }
}

//! Exact rational functions: reduced fractions of integer polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::polyalg::poly::IntPolynomial;

/// A fraction `num/den` of integer polynomials, kept reduced: the gcd of
/// numerator and denominator is constant, the content gcd is 1, and the
/// denominator has positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl RationalFunction {
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Self::reduced(num, den))
    }

    pub fn from_poly(p: IntPolynomial) -> Self {
        RationalFunction { num: p, den: IntPolynomial::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(IntPolynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(IntPolynomial::one())
    }

    fn reduced(num: IntPolynomial, den: IntPolynomial) -> Self {
        if num.is_zero() {
            return RationalFunction { num, den: IntPolynomial::one() };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides num");
        let mut den = den.div_exact(&g).expect("gcd divides den");
        // clear the residual integer content
        let cn = num.content();
        let cd = den.content();
        let c = num_integer::Integer::gcd(&cn, &cd);
        if !c.is_zero() && c != BigInt::from(1) {
            num = IntPolynomial::from_coeffs(num.coeffs().iter().map(|x| x / &c).collect());
            den = IntPolynomial::from_coeffs(den.coeffs().iter().map(|x| x / &c).collect());
        }
        if den.leading().map(|l| l.is_negative()).unwrap_or(false) {
            num = -num;
            den = -den;
        }
        RationalFunction { num, den }
    }

    pub fn num(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn den(&self) -> &IntPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn recip(&self) -> Result<RationalFunction> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    /// Exact substitution `t -> 1/t`: with numerator N and denominator D,
    /// returns `rev(N) t^max(0, deg D - deg N) / (rev(D) t^max(0, deg N - deg D))`
    /// reduced, where `rev` reverses coefficients after dividing out the
    /// valuation.
    pub fn invert_variable(&self) -> Result<RationalFunction> {
        if self.is_zero() {
            return Err(Error::Domain("cannot invert the zero function".into()));
        }
        let dn = self.num.degree().unwrap() as isize;
        let dd = self.den.degree().unwrap() as isize;
        // num(1/t)/den(1/t) = rev(num) t^(dd - dn) / rev(den)
        let shift = dd - dn;
        let rn = self.num.reversal();
        let rd = self.den.reversal();
        let (num, den) = if shift >= 0 {
            (rn.shift(shift as usize), rd)
        } else {
            (rn, rd.shift((-shift) as usize))
        };
        RationalFunction::new(num, den)
    }

    pub fn eval_rational(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval_rational(x);
        if d.is_zero() {
            return Err(Error::Domain(format!("pole at t = {x}")));
        }
        Ok(self.num.eval_rational(x) / d)
    }

    /// Taylor coefficients `c_0..=c_len` at t = 0, exact. Errors when the
    /// denominator vanishes at 0 or a coefficient is not an integer.
    pub fn series_prefix(&self, len: usize) -> Result<Vec<BigInt>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::Domain("denominator vanishes at t = 0".into()));
        }
        let mut out: Vec<BigRational> = Vec::with_capacity(len + 1);
        let d0 = BigRational::from(d0);
        for k in 0..=len {
            let mut acc = BigRational::from(self.num.coeff(k));
            for j in 0..k {
                acc -= BigRational::from(self.den.coeff(k - j)) * &out[j];
            }
            out.push(acc / &d0);
        }
        out.into_iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::Domain(format!("non-integer series coefficient {c}")))
                }
            })
            .collect()
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunction::reduced(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -self.num, den: self.den }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

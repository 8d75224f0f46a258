//! Laurent-truncated power series in one variable `q` with exact integer
//! coefficients.
//!
//! A [`PowerSeries`] stores a dense coefficient window `[min_exp, trunc)`.
//! Every coefficient inside the window is exact; nothing is known about
//! exponents at or beyond `trunc`. All operations propagate the window so
//! that a retained coefficient is never contaminated by a discarded tail.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{checked_add, checked_mul, checked_neg, checked_sub, Coefficient};

/// A signed power of `q`: `sign * q^exp` with `sign` in `{-1, +1}` and `exp >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    negative: bool,
    exp: i64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        negative: false,
        exp: 0,
    };
    pub const MINUS_ONE: Monomial = Monomial {
        negative: true,
        exp: 0,
    };

    pub fn new(sign: i64, exp: i64) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::UnsupportedParameters(format!(
                "monomial sign must be +1 or -1, got {sign}"
            )));
        }
        if exp < 0 {
            return Err(Error::NegativeExponent(exp));
        }
        Ok(Monomial {
            negative: sign < 0,
            exp,
        })
    }

    /// `q^exp`.
    pub fn q_pow(exp: u32) -> Self {
        Monomial {
            negative: false,
            exp: exp as i64,
        }
    }

    /// `-q^exp`.
    pub fn neg_q_pow(exp: u32) -> Self {
        Monomial {
            negative: true,
            exp: exp as i64,
        }
    }

    pub fn sign(&self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    /// `self * q^k`.
    pub fn times_q(self, k: i64) -> Result<Self> {
        Monomial::new(self.sign(), self.exp + k)
    }

    /// Exact quotient; fails if the result would carry a negative exponent.
    pub fn try_div(self, other: Monomial) -> Result<Monomial> {
        Monomial::new(self.sign() * other.sign(), self.exp - other.exp)
    }
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;

    fn mul(self, other: Monomial) -> Monomial {
        Monomial {
            negative: self.negative != other.negative,
            exp: self.exp + other.exp,
        }
    }
}

impl std::ops::Neg for Monomial {
    type Output = Monomial;

    fn neg(self) -> Monomial {
        Monomial {
            negative: !self.negative,
            exp: self.exp,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.negative { "-" } else { "" };
        match self.exp {
            0 => write!(f, "{s}1"),
            1 => write!(f, "{s}q"),
            e => write!(f, "{s}q^{e}"),
        }
    }
}

/// Truncated Laurent series `sum_{min_exp <= e < trunc} c_e q^e`.
///
/// Normal form: the coefficient at `min_exp` is nonzero, except for the zero
/// series, which is stored with `min_exp == trunc` and no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries<C> {
    min_exp: i64,
    coeffs: Vec<C>,
    trunc: i64,
}

impl<C: Coefficient> PowerSeries<C> {
    pub fn zero(trunc: i64) -> Self {
        PowerSeries {
            min_exp: trunc,
            coeffs: Vec::new(),
            trunc,
        }
    }

    /// The constant `1`; an empty window when `trunc <= 0`.
    pub fn one(trunc: i64) -> Self {
        Self::constant(C::one(), trunc)
    }

    pub fn constant(c: C, trunc: i64) -> Self {
        if trunc <= 0 {
            return Self::zero(trunc);
        }
        let mut coeffs = vec![C::zero(); trunc as usize];
        coeffs[0] = c;
        Self::from_dense(0, coeffs, trunc)
    }

    /// `m.sign * q^m.exp` retained below `trunc`.
    pub fn monomial(m: Monomial, trunc: i64) -> Result<Self> {
        if trunc <= m.exp() {
            return Err(Error::TruncationTooSmall {
                exp: m.exp(),
                trunc,
            });
        }
        let c = C::lit(m.sign())?;
        Ok(Self::one(trunc - m.exp())
            .shift(m.exp())
            .scale_unchecked_sign(c))
    }

    /// Sum of `(exponent, coefficient)` terms; terms at or beyond `trunc` are dropped.
    pub fn from_terms<I>(terms: I, trunc: i64) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, C)>,
    {
        let terms: Vec<(i64, C)> = terms.into_iter().filter(|&(e, _)| e < trunc).collect();
        let Some(lo) = terms.iter().map(|&(e, _)| e).min() else {
            return Ok(Self::zero(trunc));
        };
        let mut coeffs = vec![C::zero(); (trunc - lo) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = checked_add(*slot, c, "from_terms")?;
        }
        Ok(Self::from_dense(lo, coeffs, trunc))
    }

    /// Ordinary polynomial `sum_i coeffs[i] q^i` retained below `trunc`.
    pub fn polynomial(coeffs: &[i64], trunc: i64) -> Result<Self> {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| C::lit(c).map(|c| (i as i64, c)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(terms, trunc)
    }

    fn from_dense(min_exp: i64, coeffs: Vec<C>, trunc: i64) -> Self {
        debug_assert_eq!(min_exp + coeffs.len() as i64, trunc);
        let mut s = PowerSeries {
            min_exp,
            coeffs,
            trunc,
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let lead = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len());
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_exp += lead as i64;
        }
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when no negative exponent carries a nonzero coefficient.
    pub fn is_ordinary(&self) -> bool {
        self.min_exp >= 0
    }

    pub fn ensure_ordinary(self, context: &str) -> Result<Self> {
        if self.is_ordinary() {
            Ok(self)
        } else {
            Err(Error::NotOrdinary {
                min_exp: self.min_exp,
                context: context.to_string(),
            })
        }
    }

    /// Coefficient of `q^n`; zero below `min_exp`, an error at or beyond `trunc`.
    pub fn coeff(&self, n: i64) -> Result<C> {
        if n >= self.trunc {
            return Err(Error::OutOfRange {
                exp: n,
                trunc: self.trunc,
            });
        }
        if n < self.min_exp {
            return Ok(C::zero());
        }
        Ok(self.coeffs[(n - self.min_exp) as usize])
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, &c)| (self.min_exp + i as i64, c))
    }

    /// Dense coefficients for exponents `0..trunc` of an ordinary series.
    pub fn to_vec(&self) -> Result<Vec<C>> {
        let s = self.clone().ensure_ordinary("to_vec")?;
        Ok((0..s.trunc.max(0))
            .map(|e| s.coeff(e).expect("inside window"))
            .collect())
    }

    /// Narrow the retained window to `min(trunc, t)`.
    pub fn truncate(&self, t: i64) -> Self {
        if t >= self.trunc {
            return self.clone();
        }
        if t <= self.min_exp {
            return Self::zero(t);
        }
        let keep = (t - self.min_exp) as usize;
        Self::from_dense(self.min_exp, self.coeffs[..keep].to_vec(), t)
    }

    /// First exponent in the common window where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<i64> {
        let hi = self.trunc.min(other.trunc);
        let lo = self.min_exp.min(other.min_exp);
        (lo..hi).find(|&e| self.coeff(e).ok() != other.coeff(e).ok())
    }

    /// Equality on the common retained window.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }

    /// Exact multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        PowerSeries {
            min_exp: self.min_exp + k,
            coeffs: self.coeffs.clone(),
            trunc: self.trunc + k,
        }
    }

    // Multiplication by +-1, never overflows except at C::min_value().
    fn scale_unchecked_sign(mut self, sign: C) -> Self {
        if sign < C::zero() {
            for c in &mut self.coeffs {
                *c = -*c;
            }
        }
        self
    }

    /// Exact multiplication by `m.sign * q^m.exp`.
    pub fn mul_monomial(&self, m: Monomial) -> Result<Self> {
        let s = self.shift(m.exp());
        if m.sign() < 0 {
            s.neg()
        } else {
            Ok(s)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Result<Self> {
        let trunc = self.trunc.min(other.trunc);
        let lo = self.min_exp.min(other.min_exp).min(trunc);
        let mut coeffs = vec![C::zero(); (trunc - lo) as usize];
        for (i, slot) in coeffs.iter_mut().enumerate() {
            let e = lo + i as i64;
            let a = self.coeff(e)?;
            let b = other.coeff(e)?;
            *slot = if subtract {
                checked_sub(a, b, "sub")?
            } else {
                checked_add(a, b, "add")?
            };
        }
        Ok(Self::from_dense(lo, coeffs, trunc))
    }

    pub fn neg(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| checked_neg(c, "neg"))
            .collect::<Result<Vec<_>>>()?;
        Ok(PowerSeries {
            min_exp: self.min_exp,
            coeffs,
            trunc: self.trunc,
        })
    }

    pub fn scale(&self, k: C) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| checked_mul(c, k, "scale"))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_dense(self.min_exp, coeffs, self.trunc))
    }

    /// Cauchy product.
    ///
    /// The output window is `[s.min + t.min, min(s.trunc + t.min, t.trunc + s.min))`:
    /// an exponent is kept only if every pair contributing to it was retained.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let min_exp = self.min_exp + other.min_exp;
        let trunc = (self.trunc + other.min_exp).min(other.trunc + self.min_exp);
        let len = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![C::zero(); len];
        for (i, &a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs[..len - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = checked_mul(a, b, "mul")?;
                out[i + j] = checked_add(out[i + j], p, "mul")?;
            }
        }
        Ok(Self::from_dense(min_exp, out, trunc))
    }

    /// Multiplicative inverse; the lowest coefficient must be `+1` or `-1`.
    ///
    /// For `s = q^m u` with `u(0) = +-1` the result is `q^-m / u`, retained
    /// below `trunc - 2m`.
    pub fn invert(&self) -> Result<Self> {
        let Some(&lead) = self.coeffs.first() else {
            return Err(Error::NotInvertible {
                leading: "0".into(),
            });
        };
        if !lead.is_unit() {
            return Err(Error::NotInvertible {
                leading: lead.to_string(),
            });
        }
        let u = &self.coeffs;
        let len = u.len();
        let mut v = vec![C::zero(); len];
        v[0] = lead;
        for k in 1..len {
            let mut acc = C::zero();
            for i in 1..=k {
                if u[i].is_zero() || v[k - i].is_zero() {
                    continue;
                }
                acc = checked_add(acc, checked_mul(u[i], v[k - i], "invert")?, "invert")?;
            }
            // v_k = -lead * acc, since lead^-1 == lead
            v[k] = checked_neg(checked_mul(acc, lead, "invert")?, "invert")?;
        }
        Ok(Self::from_dense(
            -self.min_exp,
            v,
            self.trunc - 2 * self.min_exp,
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.invert()?)
    }

    /// `self * (1 - x)` in O(len).
    pub fn mul_one_minus(&self, x: Monomial) -> Result<Self> {
        if x.exp() == 0 {
            // 1 - (+-1) is 0 or 2
            return if x.sign() > 0 {
                Ok(Self::zero(self.trunc))
            } else {
                self.scale(C::lit(2)?)
            };
        }
        let e = x.exp() as usize;
        let s = C::lit(x.sign())?;
        let mut out = self.coeffs.clone();
        for (slot, &c) in out.iter_mut().skip(e).zip(&self.coeffs) {
            if !c.is_zero() {
                *slot = checked_sub(*slot, checked_mul(s, c, "mul_one_minus")?, "mul_one_minus")?;
            }
        }
        Ok(Self::from_dense(self.min_exp, out, self.trunc))
    }

    /// `self / (1 - x)` in O(len); requires `x.exp() >= 1`.
    pub fn div_one_minus(&self, x: Monomial) -> Result<Self> {
        if x.exp() == 0 {
            return Err(Error::NotInvertible {
                leading: (1 - x.sign()).to_string(),
            });
        }
        let e = x.exp() as usize;
        let s = C::lit(x.sign())?;
        let mut out = self.coeffs.clone();
        for i in e..out.len() {
            let c = out[i - e];
            if !c.is_zero() {
                out[i] = checked_add(out[i], checked_mul(s, c, "div_one_minus")?, "div_one_minus")?;
            }
        }
        Ok(Self::from_dense(self.min_exp, out, self.trunc))
    }

    /// Substitute `q -> q^k`.
    pub fn substitute_power(&self, k: i64) -> Result<Self> {
        if k < 1 {
            return Err(Error::UnsupportedParameters(format!(
                "substitution power must be >= 1, got {k}"
            )));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.trunc * k));
        }
        let len = ((self.trunc - self.min_exp) * k) as usize;
        let mut coeffs = vec![C::zero(); len];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c;
        }
        Ok(Self::from_dense(self.min_exp * k, coeffs, self.trunc * k))
    }
}

/// `(x; q^step)_n = prod_{i < n} (1 - x q^{step i})`, retained below `trunc`.
pub fn pochhammer<C: Coefficient>(
    x: Monomial,
    step: i64,
    n: u64,
    trunc: i64,
) -> Result<PowerSeries<C>> {
    if step < 1 {
        return Err(Error::UnsupportedParameters(format!(
            "pochhammer step must be >= 1, got {step}"
        )));
    }
    let mut acc = PowerSeries::one(trunc);
    for i in 0..n as i64 {
        let factor = x.times_q(step * i)?;
        if factor.exp() >= trunc {
            break;
        }
        acc = acc.mul_one_minus(factor)?;
    }
    Ok(acc)
}

/// `(x; q^step)_inf`; requires every factor past the first to involve `q`.
pub fn pochhammer_infinite<C: Coefficient>(
    x: Monomial,
    step: i64,
    trunc: i64,
) -> Result<PowerSeries<C>> {
    if step < 1 {
        return Err(Error::UnsupportedParameters(format!(
            "pochhammer step must be >= 1, got {step}"
        )));
    }
    let terms = ((trunc - x.exp()).max(0) + step - 1) / step;
    pochhammer(x, step, terms as u64, trunc)
}

/// `series * (x; q^step)_n` by repeated binomial multiplication.
pub fn mul_pochhammer<C: Coefficient>(
    s: &PowerSeries<C>,
    x: Monomial,
    step: i64,
    n: u64,
) -> Result<PowerSeries<C>> {
    let mut acc = s.clone();
    for i in 0..n as i64 {
        let factor = x.times_q(step * i)?;
        if factor.exp() > 0 && factor.exp() >= acc.trunc() - acc.min_exp() {
            break;
        }
        acc = acc.mul_one_minus(factor)?;
    }
    Ok(acc)
}

/// `series / (x; q^step)_n` by repeated binomial division.
pub fn div_pochhammer<C: Coefficient>(
    s: &PowerSeries<C>,
    x: Monomial,
    step: i64,
    n: u64,
) -> Result<PowerSeries<C>> {
    let mut acc = s.clone();
    for i in 0..n as i64 {
        let factor = x.times_q(step * i)?;
        if factor.exp() > 0 && factor.exp() >= acc.trunc() - acc.min_exp() {
            break;
        }
        acc = acc.div_one_minus(factor)?;
    }
    Ok(acc)
}

impl<C: Coefficient> fmt::Display for PowerSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c < C::zero();
            let mag = if neg { C::zero() - c } else { c };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let unit = mag == C::one();
            match e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "q")?,
                1 => write!(f, "{mag}q")?,
                _ if unit => write!(f, "q^{e}")?,
                _ => write!(f, "{mag}q^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc)
    }
}

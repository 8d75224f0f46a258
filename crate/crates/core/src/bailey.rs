//! Bailey pairs relative to a monomial base `a`.
//!
//! A pair `(alpha_n, beta_n)` is a Bailey pair relative to `(a, q)` when
//!
//! ```text
//! beta_n = sum_{0 <= i <= n} alpha_i / ((q; q)_{n-i} (aq; q)_{n+i})
//! ```
//!
//! This module ships the classical Slater pairs C(1) and C(5), the two
//! closed-form pairs relative to `(q, q)` obtained from them, the Lovejoy
//! transform that maps one to the other, and both sides of the weak Bailey
//! lemma as checkable series.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Coefficient;
use crate::series::{div_pochhammer, mul_pochhammer, pochhammer_infinite, Monomial, PowerSeries};

type Sequence<C> = Arc<dyn Fn(u64, i64) -> Result<PowerSeries<C>> + Send + Sync>;

/// An indexed family `n -> (alpha_n, beta_n)` of truncated series.
///
/// Each side is produced on demand at a requested truncation order.
#[derive(Clone)]
pub struct BaileyPair<C> {
    a: Monomial,
    label: String,
    alpha: Sequence<C>,
    beta: Sequence<C>,
}

impl<C> fmt::Debug for BaileyPair<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BaileyPair")
            .field("label", &self.label)
            .field("a", &self.a)
            .finish_non_exhaustive()
    }
}

impl<C: Coefficient> BaileyPair<C> {
    pub fn new<A, B>(a: Monomial, label: impl Into<String>, alpha: A, beta: B) -> Self
    where
        A: Fn(u64, i64) -> Result<PowerSeries<C>> + Send + Sync + 'static,
        B: Fn(u64, i64) -> Result<PowerSeries<C>> + Send + Sync + 'static,
    {
        BaileyPair {
            a,
            label: label.into(),
            alpha: Arc::new(alpha),
            beta: Arc::new(beta),
        }
    }

    pub fn a(&self) -> Monomial {
        self.a
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn alpha(&self, n: u64, trunc: i64) -> Result<PowerSeries<C>> {
        (self.alpha)(n, trunc)
    }

    pub fn beta(&self, n: u64, trunc: i64) -> Result<PowerSeries<C>> {
        (self.beta)(n, trunc)
    }

    /// Same alpha side, replaced beta side.
    pub fn with_beta<B>(&self, label: impl Into<String>, beta: B) -> Self
    where
        B: Fn(u64, i64) -> Result<PowerSeries<C>> + Send + Sync + 'static,
    {
        BaileyPair {
            a: self.a,
            label: label.into(),
            alpha: Arc::clone(&self.alpha),
            beta: Arc::new(beta),
        }
    }

    /// Same beta side, replaced alpha side.
    pub fn with_alpha<A>(&self, label: impl Into<String>, alpha: A) -> Self
    where
        A: Fn(u64, i64) -> Result<PowerSeries<C>> + Send + Sync + 'static,
    {
        BaileyPair {
            a: self.a,
            label: label.into(),
            alpha: Arc::new(alpha),
            beta: Arc::clone(&self.beta),
        }
    }

    /// The unit pair: `alpha_0 = 1`, `alpha_n = 0` otherwise,
    /// `beta_n = 1 / ((q)_n (aq)_n)`.
    pub fn unit(a: Monomial) -> Result<Self> {
        let aq = a.times_q(1)?;
        Ok(Self::new(
            a,
            format!("unit(a={a})"),
            |n, t| {
                Ok(if n == 0 {
                    PowerSeries::one(t)
                } else {
                    PowerSeries::zero(t)
                })
            },
            move |n, t| {
                let s = div_pochhammer(&PowerSeries::one(t), Monomial::q_pow(1), 1, n)?;
                div_pochhammer(&s, aq, 1, n)
            },
        ))
    }

    /// `alpha = beta = 0`.
    pub fn zero(a: Monomial) -> Self {
        Self::new(
            a,
            "zero",
            |_, t| Ok(PowerSeries::zero(t)),
            |_, t| Ok(PowerSeries::zero(t)),
        )
    }
}

fn sign_pow(sign: i64, n: u64) -> i64 {
    if sign < 0 && n % 2 == 1 {
        -1
    } else {
        1
    }
}

fn tri(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// `1 / ((q; q)_n (q; q^2)_n)`.
fn slater_denominator<C: Coefficient>(n: u64, t: i64) -> Result<PowerSeries<C>> {
    let q = Monomial::q_pow(1);
    let s = div_pochhammer(&PowerSeries::one(t), q, 1, n)?;
    div_pochhammer(&s, q, 2, n)
}

/// Slater alpha with `alpha_{2m+1} = 0`, `alpha_0 = 1` and
/// `alpha_{2m} = (-1)^m q^{e(m)} (1 + q^{2m})` for `m >= 1`.
fn slater_alpha<C: Coefficient>(
    n: u64,
    t: i64,
    exponent: fn(i64) -> i64,
) -> Result<PowerSeries<C>> {
    if n == 0 {
        return Ok(PowerSeries::one(t));
    }
    if n % 2 == 1 {
        return Ok(PowerSeries::zero(t));
    }
    let m = (n / 2) as i64;
    let s = C::lit(sign_pow(-1, m as u64))?;
    let e = exponent(m);
    PowerSeries::from_terms([(e, s), (e + 2 * m, s)], t)
}

/// Slater's C(1), relative to `(1, q)`.
///
/// `alpha_0` is taken to be `1`: substituting `n = 0` into the even-index
/// formula would give `2`, which breaks the defining relation at `n = 0`.
pub fn slater_c1<C: Coefficient>() -> BaileyPair<C> {
    BaileyPair::new(
        Monomial::ONE,
        "C1",
        |n, t| slater_alpha(n, t, |m| m * (3 * m - 1)),
        slater_denominator,
    )
}

/// Slater's C(5), relative to `(1, q)`. Same `alpha_0` convention as [`slater_c1`].
pub fn slater_c5<C: Coefficient>() -> BaileyPair<C> {
    BaileyPair::new(
        Monomial::ONE,
        "C5",
        |n, t| slater_alpha(n, t, |m| m * (m - 1)),
        |n, t| {
            let shift = tri(n as i64);
            Ok(slater_denominator::<C>(n, t - shift)?.shift(shift))
        },
    )
}

/// `(1 - q^{2n+1}) / (1 - q) * q^{n(n-1)/2} * sum_{2|j| <= n} (-1)^j q^{sign * j^2}`.
fn closed_alpha<C: Coefficient>(n: u64, t: i64, j_sign: i64) -> Result<PowerSeries<C>> {
    let n = n as i64;
    let base = tri(n);
    let theta = (-(n / 2)..=n / 2)
        .map(|j| C::lit(sign_pow(-1, j.unsigned_abs())).map(|c| (base + j_sign * j * j, c)))
        .collect::<Result<Vec<_>>>()?;
    let theta = PowerSeries::from_terms(theta, t)?;
    let geometric = PowerSeries::from_terms((0..=2 * n).map(|e| (e, C::one())), t)?;
    Ok(geometric.mul(&theta)?.truncate(t))
}

/// `2 q^shift / ((1 + q^n)(q)_n (q; q^2)_n)`, equal to `1` at `n = 0`.
fn closed_beta<C: Coefficient>(n: u64, t: i64, shift: i64) -> Result<PowerSeries<C>> {
    if n == 0 {
        return Ok(PowerSeries::one(t));
    }
    let body = slater_denominator::<C>(n, t - shift)?
        .div_one_minus(Monomial::neg_q_pow(n as u32))?
        .scale(C::lit(2)?)?;
    Ok(body.shift(shift))
}

/// First closed-form pair relative to `(q, q)`:
/// `alpha_n = (1-q^{2n+1})/(1-q) q^{n(n-1)/2} sum_{2|j|<=n} (-1)^j q^{j^2}`,
/// `beta_n = 2 / ((1+q^n)(q)_n(q;q^2)_n)`.
pub fn pair_l1<C: Coefficient>() -> BaileyPair<C> {
    BaileyPair::new(
        Monomial::q_pow(1),
        "L1",
        |n, t| closed_alpha(n, t, 1),
        |n, t| closed_beta(n, t, 0),
    )
}

/// Second closed-form pair relative to `(q, q)`: as [`pair_l1`] with `q^{-j^2}`
/// in alpha and an extra `q^{n(n-1)/2}` in beta.
pub fn pair_l2<C: Coefficient>() -> BaileyPair<C> {
    BaileyPair::new(
        Monomial::q_pow(1),
        "L2",
        |n, t| closed_alpha(n, t, -1),
        |n, t| closed_beta(n, t, tri(n as i64)),
    )
}

/// Lovejoy's transform: a pair relative to `(a, q)` becomes a pair relative
/// to `(aq, q)` with
///
/// ```text
/// alpha'_n = (1 - a q^{2n+1}) (aq/b)_n (-b)^n q^{n(n-1)/2} / ((1 - aq)(bq)_n)
///            * sum_{j<=n} (b)_j / (aq/b)_j (-b)^{-j} q^{-j(j-1)/2} alpha_j
/// beta'_n  = (1 - b) / (1 - b q^n) beta_n
/// ```
///
/// The inner sum may pass through negative exponents; the assembled
/// `alpha'_n` must be an ordinary power series.
pub fn lovejoy_transform<C: Coefficient>(p: &BaileyPair<C>, b: Monomial) -> Result<BaileyPair<C>> {
    let a = p.a();
    let aq = a.times_q(1)?;
    let aq_over_b = aq.try_div(b).map_err(|_| {
        Error::UnsupportedParameters(format!("aq/b = {aq}/{b} is not a monomial in q"))
    })?;
    if aq_over_b.exp() == 0 {
        return Err(Error::NotInvertible {
            leading: (1 - aq_over_b.sign()).to_string(),
        });
    }
    let bq = b.times_q(1)?;
    let minus_b_sign = -b.sign();

    let inner = p.clone();
    let alpha = move |n: u64, t: i64| -> Result<PowerSeries<C>> {
        let ni = n as i64;
        let outer_shift = b.exp() * ni + tri(ni);
        let t_in = t - outer_shift;
        let mut sum = PowerSeries::zero(t_in);
        for j in 0..=n {
            let ji = j as i64;
            let shift = -b.exp() * ji - tri(ji);
            let term = inner.alpha(j, t_in - shift)?;
            if term.is_zero() {
                continue;
            }
            let term = mul_pochhammer(&term, b, 1, j)?;
            let term = div_pochhammer(&term, aq_over_b, 1, j)?;
            let mut term = term.shift(shift);
            if sign_pow(minus_b_sign, j) < 0 {
                term = term.neg()?;
            }
            sum = sum.add(&term)?;
        }
        let mut r = sum.shift(outer_shift);
        if sign_pow(minus_b_sign, n) < 0 {
            r = r.neg()?;
        }
        let r = r.mul_one_minus(a.times_q(2 * ni + 1)?)?;
        let r = mul_pochhammer(&r, aq_over_b, 1, n)?;
        let r = r.div_one_minus(aq)?;
        let r = div_pochhammer(&r, bq, 1, n)?;
        r.truncate(t).ensure_ordinary("lovejoy alpha")
    };

    let inner = p.clone();
    let beta = move |n: u64, t: i64| -> Result<PowerSeries<C>> {
        let base = inner.beta(n, t)?;
        if n == 0 {
            return Ok(base);
        }
        base.mul_one_minus(b)?.div_one_minus(b.times_q(n as i64)?)
    };

    Ok(BaileyPair::new(
        aq,
        format!("lovejoy({}, b={b})", p.label()),
        alpha,
        beta,
    ))
}

/// Outcome of the defining-relation check at one index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCheck {
    pub n: u64,
    pub passed: bool,
    /// Lowest exponent where `beta_n` and the alpha sum disagree.
    pub first_difference: Option<i64>,
    /// Common window on which the two sides were compared.
    pub compared_below: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub label: String,
    pub rows: Vec<PairCheck>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn first_failure(&self) -> Option<&PairCheck> {
        self.rows.iter().find(|r| !r.passed)
    }
}

/// `sum_{i<=n} alpha_i / ((q)_{n-i} (aq)_{n+i})`.
pub fn bailey_sum<C: Coefficient>(p: &BaileyPair<C>, n: u64, trunc: i64) -> Result<PowerSeries<C>> {
    let q = Monomial::q_pow(1);
    let aq = p.a().times_q(1)?;
    let mut acc = PowerSeries::zero(trunc);
    for i in 0..=n {
        let alpha = p.alpha(i, trunc)?;
        if alpha.is_zero() {
            continue;
        }
        let term = div_pochhammer(&alpha, q, 1, n - i)?;
        let term = div_pochhammer(&term, aq, 1, n + i)?;
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Check the defining relation for `n = 0..=n_max` below `trunc`.
pub fn verify_pair<C: Coefficient>(
    p: &BaileyPair<C>,
    n_max: u64,
    trunc: i64,
) -> Result<VerificationReport> {
    let rows = (0..=n_max)
        .map(|n| {
            let beta = p.beta(n, trunc)?;
            let sum = bailey_sum(p, n, trunc)?;
            let first_difference = beta.first_difference(&sum);
            Ok(PairCheck {
                n,
                passed: first_difference.is_none(),
                first_difference,
                compared_below: beta.trunc().min(sum.trunc()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        label: p.label().to_string(),
        rows,
    })
}

/// Side-by-side comparison of two pairs at one index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDiff {
    pub n: u64,
    pub alpha_difference: Option<i64>,
    pub beta_difference: Option<i64>,
}

impl PairDiff {
    pub fn matches(&self) -> bool {
        self.alpha_difference.is_none() && self.beta_difference.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairComparison {
    pub same_base: bool,
    pub rows: Vec<PairDiff>,
}

impl PairComparison {
    pub fn identical(&self) -> bool {
        self.same_base && self.rows.iter().all(PairDiff::matches)
    }
}

pub fn compare_pairs<C: Coefficient>(
    left: &BaileyPair<C>,
    right: &BaileyPair<C>,
    n_max: u64,
    trunc: i64,
) -> Result<PairComparison> {
    let rows = (0..=n_max)
        .map(|n| {
            Ok(PairDiff {
                n,
                alpha_difference: left
                    .alpha(n, trunc)?
                    .first_difference(&right.alpha(n, trunc)?),
                beta_difference: left
                    .beta(n, trunc)?
                    .first_difference(&right.beta(n, trunc)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PairComparison {
        same_base: left.a() == right.a(),
        rows,
    })
}

/// A parameter of the weak Bailey lemma: a signed monomial or the formal
/// limit `Y -> infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaileyParam {
    Finite(Monomial),
    Infinite,
}

/// Shared bookkeeping for both sides of the weak Bailey lemma.
struct WeakBailey {
    aq: Monomial,
    finite: Vec<Monomial>,
    infinite: i64,
    c_sign: i64,
    c_exp: i64,
}

impl WeakBailey {
    fn new(a: Monomial, y1: BaileyParam, y2: BaileyParam) -> Result<Self> {
        let aq = a.times_q(1)?;
        let mut finite = Vec::new();
        let mut infinite = 0;
        for y in [y1, y2] {
            match y {
                BaileyParam::Finite(m) => finite.push(m),
                BaileyParam::Infinite => infinite += 1,
            }
        }
        let c_sign = finite.iter().fold(aq.sign(), |s, m| s * m.sign());
        let c_exp = finite.iter().fold(aq.exp(), |e, m| e - m.exp());
        let converges = if infinite == 0 {
            c_exp >= 1
        } else {
            c_exp >= 0
        };
        if !converges {
            return Err(Error::UnsupportedParameters(format!(
                "aq/(Y1 Y2) has exponent {c_exp}; the sum does not converge in q"
            )));
        }
        Ok(WeakBailey {
            aq,
            finite,
            infinite,
            c_sign,
            c_exp,
        })
    }

    /// Exponent and sign of the monomial part of `(Y1)_n (Y2)_n (aq/Y1Y2)^n`,
    /// each infinite `Y` contributing `(-1)^n q^{n(n-1)/2}`.
    fn weight(&self, n: u64) -> (i64, i64) {
        let ni = n as i64;
        let exp = ni * self.c_exp + self.infinite * tri(ni);
        let sign =
            sign_pow(self.c_sign, n) * sign_pow(if self.infinite % 2 == 1 { -1 } else { 1 }, n);
        (exp, sign)
    }

    fn aq_over(&self, y: Monomial) -> Result<Monomial> {
        let m = self.aq.try_div(y).map_err(|_| {
            Error::UnsupportedParameters(format!("aq/Y = {}/{y} is not a monomial in q", self.aq))
        })?;
        if m.exp() == 0 {
            return Err(Error::NotInvertible {
                leading: (1 - m.sign()).to_string(),
            });
        }
        Ok(m)
    }

    /// `sum_n weight_n * seq(n) / denominators`, for `seq` alpha or beta.
    fn sum<C: Coefficient>(
        &self,
        trunc: i64,
        divide: bool,
        seq: impl Fn(u64, i64) -> Result<PowerSeries<C>>,
    ) -> Result<PowerSeries<C>> {
        let mut acc = PowerSeries::zero(trunc);
        for n in 0u64.. {
            let (exp, sign) = self.weight(n);
            if exp >= trunc {
                if n >= 1 {
                    break;
                }
                continue;
            }
            let inner_trunc = trunc - exp;
            let mut term = seq(n, inner_trunc)?.ensure_ordinary("weak Bailey sequence term")?;
            if term.is_zero() {
                continue;
            }
            for &y in &self.finite {
                term = mul_pochhammer(&term, y, 1, n)?;
                if divide {
                    term = div_pochhammer(&term, self.aq_over(y)?, 1, n)?;
                }
            }
            let mut term = term.shift(exp);
            if sign < 0 {
                term = term.neg()?;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

/// `sum_{n>=0} (Y1)_n (Y2)_n (aq/Y1Y2)^n beta_n`.
pub fn weak_bailey_lhs<C: Coefficient>(
    p: &BaileyPair<C>,
    y1: BaileyParam,
    y2: BaileyParam,
    trunc: i64,
) -> Result<PowerSeries<C>> {
    let wb = WeakBailey::new(p.a(), y1, y2)?;
    wb.sum(trunc, false, |n, t| p.beta(n, t))
}

/// `(aq/Y1)_inf (aq/Y2)_inf / ((aq)_inf (aq/Y1Y2)_inf)
///  * sum_{n>=0} (Y1)_n (Y2)_n (aq/Y1Y2)^n alpha_n / ((aq/Y1)_n (aq/Y2)_n)`.
///
/// Products attached to an infinite `Y` tend to `1`.
pub fn weak_bailey_rhs<C: Coefficient>(
    p: &BaileyPair<C>,
    y1: BaileyParam,
    y2: BaileyParam,
    trunc: i64,
) -> Result<PowerSeries<C>> {
    let wb = WeakBailey::new(p.a(), y1, y2)?;
    let mut s = wb.sum(trunc, true, |n, t| p.alpha(n, t))?;
    for &y in &wb.finite {
        let num = pochhammer_infinite::<C>(wb.aq_over(y)?, 1, trunc)?;
        s = s.mul(&num)?;
    }
    let steps = |x: Monomial| ((trunc - x.exp()).max(0)) as u64;
    s = div_pochhammer(&s, wb.aq, 1, steps(wb.aq))?;
    if wb.infinite == 0 {
        let c = Monomial::new(wb.c_sign, wb.c_exp)?;
        s = div_pochhammer(&s, c, 1, steps(c))?;
    }
    Ok(s.truncate(trunc))
}

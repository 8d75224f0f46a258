//! Numeric harness for power-series growth as `z -> 1-`.
//!
//! If `A(x) = sum_{n<=x} a_n ~ x^delta h(x)` then the generating function of
//! the partial sums, `sum A(n) z^n = sum a_n z^n / (1-z)`, behaves like
//! `K Gamma(delta+1) / (1-z)^{delta+1} h(1/(1-z))` as `z -> 1-`. Series are
//! evaluated as finite sums whose length is fixed by a [`TailRule`].

use crate::error::{Error, Result};
use crate::identities::{rhs_table, Family};
use crate::quadforms::{QuadFormSpec, RepTable};
use crate::scalar::Real;

/// Slowly varying factor `h(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlowlyVarying {
    ConstantOne,
    /// `1 / sqrt(log x)`
    InvSqrtLog,
}

impl SlowlyVarying {
    pub fn eval<F: Real>(self, x: F) -> F {
        match self {
            SlowlyVarying::ConstantOne => F::one(),
            SlowlyVarying::InvSqrtLog => x.ln().sqrt().recip(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticSpec<F> {
    /// Integer growth exponent, so `Gamma(delta + 1) = delta!`.
    pub delta: u32,
    pub h: SlowlyVarying,
    /// Caller-supplied scale; never inferred from the sequence.
    pub k: F,
}

impl<F: Real> AsymptoticSpec<F> {
    pub fn new(delta: u32, h: SlowlyVarying, k: F) -> Result<Self> {
        if delta < 1 {
            return Err(Error::Domain {
                value: delta.to_string(),
                domain: "delta >= 1",
            });
        }
        Ok(AsymptoticSpec { delta, h, k })
    }
}

fn check_unit_interval<F: Real>(z: F) -> Result<()> {
    if z > F::zero() && z < F::one() {
        Ok(())
    } else {
        Err(Error::Domain {
            value: z.to_string(),
            domain: "0 < z < 1",
        })
    }
}

/// `K delta! / (1-z)^{delta+1} h(1/(1-z))`.
pub fn hl_rhs<F: Real>(spec: &AsymptoticSpec<F>, z: F) -> Result<F> {
    check_unit_interval(z)?;
    let gap = F::one() - z;
    let factorial = (1..=spec.delta).fold(F::one(), |acc, k| acc * F::from_i64(k as i64));
    let growth = gap.powi(spec.delta as i32 + 1).recip();
    Ok(spec.k * factorial * growth * spec.h.eval(gap.recip()))
}

/// Partial-sum length `N = ceil(decay / (1-z))`, capped at `max_terms`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailRule {
    pub decay: f64,
    pub max_terms: u64,
}

impl Default for TailRule {
    fn default() -> Self {
        TailRule {
            decay: 30.0,
            max_terms: 10_000_000,
        }
    }
}

impl TailRule {
    pub fn with_max_terms(max_terms: u64) -> Self {
        TailRule {
            max_terms,
            ..TailRule::default()
        }
    }

    /// Highest index summed at `z`.
    pub fn terms<F: Real>(&self, z: F) -> Result<u64> {
        check_unit_interval(z)?;
        let gap = (F::one() - z).to_f64().unwrap_or(0.0);
        let n = (self.decay / gap).ceil();
        if !n.is_finite() || n > self.max_terms as f64 {
            return Err(Error::ResourceLimit {
                what: "series terms",
                requested: if n.is_finite() { n as u64 } else { u64::MAX },
                limit: self.max_terms,
            });
        }
        Ok(n as u64)
    }
}

/// `sum_{n=0}^{N} a_n z^n` in ascending order, `N` from the tail rule.
pub fn eval_series<F: Real>(coeffs: impl Fn(u64) -> i64, z: F, rule: &TailRule) -> Result<F> {
    let n_max = rule.terms(z)?;
    Ok(eval_partial(coeffs, z, n_max))
}

/// `sum_{n=0}^{n_max} a_n z^n`.
pub fn eval_partial<F: Real>(coeffs: impl Fn(u64) -> i64, z: F, n_max: u64) -> F {
    let mut sum = F::zero();
    let mut power = F::one();
    for n in 0..=n_max {
        let a = coeffs(n);
        if a != 0 {
            sum = sum + F::from_i64(a) * power;
        }
        power = power * z;
    }
    sum
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioPoint<F> {
    pub z: F,
    /// `sum a_n z^n`
    pub series: F,
    /// `sum A(n) z^n = series / (1-z)`
    pub cumulative: F,
    /// [`hl_rhs`] at `z`
    pub comparison: F,
    pub ratio: F,
}

/// `(sum a_n z^n) / (1-z) / hl_rhs(z)` at each grid point.
pub fn abel_ratio_check<F: Real>(
    spec: &AsymptoticSpec<F>,
    coeffs: impl Fn(u64) -> i64,
    zs: &[F],
    rule: &TailRule,
) -> Result<Vec<RatioPoint<F>>> {
    zs.iter()
        .map(|&z| {
            let series = eval_series(&coeffs, z, rule)?;
            let comparison = hl_rhs(spec, z)?;
            let cumulative = series / (F::one() - z);
            Ok(RatioPoint {
                z,
                series,
                cumulative,
                comparison,
                ratio: cumulative / comparison,
            })
        })
        .collect()
}

/// Growth profile of a family's generating function along `z_k = 1 - 2^-k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundProfile<F> {
    pub ks: Vec<u32>,
    pub zs: Vec<F>,
    /// `(1-z) |sum_{n>=1} p(n) z^n|`
    pub b1: Vec<F>,
    /// `(1-z) sqrt(log(1/(1-z))) sum_{n>=1, p(n)>0} z^n`
    pub b2: Vec<F>,
}

/// Maximum and median of a sample.
pub fn max_and_median<F: Real>(v: &[F]) -> (F, F) {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite profile values"));
    let n = sorted.len();
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / F::from_f64(2.0)
    };
    (sorted[n - 1], median)
}

/// `max(v) <= factor * median(v)`.
pub fn bounded_by_median<F: Real>(v: &[F], factor: F) -> bool {
    if v.is_empty() {
        return true;
    }
    let (max, median) = max_and_median(v);
    max <= factor * median
}

impl<F: Real> BoundProfile<F> {
    /// The boundedness proxy `max <= 4 median`, for B1 and B2 separately.
    pub fn proxies(&self) -> (bool, bool) {
        let four = F::from_f64(4.0);
        (
            bounded_by_median(&self.b1, four),
            bounded_by_median(&self.b2, four),
        )
    }
}

pub fn bound_profile<F: Real>(f: Family, k_max: u32, rule: &TailRule) -> Result<BoundProfile<F>> {
    if !(2..=14).contains(&k_max) {
        return Err(Error::Domain {
            value: k_max.to_string(),
            domain: "2 <= k_max <= 14",
        });
    }
    let ks: Vec<u32> = (2..=k_max).collect();
    let zs: Vec<F> = ks
        .iter()
        .map(|&k| F::one() - F::from_f64(2f64.powi(-(k as i32))))
        .collect();
    let top = rule.terms(*zs.last().expect("k_max >= 2"))?;
    let table = rhs_table(f, top);
    let coeff = |n: u64| if n == 0 { 0 } else { table[n as usize] };
    let present = |n: u64| (n >= 1 && table[n as usize] > 0) as i64;
    let mut b1 = Vec::with_capacity(zs.len());
    let mut b2 = Vec::with_capacity(zs.len());
    for &z in &zs {
        let gap = F::one() - z;
        b1.push(gap * eval_series(coeff, z, rule)?.abs());
        b2.push(gap * gap.recip().ln().sqrt() * eval_series(present, z, rule)?);
    }
    Ok(BoundProfile { ks, zs, b1, b2 })
}

/// Outcome of the telescoping check `[present(n)] == R2(n) - R2(n-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrivialityReport {
    pub checked: u64,
    pub first_failure: Option<u64>,
}

impl TrivialityReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Running count `R2(n) = #{1 <= m <= n : present(m)}`, with `R2(0) = 0`.
pub fn cumulative_presence(present: &[bool]) -> Vec<u64> {
    let mut acc = 0u64;
    present
        .iter()
        .enumerate()
        .map(|(n, &p)| {
            if n >= 1 && p {
                acc += 1;
            }
            acc
        })
        .collect()
}

/// Coefficient form of `sum_{r(n)>0} z^n = (1-z) sum_{n>=1} R2(n) z^n`:
/// for `1 <= n <= N`, `[present(n)] == R2(n) - R2(n-1)`.
pub fn triviality_check(present: &[bool], r2: &[u64], n_max: u64) -> TrivialityReport {
    let first_failure = (1..=n_max).find(|&n| {
        let n = n as usize;
        let diff = r2[n] as i64 - r2[n - 1] as i64;
        diff != present[n] as i64
    });
    TrivialityReport {
        checked: n_max,
        first_failure,
    }
}

/// Presence indicator `r(n) > 0` for a definite form, `0 <= n <= n_max`.
pub fn form_presence(form: &QuadFormSpec, n_max: u64) -> Result<Vec<bool>> {
    Ok(RepTable::sweep(form, n_max)?.presence())
}

/// Presence indicator `p(n) > 0` for a family, `0 <= n <= n_max` (`n = 0` excluded).
pub fn family_presence(f: Family, n_max: u64) -> Vec<bool> {
    let mut p: Vec<bool> = rhs_table(f, n_max).into_iter().map(|c| c > 0).collect();
    p[0] = false;
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(h: SlowlyVarying, k: f64) -> AsymptoticSpec<f64> {
        AsymptoticSpec::new(1, h, k).unwrap()
    }

    #[test]
    fn hl_rhs_values() {
        let one = spec(SlowlyVarying::ConstantOne, 1.0);
        assert!((hl_rhs(&one, 0.9).unwrap() - 100.0).abs() < 1e-9);
        let z = 1.0 - (-1.0f64).exp();
        let v = hl_rhs(&spec(SlowlyVarying::InvSqrtLog, 1.0), z).unwrap();
        assert!((v - 1f64.exp().powi(2)).abs() < 1e-9);
        assert!(matches!(hl_rhs(&one, 1.0), Err(Error::Domain { .. })));
        assert!(hl_rhs(&one, 0.0).is_err());
        assert!(AsymptoticSpec::new(0, SlowlyVarying::ConstantOne, 1.0).is_err());
        let two = AsymptoticSpec::new(2, SlowlyVarying::ConstantOne, 1.0f64).unwrap();
        assert!((hl_rhs(&two, 0.5).unwrap() - 16.0).abs() < 1e-12);
    }

    #[test]
    fn hl_rhs_monotone_on_upper_half() {
        for h in [SlowlyVarying::ConstantOne, SlowlyVarying::InvSqrtLog] {
            let s = spec(h, 1.0);
            let mut prev = 0.0;
            for i in 1..1000 {
                let z = 0.5 + 0.5 * i as f64 / 1000.0;
                let v = hl_rhs(&s, z).unwrap();
                assert!(v > prev, "{h:?} z={z}");
                prev = v;
            }
        }
    }

    #[test]
    fn eval_series_closed_forms() {
        let rule = TailRule::default();
        let g: f64 = eval_series(|_| 1, 0.5, &rule).unwrap();
        assert!((g - 2.0).abs() < 1e-6);
        let s: f64 = eval_series(|n| n as i64, 0.9, &rule).unwrap();
        assert!(((s - 90.0) / 90.0).abs() < 1e-3);
        let f: f32 = eval_series(|_| 1, 0.5f32, &rule).unwrap();
        assert!((f - 2.0).abs() < 1e-5);
    }

    #[test]
    fn tail_rule_cap() {
        let rule = TailRule::with_max_terms(1000);
        let n = rule.terms(0.9).unwrap();
        assert!(n as f64 * 0.1 >= 30.0 && n <= 301);
        assert!(matches!(
            rule.terms(0.999),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(rule.terms(1.5).is_err());
    }

    #[test]
    fn tail_rule_adequacy() {
        let rule = TailRule::default();
        for z in [0.9, 0.99, 0.999] {
            for seq in [
                (|_| 1) as fn(u64) -> i64,
                |n| n as i64,
                |n| (n % 7) as i64 - 3,
            ] {
                let n = rule.terms(z).unwrap();
                let a: f64 = eval_partial(seq, z, n);
                let b = eval_partial(seq, z, 2 * n);
                let rel = ((a - b) / b).abs();
                assert!(rel < 1e-6, "z={z} rel={rel}");
            }
        }
    }

    #[test]
    fn geometric_ratio() {
        let r = abel_ratio_check(
            &spec(SlowlyVarying::ConstantOne, 1.0),
            |_| 1,
            &[0.9, 0.99, 0.999],
            &TailRule::default(),
        )
        .unwrap();
        assert!((r.last().unwrap().ratio - 1.0).abs() < 0.01);
    }

    #[test]
    fn profile_shape() {
        let p: BoundProfile<f64> = bound_profile(Family::P2, 2, &TailRule::default()).unwrap();
        assert_eq!(p.ks, vec![2]);
        assert_eq!(p.b1.len(), 1);
        assert!(bound_profile::<f64>(Family::P2, 1, &TailRule::default()).is_err());
        assert!(bound_profile::<f64>(Family::P2, 15, &TailRule::default()).is_err());
    }

    #[test]
    fn median_helpers() {
        assert_eq!(max_and_median(&[3.0, 1.0, 2.0]), (3.0, 2.0));
        assert_eq!(max_and_median(&[4.0, 1.0, 2.0, 3.0]), (4.0, 2.5));
        assert!(bounded_by_median(&[1.0, 1.0, 4.0], 4.0));
        assert!(!bounded_by_median(&[1.0, 1.0, 4.1], 4.0));
    }

    #[test]
    fn triviality_detects_corruption() {
        let present = form_presence(&QuadFormSpec::SUM_OF_SQUARES, 500).unwrap();
        let mut r2 = cumulative_presence(&present);
        assert!(triviality_check(&present, &r2, 500).passed());
        r2[77] += 1;
        assert_eq!(triviality_check(&present, &r2, 500).first_failure, Some(77));
    }
}

//! Representation counts of positive definite binary quadratic forms and
//! the partial sums `R1(x) = sum_{n<=x} r(n)`, `R2(x) = #{n <= x : r(n) > 0}`.
//!
//! Sums start at `n = 1`; the origin is never counted.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// `Q(x, y) = a x^2 + b x y + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadFormSpec {
    a: i64,
    b: i64,
    c: i64,
    discriminant: i64,
}

impl QuadFormSpec {
    /// `x^2 - 2y^2`, discriminant 8.
    pub const INDEFINITE_8: QuadFormSpec = QuadFormSpec::new(1, 0, -2);
    /// `x^2 + 2y^2`, discriminant -8.
    pub const DEFINITE_MINUS_8: QuadFormSpec = QuadFormSpec::new(1, 0, 2);
    /// `x^2 + y^2`, discriminant -4.
    pub const SUM_OF_SQUARES: QuadFormSpec = QuadFormSpec::new(1, 0, 1);

    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        QuadFormSpec {
            a,
            b,
            c,
            discriminant: b * b - 4 * a * c,
        }
    }

    /// Construct from coefficients and a claimed discriminant, rejecting a mismatch.
    pub fn with_discriminant(a: i64, b: i64, c: i64, discriminant: i64) -> Result<Self> {
        let f = Self::new(a, b, c);
        if f.discriminant != discriminant {
            return Err(Error::UnsupportedParameters(format!(
                "discriminant of ({a},{b},{c}) is {}, not {discriminant}",
                f.discriminant
            )));
        }
        Ok(f)
    }

    pub fn coefficients(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    /// Positive definite: `D < 0` and `a > 0`.
    pub fn definite(&self) -> bool {
        self.discriminant < 0 && self.a > 0
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    fn require_definite(&self) -> Result<()> {
        if self.definite() {
            Ok(())
        } else {
            Err(Error::UnsupportedForm {
                a: self.a,
                b: self.b,
                c: self.c,
                reason: "representation counts need a positive definite form",
            })
        }
    }

    /// Largest `|y|` with `Q(x, y) <= bound` for some `x`: `y^2 <= 4 a bound / |D|`.
    fn y_extent(&self, bound: i64) -> i64 {
        let lim = (4 * self.a as i128 * bound as i128) / (-self.discriminant) as i128;
        (lim as u128).isqrt() as i64
    }
}

impl fmt::Display for QuadFormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

impl FromStr for QuadFormSpec {
    type Err = Error;

    /// Parses a comma triple such as `1,0,1`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::UnsupportedParameters(format!("bad form {s:?}: {e}")))?;
        match parts[..] {
            [a, b, c] => Ok(QuadFormSpec::new(a, b, c)),
            _ => Err(Error::UnsupportedParameters(format!(
                "form must be a comma triple a,b,c, got {s:?}"
            ))),
        }
    }
}

/// Exact number of integer pairs with `Q(x, y) = n`.
///
/// For each admissible `y`, solves `a x^2 + b y x + (c y^2 - n) = 0` with an
/// integer square root of `D y^2 + 4 a n`.
pub fn rep_count(form: &QuadFormSpec, n: u64) -> Result<u64> {
    form.require_definite()?;
    let (a, b, _) = form.coefficients();
    let d = form.discriminant() as i128;
    let n = n as i128;
    let ext = form.y_extent(n as i64);
    let mut count = 0;
    for y in -ext..=ext {
        let y = y as i128;
        let delta = d * y * y + 4 * a as i128 * n;
        if delta < 0 {
            continue;
        }
        let s = (delta as u128).isqrt() as i128;
        if s * s != delta {
            continue;
        }
        let roots: &[i128] = if s == 0 { &[0] } else { &[-1, 1] };
        for &pm in roots {
            let num = -(b as i128) * y + pm * s;
            if num % (2 * a as i128) == 0 {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Table of `r(n)` for `0 <= n <= bound`, filled by a single lattice sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepTable {
    form: QuadFormSpec,
    counts: Vec<u32>,
}

impl RepTable {
    pub fn sweep(form: &QuadFormSpec, bound: u64) -> Result<Self> {
        form.require_definite()?;
        let bound = bound as i64;
        let (a, b, _) = form.coefficients();
        let d = form.discriminant();
        let mut counts = vec![0u32; bound as usize + 1];
        let ext = form.y_extent(bound);
        for y in -ext..=ext {
            let disc = (d * y * y + 4 * a * bound) as f64;
            if disc < 0.0 {
                continue;
            }
            let centre = -(b * y) as f64 / (2 * a) as f64;
            let half = disc.sqrt() / (2 * a) as f64;
            let mut lo = (centre - half).ceil() as i64;
            let mut hi = (centre + half).floor() as i64;
            while form.eval(lo - 1, y) <= bound {
                lo -= 1;
            }
            while lo <= hi && form.eval(lo, y) > bound {
                lo += 1;
            }
            while form.eval(hi + 1, y) <= bound {
                hi += 1;
            }
            while hi >= lo && form.eval(hi, y) > bound {
                hi -= 1;
            }
            for x in lo..=hi {
                counts[form.eval(x, y) as usize] += 1;
            }
        }
        Ok(RepTable {
            form: *form,
            counts,
        })
    }

    pub fn form(&self) -> &QuadFormSpec {
        &self.form
    }

    pub fn bound(&self) -> u64 {
        self.counts.len() as u64 - 1
    }

    /// `r(n)`, panicking beyond the table bound.
    pub fn r(&self, n: u64) -> u64 {
        self.counts[n as usize] as u64
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Indicator of `r(n) > 0` for `n` in `0..=bound`, with `n = 0` excluded.
    pub fn presence(&self) -> Vec<bool> {
        let mut p: Vec<bool> = self.counts.iter().map(|&c| c > 0).collect();
        p[0] = false;
        p
    }

    /// Partial sums at each requested bound (ascending, all within the table).
    pub fn summaries(&self, xs: &[u64]) -> Vec<RepSummary> {
        let mut out = Vec::with_capacity(xs.len());
        let (mut r1, mut r2, mut n) = (0u64, 0u64, 0u64);
        for &x in xs {
            while n < x {
                n += 1;
                let c = self.counts[n as usize] as u64;
                r1 += c;
                r2 += (c > 0) as u64;
            }
            out.push(RepSummary::new(x, r1, r2));
        }
        out
    }
}

/// Partial sums and the naive constant estimates `R1/x` and `R2 sqrt(log x)/x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepSummary {
    pub x: u64,
    pub r1: u64,
    pub r2: u64,
    pub c1_hat: f64,
    pub c2_hat: f64,
}

impl RepSummary {
    pub fn new(x: u64, r1: u64, r2: u64) -> Self {
        let xf = x as f64;
        RepSummary {
            x,
            r1,
            r2,
            c1_hat: r1 as f64 / xf,
            c2_hat: r2 as f64 * xf.ln().sqrt() / xf,
        }
    }
}

/// `R1(x)`, `R2(x)` for a definite form, `x >= 2`.
pub fn partial_sums(form: &QuadFormSpec, x: u64) -> Result<RepSummary> {
    constant_profile(form, &[x]).map(|mut v| v.remove(0))
}

/// Partial sums at each `x` in an increasing list, from one sweep.
pub fn constant_profile(form: &QuadFormSpec, xs: &[u64]) -> Result<Vec<RepSummary>> {
    if xs.iter().any(|&x| x < 2) {
        return Err(Error::Domain {
            value: format!("{xs:?}"),
            domain: "x >= 2",
        });
    }
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain {
            value: format!("{xs:?}"),
            domain: "strictly increasing bounds",
        });
    }
    let Some(&top) = xs.last() else {
        return Ok(Vec::new());
    };
    Ok(RepTable::sweep(form, top)?.summaries(xs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_r(form: &QuadFormSpec, n: i64) -> u64 {
        let k = 2 * (n as f64).sqrt() as i64 + 2;
        let mut c = 0;
        for x in -k..=k {
            for y in -k..=k {
                if form.eval(x, y) == n {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn builtins() {
        assert_eq!(QuadFormSpec::INDEFINITE_8.discriminant(), 8);
        assert_eq!(QuadFormSpec::DEFINITE_MINUS_8.discriminant(), -8);
        assert_eq!(QuadFormSpec::SUM_OF_SQUARES.discriminant(), -4);
        assert!(!QuadFormSpec::INDEFINITE_8.definite());
        assert!(QuadFormSpec::SUM_OF_SQUARES.definite());
        assert!(!QuadFormSpec::new(-1, 0, -1).definite());
        assert!(QuadFormSpec::with_discriminant(1, 0, 1, -3).is_err());
        assert_eq!(
            "1, 0, 2".parse::<QuadFormSpec>(),
            Ok(QuadFormSpec::DEFINITE_MINUS_8)
        );
        assert!("1,0".parse::<QuadFormSpec>().is_err());
    }

    #[test]
    fn small_representation_counts() {
        let s = QuadFormSpec::SUM_OF_SQUARES;
        assert_eq!(rep_count(&s, 1), Ok(4));
        assert_eq!(rep_count(&s, 3), Ok(0));
        assert_eq!(rep_count(&s, 25), Ok(12));
        assert_eq!(rep_count(&QuadFormSpec::DEFINITE_MINUS_8, 1), Ok(2));
        assert!(matches!(
            rep_count(&QuadFormSpec::INDEFINITE_8, 1),
            Err(Error::UnsupportedForm { .. })
        ));
    }

    #[test]
    fn rep_count_matches_brute_force_with_cross_term() {
        for form in [
            QuadFormSpec::new(1, 1, 1),
            QuadFormSpec::new(2, 1, 3),
            QuadFormSpec::new(1, 0, 5),
            QuadFormSpec::SUM_OF_SQUARES,
        ] {
            let table = RepTable::sweep(&form, 200).unwrap();
            for n in 0..=200 {
                let b = brute_r(&form, n);
                assert_eq!(rep_count(&form, n as u64).unwrap(), b, "{form} n={n}");
                assert_eq!(table.r(n as u64), b, "{form} n={n}");
            }
        }
    }

    #[test]
    fn partial_sum_examples() {
        let s = partial_sums(&QuadFormSpec::SUM_OF_SQUARES, 10).unwrap();
        assert_eq!(s.r1, 36);
        let t = partial_sums(&QuadFormSpec::DEFINITE_MINUS_8, 10).unwrap();
        // 1, 2, 3, 4, 6, 8, 9
        assert_eq!(t.r2, 7);
        assert!(s.r2 <= s.x && s.r1 >= s.r2);
    }

    #[test]
    fn profile_validation() {
        let f = QuadFormSpec::SUM_OF_SQUARES;
        assert_eq!(constant_profile(&f, &[2]).unwrap().len(), 1);
        assert!(constant_profile(&f, &[1]).is_err());
        assert!(constant_profile(&f, &[10, 5]).is_err());
        assert!(partial_sums(&QuadFormSpec::INDEFINITE_8, 10).is_err());
    }

    #[test]
    fn profile_is_monotone_and_matches_single_sums() {
        let f = QuadFormSpec::DEFINITE_MINUS_8;
        let xs = [10, 100, 1000, 5000];
        let prof = constant_profile(&f, &xs).unwrap();
        for w in prof.windows(2) {
            assert!(w[0].r1 <= w[1].r1 && w[0].r2 <= w[1].r2);
        }
        for s in &prof {
            assert_eq!(*s, partial_sums(&f, s.x).unwrap());
        }
    }
}

//! The three lacunary partition identities.
//!
//! ```text
//! P1:  1 + 2 sum_{n>=1} q^{n^2}      / ((1+q^{2n}) (-q;q^2)_n)
//!        = sum_{n>=0} q^{n^2} (1+q^{2n+1}) sum_{2|j|<=n} (-1)^j q^{-2j^2}
//! P2:  1 + 2 sum_{n>=1} q^n          / ((1+q^{2n}) (-q;q^2)_n)
//!        = sum_{n>=0} q^{n^2} (1+q^{2n+1}) sum_{2|j|<=n} (-1)^j q^{2j^2}
//! P3:  1 + 2 sum_{n>=1} (-1)^n q^{n(n+1)} / ((1+q^{2n}) (q^2;q^4)_n)
//!        = sum_{n>=0} (-1)^n q^{2n^2} (1-q^{4n+2}) sum_{2|j|<=n} (-1)^j q^{2j^2}
//! ```
//!
//! The P3 left side is a series in `q^2`, so its right side is the double sum
//! over `n^2 + j^2` evaluated at `q^2` (the form it takes when the pair is
//! specialised before `q -> q^2`).
//!
//! `p_i(n)` is defined as the coefficient of `q^n` (`n >= 1`) on the left
//! side, including the factor 2. The partition enumerators below are
//! independent witnesses for that definition; see [`enumerate_partitions`]
//! for the readings they adopt.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partitions;
use crate::quadforms::QuadFormSpec;
use crate::scalar::Coefficient;
use crate::series::{Monomial, PowerSeries};

/// Default bound for exhaustive partition enumeration.
pub const ENUMERATION_BOUND: u64 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    P1,
    P2,
    P3,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::P1, Family::P2, Family::P3];

    /// Fundamental discriminant of the attached quadratic form.
    pub fn discriminant(self) -> i64 {
        match self {
            Family::P1 => 8,
            Family::P2 => -8,
            Family::P3 => -4,
        }
    }

    pub fn form(self) -> QuadFormSpec {
        match self {
            Family::P1 => QuadFormSpec::INDEFINITE_8,
            Family::P2 => QuadFormSpec::DEFINITE_MINUS_8,
            Family::P3 => QuadFormSpec::SUM_OF_SQUARES,
        }
    }

    /// Identifier accepted by `verify identity --which`.
    pub fn tag(self) -> &'static str {
        match self {
            Family::P1 => "2.9",
            Family::P2 => "2.10",
            Family::P3 => "2.11",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.tag() == tag)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::P1 => "p1",
            Family::P2 => "p2",
            Family::P3 => "p3",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p1" => Ok(Family::P1),
            "p2" => Ok(Family::P2),
            "p3" => Ok(Family::P3),
            _ => Err(Error::UnsupportedParameters(format!(
                "unknown family {s:?}"
            ))),
        }
    }
}

fn parity_sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Left side below `trunc`.
///
/// Summand `n` starts at `q^{n^2}`, `q^n`, `q^{n(n+1)}` respectively, and the
/// outer sum stops at the first `n` where that exponent reaches `trunc`.
/// The running product `1/(-q;q^2)_n` (or `1/(q^2;q^4)_n`) is extended by one
/// binomial division per summand.
pub fn lhs<C: Coefficient>(f: Family, trunc: i64) -> Result<PowerSeries<C>> {
    let mut sum = PowerSeries::<C>::zero(trunc);
    let mut running = PowerSeries::<C>::one(trunc);
    for n in 1i64.. {
        let lead = match f {
            Family::P1 => n * n,
            Family::P2 => n,
            Family::P3 => n * (n + 1),
        };
        if lead >= trunc {
            break;
        }
        running = match f {
            Family::P1 | Family::P2 => running.div_one_minus(Monomial::new(-1, 2 * n - 1)?)?,
            Family::P3 => running.div_one_minus(Monomial::new(1, 4 * n - 2)?)?,
        };
        let mut term = running
            .div_one_minus(Monomial::new(-1, 2 * n)?)?
            .shift(lead);
        if f == Family::P3 && n % 2 == 1 {
            term = term.neg()?;
        }
        sum = sum.add(&term)?;
    }
    PowerSeries::one(trunc).add(&sum.scale(C::lit(2)?)?)
}

/// Visit every `(exponent, sign)` term of the right-side double sum with
/// `exponent < bound`. Terms may repeat an exponent; they are summed.
fn for_each_rhs_term(f: Family, bound: i64, mut visit: impl FnMut(i64, i64)) {
    for n in 0i64.. {
        // smallest exponent any j can reach for this n
        let floor = match f {
            Family::P1 => (n * n + 1) / 2,
            Family::P2 => n * n,
            Family::P3 => 2 * n * n,
        };
        if floor >= bound {
            break;
        }
        for j in -(n / 2)..=(n / 2) {
            let (e1, e2, s1, s2) = match f {
                Family::P1 => (
                    n * n - 2 * j * j,
                    (n + 1) * (n + 1) - 2 * j * j,
                    parity_sign(j),
                    parity_sign(j),
                ),
                Family::P2 => (
                    n * n + 2 * j * j,
                    (n + 1) * (n + 1) + 2 * j * j,
                    parity_sign(j),
                    parity_sign(j),
                ),
                Family::P3 => (
                    2 * (n * n + j * j),
                    2 * ((n + 1) * (n + 1) + j * j),
                    parity_sign(n + j),
                    -parity_sign(n + j),
                ),
            };
            if e1 < bound {
                visit(e1, s1);
            }
            if e2 < bound {
                visit(e2, s2);
            }
        }
    }
}

/// Right side below `trunc`, assembled term by term from the double sum.
pub fn rhs<C: Coefficient>(f: Family, trunc: i64) -> Result<PowerSeries<C>> {
    let mut terms = Vec::new();
    let mut lowest = 0;
    for_each_rhs_term(f, trunc, |e, s| {
        lowest = lowest.min(e);
        terms.push((e, s));
    });
    if lowest < 0 {
        return Err(Error::NotOrdinary {
            min_exp: lowest,
            context: format!("right side of {}", f.tag()),
        });
    }
    let terms = terms
        .into_iter()
        .map(|(e, s)| C::lit(s).map(|c| (e, c)))
        .collect::<Result<Vec<_>>>()?;
    PowerSeries::from_terms(terms, trunc)
}

/// Right-side coefficients for `0 <= n <= x_max` from one sweep of the double sum.
pub fn rhs_table(f: Family, x_max: u64) -> Vec<i64> {
    let mut table = vec![0i64; x_max as usize + 1];
    for_each_rhs_term(f, x_max as i64 + 1, |e, s| table[e as usize] += s);
    table
}

fn exact_sqrt(v: i64) -> Option<i64> {
    if v < 0 {
        return None;
    }
    let r = (v as u64).isqrt() as i64;
    (r * r == v).then_some(r)
}

/// Coefficient of `q^n` on the right side, by solving for the summation
/// indices instead of expanding the series: O(sqrt n).
pub fn rhs_coeff(f: Family, n: u64) -> i64 {
    let n = n as i64;
    // weight of +-j, counting both signs when j != 0
    let both = |j: i64| if j == 0 { 1 } else { 2 } * parity_sign(j);
    let mut total = 0;
    match f {
        Family::P1 => {
            // r^2 - 2 j^2 = n with 2j <= r, so r <= sqrt(2n)
            let r_max = ((2 * n) as u64).isqrt() as i64 + 1;
            for r in 0..=r_max {
                for (square, limit) in [(r * r, r), ((r + 1) * (r + 1), r)] {
                    let d = square - n;
                    if d >= 0 && d % 2 == 0 {
                        if let Some(j) = exact_sqrt(d / 2) {
                            if 2 * j <= limit {
                                total += both(j);
                            }
                        }
                    }
                }
            }
        }
        Family::P2 => {
            // r^2 + 2 j^2 = n  or  (r+1)^2 + 2 j^2 = n, with 2j <= r
            let mut j = 0;
            while 2 * j * j <= n {
                if let Some(s) = exact_sqrt(n - 2 * j * j) {
                    if 2 * j <= s {
                        total += both(j);
                    }
                    if s >= 1 && 2 * j < s {
                        total += both(j);
                    }
                }
                j += 1;
            }
        }
        Family::P3 => {
            if n % 2 != 0 {
                return 0;
            }
            let m = n / 2;
            let mut j = 0;
            while j * j <= m {
                if let Some(s) = exact_sqrt(m - j * j) {
                    let signed = |k: i64| if j == 0 { 1 } else { 2 } * parity_sign(k + j);
                    if 2 * j <= s {
                        total += signed(s);
                    }
                    if s >= 1 && 2 * j < s {
                        total -= signed(s - 1);
                    }
                }
                j += 1;
            }
        }
    }
    total
}

/// The explicit coefficient formula for P1:
///
/// ```text
/// p1(n) = sum_{n = r^2 - 2j^2, 2|j| <= r} (-1)^j + sum_{n = (r+1)^2 - 2j^2, 2|j| <= r} (-1)^j
/// ```
///
/// evaluated by direct enumeration of `r <= ceil(sqrt(2n)) + 1` and all
/// admissible `j`. At `n = 0` it returns the constant term 1.
pub fn p1_formula(n: u64) -> i64 {
    let n = n as i64;
    let r_max = ((2 * n) as f64).sqrt().ceil() as i64 + 1;
    let mut total = 0;
    for r in 0..=r_max {
        for j in -(r / 2)..=(r / 2) {
            if r * r - 2 * j * j == n {
                total += parity_sign(j);
            }
            if (r + 1) * (r + 1) - 2 * j * j == n {
                total += parity_sign(j);
            }
        }
    }
    total
}

/// Signed partition count for one family and one `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightedCount {
    /// Signed count of the weighted partitions themselves.
    pub raw: i64,
    /// `2 * raw`: the left side carries an overall factor 2 on every `n >= 1`.
    pub value: i64,
}

/// Weight of a partition under the P1 reading: odd parts `1, 3, ..., 2k-1`
/// all present, the only even part allowed is `2k`, sign `-1` per extra copy
/// of an odd part and per copy of the even part.
fn p1_weight(mult: &[u32]) -> i64 {
    let Some(largest_odd) = (1..mult.len()).rev().find(|&k| k % 2 == 1 && mult[k] > 0) else {
        return 0;
    };
    let even_part = largest_odd + 1;
    let mut flips = 0u32;
    for (part, &m) in mult.iter().enumerate().skip(1) {
        if part % 2 == 1 {
            if part <= largest_odd && m == 0 {
                return 0;
            }
            flips += m.saturating_sub(1);
        } else if m > 0 {
            if part != even_part {
                return 0;
            }
            flips += m;
        }
    }
    parity_sign(flips as i64)
}

/// Weight under the P2 reading, summed over every choice of the distinguished
/// part `lambda`: after removing one copy of `lambda`, every remaining part is
/// either odd and `< 2 lambda` or equal to `2 lambda`; sign `-1` per remaining part.
fn p2_weight(mult: &[u32]) -> i64 {
    let mut total = 0;
    for lambda in 1..mult.len() {
        if mult[lambda] == 0 {
            continue;
        }
        let mut rest = 0u32;
        let admissible = mult.iter().enumerate().skip(1).all(|(part, &m)| {
            let m = if part == lambda { m - 1 } else { m };
            rest += m;
            m == 0 || (part % 2 == 1 && part < 2 * lambda) || part == 2 * lambda
        });
        if admissible {
            total += parity_sign(rest as i64);
        }
    }
    total
}

/// Weight under the P3 reading: with `2k` the largest even part, the evens
/// `2, 4, ..., 2k-2` appear exactly once, `2k` at least once, odd parts are
/// `< 2k` with even multiplicity; sign `-1` per appearance of an even part.
fn p3_weight(mult: &[u32]) -> i64 {
    let Some(largest_even) = (1..mult.len()).rev().find(|&k| k % 2 == 0 && mult[k] > 0) else {
        return 0;
    };
    let mut evens = 0u32;
    for (part, &m) in mult.iter().enumerate().skip(1) {
        if part % 2 == 0 {
            if part < largest_even && m != 1 {
                return 0;
            }
            evens += m;
        } else if m > 0 && (part > largest_even || m % 2 == 1) {
            return 0;
        }
    }
    parity_sign(evens as i64)
}

/// Exhaustively enumerate the weighted partitions of `n` for a family.
///
/// The readings are the ones that reproduce the left-side coefficients:
///
/// * P1: the sign is `-1` per *extra copy* of an odd part (not per distinct
///   repeated part) and per copy of the even part.
/// * P2: "all other parts are `< 2 lambda`" is read as "all other *odd*
///   parts", with `2 lambda` the one even part allowed besides `lambda`; a
///   partition contributes once per admissible choice of `lambda`.
/// * P3: as stated.
pub fn enumerate_partitions(f: Family, n: u64) -> Result<WeightedCount> {
    enumerate_partitions_bounded(f, n, ENUMERATION_BOUND)
}

pub fn enumerate_partitions_bounded(f: Family, n: u64, bound: u64) -> Result<WeightedCount> {
    if n > bound {
        return Err(Error::ResourceLimit {
            what: "partition enumeration size",
            requested: n,
            limit: bound,
        });
    }
    let weight = match f {
        Family::P1 => p1_weight,
        Family::P2 => p2_weight,
        Family::P3 => p3_weight,
    };
    let raw = partitions::weighted_sum(n as usize, weight);
    Ok(WeightedCount {
        raw,
        value: 2 * raw,
    })
}

/// Lowest exponent at which two sides disagree, with both coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mismatch<C> {
    pub exponent: i64,
    pub left: C,
    pub right: C,
}

/// Coefficientwise comparison of two series on `0..=order`.
pub fn compare_sides<C: Coefficient>(
    left: &PowerSeries<C>,
    right: &PowerSeries<C>,
    order: i64,
) -> Result<Option<Mismatch<C>>> {
    for e in 0..=order {
        let (l, r) = (left.coeff(e)?, right.coeff(e)?);
        if l != r {
            return Ok(Some(Mismatch {
                exponent: e,
                left: l,
                right: r,
            }));
        }
    }
    Ok(None)
}

/// Both sides of a family's identity through `q^order`, and their first mismatch.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport<C> {
    pub family: Family,
    pub order: i64,
    pub lhs: PowerSeries<C>,
    pub rhs: PowerSeries<C>,
    pub mismatch: Option<Mismatch<C>>,
}

impl<C> IdentityReport<C> {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

pub fn verify_identity<C: Coefficient>(f: Family, order: i64) -> Result<IdentityReport<C>> {
    verify_identity_with(f, order, Ok)
}

/// As [`verify_identity`], passing the right side through `adjust` first.
/// Used to confirm that a perturbed right side is caught.
pub fn verify_identity_with<C: Coefficient>(
    f: Family,
    order: i64,
    adjust: impl FnOnce(PowerSeries<C>) -> Result<PowerSeries<C>>,
) -> Result<IdentityReport<C>> {
    if order < 0 {
        return Err(Error::Domain {
            value: order.to_string(),
            domain: "order >= 0",
        });
    }
    let lhs = lhs::<C>(f, order + 1)?;
    let rhs = adjust(rhs::<C>(f, order + 1)?)?;
    let mismatch = compare_sides(&lhs, &rhs, order)?;
    Ok(IdentityReport {
        family: f,
        order,
        lhs,
        rhs,
        mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = PowerSeries<i64>;

    #[test]
    fn verify_reports_first_perturbed_exponent() {
        let ok = verify_identity::<i64>(Family::P2, 60).unwrap();
        assert!(ok.passed());
        let bumped = verify_identity_with::<i64>(Family::P2, 60, |s| {
            s.add(&S::monomial(Monomial::q_pow(17), 61)?)
        })
        .unwrap();
        let m = bumped.mismatch.unwrap();
        assert_eq!(m.exponent, 17);
        assert_eq!(m.right, m.left + 1);
    }

    #[test]
    fn family_bindings() {
        assert_eq!(Family::P1.discriminant(), 8);
        assert_eq!(Family::P2.discriminant(), -8);
        assert_eq!(Family::P3.discriminant(), -4);
        for f in Family::ALL {
            assert_eq!(f.form().discriminant(), f.discriminant());
            assert_eq!(Family::from_tag(f.tag()), Some(f));
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
    }

    #[test]
    fn lhs_examples() {
        let p1 = lhs::<i64>(Family::P1, 10).unwrap();
        assert_eq!(p1.coeff(0), Ok(1));
        assert_eq!(p1.coeff(1), Ok(2));
        assert_eq!(lhs::<i64>(Family::P3, 10).unwrap().coeff(2), Ok(-2));
    }

    #[test]
    fn rhs_examples() {
        assert_eq!(rhs::<i64>(Family::P1, 10).unwrap().coeff(1), Ok(2));
        assert_eq!(rhs::<i64>(Family::P2, 10).unwrap().coeff(0), Ok(1));
        // P3's right side lives in q^2
        assert_eq!(rhs::<i64>(Family::P3, 10).unwrap().coeff(1), Ok(0));
        assert_eq!(rhs_coeff(Family::P1, 1), 2);
        assert_eq!(rhs_coeff(Family::P2, 0), 1);
    }

    #[test]
    fn printed_p3_right_side_disagrees_at_q1() {
        // sum (-1)^n q^{n^2}(1 - q^{2n+1}) sum (-1)^j q^{j^2} without q -> q^2
        let mut terms = Vec::new();
        for n in 0i64..4 {
            for j in -(n / 2)..=(n / 2) {
                let s = parity_sign(n + j);
                terms.push((n * n + j * j, s));
                terms.push(((n + 1) * (n + 1) + j * j, -s));
            }
        }
        let printed = S::from_terms(terms, 8).unwrap();
        let left = lhs::<i64>(Family::P3, 8).unwrap();
        assert_eq!(printed.coeff(1), Ok(-2));
        assert_eq!(left.first_difference(&printed), Some(1));
    }

    #[test]
    fn identities_hold_to_order_120() {
        for f in Family::ALL {
            let l = lhs::<i64>(f, 121).unwrap();
            let r = rhs::<i64>(f, 121).unwrap();
            assert_eq!(l.first_difference(&r), None, "{f}");
        }
    }

    #[test]
    fn table_matches_point_coefficients() {
        for f in Family::ALL {
            let table = rhs_table(f, 400);
            let series = rhs::<i64>(f, 401).unwrap();
            for n in 0..=400u64 {
                assert_eq!(table[n as usize], rhs_coeff(f, n), "{f} n={n}");
                assert_eq!(series.coeff(n as i64), Ok(table[n as usize]));
            }
        }
    }

    #[test]
    fn p1_formula_small() {
        assert_eq!(p1_formula(1), 2);
        assert_eq!(p1_formula(0), 1);
        let l = lhs::<i64>(Family::P1, 10).unwrap();
        assert_eq!(l.coeff(3), Ok(p1_formula(3)));
    }

    #[test]
    fn enumerators_at_one() {
        for f in Family::ALL {
            let l = lhs::<i64>(f, 2).unwrap();
            assert_eq!(
                enumerate_partitions(f, 1).unwrap().value,
                l.coeff(1).unwrap(),
                "{f}"
            );
        }
        assert_eq!(
            enumerate_partitions(Family::P1, 1).unwrap(),
            WeightedCount { raw: 1, value: 2 }
        );
    }

    #[test]
    fn enumeration_bound_enforced() {
        assert!(matches!(
            enumerate_partitions(Family::P2, 61),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(enumerate_partitions_bounded(Family::P2, 61, 70).is_ok());
    }

    #[test]
    fn p2_counts_each_choice_of_lambda() {
        // {2,1}: lambda = 2 with odd 1, or lambda = 1 with 2 = 2 lambda
        let mut mult = vec![0u32; 4];
        mult[1] = 1;
        mult[2] = 1;
        assert_eq!(p2_weight(&mult), -2);
    }

    #[test]
    fn odd_gapless_blocks() {
        // q^{n^2}/(q;q^2)_n counts partitions whose odd parts are exactly 1..2n-1,
        // and q^{n^2}/(-q;q^2)_n the same with sign -1 per extra copy.
        let trunc = 40i64;
        for n in 1..=5i64 {
            let mut plain = S::one(trunc);
            let mut signed = S::one(trunc);
            for i in 1..=n {
                plain = plain
                    .div_one_minus(Monomial::new(1, 2 * i - 1).unwrap())
                    .unwrap();
                signed = signed
                    .div_one_minus(Monomial::new(-1, 2 * i - 1).unwrap())
                    .unwrap();
            }
            let plain = plain.shift(n * n).truncate(trunc);
            let signed = signed.shift(n * n).truncate(trunc);
            for m in 0..trunc {
                let (mut count, mut weighted) = (0i64, 0i64);
                partitions::for_each_partition(m as usize, |mult| {
                    let has = |p: i64| mult.get(p as usize).is_some_and(|&c| c >= 1);
                    let ok = (1..=n).all(|i| has(2 * i - 1))
                        && mult
                            .iter()
                            .enumerate()
                            .skip(1)
                            .all(|(p, &c)| c == 0 || (p % 2 == 1 && (p as i64) < 2 * n));
                    if ok {
                        count += 1;
                        let extra: u32 = mult.iter().map(|&c| c.saturating_sub(1)).sum();
                        weighted += parity_sign(extra as i64);
                    }
                });
                assert_eq!(plain.coeff(m), Ok(count), "n={n} m={m}");
                assert_eq!(signed.coeff(m), Ok(weighted), "n={n} m={m}");
            }
        }
    }
}

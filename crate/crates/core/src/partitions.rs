//! Exhaustive partition enumeration.
//!
//! Partitions are visited as multiplicity tables: `mult[k]` is the number of
//! copies of part `k` (index 0 is unused). Each partition of `n` is visited
//! exactly once.

/// Call `visit` once for every partition of `n`.
pub fn for_each_partition(n: usize, mut visit: impl FnMut(&[u32])) {
    let mut mult = vec![0u32; n + 1];
    descend(n, n, &mut mult, &mut visit);
}

fn descend(remaining: usize, max_part: usize, mult: &mut [u32], visit: &mut impl FnMut(&[u32])) {
    if remaining == 0 {
        visit(mult);
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        for count in 1..=remaining / part {
            mult[part] = count as u32;
            descend(remaining - count * part, part - 1, mult, visit);
        }
        mult[part] = 0;
    }
}

/// Number of partitions of `n`.
pub fn partition_count(n: usize) -> u64 {
    let mut count = 0;
    for_each_partition(n, |_| count += 1);
    count
}

/// Sum of `weight` over all partitions of `n`.
pub fn weighted_sum(n: usize, mut weight: impl FnMut(&[u32]) -> i64) -> i64 {
    let mut total = 0;
    for_each_partition(n, |m| total += weight(m));
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_numbers() {
        let known = [1u64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, &p) in known.iter().enumerate() {
            assert_eq!(partition_count(n), p, "p({n})");
        }
        assert_eq!(partition_count(30), 5604);
    }

    #[test]
    fn every_visit_sums_to_n() {
        for_each_partition(12, |m| {
            let s: usize = m.iter().enumerate().map(|(k, &c)| k * c as usize).sum();
            assert_eq!(s, 12);
        });
    }

    #[test]
    fn distinct_odd_parts_equal_distinct_parts() {
        // Euler: partitions into odd parts are equinumerous with partitions into distinct parts
        for n in 1..=20 {
            let odd = weighted_sum(n, |m| {
                m.iter().enumerate().all(|(k, &c)| c == 0 || k % 2 == 1) as i64
            });
            let distinct = weighted_sum(n, |m| m.iter().all(|&c| c <= 1) as i64);
            assert_eq!(odd, distinct, "n = {n}");
        }
    }
}

//! Integer partitions: enumeration, the containment order, and the small
//! operations (first-row removal, conjugation, prepending a row) that index
//! every decomposition in the crate.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Errors raised when building or parsing a partition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    NotAPartition(Vec<usize>),
    #[error("cannot prepend row {row} to a partition with first part {first}")]
    RowTooShort { row: usize, first: usize },
    #[error("malformed partition text {0:?}; expected e.g. [3,1,1] or []")]
    Malformed(String),
}

/// A weakly decreasing sequence of positive integers. The empty sequence is
/// the unique partition of zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates and wraps a part sequence. Trailing zeros are dropped so that
    /// `[2,1,0]` and `[2,1]` denote the same partition.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotAPartition(parts));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from parts that are known to be valid.
    ///
    /// # Panics
    /// Panics if the parts are not weakly decreasing and positive.
    pub fn from_parts(parts: &[usize]) -> Self {
        Self::new(parts.to_vec()).expect("invalid partition literal")
    }

    /// The empty partition of zero.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// The hook `(a, 1^b)`; requires `a >= 1` unless `b = 0`.
    pub fn hook(a: usize, b: usize) -> Option<Self> {
        if a == 0 {
            return if b == 0 { Some(Self::empty()) } else { None };
        }
        let mut parts = vec![a];
        parts.extend(std::iter::repeat_n(1, b));
        Some(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `i`-th part (0-based), reading missing parts as zero.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// First part, or zero for the empty partition.
    pub fn first(&self) -> usize {
        self.part(0)
    }

    /// Removes the first part.
    pub fn hat(&self) -> Partition {
        Partition {
            parts: self.parts.iter().skip(1).copied().collect(),
        }
    }

    /// Conjugate partition (reflect the Young diagram in its diagonal).
    pub fn transpose(&self) -> Partition {
        let cols = self.first();
        let parts = (0..cols)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// Prepends a first row of length `t`.
    pub fn concat(t: usize, mu: &Partition) -> Result<Partition, PartitionError> {
        if t < mu.first() {
            return Err(PartitionError::RowTooShort {
                row: t,
                first: mu.first(),
            });
        }
        let mut parts = Vec::with_capacity(mu.len() + 1);
        if t > 0 {
            parts.push(t);
        }
        parts.extend_from_slice(&mu.parts);
        Ok(Partition { parts })
    }

    /// Content `col - row` of the box in row `r`, column `c` (0-based).
    pub fn content(r: usize, c: usize) -> i64 {
        c as i64 - r as i64
    }

    /// Boxes `(row, col)` in row-reading order.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (0..p).map(move |c| (r, c)))
            .collect()
    }

    /// Removable corners: rows whose last box can be deleted.
    pub fn removable_rows(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&r| self.part(r) > self.part(r + 1))
            .collect()
    }

    /// Rows to which a box can be added, including the new row at the bottom.
    pub fn addable_rows(&self) -> Vec<usize> {
        (0..=self.len())
            .filter(|&r| r == 0 || self.part(r) < self.part(r - 1))
            .collect()
    }

    /// The partition with one box removed from row `r`.
    pub fn remove_box(&self, r: usize) -> Option<Partition> {
        if !self.removable_rows().contains(&r) {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[r] -= 1;
        Partition::new(parts).ok()
    }

    /// The partition with one box added to row `r`.
    pub fn add_box(&self, r: usize) -> Option<Partition> {
        if !self.addable_rows().contains(&r) {
            return None;
        }
        let mut parts = self.parts.clone();
        if r == parts.len() {
            parts.push(1);
        } else {
            parts[r] += 1;
        }
        Partition::new(parts).ok()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Parses the bracketed text form `[a,b,c]`; whitespace is ignored and the
    /// brackets may be omitted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || PartitionError::Malformed(s.chars().take(64).collect());
        let trimmed = s.trim();
        let inner = match (trimmed.strip_prefix('['), trimmed.strip_suffix(']')) {
            (Some(_), Some(_)) if trimmed.len() >= 2 => &trimmed[1..trimmed.len() - 1],
            (None, None) => trimmed,
            _ => return Err(malformed()),
        };
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| malformed()))
            .collect::<Result<Vec<_>, _>>()?;
        if parts.contains(&0) {
            return Err(PartitionError::NotAPartition(parts));
        }
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        if parts.contains(&0) {
            return Err(serde::de::Error::custom(PartitionError::NotAPartition(parts)));
        }
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// Orders partitions of the same size reverse-lexicographically, so `(n)`
/// comes first and `(1^n)` last. Partitions of different sizes are ordered by
/// size first.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// The containment order: true iff `mu_i <= lambda_i` for every `i`.
pub fn contains(mu: &Partition, lambda: &Partition) -> bool {
    mu.len() <= lambda.len() && mu.parts.iter().zip(&lambda.parts).all(|(a, b)| a <= b)
}

/// Number of standard Young tableaux of shape `lambda` (hook length formula).
pub fn irrep_dimension(lambda: &Partition) -> u64 {
    let n = lambda.size() as u128;
    let conj = lambda.transpose();
    let mut num: u128 = (1..=n).product();
    let mut den: u128 = 1;
    for (r, c) in lambda.boxes() {
        let hook = (lambda.part(r) - c) + (conj.part(c) - r) - 1;
        den *= hook as u128;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    (num / den) as u64
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::from_parts(parts)
    }

    #[test]
    fn enumerates_small_cases() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(
            partitions_of(4),
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
    }

    /// Euler's pentagonal recurrence, used as an oracle for the count.
    fn pentagonal_count(n: usize) -> i64 {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for m in 1..=n {
            let mut k: i64 = 1;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                p[m] += sign * p[m - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= m {
                    p[m] += sign * p[m - g2];
                }
                k += 1;
            }
        }
        p[n]
    }

    #[test]
    fn count_matches_pentagonal_recurrence() {
        assert_eq!(pentagonal_count(8), 22);
        for n in 0..=14 {
            assert_eq!(partitions_of(n).len() as i64, pentagonal_count(n), "n={n}");
        }
    }

    #[test]
    fn containment_examples() {
        assert!(contains(&p(&[1]), &p(&[2, 1])));
        assert!(!contains(&p(&[2]), &p(&[1, 1])));
        assert!(contains(&p(&[1, 1]), &p(&[2, 1, 1])));
        assert!(contains(&Partition::empty(), &p(&[3])));
    }

    #[test]
    fn hat_transpose_concat() {
        assert_eq!(p(&[3, 2, 1]).hat(), p(&[2, 1]));
        assert_eq!(p(&[3, 1]).transpose(), p(&[2, 1, 1]));
        assert_eq!(Partition::concat(3, &p(&[2, 1])).unwrap(), p(&[3, 2, 1]));
        assert!(Partition::concat(1, &p(&[2, 1])).is_err());
        assert_eq!(Partition::concat(0, &Partition::empty()).unwrap(), Partition::empty());
    }

    /// Counts standard tableaux by recursively removing the largest entry.
    fn count_tableaux(lambda: &Partition) -> u64 {
        if lambda.is_empty() {
            return 1;
        }
        lambda
            .removable_rows()
            .into_iter()
            .map(|r| count_tableaux(&lambda.remove_box(r).unwrap()))
            .sum()
    }

    #[test]
    fn dimensions() {
        assert_eq!(irrep_dimension(&p(&[2, 1])), 2);
        assert_eq!(count_tableaux(&p(&[2, 1])), 2);
        for n in 1..=9 {
            assert_eq!(irrep_dimension(&Partition::row(n)), 1);
        }
        let total: u64 = partitions_of(5).iter().map(|l| irrep_dimension(l).pow(2)).sum();
        assert_eq!(total, 120);
    }

    #[test]
    fn sum_of_squares_is_factorial() {
        for n in 0..=9u64 {
            let total: u64 = partitions_of(n as usize)
                .iter()
                .map(|l| irrep_dimension(l).pow(2))
                .sum();
            assert_eq!(total, (1..=n).product::<u64>());
        }
        for n in 0..=8 {
            for l in partitions_of(n) {
                assert_eq!(irrep_dimension(&l), count_tableaux(&l));
            }
        }
    }

    #[test]
    fn text_round_trip() {
        assert_eq!("[3,1,1]".parse::<Partition>().unwrap(), p(&[3, 1, 1]));
        assert_eq!(" [ 2 , 2 ] ".parse::<Partition>().unwrap(), p(&[2, 2]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(p(&[3, 1, 1]).to_string(), "[3,1,1]");
        assert!("[1,2]".parse::<Partition>().is_err());
        assert!("[0]".parse::<Partition>().is_err());
        assert!("[1,".parse::<Partition>().is_err());
        assert!("3,x".parse::<Partition>().is_err());
    }

    fn arb_partition(max: usize) -> impl Strategy<Value = Partition> {
        (0..=max).prop_flat_map(|n| {
            let all = partitions_of(n);
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
    }

    proptest! {
        #[test]
        fn transpose_is_involution(l in arb_partition(10)) {
            prop_assert_eq!(l.transpose().transpose(), l.clone());
            prop_assert_eq!(l.transpose().size(), l.size());
        }

        #[test]
        fn containment_is_partial_order(
            a in arb_partition(8), b in arb_partition(8), c in arb_partition(8)
        ) {
            prop_assert!(contains(&a, &a));
            if contains(&a, &b) && contains(&b, &a) {
                prop_assert_eq!(&a, &b);
            }
            if contains(&a, &b) && contains(&b, &c) {
                prop_assert!(contains(&a, &c));
            }
            if contains(&a, &b) {
                prop_assert!(a.size() <= b.size());
                prop_assert_eq!(a.size() == b.size(), a == b);
            }
        }

        #[test]
        fn text_form_round_trips(l in arb_partition(12)) {
            prop_assert_eq!(l.to_string().parse::<Partition>().unwrap(), l);
        }
    }
}

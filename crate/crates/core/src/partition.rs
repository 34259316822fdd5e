//! Integer partitions (Young diagrams).
//!
//! A [`Partition`] is the label of every basis element and every simple
//! object in this crate. The canonical total order is graded: partitions are
//! compared by size first and, within a size, reverse-lexicographically on
//! their parts, so `(4) < (3,1) < (2,2) < (2,1,1) < (1,1,1,1)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from weakly decreasing parts. Trailing zeros are
    /// stripped; any other zero or an increase is rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?}: zero part before a positive part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?}: parts must be weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// |λ|, the number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// ℓ(λ), the number of nonzero parts.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The i-th part, zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Transposed diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// Whether the diagram of `self` contains the diagram of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.rows() <= self.rows() && other.parts.iter().zip(&self.parts).all(|(o, s)| o <= s)
    }

    /// Dominance order: `self ⊵ other`. Partitions of different sizes are
    /// incomparable and this returns `false`.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0, 0);
        for i in 0..self.rows().max(other.rows()) {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// All partitions of `d`, optionally with at most `max_rows` rows, in
    /// reverse-lexicographic order (largest first part first).
    pub fn enumerate(d: usize, max_rows: Option<usize>) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        enumerate_into(d, d, max_rows.unwrap_or(usize::MAX), &mut cur, &mut out);
        out
    }

    /// All partitions of size at most `max_size` in canonical order.
    pub fn enumerate_up_to(max_size: usize, max_rows: Option<usize>) -> Vec<Partition> {
        (0..=max_size).flat_map(|d| Self::enumerate(d, max_rows)).collect()
    }
}

fn enumerate_into(
    remaining: usize,
    max_part: usize,
    rows_left: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    if rows_left == 0 {
        return;
    }
    for p in (1..=max_part.min(remaining)).rev() {
        cur.push(p);
        enumerate_into(remaining - p, p, rows_left - 1, cur, out);
        cur.pop();
    }
}

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

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `3,2,1`; `0` (or an empty string) is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .unwrap_or(body)
            .trim();
        if body.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("{s:?}: bad part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// Shorthand for partition literals in tests and examples.
#[macro_export]
macro_rules! part {
    () => { $crate::Partition::empty() };
    ($($p:expr),+ $(,)?) => {
        $crate::Partition::new(vec![$($p),+]).expect("valid partition literal")
    };
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// p(d) via the pentagonal-number recurrence, independent of enumeration.
    fn partition_counts(max: usize) -> Vec<u64> {
        let mut p = vec![0i64; max + 1];
        p[0] = 1;
        for n in 1..=max {
            let mut acc = 0i64;
            for k in 1.. {
                let k = k as i64;
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > n {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                acc += sign * p[n - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= n {
                    acc += sign * p[n - g2];
                }
            }
            p[n] = acc;
        }
        p.into_iter().map(|v| v as u64).collect()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(part![].conjugate(), part![]);
        assert_eq!(part![2, 1].conjugate(), part![2, 1]);
        assert_eq!(part![3, 1].conjugate(), part![2, 1, 1]);
    }

    #[test]
    fn conjugate_is_involution_exhaustive() {
        for lambda in Partition::enumerate_up_to(10, None) {
            assert_eq!(lambda.conjugate().conjugate(), lambda);
            assert_eq!(lambda.conjugate().size(), lambda.size());
        }
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(Partition::enumerate(0, None), vec![part![]]);
        assert_eq!(Partition::enumerate(4, None).len(), 5);
        assert_eq!(
            Partition::enumerate(4, Some(2)),
            vec![part![4], part![3, 1], part![2, 2]]
        );
    }

    #[test]
    fn enumerate_counts_match_recurrence() {
        let counts = partition_counts(20);
        for (d, &count) in counts.iter().enumerate() {
            assert_eq!(Partition::enumerate(d, None).len() as u64, count, "d = {d}");
        }
    }

    #[test]
    fn bounded_enumeration_is_filtered_enumeration() {
        for d in 0..=10 {
            let all = Partition::enumerate(d, None);
            for k in 0..=d {
                let filtered: Vec<_> = all.iter().filter(|p| p.rows() <= k).cloned().collect();
                assert_eq!(Partition::enumerate(d, Some(k)), filtered);
            }
        }
    }

    #[test]
    fn enumeration_is_sorted_canonically() {
        let all = Partition::enumerate_up_to(9, None);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), part![2, 1]);
    }

    #[test]
    fn text_syntax() {
        assert_eq!("3,2,1".parse::<Partition>().unwrap(), part![3, 2, 1]);
        assert_eq!("0".parse::<Partition>().unwrap(), part![]);
        assert_eq!(part![].to_string(), "0");
        assert_eq!(part![3, 2, 1].to_string(), "3,2,1");
        assert!("1,x".parse::<Partition>().is_err());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("-1".parse::<Partition>().is_err());
    }

    #[test]
    fn json_syntax() {
        assert_eq!(serde_json::to_string(&part![]).unwrap(), "[]");
        assert_eq!(serde_json::to_string(&part![2, 1]).unwrap(), "[2,1]");
        let p: Partition = serde_json::from_str("[3,1]").unwrap();
        assert_eq!(p, part![3, 1]);
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    #[test]
    fn dominance() {
        assert!(part![3].dominates(&part![2, 1]));
        assert!(part![2, 1].dominates(&part![1, 1, 1]));
        assert!(!part![2, 2].dominates(&part![3, 1]));
        assert!(!part![3, 3].dominates(&part![4, 1, 1]));
        assert!(!part![4, 1, 1].dominates(&part![3, 3]));
        assert!(!part![2].dominates(&part![1]));
    }

    proptest! {
        #[test]
        fn text_round_trip(parts in proptest::collection::vec(1usize..6, 0..6)) {
            let mut parts = parts;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let p = Partition::new(parts).unwrap();
            prop_assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
        }
    }
}

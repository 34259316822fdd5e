use std::collections::btree_map;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A finite integer combination of partition labels.
///
/// Zero coefficients are never stored, so the empty map is the zero element
/// and structural equality is equality of combinations. All arithmetic is
/// checked: overflow is reported as [`Error::Overflow`].
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FormalSum {
    terms: BTreeMap<Partition, i64>,
}

impl FormalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn singleton(label: Partition, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(label, coeff);
        }
        FormalSum { terms }
    }

    /// Collects terms, adding coefficients of repeated labels.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, i64)>,
    {
        let mut out = FormalSum::zero();
        for (label, coeff) in terms {
            out.add_term(label, coeff)?;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, label: &Partition) -> i64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, Partition, i64> {
        self.terms.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &Partition> {
        self.terms.keys()
    }

    /// First term in canonical order.
    pub fn first(&self) -> Option<(&Partition, i64)> {
        self.terms.iter().next().map(|(k, &v)| (k, v))
    }

    /// Largest label size, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::size).max()
    }

    pub fn max_rows(&self) -> usize {
        self.terms.keys().map(Partition::rows).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, label: Partition, coeff: i64) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        match self.terms.entry(label) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().checked_add(coeff).ok_or(Error::Overflow)?;
                if sum == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &FormalSum) -> Result<FormalSum> {
        let mut out = self.clone();
        for (label, &c) in &other.terms {
            out.add_term(label.clone(), c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &FormalSum) -> Result<FormalSum> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_neg(&self) -> Result<FormalSum> {
        self.checked_scale(-1)
    }

    pub fn checked_scale(&self, factor: i64) -> Result<FormalSum> {
        if factor == 0 {
            return Ok(FormalSum::zero());
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, &v)| v.checked_mul(factor).map(|c| (k.clone(), c)).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(FormalSum { terms })
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &FormalSum, factor: i64) -> Result<()> {
        for (label, &c) in &other.terms {
            let c = c.checked_mul(factor).ok_or(Error::Overflow)?;
            self.add_term(label.clone(), c)?;
        }
        Ok(())
    }

    /// Keeps the terms whose label satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Partition) -> bool) -> FormalSum {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| keep(k))
            .map(|(k, &v)| (k.clone(), v))
            .collect();
        FormalSum { terms }
    }

    /// Homogeneous component of size `d`.
    pub fn grade(&self, d: usize) -> FormalSum {
        self.filter(|p| p.size() == d)
    }

    /// Drops labels with more than `n` rows.
    pub fn with_max_rows(&self, n: usize) -> FormalSum {
        self.filter(|p| p.rows() <= n)
    }

    /// Renders as `c*s[..] + ...` with the given basis letter; zero is `0`.
    pub fn render(&self, letter: char) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (label, &c)) in self.terms.iter().enumerate() {
            let magnitude = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            if magnitude != 1 {
                out.push_str(&format!("{magnitude}*"));
            }
            out.push_str(&format!("{letter}[{label}]"));
        }
        out
    }
}

impl IntoIterator for FormalSum {
    type Item = (Partition, i64);
    type IntoIter = btree_map::IntoIter<Partition, i64>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a> IntoIterator for &'a FormalSum {
    type Item = (&'a Partition, &'a i64);
    type IntoIter = btree_map::Iter<'a, Partition, i64>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl fmt::Debug for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render('e'))
    }
}

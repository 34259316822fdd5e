use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::formal_sum::FormalSum;
use crate::partition::Partition;

/// Largest variable count the explicit oracle accepts.
pub const ORACLE_MAX_VARS: usize = 8;

/// A polynomial in n variables stored monomial by monomial.
///
/// This is the brute-force reference: multiplication convolves exponent
/// vectors and truncation substitutes x_n = 0, with no knowledge of
/// partitions beyond orbit sums.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExplicitPoly {
    n: usize,
    monomials: BTreeMap<Vec<u32>, i64>,
}

impl ExplicitPoly {
    pub fn zero(n: usize) -> Self {
        ExplicitPoly {
            n,
            monomials: BTreeMap::new(),
        }
    }

    /// Builds a polynomial and checks it is invariant under permuting variables.
    pub fn new(n: usize, monomials: impl IntoIterator<Item = (Vec<u32>, i64)>) -> Result<Self> {
        Self::check_scale(n)?;
        let mut out = Self::zero(n);
        for (exps, c) in monomials {
            out.add_monomial(exps, c)?;
        }
        out.check_symmetric()?;
        Ok(out)
    }

    pub(crate) fn check_scale(n: usize) -> Result<()> {
        if n > ORACLE_MAX_VARS {
            return Err(Error::OracleScaleExceeded {
                n,
                limit: ORACLE_MAX_VARS,
            });
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> i64 {
        self.monomials.get(exps).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u32], i64)> {
        self.monomials.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn add_monomial(&mut self, exps: Vec<u32>, coeff: i64) -> Result<()> {
        if exps.len() != self.n {
            return Err(Error::VariableCountMismatch {
                left: self.n,
                right: exps.len(),
            });
        }
        if coeff == 0 {
            return Ok(());
        }
        let sum = self.coeff(&exps).checked_add(coeff).ok_or(Error::Overflow)?;
        if sum == 0 {
            self.monomials.remove(&exps);
        } else {
            self.monomials.insert(exps, sum);
        }
        Ok(())
    }

    /// Adds `coeff` times the orbit sum of the exponent vector `mu`
    /// (padded with zeros), i.e. `coeff * m_mu`.
    pub fn add_orbit_sum(&mut self, mu: &Partition, coeff: i64) -> Result<()> {
        if mu.rows() > self.n {
            return Ok(());
        }
        let mut exps: Vec<u32> = (0..self.n).map(|i| mu.part(i) as u32).collect();
        exps.sort_unstable();
        loop {
            self.add_monomial(exps.clone(), coeff)?;
            if !next_permutation(&mut exps) {
                break;
            }
        }
        Ok(())
    }

    pub fn multiply(&self, other: &ExplicitPoly) -> Result<ExplicitPoly> {
        if self.n != other.n {
            return Err(Error::VariableCountMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = ExplicitPoly::zero(self.n);
        for (a, &x) in &self.monomials {
            for (b, &y) in &other.monomials {
                let exps = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_monomial(exps, x.checked_mul(y).ok_or(Error::Overflow)?)?;
            }
        }
        Ok(out)
    }

    /// Substitutes x_n = 0.
    pub fn set_last_variable_zero(&self) -> Result<ExplicitPoly> {
        if self.n == 0 {
            return Err(Error::NoSmallerRing);
        }
        let mut out = ExplicitPoly::zero(self.n - 1);
        for (exps, &c) in &self.monomials {
            if exps[self.n - 1] == 0 {
                out.add_monomial(exps[..self.n - 1].to_vec(), c)?;
            }
        }
        Ok(out)
    }

    pub fn check_symmetric(&self) -> Result<()> {
        for (exps, &c) in &self.monomials {
            for i in 1..self.n {
                if exps[i - 1] == exps[i] {
                    continue;
                }
                let mut swapped = exps.clone();
                swapped.swap(i - 1, i);
                if self.coeff(&swapped) != c {
                    return Err(Error::NotSymmetric(format!(
                        "coefficient of {exps:?} is {c} but of {swapped:?} is {}",
                        self.coeff(&swapped)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Coefficients in the monomial symmetric basis: the coefficient of m_μ
    /// is that of the weakly decreasing exponent vector μ.
    pub fn monomial_coefficients(&self) -> Result<FormalSum> {
        self.check_symmetric()?;
        let mut out = FormalSum::zero();
        for (exps, &c) in &self.monomials {
            if exps.windows(2).all(|w| w[0] >= w[1]) {
                let parts = exps.iter().map(|&e| e as usize).collect();
                out.add_term(Partition::new(parts)?, c)?;
            }
        }
        Ok(out)
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    #[test]
    fn orbit_sizes() {
        let mut p = ExplicitPoly::zero(4);
        p.add_orbit_sum(&part![2, 1], 1).unwrap();
        assert_eq!(p.len(), 12);
        let mut p = ExplicitPoly::zero(8);
        p.add_orbit_sum(&part![1, 1, 1, 1], 1).unwrap();
        assert_eq!(p.len(), 70);
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        assert!(matches!(
            ExplicitPoly::new(2, [(vec![1, 0], 1)]),
            Err(Error::NotSymmetric(_))
        ));
        assert!(ExplicitPoly::new(2, [(vec![1, 0], 1), (vec![0, 1], 1)]).is_ok());
        assert!(matches!(
            ExplicitPoly::new(9, []),
            Err(Error::OracleScaleExceeded { .. })
        ));
    }
}

//! The truncated rings R_n = Z[x_1..x_n]^{S_n} and their truncation maps.
//!
//! Elements carry an explicit basis tag. Truncation R_n → R_{n-1} sets the
//! last variable to zero, which in either basis kills exactly the labels
//! with n rows; the production path is that label filter, while
//! [`ExplicitPoly`] performs honest substitution for cross-checking.

mod explicit;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use explicit::{ExplicitPoly, ORACLE_MAX_VARS};

use crate::error::{Error, Result};
use crate::formal_sum::FormalSum;
use crate::partition::Partition;
use crate::schur;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Monomial,
    Schur,
}

impl Basis {
    pub fn letter(self) -> char {
        match self {
            Basis::Monomial => 'm',
            Basis::Schur => 's',
        }
    }

    /// Converts `terms` from `self` into `target` with no row restriction.
    pub(crate) fn convert(self, target: Basis, terms: &FormalSum) -> Result<FormalSum> {
        match (self, target) {
            (a, b) if a == b => Ok(terms.clone()),
            (Basis::Schur, Basis::Monomial) => schur::schur_sum_to_monomial(terms),
            (Basis::Monomial, Basis::Schur) => schur::monomial_to_schur(terms),
            _ => unreachable!(),
        }
    }
}

/// An element of R_n in the monomial or Schur basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSymElem {
    n: usize,
    basis: Basis,
    terms: FormalSum,
}

impl TruncatedSymElem {
    /// Fails if any label has more than `n` rows.
    pub fn new(n: usize, basis: Basis, terms: FormalSum) -> Result<Self> {
        if let Some(bad) = terms.labels().find(|p| p.rows() > n) {
            return Err(Error::TooManyRows {
                label: bad.to_string(),
                rows: bad.rows(),
                n,
            });
        }
        Ok(TruncatedSymElem { n, basis, terms })
    }

    /// Builds an element from arbitrary labels, dropping those that vanish
    /// in n variables.
    pub fn from_terms_filtered(n: usize, basis: Basis, terms: &FormalSum) -> Self {
        TruncatedSymElem {
            n,
            basis,
            terms: terms.with_max_rows(n),
        }
    }

    pub fn zero(n: usize, basis: Basis) -> Self {
        TruncatedSymElem {
            n,
            basis,
            terms: FormalSum::zero(),
        }
    }

    pub fn one(n: usize, basis: Basis) -> Self {
        TruncatedSymElem {
            n,
            basis,
            terms: FormalSum::singleton(Partition::empty(), 1),
        }
    }

    /// A single basis element; zero when `label` has too many rows.
    pub fn basis_element(n: usize, basis: Basis, label: Partition) -> Self {
        Self::from_terms_filtered(n, basis, &FormalSum::singleton(label, 1))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &FormalSum {
        &self.terms
    }

    pub fn into_terms(self) -> FormalSum {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.degree()
    }

    /// p(x_1..x_n) ↦ p(x_1..x_{n-1}, 0).
    pub fn truncate(&self) -> Result<TruncatedSymElem> {
        if self.n == 0 {
            return Err(Error::NoSmallerRing);
        }
        Ok(Self::from_terms_filtered(self.n - 1, self.basis, &self.terms))
    }

    /// Applies [`truncate`](Self::truncate) until `m` variables remain.
    pub fn truncate_to(&self, m: usize) -> Result<TruncatedSymElem> {
        if m > self.n {
            return Err(Error::VariableCountMismatch {
                left: self.n,
                right: m,
            });
        }
        Ok(Self::from_terms_filtered(m, self.basis, &self.terms))
    }

    /// Homogeneous component of degree `d`.
    pub fn grade(&self, d: usize) -> TruncatedSymElem {
        TruncatedSymElem {
            n: self.n,
            basis: self.basis,
            terms: self.terms.grade(d),
        }
    }

    pub fn to_basis(&self, basis: Basis) -> Result<TruncatedSymElem> {
        // Truncation commutes with the basis change, so convert in Λ and
        // filter afterwards.
        let converted = self.basis.convert(basis, &self.terms)?;
        Ok(Self::from_terms_filtered(self.n, basis, &converted))
    }

    pub fn to_schur(&self) -> Result<TruncatedSymElem> {
        self.to_basis(Basis::Schur)
    }

    pub fn to_monomial(&self) -> Result<TruncatedSymElem> {
        self.to_basis(Basis::Monomial)
    }

    fn check_same_ring(&self, other: &TruncatedSymElem) -> Result<()> {
        if self.n != other.n {
            return Err(Error::VariableCountMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Sum, expressed in the basis of `self`.
    pub fn add(&self, other: &TruncatedSymElem) -> Result<TruncatedSymElem> {
        self.check_same_ring(other)?;
        let other = other.to_basis(self.basis)?;
        Ok(TruncatedSymElem {
            n: self.n,
            basis: self.basis,
            terms: self.terms.checked_add(&other.terms)?,
        })
    }

    pub fn scale(&self, factor: i64) -> Result<TruncatedSymElem> {
        Ok(TruncatedSymElem {
            n: self.n,
            basis: self.basis,
            terms: self.terms.checked_scale(factor)?,
        })
    }

    /// Product in R_n, expressed in the basis of `self`.
    pub fn multiply(&self, other: &TruncatedSymElem) -> Result<TruncatedSymElem> {
        self.check_same_ring(other)?;
        let a = self.to_schur()?;
        let b = other.to_schur()?;
        let product = schur::multiply_schur_sums(&a.terms, &b.terms)?;
        let product = Self::from_terms_filtered(self.n, Basis::Schur, &product);
        product.to_basis(self.basis)
    }

    /// Expands into explicit monomials in n variables.
    pub fn expand(&self) -> Result<ExplicitPoly> {
        ExplicitPoly::check_scale(self.n)?;
        let monomial = self.to_monomial()?;
        let mut out = ExplicitPoly::zero(self.n);
        for (mu, &c) in monomial.terms() {
            out.add_orbit_sum(mu, c)?;
        }
        Ok(out)
    }

    /// Reads a symmetric explicit polynomial back into the given basis.
    pub fn from_explicit(poly: &ExplicitPoly, basis: Basis) -> Result<TruncatedSymElem> {
        let monomial = TruncatedSymElem::new(poly.n(), Basis::Monomial, poly.monomial_coefficients()?)?;
        monomial.to_basis(basis)
    }
}

impl fmt::Display for TruncatedSymElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.terms.render(self.basis.letter()))
    }
}

impl fmt::Debug for TruncatedSymElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in R_{}", self, self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct TermRepr {
    pub partition: Partition,
    pub coeff: i64,
}

pub(crate) fn terms_to_repr(terms: &FormalSum) -> Vec<TermRepr> {
    terms
        .iter()
        .map(|(p, &c)| TermRepr {
            partition: p.clone(),
            coeff: c,
        })
        .collect()
}

pub(crate) fn terms_from_repr(terms: Vec<TermRepr>) -> Result<FormalSum> {
    FormalSum::from_terms(terms.into_iter().map(|t| (t.partition, t.coeff)))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElemRepr {
    n: usize,
    basis: Basis,
    terms: Vec<TermRepr>,
}

impl Serialize for TruncatedSymElem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ElemRepr {
            n: self.n,
            basis: self.basis,
            terms: terms_to_repr(&self.terms),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSymElem {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ElemRepr::deserialize(deserializer)?;
        let terms = terms_from_repr(repr.terms).map_err(serde::de::Error::custom)?;
        TruncatedSymElem::new(repr.n, repr.basis, terms).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use proptest::prelude::*;

    fn s(n: usize, terms: &[(Partition, i64)]) -> TruncatedSymElem {
        TruncatedSymElem::new(n, Basis::Schur, FormalSum::from_terms(terms.iter().cloned()).unwrap())
            .unwrap()
    }

    fn m(n: usize, terms: &[(Partition, i64)]) -> TruncatedSymElem {
        TruncatedSymElem::new(n, Basis::Monomial, FormalSum::from_terms(terms.iter().cloned()).unwrap())
            .unwrap()
    }

    #[test]
    fn truncate_examples() {
        assert!(s(3, &[(part![1, 1, 1], 1)]).truncate().unwrap().is_zero());
        assert_eq!(m(2, &[(part![2], 1)]).truncate().unwrap(), m(1, &[(part![2], 1)]));
        assert_eq!(
            s(2, &[(part![2], 1), (part![1, 1], 1)]).truncate().unwrap(),
            s(1, &[(part![2], 1)])
        );
        assert_eq!(TruncatedSymElem::one(0, Basis::Schur).truncate(), Err(Error::NoSmallerRing));
    }

    #[test]
    fn rejects_labels_with_too_many_rows() {
        let err = TruncatedSymElem::new(1, Basis::Schur, FormalSum::singleton(part![1, 1], 1));
        assert!(matches!(err, Err(Error::TooManyRows { .. })));
    }

    #[test]
    fn multiply_examples() {
        let x = s(1, &[(part![1], 1)]);
        assert_eq!(x.multiply(&x).unwrap(), s(1, &[(part![2], 1)]));
        let y = s(2, &[(part![1], 1)]);
        assert_eq!(y.multiply(&y).unwrap(), s(2, &[(part![2], 1), (part![1, 1], 1)]));
        assert!(y.multiply(&TruncatedSymElem::zero(2, Basis::Schur)).unwrap().is_zero());
        assert_eq!(
            x.multiply(&y),
            Err(Error::VariableCountMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn multiply_in_monomial_basis_keeps_basis() {
        // m_1 * m_1 = m_2 + 2 m_11 in two variables.
        let x = m(2, &[(part![1], 1)]);
        assert_eq!(x.multiply(&x).unwrap(), m(2, &[(part![2], 1), (part![1, 1], 2)]));
        // In one variable m_11 vanishes.
        let x = m(1, &[(part![1], 1)]);
        assert_eq!(x.multiply(&x).unwrap(), m(1, &[(part![2], 1)]));
    }

    #[test]
    fn expand_examples() {
        let e = m(2, &[(part![2, 1], 1)]).expand().unwrap();
        assert_eq!(e.coeff(&[2, 1]), 1);
        assert_eq!(e.coeff(&[1, 2]), 1);
        assert_eq!(e.len(), 2);
        for n in 0..=4 {
            let one = m(n, &[(part![], 1)]).expand().unwrap();
            assert_eq!(one.len(), 1);
            assert_eq!(one.coeff(&vec![0; n]), 1);
        }
        let e = s(2, &[(part![1, 1], 1)]).expand().unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.coeff(&[1, 1]), 1);
        assert!(matches!(
            TruncatedSymElem::one(9, Basis::Schur).expand(),
            Err(Error::OracleScaleExceeded { n: 9, .. })
        ));
    }

    #[test]
    fn grade_examples() {
        let e = s(3, &[(part![2], 1), (part![1], 1)]);
        assert_eq!(e.grade(2), s(3, &[(part![2], 1)]));
        assert!(e.grade(5).is_zero());
    }

    /// Schur polynomial from the SSYT definition: Σ_T x^T over tableaux with
    /// entries in 1..=n. Independent of Kostka numbers.
    fn schur_by_tableaux(lambda: &Partition, n: usize) -> ExplicitPoly {
        let cells: Vec<(usize, usize)> = (0..lambda.rows())
            .flat_map(|r| (0..lambda.part(r)).map(move |c| (r, c)))
            .collect();
        let mut grid: Vec<Vec<usize>> = lambda.parts().iter().map(|&w| vec![0; w]).collect();
        let mut out = ExplicitPoly::zero(n);
        fn go(
            idx: usize,
            cells: &[(usize, usize)],
            grid: &mut Vec<Vec<usize>>,
            n: usize,
            out: &mut ExplicitPoly,
        ) {
            if idx == cells.len() {
                let mut exps = vec![0u32; n];
                for row in grid.iter() {
                    for &x in row {
                        exps[x - 1] += 1;
                    }
                }
                out.add_monomial(exps, 1).unwrap();
                return;
            }
            let (r, c) = cells[idx];
            for x in 1..=n {
                if c > 0 && grid[r][c - 1] > x {
                    continue;
                }
                if r > 0 && grid[r - 1][c] >= x {
                    continue;
                }
                grid[r][c] = x;
                go(idx + 1, cells, grid, n, out);
                grid[r][c] = 0;
            }
        }
        go(0, &cells, &mut grid, n, &mut out);
        out
    }

    #[test]
    fn schur_expansion_matches_tableau_definition() {
        for n in 0..=4 {
            for lambda in Partition::enumerate_up_to(6, Some(n)) {
                let via_kostka = TruncatedSymElem::basis_element(n, Basis::Schur, lambda.clone())
                    .expand()
                    .unwrap();
                assert_eq!(via_kostka, schur_by_tableaux(&lambda, n), "s{lambda:?} in {n} vars");
            }
        }
    }

    #[test]
    fn multiply_agrees_with_explicit_polynomials() {
        for n in 0..=6 {
            let labels = Partition::enumerate_up_to(8, Some(n));
            for a in &labels {
                for b in &labels {
                    if a.size() + b.size() > 8 || (a.size() + b.size() > 6 && n > 4) {
                        continue;
                    }
                    for basis in [Basis::Schur, Basis::Monomial] {
                        let x = TruncatedSymElem::basis_element(n, basis, a.clone());
                        let y = TruncatedSymElem::basis_element(n, basis, b.clone());
                        let fast = x.multiply(&y).unwrap();
                        let slow = x.expand().unwrap().multiply(&y.expand().unwrap()).unwrap();
                        assert_eq!(fast.expand().unwrap(), slow);
                        assert_eq!(TruncatedSymElem::from_explicit(&slow, basis).unwrap(), fast);
                    }
                }
            }
        }
    }

    #[test]
    fn truncate_agrees_with_substitution() {
        for n in 1..=5 {
            for lambda in Partition::enumerate_up_to(6, Some(n)) {
                for basis in [Basis::Schur, Basis::Monomial] {
                    let e = TruncatedSymElem::basis_element(n, basis, lambda.clone());
                    let lhs = e.truncate().unwrap().expand().unwrap();
                    let rhs = e.expand().unwrap().set_last_variable_zero().unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn grade_isomorphism_below_n() {
        for n in 1..=8 {
            for i in 0..n {
                let upstairs = Partition::enumerate(i, Some(n));
                let downstairs = Partition::enumerate(i, Some(n - 1));
                // no label of size i < n has n rows, so truncation keeps all of them
                assert_eq!(upstairs, downstairs);
            }
        }
    }

    #[test]
    fn json_schema() {
        let e = s(3, &[(part![2, 1], -4)]);
        let text = serde_json::to_string(&e).unwrap();
        assert_eq!(text, r#"{"n":3,"basis":"schur","terms":[{"partition":[2,1],"coeff":-4}]}"#);
        assert_eq!(serde_json::from_str::<TruncatedSymElem>(&text).unwrap(), e);
        assert_eq!(e.to_string(), "-4*s[2,1]");
        assert!(serde_json::from_str::<TruncatedSymElem>(
            r#"{"n":1,"basis":"schur","terms":[{"partition":[1,1],"coeff":1}]}"#
        )
        .is_err());
    }

    fn elem(n: usize) -> impl Strategy<Value = TruncatedSymElem> {
        let labels = Partition::enumerate_up_to(4, Some(n));
        (
            prop_oneof![Just(Basis::Schur), Just(Basis::Monomial)],
            proptest::collection::vec((0..labels.len(), -3i64..=3), 0..4),
        )
            .prop_map(move |(basis, terms)| {
                let f = FormalSum::from_terms(terms.into_iter().map(|(i, c)| (labels[i].clone(), c)))
                    .unwrap();
                TruncatedSymElem::new(n, basis, f).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn truncation_is_a_ring_homomorphism(
            (a, b) in (1usize..=6).prop_flat_map(|n| (elem(n), elem(n)))
        ) {
            let lhs = a.multiply(&b).unwrap().truncate().unwrap();
            let rhs = a.truncate().unwrap().multiply(&b.truncate().unwrap()).unwrap();
            prop_assert_eq!(lhs.to_schur().unwrap(), rhs.to_schur().unwrap());
            let sum = a.add(&b).unwrap().truncate().unwrap();
            let sum2 = a.truncate().unwrap().add(&b.truncate().unwrap()).unwrap();
            prop_assert_eq!(sum, sum2);
        }

        #[test]
        fn grades_partition_the_support(a in (0usize..=6).prop_flat_map(elem)) {
            let mut total = TruncatedSymElem::zero(a.n(), a.basis());
            for d in 0..=4 {
                total = total.add(&a.grade(d)).unwrap();
                if a.n() > 0 {
                    prop_assert_eq!(a.grade(d).truncate().unwrap(), a.truncate().unwrap().grade(d));
                }
            }
            prop_assert_eq!(total, a);
        }

        #[test]
        fn basis_round_trip(a in (0usize..=6).prop_flat_map(elem)) {
            let there = a.to_basis(Basis::Schur).unwrap().to_basis(Basis::Monomial).unwrap();
            prop_assert_eq!(there.to_basis(a.basis()).unwrap(), a);
        }
    }
}

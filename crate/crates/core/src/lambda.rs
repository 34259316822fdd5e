//! The ring Λ of symmetric functions, realized two ways: as bounded-degree
//! compatible sequences in the truncated rings (read off by [`lift`]), and
//! grade by grade from a single truncated ring with enough variables
//! ([`SymFunc::from_stable_grades`]).

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formal_sum::FormalSum;
use crate::partition::Partition;
use crate::schur;
use crate::symring::{terms_from_repr, terms_to_repr, Basis, TermRepr, TruncatedSymElem};

/// An element of Λ: finitely many labels, no row bound.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymFunc {
    basis: Basis,
    terms: FormalSum,
}

impl SymFunc {
    pub fn new(basis: Basis, terms: FormalSum) -> Self {
        SymFunc { basis, terms }
    }

    pub fn zero(basis: Basis) -> Self {
        SymFunc::new(basis, FormalSum::zero())
    }

    pub fn one(basis: Basis) -> Self {
        SymFunc::new(basis, FormalSum::singleton(Partition::empty(), 1))
    }

    pub fn basis_element(basis: Basis, label: Partition) -> Self {
        SymFunc::new(basis, FormalSum::singleton(label, 1))
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &FormalSum {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// Largest label size; 0 for the zero element.
    pub fn degree(&self) -> usize {
        self.terms.degree().unwrap_or(0)
    }

    /// Image in R_n: x_{n+1}, x_{n+2}, ... set to zero.
    pub fn truncate_to(&self, n: usize) -> TruncatedSymElem {
        TruncatedSymElem::from_terms_filtered(n, self.basis, &self.terms)
    }

    pub fn grade(&self, d: usize) -> SymFunc {
        SymFunc::new(self.basis, self.terms.grade(d))
    }

    pub fn to_basis(&self, basis: Basis) -> Result<SymFunc> {
        Ok(SymFunc::new(basis, self.basis.convert(basis, &self.terms)?))
    }

    pub fn add(&self, other: &SymFunc) -> Result<SymFunc> {
        let other = other.to_basis(self.basis)?;
        Ok(SymFunc::new(self.basis, self.terms.checked_add(&other.terms)?))
    }

    pub fn scale(&self, factor: i64) -> Result<SymFunc> {
        Ok(SymFunc::new(self.basis, self.terms.checked_scale(factor)?))
    }

    /// Product in Λ. Mixed bases are multiplied and returned in the Schur
    /// basis; otherwise the common basis is kept.
    pub fn multiply(&self, other: &SymFunc) -> Result<SymFunc> {
        let out_basis = if self.basis == other.basis {
            self.basis
        } else {
            Basis::Schur
        };
        let a = self.to_basis(Basis::Schur)?;
        let b = other.to_basis(Basis::Schur)?;
        let product = SymFunc::new(Basis::Schur, schur::multiply_schur_sums(&a.terms, &b.terms)?);
        product.to_basis(out_basis)
    }

    /// Reads the grades i < n of an element of R_n, each of which is
    /// isomorphic to grade i of Λ.
    pub fn from_stable_grades(e: &TruncatedSymElem) -> SymFunc {
        SymFunc::new(e.basis(), e.terms().filter(|p| p.size() < e.n()))
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.terms.render(self.basis.letter()))
    }
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in Λ")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymFuncRepr {
    basis: Basis,
    terms: Vec<TermRepr>,
}

impl Serialize for SymFunc {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SymFuncRepr {
            basis: self.basis,
            terms: terms_to_repr(&self.terms),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SymFunc {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SymFuncRepr::deserialize(deserializer)?;
        let terms = terms_from_repr(repr.terms).map_err(serde::de::Error::custom)?;
        Ok(SymFunc::new(repr.basis, terms))
    }
}

type Provider = dyn Fn(usize) -> Result<TruncatedSymElem> + Send + Sync;

/// A family (p_n) with p_n ∈ R_n, given by a provider function, together
/// with a caller-declared bound on deg(p_n).
#[derive(Clone)]
pub struct CompatibleSequence {
    provider: Arc<Provider>,
    declared_degree_bound: usize,
}

impl CompatibleSequence {
    pub fn new<F>(declared_degree_bound: usize, provider: F) -> Self
    where
        F: Fn(usize) -> Result<TruncatedSymElem> + Send + Sync + 'static,
    {
        CompatibleSequence {
            provider: Arc::new(provider),
            declared_degree_bound,
        }
    }

    /// The truncation sequence n ↦ truncate_to(f, n).
    pub fn truncations_of(f: &SymFunc) -> Self {
        let f = f.clone();
        let bound = f.degree();
        CompatibleSequence::new(bound, move |n| Ok(f.truncate_to(n)))
    }

    /// A sequence given by an explicit table; entry n must live in R_n.
    pub fn from_prefix(declared_degree_bound: usize, prefix: Vec<TruncatedSymElem>) -> Self {
        let len = prefix.len();
        CompatibleSequence::new(declared_degree_bound, move |n| {
            prefix.get(n).cloned().ok_or_else(|| {
                Error::InvalidInput(format!("sequence table has {len} entries, no entry for n = {n}"))
            })
        })
    }

    pub fn declared_degree_bound(&self) -> usize {
        self.declared_degree_bound
    }

    pub fn at(&self, n: usize) -> Result<TruncatedSymElem> {
        let e = (self.provider)(n)?;
        if e.n() != n {
            return Err(Error::ProviderIndex { n, found: e.n() });
        }
        Ok(e)
    }
}

/// Reconstructs the element of Λ whose truncations are `seq`.
///
/// Probes n = 0..=D+1 for the declared bound D, checking the degree bound
/// and that each entry truncates to its predecessor; the result is read off
/// R_{D+1}, where no label of size ≤ D is lost.
pub fn lift(seq: &CompatibleSequence) -> Result<SymFunc> {
    let bound = seq.declared_degree_bound;
    let mut prev: Option<TruncatedSymElem> = None;
    for n in 0..=bound + 1 {
        let cur = seq.at(n)?;
        if let Some(degree) = cur.degree() {
            if degree > bound {
                return Err(Error::DegreeBoundExceeded { n, degree, bound });
            }
        }
        if let Some(prev) = &prev {
            let down = cur.truncate()?.to_basis(prev.basis())?;
            if &down != prev {
                let diff = down.terms().checked_sub(prev.terms())?;
                let labels = diff.labels().map(|p| format!("[{p}]")).collect::<Vec<_>>().join(" ");
                return Err(Error::IncompatibleSequence { n, labels });
            }
        }
        prev = Some(cur);
    }
    let top = prev.expect("at least one probe");
    Ok(SymFunc::new(top.basis(), top.into_terms()))
}

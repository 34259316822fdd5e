use std::fmt;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};

/// Position in the filtration poset; here always a nonnegative integer.
pub type Level = u32;

/// Requirements on the identifiers of simple objects.
pub trait LabelId: Clone + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {}

impl<T> LabelId for T where T: Clone + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {}

/// Isomorphism class of a simple object of some C_i.
///
/// Ordered by identifier first; identifiers are unique within a category,
/// so this is the canonical order used for block layouts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimpleLabel<L> {
    id: L,
    level: Level,
    degree: Option<u32>,
}

impl<L: LabelId> SimpleLabel<L> {
    pub fn new(id: L, level: Level, degree: Option<u32>) -> Self {
        SimpleLabel { id, level, degree }
    }

    pub fn id(&self) -> &L {
        &self.id
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn degree(&self) -> Option<u32> {
        self.degree
    }
}

impl<L: fmt::Display> fmt::Display for SimpleLabel<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id)
    }
}

impl<L: fmt::Debug> fmt::Debug for SimpleLabel<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}>@{}", self.id, self.level)
    }
}

/// A tower of semisimple finite-length categories C_0 ← C_1 ← C_2 ← ...
/// with shortening functors, described by what they do to simple objects.
///
/// Implementations must be pure: every method is deterministic.
pub trait InverseSystem: Send + Sync {
    type Label: LabelId;

    /// Identifies the system; objects from systems with different names
    /// are never combined.
    fn name(&self) -> &str;

    /// Largest index with a presentation, or `None` if every index exists.
    fn max_index(&self) -> Option<usize> {
        None
    }

    /// Simples of C_index with level at most `level`, in canonical order.
    /// Systems with infinitely many simples per level truncate this list
    /// (for instance by degree) and document the cut-off.
    fn simples(&self, index: usize, level: Level) -> Vec<SimpleLabel<Self::Label>>;

    /// f_{index-1,index} on a simple of C_index; `None` is the zero object.
    fn shorten(&self, index: usize, label: &SimpleLabel<Self::Label>)
        -> Option<SimpleLabel<Self::Label>>;

    /// n_k: for every i > n_k, f_{i-1,i} restricts to a bijection between
    /// the level-≤k simples of C_i and of C_{i-1}.
    fn witness(&self, level: Level) -> usize;

    /// Level-≤`level` simples of C_index that f_{index-1,index} sends to
    /// `label`.
    fn preimages(
        &self,
        index: usize,
        label: &SimpleLabel<Self::Label>,
        level: Level,
    ) -> Vec<SimpleLabel<Self::Label>> {
        self.simples(index, level)
            .into_iter()
            .filter(|l| self.shorten(index, l).as_ref() == Some(label))
            .collect()
    }
}

pub(crate) fn check_presented<S: InverseSystem + ?Sized>(system: &S, index: usize) -> Result<()> {
    match system.max_index() {
        Some(horizon) if index > horizon => Err(Error::BeyondPresentation { index, horizon }),
        _ => Ok(()),
    }
}

pub(crate) fn check_same_system<S: InverseSystem + ?Sized>(a: &S, b: &S) -> Result<()> {
    if a.name() != b.name() {
        return Err(Error::DifferentSystems {
            left: a.name().to_string(),
            right: b.name().to_string(),
        });
    }
    Ok(())
}

/// The category C_i of a system, with its level filtration.
pub struct SSCategory<'a, S: InverseSystem + ?Sized> {
    system: &'a S,
    index: usize,
}

impl<'a, S: InverseSystem + ?Sized> SSCategory<'a, S> {
    pub fn new(system: &'a S, index: usize) -> Result<Self> {
        check_presented(system, index)?;
        Ok(SSCategory { system, index })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Simples of Fil_level(C_i).
    pub fn simples(&self, level: Level) -> Vec<SimpleLabel<S::Label>> {
        self.system.simples(self.index, level)
    }
}

/// The pointed map f_{i-1,i} on simples, i.e. the shortening functor
/// F_{i-1,i} seen on the skeleton.
pub struct ShorteningMap<'a, S: InverseSystem + ?Sized> {
    system: &'a S,
    source: usize,
}

impl<'a, S: InverseSystem + ?Sized> ShorteningMap<'a, S> {
    /// The map out of C_source; requires `source >= 1`.
    pub fn new(system: &'a S, source: usize) -> Result<Self> {
        if source == 0 {
            return Err(Error::InvalidInput("C_0 has no outgoing shortening map".into()));
        }
        check_presented(system, source)?;
        Ok(ShorteningMap { system, source })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.source - 1
    }

    /// Image of one simple, checking that the level does not go up and the
    /// degree (when both sides carry one) is preserved.
    pub fn apply(&self, label: &SimpleLabel<S::Label>) -> Result<Option<SimpleLabel<S::Label>>> {
        let image = self.system.shorten(self.source, label);
        if let Some(img) = &image {
            if img.level() > label.level() {
                return Err(self.violation(label, format!("level rises to {}", img.level())));
            }
            if let (Some(a), Some(b)) = (label.degree(), img.degree()) {
                if a != b {
                    return Err(self.violation(label, format!("degree changes from {a} to {b}")));
                }
            }
        }
        Ok(image)
    }

    fn violation(&self, label: &SimpleLabel<S::Label>, reason: String) -> Error {
        Error::ShorteningViolation {
            from_index: self.source,
            label: label.to_string(),
            reason,
        }
    }
}

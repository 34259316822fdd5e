//! Polynomial representations of gl_n for all n, skeletally.
//!
//! The simple polynomial gl_n-modules are the Schur functors S^λ C^n with
//! ℓ(λ) ≤ n, so a representation is a multiset of partitions. Restriction
//! from gl_n to gl_{n-1} sends S^λ C^n to S^λ C^{n-1}, which is zero when λ
//! has n rows. [`GlSystem`] packages this as an inverse system; the side of
//! gl_∞ is [`GlInftyObject`], and [`gamma_n`] / [`gamma_lim`] connect the two.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::category::{
    align, apply_functor_object, InverseSystem, Level, LimitMorphism, LimitObject, SSMorphism,
    SSObject, ShorteningMap, SimpleLabel,
};
use crate::error::{Error, Result};
use crate::formal_sum::FormalSum;
use crate::lambda::SymFunc;
use crate::linalg::QMatrix;
use crate::partition::Partition;
use crate::schur::schur_product;
use crate::symring::{Basis, TruncatedSymElem};

pub type GlLabel = SimpleLabel<Partition>;

/// S^λ: level is the number of rows, degree the number of boxes.
pub fn gl_label(lambda: Partition) -> GlLabel {
    let (level, degree) = (lambda.rows() as Level, lambda.size() as u32);
    SimpleLabel::new(lambda, level, Some(degree))
}

/// The tower Rep(gl_0)_poly ← Rep(gl_1)_poly ← ... with restriction
/// functors. Every index has infinitely many simples, so enumeration is
/// cut off at `max_degree` boxes; transport and restriction are not.
#[derive(Clone, Debug)]
pub struct GlSystem {
    max_degree: usize,
}

impl GlSystem {
    pub const NAME: &'static str = "gl";

    pub fn new(max_degree: usize) -> Self {
        GlSystem { max_degree }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }
}

impl InverseSystem for GlSystem {
    type Label = Partition;

    fn name(&self) -> &str {
        Self::NAME
    }

    fn simples(&self, index: usize, level: Level) -> Vec<GlLabel> {
        let rows = index.min(level as usize);
        Partition::enumerate_up_to(self.max_degree, Some(rows))
            .into_iter()
            .map(gl_label)
            .collect()
    }

    fn shorten(&self, index: usize, label: &GlLabel) -> Option<GlLabel> {
        (index > 0 && label.id().rows() < index).then(|| gl_label(label.id().clone()))
    }

    fn witness(&self, level: Level) -> usize {
        level as usize
    }

    fn preimages(&self, index: usize, label: &GlLabel, level: Level) -> Vec<GlLabel> {
        let rows = label.id().rows();
        if rows < index && rows <= level as usize {
            vec![gl_label(label.id().clone())]
        } else {
            Vec::new()
        }
    }
}

/// An object of Rep(gl_n)_poly, checking that every λ fits in n rows.
pub fn gl_object(n: usize, mult: impl IntoIterator<Item = (Partition, u64)>) -> Result<SSObject<Partition>> {
    let mut out = Vec::new();
    for (lambda, m) in mult {
        if lambda.rows() > n {
            return Err(Error::TooManyRows {
                label: lambda.to_string(),
                rows: lambda.rows(),
                n,
            });
        }
        out.push((gl_label(lambda), m));
    }
    Ok(SSObject::new(n, out))
}

/// Res_{n-1,n}.
pub fn restrict(object: &SSObject<Partition>) -> Result<SSObject<Partition>> {
    let system = GlSystem::new(0);
    apply_functor_object(&ShorteningMap::new(&system, object.index())?, object)
}

/// An object of Rep(gl_∞)_poly: a finite multiset of partitions.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GlInftyObject {
    mult: BTreeMap<Partition, u64>,
}

impl GlInftyObject {
    pub fn new(mult: impl IntoIterator<Item = (Partition, u64)>) -> Self {
        let mut out = BTreeMap::new();
        for (lambda, m) in mult {
            if m > 0 {
                *out.entry(lambda).or_insert(0) += m;
            }
        }
        GlInftyObject { mult: out }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The trivial representation S^∅.
    pub fn unit() -> Self {
        Self::new([(Partition::empty(), 1)])
    }

    pub fn mult(&self, lambda: &Partition) -> u64 {
        self.mult.get(lambda).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &BTreeMap<Partition, u64> {
        &self.mult
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, u64)> {
        self.mult.iter().map(|(p, &m)| (p, m))
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn length(&self) -> u64 {
        self.mult.values().sum()
    }

    pub fn max_rows(&self) -> usize {
        self.mult.keys().map(Partition::rows).max().unwrap_or(0)
    }

    /// The summand on which the identity matrix acts by `d`.
    pub fn degree_component(&self, d: usize) -> Self {
        Self::new(self.iter().filter(|(p, _)| p.size() == d).map(|(p, m)| (p.clone(), m)))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(self.iter().chain(other.iter()).map(|(p, m)| (p.clone(), m)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ObjectRepr::from_mult(None, self.iter())).expect("object serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let repr: ObjectRepr = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        if repr.n.is_some() {
            return Err(Error::InvalidInput("a gl_∞ object has no \"n\" field".into()));
        }
        Ok(Self::new(repr.mult.into_iter().map(|e| (e.partition, e.m))))
    }
}

/// A morphism of gl_∞ objects, one rational block per partition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GlInftyMorphism {
    source: GlInftyObject,
    target: GlInftyObject,
    blocks: BTreeMap<Partition, QMatrix>,
}

impl GlInftyMorphism {
    pub fn new(
        source: GlInftyObject,
        target: GlInftyObject,
        blocks: BTreeMap<Partition, QMatrix>,
    ) -> Result<Self> {
        for (lambda, block) in &blocks {
            let shape = (target.mult(lambda) as usize, source.mult(lambda) as usize);
            if block.shape() != shape {
                return Err(Error::ShapeMismatch(format!(
                    "block at {lambda} is {}x{}, expected {}x{}",
                    block.rows(),
                    block.cols(),
                    shape.0,
                    shape.1
                )));
            }
        }
        let blocks = blocks.into_iter().filter(|(_, b)| b.rows() > 0 && b.cols() > 0).collect();
        Ok(GlInftyMorphism {
            source,
            target,
            blocks,
        })
    }

    pub fn identity(object: &GlInftyObject) -> Self {
        let blocks = object.iter().map(|(p, m)| (p.clone(), QMatrix::identity(m as usize))).collect();
        GlInftyMorphism {
            source: object.clone(),
            target: object.clone(),
            blocks,
        }
    }

    pub fn source(&self) -> &GlInftyObject {
        &self.source
    }

    pub fn target(&self) -> &GlInftyObject {
        &self.target
    }

    pub fn block(&self, lambda: &Partition) -> QMatrix {
        self.blocks.get(lambda).cloned().unwrap_or_else(|| {
            QMatrix::zeros(self.target.mult(lambda) as usize, self.source.mult(lambda) as usize)
        })
    }
}

/// Γ_n: keep the simples that survive in n variables.
pub fn gamma_n(object: &GlInftyObject, n: usize) -> SSObject<Partition> {
    SSObject::new(
        n,
        object.iter().filter(|(p, _)| p.rows() <= n).map(|(p, m)| (gl_label(p.clone()), m)),
    )
}

pub fn gamma_n_morphism(f: &GlInftyMorphism, n: usize) -> Result<SSMorphism<Partition>> {
    let blocks = f
        .blocks
        .iter()
        .filter(|(p, _)| p.rows() <= n)
        .map(|(p, b)| (gl_label(p.clone()), b.clone()))
        .collect();
    SSMorphism::new(gamma_n(&f.source, n), gamma_n(&f.target, n), blocks)
}

/// Γ_lim: the compatible family (Γ_n M)_n, anchored where every simple of
/// M is already present.
pub fn gamma_lim(object: &GlInftyObject, system: &Arc<GlSystem>) -> Result<LimitObject<GlSystem>> {
    let rows = object.max_rows();
    LimitObject::new(Arc::clone(system), rows as Level, gamma_n(object, rows.max(1)))
}

pub fn gamma_lim_morphism(f: &GlInftyMorphism, system: &Arc<GlSystem>) -> Result<LimitMorphism<GlSystem>> {
    let (source, target) = align(&gamma_lim(&f.source, system)?, &gamma_lim(&f.target, system)?)?;
    let blocks = f.blocks.iter().map(|(p, b)| (gl_label(p.clone()), b.clone())).collect();
    LimitMorphism::new(source, target, blocks)
}

fn check_gl<S: InverseSystem>(system: &S) -> Result<()> {
    if system.name() != GlSystem::NAME {
        return Err(Error::ForeignSystem {
            expected: GlSystem::NAME.to_string(),
            found: system.name().to_string(),
        });
    }
    Ok(())
}

/// The adjoint of Γ_lim: reads the stable multiset off the anchor.
pub fn gamma_lim_star<S: InverseSystem<Label = Partition>>(object: &LimitObject<S>) -> Result<GlInftyObject> {
    check_gl(object.system().as_ref())?;
    Ok(GlInftyObject::new(object.anchor().iter().map(|(l, m)| (l.id().clone(), m))))
}

pub fn gamma_lim_star_morphism<S: InverseSystem<Label = Partition>>(
    f: &LimitMorphism<S>,
) -> Result<GlInftyMorphism> {
    let source = gamma_lim_star(f.source())?;
    let target = gamma_lim_star(f.target())?;
    let blocks = f
        .anchor_blocks()
        .blocks()
        .iter()
        .map(|(l, b)| (l.id().clone(), b.clone()))
        .collect();
    GlInftyMorphism::new(source, target, blocks)
}

fn tensor_mult(
    left: &[(&Partition, u64)],
    right: &[(&Partition, u64)],
    max_rows: Option<usize>,
) -> Result<Vec<(Partition, u64)>> {
    let mut out: BTreeMap<Partition, u64> = BTreeMap::new();
    for &(mu, a) in left {
        for &(nu, b) in right {
            let ab = a.checked_mul(b).ok_or(Error::Overflow)?;
            for (lambda, c) in schur_product(mu, nu).iter() {
                if max_rows.is_some_and(|n| lambda.rows() > n) {
                    continue;
                }
                let add = ab.checked_mul(*c as u64).ok_or(Error::Overflow)?;
                let slot = out.entry(lambda.clone()).or_insert(0);
                *slot = slot.checked_add(add).ok_or(Error::Overflow)?;
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn label_ids(object: &SSObject<Partition>) -> Vec<(&Partition, u64)> {
    object.iter().map(|(l, m)| (l.id(), m)).collect()
}

/// X ⊗ Y in Rep(gl_n)_poly.
pub fn tensor(x: &SSObject<Partition>, y: &SSObject<Partition>) -> Result<SSObject<Partition>> {
    if x.index() != y.index() {
        return Err(Error::IndexMismatch {
            expected: x.index(),
            found: y.index(),
        });
    }
    let n = x.index();
    let mult = tensor_mult(&label_ids(x), &label_ids(y), Some(n))?;
    gl_object(n, mult)
}

/// M ⊗ N in Rep(gl_∞)_poly, with no row bound.
pub fn tensor_infty(m: &GlInftyObject, n: &GlInftyObject) -> Result<GlInftyObject> {
    let (m, n): (Vec<_>, Vec<_>) = (m.iter().collect(), n.iter().collect());
    Ok(GlInftyObject::new(tensor_mult(&m, &n, None)?))
}

/// The degree-d summand of a gl_n representation.
pub fn degree_component(object: &SSObject<Partition>, d: usize) -> SSObject<Partition> {
    SSObject::new(
        object.index(),
        object.iter().filter(|(l, _)| l.id().size() == d).map(|(l, m)| (l.clone(), m)),
    )
}

fn schur_terms<'a>(mult: impl Iterator<Item = (&'a Partition, u64)>) -> Result<FormalSum> {
    FormalSum::from_terms(
        mult.map(|(p, m)| Ok((p.clone(), i64::try_from(m).map_err(|_| Error::Overflow)?)))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// Class in the Grothendieck ring R_n, written in the Schur basis.
pub fn character(object: &SSObject<Partition>) -> Result<TruncatedSymElem> {
    TruncatedSymElem::new(
        object.index(),
        Basis::Schur,
        schur_terms(object.iter().map(|(l, m)| (l.id(), m)))?,
    )
}

/// Class in Λ, written in the Schur basis.
pub fn character_infty(object: &GlInftyObject) -> Result<SymFunc> {
    Ok(SymFunc::new(Basis::Schur, schur_terms(object.iter())?))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ObjectRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    mult: Vec<MultEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MultEntry {
    partition: Partition,
    m: u64,
}

impl ObjectRepr {
    fn from_mult<'a>(n: Option<usize>, mult: impl Iterator<Item = (&'a Partition, u64)>) -> Self {
        ObjectRepr {
            n,
            mult: mult.map(|(p, m)| MultEntry { partition: p.clone(), m }).collect(),
        }
    }
}

/// `{"n": 3, "mult": [{"partition": [2,1], "m": 2}]}`
pub fn gl_object_to_json(object: &SSObject<Partition>) -> String {
    serde_json::to_string(&ObjectRepr::from_mult(
        Some(object.index()),
        object.iter().map(|(l, m)| (l.id(), m)),
    ))
    .expect("object serializes")
}

pub fn gl_object_from_json(text: &str) -> Result<SSObject<Partition>> {
    let repr: ObjectRepr = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let n = repr
        .n
        .ok_or_else(|| Error::InvalidInput("a gl_n object needs an \"n\" field".into()))?;
    gl_object(n, repr.mult.into_iter().map(|e| (e.partition, e.m)))
}

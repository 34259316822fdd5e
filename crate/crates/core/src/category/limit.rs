use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;

use super::object::{apply_functor_morphism, apply_functor_object, SSMorphism, SSObject};
use super::system::{check_presented, check_same_system, InverseSystem, Level, ShorteningMap, SimpleLabel};

/// An object of the filtered inverse limit, stored as its component at an
/// anchor index at or past the stabilization witness of its level.
/// Components elsewhere are materialized on demand.
pub struct LimitObject<S: InverseSystem> {
    system: Arc<S>,
    level: Level,
    anchor_index: usize,
    anchor: SSObject<S::Label>,
}

impl<S: InverseSystem> Clone for LimitObject<S> {
    fn clone(&self) -> Self {
        LimitObject {
            system: Arc::clone(&self.system),
            level: self.level,
            anchor_index: self.anchor_index,
            anchor: self.anchor.clone(),
        }
    }
}

impl<S: InverseSystem> fmt::Debug for LimitObject<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LimitObject")
            .field("system", &self.system.name())
            .field("level", &self.level)
            .field("anchor_index", &self.anchor_index)
            .field("anchor", &self.anchor.multiplicities())
            .finish()
    }
}

impl<S: InverseSystem> PartialEq for LimitObject<S> {
    fn eq(&self, other: &Self) -> bool {
        self.system.name() == other.system.name()
            && self.level == other.level
            && self.anchor == other.anchor
    }
}

impl<S: InverseSystem> LimitObject<S> {
    pub fn new(system: Arc<S>, level: Level, anchor: SSObject<S::Label>) -> Result<Self> {
        let witness = system.witness(level);
        if anchor.index() < witness {
            return Err(Error::AnchorBelowWitness {
                anchor: anchor.index(),
                witness,
                level,
            });
        }
        check_presented(system.as_ref(), anchor.index())?;
        if let Some(label) = anchor.labels().find(|l| l.level() > level) {
            return Err(Error::LevelExceeded {
                label: label.to_string(),
                level: label.level(),
                bound: level,
            });
        }
        Ok(LimitObject {
            system,
            level,
            anchor_index: anchor.index(),
            anchor,
        })
    }

    /// The zero object, anchored at the witness of `level`.
    pub fn zero(system: Arc<S>, level: Level) -> Result<Self> {
        let index = system.witness(level);
        Self::new(system, level, SSObject::zero(index))
    }

    pub fn system(&self) -> &Arc<S> {
        &self.system
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn anchor_index(&self) -> usize {
        self.anchor_index
    }

    pub fn anchor(&self) -> &SSObject<S::Label> {
        &self.anchor
    }

    pub fn is_zero(&self) -> bool {
        self.anchor.is_zero()
    }

    /// Length in the limit category: the anchor's length, which is the
    /// largest length among the components.
    pub fn length(&self) -> u64 {
        self.anchor.length()
    }

    /// The component C_i.
    pub fn object_at(&self, index: usize) -> Result<SSObject<S::Label>> {
        let mut cur = self.anchor.clone();
        if index <= self.anchor_index {
            for source in (index + 1..=self.anchor_index).rev() {
                cur = apply_functor_object(&ShorteningMap::new(self.system.as_ref(), source)?, &cur)?;
            }
        } else {
            for source in self.anchor_index + 1..=index {
                cur = lift_object(self.system.as_ref(), self.level, source, &cur)?;
            }
        }
        Ok(cur)
    }

    /// Components C_0, ..., C_horizon.
    pub fn materialize(&self, horizon: usize) -> Result<Vec<SSObject<S::Label>>> {
        (0..=horizon).map(|i| self.object_at(i)).collect()
    }

    /// Same object, anchored at another index at or past the witness.
    pub fn reanchor(&self, index: usize) -> Result<Self> {
        Self::new(Arc::clone(&self.system), self.level, self.object_at(index)?)
    }

    /// Same object, seen in a larger filtration piece.
    pub fn with_level(&self, level: Level) -> Result<Self> {
        if level < self.level {
            return Err(Error::InvalidInput(format!(
                "cannot lower the level bound from {} to {level}",
                self.level
            )));
        }
        let index = self.anchor_index.max(self.system.witness(level));
        Self::new(Arc::clone(&self.system), level, self.object_at(index)?)
    }

    /// Whether the two objects have isomorphic components everywhere.
    pub fn is_isomorphic(&self, other: &Self) -> Result<bool> {
        check_same_system(self.system.as_ref(), other.system.as_ref())?;
        let index = self.anchor_index.max(other.anchor_index);
        Ok(self.object_at(index)? == other.object_at(index)?)
    }
}

/// Moves an object of C_{source-1} to C_source along the inverse of the
/// level-`level` bijection f_{source-1,source}.
fn lift_object<S: InverseSystem + ?Sized>(
    system: &S,
    level: Level,
    source: usize,
    object: &SSObject<S::Label>,
) -> Result<SSObject<S::Label>> {
    let mut out = Vec::new();
    for (label, m) in object.iter() {
        out.push((unique_preimage(system, level, source, label)?, m));
    }
    Ok(SSObject::new(source, out))
}

pub(crate) fn unique_preimage<S: InverseSystem + ?Sized>(
    system: &S,
    level: Level,
    source: usize,
    label: &SimpleLabel<S::Label>,
) -> Result<SimpleLabel<S::Label>> {
    check_presented(system, source)?;
    let mut pre = system.preimages(source, label, level);
    match pre.len() {
        1 => {
            let found = pre.pop().expect("one preimage");
            let map = ShorteningMap::new(system, source)?;
            if map.apply(&found)?.as_ref() != Some(label) {
                return Err(Error::ShorteningViolation {
                    from_index: source,
                    label: found.to_string(),
                    reason: format!("listed as a preimage of {label} but not sent there"),
                });
            }
            Ok(found)
        }
        n => Err(Error::WitnessViolated {
            index: source,
            label: label.to_string(),
            reason: if n == 0 {
                "no preimage".to_string()
            } else {
                format!("{n} preimages")
            },
        }),
    }
}

/// Brings two objects to a common level and anchor index.
pub fn align<S: InverseSystem>(a: &LimitObject<S>, b: &LimitObject<S>) -> Result<(LimitObject<S>, LimitObject<S>)> {
    check_same_system(a.system.as_ref(), b.system.as_ref())?;
    let level = a.level.max(b.level);
    let a = a.with_level(level)?;
    let b = b.with_level(level)?;
    let index = a.anchor_index.max(b.anchor_index);
    Ok((a.reanchor(index)?, b.reanchor(index)?))
}

/// A morphism of limit objects, determined by its component at the common
/// anchor.
pub struct LimitMorphism<S: InverseSystem> {
    source: LimitObject<S>,
    target: LimitObject<S>,
    anchor_blocks: SSMorphism<S::Label>,
}

impl<S: InverseSystem> Clone for LimitMorphism<S> {
    fn clone(&self) -> Self {
        LimitMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            anchor_blocks: self.anchor_blocks.clone(),
        }
    }
}

impl<S: InverseSystem> fmt::Debug for LimitMorphism<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LimitMorphism")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("blocks", self.anchor_blocks.blocks())
            .finish()
    }
}

impl<S: InverseSystem> PartialEq for LimitMorphism<S> {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.anchor_blocks == other.anchor_blocks
    }
}

impl<S: InverseSystem> LimitMorphism<S> {
    /// Source and target must share level and anchor index (see [`align`]).
    pub fn new(
        source: LimitObject<S>,
        target: LimitObject<S>,
        blocks: BTreeMap<SimpleLabel<S::Label>, QMatrix>,
    ) -> Result<Self> {
        check_same_system(source.system.as_ref(), target.system.as_ref())?;
        if source.level != target.level {
            return Err(Error::InvalidInput(format!(
                "source level {} differs from target level {}",
                source.level, target.level
            )));
        }
        if source.anchor_index != target.anchor_index {
            return Err(Error::IndexMismatch {
                expected: source.anchor_index,
                found: target.anchor_index,
            });
        }
        let anchor_blocks = SSMorphism::new(source.anchor.clone(), target.anchor.clone(), blocks)?;
        Ok(LimitMorphism {
            source,
            target,
            anchor_blocks,
        })
    }

    pub fn identity(object: &LimitObject<S>) -> Self {
        LimitMorphism {
            source: object.clone(),
            target: object.clone(),
            anchor_blocks: SSMorphism::identity(&object.anchor),
        }
    }

    pub fn zero(source: &LimitObject<S>, target: &LimitObject<S>) -> Result<Self> {
        Self::new(source.clone(), target.clone(), BTreeMap::new())
    }

    pub fn source(&self) -> &LimitObject<S> {
        &self.source
    }

    pub fn target(&self) -> &LimitObject<S> {
        &self.target
    }

    pub fn anchor_blocks(&self) -> &SSMorphism<S::Label> {
        &self.anchor_blocks
    }

    pub fn block(&self, label: &SimpleLabel<S::Label>) -> QMatrix {
        self.anchor_blocks.block(label)
    }

    /// `g ∘ f`.
    pub fn compose(g: &Self, f: &Self) -> Result<Self> {
        if f.target != g.source {
            return Err(Error::ShapeMismatch(
                "target of the first morphism is not the source of the second".into(),
            ));
        }
        Ok(LimitMorphism {
            source: f.source.clone(),
            target: g.target.clone(),
            anchor_blocks: SSMorphism::compose(&g.anchor_blocks, &f.anchor_blocks)?,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(LimitMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            anchor_blocks: self.anchor_blocks.add(&other.anchor_blocks)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.anchor_blocks.is_zero()
    }

    /// The component f_i.
    pub fn component_at(&self, index: usize) -> Result<SSMorphism<S::Label>> {
        let n0 = self.source.anchor_index;
        if index <= n0 {
            let mut cur = self.anchor_blocks.clone();
            for source in (index + 1..=n0).rev() {
                cur = apply_functor_morphism(&ShorteningMap::new(self.source.system.as_ref(), source)?, &cur)?;
            }
            return Ok(cur);
        }
        let src = self.source.object_at(index)?;
        let tgt = self.target.object_at(index)?;
        let system = self.source.system.as_ref();
        let mut blocks = BTreeMap::new();
        for label in src.labels() {
            if tgt.mult(label) == 0 {
                continue;
            }
            let mut down = label.clone();
            for source in (n0 + 1..=index).rev() {
                down = ShorteningMap::new(system, source)?.apply(&down)?.ok_or_else(|| {
                    Error::WitnessViolated {
                        index: source,
                        label: down.to_string(),
                        reason: "transported label is killed".into(),
                    }
                })?;
            }
            blocks.insert(label.clone(), self.anchor_blocks.block(&down));
        }
        SSMorphism::new(src, tgt, blocks)
    }

    /// Checks F_{i-1,i}(f_i) = f_{i-1} for every 1 ≤ i ≤ horizon.
    pub fn verify_squares(&self, horizon: usize) -> Result<bool> {
        let system = self.source.system.as_ref();
        let mut upper = self.component_at(horizon)?;
        for source in (1..=horizon).rev() {
            let lower = self.component_at(source - 1)?;
            if apply_functor_morphism(&ShorteningMap::new(system, source)?, &upper)? != lower {
                return Ok(false);
            }
            upper = lower;
        }
        Ok(true)
    }

    /// Multiplicities agree and every anchor block is invertible.
    pub fn is_isomorphism(&self) -> bool {
        self.anchor_blocks.is_isomorphism()
    }
}

/// C ⊕ D with its inclusions and projections.
pub struct DirectSum<S: InverseSystem> {
    pub sum: LimitObject<S>,
    pub inclusions: (LimitMorphism<S>, LimitMorphism<S>),
    pub projections: (LimitMorphism<S>, LimitMorphism<S>),
}

pub fn direct_sum<S: InverseSystem>(c: &LimitObject<S>, d: &LimitObject<S>) -> Result<DirectSum<S>> {
    let (c, d) = align(c, d)?;
    let sum = LimitObject::new(Arc::clone(&c.system), c.level, c.anchor.direct_sum(&d.anchor)?)?;
    let mut inc = (BTreeMap::new(), BTreeMap::new());
    let mut proj = (BTreeMap::new(), BTreeMap::new());
    for label in sum.anchor.labels() {
        let a = c.anchor.mult(label) as usize;
        let b = d.anchor.mult(label) as usize;
        let (mut i1, mut i2) = (QMatrix::zeros(a + b, a), QMatrix::zeros(a + b, b));
        i1.place(0, 0, &QMatrix::identity(a));
        i2.place(a, 0, &QMatrix::identity(b));
        proj.0.insert(label.clone(), i1.transpose());
        proj.1.insert(label.clone(), i2.transpose());
        inc.0.insert(label.clone(), i1);
        inc.1.insert(label.clone(), i2);
    }
    Ok(DirectSum {
        inclusions: (
            LimitMorphism::new(c.clone(), sum.clone(), inc.0)?,
            LimitMorphism::new(d.clone(), sum.clone(), inc.1)?,
        ),
        projections: (
            LimitMorphism::new(sum.clone(), c, proj.0)?,
            LimitMorphism::new(sum.clone(), d, proj.1)?,
        ),
        sum,
    })
}

/// Ker(f) and its inclusion into the source.
pub fn kernel<S: InverseSystem>(f: &LimitMorphism<S>) -> Result<(LimitObject<S>, LimitMorphism<S>)> {
    let mut mult = Vec::new();
    let mut blocks = BTreeMap::new();
    for label in f.source.anchor.labels() {
        let basis = f.block(label).nullspace();
        if basis.cols() > 0 {
            mult.push((label.clone(), basis.cols() as u64));
            blocks.insert(label.clone(), basis);
        }
    }
    let ker = LimitObject::new(
        Arc::clone(&f.source.system),
        f.source.level,
        SSObject::new(f.source.anchor_index, mult),
    )?;
    let inclusion = LimitMorphism::new(ker.clone(), f.source.clone(), blocks)?;
    Ok((ker, inclusion))
}

/// Coker(f) and the projection from the target.
pub fn cokernel<S: InverseSystem>(f: &LimitMorphism<S>) -> Result<(LimitObject<S>, LimitMorphism<S>)> {
    let mut mult = Vec::new();
    let mut blocks = BTreeMap::new();
    for label in f.target.anchor.labels() {
        let quotient = f.block(label).left_nullspace();
        if quotient.rows() > 0 {
            mult.push((label.clone(), quotient.rows() as u64));
            blocks.insert(label.clone(), quotient);
        }
    }
    let coker = LimitObject::new(
        Arc::clone(&f.target.system),
        f.target.level,
        SSObject::new(f.target.anchor_index, mult),
    )?;
    let projection = LimitMorphism::new(f.target.clone(), coker.clone(), blocks)?;
    Ok((coker, projection))
}

/// The four objects around f together with the canonical Coim(f) → Im(f).
pub struct ImageFactorization<S: InverseSystem> {
    pub kernel: (LimitObject<S>, LimitMorphism<S>),
    pub cokernel: (LimitObject<S>, LimitMorphism<S>),
    /// Coker(Ker f → source) with its projection from the source.
    pub coimage: (LimitObject<S>, LimitMorphism<S>),
    /// Ker(target → Coker f) with its inclusion into the target.
    pub image: (LimitObject<S>, LimitMorphism<S>),
    /// The unique map with f = inclusion ∘ canonical ∘ projection.
    pub canonical: LimitMorphism<S>,
}

pub fn image_factorization<S: InverseSystem>(f: &LimitMorphism<S>) -> Result<ImageFactorization<S>> {
    let kernel = kernel(f)?;
    let coimage = cokernel(&kernel.1)?;
    let cokernel = cokernel(f)?;
    let image = self::kernel(&cokernel.1)?;
    let mut blocks = BTreeMap::new();
    for label in coimage.0.anchor.labels() {
        let q = coimage.1.block(label);
        let i = image.1.block(label);
        let (Some(q_inv), Some(i_inv)) = (q.right_inverse(), i.left_inverse()) else {
            return Err(Error::ShapeMismatch(format!("degenerate factorization at {label}")));
        };
        blocks.insert(label.clone(), i_inv.mul(&f.block(label))?.mul(&q_inv)?);
    }
    let canonical = LimitMorphism::new(coimage.0.clone(), image.0.clone(), blocks)?;
    let rebuilt = LimitMorphism::compose(&image.1, &LimitMorphism::compose(&canonical, &coimage.1)?)?;
    if rebuilt.anchor_blocks != f.anchor_blocks {
        return Err(Error::ShapeMismatch("image factorization does not recover f".into()));
    }
    Ok(ImageFactorization {
        kernel,
        cokernel,
        coimage,
        image,
        canonical,
    })
}

pub fn is_isomorphism<S: InverseSystem>(f: &LimitMorphism<S>) -> bool {
    f.is_isomorphism()
}

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;

use super::system::{InverseSystem, LabelId, Level, ShorteningMap, SimpleLabel};

/// An object of a semisimple category C_i, up to isomorphism: the
/// multiset of its simple constituents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SSObject<L> {
    index: usize,
    mult: BTreeMap<SimpleLabel<L>, u64>,
}

impl<L: LabelId> SSObject<L> {
    /// Repeated labels accumulate; zero multiplicities are dropped.
    pub fn new(index: usize, mult: impl IntoIterator<Item = (SimpleLabel<L>, u64)>) -> Self {
        let mut out = BTreeMap::new();
        for (label, m) in mult {
            if m > 0 {
                *out.entry(label).or_insert(0) += m;
            }
        }
        SSObject { index, mult: out }
    }

    pub fn zero(index: usize) -> Self {
        SSObject {
            index,
            mult: BTreeMap::new(),
        }
    }

    pub fn simple(index: usize, label: SimpleLabel<L>) -> Self {
        SSObject::new(index, [(label, 1)])
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn mult(&self, label: &SimpleLabel<L>) -> u64 {
        self.mult.get(label).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &BTreeMap<SimpleLabel<L>, u64> {
        &self.mult
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SimpleLabel<L>, u64)> {
        self.mult.iter().map(|(l, &m)| (l, m))
    }

    pub fn labels(&self) -> impl Iterator<Item = &SimpleLabel<L>> {
        self.mult.keys()
    }

    /// Length: the size of the Jordan-Hölder multiset.
    pub fn length(&self) -> u64 {
        self.mult.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    /// Highest level among the constituents (0 for the zero object).
    pub fn max_level(&self) -> Level {
        self.mult.keys().map(SimpleLabel::level).max().unwrap_or(0)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        check_index(self.index, other.index)?;
        Ok(SSObject::new(
            self.index,
            self.iter().chain(other.iter()).map(|(l, m)| (l.clone(), m)),
        ))
    }
}

fn check_index(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::IndexMismatch { expected, found });
    }
    Ok(())
}

/// A morphism of semisimple objects: one rational matrix per simple label,
/// of shape (target multiplicity) × (source multiplicity).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SSMorphism<L> {
    source: SSObject<L>,
    target: SSObject<L>,
    blocks: BTreeMap<SimpleLabel<L>, QMatrix>,
}

impl<L: LabelId> SSMorphism<L> {
    /// Labels in both supports without a block get a zero block. A block
    /// for a label missing from either support must be empty-shaped.
    pub fn new(
        source: SSObject<L>,
        target: SSObject<L>,
        blocks: BTreeMap<SimpleLabel<L>, QMatrix>,
    ) -> Result<Self> {
        check_index(source.index, target.index)?;
        let mut out = BTreeMap::new();
        for (label, block) in blocks {
            let shape = (target.mult(&label) as usize, source.mult(&label) as usize);
            if block.shape() != shape {
                return Err(Error::ShapeMismatch(format!(
                    "block at {label} is {}x{}, expected {}x{}",
                    block.rows(),
                    block.cols(),
                    shape.0,
                    shape.1
                )));
            }
            if shape.0 > 0 && shape.1 > 0 {
                out.insert(label, block);
            }
        }
        for (label, m) in source.iter() {
            let t = target.mult(label);
            if t > 0 && !out.contains_key(label) {
                out.insert(label.clone(), QMatrix::zeros(t as usize, m as usize));
            }
        }
        Ok(SSMorphism {
            source,
            target,
            blocks: out,
        })
    }

    pub fn identity(object: &SSObject<L>) -> Self {
        let blocks = object
            .iter()
            .map(|(l, m)| (l.clone(), QMatrix::identity(m as usize)))
            .collect();
        SSMorphism {
            source: object.clone(),
            target: object.clone(),
            blocks,
        }
    }

    pub fn zero(source: &SSObject<L>, target: &SSObject<L>) -> Result<Self> {
        SSMorphism::new(source.clone(), target.clone(), BTreeMap::new())
    }

    pub fn source(&self) -> &SSObject<L> {
        &self.source
    }

    pub fn target(&self) -> &SSObject<L> {
        &self.target
    }

    pub fn blocks(&self) -> &BTreeMap<SimpleLabel<L>, QMatrix> {
        &self.blocks
    }

    /// Block at `label`, zero-filled (possibly with an empty side) when the
    /// label is missing from a support.
    pub fn block(&self, label: &SimpleLabel<L>) -> QMatrix {
        self.blocks.get(label).cloned().unwrap_or_else(|| {
            QMatrix::zeros(self.target.mult(label) as usize, self.source.mult(label) as usize)
        })
    }

    /// `g ∘ f`.
    pub fn compose(g: &Self, f: &Self) -> Result<Self> {
        if f.target != g.source {
            return Err(Error::ShapeMismatch(
                "target of the first morphism is not the source of the second".into(),
            ));
        }
        let mut blocks = BTreeMap::new();
        for label in f.source.labels() {
            if g.target.mult(label) > 0 {
                blocks.insert(label.clone(), g.block(label).mul(&f.block(label))?);
            }
        }
        SSMorphism::new(f.source.clone(), g.target.clone(), blocks)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch("sum of morphisms with different ends".into()));
        }
        let mut blocks = self.blocks.clone();
        for (label, b) in &other.blocks {
            let sum = self.block(label).add(b)?;
            blocks.insert(label.clone(), sum);
        }
        SSMorphism::new(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(QMatrix::is_zero)
    }

    /// Multiplicities agree labelwise and every block is invertible.
    pub fn is_isomorphism(&self) -> bool {
        self.source.multiplicities() == self.target.multiplicities()
            && self.blocks.values().all(QMatrix::is_invertible)
    }
}

/// F_{i-1,i} on objects: multiplicities of labels with a common image add
/// up, labels sent to zero disappear.
pub fn apply_functor_object<S: InverseSystem + ?Sized>(
    map: &ShorteningMap<'_, S>,
    object: &SSObject<S::Label>,
) -> Result<SSObject<S::Label>> {
    check_index(map.source(), object.index())?;
    let mut out = Vec::new();
    for (label, m) in object.iter() {
        if let Some(image) = map.apply(label)? {
            out.push((image, m));
        }
    }
    Ok(SSObject::new(map.target(), out))
}

/// F_{i-1,i} on morphisms. The block at an image label M is block-diagonal
/// in the blocks of the labels mapping to M, in canonical label order.
pub fn apply_functor_morphism<S: InverseSystem + ?Sized>(
    map: &ShorteningMap<'_, S>,
    f: &SSMorphism<S::Label>,
) -> Result<SSMorphism<S::Label>> {
    let source = apply_functor_object(map, f.source())?;
    let target = apply_functor_object(map, f.target())?;
    // Image label ↦ (preimage label, multiplicity).
    type Fibres<L> = BTreeMap<SimpleLabel<L>, Vec<(SimpleLabel<L>, usize)>>;
    let fibres = |object: &SSObject<S::Label>| -> Result<Fibres<S::Label>> {
        let mut out = Fibres::new();
        for (label, m) in object.iter() {
            if let Some(image) = map.apply(label)? {
                out.entry(image).or_default().push((label.clone(), m as usize));
            }
        }
        Ok(out)
    };
    let src_fibres = fibres(f.source())?;
    let tgt_fibres = fibres(f.target())?;
    let mut blocks = BTreeMap::new();
    for (image, src) in &src_fibres {
        let Some(tgt) = tgt_fibres.get(image) else {
            continue;
        };
        let rows: usize = tgt.iter().map(|(_, m)| m).sum();
        let cols: usize = src.iter().map(|(_, m)| m).sum();
        let mut block = QMatrix::zeros(rows, cols);
        let mut c0 = 0;
        for (label, m) in src {
            let mut r0 = 0;
            for (t_label, tm) in tgt {
                if t_label == label {
                    block.place(r0, c0, &f.block(label));
                }
                r0 += tm;
            }
            c0 += m;
        }
        blocks.insert(image.clone(), block);
    }
    SSMorphism::new(source, target, blocks)
}

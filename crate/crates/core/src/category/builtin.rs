//! Small systems used for examples, tests and adversarial checks.

use super::system::{InverseSystem, LabelId, Level, SimpleLabel};

/// The same category at every index, with identity shortening maps.
#[derive(Clone, Debug)]
pub struct ConstantSystem<L> {
    name: String,
    labels: Vec<SimpleLabel<L>>,
}

impl<L: LabelId> ConstantSystem<L> {
    pub fn new(name: impl Into<String>, mut labels: Vec<SimpleLabel<L>>) -> Self {
        labels.sort();
        labels.dedup_by(|a, b| a.id() == b.id());
        ConstantSystem {
            name: name.into(),
            labels,
        }
    }
}

impl<L: LabelId> InverseSystem for ConstantSystem<L> {
    type Label = L;

    fn name(&self) -> &str {
        &self.name
    }

    fn simples(&self, _index: usize, level: Level) -> Vec<SimpleLabel<L>> {
        self.labels.iter().filter(|l| l.level() <= level).cloned().collect()
    }

    fn shorten(&self, _index: usize, label: &SimpleLabel<L>) -> Option<SimpleLabel<L>> {
        self.labels.iter().find(|l| *l == label).cloned()
    }

    fn witness(&self, _level: Level) -> usize {
        0
    }
}

/// One stable level-0 label plus, at each index i, a level-1 label
/// `dying@i` that the next shortening map kills. The declared witness is 0
/// at every level, which is a lie at level 1: useful for checking that the
/// condition checker and transport both notice.
#[derive(Clone, Debug, Default)]
pub struct AdversarialSystem;

impl AdversarialSystem {
    pub const NAME: &'static str = "adversarial";

    fn stable() -> SimpleLabel<String> {
        SimpleLabel::new("stable".to_string(), 0, None)
    }

    fn dying(index: usize) -> SimpleLabel<String> {
        SimpleLabel::new(format!("dying@{index}"), 1, None)
    }
}

impl InverseSystem for AdversarialSystem {
    type Label = String;

    fn name(&self) -> &str {
        Self::NAME
    }

    fn simples(&self, index: usize, level: Level) -> Vec<SimpleLabel<String>> {
        let mut out = vec![Self::stable()];
        if level >= 1 {
            out.push(Self::dying(index));
        }
        out.sort();
        out
    }

    fn shorten(&self, _index: usize, label: &SimpleLabel<String>) -> Option<SimpleLabel<String>> {
        (label.level() == 0).then(Self::stable)
    }

    fn witness(&self, _level: Level) -> usize {
        0
    }
}

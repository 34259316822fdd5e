use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

use super::limit::LimitObject;
use super::object::{apply_functor_object, SSObject};
use super::system::{check_presented, InverseSystem, Level, ShorteningMap, SimpleLabel};

/// Length of a limit object.
pub fn length<S: InverseSystem>(object: &LimitObject<S>) -> u64 {
    object.length()
}

/// Nonzero, and every component up to `horizon` (and the anchor) has
/// length at most one.
pub fn is_simple<S: InverseSystem>(object: &LimitObject<S>, horizon: usize) -> Result<bool> {
    if object.is_zero() {
        return Ok(false);
    }
    for i in 0..=horizon.max(object.anchor_index()) {
        if object.object_at(i)?.length() > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The simple objects of the level-`level` piece of the limit: one per
/// label of C_{n_k} whose thread extends through `horizon`. Threads that
/// die on the way up are absent; ambiguous ones are an error.
pub fn limit_simples<S: InverseSystem>(
    system: &Arc<S>,
    level: Level,
    horizon: usize,
) -> Result<Vec<LimitObject<S>>> {
    let witness = system.witness(level);
    if horizon < witness {
        return Err(Error::InvalidInput(format!(
            "horizon {horizon} is below the witness {witness} for level {level}"
        )));
    }
    check_presented(system.as_ref(), horizon)?;
    let mut out = Vec::new();
    'labels: for label in system.simples(witness, level) {
        let mut cur = label.clone();
        for source in witness + 1..=horizon {
            let mut pre = system.preimages(source, &cur, level);
            match pre.len() {
                0 => continue 'labels,
                1 => cur = pre.pop().expect("one preimage"),
                n => {
                    return Err(Error::WitnessViolated {
                        index: source,
                        label: cur.to_string(),
                        reason: format!("{n} preimages"),
                    })
                }
            }
        }
        let object = LimitObject::new(Arc::clone(system), level, SSObject::simple(witness, label))?;
        debug_assert!(is_simple(&object, horizon)?);
        out.push(object);
    }
    Ok(out)
}

/// Findings of [`check_conditions`], serialized with a fixed field order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub system: String,
    pub k_max: Level,
    pub horizon: usize,
    /// Every thread stays within its level (up to the horizon).
    pub condition1: bool,
    /// Injectivity from some index below the horizon, at every level.
    pub condition2: bool,
    /// The declared witnesses give bijections on every probed index.
    pub witness_ok: bool,
    pub levels: Vec<LevelReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub level: Level,
    /// Threads through the level-`level` simples of C_horizon.
    pub threads: usize,
    pub condition1: bool,
    pub thread_violation: Option<Counterexample>,
    /// N_k: f_{i-1,i} is injective on level-k simples for N_k < i ≤ horizon.
    pub injective_beyond: usize,
    pub condition2: bool,
    pub injectivity_counterexample: Option<Counterexample>,
    pub declared_witness: usize,
    /// f_{i-1,i} is bijective on level-k simples for this value < i ≤ horizon.
    pub bijective_beyond: usize,
    pub witness_ok: bool,
    pub bijectivity_counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Source index of the offending shortening map.
    pub index: usize,
    pub kind: CounterexampleKind,
    pub label: String,
    /// Second label for merges, image for level violations.
    pub other: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CounterexampleKind {
    /// A level-k simple goes to zero.
    Killed,
    /// Two level-k simples share an image.
    Merged,
    /// A level-k simple of the target has no level-k preimage.
    NotSurjective,
    /// A thread component leaves the level-k piece.
    LevelRaised,
}

/// Checks, for each level up to `k_max` and each index up to `horizon`,
/// the two conditions under which the restricted and filtered limits
/// coincide, plus the declared stabilization witnesses.
pub fn check_conditions<S: InverseSystem>(system: &S, k_max: Level, horizon: usize) -> Result<ConditionReport> {
    check_presented(system, horizon)?;
    let mut levels = Vec::new();
    for level in 0..=k_max {
        levels.push(check_level(system, level, horizon)?);
    }
    Ok(ConditionReport {
        system: system.name().to_string(),
        k_max,
        horizon,
        condition1: levels.iter().all(|l| l.condition1),
        condition2: levels.iter().all(|l| l.condition2),
        witness_ok: levels.iter().all(|l| l.witness_ok),
        levels,
    })
}

fn check_level<S: InverseSystem>(system: &S, level: Level, horizon: usize) -> Result<LevelReport> {
    let (threads, thread_violation) = check_threads(system, level, horizon)?;
    let mut injective_beyond = 0;
    let mut injectivity_counterexample = None;
    let mut bijective_beyond = 0;
    let mut bijectivity_counterexample = None;
    for source in 1..=horizon {
        let (injective, surjective) = map_defects(system, level, source)?;
        if let Some(c) = injective.clone().or(surjective) {
            bijective_beyond = source;
            bijectivity_counterexample = Some(c);
        }
        if let Some(c) = injective {
            injective_beyond = source;
            injectivity_counterexample = Some(c);
        }
    }
    let declared_witness = system.witness(level);
    Ok(LevelReport {
        level,
        threads,
        condition1: thread_violation.is_none(),
        thread_violation,
        injective_beyond,
        condition2: injective_beyond < horizon,
        injectivity_counterexample,
        declared_witness,
        bijective_beyond,
        witness_ok: bijective_beyond <= declared_witness,
        bijectivity_counterexample,
    })
}

fn check_threads<S: InverseSystem>(
    system: &S,
    level: Level,
    horizon: usize,
) -> Result<(usize, Option<Counterexample>)> {
    let tops = system.simples(horizon, level);
    for top in &tops {
        let mut cur = top.clone();
        for source in (1..=horizon).rev() {
            let Some(next) = system.shorten(source, &cur) else {
                break;
            };
            if next.level() > level {
                return Ok((
                    tops.len(),
                    Some(Counterexample {
                        index: source,
                        kind: CounterexampleKind::LevelRaised,
                        label: cur.to_string(),
                        other: Some(next.to_string()),
                    }),
                ));
            }
            cur = next;
        }
    }
    Ok((tops.len(), None))
}

/// First injectivity and surjectivity defects of f_{source-1,source} on
/// level-`level` simples.
fn map_defects<S: InverseSystem>(
    system: &S,
    level: Level,
    source: usize,
) -> Result<(Option<Counterexample>, Option<Counterexample>)> {
    let map = ShorteningMap::new(system, source)?;
    let mut seen: BTreeMap<SimpleLabel<S::Label>, SimpleLabel<S::Label>> = BTreeMap::new();
    let mut injective = None;
    for label in system.simples(source, level) {
        let defect = |kind, other: Option<String>| Counterexample {
            index: source,
            kind,
            label: label.to_string(),
            other,
        };
        match map.apply(&label)? {
            None => {
                injective.get_or_insert_with(|| defect(CounterexampleKind::Killed, None));
            }
            Some(image) => {
                if let Some(first) = seen.get(&image) {
                    let other = Some(first.to_string());
                    injective.get_or_insert_with(|| defect(CounterexampleKind::Merged, other));
                } else {
                    seen.insert(image, label.clone());
                }
            }
        }
    }
    let surjective = system
        .simples(source - 1, level)
        .into_iter()
        .find(|l| !seen.contains_key(l))
        .map(|l| Counterexample {
            index: source,
            kind: CounterexampleKind::NotSurjective,
            label: l.to_string(),
            other: None,
        });
    Ok((injective, surjective))
}

/// Whether a finite compatible prefix C_0, ..., C_H looks like a component
/// sequence of a restricted-limit object: its lengths increase weakly and
/// are constant over the last `stable_tail` indices. The verdict is
/// relative to the prefix; nothing beyond it is inspected.
pub fn restricted_membership<S: InverseSystem>(
    system: &S,
    prefix: &[SSObject<S::Label>],
    stable_tail: usize,
) -> Result<bool> {
    if stable_tail < 2 {
        return Err(Error::InvalidInput(
            "a stable tail needs at least two indices".into(),
        ));
    }
    for (i, object) in prefix.iter().enumerate() {
        if object.index() != i {
            return Err(Error::IncompatiblePrefix {
                index: i,
                reason: format!("component lives in C_{}", object.index()),
            });
        }
        if i > 0 {
            let shortened = apply_functor_object(&ShorteningMap::new(system, i)?, object)?;
            if shortened != prefix[i - 1] {
                return Err(Error::IncompatiblePrefix {
                    index: i,
                    reason: "shortening does not give the previous component".into(),
                });
            }
        }
    }
    if prefix.len() < stable_tail {
        return Ok(false);
    }
    let lengths: Vec<u64> = prefix.iter().map(SSObject::length).collect();
    let increasing = lengths.windows(2).all(|w| w[0] <= w[1]);
    let tail = &lengths[lengths.len() - stable_tail..];
    Ok(increasing && tail.iter().all(|&l| l == tail[0]))
}

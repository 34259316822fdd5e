//! Finite presentations of inverse systems as JSON.
//!
//! ```json
//! {
//!   "name": "toy",
//!   "horizon": 1,
//!   "categories": [
//!     {"index": 0, "levels": [{"level": 0, "labels": ["a"]}]},
//!     {"index": 1, "levels": [{"level": 0, "labels": ["a"]}, {"level": 1, "labels": ["b"]}]}
//!   ],
//!   "maps": [{"source": 1, "table": [{"from": "a", "to": "a"}, {"from": "b", "to": null}]}],
//!   "witness": [{"level": 0, "index": 0}, {"level": 1, "index": 1}]
//! }
//! ```
//!
//! Levels above the largest listed witness level reuse that witness.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::system::{InverseSystem, Level, SimpleLabel};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Presentation {
    pub name: String,
    pub horizon: usize,
    pub categories: Vec<CategoryEntry>,
    pub maps: Vec<MapEntry>,
    pub witness: Vec<WitnessEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryEntry {
    pub index: usize,
    pub levels: Vec<LevelEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelEntry {
    pub level: Level,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    pub source: usize,
    pub table: Vec<MapPair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapPair {
    pub from: String,
    pub to: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessEntry {
    pub level: Level,
    pub index: usize,
}

/// An inverse system given by explicit finite tables up to a horizon.
#[derive(Clone, Debug)]
pub struct TableSystem {
    presentation: Presentation,
    /// Sorted simples per index.
    simples: Vec<Vec<SimpleLabel<String>>>,
    /// Per source index: label id → image id.
    maps: Vec<HashMap<String, Option<String>>>,
    witness: BTreeMap<Level, usize>,
}

fn invalid(msg: String) -> Error {
    Error::InvalidSystem(msg)
}

impl TableSystem {
    pub fn from_json(text: &str) -> Result<Self> {
        let presentation: Presentation =
            serde_json::from_str(text).map_err(|e| invalid(e.to_string()))?;
        Self::new(presentation)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.presentation).expect("presentation serializes")
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn new(presentation: Presentation) -> Result<Self> {
        let h = presentation.horizon;
        let mut simples: Vec<Option<Vec<SimpleLabel<String>>>> = vec![None; h + 1];
        let mut max_level = 0;
        for cat in &presentation.categories {
            let slot = simples
                .get_mut(cat.index)
                .ok_or_else(|| invalid(format!("category index {} beyond horizon {h}", cat.index)))?;
            if slot.is_some() {
                return Err(invalid(format!("category {} listed twice", cat.index)));
            }
            let mut labels = Vec::new();
            for lv in &cat.levels {
                max_level = max_level.max(lv.level);
                labels.extend(lv.labels.iter().map(|id| SimpleLabel::new(id.clone(), lv.level, None)));
            }
            labels.sort();
            if labels.windows(2).any(|w| w[0].id() == w[1].id()) {
                return Err(invalid(format!("repeated label in category {}", cat.index)));
            }
            *slot = Some(labels);
        }
        let simples: Vec<_> = simples
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| invalid(format!("category {i} missing"))))
            .collect::<Result<_>>()?;

        let mut maps: Vec<Option<HashMap<String, Option<String>>>> = vec![None; h + 1];
        maps[0] = Some(HashMap::new());
        for entry in &presentation.maps {
            let s = entry.source;
            if s == 0 || s > h {
                return Err(invalid(format!("map source {s} outside 1..={h}")));
            }
            if maps[s].is_some() {
                return Err(invalid(format!("map out of {s} listed twice")));
            }
            let level_of = |index: usize, id: &str| {
                simples[index].iter().find(|l| l.id() == id).map(SimpleLabel::level)
            };
            let mut table = HashMap::new();
            for pair in &entry.table {
                let from_level = level_of(s, &pair.from)
                    .ok_or_else(|| invalid(format!("map out of {s}: unknown label {}", pair.from)))?;
                if let Some(to) = &pair.to {
                    let to_level = level_of(s - 1, to)
                        .ok_or_else(|| invalid(format!("map out of {s}: unknown target {to}")))?;
                    if to_level > from_level {
                        return Err(invalid(format!("map out of {s} raises the level of {}", pair.from)));
                    }
                }
                if table.insert(pair.from.clone(), pair.to.clone()).is_some() {
                    return Err(invalid(format!("map out of {s}: {} listed twice", pair.from)));
                }
            }
            if table.len() != simples[s].len() {
                return Err(invalid(format!("map out of {s} does not cover every label")));
            }
            maps[s] = Some(table);
        }
        let maps: Vec<_> = maps
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| invalid(format!("map out of {i} missing"))))
            .collect::<Result<_>>()?;

        let mut witness = BTreeMap::new();
        for w in &presentation.witness {
            if witness.insert(w.level, w.index).is_some() {
                return Err(invalid(format!("witness for level {} listed twice", w.level)));
            }
        }
        if let Some(level) = (0..=max_level).find(|l| !witness.contains_key(l)) {
            return Err(invalid(format!("no witness for level {level}")));
        }
        Ok(TableSystem {
            presentation,
            simples,
            maps,
            witness,
        })
    }

    /// Tabulates another system over indices 0..=horizon and levels
    /// 0..=k_max. Labels are rendered with `Display`.
    pub fn tabulate<S: InverseSystem>(system: &S, horizon: usize, k_max: Level) -> Result<Self> {
        let mut categories = Vec::new();
        let mut maps = Vec::new();
        for index in 0..=horizon {
            let all = system.simples(index, k_max);
            let levels = (0..=k_max)
                .map(|level| LevelEntry {
                    level,
                    labels: all.iter().filter(|l| l.level() == level).map(|l| l.to_string()).collect(),
                })
                .filter(|e| !e.labels.is_empty())
                .collect();
            categories.push(CategoryEntry { index, levels });
            if index > 0 {
                let table = all
                    .iter()
                    .map(|l| MapPair {
                        from: l.to_string(),
                        to: system.shorten(index, l).map(|m| m.to_string()),
                    })
                    .collect();
                maps.push(MapEntry { source: index, table });
            }
        }
        let witness = (0..=k_max)
            .map(|level| WitnessEntry {
                level,
                index: system.witness(level),
            })
            .collect();
        Self::new(Presentation {
            name: system.name().to_string(),
            horizon,
            categories,
            maps,
            witness,
        })
    }
}

impl InverseSystem for TableSystem {
    type Label = String;

    fn name(&self) -> &str {
        &self.presentation.name
    }

    fn max_index(&self) -> Option<usize> {
        Some(self.presentation.horizon)
    }

    fn simples(&self, index: usize, level: Level) -> Vec<SimpleLabel<String>> {
        self.simples
            .get(index)
            .map(|all| all.iter().filter(|l| l.level() <= level).cloned().collect())
            .unwrap_or_default()
    }

    fn shorten(&self, index: usize, label: &SimpleLabel<String>) -> Option<SimpleLabel<String>> {
        let image = self.maps.get(index)?.get(label.id())?.as_ref()?;
        self.simples[index - 1].iter().find(|l| l.id() == image).cloned()
    }

    fn witness(&self, level: Level) -> usize {
        self.witness
            .range(..=level)
            .next_back()
            .map(|(_, &i)| i)
            .unwrap_or(0)
    }
}

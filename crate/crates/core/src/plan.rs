use serde::{Deserialize, Serialize};

use crate::table::{EntityId, GameTable, Side};

/// One aligned fact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanItem {
    pub entity: EntityId,
    pub value: f64,
    pub rtype: String,
    pub side: Side,
    pub token_index: usize,
}

/// Identity of a fact for set and sequence comparison: (entity, value, type).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactKey {
    pub entity: EntityId,
    pub rtype: String,
    value_bits: u64,
}

impl FactKey {
    pub fn new(entity: EntityId, rtype: &str, value: f64) -> Self {
        // +0.0 and -0.0 compare equal
        let v = if value == 0.0 { 0.0 } else { value };
        Self {
            entity,
            rtype: rtype.to_string(),
            value_bits: v.to_bits(),
        }
    }

    pub fn value(&self) -> f64 {
        f64::from_bits(self.value_bits)
    }
}

impl PlanItem {
    pub fn key(&self) -> FactKey {
        FactKey::new(self.entity, &self.rtype, self.value)
    }
}

/// Ordered facts mentioned by a summary.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ContentPlan {
    pub items: Vec<PlanItem>,
}

impl ContentPlan {
    pub fn new(items: Vec<PlanItem>) -> Self {
        Self { items }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn keys(&self) -> Vec<FactKey> {
        self.items.iter().map(PlanItem::key).collect()
    }

    /// Export rows: entity id, canonical name, type, value, home/away and
    /// token index.
    pub fn export(&self, table: &GameTable) -> Vec<ExportedItem> {
        self.items
            .iter()
            .map(|it| ExportedItem {
                entity_id: it.entity,
                entity_name: table
                    .entity(it.entity)
                    .map(|e| e.name())
                    .unwrap_or_default(),
                rtype: it.rtype.clone(),
                value: it.value,
                homeaway: it.side,
                token_index: it.token_index,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExportedItem {
    pub entity_id: EntityId,
    pub entity_name: String,
    #[serde(rename = "type")]
    pub rtype: String,
    pub value: f64,
    pub homeaway: Side,
    pub token_index: usize,
}

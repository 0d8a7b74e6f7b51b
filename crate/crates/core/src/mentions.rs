//! Entity mention detection, pronoun resolution and name normalization.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::summary::Summary;
use crate::table::{tokens_of, EntityId, EntityKind, GameTable};

const PLAYER_PRONOUNS: [&str; 3] = ["he", "him", "his"];
const TEAM_PRONOUNS: [&str; 3] = ["they", "them", "their"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MentionSource {
    Alias,
    Pronoun,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mention {
    pub start: usize,
    pub end: usize,
    pub entity: EntityId,
    pub kind: EntityKind,
    pub source: MentionSource,
}

/// Extra aliases keyed by canonical entity name, e.g.
/// `{"Philadelphia 76ers": ["Sixers"]}`.
pub type AliasOverrides = BTreeMap<String, Vec<String>>;

#[derive(Debug, Clone, Default)]
pub struct AliasLexicon {
    entries: HashMap<Vec<String>, Vec<EntityId>>,
    kinds: HashMap<EntityId, EntityKind>,
    canonical: HashMap<EntityId, Vec<String>>,
    max_len: usize,
}

impl AliasLexicon {
    /// The entity an alias resolves to, if it is unambiguous.
    pub fn resolve(&self, alias: &[String]) -> Option<EntityId> {
        match self.entries.get(alias)?.as_slice() {
            [only] => Some(*only),
            _ => None,
        }
    }

    pub fn is_ambiguous(&self, alias: &[String]) -> bool {
        self.entries.get(alias).is_some_and(|v| v.len() > 1)
    }

    pub fn kind(&self, id: EntityId) -> Option<EntityKind> {
        self.kinds.get(&id).copied()
    }

    pub fn canonical(&self, id: EntityId) -> Option<&[String]> {
        self.canonical.get(&id).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn add(&mut self, alias: Vec<String>, id: EntityId) {
        if alias.is_empty() {
            return;
        }
        self.max_len = self.max_len.max(alias.len());
        let ids = self.entries.entry(alias).or_default();
        if !ids.contains(&id) {
            ids.push(id);
        }
    }
}

pub fn build_lexicon(table: &GameTable) -> AliasLexicon {
    build_lexicon_with(table, &AliasOverrides::new())
}

/// Aliases shared by two or more entities are kept but marked ambiguous and
/// never match.
pub fn build_lexicon_with(table: &GameTable, overrides: &AliasOverrides) -> AliasLexicon {
    let mut lex = AliasLexicon::default();
    for e in table.entities() {
        lex.kinds.insert(e.id, e.kind);
        lex.canonical.insert(e.id, e.canonical_name.clone());
        for a in &e.aliases {
            lex.add(a.clone(), e.id);
        }
        if let Some(extra) = overrides.get(&e.name()) {
            for a in extra {
                lex.add(tokens_of(a), e.id);
            }
        }
    }
    lex
}

/// Greedy longest-match, left to right, non-overlapping.
pub fn detect_mentions(summary: &Summary, lexicon: &AliasLexicon) -> Vec<Mention> {
    let toks = &summary.tokens;
    let mut out = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        let longest = (1..=lexicon.max_len.min(toks.len() - i))
            .rev()
            .find_map(|len| lexicon.resolve(&toks[i..i + len]).map(|id| (len, id)));
        match longest {
            Some((len, id)) => {
                out.push(Mention {
                    start: i,
                    end: i + len,
                    entity: id,
                    kind: lexicon.kinds[&id],
                    source: MentionSource::Alias,
                });
                i += len;
            }
            None => i += 1,
        }
    }
    out
}

/// Links singular pronouns to the latest player mention and plural pronouns
/// to the latest team mention anywhere earlier in the document.
pub fn resolve_pronouns(summary: &Summary, mentions: &[Mention]) -> Vec<Mention> {
    let mut out: Vec<Mention> = mentions.to_vec();
    let mut next = mentions.iter().peekable();
    let mut last_player: Option<EntityId> = None;
    let mut last_team: Option<EntityId> = None;
    for (i, tok) in summary.tokens.iter().enumerate() {
        while let Some(m) = next.next_if(|m| m.start <= i) {
            match m.kind {
                EntityKind::Player => last_player = Some(m.entity),
                EntityKind::Team => last_team = Some(m.entity),
            }
        }
        let lower = tok.to_lowercase();
        let hit = if PLAYER_PRONOUNS.contains(&lower.as_str()) {
            last_player.map(|e| (e, EntityKind::Player))
        } else if TEAM_PRONOUNS.contains(&lower.as_str()) {
            last_team.map(|e| (e, EntityKind::Team))
        } else {
            None
        };
        if let Some((entity, kind)) = hit {
            out.push(Mention {
                start: i,
                end: i + 1,
                entity,
                kind,
                source: MentionSource::Pronoun,
            });
        }
    }
    out.sort_by_key(|m| m.start);
    out
}

/// Rewrites every alias mention to its entity's canonical name.
pub fn entity_normalize(summary: &Summary, mentions: &[Mention], lexicon: &AliasLexicon) -> Summary {
    let mut tokens = Vec::with_capacity(summary.tokens.len());
    // new index of each old token start, plus one past the end
    let mut remap = vec![0usize; summary.tokens.len() + 1];
    let mut aliases = mentions
        .iter()
        .filter(|m| m.source == MentionSource::Alias)
        .peekable();
    let mut i = 0;
    while i < summary.tokens.len() {
        remap[i] = tokens.len();
        match aliases.next_if(|m| m.start == i) {
            Some(m) => {
                let name = lexicon
                    .canonical(m.entity)
                    .unwrap_or(&summary.tokens[m.start..m.end]);
                tokens.extend(name.iter().cloned());
                for k in m.start + 1..m.end {
                    remap[k] = tokens.len();
                }
                i = m.end;
            }
            None => {
                tokens.push(summary.tokens[i].clone());
                i += 1;
            }
        }
    }
    remap[summary.tokens.len()] = tokens.len();
    let sentence_bounds = summary.sentence_bounds.iter().map(|&b| remap[b]).collect();
    Summary {
        tokens,
        sentence_bounds,
    }
}

/// Detects alias mentions, canonicalizes them, then returns the normalized
/// summary together with its full (alias + pronoun) mention list.
pub fn normalize_and_resolve(summary: &Summary, lexicon: &AliasLexicon) -> (Summary, Vec<Mention>) {
    let first = detect_mentions(summary, lexicon);
    let normalized = entity_normalize(summary, &first, lexicon);
    let mentions = detect_mentions(&normalized, lexicon);
    let all = resolve_pronouns(&normalized, &mentions);
    (normalized, all)
}

use serde::{Deserialize, Serialize};

use crate::table::GameTable;

const TERMINATORS: [&str; 3] = [".", "!", "?"];

/// Tokenized summary with sentence start offsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub tokens: Vec<String>,
    pub sentence_bounds: Vec<usize>,
}

impl Summary {
    /// Splits sentences after `.`, `!` and `?` tokens.
    pub fn from_tokens(tokens: Vec<String>) -> Self {
        let mut bounds = vec![0];
        for (i, t) in tokens.iter().enumerate() {
            if TERMINATORS.contains(&t.as_str()) && i + 1 < tokens.len() {
                bounds.push(i + 1);
            }
        }
        Self {
            tokens,
            sentence_bounds: bounds,
        }
    }

    pub fn from_text(text: &str) -> Self {
        Self::from_tokens(text.split_whitespace().map(str::to_string).collect())
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn num_sentences(&self) -> usize {
        if self.tokens.is_empty() {
            0
        } else {
            self.sentence_bounds.len()
        }
    }

    /// Half-open token range of sentence `i`.
    pub fn sentence_range(&self, i: usize) -> std::ops::Range<usize> {
        let start = self.sentence_bounds[i];
        let end = self
            .sentence_bounds
            .get(i + 1)
            .copied()
            .unwrap_or(self.tokens.len());
        start..end
    }

    pub fn sentences(&self) -> impl Iterator<Item = &[String]> {
        (0..self.num_sentences()).map(|i| &self.tokens[self.sentence_range(i)])
    }

    /// Sentence containing token `idx`.
    pub fn sentence_of(&self, idx: usize) -> usize {
        match self.sentence_bounds.binary_search(&idx) {
            Ok(i) => i,
            Err(i) => i - 1,
        }
    }

    /// Keeps the listed sentences in order.
    pub fn select_sentences(&self, keep: &[usize]) -> Summary {
        let mut tokens = Vec::new();
        let mut bounds = Vec::new();
        for &s in keep {
            bounds.push(tokens.len());
            tokens.extend(self.tokens[self.sentence_range(s)].iter().cloned());
        }
        if bounds.is_empty() {
            bounds.push(0);
        }
        Summary {
            tokens,
            sentence_bounds: bounds,
        }
    }

    pub fn is_well_formed(&self) -> bool {
        self.sentence_bounds.first() == Some(&0)
            && self.sentence_bounds.windows(2).all(|w| w[0] < w[1])
            && self.sentence_bounds.iter().all(|&b| b <= self.tokens.len())
    }

    pub fn text(&self) -> String {
        self.tokens.join(" ")
    }
}

/// A table paired with its summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub table: GameTable,
    pub summary: Summary,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        let s = Summary::from_text("A b . C d ! E");
        assert_eq!(s.sentence_bounds, vec![0, 3, 6]);
        assert_eq!(s.sentence_of(4), 1);
        assert_eq!(s.sentence_of(3), 1);
        assert_eq!(s.sentence_of(6), 2);
        assert!(s.is_well_formed());
        assert_eq!(s.num_sentences(), 3);
        let t = Summary::from_text("A .");
        assert_eq!(t.sentence_bounds, vec![0]);
        assert_eq!(Summary::from_text("").num_sentences(), 0);
    }

    #[test]
    fn select() {
        let s = Summary::from_text("A b . C d . E .");
        let k = s.select_sentences(&[0, 2]);
        assert_eq!(k.text(), "A b . E .");
        assert_eq!(k.sentence_bounds, vec![0, 3]);
        assert_eq!(k, Summary::from_tokens(k.tokens.clone()));
    }
}

//! English cardinal words to numerals, and percent rounding rectification.
//!
//! Only cardinals in `0..=999` are rewritten. Ordinals and the articles
//! `a`/`an` are never treated as numbers.

use num_traits::Float;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumeralSpan {
    /// Half-open range in the input token sequence.
    pub start: usize,
    pub end: usize,
    pub value: u32,
    pub original_tokens: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Word {
    Zero,
    Unit(u32),
    Teen(u32),
    Tens(u32),
    /// Single hyphenated token such as `twenty-five`.
    Compound(u32),
    Hundred,
}

const UNITS: [&str; 9] = [
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine",
];
const TEENS: [&str; 10] = [
    "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen",
    "eighteen", "nineteen",
];
const TENS: [&str; 8] = [
    "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety",
];

fn simple_word(w: &str) -> Option<Word> {
    if w == "zero" {
        return Some(Word::Zero);
    }
    if w == "hundred" {
        return Some(Word::Hundred);
    }
    if let Some(i) = UNITS.iter().position(|&u| u == w) {
        return Some(Word::Unit(i as u32 + 1));
    }
    if let Some(i) = TEENS.iter().position(|&u| u == w) {
        return Some(Word::Teen(i as u32 + 10));
    }
    TENS.iter()
        .position(|&u| u == w)
        .map(|i| Word::Tens(20 + 10 * i as u32))
}

fn word(tok: Option<&String>) -> Option<Word> {
    let lower = tok?.to_lowercase();
    if let Some((tens, unit)) = lower.split_once('-') {
        return match (simple_word(tens), simple_word(unit)) {
            (Some(Word::Tens(t)), Some(Word::Unit(u))) => Some(Word::Compound(t + u)),
            _ => None,
        };
    }
    simple_word(&lower)
}

fn below_hundred(tokens: &[String], i: usize) -> Option<(u32, usize)> {
    match word(tokens.get(i))? {
        Word::Unit(v) | Word::Teen(v) | Word::Compound(v) => Some((v, i + 1)),
        Word::Tens(t) => {
            if let Some(Word::Unit(u)) = word(tokens.get(i + 1)) {
                Some((t + u, i + 2))
            } else if tokens.get(i + 1).map(String::as_str) == Some("-") {
                match word(tokens.get(i + 2)) {
                    Some(Word::Unit(u)) => Some((t + u, i + 3)),
                    _ => Some((t, i + 1)),
                }
            } else {
                Some((t, i + 1))
            }
        }
        Word::Zero | Word::Hundred => None,
    }
}

/// Longest cardinal starting at `i`, as `(value, end)`.
fn cardinal_at(tokens: &[String], i: usize) -> Option<(u32, usize)> {
    match word(tokens.get(i))? {
        Word::Zero => Some((0, i + 1)),
        Word::Unit(u) if word(tokens.get(i + 1)) == Some(Word::Hundred) => {
            let base = u * 100;
            let j = i + 2;
            let after_and = tokens
                .get(j)
                .filter(|t| t.eq_ignore_ascii_case("and"))
                .and_then(|_| below_hundred(tokens, j + 1));
            match after_and.or_else(|| below_hundred(tokens, j)) {
                Some((v, end)) => Some((base + v, end)),
                None => Some((base, j)),
            }
        }
        _ => below_hundred(tokens, i),
    }
}

/// Replaces every maximal cardinal-word run with a single numeral token.
pub fn numeralize_tokens(tokens: &[String]) -> (Vec<String>, Vec<NumeralSpan>) {
    let mut out = Vec::with_capacity(tokens.len());
    let mut spans = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        if let Some((value, end)) = cardinal_at(tokens, i) {
            out.push(value.to_string());
            spans.push(NumeralSpan {
                start: i,
                end,
                value,
                original_tokens: tokens[i..end].to_vec(),
            });
            i = end;
        } else {
            out.push(tokens[i].clone());
            i += 1;
        }
    }
    (out, spans)
}

/// Parses a numeric token (`26`, `43.5`).
pub fn parse_numeral(tok: &str) -> Option<f64> {
    let first = tok.chars().next()?;
    if !first.is_ascii_digit() || !tok.chars().all(|c| c.is_ascii_digit() || c == '.') {
        return None;
    }
    tok.parse().ok()
}

pub const DEFAULT_PERCENT_TOLERANCE: f64 = 1.0;

/// Returns the table's value when both sides agree after rounding, within
/// one integer point.
pub fn rectify_percent<T: Float>(summary_value: T, table_value: T) -> Option<T> {
    rectify_percent_with(summary_value, table_value, T::one())
}

pub fn rectify_percent_with<T: Float>(summary_value: T, table_value: T, tolerance: T) -> Option<T> {
    ((summary_value.round() - table_value.round()).abs() <= tolerance).then_some(table_value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    // Independent speller, written before the parser was exercised.
    fn spell(n: u32, hyphen_token: bool) -> Vec<String> {
        const ONES: [&str; 20] = [
            "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
            "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen",
            "eighteen", "nineteen",
        ];
        const T: [&str; 10] = [
            "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety",
        ];
        let mut out = Vec::new();
        let mut rest = n;
        if n >= 100 {
            out.push(ONES[(n / 100) as usize].to_string());
            out.push("hundred".to_string());
            rest = n % 100;
            if rest == 0 {
                return out;
            }
            out.push("and".to_string());
        }
        if rest < 20 {
            out.push(ONES[rest as usize].to_string());
        } else if rest % 10 == 0 {
            out.push(T[(rest / 10) as usize].to_string());
        } else if hyphen_token {
            out.push(format!("{}-{}", T[(rest / 10) as usize], ONES[(rest % 10) as usize]));
        } else {
            out.push(T[(rest / 10) as usize].to_string());
            out.push("-".to_string());
            out.push(ONES[(rest % 10) as usize].to_string());
        }
        out
    }

    #[test]
    fn unit() {
        assert_eq!(numeralize_tokens(&toks("three")).0, toks("3"));
    }

    #[test]
    fn compound() {
        let (out, spans) = numeralize_tokens(&toks("twenty - five points"));
        assert_eq!(out, toks("25 points"));
        assert_eq!(
            spans,
            vec![NumeralSpan {
                start: 0,
                end: 3,
                value: 25,
                original_tokens: toks("twenty - five")
            }]
        );
    }

    #[test]
    fn ordinals_and_articles_untouched() {
        assert_eq!(numeralize_tokens(&toks("first quarter")).0, toks("first quarter"));
        assert_eq!(numeralize_tokens(&toks("a triple-double")).0, toks("a triple-double"));
        assert_eq!(numeralize_tokens(&toks("an assist")).0, toks("an assist"));
    }

    #[test]
    fn mixed_forms() {
        assert_eq!(numeralize_tokens(&toks("Three - of - 13")).0, toks("3 - of - 13"));
        assert_eq!(numeralize_tokens(&toks("three - four")).0, toks("3 - 4"));
        assert_eq!(numeralize_tokens(&toks("one hundred and eight to ninety six")).0, toks("108 to 96"));
        assert_eq!(numeralize_tokens(&toks("hundred")).0, toks("hundred"));
        assert_eq!(numeralize_tokens(&toks("two hundred games")).0, toks("200 games"));
        assert_eq!(numeralize_tokens(&toks("thirty-three and")).0, toks("33 and"));
    }

    #[test]
    fn spelled_round_trip_0_to_200() {
        for n in 0..=200 {
            for hyph in [false, true] {
                let (out, _) = numeralize_tokens(&spell(n, hyph));
                assert_eq!(out, vec![n.to_string()], "n = {n}");
            }
        }
    }

    #[test]
    fn percent() {
        assert_eq!(rectify_percent(44.0, 44.0), Some(44.0));
        assert_eq!(rectify_percent(43.5, 44.0), Some(44.0));
        assert_eq!(rectify_percent(30.0, 38.0), None);
        assert_eq!(rectify_percent(45.0f32, 44.0), Some(44.0));
        assert_eq!(rectify_percent_with(45.0, 44.0, 0.0), None);
    }

    #[test]
    fn numerals() {
        assert_eq!(parse_numeral("26"), Some(26.0));
        assert_eq!(parse_numeral("43.5"), Some(43.5));
        assert_eq!(parse_numeral("-"), None);
        assert_eq!(parse_numeral("3PT"), None);
        assert_eq!(parse_numeral("1.2.3"), None);
    }

    fn vocab() -> impl Strategy<Value = String> {
        prop::sample::select(vec![
            "one", "two", "twenty", "-", "five", "hundred", "and", "points", "first", "a",
            "ninety-nine", "thirteen", "zero", "Seven", "the", "12",
        ])
        .prop_map(str::to_string)
    }

    proptest! {
        #[test]
        fn idempotent_and_shrinking(ts in prop::collection::vec(vocab(), 0..20)) {
            let (once, spans) = numeralize_tokens(&ts);
            let (twice, _) = numeralize_tokens(&once);
            prop_assert_eq!(&once, &twice);
            prop_assert!(once.len() <= ts.len());
            for s in spans {
                prop_assert!(s.start < s.end);
                prop_assert_eq!(&ts[s.start..s.end], &s.original_tokens[..]);
            }
        }
    }
}

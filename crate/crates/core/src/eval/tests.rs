use std::collections::HashMap;

use proptest::prelude::*;

use super::*;
use crate::fixtures::{self, HOWARD};
use crate::plan::PlanItem;
use crate::table::{EntityId, Side};

fn item(e: u32, ty: &str, v: f64) -> PlanItem {
    PlanItem {
        entity: EntityId(e),
        value: v,
        rtype: ty.to_string(),
        side: Side::Home,
        token_index: 0,
    }
}

fn plan(items: &[(u32, &str, f64)]) -> ContentPlan {
    ContentPlan::new(items.iter().map(|&(e, t, v)| item(e, t, v)).collect())
}

fn letters(s: &str) -> ContentPlan {
    plan(&s
        .chars()
        .map(|c| (c as u32, "PTS", 1.0))
        .collect::<Vec<_>>())
}

#[test]
fn cs_fixture() {
    let c: CsScore<f64> = cs(&letters("ABCD"), &letters("ABE"));
    assert!((c.precision - 2.0 / 3.0).abs() < 1e-12);
    assert!((c.recall - 0.5).abs() < 1e-12);
    assert!((c.f1 - 4.0 / 7.0).abs() < 1e-12);
    let same: CsScore<f64> = cs(&letters("ABC"), &letters("CBA"));
    assert_eq!((same.precision, same.recall, same.f1), (1.0, 1.0, 1.0));
    let none: CsScore<f64> = cs(&letters("AB"), &letters("CD"));
    assert_eq!((none.precision, none.recall, none.f1), (0.0, 0.0, 0.0));
    // duplicates do not count twice
    let dup: CsScore<f64> = cs(&letters("AB"), &letters("AAA"));
    assert_eq!((dup.precision, dup.recall), (1.0, 0.5));
}

#[test]
fn cs_empty_conventions() {
    let c: CsScore<f64> = cs(&letters("AB"), &ContentPlan::default());
    assert_eq!((c.precision, c.recall, c.f1), (0.0, 0.0, 0.0));
    let c: CsScore<f64> = cs(&ContentPlan::default(), &letters("AB"));
    assert_eq!((c.precision, c.recall), (0.0, 0.0));
}

#[test]
fn co_fixture() {
    assert!((co::<f64>(&letters("ABC"), &letters("BAC")) - 2.0 / 3.0).abs() < 1e-12);
    assert_eq!(co::<f64>(&letters("ABC"), &letters("ABC")), 1.0);
    assert_eq!(co::<f64>(&letters("ABC"), &ContentPlan::default()), 0.0);
    assert_eq!(co::<f64>(&ContentPlan::default(), &ContentPlan::default()), 1.0);
}

#[test]
fn rg_fixture() {
    let t = fixtures::table();
    let sys = ContentPlan::new(vec![
        PlanItem {
            entity: HOWARD,
            value: 26.0,
            rtype: "PTS".into(),
            side: Side::Home,
            token_index: 0,
        },
        PlanItem {
            entity: HOWARD,
            value: 24.0,
            rtype: "MIN".into(),
            side: Side::Home,
            token_index: 1,
        },
    ]);
    let r: RgScore<f64> = rg(&sys, &t);
    assert_eq!((r.count, r.precision, r.undefined), (2, 0.5, false));
    let empty: RgScore<f64> = rg(&ContentPlan::default(), &t);
    assert_eq!((empty.count, empty.precision, empty.undefined), (0, 0.0, true));
}

#[test]
fn rg_counts_repeats() {
    let t = fixtures::table();
    let h = HOWARD.0;
    let r: RgScore<f64> = rg(&plan(&[(h, "PTS", 26.0), (h, "PTS", 26.0), (h, "REB", 1.0)]), &t);
    assert_eq!(r.count, 3);
    assert!((r.precision - 2.0 / 3.0).abs() < 1e-12);
}

#[test]
fn f1_zero_when_both_zero() {
    assert_eq!(f1(0.0f64, 0.0), 0.0);
    assert!((f1(0.5f64, 1.0) - 2.0 / 3.0).abs() < 1e-12);
}

/// Lengths up to 3: any permutation scores at least 1 - (n-1)/n.
#[test]
fn co_permutation_bound_short_plans() {
    let perms3 = ["ABC", "ACB", "BAC", "BCA", "CAB", "CBA"];
    for p in perms3 {
        assert!(co::<f64>(&letters("ABC"), &letters(p)) >= 1.0 / 3.0 - 1e-12, "{p}");
    }
    assert!(co::<f64>(&letters("AB"), &letters("BA")) >= 0.5);
}

/// The bound fails from length 4: swapping halves costs 4 edits.
#[test]
fn co_permutation_bound_fails_at_four() {
    assert_eq!(dld(b"ABCD", b"CDAB"), 4);
    assert_eq!(co::<f64>(&letters("ABCD"), &letters("CDAB")), 0.0);
}

fn pair<'a>(gold: &'a ContentPlan, sys: &'a ContentPlan, t: &'a GameTable, gt: &'a [String], st: &'a [String]) -> EvalPair<'a> {
    EvalPair {
        gold_plan: gold,
        sys_plan: sys,
        table: t,
        gold_text: gt,
        sys_text: st,
    }
}

fn toks(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}

#[test]
fn corpus_single_and_duplicated() {
    let t = fixtures::table();
    let h = HOWARD.0;
    let gold = plan(&[(h, "PTS", 26.0), (h, "REB", 13.0), (h, "MIN", 30.0)]);
    let sys = plan(&[(h, "REB", 13.0), (h, "PTS", 26.0), (h, "MIN", 24.0)]);
    let gt = toks("Dwight Howard had 26 points and 13 rebounds in 30 minutes .");
    let st = toks("Dwight Howard had 13 rebounds and 26 points in 24 minutes .");
    let a = Aligner::default();
    let one: MetricsReport<f64> = evaluate_corpus(&[pair(&gold, &sys, &t, &gt, &st)], &a).unwrap();
    let r: RgScore<f64> = rg(&sys, &t);
    let c: CsScore<f64> = cs(&gold, &sys);
    assert_eq!(one.rg_count, 3.0);
    assert_eq!(one.rg_precision, r.precision);
    assert_eq!((one.cs_precision, one.cs_recall, one.cs_f1), (c.precision, c.recall, c.f1));
    assert_eq!(one.co_dld, co::<f64>(&gold, &sys));
    assert_eq!(one.bleu, bleu(&[st.clone()], &[gt.clone()]).unwrap());
    assert_eq!(one.n_samples, 1);

    let p = pair(&gold, &sys, &t, &gt, &st);
    let two: MetricsReport<f64> = evaluate_corpus(&[p.clone(), p], &a).unwrap();
    assert_eq!(two.rg_count, one.rg_count);
    assert_eq!(two.rg_precision, one.rg_precision);
    assert_eq!(two.cs_f1, one.cs_f1);
    assert_eq!(two.co_dld, one.co_dld);
    assert!((two.bleu.bleu - one.bleu.bleu).abs() < 1e-12);
    assert_eq!(two.n_samples, 2);
}

#[test]
fn corpus_two_pairs_hand_combined() {
    let t = fixtures::table();
    let h = HOWARD.0;
    // pair 1: 2 extracted, 1 licensed; CS p=1/2 r=1/1; CO: [A] vs [A,X] -> 1 - 1/2
    let g1 = plan(&[(h, "PTS", 26.0)]);
    let s1 = plan(&[(h, "PTS", 26.0), (h, "MIN", 24.0)]);
    // pair 2: 4 extracted, 4 licensed; CS p=1 r=4/5; CO: dld 1 over 5 -> 4/5
    let g2 = plan(&[(h, "PTS", 26.0), (h, "REB", 13.0), (h, "AST", 2.0), (h, "MIN", 30.0), (0, "TEAM-PTS", 108.0)]);
    let s2 = plan(&[(h, "PTS", 26.0), (h, "REB", 13.0), (h, "AST", 2.0), (h, "MIN", 30.0)]);
    let text = toks("a b c d e");
    let a = Aligner::default();
    let r: MetricsReport<f64> = evaluate_corpus(
        &[pair(&g1, &s1, &t, &text, &text), pair(&g2, &s2, &t, &text, &text)],
        &a,
    )
    .unwrap();
    assert_eq!(r.rg_count, 3.0);
    // micro: 5 licensed of 6 extracted, not the macro mean 3/4
    assert!((r.rg_precision - 5.0 / 6.0).abs() < 1e-12);
    assert!((r.cs_precision - (0.5 + 1.0) / 2.0).abs() < 1e-12);
    assert!((r.cs_recall - (1.0 + 0.8) / 2.0).abs() < 1e-12);
    let f1a = 2.0 * 0.5 * 1.0 / 1.5;
    let f1b = 2.0 * 1.0 * 0.8 / 1.8;
    assert!((r.cs_f1 - (f1a + f1b) / 2.0).abs() < 1e-12);
    assert!((r.co_dld - (0.5 + 0.8) / 2.0).abs() < 1e-12);
    assert_eq!(r.bleu.bleu, 1.0);
}

#[test]
fn corpus_errors() {
    let a = Aligner::default();
    assert_eq!(evaluate_corpus::<f64>(&[], &a).unwrap_err(), EvalError::EmptyCorpus);
    let plans = vec![ContentPlan::default()];
    let tables = vec![fixtures::table()];
    let texts = vec![toks("a")];
    assert_eq!(
        zip_pairs(&plans, &[], &tables, &texts, &texts).unwrap_err(),
        EvalError::LengthMismatch { left: 1, right: 0 }
    );
    assert_eq!(zip_pairs(&plans, &plans, &tables, &texts, &texts).unwrap().len(), 1);
}

#[test]
fn report_table_layout() {
    let t = fixtures::table();
    let p = plan(&[(HOWARD.0, "PTS", 26.0)]);
    let text = toks("a b c d");
    let r: MetricsReport<f64> = evaluate_corpus(&[pair(&p, &p, &t, &text, &text)], &Aligner::default()).unwrap();
    let table = r.to_table();
    let header: Vec<&str> = table.lines().next().unwrap().split_whitespace().collect();
    assert_eq!(header, ["RG#", "RGP%", "CSP%", "CSR%", "CSF%", "CO%", "BLEU"]);
    assert!(table.contains("100.00"));
}

fn symbols() -> impl Strategy<Value = Vec<(u32, u8)>> {
    prop::collection::vec((0u32..5, 0u8..3), 0..8)
}

const TYPES: [&str; 3] = ["PTS", "REB", "AST"];

fn to_plan(v: &[(u32, u8)]) -> ContentPlan {
    plan(&v
        .iter()
        .map(|&(e, t)| (e + 2, TYPES[t as usize], f64::from(t) + 10.0))
        .collect::<Vec<_>>())
}

fn rename(p: &ContentPlan, map: &HashMap<EntityId, EntityId>) -> ContentPlan {
    let mut q = p.clone();
    for it in &mut q.items {
        it.entity = map[&it.entity];
    }
    q
}

fn random_table(values: &[(u32, u8)]) -> GameTable {
    let mut t = GameTable::new("r", "d", ("A", "Aces"), ("B", "Bees"));
    for i in 0..5 {
        t.add_player(&format!("P{i} Q{i}"), Side::Home, None);
    }
    for &(e, ty) in values {
        t.set(EntityId(e + 2), TYPES[ty as usize], f64::from(ty) + 10.0);
    }
    t
}

proptest! {
    #[test]
    fn renaming_invariance(g in symbols(), s in symbols(), cells in symbols(), shift in 1u32..5) {
        // bijection over the five player ids
        let map: HashMap<EntityId, EntityId> =
            (0..5).map(|i| (EntityId(i + 2), EntityId((i + shift) % 5 + 2))).collect();
        let (gp, sp) = (to_plan(&g), to_plan(&s));
        let (gr, sr) = (rename(&gp, &map), rename(&sp, &map));
        prop_assert_eq!(co::<f64>(&gp, &sp), co::<f64>(&gr, &sr));
        prop_assert_eq!(cs::<f64>(&gp, &sp), cs::<f64>(&gr, &sr));
        let t = random_table(&cells);
        let mut tr = t.clone();
        for r in &mut tr.records {
            r.entity = map[&r.entity];
        }
        prop_assert_eq!(rg::<f64>(&sp, &t).precision, rg::<f64>(&sr, &tr).precision);
    }

    #[test]
    fn rg_matches_membership_oracle(s in symbols(), cells in symbols()) {
        let t = random_table(&cells);
        let sp = to_plan(&s);
        let licensed = sp.items.iter().filter(|it| {
            t.records.iter().any(|r| r.entity == it.entity && r.rtype == it.rtype && r.value == it.value)
        }).count();
        let r: RgScore<f64> = rg(&sp, &t);
        prop_assert_eq!(r.count, sp.len());
        prop_assert_eq!(r.licensed, licensed);
    }

    #[test]
    fn self_scores(g in symbols()) {
        let gp = to_plan(&g);
        prop_assume!(!gp.is_empty());
        let c: CsScore<f64> = cs(&gp, &gp);
        prop_assert_eq!(c.precision, 1.0);
        prop_assert_eq!(co::<f64>(&gp, &gp), 1.0);
    }

    #[test]
    fn adjacent_swap_within_bound(g in symbols(), at in 0usize..8) {
        let gp = to_plan(&g);
        prop_assume!(gp.len() >= 2);
        let mut sp = gp.clone();
        let i = at % (gp.len() - 1);
        sp.items.swap(i, i + 1);
        let n = gp.len() as f64;
        prop_assert!(co::<f64>(&gp, &sp) >= 1.0 - (n - 1.0) / n - 1e-12);
    }

    #[test]
    fn fractions_in_unit_interval(g in symbols(), s in symbols()) {
        let (gp, sp) = (to_plan(&g), to_plan(&s));
        let c: CsScore<f64> = cs(&gp, &sp);
        for x in [c.precision, c.recall, c.f1, co::<f64>(&gp, &sp)] {
            prop_assert!((0.0..=1.0).contains(&x));
        }
    }

    #[test]
    fn bleu_order_invariant(
        corpus in prop::collection::vec(
            (prop::collection::vec(0u8..6, 1..10), prop::collection::vec(0u8..6, 1..10)),
            1..6,
        ),
        rot in 0usize..6,
    ) {
        let (c, r): (Vec<Vec<u8>>, Vec<Vec<u8>>) = corpus.iter().cloned().unzip();
        let k = rot % c.len();
        let (mut c2, mut r2) = (c.clone(), r.clone());
        c2.rotate_left(k);
        r2.rotate_left(k);
        c2.reverse();
        r2.reverse();
        let a: BleuScore<f64> = bleu(&c, &r).unwrap();
        let b: BleuScore<f64> = bleu(&c2, &r2).unwrap();
        prop_assert_eq!(a.precisions, b.precisions);
        prop_assert_eq!(a.bp, b.bp);
        prop_assert!((a.bleu - b.bleu).abs() < 1e-12);
    }
}

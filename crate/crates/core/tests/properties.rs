mod common;

use common::{formula_text, small_digraph};
use proptest::prelude::*;
use zf_cantor::semantics::{eval, eval_sentence, Environment};
use zf_cantor::subst::{rep0, sub1, sub2, Interval};
use zf_cantor::syntax::{
    bracket_subsequence, good_bracketing, is_sentence, parse, parse_text, tokenize, Bracket,
    Formula, Signatures, Variable,
};

fn zf(text: &str) -> Formula {
    parse_text(text, &Signatures::empty()).unwrap()
}

/// Every good bracketing, found by trying all pairings.
fn all_good_bracketings(word: &[Bracket]) -> Vec<Vec<(usize, usize)>> {
    fn go(
        word: &[Bracket],
        free: &mut Vec<usize>,
        blocks: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let Some(&i) = free.first() else {
            let mut b = blocks.clone();
            b.sort_unstable();
            out.push(b);
            return;
        };
        for k in 1..free.len() {
            let j = free[k];
            let ok = word[i - 1] == Bracket::Open
                && word[j - 1] == Bracket::Close
                && blocks
                    .iter()
                    .all(|&(a, b)| !(a < i && i < b && b < j) && !(i < a && a < j && j < b));
            if ok {
                free.remove(k);
                free.remove(0);
                blocks.push((i, j));
                go(word, free, blocks, out);
                blocks.pop();
                free.insert(0, i);
                free.insert(k, j);
            }
        }
    }
    if word.len() % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    go(
        word,
        &mut (1..=word.len()).collect(),
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Replacement one interval at a time with `rep0`, carrying the remaining
/// intervals along.
fn sub2_by_rep0(u: &[char], reps: &[(Vec<char>, Interval)]) -> Vec<char> {
    let mut w = u.to_vec();
    let mut pending: Vec<(Vec<char>, usize, usize)> = reps
        .iter()
        .map(|(v, iv)| (v.clone(), iv.start(), iv.end()))
        .collect();
    while let Some((v, l, m)) = pending.pop() {
        let mut moved = Vec::new();
        let mut next = w.clone();
        for (v2, l2, m2) in &pending {
            let (x, l2, m2) = rep0(&w, &v, l, m, *l2, *m2).unwrap();
            next = x;
            moved.push((v2.clone(), l2, m2));
        }
        if pending.is_empty() {
            next = zf_cantor::subst::rep(&w, &v, l, m).unwrap();
        }
        w = next;
        pending = moved;
    }
    w
}

/// A word with disjoint intervals and their replacement words.
fn substitution_case() -> impl Strategy<Value = (Vec<char>, Vec<(Vec<char>, Interval)>)> {
    let letter = prop::char::range('a', 'e');
    (1usize..30)
        .prop_flat_map(move |len| {
            (
                prop::collection::vec(letter.clone(), len),
                prop::collection::vec(prop::bool::weighted(0.3), len),
                prop::collection::vec(
                    prop::collection::vec(prop::char::range('A', 'E'), 1..5),
                    len,
                ),
                prop::collection::vec(1usize..4, len),
            )
        })
        .prop_map(|(u, starts, words, lens)| {
            let mut reps = Vec::new();
            let mut i = 1;
            while i <= u.len() {
                if starts[i - 1] {
                    let m = (i + lens[i - 1] - 1).min(u.len());
                    reps.push((words[i - 1].clone(), Interval::new(i, m).unwrap()));
                    i = m + 1;
                } else {
                    i += 1;
                }
            }
            (u, reps)
        })
}

fn closed(text: &str) -> Formula {
    let f = zf(text);
    let mut s = text.to_string();
    for v in f.free_variables() {
        s = format!("( A {v} {s} )");
    }
    zf(&s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn render_parse_round_trip(text in formula_text(4, 4)) {
        let f = zf(&text);
        let rendered = f.to_string();
        prop_assert_eq!(&rendered, &text);
        prop_assert_eq!(zf(&rendered), f.clone());
        prop_assert_eq!(tokenize(&rendered).unwrap().len(), f.len());
    }

    #[test]
    fn subformulas_nest_and_reparse(text in formula_text(4, 4)) {
        let f = zf(&text);
        let word = f.to_word();
        let subs = f.subformulas();
        for s in &subs {
            let span = s.span();
            prop_assert!(f.span().contains(&span));
            let factor = &word[span.start - 1..span.end];
            let again = parse(factor, &Signatures::empty()).unwrap();
            prop_assert_eq!(again.to_word(), s.to_word());
            for c in s.children() {
                prop_assert!(span.contains(&c.span()) && c.span() != span);
            }
            let kids = s.children();
            if kids.len() == 2 {
                prop_assert!(kids[0].span().is_disjoint(&kids[1].span()));
            }
        }
        for a in &subs {
            for b in &subs {
                let (x, y) = (a.span(), b.span());
                prop_assert!(x.contains(&y) || y.contains(&x) || x.is_disjoint(&y));
            }
        }
    }

    #[test]
    fn bracketing_is_unique(word in prop::collection::vec(prop_oneof![Just(Bracket::Open), Just(Bracket::Close)], 0..12)) {
        let all = all_good_bracketings(&word);
        prop_assert!(all.len() <= 1);
        prop_assert_eq!(good_bracketing(&word), all.into_iter().next());
    }

    #[test]
    fn formulas_are_well_bracketed(text in formula_text(3, 4)) {
        let brackets: Vec<Bracket> = bracket_subsequence(&zf(&text).to_word()).into_iter().map(|(_, b)| b).collect();
        prop_assert!(good_bracketing(&brackets).is_some());
    }

    #[test]
    fn sub2_matches_iterated_rep0((u, reps) in substitution_case()) {
        prop_assume!(!reps.is_empty());
        prop_assert_eq!(sub2(&u, &reps).unwrap(), sub2_by_rep0(&u, &reps));
    }

    #[test]
    fn sub2_ignores_order_and_obeys_length_law((u, reps) in substitution_case(), seed in any::<u64>()) {
        let w = sub2(&u, &reps).unwrap();
        let removed: usize = reps.iter().map(|(_, iv)| iv.len()).sum();
        let inserted: usize = reps.iter().map(|(v, _)| v.len()).sum();
        prop_assert_eq!(w.len(), u.len() - removed + inserted);
        let mut shuffled = reps.clone();
        let k = shuffled.len().max(1);
        shuffled.rotate_left(seed as usize % k);
        shuffled.reverse();
        prop_assert_eq!(sub2(&u, &shuffled).unwrap(), w);
    }

    #[test]
    fn sub1_preserves_length(u in prop::collection::vec(prop::char::range('a', 'f'), 1..40)) {
        let w = sub1(&u, &[('a', 'b'), ('b', 'a'), ('c', 'z')]).unwrap();
        prop_assert_eq!(w.len(), u.len());
        prop_assert_eq!(sub1(&w, &[('a', 'b'), ('b', 'a'), ('z', 'c')]).unwrap(), u);
    }

    #[test]
    fn sentences_ignore_the_environment(
        text in formula_text(3, 4),
        d in small_digraph(3),
        a in prop::collection::vec(1usize..=3, 3),
        b in prop::collection::vec(1usize..=3, 3),
    ) {
        let s = closed(&text);
        prop_assert!(is_sentence(&s));
        let n = d.order();
        let env = |xs: &[usize]| -> Environment {
            xs.iter().enumerate().map(|(i, &v)| (Variable::Set(i + 1), (v - 1) % n + 1)).collect()
        };
        let base = eval_sentence(&d, &s).unwrap();
        prop_assert_eq!(eval(&d, &s, &env(&a)).unwrap(), base);
        prop_assert_eq!(eval(&d, &s, &env(&b)).unwrap(), base);
    }

    #[test]
    fn quantifier_duality(text in formula_text(3, 3), k in 1usize..=3, d in small_digraph(3)) {
        let not_exists = closed(&format!("! ( E x{k} {text} )"));
        let forall_not = closed(&format!("( A x{k} ! {text} )"));
        prop_assert_eq!(eval_sentence(&d, &not_exists).unwrap(), eval_sentence(&d, &forall_not).unwrap());
        let not_forall = closed(&format!("! ( A x{k} {text} )"));
        let exists_not = closed(&format!("( E x{k} ! {text} )"));
        prop_assert_eq!(eval_sentence(&d, &not_forall).unwrap(), eval_sentence(&d, &exists_not).unwrap());
    }
}

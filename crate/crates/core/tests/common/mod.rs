#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use zf_cantor::digraph::Digraph;

/// Definitions applied literally to in-neighbor sets, with no precomputed tables.
pub struct Naive {
    n: usize,
    nbr: Vec<BTreeSet<usize>>,
}

impl Naive {
    pub fn new(d: &Digraph) -> Self {
        let nbr = (1..=d.order())
            .map(|v| (1..=d.order()).filter(|&u| d.has_arrow(u, v)).collect())
            .collect();
        Naive { n: d.order(), nbr }
    }

    fn vs(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    pub fn nb(&self, v: usize) -> &BTreeSet<usize> {
        &self.nbr[v - 1]
    }

    pub fn sus(&self, u: usize, v: usize) -> bool {
        self.nb(u).is_subset(self.nb(v))
    }

    pub fn si(&self, u: usize, v: usize) -> bool {
        *self.nb(u) == BTreeSet::from([v])
    }

    pub fn sin(&self, u: usize, v: usize) -> bool {
        self.si(u, v) && self.vs().filter(|&x| self.si(x, v)).count() == 1
    }

    pub fn do_(&self, u: usize, v: usize, w: usize) -> bool {
        *self.nb(u) == BTreeSet::from([v, w])
    }

    pub fn dou(&self, u: usize, v: usize, w: usize) -> bool {
        self.do_(u, v, w) && self.vs().filter(|&x| self.do_(x, v, w)).count() == 1
    }

    pub fn opa(&self, u: usize, v: usize, w: usize) -> bool {
        self.vs().any(|s| {
            self.vs()
                .any(|d| self.dou(u, s, d) && self.sin(s, v) && self.dou(d, v, w))
        })
    }

    fn is_pair_of(&self, p: usize, pred: impl Fn(usize, usize) -> bool) -> bool {
        self.vs()
            .any(|a| self.vs().any(|b| self.opa(p, a, b) && pred(a, b)))
    }

    pub fn rel(&self, u: usize, v: usize) -> bool {
        self.nb(u)
            .iter()
            .all(|&p| self.is_pair_of(p, |a, b| self.nb(v).contains(&a) && self.sus(b, v)))
    }

    pub fn fun(&self, u: usize, v: usize) -> bool {
        self.rel(u, v)
            && self.nb(v).iter().all(|&a| {
                self.nb(u)
                    .iter()
                    .filter(|&&p| self.is_pair_of(p, |x, _| x == a))
                    .count()
                    == 1
            })
    }

    pub fn sur(&self, u: usize, v: usize) -> bool {
        self.fun(u, v)
            && self.vs().filter(|&b| self.sus(b, v)).all(|b| {
                self.nb(u)
                    .iter()
                    .any(|&p| self.is_pair_of(p, |_, y| y == b))
            })
    }

    pub fn predicate(&self, name: &str, args: &[usize]) -> bool {
        match (name, args) {
            ("SUS", &[u, v]) => self.sus(u, v),
            ("SI", &[u, v]) => self.si(u, v),
            ("SIN", &[u, v]) => self.sin(u, v),
            ("DO", &[u, v, w]) => self.do_(u, v, w),
            ("DOU", &[u, v, w]) => self.dou(u, v, w),
            ("OPA", &[u, v, w]) => self.opa(u, v, w),
            ("REL", &[u, v]) => self.rel(u, v),
            ("FUN", &[u, v]) => self.fun(u, v),
            ("SUR", &[u, v]) => self.sur(u, v),
            _ => panic!("bad predicate call {name}{args:?}"),
        }
    }

    pub fn is_cantor(&self) -> bool {
        !self.vs().any(|u| self.vs().any(|v| self.sur(v, u)))
    }

    pub fn is_strongly_extensive(&self) -> bool {
        self.vs().all(|u| {
            let elems: Vec<usize> = self.nb(u).iter().copied().collect();
            (0u32..1 << elems.len()).all(|mask| {
                let a: BTreeSet<usize> = elems
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &x)| x)
                    .collect();
                self.vs().any(|v| *self.nb(v) == a)
            })
        })
    }
}

/// `(total, e_n, c_n)` by the naive definitions.
pub fn naive_census(n: usize) -> (u64, u64, u64) {
    let mut row = (0, 0, 0);
    for code in 0..1u64 << (n * n) {
        let o = Naive::new(&Digraph::from_code(n, code).unwrap());
        row.0 += 1;
        row.1 += o.is_strongly_extensive() as u64;
        row.2 += o.is_cantor() as u64;
    }
    row
}

fn var(max: usize) -> impl Strategy<Value = String> {
    (1..=max).prop_map(|k| format!("x{k}"))
}

/// Text of a random ZF formula over `x1 ... x{vars}`.
pub fn formula_text(vars: usize, depth: u32) -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (var(vars), var(vars)).prop_map(|(a, b)| format!("( {a} in {b} )")),
        (var(vars), var(vars)).prop_map(|(a, b)| format!("( {a} = {b} )")),
    ];
    leaf.prop_recursive(depth, 48, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(|f| format!("! {f}")),
            (
                inner.clone(),
                prop_oneof![Just("->"), Just("<->"), Just("&"), Just("|")],
                inner.clone()
            )
                .prop_map(|(l, c, r)| format!("( {l} {c} {r} )")),
            (prop_oneof![Just("E"), Just("A")], var(vars), inner)
                .prop_map(|(q, x, f)| format!("( {q} {x} {f} )")),
        ]
    })
}

pub fn small_digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        (Just(n), 0..1u64 << (n * n)).prop_map(|(n, c)| Digraph::from_code(n, c).unwrap())
    })
}

//! Graph-theoretic versions of the nine predicates, the Cantor and strong
//! extensionality checks, surjection extraction and the ω-digraph prefixes.
//!
//! `⊂` between in-neighborhoods is read as `⊆` throughout.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::cantor::{emit_phi, NAMES};
use crate::digraph::Digraph;
use crate::semantics::{CompiledFormula, EvalOptions};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{predicate} takes {expected} arguments, got {found}")]
    ArityMismatch {
        predicate: Predicate,
        expected: usize,
        found: usize,
    },
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("vertex {u} is the ordered pair of both {first:?} and {second:?}")]
    AmbiguousPair {
        u: usize,
        first: (usize, usize),
        second: (usize, usize),
    },
    #[error("vertex {u} is not a D-surjection of vertex {v}")]
    NotASurjection { u: usize, v: usize },
    #[error("vertex {vertex} has in-degree {degree}, above the limit {limit}")]
    InDegreeTooLarge {
        vertex: usize,
        degree: usize,
        limit: usize,
    },
    #[error("{levels} levels requested, at most {limit} supported")]
    SizeGuardExceeded { levels: usize, limit: usize },
}

/// The nine predicates in scheme order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Predicate {
    Sus,
    Si,
    Sin,
    Do,
    Dou,
    Opa,
    Rel,
    Fun,
    Sur,
}

impl Predicate {
    pub const ALL: [Predicate; 9] = [
        Predicate::Sus,
        Predicate::Si,
        Predicate::Sin,
        Predicate::Do,
        Predicate::Dou,
        Predicate::Opa,
        Predicate::Rel,
        Predicate::Fun,
        Predicate::Sur,
    ];

    /// 1-based position in the scheme.
    pub fn index(self) -> usize {
        self as usize + 1
    }

    pub fn name(self) -> &'static str {
        NAMES[self as usize]
    }

    pub fn arity(self) -> usize {
        match self {
            Predicate::Do | Predicate::Dou | Predicate::Opa => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Predicate::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| AnalysisError::UnknownPredicate(s.to_string()))
    }
}

/// `OPA(pair; first; second)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PairResolution {
    pub pair: usize,
    pub first: usize,
    pub second: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Resolved {
    Absent,
    Pair(usize, usize),
    Ambiguous((usize, usize), (usize, usize)),
}

/// Precomputed neighborhood classes and ordered-pair resolutions of one digraph.
#[derive(Clone, Debug)]
pub struct Analyzer<'a> {
    d: &'a Digraph,
    // N-set -> vertices having it
    classes: HashMap<&'a [usize], Vec<usize>>,
    resolution: Vec<Resolved>,
}

impl<'a> Analyzer<'a> {
    pub fn new(d: &'a Digraph) -> Self {
        let n = d.order();
        let mut classes: HashMap<&[usize], Vec<usize>> = HashMap::new();
        for v in d.vertices() {
            classes.entry(d.in_neighbors(v)).or_default().push(v);
        }
        let mut a = Analyzer {
            d,
            classes,
            resolution: vec![Resolved::Absent; n],
        };
        let sing: Vec<Option<usize>> = d.vertices().map(|v| a.unique_with(&[v])).collect();
        for v in d.vertices() {
            let Some(s) = sing[v - 1] else { continue };
            for w in d.vertices() {
                let Some(dd) = a.doubleton(v, w) else {
                    continue;
                };
                let Some(p) = a.doubleton(s, dd) else {
                    continue;
                };
                a.resolution[p - 1] = match a.resolution[p - 1] {
                    Resolved::Absent => Resolved::Pair(v, w),
                    Resolved::Pair(b, c) => Resolved::Ambiguous((b, c), (v, w)),
                    amb => amb,
                };
            }
        }
        a
    }

    pub fn digraph(&self) -> &'a Digraph {
        self.d
    }

    fn unique_with(&self, set: &[usize]) -> Option<usize> {
        match self.classes.get(set).map(Vec::as_slice) {
            Some(&[v]) => Some(v),
            _ => None,
        }
    }

    /// `{v, w}_D`, when it exists.
    fn doubleton(&self, v: usize, w: usize) -> Option<usize> {
        if v == w {
            self.unique_with(&[v])
        } else {
            self.unique_with(&[v.min(w), v.max(w)])
        }
    }

    fn check(&self, v: usize) -> Result<(), AnalysisError> {
        if self.d.contains(v) {
            Ok(())
        } else {
            Err(AnalysisError::VertexOutOfRange {
                vertex: v,
                n: self.d.order(),
            })
        }
    }

    fn n(&self, v: usize) -> &'a [usize] {
        self.d.in_neighbors(v)
    }

    fn sus(&self, u: usize, v: usize) -> bool {
        let nv = self.n(v);
        self.n(u).iter().all(|x| nv.binary_search(x).is_ok())
    }

    fn si(&self, u: usize, v: usize) -> bool {
        self.n(u) == [v]
    }

    fn sin(&self, u: usize, v: usize) -> bool {
        self.si(u, v) && self.d.vertices().all(|x| !self.si(x, v) || x == u)
    }

    fn do_(&self, u: usize, v: usize, w: usize) -> bool {
        let nu = self.n(u);
        nu.iter().all(|&x| x == v || x == w) && nu.contains(&v) && nu.contains(&w)
    }

    fn dou(&self, u: usize, v: usize, w: usize) -> bool {
        self.do_(u, v, w) && self.d.vertices().all(|x| !self.do_(x, v, w) || x == u)
    }

    fn opa(&self, u: usize, v: usize, w: usize) -> bool {
        self.d.vertices().any(|s| {
            self.sin(s, v)
                && self
                    .d
                    .vertices()
                    .any(|dd| self.dou(dd, v, w) && self.dou(u, s, dd))
        })
    }

    fn resolved(&self, p: usize) -> Result<Option<(usize, usize)>, AnalysisError> {
        match self.resolution[p - 1] {
            Resolved::Absent => Ok(None),
            Resolved::Pair(v, w) => Ok(Some((v, w))),
            Resolved::Ambiguous(first, second) => Err(AnalysisError::AmbiguousPair {
                u: p,
                first,
                second,
            }),
        }
    }

    fn rel(&self, u: usize, v: usize) -> Result<bool, AnalysisError> {
        for &p in self.n(u) {
            match self.resolved(p)? {
                Some((a, b)) if self.n(v).contains(&a) && self.sus(b, v) => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    fn fun(&self, u: usize, v: usize) -> Result<bool, AnalysisError> {
        if !self.rel(u, v)? {
            return Ok(false);
        }
        for &a in self.n(v) {
            let mut count = 0;
            for &p in self.n(u) {
                if matches!(self.resolved(p)?, Some((x, _)) if x == a) {
                    count += 1;
                }
            }
            if count != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn sur(&self, u: usize, v: usize) -> Result<bool, AnalysisError> {
        if !self.fun(u, v)? {
            return Ok(false);
        }
        let mut image = HashSet::new();
        for &p in self.n(u) {
            if let Some((_, b)) = self.resolved(p)? {
                image.insert(b);
            }
        }
        Ok(self
            .d
            .vertices()
            .all(|b| !self.sus(b, v) || image.contains(&b)))
    }

    pub fn in_neighbors(&self, u: usize) -> Result<&'a [usize], AnalysisError> {
        self.check(u)?;
        Ok(self.n(u))
    }

    /// `𝒫(u) = { v : N(v) ⊆ N(u) }`.
    pub fn d_power_set(&self, u: usize) -> Result<BTreeSet<usize>, AnalysisError> {
        self.check(u)?;
        Ok(self.d.vertices().filter(|&v| self.sus(v, u)).collect())
    }

    pub fn semantic_predicate(
        &self,
        predicate: Predicate,
        args: &[usize],
    ) -> Result<bool, AnalysisError> {
        if args.len() != predicate.arity() {
            return Err(AnalysisError::ArityMismatch {
                predicate,
                expected: predicate.arity(),
                found: args.len(),
            });
        }
        for &a in args {
            self.check(a)?;
        }
        Ok(match (predicate, args) {
            (Predicate::Sus, &[u, v]) => self.sus(u, v),
            (Predicate::Si, &[u, v]) => self.si(u, v),
            (Predicate::Sin, &[u, v]) => self.sin(u, v),
            (Predicate::Do, &[u, v, w]) => self.do_(u, v, w),
            (Predicate::Dou, &[u, v, w]) => self.dou(u, v, w),
            (Predicate::Opa, &[u, v, w]) => self.opa(u, v, w),
            (Predicate::Rel, &[u, v]) => self.rel(u, v)?,
            (Predicate::Fun, &[u, v]) => self.fun(u, v)?,
            (Predicate::Sur, &[u, v]) => self.sur(u, v)?,
            _ => unreachable!("arity checked above"),
        })
    }

    /// The unique `(v, w)` with `OPA(u; v; w)`, if any.
    pub fn resolve_opa(&self, u: usize) -> Result<Option<PairResolution>, AnalysisError> {
        self.check(u)?;
        let r = self.resolved(u)?;
        if cfg!(debug_assertions) {
            let scan: Vec<(usize, usize)> = self
                .d
                .vertices()
                .flat_map(|v| self.d.vertices().map(move |w| (v, w)))
                .filter(|&(v, w)| self.opa(u, v, w))
                .collect();
            assert_eq!(
                scan,
                r.into_iter().collect::<Vec<_>>(),
                "pair table disagrees with OPA at {u}"
            );
        }
        Ok(r.map(|(first, second)| PairResolution {
            pair: u,
            first,
            second,
        }))
    }

    /// The function encoded by the D-surjection `u` of `v`.
    pub fn extract_surjection(
        &self,
        u: usize,
        v: usize,
    ) -> Result<SurjectionWitness, AnalysisError> {
        if !self.semantic_predicate(Predicate::Sur, &[u, v])? {
            return Err(AnalysisError::NotASurjection { u, v });
        }
        let mut graph = BTreeSet::new();
        for &p in self.n(u) {
            let (a, b) = self
                .resolved(p)?
                .expect("elements of a D-relation are ordered pairs");
            graph.insert((a, b));
        }
        let witness = SurjectionWitness {
            function_vertex: u,
            domain_vertex: v,
            graph,
        };
        let domain: BTreeSet<usize> = witness.graph.iter().map(|&(a, _)| a).collect();
        assert_eq!(
            domain,
            self.n(v).iter().copied().collect(),
            "not total on N(v)"
        );
        assert_eq!(witness.graph.len(), domain.len(), "not a function");
        assert_eq!(
            witness.image(),
            self.d_power_set(v)?,
            "not onto the D-power set"
        );
        Ok(witness)
    }

    /// `(u, v)` such that `v` is a D-surjection of `u`, if any.
    pub fn cantor_witness(&self) -> Option<(usize, usize)> {
        self.d.vertices().find_map(|u| {
            self.d
                .vertices()
                .find(|&v| {
                    self.sur(v, u)
                        .expect("ordered pairs are determined by their vertex")
                })
                .map(|v| (u, v))
        })
    }

    pub fn is_cantor(&self) -> bool {
        self.cantor_witness().is_none()
    }
}

/// `u` as a function from `N(v)` onto `𝒫(v)`, given by the real pairs `(a, b)`
/// with `<a, b>_D` a D-element of `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectionWitness {
    pub function_vertex: usize,
    pub domain_vertex: usize,
    pub graph: BTreeSet<(usize, usize)>,
}

impl SurjectionWitness {
    pub fn image(&self) -> BTreeSet<usize> {
        self.graph.iter().map(|&(_, b)| b).collect()
    }
}

impl fmt::Display for SurjectionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "surjection u={} v={}",
            self.function_vertex, self.domain_vertex
        )?;
        for (a, b) in &self.graph {
            write!(f, "\npair {a} {b}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CantorMethod {
    #[default]
    Semantic,
    Phi,
}

impl FromStr for CantorMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "semantic" => Ok(CantorMethod::Semantic),
            "phi" => Ok(CantorMethod::Phi),
            _ => Err(format!("unknown method `{s}`; expected semantic or phi")),
        }
    }
}

impl fmt::Display for CantorMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CantorMethod::Semantic => "semantic",
            CantorMethod::Phi => "phi",
        })
    }
}

/// The Cantor sentence, compiled once.
pub fn compiled_phi() -> &'static CompiledFormula {
    static PHI: OnceLock<CompiledFormula> = OnceLock::new();
    PHI.get_or_init(|| {
        CompiledFormula::compile(&emit_phi()).expect("the sentence is predicate-free")
    })
}

pub fn is_cantor(d: &Digraph, method: CantorMethod) -> bool {
    match method {
        CantorMethod::Semantic => Analyzer::new(d).is_cantor(),
        CantorMethod::Phi => compiled_phi()
            .eval_sentence_with(d, EvalOptions { memoize: true })
            .expect("the sentence is closed"),
    }
}

/// See [`Analyzer::cantor_witness`].
pub fn cantor_witness(d: &Digraph) -> Option<(usize, usize)> {
    Analyzer::new(d).cantor_witness()
}

/// Every subset of every `N(u)` is some `N(v)`.
pub fn is_strongly_extensive(d: &Digraph) -> bool {
    unrealized_subset(d).is_none()
}

/// A vertex `u` and a subset of `N(u)` that is no in-neighborhood, if any.
///
/// Uses that a family of finite sets contains all subsets of its members
/// exactly when it is closed under deleting one element.
pub fn unrealized_subset(d: &Digraph) -> Option<(usize, Vec<usize>)> {
    let realized: HashSet<&[usize]> = d.vertices().map(|v| d.in_neighbors(v)).collect();
    for u in d.vertices() {
        let set = d.in_neighbors(u);
        for i in 0..set.len() {
            let mut smaller = set.to_vec();
            smaller.remove(i);
            if !realized.contains(smaller.as_slice()) {
                return Some((u, smaller));
            }
        }
    }
    None
}

pub const DEFAULT_IN_DEGREE_LIMIT: usize = 20;

/// [`is_strongly_extensive`] by listing all `2^deg` subsets of each `N(u)`.
pub fn is_strongly_extensive_by_subsets(
    d: &Digraph,
    in_degree_limit: usize,
) -> Result<bool, AnalysisError> {
    if let Some(v) = d
        .vertices()
        .find(|&v| d.in_neighbors(v).len() > in_degree_limit)
    {
        return Err(AnalysisError::InDegreeTooLarge {
            vertex: v,
            degree: d.in_neighbors(v).len(),
            limit: in_degree_limit,
        });
    }
    let realized: HashSet<&[usize]> = d.vertices().map(|v| d.in_neighbors(v)).collect();
    Ok(realized.iter().all(|set| {
        (0u64..1 << set.len()).all(|mask| {
            let subset: Vec<usize> = subset_of(set, mask);
            realized.contains(subset.as_slice())
        })
    }))
}

/// Elements of `set` selected by the bits of `mask`, lowest bit first.
pub fn subset_of(set: &[usize], mask: u64) -> Vec<usize> {
    set.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &x)| x)
        .collect()
}

pub const OMEGA_LEVEL_LIMIT: usize = 4;

/// Vertex ranges `V_1, ..., V_levels` of the ω-digraph prefix.
pub fn omega_levels(levels: usize) -> Result<Vec<(usize, usize)>, AnalysisError> {
    if levels == 0 || levels > OMEGA_LEVEL_LIMIT {
        return Err(AnalysisError::SizeGuardExceeded {
            levels,
            limit: OMEGA_LEVEL_LIMIT,
        });
    }
    let mut out = vec![(1, 1)];
    while out.len() < levels {
        let max = out.last().expect("nonempty").1;
        out.push((max + 1, max + (1 << max)));
    }
    Ok(out)
}

/// The first `levels` levels of the countable strongly extensive digraph.
///
/// `V_1 = {1}` with no arrows; level `k + 1` adds one vertex per subset of
/// `X = V_1 ∪ ... ∪ V_k`, the `i`-th vertex having as in-neighbors the `i`-th
/// subset in binary-counter order over ascending `X`.
pub fn omega_prefix(levels: usize) -> Result<Digraph, AnalysisError> {
    let bounds = omega_levels(levels)?;
    let mut arrows = Vec::new();
    for pair in bounds.windows(2) {
        let x: Vec<usize> = (1..=pair[0].1).collect();
        for (i, target) in (pair[1].0..=pair[1].1).enumerate() {
            arrows.extend(subset_of(&x, i as u64).into_iter().map(|a| (a, target)));
        }
    }
    let n = bounds.last().expect("nonempty").1;
    Ok(Digraph::new(n, arrows).expect("arrows stay within the prefix"))
}

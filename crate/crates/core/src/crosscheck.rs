//! Agreement between the graph-theoretic predicates and evaluation of the
//! scheme expansions.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{Analyzer, Predicate};
use crate::cantor::builtin_scheme;
use crate::digraph::Digraph;
use crate::scheme::instantiate;
use crate::semantics::{CompiledFormula, Environment};
use crate::syntax::{NewVar, Variable};

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Parameter `k` of a shortcut is instantiated by the set variable `x_{k + 100}`.
const ARGUMENT_OFFSET: usize = 100;

/// The expansions `E_1 ... E_9` instantiated at fresh set variables and compiled.
pub struct ExpansionOracle {
    formulas: Vec<(CompiledFormula, Vec<Variable>)>,
}

impl ExpansionOracle {
    pub fn new() -> Self {
        let scheme = builtin_scheme();
        let formulas = Predicate::ALL
            .iter()
            .map(|p| {
                let shortcut = &scheme.shortcuts()[p.index() - 1];
                let args: Vec<Variable> = (1..=p.arity())
                    .map(|k| Variable::Set(ARGUMENT_OFFSET + k))
                    .collect();
                let renaming: Vec<(NewVar, Variable)> = shortcut
                    .params
                    .iter()
                    .copied()
                    .zip(args.iter().copied())
                    .collect();
                let expansion = scheme
                    .expansion(p.name())
                    .expect("every predicate is in the scheme");
                let formula =
                    instantiate(expansion, &renaming).expect("parameters cover the expansion");
                (
                    CompiledFormula::compile(&formula).expect("expansions are predicate-free"),
                    args,
                )
            })
            .collect();
        ExpansionOracle { formulas }
    }

    /// `D |= P(args)` through the expansion of `P`.
    pub fn eval(&self, d: &Digraph, predicate: Predicate, args: &[usize]) -> bool {
        let (formula, vars) = &self.formulas[predicate.index() - 1];
        assert_eq!(args.len(), vars.len(), "arity of {predicate}");
        let env: Environment = vars.iter().copied().zip(args.iter().copied()).collect();
        formula
            .eval(d, &env)
            .expect("arguments bind every free variable")
    }
}

impl Default for ExpansionOracle {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub digraph: Digraph,
    pub predicate: Predicate,
    pub args: Vec<usize>,
    pub semantic: bool,
    pub expansion: bool,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{:?}: semantic {} expansion {} on {:?}",
            self.predicate, self.args, self.semantic, self.expansion, self.digraph
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct CrosscheckReport {
    pub checked: u64,
    pub mismatches: Vec<Mismatch>,
}

impl CrosscheckReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn record(
        &mut self,
        oracle: &ExpansionOracle,
        a: &Analyzer,
        predicate: Predicate,
        args: &[usize],
    ) {
        let semantic = a
            .semantic_predicate(predicate, args)
            .expect("arguments are in range");
        let expansion = oracle.eval(a.digraph(), predicate, args);
        self.checked += 1;
        if semantic != expansion {
            self.mismatches.push(Mismatch {
                digraph: a.digraph().clone(),
                predicate,
                args: args.to_vec(),
                semantic,
                expansion,
            });
        }
    }
}

/// All argument tuples of length `arity` over `[n]`.
pub fn tuples(n: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.pow(arity as u32)).map(move |mut i| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = i % n + 1;
            i /= n;
        }
        t
    })
}

/// Every digraph on `[n]`, every listed predicate, every argument tuple.
pub fn crosscheck_exhaustive(
    oracle: &ExpansionOracle,
    n: usize,
    predicates: &[Predicate],
) -> CrosscheckReport {
    let mut report = CrosscheckReport::default();
    for code in 0..1u64 << (n * n) {
        let d = Digraph::from_code(n, code).expect("n >= 1");
        let a = Analyzer::new(&d);
        for &p in predicates {
            for args in tuples(n, p.arity()) {
                report.record(oracle, &a, p, &args);
            }
        }
    }
    report
}

/// Every digraph on `[n]`, with `samples` seeded random argument tuples per
/// digraph and predicate.
pub fn crosscheck_sampled(
    oracle: &ExpansionOracle,
    n: usize,
    predicates: &[Predicate],
    samples: usize,
    seed: u64,
) -> CrosscheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CrosscheckReport::default();
    for code in 0..1u64 << (n * n) {
        let d = Digraph::from_code(n, code).expect("n >= 1");
        let a = Analyzer::new(&d);
        for &p in predicates {
            for _ in 0..samples {
                let args: Vec<usize> = (0..p.arity()).map(|_| rng.gen_range(1..=n)).collect();
                report.record(oracle, &a, p, &args);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_listing() {
        let t: Vec<_> = tuples(2, 2).collect();
        assert_eq!(t, vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
        assert_eq!(tuples(3, 3).count(), 27);
    }

    #[test]
    fn one_and_two_vertices_agree() {
        let oracle = ExpansionOracle::new();
        for n in [1, 2] {
            let r = crosscheck_exhaustive(&oracle, n, &Predicate::ALL);
            assert!(r.is_clean(), "{}", r.mismatches[0]);
        }
    }

    #[test]
    fn sampling_is_seeded() {
        let oracle = ExpansionOracle::new();
        let a = crosscheck_sampled(&oracle, 2, &[Predicate::Sus], 5, 7);
        assert_eq!(a.checked, 16 * 5);
        assert!(a.is_clean());
    }
}

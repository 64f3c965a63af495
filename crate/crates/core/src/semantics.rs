//! The satisfaction relation `D |=_f u` on finite digraphs.
//!
//! A formula is compiled once into a tree over variable slots and can then be
//! evaluated on any number of digraphs. Quantifiers short-circuit.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::digraph::Digraph;
use crate::syntax::{is_sentence, Connective, Formula, FormulaKind, Quantifier, Variable};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable {0} is free in the formula but not bound by the environment")]
    UnboundVariable(Variable),
    #[error("predicate {0} must be expanded before evaluation")]
    PredicateNotExpanded(String),
    #[error("the formula has free variables")]
    NotASentence,
    #[error("{variable} is bound to {vertex}, outside 1..={n}")]
    VertexOutOfRange {
        variable: Variable,
        vertex: usize,
        n: usize,
    },
    #[error("bad assignment `{0}`; expected e.g. `x1=3,?x=2`")]
    BadAssignment(String),
}

/// A finite realization of variables by vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Environment(BTreeMap<Variable, usize>);

impl Environment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, variable: Variable, vertex: usize) -> &mut Self {
        self.0.insert(variable, vertex);
        self
    }

    pub fn with(mut self, variable: Variable, vertex: usize) -> Self {
        self.bind(variable, vertex);
        self
    }

    pub fn get(&self, variable: Variable) -> Option<usize> {
        self.0.get(&variable).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Variable, usize)> + '_ {
        self.0.iter().map(|(&v, &u)| (v, u))
    }
}

impl FromIterator<(Variable, usize)> for Environment {
    fn from_iter<I: IntoIterator<Item = (Variable, usize)>>(iter: I) -> Self {
        Environment(iter.into_iter().collect())
    }
}

/// Parses `x1=3,?x=2`. The empty string is the empty environment.
impl FromStr for Environment {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut env = Environment::new();
        for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let bad = || EvalError::BadAssignment(item.to_string());
            let (var, vertex) = item.split_once('=').ok_or_else(bad)?;
            let var: Variable = var.trim().parse().map_err(|_| bad())?;
            let vertex: usize = vertex.trim().parse().map_err(|_| bad())?;
            env.bind(var, vertex);
        }
        Ok(env)
    }
}

impl fmt::Display for Environment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, u)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}={u}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EvalOptions {
    /// Cache quantified subformulas by the values of their free variables.
    /// The cache lives for one evaluation call.
    pub memoize: bool,
}

#[derive(Clone, Debug)]
enum Node {
    Member(usize, usize),
    Equal(usize, usize),
    Not(Box<Node>),
    Binary(Connective, Box<Node>, Box<Node>),
    Quantified {
        quantifier: Quantifier,
        slot: usize,
        body: Box<Node>,
        cache: usize,
        key: Vec<usize>,
    },
}

/// A predicate-free formula compiled for repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledFormula {
    root: Node,
    slots: Vec<Variable>,
    free: Vec<usize>,
    caches: usize,
    sentence: bool,
}

impl CompiledFormula {
    pub fn compile(tree: &Formula) -> Result<Self, EvalError> {
        if let Some((name, _, _)) = tree.predicate_atoms().first() {
            return Err(EvalError::PredicateNotExpanded(name.to_string()));
        }
        let mut slots = Vec::new();
        let mut caches = 0;
        let root = compile_node(tree, &mut slots, &mut caches);
        let free = tree
            .free_variables()
            .into_iter()
            .map(|v| slot_of(&mut slots, v))
            .collect();
        Ok(CompiledFormula {
            root,
            slots,
            free,
            caches,
            sentence: is_sentence(tree),
        })
    }

    pub fn is_sentence(&self) -> bool {
        self.sentence
    }

    /// The free variables, which the environment must bind.
    pub fn free_variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.free.iter().map(|&s| self.slots[s])
    }

    pub fn eval(&self, d: &Digraph, env: &Environment) -> Result<bool, EvalError> {
        self.eval_with(d, env, EvalOptions::default())
    }

    pub fn eval_with(
        &self,
        d: &Digraph,
        env: &Environment,
        options: EvalOptions,
    ) -> Result<bool, EvalError> {
        let mut values = vec![0; self.slots.len()];
        for &s in &self.free {
            let variable = self.slots[s];
            let vertex = env
                .get(variable)
                .ok_or(EvalError::UnboundVariable(variable))?;
            if !d.contains(vertex) {
                return Err(EvalError::VertexOutOfRange {
                    variable,
                    vertex,
                    n: d.order(),
                });
            }
            values[s] = vertex;
        }
        let mut state = State {
            d,
            values,
            caches: options.memoize.then(|| vec![HashMap::new(); self.caches]),
        };
        Ok(state.eval(&self.root))
    }

    pub fn eval_sentence(&self, d: &Digraph) -> Result<bool, EvalError> {
        self.eval_sentence_with(d, EvalOptions::default())
    }

    pub fn eval_sentence_with(&self, d: &Digraph, options: EvalOptions) -> Result<bool, EvalError> {
        if !self.sentence {
            return Err(EvalError::NotASentence);
        }
        self.eval_with(d, &Environment::new(), options)
    }
}

fn slot_of(slots: &mut Vec<Variable>, v: Variable) -> usize {
    slots.iter().position(|&w| w == v).unwrap_or_else(|| {
        slots.push(v);
        slots.len() - 1
    })
}

fn compile_node(tree: &Formula, slots: &mut Vec<Variable>, caches: &mut usize) -> Node {
    match tree.kind() {
        FormulaKind::Member(a, b) => Node::Member(slot_of(slots, *a), slot_of(slots, *b)),
        FormulaKind::Equal(a, b) => Node::Equal(slot_of(slots, *a), slot_of(slots, *b)),
        FormulaKind::Predicate { .. } => unreachable!("predicates are rejected before compiling"),
        FormulaKind::Not(inner) => Node::Not(Box::new(compile_node(inner, slots, caches))),
        FormulaKind::Binary {
            connective,
            left,
            right,
        } => Node::Binary(
            *connective,
            Box::new(compile_node(left, slots, caches)),
            Box::new(compile_node(right, slots, caches)),
        ),
        FormulaKind::Quantified {
            quantifier,
            variable,
            body,
        } => {
            let slot = slot_of(slots, Variable::Set(*variable));
            let body = Box::new(compile_node(body, slots, caches));
            let key = tree
                .free_variables()
                .into_iter()
                .map(|v| slot_of(slots, v))
                .collect();
            *caches += 1;
            Node::Quantified {
                quantifier: *quantifier,
                slot,
                body,
                cache: *caches - 1,
                key,
            }
        }
    }
}

struct State<'a> {
    d: &'a Digraph,
    values: Vec<usize>,
    caches: Option<Vec<HashMap<Vec<usize>, bool>>>,
}

impl State<'_> {
    fn eval(&mut self, node: &Node) -> bool {
        match node {
            Node::Member(a, b) => self.d.has_arrow(self.values[*a], self.values[*b]),
            Node::Equal(a, b) => self.values[*a] == self.values[*b],
            Node::Not(inner) => !self.eval(inner),
            Node::Binary(c, left, right) => {
                let l = self.eval(left);
                match c {
                    Connective::And => l && self.eval(right),
                    Connective::Or => l || self.eval(right),
                    Connective::Implies => !l || self.eval(right),
                    Connective::Iff => l == self.eval(right),
                }
            }
            Node::Quantified {
                quantifier,
                slot,
                body,
                cache,
                key,
            } => {
                let key = match &self.caches {
                    Some(caches) => {
                        let key: Vec<usize> = key.iter().map(|&s| self.values[s]).collect();
                        if let Some(&hit) = caches[*cache].get(&key) {
                            return hit;
                        }
                        Some(key)
                    }
                    None => None,
                };
                let saved = self.values[*slot];
                let want = *quantifier == Quantifier::Exists;
                let mut result = !want;
                for v in self.d.vertices() {
                    self.values[*slot] = v;
                    if self.eval(body) == want {
                        result = want;
                        break;
                    }
                }
                self.values[*slot] = saved;
                if let (Some(caches), Some(key)) = (&mut self.caches, key) {
                    caches[*cache].insert(key, result);
                }
                result
            }
        }
    }
}

/// `D |=_env tree`.
pub fn eval(d: &Digraph, tree: &Formula, env: &Environment) -> Result<bool, EvalError> {
    CompiledFormula::compile(tree)?.eval(d, env)
}

/// Truth of a sentence, which does not depend on the environment.
pub fn eval_sentence(d: &Digraph, tree: &Formula) -> Result<bool, EvalError> {
    CompiledFormula::compile(tree)?.eval_sentence(d)
}

//! The `zf-cantor` command line.
//!
//! Exit codes: 0 on success or a true verdict, 1 on a false verdict or
//! invalid input, 2 on usage and I/O errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};

use crate::analysis::{
    cantor_witness, is_cantor, omega_prefix, unrealized_subset, Analyzer, CantorMethod, Predicate,
};
use crate::cantor::{builtin_scheme, emit_expansions, emit_phi, PHI_LENGTH, PHI_NEGATIONS};
use crate::census::{census_with, CensusConfig, DEFAULT_MAX_N, HARD_MAX_N};
use crate::crosscheck::{crosscheck_exhaustive, crosscheck_sampled, ExpansionOracle, DEFAULT_SEED};
use crate::digraph::{load_digraph_reporting, Digraph};
use crate::scheme::{Scheme, SchemeMode};
use crate::semantics::{CompiledFormula, Environment, EvalOptions};
use crate::syntax::{classify, is_sentence, parse_text, parse_zf, Formula, Reading, Symbol};

#[derive(Parser, Debug)]
#[command(
    name = "zf-cantor",
    version,
    about = "ZF formulas, abbreviation schemes and Cantor digraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a formula and print it with its length and negation count.
    Parse {
        #[command(flatten)]
        formula: FormulaInput,
        #[command(flatten)]
        scheme: SchemeInput,
        /// Reject new variables and predicates.
        #[arg(long)]
        zf: bool,
    },
    /// Print the top-level case of a formula and its constituents.
    Classify {
        #[command(flatten)]
        formula: FormulaInput,
        #[command(flatten)]
        scheme: SchemeInput,
    },
    /// Validate a scheme and print its expansions.
    ExpandScheme {
        #[arg(long, value_name = "FILE")]
        scheme: PathBuf,
        #[arg(long, default_value = "strict")]
        mode: SchemeMode,
    },
    /// Print the expansions of the built-in scheme.
    EmitExpansions {
        #[arg(long)]
        check_lengths: bool,
    },
    /// Print the Cantor sentence.
    EmitPhi {
        #[arg(long)]
        check_lengths: bool,
    },
    /// Evaluate a formula on a digraph; predicates are expanded first.
    Eval {
        #[command(flatten)]
        digraph: DigraphInput,
        #[command(flatten)]
        formula: FormulaInput,
        #[command(flatten)]
        scheme: SchemeInput,
        /// Variable assignment, e.g. `x1=3,x2=1,?x=2`.
        #[arg(long, default_value = "")]
        assign: String,
        #[arg(long)]
        memoize: bool,
    },
    /// Decide whether no vertex is a D-surjection onto a D-power set.
    IsCantor {
        #[command(flatten)]
        digraph: DigraphInput,
        #[arg(long, default_value = "semantic")]
        method: CantorMethod,
    },
    /// Decide whether every subset of every in-neighborhood is an in-neighborhood.
    IsStronglyExtensive {
        #[command(flatten)]
        digraph: DigraphInput,
    },
    /// Print the function encoded by a D-surjection.
    ExtractSurjection {
        #[command(flatten)]
        digraph: DigraphInput,
        /// The surjection vertex; defaults to the first one found.
        #[arg(long, requires = "v")]
        u: Option<usize>,
        /// The vertex whose in-neighbors form the domain.
        #[arg(long, requires = "u")]
        v: Option<usize>,
    },
    /// Print a finite prefix of the countable strongly extensive digraph.
    Omega {
        #[arg(long, default_value_t = 3)]
        levels: usize,
    },
    /// Count strongly extensive and Cantor digraphs on [n].
    Census {
        /// Single n; without it, every n from 1 to 4.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value = "semantic")]
        method: CantorMethod,
        /// Print every non-Cantor digraph after its row.
        #[arg(long)]
        list_witnesses: bool,
        /// Permit n = 5 (2^25 digraphs).
        #[arg(long)]
        allow_n5: bool,
    },
    /// Compare the nine graph-theoretic predicates with their expansions.
    Crosscheck {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Random argument tuples per digraph for REL, FUN and SUR.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct FormulaInput {
    /// Formula file; `-` or absent reads standard input.
    #[arg(long, value_name = "FILE", conflicts_with = "expr")]
    formula: Option<PathBuf>,
    /// Formula text given inline.
    #[arg(long)]
    expr: Option<String>,
}

#[derive(Args, Debug)]
struct SchemeInput {
    /// Scheme whose predicates may appear; defaults to the built-in one.
    #[arg(long, value_name = "FILE")]
    scheme: Option<PathBuf>,
    #[arg(long, default_value = "strict")]
    mode: SchemeMode,
}

#[derive(Args, Debug)]
struct DigraphInput {
    /// Digraph file; `-` reads standard input.
    #[arg(long, value_name = "FILE")]
    digraph: PathBuf,
}

enum Failure {
    /// A false verdict or invalid input.
    Invalid(anyhow::Error),
    /// Usage or I/O.
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Invalid(e)
    }
}

type Outcome = Result<bool, Failure>;

fn read_input(path: Option<&PathBuf>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = fs::read_to_string(p)
                .with_context(|| format!("cannot read {}", p.display()))
                .map_err(Failure::Usage)?;
        }
        _ => {
            io::stdin()
                .read_to_string(&mut text)
                .context("cannot read standard input")
                .map_err(Failure::Usage)?;
        }
    }
    Ok(text)
}

fn load_scheme(input: &SchemeInput) -> Result<Scheme, Failure> {
    match &input.scheme {
        None => Ok(builtin_scheme().clone()),
        Some(p) => {
            let text = read_input(Some(p))?;
            Ok(Scheme::from_text(&text, input.mode)
                .with_context(|| format!("scheme {}", p.display()))?)
        }
    }
}

fn load_formula(input: &FormulaInput, scheme: &Scheme) -> Result<Formula, Failure> {
    let text = match &input.expr {
        Some(t) => t.clone(),
        None => read_input(input.formula.as_ref())?,
    };
    Ok(parse_text(&text, &scheme.signatures()).context("formula")?)
}

fn load_digraph(input: &DigraphInput, err: &mut dyn Write) -> Result<Digraph, Failure> {
    let text = read_input(Some(&input.digraph))?;
    let (d, duplicates) = load_digraph_reporting(&text)
        .context("digraph")
        .map_err(Failure::Usage)?;
    for (u, v) in duplicates {
        let _ = writeln!(err, "warning: duplicate arrow {u} {v} ignored");
    }
    Ok(d)
}

fn annotated(f: &Formula) -> String {
    format!(
        "{f} # length={} neg={}",
        f.len(),
        f.count(&Symbol::Negation)
    )
}

fn verdict(out: &mut dyn Write, check: &str, value: bool) -> io::Result<()> {
    writeln!(out, "{check} {value}")
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let io = |e: io::Error| Failure::Usage(e.into());
    match command {
        Command::Parse {
            formula,
            scheme,
            zf,
        } => {
            let scheme = load_scheme(&scheme)?;
            let f = load_formula(&formula, &scheme)?;
            if zf {
                parse_zf(&f.to_word()).context("not a ZF formula")?;
            }
            writeln!(out, "{}", annotated(&f)).map_err(io)?;
            Ok(true)
        }
        Command::Classify { formula, scheme } => {
            let scheme = load_scheme(&scheme)?;
            let f = load_formula(&formula, &scheme)?;
            let reading = classify(&f);
            writeln!(out, "{}", reading.case()).map_err(io)?;
            match reading {
                Reading::Atomic(a) => writeln!(out, "atom {a}"),
                Reading::Negation(b) => writeln!(out, "body {}", b.span()),
                Reading::Binary { left, right, .. } => {
                    writeln!(out, "left {}\nright {}", left.span(), right.span())
                }
                Reading::Quantified { variable, body, .. } => {
                    writeln!(out, "variable x{variable}\nbody {}", body.span())
                }
            }
            .map_err(io)?;
            writeln!(out, "sentence {}", is_sentence(&f)).map_err(io)?;
            Ok(true)
        }
        Command::ExpandScheme { scheme, mode } => {
            let text = read_input(Some(&scheme))?;
            let s = Scheme::from_text(&text, mode)
                .with_context(|| format!("scheme {}", scheme.display()))?;
            for (i, (sc, e)) in s.shortcuts().iter().zip(s.expansions()).enumerate() {
                let set = |xs: &std::collections::BTreeSet<usize>| {
                    xs.iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                };
                writeln!(
                    out,
                    "# {} R={{{}}} V={{{}}}\n{}",
                    sc.name(),
                    set(s.references(i)),
                    set(s.variables(i)),
                    annotated(e)
                )
                .map_err(io)?;
            }
            Ok(true)
        }
        Command::EmitExpansions { check_lengths } => {
            if check_lengths {
                emit_expansions().context("published lengths not reproduced")?;
            }
            for e in builtin_scheme().expansions() {
                writeln!(out, "{}", annotated(e)).map_err(io)?;
            }
            Ok(true)
        }
        Command::EmitPhi { check_lengths } => {
            let phi = emit_phi();
            if check_lengths {
                let neg = phi.count(&Symbol::Negation);
                if phi.len() != PHI_LENGTH || neg != PHI_NEGATIONS || !is_sentence(&phi) {
                    return Err(anyhow!(
                        "expected a sentence with length={PHI_LENGTH} neg={PHI_NEGATIONS}, got length={} neg={neg}",
                        phi.len()
                    )
                    .into());
                }
            }
            writeln!(out, "{}", annotated(&phi)).map_err(io)?;
            Ok(true)
        }
        Command::Eval {
            digraph,
            formula,
            scheme,
            assign,
            memoize,
        } => {
            // a bad formula is a usage error here, not a verdict
            let as_usage = |e: Failure| match e {
                Failure::Invalid(e) => Failure::Usage(e),
                usage => usage,
            };
            let scheme = load_scheme(&scheme).map_err(as_usage)?;
            let f = load_formula(&formula, &scheme).map_err(as_usage)?;
            let f = scheme
                .expand(&f)
                .context("expanding predicates")
                .map_err(Failure::Usage)?;
            let d = load_digraph(&digraph, err)?;
            let env: Environment = assign
                .parse()
                .map_err(|e| Failure::Usage(anyhow::Error::from(e)))?;
            let value = CompiledFormula::compile(&f)
                .and_then(|c| c.eval_with(&d, &env, EvalOptions { memoize }))
                .context("eval")
                .map_err(Failure::Usage)?;
            verdict(out, "eval", value).map_err(io)?;
            Ok(value)
        }
        Command::IsCantor { digraph, method } => {
            let d = load_digraph(&digraph, err)?;
            let value = is_cantor(&d, method);
            verdict(out, "is-cantor", value).map_err(io)?;
            if let Some((u, v)) = cantor_witness(&d) {
                writeln!(out, "witness u={u} v={v}").map_err(io)?;
            }
            Ok(value)
        }
        Command::IsStronglyExtensive { digraph } => {
            let d = load_digraph(&digraph, err)?;
            let gap = unrealized_subset(&d);
            verdict(out, "is-strongly-extensive", gap.is_none()).map_err(io)?;
            if let Some((u, subset)) = &gap {
                let subset: Vec<String> = subset.iter().map(usize::to_string).collect();
                writeln!(out, "witness u={u} missing={{{}}}", subset.join(",")).map_err(io)?;
            }
            Ok(gap.is_none())
        }
        Command::ExtractSurjection { digraph, u, v } => {
            let d = load_digraph(&digraph, err)?;
            let a = Analyzer::new(&d);
            let (u, v) = match (u, v) {
                (Some(u), Some(v)) => (u, v),
                _ => match a.cantor_witness() {
                    Some((domain, function)) => (function, domain),
                    None => {
                        verdict(out, "extract-surjection", false).map_err(io)?;
                        return Ok(false);
                    }
                },
            };
            match a.extract_surjection(u, v) {
                Ok(w) => {
                    writeln!(out, "{w}").map_err(io)?;
                    Ok(true)
                }
                Err(e) => {
                    verdict(out, "extract-surjection", false).map_err(io)?;
                    writeln!(err, "{e}").map_err(io)?;
                    Ok(false)
                }
            }
        }
        Command::Omega { levels } => {
            let d = omega_prefix(levels).map_err(|e| Failure::Usage(e.into()))?;
            writeln!(out, "# omega prefix, {levels} levels").map_err(io)?;
            write!(out, "{d}").map_err(io)?;
            Ok(true)
        }
        Command::Census {
            n,
            jobs,
            method,
            list_witnesses,
            allow_n5,
        } => {
            let config = CensusConfig {
                jobs,
                method,
                max_n: if allow_n5 { HARD_MAX_N } else { DEFAULT_MAX_N },
                list_witnesses,
            };
            let ns: Vec<usize> = match n {
                Some(n) => vec![n],
                None => (1..=DEFAULT_MAX_N).collect(),
            };
            let mut clean = true;
            for n in ns {
                let row = census_with(n, &config).map_err(|e| Failure::Usage(e.into()))?;
                writeln!(out, "{row}").map_err(io)?;
                for code in &row.violations {
                    clean = false;
                    writeln!(
                        err,
                        "violation: n={n} code={code} is strongly extensive but not Cantor"
                    )
                    .map_err(io)?;
                }
                for (code, d) in row.witnesses.iter().zip(row.witness_digraphs()) {
                    write!(out, "# n={n} code={code}\n{d}").map_err(io)?;
                }
            }
            Ok(clean)
        }
        Command::Crosscheck { n, samples, seed } => {
            if !(1..=3).contains(&n) {
                return Err(Failure::Usage(anyhow!("crosscheck supports 1 <= n <= 3")));
            }
            let oracle = ExpansionOracle::new();
            let mut report = crosscheck_exhaustive(&oracle, n, &Predicate::ALL);
            if samples > 0 {
                let sampled = crosscheck_sampled(
                    &oracle,
                    n,
                    &[Predicate::Rel, Predicate::Fun, Predicate::Sur],
                    samples,
                    seed,
                );
                report.checked += sampled.checked;
                report.mismatches.extend(sampled.mismatches);
            }
            verdict(out, "crosscheck", report.is_clean()).map_err(io)?;
            writeln!(out, "checked {}", report.checked).map_err(io)?;
            for m in &report.mismatches {
                writeln!(out, "mismatch {m}").map_err(io)?;
            }
            Ok(report.is_clean())
        }
    }
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Invalid(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
        Err(Failure::Usage(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

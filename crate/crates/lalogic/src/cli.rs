//! Argument parsing and the subcommands. Every command yields an
//! [`Outcome`]; [`run`] prints it and maps it to an exit code.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use lalogic_core::automata::{build_with, AutomatonError, DEFAULT_MAX_STATES};
use lalogic_core::decide::{decide_equivalence_with, decide_validity_with, pipeline, Class, DecideError, Equiv, Options, Witness};
use lalogic_core::proofs::{check_derivation, parse_derivation, System};
use lalogic_core::semantics::{
    bounded_counterexample_budget, eval_formula, eval_term, first_difference, word_to_string, LangKind, StructClass,
};
use lalogic_core::syntax::{
    classify_fragment, parse_formula_with, parse_term_with, parse_with, sym, Expr, Formula, FreeVars, Mode,
    ParseOptions, Sugar,
};

use crate::structfile::{parse_structure, render_structure};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "lalogic", version, about = "Decide, evaluate and check proofs for regexes with lookahead and PDL")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Cap on automaton states, macro-states or enumerated structures.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Print a witness when the property fails.
    #[arg(long, global = true)]
    pub witness: bool,
    /// Read terms with regex sugar: juxtaposition, `|`, `(?=..)`, `(?!..)`.
    #[arg(long, global = true)]
    pub regex: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Match,
    Lang,
    SubstMatch,
    SubstLang,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Finlin,
    Stfinlin,
    RelPdl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleClass {
    Finlin,
    Stfinlin,
    Preorder,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LangArg {
    Match,
    Lang,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and pretty-print an expression with its size and fragment.
    Parse {
        expr: String,
        #[arg(long, conflicts_with = "formula")]
        term: bool,
        #[arg(long)]
        formula: bool,
    },
    /// Evaluate a term or formula on a structure file.
    Eval { structure: PathBuf, expr: String },
    /// Decide one of the four term equivalences.
    Equiv {
        #[arg(long, value_enum, default_value_t = ModeArg::Match)]
        mode: ModeArg,
        s: String,
        t: String,
    },
    /// Decide validity of a formula on a class of structures.
    Valid {
        #[arg(long, value_enum, default_value_t = ClassArg::Finlin)]
        class: ClassArg,
        formula: String,
    },
    /// Brute force: a countermodel to one formula, or a word separating two terms.
    Oracle {
        #[arg(required = true, num_args = 1..=2)]
        exprs: Vec<String>,
        #[arg(long, value_enum, default_value_t = OracleClass::Finlin)]
        class: OracleClass,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t = LangArg::Match)]
        kind: LangArg,
    },
    /// Dump the automaton checked for emptiness when deciding validity.
    Automaton {
        #[arg(long, value_enum, default_value_t = ClassArg::Finlin)]
        class: ClassArg,
        /// Build from the formula as given (it must use `S$` only).
        #[arg(long)]
        raw: bool,
        formula: String,
    },
    /// Check a derivation file.
    ProveCheck {
        file: PathBuf,
        /// Overrides the file's `system` line.
        #[arg(long)]
        system: Option<String>,
        /// Overrides the file's `goal` line.
        #[arg(long)]
        goal: Option<String>,
    },
}

/// What a command reports: an exit code, a JSON object, the same in text,
/// and statistics for stderr.
pub struct Outcome {
    pub code: i32,
    pub json: Map<String, Value>,
    pub text: String,
    pub stats: BTreeMap<String, usize>,
}

impl Outcome {
    fn new(code: i32, text: String) -> Outcome {
        Outcome { code, json: Map::new(), text, stats: BTreeMap::new() }
    }

    fn with(mut self, key: &str, v: Value) -> Outcome {
        self.json.insert(key.to_string(), v);
        self
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

fn usage(msg: impl ToString) -> Failure {
    Failure { code: EXIT_ERROR, msg: msg.to_string() }
}

impl From<DecideError> for Failure {
    fn from(e: DecideError) -> Failure {
        let code = if matches!(e, DecideError::Budget(_)) { EXIT_BUDGET } else { EXIT_ERROR };
        Failure { code, msg: e.to_string() }
    }
}

impl From<AutomatonError> for Failure {
    fn from(e: AutomatonError) -> Failure {
        let code = if matches!(e, AutomatonError::Unsupported(_)) { EXIT_ERROR } else { EXIT_BUDGET };
        Failure { code, msg: e.to_string() }
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// report. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_HOLDS };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let json = cli.format == Format::Json;
    match execute(&cli) {
        Ok(o) => {
            if json {
                let _ = writeln!(out, "{}", Value::Object(o.json));
                if !o.stats.is_empty() {
                    let _ = writeln!(err, "{}", json!({ "stats": o.stats }));
                }
            } else {
                let _ = write!(out, "{}", o.text);
                for (k, v) in &o.stats {
                    let _ = writeln!(err, "{k}: {v}");
                }
            }
            o.code
        }
        Err(f) => {
            if json {
                let _ = writeln!(out, "{}", json!({ "error": f.msg, "exit": f.code }));
            }
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let popts = ParseOptions { sugar: if cli.regex { Sugar::Regex } else { Sugar::Plain }, ..ParseOptions::default() };
    let term = |s: &str| parse_term_with(s, &popts).map_err(|e| usage(format!("`{s}`: {e}")));
    let formula = |s: &str| parse_formula_with(s, &popts).map_err(|e| usage(format!("`{s}`: {e}")));
    let mut dopts = Options { witness: cli.witness, ..Options::default() };
    if let Some(b) = cli.budget {
        dopts.max_states = b;
        dopts.macro_budget = b;
    }
    match &cli.command {
        Command::Parse { expr, term: t, formula: f } => {
            let e = if *t {
                parse_with(expr, Mode::Term, &popts)
            } else if *f {
                parse_with(expr, Mode::Formula, &popts)
            } else {
                parse_with(expr, Mode::Formula, &popts).or_else(|_| parse_with(expr, Mode::Term, &popts))
            }
            .map_err(|e| usage(format!("`{expr}`: {e}")))?;
            let (kind, shown, size) = match &e {
                Expr::Term(t) => ("term", t.to_string(), t.size()),
                Expr::Formula(f) => ("formula", f.to_string(), f.size()),
            };
            let frag = format!("{:?}", classify_fragment(&e));
            Ok(Outcome::new(EXIT_HOLDS, format!("{shown}\n{kind}, size {size}, fragment {frag}\n"))
                .with("kind", json!(kind))
                .with("expr", json!(shown))
                .with("size", json!(size))
                .with("fragment", json!(frag)))
        }
        Command::Eval { structure, expr } => {
            let text = std::fs::read_to_string(structure).map_err(|e| usage(format!("{}: {e}", structure.display())))?;
            let s = parse_structure(&text).map_err(|e| usage(format!("{}: {e}", structure.display())))?;
            match parse_formula_with(expr, &popts) {
                Ok(f) => {
                    let set = eval_formula(&s, &f).map_err(usage)?;
                    let pts: Vec<usize> = set.iter().collect();
                    let everywhere = pts.len() == s.size;
                    let shown: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
                    let code = if everywhere { EXIT_HOLDS } else { EXIT_FAILS };
                    Ok(Outcome::new(code, format!("{{{}}}\n", shown.join(", ")))
                        .with("kind", json!("formula"))
                        .with("points", json!(pts))
                        .with("holds", json!(everywhere)))
                }
                Err(_) => {
                    let t = term(expr)?;
                    let r = eval_term(&s, &t).map_err(usage)?;
                    let pairs: Vec<(usize, usize)> = r.pairs().collect();
                    let shown: Vec<String> = pairs.iter().map(|(i, j)| format!("({i},{j})")).collect();
                    Ok(Outcome::new(EXIT_HOLDS, format!("{{{}}}\n", shown.join(", ")))
                        .with("kind", json!("term"))
                        .with("pairs", json!(pairs)))
                }
            }
        }
        Command::Equiv { mode, s, t } => {
            let m = match mode {
                ModeArg::Match => Equiv::Match,
                ModeArg::Lang => Equiv::Lang,
                ModeArg::SubstMatch => Equiv::SubstMatch,
                ModeArg::SubstLang => Equiv::SubstLang,
            };
            let r = decide_equivalence_with(m, &term(s)?, &term(t)?, &dopts)?;
            let verdict = if r.holds { "equivalent" } else { "not equivalent" };
            let mut o = verdict_outcome(r.holds, verdict, r.witness.as_ref(), cli.witness).with("mode", json!(m.name()));
            o.stats = r.stats;
            Ok(o)
        }
        Command::Valid { class, formula: f } => {
            let r = decide_validity_with(&formula(f)?, class_of(*class), &dopts)?;
            let verdict = if r.holds { "valid" } else { "not valid" };
            let mut o =
                verdict_outcome(r.holds, verdict, r.witness.as_ref(), cli.witness).with("class", json!(class_of(*class).name()));
            o.stats = r.stats;
            Ok(o)
        }
        Command::Oracle { exprs, class, max_size, max_len, kind } => {
            if let [e] = exprs.as_slice() {
                let f = formula(e)?;
                let c = match class {
                    OracleClass::Finlin => StructClass::FinLin,
                    OracleClass::Stfinlin => StructClass::StFinLin,
                    OracleClass::Preorder => StructClass::Preorder,
                };
                let found = bounded_counterexample_budget(&f, c, *max_size, cli.budget.map(|b| b as u64))
                    .map_err(|e| Failure { code: EXIT_BUDGET, msg: e.to_string() })?;
                let o = match found {
                    None => Outcome::new(EXIT_HOLDS, format!("no countermodel with at most {max_size} points\n")),
                    Some((s, v)) => Outcome::new(EXIT_FAILS, format!("countermodel at point {v}\n{}", render_structure(&s)))
                        .with("witness", witness_json(&Witness::Structure(s, v))),
                };
                let holds = o.code == EXIT_HOLDS;
                return Ok(o.with("holds", json!(holds)).with("max_size", json!(max_size)));
            }
            let (s, t) = (term(&exprs[0])?, term(&exprs[1])?);
            let mut fv = FreeVars::of_term(&s);
            fv.add_term(&t);
            let mut alphabet: Vec<_> = fv.terms.into_iter().collect();
            if alphabet.is_empty() {
                alphabet.push(sym("a"));
            }
            let k = if *kind == LangArg::Match { LangKind::Match } else { LangKind::Word };
            let o = match first_difference(&s, &t, &alphabet, *max_len, k) {
                None => Outcome::new(EXIT_HOLDS, format!("no difference on words of length at most {max_len}\n")),
                Some(w) => {
                    let wit = Witness::Word(w);
                    Outcome::new(EXIT_FAILS, witness_text(&wit)).with("witness", witness_json(&wit))
                }
            };
            let holds = o.code == EXIT_HOLDS;
            Ok(o.with("holds", json!(holds)).with("max_len", json!(max_len)))
        }
        Command::Automaton { class, raw, formula: f } => {
            let string = match class {
                ClassArg::RelPdl => return Err(usage("plain PDL is decided by type elimination, not by an automaton")),
                ClassArg::Finlin => false,
                ClassArg::Stfinlin => true,
            };
            let g = if *raw {
                parse_formula_with(f, &ParseOptions { allow_reserved: true, ..popts })
                    .map_err(|e| usage(format!("`{f}`: {e}")))?
            } else {
                pipeline(&formula(f)?, string)
            };
            let a = build_with(&g, if string { 1 } else { 2 }, cli.budget.unwrap_or(DEFAULT_MAX_STATES))?;
            let dump = a.dump();
            let mut o = Outcome::new(EXIT_HOLDS, dump.clone())
                .with("input", json!(g.to_string()))
                .with("dirs", json!(a.dirs()))
                .with("states", json!(a.num_states()))
                .with("dump", json!(dump));
            o.stats.insert("automaton.states".into(), a.num_states());
            o.stats.insert("automaton.closure".into(), a.closure_size());
            o.stats.insert("automaton.letters".into(), a.num_letters());
            Ok(o)
        }
        Command::ProveCheck { file, system, goal } => {
            let text = std::fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
            let d = parse_derivation(&text).map_err(|e| usage(format!("{}: {e}", file.display())))?;
            let sys = match system {
                Some(n) => System::from_name(n).ok_or_else(|| usage(format!("unknown system `{n}`")))?,
                None => d.system.ok_or_else(|| usage("no `system` line and no --system"))?,
            };
            let goal: Formula = match goal {
                Some(g) => parse_formula_with(g, &ParseOptions::reserved()).map_err(|e| usage(format!("`{g}`: {e}")))?,
                None => match (&d.goal, d.steps.last()) {
                    (Some(g), _) => g.clone(),
                    (None, Some(s)) => s.formula.clone(),
                    (None, None) => return Err(usage("empty derivation")),
                },
            };
            let r = check_derivation(&d.steps, sys, &goal);
            let (text, failure) = match &r.failure {
                None => ("accepted\n".to_string(), Value::Null),
                Some((i, why)) => {
                    let label = d.labels.get(*i).cloned().unwrap_or_else(|| "goal".into());
                    (format!("rejected at step {label}: {why}\n"), json!({ "step": label, "reason": why }))
                }
            };
            let code = if r.accepted { EXIT_HOLDS } else { EXIT_FAILS };
            let mut o = Outcome::new(code, text)
                .with("accepted", json!(r.accepted))
                .with("system", json!(sys.name()))
                .with("failure", failure);
            o.stats = r.stats;
            Ok(o)
        }
    }
}

fn class_of(c: ClassArg) -> Class {
    match c {
        ClassArg::Finlin => Class::FinLin,
        ClassArg::Stfinlin => Class::StFinLin,
        ClassArg::RelPdl => Class::RelPdl,
    }
}

fn verdict_outcome(holds: bool, verdict: &str, w: Option<&Witness>, show: bool) -> Outcome {
    let mut text = format!("{verdict}\n");
    let mut o = Outcome::new(if holds { EXIT_HOLDS } else { EXIT_FAILS }, String::new())
        .with("holds", json!(holds))
        .with("verdict", json!(verdict));
    if show && !holds {
        match w {
            Some(w) => {
                text.push_str(&witness_text(w));
                o = o.with("witness", witness_json(w));
            }
            None => {
                text.push_str("no witness found within the search bounds\n");
                o = o.with("witness", Value::Null);
            }
        }
    }
    o.text = text;
    o
}

pub fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Word((word, i, j)) => format!("witness word \"{}\" positions ({i},{j})\n", word_to_string(word)),
        Witness::Structure(s, v) => format!("countermodel at point {v}\n{}", render_structure(s)),
        Witness::Tree(t) => format!("accepted tree\n{}", t.render()),
    }
}

pub fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Word((word, i, j)) => json!({ "kind": "word", "word": word_to_string(word), "from": i, "to": j }),
        Witness::Structure(s, v) => json!({ "kind": "structure", "point": v, "structure": render_structure(s) }),
        Witness::Tree(t) => json!({ "kind": "tree", "tree": t.render() }),
    }
}


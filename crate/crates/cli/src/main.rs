//! `mcyl`: batch verification front end.
//!
//! Exit codes: 0 ok, 1 property violated or countermodel found, 2 input
//! error, 3 budget exceeded. Reports go to stdout as JSON, except `taut`,
//! which prints a verdict line.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use mcyl::demorgan::{AlgebraFile, ValidationReport};
use mcyl::laws::embed::{check_embed, check_iso};
use mcyl::laws::{
    check_boolean_identity_1, check_boolean_identity_2, check_mca_axioms, theorems, Budget,
    LawReport,
};
use mcyl::proof::build::{self, BuildError};
use mcyl::proof::json::{from_json_str, to_json};
use mcyl::proof::{Checker, LineError, Proof, Verdict};
use mcyl::semantics::{entails, EntailVerdict, MStructure, SearchBounds};
use mcyl::syntax::{parse, parse_infer};
use mcyl::truth::{decide, Order, TautOptions, TautVerdict, TruthError, DEFAULT_CAP};
use mcyl::{DeMorganAlgebra, ElemId, Exec, Formula, FullMAlgebra, Signature, DEFAULT_SEED};

#[derive(Parser)]
#[command(
    name = "mcyl",
    version,
    about = "De Morgan valued cylindric algebras and their logic"
)]
struct Cli {
    /// Seed for every sampled check
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Run enumeration kernels on one thread
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// De Morgan algebra files
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Law checks on M(B)
    #[command(subcommand)]
    Laws(LawsCmd),
    /// Decide whether a formula is a tautology
    Taut {
        formula: String,
        #[arg(long, default_value = "K3")]
        algebra: String,
        /// Maximum number of valuations
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[arg(long, value_enum, default_value_t = OrderArg::Low)]
        order: OrderArg,
    },
    /// Denotation of a formula in a structure
    Eval {
        #[arg(long)]
        structure: PathBuf,
        formula: String,
        /// Algebra file overriding the built-in named in the structure
        #[arg(long)]
        algebra: Option<String>,
        /// Also report Q-truth for these labels
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<String>>,
    },
    /// Bounded search for a countermodel to Σ ⊨ φ
    Models {
        /// One formula per line; blank lines and `#` comments are skipped
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = 2)]
        max_base: usize,
        #[arg(long, default_value = "K3")]
        algebra: String,
        /// Variables v0..v(d-1); defaults to one past the largest index used
        #[arg(long)]
        window: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<String>>,
        /// Structures drawn per base size when enumeration is out of reach
        #[arg(long, default_value_t = 1000)]
        samples: u64,
    },
    /// Proof files
    #[command(subcommand)]
    Proof(ProofCmd),
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Validate an algebra file (or a built-in name) against the axioms
    Check { file: String },
}

#[derive(Args)]
struct Carrier {
    #[arg(long, default_value = "K3")]
    algebra: String,
    /// Size of the base set U
    #[arg(long, default_value_t = 2)]
    base: usize,
    /// Dimension d of U^d
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Tuples drawn when a law is too large to enumerate
    #[arg(long)]
    samples: Option<u64>,
    /// Enumerate a law when it has at most this many cases
    #[arg(long)]
    exhaustive_limit: Option<u64>,
}

#[derive(Subcommand)]
enum LawsCmd {
    /// The 31 axioms
    Axioms(Carrier),
    /// The structure theorems (cylindrification, order, A*, dimension sets)
    Theorems(Carrier),
    /// The two Boolean identities on random families over a finite set
    Identities {
        #[arg(long, default_value = "K3")]
        algebra: String,
        #[arg(long, default_value_t = 4)]
        points: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
    /// M(B) embeds in M(c(M(B)))
    Embed(Carrier),
    /// c(M(B)) is isomorphic to B
    Iso(Carrier),
}

#[derive(Subcommand)]
enum ProofCmd {
    /// Check every line and report the earliest failure
    Check {
        file: PathBuf,
        #[arg(long, default_value = "K3")]
        algebra: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Emit one of the derived proofs
    Derive(Derive),
}

#[derive(Copy, Clone, ValueEnum)]
enum OrderArg {
    Low,
    High,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Theorem {
    A,
    B,
    C,
    D,
    E,
    F,
    Deduction,
}

#[derive(Args)]
struct Derive {
    theorem: Theorem,
    #[arg(long, default_value = "K3")]
    algebra: String,
    /// Formula parameter (a, e: the formula; deduction: the discharged sentence)
    #[arg(long)]
    phi: Option<String>,
    /// Variable index (a, c, d, e)
    #[arg(long)]
    k: Option<usize>,
    /// Input proofs (b, c, d: one; f: any number; deduction: the inner proof)
    #[arg(long)]
    proof: Vec<PathBuf>,
    /// Deduction: proof of G φ from the outer hypotheses
    #[arg(long)]
    gamma: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Budget(_) => 3,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

/// `Ok(true)`: nothing violated.
type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    let ctx = Ctx {
        seed: cli.seed,
        exec,
    };
    match ctx.run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            let (Failure::Input(msg) | Failure::Budget(msg)) = &f;
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}

struct Ctx {
    seed: u64,
    exec: Exec,
}

/// Writes a line to stdout. A closed pipe is not an error worth a panic.
fn out(line: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn emit<T: Serialize>(v: &T) {
    out(&serde_json::to_string_pretty(v).expect("reports serialize"));
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// A built-in name, or a path to an algebra file.
fn load_algebra(source: &str) -> Result<DeMorganAlgebra, Failure> {
    if let Ok(m) = DeMorganAlgebra::builtin(source) {
        return Ok(m);
    }
    let path = Path::new(source);
    if !path.exists() {
        return Err(Failure::Input(format!(
            "`{source}` is neither B2, K3, FOUR nor an algebra file"
        )));
    }
    let file: AlgebraFile = serde_json::from_str(&read(path)?).map_err(input)?;
    DeMorganAlgebra::from_tables(file.to_tables().map_err(input)?).map_err(input)
}

fn labels(m: &DeMorganAlgebra, q: &[String]) -> Result<Vec<ElemId>, Failure> {
    q.iter().map(|l| m.id_of(l).map_err(input)).collect()
}

fn window_for<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> usize {
    formulas
        .into_iter()
        .filter_map(Formula::max_var)
        .max()
        .map_or(1, |v| v + 1)
}

impl Ctx {
    fn announce_seed(&self) {
        eprintln!("seed: {}", self.seed);
    }

    fn run(&self, cmd: Command) -> Outcome {
        match cmd {
            Command::Algebra(AlgebraCmd::Check { file }) => algebra_check(&file),
            Command::Laws(cmd) => self.laws(cmd),
            Command::Taut {
                formula,
                algebra,
                cap,
                order,
            } => taut(&formula, &algebra, cap, order, self.exec),
            Command::Eval {
                structure,
                formula,
                algebra,
                q,
            } => eval(&structure, &formula, algebra.as_deref(), q),
            Command::Models {
                sigma,
                formula,
                max_base,
                algebra,
                window,
                q,
                samples,
            } => {
                self.announce_seed();
                let m = load_algebra(&algebra)?;
                let mut sig = Signature::default();
                let mut hyps = Vec::new();
                for line in read(&sigma)?.lines().map(str::trim) {
                    if line.is_empty() || line.starts_with('#') {
                        continue;
                    }
                    hyps.push(
                        parse_infer(line, &mut sig, &m)
                            .map_err(|e| Failure::Input(format!("{line}: {e}")))?,
                    );
                }
                let phi = parse_infer(&formula, &mut sig, &m).map_err(input)?;
                let q = q.map(|q| labels(&m, &q)).transpose()?;
                let window = window.unwrap_or_else(|| window_for(hyps.iter().chain([&phi])));
                let bounds = SearchBounds {
                    samples,
                    seed: self.seed,
                    ..SearchBounds::new(max_base, window)
                };
                let verdict = entails(&m, &sig, &hyps, &phi, q.as_deref(), &bounds, self.exec)
                    .map_err(input)?;
                Ok(match verdict {
                    EntailVerdict::NoCountermodel {
                        checked,
                        exhaustive,
                    } => {
                        emit(
                            &json!({"verdict": "no_countermodel", "checked": checked, "exhaustive": exhaustive}),
                        );
                        true
                    }
                    EntailVerdict::Countermodel {
                        base,
                        index,
                        sampled,
                        structure,
                    } => {
                        emit(&json!({
                            "verdict": "countermodel",
                            "base": base,
                            "index": index,
                            "sampled": sampled,
                            "structure": structure.to_json(),
                        }));
                        false
                    }
                })
            }
            Command::Proof(ProofCmd::Check { file, algebra, cap }) => {
                proof_check(&file, &algebra, cap, self.exec)
            }
            Command::Proof(ProofCmd::Derive(d)) => derive(d),
        }
    }

    fn budget(&self, c: &Carrier) -> Budget {
        let mut b = Budget::with_seed(self.seed);
        if let Some(s) = c.samples {
            b.samples = s;
        }
        if let Some(l) = c.exhaustive_limit {
            b.exhaustive_limit = l;
        }
        b
    }

    fn laws(&self, cmd: LawsCmd) -> Outcome {
        self.announce_seed();
        let full = |c: &Carrier| -> Result<FullMAlgebra, Failure> {
            FullMAlgebra::full(load_algebra(&c.algebra)?, c.base, c.dim).map_err(input)
        };
        let reports: Vec<LawReport> = match cmd {
            LawsCmd::Axioms(c) => check_mca_axioms(&full(&c)?, &self.budget(&c), self.exec),
            LawsCmd::Theorems(c) => theorems::check_all(&full(&c)?, &self.budget(&c), self.exec),
            LawsCmd::Embed(c) => vec![check_embed(&full(&c)?, &self.budget(&c), self.exec)],
            LawsCmd::Iso(c) => vec![check_iso(&full(&c)?, &self.budget(&c), self.exec)],
            LawsCmd::Identities {
                algebra,
                points,
                trials,
            } => {
                let m = load_algebra(&algebra)?;
                vec![
                    check_boolean_identity_1(&m, points, trials, self.seed, self.exec)
                        .map_err(input)?,
                    check_boolean_identity_2(&m, points, trials, self.seed, self.exec)
                        .map_err(input)?,
                ]
            }
        };
        emit(&reports);
        Ok(reports.iter().all(LawReport::holds))
    }
}

fn algebra_check(source: &str) -> Outcome {
    let report = match DeMorganAlgebra::builtin(source) {
        Ok(m) => m.to_tables().validate(),
        Err(_) => {
            let file: AlgebraFile = serde_json::from_str(&read(Path::new(source))?).map_err(input)?;
            file.validate()
        }
    };
    emit(&report);
    match report {
        ValidationReport::Ok => Ok(true),
        ValidationReport::Violations { .. } => Ok(false),
        ValidationReport::Malformed { reason } => Err(Failure::Input(reason)),
    }
}

fn taut(text: &str, algebra: &str, cap: u64, order: OrderArg, exec: Exec) -> Outcome {
    let m = load_algebra(algebra)?;
    let f = parse_infer(text, &mut Signature::default(), &m).map_err(input)?;
    let order = match order {
        OrderArg::Low => Order::LowFirst,
        OrderArg::High => Order::HighFirst,
    };
    match decide(&m, &f, &TautOptions { cap, order, exec }) {
        Ok(TautVerdict::Tautology { .. }) => {
            out("tautology");
            Ok(true)
        }
        Ok(TautVerdict::Refuted { valuation, value }) => {
            out(&format!("not a tautology: value {}", m.label(value)));
            for (prime, v) in valuation {
                out(&format!("  {} = {}", prime.print(&m), m.label(v)));
            }
            Ok(false)
        }
        Err(e @ TruthError::Budget { .. }) => Err(Failure::Budget(e.to_string())),
        Err(e) => Err(input(e)),
    }
}

fn eval(structure: &Path, text: &str, algebra: Option<&str>, q: Option<Vec<String>>) -> Outcome {
    let custom = algebra.map(load_algebra).transpose()?;
    let a = MStructure::from_json_str(&read(structure)?, custom.as_ref()).map_err(input)?;
    let m = a.values();
    let f = parse(text, &a.signature(), m).map_err(input)?;
    let x = a.eval(&f).map_err(input)?;
    let space = a.algebra().space();
    let denotation: BTreeMap<&str, Vec<Vec<usize>>> = m
        .elements()
        .map(|p| {
            (
                m.label(p),
                x.layer(p)
                    .iter()
                    .map(|i| space.tuple_of(i))
                    .collect::<Vec<_>>(),
            )
        })
        .filter(|(_, t)| !t.is_empty())
        .collect();
    let mut out = json!({
        "formula": f.print(m),
        "window": a.window(),
        "denotation": denotation,
        "true": a.denotes_true(&x),
    });
    if let Some(q) = q {
        let ids = labels(m, &q)?;
        out["q"] = json!(q);
        out["q_true"] = json!(a.denotes_q_true(&x, &ids));
    }
    emit(&out);
    Ok(true)
}

fn load_proof(path: &Path, m: &DeMorganAlgebra, sig: &mut Signature) -> Result<Proof, Failure> {
    from_json_str(m, &read(path)?, sig, true)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn proof_check(path: &Path, algebra: &str, cap: u64, exec: Exec) -> Outcome {
    let m = load_algebra(algebra)?;
    let p = load_proof(path, &m, &mut Signature::default())?;
    let opts = TautOptions {
        cap,
        exec,
        ..TautOptions::default()
    };
    let report = Checker::with_options(&m, opts).report(&p);
    emit(&report);
    match Checker::with_options(&m, opts).check(&p) {
        Verdict::Accepted => Ok(!p.lines.is_empty()),
        Verdict::Rejected {
            line,
            error: e @ LineError::TautologyBudget(_),
        } => Err(Failure::Budget(format!("line {line}: {e}"))),
        Verdict::Rejected { .. } => Ok(false),
    }
}

fn derive(d: Derive) -> Outcome {
    let m = load_algebra(&d.algebra)?;
    let mut sig = Signature::default();
    let need = |what: &str| Failure::Input(format!("theorem needs --{what}"));
    let phi = d
        .phi
        .as_deref()
        .map(|t| parse_infer(t, &mut sig, &m).map_err(input))
        .transpose()?;
    let proofs = d
        .proof
        .iter()
        .map(|p| load_proof(p, &m, &mut sig))
        .collect::<Result<Vec<_>, _>>()?;
    let one = || match proofs.as_slice() {
        [p] => Ok(p),
        _ => Err(Failure::Input("theorem needs exactly one --proof".into())),
    };
    let k = || d.k.ok_or_else(|| need("k"));
    let phi = || phi.as_ref().ok_or_else(|| need("phi"));
    let built: Result<Proof, BuildError> = match d.theorem {
        Theorem::A => build::exists_intro(&m, phi()?, k()?),
        Theorem::B => build::forall_elim(&m, one()?),
        Theorem::C => build::exists_mono(&m, one()?, k()?),
        Theorem::D => build::exists_cong(&m, one()?, k()?),
        Theorem::E => build::vacuous_exists(&m, phi()?, k()?),
        Theorem::F => {
            let sigma = proofs.first().map(|p| p.sigma.clone()).unwrap_or_default();
            build::conjunction(&m, &sigma, &proofs)
        }
        Theorem::Deduction => {
            let gamma = load_proof(
                d.gamma.as_deref().ok_or_else(|| need("gamma"))?,
                &m,
                &mut sig,
            )?;
            build::deduction(&m, one()?, &gamma, phi()?)
        }
    };
    let p = built.map_err(input)?;
    emit(&to_json(&m, &p));
    Ok(true)
}

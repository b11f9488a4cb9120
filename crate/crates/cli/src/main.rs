use std::path::PathBuf;
use std::process::ExitCode;

use abacus_branch::branching::{
    conjecture_sum, ind_big_tilde, ind_completely_splittable, res_bottom_added, simple_branch, simple_branch_sum,
    Basis, Conjecture, Direction, GrothendieckSum, SimpleBranch,
};
use abacus_branch::decomp::{verify_branching, DecompMatrix, MatrixSet, Statement};
use abacus_branch::ext_bounds::{epsilon_seq, pi_predicate};
use abacus_branch::families::{
    acs_preimage, h_epsilon, is_completely_splittable, lambda_family, mu_family, nu_family, staircase, tilde,
    StaircaseParams,
};
use abacus_branch::suites::{self, SuiteReport};
use abacus_branch::{mullineux, mullineux_symbol, partition_from_symbol, Abacus, MullineuxSymbol, Node, Partition, Residue};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "abacus-branch", version, about = "Abacus combinatorics, the Mullineux map and branching sums")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PArg {
    #[arg(long)]
    p: u32,
}

#[derive(Args)]
struct PartArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    partition: Partition,
}

#[derive(Subcommand)]
enum Command {
    /// Render or read abacus tables.
    #[command(subcommand)]
    Abacus(AbacusCmd),
    /// The Mullineux image m(λ).
    Mullineux(PartArgs),
    /// The Mullineux symbol, or the partition of a symbol with --invert.
    Symbol {
        #[arg(long)]
        p: u32,
        #[arg(long, required_unless_present = "invert")]
        partition: Option<Partition>,
        /// A symbol such as 10,5,5/3,2,2.
        #[arg(long)]
        invert: Option<MullineuxSymbol>,
    },
    /// λ̃ for a big partition.
    Tilde(PartArgs),
    /// H_ε(λ).
    Heps {
        #[command(flatten)]
        args: PartArgs,
        /// Comma-separated bead moves, e.g. -1,0,1.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        eps: Vec<i64>,
    },
    /// Members of the named families.
    Family {
        kind: FamilyKind,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        h: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        x: Option<usize>,
        /// Staircase r_2..r_k.
        #[arg(long, value_delimiter = ',')]
        rs: Vec<usize>,
        /// Staircase i_1..i_{k-1}.
        #[arg(long, value_delimiter = ',')]
        is: Vec<usize>,
    },
    /// The predicate π(H,x,i).
    Pi(TripleArgs),
    /// The sequence ε(H,x,i).
    Epsseq(TripleArgs),
    /// Ind^α or Res_α of a simple module, where a proved rule applies.
    Branch {
        direction: DirArg,
        #[command(flatten)]
        args: PartArgs,
        #[arg(long)]
        alpha: i64,
    },
    /// The predicted sum of one of the three conjectures.
    Conjecture {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        #[command(flatten)]
        args: PartArgs,
        #[arg(long)]
        alpha: Option<i64>,
    },
    /// Run a verification sweep.
    Verify {
        suite: SuiteArg,
        #[arg(long)]
        p: u32,
        /// Largest partition size (suites over partitions).
        #[arg(long)]
        n_max: Option<usize>,
        /// Largest x for thm66; defaults to 4H.
        #[arg(long)]
        xmax: Option<i64>,
        /// Bound on p·x for mull62_65.
        #[arg(long, default_value_t = 140)]
        px_max: usize,
        /// x ranges up to this multiple of H for lemma82.
        #[arg(long, default_value_t = 6)]
        x_mul: i64,
    },
    /// Decomposition-matrix checks.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Subcommand)]
enum AbacusCmd {
    /// Print the table of the abacus of a partition.
    Show {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        partition: Partition,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
    },
    /// Read a table (as printed by `show`) from a file, or stdin for `-`.
    Parse { file: PathBuf },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Load matrices and optionally check a statement on one instance.
    Check {
        /// Matrix files; repeat for several sizes.
        #[arg(long, required = true, num_args = 1..)]
        decomp: Vec<PathBuf>,
        /// unique-ind, unique-res, ind-cs, res-bottom, ind-big-tilde, conj1, conj2, conj3.
        #[arg(long, conflicts_with = "conjecture")]
        statement: Option<Statement>,
        /// Shorthand for --statement conj<N>.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        conjecture: Option<u8>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        partition: Option<Partition>,
        #[arg(long)]
        alpha: Option<i64>,
    },
}

#[derive(Args)]
struct TripleArgs {
    #[arg(long)]
    p: u32,
    #[arg(long = "H")]
    big_h: i64,
    #[arg(long)]
    x: i64,
    #[arg(long)]
    i: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Lambda,
    Nu,
    Mu,
    Staircase,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirArg {
    Ind,
    Res,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Lemma5,
    Lemma71,
    Lemma72,
    Thm66,
    Lemma82,
    #[value(name = "mull62_65")]
    Mull6265,
    Tilde,
    Involution,
}

/// A failure of the command: usage problems exit 1, refutations exit 2.
enum Failure {
    Usage(String),
    Refuted,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Printer {
    json: bool,
}

impl Printer {
    fn text_or(&self, text: impl std::fmt::Display, value: Value) {
        if self.json {
            println!("{value}");
        } else {
            println!("{text}");
        }
    }

    fn partition(&self, key: &str, l: &Partition) {
        self.text_or(l, json!({ key: l.to_string() }));
    }

    fn sum(&self, s: &GrothendieckSum) {
        let basis = match s.basis {
            Basis::Simple => "simple",
            Basis::Specht => "specht",
        };
        let terms: Vec<Value> =
            s.terms().iter().map(|(l, m)| json!({"label": l.to_string(), "mult": m})).collect();
        let provenance = format!("{:?}", s.provenance).to_lowercase();
        self.text_or(s, json!({"basis": basis, "provenance": provenance, "terms": terms}));
    }

    fn report(&self, r: &SuiteReport) {
        let value = json!({"suite": r.name, "pass": r.passed(), "checked": r.checked, "counterexamples": r.failures});
        self.text_or(r, value);
    }
}

fn residue(a: i64, p: u32) -> Residue {
    Residue::new(a, p)
}

fn branch(dir: Direction, lambda: &Partition, alpha: Residue, p: u32, out: &Printer) -> Outcome {
    match simple_branch(lambda, alpha, dir, p)? {
        SimpleBranch::Undetermined(nodes) => {
            let sum = match dir {
                Direction::Ind if is_completely_splittable(lambda, p) => Some(ind_completely_splittable(lambda, alpha, p)?),
                Direction::Ind => acs_preimage(lambda, p).and_then(|pre| ind_big_tilde(&pre, alpha, p).ok()),
                Direction::Res => {
                    // λ = μ^B with B in the first column and μ completely splittable.
                    let h = lambda.height() as i64;
                    let bottom = Node::new(h, 1);
                    let below = (lambda.part(h as usize) == 1).then(|| lambda.remove_node(bottom).ok()).flatten();
                    below.and_then(|mu| res_bottom_added(&mu, alpha, p).ok()).and_then(|r| r.expansion)
                }
            };
            match sum {
                Some(s) => out.sum(&s),
                None => {
                    let list: Vec<String> = nodes.iter().map(Node::to_string).collect();
                    let text = format!("undetermined: {} nodes of residue {alpha}: {}", nodes.len(), list.join(" "));
                    out.text_or(text, json!({"undetermined": list}));
                }
            }
        }
        other => out.sum(&simple_branch_sum(&other, p).expect("determined")),
    }
    Ok(())
}

fn load_matrices(files: &[PathBuf]) -> Result<MatrixSet, Failure> {
    let mut set = MatrixSet::new();
    for f in files {
        let text = std::fs::read_to_string(f).map_err(|e| Failure::Usage(format!("{}: {e}", f.display())))?;
        match DecompMatrix::parse(&text) {
            Ok(m) => set.insert(m)?,
            Err(e) => {
                eprintln!("FAIL {}: {e}", f.display());
                return Err(Failure::Refuted);
            }
        }
    }
    Ok(set)
}

fn default_instance(c: Conjecture, p: u32) -> Option<(Partition, i64)> {
    let (l, a) = match (c, p) {
        (Conjecture::C1, 7) => ("5,4,2,2", 3),
        (Conjecture::C2, 5) => ("5,5,3", 0),
        (Conjecture::C3, 5) => ("7,6,6", 2),
        _ => return None,
    };
    Some((l.parse().ok()?, a))
}

fn verify(suite: SuiteArg, p: u32, n_max: Option<usize>, xmax: Option<i64>, px_max: usize, x_mul: i64) -> SuiteReport {
    let n = |d: usize| n_max.unwrap_or(d);
    match suite {
        SuiteArg::Lemma5 => suites::lemma5(p, n(22)),
        SuiteArg::Lemma71 => suites::lemma71(p, n(if p == 3 { 22 } else { 30 })),
        SuiteArg::Lemma72 => suites::lemma72(p, n(if p == 3 { 22 } else { 30 })),
        SuiteArg::Thm66 => suites::thm66(p, xmax),
        SuiteArg::Lemma82 => suites::lemma82(p, x_mul),
        SuiteArg::Mull6265 => suites::mull62_65(p, px_max),
        SuiteArg::Tilde => suites::tilde_forms(p, n(30)),
        SuiteArg::Involution => SuiteReport::merge(
            format!("involution p={p}"),
            vec![suites::involution(p, n(22)), suites::core_transpose(p, n(22).min(20))],
        ),
    }
}

fn run(cli: Cli) -> Outcome {
    let out = Printer { json: cli.json };
    match cli.command {
        Command::Abacus(AbacusCmd::Show { p, partition, shift }) => {
            let a = Abacus::from_partition(&partition, shift);
            let text = a.render(p);
            out.text_or(text.trim_end(), json!({"abacus": a.to_string(), "table": text}));
        }
        Command::Abacus(AbacusCmd::Parse { file }) => {
            let text = if file.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin())?
            } else {
                std::fs::read_to_string(&file)?
            };
            let (a, _) = Abacus::parse_render(&text)?;
            out.partition("partition", &a.to_partition());
        }
        Command::Mullineux(PartArgs { p, partition }) => out.partition("mullineux", &mullineux(&partition, p)?),
        Command::Symbol { p, partition, invert } => match (partition, invert) {
            (_, Some(g)) => out.partition("partition", &partition_from_symbol(&g, p)?),
            (Some(l), None) => {
                let g = mullineux_symbol(&l, p)?;
                out.text_or(&g, json!({"symbol": g.to_string()}));
            }
            (None, None) => unreachable!("clap requires one of them"),
        },
        Command::Tilde(PartArgs { p, partition }) => out.partition("tilde", &tilde(&partition, p)?),
        Command::Heps { args, eps } => out.partition("partition", &h_epsilon(&args.partition, &eps, args.p)?),
        Command::Family { kind, p, h, i, x, rs, is } => {
            let need = |v: Option<usize>, name: &str| v.ok_or_else(|| Failure::Usage(format!("--{name} is required")));
            let l = match kind {
                FamilyKind::Lambda => lambda_family(need(h, "h")?, need(i, "i")?, need(x, "x")?, p)?,
                FamilyKind::Nu => nu_family(need(h, "h")?, need(x, "x")?, p)?,
                FamilyKind::Mu => mu_family(need(h, "h")?, need(i, "i")?, need(x, "x")?, p)?,
                FamilyKind::Staircase => staircase(&StaircaseParams::new(rs, is), p)?,
            };
            out.partition("partition", &l);
        }
        Command::Pi(t) => {
            let v = pi_predicate(t.big_h, t.x, t.i, t.p);
            out.text_or(v, json!({"pi": v}));
        }
        Command::Epsseq(t) => {
            let e = epsilon_seq(t.big_h, t.x, t.i, t.p)?;
            let text: Vec<String> = e.iter().map(i64::to_string).collect();
            out.text_or(text.join(","), json!({"epsilon": e}));
        }
        Command::Branch { direction, args, alpha } => {
            let dir = match direction {
                DirArg::Ind => Direction::Ind,
                DirArg::Res => Direction::Res,
            };
            branch(dir, &args.partition, residue(alpha, args.p), args.p, &out)?;
        }
        Command::Conjecture { which, args, alpha } => {
            let c = [Conjecture::C1, Conjecture::C2, Conjecture::C3][which as usize - 1];
            let s = conjecture_sum(c, &args.partition, alpha.map(|a| residue(a, args.p)), args.p)?;
            out.sum(&s);
        }
        Command::Verify { suite, p, n_max, xmax, px_max, x_mul } => {
            let r = verify(suite, p, n_max, xmax, px_max, x_mul);
            out.report(&r);
            if !r.passed() {
                return Err(Failure::Refuted);
            }
        }
        Command::Oracle(OracleCmd::Check { decomp, statement, conjecture, p, partition, alpha }) => {
            let set = load_matrices(&decomp)?;
            let statement = statement.or(conjecture.map(|c| Statement::Conjecture([Conjecture::C1, Conjecture::C2, Conjecture::C3][c as usize - 1])));
            let mat_p = set.p().expect("at least one file");
            if p.is_some_and(|p| p != mat_p) {
                return Err(Failure::Usage(format!("--p {} does not match the matrices (p={mat_p})", p.unwrap())));
            }
            let Some(statement) = statement else {
                for n in set.sizes() {
                    let m = set.get(n)?;
                    out.text_or(
                        format!("PASS p={} n={n} sha256={}", m.p, m.source_hash),
                        json!({"p": m.p, "n": n, "sha256": m.source_hash, "pass": true}),
                    );
                }
                return Ok(());
            };
            let (lambda, a) = match (partition, alpha, statement) {
                (Some(l), Some(a), _) => (l, a),
                (Some(l), None, Statement::Conjecture(Conjecture::C3)) => (l, -3),
                (None, _, Statement::Conjecture(c)) => default_instance(c, mat_p)
                    .ok_or_else(|| Failure::Usage("--partition is required".into()))?,
                _ => return Err(Failure::Usage("--partition and --alpha are required".into())),
            };
            let report = verify_branching(statement, &[(lambda, residue(a, mat_p))], &set)?;
            let rows: Vec<Value> = report
                .instances
                .iter()
                .map(|i| {
                    json!({"lambda": i.lambda.to_string(), "alpha": i.alpha.value(), "pass": i.pass,
                           "predicted": i.predicted.to_string(), "computed": i.computed.to_string()})
                })
                .collect();
            let hashes: Vec<Value> = report.provenance.iter().map(|(n, h)| json!({"n": n, "sha256": h})).collect();
            out.text_or(
                report.to_string().trim_end(),
                json!({"statement": statement.to_string(), "instances": rows, "matrices": hashes}),
            );
            if !report.passed() {
                return Err(Failure::Refuted);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Refuted) => ExitCode::from(2),
    }
}

//! Decomposition matrices as external data, and the branching multiplicities
//! they determine.
//!
//! File format, one item per line:
//!
//! ```text
//! # comment
//! p 2
//! n 3
//! S 3 | D 3:1
//! S 2,1 | D 2,1:1
//! S 1,1,1 | D 3:1
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::branching::{
    conjecture_sum, ind_big_tilde, ind_completely_splittable, res_bottom_added, simple_branch, simple_branch_sum,
    Basis, Conjecture, Direction, GrothendieckSum, Provenance,
};
use crate::error::{Error, Result};
use crate::families::tilde;
use crate::partition::{is_prime, partitions_of, Node, Partition, Residue};

type Vector = BTreeMap<Partition, i64>;

/// `d_{λμ} = [S^λ : D^μ]` for all `λ ⊢ n`.
#[derive(Clone, Debug)]
pub struct DecompMatrix {
    pub p: u32,
    pub n: usize,
    rows: BTreeMap<Partition, BTreeMap<Partition, u64>>,
    /// `[D^μ]` in the Specht basis.
    inverse: BTreeMap<Partition, Vector>,
    /// SHA-256 of the source text, hex encoded.
    pub source_hash: String,
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::SyntaxError { line, msg: msg.into() }
}

fn parse_label(text: &str, line: usize) -> Result<Partition> {
    text.trim().parse::<Partition>().map_err(|e| syntax(line, format!("bad partition {text:?}: {e}")))
}

fn header(lines: &mut impl Iterator<Item = (usize, String)>, key: &str) -> Result<(usize, u64)> {
    let (no, text) = lines.next().ok_or_else(|| syntax(0, format!("missing '{key}' line")))?;
    let value = text
        .strip_prefix(key)
        .filter(|rest| rest.starts_with(char::is_whitespace))
        .and_then(|rest| rest.trim().parse::<u64>().ok())
        .ok_or_else(|| syntax(no, format!("expected '{key} <int>'")))?;
    Ok((no, value))
}

impl DecompMatrix {
    /// Parses and validates a matrix file.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim().to_string()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (pline, p) = header(&mut lines, "p")?;
        let p = u32::try_from(p).ok().filter(|&p| is_prime(p)).ok_or_else(|| syntax(pline, "p is not a prime"))?;
        let n = header(&mut lines, "n")?.1 as usize;
        let mut rows = BTreeMap::new();
        for (no, text) in lines {
            let body = text.strip_prefix('S').ok_or_else(|| syntax(no, "row must start with 'S'"))?;
            let (label, entries) = body.split_once('|').ok_or_else(|| syntax(no, "missing '|'"))?;
            let lambda = parse_label(label, no)?;
            if lambda.size() != n {
                return Err(syntax(no, format!("{lambda} is not a partition of {n}")));
            }
            let mut row = BTreeMap::new();
            for entry in entries.split(';').map(str::trim).filter(|e| !e.is_empty()) {
                let body = entry.strip_prefix('D').ok_or_else(|| syntax(no, format!("entry {entry:?} must start with 'D'")))?;
                let (label, mult) = body.rsplit_once(':').ok_or_else(|| syntax(no, format!("entry {entry:?} lacks ':<mult>'")))?;
                let mu = parse_label(label, no)?;
                let mult: u64 = mult.trim().parse().map_err(|_| syntax(no, format!("bad multiplicity in {entry:?}")))?;
                if mu.size() != n || !mu.is_p_regular(p) {
                    return Err(syntax(no, format!("D({mu}) is not a {p}-regular partition of {n}")));
                }
                if row.contains_key(&mu) {
                    return Err(syntax(no, format!("D({mu}) listed twice")));
                }
                if mult == 0 {
                    continue;
                }
                if !mu.dominates(&lambda) {
                    return Err(Error::UnitriangularityViolation { line: no, label: mu.to_string() });
                }
                row.insert(mu, mult);
            }
            if lambda.is_p_regular(p) && row.get(&lambda) != Some(&1) {
                return Err(Error::DiagonalNotOne { line: no });
            }
            if rows.insert(lambda.clone(), row).is_some() {
                return Err(syntax(no, format!("row S({lambda}) listed twice")));
            }
        }
        let missing: Vec<String> = partitions_of(n).iter().filter(|l| !rows.contains_key(*l)).map(|l| l.to_string()).collect();
        if !missing.is_empty() {
            return Err(Error::IncompleteMatrix(missing.join(" ")));
        }
        let source_hash = hex::encode(Sha256::digest(text.as_bytes()));
        let inverse = invert(&rows, p);
        Ok(DecompMatrix { p, n, rows, inverse, source_hash })
    }

    pub fn entry(&self, lambda: &Partition, mu: &Partition) -> u64 {
        self.rows.get(lambda).and_then(|r| r.get(mu)).copied().unwrap_or(0)
    }

    pub fn row(&self, lambda: &Partition) -> Option<&BTreeMap<Partition, u64>> {
        self.rows.get(lambda)
    }

    /// `[D^μ]` as an integral combination of Specht classes.
    pub fn simple_in_specht(&self, mu: &Partition) -> Option<&Vector> {
        self.inverse.get(mu)
    }

    /// Rewrites a Specht-basis vector in the simple basis.
    pub fn specht_to_simple(&self, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (lambda, &c) in v {
            if let Some(row) = self.rows.get(lambda) {
                for (mu, &d) in row {
                    *out.entry(mu.clone()).or_insert(0) += c * d as i64;
                }
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Serializes back to the file format.
    pub fn to_text(&self) -> String {
        let mut s = format!("p {}\nn {}\n", self.p, self.n);
        for lambda in partitions_of(self.n) {
            let entries: Vec<String> = self.rows[&lambda].iter().map(|(mu, m)| format!("D {mu}:{m}")).collect();
            s.push_str(&format!("S {lambda} | {}\n", entries.join("; ")));
        }
        s
    }
}

impl FromStr for DecompMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DecompMatrix::parse(s)
    }
}

/// Inverts the unitriangular block on p-regular rows.
///
/// Reverse lexicographic order refines dominance, so each `[D^μ]` only
/// needs classes of labels already handled.
fn invert(rows: &BTreeMap<Partition, BTreeMap<Partition, u64>>, p: u32) -> BTreeMap<Partition, Vector> {
    let mut inv: BTreeMap<Partition, Vector> = BTreeMap::new();
    for (mu, row) in rows.iter().rev().filter(|(l, _)| l.is_p_regular(p)) {
        let mut v = Vector::new();
        v.insert(mu.clone(), 1);
        for (nu, &d) in row.iter().filter(|(nu, _)| *nu != mu) {
            for (s, &c) in &inv[nu] {
                *v.entry(s.clone()).or_insert(0) -= d as i64 * c;
            }
        }
        v.retain(|_, c| *c != 0);
        inv.insert(mu.clone(), v);
    }
    inv
}

/// `[S^λ]` pushed through `Ind^α` or `Res_α`: the sum over addable
/// (removable) nodes of residue `α`.
pub fn specht_branch(lambda: &Partition, alpha: Residue, dir: Direction, p: u32) -> GrothendieckSum {
    let mut sum = GrothendieckSum::new(p, Basis::Specht, Provenance::Proved);
    let nodes = match dir {
        Direction::Ind => lambda.addable_nodes(),
        Direction::Res => lambda.removable_nodes(),
    };
    for node in nodes.into_iter().filter(|b| b.residue(p) == alpha) {
        let next = match dir {
            Direction::Ind => lambda.add_node(node),
            Direction::Res => lambda.remove_node(node),
        };
        sum.add(next.expect("node taken from the diagram"), 1).expect("Specht labels of one size");
    }
    sum
}

/// Exact composition multiplicities of `Ind^α D^λ` (or `Res_α D^λ`).
///
/// `mn` covers `n = |λ|`, `target` covers `n ± 1`.
pub fn induced_simple_multiplicities(
    lambda: &Partition,
    alpha: Residue,
    dir: Direction,
    mn: &DecompMatrix,
    target: &DecompMatrix,
) -> Result<GrothendieckSum> {
    let p = mn.p;
    let n = lambda.size();
    let want = match dir {
        Direction::Ind => Some(n + 1),
        Direction::Res => n.checked_sub(1),
    };
    if target.p != p || mn.n != n || Some(target.n) != want {
        return Err(Error::SizeMismatch(format!(
            "matrices for (p={}, n={}) and (p={}, n={}) do not fit {lambda}",
            mn.p, mn.n, target.p, target.n
        )));
    }
    let d = mn.simple_in_specht(lambda).ok_or_else(|| Error::NotPRegular(lambda.to_string(), p))?;
    let mut pushed = Vector::new();
    for (nu, &c) in d {
        for (t, m) in specht_branch(nu, alpha, dir, p).terms() {
            *pushed.entry(t.clone()).or_insert(0) += c * *m as i64;
        }
    }
    let mut sum = GrothendieckSum::new(p, Basis::Simple, Provenance::Computed);
    for (mu, c) in target.specht_to_simple(&pushed) {
        if c < 0 {
            return Err(Error::MatrixInconsistent(format!("negative multiplicity {c} of D({mu})")));
        }
        sum.add(mu, c as u64)?;
    }
    Ok(sum)
}

/// Matrices for one `p`, keyed by `n`.
#[derive(Clone, Debug, Default)]
pub struct MatrixSet {
    by_n: BTreeMap<usize, DecompMatrix>,
}

impl MatrixSet {
    pub fn new() -> Self {
        MatrixSet::default()
    }

    pub fn insert(&mut self, m: DecompMatrix) -> Result<()> {
        if let Some(other) = self.by_n.values().next() {
            if other.p != m.p {
                return Err(Error::MatrixInconsistent(format!("mixed characteristics {} and {}", other.p, m.p)));
            }
        }
        self.by_n.insert(m.n, m);
        Ok(())
    }

    pub fn p(&self) -> Option<u32> {
        self.by_n.values().next().map(|m| m.p)
    }

    pub fn get(&self, n: usize) -> Result<&DecompMatrix> {
        self.by_n.get(&n).ok_or(Error::MissingMatrix(n))
    }

    pub fn sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_n.keys().copied()
    }

    pub fn induced(&self, lambda: &Partition, alpha: Residue, dir: Direction) -> Result<GrothendieckSum> {
        let n = lambda.size();
        let m = match dir {
            Direction::Ind => n + 1,
            Direction::Res => n.checked_sub(1).ok_or(Error::MissingMatrix(0))?,
        };
        induced_simple_multiplicities(lambda, alpha, dir, self.get(n)?, self.get(m)?)
    }
}

/// A branching statement checkable against decomposition data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statement {
    /// The unique (co)normal node rule, including the zero case.
    Unique(Direction),
    IndCompletelySplittable,
    ResBottomAdded,
    IndBigTilde,
    Conjecture(Conjecture),
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Statement::Unique(Direction::Ind) => "unique-ind",
            Statement::Unique(Direction::Res) => "unique-res",
            Statement::IndCompletelySplittable => "ind-cs",
            Statement::ResBottomAdded => "res-bottom",
            Statement::IndBigTilde => "ind-big-tilde",
            Statement::Conjecture(Conjecture::C1) => "conj1",
            Statement::Conjecture(Conjecture::C2) => "conj2",
            Statement::Conjecture(Conjecture::C3) => "conj3",
        };
        f.write_str(s)
    }
}

impl FromStr for Statement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "unique-ind" => Statement::Unique(Direction::Ind),
            "unique-res" => Statement::Unique(Direction::Res),
            "ind-cs" => Statement::IndCompletelySplittable,
            "res-bottom" => Statement::ResBottomAdded,
            "ind-big-tilde" => Statement::IndBigTilde,
            "conj1" => Statement::Conjecture(Conjecture::C1),
            "conj2" => Statement::Conjecture(Conjecture::C2),
            "conj3" => Statement::Conjecture(Conjecture::C3),
            _ => return Err(Error::Parse(format!("unknown statement {s:?}"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct InstanceReport {
    pub lambda: Partition,
    pub alpha: Residue,
    pub predicted: GrothendieckSum,
    pub computed: GrothendieckSum,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct BranchReport {
    pub statement: Statement,
    pub instances: Vec<InstanceReport>,
    /// `(n, sha256)` of every matrix consulted.
    pub provenance: Vec<(usize, String)>,
}

impl BranchReport {
    pub fn passed(&self) -> bool {
        self.instances.iter().all(|i| i.pass)
    }
}

impl fmt::Display for BranchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.instances {
            let verdict = if i.pass { "PASS" } else { "FAIL" };
            write!(f, "{verdict} {} lambda={} alpha={}", self.statement, i.lambda, i.alpha)?;
            if i.pass {
                writeln!(f, ": {}", i.computed)?;
            } else {
                writeln!(f, ": predicted {} computed {}", i.predicted, i.computed)?;
            }
        }
        for (n, h) in &self.provenance {
            writeln!(f, "matrix n={n} sha256={h}")?;
        }
        Ok(())
    }
}

/// Checks one statement on each `(λ, α)` against the matrices.
///
/// `α` is ignored for the third conjecture, where it is fixed.
pub fn verify_branching(statement: Statement, instances: &[(Partition, Residue)], mats: &MatrixSet) -> Result<BranchReport> {
    let p = mats.p().ok_or(Error::MissingMatrix(0))?;
    let mut used = std::collections::BTreeSet::new();
    let mut reports = Vec::new();
    for (lambda, alpha) in instances {
        let alpha = Residue::new(alpha.value() as i64, p);
        let (predicted, source, dir, alpha) = match statement {
            Statement::Unique(dir) => {
                let b = simple_branch(lambda, alpha, dir, p)?;
                let s = simple_branch_sum(&b, p)
                    .ok_or_else(|| Error::PreconditionViolated(format!("{lambda} has several nodes of residue {alpha}")))?;
                (s, lambda.clone(), dir, alpha)
            }
            Statement::IndCompletelySplittable => {
                (ind_completely_splittable(lambda, alpha, p)?, lambda.clone(), Direction::Ind, alpha)
            }
            Statement::ResBottomAdded => {
                let r = res_bottom_added(lambda, alpha, p)?;
                let right = match r.expansion {
                    Some(s) => s,
                    None => {
                        used.extend([r.lambda_a.size(), r.lambda_a.size() + 1]);
                        mats.induced(&r.lambda_a, alpha, Direction::Ind)?
                    }
                };
                (right, r.lambda_b, Direction::Res, alpha)
            }
            Statement::IndBigTilde => (ind_big_tilde(lambda, alpha, p)?, tilde(lambda, p)?, Direction::Ind, alpha),
            Statement::Conjecture(c) => {
                let s = conjecture_sum(c, lambda, (c != Conjecture::C3).then_some(alpha), p)?;
                match c {
                    Conjecture::C1 => (s, tilde(lambda, p)?, Direction::Ind, alpha),
                    Conjecture::C2 => {
                        let top = lambda.add_node(Node::new(1, lambda.part(1) as i64 + 1))?;
                        (s, top, Direction::Res, alpha)
                    }
                    Conjecture::C3 => (s, tilde(lambda, p)?, Direction::Ind, Residue::new(-3, p)),
                }
            }
        };
        let n = source.size();
        used.insert(n);
        used.insert(match dir {
            Direction::Ind => n + 1,
            Direction::Res => n.saturating_sub(1),
        });
        let computed = mats.induced(&source, alpha, dir)?;
        let pass = computed.same_terms(&predicted);
        reports.push(InstanceReport { lambda: lambda.clone(), alpha, predicted, computed, pass });
    }
    let provenance = used.into_iter().filter_map(|n| mats.get(n).ok().map(|m| (n, m.source_hash.clone()))).collect();
    Ok(BranchReport { statement, instances: reports, provenance })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P2N2: &str = "p 2\nn 2\nS 2 | D 2:1\nS 1,1 | D 2:1\n";
    const P2N3: &str = "# mod 2, n = 3\np 2\nn 3\nS 3 | D 3:1\nS 2,1 | D 2,1:1\nS 1,1,1 | D 3:1\n";

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_validate() {
        let m = DecompMatrix::parse(P2N3).unwrap();
        assert_eq!((m.p, m.n), (2, 3));
        assert_eq!(m.entry(&part("1,1,1"), &part("3")), 1);
        assert_eq!(m.entry(&part("1,1,1"), &part("2,1")), 0);
        assert_eq!(DecompMatrix::parse(&m.to_text()).unwrap().rows, m.rows);
        assert_eq!(m.source_hash.len(), 64);

        let diag = "p 2\nn 3\nS 3 | D 3:1\nS 2,1 | D 3:1\nS 1,1,1 | D 3:1\n";
        assert_eq!(DecompMatrix::parse(diag).unwrap_err(), Error::DiagonalNotOne { line: 4 });
        let tri = "p 2\nn 3\nS 3 | D 3:1; D 2,1:1\nS 2,1 | D 2,1:1\nS 1,1,1 | D 3:1\n";
        assert_eq!(
            DecompMatrix::parse(tri).unwrap_err(),
            Error::UnitriangularityViolation { line: 3, label: "2,1".into() }
        );
        let bad = "p 2\nn 3\nS 3 D 3:1\n";
        assert!(matches!(DecompMatrix::parse(bad), Err(Error::SyntaxError { line: 3, .. })));
        assert!(matches!(DecompMatrix::parse("p 4\nn 1\n"), Err(Error::SyntaxError { line: 1, .. })));
        assert!(matches!(DecompMatrix::parse("p 2\nn 3\nS 3 | D 3:1\n"), Err(Error::IncompleteMatrix(_))));
    }

    #[test]
    fn specht_branch_examples() {
        let s = specht_branch(&part("2"), Residue::new(0, 2), Direction::Ind, 2);
        assert_eq!(s.terms(), &[(part("3"), 1)]);
        let s = specht_branch(&part("2"), Residue::new(1, 2), Direction::Ind, 2);
        assert_eq!(s.terms(), &[(part("2,1"), 1)]);
        // All residues together give the full induction.
        let l = part("3,1,1");
        let total: usize = (0..5).map(|r| specht_branch(&l, Residue::new(r, 5), Direction::Ind, 5).terms().len()).sum();
        assert_eq!(total, l.addable_nodes().len());
    }

    #[test]
    fn induced_example() {
        let m2 = DecompMatrix::parse(P2N2).unwrap();
        let m3 = DecompMatrix::parse(P2N3).unwrap();
        let s = induced_simple_multiplicities(&part("2"), Residue::new(1, 2), Direction::Ind, &m2, &m3).unwrap();
        assert_eq!(s.terms(), &[(part("2,1"), 1)]);
        assert_eq!(s.provenance, Provenance::Computed);
        assert!(matches!(
            induced_simple_multiplicities(&part("2"), Residue::new(1, 2), Direction::Res, &m2, &m3),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn missing_matrix() {
        let mut set = MatrixSet::new();
        set.insert(DecompMatrix::parse(P2N2).unwrap()).unwrap();
        let r = verify_branching(Statement::Unique(Direction::Ind), &[(part("2"), Residue::new(1, 2))], &set);
        assert_eq!(r.unwrap_err(), Error::MissingMatrix(3));
        assert_eq!("conj3".parse::<Statement>().unwrap().to_string(), "conj3");
    }
}

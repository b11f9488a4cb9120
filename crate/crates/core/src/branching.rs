//! Explicit branching sums in the Grothendieck group.
//!
//! `Ind^α` and `Res_α` of simple modules: the unique-node cases, the
//! completely splittable theorems, `Ind^α D^{λ̃}` for tall big `λ`, and the
//! three predicted sums (labelled [`Provenance::Predicted`]).

use std::collections::BTreeMap;
use std::fmt;

use crate::abacus::node_classification;
use crate::error::{Error, Result};
use crate::families::{h_epsilon, is_big, is_completely_splittable, tilde};
use crate::partition::{Node, Partition, Residue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Simple,
    Specht,
}

/// Whether a sum is a theorem, a conjecture, or read off decomposition data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Proved,
    Predicted,
    Computed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Ind,
    Res,
}

/// A formal sum `Σ m [X^λ]` with positive multiplicities.
///
/// Terms keep insertion order for display; equality treats them as a multiset.
#[derive(Clone, Debug)]
pub struct GrothendieckSum {
    pub p: u32,
    pub basis: Basis,
    pub provenance: Provenance,
    terms: Vec<(Partition, u64)>,
}

impl GrothendieckSum {
    pub fn new(p: u32, basis: Basis, provenance: Provenance) -> Self {
        GrothendieckSum { p, basis, provenance, terms: Vec::new() }
    }

    /// Adds `mult [label]`. Simple-basis labels must be p-regular and all
    /// labels must have the same size.
    pub fn add(&mut self, label: Partition, mult: u64) -> Result<()> {
        if self.basis == Basis::Simple && !label.is_p_regular(self.p) {
            return Err(Error::TermNotPRegular(label.to_string()));
        }
        if let Some((first, _)) = self.terms.first() {
            if first.size() != label.size() {
                return Err(Error::SizeMismatch(format!("{label} added to a sum over {}", first.size())));
            }
        }
        if mult == 0 {
            return Ok(());
        }
        match self.terms.iter_mut().find(|(l, _)| *l == label) {
            Some(t) => t.1 += mult,
            None => self.terms.push((label, mult)),
        }
        Ok(())
    }

    pub fn terms(&self) -> &[(Partition, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiplicity(&self, label: &Partition) -> u64 {
        self.terms.iter().find(|(l, _)| l == label).map_or(0, |t| t.1)
    }

    /// Sum of all multiplicities.
    pub fn total(&self) -> u64 {
        self.terms.iter().map(|t| t.1).sum()
    }

    /// Terms as a sorted map.
    pub fn as_map(&self) -> BTreeMap<Partition, u64> {
        self.terms.iter().cloned().collect()
    }

    /// Same basis and same multiset of terms, ignoring provenance.
    pub fn same_terms(&self, other: &GrothendieckSum) -> bool {
        self.basis == other.basis && self.as_map() == other.as_map()
    }
}

impl PartialEq for GrothendieckSum {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.provenance == other.provenance && self.same_terms(other)
    }
}

impl Eq for GrothendieckSum {}

impl fmt::Display for GrothendieckSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let letter = match self.basis {
            Basis::Simple => "D",
            Basis::Specht => "S",
        };
        for (k, (label, m)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            if *m != 1 {
                write!(f, "{m}")?;
            }
            write!(f, "{letter}({label})")?;
        }
        Ok(())
    }
}

/// Outcome of the unique-node rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimpleBranch {
    Zero,
    Simple(Partition),
    /// Several (co)normal nodes; listed top to bottom.
    Undetermined(Vec<Node>),
}

fn conormal(lambda: &Partition, alpha: Residue, p: u32) -> Vec<Node> {
    node_classification(lambda, p).conormal_of(alpha).to_vec()
}

fn normal(lambda: &Partition, alpha: Residue, p: u32) -> Vec<Node> {
    node_classification(lambda, p).normal_of(alpha).to_vec()
}

/// `Ind^α D^λ` or `Res_α D^λ` when at most one (co)normal node has residue `α`.
pub fn simple_branch(lambda: &Partition, alpha: Residue, dir: Direction, p: u32) -> Result<SimpleBranch> {
    if !lambda.is_p_regular(p) {
        return Err(Error::NotPRegular(lambda.to_string(), p));
    }
    let nodes = match dir {
        Direction::Ind => conormal(lambda, alpha, p),
        Direction::Res => normal(lambda, alpha, p),
    };
    Ok(match nodes.as_slice() {
        [] => SimpleBranch::Zero,
        [a] => SimpleBranch::Simple(match dir {
            Direction::Ind => lambda.add_node(*a)?,
            Direction::Res => lambda.remove_node(*a)?,
        }),
        _ => SimpleBranch::Undetermined(nodes),
    })
}

/// Turns a [`SimpleBranch`] into a proved sum; `None` when undetermined.
pub fn simple_branch_sum(branch: &SimpleBranch, p: u32) -> Option<GrothendieckSum> {
    let mut sum = GrothendieckSum::new(p, Basis::Simple, Provenance::Proved);
    match branch {
        SimpleBranch::Zero => Some(sum),
        SimpleBranch::Simple(l) => {
            sum.add(l.clone(), 1).ok()?;
            Some(sum)
        }
        SimpleBranch::Undetermined(_) => None,
    }
}

fn violated(msg: impl Into<String>) -> Error {
    Error::PreconditionViolated(msg.into())
}

fn ones(k: usize) -> Vec<usize> {
    vec![1; k]
}

/// `h_{2,1}(λ) = λ_2 + h(λ) - 2`.
pub fn h21(lambda: &Partition) -> usize {
    (lambda.part(2) + lambda.height()).saturating_sub(2)
}

/// `h_{1,1}(λ) = λ_1 + h(λ) - 1`.
pub fn h11(lambda: &Partition) -> usize {
    (lambda.part(1) + lambda.height()).saturating_sub(1)
}

/// The two nodes `A` above `B`, or an error naming the count.
fn exactly_two(nodes: &[Node], what: &str) -> Result<(Node, Node)> {
    match nodes {
        [a, b] => Ok((*a, *b)),
        _ if nodes.len() < 2 => Err(violated(format!("fewer than two {what} nodes of residue alpha"))),
        _ => Err(violated(format!("{} {what} nodes of residue alpha, expected two", nodes.len()))),
    }
}

/// `[Ind^α D^λ]` for completely splittable `λ` with two conormal `α`-nodes.
pub fn ind_completely_splittable(lambda: &Partition, alpha: Residue, p: u32) -> Result<GrothendieckSum> {
    if !is_completely_splittable(lambda, p) || !lambda.is_p_regular(p) {
        return Err(violated(format!("{lambda} is not a completely splittable p-regular partition")));
    }
    let (a, b) = exactly_two(&conormal(lambda, alpha, p), "conormal")?;
    let pu = p as usize;
    let mut sum = GrothendieckSum::new(p, Basis::Simple, Provenance::Proved);
    if p > 2 && *lambda == Partition::from_parts(ones(pu - 1)) {
        let mut first = vec![2];
        first.extend(ones(pu - 2));
        let mut second = vec![3];
        second.extend(ones(pu - 3));
        sum.add(Partition::from_parts(first), 2)?;
        sum.add(Partition::from_parts(second), 1)?;
        return Ok(sum);
    }
    if p == 2 && *lambda == Partition::from_parts(vec![1]) {
        sum.add(Partition::from_parts(vec![2]), 2)?;
        return Ok(sum);
    }
    let la = lambda.add_node(a)?;
    sum.add(la.clone(), 2)?;
    sum.add(lambda.add_node(b)?, 1)?;
    let row = Partition::from_parts(vec![pu - 1]);
    if h11(lambda) == pu - 1 && *lambda != row {
        sum.add(tilde(&la, p)?, 1)?;
    }
    Ok(sum)
}

/// The identification `Res_α D^{λ^B} ≅ Ind^α D^{λ_A}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottomAddedRes {
    /// `λ^B`, with `B` the addable node in the first column.
    pub lambda_b: Partition,
    /// The normal `α`-node of `λ^B` other than `B`.
    pub node_a: Node,
    /// `λ_A`.
    pub lambda_a: Partition,
    /// `[Ind^α D^{λ_A}]`, when a unique-node rule or the completely splittable theorem applies.
    pub expansion: Option<GrothendieckSum>,
}

pub fn res_bottom_added(lambda: &Partition, alpha: Residue, p: u32) -> Result<BottomAddedRes> {
    let pu = p as usize;
    if !is_completely_splittable(lambda, p) || !lambda.is_p_regular(p) {
        return Err(violated(format!("{lambda} is not a completely splittable p-regular partition")));
    }
    if *lambda == Partition::from_parts(ones(pu - 1)) {
        return Err(violated("lambda = (1^{p-1})"));
    }
    let b = Node::new(lambda.height() as i64 + 1, 1);
    let lambda_b = lambda.add_node(b)?;
    let nodes = normal(&lambda_b, alpha, p);
    if nodes.len() < 2 || !nodes.contains(&b) {
        return Err(violated(format!("{lambda_b} lacks two normal nodes of residue {alpha} including B")));
    }
    let others: Vec<Node> = nodes.into_iter().filter(|&n| n != b).collect();
    let node_a = match others.as_slice() {
        [a] => *a,
        _ => return Err(violated(format!("{} normal nodes besides B", others.len()))),
    };
    let lambda_a = lambda.remove_node(node_a)?;
    let expansion = match simple_branch(&lambda_a, alpha, Direction::Ind, p)? {
        SimpleBranch::Undetermined(_) => ind_completely_splittable(&lambda_a, alpha, p).ok(),
        other => simple_branch_sum(&other, p),
    };
    Ok(BottomAddedRes { lambda_b, node_a, lambda_a, expansion })
}

/// True when `λ_1 ≡ -h(λ) ≡ α (mod p)`.
fn excluded_residue(lambda: &Partition, alpha: Residue, p: u32) -> bool {
    let r1 = Residue::new(lambda.part(1) as i64, p);
    let rh = Residue::new(-(lambda.height() as i64), p);
    r1 == rh && rh == alpha
}

/// `[Ind^α D^{λ̃}] = 2[D^{λ̃^A}] + [D^{λ̃^B}]` for big `λ` of height at least `(p+3)/2`.
pub fn ind_big_tilde(lambda: &Partition, alpha: Residue, p: u32) -> Result<GrothendieckSum> {
    let h = lambda.height();
    if !is_big(lambda, p) || !lambda.is_p_regular(p) {
        return Err(violated(format!("{lambda} is not big")));
    }
    if 2 * h < p as usize + 3 {
        return Err(violated(format!("height {h} below (p+3)/2")));
    }
    if h21(lambda) == p as usize - 1 {
        return Err(violated("h_{2,1}(lambda) = p-1"));
    }
    if excluded_residue(lambda, alpha, p) {
        return Err(violated("lambda_1 = -h(lambda) = alpha"));
    }
    let lt = tilde(lambda, p)?;
    if !lt.is_p_regular(p) {
        return Err(violated(format!("{lt} is not {p}-regular")));
    }
    let (a, b) = exactly_two(&conormal(&lt, alpha, p), "conormal")?;
    let mut sum = GrothendieckSum::new(p, Basis::Simple, Provenance::Proved);
    sum.add(lt.add_node(a)?, 2)?;
    sum.add(lt.add_node(b)?, 1)?;
    Ok(sum)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Conjecture {
    /// `[Ind^α D^{λ̃}]` for big `λ`.
    C1,
    /// `[Res_α D^{λ^A}]` for completely splittable `λ` with `χ(λ) = p`.
    C2,
    /// `[Ind^{-3} D^{λ̃}]` for height 3 and `h_{1,1}(λ) = 2p-1`.
    C3,
}

fn eps(pattern: &[(usize, i64)], len: usize) -> Vec<i64> {
    let mut e = vec![0; len];
    for &(k, v) in pattern {
        e[k] = v;
    }
    e
}

/// The predicted sum. `alpha` may be omitted for `C3`, where it is `-3`.
pub fn conjecture_sum(which: Conjecture, lambda: &Partition, alpha: Option<Residue>, p: u32) -> Result<GrothendieckSum> {
    let pu = p as usize;
    let h = lambda.height();
    let mut sum = GrothendieckSum::new(p, Basis::Simple, Provenance::Predicted);
    if !lambda.is_p_regular(p) {
        return Err(violated(format!("{lambda} is not {p}-regular")));
    }
    match which {
        Conjecture::C1 => {
            let alpha = alpha.ok_or_else(|| violated("alpha is required"))?;
            if !is_big(lambda, p) {
                return Err(violated(format!("{lambda} is not big")));
            }
            if excluded_residue(lambda, alpha, p) {
                return Err(violated("lambda_1 = -h(lambda) = alpha"));
            }
            let lt = tilde(lambda, p)?;
            if !lt.is_p_regular(p) {
                return Err(violated(format!("{lt} is not {p}-regular")));
            }
            let (a, b) = exactly_two(&conormal(&lt, alpha, p), "conormal")?;
            let la = lt.add_node(a)?;
            sum.add(la.clone(), 2)?;
            sum.add(lt.add_node(b)?, 1)?;
            if h21(lambda) == pu - 1 {
                let extra: Vec<Vec<i64>> = match h {
                    2 => vec![vec![-2, 2]],
                    3 => vec![vec![0, -1, 1], vec![1, -1, 0]],
                    _ => vec![eps(&[(1, -1), (h - 1, 1)], h), eps(&[(1, -1), (h - 2, 1)], h)],
                };
                for e in extra {
                    sum.add(h_epsilon(&la, &e, p)?, 1)?;
                }
            }
        }
        Conjecture::C2 => {
            let alpha = alpha.ok_or_else(|| violated("alpha is required"))?;
            if !is_completely_splittable(lambda, p) || lambda.chi() != pu || h < 2 {
                return Err(violated(format!("{lambda} is not completely splittable with chi = p")));
            }
            let a = Node::new(1, lambda.part(1) as i64 + 1);
            let lambda_a = lambda.add_node(a)?;
            let nodes = normal(&lambda_a, alpha, p);
            if nodes.len() < 2 {
                return Err(violated(format!("{lambda_a} has fewer than two normal nodes of residue {alpha}")));
            }
            let x = u64::from(h21(lambda) >= pu);
            sum.add(tilde(lambda, p)?, 2)?;
            sum.add(lambda.clone(), 1)?;
            if h > 2 {
                sum.add(h_epsilon(lambda, &eps(&[(0, -1), (h - 2, 1)], h), p)?, 1)?;
                if x == 1 {
                    sum.add(h_epsilon(lambda, &eps(&[(1, -1), (h - 1, 1)], h), p)?, 1)?;
                }
            } else if x == 1 {
                sum.add(h_epsilon(lambda, &[1, -1], p)?, 1)?;
            }
        }
        Conjecture::C3 => {
            let minus3 = Residue::new(-3, p);
            if alpha.is_some_and(|a| a != minus3) {
                return Err(violated("alpha must be -3"));
            }
            if !is_completely_splittable(lambda, p) || h != 3 || h11(lambda) != 2 * pu - 1 {
                return Err(violated(format!("{lambda} needs height 3 and h_{{1,1}} = 2p-1")));
            }
            let lt = tilde(lambda, p)?;
            let la = lt.add_node(Node::new(3, lt.part(3) as i64 + 1))?;
            let lb = lt.add_node(Node::new(4, 1))?;
            sum.add(la.clone(), 2)?;
            sum.add(lb, 1)?;
            sum.add(h_epsilon(&la, &[0, 1, -1], p)?, 1)?;
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::is_completely_splittable;
    use crate::partition::{partitions_up_to, ResidueContent};

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn simple(p: u32, prov: Provenance, terms: &[(&str, u64)]) -> GrothendieckSum {
        let mut s = GrothendieckSum::new(p, Basis::Simple, prov);
        for &(l, m) in terms {
            s.add(part(l), m).unwrap();
        }
        s
    }

    fn content_plus(lambda: &Partition, alpha: Residue, p: u32, sign: i64) -> Vec<i64> {
        let c: &ResidueContent = &lambda.residue_content(p);
        let mut v: Vec<i64> = c.counts().iter().map(|&x| x as i64).collect();
        v[alpha.value() as usize] += sign;
        v
    }

    fn content_of(l: &Partition, p: u32) -> Vec<i64> {
        l.residue_content(p).counts().iter().map(|&x| x as i64).collect()
    }

    #[test]
    fn sum_basics() {
        let a = simple(5, Provenance::Proved, &[("2,1", 2), ("3", 1)]);
        let b = simple(5, Provenance::Proved, &[("3", 1), ("2,1", 1), ("2,1", 1)]);
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "2D(2,1)+D(3)");
        let c = simple(5, Provenance::Predicted, &[("3", 1), ("2,1", 2)]);
        assert_ne!(a, c);
        assert!(a.same_terms(&c));
        let mut s = GrothendieckSum::new(2, Basis::Simple, Provenance::Proved);
        assert!(matches!(s.add(part("1,1"), 1), Err(Error::TermNotPRegular(_))));
        s.add(part("2"), 1).unwrap();
        assert!(matches!(s.add(part("3"), 1), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn simple_branch_examples() {
        let r = simple_branch(&part("2"), Residue::new(1, 2), Direction::Res, 2).unwrap();
        assert_eq!(r, SimpleBranch::Simple(part("1")));
        // (3) at p=5 has conormal nodes of residues 3 and 4 only.
        let z = simple_branch(&part("3"), Residue::new(0, 5), Direction::Ind, 5).unwrap();
        assert_eq!(z, SimpleBranch::Zero);
        let u = simple_branch(&part("6,4,2,1"), Residue::new(3, 7), Direction::Ind, 7).unwrap();
        assert_eq!(u, SimpleBranch::Undetermined(vec![Node::new(2, 5), Node::new(5, 1)]));
    }

    #[test]
    fn ind_cs_examples() {
        let s = ind_completely_splittable(&part("1"), Residue::new(1, 2), 2).unwrap();
        assert_eq!(s, simple(2, Provenance::Proved, &[("2", 2)]));
        let s = ind_completely_splittable(&part("1,1,1,1"), Residue::new(1, 5), 5).unwrap();
        assert_eq!(s, simple(5, Provenance::Proved, &[("2,1,1,1", 2), ("3,1,1", 1)]));
        let s = ind_completely_splittable(&part("4"), Residue::new(-1, 5), 5).unwrap();
        assert_eq!(s, simple(5, Provenance::Proved, &[("5", 2), ("4,1", 1)]));
        // h_{1,1} = p-1 away from the two exceptions brings in the tilde term.
        let s = ind_completely_splittable(&part("3,1"), Residue::new(3, 5), 5).unwrap();
        assert_eq!(s.terms().len(), 3);
        assert_eq!(s.multiplicity(&tilde(&part("4,1"), 5).unwrap()), 1);
        assert!(matches!(
            ind_completely_splittable(&part("3"), Residue::new(0, 5), 5),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn conjecture_examples() {
        let c1 = conjecture_sum(Conjecture::C1, &part("5,4,2,2"), Some(Residue::new(3, 7)), 7).unwrap();
        let want = simple(7, Provenance::Predicted, &[("6,5,2,1", 2), ("6,4,2,1,1", 1), ("6,6,2", 1), ("7,7", 1)]);
        assert_eq!(c1, want);
        let c2 = conjecture_sum(Conjecture::C2, &part("5,5,3"), Some(Residue::new(0, 5)), 5).unwrap();
        let want = simple(5, Provenance::Predicted, &[("6,5,2", 2), ("5,5,3", 1), ("9,2,2", 1), ("6,6,1", 1)]);
        assert_eq!(c2, want);
        let c3 = conjecture_sum(Conjecture::C3, &part("7,6,6"), None, 5).unwrap();
        let want = simple(5, Provenance::Predicted, &[("9,6,5", 2), ("9,6,4,1", 1), ("10,10", 1)]);
        assert_eq!(c3, want);
        assert!(conjecture_sum(Conjecture::C3, &part("7,6,6"), Some(Residue::new(0, 5)), 5).is_err());
    }

    #[test]
    fn ind_big_tilde_preconditions() {
        // p=5, H=4: (3,2,2,2) is big with h_{2,1} = 4 = p-1.
        let l = part("3,2,2,2");
        assert!(is_big(&l, 5));
        assert!(matches!(ind_big_tilde(&l, Residue::new(0, 5), 5), Err(Error::PreconditionViolated(_))));
        // λ_1 ≡ -H ≡ α is excluded.
        let l = part("1,1,1,1");
        assert!(matches!(ind_big_tilde(&l, Residue::new(1, 5), 5), Err(Error::PreconditionViolated(_))));
    }

    /// Theorems and conjectures over every admissible input: exactly two nodes,
    /// p-regular constituents, residue content, and the A-term dominating the B-term.
    #[test]
    fn exhaustive_invariants() {
        let mut seen = [0usize; 4];
        for p in [3u32, 5, 7] {
            for l in partitions_up_to(30) {
                if !is_completely_splittable(&l, p) || !l.is_p_regular(p) {
                    continue;
                }
                for r in 0..p {
                    let alpha = Residue::new(r as i64, p);
                    if conormal(&l, alpha, p).len() > 1 {
                        let s = ind_completely_splittable(&l, alpha, p).unwrap();
                        seen[0] += 1;
                        assert!(s.total() >= 2, "{l} {alpha}");
                        let want = content_plus(&l, alpha, p, 1);
                        for (t, _) in s.terms() {
                            assert_eq!(content_of(t, p), want, "{l} {t}");
                        }
                        let (top, _) = &s.terms()[0];
                        assert_eq!(s.multiplicity(top), 2);
                        // The (1^{p-1}) exception is the sign twist of the row case and reverses the order.
                        if s.terms().len() > 1 && l != Partition::from_parts(ones(p as usize - 1)) {
                            assert!(top.dominates(&s.terms()[1].0), "{l} {alpha} p={p}: {s}");
                        }
                    }
                    if l != Partition::from_parts(ones(p as usize - 1)) {
                        let lb = l.add_node(Node::new(l.height() as i64 + 1, 1)).unwrap();
                        let nn = normal(&lb, alpha, p);
                        if nn.len() > 1 && nn.contains(&Node::new(l.height() as i64 + 1, 1)) {
                            let r = res_bottom_added(&l, alpha, p).unwrap();
                            seen[1] += 1;
                            assert_eq!(content_of(&r.lambda_b, p), content_plus(&r.lambda_a, alpha, p, 2));
                        }
                    }
                    if is_big(&l, p) && !excluded_residue(&l, alpha, p) {
                        let lt = tilde(&l, p).unwrap();
                        if lt.is_p_regular(p) && conormal(&lt, alpha, p).len() > 1 {
                            let s = conjecture_sum(Conjecture::C1, &l, Some(alpha), p).unwrap();
                            seen[2] += 1;
                            let want = content_plus(&lt, alpha, p, 1);
                            for (t, _) in s.terms() {
                                assert_eq!(content_of(t, p), want, "{l} {t}");
                            }
                            if 2 * l.height() >= p as usize + 3 && h21(&l) != p as usize - 1 {
                                let t = ind_big_tilde(&l, alpha, p).unwrap();
                                assert_eq!(t.total(), 3);
                                seen[3] += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(seen.iter().all(|&c| c > 0), "{seen:?}");
    }
}

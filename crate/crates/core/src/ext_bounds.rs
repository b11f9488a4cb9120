//! Indicator functions, the predicate `π(H,x,i)`, the `U` recursion and
//! the Ext¹ classifications for (almost) completely splittable partitions.

use std::collections::HashMap;
use std::fmt;
use std::ops::Add;

use crate::abacus::node_classification;
use crate::error::{Error, Result};
use crate::families::{
    acs_preimage, apply_h_epsilon, h_epsilon, is_big, is_completely_splittable, lambda_family, lambda_family_abacus,
    lambda_hx, tilde,
};
use crate::mullineux::mullineux;
use crate::partition::{epsilon_n, Node, Partition};

/// An element of `Z ∪ {+∞}` restricted to nonnegative values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Finite(u64),
    Infinite,
}

impl Add for Bound {
    type Output = Bound;

    fn add(self, rhs: Bound) -> Bound {
        match (self, rhs) {
            (Bound::Finite(a), Bound::Finite(b)) => Bound::Finite(a + b),
            _ => Bound::Infinite,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Infinite => write!(f, "inf"),
        }
    }
}

/// The single node of `big` outside `small`, if `small ⊂ big` differ by one node.
fn extra_node(big: &Partition, small: &Partition) -> Option<Node> {
    if big.size() != small.size() + 1 || big.height() > small.height() + 1 {
        return None;
    }
    let mut found = None;
    for i in 1..=big.height() {
        match big.part(i) as i64 - small.part(i) as i64 {
            0 => {}
            1 if found.is_none() => found = Some(Node::new(i as i64, big.part(i) as i64)),
            _ => return None,
        }
    }
    found
}

/// `ε(λ, μ)`: 1 if `λ = μ^B` for a μ-conormal node `B`.
pub fn epsilon_indicator(lambda: &Partition, mu: &Partition, p: u32) -> u8 {
    match extra_node(lambda, mu) {
        Some(b) => node_classification(mu, p).conormal_of(b.residue(p)).contains(&b) as u8,
        None => 0,
    }
}

/// `γ(μ, λ)`: 1 if `μ = λ_A` for a λ-normal node `A`.
pub fn gamma_indicator(mu: &Partition, lambda: &Partition, p: u32) -> u8 {
    match extra_node(lambda, mu) {
        Some(a) => node_classification(lambda, p).normal_of(a.residue(p)).contains(&a) as u8,
        None => 0,
    }
}

/// `m·[(p-h+x-1)/(p-m)]` and `H-Q-1+h·[(x-Q-1)/(p-H+1)]+(R-1)·[(x-Q-2)/(p-H+1)]`.
fn floor_sides(h_big: i64, x: i64, i: i64, p: i64) -> (i64, i64) {
    let (q, r) = (x.div_euclid(h_big), x.rem_euclid(h_big));
    let h = h_big - r;
    let m = i.max(i + h - x);
    let lhs = m * (p - h + x - 1).div_euclid(p - m);
    let d = p - h_big + 1;
    let rhs = h_big - q - 1 + h * (x - q - 1).div_euclid(d) + (r - 1) * (x - q - 2).div_euclid(d);
    (lhs, rhs)
}

/// `π(H, x, i)`.
pub fn pi_predicate(h_big: i64, x: i64, i: i64, p: u32) -> bool {
    let pi = p as i64;
    if !(2 < h_big && h_big < pi && x > 2 && x % h_big != 0) {
        return false;
    }
    let h = h_big - x % h_big;
    if !(0 < i && i <= x && i <= h) {
        return false;
    }
    let (lhs, rhs) = floor_sides(h_big, x, i, pi);
    lhs >= rhs
}

/// `ε(H,x,i) = ((-Q-1)^R, (-Q)^{h-i}, (q-Q)^{i-r}, (q+1-Q)^r)`.
pub fn epsilon_seq(h_big: i64, x: i64, i: i64, p: u32) -> Result<Vec<i64>> {
    if !pi_predicate(h_big, x, i, p) {
        return Err(Error::PiNotSatisfied(h_big, x, i));
    }
    let (big_q, big_r) = (x / h_big, x % h_big);
    let h = h_big - big_r;
    let (q, r) = (x / i, x % i);
    let mut eps = Vec::with_capacity(h_big as usize);
    eps.extend(std::iter::repeat(-big_q - 1).take(big_r as usize));
    eps.extend(std::iter::repeat(-big_q).take((h - i) as usize));
    eps.extend(std::iter::repeat(q - big_q).take((i - r) as usize));
    eps.extend(std::iter::repeat(q + 1 - big_q).take(r as usize));
    Ok(eps)
}

/// Checks `H_{ε(H,x,i)}(Λ^(H,x)) = -R + Λ^(h,i,x)` on abaci.
pub fn epsilon_identity_holds(h_big: i64, x: i64, i: i64, p: u32) -> Result<bool> {
    let eps = epsilon_seq(h_big, x, i, p)?;
    let r = x % h_big;
    let h = h_big - r;
    let left = apply_h_epsilon(&lambda_family_abacus(h_big as usize, h_big as usize, x as usize, p)?, &eps, p)?;
    let right = lambda_family_abacus(h as usize, i as usize, x as usize, p)?.translate(-r);
    Ok(left == right)
}

/// Both conditions of the equivalence for `m(λ̃^(H,x))` and `m(λ^(h,i,x))`.
///
/// The first is computed with the generic Mullineux map, the second by
/// floor arithmetic.
pub fn thm66_both_sides(p: u32, h_big: i64, x: i64, i: i64) -> Result<(bool, bool)> {
    let pi = p as i64;
    if !(1 < h_big && h_big < pi && x > 0 && x % h_big != 0) {
        return Err(Error::BadParams(format!("need 1<H<p, H∤x, got H={h_big} x={x}")));
    }
    let h = h_big - x % h_big;
    if !(0 < i && i <= x.min(h)) {
        return Err(Error::BadParams(format!("need 0<i<=min(x,h), got i={i} x={x} h={h}")));
    }
    let lam = lambda_hx(h_big as usize, x as usize, p)?;
    if !is_big(&lam, p) {
        return Err(Error::NotBig(lam.to_string()));
    }
    let left = mullineux(&tilde(&lam, p)?, p)?;
    let right = mullineux(&lambda_family(h as usize, i as usize, x as usize, p)?, p)?;
    let (lhs, rhs) = floor_sides(h_big, x, i, pi);
    Ok((right.dominates(&left), lhs >= rhs))
}

/// The pair `(ν, μ)` is minimal.
pub fn is_minimal_pair(nu: &Partition, mu: &Partition, p: u32) -> bool {
    if acs_preimage(nu, p).is_none() || !mu.is_p_regular(p) || nu.strictly_dominates(mu) || !nu.same_content(mu, p) {
        return false;
    }
    let nu_sets = node_classification(nu, p);
    node_classification(mu, p).good_nodes().into_iter().all(|(r, _)| match nu_sets.good_of(r) {
        Some(b) => acs_preimage(&nu.remove_node(b).expect("good node is removable"), p).is_none(),
        None => false,
    })
}

/// Which set `X` the recursion runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `λ` completely splittable, `λ ⋭ μ`.
    CompletelySplittable,
    /// `ν` almost completely splittable, `ν ⋫ μ`, with `ζ`.
    AlmostCompletelySplittable,
}

/// Memoized evaluation of `U` for one prime and one variant.
pub struct UBound {
    p: u32,
    variant: Variant,
    memo: HashMap<(Partition, Partition), Bound>,
}

impl UBound {
    pub fn new(p: u32, variant: Variant) -> Self {
        UBound { p, variant, memo: HashMap::new() }
    }

    /// Membership in `X`; `(∅, ∅)` is always admitted as the base case.
    pub fn in_x(&self, a: &Partition, mu: &Partition) -> bool {
        let p = self.p;
        if a.is_empty() && mu.is_empty() {
            return true;
        }
        if !mu.is_p_regular(p) || !a.same_content(mu, p) {
            return false;
        }
        match self.variant {
            Variant::CompletelySplittable => is_completely_splittable(a, p) && !a.dominates(mu),
            Variant::AlmostCompletelySplittable => acs_preimage(a, p).is_some() && !a.strictly_dominates(mu),
        }
    }

    pub fn eval(&mut self, a: &Partition, mu: &Partition) -> Result<Bound> {
        if !self.in_x(a, mu) {
            return Err(Error::NotInX(format!("({a}), ({mu})")));
        }
        Ok(self.rec(a, mu))
    }

    fn rec(&mut self, a: &Partition, mu: &Partition) -> Bound {
        if a.is_empty() && mu.is_empty() {
            return Bound::Finite(0);
        }
        let key = (a.clone(), mu.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let p = self.p;
        let mut best = match self.variant {
            Variant::AlmostCompletelySplittable => zeta(a, mu, p),
            Variant::CompletelySplittable => Bound::Infinite,
        };
        let a_sets = node_classification(a, p);
        for (r, node) in node_classification(mu, p).good_nodes() {
            let mu_a = mu.remove_node(node).expect("good node is removable");
            let eps = Bound::Finite(epsilon_indicator(a, &mu_a, p) as u64);
            let m = match a_sets.good_of(r) {
                None => eps,
                Some(b) => {
                    let a_b = a.remove_node(b).expect("good node is removable");
                    if self.in_x(&a_b, &mu_a) {
                        self.rec(&a_b, &mu_a) + eps
                    } else {
                        Bound::Infinite
                    }
                }
            };
            best = best.min(m);
        }
        self.memo.insert(key, best);
        best
    }
}

/// `ζ(ν, μ)` for the almost completely splittable recursion.
pub fn zeta(nu: &Partition, mu: &Partition, p: u32) -> Bound {
    if !mu.strictly_dominates(nu) {
        return Bound::Finite(0);
    }
    if !is_minimal_pair(nu, mu, p) {
        return Bound::Infinite;
    }
    let pu = p as usize;
    let exceptional = (Partition::from_parts(vec![pu * pu, pu * pu - pu]), Partition::from_parts(vec![2 * pu * pu - pu]));
    if (nu, mu) == (&exceptional.0, &exceptional.1) {
        return Bound::Finite(1);
    }
    let Some(lam) = acs_preimage(nu, p) else { return Bound::Infinite };
    let h_big = lam.height();
    if h_big > 2 {
        let two = lambda_hx(h_big, 2, p).ok().filter(|l| is_big(l, p)).and_then(|l| tilde(&l, p).ok());
        if two.as_ref() == Some(nu) && lambda_family(h_big - 2, h_big - 2, 2, p).ok().as_ref() == Some(mu) {
            return Bound::Finite(1);
        }
    }
    if pi_case(nu, mu, p).is_some() {
        Bound::Infinite
    } else {
        Bound::Finite(0)
    }
}

/// `(H, x, i)` with `ν = λ̃^(H,x)`, `μ = λ^(H-rem(x,H),i,x)` and `π(H,x,i)`.
fn pi_case(nu: &Partition, mu: &Partition, p: u32) -> Option<(i64, i64, i64)> {
    let n = nu.size();
    if n % p as usize != 0 {
        return None;
    }
    let x = n / p as usize;
    let lam = acs_preimage(nu, p)?;
    let h_big = lam.height();
    if lambda_hx(h_big, x, p).ok()? != lam {
        return None;
    }
    let h = h_big - x % h_big.max(1);
    (1..=x.min(h)).find_map(|i| {
        let ok = pi_predicate(h_big as i64, x as i64, i as i64, p) && lambda_family(h, i, x, p).ok().as_ref() == Some(mu);
        ok.then_some((h_big as i64, x as i64, i as i64))
    })
}

/// `dim Ext¹(D^λ, D^μ)` for completely splittable `λ`.
pub fn ext_dim_cs(lambda: &Partition, mu: &Partition, p: u32) -> Result<u8> {
    if p <= 2
        || !is_completely_splittable(lambda, p)
        || lambda.strictly_dominates(mu)
        || !lambda.is_p_regular(p)
        || !mu.is_p_regular(p)
        || lambda.size() != mu.size()
    {
        return Err(Error::PreconditionViolated(format!("ext_dim_cs({lambda}; {mu}) at p={p}")));
    }
    let hit = is_big(lambda, p) && tilde(lambda, p).ok().as_ref() == Some(mu);
    Ok(hit as u8)
}

/// The kinds of outcome of the almost completely splittable classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtKind {
    Zero,
    AtMostOneCase1,
    AtMostOneCase2,
    AtMostOneCase3,
    CaseFour,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtClassification {
    pub kind: ExtKind,
    pub epsilon: Option<Vec<i64>>,
    pub params: Option<(i64, i64, i64)>,
}

impl ExtClassification {
    fn zero() -> Self {
        ExtClassification { kind: ExtKind::Zero, epsilon: None, params: None }
    }
}

/// The sequences `ε` listed for height `H` in cases 1 to 3.
pub fn listed_epsilons(h_big: usize, p: u32) -> (ExtKind, Vec<Vec<i64>>) {
    let pi = p as i64;
    match h_big {
        0 | 1 => (ExtKind::Zero, Vec::new()),
        2 => (ExtKind::AtMostOneCase1, vec![vec![1, -1], vec![-pi, pi]]),
        3 => (ExtKind::AtMostOneCase2, vec![vec![0, -1, 1], vec![-1, 1, 0], vec![-1, -1, 2]]),
        _ => {
            let z = |k: usize| std::iter::repeat(0).take(k);
            let a: Vec<i64> = [0, -1].into_iter().chain(z(h_big - 3)).chain([1]).collect();
            let b: Vec<i64> = [-1].into_iter().chain(z(h_big - 3)).chain([1, 0]).collect();
            let c: Vec<i64> = [-1, -1].into_iter().chain(z(h_big - 4)).chain([1, 1]).collect();
            (ExtKind::AtMostOneCase3, vec![a, b, c])
        }
    }
}

/// Which case of the classification `(ν, μ)` falls under; `Zero` means Ext¹ vanishes.
pub fn ext_upper_acs(nu: &Partition, mu: &Partition, p: u32) -> Result<ExtClassification> {
    let pre = || Error::PreconditionViolated(format!("ext_upper_acs({nu}; {mu}) at p={p}"));
    let lam = acs_preimage(nu, p).ok_or_else(pre)?;
    if nu.strictly_dominates(mu) || !nu.is_p_regular(p) || !mu.is_p_regular(p) || nu.size() != mu.size() {
        return Err(pre());
    }
    if !nu.same_content(mu, p) {
        return Ok(ExtClassification::zero());
    }
    let h_big = lam.height();
    let (kind, list) = listed_epsilons(h_big, p);
    for eps in list {
        if h_epsilon(&lam, &eps, p).ok().as_ref() == Some(mu) {
            return Ok(ExtClassification { kind, epsilon: Some(eps), params: None });
        }
    }
    let n = nu.size();
    if n % p as usize == 0 {
        let x = (n / p as usize) as i64;
        let hb = h_big as i64;
        for i in 1..=x {
            if !pi_predicate(hb, x, i, p) {
                continue;
            }
            let eps = epsilon_seq(hb, x, i, p)?;
            if h_epsilon(&lam, &eps, p).ok().as_ref() == Some(mu) {
                return Ok(ExtClassification { kind: ExtKind::CaseFour, epsilon: Some(eps), params: Some((hb, x, i)) });
            }
        }
    }
    Ok(ExtClassification::zero())
}

/// All `(x, i, ε(H,x,i))` with `x ≤ x_max` and `π(H,x,i)`, for `(p+3)/2 ≤ H < p`.
pub fn lemma82_enumerate(h_big: i64, p: u32, x_max: i64) -> Result<Vec<(i64, i64, Vec<i64>)>> {
    let pi = p as i64;
    if !(2 * h_big >= pi + 3 && h_big < pi) {
        return Err(Error::BadH(h_big));
    }
    let mut out = Vec::new();
    for x in 1..=x_max {
        for i in 1..=x {
            if pi_predicate(h_big, x, i, p) {
                out.push((x, i, epsilon_seq(h_big, x, i, p)?));
            }
        }
    }
    Ok(out)
}

/// `(-Q-1, q̄^{H-1-r}, (q̄+1)^r)` with `q̄ = quo(Q+1, H-1)`, `r = rem(Q+1, H-1)`.
pub fn lemma82_epsilon(h_big: i64, big_q: i64) -> Vec<i64> {
    let (qb, r) = ((big_q + 1) / (h_big - 1), (big_q + 1) % (h_big - 1));
    let mut eps = vec![-big_q - 1];
    eps.extend(std::iter::repeat(qb).take((h_big - 1 - r) as usize));
    eps.extend(std::iter::repeat(qb + 1).take(r as usize));
    eps
}

/// `dim Ext¹(S^λ, D^μ)` for `h(λ) < p`: 1 iff `λ = μ = ε_n` and `n ≥ p`.
pub fn ext_specht_simple_indicator(lambda: &Partition, mu: &Partition, p: u32, n: usize) -> Result<u8> {
    if p <= 2
        || lambda.height() >= p as usize
        || !mu.is_p_regular(p)
        || lambda.strictly_dominates(mu)
        || lambda.size() != n
        || mu.size() != n
    {
        return Err(Error::PreconditionViolated(format!("ext_specht_simple({lambda}; {mu}) at p={p}")));
    }
    let e = epsilon_n(n, p);
    Ok((lambda == &e && mu == &e && n >= p as usize) as u8)
}

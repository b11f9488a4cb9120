//! Bead-move operations and the named families of abaci.
//!
//! Covers `H_ε`, big partitions and `λ̃`, almost completely splittable
//! partitions, `Λ^(h,i,x)`, `N^(H,x)`, `M^(h,i,x)` and staircases.

use std::collections::BTreeSet;

use crate::abacus::{node_classification, window, Abacus};
use crate::error::{Error, Result};
use crate::hooks::p_core;
use crate::mullineux::mullineux;
use crate::partition::Partition;

/// Moves beads `from -> to` simultaneously; `None` if the result is not an abacus.
fn relocate(abacus: &Abacus, moves: &[(i64, i64)]) -> Option<Abacus> {
    let lo = moves.iter().flat_map(|&(a, b)| [a, b]).fold(abacus.full_below(), i64::min);
    let mut set: BTreeSet<i64> = (lo..abacus.full_below()).chain(abacus.proper_beads().iter().copied()).collect();
    for &(from, _) in moves {
        if !set.remove(&from) {
            return None;
        }
    }
    for &(_, to) in moves {
        if !set.insert(to) {
            return None;
        }
    }
    Some(Abacus::new(lo, set))
}

/// `H_ε(Λ)`: moves `b^Λ(i)` to `b^Λ(i) + pε_i`.
pub fn apply_h_epsilon(abacus: &Abacus, eps: &[i64], p: u32) -> Result<Abacus> {
    let pi = p as i64;
    let moves: Vec<(i64, i64)> = abacus.beads_desc().zip(eps).map(|(b, &e)| (b, b + pi * e)).collect();
    relocate(abacus, &moves).ok_or(Error::NotApplicable)
}

/// `H_ε(λ)`, computed on the shift-0 abacus.
pub fn h_epsilon(lambda: &Partition, eps: &[i64], p: u32) -> Result<Partition> {
    Ok(apply_h_epsilon(&Abacus::from_partition(lambda, 0), eps, p)?.to_partition())
}

/// `χ(λ) ≤ p`.
pub fn is_completely_splittable(lambda: &Partition, p: u32) -> bool {
    lambda.chi() <= p as usize
}

/// Completely splittable of height `|ε|` with `H_ε` applicable.
pub fn is_epsilon_big(lambda: &Partition, eps: &[i64], p: u32) -> bool {
    is_completely_splittable(lambda, p) && lambda.height() == eps.len() && h_epsilon(lambda, eps, p).is_ok()
}

/// `(-1, 0^{h-2}, 1)`.
pub fn big_eps(h: usize) -> Vec<i64> {
    let mut eps = vec![0; h.max(2)];
    eps[0] = -1;
    eps[h.max(2) - 1] = 1;
    eps
}

/// Big: completely splittable, height above one and `h_{1,1}(λ) ≥ p`.
pub fn is_big(lambda: &Partition, p: u32) -> bool {
    lambda.height() > 1
        && is_completely_splittable(lambda, p)
        && lambda.part(1) + lambda.height() - 1 >= p as usize
}

/// Abacus form of bigness: proper, `b^Λ > b_Λ > b^Λ - p` and `b^Λ` movable up.
pub fn is_big_abacus(abacus: &Abacus, p: u32) -> bool {
    let pi = p as i64;
    if !abacus.is_proper() {
        return false;
    }
    let top = abacus.greatest_bead();
    let bottom = abacus.proper_beads()[0];
    top > bottom && bottom > top - pi && !abacus.is_bead(top - pi)
}

/// `λ̃ = H_{(-1,0^{h-2},1)}(λ)`.
pub fn tilde(lambda: &Partition, p: u32) -> Result<Partition> {
    if !is_big(lambda, p) {
        return Err(Error::NotBig(lambda.to_string()));
    }
    h_epsilon(lambda, &big_eps(lambda.height()), p)
}

/// `(λ_h - h + p + 1, λ_2, ..., λ_{h-1}, λ_1 + h - p - 1)`.
pub fn tilde_closed_form(lambda: &Partition, p: u32) -> Result<Partition> {
    if !is_big(lambda, p) {
        return Err(Error::NotBig(lambda.to_string()));
    }
    let h = lambda.height() as i64;
    let p = p as i64;
    let mut parts: Vec<i64> = lambda.parts().iter().map(|&v| v as i64).collect();
    let (first, last) = (parts[0], parts[h as usize - 1]);
    parts[0] = last - h + p + 1;
    parts[h as usize - 1] = first + h - p - 1;
    Partition::new(&parts)
}

/// The preimage `λ` with `λ̃ = ν`, if `ν` is almost completely splittable.
pub fn acs_preimage(nu: &Partition, p: u32) -> Option<Partition> {
    let m = Abacus::from_partition(nu, 0);
    if !m.is_proper() {
        return None;
    }
    let pi = p as i64;
    let a = m.greatest_bead();
    let b = if is_completely_splittable(nu, p) { m.greatest_improper_bead() } else { m.proper_beads()[0] };
    let lambda = relocate(&m, &[(a, a - pi), (b, b + pi)])?.to_partition();
    (is_big(&lambda, p) && tilde(&lambda, p).ok().as_ref() == Some(nu)).then_some(lambda)
}

pub fn is_almost_completely_splittable(nu: &Partition, p: u32) -> bool {
    acs_preimage(nu, p).is_some()
}

fn residues(range: std::ops::Range<u32>) -> Vec<u32> {
    range.collect()
}

/// `Λ^(h,i,x) = (-∞,0) ∪ ⟨0,[0,i),x⟩ ∪ [i,h)`, of shift `h`.
pub fn lambda_family_abacus(h: usize, i: usize, x: usize, p: u32) -> Result<Abacus> {
    if !(0 < i && i <= h && h < p as usize) {
        return Err(Error::BadParams(format!("need 0<i<=h<p, got h={h} i={i} p={p}")));
    }
    let mut beads = window(0, &residues(0..i as u32), x, p)?;
    beads.extend(i as i64..h as i64);
    Ok(Abacus::new(0, beads))
}

pub fn lambda_family(h: usize, i: usize, x: usize, p: u32) -> Result<Partition> {
    Ok(lambda_family_abacus(h, i, x, p)?.to_partition())
}

/// `λ^(H,x) = λ^(H,H,x)`.
pub fn lambda_hx(h: usize, x: usize, p: u32) -> Result<Partition> {
    lambda_family(h, h, x, p)
}

fn nu_sets(h: usize, x: usize, p: u32) -> Result<(usize, usize, Vec<u32>, Vec<u32>)> {
    if !(1 < h && h < p as usize && x > 0 && x % h != 0) {
        return Err(Error::BadParams(format!("need 1<H<p, x>0, H∤x, got H={h} x={x} p={p}")));
    }
    let (q, r) = (x / h, x % h);
    let hole = (h - r) as u32;
    let s1 = (0..p).filter(|&c| c != hole).collect();
    let s2 = std::iter::once(hole).chain(h as u32..p).collect();
    Ok((q, r, s1, s2))
}

/// `N^(H,x) = (-∞,H) ∪ ⟨H,S₁,Q⟩ ∪ ⟨p+H-R,S₂,x-Q⟩`, of shift `2p`.
pub fn nu_family_abacus(h: usize, x: usize, p: u32) -> Result<Abacus> {
    let (q, r, s1, s2) = nu_sets(h, x, p)?;
    let hi = h as i64;
    let mut beads = window(hi, &s1, q, p)?;
    beads.extend(window(p as i64 + hi - r as i64, &s2, x - q, p)?);
    Ok(Abacus::new(hi, beads))
}

pub fn nu_family(h: usize, x: usize, p: u32) -> Result<Partition> {
    Ok(nu_family_abacus(h, x, p)?.to_partition())
}

fn mu_params(h: usize, i: usize, x: usize, p: u32) -> Result<(usize, Vec<u32>)> {
    if !(0 < i && i <= h && h < p as usize && x >= i) {
        return Err(Error::BadParams(format!("need 0<i<=h<p, x>=i, got h={h} i={i} x={x} p={p}")));
    }
    let m = i.max(i + h - x.min(i + h));
    let s = (0..(h - m) as u32).chain(h as u32..p).collect();
    Ok((m, s))
}

/// `M^(h,i,x) = (-∞,p) ∪ [p+h-m,p+h) ∪ ⟨p,S,x⟩`, of shift `2p`.
pub fn mu_family_abacus(h: usize, i: usize, x: usize, p: u32) -> Result<Abacus> {
    let (m, s) = mu_params(h, i, x, p)?;
    let pi = p as i64;
    let mut beads: Vec<i64> = (pi + (h - m) as i64..pi + h as i64).collect();
    beads.extend(window(pi, &s, x, p)?);
    Ok(Abacus::new(pi, beads))
}

pub fn mu_family(h: usize, i: usize, x: usize, p: u32) -> Result<Partition> {
    Ok(mu_family_abacus(h, i, x, p)?.to_partition())
}

/// `a^(H,x)_y = H + y + [(R-1+y)/(p-1)]`.
pub fn a_index(h: i64, x: i64, y: i64, p: u32) -> i64 {
    let p = p as i64;
    let r = x.rem_euclid(h);
    h + y + (r - 1 + y).div_euclid(p - 1)
}

/// `b^(H,x)_y = p + H - 1 + y + (H-R)[y/(p-H+1)] + (R-1)[(y-1)/(p-H+1)]`.
pub fn b_index(h: i64, x: i64, y: i64, p: u32) -> i64 {
    let p = p as i64;
    let r = x.rem_euclid(h);
    let d = p - h + 1;
    p + h - 1 + y + (h - r) * y.div_euclid(d) + (r - 1) * (y - 1).div_euclid(d)
}

/// `c^(h,i,x)_y = p + y + m + m[(y+m-h)/(p-m)]`.
pub fn c_index(h: i64, i: i64, x: i64, y: i64, p: u32) -> i64 {
    let p = p as i64;
    let m = i.max(i + h - x);
    p + y + m + m * (y + m - h).div_euclid(p - m)
}

/// Parameters of `St(r₂,…,r_k; i₁,…,i_{k-1})`; both lists empty for `k = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StaircaseParams {
    pub rs: Vec<usize>,
    pub is: Vec<usize>,
}

impl StaircaseParams {
    pub fn new(rs: Vec<usize>, is: Vec<usize>) -> Self {
        StaircaseParams { rs, is }
    }

    /// `k`.
    pub fn k(&self) -> usize {
        self.rs.len() + 1
    }

    fn validate(&self, p: u32) -> Result<()> {
        let bad = |m: &str| Err(Error::BadParams(format!("staircase {self:?}: {m}")));
        if self.rs.len() != self.is.len() {
            return bad("rs and is differ in length");
        }
        if self.rs.first() == Some(&0) || self.rs.windows(2).any(|w| w[0] >= w[1]) {
            return bad("rs must be positive and strictly increasing");
        }
        if self.rs.last().is_some_and(|&r| r >= p as usize) {
            return bad("r_k must be below p");
        }
        if self.is.windows(2).any(|w| w[0] <= w[1]) {
            return bad("is must be strictly decreasing");
        }
        Ok(())
    }
}

/// `St(...)`: segments `[p·i_t + r_t, p·i_t + r_{t+1})` with `r₁ = 0`.
pub fn staircase_abacus(params: &StaircaseParams, p: u32) -> Result<Abacus> {
    params.validate(p)?;
    let pi = p as i64;
    let mut beads = Vec::new();
    let mut lo = 0i64;
    for (&r, &i) in params.rs.iter().zip(&params.is) {
        beads.extend(pi * i as i64 + lo..pi * i as i64 + r as i64);
        lo = r as i64;
    }
    Ok(Abacus::new(0, beads))
}

pub fn staircase(params: &StaircaseParams, p: u32) -> Result<Partition> {
    Ok(staircase_abacus(params, p)?.to_partition())
}

/// `e(st(...))` from the chain `1 = a₁ < … < a_l ≤ k-1`.
pub fn staircase_e(params: &StaircaseParams, p: u32) -> Result<usize> {
    params.validate(p)?;
    let k = params.k();
    // `St(r₂; 0)` is the empty abacus at another shift.
    if k == 1 || (k == 2 && params.is[0] == 0) {
        return Ok(0);
    }
    let p = p as usize;
    // `i` is 1-based in the chain rule.
    let i = |t: usize| params.is[t - 1];
    let mut a = 1;
    let mut l = 1;
    loop {
        if a + 1 <= k - 1 && i(a + 1) + 1 < i(a) {
            a += 1;
        } else if a + 2 <= k - 1 && i(a + 1) + 1 == i(a) {
            a += 2;
        } else {
            break;
        }
        l += 1;
    }
    let rk = params.rs[k - 2];
    Ok(if i(a) > 0 { p * l } else { p * (l - 1) + rk - 1 })
}

/// Staircase parameters of `λ`, or `None` if `λ` is not a staircase partition.
pub fn classify_staircase(lambda: &Partition, p: u32) -> Option<StaircaseParams> {
    let h = lambda.height();
    if h >= p as usize {
        return None;
    }
    let pi = p as i64;
    let abacus = Abacus::from_partition(lambda, h as i64);
    // Row of the unique bead on each runner `0..h`.
    let mut rows = vec![None; h];
    for &b in abacus.proper_beads() {
        let c = b.rem_euclid(pi) as usize;
        if c >= h || rows[c].is_some() {
            return None;
        }
        rows[c] = Some(b.div_euclid(pi));
    }
    let rows: Vec<i64> = rows.into_iter().collect::<Option<_>>()?;
    if rows.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    let (mut rs, mut is) = (Vec::new(), Vec::new());
    for c in 0..h {
        if c + 1 == h || rows[c + 1] != rows[c] {
            rs.push(c + 1);
            is.push(rows[c] as usize);
        }
    }
    if rs.len() == 1 && is[0] == 0 {
        return Some(StaircaseParams::new(Vec::new(), Vec::new()));
    }
    Some(StaircaseParams::new(rs, is))
}

/// `h(λ) < p`, empty core and all normal nodes of one residue.
pub fn solves_staircase_system(lambda: &Partition, p: u32) -> bool {
    if lambda.height() >= p as usize || !p_core(lambda, p).0.is_empty() {
        return false;
    }
    let sets = node_classification(lambda, p);
    sets.normal.iter().filter(|v| !v.is_empty()).count() <= 1
}

/// The staircase system plus `h(λ) + h(m(λ)) < 2p`.
pub fn solves_minimal_system(lambda: &Partition, p: u32) -> bool {
    if !solves_staircase_system(lambda, p) {
        return false;
    }
    match mullineux(lambda, p) {
        Ok(m) => lambda.height() + m.height() < 2 * p as usize,
        Err(_) => false,
    }
}

/// `(h, i, x)` with `λ = λ^(h,i,x)` and `i ≤ x`; `∅` reports as `(1, 1, 0)`.
pub fn classify_minimal(lambda: &Partition, p: u32) -> Option<(usize, usize, usize)> {
    let st = classify_staircase(lambda, p)?;
    let (rs, is) = (&st.rs, &st.is);
    let found = match rs.len() {
        0 => (1, 1, 0),
        1 => (rs[0], rs[0], is[0] * rs[0]),
        2 if is[1] == 0 => (rs[1], rs[0], is[0] * rs[0]),
        2 if is[1] >= 1 && is[1] + 1 == is[0] => (rs[1], rs[1], is[1] * rs[1] + rs[0]),
        3 if is[2] == 0 && is[1] >= 1 && is[1] + 1 == is[0] => (rs[2], rs[1], is[1] * rs[1] + rs[0]),
        _ => return None,
    };
    (lambda_family(found.0, found.1, found.2, p).ok().as_ref() == Some(lambda)).then_some(found)
}

//! Exhaustive verification sweeps shared by the CLI and the acceptance tests.
//!
//! Each sweep fans out with rayon and merges results in input order, so
//! reports are deterministic.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::abacus::{node_classification, Abacus};
use crate::error::Result;
use crate::ext_bounds::{
    epsilon_identity_holds, epsilon_seq, ext_dim_cs, lemma82_epsilon, pi_predicate, thm66_both_sides, Bound, UBound,
    Variant,
};
use crate::families::{
    classify_minimal, classify_staircase, is_big, is_completely_splittable, lambda_family, lambda_hx, mu_family,
    nu_family, solves_minimal_system, solves_staircase_system, staircase, tilde, tilde_closed_form, StaircaseParams,
};
use crate::hooks::{locally_highest_hooks, p_core};
use crate::mullineux::{mullineux, mullineux_symbol, MullineuxSymbol};
use crate::partition::{p_regular_partitions_of, partitions_of, partitions_up_to, Partition, Residue};

/// Outcome of one sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn from_items(name: impl Into<String>, items: Vec<Option<String>>) -> Self {
        let checked = items.len();
        let failures = items.into_iter().flatten().collect();
        SuiteReport { name: name.into(), checked, failures }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Concatenates reports under one name.
    pub fn merge(name: impl Into<String>, parts: Vec<SuiteReport>) -> Self {
        let mut out = SuiteReport { name: name.into(), checked: 0, failures: Vec::new() };
        for r in parts {
            out.checked += r.checked;
            out.failures.extend(r.failures.into_iter().map(|f| format!("{}: {f}", r.name)));
        }
        out
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {} checked, {} counterexamples", self.name, self.checked, self.failures.len())?;
        for line in self.failures.iter().take(20) {
            write!(f, "\n  {line}")?;
        }
        Ok(())
    }
}

fn err(e: impl fmt::Display) -> Option<String> {
    Some(format!("error: {e}"))
}

/// Removing a locally highest rim p-hook never raises the number of normal
/// nodes of any residue.
pub fn lemma5(p: u32, n_max: usize) -> SuiteReport {
    let items = partitions_up_to(n_max)
        .par_iter()
        .map(|lam| {
            let before = node_classification(lam, p);
            let abacus = Abacus::from_partition(lam, 0);
            for h in locally_highest_hooks(&abacus, p) {
                let bar = abacus.move_bead(h.bead, h.bead - p as i64).expect("movable bead").to_partition();
                let after = node_classification(&bar, p);
                for r in 0..p {
                    let r = Residue::new(r as i64, p);
                    if after.normal_of(r).len() > before.normal_of(r).len() {
                        return Some(format!("{lam} -> {bar}: residue {r}"));
                    }
                }
            }
            None
        })
        .collect();
    SuiteReport::from_items(format!("lemma5 p={p} n<={n_max}"), items)
}

/// `m` preserves p-regularity and is an involution.
pub fn involution(p: u32, n_max: usize) -> SuiteReport {
    let all: Vec<Partition> = (0..=n_max).flat_map(|n| p_regular_partitions_of(n, p)).collect();
    let items = all
        .par_iter()
        .map(|lam| match mullineux(lam, p) {
            Ok(m) if !m.is_p_regular(p) => Some(format!("m({lam}) = {m} is p-singular")),
            Ok(m) => match mullineux(&m, p) {
                Ok(back) if back == *lam => None,
                Ok(back) => Some(format!("m(m({lam})) = {back}")),
                Err(e) => err(e),
            },
            Err(e) => err(e),
        })
        .collect();
    SuiteReport::from_items(format!("involution p={p} n<={n_max}"), items)
}

/// On p-cores `m` is the transpose.
pub fn core_transpose(p: u32, n_max: usize) -> SuiteReport {
    let cores: Vec<Partition> = partitions_up_to(n_max).into_iter().filter(|l| p_core(l, p).1 == 0).collect();
    let items = cores
        .par_iter()
        .map(|lam| match mullineux(lam, p) {
            Ok(m) if m == lam.transpose() => None,
            Ok(m) => Some(format!("m({lam}) = {m}, transpose {}", lam.transpose())),
            Err(e) => err(e),
        })
        .collect();
    SuiteReport::from_items(format!("cores p={p} n<={n_max}"), items)
}

/// The dominance condition on Mullineux images against the floor inequality,
/// for `1<H<p`, `H∤x`, `3 ≤ x ≤ x_max` (default `4H`), `0<i≤min(x,h)`.
pub fn thm66(p: u32, x_max: Option<i64>) -> SuiteReport {
    let pi = p as i64;
    let mut triples = Vec::new();
    for hb in 2..pi {
        for x in 3..=x_max.unwrap_or(4 * hb) {
            if x % hb == 0 {
                continue;
            }
            let h = hb - x % hb;
            for i in 1..=x.min(h) {
                triples.push((hb, x, i));
            }
        }
    }
    let items = triples
        .par_iter()
        .map(|&(hb, x, i)| match thm66_both_sides(p, hb, x, i) {
            Ok((a, b)) if a == b => None,
            Ok((a, b)) => Some(format!("(H,x,i)=({hb},{x},{i}): dominance {a}, inequality {b}")),
            Err(e) => Some(format!("(H,x,i)=({hb},{x},{i}): {e}")),
        })
        .collect();
    SuiteReport::from_items(format!("thm66 p={p}"), items)
}

/// For `(p+3)/2 ≤ H < p` and `x ≤ x_mul·H`: `π(H,x,i)` holds exactly when
/// `x = QH+1` and `i = H-1`, and both ε formulas agree. The abacus identity
/// for `ε(H,x,i)` is checked on every π-true triple with `2<H<p`.
pub fn lemma82(p: u32, x_mul: i64) -> SuiteReport {
    let pi = p as i64;
    let mut triples = Vec::new();
    for hb in 3..pi {
        for x in 1..=x_mul * hb {
            for i in 1..=x {
                triples.push((hb, x, i));
            }
        }
    }
    let items = triples
        .par_iter()
        .map(|&(hb, x, i)| {
            let holds = pi_predicate(hb, x, i, p);
            if 2 * hb >= pi + 3 {
                let expected = x % hb == 1 && i == hb - 1;
                if holds != expected {
                    return Some(format!("(H,x,i)=({hb},{x},{i}): pi is {holds}"));
                }
                if holds {
                    let q = x / hb;
                    match epsilon_seq(hb, x, i, p) {
                        Ok(e) if e == lemma82_epsilon(hb, q) => {}
                        Ok(e) => return Some(format!("(H,x,i)=({hb},{x},{i}): eps {e:?} vs {:?}", lemma82_epsilon(hb, q))),
                        Err(e) => return err(e),
                    }
                }
            }
            if holds {
                match epsilon_identity_holds(hb, x, i, p) {
                    Ok(true) => {}
                    Ok(false) => return Some(format!("(H,x,i)=({hb},{x},{i}): abacus identity fails")),
                    Err(e) => return err(e),
                }
            }
            None
        })
        .collect();
    SuiteReport::from_items(format!("lemma82 p={p} x<={x_mul}H"), items)
}

/// Closed-form symbol of `λ̃^(H,x)`.
pub fn tilde_lambda_hx_symbol(hb: usize, x: usize, p: u32) -> MullineuxSymbol {
    let pu = p as usize;
    let (q, r) = (x / hb, x % hb);
    let mut cols = vec![(2 * pu, hb); q];
    if r > 1 {
        cols.push((pu + r - 1, hb));
        cols.extend(std::iter::repeat((pu, hb - 1)).take(x - 2 * (q + 1)));
        cols.push((pu - r + 1, hb - r + 1));
    } else {
        cols.extend(std::iter::repeat((pu, hb - 1)).take(x - 2 * q));
    }
    MullineuxSymbol::new(cols)
}

/// Closed-form symbol of `λ^(h,i,x)`, with `A_j = p+h-1-2j`, `R_j = h-j`.
pub fn lambda_hix_symbol(h: usize, i: usize, x: usize, p: u32) -> MullineuxSymbol {
    let pu = p as usize;
    let (len, mid_r, mid_count, k) = if 2 * i >= h && x >= h {
        (h - i, i, x - 2 * (h - i), i)
    } else if 2 * i < h && x >= 2 * i {
        (i, i, x - 2 * i, h - i)
    } else {
        (x - i, i + h - x, 2 * i - x, i + h - x)
    };
    let a = |j: usize| pu + h - 1 - 2 * j;
    let r = |j: usize| h - j;
    let mut cols: Vec<(usize, usize)> = (0..len).map(|j| (a(j), r(j))).collect();
    cols.extend(std::iter::repeat((pu, mid_r)).take(mid_count));
    cols.extend((0..len).map(|j| (a(j) - 2 * k, r(j) - k)));
    MullineuxSymbol::new(cols)
}

/// Generic Mullineux symbols and images against the closed forms for
/// `λ̃^(H,x)` and `λ^(h,i,x)`, for all parameters with `p·x ≤ px_max`.
pub fn mull62_65(p: u32, px_max: usize) -> SuiteReport {
    let pu = p as usize;
    let x_max = px_max / pu;
    let mut cases = Vec::new();
    for hb in 2..pu {
        for x in 1..=x_max {
            if x % hb != 0 {
                cases.push((true, hb, 0, x));
            }
        }
    }
    for h in 1..pu {
        for i in 1..=h {
            for x in i..=x_max {
                cases.push((false, h, i, x));
            }
        }
    }
    let check_hx = |hb: usize, x: usize| -> Result<Option<String>> {
        let t = tilde(&lambda_hx(hb, x, p)?, p)?;
        let g = mullineux_symbol(&t, p)?;
        let want = tilde_lambda_hx_symbol(hb, x, p);
        if g != want {
            return Ok(Some(format!("G(tilde lambda^({hb},{x})) = {g}, closed form {want}")));
        }
        let (m, nu) = (mullineux(&t, p)?, nu_family(hb, x, p)?);
        Ok((m != nu).then(|| format!("m(tilde lambda^({hb},{x})) = {m}, nu = {nu}")))
    };
    let check_hix = |h: usize, i: usize, x: usize| -> Result<Option<String>> {
        let lam = lambda_family(h, i, x, p)?;
        let g = mullineux_symbol(&lam, p)?;
        let want = lambda_hix_symbol(h, i, x, p);
        if g != want {
            return Ok(Some(format!("G(lambda^({h},{i},{x})) = {g}, closed form {want}")));
        }
        let (m, mu) = (mullineux(&lam, p)?, mu_family(h, i, x, p)?);
        Ok((m != mu).then(|| format!("m(lambda^({h},{i},{x})) = {m}, mu = {mu}")))
    };
    let items = cases
        .par_iter()
        .map(|&(is_hx, a, i, x)| {
            let r = if is_hx { check_hx(a, x) } else { check_hix(a, i, x) };
            r.unwrap_or_else(|e| Some(format!("({a},{i},{x}): {e}")))
        })
        .collect();
    SuiteReport::from_items(format!("mull62_65 p={p} px<={px_max}"), items)
}

/// `H_{(-1,0,…,0,1)}` against the closed form, on every big `λ` with `|λ| ≤ n_max`.
pub fn tilde_forms(p: u32, n_max: usize) -> SuiteReport {
    let big: Vec<Partition> = partitions_up_to(n_max).into_iter().filter(|l| is_big(l, p)).collect();
    let items = big
        .par_iter()
        .map(|lam| match (tilde(lam, p), tilde_closed_form(lam, p)) {
            (Ok(a), Ok(b)) if a == b => None,
            (Ok(a), Ok(b)) => Some(format!("{lam}: H_eps {a}, closed form {b}")),
            (Err(e), _) | (_, Err(e)) => Some(format!("{lam}: {e}")),
        })
        .collect();
    SuiteReport::from_items(format!("tilde p={p} n<={n_max}"), items)
}

/// Every staircase partition of size at most `n_max`, from the parameters.
pub fn staircase_family(p: u32, n_max: usize) -> BTreeSet<Partition> {
    let mut out = BTreeSet::new();
    out.insert(Partition::empty());
    let pu = p as usize;
    // rs: nonempty strictly increasing subsets of 1..p.
    for mask in 1u32..(1 << (pu - 1)) {
        let rs: Vec<usize> = (1..pu).filter(|r| mask & (1 << (r - 1)) != 0).collect();
        let k = rs.len();
        let mut is = Vec::with_capacity(k);
        fill_decreasing(&rs, &mut is, n_max, p, n_max, &mut out);
        debug_assert!(is.is_empty());
    }
    out
}

fn fill_decreasing(rs: &[usize], is: &mut Vec<usize>, top: usize, p: u32, n_max: usize, out: &mut BTreeSet<Partition>) {
    if is.len() == rs.len() {
        if let Ok(l) = staircase(&StaircaseParams::new(rs.to_vec(), is.clone()), p) {
            if l.size() <= n_max {
                out.insert(l);
            }
        }
        return;
    }
    let hi = if is.is_empty() { top } else { is[is.len() - 1].saturating_sub(1) };
    if !is.is_empty() && is[is.len() - 1] == 0 {
        return;
    }
    for i in (0..=hi).rev() {
        is.push(i);
        // The first bead sits at p·i_1, so λ_1 ≥ p·i_1 - h + 1 bounds i_1.
        let too_big = is.len() == 1 && (p as usize * i + 1).saturating_sub(rs.len() + p as usize) > n_max;
        if !too_big {
            fill_decreasing(rs, is, top, p, n_max, out);
        }
        is.pop();
    }
}

fn set_diff(name: &str, a: &BTreeSet<Partition>, b: &BTreeSet<Partition>) -> Vec<Option<String>> {
    let mut items: Vec<Option<String>> = a.iter().map(|l| (!b.contains(l)).then(|| format!("{l} {name}"))).collect();
    items.extend(b.iter().filter(|l| !a.contains(*l)).map(|l| Some(format!("{l} missing from solutions"))));
    items
}

/// Solutions of the staircase system equal the staircase partitions.
pub fn lemma71(p: u32, n_max: usize) -> SuiteReport {
    let all = partitions_up_to(n_max);
    let solved: Vec<bool> = all.par_iter().map(|l| solves_staircase_system(l, p)).collect();
    let solutions: BTreeSet<Partition> = all.iter().zip(&solved).filter(|(_, &s)| s).map(|(l, _)| l.clone()).collect();
    let family = staircase_family(p, n_max);
    let mut items = set_diff("solves the system but is not a staircase", &solutions, &family);
    // The classifier must recognise exactly the same set.
    for l in &solutions {
        let round = classify_staircase(l, p).and_then(|st| staircase(&st, p).ok());
        if round.as_ref() != Some(l) {
            items.push(Some(format!("{l}: classify_staircase gives {round:?}")));
        }
    }
    let mut report = SuiteReport::from_items(format!("lemma71 p={p} n<={n_max}"), items);
    report.checked = all.len();
    report
}

/// Solutions of the minimal system equal the `λ^(h,i,x)` family.
pub fn lemma72(p: u32, n_max: usize) -> SuiteReport {
    let pu = p as usize;
    let all = partitions_up_to(n_max);
    let solved: Vec<bool> = all.par_iter().map(|l| solves_minimal_system(l, p)).collect();
    let solutions: BTreeSet<Partition> = all.iter().zip(&solved).filter(|(_, &s)| s).map(|(l, _)| l.clone()).collect();
    let mut family = BTreeSet::new();
    for h in 1..pu {
        for i in 1..=h {
            for x in 0..=n_max {
                if let Ok(l) = lambda_family(h, i, x, p) {
                    if l.size() <= n_max {
                        family.insert(l);
                    }
                }
            }
        }
    }
    let mut items = set_diff("solves the system but is no lambda^(h,i,x)", &solutions, &family);
    for l in &solutions {
        if classify_minimal(l, p).is_none() {
            items.push(Some(format!("{l}: classify_minimal fails")));
        }
    }
    let mut report = SuiteReport::from_items(format!("lemma72 p={p} n<={n_max}"), items);
    report.checked = all.len();
    report
}

/// The completely splittable recursion vanishes off `μ = λ̃`, is at most one
/// on it, and agrees with the exact Ext¹ dimension.
pub fn u_recursion(p: u32, n_max: usize) -> SuiteReport {
    let sizes: Vec<usize> = (1..=n_max).collect();
    let items: Vec<Vec<Option<String>>> = sizes
        .par_iter()
        .map(|&n| {
            let mut u = UBound::new(p, Variant::CompletelySplittable);
            let regular = p_regular_partitions_of(n, p);
            let mut out = Vec::new();
            for lam in partitions_of(n).iter().filter(|l| is_completely_splittable(l, p) && l.is_p_regular(p)) {
                let diag = is_big(lam, p).then(|| tilde(lam, p).ok()).flatten();
                for mu in &regular {
                    if !u.in_x(lam, mu) {
                        continue;
                    }
                    let value = match u.eval(lam, mu) {
                        Ok(v) => v,
                        Err(e) => {
                            out.push(err(e));
                            continue;
                        }
                    };
                    let on_diag = diag.as_ref() == Some(mu);
                    let ext = ext_dim_cs(lam, mu, p).map(u64::from);
                    let ok = match (value, &ext) {
                        (Bound::Finite(v), Ok(e)) => v == *e && if on_diag { v <= 1 } else { v == 0 },
                        _ => false,
                    };
                    out.push((!ok).then(|| format!("U({lam}; {mu}) = {value}, ext {ext:?}, diagonal {on_diag}")));
                }
            }
            out
        })
        .collect();
    SuiteReport::from_items(format!("U recursion p={p} n<={n_max}"), items.into_iter().flatten().collect())
}

//! Mullineux symbols and the Mullineux map.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hooks::phi;
use crate::partition::Partition;

/// Columns `(A_j, R_j)`: the p-edge size and height of `φ^j(λ)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MullineuxSymbol {
    pub columns: Vec<(usize, usize)>,
}

impl MullineuxSymbol {
    pub fn new(columns: Vec<(usize, usize)>) -> Self {
        MullineuxSymbol { columns }
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Total of the `A` row, which is the size of the partition.
    pub fn weight(&self) -> usize {
        self.columns.iter().map(|c| c.0).sum()
    }
}

impl fmt::Display for MullineuxSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.columns.iter().map(|c| c.0.to_string()).collect();
        let r: Vec<String> = self.columns.iter().map(|c| c.1.to_string()).collect();
        write!(f, "{}/{}", a.join(","), r.join(","))
    }
}

impl FromStr for MullineuxSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (a, r) = s.split_once('/').ok_or_else(|| Error::Parse(format!("missing '/' in symbol {s:?}")))?;
        let row = |t: &str| -> Result<Vec<usize>> {
            if t.trim().is_empty() {
                return Ok(Vec::new());
            }
            t.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad symbol entry {x:?}"))))
                .collect()
        };
        let (a, r) = (row(a)?, row(r)?);
        if a.len() != r.len() {
            return Err(Error::Parse("symbol rows differ in length".into()));
        }
        Ok(MullineuxSymbol { columns: a.into_iter().zip(r).collect() })
    }
}

/// `G_p(λ)` by iterating φ down to ∅.
pub fn mullineux_symbol(lambda: &Partition, p: u32) -> Result<MullineuxSymbol> {
    if !lambda.is_p_regular(p) {
        return Err(Error::NotPRegular(lambda.to_string(), p));
    }
    let mut columns = Vec::new();
    let mut cur = lambda.clone();
    while !cur.is_empty() {
        let h = cur.height();
        let (next, e) = phi(&cur, p);
        columns.push((e, h));
        cur = next;
    }
    Ok(MullineuxSymbol { columns })
}

/// `R_j ↦ A_j - R_j + [p ∤ A_j]`.
pub fn symbol_conjugate(g: &MullineuxSymbol, p: u32) -> MullineuxSymbol {
    let p = p as usize;
    let columns = g.columns.iter().map(|&(a, r)| (a, (a + usize::from(a % p != 0)).saturating_sub(r))).collect();
    MullineuxSymbol { columns }
}

/// Column concatenation.
pub fn symbol_product(parts: &[MullineuxSymbol]) -> MullineuxSymbol {
    MullineuxSymbol { columns: parts.iter().flat_map(|g| g.columns.iter().copied()).collect() }
}

/// The p-regular partitions `λ` of height `r` with `φ(λ) = ρ` and `e(λ) = a`.
///
/// Candidates come from walking the p-rim row by row: each row loses
/// between 1 and `p` rim nodes, and a segment either closes inside a row
/// (the next row then starts a fresh segment) or runs through to the
/// row below. Every candidate is confirmed by applying φ.
fn inverse_edge(rho: &Partition, a: usize, r: usize, p: u32) -> Vec<Partition> {
    let pu = p as usize;
    if r == 0 || rho.height() > r || a < r {
        return Vec::new();
    }
    let rho_parts: Vec<usize> = (1..=r).map(|i| rho.part(i)).collect();
    let mut out = Vec::new();
    let mut rows = Vec::with_capacity(r);
    for first in rho_parts[0] + 1..=rho_parts[0] + pu {
        rows.push(first);
        walk(&rho_parts, a, pu, &mut rows, 0, first - rho_parts[0], &mut out);
        rows.pop();
    }
    out.retain(|lam: &Partition| lam.is_p_regular(p) && phi(lam, p) == (rho.clone(), a));
    out.sort();
    out.dedup();
    out
}

/// `rows` holds `λ_1..λ_{k+1}`; `used` counts nodes of the open segment before row `k+1`.
fn walk(rho: &[usize], a: usize, p: usize, rows: &mut Vec<usize>, used: usize, total: usize, out: &mut Vec<Partition>) {
    let k = rows.len() - 1;
    let lam = rows[k];
    let d = lam - rho[k];
    if total > a {
        return;
    }
    let last = k + 1 == rho.len();
    // The open segment closes in this row.
    if used + d == p {
        if last {
            if total == a {
                out.push(Partition::from_parts(rows.clone()));
            }
        } else {
            let hi = lam.min(rho[k] + 1);
            for next in rho[k + 1] + 1..=hi {
                rows.push(next);
                walk(rho, a, p, rows, 0, total + next - rho[k + 1], out);
                rows.pop();
            }
        }
    }
    // The segment takes the whole rim of this row and continues below.
    if used + d < p {
        if last {
            if rho[k] == 0 && total == a {
                out.push(Partition::from_parts(rows.clone()));
            }
        } else {
            let next = rho[k] + 1;
            if next <= lam && next > rho[k + 1] {
                rows.push(next);
                walk(rho, a, p, rows, used + d, total + next - rho[k + 1], out);
                rows.pop();
            }
        }
    }
}

/// Rebuilds `λ` from `G_p(λ)`, adding p-edges from the last column back.
pub fn partition_from_symbol(g: &MullineuxSymbol, p: u32) -> Result<Partition> {
    let mut cur = Partition::empty();
    for &(a, r) in g.columns.iter().rev() {
        let found = inverse_edge(&cur, a, r, p);
        match found.len() {
            1 => cur = found.into_iter().next().unwrap(),
            0 => return Err(Error::UnrealizableSymbol(format!("{g}: no partition for column ({a},{r}) over {cur}"))),
            _ => return Err(Error::UnrealizableSymbol(format!("{g}: column ({a},{r}) over {cur} is ambiguous"))),
        }
    }
    Ok(cur)
}

/// The Mullineux map `m`.
pub fn mullineux(lambda: &Partition, p: u32) -> Result<Partition> {
    let g = mullineux_symbol(lambda, p)?;
    partition_from_symbol(&symbol_conjugate(&g, p), p)
}

//! Rebuilds the bundled p=2 decomposition matrices from scratch and checks the
//! files against them, then runs the branching checks on the fixtures.
//!
//! Oracle: `S^μ` is spanned by polytabloids inside the tabloid module over
//! GF(2); `D^μ = S^μ / rad` with `rad` the radical of the restricted dot
//! product. On an element `g` of odd prime order `l` the Brauer character of
//! a module of dimension `d` with `a`-dimensional fixed space is
//! `a - (d - a)/(l - 1)`. Ordinary characters come from a separate
//! Murnaghan-Nakayama routine, and decomposition numbers by solving the
//! Brauer character system.

use std::collections::HashMap;
use std::path::PathBuf;

use abacus_branch::branching::{simple_branch, Direction, SimpleBranch};
use abacus_branch::decomp::{verify_branching, DecompMatrix, MatrixSet, Statement};
use abacus_branch::partition::{partitions_of, Partition, Residue};

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

fn load(n: usize) -> DecompMatrix {
    let path = data_dir().join(format!("p2_n{n}.txt"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    DecompMatrix::parse(&text).unwrap()
}

/// Row assignment of each letter `0..n`.
fn tabloids(shape: &[usize]) -> Vec<Vec<u8>> {
    fn rec(k: usize, n: usize, left: &mut Vec<usize>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if k == n {
            out.push(cur.clone());
            return;
        }
        for r in 0..left.len() {
            if left[r] > 0 {
                left[r] -= 1;
                cur.push(r as u8);
                rec(k + 1, n, left, cur, out);
                cur.pop();
                left[r] += 1;
            }
        }
    }
    let n = shape.iter().sum();
    let mut out = Vec::new();
    rec(0, n, &mut shape.to_vec(), &mut Vec::new(), &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn rank(mut rows: Vec<u128>) -> usize {
    let mut r = 0;
    for bit in (0..128).rev() {
        let mask = 1u128 << bit;
        if let Some(k) = (r..rows.len()).find(|&k| rows[k] & mask != 0) {
            rows.swap(r, k);
            let pivot = rows[r];
            for (k, row) in rows.iter_mut().enumerate() {
                if k != r && *row & mask != 0 {
                    *row ^= pivot;
                }
            }
            r += 1;
        }
    }
    r
}

fn reduce_basis(vectors: impl Iterator<Item = u128>) -> Vec<u128> {
    let mut basis: Vec<u128> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            let top = 127 - b.leading_zeros();
            if v & (1u128 << top) != 0 {
                v ^= b;
            }
        }
        if v != 0 {
            // Keep pivots distinct: clear the new pivot from older vectors.
            let top = 127 - v.leading_zeros();
            for b in basis.iter_mut() {
                if *b & (1u128 << top) != 0 {
                    *b ^= v;
                }
            }
            basis.push(v);
        }
    }
    basis
}

struct SpechtModel {
    index: HashMap<Vec<u8>, usize>,
    tabloids: Vec<Vec<u8>>,
    basis: Vec<u128>,
}

impl SpechtModel {
    fn new(shape: &[usize]) -> Self {
        let n: usize = shape.iter().sum();
        let tabloids = tabloids(shape);
        assert!(tabloids.len() <= 120);
        let index: HashMap<Vec<u8>, usize> = tabloids.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let mut cols: Vec<Vec<usize>> = Vec::new();
        let mut k = 0;
        let mut cells = Vec::new();
        for (r, &len) in shape.iter().enumerate() {
            for c in 0..len {
                cells.push((r, c));
                if cols.len() <= c {
                    cols.push(Vec::new());
                }
                cols[c].push(k);
                k += 1;
            }
        }
        let col_perms: Vec<Vec<Vec<usize>>> = cols.iter().map(|c| permutations(c.len())).collect();
        let mut polys = Vec::new();
        for filling in permutations(n) {
            // filling[cell] = letter
            let mut v = 0u128;
            let mut choice = vec![0usize; cols.len()];
            loop {
                let mut rows = vec![0u8; n];
                for (ci, col) in cols.iter().enumerate() {
                    let perm = &col_perms[ci][choice[ci]];
                    for (slot, &cell) in col.iter().enumerate() {
                        let letter = filling[col[perm[slot]]];
                        rows[letter] = cells[cell].0 as u8;
                    }
                }
                v ^= 1u128 << index[&rows];
                let mut ci = 0;
                while ci < cols.len() {
                    choice[ci] += 1;
                    if choice[ci] < col_perms[ci].len() {
                        break;
                    }
                    choice[ci] = 0;
                    ci += 1;
                }
                if ci == cols.len() {
                    break;
                }
            }
            polys.push(v);
        }
        let basis = reduce_basis(polys.into_iter());
        SpechtModel { index, tabloids, basis }
    }

    fn act(&self, g: &[usize], v: u128) -> u128 {
        let mut out = 0u128;
        for (i, t) in self.tabloids.iter().enumerate() {
            if v & (1u128 << i) != 0 {
                let mut moved = vec![0u8; t.len()];
                for (k, &r) in t.iter().enumerate() {
                    moved[g[k]] = r;
                }
                out ^= 1u128 << self.index[&moved];
            }
        }
        out
    }

    fn gram(&self) -> Vec<u128> {
        self.basis
            .iter()
            .map(|a| {
                self.basis
                    .iter()
                    .enumerate()
                    .fold(0u128, |acc, (j, b)| acc | (u128::from((a & b).count_ones() % 2) << (120 + j)))
            })
            .collect()
    }

    fn dim_head(&self) -> usize {
        rank(self.gram())
    }

    /// Fixed-space dimension of `g` on `S/rad`.
    fn head_fixed(&self, g: &[usize]) -> usize {
        let moved: Vec<u128> = self.basis.iter().map(|&b| self.act(g, b) ^ b).collect();
        let both: Vec<u128> = self.gram().iter().zip(&moved).map(|(a, b)| a | b).collect();
        rank(both) - rank(moved)
    }
}

fn cycle_perm(cycle_type: &[usize]) -> Vec<usize> {
    let n: usize = cycle_type.iter().sum();
    let mut g: Vec<usize> = (0..n).collect();
    let mut start = 0;
    for &len in cycle_type {
        for k in 0..len {
            g[start + k] = start + (k + 1) % len;
        }
        start += len;
    }
    g
}

/// Murnaghan-Nakayama on beta-sets.
fn character(shape: &[usize], rho: &[usize]) -> i64 {
    let h = shape.len();
    let beta: Vec<i64> = shape.iter().enumerate().map(|(i, &v)| v as i64 + (h - 1 - i) as i64).collect();
    fn rec(beta: &[i64], rho: &[usize]) -> i64 {
        let Some((&k, rest)) = rho.split_first() else { return 1 };
        let k = k as i64;
        let mut total = 0;
        for (i, &b) in beta.iter().enumerate() {
            let target = b - k;
            if target < 0 || beta.contains(&target) {
                continue;
            }
            let between = beta.iter().filter(|&&c| c > target && c < b).count();
            let mut next = beta.to_vec();
            next[i] = target;
            let sign = if between % 2 == 0 { 1 } else { -1 };
            total += sign * rec(&next, rest);
        }
        total
    }
    rec(&beta, rho)
}

fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        a.swap(c, piv);
        b.swap(c, piv);
        for r in 0..n {
            if r != c {
                let f = a[r][c] / a[c][c];
                for k in c..n {
                    a[r][k] -= f * a[c][k];
                }
                b[r] -= f * b[c];
            }
        }
    }
    (0..n).map(|i| b[i] / a[i][i]).collect()
}

/// `d_{λμ}` for `p = 2` and all `λ ⊢ n`, from Brauer characters.
fn oracle_matrix(n: usize) -> Vec<(Partition, Vec<(Partition, u64)>)> {
    let regular: Vec<Partition> = partitions_of(n).into_iter().filter(|l| l.is_p_regular(2)).collect();
    let classes: Vec<Vec<usize>> =
        partitions_of(n).into_iter().filter(|c| c.parts().iter().all(|v| v % 2 == 1)).map(|c| c.parts().to_vec()).collect();
    assert_eq!(regular.len(), classes.len());
    // phi[class][mu]
    let mut phi = vec![vec![0.0; regular.len()]; classes.len()];
    for (j, mu) in regular.iter().enumerate() {
        let model = SpechtModel::new(mu.parts());
        let d = model.dim_head();
        for (i, c) in classes.iter().enumerate() {
            let order = c.iter().copied().max().unwrap_or(1);
            let g = cycle_perm(c);
            phi[i][j] = if order == 1 {
                d as f64
            } else {
                let a = model.head_fixed(&g) as f64;
                a - (d as f64 - a) / (order as f64 - 1.0)
            };
        }
    }
    let mut out = Vec::new();
    for lambda in partitions_of(n) {
        let chi: Vec<f64> = classes.iter().map(|c| character(lambda.parts(), c) as f64).collect();
        let x = solve(phi.clone(), chi);
        let row = regular
            .iter()
            .zip(x)
            .filter_map(|(mu, v)| {
                let r = v.round();
                assert!((v - r).abs() < 1e-9 && r >= 0.0, "{lambda} {mu}: {v}");
                (r > 0.0).then(|| (mu.clone(), r as u64))
            })
            .collect();
        out.push((lambda, row));
    }
    out
}

#[test]
fn characters_sanity() {
    assert_eq!(character(&[2, 1], &[1, 1, 1]), 2);
    assert_eq!(character(&[2, 1], &[3]), -1);
    assert_eq!(character(&[3, 1, 1], &[5]), 1);
    assert_eq!(character(&[3, 2], &[1, 1, 1, 1, 1]), 5);
}

#[test]
fn fixtures_match_oracle() {
    for n in 1..=5 {
        let m = load(n);
        assert_eq!((m.p, m.n), (2, n));
        for (lambda, row) in oracle_matrix(n) {
            let file: Vec<(Partition, u64)> = m.row(&lambda).unwrap().iter().map(|(k, v)| (k.clone(), *v)).collect();
            let mut want = row;
            want.sort();
            assert_eq!(file, want, "n={n} row {lambda}");
        }
    }
}

#[test]
fn inverse_round_trip() {
    for n in 1..=5 {
        let m = load(n);
        for mu in partitions_of(n).into_iter().filter(|l| l.is_p_regular(2)) {
            let v = m.simple_in_specht(&mu).unwrap();
            let back = m.specht_to_simple(v);
            assert_eq!(back.len(), 1);
            assert_eq!(back.get(&mu), Some(&1));
        }
    }
}

fn fixtures() -> MatrixSet {
    let mut set = MatrixSet::new();
    for n in 1..=5 {
        set.insert(load(n)).unwrap();
    }
    set
}

#[test]
fn unique_node_cases_match() {
    let set = fixtures();
    let mut checked = 0;
    for n in 1..=5 {
        for lambda in partitions_of(n).into_iter().filter(|l| l.is_p_regular(2)) {
            for r in 0..2 {
                let alpha = Residue::new(r, 2);
                for dir in [Direction::Ind, Direction::Res] {
                    if (dir == Direction::Ind && n == 5) || (dir == Direction::Res && n == 1) {
                        continue;
                    }
                    let b = simple_branch(&lambda, alpha, dir, 2).unwrap();
                    let computed = set.induced(&lambda, alpha, dir).unwrap();
                    match b {
                        SimpleBranch::Zero => assert!(computed.is_zero(), "{lambda} {alpha} {dir:?}"),
                        SimpleBranch::Simple(mu) => {
                            assert_eq!(computed.terms(), &[(mu, 1)], "{lambda} {alpha} {dir:?}");
                        }
                        SimpleBranch::Undetermined(_) => continue,
                    }
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 20);
}

#[test]
fn residues_sum_to_full_induction() {
    let set = fixtures();
    for n in 1..=4 {
        for lambda in partitions_of(n).into_iter().filter(|l| l.is_p_regular(2)) {
            let total: u64 = (0..2).map(|r| set.induced(&lambda, Residue::new(r, 2), Direction::Ind).unwrap().total()).sum();
            // Full induction of D^λ has composition length Σ_ν [S^ν restricted] over Specht terms.
            let m = set.get(n).unwrap();
            let mn1 = set.get(n + 1).unwrap();
            let d = m.simple_in_specht(&lambda).unwrap();
            let mut want: i64 = 0;
            for (nu, c) in d {
                for b in nu.addable_nodes() {
                    let row = mn1.row(&nu.add_node(b).unwrap()).unwrap();
                    want += c * row.values().sum::<u64>() as i64;
                }
            }
            assert_eq!(total as i64, want, "{lambda}");
        }
    }
}

#[test]
fn completely_splittable_induction_at_p2() {
    let set = fixtures();
    let inst = vec![("1".parse().unwrap(), Residue::new(1, 2)), ("3".parse().unwrap(), Residue::new(1, 2))];
    let report = verify_branching(Statement::IndCompletelySplittable, &inst, &set).unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(report.provenance.len(), 4);
}

#[test]
fn corrupted_matrix_fails() {
    let mut set = fixtures();
    let text = load(4).to_text().replace("S 3,1 | D 3,1:1; D 4:1", "S 3,1 | D 3,1:1; D 4:2");
    set.insert(DecompMatrix::parse(&text).unwrap()).unwrap();
    let inst = vec![("3".parse().unwrap(), Residue::new(1, 2))];
    let report = verify_branching(Statement::IndCompletelySplittable, &inst, &set).unwrap();
    assert!(!report.passed());
    assert!(report.to_string().contains("FAIL"));
}

//! Abaci: cofinite bead configurations on `Z`.
//!
//! An abacus is stored as `full_below` (every position below it is a bead)
//! plus the finite sorted set of beads above it. In canonical form the
//! position `full_below` itself is a space, so it is the smallest space and
//! every stored bead is proper.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partition::{Node, Partition, Residue};

const BEAD: &str = "\u{2218}";
const SPACE: &str = "\u{b7}";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Abacus {
    full_below: i64,
    beads: Vec<i64>,
}

/// Classification of a position holding a bead.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BeadStatus {
    pub is_bead: bool,
    pub proper: bool,
    pub initial: bool,
    pub normal: bool,
    pub good: bool,
    pub movable_up: bool,
}

/// Classification of a position holding a space.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SpaceStatus {
    pub is_space: bool,
    pub initial: bool,
    pub conormal: bool,
    pub cogood: bool,
}

/// Normal, good, conormal and cogood nodes of a partition, indexed by residue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeSets {
    pub p: u32,
    pub normal: Vec<Vec<Node>>,
    pub good: Vec<Option<Node>>,
    pub conormal: Vec<Vec<Node>>,
    pub cogood: Vec<Option<Node>>,
}

impl NodeSets {
    pub fn normal_of(&self, r: Residue) -> &[Node] {
        &self.normal[r.value() as usize]
    }

    pub fn conormal_of(&self, r: Residue) -> &[Node] {
        &self.conormal[r.value() as usize]
    }

    pub fn good_of(&self, r: Residue) -> Option<Node> {
        self.good[r.value() as usize]
    }

    pub fn cogood_of(&self, r: Residue) -> Option<Node> {
        self.cogood[r.value() as usize]
    }

    /// All good nodes with their residues, by residue.
    pub fn good_nodes(&self) -> Vec<(Residue, Node)> {
        self.good
            .iter()
            .enumerate()
            .filter_map(|(r, n)| n.map(|n| (Residue::new(r as i64, self.p), n)))
            .collect()
    }

    pub fn normal_count(&self) -> usize {
        self.normal.iter().map(Vec::len).sum()
    }
}

impl Abacus {
    /// Builds an abacus from `full_below` and arbitrary extra beads.
    pub fn new(full_below: i64, beads: impl IntoIterator<Item = i64>) -> Self {
        let mut beads: Vec<i64> = beads.into_iter().filter(|&b| b >= full_below).collect();
        beads.sort_unstable();
        beads.dedup();
        let mut full_below = full_below;
        let mut skip = 0;
        while skip < beads.len() && beads[skip] == full_below {
            skip += 1;
            full_below += 1;
        }
        beads.drain(..skip);
        Abacus { full_below, beads }
    }

    /// The improper abacus `(-∞, m)`.
    pub fn improper(m: i64) -> Self {
        Abacus { full_below: m, beads: Vec::new() }
    }

    /// The unique abacus of the given shift with `P(Λ) = λ`.
    pub fn from_partition(lambda: &Partition, shift: i64) -> Self {
        let h = lambda.height() as i64;
        let beads = lambda
            .parts()
            .iter()
            .enumerate()
            .rev()
            .map(|(idx, &v)| v as i64 - (idx as i64 + 1) + shift)
            .collect();
        Abacus { full_below: shift - h, beads }
    }

    /// `P(Λ)`.
    pub fn to_partition(&self) -> Partition {
        let shift = self.shift();
        let parts = self
            .beads
            .iter()
            .rev()
            .enumerate()
            .map(|(idx, &a)| (a - shift + idx as i64 + 1) as usize)
            .collect();
        Partition::from_parts(parts)
    }

    /// The canonical `x0`: all positions below it are beads, and it is a space.
    pub fn full_below(&self) -> i64 {
        self.full_below
    }

    /// Proper beads in ascending order.
    pub fn proper_beads(&self) -> &[i64] {
        &self.beads
    }

    pub fn shift(&self) -> i64 {
        self.full_below + self.beads.len() as i64
    }

    /// Number of proper beads.
    pub fn height(&self) -> usize {
        self.beads.len()
    }

    pub fn is_proper(&self) -> bool {
        !self.beads.is_empty()
    }

    pub fn smallest_space(&self) -> i64 {
        self.full_below
    }

    /// `b^Λ`: the greatest bead.
    pub fn greatest_bead(&self) -> i64 {
        self.beads.last().copied().unwrap_or(self.full_below - 1)
    }

    /// The greatest improper bead.
    pub fn greatest_improper_bead(&self) -> i64 {
        self.full_below - 1
    }

    /// `Λ(n)`.
    pub fn is_bead(&self, n: i64) -> bool {
        n < self.full_below || self.beads.binary_search(&n).is_ok()
    }

    fn bead_value(&self, n: i64) -> i64 {
        self.is_bead(n) as i64
    }

    /// `(m + Λ)(n) = Λ(n + m)`.
    pub fn translate(&self, m: i64) -> Abacus {
        Abacus { full_below: self.full_below - m, beads: self.beads.iter().map(|b| b - m).collect() }
    }

    /// Number of beads strictly greater than `a`.
    fn beads_above(&self, a: i64) -> i64 {
        let explicit = self.beads.len() - self.beads.partition_point(|&b| b <= a);
        let implicit = if a < self.full_below - 1 { self.full_below - 1 - a } else { 0 };
        explicit as i64 + implicit
    }

    /// Number of spaces at or below `a`.
    fn spaces_up_to(&self, a: i64) -> i64 {
        if a < self.full_below {
            return 0;
        }
        let beads_in = self.beads.partition_point(|&b| b <= a) as i64;
        a - self.full_below + 1 - beads_in
    }

    /// `node_Λ(a) = (1 + Σ_{n>a} Λ(n), Σ_{n≤a} (1 - Λ(n)))`.
    pub fn node_of(&self, a: i64) -> Node {
        Node::new(1 + self.beads_above(a), self.spaces_up_to(a))
    }

    /// Residue of `node_Λ(a)`.
    pub fn residue_of(&self, a: i64, p: u32) -> Residue {
        Residue::new(a - self.shift(), p)
    }

    fn is_normal_bead(&self, a: i64, p: u32) -> bool {
        if !self.is_bead(a) || self.is_bead(a - 1) {
            return false;
        }
        let p = p as i64;
        let top = self.greatest_bead();
        let mut sum = 0;
        let mut k = 1;
        while a - 1 + p * k <= top {
            sum += self.bead_value(a + p * k) - self.bead_value(a - 1 + p * k);
            if sum < 0 {
                return false;
            }
            k += 1;
        }
        true
    }

    fn is_conormal_space(&self, b: i64, p: u32) -> bool {
        if self.is_bead(b) || !self.is_bead(b - 1) {
            return false;
        }
        let p = p as i64;
        let mut sum = 0;
        let mut k = 1;
        while b - p * k >= self.full_below {
            sum += self.bead_value(b - 1 - p * k) - self.bead_value(b - p * k);
            if sum < 0 {
                return false;
            }
            k += 1;
        }
        true
    }

    pub fn bead_status(&self, a: i64, p: u32) -> BeadStatus {
        if !self.is_bead(a) {
            return BeadStatus::default();
        }
        let initial = !self.is_bead(a - 1);
        let normal = self.is_normal_bead(a, p);
        let good = normal && {
            let pi = p as i64;
            self.beads.iter().all(|&c| c >= a || (c - a).rem_euclid(pi) != 0 || !self.is_normal_bead(c, p))
        };
        BeadStatus {
            is_bead: true,
            proper: a > self.full_below,
            initial,
            normal,
            good,
            movable_up: !self.is_bead(a - p as i64),
        }
    }

    pub fn space_status(&self, b: i64, p: u32) -> SpaceStatus {
        if self.is_bead(b) {
            return SpaceStatus::default();
        }
        let initial = self.is_bead(b - 1);
        let conormal = self.is_conormal_space(b, p);
        let cogood = conormal && {
            let pi = p as i64;
            let top = self.greatest_bead() + 1;
            let mut s = b + pi;
            let mut greatest = true;
            while s <= top {
                if self.is_conormal_space(s, p) {
                    greatest = false;
                    break;
                }
                s += pi;
            }
            greatest
        };
        SpaceStatus { is_space: true, initial, conormal, cogood }
    }

    /// Moves a bead from `from` to the space `to`.
    pub fn move_bead(&self, from: i64, to: i64) -> Option<Abacus> {
        if !self.is_bead(from) || self.is_bead(to) {
            return None;
        }
        Some(self.moved(from, to))
    }

    fn moved(&self, from: i64, to: i64) -> Abacus {
        let lo = self.full_below.min(from).min(to);
        let beads = (lo..self.full_below)
            .chain(self.beads.iter().copied())
            .filter(|&b| b != from)
            .chain(std::iter::once(to));
        Abacus::new(lo, beads)
    }

    /// `Λ_c`: swaps `c` and `c - 1`, removing the node `node(c)`.
    pub fn remove_bead(&self, c: i64) -> Result<Abacus> {
        if !self.is_bead(c) || self.is_bead(c - 1) {
            return Err(Error::NotInitialBead(c));
        }
        Ok(self.moved(c, c - 1))
    }

    /// `Λ^c`: swaps `c` and `c - 1`, adding the node `node(c)`.
    pub fn add_bead(&self, c: i64) -> Result<Abacus> {
        if self.is_bead(c) || !self.is_bead(c - 1) {
            return Err(Error::NotInitialSpace(c));
        }
        Ok(self.moved(c - 1, c))
    }

    /// Beads from the greatest downwards (proper ones first, then improper).
    pub fn beads_desc(&self) -> impl Iterator<Item = i64> + '_ {
        let fb = self.full_below;
        self.beads.iter().rev().copied().chain((0..).map(move |k| fb - 1 - k))
    }

    /// `b^Λ(i)` (from the top, any bead) or `b_Λ(i)` (from the bottom, proper beads only).
    pub fn bead_select(&self, i: usize, from_top: bool) -> Result<i64> {
        if i == 0 {
            return Err(Error::BadParams("bead index starts at 1".into()));
        }
        if from_top {
            Ok(self.beads_desc().nth(i - 1).expect("infinitely many beads"))
        } else {
            self.beads.get(i - 1).copied().ok_or(Error::NotEnoughProperBeads(i))
        }
    }

    /// Renders rows between the last all-bead row and the first all-space row.
    pub fn render(&self, p: u32) -> String {
        let pi = p as i64;
        let r1 = self.full_below.div_euclid(pi);
        let r2 = self.greatest_bead().div_euclid(pi);
        let mut out = format!("p={} shift={}\n", p, self.shift());
        for r in r1..=r2 {
            let glyphs: Vec<&str> =
                (0..pi).map(|c| if self.is_bead(pi * r + c) { BEAD } else { SPACE }).collect();
            out.push_str(&format!("{}: {}\n", r, glyphs.join(" ")));
        }
        out
    }

    /// Inverse of [`Abacus::render`].
    pub fn parse_render(text: &str) -> Result<(Abacus, u32)> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("missing header".into()))?;
        let mut p = None;
        let mut shift = None;
        for tok in header.split_whitespace() {
            match tok.split_once('=') {
                Some(("p", v)) => p = v.parse::<u32>().ok(),
                Some(("shift", v)) => shift = v.parse::<i64>().ok(),
                _ => return Err(Error::Parse(format!("bad header token {tok:?}"))),
            }
        }
        let (p, shift) = match (p, shift) {
            (Some(p), Some(s)) if p >= 2 => (p, s),
            _ => return Err(Error::Parse("header needs p=<int> shift=<int>".into())),
        };
        let pi = p as i64;
        let mut first_row = None;
        let mut beads = Vec::new();
        for line in lines {
            let (idx, body) = line.split_once(':').ok_or_else(|| Error::Parse(format!("bad row {line:?}")))?;
            let r: i64 = idx.trim().parse().map_err(|_| Error::Parse(format!("bad row index {idx:?}")))?;
            if first_row.is_none() {
                first_row = Some(r);
            }
            let glyphs: Vec<&str> = body.split_whitespace().collect();
            if glyphs.len() != p as usize {
                return Err(Error::Parse(format!("row {r} has {} glyphs", glyphs.len())));
            }
            for (c, g) in glyphs.iter().enumerate() {
                match *g {
                    BEAD => beads.push(pi * r + c as i64),
                    SPACE => {}
                    _ => return Err(Error::Parse(format!("bad glyph {g:?}"))),
                }
            }
        }
        let abacus = match first_row {
            None => Abacus::improper(shift),
            Some(r) => Abacus::new(pi * r, beads),
        };
        if abacus.shift() != shift {
            return Err(Error::Parse(format!("rows give shift {}, header says {shift}", abacus.shift())));
        }
        Ok((abacus, p))
    }
}

impl fmt::Display for Abacus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let beads: Vec<String> = self.beads.iter().map(|b| b.to_string()).collect();
        write!(f, "x0={};beads={}", self.full_below, beads.join(","))
    }
}

impl FromStr for Abacus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected x0=<int>;beads=<list>, got {s:?}"));
        let (x0, beads) = s.trim().split_once(';').ok_or_else(bad)?;
        let x0 = x0.trim().strip_prefix("x0=").ok_or_else(bad)?.trim().parse::<i64>().map_err(|_| bad())?;
        let beads = beads.trim().strip_prefix("beads=").ok_or_else(bad)?.trim();
        let list = if beads.is_empty() {
            Vec::new()
        } else {
            beads.split(',').map(|t| t.trim().parse::<i64>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?
        };
        Ok(Abacus::new(x0, list))
    }
}

/// Normal, good, conormal and cogood nodes of `λ` via its shift-0 abacus.
pub fn node_classification(lambda: &Partition, p: u32) -> NodeSets {
    let abacus = Abacus::from_partition(lambda, 0);
    let np = p as usize;
    let mut sets = NodeSets {
        p,
        normal: vec![Vec::new(); np],
        good: vec![None; np],
        conormal: vec![Vec::new(); np],
        cogood: vec![None; np],
    };
    for &a in abacus.proper_beads() {
        if abacus.is_normal_bead(a, p) {
            let r = a.rem_euclid(p as i64) as usize;
            let node = abacus.node_of(a);
            sets.normal[r].push(node);
            // Smallest normal bead of the runner: ascending scan sees it first.
            if sets.good[r].is_none() {
                sets.good[r] = Some(node);
            }
        }
    }
    let mut initial_spaces = vec![abacus.full_below()];
    initial_spaces.extend(abacus.proper_beads().iter().map(|b| b + 1).filter(|&b| !abacus.is_bead(b)));
    initial_spaces.sort_unstable();
    for &b in initial_spaces.iter().rev() {
        if abacus.is_conormal_space(b, p) {
            let r = b.rem_euclid(p as i64) as usize;
            let node = abacus.node_of(b);
            sets.conormal[r].push(node);
            // Greatest conormal space of the runner: descending scan sees it first.
            if sets.cogood[r].is_none() {
                sets.cogood[r] = Some(node);
            }
        }
    }
    for list in sets.normal.iter_mut().chain(sets.conormal.iter_mut()) {
        list.sort();
    }
    sets
}

/// `⟨x, S, i⟩`: entries `x_i, ..., x_{i+|S|-1}` of `{n ≥ x : rem(n, p) ∈ S}` ascending.
pub fn window(x: i64, s: &[u32], i: usize, p: u32) -> Result<Vec<i64>> {
    let mut set: Vec<u32> = s.iter().copied().filter(|&r| r < p).collect();
    set.sort_unstable();
    set.dedup();
    if set.is_empty() {
        return Err(Error::EmptyS);
    }
    let pi = p as i64;
    let k = set.len();
    let mut out = Vec::with_capacity(k);
    let mut idx = 0usize;
    let mut n = x;
    while out.len() < k {
        if set.binary_search(&(n.rem_euclid(pi) as u32)).is_ok() {
            if idx >= i {
                out.push(n);
            }
            idx += 1;
        }
        n += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> Abacus {
        Abacus::new(1, [4, 8, 9, 11, 14, 17])
    }

    #[test]
    fn from_partition_examples() {
        let a = Abacus::from_partition(&"2,1".parse().unwrap(), 0);
        assert_eq!(a.full_below(), -2);
        assert_eq!(a.proper_beads(), &[-1, 1]);
        let e = Abacus::from_partition(&Partition::empty(), 5);
        assert_eq!(e, Abacus::improper(5));
        let l: Partition = "11,9,7,6,6,3".parse().unwrap();
        assert_eq!(Abacus::from_partition(&l, 7), example());
    }

    #[test]
    fn to_partition_examples() {
        assert_eq!(example().to_partition(), "11,9,7,6,6,3".parse().unwrap());
        assert_eq!(example().shift(), 7);
        assert!(Abacus::new(-10, -10..=3).to_partition().is_empty());
        for m in -5..=5 {
            let t = example().translate(m);
            assert_eq!(t.to_partition(), example().to_partition());
            assert_eq!(t.shift(), 7 - m);
        }
        assert_eq!(example().translate(0), example());
    }

    #[test]
    fn canonical_form() {
        let a = Abacus::new(-3, [-3, -2, 0, 5]);
        assert_eq!(a.full_below(), -1);
        assert_eq!(a.proper_beads(), &[0, 5]);
        let parsed: Abacus = "x0=-3;beads=-3,-2,0,5".parse().unwrap();
        assert_eq!(parsed, a);
        assert_eq!(a.to_string(), "x0=-1;beads=0,5");
    }

    #[test]
    fn node_of_examples() {
        let a = example();
        assert_eq!(a.node_of(17), Node::new(1, 11));
        for pos in -20..30 {
            let n = a.node_of(pos);
            assert_eq!(n.col - n.row, pos - a.shift());
        }
    }

    #[test]
    fn statuses() {
        let a = example();
        assert!(a.bead_status(17, 7).initial);
        assert!(a.bead_status(8, 7).movable_up);
        assert!(!a.bead_status(-3, 7).proper);
        let s = a.space_status(a.smallest_space(), 7);
        assert!(s.initial);
        assert!(a.space_status(5, 7).initial);
        assert!(!a.space_status(4, 7).is_space);
    }

    #[test]
    fn bead_moves() {
        let a = example();
        let removed = a.remove_bead(17).unwrap();
        assert_eq!(removed.add_bead(17).unwrap(), a);
        assert_eq!(
            removed.to_partition(),
            a.to_partition().remove_node(a.node_of(17)).unwrap()
        );
        assert_eq!(a.remove_bead(9), Err(Error::NotInitialBead(9)));
        assert_eq!(a.add_bead(3), Err(Error::NotInitialSpace(3)));
        // Moving an improper bead materializes the region below.
        let m = a.move_bead(-2, 2).unwrap();
        assert_eq!(m, Abacus::new(-2, [-1, 0, 2, 4, 8, 9, 11, 14, 17]));
    }

    #[test]
    fn bead_selection() {
        let a = example();
        assert_eq!(a.bead_select(1, true), Ok(17));
        assert_eq!(a.bead_select(2, true), Ok(14));
        assert_eq!(a.bead_select(7, true), Ok(0));
        assert_eq!(a.bead_select(1, false), Ok(4));
        assert_eq!(a.bead_select(7, false), Err(Error::NotEnoughProperBeads(7)));
        let chi = a.bead_select(1, true).unwrap() - a.bead_select(1, false).unwrap() + 1;
        assert_eq!(chi, 14);
    }

    #[test]
    fn windows() {
        assert_eq!(window(9, &[1, 3, 4, 6], 5, 7), Ok(vec![18, 20, 22, 24]));
        assert_eq!(window(9, &[1, 3, 4, 6], 6, 7), Ok(vec![20, 22, 24, 25]));
        assert_eq!(window(0, &[0], 0, 7), Ok(vec![0]));
        assert_eq!(window(0, &[], 0, 7), Err(Error::EmptyS));
    }

    #[test]
    fn render_example() {
        let text = example().render(7);
        let expected = "p=7 shift=7\n0: \u{2218} \u{b7} \u{b7} \u{b7} \u{2218} \u{b7} \u{b7}\n1: \u{b7} \u{2218} \u{2218} \u{b7} \u{2218} \u{b7} \u{b7}\n2: \u{2218} \u{b7} \u{b7} \u{2218} \u{b7} \u{b7} \u{b7}\n";
        assert_eq!(text, expected);
        assert_eq!(Abacus::parse_render(&text), Ok((example(), 7)));
        let improper = Abacus::improper(14);
        assert_eq!(improper.render(7), "p=7 shift=14\n");
        assert_eq!(Abacus::parse_render(&improper.render(7)), Ok((improper, 7)));
    }

    #[test]
    fn classification_examples() {
        let sets = node_classification(&"1".parse().unwrap(), 2);
        assert_eq!(sets.good[0], Some(Node::new(1, 1)));
        let nu: Partition = "6,4,2,1".parse().unwrap();
        let sets = node_classification(&nu, 7);
        assert_eq!(sets.conormal[3], vec![Node::new(2, 5), Node::new(5, 1)]);
    }
}

//! Rim p-hooks, p-cores and the p-edge map φ.

use crate::abacus::Abacus;
use crate::error::{Error, Result};
use crate::partition::{Node, Partition};

/// A rim p-hook, anchored at the movable-up bead that produces it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HookHandle {
    pub bead: i64,
    /// `(Σ_{n≥a} Λ(n), Σ_{n≤a-p} (1 - Λ(n)))`: top row and leftmost column of the hook.
    pub base: Node,
}

/// One handle per movable-up bead, greatest bead first.
pub fn rim_hooks(abacus: &Abacus, p: u32) -> Vec<HookHandle> {
    let pi = p as i64;
    abacus
        .proper_beads()
        .iter()
        .rev()
        .filter(|&&a| !abacus.is_bead(a - pi))
        .map(|&a| HookHandle { bead: a, base: Node::new(abacus.node_of(a).row, abacus.node_of(a - pi).col) })
        .collect()
}

/// Rim hooks of `λ`, anchored on its shift-0 abacus.
pub fn partition_rim_hooks(lambda: &Partition, p: u32) -> Vec<HookHandle> {
    rim_hooks(&Abacus::from_partition(lambda, 0), p)
}

/// Removes the rim hook `handle` (anchored on the shift-0 abacus of `λ`).
pub fn remove_rim_hook(lambda: &Partition, handle: HookHandle, p: u32) -> Result<Partition> {
    let abacus = Abacus::from_partition(lambda, 0);
    if !rim_hooks(&abacus, p).contains(&handle) {
        return Err(Error::InvalidHandle);
    }
    let moved = abacus.move_bead(handle.bead, handle.bead - p as i64).ok_or(Error::InvalidHandle)?;
    Ok(moved.to_partition())
}

/// Hooks whose bead `u` has `u + 1` not movable up.
pub fn locally_highest_hooks(abacus: &Abacus, p: u32) -> Vec<HookHandle> {
    let pi = p as i64;
    rim_hooks(abacus, p)
        .into_iter()
        .filter(|h| {
            let u = h.bead + 1;
            !(abacus.is_bead(u) && !abacus.is_bead(u - pi))
        })
        .collect()
}

/// The p-core and p-weight, removing the highest rim p-hook at each step.
pub fn p_core(lambda: &Partition, p: u32) -> (Partition, usize) {
    let mut abacus = Abacus::from_partition(lambda, 0);
    let mut weight = 0;
    let pi = p as i64;
    loop {
        let top = abacus.proper_beads().iter().rev().copied().find(|&a| !abacus.is_bead(a - pi));
        match top {
            Some(a) => {
                abacus = abacus.move_bead(a, a - pi).expect("movable bead");
                weight += 1;
            }
            None => return (abacus.to_partition(), weight),
        }
    }
}

/// The p-edge removal `φ(Λ)` and its size `e(Λ)`.
pub fn p_edge_phi(abacus: &Abacus, p: u32) -> (Abacus, usize) {
    if !abacus.is_proper() {
        return (abacus.clone(), 0);
    }
    let pi = p as i64;
    let b = abacus.smallest_space();
    let proper = abacus.proper_beads();
    let mut chain = vec![abacus.greatest_bead()];
    loop {
        let t = chain[chain.len() - 1] - pi;
        if t < b {
            break;
        }
        // Greatest bead at or below t; stop if it is improper.
        let idx = proper.partition_point(|&c| c <= t);
        if idx == 0 {
            break;
        }
        chain.push(proper[idx - 1]);
    }
    let last = chain[chain.len() - 1];
    let target = if last - pi < b { b } else { last - pi };
    let mut image = abacus.move_bead(last, target).expect("target is a space");
    for &m in chain.iter().rev().skip(1) {
        image = image.move_bead(m, m - pi).expect("vacated position");
    }
    let e = abacus.to_partition().size() - image.to_partition().size();
    (image, e)
}

/// `φ` on partitions.
pub fn phi(lambda: &Partition, p: u32) -> (Partition, usize) {
    let (image, e) = p_edge_phi(&Abacus::from_partition(lambda, 0), p);
    (image.to_partition(), e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn hooks_of_example() {
        let l = part("5,4,2,2");
        let hooks = partition_rim_hooks(&l, 7);
        assert_eq!(hooks.len(), 1);
        assert_eq!(hooks[0].base, Node::new(1, 2));
        assert_eq!(remove_rim_hook(&l, hooks[0], 7), Ok(part("3,1,1,1")));
        let bogus = HookHandle { bead: 100, base: Node::new(1, 1) };
        assert_eq!(remove_rim_hook(&l, bogus, 7), Err(Error::InvalidHandle));
        let core = Abacus::from_partition(&part("3,1"), 0);
        assert!(rim_hooks(&core, 5).is_empty());
    }

    #[test]
    fn cores() {
        assert_eq!(p_core(&part("3,1"), 5), (part("3,1"), 0));
        assert_eq!(p_core(&part("2"), 2), (Partition::empty(), 1));
        assert_eq!(p_core(&part("8,6,6"), 5), (Partition::empty(), 4));
    }

    #[test]
    fn locally_highest() {
        // Beads 3 and 4 both movable up at p=2 (1 and 2 are spaces): only 4 survives.
        let a = Abacus::new(0, [3, 4]);
        let all: Vec<i64> = rim_hooks(&a, 2).iter().map(|h| h.bead).collect();
        assert_eq!(all, vec![4, 3]);
        let lh: Vec<i64> = locally_highest_hooks(&a, 2).iter().map(|h| h.bead).collect();
        assert_eq!(lh, vec![4]);
    }

    #[test]
    fn phi_examples() {
        let improper = Abacus::improper(3);
        assert_eq!(p_edge_phi(&improper, 5), (improper.clone(), 0));
        let (img, e) = phi(&part("9,6,5"), 5);
        assert_eq!(e, 10);
        assert_eq!(img.height(), 2);
        assert_eq!(phi(&part("2,1"), 2), (Partition::empty(), 3));
        assert_eq!(phi(&part("3"), 2), (part("1"), 2));
    }
}

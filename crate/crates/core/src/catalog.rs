//! Exhaustive enumeration of small origamis up to relabeling and `-I`.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::origami::Origami;
use crate::perm::{is_transitive, Permutation};
use crate::veech::OrigamiClass;

/// Integer partitions of `n` in non-increasing order.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Permutation with consecutive cycles of the given lengths.
fn with_cycle_type(n: usize, parts: &[usize]) -> Permutation {
    let mut images = vec![0; n];
    let mut start = 0;
    for &len in parts {
        for i in 0..len {
            images[start + i] = start + (i + 1) % len;
        }
        start += len;
    }
    Permutation::from_images(images).expect("cycle type builds a permutation")
}

/// One representative per class of connected origamis with exactly `n` squares.
///
/// Every class has a representative whose `h` is one of the cycle-type
/// normal forms, so only `p(n)·n!` pairs are visited.
pub fn classes_with(n: usize) -> Vec<Origami> {
    let mut seen: BTreeMap<OrigamiClass, Origami> = BTreeMap::new();
    for parts in partitions(n) {
        let h = with_cycle_type(n, &parts);
        for images in (0..n).permutations(n) {
            let v = Permutation::from_images(images).expect("permutations are bijections");
            if !is_transitive(n, &[&h, &v]) {
                continue;
            }
            let o = Origami::from_parts(h.clone(), v, false);
            seen.entry(OrigamiClass::of(&o)).or_insert(o);
        }
    }
    seen.into_keys().map(|c| c.representative(false)).collect()
}

/// All classes with at most `max_n` squares, ordered by square count then canonical key.
pub fn classes_up_to(max_n: usize) -> Vec<Origami> {
    (1..=max_n).flat_map(classes_with).collect()
}

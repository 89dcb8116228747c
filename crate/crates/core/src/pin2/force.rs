//! Recovering A'' from HM and A' alone.
//!
//! A' = sum over I1[n] of classes at n, n + 1 and over I2[n] of classes at
//! n, n + 2. Scanning gradings upward, the multiplicities j(g) of I1[g] and
//! k(g) of I2[g] must satisfy
//!
//! a1(g) = j(g) + j(g - 1) + k(g) + k(g - 2),
//!
//! so the only freedom at each grading is how a1(g) - j(g-1) - k(g-2) is
//! split between j(g) and k(g). The state (j(g-1), k(g-2), k(g-1)) ranges
//! over a finite set, and A' is periodic past its tail, so admissible
//! infinite sequences are the infinite paths of a finite graph.

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::profile::Profile;

type State = (i64, i64, i64);
type Node = (i64, State);

struct Search<'a> {
    a1: &'a Profile,
    tail: i64,
    end: i64,
}

impl Search<'_> {
    fn next_pos(&self, pos: i64) -> i64 {
        if pos + 1 == self.end { self.tail } else { pos + 1 }
    }

    /// Successor nodes with the value of k chosen at `pos`.
    fn successors(&self, (pos, (jp, k2, k1)): Node) -> Vec<(Node, i64)> {
        let r = self.a1.value(pos) - jp - k2;
        if r < 0 {
            return Vec::new();
        }
        let np = self.next_pos(pos);
        (0..=r).map(|j| ((np, (j, k1, r - j)), r - j)).collect()
    }
}

/// The unique A'' compatible with A' (and HM, through I0 = (HM - A')/2),
/// over lattice gradings.
pub fn force_second_derived(hm: &Profile, a1: &Profile) -> Result<Profile> {
    let i0 = hm.sub(a1);
    if !i0.is_nonnegative() || i0.halve().is_none() {
        return Err(Error::InconsistentRanks(format!("HM - A' = {i0} is not twice a nonnegative profile")));
    }
    if a1.is_zero() {
        return Ok(Profile::zero());
    }
    let low = a1.low();
    let tail = a1.tail_start();
    let search = Search { a1, tail, end: tail + a1.period_len() as i64 };
    let start: Node = (low, (0, 0, 0));

    // every node reachable from the start
    let mut graph: FxHashMap<Node, Vec<(Node, i64)>> = FxHashMap::default();
    let mut stack = vec![start];
    while let Some(node) = stack.pop() {
        if graph.contains_key(&node) {
            continue;
        }
        let succ = search.successors(node);
        stack.extend(succ.iter().map(|&(n, _)| n).filter(|n| !graph.contains_key(n)));
        graph.insert(node, succ);
    }

    // nodes from which an infinite path leaves
    let mut alive: FxHashSet<Node> = graph.keys().copied().collect();
    loop {
        let dead: Vec<Node> = alive
            .iter()
            .copied()
            .filter(|n| !graph[n].iter().any(|(m, _)| alive.contains(m)))
            .collect();
        if dead.is_empty() {
            break;
        }
        for n in dead {
            alive.remove(&n);
        }
    }
    if !alive.contains(&start) {
        return Err(Error::InconsistentRanks(format!("A' = {a1} admits no decomposition")));
    }

    let mut ks = Vec::new();
    let mut seen: FxHashMap<Node, usize> = FxHashMap::default();
    let mut node = start;
    let cycle_start = loop {
        if let Some(&i) = seen.get(&node) {
            break i;
        }
        seen.insert(node, ks.len());
        let live: Vec<&(Node, i64)> = graph[&node].iter().filter(|(m, _)| alive.contains(m)).collect();
        if live.len() > 1 {
            return Err(Error::AmbiguousGysinData(live.len()));
        }
        let &(next, k) = live[0];
        ks.push(k);
        node = next;
    };
    let k = Profile::new(low, ks[..cycle_start].to_vec(), ks[cycle_start..].to_vec());
    Ok(k.add(&k.shift(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pin2::gysin_decompose;
    use crate::report::r64;

    #[test]
    fn zero_forces_zero() {
        assert_eq!(force_second_derived(&Profile::zero(), &Profile::zero()).unwrap(), Profile::zero());
    }

    #[test]
    fn adjacent_pair_is_an_i1() {
        let a1 = Profile::from_values([(3, 1), (4, 1)]);
        assert_eq!(force_second_derived(&a1, &a1).unwrap(), Profile::zero());
    }

    #[test]
    fn gap_two_pair_is_an_i2() {
        let a1 = Profile::from_values([(3, 1), (5, 1)]);
        assert_eq!(force_second_derived(&a1, &a1).unwrap(), a1);
    }

    #[test]
    fn tower_with_odd_class() {
        // A' = F(-1) + (F(0) + F(2) + ...), HM with the tower at 0
        let a1 = Profile::from_values([(-1, 1)]).add(&Profile::tower(0, 2));
        let hm = Profile::from_values([(-2, 2), (-1, 1), (0, 2)]).add(&Profile::tower(0, 2));
        let a2 = force_second_derived(&hm, &a1).unwrap();
        assert_eq!(a2, Profile::tower(2, 2));
        let d = gysin_decompose(&hm, &a1, &a2, r64(0)).unwrap();
        assert_eq!(d.i2, Profile::tower(2, 4));
        assert_eq!(d.i1, Profile::from_values([(-1, 1)]));
    }

    #[test]
    fn four_in_a_row_is_ambiguous() {
        // I1[0] + I1[2] or I2[0] + I2[1]
        let a1 = Profile::from_values([(0, 1), (1, 1), (2, 1), (3, 1)]);
        assert_eq!(force_second_derived(&a1, &a1), Err(Error::AmbiguousGysinData(2)));
    }

    #[test]
    fn isolated_class_is_inconsistent() {
        let a1 = Profile::from_values([(0, 1)]);
        let hm = Profile::from_values([(0, 1)]);
        assert!(matches!(force_second_derived(&hm, &a1), Err(Error::InconsistentRanks(_))));
    }

    /// All k sequences solving the recursion for a finitely supported a1,
    /// by direct enumeration.
    fn solutions(a: &[i64]) -> Vec<Vec<i64>> {
        fn go(a: &[i64], g: usize, j: &mut Vec<i64>, k: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            let at = |v: &Vec<i64>, i: isize| if i < 0 { 0 } else { v[i as usize] };
            if g == a.len() {
                let n = a.len() as isize;
                // nothing may spill past the support
                if at(j, n - 1) == 0 && at(k, n - 1) == 0 && at(k, n - 2) == 0 {
                    out.push(k.clone());
                }
                return;
            }
            let r = a[g] - at(j, g as isize - 1) - at(k, g as isize - 2);
            for x in 0..=r.max(-1) {
                j.push(x);
                k.push(r - x);
                go(a, g + 1, j, k, out);
                j.pop();
                k.pop();
            }
        }
        let mut out = Vec::new();
        go(a, 0, &mut Vec::new(), &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn exhaustive_small_profiles() {
        let width = 6u32;
        for code in 0..3i64.pow(width) {
            let a: Vec<i64> = (0..width).map(|i| code / 3i64.pow(i) % 3).collect();
            let a1 = Profile::from_values(a.iter().enumerate().map(|(g, &v)| (g as i64, v)));
            let sols = solutions(&a);
            match force_second_derived(&a1, &a1) {
                Ok(a2) => {
                    assert_eq!(sols.len(), 1, "{a:?}");
                    let k = Profile::from_values(sols[0].iter().enumerate().map(|(g, &v)| (g as i64, v)));
                    assert_eq!(a2, k.add(&k.shift(2)), "{a:?}");
                }
                Err(Error::AmbiguousGysinData(_)) => assert!(sols.len() > 1, "{a:?}"),
                Err(Error::InconsistentRanks(_)) => assert!(sols.is_empty(), "{a:?}"),
                Err(e) => panic!("{a:?}: {e}"),
            }
        }
    }
}

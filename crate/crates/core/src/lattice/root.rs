use num_rational::Rational64;
use serde::Serialize;

use super::{build_slice, WeightedLattice, DEFAULT_BUDGET};
use crate::cubical::CubicalComplex;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootOptions {
    /// Compute every level up to this one instead of stopping at the first
    /// confirmed stable level.
    pub max_level: Option<i64>,
    pub budget: u64,
    /// Highest cohomological degree computed.
    pub max_degree: usize,
    /// Compute the involution on components and on H^1 when the orbit is
    /// self-conjugate.
    pub symmetry: bool,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self { max_level: None, budget: DEFAULT_BUDGET, max_degree: 2, symmetry: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub size: u64,
    /// First point of the component in enumeration order.
    pub seed: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootLevel {
    pub level: i64,
    pub points: u64,
    /// Cube counts by dimension, up to one above `betti`.
    pub cells: Vec<u64>,
    /// Mod 2 Betti numbers h^0..h^q of the slice.
    pub betti: Vec<u64>,
    pub components: Vec<Component>,
    /// Component of the next level containing each component; empty at the top.
    pub parent: Vec<usize>,
    pub involution: Option<Vec<usize>>,
    /// Rank of 1 + J on H^1, when computed.
    pub h1_rank_one_plus_j: Option<u64>,
}

impl RootLevel {
    pub fn is_stable(&self) -> bool {
        self.components.len() == 1 && self.betti.iter().skip(1).all(|&b| b == 0)
    }

    pub fn h1(&self) -> u64 {
        self.betti.get(1).copied().unwrap_or(0)
    }

    /// Components mapped to themselves by J.
    pub fn fixed(&self) -> Vec<usize> {
        match &self.involution {
            Some(j) => (0..j.len()).filter(|&c| j[c] == c).collect(),
            None => Vec::new(),
        }
    }

    /// Swapped pairs (a, J(a)) with a < J(a).
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        match &self.involution {
            Some(j) => (0..j.len()).filter(|&c| j[c] > c).map(|c| (c, j[c])).collect(),
            None => Vec::new(),
        }
    }
}

/// The merge tree of components of S_n from the minimal level up to one
/// level past stabilization, with per-level cohomology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedRoot {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub sigma: Rational64,
    pub n_min: i64,
    /// First level from which every slice is connected and acyclic.
    pub n_stab: i64,
    pub self_conjugate: bool,
    pub levels: Vec<RootLevel>,
}

impl GradedRoot {
    pub fn level(&self, n: i64) -> Option<&RootLevel> {
        if n < self.n_min {
            return None;
        }
        self.levels.get((n - self.n_min) as usize)
    }

    pub fn top_level(&self) -> i64 {
        self.n_min + self.levels.len() as i64 - 1
    }

    /// Rank of H^0(S_n), including levels past the computed range.
    pub fn components_at(&self, n: i64) -> usize {
        match self.level(n) {
            Some(l) => l.components.len(),
            None if n < self.n_min => 0,
            None => 1,
        }
    }

    pub fn betti_at(&self, n: i64, q: usize) -> u64 {
        if q == 0 {
            return self.components_at(n) as u64;
        }
        self.level(n).and_then(|l| l.betti.get(q).copied()).unwrap_or(0)
    }

    pub fn h1_profile(&self) -> Vec<(i64, u64)> {
        self.levels.iter().filter(|l| l.h1() > 0).map(|l| (l.level, l.h1())).collect()
    }
}

pub fn graded_root(lat: &WeightedLattice, opts: &RootOptions) -> Result<GradedRoot> {
    let mut levels: Vec<RootLevel> = Vec::new();
    let mut n = lat.n_min;
    if let Some(m) = opts.max_level {
        if m < n + 1 {
            return Err(Error::StabilizationNotReached(m));
        }
    }
    let n_stab = loop {
        let slice = build_slice(lat, n, opts.budget)?;
        if let Some(prev) = levels.last_mut() {
            prev.parent = prev
                .components
                .iter()
                .map(|c| {
                    let i = slice.lookup(&c.seed).expect("sublevel sets are nested");
                    slice.labels[i as usize] as usize
                })
                .collect();
        }
        let seeds = slice.component_seeds();
        let cx = CubicalComplex::build(&slice.neighbors, opts.max_degree + 1);
        let hom = cx.homology(&seeds);
        let mut involution = None;
        let mut h1_rank = None;
        if opts.symmetry && lat.is_self_conjugate() {
            let mut jvert = Vec::with_capacity(slice.len());
            for i in 0..slice.len() {
                let x = slice.point(i);
                let jx = lat.involution(x).unwrap();
                let j = slice.lookup(&jx).ok_or(Error::SymmetryViolation)?;
                if lat.weight(&jx) != lat.weight(x) {
                    return Err(Error::SymmetryViolation);
                }
                jvert.push(j);
            }
            involution = Some(seeds.iter().map(|&s| slice.labels[jvert[s as usize] as usize] as usize).collect());
            if hom.betti.get(1).copied().unwrap_or(0) > 0 && cx.top() >= 2 {
                let (dim, rank) = cx.h1_involution(&jvert);
                debug_assert_eq!(dim, hom.betti[1]);
                if dim != hom.betti[1] {
                    return Err(Error::InconsistentRanks(format!("H^1 basis at level {n}")));
                }
                h1_rank = Some(rank);
            }
        }
        let sizes = slice.component_sizes();
        levels.push(RootLevel {
            level: n,
            points: slice.len() as u64,
            cells: hom.cells,
            betti: hom.betti,
            components: seeds
                .iter()
                .zip(sizes)
                .map(|(&s, size)| Component { size, seed: slice.point(s as usize).to_vec() })
                .collect(),
            parent: Vec::new(),
            involution,
            h1_rank_one_plus_j: h1_rank,
        });
        match opts.max_level {
            Some(m) if n < m => {}
            Some(m) => {
                let stable_from = levels.iter().rposition(|l| !l.is_stable()).map_or(0, |i| i + 1);
                if stable_from + 1 >= levels.len() {
                    return Err(Error::StabilizationNotReached(m));
                }
                break levels[stable_from].level;
            }
            None => {
                let k = levels.len();
                if k >= 2 && levels[k - 1].is_stable() && levels[k - 2].is_stable() {
                    break n - 1;
                }
            }
        }
        n += 1;
    };
    Ok(GradedRoot {
        sigma: lat.sigma,
        n_min: lat.n_min,
        n_stab,
        self_conjugate: lat.is_self_conjugate(),
        levels,
    })
}

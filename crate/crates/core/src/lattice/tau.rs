//! One-dimensional reduction: minimize the weight over the fibers of a single
//! coordinate and read the graded root off the resulting integer sequence.

use serde::Serialize;

use super::{GradedRoot, WeightedLattice};
use crate::error::{Error, Result};
use crate::plumbing::IntersectionForm;
use crate::quadratic::QuadraticForm;

/// The bad vertex if there is one, else a vertex of maximal degree.
pub fn distinguished_vertex(form: &IntersectionForm) -> Result<usize> {
    let bad = form.bad_vertices();
    match bad.len() {
        0 => Ok((0..form.dim()).max_by_key(|&v| (form.degree(v), std::cmp::Reverse(v))).unwrap()),
        1 => Ok(bad[0]),
        n => Err(Error::TooManyBadVertices(n)),
    }
}

/// tau(i) = min { w0(x) : x_v = i } for i in start..start + values.len();
/// outside that range tau exceeds the level it was computed for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauProfile {
    pub vertex: usize,
    pub start: i64,
    pub values: Vec<i64>,
}

pub fn tau_profile(lat: &WeightedLattice, vertex: usize, n_top: i64) -> Result<TauProfile> {
    let s = lat.dim();
    let a = lat.qf.matrix();
    let b = lat.char_vector.values();
    // v moved to the last coordinate to read off the fiber range
    let order: Vec<usize> = (0..s).filter(|&u| u != vertex).chain([vertex]).collect();
    let perm_a: Vec<i64> = (0..s * s).map(|k| a[order[k / s] * s + order[k % s]]).collect();
    let perm_b: Vec<i64> = order.iter().map(|&u| b[u]).collect();
    let full = QuadraticForm::new(s, &perm_a)?;
    let Some((lo, hi)) = full.last_coordinate_range(&full.prepare(&perm_b)?, 2 * n_top) else {
        return Ok(TauProfile { vertex, start: 0, values: Vec::new() });
    };
    let rest = &order[..s - 1];
    let sub_a: Vec<i64> = (0..(s - 1) * (s - 1)).map(|k| perm_a[(k / (s - 1)) * s + k % (s - 1)]).collect();
    let fiber = QuadraticForm::new(s - 1, &sub_a)?;
    let diag = a[vertex * s + vertex];
    let mut values = Vec::with_capacity((hi - lo + 1) as usize);
    for i in lo..=hi {
        let bi: Vec<i64> = rest.iter().map(|&u| b[u] - 2 * i * a[u * s + vertex]).collect();
        let (m, _) = fiber.minimum(&fiber.prepare(&bi)?)?;
        let total = m + diag * i * i - b[vertex] * i;
        values.push(total / 2);
    }
    Ok(TauProfile { vertex, start: lo, values })
}

/// Merge tree by levels: `counts[k]` nodes at level n_min + k, and the
/// parent of each node one level up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MergeTree {
    pub n_min: i64,
    pub counts: Vec<usize>,
    pub parents: Vec<Vec<usize>>,
}

impl MergeTree {
    pub fn from_root(root: &GradedRoot) -> Self {
        Self {
            n_min: root.n_min,
            counts: root.levels.iter().map(|l| l.components.len()).collect(),
            parents: root.levels[..root.levels.len() - 1].iter().map(|l| l.parent.clone()).collect(),
        }
    }

    /// Canonical string of the unordered rooted forest, so that isomorphic
    /// trees compare equal.
    pub fn canonical(&self) -> String {
        let mut codes: Vec<String> = vec!["()".to_string(); self.counts.first().copied().unwrap_or(0)];
        for (k, parents) in self.parents.iter().enumerate() {
            let mut kids: Vec<Vec<String>> = vec![Vec::new(); self.counts[k + 1]];
            for (c, &p) in parents.iter().enumerate() {
                kids[p].push(std::mem::take(&mut codes[c]));
            }
            codes = kids
                .into_iter()
                .map(|mut ks| {
                    ks.sort();
                    format!("({})", ks.concat())
                })
                .collect();
        }
        codes.sort();
        format!("{}:{}", self.n_min, codes.concat())
    }
}

/// Merge tree of the sublevel sets of tau on levels min(tau)..=n_top; the
/// components at level n are maximal runs of i with tau(i) <= n.
pub fn tau_graded_root(profile: &TauProfile, n_top: i64) -> MergeTree {
    let n_min = profile.values.iter().copied().min().unwrap_or(n_top);
    let runs = |n: i64| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, &v) in profile.values.iter().enumerate() {
            match (v <= n, start) {
                (true, None) => start = Some(i),
                (false, Some(s)) => {
                    out.push((s, i));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s, profile.values.len()));
        }
        out
    };
    let mut counts = Vec::new();
    let mut parents = Vec::new();
    let mut prev: Option<Vec<(usize, usize)>> = None;
    for n in n_min..=n_top {
        let cur = runs(n);
        if let Some(p) = prev {
            parents.push(
                p.iter()
                    .map(|&(s, _)| cur.iter().position(|&(a, b)| a <= s && s < b).expect("runs are nested"))
                    .collect(),
            );
        }
        counts.push(cur.len());
        prev = Some(cur);
    }
    MergeTree { n_min, counts, parents }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plumbing::{build_intersection_form, PlumbingGraph, Vertex};
    use crate::spinc::CharVector;

    #[test]
    fn lens_tau() {
        let f = build_intersection_form(&PlumbingGraph { vertices: vec![Vertex { id: 0, weight: -2 }], edges: vec![] })
            .unwrap();
        let lat = WeightedLattice::new(&f, &CharVector(vec![0])).unwrap();
        let t = tau_profile(&lat, 0, 9).unwrap();
        assert_eq!(t.start, -3);
        assert_eq!(t.values, vec![9, 4, 1, 0, 1, 4, 9]);
    }

    #[test]
    fn runs_merge() {
        let t = TauProfile { vertex: 0, start: 0, values: vec![0, 1, 0, 2, -1, 3] };
        let tree = tau_graded_root(&t, 3);
        assert_eq!(tree.counts, vec![1, 3, 2, 1, 1]);
        assert_eq!(tree.parents[0], vec![2]);
    }
}

//! Weight functions on Z^s, their sublevel sets and lattice cohomology.

mod module;
mod render;
mod root;
mod tau;

pub use module::{barcode, hm_module, Bar, CyclicSummand, GradedModule};
pub use render::{render_ascii, render_dot, render_text};
pub use root::{graded_root, Component, GradedRoot, RootLevel, RootOptions};
pub use tau::{distinguished_vertex, tau_graded_root, tau_profile, MergeTree, TauProfile};

use num_rational::Rational64;
use rustc_hash::FxHashMap;

use crate::cubical::{Neighbors, NONE};
use crate::error::{Error, Result};
use crate::plumbing::IntersectionForm;
use crate::quadratic::{Linear, QuadraticForm};
use crate::spinc::{self, CharVector};
use crate::union_find::DisjointSet;

pub const DEFAULT_BUDGET: u64 = 100_000_000;
pub const BUDGET_ENV: &str = "LATTICEROOT_BUDGET";

/// Point budget from the environment, falling back to the default.
pub fn budget_from_env() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// The weight function w0(x) = -((x, x) + (x, k)) / 2 of a characteristic
/// vector on the lattice of a negative definite plumbing.
#[derive(Debug, Clone)]
pub struct WeightedLattice {
    pub form: IntersectionForm,
    pub char_vector: CharVector,
    pub qf: QuadraticForm,
    lin: Linear,
    /// M^{-1} l when the orbit is self-conjugate.
    pub kappa: Option<Vec<i64>>,
    pub k_square: Rational64,
    pub sigma: Rational64,
    pub n_min: i64,
    pub minimizers: Vec<Vec<i64>>,
}

impl WeightedLattice {
    pub fn new(form: &IntersectionForm, l: &CharVector) -> Result<Self> {
        let l = CharVector::new(form, l.0.clone())?;
        let qf = spinc::positive_form(form)?;
        let lin = qf.prepare(&l.0)?;
        let (min, minimizers) = qf.minimum(&lin)?;
        Ok(Self {
            form: form.clone(),
            kappa: spinc::integral_kappa(form, &l),
            k_square: spinc::k_square(form, &l)?,
            sigma: spinc::sigma_shift(form, &l)?,
            n_min: min / 2,
            minimizers,
            char_vector: l,
            qf,
            lin,
        })
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn weight(&self, x: &[i64]) -> i64 {
        self.qf.value(self.lin.coefficients(), x) / 2
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.kappa.is_some()
    }

    /// J(x) = -x - kappa.
    pub fn involution(&self, x: &[i64]) -> Option<Vec<i64>> {
        self.kappa.as_ref().map(|k| x.iter().zip(k).map(|(a, b)| -a - b).collect())
    }

    pub fn bad_count(&self) -> usize {
        self.form.bad_vertices().len()
    }

    /// Calls `f` on each point of weight at most n, refusing when the
    /// region is predicted to hold more than `budget` points.
    pub fn try_for_each_point<F>(&self, n: i64, budget: u64, mut f: F) -> Result<()>
    where
        F: FnMut(&[i64]) -> Result<()>,
    {
        let estimate = self.qf.estimate(self.lin.coefficients(), 2 * n);
        if estimate > 8.0 * budget as f64 {
            return Err(Error::CapacityExceeded(format!(
                "level {n} is predicted to hold about {estimate:.3e} points (budget {budget})"
            )));
        }
        let mut count = 0u64;
        self.qf.try_for_each(&self.lin, 2 * n, |x, _| {
            count += 1;
            if count > budget {
                return Err(Error::CapacityExceeded(format!("level {n} holds more than {budget} points")));
            }
            f(x)
        })
    }
}

/// All x with w0(x) <= n, in enumeration order.
pub fn enumerate_points(lat: &WeightedLattice, n: i64, budget: u64) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    lat.try_for_each_point(n, budget, |x| {
        out.push(x.to_vec());
        Ok(())
    })?;
    Ok(out)
}

/// Packs points of a bounding box (with a margin of one) into u128 keys.
#[derive(Debug, Clone)]
struct KeyCodec {
    lo: Vec<i64>,
    hi: Vec<i64>,
    mult: Vec<u128>,
}

impl KeyCodec {
    fn new(dim: usize, coords: &[i64]) -> Result<Self> {
        let empty = coords.is_empty();
        let mut lo = vec![if empty { 0 } else { i64::MAX }; dim];
        let mut hi = vec![if empty { 0 } else { i64::MIN }; dim];
        for p in coords.chunks(dim.max(1)) {
            for d in 0..dim {
                lo[d] = lo[d].min(p[d]);
                hi[d] = hi[d].max(p[d]);
            }
        }
        let mut mult = Vec::with_capacity(dim);
        let mut acc: u128 = 1;
        for d in 0..dim {
            lo[d] -= 1;
            hi[d] += 1;
            mult.push(acc);
            let span = (hi[d] - lo[d] + 1) as u128;
            acc = acc
                .checked_mul(span)
                .ok_or_else(|| Error::CapacityExceeded("slice bounding box too large to index".into()))?;
        }
        Ok(Self { lo, hi, mult })
    }

    fn key(&self, x: &[i64]) -> Option<u128> {
        let mut k = 0u128;
        for (d, &v) in x.iter().enumerate() {
            if v < self.lo[d] || v > self.hi[d] {
                return None;
            }
            k += (v - self.lo[d]) as u128 * self.mult[d];
        }
        Some(k)
    }
}

/// The sublevel set S_n: its points, adjacency and connected components.
#[derive(Debug, Clone)]
pub struct SublevelSlice {
    pub level: i64,
    pub dim: usize,
    coords: Vec<i64>,
    codec: KeyCodec,
    index: FxHashMap<u128, u32>,
    pub neighbors: Neighbors,
    /// Component id of each point, numbered by first appearance.
    pub labels: Vec<u32>,
    pub components: usize,
}

impl SublevelSlice {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn point(&self, i: usize) -> &[i64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn lookup(&self, x: &[i64]) -> Option<u32> {
        self.codec.key(x).and_then(|k| self.index.get(&k).copied())
    }

    /// First point of each component.
    pub fn component_seeds(&self) -> Vec<u32> {
        let mut seeds = vec![NONE; self.components];
        for (i, &c) in self.labels.iter().enumerate() {
            if seeds[c as usize] == NONE {
                seeds[c as usize] = i as u32;
            }
        }
        seeds
    }

    pub fn component_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0u64; self.components];
        for &c in &self.labels {
            sizes[c as usize] += 1;
        }
        sizes
    }
}

pub fn build_slice(lat: &WeightedLattice, n: i64, budget: u64) -> Result<SublevelSlice> {
    let dim = lat.dim();
    let mut coords = Vec::new();
    lat.try_for_each_point(n, budget, |x| {
        coords.extend_from_slice(x);
        Ok(())
    })?;
    let npts = coords.len() / dim;
    if npts >= NONE as usize {
        return Err(Error::CapacityExceeded("too many points to index".into()));
    }
    let codec = KeyCodec::new(dim, &coords)?;
    let mut index = FxHashMap::default();
    index.reserve(npts);
    for (i, p) in coords.chunks(dim).enumerate() {
        index.insert(codec.key(p).expect("inside bounding box"), i as u32);
    }
    let mut plus = vec![NONE; npts * dim];
    let mut minus = vec![NONE; npts * dim];
    for (i, p) in coords.chunks(dim).enumerate() {
        let k = codec.key(p).unwrap();
        for d in 0..dim {
            if let Some(&j) = index.get(&(k + codec.mult[d])) {
                plus[i * dim + d] = j;
                minus[j as usize * dim + d] = i as u32;
            }
        }
    }
    let mut ds = DisjointSet::new(npts);
    for (i, &j) in plus.iter().enumerate() {
        if j != NONE {
            ds.union(i / dim, j as usize);
        }
    }
    let (labels, components) = ds.labels();
    Ok(SublevelSlice {
        level: n,
        dim,
        coords,
        codec,
        index,
        neighbors: Neighbors { dim, plus, minus },
        labels,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plumbing::{build_intersection_form, PlumbingGraph, Vertex};

    fn single(m: i64) -> IntersectionForm {
        build_intersection_form(&PlumbingGraph { vertices: vec![Vertex { id: 0, weight: m }], edges: vec![] })
            .unwrap()
    }

    #[test]
    fn lens_points() {
        let f = single(-2);
        let lat = WeightedLattice::new(&f, &CharVector(vec![0])).unwrap();
        let pts = enumerate_points(&lat, 1, 1000).unwrap();
        assert_eq!(pts, vec![vec![-1], vec![0], vec![1]]);
        let s = build_slice(&lat, 1, 1000).unwrap();
        assert_eq!(s.components, 1);
        assert!(enumerate_points(&lat, -1, 1000).unwrap().is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let f = single(-2);
        let lat = WeightedLattice::new(&f, &CharVector(vec![0])).unwrap();
        assert!(matches!(enumerate_points(&lat, 100, 5), Err(Error::CapacityExceeded(_))));
    }
}

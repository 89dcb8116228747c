use num_rational::Rational64;
use serde::Serialize;

use super::GradedRoot;
use crate::error::{Error, Result};
use crate::report::{fmt_rational, r64};

/// A persistence bar of the merge tree, in levels: a class born at `birth`
/// that merges into an older one at `death`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Bar {
    pub birth: i64,
    pub death: Option<i64>,
}

/// Bars of the graded root by the elder rule: when branches merge, the one
/// born latest dies.
pub fn barcode(root: &GradedRoot) -> Vec<Bar> {
    let mut bars = Vec::new();
    let mut births: Vec<i64> = vec![root.n_min; root.levels[0].components.len()];
    for w in root.levels.windows(2) {
        let (lower, upper) = (&w[0], &w[1]);
        let mut kids: Vec<Vec<usize>> = vec![Vec::new(); upper.components.len()];
        for (c, &p) in lower.parent.iter().enumerate() {
            kids[p].push(c);
        }
        let mut next = Vec::with_capacity(upper.components.len());
        for ks in &kids {
            if ks.is_empty() {
                next.push(upper.level);
                continue;
            }
            let elder = *ks.iter().min_by_key(|&&c| (births[c], c)).unwrap();
            for &c in ks {
                if c != elder {
                    bars.push(Bar { birth: births[c], death: Some(upper.level) });
                }
            }
            next.push(births[elder]);
        }
        births = next;
    }
    bars.extend(births.into_iter().map(|b| Bar { birth: b, death: None }));
    bars.sort();
    bars
}

/// F[U]/U^length with its top generator in grading `top`; U lowers grading by 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicSummand {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub top: Rational64,
    pub length: u64,
}

/// A graded F[U]-module: towers plus a finite part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedModule {
    #[serde(serialize_with = "crate::report::ser_rationals")]
    pub towers: Vec<Rational64>,
    #[serde(serialize_with = "crate::report::ser_graded")]
    pub finite: Vec<(Rational64, u64)>,
    /// U-module structure of the finite part in even degree.
    pub cyclic: Vec<CyclicSummand>,
    /// Shift relating lattice gradings to module gradings.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub sigma: Rational64,
}

impl GradedModule {
    pub fn delta(&self) -> Option<Rational64> {
        self.towers.first().map(|d| d / 2)
    }

    pub fn finite_rank_at(&self, g: Rational64) -> u64 {
        self.finite.iter().filter(|(h, _)| *h == g).map(|(_, r)| r).sum()
    }

    pub fn rank_at(&self, g: Rational64) -> u64 {
        let towers = self
            .towers
            .iter()
            .filter(|&&b| g >= b && ((g - b) / 2).is_integer())
            .count() as u64;
        towers + self.finite_rank_at(g)
    }

    /// Finite part split by the parity of (grading - sigma).
    pub fn parity_split(&self) -> (Vec<(Rational64, u64)>, Vec<(Rational64, u64)>) {
        self.finite
            .iter()
            .copied()
            .partition(|(g, _)| ((*g - self.sigma) / 2).is_integer())
    }

    pub fn odd_part(&self) -> Vec<(Rational64, u64)> {
        self.parity_split().1
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.towers.iter().map(|b| format!("U+({})", fmt_rational(b))).collect();
        let mut finite: Vec<String> = Vec::new();
        let mut singles: Vec<(Rational64, u64)> = self.finite.clone();
        for c in self.cyclic.iter().filter(|c| c.length > 1) {
            let gs: Vec<String> = (0..c.length)
                .rev()
                .map(|i| format!("F({})", fmt_rational(&(c.top - r64(2 * i as i64)))))
                .collect();
            finite.push(format!("[{}]", gs.join(" + ")));
            for i in 0..c.length {
                let g = c.top - r64(2 * i as i64);
                if let Some(e) = singles.iter_mut().find(|(h, _)| *h == g) {
                    e.1 -= 1;
                }
            }
        }
        for (g, r) in singles {
            for _ in 0..r {
                finite.push(format!("F({})", fmt_rational(&g)));
            }
        }
        parts.extend(finite);
        parts.join(" + ")
    }
}

fn push_rank(v: &mut Vec<(Rational64, u64)>, g: Rational64, r: u64) {
    if r == 0 {
        return;
    }
    match v.iter_mut().find(|(h, _)| *h == g) {
        Some(e) => e.1 += r,
        None => v.push((g, r)),
    }
}

/// HM of the orientation reversed boundary in this spin^c structure: the
/// even part is H^0 of the sublevel sets shifted by sigma, the odd part
/// H^1 shifted by sigma - 1.
pub fn hm_module(root: &GradedRoot, bad_vertices: usize) -> Result<GradedModule> {
    if bad_vertices > 2 {
        return Err(Error::MoreThanTwoBadVertices(bad_vertices));
    }
    let sigma = root.sigma;
    let grading = |n: i64| r64(2 * n) + sigma;
    let mut towers = Vec::new();
    let mut finite = Vec::new();
    let mut cyclic = Vec::new();
    for bar in barcode(root) {
        match bar.death {
            None => towers.push(grading(bar.birth)),
            Some(d) => {
                for n in bar.birth..d {
                    push_rank(&mut finite, grading(n), 1);
                }
                cyclic.push(CyclicSummand { top: grading(d - 1), length: (d - bar.birth) as u64 });
            }
        }
    }
    for l in &root.levels {
        if let Some(q) = l.betti.iter().skip(2).position(|&b| b > 0) {
            return Err(Error::InconsistentRanks(format!("h^{} nonzero at level {}", q + 2, l.level)));
        }
        if l.h1() > 0 {
            if bad_vertices <= 1 {
                return Err(Error::InconsistentRanks(format!("h^1 nonzero at level {} with one bad vertex", l.level)));
            }
            push_rank(&mut finite, grading(l.level) - 1, l.h1());
        }
    }
    towers.sort();
    finite.sort();
    cyclic.sort_by_key(|a| (a.top, a.length));
    Ok(GradedModule { towers, finite, cyclic, sigma })
}

//! The involution J(x) = -x - kappa on self-conjugate sublevel sets and the
//! groups it determines.

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{GradedRoot, WeightedLattice};
use crate::profile::Profile;
use crate::report::r64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelSymmetry {
    pub level: i64,
    pub fixed: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
    /// Rank of 1 + J on H^1 when H^1 is nonzero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h1_rank_one_plus_j: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryData {
    pub kappa: Vec<i64>,
    pub levels: Vec<LevelSymmetry>,
    /// Least lattice grading 2n with a J-invariant component of S_n.
    pub r: i64,
    /// 2 max w0 over the vertices of the smallest cube containing -kappa/2.
    pub center_cube_grading: i64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub rho: Rational64,
}

fn check_root(lat: &WeightedLattice, root: &GradedRoot) -> Result<Vec<i64>> {
    let kappa = lat.kappa.clone().ok_or(Error::NotSelfConjugate)?;
    if root.levels.iter().any(|l| l.involution.is_none()) {
        return Err(Error::InconsistentRanks("graded root was computed without the involution".into()));
    }
    Ok(kappa)
}

/// The cube of points x with x_v in {floor(-kappa_v/2), ceil(-kappa_v/2)};
/// J maps it to itself.
pub fn center_cube(kappa: &[i64]) -> Vec<Vec<i64>> {
    let mut cube = vec![Vec::new()];
    for &k in kappa {
        let lo = (-k).div_euclid(2);
        let choices: &[i64] = if k % 2 == 0 { &[0] } else { &[0, 1] };
        cube = cube
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                choices.iter().map(move |&c| {
                    let mut q = p.clone();
                    q.push(lo + c);
                    q
                })
            })
            .collect();
    }
    cube
}

/// r computed two ways: from the root (least level with a fixed component)
/// and from the center cube. With at most one bad vertex every J-invariant
/// component contains the center cube, so the two must agree.
pub fn parity_r(lat: &WeightedLattice, root: &GradedRoot) -> Result<(i64, i64)> {
    let kappa = check_root(lat, root)?;
    let from_root = root
        .levels
        .iter()
        .find(|l| !l.fixed().is_empty())
        .map(|l| 2 * l.level)
        .ok_or_else(|| Error::InconsistentRanks("no J-invariant component up to the top level".into()))?;
    let from_cube = 2 * center_cube(&kappa).iter().map(|x| lat.weight(x)).max().unwrap_or(0);
    if lat.bad_count() <= 1 && from_root != from_cube {
        return Err(Error::InternalMismatch(format!(
            "J-invariant component at grading {from_root}, center cube at {from_cube}"
        )));
    }
    Ok((from_root, from_cube))
}

pub fn involution_on_slices(lat: &WeightedLattice, root: &GradedRoot) -> Result<SymmetryData> {
    let kappa = check_root(lat, root)?;
    let (r, center_cube_grading) = parity_r(lat, root)?;
    let levels = root
        .levels
        .iter()
        .map(|l| LevelSymmetry {
            level: l.level,
            fixed: l.fixed(),
            pairs: l.pairs(),
            h1_rank_one_plus_j: l.h1_rank_one_plus_j,
        })
        .collect();
    Ok(SymmetryData { kappa, levels, r, center_cube_grading, rho: r64(r) + root.sigma })
}

/// Rank profiles, over lattice gradings, of the derived groups of 1 + J:
/// `even` on H^0 (one class per fixed component) and `odd` on H^1, where
/// the rank is dim H^1 - 2 rank(1 + J), placed in grading 2n - 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedModule {
    pub even: Profile,
    pub odd: Profile,
}

impl DerivedModule {
    pub fn total(&self) -> Profile {
        self.even.add(&self.odd)
    }
}

/// H' = ker(1 + J) / im(1 + J) on H^0 by level: a fixed component
/// contributes one class, a swapped pair none. Past the computed range
/// S_n is connected, hence contributes 1.
pub fn derived_cohomology(lat: &WeightedLattice, root: &GradedRoot) -> Result<Profile> {
    check_root(lat, root)?;
    let head: Vec<i64> = root.levels.iter().map(|l| l.fixed().len() as i64).collect();
    Ok(expand_levels(root.n_min, &head))
}

/// Per-level values at lattice gradings 2n, with 1 at every even grading
/// past the last level.
pub(crate) fn expand_levels(n_min: i64, per_level: &[i64]) -> Profile {
    let mut head = Vec::with_capacity(2 * per_level.len());
    for &v in per_level {
        head.push(v);
        head.push(0);
    }
    Profile::new(2 * n_min, head, vec![1, 0])
}

pub fn derived_total(lat: &WeightedLattice, root: &GradedRoot) -> Result<DerivedModule> {
    let even = derived_cohomology(lat, root)?;
    let mut odd = Vec::new();
    for l in &root.levels {
        let h1 = l.h1() as i64;
        if h1 == 0 {
            continue;
        }
        let rank = l
            .h1_rank_one_plus_j
            .ok_or_else(|| Error::InconsistentRanks(format!("1 + J on H^1 missing at level {}", l.level)))?
            as i64;
        odd.push((2 * l.level - 1, h1 - 2 * rank));
    }
    Ok(DerivedModule { even, odd: Profile::from_values(odd) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn center_cube_shape() {
        let c = center_cube(&[2, 1, -3]);
        assert_eq!(c.len(), 4);
        assert!(c.contains(&vec![-1, -1, 1]));
        assert!(c.contains(&vec![-1, 0, 2]));
    }

    #[test]
    fn expanded_levels() {
        let p = expand_levels(-1, &[0, 1, 1]);
        assert_eq!(p.value(-2), 0);
        assert_eq!(p.value(0), 1);
        assert_eq!(p.value(1), 0);
        assert_eq!(p.value(10), 1);
        assert_eq!(p.low(), 0);
    }
}

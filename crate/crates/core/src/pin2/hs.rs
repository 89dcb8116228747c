use num_rational::Rational64;

use super::{assemble, PinModule, QMap};
use crate::error::{Error, Result};
use crate::lattice::{GradedRoot, WeightedLattice};
use crate::profile::Profile;
use crate::report::r64;
use crate::symmetry::parity_r;

/// Per-level counts of fixed components and swapped pairs, with the
/// connected, fixed slices past the top.
struct Counts<'a>(&'a GradedRoot);

impl Counts<'_> {
    fn fixed(&self, n: i64) -> i64 {
        match self.0.level(n) {
            Some(l) => l.fixed().len() as i64,
            None => (n > self.0.top_level()) as i64,
        }
    }

    fn pairs(&self, n: i64) -> i64 {
        self.0.level(n).map_or(0, |l| l.pairs().len() as i64)
    }
}

/// HS of (-Y, s) for at most one bad vertex, by residue class of the
/// lattice grading g modulo 4 relative to r:
///
/// - r: H^0 / im(1 + J), rank f + p (f fixed components, p pairs)
/// - r + 1: H' in grading g - 1, rank f
/// - r + 2: ker(1 + J), rank f + p
/// - r + 3: zero
///
/// Q maps ker(1 + J) in grading g onto H' and then by U into H'[1] at
/// g - 1, and includes H'[1] at g into H^0 / im(1 + J) at g - 1.
pub fn hs_module_one_bad(lat: &WeightedLattice, root: &GradedRoot) -> Result<PinModule> {
    let bad = lat.bad_count();
    if bad > 1 {
        return Err(Error::TooManyBadVertices(bad));
    }
    let (r, _) = parity_r(lat, root)?;
    let counts = Counts(root);
    let t = 2 * root.n_min;
    let top = 2 * root.top_level() + 8;
    let rank = |g: i64| -> i64 {
        match (g - r).rem_euclid(4) {
            0 | 2 => counts.fixed(g / 2) + counts.pairs(g / 2),
            1 => counts.fixed((g - 1) / 2),
            _ => 0,
        }
    };
    let low = t.min(r);
    let head: Vec<i64> = (low..top).map(rank).collect();
    let period: Vec<i64> = (top..top + 4).map(rank).collect();
    let ranks = Profile::new(low, head, period);

    let sigma = root.sigma;
    let at = |g: i64| -> Rational64 { r64(g) + sigma };
    let mut q_action = Vec::new();
    for g in low..top {
        let q = match (g - r).rem_euclid(4) {
            2 => (counts.fixed(g / 2) > 0 && counts.fixed(g / 2 - 1) > 0) as u64,
            1 => counts.fixed((g - 1) / 2) as u64,
            _ => 0,
        };
        if q > 0 {
            q_action.push(QMap { source: at(g), target: at(g - 1), rank: q });
        }
    }
    let c = if (t - r).rem_euclid(4) == 0 { t + 2 } else { t };
    assemble(ranks, [r, r + 1, c], sigma, q_action)
}

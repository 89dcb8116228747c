//! Pin(2)-equivariant invariants: correction terms, the HS module, and the
//! Gysin sequence relating it to HM.

mod correction;
mod force;
mod gysin;
mod hs;
mod two_bad;

pub use correction::{correction_terms, CorrectionTerms};
pub use force::force_second_derived;
pub use gysin::{gysin_decompose, GysinDecomposition};
pub use hs::hs_module_one_bad;
pub use two_bad::{two_bad_pipeline, TwoBadResult};

use num_rational::Rational64;
use serde::Serialize;

use crate::lattice::GradedRoot;
use crate::profile::Profile;
use crate::report::{fmt_rational, r64};
use crate::symmetry::expand_levels;

/// Bottoms of the three V-towers, in module gradings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Towers {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub a: Rational64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub b: Rational64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub c: Rational64,
}

/// Multiplication by Q from one grading to the next lower one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QMap {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub source: Rational64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub target: Rational64,
    pub rank: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PinModule {
    pub towers: Towers,
    #[serde(serialize_with = "crate::report::ser_graded")]
    pub finite: Vec<(Rational64, u64)>,
    /// Nonzero Q-maps up to a few gradings past the towers' bottoms; empty
    /// when only the abelian group is determined.
    pub q_action: Vec<QMap>,
    #[serde(skip)]
    pub sigma: Rational64,
    /// Ranks over lattice gradings (module grading minus sigma).
    #[serde(skip)]
    pub ranks: Profile,
}

impl PinModule {
    pub fn rank_at(&self, g: Rational64) -> i64 {
        let x = g - self.sigma;
        if x.is_integer() {
            self.ranks.value(x.to_integer())
        } else {
            0
        }
    }

    /// "(V+(c) + V+(b) + V+(a)) + F(0) + ...", towers in the order c, b, a.
    pub fn describe(&self) -> String {
        let t = &self.towers;
        let mut out = format!(
            "(V+({}) + V+({}) + V+({}))",
            fmt_rational(&t.c),
            fmt_rational(&t.b),
            fmt_rational(&t.a)
        );
        for (g, r) in &self.finite {
            for _ in 0..*r {
                out.push_str(&format!(" + F({})", fmt_rational(g)));
            }
        }
        out
    }
}

/// Assembles the module from ranks and towers given in lattice gradings.
fn assemble(ranks: Profile, towers: [i64; 3], sigma: Rational64, q_action: Vec<QMap>) -> crate::Result<PinModule> {
    let [a, b, c] = towers;
    let tower_ranks = Profile::tower(a, 4).add(&Profile::tower(b, 4)).add(&Profile::tower(c, 4));
    let rest = ranks.sub(&tower_ranks);
    if !rest.is_finite() || !rest.is_nonnegative() {
        return Err(crate::Error::InconsistentRanks(format!("HS ranks {ranks} do not contain towers at {a}, {b}, {c}")));
    }
    let (finite, _) = rest.families();
    Ok(PinModule {
        towers: Towers { a: r64(a) + sigma, b: r64(b) + sigma, c: r64(c) + sigma },
        finite: finite.into_iter().map(|(g, r)| (r64(g) + sigma, r as u64)).collect(),
        q_action,
        sigma,
        ranks,
    })
}

/// Ranks of HM over lattice gradings: components of S_n at 2n and H^1(S_n)
/// at 2n - 1.
pub fn hm_profile(root: &GradedRoot) -> Profile {
    let comps: Vec<i64> = root.levels.iter().map(|l| l.components.len() as i64).collect();
    let odd = Profile::from_values(root.levels.iter().map(|l| (2 * l.level - 1, l.h1() as i64)));
    expand_levels(root.n_min, &comps).add(&odd)
}

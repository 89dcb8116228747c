use serde::Serialize;

use super::{assemble, force_second_derived, gysin_decompose, hm_profile, GysinDecomposition, PinModule};
use crate::error::{Error, Result};
use crate::lattice::{GradedRoot, WeightedLattice};
use crate::profile::Profile;
use crate::symmetry::derived_total;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoBadResult {
    pub module: PinModule,
    pub gysin: GysinDecomposition,
    /// True when the odd part of A' was taken from the lattice side, which
    /// rests on the conjectured identification.
    pub conjecture_gated: bool,
    #[serde(skip)]
    pub hm: Profile,
    #[serde(skip)]
    pub a1: Profile,
    #[serde(skip)]
    pub a2: Profile,
}

/// Where the class of the tower element of HM at grading g sits in A'.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Zero,
    TopOfI1,
    TopOfI2,
}

/// HS of (-Y, s) for at most two bad vertices through the Gysin sequence:
/// A' in even gradings from 1 + J on H^0, in odd gradings from 1 + J on H^1
/// (only with `assume_conjecture`), A'' forced, then the I0/I1/I2
/// decomposition. Tower bottoms come from following the HM tower down.
pub fn two_bad_pipeline(lat: &WeightedLattice, root: &GradedRoot, assume_conjecture: bool) -> Result<TwoBadResult> {
    let bad = lat.bad_count();
    if bad > 2 {
        return Err(Error::MoreThanTwoBadVertices(bad));
    }
    let hm = hm_profile(root);
    let derived = derived_total(lat, root)?;
    let gated = !derived.odd.is_zero();
    if gated && !assume_conjecture {
        return Err(Error::ConjectureRequired);
    }
    let a1 = derived.total();
    let a2 = force_second_derived(&hm, &a1)?;
    let gysin = gysin_decompose(&hm, &a1, &a2, root.sigma)?;
    let towers = tower_bottoms(root, &gysin)?;
    let module = assemble(gysin.hs(), towers, root.sigma, Vec::new())?;
    Ok(TwoBadResult { module, gysin, conjecture_gated: gated, hm, a1, a2 })
}

/// Role of the A' class of the HM tower element at even grading g, which is
/// the sum of the J-invariant components of its level.
fn role(root: &GradedRoot, d: &GysinDecomposition, g: i64) -> Result<Role> {
    let n = g / 2;
    let fixed = match root.level(n) {
        Some(l) => l.fixed().len(),
        None => (n > root.top_level()) as usize,
    };
    if fixed == 0 {
        return Ok(Role::Zero);
    }
    let tops1 = d.i1.value(g - 1);
    let tops2 = d.i2.value(g - 2);
    let bottoms = d.i1.value(g) + d.i2.value(g);
    match (tops1 > 0, tops2 > 0, bottoms > 0) {
        (_, _, true) if tops1 + tops2 == 0 => Err(Error::InconsistentRanks(format!(
            "tower class at lattice grading {g} lies in the bottom of a summand"
        ))),
        (true, false, false) => Ok(Role::TopOfI1),
        (false, true, false) => Ok(Role::TopOfI2),
        _ => Err(Error::NotForced(format!("tower class at lattice grading {g} has mixed role"))),
    }
}

/// (a, b, c) in lattice gradings. Far up, every tower class tops an I2
/// summand, so all three towers are present; walking down by 4 the c-tower
/// lives as long as HM does, the b-tower while the class tops an I1 or I2
/// summand, the a-tower while it tops an I2 summand.
fn tower_bottoms(root: &GradedRoot, d: &GysinDecomposition) -> Result<[i64; 3]> {
    let t = 2 * root.n_min;
    let start = (2 * root.top_level() + 2).max(d.i2.tail_start() + 2).max(d.i1.tail_start() + 2);
    let start = start + start.rem_euclid(2);
    let top = (start..start + 8)
        .step_by(2)
        .find(|&g| matches!(role(root, d, g), Ok(Role::TopOfI2)))
        .ok_or_else(|| Error::NotForced("no tower class tops an I2 summand".into()))?;
    let (mut a, mut b) = (None, None);
    let mut g = top;
    loop {
        if b.is_none() {
            match role(root, d, g)? {
                Role::TopOfI2 => {}
                Role::TopOfI1 => a = a.or(Some(g + 2)),
                Role::Zero => {
                    a = a.or(Some(g + 2));
                    b = Some(g + 3);
                }
            }
        }
        if g - 4 < t {
            break;
        }
        g -= 4;
    }
    Ok([a.unwrap_or(g - 2), b.unwrap_or(g - 1), g])
}

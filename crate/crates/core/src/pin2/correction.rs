use num_rational::Rational64;
use serde::Serialize;

use super::Towers;
use crate::error::{Error, Result};
use crate::report::fmt_rational;

/// Manolescu's correction terms of (-Y, s) with the tower bottoms they come
/// from: a = 2 alpha, b = 2 beta + 1, c = 2 gamma + 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrectionTerms {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub delta: Rational64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub rho: Rational64,
    #[serde(rename = "mubar", serialize_with = "crate::report::ser_opt_rational")]
    pub mu_bar: Option<Rational64>,
    pub towers: Towers,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub alpha: Rational64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub beta: Rational64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub gamma: Rational64,
}

impl CorrectionTerms {
    pub fn from_towers(towers: Towers, delta: Rational64, rho: Rational64, mu_bar: Option<Rational64>) -> Self {
        Self {
            delta,
            rho,
            mu_bar,
            towers,
            alpha: towers.a / 2,
            beta: (towers.b - 1) / 2,
            gamma: (towers.c - 2) / 2,
        }
    }
}

/// Correction terms with at most one bad vertex: a = rho, b = rho + 1, and
/// c = 2 delta + 2 or 2 delta according as 2 delta - rho is 0 or 2 mod 4.
pub fn correction_terms(rho: Rational64, delta: Rational64, mu_bar: Option<Rational64>) -> Result<CorrectionTerms> {
    let diff = delta * 2 - rho;
    if !(diff / 2).is_integer() {
        return Err(Error::ParityMismatch(format!(
            "2 delta = {} and rho = {} differ by an odd or fractional amount",
            fmt_rational(&(delta * 2)),
            fmt_rational(&rho)
        )));
    }
    let c = if (diff / 4).is_integer() { delta * 2 + 2 } else { delta * 2 };
    let towers = Towers { a: rho, b: rho + 1, c };
    Ok(CorrectionTerms::from_towers(towers, delta, rho, mu_bar))
}

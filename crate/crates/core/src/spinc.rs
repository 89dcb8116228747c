//! Characteristic vectors and spin^c structures on the boundary.
//!
//! A characteristic cohomology class k is stored by its values on the vertex
//! classes, l_v = (k, e_v), with l_v = m_v mod 2. Adding 2 M x is the
//! action of H_2 whose orbits are the spin^c structures.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact;
use crate::plumbing::IntersectionForm;
use crate::quadratic::QuadraticForm;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CharVector(pub Vec<i64>);

impl CharVector {
    pub fn new(form: &IntersectionForm, values: Vec<i64>) -> Result<Self> {
        if values.len() != form.dim() {
            return Err(Error::Parse(format!(
                "characteristic vector has {} entries, graph has {} vertices",
                values.len(),
                form.dim()
            )));
        }
        let v = Self(values);
        if let Some(i) = v.first_non_characteristic(form) {
            return Err(Error::NotCharacteristic(i));
        }
        Ok(v)
    }

    fn first_non_characteristic(&self, form: &IntersectionForm) -> Option<usize> {
        (0..form.dim()).find(|&i| (self.0[i] - form.weight(i)).rem_euclid(2) != 0)
    }

    /// The canonical class of the plumbing, l_v = -m_v - 2.
    pub fn canonical_class(form: &IntersectionForm) -> Self {
        Self((0..form.dim()).map(|i| -form.weight(i) - 2).collect())
    }

    pub fn translate(&self, form: &IntersectionForm, x: &[i64]) -> Self {
        let mx = form.apply(x);
        Self(self.0.iter().zip(mx).map(|(l, m)| l + 2 * m).collect())
    }

    pub fn conjugate(&self) -> Self {
        Self(self.0.iter().map(|v| -v).collect())
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }
}

pub fn kappa(form: &IntersectionForm, l: &CharVector) -> Vec<BigRational> {
    let inv = form.inverse().expect("intersection form is nonsingular");
    let lq: Vec<BigRational> = l.0.iter().map(|&v| BigRational::from_integer(v.into())).collect();
    exact::mat_vec(form.dim(), &inv, &lq)
}

/// M^{-1} l when integral; the orbit is then self-conjugate.
pub fn integral_kappa(form: &IntersectionForm, l: &CharVector) -> Option<Vec<i64>> {
    kappa(form, l)
        .iter()
        .map(|q| if q.is_integer() { q.to_integer().to_i64() } else { None })
        .collect()
}

fn to_r64(q: &BigRational) -> Result<Rational64> {
    match (q.numer().to_i64(), q.denom().to_i64()) {
        (Some(n), Some(d)) => Ok(Rational64::new(n, d)),
        _ => Err(Error::CapacityExceeded("rational exceeds 64-bit range".into())),
    }
}

/// k^2 = l^T M^{-1} l.
pub fn k_square(form: &IntersectionForm, l: &CharVector) -> Result<Rational64> {
    let kap = kappa(form, l);
    let sq = l
        .0
        .iter()
        .zip(&kap)
        .fold(BigRational::zero(), |acc, (&a, b)| acc + BigRational::from_integer(a.into()) * b);
    to_r64(&sq)
}

/// Grading shift -(s + k^2)/4.
pub fn sigma_shift(form: &IntersectionForm, l: &CharVector) -> Result<Rational64> {
    let k2 = k_square(form, l)?;
    Ok(-(k2 + Rational64::from_integer(form.dim() as i64)) / 4)
}

pub fn is_same_orbit(form: &IntersectionForm, a: &CharVector, b: &CharVector) -> Result<bool> {
    for v in [a, b] {
        if let Some(i) = v.first_non_characteristic(form) {
            return Err(Error::NotCharacteristic(i));
        }
    }
    let diff = CharVector(a.0.iter().zip(&b.0).map(|(x, y)| (x - y) / 2).collect());
    Ok(integral_kappa(form, &diff).is_some())
}

pub fn positive_form(form: &IntersectionForm) -> Result<QuadraticForm> {
    if !form.is_negative_definite() {
        let (p, n, z) = form.inertia();
        return Err(Error::NotNegativeDefinite { positive: p, negative: n, zero: z });
    }
    let a: Vec<i64> = form.matrix.iter().map(|v| -v).collect();
    QuadraticForm::new(form.dim(), &a)
}

/// The representative of the orbit of `l` with the largest k^2 (so the
/// weight function has minimum 0); ties go to the lexicographically least.
pub fn canonical_representative(form: &IntersectionForm, qf: &QuadraticForm, l: &CharVector) -> Result<CharVector> {
    let lin = qf.prepare(&l.0)?;
    let (_, minimizers) = qf.minimum(&lin)?;
    Ok(minimizers
        .iter()
        .map(|x| l.translate(form, x))
        .min()
        .expect("a minimizer exists"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpinCOrbit {
    pub index: usize,
    pub representative: CharVector,
    pub self_conjugate: bool,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub k_square: Rational64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub sigma: Rational64,
}

pub const MAX_ORBITS: u64 = 1 << 20;

pub fn describe_orbit(form: &IntersectionForm, index: usize, representative: CharVector) -> Result<SpinCOrbit> {
    Ok(SpinCOrbit {
        index,
        self_conjugate: integral_kappa(form, &representative).is_some(),
        k_square: k_square(form, &representative)?,
        sigma: sigma_shift(form, &representative)?,
        representative,
    })
}

/// One orbit per element of Z^s / M Z^s, sorted by canonical representative.
pub fn enumerate_orbits(form: &IntersectionForm) -> Result<Vec<SpinCOrbit>> {
    let qf = positive_form(form)?;
    let n = form.dim();
    let (d, pinv) = exact::smith_diagonal(n, &form.matrix);
    let det: BigInt = d.iter().map(|x| x.abs()).product();
    let count = det.to_u64().filter(|&c| c <= MAX_ORBITS).ok_or_else(|| {
        Error::CapacityExceeded(format!("{det} spin^c structures"))
    })?;
    let moduli: Vec<u64> = d.iter().map(|x| x.abs().to_u64().unwrap()).collect();
    let pinv: Vec<i64> = pinv
        .iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::CapacityExceeded("Smith transform".into())))
        .collect::<Result<_>>()?;
    let base: Vec<i64> = (0..n).map(|i| form.weight(i)).collect();
    let mut reps = Vec::with_capacity(count as usize);
    let mut y = vec![0u64; n];
    for _ in 0..count {
        let l: Vec<i64> = (0..n)
            .map(|i| base[i] + 2 * (0..n).map(|j| pinv[i * n + j] * y[j] as i64).sum::<i64>())
            .collect();
        reps.push(canonical_representative(form, &qf, &CharVector(l))?);
        for (k, yk) in y.iter_mut().enumerate() {
            *yk += 1;
            if *yk < moduli[k] {
                break;
            }
            *yk = 0;
        }
    }
    reps.sort();
    reps.dedup();
    debug_assert_eq!(reps.len() as u64, count);
    reps.into_iter().enumerate().map(|(i, r)| describe_orbit(form, i, r)).collect()
}

pub fn orbit_index(form: &IntersectionForm, orbits: &[SpinCOrbit], l: &CharVector) -> Result<usize> {
    for o in orbits {
        if is_same_orbit(form, &o.representative, l)? {
            return Ok(o.index);
        }
    }
    unreachable!("every characteristic vector lies in some orbit")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WuData {
    /// Indicator of the Wu set, by vertex position.
    pub wu: Vec<u8>,
    pub wu_square: i64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub mu_bar: Rational64,
}

impl WuData {
    pub fn support(&self) -> Vec<usize> {
        self.wu.iter().enumerate().filter(|(_, &b)| b == 1).map(|(i, _)| i).collect()
    }

    pub fn is_non_adjacent(&self, form: &IntersectionForm) -> bool {
        self.support()
            .iter()
            .all(|&i| form.neighbors[i].iter().all(|&j| self.wu[j] == 0))
    }
}

/// The Wu vector w in {0,1}^s whose image M w lies in the orbit of `l`.
/// It exists and is unique exactly when the orbit is self-conjugate, and
/// then w = M^{-1} l mod 2.
pub fn wu_vector(form: &IntersectionForm, l: &CharVector) -> Result<WuData> {
    let kap = integral_kappa(form, l).ok_or(Error::NotSelfConjugate)?;
    let w: Vec<i64> = kap.iter().map(|k| k.rem_euclid(2)).collect();
    let mw = CharVector(form.apply(&w));
    if mw.first_non_characteristic(form).is_some() || !is_same_orbit(form, &mw, l)? {
        return Err(Error::NoWuRepresentative);
    }
    let wu_square: i64 = w.iter().zip(&mw.0).map(|(a, b)| a * b).sum();
    let s = form.dim() as i64;
    Ok(WuData {
        wu: w.iter().map(|&v| v as u8).collect(),
        wu_square,
        mu_bar: Rational64::new(-s - wu_square, 8),
    })
}

pub fn is_integral(q: &Rational64) -> bool {
    q.denom().is_one()
}

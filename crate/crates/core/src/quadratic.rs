//! Exact enumeration of lattice points in {x : x^T A x - b^T x <= bound} for a
//! positive definite integer matrix A.
//!
//! Coordinates are fixed from the last one down. At depth i the variables
//! x_0..x_{i-1} are still free, and the real minimum over them is a quadratic
//! in the fixed tail t = (x_i..x_{n-1}) with Schur complement data. Everything
//! is scaled by 4 det P (P the leading i x i block) so the pruning test is
//! exact integer arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact;

#[derive(Debug, Clone)]
struct Depth {
    m: usize,
    scale: i128,
    detp: i128,
    schur: Vec<i128>,
    w: Vec<i128>,
    adjp: Vec<i128>,
}

#[derive(Debug, Clone)]
pub struct QuadraticForm {
    n: usize,
    a: Vec<i64>,
    depths: Vec<Depth>,
    inverse: Vec<BigRational>,
    det_a: f64,
}

/// Linear part prepared for one enumeration: per depth, the scaled linear
/// coefficients and constant.
#[derive(Debug, Clone)]
pub struct Linear {
    b: Vec<i64>,
    lam: Vec<Vec<i128>>,
    kap: Vec<i128>,
}

impl Linear {
    pub fn coefficients(&self) -> &[i64] {
        &self.b
    }
}

fn overflow() -> Error {
    Error::CapacityExceeded("quadratic form coefficients exceed 128-bit range".into())
}

fn to128(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or_else(overflow)
}

impl QuadraticForm {
    /// `a` must be symmetric positive definite.
    pub fn new(n: usize, a: &[i64]) -> Result<Self> {
        assert_eq!(a.len(), n * n);
        let mut depths = Vec::with_capacity(n);
        for i in 0..n {
            let m = n - i;
            let p: Vec<i64> = (0..i * i).map(|k| a[(k / i) * n + k % i]).collect();
            let (detp, adjp) = exact::adjugate(i, &p).ok_or({
                Error::NotNegativeDefinite { positive: 0, negative: 0, zero: 1 }
            })?;
            // W = B^T adj(P), m x i
            let mut w = vec![BigInt::zero(); m * i];
            for r in 0..m {
                for c in 0..i {
                    let mut acc = BigInt::zero();
                    for k in 0..i {
                        acc += BigInt::from(a[k * n + i + r]) * &adjp[k * i + c];
                    }
                    w[r * i + c] = acc;
                }
            }
            let mut schur = Vec::with_capacity(m * m);
            for r in 0..m {
                for c in 0..m {
                    let mut acc = &detp * BigInt::from(a[(i + r) * n + i + c]);
                    for k in 0..i {
                        acc -= &w[r * i + k] * BigInt::from(a[k * n + i + c]);
                    }
                    schur.push(to128(&(acc * 4))?);
                }
            }
            depths.push(Depth {
                m,
                scale: to128(&(&detp * 4))?,
                detp: to128(&detp)?,
                schur,
                w: w.iter().map(to128).collect::<Result<_>>()?,
                adjp: adjp.iter().map(to128).collect::<Result<_>>()?,
            });
        }
        let inverse = exact::inverse_int(n, a).ok_or_else(overflow)?;
        let det_a = exact::determinant(n, a).to_f64().unwrap_or(f64::INFINITY);
        Ok(Self { n, a: a.to_vec(), depths, inverse, det_a })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &[i64] {
        &self.a
    }

    pub fn prepare(&self, b: &[i64]) -> Result<Linear> {
        assert_eq!(b.len(), self.n);
        let mut lam = Vec::with_capacity(self.n);
        let mut kap = Vec::with_capacity(self.n);
        for (i, d) in self.depths.iter().enumerate() {
            let bu = &b[..i];
            let mut l = Vec::with_capacity(d.m);
            for r in 0..d.m {
                let mut acc = d.detp.checked_mul(b[i + r] as i128).ok_or_else(overflow)?;
                for k in 0..i {
                    acc = acc
                        .checked_sub(d.w[r * i + k].checked_mul(bu[k] as i128).ok_or_else(overflow)?)
                        .ok_or_else(overflow)?;
                }
                l.push(acc.checked_mul(4).ok_or_else(overflow)?);
            }
            let mut k0: i128 = 0;
            for r in 0..i {
                for c in 0..i {
                    let t = d.adjp[r * i + c]
                        .checked_mul(bu[r] as i128 * bu[c] as i128)
                        .ok_or_else(overflow)?;
                    k0 = k0.checked_sub(t).ok_or_else(overflow)?;
                }
            }
            lam.push(l);
            kap.push(k0);
        }
        Ok(Linear { b: b.to_vec(), lam, kap })
    }

    pub fn value(&self, b: &[i64], x: &[i64]) -> i64 {
        let n = self.n;
        let mut q = 0i64;
        for i in 0..n {
            let mut row = 0i64;
            for j in 0..n {
                row += self.a[i * n + j] * x[j];
            }
            q += x[i] * (row - b[i]);
        }
        q
    }

    /// Real minimum -b^T A^{-1} b / 4.
    pub fn real_minimum(&self, b: &[i64]) -> BigRational {
        let bq: Vec<BigRational> = b.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        let y = exact::mat_vec(self.n, &self.inverse, &bq);
        let dot = bq.iter().zip(&y).fold(BigRational::zero(), |acc, (u, v)| acc + u * v);
        -dot / BigRational::from_integer(4.into())
    }

    /// Volume of the region, a rough predictor of the point count.
    pub fn estimate(&self, b: &[i64], bound: i64) -> f64 {
        let r = bound as f64 - self.real_minimum(b).to_f64().unwrap_or(0.0);
        if r < 0.0 {
            return 0.0;
        }
        let n = self.n as f64;
        let unit_ball = std::f64::consts::PI.powf(n / 2.0) / gamma_half(self.n + 2);
        unit_ball * r.powf(n / 2.0) / self.det_a.sqrt()
    }

    /// Calls `f(x, value)` for each lattice point with value <= bound, in
    /// lexicographic order with the last coordinate most significant.
    pub fn try_for_each<F>(&self, lin: &Linear, bound: i64, mut f: F) -> Result<()>
    where
        F: FnMut(&[i64], i64) -> Result<()>,
    {
        if self.n == 0 {
            return f(&[], 0);
        }
        let mut x = vec![0i64; self.n];
        self.descend(lin, bound, self.n - 1, &mut x, &mut f)
    }

    fn descend<F>(&self, lin: &Linear, bound: i64, i: usize, x: &mut [i64], f: &mut F) -> Result<()>
    where
        F: FnMut(&[i64], i64) -> Result<()>,
    {
        let d = &self.depths[i];
        let lam = &lin.lam[i];
        let m = d.m;
        let rest = &x[i + 1..];
        let a = d.schur[0];
        let mut bc = -lam[0];
        let mut c = lin.kap[i] - d.scale * bound as i128;
        for r in 1..m {
            let xr = rest[r - 1] as i128;
            if xr == 0 {
                continue;
            }
            bc += 2 * d.schur[r] * xr;
            let mut row = 0i128;
            for s in 1..m {
                row += d.schur[r * m + s] * rest[s - 1] as i128;
            }
            c += xr * (row - lam[r]);
        }
        let Some((lo, hi)) = integer_interval(a, bc, c) else {
            return Ok(());
        };
        for v in lo..=hi {
            x[i] = v;
            if i == 0 {
                let val = self.value(&lin.b, x);
                debug_assert!(val <= bound);
                f(x, val)?;
            } else {
                self.descend(lin, bound, i - 1, x, f)?;
            }
        }
        x[i] = 0;
        Ok(())
    }

    /// Values of the last coordinate over all real solutions, rounded inward:
    /// exactly the integers t for which some real x with x_{n-1} = t has
    /// value <= bound.
    pub fn last_coordinate_range(&self, lin: &Linear, bound: i64) -> Option<(i64, i64)> {
        if self.n == 0 {
            return None;
        }
        let i = self.n - 1;
        let d = &self.depths[i];
        integer_interval(d.schur[0], -lin.lam[i][0], lin.kap[i] - d.scale * bound as i128)
    }

    /// Minimum of x^T A x - b^T x over Z^n and all minimizers.
    pub fn minimum(&self, lin: &Linear) -> Result<(i64, Vec<Vec<i64>>)> {
        let lb = self.real_minimum(&lin.b).ceil().to_integer();
        let lb = lb.to_i64().ok_or_else(overflow)?;
        let mut step = 1i64;
        loop {
            let bound = lb + step - 1;
            let mut best = i64::MAX;
            let mut pts: Vec<Vec<i64>> = Vec::new();
            self.try_for_each(lin, bound, |x, v| {
                if v < best {
                    best = v;
                    pts.clear();
                }
                if v == best {
                    pts.push(x.to_vec());
                }
                Ok(())
            })?;
            if !pts.is_empty() {
                return Ok((best, pts));
            }
            step = step.checked_mul(2).ok_or_else(overflow)?;
        }
    }
}

/// Gamma(k/2) for k >= 1.
fn gamma_half(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        (1..k / 2).map(|i| i as f64).product()
    } else {
        let mut g = std::f64::consts::PI.sqrt();
        let mut t = 0.5;
        while t < k as f64 / 2.0 - 0.25 {
            g *= t;
            t += 1.0;
        }
        g
    }
}

fn eval(a: i128, b: i128, c: i128, x: i64) -> i128 {
    let x = x as i128;
    (a * x + b) * x + c
}

/// Integer solutions of a x^2 + b x + c <= 0 with a > 0, as a closed interval.
fn integer_interval(a: i128, b: i128, c: i128) -> Option<(i64, i64)> {
    debug_assert!(a > 0);
    let v0 = (-b).div_euclid(2 * a);
    let v0 = i64::try_from(v0).ok()?;
    let mid = if eval(a, b, c, v0) <= eval(a, b, c, v0 + 1) { v0 } else { v0 + 1 };
    if eval(a, b, c, mid) > 0 {
        return None;
    }
    let (af, bf, cf) = (a as f64, b as f64, c as f64);
    let disc = (bf * bf - 4.0 * af * cf).max(0.0).sqrt();
    let est_lo = ((-bf - disc) / (2.0 * af)).floor();
    let est_hi = ((-bf + disc) / (2.0 * af)).ceil();
    let mut lo = if est_lo.is_finite() { (est_lo as i64).clamp(mid - (1 << 40), mid) } else { mid };
    let mut hi = if est_hi.is_finite() { (est_hi as i64).clamp(mid, mid + (1 << 40)) } else { mid };
    while eval(a, b, c, lo) > 0 {
        lo += 1;
    }
    while eval(a, b, c, lo - 1) <= 0 {
        lo -= 1;
    }
    while eval(a, b, c, hi) > 0 {
        hi -= 1;
    }
    while eval(a, b, c, hi + 1) <= 0 {
        hi += 1;
    }
    Some((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(n: usize, a: &[i64], b: &[i64], bound: i64, r: i64) -> Vec<Vec<i64>> {
        let qf = QuadraticForm::new(n, a).unwrap();
        let mut out = Vec::new();
        let mut x = vec![-r; n];
        loop {
            if qf.value(b, &x) <= bound {
                out.push(x.clone());
            }
            let mut k = 0;
            loop {
                if k == n {
                    return out;
                }
                x[k] += 1;
                if x[k] <= r {
                    break;
                }
                x[k] = -r;
                k += 1;
            }
        }
    }

    #[test]
    fn interval_solver() {
        assert_eq!(integer_interval(1, 0, -4), Some((-2, 2)));
        assert_eq!(integer_interval(1, 0, -3), Some((-1, 1)));
        assert_eq!(integer_interval(4, -4, 1), None);
        assert_eq!(integer_interval(4, -4, 0), Some((0, 1)));
        assert_eq!(integer_interval(1, -1000, 0), Some((0, 1000)));
    }

    #[test]
    fn matches_brute_force_small() {
        let a = [2, -1, 0, -1, 2, -1, 0, -1, 3];
        let b = [1, 0, -1];
        let qf = QuadraticForm::new(3, &a).unwrap();
        let lin = qf.prepare(&b).unwrap();
        for bound in -1..12 {
            let mut got = Vec::new();
            qf.try_for_each(&lin, bound, |x, v| {
                assert_eq!(v, qf.value(&b, x));
                got.push(x.to_vec());
                Ok(())
            })
            .unwrap();
            let mut sorted = got.clone();
            sorted.sort_by(|p, q| p.iter().rev().cmp(q.iter().rev()));
            assert_eq!(got, sorted, "enumeration order");
            assert_eq!(got, brute(3, &a, &b, bound, 8));
        }
    }

    proptest! {
        #[test]
        fn random_tridiagonal_forms(diag in proptest::collection::vec(2i64..5, 1..5),
                                    b in proptest::collection::vec(-4i64..5, 5),
                                    bound in 0i64..10) {
            let n = diag.len();
            let mut a = vec![0i64; n * n];
            for i in 0..n {
                a[i * n + i] = diag[i];
                if i + 1 < n {
                    a[i * n + i + 1] = -1;
                    a[(i + 1) * n + i] = -1;
                }
            }
            let b = &b[..n];
            let qf = QuadraticForm::new(n, &a).unwrap();
            let lin = qf.prepare(b).unwrap();
            let mut got = Vec::new();
            qf.try_for_each(&lin, bound, |x, _| { got.push(x.to_vec()); Ok(()) }).unwrap();
            prop_assert_eq!(got, brute(n, &a, b, bound, 12));
            let (min, arg) = qf.minimum(&lin).unwrap();
            for x in &arg {
                prop_assert_eq!(qf.value(b, x), min);
            }
            prop_assert!(brute(n, &a, b, min - 1, 12).is_empty());
        }
    }
}

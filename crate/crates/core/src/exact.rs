//! Exact linear algebra over Z and Q for small dense square matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn big(n: usize, m: &[i64]) -> Vec<BigInt> {
    debug_assert_eq!(m.len(), n * n);
    m.iter().map(|&v| BigInt::from(v)).collect()
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant(n: usize, m: &[i64]) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut a = big(n, m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for c in 0..n {
                a.swap(k * n + c, p * n + c);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = a[k * n + k].clone();
    }
    sign * a[n * n - 1].clone()
}

/// Inertia (positive, negative, zero) of a symmetric integer matrix, by
/// congruence diagonalization over Q.
pub fn inertia(n: usize, m: &[i64]) -> (usize, usize, usize) {
    let mut a: Vec<BigRational> = m.iter().map(|&v| BigRational::from_integer(v.into())).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[i * n + i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // all remaining diagonal entries vanish; use e_i + e_j
                let pair = active.iter().find_map(|&i| {
                    active
                        .iter()
                        .find(|&&j| j != i && !a[i * n + j].is_zero())
                        .map(|&j| (i, j))
                });
                let Some((i, j)) = pair else { break };
                for &c in &active {
                    let v = a[j * n + c].clone();
                    a[i * n + c] += v;
                }
                for &r in &active {
                    let v = a[r * n + j].clone();
                    a[r * n + i] += v;
                }
                i
            }
        };
        let d = a[p * n + p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&x| x != p);
        for &r in &active {
            if a[r * n + p].is_zero() {
                continue;
            }
            let f = &a[r * n + p] / &d;
            for &c in &active {
                let v = &f * &a[p * n + c];
                a[r * n + c] -= v;
            }
        }
        for &r in &active {
            a[r * n + p] = BigRational::zero();
            a[p * n + r] = BigRational::zero();
        }
    }
    (pos, neg, n - pos - neg)
}

/// Inverse over Q, or None when singular.
pub fn inverse(n: usize, m: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut a = m.to_vec();
    let mut inv: Vec<BigRational> = (0..n * n)
        .map(|k| if k / n == k % n { BigRational::one() } else { BigRational::zero() })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r * n + col].is_zero())?;
        if p != col {
            for c in 0..n {
                a.swap(p * n + c, col * n + c);
                inv.swap(p * n + c, col * n + c);
            }
        }
        let d = a[col * n + col].clone();
        for c in 0..n {
            a[col * n + c] /= &d;
            inv[col * n + c] /= &d;
        }
        for r in 0..n {
            if r == col || a[r * n + col].is_zero() {
                continue;
            }
            let f = a[r * n + col].clone();
            for c in 0..n {
                let x = &f * &a[col * n + c];
                a[r * n + c] -= x;
                let y = &f * &inv[col * n + c];
                inv[r * n + c] -= y;
            }
        }
    }
    Some(inv)
}

pub fn inverse_int(n: usize, m: &[i64]) -> Option<Vec<BigRational>> {
    let q: Vec<BigRational> = m.iter().map(|&v| BigRational::from_integer(v.into())).collect();
    inverse(n, &q)
}

/// Adjugate of a nonsingular integer matrix, det(m) * m^{-1}.
pub fn adjugate(n: usize, m: &[i64]) -> Option<(BigInt, Vec<BigInt>)> {
    if n == 0 {
        return Some((BigInt::one(), Vec::new()));
    }
    let det = determinant(n, m);
    let inv = inverse_int(n, m)?;
    let adj = inv
        .iter()
        .map(|x| {
            let v = x * BigRational::from_integer(det.clone());
            debug_assert!(v.is_integer());
            v.to_integer()
        })
        .collect();
    Some((det, adj))
}

pub fn mat_vec(n: usize, m: &[BigRational], v: &[BigRational]) -> Vec<BigRational> {
    (0..n)
        .map(|i| (0..n).fold(BigRational::zero(), |acc, j| acc + &m[i * n + j] * &v[j]))
        .collect()
}

/// Diagonalizes an integer matrix by unimodular row and column operations,
/// P M Q = diag(d). Returns d and P^{-1}; the vectors P^{-1} y with
/// 0 <= y_i < |d_i| represent Z^n / M Z^n.
pub fn smith_diagonal(n: usize, m: &[i64]) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut a = big(n, m);
    let mut pinv: Vec<BigInt> = (0..n * n)
        .map(|k| if k / n == k % n { BigInt::one() } else { BigInt::zero() })
        .collect();
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for r in t..n {
                for c in t..n {
                    let v = &a[r * n + c];
                    if !v.is_zero() && best.is_none_or(|(br, bc)| v.abs() < a[br * n + bc].abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((r, c)) = best else { break };
            if r != t {
                for k in 0..n {
                    a.swap(r * n + k, t * n + k);
                }
                for k in 0..n {
                    pinv.swap(k * n + r, k * n + t);
                }
            }
            if c != t {
                for k in 0..n {
                    a.swap(k * n + c, k * n + t);
                }
            }
            let piv = a[t * n + t].clone();
            let mut clean = true;
            for r in t + 1..n {
                if a[r * n + t].is_zero() {
                    continue;
                }
                let q = a[r * n + t].div_floor(&piv);
                for k in 0..n {
                    let v = &q * &a[t * n + k];
                    a[r * n + k] -= v;
                }
                // row_r -= q row_t  =>  col_t(P^-1) += q col_r(P^-1)
                for k in 0..n {
                    let v = &q * &pinv[k * n + r];
                    pinv[k * n + t] += v;
                }
                if !a[r * n + t].is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..n {
                if a[t * n + c].is_zero() {
                    continue;
                }
                let q = a[t * n + c].div_floor(&piv);
                for k in 0..n {
                    let v = &q * &a[k * n + t];
                    a[k * n + c] -= v;
                }
                if !a[t * n + c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
    }
    let d = (0..n).map(|i| a[i * n + i].clone()).collect();
    (d, pinv)
}

pub fn to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    const E8: [i64; 64] = {
        let mut m = [0i64; 64];
        let mut i = 0;
        while i < 8 {
            m[i * 8 + i] = -2;
            i += 1;
        }
        // chain 0-1-2-3-4-5-6 with 7 attached to 4
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
        let mut k = 0;
        while k < 7 {
            let (a, b) = edges[k];
            m[a * 8 + b] = 1;
            m[b * 8 + a] = 1;
            k += 1;
        }
        m
    };

    #[test]
    fn e8_is_unimodular_and_negative_definite() {
        assert_eq!(determinant(8, &E8), BigInt::one());
        assert_eq!(inertia(8, &E8), (0, 8, 0));
    }

    #[test]
    fn inertia_handles_zero_diagonal() {
        // hyperbolic plane
        assert_eq!(inertia(2, &[0, 1, 1, 0]), (1, 1, 0));
        assert_eq!(inertia(3, &[0, 1, 0, 1, 0, 0, 0, 0, 0]), (1, 1, 1));
    }

    #[test]
    fn smith_counts_cosets() {
        let m = [-2, 1, 1, -3];
        let (d, pinv) = smith_diagonal(2, &m);
        let prod: BigInt = d.iter().map(|x| x.abs()).product();
        assert_eq!(prod, BigInt::from(5));
        assert_eq!(determinant(2, &pinv.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>()).abs(), BigInt::one());
    }

    #[test]
    fn adjugate_scales_inverse() {
        let m = [-3, 1, 1, -2];
        let (det, adj) = adjugate(2, &m).unwrap();
        assert_eq!(det, BigInt::from(5));
        let adj: Vec<i64> = adj.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(adj, vec![-2, -1, -1, -3]);
    }
}

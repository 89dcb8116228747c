//! Integer functions on Z that vanish far below and are periodic far above:
//! rank profiles of graded modules with towers.

use num_integer::Integer;
use std::fmt;

use crate::error::{Error, Result};

/// value(g) = 0 for g < low, head[g - low] on the explicit window, then
/// the period repeats forever (an empty period means zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    low: i64,
    head: Vec<i64>,
    period: Vec<i64>,
}

impl Default for Profile {
    fn default() -> Self {
        Self::zero()
    }
}

impl Profile {
    pub fn zero() -> Self {
        Self { low: 0, head: Vec::new(), period: Vec::new() }
    }

    pub fn new(low: i64, head: Vec<i64>, period: Vec<i64>) -> Self {
        Self { low, head, period }.normalized()
    }

    pub fn from_values<I: IntoIterator<Item = (i64, i64)>>(values: I) -> Self {
        let mut out = Self::zero();
        for (g, v) in values {
            out = out.add(&Self::new(g, vec![v], Vec::new()));
        }
        out
    }

    /// One in every `step`-th grading from `bottom` up.
    pub fn tower(bottom: i64, step: usize) -> Self {
        let mut period = vec![0; step.max(1)];
        period[0] = 1;
        Self::new(bottom, Vec::new(), period)
    }

    pub fn value(&self, g: i64) -> i64 {
        if g < self.low {
            return 0;
        }
        let i = (g - self.low) as usize;
        if i < self.head.len() {
            self.head[i]
        } else if self.period.is_empty() {
            0
        } else {
            self.period[(i - self.head.len()) % self.period.len()]
        }
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    /// First grading from which the profile is periodic.
    pub fn tail_start(&self) -> i64 {
        self.low + self.head.len() as i64
    }

    pub fn period_len(&self) -> usize {
        self.period.len().max(1)
    }

    pub fn is_zero(&self) -> bool {
        self.head.is_empty() && self.period.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    pub fn period(&self) -> &[i64] {
        &self.period
    }

    pub fn is_nonnegative(&self) -> bool {
        self.head.iter().chain(&self.period).all(|&v| v >= 0)
    }

    /// A grading past which the profile has surely become periodic, aligned
    /// so the window [horizon, horizon + period) describes the tail.
    fn horizon_with(&self, other: &Self) -> (i64, i64, usize) {
        let low = self.low.min(other.low);
        let tail = self.tail_start().max(other.tail_start());
        let p = self.period_len().lcm(&other.period_len());
        (low, tail, p)
    }

    pub fn combine(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        if self.is_zero() && other.is_zero() {
            return Self::new(0, vec![], vec![]);
        }
        let (low, tail, p) = self.horizon_with(other);
        let head = (low..tail).map(|g| f(self.value(g), other.value(g))).collect();
        let period = (tail..tail + p as i64).map(|g| f(self.value(g), other.value(g))).collect();
        Self::new(low, head, period)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    pub fn scale(&self, c: i64) -> Self {
        self.combine(&Self::zero(), |a, _| c * a)
    }

    /// (shift(p, k))(g) = p(g - k).
    pub fn shift(&self, k: i64) -> Self {
        Self { low: self.low + k, head: self.head.clone(), period: self.period.clone() }
    }

    /// Exact halving; None when some value is odd.
    pub fn halve(&self) -> Option<Self> {
        if self.head.iter().chain(&self.period).any(|v| v % 2 != 0) {
            return None;
        }
        Some(self.combine(&Self::zero(), |a, _| a / 2))
    }

    /// The solution k of k(g) = self(g) - k(g - step), zero far below.
    /// Fails when k is not eventually periodic (it then grows without bound).
    pub fn alternating(&self, step: usize) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let step = step.max(1) as i64;
        let low = self.low;
        let p = (self.period_len() as i64).lcm(&step) * 2;
        let end = self.tail_start() + 3 * p;
        let mut k: Vec<i64> = Vec::with_capacity((end - low) as usize);
        for g in low..end {
            let i = (g - low) as usize;
            let prev = if i as i64 >= step { k[i - step as usize] } else { 0 };
            k.push(self.value(g) - prev);
        }
        let t = (self.tail_start() + 2 * p - low) as usize;
        let pu = p as usize;
        if (t..t + pu).any(|i| k[i] != k[i - pu]) {
            return Err(Error::InconsistentRanks("alternating sum does not settle into a period".into()));
        }
        Ok(Self::new(low, k[..t].to_vec(), k[t..t + pu].to_vec()))
    }

    fn normalized(mut self) -> Self {
        // shortest period
        let p = self.period.len();
        if p > 0 {
            let q = (1..=p)
                .find(|&q| p.is_multiple_of(q) && (0..p).all(|i| self.period[i] == self.period[i % q]))
                .unwrap();
            self.period.truncate(q);
            if self.period.iter().all(|&v| v == 0) {
                self.period.clear();
            }
        }
        // absorb the end of the head into the period
        if self.period.is_empty() {
            while self.head.last() == Some(&0) {
                self.head.pop();
            }
        } else {
            while let Some(&h) = self.head.last() {
                if h != *self.period.last().unwrap() {
                    break;
                }
                self.head.pop();
                self.period.rotate_right(1);
            }
        }
        // leading zeros
        let lead = self.head.iter().take_while(|&&v| v == 0).count();
        self.head.drain(..lead);
        self.low += lead as i64;
        if self.head.is_empty() && !self.period.is_empty() {
            while self.period[0] == 0 {
                self.period.rotate_left(1);
                self.low += 1;
            }
        }
        if self.head.is_empty() && self.period.is_empty() {
            self.low = 0;
        }
        self
    }

    /// Nonzero values on [from, to).
    pub fn window(&self, from: i64, to: i64) -> Vec<(i64, i64)> {
        (from..to).map(|g| (g, self.value(g))).filter(|&(_, v)| v != 0).collect()
    }

    /// Explicit nonzero values below the tail, and the periodic families
    /// (start, step, value) covering everything from the tail on.
    pub fn families(&self) -> (Vec<(i64, i64)>, Vec<(i64, i64, i64)>) {
        let t = self.tail_start();
        let finite = self.window(self.low, t);
        let p = self.period.len() as i64;
        let fams = self
            .period
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (t + i as i64, p, v))
            .collect();
        (finite, fams)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (finite, fams) = self.families();
        let mut parts: Vec<String> = finite.iter().map(|(g, v)| format!("{g}:{v}")).collect();
        parts.extend(fams.iter().map(|(s, p, v)| format!("{s}+{p}n:{v}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn tower_values() {
        let t = Profile::tower(-2, 2);
        assert_eq!((-4..4).map(|g| t.value(g)).collect::<Vec<_>>(), vec![0, 0, 1, 0, 1, 0, 1, 0]);
        assert_eq!(t.tail_start(), -2);
    }

    #[test]
    fn normal_form_is_unique() {
        let a = Profile::new(0, vec![0, 0, 1, 0, 1], vec![0, 1, 0, 1]);
        let b = Profile::tower(2, 2);
        assert_eq!(a, b);
        assert_eq!(Profile::new(3, vec![0, 0], vec![0]), Profile::zero());
    }

    #[test]
    fn alternating_sums() {
        // k + shift(k, 2) for k = I2 at 4 + 4n
        let k = Profile::tower(4, 4);
        let a2 = k.add(&k.shift(2));
        assert_eq!(a2, Profile::tower(4, 2));
        assert_eq!(a2.alternating(2).unwrap(), k);
        // a tower summed with step 1 is unbounded
        assert!(Profile::tower(0, 2).alternating(1).is_err());
    }

    proptest! {
        #[test]
        fn arithmetic_matches_pointwise(lo in -5i64..5, head in proptest::collection::vec(-3i64..4, 0..6),
                                        period in proptest::collection::vec(-3i64..4, 0..4),
                                        lo2 in -5i64..5, head2 in proptest::collection::vec(-3i64..4, 0..6),
                                        shift in -4i64..4) {
            let a = Profile::new(lo, head.clone(), period.clone());
            let b = Profile::new(lo2, head2.clone(), vec![]);
            let s = a.add(&b.shift(shift));
            for g in -20..40 {
                prop_assert_eq!(s.value(g), a.value(g) + b.value(g - shift));
            }
            let raw = |g: i64| -> i64 {
                if g < lo { return 0; }
                let i = (g - lo) as usize;
                if i < head.len() { head[i] } else if period.is_empty() { 0 } else { period[(i - head.len()) % period.len()] }
            };
            for g in -20..40 {
                prop_assert_eq!(a.value(g), raw(g));
            }
        }
    }
}

//! Serialization helpers shared by the report types.

use num_rational::Rational64;
use serde::Serializer;

/// Exact fraction text: "3", "-1/4".
pub fn fmt_rational(q: &Rational64) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn ser_rational<S: Serializer>(q: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(q))
}

pub fn ser_opt_rational<S: Serializer>(q: &Option<Rational64>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&fmt_rational(q)),
        None => s.serialize_none(),
    }
}

pub fn ser_rationals<S: Serializer>(qs: &[Rational64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(qs.iter().map(fmt_rational))
}

/// (grading, rank) pairs as [["g", r], ...].
pub fn ser_graded<S: Serializer>(v: &[(Rational64, u64)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(g, r)| (fmt_rational(g), *r)))
}

pub fn r64(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

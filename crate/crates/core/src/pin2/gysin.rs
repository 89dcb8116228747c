use num_rational::Rational64;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::report::{fmt_rational, r64};

/// Multiplicities of the three summand shapes of the Gysin sequence by the
/// grading n of their bottom:
///
/// - I0[n]: two HM classes at n, none in A' or A''.
/// - I1[n]: HM and A' at n and n + 1.
/// - I2[n]: HM, A' and A'' at n and n + 2.
///
/// Profiles are over lattice gradings; `sigma` converts to module gradings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GysinDecomposition {
    pub i0: Profile,
    pub i1: Profile,
    pub i2: Profile,
    pub sigma: Rational64,
}

impl Serialize for GysinDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GysinDecomposition", 3)?;
        st.serialize_field("I0", &entries(&self.i0, self.sigma))?;
        st.serialize_field("I1", &entries(&self.i1, self.sigma))?;
        st.serialize_field("I2", &entries(&self.i2, self.sigma))?;
        st.end()
    }
}

/// Summand positions as text: "2" for a single summand, "4+4n" for a
/// family n >= 0; repeated by multiplicity.
fn entries(p: &Profile, sigma: Rational64) -> Vec<String> {
    let (finite, fams) = p.families();
    let mut out = Vec::new();
    for (g, m) in finite {
        out.extend(std::iter::repeat_n(fmt_rational(&(r64(g) + sigma)), m.max(0) as usize));
    }
    for (g, step, m) in fams {
        out.extend(std::iter::repeat_n(format!("{}+{step}n", fmt_rational(&(r64(g) + sigma))), m.max(0) as usize));
    }
    out
}

impl GysinDecomposition {
    pub fn hm(&self) -> Profile {
        self.i0.scale(2).add(&self.a1())
    }

    pub fn a1(&self) -> Profile {
        self.i1.add(&self.i1.shift(1)).add(&self.a2())
    }

    pub fn a2(&self) -> Profile {
        self.i2.add(&self.i2.shift(2))
    }

    pub fn hs(&self) -> Profile {
        self.i0
            .add(&self.i1)
            .add(&self.i1.shift(1))
            .add(&self.i2)
            .add(&self.i2.shift(1))
            .add(&self.i2.shift(2))
    }

    /// "I0[0] + I1[1] + I0[2] + I2[4+4n, n>=0]" in module gradings.
    pub fn describe(&self) -> String {
        let mut singles: Vec<(i64, usize)> = Vec::new();
        let mut families = Vec::new();
        for (t, p) in [&self.i0, &self.i1, &self.i2].into_iter().enumerate() {
            let (finite, fams) = p.families();
            for (g, m) in finite {
                singles.extend(std::iter::repeat_n((g, t), m.max(0) as usize));
            }
            for (g, step, m) in fams {
                for _ in 0..m.max(0) {
                    families.push((g, t, format!("I{t}[{}+{step}n, n>=0]", fmt_rational(&(r64(g) + self.sigma)))));
                }
            }
        }
        singles.sort();
        families.sort();
        let mut parts: Vec<String> =
            singles.iter().map(|(g, t)| format!("I{t}[{}]", fmt_rational(&(r64(*g) + self.sigma)))).collect();
        parts.extend(families.into_iter().map(|(_, _, s)| s));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Reads the decomposition off the ranks of HM, A' and A'':
/// I2 from the alternating sum of A'', I1 from that of A' - A'', and I0
/// from half of HM - A'. Every multiplicity must be a nonnegative integer
/// and the ranks must be reproduced exactly.
pub fn gysin_decompose(hm: &Profile, a1: &Profile, a2: &Profile, sigma: Rational64) -> Result<GysinDecomposition> {
    let i2 = a2.alternating(2)?;
    let i1 = a1.sub(a2).alternating(1)?;
    let i0 = hm
        .sub(a1)
        .halve()
        .ok_or_else(|| Error::InconsistentRanks(format!("HM - A' = {} is not divisible by 2", hm.sub(a1))))?;
    for (name, p) in [("I0", &i0), ("I1", &i1), ("I2", &i2)] {
        if !p.is_nonnegative() {
            return Err(Error::InconsistentRanks(format!("negative {name} multiplicity: {p}")));
        }
    }
    let d = GysinDecomposition { i0, i1, i2, sigma };
    if d.hm() != *hm || d.a1() != *a1 || d.a2() != *a2 {
        return Err(Error::InconsistentRanks("decomposition does not reproduce the ranks".into()));
    }
    Ok(d)
}

//! Inputs shared by the benchmarks.

use latticeroot_core::plumbing::from_seifert;
use latticeroot_core::{build_intersection_form, CharVector, SeifertData, WeightedLattice};

/// The weighted lattice of a Brieskorn sphere in its canonical class.
pub fn brieskorn_lattice(exponents: &[i64]) -> WeightedLattice {
    let data = SeifertData::brieskorn(exponents).expect("pairwise coprime exponents");
    let form = build_intersection_form(&from_seifert(&data).expect("valid Seifert data")).expect("tree");
    let k = CharVector::canonical_class(&form);
    WeightedLattice::new(&form, &k).expect("negative definite")
}

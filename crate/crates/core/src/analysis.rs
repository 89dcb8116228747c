//! End-to-end reports for one spin^c structure, shared by the command line
//! tool and the tests. Every module reported here is that of the
//! orientation reversed boundary.

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{graded_root, hm_module, GradedModule, GradedRoot, RootOptions, WeightedLattice};
use crate::pin2::{
    correction_terms, hs_module_one_bad, two_bad_pipeline, CorrectionTerms, GysinDecomposition, PinModule,
};
use crate::plumbing::IntersectionForm;
use crate::spinc::{self, CharVector, SpinCOrbit, WuData};
use crate::symmetry::{involution_on_slices, SymmetryData};

pub const ORIENTATION: &str = "minus-boundary";

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Representative {
    /// The orbit's canonical representative (weight minimum at the origin).
    #[default]
    Minimal,
    /// The canonical class -m_v - 2 when it lies in the orbit.
    CanonicalClass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitSelector {
    All,
    SelfConjugate,
    Index(usize),
    /// A given characteristic vector, used as the representative.
    Vector(Vec<i64>),
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub root: RootOptions,
    pub representative: Representative,
    pub assume_conjecture: bool,
}

/// A spin^c structure together with the characteristic vector used for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Target {
    pub orbit: SpinCOrbit,
    pub vector: CharVector,
}

pub fn select(form: &IntersectionForm, selector: &OrbitSelector, rep: &Representative) -> Result<Vec<Target>> {
    let orbits = spinc::enumerate_orbits(form)?;
    let chosen: Vec<SpinCOrbit> = match selector {
        OrbitSelector::All => orbits.clone(),
        OrbitSelector::SelfConjugate => orbits.iter().filter(|o| o.self_conjugate).cloned().collect(),
        OrbitSelector::Index(i) => vec![orbits
            .get(*i)
            .cloned()
            .ok_or_else(|| Error::Parse(format!("orbit index {i} out of range (0..{})", orbits.len())))?],
        OrbitSelector::Vector(v) => {
            let l = CharVector::new(form, v.clone())?;
            let i = spinc::orbit_index(form, &orbits, &l)?;
            return Ok(vec![Target { orbit: orbits[i].clone(), vector: l }]);
        }
    };
    let canonical = CharVector::canonical_class(form);
    chosen
        .into_iter()
        .map(|orbit| {
            let vector = match rep {
                Representative::CanonicalClass if spinc::is_same_orbit(form, &canonical, &orbit.representative)? => {
                    canonical.clone()
                }
                _ => orbit.representative.clone(),
            };
            Ok(Target { orbit, vector })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct HmReport {
    pub orientation: &'static str,
    pub orbit: usize,
    pub representative: CharVector,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub sigma: Rational64,
    pub n_min: i64,
    pub n_stab: i64,
    #[serde(serialize_with = "crate::report::ser_opt_rational")]
    pub delta: Option<Rational64>,
    pub hm: GradedModule,
    pub description: String,
}

pub struct Computed {
    pub lattice: WeightedLattice,
    pub root: GradedRoot,
}

pub fn compute_root(form: &IntersectionForm, target: &Target, opts: &RootOptions) -> Result<Computed> {
    let lattice = WeightedLattice::new(form, &target.vector)?;
    let root = graded_root(&lattice, opts)?;
    Ok(Computed { lattice, root })
}

pub fn hm_report(form: &IntersectionForm, target: &Target, opts: &Options) -> Result<HmReport> {
    let c = compute_root(form, target, &opts.root)?;
    let hm = hm_module(&c.root, form.bad_vertices().len())?;
    Ok(HmReport {
        orientation: ORIENTATION,
        orbit: target.orbit.index,
        representative: target.vector.clone(),
        sigma: c.root.sigma,
        n_min: c.root.n_min,
        n_stab: c.root.n_stab,
        delta: hm.delta(),
        description: hm.describe(),
        hm,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MubarReport {
    pub orientation: &'static str,
    pub orbit: usize,
    pub wu: WuData,
    pub wu_set_non_adjacent: bool,
    pub symmetry: SymmetryData,
    /// Whether rho = 2 mubar; only asserted with at most one bad vertex.
    pub rho_equals_two_mubar: Option<bool>,
}

pub fn mubar_report(form: &IntersectionForm, target: &Target, opts: &Options) -> Result<MubarReport> {
    let wu = spinc::wu_vector(form, &target.vector)?;
    let c = compute_root(form, target, &opts.root)?;
    let symmetry = involution_on_slices(&c.lattice, &c.root)?;
    let check = (form.bad_vertices().len() <= 1).then(|| symmetry.rho == wu.mu_bar * 2);
    Ok(MubarReport {
        orientation: ORIENTATION,
        orbit: target.orbit.index,
        wu_set_non_adjacent: wu.is_non_adjacent(form),
        wu,
        symmetry,
        rho_equals_two_mubar: check,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Pin2Report {
    pub orientation: &'static str,
    pub orbit: usize,
    pub representative: CharVector,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub sigma: Rational64,
    #[serde(flatten)]
    pub terms: CorrectionTerms,
    #[serde(serialize_with = "crate::report::ser_graded")]
    pub finite: Vec<(Rational64, u64)>,
    pub q_action: Vec<crate::pin2::QMap>,
    #[serde(skip)]
    pub hs: PinModule,
    pub description: String,
    pub gysin: GysinDecomposition,
    pub gysin_description: String,
    pub conjecture_gated: bool,
}

pub fn pin2_report(form: &IntersectionForm, target: &Target, opts: &Options) -> Result<Pin2Report> {
    if !target.orbit.self_conjugate {
        return Err(Error::NotSelfConjugate);
    }
    let bad = form.bad_vertices().len();
    let c = compute_root(form, target, &opts.root)?;
    let hm = hm_module(&c.root, bad)?;
    let delta = hm.delta().ok_or_else(|| Error::InconsistentRanks("HM has no tower".into()))?;
    let symmetry = involution_on_slices(&c.lattice, &c.root)?;
    let mu_bar = spinc::wu_vector(form, &target.vector).ok().map(|w| w.mu_bar);
    let gysin = two_bad_pipeline(&c.lattice, &c.root, opts.assume_conjecture)?;
    let (terms, hs) = if bad <= 1 {
        let hs = hs_module_one_bad(&c.lattice, &c.root)?;
        let terms = correction_terms(symmetry.rho, delta, mu_bar)?;
        if terms.towers != hs.towers || gysin.module.towers != hs.towers || gysin.module.finite != hs.finite {
            return Err(Error::InternalMismatch(format!(
                "HS by residue classes {} and by the Gysin sequence {} differ",
                hs.describe(),
                gysin.module.describe()
            )));
        }
        (terms, hs)
    } else {
        let terms = CorrectionTerms::from_towers(gysin.module.towers, delta, symmetry.rho, mu_bar);
        (terms, gysin.module.clone())
    };
    Ok(Pin2Report {
        orientation: ORIENTATION,
        orbit: target.orbit.index,
        representative: target.vector.clone(),
        sigma: c.root.sigma,
        description: hs.describe(),
        finite: hs.finite.clone(),
        q_action: hs.q_action.clone(),
        terms,
        hs,
        gysin_description: gysin.gysin.describe(),
        gysin: gysin.gysin,
        conjecture_gated: gysin.conjecture_gated,
    })
}

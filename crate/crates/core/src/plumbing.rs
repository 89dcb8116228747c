//! Plumbing trees, their intersection forms and Seifert fibered inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact;
use crate::union_find::DisjointSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: i64,
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlumbingGraph {
    pub vertices: Vec<Vertex>,
    #[serde(default)]
    pub edges: Vec<[i64; 2]>,
}

impl PlumbingGraph {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("plumbing graph: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plumbing graph serializes")
    }
}

/// Intersection form of a plumbing tree, indexed by vertex position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionForm {
    pub ids: Vec<i64>,
    pub matrix: Vec<i64>,
    pub neighbors: Vec<Vec<usize>>,
}

impl IntersectionForm {
    pub fn dim(&self) -> usize {
        self.ids.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i * self.dim() + j]
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.entry(i, i)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    pub fn is_bad(&self, i: usize) -> bool {
        self.weight(i) > -(self.degree(i) as i64)
    }

    pub fn bad_vertices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.is_bad(i)).collect()
    }

    pub fn determinant(&self) -> BigInt {
        exact::determinant(self.dim(), &self.matrix)
    }

    pub fn inertia(&self) -> (usize, usize, usize) {
        exact::inertia(self.dim(), &self.matrix)
    }

    pub fn is_negative_definite(&self) -> bool {
        let (p, _, z) = self.inertia();
        p == 0 && z == 0
    }

    pub fn inverse(&self) -> Option<Vec<BigRational>> {
        exact::inverse_int(self.dim(), &self.matrix)
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.matrix[i * n + j] * x[j]).sum())
            .collect()
    }

    pub fn index_of(&self, id: i64) -> Option<usize> {
        self.ids.iter().position(|&v| v == id)
    }
}

pub fn build_intersection_form(graph: &PlumbingGraph) -> Result<IntersectionForm> {
    let n = graph.vertices.len();
    if n == 0 {
        return Err(Error::MalformedGraph("no vertices".into()));
    }
    let mut index = BTreeMap::new();
    for (i, v) in graph.vertices.iter().enumerate() {
        if index.insert(v.id, i).is_some() {
            return Err(Error::MalformedGraph(format!("duplicate vertex id {}", v.id)));
        }
    }
    let mut matrix = vec![0i64; n * n];
    let mut neighbors = vec![Vec::new(); n];
    let mut ds = DisjointSet::new(n);
    for &[a, b] in &graph.edges {
        let (Some(&i), Some(&j)) = (index.get(&a), index.get(&b)) else {
            return Err(Error::MalformedGraph(format!("edge ({a}, {b}) names an unknown vertex")));
        };
        if i == j {
            return Err(Error::MalformedGraph(format!("self-loop at vertex {a}")));
        }
        if !ds.union(i, j) {
            return Err(Error::MalformedGraph(format!("edge ({a}, {b}) closes a cycle")));
        }
        matrix[i * n + j] = 1;
        matrix[j * n + i] = 1;
        neighbors[i].push(j);
        neighbors[j].push(i);
    }
    if graph.edges.len() + 1 != n {
        return Err(Error::MalformedGraph("graph is not connected".into()));
    }
    for (i, v) in graph.vertices.iter().enumerate() {
        matrix[i * n + i] = v.weight;
    }
    for nb in &mut neighbors {
        nb.sort_unstable();
    }
    Ok(IntersectionForm {
        ids: graph.vertices.iter().map(|v| v.id).collect(),
        matrix,
        neighbors,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub vertices: usize,
    pub is_tree: bool,
    pub is_negative_definite: bool,
    pub bad_vertex_ids: Vec<i64>,
    /// Positive minus negative inertia.
    pub signature: i64,
    #[serde(serialize_with = "ser_bigint")]
    pub determinant: BigInt,
    /// Positive, negative and zero pivot counts.
    pub inertia: [usize; 3],
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

impl ValidationReport {
    pub fn bad_count(&self) -> usize {
        self.bad_vertex_ids.len()
    }
}

pub fn validate(graph: &PlumbingGraph) -> Result<ValidationReport> {
    let form = build_intersection_form(graph)?;
    Ok(validate_form(&form))
}

pub fn validate_form(form: &IntersectionForm) -> ValidationReport {
    let (p, n, z) = form.inertia();
    ValidationReport {
        vertices: form.dim(),
        is_tree: true,
        is_negative_definite: p == 0 && z == 0,
        bad_vertex_ids: form.bad_vertices().iter().map(|&i| form.ids[i]).collect(),
        signature: p as i64 - n as i64,
        determinant: form.determinant(),
        inertia: [p, n, z],
    }
}

/// Unnormalized Seifert invariants: central weight -b and one arm per
/// exceptional fiber (alpha, omega) with 0 < omega < alpha coprime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertData {
    pub b: i64,
    pub arms: Vec<[i64; 2]>,
}

impl SeifertData {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("Seifert data: {e}")))
    }

    /// Seifert invariants of the Brieskorn sphere with pairwise coprime
    /// exponents, oriented as the boundary of its negative definite plumbing.
    pub fn brieskorn(exponents: &[i64]) -> Result<Self> {
        if exponents.iter().any(|&a| a < 2) {
            return Err(Error::InvalidSeifertData("Brieskorn exponents must be at least 2".into()));
        }
        for (i, a) in exponents.iter().enumerate() {
            for b in &exponents[i + 1..] {
                if a.gcd(b) != 1 {
                    return Err(Error::InvalidSeifertData(format!("exponents {a} and {b} are not coprime")));
                }
            }
        }
        let prod: i128 = exponents.iter().map(|&a| a as i128).product();
        let mut arms = Vec::new();
        let mut sum: i128 = 1;
        for &a in exponents {
            let rest = prod / a as i128;
            let inv = mod_inverse(rest.rem_euclid(a as i128), a as i128);
            let omega = (-inv).rem_euclid(a as i128);
            sum += omega * rest;
            arms.push([a, omega as i64]);
        }
        if sum % prod != 0 {
            return Err(Error::InvalidSeifertData("central weight is not integral".into()));
        }
        Ok(Self { b: (sum / prod) as i64, arms })
    }
}

fn mod_inverse(a: i128, m: i128) -> i128 {
    let e = a.extended_gcd(&m);
    e.x.rem_euclid(m)
}

/// Negative continued fraction p/q = c1 - 1/(c2 - ...), all c >= 2.
pub fn negative_continued_fraction(p: i64, q: i64) -> Vec<i64> {
    let (mut p, mut q) = (p, q);
    let mut out = Vec::new();
    while q != 0 {
        let c = Integer::div_ceil(&p, &q);
        out.push(c);
        (p, q) = (q, c * q - p);
    }
    out
}

pub fn from_seifert(data: &SeifertData) -> Result<PlumbingGraph> {
    let mut vertices = vec![Vertex { id: 0, weight: -data.b }];
    let mut edges = Vec::new();
    for &[alpha, omega] in &data.arms {
        if alpha < 2 || omega <= 0 || omega >= alpha || alpha.gcd(&omega) != 1 {
            return Err(Error::InvalidSeifertData(format!("bad fiber ({alpha}, {omega})")));
        }
        let mut prev = 0;
        for c in negative_continued_fraction(alpha, omega) {
            let id = vertices.len() as i64;
            vertices.push(Vertex { id, weight: -c });
            edges.push([prev, id]);
            prev = id;
        }
    }
    Ok(PlumbingGraph { vertices, edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn continued_fractions() {
        assert_eq!(negative_continued_fraction(5, 4), vec![2, 2, 2, 2]);
        assert_eq!(negative_continued_fraction(7, 3), vec![3, 2, 2]);
        assert_eq!(negative_continued_fraction(15, 1), vec![15]);
        assert_eq!(negative_continued_fraction(7, 6), vec![2; 6]);
    }

    #[test]
    fn brieskorn_invariants() {
        assert_eq!(
            SeifertData::brieskorn(&[2, 3, 5]).unwrap(),
            SeifertData { b: 2, arms: vec![[2, 1], [3, 2], [5, 4]] }
        );
        assert_eq!(
            SeifertData::brieskorn(&[2, 7, 15]).unwrap(),
            SeifertData { b: 1, arms: vec![[2, 1], [7, 3], [15, 1]] }
        );
        assert_eq!(
            SeifertData::brieskorn(&[3, 5, 7]).unwrap(),
            SeifertData { b: 2, arms: vec![[3, 1], [5, 4], [7, 6]] }
        );
        assert!(SeifertData::brieskorn(&[2, 4, 5]).is_err());
    }

    #[test]
    fn rejects_cycles_and_forests() {
        let v = |id| Vertex { id, weight: -2 };
        let cyc = PlumbingGraph { vertices: vec![v(0), v(1), v(2)], edges: vec![[0, 1], [1, 2], [2, 0]] };
        assert!(matches!(build_intersection_form(&cyc), Err(Error::MalformedGraph(_))));
        let forest = PlumbingGraph { vertices: vec![v(0), v(1), v(2)], edges: vec![[0, 1]] };
        assert!(matches!(build_intersection_form(&forest), Err(Error::MalformedGraph(_))));
        let dup = PlumbingGraph { vertices: vec![v(0), v(0)], edges: vec![[0, 0]] };
        assert!(matches!(build_intersection_form(&dup), Err(Error::MalformedGraph(_))));
    }

    #[test]
    fn e8_from_seifert() {
        let g = from_seifert(&SeifertData::brieskorn(&[2, 3, 5]).unwrap()).unwrap();
        let rep = validate(&g).unwrap();
        assert_eq!(rep.vertices, 8);
        assert!(rep.is_negative_definite);
        assert_eq!(rep.determinant, BigInt::from(1));
        assert_eq!(rep.signature, -8);
        assert_eq!(rep.bad_vertex_ids, vec![0]);
    }

    #[test]
    fn json_roundtrip() {
        let text = r#"{"vertices":[{"id":1,"weight":-2},{"id":2,"weight":-3}],"edges":[[1,2]]}"#;
        let g = PlumbingGraph::from_json(text).unwrap();
        assert_eq!(PlumbingGraph::from_json(&g.to_json()).unwrap(), g);
        assert_eq!(validate(&g).unwrap().determinant, BigInt::from(5));
    }
}

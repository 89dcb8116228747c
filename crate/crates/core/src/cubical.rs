//! Cubical complexes spanned by finite sets of lattice points.
//!
//! A cell is a base point p and a set D of coordinate directions; it is
//! present when all 2^|D| vertices p + sum_{d in S} e_d (S subset of D) are.
//! Cells are only built up to a fixed top dimension, so homology is exact
//! below that dimension.

use std::collections::VecDeque;

use crate::gf2::{self, SparseReducer};

pub const NONE: u32 = u32::MAX;

/// Neighbor tables of a point set: plus[p * dim + d] is the index of
/// p + e_d (or NONE), minus likewise for p - e_d.
#[derive(Debug, Clone)]
pub struct Neighbors {
    pub dim: usize,
    pub plus: Vec<u32>,
    pub minus: Vec<u32>,
}

impl Neighbors {
    pub fn len(&self) -> usize {
        self.plus.len() / self.dim.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty()
    }

    #[inline]
    pub fn plus(&self, p: u32, d: usize) -> u32 {
        self.plus[p as usize * self.dim + d]
    }

    #[inline]
    pub fn minus(&self, p: u32, d: usize) -> u32 {
        self.minus[p as usize * self.dim + d]
    }
}

/// Cells of one dimension, grouped by base point and sorted by mask.
#[derive(Debug, Clone, Default)]
struct CellSet {
    start: Vec<u32>,
    base: Vec<u32>,
    mask: Vec<u32>,
}

impl CellSet {
    fn len(&self) -> usize {
        self.mask.len()
    }

    #[inline]
    fn find(&self, p: u32, mask: u32) -> Option<u32> {
        if p == NONE {
            return None;
        }
        let (a, b) = (self.start[p as usize] as usize, self.start[p as usize + 1] as usize);
        self.mask[a..b].binary_search(&mask).ok().map(|i| (a + i) as u32)
    }
}

#[derive(Debug, Clone)]
pub struct CubicalComplex<'a> {
    nb: &'a Neighbors,
    cells: Vec<CellSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology {
    /// Mod 2 Betti numbers in degrees 0..top.
    pub betti: Vec<u64>,
    /// Cell counts in degrees 0..=top.
    pub cells: Vec<u64>,
}

impl<'a> CubicalComplex<'a> {
    pub fn build(nb: &'a Neighbors, top: usize) -> Self {
        let n = nb.len();
        let top = top.min(nb.dim);
        let mut cells = vec![CellSet {
            start: (0..=n as u32).collect(),
            base: (0..n as u32).collect(),
            mask: vec![0; n],
        }];
        for k in 0..top {
            let prev = &cells[k];
            let mut next = CellSet { start: Vec::with_capacity(n + 1), ..Default::default() };
            next.start.push(0);
            for p in 0..n as u32 {
                let from = next.mask.len();
                for id in prev.start[p as usize]..prev.start[p as usize + 1] {
                    let m = prev.mask[id as usize];
                    let lowest = if m == 0 { 0 } else { 32 - m.leading_zeros() as usize };
                    for d in lowest..nb.dim {
                        let q = nb.plus(p, d);
                        if q != NONE && prev.find(q, m).is_some() {
                            next.mask.push(m | 1 << d);
                            next.base.push(p);
                        }
                    }
                }
                next.mask[from..].sort_unstable();
                next.start.push(next.mask.len() as u32);
            }
            cells.push(next);
        }
        Self { nb, cells }
    }

    pub fn top(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn counts(&self) -> Vec<u64> {
        self.cells.iter().map(|c| c.len() as u64).collect()
    }

    fn faces(&self, k: usize, id: u32, out: &mut Vec<u32>) {
        out.clear();
        if k == 0 {
            return;
        }
        let set = &self.cells[k];
        let (p, m) = (set.base[id as usize], set.mask[id as usize]);
        let lower = &self.cells[k - 1];
        let mut bits = m;
        while bits != 0 {
            let d = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let m2 = m & !(1 << d);
            out.push(lower.find(p, m2).expect("face of a cell exists"));
            out.push(lower.find(self.nb.plus(p, d), m2).expect("face of a cell exists"));
        }
    }

    fn cofaces(&self, k: usize, id: u32, out: &mut Vec<u32>) {
        out.clear();
        if k >= self.top() {
            return;
        }
        let set = &self.cells[k];
        let (p, m) = (set.base[id as usize], set.mask[id as usize]);
        let upper = &self.cells[k + 1];
        for d in 0..self.nb.dim {
            if m >> d & 1 == 1 {
                continue;
            }
            let m2 = m | 1 << d;
            if let Some(c) = upper.find(p, m2) {
                out.push(c);
            }
            if let Some(c) = upper.find(self.nb.minus(p, d), m2) {
                out.push(c);
            }
        }
    }

    /// Mod 2 homology below the top dimension. `seeds` holds one vertex per
    /// connected component.
    ///
    /// One seed vertex per component is removed (leaving reduced homology),
    /// then two kinds of pairs are removed until none is left: a cell whose
    /// boundary meets exactly one remaining cell goes with that cell
    /// (coreduction), and a cell below the top with exactly one remaining
    /// coface goes with it (collapse). Ranks of the boundary maps on what
    /// remains finish the job.
    pub fn homology(&self, seeds: &[u32]) -> Homology {
        let top = self.top();
        let mut alive: Vec<Vec<bool>> = self.cells.iter().map(|c| vec![true; c.len()]).collect();
        let mut queue: VecDeque<(usize, u32)> = VecDeque::new();
        let (mut fbuf, mut cbuf) = (Vec::new(), Vec::new());
        for &v in seeds {
            alive[0][v as usize] = false;
            self.cofaces(0, v, &mut cbuf);
            queue.extend(cbuf.iter().map(|&c| (1, c)));
        }
        for k in 1..top {
            queue.extend((0..self.cells[k].len() as u32).map(|c| (k, c)));
        }
        let mut buf = Vec::new();
        let mut remove = |k: usize, id: u32, alive: &mut Vec<Vec<bool>>, queue: &mut VecDeque<(usize, u32)>| {
            alive[k][id as usize] = false;
            self.cofaces(k, id, &mut buf);
            queue.extend(buf.iter().filter(|&&c| alive[k + 1][c as usize]).map(|&c| (k + 1, c)));
            self.faces(k, id, &mut buf);
            if k > 0 {
                queue.extend(buf.iter().filter(|&&c| alive[k - 1][c as usize]).map(|&c| (k - 1, c)));
            }
        };
        while let Some((k, id)) = queue.pop_front() {
            if !alive[k][id as usize] {
                continue;
            }
            if k > 0 {
                self.faces(k, id, &mut fbuf);
                let mut it = fbuf.iter().filter(|&&f| alive[k - 1][f as usize]);
                if let (Some(&face), None) = (it.next(), it.next()) {
                    remove(k, id, &mut alive, &mut queue);
                    remove(k - 1, face, &mut alive, &mut queue);
                    continue;
                }
            }
            if k > 0 && k < top {
                self.cofaces(k, id, &mut cbuf);
                let mut it = cbuf.iter().filter(|&&c| alive[k + 1][c as usize]);
                if let (Some(&co), None) = (it.next(), it.next()) {
                    remove(k, id, &mut alive, &mut queue);
                    remove(k + 1, co, &mut alive, &mut queue);
                }
            }
        }
        // renumber survivors
        let mut ids: Vec<Vec<u32>> = Vec::with_capacity(top + 1);
        let mut remaining = Vec::with_capacity(top + 1);
        for a in &alive {
            let mut next = 0u32;
            ids.push(
                a.iter()
                    .map(|&x| {
                        if x {
                            next += 1;
                            next - 1
                        } else {
                            NONE
                        }
                    })
                    .collect(),
            );
            remaining.push(next as u64);
        }
        // rank of the boundary from degree k to k - 1
        let mut rank = vec![0u64; top + 2];
        for k in 1..=top {
            let mut cols = Vec::new();
            for (id, &x) in alive[k].iter().enumerate() {
                if !x {
                    continue;
                }
                self.faces(k, id as u32, &mut fbuf);
                let mut col: Vec<u32> = fbuf
                    .iter()
                    .map(|&f| ids[k - 1][f as usize])
                    .filter(|&f| f != NONE)
                    .collect();
                if col.is_empty() {
                    continue;
                }
                col.sort_unstable();
                cols.push(col);
            }
            rank[k] = gf2::rank_of_columns(remaining[k - 1] as usize, &cols) as u64;
        }
        let mut betti: Vec<u64> = (0..top).map(|k| remaining[k] - rank[k] - rank[k + 1]).collect();
        if let Some(b0) = betti.first_mut() {
            *b0 += seeds.len() as u64;
        }
        let cells = self.counts();
        // Euler characteristic of the truncated complex
        let top_homology = remaining[top] as i64 - rank[top] as i64;
        let lhs: i64 = cells.iter().enumerate().map(|(k, &c)| sign(k) * c as i64).sum();
        let rhs: i64 = betti.iter().enumerate().map(|(k, &b)| sign(k) * b as i64).sum::<i64>()
            + sign(top) * top_homology;
        assert_eq!(lhs, rhs, "Euler characteristic mismatch");
        Homology { betti, cells }
    }

    /// Rank of 1 + J on H_1, for an involution given on vertices that maps
    /// the cell at p with directions D to the cell at J(p) - sum_D e_d.
    /// Returns (dim H_1, rank(1 + J)). Needs top >= 2.
    pub fn h1_involution(&self, jvert: &[u32]) -> (u64, u64) {
        assert!(self.top() >= 2);
        let edges = &self.cells[1];
        let n = self.nb.len();
        // spanning forest by breadth first search
        let mut parent_edge = vec![NONE; n];
        let mut seen = vec![false; n];
        let mut tree = vec![false; edges.len()];
        let mut cbuf = Vec::new();
        let mut fbuf = Vec::new();
        let mut depth = vec![0u32; n];
        for r in 0..n as u32 {
            if seen[r as usize] {
                continue;
            }
            seen[r as usize] = true;
            let mut queue = std::collections::VecDeque::from([r]);
            while let Some(v) = queue.pop_front() {
                self.cofaces(0, v, &mut cbuf);
                for &e in &cbuf {
                    self.faces(1, e, &mut fbuf);
                    let w = if fbuf[0] == v { fbuf[1] } else { fbuf[0] };
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        parent_edge[w as usize] = e;
                        depth[w as usize] = depth[v as usize] + 1;
                        tree[e as usize] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let other = |e: u32, v: u32, fbuf: &mut Vec<u32>| {
            self.faces(1, e, fbuf);
            if fbuf[0] == v { fbuf[1] } else { fbuf[0] }
        };
        let mut boundaries = SparseReducer::new();
        for sq in 0..self.cells[2].len() as u32 {
            self.faces(2, sq, &mut fbuf);
            let mut col = fbuf.clone();
            col.sort_unstable();
            boundaries.insert(col);
        }
        let mut homology = boundaries.clone();
        let mut basis = Vec::new();
        for e in 0..edges.len() as u32 {
            if tree[e as usize] {
                continue;
            }
            self.faces(1, e, &mut fbuf);
            let (mut a, mut b) = (fbuf[0], fbuf[1]);
            let mut cycle = vec![e];
            while a != b {
                if depth[a as usize] >= depth[b as usize] {
                    let pe = parent_edge[a as usize];
                    cycle.push(pe);
                    a = other(pe, a, &mut fbuf);
                } else {
                    let pe = parent_edge[b as usize];
                    cycle.push(pe);
                    b = other(pe, b, &mut fbuf);
                }
            }
            cycle.sort_unstable();
            if homology.insert(cycle.clone()) {
                basis.push(cycle);
            }
        }
        let image_edge = |e: u32| -> u32 {
            let (p, m) = (edges.base[e as usize], edges.mask[e as usize]);
            let d = m.trailing_zeros() as usize;
            let q = self.nb.minus(jvert[p as usize], d);
            edges.find(q, m).expect("involution maps edges to edges")
        };
        let mut image = boundaries;
        let mut rank = 0;
        for z in &basis {
            let mut jz: Vec<u32> = z.iter().map(|&e| image_edge(e)).collect();
            jz.sort_unstable();
            if image.insert(gf2::xor_sorted(z, &jz)) {
                rank += 1;
            }
        }
        (basis.len() as u64, rank)
    }
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) { 1 } else { -1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rustc_hash::FxHashMap;

    fn neighbors(points: &[Vec<i64>]) -> Neighbors {
        let dim = points[0].len();
        let index: FxHashMap<Vec<i64>, u32> =
            points.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for p in points {
            for d in 0..dim {
                let mut q = p.clone();
                q[d] += 1;
                plus.push(*index.get(&q).unwrap_or(&NONE));
                q[d] -= 2;
                minus.push(*index.get(&q).unwrap_or(&NONE));
            }
        }
        Neighbors { dim, plus, minus }
    }

    fn grid(dim: usize, side: i64, keep: impl Fn(&[i64]) -> bool) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut x = vec![0i64; dim];
        loop {
            if keep(&x) {
                out.push(x.clone());
            }
            let mut k = 0;
            loop {
                if k == dim {
                    return out;
                }
                x[k] += 1;
                if x[k] < side {
                    break;
                }
                x[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn solid_box_is_acyclic() {
        let pts = grid(4, 3, |_| true);
        let nb = neighbors(&pts);
        let cx = CubicalComplex::build(&nb, 3);
        assert_eq!(cx.homology(&[0]).betti, vec![1, 0, 0]);
    }

    #[test]
    fn square_annulus_has_one_loop() {
        let pts = grid(2, 3, |x| !(x[0] == 1 && x[1] == 1));
        let nb = neighbors(&pts);
        let cx = CubicalComplex::build(&nb, 2);
        assert_eq!(cx.counts(), vec![8, 8, 0]);
        assert_eq!(cx.homology(&[0]).betti, vec![1, 1]);
    }

    #[test]
    fn hollow_cube_has_two_sphere() {
        let pts = grid(3, 3, |x| x != [1, 1, 1]);
        let nb = neighbors(&pts);
        let cx = CubicalComplex::build(&nb, 3);
        assert_eq!(cx.homology(&[0]).betti, vec![1, 0, 1]);
    }

    #[test]
    fn two_components() {
        let pts = vec![vec![0, 0], vec![0, 1], vec![3, 3]];
        let nb = neighbors(&pts);
        let cx = CubicalComplex::build(&nb, 2);
        assert_eq!(cx.homology(&[0, 2]).betti, vec![2, 0]);
    }

    #[test]
    fn involution_on_annulus() {
        // J(x) = -x + (2, 2) is a rotation by pi, acting trivially on H_1
        let pts = grid(2, 3, |x| !(x[0] == 1 && x[1] == 1));
        let nb = neighbors(&pts);
        let cx = CubicalComplex::build(&nb, 2);
        let pos: FxHashMap<Vec<i64>, u32> = pts.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let j: Vec<u32> = pts.iter().map(|p| pos[&vec![2 - p[0], 2 - p[1]]]).collect();
        assert_eq!(cx.h1_involution(&j), (1, 0));
    }

    #[test]
    fn involution_swapping_loops() {
        // two annuli joined by a bridge, swapped by x -> -x + (6, 2)
        let ring = |ox: i64| -> Vec<Vec<i64>> {
            grid(2, 3, |x| !(x[0] == 1 && x[1] == 1)).into_iter().map(|x| vec![x[0] + ox, x[1]]).collect()
        };
        let mut all = ring(0);
        all.push(vec![3, 1]);
        all.extend(ring(4));
        let nb = neighbors(&all);
        let cx = CubicalComplex::build(&nb, 2);
        assert_eq!(cx.homology(&[0]).betti, vec![1, 2]);
        let pos: FxHashMap<Vec<i64>, u32> = all.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let j: Vec<u32> = all.iter().map(|p| pos[&vec![6 - p[0], 2 - p[1]]]).collect();
        assert_eq!(cx.h1_involution(&j), (2, 1));
    }
}

use std::fmt::Write as _;

use super::GradedRoot;
use crate::report::{fmt_rational, r64};

type Node = (usize, usize);

struct Layout<'a> {
    root: &'a GradedRoot,
    kids: Vec<Vec<Vec<usize>>>,
}

impl<'a> Layout<'a> {
    fn new(root: &'a GradedRoot) -> Self {
        let mut kids: Vec<Vec<Vec<usize>>> = root.levels.iter().map(|l| vec![Vec::new(); l.components.len()]).collect();
        for (k, l) in root.levels.iter().enumerate() {
            for (c, &p) in l.parent.iter().enumerate() {
                kids[k + 1][p].push(c);
            }
        }
        Self { root, kids }
    }

    fn j(&self, (k, c): Node) -> usize {
        self.root.levels[k].involution.as_ref().map_or(c, |j| j[c])
    }

    /// Children ordered so that J acts as a left-right mirror.
    fn order(&self, node: Node) -> Vec<usize> {
        let (k, c) = node;
        let ks = &self.kids[k][c];
        if k == 0 || self.root.levels[k - 1].involution.is_none() {
            return ks.clone();
        }
        let jc = self.j(node);
        let jl = |x: usize| self.j((k - 1, x));
        if jc == c {
            let left: Vec<usize> = ks.iter().copied().filter(|&x| jl(x) > x).collect();
            let mid: Vec<usize> = ks.iter().copied().filter(|&x| jl(x) == x).collect();
            let right: Vec<usize> = left.iter().rev().map(|&x| jl(x)).collect();
            [left, mid, right].concat()
        } else if c < jc {
            ks.clone()
        } else {
            self.order((k, jc)).iter().rev().map(|&x| jl(x)).collect()
        }
    }

    fn width(&self, node: Node) -> usize {
        let (k, _) = node;
        let o = self.order(node);
        if o.is_empty() {
            1
        } else {
            o.iter().map(|&x| self.width((k - 1, x))).sum()
        }
    }

    /// Leaf-slot coordinates (times two, so midpoints stay integral).
    fn place(&self, node: Node, left: usize, xs: &mut Vec<Vec<usize>>) -> usize {
        let (k, c) = node;
        let o = self.order(node);
        let x = if o.is_empty() {
            2 * left
        } else {
            let mut cur = left;
            let mut first = 0;
            let mut last = 0;
            for (i, &ch) in o.iter().enumerate() {
                let px = self.place((k - 1, ch), cur, xs);
                cur += self.width((k - 1, ch));
                if i == 0 {
                    first = px;
                }
                last = px;
            }
            (first + last) / 2
        };
        xs[k][c] = x;
        x
    }
}

fn grading(root: &GradedRoot, level: i64) -> String {
    fmt_rational(&(r64(2 * level) + root.sigma))
}

/// ASCII drawing with the stem vertical and J as a left-right mirror.
pub fn render_ascii(root: &GradedRoot) -> String {
    let lay = Layout::new(root);
    let top = root.levels.len() - 1;
    let mut xs: Vec<Vec<usize>> = root.levels.iter().map(|l| vec![0; l.components.len()]).collect();
    let mut left = 0;
    for c in 0..root.levels[top].components.len() {
        lay.place((top, c), left, &mut xs);
        left += lay.width((top, c));
    }
    let labels: Vec<String> = root.levels.iter().map(|l| grading(root, l.level)).collect();
    let pad = labels.iter().map(|s| s.len()).max().unwrap_or(1) + 1;
    let cols = 2 * left + 1;
    let mut out = String::new();
    for k in (0..=top).rev() {
        let mut row = vec![b' '; cols];
        for &x in &xs[k] {
            row[x] = b'*';
        }
        let _ = writeln!(out, "{:>pad$} {}", labels[k], String::from_utf8_lossy(&row).trim_end());
        if k == 0 {
            break;
        }
        let mut bar = vec![b' '; cols];
        let mut stems = vec![b' '; cols];
        for c in 0..xs[k].len() {
            let px = xs[k][c];
            let ch: Vec<usize> = lay.kids[k][c].iter().map(|&x| xs[k - 1][x]).collect();
            if ch.is_empty() {
                continue;
            }
            let lo = ch.iter().copied().min().unwrap().min(px);
            let hi = ch.iter().copied().max().unwrap().max(px);
            for b in bar.iter_mut().take(hi + 1).skip(lo) {
                *b = b'-';
            }
            bar[px] = if lo == hi { b'|' } else { b'+' };
            for &x in &ch {
                if lo != hi {
                    bar[x] = b'+';
                }
                stems[x] = b'|';
            }
        }
        let _ = writeln!(out, "{:>pad$} {}", "", String::from_utf8_lossy(&bar).trim_end());
        let _ = writeln!(out, "{:>pad$} {}", "", String::from_utf8_lossy(&stems).trim_end());
    }
    out
}

/// Graphviz description: one node per component, edges to parents.
pub fn render_dot(root: &GradedRoot) -> String {
    let mut out = String::from("graph graded_root {\n  rankdir=BT;\n  node [shape=circle, width=0.15, label=\"\"];\n");
    for l in &root.levels {
        let _ = write!(out, "  {{ rank=same;");
        for c in 0..l.components.len() {
            let _ = write!(out, " n{}_{};", level_tag(l.level), c);
        }
        out.push_str(" }\n");
        for (c, comp) in l.components.iter().enumerate() {
            let fixed = l.involution.as_ref().is_some_and(|j| j[c] == c);
            let _ = writeln!(
                out,
                "  n{}_{} [xlabel=\"{}\", tooltip=\"{} points{}\"];",
                level_tag(l.level),
                c,
                grading(root, l.level),
                comp.size,
                if fixed { ", J-invariant" } else { "" }
            );
        }
    }
    for w in root.levels.windows(2) {
        for (c, &p) in w[0].parent.iter().enumerate() {
            let _ = writeln!(out, "  n{}_{} -- n{}_{};", level_tag(w[0].level), c, level_tag(w[1].level), p);
        }
    }
    out.push_str("}\n");
    out
}

fn level_tag(n: i64) -> String {
    if n < 0 { format!("m{}", -n) } else { n.to_string() }
}

/// Per-level summary lines.
pub fn render_text(root: &GradedRoot) -> String {
    let mut out = String::new();
    for l in root.levels.iter().rev() {
        let _ = write!(
            out,
            "level {} (grading {}): {} component(s), {} points, h = {:?}",
            l.level,
            grading(root, l.level),
            l.components.len(),
            l.points,
            l.betti
        );
        if l.involution.is_some() {
            let _ = write!(out, ", fixed {:?}, pairs {:?}", l.fixed(), l.pairs());
        }
        if !l.parent.is_empty() {
            let _ = write!(out, ", parents {:?}", l.parent);
        }
        out.push('\n');
    }
    out
}

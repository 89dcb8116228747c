//! Linear algebra over GF(2).

use rustc_hash::FxHashMap;

/// Dense bit matrix, rows packed into u64 words.
#[derive(Debug, Clone)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        Self { rows, cols, words, bits: vec![0; rows * words] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.bits[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    /// Rank by Gaussian elimination; consumes the matrix.
    pub fn rank(mut self) -> usize {
        let w = self.words;
        let mut rank = 0;
        for c in 0..self.cols {
            let (word, bit) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (rank..self.rows).find(|&r| self.bits[r * w + word] & bit != 0) else {
                continue;
            };
            if p != rank {
                for k in 0..w {
                    self.bits.swap(p * w + k, rank * w + k);
                }
            }
            for r in rank + 1..self.rows {
                if self.bits[r * w + word] & bit != 0 {
                    for k in word..w {
                        let v = self.bits[rank * w + k];
                        self.bits[r * w + k] ^= v;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

/// Column echelon store: each inserted column is kept reduced with a distinct
/// pivot (its largest row index).
#[derive(Debug, Default, Clone)]
pub struct SparseReducer {
    pivots: FxHashMap<u32, Vec<u32>>,
}

/// Symmetric difference of two sorted index lists.
pub fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl SparseReducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces a sorted column against the stored ones.
    pub fn reduce(&self, mut col: Vec<u32>) -> Vec<u32> {
        while let Some(&p) = col.last() {
            match self.pivots.get(&p) {
                Some(other) => col = xor_sorted(&col, other),
                None => break,
            }
        }
        col
    }

    /// Inserts a column; returns false if it was already in the span.
    pub fn insert(&mut self, col: Vec<u32>) -> bool {
        let col = self.reduce(col);
        match col.last() {
            Some(&p) => {
                self.pivots.insert(p, col);
                true
            }
            None => false,
        }
    }
}

/// Rank of the matrix whose columns are given as sorted row-index lists.
pub fn rank_of_columns(rows: usize, columns: &[Vec<u32>]) -> usize {
    if rows == 0 || columns.is_empty() {
        return 0;
    }
    if (rows as u64) * (columns.len() as u64) <= 1 << 26 {
        // transpose into rows of the column space, same rank
        let mut m = BitMatrix::zeros(columns.len(), rows);
        for (c, col) in columns.iter().enumerate() {
            for &r in col {
                m.flip(c, r as usize);
            }
        }
        m.rank()
    } else {
        sparse_rank(columns)
    }
}

pub fn sparse_rank(columns: &[Vec<u32>]) -> usize {
    let mut red = SparseReducer::new();
    for col in columns {
        red.insert(col.clone());
    }
    red.rank()
}

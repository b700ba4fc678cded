use std::fmt;

use crate::error::{Error, Result};

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ParamMismatch(format!("matrix dimensions must be positive, got {rows}x{cols}")));
        }
        let stride = cols.div_ceil(64);
        Ok(BitMatrix { rows, cols, stride, bits: vec![0; rows * stride] })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::new(n, n)?;
        for i in 0..n {
            m.set(i, i, true);
        }
        Ok(m)
    }

    /// From rows of 0/1 bytes.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ParamMismatch("ragged rows".into()));
        }
        let mut m = Self::new(rows.len(), cols)?;
        for (i, row) in rows.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                m.set(i, j, b & 1 == 1);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.stride + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.bits[r * self.stride + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.bits[r * self.stride + c / 64] ^= 1 << (c % 64);
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for w in 0..self.stride {
                self.bits.swap(a * self.stride + w, b * self.stride + w);
            }
        }
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        for w in 0..self.stride {
            let s = self.bits[src * self.stride + w];
            self.bits[dst * self.stride + w] ^= s;
        }
    }

    /// `self * x`.
    pub fn mul_vec(&self, x: &[bool]) -> Vec<bool> {
        (0..self.rows).map(|r| (0..self.cols).filter(|&c| self.get(r, c) && x[c]).count() % 2 == 1).collect()
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.reduce(self.cols).len()
    }

    /// Reduced row-echelon form over the first `limit` columns; returns the
    /// pivot column of each leading row.
    fn reduce(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..limit {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(row, p);
            for r in 0..self.rows {
                if r != row && self.get(r, col) {
                    self.xor_row_into(row, r);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gf2Solution {
    Unique(Vec<bool>),
    /// A particular solution (free variables set to zero).
    Underdetermined {
        particular: Vec<bool>,
        free: usize,
    },
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Solve {
    pub rank: usize,
    pub solution: Gf2Solution,
    /// Unknowns that take the same value in every solution.
    pub determined: Vec<bool>,
}

/// Solves `a x = b` over GF(2) by Gaussian elimination.
pub fn gf2_solve(a: &BitMatrix, b: &[bool]) -> Result<Gf2Solve> {
    let mut all = gf2_solve_many(a, &[b.to_vec()])?;
    Ok(all.pop().expect("one right-hand side"))
}

/// Solves `a x = b` for several right-hand sides with a single elimination.
pub fn gf2_solve_many(a: &BitMatrix, rhs: &[Vec<bool>]) -> Result<Vec<Gf2Solve>> {
    if rhs.iter().any(|b| b.len() != a.rows) {
        return Err(Error::ParamMismatch(format!("right-hand side must have {} entries", a.rows)));
    }
    if rhs.is_empty() {
        return Ok(Vec::new());
    }
    let n = a.cols;
    let mut aug = BitMatrix::new(a.rows, n + rhs.len())?;
    for r in 0..a.rows {
        for c in 0..n {
            if a.get(r, c) {
                aug.set(r, c, true);
            }
        }
        for (k, b) in rhs.iter().enumerate() {
            aug.set(r, n + k, b[r]);
        }
    }
    let pivots = aug.reduce(n);
    let rank = pivots.len();
    let free = n - rank;
    let mut determined = vec![false; n];
    let is_pivot: Vec<bool> = (0..n).map(|c| pivots.contains(&c)).collect();
    for (row, &col) in pivots.iter().enumerate() {
        determined[col] = (0..n).all(|c| is_pivot[c] || !aug.get(row, c));
    }
    Ok((0..rhs.len())
        .map(|k| {
            if (rank..aug.rows).any(|r| aug.get(r, n + k)) {
                return Gf2Solve { rank, solution: Gf2Solution::Inconsistent, determined: determined.clone() };
            }
            let mut x = vec![false; n];
            for (row, &col) in pivots.iter().enumerate() {
                x[col] = aug.get(row, n + k);
            }
            let solution =
                if free == 0 { Gf2Solution::Unique(x) } else { Gf2Solution::Underdetermined { particular: x, free } };
            Gf2Solve { rank, solution, determined: determined.clone() }
        })
        .collect())
}

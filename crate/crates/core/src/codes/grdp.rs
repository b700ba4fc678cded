//! Generalized row-diagonal parity.
//!
//! The array is `p x (p + r - 1)` with an implicit all-zero row `p - 1`.
//! Columns `0..p-2` are data, column `p - 1` is the horizontal parity and
//! column `p - 1 + u` holds the parity of the slope-`u` lines taken over the
//! first `p` columns (horizontal parity included), `u = 1..r-1`. The line
//! through row `p - 1` of column 0 is not stored.
//!
//! Decoding solves the GF(2) system formed by the horizontal and slope
//! equations over the erased cells. The system depends only on which
//! columns are erased, so it is inverted once per pattern and then applied
//! lane-wide to every chunk.

use crate::codes::{BackendKind, CodeParams};
use crate::error::{Error, Result};
use crate::ring::{xor_into, RingElement, RingParams};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrdpParities {
    pub horizontal: RingElement,
    pub slopes: Vec<RingElement>,
}

fn grdp_ring(cp: &CodeParams) -> Result<RingParams> {
    match (cp.kind(), cp.ring()) {
        (BackendKind::Grdp, Some(rp)) => Ok(rp),
        _ => Err(Error::ParamMismatch(format!("{} is not a GRDP code", cp.kind()))),
    }
}

/// Slope-`u` parity column over the `p` columns (data plus horizontal parity).
fn slope_parity(rp: &RingParams, columns: &[RingElement], u: usize) -> RingElement {
    let p = rp.p();
    let mut line_sums = vec![0u8; p * rp.lane_bytes()];
    for (j, c) in columns.iter().enumerate() {
        xor_into(&mut line_sums, &rp.rotate_raw(c, u * j));
    }
    rp.from_column(&line_sums[..rp.column_bytes()]).expect("column length")
}

/// Horizontal parity and the `r - 1` slope parities of `p - 1` data columns.
pub fn encode_grdp(cp: &CodeParams, data: &[RingElement]) -> Result<GrdpParities> {
    let rp = grdp_ring(cp)?;
    let p = rp.p();
    if data.len() != p - 1 {
        return Err(Error::ParamMismatch(format!("GRDP takes {} data columns, got {}", p - 1, data.len())));
    }
    let mut horizontal = rp.zero();
    for c in data {
        rp.add_assign(&mut horizontal, c);
    }
    let mut columns = data.to_vec();
    columns.push(horizontal.clone());
    let slopes = (1..cp.r()).map(|u| slope_parity(&rp, &columns, u)).collect();
    Ok(GrdpParities { horizontal, slopes })
}

type BitRow = Vec<u64>;

fn bit(row: &BitRow, i: usize) -> bool {
    row[i / 64] >> (i % 64) & 1 == 1
}

fn flip(row: &mut BitRow, i: usize) {
    row[i / 64] ^= 1 << (i % 64);
}

/// One equation of the system: XOR of known cells (column, row), plus an
/// optional stored slope-parity cell (u, row), equals XOR of the unknowns.
#[derive(Clone, Debug, Default)]
struct Known {
    cells: Vec<(usize, usize)>,
    parity: Option<(usize, usize)>,
}

/// Prepared decoder for one erasure pattern.
#[derive(Clone, Debug)]
pub struct GrdpDecoder {
    rp: RingParams,
    r: usize,
    present: Vec<usize>,
    erased: Vec<usize>,
    known: Vec<Known>,
    /// `solution[x]` lists the equations whose right-hand sides sum to
    /// unknown `x`.
    solution: Vec<Vec<usize>>,
}

impl GrdpDecoder {
    /// `present` are the surviving distributed columns (from `1..p`).
    pub fn new(cp: &CodeParams, present: &[usize]) -> Result<Self> {
        let rp = grdp_ring(cp)?;
        let p = rp.p();
        let r = cp.r();
        let mut erased_nonsecret = cp.erased_nonsecret(present)?;
        let mut erased = vec![0];
        erased.append(&mut erased_nonsecret);
        let mut present = present.to_vec();
        present.sort_unstable();

        let rows = p - 1;
        let n = r * rows;
        let slot = |col: usize| erased.iter().position(|&e| e == col);
        let words = n.div_ceil(64);
        let mut matrix: Vec<BitRow> = Vec::with_capacity(n);
        let mut known = Vec::with_capacity(n);

        // horizontal: every row of the first p columns sums to zero
        for i in 0..rows {
            let mut row = vec![0u64; words];
            let mut k = Known::default();
            for j in 0..p {
                match slot(j) {
                    Some(s) => flip(&mut row, s * rows + i),
                    None => k.cells.push((j, i)),
                }
            }
            matrix.push(row);
            known.push(k);
        }
        // slope u, line i: sum_j a[<i - u j>][j] = P_u[i]
        for u in 1..r {
            for i in 0..rows {
                let mut row = vec![0u64; words];
                let mut k = Known { cells: Vec::new(), parity: Some((u - 1, i)) };
                for j in 0..p {
                    let cell = (i + p * p - (u * j) % p) % p;
                    if cell == p - 1 {
                        continue;
                    }
                    match slot(j) {
                        Some(s) => flip(&mut row, s * rows + cell),
                        None => k.cells.push((j, cell)),
                    }
                }
                matrix.push(row);
                known.push(k);
            }
        }

        let solution = invert(matrix, n).ok_or(Error::Unsolvable)?;
        Ok(GrdpDecoder { rp, r, present, erased, known, solution })
    }

    pub fn present(&self) -> &[usize] {
        &self.present
    }

    /// Erased columns in ascending order, column 0 first.
    pub fn erased(&self) -> &[usize] {
        &self.erased
    }

    /// Recovers every erased column. `columns` follow [`Self::present`].
    pub fn recover(&self, columns: &[RingElement], slopes: &[RingElement]) -> Result<Vec<RingElement>> {
        let rp = &self.rp;
        let w = rp.lane_bytes();
        let rows = rp.p() - 1;
        if columns.len() != self.present.len() || slopes.len() != self.r - 1 {
            return Err(Error::ParamMismatch("GRDP view does not match the decoder".into()));
        }
        let lookup = |col: usize| -> &RingElement {
            let idx = self.present.binary_search(&col).expect("known column is present");
            &columns[idx]
        };
        let mut rhs = vec![0u8; self.known.len() * w];
        for (e, k) in self.known.iter().enumerate() {
            let dst = &mut rhs[e * w..(e + 1) * w];
            for &(col, row) in &k.cells {
                xor_into(dst, rp.lane(lookup(col), row));
            }
            if let Some((u, row)) = k.parity {
                xor_into(dst, rp.lane(&slopes[u], row));
            }
        }
        let mut out = Vec::with_capacity(self.erased.len());
        for s in 0..self.erased.len() {
            let mut column = vec![0u8; rp.column_bytes()];
            for row in 0..rows {
                let dst = &mut column[row * w..(row + 1) * w];
                for &e in &self.solution[s * rows + row] {
                    xor_into(dst, &rhs[e * w..(e + 1) * w]);
                }
            }
            out.push(rp.from_column(&column)?);
        }
        Ok(out)
    }
}

/// Gauss-Jordan inverse of a square GF(2) matrix, returned as, for each
/// unknown, the list of equations to XOR. `None` if singular.
fn invert(mut a: Vec<BitRow>, n: usize) -> Option<Vec<Vec<usize>>> {
    let words = n.div_ceil(64);
    let mut inv: Vec<BitRow> = (0..n)
        .map(|i| {
            let mut row = vec![0u64; words];
            flip(&mut row, i);
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| bit(&a[r], col))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        for r in 0..n {
            if r != col && bit(&a[r], col) {
                let (src_a, src_i) = (a[col].clone(), inv[col].clone());
                for (d, s) in a[r].iter_mut().zip(&src_a) {
                    *d ^= s;
                }
                for (d, s) in inv[r].iter_mut().zip(&src_i) {
                    *d ^= s;
                }
            }
        }
    }
    Some(inv.iter().map(|row| (0..n).filter(|&e| bit(row, e)).collect()).collect())
}

/// Recovers all erased distributed columns (column 0, the secret, first)
/// from `p - r` surviving columns and the public slope parities.
pub fn grdp_recover(
    cp: &CodeParams,
    present: &[(usize, RingElement)],
    slopes: &[RingElement],
) -> Result<Vec<(usize, RingElement)>> {
    let mut view = present.to_vec();
    view.sort_by_key(|(i, _)| *i);
    let positions: Vec<usize> = view.iter().map(|(i, _)| *i).collect();
    let decoder = GrdpDecoder::new(cp, &positions)?;
    let columns: Vec<RingElement> = view.into_iter().map(|(_, c)| c).collect();
    let recovered = decoder.recover(&columns, slopes)?;
    Ok(decoder.erased().iter().copied().zip(recovered).collect())
}

//! Every backend's parity constraints written out bit by bit.
//!
//! A symbol is split into `cells`: the `m` coefficient bits of a field
//! element, or the `p - 1` stored lanes of an array column. For array codes
//! each bit of a lane is an independent plane with the same equations. The
//! equations are derived from the code definitions directly (shift-and-reduce
//! multiplication for the field, toroidal line sums for the arrays), not from
//! the encoders.

use std::collections::BTreeSet;

use crate::codes::{BackendKind, CodeBackend, CodeParams};
use crate::error::{Error, Result};
use crate::oracle::bitmatrix::{gf2_solve_many, BitMatrix, Gf2Solution, Gf2Solve};

/// XOR of the listed data cells (position, cell) and, if present, the
/// public parity cell (parity index, cell) is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub terms: BTreeSet<(usize, usize)>,
    pub parity: Option<(usize, usize)>,
}

impl Equation {
    fn new(parity: Option<(usize, usize)>) -> Self {
        Equation { terms: BTreeSet::new(), parity }
    }

    fn toggle(&mut self, pos: usize, cell: usize) {
        if !self.terms.remove(&(pos, cell)) {
            self.terms.insert((pos, cell));
        }
    }
}

/// Cells per symbol and bit-planes per cell.
pub fn symbol_shape(cp: &CodeParams) -> (usize, usize) {
    match cp.ring() {
        Some(rp) => (rp.p() - 1, 8 * rp.lane_bytes()),
        None => (cp.symbol_bits(), 1),
    }
}

pub fn cell_bit(cp: &CodeParams, symbol: &[u8], cell: usize, plane: usize) -> bool {
    match cp.ring() {
        Some(rp) => symbol[cell * rp.lane_bytes() + plane / 8] >> (plane % 8) & 1 == 1,
        None => symbol[cell / 8] >> (cell % 8) & 1 == 1,
    }
}

pub(crate) fn set_cell_bit(cp: &CodeParams, symbol: &mut [u8], cell: usize, plane: usize) {
    match cp.ring() {
        Some(rp) => symbol[cell * rp.lane_bytes() + plane / 8] |= 1 << (plane % 8),
        None => symbol[cell / 8] |= 1 << (cell % 8),
    }
}

/// Column `c` of "multiply by alpha^e": the bits of `alpha^e * x^c`.
fn alpha_pow_times_monomial(m: u32, poly: u32, e: usize, c: usize) -> u32 {
    let order = (1usize << m) - 1;
    let mut v: u32 = 1 << c;
    for _ in 0..e % order {
        v <<= 1;
        if v >> m & 1 == 1 {
            v ^= poly;
        }
    }
    v
}

pub fn equations(cp: &CodeParams) -> Vec<Equation> {
    let k = cp.k();
    let r = cp.r();
    let mut eqs = Vec::new();
    match cp.kind() {
        BackendKind::ReedSolomon => {
            let f = cp.field().expect("RS has a field");
            let (m, poly) = (f.m(), f.primitive_poly());
            for u in 0..r {
                let columns: Vec<Vec<u32>> = (0..k)
                    .map(|j| (0..m as usize).map(|c| alpha_pow_times_monomial(m, poly, u * j, c)).collect())
                    .collect();
                for b in 0..m as usize {
                    let mut eq = Equation::new(Some((u, b)));
                    for (j, cols) in columns.iter().enumerate() {
                        for (c, v) in cols.iter().enumerate() {
                            if v >> b & 1 == 1 {
                                eq.toggle(j, c);
                            }
                        }
                    }
                    eqs.push(eq);
                }
            }
        }
        BackendKind::EvenOdd => {
            // line i of slope u, XOR the special line through the zero cell
            // of column 0, equals parity cell i
            let p = cp.ring().expect("ring").p();
            for u in 0..r {
                for i in 0..p - 1 {
                    let mut eq = Equation::new(Some((u, i)));
                    for j in 0..k {
                        for start in [i, p - 1] {
                            let cell = (start + p - (u * j) % p) % p;
                            if cell != p - 1 {
                                eq.toggle(j, cell);
                            }
                        }
                    }
                    eqs.push(eq);
                }
            }
        }
        BackendKind::Grdp => {
            let p = cp.ring().expect("ring").p();
            for i in 0..p - 1 {
                let mut eq = Equation::new(None);
                for j in 0..p {
                    eq.toggle(j, i);
                }
                eqs.push(eq);
            }
            for u in 1..r {
                for i in 0..p - 1 {
                    let mut eq = Equation::new(Some((u - 1, i)));
                    for j in 0..p {
                        let cell = (i + p - (u * j) % p) % p;
                        if cell != p - 1 {
                            eq.toggle(j, cell);
                        }
                    }
                    eqs.push(eq);
                }
            }
        }
    }
    eqs
}

fn check_positions(cp: &CodeParams, positions: &[usize]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for &i in positions {
        if i >= cp.k() {
            return Err(Error::OutOfRange { position: i, limit: cp.k() });
        }
        if !seen.insert(i) {
            return Err(Error::DuplicatePosition(i));
        }
    }
    Ok(())
}

fn system_matrix(cp: &CodeParams, eqs: &[Equation], erased: &[usize]) -> Result<BitMatrix> {
    let (cells, _) = symbol_shape(cp);
    let mut a = BitMatrix::new(eqs.len(), erased.len() * cells)?;
    for (row, eq) in eqs.iter().enumerate() {
        for &(pos, cell) in &eq.terms {
            if let Some(slot) = erased.iter().position(|&e| e == pos) {
                a.flip(row, slot * cells + cell);
            }
        }
    }
    Ok(a)
}

struct ViewSolve {
    cells: usize,
    unknowns: usize,
    solves: Vec<Gf2Solve>,
}

fn solve_view(
    cp: &CodeParams,
    present: &[(usize, Vec<u8>)],
    parities: &[Vec<u8>],
    erased: &[usize],
) -> Result<ViewSolve> {
    let mut all: Vec<usize> = present.iter().map(|(i, _)| *i).collect();
    all.extend_from_slice(erased);
    check_positions(cp, &all)?;
    if all.len() != cp.k() {
        return Err(Error::ParamMismatch("present and erased must cover every data position".into()));
    }
    if parities.len() != cp.public_parity_count() {
        return Err(Error::ParamMismatch(format!(
            "expected {} parities, got {}",
            cp.public_parity_count(),
            parities.len()
        )));
    }
    let sb = cp.symbol_bytes();
    for s in present.iter().map(|(_, s)| s).chain(parities) {
        if s.len() != sb {
            return Err(Error::WrongLength { expected: sb, actual: s.len() });
        }
    }
    let (cells, planes) = symbol_shape(cp);
    let eqs = equations(cp);
    let a = system_matrix(cp, &eqs, erased)?;

    let known = |pos: usize| present.iter().find(|(i, _)| *i == pos).map(|(_, s)| s.as_slice());
    let rhs: Vec<Vec<bool>> = (0..planes)
        .map(|plane| {
            eqs.iter()
                .map(|eq| {
                    let mut bit = eq.parity.is_some_and(|(u, c)| cell_bit(cp, &parities[u], c, plane));
                    for &(pos, cell) in &eq.terms {
                        if let Some(sym) = known(pos) {
                            bit ^= cell_bit(cp, sym, cell, plane);
                        }
                    }
                    bit
                })
                .collect()
        })
        .collect();
    Ok(ViewSolve { cells, unknowns: erased.len() * cells, solves: gf2_solve_many(&a, &rhs)? })
}

/// Solves for all `erased` data symbols from the present ones and the public
/// parities by GF(2) elimination. Symbols are in wire format.
pub fn oracle_decode(
    cp: &CodeParams,
    present: &[(usize, Vec<u8>)],
    parities: &[Vec<u8>],
    erased: &[usize],
) -> Result<Vec<(usize, Vec<u8>)>> {
    let v = solve_view(cp, present, parities, erased)?;
    let mut out: Vec<(usize, Vec<u8>)> = erased.iter().map(|&e| (e, vec![0u8; cp.symbol_bytes()])).collect();
    for (plane, solved) in v.solves.into_iter().enumerate() {
        let x = match solved.solution {
            Gf2Solution::Unique(x) => x,
            Gf2Solution::Underdetermined { .. } => {
                return Err(Error::NotUnique { rank: solved.rank, unknowns: v.unknowns });
            }
            Gf2Solution::Inconsistent => return Err(Error::Inconsistent),
        };
        for (slot, (_, sym)) in out.iter_mut().enumerate() {
            for cell in 0..v.cells {
                if x[slot * v.cells + cell] {
                    set_cell_bit(cp, sym, cell, plane);
                }
            }
        }
    }
    Ok(out)
}

/// Like [`oracle_decode`] but only asks for one erased symbol, which may be
/// pinned down by the view even when the others are not.
pub fn oracle_decode_one(
    cp: &CodeParams,
    present: &[(usize, Vec<u8>)],
    parities: &[Vec<u8>],
    erased: &[usize],
    target: usize,
) -> Result<Vec<u8>> {
    let slot = erased
        .iter()
        .position(|&e| e == target)
        .ok_or_else(|| Error::ParamMismatch(format!("position {target} is not erased")))?;
    let v = solve_view(cp, present, parities, erased)?;
    let mut out = vec![0u8; cp.symbol_bytes()];
    for (plane, solved) in v.solves.into_iter().enumerate() {
        let range = slot * v.cells..(slot + 1) * v.cells;
        if !solved.determined[range.clone()].iter().all(|&d| d) {
            return Err(Error::NotUnique { rank: solved.rank, unknowns: v.unknowns });
        }
        let x = match solved.solution {
            Gf2Solution::Unique(x) | Gf2Solution::Underdetermined { particular: x, .. } => x,
            Gf2Solution::Inconsistent => return Err(Error::Inconsistent),
        };
        for (cell, &bit) in x[range].iter().enumerate() {
            if bit {
                set_cell_bit(cp, &mut out, cell, plane);
            }
        }
    }
    Ok(out)
}

/// Whether the columns of the parity-check matrix at `erased` (expanded to
/// GF(2)) are linearly independent, i.e. the erasures are correctable.
pub fn mds_submatrix_check(cp: &CodeParams, erased: &[usize]) -> Result<bool> {
    check_positions(cp, erased)?;
    if erased.len() != cp.r() {
        return Err(Error::ParamMismatch(format!("expected {} erased positions, got {}", cp.r(), erased.len())));
    }
    let (cells, _) = symbol_shape(cp);
    let a = system_matrix(cp, &equations(cp), erased)?;
    Ok(a.rank() == erased.len() * cells)
}

/// The map from the `k` data symbols to the `r` parity-check values, read off
/// the equations: row = (u, cell), column = (position, cell). Single plane.
pub fn parity_check_map(cp: &CodeParams) -> Result<BitMatrix> {
    let (cells, _) = symbol_shape(cp);
    let eqs = equations(cp);
    let mut m = BitMatrix::new(eqs.len(), cp.k() * cells)?;
    for (row, eq) in eqs.iter().enumerate() {
        for &(pos, cell) in &eq.terms {
            m.flip(row, pos * cells + cell);
        }
    }
    Ok(m)
}

/// The same map measured by probing an encoder with unit inputs: the parity
/// cells produced (GRDP: horizontal parity share first, then the slope
/// parities) for each single set data cell, plane 0 only.
pub fn extract_encoder_map(backend: &dyn CodeBackend) -> Result<BitMatrix> {
    let cp = backend.params().clone();
    let (cells, _) = symbol_shape(&cp);
    let sb = cp.symbol_bytes();
    let inputs = match cp.kind() {
        BackendKind::Grdp => cp.k() - 1,
        _ => cp.k(),
    };
    let parity_syms = match cp.kind() {
        BackendKind::Grdp => 1 + cp.public_parity_count(),
        _ => cp.public_parity_count(),
    };
    let first_parity = backend.participants() + backend.public_parity_count() - parity_syms;
    let mut m = BitMatrix::new(parity_syms * cells, inputs * cells)?;
    let random_len = backend.random_symbols() * sb;
    let mut out = vec![0u8; (backend.participants() + backend.public_parity_count()) * sb];
    for pos in 0..inputs {
        for cell in 0..cells {
            let mut data = vec![0u8; (1 + backend.random_symbols()) * sb];
            set_cell_bit(&cp, &mut data[pos * sb..(pos + 1) * sb], cell, 0);
            backend.encode(&data[..sb], &data[sb..sb + random_len], &mut out)?;
            for ps in 0..parity_syms {
                let sym = &out[(first_parity + ps) * sb..(first_parity + ps + 1) * sb];
                for c in 0..cells {
                    if cell_bit(&cp, sym, c, 0) {
                        m.set(ps * cells + c, pos * cells + cell, true);
                    }
                }
            }
        }
    }
    Ok(m)
}

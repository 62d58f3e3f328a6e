//! Exact rational matrices: rank, image bases, products, traces, and exact
//! linear solves. Everything is arbitrary-precision rational arithmetic;
//! there is no rounding anywhere in this crate.
//!
//! Elimination is plain Gauss–Jordan over reduced rationals with a fixed
//! pivot rule (first nonzero entry scanning columns left-to-right, rows
//! top-to-bottom), so identical inputs always produce the identical pivot
//! sequence and the identical image basis. The matrices this library feeds
//! in are block-structured (projections act orbit by orbit, boundaries are
//! a few entries per column), so zero-skipping row operations keep fill-in
//! confined and fast; entries stay small because every row is renormalized
//! to a unit pivot instead of accumulating cleared denominators.

use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(i: i64) -> Rat {
    Rat::from_integer(i.into())
}

/// Rational n/d (d must be nonzero).
pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            *m.get_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::input("ragged rows in matrix literal"));
        }
        Ok(RationalMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Exact product, skipping zero entries on both sides.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::input(format!(
                "dimension mismatch in product: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let bkj = other.get(k, j);
                    if !bkj.is_zero() {
                        *out.get_mut(i, j) += aik * bkj;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::input(format!(
                "trace of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut t = Rat::zero();
        for i in 0..self.rows {
            t += self.get(i, i);
        }
        Ok(t)
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut work = self.to_row_vecs();
        rref_in_place(&mut work, self.cols).len()
    }

    /// Basis of the column space: the pivot columns of this matrix, in
    /// elimination order. Column count equals the rank.
    pub fn image_basis(&self) -> Self {
        self.rank_and_image().1
    }

    /// Rank and image basis from a single elimination.
    pub fn rank_and_image(&self) -> (usize, Self) {
        let mut work = self.to_row_vecs();
        let pivots = rref_in_place(&mut work, self.cols);
        let mut out = Self::zeros(self.rows, pivots.len());
        for (j, &c) in pivots.iter().enumerate() {
            for r in 0..self.rows {
                *out.get_mut(r, j) = self.get(r, c).clone();
            }
        }
        (pivots.len(), out)
    }

    /// Solve V·R = W for R exactly, where V is `self`. Returns an
    /// invariant violation if any column of W lies outside the column
    /// space of V. Non-pivot columns of V receive zero rows in R.
    pub fn solve_right(&self, w: &Self) -> Result<Self> {
        if self.rows != w.rows {
            return Err(Error::input(format!(
                "row mismatch in solve: {} vs {}",
                self.rows, w.rows
            )));
        }
        let vc = self.cols;
        let wc = w.cols;
        let mut aug: Vec<Vec<Rat>> = (0..self.rows)
            .map(|r| {
                let mut row = Vec::with_capacity(vc + wc);
                row.extend((0..vc).map(|c| self.get(r, c).clone()));
                row.extend((0..wc).map(|c| w.get(r, c).clone()));
                row
            })
            .collect();
        let pivots = rref_in_place(&mut aug, vc + wc);
        let mut out = Self::zeros(vc, wc);
        for (ri, &p) in pivots.iter().enumerate() {
            if p >= vc {
                return Err(Error::invariant(
                    "solve_right: right-hand side outside the column space",
                ));
            }
            for j in 0..wc {
                *out.get_mut(p, j) = aug[ri][vc + j].clone();
            }
        }
        // Rows below the pivot count have an all-zero V part; any residue
        // in the W part means the system is inconsistent.
        for row in aug.iter().skip(pivots.len()) {
            if row[vc..].iter().any(|x| !x.is_zero()) {
                return Err(Error::invariant(
                    "solve_right: right-hand side outside the column space",
                ));
            }
        }
        Ok(out)
    }

    fn to_row_vecs(&self) -> Vec<Vec<Rat>> {
        self.data.chunks(self.cols.max(1)).map(|c| c.to_vec()).collect()
    }
}

/// Gauss–Jordan elimination in place. Returns the pivot column indices in
/// elimination order (ascending). Deterministic by construction.
fn rref_in_place(rows: &mut [Vec<Rat>], cols: usize) -> Vec<usize> {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut pr = 0usize;
    for c in 0..cols {
        if pr >= nrows {
            break;
        }
        let Some(sel) = (pr..nrows).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(pr, sel);
        let pivot = rows[pr][c].clone();
        if !pivot.is_one() {
            let inv = pivot.recip();
            for x in rows[pr][c..].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let prow = rows[pr].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pr || row[c].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut row[c], Rat::zero());
            for (k, pv) in prow.iter().enumerate().skip(c + 1) {
                if !pv.is_zero() {
                    row[k] -= &factor * pv;
                }
            }
        }
        pivots.push(c);
        pr += 1;
    }
    pivots
}

/// Column-sparse integer matrix for boundary maps: entries are tiny
/// integers (±1 here) and columns hold only a handful of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    by_col: Vec<Vec<(u32, i32)>>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            by_col: vec![Vec::new(); cols],
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    /// Accumulate `value` onto entry (r, c); entries that cancel to zero
    /// are dropped.
    pub fn add_entry(&mut self, r: usize, c: usize, value: i32) {
        assert!(r < self.rows && c < self.cols, "sparse entry out of range");
        let col = &mut self.by_col[c];
        match col.binary_search_by_key(&(r as u32), |&(row, _)| row) {
            Ok(pos) => {
                col[pos].1 += value;
                if col[pos].1 == 0 {
                    col.remove(pos);
                }
            }
            Err(pos) => col.insert(pos, (r as u32, value)),
        }
    }

    pub fn col(&self, c: usize) -> &[(u32, i32)] {
        &self.by_col[c]
    }

    pub fn nnz(&self) -> usize {
        self.by_col.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    /// Does self · other vanish identically? Computed column by column in
    /// integer arithmetic without materializing the product.
    pub fn compose_is_zero(&self, other: &Self) -> bool {
        assert_eq!(self.cols, other.rows, "dimension mismatch in compose");
        let mut acc: Vec<i64> = vec![0; self.rows];
        let mut touched: Vec<u32> = Vec::new();
        for j in 0..other.cols {
            for &(k, v) in other.col(j) {
                for &(i, w) in self.col(k as usize) {
                    if acc[i as usize] == 0 {
                        touched.push(i);
                    }
                    acc[i as usize] += v as i64 * w as i64;
                }
            }
            let mut ok = true;
            for &i in &touched {
                if acc[i as usize] != 0 {
                    ok = false;
                }
                acc[i as usize] = 0;
            }
            touched.clear();
            if !ok {
                return false;
            }
        }
        true
    }

    pub fn to_rational(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.rows, self.cols);
        for c in 0..self.cols {
            for &(r, v) in self.col(c) {
                *m.get_mut(r as usize, c) = rat(v as i64);
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.to_rational().rank()
    }

    /// self · dense, exact.
    pub fn mul_dense(&self, d: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != d.nrows() {
            return Err(Error::input(format!(
                "dimension mismatch in product: {}x{} times {}x{}",
                self.rows,
                self.cols,
                d.nrows(),
                d.ncols()
            )));
        }
        let mut out = RationalMatrix::zeros(self.rows, d.ncols());
        for k in 0..self.cols {
            for &(i, v) in self.col(k) {
                let v = rat(v as i64);
                for j in 0..d.ncols() {
                    let dkj = d.get(k, j);
                    if !dkj.is_zero() {
                        *out.get_mut(i as usize, j) += &v * dkj;
                    }
                }
            }
        }
        Ok(out)
    }

    /// dense · self, exact.
    pub fn rmul_dense(&self, d: &RationalMatrix) -> Result<RationalMatrix> {
        if d.ncols() != self.rows {
            return Err(Error::input(format!(
                "dimension mismatch in product: {}x{} times {}x{}",
                d.nrows(),
                d.ncols(),
                self.rows,
                self.cols
            )));
        }
        let mut out = RationalMatrix::zeros(d.nrows(), self.cols);
        for j in 0..self.cols {
            for &(k, v) in self.col(j) {
                let v = rat(v as i64);
                for i in 0..d.nrows() {
                    let dik = d.get(i, k as usize);
                    if !dik.is_zero() {
                        *out.get_mut(i, j) += dik * &v;
                    }
                }
            }
        }
        Ok(out)
    }
}

/// A rational trace that must be a nonnegative integer (idempotent traces,
/// dimension counts). Errors as an invariant violation otherwise.
pub fn trace_as_dimension(t: &Rat) -> Result<usize> {
    use num_traits::ToPrimitive;
    if !t.is_integer() || t.is_negative() {
        return Err(Error::invariant(format!(
            "expected a nonnegative integer trace, got {t}"
        )));
    }
    t.to_integer()
        .to_usize()
        .ok_or_else(|| Error::invariant(format!("trace {t} out of usize range")))
}

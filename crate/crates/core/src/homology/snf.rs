//! Smith normal form of sparse integer matrices.
//!
//! The elimination pivots on a smallest-magnitude nonzero entry (ties broken
//! by Markowitz fill-in cost, then by column and row index), clears its row
//! with column operations and its column with row operations, and repeats
//! with a smaller pivot whenever a Euclidean remainder survives. The pivots
//! are then permuted onto the diagonal and the divisibility chain is restored
//! with 2x2 unimodular gcd steps. Row and column transforms are tracked
//! together with their inverses, so `U⁻¹` and `V⁻¹` never need a separate
//! inversion.

use std::collections::BTreeSet;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::matrix::{Integer, IntegerMatrix, SparseVec};
use crate::{Error, Result};

/// A unimodular transform kept together with its inverse.
///
/// For a row transform `U`, `fwd[i]` is row `i` of `U` and `inv[i]` is
/// column `i` of `U⁻¹`. For a column transform `V`, `fwd[j]` is column `j`
/// of `V` and `inv[j]` is row `j` of `V⁻¹`. With that convention both kinds
/// update identically.
#[derive(Clone, Debug)]
pub struct Transform {
    fwd: Vec<SparseVec>,
    inv: Vec<SparseVec>,
}

impl Transform {
    fn identity(size: usize) -> Self {
        let unit: Vec<SparseVec> = (0..size).map(SparseVec::unit).collect();
        Self { fwd: unit.clone(), inv: unit }
    }

    pub fn size(&self) -> usize {
        self.fwd.len()
    }

    /// `fwd[target] += c * fwd[source]`, with the matching inverse update.
    fn add_multiple(&mut self, target: usize, source: usize, c: &Integer) {
        let (t, s) = pair_mut(&mut self.fwd, target, source);
        t.axpy(c, s);
        let (s, t) = pair_mut(&mut self.inv, source, target);
        s.axpy(&-c, t);
    }

    /// Applies the unimodular block `[[a, b], [c, d]]` to slots `(i, j)`.
    fn combine(&mut self, i: usize, j: usize, [a, b, c, d]: [&Integer; 4]) {
        debug_assert!((a * d - b * c).is_one());
        let mix = |x: &SparseVec, y: &SparseVec, p: &Integer, q: &Integer| {
            let mut out = x.clone();
            out.scale(p);
            out.axpy(q, y);
            out
        };
        let (fi, fj) = (&self.fwd[i], &self.fwd[j]);
        let (new_i, new_j) = (mix(fi, fj, a, b), mix(fi, fj, c, d));
        self.fwd[i] = new_i;
        self.fwd[j] = new_j;
        let (ii, ij) = (&self.inv[i], &self.inv[j]);
        let (new_i, new_j) = (mix(ii, ij, d, &-c), mix(ii, ij, &-b, a));
        self.inv[i] = new_i;
        self.inv[j] = new_j;
    }

    fn negate(&mut self, i: usize) {
        self.fwd[i].negate();
        self.inv[i].negate();
    }

    /// New slot `t` holds old slot `order[t]`.
    fn permute(&mut self, order: &[usize]) {
        self.fwd = order.iter().map(|&k| std::mem::take(&mut self.fwd[k])).collect();
        self.inv = order.iter().map(|&k| std::mem::take(&mut self.inv[k])).collect();
    }

    pub fn forward(&self) -> &[SparseVec] {
        &self.fwd
    }

    pub fn inverse(&self) -> &[SparseVec] {
        &self.inv
    }
}

fn pair_mut<T>(v: &mut [T], a: usize, b: usize) -> (&mut T, &T) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&mut lo[a], &hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&mut hi[0], &lo[b])
    }
}

/// Which transforms to track during elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SnfOptions {
    pub track_rows: bool,
    pub track_cols: bool,
}

impl SnfOptions {
    pub const FULL: Self = Self { track_rows: true, track_cols: true };
    pub const RANK_ONLY: Self = Self { track_rows: false, track_cols: false };
    pub const ROWS: Self = Self { track_rows: true, track_cols: false };
    pub const COLS: Self = Self { track_rows: false, track_cols: true };
}

/// `S = U · M · V` with `S` diagonal, positive invariant factors
/// `d_1 | d_2 | ... | d_r`, and `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct SnfResult {
    rows: usize,
    cols: usize,
    invariants: Vec<Integer>,
    left: Option<Transform>,
    right: Option<Transform>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// Nonzero diagonal entries of `S`, in order.
    pub fn invariants(&self) -> &[Integer] {
        &self.invariants
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<Integer> {
        self.invariants.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn s(&self) -> IntegerMatrix {
        IntegerMatrix::diagonal(self.rows, self.cols, &self.invariants)
    }

    pub fn left(&self) -> Option<&Transform> {
        self.left.as_ref()
    }

    pub fn right(&self) -> Option<&Transform> {
        self.right.as_ref()
    }

    pub fn u(&self) -> Option<IntegerMatrix> {
        self.left.as_ref().map(|t| IntegerMatrix::from_rows(self.rows, &t.fwd).expect("square"))
    }

    pub fn u_inv(&self) -> Option<IntegerMatrix> {
        self.left.as_ref().map(|t| IntegerMatrix::from_columns(self.rows, t.inv.clone()).expect("square"))
    }

    pub fn v(&self) -> Option<IntegerMatrix> {
        self.right.as_ref().map(|t| IntegerMatrix::from_columns(self.cols, t.fwd.clone()).expect("square"))
    }

    pub fn v_inv(&self) -> Option<IntegerMatrix> {
        self.right.as_ref().map(|t| IntegerMatrix::from_rows(self.cols, &t.inv).expect("square"))
    }

    /// Re-verifies every postcondition by exact multiplication: the shape of
    /// `S`, the divisibility chain, `U·U⁻¹ = I`, `V·V⁻¹ = I` (so both are
    /// unimodular), and `U·M·V = S` when both transforms are tracked.
    pub fn verify(&self, m: &IntegerMatrix) -> Result<()> {
        let fail = |what: &str| Err(Error::Internal(format!("Smith normal form check failed: {what}")));
        if (m.rows(), m.cols()) != (self.rows, self.cols) {
            return fail("shape");
        }
        if self.invariants.iter().any(|d| !d.is_positive()) {
            return fail("non-positive invariant factor");
        }
        if self.invariants.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return fail("divisibility chain");
        }
        let (u, ui, v, vi) = (self.u(), self.u_inv(), self.v(), self.v_inv());
        if let (Some(u), Some(ui)) = (&u, &ui) {
            if u.mul(ui)? != IntegerMatrix::identity(self.rows) {
                return fail("U * U^-1 != I");
            }
        }
        if let (Some(v), Some(vi)) = (&v, &vi) {
            if v.mul(vi)? != IntegerMatrix::identity(self.cols) {
                return fail("V * V^-1 != I");
            }
        }
        match (&u, &v) {
            (Some(u), Some(v)) => {
                if u.mul(m)?.mul(v)? != self.s() {
                    return fail("U * M * V != S");
                }
            }
            (None, Some(v)) => {
                // M·V must vanish beyond the rank.
                let mv = m.mul(v)?;
                if !mv.column_block(self.rank()..self.cols).is_zero() {
                    return fail("M * V has nonzero columns beyond the rank");
                }
            }
            (Some(u), None) => {
                let um = u.mul(m)?;
                if !um.row_block(self.rank()..self.rows).is_zero() {
                    return fail("U * M has nonzero rows beyond the rank");
                }
            }
            (None, None) => {}
        }
        Ok(())
    }
}

/// Full factorization with both transforms, re-verified before returning.
pub fn smith_normal_form(m: &IntegerMatrix) -> Result<SnfResult> {
    let snf = smith_normal_form_with(m, SnfOptions::FULL);
    snf.verify(m)?;
    Ok(snf)
}

pub fn smith_normal_form_with(m: &IntegerMatrix, options: SnfOptions) -> SnfResult {
    Elimination::new(m, options).run()
}

struct Elimination {
    rows: usize,
    cols: Vec<SparseVec>,
    /// Active columns holding a nonzero in each row.
    row_index: Vec<BTreeSet<usize>>,
    active: Vec<bool>,
    left: Option<Transform>,
    right: Option<Transform>,
}

impl Elimination {
    fn new(m: &IntegerMatrix, options: SnfOptions) -> Self {
        let rows = m.rows();
        let cols = m.columns().to_vec();
        let mut row_index = vec![BTreeSet::new(); rows];
        for (j, c) in cols.iter().enumerate() {
            for i in c.indices() {
                row_index[i].insert(j);
            }
        }
        Self {
            rows,
            active: vec![true; cols.len()],
            left: options.track_rows.then(|| Transform::identity(rows)),
            right: options.track_cols.then(|| Transform::identity(cols.len())),
            cols,
            row_index,
        }
    }

    fn entry(&self, i: usize, j: usize) -> Integer {
        self.cols[j].get(i).cloned().unwrap_or_default()
    }

    /// `col[target] += c * col[source]`, keeping the row index current.
    fn column_op(&mut self, target: usize, source: usize, c: &Integer) {
        for i in self.cols[target].indices() {
            self.row_index[i].remove(&target);
        }
        let (t, s) = pair_mut(&mut self.cols, target, source);
        t.axpy(c, s);
        for i in self.cols[target].indices() {
            self.row_index[i].insert(target);
        }
        if let Some(right) = &mut self.right {
            right.add_multiple(target, source, c);
        }
    }

    /// `row[target] += c * row[source]` where row `source` is known to hold
    /// a single active entry, in column `col`.
    fn row_op_single(&mut self, target: usize, source: usize, col: usize, c: &Integer) {
        let new = self.entry(target, col) + c * self.entry(source, col);
        if new.is_zero() {
            self.row_index[target].remove(&col);
        } else {
            self.row_index[target].insert(col);
        }
        self.cols[col].set(target, new);
        if let Some(left) = &mut self.left {
            left.add_multiple(target, source, c);
        }
    }

    fn choose_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(Integer, usize, usize, usize)> = None;
        for (j, col) in self.cols.iter().enumerate() {
            if !self.active[j] || col.is_zero() {
                continue;
            }
            let col_cost = col.nnz() - 1;
            for (i, v) in col.entries() {
                let mag = v.abs();
                let cost = (self.row_index[*i].len() - 1) * col_cost;
                let better = match &best {
                    None => true,
                    Some((m, c, _, _)) => mag < *m || (mag == *m && cost < *c),
                };
                if better {
                    let done = mag.is_one() && cost == 0;
                    best = Some((mag, cost, *i, j));
                    if done {
                        return Some((*i, j));
                    }
                }
            }
        }
        best.map(|(_, _, i, j)| (i, j))
    }

    /// Reduces around `(r, c)` until row `r` and column `c` hold only the
    /// pivot; returns the final pivot position.
    fn eliminate(&mut self, mut r: usize, mut c: usize) -> (usize, usize) {
        loop {
            let p = self.entry(r, c);
            let others: Vec<usize> = self.row_index[r].iter().copied().filter(|&j| j != c).collect();
            for &j in &others {
                let q = self.entry(r, j) / &p;
                if !q.is_zero() {
                    self.column_op(j, c, &-q);
                }
            }
            if let Some(j) = self.smallest_in_row(r, c) {
                c = j;
                continue;
            }
            let below: Vec<usize> = self.cols[c].indices().filter(|&i| i != r).collect();
            for &i in &below {
                let q = self.entry(i, c) / &p;
                if !q.is_zero() {
                    self.row_op_single(i, r, c, &-q);
                }
            }
            if let Some(i) = self.smallest_in_col(c, r) {
                r = i;
                continue;
            }
            return (r, c);
        }
    }

    fn smallest_in_row(&self, r: usize, skip: usize) -> Option<usize> {
        self.row_index[r].iter().copied().filter(|&j| j != skip).min_by_key(|&j| (self.entry(r, j).abs(), j))
    }

    fn smallest_in_col(&self, c: usize, skip: usize) -> Option<usize> {
        self.cols[c].entries().iter().filter(|(i, _)| *i != skip).min_by_key(|(i, v)| (v.abs(), *i)).map(|(i, _)| *i)
    }

    fn run(mut self) -> SnfResult {
        let ncols = self.cols.len();
        let mut pivots = Vec::new();
        while let Some((r, c)) = self.choose_pivot() {
            let (r, c) = self.eliminate(r, c);
            self.active[c] = false;
            self.row_index[r].remove(&c);
            debug_assert!(self.row_index[r].is_empty());
            pivots.push((r, c, self.entry(r, c)));
        }

        let row_order = completion(pivots.iter().map(|p| p.0), self.rows);
        let col_order = completion(pivots.iter().map(|p| p.1), ncols);
        if let Some(left) = &mut self.left {
            left.permute(&row_order);
        }
        if let Some(right) = &mut self.right {
            right.permute(&col_order);
        }

        let mut diag: Vec<Integer> = pivots.into_iter().map(|p| p.2).collect();
        for (t, d) in diag.iter_mut().enumerate() {
            if d.is_negative() {
                *d = -std::mem::take(d);
                if let Some(left) = &mut self.left {
                    left.negate(t);
                }
            }
        }
        for t in 0..diag.len() {
            for s in t + 1..diag.len() {
                if !diag[s].is_multiple_of(&diag[t]) {
                    self.gcd_step(&mut diag, t, s);
                }
            }
        }
        SnfResult { rows: self.rows, cols: ncols, invariants: diag, left: self.left, right: self.right }
    }

    /// Replaces `diag(a, b)` at positions `(t, s)` by `diag(g, ab/g)`.
    fn gcd_step(&mut self, diag: &mut [Integer], t: usize, s: usize) {
        let (a, b) = (diag[t].clone(), diag[s].clone());
        let e = a.extended_gcd(&b);
        let (g, x, y) = (e.gcd, e.x, e.y);
        let (a_g, b_g) = (&a / &g, &b / &g);
        if let Some(left) = &mut self.left {
            left.combine(t, s, [&x, &y, &-&b_g, &a_g]);
        }
        if let Some(right) = &mut self.right {
            right.combine(t, s, [&Integer::one(), &Integer::one(), &-(&y * &b_g), &(&x * &a_g)]);
        }
        diag[s] = &a * &b_g;
        diag[t] = g;
    }
}

/// `first` (in order) followed by the remaining indices below `len`.
fn completion(first: impl Iterator<Item = usize>, len: usize) -> Vec<usize> {
    let mut seen = vec![false; len];
    let mut order: Vec<usize> = first.inspect(|&k| seen[k] = true).collect();
    order.extend((0..len).filter(|&k| !seen[k]));
    order
}

//! Sparse matrices over arbitrary-precision integers.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Integer = BigInt;

/// Sparse integer vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, Integer)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(index: usize) -> Self {
        Self { entries: vec![(index, Integer::one())] }
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, Integer)>) -> Self {
        pairs.sort_by_key(|&(i, _)| i);
        let mut entries: Vec<(usize, Integer)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        Self { entries }
    }

    pub fn from_dense(values: &[i64]) -> Self {
        Self {
            entries: values.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i, Integer::from(v))).collect(),
        }
    }

    pub fn entries(&self) -> &[(usize, Integer)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&Integer> {
        self.entries.binary_search_by_key(&index, |&(i, _)| i).ok().map(|pos| &self.entries[pos].1)
    }

    pub fn set(&mut self, index: usize, value: Integer) {
        match self.entries.binary_search_by_key(&index, |&(i, _)| i) {
            Ok(pos) if value.is_zero() => {
                self.entries.remove(pos);
            }
            Ok(pos) => self.entries[pos].1 = value,
            Err(_) if value.is_zero() => {}
            Err(pos) => self.entries.insert(pos, (index, value)),
        }
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|&(i, _)| i)
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &Integer, other: &SparseVec) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut merged = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut lhs = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut rhs = other.entries.iter().peekable();
        loop {
            match (lhs.peek(), rhs.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => merged.push(lhs.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, v) = rhs.next().unwrap();
                    merged.push((*j, c * v));
                }
                (Some(_), Some(_)) => {
                    let (i, mut v) = lhs.next().unwrap();
                    let (_, w) = rhs.next().unwrap();
                    v += c * w;
                    if !v.is_zero() {
                        merged.push((i, v));
                    }
                }
                (Some(_), None) => merged.push(lhs.next().unwrap()),
                (None, Some(_)) => {
                    let (j, v) = rhs.next().unwrap();
                    merged.push((*j, c * v));
                }
                (None, None) => break,
            }
        }
        self.entries = merged;
    }

    pub fn scale(&mut self, c: &Integer) {
        if c.is_zero() {
            self.entries.clear();
        } else {
            for (_, v) in &mut self.entries {
                *v *= c;
            }
        }
    }

    pub fn negate(&mut self) {
        for (_, v) in &mut self.entries {
            *v = -std::mem::take(v);
        }
    }

    pub fn dot(&self, other: &SparseVec) -> Integer {
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        let mut acc = Integer::zero();
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            match i.cmp(j) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => {
                    acc += x * y;
                    a.next();
                    b.next();
                }
            }
        }
        acc
    }

    /// Keeps entries with index in `range`, shifted down to start at zero.
    pub fn slice(&self, range: std::ops::Range<usize>) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| range.contains(i))
                .map(|(i, v)| (i - range.start, v.clone()))
                .collect(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|&(i, _)| i)
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(i, v)| (i, v.to_string()))).finish()
    }
}

/// Integer matrix stored as sparse columns.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols: vec![SparseVec::new(); cols] }
    }

    pub fn identity(size: usize) -> Self {
        Self { rows: size, cols: (0..size).map(SparseVec::unit).collect() }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Result<Self> {
        if let Some(c) = cols.iter().position(|c| c.max_index().is_some_and(|i| i >= rows)) {
            return Err(Error::Shape(format!("column {c} has an entry beyond row {rows}")));
        }
        Ok(Self { rows, cols })
    }

    /// The matrix whose `i`-th row is `rows[i]`.
    pub fn from_rows(cols: usize, rows: &[SparseVec]) -> Result<Self> {
        Ok(Self::from_columns(cols, rows.to_vec())?.transpose())
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.cols[j].set(i, Integer::from(v));
                }
            }
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[Integer]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m.cols[i].set(i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<SparseVec> {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Integer {
        self.cols[j].get(i).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, value: Integer) {
        assert!(i < self.rows, "row {i} out of range");
        self.cols[j].set(i, value);
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut t = vec![Vec::new(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col.entries() {
                t[*i].push((j, v.clone()));
            }
        }
        IntegerMatrix { rows: self.cols.len(), cols: t.into_iter().map(|entries| SparseVec { entries }).collect() }
    }

    pub fn mul_vec(&self, v: &SparseVec) -> Result<SparseVec> {
        if v.max_index().is_some_and(|i| i >= self.cols()) {
            return Err(Error::Shape(format!("vector longer than {} columns", self.cols())));
        }
        let mut out = SparseVec::new();
        for (j, c) in v.entries() {
            out.axpy(c, &self.cols[*j]);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols() != other.rows {
            return Err(Error::Shape(format!("{}x{} times {}x{}", self.rows, self.cols(), other.rows, other.cols())));
        }
        let cols = other.cols.iter().map(|c| self.mul_vec(c)).collect::<Result<_>>()?;
        Ok(IntegerMatrix { rows: self.rows, cols })
    }

    /// Nonzero entries only on the main diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, c)| c.entries().iter().all(|&(i, _)| i == j))
    }

    pub fn diagonal_entries(&self) -> Vec<Integer> {
        (0..self.rows.min(self.cols())).map(|i| self.get(i, i)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Integer>> {
        (0..self.rows).map(|i| (0..self.cols()).map(|j| self.get(i, j)).collect()).collect()
    }

    /// Rows `range` of the matrix.
    pub fn row_block(&self, range: std::ops::Range<usize>) -> IntegerMatrix {
        IntegerMatrix { rows: range.len(), cols: self.cols.iter().map(|c| c.slice(range.clone())).collect() }
    }

    pub fn column_block(&self, range: std::ops::Range<usize>) -> IntegerMatrix {
        IntegerMatrix { rows: self.rows, cols: self.cols[range].to_vec() }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Integer> {
        let n = self.rows;
        if n != self.cols() {
            return Err(Error::Shape(format!("determinant of a {}x{} matrix", n, self.cols())));
        }
        let mut a = self.to_dense();
        let mut sign = Integer::one();
        let mut prev = Integer::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(Integer::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(if n == 0 { Integer::one() } else { sign * &a[n - 1][n - 1] })
    }

    pub fn max_abs_entry(&self) -> Integer {
        self.cols.iter().flat_map(|c| c.entries().iter().map(|(_, v)| v.abs())).max().unwrap_or_default()
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols())?;
        if self.rows * self.cols() <= 400 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                writeln!(f, "  {}", cells.join(" "))?;
            }
        } else {
            writeln!(f, "  {} nonzeros", self.nnz())?;
        }
        write!(f, "]")
    }
}

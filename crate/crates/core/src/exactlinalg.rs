//! Exact rational linear algebra on sparse vectors: reduced row-echelon
//! subspaces, images, cokernels and traces of actions on invariant subspaces
//! and quotients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `num / den`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("subspace is not invariant under the action")]
    NotInvariant,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(i, v)| (i, v.to_string())))
            .finish()
    }
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, Rational::one())],
        }
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, v) in pairs {
            *map.entry(i).or_insert_with(Rational::zero) += v;
        }
        SparseVec {
            entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Rational)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Index of the first nonzero entry.
    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &Rational, other: &SparseVec) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|e| e.0).unwrap_or(usize::MAX);
            let ib = other.entries.get(b).map(|e| e.0).unwrap_or(usize::MAX);
            if ia < ib {
                out.push(std::mem::take(&mut self.entries[a]));
                a += 1;
            } else if ib < ia {
                out.push((ib, c * &other.entries[b].1));
                b += 1;
            } else {
                let v = &self.entries[a].1 + c * &other.entries[b].1;
                if !v.is_zero() {
                    out.push((ia, v));
                }
                a += 1;
                b += 1;
            }
        }
        self.entries = out;
    }

    pub fn scale(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.axpy(&Rational::one(), other);
        out
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.axpy(&-Rational::one(), other);
        out
    }

    /// Applies `f` to the indices, summing collisions.
    pub fn reindex(&self, mut f: impl FnMut(usize) -> usize) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().map(|(i, v)| (f(*i), v.clone())))
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        let mut acc = Rational::zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            match self.entries[a].0.cmp(&other.entries[b].0) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    acc += &self.entries[a].1 * &other.entries[b].1;
                    a += 1;
                    b += 1;
                }
            }
        }
        acc
    }
}

/// A sparse rational matrix stored column by column.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    pub rows: usize,
    pub cols: usize,
    columns: Vec<SparseVec>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} matrix", self.rows, self.cols)?;
        for r in 0..self.rows.min(24) {
            let row: Vec<String> = (0..self.cols.min(24)).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        RationalMatrix {
            rows: n,
            cols: n,
            columns: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.max_index().is_none_or(|i| i < rows)));
        RationalMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    /// Builds from row-major dense data.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = RationalMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Builds from a map `(row, col) -> value`.
    pub fn from_entries(rows: usize, cols: usize, entries: &BTreeMap<(usize, usize), Rational>) -> Self {
        let mut per_col: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); cols];
        for (&(r, c), v) in entries {
            assert!(r < rows && c < cols, "entry out of range");
            per_col[c].push((r, v.clone()));
        }
        RationalMatrix {
            rows,
            cols,
            columns: per_col.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    /// Nonzero entries as a map `(row, col) -> value`.
    pub fn entries(&self) -> BTreeMap<(usize, usize), Rational> {
        let mut out = BTreeMap::new();
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col.iter() {
                out.insert((*r, c), v.clone());
            }
        }
        out
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.columns[c].get(r)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols);
        let cur = self.columns[c].get(r);
        let delta = v - cur;
        self.columns[c].axpy(&delta, &SparseVec::unit(r));
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, x) in v.iter() {
            out.axpy(x, &self.columns[*i]);
        }
        out
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        RationalMatrix {
            rows: self.rows,
            cols: other.cols,
            columns: other.columns.iter().map(|c| self.mul_vec(c)).collect(),
        }
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut per_row: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col.iter() {
                per_row[*r].push((c, v.clone()));
            }
        }
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            columns: per_row.into_iter().map(|e| SparseVec { entries: e }).collect(),
        }
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().zip(&other.columns).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().zip(&other.columns).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|col| col.scale(c)).collect(),
        }
    }

    /// Kronecker product; basis index `(i, j)` maps to `i * other.dim + j`.
    pub fn kron(&self, other: &RationalMatrix) -> RationalMatrix {
        let mut columns = Vec::with_capacity(self.cols * other.cols);
        for a in &self.columns {
            for b in &other.columns {
                let mut entries = Vec::with_capacity(a.nnz() * b.nnz());
                for (i, x) in a.iter() {
                    for (j, y) in b.iter() {
                        entries.push((i * other.rows + j, x * y));
                    }
                }
                columns.push(SparseVec { entries });
            }
        }
        RationalMatrix {
            rows: self.rows * other.rows,
            cols: self.cols * other.cols,
            columns,
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[RationalMatrix]) -> RationalMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut columns = Vec::new();
        let mut offset = 0;
        for b in blocks {
            for col in &b.columns {
                columns.push(col.reindex(|i| i + offset));
            }
            offset += b.rows;
        }
        RationalMatrix::from_columns(rows, columns)
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i))
            .fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// A subspace held as a fully reduced row-echelon basis: each basis vector has
/// a 1 at its pivot and every other basis vector vanishes there. The basis is
/// canonical, so it does not depend on the order vectors were inserted in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub ambient_dim: usize,
    /// Basis vectors sorted by pivot.
    vectors: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn new(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by<'a>(ambient_dim: usize, vectors: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut s = SubspaceBasis::new(ambient_dim);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivots.binary_search(&i).is_ok()
    }

    /// Coordinates that are not pivots; their unit vectors span a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|&i| !self.is_pivot(i)).collect()
    }

    /// Reduces `v` modulo the subspace; the result vanishes at every pivot.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        let coeffs: Vec<(usize, Rational)> = v
            .iter()
            .filter_map(|(i, x)| self.pivots.binary_search(i).ok().map(|k| (k, x.clone())))
            .collect();
        for (k, c) in coeffs {
            out.axpy(&-c, &self.vectors[k]);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` (assumed to lie in the subspace) in the basis.
    pub fn coordinates(&self, v: &SparseVec) -> Vec<Rational> {
        self.pivots.iter().map(|&p| v.get(p)).collect()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.leading() else {
            return false;
        };
        let inv = Rational::one() / r.get(p);
        r = r.scale(&inv);
        for w in self.vectors.iter_mut() {
            let c = w.get(p);
            if !c.is_zero() {
                w.axpy(&-c, &r);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.vectors.insert(pos, r);
        true
    }

    /// Trace of `g` on this subspace, which must be `g`-invariant.
    pub fn restricted_trace(&self, g: &RationalMatrix) -> Result<Rational, LinalgError> {
        let mut acc = Rational::zero();
        for (w, &p) in self.vectors.iter().zip(&self.pivots) {
            let gw = g.mul_vec(w);
            if !self.contains(&gw) {
                return Err(LinalgError::NotInvariant);
            }
            acc += gw.get(p);
        }
        Ok(acc)
    }

    /// Trace of `g` on the quotient by this subspace.
    pub fn quotient_trace(&self, g: &RationalMatrix) -> Result<Rational, LinalgError> {
        Ok(g.trace() - self.restricted_trace(g)?)
    }

    /// Trace on the quotient computed without an invariance check, via the
    /// action of `g` on the non-pivot coordinates followed by reduction.
    /// `apply` returns `g` applied to a unit vector.
    pub fn quotient_trace_with(&self, mut apply: impl FnMut(usize) -> SparseVec) -> Rational {
        let mut acc = Rational::zero();
        for c in self.non_pivots() {
            let image = self.reduce(&apply(c));
            acc += image.get(c);
        }
        acc
    }
}

/// Echelonized basis of the column space.
pub fn image_basis(m: &RationalMatrix) -> SubspaceBasis {
    SubspaceBasis::spanned_by(m.rows, m.columns())
}

pub fn rank(m: &RationalMatrix) -> usize {
    image_basis(m).dim()
}

/// Cokernel of `m`: the complement spanned by unit vectors at the non-pivot
/// coordinates of the image, and the projection onto it.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub image: SubspaceBasis,
    pub complement: Vec<usize>,
    pub projection: RationalMatrix,
}

impl Cokernel {
    pub fn dim(&self) -> usize {
        self.complement.len()
    }
}

pub fn cokernel(m: &RationalMatrix) -> Cokernel {
    let image = image_basis(m);
    let complement = image.non_pivots();
    let position: BTreeMap<usize, usize> = complement.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let columns = (0..m.rows)
        .map(|i| image.reduce(&SparseVec::unit(i)).reindex(|j| position[&j]))
        .collect();
    let projection = RationalMatrix::from_columns(complement.len(), columns);
    Cokernel {
        image,
        complement,
        projection,
    }
}

/// Kernel basis of `m` (as column vectors).
pub fn kernel(m: &RationalMatrix) -> Vec<SparseVec> {
    // Row-reduce the transpose's columns, i.e. the rows of m, then read off
    // the null space from the reduced system.
    let rows = m.transpose();
    let reduced = SubspaceBasis::spanned_by(m.cols, rows.columns());
    let mut out = Vec::new();
    for free in reduced.non_pivots() {
        let mut v = SparseVec::unit(free);
        for (w, &p) in reduced.vectors().iter().zip(reduced.pivots()) {
            let c = w.get(free);
            if !c.is_zero() {
                v.axpy(&-c, &SparseVec::unit(p));
            }
        }
        out.push(v);
    }
    out
}

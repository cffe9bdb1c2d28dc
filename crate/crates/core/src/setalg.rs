//! Cylindric set algebras of dimension `d` over a finite base `U`.
//!
//! Points of `U^d` are indexed lexicographically with coordinate 0 the most
//! significant digit, and subsets are dense bit sets over those indices.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

/// Upper bound on `|U|^d`.
pub const MAX_POINTS: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetError {
    #[error("coordinate {coord} outside the window 0..{dim}")]
    Coordinate { coord: usize, dim: usize },
    #[error("base point {point} outside 0..{base}")]
    Point { point: usize, base: usize },
    #[error("tuple {0:?} has the wrong length or entries")]
    Tuple(Vec<usize>),
    #[error("space {base}^{dim} is empty or exceeds {MAX_POINTS} points")]
    Size { base: usize, dim: usize },
}

/// A subset of `U^d` as a bit set over point indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    n: u32,
    words: SmallVec<[u64; 2]>,
}

impl PointSet {
    fn words_for(n: usize) -> usize {
        n.div_ceil(64)
    }

    pub fn empty(n: usize) -> Self {
        PointSet {
            n: n as u32,
            words: SmallVec::from_elem(0, Self::words_for(n)),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = PointSet {
            n: n as u32,
            words: SmallVec::from_elem(!0, Self::words_for(n)),
        };
        s.trim();
        s
    }

    /// Set from the low `n` bits of `mask` (`n <= 64`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64);
        let mut s = Self::empty(n);
        if n > 0 {
            s.words[0] = mask;
            s.trim();
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, it: I) -> Self {
        let mut s = Self::empty(n);
        for i in it {
            s.insert(i);
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.n as usize % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Number of points in the ambient space.
    #[inline]
    pub fn universe(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.n as usize && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.n as usize, "point index {i} out of range");
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.n as usize {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.n as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        debug_assert_eq!(self.n, other.n, "point sets over different spaces");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| f(a, b))
            .collect();
        PointSet { n: self.n, words }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        let mut s = PointSet {
            n: self.n,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.trim();
        s
    }

    pub fn union_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & b == 0)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// `U^d` with `U = {0, .., base-1}`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Space {
    pub base: usize,
    pub dim: usize,
}

impl Space {
    pub fn new(base: usize, dim: usize) -> Result<Self, SetError> {
        let size = Self::checked_size(base, dim).ok_or(SetError::Size { base, dim })?;
        if base == 0 || size > MAX_POINTS {
            return Err(SetError::Size { base, dim });
        }
        Ok(Space { base, dim })
    }

    fn checked_size(base: usize, dim: usize) -> Option<usize> {
        (0..dim).try_fold(1usize, |acc, _| acc.checked_mul(base))
    }

    /// `|U|^d`.
    #[inline]
    pub fn size(&self) -> usize {
        self.base.pow(self.dim as u32)
    }

    #[inline]
    pub fn stride(&self, k: usize) -> usize {
        self.base.pow((self.dim - 1 - k) as u32)
    }

    pub fn check_coord(&self, k: usize) -> Result<(), SetError> {
        if k < self.dim {
            Ok(())
        } else {
            Err(SetError::Coordinate {
                coord: k,
                dim: self.dim,
            })
        }
    }

    fn check_point(&self, x: usize) -> Result<(), SetError> {
        if x < self.base {
            Ok(())
        } else {
            Err(SetError::Point {
                point: x,
                base: self.base,
            })
        }
    }

    #[inline]
    pub fn coord(&self, idx: usize, k: usize) -> usize {
        idx / self.stride(k) % self.base
    }

    /// Index of `s(k/x)`. Coordinates are not range checked.
    #[inline]
    pub fn with_coord(&self, idx: usize, k: usize, x: usize) -> usize {
        let st = self.stride(k);
        idx - (idx / st % self.base) * st + x * st
    }

    pub fn index_of(&self, tuple: &[usize]) -> Result<usize, SetError> {
        if tuple.len() != self.dim || tuple.iter().any(|&x| x >= self.base) {
            return Err(SetError::Tuple(tuple.to_vec()));
        }
        Ok(tuple.iter().fold(0, |acc, &x| acc * self.base + x))
    }

    pub fn tuple_of(&self, idx: usize) -> Vec<usize> {
        (0..self.dim).map(|k| self.coord(idx, k)).collect()
    }

    pub fn empty(&self) -> PointSet {
        PointSet::empty(self.size())
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.size())
    }

    /// `s(k/x)` on explicit tuples.
    pub fn subst_point(&self, s: &[usize], k: usize, x: usize) -> Result<Vec<usize>, SetError> {
        self.check_coord(k)?;
        self.check_point(x)?;
        self.index_of(s)?;
        let mut t = s.to_vec();
        t[k] = x;
        Ok(t)
    }

    /// `C_k X = {s : s(k/x) in X for some x}`.
    pub fn cyl(&self, k: usize, x: &PointSet) -> Result<PointSet, SetError> {
        self.check_coord(k)?;
        Ok(self.cyl_unchecked(k, x))
    }

    fn cyl_unchecked(&self, k: usize, x: &PointSet) -> PointSet {
        let mut out = self.empty();
        for i in x.iter() {
            if out.contains(i) {
                continue;
            }
            for y in 0..self.base {
                out.insert(self.with_coord(i, k, y));
            }
        }
        out
    }

    /// `-C_k -X`.
    pub fn inner_cyl(&self, k: usize, x: &PointSet) -> Result<PointSet, SetError> {
        Ok(self.cyl(k, &x.complement())?.complement())
    }

    /// `D_kl = {s : s_k = s_l}`.
    pub fn diag(&self, k: usize, l: usize) -> Result<PointSet, SetError> {
        self.check_coord(k)?;
        self.check_coord(l)?;
        Ok(self.diag_unchecked(k, l))
    }

    fn diag_unchecked(&self, k: usize, l: usize) -> PointSet {
        PointSet::from_indices(
            self.size(),
            (0..self.size()).filter(|&i| self.coord(i, k) == self.coord(i, l)),
        )
    }

    /// `y o_k X = {s : s(k/y) in X}`.
    pub fn witness_set(&self, y: usize, k: usize, x: &PointSet) -> Result<PointSet, SetError> {
        self.check_coord(k)?;
        self.check_point(y)?;
        Ok(PointSet::from_indices(
            self.size(),
            (0..self.size()).filter(|&i| x.contains(self.with_coord(i, k, y))),
        ))
    }

    /// Whether membership in `x` is invariant under changing coordinates
    /// outside `gamma`.
    pub fn depends_on(&self, x: &PointSet, gamma: &[usize]) -> bool {
        (0..self.dim).filter(|k| !gamma.contains(k)).all(|k| {
            (0..self.size()).all(|i| {
                let inside = x.contains(i);
                (0..self.base).all(|y| x.contains(self.with_coord(i, k, y)) == inside)
            })
        })
    }

    /// `dim X = {k : C_k X != X}`.
    pub fn dimension_set(&self, x: &PointSet) -> Vec<usize> {
        (0..self.dim)
            .filter(|&k| self.cyl_unchecked(k, x) != *x)
            .collect()
    }

    pub fn to_tuples(&self, x: &PointSet) -> Vec<Vec<usize>> {
        x.iter().map(|i| self.tuple_of(i)).collect()
    }

    pub fn from_tuples(&self, tuples: &[Vec<usize>]) -> Result<PointSet, SetError> {
        let mut s = self.empty();
        for t in tuples {
            s.insert(self.index_of(t)?);
        }
        Ok(s)
    }
}

/// A Boolean algebra with cylindrifications and diagonals. Coordinates passed
/// to [`CylindricAlgebra::cylindrify`] and [`CylindricAlgebra::diagonal`] are
/// below [`CylindricAlgebra::dim`]; callers check this.
pub trait CylindricAlgebra: Sync + Send {
    type Elem: Clone + Eq + std::hash::Hash + fmt::Debug + Send + Sync;

    fn dim(&self) -> usize;
    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;
    fn sum(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn minus(&self, a: &Self::Elem) -> Self::Elem;
    fn cylindrify(&self, k: usize, a: &Self::Elem) -> Self::Elem;
    fn diagonal(&self, k: usize, l: usize) -> Self::Elem;

    fn is_bottom(&self, a: &Self::Elem) -> bool {
        *a == self.bottom()
    }
}

impl CylindricAlgebra for Space {
    type Elem = PointSet;

    fn dim(&self) -> usize {
        self.dim
    }
    fn bottom(&self) -> PointSet {
        self.empty()
    }
    fn top(&self) -> PointSet {
        self.full()
    }
    fn sum(&self, a: &PointSet, b: &PointSet) -> PointSet {
        a.union(b)
    }
    fn product(&self, a: &PointSet, b: &PointSet) -> PointSet {
        a.intersection(b)
    }
    fn minus(&self, a: &PointSet) -> PointSet {
        a.complement()
    }
    fn cylindrify(&self, k: usize, a: &PointSet) -> PointSet {
        self.cyl_unchecked(k, a)
    }
    fn diagonal(&self, k: usize, l: usize) -> PointSet {
        self.diag_unchecked(k, l)
    }
    fn is_bottom(&self, a: &PointSet) -> bool {
        a.is_empty()
    }
}

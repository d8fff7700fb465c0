//! Partitions, skew shapes, tableaux and monomial weights.
//!
//! Cells are 1-indexed `(row, col)` with row 1 at the top.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShapeError {
    #[error("parts are not weakly decreasing at index {0}")]
    NotWeaklyDecreasing(usize),
    #[error("negative part {value} at index {index}")]
    NegativePart { index: usize, value: i64 },
    #[error("inner shape not contained in outer shape at row {0}")]
    InnerNotContained(usize),
    #[error("entry {entry} outside [1, {n}]")]
    EntryOutOfRange { entry: i64, n: usize },
    #[error("partition {parts:?} does not fit in {n} rows")]
    TooManyRows { parts: Vec<usize>, n: usize },
}

/// A partition with an explicit logical length.
///
/// Zero parts are kept so that `N`-row objects stay `N` rows long, but
/// equality and hashing ignore trailing zeros.
#[derive(Clone, Debug, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates an integer sequence as a partition.
    pub fn new(parts: &[i64]) -> Result<Self, ShapeError> {
        let mut out = Vec::with_capacity(parts.len());
        for (index, &value) in parts.iter().enumerate() {
            if value < 0 {
                return Err(ShapeError::NegativePart { index, value });
            }
            out.push(value as usize);
        }
        Self::from_parts(out)
    }

    pub fn from_parts(parts: Vec<usize>) -> Result<Self, ShapeError> {
        for i in 1..parts.len() {
            if parts[i] > parts[i - 1] {
                return Err(ShapeError::NotWeaklyDecreasing(i));
            }
        }
        Ok(Self { parts })
    }

    /// The all-zero partition of logical length `n`.
    pub fn zeros(n: usize) -> Self {
        Self { parts: vec![0; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Logical length (number of rows, zeros included).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.iter().all(|&p| p == 0)
    }

    /// Part `i` (0-indexed), zero beyond the logical length.
    pub fn get(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn nonzero_len(&self) -> usize {
        self.parts.iter().take_while(|&&p| p > 0).count()
    }

    /// Re-expresses the partition with exactly `n` rows.
    pub fn with_len(&self, n: usize) -> Result<Self, ShapeError> {
        if self.nonzero_len() > n {
            return Err(ShapeError::TooManyRows {
                parts: self.parts.clone(),
                n,
            });
        }
        Ok(Self {
            parts: (0..n).map(|i| self.get(i)).collect(),
        })
    }

    pub fn conjugate(&self) -> Self {
        let cols = self.get(0);
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p > c).count())
            .collect();
        Self { parts }
    }

    /// Whether `other` fits inside `self` cellwise.
    pub fn contains(&self, other: &Partition) -> bool {
        let n = self.len().max(other.len());
        (0..n).all(|i| other.get(i) <= self.get(i))
    }

    /// All partitions with `n` rows fitting inside `bound` (rows beyond `bound` are zero).
    pub fn all_in_box(bound: &[usize], n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; n];
        fn rec(i: usize, cap: usize, bound: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if i == cur.len() {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            let hi = cap.min(bound.get(i).copied().unwrap_or(0));
            for v in 0..=hi {
                cur[i] = v;
                rec(i + 1, v, bound, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, usize::MAX, bound, &mut cur, &mut out);
        out
    }

    /// All `y` with `lower ⊆ y ⊆ upper`, using the length of `upper`.
    pub fn interval(lower: &Partition, upper: &Partition) -> Vec<Partition> {
        let n = upper.len().max(lower.len());
        let bound: Vec<usize> = (0..n).map(|i| upper.get(i)).collect();
        Self::all_in_box(&bound, n)
            .into_iter()
            .filter(|y| y.contains(lower))
            .collect()
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        let n = self.nonzero_len();
        n == other.nonzero_len() && self.parts[..n] == other.parts[..n]
    }
}

impl Eq for Partition {}

impl Hash for Partition {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.parts[..self.nonzero_len()].hash(state);
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<i64>::deserialize(d)?;
        Partition::new(&raw).map_err(D::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, ShapeError> {
        let n = outer.len().max(inner.len());
        for i in 0..n {
            if inner.get(i) > outer.get(i) {
                return Err(ShapeError::InnerNotContained(i + 1));
            }
        }
        Ok(Self { outer, inner })
    }

    /// Row-major list of the cells of `outer / inner`.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let n = self.outer.len().max(self.inner.len());
        let mut out = Vec::new();
        for i in 0..n {
            for c in self.inner.get(i)..self.outer.get(i) {
                out.push((i + 1, c + 1));
            }
        }
        out
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }
}

/// Exponent vector of a monomial in `p_1..p_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Self { exponents: vec![0; n] }
    }

    pub fn var(n: usize, k: usize) -> Self {
        let mut m = Self::one(n);
        m.exponents[k - 1] = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "p{}", i + 1)?;
            } else {
                write!(f, "p{}^{}", i + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Ordering required between neighbouring entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    WeakInc,
    StrictInc,
    WeakDec,
    StrictDec,
}

impl Order {
    pub fn holds(self, a: i64, b: i64) -> bool {
        match self {
            Order::WeakInc => a <= b,
            Order::StrictInc => a < b,
            Order::WeakDec => a >= b,
            Order::StrictDec => a > b,
        }
    }
}

/// A filling of a (possibly skew) shape.
///
/// Row `i` holds its filled cells in order; they occupy columns
/// `inner[i] + 1 ..= inner[i] + rows[i].len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Tableau {
    inner: Vec<usize>,
    rows: Vec<Vec<i64>>,
}

impl Tableau {
    /// A straight-shape tableau. Trailing empty rows are kept.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, ShapeError> {
        let inner = vec![0; rows.len()];
        Self::skew(inner, rows)
    }

    pub fn empty(n: usize) -> Self {
        Self {
            inner: vec![0; n],
            rows: vec![Vec::new(); n],
        }
    }

    /// A skew tableau on `outer / inner`, `inner[i]` being the number of
    /// unfilled leading cells in row `i`.
    pub fn skew(inner: Vec<usize>, rows: Vec<Vec<i64>>) -> Result<Self, ShapeError> {
        let n = rows.len().max(inner.len());
        let mut inner = inner;
        inner.resize(n, 0);
        let mut rows = rows;
        rows.resize(n, Vec::new());
        let t = Self { inner, rows };
        Partition::from_parts(t.inner.clone())?;
        Partition::from_parts(t.outer_parts())?;
        Ok(t)
    }

    pub(crate) fn from_raw(inner: Vec<usize>, rows: Vec<Vec<i64>>) -> Self {
        Self { inner, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Filled entries of row `i` (0-indexed).
    pub fn row(&self, i: usize) -> &[i64] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub(crate) fn row_mut(&mut self, i: usize) -> &mut Vec<i64> {
        &mut self.rows[i]
    }

    pub fn inner_parts(&self) -> &[usize] {
        &self.inner
    }

    pub fn outer_parts(&self) -> Vec<usize> {
        self.inner.iter().zip(&self.rows).map(|(a, r)| a + r.len()).collect()
    }

    pub fn outer(&self) -> Partition {
        Partition {
            parts: self.outer_parts(),
        }
    }

    pub fn inner(&self) -> Partition {
        Partition {
            parts: self.inner.clone(),
        }
    }

    pub fn shape(&self) -> SkewShape {
        SkewShape {
            outer: self.outer(),
            inner: self.inner(),
        }
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// Entry at 1-indexed `(r, c)`, `None` outside the filled cells.
    pub fn get(&self, r: usize, c: usize) -> Option<i64> {
        if r == 0 || r > self.rows.len() || c == 0 {
            return None;
        }
        let off = self.inner[r - 1];
        if c <= off {
            return None;
        }
        self.rows[r - 1].get(c - off - 1).copied()
    }

    /// Iterates `(row, col, entry)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(i, row)| {
            let off = self.inner[i];
            row.iter().enumerate().map(move |(j, &v)| (i + 1, off + j + 1, v))
        })
    }

    /// Checks an ordering rule along rows (left to right) and columns (top to bottom).
    pub fn satisfies(&self, along_rows: Order, down_columns: Order) -> bool {
        for (r, c, v) in self.entries() {
            if let Some(right) = self.get(r, c + 1) {
                if !along_rows.holds(v, right) {
                    return false;
                }
            }
            if let Some(below) = self.get(r + 1, c) {
                if !down_columns.holds(v, below) {
                    return false;
                }
            }
        }
        true
    }

    /// Weak along rows, strict down columns.
    pub fn is_semistandard(&self) -> bool {
        self.satisfies(Order::WeakInc, Order::StrictInc)
    }

    /// Multiplicity vector of entries `1..=n`.
    pub fn weight(&self, n: usize) -> Result<Monomial, ShapeError> {
        let mut m = Monomial::one(n);
        for (_, _, v) in self.entries() {
            if v < 1 || v as usize > n {
                return Err(ShapeError::EntryOutOfRange { entry: v, n });
            }
            m.exponents[v as usize - 1] += 1;
        }
        Ok(m)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            let mut cells: Vec<String> = vec![".".to_string(); self.inner[i]];
            cells.extend(row.iter().map(|v| v.to_string()));
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Option<i64>>> = self
            .rows
            .iter()
            .zip(&self.inner)
            .map(|(row, &off)| {
                std::iter::repeat_n(None, off)
                    .chain(row.iter().map(|&v| Some(v)))
                    .collect()
            })
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<Vec<Option<i64>>>::deserialize(d)?;
        let mut inner = Vec::with_capacity(raw.len());
        let mut rows = Vec::with_capacity(raw.len());
        for row in raw {
            let off = row.iter().take_while(|v| v.is_none()).count();
            let filled: Option<Vec<i64>> = row[off..].iter().copied().collect();
            let filled = filled.ok_or_else(|| D::Error::custom("null after a filled cell"))?;
            inner.push(off);
            rows.push(filled);
        }
        Tableau::skew(inner, rows).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[i64]) -> Partition {
        Partition::new(parts).unwrap()
    }

    #[test]
    fn validate_partition_examples() {
        assert_eq!(p(&[3, 3, 1, 1]).parts(), &[3, 3, 1, 1]);
        assert_eq!(Partition::new(&[1, 3]), Err(ShapeError::NotWeaklyDecreasing(1)));
        assert!(Partition::new(&[]).unwrap().is_empty());
        assert!(matches!(
            Partition::new(&[2, -1]),
            Err(ShapeError::NegativePart { index: 1, value: -1 })
        ));
    }

    #[test]
    fn trailing_zeros_ignored_in_equality() {
        assert_eq!(p(&[2, 1, 0, 0]), p(&[2, 1]));
        assert_ne!(p(&[2, 1, 1]), p(&[2, 1]));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[2, 2, 1]).conjugate(), p(&[3, 2]));
        assert_eq!(p(&[]).conjugate(), p(&[]));
        assert_eq!(p(&[3]).conjugate(), p(&[1, 1, 1]));
    }

    #[test]
    fn conjugate_is_an_involution_in_6x6_box() {
        for lam in Partition::all_in_box(&[6; 6], 6) {
            assert_eq!(lam.conjugate().conjugate(), lam);
        }
    }

    #[test]
    fn skew_cells_examples() {
        let s = SkewShape::new(p(&[3, 2, 2, 1]), p(&[2, 2, 1])).unwrap();
        assert_eq!(s.cells(), vec![(1, 3), (3, 2), (4, 1)]);
        let s = SkewShape::new(p(&[2, 1]), p(&[2, 1])).unwrap();
        assert!(s.cells().is_empty());
        let s = SkewShape::new(p(&[2, 1]), p(&[])).unwrap();
        assert_eq!(s.cells(), vec![(1, 1), (1, 2), (2, 1)]);
        assert_eq!(SkewShape::new(p(&[1]), p(&[2])), Err(ShapeError::InnerNotContained(1)));
    }

    #[test]
    fn skew_cell_count_matches_sizes() {
        let all = Partition::all_in_box(&[3, 3, 3], 3);
        for z in &all {
            for x in all.iter().filter(|x| z.contains(x)) {
                let s = SkewShape::new(z.clone(), x.clone()).unwrap();
                assert_eq!(s.cells().len(), z.size() - x.size());
            }
        }
    }

    #[test]
    fn weight_examples() {
        let t = Tableau::new(vec![vec![1, 2], vec![2]]).unwrap();
        assert_eq!(t.weight(2).unwrap().exponents, vec![1, 2]);
        assert_eq!(Tableau::empty(3).weight(3).unwrap().exponents, vec![0, 0, 0]);
        let t = Tableau::new(vec![vec![1, 3], vec![2, 4], vec![3]]).unwrap();
        let w = t.weight(4).unwrap();
        assert_eq!(w.exponents, vec![1, 1, 2, 1]);
        assert_eq!(w.degree() as usize, t.size());
        assert!(t.weight(3).is_err());
    }

    #[test]
    fn skew_tableau_json_round_trip() {
        let t = Tableau::skew(vec![2, 1], vec![vec![5], vec![3, 4]]).unwrap();
        let js = serde_json::to_string(&t).unwrap();
        assert_eq!(js, "[[null,null,5],[null,3,4]]");
        let back: Tableau = serde_json::from_str(&js).unwrap();
        assert_eq!(back, t);
        assert_eq!(t.get(1, 3), Some(5));
        assert_eq!(t.get(1, 2), None);
    }

    #[test]
    fn semistandard_predicate() {
        let t = Tableau::new(vec![vec![1, 3], vec![2, 4], vec![3]]).unwrap();
        assert!(t.is_semistandard());
        let bad = Tableau::new(vec![vec![2, 3], vec![2]]).unwrap();
        assert!(!bad.is_semistandard());
    }
}

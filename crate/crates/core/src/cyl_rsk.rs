//! Cylindrical dual RSK on cylindric (skew) infinite Young tableaux.
//!
//! Only the main period `P0` is stored. Period `m` of the infinite tableau
//! sits `m` periods below the main one: the global cell `(r + mN, c - m(L-N))`
//! carries `P0[r][c] + mN`. Insertion runs column by column through this
//! unrolled picture, so bumps that cross into the period above are handled
//! by the same rule as interior bumps.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dual_rsk::{strictly_below, weakly_above, InnovationArray, InsertionPath, RskError};
use crate::shapes::{Order, Partition, ShapeError, Tableau};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CylError {
    #[error("L - N must be at least 1 (N = {n}, L = {l})")]
    DegenerateRing { n: usize, l: usize },
    #[error("letter {letter} outside [1, {n}]")]
    InvalidLetter { letter: i64, n: usize },
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("not in the image of cylindrical RSK: {0}")]
    NotInImage(String),
    #[error(transparent)]
    Array(#[from] RskError),
    #[error(transparent)]
    Shape(#[from] ShapeError),
}

/// Finite encoding `(P0, Q, W)` of a cylindric tableau state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylTriple {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub mu: Partition,
    #[serde(rename = "P0")]
    pub p0: Tableau,
    #[serde(rename = "Q")]
    pub q: Tableau,
    #[serde(rename = "W")]
    pub w: Tableau,
}

/// One visited cell of an insertion, in global and main-period coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertionStep {
    pub global: (i64, i64),
    pub cell: (usize, usize),
    pub period: i64,
    pub old: Option<i64>,
    pub new: i64,
}

/// A cylindrical insertion path, split into one iteration per period visited.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylInsertionPath {
    pub steps: Vec<InsertionStep>,
    pub iterations: Vec<InsertionPath>,
    pub winding: i64,
}

impl CylInsertionPath {
    pub fn new_box(&self) -> (usize, usize) {
        self.steps.last().expect("nonempty path").cell
    }

    /// Global route as `(row, col)` pairs.
    pub fn route(&self) -> Vec<(i64, i64)> {
        self.steps.iter().map(|s| s.global).collect()
    }

    /// Main-period cells whose entry actually changed, ending with the new box.
    pub fn changed_cells(&self) -> Vec<(usize, usize)> {
        self.steps
            .iter()
            .filter(|s| s.old != Some(s.new))
            .map(|s| s.cell)
            .collect()
    }
}

/// Splits an entry `b` into `(k, base)` with `b = base + kN` and `base` in `[1, N]`.
pub fn coordinates(b: i64, n: usize) -> (i64, i64) {
    let n = n as i64;
    let k = (b - 1).div_euclid(n);
    (k, b - k * n)
}

impl CylTriple {
    /// Initial state with shape `mu`, row `k` of `mu` prefilled with `k`.
    pub fn new(n: usize, l: usize, mu: &Partition) -> Result<Self, CylError> {
        if n == 0 || l <= n {
            return Err(CylError::DegenerateRing { n, l });
        }
        let mu = mu.with_len(n)?;
        let d = l - n;
        if mu.get(0) > d + mu.get(n - 1) {
            return Err(CylError::InvalidState(format!(
                "initial shape {mu} exceeds one wrap (L - N = {d})"
            )));
        }
        let rows: Vec<Vec<i64>> = (0..n).map(|i| vec![i as i64 + 1; mu.get(i)]).collect();
        let inner: Vec<usize> = mu.parts().to_vec();
        Ok(Self {
            n,
            l,
            p0: Tableau::from_raw(vec![0; n], rows),
            q: Tableau::from_raw(inner.clone(), vec![Vec::new(); n]),
            w: Tableau::from_raw(inner, vec![Vec::new(); n]),
            mu,
        })
    }

    pub fn shape(&self) -> Vec<usize> {
        self.p0.outer_parts()
    }

    fn d(&self) -> i64 {
        (self.l - self.n) as i64
    }

    /// Checks the stated invariants of a triple.
    pub fn validate(&self) -> Result<(), CylError> {
        let n = self.n;
        if n == 0 || self.l <= n {
            return Err(CylError::DegenerateRing { n, l: self.l });
        }
        let bad = |m: &str| Err(CylError::InvalidState(m.to_string()));
        if self.p0.nrows() != n || self.q.nrows() != n || self.w.nrows() != n {
            return bad("tableaux must have N rows");
        }
        let mu = self.mu.with_len(n)?;
        let lam = self.shape();
        Partition::from_parts(lam.clone())?;
        if self.p0.inner_parts().iter().any(|&c| c != 0) {
            return bad("P0 must be a straight-shape tableau");
        }
        if self.q.outer_parts() != lam || self.w.outer_parts() != lam {
            return bad("P0, Q and W shapes differ");
        }
        if self.q.inner_parts() != mu.parts() || self.w.inner_parts() != mu.parts() {
            return bad("Q and W must be skew with inner shape mu");
        }
        for (i, &len) in lam.iter().enumerate().take(n) {
            if len < mu.get(i) || self.p0.row(i)[..mu.get(i)].iter().any(|&v| v != i as i64 + 1) {
                return bad("mu cells must hold their row index");
            }
        }
        if lam[0] as i64 > self.d() + lam[n - 1] as i64 {
            return bad("shape exceeds one wrap");
        }
        if self.p0.entries().any(|(_, _, v)| v < 1) || !self.p0.satisfies(Order::WeakInc, Order::StrictInc) {
            return bad("P0 must be column-strict and row-weak with positive entries");
        }
        if self.w.entries().any(|(_, _, v)| v < 0) || self.q.entries().any(|(_, _, v)| v < 1) {
            return bad("Q entries must be positive and W entries nonnegative");
        }
        let global = GlobalView::new(self);
        if !global.cylindric_columns_ok() {
            return bad("columns are not strict across the period boundary");
        }
        Ok(())
    }

    /// Largest `k` with `λ_1 = ... = λ_k = L - N + λ_N`, else 0.
    pub fn overflow_rows(&self) -> usize {
        overflow_rows(&self.shape(), self.l - self.n)
    }

    /// Whether row `r0` (1-indexed) can take a new cell without exceeding one wrap.
    fn addable(&self, lam: &[usize], r0: usize) -> bool {
        if r0 == 1 {
            (lam[0] as i64) < self.d() + lam[self.n - 1] as i64
        } else {
            lam[r0 - 1] < lam[r0 - 2]
        }
    }

    fn global_to_p0(&self, r: i64, c: i64) -> (i64, usize, i64) {
        let n = self.n as i64;
        let m = (r - 1).div_euclid(n);
        (m, (r - m * n) as usize, c + m * self.d())
    }

    /// Cells of global column `c`, sorted top to bottom, as `(global row, value)`.
    fn column(&self, c: i64) -> Vec<(i64, i64)> {
        let d = self.d();
        let n = self.n as i64;
        let lam = self.shape();
        let lam1 = lam[0] as i64;
        if lam1 == 0 {
            return Vec::new();
        }
        let m_lo = (1 - c).div_euclid(d) + if (1 - c).rem_euclid(d) == 0 { 0 } else { 1 };
        let m_hi = (lam1 - c).div_euclid(d);
        let mut cells = Vec::new();
        for m in m_lo..=m_hi {
            let c0 = c + m * d;
            for r0 in 1..=self.n {
                if c0 >= 1 && (c0 as usize) <= lam[r0 - 1] {
                    let v = self.p0.row(r0 - 1)[c0 as usize - 1] + m * n;
                    cells.push((r0 as i64 + m * n, v));
                }
            }
        }
        cells
    }

    /// Global row of the unique addable cell lying in global column `c`.
    fn addable_in_column(&self, c: i64) -> Result<i64, CylError> {
        let lam = self.shape();
        let d = self.d();
        let mut found = Vec::new();
        for r0 in 1..=self.n {
            if !self.addable(&lam, r0) {
                continue;
            }
            let c0 = lam[r0 - 1] as i64 + 1;
            if (c0 - c).rem_euclid(d) == 0 {
                let m = (c0 - c) / d;
                found.push(r0 as i64 + m * self.n as i64);
            }
        }
        match found.as_slice() {
            [r] => Ok(*r),
            _ => Err(CylError::InvalidState(format!(
                "expected one addable cell in global column {c}, found {}",
                found.len()
            ))),
        }
    }

    /// Inserts letter `b` at `time`, returning the path.
    pub fn insert(&mut self, b: i64, time: i64) -> Result<CylInsertionPath, CylError> {
        if b < 1 || b as usize > self.n {
            return Err(CylError::InvalidLetter { letter: b, n: self.n });
        }
        let n = self.n as i64;
        let mut steps = Vec::new();
        let mut v = b;
        let mut c = 1i64;
        loop {
            let col = self.column(c);
            if let Some(&(r, old)) = col.iter().find(|&&(_, e)| e >= v) {
                let (m, r0, c0) = self.global_to_p0(r, c);
                self.p0.row_mut(r0 - 1)[c0 as usize - 1] = v - m * n;
                steps.push(InsertionStep {
                    global: (r, c),
                    cell: (r0, c0 as usize),
                    period: m,
                    old: Some(old),
                    new: v,
                });
                v = old;
                c += 1;
                continue;
            }
            let r = match col.last() {
                Some(&(bottom, _)) => bottom + 1,
                None => self.addable_in_column(c)?,
            };
            let (m, r0, c0) = self.global_to_p0(r, c);
            let lam = self.shape();
            if c0 != lam[r0 - 1] as i64 + 1 || !self.addable(&lam, r0) {
                return Err(CylError::InvalidState(format!("global cell ({r}, {c}) is not addable")));
            }
            let winding = -m;
            if winding < 0 {
                return Err(CylError::InvalidState("negative winding".into()));
            }
            self.p0.row_mut(r0 - 1).push(v - m * n);
            self.q.row_mut(r0 - 1).push(time);
            self.w.row_mut(r0 - 1).push(winding);
            steps.push(InsertionStep {
                global: (r, c),
                cell: (r0, c0 as usize),
                period: m,
                old: None,
                new: v,
            });
            let iterations = split_iterations(&steps);
            return Ok(CylInsertionPath {
                steps,
                iterations,
                winding,
            });
        }
    }

    /// Counts of letter `i` in row `i` of `P0`, prefilled cells included.
    pub fn ledge(&self) -> Vec<i64> {
        (0..self.n)
            .map(|i| self.p0.row(i).iter().filter(|&&v| v == i as i64 + 1).count() as i64)
            .collect()
    }

    /// Removes the box at main-period cell `(r0, c0)` created with winding `w`
    /// and un-bumps back to global column 1, returning the ejected letter.
    fn uninsert(&mut self, r0: usize, c0: usize, w: i64) -> Result<i64, CylError> {
        let n = self.n as i64;
        let m = -w;
        let not_image = |s: String| CylError::NotInImage(s);
        let lam = self.shape();
        if lam[r0 - 1] != c0 {
            return Err(not_image(format!("box ({r0}, {c0}) is not at the end of its row")));
        }
        let removable = if r0 < self.n {
            lam[r0] < lam[r0 - 1]
        } else {
            (lam[0] as i64) < self.d() + lam[self.n - 1] as i64
        };
        if !removable {
            return Err(not_image(format!("box ({r0}, {c0}) is not removable")));
        }
        let mut v = self.p0.row_mut(r0 - 1).pop().expect("nonempty row") + m * n;
        self.q.row_mut(r0 - 1).pop();
        self.w.row_mut(r0 - 1).pop();
        let mut c = c0 as i64 - m * self.d();
        while c > 1 {
            c -= 1;
            let col = self.column(c);
            let Some(&(r, e)) = col.iter().rev().find(|&&(_, e)| e <= v) else {
                return Err(not_image(format!("no entry <= {v} in global column {c}")));
            };
            let (mm, rr, cc) = self.global_to_p0(r, c);
            self.p0.row_mut(rr - 1)[cc as usize - 1] = v - mm * n;
            v = e;
        }
        if v < 1 || v > n {
            return Err(not_image(format!("ejected value {v} is not a letter")));
        }
        Ok(v)
    }
}

fn split_iterations(steps: &[InsertionStep]) -> Vec<InsertionPath> {
    let mut out: Vec<InsertionPath> = Vec::new();
    let mut cur: Vec<(usize, usize)> = Vec::new();
    let mut period = steps[0].period;
    for s in steps {
        if s.period != period {
            let last = *cur.last().expect("nonempty iteration");
            out.push(InsertionPath {
                cells: std::mem::take(&mut cur),
                new_box: last,
            });
            period = s.period;
        }
        cur.push(s.cell);
    }
    let last = *cur.last().expect("nonempty iteration");
    out.push(InsertionPath {
        cells: cur,
        new_box: last,
    });
    out
}

/// Largest `k` with `λ_1 = ... = λ_k = d + λ_N` for `d = L - N`, else 0.
pub fn overflow_rows(lam: &[usize], d: usize) -> usize {
    let Some(&last) = lam.last() else { return 0 };
    let edge = d + last;
    lam.iter().take_while(|&&p| p == edge).count()
}

/// The unrolled view of a triple, used for validation.
struct GlobalView<'a> {
    s: &'a CylTriple,
}

impl<'a> GlobalView<'a> {
    fn new(s: &'a CylTriple) -> Self {
        Self { s }
    }

    /// Row `N` of one period stays strictly above row 1 of the next.
    fn cylindric_columns_ok(&self) -> bool {
        let s = self.s;
        let d = s.d() as usize;
        let n = s.n as i64;
        let last = s.p0.row(s.n - 1);
        let first = s.p0.row(0);
        last.iter().enumerate().all(|(j, &v)| match first.get(j + d) {
            Some(&below) => v < below + n,
            None => true,
        })
    }
}

/// Ordering relations between consecutive same-time insertions `first` then
/// `second` of letters `a < b`, as a list of violated statements.
///
/// Checked: windings weakly decrease; iterations interlace as
/// `A^{k+1} ⪯ B^k ≺ A^k`; the second route is strictly below the first on
/// every shared global column and no longer; new boxes with equal winding
/// are ordered strictly north and weakly east.
pub fn slice_lemma_violations(a: i64, first: &CylInsertionPath, b: i64, second: &CylInsertionPath) -> Vec<String> {
    let mut out = Vec::new();
    if a >= b {
        out.push(format!("letters {a}, {b} are not increasing"));
        return out;
    }
    if first.winding < second.winding {
        out.push(format!(
            "winding increased from {} to {}",
            first.winding, second.winding
        ));
        return out;
    }
    for k in 0..second.winding as usize {
        let (ak, bk) = (&first.iterations[k].cells, &second.iterations[k].cells);
        if !strictly_below(bk, ak) {
            out.push(format!("iteration {} of {b} is not strictly below that of {a}", k + 1));
        }
        if !weakly_above(bk, &first.iterations[k + 1].cells) {
            out.push(format!(
                "iteration {} of {a} is not weakly below iteration {} of {b}",
                k + 2,
                k + 1
            ));
        }
    }
    if !strictly_below(&second.route(), &first.route()) {
        out.push(format!("route of {b} is not strictly below route of {a}"));
    }
    if second.steps.len() > first.steps.len() {
        out.push(format!("route of {b} is longer than route of {a}"));
    }
    let ((r1, c1), (r2, c2)) = (first.new_box(), second.new_box());
    if first.winding == second.winding && !(r1 < r2 && c1 >= c2) {
        out.push(format!(
            "new box of {a} is not strictly north and weakly east of that of {b}"
        ));
    }
    out
}

/// Forward map from innovation data, starting from the prefilled shape `mu`.
pub fn cyl_rsk(a: &InnovationArray, l: usize, mu: &Partition) -> Result<CylTriple, CylError> {
    Ok(cyl_rsk_with_paths(a, l, mu)?.0)
}

pub fn cyl_rsk_with_paths(
    a: &InnovationArray,
    l: usize,
    mu: &Partition,
) -> Result<(CylTriple, Vec<CylInsertionPath>), CylError> {
    a.validate()?;
    let mut s = CylTriple::new(a.n, l, mu)?;
    let mut paths = Vec::with_capacity(a.len());
    for &(t, b) in &a.pairs {
        paths.push(s.insert(b, t)?);
    }
    Ok((s, paths))
}

/// Exact inverse of [`cyl_rsk`].
///
/// Within the latest time slice the boxes form a vertical strip of the
/// unrolled tableau; the last insertion is the lowest of them there, i.e.
/// the box with minimal winding and, among those, the largest row.
pub fn cyl_rsk_invert(s: &CylTriple) -> Result<InnovationArray, CylError> {
    s.validate()?;
    let mut cur = s.clone();
    let mut out = Vec::new();
    loop {
        let mut best: Option<(i64, i64, usize, usize)> = None;
        for i in 0..cur.n {
            let off = cur.q.inner_parts()[i];
            for (j, (&t, &w)) in cur.q.row(i).iter().zip(cur.w.row(i)).enumerate() {
                let key = (t, -w, i + 1, off + j + 1);
                if best.is_none_or(|b| (key.0, key.1, key.2) > (b.0, b.1, b.2)) {
                    best = Some(key);
                }
            }
        }
        let Some((t, negw, r0, c0)) = best else { break };
        let b = cur.uninsert(r0, c0, -negw)?;
        out.push((t, b));
    }
    let prefilled = CylTriple::new(s.n, s.l, &s.mu)?;
    if cur.p0 != prefilled.p0 {
        return Err(CylError::NotInImage(
            "residual tableau differs from the prefilled shape".into(),
        ));
    }
    out.reverse();
    let a = InnovationArray { n: s.n, pairs: out };
    a.validate()
        .map_err(|e| CylError::NotInImage(format!("recovered array invalid: {e}")))?;
    if &cyl_rsk(&a, s.l, &s.mu)? != s {
        return Err(CylError::NotInImage("forward map does not reproduce the triple".into()));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_pairs() -> Vec<(i64, i64)> {
        vec![
            (1, 1),
            (1, 3),
            (1, 4),
            (2, 2),
            (2, 3),
            (3, 1),
            (3, 2),
            (3, 3),
            (3, 4),
            (4, 1),
            (4, 4),
            (5, 1),
            (6, 1),
            (7, 1),
            (7, 2),
            (8, 1),
            (9, 1),
            (9, 2),
        ]
    }

    fn run_until(t: i64) -> CylTriple {
        let a = InnovationArray::new(4, example_pairs()).unwrap().truncated(t);
        cyl_rsk(&a, 8, &Partition::zeros(4)).unwrap()
    }

    #[test]
    fn overflow_rows_examples() {
        assert_eq!(overflow_rows(&[3, 3, 1, 1], 2), 2);
        assert_eq!(overflow_rows(&[2, 1], 2), 0);
        assert_eq!(overflow_rows(&[2, 0], 2), 1);
    }

    #[test]
    fn early_steps_match_dual_rsk() {
        let s = run_until(2);
        assert_eq!(s.p0.rows(), &[vec![1, 3], vec![2, 4], vec![3], vec![]]);
        let s = run_until(4);
        assert_eq!(s.p0.rows(), &[vec![1, 1, 1, 3], vec![2, 2, 4], vec![3, 3], vec![4, 4]]);
        assert_eq!(s.q.rows(), &[vec![1, 2, 3, 4], vec![1, 2, 3], vec![1, 3], vec![3, 4]]);
    }

    #[test]
    fn time_seven_insertion_crosses_once() {
        let mut s = run_until(6);
        let path = s.insert(1, 7).unwrap();
        assert_eq!(path.winding, 1);
        assert_eq!(path.new_box(), (3, 3));
        assert_eq!(path.changed_cells(), vec![(1, 6), (3, 3)]);
        assert_eq!(path.iterations.len(), 2);
        assert_eq!(path.route().last(), Some(&(-1, 7)));
    }

    #[test]
    fn full_example_and_inverse() {
        let s = run_until(9);
        assert_eq!(
            s.p0.rows(),
            &[
                vec![1, 1, 1, 1, 1, 1],
                vec![2, 2, 2, 2, 4, 7],
                vec![3, 3, 5, 5],
                vec![4, 4]
            ]
        );
        assert_eq!(
            s.q.rows(),
            &[
                vec![1, 2, 3, 4, 5, 6],
                vec![1, 2, 3, 7, 9, 9],
                vec![1, 3, 7, 8],
                vec![3, 4]
            ]
        );
        assert_eq!(
            s.w.rows(),
            &[vec![0; 6], vec![0, 0, 0, 0, 1, 0], vec![0, 0, 1, 1], vec![0, 0]]
        );
        assert_eq!(s.overflow_rows(), 2);
        let a = InnovationArray::new(4, example_pairs()).unwrap();
        assert_eq!(cyl_rsk_invert(&s).unwrap(), a);
    }

    #[test]
    fn empty_and_single() {
        let s = cyl_rsk(&InnovationArray::empty(3), 5, &Partition::zeros(3)).unwrap();
        assert_eq!(s.p0.size(), 0);
        assert_eq!(cyl_rsk_invert(&s).unwrap(), InnovationArray::empty(3));
        let mut s = CylTriple::new(3, 5, &Partition::zeros(3)).unwrap();
        let path = s.insert(1, 1).unwrap();
        assert_eq!(path.new_box(), (1, 1));
        assert_eq!(path.winding, 0);
    }

    #[test]
    fn coordinates_split() {
        assert_eq!(coordinates(1, 4), (0, 1));
        assert_eq!(coordinates(4, 4), (0, 4));
        assert_eq!(coordinates(5, 4), (1, 1));
        assert_eq!(coordinates(8, 4), (1, 4));
        assert_eq!(coordinates(0, 4), (-1, 4));
    }

    #[test]
    fn degenerate_ring_rejected() {
        assert!(matches!(
            CylTriple::new(2, 2, &Partition::zeros(2)),
            Err(CylError::DegenerateRing { .. })
        ));
    }

    #[test]
    fn skew_start_round_trip() {
        let mu = Partition::new(&[2, 2, 1]).unwrap();
        let a = InnovationArray::new(4, vec![(1, 1), (1, 4), (2, 2), (3, 1), (3, 3)]).unwrap();
        assert_eq!(CylTriple::new(4, 6, &mu).unwrap().ledge(), vec![2, 2, 1, 0]);
        let s = cyl_rsk(&a, 6, &mu).unwrap();
        s.validate().unwrap();
        assert_eq!(cyl_rsk_invert(&s).unwrap(), a);
        let js = serde_json::to_string(&s).unwrap();
        let back: CylTriple = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s);
    }
}

//! Cylindrical Gelfand-Tsetlin patterns and their lattice-path encoding.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::shapes::{Order, Tableau};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GtError {
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("interlacing violated: {0}")]
    InterlacingViolated(String),
    #[error("malformed path: {0}")]
    MalformedPath(String),
    #[error("paths intersect at {0:?}")]
    PathsIntersect((i64, i64)),
}

/// Rows `x^1, ..., x^M` with `x^k` of length `min(k, N)`; rows past `M` repeat `x^M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CgtPattern {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub rows: Vec<Vec<i64>>,
}

impl CgtPattern {
    pub fn new(n: usize, l: usize, rows: Vec<Vec<i64>>) -> Result<Self, GtError> {
        let mut g = Self {
            n,
            l,
            m: rows.len(),
            rows,
        };
        g.validate()?;
        g.normalize();
        Ok(g)
    }

    /// `x^k_i` for 1-indexed `k >= 1` and `i <= min(k, N)`.
    pub fn x(&self, k: usize, i: usize) -> i64 {
        self.rows[k.min(self.m) - 1][i - 1]
    }

    /// Drops repeated trailing rows so that `M` is minimal (but at least `N`).
    pub fn normalize(&mut self) {
        while self.rows.len() > self.n && self.rows[self.rows.len() - 1] == self.rows[self.rows.len() - 2] {
            self.rows.pop();
        }
        self.m = self.rows.len();
    }

    pub fn validate(&self) -> Result<(), GtError> {
        let bad = |m: String| Err(GtError::InterlacingViolated(m));
        let n = self.n;
        if n == 0 || self.l <= n {
            return bad(format!("need 1 <= N < L, got N = {n}, L = {}", self.l));
        }
        if self.m != self.rows.len() || self.m < n {
            return bad(format!(
                "depth M = {} must equal the row count and be at least N",
                self.m
            ));
        }
        for (k, row) in self.rows.iter().enumerate() {
            if row.len() != (k + 1).min(n) {
                return bad(format!("row {} has length {}", k + 1, row.len()));
            }
            if row.iter().any(|&v| v < 0) || row.windows(2).any(|w| w[0] < w[1]) {
                return bad(format!("row {} is not nonnegative and weakly decreasing", k + 1));
            }
        }
        for k in 2..=self.m {
            let (hi, lo) = (&self.rows[k - 1], &self.rows[k - 2]);
            for (i, &v) in lo.iter().enumerate() {
                if v > hi[i] || hi.get(i + 1).is_some_and(|&w| w > v) {
                    return bad(format!("levels {} and {k} do not interlace at {}", k - 1, i + 1));
                }
            }
        }
        let d = (self.l - n) as i64;
        for k in 1..=self.m {
            if self.x(k, 1) - d > self.x(k + n - 1, n) {
                return bad(format!("cylindric bound fails at level {k}"));
            }
        }
        Ok(())
    }

    /// `(sh, ledge, redge)`: the stable row, the diagonal, and the first entries of levels `1..N`.
    pub fn extract(&self) -> (Vec<i64>, Vec<i64>, Vec<i64>) {
        let sh = self.rows[self.m - 1].clone();
        let ledge = (1..=self.n).map(|k| self.x(k, k)).collect();
        let redge = (1..=self.n).map(|k| self.x(k, 1)).collect();
        (sh, ledge, redge)
    }
}

/// `x^j_i` counts the entries `<= j` in row `i`; `M = max(N, largest entry)`.
pub fn tableau_to_cgt(t: &Tableau, n: usize, l: usize) -> Result<CgtPattern, GtError> {
    let bad = |m: &str| Err(GtError::InvalidTableau(m.to_string()));
    if t.nrows() > n || t.inner_parts().iter().any(|&c| c != 0) {
        return bad("expected a straight shape with at most N rows");
    }
    if t.entries().any(|(r, _, v)| v < r as i64) || !t.satisfies(Order::WeakInc, Order::StrictInc) {
        return bad("expected a column-strict tableau with row-i entries >= i");
    }
    let m = t.entries().map(|(_, _, v)| v as usize).max().unwrap_or(0).max(n);
    let row = |i: usize| if i < t.nrows() { t.row(i) } else { &[][..] };
    let rows = (1..=m)
        .map(|j| {
            (0..j.min(n))
                .map(|i| row(i).iter().filter(|&&v| v <= j as i64).count() as i64)
                .collect()
        })
        .collect();
    let mut g = CgtPattern { n, l, m, rows };
    g.validate()
        .map_err(|e| GtError::InvalidTableau(format!("pattern of tableau is not cylindric: {e}")))?;
    g.normalize();
    Ok(g)
}

/// Inverse of [`tableau_to_cgt`]: row `i` holds `x^j_i - x^{j-1}_i` copies of `j`.
pub fn cgt_to_tableau(g: &CgtPattern) -> Result<Tableau, GtError> {
    g.validate()?;
    let rows = (1..=g.n)
        .map(|i| {
            let mut row = Vec::new();
            let mut prev = 0;
            for j in i..=g.m {
                let cur = g.x(j, i);
                row.extend(std::iter::repeat_n(j as i64, (cur - prev) as usize));
                prev = cur;
            }
            row
        })
        .collect();
    Tableau::new(rows).map_err(|e| GtError::InterlacingViolated(e.to_string()))
}

/// Up-right lattice paths `P_1..P_N` as vertex lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathFamily {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub paths: Vec<Vec<(i64, i64)>>,
}

impl PathFamily {
    /// `S(a, b) = (a - (L - N), b + M)` applied `times` times (negative for the inverse).
    pub fn shift(&self, (a, b): (i64, i64), times: i64) -> (i64, i64) {
        let d = (self.l - self.n) as i64;
        (a - times * d, b + times * self.m as i64)
    }

    pub fn endpoints(&self) -> Vec<((i64, i64), (i64, i64))> {
        self.paths
            .iter()
            .map(|p| (p[0], *p.last().expect("nonempty path")))
            .collect()
    }

    /// Checks that no vertex is shared within the family or with its `S` and `S^-1` copies.
    pub fn check_disjoint(&self) -> Result<(), GtError> {
        let mut seen = HashSet::new();
        for times in -1..=1 {
            for p in &self.paths {
                for &v in p {
                    let w = self.shift(v, times);
                    if !seen.insert(w) {
                        return Err(GtError::PathsIntersect(w));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `P_k` starts at `(x^k_k - k, k + 1)` and at height `r` runs from `x^{r-1}_k - k` to `x^r_k - k`.
pub fn cgt_to_paths(g: &CgtPattern) -> Result<PathFamily, GtError> {
    g.validate()?;
    let paths = (1..=g.n)
        .map(|k| {
            let shift = k as i64;
            let mut p = Vec::new();
            for r in k + 1..=g.m.max(k + 1) {
                for a in g.x(r - 1, k)..=g.x(r, k) {
                    p.push((a - shift, r as i64));
                }
            }
            p
        })
        .collect();
    let f = PathFamily {
        n: g.n,
        l: g.l,
        m: g.m,
        paths,
    };
    f.check_disjoint()?;
    Ok(f)
}

pub fn paths_to_cgt(f: &PathFamily) -> Result<CgtPattern, GtError> {
    let bad = |m: String| Err(GtError::MalformedPath(m));
    if f.paths.len() != f.n || f.m < f.n {
        return bad(format!("expected {} paths and M >= N", f.n));
    }
    f.check_disjoint()?;
    let mut cols: Vec<Vec<i64>> = Vec::with_capacity(f.n);
    for (idx, p) in f.paths.iter().enumerate() {
        let k = idx + 1;
        let top = f.m.max(k + 1);
        if p.first().map(|v| v.1) != Some(k as i64 + 1) || p.last().map(|v| v.1) != Some(top as i64) {
            return bad(format!("path {k} must run from height {} to {top}", k + 1));
        }
        if p.windows(2)
            .any(|w| (w[1].0 - w[0].0, w[1].1 - w[0].1) != (1, 0) && (w[1].0 - w[0].0, w[1].1 - w[0].1) != (0, 1))
        {
            return bad(format!("path {k} is not an up-right path"));
        }
        let mut xs = vec![p[0].0 + k as i64];
        for r in k + 1..=f.m {
            let last = p
                .iter()
                .rev()
                .find(|v| v.1 == r as i64)
                .expect("heights are contiguous");
            xs.push(last.0 + k as i64);
        }
        cols.push(xs);
    }
    let rows = (1..=f.m)
        .map(|r| (1..=r.min(f.n)).map(|k| cols[k - 1][r - k]).collect())
        .collect();
    CgtPattern::new(f.n, f.l, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> Tableau {
        Tableau::new(vec![vec![1, 2, 3, 3], vec![2, 3, 4, 4], vec![3, 4], vec![4, 7]]).unwrap()
    }

    #[test]
    fn worked_example() {
        let g = tableau_to_cgt(&example(), 4, 7).unwrap();
        assert_eq!(g.m, 7);
        assert_eq!(g.rows[0], vec![1]);
        assert_eq!(g.rows[1], vec![2, 1]);
        assert_eq!(g.rows[2], vec![4, 2, 1]);
        for k in 3..6 {
            assert_eq!(g.rows[k], vec![4, 4, 2, 1]);
        }
        assert_eq!(g.rows[6], vec![4, 4, 2, 2]);
        let (sh, ledge, redge) = g.extract();
        assert_eq!(sh, vec![4, 4, 2, 2]);
        assert_eq!(ledge, vec![1, 1, 1, 1]);
        assert_eq!(redge, vec![1, 2, 4, 4]);
        assert_eq!(cgt_to_tableau(&g).unwrap(), example());

        let f = cgt_to_paths(&g).unwrap();
        let ends: Vec<_> = f.endpoints();
        for (k, (start, end)) in ends.iter().enumerate() {
            let k1 = k as i64 + 1;
            assert_eq!(*start, (ledge[k] - k1, k1 + 1));
            assert_eq!(*end, (sh[k] - k1, 7));
        }
        assert_eq!(paths_to_cgt(&f).unwrap(), g);
    }

    #[test]
    fn empty_tableau() {
        let g = tableau_to_cgt(&Tableau::empty(3), 3, 5).unwrap();
        assert_eq!(g.m, 3);
        assert!(g.rows.iter().flatten().all(|&v| v == 0));
        assert_eq!(g.extract(), (vec![0; 3], vec![0; 3], vec![0; 3]));
        assert_eq!(cgt_to_tableau(&g).unwrap().size(), 0);
    }

    #[test]
    fn constant_pattern_has_vertical_paths() {
        let t = Tableau::new(vec![vec![1, 1], vec![2, 2], vec![3]]).unwrap();
        let g = tableau_to_cgt(&t, 3, 5).unwrap();
        let f = cgt_to_paths(&g).unwrap();
        for p in &f.paths {
            assert!(p.iter().all(|v| v.0 == p[0].0));
        }
    }

    #[test]
    fn rejects_bad_patterns() {
        assert!(CgtPattern::new(2, 4, vec![vec![1], vec![0, 2]]).is_err());
        assert!(CgtPattern::new(2, 3, vec![vec![3], vec![3, 0]]).is_err());
        assert!(tableau_to_cgt(&Tableau::new(vec![vec![2]]).unwrap(), 2, 4).is_ok());
        assert!(tableau_to_cgt(&Tableau::new(vec![vec![1], vec![1]]).unwrap(), 2, 4).is_err());
    }
}

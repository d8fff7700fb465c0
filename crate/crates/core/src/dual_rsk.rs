//! Classical dual RSK by column insertion.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::shapes::{Order, Tableau};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RskError {
    #[error("time {0} must be at least 1")]
    InvalidTime(i64),
    #[error("letter {letter} outside [1, {n}]")]
    InvalidLetter { letter: i64, n: usize },
    #[error("pairs out of lexicographic order at index {0}")]
    Unordered(usize),
    #[error("pair repeated at index {0}")]
    DuplicatePair(usize),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("not in the image of the forward map: {0}")]
    NotInImage(String),
}

/// Lexicographically ordered `(time, letter)` pairs with letters in `[1, N]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InnovationArray {
    #[serde(rename = "N")]
    pub n: usize,
    pub pairs: Vec<(i64, i64)>,
}

impl InnovationArray {
    pub fn new(n: usize, pairs: Vec<(i64, i64)>) -> Result<Self, RskError> {
        let a = Self { n, pairs };
        a.validate()?;
        Ok(a)
    }

    pub fn empty(n: usize) -> Self {
        Self { n, pairs: Vec::new() }
    }

    pub fn validate(&self) -> Result<(), RskError> {
        for (i, &(t, b)) in self.pairs.iter().enumerate() {
            if t < 1 {
                return Err(RskError::InvalidTime(t));
            }
            if b < 1 || b as usize > self.n {
                return Err(RskError::InvalidLetter { letter: b, n: self.n });
            }
            if i > 0 {
                let prev = self.pairs[i - 1];
                if prev == (t, b) {
                    return Err(RskError::DuplicatePair(i));
                }
                if prev > (t, b) {
                    return Err(RskError::Unordered(i));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs with time at most `t`.
    pub fn truncated(&self, t: i64) -> Self {
        Self {
            n: self.n,
            pairs: self.pairs.iter().copied().filter(|p| p.0 <= t).collect(),
        }
    }
}

/// Cells visited by one column insertion; the last cell is the new box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertionPath {
    pub cells: Vec<(usize, usize)>,
    pub new_box: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RskPair {
    #[serde(rename = "P")]
    pub p: Tableau,
    #[serde(rename = "Q")]
    pub q: Tableau,
}

fn check_p(t: &Tableau) -> Result<(), RskError> {
    if t.inner_parts().iter().any(|&c| c != 0) {
        return Err(RskError::InvalidTableau("skew P tableau".into()));
    }
    if !t.satisfies(Order::WeakInc, Order::StrictInc) {
        return Err(RskError::InvalidTableau("not column-strict and row-weak".into()));
    }
    Ok(())
}

/// Column-inserts `b`: in each column replace the uppermost entry `>= b`
/// and carry the displaced entry to the next column, or append at the
/// bottom when every entry is smaller.
pub fn column_insert(t: &Tableau, b: i64) -> Result<(Tableau, InsertionPath), RskError> {
    check_p(t)?;
    let mut rows: Vec<Vec<i64>> = t.rows().to_vec();
    let path = insert_rows(&mut rows, b);
    Ok((Tableau::from_raw(vec![0; rows.len()], rows), path))
}

fn insert_rows(rows: &mut Vec<Vec<i64>>, b: i64) -> InsertionPath {
    let mut v = b;
    let mut cells = Vec::new();
    let mut c = 0usize;
    loop {
        let height = rows.iter().take_while(|r| r.len() > c).count();
        match (0..height).find(|&i| rows[i][c] >= v) {
            Some(i) => {
                let old = std::mem::replace(&mut rows[i][c], v);
                cells.push((i + 1, c + 1));
                v = old;
                c += 1;
            }
            None => {
                if height == rows.len() {
                    rows.push(Vec::new());
                }
                rows[height].push(v);
                cells.push((height + 1, c + 1));
                return InsertionPath {
                    new_box: (height + 1, c + 1),
                    cells,
                };
            }
        }
    }
}

/// Runs the insertions and records creation times in `Q`.
pub fn dual_rsk(a: &InnovationArray) -> Result<RskPair, RskError> {
    a.validate()?;
    let (pair, _) = dual_rsk_with_paths(a);
    Ok(pair)
}

/// Forward map returning the insertion path of every pair.
pub fn dual_rsk_with_paths(a: &InnovationArray) -> (RskPair, Vec<InsertionPath>) {
    let mut p: Vec<Vec<i64>> = Vec::new();
    let mut q: Vec<Vec<i64>> = Vec::new();
    let mut paths = Vec::with_capacity(a.len());
    for &(t, b) in &a.pairs {
        let path = insert_rows(&mut p, b);
        let (r, _) = path.new_box;
        if q.len() < r {
            q.push(Vec::new());
        }
        q[r - 1].push(t);
        paths.push(path);
    }
    let n = p.len();
    (
        RskPair {
            p: Tableau::from_raw(vec![0; n], p),
            q: Tableau::from_raw(vec![0; n], q),
        },
        paths,
    )
}

/// Exact inverse: repeatedly removes the southernmost box with the largest
/// time and reverse-bumps it out of the first column.
pub fn dual_rsk_invert(pair: &RskPair, n: usize) -> Result<InnovationArray, RskError> {
    check_p(&pair.p)?;
    if pair.p.outer() != pair.q.outer() || pair.q.inner_parts().iter().any(|&c| c != 0) {
        return Err(RskError::NotInImage("P and Q shapes differ".into()));
    }
    let mut p: Vec<Vec<i64>> = pair.p.rows().to_vec();
    let mut q: Vec<Vec<i64>> = pair.q.rows().to_vec();
    let mut out = Vec::new();
    loop {
        let mut best: Option<(i64, usize)> = None;
        for (i, row) in q.iter().enumerate() {
            if let Some(&t) = row.last() {
                if best.is_none_or(|(bt, _)| t >= bt) {
                    best = Some((t, i));
                }
            }
        }
        let Some((t, i)) = best else { break };
        if row_has_time_inside(&q[i], t) {
            return Err(RskError::NotInImage(format!(
                "time {t} not at the end of row {}",
                i + 1
            )));
        }
        if i + 1 < p.len() && p[i + 1].len() >= p[i].len() {
            return Err(RskError::NotInImage(format!("row {} end is not a corner", i + 1)));
        }
        q[i].pop();
        let mut v = p[i].pop().expect("shapes agree");
        let mut c = p[i].len();
        while c > 0 {
            c -= 1;
            let height = p.iter().take_while(|r| r.len() > c).count();
            let Some(j) = (0..height).rev().find(|&j| p[j][c] <= v) else {
                return Err(RskError::NotInImage(format!("no entry <= {v} in column {}", c + 1)));
            };
            v = std::mem::replace(&mut p[j][c], v);
        }
        out.push((t, v));
    }
    out.reverse();
    let a = InnovationArray { n, pairs: out };
    a.validate()
        .map_err(|e| RskError::NotInImage(format!("recovered array invalid: {e}")))?;
    if &dual_rsk(&a)? != pair {
        return Err(RskError::NotInImage("forward map does not reproduce the pair".into()));
    }
    Ok(a)
}

fn row_has_time_inside(row: &[i64], t: i64) -> bool {
    row.len() > 1 && row[..row.len() - 1].iter().any(|&x| x > t)
}

fn shared_columns<'a, T: Copy + PartialEq>(a: &'a [(T, T)], b: &'a [(T, T)]) -> impl Iterator<Item = (T, T)> + 'a {
    a.iter()
        .filter_map(move |&(ra, ca)| b.iter().find(|&&(_, cb)| cb == ca).map(|&(rb, _)| (ra, rb)))
}

/// `a` lies strictly below `b` on every column both paths visit.
pub fn strictly_below<T: Copy + PartialOrd>(a: &[(T, T)], b: &[(T, T)]) -> bool {
    shared_columns(a, b).all(|(ra, rb)| ra > rb)
}

/// `a` lies weakly above `b` on every column both paths visit.
pub fn weakly_above<T: Copy + PartialOrd>(a: &[(T, T)], b: &[(T, T)]) -> bool {
    shared_columns(a, b).all(|(ra, rb)| ra <= rb)
}

/// Order relations between consecutive insertion paths `first` then `second`
/// of letters `a` then `b`, as a list of violated statements.
pub fn pair_lemma_violations(a: i64, first: &InsertionPath, b: i64, second: &InsertionPath) -> Vec<String> {
    let mut out = Vec::new();
    let ((r1, c1), (r2, c2)) = (first.new_box, second.new_box);
    if a < b {
        if !strictly_below(&second.cells, &first.cells) {
            out.push(format!("path of {b} is not strictly below path of {a}"));
        }
        if !(r2 > r1 && c2 <= c1) {
            out.push(format!(
                "new box of {b} is not strictly south and weakly west of that of {a}"
            ));
        }
    } else {
        if !weakly_above(&second.cells, &first.cells) {
            out.push(format!("path of {b} is not weakly above path of {a}"));
        }
        if !(r2 <= r1 && c2 > c1) {
            out.push(format!(
                "new box of {b} is not weakly north and strictly east of that of {a}"
            ));
        }
    }
    out
}

/// Order relations for three successive insertions of `a1 < b < a2`, inserted
/// in the order `a1`, `a2`, `b` with paths `r1`, `r2`, `r3`.
pub fn three_insertion_violations(
    (a1, r1): (i64, &InsertionPath),
    (a2, r2): (i64, &InsertionPath),
    (b, r3): (i64, &InsertionPath),
) -> Vec<String> {
    let mut out = Vec::new();
    if !(a1 < b && b < a2) {
        out.push(format!("letters {a1}, {b}, {a2} are not interleaved"));
        return out;
    }
    if !weakly_above(&r3.cells, &r2.cells) {
        out.push(format!("path of {b} is not weakly above path of {a2}"));
    }
    if !strictly_below(&r3.cells, &r1.cells) {
        out.push(format!("path of {b} is not strictly below path of {a1}"));
    }
    let ((r1r, c1), (r2r, c2), (r3r, c3)) = (r1.new_box, r2.new_box, r3.new_box);
    if !(r3r > r1r && c3 <= c1) {
        out.push(format!("new box of {b} is not southwest of that of {a1}"));
    }
    if !(r3r <= r2r && c3 > c2) {
        out.push(format!("new box of {b} is not northeast of that of {a2}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(rows: Vec<Vec<i64>>) -> Tableau {
        Tableau::new(rows).unwrap()
    }

    #[test]
    fn column_insert_examples() {
        let (p, path) = column_insert(&t(vec![vec![1], vec![3], vec![4]]), 2).unwrap();
        assert_eq!(p.rows(), &[vec![1, 3], vec![2], vec![4]]);
        assert_eq!(path.cells, vec![(2, 1), (1, 2)]);
        assert_eq!(path.new_box, (1, 2));
        let (p, _) = column_insert(&p, 3).unwrap();
        assert_eq!(p.rows(), &[vec![1, 3], vec![2, 4], vec![3]]);
        let (p, path) = column_insert(&Tableau::empty(0), 5).unwrap();
        assert_eq!(p.rows(), &[vec![5]]);
        assert_eq!(path.cells, vec![(1, 1)]);
    }

    #[test]
    fn rejects_invalid_tableau() {
        assert!(column_insert(&t(vec![vec![2], vec![1]]), 1).is_err());
    }

    #[test]
    fn forward_example_and_inverse() {
        let a = InnovationArray::new(4, vec![(1, 1), (1, 3), (1, 4), (2, 2), (2, 3)]).unwrap();
        let pair = dual_rsk(&a).unwrap();
        assert_eq!(pair.p.rows(), &[vec![1, 3], vec![2, 4], vec![3]]);
        assert_eq!(pair.q.rows(), &[vec![1, 2], vec![1, 2], vec![1]]);
        assert_eq!(dual_rsk_invert(&pair, 4).unwrap(), a);
    }

    #[test]
    fn trivial_cases() {
        let e = InnovationArray::empty(3);
        let pair = dual_rsk(&e).unwrap();
        assert_eq!(pair.p.size(), 0);
        assert_eq!(dual_rsk_invert(&pair, 3).unwrap(), e);
        let one = InnovationArray::new(3, vec![(1, 2)]).unwrap();
        let pair = dual_rsk(&one).unwrap();
        assert_eq!(pair.p.rows(), &[vec![2]]);
        assert_eq!(pair.q.rows(), &[vec![1]]);
    }

    #[test]
    fn array_validation() {
        assert_eq!(
            InnovationArray::new(2, vec![(1, 3)]),
            Err(RskError::InvalidLetter { letter: 3, n: 2 })
        );
        assert_eq!(
            InnovationArray::new(2, vec![(2, 1), (1, 1)]),
            Err(RskError::Unordered(1))
        );
        assert_eq!(
            InnovationArray::new(2, vec![(1, 1), (1, 1)]),
            Err(RskError::DuplicatePair(1))
        );
        assert_eq!(InnovationArray::new(2, vec![(0, 1)]), Err(RskError::InvalidTime(0)));
    }

    #[test]
    fn inverse_rejects_foreign_pair() {
        let pair = RskPair {
            p: t(vec![vec![1, 1]]),
            q: t(vec![vec![2, 1]]),
        };
        assert!(dual_rsk_invert(&pair, 2).is_err());
    }

    #[test]
    fn consecutive_insertion_order() {
        let (_, p1) = column_insert(&t(vec![vec![1, 2], vec![3]]), 2).unwrap();
        let base = column_insert(&t(vec![vec![1, 2], vec![3]]), 2).unwrap().0;
        let (_, p2) = column_insert(&base, 3).unwrap();
        assert!(pair_lemma_violations(2, &p1, 3, &p2).is_empty());
        let (_, p3) = column_insert(&base, 1).unwrap();
        assert!(pair_lemma_violations(2, &p1, 1, &p3).is_empty());
    }

    #[test]
    fn array_json_shape() {
        let a = InnovationArray::new(4, vec![(1, 1), (1, 3)]).unwrap();
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, r#"{"N":4,"pairs":[[1,1],[1,3]]}"#);
    }
}

//! Flagged Schur operators `Λ` and `Π`, their determinant forms, the
//! inversion identity and the broken-tableau cancellation.
//!
//! Row `i` of every filling takes entries in `{i+1, ..., N}`; row `N` is
//! therefore always empty. `Λ(z, y)` sums SSYT of shape `z/y`. `Π(z, y)` is
//! `(-1)^{|z/y|}` times the sum over anti-coSSYT of shape `z/y`: rows
//! strictly decreasing left to right, columns weakly decreasing top to
//! bottom.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::{poly_det, SparsePolynomial};
use crate::shapes::{Monomial, Order, Partition, Tableau};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchurError {
    #[error("filling does not cover the skew shape {outer}/{inner}")]
    ShapeMismatch { outer: Partition, inner: Partition },
    #[error("entry {entry} in row {row} outside {{row+1..N}} with N = {n}")]
    EntryOutOfFlag { entry: i64, row: usize, n: usize },
}

/// Row and column rules plus per-row entry bounds for a filling family.
#[derive(Clone, Copy, Debug)]
pub struct Flag {
    pub along_rows: Order,
    pub down_columns: Order,
    /// Inclusive bounds for row `i` (1-indexed), as functions of `(i, N)`.
    pub lo: fn(usize, usize) -> i64,
    pub hi: fn(usize, usize) -> i64,
}

fn above_row(i: usize, _n: usize) -> i64 {
    i as i64 + 1
}

fn top(_i: usize, n: usize) -> i64 {
    n as i64
}

fn one(_i: usize, _n: usize) -> i64 {
    1
}

fn n_minus_row(i: usize, n: usize) -> i64 {
    n as i64 - i as i64
}

/// SSYT with row-`i` entries in `{i+1..N}`.
pub const LAMBDA_FLAG: Flag = Flag {
    along_rows: Order::WeakInc,
    down_columns: Order::StrictInc,
    lo: above_row,
    hi: top,
};

/// Anti-coSSYT with row-`i` entries in `{i+1..N}`.
pub const PI_FLAG: Flag = Flag {
    along_rows: Order::StrictDec,
    down_columns: Order::WeakDec,
    lo: above_row,
    hi: top,
};

/// coSSYT (rows strict, columns weak, both increasing) with row-`i` entries in `{1..N-i}`.
pub const PI_CO_FLAG: Flag = Flag {
    along_rows: Order::StrictInc,
    down_columns: Order::WeakInc,
    lo: one,
    hi: n_minus_row,
};

/// Visits every filling of `outer / inner` obeying `flag`.
pub fn for_each_filling(outer: &Partition, inner: &Partition, n: usize, flag: Flag, visit: &mut dyn FnMut(&Tableau)) {
    let rows = outer.len().max(inner.len());
    if !outer.contains(inner) {
        return;
    }
    let inner_v: Vec<usize> = (0..rows).map(|i| inner.get(i)).collect();
    let lens: Vec<usize> = (0..rows).map(|i| outer.get(i) - inner.get(i)).collect();
    let mut t = Tableau::from_raw(inner_v, vec![Vec::new(); rows]);
    let cells: Vec<(usize, usize)> = (0..rows).flat_map(|i| (0..lens[i]).map(move |j| (i, j))).collect();
    fill_rec(&mut t, &cells, 0, n, flag, visit);
}

fn fill_rec(
    t: &mut Tableau,
    cells: &[(usize, usize)],
    k: usize,
    n: usize,
    flag: Flag,
    visit: &mut dyn FnMut(&Tableau),
) {
    if k == cells.len() {
        visit(t);
        return;
    }
    let (i, j) = cells[k];
    let r = i + 1;
    let c = t.inner_parts()[i] + j + 1;
    let lo = (flag.lo)(r, n);
    let hi = (flag.hi)(r, n);
    let left = if j > 0 { Some(t.row(i)[j - 1]) } else { None };
    let up = t.get(r - 1, c);
    for v in lo..=hi {
        if let Some(a) = left {
            if !flag.along_rows.holds(a, v) {
                continue;
            }
        }
        if let Some(a) = up {
            if !flag.down_columns.holds(a, v) {
                continue;
            }
        }
        t.row_mut(i).push(v);
        fill_rec(t, cells, k + 1, n, flag, visit);
        t.row_mut(i).pop();
    }
}

fn weight_sum(z: &Partition, y: &Partition, n: usize, flag: Flag, reverse: bool) -> SparsePolynomial {
    let mut counts: BTreeMap<Monomial, i64> = BTreeMap::new();
    for_each_filling(z, y, n, flag, &mut |t| {
        let mut m = Monomial::one(n);
        for (_, _, v) in t.entries() {
            let k = if reverse { n + 1 - v as usize } else { v as usize };
            m.exponents[k - 1] += 1;
        }
        *counts.entry(m).or_insert(0) += 1;
    });
    let mut p = SparsePolynomial::zero(n);
    for (m, c) in counts {
        p.add_term(m, BigInt::from(c));
    }
    p
}

fn skew_sign(z: &Partition, y: &Partition) -> i64 {
    if (z.size() - y.size()).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `Λ(z, y)` by enumeration; zero unless `y ⊆ z`.
pub fn lambda_enum(z: &Partition, y: &Partition, n: usize) -> SparsePolynomial {
    if !z.contains(y) {
        return SparsePolynomial::zero(n);
    }
    weight_sum(z, y, n, LAMBDA_FLAG, false)
}

/// `Π(z, y)` by enumeration of anti-coSSYT; zero unless `y ⊆ z`.
pub fn pi_enum(z: &Partition, y: &Partition, n: usize) -> SparsePolynomial {
    if !z.contains(y) {
        return SparsePolynomial::zero(n);
    }
    weight_sum(z, y, n, PI_FLAG, false).scale(&BigInt::from(skew_sign(z, y)))
}

/// `Π(z, y)` through the coSSYT form with reversed weights `-p_{N+1-k}`.
pub fn pi_enum_cossyt(z: &Partition, y: &Partition, n: usize) -> SparsePolynomial {
    if !z.contains(y) {
        return SparsePolynomial::zero(n);
    }
    weight_sum(z, y, n, PI_CO_FLAG, true).scale(&BigInt::from(skew_sign(z, y)))
}

/// Complete homogeneous symmetric polynomial `h_k` in the listed variables (1-indexed).
pub fn h_poly(k: i64, vars: &[usize], n: usize) -> SparsePolynomial {
    sym_poly(k, vars, n, true)
}

/// Elementary symmetric polynomial `e_k` in the listed variables (1-indexed).
pub fn e_poly(k: i64, vars: &[usize], n: usize) -> SparsePolynomial {
    sym_poly(k, vars, n, false)
}

fn sym_poly(k: i64, vars: &[usize], n: usize, repeat: bool) -> SparsePolynomial {
    if k < 0 {
        return SparsePolynomial::zero(n);
    }
    let mut out = SparsePolynomial::zero(n);
    let mut m = Monomial::one(n);
    fn rec(k: usize, start: usize, vars: &[usize], repeat: bool, m: &mut Monomial, out: &mut SparsePolynomial) {
        if k == 0 {
            out.add_term(m.clone(), BigInt::from(1));
            return;
        }
        for idx in start..vars.len() {
            m.exponents[vars[idx] - 1] += 1;
            let next = if repeat { idx } else { idx + 1 };
            rec(k - 1, next, vars, repeat, m, out);
            m.exponents[vars[idx] - 1] -= 1;
        }
    }
    rec(k as usize, 0, vars, repeat, &mut m, &mut out);
    out
}

fn window(from: usize, n: usize) -> Vec<usize> {
    (from..=n).collect()
}

/// Flagged Jacobi–Trudi form: `det[h_{z_i - y_j - i + j}(p_{j+1}, ..., p_N)]`.
pub fn lambda_det(z: &Partition, y: &Partition, n: usize) -> SparsePolynomial {
    let m: Vec<Vec<SparsePolynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let k = z.get(i) as i64 - y.get(j) as i64 - i as i64 + j as i64;
                    h_poly(k, &window(j + 2, n), n)
                })
                .collect()
        })
        .collect();
    poly_det(&m, n)
}

/// Dual form: `(-1)^{|z/y|} det[e_{z_i - y_j - i + j}(p_{i+1}, ..., p_N)]`.
pub fn pi_det(z: &Partition, y: &Partition, n: usize) -> SparsePolynomial {
    if !z.contains(y) {
        return SparsePolynomial::zero(n);
    }
    let m: Vec<Vec<SparsePolynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let k = z.get(i) as i64 - y.get(j) as i64 - i as i64 + j as i64;
                    e_poly(k, &window(i + 2, n), n)
                })
                .collect()
        })
        .collect();
    poly_det(&m, n).scale(&BigInt::from(skew_sign(z, y)))
}

/// `Σ_{x ⊆ y ⊆ z} Λ(y, x) Π(z, y)`.
pub fn inversion_sum(x: &Partition, z: &Partition, n: usize) -> SparsePolynomial {
    let mut total = SparsePolynomial::zero(n);
    if !z.contains(x) {
        return total;
    }
    for y in Partition::interval(x, z) {
        let l = lambda_enum(&y, x, n);
        if l.is_zero() {
            continue;
        }
        let p = pi_enum(z, &y, n);
        total = &total + &(&l * &p);
    }
    total
}

/// Whether the inversion sum equals `1_{x = z}`.
pub fn verify_inversion(x: &Partition, z: &Partition, n: usize) -> bool {
    let s = inversion_sum(x, z, n);
    if x == z {
        s.is_one()
    } else {
        s.is_zero()
    }
}

/// Result of scanning the middle partitions for one broken filling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrokenSum {
    pub signed_sum: i64,
    pub admissible: usize,
}

/// Sums `(-1)^{|z/y|}` over all `y` such that `r` restricted to `y/x` is an
/// SSYT and restricted to `z/y` is an anti-coSSYT.
pub fn broken_signed_sum(z: &Partition, x: &Partition, r: &Tableau, n: usize) -> Result<BrokenSum, SchurError> {
    let rows = z.len().max(x.len());
    let mismatch = || SchurError::ShapeMismatch {
        outer: z.clone(),
        inner: x.clone(),
    };
    if r.nrows() > rows && r.rows()[rows..].iter().any(|row| !row.is_empty()) {
        return Err(mismatch());
    }
    for i in 0..rows {
        let off = r.inner_parts().get(i).copied().unwrap_or(0);
        let len = if i < r.nrows() { r.row(i).len() } else { 0 };
        if off != x.get(i) || off + len != z.get(i) {
            return Err(mismatch());
        }
    }
    for (row, _, v) in r.entries() {
        if v <= row as i64 || v > n as i64 {
            return Err(SchurError::EntryOutOfFlag { entry: v, row, n });
        }
    }
    let mut out = BrokenSum {
        signed_sum: 0,
        admissible: 0,
    };
    for y in Partition::interval(x, z) {
        if is_broken(r, x, &y) {
            out.admissible += 1;
            out.signed_sum += skew_sign(z, &y);
        }
    }
    Ok(out)
}

fn is_broken(r: &Tableau, x: &Partition, y: &Partition) -> bool {
    let rows = r.nrows();
    let mut lower_rows = Vec::with_capacity(rows);
    let mut upper_rows = Vec::with_capacity(rows);
    for i in 0..rows {
        let split = y.get(i) - x.get(i);
        lower_rows.push(r.row(i)[..split].to_vec());
        upper_rows.push(r.row(i)[split..].to_vec());
    }
    let lower = Tableau::from_raw((0..rows).map(|i| x.get(i)).collect(), lower_rows);
    let upper = Tableau::from_raw((0..rows).map(|i| y.get(i)).collect(), upper_rows);
    lower.satisfies(LAMBDA_FLAG.along_rows, LAMBDA_FLAG.down_columns)
        && upper.satisfies(PI_FLAG.along_rows, PI_FLAG.down_columns)
}

/// Every filling of `z/x` with row-`i` entries in `{i+1..N}` and no order constraints.
pub fn all_flagged_fillings(z: &Partition, x: &Partition, n: usize) -> Vec<Tableau> {
    let free = Flag {
        along_rows: Order::WeakInc,
        down_columns: Order::WeakInc,
        lo: above_row,
        hi: top,
    };
    let mut out = Vec::new();
    if !z.contains(x) {
        return out;
    }
    let rows = z.len().max(x.len());
    let inner: Vec<usize> = (0..rows).map(|i| x.get(i)).collect();
    let lens: Vec<usize> = (0..rows).map(|i| z.get(i) - x.get(i)).collect();
    let cells: Vec<(usize, usize)> = (0..rows).flat_map(|i| (0..lens[i]).map(move |j| (i, j))).collect();
    let mut t = Tableau::from_raw(inner, vec![Vec::new(); rows]);
    fn rec(t: &mut Tableau, cells: &[(usize, usize)], k: usize, n: usize, flag: Flag, out: &mut Vec<Tableau>) {
        if k == cells.len() {
            out.push(t.clone());
            return;
        }
        let (i, _) = cells[k];
        for v in (flag.lo)(i + 1, n)..=(flag.hi)(i + 1, n) {
            t.row_mut(i).push(v);
            rec(t, cells, k + 1, n, flag, out);
            t.row_mut(i).pop();
        }
    }
    rec(&mut t, &cells, 0, n, free, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[i64]) -> Partition {
        Partition::new(parts).unwrap()
    }

    #[test]
    fn lambda_enum_examples() {
        assert!(lambda_enum(&p(&[2, 1]), &p(&[2, 1]), 2).is_one());
        assert_eq!(lambda_enum(&p(&[1, 0]), &p(&[0, 0]), 2), SparsePolynomial::var(2, 2));
        assert!(lambda_enum(&p(&[1, 0]), &p(&[2, 0]), 2).is_zero());
    }

    #[test]
    fn pi_enum_examples() {
        assert!(pi_enum(&p(&[1, 1]), &p(&[1, 1]), 2).is_one());
        assert_eq!(pi_enum(&p(&[1, 0]), &p(&[0, 0]), 2), -&SparsePolynomial::var(2, 2));
        assert!(pi_enum(&p(&[1, 0]), &p(&[2, 0]), 2).is_zero());
    }

    #[test]
    fn determinant_forms_in_small_box() {
        let n = 2;
        let all = Partition::all_in_box(&[3, 3], n);
        for z in &all {
            for y in &all {
                assert_eq!(lambda_det(z, y, n), lambda_enum(z, y, n), "Λ({z},{y})");
                assert_eq!(pi_det(z, y, n), pi_enum(z, y, n), "Π({z},{y})");
            }
        }
        assert_eq!(lambda_det(&p(&[1, 0]), &p(&[0, 0]), 2), SparsePolynomial::var(2, 2));
    }

    #[test]
    fn two_term_inversion_example() {
        let x = p(&[0, 0]);
        let z = p(&[1, 0]);
        let s = inversion_sum(&x, &z, 2);
        assert!(s.is_zero());
        assert!(verify_inversion(&z, &z, 2));
    }

    #[test]
    fn hand_checked_three_row_cancellation() {
        // Λ(110,000) = p2 p3, Π(110,000) = p3^2, Π(110,100) = -p3.
        let n = 3;
        let z = p(&[1, 1, 0]);
        let x = p(&[0, 0, 0]);
        let p2 = SparsePolynomial::var(n, 2);
        let p3 = SparsePolynomial::var(n, 3);
        assert_eq!(lambda_enum(&z, &x, n), &p2 * &p3);
        assert_eq!(pi_enum(&z, &x, n), &p3 * &p3);
        assert_eq!(pi_enum(&z, &p(&[1, 0, 0]), n), -&p3);
        assert!(verify_inversion(&x, &z, n));
    }

    #[test]
    fn cossyt_form_matches() {
        let n = 3;
        let all = Partition::all_in_box(&[3, 3, 3], n);
        for z in &all {
            for y in all.iter().filter(|y| z.contains(y)) {
                assert_eq!(pi_enum_cossyt(z, y, n), pi_enum(z, y, n));
            }
        }
    }

    #[test]
    fn broken_sum_examples() {
        let z = p(&[1, 0]);
        let x = p(&[0, 0]);
        let r = Tableau::skew(vec![0, 0], vec![vec![2], vec![]]).unwrap();
        let s = broken_signed_sum(&z, &x, &r, 2).unwrap();
        assert_eq!(
            s,
            BrokenSum {
                signed_sum: 0,
                admissible: 2
            }
        );
        let empty = Tableau::skew(vec![1, 0], vec![vec![], vec![]]).unwrap();
        let s = broken_signed_sum(&z, &z, &empty, 2).unwrap();
        assert_eq!(
            s,
            BrokenSum {
                signed_sum: 1,
                admissible: 1
            }
        );
    }

    #[test]
    fn symmetric_polynomials() {
        assert!(h_poly(0, &[], 2).is_one());
        assert!(h_poly(1, &[], 2).is_zero());
        assert!(e_poly(-1, &[1, 2], 2).is_zero());
        assert_eq!(h_poly(2, &[1, 2], 2).num_terms(), 3);
        assert_eq!(e_poly(2, &[1, 2], 2).num_terms(), 1);
    }
}

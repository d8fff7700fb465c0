//! Small dense determinants.

use num_complex::Complex64;

use crate::scalar::Scalar;

/// Determinant by Gaussian elimination with partial pivoting.
///
/// Works unchanged for exact rationals, where any nonzero pivot is exact.
pub fn det<T: Scalar>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut sign = T::one();
    let mut acc = T::one();
    for k in 0..n {
        let mut piv = k;
        for r in k + 1..n {
            if m[r][k].abs() > m[piv][k].abs() {
                piv = r;
            }
        }
        if m[piv][k].is_zero() {
            return T::zero();
        }
        if piv != k {
            m.swap(piv, k);
            sign = -sign;
        }
        let p = m[k][k].clone();
        acc = acc * p.clone();
        for r in k + 1..n {
            if m[r][k].is_zero() {
                continue;
            }
            let f = m[r][k].clone() / p.clone();
            let (top, bottom) = m.split_at_mut(r);
            for (dst, src) in bottom[0][k..].iter_mut().zip(&top[k][k..]) {
                *dst = dst.clone() - src.clone() * f.clone();
            }
        }
    }
    sign * acc
}

/// Determinant by the Leibniz permutation expansion. Only for small `n`.
pub fn det_leibniz<T: Scalar>(m: &[Vec<T>]) -> T {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = T::zero();
    permute(&mut perm, 0, &mut |p| {
        let mut term = if parity(p) { -T::one() } else { T::one() };
        for (i, &j) in p.iter().enumerate() {
            term = term * m[i][j].clone();
        }
        total = total.clone() + term;
    });
    total
}

/// Calls `f` on every permutation of `perm[k..]`, prefix fixed.
pub(crate) fn permute(perm: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// True for odd permutations.
pub(crate) fn parity(p: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                odd = !odd;
            }
        }
    }
    odd
}

/// Complex determinant with partial pivoting on the modulus.
pub fn det_complex(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut acc = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let mut piv = k;
        for r in k + 1..n {
            if m[r][k].norm() > m[piv][k].norm() {
                piv = r;
            }
        }
        if m[piv][k].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != k {
            m.swap(piv, k);
            acc = -acc;
        }
        let p = m[k][k];
        acc *= p;
        for r in k + 1..n {
            let f = m[r][k] / p;
            let (top, bottom) = m.split_at_mut(r);
            for (dst, src) in bottom[0][k..].iter_mut().zip(&top[k][k..]) {
                *dst -= *src * f;
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lu_and_leibniz_agree_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.random_range(1..=5);
            let m: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.random_range(-3.0..3.0)).collect())
                .collect();
            let a = det(m.clone());
            let b = det_leibniz(&m);
            assert!((a - b).abs() < 1e-10 * (1.0 + b.abs()), "{a} vs {b}");
        }
    }

    #[test]
    fn exact_rational_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.random_range(1..=4);
            let m: Vec<Vec<BigRational>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            BigRational::new(
                                BigInt::from(rng.random_range(-5..6)),
                                BigInt::from(rng.random_range(1..4)),
                            )
                        })
                        .collect()
                })
                .collect();
            assert_eq!(det(m.clone()), det_leibniz(&m));
        }
    }

    #[test]
    fn simultaneous_relabeling_preserves_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let n = 4;
        let m: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let perm = [2usize, 0, 3, 1];
        let r: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| m[perm[i]][perm[j]]).collect()).collect();
        assert!((det(m) - det(r)).abs() < 1e-12);
    }

    #[test]
    fn complex_determinant_matches_real_case() {
        let m = [vec![2.0, 1.0], vec![5.0, 3.0]];
        let c: Vec<Vec<Complex64>> = m
            .iter()
            .map(|r| r.iter().map(|&v| Complex64::new(v, 0.0)).collect())
            .collect();
        assert!((det_complex(c).re - 1.0).abs() < 1e-14);
    }
}

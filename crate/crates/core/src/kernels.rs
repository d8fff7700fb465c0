//! Transition kernels of continuous-time TASEP on the line and the ring,
//! the discrete-time approximation, and the identities relating them.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{det, det_complex};
use crate::scalar::RealScalar;

pub const KERNEL_SERIES_CAP: usize = 100_000;
pub const MAX_QUADRATURE: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("k-sum shell {k_cap} still contributes {last:e}")]
    ToleranceNotReached { k_cap: usize, last: f64 },
    #[error("root finding failed: {0}")]
    RootFindingFailure(String),
    #[error("quadrature with {quad} nodes still changes by {diff:e}")]
    QuadratureNotConverged { quad: usize, diff: f64 },
    #[error("window {window} too small: enlarging it changes the sum by {diff:e}")]
    WindowTooSmall { window: i64, diff: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub t: f64,
    pub tol: f64,
    pub k_cap: usize,
}

impl KernelParams {
    pub fn new(n: usize, l: usize, t: f64) -> Self {
        Self {
            n,
            l,
            t,
            tol: 1e-10,
            k_cap: 6,
        }
    }

    pub fn validate(&self) -> Result<(), KernelError> {
        if self.n == 0 || self.l <= self.n {
            return Err(KernelError::InvalidParams(format!(
                "need 1 <= N < L, got N = {}, L = {}",
                self.n, self.l
            )));
        }
        if self.t.is_nan() || self.t < 0.0 || self.tol.is_nan() || self.tol <= 0.0 || self.k_cap < 1 {
            return Err(KernelError::InvalidParams("need t >= 0, tol > 0 and k_cap >= 1".into()));
        }
        Ok(())
    }
}

fn check_config(x: &[i64], y: &[i64], n: usize) -> Result<(), KernelError> {
    for (name, v) in [("x", x), ("y", y)] {
        if v.len() != n {
            return Err(KernelError::InvalidConfiguration(format!(
                "{name} has {} particles, expected {n}",
                v.len()
            )));
        }
        if v.windows(2).any(|w| w[0] <= w[1]) {
            return Err(KernelError::InvalidConfiguration(format!(
                "{name} = {v:?} is not strictly decreasing"
            )));
        }
    }
    Ok(())
}

fn check_ring(v: &[i64], l: usize) -> Result<(), KernelError> {
    if v.len() > 1 && v[0] >= v[v.len() - 1] + l as i64 {
        return Err(KernelError::InvalidConfiguration(format!(
            "{v:?} violates x_1 < x_N + L"
        )));
    }
    Ok(())
}

fn reversed(v: &[i64]) -> Vec<i64> {
    v.iter().rev().copied().collect()
}

/// `t^m / m!`, zero for `m < 0`.
fn pow_over_factorial<T: RealScalar>(t: T, m: i64) -> T {
    if m < 0 {
        return T::zero();
    }
    (1..=m).fold(T::one(), |acc, i| acc * t / T::lit(i as f64))
}

/// `F_p(n; t)`.
///
/// For `p <= 0` this is the finite sum `e^{-t} sum_{k=0}^{|p|} (-1)^k C(|p|,k) t^{k+n}/(k+n)!`,
/// for `p > 0` the series `e^{-t} sum_k C(k+p-1,p-1) t^{k+n}/(k+n)!`, truncated once
/// the geometric tail bound falls below `tol` relative to the partial sum.
pub fn kernel_f<T: RealScalar>(p: i64, n: i64, t: T, tol: f64) -> T {
    let damp = (-t).exp();
    if p <= 0 {
        let e = -p;
        let mut sum = T::zero();
        let mut binom = T::one();
        for k in 0..=e {
            let term = binom * pow_over_factorial(t, k + n);
            sum = if k % 2 == 0 { sum + term } else { sum - term };
            binom = binom * T::lit((e - k) as f64) / T::lit((k + 1) as f64);
        }
        return damp * sum;
    }
    let k0 = (-n).max(0);
    let mut binom = T::one();
    for i in 1..p {
        binom = binom * T::lit((k0 + i) as f64) / T::lit(i as f64);
    }
    let mut term = binom * pow_over_factorial(t, k0 + n);
    let mut sum = T::zero();
    let tol = T::lit(tol);
    let tf = t.to_f64().unwrap_or(f64::INFINITY);
    for k in k0..k0 + KERNEL_SERIES_CAP as i64 {
        sum = sum + term;
        let m = k + n;
        let ratio = T::lit((k + p) as f64) / T::lit((k + 1) as f64) * t / T::lit((m + 1) as f64);
        let next = term * ratio;
        if k as f64 > tf && ratio < T::one() && next / (T::one() - ratio) <= tol * sum.abs() {
            break;
        }
        term = next;
    }
    damp * sum
}

/// Line transition probability `det[F_{i-j}(x~_i - y~_j)]` with `x~` the increasing relabeling.
pub fn schutz_transition<T: RealScalar>(x: &[i64], y: &[i64], t: T, tol: f64) -> Result<T, KernelError> {
    check_config(x, y, x.len())?;
    let (xs, ys) = (reversed(x), reversed(y));
    let n = xs.len();
    let m = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| kernel_f(i as i64 - j as i64, xs[i] - ys[j], t, tol))
                .collect()
        })
        .collect();
    Ok(det(m))
}

/// Tuples in `[-k, k]^n` with zero sum and `max |k_i| = k`.
pub fn k_shell(n: usize, k: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, k: i64, pos: usize, sum: i64, hit: bool, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if pos == n {
            if sum == 0 && hit {
                out.push(cur.clone());
            }
            return;
        }
        let rest = (n - pos - 1) as i64 * k;
        for v in -k..=k {
            let s = sum + v;
            if s.abs() > rest {
                continue;
            }
            cur.push(v);
            rec(n, k, pos + 1, s, hit || v.abs() == k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, 0, false, &mut Vec::with_capacity(n), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KsumValue<T> {
    pub value: T,
    pub shells: usize,
    pub terms: usize,
}

/// Ring transition probability as a sum of Schutz-type determinants over
/// `k` with `sum k_i = 0`, entry `(i, j)` being `F_{i-j-N k_i}(x~_i - y~_j - L k_i)`.
/// Shells `max |k_i| = K` are added until one contributes less than `tol`.
pub fn periodic_transition_ksum<T: RealScalar>(
    x: &[i64],
    y: &[i64],
    t: T,
    params: &KernelParams,
) -> Result<KsumValue<T>, KernelError> {
    params.validate()?;
    check_config(x, y, params.n)?;
    check_ring(x, params.l)?;
    check_ring(y, params.l)?;
    let n = params.n;
    let (nn, ll) = (n as i64, params.l as i64);
    let (xs, ys) = (reversed(x), reversed(y));
    let term = |k: &[i64]| -> T {
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        kernel_f(
                            i as i64 - j as i64 - nn * k[i],
                            xs[i] - ys[j] - ll * k[i],
                            t,
                            params.tol * 1e-3,
                        )
                    })
                    .collect()
            })
            .collect();
        det(m)
    };
    let mut value = T::zero();
    let mut terms = 0;
    let mut last = f64::INFINITY;
    for shell in 0..=params.k_cap {
        let tuples = k_shell(n, shell as i64);
        let parts: Vec<T> = tuples.par_iter().map(|k| term(k)).collect();
        terms += parts.len();
        let contrib = parts.into_iter().fold(T::zero(), |a, b| a + b);
        value = value + contrib;
        last = contrib.abs().to_f64().unwrap_or(f64::INFINITY);
        if shell >= 1 && last < params.tol {
            return Ok(KsumValue {
                value,
                shells: shell,
                terms,
            });
        }
    }
    Err(KernelError::ToleranceNotReached {
        k_cap: params.k_cap,
        last,
    })
}

/// Coefficients of `(w-1)^N w^{L-N} - c`, highest degree first.
fn bethe_poly(n: usize, l: usize, c: Complex64) -> Vec<Complex64> {
    let mut coef = vec![Complex64::new(0.0, 0.0); l + 1];
    let mut binom = 1.0f64;
    for k in 0..=n {
        let sign = if (n - k).is_multiple_of(2) { 1.0 } else { -1.0 };
        coef[l - (l - n + k)] = Complex64::new(sign * binom, 0.0);
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    coef[l] -= c;
    coef
}

fn horner(coef: &[Complex64], w: Complex64) -> Complex64 {
    coef.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c)
}

fn bethe_dpoly(n: usize, l: usize, w: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let d = (l - n) as i32;
    let a = (w - one).powi(n as i32 - 1) * w.powi(d - 1);
    a * (w * n as f64 + (w - one) * d as f64)
}

/// The `L` roots of `(w-1)^N w^{L-N} = z^L`, from companion-matrix eigenvalues
/// polished by Newton steps.
pub fn bethe_roots(n: usize, l: usize, z: Complex64) -> Result<Vec<Complex64>, KernelError> {
    let coef = bethe_poly(n, l, z.powi(l as i32));
    let companion = DMatrix::<Complex64>::from_fn(l, l, |i, j| {
        if i == 0 {
            -coef[j + 1]
        } else if i == j + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let eig = companion
        .eigenvalues()
        .ok_or_else(|| KernelError::RootFindingFailure(format!("eigenvalues did not converge at z = {z}")))?;
    let mut roots: Vec<Complex64> = eig.iter().copied().collect();
    for w in roots.iter_mut() {
        for _ in 0..3 {
            let dq = bethe_dpoly(n, l, *w);
            if dq.norm() == 0.0 {
                break;
            }
            *w -= horner(&coef, *w) / dq;
        }
        let scale = 1.0 + w.norm().powi(l as i32);
        let residual = horner(&coef, *w).norm();
        if residual.is_nan() || residual > 1e-9 * scale {
            return Err(KernelError::RootFindingFailure(format!(
                "residual too large at z = {z}"
            )));
        }
    }
    for i in 0..l {
        for j in 0..i {
            if (roots[i] - roots[j]).norm() < 1e-9 {
                return Err(KernelError::RootFindingFailure(format!(
                    "repeated root near {} at z = {z}",
                    roots[i]
                )));
            }
        }
    }
    Ok(roots)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetheValue {
    pub value: f64,
    pub imag: f64,
    pub quad: usize,
}

fn bethe_at_node(xs: &[i64], ys: &[i64], t: f64, l: usize, z: Complex64) -> Result<Complex64, KernelError> {
    let n = xs.len();
    let roots = bethe_roots(n, l, z)?;
    let one = Complex64::new(1.0, 0.0);
    let weights: Vec<(Complex64, Complex64)> = roots
        .iter()
        .map(|&w| (w, (t * (w - one)).exp() / bethe_dpoly(n, l, w)))
        .collect();
    let (ni, li) = (n as i64, l as i64);
    let m = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (i1, j1) = (i as i64 + 1, j as i64 + 1);
                    let a = (j1 - i1 + ni) as i32;
                    let b = (-xs[i] + ys[j] + i1 - j1 + li - ni - 1) as i32;
                    weights.iter().map(|&(w, c)| (w - one).powi(a) * w.powi(b) * c).sum()
                })
                .collect()
        })
        .collect();
    Ok(det_complex(m))
}

fn bethe_quadrature(
    xs: &[i64],
    ys: &[i64],
    t: f64,
    l: usize,
    radius: f64,
    quad: usize,
) -> Result<Complex64, KernelError> {
    let vals: Result<Vec<Complex64>, KernelError> = (0..quad)
        .into_par_iter()
        .map(|q| {
            let theta = 2.0 * std::f64::consts::PI * (q as f64 + 0.5) / quad as f64;
            bethe_at_node(xs, ys, t, l, Complex64::from_polar(radius, theta))
        })
        .collect();
    Ok(vals?.into_iter().sum::<Complex64>() / quad as f64)
}

/// Ring transition probability through Bethe roots: for `z` on `|z| = radius`,
/// sum `f_ij(w) / q_z'(w)` over the roots of `q_z(w) = (w-1)^N w^{L-N} - z^L`,
/// take the determinant and average over `z` with the trapezoid rule. The
/// node count doubles from `quad` until successive values agree within `tol`.
pub fn bethe_transition(
    x: &[i64],
    y: &[i64],
    params: &KernelParams,
    radius: f64,
    quad: usize,
) -> Result<BetheValue, KernelError> {
    params.validate()?;
    check_config(x, y, params.n)?;
    check_ring(x, params.l)?;
    check_ring(y, params.l)?;
    if radius.is_nan() || radius <= 0.0 || quad == 0 {
        return Err(KernelError::InvalidParams("need radius > 0 and quad >= 1".into()));
    }
    let (xs, ys) = (reversed(x), reversed(y));
    let mut q = quad.next_power_of_two();
    let mut prev = bethe_quadrature(&xs, &ys, params.t, params.l, radius, q)?;
    loop {
        let next_q = q * 2;
        if next_q > MAX_QUADRATURE {
            return Err(KernelError::QuadratureNotConverged {
                quad: q,
                diff: f64::NAN,
            });
        }
        let cur = bethe_quadrature(&xs, &ys, params.t, params.l, radius, next_q)?;
        let diff = (cur - prev).norm();
        if diff <= params.tol {
            return Ok(BetheValue {
                value: cur.re,
                imag: cur.im,
                quad: next_q,
            });
        }
        if next_q * 2 > MAX_QUADRATURE {
            return Err(KernelError::QuadratureNotConverged { quad: next_q, diff });
        }
        prev = cur;
        q = next_q;
    }
}

/// All ring configurations reachable from `y` with at most `max_moves` total jumps.
pub fn reachable_ring_targets(y: &[i64], l: usize, max_moves: i64) -> Vec<Vec<i64>> {
    fn rec(y: &[i64], l: i64, budget: i64, pos: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let n = y.len();
        if pos == n {
            if n < 2 || cur[0] < cur[n - 1] + l {
                out.push(cur.clone());
            }
            return;
        }
        let hi = if pos == 0 {
            y[0] + budget
        } else {
            (cur[pos - 1] - 1).min(y[pos] + budget)
        };
        for v in y[pos]..=hi {
            cur.push(v);
            rec(y, l, budget - (v - y[pos]), pos + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(y, l as i64, max_moves, 0, &mut Vec::new(), &mut out);
    out
}

/// Total k-sum mass over targets within `max_moves` jumps, with the target count.
pub fn ring_mass(y: &[i64], params: &KernelParams, max_moves: i64) -> Result<(f64, usize), KernelError> {
    let targets = reachable_ring_targets(y, params.l, max_moves);
    let vals: Result<Vec<f64>, KernelError> = targets
        .par_iter()
        .map(|x| periodic_transition_ksum(x, y, params.t, params).map(|v| v.value))
        .collect();
    Ok((vals?.into_iter().sum(), targets.len()))
}

/// `|F_{p+1}(x) - sum_{y=x}^{x+window} F_p(y)|`.
pub fn rowsum_identity_check(p: i64, x: i64, t: f64, window: i64) -> f64 {
    let lhs = kernel_f(p + 1, x, t, 1e-17);
    let rhs: f64 = (x..=x + window).map(|y| kernel_f(p, y, t, 1e-17)).sum();
    (lhs - rhs).abs()
}

/// `|F_{p+1}(x) + sum_{y<x} F_p(y)|` for `p <= -1`, where the sum is finite.
pub fn second_identity_check(p: i64, x: i64, t: f64) -> Result<f64, KernelError> {
    if p > -1 {
        return Err(KernelError::InvalidParams(format!(
            "second identity needs p <= -1, got {p}"
        )));
    }
    let lhs = kernel_f(p + 1, x, t, 1e-17);
    let rhs: f64 = (p..x).map(|y| kernel_f(p, y, t, 1e-17)).sum();
    Ok((lhs + rhs).abs())
}

/// Sum over the pattern set of `det[F_{-j}(row_i - y~_j)]`, `row = (x_N, x^N_2, ..., x^N_N)`,
/// with variables `x^m_k` bounded above by `max(x) + window`.
fn gt_resummed(x: &[i64], y: &[i64], t: f64, window: i64) -> f64 {
    let n = x.len();
    let lo = *x.iter().min().expect("nonempty");
    let hi = *x.iter().max().expect("nonempty") + window;
    // level m (1-indexed) holds x^m_1..x^m_m; x^m_1 = x_m
    let mut levels: Vec<Vec<i64>> = (0..n).map(|m| vec![x[m]]).collect();
    let ys = reversed(y);
    let mut total = 0.0;
    fn rec(m: usize, k: usize, n: usize, lo: i64, hi: i64, levels: &mut Vec<Vec<i64>>, visit: &mut dyn FnMut(&[i64])) {
        if m > n {
            visit(&levels[n - 1]);
            return;
        }
        if k > m {
            rec(m + 1, 2, n, lo, hi, levels, visit);
            return;
        }
        let below = levels[m - 2][k - 2];
        let upper = if k < m { levels[m - 2][k - 1] - 1 } else { hi };
        for v in below.max(lo)..=upper {
            levels[m - 1].push(v);
            rec(m, k + 1, n, lo, hi, levels, visit);
            levels[m - 1].pop();
        }
    }
    if n == 1 {
        return kernel_f(0, x[0] - y[0], t, 1e-17);
    }
    rec(2, 2, n, lo, hi, &mut levels, &mut |top: &[i64]| {
        let mut row = vec![x[n - 1]];
        row.extend_from_slice(&top[1..]);
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| kernel_f(-(j as i64), row[i] - ys[j], t, 1e-17))
                    .collect()
            })
            .collect();
        total += det(m);
    });
    total
}

/// Residual between the Schutz determinant and its resummation over
/// Gelfand-Tsetlin patterns; the window grows until the sum is stable.
pub fn gt_resummation_check(x: &[i64], y: &[i64], t: f64) -> Result<f64, KernelError> {
    check_config(x, y, x.len())?;
    if x.is_empty() || x.len() > 4 {
        return Err(KernelError::InvalidParams(
            "resummation check supports 1 <= N <= 4".into(),
        ));
    }
    let lhs = schutz_transition(x, y, t, 1e-17)?;
    let mut window = default_window(t);
    let mut prev = gt_resummed(x, y, t, window);
    for _ in 0..4 {
        let next = gt_resummed(x, y, t, window + 4);
        if (next - prev).abs() < 1e-14 {
            return Ok((lhs - next).abs());
        }
        window += 4;
        prev = next;
    }
    Err(KernelError::WindowTooSmall {
        window,
        diff: (gt_resummed(x, y, t, window + 4) - prev).abs(),
    })
}

/// Smallest `w` with `t^w / w! < 1e-18`, plus slack.
pub fn default_window(t: f64) -> i64 {
    let mut w = 0i64;
    let mut term = 1.0f64;
    while term >= 1e-18 || (w as f64) < t {
        w += 1;
        term *= t / w as f64;
    }
    w + 2
}

fn big_binomials(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    for k in 0..=n {
        row.push(c.clone());
        c = c * BigInt::from(n - k) / BigInt::from(k + 1);
    }
    row
}

/// Exact discrete-time kernel `det[v_{i-j}(x~_i - y~_j)]` for `steps`
/// sequential Bernoulli updates with jump probability `p = num/den`, where
/// `v_d(m) = [w^m] (q + p w)^steps (w/(w-1))^d`.
pub fn discrete_kernel_exact(x: &[i64], y: &[i64], num: u64, den: u64, steps: u64) -> Result<BigRational, KernelError> {
    check_config(x, y, x.len())?;
    if num > den || den == 0 {
        return Err(KernelError::InvalidParams(format!(
            "p = {num}/{den} is not a probability"
        )));
    }
    let n = x.len();
    let (xs, ys) = (reversed(x), reversed(y));
    let binom = big_binomials(steps);
    let pow = |b: u64, e: u64| -> BigInt { num_traits::pow(BigInt::from(b), e as usize) };
    let p_pow: Vec<BigInt> = (0..=steps).map(|a| pow(num, a)).collect();
    let q_pow: Vec<BigInt> = (0..=steps).map(|a| pow(den - num, a)).collect();
    let denom = pow(den, steps);
    // numerator of [w^a] (q + p w)^steps over den^steps
    let coef = |a: i64| -> BigInt {
        if a < 0 || a as u64 > steps {
            BigInt::zero()
        } else {
            let a = a as usize;
            &binom[a] * &p_pow[a] * &q_pow[steps as usize - a]
        }
    };
    let v = |d: i64, m: i64| -> BigRational {
        let mut acc = BigInt::zero();
        if d > 0 {
            let mut c = BigInt::one();
            for l in 0..=(steps as i64 - m).max(-1) {
                if m + l >= 0 {
                    acc += &c * coef(m + l);
                }
                c = c * BigInt::from(l + d) / BigInt::from(l + 1);
            }
        } else {
            let e = -d;
            let mut c = BigInt::one();
            for l in 0..=e {
                let term = &c * coef(m + l);
                if l % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
                c = c * BigInt::from(e - l) / BigInt::from(l + 1);
            }
        }
        BigRational::new(acc, denom.clone())
    };
    let m = (0..n)
        .map(|i| (0..n).map(|j| v(i as i64 - j as i64, xs[i] - ys[j])).collect())
        .collect();
    Ok(det(m))
}

/// Discrete-time kernel with `p = 1/M` and `floor(M t)` steps, as a float.
pub fn discrete_transition(x: &[i64], y: &[i64], big_m: u64, t: f64) -> Result<f64, KernelError> {
    if big_m == 0 || t.is_nan() || t < 0.0 {
        return Err(KernelError::InvalidParams("need M >= 1 and t >= 0".into()));
    }
    let steps = (big_m as f64 * t).floor() as u64;
    let v = discrete_kernel_exact(x, y, 1, big_m, steps)?;
    Ok(v.to_f64().unwrap_or(f64::NAN))
}

/// Coefficient of displacement `d` in the `n`-fold convolution of the step
/// kernel with weight 1 for no move and `t/n` for one step.
#[allow(non_snake_case)]
pub fn conv_power_P(n: u64, t: f64, d: u64) -> f64 {
    let step = t / n as f64;
    let d = d as usize;
    let mut c = vec![0.0f64; d + 1];
    c[0] = 1.0;
    for _ in 0..n {
        for j in (1..=d).rev() {
            c[j] += step * c[j - 1];
        }
    }
    c[d]
}

/// Exact rational form of [`conv_power_P`].
#[allow(non_snake_case)]
pub fn conv_power_P_exact(n: u64, t: &BigRational, d: u64) -> BigRational {
    let step = t / BigRational::from_integer(BigInt::from(n));
    let d = d as usize;
    let mut c = vec![BigRational::zero(); d + 1];
    c[0] = BigRational::one();
    for _ in 0..n {
        for j in (1..=d).rev() {
            let add = &step * &c[j - 1];
            c[j] += add;
        }
    }
    c[d].clone()
}

/// The closed form `(t/n)^d (C(n,d) + C(n,d-1))`, one factor more than [`conv_power_P`].
pub fn conv_power_closed_form(n: u64, t: f64, d: u64) -> f64 {
    let binom = |k: i64| -> f64 {
        if k < 0 || k as u64 > n {
            return 0.0;
        }
        (0..k).fold(1.0, |acc, i| acc * (n as i64 - i) as f64 / (i + 1) as f64)
    };
    (t / n as f64).powi(d as i32) * (binom(d as i64) + binom(d as i64 - 1))
}

/// `|e^{-t} conv_power_P(n, t, d) - e^{-t} t^d / d!|`.
pub fn rt_limit_check(n: u64, t: f64, d: u64) -> f64 {
    ((-t).exp() * (conv_power_P(n, t, d) - pow_over_factorial(t, d as i64))).abs()
}

/// Same residual for the closed form.
pub fn rt_limit_check_closed_form(n: u64, t: f64, d: u64) -> f64 {
    ((-t).exp() * (conv_power_closed_form(n, t, d) - pow_over_factorial(t, d as i64))).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tasep::{ctmc_oracle, dtmc_distribution, rate, Geometry};

    #[test]
    fn kernel_f_small_cases() {
        let t = 1.7f64;
        assert!((kernel_f(0, 0, 1.0f64, 1e-16) - (-1.0f64).exp()).abs() < 1e-16);
        assert!((kernel_f(0, 3, t, 1e-16) - (-t).exp() * t.powi(3) / 6.0).abs() < 1e-15);
        assert!((kernel_f(-1, 0, t, 1e-16) - (-t).exp() * (1.0 - t)).abs() < 1e-15);
        assert_eq!(kernel_f(0, -1, t, 1e-16), 0.0);
        assert!((kernel_f(1, 0, 1.0f64, 1e-16) - 1.0).abs() < 1e-14);
        assert!((kernel_f(2, -1, 0.0f64, 1e-16) - 2.0).abs() < 1e-15);
        let single = kernel_f(0, 2, 0.5f32, 1e-7);
        assert!((single - 0.5f32.powi(2) / 2.0 * (-0.5f32).exp()).abs() < 1e-6);
    }

    #[test]
    fn schutz_small_cases() {
        assert_eq!(schutz_transition(&[3, 1], &[3, 1], 0.0f64, 1e-14).unwrap(), 1.0);
        assert_eq!(schutz_transition(&[4, 1], &[3, 1], 0.0f64, 1e-14).unwrap(), 0.0);
        let p = schutz_transition(&[3, 1], &[1, 0], 1.0f64, 1e-16).unwrap();
        let o = ctmc_oracle(&[1, 0], &[3, 1], 1.0f64, Geometry::Line, 1e-15).unwrap();
        assert!((p - o).abs() < 1e-12, "{p} vs {o}");
    }

    #[test]
    fn shells() {
        assert_eq!(k_shell(1, 1).len(), 0);
        assert_eq!(k_shell(2, 1), vec![vec![-1, 1], vec![1, -1]]);
        assert_eq!(k_shell(3, 0), vec![vec![0, 0, 0]]);
        assert!(k_shell(3, 2)
            .iter()
            .all(|k| k.iter().sum::<i64>() == 0 && k.iter().any(|v| v.abs() == 2)));
    }

    #[test]
    fn ksum_matches_ring_oracle() {
        let params = KernelParams {
            tol: 1e-13,
            ..KernelParams::new(2, 4, 1.0)
        };
        for x in [[2, 1], [4, 2], [5, 3], [3, 0]] {
            let k = periodic_transition_ksum(&x, &[1, 0], 1.0f64, &params).unwrap();
            let o = ctmc_oracle(&[1, 0], &x, 1.0f64, Geometry::Ring(4), 1e-14).unwrap();
            assert!((k.value - o).abs() < 1e-10, "{x:?}: {} vs {o}", k.value);
        }
        let single = KernelParams::new(1, 3, 0.8);
        let v = periodic_transition_ksum(&[4], &[1], 0.8f64, &single).unwrap();
        assert!((v.value - kernel_f(0, 3, 0.8, 1e-16)).abs() < 1e-15);
    }

    #[test]
    fn bethe_matches_ksum() {
        let params = KernelParams {
            tol: 1e-10,
            ..KernelParams::new(2, 4, 1.0)
        };
        for radius in [0.5, 1.0] {
            let b = bethe_transition(&[2, 1], &[1, 0], &params, radius, 64).unwrap();
            let k = periodic_transition_ksum(&[2, 1], &[1, 0], 1.0f64, &params).unwrap();
            assert!(
                (b.value - k.value).abs() < 1e-8,
                "r = {radius}: {} vs {}",
                b.value,
                k.value
            );
            assert!(b.imag.abs() < 1e-8);
        }
        let p1 = KernelParams {
            tol: 1e-12,
            ..KernelParams::new(1, 3, 0.7)
        };
        let b = bethe_transition(&[3], &[1], &p1, 0.5, 64).unwrap();
        assert!((b.value - kernel_f(0, 2, 0.7, 1e-16)).abs() < 1e-9);
        let p0 = KernelParams {
            tol: 1e-12,
            ..KernelParams::new(2, 4, 0.0)
        };
        assert!((bethe_transition(&[2, 1], &[2, 1], &p0, 0.5, 64).unwrap().value - 1.0).abs() < 1e-8);
        assert!(bethe_transition(&[3, 1], &[2, 1], &p0, 0.5, 64).unwrap().value.abs() < 1e-8);
    }

    #[test]
    fn bethe_roots_solve_equation() {
        let z = Complex64::from_polar(0.7, 0.3);
        let roots = bethe_roots(3, 5, z).unwrap();
        assert_eq!(roots.len(), 5);
        for w in roots {
            let lhs = (w - 1.0).powi(3) * w.powi(2);
            assert!((lhs - z.powi(5)).norm() < 1e-12);
        }
    }

    #[test]
    fn identities() {
        assert!(rowsum_identity_check(0, 0, 1.0, 40) < 1e-12);
        assert!(rowsum_identity_check(-1, 0, 1.0, 40) < 1e-12);
        assert!(rowsum_identity_check(2, 3, 0.5, 40) < 1e-12);
        for p in -3..=-1 {
            for x in 0..5 {
                assert!(second_identity_check(p, x, 0.9).unwrap() < 1e-12);
            }
        }
        assert!(second_identity_check(0, 1, 1.0).is_err());
    }

    #[test]
    fn gt_resummation_small() {
        assert!(gt_resummation_check(&[3], &[1], 1.0).unwrap() < 1e-15);
        assert!(gt_resummation_check(&[2, 1], &[1, 0], 1.0).unwrap() < 1e-10);
    }

    #[test]
    fn discrete_kernel_is_exact() {
        let p = rate(1, 3);
        for (y, steps) in [(vec![1i64, 0], 3usize), (vec![3, 1, 0], 3), (vec![2, 0], 4)] {
            let rates = vec![p.clone(); y.len()];
            let dist = dtmc_distribution(&y, steps, &rates, Geometry::Line, 1 << 20).unwrap();
            for (x, prob) in &dist {
                assert_eq!(
                    &discrete_kernel_exact(x, &y, 1, 3, steps as u64).unwrap(),
                    prob,
                    "{x:?}"
                );
            }
        }
        assert_eq!(discrete_transition(&[1, 0], &[1, 0], 10, 0.05).unwrap(), 1.0);
        let b = discrete_transition(&[2], &[0], 10, 0.5).unwrap();
        assert!((b - 10.0 * 0.01 * 0.9f64.powi(3)).abs() < 1e-15);
    }

    #[test]
    fn convolution_power() {
        assert_eq!(conv_power_P(7, 1.3, 0), 1.0);
        assert!((conv_power_P(2, 1.0, 1) - 1.0).abs() < 1e-15);
        let exact = conv_power_P_exact(2, &rate(3, 2), 1);
        assert_eq!(exact, rate(3, 2));
        assert!(rt_limit_check(10_000, 1.0, 3) < 1e-3);
        let r1 = rt_limit_check(1000, 1.0, 3);
        let r2 = rt_limit_check(10_000, 1.0, 3);
        assert!(r1 / r2 > 8.0 && r1 / r2 < 12.0);
        assert!(rt_limit_check_closed_form(10_000, 1.0, 3) < 1e-3);
    }
}

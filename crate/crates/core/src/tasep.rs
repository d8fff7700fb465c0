//! Discrete-time TASEP on the line and the ring, the ledge coupling to
//! cylindrical RSK, and brute-force transition oracles.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyl_rsk::{CylError, CylTriple};
use crate::dual_rsk::InnovationArray;
use crate::scalar::RealScalar;
use crate::shapes::Partition;

pub const UNIFORMIZATION_CAP: usize = 10_000;
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TasepError {
    #[error("ring constraint violated: Y_1 = {y1} > Y_N + {cap} = {bound}")]
    RingViolation { y1: i64, cap: i64, bound: i64 },
    #[error("L - N must be at least 1 (N = {n}, L = {l})")]
    DegenerateRing { n: usize, l: usize },
    #[error("state {0:?} is not correctly ordered")]
    Unordered(Vec<i64>),
    #[error("states have different particle counts ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("uniformization needs more than {cap} terms for tolerance {tol:e}")]
    ToleranceNotReached { cap: usize, tol: f64 },
    #[error("reachable state set exceeds {0} states")]
    StateSpaceCap(usize),
    #[error("driver row {row} has {got} bits, expected {expected}")]
    DriverShape { row: usize, got: usize, expected: usize },
    #[error(transparent)]
    Cyl(#[from] CylError),
}

/// Weakly ordered positions `Y_N <= ... <= Y_1`, stored as `[Y_1, ..., Y_N]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParticleStateY {
    pub y: Vec<i64>,
}

impl ParticleStateY {
    pub fn new(y: Vec<i64>) -> Result<Self, TasepError> {
        if y.windows(2).any(|w| w[0] < w[1]) {
            return Err(TasepError::Unordered(y));
        }
        Ok(Self { y })
    }

    pub fn zeros(n: usize) -> Self {
        Self { y: vec![0; n] }
    }

    /// Line conversion `x_i = Y_i - i`.
    pub fn to_x(&self) -> ParticleStateX {
        ParticleStateX {
            x: self.y.iter().enumerate().map(|(i, &v)| v - i as i64 - 1).collect(),
        }
    }
}

/// Strictly ordered positions `x_N < ... < x_1`, stored as `[x_1, ..., x_N]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ParticleStateX {
    pub x: Vec<i64>,
}

impl ParticleStateX {
    pub fn new(x: Vec<i64>) -> Result<Self, TasepError> {
        if x.windows(2).any(|w| w[0] <= w[1]) {
            return Err(TasepError::Unordered(x));
        }
        Ok(Self { x })
    }

    /// Like [`ParticleStateX::new`], also requiring `x_1 < x_N + L`.
    pub fn on_ring(x: Vec<i64>, l: usize) -> Result<Self, TasepError> {
        let s = Self::new(x)?;
        if let (Some(&first), Some(&last)) = (s.x.first(), s.x.last()) {
            if first >= last + l as i64 {
                return Err(TasepError::RingViolation {
                    y1: first,
                    cap: l as i64 - 1,
                    bound: last + l as i64 - 1,
                });
            }
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn to_y(&self) -> ParticleStateY {
        ParticleStateY {
            y: self.x.iter().enumerate().map(|(i, &v)| v + i as i64 + 1).collect(),
        }
    }
}

/// Ring parameters; requires at least one hole.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ring {
    pub n: usize,
    pub l: usize,
}

impl Ring {
    pub fn new(n: usize, l: usize) -> Result<Self, TasepError> {
        if n == 0 || l <= n {
            return Err(TasepError::DegenerateRing { n, l });
        }
        Ok(Self { n, l })
    }

    /// Cap used by the ledge coupling: particle 1 stays within `L - N` of particle N.
    pub fn ledge_cap(&self) -> i64 {
        (self.l - self.n) as i64
    }
}

/// Jump indicators `xi[n][k]` for step `n + 1` and particle `k + 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BernoulliDriver {
    pub rates: Vec<f64>,
    pub xi: Vec<Vec<bool>>,
}

impl BernoulliDriver {
    pub fn from_bits(n: usize, xi: Vec<Vec<bool>>) -> Result<Self, TasepError> {
        for (row, bits) in xi.iter().enumerate() {
            if bits.len() != n {
                return Err(TasepError::DriverShape {
                    row,
                    got: bits.len(),
                    expected: n,
                });
            }
        }
        Ok(Self {
            rates: vec![f64::NAN; n],
            xi,
        })
    }

    pub fn sample<R: Rng + ?Sized>(rates: &[f64], steps: usize, rng: &mut R) -> Self {
        let xi = (0..steps)
            .map(|_| rates.iter().map(|&p| rng.random_bool(p.clamp(0.0, 1.0))).collect())
            .collect();
        Self {
            rates: rates.to_vec(),
            xi,
        }
    }

    pub fn n(&self) -> usize {
        self.rates.len()
    }

    pub fn steps(&self) -> usize {
        self.xi.len()
    }

    /// One pair `(n, k)` per ring, letters ascending within a step.
    pub fn innovation_array(&self) -> InnovationArray {
        let pairs = self
            .xi
            .iter()
            .enumerate()
            .flat_map(|(step, bits)| {
                bits.iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(move |(k, _)| (step as i64 + 1, k as i64 + 1))
            })
            .collect();
        InnovationArray { n: self.n(), pairs }
    }
}

/// `Y_k(n) = min(Y_k(n-1) + xi_k, Y_{k-1}(n))`, particle 1 free.
pub fn step_discrete_line(y: &ParticleStateY, xi: &[bool]) -> ParticleStateY {
    let mut out = Vec::with_capacity(y.y.len());
    for (k, (&v, &b)) in y.y.iter().zip(xi).enumerate() {
        let moved = v + b as i64;
        out.push(if k == 0 { moved } else { moved.min(out[k - 1]) });
    }
    ParticleStateY { y: out }
}

/// Line update with particle 1 additionally capped by `Y_N(n-1) + cap`.
pub fn step_discrete_ring(y: &ParticleStateY, xi: &[bool], cap: i64) -> Result<ParticleStateY, TasepError> {
    let n = y.y.len();
    if n == 0 {
        return Ok(y.clone());
    }
    let bound = y.y[n - 1] + cap;
    if y.y[0] > bound {
        return Err(TasepError::RingViolation { y1: y.y[0], cap, bound });
    }
    let mut out = step_discrete_line(y, xi);
    if n > 1 && out.y[0] > bound {
        out.y[0] = bound;
        for k in 1..n {
            out.y[k] = out.y[k].min(out.y[k - 1]);
        }
    }
    Ok(out)
}

/// Counts of letter `i` in row `i` of the main period.
pub fn ledge(s: &CylTriple) -> Vec<i64> {
    s.ledge()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoupledRun {
    pub y: Vec<Vec<i64>>,
    pub ledge: Vec<Vec<i64>>,
}

impl CoupledRun {
    fn increments(traj: &[Vec<i64>]) -> Vec<Vec<i64>> {
        traj.windows(2)
            .map(|w| w[1].iter().zip(&w[0]).map(|(a, b)| a - b).collect())
            .collect()
    }

    pub fn y_increments(&self) -> Vec<Vec<i64>> {
        Self::increments(&self.y)
    }

    pub fn ledge_increments(&self) -> Vec<Vec<i64>> {
        Self::increments(&self.ledge)
    }

    pub fn agrees(&self) -> bool {
        self.y == self.ledge
    }
}

/// Runs cylindrical RSK and the ring recursion on the same driver.
pub fn coupled_run(driver: &BernoulliDriver, l: usize) -> Result<CoupledRun, TasepError> {
    coupled_run_from(driver, l, &Partition::zeros(driver.n()))
}

/// As [`coupled_run`], starting both sides from `mu`.
pub fn coupled_run_from(driver: &BernoulliDriver, l: usize, mu: &Partition) -> Result<CoupledRun, TasepError> {
    let ring = Ring::new(driver.n(), l)?;
    let mut s = CylTriple::new(ring.n, l, mu)?;
    let mut y = ParticleStateY::new(s.ledge())?;
    let mut out = CoupledRun {
        y: vec![y.y.clone()],
        ledge: vec![s.ledge()],
    };
    for (step, bits) in driver.xi.iter().enumerate() {
        for (k, &b) in bits.iter().enumerate() {
            if b {
                s.insert(k as i64 + 1, step as i64 + 1)?;
            }
        }
        y = step_discrete_ring(&y, bits, ring.ledge_cap())?;
        out.y.push(y.y.clone());
        out.ledge.push(s.ledge());
    }
    Ok(out)
}

/// Where the particles live: the integer line or a ring of `L` sites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Geometry {
    Line,
    Ring(usize),
}

impl Geometry {
    /// Sequential update in `x` coordinates; `None` marks a blocked jump.
    fn jump(&self, s: &[i64], k: usize, updated_prev: Option<i64>) -> Option<i64> {
        let target = s[k] + 1;
        let blocked = match (k, self) {
            (0, Geometry::Ring(l)) if s.len() > 1 => target >= s[s.len() - 1] + *l as i64,
            (0, _) => false,
            _ => target >= updated_prev.unwrap_or(s[k - 1]),
        };
        (!blocked).then_some(target)
    }

    fn check(&self, x: &[i64]) -> Result<ParticleStateX, TasepError> {
        match self {
            Geometry::Line => ParticleStateX::new(x.to_vec()),
            Geometry::Ring(l) => ParticleStateX::on_ring(x.to_vec(), *l),
        }
    }
}

/// Continuous-time TASEP with unit rates, as a full distribution from `y`.
///
/// Uniformization with total rate `N`: `P(t) = sum_j Pois(Nt; j) K^j`,
/// where `K` picks a particle uniformly and attempts a jump.
pub fn ctmc_distribution<T: RealScalar>(
    y: &[i64],
    t: T,
    geom: Geometry,
    tol: f64,
) -> Result<BTreeMap<Vec<i64>, T>, TasepError> {
    geom.check(y)?;
    let n = y.len();
    let mut dist: BTreeMap<Vec<i64>, T> = BTreeMap::new();
    dist.insert(y.to_vec(), T::one());
    let mut out: BTreeMap<Vec<i64>, T> = BTreeMap::new();
    if n == 0 || t.is_zero() {
        return Ok(dist);
    }
    let rate = T::lit(n as f64) * t;
    let mut weight = (-rate).exp();
    let mut mass = T::zero();
    let inv_n = T::one() / T::lit(n as f64);
    for j in 0..=UNIFORMIZATION_CAP {
        for (s, p) in &dist {
            let e = out.entry(s.clone()).or_insert_with(T::zero);
            *e = *e + weight * *p;
        }
        mass = mass + weight;
        if (T::one() - mass).to_f64().unwrap_or(1.0) < tol && T::lit(j as f64) > rate {
            return Ok(out);
        }
        let mut next: BTreeMap<Vec<i64>, T> = BTreeMap::new();
        for (s, p) in &dist {
            let share = *p * inv_n;
            for k in 0..n {
                let mut s2 = s.clone();
                if let Some(v) = geom.jump(s, k, None) {
                    s2[k] = v;
                }
                let e = next.entry(s2).or_insert_with(T::zero);
                *e = *e + share;
            }
        }
        dist = next;
        weight = weight * rate / T::lit(j as f64 + 1.0);
    }
    Err(TasepError::ToleranceNotReached {
        cap: UNIFORMIZATION_CAP,
        tol,
    })
}

/// Probability of moving from `y` to `x` in time `t`, to absolute error `tol`.
pub fn ctmc_oracle<T: RealScalar>(y: &[i64], x: &[i64], t: T, geom: Geometry, tol: f64) -> Result<T, TasepError> {
    if x.len() != y.len() {
        return Err(TasepError::LengthMismatch(y.len(), x.len()));
    }
    geom.check(x)?;
    let dist = ctmc_distribution(y, t, geom, tol)?;
    Ok(dist.get(x).copied().unwrap_or_else(T::zero))
}

/// Exact distribution after `steps` sequential Bernoulli updates with per-particle rates.
pub fn dtmc_distribution(
    y: &[i64],
    steps: usize,
    rates: &[BigRational],
    geom: Geometry,
    state_cap: usize,
) -> Result<BTreeMap<Vec<i64>, BigRational>, TasepError> {
    geom.check(y)?;
    let n = y.len();
    if rates.len() != n {
        return Err(TasepError::LengthMismatch(n, rates.len()));
    }
    let mut dist = BTreeMap::new();
    dist.insert(y.to_vec(), BigRational::one());
    for _ in 0..steps {
        let mut next: BTreeMap<Vec<i64>, BigRational> = BTreeMap::new();
        for (s, p) in &dist {
            for mask in 0u64..(1u64 << n) {
                let mut w = p.clone();
                let mut new = s.clone();
                for k in 0..n {
                    let jump = mask >> k & 1 == 1;
                    w *= if jump {
                        rates[k].clone()
                    } else {
                        BigRational::one() - &rates[k]
                    };
                    if jump {
                        let prev = (k > 0).then(|| new[k - 1]);
                        if let Some(v) = geom.jump(s, k, prev) {
                            new[k] = v;
                        }
                    }
                }
                if w.is_zero() {
                    continue;
                }
                *next.entry(new).or_insert_with(BigRational::zero) += w;
            }
            if next.len() > state_cap {
                return Err(TasepError::StateSpaceCap(state_cap));
            }
        }
        dist = next;
    }
    Ok(dist)
}

pub fn dtmc_oracle(
    y: &[i64],
    x: &[i64],
    steps: usize,
    rates: &[BigRational],
    geom: Geometry,
) -> Result<BigRational, TasepError> {
    if x.len() != y.len() {
        return Err(TasepError::LengthMismatch(y.len(), x.len()));
    }
    let dist = dtmc_distribution(y, steps, rates, geom, DEFAULT_STATE_CAP)?;
    Ok(dist.get(x).cloned().unwrap_or_else(BigRational::zero))
}

/// `p` as an exact rational `num/den`.
pub fn rate(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ys(v: &[i64]) -> ParticleStateY {
        ParticleStateY::new(v.to_vec()).unwrap()
    }

    #[test]
    fn line_steps() {
        assert_eq!(step_discrete_line(&ys(&[0, 0]), &[true, true]).y, vec![1, 1]);
        assert_eq!(step_discrete_line(&ys(&[1, 0]), &[false, true]).y, vec![1, 1]);
        assert_eq!(step_discrete_line(&ys(&[5, 0]), &[true, true]).y, vec![6, 1]);
    }

    #[test]
    fn ring_steps() {
        assert_eq!(
            step_discrete_ring(&ys(&[0, 0]), &[true, true], 3).unwrap().y,
            vec![1, 1]
        );
        assert_eq!(
            step_discrete_ring(&ys(&[2, 0]), &[true, false], 2).unwrap().y,
            vec![2, 0]
        );
        assert!(matches!(
            step_discrete_ring(&ys(&[3, 0]), &[false, false], 2),
            Err(TasepError::RingViolation { .. })
        ));
        assert!(matches!(Ring::new(2, 1), Err(TasepError::DegenerateRing { .. })));
        assert!(matches!(Ring::new(2, 2), Err(TasepError::DegenerateRing { .. })));
    }

    #[test]
    fn coupling_trivial_drivers() {
        let zero = BernoulliDriver::from_bits(3, vec![vec![false; 3]; 5]).unwrap();
        let run = coupled_run(&zero, 5).unwrap();
        assert!(run.y.iter().all(|v| v == &vec![0, 0, 0]));
        assert!(run.agrees());
        let bits: Vec<Vec<bool>> = [1, 0, 1, 1, 0, 1].iter().map(|&b| vec![b == 1]).collect();
        let one = BernoulliDriver::from_bits(1, bits.clone()).unwrap();
        let run = coupled_run(&one, 3).unwrap();
        let inc: Vec<i64> = run.ledge_increments().iter().map(|v| v[0]).collect();
        assert_eq!(inc, bits.iter().map(|b| b[0] as i64).collect::<Vec<_>>());
    }

    #[test]
    fn coupling_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.random_range(1..=4);
            let l = rng.random_range(n + 1..=8);
            let d = BernoulliDriver::sample(&vec![0.5; n], 30, &mut rng);
            assert!(coupled_run(&d, l).unwrap().agrees());
        }
    }

    #[test]
    fn ctmc_free_particle_is_poisson() {
        let t = 1.3f64;
        for l in [2usize, 5] {
            let p = ctmc_oracle(&[0], &[3], t, Geometry::Ring(l), 1e-14).unwrap();
            let exact = (-t).exp() * t.powi(3) / 6.0;
            assert!((p - exact).abs() < 1e-12);
        }
        assert_eq!(ctmc_oracle(&[1, 0], &[1, 0], 0.0, Geometry::Line, 1e-12).unwrap(), 1.0);
        assert_eq!(ctmc_oracle(&[1, 0], &[2, 0], 0.0, Geometry::Line, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn ctmc_mass_is_one() {
        let d = ctmc_distribution(&[1, 0], 1.0f64, Geometry::Ring(4), 1e-13).unwrap();
        let total: f64 = d.values().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(d.keys().all(|x| x[0] < x[1] + 4));
    }

    #[test]
    fn dtmc_single_particle_binomial() {
        let p = rate(1, 3);
        let v = dtmc_oracle(&[0], &[2], 4, &[p], Geometry::Line).unwrap();
        assert_eq!(v, rate(6 * 4, 81));
        assert_eq!(
            dtmc_oracle(&[1, 0], &[1, 0], 0, &[rate(1, 2), rate(1, 2)], Geometry::Line).unwrap(),
            BigRational::one()
        );
    }

    #[test]
    fn conversions() {
        let x = ParticleStateX::new(vec![3, 1, 0]).unwrap();
        assert_eq!(x.to_y().y, vec![4, 3, 3]);
        assert_eq!(x.to_y().to_x(), x);
        assert!(ParticleStateX::new(vec![1, 1]).is_err());
        assert!(ParticleStateX::on_ring(vec![4, 0], 4).is_err());
    }
}

//! Exact rational constants of the construction: the diagonal branching
//! table, the alpha growth constant, the epsilon threshold, and the growth
//! schedule used by the automaton builder.

use super::BuildError;
use crate::rat::{q, qi, Q};
use num_traits::{One, Signed, Zero};

/// Diagonal array of branching lower bounds: `entry(1, 0) = 1 - 3 e0`, and
/// for `i + j > 1`
///
/// * `entry(i, j) = (1 - e0) entry(i-1, j) - sum_{k<j} (1 - entry(i, k))`
///   when `j < i - 1`,
/// * `entry(i, i-1) = 1 - 3 e0 - sum_{k<i-1} (1 - entry(i, k))`.
#[derive(Clone, Debug)]
pub struct BranchingTable {
    pub eps0: Q,
    pub n: usize,
    rows: Vec<Vec<Q>>,
}

impl BranchingTable {
    pub fn new(eps0: &Q, n: usize) -> Result<BranchingTable, BuildError> {
        if !(eps0 > &Q::zero() && eps0 < &q(1, 3)) || n == 0 {
            return Err(BuildError::OutOfRange(
                "branching table needs 0 < eps0 < 1/3 and n >= 1".into(),
            ));
        }
        let one = Q::one();
        let base = &one - qi(3) * eps0;
        let shrink = &one - eps0;
        let mut rows: Vec<Vec<Q>> = Vec::with_capacity(n);
        for i in 1..=n {
            let mut row: Vec<Q> = Vec::with_capacity(i);
            for j in 0..i {
                let deficit: Q = row.iter().map(|d| &one - d).sum();
                let value = if j == i - 1 {
                    &base - &deficit
                } else {
                    &shrink * &rows[i - 2][j] - &deficit
                };
                row.push(value);
            }
            rows.push(row);
        }
        Ok(BranchingTable {
            eps0: eps0.clone(),
            n,
            rows,
        })
    }

    /// `entry(i, j)` with `1 <= i <= n`, `0 <= j < i`.
    pub fn entry(&self, i: usize, j: usize) -> &Q {
        &self.rows[i - 1][j]
    }

    /// Componentwise dominance: `entry(i, j) <= entry(i', j')` whenever
    /// `i' <= i` and `j' <= j`. (This is the ordering the growth bounds
    /// use; ordering by the index sum `i + j` fails already to first order
    /// in epsilon, e.g. `entry(6, 0) > entry(4, 1)`.)
    pub fn is_monotone(&self) -> bool {
        for i in 1..=self.n {
            for j in 0..i {
                let v = self.entry(i, j);
                for i2 in 1..=i {
                    for j2 in 0..i2.min(j + 1) {
                        if (i2, j2) != (i, j) && v > self.entry(i2, j2) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// The deepest diagonal entry `entry(n, n-1)` at the given epsilon.
pub fn deep_entry(eps0: &Q, n: usize) -> Result<Q, BuildError> {
    Ok(BranchingTable::new(eps0, n)?.entry(n, n - 1).clone())
}

/// Largest epsilon of the form `2^-e` (3 <= e <= 20, so at most 1/5) whose
/// deep diagonal entry stays positive. Non-increasing in `n`.
pub fn eps_threshold(n: usize) -> Result<Q, BuildError> {
    if n == 0 {
        return Err(BuildError::OutOfRange("n >= 1 required".into()));
    }
    for e in 3..=20u32 {
        let candidate = Q::new(1.into(), num_bigint::BigInt::from(1u64 << e));
        if deep_entry(&candidate, n)?.is_positive() {
            return Ok(candidate);
        }
    }
    Err(BuildError::OutOfRange(format!(
        "no positive grid epsilon found for n = {n}"
    )))
}

/// `alpha = eps0 (1 - eps1) entry(n, n-1)`, without domain checks.
pub fn alpha_raw(eps0: &Q, eps1: &Q, n: usize) -> Result<Q, BuildError> {
    Ok(eps0 * (Q::one() - eps1) * deep_entry(eps0, n)?)
}

/// The alpha growth constant, with its domain: `0 < eps0 <= eps_threshold(n)`
/// and `eps0 <= eps1 < 1`.
pub fn growth_alpha(eps0: &Q, eps1: &Q, n: usize) -> Result<Q, BuildError> {
    if !(eps0 > &Q::zero() && eps0 <= &eps_threshold(n)?) {
        return Err(BuildError::OutOfRange(
            "eps0 must lie in (0, eps_threshold(n)]".into(),
        ));
    }
    if !(eps1 >= eps0 && eps1 < &Q::one()) {
        return Err(BuildError::OutOfRange("need eps0 <= eps1 < 1".into()));
    }
    alpha_raw(eps0, eps1, n)
}

/// Master constants for a build: the chosen epsilon, lambda, and the
/// decreasing growth floors `gamma(1) >= ... >= gamma(n) > 0`.
#[derive(Clone, Debug)]
pub struct GrowthSchedule {
    pub n: usize,
    pub eps1: Q,
    pub eps0: Q,
    pub lambda: Q,
    pub gamma: Vec<Q>,
}

impl GrowthSchedule {
    pub fn gamma_at(&self, i: usize) -> &Q {
        &self.gamma[i - 1]
    }

    /// Per-level backward-fraction bound `eps1 / (2 lambda - 1)^(n-i)`.
    pub fn eps1_at(&self, i: usize) -> Q {
        let spread = Q::one() - qi(4) * &self.eps0;
        let mut denom = Q::one();
        for _ in 0..(self.n - i) {
            denom *= &spread;
        }
        &self.eps1 / denom
    }
}

/// Chooses `eps0 = min(1/5, eps_threshold(n), s)` where `s` is the largest
/// 20-bit dyadic with `(1 - 4 s)^n >= eps1`, then derives the schedule.
pub fn growth_schedule(n: usize, eps1: &Q) -> Result<GrowthSchedule, BuildError> {
    if n == 0 || !(eps1 > &Q::zero() && eps1 < &Q::one()) {
        return Err(BuildError::OutOfRange(
            "growth schedule needs n >= 1 and 0 < eps1 < 1".into(),
        ));
    }
    let scale: i64 = 1 << 20;
    let ok = |t: i64| -> bool {
        // (1 - 4 t / 2^20)^n >= eps1, exactly
        let e = q(t, scale);
        let base = Q::one() - qi(4) * e;
        if !base.is_positive() {
            return false;
        }
        let mut pow = Q::one();
        for _ in 0..n {
            pow *= &base;
        }
        pow >= *eps1
    };
    let (mut lo, mut hi) = (0i64, scale / 4);
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    if lo == 0 {
        return Err(BuildError::OutOfRange(
            "eps1 too close to 1 for the dyadic grid".into(),
        ));
    }
    let mut eps0 = q(lo, scale);
    eps0 = eps0.min(q(1, 5)).min(eps_threshold(n)?);
    let lambda = Q::one() - qi(2) * &eps0;
    let spread = Q::one() - qi(4) * &eps0; // 2 lambda - 1
    let mut gamma: Vec<Q> = Vec::with_capacity(n);
    // gamma(1) = 1 - eps1 / spread^(n-1)
    let mut denom = Q::one();
    for _ in 0..(n - 1) {
        denom *= &spread;
    }
    gamma.push(Q::one() - eps1 / &denom);
    for i in 2..=n {
        let mut d = Q::one();
        for _ in 0..(n - i) {
            d *= &spread;
        }
        let a = alpha_raw(&eps0, &(eps1 / &d), i)?;
        let cand = (&spread * &gamma[i - 2]).min(a).min(eps0.clone());
        gamma.push(cand);
    }
    Ok(GrowthSchedule {
        n,
        eps1: eps1.clone(),
        eps0,
        lambda,
        gamma,
    })
}

/// Smallest generator count making the rewired growth positive:
/// `lambda = min(1/3, (2/3) gamma(n) at eps1 = 3/4)`, then the least `k`
/// with `2k > 1 / lambda`.
pub fn reduced_rank_threshold(n: usize) -> Result<usize, BuildError> {
    let sched = growth_schedule(n, &q(3, 4))?;
    let theta = sched.gamma_at(n);
    let lambda = q(1, 3).min(q(2, 3) * theta);
    // least k with 2k * lambda > 1
    let mut k = 1usize;
    while qi(2) * qi(k as i64) * &lambda <= Q::one() {
        k += 1;
    }
    Ok(k)
}

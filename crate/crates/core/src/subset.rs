//! Exponential-cost subset-sum formulas for tail and state probabilities.
//!
//! Each marker matrix splits as `H(t) = H(0) + (H(1) - H(0))·t`, and
//! `H(t1, t2) = H(0,0) + (H(1,0) - H(0,0))·t1 + (H(1,1) - H(1,0))·t1·t2`.
//! Expanding the product and collecting the terms whose marker counts meet a
//! threshold gives the probabilities as sums of plain 3×3 products over
//! subsets of components. These serve as reference values for the
//! polynomial engine and are only practical for small `n`.

use crate::error::{Error, Result};
use crate::model::{ComponentChain, Level, StateDistribution, SystemSpec};
use crate::poly::{build_h_bivariate, build_h_univariate};

/// Component count guard for [`subset_tail_increasing`].
pub const MAX_UNIVARIATE_N: usize = 20;
/// Component count guard for [`subset_state_decreasing`].
pub const MAX_BIVARIATE_N: usize = 12;

type Mat3 = [[f64; 3]; 3];

const ZERO: Mat3 = [[0.0; 3]; 3];

fn sub(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j] - b[i][j]))
}

fn row_times(v: &[f64; 3], m: &Mat3) -> [f64; 3] {
    std::array::from_fn(|j| v[0] * m[0][j] + v[1] * m[1][j] + v[2] * m[2][j])
}

/// Membership of one component in the subsets that select its factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetMatrixSelector {
    /// `u ∈ S` for the univariate expansion.
    Univariate { in_s: bool },
    /// `u ∈ S1`, `u ∈ S2` for the bivariate expansion.
    Bivariate { in_s1: bool, in_s2: bool },
}

/// Per-component factors `H(0)`, `H(1) - H(0)` (univariate) or
/// `H(0,0)`, `H(1,0) - H(0,0)`, `H(1,1) - H(1,0)` (bivariate).
#[derive(Debug, Clone)]
pub struct SubsetFactors {
    univariate: Option<Vec<[Mat3; 2]>>,
    bivariate: Option<Vec<[Mat3; 3]>>,
}

impl SubsetFactors {
    pub fn univariate(chain: &ComponentChain, level: Level) -> Self {
        let factors = chain
            .matrices()
            .iter()
            .map(|m| {
                let h = build_h_univariate(m, level);
                let h0 = h.eval(0.0);
                [h0, sub(&h.eval(1.0), &h0)]
            })
            .collect();
        SubsetFactors {
            univariate: Some(factors),
            bivariate: None,
        }
    }

    pub fn bivariate(chain: &ComponentChain) -> Self {
        let factors = chain
            .matrices()
            .iter()
            .map(|m| {
                let h = build_h_bivariate(m);
                let h00 = h.eval(0.0, 0.0);
                let h10 = h.eval(1.0, 0.0);
                [h00, sub(&h10, &h00), sub(&h.eval(1.0, 1.0), &h10)]
            })
            .collect();
        SubsetFactors {
            univariate: None,
            bivariate: Some(factors),
        }
    }

    /// Factor for component `u` (0-based). Mismatched selector kinds resolve to the zero matrix.
    pub fn select(&self, u: usize, selector: SubsetMatrixSelector) -> Mat3 {
        match selector {
            SubsetMatrixSelector::Univariate { in_s } => match &self.univariate {
                Some(f) => f[u][usize::from(in_s)],
                None => ZERO,
            },
            SubsetMatrixSelector::Bivariate { in_s1, in_s2 } => match (&self.bivariate, in_s1, in_s2) {
                (Some(f), false, false) => f[u][0],
                (Some(f), true, false) => f[u][1],
                (Some(f), true, true) => f[u][2],
                _ => ZERO,
            },
        }
    }
}

fn start_vector(chain: &ComponentChain) -> [f64; 3] {
    let mut v = [0.0; 3];
    v[chain.start().index()] = 1.0;
    v
}

fn guard(method: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::TooLarge { method, n, limit });
    }
    Ok(())
}

/// `R^j = Σ_{|S| ≥ k} e_start · Π_u G_{u,S} · 1`, subsets in ascending mask order.
pub fn subset_tail_increasing(chain: &ComponentChain, level: Level, k: usize) -> Result<f64> {
    let n = chain.len();
    guard("subset (univariate)", n, MAX_UNIVARIATE_N)?;
    if k > n {
        return Err(Error::ThresholdOutOfRange { k, max: n });
    }
    let factors = SubsetFactors::univariate(chain, level);
    let start = start_vector(chain);
    let mut total = 0.0;
    for mask in 0u32..(1 << n) {
        if (mask.count_ones() as usize) < k {
            continue;
        }
        let mut v = start;
        for u in 0..n {
            let in_s = mask >> u & 1 == 1;
            v = row_times(&v, &factors.select(u, SubsetMatrixSelector::Univariate { in_s }));
        }
        total += v.iter().sum::<f64>();
    }
    Ok(total)
}

fn pair_term(factors: &SubsetFactors, start: [f64; 3], n: usize, s1: u32, s2: u32) -> f64 {
    let mut v = start;
    for u in 0..n {
        let selector = SubsetMatrixSelector::Bivariate {
            in_s1: s1 >> u & 1 == 1,
            in_s2: s2 >> u & 1 == 1,
        };
        v = row_times(&v, &factors.select(u, selector));
    }
    v.iter().sum()
}

/// `r^j` of any system as a double sum over subset pairs `(S1, S2)`:
/// `j = 2` sums all `S1` and `|S2| ≥ k2`, `j = 1` sums `|S1| ≥ k1` and `|S2| < k2`.
/// Pairs with `S2 ⊄ S1` contain a zero factor and are skipped.
pub fn subset_state_decreasing(chain: &ComponentChain, spec: &SystemSpec, level: Level) -> Result<f64> {
    let n = chain.len();
    guard("subset (bivariate)", n, MAX_BIVARIATE_N)?;
    spec.check_chain(chain)?;
    let factors = SubsetFactors::bivariate(chain);
    let start = start_vector(chain);
    let keep = |s1: u32, s2: u32| {
        let (c1, c2) = (s1.count_ones() as usize, s2.count_ones() as usize);
        match level {
            Level::Perfect => c2 >= spec.k2(),
            Level::AtLeastPartial => c1 >= spec.k1() && c2 < spec.k2(),
        }
    };
    let mut total = 0.0;
    for s1 in 0u32..(1 << n) {
        // submasks of s1 in ascending order
        let mut s2 = 0u32;
        loop {
            if keep(s1, s2) {
                total += pair_term(&factors, start, n, s1, s2);
            }
            if s2 == s1 {
                break;
            }
            s2 = (s2 | !s1).wrapping_add(1) & s1;
        }
    }
    Ok(total)
}

/// Full distribution through the subset formulas: the univariate expansion for
/// `k1 <= k2`, the pair expansion otherwise.
pub fn subset_distribution(chain: &ComponentChain, spec: &SystemSpec) -> Result<StateDistribution> {
    spec.check_chain(chain)?;
    if spec.is_increasing_or_constant() {
        let cum1 = subset_tail_increasing(chain, Level::AtLeastPartial, spec.k1())?;
        let cum2 = subset_tail_increasing(chain, Level::Perfect, spec.k2())?;
        Ok(StateDistribution::from_cumulative(cum1, cum2))
    } else {
        let r1 = subset_state_decreasing(chain, spec, Level::AtLeastPartial)?;
        let r2 = subset_state_decreasing(chain, spec, Level::Perfect)?;
        Ok(StateDistribution::from_exact(r1, r2))
    }
}

/// Largest `n` the subset route accepts for this system.
pub fn subset_limit(spec: &SystemSpec) -> usize {
    if spec.is_increasing_or_constant() {
        MAX_UNIVARIATE_N
    } else {
        MAX_BIVARIATE_N
    }
}

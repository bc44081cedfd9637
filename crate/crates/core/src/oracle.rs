//! Ground truth that never touches generating-function algebra: exhaustive
//! enumeration of all `3^n` trajectories and a seeded Monte Carlo sampler.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{ComponentChain, ComponentState, StateDistribution, SystemSpec, TransitionMatrix};

/// Component count guard for [`brute_force_joint`].
pub const MAX_BRUTE_FORCE_N: usize = 12;

/// `table[x][y] = Pr{N_{n,1} = x, N_{n,2} = y}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointPmf {
    table: Vec<Vec<f64>>,
}

impl JointPmf {
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.table
            .get(x)
            .and_then(|row| row.get(y))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn table(&self) -> &[Vec<f64>] {
        &self.table
    }

    pub fn n(&self) -> usize {
        self.table.len() - 1
    }

    pub fn total(&self) -> f64 {
        self.table.iter().flatten().sum()
    }

    /// System state probabilities under `spec`, classified per cell.
    pub fn distribution(&self, spec: &SystemSpec) -> StateDistribution {
        let mut r = [0.0; 3];
        for (x, row) in self.table.iter().enumerate() {
            for (y, p) in row.iter().enumerate() {
                r[spec.classify(x, y).index()] += p;
            }
        }
        StateDistribution::from_exact(r[1], r[2])
    }
}

struct Enumerator<'a> {
    matrices: &'a [TransitionMatrix],
    table: Vec<Vec<f64>>,
}

impl Enumerator<'_> {
    fn walk(&mut self, u: usize, prev: usize, prob: f64, x: usize, y: usize) {
        if u == self.matrices.len() {
            self.table[x][y] += prob;
            return;
        }
        for state in 0..3 {
            let p = self.matrices[u].get(prev, state);
            self.walk(
                u + 1,
                state,
                prob * p,
                x + usize::from(state >= 1),
                y + usize::from(state == 2),
            );
        }
    }
}

/// Enumerates every state sequence depth-first with a running product.
pub fn brute_force_joint(chain: &ComponentChain) -> Result<JointPmf> {
    let n = chain.len();
    if n > MAX_BRUTE_FORCE_N {
        return Err(Error::TooLarge {
            method: "brute force",
            n,
            limit: MAX_BRUTE_FORCE_N,
        });
    }
    let mut e = Enumerator {
        matrices: chain.matrices(),
        table: vec![vec![0.0; n + 1]; n + 1],
    };
    e.walk(0, chain.start().index(), 1.0, 0, 0);
    Ok(JointPmf { table: e.table })
}

/// Brute-force state distribution.
pub fn brute_force_distribution(chain: &ComponentChain, spec: &SystemSpec) -> Result<StateDistribution> {
    spec.check_chain(chain)?;
    Ok(brute_force_joint(chain)?.distribution(spec))
}

/// Reproducible uniform stream.
///
/// The generator is xoshiro256** whose 256-bit state is filled from the
/// 64-bit seed by four successive SplitMix64 outputs. Each uniform is
/// `(next_u64 >> 11) · 2^-53`, which lies in `[0, 1)`. Both algorithms are
/// published with reference C code, so another implementation fed the same
/// seed produces the same stream.
#[derive(Debug, Clone)]
pub struct SeededRng(Xoshiro256StarStar);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(Xoshiro256StarStar::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Index drawn from a 3-point distribution by inverse CDF.
    pub fn categorical(&mut self, probs: &[f64; 3]) -> usize {
        let u = self.uniform();
        if u < probs[0] {
            0
        } else if u < probs[0] + probs[1] {
            1
        } else {
            2
        }
    }
}

/// Sample proportions of the three system states.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McEstimate {
    pub r_hat: [f64; 3],
    pub std_err: [f64; 3],
    pub samples: u64,
    pub seed: u64,
}

fn std_err(p: f64, samples: u64) -> f64 {
    (p * (1.0 - p) / samples as f64).sqrt()
}

impl McEstimate {
    /// The estimate as a distribution, with `R1 = r1 + r2`.
    pub fn distribution(&self) -> StateDistribution {
        StateDistribution {
            r0: self.r_hat[0],
            r1: self.r_hat[1],
            r2: self.r_hat[2],
            cum1: self.r_hat[1] + self.r_hat[2],
            cum2: self.r_hat[2],
        }
    }

    /// Standard errors aligned with [`StateDistribution::as_array`].
    pub fn std_err_array(&self) -> [f64; 5] {
        let cum1 = self.r_hat[1] + self.r_hat[2];
        [
            self.std_err[0],
            self.std_err[1],
            self.std_err[2],
            std_err(cum1, self.samples),
            self.std_err[2],
        ]
    }

    /// Largest `|estimate - exact| / std_err` over the five columns. Columns
    /// with zero standard error count as infinite unless they match exactly.
    pub fn max_z(&self, exact: &StateDistribution) -> f64 {
        self.distribution()
            .as_array()
            .iter()
            .zip(exact.as_array())
            .zip(self.std_err_array())
            .map(|((est, ex), se)| {
                let diff = (est - ex).abs();
                if diff == 0.0 {
                    0.0
                } else {
                    diff / se
                }
            })
            .fold(0.0, f64::max)
    }
}

/// Draws `samples` trajectories and classifies each under `spec`.
pub fn monte_carlo(chain: &ComponentChain, spec: &SystemSpec, samples: u64, seed: u64) -> Result<McEstimate> {
    spec.check_chain(chain)?;
    if samples == 0 {
        return Err(Error::ZeroSamples);
    }
    let mut rng = SeededRng::new(seed);
    let mut counts = [0u64; 3];
    let start = chain.start().index();
    for _ in 0..samples {
        let (mut prev, mut x, mut y) = (start, 0, 0);
        for m in chain.matrices() {
            prev = rng.categorical(&m.rows()[prev]);
            x += usize::from(prev >= 1);
            y += usize::from(prev == 2);
        }
        counts[spec.classify(x, y).index()] += 1;
    }
    let r_hat = counts.map(|c| c as f64 / samples as f64);
    Ok(McEstimate {
        r_hat,
        std_err: r_hat.map(|p| std_err(p, samples)),
        samples,
        seed,
    })
}

/// A random valid matrix; roughly one entry in eight is an exact zero.
pub fn random_matrix(rng: &mut SeededRng) -> TransitionMatrix {
    let rows = std::array::from_fn(|_| loop {
        let w: [f64; 3] = std::array::from_fn(|_| {
            let u = rng.uniform();
            if u < 0.125 {
                0.0
            } else {
                rng.uniform()
            }
        });
        let s: f64 = w.iter().sum();
        if s > 0.0 {
            break w.map(|v| v / s);
        }
    });
    TransitionMatrix::new(rows).expect("normalized rows are stochastic")
}

/// A random non-homogeneous chain with a random start state.
pub fn random_chain(n: usize, seed: u64) -> Result<ComponentChain> {
    let mut rng = SeededRng::new(seed);
    let start = ComponentState::ALL[(rng.next_u64() % 3) as usize];
    let matrices = (0..n).map(|_| random_matrix(&mut rng)).collect();
    Ok(ComponentChain::new(matrices)?.with_start(start))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_chain_absorbed() {
        let chain = ComponentChain::homogeneous(TransitionMatrix::IDENTITY, 5)
            .unwrap()
            .with_start(ComponentState::Failed);
        let pmf = brute_force_joint(&chain).unwrap();
        assert_eq!(pmf.get(0, 0), 1.0);
        assert_eq!(pmf.total(), 1.0);
        let spec = SystemSpec::new(5, 2, 3).unwrap();
        let est = monte_carlo(&chain, &spec, 1000, 7).unwrap();
        assert_eq!(est.r_hat, [1.0, 0.0, 0.0]);
        assert_eq!(est.std_err, [0.0; 3]);
    }

    #[test]
    fn two_components_by_hand() {
        let a = [[0.2, 0.3, 0.5], [0.6, 0.1, 0.3], [0.25, 0.25, 0.5]];
        let b = [[0.1, 0.7, 0.2], [0.4, 0.4, 0.2], [0.3, 0.0, 0.7]];
        let chain = ComponentChain::from_rows(&[a, b])
            .unwrap()
            .with_start(ComponentState::Partial);
        let pmf = brute_force_joint(&chain).unwrap();
        // nine trajectories (l1, l2) from X0 = 1
        let mut expected = [[0.0; 3]; 3];
        for l1 in 0..3 {
            for l2 in 0..3 {
                let p = a[1][l1] * b[l1][l2];
                let x = usize::from(l1 >= 1) + usize::from(l2 >= 1);
                let y = usize::from(l1 == 2) + usize::from(l2 == 2);
                expected[x][y] += p;
            }
        }
        for x in 0..3 {
            for y in 0..3 {
                assert!((pmf.get(x, y) - expected[x][y]).abs() < 1e-15);
            }
        }
        assert_eq!(pmf.get(0, 1), 0.0);
        assert!((pmf.total() - 1.0).abs() < 1e-15);
        // spot check: both components perfect
        assert!((pmf.get(2, 2) - 0.3 * 0.7).abs() < 1e-15);
    }

    #[test]
    fn brute_force_guard() {
        let chain = ComponentChain::homogeneous(TransitionMatrix::IDENTITY, 13).unwrap();
        assert!(matches!(brute_force_joint(&chain), Err(Error::TooLarge { limit: 12, .. })));
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let chain = random_chain(6, 11).unwrap();
        let spec = SystemSpec::new(6, 4, 2).unwrap();
        let a = monte_carlo(&chain, &spec, 5000, 99).unwrap();
        let b = monte_carlo(&chain, &spec, 5000, 99).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.r_hat.iter().sum::<f64>(), 1.0);
        let c = monte_carlo(&chain, &spec, 5000, 100).unwrap();
        assert_ne!(a.r_hat, c.r_hat);
        assert_eq!(monte_carlo(&chain, &spec, 0, 1), Err(Error::ZeroSamples));
    }

    #[test]
    fn seeded_stream_is_pinned() {
        // independent SplitMix64 + xoshiro256** reference implementation
        let mut rng = SeededRng::new(0);
        assert_eq!(rng.next_u64(), 0x99ec5f36cb75f2b4);
        assert_eq!(rng.next_u64(), 0xbf6e1f784956452a);
        assert_eq!(rng.next_u64(), 0x1a5f849d4933e6e0);
        let mut rng = SeededRng::new(0x5eed);
        assert_eq!(rng.next_u64(), 0xef33f17055244b74);
        assert_eq!(rng.uniform(), (0xe1f591112fb5051bu64 >> 11) as f64 / 9007199254740992.0);
    }

    #[test]
    fn random_chain_rows_are_stochastic() {
        for seed in 0..50 {
            let chain = random_chain(7, seed).unwrap();
            for m in chain.matrices() {
                for row in m.rows() {
                    assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
                }
            }
        }
    }
}

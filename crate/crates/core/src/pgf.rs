//! Generating functions of `N_{n,1}` and `N_{n,2}` by transfer-matrix products.
//!
//! The product `e_start · H_1 ⋯ H_n · 1` is folded left to right as a row
//! vector of three polynomials. Entry `β` of the vector after component `c`
//! is the generating function restricted to trajectories that end in
//! `X_c = β`. Multiplying by `H_c` only scales polynomials and shifts them by
//! the marker of the target column, so the univariate fold costs
//! `9·n(n+1)/2` multiply-adds and the bivariate one `O(n³)`.

use crate::error::{Error, Result};
use crate::model::{ComponentChain, Level, StateDistribution, SystemSpec};
use crate::poly::{bivariate_marker, BivariatePoly, UnivariatePoly};

/// `Ψ_{n,j}(t) = E[t^{N_{n,j}}]`.
pub fn pgf_univariate(chain: &ComponentChain, level: Level) -> UnivariatePoly {
    pgf_univariate_counted(chain, level).0
}

/// [`pgf_univariate`] together with the number of scalar multiply-adds performed.
pub fn pgf_univariate_counted(chain: &ComponentChain, level: Level) -> (UnivariatePoly, u64) {
    let n = chain.len();
    let mut acc = [vec![0.0; n + 1], vec![0.0; n + 1], vec![0.0; n + 1]];
    let mut next = acc.clone();
    acc[chain.start().index()][0] = 1.0;
    let shift: [usize; 3] = std::array::from_fn(|b| level.indicator(b));
    let mut ops = 0u64;

    for (c, m) in chain.matrices().iter().enumerate() {
        // acc holds polynomials of degree <= c
        for (b, out) in next.iter_mut().enumerate() {
            out[..=c + 1].fill(0.0);
            let dst = &mut out[shift[b]..=c + shift[b]];
            for (a, src) in acc.iter().enumerate() {
                let p = m.get(a, b);
                for (d, s) in dst.iter_mut().zip(&src[..=c]) {
                    *d += p * s;
                }
            }
            ops += 3 * (c as u64 + 1);
        }
        std::mem::swap(&mut acc, &mut next);
    }

    let coeffs = (0..=n).map(|x| acc[0][x] + acc[1][x] + acc[2][x]).collect();
    (UnivariatePoly::from_coeffs(coeffs), ops)
}

/// `Γ(t1, t2) = E[t1^{N_{n,1}} t2^{N_{n,2}}]`.
pub fn pgf_bivariate(chain: &ComponentChain) -> BivariatePoly {
    pgf_bivariate_counted(chain).0
}

/// [`pgf_bivariate`] together with the number of scalar multiply-adds performed.
pub fn pgf_bivariate_counted(chain: &ComponentChain) -> (BivariatePoly, u64) {
    let n = chain.len();
    let width = n + 1;
    let mut acc = [vec![0.0; width * width], vec![0.0; width * width], vec![0.0; width * width]];
    let mut next = acc.clone();
    acc[chain.start().index()][0] = 1.0;
    let markers: [(usize, usize); 3] = std::array::from_fn(bivariate_marker);
    let mut ops = 0u64;

    for (c, m) in chain.matrices().iter().enumerate() {
        let p = m.rows();
        for out in next.iter_mut() {
            out[..(c + 2) * width].fill(0.0);
        }
        // support after c components: y <= x <= c
        for x in 0..=c {
            for y in 0..=x {
                let i = x * width + y;
                let v = [acc[0][i], acc[1][i], acc[2][i]];
                for (b, out) in next.iter_mut().enumerate() {
                    let s = p[0][b] * v[0] + p[1][b] * v[1] + p[2][b] * v[2];
                    let (dx, dy) = markers[b];
                    out[(x + dx) * width + y + dy] = s;
                }
                ops += 9;
            }
        }
        std::mem::swap(&mut acc, &mut next);
    }

    let coeffs = (0..width * width)
        .map(|i| acc[0][i] + acc[1][i] + acc[2][i])
        .collect();
    (BivariatePoly::from_flat(n, coeffs), ops)
}

/// `Pr{N >= k}` read off a generating function.
pub fn tail_probability(poly: &UnivariatePoly, k: usize) -> Result<f64> {
    poly.tail(k)
}

/// State distribution of an increasing or constant system (`k1 <= k2`) from
/// the two univariate generating functions.
pub fn increasing_distribution(chain: &ComponentChain, spec: &SystemSpec) -> Result<StateDistribution> {
    spec.check_chain(chain)?;
    if !spec.is_increasing_or_constant() {
        return Err(Error::WrongStructure {
            k1: spec.k1(),
            k2: spec.k2(),
        });
    }
    let cum1 = pgf_univariate(chain, Level::AtLeastPartial).tail(spec.k1())?;
    let cum2 = pgf_univariate(chain, Level::Perfect).tail(spec.k2())?;
    Ok(StateDistribution::from_cumulative(cum1, cum2))
}

/// State distribution of any system from the bivariate generating function.
pub fn general_distribution(chain: &ComponentChain, spec: &SystemSpec) -> Result<StateDistribution> {
    spec.check_chain(chain)?;
    Ok(distribution_from_joint(&pgf_bivariate(chain), spec))
}

/// `r2 = Σ_{y ≥ k2} Γ[x][y]`, `r1 = Σ_{x ≥ k1, y < k2} Γ[x][y]`, summed in row-major order.
pub fn distribution_from_joint(gamma: &BivariatePoly, spec: &SystemSpec) -> StateDistribution {
    let (k1, k2) = (spec.k1(), spec.k2());
    let mut r1 = 0.0;
    let mut r2 = 0.0;
    for (x, row) in gamma.rows().enumerate() {
        for (y, c) in row.iter().enumerate() {
            if y >= k2 {
                r2 += c;
            } else if x >= k1 {
                r1 += c;
            }
        }
    }
    StateDistribution::from_exact(r1, r2)
}

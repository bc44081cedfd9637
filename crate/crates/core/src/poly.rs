//! Dense coefficient stores for generating functions and the per-component
//! marker matrices `H_c^j(t)` and `H_c(t1, t2)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Level, TransitionMatrix};

/// `coeffs[x]` is the coefficient of `t^x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnivariatePoly {
    coeffs: Vec<f64>,
}

impl UnivariatePoly {
    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        UnivariatePoly { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        UnivariatePoly {
            coeffs: vec![0.0; degree + 1],
        }
    }

    /// `scale · t^power`.
    pub fn monomial(scale: f64, power: usize) -> Self {
        let mut p = Self::zero(power);
        p.coeffs[power] = scale;
        p
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, x: usize) -> f64 {
        self.coeffs.get(x).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    pub fn sum(&self) -> f64 {
        self.coeffs.iter().sum()
    }

    /// Sum of `coeffs[x]` for `x >= k`, accumulated in ascending index order.
    pub fn tail(&self, k: usize) -> Result<f64> {
        let max = self.coeffs.len();
        if k > max {
            return Err(Error::ThresholdOutOfRange { k, max });
        }
        Ok(self.coeffs[k..].iter().sum())
    }
}

/// `coeffs[x][y]` is the coefficient of `t1^x t2^y`, stored row-major with
/// `degree + 1` columns.
#[derive(Debug, Clone, PartialEq)]
pub struct BivariatePoly {
    degree: usize,
    coeffs: Vec<f64>,
}

impl BivariatePoly {
    pub fn zero(degree: usize) -> Self {
        BivariatePoly {
            degree,
            coeffs: vec![0.0; (degree + 1) * (degree + 1)],
        }
    }

    pub(crate) fn from_flat(degree: usize, coeffs: Vec<f64>) -> Self {
        debug_assert_eq!(coeffs.len(), (degree + 1) * (degree + 1));
        BivariatePoly { degree, coeffs }
    }

    /// `scale · t1^x t2^y`.
    pub fn monomial(scale: f64, x: usize, y: usize) -> Self {
        let mut p = Self::zero(x.max(y));
        p.set(x, y, scale);
        p
    }

    pub fn degree_bound(&self) -> usize {
        self.degree
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        if x > self.degree || y > self.degree {
            return 0.0;
        }
        self.coeffs[x * (self.degree + 1) + y]
    }

    pub fn set(&mut self, x: usize, y: usize, value: f64) {
        self.coeffs[x * (self.degree + 1) + y] = value;
    }

    /// Rows of the coefficient table, indexed by the `t1` power.
    pub fn rows(&self) -> std::slice::Chunks<'_, f64> {
        self.coeffs.chunks(self.degree + 1)
    }

    pub fn to_table(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    pub fn eval(&self, t1: f64, t2: f64) -> f64 {
        self.rows()
            .rev()
            .fold(0.0, |acc, row| acc * t1 + row.iter().rev().fold(0.0, |a, c| a * t2 + c))
    }

    pub fn sum(&self) -> f64 {
        self.coeffs.iter().sum()
    }

    /// `Γ(t, 1)`: coefficients summed over the `t2` power.
    pub fn marginal_first(&self) -> UnivariatePoly {
        UnivariatePoly::from_coeffs(self.rows().map(|row| row.iter().sum()).collect())
    }

    /// `Γ(1, t)`: coefficients summed over the `t1` power.
    pub fn marginal_second(&self) -> UnivariatePoly {
        let mut out = vec![0.0; self.degree + 1];
        for row in self.rows() {
            for (o, c) in out.iter_mut().zip(row) {
                *o += c;
            }
        }
        UnivariatePoly::from_coeffs(out)
    }

    /// Nonzero coefficients as `(x, y, value)` in row-major order.
    pub fn nonzero(&self) -> Vec<(usize, usize, f64)> {
        let width = self.degree + 1;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(i, c)| (i / width, i % width, *c))
            .collect()
    }
}

/// A 3×3 matrix of polynomial entries sharing one degree bound.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix3<P> {
    entries: [[P; 3]; 3],
}

impl<P> PolyMatrix3<P> {
    pub fn entry(&self, row: usize, col: usize) -> &P {
        &self.entries[row][col]
    }
}

fn build<P>(f: impl Fn(usize, usize) -> P) -> [[P; 3]; 3] {
    std::array::from_fn(|a| std::array::from_fn(|b| f(a, b)))
}

impl PolyMatrix3<UnivariatePoly> {
    pub fn eval(&self, t: f64) -> [[f64; 3]; 3] {
        build(|a, b| self.entries[a][b].eval(t))
    }
}

impl PolyMatrix3<BivariatePoly> {
    pub fn eval(&self, t1: f64, t2: f64) -> [[f64; 3]; 3] {
        build(|a, b| self.entries[a][b].eval(t1, t2))
    }
}

/// `H^j(t)[α][β] = p^{αβ} · t^{[j ≤ β]}`.
pub fn build_h_univariate(matrix: &TransitionMatrix, level: Level) -> PolyMatrix3<UnivariatePoly> {
    let entries = build(|a, b| {
        let mut p = UnivariatePoly::zero(1);
        p.coeffs[level.indicator(b)] = matrix.get(a, b);
        p
    });
    PolyMatrix3 { entries }
}

/// `H(t1, t2)`: column 0 unmarked, column 1 carries `t1`, column 2 carries `t1 t2`.
pub fn build_h_bivariate(matrix: &TransitionMatrix) -> PolyMatrix3<BivariatePoly> {
    let entries = build(|a, b| {
        let mut p = BivariatePoly::zero(1);
        let (x, y) = bivariate_marker(b);
        p.set(x, y, matrix.get(a, b));
        p
    });
    PolyMatrix3 { entries }
}

/// Powers of `(t1, t2)` contributed by a component in `state`.
pub(crate) fn bivariate_marker(state: usize) -> (usize, usize) {
    (usize::from(state >= 1), usize::from(state == 2))
}

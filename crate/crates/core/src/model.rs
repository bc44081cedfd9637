//! Domain types shared by every computation backend.
//!
//! A system is a line of `n` components. Component `u` is in state
//! `X_u ∈ {0, 1, 2}` and its law depends only on the state of component
//! `u - 1` through the row-stochastic matrix `p_u[α][β] = Pr{X_u = β | X_{u-1} = α}`.
//! Component 1 is conditioned on a fixed predecessor state `X_0`, the chain's
//! [`start`](ComponentChain::start). The default start is
//! [`ComponentState::Perfect`], which is the convention under which the
//! published numerical examples for this model are reproduced.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximum deviation of a row sum from 1 accepted by [`TransitionMatrix::new`].
pub const ROW_SUM_TOLERANCE: f64 = 1e-9;

/// Negative probabilities down to this magnitude are float cancellation and get clamped.
pub const CLAMP_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum ComponentState {
    Failed = 0,
    Partial = 1,
    Perfect = 2,
}

impl ComponentState {
    pub const ALL: [ComponentState; 3] = [Self::Failed, Self::Partial, Self::Perfect];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl Default for ComponentState {
    fn default() -> Self {
        ComponentState::Perfect
    }
}

impl TryFrom<u8> for ComponentState {
    type Error = Error;

    fn try_from(code: u8) -> Result<Self> {
        match code {
            0 => Ok(Self::Failed),
            1 => Ok(Self::Partial),
            2 => Ok(Self::Perfect),
            other => Err(Error::InvalidState(other)),
        }
    }
}

impl From<ComponentState> for u8 {
    fn from(state: ComponentState) -> u8 {
        state as u8
    }
}

/// Level `j` of a cumulative count `N_{n,j}`: the number of components in state `j` or above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    AtLeastPartial = 1,
    Perfect = 2,
}

impl Level {
    pub const ALL: [Level; 2] = [Level::AtLeastPartial, Level::Perfect];

    /// `1` when a component in `state` counts toward `N_{n,j}`.
    pub fn indicator(self, state: usize) -> usize {
        usize::from(self as usize <= state)
    }
}

impl TryFrom<u8> for Level {
    type Error = Error;

    fn try_from(j: u8) -> Result<Self> {
        match j {
            1 => Ok(Level::AtLeastPartial),
            2 => Ok(Level::Perfect),
            other => Err(Error::InvalidLevel(other)),
        }
    }
}

/// One component's 3×3 row-stochastic conditional probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(into = "[[f64; 3]; 3]")]
pub struct TransitionMatrix([[f64; 3]; 3]);

impl TransitionMatrix {
    pub const IDENTITY: TransitionMatrix =
        TransitionMatrix([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    /// Validates `rows` as a conditional distribution. Values are stored as given.
    pub fn new(rows: [[f64; 3]; 3]) -> Result<Self> {
        for (row, values) in rows.iter().enumerate() {
            for (col, &value) in values.iter().enumerate() {
                if !value.is_finite() {
                    return Err(Error::NonFiniteEntry { row, col });
                }
                if value < 0.0 {
                    return Err(Error::NegativeEntry { row, col, value });
                }
                if value > 1.0 {
                    return Err(Error::EntryAboveOne { row, col, value });
                }
            }
            let sum: f64 = values.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
                return Err(Error::RowSumViolation { row, sum });
            }
        }
        Ok(TransitionMatrix(rows))
    }

    pub fn rows(&self) -> &[[f64; 3]; 3] {
        &self.0
    }

    pub fn row(&self, from: ComponentState) -> &[f64; 3] {
        &self.0[from.index()]
    }

    /// `Pr{X_u = to | X_{u-1} = from}`.
    pub fn get(&self, from: usize, to: usize) -> f64 {
        self.0[from][to]
    }
}

impl From<TransitionMatrix> for [[f64; 3]; 3] {
    fn from(m: TransitionMatrix) -> Self {
        m.0
    }
}

impl TryFrom<[[f64; 3]; 3]> for TransitionMatrix {
    type Error = Error;

    fn try_from(rows: [[f64; 3]; 3]) -> Result<Self> {
        TransitionMatrix::new(rows)
    }
}

impl<'de> Deserialize<'de> for TransitionMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = <[[f64; 3]; 3]>::deserialize(d)?;
        TransitionMatrix::new(rows).map_err(serde::de::Error::custom)
    }
}

/// A constant-matrix run of components `from..=to` (1-based, inclusive).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub from: usize,
    pub to: usize,
    pub matrix: TransitionMatrix,
}

impl Segment {
    pub fn new(from: usize, to: usize, matrix: TransitionMatrix) -> Self {
        Segment { from, to, matrix }
    }
}

/// Ordered, non-empty sequence of per-component transition matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentChain {
    matrices: Vec<TransitionMatrix>,
    start: ComponentState,
}

impl ComponentChain {
    pub fn new(matrices: Vec<TransitionMatrix>) -> Result<Self> {
        if matrices.is_empty() {
            return Err(Error::ZeroLength);
        }
        Ok(ComponentChain {
            matrices,
            start: ComponentState::default(),
        })
    }

    /// Validates every row array, reporting failures with the 1-based component index.
    pub fn from_rows(rows: &[[[f64; 3]; 3]]) -> Result<Self> {
        let matrices = rows
            .iter()
            .enumerate()
            .map(|(i, r)| TransitionMatrix::new(*r).map_err(|e| e.in_component(i + 1)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(matrices)
    }

    pub fn homogeneous(matrix: TransitionMatrix, n: usize) -> Result<Self> {
        Self::new(vec![matrix; n])
    }

    /// Builds a chain from segments that cover `1..=n` exactly once, in any order.
    pub fn segmented(segments: &[Segment], n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroLength);
        }
        let mut slots: Vec<Option<TransitionMatrix>> = vec![None; n];
        for seg in segments {
            if seg.from == 0 || seg.from > seg.to || seg.to > n {
                return Err(Error::IndexOutOfRange {
                    from: seg.from,
                    to: seg.to,
                    n,
                });
            }
            for index in seg.from..=seg.to {
                let slot = &mut slots[index - 1];
                if slot.is_some() {
                    return Err(Error::OverlappingSegments { index });
                }
                *slot = Some(seg.matrix);
            }
        }
        let matrices = slots
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or(Error::GapInCoverage { index: i + 1 }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(matrices)
    }

    /// Replaces the fixed predecessor state `X_0` of component 1.
    pub fn with_start(mut self, start: ComponentState) -> Self {
        self.start = start;
        self
    }

    pub fn start(&self) -> ComponentState {
        self.start
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn matrices(&self) -> &[TransitionMatrix] {
        &self.matrices
    }

    /// First `n` components of this chain, keeping the start state.
    pub fn prefix(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroLength);
        }
        if n > self.len() {
            return Err(Error::LengthMismatch {
                spec: n,
                chain: self.len(),
            });
        }
        Ok(ComponentChain {
            matrices: self.matrices[..n].to_vec(),
            start: self.start,
        })
    }

    /// Marginal distribution of component 1.
    pub fn first_marginal(&self) -> [f64; 3] {
        *self.matrices[0].row(self.start)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SystemKind {
    Increasing,
    Constant,
    Decreasing,
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SystemKind::Increasing => "increasing",
            SystemKind::Constant => "constant",
            SystemKind::Decreasing => "decreasing",
        };
        f.write_str(name)
    }
}

/// `n` components; state ≥ 1 needs `k1` components in state ≥ 1, state 2 needs
/// `k2` components in state 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SystemSpec {
    n: usize,
    k1: usize,
    k2: usize,
}

impl SystemSpec {
    pub fn new(n: usize, k1: usize, k2: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroLength);
        }
        for (name, value) in [("k1", k1), ("k2", k2)] {
            if value == 0 || value > n {
                return Err(Error::InvalidThreshold { name, value, n });
            }
        }
        Ok(SystemSpec { n, k1, k2 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    pub fn kind(&self) -> SystemKind {
        use std::cmp::Ordering::*;
        match self.k1.cmp(&self.k2) {
            Less => SystemKind::Increasing,
            Equal => SystemKind::Constant,
            Greater => SystemKind::Decreasing,
        }
    }

    /// Increasing and constant systems both admit the univariate treatment.
    pub fn is_increasing_or_constant(&self) -> bool {
        self.k1 <= self.k2
    }

    /// System state for a given pair of counts `(N_{n,1}, N_{n,2})`.
    pub fn classify(&self, at_least_partial: usize, perfect: usize) -> ComponentState {
        if perfect >= self.k2 {
            ComponentState::Perfect
        } else if at_least_partial >= self.k1 {
            ComponentState::Partial
        } else {
            ComponentState::Failed
        }
    }

    pub(crate) fn check_chain(&self, chain: &ComponentChain) -> Result<()> {
        if chain.len() != self.n {
            return Err(Error::LengthMismatch {
                spec: self.n,
                chain: chain.len(),
            });
        }
        Ok(())
    }
}

/// Exact-state probabilities `r0, r1, r2` with cumulative `R1 = r1 + r2`, `R2 = r2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateDistribution {
    pub r0: f64,
    pub r1: f64,
    pub r2: f64,
    #[serde(rename = "R1")]
    pub cum1: f64,
    #[serde(rename = "R2")]
    pub cum2: f64,
}

fn clamp(p: f64) -> f64 {
    if p < 0.0 && p >= -CLAMP_TOLERANCE {
        0.0
    } else {
        p
    }
}

impl StateDistribution {
    /// From the cumulative probabilities `R1 = Pr{state ≥ 1}` and `R2 = Pr{state = 2}`.
    pub fn from_cumulative(cum1: f64, cum2: f64) -> Self {
        StateDistribution {
            r0: clamp(1.0 - cum1),
            r1: clamp(cum1 - cum2),
            r2: clamp(cum2),
            cum1: clamp(cum1),
            cum2: clamp(cum2),
        }
    }

    /// From the exact-state probabilities `r1` and `r2`.
    pub fn from_exact(r1: f64, r2: f64) -> Self {
        StateDistribution {
            r0: clamp(1.0 - r1 - r2),
            r1: clamp(r1),
            r2: clamp(r2),
            cum1: clamp(r1 + r2),
            cum2: clamp(r2),
        }
    }

    /// `[r0, r1, r2, R1, R2]`.
    pub fn as_array(&self) -> [f64; 5] {
        [self.r0, self.r1, self.r2, self.cum1, self.cum2]
    }

    pub fn max_abs_diff(&self, other: &StateDistribution) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn state(&self, state: ComponentState) -> f64 {
        match state {
            ComponentState::Failed => self.r0,
            ComponentState::Partial => self.r1,
            ComponentState::Perfect => self.r2,
        }
    }
}

//! Published worked examples for this model, with their printed values kept verbatim.
//!
//! The example chains use the default start state (component 1 drawn from
//! row 2 of its matrix), which is the convention under which the printed
//! numbers come out.

use crate::document::{RawSegment, Rows, SpecDocument};

/// Three-component chain of the first two worked examples.
pub const EXAMPLE_COMPONENTS: [Rows; 3] = [
    [[0.3, 0.4, 0.3], [0.2, 0.5, 0.3], [0.1, 0.3, 0.6]],
    [[0.2, 0.45, 0.35], [0.25, 0.5, 0.25], [0.1, 0.35, 0.55]],
    [[0.25, 0.5, 0.25], [0.2, 0.55, 0.25], [0.15, 0.3, 0.55]],
];

/// Coefficients of `Ψ_{3,1}` for `t^0..t^3`.
pub const EXAMPLE1_PSI1: [f64; 4] = [0.0050, 0.06300, 0.29975, 0.63225];
/// Coefficients of `Ψ_{3,2}` for `t^0..t^3`.
pub const EXAMPLE1_PSI2: [f64; 4] = [0.21750, 0.32450, 0.27650, 0.18150];
pub const EXAMPLE1_K: (usize, usize) = (2, 3);
/// `(r0, r1, r2, R1, R2)`.
pub const EXAMPLE1_DISTRIBUTION: [f64; 5] = [0.06800, 0.75050, 0.18150, 0.93200, 0.18150];

/// The ten printed nonzero coefficients of `Γ(t1, t2)` as `(x, y, value)`.
pub const EXAMPLE2_GAMMA: [(usize, usize, f64); 10] = [
    (0, 0, 0.0050),
    (3, 3, 0.18150),
    (3, 2, 0.19275),
    (3, 1, 0.17550),
    (3, 0, 0.0825),
    (2, 2, 0.08375),
    (2, 1, 0.12375),
    (2, 0, 0.09225),
    (1, 0, 0.03775),
    (1, 1, 0.02525),
];
/// Printed as `k2 = 1`, but every printed sum (`Σ_{|S2| < 2}`, `r2` over `y >= 2`) uses `k2 = 2`.
pub const EXAMPLE2_K: (usize, usize) = (3, 2);
/// Printed `(r0, r1, r2)`. `r0` and `r2` were rounded from a mistyped
/// coefficient and differ from the exact sums by 5e-5.
pub const EXAMPLE2_PUBLISHED: [f64; 3] = [0.28405, 0.25800, 0.45795];
/// `(r0, r1, r2)` implied by the printed `Γ` coefficients.
pub const EXAMPLE2_FROM_GAMMA: [f64; 3] = [0.28400, 0.25800, 0.45800];

const TABLE_ROWS_A: Rows = [[0.25, 0.45, 0.3], [0.15, 0.5, 0.35], [0.1, 0.3, 0.6]];
const TABLE_ROWS_B: Rows = [[0.15, 0.55, 0.3], [0.15, 0.5, 0.35], [0.1, 0.3, 0.6]];
const TABLE_ROWS_C: Rows = [[0.2, 0.55, 0.25], [0.1, 0.45, 0.45], [0.05, 0.3, 0.65]];

/// Piecewise-constant 20-component chain behind the state-distribution table.
pub fn table1_segments(n: usize) -> Vec<RawSegment> {
    [(1, 5, TABLE_ROWS_A), (6, 15, TABLE_ROWS_B), (16, 20, TABLE_ROWS_C)]
        .into_iter()
        .filter(|(from, _, _)| *from <= n)
        .map(|(from, to, matrix)| RawSegment {
            from,
            to: to.min(n),
            matrix,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub n: usize,
    pub k1: usize,
    pub k2: usize,
    /// `(r0, r1, r2, R1, R2)` as printed.
    pub values: [f64; 5],
}

const fn row(n: usize, k1: usize, k2: usize, values: [f64; 5]) -> TableRow {
    TableRow { n, k1, k2, values }
}

pub const TABLE1: [TableRow; 13] = [
    row(10, 4, 3, [0.0002071763, 0.13342191280, 0.8663709109, 0.9997928237, 0.8663709109]),
    row(10, 5, 3, [0.0013698082, 0.13225928090, 0.8663709109, 0.9986301918, 0.8663709109]),
    row(10, 6, 4, [0.0084395255, 0.26531485150, 0.7262456230, 0.9915604745, 0.7262456230]),
    row(10, 6, 5, [0.0094690450, 0.44387722540, 0.5466537296, 0.9905309550, 0.5466537296]),
    row(15, 5, 4, [0.0000010609, 0.07440229886, 0.9255966402, 0.9999989391, 0.9255966402]),
    row(15, 7, 5, [0.0000831322, 0.15466683570, 0.8452500321, 0.9999168678, 0.8452500321]),
    row(15, 8, 6, [0.0005412759, 0.27127122260, 0.7281875015, 0.9994587241, 0.7281875015]),
    row(15, 8, 7, [0.0005575429, 0.41640144220, 0.5830410149, 0.9994424571, 0.5830410149]),
    row(20, 7, 6, [0.0000000783, 0.06870243220, 0.9312974895, 0.9999999217, 0.9312974895]),
    row(20, 9, 7, [0.0000046993, 0.13104703960, 0.8689482611, 0.9999953007, 0.8689482611]),
    row(20, 10, 9, [0.0000293583, 0.33736341170, 0.6626072300, 0.9999706417, 0.6626072300]),
    row(20, 12, 10, [0.0007354415, 0.46896212730, 0.5303024312, 0.9992645585, 0.5303024312]),
    row(20, 15, 10, [0.0309837102, 0.43871385880, 0.5303024312, 0.9690162900, 0.5303024312]),
];

pub fn example1_document() -> SpecDocument {
    SpecDocument {
        n: 3,
        k1: EXAMPLE1_K.0,
        k2: EXAMPLE1_K.1,
        components: Some(EXAMPLE_COMPONENTS.to_vec()),
        ..Default::default()
    }
}

pub fn example2_document() -> SpecDocument {
    SpecDocument {
        k1: EXAMPLE2_K.0,
        k2: EXAMPLE2_K.1,
        ..example1_document()
    }
}

pub fn table1_document(n: usize, k1: usize, k2: usize) -> SpecDocument {
    SpecDocument {
        n,
        k1,
        k2,
        segments: Some(table1_segments(n)),
        ..Default::default()
    }
}

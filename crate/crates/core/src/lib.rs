//! State distributions of three-state k-out-of-n:G systems whose components
//! form a non-homogeneous Markov chain.
//!
//! The exact route folds per-component 3×3 marker matrices into generating
//! functions of the counts `N_{n,1}` (components in state ≥ 1) and `N_{n,2}`
//! (components in state 2); see [`pgf`]. [`subset`] evaluates the same
//! probabilities through exponential subset sums, and [`oracle`] provides
//! enumeration and Monte Carlo ground truth for cross-checking.
//!
//! ```
//! use tristate_kofn::{fixtures, pgf, document::load_system};
//!
//! let sys = fixtures::example1_document().resolve().unwrap();
//! let d = pgf::general_distribution(&sys.chain, &sys.spec).unwrap();
//! assert!((d.r1 - 0.7505).abs() < 1e-12);
//! ```

pub mod backend;
pub mod document;
pub mod error;
pub mod fixtures;
pub mod model;
pub mod oracle;
pub mod pgf;
pub mod poly;
pub mod subset;
pub mod timing;

pub use backend::{compute, Method, Outcome};
pub use error::{Error, Result};
pub use model::{
    ComponentChain, ComponentState, Level, Segment, StateDistribution, SystemKind, SystemSpec,
    TransitionMatrix,
};

//! Exact invariants of Kato surfaces computed from their Dloussky sequence.
//!
//! ```
//! use kato_core::{chern, sequence::DlousskySequence};
//!
//! let seq: DlousskySequence = "[s2 r2]".parse().unwrap();
//! let d = chern::closed_form_multiplicities(&seq).unwrap();
//! assert_eq!(d.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(), ["2/1", "1/1", "2/1", "3/1"]);
//! ```

pub mod chern;
pub mod deform;
pub mod enumerate;
pub mod error;
pub mod forms;
pub mod germ;
pub mod graph;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod sequence;
pub mod validate;

pub use error::{Error, Result};
pub use rational::Rational;
pub use sequence::{DlousskySequence, Limits, SurfaceClass};

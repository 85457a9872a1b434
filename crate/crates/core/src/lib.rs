//! Quantum weight enumerators and undetected-error probabilities for
//! stabilizer codes over the depolarizing channel, with a dense-matrix
//! oracle and a protocol simulator for cross-checking.
//!
//! ```
//! use qed_core::{catalog, enumerators::stabilizer_enumerators, pue::pue_stabilizer};
//!
//! let code = catalog::load("c422").unwrap().unwrap();
//! let pair = stabilizer_enumerators(&code).unwrap();
//! assert_eq!(pair.b().iter().map(|b| b.to_string()).collect::<Vec<_>>(), ["1", "0", "0", "0", "3"]);
//! let p = pue_stabilizer(&pair, 0.1).unwrap();
//! assert!(p > 0.0 && p < 0.1);
//! ```

pub mod catalog;
pub mod chansim;
pub mod code;
pub mod codefile;
pub mod enumerators;
pub mod error;
pub mod gf4;
pub mod oracle;
pub mod pue;
pub mod rng;

pub use code::AdditiveCode;
pub use codefile::{format_code, parse_code};
pub use enumerators::{EnumeratorPair, WeightDistribution};
pub use error::{Error, Result};
pub use gf4::{trace_inner, Gf4, Gf4Vector};
pub use pue::{ChannelParams, Mode};
pub use rng::RunPlan;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/codes.md")]
    mod codes {}
    #[doc = include_str!("../../../book/src/enumerators.md")]
    mod enumerators {}
    #[doc = include_str!("../../../book/src/undetected.md")]
    mod undetected {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

//! Symbolic decision engine for parabolic induction in p-adic classical groups.
//!
//! The crate works entirely with formal data: abstract unitary cuspidal
//! symbols, Zelevinsky segments over them, Jordan-block multisets describing
//! tempered L-packets, and Langlands parameters built from those. On top of
//! that it decides irreducibility of induced representations, computes
//! extended cuspidal supports and reducibility points, tests genericity of
//! packets and assembles branching multiplicity tables from externally
//! supplied epsilon data.
//!
//! All exponents are exact rationals ([`Q`]); nothing in the crate uses
//! floating point.
//!
//! Module map:
//!
//! - [`symbols`]: cuspidal symbol universe and group spaces
//! - [`segcalc`]: GL-side segment calculus
//! - [`jordan`]: Jordan-block sets, extended supports, Jacquet feasibility
//! - [`linkage`]: the liaison predicate and the irreducibility verdict
//! - [`packets`]: Langlands parameters, genericity, component groups
//! - [`gp`]: multiplicity tables and epsilon oracles
//! - [`cli`]: expression language, JSON file formats and command dispatch

pub mod cli;
pub mod error;
pub mod gp;
pub mod jordan;
pub mod linkage;
pub mod multiset;
pub mod packets;
pub mod rational;
pub mod segcalc;
pub mod symbols;

pub use error::{Error, Result};
pub use gp::{
    demo_oracle, mu, multiplicity_table, reduce_to_tempered, DemoOracle, EpsilonOracle, GpPair,
    MultiplicityTable, OracleAnswer, TableOracle,
};
pub use jordan::{Block, ExtendedSupport, JordUpdate, JordanSet};
pub use linkage::{Triple, Verdict};
pub use multiset::Multiset;
pub use packets::{LanglandsParameter, ParamBlock, Sign, SignCharacter};
pub use rational::Q;
pub use segcalc::{CuspidalPoint, Derivative, Segment};
pub use symbols::{GroupKind, GroupSpace, SelfDuality, SymbolId, Universe};

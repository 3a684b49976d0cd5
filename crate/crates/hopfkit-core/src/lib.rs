//! Exact computational engine for finite dimensional Hopf algebras presented
//! by structure constants over Q or GF(p).

pub mod constructions;
pub mod error;
pub mod fixtures;
pub mod formats;
pub mod groups;
pub mod hopf;
pub mod iso;
pub mod matched_pair;
pub mod matrix;
pub mod scalar;
pub mod series;
pub mod subobjects;
pub mod subspace;

pub use error::{Error, Result};
pub use groups::FiniteGroup;
pub use hopf::{AxiomReport, FactorTag, Hopf, HopfAlgebra, HopfMorphism};
pub use matched_pair::MatchedPairData;
pub use matrix::Matrix;
pub use scalar::{Field, Scalar};
pub use subobjects::{ExactSequence, HopfSubalgebra, QuotientHopf, RightCoidealSubalgebra, Side};
pub use subspace::Subspace;

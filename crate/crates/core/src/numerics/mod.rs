//! Exact and fixed-point arithmetic.

pub mod complex;
pub mod context;
pub mod exact;
pub mod input;
pub mod quad;
pub mod rational;
pub mod roots;
pub mod scalar;

pub use complex::BigComplex;
pub use context::PrecisionContext;
pub use exact::{Exact, ExactComplex};
pub use input::{embed, AlgebraicInput};
pub use quad::{quad_arith, QuadExt, QuadOp};
pub use rational::Rational;
pub use roots::{root_of_unity, root_of_unity_exact};
pub use scalar::Scalar;

//! Ratios of associated Gauss hypergeometric functions
//!
//! R(z) = 2F1(a+n1, b+n2; c+m; z) / 2F1(a, b; c; z)
//!
//! The crate evaluates these ratios through Cauchy-type integral
//! representations driven by the boundary imaginary part on the branch cut
//! [1, ∞), counts and locates the poles coming from zeros of the
//! denominator, and ships independent oracles (series division, ODE path
//! integration, boundary fitting) for every closed-form ingredient.

pub mod continuation;
pub mod dd;
pub mod error;
pub mod ode;
pub mod poly;
pub mod quadrature;
pub mod representation;
pub mod special;
pub mod theory;
pub mod zeros;

pub use continuation::{hyp2f1, hyp2f1_boundary, hyp2f1_derivative, Bank, CutPlanePoint};
pub use error::{Error, Result};
pub use ode::hyp2f1_ode_oracle;
pub use poly::{RationalFunction, RealPolynomial};
pub use quadrature::{QuadratureConfig, Scheme};
pub use representation::{Representation, Strategy};
pub use special::{Params, Precision, Shift};
pub use theory::{AsymptoticProfile, IndexData};
pub use zeros::{XiQuadruple, ZeroKind, ZeroReport};

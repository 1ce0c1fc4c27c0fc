//! Discretization substrate: periodic grid, quadrature, Fourier transform,
//! finite differences and phase unwrapping.

mod derivative;
mod fourier;
mod grid;
mod quadrature;
mod sampled;
mod unwrap;

pub use derivative::{derivative, Derivative, DerivativeOrder, MIN_REGION};
pub use fourier::{from_momentum, to_momentum};
pub use grid::{Grid, MIN_POINTS};
pub use quadrature::{inner_product, integrate};
pub use sampled::{RealFunction, SampledFunction};
pub use unwrap::{contiguous_region, unwrap_phase, AliasingWarning, Unwrapped};

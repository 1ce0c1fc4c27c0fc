//! Equal superpositions of non-orthogonal wavepackets on a periodic 1D grid.
//!
//! The crate builds pairs of states, forms their normalized sum, extracts the
//! phase difference between them and locates its stationary point. From the
//! curvature there it derives the Fresnel estimate of the overlap, the
//! classical and quantum broadening lengths, and the two causality
//! inequalities that an interference pattern violates.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below are what the command-line driver uses.

// Negated comparisons are deliberate: they reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod causality;
pub mod error;
pub mod interference;
pub mod numerics;
mod scalar;
pub mod states;
pub mod stationary_phase;

pub use error::{Error, Result};
pub use scalar::{principal, Cplx, Real};

pub type Grid64 = numerics::Grid<f64>;
pub type SampledFunction64 = numerics::SampledFunction<f64>;
pub type RealFunction64 = numerics::RealFunction<f64>;
pub type GaussianSpec64 = states::GaussianSpec<f64>;
pub type WaveFunction64 = states::WaveFunction<f64>;
pub type PhaseProfile64 = stationary_phase::PhaseProfile<f64>;
pub type StationaryPoint64 = stationary_phase::StationaryPoint<f64>;
pub type CausalityReport64 = causality::CausalityReport<f64>;

pub type Grid32 = numerics::Grid<f32>;
pub type WaveFunction32 = states::WaveFunction<f32>;

//! Adiabatic preparation of the three-spin transverse-field Ising triangle
//! and detection of its frustrated and non-frustrated ground states through
//! negativity and discord monogamy scores.
//!
//! The numerical core (`qla`, `spin_model`, `adiabatic`, `correlations`,
//! `nmr_model`) is generic over [`Real`] (`f32` or `f64`). The aliases below
//! fix the scalar to `f64`, which is what `experiment` and the CLI use.

pub mod adiabatic;
pub mod cli;
pub mod correlations;
pub mod error;
pub mod experiment;
pub mod nmr_model;
pub mod qla;
pub mod scalar;
pub mod spin_model;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

pub type ComplexMatrix = qla::Matrix<f64>;
pub type DensityMatrix = qla::DensityMatrix<f64>;
pub type StateVector = qla::StateVector<f64>;
pub type ModelParams = spin_model::ModelParams<f64>;
pub type SpectrumPoint = spin_model::SpectrumPoint<f64>;
pub type Schedule = adiabatic::Schedule<f64>;
pub type ScheduleConfig = adiabatic::ScheduleConfig<f64>;
pub type Trajectory = adiabatic::Trajectory<f64>;
pub type DiscordResult = correlations::DiscordResult<f64>;
pub type PurityFactor = nmr_model::PurityFactor<f64>;

pub type ComplexMatrixF32 = qla::Matrix<f32>;
pub type DensityMatrixF32 = qla::DensityMatrix<f32>;
pub type StateVectorF32 = qla::StateVector<f32>;
pub type ModelParamsF32 = spin_model::ModelParams<f32>;
pub type TrajectoryF32 = adiabatic::Trajectory<f32>;

pub use adiabatic::{EvolutionMode, Regime, Shape};
pub use experiment::{CorrelationRecord, ExperimentConfig};

//! The discrete Voronoi game on graphs.
//!
//! `k` players each pick a facility vertex; every customer vertex is shared
//! equally among its closest facilities and a player's payoff is the
//! (weighted) amount of customers it receives. This crate computes exact
//! payoffs, best responses and Nash equilibria, runs best-response dynamics,
//! characterizes equilibria on cycles, and builds the constructions used to
//! show that deciding equilibrium existence is NP-complete and that the
//! ratio between the worst and best equilibrium social cost is unbounded.

pub mod cycle;
pub mod dynamics;
pub mod engine;
pub mod equilibria;
pub mod error;
pub mod experiment;
pub mod ext;
pub mod graph;
mod pool;
pub mod rational;
pub mod reductions;
pub mod structure;

pub use engine::{Cost, Game, GameMode, PayoffVector, VoronoiPartition};
pub use error::{Error, Result};
pub use ext::Extended;
pub use graph::{cycle_instance, path_instance, Distance, DistanceMatrix, GameInstance, Graph};
pub use rational::Rational;

//! Single-item diffusion auctions on social graphs.
//!
//! A seller can only reach its direct neighbors; everyone else hears about
//! the sale when a participant relays it. This crate implements the
//! second-price baseline restricted to the seller's neighbors, the critical
//! diffusion mechanism family for unweighted graphs ([`mechanism::cdm`]) and
//! the weighted diffusion mechanism ([`mechanism::wdm`]). The [`harness`]
//! module checks their strategic properties by brute force on small graphs.
//!
//! All amounts are exact [`Rational`]s.

pub mod bench;
pub mod critical;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod io;
pub mod mechanism;
pub mod nodeset;
pub mod paths;
pub mod profile;
pub mod rational;

pub use critical::{CriticalSequence, CutStrategy, EdgeCut};
pub use error::{CriticalError, GenError, GraphError, HarnessError, MechanismError, ProfileError};
pub use graph::{Graph, NodeId};
pub use mechanism::{AuctionOutcome, Mechanism, MechanismKind};
pub use nodeset::NodeSet;
pub use paths::{TradingPath, WelfareResult};
pub use profile::{RemovalSpec, Report, ReportedProfile};
pub use rational::Rational;

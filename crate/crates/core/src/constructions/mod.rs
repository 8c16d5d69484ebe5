//! Builders for the named constructions and auditors for the named
//! inequalities.

mod gluelemma;
mod nagytetel;
mod rossztau;
mod sl2p;

pub use gluelemma::{gluelemma_tower, GlueLevel, GlueTowerOutcome, TowerConfig};
pub use nagytetel::{nagytetel_audit, nagytetel_bound, NagytetelReport};
pub use rossztau::{lubtau_chain_report, rossztau_build, LubtauLevel, LubtauReport, Rossztau};
pub use sl2p::{is_prime, sl2p_family, sl2p_graph};

//! Auction mechanisms and their outcomes.

mod cdm;
mod vickrey;
mod wdm;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use cdm::{cdm, Cdm};
pub use vickrey::{vickrey, Vickrey};
pub use wdm::{
    intermediaries, private_leaves, reduced_distance, relay_cut, secondary_nodes, wdm, wdm_allocate, wdm_pay, Wdm,
    WdmAllocation, WdmContext, WdmPayments,
};

use crate::critical::{IdmCut, MinimalCut};
use crate::error::MechanismError;
use crate::graph::{Graph, NodeId};
use crate::paths::TradingPath;
use crate::profile::ReportedProfile;
use crate::rational::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuctionOutcome {
    pub mechanism: String,
    pub winner: Option<NodeId>,
    pub path: Option<TradingPath>,
    /// Nodes absent from the map pay zero. Negative entries are transfers
    /// from the seller.
    pub payments: BTreeMap<NodeId, Rational>,
    pub revenue: Rational,
    /// Winner's reported bid minus the allocation path weight.
    pub welfare: Rational,
    /// Some efficient-allocation computation along the way had several
    /// bidders at the top score, so tie-breaking decided the result.
    pub tied: bool,
}

impl AuctionOutcome {
    /// No sale: nobody wins and nobody pays.
    pub fn no_sale(mechanism: impl Into<String>) -> Self {
        AuctionOutcome {
            mechanism: mechanism.into(),
            winner: None,
            path: None,
            payments: BTreeMap::new(),
            revenue: Rational::zero(),
            welfare: Rational::zero(),
            tied: false,
        }
    }

    pub(crate) fn assemble(
        mechanism: impl Into<String>,
        profile: &ReportedProfile,
        winner: NodeId,
        path: TradingPath,
        payments: BTreeMap<NodeId, Rational>,
        tied: bool,
    ) -> Self {
        let collected: Rational = payments.values().copied().fold(Rational::zero(), |a, b| a + b);
        let revenue = collected - path.weight;
        let bid = profile.bid(winner).expect("winners always bid");
        let welfare = bid - path.weight;
        AuctionOutcome {
            mechanism: mechanism.into(),
            winner: Some(winner),
            path: Some(path),
            payments,
            revenue,
            welfare,
            tied,
        }
    }

    pub fn payment(&self, node: NodeId) -> Rational {
        self.payments.get(&node).copied().unwrap_or_else(Rational::zero)
    }

    /// `v_i z_i - x_i` for a node whose true valuation is `value`.
    pub fn utility(&self, node: NodeId, value: Rational) -> Rational {
        let allocated = if self.winner == Some(node) { value } else { Rational::zero() };
        allocated - self.payment(node)
    }

    pub fn to_record(&self, graph: &Graph) -> OutcomeRecord {
        OutcomeRecord {
            mechanism: self.mechanism.clone(),
            winner: self.winner.map(|w| graph.id(w).to_string()),
            path: self.path.as_ref().map_or_else(Vec::new, |p| graph.ids_of(p.nodes.iter().copied())),
            payments: self.payments.iter().map(|(n, x)| (graph.id(*n).to_string(), format_rational(x))).collect(),
            revenue: format_rational(&self.revenue),
            welfare: format_rational(&self.welfare),
        }
    }
}

/// Serialized form of an [`AuctionOutcome`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutcomeRecord {
    pub mechanism: String,
    pub winner: Option<String>,
    pub path: Vec<String>,
    pub payments: BTreeMap<String, String>,
    pub revenue: String,
    pub welfare: String,
}

pub trait Mechanism: Send + Sync {
    fn name(&self) -> String;

    fn run(&self, graph: &Graph, profile: &ReportedProfile) -> Result<AuctionOutcome, MechanismError>;

    /// Like [`run`](Self::run), mapping an empty market to a no-sale outcome.
    fn run_or_no_sale(&self, graph: &Graph, profile: &ReportedProfile) -> Result<AuctionOutcome, MechanismError> {
        match self.run(graph, profile) {
            Err(MechanismError::EmptyMarket) => Ok(AuctionOutcome::no_sale(self.name())),
            other => other,
        }
    }
}

/// The built-in mechanisms, by their command-line names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MechanismKind {
    Vickrey,
    CdmIdm,
    CdmBeta,
    Wdm,
}

impl MechanismKind {
    pub const ALL: [MechanismKind; 4] =
        [MechanismKind::Vickrey, MechanismKind::CdmIdm, MechanismKind::CdmBeta, MechanismKind::Wdm];

    pub fn as_str(self) -> &'static str {
        match self {
            MechanismKind::Vickrey => "vickrey",
            MechanismKind::CdmIdm => "cdm-idm",
            MechanismKind::CdmBeta => "cdm-beta",
            MechanismKind::Wdm => "wdm",
        }
    }

    pub fn is_cdm(self) -> bool {
        matches!(self, MechanismKind::CdmIdm | MechanismKind::CdmBeta)
    }

    pub fn build(self) -> Box<dyn Mechanism> {
        match self {
            MechanismKind::Vickrey => Box::new(Vickrey),
            MechanismKind::CdmIdm => Box::new(Cdm::new(IdmCut)),
            MechanismKind::CdmBeta => Box::new(Cdm::new(MinimalCut)),
            MechanismKind::Wdm => Box::new(Wdm),
        }
    }

    pub fn run(self, graph: &Graph, profile: &ReportedProfile) -> Result<AuctionOutcome, MechanismError> {
        self.build().run(graph, profile)
    }
}

impl fmt::Display for MechanismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MechanismKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        MechanismKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown mechanism `{s}` (expected vickrey, cdm-idm, cdm-beta or wdm)"))
    }
}

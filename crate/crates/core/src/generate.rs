//! Seeded random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GenError, GraphError};
use crate::graph::Graph;
use crate::rational::{int, Rational};

pub const SELLER_ID: &str = "s";
pub const MAX_REJECTIONS: u32 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub n: usize,
    pub edge_prob: Rational,
    pub value_max: i64,
    pub weight_max: i64,
    pub seed: u64,
    /// Draw weights from `[-weight_max, weight_max]`, rejecting graphs with a
    /// negative cycle.
    pub allow_negative_weights: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            n: 5,
            edge_prob: Rational::new(1, 2),
            value_max: 10,
            weight_max: 5,
            seed: 0,
            allow_negative_weights: false,
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<(), GenError> {
        if self.edge_prob < int(0) || self.edge_prob > int(1) {
            return Err(GenError::InvalidConfig("edge probability must lie in [0, 1]".into()));
        }
        if self.value_max < 1 {
            return Err(GenError::InvalidConfig("value maximum must be positive".into()));
        }
        if self.weight_max < 0 {
            return Err(GenError::InvalidConfig("weight maximum must be nonnegative".into()));
        }
        if self.n >= crate::nodeset::MAX_NODES {
            return Err(GraphError::TooManyNodes(self.n).into());
        }
        Ok(())
    }
}

/// Zero-padded identifiers so that lexicographic and numeric order agree.
pub fn node_ids(n: usize) -> Vec<String> {
    let width = n.to_string().len().max(2);
    (1..=n).map(|i| format!("n{i:0width$}")).collect()
}

/// A directed `G(n, p)` market: each ordered pair of buyers and each
/// seller-to-buyer pair is an edge with probability `edge_prob`. The seller
/// has no in-edges. With a positive probability the seller always gets at
/// least one out-edge. The same config always yields the same graph.
pub fn gen_random(config: &GenConfig) -> Result<Graph, GenError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let attempts = if config.allow_negative_weights { MAX_REJECTIONS } else { 1 };
    for _ in 0..attempts {
        match draw(config, &mut rng) {
            Ok(graph) => return Ok(graph),
            Err(GraphError::NegativeCycle(_)) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Err(GenError::RejectionExhausted(MAX_REJECTIONS))
}

fn draw(config: &GenConfig, rng: &mut ChaCha8Rng) -> Result<Graph, GraphError> {
    let ids = node_ids(config.n);
    let numer = u32::try_from(*config.edge_prob.numer()).expect("probability numerator fits");
    let denom = u32::try_from(*config.edge_prob.denom()).expect("probability denominator fits");
    let coin = |rng: &mut ChaCha8Rng| numer > 0 && rng.gen_ratio(numer.min(denom), denom);
    let low = if config.allow_negative_weights { -config.weight_max } else { 0 };
    let weight = |rng: &mut ChaCha8Rng| int(rng.gen_range(low..=config.weight_max));

    let nodes: Vec<(String, Rational)> =
        ids.iter().map(|id| (id.clone(), int(rng.gen_range(1..=config.value_max)))).collect();
    let mut edges = Vec::new();
    let mut seller_edges = 0;
    for id in &ids {
        if coin(rng) {
            edges.push((SELLER_ID.to_string(), id.clone(), weight(rng)));
            seller_edges += 1;
        }
    }
    if seller_edges == 0 && numer > 0 && !ids.is_empty() {
        let pick = rng.gen_range(0..ids.len());
        edges.push((SELLER_ID.to_string(), ids[pick].clone(), weight(rng)));
    }
    for from in &ids {
        for to in &ids {
            if from != to && coin(rng) {
                edges.push((from.clone(), to.clone(), weight(rng)));
            }
        }
    }
    Graph::new(SELLER_ID, nodes, edges)
}

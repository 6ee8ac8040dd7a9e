//! Embedded jump chain of the continuous-time rumor process.
//!
//! Every spreader initiates contacts with each of its `d + 1` neighbors
//! at rate one, so all active spreaders carry the same total rate and
//! the embedded discrete chain picks an active spreader uniformly, then
//! a neighbor slot uniformly. Holding times are irrelevant for every
//! statistic collected here, so they are not sampled.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::tree::{Contact, SimConfig, TruncatedTree, ROOT};
use super::SimOutcome;
use crate::error::Result;

/// Stepwise jump-chain run; exposed so tests can observe intermediate
/// states.
#[derive(Debug)]
pub struct JumpChain {
    tree: TruncatedTree,
    /// Spreaders strictly below the depth limit, in arbitrary order.
    active: Vec<u32>,
}

impl JumpChain {
    pub fn new(cfg: SimConfig) -> Result<Self> {
        let tree = TruncatedTree::new(cfg)?;
        Ok(JumpChain {
            tree,
            active: vec![ROOT],
        })
    }

    #[must_use]
    pub fn is_done(&self) -> bool {
        self.active.is_empty()
    }

    #[must_use]
    pub fn tree(&self) -> &TruncatedTree {
        &self.tree
    }

    /// One jump: uniform active spreader, uniform neighbor slot, resolve.
    /// Returns `false` once no active spreader remains below the boundary.
    pub fn step(&mut self, rng: &mut ChaCha8Rng) -> Result<bool> {
        if self.active.is_empty() {
            return Ok(false);
        }
        let pick = rng.random_range(0..self.active.len());
        let v = self.active[pick];
        let slot = rng.random_range(0..self.tree.slot_count());
        match self.tree.contact(v, slot)? {
            Contact::Informed(child) => {
                if self.tree.depth(child) < self.tree.config().depth_limit {
                    self.active.push(child);
                }
            }
            Contact::Stifling => {
                if self.tree.state(v) == super::tree::VertexState::Stifler {
                    self.active.swap_remove(pick);
                }
            }
        }
        Ok(!self.active.is_empty())
    }

    #[must_use]
    pub fn into_tree(self) -> TruncatedTree {
        self.tree
    }
}

/// Runs the jump chain until every spreader below the boundary has
/// stifled. Bounded: each spreader makes at most `d + 1 + k` contacts
/// and the sub-boundary tree is finite.
pub fn gillespie_run(cfg: &SimConfig, rng: &mut ChaCha8Rng) -> Result<SimOutcome> {
    Ok(gillespie_run_tree(cfg, rng)?.outcome())
}

/// Same run, returning the full tree for invariant checks.
pub fn gillespie_run_tree(cfg: &SimConfig, rng: &mut ChaCha8Rng) -> Result<TruncatedTree> {
    let mut chain = JumpChain::new(*cfg)?;
    while chain.step(rng)? {}
    Ok(chain.into_tree())
}

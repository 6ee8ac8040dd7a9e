//! Genealogy sampler: the per-spreader view of the same process.
//!
//! On a tree a spreader's neighborhood evolves through its own contacts
//! only, so its full contact sequence can be sampled in one go: uniform
//! slots among the `d + 1` neighbors, a fresh slot informs a child, a
//! repeated (or parent) slot is a stifling experience, the `k`-th one
//! stops. Spreaders are processed breadth-first. Distributionally
//! identical to the jump chain for every field of the outcome; only the
//! scheduling differs.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::tree::{Contact, SimConfig, TruncatedTree, VertexState, ROOT};
use super::SimOutcome;
use crate::error::Result;
use std::collections::VecDeque;

pub fn genealogy_run(cfg: &SimConfig, rng: &mut ChaCha8Rng) -> Result<SimOutcome> {
    Ok(genealogy_run_tree(cfg, rng)?.outcome())
}

/// Same run, returning the full tree for invariant checks.
pub fn genealogy_run_tree(cfg: &SimConfig, rng: &mut ChaCha8Rng) -> Result<TruncatedTree> {
    let mut tree = TruncatedTree::new(*cfg)?;
    let mut queue = VecDeque::new();
    queue.push_back(ROOT);
    while let Some(v) = queue.pop_front() {
        // drain this spreader's whole contact sequence
        while matches!(tree.state(v), VertexState::Spreader { .. }) {
            let slot = rng.random_range(0..tree.slot_count());
            if let Contact::Informed(child) = tree.contact(v, slot)? {
                if tree.depth(child) < cfg.depth_limit {
                    queue.push_back(child);
                }
            }
        }
    }
    Ok(tree)
}

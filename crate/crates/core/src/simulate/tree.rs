//! Lazily grown tree arena shared by both simulation engines.
//!
//! Only informed vertices are materialized: on a tree the neighborhood
//! of a spreader can change through its own contacts alone, so an
//! uncontacted child needs no storage. Vertices at the depth limit are
//! materialized when informed (deciding reach events exactly) but stay
//! passive forever.

use crate::error::{Error, Result};
use crate::params::ModelParams;

/// Per-vertex rumor state. The ordering `Ignorant < Spreader(0) < ... <
/// Spreader(k-1) < Stifler` is the monotone order states move along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum VertexState {
    Ignorant,
    Spreader { stifles: u32 },
    Stifler,
}

#[derive(Debug, Clone)]
pub struct Vertex {
    pub depth: u32,
    pub parent: Option<u32>,
    /// Arena indices of informed children, in creation order.
    pub children: Vec<u32>,
    pub state: VertexState,
    /// Bitmask over the `d + 1` neighbor slots this vertex has contacted
    /// or was born informed about (bit 0 = parent for non-root vertices).
    contacted: u64,
}

/// Simulation configuration shared by both engines.
#[derive(Debug, Clone, Copy)]
pub struct SimConfig {
    pub params: ModelParams,
    /// Vertices at this depth can be informed but never act.
    pub depth_limit: u32,
    /// Hard cap on materialized vertices; exceeding it is an explicit
    /// failure, never silent truncation.
    pub vertex_budget: usize,
    /// Start from a vertex that already has an informed neighbor, like
    /// any non-root spreader: its offspring then follows the offspring
    /// law instead of the root law. Used for extinction-time estimates
    /// of the single-ancestor process.
    pub single_ancestor: bool,
}

pub const DEFAULT_VERTEX_BUDGET: usize = 1_000_000;

impl SimConfig {
    pub fn new(params: ModelParams, depth_limit: u32, vertex_budget: usize) -> Result<Self> {
        if depth_limit < 1 {
            return Err(Error::InvalidArgument(
                "depth limit must be >= 1".into(),
            ));
        }
        if vertex_budget < 2 {
            return Err(Error::InvalidArgument(
                "vertex budget must allow at least the root and one child".into(),
            ));
        }
        // neighbor slots live in a u64 bitmask
        if params.degree() > 63 {
            return Err(Error::InvalidArgument(format!(
                "simulation supports d <= 63 (got d = {})",
                params.degree()
            )));
        }
        Ok(SimConfig {
            params,
            depth_limit,
            vertex_budget,
            single_ancestor: false,
        })
    }

    #[must_use]
    pub fn with_single_ancestor(mut self) -> Self {
        self.single_ancestor = true;
        self
    }
}

/// What a single contact did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contact {
    /// A fresh vertex was informed; holds its arena index.
    Informed(u32),
    /// The initiator hit a non-ignorant neighbor and took one stifling
    /// experience.
    Stifling,
}

#[derive(Debug)]
pub struct TruncatedTree {
    vertices: Vec<Vertex>,
    cfg: SimConfig,
}

pub const ROOT: u32 = 0;

impl TruncatedTree {
    /// Fresh tree: the root is a spreader with no stifling experiences,
    /// everything else ignorant (and therefore not yet materialized).
    pub fn new(cfg: SimConfig) -> Result<Self> {
        let root = Vertex {
            depth: 0,
            parent: None,
            children: Vec::new(),
            state: VertexState::Spreader { stifles: 0 },
            // in single-ancestor mode slot 0 plays the pre-informed
            // parent, exactly as for any non-root spreader
            contacted: u64::from(cfg.single_ancestor),
        };
        Ok(TruncatedTree {
            vertices: vec![root],
            cfg,
        })
    }

    #[must_use]
    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    #[must_use]
    pub fn vertex(&self, v: u32) -> &Vertex {
        &self.vertices[v as usize]
    }

    #[must_use]
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    #[must_use]
    pub fn state(&self, v: u32) -> VertexState {
        self.vertices[v as usize].state
    }

    #[must_use]
    pub fn depth(&self, v: u32) -> u32 {
        self.vertices[v as usize].depth
    }

    /// Resolves one contact from spreader `v` along neighbor slot
    /// `slot` (uniform in `0..=d`). A slot already informed costs the
    /// initiator a stifling experience; a fresh slot informs a child.
    pub fn contact(&mut self, v: u32, slot: u32) -> Result<Contact> {
        debug_assert!(slot <= self.cfg.params.degree());
        let (depth, informed_slot) = {
            let vx = &self.vertices[v as usize];
            debug_assert!(
                matches!(vx.state, VertexState::Spreader { .. }),
                "only spreaders contact"
            );
            debug_assert!(vx.depth < self.cfg.depth_limit, "boundary vertices never act");
            (vx.depth, vx.contacted >> slot & 1 == 1)
        };
        if informed_slot {
            let k = self.cfg.params.stifling_threshold();
            let vx = &mut self.vertices[v as usize];
            if let VertexState::Spreader { stifles } = vx.state {
                vx.state = if stifles + 1 >= k {
                    VertexState::Stifler
                } else {
                    VertexState::Spreader {
                        stifles: stifles + 1,
                    }
                };
            }
            return Ok(Contact::Stifling);
        }
        if self.vertices.len() >= self.cfg.vertex_budget {
            return Err(Error::VertexBudgetExceeded {
                budget: self.cfg.vertex_budget,
            });
        }
        let child_index = self.vertices.len() as u32;
        self.vertices.push(Vertex {
            depth: depth + 1,
            parent: Some(v),
            children: Vec::new(),
            state: VertexState::Spreader { stifles: 0 },
            // a non-root vertex is born knowing its parent is informed
            contacted: 1,
        });
        let vx = &mut self.vertices[v as usize];
        vx.contacted |= 1 << slot;
        vx.children.push(child_index);
        Ok(Contact::Informed(child_index))
    }

    /// Neighbor slot layout: the root's `d + 1` slots are all children;
    /// a non-root vertex has its parent at slot 0 and `d` children.
    #[must_use]
    pub fn slot_count(&self) -> u32 {
        self.cfg.params.neighbor_count()
    }

    /// Summarizes the finished run.
    #[must_use]
    pub fn outcome(&self) -> super::SimOutcome {
        let depth_limit = self.cfg.depth_limit;
        let mut max_depth = 0u32;
        for v in &self.vertices {
            max_depth = max_depth.max(v.depth);
        }
        let mut generation_counts = vec![0u64; max_depth as usize];
        let mut offspring_histogram = std::collections::BTreeMap::new();
        for v in &self.vertices {
            if v.depth >= 1 {
                generation_counts[v.depth as usize - 1] += 1;
                if v.depth < depth_limit {
                    *offspring_histogram
                        .entry(v.children.len() as u32)
                        .or_insert(0u64) += 1;
                }
            }
        }
        super::SimOutcome {
            root_offspring: self.vertices[ROOT as usize].children.len() as u32,
            informed_total: self.vertices.len() as u64 - 1,
            max_depth_reached: max_depth,
            censored: max_depth == depth_limit,
            generation_counts,
            offspring_histogram,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(d: u32, k: u32, depth: u32) -> SimConfig {
        SimConfig::new(ModelParams::new(d, k).unwrap(), depth, DEFAULT_VERTEX_BUDGET).unwrap()
    }

    #[test]
    fn state_order_is_monotone_chain() {
        assert!(VertexState::Ignorant < VertexState::Spreader { stifles: 0 });
        assert!(VertexState::Spreader { stifles: 0 } < VertexState::Spreader { stifles: 3 });
        assert!(VertexState::Spreader { stifles: 3 } < VertexState::Stifler);
    }

    #[test]
    fn contact_informs_then_stifles() {
        let mut tree = TruncatedTree::new(cfg(2, 1, 5)).unwrap();
        assert_eq!(tree.contact(ROOT, 1).unwrap(), Contact::Informed(1));
        assert_eq!(tree.depth(1), 1);
        assert_eq!(tree.vertex(1).parent, Some(ROOT));
        // repeat slot: stifling experience; k = 1 makes the root a stifler
        assert_eq!(tree.contact(ROOT, 1).unwrap(), Contact::Stifling);
        assert_eq!(tree.state(ROOT), VertexState::Stifler);
    }

    #[test]
    fn stifle_count_accumulates_below_threshold() {
        let mut tree = TruncatedTree::new(cfg(2, 3, 5)).unwrap();
        tree.contact(ROOT, 0).unwrap();
        tree.contact(ROOT, 0).unwrap();
        assert_eq!(tree.state(ROOT), VertexState::Spreader { stifles: 1 });
        tree.contact(ROOT, 0).unwrap();
        assert_eq!(tree.state(ROOT), VertexState::Spreader { stifles: 2 });
        tree.contact(ROOT, 0).unwrap();
        assert_eq!(tree.state(ROOT), VertexState::Stifler);
    }

    #[test]
    fn non_root_parent_slot_is_pre_informed() {
        let mut tree = TruncatedTree::new(cfg(2, 1, 5)).unwrap();
        tree.contact(ROOT, 0).unwrap();
        // child's slot 0 is its parent: first contact there stifles
        assert_eq!(tree.contact(1, 0).unwrap(), Contact::Stifling);
        assert_eq!(tree.state(1), VertexState::Stifler);
    }

    #[test]
    fn budget_is_enforced() {
        let tight = SimConfig::new(ModelParams::new(2, 1).unwrap(), 5, 2).unwrap();
        let mut tree = TruncatedTree::new(tight).unwrap();
        tree.contact(ROOT, 0).unwrap();
        assert!(matches!(
            tree.contact(ROOT, 1),
            Err(Error::VertexBudgetExceeded { budget: 2 })
        ));
    }

    #[test]
    fn outcome_counts_depths() {
        let mut tree = TruncatedTree::new(cfg(2, 2, 2)).unwrap();
        tree.contact(ROOT, 0).unwrap(); // vertex 1 at depth 1
        tree.contact(ROOT, 2).unwrap(); // vertex 2 at depth 1
        tree.contact(1, 1).unwrap(); // vertex 3 at depth 2 (boundary)
        let out = tree.outcome();
        assert_eq!(out.root_offspring, 2);
        assert_eq!(out.informed_total, 3);
        assert_eq!(out.generation_counts, vec![2, 1]);
        assert_eq!(out.max_depth_reached, 2);
        assert!(out.censored);
        // offspring histogram covers completed non-root spreaders only
        assert_eq!(out.offspring_histogram.get(&1), Some(&1));
        assert_eq!(out.offspring_histogram.get(&0), Some(&1));
    }

    #[test]
    fn config_validation() {
        assert!(SimConfig::new(ModelParams::new(2, 1).unwrap(), 0, 100).is_err());
        assert!(SimConfig::new(ModelParams::new(2, 1).unwrap(), 3, 1).is_err());
        // the bitmask holds at most 64 neighbor slots
        assert!(SimConfig::new(ModelParams::new(64, 1).unwrap(), 3, 100).is_err());
        assert!(SimConfig::new(ModelParams::new(63, 1).unwrap(), 3, 100).is_ok());
    }
}

use std::fmt;

use crate::graph::NodeId;

/// Capacity of a [`NodeSet`], seller included.
pub const MAX_NODES: usize = 128;

/// Fixed-capacity set of node indices backed by a single `u128`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(u128);

impl NodeSet {
    pub const fn empty() -> Self {
        NodeSet(0)
    }

    pub fn from_bits(bits: u128) -> Self {
        NodeSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn single(node: NodeId) -> Self {
        NodeSet(1 << node.index())
    }

    pub fn contains(self, node: NodeId) -> bool {
        (self.0 >> node.index()) & 1 == 1
    }

    pub fn insert(&mut self, node: NodeId) -> bool {
        let fresh = !self.contains(node);
        self.0 |= 1 << node.index();
        fresh
    }

    pub fn remove(&mut self, node: NodeId) -> bool {
        let present = self.contains(node);
        self.0 &= !(1 << node.index());
        present
    }

    pub fn with(mut self, node: NodeId) -> Self {
        self.insert(node);
        self
    }

    pub fn without(mut self, node: NodeId) -> Self {
        self.remove(node);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        NodeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        NodeSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        NodeSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest element.
    pub fn first(self) -> Option<NodeId> {
        (self.0 != 0).then(|| NodeId::new(self.0.trailing_zeros() as usize))
    }

    /// Ascending iteration.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Every subset of `self`, starting from the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets { mask: self.0, current: 0, done: false }
    }
}

impl FromIterator<NodeId> for NodeSet {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> Self {
        let mut set = NodeSet::empty();
        for node in iter {
            set.insert(node);
        }
        set
    }
}

impl IntoIterator for NodeSet {
    type Item = NodeId;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|n| n.index())).finish()
    }
}

pub struct Iter(u128);

impl Iterator for Iter {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        if self.0 == 0 {
            return None;
        }
        let idx = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(NodeId::new(idx))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

pub struct Subsets {
    mask: u128,
    current: u128,
    done: bool,
}

impl Iterator for Subsets {
    type Item = NodeSet;

    fn next(&mut self) -> Option<NodeSet> {
        if self.done {
            return None;
        }
        let out = NodeSet(self.current);
        if self.current == self.mask {
            self.done = true;
        } else {
            // standard submask increment
            self.current = (self.current.wrapping_sub(self.mask)) & self.mask;
        }
        Some(out)
    }
}

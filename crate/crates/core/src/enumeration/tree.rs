//! Abstract 3-valent trees whose ends carry the end directions of a degree
//! `d` curve, and their marked refinements.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::exact::{det2, IntVec2};

/// Bounded edge of a tree shape; `vector` points from `from` to `to` and is
/// the weighted direction (sum of the end directions beyond `to`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub from: usize,
    pub to: usize,
    pub vector: IntVec2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEnd {
    pub vertex: usize,
    pub dir: IntVec2,
}

/// Unmarked 3-valent tree with `3d` ends, one per unit of degree in each of
/// the directions `(-1,0)`, `(0,-1)`, `(1,1)`.
///
/// Edges are addressed by *slot*: bounded edges first, then ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeShape {
    pub vertices: usize,
    pub edges: Vec<TreeEdge>,
    pub ends: Vec<TreeEnd>,
}

/// Vertex multiplicity `|det(u, v)|` of two weighted direction vectors at
/// a balanced 3-valent vertex. Zero means the vertex is degenerate.
pub fn vertex_multiplicity(u: IntVec2, v: IntVec2) -> u64 {
    det2(u, v).unsigned_abs()
}

impl TreeShape {
    pub fn slot_count(&self) -> usize {
        self.edges.len() + self.ends.len()
    }

    pub fn is_end(&self, slot: usize) -> bool {
        slot >= self.edges.len()
    }

    /// `(slot, outgoing vector)` for every edge at `v`.
    pub fn incident(&self, v: usize) -> Vec<(usize, IntVec2)> {
        let mut out = Vec::with_capacity(3);
        for (i, e) in self.edges.iter().enumerate() {
            if e.from == v {
                out.push((i, e.vector));
            } else if e.to == v {
                out.push((i, -e.vector));
            }
        }
        for (i, e) in self.ends.iter().enumerate() {
            if e.vertex == v {
                out.push((self.edges.len() + i, e.dir));
            }
        }
        out
    }

    pub fn vertex_multiplicities(&self) -> Vec<u64> {
        (0..self.vertices)
            .map(|v| {
                let inc = self.incident(v);
                vertex_multiplicity(inc[0].1, inc[1].1)
            })
            .collect()
    }

    /// Product of the vertex multiplicities.
    pub fn multiplicity(&self) -> u64 {
        self.vertex_multiplicities().iter().product()
    }

    /// Whether cutting the given slots leaves every piece with exactly one
    /// end. `exact = false` only asks for at least one (a partial cut).
    pub fn cut_ok(&self, cut: &[bool], exact: bool) -> bool {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (i, e) in self.edges.iter().enumerate() {
            if !cut[i] {
                let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
                parent[a] = b;
            }
        }
        let mut ends = vec![0usize; self.vertices];
        for (i, e) in self.ends.iter().enumerate() {
            if !cut[self.edges.len() + i] {
                let r = find(&mut parent, e.vertex);
                ends[r] += 1;
            }
        }
        (0..self.vertices).all(|v| {
            if find(&mut parent, v) != v {
                return true;
            }
            if exact {
                ends[v] == 1
            } else {
                ends[v] >= 1
            }
        })
    }
}

/// End directions of a degree `d` curve, `d` copies of each.
pub fn end_directions(d: u32) -> Vec<IntVec2> {
    let mut out = Vec::new();
    for dir in [IntVec2::new(-1, 0), IntVec2::new(0, -1), IntVec2::new(1, 1)] {
        out.extend(std::iter::repeat_n(dir, d as usize));
    }
    out
}

fn class_of(dir: IntVec2) -> char {
    match (dir.x, dir.y) {
        (-1, 0) => 'a',
        (0, -1) => 'b',
        _ => 'c',
    }
}

/// Tree on `leaves + internal` nodes; leaves come first.
struct RawTree {
    leaves: Vec<IntVec2>,
    adj: Vec<Vec<usize>>,
}

impl RawTree {
    fn from_edges(leaves: &[IntVec2], edges: &[(usize, usize)]) -> Self {
        let nodes = edges.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0) + 1;
        let mut adj = vec![Vec::new(); nodes];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        RawTree { leaves: leaves.to_vec(), adj }
    }

    fn is_leaf(&self, v: usize) -> bool {
        v < self.leaves.len()
    }

    fn code(&self, v: usize, parent: usize) -> String {
        if self.is_leaf(v) {
            return class_of(self.leaves[v]).to_string();
        }
        let mut kids: Vec<String> = self.adj[v].iter().filter(|&&w| w != parent).map(|&w| self.code(w, v)).collect();
        kids.sort();
        format!("({})", kids.concat())
    }

    /// Canonical form up to relabelling ends of equal direction.
    fn canonical_code(&self) -> String {
        (self.leaves.len()..self.adj.len()).map(|r| self.code(r, usize::MAX)).min().unwrap_or_default()
    }

    /// Sum of end directions in the branch at `v` seen from `parent`.
    fn flow(&self, v: usize, parent: usize) -> IntVec2 {
        if self.is_leaf(v) {
            return self.leaves[v];
        }
        self.adj[v].iter().filter(|&&w| w != parent).map(|&w| self.flow(w, v)).sum()
    }

    fn shape(&self) -> TreeShape {
        let l = self.leaves.len();
        let index = |v: usize| v - l;
        let mut edges = Vec::new();
        let mut ends = Vec::new();
        for a in l..self.adj.len() {
            for &b in &self.adj[a] {
                if self.is_leaf(b) {
                    ends.push(TreeEnd { vertex: index(a), dir: self.leaves[b] });
                } else if a < b {
                    edges.push(TreeEdge { from: index(a), to: index(b), vector: self.flow(b, a) });
                }
            }
        }
        TreeShape { vertices: self.adj.len() - l, edges, ends }
    }
}

fn grow(leaves: &[IntVec2], edges: &mut Vec<(usize, usize)>, next_leaf: usize, next_node: usize, out: &mut BTreeMap<String, TreeShape>) {
    let l = leaves.len();
    if next_leaf == l {
        let raw = RawTree::from_edges(leaves, edges);
        if let std::collections::btree_map::Entry::Vacant(slot) = out.entry(raw.canonical_code()) {
            let shape = raw.shape();
            if shape.vertex_multiplicities().iter().all(|&m| m > 0) {
                slot.insert(shape);
            }
        }
        return;
    }
    for j in 0..edges.len() {
        let (a, b) = edges[j];
        let m = next_node;
        edges[j] = (a, m);
        edges.push((m, b));
        edges.push((m, next_leaf));
        grow(leaves, edges, next_leaf + 1, next_node + 1, out);
        edges.pop();
        edges.pop();
        edges[j] = (a, b);
    }
}

/// All tree shapes of degree `d` with non-degenerate vertices, each once.
/// Generation is exhaustive over labelled trees, so only small `d` are
/// practical.
pub fn tree_shapes(d: u32) -> Vec<TreeShape> {
    let leaves = end_directions(d);
    let l = leaves.len();
    let mut out = BTreeMap::new();
    if l >= 3 {
        let mut edges = vec![(l, 0), (l, 1), (l, 2)];
        grow(&leaves, &mut edges, 3, l + 1, &mut out);
    }
    out.into_values().collect()
}

/// Cached shapes for `d <= 3`.
pub(crate) fn cached_shapes(d: u32) -> &'static [TreeShape] {
    static CACHE: [OnceLock<Vec<TreeShape>>; 4] = [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CACHE[d as usize].get_or_init(|| tree_shapes(d))
}

/// A tree shape with marked point `i` placed in the interior of slot
/// `marks[i]`. Cutting the tree at the marks leaves pieces with exactly one
/// end each; other placements never give isolated solutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedTreeType {
    pub shape: TreeShape,
    pub marks: Vec<usize>,
}

impl MarkedTreeType {
    /// The explicit marked tree: leaves are the ends followed by one
    /// contracted leaf per mark.
    pub fn leaf_count(&self) -> usize {
        self.shape.ends.len() + self.marks.len()
    }

    pub fn multiplicity(&self) -> u64 {
        self.shape.multiplicity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicities() {
        let u = IntVec2::new;
        assert_eq!(vertex_multiplicity(u(1, 0), u(0, 1)), 1);
        assert_eq!(vertex_multiplicity(u(1, 0), u(1, 2)), 2);
        assert_eq!(vertex_multiplicity(u(1, 2), u(-2, -2)), 2);
        assert_eq!(vertex_multiplicity(u(-1, 0), u(-1, 0)), 0);
    }

    #[test]
    fn shapes_are_balanced_and_distinct() {
        assert_eq!(tree_shapes(1).len(), 1);
        for d in 1..=3 {
            let shapes = cached_shapes(d);
            for s in shapes {
                assert_eq!(s.ends.len(), 3 * d as usize);
                assert_eq!(s.vertices, 3 * d as usize - 2);
                for v in 0..s.vertices {
                    let inc = s.incident(v);
                    assert_eq!(inc.len(), 3);
                    assert!(inc.iter().map(|x| x.1).sum::<IntVec2>().is_zero());
                }
            }
        }
    }

    #[test]
    fn shape_counts_frozen() {
        // Exhaustive labelled generation, deduplicated up to relabelling of
        // parallel ends, with degenerate vertices removed.
        // Cross-checked by counting labelled non-degenerate trees (32 and
        // 17280) and dividing by the relabellings, which act freely.
        assert_eq!(cached_shapes(2).len(), 4);
        assert_eq!(cached_shapes(3).len(), 80);
    }
}

//! Approximation graphs: τ-images of the branching words, with horizontal
//! edges and exact-rational shortest paths.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use num_rational::BigRational;
use num_traits::Zero;

use crate::language::Word;
use crate::metrics::WeightFunction;
use crate::{Error, Result};

use super::choice::{ChoiceFunction, LazyPoint};
use super::{horizontal_edges, EdgeKind};

/// A graph vertex: one subshift point with every word whose τ-image it is.
pub struct GraphVertex {
    /// Shortest defining word (the cylinder label).
    pub label: Word,
    /// All defining words merged into this vertex, in (length, lex) order.
    pub defining: Vec<Word>,
    pub point: LazyPoint,
}

#[derive(Clone, Debug)]
pub struct GraphEdge {
    pub src: usize,
    pub dst: usize,
    pub meet: Word,
    pub length: BigRational,
}

/// Truncated approximation graph for one choice function. Vertices are
/// τ-images of the branching words with meets of length at most `depth`
/// (plus the edge endpoints); vertices are merged when their points agree up
/// to `resolution` symbols, and each merge is recorded.
pub struct ApproxGraph {
    pub kind: EdgeKind,
    pub depth: usize,
    pub resolution: usize,
    vertices: Vec<GraphVertex>,
    edges: Vec<GraphEdge>,
    adjacency: Vec<Vec<(usize, BigRational)>>,
    defining_index: BTreeMap<Word, usize>,
    pub merges: Vec<(Word, Word)>,
}

pub fn build_approx_graph(
    tau: &ChoiceFunction,
    depth: usize,
    kind: EdgeKind,
    weight: &WeightFunction,
) -> Result<ApproxGraph> {
    let oracle = tau.oracle();
    let resolution = oracle.certified_depth().min(2 * depth + 32);
    let raw_edges = horizontal_edges(oracle, depth, kind, weight)?;

    // Defining words: every meet and every endpoint, in (length, lex) order.
    let mut defining: Vec<Word> = Vec::new();
    for e in &raw_edges {
        defining.push(e.meet.clone());
        defining.push(e.endpoints.0.clone());
        defining.push(e.endpoints.1.clone());
    }
    if kind == EdgeKind::Privileged {
        // Keep isolated privileged cylinders visible even without siblings.
        let tree = crate::combinatorics::PrivilegedTree::build(oracle, depth)?;
        for r in tree.records() {
            defining.push(r.word.clone());
        }
    } else {
        for n in 0..=depth {
            for w in oracle.factors_of_length(n)? {
                if oracle.right_extensions(&w)?.len() >= 2 {
                    defining.push(w);
                }
            }
        }
    }
    defining.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    defining.dedup();

    let mut vertices: Vec<GraphVertex> = Vec::new();
    let mut by_prefix: BTreeMap<Word, usize> = BTreeMap::new();
    let mut defining_index: BTreeMap<Word, usize> = BTreeMap::new();
    let mut merges: Vec<(Word, Word)> = Vec::new();
    for w in defining {
        let point = tau.point(&w)?;
        let key = point.prefix(resolution)?;
        match by_prefix.get(&key) {
            Some(&idx) => {
                merges.push((vertices[idx].label.clone(), w.clone()));
                vertices[idx].defining.push(w.clone());
                defining_index.insert(w, idx);
            }
            None => {
                let idx = vertices.len();
                by_prefix.insert(key, idx);
                defining_index.insert(w.clone(), idx);
                vertices.push(GraphVertex {
                    label: w.clone(),
                    defining: vec![w],
                    point,
                });
            }
        }
    }

    let mut edges = Vec::with_capacity(raw_edges.len());
    let mut adjacency = vec![Vec::new(); vertices.len()];
    for e in raw_edges {
        let src = defining_index[&e.endpoints.0];
        let dst = defining_index[&e.endpoints.1];
        adjacency[src].push((dst, e.length.clone()));
        edges.push(GraphEdge {
            src,
            dst,
            meet: e.meet,
            length: e.length,
        });
    }

    Ok(ApproxGraph {
        kind,
        depth,
        resolution,
        vertices,
        edges,
        adjacency,
        defining_index,
        merges,
    })
}

impl ApproxGraph {
    pub fn vertices(&self) -> &[GraphVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertex whose cylinder is defined by `w`, if `w` is a defining word.
    pub fn vertex_for_word(&self, w: &Word) -> Option<usize> {
        self.defining_index.get(w).copied()
    }

    /// Vertex whose point agrees with `x` up to the resolution.
    pub fn vertex_for_point(&self, x: &LazyPoint) -> Result<usize> {
        let key = x.prefix(self.resolution)?;
        for (i, v) in self.vertices.iter().enumerate() {
            if v.point.prefix(self.resolution)? == key {
                return Ok(i);
            }
        }
        Err(Error::VertexNotFound)
    }

    /// Exact shortest-path distance between two vertices.
    pub fn distance(&self, src: usize, dst: usize) -> Result<BigRational> {
        if src >= self.vertices.len() || dst >= self.vertices.len() {
            return Err(Error::VertexNotFound);
        }
        if src == dst {
            return Ok(BigRational::zero());
        }
        let mut dist: Vec<Option<BigRational>> = vec![None; self.vertices.len()];
        let mut heap = BinaryHeap::new();
        dist[src] = Some(BigRational::zero());
        heap.push(Reverse((BigRational::zero(), src)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if let Some(best) = &dist[u] {
                if *best < d {
                    continue;
                }
            }
            if u == dst {
                return Ok(d);
            }
            for (v, w) in &self.adjacency[u] {
                let nd = &d + w;
                let better = match &dist[*v] {
                    None => true,
                    Some(cur) => nd < *cur,
                };
                if better {
                    dist[*v] = Some(nd.clone());
                    heap.push(Reverse((nd, *v)));
                }
            }
        }
        Err(Error::DisconnectedGraph)
    }

    /// DOT rendering with cylinder labels and `(|meet|, length)` edge labels.
    pub fn to_dot(&self) -> String {
        let alphabet = match self.vertices.first() {
            Some(v) => v.point.oracle().alphabet().clone(),
            None => crate::language::Alphabet::binary(),
        };
        let mut out = String::new();
        out.push_str(&format!(
            "digraph approximation {{\n  // kind: {}, depth: {}\n",
            self.kind.describe(),
            self.depth
        ));
        for (i, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!(
                "  v{} [label=\"{}\"];\n",
                i,
                alphabet.format(&v.label)
            ));
            if v.defining.len() > 1 {
                let all: Vec<String> = v.defining.iter().map(|w| alphabet.format(w)).collect();
                out.push_str(&format!("  // v{} cylinders: {}\n", i, all.join(" ")));
            }
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  v{} -> v{} [label=\"|m|={} l={}\"];\n",
                e.src,
                e.dst,
                e.meet.len(),
                e.length
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Shortest-path distance between the vertices carrying two points.
pub fn graph_distance(g: &ApproxGraph, x: &LazyPoint, y: &LazyPoint) -> Result<BigRational> {
    let src = g.vertex_for_point(x)?;
    let dst = g.vertex_for_point(y)?;
    g.distance(src, dst)
}

//! The tree of words, horizontal edges, choice functions and approximation
//! graphs.

pub mod approx;
pub mod choice;

pub use approx::{build_approx_graph, graph_distance, ApproxGraph, GraphEdge, GraphVertex};
pub use choice::{first_difference, ChoiceFunction, ChoiceStrategy, LazyPoint};

use num_rational::BigRational;

use crate::combinatorics::PrivilegedTree;
use crate::language::{FactorOracle, Word};
use crate::metrics::WeightFunction;
use crate::{Error, Result};

/// The two horizontal structures: sibling one-letter extensions of a
/// right-special word, or sibling complete first returns of a privileged word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    RightSpecial,
    Privileged,
}

impl EdgeKind {
    pub fn describe(&self) -> &'static str {
        match self {
            EdgeKind::RightSpecial => "right-special",
            EdgeKind::Privileged => "privileged",
        }
    }
}

/// Truncation of the tree of words: all factors of length at most `depth`,
/// with vertical edges to one-letter right extensions.
#[derive(Clone, Debug)]
pub struct TreeOfWords {
    pub depth: usize,
    /// `levels[n]` = factors of length `n`, lexicographic.
    pub levels: Vec<Vec<Word>>,
    pub vertical_edges: Vec<(Word, Word)>,
}

impl TreeOfWords {
    pub fn vertex_count(&self) -> usize {
        self.levels.iter().map(|l| l.len()).sum()
    }
}

pub fn build_tree(oracle: &FactorOracle, depth: usize) -> Result<TreeOfWords> {
    oracle.guard(depth)?;
    let mut levels = Vec::with_capacity(depth + 1);
    for n in 0..=depth {
        levels.push(oracle.factors_of_length(n)?);
    }
    let mut vertical_edges = Vec::new();
    for level in levels.iter().take(depth) {
        for w in level {
            for c in oracle.right_extensions(w)? {
                vertical_edges.push((w.clone(), w.extended(c)));
            }
        }
    }
    Ok(TreeOfWords {
        depth,
        levels,
        vertical_edges,
    })
}

/// An ordered horizontal edge, its meet and its weight-function length.
#[derive(Clone, Debug)]
pub struct HorizontalEdge {
    pub kind: EdgeKind,
    pub endpoints: (Word, Word),
    pub meet: Word,
    pub length: BigRational,
}

/// All ordered horizontal edges whose meet has length at most `depth`.
/// Right-special kind: pairs of distinct one-letter extensions of a
/// right-special meet. Privileged kind: pairs of distinct complete first
/// returns of a privileged meet (endpoints may exceed `depth`; the return
/// search budget is the certified depth, budget failures propagate).
pub fn horizontal_edges(
    oracle: &FactorOracle,
    depth: usize,
    kind: EdgeKind,
    weight: &WeightFunction,
) -> Result<Vec<HorizontalEdge>> {
    let mut out = Vec::new();
    match kind {
        EdgeKind::RightSpecial => {
            oracle.guard(depth + 1)?;
            for n in 0..=depth {
                for meet in oracle.factors_of_length(n)? {
                    let ext = oracle.right_extensions(&meet)?;
                    if ext.len() < 2 {
                        continue;
                    }
                    let length = weight.eval(meet.len());
                    for &x in &ext {
                        for &y in &ext {
                            if x != y {
                                out.push(HorizontalEdge {
                                    kind,
                                    endpoints: (meet.extended(x), meet.extended(y)),
                                    meet: meet.clone(),
                                    length: length.clone(),
                                });
                            }
                        }
                    }
                }
            }
        }
        EdgeKind::Privileged => {
            let tree = PrivilegedTree::build(oracle, depth)?;
            for record in tree.records() {
                if !record.returns_complete {
                    return Err(Error::ReturnBudgetExceeded {
                        budget: tree.budget(),
                        branch: oracle.alphabet().format(&record.word),
                    });
                }
                let length = weight.eval(record.word.len());
                for a in &record.returns {
                    for b in &record.returns {
                        if a != b {
                            out.push(HorizontalEdge {
                                kind,
                                endpoints: (a.clone(), b.clone()),
                                meet: record.word.clone(),
                                length: length.clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

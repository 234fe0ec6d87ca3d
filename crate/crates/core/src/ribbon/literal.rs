use std::fmt;

use serde::{Deserialize, Serialize};

use super::{HalfEdge, RibbonError, RibbonGraph};

/// A half-edge in a literal: a number, or a leaf name `L<j>` in tree literals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelToken {
    Num(u32),
    Leaf(String),
}

/// JSON form `{"vertices": [[1,2,3],[4,5,6]], "edges": [[1,4],[2,5],[3,6]]}`.
///
/// Tree literals add `"leaves": k`; their leaves are written `L0..L{k-1}` and
/// numeric labels are shifted by `k` internally.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphLiteral {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leaves: Option<u32>,
    pub vertices: Vec<Vec<LabelToken>>,
    pub edges: Vec<[LabelToken; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LiteralError {
    #[error("malformed literal: {0}")]
    Json(String),
    #[error("bad leaf token `{0}`")]
    BadLeaf(String),
    #[error("leaf L{0} must appear exactly once and stay unpaired")]
    LeafMisuse(u32),
    #[error(transparent)]
    Graph(#[from] RibbonError),
}

impl GraphLiteral {
    fn resolve(&self, t: &LabelToken) -> Result<HalfEdge, LiteralError> {
        let k = self.leaves.unwrap_or(0);
        match t {
            LabelToken::Num(x) => Ok(x + k),
            LabelToken::Leaf(s) => {
                let j: u32 =
                    s.strip_prefix('L').and_then(|r| r.parse().ok()).ok_or_else(|| LiteralError::BadLeaf(s.clone()))?;
                if self.leaves.is_none() || j >= k {
                    return Err(LiteralError::BadLeaf(s.clone()));
                }
                Ok(j)
            }
        }
    }

    pub fn to_graph(&self) -> Result<RibbonGraph, LiteralError> {
        let cycles = self
            .vertices
            .iter()
            .map(|c| c.iter().map(|t| self.resolve(t)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let edges = self
            .edges
            .iter()
            .map(|[a, b]| Ok((self.resolve(a)?, self.resolve(b)?)))
            .collect::<Result<Vec<_>, LiteralError>>()?;
        match self.leaves {
            None => Ok(RibbonGraph::new(cycles, &edges)?),
            Some(k) => {
                let g = RibbonGraph::new_open(cycles, &edges)?;
                let leaves = g.leaves();
                for j in 0..k {
                    if !g.contains(j) || g.partner(j).is_some() {
                        return Err(LiteralError::LeafMisuse(j));
                    }
                }
                if let Some(extra) = leaves.iter().find(|h| **h >= k) {
                    return Err(RibbonError::DanglingHalfEdge(*extra).into());
                }
                Ok(g)
            }
        }
    }

    pub fn from_graph(g: &RibbonGraph) -> Self {
        GraphLiteral {
            leaves: None,
            vertices: g.vertices().iter().map(|c| c.iter().map(|h| LabelToken::Num(*h)).collect()).collect(),
            edges: g.edges().iter().map(|(a, b)| [LabelToken::Num(*a), LabelToken::Num(*b)]).collect(),
        }
    }

    /// Literal of an open graph whose leaves are the labels `0..k`.
    pub fn from_tree(g: &RibbonGraph, k: u32) -> Self {
        let tok = |h: HalfEdge| {
            if h < k {
                LabelToken::Leaf(format!("L{h}"))
            } else {
                LabelToken::Num(h - k)
            }
        };
        GraphLiteral {
            leaves: Some(k),
            vertices: g.vertices().iter().map(|c| c.iter().map(|h| tok(*h)).collect()).collect(),
            edges: g.edges().iter().map(|(a, b)| [tok(*a), tok(*b)]).collect(),
        }
    }

    pub fn parse(s: &str) -> Result<Self, LiteralError> {
        serde_json::from_str(s).map_err(|e| LiteralError::Json(e.to_string()))
    }
}

impl fmt::Display for GraphLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_string(self).map_err(|_| fmt::Error)?;
        f.write_str(&s)
    }
}

impl fmt::Display for RibbonGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        GraphLiteral::from_graph(self).fmt(f)
    }
}

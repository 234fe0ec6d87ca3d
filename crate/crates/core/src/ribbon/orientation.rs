use std::collections::BTreeMap;

use super::{HalfEdge, RibbonError, RibbonGraph};
use crate::sign::{relative_sign, Sign};

/// An element of `V ∪ H` in an orientation word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token {
    Vertex(usize),
    Half(HalfEdge),
}

impl RibbonGraph {
    /// Vertices in storage order, each followed by its half-edges counterclockwise.
    ///
    /// For odd-valent graphs this is the natural orientation.
    pub fn reference_sequence(&self) -> Vec<Token> {
        let mut out = Vec::with_capacity(self.num_vertices() + self.num_half_edges());
        for (v, c) in self.vertices().iter().enumerate() {
            out.push(Token::Vertex(v));
            out.extend(c.iter().map(|h| Token::Half(*h)));
        }
        out
    }

    /// Image of the reference sequence under a half-edge bijection onto `target`.
    pub(crate) fn pushed_reference(&self, target: &RibbonGraph, map: &BTreeMap<HalfEdge, HalfEdge>) -> Vec<Token> {
        let mut out = Vec::with_capacity(self.num_vertices() + self.num_half_edges());
        for c in self.vertices() {
            out.push(Token::Vertex(target.vertex_of(map[&c[0]])));
            out.extend(c.iter().map(|h| Token::Half(map[h])));
        }
        out
    }
}

/// A ribbon graph with an orientation, stored as a sign against the reference sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedRibbonGraph {
    pub graph: RibbonGraph,
    pub sign: Sign,
}

impl OrientedRibbonGraph {
    pub fn new(graph: RibbonGraph, sign: Sign) -> Self {
        OrientedRibbonGraph { graph, sign }
    }

    /// The reference orientation.
    pub fn reference(graph: RibbonGraph) -> Self {
        Self::new(graph, Sign::Plus)
    }

    /// The orientation given by the word `seq`, a permutation of `V ∪ H`.
    pub fn from_sequence(graph: RibbonGraph, seq: &[Token]) -> Self {
        let s = relative_sign(&graph.reference_sequence(), seq);
        Self::new(graph, s)
    }

    /// Sign relative to the natural orientation, or `None` if some vertex has even valence.
    pub fn natural_sign(&self) -> Option<Sign> {
        self.graph.is_odd_valent().then_some(self.sign)
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.graph.clone(), -self.sign)
    }

    /// Collapses a non-loop edge. Writing the orientation as
    /// `[v1 v2 e- e+ rest]`, the result is `[v* rest]`.
    pub fn collapse_edge(&self, h: HalfEdge) -> Result<Self, RibbonError> {
        let g = &self.graph;
        let (collapsed, vmap) = g.collapse_with_map(h)?;
        let hp = g.partner(h).ok_or(RibbonError::NotAnEdge(h))?;
        let v1 = g.vertex_of(h);
        let v2 = g.vertex_of(hp);
        let old_ref = g.reference_sequence();
        let head = [Token::Vertex(v1), Token::Vertex(v2), Token::Half(h), Token::Half(hp)];
        let rest: Vec<Token> = old_ref.iter().filter(|t| !head.contains(t)).copied().collect();
        let mut old_word = head.to_vec();
        old_word.extend_from_slice(&rest);
        let p = relative_sign(&old_ref, &old_word);
        let mut new_word = vec![Token::Vertex(vmap[v1])];
        new_word.extend(rest.iter().map(|t| match t {
            Token::Vertex(v) => Token::Vertex(vmap[*v]),
            other => *other,
        }));
        let q = relative_sign(&collapsed.reference_sequence(), &new_word);
        Ok(Self::new(collapsed, self.sign * p * q))
    }

    /// Collapses a forest, edge by edge in increasing order of the given half-edges.
    pub fn collapse_forest(&self, forest: &[HalfEdge]) -> Result<Self, RibbonError> {
        if !self.graph.is_forest(forest) {
            return Err(RibbonError::NotAForest);
        }
        let mut order = forest.to_vec();
        order.sort_unstable();
        let mut cur = self.clone();
        for h in order {
            cur = cur.collapse_edge(h)?;
        }
        Ok(cur)
    }

    /// Splits vertex `v` at cut positions `(i, j)` with the orientation that
    /// collapses back to `self`. Returns the new edge as well.
    pub fn expand_vertex(&self, v: usize, i: usize, j: usize) -> Result<(Self, (HalfEdge, HalfEdge)), RibbonError> {
        let (g, e) = self.graph.expand(v, i, j)?;
        let back = Self::reference(g.clone()).collapse_edge(e.0)?;
        debug_assert_eq!(back.graph, self.graph);
        Ok((Self::new(g, self.sign * back.sign), e))
    }

    /// Every one-edge expansion at every vertex.
    pub fn enumerate_expansions(&self) -> Vec<(Self, (HalfEdge, HalfEdge))> {
        let mut out = Vec::new();
        for v in 0..self.graph.num_vertices() {
            for (i, j) in self.graph.splits(v) {
                out.push(self.expand_vertex(v, i, j).expect("split is valid"));
            }
        }
        out
    }

    /// Pushes the orientation along an isomorphism `map: self -> target`.
    pub fn transport(&self, target: &RibbonGraph, map: &BTreeMap<HalfEdge, HalfEdge>) -> Self {
        let image = self.graph.pushed_reference(target, map);
        let s = relative_sign(&target.reference_sequence(), &image);
        Self::new(target.clone(), self.sign * s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corolla(p: u32, pairs: &[(u32, u32)]) -> RibbonGraph {
        RibbonGraph::new(vec![(1..=p).collect()], pairs).unwrap()
    }

    #[test]
    fn theta_to_figure_eight_sign() {
        // theta (1,2,3)(4,5,6), edges 1-4 2-5 3-6; collapse 1-4:
        // [v1 v2 1 4 | 2 3 5 6] -> [v* 2 3 5 6] which is the reference of (2,3,5,6)
        let g = RibbonGraph::new(vec![vec![1, 2, 3], vec![4, 5, 6]], &[(1, 4), (2, 5), (3, 6)]).unwrap();
        let o = OrientedRibbonGraph::reference(g);
        let c = o.collapse_edge(1).unwrap();
        assert_eq!(c.graph.vertices(), &[vec![2, 3, 5, 6]]);
        // reference v1 1 2 3 v2 4 5 6 -> v1 v2 1 4 2 3 5 6: moving v2 over 3 tokens and 4 over 2
        assert_eq!(c.sign, Sign::from_parity((3 + 2) % 2 == 1));
    }

    #[test]
    fn expansion_collapses_back() {
        let g = corolla(6, &[(1, 4), (2, 5), (3, 6)]);
        for s in [Sign::Plus, Sign::Minus] {
            let o = OrientedRibbonGraph::new(g.clone(), s);
            for (e, (x, _)) in o.enumerate_expansions() {
                assert_eq!(e.collapse_edge(x).unwrap(), o);
            }
        }
    }

    #[test]
    fn sequence_round_trip() {
        let g = corolla(4, &[(1, 3), (2, 4)]);
        let seq = vec![Token::Half(1), Token::Vertex(0), Token::Half(2), Token::Half(3), Token::Half(4)];
        assert_eq!(OrientedRibbonGraph::from_sequence(g, &seq).sign, Sign::Minus);
    }

    #[test]
    fn loop_collapse_is_error() {
        let g = corolla(4, &[(1, 3), (2, 4)]);
        assert!(matches!(OrientedRibbonGraph::reference(g).collapse_edge(1), Err(RibbonError::LoopCollapse(1))));
    }
}

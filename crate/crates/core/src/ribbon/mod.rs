//! Ribbon graphs: half-edges, cyclically ordered vertices and an edge involution.
//!
//! The same structure also carries open ribbon graphs whose unpaired half-edges
//! are leaves; planar trees are stored that way.

mod iso;
mod literal;
mod morphism;
mod orientation;

use std::collections::{BTreeMap, BTreeSet};

pub use iso::{
    automorphisms, canonical_form, canonical_form_rooted, isomorphisms_between, orientation_sign_of, CanonicalForm,
};
pub use literal::{GraphLiteral, LiteralError};
pub use morphism::{corner_chain, hom_set, GraphMorphism};
pub use orientation::{OrientedRibbonGraph, Token};

pub type HalfEdge = u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RibbonError {
    #[error("half-edge {0} is paired more than once")]
    NotInvolution(HalfEdge),
    #[error("half-edge {0} is paired with itself")]
    FixedPoint(HalfEdge),
    #[error("vertex {vertex} has valence {valence} < 3")]
    ValenceTooLow { vertex: usize, valence: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("half-edge {0} is not paired or not incident to a vertex")]
    DanglingHalfEdge(HalfEdge),
    #[error("half-edge label {0} is used twice")]
    DuplicateLabel(HalfEdge),
    #[error("graph has no vertices")]
    Empty,
    #[error("edge through half-edge {0} is a loop")]
    LoopCollapse(HalfEdge),
    #[error("half-edge {0} is not part of an edge")]
    NotAnEdge(HalfEdge),
    #[error("edge set is not a forest")]
    NotAForest,
    #[error("vertex {0} does not exist")]
    NoSuchVertex(usize),
    #[error("vertex has valence {0}; expansion needs at least 4")]
    VertexTooSmall(usize),
    #[error("split ({0}, {1}) does not leave two blocks of size at least 2")]
    BadSplit(usize, usize),
    #[error("morphism data does not describe a collapse onto the target")]
    MorphismMismatch,
}

/// A connected ribbon graph, possibly with leaves (unpaired half-edges).
///
/// Vertex cycles are stored normalized: each cycle starts at its smallest
/// label and the cycles are sorted by that label. This storage order is the
/// reference ordering used for every orientation sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RibbonGraph {
    vertices: Vec<Vec<HalfEdge>>,
    partner: BTreeMap<HalfEdge, HalfEdge>,
    loc: BTreeMap<HalfEdge, (usize, usize)>,
}

pub(crate) fn normalize_cycles(mut cycles: Vec<Vec<HalfEdge>>) -> Vec<Vec<HalfEdge>> {
    for c in cycles.iter_mut() {
        if let Some((i, _)) = c.iter().enumerate().min_by_key(|(_, h)| **h) {
            c.rotate_left(i);
        }
    }
    cycles.sort_by_key(|c| c.first().copied());
    cycles
}

impl RibbonGraph {
    /// Builds a closed ribbon graph: every half-edge must be paired.
    pub fn new(vertex_cycles: Vec<Vec<HalfEdge>>, edges: &[(HalfEdge, HalfEdge)]) -> Result<Self, RibbonError> {
        let g = Self::new_open(vertex_cycles, edges)?;
        if let Some(h) = g.leaves().first() {
            return Err(RibbonError::DanglingHalfEdge(*h));
        }
        Ok(g)
    }

    /// Builds a ribbon graph in which unpaired half-edges are allowed as leaves.
    pub fn new_open(vertex_cycles: Vec<Vec<HalfEdge>>, edges: &[(HalfEdge, HalfEdge)]) -> Result<Self, RibbonError> {
        if vertex_cycles.is_empty() {
            return Err(RibbonError::Empty);
        }
        let mut seen = BTreeSet::new();
        for (i, c) in vertex_cycles.iter().enumerate() {
            if c.len() < 3 {
                return Err(RibbonError::ValenceTooLow { vertex: i, valence: c.len() });
            }
            for &h in c {
                if !seen.insert(h) {
                    return Err(RibbonError::DuplicateLabel(h));
                }
            }
        }
        let mut partner = BTreeMap::new();
        for &(a, b) in edges {
            if a == b {
                return Err(RibbonError::FixedPoint(a));
            }
            for h in [a, b] {
                if !seen.contains(&h) {
                    return Err(RibbonError::DanglingHalfEdge(h));
                }
                if partner.contains_key(&h) {
                    return Err(RibbonError::NotInvolution(h));
                }
            }
            partner.insert(a, b);
            partner.insert(b, a);
        }
        let g = Self::from_parts(normalize_cycles(vertex_cycles), partner);
        if !g.is_connected() {
            return Err(RibbonError::Disconnected);
        }
        Ok(g)
    }

    /// Assembles a graph from already normalized parts without validation.
    pub(crate) fn from_parts(vertices: Vec<Vec<HalfEdge>>, partner: BTreeMap<HalfEdge, HalfEdge>) -> Self {
        let mut loc = BTreeMap::new();
        for (vi, c) in vertices.iter().enumerate() {
            for (pi, &h) in c.iter().enumerate() {
                loc.insert(h, (vi, pi));
            }
        }
        RibbonGraph { vertices, partner, loc }
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for h in &self.vertices[v] {
                if let Some(p) = self.partner.get(h) {
                    let w = self.loc[p].0;
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn vertices(&self) -> &[Vec<HalfEdge>] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_half_edges(&self) -> usize {
        self.loc.len()
    }

    pub fn num_edges(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn half_edges(&self) -> impl Iterator<Item = HalfEdge> + '_ {
        self.loc.keys().copied()
    }

    pub fn max_label(&self) -> HalfEdge {
        self.loc.keys().next_back().copied().unwrap_or(0)
    }

    pub fn contains(&self, h: HalfEdge) -> bool {
        self.loc.contains_key(&h)
    }

    pub fn partner(&self, h: HalfEdge) -> Option<HalfEdge> {
        self.partner.get(&h).copied()
    }

    /// Index of the vertex incident to `h`.
    pub fn vertex_of(&self, h: HalfEdge) -> usize {
        self.loc[&h].0
    }

    /// Counterclockwise successor of `h` at its vertex.
    pub fn next(&self, h: HalfEdge) -> HalfEdge {
        let (v, p) = self.loc[&h];
        let c = &self.vertices[v];
        c[(p + 1) % c.len()]
    }

    pub fn prev(&self, h: HalfEdge) -> HalfEdge {
        let (v, p) = self.loc[&h];
        let c = &self.vertices[v];
        c[(p + c.len() - 1) % c.len()]
    }

    /// Edges as pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(HalfEdge, HalfEdge)> {
        self.partner.iter().filter(|(a, b)| a < b).map(|(a, b)| (*a, *b)).collect()
    }

    pub fn leaves(&self) -> Vec<HalfEdge> {
        self.loc.keys().filter(|h| !self.partner.contains_key(h)).copied().collect()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.vertices[v].len()
    }

    /// Valence minus two.
    pub fn multiplicity(&self, v: usize) -> usize {
        self.vertices[v].len() - 2
    }

    /// Number of edges that must be expanded to reach a trivalent graph.
    pub fn codimension(&self) -> usize {
        self.vertices.iter().map(|c| c.len() - 3).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64
    }

    pub fn is_trivalent(&self) -> bool {
        self.vertices.iter().all(|c| c.len() == 3)
    }

    pub fn is_odd_valent(&self) -> bool {
        self.vertices.iter().all(|c| c.len() % 2 == 1)
    }

    pub fn valences(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.vertices.iter().map(|c| c.len()).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn is_loop(&self, h: HalfEdge) -> bool {
        match self.partner(h) {
            Some(p) => self.vertex_of(h) == self.vertex_of(p),
            None => false,
        }
    }

    /// Orbits of the face permutation `h -> next(partner(h))`, with genus and puncture count.
    ///
    /// Only meaningful for closed graphs.
    pub fn boundary_cycles(&self) -> BoundaryCycles {
        let mut seen = BTreeSet::new();
        let mut cycles = Vec::new();
        for h in self.half_edges() {
            if seen.contains(&h) {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = h;
            loop {
                seen.insert(x);
                cyc.push(x);
                x = match self.partner(x) {
                    Some(p) => self.next(p),
                    None => self.next(x),
                };
                if x == h {
                    break;
                }
            }
            cycles.push(cyc);
        }
        let s = cycles.len() as i64;
        let chi = self.euler_characteristic();
        let twice_genus = 2 - s - chi;
        BoundaryCycles { cycles, genus: twice_genus / 2, punctures: s as usize }
    }

    /// Relabels half-edges through `map`; labels not in the map are kept.
    pub fn relabel(&self, map: &BTreeMap<HalfEdge, HalfEdge>) -> RibbonGraph {
        let f = |h: &HalfEdge| *map.get(h).unwrap_or(h);
        let cycles = self.vertices.iter().map(|c| c.iter().map(f).collect()).collect();
        let partner = self.partner.iter().map(|(a, b)| (f(a), f(b))).collect();
        RibbonGraph::from_parts(normalize_cycles(cycles), partner)
    }

    /// Collapses the non-loop edge through `h` with the merge rule
    /// `(e-,h1..hn) + (e+,k1..km) -> (h1..hn,k1..km)`.
    pub fn collapse(&self, h: HalfEdge) -> Result<RibbonGraph, RibbonError> {
        Ok(self.collapse_with_map(h)?.0)
    }

    /// As [`collapse`](Self::collapse), also returning the old-to-new vertex index map
    /// (both endpoints map to the merged vertex).
    pub(crate) fn collapse_with_map(&self, h: HalfEdge) -> Result<(RibbonGraph, Vec<usize>), RibbonError> {
        if !self.contains(h) {
            return Err(RibbonError::NotAnEdge(h));
        }
        let hp = self.partner(h).ok_or(RibbonError::NotAnEdge(h))?;
        let (v1, p1) = self.loc[&h];
        let (v2, p2) = self.loc[&hp];
        if v1 == v2 {
            return Err(RibbonError::LoopCollapse(h));
        }
        let c1 = &self.vertices[v1];
        let c2 = &self.vertices[v2];
        let mut merged = Vec::with_capacity(c1.len() + c2.len() - 2);
        merged.extend((1..c1.len()).map(|i| c1[(p1 + i) % c1.len()]));
        merged.extend((1..c2.len()).map(|i| c2[(p2 + i) % c2.len()]));
        let mut cycles: Vec<Vec<HalfEdge>> = Vec::with_capacity(self.vertices.len() - 1);
        let mut owner: Vec<Option<usize>> = Vec::with_capacity(self.vertices.len() - 1);
        for (i, c) in self.vertices.iter().enumerate() {
            if i == v1 {
                cycles.push(merged.clone());
                owner.push(None);
            } else if i != v2 {
                cycles.push(c.clone());
                owner.push(Some(i));
            }
        }
        let mut partner = self.partner.clone();
        partner.remove(&h);
        partner.remove(&hp);
        // normalize while remembering where each old vertex went
        let mut tagged: Vec<(Vec<HalfEdge>, Option<usize>)> = cycles.into_iter().zip(owner).collect();
        for (c, _) in tagged.iter_mut() {
            if let Some((i, _)) = c.iter().enumerate().min_by_key(|(_, x)| **x) {
                c.rotate_left(i);
            }
        }
        tagged.sort_by_key(|(c, _)| c[0]);
        let mut vmap = vec![0usize; self.vertices.len()];
        for (ni, (_, o)) in tagged.iter().enumerate() {
            match o {
                Some(oi) => vmap[*oi] = ni,
                None => {
                    vmap[v1] = ni;
                    vmap[v2] = ni;
                }
            }
        }
        let vertices = tagged.into_iter().map(|(c, _)| c).collect();
        Ok((RibbonGraph::from_parts(vertices, partner), vmap))
    }

    /// Checks that `edges` (given by one half-edge each) form a forest.
    pub fn is_forest(&self, edges: &[HalfEdge]) -> bool {
        let mut parent: Vec<usize> = (0..self.num_vertices()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        let mut seen = BTreeSet::new();
        for &h in edges {
            let Some(hp) = self.partner(h) else { return false };
            if !seen.insert(h.min(hp)) {
                return false;
            }
            let a = find(&mut parent, self.vertex_of(h));
            let b = find(&mut parent, self.vertex_of(hp));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }

    /// Splits vertex `v` between cut positions `i < j` of its stored cycle.
    ///
    /// Returns the expanded graph and the new edge `(x, y)`; collapsing `x`
    /// reproduces `self` exactly.
    pub fn expand(&self, v: usize, i: usize, j: usize) -> Result<(RibbonGraph, (HalfEdge, HalfEdge)), RibbonError> {
        let c = self.vertices.get(v).ok_or(RibbonError::NoSuchVertex(v))?;
        let p = c.len();
        if p < 4 {
            return Err(RibbonError::VertexTooSmall(p));
        }
        if !(i < j && j < p && j - i >= 2 && p - (j - i) >= 2) {
            return Err(RibbonError::BadSplit(i, j));
        }
        let x = self.max_label() + 1;
        let y = x + 1;
        let mut a = vec![x];
        a.extend_from_slice(&c[i..j]);
        let mut b = vec![y];
        b.extend((0..p - (j - i)).map(|t| c[(j + t) % p]));
        let mut cycles: Vec<Vec<HalfEdge>> =
            self.vertices.iter().enumerate().filter(|(k, _)| *k != v).map(|(_, c)| c.clone()).collect();
        cycles.push(a);
        cycles.push(b);
        let mut partner = self.partner.clone();
        partner.insert(x, y);
        partner.insert(y, x);
        Ok((RibbonGraph::from_parts(normalize_cycles(cycles), partner), (x, y)))
    }

    /// All cut pairs `(i, j)` for vertex `v`; there are `(p^2 - 3p)/2` of them.
    pub fn splits(&self, v: usize) -> Vec<(usize, usize)> {
        let p = self.vertices[v].len();
        let mut out = Vec::new();
        for i in 0..p {
            for j in i + 2..p {
                if p - (j - i) >= 2 {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryCycles {
    pub cycles: Vec<Vec<HalfEdge>>,
    pub genus: i64,
    pub punctures: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn theta_nonplanar() -> RibbonGraph {
        RibbonGraph::new(vec![vec![1, 2, 3], vec![4, 5, 6]], &[(1, 4), (2, 5), (3, 6)]).unwrap()
    }

    pub(crate) fn theta_planar() -> RibbonGraph {
        RibbonGraph::new(vec![vec![1, 2, 3], vec![6, 5, 4]], &[(1, 4), (2, 5), (3, 6)]).unwrap()
    }

    #[test]
    fn theta_counts() {
        let g = theta_nonplanar();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 3);
        assert_eq!(g.euler_characteristic(), -1);
    }

    #[test]
    fn build_errors() {
        assert!(matches!(
            RibbonGraph::new(vec![vec![1, 2], vec![3, 4]], &[(1, 3), (2, 4)]),
            Err(RibbonError::ValenceTooLow { .. })
        ));
        assert!(matches!(
            RibbonGraph::new(vec![vec![1, 2, 3, 4]], &[(1, 2), (2, 3)]),
            Err(RibbonError::NotInvolution(2))
        ));
        assert!(matches!(RibbonGraph::new(vec![vec![1, 2, 3, 4]], &[(1, 1), (3, 4)]), Err(RibbonError::FixedPoint(1))));
        assert!(matches!(RibbonGraph::new(vec![vec![1, 2, 3, 4]], &[(1, 2)]), Err(RibbonError::DanglingHalfEdge(3))));
        assert!(matches!(
            RibbonGraph::new(vec![vec![1, 2, 3, 4]], &[(1, 2), (3, 9)]),
            Err(RibbonError::DanglingHalfEdge(9))
        ));
        assert!(matches!(
            RibbonGraph::new(vec![vec![1, 2, 3, 4], vec![5, 6, 7, 8]], &[(1, 2), (3, 4), (5, 6), (7, 8)]),
            Err(RibbonError::Disconnected)
        ));
    }

    #[test]
    fn figure_eight() {
        let g = RibbonGraph::new(vec![vec![1, 2, 3, 4]], &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(g.euler_characteristic(), -1);
        let b = g.boundary_cycles();
        assert_eq!((b.genus, b.punctures), (0, 3));
        let crossed = RibbonGraph::new(vec![vec![1, 2, 3, 4]], &[(1, 3), (2, 4)]).unwrap();
        let b = crossed.boundary_cycles();
        assert_eq!((b.genus, b.punctures), (1, 1));
    }

    #[test]
    fn theta_faces() {
        let b = theta_planar().boundary_cycles();
        assert_eq!((b.genus, b.punctures), (0, 3));
        let b = theta_nonplanar().boundary_cycles();
        assert_eq!((b.genus, b.punctures), (1, 1));
    }

    #[test]
    fn dumbbell_collapses_to_figure_eight() {
        // two loop-vertices joined by the bridge 3-6
        let g = RibbonGraph::new(vec![vec![1, 2, 3], vec![4, 5, 6]], &[(1, 2), (4, 5), (3, 6)]).unwrap();
        let c = g.collapse(3).unwrap();
        assert_eq!(c.vertices(), &[vec![1, 2, 4, 5]]);
        assert_eq!(c.edges(), vec![(1, 2), (4, 5)]);
        assert!(matches!(g.collapse(1), Err(RibbonError::LoopCollapse(1))));
    }

    #[test]
    fn expansion_counts() {
        for p in [4usize, 5, 7] {
            let cyc: Vec<HalfEdge> = (1..=p as u32).collect();
            let mut edges = Vec::new();
            // pair consecutive labels; odd p gets an extra trivalent vertex
            let mut cycles = vec![cyc];
            if p % 2 == 1 {
                cycles.push(vec![100, 101, 102]);
                edges.push((p as u32, 100));
                edges.push((101, 102));
            }
            for k in (1..p as u32).step_by(2) {
                if k < p as u32 && !(p % 2 == 1 && k + 1 == p as u32 + 1) {
                    edges.push((k, k + 1));
                }
            }
            let g = RibbonGraph::new(cycles, &edges).unwrap();
            let v = g.vertices().iter().position(|c| c.len() == p).unwrap();
            assert_eq!(g.splits(v).len(), (p * p - 3 * p) / 2);
        }
    }

    #[test]
    fn expand_then_collapse_is_identity() {
        let g = RibbonGraph::new(vec![vec![1, 2, 3, 4, 5, 6]], &[(1, 4), (2, 5), (3, 6)]).unwrap();
        for (i, j) in g.splits(0) {
            let (e, (x, _)) = g.expand(0, i, j).unwrap();
            assert_eq!(e.collapse(x).unwrap(), g);
        }
        assert!(matches!(g.expand(0, 0, 1), Err(RibbonError::BadSplit(0, 1))));
    }

    #[test]
    fn forest_detection() {
        let g = theta_nonplanar();
        assert!(g.is_forest(&[1]));
        assert!(!g.is_forest(&[1, 2]));
        assert!(g.is_forest(&[]));
    }
}

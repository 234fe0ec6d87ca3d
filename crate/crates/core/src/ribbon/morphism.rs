use std::collections::{BTreeMap, BTreeSet};

use super::{isomorphisms_between, HalfEdge, OrientedRibbonGraph, RibbonError, RibbonGraph};
use crate::cocycle::CyclicSetChain;
use crate::sign::Sign;

/// A forest collapse `source -> source/F` followed by an isomorphism onto `target`.
///
/// `map` sends each target half-edge to the source half-edge it comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMorphism {
    pub source: RibbonGraph,
    pub target: RibbonGraph,
    forest: Vec<HalfEdge>,
    map: BTreeMap<HalfEdge, HalfEdge>,
}

impl GraphMorphism {
    /// Validates that collapsing `forest` and relabelling by `map` yields `target`.
    pub fn new(
        source: RibbonGraph,
        target: RibbonGraph,
        forest: &[HalfEdge],
        map: BTreeMap<HalfEdge, HalfEdge>,
    ) -> Result<Self, RibbonError> {
        let forest = normalize_forest(&source, forest)?;
        let collapsed = OrientedRibbonGraph::reference(source.clone()).collapse_forest(&forest)?.graph;
        let fwd: BTreeMap<HalfEdge, HalfEdge> = map.iter().map(|(t, s)| (*s, *t)).collect();
        if fwd.len() != map.len()
            || fwd.len() != collapsed.num_half_edges()
            || collapsed.half_edges().any(|h| !fwd.contains_key(&h))
            || collapsed.relabel(&fwd) != target
        {
            return Err(RibbonError::MorphismMismatch);
        }
        Ok(GraphMorphism { source, target, forest, map })
    }

    /// The collapse `source -> source/F` with labels kept.
    pub fn collapse(source: RibbonGraph, forest: &[HalfEdge]) -> Result<Self, RibbonError> {
        let forest = normalize_forest(&source, forest)?;
        let target = OrientedRibbonGraph::reference(source.clone()).collapse_forest(&forest)?.graph;
        let map = target.half_edges().map(|h| (h, h)).collect();
        Ok(GraphMorphism { source, target, forest, map })
    }

    pub fn identity(g: RibbonGraph) -> Self {
        let map = g.half_edges().map(|h| (h, h)).collect();
        GraphMorphism { source: g.clone(), target: g, forest: Vec::new(), map }
    }

    /// Forest edges, one half-edge (the smaller label) per edge.
    pub fn forest(&self) -> &[HalfEdge] {
        &self.forest
    }

    /// Source half-edge corresponding to a target half-edge.
    pub fn preimage(&self, h: HalfEdge) -> HalfEdge {
        self.map[&h]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GraphMorphism) -> Result<GraphMorphism, RibbonError> {
        if self.target != next.source {
            return Err(RibbonError::MorphismMismatch);
        }
        let mut forest = self.forest.clone();
        forest.extend(next.forest.iter().map(|h| self.map[h]));
        let map = next.map.iter().map(|(c, b)| (*c, self.map[b])).collect();
        GraphMorphism::new(self.source.clone(), next.target.clone(), &forest, map)
    }

    /// Orientation sign on the target induced from `sign` on the source.
    pub fn induced_sign(&self, sign: Sign) -> Sign {
        let collapsed = OrientedRibbonGraph::new(self.source.clone(), sign)
            .collapse_forest(&self.forest)
            .expect("forest was validated");
        let fwd: BTreeMap<HalfEdge, HalfEdge> = self.map.iter().map(|(t, s)| (*s, *t)).collect();
        collapsed.transport(&self.target, &fwd).sign
    }
}

fn normalize_forest(g: &RibbonGraph, forest: &[HalfEdge]) -> Result<Vec<HalfEdge>, RibbonError> {
    let mut out = BTreeSet::new();
    for &h in forest {
        if !g.contains(h) {
            return Err(RibbonError::NotAnEdge(h));
        }
        let p = g.partner(h).ok_or(RibbonError::NotAnEdge(h))?;
        out.insert(h.min(p));
    }
    let out: Vec<HalfEdge> = out.into_iter().collect();
    if !g.is_forest(&out) {
        return Err(RibbonError::NotAForest);
    }
    Ok(out)
}

/// All morphisms `source -> target`.
pub fn hom_set(source: &RibbonGraph, target: &RibbonGraph) -> Vec<GraphMorphism> {
    let edges = source.edges();
    if edges.len() < target.num_edges() {
        return Vec::new();
    }
    let k = edges.len() - target.num_edges();
    let mut out = Vec::new();
    let mut pick = Vec::new();
    subsets(&edges, k, 0, &mut pick, &mut |forest| {
        if !source.is_forest(forest) {
            return;
        }
        let collapsed =
            OrientedRibbonGraph::reference(source.clone()).collapse_forest(forest).expect("forest checked").graph;
        for iso in isomorphisms_between(&collapsed, target) {
            let map = iso.iter().map(|(s, t)| (*t, *s)).collect();
            out.push(GraphMorphism { source: source.clone(), target: target.clone(), forest: forest.to_vec(), map });
        }
    });
    out
}

fn subsets(
    edges: &[(HalfEdge, HalfEdge)],
    k: usize,
    start: usize,
    pick: &mut Vec<HalfEdge>,
    f: &mut impl FnMut(&[HalfEdge]),
) {
    if pick.len() == k {
        f(pick);
        return;
    }
    for i in start..edges.len() {
        if edges.len() - i < k - pick.len() {
            break;
        }
        pick.push(edges[i].0);
        subsets(edges, k, i + 1, pick, f);
        pick.pop();
    }
}

/// Corners of vertex `v` of the first graph pushed along a composable chain.
///
/// A corner is named by the half-edge it follows counterclockwise. When an edge
/// `(e-,h1..hn) + (e+,k1..km)` collapses, the corner after `e-` moves behind `km`,
/// the corner after `e+` moves behind `hn`, and every other corner stays put.
pub fn corner_chain(simplex: &[GraphMorphism], v: usize) -> Result<CyclicSetChain, RibbonError> {
    let first = simplex.first().ok_or(RibbonError::MorphismMismatch)?;
    let g0 = &first.source;
    let cycle0 = g0.vertices().get(v).ok_or(RibbonError::NoSuchVertex(v))?;
    let mut stage: BTreeMap<HalfEdge, usize> = cycle0.iter().map(|h| (*h, 0)).collect();
    let mut cur = g0.clone();
    for (i, f) in simplex.iter().enumerate() {
        if f.source != cur {
            return Err(RibbonError::MorphismMismatch);
        }
        for &h in &f.forest {
            let hp = cur.partner(h).expect("forest edge");
            let tracked = cur.vertex_of(*stage.keys().next().expect("nonempty"));
            let (v1, v2) = (cur.vertex_of(h), cur.vertex_of(hp));
            if v1 == tracked || v2 == tracked {
                let last_h = cur.prev(h);
                let last_k = cur.prev(hp);
                stage = stage
                    .into_iter()
                    .map(|(c, s)| {
                        let c = if c == h {
                            last_k
                        } else if c == hp {
                            last_h
                        } else {
                            c
                        };
                        (c, s)
                    })
                    .collect();
                let next = cur.collapse(h)?;
                let merged = next.vertex_of(last_h);
                for &c in &next.vertices()[merged] {
                    stage.entry(c).or_insert(i + 1);
                }
                cur = next;
            } else {
                cur = cur.collapse(h)?;
            }
        }
        let fwd: BTreeMap<HalfEdge, HalfEdge> = f.map.iter().map(|(t, s)| (*s, *t)).collect();
        cur = cur.relabel(&fwd);
        stage = stage.into_iter().map(|(c, s)| (fwd[&c], s)).collect();
        if cur != f.target {
            return Err(RibbonError::MorphismMismatch);
        }
    }
    let tracked = cur.vertex_of(*stage.keys().next().expect("nonempty"));
    let stages = cur.vertices()[tracked].iter().map(|c| stage[c]).collect();
    CyclicSetChain::new(stages, simplex.len()).map_err(|_| RibbonError::MorphismMismatch)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> RibbonGraph {
        RibbonGraph::new(vec![vec![1, 2, 3], vec![4, 5, 6]], &[(1, 4), (2, 5), (3, 6)]).unwrap()
    }

    #[test]
    fn theta_to_figure_eight_homs() {
        let fig8 = theta().collapse(1).unwrap();
        // each of the three edges collapses to a figure eight; each collapse has |Aut| isos
        let homs = hom_set(&theta(), &fig8);
        assert!(!homs.is_empty());
        for h in &homs {
            assert_eq!(h.forest().len(), 1);
        }
    }

    #[test]
    fn composition_matches_direct_collapse() {
        let g = RibbonGraph::new(
            vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9], vec![10, 11, 12]],
            &[(1, 4), (2, 7), (3, 10), (5, 8), (6, 11), (9, 12)],
        )
        .unwrap();
        let f = GraphMorphism::collapse(g.clone(), &[1]).unwrap();
        let h = GraphMorphism::collapse(f.target.clone(), &[5]).unwrap();
        let comp = f.then(&h).unwrap();
        let direct = GraphMorphism::collapse(g, &[1, 5]).unwrap();
        assert_eq!(comp, direct);
        for s in [Sign::Plus, Sign::Minus] {
            assert_eq!(comp.induced_sign(s), h.induced_sign(f.induced_sign(s)));
        }
    }

    #[test]
    fn corner_chain_of_single_collapse() {
        let f = GraphMorphism::collapse(theta(), &[1]).unwrap();
        let chain = corner_chain(&[f], 0).unwrap();
        // corners of (1,2,3) are kept, (4,5,6) contributes one new corner
        assert_eq!(chain.len(), 1);
        assert_eq!(chain.ambient_size(), 4);
        assert_eq!(chain.stage_sizes(), vec![3, 4]);
    }

    #[test]
    fn rejects_loop_forest() {
        let fig8 = RibbonGraph::new(vec![vec![1, 2, 3, 4]], &[(1, 3), (2, 4)]).unwrap();
        assert!(GraphMorphism::collapse(fig8, &[1]).is_err());
    }
}

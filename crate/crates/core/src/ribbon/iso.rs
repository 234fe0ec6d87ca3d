use std::collections::{BTreeMap, VecDeque};

use super::{HalfEdge, RibbonGraph};
use crate::sign::{relative_sign, Sign};

/// Extends `a1 -> a2` to a structure-preserving bijection, if one exists.
fn extend(g1: &RibbonGraph, g2: &RibbonGraph, a1: HalfEdge, a2: HalfEdge) -> Option<BTreeMap<HalfEdge, HalfEdge>> {
    let mut fwd = BTreeMap::new();
    let mut bwd = BTreeMap::new();
    let mut queue = VecDeque::new();
    fwd.insert(a1, a2);
    bwd.insert(a2, a1);
    queue.push_back(a1);
    let mut assign =
        |x: HalfEdge, y: HalfEdge, fwd: &mut BTreeMap<HalfEdge, HalfEdge>, queue: &mut VecDeque<HalfEdge>| -> bool {
            match (fwd.get(&x), bwd.get(&y)) {
                (Some(&fy), _) => fy == y,
                (None, Some(_)) => false,
                (None, None) => {
                    fwd.insert(x, y);
                    bwd.insert(y, x);
                    queue.push_back(x);
                    true
                }
            }
        };
    while let Some(h) = queue.pop_front() {
        let k = fwd[&h];
        if !assign(g1.next(h), g2.next(k), &mut fwd, &mut queue) {
            return None;
        }
        match (g1.partner(h), g2.partner(k)) {
            (Some(p), Some(q)) => {
                if !assign(p, q, &mut fwd, &mut queue) {
                    return None;
                }
            }
            (None, None) => {}
            _ => return None,
        }
    }
    (fwd.len() == g1.num_half_edges()).then_some(fwd)
}

fn same_shape(g1: &RibbonGraph, g2: &RibbonGraph) -> bool {
    g1.num_half_edges() == g2.num_half_edges()
        && g1.num_vertices() == g2.num_vertices()
        && g1.num_edges() == g2.num_edges()
        && g1.valences() == g2.valences()
}

/// All isomorphisms `g1 -> g2` as half-edge maps.
pub fn isomorphisms_between(g1: &RibbonGraph, g2: &RibbonGraph) -> Vec<BTreeMap<HalfEdge, HalfEdge>> {
    if !same_shape(g1, g2) {
        return Vec::new();
    }
    let Some(a1) = g1.half_edges().next() else { return Vec::new() };
    g2.half_edges().filter_map(|a2| extend(g1, g2, a1, a2)).collect()
}

pub fn automorphisms(g: &RibbonGraph) -> Vec<BTreeMap<HalfEdge, HalfEdge>> {
    isomorphisms_between(g, g)
}

/// Whether the automorphism `map` preserves or reverses orientations.
pub fn orientation_sign_of(g: &RibbonGraph, map: &BTreeMap<HalfEdge, HalfEdge>) -> Sign {
    relative_sign(&g.reference_sequence(), &g.pushed_reference(g, map))
}

/// A canonical representative of an isomorphism class.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    /// The representative, labelled `1..=H`.
    pub graph: RibbonGraph,
    /// Half-edge map from the input graph onto `graph`.
    pub map: BTreeMap<HalfEdge, HalfEdge>,
    pub automorphism_count: usize,
}

/// Breadth-first labelling from `root`; returns the code and the visit order.
///
/// Leaves are written as partner `0`.
fn traversal(g: &RibbonGraph, root: HalfEdge) -> (Vec<u32>, Vec<HalfEdge>) {
    let mut label: BTreeMap<HalfEdge, u32> = BTreeMap::new();
    let mut order = Vec::with_capacity(g.num_half_edges());
    label.insert(root, 1);
    order.push(root);
    let mut code = Vec::with_capacity(2 * g.num_half_edges());
    let mut idx = 0;
    while idx < order.len() {
        let h = order[idx];
        idx += 1;
        let mut visit = |x: HalfEdge, order: &mut Vec<HalfEdge>| -> u32 {
            let n = label.len() as u32 + 1;
            *label.entry(x).or_insert_with(|| {
                order.push(x);
                n
            })
        };
        let s = visit(g.next(h), &mut order);
        let p = match g.partner(h) {
            Some(p) => visit(p, &mut order),
            None => 0,
        };
        code.push(s);
        code.push(p);
    }
    (code, order)
}

/// Canonical form over all roots; ties count the automorphisms.
pub fn canonical_form(g: &RibbonGraph) -> CanonicalForm {
    canonical_form_from(g, g.half_edges())
}

/// Canonical form of a traversal started at a fixed half-edge.
pub fn canonical_form_rooted(g: &RibbonGraph, root: HalfEdge) -> CanonicalForm {
    canonical_form_from(g, std::iter::once(root))
}

/// Canonical form restricted to the given candidate roots.
pub(crate) fn canonical_form_from(g: &RibbonGraph, roots: impl Iterator<Item = HalfEdge>) -> CanonicalForm {
    let mut best: Option<(Vec<u32>, Vec<HalfEdge>)> = None;
    let mut ties = 0;
    for r in roots {
        let (code, order) = traversal(g, r);
        match &best {
            Some((b, _)) if code > *b => {}
            Some((b, _)) if code == *b => ties += 1,
            _ => {
                best = Some((code, order));
                ties = 1;
            }
        }
    }
    let (_, order) = best.expect("graph has half-edges");
    let map: BTreeMap<HalfEdge, HalfEdge> = order.iter().enumerate().map(|(i, h)| (*h, i as HalfEdge + 1)).collect();
    CanonicalForm { graph: g.relabel(&map), map, automorphism_count: ties }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon::OrientedRibbonGraph;

    fn theta() -> RibbonGraph {
        RibbonGraph::new(vec![vec![1, 2, 3], vec![4, 5, 6]], &[(1, 4), (2, 5), (3, 6)]).unwrap()
    }

    #[test]
    fn theta_automorphisms() {
        // nonplanar theta: rotations at each vertex and the swap, 6 in total
        assert_eq!(automorphisms(&theta()).len(), 6);
        let planar = RibbonGraph::new(vec![vec![1, 2, 3], vec![6, 5, 4]], &[(1, 4), (2, 5), (3, 6)]).unwrap();
        assert_eq!(automorphisms(&planar).len(), 6);
        assert_eq!(canonical_form(&planar).automorphism_count, 6);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let g = theta();
        let shuffled =
            RibbonGraph::new(vec![vec![20, 10, 30], vec![60, 40, 50]], &[(10, 50), (20, 40), (30, 60)]).unwrap();
        assert!(!isomorphisms_between(&g, &shuffled).is_empty());
        assert_eq!(canonical_form(&g).graph, canonical_form(&shuffled).graph);
    }

    #[test]
    fn planar_and_nonplanar_theta_differ() {
        let planar = RibbonGraph::new(vec![vec![1, 2, 3], vec![6, 5, 4]], &[(1, 4), (2, 5), (3, 6)]).unwrap();
        assert!(isomorphisms_between(&theta(), &planar).is_empty());
        assert_ne!(canonical_form(&theta()).graph, canonical_form(&planar).graph);
    }

    #[test]
    fn transport_along_canonical_map() {
        let g = theta();
        let cf = canonical_form(&g);
        let o = OrientedRibbonGraph::reference(g.clone());
        let t = o.transport(&cf.graph, &cf.map);
        let inverse: BTreeMap<_, _> = cf.map.iter().map(|(a, b)| (*b, *a)).collect();
        assert_eq!(t.transport(&g, &inverse), o);
    }

    #[test]
    fn theta_automorphisms_preserve_orientation() {
        let g = theta();
        for a in automorphisms(&g) {
            assert_eq!(orientation_sign_of(&g, &a), Sign::Plus);
        }
    }
}

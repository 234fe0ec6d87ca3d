//! The graph complex on oriented ribbon graphs, Kontsevich cocycles, and the
//! forest complex of a single graph.
//!
//! Chains live in one of two bases: the integral generators `⟨Γ⟩` or the dual
//! generators `[Γ]* = ⟨Γ⟩/|Aut Γ|`. Keys are canonical forms carrying their
//! reference orientation; a class with an orientation-reversing automorphism is
//! zero and never stored.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::{rank, Matrix};
use crate::partition::Partition;
use crate::rational::{binomial, format_q, q, Q};
use crate::ribbon::{
    automorphisms, canonical_form, hom_set, orientation_sign_of, GraphLiteral, HalfEdge, OrientedRibbonGraph,
    RibbonError, RibbonGraph,
};
use crate::sign::Sign;
use crate::trees::{bits, FaceLattice, Polygon, TreeError, MAX_LEAVES};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("vertex of valence {0} is too large for the forest complex")]
    VertexTooLarge(usize),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
}

/// Canonical oriented representative of an isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassKey {
    pub graph: RibbonGraph,
    /// Orientation of the input relative to the key's reference orientation.
    pub sign: Sign,
    pub automorphisms: usize,
}

/// Whether some automorphism reverses orientations.
pub fn has_reversing_automorphism(g: &RibbonGraph) -> bool {
    automorphisms(g).iter().any(|a| orientation_sign_of(g, a) == Sign::Minus)
}

/// The class key of `og`, or `None` when the class is zero.
pub fn class_key(og: &OrientedRibbonGraph) -> Option<ClassKey> {
    let cf = canonical_form(&og.graph);
    if has_reversing_automorphism(&cf.graph) {
        return None;
    }
    let sign = og.transport(&cf.graph, &cf.map).sign;
    Some(ClassKey { graph: cf.graph, sign, automorphisms: cf.automorphism_count })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// `⟨Γ⟩ = |Aut Γ|·[Γ]*`.
    Integral,
    /// `[Γ]*`.
    Dual,
}

/// A finite rational combination of oriented graph classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphChain {
    basis: Basis,
    terms: BTreeMap<RibbonGraph, Q>,
}

impl GraphChain {
    pub fn zero(basis: Basis) -> Self {
        GraphChain { basis, terms: BTreeMap::new() }
    }

    /// `c·(Γ, o)`, normalized onto its class key.
    pub fn single(basis: Basis, og: &OrientedRibbonGraph, c: Q) -> Self {
        let mut ch = Self::zero(basis);
        ch.add(og, c);
        ch
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn add(&mut self, og: &OrientedRibbonGraph, c: Q) {
        if let Some(k) = class_key(og) {
            self.add_key(k.graph, c * q(k.sign.to_i64()));
        }
    }

    /// Adds to a canonical key directly.
    fn add_key(&mut self, key: RibbonGraph, c: Q) {
        let e = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_chain(&mut self, other: &GraphChain) {
        let other = other.in_basis(self.basis);
        for (k, v) in other.terms {
            self.add_key(k, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RibbonGraph, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, og: &OrientedRibbonGraph) -> Q {
        match class_key(og) {
            Some(k) => self.terms.get(&k.graph).cloned().unwrap_or_else(Q::zero) * q(k.sign.to_i64()),
            None => Q::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Codimension shared by all terms, if any and if homogeneous.
    pub fn codimension(&self) -> Option<usize> {
        let cs: BTreeSet<usize> = self.terms.keys().map(|g| g.codimension()).collect();
        (cs.len() == 1).then(|| *cs.iter().next().unwrap())
    }

    pub fn in_basis(&self, basis: Basis) -> GraphChain {
        if basis == self.basis {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| {
                let aut = q(canonical_form(k).automorphism_count as i64);
                let c = match basis {
                    Basis::Dual => v * aut,
                    Basis::Integral => v / aut,
                };
                (k.clone(), c)
            })
            .collect();
        GraphChain { basis, terms }
    }

    /// Map from graph literals to rational strings.
    pub fn to_json_map(&self) -> BTreeMap<String, String> {
        self.terms.iter().map(|(k, v)| (GraphLiteral::from_graph(k).to_string(), format_q(v))).collect()
    }
}

/// `d⟨Γ⟩`: every single-vertex expansion, with the orientation that collapses back.
pub fn d_integral(og: &OrientedRibbonGraph) -> GraphChain {
    let mut out = GraphChain::zero(Basis::Integral);
    for (e, _) in og.enumerate_expansions() {
        out.add(&e, q(1));
    }
    out
}

/// Linear extension of [`d_integral`]; the result is in the basis of the input.
pub fn d_chain(chain: &GraphChain) -> GraphChain {
    let integral = chain.in_basis(Basis::Integral);
    let mut out = GraphChain::zero(Basis::Integral);
    for (k, v) in integral.terms() {
        for (g, c) in d_integral(&OrientedRibbonGraph::reference(k.clone())).terms {
            out.add_key(g, c * v);
        }
    }
    out.in_basis(chain.basis())
}

/// `(|Hom⁺|, |Hom⁻|)`: morphisms `source -> target` that carry the source
/// orientation onto the target's, or onto its reverse.
pub fn hom_counts(source: &OrientedRibbonGraph, target: &OrientedRibbonGraph) -> (usize, usize) {
    let mut plus = 0;
    let mut minus = 0;
    for f in hom_set(&source.graph, &target.graph) {
        if f.induced_sign(source.sign) == target.sign {
            plus += 1;
        } else {
            minus += 1;
        }
    }
    (plus, minus)
}

/// `d[Γ]* = Σ ℓ_i [Γ_i]*` with `ℓ_i = (|Hom⁺(Γ_i, Γ)| - |Hom⁻(Γ_i, Γ)|)/|Aut Γ|`.
pub fn d_dual(og: &OrientedRibbonGraph) -> GraphChain {
    let aut = q(canonical_form(&og.graph).automorphism_count as i64);
    let mut classes = BTreeSet::new();
    for (e, _) in og.enumerate_expansions() {
        classes.insert(canonical_form(&e.graph).graph);
    }
    let mut out = GraphChain::zero(Basis::Dual);
    for c in classes {
        let src = OrientedRibbonGraph::reference(c);
        let (p, m) = hom_counts(&src, og);
        out.add(&src, q(p as i64 - m as i64) / &aut);
    }
    out
}

/// One term of `d⟨Γ⟩` with the three counts that must agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionCounts {
    pub class: RibbonGraph,
    /// `ℓ·|Aut Γ|`.
    pub left: Q,
    /// `r·|Aut Γ_i|`.
    pub right: Q,
    /// `|Hom⁺| - |Hom⁻|`.
    pub hom: i64,
}

impl ExpansionCounts {
    pub fn holds(&self) -> bool {
        self.left == self.right && self.right == q(self.hom)
    }
}

/// `ℓ_i|Aut Γ| = r_i|Aut Γ_i| = |Hom⁺| - |Hom⁻|` for every class in `dΓ`.
pub fn expansion_counts(og: &OrientedRibbonGraph) -> Vec<ExpansionCounts> {
    let aut = q(canonical_form(&og.graph).automorphism_count as i64);
    let integral = d_integral(og);
    let dual = d_dual(og);
    let mut classes = BTreeSet::new();
    for (e, _) in og.enumerate_expansions() {
        classes.insert(canonical_form(&e.graph).graph);
    }
    classes
        .into_iter()
        .map(|c| {
            let src = OrientedRibbonGraph::reference(c.clone());
            let (p, m) = hom_counts(&src, og);
            let aut_i = q(canonical_form(&c).automorphism_count as i64);
            ExpansionCounts {
                left: dual.coefficient(&src) * &aut,
                right: integral.coefficient(&src) * aut_i,
                hom: p as i64 - m as i64,
                class: c,
            }
        })
        .collect()
}

/// `W_λ*⟨Γ⟩`: the natural sign when the non-trivalent valences are `2λ_i+3`,
/// times `binom(t, k)` for `k` zero parts and `t` trivalent vertices.
pub fn eval_w(lambda: &Partition, og: &OrientedRibbonGraph) -> Q {
    let Some(sign) = og.natural_sign() else { return Q::zero() };
    let mut want: Vec<usize> = lambda.positive().parts().iter().map(|p| 2 * *p as usize + 3).collect();
    want.sort_unstable_by(|a, b| b.cmp(a));
    let have: Vec<usize> = og.graph.valences().into_iter().filter(|v| *v != 3).collect();
    if have != want {
        return Q::zero();
    }
    let t = og.graph.valences().iter().filter(|v| **v == 3).count();
    let k = lambda.zero_count();
    Q::from_integer(binomial(t as i64, k as i64)) * q(sign.to_i64())
}

/// `W_λ*` applied to a chain.
pub fn eval_w_chain(lambda: &Partition, chain: &GraphChain) -> Q {
    chain
        .in_basis(Basis::Integral)
        .terms()
        .map(|(k, v)| eval_w(lambda, &OrientedRibbonGraph::reference(k.clone())) * v)
        .sum()
}

/// Which graphs [`enumerate_graphs`] keeps. Unset fields do not constrain.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphConstraints {
    /// Valences other than 3, in any order.
    pub special_valences: Option<Vec<usize>>,
    pub codimension: Option<usize>,
    pub euler_characteristic: Option<i64>,
    pub odd_valent: bool,
}

impl GraphConstraints {
    pub fn trivalent() -> Self {
        GraphConstraints { special_valences: Some(Vec::new()), ..Default::default() }
    }

    pub fn with_codimension(c: usize) -> Self {
        GraphConstraints { codimension: Some(c), ..Default::default() }
    }

    fn admits_valences(&self, valences: &[usize]) -> bool {
        if self.odd_valent && valences.iter().any(|v| v % 2 == 0) {
            return false;
        }
        if let Some(c) = self.codimension {
            if valences.iter().map(|v| v - 3).sum::<usize>() != c {
                return false;
            }
        }
        if let Some(s) = &self.special_valences {
            let mut want = s.clone();
            want.sort_unstable_by(|a, b| b.cmp(a));
            let have: Vec<usize> = valences.iter().copied().filter(|v| *v != 3).collect();
            if have != want {
                return false;
            }
        }
        if let Some(chi) = self.euler_characteristic {
            let h: usize = valences.iter().sum();
            if valences.len() as i64 - (h / 2) as i64 != chi {
                return false;
            }
        }
        true
    }
}

/// Nonincreasing valence lists with entries `>= 3` summing to `total`.
fn valence_lists(total: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for v in (3..=rest.min(max)).rev() {
            cur.push(v);
            go(rest - v, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, &mut Vec::new(), &mut out);
    out
}

fn matchings(
    free: &mut Vec<HalfEdge>,
    cur: &mut Vec<(HalfEdge, HalfEdge)>,
    f: &mut impl FnMut(&[(HalfEdge, HalfEdge)]),
) {
    let Some(a) = free.pop() else {
        f(cur);
        return;
    };
    for i in 0..free.len() {
        let b = free.remove(i);
        cur.push((a, b));
        matchings(free, cur, f);
        cur.pop();
        free.insert(i, b);
    }
    free.push(a);
}

/// One canonical representative per isomorphism class of connected closed
/// ribbon graphs, all valences `>= 3`, at most `max_half_edges` half-edges.
/// Sorted by size, then valences, then canonical form.
pub fn enumerate_graphs(max_half_edges: usize, constraints: &GraphConstraints) -> Vec<RibbonGraph> {
    let mut found: BTreeSet<(usize, Vec<usize>, RibbonGraph)> = BTreeSet::new();
    for h in (4..=max_half_edges).step_by(2) {
        for valences in valence_lists(h) {
            if !constraints.admits_valences(&valences) {
                continue;
            }
            let mut next = 1;
            let cycles: Vec<Vec<HalfEdge>> = valences
                .iter()
                .map(|v| {
                    let c: Vec<HalfEdge> = (next..next + *v as HalfEdge).collect();
                    next += *v as HalfEdge;
                    c
                })
                .collect();
            let mut free: Vec<HalfEdge> = (1..next).rev().collect();
            matchings(&mut free, &mut Vec::new(), &mut |pairs| {
                if let Ok(g) = RibbonGraph::new(cycles.clone(), pairs) {
                    let c = canonical_form(&g).graph;
                    found.insert((h, valences.clone(), c));
                }
            });
        }
    }
    found.into_iter().map(|(_, _, g)| g).collect()
}

/// Result of checking that `W_λ*` kills boundaries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocycleReport {
    pub partition: String,
    /// Literals of every graph `Γ` for which `W_λ*(d⟨Γ⟩)` was computed.
    pub checked: Vec<String>,
    /// Graphs with a nonzero value, with that value.
    pub failures: Vec<(String, String)>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `W_λ*(d⟨Γ⟩) = 0` for every graph of codimension `2|λ|+1` within the bound.
pub fn verify_cocycle(lambda: &Partition, max_half_edges: usize) -> CocycleReport {
    let codim = 2 * lambda.weight() as usize + 1;
    let graphs = enumerate_graphs(max_half_edges, &GraphConstraints::with_codimension(codim));
    let values: Vec<(String, Q)> = graphs
        .par_iter()
        .map(|g| {
            let d = d_integral(&OrientedRibbonGraph::reference(g.clone()));
            (GraphLiteral::from_graph(g).to_string(), eval_w_chain(lambda, &d))
        })
        .collect();
    CocycleReport {
        partition: lambda.to_string(),
        failures: values.iter().filter(|(_, v)| !v.is_zero()).map(|(g, v)| (g.clone(), format_q(v))).collect(),
        checked: values.into_iter().map(|(g, _)| g).collect(),
    }
}

/// `d∘d⟨Γ⟩ = 0`.
pub fn d_squared_vanishes(g: &RibbonGraph) -> bool {
    d_chain(&d_integral(&OrientedRibbonGraph::reference(g.clone()))).is_zero()
}

/// `ε(d⟨Γ⟩) = 0` for a codimension-one graph, `ε` the natural sign on trivalent graphs.
pub fn augmentation_kills_boundary(g: &RibbonGraph) -> bool {
    eval_w_chain(&Partition::empty(), &d_integral(&OrientedRibbonGraph::reference(g.clone()))).is_zero()
}

/// Expansions `Γ -> Γ_0` as chains: one planar tree per vertex of `Γ_0`, the
/// boundary adding one internal edge, and `ε` the natural sign in degree 0.
#[derive(Debug, Clone)]
pub struct ForestComplex {
    base: RibbonGraph,
    /// Per vertex: polygon size.
    polygons: Vec<Polygon>,
    /// Generators by degree, each a tuple of dissection masks.
    generators: Vec<Vec<Vec<u64>>>,
    /// `boundary[k][(i, j)]`: coefficient of generator `j` of degree `k-1` in `d` of generator `i` of degree `k`.
    boundary: Vec<BTreeMap<(usize, usize), i64>>,
}

/// Block of labels reserved for the internal half-edges of each vertex's tree.
const LABEL_BLOCK: HalfEdge = 256;

impl ForestComplex {
    pub fn new(base: &RibbonGraph) -> Result<Self, ComplexError> {
        let mut polygons = Vec::new();
        for c in base.vertices() {
            if c.len() > MAX_LEAVES {
                return Err(ComplexError::VertexTooLarge(c.len()));
            }
            polygons.push(Polygon::new(c.len())?);
        }
        let dims: Vec<usize> = polygons.iter().map(|p| p.size() - 3).collect();
        let total: usize = dims.iter().sum();
        let per_vertex: Vec<Vec<u64>> = polygons.iter().map(|p| p.all_dissections()).collect();
        let mut generators = vec![Vec::new(); total + 1];
        let mut cur = Vec::new();
        fn product(per: &[Vec<u64>], cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if cur.len() == per.len() {
                out.push(cur.clone());
                return;
            }
            for m in &per[cur.len()] {
                cur.push(*m);
                product(per, cur, out);
                cur.pop();
            }
        }
        let mut all = Vec::new();
        product(&per_vertex, &mut cur, &mut all);
        for g in all {
            let deg = total - g.iter().map(|m| m.count_ones() as usize).sum::<usize>();
            generators[deg].push(g);
        }
        for gens in &mut generators {
            gens.sort();
        }
        let mut fc = ForestComplex { base: base.clone(), polygons, generators, boundary: Vec::new() };
        fc.boundary = (0..=total).map(|k| fc.boundary_in_degree(k)).collect::<Result<_, _>>()?;
        Ok(fc)
    }

    /// `Γ_0` with vertex `v` replaced by the tree of `masks[v]`.
    pub fn graph_of(&self, masks: &[u64]) -> RibbonGraph {
        let top = self.base.max_label();
        let mut cycles = Vec::new();
        let mut pairs: Vec<(HalfEdge, HalfEdge)> = self.base.edges();
        for (v, (poly, mask)) in self.polygons.iter().zip(masks).enumerate() {
            let corners = &self.base.vertices()[v];
            let n = poly.size() as HalfEdge;
            let offset = top + 1 + v as HalfEdge * LABEL_BLOCK;
            let relabel = |h: HalfEdge| if h < n { corners[h as usize] } else { offset + h };
            let tree = poly.ribbon(*mask);
            cycles.extend(tree.vertices().iter().map(|c| c.iter().map(|h| relabel(*h)).collect::<Vec<_>>()));
            for d in bits(*mask) {
                pairs.push((relabel(poly.inner_label(d)), relabel(poly.outer_label(d))));
            }
        }
        RibbonGraph::new(cycles, &pairs).expect("expansion of a valid graph")
    }

    fn boundary_in_degree(&self, k: usize) -> Result<BTreeMap<(usize, usize), i64>, ComplexError> {
        let mut out = BTreeMap::new();
        if k == 0 {
            return Ok(out);
        }
        let lower: BTreeMap<&Vec<u64>, usize> =
            self.generators[k - 1].iter().enumerate().map(|(i, g)| (g, i)).collect();
        let top = self.base.max_label();
        for (i, g) in self.generators[k].iter().enumerate() {
            let here = self.graph_of(g);
            for (v, poly) in self.polygons.iter().enumerate() {
                for d in 0..poly.diagonals().len() {
                    let grown = g[v] | 1 << d;
                    if g[v] >> d & 1 == 1 || !poly.is_dissection(grown) {
                        continue;
                    }
                    let mut h = g.clone();
                    h[v] = grown;
                    let expanded = self.graph_of(&h);
                    let edge = top + 1 + v as HalfEdge * LABEL_BLOCK + poly.inner_label(d);
                    let back = OrientedRibbonGraph::reference(expanded).collapse_edge(edge)?;
                    if back.graph != here {
                        return Err(RibbonError::MorphismMismatch.into());
                    }
                    out.insert((i, lower[&h]), back.sign.to_i64());
                }
            }
        }
        Ok(out)
    }

    pub fn base(&self) -> &RibbonGraph {
        &self.base
    }

    pub fn top_degree(&self) -> usize {
        self.generators.len() - 1
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.generators.iter().map(Vec::len).collect()
    }

    /// Ranks of the tensor product of the cellular chains of the associahedra.
    pub fn expected_ranks(&self) -> Result<Vec<usize>, ComplexError> {
        let mut acc = vec![1usize];
        for p in &self.polygons {
            let f = FaceLattice::new(p.size() - 3)?.f_vector();
            let mut next = vec![0; acc.len() + f.len() - 1];
            for (i, a) in acc.iter().enumerate() {
                for (j, b) in f.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Matrix of `d: F_k -> F_{k-1}`, rows indexed by degree `k-1`.
    pub fn boundary_matrix(&self, k: usize) -> Matrix {
        let rows = if k == 0 { 0 } else { self.generators[k - 1].len() };
        let mut m = vec![vec![q(0); self.generators[k].len()]; rows];
        for ((i, j), c) in &self.boundary[k] {
            m[*j][*i] = q(*c);
        }
        m
    }

    /// `ε` on degree-0 generators.
    pub fn augmentation(&self) -> Vec<i64> {
        self.generators[0]
            .iter()
            .map(|g| {
                let o = OrientedRibbonGraph::reference(self.graph_of(g));
                o.natural_sign().expect("trivalent").to_i64()
            })
            .collect()
    }

    pub fn d_squared_vanishes(&self) -> bool {
        (2..=self.top_degree()).all(|k| {
            let a = self.boundary_matrix(k - 1);
            let b = self.boundary_matrix(k);
            crate::linalg::multiply(&a, &b).iter().flatten().all(Zero::is_zero)
        })
    }

    pub fn augmentation_vanishes_on_boundaries(&self) -> bool {
        if self.top_degree() == 0 {
            return true;
        }
        let eps = self.augmentation();
        let d1 = self.boundary_matrix(1);
        (0..self.generators[1].len()).all(|c| d1.iter().zip(&eps).map(|(r, e)| &r[c] * q(*e)).sum::<Q>().is_zero())
    }

    /// Exactness of `0 -> F_n -> … -> F_0 -> Z -> 0`, by ranks.
    pub fn is_acyclic(&self) -> bool {
        let n = self.top_degree();
        let ranks: Vec<usize> =
            (0..=n + 1).map(|k| if k == 0 || k > n { 0 } else { rank(&self.boundary_matrix(k)) }).collect();
        let eps_rank = usize::from(self.augmentation().iter().any(|e| *e != 0));
        (0..=n).all(|k| {
            let incoming = ranks[k + 1];
            let outgoing = if k == 0 { eps_rank } else { ranks[k] };
            self.generators[k].len() == incoming + outgoing
        }) && eps_rank == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corolla(pairs: &[(u32, u32)], p: u32) -> RibbonGraph {
        RibbonGraph::new(vec![(1..=p).collect()], pairs).unwrap()
    }

    #[test]
    fn trivalent_six_half_edges() {
        let gs = enumerate_graphs(6, &GraphConstraints::trivalent());
        let with_loops = gs.iter().filter(|g| g.half_edges().any(|h| g.is_loop(h))).count();
        // two thetas and the dumbbell
        assert_eq!(gs.len(), 3);
        assert_eq!(with_loops, 1);
    }

    #[test]
    fn constraint_examples() {
        let c =
            GraphConstraints { special_valences: Some(vec![5]), euler_characteristic: Some(-2), ..Default::default() };
        assert!(!enumerate_graphs(8, &c).is_empty());
        // a lone 5-valent vertex has an odd number of half-edges
        let odd =
            GraphConstraints { special_valences: Some(vec![5]), euler_characteristic: Some(-1), ..Default::default() };
        assert!(enumerate_graphs(10, &odd).is_empty());
    }

    #[test]
    fn codimension_zero_has_no_boundary() {
        for g in enumerate_graphs(6, &GraphConstraints::trivalent()) {
            assert!(d_integral(&OrientedRibbonGraph::reference(g)).is_zero());
        }
    }

    #[test]
    fn four_valent_expansions_cancel_in_augmentation() {
        for g in enumerate_graphs(8, &GraphConstraints::with_codimension(1)) {
            assert!(augmentation_kills_boundary(&g), "{g}");
        }
    }

    #[test]
    fn orientation_reversal_negates() {
        let g = corolla(&[(1, 4), (2, 5), (3, 6)], 6);
        let o = OrientedRibbonGraph::reference(g);
        let mut a = d_integral(&o);
        let b = d_integral(&o.reversed());
        for (k, v) in b.terms() {
            a.add_key(k.clone(), v.clone());
        }
        assert!(a.is_zero());
        let w = Partition::new(vec![1]);
        let x = GraphChain::single(Basis::Integral, &o, q(1));
        let y = GraphChain::single(Basis::Integral, &o.reversed(), q(1));
        assert_eq!(eval_w_chain(&w, &x), -eval_w_chain(&w, &y));
    }

    #[test]
    fn eval_on_small_graphs() {
        let theta = RibbonGraph::new(vec![vec![1, 2, 3], vec![4, 5, 6]], &[(1, 4), (2, 5), (3, 6)]).unwrap();
        assert_eq!(eval_w(&Partition::empty(), &OrientedRibbonGraph::reference(theta.clone())), q(1));
        let five =
            RibbonGraph::new(vec![vec![1, 2, 3, 4, 5], vec![6, 7, 8]], &[(1, 6), (2, 4), (3, 7), (5, 8)]).unwrap();
        let o = OrientedRibbonGraph::reference(five);
        assert_eq!(eval_w(&Partition::new(vec![1]), &o), q(1));
        // one trivalent vertex: W_{1,0} counts it
        assert_eq!(eval_w(&Partition::new(vec![1, 0]), &o), q(1));
        assert_eq!(eval_w(&Partition::new(vec![2]), &o), q(0));
        assert_eq!(eval_w(&Partition::new(vec![0, 0]), &OrientedRibbonGraph::reference(theta)), q(1));
    }

    #[test]
    fn hom_counts_match_expansion_counts() {
        for g in enumerate_graphs(8, &GraphConstraints::with_codimension(2)) {
            for c in expansion_counts(&OrientedRibbonGraph::reference(g)) {
                assert!(c.holds(), "{c:?}");
            }
        }
    }

    #[test]
    fn dual_and_integral_agree() {
        for g in enumerate_graphs(8, &GraphConstraints::with_codimension(1)) {
            let o = OrientedRibbonGraph::reference(g);
            let aut = q(canonical_form(&o.graph).automorphism_count as i64);
            let via_integral = d_integral(&o).in_basis(Basis::Dual);
            let mut scaled = GraphChain::zero(Basis::Dual);
            for (k, v) in via_integral.terms() {
                scaled.add_key(k.clone(), v / &aut);
            }
            assert_eq!(scaled, d_dual(&o));
        }
    }

    #[test]
    fn d_squared_on_small_corpus() {
        for g in enumerate_graphs(8, &GraphConstraints::with_codimension(2)) {
            assert!(d_squared_vanishes(&g), "{g}");
        }
    }

    #[test]
    fn witten_one_is_a_cocycle() {
        let r = verify_cocycle(&Partition::new(vec![1]), 8);
        assert!(!r.checked.is_empty());
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn forest_complex_small_cases() {
        let theta = RibbonGraph::new(vec![vec![1, 2, 3], vec![4, 5, 6]], &[(1, 4), (2, 5), (3, 6)]).unwrap();
        let f = ForestComplex::new(&theta).unwrap();
        assert_eq!(f.ranks(), vec![1]);
        assert!(f.is_acyclic());
        // a 4-valent vertex expands along an interval
        let four = RibbonGraph::new(
            vec![vec![1, 2, 3, 4], vec![5, 6, 7], vec![8, 9, 10]],
            &[(1, 5), (2, 8), (3, 6), (4, 9), (7, 10)],
        )
        .unwrap();
        let f = ForestComplex::new(&four).unwrap();
        assert_eq!(f.ranks(), vec![2, 1]);
        assert!(f.is_acyclic() && f.augmentation_vanishes_on_boundaries());
        // a 5-valent vertex expands along a pentagon
        let five =
            RibbonGraph::new(vec![vec![1, 2, 3, 4, 5], vec![6, 7, 8]], &[(1, 6), (2, 4), (3, 7), (5, 8)]).unwrap();
        let f = ForestComplex::new(&five).unwrap();
        assert_eq!(f.ranks(), vec![5, 5, 1]);
        assert!(f.d_squared_vanishes() && f.is_acyclic());
        let two =
            RibbonGraph::new(vec![vec![1, 2, 3, 4, 5], vec![6, 7, 8, 9]], &[(1, 6), (2, 7), (3, 8), (4, 9), (5, 10)]);
        assert!(two.is_err());
        let mixed = corolla(&[(1, 4), (2, 6), (3, 7), (5, 8)], 8);
        let g = ForestComplex::new(&mixed).unwrap();
        assert_eq!(g.ranks(), g.expected_ranks().unwrap());
        assert_eq!(g.ranks(), FaceLattice::new(5).unwrap().f_vector());
    }

    #[test]
    fn chain_json() {
        let g = RibbonGraph::new(vec![vec![1, 2, 3, 4, 5], vec![6, 7, 8]], &[(1, 6), (2, 4), (3, 7), (5, 8)]).unwrap();
        let c = GraphChain::single(Basis::Integral, &OrientedRibbonGraph::reference(g), q_half());
        let m = c.to_json_map();
        assert_eq!(m.len(), 1);
        assert!(m.values().all(|v| v == "1/2" || v == "-1/2"));
        assert_eq!(c.codimension(), Some(2));
    }

    fn q_half() -> Q {
        q(1) / q(2)
    }
}

//! Finite A∞ superalgebras with an even scalar product, and the partition
//! functions they define on oriented ribbon graphs.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph_complex::{d_integral, eval_w, GraphChain};
use crate::linalg::{inverse, Matrix};
use crate::partition::Partition;
use crate::rational::{format_q, parse_q, q, Q};
use crate::ribbon::{HalfEdge, OrientedRibbonGraph, RibbonGraph, Token};
use crate::sign::{relative_sign, Sign};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AInfError {
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("x_0 must be nonzero")]
    ZeroX0,
    #[error("malformed algebra literal: {0}")]
    Literal(String),
}

/// Sparse structure constants: input basis tuple to output coordinates.
type Product = BTreeMap<Vec<usize>, BTreeMap<usize, Q>>;

/// A free module with basis `b_0..b_{n-1}`, operations `m_k` and a scalar product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AInfinityAlgebra {
    parities: Vec<u8>,
    products: BTreeMap<usize, Product>,
    scalar: Matrix,
}

impl AInfinityAlgebra {
    /// Stores the data without validation; see [`validate`](Self::validate).
    pub fn from_parts(parities: Vec<u8>, scalar: Matrix) -> Self {
        AInfinityAlgebra { parities, products: BTreeMap::new(), scalar }
    }

    /// Sets `m_k(b_inputs) = Σ c_j b_j`.
    pub fn set_product(&mut self, inputs: Vec<usize>, output: BTreeMap<usize, Q>) {
        let out: BTreeMap<usize, Q> = output.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let k = inputs.len();
        if out.is_empty() {
            if let Some(p) = self.products.get_mut(&k) {
                p.remove(&inputs);
            }
            return;
        }
        self.products.entry(k).or_default().insert(inputs, out);
    }

    /// `A = Q` with `m_{2k}` multiplication by `x_{k-1}`, odd operations zero and `⟨a,b⟩ = ab`.
    pub fn one_dimensional(x: &[Q]) -> Self {
        let mut a = Self::from_parts(vec![0], vec![vec![q(1)]]);
        for (i, c) in x.iter().enumerate() {
            a.set_product(vec![0; 2 * (i + 1)], BTreeMap::from([(0, c.clone())]));
        }
        a
    }

    pub fn rank(&self) -> usize {
        self.parities.len()
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parities[i]
    }

    pub fn scalar(&self, a: usize, b: usize) -> &Q {
        &self.scalar[a][b]
    }

    /// `m_k` on basis elements.
    pub fn product(&self, inputs: &[usize]) -> Option<&BTreeMap<usize, Q>> {
        self.products.get(&inputs.len())?.get(inputs)
    }

    /// `⟨m_k(inputs), b_last⟩`.
    pub fn vertex_value(&self, inputs: &[usize], last: usize) -> Q {
        match self.product(inputs) {
            Some(out) => out.iter().map(|(j, c)| c * &self.scalar[*j][last]).sum(),
            None => Q::zero(),
        }
    }

    /// `m_k` extended multilinearly to coordinate vectors.
    fn apply(&self, args: &[BTreeMap<usize, Q>]) -> BTreeMap<usize, Q> {
        let mut out: BTreeMap<usize, Q> = BTreeMap::new();
        let Some(table) = self.products.get(&args.len()) else { return out };
        for (inputs, value) in table {
            let mut c = Q::one();
            for (arg, i) in args.iter().zip(inputs) {
                match arg.get(i) {
                    Some(x) => c *= x,
                    None => {
                        c = Q::zero();
                        break;
                    }
                }
            }
            if c.is_zero() {
                continue;
            }
            for (j, v) in value {
                *out.entry(*j).or_insert_with(Q::zero) += &c * v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// `D b_j* = Σ_l P[l][j] b_l` with `P = G^{-1}`, and the edge matrix `E[a][b] = ⟨D b_a*, D b_b*⟩`.
    fn edge_matrix(&self) -> Result<Matrix, AInfError> {
        let p =
            inverse(&self.scalar).ok_or_else(|| AInfError::InvalidAlgebra("scalar product is degenerate".into()))?;
        let n = self.rank();
        let mut e = vec![vec![Q::zero(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let mut s = Q::zero();
                for l in 0..n {
                    for m in 0..n {
                        s += &p[l][a] * &p[m][b] * &self.scalar[l][m];
                    }
                }
                e[a][b] = s;
            }
        }
        Ok(e)
    }

    /// Every violated axiom other than the A∞ relations.
    pub fn validate(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let n = self.rank();
        if self.parities.iter().any(|p| *p > 1) {
            problems.push("parities must be 0 or 1".into());
        }
        if self.scalar.len() != n || self.scalar.iter().any(|r| r.len() != n) {
            problems.push(format!("scalar product must be {n}x{n}"));
            return problems;
        }
        if self.products.get(&1).is_some_and(|t| !t.is_empty()) {
            problems.push("m_1 must vanish".into());
        }
        for (k, table) in &self.products {
            for (inputs, out) in table {
                if inputs.iter().any(|i| *i >= n) || out.keys().any(|j| *j >= n) {
                    problems.push(format!("m_{k}{inputs:?} refers to a missing basis element"));
                    continue;
                }
                let deg: usize = inputs.iter().map(|i| self.parities[*i] as usize).sum::<usize>() + k;
                if out.keys().any(|j| self.parities[*j] as usize % 2 != deg % 2) {
                    problems.push(format!("m_{k}{inputs:?} is not homogeneous of degree {k}"));
                }
            }
        }
        if !problems.is_empty() {
            return problems;
        }
        for a in 0..n {
            for b in 0..n {
                let v = &self.scalar[a][b];
                if self.parities[a] != self.parities[b] && !v.is_zero() {
                    problems.push(format!("scalar product pairs b{a} and b{b} of different parity"));
                }
                let sign = if self.parities[a] == 1 { -q(1) } else { q(1) };
                if *v != &self.scalar[b][a] * sign {
                    problems.push(format!("scalar product is not graded symmetric at ({a},{b})"));
                }
            }
        }
        if inverse(&self.scalar).is_none() {
            problems.push("scalar product is degenerate".into());
        }
        for k in self.products.keys().copied() {
            let mut tuple = vec![0; k + 1];
            loop {
                let x0 = tuple[0];
                let xn = tuple[k];
                let lhs = self.vertex_value(&tuple[1..], x0);
                let p0 = self.parities[x0] as usize;
                let e = k + p0 + k * p0;
                let rhs = self.vertex_value(&tuple[..k], xn) * if e.is_multiple_of(2) { q(1) } else { q(-1) };
                if lhs != rhs {
                    problems.push(format!("m_{k} is not cyclic at {tuple:?}"));
                }
                if !next_tuple(&mut tuple, n) {
                    break;
                }
            }
        }
        problems
    }

    /// The algebra in the basis `b'_i = Σ_j t[j][i] b_j`; `t` must preserve parity.
    pub fn change_basis(&self, t: &Matrix) -> Result<Self, AInfError> {
        let n = self.rank();
        let inv = inverse(t).ok_or_else(|| AInfError::InvalidAlgebra("basis change is singular".into()))?;
        for i in 0..n {
            for j in 0..n {
                if self.parities[i] != self.parities[j] && !t[i][j].is_zero() {
                    return Err(AInfError::InvalidAlgebra("basis change mixes parities".into()));
                }
            }
        }
        let column = |i: usize| -> BTreeMap<usize, Q> {
            (0..n).filter(|j| !t[*j][i].is_zero()).map(|j| (j, t[j][i].clone())).collect()
        };
        let mut out = Self::from_parts(self.parities.clone(), vec![vec![Q::zero(); n]; n]);
        for a in 0..n {
            for b in 0..n {
                let mut s = Q::zero();
                for j in 0..n {
                    for l in 0..n {
                        s += &t[j][a] * &t[l][b] * &self.scalar[j][l];
                    }
                }
                out.scalar[a][b] = s;
            }
        }
        for k in self.products.keys().copied() {
            let mut tuple = vec![0; k];
            loop {
                let args: Vec<BTreeMap<usize, Q>> = tuple.iter().map(|i| column(*i)).collect();
                let old = self.apply(&args);
                let new: BTreeMap<usize, Q> =
                    (0..n).map(|i| (i, old.iter().map(|(j, c)| &inv[i][*j] * c).sum::<Q>())).collect();
                out.set_product(tuple.clone(), new);
                if !next_tuple(&mut tuple, n) {
                    break;
                }
            }
        }
        Ok(out)
    }

    pub fn to_literal(&self) -> AlgebraLiteral {
        let mut products = Vec::new();
        for (k, table) in &self.products {
            for (inputs, out) in table {
                products.push(ProductLiteral {
                    k: *k,
                    inputs: inputs.clone(),
                    out: out.iter().map(|(j, c)| (j.to_string(), format_q(c))).collect(),
                });
            }
        }
        AlgebraLiteral {
            parities: self.parities.clone(),
            scalar: self.scalar.iter().map(|r| r.iter().map(format_q).collect()).collect(),
            products,
        }
    }
}

fn next_tuple(t: &mut [usize], n: usize) -> bool {
    for x in t.iter_mut().rev() {
        *x += 1;
        if *x < n {
            return true;
        }
        *x = 0;
    }
    false
}

/// One structure constant, `{"k":2,"in":[0,0],"out":{"0":"1"}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductLiteral {
    pub k: usize,
    #[serde(rename = "in")]
    pub inputs: Vec<usize>,
    pub out: BTreeMap<String, String>,
}

/// JSON form of an algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraLiteral {
    pub parities: Vec<u8>,
    pub scalar: Vec<Vec<String>>,
    pub products: Vec<ProductLiteral>,
}

impl AlgebraLiteral {
    pub fn parse(s: &str) -> Result<Self, AInfError> {
        serde_json::from_str(s).map_err(|e| AInfError::Literal(e.to_string()))
    }

    pub fn to_algebra(&self) -> Result<AInfinityAlgebra, AInfError> {
        let bad = |e: String| AInfError::Literal(e);
        let scalar = self
            .scalar
            .iter()
            .map(|r| r.iter().map(|x| parse_q(x).map_err(|e| bad(e.to_string()))).collect())
            .collect::<Result<Matrix, _>>()?;
        let mut a = AInfinityAlgebra::from_parts(self.parities.clone(), scalar);
        for p in &self.products {
            if p.inputs.len() != p.k {
                return Err(bad(format!("m_{} given {} inputs", p.k, p.inputs.len())));
            }
            let mut out = BTreeMap::new();
            for (j, c) in &p.out {
                let j: usize = j.parse().map_err(|_| bad(format!("bad output index `{j}`")))?;
                out.insert(j, parse_q(c).map_err(|e| bad(e.to_string()))?);
            }
            a.set_product(p.inputs.clone(), out);
        }
        Ok(a)
    }
}

/// Relation failure on a basis tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    pub inputs: Vec<usize>,
    /// Nonzero coordinates of the relation's value.
    pub value: BTreeMap<usize, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checked: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `Σ_{r+s+t=k} (-1)^u m_{r+1+t}(x_1..x_r, m_s(x_{r+1}..x_{r+s}), …) = 0`
/// with `u = r + st + s(|x_1|+…+|x_r|)`, on every basis tuple of length `2..=max_arity`.
pub fn verify_a_infinity(a: &AInfinityAlgebra, max_arity: usize) -> RelationReport {
    let n = a.rank();
    let mut checked = 0;
    let mut failures = Vec::new();
    let basis = |i: usize| BTreeMap::from([(i, Q::one())]);
    for k in 1..=max_arity {
        let mut tuple = vec![0; k];
        loop {
            checked += 1;
            let mut total: BTreeMap<usize, Q> = BTreeMap::new();
            for s in 1..=k {
                for r in 0..=k - s {
                    let t = k - r - s;
                    let inner_args: Vec<_> = tuple[r..r + s].iter().map(|i| basis(*i)).collect();
                    let inner = a.apply(&inner_args);
                    if inner.is_empty() {
                        continue;
                    }
                    let mut args: Vec<_> = tuple[..r].iter().map(|i| basis(*i)).collect();
                    args.push(inner);
                    args.extend(tuple[r + s..].iter().map(|i| basis(*i)));
                    let lead: usize = tuple[..r].iter().map(|i| a.parity(*i) as usize).sum();
                    let u = r + s * t + s * lead;
                    let sign = if u.is_multiple_of(2) { q(1) } else { q(-1) };
                    for (j, c) in a.apply(&args) {
                        *total.entry(j).or_insert_with(Q::zero) += c * &sign;
                    }
                }
            }
            total.retain(|_, v| !v.is_zero());
            if !total.is_empty() {
                failures.push(RelationFailure {
                    inputs: tuple.clone(),
                    value: total.iter().map(|(j, c)| (*j, format_q(c))).collect(),
                });
            }
            if !next_tuple(&mut tuple, n) {
                break;
            }
        }
    }
    RelationReport { checked, failures }
}

/// `Σ_i ⟨x, b_i⟩⟨y, D b_i*⟩ = ⟨x, y⟩` on basis elements.
pub fn contraction_identity_holds(a: &AInfinityAlgebra) -> bool {
    let Some(p) = inverse(&a.scalar) else { return false };
    let n = a.rank();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let s: Q = (0..n)
                .map(|i| {
                    // ⟨y, D b_i*⟩ = Σ_l P[l][i] ⟨y, b_l⟩
                    let ydi: Q = (0..n).map(|l| &p[l][i] * &a.scalar[y][l]).sum();
                    &a.scalar[x][i] * ydi
                })
                .sum();
            s == a.scalar[x][y]
        })
    })
}

/// Choices the state sum may not depend on: the vertex order and, per vertex,
/// which half-edge plays `e_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateLayout {
    pub vertex_order: Vec<usize>,
    /// Indexed by vertex: position of `e_0` in the stored cycle.
    pub starts: Vec<usize>,
}

impl StateLayout {
    pub fn standard(g: &RibbonGraph) -> Self {
        StateLayout { vertex_order: (0..g.num_vertices()).collect(), starts: vec![0; g.num_vertices()] }
    }
}

/// `Z_A⟨Γ⟩` with the standard layout.
pub fn partition_function(a: &AInfinityAlgebra, og: &OrientedRibbonGraph) -> Result<Q, AInfError> {
    partition_function_with(a, og, &StateLayout::standard(&og.graph))
}

/// `Z_A⟨Γ⟩ = ε_1 Σ_states Π_v ⟨m_n(x_1..x_n), x_0⟩ · ε_2 Π_edges ⟨D ȳ*, D y*⟩`.
pub fn partition_function_with(
    a: &AInfinityAlgebra,
    og: &OrientedRibbonGraph,
    layout: &StateLayout,
) -> Result<Q, AInfError> {
    let g = &og.graph;
    let e = a.edge_matrix()?;
    // counterclockwise cycles starting at e_0: e_0, e_n, …, e_1
    let ccw: Vec<Vec<HalfEdge>> = layout
        .vertex_order
        .iter()
        .map(|v| {
            let c = &g.vertices()[*v];
            let s = layout.starts[*v] % c.len();
            (0..c.len()).map(|i| c[(s + i) % c.len()]).collect()
        })
        .collect();
    let mut seq = Vec::new();
    for (v, c) in layout.vertex_order.iter().zip(&ccw) {
        seq.push(Token::Vertex(*v));
        seq.extend(c.iter().map(|h| Token::Half(*h)));
    }
    let eps1 = og.sign * relative_sign(&g.reference_sequence(), &seq);
    // e_1, …, e_n, e_0 per vertex
    let clockwise: Vec<HalfEdge> =
        ccw.iter().flat_map(|c| c[1..].iter().rev().copied().chain(std::iter::once(c[0]))).collect();
    let edges = g.edges();
    let choices: Vec<Vec<(usize, usize, Q)>> = edges
        .iter()
        .map(|_| {
            let mut v = Vec::new();
            for y in 0..a.rank() {
                for yb in 0..a.rank() {
                    if !e[yb][y].is_zero() {
                        v.push((y, yb, e[yb][y].clone()));
                    }
                }
            }
            v
        })
        .collect();
    let index: BTreeMap<HalfEdge, (usize, bool)> =
        edges.iter().enumerate().flat_map(|(i, (h, hb))| [(*h, (i, false)), (*hb, (i, true))]).collect();
    let evaluate = |state: &[usize]| -> Q {
        let at = |h: HalfEdge| -> usize {
            let (i, bar) = index[&h];
            let (y, yb, _) = &choices[i][state[i]];
            if bar {
                *yb
            } else {
                *y
            }
        };
        let mut value: Q = state.iter().enumerate().map(|(i, s)| choices[i][*s].2.clone()).product();
        for c in &ccw {
            let inputs: Vec<usize> = c[1..].iter().rev().map(|h| at(*h)).collect();
            let v = a.vertex_value(&inputs, at(c[0]));
            if v.is_zero() {
                return v;
            }
            value *= v;
        }
        let odd: Vec<HalfEdge> = clockwise.iter().copied().filter(|h| a.parity(at(*h)) == 1).collect();
        let mut paired = Vec::with_capacity(odd.len());
        for h in &odd {
            let (i, _) = index[h];
            let (x, y) = edges[i];
            if !paired.contains(&x) {
                paired.push(x);
                paired.push(y);
            }
        }
        if relative_sign(&odd, &paired) == Sign::Minus {
            value = -value;
        }
        value
    };
    let Some(first) = choices.first() else { return Ok(Q::zero()) };
    let total: Q = (0..first.len())
        .into_par_iter()
        .map(|s0| {
            let mut state = vec![0; choices.len()];
            state[0] = s0;
            let mut acc = Q::zero();
            loop {
                acc += evaluate(&state);
                let mut i = choices.len();
                loop {
                    if i == 1 {
                        return acc;
                    }
                    i -= 1;
                    state[i] += 1;
                    if state[i] < choices[i].len() {
                        break;
                    }
                    state[i] = 0;
                }
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    Ok(total * q(eps1.to_i64()))
}

/// `Z_A` on a chain in either basis.
pub fn partition_function_chain(a: &AInfinityAlgebra, chain: &GraphChain) -> Result<Q, AInfError> {
    let integral = chain.in_basis(crate::graph_complex::Basis::Integral);
    let mut total = Q::zero();
    for (k, c) in integral.terms() {
        total += partition_function(a, &OrientedRibbonGraph::reference(k.clone()))? * c;
    }
    Ok(total)
}

/// `Z_x⟨Γ⟩ = o(Γ) Π_v x_{(val v - 3)/2}`, zero if some valence is even.
/// Entries beyond the end of `x` are zero.
pub fn z_x(x: &[Q], og: &OrientedRibbonGraph) -> Q {
    let Some(sign) = og.natural_sign() else { return Q::zero() };
    let mut v = q(sign.to_i64());
    for val in og.graph.valences() {
        match x.get((val - 3) / 2) {
            Some(c) => v *= c,
            None => return Q::zero(),
        }
    }
    v
}

/// `Z_x` on a chain.
pub fn z_x_chain(x: &[Q], chain: &GraphChain) -> Q {
    chain
        .in_basis(crate::graph_complex::Basis::Integral)
        .terms()
        .map(|(k, c)| z_x(x, &OrientedRibbonGraph::reference(k.clone())) * c)
        .sum()
}

fn pow(x: &Q, e: i64) -> Q {
    if e >= 0 {
        (0..e).fold(Q::one(), |acc, _| acc * x)
    } else {
        Q::one() / pow(x, -e)
    }
}

/// `x_0^{-2χ} Σ_λ y^λ W_λ*⟨Γ⟩` over every `λ` with `Σ(2λ_i+1) <= -2χ`,
/// `y^λ = Π x_{λ_i}/x_0^{2λ_i+1}`.
pub fn z_x_expansion(x: &[Q], og: &OrientedRibbonGraph) -> Result<Q, AInfError> {
    let x0 = x.first().filter(|v| !v.is_zero()).ok_or(AInfError::ZeroX0)?;
    let budget = -2 * og.graph.euler_characteristic();
    let mut total = Q::zero();
    for lambda in partitions_with_budget(budget.max(0) as u32) {
        let w = eval_w(&lambda, og);
        if w.is_zero() {
            continue;
        }
        let mut y = Q::one();
        for p in lambda.parts() {
            let xi = x.get(*p as usize).cloned().unwrap_or_else(Q::zero);
            y *= xi / pow(x0, 2 * *p as i64 + 1);
        }
        total += y * w;
    }
    Ok(total * pow(x0, budget))
}

/// Partitions into positive parts with `Σ(2λ_i+1) <= budget`.
fn partitions_with_budget(budget: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition::new(cur.clone()));
        for p in 1..=max {
            if 2 * p < rest {
                cur.push(p);
                go(rest - 2 * p - 1, p, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(budget, budget, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphValueReport {
    pub checked: usize,
    /// Graph literal with the two sides that differ, or the nonzero value.
    pub failures: Vec<(String, String, String)>,
}

impl GraphValueReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `Z_x = x_0^{-2χ} Σ_λ y^λ W_λ*` graph by graph.
pub fn zx_expansion_check(x: &[Q], corpus: &[RibbonGraph]) -> Result<GraphValueReport, AInfError> {
    let mut failures = Vec::new();
    for g in corpus {
        let og = OrientedRibbonGraph::reference(g.clone());
        let lhs = z_x(x, &og);
        let rhs = z_x_expansion(x, &og)?;
        if lhs != rhs {
            failures.push((crate::ribbon::GraphLiteral::from_graph(g).to_string(), format_q(&lhs), format_q(&rhs)));
        }
    }
    Ok(GraphValueReport { checked: corpus.len(), failures })
}

/// `Z_A(d⟨Γ⟩) = 0` for every corpus graph of positive codimension.
pub fn check_partition_cocycle(a: &AInfinityAlgebra, corpus: &[RibbonGraph]) -> Result<GraphValueReport, AInfError> {
    let problems = a.validate();
    if !problems.is_empty() {
        return Err(AInfError::InvalidAlgebra(problems.join("; ")));
    }
    let graphs: Vec<&RibbonGraph> = corpus.iter().filter(|g| g.codimension() >= 1).collect();
    let mut failures = Vec::new();
    for g in &graphs {
        let d = d_integral(&OrientedRibbonGraph::reference((*g).clone()));
        let v = partition_function_chain(a, &d)?;
        if !v.is_zero() {
            failures.push((crate::ribbon::GraphLiteral::from_graph(g).to_string(), format_q(&v), "0".into()));
        }
    }
    Ok(GraphValueReport { checked: graphs.len(), failures })
}

/// `Z_x(d⟨Γ⟩) = 0` for every corpus graph of positive codimension.
pub fn check_zx_cocycle(x: &[Q], corpus: &[RibbonGraph]) -> GraphValueReport {
    let graphs: Vec<&RibbonGraph> = corpus.iter().filter(|g| g.codimension() >= 1).collect();
    let failures = graphs
        .iter()
        .filter_map(|g| {
            let v = z_x_chain(x, &d_integral(&OrientedRibbonGraph::reference((*g).clone())));
            (!v.is_zero()).then(|| (crate::ribbon::GraphLiteral::from_graph(g).to_string(), format_q(&v), "0".into()))
        })
        .collect();
    GraphValueReport { checked: graphs.len(), failures }
}

/// The matrix superalgebra `M_{p|q}` with the supertrace pairing; basis the
/// matrix units `E_rc` in row-major order, odd when exactly one of `r, c` is `>= p`.
pub fn matrix_superalgebra(p: usize, q_odd: usize) -> AInfinityAlgebra {
    let size = p + q_odd;
    let units: Vec<(usize, usize)> = (0..size).flat_map(|r| (0..size).map(move |c| (r, c))).collect();
    let odd_index = |r: usize| r >= p;
    let n = units.len();
    let parities = units.iter().map(|(r, c)| u8::from(odd_index(*r) != odd_index(*c))).collect();
    let mut scalar = vec![vec![Q::zero(); n]; n];
    let mut a = AInfinityAlgebra::from_parts(parities, Vec::new());
    for (i, (r1, c1)) in units.iter().enumerate() {
        for (j, (r2, c2)) in units.iter().enumerate() {
            if c1 != r2 {
                continue;
            }
            a.set_product(vec![i, j], BTreeMap::from([(r1 * size + c2, q(1))]));
            if r1 == c2 {
                scalar[i][j] = if odd_index(*r1) { q(-1) } else { q(1) };
            }
        }
    }
    a.scalar = scalar;
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_complex::{enumerate_graphs, GraphConstraints};
    use crate::rational::q_frac;

    fn xs() -> Vec<Q> {
        vec![q_frac(3, 2), q(-2), q_frac(5, 7), q(4)]
    }

    #[test]
    fn one_dimensional_relations_hold() {
        let a = AInfinityAlgebra::one_dimensional(&xs());
        assert!(a.validate().is_empty());
        let r = verify_a_infinity(&a, 8);
        assert!(r.passed(), "{:?}", r.failures);
        let zero = AInfinityAlgebra::from_parts(vec![0], vec![vec![q(1)]]);
        assert!(verify_a_infinity(&zero, 6).passed());
    }

    #[test]
    fn injected_m3_breaks_relations() {
        let mut a = AInfinityAlgebra::one_dimensional(&xs());
        a.set_product(vec![0, 0, 0], BTreeMap::from([(0, q(1))]));
        assert!(!a.validate().is_empty());
        let r = verify_a_infinity(&a, 5);
        assert!(!r.passed());
        assert!(r.failures.iter().all(|f| f.inputs.len() >= 4));
    }

    #[test]
    fn supermatrix_algebra_is_valid() {
        let a = matrix_superalgebra(2, 1);
        assert!(a.validate().is_empty(), "{:?}", a.validate());
        assert!(verify_a_infinity(&a, 4).passed());
        assert!(contraction_identity_holds(&a));
        let lit = serde_json::to_string(&a.to_literal()).unwrap();
        assert_eq!(AlgebraLiteral::parse(&lit).unwrap().to_algebra().unwrap(), a);
    }

    #[test]
    fn literal_format() {
        let a = AInfinityAlgebra::one_dimensional(&[q(1)]);
        let s = serde_json::to_string(&a.to_literal()).unwrap();
        assert_eq!(s, r#"{"parities":[0],"scalar":[["1"]],"products":[{"k":2,"in":[0,0],"out":{"0":"1"}}]}"#);
    }

    #[test]
    fn trivalent_values() {
        let theta = RibbonGraph::new(vec![vec![1, 2, 3], vec![4, 5, 6]], &[(1, 4), (2, 5), (3, 6)]).unwrap();
        let o = OrientedRibbonGraph::reference(theta);
        let x = xs();
        assert_eq!(z_x(&x, &o), &x[0] * &x[0]);
        let a = AInfinityAlgebra::one_dimensional(&x);
        assert_eq!(partition_function(&a, &o).unwrap(), z_x(&x, &o));
        assert_eq!(partition_function(&a, &o.reversed()).unwrap(), -z_x(&x, &o));
        let four = RibbonGraph::new(vec![vec![1, 2, 3, 4]], &[(1, 3), (2, 4)]).unwrap();
        assert!(partition_function(&a, &OrientedRibbonGraph::reference(four)).unwrap().is_zero());
    }

    #[test]
    fn w1_graph_value() {
        let g = RibbonGraph::new(vec![vec![1, 2, 3, 4, 5], vec![6, 7, 8]], &[(1, 6), (2, 4), (3, 7), (5, 8)]).unwrap();
        assert_eq!(g.euler_characteristic(), -2);
        let o = OrientedRibbonGraph::reference(g);
        let x = xs();
        assert_eq!(z_x(&x, &o), &x[0] * &x[1]);
        assert_eq!(z_x_expansion(&x, &o).unwrap(), z_x(&x, &o));
        assert_eq!(z_x_expansion(&[q(0)], &o), Err(AInfError::ZeroX0));
    }

    #[test]
    fn layout_and_basis_invariance() {
        let a = matrix_superalgebra(2, 1);
        // parity-preserving: mix the even units E00 and E11, rescale the odd ones
        let n = a.rank();
        let mut t = vec![vec![q(0); n]; n];
        for (i, row) in t.iter_mut().enumerate() {
            row[i] = if a.parity(i) == 1 { q_frac(2, 3) } else { q(1) };
        }
        t[0][4] = q(3);
        t[4][0] = q(-1);
        let b = a.change_basis(&t).unwrap();
        assert!(b.validate().is_empty());
        let mut nonzero = 0;
        for g in enumerate_graphs(6, &GraphConstraints::trivalent()) {
            let o = OrientedRibbonGraph::reference(g.clone());
            let z = partition_function(&a, &o).unwrap();
            nonzero += usize::from(!z.is_zero());
            assert_eq!(partition_function(&b, &o).unwrap(), z);
            let n = g.num_vertices();
            let layout = StateLayout { vertex_order: (0..n).rev().collect(), starts: (0..n).map(|v| v + 1).collect() };
            assert_eq!(partition_function_with(&a, &o, &layout).unwrap(), z);
        }
        assert!(nonzero > 0);
    }

    #[test]
    fn cocycle_on_small_corpus() {
        let corpus = enumerate_graphs(8, &GraphConstraints::default());
        let small = enumerate_graphs(6, &GraphConstraints::default());
        let a = matrix_superalgebra(2, 1);
        assert!(check_partition_cocycle(&a, &small).unwrap().passed());
        let x = xs();
        assert!(check_zx_cocycle(&x, &corpus).passed());
        let ax = AInfinityAlgebra::one_dimensional(&x);
        assert!(check_partition_cocycle(&ax, &corpus).unwrap().passed());
    }
}

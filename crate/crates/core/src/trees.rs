//! Planar trees with `N` labelled leaves, viewed as dissections of an `N`-gon.
//!
//! Polygon vertex `j` is region `j`, the gap between leaf `j` and leaf `j+1`;
//! leaf `j` is the polygon side `(j-1, j)`. A tree's internal vertices are the
//! cells of the dissection and its internal edges are the diagonals. In the
//! ribbon structure leaf `j` is half-edge `j`, and diagonal number `d` has
//! half-edges `N+2d` (the side facing the vertices strictly between its
//! endpoints) and `N+2d+1`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::ribbon::{normalize_cycles, GraphLiteral, HalfEdge, LiteralError, OrientedRibbonGraph, RibbonGraph};
use crate::sign::{inversion_parity, Sign};

pub const MAX_LEAVES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("leaf count {0} outside 3..={MAX_LEAVES}")]
    LeafCount(usize),
    #[error("diagonals cross or are invalid")]
    InvalidDissection,
    #[error("configuration mismatch: {0}")]
    ConfigurationMismatch(String),
    #[error("not a planar tree with leaves in counterclockwise order")]
    NotPlanarTree,
    #[error(transparent)]
    Literal(#[from] LiteralError),
}

/// Diagonal geometry of a convex polygon.
#[derive(Debug, Clone)]
pub struct Polygon {
    size: usize,
    diagonals: Vec<(u8, u8)>,
    index: Vec<Vec<Option<u8>>>,
}

impl Polygon {
    pub fn new(size: usize) -> Result<Self, TreeError> {
        if !(3..=MAX_LEAVES).contains(&size) {
            return Err(TreeError::LeafCount(size));
        }
        let mut diagonals = Vec::new();
        let mut index = vec![vec![None; size]; size];
        for i in 0..size {
            for j in i + 2..size {
                if i == 0 && j == size - 1 {
                    continue;
                }
                index[i][j] = Some(diagonals.len() as u8);
                index[j][i] = Some(diagonals.len() as u8);
                diagonals.push((i as u8, j as u8));
            }
        }
        Ok(Polygon { size, diagonals, index })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn diagonals(&self) -> &[(u8, u8)] {
        &self.diagonals
    }

    pub fn diagonal_index(&self, i: usize, j: usize) -> Option<usize> {
        self.index.get(i)?.get(j).copied().flatten().map(usize::from)
    }

    fn crosses(&self, a: usize, b: usize) -> bool {
        let (i1, j1) = self.diagonals[a];
        let (i2, j2) = self.diagonals[b];
        (i1 < i2 && i2 < j1 && j1 < j2) || (i2 < i1 && i1 < j2 && j2 < j1)
    }

    pub fn is_dissection(&self, mask: u64) -> bool {
        if self.diagonals.len() < 64 && mask >> self.diagonals.len() != 0 {
            return false;
        }
        let ds: Vec<usize> = bits(mask).collect();
        ds.iter().enumerate().all(|(x, a)| ds[x + 1..].iter().all(|b| !self.crosses(*a, *b)))
    }

    /// Region sets of the cells, sorted.
    pub fn cells(&self, mask: u64) -> Vec<u32> {
        let mut cells = vec![(1u32 << self.size) - 1];
        for d in bits(mask) {
            let (i, j) = self.diagonals[d];
            let both = (1u32 << i) | (1u32 << j);
            let c = cells.iter().position(|c| c & both == both).expect("dissection");
            let cell = cells.swap_remove(c);
            let between: u32 = ((1u32 << j) - 1) & !((1u32 << (i + 1)) - 1);
            let inner = (cell & between) | both;
            let outer = (cell & !between) | both;
            cells.push(inner);
            cells.push(outer);
        }
        cells.sort_unstable();
        cells
    }

    pub fn inner_label(&self, d: usize) -> HalfEdge {
        (self.size + 2 * d) as HalfEdge
    }

    pub fn outer_label(&self, d: usize) -> HalfEdge {
        (self.size + 2 * d + 1) as HalfEdge
    }

    /// Counterclockwise half-edges around the cell with region set `cell`.
    fn cell_cycle(&self, cell: u32) -> Vec<HalfEdge> {
        let r: Vec<usize> = bits(cell as u64).collect();
        let p = r.len();
        let n = self.size;
        (0..p)
            .map(|a| {
                if a + 1 < p {
                    let (x, y) = (r[a], r[a + 1]);
                    if y == x + 1 {
                        y as HalfEdge
                    } else {
                        self.outer_label(self.diagonal_index(x, y).unwrap())
                    }
                } else if r[0] == 0 && r[p - 1] == n - 1 {
                    0
                } else {
                    self.inner_label(self.diagonal_index(r[0], r[p - 1]).unwrap())
                }
            })
            .collect()
    }

    /// The tree as an open ribbon graph with leaves `0..N`.
    pub fn ribbon(&self, mask: u64) -> RibbonGraph {
        let cycles = self.cells(mask).into_iter().map(|c| self.cell_cycle(c)).collect();
        let mut partner = BTreeMap::new();
        for d in bits(mask) {
            partner.insert(self.inner_label(d), self.outer_label(d));
            partner.insert(self.outer_label(d), self.inner_label(d));
        }
        RibbonGraph::from_parts(normalize_cycles(cycles), partner)
    }

    /// Every non-crossing set of diagonals, as bit masks.
    pub fn all_dissections(&self) -> Vec<u64> {
        let mut out = Vec::new();
        self.extend_dissections(0, 0, &mut out);
        out
    }

    fn extend_dissections(&self, mask: u64, start: usize, out: &mut Vec<u64>) {
        out.push(mask);
        for d in start..self.diagonals.len() {
            if bits(mask).all(|e| !self.crosses(d, e)) {
                self.extend_dissections(mask | 1 << d, d + 1, out);
            }
        }
    }
}

pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |b| mask >> b & 1 == 1)
}

/// A face of the associahedron `K^n`: a planar tree with `n+3` leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PlanarTree {
    leaves: usize,
    mask: u64,
}

impl PlanarTree {
    pub fn from_mask(leaves: usize, mask: u64) -> Result<Self, TreeError> {
        if !Polygon::new(leaves)?.is_dissection(mask) {
            return Err(TreeError::InvalidDissection);
        }
        Ok(PlanarTree { leaves, mask })
    }

    pub fn corolla(leaves: usize) -> Result<Self, TreeError> {
        Self::from_mask(leaves, 0)
    }

    pub fn leaves(&self) -> usize {
        self.leaves
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn internal_edges(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// `k` for a `k`-face of `K^n`.
    pub fn dimension(&self) -> usize {
        self.leaves - 3 - self.internal_edges()
    }

    fn polygon(&self) -> Polygon {
        Polygon::new(self.leaves).expect("validated")
    }

    pub fn diagonals(&self) -> Vec<(usize, usize)> {
        let p = self.polygon();
        bits(self.mask).map(|d| (p.diagonals[d].0 as usize, p.diagonals[d].1 as usize)).collect()
    }

    /// Region sets of the internal vertices.
    pub fn cells(&self) -> Vec<u32> {
        self.polygon().cells(self.mask)
    }

    pub fn ribbon(&self) -> RibbonGraph {
        self.polygon().ribbon(self.mask)
    }

    /// Regions touching internal vertex `v` (in the order of [`cells`](Self::cells)),
    /// increasing, which is their counterclockwise order.
    pub fn regions_touching(&self, v: usize) -> Vec<usize> {
        bits(self.cells()[v] as u64).collect()
    }

    pub fn to_literal(&self) -> GraphLiteral {
        GraphLiteral::from_tree(&self.ribbon(), self.leaves as u32)
    }

    /// Reads a tree literal. Internal labels are arbitrary; the leaves must occur
    /// in counterclockwise order.
    pub fn from_literal(lit: &GraphLiteral) -> Result<Self, TreeError> {
        let k = lit.leaves.ok_or(TreeError::NotPlanarTree)? as usize;
        let g = lit.to_graph()?;
        let poly = Polygon::new(k)?;
        if g.num_vertices() != g.num_edges() + 1 {
            return Err(TreeError::NotPlanarTree);
        }
        let mut mask = 0u64;
        for (_, b) in g.edges() {
            // leaves beyond the edge, on the side of `b`
            let start = g.vertex_of(b);
            let mut comp = vec![start];
            let mut stack = vec![start];
            let mut side = Vec::new();
            while let Some(v) = stack.pop() {
                for &x in &g.vertices()[v] {
                    match g.partner(x) {
                        None => side.push(x as usize),
                        Some(_) if x == b => {}
                        Some(p) => {
                            let w = g.vertex_of(p);
                            if !comp.contains(&w) {
                                comp.push(w);
                                stack.push(w);
                            }
                        }
                    }
                }
            }
            let arc: Vec<usize> = if side.contains(&0) {
                (0..k).filter(|x| !side.contains(x)).collect()
            } else {
                let mut s = side;
                s.sort_unstable();
                s
            };
            if arc.len() < 2 || arc.len() > k - 2 || !arc.windows(2).all(|w| w[1] == w[0] + 1) {
                return Err(TreeError::NotPlanarTree);
            }
            // leaves i+1..=j are the sides cut off by diagonal {i, j}
            let d = poly.diagonal_index(arc[0] - 1, *arc.last().unwrap()).ok_or(TreeError::NotPlanarTree)?;
            mask |= 1 << d;
        }
        let t = PlanarTree::from_mask(k, mask)?;
        let ours = crate::ribbon::canonical_form_rooted(&t.ribbon(), 0);
        let theirs = crate::ribbon::canonical_form_rooted(&g, 0);
        let leaf_images = |m: &BTreeMap<HalfEdge, HalfEdge>| (0..k as u32).map(|j| m[&j]).collect::<Vec<_>>();
        if ours.graph != theirs.graph || leaf_images(&ours.map) != leaf_images(&theirs.map) {
            return Err(TreeError::NotPlanarTree);
        }
        Ok(t)
    }
}

/// One edge collapse in the face lattice.
#[derive(Debug, Clone)]
pub struct Step {
    pub diagonal: u8,
    pub target: u32,
    /// Sign of the induced orientation against the target's reference orientation.
    pub sign: Sign,
    /// Source cell index to target cell index.
    pub cell_map: Vec<u8>,
}

#[derive(Debug, Clone)]
pub struct Face {
    pub mask: u64,
    pub cells: Vec<u32>,
    pub steps: Vec<Step>,
}

/// All faces of `K^n` with their collapse steps.
///
/// Every face carries its reference orientation; for odd-valent trees this is
/// the natural one and for the corolla it lists the leaves from leaf 0.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    polygon: Polygon,
    faces: Vec<Face>,
    index: HashMap<u64, u32>,
}

impl FaceLattice {
    pub fn new(n: usize) -> Result<Self, TreeError> {
        let polygon = Polygon::new(n + 3)?;
        let mut masks = polygon.all_dissections();
        masks.sort_unstable_by_key(|m| (m.count_ones(), *m));
        let index: HashMap<u64, u32> = masks.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        let cells: Vec<Vec<u32>> = masks.iter().map(|m| polygon.cells(*m)).collect();
        let mut faces = Vec::with_capacity(masks.len());
        for (fi, &mask) in masks.iter().enumerate() {
            let oriented = OrientedRibbonGraph::reference(polygon.ribbon(mask));
            let mut steps = Vec::new();
            for d in bits(mask) {
                let target = index[&(mask & !(1 << d))];
                let collapsed = oriented.collapse_edge(polygon.inner_label(d)).expect("tree edge");
                debug_assert_eq!(collapsed.graph, polygon.ribbon(mask & !(1 << d)));
                let tcells = &cells[target as usize];
                let cell_map =
                    cells[fi].iter().map(|c| tcells.iter().position(|t| t & c == *c).unwrap() as u8).collect();
                steps.push(Step { diagonal: d as u8, target, sign: collapsed.sign, cell_map });
            }
            faces.push(Face { mask, cells: cells[fi].clone(), steps });
        }
        Ok(FaceLattice { polygon, faces, index })
    }

    /// The `n` of `K^n`.
    pub fn dimension(&self) -> usize {
        self.polygon.size - 3
    }

    pub fn polygon(&self) -> &Polygon {
        &self.polygon
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: u32) -> &Face {
        &self.faces[id as usize]
    }

    pub fn face_id(&self, mask: u64) -> Option<u32> {
        self.index.get(&mask).copied()
    }

    pub fn tree(&self, id: u32) -> PlanarTree {
        PlanarTree { leaves: self.polygon.size, mask: self.faces[id as usize].mask }
    }

    pub fn corolla(&self) -> u32 {
        self.index[&0]
    }

    /// `k`-faces, i.e. trees with `n-k` internal edges.
    pub fn faces_of_dimension(&self, k: usize) -> Vec<u32> {
        let n = self.dimension();
        (0..self.faces.len() as u32)
            .filter(|i| k <= n && self.faces[*i as usize].mask.count_ones() as usize == n - k)
            .collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dimension()).map(|k| self.faces_of_dimension(k).len()).collect()
    }

    pub fn step(&self, from: u32, diagonal: usize) -> Option<&Step> {
        self.faces[from as usize].steps.iter().find(|s| s.diagonal as usize == diagonal)
    }

    /// Calls `f(faces, sign)` for every maximal chain from a trivalent tree to the corolla.
    pub fn for_each_chain(&self, mut f: impl FnMut(&[u32], Sign)) {
        let mut path = Vec::with_capacity(self.dimension() + 1);
        for t in self.faces_of_dimension(0) {
            path.push(t);
            self.walk(&mut path, Sign::Plus, &mut f);
            path.pop();
        }
    }

    /// Chains from trivalent trees up to the face `top`, signed by the step product.
    pub fn chains_to(&self, top: u32, mut f: impl FnMut(&[u32], Sign)) {
        let mut path = Vec::new();
        for t in self.faces_of_dimension(0) {
            path.push(t);
            self.walk_to(top, &mut path, Sign::Plus, &mut f);
            path.pop();
        }
    }

    fn walk(&self, path: &mut Vec<u32>, sign: Sign, f: &mut impl FnMut(&[u32], Sign)) {
        let cur = *path.last().unwrap();
        let face = &self.faces[cur as usize];
        if face.steps.is_empty() {
            f(path, sign);
            return;
        }
        for s in &face.steps {
            path.push(s.target);
            self.walk(path, sign * s.sign, f);
            path.pop();
        }
    }

    fn walk_to(&self, top: u32, path: &mut Vec<u32>, sign: Sign, f: &mut impl FnMut(&[u32], Sign)) {
        let cur = *path.last().unwrap();
        if cur == top {
            f(path, sign);
            return;
        }
        let top_mask = self.faces[top as usize].mask;
        for s in &self.faces[cur as usize].steps {
            if self.faces[s.target as usize].mask & top_mask == top_mask {
                path.push(s.target);
                self.walk_to(top, path, sign * s.sign, f);
                path.pop();
            }
        }
    }

    pub fn maximal_chains(&self) -> Vec<TreeChain> {
        let mut out = Vec::new();
        self.for_each_chain(|faces, sign| {
            let collapsed = faces
                .windows(2)
                .map(|w| {
                    let d = (self.faces[w[0] as usize].mask & !self.faces[w[1] as usize].mask).trailing_zeros();
                    let (i, j) = self.polygon.diagonals[d as usize];
                    (i as usize, j as usize)
                })
                .collect();
            out.push(TreeChain { trees: faces.iter().map(|f| self.tree(*f)).collect(), collapsed, sign });
        });
        out
    }

    /// Chain sign recomputed by collapsing the actual ribbon structures from the
    /// natural orientation of the first tree, compared with the last tree's reference.
    pub fn chain_sign_direct(&self, faces: &[u32]) -> Sign {
        let mut cur = OrientedRibbonGraph::reference(self.polygon.ribbon(self.faces[faces[0] as usize].mask));
        for w in faces.windows(2) {
            let d = (self.faces[w[0] as usize].mask & !self.faces[w[1] as usize].mask).trailing_zeros() as usize;
            cur = cur.collapse_edge(self.polygon.inner_label(d)).expect("tree edge");
        }
        cur.sign
    }
}

/// `T_0 -> … -> T_m` with the diagonal collapsed at each step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeChain {
    pub trees: Vec<PlanarTree>,
    pub collapsed: Vec<(usize, usize)>,
    pub sign: Sign,
}

pub fn catalan(n: usize) -> u64 {
    (0..n).fold(1u64, |c, i| c * 2 * (2 * i as u64 + 1) / (i as u64 + 2))
}

/// All trivalent planar trees with `leaf_count` leaves.
pub fn enumerate_trivalent_trees(leaf_count: usize) -> Result<Vec<PlanarTree>, TreeError> {
    enumerate_faces(leaf_count.checked_sub(3).ok_or(TreeError::LeafCount(leaf_count))?, 0)
}

/// The `k`-faces of `K^n`.
pub fn enumerate_faces(n: usize, k: usize) -> Result<Vec<PlanarTree>, TreeError> {
    let poly = Polygon::new(n + 3)?;
    let mut masks: Vec<u64> =
        poly.all_dissections().into_iter().filter(|m| k <= n && m.count_ones() as usize == n - k).collect();
    masks.sort_unstable();
    Ok(masks.into_iter().map(|mask| PlanarTree { leaves: n + 3, mask }).collect())
}

/// Outcome of comparing a chain sign with the region rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionSignCase {
    pub tree: PlanarTree,
    pub order: Vec<(usize, usize)>,
    pub chain_sign: Sign,
    pub rule_sign: Sign,
}

/// Compares `o(T_*)` with `(-1)^k sgn(a_1..a_p, b_1..b_2k)` for the chain that
/// collapses the diagonals of `start` in the given order.
///
/// `start` must have one odd-valent vertex of valence at least 5, all others
/// trivalent, and an even number `2k` of internal edges.
pub fn region_sign(lattice: &FaceLattice, start: u32, order: &[usize]) -> Result<RegionSignCase, TreeError> {
    let face = lattice.face(start);
    let big: Vec<usize> = (0..face.cells.len()).filter(|c| face.cells[*c].count_ones() != 3).collect();
    let edges = face.mask.count_ones() as usize;
    if big.len() != 1 || edges % 2 == 1 || face.cells[big[0]].count_ones().is_multiple_of(2) {
        return Err(TreeError::ConfigurationMismatch(
            "need one odd non-trivalent vertex and an even number of edges".into(),
        ));
    }
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != bits(face.mask).collect::<Vec<_>>() {
        return Err(TreeError::ConfigurationMismatch("order must list every internal edge once".into()));
    }
    let seed = big[0];
    // distances in the tree of cells
    let cells = &face.cells;
    let adjacent = |a: usize, b: usize| a != b && (cells[a] & cells[b]).count_ones() == 2;
    let mut dist = vec![usize::MAX; cells.len()];
    dist[seed] = 0;
    let mut queue = std::collections::VecDeque::from([seed]);
    while let Some(a) = queue.pop_front() {
        for b in 0..cells.len() {
            if adjacent(a, b) && dist[b] == usize::MAX {
                dist[b] = dist[a] + 1;
                queue.push_back(b);
            }
        }
    }
    let poly = lattice.polygon();
    let mut tuple: Vec<usize> = bits(cells[seed] as u64).collect();
    for &d in order {
        let (i, j) = poly.diagonals()[d];
        let ends = (1u32 << i) | (1u32 << j);
        let far = (0..cells.len()).filter(|c| cells[*c] & ends == ends).max_by_key(|c| dist[*c]).unwrap();
        let b = cells[far] & !ends;
        tuple.push(b.trailing_zeros() as usize);
    }
    let rule_sign = Sign::pow_minus_one(edges / 2) * inversion_parity(&tuple);
    let mut cur = start;
    let mut chain_sign = Sign::Plus;
    for &d in order {
        let s = lattice.step(cur, d).expect("diagonal present");
        chain_sign *= s.sign;
        cur = s.target;
    }
    Ok(RegionSignCase {
        tree: lattice.tree(start),
        order: order.iter().map(|d| (poly.diagonals()[*d].0 as usize, poly.diagonals()[*d].1 as usize)).collect(),
        chain_sign,
        rule_sign,
    })
}

/// Every seed with one vertex of valence `p` and `2k` trivalent neighbours, in every edge order.
pub fn region_sign_cases(p: usize, k: usize) -> Result<Vec<RegionSignCase>, TreeError> {
    let lattice = FaceLattice::new(p + 2 * k - 3)?;
    let mut out = Vec::new();
    for id in lattice.faces_of_dimension(p - 3) {
        let face = lattice.face(id);
        let mut sizes: Vec<u32> = face.cells.iter().map(|c| c.count_ones()).collect();
        sizes.sort_unstable();
        if sizes.iter().filter(|s| **s == 3).count() != 2 * k || *sizes.last().unwrap() as usize != p {
            continue;
        }
        let diags: Vec<usize> = bits(face.mask).collect();
        for order in permutations(&diags) {
            out.push(region_sign(&lattice, id, &order)?);
        }
    }
    Ok(out)
}

fn permutations(xs: &[usize]) -> Vec<Vec<usize>> {
    if xs.len() <= 1 {
        return vec![xs.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Signed simplices `Σ o(T_*) T_*` of the dual cell of the corolla, and the
/// simplicial boundary check `dD(T) = (-1)^n Σ D(T')` over faces `T'` with one edge.
pub fn dual_cell_boundary_holds(lattice: &FaceLattice) -> bool {
    let n = lattice.dimension();
    let mut lhs: HashMap<Vec<u32>, i64> = HashMap::new();
    lattice.for_each_chain(|faces, sign| {
        for skip in 0..faces.len() {
            let mut f = faces.to_vec();
            f.remove(skip);
            let s = if skip % 2 == 0 { 1 } else { -1 };
            *lhs.entry(f).or_default() += s * sign.to_i64();
        }
    });
    let mut rhs: HashMap<Vec<u32>, i64> = HashMap::new();
    let top = lattice.corolla();
    let sn = if n.is_multiple_of(2) { 1 } else { -1 };
    if n == 0 {
        lhs.retain(|_, v| *v != 0);
        return lhs.is_empty();
    }
    for t in lattice.faces_of_dimension(n - 1) {
        let to_top = lattice.face(t).steps.iter().find(|s| s.target == top).expect("one edge").sign;
        lattice.chains_to(t, |faces, sign| {
            *rhs.entry(faces.to_vec()).or_default() += sn * (sign * to_top).to_i64();
        });
    }
    lhs.retain(|_, v| *v != 0);
    rhs.retain(|_, v| *v != 0);
    lhs == rhs
}

/// Swapping two consecutive collapses in a chain must flip its sign. Returns the
/// number of squares `T -> T_1 -> T_12`, `T -> T_2 -> T_12` checked and whether all flip.
pub fn transposed_collapses_flip_sign(lattice: &FaceLattice) -> (usize, bool) {
    let mut checked = 0;
    let mut ok = true;
    for (id, face) in lattice.faces().iter().enumerate() {
        let diags: Vec<usize> = bits(face.mask).collect();
        for (x, &a) in diags.iter().enumerate() {
            for &b in &diags[x + 1..] {
                let path = |first: usize, second: usize| {
                    let s1 = lattice.step(id as u32, first).expect("diagonal present");
                    let s2 = lattice.step(s1.target, second).expect("diagonal present");
                    (s2.target, s1.sign * s2.sign)
                };
                let (t1, p) = path(a, b);
                let (t2, r) = path(b, a);
                checked += 1;
                ok &= t1 == t2 && p == -r;
            }
        }
    }
    (checked, ok)
}

/// Cellular boundary `d[T] = Σ σ(T'→T)[T']` over one-edge expansions `T'` of `T`.
pub fn cellular_boundary(lattice: &FaceLattice) -> Vec<Vec<(u32, i64)>> {
    let mut d = vec![Vec::new(); lattice.faces().len()];
    for (src, face) in lattice.faces().iter().enumerate() {
        for s in &face.steps {
            d[s.target as usize].push((src as u32, s.sign.to_i64()));
        }
    }
    d
}

//! Exact-rational weighted multigraph foundation.
//!
//! Cuts, partitions, spanning-tree utilities, parity tools, the minimum
//! odd-cut oracle and brute-force spanning-tree enumeration. Everything here
//! is a pure function over immutable values.

use crate::error::Error;
use crate::rat::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// Connected multigraph with dense edge ids `0..m-1`. Parallel edges are
/// permitted, self-loops are not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, Error> {
        if vertex_count == 0 {
            return Err(Error::invalid("graph needs at least one vertex"));
        }
        for (id, &(u, v)) in edges.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::invalid(format!(
                    "edge {id} endpoint out of range ({u}, {v})"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("edge {id} is a self-loop at {u}")));
            }
        }
        let g = Graph {
            vertex_count,
            edges,
        };
        if !g.spans_and_connects(0..g.edge_count()) {
            return Err(Error::invalid("graph is not connected"));
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, (usize, usize))> + '_ {
        self.edges.iter().copied().enumerate()
    }

    /// True iff the given edges connect all `vertex_count` vertices.
    pub fn spans_and_connects(&self, edge_ids: impl IntoIterator<Item = usize>) -> bool {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in edge_ids {
            let (u, v) = self.edges[e];
            uf.union(u, v);
        }
        uf.components() == 1
    }
}

/// Weighted instance: a connected graph, an even terminal set and
/// nonnegative exact edge lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    terminals: BTreeSet<usize>,
    lengths: EdgeVector,
}

impl Instance {
    pub fn new(
        graph: Graph,
        terminals: BTreeSet<usize>,
        lengths: Vec<Rat>,
    ) -> Result<Self, Error> {
        if !terminals.len().is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "terminal set must have even size, got {}",
                terminals.len()
            )));
        }
        if let Some(&t) = terminals.iter().next_back() {
            if t >= graph.vertex_count() {
                return Err(Error::invalid(format!("terminal {t} out of range")));
            }
        }
        if lengths.len() != graph.edge_count() {
            return Err(Error::invalid(format!(
                "expected {} edge lengths, got {}",
                graph.edge_count(),
                lengths.len()
            )));
        }
        if let Some(e) = lengths.iter().position(|w| w.is_negative()) {
            return Err(Error::invalid(format!("edge {e} has negative length")));
        }
        Ok(Instance {
            graph,
            terminals,
            lengths: EdgeVector::from_values(lengths),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn terminals(&self) -> &BTreeSet<usize> {
        &self.terminals
    }

    pub fn lengths(&self) -> &EdgeVector {
        &self.lengths
    }

    pub fn length(&self, e: usize) -> &Rat {
        &self.lengths[e]
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Total length of an edge set (multiplicity 1 each).
    pub fn set_length<'a>(&self, edges: impl IntoIterator<Item = &'a usize>) -> Rat {
        edges.into_iter().map(|&e| &self.lengths[e]).sum()
    }

    /// Total length of a multiset.
    pub fn multiset_length(&self, m: &EdgeMultiset) -> Rat {
        let mut total = Rat::zero();
        for (e, mult) in m.iter() {
            for _ in 0..mult {
                total += &self.lengths[e];
            }
        }
        total
    }
}

/// Vector in Q^E, indexed by edge id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeVector {
    values: Vec<Rat>,
}

impl EdgeVector {
    pub fn zeros(m: usize) -> Self {
        EdgeVector {
            values: vec![Rat::zero(); m],
        }
    }

    pub fn from_values(values: Vec<Rat>) -> Self {
        EdgeVector { values }
    }

    /// Indicator vector of an edge set.
    pub fn indicator<'a>(m: usize, edges: impl IntoIterator<Item = &'a usize>) -> Self {
        let mut v = EdgeVector::zeros(m);
        for &e in edges {
            v.values[e] = Rat::one();
        }
        v
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn set(&mut self, e: usize, v: Rat) {
        self.values[e] = v;
    }

    pub fn add_at(&mut self, e: usize, v: &Rat) {
        self.values[e] += v;
    }

    pub fn sum_over<'a>(&self, edges: impl IntoIterator<Item = &'a usize>) -> Rat {
        edges.into_iter().map(|&e| &self.values[e]).sum()
    }

    pub fn total(&self) -> Rat {
        self.values.iter().sum()
    }

    pub fn dot(&self, other: &EdgeVector) -> Rat {
        assert_eq!(self.len(), other.len());
        self.values
            .iter()
            .zip(&other.values)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn add(&self, other: &EdgeVector) -> EdgeVector {
        assert_eq!(self.len(), other.len());
        EdgeVector {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> EdgeVector {
        EdgeVector {
            values: self.values.iter().map(|v| v * k).collect(),
        }
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &EdgeVector) -> bool {
        assert_eq!(self.len(), other.len());
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| !self.values[e].is_zero()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.values.iter().enumerate()
    }
}

impl std::ops::Index<usize> for EdgeVector {
    type Output = Rat;
    fn index(&self, e: usize) -> &Rat {
        &self.values[e]
    }
}

/// Edge multiset with multiplicities in {0, 1, 2} (the doubled-graph
/// convention: no tour ever needs an edge more than twice).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeMultiset {
    mult: Vec<u8>,
}

impl EdgeMultiset {
    pub fn zeros(m: usize) -> Self {
        EdgeMultiset { mult: vec![0; m] }
    }

    pub fn from_multiplicities(mult: Vec<u8>) -> Result<Self, Error> {
        if let Some(e) = mult.iter().position(|&x| x > 2) {
            return Err(Error::invalid(format!("edge {e} has multiplicity > 2")));
        }
        Ok(EdgeMultiset { mult })
    }

    /// Sum of two edge sets; errors if any multiplicity would exceed 2.
    pub fn from_sets<'a>(
        m: usize,
        a: impl IntoIterator<Item = &'a usize>,
        b: impl IntoIterator<Item = &'a usize>,
    ) -> Result<Self, Error> {
        let mut mult = vec![0u8; m];
        for &e in a {
            mult[e] += 1;
        }
        for &e in b {
            mult[e] += 1;
        }
        EdgeMultiset::from_multiplicities(mult)
    }

    pub fn len(&self) -> usize {
        self.mult.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn get(&self, e: usize) -> u8 {
        self.mult[e]
    }

    pub fn multiplicities(&self) -> &[u8] {
        &self.mult
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.mult.iter().copied().enumerate()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.mult.len()).filter(|&e| self.mult[e] > 0).collect()
    }

    /// Number of edges counted with multiplicity.
    pub fn size(&self) -> usize {
        self.mult.iter().map(|&x| x as usize).sum()
    }

    pub fn to_edge_vector(&self) -> EdgeVector {
        EdgeVector::from_values(self.mult.iter().map(|&x| Rat::from_int(x as i64)).collect())
    }
}

/// A cut of a connected graph. `side` is the canonical defining vertex set:
/// the side not containing vertex 0. Two cuts are equal iff their edge sets
/// are equal, so a cut and its complementary side deduplicate.
#[derive(Clone, Debug)]
pub struct Cut {
    side: Vec<usize>,
    edges: Vec<usize>,
}

impl Cut {
    pub fn side(&self) -> &[usize] {
        &self.side
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// |side ∩ t| parity test: true iff the cut separates `t` oddly.
    pub fn is_odd_for(&self, t: &BTreeSet<usize>) -> bool {
        self.side.iter().filter(|v| t.contains(v)).count() % 2 == 1
    }
}

impl PartialEq for Cut {
    fn eq(&self, other: &Self) -> bool {
        self.edges == other.edges
    }
}

impl Eq for Cut {}

impl PartialOrd for Cut {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cut {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.edges.cmp(&other.edges)
    }
}

impl std::hash::Hash for Cut {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.edges.hash(state);
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cut{{")?;
        for (i, v) in self.side.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Partition of the vertex set into nonempty classes. Canonical form:
/// each class sorted, classes ordered by their minimum element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    classes: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(classes: Vec<Vec<usize>>, vertex_count: usize) -> Result<Self, Error> {
        let mut seen = vec![false; vertex_count];
        let mut covered = 0usize;
        for class in &classes {
            if class.is_empty() {
                return Err(Error::invalid("partition has an empty class"));
            }
            for &v in class {
                if v >= vertex_count {
                    return Err(Error::invalid(format!("partition vertex {v} out of range")));
                }
                if seen[v] {
                    return Err(Error::invalid(format!("vertex {v} in two classes")));
                }
                seen[v] = true;
                covered += 1;
            }
        }
        if covered != vertex_count {
            return Err(Error::invalid("partition does not cover every vertex"));
        }
        let mut classes: Vec<Vec<usize>> = classes
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        classes.sort_by_key(|c| c[0]);
        Ok(Partition { classes })
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// class id per vertex.
    pub fn labels(&self, vertex_count: usize) -> Vec<usize> {
        let mut lab = vec![0usize; vertex_count];
        for (i, class) in self.classes.iter().enumerate() {
            for &v in class {
                lab[v] = i;
            }
        }
        lab
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, class) in self.classes.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            for (j, v) in class.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// δ(w): the set of edges with exactly one endpoint in `w`, with canonical
/// side. Errors unless ∅ ≠ w ⊂ V.
pub fn cut_edges(g: &Graph, w: &BTreeSet<usize>) -> Result<Cut, Error> {
    let n = g.vertex_count();
    if w.is_empty() || w.len() >= n {
        return Err(Error::invalid(
            "cut side must be a nonempty proper vertex subset",
        ));
    }
    if let Some(&v) = w.iter().next_back() {
        if v >= n {
            return Err(Error::invalid(format!("cut vertex {v} out of range")));
        }
    }
    let mut inside = vec![false; n];
    for &v in w {
        inside[v] = true;
    }
    let side: Vec<usize> = if inside[0] {
        (0..n).filter(|&v| !inside[v]).collect()
    } else {
        w.iter().copied().collect()
    };
    let canonical: Vec<bool> = {
        let mut c = vec![false; n];
        for &v in &side {
            c[v] = true;
        }
        c
    };
    let edges: Vec<usize> = g
        .edges()
        .filter(|&(_, (u, v))| canonical[u] != canonical[v])
        .map(|(e, _)| e)
        .collect();
    Ok(Cut { side, edges })
}

/// Edges whose endpoints lie in different classes of `p` (each edge once).
pub fn partition_cross_edges(g: &Graph, p: &Partition) -> Result<Vec<usize>, Error> {
    let n = g.vertex_count();
    let covered: usize = p.classes().iter().map(|c| c.len()).sum();
    if covered != n || p.classes().iter().flatten().any(|&v| v >= n) {
        return Err(Error::invalid("partition does not match the graph"));
    }
    let labels = p.labels(n);
    Ok(g
        .edges()
        .filter(|&(_, (u, v))| labels[u] != labels[v])
        .map(|(e, _)| e)
        .collect())
}

/// True iff `f` has n-1 edges and connects all vertices.
pub fn is_spanning_tree(g: &Graph, f: &BTreeSet<usize>) -> bool {
    f.len() + 1 == g.vertex_count() && g.spans_and_connects(f.iter().copied())
}

/// The set of vertices incident to an odd number of edges of `f`.
pub fn odd_degree_vertices(g: &Graph, f: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut parity = vec![false; g.vertex_count()];
    for &e in f {
        let (u, v) = g.endpoints(e);
        parity[u] = !parity[u];
        parity[v] = !parity[v];
    }
    (0..g.vertex_count()).filter(|&v| parity[v]).collect()
}

/// Odd-degree set of a multiset of edges.
pub fn odd_degree_vertices_multi(g: &Graph, m: &EdgeMultiset) -> BTreeSet<usize> {
    let mut parity = vec![false; g.vertex_count()];
    for (e, mult) in m.iter() {
        if mult % 2 == 1 {
            let (u, v) = g.endpoints(e);
            parity[u] = !parity[u];
            parity[v] = !parity[v];
        }
    }
    (0..g.vertex_count()).filter(|&v| parity[v]).collect()
}

/// The unique subset of the spanning tree `f` whose odd-degree set is
/// exactly `t`, found by leaf-to-root parity propagation.
pub fn tree_join(
    g: &Graph,
    f: &BTreeSet<usize>,
    t: &BTreeSet<usize>,
) -> Result<BTreeSet<usize>, Error> {
    if !t.len().is_multiple_of(2) {
        return Err(Error::invalid("odd parity set has no join in a tree"));
    }
    if !is_spanning_tree(g, f) {
        return Err(Error::invalid("edge set is not a spanning tree"));
    }
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &e in f {
        let (u, v) = g.endpoints(e);
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    // BFS order from the root, then resolve parity needs leaves-first.
    let root = 0usize;
    let mut order = Vec::with_capacity(n);
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut visited = vec![false; n];
    visited[root] = true;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &(v, e) in &adj[u] {
            if !visited[v] {
                visited[v] = true;
                parent[v] = Some((u, e));
                order.push(v);
            }
        }
    }
    let mut need: Vec<bool> = (0..n).map(|v| t.contains(&v)).collect();
    let mut join = BTreeSet::new();
    for &v in order.iter().rev() {
        if v == root {
            continue;
        }
        if need[v] {
            let (p, e) = parent[v].expect("non-root vertex has a parent in a spanning tree");
            join.insert(e);
            need[v] = false;
            need[p] = !need[p];
        }
    }
    debug_assert!(!need[root], "even parity set must resolve at the root");
    Ok(join)
}

/// Cut induced by the two components of `f \ {e}` for a tree edge `e`.
pub fn fundamental_cut(g: &Graph, f: &BTreeSet<usize>, e: usize) -> Result<Cut, Error> {
    if !f.contains(&e) {
        return Err(Error::invalid(format!("edge {e} is not in the tree")));
    }
    if !is_spanning_tree(g, f) {
        return Err(Error::invalid("edge set is not a spanning tree"));
    }
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for &t in f {
        if t != e {
            let (u, v) = g.endpoints(t);
            uf.union(u, v);
        }
    }
    let (a, _) = g.endpoints(e);
    let root_a = uf.find(a);
    let comp: BTreeSet<usize> = (0..n).filter(|&v| uf.find(v) == root_a).collect();
    cut_edges(g, &comp)
}

/// True iff the multiset is a `T`-tour of the instance: its odd-degree set
/// equals `T` and its support connects and spans all vertices.
pub fn validate_ttour(inst: &Instance, m: &EdgeMultiset) -> bool {
    if m.len() != inst.edge_count() {
        return false;
    }
    if &odd_degree_vertices_multi(inst.graph(), m) != inst.terminals() {
        return false;
    }
    inst.graph().spans_and_connects(m.support())
}

/// Scaled integer view of an edge vector: `values[e] / scale` equals the
/// original rational. Keeps enumeration loops on integer arithmetic.
pub(crate) struct ScaledWeights {
    pub scale: BigInt,
    pub values: Vec<BigInt>,
}

impl ScaledWeights {
    pub fn from_vector(w: &EdgeVector) -> Self {
        let mut scale = BigInt::one();
        for v in w.values() {
            scale = scale.lcm(v.denom());
        }
        let values = w
            .values()
            .iter()
            .map(|v| v.numer() * (&scale / v.denom()))
            .collect();
        ScaledWeights { scale, values }
    }

    pub fn to_rat(&self, scaled: &BigInt) -> Rat {
        Rat::from_big(scaled.clone(), self.scale.clone())
    }

    /// Scaled value of the cut a side mask defines: sum of `values[e]` over
    /// edges with exactly one endpoint inside the mask.
    pub fn crossing_sum(&self, g: &Graph, side_mask: u64) -> BigInt {
        let mut sum = BigInt::zero();
        for (e, (u, v)) in g.edges() {
            if ((side_mask >> u) ^ (side_mask >> v)) & 1 == 1 && !self.values[e].is_zero() {
                sum += &self.values[e];
            }
        }
        sum
    }
}

/// Minimum-weight `t`-odd cut by enumerating the 2^(n-1) canonical sides.
/// Ties broken by the lexicographically smallest canonical side.
pub fn min_odd_cut(
    g: &Graph,
    t: &BTreeSet<usize>,
    w: &EdgeVector,
    cap: usize,
) -> Result<(Cut, Rat), Error> {
    if t.is_empty() {
        return Err(Error::invalid("no odd cuts exist for an empty terminal set"));
    }
    if !t.len().is_multiple_of(2) {
        return Err(Error::invalid("terminal set must have even size"));
    }
    if !w.is_nonnegative() {
        return Err(Error::invalid("cut weights must be nonnegative"));
    }
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::Capacity {
            what: "cut-side enumeration (vertices)",
            limit: cap,
            actual: n,
        });
    }
    let t_mask: u64 = t.iter().fold(0u64, |acc, &v| acc | (1u64 << v));
    let scaled = ScaledWeights::from_vector(w);
    let mut best: Option<(BigInt, u64)> = None;
    for bits in 1u64..(1u64 << (n - 1)) {
        let side_mask = bits << 1;
        if (side_mask & t_mask).count_ones().is_multiple_of(2) {
            continue;
        }
        let value = scaled.crossing_sum(g, side_mask);
        let better = match &best {
            None => true,
            Some((bv, bm)) => {
                value < *bv || (value == *bv && side_lex_less(side_mask, *bm, n))
            }
        };
        if better {
            best = Some((value, side_mask));
        }
    }
    let (value, mask) = best.expect("even nonempty t admits an odd side");
    let side: BTreeSet<usize> = (0..n).filter(|&v| (mask >> v) & 1 == 1).collect();
    let cut = cut_edges(g, &side)?;
    Ok((cut, scaled.to_rat(&value)))
}

/// Lexicographic order on canonical sides viewed as sorted vertex lists.
pub(crate) fn side_lex_less(a: u64, b: u64, n: usize) -> bool {
    let to_vec = |mask: u64| -> Vec<usize> { (0..n).filter(|&v| (mask >> v) & 1 == 1).collect() };
    to_vec(a) < to_vec(b)
}

/// All spanning trees in deterministic (lexicographic edge-id) order.
pub fn enumerate_spanning_trees(g: &Graph, cap: usize) -> Result<Vec<BTreeSet<usize>>, Error> {
    let m = g.edge_count();
    if m > cap {
        return Err(Error::Capacity {
            what: "spanning-tree enumeration (edges)",
            limit: cap,
            actual: m,
        });
    }
    let n = g.vertex_count();
    let k = n - 1;
    let mut trees = Vec::new();
    if k == 0 {
        trees.push(BTreeSet::new());
        return Ok(trees);
    }
    if k > m {
        return Ok(trees);
    }
    // lexicographic k-combinations of edge ids
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        let mut uf = UnionFind::new(n);
        let mut acyclic = true;
        for &e in &combo {
            let (u, v) = g.endpoints(e);
            if !uf.union(u, v) {
                acyclic = false;
                break;
            }
        }
        if acyclic && uf.components() == 1 {
            trees.push(combo.iter().copied().collect());
        }
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(trees);
            }
            i -= 1;
            if combo[i] != i + m - k {
                break;
            }
        }
        combo[i] += 1;
        for j in i + 1..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

/// Minimum spanning tree under the given edge weights, restricted to the
/// edges accepted by `allowed`. Kruskal with ties broken by edge id.
/// `None` when the allowed edges do not connect the graph.
pub fn min_spanning_tree(
    g: &Graph,
    weights: &EdgeVector,
    allowed: impl Fn(usize) -> bool,
) -> Option<BTreeSet<usize>> {
    let mut order: Vec<usize> = (0..g.edge_count()).filter(|&e| allowed(e)).collect();
    order.sort_by(|&a, &b| weights[a].cmp(&weights[b]).then(a.cmp(&b)));
    let mut uf = UnionFind::new(g.vertex_count());
    let mut tree = BTreeSet::new();
    for e in order {
        let (u, v) = g.endpoints(e);
        if uf.union(u, v) {
            tree.insert(e);
        }
    }
    if uf.components() == 1 {
        Some(tree)
    } else {
        None
    }
}

/// Plain union-find.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            components: n,
        }
    }

    pub fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Returns false when u and v were already connected.
    pub fn union(&mut self, u: usize, v: usize) -> bool {
        let (ru, rv) = (self.find(u), self.find(v));
        if ru == rv {
            return false;
        }
        self.parent[ru] = rv;
        self.components -= 1;
        true
    }

    pub fn components(&self) -> usize {
        self.components
    }
}

//! Exact embedding, automorphism and copy counts, Q-degrees, the weighted
//! derived s-graph `D(Q,H)`, and freeness/colorability predicates.
//!
//! All searches run over host graphs of at most 128 vertices, with vertex
//! sets packed into `u128` masks. Counts are `u128` and overflow is an error.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

const MAX_ORDER: usize = 128;

fn check_uniformity(q: &Hypergraph, h: &Hypergraph) -> Result<()> {
    if q.r() != h.r() {
        return Err(Error::UniformityMismatch {
            left: q.r(),
            right: h.r(),
        });
    }
    Ok(())
}

fn check_order(g: &Hypergraph) -> Result<()> {
    if g.n() > MAX_ORDER {
        return Err(Error::TooLarge(g.n()));
    }
    Ok(())
}

fn mask_of(vertices: &[u32]) -> u128 {
    vertices.iter().fold(0u128, |m, &v| m | (1u128 << v))
}

fn full_mask(n: usize) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Precomputed adjacency of the host graph.
struct Host {
    n: usize,
    r: usize,
    shadow: Vec<u128>,
    edges: Vec<u128>,
    degree: Vec<usize>,
}

impl Host {
    fn new(h: &Hypergraph) -> Host {
        let mut shadow = vec![0u128; h.n()];
        let mut edges = Vec::with_capacity(h.edge_count());
        for e in h.edges() {
            let m = mask_of(e);
            for &v in e {
                shadow[v as usize] |= m & !(1u128 << v);
            }
            edges.push(m);
        }
        edges.sort_unstable();
        Host {
            n: h.n(),
            r: h.r(),
            shadow,
            edges,
            degree: h.degrees(),
        }
    }

    fn has_edge(&self, mask: u128) -> bool {
        self.edges.binary_search(&mask).is_ok()
    }
}

/// Search order for the pattern graph and the edge checks due at each depth.
struct Plan {
    /// `order[depth]` is the pattern vertex placed at that depth.
    order: Vec<u32>,
    /// Earlier depths whose vertex shares an edge with this one.
    back: Vec<Vec<usize>>,
    /// Pattern edges completed at this depth, as depth indices.
    checks: Vec<Vec<Vec<usize>>>,
    degree: Vec<usize>,
}

impl Plan {
    /// Greedy connectivity-then-degree ordering.
    fn new(q: &Hypergraph) -> Plan {
        let n = q.n();
        let deg = q.degrees();
        let mut adj = vec![0u128; n];
        for e in q.edges() {
            let m = mask_of(e);
            for &v in e {
                adj[v as usize] |= m & !(1u128 << v);
            }
        }
        let mut placed = 0u128;
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .filter(|&v| placed & (1u128 << v) == 0)
                .max_by_key(|&v| ((adj[v] & placed).count_ones(), deg[v], core::cmp::Reverse(v)))
                .expect("unplaced vertex");
            placed |= 1u128 << next;
            order.push(next as u32);
        }
        let mut depth_of = vec![0usize; n];
        for (d, &v) in order.iter().enumerate() {
            depth_of[v as usize] = d;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(d, &v)| {
                (0..d)
                    .filter(|&e| adj[v as usize] & (1u128 << order[e]) != 0)
                    .collect()
            })
            .collect();
        let mut checks = vec![Vec::new(); n];
        for e in q.edges() {
            let depths: Vec<usize> = e.iter().map(|&v| depth_of[v as usize]).collect();
            let last = *depths.iter().max().expect("non-empty edge");
            checks[last].push(depths);
        }
        let degree = order.iter().map(|&v| deg[v as usize]).collect();
        Plan {
            order,
            back,
            checks,
            degree,
        }
    }
}

struct Search<'a, F> {
    host: &'a Host,
    plan: &'a Plan,
    injective: bool,
    image: Vec<u32>,
    visit: F,
}

impl<F: FnMut(&[u32]) -> ControlFlow<()>> Search<'_, F> {
    fn run(&mut self, depth: usize, used: u128) -> ControlFlow<()> {
        if depth == self.plan.order.len() {
            return (self.visit)(&self.image);
        }
        let mut cand = full_mask(self.host.n);
        for &b in &self.plan.back[depth] {
            cand &= self.host.shadow[self.image[b] as usize];
        }
        if self.injective {
            cand &= !used;
        }
        while cand != 0 {
            let c = cand.trailing_zeros();
            cand &= cand - 1;
            if self.injective && self.host.degree[c as usize] < self.plan.degree[depth] {
                continue;
            }
            self.image[depth] = c;
            // for r = 2 the shadow restriction already guarantees every edge
            if self.host.r > 2 && !self.edges_ok(depth) {
                continue;
            }
            self.run(depth + 1, used | (1u128 << c))?;
        }
        ControlFlow::Continue(())
    }

    fn edges_ok(&self, depth: usize) -> bool {
        self.plan.checks[depth].iter().all(|edge| {
            let m = edge
                .iter()
                .fold(0u128, |m, &d| m | (1u128 << self.image[d]));
            m.count_ones() as usize == self.host.r && self.host.has_edge(m)
        })
    }
}

/// Visits every injective homomorphism `V(Q) -> V(H)`. The callback receives
/// `image[v]` for each pattern vertex `v`; returning `Break` stops the search.
pub fn for_each_embedding<F>(q: &Hypergraph, h: &Hypergraph, mut visit: F) -> Result<()>
where
    F: FnMut(&[u32]) -> ControlFlow<()>,
{
    check_uniformity(q, h)?;
    check_order(q)?;
    check_order(h)?;
    if q.n() > h.n() {
        return Ok(());
    }
    search(q, h, true, &mut visit);
    Ok(())
}

fn search<F>(q: &Hypergraph, h: &Hypergraph, injective: bool, visit: &mut F)
where
    F: FnMut(&[u32]) -> ControlFlow<()>,
{
    let host = Host::new(h);
    let plan = Plan::new(q);
    let mut by_vertex = vec![0u32; q.n()];
    let order = plan.order.clone();
    let mut s = Search {
        host: &host,
        plan: &plan,
        injective,
        image: vec![0; q.n()],
        visit: |img: &[u32]| {
            for (d, &v) in order.iter().enumerate() {
                by_vertex[v as usize] = img[d];
            }
            visit(&by_vertex)
        },
    };
    let _ = s.run(0, 0);
}

/// Number of injective maps `phi` with `phi(e) in E(H)` for every `e in E(Q)`.
pub fn count_embeddings(q: &Hypergraph, h: &Hypergraph) -> Result<u128> {
    let mut count: u128 = 0;
    let mut overflow = false;
    for_each_embedding(q, h, |_| match count.checked_add(1) {
        Some(c) => {
            count = c;
            ControlFlow::Continue(())
        }
        None => {
            overflow = true;
            ControlFlow::Break(())
        }
    })?;
    if overflow {
        return Err(Error::Overflow);
    }
    Ok(count)
}

/// `|Aut(Q)|`: injective self-maps preserving the edge set.
pub fn aut_order(q: &Hypergraph) -> Result<u128> {
    count_embeddings(q, q)
}

/// `N(Q,H)`: copies of `Q` in `H` as (not necessarily induced) subgraphs.
pub fn count_copies(q: &Hypergraph, h: &Hypergraph) -> Result<u128> {
    let emb = count_embeddings(q, h)?;
    let aut = aut_order(q)?;
    debug_assert_eq!(emb % aut, 0);
    Ok(emb / aut)
}

/// Copies of `Q` spanning exactly the vertex set `subset`, i.e. `N(Q, H[I])`.
pub fn spanning_copies(q: &Hypergraph, h: &Hypergraph, subset: &[u32]) -> Result<u128> {
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != q.n() || subset.len() != q.n() {
        return Err(Error::Dimension {
            expected: q.n(),
            found: subset.len(),
        });
    }
    count_copies(q, &h.induced(&sorted)?)
}

/// Q-degree of every vertex: the number of copies of `Q` containing it.
pub fn q_degrees(q: &Hypergraph, h: &Hypergraph) -> Result<Vec<u128>> {
    let d = derive_weighted(q, h)?;
    let mut deg = vec![0u128; h.n()];
    for (key, w) in d.entries() {
        for &v in key {
            deg[v as usize] += w as u128;
        }
    }
    Ok(deg)
}

pub fn q_degree(q: &Hypergraph, h: &Hypergraph, v: u32) -> Result<u128> {
    if v as usize >= h.n() {
        return Err(Error::VertexOutOfRange {
            vertex: v as usize,
            n: h.n(),
        });
    }
    Ok(q_degrees(q, h)?[v as usize])
}

/// Minimum Q-degree `delta_Q(H)`; zero for the empty vertex set.
pub fn min_q_degree(q: &Hypergraph, h: &Hypergraph) -> Result<u128> {
    Ok(q_degrees(q, h)?.into_iter().min().unwrap_or(0))
}

/// The weighted s-graph `D(Q,H)`: every s-set spanning a copy of `Q`, weighted
/// by the number of such copies.
pub fn derive_weighted(q: &Hypergraph, h: &Hypergraph) -> Result<WeightedSGraph> {
    check_uniformity(q, h)?;
    let s = q.n();
    if s > h.n() {
        return Err(Error::InvalidParameter(alloc::format!(
            "pattern has {s} vertices but host only {}",
            h.n()
        )));
    }
    let aut = aut_order(q)?;
    let mut per_set: BTreeMap<u128, u128> = BTreeMap::new();
    for_each_embedding(q, h, |img| {
        *per_set.entry(mask_of(img)).or_insert(0) += 1;
        ControlFlow::Continue(())
    })?;
    let mut entries = Vec::with_capacity(per_set.len());
    for (mask, emb) in per_set {
        debug_assert_eq!(emb % aut, 0);
        let w = u64::try_from(emb / aut).map_err(|_| Error::Overflow)?;
        let mut key = Vec::with_capacity(s);
        let mut m = mask;
        while m != 0 {
            key.push(m.trailing_zeros());
            m &= m - 1;
        }
        entries.push((key, w));
    }
    WeightedSGraph::new(h.n(), s, entries)
}

/// True iff no member of `family` embeds in `h`.
pub fn is_free(h: &Hypergraph, family: &FamilySpec) -> Result<bool> {
    for f in family.members() {
        let mut found = false;
        for_each_embedding(f, h, |_| {
            found = true;
            ControlFlow::Break(())
        })?;
        if found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff some (not necessarily injective) homomorphism `h -> target` exists.
pub fn is_colorable(h: &Hypergraph, target: &Hypergraph) -> Result<bool> {
    check_uniformity(h, target)?;
    check_order(h)?;
    check_order(target)?;
    if h.n() > 0 && target.n() == 0 {
        return Ok(false);
    }
    let mut found = false;
    search(h, target, false, &mut |_| {
        found = true;
        ControlFlow::Break(())
    });
    Ok(found)
}

/// An s-uniform hypergraph with positive integer edge weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "WeightedRepr", try_from = "WeightedRepr")]
pub struct WeightedSGraph {
    n: usize,
    s: usize,
    keys: Vec<u32>,
    weights: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct WeightedRepr {
    n: usize,
    s: usize,
    edges: Vec<(Vec<u32>, u64)>,
}

impl From<WeightedSGraph> for WeightedRepr {
    fn from(w: WeightedSGraph) -> Self {
        WeightedRepr {
            n: w.n,
            s: w.s,
            edges: w.entries().map(|(k, v)| (k.to_vec(), v)).collect(),
        }
    }
}

impl TryFrom<WeightedRepr> for WeightedSGraph {
    type Error = Error;
    fn try_from(r: WeightedRepr) -> Result<Self> {
        WeightedSGraph::new(r.n, r.s, r.edges)
    }
}

impl WeightedSGraph {
    /// Validates and sorts the entries. Keys are sorted internally; a key
    /// given twice is rejected.
    pub fn new<I>(n: usize, s: usize, entries: I) -> Result<WeightedSGraph>
    where
        I: IntoIterator<Item = (Vec<u32>, u64)>,
    {
        if s < 2 {
            return Err(Error::Uniformity(s));
        }
        let mut list: Vec<(Vec<u32>, u64)> = Vec::new();
        for (index, (mut key, w)) in entries.into_iter().enumerate() {
            if key.len() != s {
                return Err(Error::Arity {
                    index,
                    found: key.len(),
                    expected: s,
                });
            }
            key.sort_unstable();
            if let Some(&v) = key.iter().find(|&&v| v as usize >= n) {
                return Err(Error::VertexOutOfRange {
                    vertex: v as usize,
                    n,
                });
            }
            if key.windows(2).any(|p| p[0] == p[1]) {
                return Err(Error::RepeatedVertex(index));
            }
            if w == 0 {
                return Err(Error::InvalidParameter("edge weights must be positive".into()));
            }
            list.push((key, w));
        }
        list.sort_unstable();
        if list.windows(2).any(|p| p[0].0 == p[1].0) {
            return Err(Error::InvalidParameter("duplicate weighted edge".into()));
        }
        let (keys, weights) = list.into_iter().fold(
            (Vec::new(), Vec::new()),
            |(mut ks, mut ws), (k, w)| {
                ks.extend(k);
                ws.push(w);
                (ks, ws)
            },
        );
        Ok(WeightedSGraph { n, s, keys, weights })
    }

    /// Unit weights on the edges of an s-graph.
    pub fn unit(h: &Hypergraph) -> WeightedSGraph {
        WeightedSGraph {
            n: h.n(),
            s: h.r(),
            keys: h.edges().flatten().copied().collect(),
            weights: vec![1; h.edge_count()],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn entries(&self) -> impl ExactSizeIterator<Item = (&[u32], u64)> + '_ {
        self.keys.chunks_exact(self.s).zip(self.weights.iter().copied())
    }

    pub fn weight(&self, key: &[u32]) -> Option<u64> {
        let mut k = key.to_vec();
        k.sort_unstable();
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.keys[mid * self.s..(mid + 1) * self.s].cmp(&k[..]) {
                core::cmp::Ordering::Less => lo = mid + 1,
                core::cmp::Ordering::Greater => hi = mid,
                core::cmp::Ordering::Equal => return Some(self.weights[mid]),
            }
        }
        None
    }

    /// Sum of all weights; equals `N(Q,H)` for `D(Q,H)`.
    pub fn total_weight(&self) -> u128 {
        self.weights.iter().map(|&w| w as u128).sum()
    }

    pub fn max_weight(&self) -> u64 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    /// The underlying s-graph with weights forgotten.
    pub fn support(&self) -> Hypergraph {
        let edges = self.keys.chunks_exact(self.s).map(|k| k.to_vec()).collect();
        Hypergraph::from_sorted_edges(self.n, self.s, edges)
    }

    /// Copy with entry `index` (in key order) removed.
    pub fn without_entry(&self, index: usize) -> WeightedSGraph {
        let mut keys = self.keys.clone();
        let mut weights = self.weights.clone();
        keys.drain(index * self.s..(index + 1) * self.s);
        weights.remove(index);
        WeightedSGraph {
            n: self.n,
            s: self.s,
            keys,
            weights,
        }
    }
}

/// A non-empty list of forbidden r-graphs without isolated vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    members: Vec<Hypergraph>,
}

impl FamilySpec {
    pub fn new(members: Vec<Hypergraph>) -> Result<FamilySpec> {
        let Some(first) = members.first() else {
            return Err(Error::InvalidParameter("forbidden family is empty".into()));
        };
        let r = first.r();
        for m in &members {
            if m.r() != r {
                return Err(Error::UniformityMismatch { left: r, right: m.r() });
            }
            if m.edge_count() == 0 || m.degrees().contains(&0) {
                return Err(Error::InvalidParameter(
                    "forbidden graphs must have edges and no isolated vertices".into(),
                ));
            }
        }
        Ok(FamilySpec { members })
    }

    pub fn members(&self) -> &[Hypergraph] {
        &self.members
    }

    pub fn r(&self) -> usize {
        self.members[0].r()
    }
}

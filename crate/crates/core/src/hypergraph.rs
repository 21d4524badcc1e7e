//! Immutable r-uniform hypergraphs with canonical edge storage.
//!
//! Vertices are `0..n`. Each edge is stored sorted ascending and the edge list
//! is kept strictly increasing in lexicographic order, so two values with the
//! same labeled edge set compare equal. This is canonical *storage*, not a
//! canonical labeling; see [`crate::canon`] for isomorphism-invariant labels.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Repr", try_from = "Repr")]
pub struct Hypergraph {
    n: usize,
    r: usize,
    /// Flat edge storage, `r` vertices per edge.
    flat: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct Repr {
    n: usize,
    r: usize,
    edges: Vec<Vec<u32>>,
}

impl From<Hypergraph> for Repr {
    fn from(h: Hypergraph) -> Repr {
        Repr {
            n: h.n,
            r: h.r,
            edges: h.edge_vecs(),
        }
    }
}

impl TryFrom<Repr> for Hypergraph {
    type Error = Error;
    fn try_from(repr: Repr) -> Result<Hypergraph> {
        Hypergraph::build(repr.n, repr.r, repr.edges)
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(n={}, r={}, edges=", self.n, self.r)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

impl Hypergraph {
    /// Builds a hypergraph from arbitrary-order edge lists. Each edge is sorted
    /// and duplicate edges are dropped silently.
    pub fn build<E, I>(n: usize, r: usize, edges: I) -> Result<Hypergraph>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[u32]>,
    {
        if r < 2 {
            return Err(Error::Uniformity(r));
        }
        let mut list: Vec<Vec<u32>> = Vec::new();
        for (index, edge) in edges.into_iter().enumerate() {
            let edge = edge.as_ref();
            if edge.len() != r {
                return Err(Error::Arity {
                    index,
                    found: edge.len(),
                    expected: r,
                });
            }
            let mut e = edge.to_vec();
            e.sort_unstable();
            if let Some(&v) = e.iter().find(|&&v| v as usize >= n) {
                return Err(Error::VertexOutOfRange {
                    vertex: v as usize,
                    n,
                });
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex(index));
            }
            list.push(e);
        }
        Ok(Self::from_sorted_edges(n, r, list))
    }

    /// Internal constructor: every edge already sorted and valid.
    pub(crate) fn from_sorted_edges(n: usize, r: usize, mut list: Vec<Vec<u32>>) -> Hypergraph {
        list.sort_unstable();
        list.dedup();
        let flat = list.into_iter().flatten().collect();
        Hypergraph { n, r, flat }
    }

    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize, r: usize) -> Result<Hypergraph> {
        Self::build::<[u32; 0], _>(n, r, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edge_count(&self) -> usize {
        self.flat.len() / self.r
    }

    /// Edges in canonical (lexicographic) order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[u32]> + Clone + '_ {
        self.flat.chunks_exact(self.r)
    }

    pub fn edge_vecs(&self) -> Vec<Vec<u32>> {
        self.edges().map(|e| e.to_vec()).collect()
    }

    pub fn contains_edge(&self, edge: &[u32]) -> bool {
        if edge.len() != self.r {
            return false;
        }
        let mut e = edge.to_vec();
        e.sort_unstable();
        let m = self.edge_count();
        let (mut lo, mut hi) = (0, m);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.flat[mid * self.r..(mid + 1) * self.r].cmp(&e[..]) {
                core::cmp::Ordering::Less => lo = mid + 1,
                core::cmp::Ordering::Greater => hi = mid,
                core::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &v in &self.flat {
            d[v as usize] += 1;
        }
        d
    }

    /// Named generator, see [`Generator`].
    pub fn generate(spec: Generator) -> Result<Hypergraph> {
        spec.build()
    }

    /// Subgraph induced by `subset`, relabeled `0..|subset|` in increasing
    /// original order.
    pub fn induced(&self, subset: &[u32]) -> Result<Hypergraph> {
        let mut keep: Vec<u32> = subset.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut map = vec![u32::MAX; self.n];
        for (new, &old) in keep.iter().enumerate() {
            if old as usize >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: old as usize,
                    n: self.n,
                });
            }
            map[old as usize] = new as u32;
        }
        let edges = self
            .edges()
            .filter(|e| e.iter().all(|&v| map[v as usize] != u32::MAX))
            .map(|e| e.iter().map(|&v| map[v as usize]).collect())
            .collect();
        // relabeling is monotone, so edges stay sorted
        Ok(Self::from_sorted_edges(keep.len(), self.r, edges))
    }

    /// `H - v`, the subgraph induced by all other vertices.
    pub fn delete_vertex(&self, v: u32) -> Result<Hypergraph> {
        if v as usize >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v as usize,
                n: self.n,
            });
        }
        let rest: Vec<u32> = (0..self.n as u32).filter(|&u| u != v).collect();
        self.induced(&rest)
    }

    /// Blow-up with contiguous blocks: base vertex `i` becomes the index range
    /// `offset[i]..offset[i] + sizes[i]`.
    pub fn blow_up(spec: &BlowupSpec) -> Hypergraph {
        let base = &spec.base;
        let mut offsets = Vec::with_capacity(base.n + 1);
        let mut acc = 0u32;
        for &k in &spec.sizes {
            offsets.push(acc);
            acc += k;
        }
        let mut edges = Vec::new();
        for e in base.edges() {
            // odometer over one vertex per incident block
            let mut pick = vec![0u32; e.len()];
            'odometer: loop {
                edges.push(
                    e.iter()
                        .zip(&pick)
                        .map(|(&v, &j)| offsets[v as usize] + j)
                        .collect::<Vec<u32>>(),
                );
                let mut i = e.len();
                loop {
                    if i == 0 {
                        break 'odometer;
                    }
                    i -= 1;
                    pick[i] += 1;
                    if pick[i] < spec.sizes[e[i] as usize] {
                        continue 'odometer;
                    }
                    pick[i] = 0;
                }
            }
        }
        Self::from_sorted_edges(acc as usize, base.r, edges)
    }

    /// 2-shadow: `{u,v}` is an edge iff some edge of `self` contains both.
    pub fn shadow2(&self) -> Hypergraph {
        let mut pairs = Vec::new();
        for e in self.edges() {
            for i in 0..e.len() {
                for j in i + 1..e.len() {
                    pairs.push(vec![e[i], e[j]]);
                }
            }
        }
        Self::from_sorted_edges(self.n, 2, pairs)
    }

    /// s-expansion of a 2-graph: edge number `k` (in canonical order) gains the
    /// fresh vertices `n + k(s-2) .. n + (k+1)(s-2)`.
    pub fn expansion(&self, s: usize) -> Result<Hypergraph> {
        if s < 2 {
            return Err(Error::InvalidParameter(alloc::format!(
                "expansion needs s >= 2, got {s}"
            )));
        }
        if self.r != 2 {
            return Err(Error::UniformityMismatch {
                left: self.r,
                right: 2,
            });
        }
        let extra = s - 2;
        let mut edges = Vec::with_capacity(self.edge_count());
        for (k, e) in self.edges().enumerate() {
            let mut edge = e.to_vec();
            let start = (self.n + k * extra) as u32;
            edge.extend(start..start + extra as u32);
            edges.push(edge);
        }
        Ok(Self::from_sorted_edges(
            self.n + extra * self.edge_count(),
            s,
            edges,
        ))
    }

    /// Applies the vertex map `perm[old] = new`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Hypergraph> {
        if perm.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p as usize >= self.n || core::mem::replace(&mut seen[p as usize], true) {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
        }
        let edges = self
            .edges()
            .map(|e| {
                let mut m: Vec<u32> = e.iter().map(|&v| perm[v as usize]).collect();
                m.sort_unstable();
                m
            })
            .collect();
        Ok(Self::from_sorted_edges(self.n, self.r, edges))
    }

    /// Same edges plus `extra` isolated vertices at the end.
    pub fn with_isolated(&self, extra: usize) -> Hypergraph {
        Hypergraph {
            n: self.n + extra,
            r: self.r,
            flat: self.flat.clone(),
        }
    }

    /// Adds an edge (no-op if present).
    pub fn with_edge(&self, edge: &[u32]) -> Result<Hypergraph> {
        let mut edges = self.edge_vecs();
        edges.push(edge.to_vec());
        Self::build(self.n, self.r, edges)
    }

    /// Removes an edge if present.
    pub fn without_edge(&self, edge: &[u32]) -> Hypergraph {
        let mut e = edge.to_vec();
        e.sort_unstable();
        let edges = self.edges().filter(|x| *x != &e[..]).map(|x| x.to_vec()).collect();
        Self::from_sorted_edges(self.n, self.r, edges)
    }
}

/// A base graph and one positive block size per base vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupSpec {
    base: Hypergraph,
    sizes: Vec<u32>,
}

impl BlowupSpec {
    pub fn new(base: Hypergraph, sizes: Vec<u32>) -> Result<BlowupSpec> {
        if sizes.len() != base.n() {
            return Err(Error::Dimension {
                expected: base.n(),
                found: sizes.len(),
            });
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidParameter("blow-up block sizes must be positive".into()));
        }
        Ok(BlowupSpec { base, sizes })
    }

    pub fn base(&self) -> &Hypergraph {
        &self.base
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn build(&self) -> Hypergraph {
        Hypergraph::blow_up(self)
    }
}

/// Named graph families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `K_n^r`.
    Complete { n: usize, r: usize },
    /// `T_l^r(n)`: balanced complete l-partite r-graph, `l >= r`.
    Turan { n: usize, l: usize, r: usize },
    /// `C_n`, `n >= 3`.
    Cycle { n: usize },
    /// Balanced blow-up of `C_5` on `n` vertices, larger classes first.
    C5Blowup { n: usize },
}

impl Generator {
    pub fn build(self) -> Result<Hypergraph> {
        match self {
            Generator::Complete { n, r } => {
                if r < 2 {
                    return Err(Error::Uniformity(r));
                }
                Ok(Hypergraph::from_sorted_edges(n, r, crate::subsets::all_subsets(n, r)))
            }
            Generator::Turan { n, l, r } => {
                if r < 2 {
                    return Err(Error::Uniformity(r));
                }
                if l < r {
                    return Err(Error::InvalidParameter(alloc::format!(
                        "Turan graph needs l >= r, got l = {l}, r = {r}"
                    )));
                }
                let part = balanced_parts(n, l);
                let edges = crate::subsets::all_subsets(n, r)
                    .into_iter()
                    .filter(|e| {
                        e.windows(2)
                            .all(|w| part[w[0] as usize] != part[w[1] as usize])
                    })
                    .collect();
                Ok(Hypergraph::from_sorted_edges(n, r, edges))
            }
            Generator::Cycle { n } => {
                if n < 3 {
                    return Err(Error::InvalidParameter(alloc::format!(
                        "cycle needs n >= 3, got {n}"
                    )));
                }
                let edges = (0..n as u32).map(|i| [i, (i + 1) % n as u32]);
                Hypergraph::build(n, 2, edges)
            }
            Generator::C5Blowup { n } => {
                let part = balanced_parts(n, 5);
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        let d = (part[v] + 5 - part[u]) % 5;
                        if d == 1 || d == 4 {
                            edges.push(vec![u as u32, v as u32]);
                        }
                    }
                }
                Ok(Hypergraph::from_sorted_edges(n, 2, edges))
            }
        }
    }
}

/// Part index of each vertex for `l` contiguous parts whose sizes differ by at
/// most one, larger parts first.
pub fn balanced_parts(n: usize, l: usize) -> Vec<usize> {
    part_sizes(n, l)
        .into_iter()
        .enumerate()
        .flat_map(|(i, k)| core::iter::repeat_n(i, k))
        .collect()
}

/// `ceil(n/l)` for the first `n mod l` parts, `floor(n/l)` for the rest.
pub fn part_sizes(n: usize, l: usize) -> Vec<usize> {
    (0..l).map(|i| n / l + usize::from(i < n % l)).collect()
}

//! Canonical labels for r-graphs.
//!
//! Individualization-refinement: the vertex partition is refined until
//! equitable (every vertex in a cell sees the same multiset of cell patterns
//! through its edges), then each non-singleton cell is split by trying every
//! vertex in it. Leaves are scored by the edge set under the leaf labeling and
//! the best leaf wins. Automorphisms discovered at equal leaves prune sibling
//! branches that lie in a common orbit of the pointwise stabilizer of the
//! current path.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::hypergraph::Hypergraph;
use crate::subsets::LexRanker;

const MAX_GENERATORS: usize = 256;

/// Byte string that is equal for isomorphic graphs and distinct otherwise.
/// Ordering is total; labels of graphs with different `(n, r)` never collide.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalLabel(Vec<u8>);

impl CanonicalLabel {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        use core::fmt::Write;
        let mut s = String::with_capacity(self.0.len() * 2);
        for b in &self.0 {
            let _ = write!(s, "{b:02x}");
        }
        s
    }
}

impl fmt::Debug for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalLabel({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// A canonical label together with the labeling that produced it.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub label: CanonicalLabel,
    /// `position[v]` is the canonical index of vertex `v`.
    pub position: Vec<u32>,
}

impl Canonical {
    /// The graph relabeled canonically; isomorphic inputs give equal outputs.
    pub fn graph(&self, h: &Hypergraph) -> Hypergraph {
        h.relabel(&self.position).expect("canonical labeling is a permutation")
    }
}

pub fn canonical_form(h: &Hypergraph) -> CanonicalLabel {
    canonical_labeling(h).label
}

pub fn canonical_labeling(h: &Hypergraph) -> Canonical {
    let n = h.n();
    let mut ctx = Ctx::new(h);
    if n > 0 {
        let root = vec![(0..n as u32).collect::<Vec<u32>>()];
        ctx.search(root, &mut Vec::new());
    }
    let (code, position) = ctx.best.unwrap_or_default();
    let mut bytes = Vec::with_capacity(3 + code.len() * 8);
    bytes.extend_from_slice(&(n as u16).to_be_bytes());
    bytes.push(h.r() as u8);
    for w in code {
        bytes.extend_from_slice(&w.to_be_bytes());
    }
    Canonical {
        label: CanonicalLabel(bytes),
        position,
    }
}

struct Ctx<'a> {
    h: &'a Hypergraph,
    incident: Vec<Vec<usize>>,
    edges: Vec<&'a [u32]>,
    ranker: LexRanker,
    words: usize,
    first: Option<(Vec<u64>, Vec<u32>)>,
    best: Option<(Vec<u64>, Vec<u32>)>,
    generators: Vec<Vec<u32>>,
}

impl<'a> Ctx<'a> {
    fn new(h: &'a Hypergraph) -> Self {
        let edges: Vec<&[u32]> = h.edges().collect();
        let mut incident = vec![Vec::new(); h.n()];
        for (i, e) in edges.iter().enumerate() {
            for &v in *e {
                incident[v as usize].push(i);
            }
        }
        let ranker = LexRanker::new(h.n(), h.r());
        let words = ranker.total().div_ceil(64);
        Ctx {
            h,
            incident,
            edges,
            ranker,
            words,
            first: None,
            best: None,
            generators: Vec::new(),
        }
    }

    fn signature(&self, v: u32, cell_of: &[u32], cells: usize) -> Vec<u32> {
        if self.h.r() == 2 {
            let mut counts = vec![0u32; cells];
            for &e in &self.incident[v as usize] {
                let e = self.edges[e];
                let u = if e[0] == v { e[1] } else { e[0] };
                counts[cell_of[u as usize] as usize] += 1;
            }
            counts
        } else {
            let mut tuples: Vec<Vec<u32>> = self.incident[v as usize]
                .iter()
                .map(|&e| {
                    let mut t: Vec<u32> = self.edges[e]
                        .iter()
                        .filter(|&&u| u != v)
                        .map(|&u| cell_of[u as usize])
                        .collect();
                    t.sort_unstable();
                    t
                })
                .collect();
            tuples.sort_unstable();
            tuples.into_iter().flatten().collect()
        }
    }

    /// Splits cells until the partition is equitable.
    fn refine(&self, cells: &mut Vec<Vec<u32>>) {
        let n = self.h.n();
        loop {
            let mut cell_of = vec![0u32; n];
            for (i, c) in cells.iter().enumerate() {
                for &v in c {
                    cell_of[v as usize] = i as u32;
                }
            }
            let mut next = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, u32)> = cell
                    .iter()
                    .map(|&v| (self.signature(v, &cell_of, cells.len()), v))
                    .collect();
                keyed.sort_unstable();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
            }
            let split = next.len() != cells.len();
            *cells = next;
            if !split {
                return;
            }
        }
    }

    fn encode(&self, position: &[u32]) -> Vec<u64> {
        let mut code = vec![0u64; self.words];
        let mut mapped = vec![0u32; self.h.r()];
        for e in &self.edges {
            for (m, &v) in mapped.iter_mut().zip(e.iter()) {
                *m = position[v as usize];
            }
            mapped.sort_unstable();
            let b = self.ranker.rank(&mapped);
            code[b / 64] |= 1u64 << (63 - b % 64);
        }
        code
    }

    fn search(&mut self, mut cells: Vec<Vec<u32>>, path: &mut Vec<u32>) {
        self.refine(&mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let mut position = vec![0u32; self.h.n()];
            for (i, c) in cells.iter().enumerate() {
                position[c[0] as usize] = i as u32;
            }
            self.leaf(position);
            return;
        };
        let candidates = cells[target].clone();
        let mut explored: Vec<u32> = Vec::new();
        for &v in &candidates {
            if !explored.is_empty() && self.equivalent_to_explored(v, &explored, path) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(candidates.iter().copied().filter(|&u| u != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            path.push(v);
            self.search(child, path);
            path.pop();
            explored.push(v);
        }
    }

    /// Whether `v` shares an orbit with an explored sibling under the known
    /// automorphisms that fix `path` pointwise.
    fn equivalent_to_explored(&self, v: u32, explored: &[u32], path: &[u32]) -> bool {
        let n = self.h.n();
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(p: &mut [u32], mut x: u32) -> u32 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        let mut any = false;
        for g in &self.generators {
            if path.iter().any(|&p| g[p as usize] != p) {
                continue;
            }
            any = true;
            for x in 0..n as u32 {
                let (a, b) = (find(&mut parent, x), find(&mut parent, g[x as usize]));
                if a != b {
                    parent[a as usize] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&w| find(&mut parent, w) == root)
    }

    fn leaf(&mut self, position: Vec<u32>) {
        let code = self.encode(&position);
        let Some((first_code, first_pos)) = &self.first else {
            self.first = Some((code.clone(), position.clone()));
            self.best = Some((code, position));
            return;
        };
        let (best_code, best_pos) = self.best.as_ref().expect("best set with first");
        let reference = if &code == first_code {
            Some(first_pos)
        } else if &code == best_code {
            Some(best_pos)
        } else {
            None
        };
        if let Some(reference) = reference {
            // vertex v sits where reference places gamma(v)
            let mut at = vec![0u32; position.len()];
            for (w, &p) in reference.iter().enumerate() {
                at[p as usize] = w as u32;
            }
            let gamma: Vec<u32> = position.iter().map(|&p| at[p as usize]).collect();
            if self.generators.len() < MAX_GENERATORS {
                self.generators.push(gamma);
            }
        } else if &code > best_code {
            self.best = Some((code, position));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Generator;

    fn shuffled(h: &Hypergraph, seed: u64) -> Hypergraph {
        let n = h.n();
        let mut perm: Vec<u32> = (0..n as u32).collect();
        let mut x = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        for i in (1..n).rev() {
            x ^= x >> 33;
            x = x.wrapping_mul(0xff51afd7ed558ccd);
            let j = (x % (i as u64 + 1)) as usize;
            perm.swap(i, j);
        }
        h.relabel(&perm).unwrap()
    }

    #[test]
    fn invariant_under_relabeling() {
        let graphs = [
            Generator::Cycle { n: 5 }.build().unwrap(),
            Generator::C5Blowup { n: 10 }.build().unwrap(),
            Generator::Turan { n: 7, l: 3, r: 2 }.build().unwrap(),
            Generator::Turan { n: 7, l: 3, r: 3 }.build().unwrap(),
            Hypergraph::empty(9, 2).unwrap(),
            Hypergraph::build(6, 3, [[0, 1, 2], [2, 3, 4], [1, 4, 5], [0, 3, 5]]).unwrap(),
        ];
        for g in &graphs {
            let label = canonical_form(g);
            for seed in 0..20 {
                let s = shuffled(g, seed);
                assert_eq!(canonical_form(&s), label, "{g:?} vs {s:?}");
                assert_eq!(canonical_labeling(&s).graph(&s), canonical_labeling(g).graph(g));
            }
        }
    }

    #[test]
    fn distinguishes_examples() {
        let star = Hypergraph::build(4, 2, [[0, 1], [0, 2], [0, 3]]).unwrap();
        let tri = Generator::Complete { n: 3, r: 2 }.build().unwrap().with_isolated(1);
        assert_ne!(canonical_form(&star), canonical_form(&tri));
        let e = Hypergraph::empty(2, 2).unwrap();
        let k = Generator::Complete { n: 2, r: 2 }.build().unwrap();
        assert_ne!(canonical_form(&e), canonical_form(&k));
        // C_6 and two disjoint triangles share a degree sequence
        let c6 = Generator::Cycle { n: 6 }.build().unwrap();
        let two = Hypergraph::build(6, 2, [[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]]).unwrap();
        assert_ne!(canonical_form(&c6), canonical_form(&two));
    }

    #[test]
    fn refinement_orders_cells_by_signature() {
        // the isolated vertex has the smaller signature and comes first
        for e in [[0u32, 1], [0, 2], [1, 2]] {
            let g = Hypergraph::build(3, 2, [e]).unwrap();
            let c = canonical_labeling(&g);
            assert_eq!(c.graph(&g).edge_vecs(), vec![vec![1, 2]]);
        }
    }
}

//! Orderly generation of pairwise non-isomorphic r-graphs.
//!
//! Graphs grow one vertex at a time. A child `G` of the representative `P`
//! (with new vertex `d`) is kept only if `G - m(G)` is isomorphic to `P`, where
//! `m(G)` is the minimum-degree vertex with the largest canonical index; this
//! makes `P` the unique canonical parent of the class of `G`. Children of one
//! parent that are isomorphic to each other are merged by a per-parent label
//! set, so memory stays proportional to the depth times the branching factor.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::canon::{canonical_form, canonical_labeling, CanonicalLabel};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::subsets::all_subsets;

/// Default maximum order: 10 for graphs, 7 for 3-graphs, 6 above.
pub fn default_ceiling(r: usize) -> usize {
    match r {
        2 => 10,
        3 => 7,
        _ => 6,
    }
}

/// One emitted isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Member {
    pub graph: Hypergraph,
    pub label: CanonicalLabel,
}

struct Frame {
    parent: Hypergraph,
    parent_label: CanonicalLabel,
    parent_degrees: Vec<usize>,
    links: Vec<Vec<u32>>,
    next: u64,
    total: u64,
    seen: BTreeSet<CanonicalLabel>,
}

impl Frame {
    fn new(parent: Hypergraph, parent_label: CanonicalLabel, r: usize) -> Frame {
        let links = all_subsets(parent.n(), r - 1);
        let total = 1u64 << links.len();
        let mut parent_degrees = parent.degrees();
        parent_degrees.sort_unstable();
        Frame {
            parent,
            parent_label,
            parent_degrees,
            links,
            next: 0,
            total,
            seen: BTreeSet::new(),
        }
    }

    fn child(&self, index: u64) -> Hypergraph {
        let d = self.parent.n() as u32;
        let mut edges = self.parent.edge_vecs();
        for (bit, link) in self.links.iter().enumerate() {
            if index >> bit & 1 == 1 {
                let mut e = link.clone();
                e.push(d);
                edges.push(e);
            }
        }
        Hypergraph::from_sorted_edges(self.parent.n() + 1, self.parent.r(), edges)
    }
}

/// Lazy stream of class representatives of order `n` passing a predicate.
///
/// With `hereditary` set, the predicate must be closed under induced
/// subgraphs (F-freeness is); it is then also used to prune the generation
/// tree. Without it the predicate is only applied to the final order.
pub struct EnumerationStream<P> {
    n: usize,
    r: usize,
    predicate: P,
    hereditary: bool,
    frames: Vec<Frame>,
    /// Order-0 case: the single empty graph, emitted once.
    trivial: Option<Hypergraph>,
}

pub fn enumerate_graphs<P>(
    n: usize,
    r: usize,
    predicate: P,
    hereditary: bool,
    ceiling: Option<usize>,
) -> Result<EnumerationStream<P>>
where
    P: Fn(&Hypergraph) -> bool,
{
    if r < 2 {
        return Err(Error::Uniformity(r));
    }
    let ceiling = ceiling.unwrap_or_else(|| default_ceiling(r));
    if n > ceiling {
        return Err(Error::CeilingExceeded { n, r, ceiling });
    }
    // the link of the last vertex must fit in a u64 candidate index
    if crate::subsets::binomial(n.saturating_sub(1), r - 1) > 62 {
        return Err(Error::InvalidParameter(format!(
            "order {n} is too large to enumerate {r}-graphs"
        )));
    }
    let root = Hypergraph::empty(0, r)?;
    let mut stream = EnumerationStream {
        n,
        r,
        predicate,
        hereditary,
        frames: Vec::new(),
        trivial: None,
    };
    if n == 0 {
        stream.trivial = Some(root);
    } else {
        let label = canonical_form(&root);
        stream.frames.push(Frame::new(root, label, r));
    }
    Ok(stream)
}

/// Every representative of order `n`, sorted by canonical label.
pub fn enumerate_sorted<P>(
    n: usize,
    r: usize,
    predicate: P,
    hereditary: bool,
    ceiling: Option<usize>,
) -> Result<Vec<Member>>
where
    P: Fn(&Hypergraph) -> bool,
{
    let mut all: Vec<Member> = enumerate_graphs(n, r, predicate, hereditary, ceiling)?.collect();
    all.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(all)
}

impl<P: Fn(&Hypergraph) -> bool> EnumerationStream<P> {
    /// Opaque printable token; [`Self::resume`] with it continues right after
    /// the last emitted graph.
    pub fn checkpoint(&self) -> String {
        let path: Vec<String> = self.frames.iter().map(|f| format!("{}", f.next)).collect();
        let state = if self.trivial.is_some() { "t" } else { "s" };
        format!("v1.{}.{}.{}.{}", self.n, self.r, state, path.join("-"))
    }

    /// Rebuilds a stream from a checkpoint taken with the same `n`, `r`,
    /// predicate and `hereditary` flag.
    pub fn resume(
        n: usize,
        r: usize,
        predicate: P,
        hereditary: bool,
        ceiling: Option<usize>,
        token: &str,
    ) -> Result<EnumerationStream<P>> {
        let bad = || Error::Checkpoint(String::from(token));
        let parts: Vec<&str> = token.split('.').collect();
        if parts.len() != 5 || parts[0] != "v1" {
            return Err(bad());
        }
        if parts[1].parse::<usize>().map_err(|_| bad())? != n
            || parts[2].parse::<usize>().map_err(|_| bad())? != r
        {
            return Err(Error::Checkpoint(format!(
                "token {token} was taken for a different order or uniformity"
            )));
        }
        let mut stream = enumerate_graphs(n, r, predicate, hereditary, ceiling)?;
        if n == 0 {
            if parts[3] != "t" {
                stream.trivial = None;
            }
            return Ok(stream);
        }
        if parts[3] != "s" {
            return Err(bad());
        }
        let path: Vec<u64> = if parts[4].is_empty() {
            Vec::new()
        } else {
            parts[4]
                .split('-')
                .map(|x| x.parse::<u64>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        };
        if path.is_empty() {
            stream.frames.clear();
            return Ok(stream);
        }
        if path.len() > n {
            return Err(bad());
        }
        for (depth, &next) in path.iter().enumerate() {
            if next > stream.frames[depth].total {
                return Err(bad());
            }
            let mut pushed = None;
            for idx in 0..next {
                if let Some((child, label)) = stream.consider(depth, idx) {
                    if idx + 1 == next {
                        pushed = Some((child, label));
                    }
                }
            }
            stream.frames[depth].next = next;
            if depth + 1 < path.len() {
                let (child, label) = pushed.ok_or_else(bad)?;
                if child.n() == n {
                    return Err(bad());
                }
                stream.frames.push(Frame::new(child, label, r));
            }
        }
        Ok(stream)
    }

    /// Evaluates candidate `index` of the frame at `depth`; returns the child
    /// when it is accepted and new among its siblings.
    fn consider(&mut self, depth: usize, index: u64) -> Option<(Hypergraph, CanonicalLabel)> {
        let frame = &self.frames[depth];
        let child = frame.child(index);
        let last = child.n() == self.n;
        if (self.hereditary || last) && !(self.predicate)(&child) {
            return None;
        }
        let d = frame.parent.n();
        let degrees = child.degrees();
        let min_deg = *degrees.iter().min().expect("child has a vertex");
        // cheap necessary condition: some minimum-degree vertex leaves the
        // parent's degree sequence behind
        let matches_parent = |u: usize| {
            let mut rest: Vec<usize> = Vec::with_capacity(d);
            let mut removed = degrees.clone();
            for e in child.edges() {
                if e.contains(&(u as u32)) {
                    for &w in e {
                        removed[w as usize] -= 1;
                    }
                }
            }
            for (w, &x) in removed.iter().enumerate() {
                if w != u {
                    rest.push(x);
                }
            }
            rest.sort_unstable();
            rest == frame.parent_degrees
        };
        if !(0..=d).any(|u| degrees[u] == min_deg && matches_parent(u)) {
            return None;
        }
        let canon = canonical_labeling(&child);
        let m = (0..=d)
            .filter(|&u| degrees[u] == min_deg)
            .max_by_key(|&u| canon.position[u])
            .expect("minimum exists");
        if m != d {
            let without = child.delete_vertex(m as u32).expect("vertex in range");
            if canonical_form(&without) != frame.parent_label {
                return None;
            }
        }
        let frame = &mut self.frames[depth];
        if !frame.seen.insert(canon.label.clone()) {
            return None;
        }
        Some((child, canon.label))
    }
}

impl<P: Fn(&Hypergraph) -> bool> Iterator for EnumerationStream<P> {
    type Item = Member;

    fn next(&mut self) -> Option<Member> {
        if let Some(g) = self.trivial.take() {
            if (self.predicate)(&g) {
                let label = canonical_form(&g);
                return Some(Member { graph: g, label });
            }
            return None;
        }
        loop {
            let depth = self.frames.len().checked_sub(1)?;
            let frame = &mut self.frames[depth];
            if frame.next == frame.total {
                self.frames.pop();
                continue;
            }
            let index = frame.next;
            frame.next += 1;
            if let Some((child, label)) = self.consider(depth, index) {
                if child.n() == self.n {
                    return Some(Member { graph: child, label });
                }
                self.frames.push(Frame::new(child, label, self.r));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::{is_free, FamilySpec};
    use crate::hypergraph::Generator;
    use alloc::vec;

    fn all(_: &Hypergraph) -> bool {
        true
    }

    #[test]
    fn small_counts() {
        // graphs on n vertices: 1, 1, 2, 4, 11, 34, 156, 1044
        let expected = [1, 1, 2, 4, 11, 34, 156, 1044];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(enumerate_graphs(n, 2, all, false, None).unwrap().count(), e, "n={n}");
        }
        // 3-graphs on 4 and 5 vertices: 5 and 34
        assert_eq!(enumerate_graphs(4, 3, all, false, None).unwrap().count(), 5);
        assert_eq!(enumerate_graphs(5, 3, all, false, None).unwrap().count(), 34);
    }

    #[test]
    fn triangle_free_counts() {
        let tri = FamilySpec::new(vec![Generator::Complete { n: 3, r: 2 }.build().unwrap()]).unwrap();
        let free = |h: &Hypergraph| is_free(h, &tri).unwrap();
        // A006785: 1, 2, 3, 7, 14, 38, 107, 410
        for (n, e) in [(1, 1), (2, 2), (3, 3), (4, 7), (5, 14), (6, 38), (7, 107), (8, 410)] {
            assert_eq!(enumerate_graphs(n, 2, free, true, None).unwrap().count(), e, "n={n}");
            assert_eq!(enumerate_graphs(n, 2, free, false, None).unwrap().count(), e, "n={n}");
        }
    }

    #[test]
    fn ceiling_is_enforced() {
        assert!(matches!(
            enumerate_graphs(11, 2, all, false, None),
            Err(Error::CeilingExceeded { .. })
        ));
        assert!(enumerate_graphs(11, 2, all, false, Some(11)).is_ok());
        assert!(matches!(
            enumerate_graphs(8, 3, all, false, None),
            Err(Error::CeilingExceeded { .. })
        ));
    }

    #[test]
    fn resume_reproduces_the_tail() {
        let full: Vec<Member> = enumerate_graphs(5, 2, all, false, None).unwrap().collect();
        let mut stream = enumerate_graphs(5, 2, all, false, None).unwrap();
        for cut in 0..=full.len() {
            let token = stream.checkpoint();
            let tail: Vec<Member> = EnumerationStream::resume(5, 2, all, false, None, &token)
                .unwrap()
                .collect();
            assert_eq!(tail, full[cut..], "cut {cut} token {token}");
            stream.next();
        }
        assert!(EnumerationStream::resume(6, 2, all, false, None, "v1.5.2.s.1").is_err());
        assert!(EnumerationStream::resume(5, 2, all, false, None, "garbage").is_err());
    }
}

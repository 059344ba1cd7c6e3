use std::fmt;

use super::{Graph, VertexSet};

/// An induced copy of `K_{s,t}`: both sides independent, every cross pair adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedEmbedding {
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

impl InducedEmbedding {
    /// Re-checks the embedding against `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let n = g.n();
        let in_range = self.side_a.iter().chain(&self.side_b).all(|&v| v < n);
        if !in_range {
            return false;
        }
        let a = VertexSet::from_vertices(n, self.side_a.iter().copied());
        let b = VertexSet::from_vertices(n, self.side_b.iter().copied());
        a.len() == self.side_a.len()
            && b.len() == self.side_b.len()
            && a.is_disjoint(&b)
            && g.is_independent(&a)
            && g.is_independent(&b)
            && self.side_a.iter().all(|&u| b.is_subset(g.neighbors(u)))
    }
}

impl fmt::Display for InducedEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{{{},{}}}: A = {:?}, B = {:?}", self.side_a.len(), self.side_b.len(), self.side_a, self.side_b)
    }
}

/// Lexicographically first independent subset of `candidates` with `size` members.
pub fn find_independent_subset(g: &Graph, candidates: &VertexSet, size: usize) -> Option<Vec<usize>> {
    fn extend(g: &Graph, pool: &VertexSet, size: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == size {
            return true;
        }
        if chosen.len() + pool.len() < size {
            return false;
        }
        let mut pool = pool.clone();
        while let Some(v) = pool.first() {
            if chosen.len() + pool.len() < size {
                return false;
            }
            pool.remove(v);
            chosen.push(v);
            let next = pool.difference(g.neighbors(v));
            if extend(g, &next, size, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    let mut chosen = Vec::with_capacity(size);
    extend(g, candidates, size, &mut chosen).then_some(chosen)
}

/// Searches for an induced `K_{s,t}`. The A-side (size `s`) runs over independent
/// sets in lexicographic order, so the returned witness has the smallest possible A-side;
/// its B-side is the lexicographically first independent `t`-set in the common neighbourhood.
///
/// Exponential in `s + t`; intended for small patterns.
pub fn find_induced_kst(g: &Graph, s: usize, t: usize) -> Option<InducedEmbedding> {
    assert!(1 <= s && s <= t, "pattern needs 1 <= s <= t");

    fn search(
        g: &Graph,
        s: usize,
        t: usize,
        pool: &VertexSet,
        common: &VertexSet,
        side_a: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if side_a.len() == s {
            return find_independent_subset(g, common, t);
        }
        for v in pool.iter() {
            if side_a.len() + pool.iter().filter(|&u| u >= v).count() < s {
                return None;
            }
            let next_common = common.intersection(g.neighbors(v));
            if next_common.len() < t {
                continue;
            }
            let mut next_pool = pool.difference(g.neighbors(v));
            for u in pool.iter().take_while(|&u| u <= v) {
                next_pool.remove(u);
            }
            side_a.push(v);
            if let Some(b) = search(g, s, t, &next_pool, &next_common, side_a) {
                return Some(b);
            }
            side_a.pop();
        }
        None
    }

    let mut side_a = Vec::with_capacity(s);
    let all = g.vertex_set();
    search(g, s, t, &all, &all, &mut side_a).map(|side_b| InducedEmbedding { side_a, side_b })
}

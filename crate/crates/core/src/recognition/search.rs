//! Backtracking orientation and cover search.
//!
//! A part is grown one arc at a time while its strict reachability closure is
//! maintained incrementally. A pair of vertices becomes *absent* in a part once
//! it is known never to be an edge of that part: either it is a non-edge of the
//! host, or its edge has already been decided and went elsewhere. Any reachable
//! absent pair that a final orientation could not repair is a dead end:
//!
//! * transitive parts: every reachable pair must be an arc;
//! * semi-transitive parts: every reachable pair lying on a path between the
//!   endpoints of some arc must be an arc.
//!
//! Both conditions only get worse as arcs are added, so checking partial states
//! is sound, and at a leaf they coincide with the full definitions.

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartClass {
    SemiTransitive,
    Transitive,
}

/// Node counter shared by a search and its sub-searches.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: Option<u64>,
    used: u64,
}

impl Budget {
    pub fn new(limit: Option<u64>) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(None)
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn remaining(&self) -> Option<u64> {
        self.limit.map(|l| l.saturating_sub(self.used))
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.charge(1)
    }

    /// Accounts for `nodes` spent elsewhere, e.g. by a capped sub-search.
    pub fn charge(&mut self, nodes: u64) -> Result<()> {
        self.used += nodes;
        match self.limit {
            Some(limit) if self.used > limit => Err(Error::BudgetExhausted(limit)),
            _ => Ok(()),
        }
    }
}

#[derive(Clone)]
struct Rows {
    w: usize,
    data: Vec<u64>,
}

impl Rows {
    fn new(n: usize, w: usize) -> Self {
        Rows { w, data: vec![0; n * w] }
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.data[v * self.w..(v + 1) * self.w]
    }

    #[inline]
    fn get(&self, v: usize, u: usize) -> bool {
        (self.data[v * self.w + u / 64] >> (u % 64)) & 1 == 1
    }

    #[inline]
    fn set(&mut self, v: usize, u: usize) {
        self.data[v * self.w + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    fn or_into(&mut self, v: usize, src: &[u64]) {
        for (d, s) in self.data[v * self.w..(v + 1) * self.w].iter_mut().zip(src) {
            *d |= *s;
        }
    }
}

fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            }
        })
    })
}

#[derive(Clone)]
struct Part {
    out: Rows,
    reach: Rows,
    coreach: Rows,
    absent: Rows,
    arcs: usize,
}

impl Part {
    fn new(g: &Graph, w: usize) -> Self {
        let n = g.n();
        let mut absent = Rows::new(n, w);
        for x in 0..n {
            for y in 0..n {
                if x != y && !g.has_edge(x, y) {
                    absent.set(x, y);
                }
            }
        }
        Part {
            out: Rows::new(n, w),
            reach: Rows::new(n, w),
            coreach: Rows::new(n, w),
            absent,
            arcs: 0,
        }
    }

    #[inline]
    fn can_place(&self, u: usize, v: usize) -> bool {
        !self.reach.get(v, u)
    }

    /// Adds `u -> v` and returns the old `coreach(u) + u` and `reach(v) + v`; every
    /// newly reachable pair lies in their product.
    fn place(&mut self, u: usize, v: usize) -> (Vec<u64>, Vec<u64>) {
        self.out.set(u, v);
        self.arcs += 1;
        let mut src = self.coreach.row(u).to_vec();
        src[u / 64] |= 1 << (u % 64);
        let mut dst = self.reach.row(v).to_vec();
        dst[v / 64] |= 1 << (v % 64);
        for x in ones(&src) {
            self.reach.or_into(x, &dst);
        }
        for y in ones(&dst) {
            self.coreach.or_into(y, &src);
        }
        (src, dst)
    }

    fn mark_absent(&mut self, u: usize, v: usize) {
        self.absent.set(u, v);
        self.absent.set(v, u);
    }

    /// Some arc `a -> b` with `a` in `src` and `b` in `dst` has two vertices of
    /// `reach(a) & coreach(b) + {a, b}` that are reachable but absent.
    fn violated_between(&self, class: PartClass, src: &[u64], dst: &[u64]) -> bool {
        let w = self.out.w;
        match class {
            PartClass::Transitive => ones(src).any(|x| {
                self.reach.row(x).iter().zip(self.absent.row(x)).any(|(r, a)| r & a != 0)
            }),
            PartClass::SemiTransitive => {
                let mut m = vec![0u64; w];
                let mut targets = vec![0u64; w];
                for a in ones(src) {
                    for (t, (o, d)) in targets.iter_mut().zip(self.out.row(a).iter().zip(dst)) {
                        *t = o & d;
                    }
                    for b in ones(&targets) {
                        for i in 0..w {
                            m[i] = self.reach.row(a)[i] & self.coreach.row(b)[i];
                        }
                        m[a / 64] |= 1 << (a % 64);
                        m[b / 64] |= 1 << (b % 64);
                        for x in ones(&m) {
                            let (r, ab) = (self.reach.row(x), self.absent.row(x));
                            if (0..w).any(|i| r[i] & ab[i] & m[i] != 0) {
                                return true;
                            }
                        }
                    }
                }
                false
            }
        }
    }

    /// Whether `place(u, v)` broke the part, given the sets it returned.
    fn violated_after_place(&self, class: PartClass, src: &[u64], dst: &[u64]) -> bool {
        self.violated_between(class, src, dst)
    }

    /// Whether marking `{x, y}` absent broke the part.
    fn violated_after_absent(&self, class: PartClass, x: usize, y: usize) -> bool {
        let (x, y) = if self.reach.get(x, y) {
            (x, y)
        } else if self.reach.get(y, x) {
            (y, x)
        } else {
            return false;
        };
        let mut src = self.coreach.row(x).to_vec();
        src[x / 64] |= 1 << (x % 64);
        let mut dst = self.reach.row(y).to_vec();
        dst[y / 64] |= 1 << (y % 64);
        self.violated_between(class, &src, &dst)
    }

    /// Full recheck of every arc, used to test the local checks.
    #[cfg(test)]
    fn violated(&self, class: PartClass, n: usize) -> bool {
        let all: Vec<u64> = (0..self.out.w)
            .map(|i| {
                let lo = i * 64;
                let hi = (lo + 64).min(n);
                if hi <= lo { 0 } else if hi - lo == 64 { u64::MAX } else { (1u64 << (hi - lo)) - 1 }
            })
            .collect();
        self.violated_between(class, &all, &all)
    }

    fn arcs_list(&self, n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|u| ones(self.out.row(u)).map(move |v| (u, v))).collect()
    }
}

/// Edges ordered so that each prefix stays close to a connected, vertex-incremental
/// piece of the graph: BFS from high-degree roots, then by later endpoint.
fn edge_order(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut pos = vec![usize::MAX; n];
    let mut next = 0;
    loop {
        let root = (0..n)
            .filter(|&v| pos[v] == usize::MAX)
            .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)));
        let Some(root) = root else { break };
        pos[root] = next;
        next += 1;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u).ones() {
                if pos[v] == usize::MAX {
                    pos[v] = next;
                    next += 1;
                    queue.push_back(v);
                }
            }
        }
    }
    let mut edges = g.edges();
    edges.sort_by_key(|&(u, v)| {
        let (a, b) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
        (b, a)
    });
    edges
}

/// Finds an orientation of all of `g` in the given class, or proves none exists.
pub(crate) fn orient(
    g: &Graph,
    class: PartClass,
    budget: &mut Budget,
) -> Result<Option<Vec<(usize, usize)>>> {
    let n = g.n();
    let w = n.div_ceil(64).max(1);
    let edges = edge_order(g);
    let mut search = Orienter { class, edges: &edges };
    let assigned = vec![false; edges.len()];
    Ok(search
        .dfs(Part::new(g, w), assigned, budget)?
        .map(|p| p.arcs_list(n)))
}

struct Orienter<'e> {
    class: PartClass,
    edges: &'e [(usize, usize)],
}

impl Orienter<'_> {
    fn try_place(&self, st: &Part, u: usize, v: usize) -> Option<Part> {
        if !st.can_place(u, v) {
            return None;
        }
        let mut t = st.clone();
        let (src, dst) = t.place(u, v);
        (!t.violated_after_place(self.class, &src, &dst)).then_some(t)
    }

    /// Failed-literal probing: fix every edge with only one viable direction.
    fn propagate(&self, st: &mut Part, assigned: &mut [bool]) -> bool {
        loop {
            let mut changed = false;
            for (e, &(a, b)) in self.edges.iter().enumerate() {
                if assigned[e] {
                    continue;
                }
                let fwd = self.try_place(st, a, b);
                let bwd = self.try_place(st, b, a);
                match (fwd, bwd) {
                    (None, None) => return false,
                    (Some(t), None) | (None, Some(t)) => {
                        *st = t;
                        assigned[e] = true;
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn dfs(&mut self, mut st: Part, mut assigned: Vec<bool>, budget: &mut Budget) -> Result<Option<Part>> {
        budget.tick()?;
        if !self.propagate(&mut st, &mut assigned) {
            return Ok(None);
        }
        let Some(e) = assigned.iter().position(|&a| !a) else {
            return Ok(Some(st));
        };
        let (a, b) = self.edges[e];
        // Reversing every arc preserves both classes, so the first free choice is fixed.
        let options: &[(usize, usize)] = if st.arcs == 0 { &[(a, b)] } else { &[(a, b), (b, a)] };
        for &(u, v) in options {
            if let Some(t) = self.try_place(&st, u, v) {
                let mut next = assigned.clone();
                next[e] = true;
                if let Some(found) = self.dfs(t, next, budget)? {
                    return Ok(Some(found));
                }
            }
        }
        Ok(None)
    }
}

/// Searches for `k` spanning parts of the given class whose arcs cover every edge.
///
/// With `overlap` an edge may belong to several parts. Returns the arcs of each
/// part, `None` when the search space is exhausted.
pub(crate) fn cover(
    g: &Graph,
    k: usize,
    class: PartClass,
    overlap: bool,
    budget: &mut Budget,
) -> Result<Option<Vec<Vec<(usize, usize)>>>> {
    if k == 0 {
        return Ok(if g.has_edges() { None } else { Some(Vec::new()) });
    }
    let n = g.n();
    let w = n.div_ceil(64).max(1);
    let mut masks: Vec<u32> = (1..(1u32 << k))
        .filter(|m| overlap || m.count_ones() == 1)
        .collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let edges = edge_order(g);
    let c = Coverer { class, k, edges: &edges, masks };
    let parts = vec![Part::new(g, w); k];
    Ok(c.dfs(0, parts, budget)?
        .map(|ps| ps.iter().map(|p| p.arcs_list(n)).collect()))
}

struct Coverer<'e> {
    class: PartClass,
    k: usize,
    edges: &'e [(usize, usize)],
    masks: Vec<u32>,
}

impl Coverer<'_> {
    fn dfs(&self, idx: usize, parts: Vec<Part>, budget: &mut Budget) -> Result<Option<Vec<Part>>> {
        budget.tick()?;
        if idx == self.edges.len() {
            return Ok(Some(parts));
        }
        let (a, b) = self.edges[idx];
        let empties: Vec<usize> = (0..self.k).filter(|&p| parts[p].arcs == 0).collect();
        for &mask in &self.masks {
            // Parts without arcs are interchangeable: only open a prefix of them.
            let opened = empties.iter().filter(|&&p| mask >> p & 1 == 1).count();
            if !empties[..opened].iter().all(|&p| mask >> p & 1 == 1) {
                continue;
            }
            let members: Vec<usize> = (0..self.k).filter(|&p| mask >> p & 1 == 1).collect();
            let mut base = parts.clone();
            let mut dead = false;
            for p in 0..self.k {
                if mask >> p & 1 == 0 {
                    base[p].mark_absent(a, b);
                    if base[p].violated_after_absent(self.class, a, b) {
                        dead = true;
                        break;
                    }
                }
            }
            if dead {
                continue;
            }
            if let Some(found) = self.directions(idx, &members, 0, base, budget)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    fn directions(
        &self,
        idx: usize,
        members: &[usize],
        i: usize,
        parts: Vec<Part>,
        budget: &mut Budget,
    ) -> Result<Option<Vec<Part>>> {
        if i == members.len() {
            return self.dfs(idx + 1, parts, budget);
        }
        let (a, b) = self.edges[idx];
        let p = members[i];
        let options: Vec<(usize, usize)> = if parts[p].reach.get(a, b) {
            vec![(a, b)]
        } else if parts[p].reach.get(b, a) {
            vec![(b, a)]
        } else if parts[p].arcs == 0 {
            vec![(a, b)]
        } else {
            vec![(a, b), (b, a)]
        };
        for (u, v) in options {
            if !parts[p].can_place(u, v) {
                continue;
            }
            let mut next = parts.clone();
            let (src, dst) = next[p].place(u, v);
            if next[p].violated_after_place(self.class, &src, &dst) {
                continue;
            }
            if let Some(found) = self.directions(idx, members, i + 1, next, budget)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Orientation;
    use crate::recognition::check::{check_semi_transitive, check_transitive};

    fn orient_ok(g: &Graph, class: PartClass) -> Option<Orientation> {
        orient(g, class, &mut Budget::unlimited())
            .unwrap()
            .map(|arcs| Orientation::new(g.clone(), &arcs).unwrap())
    }

    #[test]
    fn orient_small_cases() {
        let c5 = Graph::cycle(5);
        assert!(check_semi_transitive(&orient_ok(&c5, PartClass::SemiTransitive).unwrap()));
        assert!(orient_ok(&c5, PartClass::Transitive).is_none());
        assert!(orient_ok(&Graph::wheel(5), PartClass::SemiTransitive).is_none());
        let c6 = Graph::cycle(6);
        assert!(check_transitive(&orient_ok(&c6, PartClass::Transitive).unwrap()));
    }

    #[test]
    fn cover_of_w5_needs_two_parts() {
        let w5 = Graph::wheel(5);
        let mut b = Budget::unlimited();
        assert!(cover(&w5, 1, PartClass::SemiTransitive, true, &mut b).unwrap().is_none());
        let parts = cover(&w5, 2, PartClass::SemiTransitive, true, &mut b).unwrap().unwrap();
        assert_eq!(parts.len(), 2);
        let mut covered = Graph::empty(6);
        for arcs in &parts {
            let edges: Vec<_> = arcs.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
            let part = w5.spanning_subgraph(&edges).unwrap();
            assert!(check_semi_transitive(&Orientation::new(part.clone(), arcs).unwrap()));
            covered = covered.edge_union(&part).unwrap();
        }
        assert_eq!(covered, w5);
    }

    #[test]
    fn local_checks_agree_with_full_recheck() {
        use rand::seq::SliceRandom;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut rejected = 0;
        for _ in 0..300 {
            let n = rng.random_range(3..9);
            let pairs: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let chosen: Vec<_> = pairs.into_iter().filter(|_| rng.random_bool(0.6)).collect();
            let g = Graph::from_edges(n, &chosen).unwrap();
            let mut edges = g.edges();
            edges.shuffle(&mut rng);
            for class in [PartClass::SemiTransitive, PartClass::Transitive] {
                let mut p = Part::new(&g, 1);
                for &(a, b) in &edges {
                    let (u, v) = if rng.random_bool(0.5) { (a, b) } else { (b, a) };
                    if rng.random_bool(0.3) {
                        let mut t = p.clone();
                        t.mark_absent(u, v);
                        assert_eq!(t.violated_after_absent(class, u, v), t.violated(class, n));
                        if t.violated(class, n) {
                            rejected += 1;
                        } else {
                            p = t;
                        }
                    } else if p.can_place(u, v) {
                        let mut t = p.clone();
                        let (src, dst) = t.place(u, v);
                        assert_eq!(t.violated_after_place(class, &src, &dst), t.violated(class, n));
                        if t.violated(class, n) {
                            rejected += 1;
                        } else {
                            p = t;
                        }
                    }
                }
            }
        }
        assert!(rejected > 100, "only {rejected} rejected steps");
    }

    #[test]
    fn budget_is_enforced() {
        let mut b = Budget::new(Some(3));
        assert_eq!(
            cover(&Graph::wheel(5), 2, PartClass::SemiTransitive, true, &mut b).unwrap_err(),
            Error::BudgetExhausted(3)
        );
    }
}

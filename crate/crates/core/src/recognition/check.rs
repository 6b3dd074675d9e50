//! Polynomial checkers for orientation certificates.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::graph::Orientation;

/// Why an orientation fails a checker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A directed cycle, listed in arc order.
    Cycle(Vec<usize>),
    /// Arc `from -> to` plus a directed path through `a ⇝ b` with `a -> b` missing.
    Shortcut { from: usize, to: usize, a: usize, b: usize },
    /// `a -> b -> c` without the arc `a -> c`.
    Intransitive { a: usize, b: usize, c: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Cycle(c) => write!(f, "directed cycle through {c:?}"),
            Violation::Shortcut { from, to, a, b } => write!(
                f,
                "shortcut on arc {from}->{to}: {a} reaches {b} inside it but {a}->{b} is missing"
            ),
            Violation::Intransitive { a, b, c } => {
                write!(f, "{a}->{b}->{c} without {a}->{c}")
            }
        }
    }
}

fn topological_order(o: &Orientation) -> Result<Vec<usize>, Vec<usize>> {
    let n = o.n();
    let mut indeg = vec![0usize; n];
    for u in 0..n {
        for v in o.out_neighbors(u).ones() {
            indeg[v] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for v in o.out_neighbors(u).ones() {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // Every leftover vertex has a leftover in-neighbour; walk back to a cycle.
    let left: Vec<bool> = (0..n).map(|v| indeg[v] > 0).collect();
    let start = left.iter().position(|&l| l).expect("leftover vertex");
    let pred = |v: usize| (0..n).find(|&u| left[u] && o.has_arc(u, v)).expect("leftover pred");
    let mut seen = vec![usize::MAX; n];
    let mut walk = Vec::new();
    let mut v = start;
    while seen[v] == usize::MAX {
        seen[v] = walk.len();
        walk.push(v);
        v = pred(v);
    }
    let mut cycle = walk[seen[v]..].to_vec();
    cycle.reverse();
    Err(cycle)
}

/// Strict reachability sets and co-reachability sets of an acyclic orientation.
pub(crate) fn closures(o: &Orientation, order: &[usize]) -> (Vec<FixedBitSet>, Vec<FixedBitSet>) {
    let n = o.n();
    let mut reach = vec![FixedBitSet::with_capacity(n); n];
    for &u in order.iter().rev() {
        let mut r = FixedBitSet::with_capacity(n);
        for v in o.out_neighbors(u).ones() {
            r.insert(v);
            r.union_with(&reach[v]);
        }
        reach[u] = r;
    }
    let mut coreach = vec![FixedBitSet::with_capacity(n); n];
    for u in 0..n {
        for v in reach[u].ones() {
            coreach[v].insert(u);
        }
    }
    (reach, coreach)
}

/// First violation of semi-transitivity, if any.
///
/// For each arc `u -> v` the vertices lying on directed `u ⇝ v` paths form
/// `M = ({u} ∪ reach(u)) ∩ ({v} ∪ coreach(v))`; the arc is shortcut-free iff every
/// reachable pair inside `M` is joined by a direct arc.
pub fn semi_transitive_violation(o: &Orientation) -> Option<Violation> {
    let order = match topological_order(o) {
        Ok(order) => order,
        Err(cycle) => return Some(Violation::Cycle(cycle)),
    };
    let (reach, coreach) = closures(o, &order);
    for u in 0..o.n() {
        for v in o.out_neighbors(u).ones() {
            let mut m = reach[u].clone();
            m.intersect_with(&coreach[v]);
            if m.is_clear() {
                continue;
            }
            m.insert(u);
            m.insert(v);
            for a in m.ones() {
                for b in reach[a].intersection(&m) {
                    if !o.has_arc(a, b) {
                        return Some(Violation::Shortcut { from: u, to: v, a, b });
                    }
                }
            }
        }
    }
    None
}

pub fn check_semi_transitive(o: &Orientation) -> bool {
    semi_transitive_violation(o).is_none()
}

/// First violation of transitivity, if any.
pub fn transitive_violation(o: &Orientation) -> Option<Violation> {
    for a in 0..o.n() {
        let out_a = o.out_neighbors(a);
        for b in out_a.ones() {
            if let Some(c) = o.out_neighbors(b).difference(out_a).next() {
                return Some(Violation::Intransitive { a, b, c });
            }
        }
    }
    None
}

pub fn check_transitive(o: &Orientation) -> bool {
    transitive_violation(o).is_none()
}

pub fn is_acyclic(o: &Orientation) -> bool {
    topological_order(o).is_ok()
}

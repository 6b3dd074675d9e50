//! Brute-force oracles shared by the integration tests. None of them use the
//! library's recognizers.

#![allow(dead_code)]

use rand::Rng;
use wordrep::Graph;

/// Every simple directed path, as vertex sequences of length >= 2.
fn directed_paths(n: usize, out: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn extend(path: &mut Vec<usize>, on: &mut Vec<bool>, out: &[Vec<bool>], acc: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        for next in 0..out.len() {
            if out[last][next] && !on[next] {
                path.push(next);
                on[next] = true;
                acc.push(path.clone());
                extend(path, on, out, acc);
                on[next] = false;
                path.pop();
            }
        }
    }
    let mut acc = Vec::new();
    for s in 0..n {
        let mut on = vec![false; n];
        on[s] = true;
        extend(&mut vec![s], &mut on, out, &mut acc);
    }
    acc
}

fn out_matrix(n: usize, arcs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut out = vec![vec![false; n]; n];
    for &(u, v) in arcs {
        out[u][v] = true;
    }
    out
}

/// The definition read literally: no directed cycle, and every directed path
/// `v1 -> ... -> vk` whose ends are joined by `v1 -> vk` has all arcs `vi -> vj`, `i < j`.
pub fn semi_transitive_oracle(n: usize, arcs: &[(usize, usize)]) -> bool {
    let out = out_matrix(n, arcs);
    for p in directed_paths(n, &out) {
        let (first, last) = (p[0], *p.last().unwrap());
        if out[last][first] {
            return false;
        }
        if out[first][last] {
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    if !out[p[i]][p[j]] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn transitive_oracle(n: usize, arcs: &[(usize, usize)]) -> bool {
    let out = out_matrix(n, arcs);
    (0..n).all(|a| (0..n).all(|b| !out[a][b] || (0..n).all(|c| !out[b][c] || out[a][c])))
}

/// All `2^|E|` orientations of `g`, each as an arc list.
pub fn all_orientations(g: &Graph) -> impl Iterator<Item = Vec<(usize, usize)>> {
    let edges = g.edges();
    (0u64..1 << edges.len()).map(move |mask| {
        edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| if mask >> i & 1 == 1 { (v, u) } else { (u, v) })
            .collect()
    })
}

pub fn random_orientation(g: &Graph, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    g.edges()
        .into_iter()
        .map(|(u, v)| if rng.random_bool(0.5) { (u, v) } else { (v, u) })
        .collect()
}

pub fn brute_wr(g: &Graph) -> bool {
    all_orientations(g).any(|arcs| semi_transitive_oracle(g.n(), &arcs))
}

pub fn brute_comparability(g: &Graph) -> bool {
    all_orientations(g).any(|arcs| transitive_oracle(g.n(), &arcs))
}

pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Every labelled graph on `n` vertices, built from edge masks.
pub fn labelled(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let e: Vec<_> = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
            Graph::from_edges(n, &e).unwrap()
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of graphs on `n <= 7` vertices,
/// by minimising the edge mask over all relabellings.
pub fn isomorphism_classes(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let index = |a: usize, b: usize| {
        let (i, j) = (a.min(b), a.max(b));
        j * (j - 1) / 2 + i
    };
    let perms = permutations(n);
    let maps: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(i, j)| index(p[i], p[j])).collect())
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    for mask in 0u64..1 << pairs.len() {
        let canon = maps
            .iter()
            .map(|m| m.iter().enumerate().fold(0u64, |acc, (b, &t)| acc | ((mask >> b & 1) << t)))
            .min()
            .unwrap();
        seen.insert(canon);
    }
    seen.into_iter()
        .map(|mask| {
            let e: Vec<_> = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
            Graph::from_edges(n, &e).unwrap()
        })
        .collect()
}

/// The edges of C5 as two paths, both bipartite.
pub fn c5_two_path_split() -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    (vec![(0, 1), (1, 2)], vec![(2, 3), (3, 4), (0, 4)])
}

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation};
use crate::recognition::search::Budget;

/// A finite sequence of vertex ids.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn positions(&self, n: usize) -> Result<Vec<Vec<usize>>> {
        let mut pos = vec![Vec::new(); n];
        for (i, &x) in self.0.iter().enumerate() {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
            pos[x].push(i);
        }
        Ok(pos)
    }

    /// Orients each edge of `g` from the letter whose first occurrence comes first.
    ///
    /// For a uniform word-representant of `g` this is a semi-transitive orientation.
    pub fn first_occurrence_orientation(&self, g: &Graph) -> Result<Orientation> {
        let mut first = vec![usize::MAX; g.n()];
        for (i, &x) in self.0.iter().enumerate() {
            g.check_vertex(x)?;
            if first[x] == usize::MAX {
                first[x] = i;
            }
        }
        if let Some(v) = first.iter().position(|&f| f == usize::MAX) {
            return Err(Error::LetterAbsent(v));
        }
        Ok(Orientation::by_key(g.clone(), |v| first[v]))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

fn merged_alternate(px: &[usize], py: &[usize]) -> bool {
    // Two sorted position lists alternate iff their counts differ by at most one
    // and the interleaving never repeats a side.
    if px.len().abs_diff(py.len()) > 1 {
        return false;
    }
    let (first, second) = if px[0] < py[0] { (px, py) } else { (py, px) };
    if first.len() < second.len() {
        return false;
    }
    for i in 0..second.len() {
        if second[i] < first[i] {
            return false;
        }
        if i + 1 < first.len() && first[i + 1] < second[i] {
            return false;
        }
    }
    true
}

/// True iff the subsequence of `w` on `{x, y}` strictly alternates.
pub fn alternates(w: &Word, x: usize, y: usize) -> Result<bool> {
    if x == y {
        return Err(Error::precondition("alternation needs two distinct letters"));
    }
    let px: Vec<usize> = w.0.iter().enumerate().filter(|&(_, &l)| l == x).map(|(i, _)| i).collect();
    let py: Vec<usize> = w.0.iter().enumerate().filter(|&(_, &l)| l == y).map(|(i, _)| i).collect();
    if px.is_empty() {
        return Err(Error::LetterAbsent(x));
    }
    if py.is_empty() {
        return Err(Error::LetterAbsent(y));
    }
    Ok(merged_alternate(&px, &py))
}

/// The graph on `0..n` whose edges are the alternating letter pairs of `w`.
pub fn graph_of_word(w: &Word, n: usize) -> Result<Graph> {
    let pos = w.positions(n)?;
    if let Some(v) = pos.iter().position(|p| p.is_empty()) {
        return Err(Error::LetterAbsent(v));
    }
    let mut g = Graph::empty(n);
    for x in 0..n {
        for y in x + 1..n {
            if merged_alternate(&pos[x], &pos[y]) {
                g.insert_edge(x, y);
            }
        }
    }
    Ok(g)
}

pub fn word_represents(w: &Word, g: &Graph) -> Result<bool> {
    Ok(graph_of_word(w, g.n())? == *g)
}

/// Searches for a `k`-uniform word-representant of `g` for `k = 1..=max_occurrence`.
///
/// `None` does not prove non-representability.
pub fn find_word(g: &Graph, max_occurrence: usize) -> Option<Word> {
    find_word_with(g, max_occurrence, &mut Budget::new(Some(2_000_000))).ok().flatten()
}

pub fn find_word_with(
    g: &Graph,
    max_occurrence: usize,
    budget: &mut Budget,
) -> Result<Option<Word>> {
    let n = g.n();
    if n == 0 {
        return Ok(Some(Word(Vec::new())));
    }
    for k in 1..=max_occurrence {
        let mut s = WordSearch::new(g, k);
        if s.run(budget)? {
            let w = Word(s.word);
            debug_assert!(word_represents(&w, g).unwrap());
            return Ok(Some(w));
        }
    }
    Ok(None)
}

struct WordSearch<'g> {
    g: &'g Graph,
    k: usize,
    word: Vec<usize>,
    count: Vec<usize>,
    last: Vec<Option<usize>>,
    broken: Vec<FixedBitSet>,
}

impl<'g> WordSearch<'g> {
    fn new(g: &'g Graph, k: usize) -> Self {
        let n = g.n();
        WordSearch {
            g,
            k,
            word: Vec::with_capacity(n * k),
            count: vec![0; n],
            last: vec![None; n],
            broken: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    /// Ends with `x` when restricted to `{x, y}`.
    fn ends_with(&self, x: usize, y: usize) -> bool {
        match (self.last[x], self.last[y]) {
            (Some(a), Some(b)) => a > b,
            (Some(_), None) => true,
            _ => false,
        }
    }

    fn run(&mut self, budget: &mut Budget) -> Result<bool> {
        let n = self.g.n();
        // Cyclic shifts of a uniform representant represent the same graph.
        self.push(0);
        let found = self.dfs(budget)?;
        if !found {
            self.word.clear();
        }
        Ok(found || n == 0)
    }

    fn push(&mut self, x: usize) -> Vec<usize> {
        let mut newly_broken = Vec::new();
        for y in 0..self.g.n() {
            if y != x && !self.g.has_edge(x, y) && !self.broken[x].contains(y) && self.ends_with(x, y) {
                self.broken[x].insert(y);
                self.broken[y].insert(x);
                newly_broken.push(y);
            }
        }
        self.word.push(x);
        self.count[x] += 1;
        newly_broken
    }

    fn pop(&mut self, x: usize, prev_last: Option<usize>, newly_broken: Vec<usize>) {
        self.word.pop();
        self.count[x] -= 1;
        self.last[x] = prev_last;
        for y in newly_broken {
            self.broken[x].set(y, false);
            self.broken[y].set(x, false);
        }
    }

    fn dfs(&mut self, budget: &mut Budget) -> Result<bool> {
        // `push` leaves `last` for the caller; fix up the most recent letter.
        if let Some(&x) = self.word.last() {
            self.last[x] = Some(self.word.len() - 1);
        }
        budget.tick()?;
        let n = self.g.n();
        if self.word.len() == n * self.k {
            return Ok(self.all_non_edges_broken());
        }
        for x in 0..n {
            if self.count[x] == self.k {
                continue;
            }
            let blocked = self.g.neighbors(x).ones().any(|y| self.ends_with(x, y));
            if blocked {
                continue;
            }
            let prev_last = self.last[x];
            let nb = self.push(x);
            if self.count[x] == self.k && self.dead_pair_after_completion(x) {
                self.pop(x, prev_last, nb);
                continue;
            }
            if self.dfs(budget)? {
                return Ok(true);
            }
            self.pop(x, prev_last, nb);
        }
        Ok(false)
    }

    fn dead_pair_after_completion(&self, x: usize) -> bool {
        (0..self.g.n()).any(|y| {
            y != x && !self.g.has_edge(x, y) && self.count[y] == self.k && !self.broken[x].contains(y)
        })
    }

    fn all_non_edges_broken(&self) -> bool {
        let n = self.g.n();
        (0..n).all(|x| (x + 1..n).all(|y| self.g.has_edge(x, y) || self.broken[x].contains(y)))
    }
}

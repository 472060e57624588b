//! Finite posets given by cover relations.
//!
//! The reflexive-transitive closure is materialized once at construction as
//! one down-set bitset per element, so `Π_α` queries are a lookup and `Π^α`
//! is a column scan. Element order in `labels` is the canonical index order:
//! every enumeration in this crate breaks ties by it.

use std::collections::{BinaryHeap, HashMap};
use std::cmp::Reverse;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on enumerated linear extensions / admissible permutations.
pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("cover relations contain a cycle through `{0}`")]
    Cycle(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("query contains `{0}` more than once")]
    DuplicateQuery(String),
    #[error("enumeration exceeded the cap of {0} items")]
    CapExceeded(usize),
    #[error("a poset needs at least one element")]
    Empty,
    #[error("grid dimensions must be at least 1")]
    InvalidGrid,
}

/// A subset of `{0, .., universe-1}` stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: Vec<u64>,
    universe: usize,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            words: vec![0; universe.div_ceil(64)],
            universe,
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Self {
        let mut set = ElementSet::empty(universe);
        for i in items {
            set.insert(i);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.universe, "element {i} outside universe {}", self.universe);
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }

    pub fn remove(&mut self, i: usize) -> bool {
        if i >= self.universe {
            return false;
        }
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let present = self.words[w] & b != 0;
        self.words[w] &= !b;
        present
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn difference_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(wi * 64 + bit)
            })
        })
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Orders on the `width × height` grid of pairs `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridOrder {
    /// `(i1,j1) ⪯ (i2,j2)` iff `i1 ≤ i2` and `j1 ≤ j2`.
    Product,
    /// `(i1,j1) ⪯ (i2,j2)` iff `i1 ≤ i2` and `j1 = j2`: one chain per row `j`.
    Rows,
}

pub fn grid_label(i: usize, j: usize) -> String {
    format!("({i},{j})")
}

/// A finite partially ordered set.
#[derive(Clone)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    covers: Vec<(usize, usize)>,
    below: Vec<ElementSet>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("labels", &self.labels)
            .field("covers", &self.covers)
            .finish()
    }
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.below == other.below
    }
}

impl Poset {
    /// Builds a poset from labels and `(lower, upper)` cover pairs given by label.
    pub fn new<S: AsRef<str>>(labels: &[S], covers: &[(S, S)]) -> Result<Self, PosetError> {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_owned()).collect();
        let index = index_labels(&labels)?;
        let mut idx_covers = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            let lookup = |s: &str| {
                index
                    .get(s)
                    .copied()
                    .ok_or_else(|| PosetError::UnknownElement(s.to_owned()))
            };
            idx_covers.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Self::build(labels, index, idx_covers)
    }

    /// Same as [`Poset::new`] with covers given by canonical index.
    pub fn from_indices(labels: Vec<String>, covers: Vec<(usize, usize)>) -> Result<Self, PosetError> {
        let index = index_labels(&labels)?;
        if let Some(&(a, b)) = covers.iter().find(|&&(a, b)| a >= labels.len() || b >= labels.len()) {
            return Err(PosetError::UnknownElement(format!("#{}", a.max(b))));
        }
        Self::build(labels, index, covers)
    }

    fn build(
        labels: Vec<String>,
        index: HashMap<String, usize>,
        covers: Vec<(usize, usize)>,
    ) -> Result<Self, PosetError> {
        let n = labels.len();
        if n == 0 {
            return Err(PosetError::Empty);
        }
        if let Some(&(a, _)) = covers.iter().find(|(a, b)| a == b) {
            return Err(PosetError::Cycle(labels[a].clone()));
        }
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut succs: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &covers {
            preds[b].push(a);
            succs[a].push(b);
        }

        // Kahn's algorithm; the closure is filled in topological order.
        let mut indegree: Vec<usize> = preds.iter().map(Vec::len).collect();
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&v| indegree[v] == 0).map(Reverse).collect();
        let mut below: Vec<ElementSet> = (0..n).map(|_| ElementSet::empty(n)).collect();
        let mut done = vec![false; n];
        let mut processed = 0;
        while let Some(Reverse(v)) = ready.pop() {
            let mut set = ElementSet::empty(n);
            set.insert(v);
            for &p in &preds[v] {
                set.union_with(&below[p]);
            }
            below[v] = set;
            done[v] = true;
            processed += 1;
            for &s in &succs[v] {
                indegree[s] -= 1;
                if indegree[s] == 0 {
                    ready.push(Reverse(s));
                }
            }
        }
        if processed < n {
            // Walking unresolved predecessors n times is guaranteed to land on a cycle.
            let mut v = (0..n).find(|&v| !done[v]).expect("unprocessed element");
            for _ in 0..n {
                v = *preds[v].iter().find(|&&p| !done[p]).expect("unresolved predecessor");
            }
            return Err(PosetError::Cycle(labels[v].clone()));
        }

        Ok(Poset {
            labels,
            index,
            covers,
            below,
        })
    }

    /// The `n × n` grid with the requested order.
    pub fn grid(n: usize, order: GridOrder) -> Result<Self, PosetError> {
        Self::grid_rect(n, n, order)
    }

    /// The `width × height` grid `{(i, j) : 1 ≤ i ≤ width, 1 ≤ j ≤ height}`.
    ///
    /// Canonical order is `i`-major: `(1,1), (1,2), .., (1,height), (2,1), ..`.
    pub fn grid_rect(width: usize, height: usize, order: GridOrder) -> Result<Self, PosetError> {
        if width == 0 || height == 0 {
            return Err(PosetError::InvalidGrid);
        }
        let at = |i: usize, j: usize| (i - 1) * height + (j - 1);
        let mut labels = Vec::with_capacity(width * height);
        let mut covers = Vec::new();
        for i in 1..=width {
            for j in 1..=height {
                labels.push(grid_label(i, j));
                if i < width {
                    covers.push((at(i, j), at(i + 1, j)));
                }
                if order == GridOrder::Product && j < height {
                    covers.push((at(i, j), at(i, j + 1)));
                }
            }
        }
        Self::from_indices(labels, covers)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn index_of(&self, label: &str) -> Result<usize, PosetError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| PosetError::UnknownElement(label.to_owned()))
    }

    /// `a ⪯ b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    /// `a ≺ b`.
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// `Π_a = {b : b ⪯ a}`.
    pub fn down_set(&self, a: usize) -> &ElementSet {
        &self.below[a]
    }

    /// `Π^a = {b : a ⪯ b}`.
    pub fn up_set(&self, a: usize) -> ElementSet {
        ElementSet::from_indices(self.len(), (0..self.len()).filter(|&b| self.below[b].contains(a)))
    }

    pub fn down_set_of(&self, label: &str) -> Result<&ElementSet, PosetError> {
        Ok(self.down_set(self.index_of(label)?))
    }

    pub fn up_set_of(&self, label: &str) -> Result<ElementSet, PosetError> {
        Ok(self.up_set(self.index_of(label)?))
    }

    /// All pairs `(a, b)` with `a ⪯ b`, in canonical order.
    pub fn closure_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<_> = (0..self.len())
            .flat_map(|b| self.below[b].iter().map(move |a| (a, b)))
            .collect();
        pairs.sort_unstable();
        pairs
    }

    /// The same ground set with every relation flipped.
    pub fn reversed(&self) -> Poset {
        let covers = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        Poset::from_indices(self.labels.clone(), covers).expect("reversal of a valid poset")
    }

    /// The subposet induced on `elements`, relabeled in the order given.
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let labels = elements.iter().map(|&a| self.labels[a].clone()).collect();
        let mut covers = Vec::new();
        for (p, &a) in elements.iter().enumerate() {
            for (q, &b) in elements.iter().enumerate() {
                if self.lt(a, b) {
                    covers.push((p, q));
                }
            }
        }
        Poset::from_indices(labels, covers).expect("induced subposet of a valid poset")
    }

    /// Every linear extension as a sequence of elements, in lexicographic
    /// order of canonical indices.
    pub fn linear_extensions(&self, cap: usize) -> Enumeration {
        let n = self.len();
        let preds = (0..n)
            .map(|a| {
                let mut s = self.below[a].clone();
                s.remove(a);
                s
            })
            .collect();
        Enumeration::new(Backtrack::new(preds, (0..n).collect()), cap)
    }

    /// Permutations `π` of the query positions with `β_k ≺ β_j ⇒ π⁻¹(k) < π⁻¹(j)`.
    ///
    /// Each item is the sequence of query positions `π(1), .., π(n)` (0-based).
    /// Order is lexicographic in the canonical indices of `β_{π(1)}, .., β_{π(n)}`.
    pub fn admissible_permutations(&self, query: &QuerySet, cap: usize) -> Enumeration {
        let b = query.elements();
        let k = b.len();
        let preds = (0..k)
            .map(|p| ElementSet::from_indices(k, (0..k).filter(|&q| self.lt(b[q], b[p]))))
            .collect();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&p| b[p]);
        Enumeration::new(Backtrack::new(preds, order), cap)
    }

    /// Number of linear extensions by dynamic programming over down-closed
    /// subsets. Independent of [`Poset::linear_extensions`]; `None` above 24 elements.
    pub fn count_linear_extensions(&self) -> Option<u128> {
        let n = self.len();
        if n > 24 {
            return None;
        }
        let strict_below: Vec<u32> = (0..n)
            .map(|a| {
                self.below[a]
                    .iter()
                    .filter(|&b| b != a)
                    .fold(0u32, |m, b| m | (1 << b))
            })
            .collect();
        let mut ways = vec![0u128; 1 << n];
        ways[0] = 1;
        for mask in 0..(1usize << n) {
            let w = ways[mask];
            if w == 0 {
                continue;
            }
            for a in 0..n {
                let bit = 1usize << a;
                if mask & bit == 0 && (strict_below[a] as usize) & !mask == 0 {
                    ways[mask | bit] += w;
                }
            }
        }
        Some(ways[(1 << n) - 1])
    }
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>, PosetError> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(PosetError::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

/// The ordered query nodes `β_1, .., β_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuerySet {
    elements: Vec<usize>,
}

impl QuerySet {
    pub fn new<S: AsRef<str>>(poset: &Poset, labels: &[S]) -> Result<Self, PosetError> {
        let elements = labels
            .iter()
            .map(|l| poset.index_of(l.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_indices(poset, elements)
    }

    pub fn from_indices(poset: &Poset, elements: Vec<usize>) -> Result<Self, PosetError> {
        let mut seen = ElementSet::empty(poset.len());
        for &e in &elements {
            if e >= poset.len() {
                return Err(PosetError::UnknownElement(format!("#{e}")));
            }
            if !seen.insert(e) {
                return Err(PosetError::DuplicateQuery(poset.label(e).to_owned()));
            }
        }
        Ok(QuerySet { elements })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Lexicographic backtracking over the linear extensions of `k` items with
/// strict-predecessor sets `preds`; candidates are tried in `order`.
struct Backtrack {
    preds: Vec<ElementSet>,
    order: Vec<usize>,
    seq: Vec<usize>,
    placed: ElementSet,
    cursor: Vec<usize>,
    started: bool,
    done: bool,
}

impl Backtrack {
    fn new(preds: Vec<ElementSet>, order: Vec<usize>) -> Self {
        let k = preds.len();
        Backtrack {
            preds,
            order,
            seq: Vec::with_capacity(k),
            placed: ElementSet::empty(k),
            cursor: vec![0; k + 1],
            started: false,
            done: false,
        }
    }

    fn pop(&mut self) {
        if let Some(item) = self.seq.pop() {
            self.placed.remove(item);
        }
    }

    fn next_extension(&mut self) -> Option<Vec<usize>> {
        let k = self.preds.len();
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if k == 0 {
                self.done = true;
                return Some(Vec::new());
            }
        } else {
            self.pop();
        }
        loop {
            let depth = self.seq.len();
            let mut found = None;
            while self.cursor[depth] < k {
                let item = self.order[self.cursor[depth]];
                self.cursor[depth] += 1;
                if !self.placed.contains(item) && self.preds[item].is_subset(&self.placed) {
                    found = Some(item);
                    break;
                }
            }
            match found {
                Some(item) => {
                    self.seq.push(item);
                    self.placed.insert(item);
                    if self.seq.len() == k {
                        return Some(self.seq.clone());
                    }
                    self.cursor[depth + 1] = 0;
                }
                None if depth == 0 => {
                    self.done = true;
                    return None;
                }
                None => self.pop(),
            }
        }
    }
}

/// A capped enumeration. After `cap` items, yields `Err(CapExceeded)` once
/// if more would follow, then stops.
pub struct Enumeration {
    inner: Backtrack,
    cap: usize,
    yielded: usize,
    finished: bool,
}

impl Enumeration {
    fn new(inner: Backtrack, cap: usize) -> Self {
        Enumeration {
            inner,
            cap,
            yielded: 0,
            finished: false,
        }
    }

    /// Collects everything or fails with `CapExceeded`.
    pub fn collect_all(self) -> Result<Vec<Vec<usize>>, PosetError> {
        self.collect()
    }
}

impl Iterator for Enumeration {
    type Item = Result<Vec<usize>, PosetError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.finished {
            return None;
        }
        match self.inner.next_extension() {
            None => {
                self.finished = true;
                None
            }
            Some(_) if self.yielded == self.cap => {
                self.finished = true;
                Some(Err(PosetError::CapExceeded(self.cap)))
            }
            Some(seq) => {
                self.yielded += 1;
                Some(Ok(seq))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> Poset {
        Poset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    fn antichain(k: usize) -> Poset {
        Poset::from_indices((0..k).map(|i| format!("x{i}")).collect(), vec![]).unwrap()
    }

    #[test]
    fn singleton_closure() {
        let p = Poset::new(&["a"], &[]).unwrap();
        assert_eq!(p.closure_pairs(), vec![(0, 0)]);
    }

    #[test]
    fn chain_closure_has_six_pairs() {
        let p = chain3();
        assert_eq!(p.closure_pairs().len(), 6);
        assert!(p.lt(0, 2));
        assert!(!p.leq(2, 0));
    }

    #[test]
    fn three_cycle_rejected() {
        let err = Poset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap_err();
        assert!(matches!(err, PosetError::Cycle(_)));
        let err = Poset::new(&["a"], &[("a", "a")]).unwrap_err();
        assert_eq!(err, PosetError::Cycle("a".into()));
    }

    #[test]
    fn cycle_behind_acyclic_prefix_is_found() {
        let err = Poset::new(&["r", "a", "b"], &[("r", "a"), ("a", "b"), ("b", "a")]).unwrap_err();
        match err {
            PosetError::Cycle(l) => assert!(l == "a" || l == "b"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_and_unknown_labels() {
        assert_eq!(
            Poset::new(&["a", "a"], &[]).unwrap_err(),
            PosetError::DuplicateLabel("a".into())
        );
        assert_eq!(
            Poset::new(&["a"], &[("a", "z")]).unwrap_err(),
            PosetError::UnknownElement("z".into())
        );
    }

    #[test]
    fn grid_shapes() {
        let g1 = Poset::grid(1, GridOrder::Product).unwrap();
        assert_eq!(g1.len(), 1);

        let g = Poset::grid(2, GridOrder::Product).unwrap();
        let i = |l: &str| g.index_of(l).unwrap();
        assert_eq!(g.len(), 4);
        for l in ["(1,2)", "(2,1)", "(2,2)"] {
            assert!(g.lt(i("(1,1)"), i(l)));
        }
        assert!(!g.comparable(i("(1,2)"), i("(2,1)")));
        assert_eq!(g.down_set(i("(2,2)")).len(), 4);

        let r = Poset::grid(2, GridOrder::Rows).unwrap();
        let j = |l: &str| r.index_of(l).unwrap();
        assert_eq!(r.closure_pairs().len(), 6);
        assert_eq!(
            r.down_set(j("(2,1)")),
            &ElementSet::from_indices(4, [j("(1,1)"), j("(2,1)")])
        );
        assert!(!r.comparable(j("(1,1)"), j("(2,2)")));
        assert_eq!(Poset::grid(0, GridOrder::Rows).unwrap_err(), PosetError::InvalidGrid);
    }

    #[test]
    fn down_and_up_sets() {
        let p = chain3();
        assert_eq!(p.down_set_of("b").unwrap(), &ElementSet::from_indices(3, [0, 1]));
        assert_eq!(p.up_set_of("b").unwrap(), ElementSet::from_indices(3, [1, 2]));
        assert!(p.down_set_of("q").is_err());
    }

    #[test]
    fn extension_counts() {
        assert_eq!(chain3().linear_extensions(10).count(), 1);
        assert_eq!(antichain(3).linear_extensions(10).count(), 6);
        let g = Poset::grid(2, GridOrder::Product).unwrap();
        let ext = g.linear_extensions(10).collect_all().unwrap();
        assert_eq!(ext, vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]]);
    }

    #[test]
    fn admissible_permutation_counts() {
        let p = chain3();
        let q = QuerySet::new(&p, &["c", "a", "b"]).unwrap();
        let perms = p.admissible_permutations(&q, 10).collect_all().unwrap();
        // positions of a, b, c in the query
        assert_eq!(perms, vec![vec![1, 2, 0]]);

        let a = antichain(3);
        let q = QuerySet::from_indices(&a, vec![0, 1, 2]).unwrap();
        assert_eq!(a.admissible_permutations(&q, 100).count(), 6);

        let g = Poset::grid(2, GridOrder::Product).unwrap();
        let q = QuerySet::new(&g, &["(1,2)", "(2,1)"]).unwrap();
        assert_eq!(g.admissible_permutations(&q, 100).count(), 2);
    }

    #[test]
    fn cap_is_reported_not_truncated() {
        let a = antichain(4);
        let items: Vec<_> = a.linear_extensions(5).collect();
        assert_eq!(items.len(), 6);
        assert_eq!(items[5], Err(PosetError::CapExceeded(5)));
        assert_eq!(a.linear_extensions(24).collect_all().unwrap().len(), 24);
    }

    #[test]
    fn query_rejects_duplicates() {
        let p = chain3();
        assert_eq!(
            QuerySet::new(&p, &["a", "a"]).unwrap_err(),
            PosetError::DuplicateQuery("a".into())
        );
    }

    #[test]
    fn reversal_is_an_involution() {
        let g = Poset::grid_rect(2, 3, GridOrder::Product).unwrap();
        let r = g.reversed();
        assert!(r.leq(5, 0));
        assert_eq!(r.reversed(), g);
        let c = chain3().reversed();
        assert!(c.lt(2, 1) && c.lt(1, 0));
    }

    #[test]
    fn dp_count_matches_known_values() {
        assert_eq!(Poset::grid(3, GridOrder::Product).unwrap().count_linear_extensions(), Some(42));
        assert_eq!(Poset::grid(3, GridOrder::Rows).unwrap().count_linear_extensions(), Some(1680));
        assert_eq!(antichain(5).count_linear_extensions(), Some(120));
    }

    #[test]
    fn induced_subposet_keeps_relations() {
        let g = Poset::grid(2, GridOrder::Product).unwrap();
        let sub = g.induced(&[0, 3]);
        assert!(sub.lt(0, 1));
        assert_eq!(sub.labels(), &["(1,1)".to_string(), "(2,2)".to_string()]);
    }
}

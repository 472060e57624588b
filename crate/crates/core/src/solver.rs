//! Extremal values of `S(B, f) = Σ_k f(β_k)` over monotone bijections `f: A → Ξ_N`.
//!
//! For a fixed admissible ordering `π` of the query nodes (one compatible with
//! the order on `B`) the conditional optimum is a closed form in the sizes of
//! the cumulative down-sets `T_{π,k} = Π_{β_{π(1)}} ∪ .. ∪ Π_{β_{π(k)}}`:
//!
//! ```text
//! min over F_π  =  Σ_k ξ_{|T_{π,k}|}
//! ```
//!
//! and dually for the maximum with up-sets. The global optimum is the best
//! conditional optimum over all admissible `π`; [`solve_min`] searches them
//! depth-first with a branch-and-bound cut, and [`solve_max`] reduces to it by
//! reversing both orders.
//!
//! Ties are broken by enumeration order: the first optimal `π` in
//! lexicographic order of `(β_{π(1)}, .., β_{π(n)})` is kept.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::{ElementSet, Poset, PosetError, QuerySet, DEFAULT_CAP};
use crate::scale::{BoundResult, MonotoneBijection, Scalar, ScaleError, ValueScale};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("query set is empty")]
    EmptyQuery,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("query is not a chain: `{0}` and `{1}` are incomparable")]
    NotAChain(String, String),
    #[error("precondition violated for `{first}` and `{second}`: {reason}")]
    PreconditionViolated {
        first: String,
        second: String,
        reason: String,
    },
    #[error(transparent)]
    Scale(#[from] ScaleError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremum {
    Min,
    Max,
}

fn validate<T: Scalar>(poset: &Poset, scale: &ValueScale<T>, query: &QuerySet) -> Result<(), SolveError> {
    if query.is_empty() {
        return Err(SolveError::EmptyQuery);
    }
    scale.check_len(poset.len())?;
    Ok(())
}

/// Checks that `perm` lists each query position once and respects `β_k ≺ β_j ⇒ k before j`.
pub fn check_admissible(poset: &Poset, query: &QuerySet, perm: &[usize]) -> Result<(), SolveError> {
    let n = query.len();
    if perm.len() != n {
        return Err(SolveError::InvalidPermutation(format!(
            "expected {n} positions, got {}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(SolveError::InvalidPermutation(format!(
                "position {p} is out of range or repeated"
            )));
        }
    }
    let b = query.elements();
    for (i, &later) in perm.iter().enumerate() {
        for &earlier in &perm[i + 1..] {
            if poset.lt(b[earlier], b[later]) {
                return Err(SolveError::InvalidPermutation(format!(
                    "`{}` precedes `{}` in the order but comes after it",
                    poset.label(b[earlier]),
                    poset.label(b[later])
                )));
            }
        }
    }
    Ok(())
}

/// `|T_{π,k}|` for `k = 1..n`.
pub fn cumulative_down_sizes(poset: &Poset, query: &QuerySet, perm: &[usize]) -> Vec<usize> {
    let mut acc = ElementSet::empty(poset.len());
    perm.iter()
        .map(|&p| {
            acc.union_with(poset.down_set(query.elements()[p]));
            acc.len()
        })
        .collect()
}

/// `|Π^{β_{π(k)}} ∪ .. ∪ Π^{β_{π(n)}}|` for `k = 1..n`.
///
/// The maximizer takes its largest values on the last nodes of `π`, so the
/// up-sets accumulate from the end.
pub fn suffix_up_sizes(poset: &Poset, query: &QuerySet, perm: &[usize]) -> Vec<usize> {
    let mut acc = ElementSet::empty(poset.len());
    let mut sizes: Vec<usize> = perm
        .iter()
        .rev()
        .map(|&p| {
            acc.union_with(&poset.up_set(query.elements()[p]));
            acc.len()
        })
        .collect();
    sizes.reverse();
    sizes
}

/// `min_{f ∈ F_π} S(B, f) = Σ_k ξ_{|T_{π,k}|}`.
pub fn conditional_min<T: Scalar>(
    poset: &Poset,
    scale: &ValueScale<T>,
    query: &QuerySet,
    perm: &[usize],
) -> Result<T, SolveError> {
    validate(poset, scale, query)?;
    check_admissible(poset, query, perm)?;
    Ok(cumulative_down_sizes(poset, query, perm)
        .into_iter()
        .fold(T::zero(), |acc, size| acc + scale.at(size - 1).clone()))
}

/// `max_{f ∈ F_π} S(B, f) = Σ_k ξ_{N − |T^{π,k}| + 1}` with `T^{π,k}` the
/// union of up-sets of `β_{π(k)}, .., β_{π(n)}`.
pub fn conditional_max<T: Scalar>(
    poset: &Poset,
    scale: &ValueScale<T>,
    query: &QuerySet,
    perm: &[usize],
) -> Result<T, SolveError> {
    validate(poset, scale, query)?;
    check_admissible(poset, query, perm)?;
    let n = poset.len();
    Ok(suffix_up_sizes(poset, query, perm)
        .into_iter()
        .fold(T::zero(), |acc, size| acc + scale.at(n - size).clone()))
}

/// The block construction: a function in `F_π` attaining the conditional optimum.
///
/// In min mode the blocks `T_{π,k} ∖ T_{π,k−1}` (then the rest of `A`) receive
/// consecutive ranks from the bottom; in max mode the suffix up-set blocks
/// receive consecutive ranks from the top. Inside a block the ranks follow the
/// lexicographically first linear extension of the block.
pub fn build_witness(
    poset: &Poset,
    query: &QuerySet,
    perm: &[usize],
    mode: Extremum,
) -> Result<MonotoneBijection, SolveError> {
    if query.is_empty() {
        return Err(SolveError::EmptyQuery);
    }
    check_admissible(poset, query, perm)?;
    let n = poset.len();
    let b = query.elements();
    let mut ranks = vec![usize::MAX; n];
    let mut covered = ElementSet::empty(n);
    match mode {
        Extremum::Min => {
            let mut next = 0;
            let mut assign = |block: &ElementSet, ranks: &mut Vec<usize>| {
                for a in first_extension_of(poset, block) {
                    ranks[a] = next;
                    next += 1;
                }
            };
            for &p in perm {
                let mut block = poset.down_set(b[p]).clone();
                block.difference_with(&covered);
                covered.union_with(&block);
                assign(&block, &mut ranks);
            }
            let mut rest = ElementSet::from_indices(n, 0..n);
            rest.difference_with(&covered);
            assign(&rest, &mut ranks);
        }
        Extremum::Max => {
            let mut top = n;
            let mut assign = |block: &ElementSet, ranks: &mut Vec<usize>| {
                let order = first_extension_of(poset, block);
                top -= order.len();
                for (i, a) in order.into_iter().enumerate() {
                    ranks[a] = top + i;
                }
            };
            for &p in perm.iter().rev() {
                let mut block = poset.up_set(b[p]);
                block.difference_with(&covered);
                covered.union_with(&block);
                assign(&block, &mut ranks);
            }
            let mut rest = ElementSet::from_indices(n, 0..n);
            rest.difference_with(&covered);
            assign(&rest, &mut ranks);
        }
    }
    debug_assert!(ranks.iter().all(|&r| r < n));
    Ok(MonotoneBijection::from_ranks(ranks))
}

/// Lexicographically first linear extension of the order restricted to `set`.
fn first_extension_of(poset: &Poset, set: &ElementSet) -> Vec<usize> {
    let members: Vec<usize> = set.iter().collect();
    let mut pending: Vec<usize> = members
        .iter()
        .map(|&a| {
            let mut below = poset.down_set(a).clone();
            below.remove(a);
            members.iter().filter(|&&c| below.contains(c)).count()
        })
        .collect();
    let mut out = Vec::with_capacity(members.len());
    let mut used = vec![false; members.len()];
    for _ in 0..members.len() {
        let i = (0..members.len())
            .find(|&i| !used[i] && pending[i] == 0)
            .expect("a finite poset always has a minimal element");
        used[i] = true;
        out.push(members[i]);
        for (j, &c) in members.iter().enumerate() {
            if !used[j] && poset.lt(members[i], c) {
                pending[j] -= 1;
            }
        }
    }
    out
}

fn result_from<T: Scalar>(
    poset: &Poset,
    scale: &ValueScale<T>,
    query: &QuerySet,
    objective: T,
    perm: Vec<usize>,
    mode: Extremum,
) -> Result<BoundResult<T>, SolveError> {
    let witness_fn = build_witness(poset, query, &perm, mode)?;
    let per_node_values = perm
        .iter()
        .map(|&p| witness_fn.value(scale, query.elements()[p]).clone())
        .collect();
    Ok(BoundResult {
        objective,
        witness_perm: perm,
        witness_fn,
        per_node_values,
    })
}

struct MinSearch<'a, T> {
    poset: &'a Poset,
    scale: &'a ValueScale<T>,
    nodes: &'a [usize],
    preds: Vec<ElementSet>,
    order: Vec<usize>,
    cap: usize,
    leaves: usize,
    seq: Vec<usize>,
    placed: ElementSet,
    best: Option<(T, Vec<usize>)>,
}

impl<T: Scalar> MinSearch<'_, T> {
    fn descend(&mut self, covered: &ElementSet, partial: &T) -> Result<(), SolveError> {
        let n = self.nodes.len();
        if self.seq.len() == n {
            self.leaves += 1;
            if self.leaves > self.cap {
                return Err(PosetError::CapExceeded(self.cap).into());
            }
            if self.best.as_ref().is_none_or(|(v, _)| partial < v) {
                self.best = Some((partial.clone(), self.seq.clone()));
            }
            return Ok(());
        }
        for idx in 0..n {
            let p = self.order[idx];
            if self.placed.contains(p) || !self.preds[p].is_subset(&self.placed) {
                continue;
            }
            let mut next_cover = covered.clone();
            next_cover.union_with(self.poset.down_set(self.nodes[p]));
            let size = next_cover.len();
            let value = partial.clone() + self.scale.at(size - 1).clone();
            // Every later step adds at least one new element to T, so the
            // remaining terms are at least ξ_{size+1}, .., ξ_{size+r}.
            let remaining = n - self.seq.len() - 1;
            if let Some((best, _)) = &self.best {
                let optimistic = (0..remaining)
                    .fold(value.clone(), |acc, i| acc + self.scale.at(size + i).clone());
                if optimistic >= *best {
                    continue;
                }
            }
            self.seq.push(p);
            self.placed.insert(p);
            self.descend(&next_cover, &value)?;
            self.placed.remove(p);
            self.seq.pop();
        }
        Ok(())
    }
}

/// `min_{f ∈ F} S(B, f)` with a witness. `cap` bounds the number of complete
/// permutations evaluated.
pub fn solve_min<T: Scalar>(
    poset: &Poset,
    scale: &ValueScale<T>,
    query: &QuerySet,
    cap: usize,
) -> Result<BoundResult<T>, SolveError> {
    validate(poset, scale, query)?;
    let nodes = query.elements();
    let n = nodes.len();
    let preds = (0..n)
        .map(|p| ElementSet::from_indices(n, (0..n).filter(|&q| poset.lt(nodes[q], nodes[p]))))
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&p| nodes[p]);
    let mut search = MinSearch {
        poset,
        scale,
        nodes,
        preds,
        order,
        cap,
        leaves: 0,
        seq: Vec::with_capacity(n),
        placed: ElementSet::empty(n),
        best: None,
    };
    search.descend(&ElementSet::empty(poset.len()), &T::zero())?;
    let (objective, perm) = search.best.expect("an admissible permutation always exists");
    result_from(poset, scale, query, objective, perm, Extremum::Min)
}

/// `max_{f ∈ F} S(B, f)`, computed as `−min` of the order-reversed problem.
pub fn solve_max<T: Scalar>(
    poset: &Poset,
    scale: &ValueScale<T>,
    query: &QuerySet,
    cap: usize,
) -> Result<BoundResult<T>, SolveError> {
    validate(poset, scale, query)?;
    let (rev_poset, rev_scale, rev_query) = reverse_reduce(poset, scale, query);
    let reduced = solve_min(&rev_poset, &rev_scale, &rev_query, cap)?;
    let mut perm = reduced.witness_perm;
    perm.reverse();
    result_from(poset, scale, query, -reduced.objective, perm, Extremum::Max)
}

pub fn solve<T: Scalar>(
    poset: &Poset,
    scale: &ValueScale<T>,
    query: &QuerySet,
    mode: Extremum,
    cap: usize,
) -> Result<BoundResult<T>, SolveError> {
    match mode {
        Extremum::Min => solve_min(poset, scale, query, cap),
        Extremum::Max => solve_max(poset, scale, query, cap),
    }
}

/// Both orders reversed: `max S` on the input equals `−min S` on the output.
pub fn reverse_reduce<T: Scalar>(
    poset: &Poset,
    scale: &ValueScale<T>,
    query: &QuerySet,
) -> (Poset, ValueScale<T>, QuerySet) {
    let rev = poset.reversed();
    let q = QuerySet::from_indices(&rev, query.elements().to_vec()).expect("same ground set");
    (rev, scale.reversed_negated(), q)
}

/// Query positions sorted by a key, stable in query order.
fn sorted_positions(query: &QuerySet, key: impl Fn(usize) -> usize) -> Vec<usize> {
    let mut pos: Vec<usize> = (0..query.len()).collect();
    pos.sort_by_key(|&p| key(query.elements()[p]));
    pos
}

/// Closed forms when `B` is a chain: `(Σ ξ_{|Π_k|}, Σ ξ_{N−|Π^k|+1})`.
///
/// The query may be listed in any order; it is sorted along the chain first.
pub fn corollary_chain<T: Scalar>(
    poset: &Poset,
    scale: &ValueScale<T>,
    query: &QuerySet,
) -> Result<(T, T), SolveError> {
    validate(poset, scale, query)?;
    let b = query.elements();
    let pos = sorted_positions(query, |a| poset.down_set(a).len());
    for w in pos.windows(2) {
        let (lo, hi) = (b[w[0]], b[w[1]]);
        if !poset.lt(lo, hi) {
            return Err(SolveError::NotAChain(
                poset.label(lo).to_owned(),
                poset.label(hi).to_owned(),
            ));
        }
    }
    let n = poset.len();
    let mut min = T::zero();
    let mut max = T::zero();
    for &p in &pos {
        min = min + scale.at(poset.down_set(b[p]).len() - 1).clone();
        max = max + scale.at(n - poset.up_set(b[p]).len()).clone();
    }
    Ok((min, max))
}

fn first_overlap(sets: &[(usize, ElementSet)]) -> Option<(usize, usize)> {
    for (i, (a, sa)) in sets.iter().enumerate() {
        for (b, sb) in &sets[i + 1..] {
            if !sa.is_disjoint(sb) {
                return Some((*a, *b));
            }
        }
    }
    None
}

/// `min S = Σ_k ξ_{|Π_1| + .. + |Π_k|}` when the down-sets of `B` are pairwise
/// disjoint; nodes are taken in order of increasing down-set size.
pub fn corollary_disjoint_min<T: Scalar>(
    poset: &Poset,
    scale: &ValueScale<T>,
    query: &QuerySet,
) -> Result<T, SolveError> {
    validate(poset, scale, query)?;
    let b = query.elements();
    let sets: Vec<(usize, ElementSet)> = sorted_positions(query, |a| poset.down_set(a).len())
        .into_iter()
        .map(|p| (b[p], poset.down_set(b[p]).clone()))
        .collect();
    if let Some((x, y)) = first_overlap(&sets) {
        return Err(SolveError::PreconditionViolated {
            first: poset.label(x).to_owned(),
            second: poset.label(y).to_owned(),
            reason: "down-sets intersect".into(),
        });
    }
    let mut total = 0;
    Ok(sets.iter().fold(T::zero(), |acc, (_, s)| {
        total += s.len();
        acc + scale.at(total - 1).clone()
    }))
}

/// `max S = Σ_k ξ_{N − (|Π^1| + .. + |Π^k|) + 1}` when the up-sets of `B` are
/// pairwise disjoint; nodes are taken in order of increasing up-set size.
pub fn corollary_disjoint_max<T: Scalar>(
    poset: &Poset,
    scale: &ValueScale<T>,
    query: &QuerySet,
) -> Result<T, SolveError> {
    validate(poset, scale, query)?;
    let b = query.elements();
    let sets: Vec<(usize, ElementSet)> = sorted_positions(query, |a| poset.up_set(a).len())
        .into_iter()
        .map(|p| (b[p], poset.up_set(b[p])))
        .collect();
    if let Some((x, y)) = first_overlap(&sets) {
        return Err(SolveError::PreconditionViolated {
            first: poset.label(x).to_owned(),
            second: poset.label(y).to_owned(),
            reason: "up-sets intersect".into(),
        });
    }
    let n = poset.len();
    let mut total = 0;
    Ok(sets.iter().fold(T::zero(), |acc, (_, s)| {
        total += s.len();
        acc + scale.at(n - total).clone()
    }))
}

/// Exhaustive `max_π` of [`conditional_max`]; no pruning, no reduction.
pub fn max_over_permutations<T: Scalar>(
    poset: &Poset,
    scale: &ValueScale<T>,
    query: &QuerySet,
) -> Result<T, SolveError> {
    validate(poset, scale, query)?;
    let mut best: Option<T> = None;
    for perm in poset.admissible_permutations(query, DEFAULT_CAP) {
        let v = conditional_max(poset, scale, query, &perm?)?;
        if best.as_ref().is_none_or(|b| v > *b) {
            best = Some(v);
        }
    }
    Ok(best.expect("at least one admissible permutation"))
}

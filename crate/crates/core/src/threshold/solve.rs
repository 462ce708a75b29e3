//! Exact maximum Threshold Set solvers.

use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use super::ThresholdSetInstance;
use crate::combinatorics::{binomial, first_combination};
use crate::exec::{self, SolveOptions};
use crate::{Error, Result};

/// Largest universe the generic (all subsets) solver accepts.
pub const GENERIC_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Structured when the instance carries a usable group layout, generic otherwise.
    #[default]
    Auto,
    Generic,
    Structured,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "generic" => Ok(Strategy::Generic),
            "structured" => Ok(Strategy::Structured),
            other => Err(Error::InvalidArgument(format!("unknown strategy `{other}` (auto|generic|structured)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub size: usize,
    /// Lexicographically smallest optimal solution, sorted.
    pub witness: Vec<usize>,
}

/// Exact optimum with the lexicographically smallest optimal witness.
pub fn max_solution(inst: &ThresholdSetInstance, strategy: Strategy, opts: &SolveOptions) -> Result<Solution> {
    match strategy {
        Strategy::Generic => generic(inst, opts),
        Strategy::Structured => structured(inst, opts),
        Strategy::Auto => match group_layout(inst) {
            Ok(_) => structured(inst, opts),
            Err(_) => generic(inst, opts),
        },
    }
}

fn generic(inst: &ThresholdSetInstance, opts: &SolveOptions) -> Result<Solution> {
    let u = inst.universe_size();
    if u > GENERIC_LIMIT {
        return Err(Error::InvalidInstance(format!(
            "generic solver handles universes up to {GENERIC_LIMIT} elements, got {u}"
        )));
    }
    let masks: Vec<(u32, u32)> = inst
        .sets()
        .iter()
        .map(|s| (s.members.iter().fold(0u32, |m, &e| m | 1 << e), s.weight as u32))
        .collect();
    let mut spent: u128 = 0;
    for size in (0..=u).rev() {
        spent = spent.saturating_add(binomial(u, size));
        opts.check(spent)?;
        let hit = first_combination(u, size, opts.parallelism, |c| {
            let t = c.iter().fold(0u32, |m, &e| m | 1 << e);
            masks.iter().all(|&(s, w)| (s & t).count_ones() <= w)
        });
        if let Some(witness) = hit {
            return Ok(Solution { size, witness });
        }
    }
    unreachable!("the empty set is always feasible")
}

/// Group size and count, after checking that each group `S_d` is present as
/// a weight-1 set.
pub(super) fn group_layout(inst: &ThresholdSetInstance) -> Result<(usize, usize)> {
    let meta = inst.meta().ok_or(Error::MissingMetadata)?;
    let (g, d) = (meta.group_size(), meta.d);
    if g * d != inst.universe_size() {
        return Err(Error::InvalidInstance(format!(
            "layout q^k * D = {} does not match universe size {}",
            g * d,
            inst.universe_size()
        )));
    }
    for group in 0..d {
        let range = group * g..(group + 1) * g;
        let present = inst
            .sets()
            .iter()
            .any(|s| s.weight == 1 && s.members.len() == g && s.members.first() == Some(&range.start) && s.members.last() == Some(&(range.end - 1)));
        if !present {
            return Err(Error::InvalidInstance(format!("group {} is not constrained to one element", group + 1)));
        }
    }
    Ok((g, d))
}

struct Search<'a> {
    group_size: usize,
    groups: usize,
    incidence: &'a [Vec<u32>],
    weights: &'a [u32],
    global_best: &'a AtomicUsize,
}

impl Search<'_> {
    fn try_add(&self, e: usize, counts: &mut [u32]) -> bool {
        let sets = &self.incidence[e];
        if sets.iter().any(|&s| counts[s as usize] >= self.weights[s as usize]) {
            return false;
        }
        for &s in sets {
            counts[s as usize] += 1;
        }
        true
    }

    fn remove(&self, e: usize, counts: &mut [u32]) {
        for &s in &self.incidence[e] {
            counts[s as usize] -= 1;
        }
    }

    /// Depth-first over groups in index order, trying each element and then
    /// "no element". This visits equal-size solutions in lexicographic order,
    /// so only strictly larger solutions replace `best`.
    fn dfs(&self, group: usize, counts: &mut [u32], chosen: &mut Vec<usize>, best: &mut Option<Solution>) {
        let reachable = chosen.len() + (self.groups - group);
        if best.as_ref().is_some_and(|b| reachable <= b.size) || reachable < self.global_best.load(Ordering::Relaxed) {
            return;
        }
        if group == self.groups {
            self.global_best.fetch_max(chosen.len(), Ordering::Relaxed);
            *best = Some(Solution { size: chosen.len(), witness: chosen.clone() });
            return;
        }
        let base = group * self.group_size;
        for e in base..base + self.group_size {
            if self.try_add(e, counts) {
                chosen.push(e);
                self.dfs(group + 1, counts, chosen, best);
                chosen.pop();
                self.remove(e, counts);
            }
        }
        self.dfs(group + 1, counts, chosen, best);
    }
}

/// Branch and bound over one-element-per-group selections. Requires
/// reduction metadata describing the groups.
fn structured(inst: &ThresholdSetInstance, opts: &SolveOptions) -> Result<Solution> {
    let (g, d) = group_layout(inst)?;
    let candidates = (g as u128 + 1).checked_pow(d as u32).unwrap_or(u128::MAX);
    opts.check(candidates)?;

    // Constraint sets only; groups are enforced by the search itself.
    let mut weights = Vec::new();
    let mut incidence = vec![Vec::new(); inst.universe_size()];
    for s in inst.sets() {
        let is_group = s.weight == 1 && s.members.len() == g && s.members[0] % g == 0 && s.members[g - 1] == s.members[0] + g - 1;
        // A set touching at most `weight` groups can never be violated.
        let mut touched: Vec<usize> = s.members.iter().map(|&e| e / g).collect();
        touched.dedup();
        if is_group || touched.len() <= s.weight {
            continue;
        }
        let idx = weights.len() as u32;
        weights.push(s.weight as u32);
        for &e in &s.members {
            incidence[e].push(idx);
        }
    }

    let global_best = AtomicUsize::new(0);
    let search = Search { group_size: g, groups: d, incidence: &incidence, weights: &weights, global_best: &global_best };
    // One branch per choice in the first group (elements, then "none").
    let branches = exec::map_collect(g + 1, opts.parallelism, |choice| {
        let mut counts = vec![0u32; weights.len()];
        let mut chosen = Vec::with_capacity(d);
        let mut best = None;
        if choice < g {
            let added = search.try_add(choice, &mut counts);
            debug_assert!(added);
            chosen.push(choice);
        }
        search.dfs(1, &mut counts, &mut chosen, &mut best);
        best
    });
    let mut result: Option<Solution> = None;
    for b in branches.into_iter().flatten() {
        if result.as_ref().is_none_or(|r| b.size > r.size) {
            result = Some(b);
        }
    }
    Ok(result.expect("the empty selection is always feasible"))
}

#[cfg(test)]
mod tests {
    use super::super::{ReductionMeta, WeightedSet};
    use super::*;

    #[test]
    fn single_set() {
        let inst = ThresholdSetInstance::new(5, vec![WeightedSet::new(3, (0..5).collect())]).unwrap();
        let sol = max_solution(&inst, Strategy::Generic, &SolveOptions::default()).unwrap();
        assert_eq!(sol, Solution { size: 3, witness: vec![0, 1, 2] });
        assert_eq!(max_solution(&inst, Strategy::Auto, &SolveOptions::default()).unwrap(), sol);
    }

    #[test]
    fn generic_limit() {
        let inst = ThresholdSetInstance::new(25, vec![]).unwrap();
        assert!(max_solution(&inst, Strategy::Generic, &SolveOptions::default()).is_err());
    }

    #[test]
    fn structured_needs_metadata() {
        let inst = ThresholdSetInstance::new(4, vec![]).unwrap();
        assert!(matches!(max_solution(&inst, Strategy::Structured, &SolveOptions::default()), Err(Error::MissingMetadata)));
    }

    fn grouped(extra: Vec<WeightedSet>) -> ThresholdSetInstance {
        // Two groups of q^k = 4 elements (q = 2, k = 2).
        let mut sets = vec![WeightedSet::new(1, (0..4).collect()), WeightedSet::new(1, (4..8).collect())];
        sets.extend(extra);
        let meta = ReductionMeta { k: 2, d: 2, ell: 1, q: 2, ..Default::default() };
        ThresholdSetInstance::new(8, sets).unwrap().with_meta(meta)
    }

    #[test]
    fn structured_agrees_with_generic() {
        let inst = grouped(vec![WeightedSet::new(1, vec![0, 4, 5]), WeightedSet::new(1, vec![1, 4])]);
        for opts in [SolveOptions::default(), SolveOptions::sequential()] {
            let s = max_solution(&inst, Strategy::Structured, &opts).unwrap();
            let g = max_solution(&inst, Strategy::Generic, &opts).unwrap();
            assert_eq!(s, g);
            assert_eq!(s, Solution { size: 2, witness: vec![0, 6] });
        }
    }

    #[test]
    fn structured_requires_group_sets() {
        let mut inst = grouped(vec![]);
        inst.sets.remove(1);
        assert!(max_solution(&inst, Strategy::Structured, &SolveOptions::default()).is_err());
        // Auto falls back to the generic solver.
        assert_eq!(max_solution(&inst, Strategy::Auto, &SolveOptions::default()).unwrap().size, 5);
    }

    #[test]
    fn structured_budget() {
        let inst = grouped(vec![]);
        let tight = SolveOptions::default().with_budget(10);
        assert!(matches!(max_solution(&inst, Strategy::Structured, &tight), Err(Error::BudgetExceeded { .. })));
    }
}

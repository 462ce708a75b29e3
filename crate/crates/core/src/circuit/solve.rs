//! Exhaustive weighted-satisfiability oracles.
//!
//! Weight-`k` candidates are visited in lexicographic order of their sorted
//! input indices and evaluated 64 at a time with bit-sliced evaluation.

use super::{Assignment, Circuit};
use crate::combinatorics::{binomial, next_combination, unrank};
use crate::exec::{self, SolveOptions};
use crate::Result;

const CHUNK: u128 = 64 * 64;

fn first_of_weight(c: &Circuit, k: usize, opts: &SolveOptions) -> Option<Assignment> {
    let n = c.num_inputs();
    let total = binomial(n, k);
    if total == 0 {
        return None;
    }
    let chunks = total.div_ceil(CHUNK) as u64;
    exec::find_map_first(chunks, opts.parallelism, |ci| {
        let start = ci as u128 * CHUNK;
        let len = CHUNK.min(total - start) as usize;
        let mut comb = unrank(n, k, start);
        let mut words = vec![0u64; n];
        let mut scratch = Vec::with_capacity(c.num_nodes());
        let mut done = 0usize;
        while done < len {
            let batch = (len - done).min(64);
            words.iter_mut().for_each(|w| *w = 0);
            for bit in 0..batch {
                for &i in &comb {
                    words[i] |= 1 << bit;
                }
                next_combination(&mut comb, n);
            }
            let mut out = c.evaluate_sliced(&words, &mut scratch);
            if batch < 64 {
                out &= (1u64 << batch) - 1;
            }
            if out != 0 {
                let rank = start + (done + out.trailing_zeros() as usize) as u128;
                return Some(Assignment::new(unrank(n, k, rank)));
            }
            done += batch;
        }
        None
    })
}

/// The lexicographically smallest weight-`k` satisfying assignment, if any.
pub fn is_k_satisfiable(c: &Circuit, k: usize, opts: &SolveOptions) -> Result<Option<Assignment>> {
    if k > c.num_inputs() {
        return Ok(None);
    }
    opts.check(binomial(c.num_inputs(), k))?;
    Ok(first_of_weight(c, k, opts))
}

fn scan(c: &Circuit, weights: impl Iterator<Item = usize>, opts: &SolveOptions) -> Result<Option<(usize, Assignment)>> {
    let n = c.num_inputs();
    let mut spent: u128 = 0;
    for w in weights {
        spent = spent.saturating_add(binomial(n, w));
        opts.check(spent)?;
        if let Some(a) = first_of_weight(c, w, opts) {
            return Ok(Some((w, a)));
        }
    }
    Ok(None)
}

/// Minimum weight of a satisfying assignment, with the lexicographically
/// smallest witness of that weight. Weight 0 is reported when the empty
/// assignment satisfies `c`.
pub fn min_weight_sat(c: &Circuit, opts: &SolveOptions) -> Result<Option<(usize, Assignment)>> {
    scan(c, 0..=c.num_inputs(), opts)
}

/// Like [`min_weight_sat`] but only looks at weights `0..=max_weight`.
pub fn min_weight_sat_up_to(c: &Circuit, max_weight: usize, opts: &SolveOptions) -> Result<Option<(usize, Assignment)>> {
    scan(c, 0..=max_weight.min(c.num_inputs()), opts)
}

/// Maximum weight of a satisfying assignment, scanning weights downwards.
pub fn max_weight_sat(c: &Circuit, opts: &SolveOptions) -> Result<Option<(usize, Assignment)>> {
    scan(c, (0..=c.num_inputs()).rev(), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    fn circuit(text: &str) -> Circuit {
        text.parse().unwrap()
    }

    fn names(c: &Circuit, a: &Assignment) -> Vec<String> {
        c.assignment_names(a).into_iter().map(String::from).collect()
    }

    #[test]
    fn k_satisfiable_examples() {
        let and2 = circuit("inputs x1 x2\ngate g AND x1 x2\noutput g");
        let opts = SolveOptions::default();
        assert_eq!(is_k_satisfiable(&and2, 2, &opts).unwrap(), Some(Assignment::new(vec![0, 1])));
        assert_eq!(is_k_satisfiable(&and2, 1, &opts).unwrap(), None);
        let or3 = circuit("inputs x1 x2 x3\ngate g OR x1 x2 x3\noutput g");
        let a = is_k_satisfiable(&or3, 1, &opts).unwrap().unwrap();
        assert_eq!(names(&or3, &a), ["x1"]);
    }

    #[test]
    fn min_examples() {
        let opts = SolveOptions::default();
        let and2 = circuit("inputs x1 x2\ngate g AND x1 x2\noutput g");
        assert_eq!(min_weight_sat(&and2, &opts).unwrap(), Some((2, Assignment::new(vec![0, 1]))));
        let or2 = circuit("inputs x1 x2\ngate g OR x1 x2\noutput g");
        assert_eq!(min_weight_sat(&or2, &opts).unwrap(), Some((1, Assignment::new(vec![0]))));
    }

    #[test]
    fn max_examples() {
        let opts = SolveOptions::default();
        let not1 = circuit("inputs x1 x2\ngate n NOT x1\noutput n");
        let (w, a) = max_weight_sat(&not1, &opts).unwrap().unwrap();
        assert_eq!((w, names(&not1, &a)), (1, vec!["x2".to_string()]));
        let nor = circuit("inputs x1 x2\ngate a NOT x1\ngate b NOT x2\ngate g AND a b\noutput g");
        assert_eq!(max_weight_sat(&nor, &opts).unwrap(), Some((0, Assignment::empty())));
    }

    #[test]
    fn unsatisfiable() {
        let c = circuit("inputs x\ngate n NOT x\ngate g AND x n\noutput g");
        assert_eq!(min_weight_sat(&c, &SolveOptions::default()).unwrap(), None);
        assert_eq!(max_weight_sat(&c, &SolveOptions::default()).unwrap(), None);
    }

    #[test]
    fn budget_guard() {
        let inputs: Vec<String> = (0..30).map(|i| format!("x{i}")).collect();
        let text = format!("inputs {}\ngate g AND {}\noutput g", inputs.join(" "), inputs.join(" "));
        let c = circuit(&text);
        let tight = SolveOptions::default().with_budget(1000);
        assert!(matches!(is_k_satisfiable(&c, 15, &tight), Err(Error::BudgetExceeded { .. })));
        assert!(is_k_satisfiable(&c, 1, &tight).unwrap().is_none());
        assert!(matches!(min_weight_sat(&c, &tight), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn witnesses_span_chunk_boundaries() {
        // 20 inputs, weight 3: 1140 candidates spread over many 64-wide batches.
        let inputs: Vec<String> = (0..20).map(|i| format!("x{i}")).collect();
        let text = format!("inputs {}\ngate g AND x17 x18 x19\noutput g", inputs.join(" "));
        let c = circuit(&text);
        for opts in [SolveOptions::default(), SolveOptions::sequential()] {
            let a = is_k_satisfiable(&c, 3, &opts).unwrap().unwrap();
            assert_eq!(a.ones(), &[17, 18, 19]);
        }
    }
}

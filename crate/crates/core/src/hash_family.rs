//! Perfect hash families `[n] -> [k']`.
//!
//! A family is `k'`-perfect when every `k'`-subset of the domain is mapped
//! one-to-one by at least one member. Families are built by randomized
//! greedy sampling and then certified by exhaustive enumeration.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::text::{end_column, tokenize};
use crate::combinatorics::{all_combinations, binomial, Combinations};
use crate::exec::SolveOptions;
use crate::{Error, ParseError, Result};

/// Default cap on random functions drawn by [`build_perfect_family`].
pub const DEFAULT_MAX_SAMPLES: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HashFamily {
    n: usize,
    k_prime: usize,
    /// Value tables with entries in `1..=k_prime`.
    functions: Vec<Vec<u32>>,
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy)]
pub struct FamilyOptions {
    pub seed: u64,
    pub max_samples: u64,
    pub solve: SolveOptions,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        FamilyOptions { seed: 0, max_samples: DEFAULT_MAX_SAMPLES, solve: SolveOptions::default() }
    }
}

impl FamilyOptions {
    pub fn with_seed(seed: u64) -> Self {
        FamilyOptions { seed, ..Default::default() }
    }
}

fn injective(f: &[u32], subset: &[usize]) -> bool {
    let mut seen: u128 = 0;
    for &i in subset {
        let v = f[i];
        if v < 128 {
            let bit = 1u128 << v;
            if seen & bit != 0 {
                return false;
            }
            seen |= bit;
        } else {
            let mut vals: Vec<u32> = subset.iter().map(|&j| f[j]).collect();
            vals.sort_unstable();
            return vals.windows(2).all(|w| w[0] != w[1]);
        }
    }
    true
}

impl HashFamily {
    pub fn new(n: usize, k_prime: usize, functions: Vec<Vec<u32>>) -> Result<Self> {
        if k_prime == 0 {
            return Err(Error::HashFamily("range size must be positive".into()));
        }
        for (idx, f) in functions.iter().enumerate() {
            if f.len() != n {
                return Err(Error::HashFamily(format!("function {idx} has {} values, expected {n}", f.len())));
            }
            if let Some(v) = f.iter().find(|&&v| v == 0 || v as usize > k_prime) {
                return Err(Error::HashFamily(format!("function {idx} takes value {v} outside 1..={k_prime}")));
            }
        }
        Ok(HashFamily { n, k_prime, functions, seed: None })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k_prime(&self) -> usize {
        self.k_prime
    }

    pub fn size(&self) -> usize {
        self.functions.len()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn functions(&self) -> &[Vec<u32>] {
        &self.functions
    }

    /// Value of member `f` at domain point `i` (both 0-based; the value is in `1..=k'`).
    pub fn value(&self, f: usize, i: usize) -> u32 {
        self.functions[f][i]
    }

    pub fn push(&mut self, function: Vec<u32>) -> Result<()> {
        let checked = HashFamily::new(self.n, self.k_prime, vec![function])?;
        self.functions.extend(checked.functions);
        Ok(())
    }

    /// Drops repeated members, keeping first occurrences.
    pub fn dedup(&mut self) {
        let mut kept: Vec<Vec<u32>> = Vec::with_capacity(self.functions.len());
        for f in self.functions.drain(..) {
            if !kept.contains(&f) {
                kept.push(f);
            }
        }
        self.functions = kept;
    }

    pub fn is_injective_on(&self, member: usize, subset: &[usize]) -> bool {
        injective(&self.functions[member], subset)
    }

    pub fn covers(&self, subset: &[usize]) -> bool {
        self.functions.iter().any(|f| injective(f, subset))
    }

    /// Whether every `size`-subset of the domain is covered.
    pub fn covers_all(&self, size: usize, opts: &SolveOptions) -> Result<bool> {
        opts.check(binomial(self.n, size))?;
        Ok(all_combinations(self.n, size, opts.parallelism, |s| self.covers(s)))
    }
}

/// Exhaustive `k'`-perfectness check over all `k'`-subsets of `[n]`.
pub fn verify_perfect(family: &HashFamily, opts: &SolveOptions) -> Result<bool> {
    family.covers_all(family.k_prime, opts)
}

/// A certified `k'`-perfect family on `[n]`, `1 <= k' <= n`.
pub fn build_perfect_family(n: usize, k_prime: usize, opts: &FamilyOptions) -> Result<HashFamily> {
    if k_prime == 0 || k_prime > n {
        return Err(Error::InvalidArgument(format!("need 1 <= k' <= n, got n = {n}, k' = {k_prime}")));
    }
    build_covering_family(n, k_prime, k_prime, opts)
}

/// Functions `[n] -> [range]` such that every `subset_size`-subset is
/// mapped injectively by some member. `subset_size <= min(n, range)`.
pub fn build_covering_family(n: usize, range: usize, subset_size: usize, opts: &FamilyOptions) -> Result<HashFamily> {
    if range == 0 || subset_size > n || subset_size > range {
        return Err(Error::InvalidArgument(format!(
            "cannot cover {subset_size}-subsets of [{n}] injectively with range [{range}]"
        )));
    }
    let count = binomial(n, subset_size);
    opts.solve.check(count)?;

    let mut uncovered: Vec<Vec<usize>> = Combinations::new(n, subset_size).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut functions = Vec::new();
    let mut samples = 0u64;
    while !uncovered.is_empty() {
        if samples >= opts.max_samples {
            return Err(Error::HashFamily(format!(
                "{} of {count} subsets still uncovered after {samples} samples",
                uncovered.len()
            )));
        }
        samples += 1;
        let f: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=range as u32)).collect();
        let before = uncovered.len();
        uncovered.retain(|s| !injective(&f, s));
        if uncovered.len() < before {
            functions.push(f);
        }
    }
    let family = HashFamily { n, k_prime: range, functions, seed: Some(opts.seed) };
    if !family.covers_all(subset_size, &opts.solve)? {
        return Err(Error::HashFamily("certification failed".into()));
    }
    Ok(family)
}

impl fmt::Display for HashFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hashfamily n={} kprime={} size={}", self.n, self.k_prime, self.size())?;
        if let Some(seed) = self.seed {
            write!(f, " seed={seed}")?;
        }
        writeln!(f)?;
        for func in &self.functions {
            let vals: Vec<String> = func.iter().map(u32::to_string).collect();
            writeln!(f, "{}", vals.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for HashFamily {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !tokenize(l).is_empty());
        let (hidx, hline) = lines.next().ok_or_else(|| ParseError::new(1, 1, "empty hash family"))?;
        let header = tokenize(hline);
        if header[0].text != "hashfamily" {
            return Err(ParseError::new(hidx + 1, header[0].column, "expected `hashfamily` header").into());
        }
        let (mut n, mut kp, mut size, mut seed) = (None, None, None, None);
        for tok in &header[1..] {
            let bad = || ParseError::new(hidx + 1, tok.column, format!("bad header field `{}`", tok.text));
            let (key, val) = tok.text.split_once('=').ok_or_else(bad)?;
            let val: u64 = val.parse().map_err(|_| bad())?;
            match key {
                "n" => n = Some(val as usize),
                "kprime" => kp = Some(val as usize),
                "size" => size = Some(val as usize),
                "seed" => seed = Some(val),
                _ => return Err(bad().into()),
            }
        }
        let missing = |what: &str| ParseError::new(hidx + 1, end_column(hline), format!("header lacks `{what}=`"));
        let n = n.ok_or_else(|| missing("n"))?;
        let kp = kp.ok_or_else(|| missing("kprime"))?;
        let mut functions = Vec::new();
        for (idx, line) in lines {
            let mut f = Vec::with_capacity(n);
            for tok in tokenize(line) {
                let v: u32 = tok
                    .text
                    .parse()
                    .map_err(|_| ParseError::new(idx + 1, tok.column, format!("`{}` is not a value", tok.text)))?;
                f.push(v);
            }
            if f.len() != n {
                return Err(ParseError::new(idx + 1, 1, format!("expected {n} values, got {}", f.len())).into());
            }
            functions.push(f);
        }
        if let Some(size) = size {
            if size != functions.len() {
                return Err(ParseError::new(hidx + 1, 1, format!("header says size={size}, found {}", functions.len())).into());
            }
        }
        let mut family = HashFamily::new(n, kp, functions)?;
        family.seed = seed;
        Ok(family)
    }
}

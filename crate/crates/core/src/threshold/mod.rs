//! Threshold Set: choose a largest `T ⊆ U` with `|T ∩ S| <= w(S)` for every
//! weighted set `S`.

mod reduction;
mod solve;

use std::fmt;
use std::str::FromStr;

pub use reduction::{
    clique_witness, compute_d, decode_solution, emit_antimonotone_circuit, pad_graph, reduce_clique_to_threshold,
    verify_gap_threshold, ReductionLayout, ReductionOptions, DEFAULT_D_CAP, DEFAULT_MAX_MEMBERSHIPS,
};
pub use solve::{max_solution, Solution, Strategy, GENERIC_LIMIT};

use crate::text::{parse_number, tokenize};
use crate::{Error, ParseError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedSet {
    pub weight: usize,
    /// Sorted, distinct.
    pub members: Vec<usize>,
}

impl WeightedSet {
    pub fn new(weight: usize, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        WeightedSet { weight, members }
    }
}

/// Parameters of the clique reduction that produced an instance. Element
/// `s_{d,g}` has index `(d-1) * q^k + index(g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReductionMeta {
    pub k: usize,
    pub d: usize,
    pub ell: u32,
    pub q: usize,
    pub seed: u64,
    /// Vertices of the source graph before padding.
    pub source_vertices: usize,
    /// Constraint sets dropped because an identical set was already present.
    pub duplicates: usize,
}

impl ReductionMeta {
    /// `q^k`, the size of each group `S_d`.
    pub fn group_size(&self) -> usize {
        self.q.pow(self.k as u32)
    }

    fn header(&self) -> String {
        format!(
            "reduction k={} D={} ell={} q={} seed={} source_vertices={} duplicates={}",
            self.k, self.d, self.ell, self.q, self.seed, self.source_vertices, self.duplicates
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdSetInstance {
    universe_size: usize,
    sets: Vec<WeightedSet>,
    meta: Option<ReductionMeta>,
}

impl ThresholdSetInstance {
    pub fn new(universe_size: usize, sets: Vec<WeightedSet>) -> Result<Self> {
        for (i, s) in sets.iter().enumerate() {
            if s.weight == 0 {
                return Err(Error::InvalidInstance(format!("set {i} has weight 0; weights must be positive")));
            }
            if let Some(&e) = s.members.iter().find(|&&e| e >= universe_size) {
                return Err(Error::InvalidInstance(format!("set {i} contains {e}, outside universe of size {universe_size}")));
            }
        }
        Ok(ThresholdSetInstance { universe_size, sets, meta: None })
    }

    pub fn with_meta(mut self, meta: ReductionMeta) -> Self {
        self.meta = Some(meta);
        self
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn sets(&self) -> &[WeightedSet] {
        &self.sets
    }

    pub fn meta(&self) -> Option<&ReductionMeta> {
        self.meta.as_ref()
    }

    /// Whether `t` respects every threshold.
    ///
    /// # Panics
    /// If `t` contains an element outside the universe.
    pub fn is_feasible(&self, t: &[usize]) -> bool {
        let mut member = vec![false; self.universe_size];
        for &e in t {
            member[e] = true;
        }
        self.sets
            .iter()
            .all(|s| s.members.iter().filter(|&&e| member[e]).count() <= s.weight)
    }
}

impl fmt::Display for ThresholdSetInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(meta) = &self.meta {
            writeln!(f, "# {}", meta.header())?;
        }
        writeln!(f, "universe {}", self.universe_size)?;
        for s in &self.sets {
            write!(f, "set {}", s.weight)?;
            for e in &s.members {
                write!(f, " {e}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn parse_meta(line: &str, lineno: usize) -> Result<Option<ReductionMeta>> {
    let Some(body) = line.trim_start().strip_prefix('#') else { return Ok(None) };
    let mut fields = body.split_whitespace();
    if fields.next() != Some("reduction") {
        return Ok(None);
    }
    let mut meta = ReductionMeta::default();
    let (mut have_k, mut have_d, mut have_ell) = (false, false, false);
    for field in fields {
        let bad = || ParseError::new(lineno, 1, format!("bad reduction header field `{field}`"));
        let (key, value) = field.split_once('=').ok_or_else(bad)?;
        let value: u64 = value.parse().map_err(|_| bad())?;
        match key {
            "k" => (meta.k, have_k) = (value as usize, true),
            "D" => (meta.d, have_d) = (value as usize, true),
            "ell" => (meta.ell, have_ell) = (value as u32, true),
            "q" => meta.q = value as usize,
            "seed" => meta.seed = value,
            "source_vertices" => meta.source_vertices = value as usize,
            "duplicates" => meta.duplicates = value as usize,
            _ => return Err(bad().into()),
        }
    }
    if !(have_k && have_d && have_ell) || meta.ell == 0 || meta.ell > 16 || meta.q != 1 << meta.ell {
        return Err(ParseError::new(lineno, 1, "reduction header needs k, D, ell and q = 2^ell").into());
    }
    Ok(Some(meta))
}

impl FromStr for ThresholdSetInstance {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut meta = None;
        let mut universe = None;
        let mut sets = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            if universe.is_none() && meta.is_none() {
                meta = parse_meta(line, lineno)?;
            }
            let tokens = tokenize(line);
            let Some(head) = tokens.first() else { continue };
            let err = |col: usize, msg: &str| Error::from(ParseError::new(lineno, col, msg));
            match (head.text, universe) {
                ("universe", None) => {
                    if tokens.len() != 2 {
                        return Err(err(head.column, "expected `universe <n>`"));
                    }
                    universe = Some(parse_number(&tokens[1], lineno, "a universe size")?);
                }
                ("universe", Some(_)) => return Err(err(head.column, "duplicate `universe` line")),
                ("set", Some(u)) => {
                    if tokens.len() < 3 {
                        return Err(err(head.column, "expected `set <weight> <elem>+`"));
                    }
                    let weight = parse_number(&tokens[1], lineno, "a weight")?;
                    if weight == 0 {
                        return Err(err(tokens[1].column, "weights must be positive"));
                    }
                    let mut members = Vec::with_capacity(tokens.len() - 2);
                    for tok in &tokens[2..] {
                        let e = parse_number(tok, lineno, "an element")?;
                        if e >= u {
                            return Err(err(tok.column, "element outside the universe"));
                        }
                        members.push(e);
                    }
                    sets.push(WeightedSet::new(weight, members));
                }
                (_, None) => return Err(err(head.column, "expected `universe <n>` first")),
                (other, Some(_)) => return Err(err(head.column, &format!("unknown directive `{other}`"))),
            }
        }
        let universe = universe.ok_or_else(|| ParseError::new(1, 1, "missing `universe` line"))?;
        let inst = ThresholdSetInstance::new(universe, sets)?;
        Ok(match meta {
            Some(m) => inst.with_meta(m),
            None => inst,
        })
    }
}

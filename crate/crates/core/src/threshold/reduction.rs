//! Clique to Threshold Set via Reed-Solomon codewords.

use std::collections::HashSet;

use super::solve::group_layout;
use super::{max_solution, ReductionMeta, Strategy, ThresholdSetInstance, WeightedSet};
use crate::circuit::{Circuit, CircuitBuilder, GateKind, GateStyle};
use crate::combinatorics::Combinations;
use crate::exec::SolveOptions;
use crate::gf::{FieldElement, FieldSpec};
use crate::graph::ColoredGraph;
use crate::ratio::RatioSpec;
use crate::report::GapReport;
use crate::rs::ReedSolomon;
use crate::{Error, Result};

/// Default search cap for `D`.
pub const DEFAULT_D_CAP: u64 = 1 << 20;

/// Default cap on the total number of set memberships in a reduced instance.
pub const DEFAULT_MAX_MEMBERSHIPS: u64 = 1 << 24;

/// Index arithmetic for the padded graph and the universe `{s_{d,g}}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionLayout {
    pub k: usize,
    pub d: usize,
    pub ell: u32,
    pub q: usize,
    /// Padded vertex count `q^k`.
    pub n: usize,
}

impl ReductionLayout {
    pub fn from_meta(meta: &ReductionMeta) -> Self {
        ReductionLayout { k: meta.k, d: meta.d, ell: meta.ell, q: meta.q, n: meta.group_size() }
    }

    pub fn universe_size(&self) -> usize {
        self.n * self.d
    }

    /// Index of `s_{d,g}`, with `d` 1-based.
    pub fn element_index(&self, d: usize, g: &[u32]) -> usize {
        (d - 1) * self.n + self.vector_index(g)
    }

    /// Big-endian base-`q` value of `g`.
    pub fn vector_index(&self, g: &[u32]) -> usize {
        g.iter().fold(0, |acc, &x| acc * self.q + x as usize)
    }

    /// Base-`q` digits of `v`, most significant first.
    pub fn vertex_vector(&self, v: usize) -> Vec<u32> {
        let mut digits = vec![0; self.k];
        let mut rest = v;
        for slot in digits.iter_mut().rev() {
            *slot = (rest % self.q) as u32;
            rest /= self.q;
        }
        digits
    }

    /// `(d, g)` for a universe element, `d` 1-based.
    pub fn element(&self, index: usize) -> (usize, Vec<u32>) {
        (index / self.n + 1, self.vertex_vector(index % self.n))
    }

    fn field(&self) -> FieldSpec {
        FieldSpec::standard(self.ell).expect("layout ell is within the modulus table")
    }

    fn code(&self) -> Result<ReedSolomon> {
        ReedSolomon::new(self.field(), self.k, self.d)
    }

    fn message(&self, v: usize) -> Vec<FieldElement> {
        let field = self.field();
        self.vertex_vector(v).into_iter().map(|w| field.element(w).expect("digit < q")).collect()
    }

    /// `RS(v)` for every vertex of the padded graph.
    fn codewords(&self) -> Result<Vec<Vec<u32>>> {
        let code = self.code()?;
        (0..self.n)
            .map(|v| Ok(code.encode(&self.message(v))?.into_iter().map(FieldElement::word).collect()))
            .collect()
    }
}

/// Smallest `D` with `D / rho(D) >= k`.
pub fn compute_d(k: usize, rho: &RatioSpec, cap: u64) -> Result<usize> {
    Ok(rho.smallest_reaching(k as u64, cap)? as usize)
}

/// Pads `g` with isolated vertices to the least `n = 2^(k ell)`, `ell >= 1`,
/// with `n > D^k` and `n >= |V(g)|`.
pub fn pad_graph(g: &ColoredGraph, k: usize, d: usize) -> Result<(ColoredGraph, ReductionLayout)> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let dk = (d as u128).checked_pow(k as u32);
    let mut ell = 1u32;
    loop {
        let n = 1u128.checked_shl(k as u32 * ell).filter(|_| (k as u32).saturating_mul(ell) < 127);
        let Some(n) = n else {
            return Err(Error::InvalidArgument(format!("no padding fits for k = {k}, D = {d}")));
        };
        if dk.is_some_and(|dk| n > dk) && n >= g.num_vertices() as u128 {
            if ell > crate::gf::MAX_ELL || n > usize::MAX as u128 {
                return Err(Error::InvalidArgument(format!("padding needs ell = {ell}, beyond supported fields")));
            }
            let n = n as usize;
            let layout = ReductionLayout { k, d, ell, q: 1 << ell, n };
            return Ok((g.with_isolated(n), layout));
        }
        ell += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionOptions {
    pub d_cap: u64,
    pub max_memberships: u64,
    /// Recorded in the instance header; the construction itself is deterministic.
    pub seed: u64,
    pub solve: SolveOptions,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions {
            d_cap: DEFAULT_D_CAP,
            max_memberships: DEFAULT_MAX_MEMBERSHIPS,
            seed: 0,
            solve: SolveOptions::default(),
        }
    }
}

/// Builds the Threshold Set instance: `D` groups of weight 1 and, for each
/// `k`-subset `X` of groups, coordinates `a < b` and nonadjacent ordered pair
/// `(u, v)` (including `u = v`), the weight-`(k-1)` set
/// `{ s_{j,g} : j in X, g[a] = RS(u)[j], g[b] = RS(v)[j] }`.
pub fn reduce_clique_to_threshold(
    g: &ColoredGraph,
    k: usize,
    rho: &RatioSpec,
    opts: &ReductionOptions,
) -> Result<ThresholdSetInstance> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("the reduction needs k >= 2, got {k}")));
    }
    let d = compute_d(k, rho, opts.d_cap)?;
    let (padded, layout) = pad_graph(g, k, d)?;
    let n = layout.n;

    let nonadjacent: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !padded.has_edge(u, v))
        .collect();
    let subsets = crate::combinatorics::binomial(d, k);
    let per_set = (k * layout.q.pow(k as u32 - 2)) as u128;
    let memberships = subsets
        .saturating_mul((k * (k - 1) / 2) as u128)
        .saturating_mul(nonadjacent.len() as u128)
        .saturating_mul(per_set)
        .saturating_add(layout.universe_size() as u128);
    if memberships > opts.max_memberships as u128 {
        return Err(Error::budget(memberships, opts.max_memberships));
    }

    let codewords = layout.codewords()?;
    let mut sets: Vec<WeightedSet> = (1..=d).map(|j| WeightedSet::new(1, ((j - 1) * n..j * n).collect())).collect();
    let mut seen = HashSet::new();
    let mut duplicates = 0;
    let vectors: Vec<Vec<u32>> = (0..n).map(|v| layout.vertex_vector(v)).collect();
    for x in Combinations::new(d, k) {
        for a in 0..k {
            for b in a + 1..k {
                for &(u, v) in &nonadjacent {
                    let mut members = Vec::with_capacity(per_set as usize);
                    for &j in &x {
                        let (cu, cv) = (codewords[u][j], codewords[v][j]);
                        for (idx, gv) in vectors.iter().enumerate() {
                            if gv[a] == cu && gv[b] == cv {
                                members.push(j * n + idx);
                            }
                        }
                    }
                    let set = WeightedSet::new(k - 1, members);
                    if seen.insert(set.members.clone()) {
                        sets.push(set);
                    } else {
                        duplicates += 1;
                    }
                }
            }
        }
    }
    let meta = ReductionMeta {
        k,
        d,
        ell: layout.ell,
        q: layout.q,
        seed: opts.seed,
        source_vertices: g.num_vertices(),
        duplicates,
    };
    Ok(ThresholdSetInstance::new(layout.universe_size(), sets)?.with_meta(meta))
}

/// The solution `{ s_{j,g_j} : g_j[i] = RS(v_i)[j] }` built from the clique
/// `v_1, .., v_k` (in the given order).
pub fn clique_witness(meta: &ReductionMeta, clique: &[usize]) -> Result<Vec<usize>> {
    let layout = ReductionLayout::from_meta(meta);
    if clique.len() != layout.k {
        return Err(Error::InvalidArgument(format!("expected {} vertices, got {}", layout.k, clique.len())));
    }
    if let Some(&v) = clique.iter().find(|&&v| v >= layout.n) {
        return Err(Error::InvalidArgument(format!("vertex {v} is outside the padded graph")));
    }
    let code = layout.code()?;
    let words: Vec<Vec<FieldElement>> =
        clique.iter().map(|&v| code.encode(&layout.message(v))).collect::<Result<_>>()?;
    Ok((0..layout.d)
        .map(|j| {
            let g: Vec<u32> = words.iter().map(|w| w[j].word()).collect();
            layout.element_index(j + 1, &g)
        })
        .collect())
}

/// Reads `k` vertices back from a solution: takes the first `k` groups that
/// `t` meets, and decodes row `i` of the chosen vectors into vertex `v_i`.
pub fn decode_solution(meta: &ReductionMeta, t: &[usize]) -> Result<Vec<usize>> {
    let layout = ReductionLayout::from_meta(meta);
    let mut chosen: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut sorted = t.to_vec();
    sorted.sort_unstable();
    for &e in &sorted {
        if e >= layout.universe_size() {
            return Err(Error::InvalidArgument(format!("element {e} is outside the universe")));
        }
        let (d, g) = layout.element(e);
        match chosen.last() {
            Some((last, _)) if *last == d => {
                return Err(Error::InvalidArgument(format!("group {d} is met twice")));
            }
            _ if chosen.len() < layout.k => chosen.push((d, g)),
            _ => {}
        }
    }
    if chosen.len() < layout.k {
        return Err(Error::TooFewKnown { needed: layout.k, got: chosen.len() });
    }
    let code = layout.code()?;
    let field = layout.field();
    (0..layout.k)
        .map(|i| {
            let known: Vec<(usize, FieldElement)> =
                chosen.iter().map(|(d, g)| Ok((d - 1, field.element(g[i])?))).collect::<Result<_>>()?;
            let message = code.recover(&known)?;
            let digits: Vec<u32> = message.iter().map(|m| m.word()).collect();
            Ok(layout.vector_index(&digits))
        })
        .collect()
}

/// Antimonotone circuit accepting exactly the feasible solutions: pairwise
/// exclusions inside each group, and for each constraint set an
/// `OR` over its groups of "no member of this group is chosen".
pub fn emit_antimonotone_circuit(inst: &ThresholdSetInstance, style: GateStyle) -> Result<Circuit> {
    let meta = inst.meta().ok_or(Error::MissingMetadata)?;
    let (g, d) = group_layout(inst)?;
    let layout = ReductionLayout::from_meta(meta);

    let mut b = CircuitBuilder::new();
    let mut negated = Vec::with_capacity(inst.universe_size());
    for e in 0..inst.universe_size() {
        let (group, vector) = layout.element(e);
        let id = b.add_input(&format!("s_{group}_{}", layout.vector_index(&vector)))?;
        negated.push(id);
    }
    for id in negated.iter_mut() {
        *id = b.not(*id);
    }

    let mut clauses = Vec::new();
    for group in 0..d {
        for x in group * g..(group + 1) * g {
            for y in x + 1..(group + 1) * g {
                clauses.push(b.styled(GateKind::Or, vec![negated[x], negated[y]], style));
            }
        }
    }
    for (i, s) in inst.sets().iter().enumerate() {
        let mut by_group: Vec<(usize, Vec<usize>)> = Vec::new();
        for &e in &s.members {
            match by_group.last_mut() {
                Some((grp, members)) if *grp == e / g => members.push(negated[e]),
                _ => by_group.push((e / g, vec![negated[e]])),
            }
        }
        if s.weight == 1 && by_group.len() == 1 {
            // Within one group; the pairwise exclusions cover it when it is
            // the whole group.
            if s.members.len() == g {
                continue;
            }
            for (x, &ex) in s.members.iter().enumerate() {
                for &ey in &s.members[x + 1..] {
                    clauses.push(b.styled(GateKind::Or, vec![negated[ex], negated[ey]], style));
                }
            }
            continue;
        }
        if s.weight + 1 != by_group.len() {
            return Err(Error::InvalidInstance(format!(
                "set {i} has weight {} but meets {} groups; expected one less",
                s.weight,
                by_group.len()
            )));
        }
        let empties: Vec<usize> = by_group.into_iter().map(|(_, m)| b.styled(GateKind::And, m, style)).collect();
        clauses.push(b.styled(GateKind::Or, empties, style));
    }
    let out = b.styled(GateKind::And, clauses, style);
    b.build(out)
}

/// Reduces `g` and checks both claims by exhaustive search.
pub fn verify_gap_threshold(g: &ColoredGraph, k: usize, rho: &RatioSpec, opts: &ReductionOptions) -> Result<GapReport> {
    let inst = reduce_clique_to_threshold(g, k, rho, opts)?;
    let meta = *inst.meta().expect("reduced instances carry metadata");
    let clique = g.find_k_clique(k, &opts.solve)?;
    let solution = max_solution(&inst, Strategy::Structured, &opts.solve)?;

    let mut details = vec![
        ("rho".to_owned(), rho.to_string()),
        ("ell".to_owned(), meta.ell.to_string()),
        ("q".to_owned(), meta.q.to_string()),
        ("universe".to_owned(), inst.universe_size().to_string()),
        ("sets".to_owned(), inst.sets().len().to_string()),
        ("duplicates".to_owned(), meta.duplicates.to_string()),
    ];
    let (claim1, source_witness) = match &clique {
        Some(c) => {
            let w = clique_witness(&meta, c)?;
            let feasible = w.len() == meta.d && inst.is_feasible(&w);
            details.push(("clique_witness".to_owned(), list(&w)));
            details.push(("clique_witness_feasible".to_owned(), feasible.to_string()));
            (feasible && solution.size >= meta.d, Some(c.clone()))
        }
        None => (true, None),
    };
    let claim2 = clique.is_some() || solution.size < k;
    Ok(GapReport {
        kind: "threshold",
        k,
        k_prime: meta.d,
        source_opt: clique.as_ref().map(|_| k),
        target_opt: Some(solution.size),
        source_yes: clique.is_some(),
        claim1_holds: claim1,
        claim2_holds: claim2,
        source_witness,
        target_witness: Some(solution.witness),
        details,
    })
}

fn list(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

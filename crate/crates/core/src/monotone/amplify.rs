use std::collections::HashMap;

use crate::circuit::{self, Circuit, CircuitBuilder, CircuitClass, GateKind, GateStyle, NodeId};
use crate::combinatorics::Combinations;
use crate::exec::SolveOptions;
use crate::hash_family::{build_covering_family, FamilyOptions, HashFamily};
use crate::{Error, GapReport, RatioSpec, Result};

/// Default cap on gates in an amplified circuit.
pub const DEFAULT_MAX_GATES: usize = 5_000_000;

#[derive(Debug, Clone, Copy)]
pub struct AmplifyOptions {
    pub gate_style: GateStyle,
    pub family: FamilyOptions,
    pub max_gates: usize,
}

impl Default for AmplifyOptions {
    fn default() -> Self {
        AmplifyOptions { gate_style: GateStyle::Large, family: FamilyOptions::default(), max_gates: DEFAULT_MAX_GATES }
    }
}

impl AmplifyOptions {
    pub fn with_seed(seed: u64) -> Self {
        AmplifyOptions { family: FamilyOptions::with_seed(seed), ..Default::default() }
    }

    pub fn gate_style(mut self, style: GateStyle) -> Self {
        self.gate_style = style;
        self
    }

    pub fn solve(&self) -> &SolveOptions {
        &self.family.solve
    }
}

/// Result of [`amplify`].
#[derive(Debug, Clone)]
pub struct Amplified {
    pub circuit: Circuit,
    pub n: usize,
    pub k: usize,
    pub k_prime: usize,
    pub rho: RatioSpec,
    pub family: HashFamily,
    pub gate_style: GateStyle,
    /// Every term for some hash function vanished, so the amplified function
    /// is constant false. It is then emitted as a conjunction of `k' + 1`
    /// fresh inputs, which no assignment of weight `<= k'` satisfies.
    pub falsum: bool,
}

impl Amplified {
    pub fn header(&self) -> Vec<String> {
        vec![format!(
            "amplify n={} k={} kprime={} rho={} family_size={} seed={} gate_style={} falsum={}",
            self.n,
            self.k,
            self.k_prime,
            self.rho,
            self.family.size(),
            self.family.seed().unwrap_or(0),
            self.gate_style,
            self.falsum
        )]
    }

    pub fn to_text(&self) -> String {
        self.circuit.to_text_with_header(&self.header())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Val {
    False,
    True,
    Node(NodeId),
}

/// Nodes from which the output is reachable.
/// Copies `c` into `b` with every input outside `kept` fixed to 0,
/// propagating constants away.
fn instantiate(c: &Circuit, live: &[bool], kept: &[bool], b: &mut CircuitBuilder) -> Val {
    let n = c.num_inputs();
    let mut vals: Vec<Val> = (0..n).map(|i| if kept[i] { Val::Node(i) } else { Val::False }).collect();
    for (gi, gate) in c.gates().iter().enumerate() {
        if !live[n + gi] {
            vals.push(Val::False);
            continue;
        }
        let ops = gate.operands.iter().map(|&o| vals[o]);
        let v = match gate.kind {
            GateKind::And => {
                if ops.clone().any(|v| v == Val::False) {
                    Val::False
                } else {
                    let nodes: Vec<NodeId> = ops.filter_map(node).collect();
                    if nodes.is_empty() {
                        Val::True
                    } else {
                        Val::Node(b.and(nodes))
                    }
                }
            }
            GateKind::Or => {
                if ops.clone().any(|v| v == Val::True) {
                    Val::True
                } else {
                    let nodes: Vec<NodeId> = ops.filter_map(node).collect();
                    if nodes.is_empty() {
                        Val::False
                    } else {
                        Val::Node(b.or(nodes))
                    }
                }
            }
            GateKind::Not => match vals[gate.operands[0]] {
                Val::False => Val::True,
                Val::True => Val::False,
                Val::Node(x) => Val::Node(b.not(x)),
            },
        };
        vals.push(v);
    }
    vals[c.output()]
}

fn node(v: Val) -> Option<NodeId> {
    match v {
        Val::Node(id) => Some(id),
        _ => None,
    }
}

/// Builds `C'(S) = AND_{h in H} OR_{T subset [k'], |T| <= k} C(S ∩ h^-1(T))`
/// where `k' = ceil(rho(k) k)` and `H` injects every `min(n, k')`-subset of
/// the inputs.
///
/// A weight-`k` satisfying assignment of `C` satisfies `C'`; if `C` has no
/// satisfying assignment of weight `k`, then `C'` has none of weight `<= k'`.
pub fn amplify(c: &Circuit, k: usize, rho: &RatioSpec, opts: &AmplifyOptions) -> Result<Amplified> {
    if c.class() != CircuitClass::Monotone {
        return Err(Error::NotMonotone);
    }
    let n = c.num_inputs();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let k_prime = rho.k_prime(k as u64) as usize;
    let mut family = build_covering_family(n, k_prime, n.min(k_prime), &opts.family)?;
    family.dedup();

    let value_sets: Vec<Vec<u32>> = (0..=k.min(k_prime))
        .flat_map(|size| Combinations::new(k_prime, size))
        .map(|t| t.into_iter().map(|v| v as u32 + 1).collect())
        .collect();

    let live = c.live_nodes();
    let mut b = CircuitBuilder::new();
    for name in c.input_names() {
        b.add_input(name)?;
    }
    let reserved: Vec<&str> = c.gates().iter().map(|g| g.name.as_str()).collect();
    b.reserve_names(reserved);

    let mut memo: HashMap<Vec<bool>, Val> = HashMap::new();
    let mut conjuncts = Vec::with_capacity(family.size());
    let mut falsum = false;
    'functions: for h in family.functions() {
        let mut terms = Vec::new();
        for t in &value_sets {
            let kept: Vec<bool> = h.iter().map(|v| t.contains(v)).collect();
            let val = match memo.get(&kept) {
                Some(&v) => v,
                None => {
                    let v = instantiate(c, &live, &kept, &mut b);
                    memo.insert(kept, v);
                    v
                }
            };
            match val {
                Val::False => {}
                // This disjunction is constant true and drops out of the conjunction.
                Val::True => continue 'functions,
                Val::Node(id) => terms.push(id),
            }
            if b.num_gates() > opts.max_gates {
                return Err(Error::budget(b.num_gates() as u128, opts.max_gates as u64));
            }
        }
        if terms.is_empty() {
            falsum = true;
            break;
        }
        conjuncts.push(b.styled(GateKind::Or, terms, opts.gate_style));
    }

    let circuit = if falsum {
        falsum_circuit(c, k_prime + 1, opts.gate_style)?
    } else if conjuncts.is_empty() {
        return Err(Error::InvalidCircuit("amplified circuit is constant true".into()));
    } else {
        let out = b.styled(GateKind::And, conjuncts, opts.gate_style);
        // Memoized copies under dropped disjunctions are dead.
        b.build(out)?.pruned()
    };
    Ok(Amplified { circuit, n, k, k_prime, rho: *rho, family, gate_style: opts.gate_style, falsum })
}

/// `c`'s inputs plus `width` fresh ones, output = AND of the fresh inputs.
fn falsum_circuit(c: &Circuit, width: usize, style: GateStyle) -> Result<Circuit> {
    let mut b = CircuitBuilder::new();
    for name in c.input_names() {
        b.add_input(name)?;
    }
    let mut fresh = Vec::with_capacity(width);
    let mut suffix = 0;
    while fresh.len() < width {
        let name = format!("zf_{suffix}");
        suffix += 1;
        if c.input_index(&name).is_none() {
            fresh.push(b.add_input(&name)?);
        }
    }
    let out = b.styled(GateKind::And, fresh, style);
    b.build(out)
}

/// Amplifies `c` and checks both gap claims by exhaustive search.
pub fn verify_gap_monotone(c: &Circuit, k: usize, rho: &RatioSpec, opts: &AmplifyOptions) -> Result<GapReport> {
    let amp = amplify(c, k, rho, opts)?;
    let solve = opts.solve();
    let cp = &amp.circuit;

    let source_witness = circuit::is_k_satisfiable(c, k, solve)?;
    let source_yes = source_witness.is_some();
    let source_opt = circuit::min_weight_sat(c, solve)?;
    let target_opt = circuit::min_weight_sat(cp, solve)?;

    let (claim1, target_witness) = if source_yes {
        let w = circuit::is_k_satisfiable(cp, k, solve)?;
        // The source witness itself must satisfy C'.
        let direct = source_witness.as_ref().is_some_and(|s| cp.evaluate(s));
        (w.is_some() && direct, w)
    } else {
        (true, target_opt.as_ref().map(|(_, a)| a.clone()))
    };
    let claim2 = source_yes || target_opt.as_ref().is_none_or(|(w, _)| *w > amp.k_prime);

    let (m, mp) = (c.metrics(), cp.metrics());
    let mut details = vec![
        ("rho".into(), amp.rho.to_string()),
        ("family_size".into(), amp.family.size().to_string()),
        ("seed".into(), amp.family.seed().unwrap_or(0).to_string()),
        ("gate_style".into(), amp.gate_style.to_string()),
        ("falsum".into(), amp.falsum.to_string()),
        ("depth".into(), m.depth.to_string()),
        ("weft".into(), m.weft.to_string()),
        ("amplified_depth".into(), mp.depth.to_string()),
        ("amplified_weft".into(), mp.weft.to_string()),
        ("amplified_nodes".into(), mp.node_count.to_string()),
    ];
    if source_opt.as_ref().is_some_and(|(w, _)| *w == 0) || target_opt.as_ref().is_some_and(|(w, _)| *w == 0) {
        details.push(("zero_weight_optimum".into(), "true".into()));
    }
    Ok(GapReport {
        kind: "monotone",
        k,
        k_prime: amp.k_prime,
        source_opt: source_opt.map(|(w, _)| w),
        target_opt: target_opt.map(|(w, _)| w),
        source_yes,
        claim1_holds: claim1,
        claim2_holds: claim2,
        source_witness: source_witness.map(|a| a.ones().to_vec()),
        target_witness: target_witness.map(|a| a.ones().to_vec()),
        details,
    })
}

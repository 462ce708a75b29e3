//! Boolean circuits over AND, OR and NOT nodes.
//!
//! Nodes are numbered densely: inputs first (`0..n`), then gates in
//! topological order. Every operand refers to a smaller node id, which is
//! what keeps the graph acyclic.

mod builder;
mod format;
mod metrics;
mod solve;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

pub use builder::CircuitBuilder;
pub use metrics::{CircuitClass, CircuitMetrics};
pub use solve::{is_k_satisfiable, max_weight_sat, min_weight_sat, min_weight_sat_up_to};

use crate::{Error, Result};

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    And,
    Or,
    Not,
}

impl GateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GateKind::And => "AND",
            GateKind::Or => "OR",
            GateKind::Not => "NOT",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How a construction realizes wide conjunctions and disjunctions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GateStyle {
    /// One node per connective, whatever its fan-in.
    #[default]
    Large,
    /// Balanced trees of indegree-2 nodes.
    Binary,
}

impl FromStr for GateStyle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "large" => Ok(GateStyle::Large),
            "binary" => Ok(GateStyle::Binary),
            other => Err(Error::InvalidArgument(format!("unknown gate style `{other}` (expected large|binary)"))),
        }
    }
}

impl fmt::Display for GateStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GateStyle::Large => "large",
            GateStyle::Binary => "binary",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gate {
    pub name: String,
    pub kind: GateKind,
    pub operands: Vec<NodeId>,
}

/// A validated circuit. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    inputs: Vec<String>,
    gates: Vec<Gate>,
    output: NodeId,
}

/// A set of inputs carrying value 1, stored as sorted input indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Assignment {
    ones: Vec<usize>,
}

impl Assignment {
    pub fn new(mut ones: Vec<usize>) -> Self {
        ones.sort_unstable();
        ones.dedup();
        Assignment { ones }
    }

    pub fn empty() -> Self {
        Assignment::default()
    }

    pub fn weight(&self) -> usize {
        self.ones.len()
    }

    pub fn ones(&self) -> &[usize] {
        &self.ones
    }

    pub fn contains(&self, input: usize) -> bool {
        self.ones.binary_search(&input).is_ok()
    }

    pub fn is_subset_of(&self, other: &Assignment) -> bool {
        self.ones.iter().all(|&i| other.contains(i))
    }

    pub fn to_bits(&self, n: usize) -> Vec<bool> {
        let mut bits = vec![false; n];
        for &i in &self.ones {
            bits[i] = true;
        }
        bits
    }
}

impl From<Vec<usize>> for Assignment {
    fn from(ones: Vec<usize>) -> Self {
        Assignment::new(ones)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Circuit {
    /// Validates and assembles a circuit. Operand ids index inputs first, then gates.
    pub fn new(inputs: Vec<String>, gates: Vec<Gate>, output: NodeId) -> Result<Self> {
        if inputs.is_empty() {
            return Err(Error::InvalidCircuit("circuit has no inputs".into()));
        }
        let mut seen: HashMap<&str, NodeId> = HashMap::new();
        let names = inputs.iter().map(String::as_str).chain(gates.iter().map(|g| g.name.as_str()));
        for (id, name) in names.enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidCircuit(format!("`{name}` is not a valid identifier")));
            }
            if seen.insert(name, id).is_some() {
                return Err(Error::InvalidCircuit(format!("duplicate identifier `{name}`")));
            }
        }
        for (gi, gate) in gates.iter().enumerate() {
            let id = inputs.len() + gi;
            check_arity(gate.kind, gate.operands.len()).map_err(|m| Error::InvalidCircuit(format!("gate `{}`: {m}", gate.name)))?;
            if let Some(&bad) = gate.operands.iter().find(|&&op| op >= id) {
                return Err(Error::InvalidCircuit(format!(
                    "gate `{}` uses node {bad} which is not declared before it",
                    gate.name
                )));
            }
        }
        if output >= inputs.len() + gates.len() {
            return Err(Error::InvalidCircuit(format!("output node {output} does not exist")));
        }
        Ok(Circuit { inputs, gates, output })
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn num_nodes(&self) -> usize {
        self.inputs.len() + self.gates.len()
    }

    pub fn input_names(&self) -> &[String] {
        &self.inputs
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> NodeId {
        self.output
    }

    pub fn is_input(&self, id: NodeId) -> bool {
        id < self.inputs.len()
    }

    pub fn gate(&self, id: NodeId) -> Option<&Gate> {
        id.checked_sub(self.inputs.len()).and_then(|g| self.gates.get(g))
    }

    pub fn node_name(&self, id: NodeId) -> &str {
        match self.gate(id) {
            Some(g) => &g.name,
            None => &self.inputs[id],
        }
    }

    pub fn input_index(&self, name: &str) -> Option<usize> {
        self.inputs.iter().position(|n| n == name)
    }

    /// Names of the inputs set in `a`, in input order.
    pub fn assignment_names(&self, a: &Assignment) -> Vec<&str> {
        a.ones().iter().map(|&i| self.inputs[i].as_str()).collect()
    }

    pub fn evaluate(&self, a: &Assignment) -> bool {
        self.evaluate_bits(&a.to_bits(self.num_inputs()))
    }

    /// Evaluates with one value per input.
    pub fn evaluate_bits(&self, inputs: &[bool]) -> bool {
        assert_eq!(inputs.len(), self.num_inputs(), "assignment length mismatch");
        let mut values = Vec::with_capacity(self.num_nodes());
        values.extend_from_slice(inputs);
        for gate in &self.gates {
            let v = match gate.kind {
                GateKind::And => gate.operands.iter().all(|&o| values[o]),
                GateKind::Or => gate.operands.iter().any(|&o| values[o]),
                GateKind::Not => !values[gate.operands[0]],
            };
            values.push(v);
        }
        values[self.output]
    }

    /// Bit-sliced evaluation: bit `b` of `inputs[i]` is input `i` of the
    /// `b`-th assignment. Returns the output word. `scratch` is reused
    /// between calls.
    pub fn evaluate_sliced(&self, inputs: &[u64], scratch: &mut Vec<u64>) -> u64 {
        debug_assert_eq!(inputs.len(), self.num_inputs());
        scratch.clear();
        scratch.extend_from_slice(inputs);
        for gate in &self.gates {
            let ops = &gate.operands;
            let v = match gate.kind {
                GateKind::And => ops.iter().fold(!0u64, |acc, &o| acc & scratch[o]),
                GateKind::Or => ops.iter().fold(0u64, |acc, &o| acc | scratch[o]),
                GateKind::Not => !scratch[ops[0]],
            };
            scratch.push(v);
        }
        scratch[self.output]
    }

    /// Marks the nodes the output depends on.
    pub fn live_nodes(&self) -> Vec<bool> {
        let mut live = vec![false; self.num_nodes()];
        live[self.output] = true;
        for (gi, gate) in self.gates.iter().enumerate().rev() {
            if live[self.inputs.len() + gi] {
                for &op in &gate.operands {
                    live[op] = true;
                }
            }
        }
        live
    }

    /// The same circuit without gates the output does not depend on.
    /// Inputs are always kept.
    pub fn pruned(&self) -> Circuit {
        let live = self.live_nodes();
        let n = self.inputs.len();
        let mut map: Vec<NodeId> = (0..n).collect();
        let mut gates = Vec::new();
        for (gi, gate) in self.gates.iter().enumerate() {
            if live[n + gi] {
                let operands = gate.operands.iter().map(|&o| map[o]).collect();
                gates.push(Gate { name: gate.name.clone(), kind: gate.kind, operands });
            }
            // Dead gates are never referenced by live ones.
            map.push(if live[n + gi] { n + gates.len() - 1 } else { usize::MAX });
        }
        Circuit::new(self.inputs.clone(), gates, map[self.output]).expect("pruning preserves validity")
    }

    /// Equivalent circuit in which every AND/OR node has indegree exactly 2.
    /// Wide nodes become balanced trees; the root keeps the original name.
    pub fn binarized(&self) -> Circuit {
        let mut b = CircuitBuilder::new();
        for name in &self.inputs {
            b.add_input(name).expect("inputs of a valid circuit are distinct");
        }
        let reserved: Vec<&str> = self.gates.iter().map(|g| g.name.as_str()).collect();
        b.reserve_names(reserved);
        let mut map: Vec<NodeId> = (0..self.inputs.len()).collect();
        for gate in &self.gates {
            let ops: Vec<NodeId> = gate.operands.iter().map(|&o| map[o]).collect();
            let id = if gate.kind == GateKind::Not || ops.len() <= 2 {
                b.push_gate(gate.name.clone(), gate.kind, ops)
            } else {
                let mid = ops.len() / 2;
                let left = b.tree(gate.kind, &ops[..mid]);
                let right = b.tree(gate.kind, &ops[mid..]);
                b.push_gate(gate.name.clone(), gate.kind, vec![left, right])
            };
            map.push(id);
        }
        b.build(map[self.output]).expect("binarization preserves validity")
    }
}

pub(crate) fn check_arity(kind: GateKind, arity: usize) -> std::result::Result<(), String> {
    match kind {
        GateKind::Not if arity != 1 => Err(format!("NOT takes exactly 1 operand, got {arity}")),
        GateKind::And | GateKind::Or if arity < 2 => Err(format!("{kind} needs at least 2 operands, got {arity}")),
        _ => Ok(()),
    }
}

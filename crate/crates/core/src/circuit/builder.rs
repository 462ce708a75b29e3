use std::collections::{HashMap, HashSet};

use super::{check_arity, is_identifier, Circuit, Gate, GateKind, GateStyle, NodeId};
use crate::{Error, Result};

/// Incremental circuit construction.
///
/// Inputs must all be added before the first gate. The connective helpers
/// ([`and`](Self::and), [`or`](Self::or), [`not`](Self::not)) name their
/// gates automatically, collapse unary connectives to a wire and share
/// structurally identical gates.
#[derive(Debug, Default)]
pub struct CircuitBuilder {
    inputs: Vec<String>,
    gates: Vec<Gate>,
    names: HashSet<String>,
    reserved: HashSet<String>,
    consed: HashMap<(GateKind, Vec<NodeId>), NodeId>,
    next_auto: usize,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num_nodes(&self) -> usize {
        self.inputs.len() + self.gates.len()
    }

    pub fn num_gates(&self) -> usize {
        self.gates.len()
    }

    /// Names that automatic naming must avoid even though they are not yet used.
    pub fn reserve_names<'a>(&mut self, names: impl IntoIterator<Item = &'a str>) {
        self.reserved.extend(names.into_iter().map(str::to_owned));
    }

    pub fn add_input(&mut self, name: &str) -> Result<NodeId> {
        if !self.gates.is_empty() {
            return Err(Error::InvalidCircuit("inputs must be declared before gates".into()));
        }
        self.claim_name(name)?;
        self.inputs.push(name.to_owned());
        Ok(self.inputs.len() - 1)
    }

    /// Adds a named gate, checking arity and operand order.
    pub fn add_gate(&mut self, name: &str, kind: GateKind, operands: Vec<NodeId>) -> Result<NodeId> {
        check_arity(kind, operands.len()).map_err(|m| Error::InvalidCircuit(format!("gate `{name}`: {m}")))?;
        let next = self.num_nodes();
        if let Some(&bad) = operands.iter().find(|&&o| o >= next) {
            return Err(Error::InvalidCircuit(format!("gate `{name}` references undeclared node {bad}")));
        }
        self.claim_name(name)?;
        Ok(self.push_unchecked(name.to_owned(), kind, operands))
    }

    pub(crate) fn push_gate(&mut self, name: String, kind: GateKind, operands: Vec<NodeId>) -> NodeId {
        self.names.insert(name.clone());
        self.push_unchecked(name, kind, operands)
    }

    fn push_unchecked(&mut self, name: String, kind: GateKind, operands: Vec<NodeId>) -> NodeId {
        self.gates.push(Gate { name, kind, operands });
        self.num_nodes() - 1
    }

    fn claim_name(&mut self, name: &str) -> Result<()> {
        if !is_identifier(name) {
            return Err(Error::InvalidCircuit(format!("`{name}` is not a valid identifier")));
        }
        if !self.names.insert(name.to_owned()) {
            return Err(Error::InvalidCircuit(format!("duplicate identifier `{name}`")));
        }
        Ok(())
    }

    fn auto_name(&mut self) -> String {
        loop {
            let name = format!("_g{}", self.next_auto);
            self.next_auto += 1;
            if !self.names.contains(&name) && !self.reserved.contains(&name) {
                return name;
            }
        }
    }

    fn consed_gate(&mut self, kind: GateKind, operands: Vec<NodeId>) -> NodeId {
        if let Some(&id) = self.consed.get(&(kind, operands.clone())) {
            return id;
        }
        let name = self.auto_name();
        let id = self.push_gate(name, kind, operands.clone());
        self.consed.insert((kind, operands), id);
        id
    }

    fn connective(&mut self, kind: GateKind, mut operands: Vec<NodeId>) -> NodeId {
        operands.sort_unstable();
        operands.dedup();
        match operands.len() {
            0 => panic!("empty {kind} has no constant-free representation"),
            1 => operands[0],
            _ => self.consed_gate(kind, operands),
        }
    }

    /// Conjunction of `operands`. A single operand is returned as is.
    ///
    /// # Panics
    /// If `operands` is empty.
    pub fn and(&mut self, operands: Vec<NodeId>) -> NodeId {
        self.connective(GateKind::And, operands)
    }

    /// Disjunction of `operands`. A single operand is returned as is.
    ///
    /// # Panics
    /// If `operands` is empty.
    pub fn or(&mut self, operands: Vec<NodeId>) -> NodeId {
        self.connective(GateKind::Or, operands)
    }

    pub fn not(&mut self, operand: NodeId) -> NodeId {
        self.consed_gate(GateKind::Not, vec![operand])
    }

    /// Balanced tree of indegree-2 `kind` nodes over `operands`.
    pub fn tree(&mut self, kind: GateKind, operands: &[NodeId]) -> NodeId {
        assert!(kind != GateKind::Not && !operands.is_empty());
        let mut ops = operands.to_vec();
        ops.sort_unstable();
        ops.dedup();
        self.tree_rec(kind, &ops)
    }

    fn tree_rec(&mut self, kind: GateKind, ops: &[NodeId]) -> NodeId {
        match ops.len() {
            1 => ops[0],
            2 => self.consed_gate(kind, ops.to_vec()),
            len => {
                let (l, r) = ops.split_at(len / 2);
                let left = self.tree_rec(kind, l);
                let right = self.tree_rec(kind, r);
                self.connective(kind, vec![left, right])
            }
        }
    }

    /// `and`/`or` realized according to `style`.
    pub fn styled(&mut self, kind: GateKind, operands: Vec<NodeId>, style: GateStyle) -> NodeId {
        match style {
            GateStyle::Large => self.connective(kind, operands),
            GateStyle::Binary => self.tree(kind, &operands),
        }
    }

    pub fn build(self, output: NodeId) -> Result<Circuit> {
        Circuit::new(self.inputs, self.gates, output)
    }
}

use std::fmt;

use super::{Circuit, GateKind};

/// Monotonicity class of a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CircuitClass {
    /// No negation nodes.
    Monotone,
    /// Negations sit directly on inputs and inputs feed only negations.
    Antimonotone,
    General,
}

impl fmt::Display for CircuitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CircuitClass::Monotone => "monotone",
            CircuitClass::Antimonotone => "antimonotone",
            CircuitClass::General => "general",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircuitMetrics {
    /// Longest input-to-output path, in edges.
    pub depth: usize,
    /// Most nodes of indegree > 2 on any input-to-output path.
    pub weft: usize,
    pub class: CircuitClass,
    pub node_count: usize,
}

impl Circuit {
    pub fn metrics(&self) -> CircuitMetrics {
        let n = self.num_inputs();
        let mut depth = vec![0usize; self.num_nodes()];
        let mut weft = vec![0usize; self.num_nodes()];
        for (gi, gate) in self.gates.iter().enumerate() {
            let id = n + gi;
            let large = usize::from(gate.operands.len() > 2);
            depth[id] = 1 + gate.operands.iter().map(|&o| depth[o]).max().unwrap_or(0);
            weft[id] = large + gate.operands.iter().map(|&o| weft[o]).max().unwrap_or(0);
        }
        CircuitMetrics {
            depth: depth[self.output],
            weft: weft[self.output],
            class: self.class(),
            node_count: self.num_nodes(),
        }
    }

    /// Longest path counted in AND/OR nodes only, i.e. the depth of the
    /// formula when negated inputs are read as literals.
    pub fn alternation_depth(&self) -> usize {
        let n = self.num_inputs();
        let mut depth = vec![0usize; self.num_nodes()];
        for (gi, gate) in self.gates.iter().enumerate() {
            let own = usize::from(gate.kind != GateKind::Not);
            depth[n + gi] = own + gate.operands.iter().map(|&o| depth[o]).max().unwrap_or(0);
        }
        depth[self.output]
    }

    pub fn class(&self) -> CircuitClass {
        let has_not = self.gates.iter().any(|g| g.kind == GateKind::Not);
        if !has_not {
            return CircuitClass::Monotone;
        }
        // An input used directly as the output would make the function
        // increase in that input, so it is excluded here.
        let anti = !self.is_input(self.output)
            && self.gates.iter().all(|g| match g.kind {
                GateKind::Not => self.is_input(g.operands[0]),
                GateKind::And | GateKind::Or => g.operands.iter().all(|&o| !self.is_input(o)),
            });
        if anti {
            CircuitClass::Antimonotone
        } else {
            CircuitClass::General
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn metrics(text: &str) -> CircuitMetrics {
        text.parse::<Circuit>().unwrap().metrics()
    }

    #[test]
    fn input_as_output() {
        let m = metrics("inputs x1\noutput x1");
        assert_eq!((m.depth, m.weft, m.class, m.node_count), (0, 0, CircuitClass::Monotone, 1));
    }

    #[test]
    fn wide_and() {
        let m = metrics("inputs a b c\ngate g AND a b c\noutput g");
        assert_eq!((m.depth, m.weft), (1, 1));
        assert_eq!(m.class, CircuitClass::Monotone);
    }

    #[test]
    fn binary_gates_have_no_weft() {
        let m = metrics("inputs a b c\ngate g AND a b\ngate h OR g c\noutput h");
        assert_eq!((m.depth, m.weft), (2, 0));
    }

    #[test]
    fn weft_follows_worst_path() {
        // Large nodes on different paths do not add up.
        let m = metrics("inputs a b c d\ngate p OR a b c\ngate q AND b c d\ngate r AND p q\ngate s OR r a\noutput s");
        assert_eq!((m.depth, m.weft), (3, 1));
    }

    #[test]
    fn classes() {
        let anti = metrics("inputs a b\ngate na NOT a\ngate nb NOT b\ngate g OR na nb\noutput g");
        assert_eq!(anti.class, CircuitClass::Antimonotone);
        let general = metrics("inputs a b\ngate na NOT a\ngate g OR na b\noutput g");
        assert_eq!(general.class, CircuitClass::General);
        let double = metrics("inputs a b\ngate na NOT a\ngate nn NOT na\ngate g AND nn na\noutput g");
        assert_eq!(double.class, CircuitClass::General);
        let bare = metrics("inputs a b\ngate na NOT a\noutput b");
        assert_eq!(bare.class, CircuitClass::General);
    }

    #[test]
    fn alternation_depth_skips_negations() {
        let c: Circuit = "inputs a b c\ngate na NOT a\ngate nb NOT b\ngate nc NOT c\ngate x AND na nb\ngate y OR x nc\ngate z AND y na\noutput z"
            .parse()
            .unwrap();
        assert_eq!(c.metrics().depth, 4);
        assert_eq!(c.alternation_depth(), 3);
    }
}

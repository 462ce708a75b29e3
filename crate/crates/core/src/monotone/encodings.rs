use std::fmt;
use std::str::FromStr;

use crate::circuit::{Circuit, CircuitBuilder, GateKind, GateStyle, NodeId};
use crate::text::{parse_number, tokenize};
use crate::{ColoredGraph, Error, ParseError, Result};

/// A family of subsets of `{0, .., universe-1}`.
///
/// Text form: a `universe <n>` line followed by `set <e>+` lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    pub universe: usize,
    pub sets: Vec<Vec<usize>>,
}

impl SetSystem {
    pub fn new(universe: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        for s in &sets {
            if let Some(&e) = s.iter().find(|&&e| e >= universe) {
                return Err(Error::InvalidInstance(format!("element {e} outside universe of size {universe}")));
            }
        }
        Ok(SetSystem { universe, sets })
    }
}

impl fmt::Display for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "universe {}", self.universe)?;
        for s in &self.sets {
            let elems: Vec<String> = s.iter().map(usize::to_string).collect();
            writeln!(f, "set {}", elems.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for SetSystem {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut universe = None;
        let mut sets = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let tokens = tokenize(line);
            let Some(head) = tokens.first() else { continue };
            match (head.text, universe) {
                ("universe", None) if tokens.len() == 2 => {
                    universe = Some(parse_number(&tokens[1], lineno, "a universe size")?);
                }
                ("set", Some(u)) => {
                    let mut members = Vec::new();
                    for tok in &tokens[1..] {
                        let e = parse_number(tok, lineno, "an element")?;
                        if e >= u {
                            return Err(ParseError::new(lineno, tok.column, format!("element {e} outside universe")).into());
                        }
                        members.push(e);
                    }
                    sets.push(members);
                }
                _ => {
                    return Err(ParseError::new(lineno, head.column, "expected `universe <n>` then `set <e>*` lines").into())
                }
            }
        }
        let universe = universe.ok_or_else(|| ParseError::new(1, 1, "missing `universe` line"))?;
        SetSystem::new(universe, sets)
    }
}

/// `AND_{S} OR_{e in S} x_e` over inputs `e0, e1, ..`: satisfying assignments
/// are exactly the hitting sets. Depth at most 2.
pub fn hitting_set_to_circuit(system: &SetSystem) -> Result<Circuit> {
    if system.sets.is_empty() {
        return Err(Error::InvalidInstance("no sets to hit; the empty conjunction is constant true".into()));
    }
    if system.sets.iter().any(Vec::is_empty) {
        return Err(Error::InvalidInstance("an empty set cannot be hit".into()));
    }
    let mut b = CircuitBuilder::new();
    for e in 0..system.universe {
        b.add_input(&format!("e{e}"))?;
    }
    let clauses: Vec<NodeId> = system.sets.iter().map(|s| b.or(s.clone())).collect();
    let out = b.and(clauses);
    b.build(out)
}

/// `AND_{i<j} OR_{a in V_i, b in V_j, ab edge} (x_a AND x_b)` over inputs
/// `v0, v1, ..`. The outer conjunction is a tree of indegree-2 nodes, so
/// only the disjunctions can be large and the weft is at most 1.
pub fn multicolored_clique_to_circuit(g: &ColoredGraph) -> Result<Circuit> {
    let coloring = g
        .coloring()
        .ok_or_else(|| Error::InvalidGraph("multicolored clique needs a vertex coloring".into()))?;
    let k = coloring.classes;
    if k < 2 {
        return Err(Error::InvalidGraph("need at least two color classes".into()));
    }
    let mut b = CircuitBuilder::new();
    for v in 0..g.num_vertices() {
        b.add_input(&format!("v{v}"))?;
    }
    let mut clauses = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let pairs: Vec<NodeId> = g
                .edges()
                .into_iter()
                .filter_map(|(u, v)| {
                    let (cu, cv) = (coloring.class_of[u], coloring.class_of[v]);
                    ((cu, cv) == (i, j) || (cu, cv) == (j, i)).then_some((u, v))
                })
                .map(|(u, v)| b.and(vec![u, v]))
                .collect();
            if pairs.is_empty() {
                return Err(Error::InvalidGraph(format!("no edge between color classes {i} and {j}")));
            }
            clauses.push(b.or(pairs));
        }
    }
    let out = b.styled(GateKind::And, clauses, GateStyle::Binary);
    b.build(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{is_k_satisfiable, min_weight_sat, CircuitClass};
    use crate::exec::SolveOptions;

    #[test]
    fn two_overlapping_pairs() {
        let sys = SetSystem::new(4, vec![vec![1, 2], vec![2, 3]]).unwrap();
        let c = hitting_set_to_circuit(&sys).unwrap();
        let (w, a) = min_weight_sat(&c, &SolveOptions::default()).unwrap().unwrap();
        assert_eq!((w, a.ones()), (1, &[2][..]));
        assert!(c.metrics().depth <= 2);
    }

    #[test]
    fn singleton_is_a_wire() {
        let sys = SetSystem::new(2, vec![vec![1]]).unwrap();
        let c = hitting_set_to_circuit(&sys).unwrap();
        assert!(c.gates().is_empty());
        assert_eq!(c.node_name(c.output()), "e1");
        assert_eq!(min_weight_sat(&c, &SolveOptions::default()).unwrap().unwrap().0, 1);
    }

    #[test]
    fn empty_set_rejected() {
        assert!(hitting_set_to_circuit(&SetSystem::new(2, vec![vec![0], vec![]]).unwrap()).is_err());
        assert!(hitting_set_to_circuit(&SetSystem::new(2, vec![]).unwrap()).is_err());
    }

    #[test]
    fn set_system_text() {
        let sys: SetSystem = "# toy\nuniverse 3\nset 0 1\nset 2\n".parse().unwrap();
        assert_eq!(sys.sets, vec![vec![0, 1], vec![2]]);
        assert_eq!(sys.to_string().parse::<SetSystem>().unwrap(), sys);
        assert!("universe 2\nset 2\n".parse::<SetSystem>().is_err());
        assert!("set 0\n".parse::<SetSystem>().is_err());
    }

    #[test]
    fn triangle_singleton_classes() {
        let g = ColoredGraph::complete(3).with_coloring(3, vec![0, 1, 2]).unwrap();
        let c = multicolored_clique_to_circuit(&g).unwrap();
        assert!(c.evaluate(&vec![0, 1, 2].into()));
        assert_eq!(is_k_satisfiable(&c, 3, &SolveOptions::default()).unwrap(), Some(vec![0, 1, 2].into()));
        let m = c.metrics();
        assert_eq!(m.class, CircuitClass::Monotone);
        assert!(m.weft <= 1);
    }

    #[test]
    fn wide_disjunction_gives_weft_one() {
        // Classes {0,1}, {2,3}, {4}: four edges between the first two classes.
        let g = ColoredGraph::from_edges(5, &[(0, 2), (0, 3), (1, 2), (1, 3), (0, 4), (2, 4)])
            .unwrap()
            .with_coloring(3, vec![0, 0, 1, 1, 2])
            .unwrap();
        let c = multicolored_clique_to_circuit(&g).unwrap();
        assert_eq!(c.metrics().weft, 1);
        assert_eq!(is_k_satisfiable(&c, 3, &SolveOptions::default()).unwrap(), Some(vec![0, 2, 4].into()));
    }

    #[test]
    fn clique_errors() {
        let uncolored = ColoredGraph::complete(3);
        assert!(multicolored_clique_to_circuit(&uncolored).is_err());
        let missing_pair = ColoredGraph::from_edges(3, &[(0, 1)]).unwrap().with_coloring(3, vec![0, 1, 2]).unwrap();
        assert!(multicolored_clique_to_circuit(&missing_pair).is_err());
    }
}

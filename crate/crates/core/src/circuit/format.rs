//! Line-oriented circuit text format.
//!
//! ```text
//! # comment
//! inputs x1 x2 x3
//! gate g1 AND x1 x2
//! gate g2 OR g1 x3
//! output g2
//! ```

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::{check_arity, is_identifier, Circuit, Gate, GateKind, NodeId};
use crate::text::{end_column, tokenize, Token};
use crate::{Error, ParseError, Result};

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse(text).map_err(Error::from)
    }
}

impl Circuit {
    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }

    /// Serializes with leading `# ` comment lines.
    pub fn to_text_with_header<S: AsRef<str>>(&self, header: &[S]) -> String {
        let mut out = String::new();
        for line in header {
            out.push_str("# ");
            out.push_str(line.as_ref());
            out.push('\n');
        }
        out.push_str(&self.to_string());
        out
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "inputs {}", self.inputs.join(" "))?;
        for gate in &self.gates {
            write!(f, "gate {} {}", gate.name, gate.kind)?;
            for &op in &gate.operands {
                write!(f, " {}", self.node_name(op))?;
            }
            writeln!(f)?;
        }
        writeln!(f, "output {}", self.node_name(self.output))
    }
}

fn parse(text: &str) -> std::result::Result<Circuit, ParseError> {
    let mut inputs: Option<Vec<String>> = None;
    let mut gates: Vec<Gate> = Vec::new();
    let mut ids: HashMap<String, NodeId> = HashMap::new();
    let mut output: Option<(NodeId, usize)> = None;
    let mut last_line = 0;

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let tokens = tokenize(line);
        let Some(head) = tokens.first() else { continue };
        let err = |col: usize, msg: String| ParseError::new(lineno, col, msg);

        if let Some((_, out_line)) = output {
            return Err(err(head.column, format!("content after `output` (line {out_line})")));
        }
        match head.text {
            "inputs" => {
                if inputs.is_some() {
                    return Err(err(head.column, "duplicate `inputs` line".into()));
                }
                if tokens.len() < 2 {
                    return Err(err(end_column(line), "`inputs` needs at least one identifier".into()));
                }
                let mut names = Vec::new();
                for tok in &tokens[1..] {
                    check_ident(tok, lineno)?;
                    if ids.insert(tok.text.to_owned(), names.len()).is_some() {
                        return Err(err(tok.column, format!("duplicate identifier `{}`", tok.text)));
                    }
                    names.push(tok.text.to_owned());
                }
                inputs = Some(names);
            }
            "gate" | "output" if inputs.is_none() => {
                return Err(err(head.column, "the first line must be `inputs`".into()));
            }
            "gate" => {
                let n_inputs = inputs.as_ref().map_or(0, Vec::len);
                if tokens.len() < 3 {
                    return Err(err(end_column(line), "expected `gate <id> <AND|OR|NOT> <id>+`".into()));
                }
                let name = &tokens[1];
                check_ident(name, lineno)?;
                let kind = match tokens[2].text {
                    "AND" => GateKind::And,
                    "OR" => GateKind::Or,
                    "NOT" => GateKind::Not,
                    other => return Err(err(tokens[2].column, format!("unknown gate kind `{other}`"))),
                };
                let mut operands = Vec::new();
                for tok in &tokens[3..] {
                    check_ident(tok, lineno)?;
                    match ids.get(tok.text) {
                        Some(&id) => operands.push(id),
                        None => return Err(err(tok.column, format!("undeclared operand `{}`", tok.text))),
                    }
                }
                check_arity(kind, operands.len()).map_err(|m| err(tokens[2].column, m))?;
                let id = n_inputs + gates.len();
                if ids.insert(name.text.to_owned(), id).is_some() {
                    return Err(err(name.column, format!("duplicate identifier `{}`", name.text)));
                }
                gates.push(Gate { name: name.text.to_owned(), kind, operands });
            }
            "output" => {
                if tokens.len() != 2 {
                    return Err(err(head.column, "expected `output <id>`".into()));
                }
                let tok = &tokens[1];
                check_ident(tok, lineno)?;
                match ids.get(tok.text) {
                    Some(&id) => output = Some((id, lineno)),
                    None => return Err(err(tok.column, format!("undeclared output `{}`", tok.text))),
                }
            }
            other => return Err(err(head.column, format!("unknown directive `{other}`"))),
        }
    }

    let inputs = inputs.ok_or_else(|| ParseError::new(last_line.max(1), 1, "missing `inputs` line"))?;
    let (output, _) = output.ok_or_else(|| ParseError::new(last_line.max(1), 1, "missing `output` line"))?;
    Ok(Circuit { inputs, gates, output })
}

fn check_ident(tok: &Token<'_>, line: usize) -> std::result::Result<(), ParseError> {
    if is_identifier(tok.text) {
        Ok(())
    } else {
        Err(ParseError::new(line, tok.column, format!("invalid identifier `{}`", tok.text)))
    }
}

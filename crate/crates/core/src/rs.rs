//! Reed-Solomon code `RS(m)[i] = sum_{j=1..k} alpha_i^j m_j` and erasure recovery.

use crate::gf::{FieldElement, FieldSpec};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReedSolomon {
    field: FieldSpec,
    k: usize,
    alphas: Vec<FieldElement>,
    /// `powers[i][j-1] = alpha_i^j`.
    powers: Vec<Vec<FieldElement>>,
}

impl ReedSolomon {
    /// Code of length `len` with `alpha_i` the element whose word is `i`.
    pub fn new(field: FieldSpec, k: usize, len: usize) -> Result<Self> {
        let alphas = (1..=len as u32)
            .map(|w| field.element(w))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::InvalidArgument(format!("need D < q, got D = {len}, q = {}", field.order())))?;
        ReedSolomon::with_alphas(field, k, alphas)
    }

    pub fn with_alphas(field: FieldSpec, k: usize, alphas: Vec<FieldElement>) -> Result<Self> {
        let len = alphas.len();
        if k == 0 || k > len || len >= field.order() as usize {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= k <= D < q, got k = {k}, D = {len}, q = {}",
                field.order()
            )));
        }
        for (i, a) in alphas.iter().enumerate() {
            if a.is_zero() || a.word() >= field.order() {
                return Err(Error::InvalidArgument(format!("alpha_{} = {a} is not a nonzero field element", i + 1)));
            }
            if alphas[..i].contains(a) {
                return Err(Error::InvalidArgument(format!("alpha_{} = {a} repeats an earlier alpha", i + 1)));
            }
        }
        let powers = alphas
            .iter()
            .map(|&a| (1..=k as u64).map(|j| field.pow(a, j)).collect())
            .collect();
        Ok(ReedSolomon { field, k, alphas, powers })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn message_len(&self) -> usize {
        self.k
    }

    pub fn codeword_len(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[FieldElement] {
        &self.alphas
    }

    /// Row `(alpha_i, alpha_i^2, .., alpha_i^k)` of the generator, `i` 0-based.
    pub fn row(&self, position: usize) -> &[FieldElement] {
        &self.powers[position]
    }

    /// Component `position` (0-based) of the codeword of `message`.
    pub fn component(&self, message: &[FieldElement], position: usize) -> FieldElement {
        self.powers[position]
            .iter()
            .zip(message)
            .fold(FieldElement::ZERO, |acc, (&p, &m)| self.field.add(acc, self.field.mul(p, m)))
    }

    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if message.len() != self.k {
            return Err(Error::InvalidArgument(format!("message has {} symbols, expected {}", message.len(), self.k)));
        }
        self.check_symbols(message.iter().copied())?;
        Ok((0..self.codeword_len()).map(|i| self.component(message, i)).collect())
    }

    fn check_symbols(&self, symbols: impl IntoIterator<Item = FieldElement>) -> Result<()> {
        for s in symbols {
            self.field.element(s.word())?;
        }
        Ok(())
    }

    /// Recovers the message from `(position, value)` pairs (0-based
    /// positions). The first `k` pairs determine the message by Gaussian
    /// elimination; every further pair must agree with it.
    pub fn recover(&self, known: &[(usize, FieldElement)]) -> Result<Vec<FieldElement>> {
        if known.len() < self.k {
            return Err(Error::TooFewKnown { needed: self.k, got: known.len() });
        }
        for (idx, &(pos, _)) in known.iter().enumerate() {
            if pos >= self.codeword_len() {
                return Err(Error::InvalidArgument(format!("position {pos} is outside the codeword")));
            }
            if known[..idx].iter().any(|&(p, _)| p == pos) {
                return Err(Error::InvalidArgument(format!("position {pos} given twice")));
            }
        }
        self.check_symbols(known.iter().map(|&(_, v)| v))?;

        let f = &self.field;
        let k = self.k;
        // Augmented k x (k+1) system: row_i . m = value_i.
        let mut rows: Vec<Vec<FieldElement>> = known[..k]
            .iter()
            .map(|&(pos, val)| {
                let mut r = self.powers[pos].clone();
                r.push(val);
                r
            })
            .collect();
        for col in 0..k {
            let pivot = (col..k)
                .find(|&r| !rows[r][col].is_zero())
                .expect("distinct nonzero alphas give an invertible system");
            rows.swap(col, pivot);
            let inv = f.inv(rows[col][col])?;
            for x in rows[col].iter_mut() {
                *x = f.mul(*x, inv);
            }
            let pivot_row = rows[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                let factor = row[col];
                if r != col && !factor.is_zero() {
                    for (x, &p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                        *x = f.sub(*x, f.mul(factor, p));
                    }
                }
            }
        }
        let message: Vec<FieldElement> = rows.iter().map(|r| r[k]).collect();
        for &(pos, val) in &known[k..] {
            if self.component(&message, pos) != val {
                return Err(Error::InconsistentCodeword { position: pos });
            }
        }
        Ok(message)
    }
}

//! Shared tokenizer for the line-oriented text formats.

/// A whitespace-separated token with its 1-based column.
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub column: usize,
}

/// Splits a line into tokens, dropping everything from the first `#`.
pub(crate) fn tokenize(line: &str) -> Vec<Token<'_>> {
    let content = match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    };
    let mut tokens = Vec::new();
    let mut start = None;
    for (byte, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                let column = content[..s].chars().count() + 1;
                tokens.push(Token { text: &content[s..byte], column });
            }
        } else if start.is_none() {
            start = Some(byte);
        }
    }
    tokens
}

pub(crate) fn end_column(line: &str) -> usize {
    line.chars().count() + 1
}

pub(crate) fn parse_number(tok: &Token<'_>, line: usize, what: &str) -> Result<usize, crate::ParseError> {
    tok.text
        .parse()
        .map_err(|_| crate::ParseError::new(line, tok.column, format!("expected {what}, got `{}`", tok.text)))
}

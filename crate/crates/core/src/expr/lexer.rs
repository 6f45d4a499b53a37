use super::{ExprError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Number(f64),
    Ident(String),
    Star,
    Caret,
    Pipe,
    Amp,
    Plus,
    Minus,
    LParen,
    RParen,
    Lt,
    Gt,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Number(x) => format!("number {x}"),
            TokenKind::Ident(name) => format!("`{name}`"),
            TokenKind::Star => "`*`".into(),
            TokenKind::Caret => "`^`".into(),
            TokenKind::Pipe => "`|`".into(),
            TokenKind::Amp => "`&`".into(),
            TokenKind::Plus => "`+`".into(),
            TokenKind::Minus => "`-`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Lt => "`<`".into(),
            TokenKind::Gt => "`>`".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    /// Byte offset of the first character.
    pub offset: usize,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ExprError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'*' => Some(TokenKind::Star),
            b'^' => Some(TokenKind::Caret),
            b'|' => Some(TokenKind::Pipe),
            b'&' => Some(TokenKind::Amp),
            b'+' => Some(TokenKind::Plus),
            b'-' => Some(TokenKind::Minus),
            b'(' => Some(TokenKind::LParen),
            b')' => Some(TokenKind::RParen),
            b'<' => Some(TokenKind::Lt),
            b'>' => Some(TokenKind::Gt),
            _ => None,
        };
        if let Some(kind) = single {
            tokens.push(Token { kind, offset: start });
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                let frac = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == frac {
                    return Err(ExprError::parse(ParseErrorKind::MalformedNumber, start));
                }
            }
            let value = text[start..i]
                .parse()
                .map_err(|_| ExprError::parse(ParseErrorKind::MalformedNumber, start))?;
            tokens.push(Token {
                kind: TokenKind::Number(value),
                offset: start,
            });
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            tokens.push(Token {
                kind: TokenKind::Ident(text[start..i].to_string()),
                offset: start,
            });
        } else {
            let ch = text[start..].chars().next().expect("in bounds");
            return Err(ExprError::parse(ParseErrorKind::UnexpectedChar(ch), start));
        }
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_operators_and_literals() {
        let kinds: Vec<TokenKind> = tokenize("0.5*e1 - P1").unwrap().into_iter().map(|t| t.kind).collect();
        assert_eq!(
            kinds,
            vec![
                TokenKind::Number(0.5),
                TokenKind::Star,
                TokenKind::Ident("e1".into()),
                TokenKind::Minus,
                TokenKind::Ident("P1".into()),
            ]
        );
    }

    #[test]
    fn juxtaposed_float_exponent_is_two_tokens() {
        let tokens = tokenize("0.5e1").unwrap();
        assert_eq!(tokens.len(), 2);
        assert_eq!(tokens[1].offset, 3);
    }

    #[test]
    fn reports_offsets() {
        let err = tokenize("e1 $ e2").unwrap_err();
        assert_eq!(err, ExprError::parse(ParseErrorKind::UnexpectedChar('$'), 3));
        let err = tokenize("1. + 2").unwrap_err();
        assert_eq!(err, ExprError::parse(ParseErrorKind::MalformedNumber, 0));
    }
}

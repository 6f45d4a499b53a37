use super::lexer::{tokenize, Token, TokenKind};
use super::{is_blade_literal, BinaryOp, Expr, ExprError, Func, ParseErrorKind};

// Binding powers, loosest first.
const SUM: u8 = 1;
const WEDGE: u8 = 2;
const PRODUCT: u8 = 3;

fn infix(kind: &TokenKind) -> Option<(BinaryOp, u8)> {
    Some(match kind {
        TokenKind::Plus => (BinaryOp::Add, SUM),
        TokenKind::Minus => (BinaryOp::Sub, SUM),
        TokenKind::Caret => (BinaryOp::Outer, WEDGE),
        TokenKind::Amp => (BinaryOp::Regressive, WEDGE),
        TokenKind::Star => (BinaryOp::Geometric, PRODUCT),
        TokenKind::Pipe => (BinaryOp::LeftContraction, PRODUCT),
        _ => return None,
    })
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn unexpected(&self, token: Option<&Token>) -> ExprError {
        match token {
            Some(Token {
                kind: TokenKind::RParen,
                offset,
            }) => ExprError::parse(ParseErrorKind::UnbalancedParen, *offset),
            Some(t) => ExprError::parse(ParseErrorKind::UnexpectedToken(t.kind.describe()), t.offset),
            None => ExprError::parse(ParseErrorKind::UnexpectedEnd, self.end),
        }
    }

    fn expression(&mut self, min_bp: u8) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(token) = self.peek() {
            let Some((op, bp)) = infix(&token.kind) else {
                break;
            };
            if bp < min_bp {
                break;
            }
            let offset = token.offset;
            self.pos += 1;
            // left-associative: the right operand binds strictly tighter
            let rhs = self.expression(bp + 1)?;
            lhs = Expr::Binary {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
                offset,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if matches!(
            self.peek(),
            Some(Token {
                kind: TokenKind::Minus,
                ..
            })
        ) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr, ExprError> {
        let mut expr = self.primary()?;
        while matches!(
            self.peek(),
            Some(Token {
                kind: TokenKind::Lt,
                ..
            })
        ) {
            self.pos += 1;
            let grade = match self.next() {
                Some(Token {
                    kind: TokenKind::Number(k),
                    ..
                }) if k.fract() == 0.0 && (0.0..=32.0).contains(&k) => k as u32,
                Some(t) => return Err(ExprError::parse(ParseErrorKind::InvalidGrade, t.offset)),
                None => return Err(ExprError::parse(ParseErrorKind::UnexpectedEnd, self.end)),
            };
            match self.next() {
                Some(Token {
                    kind: TokenKind::Gt, ..
                }) => {}
                other => return Err(self.unexpected(other.as_ref())),
            }
            expr = Expr::Grade {
                expr: Box::new(expr),
                grade,
            };
        }
        Ok(expr)
    }

    fn parenthesized(&mut self, open: usize) -> Result<Expr, ExprError> {
        let inner = self.expression(SUM)?;
        match self.next() {
            Some(Token {
                kind: TokenKind::RParen,
                ..
            }) => Ok(inner),
            None => Err(ExprError::parse(ParseErrorKind::UnbalancedParen, open)),
            Some(t) => Err(self.unexpected(Some(&t))),
        }
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let Some(token) = self.next() else {
            return Err(ExprError::parse(ParseErrorKind::UnexpectedEnd, self.end));
        };
        match token.kind {
            TokenKind::Number(x) => Ok(Expr::Number(x)),
            TokenKind::LParen => self.parenthesized(token.offset),
            TokenKind::Ident(name) => {
                if let Some(func) = Func::from_name(&name) {
                    match self.next() {
                        Some(Token {
                            kind: TokenKind::LParen,
                            offset,
                        }) => {
                            let arg = self.parenthesized(offset)?;
                            Ok(Expr::Call {
                                func,
                                arg: Box::new(arg),
                                offset: token.offset,
                            })
                        }
                        _ => Err(ExprError::parse(ParseErrorKind::ExpectedCall(name), token.offset)),
                    }
                } else if is_blade_literal(&name) {
                    Ok(Expr::Blade {
                        name,
                        offset: token.offset,
                    })
                } else {
                    Ok(Expr::Var {
                        name,
                        offset: token.offset,
                    })
                }
            }
            _ => Err(self.unexpected(Some(&token))),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let expr = parser.expression(SUM)?;
    match parser.peek() {
        None => Ok(expr),
        Some(t) => Err(parser.unexpected(Some(&t.clone()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(text: &str) -> String {
        parse(text).unwrap().to_string()
    }

    #[test]
    fn outer_of_blades() {
        match parse("e0 ^ e1").unwrap() {
            Expr::Binary { op, lhs, rhs, .. } => {
                assert_eq!(op, BinaryOp::Outer);
                assert!(matches!(*lhs, Expr::Blade { ref name, .. } if name == "e0"));
                assert!(matches!(*rhs, Expr::Blade { ref name, .. } if name == "e1"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn precedence_tiers() {
        assert_eq!(shape("a + b * c"), "(a + (b * c))");
        assert_eq!(shape("a ^ b * c"), "(a ^ (b * c))");
        assert_eq!(shape("a | b ^ c"), "((a | b) ^ c)");
        assert_eq!(shape("a & b ^ c"), "((a & b) ^ c)");
        assert_eq!(shape("a ^ b & c"), "((a ^ b) & c)");
        assert_eq!(shape("a - b - c"), "((a - b) - c)");
        assert_eq!(shape("-a * b"), "(-(a) * b)");
        assert_eq!(shape("a*b<2>"), "(a * (b)<2>)");
        assert_eq!(shape("(a + b)<0>"), "((a + b))<0>");
    }

    #[test]
    fn nested_calls_and_operators() {
        assert_eq!(shape("pdual(P1 & P2) ^ p"), "(pdual((P1 & P2)) ^ p)");
        assert_eq!(shape("up(0.5*e1 - 1.5*e3)"), "up(((0.5 * e1) - (1.5 * e3)))");
        assert_eq!(shape("upP(e1)"), "upP(e1)");
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(
            parse("(e1 + e2").unwrap_err(),
            ExprError::parse(ParseErrorKind::UnbalancedParen, 0)
        );
        assert_eq!(
            parse("e1 + e2)").unwrap_err(),
            ExprError::parse(ParseErrorKind::UnbalancedParen, 7)
        );
        assert_eq!(
            parse("e1 +").unwrap_err(),
            ExprError::parse(ParseErrorKind::UnexpectedEnd, 4)
        );
        assert!(matches!(
            parse("0.5e1").unwrap_err(),
            ExprError::Parse {
                kind: ParseErrorKind::UnexpectedToken(_),
                offset: 3
            }
        ));
        assert!(matches!(
            parse("dual + 1").unwrap_err(),
            ExprError::Parse {
                kind: ParseErrorKind::ExpectedCall(_),
                offset: 0
            }
        ));
        assert_eq!(
            parse("e1<x>").unwrap_err(),
            ExprError::parse(ParseErrorKind::InvalidGrade, 3)
        );
        assert_eq!(
            parse("").unwrap_err(),
            ExprError::parse(ParseErrorKind::UnexpectedEnd, 0)
        );
    }
}

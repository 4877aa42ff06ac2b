//! Recursive-descent parser for the polynomial grammar:
//!
//! ```text
//! poly   := term (('+'|'-') term)*
//! term   := '-'? factor ('*' factor)*
//! factor := VAR | CONST | '(' poly ')'
//! VAR    := 'x' [1-9][0-9]*
//! CONST  := 'e' [0-9]+
//! ```
//!
//! `*` and the implicit sums parse left-associative; whitespace is
//! insignificant; binary `-` adds the negated term. Parsing is purely
//! syntactic — no simplification — so the tree records every operation.

use thiserror::Error;

use super::PolyExpr;
use crate::ring::FiniteRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("constant e{index} at byte {pos} out of range: ring has {order} elements")]
    ConstOutOfRange {
        pos: usize,
        index: usize,
        order: usize,
    },
    #[error("variable x0 at byte {pos}: variables are numbered from 1")]
    VarIndexZero { pos: usize },
}

impl PolyExpr {
    /// Parses `text` against `ring` (constants must index ring elements).
    pub fn parse(text: &str, ring: &FiniteRing) -> Result<PolyExpr, ParseError> {
        let mut p = Parser {
            bytes: text.as_bytes(),
            pos: 0,
            order: ring.order(),
        };
        let expr = p.poly()?;
        p.skip_ws();
        if p.pos < p.bytes.len() {
            return Err(p.syntax("unexpected trailing input"));
        }
        Ok(expr)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    order: usize,
}

impl Parser<'_> {
    fn poly(&mut self) -> Result<PolyExpr, ParseError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.add(self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr, ParseError> {
        self.skip_ws();
        let negated = self.peek() == Some(b'-');
        if negated {
            self.pos += 1;
        }
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                acc = acc.mul(self.factor()?);
            } else {
                break;
            }
        }
        Ok(if negated { acc.neg() } else { acc })
    }

    fn factor(&mut self) -> Result<PolyExpr, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.poly()?;
                self.skip_ws();
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    Ok(inner)
                } else {
                    Err(self.syntax("expected `)`"))
                }
            }
            Some(b'x') => {
                let start = self.pos;
                self.pos += 1;
                let (digits_start, j) = self.digits("variable index")?;
                if j == 0 {
                    return Err(ParseError::VarIndexZero { pos: start });
                }
                if self.bytes[digits_start] == b'0' {
                    return Err(ParseError::Syntax {
                        pos: digits_start,
                        msg: "variable index has a leading zero".into(),
                    });
                }
                Ok(PolyExpr::Var(j))
            }
            Some(b'e') => {
                let start = self.pos;
                self.pos += 1;
                let (_, k) = self.digits("constant index")?;
                if k >= self.order {
                    return Err(ParseError::ConstOutOfRange {
                        pos: start,
                        index: k,
                        order: self.order,
                    });
                }
                Ok(PolyExpr::Const(k))
            }
            _ => Err(self.syntax("expected a variable, constant, or `(`")),
        }
    }

    /// Consumes `[0-9]+`, returning the start offset and the value.
    fn digits(&mut self, what: &str) -> Result<(usize, usize), ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.syntax(&format!("expected digits for the {what}")));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let value = text.parse().map_err(|_| ParseError::Syntax {
            pos: start,
            msg: format!("{what} out of machine range"),
        })?;
        Ok((start, value))
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn syntax(&self, msg: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> FiniteRing {
        FiniteRing::scaled_zmod(2, 3).unwrap() // order 4
    }

    #[test]
    fn sums_and_products_parse_left_associative() {
        let r = ring();
        assert_eq!(
            PolyExpr::parse("x1 + x2", &r).unwrap(),
            PolyExpr::var(1).add(PolyExpr::var(2))
        );
        assert_eq!(
            PolyExpr::parse("x1 + x2 + x3", &r).unwrap(),
            PolyExpr::var(1).add(PolyExpr::var(2)).add(PolyExpr::var(3))
        );
        assert_eq!(
            PolyExpr::parse("x1*x2*x3", &r).unwrap(),
            PolyExpr::var(1).mul(PolyExpr::var(2)).mul(PolyExpr::var(3))
        );
    }

    #[test]
    fn negation_binds_the_whole_term() {
        let r = ring();
        assert_eq!(
            PolyExpr::parse("-(x1*e1)", &r).unwrap(),
            PolyExpr::var(1).mul(PolyExpr::constant(1)).neg()
        );
        assert_eq!(
            PolyExpr::parse("-x1*e1", &r).unwrap(),
            PolyExpr::var(1).mul(PolyExpr::constant(1)).neg()
        );
    }

    #[test]
    fn binary_minus_adds_a_negated_term() {
        let r = ring();
        assert_eq!(
            PolyExpr::parse("x1 - x2*x3", &r).unwrap(),
            PolyExpr::var(1).add(PolyExpr::var(2).mul(PolyExpr::var(3)).neg())
        );
    }

    #[test]
    fn unbalanced_parenthesis_errors_at_end_of_input() {
        let r = ring();
        let text = "x1*(x2+e1";
        assert_eq!(
            PolyExpr::parse(text, &r).unwrap_err(),
            ParseError::Syntax {
                pos: text.len(),
                msg: "expected `)`".into()
            }
        );
    }

    #[test]
    fn constant_out_of_range_is_positioned() {
        let r = ring(); // order 4: e0..e3 valid
        assert_eq!(
            PolyExpr::parse("x1 + e4", &r).unwrap_err(),
            ParseError::ConstOutOfRange {
                pos: 5,
                index: 4,
                order: 4
            }
        );
        assert!(PolyExpr::parse("e3", &r).is_ok());
    }

    #[test]
    fn variable_zero_rejected() {
        let r = ring();
        assert_eq!(
            PolyExpr::parse("x0", &r).unwrap_err(),
            ParseError::VarIndexZero { pos: 0 }
        );
        assert!(matches!(
            PolyExpr::parse("x01", &r).unwrap_err(),
            ParseError::Syntax { pos: 1, .. }
        ));
    }

    #[test]
    fn trailing_input_rejected() {
        let r = ring();
        assert!(matches!(
            PolyExpr::parse("x1 x2", &r).unwrap_err(),
            ParseError::Syntax { pos: 3, .. }
        ));
        assert!(matches!(
            PolyExpr::parse("x1)", &r).unwrap_err(),
            ParseError::Syntax { pos: 2, .. }
        ));
    }

    #[test]
    fn empty_and_bare_operator_inputs_rejected() {
        let r = ring();
        assert!(matches!(
            PolyExpr::parse("", &r),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            PolyExpr::parse("*x1", &r),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            PolyExpr::parse("x1 + ", &r),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn display_round_trips_structurally() {
        let r = ring();
        for text in [
            "x1 + x2",
            "-(x1*e1)",
            "x1 - x2*x3",
            "(x1 + -x2)*(e1 + e2)*x7",
            "-(-(-x1)) + e0",
        ] {
            let parsed = PolyExpr::parse(text, &r).unwrap();
            let reparsed = PolyExpr::parse(&parsed.to_string(), &r).unwrap();
            assert_eq!(parsed, reparsed, "round-trip failed for `{text}`");
        }
    }

    #[test]
    fn constant_indices_allow_leading_zeros() {
        // CONST is 'e' [0-9]+, so e02 is the element of index 2
        let r = ring();
        assert_eq!(PolyExpr::parse("e02", &r).unwrap(), PolyExpr::constant(2));
    }
}

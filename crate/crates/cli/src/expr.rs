//! Parser for subject expressions: the closed-normal-form grammar extended
//! with named atoms that build genuinely lazy ordinals.
//!
//! Grammar (whitespace allowed between tokens):
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' factor)?
//! atom   := NAT | 'w' | '(' expr ')'
//!         | 'psi' '(' FAMILY ')'
//!         | 'lim-min' '(' expr ',' expr ')'
//!         | 'lim-max' '(' expr ',' expr ')'
//!         | 'round-up' '(' expr ')'
//!         | 'round-down' '(' expr ')'
//!         | 'lim-jump' '(' BITS ')'
//! ```
//!
//! `FAMILY` is a registry spec such as `twin-primes(5000)`; `BITS` is a bit
//! literal such as `001:zeros`. Both are scanned verbatim up to the matching
//! closing parenthesis and handed to their own parsers.

use brwdec::{
    add, exists_forall_witness, exp, lim_max, lim_min, lookup_family, mul, psi, round_down,
    round_up, semidec_to_witness, BitSeq, FamilyKind, Ordinal,
};
use std::fmt;

/// A parse failure, with the byte offset where it was detected.
#[derive(Debug, Clone)]
pub struct ExprError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ExprError {}

/// Parse a subject expression into an ordinal value.
pub fn parse_subject(src: &str) -> Result<Ordinal, ExprError> {
    let mut cur = Cursor { src, pos: 0 };
    let value = cur.expr()?;
    cur.skip_ws();
    if cur.pos < cur.src.len() {
        return Err(cur.err("unexpected trailing input"));
    }
    Ok(value)
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> ExprError {
        ExprError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self
            .rest()
            .chars()
            .next()
            .map_or(false, |c| c.is_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.pos += want.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ExprError> {
        if self.eat(want) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{want}`")))
        }
    }

    fn expr(&mut self) -> Result<Ordinal, ExprError> {
        let mut acc = self.term()?;
        while self.eat('+') {
            let rhs = self.term()?;
            acc = add(&acc, &rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal, ExprError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let rhs = self.factor()?;
            acc = mul(&acc, &rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Ordinal, ExprError> {
        let base = self.atom()?;
        if self.eat('^') {
            let power = self.factor()?;
            Ok(exp(&base, &power))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Ordinal, ExprError> {
        match self.peek() {
            Some('(') => {
                self.eat('(');
                let value = self.expr()?;
                self.expect(')')?;
                Ok(value)
            }
            Some(c) if c.is_ascii_digit() => self.nat(),
            Some(c) if c.is_ascii_alphabetic() => self.named(),
            Some(c) => Err(self.err(format!("unexpected character `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn nat(&mut self) -> Result<Ordinal, ExprError> {
        let start = self.pos;
        while self
            .rest()
            .chars()
            .next()
            .map_or(false, |c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        let digits = &self.src[start..self.pos];
        match digits.parse::<u64>() {
            Ok(n) => Ok(Ordinal::from_nat(n)),
            Err(_) => Err(ExprError {
                position: start,
                message: format!("number `{digits}` does not fit in 64 bits"),
            }),
        }
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self
            .rest()
            .chars()
            .next()
            .map_or(false, |c| c.is_ascii_alphanumeric() || c == '-')
        {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    /// Consume raw text up to the parenthesis matching an already-consumed
    /// `(`, returning the inner slice and leaving the cursor past the `)`.
    fn raw_argument(&mut self) -> Result<&'a str, ExprError> {
        let start = self.pos;
        let mut depth = 0usize;
        for (offset, c) in self.rest().char_indices() {
            match c {
                '(' => depth += 1,
                ')' => {
                    if depth == 0 {
                        let inner = &self.src[start..start + offset];
                        self.pos = start + offset + 1;
                        return Ok(inner);
                    }
                    depth -= 1;
                }
                _ => {}
            }
        }
        self.pos = self.src.len();
        Err(self.err("unclosed `(`"))
    }

    fn named(&mut self) -> Result<Ordinal, ExprError> {
        let start = self.pos;
        let name = self.ident();
        let fail = |message: String| ExprError {
            position: start,
            message,
        };
        match name {
            "w" => Ok(Ordinal::omega()),
            "psi" => {
                self.expect('(')?;
                let spec = self.raw_argument()?;
                match lookup_family(spec).map_err(fail)? {
                    FamilyKind::OneDim(p) => Ok(psi(&p)),
                    FamilyKind::TwoDim(f) => exists_forall_witness(&f)
                        .map(|w| w.ordinal)
                        .map_err(|e| fail(e.to_string())),
                }
            }
            "lim-min" | "lim-max" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(')')?;
                Ok(if name == "lim-min" {
                    lim_min(&a, &b)
                } else {
                    lim_max(&a, &b)
                })
            }
            "round-up" | "round-down" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(')')?;
                Ok(if name == "round-up" {
                    round_up(&a)
                } else {
                    round_down(&a)
                })
            }
            "lim-jump" => {
                self.expect('(')?;
                let literal = self.raw_argument()?;
                let bits = BitSeq::parse_literal(literal.trim()).map_err(fail)?;
                Ok(semidec_to_witness(&bits).ordinal)
            }
            "" => Err(self.err("expected an ordinal expression")),
            other => Err(fail(format!(
                "unknown name `{other}`; known atoms: w, psi(FAMILY), lim-min(A, B), \
                 lim-max(A, B), round-up(A), round-down(A), lim-jump(BITS)"
            ))),
        }
    }
}

//! Recursive-descent parser for the concrete grammar.
//!
//! ```text
//! φ ::= Name(v0,..) | Name | vJ = vK | t[l] | ~φ | (φ op φ)
//!     | E vK . φ | A vK . φ | g[l] φ | G φ | Q[l,..] φ | S[k,l] φ
//! op ::= & | '|' | -> | => | <=>
//! ```
//!
//! A bare identifier is a zero-ary atom. Those are accepted only when the
//! signature is being inferred.

use super::derived;
use super::{is_ident, Formula, ParseError, Signature, RESERVED};
use crate::demorgan::{DeMorganAlgebra, ElemId};

/// Parses against a fixed signature.
pub fn parse(text: &str, sig: &Signature, m: &DeMorganAlgebra) -> Result<Formula, ParseError> {
    Parser {
        src: text,
        pos: 0,
        m,
        sig: Sig::Fixed(sig),
    }
    .run()
}

/// Parses while recording the arity of each relation at first use. Later
/// uses must agree with it.
pub fn parse_infer(
    text: &str,
    sig: &mut Signature,
    m: &DeMorganAlgebra,
) -> Result<Formula, ParseError> {
    Parser {
        src: text,
        pos: 0,
        m,
        sig: Sig::Infer(sig),
    }
    .run()
}

enum Sig<'a> {
    Fixed(&'a Signature),
    Infer(&'a mut Signature),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    m: &'a DeMorganAlgebra,
    sig: Sig<'a>,
}

enum Op {
    And,
    Or,
    Imp,
    StrongImp,
    Iff,
}

impl Parser<'_> {
    fn run(mut self) -> Result<Formula, ParseError> {
        let f = self.formula()?;
        self.skip_ws();
        if self.pos < self.src.len() {
            return Err(self.syntax("trailing input"));
        }
        Ok(f)
    }

    fn syntax(&self, msg: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.syntax(&format!("expected `{tok}`")))
        }
    }

    fn ident(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
            .count();
        let word = &self.src[start..start + len];
        if len == 0 || !is_ident(word) {
            return None;
        }
        self.pos += len;
        Some(word)
    }

    fn nat(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let len = self
            .rest()
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .count();
        if len == 0 {
            return Err(self.syntax("expected a number"));
        }
        let n = self.rest()[..len]
            .parse()
            .map_err(|_| self.syntax("number out of range"))?;
        self.pos += len;
        Ok(n)
    }

    fn var(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        if !self.rest().starts_with('v') {
            return Err(self.syntax("expected a variable `v<n>`"));
        }
        self.pos += 1;
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(self.syntax("expected a variable `v<n>`"));
        }
        self.nat()
    }

    fn label(&mut self) -> Result<ElemId, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find([',', ']'])
            .ok_or_else(|| self.syntax("unterminated label list"))?;
        let label = self.rest()[..len].trim();
        let id = self.m.id_of(label).map_err(|_| ParseError::UnknownLabel {
            pos: start,
            label: label.into(),
        })?;
        self.pos += len;
        Ok(id)
    }

    fn label_list(&mut self) -> Result<Vec<ElemId>, ParseError> {
        self.expect("[")?;
        let mut out = Vec::new();
        if self.eat("]") {
            return Ok(out);
        }
        loop {
            out.push(self.label()?);
            if self.eat("]") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn is_var_token(word: &str) -> bool {
        word.len() > 1 && word.starts_with('v') && word[1..].chars().all(|c| c.is_ascii_digit())
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        self.skip_ws();
        let m = self.m;
        match self.peek() {
            None => Err(self.syntax("unexpected end of input")),
            Some('~') => {
                self.pos += 1;
                Ok(self.formula()?.neg())
            }
            Some('(') => {
                self.pos += 1;
                let lhs = self.formula()?;
                let op = if self.eat("<=>") {
                    Op::Iff
                } else if self.eat("=>") {
                    Op::StrongImp
                } else if self.eat("->") {
                    Op::Imp
                } else if self.eat("&") {
                    Op::And
                } else if self.eat("|") {
                    Op::Or
                } else {
                    return Err(self.syntax("expected a binary connective"));
                };
                let rhs = self.formula()?;
                self.expect(")")?;
                Ok(match op {
                    Op::And => lhs.and(rhs),
                    Op::Or => lhs.or(rhs),
                    Op::Imp => derived::imp(lhs, rhs),
                    Op::StrongImp => derived::strong_imp(m, lhs, rhs),
                    Op::Iff => derived::iff(m, lhs, rhs),
                })
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.word_form(),
            Some(c) => Err(self.syntax(&format!("unexpected `{c}`"))),
        }
    }

    fn word_form(&mut self) -> Result<Formula, ParseError> {
        let start = self.pos;
        let Some(word) = self.ident().map(str::to_string) else {
            return Err(self.syntax("expected an identifier"));
        };
        let m = self.m;
        let bracket = self.rest().starts_with('[');
        match word.as_str() {
            "E" | "A" => {
                let k = self.var()?;
                self.expect(".")?;
                let body = self.formula()?;
                Ok(if word == "E" {
                    Formula::exists(k, body)
                } else {
                    derived::forall(k, body)
                })
            }
            "G" => Ok(derived::big_gamma(m, self.formula()?)),
            "t" if bracket => {
                self.expect("[")?;
                let p = self.label()?;
                self.expect("]")?;
                Ok(Formula::Const(p))
            }
            "g" if bracket => {
                self.expect("[")?;
                let p = self.label()?;
                self.expect("]")?;
                Ok(Formula::gamma(p, self.formula()?))
            }
            "Q" if bracket => {
                let q = self.label_list()?;
                Ok(derived::q_restrict(m, self.formula()?, &q))
            }
            "S" if bracket => {
                self.expect("[")?;
                let k = self.nat()?;
                self.expect(",")?;
                let l = self.nat()?;
                self.expect("]")?;
                Ok(derived::subst(k, l, self.formula()?))
            }
            _ if self.rest().starts_with('(') => {
                self.pos += 1;
                let mut args = Vec::new();
                if !self.eat(")") {
                    loop {
                        args.push(self.var()?);
                        if self.eat(")") {
                            break;
                        }
                        self.expect(",")?;
                    }
                }
                self.relation(start, word, args)
            }
            w if Self::is_var_token(w) => {
                let j: usize = w[1..].parse().map_err(|_| ParseError::Syntax {
                    pos: start,
                    msg: "variable index out of range".into(),
                })?;
                self.expect("=")?;
                let k = self.var()?;
                Ok(Formula::Eq(j, k))
            }
            _ => self.relation(start, word, Vec::new()),
        }
    }

    fn relation(
        &mut self,
        pos: usize,
        name: String,
        args: Vec<usize>,
    ) -> Result<Formula, ParseError> {
        if RESERVED.contains(&name.as_str()) {
            return Err(ParseError::Syntax {
                pos,
                msg: format!("`{name}` is reserved"),
            });
        }
        let found = args.len();
        let declared = match &mut self.sig {
            Sig::Fixed(sig) => sig.arity(&name),
            Sig::Infer(sig) => Some(*sig.relations.entry(name.clone()).or_insert(found)),
        };
        match declared {
            None => Err(ParseError::UnknownRelation { pos, name }),
            Some(expected) if expected != found => Err(ParseError::Arity {
                pos,
                name,
                expected,
                found,
            }),
            Some(_) => Ok(Formula::Rel { name, args }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::new([("R1", 2), ("R", 1), ("S", 1)])
    }

    #[test]
    fn grammar_examples() {
        let k3 = DeMorganAlgebra::k3();
        let f = parse("E v0 . R1(v0,v1)", &sig(), &k3).unwrap();
        assert_eq!(f, Formula::exists(0, Formula::rel("R1", &[0, 1])));
        let u = k3.id_of("u").unwrap();
        let g = parse("(t[u] | ~t[u])", &sig(), &k3).unwrap();
        assert_eq!(g, Formula::Const(u).or(Formula::Const(u).neg()));
        assert_eq!(parse("v2 = v5", &sig(), &k3).unwrap(), Formula::Eq(2, 5));
    }

    #[test]
    fn errors_carry_positions() {
        let k3 = DeMorganAlgebra::k3();
        assert!(matches!(
            parse("T(v0)", &sig(), &k3),
            Err(ParseError::UnknownRelation { pos: 0, .. })
        ));
        assert!(matches!(
            parse("(R(v0) & R1(v0))", &sig(), &k3),
            Err(ParseError::Arity { pos: 9, .. })
        ));
        assert!(matches!(
            parse("t[a]", &sig(), &k3),
            Err(ParseError::UnknownLabel { pos: 2, .. })
        ));
        assert!(matches!(
            parse("(R(v0) R(v1))", &sig(), &k3),
            Err(ParseError::Syntax { pos: 7, .. })
        ));
        assert!(parse("R(v0) junk", &sig(), &k3).is_err());
    }

    #[test]
    fn inference_fixes_arity_at_first_use() {
        let b2 = DeMorganAlgebra::b2();
        let mut s = Signature::default();
        let f = parse_infer("(p => q)", &mut s, &b2).unwrap();
        assert_eq!(s.arity("p"), Some(0));
        assert_eq!(f.prime_subformulas().len(), 2);
        assert!(parse_infer("(P(v0) & P(v0,v1))", &mut s, &b2).is_err());
    }

    #[test]
    fn derived_forms_expand() {
        let b2 = DeMorganAlgebra::b2();
        let f = parse("A v0 . R(v0)", &sig(), &b2).unwrap();
        assert_eq!(f, Formula::exists(0, Formula::rel("R", &[0]).neg()).neg());
        let e = parse("Q[] R(v0)", &sig(), &b2).unwrap();
        assert_eq!(e, Formula::Const(b2.zero()));
        let s = parse("S[0,1] R(v0)", &sig(), &b2).unwrap();
        assert_eq!(
            s,
            Formula::exists(0, Formula::Eq(0, 1).and(Formula::rel("R", &[0])))
        );
    }
}

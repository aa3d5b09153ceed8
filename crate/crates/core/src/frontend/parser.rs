//! Recursive-descent parser.
//!
//! ```text
//! program    := "inputs" ident ("," ident)* ";" definition* assertion+
//! definition := ident ":=" expr ";"
//! assertion  := "assert" ident ("==" | "!=") "0" ";"
//! expr       := term (("+" | "-") term)*
//! term       := factor ("*" factor)*
//! factor     := ["-"] (integer | ident | "(" expr ")") ["^" integer]
//! ```
//!
//! Subtraction is desugared to `Add` of a `Neg`, so the tree only contains
//! the node kinds of [`Expr`]. Name resolution runs after the syntax pass so
//! that a use of a later definition is reported as a forward reference.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;

use super::lexer::{tokenize, Tok, Token};
use super::{Condition, Definition, Expr, ParseError, Program, Relation};

const KEYWORDS: [&str; 2] = ["inputs", "assert"];

pub fn parse_program(source: &str) -> Result<Program, ParseError> {
    let tokens = tokenize(source)?;
    let mut parser = Parser { tokens, pos: 0, uses: Vec::new() };
    let (program, decl_sites) = parser.program()?;
    resolve(&program, &decl_sites, &parser.uses)?;
    Ok(program)
}

/// A variable occurrence, recorded for name resolution.
struct Use {
    name: String,
    line: usize,
    col: usize,
    /// Index of the definition whose body contains this use.
    scope: usize,
}

struct Sites {
    inputs: Vec<(usize, usize)>,
    definitions: Vec<(usize, usize)>,
    conditions: Vec<(usize, usize)>,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    uses: Vec<Use>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, expected: &str) -> ParseError {
        let t = self.peek();
        ParseError::Syntax {
            line: t.line,
            col: t.col,
            message: format!("expected {expected}, found {}", t.tok.describe()),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, ParseError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.error_here(&tok.describe()))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn ident(&mut self) -> Result<(String, usize, usize), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let t = self.bump();
                let Tok::Ident(s) = t.tok else { unreachable!() };
                Ok((s, t.line, t.col))
            }
            _ => Err(self.error_here("an identifier")),
        }
    }

    fn program(&mut self) -> Result<(Program, Sites), ParseError> {
        if !self.is_keyword("inputs") {
            return Err(self.error_here("`inputs`"));
        }
        self.bump();
        let mut sites = Sites { inputs: Vec::new(), definitions: Vec::new(), conditions: Vec::new() };
        let mut inputs = Vec::new();
        loop {
            let (name, line, col) = self.ident()?;
            inputs.push(name);
            sites.inputs.push((line, col));
            if self.peek().tok == Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        self.expect(Tok::Semi)?;

        let mut definitions = Vec::new();
        while !self.is_keyword("assert") {
            if self.peek().tok == Tok::Eof {
                return Err(self.error_here("a definition or `assert`"));
            }
            let (name, line, col) = self.ident()?;
            self.expect(Tok::Define)?;
            let scope = definitions.len();
            let expr = self.expr(scope)?;
            self.expect(Tok::Semi)?;
            definitions.push(Definition { name, expr });
            sites.definitions.push((line, col));
        }

        let mut conditions = Vec::new();
        while self.peek().tok != Tok::Eof {
            if !self.is_keyword("assert") {
                return Err(self.error_here("`assert`"));
            }
            self.bump();
            let (name, line, col) = self.ident()?;
            let relation = match self.bump().tok {
                Tok::EqEq => Relation::EqualZero,
                Tok::NotEq => Relation::NotEqualZero,
                _ => {
                    self.pos -= 1;
                    return Err(self.error_here("`==` or `!=`"));
                }
            };
            match &self.peek().tok {
                Tok::Int(s) if s.bytes().all(|b| b == b'0') => {
                    self.bump();
                }
                _ => return Err(self.error_here("`0`")),
            }
            self.expect(Tok::Semi)?;
            conditions.push(Condition { name, relation });
            sites.conditions.push((line, col));
        }
        Ok((Program { inputs, definitions, conditions }, sites))
    }

    fn expr(&mut self, scope: usize) -> Result<Expr, ParseError> {
        let mut terms = vec![self.term(scope)?];
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term(scope)?);
                }
                Tok::Minus => {
                    self.bump();
                    terms.push(Expr::Neg(Box::new(self.term(scope)?)));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Add(terms) })
    }

    fn term(&mut self, scope: usize) -> Result<Expr, ParseError> {
        let mut factors = vec![self.factor(scope)?];
        while self.peek().tok == Tok::Star {
            self.bump();
            factors.push(self.factor(scope)?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Mul(factors) })
    }

    fn factor(&mut self, scope: usize) -> Result<Expr, ParseError> {
        let negate = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let base = match self.peek().tok.clone() {
            Tok::Int(digits) => {
                self.bump();
                Expr::Const(digits.parse::<BigInt>().expect("lexer yields digits"))
            }
            Tok::Ident(_) => {
                let (name, line, col) = self.ident()?;
                self.uses.push(Use { name: name.clone(), line, col, scope });
                Expr::Var(name)
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr(scope)?;
                self.expect(Tok::RParen)?;
                e
            }
            _ => return Err(self.error_here("an integer, identifier or `(`")),
        };
        let base = if self.peek().tok == Tok::Caret {
            let caret = self.bump();
            let t = self.peek().clone();
            match t.tok {
                Tok::Minus => return Err(ParseError::NegativeExponent { line: caret.line, col: caret.col }),
                Tok::Int(digits) => {
                    self.bump();
                    let n: u32 = digits.parse().map_err(|_| ParseError::Syntax {
                        line: t.line,
                        col: t.col,
                        message: format!("exponent `{digits}` is too large"),
                    })?;
                    if n == 0 {
                        return Err(ParseError::ZeroExponent { line: t.line, col: t.col });
                    }
                    Expr::Pow(Box::new(base), n)
                }
                _ => return Err(self.error_here("an integer exponent")),
            }
        } else {
            base
        };
        Ok(if negate { Expr::Neg(Box::new(base)) } else { base })
    }
}

fn resolve(program: &Program, sites: &Sites, uses: &[Use]) -> Result<(), ParseError> {
    let mut seen = HashSet::new();
    for (name, &(line, col)) in program.inputs.iter().zip(&sites.inputs) {
        if !seen.insert(name.as_str()) {
            return Err(ParseError::DuplicateName { name: name.clone(), line, col });
        }
    }
    let mut def_index = HashMap::new();
    for (i, (def, &(line, col))) in program.definitions.iter().zip(&sites.definitions).enumerate() {
        if !seen.insert(def.name.as_str()) {
            return Err(ParseError::DuplicateName { name: def.name.clone(), line, col });
        }
        def_index.insert(def.name.as_str(), i);
    }

    let is_input = |n: &str| program.inputs.iter().any(|i| i == n);
    for u in uses {
        if is_input(&u.name) {
            continue;
        }
        match def_index.get(u.name.as_str()) {
            Some(&i) if i < u.scope => {}
            Some(_) => return Err(ParseError::ForwardReference { name: u.name.clone(), line: u.line, col: u.col }),
            None => return Err(ParseError::UnknownIdentifier { name: u.name.clone(), line: u.line, col: u.col }),
        }
    }

    for (c, &(line, col)) in program.conditions.iter().zip(&sites.conditions) {
        if !def_index.contains_key(c.name.as_str()) {
            return Err(ParseError::UndefinedCondition { name: c.name.clone(), line, col });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn var(s: &str) -> Expr {
        Expr::Var(s.into())
    }

    fn int(n: i64) -> Expr {
        Expr::Const(BigInt::from(n))
    }

    #[test]
    fn minimal_program() {
        let p = parse_program("inputs x, y; out := x*y; assert out == 0;").unwrap();
        assert_eq!(p.inputs, vec!["x", "y"]);
        assert_eq!(p.definitions.len(), 1);
        assert_eq!(p.definitions[0].expr, Expr::Mul(vec![var("x"), var("y")]));
        assert_eq!(p.conditions, vec![Condition { name: "out".into(), relation: Relation::EqualZero }]);
    }

    #[test]
    fn coloring_program_shape() {
        let p = parse_program(corpus::COLORING5).unwrap();
        assert_eq!(p.inputs, vec!["c1", "c2", "c3", "c4", "c5"]);
        let names: Vec<_> = p.definitions.iter().map(|d| d.name.as_str()).collect();
        assert_eq!(names, vec!["f1", "f2"]);
        assert_eq!(
            p.conditions,
            vec![
                Condition { name: "f1".into(), relation: Relation::NotEqualZero },
                Condition { name: "f2".into(), relation: Relation::EqualZero },
            ]
        );
        let diff = |a: &str, b: &str| Expr::Add(vec![var(a), Expr::Neg(Box::new(var(b)))]);
        let Expr::Mul(factors) = &p.definitions[0].expr else { panic!("f1 is a product") };
        assert_eq!(factors.len(), 8);
        assert_eq!(factors[0], diff("c1", "c2"));
        assert_eq!(factors[1], diff("c1", "c3"));
        let Expr::Add(terms) = &p.definitions[1].expr else { panic!("f2 is a sum") };
        assert_eq!(terms.len(), 5);
        let cubic = |c: &str| {
            Expr::Mul(vec![
                Expr::Add(vec![int(1), Expr::Neg(Box::new(var(c)))]),
                Expr::Add(vec![int(2), Expr::Neg(Box::new(var(c)))]),
                Expr::Add(vec![int(3), Expr::Neg(Box::new(var(c)))]),
            ])
        };
        assert_eq!(terms[0], cubic("c1"));
        assert_eq!(terms[4], cubic("c5"));
    }

    #[test]
    fn dangling_operator() {
        let err = parse_program("inputs x; y := x + ; assert y == 0;").unwrap_err();
        match err {
            ParseError::Syntax { line, col, message } => {
                assert_eq!((line, col), (1, 20));
                assert!(message.contains("found `;`"), "{message}");
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn distinct_diagnostics() {
        type Case = (&'static str, fn(&ParseError) -> bool);
        let cases: [Case; 7] = [
            (
                "inputs x; y := z; assert y == 0;",
                |e| matches!(e, ParseError::UnknownIdentifier { name, .. } if name == "z"),
            ),
            (
                "inputs x; y := w; w := x; assert y == 0;",
                |e| matches!(e, ParseError::ForwardReference { name, .. } if name == "w"),
            ),
            ("inputs x; y := y + 1; assert y == 0;", |e| matches!(e, ParseError::ForwardReference { .. })),
            ("inputs x; y := x^0; assert y == 0;", |e| matches!(e, ParseError::ZeroExponent { .. })),
            ("inputs x; y := x^-2; assert y == 0;", |e| matches!(e, ParseError::NegativeExponent { .. })),
            ("inputs x; x := x; assert x == 0;", |e| matches!(e, ParseError::DuplicateName { .. })),
            ("inputs x; y := x; assert x == 0;", |e| matches!(e, ParseError::UndefinedCondition { .. })),
        ];
        for (src, check) in cases {
            let err = parse_program(src).unwrap_err();
            assert!(check(&err), "{src}: {err:?}");
        }
    }

    #[test]
    fn structural_errors() {
        for src in [
            "",
            "inputs ; y := 1; assert y == 0;",
            "inputs x; y := x;",
            "inputs x; y := x; assert y == 1;",
            "inputs x; y := x; assert y == 0; z := x;",
            "inputs x; y := (x + 1; assert y == 0;",
            "inputs x; assert := x; assert y == 0;",
            "inputs x; y := --x; assert y == 0;",
        ] {
            assert!(matches!(parse_program(src), Err(ParseError::Syntax { .. })), "{src}");
        }
    }

    #[test]
    fn error_lines_point_at_the_fault() {
        let src = "inputs x;\n\ny := x * (x +\n  );\nassert y == 0;\n";
        let err = parse_program(src).unwrap_err();
        assert_eq!(err.line(), 4);
    }

    #[test]
    fn precedence_and_desugaring() {
        let p = parse_program("inputs a, b; y := a - b*a^2 + -a^3; assert y != 0;").unwrap();
        assert_eq!(
            p.definitions[0].expr,
            Expr::Add(vec![
                var("a"),
                Expr::Neg(Box::new(Expr::Mul(vec![var("b"), Expr::Pow(Box::new(var("a")), 2)]))),
                Expr::Neg(Box::new(Expr::Pow(Box::new(var("a")), 3))),
            ])
        );
    }

    #[test]
    fn shared_subexpressions_and_repeated_assertions() {
        let p =
            parse_program("inputs x; s := x*x; a := s + 1; b := s - 1; assert a != 0; assert a != 0; assert b == 0;")
                .unwrap();
        assert_eq!(p.conditions.len(), 3);
    }
}

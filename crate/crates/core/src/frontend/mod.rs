//! The polynomial-program language.
//!
//! A program declares its inputs, defines named polynomials over them in
//! order, and asserts that some of those polynomials are zero or nonzero:
//!
//! ```text
//! inputs x, y;
//! out := x*y - 6;
//! assert out == 0;
//! ```

mod lexer;
mod parser;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::field::{Fe, Field};

pub use parser::parse_program;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{line}:{col}: unknown identifier `{name}`")]
    UnknownIdentifier { name: String, line: usize, col: usize },
    #[error("{line}:{col}: `{name}` is used before its definition")]
    ForwardReference { name: String, line: usize, col: usize },
    #[error("{line}:{col}: `{name}` is already defined")]
    DuplicateName { name: String, line: usize, col: usize },
    #[error("{line}:{col}: exponent must be at least 1, found 0")]
    ZeroExponent { line: usize, col: usize },
    #[error("{line}:{col}: exponent must be positive")]
    NegativeExponent { line: usize, col: usize },
    #[error("{line}:{col}: assertion on `{name}`, which is not a defined polynomial")]
    UndefinedCondition { name: String, line: usize, col: usize },
}

impl ParseError {
    /// 1-based line of the diagnostic.
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::UnknownIdentifier { line, .. }
            | ParseError::ForwardReference { line, .. }
            | ParseError::DuplicateName { line, .. }
            | ParseError::ZeroExponent { line, .. }
            | ParseError::NegativeExponent { line, .. }
            | ParseError::UndefinedCondition { line, .. } => *line,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(BigInt),
    Var(String),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Neg(Box<Expr>),
    /// Exponent is at least 1.
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    EqualZero,
    NotEqualZero,
}

impl Relation {
    pub fn holds(self, value: Fe) -> bool {
        match self {
            Relation::EqualZero => value.is_zero(),
            Relation::NotEqualZero => !value.is_zero(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Definition {
    pub name: String,
    pub expr: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub name: String,
    pub relation: Relation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub inputs: Vec<String>,
    pub definitions: Vec<Definition>,
    pub conditions: Vec<Condition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("missing value for input `{0}`")]
    MissingInput(String),
    #[error("`{0}` is not an input of the program")]
    UnexpectedInput(String),
}

/// Result of evaluating a program directly on its expression trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub values: BTreeMap<String, Fe>,
    /// One entry per condition, in program order.
    pub conditions: Vec<bool>,
}

impl Evaluation {
    pub fn accepted(&self) -> bool {
        self.conditions.iter().all(|&c| c)
    }
}

/// Reduces an integer constant into the field.
pub fn reduce_constant(field: &Field, c: &BigInt) -> Fe {
    let p = BigInt::from(field.modulus());
    let r = ((c % &p) + &p) % &p;
    field.elem(r.to_u64().expect("residue fits in u64"))
}

impl Expr {
    pub fn eval(&self, field: &Field, env: &BTreeMap<String, Fe>) -> Fe {
        match self {
            Expr::Const(c) => reduce_constant(field, c),
            Expr::Var(name) => env[name],
            Expr::Add(xs) => xs.iter().fold(field.zero(), |acc, x| acc + x.eval(field, env)),
            Expr::Mul(xs) => xs.iter().fold(field.one(), |acc, x| acc * x.eval(field, env)),
            Expr::Neg(x) => -x.eval(field, env),
            Expr::Pow(x, n) => x.eval(field, env).pow(u64::from(*n)),
        }
    }

    fn visit_constants<'a>(&'a self, out: &mut Vec<&'a BigInt>) {
        match self {
            Expr::Const(c) => out.push(c),
            Expr::Var(_) => {}
            Expr::Add(xs) | Expr::Mul(xs) => xs.iter().for_each(|x| x.visit_constants(out)),
            Expr::Neg(x) | Expr::Pow(x, _) => x.visit_constants(out),
        }
    }
}

impl Program {
    /// Evaluates every definition in order and checks each condition.
    pub fn eval(&self, field: &Field, inputs: &BTreeMap<String, Fe>) -> Result<Evaluation, EvalError> {
        if let Some(extra) = inputs.keys().find(|k| !self.inputs.contains(k)) {
            return Err(EvalError::UnexpectedInput(extra.clone()));
        }
        let mut env = BTreeMap::new();
        for name in &self.inputs {
            let v = inputs.get(name).ok_or_else(|| EvalError::MissingInput(name.clone()))?;
            env.insert(name.clone(), *v);
        }
        let mut values = BTreeMap::new();
        for def in &self.definitions {
            let v = def.expr.eval(field, &env);
            env.insert(def.name.clone(), v);
            values.insert(def.name.clone(), v);
        }
        let conditions = self.conditions.iter().map(|c| c.relation.holds(values[&c.name])).collect();
        Ok(Evaluation { values, conditions })
    }

    /// Warnings for integer constants that do not fit in the field and will
    /// be reduced.
    pub fn constant_warnings(&self, field: &Field) -> Vec<String> {
        let p = BigInt::from(field.modulus());
        let mut out = Vec::new();
        for def in &self.definitions {
            let mut consts = Vec::new();
            def.expr.visit_constants(&mut consts);
            for c in consts {
                if c.abs() >= p {
                    out.push(format!(
                        "warning: constant {c} in `{}` exceeds the field modulus and is reduced to {}",
                        def.name,
                        reduce_constant(field, c)
                    ));
                }
            }
        }
        out
    }
}

/// Binding strength used to decide where the printer needs parentheses.
fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(_) => 1,
        Expr::Mul(_) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        Expr::Const(c) if c.is_negative() => 3,
        Expr::Const(_) | Expr::Var(_) => 5,
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if precedence(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Add(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    // a nested sum would be flattened on reparse
                    write_child(f, x, 2)?;
                }
                Ok(())
            }
            Expr::Mul(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write_child(f, x, 3)?;
                }
                Ok(())
            }
            Expr::Neg(x) => {
                write!(f, "-")?;
                write_child(f, x, 4)
            }
            Expr::Pow(x, n) => {
                write_child(f, x, 5)?;
                write!(f, "^{n}")
            }
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "inputs {};", self.inputs.join(", "))?;
        for d in &self.definitions {
            writeln!(f, "{} := {};", d.name, d.expr)?;
        }
        for c in &self.conditions {
            let op = match c.relation {
                Relation::EqualZero => "==",
                Relation::NotEqualZero => "!=",
            };
            writeln!(f, "assert {} {} 0;", c.name, op)?;
        }
        Ok(())
    }
}

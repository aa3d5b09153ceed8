//! Oracles shared by the integration tests. None of them go through the
//! circuit or QAP code they are used to check.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use snarkpipe_core::frontend::{Expr, Program};
use snarkpipe_core::{Fe, Field};

/// Edges of the five-vertex graph, 1-based.
pub const COLORING5_EDGES: [(usize, usize); 8] = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 5), (2, 3), (3, 4), (4, 5)];

/// Colors for `code` in base 3, each in `1..=3`.
pub fn coloring(code: u32) -> [u64; 5] {
    std::array::from_fn(|i| (code / 3u32.pow(i as u32) % 3 + 1) as u64)
}

pub fn is_proper(colors: &[u64; 5]) -> bool {
    COLORING5_EDGES.iter().all(|&(a, b)| colors[a - 1] != colors[b - 1])
}

pub fn inputs(field: &Field, values: &[u64]) -> BTreeMap<String, Fe> {
    values.iter().enumerate().map(|(i, &v)| (format!("c{}", i + 1), field.elem(v))).collect()
}

/// Evaluates over the integers with no reduction.
pub fn eval_int(e: &Expr, env: &BTreeMap<String, BigInt>) -> BigInt {
    match e {
        Expr::Const(c) => c.clone(),
        Expr::Var(n) => env[n].clone(),
        Expr::Add(xs) => xs.iter().map(|x| eval_int(x, env)).sum(),
        Expr::Mul(xs) => xs.iter().map(|x| eval_int(x, env)).product(),
        Expr::Neg(x) => -eval_int(x, env),
        Expr::Pow(x, n) => num_traits::pow(eval_int(x, env), *n as usize),
    }
}

/// Program values over the integers, keyed by definition name.
pub fn eval_program_int(p: &Program, values: &[i64]) -> BTreeMap<String, BigInt> {
    let mut env: BTreeMap<String, BigInt> =
        p.inputs.iter().zip(values).map(|(n, &v)| (n.clone(), BigInt::from(v))).collect();
    for d in &p.definitions {
        let v = eval_int(&d.expr, &env);
        env.insert(d.name.clone(), v);
    }
    env
}

/// Binary gates needed for an expression tree under left-chain association.
fn gates_in(e: &Expr) -> usize {
    match e {
        Expr::Const(_) | Expr::Var(_) => 0,
        Expr::Add(xs) | Expr::Mul(xs) => xs.len() - 1 + xs.iter().map(gates_in).sum::<usize>(),
        Expr::Neg(x) => 1 + gates_in(x),
        Expr::Pow(x, n) => *n as usize - 1 + gates_in(x),
    }
}

/// Gate count of a flattened program; a bare-constant definition costs one
/// gate of its own.
pub fn gate_count(p: &Program) -> usize {
    p.definitions.iter().map(|d| gates_in(&d.expr) + matches!(d.expr, Expr::Const(_)) as usize).sum()
}

/// `base^exp mod p` over u128.
pub fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let (mut acc, mut b) = (1u128, base as u128 % p as u128);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

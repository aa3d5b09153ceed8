//! Quadratic Arithmetic Programs.
//!
//! Every gate `d` (1-based) becomes one constraint row `v(d) * w(d) = k(d)`
//! over the symbols: the one wire, the inputs, every gate output and every
//! inverse wire. Constants never own a symbol; they scale the one symbol.
//!
//! * Times gate `a * b = o`: `v_a(d) = 1`, `w_b(d) = 1`, `k_o(d) = 1`.
//! * Plus gate `a + b = o`: `v_a(d) = v_b(d) = 1`, `w_one(d) = 1`, `k_o(d) = 1`.
//!
//! After the N gate rows come one row per output condition, with the one
//! symbol as the row's output:
//!
//! * `x != 0`: `x * inv = 1`.
//! * `x == 0`: `(x + 1) * 1 = 1`.
//!
//! Each column is interpolated over the nodes `1..=rows`, and the target
//! polynomial is `T(x) = (x - 1)(x - 2)...(x - rows)`.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;
use thiserror::Error;

use crate::circuit::{Assignment, Circuit, Op, Wire, WireId, ONE};
use crate::field::{Fe, Field, FieldError};
use crate::frontend::Relation;
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QapError {
    #[error("field modulus {modulus} is too small for {rows} constraint rows (need p > {})", 2 * rows)]
    FieldTooSmall { modulus: u64, rows: usize },
    #[error("assignment has no value for symbol `{0}`")]
    IncompleteAssignment(String),
    #[error("the one symbol must be assigned 1")]
    OneNotUnity,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Symbol {
    pub name: String,
    pub wire: WireId,
}

/// One constraint row, as sparse `(symbol, coefficient)` lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub v: Vec<(usize, Fe)>,
    pub w: Vec<(usize, Fe)>,
    pub k: Vec<(usize, Fe)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Qap {
    field: Field,
    symbols: Vec<Symbol>,
    v: Vec<Polynomial>,
    w: Vec<Polynomial>,
    k: Vec<Polynomial>,
    target: Polynomial,
    n_gates: usize,
    n_rows: usize,
}

/// Symbol index for each wire; constants have none.
fn symbol_table(circuit: &Circuit) -> (Vec<Symbol>, Vec<Option<usize>>) {
    let mut symbols = Vec::new();
    let mut index = vec![None; circuit.wires().len()];
    for (id, wire) in circuit.wires().iter().enumerate() {
        if matches!(wire, Wire::Const(_)) {
            continue;
        }
        index[id] = Some(symbols.len());
        symbols.push(Symbol { name: circuit.label(id), wire: id });
    }
    (symbols, index)
}

/// The constraint rows of a circuit, gates first then output conditions.
pub fn constraint_rows(circuit: &Circuit) -> Vec<Row> {
    let (_, index) = symbol_table(circuit);
    let field = circuit.field();
    let one_sym = index[ONE].expect("one wire is a symbol");

    // a wire as (symbol, coefficient): constants scale the one symbol
    let term = |id: WireId| match &circuit.wires()[id] {
        Wire::Const(c) => (one_sym, *c),
        _ => (index[id].expect("non-constant wire has a symbol"), field.one()),
    };
    let push = |list: &mut Vec<(usize, Fe)>, (s, c): (usize, Fe)| match list.iter_mut().find(|(t, _)| *t == s) {
        Some(entry) => entry.1 += c,
        None => list.push((s, c)),
    };

    let mut rows = Vec::with_capacity(circuit.n_gates() + circuit.outputs().len());
    for g in circuit.gates() {
        let mut row = Row { v: Vec::new(), w: Vec::new(), k: Vec::new() };
        match g.op {
            Op::Times => {
                push(&mut row.v, term(g.left));
                push(&mut row.w, term(g.right));
            }
            Op::Plus => {
                push(&mut row.v, term(g.left));
                push(&mut row.v, term(g.right));
                push(&mut row.w, (one_sym, field.one()));
            }
        }
        push(&mut row.k, term(g.out));
        rows.push(row);
    }
    for o in circuit.outputs() {
        let mut row = Row { v: Vec::new(), w: Vec::new(), k: vec![(one_sym, field.one())] };
        match (o.relation, o.inverse) {
            (Relation::NotEqualZero, Some(inv)) => {
                push(&mut row.v, term(o.wire));
                push(&mut row.w, term(inv));
            }
            _ => {
                push(&mut row.v, term(o.wire));
                push(&mut row.v, (one_sym, field.one()));
                push(&mut row.w, (one_sym, field.one()));
            }
        }
        rows.push(row);
    }
    rows
}

impl Qap {
    pub fn build(circuit: &Circuit) -> Result<Qap, QapError> {
        let field = *circuit.field();
        let rows = constraint_rows(circuit);
        let n_rows = rows.len();
        if (field.modulus() as u128) <= 2 * n_rows as u128 {
            return Err(QapError::FieldTooSmall { modulus: field.modulus(), rows: n_rows });
        }
        let (symbols, _) = symbol_table(circuit);
        let nodes: Vec<Fe> = (1..=n_rows as u64).map(|d| field.elem(d)).collect();
        let basis = Polynomial::lagrange_basis(&nodes)?;

        let n = symbols.len();
        let mut columns = [vec![Vec::new(); n], vec![Vec::new(); n], vec![Vec::new(); n]];
        for (d, row) in rows.iter().enumerate() {
            for (col, entries) in columns.iter_mut().zip([&row.v, &row.w, &row.k]) {
                for &(s, c) in entries {
                    col[s].push((d, c));
                }
            }
        }
        let interpolate = |col: &Vec<(usize, Fe)>| {
            col.iter().filter(|(_, c)| !c.is_zero()).fold(Polynomial::zero(), |acc, &(d, c)| &acc + &basis[d].scale(c))
        };
        let [v, w, k] = columns.map(|cols| cols.iter().map(interpolate).collect::<Vec<_>>());

        Ok(Qap {
            field,
            symbols,
            v,
            w,
            k,
            target: Polynomial::from_roots(field.one(), &nodes),
            n_gates: circuit.n_gates(),
            n_rows,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn v(&self) -> &[Polynomial] {
        &self.v
    }

    pub fn w(&self) -> &[Polynomial] {
        &self.w
    }

    pub fn k(&self) -> &[Polynomial] {
        &self.k
    }

    pub fn target(&self) -> &Polynomial {
        &self.target
    }

    /// Number of circuit gates, N.
    pub fn n_gates(&self) -> usize {
        self.n_gates
    }

    /// Gate rows plus condition rows; the degree of the target polynomial.
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    /// Symbol values `t(i)` in symbol order.
    pub fn symbol_values(&self, t: &Assignment) -> Result<Vec<Fe>, QapError> {
        let values = self
            .symbols
            .iter()
            .map(|s| t.get(s.wire).ok_or_else(|| QapError::IncompleteAssignment(s.name.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        if !values[0].is_one() {
            return Err(QapError::OneNotUnity);
        }
        Ok(values)
    }

    /// Builds `v, w, k` as `t`-weighted sums, forms `F = v*w - k` and divides
    /// by the target polynomial.
    pub fn assemble(&self, t: &Assignment) -> Result<Assembled, QapError> {
        let values = self.symbol_values(t)?;
        let combine = |polys: &[Polynomial]| {
            polys
                .iter()
                .zip(&values)
                .filter(|(p, c)| !p.is_zero() && !c.is_zero())
                .fold(Polynomial::zero(), |acc, (p, &c)| &acc + &p.scale(c))
        };
        let (v, w, k) = (combine(&self.v), combine(&self.w), combine(&self.k));
        let f = &(&v * &w) - &k;
        let (quotient, remainder) = f.div_rem(&self.target)?;
        Ok(Assembled { v, w, k, f, quotient, remainder })
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct QapJson<'a> {
            modulus: String,
            n_gates: usize,
            n_rows: usize,
            symbols: &'a [Symbol],
            v: &'a [Polynomial],
            w: &'a [Polynomial],
            k: &'a [Polynomial],
            target: &'a Polynomial,
        }
        serde_json::to_string_pretty(&QapJson {
            modulus: self.field.modulus().to_string(),
            n_gates: self.n_gates,
            n_rows: self.n_rows,
            symbols: &self.symbols,
            v: &self.v,
            w: &self.w,
            k: &self.k,
            target: &self.target,
        })
        .expect("qap serializes")
    }
}

/// The solution polynomial for one assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assembled {
    pub v: Polynomial,
    pub w: Polynomial,
    pub k: Polynomial,
    /// `v*w - k`.
    pub f: Polynomial,
    pub quotient: Polynomial,
    pub remainder: Polynomial,
}

impl Assembled {
    pub fn divisible(&self) -> bool {
        self.remainder.is_zero()
    }

    /// `H` with `F = H*T`, when it exists.
    pub fn h(&self) -> Option<&Polynomial> {
        self.divisible().then_some(&self.quotient)
    }
}

/// How [`soundness_scan`] picks evaluation points.
#[derive(Debug, Clone, Copy)]
pub enum ScanPoints {
    /// Every element of the field.
    Exhaustive,
    /// `trials` uniform points from a seeded ChaCha20 stream.
    Random { trials: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanResult {
    pub hits: u64,
    pub trials: u64,
}

impl ScanResult {
    pub fn fraction(&self) -> f64 {
        self.hits as f64 / self.trials as f64
    }
}

/// Forges `H'` as the quotient of `F / T` (dropping any remainder) and counts
/// the points `s` where `v(s)w(s) - k(s) = H'(s)T(s)` still holds.
pub fn soundness_scan(qap: &Qap, t: &Assignment, points: ScanPoints) -> Result<ScanResult, QapError> {
    let a = qap.assemble(t)?;
    let forged_h = &a.quotient;
    let field = qap.field;
    let holds = |s: Fe| a.v.eval(s) * a.w.eval(s) - a.k.eval(s) == forged_h.eval(s) * qap.target.eval(s);
    let (hits, trials) = match points {
        ScanPoints::Exhaustive => {
            let p = field.modulus();
            ((0..p).filter(|&s| holds(field.elem(s))).count() as u64, p)
        }
        ScanPoints::Random { trials, seed } => {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            ((0..trials).filter(|_| holds(field.random(&mut rng))).count() as u64, trials)
        }
    };
    Ok(ScanResult { hits, trials })
}

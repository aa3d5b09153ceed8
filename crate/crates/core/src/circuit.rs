//! Arithmetic circuits of binary Plus/Times gates and their solutions.
//!
//! Wire 0 is always the constant-one wire. Constants live on their own wires
//! and are deduplicated; the constant 1 is the one wire itself. Every
//! nonzero assertion gets an extra inverse wire holding `1/out`, which the
//! QAP uses to express `out != 0` as a product constraint.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Fe, Field, FieldError};
use crate::frontend::{reduce_constant, Expr, Program, Relation};

pub type WireId = usize;

pub const ONE: WireId = 0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("missing value for input `{0}`")]
    MissingInput(String),
    #[error("`{0}` is not an input of the circuit")]
    UnexpectedInput(String),
    #[error("assignment has no value for wire {0}")]
    IncompleteAssignment(WireId),
    #[error("malformed circuit: {0}")]
    Malformed(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Wire {
    One,
    Input(String),
    Const(Fe),
    /// Output of gate `d` (1-based).
    Gate(usize),
    /// Holds the inverse of another wire (zero if that wire is zero).
    Inverse(WireId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Op {
    Plus,
    Times,
}

impl Op {
    pub fn apply(self, a: Fe, b: Fe) -> Fe {
        match self {
            Op::Plus => a + b,
            Op::Times => a * b,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gate {
    pub op: Op,
    pub left: WireId,
    pub right: WireId,
    pub out: WireId,
    /// 1-based position in evaluation order.
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Output {
    pub wire: WireId,
    pub relation: Relation,
    /// Inverse wire for `NotEqualZero` outputs.
    pub inverse: Option<WireId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    field: Field,
    wires: Vec<Wire>,
    gates: Vec<Gate>,
    outputs: Vec<Output>,
    names: BTreeMap<String, WireId>,
}

impl Circuit {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn wires(&self) -> &[Wire] {
        &self.wires
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[Output] {
        &self.outputs
    }

    /// Input and definition names.
    pub fn names(&self) -> &BTreeMap<String, WireId> {
        &self.names
    }

    pub fn wire(&self, name: &str) -> Option<WireId> {
        self.names.get(name).copied()
    }

    /// Number of arithmetic gates, N.
    pub fn n_gates(&self) -> usize {
        self.gates.len()
    }

    pub fn inputs(&self) -> impl Iterator<Item = (WireId, &str)> {
        self.wires.iter().enumerate().filter_map(|(i, w)| match w {
            Wire::Input(n) => Some((i, n.as_str())),
            _ => None,
        })
    }

    /// Human-readable name for a wire: the input name, else the
    /// alphabetically first definition bound to it, else a generated name.
    pub fn label(&self, id: WireId) -> String {
        if let Wire::Input(n) = &self.wires[id] {
            return n.clone();
        }
        if let Some((n, _)) = self.names.iter().find(|(_, &w)| w == id) {
            return n.clone();
        }
        match &self.wires[id] {
            Wire::One => "one".into(),
            Wire::Input(n) => n.clone(),
            Wire::Const(c) => format!("_c{c}"),
            Wire::Gate(d) => format!("_g{d}"),
            Wire::Inverse(of) => format!("_inv_{}", self.label(*of)),
        }
    }

    /// Forward-evaluates every gate. Inverse wires get `1/x`, or 0 when `x = 0`.
    pub fn solve(&self, inputs: &BTreeMap<String, Fe>) -> Result<Assignment, CircuitError> {
        let declared: Vec<&str> = self.inputs().map(|(_, n)| n).collect();
        if let Some(extra) = inputs.keys().find(|k| !declared.contains(&k.as_str())) {
            return Err(CircuitError::UnexpectedInput(extra.clone()));
        }
        let mut values = vec![None; self.wires.len()];
        for (id, wire) in self.wires.iter().enumerate() {
            values[id] = match wire {
                Wire::One => Some(self.field.one()),
                Wire::Const(c) => Some(*c),
                Wire::Input(n) => Some(*inputs.get(n).ok_or_else(|| CircuitError::MissingInput(n.clone()))?),
                Wire::Gate(_) | Wire::Inverse(_) => None,
            };
        }
        for g in &self.gates {
            let (a, b) = (values[g.left].expect("topological"), values[g.right].expect("topological"));
            values[g.out] = Some(g.op.apply(a, b));
        }
        for (id, wire) in self.wires.iter().enumerate() {
            if let Wire::Inverse(of) = wire {
                let x = values[*of].expect("inverse source is computed");
                values[id] = Some(x.inverse().unwrap_or(self.field.zero()));
            }
        }
        Ok(Assignment { values })
    }

    /// True iff every gate equation and every output relation holds.
    pub fn check_solution(&self, t: &Assignment) -> Result<bool, CircuitError> {
        if t.values.len() != self.wires.len() {
            return Err(CircuitError::IncompleteAssignment(t.values.len().min(self.wires.len())));
        }
        let get = |id: WireId| t.values[id].ok_or(CircuitError::IncompleteAssignment(id));
        for id in 0..self.wires.len() {
            get(id)?;
        }
        for (id, wire) in self.wires.iter().enumerate() {
            let ok = match wire {
                Wire::One => get(id)?.is_one(),
                Wire::Const(c) => get(id)? == *c,
                _ => true,
            };
            if !ok {
                return Ok(false);
            }
        }
        for g in &self.gates {
            if g.op.apply(get(g.left)?, get(g.right)?) != get(g.out)? {
                return Ok(false);
            }
        }
        for o in &self.outputs {
            let x = get(o.wire)?;
            let ok = match (o.relation, o.inverse) {
                (Relation::EqualZero, _) => x.is_zero(),
                (Relation::NotEqualZero, Some(inv)) => (x * get(inv)?).is_one(),
                (Relation::NotEqualZero, None) => !x.is_zero(),
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks the structural invariants; used when loading from JSON.
    pub fn validate(&self) -> Result<(), CircuitError> {
        let bad = |m: String| Err(CircuitError::Malformed(m));
        if self.wires.first() != Some(&Wire::One) {
            return bad("wire 0 must be the one wire".into());
        }
        let mut producer = HashMap::new();
        for (i, g) in self.gates.iter().enumerate() {
            if g.index != i + 1 {
                return bad(format!("gate {} has index {}", i + 1, g.index));
            }
            if g.out >= self.wires.len() || self.wires[g.out] != Wire::Gate(g.index) {
                return bad(format!("gate {} writes to wire {} which is not its output", g.index, g.out));
            }
            for operand in [g.left, g.right] {
                if operand >= g.out {
                    return bad(format!("gate {} reads wire {operand} before it exists", g.index));
                }
                if matches!(self.wires[operand], Wire::Gate(d) if d >= g.index) {
                    return bad(format!("gate {} is not topologically ordered", g.index));
                }
            }
            producer.insert(g.out, g.index);
        }
        for (id, w) in self.wires.iter().enumerate() {
            match w {
                Wire::One if id != ONE => return bad(format!("second one wire at {id}")),
                Wire::Const(c) if c.modulus() != self.field.modulus() => {
                    return bad(format!("constant on wire {id} is from another field"))
                }
                Wire::Gate(d) if producer.get(&id) != Some(d) => {
                    return bad(format!("wire {id} claims gate {d} but no such gate writes it"))
                }
                Wire::Inverse(of) if *of >= self.wires.len() => {
                    return bad(format!("inverse wire {id} refers to missing wire {of}"))
                }
                _ => {}
            }
        }
        for o in &self.outputs {
            match self.wires.get(o.wire) {
                Some(Wire::Gate(_)) | Some(Wire::Input(_)) => {}
                _ => return bad(format!("output wire {} is neither a gate output nor an input", o.wire)),
            }
            match (o.relation, o.inverse) {
                (Relation::NotEqualZero, Some(inv)) if self.wires.get(inv) == Some(&Wire::Inverse(o.wire)) => {}
                (Relation::EqualZero, None) => {}
                _ => return bad(format!("output on wire {} has an inconsistent inverse wire", o.wire)),
            }
        }
        for (n, &w) in &self.names {
            if w >= self.wires.len() {
                return bad(format!("name `{n}` refers to missing wire {w}"));
            }
        }
        Ok(())
    }
}

/// The solution map `t`: one value per wire.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<Option<Fe>>,
}

impl Assignment {
    pub fn new(len: usize) -> Self {
        Self { values: vec![None; len] }
    }

    pub fn get(&self, id: WireId) -> Option<Fe> {
        self.values.get(id).copied().flatten()
    }

    pub fn set(&mut self, id: WireId, value: Fe) {
        self.values[id] = Some(value);
    }

    pub fn clear(&mut self, id: WireId) {
        self.values[id] = None;
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Incremental construction of a [`Circuit`].
#[derive(Debug, Clone)]
pub struct CircuitBuilder {
    circuit: Circuit,
    consts: HashMap<u64, WireId>,
}

impl CircuitBuilder {
    pub fn new(field: Field) -> Self {
        Self {
            circuit: Circuit {
                field,
                wires: vec![Wire::One],
                gates: Vec::new(),
                outputs: Vec::new(),
                names: BTreeMap::new(),
            },
            consts: HashMap::new(),
        }
    }

    pub fn input(&mut self, name: &str) -> WireId {
        let id = self.push(Wire::Input(name.to_string()));
        self.circuit.names.insert(name.to_string(), id);
        id
    }

    pub fn constant(&mut self, c: Fe) -> WireId {
        if c.is_one() {
            return ONE;
        }
        if let Some(&id) = self.consts.get(&c.value()) {
            return id;
        }
        let id = self.push(Wire::Const(c));
        self.consts.insert(c.value(), id);
        id
    }

    pub fn gate(&mut self, op: Op, left: WireId, right: WireId) -> WireId {
        let index = self.circuit.gates.len() + 1;
        let out = self.push(Wire::Gate(index));
        self.circuit.gates.push(Gate { op, left, right, out, index });
        out
    }

    pub fn name(&mut self, name: &str, wire: WireId) {
        self.circuit.names.insert(name.to_string(), wire);
    }

    pub fn assert(&mut self, wire: WireId, relation: Relation) {
        let inverse = match relation {
            Relation::NotEqualZero => Some(self.push(Wire::Inverse(wire))),
            Relation::EqualZero => None,
        };
        self.circuit.outputs.push(Output { wire, relation, inverse });
    }

    pub fn finish(self) -> Circuit {
        self.circuit
    }

    fn push(&mut self, w: Wire) -> WireId {
        self.circuit.wires.push(w);
        self.circuit.wires.len() - 1
    }
}

/// Lowers a program to binary gates.
///
/// n-ary sums and products become left-to-right chains, `-x` becomes
/// `(p-1) * x`, and `x^n` becomes `n - 1` multiplications by `x`. A
/// definition that is a bare constant is materialized as `c * 1` so that it
/// owns a gate.
pub fn flatten(program: &Program, field: &Field) -> Circuit {
    let mut b = CircuitBuilder::new(*field);
    let mut env = HashMap::new();
    for name in &program.inputs {
        env.insert(name.clone(), b.input(name));
    }
    for def in &program.definitions {
        let mut w = lower(&mut b, field, &env, &def.expr);
        if matches!(b.circuit.wires[w], Wire::One | Wire::Const(_)) {
            w = b.gate(Op::Times, w, ONE);
        }
        env.insert(def.name.clone(), w);
        b.name(&def.name, w);
    }
    for c in &program.conditions {
        b.assert(env[&c.name], c.relation);
    }
    b.finish()
}

fn lower(b: &mut CircuitBuilder, field: &Field, env: &HashMap<String, WireId>, e: &Expr) -> WireId {
    match e {
        Expr::Const(c) => b.constant(reduce_constant(field, c)),
        Expr::Var(n) => env[n],
        Expr::Add(xs) | Expr::Mul(xs) => {
            let op = if matches!(e, Expr::Add(_)) { Op::Plus } else { Op::Times };
            let mut acc = lower(b, field, env, &xs[0]);
            for x in &xs[1..] {
                let rhs = lower(b, field, env, x);
                acc = b.gate(op, acc, rhs);
            }
            acc
        }
        Expr::Neg(x) => {
            let minus_one = b.constant(-field.one());
            let w = lower(b, field, env, x);
            b.gate(Op::Times, minus_one, w)
        }
        Expr::Pow(x, n) => {
            let w = lower(b, field, env, x);
            let mut acc = w;
            for _ in 1..*n {
                acc = b.gate(Op::Times, acc, w);
            }
            acc
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum WireJson {
    One,
    Input { name: String },
    Const { value: String },
    Gate { d: usize },
    Inverse { of: WireId },
}

#[derive(Serialize, Deserialize)]
struct GateJson {
    op: Op,
    l: WireId,
    r: WireId,
    o: WireId,
    d: usize,
}

#[derive(Serialize, Deserialize)]
struct OutputJson {
    wire: WireId,
    rel: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    inverse: Option<WireId>,
}

#[derive(Serialize, Deserialize)]
struct CircuitJson {
    modulus: String,
    wires: Vec<WireJson>,
    gates: Vec<GateJson>,
    outputs: Vec<OutputJson>,
    names: BTreeMap<String, WireId>,
}

impl Circuit {
    pub fn to_json(&self) -> String {
        let doc = CircuitJson {
            modulus: self.field.modulus().to_string(),
            wires: self
                .wires
                .iter()
                .map(|w| match w {
                    Wire::One => WireJson::One,
                    Wire::Input(n) => WireJson::Input { name: n.clone() },
                    Wire::Const(c) => WireJson::Const { value: c.to_string() },
                    Wire::Gate(d) => WireJson::Gate { d: *d },
                    Wire::Inverse(of) => WireJson::Inverse { of: *of },
                })
                .collect(),
            gates: self
                .gates
                .iter()
                .map(|g| GateJson { op: g.op, l: g.left, r: g.right, o: g.out, d: g.index })
                .collect(),
            outputs: self
                .outputs
                .iter()
                .map(|o| OutputJson {
                    wire: o.wire,
                    rel: match o.relation {
                        Relation::EqualZero => "eq0".into(),
                        Relation::NotEqualZero => "neq0".into(),
                    },
                    inverse: o.inverse,
                })
                .collect(),
            names: self.names.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("circuit serializes")
    }

    /// Parses circuit JSON; the file's modulus must match `field`.
    pub fn from_json(field: &Field, json: &str) -> Result<Circuit, CircuitError> {
        let doc: CircuitJson = serde_json::from_str(json).map_err(|e| CircuitError::Malformed(e.to_string()))?;
        if doc.modulus != field.modulus().to_string() {
            return Err(CircuitError::Malformed(format!(
                "circuit was compiled for modulus {}, but the field is {}",
                doc.modulus,
                field.modulus()
            )));
        }
        let wires = doc
            .wires
            .into_iter()
            .map(|w| {
                Ok(match w {
                    WireJson::One => Wire::One,
                    WireJson::Input { name } => Wire::Input(name),
                    WireJson::Const { value } => Wire::Const(field.parse(&value)?),
                    WireJson::Gate { d } => Wire::Gate(d),
                    WireJson::Inverse { of } => Wire::Inverse(of),
                })
            })
            .collect::<Result<Vec<_>, CircuitError>>()?;
        let outputs = doc
            .outputs
            .into_iter()
            .map(|o| {
                let relation = match o.rel.as_str() {
                    "eq0" => Relation::EqualZero,
                    "neq0" => Relation::NotEqualZero,
                    other => return Err(CircuitError::Malformed(format!("unknown relation `{other}`"))),
                };
                Ok(Output { wire: o.wire, relation, inverse: o.inverse })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let circuit = Circuit {
            field: *field,
            wires,
            gates: doc
                .gates
                .into_iter()
                .map(|g| Gate { op: g.op, left: g.l, right: g.r, out: g.o, index: g.d })
                .collect(),
            outputs,
            names: doc.names,
        };
        circuit.validate()?;
        Ok(circuit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::frontend::parse_program;

    fn compile(src: &str, field: &Field) -> Circuit {
        flatten(&parse_program(src).unwrap(), field)
    }

    fn inputs(field: &Field, pairs: &[(&str, i64)]) -> BTreeMap<String, Fe> {
        pairs.iter().map(|&(n, v)| (n.to_string(), field.from_i64(v))).collect()
    }

    #[test]
    fn single_gate() {
        let f = Field::goldilocks();
        let c = compile("inputs x,y; out := x*y; assert out == 0;", &f);
        assert_eq!(c.n_gates(), 1);
        assert_eq!(c.gates()[0].op, Op::Times);
        let t = c.solve(&inputs(&f, &[("x", 2), ("y", 3)])).unwrap();
        assert_eq!(t.get(c.wire("out").unwrap()), Some(f.elem(6)));
        assert!(!c.check_solution(&t).unwrap());
        let t = c.solve(&inputs(&f, &[("x", 0), ("y", 3)])).unwrap();
        assert!(c.check_solution(&t).unwrap());
    }

    #[test]
    fn square_plus_constant() {
        let f = Field::goldilocks();
        let c = compile("inputs x; out := x*x + 3; assert out == 0;", &f);
        let x = c.wire("x").unwrap();
        assert_eq!(c.n_gates(), 2);
        let [g1, g2] = [c.gates()[0], c.gates()[1]];
        assert_eq!((g1.op, g1.left, g1.right), (Op::Times, x, x));
        assert_eq!((g2.op, g2.left), (Op::Plus, g1.out));
        assert_eq!(c.wires()[g2.right], Wire::Const(f.elem(3)));
    }

    #[test]
    fn negation_uses_minus_one() {
        let f = Field::new(101).unwrap();
        let c = compile("inputs a, b; d := a - b; e := 2 - b; assert d == 0; assert e != 0;", &f);
        let g = c.gates()[0];
        assert_eq!(c.wires()[g.left], Wire::Const(f.elem(100)));
        assert_eq!(g.right, c.wire("b").unwrap());
        let consts = c.wires().iter().filter(|w| matches!(w, Wire::Const(_))).count();
        // 100 is shared between both negations; 2 has its own wire
        assert_eq!(consts, 2);
        assert_eq!(c.outputs()[1].inverse, Some(c.wires().len() - 1));
    }

    #[test]
    fn constant_definitions_get_a_gate() {
        let f = Field::new(101).unwrap();
        let c = compile("inputs x; k := 5; o := 1; y := x; assert k != 0; assert o != 0; assert y == 0;", &f);
        assert_eq!(c.n_gates(), 2);
        assert_eq!(c.wire("y"), c.wire("x"));
        c.validate().unwrap();
        let t = c.solve(&inputs(&f, &[("x", 0)])).unwrap();
        assert!(c.check_solution(&t).unwrap());
    }

    #[test]
    fn coloring_solution_and_tampering() {
        let f = Field::goldilocks();
        let c = compile(corpus::COLORING5, &f);
        let t = c.solve(&inputs(&f, &[("c1", 3), ("c2", 1), ("c3", 2), ("c4", 1), ("c5", 2)])).unwrap();
        assert_eq!(t.get(c.wire("f1").unwrap()), Some(f.from_i64(-4)));
        assert_eq!(t.get(c.wire("f2").unwrap()), Some(f.zero()));
        assert!(c.check_solution(&t).unwrap());

        let mut forced = t.clone();
        let f1 = c.wire("f1").unwrap();
        forced.set(f1, f.zero());
        assert!(!c.check_solution(&forced).unwrap());

        let mut off = t.clone();
        let mid = c.gates()[10].out;
        off.set(mid, t.get(mid).unwrap() + f.one());
        assert!(!c.check_solution(&off).unwrap());

        let mut partial = t;
        partial.clear(mid);
        assert_eq!(c.check_solution(&partial), Err(CircuitError::IncompleteAssignment(mid)));
    }

    #[test]
    fn solve_reports_input_errors() {
        let f = Field::goldilocks();
        let c = compile(corpus::PRODUCT, &f);
        assert_eq!(c.solve(&inputs(&f, &[("x", 1)])), Err(CircuitError::MissingInput("y".into())));
        assert_eq!(
            c.solve(&inputs(&f, &[("x", 1), ("y", 1), ("q", 1)])),
            Err(CircuitError::UnexpectedInput("q".into()))
        );
    }

    #[test]
    fn labels() {
        let f = Field::goldilocks();
        let c = compile(corpus::COLORING5, &f);
        assert_eq!(c.label(ONE), "one");
        assert_eq!(c.label(1), "c1");
        assert_eq!(c.label(c.wire("f1").unwrap()), "f1");
        let inv = c.outputs()[0].inverse.unwrap();
        assert_eq!(c.label(inv), "_inv_f1");
    }

    #[test]
    fn json_round_trip_and_validation() {
        let f = Field::goldilocks();
        let c = compile(corpus::COLORING5, &f);
        let json = c.to_json();
        assert_eq!(Circuit::from_json(&f, &json).unwrap(), c);
        assert!(json.contains("\"rel\": \"neq0\""));
        let other = Field::new(101).unwrap();
        assert!(matches!(Circuit::from_json(&other, &json), Err(CircuitError::Malformed(_))));

        let broken = json.replacen("\"l\": 1,", "\"l\": 999,", 1);
        assert!(matches!(Circuit::from_json(&f, &broken), Err(CircuitError::Malformed(_))));
    }
}

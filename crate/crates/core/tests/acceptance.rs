//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use snarkpipe_core::circuit::{flatten, Assignment, Circuit, Op};
use snarkpipe_core::frontend::parse_program;
use snarkpipe_core::group::{Group, TransparentGroup};
use snarkpipe_core::interactive::{acceptance_count, load_problem, run_session, Prover};
use snarkpipe_core::pinocchio::{self, ProtocolError, WitnessKey};
use snarkpipe_core::qap::{soundness_scan, Qap, ScanPoints};
use snarkpipe_core::{corpus, Field, Polynomial};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn compile(src: &str, field: &Field) -> Circuit {
    flatten(&parse_program(src).expect("corpus parses"), field)
}

fn end_to_end() -> Outcome {
    let start = Instant::now();
    let field = Field::goldilocks();
    let circuit = compile(corpus::COLORING5, &field);
    let qap = Qap::build(&circuit).map_err(|e| e.to_string())?;
    let group = TransparentGroup::new(field);
    let (ek, vk) = pinocchio::setup(&group, &qap, &[], b"acceptance").map_err(|e| e.to_string())?;
    let good = circuit.solve(&inputs(&field, &[3, 1, 2, 1, 2])).unwrap();
    let wk = pinocchio::prove(&group, &ek, &qap, &good).map_err(|e| e.to_string())?;
    let report = pinocchio::verify(&group, &vk, &wk, &BTreeMap::new()).map_err(|e| e.to_string())?;
    ensure(report.divisibility && report.span() && report.consistency, report.to_string())?;
    let bad = circuit.solve(&inputs(&field, &[1, 1, 2, 1, 2])).unwrap();
    let refused = pinocchio::prove(&group, &ek, &qap, &bad);
    ensure(refused == Err(ProtocolError::InvalidWitness), format!("(1,1,2,1,2) gave {refused:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), format!("took {elapsed:?}"))?;
    Ok(format!("{report}; (1,1,2,1,2) refused; {elapsed:.2?}"))
}

fn qap_equivalence() -> Outcome {
    let field = Field::goldilocks();
    let circuit = compile(corpus::COLORING5, &field);
    let qap = Qap::build(&circuit).map_err(|e| e.to_string())?;
    let mut rng = ChaCha20Rng::seed_from_u64(2);
    let mut vectors: Vec<Vec<u64>> = (0..243).map(|c| coloring(c).to_vec()).collect();
    vectors.extend((0..100).map(|_| (0..5).map(|_| field.random(&mut rng).value()).collect()));
    let (mut mismatches, mut accepted) = (0, 0);
    for v in &vectors {
        let t = circuit.solve(&inputs(&field, v)).unwrap();
        let a = qap.assemble(&t).map_err(|e| e.to_string())?;
        let checked = circuit.check_solution(&t).unwrap();
        if a.divisible() != checked {
            mismatches += 1;
        }
        if a.divisible() {
            accepted += 1;
            ensure(&a.quotient * qap.target() == a.f, "F != H*T")?;
        }
    }
    ensure(mismatches == 0, format!("{mismatches} mismatches"))?;
    Ok(format!("{} vectors, {accepted} divisible, 0 mismatches", vectors.len()))
}

/// Scans gate rows of `circuit`'s QAP against the gate list.
fn structural_violations(circuit: &Circuit) -> Result<(usize, usize), String> {
    let qap = Qap::build(circuit).map_err(|e| e.to_string())?;
    let mut symbol_of = vec![0usize; circuit.wires().len()];
    for (i, s) in qap.symbols().iter().enumerate() {
        symbol_of[s.wire] = i;
    }
    // constants are multiples of the one symbol (index 0)
    let sym = |w: usize| if qap.symbols().iter().any(|s| s.wire == w) { symbol_of[w] } else { 0 };
    let field = qap.field();
    let mut violations = 0;
    let mut checked = 0;
    for gate in circuit.gates() {
        let d = field.elem(gate.index as u64);
        let (v_side, w_side) = match gate.op {
            Op::Times => (vec![sym(gate.left)], vec![sym(gate.right)]),
            Op::Plus => (vec![sym(gate.left), sym(gate.right)], vec![0]),
        };
        for i in 0..qap.symbols().len() {
            checked += 1;
            let k = qap.k()[i].eval(d);
            let is_out = i == sym(gate.out);
            if (k.is_one() != is_out) || (!is_out && !k.is_zero()) {
                violations += 1;
            }
            let feeds = v_side.contains(&i) || w_side.contains(&i);
            let nonzero = !qap.v()[i].eval(d).is_zero() || !qap.w()[i].eval(d).is_zero();
            if feeds != nonzero {
                violations += 1;
            }
        }
    }
    let t = qap.target();
    for d in 1..=qap.n_rows() as u64 {
        violations += !t.eval(field.elem(d)).is_zero() as usize;
    }
    if t.degree() != Some(qap.n_rows()) || !t.leading().is_some_and(|c| c.is_one()) {
        violations += 1;
    }
    Ok((violations, checked))
}

fn structure() -> Outcome {
    let field = Field::goldilocks();
    let mut total = 0;
    for (name, src) in corpus::PROGRAMS {
        let (violations, checked) = structural_violations(&compile(src, &field))?;
        ensure(violations == 0, format!("{name}: {violations} violations"))?;
        total += checked;
    }
    Ok(format!("{total} (gate, symbol) pairs over {} programs, 0 violations", corpus::PROGRAMS.len()))
}

fn soundness_bound() -> Outcome {
    let field = Field::new(101).map_err(|e| e.to_string())?;
    let circuit = compile(corpus::TRIANGLE3, &field);
    let qap = Qap::build(&circuit).map_err(|e| e.to_string())?;
    let n = qap.n_gates();
    ensure(2 * n < 101, format!("2N = {} is not below 101", 2 * n))?;
    let mut worst = 0;
    let mut forged = 0;
    for c in 0..64u64 {
        let colors = [c % 4 + 1, c / 4 % 4 + 1, c / 16 % 4 + 1];
        let t = circuit.solve(&inputs(&field, &colors)).unwrap();
        if circuit.check_solution(&t).unwrap() {
            continue;
        }
        forged += 1;
        let scan = soundness_scan(&qap, &t, ScanPoints::Exhaustive).map_err(|e| e.to_string())?;
        ensure(scan.trials == 101, "scan did not cover the field")?;
        ensure(scan.hits <= 2 * n as u64, format!("{colors:?}: {} hits > 2N = {}", scan.hits, 2 * n))?;
        worst = worst.max(scan.hits);
    }
    Ok(format!("p=101, N={n}: {forged} invalid solutions, max hits {worst} <= 2N = {}", 2 * n))
}

fn tamper() -> Outcome {
    let field = Field::goldilocks();
    let circuit = compile(corpus::COLORING5, &field);
    let qap = Qap::build(&circuit).map_err(|e| e.to_string())?;
    let group = TransparentGroup::new(field);
    let (ek, vk) = pinocchio::setup(&group, &qap, &[], b"tamper").map_err(|e| e.to_string())?;
    let t = circuit.solve(&inputs(&field, &[3, 1, 2, 1, 2])).unwrap();
    let wk = pinocchio::prove(&group, &ek, &qap, &t).map_err(|e| e.to_string())?;
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    let mut rejected = 0;
    for pos in 0..WitnessKey::<()>::LEN {
        for _ in 0..20 {
            let mut e = wk.elements();
            while e[pos] == wk.elements()[pos] {
                e[pos] = group.random_element(&mut rng);
            }
            let report = pinocchio::verify(&group, &vk, &WitnessKey::from_elements(e), &BTreeMap::new()).unwrap();
            rejected += !report.accepted() as usize;
        }
    }
    ensure(rejected == 160, format!("{rejected}/160 rejected"))?;
    Ok("160/160 tampered witness keys rejected".into())
}

fn interactive_decay() -> Outcome {
    let sessions = 10_000u64;
    let (path, _) = load_problem(corpus::PATH4).map_err(|e| e.to_string())?;
    let one = acceptance_count(&path, Prover::Cheating, 1, b"decay-1", sessions).map_err(|e| e.to_string())?;
    let rate = one as f64 / sessions as f64;
    ensure((rate - 0.5).abs() <= 0.02, format!("1 round: rate {rate}"))?;
    let mut parts = vec![format!("k=1 {rate:.4}")];
    for k in [5u32, 10] {
        let hits = acceptance_count(&path, Prover::Cheating, k as usize, format!("decay-{k}").as_bytes(), sessions)
            .map_err(|e| e.to_string())?;
        let p = 0.5f64.powi(k as i32);
        let mean = sessions as f64 * p;
        let sigma = (sessions as f64 * p * (1.0 - p)).sqrt();
        let z = (hits as f64 - mean) / sigma;
        ensure(z.abs() <= 3.0, format!("k={k}: {hits} accepted, expected {mean:.1} +- 3*{sigma:.2}"))?;
        parts.push(format!("k={k} {hits} (z={z:+.2})"));
    }
    let (k3, solution) = load_problem(corpus::K3).map_err(|e| e.to_string())?;
    let solution = solution.unwrap();
    let honest =
        acceptance_count(&k3, Prover::Honest(&solution), 10, b"honest", sessions).map_err(|e| e.to_string())?;
    ensure(honest == sessions, format!("honest {honest}/{sessions}"))?;
    parts.push(format!("honest {honest}/{sessions}"));
    Ok(parts.join(", "))
}

fn random_poly(field: &Field, rng: &mut ChaCha20Rng, max_degree: usize) -> Polynomial {
    let d = rng.gen_range(0..=max_degree);
    Polynomial::new((0..=d).map(|_| field.random(rng)).collect())
}

fn kernel_properties() -> Outcome {
    let start = Instant::now();
    let field = Field::goldilocks();
    let p = field.modulus();
    let group = TransparentGroup::new(field);
    let g = group.generator();
    let base = group.pairing(g, g).unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(7);
    let per_kind = 25_000;
    let mut failures = 0usize;
    for _ in 0..per_kind {
        let a = field.random_nonzero(&mut rng);
        let inv = a.inverse().unwrap();
        failures += (mul_mod(a.value(), inv.value(), p) != 1 || inv.value() != pow_mod(a.value(), p - 2, p)) as usize;
    }
    for _ in 0..per_kind {
        let f = random_poly(&field, &mut rng, 32);
        let d = random_poly(&field, &mut rng, 32);
        if d.is_zero() {
            continue;
        }
        let (q, r) = f.div_rem(&d).unwrap();
        let small = r.is_zero() || r.degree() < d.degree();
        failures += (&(&q * &d) + &r != f || !small) as usize;
    }
    for i in 0..per_kind {
        // mostly small sets, with a large one every 500 checks
        let n = if i % 500 == 0 { 128 } else { rng.gen_range(1..=12) };
        let mut xs: Vec<u64> = Vec::with_capacity(n);
        while xs.len() < n {
            let x = field.random(&mut rng).value();
            if !xs.contains(&x) {
                xs.push(x);
            }
        }
        let pts: Vec<_> = xs.iter().map(|&x| (field.elem(x), field.random(&mut rng))).collect();
        let poly = Polynomial::interpolate(&pts).unwrap();
        let ok = pts.iter().all(|&(x, y)| poly.eval(x) == y) && poly.degree().is_none_or(|d| d < n);
        failures += !ok as usize;
    }
    for _ in 0..per_kind {
        let (a, b) = (field.random(&mut rng), field.random(&mut rng));
        let lhs = group.pairing(group.exp(g, a), group.exp(g, b)).unwrap();
        let ok = lhs == group.target_exp(base, a * b) && lhs.discrete_log().value() == mul_mod(a.value(), b.value(), p);
        failures += !ok as usize;
    }
    let elapsed = start.elapsed();
    ensure(failures == 0, format!("{failures} failures"))?;
    ensure(elapsed < Duration::from_secs(10), format!("took {elapsed:?}"))?;
    Ok(format!("{} checks, 0 failures, {elapsed:.2?}", 4 * per_kind))
}

/// Every artifact of one full run, as bytes written to and read back from disk.
fn artifacts(seed: &[u8]) -> Vec<(String, Vec<u8>)> {
    let dir = tempfile::tempdir().unwrap();
    let field = Field::goldilocks();
    let circuit = compile(corpus::COLORING5, &field);
    let qap = Qap::build(&circuit).unwrap();
    let group = TransparentGroup::new(field);
    let (ek, vk) = pinocchio::setup(&group, &qap, &[], seed).unwrap();
    let t: Assignment = circuit.solve(&inputs(&field, &[3, 1, 2, 1, 2])).unwrap();
    let wk = pinocchio::prove(&group, &ek, &qap, &t).unwrap();
    let (k3, solution) = load_problem(corpus::K3).unwrap();
    let transcript = run_session(&k3, Prover::Honest(&solution.unwrap()), 10, seed).unwrap();
    let files = [
        ("circuit.json", circuit.to_json()),
        ("qap.json", qap.to_json()),
        ("evaluation_key.json", ek.to_json(&group)),
        ("verification_key.json", vk.to_json(&group)),
        ("witness_key.json", wk.to_json(&group)),
        ("transcript.json", transcript.to_json()),
    ];
    files
        .into_iter()
        .map(|(name, body)| {
            let path = dir.path().join(name);
            std::fs::write(&path, body).unwrap();
            (name.to_string(), std::fs::read(&path).unwrap())
        })
        .collect()
}

fn determinism() -> Outcome {
    let (a, b) = (artifacts(b"\x01\x02"), artifacts(b"\x01\x02"));
    for ((name, x), (_, y)) in a.iter().zip(&b) {
        ensure(x == y, format!("{name} differs between runs"))?;
    }
    let c = artifacts(b"\x01\x03");
    ensure(a[2].1 != c[2].1, "a different seed gave the same evaluation key")?;
    Ok(format!("{} files byte-identical across runs", a.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("end-to-end pipeline on coloring5", end_to_end),
        ("QAP divisibility matches circuit check", qap_equivalence),
        ("QAP structural properties", structure),
        ("soundness bound over p=101", soundness_bound),
        ("witness tamper soundness", tamper),
        ("interactive soundness decay", interactive_decay),
        ("field and polynomial kernel", kernel_properties),
        ("determinism", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

//! `snarkpipe selftest`: the bundled coloring pipeline plus a quick pass over
//! the kernel and protocol invariants.

use std::collections::BTreeMap;
use std::process::ExitCode;

use anyhow::Result;
use snarkpipe_core::circuit::flatten;
use snarkpipe_core::frontend::parse_program;
use snarkpipe_core::group::{Group, TransparentGroup};
use snarkpipe_core::interactive::{acceptance_count, load_problem, Prover};
use snarkpipe_core::pinocchio::{self, ProtocolError};
use snarkpipe_core::qap::Qap;
use snarkpipe_core::seed::{seeded_rng, SeededRng};
use snarkpipe_core::{corpus, Field, Polynomial};

const SAMPLES: usize = 500;

type Check = (&'static str, fn() -> Result<bool>);

pub fn run() -> Result<ExitCode> {
    let checks: [Check; 6] = [
        ("coloring5 pipeline", pipeline),
        ("coloring5 QAP matches circuit on 243 colorings", qap_equivalence),
        ("field inverse and polynomial division", kernel),
        ("interpolation round trip", interpolation),
        ("pairing bilinearity", bilinearity),
        ("interactive completeness and soundness", interactive),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let ok = check().unwrap_or_else(|e| {
            eprintln!("  {name}: {e:#}");
            false
        });
        println!("{} {name}", if ok { "ok  " } else { "FAIL" });
        failed += !ok as usize;
    }
    if failed == 0 {
        println!("selftest passed");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("selftest: {failed} check(s) failed");
        Ok(ExitCode::FAILURE)
    }
}

fn colors(field: &Field, c: [u64; 5]) -> BTreeMap<String, snarkpipe_core::Fe> {
    (0..5).map(|i| (format!("c{}", i + 1), field.elem(c[i]))).collect()
}

fn pipeline() -> Result<bool> {
    let field = Field::goldilocks();
    let circuit = flatten(&parse_program(corpus::COLORING5)?, &field);
    let qap = Qap::build(&circuit)?;
    let group = TransparentGroup::new(field);
    let (ek, vk) = pinocchio::setup(&group, &qap, &[], b"selftest")?;
    let good = circuit.solve(&colors(&field, [3, 1, 2, 1, 2]))?;
    let wk = pinocchio::prove(&group, &ek, &qap, &good)?;
    let accepted = pinocchio::verify(&group, &vk, &wk, &BTreeMap::new())?.accepted();
    let bad = circuit.solve(&colors(&field, [1, 1, 2, 1, 2]))?;
    let refused = pinocchio::prove(&group, &ek, &qap, &bad) == Err(ProtocolError::InvalidWitness);
    Ok(accepted && refused)
}

fn qap_equivalence() -> Result<bool> {
    let field = Field::goldilocks();
    let circuit = flatten(&parse_program(corpus::COLORING5)?, &field);
    let qap = Qap::build(&circuit)?;
    for code in 0..243u64 {
        let c: [u64; 5] = std::array::from_fn(|i| code / 3u64.pow(i as u32) % 3 + 1);
        let t = circuit.solve(&colors(&field, c))?;
        if qap.assemble(&t)?.divisible() != circuit.check_solution(&t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn random_poly(field: &Field, rng: &mut SeededRng) -> Polynomial {
    let degree = field.random(rng).value() % 9;
    Polynomial::new((0..=degree).map(|_| field.random(rng)).collect())
}

fn kernel() -> Result<bool> {
    let field = Field::goldilocks();
    let mut rng = seeded_rng(b"kernel");
    for _ in 0..SAMPLES {
        let a = field.random_nonzero(&mut rng);
        if a * a.inverse()? != field.one() {
            return Ok(false);
        }
        let (f, g) = (random_poly(&field, &mut rng), random_poly(&field, &mut rng));
        if g.is_zero() {
            continue;
        }
        let (q, r) = f.div_rem(&g)?;
        let smaller = r.degree().zip(g.degree()).is_none_or(|(dr, dg)| dr < dg);
        if &(&q * &g) + &r != f || !smaller {
            return Ok(false);
        }
    }
    Ok(true)
}

fn interpolation() -> Result<bool> {
    let field = Field::goldilocks();
    let mut rng = seeded_rng(b"interpolation");
    for n in 1..=SAMPLES / 20 {
        let points: Vec<_> = (1..=n as u64).map(|x| (field.elem(x), field.random(&mut rng))).collect();
        let p = Polynomial::interpolate(&points)?;
        if points.iter().any(|&(x, y)| p.eval(x) != y) || p.degree().unwrap_or(0) >= n {
            return Ok(false);
        }
    }
    Ok(true)
}

fn bilinearity() -> Result<bool> {
    let field = Field::goldilocks();
    let group = TransparentGroup::new(field);
    let mut rng = seeded_rng(b"pairing");
    let g = group.generator();
    let base = group.pairing(g, g)?;
    for _ in 0..SAMPLES {
        let (a, b) = (field.random(&mut rng), field.random(&mut rng));
        if group.pairing(group.exp(g, a), group.exp(g, b))? != group.target_exp(base, a * b) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn interactive() -> Result<bool> {
    for src in [corpus::K3, corpus::PRISM6, corpus::SAT3] {
        let (problem, solution) = load_problem(src)?;
        let solution = solution.expect("bundled problems carry solutions");
        if acceptance_count(&problem, Prover::Honest(&solution), 10, b"honest", 20)? != 20 {
            return Ok(false);
        }
    }
    let (path, _) = load_problem(corpus::PATH4)?;
    let n = 2000;
    let rate = acceptance_count(&path, Prover::Cheating, 1, b"cheat", n)? as f64 / n as f64;
    let ten = acceptance_count(&path, Prover::Cheating, 10, b"cheat", 200)?;
    Ok((rate - 0.5).abs() < 0.05 && ten <= 5)
}

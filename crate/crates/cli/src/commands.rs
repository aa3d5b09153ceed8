use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use snarkpipe_core::circuit::{flatten, Assignment, Circuit, Wire};
use snarkpipe_core::frontend::parse_program;
use snarkpipe_core::group::{Group, ModularGroup, TransparentGroup};
use snarkpipe_core::interactive::{acceptance_count, load_problem, run_session, InteractiveError, Prover};
use snarkpipe_core::pinocchio::{self, EvaluationKey, ProtocolError, VerificationKey, WitnessKey};
use snarkpipe_core::qap::Qap;
use snarkpipe_core::{Fe, Field};

use crate::{Backend, Global};

pub const REJECT: u8 = 2;
pub const INVALID_WITNESS: u8 = 3;

/// Exit status for an error: 3 for a witness that does not satisfy the
/// circuit, 1 for everything else.
pub fn exit_code_for(e: &anyhow::Error) -> ExitCode {
    match e.downcast_ref::<ProtocolError>() {
        Some(ProtocolError::InvalidWitness) => ExitCode::from(INVALID_WITNESS),
        _ => ExitCode::FAILURE,
    }
}

fn field(g: &Global) -> Result<Field> {
    match &g.field {
        None => Ok(Field::goldilocks()),
        Some(s) => {
            let p: u64 = s.trim().parse().with_context(|| format!("--field `{s}` is not a 64-bit decimal"))?;
            Field::new(p).with_context(|| format!("--field {p}"))
        }
    }
}

fn seed(g: &Global) -> Result<Vec<u8>> {
    hex::decode(&g.seed).with_context(|| format!("--seed `{}` is not hex", g.seed))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// A JSON object of `name -> value`, where values are decimal strings or
/// non-negative integers below the modulus.
fn read_values(field: &Field, path: &Path) -> Result<BTreeMap<String, Fe>> {
    let map: BTreeMap<String, serde_json::Value> =
        serde_json::from_str(&read(path)?).with_context(|| format!("{} is not a JSON object", path.display()))?;
    map.into_iter()
        .map(|(name, v)| {
            let text = match &v {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) if n.is_u64() => n.to_string(),
                _ => bail!("value for `{name}` must be a decimal string"),
            };
            let fe = field.parse(&text).with_context(|| format!("value for `{name}`"))?;
            Ok((name, fe))
        })
        .collect()
}

fn load_circuit(field: &Field, path: &Path) -> Result<Circuit> {
    Circuit::from_json(field, &read(path)?).with_context(|| format!("loading {}", path.display()))
}

pub fn compile(g: &Global, source: &Path, out: &Path, emit_qap: Option<&Path>) -> Result<ExitCode> {
    let field = field(g)?;
    let program = parse_program(&read(source)?).map_err(|e| anyhow!("{}:{e}", source.display()))?;
    for w in program.constant_warnings(&field) {
        eprintln!("{w}");
    }
    let circuit = flatten(&program, &field);
    write(out, &with_newline(circuit.to_json()))?;
    let symbols = circuit.wires().iter().filter(|w| !matches!(w, Wire::Const(_))).count();
    println!("gates (N): {}", circuit.n_gates());
    println!("symbols: {symbols}");
    println!("outputs: {}", circuit.outputs().len());
    if let Some(path) = emit_qap {
        let qap = Qap::build(&circuit)?;
        write(path, &with_newline(qap.to_json()))?;
        println!("constraint rows: {}", qap.n_rows());
    }
    Ok(ExitCode::SUCCESS)
}

/// Runs `$body` with `$group` bound to the selected backend.
macro_rules! with_backend {
    ($g:expr, $field:expr, |$group:ident| $body:expr) => {
        match $g.backend {
            Backend::Transparent => {
                let $group = TransparentGroup::new($field);
                $body
            }
            Backend::Modular => {
                let $group = ModularGroup::new($field);
                $body
            }
        }
    };
}

pub fn setup(g: &Global, circuit: &Path, public: &[String], ek_path: &Path, vk_path: &Path) -> Result<ExitCode> {
    let field = field(g)?;
    let qap = Qap::build(&load_circuit(&field, circuit)?)?;
    let seed = seed(g)?;
    with_backend!(g, field, |group| {
        let (ek, vk) = pinocchio::setup(&group, &qap, public, &seed)?;
        write(ek_path, &ek.to_json(&group))?;
        write(vk_path, &vk.to_json(&group))?;
    });
    println!("wrote {} and {}", ek_path.display(), vk_path.display());
    Ok(ExitCode::SUCCESS)
}

fn prove_with<G: Group>(group: &G, qap: &Qap, ek: &str, t: &Assignment) -> Result<String> {
    let ek = EvaluationKey::from_json(group, ek)?;
    let wk = pinocchio::prove(group, &ek, qap, t)?;
    Ok(wk.to_json(group))
}

pub fn prove(g: &Global, circuit: &Path, inputs: &Path, ek: &Path, out: &Path) -> Result<ExitCode> {
    let field = field(g)?;
    let circuit = load_circuit(&field, circuit)?;
    let qap = Qap::build(&circuit)?;
    let t = circuit.solve(&read_values(&field, inputs)?)?;
    let ek = read(ek)?;
    let json = with_backend!(g, field, |group| prove_with(&group, &qap, &ek, &t)?);
    write(out, &json)?;
    println!("wrote {}", out.display());
    Ok(ExitCode::SUCCESS)
}

fn verify_with<G: Group>(group: &G, vk: &str, wk: &str, public: &BTreeMap<String, Fe>) -> Result<bool> {
    let vk = VerificationKey::from_json(group, vk)?;
    // a proof that does not even decode is rejected, not an input error
    let wk = match WitnessKey::from_json(group, wk) {
        Ok(wk) => wk,
        Err(e) => {
            println!("checks: unreadable witness key ({e})");
            return Ok(false);
        }
    };
    let report = pinocchio::verify(group, &vk, &wk, public)?;
    println!("{report}");
    Ok(report.accepted())
}

pub fn verify(g: &Global, vk: &Path, proof: &Path, public_inputs: Option<&Path>) -> Result<ExitCode> {
    let field = field(g)?;
    let public = match public_inputs {
        Some(p) => read_values(&field, p)?,
        None => BTreeMap::new(),
    };
    let (vk, wk) = (read(vk)?, read(proof)?);
    let accepted = with_backend!(g, field, |group| verify_with(&group, &vk, &wk, &public)?);
    if accepted {
        println!("accept");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("reject");
        Ok(ExitCode::from(REJECT))
    }
}

pub fn interactive(
    g: &Global,
    problem: &Path,
    rounds: usize,
    cheat: bool,
    repeat: Option<u64>,
    out: &Path,
) -> Result<ExitCode> {
    let (problem, solution) =
        load_problem(&read(problem)?).with_context(|| format!("loading {}", problem.display()))?;
    let seed = seed(g)?;
    let prover = match (&solution, cheat) {
        (_, true) => Prover::Cheating,
        (Some(s), false) => Prover::Honest(s),
        (None, false) => return Err(InteractiveError::MissingSolution).context("use --cheat to run without one"),
    };
    let session = run_session(&problem, prover, rounds, &seed)?;
    write(out, &session.to_json())?;
    if let Some(n) = repeat {
        let accepted = acceptance_count(&problem, prover, rounds, &seed, n)?;
        println!(
            "accepted {accepted}/{n} sessions (rate {:.4}, 2^-rounds = {:.4})",
            accepted as f64 / n as f64,
            0.5f64.powi(rounds as i32)
        );
        return Ok(ExitCode::SUCCESS);
    }
    let passed = session.transcript.iter().filter(|r| r.verdict).count();
    println!("rounds passed: {passed}/{rounds}");
    if session.accepted {
        println!("accept");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("reject");
        Ok(ExitCode::from(REJECT))
    }
}

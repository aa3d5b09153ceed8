//! Witness-key generation. Everything here is computed from the published
//! evaluation key, the QAP and the solution; this module has no access to
//! the setup randomness.

use super::{EvaluationKey, ProtocolError, WitnessKey};
use crate::circuit::Assignment;
use crate::field::Fe;
use crate::group::Group;
use crate::qap::Qap;

fn check_shape<E>(ek: &EvaluationKey<E>, qap: &Qap) -> Result<(), ProtocolError> {
    let n = qap.symbols().len();
    let names_match = ek.symbols.len() == n && ek.symbols.iter().zip(qap.symbols()).all(|(a, b)| *a == b.name);
    if !names_match {
        return Err(ProtocolError::MalformedKey("evaluation key was generated for a different QAP".into()));
    }
    let lists = [&ek.v, &ek.w, &ek.k, &ek.v_alpha, &ek.w_alpha, &ek.k_alpha, &ek.beta];
    if lists.iter().any(|l| l.len() != n) {
        return Err(ProtocolError::MalformedKey(format!("per-symbol lists must have {n} entries")));
    }
    if ek.powers_of_s.len() != qap.n_rows() + 1 {
        return Err(ProtocolError::MalformedKey(format!(
            "expected {} powers of s, found {}",
            qap.n_rows() + 1,
            ek.powers_of_s.len()
        )));
    }
    if ek.public.first() != Some(&0) || ek.public.iter().any(|&i| i >= n) {
        return Err(ProtocolError::MalformedKey("bad public symbol list".into()));
    }
    Ok(())
}

/// Computes the witness key for a satisfying assignment.
pub fn prove<G: Group>(
    group: &G,
    ek: &EvaluationKey<G::Element>,
    qap: &Qap,
    t: &Assignment,
) -> Result<WitnessKey<G::Element>, ProtocolError> {
    check_shape(ek, qap)?;
    let assembled = qap.assemble(t)?;
    let h = assembled.h().ok_or(ProtocolError::InvalidWitness)?;

    // public symbols are folded in by the verifier; the prover zeroes them
    let mut private = qap.symbol_values(t)?;
    for &i in &ek.public {
        private[i] = qap.field().zero();
    }
    let combine = |bases: &[G::Element]| group.multi_exp(bases, &private);

    let h_coeffs: &[Fe] = h.coeffs();
    Ok(WitnessKey {
        v: combine(&ek.v),
        w: combine(&ek.w),
        k: combine(&ek.k),
        h: group.multi_exp(&ek.powers_of_s[..h_coeffs.len()], h_coeffs),
        v_alpha: combine(&ek.v_alpha),
        w_alpha: combine(&ek.w_alpha),
        k_alpha: combine(&ek.k_alpha),
        z: combine(&ek.beta),
    })
}

use std::collections::BTreeMap;
use std::fmt;

use super::{ProtocolError, VerificationKey, WitnessKey};
use crate::field::Fe;
use crate::group::Group;

/// Outcome of each pairing check. The proof is accepted only if all pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyReport {
    /// `e(V, W) = e(g_k^T, H) e(K, g)` with public values folded into V, W, K.
    pub divisibility: bool,
    /// `e(V_alpha, g) = e(V, g^alpha_v)`
    pub span_v: bool,
    pub span_w: bool,
    pub span_k: bool,
    /// `e(Z, g^gamma) = e(V W K, g^(beta gamma))`
    pub consistency: bool,
}

impl VerifyReport {
    pub fn span(&self) -> bool {
        self.span_v && self.span_w && self.span_k
    }

    pub fn accepted(&self) -> bool {
        self.divisibility && self.span() && self.consistency
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |ok: bool| if ok { "pass" } else { "FAIL" };
        write!(f, "checks: div={} span={} coeff={}", word(self.divisibility), word(self.span()), word(self.consistency))
    }
}

/// Verifies a witness key. `public` must give a value for every public symbol
/// other than `one`; extra entries are rejected.
pub fn verify<G: Group>(
    group: &G,
    vk: &VerificationKey<G::Element>,
    wk: &WitnessKey<G::Element>,
    public: &BTreeMap<String, Fe>,
) -> Result<VerifyReport, ProtocolError> {
    if !group.supports_pairing() {
        return Err(ProtocolError::PairingUnsupported(G::NAME));
    }
    for name in public.keys() {
        if !vk.public.iter().any(|e| e.index != 0 && e.name == *name) {
            return Err(ProtocolError::UnknownSymbol(name.clone()));
        }
    }
    let field = group.field();
    let (mut v, mut w, mut k) = (wk.v, wk.w, wk.k);
    for entry in &vk.public {
        let value = if entry.index == 0 {
            field.one()
        } else {
            *public.get(&entry.name).ok_or_else(|| ProtocolError::MissingPublicInput(entry.name.clone()))?
        };
        v = group.op(v, group.exp(entry.v, value));
        w = group.op(w, group.exp(entry.w, value));
        k = group.op(k, group.exp(entry.k, value));
    }

    let e = |a, b| group.pairing(a, b).map_err(|_| ProtocolError::PairingUnsupported(G::NAME));
    let divisibility = e(v, w)? == group.target_op(e(vk.target, wk.h)?, e(k, vk.g)?);
    let span_v = e(wk.v_alpha, vk.g)? == e(wk.v, vk.alpha_v)?;
    let span_w = e(wk.w_alpha, vk.g)? == e(wk.w, vk.alpha_w)?;
    let span_k = e(wk.k_alpha, vk.g)? == e(wk.k, vk.alpha_k)?;
    let vwk = group.op(group.op(wk.v, wk.w), wk.k);
    let consistency = e(wk.z, vk.gamma)? == e(vwk, vk.beta_gamma)?;
    Ok(VerifyReport { divisibility, span_v, span_w, span_k, consistency })
}

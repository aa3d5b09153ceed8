use rand::Rng;

use super::{EvaluationKey, ProtocolError, PublicEntry, VerificationKey};
use crate::field::{Fe, Field};
use crate::group::Group;
use crate::qap::Qap;
use crate::seed::seeded_rng;

pub type KeyPair<E> = (EvaluationKey<E>, VerificationKey<E>);

/// The secret setup randomness. Anyone holding it can forge proofs, so it is
/// never serialized; [`setup`] drops it before returning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Toxic {
    pub r_v: Fe,
    pub r_w: Fe,
    pub s: Fe,
    pub alpha_v: Fe,
    pub alpha_w: Fe,
    pub alpha_k: Fe,
    pub beta: Fe,
    pub gamma: Fe,
}

impl Toxic {
    /// Samples every value uniformly from the nonzero elements, resampling
    /// `s` while it lands on a constraint node `1..=rows`.
    pub fn sample<R: Rng + ?Sized>(field: &Field, rows: usize, rng: &mut R) -> Toxic {
        let mut draw = || field.random_nonzero(rng);
        let r_v = draw();
        let r_w = draw();
        let mut s = draw();
        while s.value() <= rows as u64 {
            s = draw();
        }
        Toxic { r_v, r_w, s, alpha_v: draw(), alpha_w: draw(), alpha_k: draw(), beta: draw(), gamma: draw() }
    }

    /// Regenerates exactly the randomness [`setup`] draws for `seed`.
    pub fn from_seed(field: &Field, rows: usize, seed: &[u8]) -> Toxic {
        Toxic::sample(field, rows, &mut seeded_rng(seed))
    }

    pub fn r_k(&self) -> Fe {
        self.r_v * self.r_w
    }
}

/// Resolves public symbol names to sorted indices, always including `one`.
fn public_indices(qap: &Qap, public: &[String]) -> Result<Vec<usize>, ProtocolError> {
    let mut idx = vec![0];
    for name in public {
        let i = qap.symbol_index(name).ok_or_else(|| ProtocolError::UnknownSymbol(name.clone()))?;
        idx.push(i);
    }
    idx.sort_unstable();
    idx.dedup();
    Ok(idx)
}

/// Key generation from a seed.
pub fn setup<G: Group>(
    group: &G,
    qap: &Qap,
    public: &[String],
    seed: &[u8],
) -> Result<KeyPair<G::Element>, ProtocolError> {
    if !group.supports_pairing() {
        return Err(ProtocolError::PairingUnsupported(G::NAME));
    }
    let toxic = Toxic::from_seed(qap.field(), qap.n_rows(), seed);
    setup_with_toxic(group, qap, public, &toxic)
}

/// Key generation from explicit randomness.
pub fn setup_with_toxic<G: Group>(
    group: &G,
    qap: &Qap,
    public: &[String],
    toxic: &Toxic,
) -> Result<KeyPair<G::Element>, ProtocolError> {
    if !group.supports_pairing() {
        return Err(ProtocolError::PairingUnsupported(G::NAME));
    }
    if qap.n_rows() == 0 {
        return Err(ProtocolError::EmptyQap);
    }
    let public = public_indices(qap, public)?;
    let s = toxic.s;
    let (r_v, r_w, r_k) = (toxic.r_v, toxic.r_w, toxic.r_k());
    let g = |e: Fe| group.exp_gen(e);

    let mut powers_of_s = Vec::with_capacity(qap.n_rows() + 1);
    let mut sd = qap.field().one();
    for _ in 0..=qap.n_rows() {
        powers_of_s.push(g(sd));
        sd *= s;
    }

    let at_s = |polys: &[crate::poly::Polynomial]| polys.iter().map(|p| p.eval(s)).collect::<Vec<_>>();
    let (vs, ws, ks) = (at_s(qap.v()), at_s(qap.w()), at_s(qap.k()));
    let scaled = |vals: &[Fe], r: Fe| vals.iter().map(|&x| g(r * x)).collect::<Vec<_>>();

    let ek = EvaluationKey {
        symbols: qap.symbols().iter().map(|s| s.name.clone()).collect(),
        public: public.clone(),
        powers_of_s,
        v: scaled(&vs, r_v),
        w: scaled(&ws, r_w),
        k: scaled(&ks, r_k),
        v_alpha: scaled(&vs, r_v * toxic.alpha_v),
        w_alpha: scaled(&ws, r_w * toxic.alpha_w),
        k_alpha: scaled(&ks, r_k * toxic.alpha_k),
        beta: (0..vs.len())
            .map(|i| {
                let parts = [g(toxic.beta * r_v * vs[i]), g(toxic.beta * r_w * ws[i]), g(toxic.beta * r_k * ks[i])];
                parts.into_iter().fold(group.identity(), |acc, x| group.op(acc, x))
            })
            .collect(),
    };

    let vk = VerificationKey {
        g: group.generator(),
        alpha_v: g(toxic.alpha_v),
        alpha_w: g(toxic.alpha_w),
        alpha_k: g(toxic.alpha_k),
        gamma: g(toxic.gamma),
        beta_gamma: g(toxic.beta * toxic.gamma),
        target: g(r_k * qap.target().eval(s)),
        public: public
            .iter()
            .map(|&i| PublicEntry { index: i, name: qap.symbols()[i].name.clone(), v: ek.v[i], w: ek.w[i], k: ek.k[i] })
            .collect(),
    };
    Ok((ek, vk))
}

//! JSON encodings of the keys. Every file names the backend and the field
//! modulus; group elements are decimal strings in the backend's encoding.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::{EvaluationKey, ProtocolError, PublicEntry, VerificationKey, WitnessKey};
use crate::group::Group;

#[derive(Serialize, Deserialize)]
struct Header {
    backend: String,
    modulus: String,
}

#[derive(Serialize, Deserialize)]
struct File<T> {
    #[serde(flatten)]
    header: Header,
    #[serde(flatten)]
    body: T,
}

#[derive(Serialize, Deserialize)]
struct EkBody {
    symbols: Vec<String>,
    public: Vec<usize>,
    powers_of_s: Vec<String>,
    v: Vec<String>,
    w: Vec<String>,
    k: Vec<String>,
    v_alpha: Vec<String>,
    w_alpha: Vec<String>,
    k_alpha: Vec<String>,
    beta: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct PublicBody {
    index: usize,
    name: String,
    v: String,
    w: String,
    k: String,
}

#[derive(Serialize, Deserialize)]
struct VkBody {
    g: String,
    alpha_v: String,
    alpha_w: String,
    alpha_k: String,
    gamma: String,
    beta_gamma: String,
    target: String,
    public: Vec<PublicBody>,
}

#[derive(Serialize, Deserialize)]
struct WkBody {
    elements: Vec<String>,
}

fn write<G: Group, T: Serialize>(group: &G, body: T) -> String {
    let file =
        File { header: Header { backend: G::NAME.to_string(), modulus: group.field().modulus().to_string() }, body };
    let mut s = serde_json::to_string_pretty(&file).expect("key serializes");
    s.push('\n');
    s
}

fn read<G: Group, T: DeserializeOwned>(group: &G, json: &str) -> Result<T, ProtocolError> {
    let file: File<T> = serde_json::from_str(json).map_err(|e| ProtocolError::MalformedKey(e.to_string()))?;
    if file.header.backend != G::NAME {
        return Err(ProtocolError::BackendMismatch { expected: G::NAME.into(), found: file.header.backend });
    }
    let modulus = group.field().modulus().to_string();
    if file.header.modulus != modulus {
        return Err(ProtocolError::FieldMismatch { expected: modulus, found: file.header.modulus });
    }
    Ok(file.body)
}

fn enc<G: Group>(group: &G, xs: &[G::Element]) -> Vec<String> {
    xs.iter().map(|&x| group.encode(x)).collect()
}

fn dec1<G: Group>(group: &G, s: &str) -> Result<G::Element, ProtocolError> {
    group.decode(s).map_err(|e| ProtocolError::MalformedKey(e.to_string()))
}

fn dec<G: Group>(group: &G, xs: &[String]) -> Result<Vec<G::Element>, ProtocolError> {
    xs.iter().map(|s| dec1(group, s)).collect()
}

impl<E: Copy> EvaluationKey<E> {
    pub fn to_json<G: Group<Element = E>>(&self, group: &G) -> String {
        write(
            group,
            EkBody {
                symbols: self.symbols.clone(),
                public: self.public.clone(),
                powers_of_s: enc(group, &self.powers_of_s),
                v: enc(group, &self.v),
                w: enc(group, &self.w),
                k: enc(group, &self.k),
                v_alpha: enc(group, &self.v_alpha),
                w_alpha: enc(group, &self.w_alpha),
                k_alpha: enc(group, &self.k_alpha),
                beta: enc(group, &self.beta),
            },
        )
    }

    pub fn from_json<G: Group<Element = E>>(group: &G, json: &str) -> Result<Self, ProtocolError> {
        let b: EkBody = read(group, json)?;
        Ok(EvaluationKey {
            symbols: b.symbols,
            public: b.public,
            powers_of_s: dec(group, &b.powers_of_s)?,
            v: dec(group, &b.v)?,
            w: dec(group, &b.w)?,
            k: dec(group, &b.k)?,
            v_alpha: dec(group, &b.v_alpha)?,
            w_alpha: dec(group, &b.w_alpha)?,
            k_alpha: dec(group, &b.k_alpha)?,
            beta: dec(group, &b.beta)?,
        })
    }
}

impl<E: Copy> VerificationKey<E> {
    pub fn to_json<G: Group<Element = E>>(&self, group: &G) -> String {
        let e = |x: E| group.encode(x);
        write(
            group,
            VkBody {
                g: e(self.g),
                alpha_v: e(self.alpha_v),
                alpha_w: e(self.alpha_w),
                alpha_k: e(self.alpha_k),
                gamma: e(self.gamma),
                beta_gamma: e(self.beta_gamma),
                target: e(self.target),
                public: self
                    .public
                    .iter()
                    .map(|p| PublicBody { index: p.index, name: p.name.clone(), v: e(p.v), w: e(p.w), k: e(p.k) })
                    .collect(),
            },
        )
    }

    pub fn from_json<G: Group<Element = E>>(group: &G, json: &str) -> Result<Self, ProtocolError> {
        let b: VkBody = read(group, json)?;
        if b.public.first().map(|p| p.index) != Some(0) {
            return Err(ProtocolError::MalformedKey("public entries must start with the one symbol".into()));
        }
        let d = |s: &str| dec1(group, s);
        Ok(VerificationKey {
            g: d(&b.g)?,
            alpha_v: d(&b.alpha_v)?,
            alpha_w: d(&b.alpha_w)?,
            alpha_k: d(&b.alpha_k)?,
            gamma: d(&b.gamma)?,
            beta_gamma: d(&b.beta_gamma)?,
            target: d(&b.target)?,
            public: b
                .public
                .iter()
                .map(|p| {
                    Ok(PublicEntry { index: p.index, name: p.name.clone(), v: d(&p.v)?, w: d(&p.w)?, k: d(&p.k)? })
                })
                .collect::<Result<_, ProtocolError>>()?,
        })
    }
}

impl<E: Copy> WitnessKey<E> {
    pub fn to_json<G: Group<Element = E>>(&self, group: &G) -> String {
        write(group, WkBody { elements: enc(group, &self.elements()) })
    }

    pub fn from_json<G: Group<Element = E>>(group: &G, json: &str) -> Result<Self, ProtocolError> {
        let b: WkBody = read(group, json)?;
        let elements: [E; 8] = dec(group, &b.elements)?
            .try_into()
            .map_err(|v: Vec<E>| ProtocolError::MalformedKey(format!("expected 8 elements, found {}", v.len())))?;
        Ok(WitnessKey::from_elements(elements))
    }
}

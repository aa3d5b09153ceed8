//! Cyclic groups with a distinguished generator, and the bilinear pairing
//! used by the proof system.
//!
//! Two backends are provided:
//!
//! * [`ModularGroup`]: honest exponentiation in the multiplicative group of
//!   the field. It has no pairing.
//! * [`TransparentGroup`]: an element `g^a` is stored as its discrete log `a`,
//!   so the group law adds exponents and the pairing multiplies them. Every
//!   protocol equation can be executed exactly, but nothing is hidden. It is
//!   **not** cryptographically secure and exists for desk-scale testing.

use std::fmt::Debug;

use rand::Rng;

use crate::field::{Fe, Field, FieldError};

pub trait Group {
    type Element: Copy + Eq + Debug;
    type Target: Copy + Eq + Debug;

    /// Backend tag written into key files.
    const NAME: &'static str;

    fn field(&self) -> &Field;
    fn generator(&self) -> Self::Element;
    fn identity(&self) -> Self::Element;
    fn op(&self, a: Self::Element, b: Self::Element) -> Self::Element;
    fn inverse(&self, a: Self::Element) -> Self::Element;
    /// `base^exponent`, with the exponent reduced modulo the group order.
    fn exp(&self, base: Self::Element, exponent: Fe) -> Self::Element;
    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Element;

    fn supports_pairing(&self) -> bool;
    fn pairing(&self, a: Self::Element, b: Self::Element) -> Result<Self::Target, FieldError>;
    fn target_identity(&self) -> Self::Target;
    fn target_op(&self, a: Self::Target, b: Self::Target) -> Self::Target;
    fn target_exp(&self, base: Self::Target, exponent: Fe) -> Self::Target;

    fn encode(&self, e: Self::Element) -> String;
    fn decode(&self, s: &str) -> Result<Self::Element, FieldError>;

    /// `g^exponent`.
    fn exp_gen(&self, exponent: Fe) -> Self::Element {
        self.exp(self.generator(), exponent)
    }

    /// Product of `bases[i]^exponents[i]`.
    fn multi_exp(&self, bases: &[Self::Element], exponents: &[Fe]) -> Self::Element {
        debug_assert_eq!(bases.len(), exponents.len());
        bases
            .iter()
            .zip(exponents)
            .filter(|(_, e)| !e.is_zero())
            .fold(self.identity(), |acc, (&b, &e)| self.op(acc, self.exp(b, e)))
    }
}

/// Residues in `F_p^*`; group order `p - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModularGroup {
    field: Field,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue(Fe);

impl Residue {
    pub fn value(self) -> u64 {
        self.0.value()
    }
}

impl ModularGroup {
    pub fn new(field: Field) -> Self {
        Self { field }
    }
}

impl Group for ModularGroup {
    type Element = Residue;
    type Target = Residue;
    const NAME: &'static str = "modular";

    fn field(&self) -> &Field {
        &self.field
    }

    fn generator(&self) -> Residue {
        Residue(self.field.generator())
    }

    fn identity(&self) -> Residue {
        Residue(self.field.one())
    }

    fn op(&self, a: Residue, b: Residue) -> Residue {
        Residue(a.0 * b.0)
    }

    fn inverse(&self, a: Residue) -> Residue {
        Residue(a.0.inverse().expect("group elements are nonzero"))
    }

    fn exp(&self, base: Residue, exponent: Fe) -> Residue {
        let order = self.field.modulus() - 1;
        Residue(base.0.pow(exponent.value() % order))
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Residue {
        Residue(self.field.random_nonzero(rng))
    }

    fn supports_pairing(&self) -> bool {
        false
    }

    fn pairing(&self, _: Residue, _: Residue) -> Result<Residue, FieldError> {
        Err(FieldError::PairingUnsupported(Self::NAME))
    }

    fn target_identity(&self) -> Residue {
        self.identity()
    }

    fn target_op(&self, a: Residue, b: Residue) -> Residue {
        self.op(a, b)
    }

    fn target_exp(&self, base: Residue, exponent: Fe) -> Residue {
        self.exp(base, exponent)
    }

    fn encode(&self, e: Residue) -> String {
        e.0.to_string()
    }

    fn decode(&self, s: &str) -> Result<Residue, FieldError> {
        let v = self.field.parse(s)?;
        if v.is_zero() {
            return Err(FieldError::InvalidElement(s.to_string()));
        }
        Ok(Residue(v))
    }
}

/// Order-`p` group whose elements expose their discrete log. Insecure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransparentGroup {
    field: Field,
}

/// `g^log`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Exponent(Fe);

/// `e(g, g)^log`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TargetExponent(Fe);

impl Exponent {
    pub fn discrete_log(self) -> Fe {
        self.0
    }
}

impl TargetExponent {
    pub fn discrete_log(self) -> Fe {
        self.0
    }
}

impl TransparentGroup {
    pub fn new(field: Field) -> Self {
        Self { field }
    }

    /// Builds `g^log` directly. Only meaningful because the backend is transparent.
    pub fn from_log(&self, log: Fe) -> Exponent {
        Exponent(log)
    }
}

impl Group for TransparentGroup {
    type Element = Exponent;
    type Target = TargetExponent;
    const NAME: &'static str = "transparent";

    fn field(&self) -> &Field {
        &self.field
    }

    fn generator(&self) -> Exponent {
        Exponent(self.field.one())
    }

    fn identity(&self) -> Exponent {
        Exponent(self.field.zero())
    }

    fn op(&self, a: Exponent, b: Exponent) -> Exponent {
        Exponent(a.0 + b.0)
    }

    fn inverse(&self, a: Exponent) -> Exponent {
        Exponent(-a.0)
    }

    fn exp(&self, base: Exponent, exponent: Fe) -> Exponent {
        Exponent(base.0 * exponent)
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Exponent {
        Exponent(self.field.random(rng))
    }

    fn supports_pairing(&self) -> bool {
        true
    }

    fn pairing(&self, a: Exponent, b: Exponent) -> Result<TargetExponent, FieldError> {
        Ok(TargetExponent(a.0 * b.0))
    }

    fn target_identity(&self) -> TargetExponent {
        TargetExponent(self.field.zero())
    }

    fn target_op(&self, a: TargetExponent, b: TargetExponent) -> TargetExponent {
        TargetExponent(a.0 + b.0)
    }

    fn target_exp(&self, base: TargetExponent, exponent: Fe) -> TargetExponent {
        TargetExponent(base.0 * exponent)
    }

    fn encode(&self, e: Exponent) -> String {
        e.0.to_string()
    }

    fn decode(&self, s: &str) -> Result<Exponent, FieldError> {
        Ok(Exponent(self.field.parse(s)?))
    }
}

//! Dense univariate polynomials over a prime field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::field::{Fe, FieldError};

/// Coefficients stored lowest degree first, with no trailing zeros.
/// The zero polynomial is the empty list, so equality is structural.
#[derive(Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct Polynomial {
    coeffs: Vec<Fe>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Fe) -> Self {
        Self::new(vec![c])
    }

    /// `x - root`.
    pub fn linear_root(root: Fe) -> Self {
        Self::new(vec![-root, Fe::one_like(root)])
    }

    pub fn new(mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Fe> {
        self.coeffs.last().copied()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Fe) -> Fe {
        let zero = x.zero_like();
        self.coeffs.iter().rev().fold(zero, |acc, &c| acc * x + c)
    }

    pub fn scale(&self, k: Fe) -> Polynomial {
        Self::new(self.coeffs.iter().map(|&c| c * k).collect())
    }

    /// Product of `(x - r)` over all roots; the constant 1 when `roots` is empty.
    pub fn from_roots(one: Fe, roots: &[Fe]) -> Polynomial {
        // coefficients of the running product, highest degree grows by one per root
        let mut acc = vec![one];
        for &r in roots {
            let mut next = vec![one.zero_like(); acc.len() + 1];
            for (i, &c) in acc.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            acc = next;
        }
        Self::new(acc)
    }

    /// Long division: returns `(quotient, remainder)` with
    /// `self = quotient * divisor + remainder` and `deg(remainder) < deg(divisor)`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), FieldError> {
        let lead = divisor.leading().ok_or(FieldError::DivisionByZero)?;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let lead_inv = lead.inverse()?;
        let mut rem = self.coeffs.clone();
        let zero = lead.zero_like();
        let mut quot = vec![zero; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = rem[i + dd] * lead_inv;
            quot[i] = q;
            if q.is_zero() {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= q * d;
            }
        }
        rem.truncate(dd);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Divides by `(x - root)` with synthetic division, dropping the remainder.
    fn div_linear(&self, root: Fe) -> Polynomial {
        let n = self.coeffs.len();
        if n < 2 {
            return Polynomial::zero();
        }
        let zero = root.zero_like();
        let mut out = vec![zero; n - 1];
        let mut carry = zero;
        for i in (1..n).rev() {
            carry = self.coeffs[i] + carry * root;
            out[i - 1] = carry;
        }
        Polynomial::new(out)
    }

    /// Lagrange basis for `nodes`: `basis[j](nodes[k]) = [j == k]`.
    pub fn lagrange_basis(nodes: &[Fe]) -> Result<Vec<Polynomial>, FieldError> {
        let Some(&first) = nodes.first() else {
            return Ok(Vec::new());
        };
        let mut seen = std::collections::HashSet::with_capacity(nodes.len());
        for x in nodes {
            if !seen.insert(x.value()) {
                return Err(FieldError::DuplicateNode(x.value()));
            }
        }
        let vanishing = Polynomial::from_roots(Fe::one_like(first), nodes);
        nodes
            .iter()
            .map(|&xj| {
                let numer = vanishing.div_linear(xj);
                let denom = numer.eval(xj);
                Ok(numer.scale(denom.inverse()?))
            })
            .collect()
    }

    /// The unique polynomial of degree `< points.len()` through `points`.
    pub fn interpolate(points: &[(Fe, Fe)]) -> Result<Polynomial, FieldError> {
        let nodes: Vec<Fe> = points.iter().map(|p| p.0).collect();
        let basis = Self::lagrange_basis(&nodes)?;
        Ok(points
            .iter()
            .zip(&basis)
            .filter(|((_, y), _)| !y.is_zero())
            .fold(Polynomial::zero(), |acc, ((_, y), l)| &acc + &l.scale(*y)))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = long.coeffs.clone();
        for (o, &c) in out.iter_mut().zip(&short.coeffs) {
            *o += c;
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|&c| -c).collect() }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

/// Schoolbook product.
impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

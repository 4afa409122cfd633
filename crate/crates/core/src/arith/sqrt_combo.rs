use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::character::SignCharacter;
use super::factor::Factorizer;
use super::rat::{format_rat, parse_rat, Rat};
use crate::error::{Error, Result};

/// A finite sum `Σ c_m·√m` over square-free integers `m`, with `m = 1` the
/// rational part and `√m = i·√|m|` for negative `m`.
///
/// The map never holds a zero coefficient, so equality of values is equality
/// of maps.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SqrtCombo {
    terms: BTreeMap<BigInt, Rat>,
}

impl SqrtCombo {
    pub fn zero() -> Self {
        SqrtCombo::default()
    }

    pub fn one() -> Self {
        SqrtCombo::from_rat(Rat::one())
    }

    pub fn from_rat(q: Rat) -> Self {
        let mut out = SqrtCombo::zero();
        out.push(BigInt::one(), q);
        out
    }

    pub fn from_int(n: i64) -> Self {
        SqrtCombo::from_rat(Rat::from_integer(n.into()))
    }

    /// `c·√n` for an arbitrary nonzero integer `n`, canonicalized.
    pub fn term(c: Rat, n: i64) -> Result<Self> {
        Self::term_big(c, &BigInt::from(n), &Factorizer::default())
    }

    pub fn term_big(c: Rat, n: &BigInt, factorizer: &Factorizer) -> Result<Self> {
        let (root, m) = factorizer.squarefree_decompose(n)?;
        let mut out = SqrtCombo::zero();
        out.push(m, c * Rat::from_integer(BigInt::from(root)));
        Ok(out)
    }

    pub(crate) fn from_parts(m: BigInt, c: Rat) -> Self {
        let mut out = SqrtCombo::zero();
        out.push(m, c);
        out
    }

    fn push(&mut self, m: BigInt, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The value as a rational, if it has no irrational part.
    pub fn as_rational(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&BigInt::one()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &BigInt) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient of the largest radicand; its sign fixes a canonical sign.
    pub fn leading_coefficient(&self) -> Option<&Rat> {
        self.terms.values().next_back()
    }

    pub fn radicands(&self) -> impl Iterator<Item = &BigInt> {
        self.terms.keys()
    }

    pub fn scale(&self, q: &Rat) -> Self {
        if q.is_zero() {
            return SqrtCombo::zero();
        }
        SqrtCombo { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect() }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Multiplicative inverse, `None` for zero.
    ///
    /// Multiplies by every nontrivial conjugate over a coprime basis of the
    /// radicands; the product with `self` is the rational norm.
    pub fn invert(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(SqrtCombo::from_rat(q.recip()));
        }
        let basis = coprime_basis(self.radicands());
        let mut cofactor = SqrtCombo::one();
        for mask in 1u64..(1u64 << basis.len()) {
            let chi = SignCharacter::new(
                basis.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, g)| g.clone()),
            );
            cofactor = &cofactor * &chi.apply(self);
        }
        let norm = (self * &cofactor)
            .as_rational()
            .expect("norm over a multiquadratic field is rational");
        Some(cofactor.scale(&norm.recip()))
    }

    pub fn apply(&self, chi: &SignCharacter) -> Self {
        chi.apply(self)
    }
}

/// Pairwise-coprime positive integers whose products give every `|m| > 1`,
/// plus `-1` when some `m` is negative.
fn coprime_basis<'a>(keys: impl Iterator<Item = &'a BigInt>) -> Vec<BigInt> {
    let mut negative = false;
    let mut basis: Vec<BigInt> = Vec::new();
    for m in keys {
        negative |= m.is_negative();
        let a = m.abs();
        if !a.is_one() {
            basis.push(a);
        }
    }
    loop {
        basis.sort();
        basis.dedup();
        let mut split = None;
        'outer: for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let g = basis[i].gcd(&basis[j]);
                if !g.is_one() {
                    split = Some((i, j, g));
                    break 'outer;
                }
            }
        }
        let Some((i, j, g)) = split else { break };
        let (a, b) = (&basis[i] / &g, &basis[j] / &g);
        basis.remove(j);
        basis.remove(i);
        basis.extend([a, b, g].into_iter().filter(|x| !x.is_one()));
    }
    if negative {
        basis.insert(0, BigInt::from(-1));
    }
    basis
}

/// `√m·√n` as `(factor, radicand)` with the `i·√|m|` convention.
fn mul_radicals(m: &BigInt, n: &BigInt) -> (BigInt, BigInt) {
    let g = m.abs().gcd(&n.abs());
    let s = (m * n) / (&g * &g);
    if m.is_negative() && n.is_negative() {
        (-g, s)
    } else {
        (g, s)
    }
}

impl Neg for &SqrtCombo {
    type Output = SqrtCombo;
    fn neg(self) -> SqrtCombo {
        SqrtCombo { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for SqrtCombo {
    type Output = SqrtCombo;
    fn neg(self) -> SqrtCombo {
        -&self
    }
}

impl Add for &SqrtCombo {
    type Output = SqrtCombo;
    fn add(self, rhs: &SqrtCombo) -> SqrtCombo {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.push(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SqrtCombo {
    type Output = SqrtCombo;
    fn sub(self, rhs: &SqrtCombo) -> SqrtCombo {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.push(m.clone(), -c);
        }
        out
    }
}

impl Mul for &SqrtCombo {
    type Output = SqrtCombo;
    fn mul(self, rhs: &SqrtCombo) -> SqrtCombo {
        let mut out = SqrtCombo::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                let (g, s) = mul_radicals(m, n);
                out.push(s, a * b * Rat::from_integer(g));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for SqrtCombo {
            type Output = SqrtCombo;
            fn $f(self, rhs: SqrtCombo) -> SqrtCombo {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for SqrtCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "√{m}")?;
            } else {
                write!(f, "{mag}√{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SqrtCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SqrtCombo({self})")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Radicand {
    Small(i64),
    Big(String),
}

impl Serialize for SqrtCombo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(Radicand, String)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let key = m.to_i64().map_or_else(|| Radicand::Big(m.to_string()), Radicand::Small);
                (key, format_rat(c))
            })
            .collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SqrtCombo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let pairs: Vec<(Radicand, String)> = Vec::deserialize(d)?;
        let mut out = SqrtCombo::zero();
        for (key, c) in pairs {
            let m = match key {
                Radicand::Small(m) => BigInt::from(m),
                Radicand::Big(s) => s.parse().map_err(D::Error::custom)?,
            };
            let c = parse_rat(&c).map_err(D::Error::custom)?;
            let t = SqrtCombo::term_big(c, &m, &Factorizer::default()).map_err(D::Error::custom)?;
            out = &out + &t;
        }
        Ok(out)
    }
}

/// The square root of a nonzero rational with positive leading coefficient:
/// `√(a/b) = (1/b)·√(ab)`.
pub fn sqrt_of_rational(q: &Rat) -> Result<SqrtCombo> {
    sqrt_of_rational_with(q, &Factorizer::default())
}

pub fn sqrt_of_rational_with(q: &Rat, factorizer: &Factorizer) -> Result<SqrtCombo> {
    if q.is_zero() {
        return Err(Error::invalid("square root of 0 requested"));
    }
    let ab = q.numer() * q.denom();
    SqrtCombo::term_big(Rat::new(BigInt::one(), q.denom().clone()), &ab, factorizer)
}

//! Exhaustive search for common zeros of diagonal forms on projective space.
//!
//! Points of `P^(r-1)(F_q)` are enumerated with the last nonzero coordinate
//! set to 1: first by the position of that coordinate, then by the earlier
//! coordinates in lexicographic order (coordinate 0 most significant).

use serde::{Deserialize, Serialize};

use crate::arith::{format_rat, parse_rat, Rat};
use crate::error::{Error, Result};
use crate::exec::{self, SearchConfig};
use crate::ff::GaloisField;

const CHUNK: u64 = 1 << 12;

/// `Σ c_i·x_i^degree` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalForm {
    pub degree: u32,
    pub coeffs: Vec<Rat>,
}

impl DiagonalForm {
    pub fn new(degree: u32, coeffs: Vec<Rat>) -> Result<Self> {
        if degree == 0 || coeffs.is_empty() {
            return Err(Error::invalid("diagonal form needs degree >= 1 and at least one variable"));
        }
        if coeffs.iter().any(|c| *c == Rat::from_integer(0.into())) {
            return Err(Error::invalid("diagonal form coefficients must be nonzero"));
        }
        Ok(DiagonalForm { degree, coeffs })
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn reduce(&self, field: &GaloisField) -> Result<FieldForm> {
        Ok(FieldForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| field.reduce(c)).collect::<Result<_>>()?,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct DiagonalFormRepr {
    degree: u32,
    coefficients: Vec<String>,
}

impl Serialize for DiagonalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagonalFormRepr {
            degree: self.degree,
            coefficients: self.coeffs.iter().map(format_rat).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagonalForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = DiagonalFormRepr::deserialize(d)?;
        let coeffs = repr
            .coefficients
            .iter()
            .map(|c| parse_rat(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        DiagonalForm::new(repr.degree, coeffs).map_err(D::Error::custom)
    }
}

/// A diagonal form with coefficients already in a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldForm {
    pub degree: u32,
    pub coeffs: Vec<u32>,
}

/// Number of points of `P^(n-1)(F_q)`.
pub fn projective_size(q: u64, n: usize) -> u128 {
    (0..n).map(|j| (q as u128).pow(j as u32)).sum()
}

/// The point at position `index` of the enumeration order.
pub fn point_at(q: u64, n: usize, mut index: u128) -> Vec<u32> {
    let mut point = vec![0u32; n];
    let mut j = 0;
    loop {
        let block = (q as u128).pow(j as u32);
        if index < block {
            break;
        }
        index -= block;
        j += 1;
    }
    point[j] = 1;
    for k in (0..j).rev() {
        point[k] = (index % q as u128) as u32;
        index /= q as u128;
    }
    point
}

struct Evaluator {
    /// `tables[form][var][x] = c·x^d`
    tables: Vec<Vec<Vec<u32>>>,
}

impl Evaluator {
    fn new(field: &GaloisField, forms: &[FieldForm]) -> Self {
        let tables = forms
            .iter()
            .map(|form| {
                form.coeffs
                    .iter()
                    .map(|&c| {
                        field
                            .elements()
                            .map(|x| field.mul(c, field.pow(x, form.degree as u64)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Evaluator { tables }
    }

    fn vanishes(&self, field: &GaloisField, point: &[u32]) -> bool {
        self.tables.iter().all(|form| {
            let mut acc = 0;
            for (t, &x) in form.iter().zip(point) {
                acc = field.add(acc, t[x as usize]);
            }
            acc == 0
        })
    }
}

/// Evaluates a field form at a point.
pub fn evaluate_form(field: &GaloisField, form: &FieldForm, point: &[u32]) -> u32 {
    form.coeffs.iter().zip(point).fold(0, |acc, (&c, &x)| {
        field.add(acc, field.mul(c, field.pow(x, form.degree as u64)))
    })
}

/// The first projective point (in enumeration order) where every form
/// vanishes. Refuses when `q^(r-1)` exceeds the budget.
pub fn first_common_zero(
    field: &GaloisField,
    forms: &[FieldForm],
    cfg: &SearchConfig,
) -> Result<Option<Vec<u32>>> {
    let n = forms.first().map(|f| f.coeffs.len()).ok_or_else(|| Error::invalid("no forms"))?;
    if let Some(bad) = forms.iter().find(|f| f.coeffs.len() != n) {
        return Err(Error::LengthMismatch { expected: n, got: bad.coeffs.len() });
    }
    let q = field.order() as u64;
    cfg.check((q as u128).pow(n as u32 - 1))?;
    let total = projective_size(q, n);
    let eval = Evaluator::new(field, forms);
    let chunks = (total as u64).div_ceil(CHUNK);
    Ok(exec::find_map_first(chunks, cfg.parallelism, |c| {
        let start = c * CHUNK;
        let end = (start + CHUNK).min(total as u64);
        (start..end).find_map(|i| {
            let pt = point_at(q, n, i as u128);
            eval.vanishes(field, &pt).then_some(pt)
        })
    }))
}

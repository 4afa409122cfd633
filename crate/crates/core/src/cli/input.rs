use std::path::Path;

use serde::Deserialize;

use crate::arith::{parse_rat, Rat};
use crate::error::{Error, Result};
use crate::search::DiagonalForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurfaceKind {
    Dp4Pencil,
    DiagonalCubic,
    QuadPair,
    PicRankOne,
}

impl SurfaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::Dp4Pencil => "dp4-pencil",
            SurfaceKind::DiagonalCubic => "diagonal-cubic",
            SurfaceKind::QuadPair => "quad-pair",
            SurfaceKind::PicRankOne => "pic-rank-one",
        }
    }
}

/// Input file: `{kind, coefficients, params}`; rationals are `"p/q"` strings.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceInput {
    pub kind: SurfaceKind,
    #[serde(default)]
    pub coefficients: Vec<String>,
    #[serde(default)]
    pub params: Params,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub local: Option<LocalParams>,
    pub field: Option<FieldParams>,
    /// Each entry lists the generators one character flips; the group used
    /// is the one they generate. Absent means all characters.
    pub characters: Option<Vec<Vec<i64>>>,
    pub trials: Option<usize>,
    pub variables: Option<usize>,
    pub n: Option<i64>,
    pub ell: Option<u64>,
    pub p_g: Option<i64>,
    pub chi_c: Option<i64>,
    pub r: Option<i64>,
    pub rost: Option<RostParams>,
    pub equations: Option<Vec<DiagonalForm>>,
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalParams {
    pub p: u64,
    pub a: i64,
    pub fmax: Option<u32>,
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldParams {
    pub p: u64,
    #[serde(default = "one")]
    pub f: u32,
    pub kmax: Option<u32>,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RostParams {
    pub p: u64,
    pub n_x: u64,
    pub n_y: u64,
    pub eta_y: u64,
    pub deg_q: u64,
    pub deg_r: u64,
}

impl SurfaceInput {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let input: SurfaceInput =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("bad input: {e}")))?;
        input.check_arity()?;
        Ok(input)
    }

    fn check_arity(&self) -> Result<()> {
        let n = self.coefficients.len();
        let ok = match self.kind {
            SurfaceKind::Dp4Pencil => n == 10,
            // A local spec alone determines the cubic.
            SurfaceKind::DiagonalCubic => n == 4 || (n == 0 && self.params.local.is_some()),
            SurfaceKind::QuadPair => n % 2 == 0,
            SurfaceKind::PicRankOne => n == 2 || n == 0,
        };
        if !ok {
            return Err(Error::invalid(format!("{} does not take {n} coefficients", self.kind.name())));
        }
        Ok(())
    }

    pub fn expect_kind(&self, kinds: &[SurfaceKind]) -> Result<()> {
        if kinds.contains(&self.kind) {
            Ok(())
        } else {
            Err(Error::invalid({
                let names: Vec<_> = kinds.iter().map(|k| k.name()).collect();
                format!("expected {}, got {}", names.join(" or "), self.kind.name())
            }))
        }
    }

    pub fn rationals(&self) -> Result<Vec<Rat>> {
        self.coefficients.iter().map(|c| parse_rat(c)).collect()
    }

    pub fn integers(&self) -> Result<Vec<i64>> {
        self.coefficients
            .iter()
            .map(|c| {
                c.trim().parse().map_err(|_| Error::invalid(format!("not an integer: {c:?}")))
            })
            .collect()
    }

    /// The diagonal equations the input describes, for index computations.
    pub fn equations(&self) -> Result<Vec<DiagonalForm>> {
        if let Some(eqs) = &self.params.equations {
            if eqs.is_empty() {
                return Err(Error::invalid("empty equation list"));
            }
            return Ok(eqs.clone());
        }
        let c = self.rationals()?;
        match self.kind {
            SurfaceKind::DiagonalCubic => Ok(vec![DiagonalForm::new(3, c)?]),
            SurfaceKind::Dp4Pencil | SurfaceKind::QuadPair => {
                let (a, b) = c.split_at(c.len() / 2);
                Ok(vec![DiagonalForm::new(2, a.to_vec())?, DiagonalForm::new(2, b.to_vec())?])
            }
            SurfaceKind::PicRankOne => Err(Error::invalid("pic-rank-one input has no equations")),
        }
    }

    pub fn field(&self) -> Result<FieldParams> {
        self.params.field.ok_or_else(|| Error::invalid("missing params.field {p, f, kmax}"))
    }

    pub fn local(&self) -> Result<LocalParams> {
        self.params.local.ok_or_else(|| Error::invalid("missing params.local {p, a, fmax}"))
    }
}

pub(crate) fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::invalid(format!("missing params.{name}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pencil() {
        let s = r#"{"kind":"dp4-pencil","coefficients":["1","1","1","1","1","2","3","5","7","11"]}"#;
        let i = SurfaceInput::from_json(s).unwrap();
        assert_eq!(i.kind, SurfaceKind::Dp4Pencil);
        assert_eq!(i.equations().unwrap().len(), 2);
    }

    #[test]
    fn rejects_bad_arity_and_fields() {
        assert!(SurfaceInput::from_json(r#"{"kind":"diagonal-cubic","coefficients":["1"]}"#).is_err());
        assert!(SurfaceInput::from_json(r#"{"kind":"cubic"}"#).is_err());
        assert!(SurfaceInput::from_json(r#"{"kind":"quad-pair","extra":1}"#).is_err());
        let i = SurfaceInput::from_json(r#"{"kind":"diagonal-cubic","coefficients":["1","x","1","1"]}"#)
            .unwrap();
        assert!(i.rationals().is_err());
    }
}

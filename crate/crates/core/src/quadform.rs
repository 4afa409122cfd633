//! Diagonal quadratic forms: exact evaluation over radicals, common isotropic
//! vectors over finite fields, and the odd-degree descent harness.

use rand::Rng;
use serde::Serialize;

use crate::arith::{Rat, SqrtCombo};
use crate::error::{Error, Result};
use crate::exec::SearchConfig;
use crate::ff::{FFVector, GaloisField};
use crate::search::{first_common_zero, DiagonalForm, FieldForm};

/// `Σ a_i·x_i²` with nonzero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagQF {
    coeffs: Vec<Rat>,
}

impl DiagQF {
    pub fn new(coeffs: Vec<Rat>) -> Result<Self> {
        DiagonalForm::new(2, coeffs.clone())?;
        Ok(DiagQF { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        DiagQF::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn as_form(&self) -> DiagonalForm {
        DiagonalForm { degree: 2, coeffs: self.coeffs.clone() }
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.rank() {
            return Err(Error::LengthMismatch { expected: self.rank(), got: len });
        }
        Ok(())
    }

    /// `Σ a_i·v_i²`.
    pub fn evaluate(&self, v: &[SqrtCombo]) -> Result<SqrtCombo> {
        self.bilinear(v, v)
    }

    /// `Σ a_i·u_i·v_i`; orthogonality is its vanishing.
    pub fn bilinear(&self, u: &[SqrtCombo], v: &[SqrtCombo]) -> Result<SqrtCombo> {
        self.check_len(u.len())?;
        self.check_len(v.len())?;
        Ok(diagonal_pairing(&self.coeffs, u, v))
    }
}

/// `Σ a_i·u_i·v_i` for any coefficient list (zeros allowed); lengths must
/// already agree.
pub(crate) fn diagonal_pairing(coeffs: &[Rat], u: &[SqrtCombo], v: &[SqrtCombo]) -> SqrtCombo {
    coeffs
        .iter()
        .zip(u.iter().zip(v))
        .fold(SqrtCombo::zero(), |acc, (a, (x, y))| &acc + &(x * y).scale(a))
}

fn check_pair(q1: &DiagQF, q2: &DiagQF, p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::CharacteristicTwo);
    }
    if q1.rank() != q2.rank() {
        return Err(Error::LengthMismatch { expected: q1.rank(), got: q2.rank() });
    }
    Ok(())
}

/// A nonzero common isotropic vector of `q1`, `q2` over `F_{p^f}`: the first
/// one in projective enumeration order, or `None` if there is none.
pub fn find_common_isotropic(
    q1: &DiagQF,
    q2: &DiagQF,
    p: u64,
    f: u32,
    cfg: &SearchConfig,
) -> Result<Option<FFVector>> {
    check_pair(q1, q2, p)?;
    let field = GaloisField::new(p, f)?;
    let forms = [q1.as_form().reduce(&field)?, q2.as_form().reduce(&field)?];
    common_isotropic_in(&field, &forms, cfg)
}

fn common_isotropic_in(
    field: &GaloisField,
    forms: &[FieldForm],
    cfg: &SearchConfig,
) -> Result<Option<FFVector>> {
    Ok(first_common_zero(field, forms, cfg)?.map(|pt| FFVector::from_elements(field, &pt)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentReport {
    /// `(k, exists over F_{q^k})` for odd `k <= kmax`.
    pub per_degree: Vec<(u32, bool)>,
    pub descent_consistent: bool,
}

impl DescentReport {
    pub fn exists_at(&self, k: u32) -> Option<bool> {
        self.per_degree.iter().find(|(d, _)| *d == k).map(|&(_, e)| e)
    }
}

/// Checks odd-degree descent of common isotropy over `F_q`, `q = p^f`:
/// existence over some `F_{q^k}` with `k > 1` odd must imply existence over
/// `F_q`. A `false` verdict contradicts the theorem.
pub fn amer_brumer_check(
    q1: &DiagQF,
    q2: &DiagQF,
    p: u64,
    f: u32,
    kmax: u32,
    cfg: &SearchConfig,
) -> Result<DescentReport> {
    check_pair(q1, q2, p)?;
    if kmax == 0 {
        return Err(Error::invalid("kmax must be at least 1"));
    }
    let mut per_degree = Vec::new();
    for k in (1..=kmax).step_by(2) {
        let found = find_common_isotropic(q1, q2, p, f * k, cfg)?;
        if let Some(v) = &found {
            let field = GaloisField::new(p, f * k)?;
            verify_witness(&field, q1, q2, v)?;
        }
        per_degree.push((k, found.is_some()));
    }
    let base = per_degree[0].1;
    let higher = per_degree.iter().skip(1).any(|&(_, e)| e);
    Ok(DescentReport { per_degree, descent_consistent: base || !higher })
}

/// Re-evaluates a witness by direct arithmetic, independent of the search
/// tables.
pub fn verify_witness(field: &GaloisField, q1: &DiagQF, q2: &DiagQF, v: &FFVector) -> Result<()> {
    let elems = v.to_elements(field)?;
    if elems.iter().all(|&x| x == 0) {
        return Err(Error::verification("zero vector returned as isotropic witness"));
    }
    for q in [q1, q2] {
        let mut acc = 0;
        for (c, &x) in q.coeffs().iter().zip(&elems) {
            acc = field.add(acc, field.mul(field.reduce(c)?, field.mul(x, x)));
        }
        if acc != 0 {
            return Err(Error::verification(format!("witness {v:?} is not isotropic")));
        }
    }
    Ok(())
}

/// A pair of diagonal forms in `r` variables with coefficients drawn
/// uniformly from `1..p`.
pub fn random_unit_pair<R: Rng>(rng: &mut R, p: u64, r: usize) -> (DiagQF, DiagQF) {
    let mut draw = || {
        let coeffs = (0..r).map(|_| Rat::from_integer(rng.gen_range(1..p as i64).into())).collect();
        DiagQF::new(coeffs).expect("nonzero coefficients")
    };
    let a = draw();
    let b = draw();
    (a, b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarnessSummary {
    pub trials: usize,
    pub consistent: usize,
    pub base_isotropic: usize,
    pub anisotropic_everywhere: usize,
    /// Indices of inconsistent trials; nonempty means a bug.
    pub failures: Vec<usize>,
}

/// Runs `amer_brumer_check` on `trials` random quaternary (or `r`-ary) pairs.
pub fn descent_harness<R: Rng>(
    rng: &mut R,
    p: u64,
    f: u32,
    r: usize,
    trials: usize,
    kmax: u32,
    cfg: &SearchConfig,
) -> Result<HarnessSummary> {
    let mut summary = HarnessSummary {
        trials,
        consistent: 0,
        base_isotropic: 0,
        anisotropic_everywhere: 0,
        failures: Vec::new(),
    };
    for t in 0..trials {
        let (q1, q2) = random_unit_pair(rng, p, r);
        let report = amer_brumer_check(&q1, &q2, p, f, kmax, cfg)?;
        if report.descent_consistent {
            summary.consistent += 1;
        } else {
            summary.failures.push(t);
        }
        if report.per_degree[0].1 {
            summary.base_isotropic += 1;
        }
        if report.per_degree.iter().all(|&(_, e)| !e) {
            summary.anisotropic_everywhere += 1;
        }
    }
    Ok(summary)
}

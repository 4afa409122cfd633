//! Diagonal cubic surfaces `a_0 T_0³ + a_1 T_1³ + a_2 T_2³ + a_3 T_3³ = 0`.

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{Factorizer, Rat};
use crate::error::{Error, Result};
use crate::exec::{self, SearchConfig};
use crate::ff::{FFVector, GaloisField};
use crate::search::{first_common_zero, DiagonalForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagCubic {
    coeffs: [Rat; 4],
}

impl DiagCubic {
    pub fn new(coeffs: Vec<Rat>) -> Result<Self> {
        let coeffs: [Rat; 4] = coeffs
            .try_into()
            .map_err(|v: Vec<Rat>| Error::LengthMismatch { expected: 4, got: v.len() })?;
        if coeffs.iter().any(Zero::is_zero) {
            return Err(Error::invalid("cubic coefficients must be nonzero"));
        }
        Ok(DiagCubic { coeffs })
    }

    pub fn from_ints(c: [i64; 4]) -> Result<Self> {
        DiagCubic::new(c.iter().map(|&x| Rat::from_integer(x.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rat; 4] {
        &self.coeffs
    }

    pub fn as_form(&self) -> DiagonalForm {
        DiagonalForm { degree: 3, coeffs: self.coeffs.to_vec() }
    }
}

/// A nonzero rational is a cube in `Q` iff every prime exponent of its
/// numerator and denominator is divisible by 3.
pub fn is_cube_rational(q: &Rat) -> Result<bool> {
    is_cube_rational_with(q, &Factorizer::default())
}

pub fn is_cube_rational_with(q: &Rat, factorizer: &Factorizer) -> Result<bool> {
    if q.is_zero() {
        return Err(Error::invalid("cube test of 0"));
    }
    for part in [q.numer(), q.denom()] {
        if factorizer.factor(part.magnitude())?.iter().any(|(_, e)| e % 3 != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No ratio `a_m a_n / (a_p a_q)` over the three splittings of `{0,1,2,3}`
/// into pairs is a rational cube.
pub fn segre_criterion(c: &DiagCubic) -> Result<bool> {
    let a = &c.coeffs;
    for (m, n, p, q) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
        if is_cube_rational(&(&a[m] * &a[n] / (&a[p] * &a[q])))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn mod_pow(mut base: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

fn check_local(a: i64, p: u64) -> Result<()> {
    if !crate::arith::is_prime_u64(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if a.rem_euclid(p as i64) == 0 {
        return Err(Error::NotUnit { value: a.to_string(), p });
    }
    Ok(())
}

/// Whether `a` (an integer prime to `p`) is a cube in `F_{p^f}`.
pub fn cube_in_ff(a: i64, p: u64, f: u32) -> Result<bool> {
    check_local(a, p)?;
    if f == 0 {
        return Err(Error::invalid("extension degree must be at least 1"));
    }
    let q = (p as u128)
        .checked_pow(f)
        .ok_or_else(|| Error::invalid(format!("{p}^{f} overflows")))?;
    if q % 3 != 1 {
        return Ok(true);
    }
    // a lies in F_p, so the power can be taken there.
    let a = a.rem_euclid(p as i64) as u128;
    Ok(mod_pow(a, (q - 1) / 3, p as u128) == 1)
}

/// The local surface `T_0³ + p T_1³ + p² T_2³ − a T_3³ = 0` over `Q_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocalSpec {
    pub p: u64,
    pub a: i64,
    pub fmax: u32,
}

impl LocalSpec {
    pub const DEFAULT_FMAX: u32 = 10;

    pub fn new(p: u64, a: i64) -> Result<Self> {
        check_local(a, p)?;
        Ok(LocalSpec { p, a, fmax: Self::DEFAULT_FMAX })
    }

    pub fn with_fmax(mut self, fmax: u32) -> Self {
        self.fmax = fmax;
        self
    }

    pub fn surface(&self) -> Result<DiagCubic> {
        let p = self.p as i64;
        DiagCubic::from_ints([1, p, p * p, -self.a])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalVerdict {
    /// `p ≡ 1 (mod 3)` and `a` is not a cube mod `p`; implies no `Q_p`-point.
    pub criterion_holds: bool,
    /// A primitive solution mod `p³`, if the exhaustive oracle found one.
    pub oracle_witness: Option<[u64; 4]>,
    /// The oracle found nothing whenever the criterion holds.
    pub oracle_agrees: bool,
}

/// Valuation criterion for insolubility over `Q_p`, cross-checked by an
/// exhaustive search for primitive solutions modulo `p³`.
pub fn qp_insoluble(spec: &LocalSpec, cfg: &SearchConfig) -> Result<LocalVerdict> {
    check_local(spec.a, spec.p)?;
    let criterion_holds = spec.p % 3 == 1 && !cube_in_ff(spec.a, spec.p, 1)?;
    let oracle_witness = primitive_solution_mod_p3(spec, cfg)?;
    Ok(LocalVerdict {
        criterion_holds,
        oracle_agrees: !(criterion_holds && oracle_witness.is_some()),
        oracle_witness,
    })
}

/// First primitive `(t_0, t_1, t_2, t_3)` with `t_0³ + p t_1³ + p² t_2³ − a t_3³ ≡ 0
/// (mod p³)`, scanning `t_0` outermost.
///
/// `p·t_1³` mod `p³` depends only on `t_1` mod `p²`, and `p²·t_2³` only on
/// `t_2` mod `p`, so those ranges cover every residue class of `(Z/p³)⁴`.
pub fn primitive_solution_mod_p3(spec: &LocalSpec, cfg: &SearchConfig) -> Result<Option<[u64; 4]>> {
    let p = spec.p;
    let (p2, p3) = (p * p, p * p * p);
    cfg.check((p3 as u128).pow(2) * p2 as u128 * p as u128)?;
    let m = p3 as u128;
    let cube = |x: u64| (x as u128).pow(3) % m;
    let a = spec.a.rem_euclid(p3 as i64) as u128;
    Ok(exec::find_map_first(p3, cfg.parallelism, |t0| {
        let c0 = cube(t0);
        for t1 in 0..p2 {
            let c1 = (p as u128 * cube(t1)) % m;
            for t2 in 0..p {
                let c2 = (p2 as u128 * cube(t2)) % m;
                let partial = (c0 + c1 + c2) % m;
                for t3 in 0..p3 {
                    let primitive = t0 % p != 0 || t1 % p != 0 || t2 % p != 0 || t3 % p != 0;
                    if primitive && (partial + m - a * cube(t3) % m) % m == 0 {
                        return Some([t0, t1, t2, t3]);
                    }
                }
            }
        }
        None
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    /// `(f, a is a cube in F_{p^f})` for residue degrees `f <= fmax` prime to 3.
    pub per_degree: Vec<(u32, bool)>,
    pub insoluble: bool,
}

/// Insolubility over every extension of degree prime to 3, checked through
/// residue degrees up to `fmax`: `a` must stay a non-cube in each `F_{p^f}`.
/// Ramification of degree prime to 3 leaves the valuation pattern unchanged.
pub fn prime_to_3_insoluble(spec: &LocalSpec) -> Result<ExtensionReport> {
    check_local(spec.a, spec.p)?;
    if spec.p % 3 != 1 {
        return Err(Error::Precondition(format!(
            "p = {} is not 1 mod 3, so the valuation criterion cannot hold",
            spec.p
        )));
    }
    let per_degree = (1..=spec.fmax)
        .filter(|f| f % 3 != 0)
        .map(|f| Ok((f, cube_in_ff(spec.a, spec.p, f)?)))
        .collect::<Result<Vec<_>>>()?;
    let insoluble = !per_degree.is_empty() && per_degree.iter().all(|&(_, cube)| !cube);
    Ok(ExtensionReport { per_degree, insoluble })
}

/// First point of the reduced cubic over `F_{p^f}` in enumeration order.
pub fn ff_point_exists(c: &DiagCubic, p: u64, f: u32, cfg: &SearchConfig) -> Result<Option<FFVector>> {
    let field = GaloisField::new(p, f)?;
    let form = c.as_form().reduce(&field)?;
    Ok(first_common_zero(&field, &[form], cfg)?.map(|pt| FFVector::from_elements(&field, &pt)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};

    #[test]
    fn rational_cubes() {
        assert!(is_cube_rational(&rat(8)).unwrap());
        assert!(is_cube_rational(&rat(-8)).unwrap());
        assert!(!is_cube_rational(&rat_frac(-1, 21)).unwrap());
        assert!(is_cube_rational(&rat(1)).unwrap());
        assert!(is_cube_rational(&rat_frac(-27, 1000)).unwrap());
        assert!(is_cube_rational(&rat(0)).is_err());
    }

    #[test]
    fn segre_examples() {
        assert!(segre_criterion(&DiagCubic::from_ints([1, 7, 49, -3]).unwrap()).unwrap());
        assert!(!segre_criterion(&DiagCubic::from_ints([1, 1, 1, 1]).unwrap()).unwrap());
        assert!(!segre_criterion(&DiagCubic::from_ints([1, 2, 4, 1]).unwrap()).unwrap());
    }

    #[test]
    fn cubes_in_finite_fields() {
        assert!(!cube_in_ff(3, 7, 1).unwrap());
        assert!(cube_in_ff(6, 7, 1).unwrap());
        for a in 1..5 {
            assert!(cube_in_ff(a, 5, 1).unwrap());
        }
        // every element of F_p is a cube in F_{p^2} when p ≡ 2 mod 3
        assert!(cube_in_ff(2, 5, 2).unwrap());
        assert!(cube_in_ff(14, 7, 1).is_err());
        assert!(cube_in_ff(1, 9, 1).is_err());
    }

    #[test]
    fn local_verdicts() {
        let cfg = SearchConfig::default();
        let v = qp_insoluble(&LocalSpec::new(7, 6).unwrap(), &cfg).unwrap();
        assert!(!v.criterion_holds);
        assert!(v.oracle_witness.is_some() && v.oracle_agrees);
        let v = qp_insoluble(&LocalSpec::new(5, 2).unwrap(), &cfg).unwrap();
        assert!(!v.criterion_holds);
        assert!(LocalSpec::new(7, 14).is_err());
    }

    #[test]
    fn extension_examples() {
        let r = prime_to_3_insoluble(&LocalSpec::new(7, 3).unwrap()).unwrap();
        assert!(r.insoluble);
        let degrees: Vec<u32> = r.per_degree.iter().map(|&(f, _)| f).collect();
        assert_eq!(degrees, vec![1, 2, 4, 5, 7, 8, 10]);
        let r = prime_to_3_insoluble(&LocalSpec::new(7, 6).unwrap()).unwrap();
        assert_eq!(r.per_degree[0], (1, true));
        assert!(!r.insoluble);
        assert!(!prime_to_3_insoluble(&LocalSpec::new(7, 1).unwrap()).unwrap().insoluble);
        assert!(matches!(
            prime_to_3_insoluble(&LocalSpec::new(5, 2).unwrap()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn points_over_small_fields() {
        let cfg = SearchConfig::default();
        let ones = DiagCubic::from_ints([1, 1, 1, 1]).unwrap();
        let w = ff_point_exists(&ones, 2, 1, &cfg).unwrap().unwrap();
        assert_eq!(w.coords, vec![vec![1], vec![1], vec![0], vec![0]]);
        assert!(ff_point_exists(&ones, 2, 2, &cfg).unwrap().is_some());
        let c = DiagCubic::from_ints([1, 7, 49, -3]).unwrap();
        assert!(matches!(ff_point_exists(&c, 7, 1, &cfg), Err(Error::NotUnit { .. })));
    }
}

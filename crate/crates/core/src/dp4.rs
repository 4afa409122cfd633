//! Degree-4 del Pezzo surfaces `X = {Q_a = Q_b = 0} ⊂ P⁴` for diagonal
//! pencils: smoothness, the sixteen lines from the closed formula, their
//! intersection matrix, and the Galois action on them.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::linalg::{mat_mul, rank, row_reduce, solve};
use crate::arith::{Factorizer, Rat, SignCharacter, SqrtCombo};
use crate::error::{Error, Result};
use crate::exec::{self, Parallelism};
use crate::quadform::diagonal_pairing;

/// Two diagonal quinary forms `Σ a_i T_i²`, `Σ b_i T_i²` with all `a_i != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricPencil {
    a: [Rat; 5],
    b: [Rat; 5],
}

impl QuadricPencil {
    pub fn new(a: Vec<Rat>, b: Vec<Rat>) -> Result<Self> {
        let a: [Rat; 5] = a
            .try_into()
            .map_err(|v: Vec<Rat>| Error::LengthMismatch { expected: 5, got: v.len() })?;
        let b: [Rat; 5] = b
            .try_into()
            .map_err(|v: Vec<Rat>| Error::LengthMismatch { expected: 5, got: v.len() })?;
        if a.iter().any(Zero::is_zero) {
            return Err(Error::invalid(
                "first form must have all coefficients nonzero (swap or combine the forms)",
            ));
        }
        Ok(QuadricPencil { a, b })
    }

    pub fn from_ints(a: [i64; 5], b: [i64; 5]) -> Result<Self> {
        let conv = |v: [i64; 5]| v.iter().map(|&x| Rat::from_integer(x.into())).collect();
        QuadricPencil::new(conv(a), conv(b))
    }

    pub fn a(&self) -> &[Rat; 5] {
        &self.a
    }

    pub fn b(&self) -> &[Rat; 5] {
        &self.b
    }

    /// `d_ij = a_i b_j − a_j b_i`.
    pub fn dij(&self) -> [[Rat; 5]; 5] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.a[i] * &self.b[j] - &self.a[j] * &self.b[i])
        })
    }

    /// First `(i, j)`, `i < j`, with `d_ij = 0`.
    pub fn degenerate_pair(&self) -> Option<(usize, usize)> {
        let d = self.dij();
        (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).find(|&(i, j)| d[i][j].is_zero())
    }

    /// Smooth iff no `d_ij` vanishes.
    pub fn is_smooth(&self) -> bool {
        self.degenerate_pair().is_none()
    }

    /// The six rational radicands of the line formula, before taking roots:
    /// three for the point `(x_0, x_1, x_2, 1, 0)` and three for
    /// `(y_0, y_1, y_2, 0, 1)`.
    pub fn line_radicands(&self) -> Result<[Rat; 6]> {
        if let Some((i, j)) = self.degenerate_pair() {
            return Err(Error::NonSmooth { i, j });
        }
        let d = self.dij();
        let r = |num: [(usize, usize); 3], den: [(usize, usize); 3]| -> Rat {
            let prod = |ix: [(usize, usize); 3]| {
                ix.iter().fold(Rat::one(), |acc, &(i, j)| acc * &d[i][j])
            };
            prod(num) / prod(den)
        };
        Ok([
            r([(1, 3), (2, 3), (0, 4)], [(0, 1), (2, 0), (3, 4)]),
            r([(2, 3), (0, 3), (1, 4)], [(1, 2), (0, 1), (3, 4)]),
            r([(0, 3), (1, 3), (2, 4)], [(2, 0), (1, 2), (3, 4)]),
            r([(1, 4), (2, 4), (0, 3)], [(0, 1), (2, 0), (4, 3)]),
            r([(2, 4), (0, 4), (1, 3)], [(1, 2), (0, 1), (4, 3)]),
            r([(0, 4), (1, 4), (2, 3)], [(2, 0), (1, 2), (4, 3)]),
        ])
    }

    /// Both forms vanish on `v`.
    pub fn contains_point(&self, v: &[SqrtCombo]) -> bool {
        diagonal_pairing(&self.a, v, v).is_zero() && diagonal_pairing(&self.b, v, v).is_zero()
    }

    /// The four vanishing checks (two isotropy, two orthogonality) that put
    /// the whole line through `u` and `v` on `X`.
    pub fn contains_line(&self, line: &LineP4) -> bool {
        self.contains_point(&line.p)
            && self.contains_point(&line.q)
            && diagonal_pairing(&self.a, &line.p, &line.q).is_zero()
            && diagonal_pairing(&self.b, &line.p, &line.q).is_zero()
    }
}

/// A line in `P⁴` spanned by two points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineP4 {
    pub p: Vec<SqrtCombo>,
    pub q: Vec<SqrtCombo>,
}

impl LineP4 {
    pub fn new(p: Vec<SqrtCombo>, q: Vec<SqrtCombo>) -> Result<Self> {
        for v in [&p, &q] {
            if v.len() != 5 {
                return Err(Error::LengthMismatch { expected: 5, got: v.len() });
            }
        }
        let line = LineP4 { p, q };
        if rank(&line.rows()) != 2 {
            return Err(Error::invalid("spanning points are dependent"));
        }
        Ok(line)
    }

    fn rows(&self) -> Vec<Vec<SqrtCombo>> {
        vec![self.p.clone(), self.q.clone()]
    }

    fn stacked(&self, other: &LineP4) -> Vec<Vec<SqrtCombo>> {
        vec![self.p.clone(), self.q.clone(), other.p.clone(), other.q.clone()]
    }

    /// Reduced row echelon form of the 2×5 span matrix; equal lines have
    /// equal canonical forms.
    pub fn canonical(&self) -> [Vec<SqrtCombo>; 2] {
        let mut m = self.rows();
        row_reduce(&mut m);
        let q = m.pop().expect("two rows");
        let p = m.pop().expect("two rows");
        [p, q]
    }

    pub fn conjugate(&self, chi: &SignCharacter) -> LineP4 {
        LineP4 {
            p: self.p.iter().map(|x| chi.apply(x)).collect(),
            q: self.q.iter().map(|x| chi.apply(x)).collect(),
        }
    }
}

/// Same line: the stacked 4×5 matrix has rank 2.
pub fn line_equal(l1: &LineP4, l2: &LineP4) -> bool {
    rank(&l1.stacked(l2)) == 2
}

/// 1 if distinct lines meet (stacked rank ≤ 3), 0 if they are skew.
pub fn line_incidence(l1: &LineP4, l2: &LineP4) -> Result<u8> {
    match rank(&l1.stacked(l2)) {
        2 => Err(Error::invalid("line_incidence called on equal lines")),
        3 => Ok(1),
        _ => Ok(0),
    }
}

/// Signs `(ε_0, ε_1, ε_2, δ)` selecting one of the sixteen lines. Index bit
/// `k` set means the `k`-th sign is `−1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SignChoice {
    pub eps: [i8; 3],
    pub delta: i8,
}

impl SignChoice {
    pub fn from_index(i: usize) -> Self {
        let s = |k: usize| if i >> k & 1 == 1 { -1 } else { 1 };
        SignChoice { eps: [s(0), s(1), s(2)], delta: s(3) }
    }

    pub fn index(&self) -> usize {
        let b = |s: i8, k: usize| if s < 0 { 1 << k } else { 0 };
        b(self.eps[0], 0) + b(self.eps[1], 1) + b(self.eps[2], 2) + b(self.delta, 3)
    }
}

/// The sixteen lines with their intersection matrix.
#[derive(Clone, Debug)]
pub struct LineSystem {
    pub lines: Vec<LineP4>,
    pub signs: Vec<SignChoice>,
    /// Intersection numbers; diagonal is the self-intersection −1.
    pub gram: Vec<Vec<i64>>,
    /// `-1` and the primes generating the square classes of all radicands.
    pub generators: Vec<BigInt>,
    /// Signs fixed on the second point's roots so both points are orthogonal.
    pub base_signs: [i8; 3],
    canonical: HashMap<[Vec<SqrtCombo>; 2], usize>,
}

#[derive(Serialize)]
struct LineSystemRepr<'a> {
    /// Two spanning points per line, in line order.
    points: Vec<&'a Vec<SqrtCombo>>,
    signs: &'a [SignChoice],
    gram: &'a [Vec<i64>],
    generators: Vec<String>,
}

impl Serialize for LineSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LineSystemRepr {
            points: self.lines.iter().flat_map(|l| [&l.p, &l.q]).collect(),
            signs: &self.signs,
            gram: &self.gram,
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
        }
        .serialize(s)
    }
}

/// The sixteen lines of a smooth diagonal pencil.
pub fn sixteen_lines(pencil: &QuadricPencil) -> Result<LineSystem> {
    sixteen_lines_with(pencil, &Factorizer::default(), Parallelism::default())
}

pub fn sixteen_lines_with(
    pencil: &QuadricPencil,
    factorizer: &Factorizer,
    parallelism: Parallelism,
) -> Result<LineSystem> {
    let radicands = pencil.line_radicands()?;
    let roots = radicands
        .iter()
        .map(|r| crate::arith::sqrt_combo_root(r, factorizer))
        .collect::<Result<Vec<_>>>()?;
    let (x, y) = roots.split_at(3);

    // The formula's roots must be chosen coherently: keep the canonical roots
    // on the first point and fix the first sign pattern on the second that
    // makes the two points orthogonal for both forms.
    let point = |eps: [i8; 3], signs: [i8; 3], vals: &[SqrtCombo], tail: [i64; 2]| {
        let mut v: Vec<SqrtCombo> = (0..3)
            .map(|k| if eps[k] * signs[k] < 0 { -&vals[k] } else { vals[k].clone() })
            .collect();
        v.extend(tail.iter().map(|&t| SqrtCombo::from_int(t)));
        v
    };
    let first = point([1, 1, 1], [1, 1, 1], x, [1, 0]);
    let base_signs = [[1, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1]]
        .into_iter()
        .find(|&s| {
            let second = point([1, 1, 1], s, y, [0, 1]);
            diagonal_pairing(pencil.a(), &first, &second).is_zero()
                && diagonal_pairing(pencil.b(), &first, &second).is_zero()
        })
        .ok_or_else(|| Error::verification("no coherent choice of square roots"))?;

    let signs: Vec<SignChoice> = (0..16).map(SignChoice::from_index).collect();
    let lines = signs
        .iter()
        .map(|s| {
            let second_signs = std::array::from_fn(|k| s.delta * base_signs[k]);
            LineP4::new(point(s.eps, [1, 1, 1], x, [1, 0]), point(s.eps, second_signs, y, [0, 1]))
        })
        .collect::<Result<Vec<_>>>()?;
    for (i, line) in lines.iter().enumerate() {
        if !pencil.contains_line(line) {
            return Err(Error::verification(format!("line {i} does not lie on X")));
        }
    }

    let mut canonical = HashMap::new();
    for (i, line) in lines.iter().enumerate() {
        if let Some(j) = canonical.insert(line.canonical(), i) {
            return Err(Error::verification(format!("lines {j} and {i} coincide")));
        }
    }

    let pairs: Vec<(usize, usize)> =
        (0..16).flat_map(|i| (i + 1..16).map(move |j| (i, j))).collect();
    let incidences = exec::map_collect(pairs.len() as u64, parallelism, |k| {
        let (i, j) = pairs[k as usize];
        line_incidence(&lines[i], &lines[j])
    });
    let mut gram = vec![vec![0i64; 16]; 16];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let v = incidences[k].clone()? as i64;
        gram[i][j] = v;
        gram[j][i] = v;
    }
    for (i, row) in gram.iter_mut().enumerate() {
        row[i] = -1;
    }

    let mut generators: Vec<BigInt> = Vec::new();
    for r in &radicands {
        generators.extend(factorizer.square_class_generators(&(r.numer() * r.denom()))?);
    }
    generators.sort();
    generators.dedup();

    let system = LineSystem { lines, signs, gram, generators, base_signs, canonical };
    system.check_invariants()?;
    Ok(system)
}

impl LineSystem {
    /// Symmetric, diagonal −1, off-diagonal 0/1, five neighbours per line,
    /// rank 6.
    pub fn check_invariants(&self) -> Result<()> {
        let g = &self.gram;
        for i in 0..16 {
            if g[i][i] != -1 {
                return Err(Error::verification(format!("gram[{i}][{i}] != -1")));
            }
            for j in 0..16 {
                if g[i][j] != g[j][i] || (i != j && !(0..=1).contains(&g[i][j])) {
                    return Err(Error::verification(format!("bad gram entry ({i}, {j})")));
                }
            }
            let degree: i64 = g[i].iter().sum::<i64>() + 1;
            if degree != 5 {
                return Err(Error::verification(format!("line {i} meets {degree} others, not 5")));
            }
        }
        let r = gram_rank(g);
        if r != 6 {
            return Err(Error::verification(format!("gram has rank {r}, expected 6")));
        }
        Ok(())
    }

    /// Index of the line equal to `line`, if it is one of the sixteen.
    pub fn index_of(&self, line: &LineP4) -> Option<usize> {
        self.canonical.get(&line.canonical()).copied()
    }

    /// The permutation of line indices induced by `chi`.
    pub fn permutation(&self, chi: &SignCharacter) -> Result<Vec<usize>> {
        self.lines
            .iter()
            .enumerate()
            .map(|(i, l)| {
                self.index_of(&l.conjugate(chi)).ok_or_else(|| {
                    Error::invalid(format!("{chi:?} sends line {i} off the sixteen lines"))
                })
            })
            .collect()
    }

    /// All `2^k` characters on the recorded generators.
    pub fn full_group(&self) -> Vec<SignCharacter> {
        SignCharacter::group(&self.generators)
    }

    pub fn gram_rank(&self) -> usize {
        gram_rank(&self.gram)
    }
}

fn gram_rank(g: &[Vec<i64>]) -> usize {
    rank(&to_rat(g))
}

fn to_rat(g: &[Vec<i64>]) -> Vec<Vec<Rat>> {
    g.iter().map(|row| row.iter().map(|&x| Rat::from_integer(x.into())).collect()).collect()
}

fn permutations(system: &LineSystem, chars: &[SignCharacter]) -> Result<Vec<Vec<usize>>> {
    if chars.is_empty() || !SignCharacter::is_group(chars) {
        return Err(Error::invalid("characters do not form a group"));
    }
    chars.iter().map(|chi| system.permutation(chi)).collect()
}

/// Orbits of the group `chars` on the sixteen lines, each sorted, ordered by
/// least element.
pub fn galois_orbits(system: &LineSystem, chars: &[SignCharacter]) -> Result<Vec<Vec<usize>>> {
    let perms = permutations(system, chars)?;
    let n = system.lines.len();
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![start];
        orbit_of[start] = id;
        let mut k = 0;
        while k < orbit.len() {
            let i = orbit[k];
            for perm in &perms {
                let j = perm[i];
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    orbit.push(j);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Rank of the invariants of `chars` in `Q¹⁶ / ker(gram)`: the rank of
/// `gram · R` with `R` the averaging (Reynolds) operator of the induced
/// permutation action.
pub fn invariant_picard_rank(system: &LineSystem, chars: &[SignCharacter]) -> Result<usize> {
    let perms = permutations(system, chars)?;
    let n = system.lines.len();
    let weight = Rat::new(BigInt::one(), BigInt::from(perms.len()));
    let mut reynolds = vec![vec![Rat::zero(); n]; n];
    for perm in &perms {
        for (j, &i) in perm.iter().enumerate() {
            reynolds[i][j] += &weight;
        }
    }
    Ok(rank(&mat_mul(&to_rat(&system.gram), &reynolds)))
}

/// A class `h = Σ c_i L_i` with `h·L_i = 1` for every line, if one exists.
pub fn anticanonical_class(gram: &[Vec<i64>]) -> Option<Vec<Rat>> {
    let n = gram.len();
    if gram.iter().any(|row| row.len() != n) {
        return None;
    }
    solve(&to_rat(gram), &vec![Rat::one(); n])
}

/// True iff the gram matrix is symmetric and some `h` in the span of the
/// lines has `h·L_i = 1` for all `i` and `h·h = 4`.
pub fn verify_anticanonical(gram: &[Vec<i64>]) -> bool {
    let n = gram.len();
    let symmetric = gram.iter().all(|r| r.len() == n)
        && (0..n).all(|i| (0..n).all(|j| gram[i][j] == gram[j][i]));
    if !symmetric {
        return false;
    }
    match anticanonical_class(gram) {
        // h·L_i = 1 for all i, so h·h = Σ c_i.
        Some(c) => c.iter().fold(Rat::zero(), |acc, x| acc + x) == Rat::from_integer(4.into()),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn sample() -> QuadricPencil {
        QuadricPencil::from_ints([1, 1, 1, 1, 1], [2, 3, 5, 7, 11]).unwrap()
    }

    #[test]
    fn dij_examples() {
        let d = sample().dij();
        assert_eq!(d[0][1], rat(1));
        assert_eq!(d[2][0], rat(-3));
        assert_eq!(d[3][4], rat(4));
        let same = QuadricPencil::from_ints([1, 2, 3, 4, 5], [1, 2, 3, 4, 5]).unwrap();
        assert!(same.dij().iter().flatten().all(Zero::is_zero));
    }

    #[test]
    fn smoothness_examples() {
        assert!(sample().is_smooth());
        let same = QuadricPencil::from_ints([1, 1, 1, 1, 1], [1, 1, 1, 1, 1]).unwrap();
        assert!(!same.is_smooth());
        let bad = QuadricPencil::from_ints([1, 1, 1, 1, 1], [2, 2, 5, 7, 11]).unwrap();
        assert_eq!(bad.degenerate_pair(), Some((0, 1)));
        assert!(matches!(sixteen_lines(&bad), Err(Error::NonSmooth { i: 0, j: 1 })));
    }

    #[test]
    fn pencil_input_validation() {
        assert!(QuadricPencil::from_ints([0, 1, 1, 1, 1], [2, 3, 5, 7, 11]).is_err());
        assert!(matches!(
            QuadricPencil::new(vec![rat(1); 4], vec![rat(1); 5]),
            Err(Error::LengthMismatch { expected: 5, got: 4 })
        ));
    }

    #[test]
    fn sign_choice_indexing() {
        for i in 0..16 {
            assert_eq!(SignChoice::from_index(i).index(), i);
        }
        assert_eq!(SignChoice::from_index(0), SignChoice { eps: [1, 1, 1], delta: 1 });
    }

    #[test]
    fn line_equality_and_incidence() {
        let s = sixteen_lines(&sample()).unwrap();
        let l = &s.lines[0];
        assert!(line_equal(l, l));
        let swapped = LineP4::new(l.q.clone(), l.p.clone()).unwrap();
        assert!(line_equal(l, &swapped));
        assert_eq!(s.index_of(&swapped), Some(0));
        // (−,+,+,+) is index 1
        assert!(!line_equal(&s.lines[0], &s.lines[1]));
        assert!(line_incidence(l, l).is_err());
        for j in 1..16 {
            let r = rank(&s.lines[0].stacked(&s.lines[j]));
            assert_eq!(line_incidence(&s.lines[0], &s.lines[j]).unwrap(), (r == 3) as u8);
        }
    }

    #[test]
    fn forged_gram_is_rejected() {
        let s = sixteen_lines(&sample()).unwrap();
        assert!(verify_anticanonical(&s.gram));
        let mut forged = s.gram.clone();
        forged[0][1] = 1 - forged[0][1];
        assert!(!verify_anticanonical(&forged));
        // A line meeting nothing cannot have h·L = 1.
        let mut zeroed = s.gram.clone();
        for k in 0..16 {
            zeroed[0][k] = 0;
            zeroed[k][0] = 0;
        }
        assert!(!verify_anticanonical(&zeroed));
    }
}

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::sqrt_combo::SqrtCombo;

/// A `{±1}`-valued character on square classes, given by the generators it
/// flips. Generators are `-1` and primes (any pairwise-coprime set works).
///
/// `χ(m)` is the product of `-1` over flipped generators dividing `m`, where
/// `-1` "divides" exactly the negative classes.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignCharacter {
    flipped: BTreeSet<BigInt>,
}

impl SignCharacter {
    pub fn identity() -> Self {
        SignCharacter::default()
    }

    pub fn new(flipped: impl IntoIterator<Item = BigInt>) -> Self {
        SignCharacter { flipped: flipped.into_iter().collect() }
    }

    pub fn flip(generators: &[i64]) -> Self {
        SignCharacter::new(generators.iter().map(|&g| BigInt::from(g)))
    }

    pub fn flipped(&self) -> impl Iterator<Item = &BigInt> {
        self.flipped.iter()
    }

    pub fn is_identity(&self) -> bool {
        self.flipped.is_empty()
    }

    /// `+1` or `-1` on the square class of `m != 0`.
    pub fn value(&self, m: &BigInt) -> i8 {
        let mut sign = 1;
        for g in &self.flipped {
            let hit = if g == &BigInt::from(-1) {
                m.is_negative()
            } else {
                !g.is_zero() && !g.is_one() && m.is_multiple_of(g)
            };
            if hit {
                sign = -sign;
            }
        }
        sign
    }

    /// `χ∘χ'`: flips compose by symmetric difference.
    pub fn compose(&self, other: &SignCharacter) -> SignCharacter {
        SignCharacter {
            flipped: self.flipped.symmetric_difference(&other.flipped).cloned().collect(),
        }
    }

    pub fn apply(&self, x: &SqrtCombo) -> SqrtCombo {
        if self.is_identity() {
            return x.clone();
        }
        let mut out = SqrtCombo::zero();
        for (m, c) in x.terms() {
            let c = if self.value(m) < 0 { -c } else { c.clone() };
            out = &out + &SqrtCombo::from_parts(m.clone(), c);
        }
        out
    }

    /// All `2^k` characters flipping subsets of `generators`.
    pub fn group(generators: &[BigInt]) -> Vec<SignCharacter> {
        let k = generators.len();
        (0u64..1 << k)
            .map(|mask| {
                SignCharacter::new(
                    (0..k).filter(|i| mask >> i & 1 == 1).map(|i| generators[i].clone()),
                )
            })
            .collect()
    }

    /// Closure of `gens` under composition (includes the identity).
    pub fn generated(gens: &[SignCharacter]) -> Vec<SignCharacter> {
        let mut set: BTreeSet<SignCharacter> = BTreeSet::new();
        set.insert(SignCharacter::identity());
        for g in gens {
            let snapshot: Vec<_> = set.iter().cloned().collect();
            for h in snapshot {
                set.insert(h.compose(g));
            }
        }
        set.into_iter().collect()
    }

    /// True iff `chars` contains the identity and is closed under composition.
    pub fn is_group(chars: &[SignCharacter]) -> bool {
        let set: BTreeSet<&SignCharacter> = chars.iter().collect();
        set.contains(&SignCharacter::identity())
            && chars.iter().all(|a| chars.iter().all(|b| set.contains(&a.compose(b))))
    }
}

impl fmt::Debug for SignCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.flipped.iter().map(|g| g.to_string()).collect();
        write!(f, "flip{{{}}}", gens.join(","))
    }
}

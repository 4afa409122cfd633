//! Finite fields `F_{p^f}` with table-driven arithmetic.
//!
//! An element is a `u32` whose base-`p` digits are its coefficients in the
//! polynomial basis `1, x, .., x^(f-1)` (digit `i` is the coefficient of
//! `x^i`). The modulus is the least monic irreducible of degree `f`, where
//! polynomials are compared by that same integer encoding of their
//! non-leading coefficients.

use serde::{Deserialize, Serialize};

use crate::arith::Rat;
use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 22;
const ADD_TABLE_LIMIT: u32 = 1024;

#[derive(Clone)]
pub struct GaloisField {
    p: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a primitive `g`, stored twice over for unreduced sums.
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl std::fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.degree, self.modulus)
    }
}

impl GaloisField {
    pub fn new(p: u64, degree: u32) -> Result<Self> {
        if !crate::arith::is_prime_u64(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        if degree == 0 {
            return Err(Error::invalid("field degree must be at least 1"));
        }
        let order = (p as u128).checked_pow(degree).unwrap_or(u128::MAX);
        if order > MAX_FIELD_ORDER as u128 {
            return Err(Error::BudgetExceeded {
                candidates: order,
                budget: MAX_FIELD_ORDER as u128,
            });
        }
        let (p, order) = (p as u32, order as u32);
        let modulus = least_irreducible(p, degree);
        let mut field = GaloisField {
            p,
            degree,
            order,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: None,
        };
        field.build_tables();
        Ok(field)
    }

    fn build_tables(&mut self) {
        let q = self.order;
        let n = q - 1;
        let prime_factors = crate::arith::distinct_prime_factors_u64(n as u64);
        let generator = (1..q)
            .find(|&g| {
                prime_factors.iter().all(|&r| self.slow_pow(g, (n as u64 / r) as u32) != 1)
            })
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1;
        for i in 0..n {
            exp[i as usize] = x;
            exp[(i + n) as usize] = x;
            log[x as usize] = i;
            x = self.slow_mul(x, generator);
        }
        self.exp = exp;
        self.log = log;
        if self.degree > 1 && q <= ADD_TABLE_LIMIT {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = self.digit_add(a, b);
                }
            }
            self.add_table = Some(table);
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Monic modulus, coefficients low to high.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.order
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.degree == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if let Some(t) = &self.add_table {
            t[(a * self.order + b) as usize]
        } else {
            self.digit_add(a, b)
        }
    }

    fn digit_add(&self, mut a: u32, mut b: u32) -> u32 {
        let (mut out, mut place) = (0, 1);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.order - 1) as u64;
        let l = (self.log[a as usize] as u64 * (e % n)) % n;
        self.exp[l as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            let n = self.order - 1;
            Some(self.exp[((n - self.log[a as usize]) % n) as usize])
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// Reduction of a `p`-integral unit rational.
    pub fn reduce(&self, q: &Rat) -> Result<u32> {
        let p = num_bigint::BigInt::from(self.p);
        let num = q.numer() % &p;
        let den = q.denom() % &p;
        let not_unit = || Error::NotUnit { value: crate::arith::format_rat(q), p: self.p as u64 };
        if num == 0.into() || den == 0.into() {
            return Err(not_unit());
        }
        let to_u = |v: num_bigint::BigInt| -> u32 {
            let r: i64 = (((v % &p) + &p) % &p).try_into().expect("reduced below p");
            r as u32
        };
        let (num, den) = (to_u(num), to_u(den));
        Ok(self.mul(num, self.inv(den).expect("unit")))
    }

    pub fn coefficients(&self, a: u32) -> Vec<u32> {
        digits(a, self.p, self.degree)
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<u32> {
        if coeffs.len() > self.degree as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::invalid(format!("bad coefficients {coeffs:?} for {self:?}")));
        }
        Ok(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c))
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.log[a as usize] % 2 == 0 || self.p == 2
    }

    /// The field embedding `self -> larger`, as the image of every element.
    /// The generator `x` goes to the least root of the modulus in `larger`.
    pub fn embedding_into(&self, larger: &GaloisField) -> Result<Vec<u32>> {
        if larger.p != self.p || larger.degree % self.degree != 0 {
            return Err(Error::invalid(format!("{self:?} does not embed in {larger:?}")));
        }
        let root = larger
            .elements()
            .find(|&z| {
                let v = self
                    .modulus
                    .iter()
                    .rev()
                    .fold(0, |acc, &c| larger.add(larger.mul(acc, z), c));
                v == 0
            })
            .ok_or_else(|| Error::verification("irreducible modulus has no root in extension"))?;
        Ok(self
            .elements()
            .map(|a| {
                self.coefficients(a)
                    .iter()
                    .rev()
                    .fold(0, |acc, &c| larger.add(larger.mul(acc, root), c))
            })
            .collect())
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (p, f) = (self.p as u64, self.degree as usize);
        let a = digits(a, self.p, self.degree);
        let b = digits(b, self.p, self.degree);
        let mut prod = vec![0u64; 2 * f];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (f..2 * f).rev() {
            let c = prod[k];
            if c != 0 {
                for (i, &m) in self.modulus.iter().enumerate().take(f) {
                    let idx = k - f + i;
                    prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
                }
                prod[k] = 0;
            }
        }
        prod[..f].iter().rev().fold(0, |acc, &c| acc * self.p + c as u32)
    }

    fn slow_pow(&self, a: u32, mut e: u32) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }
}

fn digits(mut a: u32, p: u32, len: u32) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

/// Remainder of `g` modulo the monic `h` (both low to high) over `F_p`.
fn poly_rem(g: &[u32], h: &[u32], p: u32) -> Vec<u32> {
    let p64 = p as u64;
    let mut r: Vec<u64> = g.iter().map(|&c| c as u64).collect();
    let dh = h.len() - 1;
    while r.len() > dh {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dh;
        if c != 0 {
            for (i, &hc) in h.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p64 - c) * hc as u64 % p64) % p64;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn monic(idx: u32, p: u32, degree: u32) -> Vec<u32> {
    let mut poly = digits(idx, p, degree);
    poly.push(1);
    poly
}

fn is_irreducible(g: &[u32], p: u32) -> bool {
    let degree = g.len() as u32 - 1;
    for d in 1..=degree / 2 {
        for idx in 0..p.pow(d) {
            let h = monic(idx, p, d);
            if poly_rem(g, &h, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u32, degree: u32) -> Vec<u32> {
    (0..p.pow(degree))
        .map(|idx| monic(idx, p, degree))
        .find(|g| is_irreducible(g, p))
        .expect("irreducible polynomials exist in every degree")
}

/// A vector over `F_{p^f}`; coordinates serialize as coefficient lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FFVector {
    pub p: u32,
    pub f: u32,
    pub coords: Vec<Vec<u32>>,
}

impl FFVector {
    pub fn from_elements(field: &GaloisField, elems: &[u32]) -> Self {
        FFVector {
            p: field.characteristic(),
            f: field.degree(),
            coords: elems.iter().map(|&e| field.coefficients(e)).collect(),
        }
    }

    pub fn to_elements(&self, field: &GaloisField) -> Result<Vec<u32>> {
        if field.characteristic() != self.p || field.degree() != self.f {
            return Err(Error::invalid("vector belongs to a different field"));
        }
        self.coords.iter().map(|c| field.from_coefficients(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.iter().all(|&d| d == 0))
    }
}

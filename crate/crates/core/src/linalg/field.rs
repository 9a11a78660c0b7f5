//! Arithmetic in GF(p^e) for small q.
//!
//! Elements are encoded as integers in `0..q`: the base-p digits of an
//! element are the coefficients of its polynomial representative modulo the
//! stored irreducible polynomial (constant digit first). For q <= 256 all
//! products and inverses are table driven; above that they fall back to
//! modular polynomial arithmetic.

use crate::error::{ModRepError, Result};
use std::fmt;
use std::sync::Arc;

pub type Elt = u16;

const TABLE_LIMIT: u64 = 256;
const Q_LIMIT: u64 = 1 << 14;

/// Conway polynomials for the small fields shipped as builtins, as
/// coefficient vectors over GF(p), constant term first, leading 1 included.
fn conway(p: u64, e: u32) -> Option<Vec<u16>> {
    let c: &[u16] = match (p, e) {
        (2, 1) => &[1, 1],
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 1, 1, 0, 1],
        (2, 8) => &[1, 0, 1, 1, 1, 0, 0, 0, 1],
        (3, 1) => &[1, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 0, 0, 2, 1],
        (5, 1) => &[3, 1],
        (5, 2) => &[2, 4, 1],
        (5, 3) => &[3, 3, 0, 1],
        (7, 1) => &[4, 1],
        (7, 2) => &[3, 6, 1],
        (11, 1) => &[9, 1],
        (11, 2) => &[2, 7, 1],
        (13, 1) => &[11, 1],
        (13, 2) => &[2, 12, 1],
        _ => return None,
    };
    Some(c.to_vec())
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

struct FieldData {
    p: u64,
    e: u32,
    q: u64,
    /// modulus polynomial, constant first, degree e, monic
    modulus: Vec<u16>,
    /// q*q multiplication table when q <= TABLE_LIMIT, else empty
    mul_table: Vec<Elt>,
    /// inverse table (index 0 unused) when tabled
    inv_table: Vec<Elt>,
}

/// A handle to GF(p^e). Cheap to clone; equality means same (p, e, modulus).
#[derive(Clone)]
pub struct Fq(Arc<FieldData>);

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.e == other.0.e
                && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.e)
        }
    }
}

impl Fq {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Fq> {
        Fq::new(p, 1, None)
    }

    /// GF(p^e) with the builtin Conway polynomial.
    pub fn gf(p: u64, e: u32) -> Result<Fq> {
        Fq::new(p, e, None)
    }

    /// GF(q) for a prime power q, factoring q as p^e.
    pub fn from_order(q: u64) -> Result<Fq> {
        if q < 2 {
            return Err(ModRepError::NotPrime(q));
        }
        let mut p = 2;
        while p * p <= q {
            if q % p == 0 {
                break;
            }
            p += 1;
        }
        if q % p != 0 {
            return Fq::prime(q);
        }
        let mut e = 0;
        let mut m = q;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if m != 1 {
            return Err(ModRepError::NotPrime(q));
        }
        Fq::new(p, e, None)
    }

    /// GF(p^e) with an explicit monic irreducible modulus (constant term
    /// first, length e+1) or the builtin Conway polynomial when `None`.
    pub fn new(p: u64, e: u32, modulus: Option<Vec<u16>>) -> Result<Fq> {
        if !is_prime(p) {
            return Err(ModRepError::NotPrime(p));
        }
        if e == 0 {
            return Err(ModRepError::Precondition("extension degree must be >= 1".into()));
        }
        let q = p.checked_pow(e).filter(|&q| q <= Q_LIMIT).ok_or_else(|| {
            ModRepError::ResourceBound(format!("field size {}^{} exceeds supported bound", p, e))
        })?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1
                    || m[e as usize] != 1
                    || m.iter().any(|&c| (c as u64) >= p)
                {
                    return Err(ModRepError::Precondition(
                        "modulus must be monic of degree e with coefficients in 0..p".into(),
                    ));
                }
                m
            }
            None => conway(p, e).ok_or_else(|| {
                ModRepError::Precondition(format!(
                    "no builtin modulus for GF({}^{}); supply one explicitly",
                    p, e
                ))
            })?,
        };
        if e > 1 && !poly_irreducible(&modulus, p) {
            return Err(ModRepError::ReducibleModulus);
        }
        let mut data = FieldData {
            p,
            e,
            q,
            modulus,
            mul_table: Vec::new(),
            inv_table: Vec::new(),
        };
        if q <= TABLE_LIMIT {
            let mut mt = vec![0 as Elt; (q * q) as usize];
            for a in 0..q {
                for b in a..q {
                    let v = mul_raw(&data, a as Elt, b as Elt);
                    mt[(a * q + b) as usize] = v;
                    mt[(b * q + a) as usize] = v;
                }
            }
            data.mul_table = mt;
            let mut it = vec![0 as Elt; q as usize];
            for a in 1..q {
                it[a as usize] = pow_raw(&data, a as Elt, q - 2);
            }
            data.inv_table = it;
        }
        Ok(Fq(Arc::new(data)))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn e(&self) -> u32 {
        self.0.e
    }
    pub fn q(&self) -> u64 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u16] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Elt {
        0
    }
    pub fn one(&self) -> Elt {
        1
    }

    /// The image of an integer under the unit map Z -> GF(q).
    pub fn from_int(&self, n: i64) -> Elt {
        let p = self.0.p as i64;
        (((n % p) + p) % p) as Elt
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        let d = &self.0;
        if d.e == 1 {
            let s = a as u64 + b as u64;
            (if s >= d.p { s - d.p } else { s }) as Elt
        } else {
            add_raw(d, a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        let d = &self.0;
        if d.e == 1 {
            (if a == 0 { 0 } else { d.p - a as u64 }) as Elt
        } else {
            neg_raw(d, a)
        }
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        let d = &self.0;
        if !d.mul_table.is_empty() {
            d.mul_table[a as usize * d.q as usize + b as usize]
        } else {
            mul_raw(d, a, b)
        }
    }

    pub fn inv(&self, a: Elt) -> Result<Elt> {
        if a == 0 {
            return Err(ModRepError::Precondition("division by zero".into()));
        }
        let d = &self.0;
        if !d.inv_table.is_empty() {
            Ok(d.inv_table[a as usize])
        } else {
            Ok(pow_raw(d, a, d.q - 2))
        }
    }

    pub fn div(&self, a: Elt, b: Elt) -> Result<Elt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elt, mut n: u64) -> Elt {
        let mut base = a;
        let mut acc: Elt = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Frobenius x -> x^p iterated `i` times.
    pub fn frobenius(&self, a: Elt, i: u32) -> Elt {
        let mut x = a;
        for _ in 0..(i % self.0.e) {
            x = self.pow(x, self.0.p);
        }
        x
    }

    /// Inverse Frobenius: the unique y with y^(p^i) = a.
    pub fn frobenius_inv(&self, a: Elt, i: u32) -> Elt {
        let e = self.0.e;
        self.frobenius(a, (e - (i % e)) % e)
    }

    /// All field elements, 0 first.
    pub fn elements(&self) -> impl Iterator<Item = Elt> + '_ {
        0..self.0.q as Elt
    }

    /// Render an element as a polynomial in the generator `a`.
    pub fn format_elt(&self, x: Elt) -> String {
        let d = &self.0;
        if d.e == 1 {
            return format!("{}", x);
        }
        let mut terms = Vec::new();
        let mut v = x as u64;
        for i in 0..d.e {
            let c = v % d.p;
            v /= d.p;
            if c != 0 {
                terms.push(match (i, c) {
                    (0, c) => format!("{}", c),
                    (1, 1) => "a".to_string(),
                    (1, c) => format!("{}a", c),
                    (i, 1) => format!("a^{}", i),
                    (i, c) => format!("{}a^{}", c, i),
                });
            }
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

fn digits(d: &FieldData, a: Elt) -> Vec<u64> {
    let mut v = a as u64;
    let mut out = Vec::with_capacity(d.e as usize);
    for _ in 0..d.e {
        out.push(v % d.p);
        v /= d.p;
    }
    out
}

fn undigits(d: &FieldData, c: &[u64]) -> Elt {
    let mut v = 0u64;
    for i in (0..d.e as usize).rev() {
        v = v * d.p + c[i] % d.p;
    }
    v as Elt
}

fn add_raw(d: &FieldData, a: Elt, b: Elt) -> Elt {
    let (x, y) = (digits(d, a), digits(d, b));
    let c: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % d.p).collect();
    undigits(d, &c)
}

fn neg_raw(d: &FieldData, a: Elt) -> Elt {
    let x = digits(d, a);
    let c: Vec<u64> = x.iter().map(|u| (d.p - u) % d.p).collect();
    undigits(d, &c)
}

fn mul_raw(d: &FieldData, a: Elt, b: Elt) -> Elt {
    let e = d.e as usize;
    let (x, y) = (digits(d, a), digits(d, b));
    let mut prod = vec![0u64; 2 * e - 1];
    for i in 0..e {
        if x[i] == 0 {
            continue;
        }
        for j in 0..e {
            prod[i + j] = (prod[i + j] + x[i] * y[j]) % d.p;
        }
    }
    // reduce mod the monic modulus
    for i in (e..2 * e - 1).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..e {
            let m = d.modulus[j] as u64;
            prod[i - e + j] = (prod[i - e + j] + c * (d.p - m) % d.p) % d.p;
        }
    }
    undigits(d, &prod[..e])
}

fn pow_raw(d: &FieldData, a: Elt, mut n: u64) -> Elt {
    let mut base = a;
    let mut acc: Elt = 1;
    while n > 0 {
        if n & 1 == 1 {
            acc = mul_raw(d, acc, base);
        }
        base = mul_raw(d, base, base);
        n >>= 1;
    }
    acc
}

/// Irreducibility of a monic polynomial over GF(p) by trial of all monic
/// divisors of degree <= deg/2. Degrees here are tiny.
fn poly_irreducible(modulus: &[u16], p: u64) -> bool {
    let deg = modulus.len() - 1;
    let trial = |dv: &[u64]| -> bool {
        // returns true if dv (monic, constant first) divides modulus
        let mut rem: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
        let dd = dv.len() - 1;
        for i in (dd..=deg).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            for j in 0..=dd {
                rem[i - dd + j] = (rem[i - dd + j] + c * (p - dv[j] % p) % p) % p;
            }
        }
        rem.iter().all(|&c| c == 0)
    };
    for dd in 1..=deg / 2 {
        // enumerate monic polynomials of degree dd
        let count = p.pow(dd as u32);
        for code in 0..count {
            let mut dv = Vec::with_capacity(dd + 1);
            let mut v = code;
            for _ in 0..dd {
                dv.push(v % p);
                v /= p;
            }
            dv.push(1);
            if trial(&dv) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axioms(f: &Fq) {
        let q = f.q() as Elt;
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn small_field_axioms() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)] {
            let f = Fq::gf(p, e).unwrap();
            axioms(&f);
        }
    }

    #[test]
    fn frobenius_round_trip() {
        let f = Fq::gf(2, 3).unwrap();
        for a in f.elements().collect::<Vec<_>>() {
            assert_eq!(f.frobenius(f.frobenius_inv(a, 1), 1), a);
            assert_eq!(f.pow(a, 8), a); // x^(q) = x
        }
    }

    #[test]
    fn gf4_has_cube_roots_of_unity() {
        let f = Fq::gf(2, 2).unwrap();
        let omegas: Vec<_> = f.elements().filter(|&a| a != 1 && f.pow(a, 3) == 1).collect();
        assert_eq!(omegas.len(), 2);
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 1 = (x+1)^2 over GF(2)
        assert!(Fq::new(2, 2, Some(vec![1, 0, 1])).is_err());
        assert!(Fq::prime(4).is_err());
    }
}

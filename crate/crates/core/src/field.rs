//! Exact scalar fields: the rationals, prime fields `F_p` and extension
//! fields `F_{p^k}` given by a monic irreducible modulus.
//!
//! A [`Field`] is a cheap-to-clone context object; [`Scalar`] values carry no
//! field information of their own, so all arithmetic goes through the field.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest extension degree supported for `F_{p^k}`.
pub const MAX_EXT_DEGREE: u32 = 8;

/// Field description as it appears in input files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldDesc {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Fp")]
    Prime { p: u32 },
    #[serde(rename = "Fpk")]
    Extension {
        p: u32,
        k: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<Vec<u32>>,
    },
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct ExtData {
    pub p: u32,
    pub k: usize,
    /// Monic modulus, low degree first, length `k + 1`.
    pub modulus: Vec<u32>,
}

/// A validated exact field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
    Ext(Arc<ExtData>),
}

/// An element of some [`Field`]. Rationals are kept in lowest terms with a
/// positive denominator, prime-field residues in `[0, p)`, and extension
/// elements as coefficient vectors of length `k` with entries in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Q(Box<BigRational>),
    Fp(u32),
    Fpk(Box<[u32]>),
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn from_desc(desc: &FieldDesc) -> Result<Field> {
        match *desc {
            FieldDesc::Rationals => Ok(Field::Rationals),
            FieldDesc::Prime { p } => Field::prime(p),
            FieldDesc::Extension { p, k, ref modulus } => match modulus {
                Some(m) => Field::extension(p, k, m.clone()),
                None => Field::extension_default(p, k),
            },
        }
    }

    pub fn desc(&self) -> FieldDesc {
        match self {
            Field::Rationals => FieldDesc::Rationals,
            Field::Prime(p) => FieldDesc::Prime { p: *p },
            Field::Ext(d) => FieldDesc::Extension {
                p: d.p,
                k: d.k as u32,
                modulus: Some(d.modulus.clone()),
            },
        }
    }

    pub fn prime(p: u32) -> Result<Field> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::BadField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn extension(p: u32, k: u32, modulus: Vec<u32>) -> Result<Field> {
        Field::prime(p)?;
        if k == 0 || k > MAX_EXT_DEGREE {
            return Err(Error::BadField(format!(
                "extension degree {k} outside 1..={MAX_EXT_DEGREE}"
            )));
        }
        let k = k as usize;
        if modulus.len() != k + 1 || modulus[k] != 1 {
            return Err(Error::BadField("modulus must be monic of degree k".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadField("modulus coefficients must lie in [0, p)".into()));
        }
        if !poly::is_irreducible(&modulus, p) {
            return Err(Error::BadField(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        Ok(Field::Ext(Arc::new(ExtData { p, k, modulus })))
    }

    /// `F_{p^k}` with the smallest monic irreducible modulus, ordering
    /// candidates by their lower coefficients read as a base-`p` integer.
    pub fn extension_default(p: u32, k: u32) -> Result<Field> {
        Field::prime(p)?;
        if k == 0 || k > MAX_EXT_DEGREE {
            return Err(Error::BadField(format!(
                "extension degree {k} outside 1..={MAX_EXT_DEGREE}"
            )));
        }
        let modulus = poly::first_irreducible(p, k as usize)
            .ok_or_else(|| Error::BadField("no irreducible modulus found".into()))?;
        Field::extension(p, k, modulus)
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
            Field::Ext(d) => d.p,
        }
    }

    /// Degree over the prime field (1 for `Q` and `F_p`).
    pub fn degree(&self) -> usize {
        match self {
            Field::Ext(d) => d.k,
            _ => 1,
        }
    }

    /// Number of elements, if finite and representable in a `u64`.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(*p as u64),
            Field::Ext(d) => (d.p as u64).checked_pow(d.k as u32),
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, Field::Rationals)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(Box::new(BigRational::zero())),
            Field::Prime(_) => Scalar::Fp(0),
            Field::Ext(d) => Scalar::Fpk(vec![0; d.k].into_boxed_slice()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(Box::new(BigRational::from_integer(BigInt::from(n)))),
            Field::Prime(p) => Scalar::Fp(n.rem_euclid(*p as i64) as u32),
            Field::Ext(d) => {
                let mut c = vec![0; d.k];
                c[0] = n.rem_euclid(d.p as i64) as u32;
                Scalar::Fpk(c.into_boxed_slice())
            }
        }
    }

    pub fn from_rational(&self, q: BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Q(Box::new(q))),
            _ => {
                let p = self.characteristic() as i64;
                let num = (q.numer() % BigInt::from(p)).to_i64().unwrap_or(0);
                let den = (q.denom() % BigInt::from(p)).to_i64().unwrap_or(0);
                let n = self.from_int(num);
                let d = self.from_int(den);
                self.div(&n, &d)
            }
        }
    }

    /// Checks that `a` is a canonical element of this field.
    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (Field::Rationals, Scalar::Q(_)) => true,
            (Field::Prime(p), Scalar::Fp(v)) => v < p,
            (Field::Ext(d), Scalar::Fpk(c)) => c.len() == d.k && c.iter().all(|&x| x < d.p),
            _ => false,
        }
    }

    #[inline]
    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp(v) => *v == 0,
            Scalar::Fpk(c) => c.iter().all(|&x| x == 0),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    #[inline]
    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                let s = *x as u64 + *y as u64;
                Scalar::Fp((s % *p as u64) as u32)
            }
            (Field::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(Box::new(&**x + &**y)),
            (Field::Ext(d), Scalar::Fpk(x), Scalar::Fpk(y)) => Scalar::Fpk(
                x.iter()
                    .zip(y.iter())
                    .map(|(&u, &v)| ((u as u64 + v as u64) % d.p as u64) as u32)
                    .collect(),
            ),
            _ => panic!("{}", Error::FieldMismatch),
        }
    }

    #[inline]
    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            (Field::Rationals, Scalar::Q(x)) => Scalar::Q(Box::new(-&**x)),
            (Field::Ext(d), Scalar::Fpk(x)) => Scalar::Fpk(
                x.iter().map(|&u| if u == 0 { 0 } else { d.p - u }).collect(),
            ),
            _ => panic!("{}", Error::FieldMismatch),
        }
    }

    #[inline]
    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                let s = *x as u64 + (*p - *y) as u64;
                Scalar::Fp((s % *p as u64) as u32)
            }
            (Field::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(Box::new(&**x - &**y)),
            _ => self.add(a, &self.neg(b)),
        }
    }

    #[inline]
    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (Field::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(Box::new(&**x * &**y)),
            (Field::Ext(d), Scalar::Fpk(x), Scalar::Fpk(y)) => {
                Scalar::Fpk(poly::mulmod(x, y, &d.modulus, d.p).into_boxed_slice())
            }
            _ => panic!("{}", Error::FieldMismatch),
        }
    }

    /// `acc + a * b`.
    #[inline]
    pub fn mul_add(&self, acc: &Scalar, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, acc, a, b) {
            (Field::Prime(p), Scalar::Fp(s), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*s as u64 + *x as u64 * *y as u64) % *p as u64) as u32)
            }
            _ => self.add(acc, &self.mul(a, b)),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => Scalar::Fp(inv_mod(*x, *p)),
            (Field::Rationals, Scalar::Q(x)) => Scalar::Q(Box::new(x.recip())),
            (Field::Ext(d), Scalar::Fpk(x)) => {
                Scalar::Fpk(poly::inv_mod_poly(x, &d.modulus, d.p).into_boxed_slice())
            }
            _ => return Err(Error::FieldMismatch),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        let bi = self.inv(b)?;
        Ok(self.mul(a, &bi))
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn check(&self, a: &Scalar) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn checked_sub(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sub(a, b))
    }

    pub fn checked_mul(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn checked_div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        self.check(b)?;
        self.div(a, b)
    }

    /// Element number `n` in the canonical enumeration of a finite field
    /// (base-`p` digits, lowest coefficient first).
    pub fn element(&self, mut n: u64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Fp((n % *p as u64) as u32),
            Field::Ext(d) => {
                let mut c = vec![0u32; d.k];
                for x in c.iter_mut() {
                    *x = (n % d.p as u64) as u32;
                    n /= d.p as u64;
                }
                Scalar::Fpk(c.into_boxed_slice())
            }
            Field::Rationals => self.from_int(n as i64),
        }
    }

    /// Inverse of [`Field::element`] for finite fields.
    pub fn index_of(&self, a: &Scalar) -> u64 {
        match a {
            Scalar::Fp(v) => *v as u64,
            Scalar::Fpk(c) => {
                let p = self.characteristic() as u64;
                c.iter().rev().fold(0u64, |acc, &x| acc * p + x as u64)
            }
            Scalar::Q(_) => 0,
        }
    }

    /// `count` distinct elements in canonical order (`0, 1, 2, …` for `Q`),
    /// or `None` if the field is too small.
    pub fn distinct_elements(&self, count: usize) -> Option<Vec<Scalar>> {
        if let Some(q) = self.order() {
            if (count as u64) > q {
                return None;
            }
        }
        Some((0..count as u64).map(|n| self.element(n)).collect())
    }

    /// Coordinates over the prime field (a single entry for `F_p`).
    pub fn prime_coords(&self, a: &Scalar) -> Option<Vec<u32>> {
        match a {
            Scalar::Fp(v) => Some(vec![*v]),
            Scalar::Fpk(c) => Some(c.to_vec()),
            Scalar::Q(_) => None,
        }
    }

    pub fn from_prime_coords(&self, c: &[u32]) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Fp(c[0] % p),
            Field::Ext(d) => Scalar::Fpk(c.iter().map(|x| x % d.p).collect()),
            Field::Rationals => panic!("rationals have no prime-field coordinates"),
        }
    }

    /// Parses a scalar from JSON: integers for every field, `"num/den"`
    /// strings for `Q` (also accepted by finite fields when the denominator
    /// is invertible), coefficient arrays for `F_{p^k}`.
    pub fn parse_json(&self, v: &serde_json::Value) -> Result<Scalar> {
        use serde_json::Value;
        match v {
            Value::Number(n) => {
                let n = n
                    .as_i64()
                    .ok_or_else(|| Error::Parse(format!("scalar {n} is not an integer")))?;
                Ok(self.from_int(n))
            }
            Value::String(s) => self.from_rational(parse_rational(s)?),
            Value::Array(a) => match self {
                Field::Ext(d) if a.len() <= d.k => {
                    let mut c = vec![0u32; d.k];
                    for (slot, x) in c.iter_mut().zip(a) {
                        let n = x
                            .as_i64()
                            .ok_or_else(|| Error::Parse("bad coefficient".into()))?;
                        *slot = n.rem_euclid(d.p as i64) as u32;
                    }
                    Ok(Scalar::Fpk(c.into_boxed_slice()))
                }
                _ => Err(Error::Parse("coefficient arrays only allowed for F_{p^k}".into())),
            },
            _ => Err(Error::Parse(format!("cannot read scalar from {v}"))),
        }
    }

    pub fn to_json(&self, a: &Scalar) -> serde_json::Value {
        use serde_json::Value;
        match a {
            Scalar::Q(q) => {
                if q.is_integer() {
                    if let Some(n) = q.numer().to_i64() {
                        return Value::from(n);
                    }
                }
                Value::from(q.to_string())
            }
            Scalar::Fp(v) => Value::from(*v),
            Scalar::Fpk(c) => Value::from(c.to_vec()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Ext(d) => write!(f, "F_{}^{}", d.p, d.k),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn inv_mod(x: u32, p: u32) -> u32 {
    let (mut a, mut b) = (x as i64, p as i64);
    let (mut u, mut v) = (1i64, 0i64);
    while b != 0 {
        let q = a / b;
        (a, b) = (b, a - q * b);
        (u, v) = (v, u - q * v);
    }
    u.rem_euclid(p as i64) as u32
}

/// Polynomials over `F_p`, coefficient vectors with the lowest degree first.
pub mod poly {
    use super::inv_mod;

    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p = p as u64;
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p;
            }
        }
        trim(out.into_iter().map(|x| x as u32).collect())
    }

    /// Remainder of `a` modulo a nonzero `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let m = trim(m.to_vec());
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p) as u64;
        let p64 = p as u64;
        while r.len() > dm {
            let dr = r.len() - 1;
            let c = (r[dr] as u64 * lead_inv) % p64;
            let shift = dr - dm;
            for (i, &mi) in m.iter().enumerate() {
                let t = (c * mi as u64) % p64;
                r[shift + i] = ((r[shift + i] as u64 + p64 - t) % p64) as u32;
            }
            r = trim(r);
        }
        r
    }

    /// Product of two residues modulo the monic `modulus`, padded to length `k`.
    pub fn mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
        let k = modulus.len() - 1;
        let mut r = rem(&mul(&trim(a.to_vec()), &trim(b.to_vec()), p), modulus, p);
        r.resize(k, 0);
        r
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let p64 = p as u64;
        let out = (0..n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0) as u64;
                let y = *b.get(i).unwrap_or(&0) as u64;
                ((x + p64 - y) % p64) as u32
            })
            .collect();
        trim(out)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Inverse of a nonzero residue modulo an irreducible `modulus`.
    pub fn inv_mod_poly(a: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
        let k = modulus.len() - 1;
        // extended Euclid on (modulus, a)
        let (mut r0, mut r1) = (modulus.to_vec(), trim(a.to_vec()));
        let (mut t0, mut t1): (Vec<u32>, Vec<u32>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = divmod(&r0, &r1, p);
            let t2 = sub(&t0, &mul(&q, &t1, p), p);
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t2;
        }
        // r0 is a nonzero constant
        let c = inv_mod(r0[0], p) as u64;
        let mut out: Vec<u32> = t0.iter().map(|&x| ((x as u64 * c) % p as u64) as u32).collect();
        out = rem(&out, modulus, p);
        out.resize(k, 0);
        out
    }

    pub fn divmod(a: &[u32], m: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
        let m = trim(m.to_vec());
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        if r.len() <= dm {
            return (Vec::new(), r);
        }
        let mut q = vec![0u32; r.len() - dm];
        let lead_inv = inv_mod(m[dm], p) as u64;
        let p64 = p as u64;
        while r.len() > dm {
            let dr = r.len() - 1;
            let c = (r[dr] as u64 * lead_inv) % p64;
            let shift = dr - dm;
            q[shift] = c as u32;
            for (i, &mi) in m.iter().enumerate() {
                let t = (c * mi as u64) % p64;
                r[shift + i] = ((r[shift + i] as u64 + p64 - t) % p64) as u32;
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    /// `base^e mod modulus`.
    pub fn powmod(base: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut b = rem(base, modulus, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), modulus, p);
            }
            b = rem(&mul(&b, &b, p), modulus, p);
            e >>= 1;
        }
        acc
    }

    /// `x^(p^j) mod f`.
    fn frobenius_power(f: &[u32], j: usize, p: u32) -> Vec<u32> {
        let mut x = vec![0, 1];
        for _ in 0..j {
            x = powmod(&x, p as u64, f, p);
        }
        x
    }

    /// Rabin's test: `f` of degree `k` is irreducible iff `x^(p^k) = x mod f`
    /// and `gcd(x^(p^(k/r)) - x, f) = 1` for every prime `r | k`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let f = trim(f.to_vec());
        if f.len() < 2 {
            return false;
        }
        let k = f.len() - 1;
        if k == 1 {
            return true;
        }
        let x = vec![0, 1];
        if sub(&frobenius_power(&f, k, p), &rem(&x, &f, p), p) != Vec::<u32>::new() {
            return false;
        }
        for r in (2..=k).filter(|r| k % r == 0 && super::is_prime(*r as u32)) {
            let h = sub(&frobenius_power(&f, k / r, p), &x, p);
            let g = gcd(&f, &h, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    /// Smallest monic irreducible of degree `k`, lower coefficients read as
    /// a base-`p` integer.
    pub fn first_irreducible(p: u32, k: usize) -> Option<Vec<u32>> {
        let mut c = vec![0u32; k];
        loop {
            let mut f = c.clone();
            f.push(1);
            if is_irreducible(&f, p) {
                return Some(f);
            }
            // increment base-p counter
            let mut i = 0;
            loop {
                if i == k {
                    return None;
                }
                c[i] += 1;
                if c[i] == p {
                    c[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }
}

pub(crate) fn rational_to_bigint_row(row: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter()
        .map(|q| q.numer() * (&l / q.denom()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic() {
        let q = Field::Rationals;
        let a = q.from_rational(parse_rational("2/3").unwrap()).unwrap();
        let b = q.from_rational(parse_rational("1/6").unwrap()).unwrap();
        let s = q.add(&a, &b);
        assert_eq!(s, q.from_rational(parse_rational("5/6").unwrap()).unwrap());
        assert_eq!(
            q.from_rational(parse_rational("4/-6").unwrap()).unwrap(),
            q.from_rational(parse_rational("-2/3").unwrap()).unwrap()
        );
    }

    #[test]
    fn prime_field_basics() {
        let f2 = Field::prime(2).unwrap();
        assert!(f2.is_zero(&f2.add(&f2.one(), &f2.one())));
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.inv(&f3.from_int(2)).unwrap(), f3.from_int(2));
        assert_eq!(f3.inv(&f3.zero()), Err(Error::DivisionByZero));
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn mismatch_detected() {
        let f3 = Field::prime(3).unwrap();
        let q = Field::Rationals;
        assert_eq!(f3.checked_add(&q.one(), &f3.one()), Err(Error::FieldMismatch));
        assert_eq!(f3.checked_mul(&Scalar::Fp(7), &f3.one()), Err(Error::FieldMismatch));
    }

    #[test]
    fn f4_arithmetic() {
        let f4 = Field::extension(2, 2, vec![1, 1, 1]).unwrap();
        assert_eq!(f4.order(), Some(4));
        let w = f4.element(2); // x
        let w2 = f4.mul(&w, &w);
        assert_eq!(w2, f4.element(3)); // x + 1
        for n in 1..4 {
            let a = f4.element(n);
            assert!(f4.is_one(&f4.mul(&a, &f4.inv(&a).unwrap())));
        }
        assert!(Field::extension(2, 2, vec![1, 0, 1]).is_err());
    }

    #[test]
    fn default_moduli() {
        let f8 = Field::extension_default(2, 3).unwrap();
        assert_eq!(f8.desc(), FieldDesc::Extension { p: 2, k: 3, modulus: Some(vec![1, 1, 0, 1]) });
        let f9 = Field::extension_default(3, 2).unwrap();
        assert_eq!(f9.order(), Some(9));
    }

    /// Exhaustive trial division by every monic polynomial of degree ≤ k/2.
    fn irreducible_by_division(f: &[u32], p: u32) -> bool {
        let k = f.len() - 1;
        for d in 1..=k / 2 {
            let total = (p as u64).pow(d as u32);
            for n in 0..total {
                let mut g: Vec<u32> = (0..d).map(|i| ((n / (p as u64).pow(i as u32)) % p as u64) as u32).collect();
                g.push(1);
                if poly::rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rabin_matches_trial_division() {
        for p in [2u32, 3, 5] {
            for k in 2..=4usize {
                let total = (p as u64).pow(k as u32);
                for n in 0..total {
                    let mut f: Vec<u32> =
                        (0..k).map(|i| ((n / (p as u64).pow(i as u32)) % p as u64) as u32).collect();
                    f.push(1);
                    assert_eq!(poly::is_irreducible(&f, p), irreducible_by_division(&f, p), "{f:?} mod {p}");
                }
            }
        }
    }

    #[test]
    fn json_round_trip_of_desc() {
        let d: FieldDesc = serde_json::from_str(r#"{"kind":"Fpk","p":2,"k":2,"modulus":[1,1,1]}"#).unwrap();
        assert!(Field::from_desc(&d).is_ok());
        let q: FieldDesc = serde_json::from_str(r#"{"kind":"Q"}"#).unwrap();
        assert_eq!(q, FieldDesc::Rationals);
    }
}

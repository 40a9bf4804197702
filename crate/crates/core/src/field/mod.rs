//! Exact base fields: the rationals, prime fields GF(p), extension fields
//! GF(p^k) given by an explicit modulus, and rational function fields GF(p)(s).
//!
//! A [`Field`] is a cheap-to-clone handle; [`Scalar`] values carry no context
//! and are only meaningful together with the field that produced them. Every
//! scalar is kept in canonical form so that structural equality coincides with
//! equality in the field.

pub(crate) mod fpx;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Default cap on numerator/denominator degrees in GF(p)(s).
pub const DEFAULT_RATFUNC_DEGREE_BOUND: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod(u64),
    /// Residue modulo the extension modulus, coefficients in the generator `g`.
    Ext(Vec<u64>),
    /// Reduced fraction in GF(p)[s] with monic denominator.
    Frac(Vec<u64>, Vec<u64>),
}

#[derive(Clone, Debug)]
pub enum FieldKind {
    Rationals,
    Prime { p: u64 },
    Extension { p: u64, modulus: Vec<u64> },
    RatFunc { p: u64, degree_bound: usize },
}

#[derive(Clone, Debug)]
pub struct Field {
    kind: Arc<FieldKind>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.kind, &other.kind) {
            return true;
        }
        match (&*self.kind, &*other.kind) {
            (FieldKind::Rationals, FieldKind::Rationals) => true,
            (FieldKind::Prime { p: a }, FieldKind::Prime { p: b }) => a == b,
            (
                FieldKind::Extension { p: a, modulus: m },
                FieldKind::Extension { p: b, modulus: n },
            ) => a == b && m == n,
            (FieldKind::RatFunc { p: a, .. }, FieldKind::RatFunc { p: b, .. }) => a == b,
            _ => false,
        }
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &*self.kind {
            FieldKind::Rationals => 0u8.hash(state),
            FieldKind::Prime { p } => {
                1u8.hash(state);
                p.hash(state)
            }
            FieldKind::Extension { p, modulus } => {
                2u8.hash(state);
                p.hash(state);
                modulus.hash(state)
            }
            FieldKind::RatFunc { p, .. } => {
                3u8.hash(state);
                p.hash(state)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime { p } => write!(f, "GF({p})"),
            FieldKind::Extension { p, modulus } => {
                let q = p.pow(modulus.len() as u32 - 1);
                write!(f, "GF({q})|{}", fpx::render(modulus, "t"))
            }
            FieldKind::RatFunc { p, .. } => write!(f, "GF({p})(s)"),
        }
    }
}

/// Splits a field order `q = p^k`.
fn prime_power(q: u64) -> Result<(u64, usize)> {
    let p = (2..=q).find(|d| q % d == 0).ok_or(Error::NonPrimeCharacteristic(q))?;
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(Error::NonPrimeCharacteristic(q));
    }
    Ok((p, k))
}

impl Field {
    pub fn rationals() -> Self {
        Field { kind: Arc::new(FieldKind::Rationals) }
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !fpx::is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        Ok(Field { kind: Arc::new(FieldKind::Prime { p }) })
    }

    /// GF(p^k) as GF(p)[g]/(modulus); the modulus must be monic irreducible.
    pub fn extension(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !fpx::is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        let mut m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        fpx::trim(&mut m);
        if m.last() != Some(&1) || !fpx::is_irreducible(&m, p) {
            return Err(Error::ReducibleModulus(fpx::render(&m, "t")));
        }
        if m.len() == 2 {
            // A degree-one modulus is just the prime field.
            return Field::prime(p);
        }
        Ok(Field { kind: Arc::new(FieldKind::Extension { p, modulus: m }) })
    }

    pub fn ratfunc(p: u64) -> Result<Self> {
        Self::ratfunc_with_bound(p, DEFAULT_RATFUNC_DEGREE_BOUND)
    }

    pub fn ratfunc_with_bound(p: u64, degree_bound: usize) -> Result<Self> {
        if !fpx::is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        Ok(Field { kind: Arc::new(FieldKind::RatFunc { p, degree_bound }) })
    }

    /// Parses `Q`, `GF(p)`, `GF(p^k)|<modulus in t>` or `GF(p)(s)`.
    pub fn parse(spec: &str) -> Result<Self> {
        let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::BadFieldSpec(spec.to_string());
        if compact == "Q" || compact == "QQ" {
            return Ok(Field::rationals());
        }
        let rest = compact.strip_prefix("GF(").ok_or_else(bad)?;
        if let Some(inner) = rest.strip_suffix(")(s)") {
            let p: u64 = inner.parse().map_err(|_| bad())?;
            return Field::ratfunc(p);
        }
        if let Some((head, modulus)) = rest.split_once(")|") {
            let (p, k) = match head.split_once('^') {
                Some((p, k)) => (
                    p.parse::<u64>().map_err(|_| bad())?,
                    k.parse::<usize>().map_err(|_| bad())?,
                ),
                None => prime_power(head.parse::<u64>().map_err(|_| bad())?)?,
            };
            let base = Field::prime(p)?;
            let poly = crate::parse::parse_poly(&base, modulus)?;
            let coeffs: Vec<u64> = poly
                .coeffs()
                .iter()
                .map(|c| match c {
                    Scalar::Mod(v) => *v,
                    _ => unreachable!("prime field scalar"),
                })
                .collect();
            if k != 0 && coeffs.len() != k + 1 {
                return Err(Error::ReducibleModulus(format!(
                    "{} (degree differs from k={k})",
                    fpx::render(&coeffs, "t")
                )));
            }
            return Field::extension(p, coeffs);
        }
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        if inner.contains('^') {
            // GF(p^k) without a modulus is rejected: moduli are always explicit.
            return Err(bad());
        }
        let n: u64 = inner.parse().map_err(|_| bad())?;
        if matches!(prime_power(n), Ok((_, k)) if k > 1) {
            return Err(bad());
        }
        Field::prime(n)
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.kind {
            FieldKind::Rationals => 0,
            FieldKind::Prime { p }
            | FieldKind::Extension { p, .. }
            | FieldKind::RatFunc { p, .. } => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(&*self.kind, FieldKind::Prime { .. } | FieldKind::Extension { .. })
    }

    /// Number of elements, `None` for infinite fields.
    pub fn order(&self) -> Option<BigUint> {
        match &*self.kind {
            FieldKind::Prime { p } => Some(BigUint::from(*p)),
            FieldKind::Extension { p, modulus } => {
                Some(BigUint::from(*p).pow((modulus.len() - 1) as u32))
            }
            _ => None,
        }
    }

    /// Degree over the prime field for finite fields.
    pub fn extension_degree(&self) -> usize {
        match &*self.kind {
            FieldKind::Extension { modulus, .. } => modulus.len() - 1,
            _ => 1,
        }
    }

    /// Name of the adjoined symbol used when printing and parsing scalars.
    pub fn symbol(&self) -> Option<&'static str> {
        match &*self.kind {
            FieldKind::Extension { .. } => Some("g"),
            FieldKind::RatFunc { .. } => Some("s"),
            _ => None,
        }
    }

    /// The generator `g` of an extension field or the transcendental `s`.
    pub fn generator(&self) -> Option<Scalar> {
        match &*self.kind {
            FieldKind::Extension { .. } => Some(Scalar::Ext(vec![0, 1])),
            FieldKind::RatFunc { .. } => Some(Scalar::Frac(vec![0, 1], vec![1])),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        match &*self.kind {
            FieldKind::Rationals => Scalar::Rational(BigRational::zero()),
            FieldKind::Prime { .. } => Scalar::Mod(0),
            FieldKind::Extension { .. } => Scalar::Ext(Vec::new()),
            FieldKind::RatFunc { .. } => Scalar::Frac(Vec::new(), vec![1]),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match &*self.kind {
            FieldKind::Rationals => Scalar::Rational(BigRational::from_integer(n.into())),
            FieldKind::Prime { p } => Scalar::Mod(n.rem_euclid(*p as i64) as u64),
            FieldKind::Extension { p, .. } => {
                let mut v = vec![n.rem_euclid(*p as i64) as u64];
                fpx::trim(&mut v);
                Scalar::Ext(v)
            }
            FieldKind::RatFunc { p, .. } => {
                let mut v = vec![n.rem_euclid(*p as i64) as u64];
                fpx::trim(&mut v);
                Scalar::Frac(v, vec![1])
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match &*self.kind {
            FieldKind::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            _ => {
                let p = BigInt::from(self.characteristic());
                let r = ((n % &p) + &p) % &p;
                self.from_i64(r.to_i64().expect("residue fits"))
            }
        }
    }

    pub fn from_rational(&self, q: BigRational) -> Result<Scalar> {
        match &*self.kind {
            FieldKind::Rationals => Ok(Scalar::Rational(q)),
            _ => {
                let n = self.from_bigint(q.numer());
                let d = self.from_bigint(q.denom());
                self.div(&n, &d)
            }
        }
    }

    fn frac(&self, num: Vec<u64>, den: Vec<u64>) -> Scalar {
        let (p, bound) = match &*self.kind {
            FieldKind::RatFunc { p, degree_bound } => (*p, *degree_bound),
            _ => unreachable!(),
        };
        if num.is_empty() {
            return Scalar::Frac(Vec::new(), vec![1]);
        }
        let g = fpx::gcd(&num, &den, p);
        let mut n = fpx::divrem(&num, &g, p).0;
        let d = fpx::divrem(&den, &g, p).0;
        let (lc, d) = fpx::make_monic(&d, p);
        n = fpx::scale(&n, fpx::inv_mod(lc, p).expect("nonzero"), p);
        if n.len() > bound + 1 || d.len() > bound + 1 {
            panic!(
                "GF({p})(s) degree bound {bound} exceeded (numerator degree {}, denominator degree {})",
                n.len().saturating_sub(1),
                d.len() - 1
            );
        }
        Scalar::Frac(n, d)
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod(v) => *v == 0,
            Scalar::Ext(v) => v.is_empty(),
            Scalar::Frac(n, _) => n.is_empty(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&*self.kind, a, b) {
            (FieldKind::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x + y)
            }
            (FieldKind::Prime { p }, Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + y) % p),
            (FieldKind::Extension { p, .. }, Scalar::Ext(x), Scalar::Ext(y)) => {
                Scalar::Ext(fpx::add(x, y, *p))
            }
            (FieldKind::RatFunc { p, .. }, Scalar::Frac(an, ad), Scalar::Frac(bn, bd)) => {
                if ad == bd {
                    return self.frac(fpx::add(an, bn, *p), ad.clone());
                }
                let num = fpx::add(&fpx::mul(an, bd, *p), &fpx::mul(bn, ad, *p), *p);
                self.frac(num, fpx::mul(ad, bd, *p))
            }
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (&*self.kind, a) {
            (FieldKind::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            (FieldKind::Prime { p }, Scalar::Mod(x)) => Scalar::Mod((p - x) % p),
            (FieldKind::Extension { p, .. }, Scalar::Ext(x)) => Scalar::Ext(fpx::neg(x, *p)),
            (FieldKind::RatFunc { p, .. }, Scalar::Frac(n, d)) => {
                Scalar::Frac(fpx::neg(n, *p), d.clone())
            }
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&*self.kind, a, b) {
            (FieldKind::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x * y)
            }
            (FieldKind::Prime { p }, Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(fpx::mulm(*x, *y, *p))
            }
            (FieldKind::Extension { p, modulus }, Scalar::Ext(x), Scalar::Ext(y)) => {
                Scalar::Ext(fpx::mulmod(x, y, modulus, *p))
            }
            (FieldKind::RatFunc { p, .. }, Scalar::Frac(an, ad), Scalar::Frac(bn, bd)) => {
                if an.is_empty() || bn.is_empty() {
                    return self.zero();
                }
                self.frac(fpx::mul(an, bn, *p), fpx::mul(ad, bd, *p))
            }
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (&*self.kind, a) {
            (FieldKind::Rationals, Scalar::Rational(x)) => Scalar::Rational(x.recip()),
            (FieldKind::Prime { p }, Scalar::Mod(x)) => {
                Scalar::Mod(fpx::inv_mod(*x, *p).expect("nonzero"))
            }
            (FieldKind::Extension { p, modulus }, Scalar::Ext(x)) => {
                let (_, s, _) = fpx::ext_gcd(x, modulus, *p);
                Scalar::Ext(fpx::rem(&s, modulus, *p))
            }
            (FieldKind::RatFunc { .. }, Scalar::Frac(n, d)) => self.frac(d.clone(), n.clone()),
            _ => panic!("scalar does not belong to field {self}"),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Every element exactly once, in a fixed order starting with `0, 1, ...`.
    pub fn elements(&self) -> Result<impl Iterator<Item = Scalar> + '_> {
        let order = self.order().ok_or(Error::InfiniteField)?;
        let count = order.to_u64().ok_or(Error::InfiniteField)?;
        Ok((0..count).map(move |i| self.element_at(i)))
    }

    /// The `index`-th element in the order used by [`Field::elements`].
    pub fn element_at(&self, mut index: u64) -> Scalar {
        match &*self.kind {
            FieldKind::Prime { p } => Scalar::Mod(index % p),
            FieldKind::Extension { p, modulus } => {
                let mut v = Vec::with_capacity(modulus.len() - 1);
                for _ in 0..modulus.len() - 1 {
                    v.push(index % p);
                    index /= p;
                }
                fpx::trim(&mut v);
                Scalar::Ext(v)
            }
            _ => panic!("element_at on infinite field {self}"),
        }
    }

    /// p-th root in a finite field (the inverse of Frobenius).
    pub fn pth_root(&self, a: &Scalar) -> Result<Scalar> {
        match &*self.kind {
            FieldKind::Prime { .. } => Ok(a.clone()),
            FieldKind::Extension { p, modulus } => {
                let k = modulus.len() - 1;
                let mut r = a.clone();
                for _ in 0..k - 1 {
                    r = self.pow(&r, *p);
                }
                Ok(r)
            }
            _ => Err(Error::InfiniteField),
        }
    }

    /// Splits `f = u^2 + s*v^2` in GF(2)(s); every element has such a
    /// unique decomposition because `[F : F^2] = 2`.
    pub fn char2_even_odd(&self, a: &Scalar) -> Option<(Scalar, Scalar)> {
        match (&*self.kind, a) {
            (FieldKind::RatFunc { p: 2, .. }, Scalar::Frac(n, d)) => {
                // n/d = (n*d)/d^2
                let nd = fpx::mul(n, d, 2);
                let even: Vec<u64> = nd.iter().step_by(2).copied().collect();
                let odd: Vec<u64> = nd.iter().skip(1).step_by(2).copied().collect();
                let mut even = even;
                let mut odd = odd;
                fpx::trim(&mut even);
                fpx::trim(&mut odd);
                let u = self.frac(even, d.clone());
                let v = self.frac(odd, d.clone());
                Some((u, v))
            }
            _ => None,
        }
    }

    /// A random element; finite fields are sampled uniformly, infinite ones
    /// from a small box of "simple" elements.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match &*self.kind {
            FieldKind::Rationals => {
                let n: i64 = rng.gen_range(-9..=9);
                let d: i64 = rng.gen_range(1..=4);
                Scalar::Rational(BigRational::new(n.into(), d.into()))
            }
            FieldKind::Prime { p } => Scalar::Mod(rng.gen_range(0..*p)),
            FieldKind::Extension { p, modulus } => {
                let mut v: Vec<u64> = (0..modulus.len() - 1).map(|_| rng.gen_range(0..*p)).collect();
                fpx::trim(&mut v);
                Scalar::Ext(v)
            }
            FieldKind::RatFunc { p, .. } => {
                let num: Vec<u64> = (0..rng.gen_range(0..=3)).map(|_| rng.gen_range(0..*p)).collect();
                let mut den: Vec<u64> = (0..rng.gen_range(0..=1)).map(|_| rng.gen_range(0..*p)).collect();
                den.push(1);
                let mut num = num;
                fpx::trim(&mut num);
                self.frac(num, den)
            }
        }
    }

    /// Canonical textual form, re-parseable by [`crate::parse::parse_scalar`].
    pub fn render(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod(v) => v.to_string(),
            Scalar::Ext(v) => fpx::render(v, "g"),
            Scalar::Frac(n, d) => {
                let ns = fpx::render(n, "s");
                if d.len() == 1 {
                    ns
                } else {
                    let wrap = |s: String, poly: &[u64]| {
                        if poly.iter().filter(|&&c| c != 0).count() > 1 {
                            format!("({s})")
                        } else {
                            s
                        }
                    };
                    format!("{}/{}", wrap(ns, n), wrap(fpx::render(d, "s"), d))
                }
            }
        }
    }

    /// Integer value of a scalar lying in the prime subfield, if any (used
    /// for compact matrix output over prime fields).
    pub fn as_small_int(&self, a: &Scalar) -> Option<i64> {
        match a {
            Scalar::Mod(v) => Some(*v as i64),
            Scalar::Rational(q) if q.is_integer() => q.numer().to_i64(),
            _ => None,
        }
    }

    pub(crate) fn is_negative_rational(&self, a: &Scalar) -> bool {
        matches!(a, Scalar::Rational(q) if q.is_negative())
    }
}

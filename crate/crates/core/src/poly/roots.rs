//! Roots lying in the base field.
//!
//! Finite fields are scanned (or factored when large). Over Q the rational
//! root theorem is used; over GF(p)(s) roots of a monic polynomial with
//! polynomial coefficients are themselves polynomials dividing the constant
//! term, so the candidates are the divisors of that constant in GF(p)[s].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::factor::{factor_ff, sort_key};
use super::Poly;
use crate::error::{Error, Result};
use crate::field::{fpx, Field, FieldKind, Scalar};

const SCAN_LIMIT: u64 = 1 << 12;

/// All roots in the base field, repeated according to multiplicity.
pub fn roots_in_field(f: &Poly) -> Vec<Scalar> {
    let field = f.field();
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let monic = f.monic();
    let distinct: Vec<Scalar> = match field.kind() {
        FieldKind::Prime { .. } | FieldKind::Extension { .. } => {
            let order = field.order().expect("finite");
            if order <= SCAN_LIMIT.into() {
                field
                    .elements()
                    .expect("finite")
                    .filter(|x| field.is_zero(&monic.eval(x)))
                    .collect()
            } else {
                factor_ff(&monic)
                    .expect("finite field")
                    .into_iter()
                    .filter(|(g, _)| g.degree() == Some(1))
                    .map(|(g, _)| field.neg(&g.coeff(0)))
                    .collect()
            }
        }
        FieldKind::Rationals => rational_roots(&monic),
        FieldKind::RatFunc { p, .. } => ratfunc_roots(&monic, *p),
    };
    let mut out = Vec::new();
    for r in distinct {
        let lin = Poly::linear(field, &r);
        let mut g = monic.clone();
        while g.degree().unwrap_or(0) > 0 && field.is_zero(&g.eval(&r)) {
            g = g.exact_div(&lin);
            out.push(r.clone());
        }
    }
    out
}

fn rat(s: &Scalar) -> &BigRational {
    match s {
        Scalar::Rational(q) => q,
        _ => unreachable!("rational scalar expected"),
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let m = n.to_u128().expect("constant term too large for rational root search");
    let mut out = Vec::new();
    let mut d: u128 = 1;
    while d * d <= m {
        if m % d == 0 {
            out.push(BigInt::from(d));
            if d * d != m {
                out.push(BigInt::from(m / d));
            }
        }
        d += 1;
    }
    out
}

fn rational_roots(f: &Poly) -> Vec<Scalar> {
    let n = f.degree().expect("nonconstant");
    let c: Vec<BigRational> = f.coeffs().iter().map(|s| rat(s).clone()).collect();
    if n == 1 {
        return vec![Scalar::Rational(-c[0].clone())];
    }
    if n == 2 {
        let disc = &c[1] * &c[1] - BigRational::from_integer(4.into()) * &c[0];
        return match rational_sqrt(&disc) {
            None => Vec::new(),
            Some(r) => {
                let two = BigRational::from_integer(2.into());
                let mut v = vec![(-&c[1] - &r) / &two, (-&c[1] + &r) / &two];
                v.dedup();
                v.into_iter().map(Scalar::Rational).collect()
            }
        };
    }
    let mut out = Vec::new();
    // strip zero roots
    let low = c.iter().position(|x| !x.is_zero()).expect("nonzero");
    if low > 0 {
        out.push(Scalar::Rational(BigRational::zero()));
    }
    let c = &c[low..];
    let m = c.len() - 1;
    if m == 0 {
        return out;
    }
    let den_lcm = c.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    // g(w) = D^m f(w / D) has integer coefficients and is monic
    let a: Vec<BigInt> = c
        .iter()
        .enumerate()
        .map(|(i, x)| (x * BigRational::from_integer(den_lcm.pow((m - i) as u32))).to_integer())
        .collect();
    let eval = |w: &BigInt| a.iter().rev().fold(BigInt::zero(), |acc, ai| acc * w + ai);
    let mut found: Vec<BigRational> = Vec::new();
    for d in divisors(&a[0]) {
        for w in [d.clone(), -d] {
            if eval(&w).is_zero() {
                found.push(BigRational::new(w, den_lcm.clone()));
            }
        }
    }
    found.sort();
    found.dedup();
    out.extend(found.into_iter().map(Scalar::Rational));
    out
}

fn frac_parts(s: &Scalar) -> (&[u64], &[u64]) {
    match s {
        Scalar::Frac(n, d) => (n, d),
        _ => unreachable!("rational function scalar expected"),
    }
}

fn fpx_pow(a: &[u64], e: usize, p: u64) -> Vec<u64> {
    (0..e).fold(vec![1], |acc, _| fpx::mul(&acc, a, p))
}

fn ratfunc_roots(f: &Poly, p: u64) -> Vec<Scalar> {
    let field = f.field();
    let n = f.degree().expect("nonconstant");
    let den_lcm = f.coeffs().iter().fold(vec![1u64], |acc, c| {
        let d = frac_parts(c).1;
        let g = fpx::gcd(&acc, d, p);
        fpx::divrem(&fpx::mul(&acc, d, p), &g, p).0
    });
    // integral coefficients a_i = c_i * D^(n-i)
    let a: Vec<Vec<u64>> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let (num, den) = frac_parts(c);
            let scaled = fpx::mul(num, &fpx_pow(&den_lcm, n - i, p), p);
            let (q, r) = fpx::divrem(&scaled, den, p);
            debug_assert!(r.is_empty());
            q
        })
        .collect();
    let mut ws: Vec<Vec<u64>> = Vec::new();
    let low = a.iter().position(|x| !x.is_empty()).expect("nonzero");
    if low > 0 {
        ws.push(Vec::new());
    }
    let a = &a[low..];
    let m = a.len() - 1;
    if m > 0 {
        let bound = (0..m)
            .filter(|&i| !a[i].is_empty())
            .map(|i| (a[i].len() - 1) / (m - i))
            .max()
            .unwrap_or(0);
        let eval = |w: &[u64]| {
            a.iter()
                .rev()
                .fold(Vec::new(), |acc, ai| fpx::add(&fpx::mul(&acc, w, p), ai, p))
        };
        let prime = Field::prime(p).expect("prime");
        let constant = Poly::new(&prime, a[0].iter().map(|&c| Scalar::Mod(c)).collect());
        let factors = factor_ff(&constant).expect("finite field");
        let mut divs: Vec<Vec<u64>> = vec![vec![1]];
        for (g, e) in &factors {
            let g: Vec<u64> = g
                .coeffs()
                .iter()
                .map(|c| match c {
                    Scalar::Mod(v) => *v,
                    _ => unreachable!(),
                })
                .collect();
            let mut next = Vec::new();
            for d in &divs {
                let mut cur = d.clone();
                for k in 0..=*e {
                    if k > 0 {
                        cur = fpx::mul(&cur, &g, p);
                    }
                    if cur.len() - 1 <= bound {
                        next.push(cur.clone());
                    }
                }
            }
            divs = next;
        }
        for d in divs {
            for u in 1..p {
                let w = fpx::scale(&d, u, p);
                if eval(&w).is_empty() {
                    ws.push(w);
                }
            }
        }
    }
    let mut roots: Vec<Scalar> = ws
        .into_iter()
        .map(|w| {
            let wz = Scalar::Frac(w, vec![1]);
            let dz = Scalar::Frac(den_lcm.clone(), vec![1]);
            field.div(&wz, &dz).expect("nonzero denominator")
        })
        .collect();
    roots.sort_by_key(|r| field.render(r));
    roots.dedup();
    roots
}

/// Irreducibility of a quadratic: no root in the base field.
pub fn quad_irreducible(f: &Poly) -> Result<bool> {
    if f.degree() != Some(2) {
        return Err(Error::WrongDegree { expected: 2, found: f.degree_i64() });
    }
    Ok(roots_in_field(f).is_empty())
}

/// The repeated root when `f = (t - x)^2`.
pub fn quad_double_root(f: &Poly) -> Result<Option<Scalar>> {
    if f.degree() != Some(2) {
        return Err(Error::WrongDegree { expected: 2, found: f.degree_i64() });
    }
    let r = roots_in_field(f);
    Ok((r.len() == 2 && r[0] == r[1]).then(|| r[0].clone()))
}

#[allow(dead_code)]
pub(crate) fn sorted_roots(field: &Field, mut roots: Vec<Scalar>) -> Vec<Scalar> {
    if field.is_finite() {
        roots.sort_by_key(|r| sort_key(&Poly::constant(field, r.clone())));
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_scalar};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn spec_examples() {
        let q = Field::rationals();
        let mut r = roots_in_field(&parse_poly(&q, "t^2-1").unwrap());
        r.sort_by_key(|x| q.render(x));
        assert_eq!(r, vec![q.from_i64(-1), q.from_i64(1)]);
        let f2 = Field::prime(2).unwrap();
        assert!(roots_in_field(&parse_poly(&f2, "t^2+t+1").unwrap()).is_empty());
        let r2 = Field::ratfunc(2).unwrap();
        let s = parse_scalar(&r2, "s").unwrap();
        assert_eq!(roots_in_field(&parse_poly(&r2, "t^2+s^2").unwrap()), vec![s.clone(), s]);
    }

    #[test]
    fn quadratic_predicates() {
        let q = Field::rationals();
        assert!(quad_irreducible(&parse_poly(&q, "t^2+1").unwrap()).unwrap());
        assert_eq!(
            quad_double_root(&parse_poly(&q, "t^2-2t+1").unwrap()).unwrap(),
            Some(q.one())
        );
        let r2 = Field::ratfunc(2).unwrap();
        let f = parse_poly(&r2, "t^2+s").unwrap();
        assert!(quad_irreducible(&f).unwrap());
        assert!(f.derivative().is_zero());
        assert!(matches!(
            quad_irreducible(&parse_poly(&q, "t^3").unwrap()),
            Err(Error::WrongDegree { .. })
        ));
    }

    #[test]
    fn planted_roots_are_found() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for spec in ["Q", "GF(2)(s)", "GF(3)(s)", "GF(7)", "GF(9)|t^2+1"] {
            let f = Field::parse(spec).unwrap();
            for _ in 0..25 {
                let a = f.random(&mut rng);
                let b = f.random(&mut rng);
                let extra = Poly::new(&f, vec![f.random(&mut rng), f.random(&mut rng), f.one()]);
                let poly = Poly::linear(&f, &a).mul(&Poly::linear(&f, &b)).mul(&extra);
                let roots = roots_in_field(&poly);
                assert!(roots.contains(&a), "{spec}: {poly}");
                assert!(roots.contains(&b), "{spec}: {poly}");
                for r in &roots {
                    assert!(f.is_zero(&poly.eval(r)));
                }
                let lin = roots.iter().fold(Poly::one(&f), |acc, r| acc.mul(&Poly::linear(&f, r)));
                assert!(lin.divides(&poly));
                let _ = rng.gen::<u8>();
            }
        }
    }
}

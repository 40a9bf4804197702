//! Factorization over finite fields: squarefree decomposition, distinct-degree
//! splitting and Cantor–Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Poly;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

fn pth_root_poly(c: &Poly) -> Result<Poly> {
    let f = c.field();
    let p = f.characteristic() as usize;
    let coeffs = c
        .coeffs()
        .iter()
        .step_by(p)
        .map(|a| f.pth_root(a))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(f, coeffs))
}

/// Pairwise coprime squarefree factors with multiplicities; `f` must be
/// monic over a finite field.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let field = f.field();
    if !field.is_finite() {
        return Err(Error::InfiniteField);
    }
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let p = field.characteristic() as usize;
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in squarefree_decomposition(&pth_root_poly(f)?)? {
            out.push((g, m * p));
        }
        return Ok(out);
    }
    let mut c = f.gcd(&df);
    let mut w = f.exact_div(&c);
    let mut i = 1;
    while w.degree() != Some(0) {
        let y = w.gcd(&c);
        let z = w.exact_div(&y);
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w);
    }
    if c.degree().unwrap_or(0) > 0 {
        for (g, m) in squarefree_decomposition(&pth_root_poly(&c)?)? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

fn distinct_degree(f: &Poly, q: &BigUint) -> Vec<(Poly, usize)> {
    let field = f.field();
    let x = Poly::var(field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 1;
    let mut out = Vec::new();
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(q, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.degree() != Some(0) {
            rest = rest.exact_div(&g);
            h = h.rem(&rest).expect("nonzero");
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(n) = rest.degree() {
        if n > 0 {
            out.push((rest, n));
        }
    }
    out
}

fn random_poly(field: &Field, below: usize, rng: &mut ChaCha8Rng) -> Poly {
    Poly::new(field, (0..below).map(|_| field.random(rng)).collect())
}

fn equal_degree(f: &Poly, d: usize, q: &BigUint, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().expect("nonzero");
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let p = field.characteristic();
    loop {
        let a = random_poly(field, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(kd-1))
            let k = field.extension_degree() * d;
            let mut term = a.clone();
            let mut acc = a.clone();
            for _ in 1..k {
                term = term.mul_mod(&term, f);
                acc = acc.add(&term);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            a.pow_mod(&e, f).sub(&Poly::one(field))
        };
        let g = b.gcd(f);
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < n {
                let mut out = equal_degree(&g, d, q, rng);
                out.extend(equal_degree(&f.exact_div(&g), d, q, rng));
                return out;
            }
        }
    }
}

fn element_key(field: &Field, a: &Scalar) -> u64 {
    match a {
        Scalar::Mod(v) => *v,
        Scalar::Ext(v) => {
            let p = field.characteristic();
            v.iter().rev().fold(0, |acc, c| acc * p + c)
        }
        _ => 0,
    }
}

pub(crate) fn sort_key(p: &Poly) -> (usize, Vec<u64>) {
    let f = p.field();
    (
        p.degree().unwrap_or(0),
        p.coeffs().iter().rev().map(|c| element_key(f, c)).collect(),
    )
}

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// coefficients. The product of the factors times the leading coefficient
/// of `f` reconstructs `f`.
pub fn factor_ff(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let field = f.field();
    if !field.is_finite() {
        return Err(Error::InfiniteField);
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let q = field.order().expect("finite");
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut out = Vec::new();
    for (part, m) in squarefree_decomposition(&f.monic())? {
        for (block, d) in distinct_degree(&part, &q) {
            for g in equal_degree(&block, d, &q, &mut rng) {
                out.push((g.monic(), m));
            }
        }
    }
    out.sort_by_key(|(g, _)| sort_key(g));
    Ok(out)
}

/// Irreducibility test. Exact over finite fields; over infinite fields it is
/// decided only up to degree 3 (no roots), and larger degrees are refused.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Ok(false);
    }
    if f.field().is_finite() {
        let fac = factor_ff(f)?;
        return Ok(fac.len() == 1 && fac[0].1 == 1);
    }
    match n {
        1 => Ok(true),
        2 | 3 => Ok(super::roots_in_field(f).is_empty()),
        _ => Err(Error::InfiniteField),
    }
}

/// All monic irreducible polynomials of degree `d` over a finite field.
pub fn irreducibles_of_degree(field: &Field, d: usize) -> Result<Vec<Poly>> {
    if !field.is_finite() {
        return Err(Error::InfiniteField);
    }
    let q: u64 = field.order().expect("finite").try_into().map_err(|_| Error::InfiniteField)?;
    let total = q.checked_pow(d as u32).ok_or(Error::InfiniteField)?;
    let mut out = Vec::new();
    for idx in 0..total {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut rest = idx;
        for _ in 0..d {
            coeffs.push(field.element_at(rest % q));
            rest /= q;
        }
        coeffs.push(field.one());
        let p = Poly::new(field, coeffs);
        if is_irreducible(&p)? {
            out.push(p);
        }
    }
    out.sort_by_key(sort_key);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use rand::Rng;

    fn product(fac: &[(Poly, usize)], field: &Field) -> Poly {
        fac.iter().fold(Poly::one(field), |acc, (g, m)| acc.mul(&g.pow(*m as u32)))
    }

    #[test]
    fn spec_examples() {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        let fac = factor_ff(&parse_poly(&f2, "t^4+t^2").unwrap()).unwrap();
        assert_eq!(
            fac,
            vec![(parse_poly(&f2, "t").unwrap(), 2), (parse_poly(&f2, "t+1").unwrap(), 2)]
        );
        let fac = factor_ff(&parse_poly(&f3, "t^2+1").unwrap()).unwrap();
        assert_eq!(fac, vec![(parse_poly(&f3, "t^2+1").unwrap(), 1)]);
        let fac = factor_ff(&parse_poly(&f2, "t^2+1").unwrap()).unwrap();
        assert_eq!(fac, vec![(parse_poly(&f2, "t+1").unwrap(), 2)]);
        assert_eq!(
            factor_ff(&parse_poly(&Field::rationals(), "t^2+1").unwrap()),
            Err(Error::InfiniteField)
        );
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // q=2: 2,1,2,3 ; q=3: 3,3,8 ; GF(4): 4,6
        let f2 = Field::prime(2).unwrap();
        let counts: Vec<usize> =
            (1..=4).map(|d| irreducibles_of_degree(&f2, d).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3]);
        let f3 = Field::prime(3).unwrap();
        let counts: Vec<usize> =
            (1..=3).map(|d| irreducibles_of_degree(&f3, d).unwrap().len()).collect();
        assert_eq!(counts, vec![3, 3, 8]);
        let f4 = Field::parse("GF(4)|t^2+t+1").unwrap();
        let counts: Vec<usize> =
            (1..=2).map(|d| irreducibles_of_degree(&f4, d).unwrap().len()).collect();
        assert_eq!(counts, vec![4, 6]);
    }

    #[test]
    fn random_products_reconstruct() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for spec in ["GF(2)", "GF(3)", "GF(5)", "GF(4)|t^2+t+1", "GF(9)|t^2+1", "GF(8)|t^3+t+1"] {
            let f = Field::parse(spec).unwrap();
            for _ in 0..30 {
                let n = rng.gen_range(1..=7);
                let mut coeffs: Vec<Scalar> = (0..n).map(|_| f.random(&mut rng)).collect();
                coeffs.push(f.one());
                let poly = Poly::new(&f, coeffs);
                let fac = factor_ff(&poly).unwrap();
                assert_eq!(product(&fac, &f), poly, "{spec}");
                for (g, _) in &fac {
                    let inner = factor_ff(g).unwrap();
                    assert_eq!(inner.len(), 1);
                    assert_eq!(inner[0].1, 1);
                }
            }
        }
    }
}

//! Resultants, the fundamental polynomial `F_{p,q}` and its reduction
//! `Lambda_{p,q}` in the variable `t^2 - delta t`.

use super::Poly;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{poly_det, Mat};

/// Sylvester matrix with the `deg b` shifted rows of `a` first.
pub fn sylvester(a: &Poly, b: &Poly) -> Result<Mat> {
    a.same_field(b)?;
    let m = a.degree().ok_or(Error::ZeroPolynomial)?;
    let n = b.degree().ok_or(Error::ZeroPolynomial)?;
    let f = a.field();
    let size = m + n;
    let mut s = Mat::zeros(f, size, size);
    for i in 0..n {
        for k in 0..=m {
            s.set(i, i + k, a.coeff(m - k));
        }
    }
    for i in 0..m {
        for k in 0..=n {
            s.set(n + i, i + k, b.coeff(n - k));
        }
    }
    Ok(s)
}

/// `res(a, b) = det Syl(a, b)`.
pub fn resultant(a: &Poly, b: &Poly) -> Result<Scalar> {
    let s = sylvester(a, b)?;
    if s.rows() == 0 {
        return Ok(a.field().one());
    }
    s.det()
}

fn check_quadratic(p: &Poly) -> Result<()> {
    if p.degree() != Some(2) {
        return Err(Error::WrongDegree { expected: 2, found: p.degree_i64() });
    }
    if !p.is_monic() {
        return Err(Error::NonMonic);
    }
    Ok(())
}

/// `F_{p,q}(t) = res_x(p(x), q(x - t))`, whose roots are the differences of
/// a root of `p` and a root of `q`.
pub fn fundamental_poly(p: &Poly, q: &Poly) -> Result<Poly> {
    p.same_field(q)?;
    check_quadratic(p)?;
    check_quadratic(q)?;
    let f = p.field();
    let t = Poly::var(f);
    let c = |s: &Scalar| Poly::constant(f, s.clone());
    let zero = Poly::zero(f);
    let one = Poly::one(f);
    // q(x - t) = x^2 + (-2t - mu) x + (t^2 + mu t + beta)
    let mu = q.trace();
    let q1 = t.scale(&f.from_i64(-2)).sub(&c(&mu));
    let q0 = t.mul(&t).add(&t.scale(&mu)).add(&c(&q.coeff(0)));
    let p1 = c(&p.coeff(1));
    let p0 = c(&p.coeff(0));
    let rows = vec![
        vec![one.clone(), p1.clone(), p0.clone(), zero.clone()],
        vec![zero.clone(), one.clone(), p1, p0],
        vec![one.clone(), q1.clone(), q0.clone(), zero.clone()],
        vec![zero, one, q1, q0],
    ];
    let fpq = poly_det(f, &rows);
    assert!(
        fpq.degree() == Some(4) && fpq.is_monic(),
        "fundamental polynomial must be monic of degree 4, got {fpq}"
    );
    Ok(fpq)
}

/// `Lambda_{p,q}(t) = t^2 + (2(p(0)+q(0)) - tr p tr q) t + F_{p,q}(0)`.
pub fn lambda_poly(p: &Poly, q: &Poly) -> Result<Poly> {
    p.same_field(q)?;
    check_quadratic(p)?;
    check_quadratic(q)?;
    let f = p.field();
    let lin = f.sub(
        &f.mul(&f.from_i64(2), &f.add(&p.coeff(0), &q.coeff(0))),
        &f.mul(&p.trace(), &q.trace()),
    );
    Ok(Poly::new(f, vec![resultant(p, q)?, lin, f.one()]))
}

/// `s` with `f(t) = s(t^2 - delta t)`, found digit by digit in base
/// `t^2 - delta t`; `None` as soon as a digit is not constant.
pub fn decompose_base_sigma(f: &Poly, delta: &Scalar) -> Option<Poly> {
    let field = f.field();
    let sigma = Poly::new(field, vec![field.zero(), field.neg(delta), field.one()]);
    let mut digits = Vec::new();
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&sigma).expect("nonzero divisor");
        if !r.is_constant() {
            return None;
        }
        digits.push(r.coeff(0));
        rest = q;
    }
    Some(Poly::new(field, digits))
}

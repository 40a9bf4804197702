//! Arithmetic in `K = F[t]/(p)` for a monic quadratic `p = t^2 - lambda t + alpha`,
//! written `a + b theta` with `theta` the class of `t`.

use crate::error::{Error, Result};
use crate::field::{Field, FieldKind, Scalar};
use crate::linalg::Mat;
use crate::poly::{roots_in_field, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub a: Scalar,
    pub b: Scalar,
}

#[derive(Clone, Debug)]
pub struct QuadExt {
    field: Field,
    lambda: Scalar,
    alpha: Scalar,
}

impl QuadExt {
    pub fn new(p: &Poly) -> Result<Self> {
        if p.degree() != Some(2) {
            return Err(Error::WrongDegree { expected: 2, found: p.degree_i64() });
        }
        if !p.is_monic() {
            return Err(Error::NonMonic);
        }
        Ok(QuadExt { field: p.field().clone(), lambda: p.trace(), alpha: p.coeff(0) })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn theta(&self) -> QuadElem {
        QuadElem { a: self.field.zero(), b: self.field.one() }
    }

    /// The conjugate root `lambda - theta`.
    pub fn theta_conjugate(&self) -> QuadElem {
        QuadElem { a: self.lambda.clone(), b: self.field.neg(&self.field.one()) }
    }

    pub fn embed(&self, c: &Scalar) -> QuadElem {
        QuadElem { a: c.clone(), b: self.field.zero() }
    }

    pub fn sub(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        let f = &self.field;
        QuadElem { a: f.sub(&x.a, &y.a), b: f.sub(&x.b, &y.b) }
    }

    pub fn mul(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        let f = &self.field;
        let bd = f.mul(&x.b, &y.b);
        QuadElem {
            a: f.sub(&f.mul(&x.a, &y.a), &f.mul(&self.alpha, &bd)),
            b: f.add(&f.add(&f.mul(&x.a, &y.b), &f.mul(&x.b, &y.a)), &f.mul(&self.lambda, &bd)),
        }
    }

    pub fn in_base_field(&self, x: &QuadElem) -> bool {
        self.field.is_zero(&x.b)
    }

    /// Matrix of multiplication by `x` in the basis `(1, theta)`.
    pub fn mult_matrix(&self, x: &QuadElem) -> Mat {
        let f = &self.field;
        let rows = vec![
            vec![x.a.clone(), f.neg(&f.mul(&self.alpha, &x.b))],
            vec![x.b.clone(), f.add(&x.a, &f.mul(&self.lambda, &x.b))],
        ];
        Mat::from_rows(f, rows).expect("2x2")
    }

    /// `N_{K/F}(x)`, the determinant of multiplication by `x`.
    pub fn norm(&self, x: &QuadElem) -> Scalar {
        self.mult_matrix(x).det().expect("square")
    }

    /// Roots of the monic quadratic `q` lying in `K`.
    pub fn roots_of(&self, q: &Poly) -> Result<Vec<QuadElem>> {
        if q.degree() != Some(2) || !q.is_monic() {
            return Err(Error::WrongDegree { expected: 2, found: q.degree_i64() });
        }
        if q.field() != &self.field {
            return Err(Error::MixedFieldContexts);
        }
        let f = &self.field;
        let mu = q.trace();
        let beta = q.coeff(0);
        let mut out: Vec<QuadElem> =
            roots_in_field(q).into_iter().map(|r| self.embed(&r)).collect();
        out.dedup();
        // y = a + b theta with b != 0 forces 2a + lambda b = mu and
        // a^2 - alpha b^2 - mu a + beta = 0
        let mut found = Vec::new();
        if f.characteristic() != 2 {
            let two = f.from_i64(2);
            let four = f.from_i64(4);
            let dp = f.sub(&f.mul(&self.lambda, &self.lambda), &f.mul(&four, &self.alpha));
            let dq = f.sub(&f.mul(&mu, &mu), &f.mul(&four, &beta));
            if f.is_zero(&dp) {
                return Ok(out);
            }
            let ratio = f.div(&dq, &dp)?;
            let sq = Poly::new(f, vec![f.neg(&ratio), f.zero(), f.one()]);
            let mut bs = roots_in_field(&sq);
            bs.dedup();
            for b in bs.into_iter().filter(|b| !f.is_zero(b)) {
                let a = f.div(&f.sub(&mu, &f.mul(&self.lambda, &b)), &two)?;
                found.push(QuadElem { a, b });
            }
        } else if !f.is_zero(&self.lambda) {
            let b = f.div(&mu, &self.lambda)?;
            if !f.is_zero(&b) {
                let c = f.add(&beta, &f.mul(&self.alpha, &f.mul(&b, &b)));
                let eq = Poly::new(f, vec![c, mu.clone(), f.one()]);
                let mut as_ = roots_in_field(&eq);
                as_.dedup();
                found.extend(as_.into_iter().map(|a| QuadElem { a, b: b.clone() }));
            }
        } else if f.is_zero(&mu) {
            // a^2 + alpha b^2 = beta
            match f.kind() {
                FieldKind::RatFunc { .. } => {
                    let (a0, a1) = f.char2_even_odd(&self.alpha).expect("char 2");
                    let (b0, b1) = f.char2_even_odd(&beta).expect("char 2");
                    if !f.is_zero(&a1) && !f.is_zero(&b1) {
                        let b = f.div(&b1, &a1)?;
                        let a = f.add(&b0, &f.mul(&a0, &b));
                        found.push(QuadElem { a, b });
                    }
                }
                _ => {
                    // every element of a finite field of characteristic 2 is a square
                    let a = f.pth_root(&f.add(&beta, &self.alpha))?;
                    found.push(QuadElem { a, b: f.one() });
                }
            }
        }
        for y in found {
            // the other root of q is mu - y; both are reported
            let other = self.sub(&self.embed(&mu), &y);
            for r in [y, other] {
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
        for r in &out {
            debug_assert!(self.is_root(q, r));
        }
        Ok(out)
    }

    pub fn is_root(&self, q: &Poly, y: &QuadElem) -> bool {
        let mut acc = self.embed(&self.field.zero());
        for c in q.coeffs().iter().rev() {
            acc = self.mul(&acc, y);
            acc.a = self.field.add(&acc.a, c);
        }
        self.field.is_zero(&acc.a) && self.field.is_zero(&acc.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(f: &Field, s: &str) -> Poly {
        parse_poly(f, s).unwrap()
    }

    #[test]
    fn gaussian_rationals() {
        let q = Field::rationals();
        let k = QuadExt::new(&p(&q, "t^2+1")).unwrap();
        let roots = k.roots_of(&p(&q, "t^2+4")).unwrap();
        assert_eq!(roots.len(), 2);
        let mut norms: Vec<Scalar> =
            roots.iter().map(|y| k.norm(&k.sub(&k.theta(), y))).collect();
        norms.sort_by_key(|n| q.render(n));
        assert_eq!(norms, vec![q.from_i64(1), q.from_i64(9)]);
        assert!(k.roots_of(&p(&q, "t^2+2")).unwrap().is_empty());
        assert_eq!(k.norm(&k.theta()), q.one());
    }

    #[test]
    fn characteristic_two() {
        let f = Field::ratfunc(2).unwrap();
        let k = QuadExt::new(&p(&f, "t^2+t+1")).unwrap();
        assert!(k.roots_of(&p(&f, "t^2+t+s")).unwrap().is_empty());
        assert_eq!(k.roots_of(&p(&f, "t^2+t+1")).unwrap().len(), 2);
        // inseparable quadratics over GF(2)(s) share a splitting field
        let k = QuadExt::new(&p(&f, "t^2+s")).unwrap();
        let roots = k.roots_of(&p(&f, "t^2+s+1")).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(k.is_root(&p(&f, "t^2+s+1"), &roots[0]));
        let f4 = Field::prime(2).unwrap();
        let k = QuadExt::new(&p(&f4, "t^2+t+1")).unwrap();
        assert_eq!(k.roots_of(&p(&f4, "t^2+t+1")).unwrap().len(), 2);
    }

    #[test]
    fn finite_fields_have_one_quadratic_extension() {
        for spec in ["GF(3)", "GF(5)", "GF(7)", "GF(4)|t^2+t+1"] {
            let f = Field::parse(spec).unwrap();
            let irr: Vec<Poly> = crate::poly::irreducibles_of_degree(&f, 2).unwrap();
            for a in &irr {
                let k = QuadExt::new(a).unwrap();
                for b in &irr {
                    let roots = k.roots_of(b).unwrap();
                    assert_eq!(roots.len(), 2, "{spec}: {a} vs {b}");
                    assert!(roots.iter().all(|r| k.is_root(b, r)));
                }
            }
        }
    }
}

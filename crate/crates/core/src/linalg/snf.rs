//! Smith normal form of `tI - M` over F[t] and determinants of polynomial
//! matrices.

use serde::Serialize;

use super::Mat;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// Nontrivial invariant factors `f_1 | f_2 | ...` of an endomorphism of a
/// space of dimension `dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvFactors {
    pub factors: Vec<Poly>,
    pub dim: usize,
}

impl InvFactors {
    pub fn product(&self, field: &Field) -> Poly {
        self.factors.iter().fold(Poly::one(field), |acc, f| acc.mul(f))
    }

    /// Multiset of factors rendered as strings, for reports.
    pub fn rendered(&self) -> Vec<String> {
        self.factors.iter().map(|f| f.to_string()).collect()
    }

    /// Companion-sum matrix with these invariant factors.
    pub fn rational_canonical_form(&self, field: &Field) -> Mat {
        let blocks: Vec<Mat> =
            self.factors.iter().map(|f| super::companion(f).expect("monic nonconstant")).collect();
        Mat::direct_sum_all(field, &blocks)
    }
}

#[derive(Serialize)]
struct Rendered {
    factors: Vec<String>,
    dim: usize,
}

/// Determinant of a square matrix of polynomials by fraction-free (Bareiss)
/// elimination.
pub fn poly_det(field: &Field, m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(field);
    }
    let mut a: Vec<Vec<Poly>> = m.to_vec();
    let mut sign = false;
    let mut prev = Poly::one(field);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = !sign;
                }
                None => return Poly::zero(field),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.exact_div(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// `det(tI - M)`.
pub fn charpoly(m: &Mat) -> Result<Poly> {
    m.require_square()?;
    Ok(poly_det(m.field(), &char_matrix(m)))
}

fn char_matrix(m: &Mat) -> Vec<Vec<Poly>> {
    let f = m.field();
    let n = m.rows();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Poly::constant(f, f.neg(m.get(i, j)));
                    if i == j {
                        c.add(&Poly::var(f))
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect()
}

struct Smith {
    a: Vec<Vec<Poly>>,
    n: usize,
    guard: usize,
}

impl Smith {
    fn check(&self, p: &Poly) {
        if p.degree().unwrap_or(0) > self.guard {
            panic!(
                "Smith form degree guard exceeded: entry of degree {} in a {}x{} matrix",
                p.degree().unwrap_or(0),
                self.n,
                self.n
            );
        }
    }

    fn min_entry(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in k..self.n {
            for j in k..self.n {
                if let Some(d) = self.a[i][j].degree() {
                    if best.map_or(true, |(bd, _, _)| d < bd) {
                        best = Some((d, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        for row in &mut self.a {
            row.swap(x, y);
        }
    }

    /// Clears row and column `k` except the pivot; returns false if a
    /// nonzero remainder forced a new pivot.
    fn clear(&mut self, k: usize) -> bool {
        let n = self.n;
        for i in k + 1..n {
            if self.a[i][k].is_zero() {
                continue;
            }
            let (q, r) = self.a[i][k].div_rem(&self.a[k][k]).expect("nonzero pivot");
            for j in k..n {
                let v = self.a[i][j].sub(&q.mul(&self.a[k][j]));
                self.check(&v);
                self.a[i][j] = v;
            }
            if !r.is_zero() {
                self.a.swap(i, k);
                return false;
            }
        }
        for j in k + 1..n {
            if self.a[k][j].is_zero() {
                continue;
            }
            let (q, r) = self.a[k][j].div_rem(&self.a[k][k]).expect("nonzero pivot");
            for i in k..n {
                let v = self.a[i][j].sub(&q.mul(&self.a[i][k]));
                self.check(&v);
                self.a[i][j] = v;
            }
            if !r.is_zero() {
                self.swap_cols(j, k);
                return false;
            }
        }
        true
    }

    fn run(mut self) -> Vec<Poly> {
        let n = self.n;
        let mut diag = Vec::with_capacity(n);
        for k in 0..n {
            let Some((i, j)) = self.min_entry(k) else {
                break;
            };
            self.a.swap(i, k);
            self.swap_cols(j, k);
            loop {
                if !self.clear(k) {
                    continue;
                }
                // the pivot must divide the whole remaining block
                let bad = (k + 1..n)
                    .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !self.a[k][k].divides(&self.a[i][j]));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in k..n {
                            let v = self.a[k][j].add(&self.a[i][j]);
                            self.a[k][j] = v;
                        }
                    }
                }
            }
            diag.push(self.a[k][k].monic());
        }
        diag
    }
}

/// Invariant factors of `M`: the nonconstant diagonal entries of the Smith
/// normal form of `tI - M`, monic and in divisibility order.
pub fn invariant_factors(m: &Mat) -> Result<InvFactors> {
    m.require_square()?;
    let n = m.rows();
    let smith = Smith { a: char_matrix(m), n, guard: 4 * n.max(1) };
    let mut factors: Vec<Poly> =
        smith.run().into_iter().filter(|d| d.degree().unwrap_or(0) > 0).collect();
    factors.sort_by_key(|f| f.degree());
    for w in factors.windows(2) {
        debug_assert!(w[0].divides(&w[1]), "divisibility chain");
    }
    Ok(InvFactors { factors, dim: n })
}

/// Similarity test via invariant factors.
pub fn similar(m1: &Mat, m2: &Mat) -> Result<bool> {
    if m1.field() != m2.field() {
        return Err(Error::MixedFieldContexts);
    }
    if m1.rows() != m2.rows() {
        m1.require_square()?;
        m2.require_square()?;
        return Ok(false);
    }
    Ok(invariant_factors(m1)? == invariant_factors(m2)?)
}

impl Serialize for InvFactors {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Rendered { factors: self.rendered(), dim: self.dim }.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{companion, jordan_block};
    use crate::parse::parse_poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(f: &Field, s: &str) -> Poly {
        parse_poly(f, s).unwrap()
    }

    #[test]
    fn invariant_factor_examples() {
        let q = Field::rationals();
        let c = companion(&p(&q, "t^2+1")).unwrap();
        let inv = invariant_factors(&c.direct_sum(&c)).unwrap();
        assert_eq!(inv.factors, vec![p(&q, "t^2+1"), p(&q, "t^2+1")]);
        let m = companion(&p(&q, "(t-1)^2")).unwrap().direct_sum(&companion(&p(&q, "t-1")).unwrap());
        assert_eq!(invariant_factors(&m).unwrap().factors, vec![p(&q, "t-1"), p(&q, "(t-1)^2")]);
    }

    #[test]
    fn similarity_examples() {
        let q = Field::rationals();
        let j2 = jordan_block(&q, &q.zero(), 2);
        assert!(similar(&j2, &companion(&p(&q, "t^2")).unwrap()).unwrap());
        assert!(!similar(&j2, &Mat::zeros(&q, 2, 2)).unwrap());
    }

    #[test]
    fn companion_is_cyclic_with_charpoly_r() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for spec in ["Q", "GF(3)", "GF(2)(s)", "GF(9)|t^2+1"] {
            let f = Field::parse(spec).unwrap();
            for _ in 0..50 {
                let d = rng.gen_range(1..=5);
                let mut coeffs: Vec<_> = (0..d).map(|_| f.random(&mut rng)).collect();
                coeffs.push(f.one());
                let r = Poly::new(&f, coeffs);
                let c = companion(&r).unwrap();
                assert_eq!(charpoly(&c).unwrap(), r);
                assert_eq!(invariant_factors(&c).unwrap().factors, vec![r]);
            }
        }
    }

    #[test]
    fn random_conjugation_preserves_invariant_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for spec in ["GF(5)", "Q", "GF(2)"] {
            let f = Field::parse(spec).unwrap();
            for _ in 0..20 {
                let n = rng.gen_range(1..=6);
                // low-rank perturbations of scalars give repeated factors
                let z = f.random(&mut rng);
                let m = Mat::scalar(&f, n, &z)
                    .add(&Mat::random(&f, n, 1, &mut rng).mul(&Mat::random(&f, 1, n, &mut rng)));
                let pm = Mat::random_invertible(&f, n, &mut rng);
                let inv = invariant_factors(&m).unwrap();
                assert_eq!(inv, invariant_factors(&m.conjugate(&pm).unwrap()).unwrap());
                let total: usize = inv.factors.iter().map(|g| g.degree().unwrap()).sum();
                assert_eq!(total, n);
                assert_eq!(inv.product(&f), charpoly(&m).unwrap());
            }
        }
    }

    #[test]
    fn rational_canonical_form_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let f = Field::prime(3).unwrap();
        for _ in 0..30 {
            let m = Mat::random(&f, 5, 5, &mut rng);
            let inv = invariant_factors(&m).unwrap();
            let rcf = inv.rational_canonical_form(&f);
            assert!(similar(&m, &rcf).unwrap());
        }
    }
}

//! Jordan and primary multiplicities from rank sequences, and the Fitting
//! decomposition.

use super::Mat;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::{is_irreducible, Poly};

fn rank_sequence(n: &Mat, upto: usize) -> Vec<usize> {
    let mut ranks = vec![n.rows()];
    let mut power = Mat::identity(n.field(), n.rows());
    for _ in 0..upto {
        power = power.mul(n);
        let r = power.rank();
        ranks.push(r);
        if r == 0 || ranks[ranks.len() - 2] == r {
            // stabilized
            while ranks.len() <= upto {
                ranks.push(r);
            }
            break;
        }
    }
    ranks
}

/// `n_k(M, z)`: number of Jordan cells at `z` of size at least `k`.
pub fn jordan_number(m: &Mat, z: &Scalar, k: usize) -> Result<usize> {
    m.require_square()?;
    assert!(k >= 1, "k is positive");
    let shifted = m.sub(&Mat::scalar(m.field(), m.rows(), z));
    let ranks = rank_sequence(&shifted, k);
    Ok(ranks[k - 1] - ranks[k])
}

/// `(n_1, n_2, ...)` at `z`, trailing zeros dropped.
pub fn jordan_sequence(m: &Mat, z: &Scalar) -> Result<Vec<usize>> {
    m.require_square()?;
    let shifted = m.sub(&Mat::scalar(m.field(), m.rows(), z));
    Ok(differences(&rank_sequence(&shifted, m.rows()), 1))
}

fn differences(ranks: &[usize], scale: usize) -> Vec<usize> {
    let mut out: Vec<usize> = ranks.windows(2).map(|w| (w[0] - w[1]) / scale).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Whether `primary_count` can confirm irreducibility of `r` rather than
/// trusting the caller.
pub fn irreducibility_checkable(r: &Poly) -> bool {
    r.field().is_finite() || r.degree().is_some_and(|d| d <= 2)
}

fn check_irreducible(r: &Poly) -> Result<()> {
    if !r.is_monic() {
        return Err(Error::NonMonic);
    }
    if irreducibility_checkable(r) && !is_irreducible(r)? {
        return Err(Error::NotIrreducible(r.to_string()));
    }
    Ok(())
}

/// `n_k(M, r)`: number of primary invariants `r^l` with `l >= k`.
pub fn primary_count(m: &Mat, r: &Poly, k: usize) -> Result<usize> {
    m.require_square()?;
    assert!(k >= 1, "k is positive");
    check_irreducible(r)?;
    let d = r.degree().expect("nonzero");
    let rm = m.eval_poly(r)?;
    let ranks = rank_sequence(&rm, k);
    Ok((ranks[k - 1] - ranks[k]) / d)
}

/// `(n_1(M,r), n_2(M,r), ...)`, trailing zeros dropped.
pub fn primary_sequence(m: &Mat, r: &Poly) -> Result<Vec<usize>> {
    m.require_square()?;
    check_irreducible(r)?;
    let d = r.degree().expect("nonzero");
    let rm = m.eval_poly(r)?;
    Ok(differences(&rank_sequence(&rm, m.rows()), d))
}

/// Bases (as matrix columns) of `E = ker f(M)^n` and `R = im f(M)^n`.
pub fn fitting_split(m: &Mat, f: &Poly) -> Result<(Mat, Mat)> {
    m.require_square()?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // the part of the characteristic polynomial sharing factors with f
    // plays the role of f^n without forming large powers
    let mut rest = super::charpoly(m)?;
    let mut part = Poly::one(m.field());
    loop {
        let g = rest.gcd(f);
        if g.is_constant() {
            break;
        }
        rest = rest.exact_div(&g);
        part = part.mul(&g);
    }
    let e = m.eval_poly(&part)?;
    Ok((e.kernel_basis(), e.image_basis()))
}

/// Matrix of `M` restricted to the span of the columns of `w` (which must
/// be independent and `M`-stable), in that basis.
pub fn restrict(m: &Mat, w: &Mat) -> Result<Mat> {
    let mw = m.checked_mul(w)?;
    w.solve(&mw)?.ok_or(Error::NotStable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::linalg::{companion, jordan_block};
    use crate::parse::parse_poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn jordan_examples() {
        let q = Field::rationals();
        let m = companion(&parse_poly(&q, "(t-1)^2").unwrap())
            .unwrap()
            .direct_sum(&companion(&parse_poly(&q, "t-1").unwrap()).unwrap());
        let one = q.one();
        assert_eq!(jordan_number(&m, &one, 1).unwrap(), 2);
        assert_eq!(jordan_number(&m, &one, 2).unwrap(), 1);
        assert_eq!(jordan_number(&m, &one, 3).unwrap(), 0);
        assert_eq!(jordan_sequence(&m, &one).unwrap(), vec![2, 1]);
        assert_eq!(jordan_number(&Mat::zeros(&q, 4, 4), &q.zero(), 1).unwrap(), 4);
        assert_eq!(jordan_number(&m, &q.from_i64(7), 1).unwrap(), 0);
    }

    #[test]
    fn primary_examples() {
        let q = Field::rationals();
        let r = parse_poly(&q, "t^2+1").unwrap();
        let m = companion(&r.pow(2)).unwrap();
        assert_eq!(primary_count(&m, &r, 1).unwrap(), 1);
        assert_eq!(primary_count(&m, &r, 2).unwrap(), 1);
        assert_eq!(primary_count(&m, &r, 3).unwrap(), 0);
        let c = companion(&r).unwrap();
        let m2 = c.direct_sum(&c);
        assert_eq!(primary_count(&m2, &r, 1).unwrap(), 2);
        assert_eq!(primary_count(&m2, &r, 2).unwrap(), 0);
        assert!(matches!(
            primary_count(&m2, &parse_poly(&q, "t^2-1").unwrap(), 1),
            Err(Error::NotIrreducible(_))
        ));
    }

    #[test]
    fn linear_primary_count_is_jordan_number() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let f = Field::prime(3).unwrap();
        for _ in 0..40 {
            let z = f.random(&mut rng);
            let blocks: Vec<Mat> = (0..rng.gen_range(1..4))
                .map(|_| {
                    let zz = if rng.gen_bool(0.7) { z.clone() } else { f.random(&mut rng) };
                    jordan_block(&f, &zz, rng.gen_range(1..4))
                })
                .collect();
            let m = Mat::direct_sum_all(&f, &blocks);
            let pm = Mat::random_invertible(&f, m.rows(), &mut rng);
            let m = m.conjugate(&pm).unwrap();
            let lin = Poly::linear(&f, &z);
            for k in 1..5 {
                assert_eq!(jordan_number(&m, &z, k).unwrap(), primary_count(&m, &lin, k).unwrap());
            }
        }
    }

    #[test]
    fn fitting_split_examples() {
        let q = Field::rationals();
        let t = parse_poly(&q, "t").unwrap();
        let nil = jordan_block(&q, &q.zero(), 3);
        let (e, r) = fitting_split(&nil, &t).unwrap();
        assert_eq!((e.cols(), r.cols()), (3, 0));
        let inv = companion(&parse_poly(&q, "t^2+1").unwrap()).unwrap();
        let m = inv.direct_sum(&nil);
        let (e, r) = fitting_split(&m, &t).unwrap();
        assert_eq!((e.cols(), r.cols()), (3, 2));
        assert_eq!(restrict(&m, &e).unwrap().rows(), 3);
        let rr = restrict(&m, &r).unwrap();
        assert!(rr.is_invertible());
        let (e, _) = fitting_split(&inv, &parse_poly(&q, "t-5").unwrap()).unwrap();
        assert_eq!(e.cols(), 0);
    }

    #[test]
    fn fitting_split_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let f = Field::prime(5).unwrap();
        for _ in 0..30 {
            let n = rng.gen_range(1..=6);
            let m = Mat::random(&f, n, n, &mut rng);
            let g = Poly::new(&f, vec![f.random(&mut rng), f.random(&mut rng), f.one()]);
            let (e, r) = fitting_split(&m, &g).unwrap();
            assert_eq!(e.cols() + r.cols(), n);
            assert_eq!(e.hcat(&r).rank(), n);
            let me = restrict(&m, &e).unwrap();
            let mr = restrict(&m, &r).unwrap();
            assert!(me.eval_poly(&g).unwrap().pow(n.max(1)).is_zero());
            assert!(mr.eval_poly(&g).unwrap().is_invertible());
        }
    }
}

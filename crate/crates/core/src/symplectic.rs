//! Symplectic pairs `(B, U)`: alternating tests, the standard extension
//! `S(v)`, validation, isometry and induced pairs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{companion, invariant_factors, restrict, similar, InvFactors, Mat};
use crate::poly::Poly;

/// Gram matrix `B` of a symplectic form together with a `b`-alternating
/// endomorphism `U`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticPair {
    #[serde(rename = "B")]
    pub b: Mat,
    #[serde(rename = "U")]
    pub u: Mat,
}

impl SymplecticPair {
    pub fn new(b: Mat, u: Mat) -> Self {
        SymplecticPair { b, u }
    }

    pub fn field(&self) -> &Field {
        self.b.field()
    }

    pub fn dim(&self) -> usize {
        self.b.rows()
    }

    /// Orthogonal direct sum.
    pub fn orthogonal_sum(&self, other: &SymplecticPair) -> SymplecticPair {
        SymplecticPair { b: self.b.direct_sum(&other.b), u: self.u.direct_sum(&other.u) }
    }

    pub fn trivial(field: &Field) -> SymplecticPair {
        SymplecticPair { b: Mat::zeros(field, 0, 0), u: Mat::zeros(field, 0, 0) }
    }
}

/// Skew-symmetric with zero diagonal.
pub fn is_alternating(m: &Mat) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("alternating test needs a square matrix".into()));
    }
    let f = m.field();
    for i in 0..m.rows() {
        if !f.is_zero(m.get(i, i)) {
            return Ok(false);
        }
        for j in i + 1..m.rows() {
            if !f.is_zero(&f.add(m.get(i, j), m.get(j, i))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `b(x, u(x)) = 0` for all `x`, i.e. `B U` alternating.
pub fn is_b_alternating(b: &Mat, u: &Mat) -> Result<bool> {
    if !b.is_square() || !u.is_square() || b.rows() != u.rows() {
        return Err(Error::DimensionMismatch(format!(
            "B is {}x{}, U is {}x{}",
            b.rows(),
            b.cols(),
            u.rows(),
            u.cols()
        )));
    }
    is_alternating(&b.checked_mul(u)?)
}

/// `[[0, -I], [I, 0]]` of size `2n`.
pub fn standard_form(field: &Field, n: usize) -> Mat {
    let i = Mat::identity(field, n);
    let z = Mat::zeros(field, n, n);
    Mat::block(field, &[vec![z.clone(), i.neg()], vec![i, z]]).expect("square blocks")
}

/// `S(v) = (S_V, v (+) v^T)` on primal-then-dual coordinates.
pub fn symplectic_extension(v: &Mat) -> Result<SymplecticPair> {
    v.require_square()?;
    let f = v.field();
    Ok(SymplecticPair { b: standard_form(f, v.rows()), u: v.direct_sum(&v.transpose()) })
}

/// Returns `f_1, f_2, ...` when the list is `f_1, f_1, f_2, f_2, ...`.
pub fn halve_invariant_factors(inv: &InvFactors) -> Option<Vec<Poly>> {
    let fs = &inv.factors;
    if fs.len() % 2 != 0 {
        return None;
    }
    let mut half = Vec::with_capacity(fs.len() / 2);
    for pair in fs.chunks(2) {
        if pair[0] != pair[1] {
            return None;
        }
        half.push(pair[0].clone());
    }
    Some(half)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub shapes_match: bool,
    pub nondegenerate: bool,
    pub alternating: bool,
    pub b_alternating: bool,
    pub doubled_invariant_factors: bool,
    pub invariant_factors: Vec<String>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.shapes_match
            && self.nondegenerate
            && self.alternating
            && self.b_alternating
            && self.doubled_invariant_factors
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.shapes_match {
            out.push("shapes");
        }
        if !self.nondegenerate {
            out.push("nondegenerate");
        }
        if !self.alternating {
            out.push("alternating");
        }
        if !self.b_alternating {
            out.push("b_alternating");
        }
        if !self.doubled_invariant_factors {
            out.push("doubled_invariant_factors");
        }
        out
    }
}

pub fn validate_pair(b: &Mat, u: &Mat) -> ValidityReport {
    let shapes_match = b.is_square()
        && u.is_square()
        && b.rows() == u.rows()
        && b.field() == u.field();
    if !shapes_match {
        return ValidityReport {
            shapes_match,
            nondegenerate: false,
            alternating: false,
            b_alternating: false,
            doubled_invariant_factors: false,
            invariant_factors: Vec::new(),
        };
    }
    let inv = invariant_factors(u).expect("square");
    ValidityReport {
        shapes_match,
        nondegenerate: b.is_invertible(),
        alternating: is_alternating(b).expect("square"),
        b_alternating: is_b_alternating(b, u).expect("square"),
        doubled_invariant_factors: halve_invariant_factors(&inv).is_some(),
        invariant_factors: inv.rendered(),
    }
}

pub fn require_valid(p: &SymplecticPair) -> Result<()> {
    let report = validate_pair(&p.b, &p.u);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidPair(format!("failed checks: {}", report.failures().join(", "))))
    }
}

/// An endomorphism `v` with `S(v)` isometric to the pair.
pub fn extract_v(p: &SymplecticPair) -> Result<Mat> {
    require_valid(p)?;
    let inv = invariant_factors(&p.u)?;
    let half = halve_invariant_factors(&inv).expect("validated");
    let blocks: Vec<Mat> = half.iter().map(|f| companion(f).expect("monic")).collect();
    Ok(Mat::direct_sum_all(p.field(), &blocks))
}

/// Pairs are isometric iff their endomorphisms are similar.
pub fn isometry_test(p1: &SymplecticPair, p2: &SymplecticPair) -> Result<bool> {
    require_valid(p1)?;
    require_valid(p2)?;
    similar(&p1.u, &p2.u)
}

fn symmetric_from(field: &Field, d: usize, coords: &[Scalar]) -> Mat {
    let mut s = Mat::zeros(field, d, d);
    let mut idx = 0;
    for i in 0..d {
        for j in i..d {
            s.set(i, j, coords[idx].clone());
            s.set(j, i, coords[idx].clone());
            idx += 1;
        }
    }
    s
}

/// Invertible symmetric `s` with `s C(r)` symmetric.
pub fn frobenius_symmetrizer(r: &Poly) -> Result<Mat> {
    let c = companion(r)?;
    let f = r.field();
    let d = c.rows();
    let unknowns = d * (d + 1) / 2;
    let index = |i: usize, j: usize| {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * d - i * (i + 1) / 2 + j
    };
    // (sC)_{ij} - (sC)_{ji} = sum_k s_ik C_kj - s_jk C_ki
    let mut rows = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let mut row = vec![f.zero(); unknowns];
            for k in 0..d {
                let a = index(i, k);
                row[a] = f.add(&row[a], c.get(k, j));
                let b = index(j, k);
                row[b] = f.sub(&row[b], c.get(k, i));
            }
            rows.push(row);
        }
    }
    let system = if rows.is_empty() {
        Mat::zeros(f, 0, unknowns)
    } else {
        Mat::from_rows(f, rows)?
    };
    let basis = system.kernel_basis().columns();
    let candidate = |coords: &[Scalar]| -> Option<Mat> {
        let s = symmetric_from(f, d, coords);
        s.is_invertible().then_some(s)
    };
    for v in &basis {
        if let Some(s) = candidate(v) {
            return Ok(s);
        }
    }
    let k = basis.len();
    if k <= 12 {
        for mask in 1u32..(1 << k) {
            let coords = combine(f, &basis, |i| if mask >> i & 1 == 1 { f.one() } else { f.zero() });
            if let Some(s) = candidate(&coords) {
                return Ok(s);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..1000 {
        let weights: Vec<Scalar> = (0..k).map(|_| f.random(&mut rng)).collect();
        let coords = combine(f, &basis, |i| weights[i].clone());
        if let Some(s) = candidate(&coords) {
            return Ok(s);
        }
    }
    Err(Error::SearchExhausted)
}

fn combine(f: &Field, basis: &[Vec<Scalar>], weight: impl Fn(usize) -> Scalar) -> Vec<Scalar> {
    let n = basis.first().map_or(0, Vec::len);
    let mut out = vec![f.zero(); n];
    for (i, v) in basis.iter().enumerate() {
        let w = weight(i);
        if f.is_zero(&w) {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o = f.add(o, &f.mul(&w, x));
        }
    }
    out
}

/// Columns of the identity not among the pivots of `rows`, completing the
/// row space of `rows` to the whole space.
fn echelon_complement(n: usize, rows: &Mat) -> Vec<usize> {
    if rows.rows() == 0 {
        return (0..n).collect();
    }
    let (_, pivots) = rows.rref();
    (0..n).filter(|j| !pivots.contains(j)).collect()
}

/// The pair induced on `W / (W ∩ W^⊥)` for a `U`-stable subspace `W`
/// given by the columns of `w`.
pub fn induced_pair(p: &SymplecticPair, w: &Mat) -> Result<SymplecticPair> {
    let f = p.field();
    let basis = w.image_basis();
    let k = basis.cols();
    let uw = restrict(&p.u, &basis)?;
    let gram = basis.transpose().mul(&p.b).mul(&basis);
    let radical = gram.kernel_basis();
    let keep = echelon_complement(k, &radical.transpose());
    let mut comp = Mat::zeros(f, k, keep.len());
    for (c, &j) in keep.iter().enumerate() {
        comp.set(j, c, f.one());
    }
    let b_bar = comp.transpose().mul(&gram).mul(&comp);
    // coordinates of U c in the basis (complement, radical), complement part kept
    let full = comp.hcat(&radical);
    let images = uw.mul(&comp);
    let coords = full.solve(&images)?.ok_or(Error::NotStable)?;
    let u_bar = coords.submatrix(0..keep.len(), 0..keep.len());
    Ok(SymplecticPair { b: b_bar, u: u_bar })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::jordan_block;
    use crate::parse::parse_poly;
    use rand::Rng;

    fn p(f: &Field, s: &str) -> Poly {
        parse_poly(f, s).unwrap()
    }

    #[test]
    fn alternating_examples() {
        let q = Field::rationals();
        let f2 = Field::prime(2).unwrap();
        assert!(is_alternating(&Mat::from_ints(&q, &[&[0, 1], &[-1, 0]])).unwrap());
        assert!(is_alternating(&Mat::from_ints(&f2, &[&[0, 1], &[1, 0]])).unwrap());
        assert!(!is_alternating(&Mat::identity(&f2, 2)).unwrap());
        assert!(!is_alternating(&Mat::from_ints(&q, &[&[0, 1], &[1, 0]])).unwrap());
        let b = Mat::from_ints(&q, &[&[0, 1], &[-1, 0]]);
        assert!(is_b_alternating(&b, &Mat::identity(&q, 2)).unwrap());
        assert!(is_b_alternating(&b, &Mat::identity(&q, 3)).is_err());
    }

    #[test]
    fn extension_examples() {
        let q = Field::rationals();
        let s = symplectic_extension(&Mat::zeros(&q, 1, 1)).unwrap();
        assert_eq!(s.b, Mat::from_ints(&q, &[&[0, -1], &[1, 0]]));
        assert!(s.u.is_zero());
        let c = companion(&p(&q, "t^2+1")).unwrap();
        let s = symplectic_extension(&c).unwrap();
        assert_eq!(invariant_factors(&s.u).unwrap().factors, vec![p(&q, "t^2+1"), p(&q, "t^2+1")]);
        assert!(validate_pair(&s.b, &s.u).is_valid());
    }

    #[test]
    fn random_extensions_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let f = Field::prime(5).unwrap();
        for _ in 0..100 {
            let n = rng.gen_range(1..=4);
            let v = Mat::random(&f, n, n, &mut rng);
            let s = symplectic_extension(&v).unwrap();
            assert!(is_b_alternating(&s.b, &s.u).unwrap());
        }
    }

    #[test]
    fn validation_failures() {
        let q = Field::rationals();
        let s = symplectic_extension(&Mat::zeros(&q, 1, 1)).unwrap();
        let report = validate_pair(&Mat::zeros(&q, 2, 2), &s.u);
        assert!(!report.nondegenerate);
        let u = companion(&p(&q, "t")).unwrap().direct_sum(&companion(&p(&q, "t-1")).unwrap());
        let report = validate_pair(&s.b, &u);
        assert!(!report.doubled_invariant_factors);
        assert_eq!(report.invariant_factors, vec!["t^2-t".to_string()]);
    }

    #[test]
    fn isometry_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let q = Field::rationals();
        let v = Mat::random(&q, 3, 3, &mut rng);
        let pm = Mat::random_invertible(&q, 3, &mut rng);
        let a = symplectic_extension(&v).unwrap();
        let b = symplectic_extension(&v.conjugate(&pm).unwrap()).unwrap();
        assert!(isometry_test(&a, &b).unwrap());
        let z = symplectic_extension(&Mat::zeros(&q, 1, 1)).unwrap();
        let n = symplectic_extension(&companion(&p(&q, "t^2")).unwrap()).unwrap();
        assert!(!isometry_test(&z, &n).unwrap());
        let c1 = symplectic_extension(&companion(&p(&q, "t^2+1")).unwrap()).unwrap();
        let c2 = symplectic_extension(&companion(&p(&q, "t^2+2")).unwrap()).unwrap();
        assert!(!isometry_test(&c1, &c2).unwrap());
    }

    #[test]
    fn symmetrizer_examples() {
        let q = Field::rationals();
        let s = frobenius_symmetrizer(&p(&q, "t^2")).unwrap();
        let c = companion(&p(&q, "t^2")).unwrap();
        assert!(s.is_symmetric() && s.is_invertible() && s.mul(&c).is_symmetric());
        assert_eq!(frobenius_symmetrizer(&p(&q, "t-4")).unwrap().rows(), 1);
        let hand = Mat::from_ints(&q, &[&[0, 1], &[1, 0]]);
        assert!(hand.mul(&c).is_symmetric());
    }

    #[test]
    fn symmetrizer_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for spec in ["GF(3)", "GF(2)", "Q", "GF(2)(s)"] {
            let f = Field::parse(spec).unwrap();
            for _ in 0..30 {
                let d = rng.gen_range(1..=4);
                let mut coeffs: Vec<Scalar> = (0..d).map(|_| f.random(&mut rng)).collect();
                coeffs.push(f.one());
                let r = Poly::new(&f, coeffs);
                let s = frobenius_symmetrizer(&r).unwrap();
                let c = companion(&r).unwrap();
                assert!(s.is_symmetric() && s.is_invertible() && s.mul(&c).is_symmetric());
            }
        }
    }

    #[test]
    fn induced_pair_examples() {
        let q = Field::rationals();
        let v1 = companion(&p(&q, "t^2+1")).unwrap();
        let v2 = jordan_block(&q, &q.from_i64(3), 2);
        let whole = symplectic_extension(&v1.direct_sum(&v2)).unwrap();
        let all = Mat::identity(&q, 8);
        let ind = induced_pair(&whole, &all).unwrap();
        assert!(isometry_test(&ind, &whole).unwrap());
        // primal coordinates of v1 and v2 together: totally isotropic
        let mut iso = Mat::zeros(&q, 8, 4);
        for i in 0..4 {
            iso.set(i, i, q.one());
        }
        assert_eq!(induced_pair(&whole, &iso).unwrap().dim(), 0);
        // primal and dual coordinates of the v1 block
        let mut w = Mat::zeros(&q, 8, 4);
        for (c, i) in [0, 1, 4, 5].into_iter().enumerate() {
            w.set(i, c, q.one());
        }
        let ind = induced_pair(&whole, &w).unwrap();
        assert!(isometry_test(&ind, &symplectic_extension(&v1).unwrap()).unwrap());
        let mut bad = Mat::zeros(&q, 8, 1);
        bad.set(0, 0, q.one());
        assert_eq!(induced_pair(&whole, &bad), Err(Error::NotStable));
    }

    #[test]
    fn differences_of_alternating_are_alternating() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        let f = Field::prime(3).unwrap();
        let b = standard_form(&f, 2);
        let binv = b.inverse().unwrap();
        for _ in 0..50 {
            let m1 = random_alternating(&f, 4, &mut rng);
            let m2 = random_alternating(&f, 4, &mut rng);
            let u1 = binv.mul(&m1);
            let u2 = binv.mul(&m2);
            assert!(is_b_alternating(&b, &u1).unwrap() && is_b_alternating(&b, &u2).unwrap());
            assert!(is_b_alternating(&b, &u1.sub(&u2)).unwrap());
        }
    }

    fn random_alternating(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Mat {
        let mut m = Mat::zeros(f, n, n);
        for i in 0..n {
            for j in i + 1..n {
                let x = f.random(rng);
                m.set(j, i, f.neg(&x));
                m.set(i, j, x);
            }
        }
        m
    }
}

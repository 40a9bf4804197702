//! Dense matrices over a [`Field`] and the exact kernels built on them.

mod snf;
mod spectral;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::Poly;

pub use snf::{charpoly, invariant_factors, poly_det, similar, InvFactors};
pub use spectral::{
    fitting_split, irreducibility_checkable, jordan_number, jordan_sequence, primary_count,
    primary_sequence, restrict,
};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Mat { field: field.clone(), rows, cols, data }
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Self::new(field, rows, cols, vec![field.zero(); rows * cols])
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        Self::scalar(field, n, &field.one())
    }

    pub fn scalar(field: &Field, n: usize, c: &Scalar) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self::new(field, r, c, rows.into_iter().flatten().collect()))
    }

    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Self {
        let data: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Self::from_rows(field, data).expect("rectangular literal")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare)
        }
    }

    fn same_shape(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFieldContexts);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Mat) -> Result<Mat> {
        self.same_shape(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Ok(Mat::new(f, self.rows, self.cols, data))
    }

    pub fn checked_sub(&self, other: &Mat) -> Result<Mat> {
        self.same_shape(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Ok(Mat::new(f, self.rows, self.cols, data))
    }

    pub fn checked_mul(&self, other: &Mat) -> Result<Mat> {
        if self.field != other.field {
            return Err(Error::MixedFieldContexts);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        let idx = i * out.cols + j;
                        out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.checked_add(other).expect("matrix addition")
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.checked_sub(other).expect("matrix subtraction")
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        self.checked_mul(other).expect("matrix multiplication")
    }

    pub fn neg(&self) -> Mat {
        let f = &self.field;
        Mat::new(f, self.rows, self.cols, self.data.iter().map(|a| f.neg(a)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        let f = &self.field;
        Mat::new(f, self.rows, self.cols, self.data.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn pow(&self, e: usize) -> Mat {
        assert!(self.is_square());
        let mut result = Mat::identity(&self.field, self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Horner evaluation `f(M)`.
    pub fn eval_poly(&self, f: &Poly) -> Result<Mat> {
        self.require_square()?;
        if f.field() != &self.field {
            return Err(Error::MixedFieldContexts);
        }
        let n = self.rows;
        let mut acc = Mat::zeros(&self.field, n, n);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let idx = i * n + i;
                acc.data[idx] = self.field.add(&acc.data[idx], c);
            }
        }
        Ok(acc)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let f = &self.field;
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(i) = (r..a.rows).find(|&i| !f.is_zero(a.get(i, c))) else {
                continue;
            };
            a.swap_rows(i, r);
            let inv = f.inv(a.get(r, c)).expect("nonzero pivot");
            for j in c..a.cols {
                let x = f.mul(a.get(r, j), &inv);
                a.set(r, j, x);
            }
            for i in 0..a.rows {
                if i == r || f.is_zero(a.get(i, c)) {
                    continue;
                }
                let factor = a.get(i, c).clone();
                for j in c..a.cols {
                    let x = f.sub(a.get(i, j), &f.mul(&factor, a.get(r, j)));
                    a.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        let f = &self.field;
        let mut a = self.clone();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(i) = (r..a.rows).find(|&i| !f.is_zero(a.get(i, c))) else {
                continue;
            };
            a.swap_rows(i, r);
            let inv = f.inv(a.get(r, c)).expect("nonzero pivot");
            for i in r + 1..a.rows {
                if f.is_zero(a.get(i, c)) {
                    continue;
                }
                let factor = f.mul(a.get(i, c), &inv);
                for j in c..a.cols {
                    let x = f.sub(a.get(i, j), &f.mul(&factor, a.get(r, j)));
                    a.set(i, j, x);
                }
            }
            r += 1;
        }
        r
    }

    pub fn det(&self) -> Result<Scalar> {
        self.require_square()?;
        let f = &self.field;
        let mut a = self.clone();
        let n = a.rows;
        let mut det = f.one();
        for c in 0..n {
            let Some(i) = (c..n).find(|&i| !f.is_zero(a.get(i, c))) else {
                return Ok(f.zero());
            };
            if i != c {
                a.swap_rows(i, c);
                det = f.neg(&det);
            }
            let pivot = a.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot)?;
            for i in c + 1..n {
                if f.is_zero(a.get(i, c)) {
                    continue;
                }
                let factor = f.mul(a.get(i, c), &inv);
                for j in c..n {
                    let x = f.sub(a.get(i, j), &f.mul(&factor, a.get(c, j)));
                    a.set(i, j, x);
                }
            }
        }
        Ok(det)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Mat> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let aug = self.hcat(&Mat::identity(&self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        Ok(r.submatrix(0..n, n..2 * n))
    }

    /// Columns spanning the null space `{x : Mx = 0}`.
    pub fn kernel_basis(&self) -> Mat {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, fc));
            }
            basis.push(v);
        }
        Mat::from_columns(f, self.cols, &basis)
    }

    /// Pivot columns of `M`, a basis of its column space.
    pub fn image_basis(&self) -> Mat {
        let (_, pivots) = self.rref();
        let cols: Vec<Vec<Scalar>> = pivots.iter().map(|&c| self.column(c)).collect();
        Mat::from_columns(&self.field, self.rows, &cols)
    }

    /// Some `X` with `self * X = rhs`, if one exists.
    pub fn solve(&self, rhs: &Mat) -> Result<Option<Mat>> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch("solve: row counts differ".into()));
        }
        let n = self.cols;
        let aug = self.hcat(rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= n) {
            return Ok(None);
        }
        let f = &self.field;
        let mut x = Mat::zeros(f, n, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(row, n + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn hcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zeros(&self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        let mut out = Mat::zeros(&self.field, rows.len(), cols.len());
        for (oi, i) in rows.clone().enumerate() {
            for (oj, j) in cols.clone().enumerate() {
                out.set(oi, oj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Assembles a block matrix; every row of blocks must share heights and
    /// every column of blocks must share widths.
    pub fn block(field: &Field, blocks: &[Vec<Mat>]) -> Result<Mat> {
        let heights: Vec<usize> = blocks.iter().map(|row| row[0].rows).collect();
        let widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        for row in blocks {
            if row.len() != widths.len() {
                return Err(Error::DimensionMismatch("block row lengths".into()));
            }
        }
        let mut out = Mat::zeros(field, heights.iter().sum(), widths.iter().sum());
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::DimensionMismatch("block shapes".into()));
                }
                if &b.field != field {
                    return Err(Error::MixedFieldContexts);
                }
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out.set(r0 + i, c0 + j, b.get(i, j).clone());
                    }
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    pub fn direct_sum(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn direct_sum_all(field: &Field, parts: &[Mat]) -> Mat {
        parts.iter().fold(Mat::zeros(field, 0, 0), |acc, m| acc.direct_sum(m))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Conjugate `P^-1 M P`.
    pub fn conjugate(&self, p: &Mat) -> Result<Mat> {
        Ok(p.inverse()?.mul(self).mul(p))
    }

    pub fn random<R: rand::Rng + ?Sized>(field: &Field, rows: usize, cols: usize, rng: &mut R) -> Mat {
        Mat::new(field, rows, cols, (0..rows * cols).map(|_| field.random(rng)).collect())
    }

    pub fn random_invertible<R: rand::Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Mat {
        loop {
            let m = Mat::random(field, n, n, rng);
            if m.is_invertible() {
                return m;
            }
        }
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = self.row(i).iter().map(|x| self.field.render(x)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Companion matrix: ones on the subdiagonal and the last column holding
/// `a_0, ..., a_{n-1}` where `r = t^n - sum a_k t^k`.
pub fn companion(r: &Poly) -> Result<Mat> {
    let n = r.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::WrongDegree { expected: 1, found: 0 });
    }
    if !r.is_monic() {
        return Err(Error::NonMonic);
    }
    let f = r.field();
    let mut m = Mat::zeros(f, n, n);
    for i in 1..n {
        m.set(i, i - 1, f.one());
    }
    for k in 0..n {
        m.set(k, n - 1, f.neg(&r.coeff(k)));
    }
    Ok(m)
}

/// `f(M)` by Horner's rule.
pub fn mat_poly_eval(f: &Poly, m: &Mat) -> Result<Mat> {
    m.eval_poly(f)
}

/// Nilpotent Jordan cell of size `n` (ones on the superdiagonal) plus `z`.
pub fn jordan_block(field: &Field, z: &Scalar, n: usize) -> Mat {
    let mut m = Mat::scalar(field, n, z);
    for i in 1..n {
        m.set(i - 1, i, field.one());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn core_examples() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(Mat::identity(&f2, 2).rank(), 2);
        assert_eq!(Mat::zeros(&f2, 2, 2).kernel_basis().cols(), 2);
        let q = Field::rationals();
        let a = Mat::from_ints(&q, &[&[3]]);
        let b = Mat::from_ints(&q, &[&[5]]);
        assert_eq!(a.direct_sum(&b), Mat::from_ints(&q, &[&[3, 0], &[0, 5]]));
    }

    #[test]
    fn companion_examples() {
        let q = Field::rationals();
        assert_eq!(
            companion(&parse_poly(&q, "t-3").unwrap()).unwrap(),
            Mat::from_ints(&q, &[&[3]])
        );
        assert_eq!(
            companion(&parse_poly(&q, "t^2+1").unwrap()).unwrap(),
            Mat::from_ints(&q, &[&[0, -1], &[1, 0]])
        );
        assert_eq!(companion(&parse_poly(&q, "2t+1").unwrap()), Err(Error::NonMonic));
    }

    #[test]
    fn poly_eval_examples() {
        let q = Field::rationals();
        let p = parse_poly(&q, "t^2+1").unwrap();
        assert!(companion(&p).unwrap().eval_poly(&p).unwrap().is_zero());
        let j = jordan_block(&q, &q.zero(), 2);
        assert!(j.eval_poly(&parse_poly(&q, "t^2").unwrap()).unwrap().is_zero());
        let i = Mat::identity(&q, 3);
        assert!(i.eval_poly(&parse_poly(&q, "t-1").unwrap()).unwrap().is_zero());
        assert_eq!(Mat::zeros(&q, 2, 3).eval_poly(&p), Err(Error::NotSquare));
    }

    #[test]
    fn kernel_inverse_solve_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for spec in ["Q", "GF(5)", "GF(2)(s)", "GF(4)|t^2+t+1"] {
            let f = Field::parse(spec).unwrap();
            for _ in 0..20 {
                let m = Mat::random(&f, 4, 5, &mut rng);
                let k = m.kernel_basis();
                assert!(m.mul(&k).is_zero());
                assert_eq!(k.cols() + m.rank(), 5);
                assert_eq!(k.rank(), k.cols());
                let sq = Mat::random_invertible(&f, 3, &mut rng);
                let inv = sq.inverse().unwrap();
                assert_eq!(sq.mul(&inv), Mat::identity(&f, 3));
                let det = sq.det().unwrap();
                let det_inv = inv.det().unwrap();
                assert_eq!(f.mul(&det, &det_inv), f.one());
                let rhs = Mat::random(&f, 3, 2, &mut rng);
                let x = sq.solve(&rhs).unwrap().unwrap();
                assert_eq!(sq.mul(&x), rhs);
            }
        }
    }

    #[test]
    fn singular_systems() {
        let q = Field::rationals();
        let m = Mat::from_ints(&q, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.det().unwrap(), q.zero());
        assert!(m.inverse().is_err());
        assert!(m.solve(&Mat::from_ints(&q, &[&[1], &[0]])).unwrap().is_none());
        assert_eq!(m.image_basis().cols(), 1);
    }
}

//! Witnesses `u = u1 - u2`: the W-algebra block behind the duplication
//! construction, assembly for decided instances, exhaustive search over
//! finite fields, and verification.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cases::{decide_extension, exceptional_and_regular, PairCtx};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{companion, invariant_factors, Mat};
use crate::poly::{decompose_base_sigma, Poly};
use crate::symplectic::{
    frobenius_symmetrizer, is_alternating, is_b_alternating, symplectic_extension, SymplecticPair,
};

pub const DEFAULT_SEARCH_BOUND: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(rename = "B")]
    pub b: Mat,
    #[serde(rename = "U")]
    pub u: Mat,
    #[serde(rename = "U1")]
    pub u1: Mat,
    #[serde(rename = "U2")]
    pub u2: Mat,
}

impl Witness {
    pub fn pair(&self) -> SymplecticPair {
        SymplecticPair::new(self.b.clone(), self.u.clone())
    }

    pub fn dim(&self) -> usize {
        self.b.rows()
    }

    pub fn orthogonal_sum(&self, other: &Witness) -> Witness {
        Witness {
            b: self.b.direct_sum(&other.b),
            u: self.u.direct_sum(&other.u),
            u1: self.u1.direct_sum(&other.u1),
            u2: self.u2.direct_sum(&other.u2),
        }
    }
}

/// The matrices `A`, `B`, `C = AB` and the form `H` over `R = F[C(r)]`,
/// expanded to `4d x 4d` matrices over the base field (block `(i, j)` of
/// size `d` holds the `(i, j)` entry).
#[derive(Clone, Debug)]
pub struct WBlock {
    pub r: Poly,
    pub d: usize,
    pub x: Mat,
    pub s: Mat,
    pub a: Mat,
    pub b: Mat,
    pub c: Mat,
    pub h: Mat,
}

fn expand(field: &crate::field::Field, d: usize, blocks: [[Mat; 4]; 4]) -> Mat {
    let rows: Vec<Vec<Mat>> = blocks.into_iter().map(|r| r.into_iter().collect()).collect();
    let m = Mat::block(field, &rows).expect("square blocks");
    debug_assert_eq!(m.rows(), 4 * d);
    m
}

fn violated(what: &str) -> Error {
    Error::ConstructionInvariantViolated(what.to_string())
}

pub fn w_algebra_block(ctx: &PairCtx, r: &Poly) -> Result<WBlock> {
    let f = ctx.field();
    if r.field() != f {
        return Err(Error::MixedFieldContexts);
    }
    if !r.is_monic() {
        return Err(Error::NonMonic);
    }
    let d = match r.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::WrongDegree { expected: 1, found: r.degree_i64() }),
    };
    let (lam, alpha) = (ctx.p.trace(), ctx.p.coeff(0));
    let (mu, beta) = (ctx.q.trace(), ctx.q.coeff(0));
    let sc = |c: &Scalar| Mat::scalar(f, d, c);
    let z = || Mat::zeros(f, d, d);
    let one = || Mat::identity(f, d);
    let x = sc(&f.add(&alpha, &beta)).add(&companion(r)?);
    let s = frobenius_symmetrizer(r)?;
    let a = expand(
        f,
        d,
        [
            [z(), sc(&f.neg(&alpha)), z(), z()],
            [one(), sc(&lam), z(), z()],
            [z(), z(), z(), sc(&f.neg(&alpha))],
            [z(), z(), one(), sc(&lam)],
        ],
    );
    let b = expand(
        f,
        d,
        [
            [z(), x.neg(), sc(&f.neg(&beta)), sc(&f.neg(&f.mul(&lam, &beta)))],
            [z(), sc(&mu), z(), sc(&beta)],
            [one(), sc(&lam), sc(&mu), sc(&f.mul(&lam, &mu)).sub(&x)],
            [z(), one().neg(), z(), z()],
        ],
    );
    let ls = s.scale(&lam);
    let h = expand(
        f,
        d,
        [
            [z(), z(), z(), s.clone()],
            [z(), z(), s.clone(), ls.clone()],
            [z(), s.neg(), z(), z()],
            [s.neg(), ls.neg(), z(), z()],
        ],
    );
    let c = a.mul(&b);
    let block = WBlock { r: r.clone(), d, x, s, a, b, c, h };
    block.check(ctx)?;
    Ok(block)
}

impl WBlock {
    /// `x I_4` expanded.
    pub fn x4(&self) -> Mat {
        let f = self.x.field();
        Mat::direct_sum_all(f, &[self.x.clone(), self.x.clone(), self.x.clone(), self.x.clone()])
    }

    /// All defining relations, each named.
    pub fn relations(&self, ctx: &PairCtx) -> Vec<(&'static str, bool)> {
        let (lam, mu) = (ctx.p.trace(), ctx.q.trace());
        let ab = self.a.mul(&self.b);
        let anti = ab.add(&self.b.mul(&self.a));
        let rhs = self.a.scale(&mu).add(&self.b.scale(&lam)).sub(&self.x4());
        vec![
            ("p(A) = 0", self.a.eval_poly(&ctx.p).expect("square").is_zero()),
            ("q(B) = 0", self.b.eval_poly(&ctx.q).expect("square").is_zero()),
            ("C = AB", self.c == ab),
            ("AB + BA = mu A + lambda B - x I", anti == rhs),
            ("H alternating", is_alternating(&self.h).expect("square")),
            ("H invertible", self.h.is_invertible()),
            ("HA alternating", is_alternating(&self.h.mul(&self.a)).expect("square")),
            ("HB alternating", is_alternating(&self.h.mul(&self.b)).expect("square")),
        ]
    }

    fn check(&self, ctx: &PairCtx) -> Result<()> {
        if let Some((name, _)) = self.relations(ctx).into_iter().find(|(_, ok)| !ok) {
            return Err(violated(name));
        }
        let target = self.r.compose(&ctx.sigma());
        let inv = invariant_factors(&self.a.sub(&self.b))?;
        if inv.factors != vec![target.clone(), target] {
            return Err(violated("invariant factors of A - B"));
        }
        Ok(())
    }
}

/// A symplectic difference whose endomorphism has exactly the two
/// invariant factors `r(t^2 - delta t)`.
pub fn duplication_witness(ctx: &PairCtx, r: &Poly) -> Result<Witness> {
    let w = w_algebra_block(ctx, r)?;
    Ok(Witness { u: w.a.sub(&w.b), b: w.h, u1: w.a, u2: w.b })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub shapes_match: bool,
    pub b_alternating_invertible: bool,
    pub u1_b_alternating: bool,
    pub u2_b_alternating: bool,
    pub p_of_u1_zero: bool,
    pub q_of_u2_zero: bool,
    pub difference_matches: bool,
    pub u1_commutes_with_sigma_u: bool,
    pub u2_commutes_with_sigma_u: bool,
    /// Stability of `Ker(U1 - U2)` under `U1` and `U2`, checked when `p = q`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_stable: Option<bool>,
    pub all_pass: bool,
}

fn stable(m: &Mat, basis: &Mat) -> bool {
    basis.cols() == 0 || basis.hcat(&m.mul(basis)).rank() == basis.rank()
}

pub fn verify_witness(w: &Witness, ctx: &PairCtx) -> VerificationReport {
    let n = w.b.rows();
    let shapes_match = [&w.b, &w.u, &w.u1, &w.u2].iter().all(|m| m.rows() == n && m.cols() == n)
        && [&w.u, &w.u1, &w.u2].iter().all(|m| m.field() == w.b.field())
        && w.b.field() == ctx.field();
    if !shapes_match {
        return VerificationReport {
            shapes_match,
            b_alternating_invertible: false,
            u1_b_alternating: false,
            u2_b_alternating: false,
            p_of_u1_zero: false,
            q_of_u2_zero: false,
            difference_matches: false,
            u1_commutes_with_sigma_u: false,
            u2_commutes_with_sigma_u: false,
            kernel_stable: None,
            all_pass: false,
        };
    }
    let sig_u = w.u.eval_poly(&ctx.sigma()).expect("square");
    let commutes = |m: &Mat| m.mul(&sig_u) == sig_u.mul(m);
    let kernel_stable = (ctx.p == ctx.q).then(|| {
        let k = w.u1.sub(&w.u2).kernel_basis();
        stable(&w.u1, &k) && stable(&w.u2, &k)
    });
    let mut report = VerificationReport {
        shapes_match,
        b_alternating_invertible: is_alternating(&w.b).expect("square") && w.b.is_invertible(),
        u1_b_alternating: is_b_alternating(&w.b, &w.u1).expect("square"),
        u2_b_alternating: is_b_alternating(&w.b, &w.u2).expect("square"),
        p_of_u1_zero: w.u1.eval_poly(&ctx.p).expect("square").is_zero(),
        q_of_u2_zero: w.u2.eval_poly(&ctx.q).expect("square").is_zero(),
        difference_matches: w.u1.sub(&w.u2) == w.u,
        u1_commutes_with_sigma_u: commutes(&w.u1),
        u2_commutes_with_sigma_u: commutes(&w.u2),
        kernel_stable,
        all_pass: false,
    };
    report.all_pass = report.b_alternating_invertible
        && report.u1_b_alternating
        && report.u2_b_alternating
        && report.p_of_u1_zero
        && report.q_of_u2_zero
        && report.difference_matches
        && report.u1_commutes_with_sigma_u
        && report.u2_commutes_with_sigma_u
        && report.kernel_stable.unwrap_or(true);
    report
}

/// Field order as a machine integer, for enumeration.
fn small_order(ctx: &PairCtx) -> Result<u64> {
    let order = ctx.field().order().ok_or(Error::InfiniteField)?;
    order.to_u64().ok_or(Error::InfiniteField)
}

/// Alternating matrix whose strictly upper entries are the base-`order`
/// digits of `index`, first entry most significant.
fn alternating_at(ctx: &PairCtx, n: usize, order: u64, mut index: u64) -> Mat {
    let f = ctx.field();
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut m = Mat::zeros(f, n, n);
    for &(i, j) in slots.iter().rev() {
        let e = f.element_at(index % order);
        index /= order;
        m.set(j, i, f.neg(&e));
        m.set(i, j, e);
    }
    m
}

/// Exhaustive search for `U1` with `B U1` alternating, `p(U1) = 0` and
/// `q(U1 - U) = 0`, in lexicographic order of the strictly upper entries
/// of `B U1`; the first hit is returned.
pub fn brute_force_witness(pair: &SymplecticPair, ctx: &PairCtx, bound: usize) -> Result<Option<Witness>> {
    let order = small_order(ctx)?;
    if pair.field() != ctx.field() {
        return Err(Error::MixedFieldContexts);
    }
    let n = pair.dim();
    if n > bound {
        return Err(Error::DimensionBoundExceeded { dim: n, bound });
    }
    let slots = (n * n.saturating_sub(1) / 2) as u32;
    let total = order
        .checked_pow(slots)
        .ok_or(Error::DimensionBoundExceeded { dim: n, bound })?;
    let b_inv = pair.b.inverse()?;
    let hit = (0..total).into_par_iter().find_first(|&i| {
        let u1 = b_inv.mul(&alternating_at(ctx, n, order, i));
        u1.eval_poly(&ctx.p).expect("square").is_zero()
            && u1.sub(&pair.u).eval_poly(&ctx.q).expect("square").is_zero()
    });
    Ok(hit.map(|i| {
        let u1 = b_inv.mul(&alternating_at(ctx, n, order, i));
        let u2 = u1.sub(&pair.u);
        Witness { b: pair.b.clone(), u: pair.u.clone(), u1, u2 }
    }))
}

/// Witness for `S(v)` up to isometry: one duplication block per invariant
/// factor of the regular or exceptional part of `v` that is a polynomial in `t^2 - delta t`, and an exhaustive
/// search on the extension of the remaining factors over finite fields.
/// `None` when the remaining factors cannot be covered.
pub fn compose_witness(v: &Mat, ctx: &PairCtx, bound: usize) -> Result<Option<Witness>> {
    if !decide_extension(v, ctx)?.verdict.is_yes() {
        return Err(Error::DecisionWasNo);
    }
    let f = ctx.field();
    let (exc, reg) = exceptional_and_regular(v, ctx)?;
    let mut factors = invariant_factors(&reg)?.factors;
    factors.extend(invariant_factors(&exc)?.factors);
    let mut blocks = Vec::new();
    let mut residual = Vec::new();
    for g in &factors {
        match decompose_base_sigma(g, &ctx.delta) {
            Some(r) if r.degree().unwrap_or(0) >= 1 => blocks.push(duplication_witness(ctx, &r)?),
            _ => residual.push(companion(g)?),
        }
    }
    if !residual.is_empty() {
        if !f.is_finite() {
            return Ok(None);
        }
        let pair = symplectic_extension(&Mat::direct_sum_all(f, &residual))?;
        if pair.dim() > bound {
            return Ok(None);
        }
        match brute_force_witness(&pair, ctx, bound)? {
            Some(w) => blocks.push(w),
            None => return Ok(None),
        }
    }
    let empty = Witness {
        b: Mat::zeros(f, 0, 0),
        u: Mat::zeros(f, 0, 0),
        u1: Mat::zeros(f, 0, 0),
        u2: Mat::zeros(f, 0, 0),
    };
    Ok(Some(blocks.iter().fold(empty, |acc, w| acc.orthogonal_sum(w))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::parse::parse_poly;

    fn p(f: &Field, s: &str) -> Poly {
        parse_poly(f, s).unwrap()
    }

    fn ctx(spec: &str, a: &str, b: &str) -> PairCtx {
        let f = Field::parse(spec).unwrap();
        PairCtx::new(&p(&f, a), &p(&f, b)).unwrap()
    }

    #[test]
    fn nilpotent_block_by_hand() {
        let c = ctx("Q", "t^2", "t^2");
        let f = c.field().clone();
        let w = w_algebra_block(&c, &p(&f, "t")).unwrap();
        assert_eq!(w.a, Mat::from_ints(&f, &[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0]]));
        assert_eq!(w.b, Mat::from_ints(&f, &[&[0, 0, 0, 0], &[0, 0, 0, 0], &[1, 0, 0, 0], &[0, -1, 0, 0]]));
        assert_eq!(w.h, Mat::from_ints(&f, &[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, -1, 0, 0], &[-1, 0, 0, 0]]));
        assert!(w.a.mul(&w.b).add(&w.b.mul(&w.a)).is_zero());
    }

    #[test]
    fn gaussian_duplication() {
        let c = ctx("Q", "t^2+1", "t^2+1");
        let f = c.field().clone();
        let w = duplication_witness(&c, &p(&f, "t+2")).unwrap();
        assert!(verify_witness(&w, &c).all_pass);
        let inv = invariant_factors(&w.u).unwrap();
        assert_eq!(inv.factors, vec![p(&f, "t^2+2"), p(&f, "t^2+2")]);
    }

    #[test]
    fn special_char_two_duplication() {
        let c = ctx("GF(2)(s)", "t^2+t+1", "t^2+t+s");
        let f = c.field().clone();
        let w = duplication_witness(&c, &p(&f, "t^2+t+(1+s)^2")).unwrap();
        assert!(verify_witness(&w, &c).all_pass);
        assert_eq!(w.dim(), 8);
    }

    #[test]
    fn corrupted_witness_fails() {
        let c = ctx("GF(2)", "t^2", "t^2");
        let f = c.field().clone();
        let mut w = duplication_witness(&c, &p(&f, "t")).unwrap();
        assert!(verify_witness(&w, &c).all_pass);
        let e = f.add(w.u2.get(0, 0), &f.one());
        w.u2.set(0, 0, e);
        let r = verify_witness(&w, &c);
        assert!(!r.difference_matches && !r.all_pass);

        let b = Mat::from_ints(&f, &[&[0, 1], &[1, 0]]);
        let n = Mat::from_ints(&f, &[&[0, 1], &[0, 0]]);
        let bad = Witness { b, u: Mat::zeros(&f, 2, 2), u1: n.clone(), u2: n };
        assert!(!verify_witness(&bad, &c).u1_b_alternating);
    }

    #[test]
    fn brute_force_examples() {
        let c = ctx("GF(3)", "t^2+1", "t^2+1");
        let f = c.field().clone();
        let small = symplectic_extension(&Mat::zeros(&f, 1, 1)).unwrap();
        assert_eq!(brute_force_witness(&small, &c, 6).unwrap(), None);
        let big = symplectic_extension(&Mat::zeros(&f, 2, 2)).unwrap();
        let w = brute_force_witness(&big, &c, 6).unwrap().unwrap();
        assert!(verify_witness(&w, &c).all_pass);
        assert_eq!(w.u1, w.u2);
        assert!(matches!(
            brute_force_witness(&big, &c, 2),
            Err(Error::DimensionBoundExceeded { dim: 4, bound: 2 })
        ));
        let q = ctx("Q", "t^2", "t^2");
        let pair = symplectic_extension(&Mat::zeros(q.field(), 1, 1)).unwrap();
        assert_eq!(brute_force_witness(&pair, &q, 6), Err(Error::InfiniteField));
    }

    #[test]
    fn compose_examples() {
        let c = ctx("Q", "t^2+1", "t^2+1");
        let f = c.field().clone();
        let v = companion(&p(&f, "t^2+2")).unwrap();
        let w = compose_witness(&v, &c, DEFAULT_SEARCH_BOUND).unwrap().unwrap();
        assert!(verify_witness(&w, &c).all_pass);
        assert!(crate::linalg::similar(&w.u, &symplectic_extension(&v).unwrap().u).unwrap());

        let c = ctx("Q", "t^2-t", "t^2-t");
        let f = c.field().clone();
        let v = companion(&p(&f, "t-1")).unwrap().direct_sum(&companion(&p(&f, "t")).unwrap());
        assert_eq!(compose_witness(&v, &c, DEFAULT_SEARCH_BOUND).unwrap(), None);

        let c = ctx("GF(3)", "t^2+1", "t^2+1");
        let f = c.field().clone();
        let w = compose_witness(&Mat::zeros(&f, 2, 2), &c, DEFAULT_SEARCH_BOUND).unwrap().unwrap();
        assert!(verify_witness(&w, &c).all_pass);
        assert_eq!(
            compose_witness(&Mat::zeros(&f, 1, 1), &c, DEFAULT_SEARCH_BOUND),
            Err(Error::DecisionWasNo)
        );
    }
}

//! Representatives `v` of the indecomposable symplectic `(p, q)`-differences
//! `S(v)`, row by row through the classification tables.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cases::{Family, PairCtx};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{companion, Mat};
use crate::poly::{irreducibles_of_degree, roots_in_field, Poly};
use crate::quadext::QuadExt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub table: u8,
    /// Row of the table, counted from 1.
    pub row: u8,
    pub params: BTreeMap<String, String>,
    pub rep: Mat,
    pub dim: usize,
}

struct Builder<'a> {
    ctx: &'a PairCtx,
    bound: usize,
    rows: Vec<TableRow>,
}

impl Builder<'_> {
    fn push(&mut self, table: u8, row: u8, params: &[(&str, String)], blocks: &[Poly]) {
        let f = self.ctx.field();
        let mats: Vec<Mat> = blocks
            .iter()
            .filter(|b| b.degree().unwrap_or(0) > 0)
            .map(|b| companion(b).expect("monic"))
            .collect();
        let rep = Mat::direct_sum_all(f, &mats);
        let dim = rep.rows();
        if dim == 0 || dim > self.bound {
            return;
        }
        let params = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        self.rows.push(TableRow { table, row, params, rep, dim });
    }

    fn render(&self, x: &Scalar) -> String {
        self.ctx.field().render(x)
    }
}

fn linear_power(ctx: &PairCtx, x: &Scalar, n: usize) -> Poly {
    Poly::linear(ctx.field(), x).pow(n as u32)
}

/// Largest `n` worth trying for blocks of degree `d` per unit of `n`.
fn max_n(bound: usize, d: usize) -> usize {
    bound / d.max(1)
}

fn regular_rows(b: &mut Builder, inventory: Option<&[Poly]>) -> Result<()> {
    let ctx = b.ctx;
    let f = ctx.field();
    let candidates: Vec<Poly> = match inventory {
        Some(list) => {
            for r in list {
                if r.field() != f {
                    return Err(Error::MixedFieldContexts);
                }
                if !r.is_monic() {
                    return Err(Error::NonMonic);
                }
            }
            list.to_vec()
        }
        None if f.is_finite() => {
            let mut all = Vec::new();
            for d in 1..=b.bound / 2 {
                all.extend(irreducibles_of_degree(f, d)?);
            }
            all
        }
        None => return Err(Error::NeedsIrreducibleInventory),
    };
    let sigma = ctx.sigma();
    for r in candidates {
        let Some(d) = r.degree().filter(|&d| d >= 1) else { continue };
        let composed = r.compose(&sigma);
        if !composed.gcd(&ctx.fundamental).is_constant() {
            continue;
        }
        for n in 1..=max_n(b.bound, 2 * d) {
            b.push(1, 1, &[("r", r.to_string()), ("n", n.to_string())], &[r.pow(n as u32).compose(&sigma)]);
        }
    }
    Ok(())
}

fn split_rows(b: &mut Builder) {
    let ctx = b.ctx;
    let f = ctx.field();
    let diffs = ctx.rational_differences();
    let top = b.bound;
    match ctx.family() {
        Family::SplitDoubleDouble => {
            for x in &diffs {
                for n in 1..=top {
                    b.push(2, 1, &[("x", b.render(x)), ("n", n.to_string())], &[linear_power(ctx, x, n)]);
                }
            }
        }
        Family::SplitSimpleSimple | Family::SplitMixed => {
            let table = ctx.family().table();
            let extra = if table == 4 { 2 } else { 1 };
            let mut paired: Vec<Scalar> = Vec::new();
            for x in &diffs {
                let y = f.sub(&ctx.delta, x);
                let xs = b.render(x);
                if *x == y {
                    for n in 1..=top {
                        b.push(table, 3, &[("x", xs.clone()), ("n", n.to_string())], &[linear_power(ctx, x, n)]);
                    }
                    continue;
                }
                if !paired.contains(x) {
                    paired.push(y.clone());
                    for n in 1..=top / 2 {
                        let blocks = [linear_power(ctx, x, n), linear_power(ctx, &y, n)];
                        b.push(table, 1, &[("x", xs.clone()), ("n", n.to_string())], &blocks);
                    }
                }
                for k in 1..=extra {
                    for n in 0..=top {
                        let blocks = [linear_power(ctx, x, n + k), linear_power(ctx, &y, n)];
                        b.push(table, 1 + k as u8, &[("x", xs.clone()), ("n", n.to_string())], &blocks);
                    }
                }
            }
        }
        _ => unreachable!("split families only"),
    }
}

fn irr_split_rows(b: &mut Builder) {
    let ctx = b.ctx;
    let (wp, wq) = ctx.normalized();
    match ctx.family() {
        Family::IrrSplitEq => {
            let mut ys = roots_in_field(wq);
            ys.dedup();
            let y = &ys[0];
            let r = wp.translate(y);
            for n in 1..=max_n(b.bound, 2) {
                b.push(5, 1, &[("y", b.render(y)), ("n", n.to_string())], &[r.pow(n as u32)]);
            }
        }
        Family::IrrSplitNeq => {
            let (r1, r2) = ctx.translated_factors().expect("split roots recorded");
            let pw = |r: &Poly, n: usize| r.pow(n as u32);
            for n in 1..=max_n(b.bound, 4) {
                b.push(6, 1, &[("n", n.to_string())], &[pw(&r1, n), pw(&r2, n)]);
            }
            for n in 0..=max_n(b.bound, 2) {
                b.push(6, 2, &[("n", n.to_string())], &[pw(&r1, n + 1), pw(&r2, n)]);
                b.push(6, 3, &[("n", n.to_string())], &[pw(&r2, n + 1), pw(&r1, n)]);
            }
        }
        _ => unreachable!("irreducible/split families only"),
    }
}

/// `N(x - y)` for `x` the class of `t` in `F[t]/(p)` (or its conjugate when
/// `conjugate_x`) and `y` the `y_index`-th root of `q` found there.
pub fn norm_quadratic(ctx: &PairCtx, conjugate_x: bool, y_index: usize) -> Result<Scalar> {
    if ctx.family() != Family::IrrSameField {
        return Err(Error::WrongCase("IRR_SAME_FIELD"));
    }
    let k = QuadExt::new(&ctx.p)?;
    let ys = k.roots_of(&ctx.q)?;
    let y = ys.get(y_index).ok_or_else(|| {
        Error::DimensionMismatch(format!("root index {y_index} out of {} roots", ys.len()))
    })?;
    let x = if conjugate_x { k.theta_conjugate() } else { k.theta() };
    let d = k.sub(&x, y);
    if k.in_base_field(&d) {
        return Err(Error::DifferenceInBaseField);
    }
    Ok(k.norm(&d))
}

fn same_field_rows(b: &mut Builder) -> Result<()> {
    let ctx = b.ctx;
    let f = ctx.field();
    let k = QuadExt::new(&ctx.p)?;
    let ys = k.roots_of(&ctx.q)?;
    let mut norms: Vec<Scalar> = Vec::new();
    for conj in [false, true] {
        for i in 0..ys.len() {
            match norm_quadratic(ctx, conj, i) {
                Ok(nm) if !norms.contains(&nm) => norms.push(nm),
                Ok(_) | Err(Error::DifferenceInBaseField) => {}
                Err(e) => return Err(e),
            }
        }
    }
    for nm in &norms {
        let r = Poly::new(f, vec![nm.clone(), f.neg(&ctx.delta), f.one()]);
        for n in 1..=max_n(b.bound, 2) {
            b.push(7, 1, &[("N", b.render(nm)), ("n", n.to_string())], &[r.pow(n as u32)]);
        }
    }
    for z in ctx.translation_offsets() {
        for n in 1..=b.bound {
            let l = linear_power(ctx, &z, n);
            let params = [("x-y", b.render(&z)), ("n", n.to_string())];
            if n % 2 == 1 {
                b.push(7, 2, &params, &[l.clone(), l]);
            } else {
                b.push(7, 3, &params, &[l]);
            }
        }
    }
    Ok(())
}

fn distinct_field_rows(b: &mut Builder) {
    let ctx = b.ctx;
    let f = ctx.field();
    match ctx.family() {
        Family::IrrDistinctGeneric => {
            for n in 1..=max_n(b.bound, 4) {
                b.push(8, 1, &[("n", n.to_string())], &[ctx.fundamental.pow(n as u32)]);
            }
        }
        Family::IrrDistinctInsep => {
            let c = f.neg(&f.add(&ctx.p.coeff(0), &ctx.q.coeff(0)));
            let r = Poly::new(f, vec![c, f.zero(), f.one()]);
            for n in 1..=max_n(b.bound, 2) {
                b.push(9, 1, &[("n", n.to_string())], &[r.pow(n as u32)]);
            }
        }
        Family::IrrDistinctSpecial => {
            let r = ctx.special_factor();
            for n in 1..=max_n(b.bound, 2) {
                let rn = r.pow(n as u32);
                if n % 2 == 1 {
                    b.push(10, 1, &[("n", n.to_string())], &[rn.clone(), rn]);
                } else {
                    b.push(10, 2, &[("n", n.to_string())], &[rn]);
                }
            }
        }
        _ => unreachable!("distinct-field families only"),
    }
}

/// Table 1 rows (from `inventory`, or every monic irreducible of small
/// degree over a finite field) followed by the rows of the exceptional
/// table of the case family, all with `dim v <= dim_bound`.
pub fn indecomposable_reps(ctx: &PairCtx, dim_bound: usize, inventory: Option<&[Poly]>) -> Result<Vec<TableRow>> {
    let mut b = Builder { ctx, bound: dim_bound, rows: Vec::new() };
    regular_rows(&mut b, inventory)?;
    match ctx.family() {
        Family::SplitDoubleDouble | Family::SplitSimpleSimple | Family::SplitMixed => split_rows(&mut b),
        Family::IrrSplitEq | Family::IrrSplitNeq => irr_split_rows(&mut b),
        Family::IrrSameField => same_field_rows(&mut b)?,
        Family::IrrDistinctGeneric | Family::IrrDistinctInsep | Family::IrrDistinctSpecial => {
            distinct_field_rows(&mut b)
        }
    }
    Ok(b.rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::decide_extension;
    use crate::field::Field;
    use crate::linalg::similar;
    use crate::parse::parse_poly;

    fn p(f: &Field, s: &str) -> Poly {
        parse_poly(f, s).unwrap()
    }

    fn ctx(spec: &str, a: &str, b: &str) -> PairCtx {
        let f = Field::parse(spec).unwrap();
        PairCtx::new(&p(&f, a), &p(&f, b)).unwrap()
    }

    fn exceptional(rows: &[TableRow]) -> Vec<&TableRow> {
        rows.iter().filter(|r| r.table != 1).collect()
    }

    #[test]
    fn split_simple_rows() {
        let c = ctx("Q", "t^2-t", "t^2-t");
        let f = c.field().clone();
        let rows = indecomposable_reps(&c, 2, Some(&[])).unwrap();
        let reps: Vec<&Mat> = exceptional(&rows).iter().map(|r| &r.rep).collect();
        let want = companion(&p(&f, "t-1")).unwrap().direct_sum(&companion(&p(&f, "t+1")).unwrap());
        assert!(reps.iter().any(|m| similar(m, &want).unwrap()));
        assert!(reps.iter().any(|m| **m == companion(&p(&f, "t-1")).unwrap()));
        assert!(reps.iter().any(|m| **m == companion(&p(&f, "t^2")).unwrap()));
        for r in &rows {
            assert!(decide_extension(&r.rep, &c).unwrap().verdict.is_yes(), "{:?}", r.params);
        }
    }

    #[test]
    fn same_field_norm_rows() {
        let c = ctx("Q", "t^2+1", "t^2+4");
        let f = c.field().clone();
        let mut norms: Vec<Scalar> = (0..2).map(|i| norm_quadratic(&c, false, i).unwrap()).collect();
        norms.sort_by_key(|n| f.render(n));
        assert_eq!(norms, vec![f.from_i64(1), f.from_i64(9)]);
        let rows = indecomposable_reps(&c, 2, Some(&[])).unwrap();
        let reps: Vec<Mat> = rows.iter().map(|r| r.rep.clone()).collect();
        assert!(reps.contains(&companion(&p(&f, "t^2+1")).unwrap()));
        assert!(reps.contains(&companion(&p(&f, "t^2+9")).unwrap()));
    }

    #[test]
    fn distinct_generic_rows() {
        let c = ctx("Q", "t^2+1", "t^2+2");
        let rows = indecomposable_reps(&c, 4, Some(&[])).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].rep, companion(&c.fundamental).unwrap());
    }

    #[test]
    fn inventory_required_over_infinite_fields() {
        let c = ctx("Q", "t^2+1", "t^2+2");
        assert_eq!(indecomposable_reps(&c, 4, None), Err(Error::NeedsIrreducibleInventory));
        let f = Field::ratfunc(2).unwrap();
        let c = PairCtx::new(&p(&f, "t^2+s"), &p(&f, "t^2+s")).unwrap();
        assert_eq!(norm_quadratic(&c, false, 0), Err(Error::DifferenceInBaseField));
    }

    #[test]
    fn regular_rows_avoid_differences() {
        let c = ctx("GF(3)", "t^2+1", "t^2+1");
        let rows = indecomposable_reps(&c, 4, None).unwrap();
        for r in rows.iter().filter(|r| r.table == 1) {
            let g = crate::linalg::charpoly(&r.rep).unwrap();
            assert!(g.gcd(&c.fundamental).is_constant());
            assert!(decide_extension(&r.rep, &c).unwrap().verdict.is_yes());
        }
        assert!(rows.iter().any(|r| r.table == 7 && r.row == 2));
    }
}

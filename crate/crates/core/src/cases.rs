//! Case taxonomy of `(p, q)` instances and the decision procedure for
//! symplectic `(p, q)`-differences.
//!
//! A pair `(b, u)` is decided by splitting `u` into its `(p,q)`-regular and
//! `(p,q)`-exceptional parts. The regular part passes iff every invariant
//! factor is a polynomial in `t^2 - delta t`; the exceptional part is judged
//! by the criterion attached to the case family of `(p, q)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{
    fitting_split, invariant_factors, jordan_sequence, primary_sequence, restrict, InvFactors, Mat,
};
use crate::poly::{decompose_base_sigma, fundamental_poly, lambda_poly, roots_in_field, Poly};
use crate::quadext::QuadExt;
use crate::symplectic::{extract_v, induced_pair, require_valid, SymplecticPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    SplitDoubleDouble,
    SplitSimpleSimple,
    SplitMixed,
    IrrSplitEq,
    IrrSplitNeq,
    IrrSameField,
    IrrDistinctGeneric,
    IrrDistinctInsep,
    IrrDistinctSpecial,
}

impl Family {
    /// Number of the table listing the indecomposable exceptional pairs.
    pub fn table(self) -> u8 {
        match self {
            Family::SplitDoubleDouble => 2,
            Family::SplitSimpleSimple => 3,
            Family::SplitMixed => 4,
            Family::IrrSplitEq => 5,
            Family::IrrSplitNeq => 6,
            Family::IrrSameField => 7,
            Family::IrrDistinctGeneric => 8,
            Family::IrrDistinctInsep => 9,
            Family::IrrDistinctSpecial => 10,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::SplitDoubleDouble => "SPLIT_DOUBLE_DOUBLE",
            Family::SplitSimpleSimple => "SPLIT_SIMPLE_SIMPLE",
            Family::SplitMixed => "SPLIT_MIXED",
            Family::IrrSplitEq => "IRR_SPLIT_EQ",
            Family::IrrSplitNeq => "IRR_SPLIT_NEQ",
            Family::IrrSameField => "IRR_SAME_FIELD",
            Family::IrrDistinctGeneric => "IRR_DISTINCT_GENERIC",
            Family::IrrDistinctInsep => "IRR_DISTINCT_INSEP",
            Family::IrrDistinctSpecial => "IRR_DISTINCT_SPECIAL",
        }
    }

    /// Families where the endomorphism-level classification
    /// (one of `p`, `q` split) applies.
    pub fn has_split_factor(self) -> bool {
        matches!(
            self,
            Family::SplitDoubleDouble
                | Family::SplitSimpleSimple
                | Family::SplitMixed
                | Family::IrrSplitEq
                | Family::IrrSplitNeq
        )
    }
}

/// Case family of an instance; `swapped` records that the family is read
/// off `(q(-t), p(-t))` rather than `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseTag {
    pub family: Family,
    pub table: u8,
    pub swapped: bool,
    /// Roots `y1, y2` of the split polynomial for `IRR_SPLIT_NEQ`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<[String; 2]>,
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.family.name())?;
        if self.swapped {
            write!(f, " (swapped)")?;
        }
        Ok(())
    }
}

/// A `(p, q)` instance with its derived data.
#[derive(Clone, Debug)]
pub struct PairCtx {
    pub p: Poly,
    pub q: Poly,
    pub delta: Scalar,
    pub fundamental: Poly,
    pub lambda: Poly,
    pub case_tag: CaseTag,
    work_p: Poly,
    work_q: Poly,
    split_roots: Option<(Scalar, Scalar)>,
}

#[derive(Serialize)]
struct CtxJson<'a> {
    field: String,
    p: String,
    q: String,
    delta: String,
    #[serde(rename = "F")]
    fundamental: String,
    #[serde(rename = "Lambda")]
    lambda: String,
    case: &'a CaseTag,
}

impl Serialize for PairCtx {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CtxJson {
            field: self.field().to_string(),
            p: self.p.to_string(),
            q: self.q.to_string(),
            delta: self.field().render(&self.delta),
            fundamental: self.fundamental.to_string(),
            lambda: self.lambda.to_string(),
            case: &self.case_tag,
        }
        .serialize(s)
    }
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

struct Classification {
    tag: CaseTag,
    work_p: Poly,
    work_q: Poly,
    split_roots: Option<(Scalar, Scalar)>,
}

fn swap(p: &Poly, q: &Poly) -> (Poly, Poly) {
    (q.reflect(), p.reflect())
}

fn classify(p: &Poly, q: &Poly) -> Result<Classification> {
    check_quadratic(p)?;
    check_quadratic(q)?;
    p.same_field(q)?;
    let f = p.field();
    let rp = roots_in_field(p);
    let rq = roots_in_field(q);
    let tag = |family: Family, swapped: bool| CaseTag { family, table: family.table(), swapped, y: None };
    let plain = |family: Family, swapped: bool, (wp, wq): (Poly, Poly)| Classification {
        tag: tag(family, swapped),
        work_p: wp,
        work_q: wq,
        split_roots: None,
    };
    let out = match (rp.is_empty(), rq.is_empty()) {
        (false, false) => {
            let pd = rp[0] == rp[1];
            let qd = rq[0] == rq[1];
            match (pd, qd) {
                (true, true) => plain(Family::SplitDoubleDouble, false, (p.clone(), q.clone())),
                (false, false) => plain(Family::SplitSimpleSimple, false, (p.clone(), q.clone())),
                (false, true) => plain(Family::SplitMixed, false, (p.clone(), q.clone())),
                (true, false) => plain(Family::SplitMixed, true, swap(p, q)),
            }
        }
        (true, false) | (false, true) => {
            let swapped = !rp.is_empty();
            let (wp, wq) = if swapped { swap(p, q) } else { (p.clone(), q.clone()) };
            let ys = roots_in_field(&wq);
            let (y1, y2) = (ys[0].clone(), ys[1].clone());
            if wp.translate(&y1) == wp.translate(&y2) {
                plain(Family::IrrSplitEq, swapped, (wp, wq))
            } else {
                let mut t = tag(Family::IrrSplitNeq, swapped);
                t.y = Some([f.render(&y1), f.render(&y2)]);
                Classification { tag: t, work_p: wp, work_q: wq, split_roots: Some((y1, y2)) }
            }
        }
        (true, true) => {
            let k = QuadExt::new(p)?;
            let family = if !k.roots_of(q)?.is_empty() {
                Family::IrrSameField
            } else if f.characteristic() != 2 {
                Family::IrrDistinctGeneric
            } else {
                let (tp, tq) = (p.trace(), q.trace());
                if f.is_zero(&tp) && f.is_zero(&tq) {
                    Family::IrrDistinctInsep
                } else if tp == tq {
                    Family::IrrDistinctSpecial
                } else {
                    Family::IrrDistinctGeneric
                }
            };
            plain(family, false, (p.clone(), q.clone()))
        }
    };
    Ok(out)
}

pub fn classify_case(p: &Poly, q: &Poly) -> Result<CaseTag> {
    Ok(classify(p, q)?.tag)
}

impl PairCtx {
    pub fn new(p: &Poly, q: &Poly) -> Result<Self> {
        let c = classify(p, q)?;
        let f = p.field();
        Ok(PairCtx {
            p: p.clone(),
            q: q.clone(),
            delta: f.sub(&p.trace(), &q.trace()),
            fundamental: fundamental_poly(p, q)?,
            lambda: lambda_poly(p, q)?,
            case_tag: c.tag,
            work_p: c.work_p,
            work_q: c.work_q,
            split_roots: c.split_roots,
        })
    }

    pub fn field(&self) -> &Field {
        self.p.field()
    }

    pub fn family(&self) -> Family {
        self.case_tag.family
    }

    /// The pair the case family is read from: `(p, q)`, or `(q(-t), p(-t))`
    /// when swapped.
    pub fn normalized(&self) -> (&Poly, &Poly) {
        (&self.work_p, &self.work_q)
    }

    /// `t^2 - delta t`.
    pub fn sigma(&self) -> Poly {
        let f = self.field();
        Poly::new(f, vec![f.zero(), f.neg(&self.delta), f.one()])
    }

    /// The distinct elements of `Root(p) - Root(q)` lying in the base field.
    pub fn rational_differences(&self) -> Vec<Scalar> {
        let f = self.field();
        let mut out: Vec<Scalar> = Vec::new();
        for x in roots_in_field(&self.p) {
            for y in roots_in_field(&self.q) {
                let d = f.sub(&x, &y);
                if !out.contains(&d) {
                    out.push(d);
                }
            }
        }
        out
    }

    /// Scalars `z` with `q(t) = p(t + z)`, from matching coefficients.
    pub fn translation_offsets(&self) -> Vec<Scalar> {
        let f = self.field();
        let (p, q) = (&self.work_p, &self.work_q);
        let (lam, alpha) = (p.trace(), p.coeff(0));
        let (mu, beta) = (q.trace(), q.coeff(0));
        // p(t+z) = t^2 + (2z - lam) t + z^2 - lam z + alpha
        let mut zs: Vec<Scalar> = if f.characteristic() != 2 {
            let z = f.div(&f.sub(&lam, &mu), &f.from_i64(2)).expect("odd characteristic");
            vec![z]
        } else if lam == mu {
            let eq = Poly::new(f, vec![f.sub(&alpha, &beta), f.neg(&lam), f.one()]);
            roots_in_field(&eq)
        } else {
            Vec::new()
        };
        zs.dedup();
        zs.retain(|z| p.translate(z) == *q);
        zs
    }

    /// `t^2 - (tr p) t + p(0) + q(0)`, whose square is `F_{p,q}` in the
    /// special characteristic-2 family.
    pub fn special_factor(&self) -> Poly {
        let f = self.field();
        Poly::new(f, vec![f.add(&self.p.coeff(0), &self.q.coeff(0)), f.neg(&self.p.trace()), f.one()])
    }

    /// `p(t + y1), p(t + y2)` for `IRR_SPLIT_NEQ`.
    pub fn translated_factors(&self) -> Option<(Poly, Poly)> {
        let (y1, y2) = self.split_roots.as_ref()?;
        Some((self.work_p.translate(y1), self.work_p.translate(y2)))
    }

    fn require_field(&self, m: &Mat) -> Result<()> {
        if m.field() != self.field() {
            return Err(Error::MixedFieldContexts);
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularEvidence {
    pub dim: usize,
    pub invariant_factors: Vec<String>,
    /// `s` with `f(t) = s(w)`, `w = t^2 - delta t`, per invariant factor.
    pub decompositions: Vec<Option<String>>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub criterion: String,
    pub at: Vec<String>,
    pub sequences: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<usize>,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalEvidence {
    pub dim: usize,
    pub invariant_factors: Vec<String>,
    pub checks: Vec<Check>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecisionReport {
    pub verdict: Verdict,
    pub case: CaseTag,
    pub dim: usize,
    pub regular_part: RegularEvidence,
    pub exceptional_part: ExceptionalEvidence,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_evidence: Option<String>,
}

/// `a_{n+shift} <= b_n` and `b_{n+shift} <= a_n` for all `n >= 1`.
pub fn intertwined(a: &[usize], b: &[usize], shift: usize) -> Result<bool> {
    if a.windows(2).any(|w| w[0] < w[1]) || b.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotNonIncreasing);
    }
    assert!(shift >= 1, "shift is positive");
    let at = |s: &[usize], i: usize| s.get(i).copied().unwrap_or(0);
    let len = a.len().max(b.len());
    Ok((0..len).all(|n| at(a, n + shift) <= at(b, n) && at(b, n + shift) <= at(a, n)))
}

/// First index `n` (1-based) where intertwining fails, for evidence.
fn first_violation(a: &[usize], b: &[usize], shift: usize) -> Option<String> {
    let at = |s: &[usize], i: usize| s.get(i).copied().unwrap_or(0);
    let len = a.len().max(b.len());
    for n in 0..len {
        if at(a, n + shift) > at(b, n) {
            return Some(format!("a_{} = {} > b_{} = {}", n + 1 + shift, at(a, n + shift), n + 1, at(b, n)));
        }
        if at(b, n + shift) > at(a, n) {
            return Some(format!("b_{} = {} > a_{} = {}", n + 1 + shift, at(b, n + shift), n + 1, at(a, n)));
        }
    }
    None
}

fn restrict_to(m: &Mat, basis: &Mat) -> Result<Mat> {
    if basis.cols() == 0 {
        return Ok(Mat::zeros(m.field(), 0, 0));
    }
    restrict(m, basis)
}

/// Matrices of `m` on `ker F(m)^n` and `im F(m)^n`.
pub fn exceptional_and_regular(m: &Mat, ctx: &PairCtx) -> Result<(Mat, Mat)> {
    let (e, r) = fitting_split(m, &ctx.fundamental)?;
    Ok((restrict_to(m, &e)?, restrict_to(m, &r)?))
}

fn regular_evidence(reg: &Mat, ctx: &PairCtx) -> Result<RegularEvidence> {
    let inv = invariant_factors(reg)?;
    let decompositions: Vec<Option<String>> = inv
        .factors
        .iter()
        .map(|g| decompose_base_sigma(g, &ctx.delta).map(|s| s.render_in("w")))
        .collect();
    Ok(RegularEvidence {
        dim: reg.rows(),
        invariant_factors: inv.rendered(),
        holds: decompositions.iter().all(Option::is_some),
        decompositions,
    })
}

fn halve(seq: Vec<usize>, mult: usize) -> Vec<usize> {
    seq.into_iter().map(|n| n / mult).collect()
}

/// Cells of size exactly `k` from the counts of cells of size at least `k`.
fn exact_counts(seq: &[usize]) -> Vec<usize> {
    (0..seq.len()).map(|i| seq[i] - seq.get(i + 1).copied().unwrap_or(0)).collect()
}

fn intertwining_check(
    criterion: &str,
    at: Vec<String>,
    a: Vec<usize>,
    b: Vec<usize>,
    shift: usize,
) -> Result<Check> {
    let holds = intertwined(&a, &b, shift)?;
    let detail = if holds {
        format!("{shift}-intertwined")
    } else {
        first_violation(&a, &b, shift).expect("violation exists")
    };
    Ok(Check { criterion: criterion.to_string(), at, sequences: vec![a, b], shift: Some(shift), holds, detail })
}

/// Evenness of exact counts at odd sizes; `modulus` is 2 for `v` and 4
/// for the doubled endomorphism of a pair.
fn parity_check(criterion: &str, at: String, seq: Vec<usize>, modulus: usize) -> Check {
    let exact = exact_counts(&seq);
    let bad = exact.iter().enumerate().find(|(i, c)| i % 2 == 0 && *c % modulus != 0);
    let (holds, detail) = match bad {
        None => (true, format!("odd-size counts are multiples of {modulus}")),
        Some((i, c)) => (false, format!("size {} count {} is not a multiple of {}", i + 1, c, modulus)),
    };
    Check { criterion: criterion.to_string(), at: vec![at], sequences: vec![seq], shift: None, holds, detail }
}

/// Criterion of the case family evaluated on an exceptional endomorphism;
/// `mult` is 1 for `v` and 2 for the endomorphism of a pair, whose counts
/// are doubled.
fn exceptional_checks(exc: &Mat, ctx: &PairCtx, mult: usize) -> Result<Vec<Check>> {
    let f = ctx.field();
    let mut checks = Vec::new();
    if exc.rows() == 0 {
        return Ok(checks);
    }
    let always = |what: &str| Check {
        criterion: "always".into(),
        at: Vec::new(),
        sequences: Vec::new(),
        shift: None,
        holds: true,
        detail: what.to_string(),
    };
    match ctx.family() {
        Family::SplitDoubleDouble => checks.push(always("every exceptional part is a difference")),
        Family::IrrSplitEq => checks.push(always("every exceptional part is a difference")),
        Family::IrrDistinctGeneric => checks.push(always("every exceptional part is a difference")),
        Family::IrrDistinctInsep => checks.push(always("every exceptional part is a difference")),
        Family::SplitSimpleSimple | Family::SplitMixed => {
            let shift = if ctx.family() == Family::SplitMixed { 2 } else { 1 };
            let mut seen: Vec<Scalar> = Vec::new();
            for x in ctx.rational_differences() {
                let y = f.sub(&ctx.delta, &x);
                if x == y || seen.contains(&x) {
                    continue;
                }
                seen.push(x.clone());
                seen.push(y.clone());
                let a = halve(jordan_sequence(exc, &x)?, mult);
                let b = halve(jordan_sequence(exc, &y)?, mult);
                checks.push(intertwining_check(
                    "jordan_intertwined",
                    vec![f.render(&x), f.render(&y)],
                    a,
                    b,
                    shift,
                )?);
            }
        }
        Family::IrrSplitNeq => {
            let (r1, r2) = ctx.translated_factors().expect("split roots recorded");
            let a = halve(primary_sequence(exc, &r1)?, mult);
            let b = halve(primary_sequence(exc, &r2)?, mult);
            checks.push(intertwining_check(
                "primary_intertwined",
                vec![r1.to_string(), r2.to_string()],
                a,
                b,
                1,
            )?);
        }
        Family::IrrSameField => {
            for z in ctx.translation_offsets() {
                let seq = jordan_sequence(exc, &z)?;
                checks.push(parity_check("jordan_cells_even", f.render(&z), seq, 2 * mult));
            }
            if checks.is_empty() {
                checks.push(always("q is not a translate of p"));
            }
        }
        Family::IrrDistinctSpecial => {
            let r = ctx.special_factor();
            let seq = primary_sequence(exc, &r)?;
            checks.push(parity_check("invariant_factors_even", r.to_string(), seq, 2 * mult));
        }
    }
    Ok(checks)
}

fn assemble(
    m: &Mat,
    ctx: &PairCtx,
    mult: usize,
) -> Result<DecisionReport> {
    ctx.require_field(m)?;
    m.require_square()?;
    let (exc, reg) = exceptional_and_regular(m, ctx)?;
    let regular_part = regular_evidence(&reg, ctx)?;
    let checks = exceptional_checks(&exc, ctx, mult)?;
    let exc_inv: InvFactors = invariant_factors(&exc)?;
    let exceptional_part = ExceptionalEvidence {
        dim: exc.rows(),
        invariant_factors: exc_inv.rendered(),
        holds: checks.iter().all(|c| c.holds),
        checks,
    };
    let failing_evidence = if !regular_part.holds {
        let i = regular_part.decompositions.iter().position(Option::is_none).expect("some failure");
        Some(format!(
            "regular invariant factor {} is not a polynomial in t^2 - delta t",
            regular_part.invariant_factors[i]
        ))
    } else {
        exceptional_part
            .checks
            .iter()
            .find(|c| !c.holds)
            .map(|c| format!("{} at [{}]: {}", c.criterion, c.at.join(", "), c.detail))
    };
    Ok(DecisionReport {
        verdict: Verdict::from_bool(regular_part.holds && exceptional_part.holds),
        case: ctx.case_tag.clone(),
        dim: m.rows(),
        regular_part,
        exceptional_part,
        failing_evidence,
    })
}

/// Decides whether `S(v)` is a symplectic `(p, q)`-difference.
pub fn decide_extension(v: &Mat, ctx: &PairCtx) -> Result<DecisionReport> {
    assemble(v, ctx, 1)
}

/// Decides a symplectic pair, both through the extracted `v` and directly
/// on the doubled counts of `U`; the two must agree.
pub fn decide_pair(pair: &SymplecticPair, ctx: &PairCtx) -> Result<DecisionReport> {
    if pair.field() != ctx.field() {
        return Err(Error::MixedFieldContexts);
    }
    require_valid(pair)?;
    let v = extract_v(pair)?;
    let report = decide_extension(&v, ctx)?;
    let direct = assemble(&pair.u, ctx, 2)?;
    if direct.verdict != report.verdict {
        return Err(Error::Inconsistent(format!(
            "extension verdict {:?}, pair-level verdict {:?}",
            report.verdict, direct.verdict
        )));
    }
    Ok(report)
}

/// Restrictions of a valid pair to the regular and exceptional parts of
/// `U`, in that order.
pub fn split_parts(pair: &SymplecticPair, ctx: &PairCtx) -> Result<(SymplecticPair, SymplecticPair)> {
    require_valid(pair)?;
    ctx.require_field(&pair.u)?;
    let (e, r) = fitting_split(&pair.u, &ctx.fundamental)?;
    let part = |w: &Mat| {
        if w.cols() == 0 {
            Ok(SymplecticPair::trivial(ctx.field()))
        } else {
            induced_pair(pair, w)
        }
    };
    Ok((part(&r)?, part(&e)?))
}

fn sizes_from_sequence(seq: &[usize]) -> BTreeMap<usize, usize> {
    exact_counts(seq).into_iter().enumerate().filter(|(_, c)| *c > 0).map(|(i, c)| (i + 1, c)).collect()
}

fn sequence_from_sizes(sizes: &BTreeMap<usize, usize>) -> Vec<usize> {
    let top = sizes.keys().next_back().copied().unwrap_or(0);
    (1..=top).map(|k| sizes.range(k..).map(|(_, c)| c).sum()).collect()
}

const SYNTHESIS_SEARCH_LIMIT: usize = 1 << 16;

/// Whether removing some common multiset of cell sizes from both sides
/// leaves intertwined sequences; `None` if the search is too large.
fn intertwined_after_removal(a: &[usize], b: &[usize], shift: usize) -> Option<bool> {
    let sa = sizes_from_sequence(a);
    let sb = sizes_from_sequence(b);
    let common: Vec<(usize, usize)> =
        sa.iter().filter_map(|(k, c)| sb.get(k).map(|d| (*k, (*c).min(*d)))).collect();
    let total: usize = common.iter().map(|(_, c)| c + 1).product();
    if total > SYNTHESIS_SEARCH_LIMIT {
        return None;
    }
    for mut idx in 0..total {
        let (mut ra, mut rb) = (sa.clone(), sb.clone());
        for (k, c) in &common {
            let take = idx % (c + 1);
            idx /= c + 1;
            *ra.get_mut(k).expect("common") -= take;
            *rb.get_mut(k).expect("common") -= take;
        }
        ra.retain(|_, c| *c > 0);
        rb.retain(|_, c| *c > 0);
        if intertwined(&sequence_from_sizes(&ra), &sequence_from_sizes(&rb), shift).expect("non-increasing") {
            return Some(true);
        }
    }
    Some(false)
}

/// Experimental: evaluates the unproved synthesis characterization (a
/// splitting of `v` into a part whose invariant factors are polynomials in
/// `t^2 - delta t` and an endomorphism-level difference) and returns
/// whether it agrees with [`decide_extension`]. Only families where one of
/// `p`, `q` splits are supported.
pub fn experimental_synthesis_check(v: &Mat, ctx: &PairCtx) -> Option<bool> {
    if !ctx.family().has_split_factor() {
        return None;
    }
    let report = decide_extension(v, ctx).ok()?;
    let (exc, _) = exceptional_and_regular(v, ctx).ok()?;
    let f = ctx.field();
    let mut exc_ok = true;
    match ctx.family() {
        Family::SplitSimpleSimple | Family::SplitMixed => {
            let shift = if ctx.family() == Family::SplitMixed { 2 } else { 1 };
            let mut seen: Vec<Scalar> = Vec::new();
            for x in ctx.rational_differences() {
                let y = f.sub(&ctx.delta, &x);
                if x == y || seen.contains(&x) {
                    continue;
                }
                seen.push(x.clone());
                seen.push(y.clone());
                let a = jordan_sequence(&exc, &x).ok()?;
                let b = jordan_sequence(&exc, &y).ok()?;
                exc_ok &= intertwined_after_removal(&a, &b, shift)?;
            }
        }
        Family::IrrSplitNeq => {
            let (r1, r2) = ctx.translated_factors()?;
            let a = primary_sequence(&exc, &r1).ok()?;
            let b = primary_sequence(&exc, &r2).ok()?;
            exc_ok = intertwined_after_removal(&a, &b, 1)?;
        }
        _ => {}
    }
    let synthesis = report.regular_part.holds && exc_ok;
    Some(synthesis == report.verdict.is_yes())
}

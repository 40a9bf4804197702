//! The acceptance suite: each criterion is a self-contained exact check
//! returning a pass/fail line with a short detail.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::atlas::indecomposable_reps;
use crate::cases::{decide_extension, decide_pair, Family, PairCtx};
use crate::field::{Field, Scalar};
use crate::linalg::{companion, invariant_factors, jordan_block, jordan_sequence, Mat};
use crate::parse::parse_poly;
use crate::poly::{decompose_base_sigma, fundamental_poly, irreducibles_of_degree, lambda_poly, Poly};
use crate::symplectic::{symplectic_extension, validate_pair};
use crate::witness::{
    brute_force_witness, compose_witness, duplication_witness, verify_witness, w_algebra_block,
    DEFAULT_SEARCH_BOUND,
};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} [{:>2}] {}: {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.seconds
        )
    }
}

pub const CRITERIA: [(u8, &str); 12] = [
    (1, "lambda identity"),
    (2, "duplication lemma"),
    (3, "w-algebra relations"),
    (4, "oracle equivalence"),
    (5, "dimension-2 impossibility"),
    (6, "gaussian counterexample, constructive half"),
    (7, "regular criterion round trip"),
    (8, "split-case intertwining"),
    (9, "same splitting field"),
    (10, "characteristic-2 special case"),
    (11, "atlas self-check"),
    (12, "nilpotent lemma"),
];

type Outcome = std::result::Result<String, String>;

pub fn run(id: u8) -> CriterionResult {
    let name = CRITERIA.iter().find(|(i, _)| *i == id).map(|(_, n)| *n).expect("known criterion");
    let start = Instant::now();
    let outcome = match id {
        1 => lambda_identity(),
        2 => duplication_sweep(false),
        3 => duplication_sweep(true),
        4 => oracle_equivalence(),
        5 => dim_two_impossibility(),
        6 => gaussian_counterexample(),
        7 => regular_round_trip(),
        8 => split_intertwining(),
        9 => same_splitting_field(),
        10 => char_two_special(),
        11 => atlas_self_check(),
        12 => nilpotent_lemma(),
        _ => unreachable!(),
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult { id, name, passed, detail, seconds: start.elapsed().as_secs_f64() }
}

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().map(|(id, _)| run(*id)).collect()
}

fn field(spec: &str) -> Field {
    Field::parse(spec).expect("valid spec")
}

fn poly(f: &Field, s: &str) -> Poly {
    parse_poly(f, s).expect("valid literal")
}

fn ctx(f: &Field, p: &str, q: &str) -> PairCtx {
    PairCtx::new(&poly(f, p), &poly(f, q)).expect("monic quadratics")
}

/// Every monic polynomial of degree `d` over a finite field.
fn monics(f: &Field, d: usize) -> Vec<Poly> {
    let elems: Vec<Scalar> = f.elements().expect("finite").collect();
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|c: Vec<Scalar>| {
                elems.iter().map(move |e| {
                    let mut c = c.clone();
                    c.push(e.clone());
                    c
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|mut c| {
            c.push(f.one());
            Poly::new(f, c)
        })
        .collect()
}

fn all_ctxs(f: &Field) -> Vec<PairCtx> {
    let qs = monics(f, 2);
    qs.iter().flat_map(|p| qs.iter().map(move |q| PairCtx::new(p, q).expect("quadratics"))).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lambda_identity() -> Outcome {
    let mut count = 0;
    let check = |p: &Poly, q: &Poly| -> std::result::Result<(), String> {
        let f = p.field();
        let delta = f.sub(&p.trace(), &q.trace());
        let sigma = Poly::new(f, vec![f.zero(), f.neg(&delta), f.one()]);
        let big = fundamental_poly(p, q).map_err(|e| e.to_string())?;
        let lam = lambda_poly(p, q).map_err(|e| e.to_string())?;
        ensure(big == lam.compose(&sigma), || format!("F != Lambda(t^2 - delta t) for ({p}, {q})"))
    };
    for spec in ["GF(2)", "GF(3)", "GF(5)"] {
        let f = field(spec);
        let qs = monics(&f, 2);
        for p in &qs {
            for q in &qs {
                check(p, q)?;
                count += 1;
            }
        }
    }
    let q = Field::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let mut c = || q.from_i64(rng.gen_range(-9..=9));
        let p1 = Poly::new(&q, vec![c(), c(), q.one()]);
        let p2 = Poly::new(&q, vec![c(), c(), q.one()]);
        check(&p1, &p2)?;
        count += 1;
    }
    Ok(format!("{count} pairs"))
}

fn duplication_sweep(relations: bool) -> Outcome {
    let mut jobs = Vec::new();
    for spec in ["GF(2)", "GF(3)", "GF(5)"] {
        let f = field(spec);
        let rs: Vec<Poly> = monics(&f, 1).into_iter().chain(monics(&f, 2)).collect();
        for c in all_ctxs(&f) {
            for r in &rs {
                jobs.push((c.clone(), r.clone()));
            }
        }
    }
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|(c, r)| {
            let label = || format!("{} ({}, {}) r = {}", c.field(), c.p, c.q, r);
            if relations {
                let w = match w_algebra_block(c, r) {
                    Ok(w) => w,
                    Err(e) => return Some(format!("{}: {e}", label())),
                };
                let bad: Vec<&str> = w.relations(c).into_iter().filter(|(_, ok)| !ok).map(|(n, _)| n).collect();
                (!bad.is_empty()).then(|| format!("{}: {}", label(), bad.join(", ")))
            } else {
                let w = match duplication_witness(c, r) {
                    Ok(w) => w,
                    Err(e) => return Some(format!("{}: {e}", label())),
                };
                if !verify_witness(&w, c).all_pass {
                    return Some(format!("{}: verification failed", label()));
                }
                let target = r.compose(&c.sigma());
                let inv = invariant_factors(&w.u).expect("square");
                (inv.factors != vec![target.clone(), target]).then(|| format!("{}: invariant factors", label()))
            }
        })
        .collect();
    match failures.first() {
        None => Ok(format!("{} constructions", jobs.len())),
        Some(first) => Err(format!("{} failures, first: {first}", failures.len())),
    }
}

/// Representatives of every similarity class of endomorphisms of
/// dimension 1 and 2, i.e. every invariant-factor profile of `U` in
/// dimension 2 and 4.
fn small_profiles(f: &Field) -> Vec<Mat> {
    let mut out: Vec<Mat> = Vec::new();
    for g in monics(f, 1).into_iter().chain(monics(f, 2)) {
        out.push(companion(&g).expect("monic"));
    }
    for a in f.elements().expect("finite") {
        out.push(Mat::scalar(f, 2, &a));
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let mut jobs = Vec::new();
    for spec in ["GF(2)", "GF(3)"] {
        let f = field(spec);
        let profiles = small_profiles(&f);
        for c in all_ctxs(&f) {
            for v in &profiles {
                jobs.push((c.clone(), v.clone()));
            }
        }
    }
    let results: Vec<std::result::Result<bool, String>> = jobs
        .par_iter()
        .map(|(c, v)| {
            let pair = symplectic_extension(v).expect("square");
            let decided = decide_pair(&pair, c).map_err(|e| e.to_string())?.verdict.is_yes();
            let found = brute_force_witness(&pair, c, DEFAULT_SEARCH_BOUND).map_err(|e| e.to_string())?;
            if let Some(w) = &found {
                if !verify_witness(w, c).all_pass {
                    return Err(format!("brute-force witness fails verification for {} ({}, {})", c.field(), c.p, c.q));
                }
            }
            if decided != found.is_some() {
                return Err(format!(
                    "{} ({}, {}) v = {:?}: decided {}, search {}",
                    c.field(),
                    c.p,
                    c.q,
                    invariant_factors(v).expect("square").rendered(),
                    decided,
                    found.is_some()
                ));
            }
            Ok(decided)
        })
        .collect();
    let errors: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    if let Some(first) = errors.first() {
        return Err(format!("{} disagreements, first: {first}", errors.len()));
    }
    let yes = results.iter().filter(|r| matches!(r, Ok(true))).count();
    Ok(format!("{} instances, {} yes, 0 disagreements", results.len(), yes))
}

fn dim_two_impossibility() -> Outcome {
    let f = field("GF(3)");
    let c = ctx(&f, "t^2+1", "t^2+1");
    for (n, want) in [(1, false), (2, true)] {
        let pair = symplectic_extension(&Mat::zeros(&f, n, n)).expect("square");
        let decided = decide_pair(&pair, &c).map_err(|e| e.to_string())?.verdict.is_yes();
        let found = brute_force_witness(&pair, &c, DEFAULT_SEARCH_BOUND).map_err(|e| e.to_string())?;
        ensure(decided == want && found.is_some() == want, || {
            format!("dim {}: decided {decided}, search {}", 2 * n, found.is_some())
        })?;
    }
    Ok("dim 2 no, dim 4 yes, both confirmed by search".into())
}

fn gaussian_counterexample() -> Outcome {
    let q = Field::rationals();
    let c = ctx(&q, "t^2+1", "t^2+1");
    let v = companion(&poly(&q, "t^2+2")).expect("monic");
    let report = decide_extension(&v, &c).map_err(|e| e.to_string())?;
    ensure(report.verdict.is_yes(), || "decided no".into())?;
    let w = compose_witness(&v, &c, DEFAULT_SEARCH_BOUND)
        .map_err(|e| e.to_string())?
        .ok_or("no witness constructed")?;
    ensure(verify_witness(&w, &c).all_pass, || "witness fails verification".into())?;
    let h = symplectic_extension(&v).expect("square");
    ensure(crate::linalg::similar(&w.u, &h.u).expect("square"), || "witness is not for S(v)".into())?;
    Ok("S(C(t^2+2)) decided yes with a verified witness".into())
}

fn random_monic(f: &Field, d: usize, rng: &mut ChaCha8Rng) -> Poly {
    let mut c: Vec<Scalar> = (0..d).map(|_| f.random(rng)).collect();
    c.push(f.one());
    Poly::new(f, c)
}

fn regular_round_trip() -> Outcome {
    let fields = [field("Q"), field("GF(5)"), field("GF(7)"), field("GF(2)(s)"), field("GF(3)")];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut built, mut flipped, mut skipped) = (0, 0, 0);
    while built < 100 {
        let f = &fields[built % fields.len()];
        let Ok(c) = PairCtx::new(&random_monic(f, 2, &mut rng), &random_monic(f, 2, &mut rng)) else {
            continue;
        };
        let sigma = c.sigma();
        let regular = |g: &Poly| g.gcd(&c.fundamental).is_constant();
        let f1 = random_monic(f, rng.gen_range(1..=2), &mut rng).compose(&sigma);
        let f2 = random_monic(f, 1, &mut rng).compose(&sigma);
        if !regular(&f1) || !regular(&f2) {
            continue;
        }
        built += 1;
        let v = companion(&f1).expect("monic").direct_sum(&companion(&f2).expect("monic"));
        let report = decide_extension(&v, &c).map_err(|e| e.to_string())?;
        ensure(report.verdict.is_yes() && report.exceptional_part.dim == 0, || {
            format!("{}: regular instance {f1} + {f2} not decided yes", f)
        })?;
        let mutated = f1.add(&Poly::var(f));
        if !regular(&mutated) || decompose_base_sigma(&mutated, &c.delta).is_some() {
            skipped += 1;
            continue;
        }
        let report = decide_extension(&companion(&mutated).expect("monic"), &c).map_err(|e| e.to_string())?;
        ensure(!report.regular_part.holds && !report.verdict.is_yes(), || {
            format!("{}: mutated factor {mutated} still passes", f)
        })?;
        flipped += 1;
    }
    Ok(format!("{built} yes instances, {flipped} mutations flipped, {skipped} mutations not applicable"))
}

/// Jordan matrix from `(eigenvalue, size)` cells.
fn jordan(f: &Field, cells: &[(i64, usize)]) -> Mat {
    let blocks: Vec<Mat> = cells.iter().map(|(z, n)| jordan_block(f, &f.from_i64(*z), *n)).collect();
    Mat::direct_sum_all(f, &blocks)
}

type Curated = (&'static [(i64, usize)], bool);

/// `p = q = t^2 - t`: differences 0 and +-1, `delta = 0`; the sequences
/// at 1 and -1 must be 1-intertwined.
const SIMPLE_SIMPLE: [Curated; 20] = [
    (&[(1, 1)], true),
    (&[(1, 2)], false),
    (&[(1, 2), (-1, 1)], true),
    (&[(1, 3), (-1, 1)], false),
    (&[(1, 3), (-1, 2)], true),
    (&[(0, 5)], true),
    (&[(0, 1)], true),
    (&[(1, 1), (1, 1)], true),
    (&[(1, 2), (1, 2), (-1, 1)], false),
    (&[(1, 2), (1, 2), (-1, 1), (-1, 1)], true),
    (&[(-1, 2)], false),
    (&[(-1, 2), (1, 1)], true),
    (&[(1, 1), (-1, 1), (0, 2)], true),
    (&[(1, 4), (-1, 3)], true),
    (&[(1, 4), (-1, 2)], false),
    (&[(1, 3), (1, 1), (-1, 2)], true),
    (&[(1, 2), (1, 1), (-1, 1)], true),
    (&[(1, 2), (1, 2), (1, 2), (-1, 2), (-1, 1)], false),
    (&[(-1, 3), (1, 1)], false),
    (&[(0, 2), (0, 1), (1, 2)], false),
];

/// `p = t^2 - t`, `q = (t - 1)^2`: differences -1 and 0 with
/// `delta = -1`; the sequences at -1 and 0 must be 2-intertwined.
const MIXED: [Curated; 20] = [
    (&[(0, 1)], true),
    (&[(0, 2)], true),
    (&[(0, 3)], false),
    (&[(0, 3), (-1, 1)], true),
    (&[(-1, 2)], true),
    (&[(-1, 3)], false),
    (&[(-1, 4), (0, 2)], true),
    (&[(-1, 5), (0, 2)], false),
    (&[(-1, 1), (-1, 1), (-1, 1)], true),
    (&[(-1, 3), (-1, 3), (0, 1)], false),
    (&[(-1, 3), (-1, 3), (0, 1), (0, 1)], true),
    (&[(0, 4), (-1, 2)], true),
    (&[(0, 4), (-1, 1)], false),
    (&[(0, 2), (-1, 2)], true),
    (&[(0, 5), (-1, 3)], true),
    (&[(0, 5), (-1, 2)], false),
    (&[(0, 1), (0, 1), (-1, 3)], true),
    (&[(0, 3), (0, 3), (-1, 1)], false),
    (&[(-1, 6), (0, 4)], true),
    (&[(-1, 6), (0, 3)], false),
];

fn split_intertwining() -> Outcome {
    let mut checked = 0;
    let mut searched = 0;
    for spec in ["Q", "GF(5)"] {
        let f = field(spec);
        for (family, p, q, table) in [
            (Family::SplitSimpleSimple, "t^2-t", "t^2-t", &SIMPLE_SIMPLE),
            (Family::SplitMixed, "t^2-t", "t^2-2t+1", &MIXED),
        ] {
            let c = ctx(&f, p, q);
            ensure(c.family() == family, || format!("{spec}: ({p}, {q}) classified as {}", c.case_tag))?;
            for (cells, want) in table.iter() {
                let v = jordan(&f, cells);
                let got = decide_extension(&v, &c).map_err(|e| e.to_string())?.verdict.is_yes();
                ensure(got == *want, || format!("{spec} ({p}, {q}) cells {cells:?}: expected {want}, got {got}"))?;
                checked += 1;
                if f.is_finite() && v.rows() <= 2 {
                    let pair = symplectic_extension(&v).expect("square");
                    let found = brute_force_witness(&pair, &c, DEFAULT_SEARCH_BOUND).map_err(|e| e.to_string())?;
                    ensure(found.is_some() == *want, || format!("{spec} cells {cells:?}: search disagrees"))?;
                    searched += 1;
                }
            }
        }
    }
    Ok(format!("{checked} curated instances, {searched} confirmed by search"))
}

fn same_splitting_field() -> Outcome {
    let q = Field::rationals();
    let c = ctx(&q, "t^2+1", "t^2+4");
    ensure(c.family() == Family::IrrSameField, || "(t^2+1, t^2+4) not same-field".into())?;
    let rows = indecomposable_reps(&c, 6, Some(&[])).map_err(|e| e.to_string())?;
    ensure(!rows.is_empty(), || "no table rows".into())?;
    for r in &rows {
        let yes = decide_extension(&r.rep, &c).map_err(|e| e.to_string())?.verdict.is_yes();
        ensure(yes, || format!("table row {:?} decided no", r.params))?;
    }
    let c = ctx(&q, "t^2+1", "t^2+1");
    for (cells, want) in [
        (&[(0, 1)][..], false),
        (&[(0, 2)][..], true),
        (&[(0, 1), (0, 1)][..], true),
        (&[(0, 3)][..], false),
        (&[(0, 3), (0, 3)][..], true),
        (&[(0, 3), (0, 1)][..], false),
    ] {
        let v = jordan(&q, cells);
        let got = decide_extension(&v, &c).map_err(|e| e.to_string())?.verdict.is_yes();
        ensure(got == want, || format!("cells {cells:?}: expected {want}, got {got}"))?;
    }
    Ok(format!("{} table rows yes, odd single cells no", rows.len()))
}

fn char_two_special() -> Outcome {
    let f = field("GF(2)(s)");
    let c = ctx(&f, "t^2+t+1", "t^2+t+s");
    ensure(c.family() == Family::IrrDistinctSpecial, || format!("classified as {}", c.case_tag))?;
    let g = poly(&f, "t^2+t+1+s");
    let cg = companion(&g).expect("monic");
    let decide = |v: &Mat| decide_extension(v, &c).map(|r| r.verdict.is_yes()).map_err(|e| e.to_string());
    ensure(!decide(&cg)?, || "[f] decided yes".into())?;
    ensure(decide(&cg.direct_sum(&cg))?, || "[f, f] decided no".into())?;
    let sq = g.mul(&g);
    ensure(decide(&companion(&sq).expect("monic"))?, || "[f^2] decided no".into())?;
    let r = decompose_base_sigma(&sq, &c.delta).ok_or("f^2 is not a polynomial in t^2 - delta t")?;
    ensure(r == poly(&f, "t^2+t+(1+s)^2"), || format!("unexpected decomposition {r}"))?;
    let w = duplication_witness(&c, &r).map_err(|e| e.to_string())?;
    ensure(verify_witness(&w, &c).all_pass, || "duplication witness fails verification".into())?;
    let pair = symplectic_extension(&cg).expect("square");
    ensure(!decide_pair(&pair, &c).map_err(|e| e.to_string())?.verdict.is_yes(), || "pair [f, f] yes".into())?;
    Ok("[f] no, [f, f] yes, [f^2] yes with a verified witness".into())
}

fn atlas_contexts() -> Vec<(PairCtx, Option<Vec<Poly>>)> {
    let mut out = Vec::new();
    for spec in ["GF(2)", "GF(3)", "GF(5)"] {
        let f = field(spec);
        let mut seen: Vec<(Family, bool)> = Vec::new();
        for c in all_ctxs(&f) {
            let key = (c.family(), c.case_tag.swapped);
            if !seen.contains(&key) {
                seen.push(key);
                out.push((c, None));
            }
        }
    }
    let q = Field::rationals();
    let inventory_q: Vec<Poly> =
        ["t", "t-1", "t+1", "t-2", "t+3", "t^2+1", "t^2+2", "t^2-3"].iter().map(|s| poly(&q, s)).collect();
    for (p, r) in [
        ("t^2-t", "t^2-t"),
        ("t^2", "t^2"),
        ("t^2-t", "t^2"),
        ("t^2", "t^2-t"),
        ("t^2+1", "t^2"),
        ("t^2+1", "t^2-1"),
        ("t^2-1", "t^2+1"),
        ("t^2+1", "t^2+4"),
        ("t^2+1", "t^2+1"),
        ("t^2+1", "t^2+2"),
    ] {
        out.push((ctx(&q, p, r), Some(inventory_q.clone())));
    }
    let s = field("GF(2)(s)");
    let inventory_s: Vec<Poly> = ["t", "t+1", "t+s", "t^2+s", "t^2+t+s"].iter().map(|x| poly(&s, x)).collect();
    for (p, r) in [
        ("t^2+t+1", "t^2+t+s"),
        ("t^2+s", "t^2+s"),
        ("t^2+t+1", "t^2+t+1"),
        ("t^2+t", "t^2+t"),
        ("t^2", "t^2+s"),
        ("t^2+s", "t^2+1"),
        ("t^2+t+s", "t^2+s"),
    ] {
        out.push((ctx(&s, p, r), Some(inventory_s.clone())));
    }
    out
}

fn atlas_self_check() -> Outcome {
    let mut jobs = Vec::new();
    let contexts = atlas_contexts();
    let mut families: Vec<u8> = Vec::new();
    for (c, inv) in &contexts {
        let rows = indecomposable_reps(c, 8, inv.as_deref()).map_err(|e| e.to_string())?;
        for r in rows {
            if !families.contains(&r.table) {
                families.push(r.table);
            }
            jobs.push((c.clone(), r));
        }
    }
    families.sort_unstable();
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|(c, row)| {
            let label = || format!("{} ({}, {}) table {} {:?}", c.field(), c.p, c.q, row.table, row.params);
            match decide_extension(&row.rep, c) {
                Ok(r) if r.verdict.is_yes() => {}
                Ok(_) => return Some(format!("{}: decided no", label())),
                Err(e) => return Some(format!("{}: {e}", label())),
            }
            let pair = symplectic_extension(&row.rep).expect("square");
            (!validate_pair(&pair.b, &pair.u).is_valid()).then(|| format!("{}: invalid pair", label()))
        })
        .collect();
    match failures.first() {
        None => Ok(format!("{} rows over {} contexts, tables {:?}", jobs.len(), contexts.len(), families)),
        Some(first) => Err(format!("{} failures, first: {first}", failures.len())),
    }
}

fn nilpotent_lemma() -> Outcome {
    let mut yes = 0;
    for spec in ["GF(2)", "GF(3)"] {
        let f = field(spec);
        for p in irreducibles_of_degree(&f, 2).map_err(|e| e.to_string())? {
            let c = PairCtx::new(&p, &p).map_err(|e| e.to_string())?;
            for v in small_profiles(&f).into_iter().filter(|v| v.rows() == 2) {
                let pair = symplectic_extension(&v).expect("square");
                if !pair.u.pow(4).is_zero() {
                    continue;
                }
                if brute_force_witness(&pair, &c, DEFAULT_SEARCH_BOUND).map_err(|e| e.to_string())?.is_none() {
                    continue;
                }
                let seq = jordan_sequence(&pair.u, &f.zero()).expect("square");
                let at = |k: usize| seq.get(k - 1).copied().unwrap_or(0);
                let (j1, j3) = (at(1) - at(2), at(3) - at(4));
                ensure(j1 % 4 == 0 && j3 % 4 == 0, || format!("{spec} p = {p}: j1 = {j1}, j3 = {j3}"))?;
                yes += 1;
            }
        }
    }
    ensure(yes > 0, || "no nilpotent yes instance found".into())?;
    Ok(format!("{yes} nilpotent yes instances, all with j1, j3 divisible by 4"))
}

use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use symdiff_core::atlas::indecomposable_reps;
use symdiff_core::cases::{classify_case, decide_extension, decide_pair, PairCtx};
use symdiff_core::linalg::{companion, jordan_block, Mat};
use symdiff_core::parse::{parse_poly, parse_scalar};
use symdiff_core::selftest;
use symdiff_core::symplectic::{symplectic_extension, SymplecticPair};
use symdiff_core::witness::{brute_force_witness, compose_witness, verify_witness, Witness, DEFAULT_SEARCH_BOUND};
use symdiff_core::{Error, Field, Poly};

/// Decide, construct and enumerate symplectic (p,q)-differences.
#[derive(Parser)]
#[command(name = "symdiff", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Case family of the quadratics p and q.
    Classify(Ctx),
    /// Decide whether a pair (or S(v)) is a (p,q)-difference.
    Decide(Instance),
    /// Produce a witness (u1, u2) for a YES instance.
    Witness(Instance),
    /// Check a witness given as JSON with keys B, U, U1, U2.
    Verify {
        #[command(flatten)]
        ctx: Ctx,
        #[arg(long)]
        pair: String,
    },
    /// Indecomposable representatives as JSON lines.
    Enumerate {
        #[command(flatten)]
        ctx: Ctx,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        /// Monic irreducible for the regular rows; repeatable, required over infinite fields.
        #[arg(long = "irreducible")]
        irreducible: Vec<String>,
    },
    /// Exhaustive comparison of the decision procedure with brute-force search.
    Oracle {
        #[arg(long)]
        field: String,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run the acceptance criteria.
    Selftest {
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Args)]
struct Ctx {
    #[arg(long)]
    field: String,
    #[arg(long)]
    p: String,
    #[arg(long)]
    q: String,
}

#[derive(Args)]
struct Instance {
    #[command(flatten)]
    ctx: Ctx,
    /// Endomorphism v; the instance is S(v).
    #[arg(long, conflicts_with = "pair", required_unless_present = "pair")]
    v: Option<String>,
    /// Pair as JSON with keys B and U, inline or @file.
    #[arg(long)]
    pair: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
    bound: usize,
}

impl Ctx {
    fn build(&self) -> anyhow::Result<(Field, PairCtx)> {
        let f = Field::parse(&self.field)?;
        let p = parse_poly(&f, &self.p).context("--p")?;
        let q = parse_poly(&f, &self.q).context("--q")?;
        let ctx = PairCtx::new(&p, &q)?;
        Ok((f, ctx))
    }
}

fn read_json_arg(arg: &str) -> anyhow::Result<Value> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
        None => arg.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| Error::Json(e.to_string()).into())
}

fn same_field(f: &Field, m: &Mat) -> anyhow::Result<()> {
    if m.field() != f {
        bail!(Error::MixedFieldContexts);
    }
    Ok(())
}

fn parse_count(s: &str) -> anyhow::Result<usize> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad size `{s}`")).into())
}

/// `;`-separated blocks: `companion:<poly>`, `zero:<n>`, `jordan:<scalar>,<n>`,
/// `@file.json` or an inline matrix object.
fn parse_v(f: &Field, text: &str) -> anyhow::Result<Mat> {
    let text = text.trim();
    if text.starts_with('{') {
        return matrix_item(f, text);
    }
    let mut blocks = Vec::new();
    for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let block = if let Some(g) = item.strip_prefix("companion:") {
            companion(&parse_poly(f, g)?)?
        } else if let Some(n) = item.strip_prefix("zero:") {
            let n = parse_count(n)?;
            Mat::zeros(f, n, n)
        } else if let Some(rest) = item.strip_prefix("jordan:") {
            let (z, n) = rest.rsplit_once(',').ok_or_else(|| Error::Parse(format!("jordan item `{rest}`")))?;
            jordan_block(f, &parse_scalar(f, z.trim())?, parse_count(n)?)
        } else if item.starts_with('@') {
            matrix_item(f, item)?
        } else {
            bail!(Error::Parse(format!("unknown block `{item}`")));
        };
        blocks.push(block);
    }
    if blocks.is_empty() {
        bail!(Error::Parse("empty --v".into()));
    }
    Ok(Mat::direct_sum_all(f, &blocks))
}

fn matrix_item(f: &Field, arg: &str) -> anyhow::Result<Mat> {
    let m: Mat = serde_json::from_value(read_json_arg(arg)?).map_err(|e| Error::Json(e.to_string()))?;
    same_field(f, &m)?;
    m.require_square()?;
    Ok(m)
}

fn parse_pair(f: &Field, arg: &str) -> anyhow::Result<SymplecticPair> {
    let pair: SymplecticPair = serde_json::from_value(read_json_arg(arg)?).map_err(|e| Error::Json(e.to_string()))?;
    same_field(f, &pair.b)?;
    same_field(f, &pair.u)?;
    Ok(pair)
}

fn print(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string(v).expect("serializable"));
}

fn pool(jobs: Option<usize>) -> anyhow::Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        b = b.num_threads(n);
    }
    Ok(b.build()?)
}

/// Every `n x n` matrix over a finite field, in index order.
fn all_matrices(f: &Field, n: usize) -> anyhow::Result<Vec<Mat>> {
    let order: u64 = f
        .order()
        .ok_or(Error::InfiniteField)?
        .try_into()
        .map_err(|_| anyhow!("field too large to sweep"))?;
    let total = u32::try_from(n * n).ok().and_then(|e| order.checked_pow(e)).filter(|&t| t <= 1 << 20);
    let total = total.ok_or_else(|| anyhow!("sweep over {n}x{n} matrices is too large"))?;
    Ok((0..total)
        .map(|mut i| {
            let data = (0..n * n)
                .map(|_| {
                    let x = f.element_at(i % order);
                    i /= order;
                    x
                })
                .collect();
            Mat::new(f, n, n, data)
        })
        .collect())
}

fn monic_quadratics(f: &Field) -> anyhow::Result<Vec<Poly>> {
    let elems: Vec<_> = f.elements()?.collect();
    Ok(elems
        .iter()
        .flat_map(|a| elems.iter().map(move |b| Poly::new(f, vec![b.clone(), a.clone(), f.one()])))
        .collect())
}

#[derive(Default, Clone, Copy)]
struct Tally {
    yes_found: usize,
    yes_none: usize,
    no_found: usize,
    no_none: usize,
}

fn oracle(field: &str, p: Option<&str>, q: Option<&str>, dim: usize, seed: u64, jobs: Option<usize>) -> anyhow::Result<Value> {
    let f = Field::parse(field)?;
    if dim == 0 || dim % 2 == 1 {
        bail!(Error::DimensionMismatch(format!("pair dimension {dim} must be even and positive")));
    }
    if dim > DEFAULT_SEARCH_BOUND {
        bail!(Error::DimensionBoundExceeded { dim, bound: DEFAULT_SEARCH_BOUND });
    }
    let ps = match p {
        Some(s) => vec![parse_poly(&f, s)?],
        None => monic_quadratics(&f)?,
    };
    let qs = match q {
        Some(s) => vec![parse_poly(&f, s)?],
        None => monic_quadratics(&f)?,
    };
    let ctxs: Vec<PairCtx> = ps
        .iter()
        .flat_map(|p| qs.iter().map(move |q| PairCtx::new(p, q)))
        .collect::<Result<_, _>>()?;
    let vs = all_matrices(&f, dim / 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut total = Tally::default();
    for c in &ctxs {
        let instances: Vec<SymplecticPair> = vs
            .iter()
            .map(|v| {
                let pair = symplectic_extension(v).expect("square");
                let pm = Mat::random_invertible(&f, dim, &mut rng);
                SymplecticPair::new(pm.transpose().mul(&pair.b).mul(&pm), pair.u.conjugate(&pm).expect("square"))
            })
            .collect();
        let outcomes: Vec<symdiff_core::Result<(bool, bool)>> = pool(jobs)?.install(|| {
            instances
                .par_iter()
                .map(|pair| {
                    let decided = decide_pair(pair, c)?.verdict.is_yes();
                    let found = brute_force_witness(pair, c, DEFAULT_SEARCH_BOUND)?;
                    if let Some(w) = &found {
                        if !verify_witness(w, c).all_pass {
                            return Err(Error::ConstructionInvariantViolated("search witness fails verification".into()));
                        }
                    }
                    Ok((decided, found.is_some()))
                })
                .collect()
        });
        let mut t = Tally::default();
        for o in outcomes {
            match o? {
                (true, true) => t.yes_found += 1,
                (true, false) => t.yes_none += 1,
                (false, true) => t.no_found += 1,
                (false, false) => t.no_none += 1,
            }
        }
        total.yes_found += t.yes_found;
        total.yes_none += t.yes_none;
        total.no_found += t.no_found;
        total.no_none += t.no_none;
        rows.push(json!({
            "p": c.p.to_string(),
            "q": c.q.to_string(),
            "case": c.case_tag.family,
            "matrix": matrix_json(&t),
            "disagreements": t.yes_none + t.no_found,
        }));
    }
    Ok(json!({
        "field": f.to_string(),
        "dim": dim,
        "seed": seed,
        "instances": ctxs.len() * vs.len(),
        "matrix": matrix_json(&total),
        "disagreements": total.yes_none + total.no_found,
        "contexts": rows,
    }))
}

fn matrix_json(t: &Tally) -> Value {
    json!({
        "decide_yes": {"search_found": t.yes_found, "search_none": t.yes_none},
        "decide_no": {"search_found": t.no_found, "search_none": t.no_none},
    })
}

fn instance_pair(f: &Field, inst: &Instance) -> anyhow::Result<(Option<Mat>, SymplecticPair)> {
    match (&inst.v, &inst.pair) {
        (Some(v), _) => {
            let v = parse_v(f, v)?;
            let pair = symplectic_extension(&v)?;
            Ok((Some(v), pair))
        }
        (None, Some(p)) => Ok((None, parse_pair(f, p)?)),
        (None, None) => bail!(Error::Parse("one of --v or --pair is required".into())),
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Classify(ctx) => {
            let f = Field::parse(&ctx.field)?;
            print(&classify_case(&parse_poly(&f, &ctx.p)?, &parse_poly(&f, &ctx.q)?)?);
        }
        Command::Decide(inst) => {
            let (f, ctx) = inst.ctx.build()?;
            let report = match instance_pair(&f, &inst)? {
                (Some(v), pair) => {
                    let report = decide_extension(&v, &ctx)?;
                    let check = decide_pair(&pair, &ctx)?;
                    if check.verdict != report.verdict {
                        bail!(Error::Inconsistent("S(v) and v decided differently".into()));
                    }
                    report
                }
                (None, pair) => decide_pair(&pair, &ctx)?,
            };
            print(&report);
            if !report.verdict.is_yes() {
                return Ok(2);
            }
        }
        Command::Witness(inst) => {
            let (f, ctx) = inst.ctx.build()?;
            let (v, pair) = instance_pair(&f, &inst)?;
            let found = match &v {
                Some(v) => compose_witness(v, &ctx, inst.bound)?,
                None => {
                    if !decide_pair(&pair, &ctx)?.verdict.is_yes() {
                        bail!(Error::DecisionWasNo);
                    }
                    match brute_force_witness(&pair, &ctx, inst.bound) {
                        Ok(w) => w,
                        Err(Error::InfiniteField | Error::DimensionBoundExceeded { .. }) => None,
                        Err(e) => bail!(e),
                    }
                }
            };
            match found {
                Some(w) => print(&w),
                None => print(&json!({"verdict": "yes", "witness": null})),
            }
        }
        Command::Verify { ctx, pair } => {
            let (f, ctx) = ctx.build()?;
            let w: Witness = serde_json::from_value(read_json_arg(&pair)?).map_err(|e| Error::Json(e.to_string()))?;
            same_field(&f, &w.b)?;
            print(&verify_witness(&w, &ctx));
        }
        Command::Enumerate { ctx, dim, irreducible } => {
            let (f, ctx) = ctx.build()?;
            let inventory: Vec<Poly> = irreducible.iter().map(|s| parse_poly(&f, s)).collect::<Result<_, _>>()?;
            let inv = (!inventory.is_empty()).then_some(inventory.as_slice());
            for row in indecomposable_reps(&ctx, dim, inv)? {
                print(&row);
            }
        }
        Command::Oracle { field, p, q, dim, seed, jobs } => {
            let report = oracle(&field, p.as_deref(), q.as_deref(), dim, seed, jobs)?;
            let bad = report["disagreements"].as_u64() != Some(0);
            print(&report);
            if bad {
                return Ok(1);
            }
        }
        Command::Selftest { jobs } => {
            let results = pool(jobs)?.install(selftest::run_all);
            let mut failed = 0;
            for r in &results {
                failed += usize::from(!r.passed);
                print(&json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail}));
            }
            print(&json!({"passed": results.len() - failed, "total": results.len()}));
            if failed > 0 {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn error_json(e: &anyhow::Error) -> Value {
    let kind = match e.downcast_ref::<Error>() {
        Some(err) => {
            let dbg = format!("{err:?}");
            dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
        }
        None => "Usage".to_string(),
    };
    json!({"error": {"kind": kind, "message": format!("{e:#}")}})
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            print(&json!({"error": {"kind": "Usage", "message": e.to_string().trim_end()}}));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            print(&error_json(&e));
            ExitCode::from(1)
        }
    }
}

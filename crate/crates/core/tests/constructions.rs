use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symdiff_core::atlas::{indecomposable_reps, norm_quadratic};
use symdiff_core::cases::{decide_pair, PairCtx};
use symdiff_core::field::Field;
use symdiff_core::linalg::{companion, invariant_factors, Mat};
use symdiff_core::parse::parse_poly;
use symdiff_core::poly::Poly;
use symdiff_core::symplectic::{is_alternating, isometry_test, symplectic_extension, SymplecticPair};
use symdiff_core::witness::{
    brute_force_witness, compose_witness, duplication_witness, verify_witness, w_algebra_block, Witness,
    DEFAULT_SEARCH_BOUND,
};
use symdiff_core::Error;

fn p(f: &Field, s: &str) -> Poly {
    parse_poly(f, s).unwrap()
}

fn ctx(f: &Field, a: &str, b: &str) -> PairCtx {
    PairCtx::new(&p(f, a), &p(f, b)).unwrap()
}

#[test]
fn block_companion_is_cyclic() {
    // [[0, C(r)], [I, delta I]] has the single invariant factor r(t^2 - delta t)
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for spec in ["Q", "GF(3)", "GF(2)(s)"] {
        let f = Field::parse(spec).unwrap();
        for _ in 0..10 {
            let d = rng.gen_range(1..=3);
            let mut c: Vec<_> = (0..d).map(|_| f.random(&mut rng)).collect();
            c.push(f.one());
            let r = Poly::new(&f, c);
            let delta = f.random(&mut rng);
            let m = Mat::block(
                &f,
                &[
                    vec![Mat::zeros(&f, d, d), companion(&r).unwrap()],
                    vec![Mat::identity(&f, d), Mat::scalar(&f, d, &delta)],
                ],
            )
            .unwrap();
            let sigma = Poly::new(&f, vec![f.zero(), f.neg(&delta), f.one()]);
            assert_eq!(invariant_factors(&m).unwrap().factors, vec![r.compose(&sigma)]);
        }
    }
}

#[test]
fn duplication_over_other_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for spec in ["Q", "GF(7)", "GF(4)|t^2+t+1", "GF(3)(s)"] {
        let f = Field::parse(spec).unwrap();
        for _ in 0..4 {
            let quad = |rng: &mut ChaCha8Rng| Poly::new(&f, vec![f.random(rng), f.random(rng), f.one()]);
            let c = PairCtx::new(&quad(&mut rng), &quad(&mut rng)).unwrap();
            let r = Poly::new(&f, vec![f.random(&mut rng), f.random(&mut rng), f.one()]);
            let w = duplication_witness(&c, &r).unwrap();
            assert!(verify_witness(&w, &c).all_pass, "{spec}");
            assert!(decide_pair(&w.pair(), &c).unwrap().verdict.is_yes());
            let block = w_algebra_block(&c, &r).unwrap();
            assert!(block.relations(&c).iter().all(|(_, ok)| *ok));
        }
    }
}

#[test]
fn duplication_rejects_bad_r() {
    let q = Field::rationals();
    let c = ctx(&q, "t^2+1", "t^2+1");
    assert_eq!(duplication_witness(&c, &p(&q, "2t+1")).unwrap_err(), Error::NonMonic);
    assert!(matches!(duplication_witness(&c, &Poly::one(&q)), Err(Error::WrongDegree { .. })));
}

#[test]
fn alternating_differences_are_closed() {
    let f = Field::prime(3).unwrap();
    let c = ctx(&f, "t^2+1", "t^2-t");
    let w = duplication_witness(&c, &p(&f, "t^2+2")).unwrap();
    let diff = w.b.mul(&w.u1.sub(&w.u2));
    assert!(is_alternating(&diff).unwrap());
    assert!(is_alternating(&w.b.mul(&w.u)).unwrap());
}

#[test]
fn brute_force_finds_constructed_witnesses() {
    let f = Field::prime(2).unwrap();
    let c = ctx(&f, "t^2", "t^2");
    let w = duplication_witness(&c, &p(&f, "t")).unwrap();
    let found = brute_force_witness(&w.pair(), &c, DEFAULT_SEARCH_BOUND).unwrap().unwrap();
    assert!(verify_witness(&found, &c).all_pass);
}

#[test]
fn search_matches_decision_on_random_bases() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let f = Field::prime(2).unwrap();
    let contexts: Vec<PairCtx> = ["t^2", "t^2+t", "t^2+1", "t^2+t+1"]
        .iter()
        .flat_map(|a| ["t^2", "t^2+t", "t^2+t+1"].iter().map(move |b| (*a, *b)))
        .map(|(a, b)| ctx(&f, a, b))
        .collect();
    for c in &contexts {
        for _ in 0..6 {
            let v = Mat::random(&f, 2, 2, &mut rng);
            let pair = symplectic_extension(&v).unwrap();
            let pm = Mat::random_invertible(&f, 4, &mut rng);
            let moved = SymplecticPair::new(pm.transpose().mul(&pair.b).mul(&pm), pair.u.conjugate(&pm).unwrap());
            let decided = decide_pair(&moved, c).unwrap().verdict.is_yes();
            let found = brute_force_witness(&moved, c, DEFAULT_SEARCH_BOUND).unwrap();
            assert_eq!(decided, found.is_some(), "({}, {})", c.p, c.q);
        }
    }
}

#[test]
fn witness_json_round_trip() {
    let f = Field::parse("GF(2)(s)").unwrap();
    let c = ctx(&f, "t^2+t+1", "t^2+t+s");
    let w = duplication_witness(&c, &p(&f, "t+s")).unwrap();
    let text = serde_json::to_string(&w).unwrap();
    assert!(text.contains("\"U1\"") && text.contains("\"U2\""));
    let back: Witness = serde_json::from_str(&text).unwrap();
    assert_eq!(back, w);
}

#[test]
fn compose_mixes_duplication_and_search() {
    let f = Field::prime(3).unwrap();
    let c = ctx(&f, "t^2+1", "t^2+1");
    let v = companion(&p(&f, "t^2+2")).unwrap().direct_sum(&Mat::zeros(&f, 2, 2));
    let w = compose_witness(&v, &c, DEFAULT_SEARCH_BOUND).unwrap().unwrap();
    assert!(verify_witness(&w, &c).all_pass);
    assert!(isometry_test(&w.pair(), &symplectic_extension(&v).unwrap()).unwrap());
}

#[test]
fn atlas_examples() {
    let q = Field::rationals();
    let c = ctx(&q, "t^2+1", "t^2+4");
    assert_eq!(norm_quadratic(&c, false, 0).unwrap(), norm_quadratic(&c, true, 1).unwrap());
    let c = ctx(&q, "t^2+1", "t^2+2");
    assert_eq!(norm_quadratic(&c, false, 0), Err(Error::WrongCase("IRR_SAME_FIELD")));
    let rows = indecomposable_reps(&c, 8, Some(&[p(&q, "t+1")])).unwrap();
    let tables: Vec<u8> = rows.iter().map(|r| r.table).collect();
    assert_eq!(tables, vec![1, 1, 1, 1, 8, 8]);
    let json = serde_json::to_value(&rows[4]).unwrap();
    assert_eq!(json["table"], 8);
    assert_eq!(json["dim"], 4);
}

#[test]
fn atlas_is_closed_under_reflection_of_differences() {
    // swapping x and delta - x in a row maps it to another emitted row
    let f = Field::prime(5).unwrap();
    for (a, b) in [("t^2-t", "t^2-t"), ("t^2-t", "t^2-2t+1"), ("t^2-3t+2", "t^2-t")] {
        let c = ctx(&f, a, b);
        let rows: Vec<_> = indecomposable_reps(&c, 4, Some(&[])).unwrap();
        for r in &rows {
            let mirrored = r.rep.neg().add(&Mat::scalar(&f, r.dim, &c.delta));
            let pair = symplectic_extension(&mirrored).unwrap();
            let hit = rows.iter().any(|o| {
                o.dim == r.dim && isometry_test(&symplectic_extension(&o.rep).unwrap(), &pair).unwrap()
            });
            assert!(hit, "({a}, {b}) {:?}", r.params);
        }
    }
}

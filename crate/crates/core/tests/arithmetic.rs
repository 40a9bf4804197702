use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symdiff_core::field::{Field, Scalar};
use symdiff_core::parse::{parse_poly, parse_scalar};
use symdiff_core::poly::{factor_ff, is_irreducible, roots_in_field, Poly};

const SPECS: [&str; 7] = ["Q", "GF(2)", "GF(3)", "GF(7)", "GF(4)|t^2+t+1", "GF(2)(s)", "GF(3)(s)"];

fn scalars(f: &Field, seed: u64, n: usize) -> Vec<Scalar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| f.random(&mut rng)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(idx in 0usize..SPECS.len(), seed in any::<u64>()) {
        let f = Field::parse(SPECS[idx]).unwrap();
        let v = scalars(&f, seed, 3);
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
        prop_assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
        prop_assert_eq!(f.sub(&f.add(a, b), b), a.clone());
        if !f.is_zero(a) {
            prop_assert_eq!(f.mul(a, &f.inv(a).unwrap()), f.one());
        }
        prop_assert_eq!(parse_scalar(&f, &f.render(a)).unwrap(), a.clone());
    }

    #[test]
    fn division_with_remainder(idx in 0usize..SPECS.len(), seed in any::<u64>(), da in 0usize..6, db in 0usize..4) {
        let f = Field::parse(SPECS[idx]).unwrap();
        let a = Poly::new(&f, scalars(&f, seed, da + 1));
        let mut bc = scalars(&f, seed ^ 1, db);
        bc.push(f.one());
        let b = Poly::new(&f, bc);
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a.clone());
        prop_assert!(r.degree_i64() < b.degree_i64());
        let g = a.gcd(&b);
        prop_assert!(g.divides(&a) && g.divides(&b));
        prop_assert_eq!(parse_poly(&f, &a.to_string()).unwrap(), a);
    }
}

#[test]
fn factorization_recovers_the_polynomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for spec in ["GF(2)", "GF(3)", "GF(5)", "GF(9)|t^2+1"] {
        let f = Field::parse(spec).unwrap();
        for _ in 0..40 {
            let mut c: Vec<Scalar> = (0..6).map(|_| f.random(&mut rng)).collect();
            c.push(f.one());
            let g = Poly::new(&f, c);
            let parts = factor_ff(&g).unwrap();
            let back = parts.iter().fold(Poly::one(&f), |acc, (h, e)| acc.mul(&h.pow(*e as u32)));
            assert_eq!(back, g, "{spec}");
            assert!(parts.iter().all(|(h, _)| is_irreducible(h).unwrap() && h.is_monic()));
        }
    }
}

#[test]
fn roots_of_planted_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for spec in ["Q", "GF(5)", "GF(2)(s)", "GF(3)(s)"] {
        let f = Field::parse(spec).unwrap();
        for _ in 0..20 {
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            let g = Poly::linear(&f, &a).mul(&Poly::linear(&f, &b));
            let roots = roots_in_field(&g);
            assert!(roots.contains(&a) && roots.contains(&b), "{spec}: {g}");
        }
    }
}

#[test]
fn extension_field_display_and_errors() {
    let f = Field::parse("GF(4)|t^2+t+1").unwrap();
    assert_eq!(f.to_string(), "GF(4)|t^2+t+1");
    assert!(Field::parse("GF(4)").is_err());
    assert!(Field::parse("GF(6)").is_err());
    assert!(Field::parse("GF(4)|t^2+1").is_err());
}

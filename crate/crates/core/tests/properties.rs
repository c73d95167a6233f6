mod common;

use dukan_core::doldkan::{dold_kan_nerve, induced_on_normalized, nerve_map, ChainComplex};
use dukan_core::dwyerkan::{
    cyclic_equation_check, dwyer_kan_nerve, extend, gen_random_duchain, normalized_duchains, transfer_check,
    GenParams,
};
use dukan_core::index_cat::{compose, factorize, random_xi_map, two_morphism_leq, XiMap};
use dukan_core::linalg::{self, IntMatrix};
use dukan_core::objects::{alternating_differential, evaluate, validate, GeneratorMatrices};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |v| IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

fn params(trunc: usize, max_rank: usize) -> GenParams {
    GenParams {
        trunc,
        max_rank,
        entry_bound: 2,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_matches_determinantal_divisors(a in matrix(4, 4, 5)) {
        let s = linalg::snf(&a);
        prop_assert_eq!(&(&s.u * &a) * &s.v, s.s.clone());
        prop_assert_eq!(s.invariant_factors, common::invariant_factors(&a));
    }

    #[test]
    fn hnf_is_canonical(a in matrix(3, 4, 4), seed in any::<u64>()) {
        // the same lattice with shuffled, recombined generators has the same HNF
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = a.cols();
        let mut p = IntMatrix::identity(c);
        for _ in 0..6 {
            let (i, j) = (rng.gen_range(0..c), rng.gen_range(0..c));
            if i != j {
                let k = BigInt::from(rng.gen_range(-2..=2));
                for r in 0..c {
                    let v = p.get(r, i) + &k * p.get(r, j);
                    p.set(r, i, v);
                }
            }
        }
        prop_assert_eq!(linalg::hnf(&(&a * &p)), linalg::hnf(&a));
    }

    #[test]
    fn solve_recovers_images(a in matrix(3, 3, 4), x in prop::collection::vec(-5i64..=5, 3)) {
        let x = IntMatrix::from_vec(a.cols(), 1, x[..a.cols()].iter().map(|&v| BigInt::from(v)).collect()).unwrap();
        let b = &a * &x;
        let y = linalg::solve(&a, b.entries()).unwrap();
        prop_assert_eq!(&a * &IntMatrix::from_vec(a.cols(), 1, y).unwrap(), b);
    }

    #[test]
    fn factorize_roundtrips(seed in any::<u64>(), m in 0usize..=6, n in 0usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_xi_map(&mut rng, m, n, 4);
        prop_assert_eq!(factorize(&f).unwrap().compose().unwrap(), f);
    }

    #[test]
    fn composition_is_associative_and_monotone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c, d) = (rng.gen_range(0..4), rng.gen_range(0..4), rng.gen_range(0..4), rng.gen_range(0..4));
        let f = random_xi_map(&mut rng, a, b, 2);
        let g = random_xi_map(&mut rng, b, c, 2);
        let h = random_xi_map(&mut rng, c, d, 2);
        let left = compose(&h, &compose(&g, &f).unwrap()).unwrap();
        let right = compose(&compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(&left, &right);
        // f ≤ t∘f pointwise for the shift t = +1
        let tf = compose(&XiMap::shift(b, 1), &f).unwrap();
        prop_assert!(two_morphism_leq(&f, &tf).unwrap());
    }

    #[test]
    fn transfer_equivalences(f in matrix(3, 3, 2), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_matrix(&mut rng, f.cols(), f.rows(), 2);
        prop_assert!(transfer_check(&f, &g).unwrap().holds());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn generated_duchains_square_to_zero(seed in any::<u64>(), trunc in 1usize..=5, rank in 0usize..=3) {
        let b = gen_random_duchain(seed, params(trunc, rank));
        for n in 1..trunc {
            prop_assert!((b.d(n) * b.d(n + 1)).is_zero());
            prop_assert!((b.delta(n) * b.delta(n - 1)).is_zero());
        }
    }

    #[test]
    fn extension_tables_satisfy_both_equation_families(seed in any::<u64>(), n in 0usize..=2, extra in 0usize..=3) {
        let b = gen_random_duchain(seed, params(4, 2));
        let t = extend(&b, n, n + extra).unwrap();
        let r = t.check(&b);
        prop_assert!(r.is_ok(), "{}", r.failures[0]);
    }

    #[test]
    fn nerve_functoriality(seed in any::<u64>(), pairs in 1usize..=8) {
        let b = gen_random_duchain(seed, params(3, 2));
        let x = dwyer_kan_nerve(&b, 2).unwrap().into_object();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for _ in 0..pairs {
            // maps with f(0) > 0 pass through t_n, which needs degree n + 1
            let (a, m, c) = (rng.gen_range(0..=1), rng.gen_range(0..=1), rng.gen_range(0..=1));
            let f = random_xi_map(&mut rng, a, m, 2);
            let g = random_xi_map(&mut rng, m, c, 2);
            let gf = compose(&g, &f).unwrap();
            prop_assert_eq!(evaluate(&x, &gf).unwrap(), &evaluate(&x, &f).unwrap() * &evaluate(&x, &g).unwrap());
        }
        for n in 1..2 {
            let d = alternating_differential(&x, n).unwrap();
            prop_assert!((&d * &alternating_differential(&x, n + 1).unwrap()).is_zero());
        }
    }
}

#[test]
fn negated_face_is_caught() {
    let b = gen_random_duchain(3, params(3, 2));
    let x = dwyer_kan_nerve(&b, 2).unwrap().into_object();
    let d = x.face(2, 1).unwrap().clone();
    assert!(!d.is_zero());
    let bad = x.with_face(2, 1, -&d).unwrap();
    assert!(!validate(&bad).is_ok());
}

#[test]
fn corrupted_extra_degeneracy_breaks_validation_or_the_cyclic_equation() {
    let mut caught = 0;
    for seed in 0..10 {
        let b = gen_random_duchain(seed, params(3, 2));
        let x = dwyer_kan_nerve(&b, 2).unwrap().into_object();
        let s = x.extra_degeneracies()[0].clone();
        if s.is_zero() {
            continue;
        }
        let mut bumped = s.clone();
        let v = bumped.get(0, 0) + BigInt::from(1);
        bumped.set(0, 0, v);
        let bad = x.clone().with_extra_degeneracy(0, bumped).unwrap();
        let rejected = !validate(&bad).is_ok()
            || normalized_duchains(&bad).is_err()
            || (0..2).any(|n| cyclic_equation_check(&bad, n).map_or(true, |e| !e.holds()));
        assert!(rejected, "seed {seed}: corruption went unnoticed");
        caught += 1;
    }
    assert!(caught > 0);
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut p = IntMatrix::identity(n);
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let k = BigInt::from(rng.gen_range(-1..=1));
        for c in 0..n {
            let v = p.get(i, c) + &k * p.get(j, c);
            p.set(i, c, v);
        }
    }
    p
}

/// If `C(f)_m` is invertible for every `m ≤ n`, so is `f_n`. Checked on nerve
/// maps of chain isomorphisms and of non-invertible chain maps.
#[test]
fn normalized_chains_reflect_isomorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for seed in 0..8u64 {
        let b = gen_random_duchain(seed, params(3, 3)).chain().clone();
        let trunc = b.trunc();
        // conjugate by unimodular P: d' = P_{n−1} d P_n^{-1}, φ = P
        let p: Vec<IntMatrix> = (0..=trunc).map(|n| random_unimodular(&mut rng, b.rank(n))).collect();
        let p_inv: Vec<IntMatrix> = p
            .iter()
            .map(|m| linalg::solve_matrix(m, &IntMatrix::identity(m.rows())).unwrap())
            .collect();
        let d2: Vec<IntMatrix> = (0..=trunc)
            .map(|n| if n == 0 { b.d(0).clone() } else { &(&p[n - 1] * b.d(n)) * &p_inv[n] })
            .collect();
        let b2 = ChainComplex::new(trunc, b.ranks().to_vec(), d2).unwrap();
        let (src, tgt) = (dold_kan_nerve(&b, trunc).unwrap(), dold_kan_nerve(&b2, trunc).unwrap());
        let doubled: Vec<IntMatrix> = (0..=trunc).map(|n| IntMatrix::scalar(b.rank(n), 2.into())).collect();
        let same = dold_kan_nerve(&b, trunc).unwrap();
        for (phi, target) in [(&p, &tgt), (&doubled, &same)] {
            let f = nerve_map(phi, &src, target).unwrap();
            assert!(f.check(src.object(), target.object()).unwrap().is_ok());
            let cf = induced_on_normalized(&f, src.object(), target.object()).unwrap();
            let mut all_below = true;
            for n in 0..=trunc {
                all_below &= common::is_unimodular(&cf[n]);
                if all_below {
                    assert!(common::is_unimodular(&f.components[n]), "seed {seed}: degree {n}");
                }
            }
        }
        assert!(nerve_map(&p, &src, &tgt).unwrap().is_levelwise_unimodular());
        let f2 = nerve_map(&doubled, &src, &same).unwrap();
        assert!(b.rank(0) == 0 || !f2.is_levelwise_unimodular());
    }
}

#[test]
fn shift_generators_match_formula() {
    let b = gen_random_duchain(21, params(4, 2));
    let x = dwyer_kan_nerve(&b, 3).unwrap().into_object();
    for n in 0..3 {
        let t = evaluate(&x, &XiMap::shift(n, 1)).unwrap();
        assert_eq!(t, x.face(n + 1, 0).unwrap() * x.degeneracy(n, n + 1).unwrap());
        assert_eq!(x.shift(n).unwrap(), t);
    }
}

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use dukan_core::doldkan::{counit, dold_kan_nerve, normalized_chains, unit, ChainComplex};
use dukan_core::dwyerkan::{
    classify, cyclic_equation_check, dwyer_kan_nerve, gen_random_duchain, normalized_duchains, roundtrip,
    transfer_check, DuchainComplex, GenParams,
};
use dukan_core::index_cat::{compose, duplicial_adjunction_chain, factorize, random_xi_map, XiMap};
use dukan_core::linalg::{self, IntMatrix};
use dukan_core::objects::{
    degenerate_subgroup, evaluate, linearized_simplex, normalized_inclusion, pi_matrix, validate, GeneratorMatrices,
    SimplicialGroup,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn duchain(seed: u64, trunc: usize) -> DuchainComplex {
    gen_random_duchain(
        seed,
        GenParams {
            trunc,
            max_rank: 3,
            entry_bound: 2,
        },
    )
}

fn chain(seed: u64, trunc: usize) -> ChainComplex {
    duchain(seed, trunc).chain().clone()
}

/// `B_0 = B_1 = ℤ`, `d = [d1]`, `δ = [delta0]`, zero up to degree `trunc`.
fn one_by_one(d1: i64, delta0: i64, trunc: usize) -> DuchainComplex {
    let mut ranks = vec![0; trunc + 1];
    ranks[0] = 1;
    ranks[1] = 1;
    let mut d = vec![IntMatrix::zeros(0, 1), IntMatrix::from_rows(&[[d1]])];
    for n in 2..=trunc {
        d.push(IntMatrix::zeros(ranks[n - 1], ranks[n]));
    }
    let mut delta = vec![IntMatrix::from_rows(&[[delta0]])];
    for n in 1..trunc {
        delta.push(IntMatrix::zeros(ranks[n + 1], ranks[n]));
    }
    DuchainComplex::new(ChainComplex::new(trunc, ranks, d).unwrap(), delta).unwrap()
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    if t > limit {
        return Err(format!("took {t:.1?}, limit {limit:?}"));
    }
    Ok(())
}

fn dk_counit() -> Check {
    let start = Instant::now();
    for seed in 0..20 {
        let trunc = 1 + (seed as usize % 4);
        let b = chain(seed, trunc);
        let nerve = dold_kan_nerve(&b, trunc).map_err(|e| e.to_string())?;
        let eps = counit(&nerve).map_err(|e| e.to_string())?;
        let c = normalized_chains(nerve.object()).map_err(|e| e.to_string())?.complex;
        for n in 0..=trunc {
            ensure!(common::is_unimodular(&eps[n]), "seed {seed}: counit not invertible in degree {n}");
            if n > 0 {
                ensure!(
                    &eps[n - 1] * c.d(n) == b.d(n) * &eps[n],
                    "seed {seed}: counit does not commute with d in degree {n}"
                );
            }
        }
    }
    within(Duration::from_secs(10), start)?;
    Ok("20 complexes, trunc 1..4".into())
}

fn check_unit(x: &SimplicialGroup, what: &str) -> Result<(), String> {
    let (target, u) = unit(x, x.trunc()).map_err(|e| format!("{what}: {e}"))?;
    let r = u.check(x, target.object()).map_err(|e| e.to_string())?;
    ensure!(r.is_ok(), "{what}: unit is not natural: {}", r.failures[0]);
    for (n, m) in u.components.iter().enumerate() {
        ensure!(common::is_unimodular(m), "{what}: unit not invertible in degree {n}");
    }
    Ok(())
}

fn dk_unit() -> Check {
    let start = Instant::now();
    for n in 0..=3 {
        check_unit(&linearized_simplex(n, 4), &format!("ZΔ^{n}"))?;
    }
    for seed in 0..10 {
        let x = dold_kan_nerve(&chain(100 + seed, 4), 4).map_err(|e| e.to_string())?.into_object();
        check_unit(&x, &format!("N(B_{seed})"))?;
    }
    within(Duration::from_secs(10), start)?;
    Ok("4 simplices + 10 nerves, trunc 4".into())
}

fn rank_formula() -> Check {
    let mut checked = 0;
    for seed in 0..20 {
        let b = chain(seed, 4);
        let x = dold_kan_nerve(&b, 4).map_err(|e| e.to_string())?.into_object();
        for n in 0..=4 {
            let expected: usize = (0..=n).map(|m| common::binomial(n, m) * b.rank(m)).sum();
            ensure!(x.rank(n) == expected, "seed {seed} n {n}: {} vs {expected}", x.rank(n));
            checked += 1;
        }
    }
    Ok(format!("{checked} ranks"))
}

fn dwk_roundtrip() -> Check {
    let start = Instant::now();
    for seed in 0..20 {
        let b = duchain(seed, 5);
        let rt = roundtrip(&b, 4).map_err(|e| format!("seed {seed}: {e}"))?;
        let c = &rt.recovered;
        for deg in &rt.degrees {
            let n = deg.degree;
            let e = &deg.comparison;
            ensure!(common::is_unimodular(e), "seed {seed}: comparison not invertible in degree {n}");
            if n > 0 {
                ensure!(
                    &rt.degrees[n - 1].comparison * c.d(n) == b.d(n) * e,
                    "seed {seed}: d not intertwined in degree {n}"
                );
            }
            if n < 4 {
                ensure!(
                    &rt.degrees[n + 1].comparison * c.delta(n) == b.delta(n) * e,
                    "seed {seed}: δ not intertwined in degree {n}"
                );
            }
        }
        ensure!(rt.passed(), "seed {seed}: library verdict disagrees");
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("20 duchains, trunc 5 → nerve trunc 4, {:.1?}", start.elapsed()))
}

fn nerve_comparison() -> Check {
    for seed in 0..20 {
        let b = duchain(seed, 5);
        let prime = dwyer_kan_nerve(&b, 4).map_err(|e| e.to_string())?;
        let plain = dold_kan_nerve(b.chain(), 4).map_err(|e| e.to_string())?;
        ensure!(prime.object().underlying() == plain.object(), "seed {seed}: underlying objects differ");
        for n in 0..=4 {
            ensure!(
                prime.dold_kan().kernel_basis(n) == plain.kernel_basis(n),
                "seed {seed}: kernel bases differ in degree {n}"
            );
        }
    }
    Ok("20 duchains, degrees ≤ 4".into())
}

fn cyclic_equation() -> Check {
    let mut checked = 0;
    for seed in 0..20 {
        let b = duchain(seed, 5);
        let x = dwyer_kan_nerve(&b, 4).map_err(|e| e.to_string())?.into_object();
        let report = validate(&x);
        ensure!(report.is_ok(), "seed {seed}: nerve invalid: {}", report.failures[0]);
        let duchains = normalized_duchains(&x).map_err(|e| e.to_string())?;
        let c = &duchains.complex;
        for n in 0..=3 {
            // ι·(I − dδ)^{n+1}(I − δd)^n == T^{n+1}·ι, without solving for the restriction
            let id = IntMatrix::identity(c.rank(n));
            let mut lhs = (&id - &(c.d(n + 1) * c.delta(n))).pow(n as u32 + 1).unwrap();
            if n > 0 {
                lhs = &lhs * &(&id - &(c.delta(n - 1) * c.d(n))).pow(n as u32).unwrap();
            }
            let t = evaluate(&x, &XiMap::shift(n, 1)).map_err(|e| e.to_string())?;
            let iota = &duchains.inclusions[n];
            ensure!(
                iota * &lhs == &t.pow(n as u32 + 1).unwrap() * iota,
                "seed {seed}: cyclic equation fails in degree {n}"
            );
            let eq = cyclic_equation_check(&x, n).map_err(|e| e.to_string())?;
            ensure!(eq.holds(), "seed {seed}: library check disagrees in degree {n}");
            checked += 1;
        }
    }
    Ok(format!("{checked} (object, degree) pairs"))
}

fn classification() -> Check {
    let mut cases: Vec<(String, DuchainComplex)> = (0..20).map(|s| (format!("seed {s}"), duchain(200 + s, 5))).collect();
    cases.push(("d=1, δ=2".into(), one_by_one(1, 2, 5)));
    cases.push(("d=1, δ=1".into(), one_by_one(1, 1, 5)));
    cases.push(("δ=0".into(), one_by_one(1, 0, 5)));
    let (mut para, mut nonpara) = (0, 0);
    for (name, b) in &cases {
        let x = dwyer_kan_nerve(b, 4).map_err(|e| e.to_string())?.into_object();
        let mut shifts_invertible = true;
        for n in 0..=3 {
            let t = evaluate(&x, &XiMap::shift(n, 1)).map_err(|e| e.to_string())?;
            shifts_invertible &= common::is_unimodular(&t);
        }
        let mut witnesses_invertible = true;
        for n in 0..=3 {
            let w = &IntMatrix::identity(b.rank(n)) - &(b.d(n + 1) * b.delta(n));
            witnesses_invertible &= common::is_unimodular(&w);
        }
        ensure!(
            shifts_invertible == witnesses_invertible,
            "{name}: shifts invertible = {shifts_invertible}, I − dδ invertible = {witnesses_invertible}"
        );
        let c = classify(b).map_err(|e| e.to_string())?;
        let lib_para = c.degrees[..=3].iter().all(|v| v.paracyclic_ok);
        ensure!(lib_para == witnesses_invertible, "{name}: classify disagrees with the oracle");
        for v in &c.degrees {
            ensure!(!v.cyclic_ok || v.paracyclic_ok, "{name}: cyclic but not paracyclic in degree {}", v.degree);
        }
        if witnesses_invertible {
            para += 1;
        } else {
            nonpara += 1;
        }
    }
    let minus_one = IntMatrix::from_rows(&[[-1]]);
    let c = classify(&one_by_one(1, 2, 5)).unwrap();
    ensure!(c.paracyclic() && !c.cyclic(), "d=1, δ=2 should be paracyclic and not cyclic");
    ensure!(c.degrees[0].cyclic_operator == minus_one, "d=1, δ=2: degree-0 witness is not −1");
    let c = classify(&one_by_one(1, 1, 5)).unwrap();
    ensure!(!c.degrees[0].paracyclic_ok, "d=1, δ=1 should not be paracyclic");
    let c = classify(&one_by_one(1, 0, 5)).unwrap();
    ensure!(c.paracyclic() && c.cyclic(), "δ=0 should be cyclic");
    Ok(format!("{} cases ({para} paracyclic, {nonpara} not)", cases.len()))
}

fn pi_suite_on(x: &SimplicialGroup, what: &str) -> Result<(), String> {
    for n in 0..=x.trunc().min(4) {
        let pi = pi_matrix(x, n).map_err(|e| e.to_string())?;
        let iota = normalized_inclusion(x, n).map_err(|e| e.to_string())?;
        for i in 0..n {
            ensure!((x.face(n, i).unwrap() * &pi).is_zero(), "{what}: d_{i}·π_{n} ≠ 0");
        }
        ensure!(&pi * &iota == iota, "{what}: π_{n} is not the identity on C");
        ensure!(&pi * &pi == pi, "{what}: π_{n} is not idempotent");
        let dsub = degenerate_subgroup(x, n).map_err(|e| e.to_string())?;
        // both are canonical HNF bases, so equal subgroups have equal bases
        let ker = linalg::kernel_basis(&pi);
        ensure!(ker == dsub, "{what}: ker π_{n} ≠ D_{n}");
        ensure!((&pi * dsub.basis()).is_zero(), "{what}: π_{n} does not kill D_{n}");
        ensure!(
            iota.cols() + dsub.rank() == x.rank(n),
            "{what}: rank C_{n} + rank D_{n} ≠ rank X_{n}"
        );
        let joined = IntMatrix::hstack(x.rank(n), &[&iota, dsub.basis()]).unwrap();
        ensure!(common::is_unimodular(&joined), "{what}: [ι | D] is not unimodular in degree {n}");
    }
    Ok(())
}

fn pi_suite() -> Check {
    let mut count = 0;
    for n in 0..=3 {
        pi_suite_on(&linearized_simplex(n, 4), &format!("ZΔ^{n}"))?;
        count += 1;
    }
    for seed in 0..10 {
        let x = dold_kan_nerve(&chain(300 + seed, 4), 4).map_err(|e| e.to_string())?.into_object();
        pi_suite_on(&x, &format!("N(B_{seed})"))?;
        count += 1;
    }
    for seed in 0..5 {
        let x = dwyer_kan_nerve(&duchain(400 + seed, 5), 4).map_err(|e| e.to_string())?.into_object();
        pi_suite_on(x.underlying(), &format!("N′(B_{seed})"))?;
        count += 1;
    }
    Ok(format!("{count} objects, degrees ≤ 4"))
}

fn index_category() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in 0..1000 {
        let (m, n) = (rng.gen_range(0..=6), rng.gen_range(0..=6));
        let f = random_xi_map(&mut rng, m, n, 3);
        let word = factorize(&f).map_err(|e| format!("{f}: {e}"))?;
        // fold the generators by hand rather than through GeneratorWord::compose
        let mut acc = XiMap::identity(m);
        for g in word.tokens() {
            acc = compose(&g.to_map().unwrap(), &acc).map_err(|e| e.to_string())?;
        }
        ensure!(acc == f, "map {k}: {f} refactors to {acc}");
        ensure!(word.compose().unwrap() == f, "map {k}: word composes wrongly");
    }
    for n in 1..=5 {
        for (label, ok) in duplicial_adjunction_chain(n).map_err(|e| e.to_string())? {
            ensure!(ok, "adjunction {label} fails for n = {n}");
        }
    }
    for k in 0..500 {
        let (m, n) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        let f = random_xi_map(&mut rng, m, n, 3);
        let lhs = compose(&f, &XiMap::shift(m, m as i64 + 1)).unwrap();
        let rhs = compose(&XiMap::shift(n, n as i64 + 1), &f).unwrap();
        ensure!(lhs == rhs, "naturality {k}: {f}");
    }
    for n in 1..=5 {
        let a = compose(&XiMap::degeneracy(n, n + 1).unwrap(), &XiMap::face(n + 1, 0).unwrap()).unwrap();
        let b = compose(&XiMap::face(n, 0).unwrap(), &XiMap::degeneracy(n - 1, n).unwrap()).unwrap();
        ensure!(a != b, "σ_{{n+1}}∂_0 = ∂_0σ_n for n = {n}");
    }
    within(Duration::from_secs(5), start)?;
    Ok("1000 factorizations, 500 naturality squares, n ≤ 5".into())
}

fn transfer() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut inj, mut surj) = (0, 0);
    for k in 0..500 {
        let (a, b) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let f = common::random_matrix(&mut rng, b, a, 2);
        let g = common::random_matrix(&mut rng, a, b, 2);
        let r = transfer_check(&f, &g).map_err(|e| e.to_string())?;
        ensure!(r.holds(), "pair {k}: {r:?}");
        let gf = &IntMatrix::identity(a) - &(&g * &f);
        let d = common::det(&gf);
        ensure!(r.injective_gf == (d != 0.into()), "pair {k}: injectivity verdict disagrees with det");
        ensure!(
            r.surjective_gf == (d == 1.into() || d == (-1).into()),
            "pair {k}: surjectivity verdict disagrees with det"
        );
        inj += usize::from(r.injective_gf);
        surj += usize::from(r.surjective_gf);
    }
    within(Duration::from_secs(5), start)?;
    Ok(format!("500 pairs ({inj} injective, {surj} surjective)"))
}

fn linalg_oracles() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for seed in 0..200 {
        let (r, c) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let a = common::random_matrix(&mut rng, r, c, 3);
        let s = linalg::snf(&a);
        ensure!(s.invariant_factors == common::invariant_factors(&a), "seed {seed}: invariant factors of {a}");
        ensure!(&(&s.u * &a) * &s.v == s.s, "seed {seed}: U·A·V ≠ S");
        ensure!(common::is_unimodular(&s.u) && common::is_unimodular(&s.v), "seed {seed}: U or V not unimodular");

        let h = linalg::hnf(&a);
        ensure!(common::same_span(&h, &a), "seed {seed}: HNF changes the lattice of {a}");
        ensure!(linalg::rank(&a) == common::rank(&a), "seed {seed}: rank");

        let k = linalg::kernel_basis(&a);
        let kb = k.basis();
        ensure!((&a * kb).is_zero(), "seed {seed}: kernel basis not in the kernel");
        ensure!(kb.cols() == c - common::rank(&a), "seed {seed}: kernel rank");
        for v in common::box_vectors(c, 2) {
            if (&a * &v).is_zero() {
                ensure!(common::in_span(kb, &v), "seed {seed}: kernel misses {v}");
            }
        }

        ensure!(
            linalg::cokernel_factors(&a) == common::cokernel_factors(&a),
            "seed {seed}: cokernel of {a}"
        );
        let sub = linalg::Subgroup::span(&a);
        ensure!(
            linalg::quotient_presentation(r, &sub).unwrap() == common::cokernel_factors(&a),
            "seed {seed}: quotient presentation"
        );
        for v in common::box_vectors(r, 2) {
            let solvable = common::in_span(&a, &v);
            match linalg::solve(&a, v.entries()) {
                Ok(x) => {
                    let x = IntMatrix::from_vec(c, 1, x).unwrap();
                    ensure!(&a * &x == v, "seed {seed}: solve returned a wrong solution");
                }
                Err(_) => ensure!(!solvable, "seed {seed}: solve missed a solution for {v}"),
            }
        }
    }
    within(Duration::from_secs(10), start)?;
    Ok("200 matrices up to 3×3, entries in [−3, 3]".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("Dold-Kan counit", dk_counit),
        ("Dold-Kan unit", dk_unit),
        ("nerve rank formula", rank_formula),
        ("Dwyer-Kan roundtrip", dwk_roundtrip),
        ("nerve comparison", nerve_comparison),
        ("cyclic equation", cyclic_equation),
        ("classification concordance", classification),
        ("projection π_n", pi_suite),
        ("index categories", index_category),
        ("I − gf versus I − fg", transfer),
        ("linear algebra oracles", linalg_oracles),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

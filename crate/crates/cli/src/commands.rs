use dukan_core::doldkan::{counit, dold_kan_nerve, nerve_rank_formula, normalized_chains, unit};
use dukan_core::dwyerkan::{
    classify, dwyer_kan_nerve, gen_random_duchain, normalized_duchains, roundtrip_against, shift_on_normalized,
    Classification, DuchainComplex, GenParams,
};
use dukan_core::json::Object;
use dukan_core::linalg::{is_unimodular, IntMatrix};
use dukan_core::objects::{validate, GeneratorMatrices, SimplicialGroup};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::report::{failure, failures, ints, mat, CliError, Report};

type Outcome = Result<(), CliError>;

fn wrong_kind(cmd: &str, o: &Object, wanted: &str) -> CliError {
    CliError::Input(format!("{cmd} expects {wanted} input, got {}", o.kind()))
}

/// Runs `validate` and records its failures; returns whether it passed.
fn validated<X: GeneratorMatrices>(r: &mut Report, x: &X) -> bool {
    let v = validate(x);
    r.note("identities_checked", v.checked);
    r.failures.extend(failures(&v.failures));
    v.is_ok()
}

fn homology_entry(n: usize, factors: &[BigInt]) -> Value {
    let free = factors.iter().filter(|x| x.is_zero()).count();
    let torsion: Vec<BigInt> = factors.iter().filter(|x| !x.is_zero()).cloned().collect();
    json!({ "degree": n, "invariant_factors": ints(factors), "free_rank": free, "torsion": ints(&torsion) })
}

pub fn chains(r: &mut Report, input: Object) -> Outcome {
    let (complex, out) = match &input {
        Object::Simplicial(x) => {
            if !validated(r, x) {
                return Ok(());
            }
            let c = normalized_chains(x)?.complex;
            (c.clone(), Object::Chain(c))
        }
        Object::Duplicial(x) => {
            if !validated(r, x) {
                return Ok(());
            }
            let c = normalized_duchains(x)?.complex;
            (c.chain().clone(), Object::Duchain(c))
        }
        other => return Err(wrong_kind("chains", other, "simplicial or duplicial")),
    };
    let homology = complex.homology()?;
    for n in 0..=complex.trunc() {
        let mut entry = json!({ "degree": n, "rank": complex.rank(n) });
        if let Some(h) = homology.get(n) {
            entry["homology"] = homology_entry(n, h);
        }
        r.degrees.push(entry);
    }
    r.object = Some(out.to_value());
    Ok(())
}

pub fn homology(r: &mut Report, input: Object) -> Outcome {
    let complex = match &input {
        Object::Chain(b) => b.clone(),
        Object::Duchain(b) => b.chain().clone(),
        Object::Simplicial(x) => {
            if !validated(r, x) {
                return Ok(());
            }
            normalized_chains(x)?.complex
        }
        Object::Duplicial(x) => {
            if !validated(r, x) {
                return Ok(());
            }
            normalized_chains(x)?.complex
        }
    };
    r.note("ranks", complex.ranks().to_vec());
    for (n, h) in complex.homology()?.iter().enumerate() {
        r.degrees.push(homology_entry(n, h));
    }
    Ok(())
}

fn rank_rows<X: GeneratorMatrices>(r: &mut Report, x: &X, base_ranks: &[usize]) {
    for n in 0..=x.trunc() {
        let formula = nerve_rank_formula(base_ranks, n);
        let rank = x.rank(n);
        r.degrees.push(json!({ "degree": n, "rank": rank, "rank_formula": formula }));
        if rank != formula {
            r.failures.push(json!({
                "identity": format!("rank N_{n} = Σ C({n},m)·r_m"),
                "lhs": rank.to_string(),
                "rhs": formula.to_string(),
            }));
        }
    }
}

pub fn nerve(r: &mut Report, input: Object, trunc: usize) -> Outcome {
    r.note("trunc", trunc);
    match &input {
        Object::Chain(b) => {
            let x = dold_kan_nerve(b, trunc)?.into_object();
            validated(r, &x);
            rank_rows(r, &x, b.ranks());
            r.object = Some(Object::Simplicial(x).to_value());
        }
        Object::Duchain(b) => {
            let x = dwyer_kan_nerve(b, trunc)?.into_object();
            validated(r, &x);
            rank_rows(r, &x, b.ranks());
            for n in 0..trunc {
                let s = shift_on_normalized(&x, n)?;
                r.degrees[n]["shift_power_on_c"] = mat(&s);
                r.degrees[n]["shift_power_on_c_is_identity"] = s.is_identity().into();
            }
            r.object = Some(Object::Duplicial(x).to_value());
        }
        other => return Err(wrong_kind("nerve", other, "chain or duchain")),
    }
    Ok(())
}

fn verdict_rows(r: &mut Report, c: &Classification) {
    r.note("within_truncation", c.trunc);
    r.note("paracyclic", c.paracyclic());
    r.note("cyclic", c.cyclic());
    for v in &c.degrees {
        r.degrees.push(json!({
            "degree": v.degree,
            "duplicial": v.duplicial_ok,
            "paracyclic": v.paracyclic_ok,
            "cyclic": v.cyclic_ok,
            "id_minus_d_delta": mat(&v.id_minus_d_delta),
            "id_minus_delta_d": v.id_minus_delta_d.as_ref().map(mat),
            "cyclic_operator": mat(&v.cyclic_operator),
        }));
    }
}

pub fn classify_cmd(r: &mut Report, input: Object) -> Outcome {
    match &input {
        Object::Duchain(b) => verdict_rows(r, &classify(b)?),
        Object::Duplicial(x) => {
            if !validated(r, x) {
                return Ok(());
            }
            let duchains = normalized_duchains(x)?;
            let c = classify(&duchains.complex)?;
            verdict_rows(r, &c);
            let mut shifts_unimodular = true;
            for n in 0..x.trunc() {
                let t = x.shift(n)?;
                let unimodular = is_unimodular(&t);
                shifts_unimodular &= unimodular;
                let rhs = shift_on_normalized(x, n)?;
                let lhs = &c.degrees[n].cyclic_operator;
                let row = &mut r.degrees[n];
                row["shift_unimodular"] = unimodular.into();
                row["shift_power_on_c"] = mat(&rhs);
                row["cyclic_equation"] = (lhs == &rhs).into();
                if lhs != &rhs {
                    r.failures.push(failure(
                        format!("(I − dδ)^{}(I − δd)^{n} = T_{n}^{} on C_{n}", n + 1, n + 1),
                        lhs,
                        &rhs,
                    ));
                }
            }
            r.note("shifts_unimodular", shifts_unimodular);
            r.note("concordant", shifts_unimodular == c.paracyclic());
        }
        other => return Err(wrong_kind("classify", other, "duchain or duplicial")),
    }
    Ok(())
}

fn unit_rows(r: &mut Report, x: &SimplicialGroup) -> Outcome {
    let (target, u) = unit(x, x.trunc())?;
    let check = u.check(x, target.object())?;
    r.failures.extend(failures(&check.failures));
    for (n, m) in u.components.iter().enumerate() {
        let ok = is_unimodular(m);
        r.degrees.push(json!({ "degree": n, "unit_unimodular": ok }));
        if !ok {
            r.failures.push(failure(format!("unit X_{n} → N(C(X))_{n} is invertible"), m, &IntMatrix::identity(m.rows())));
        }
    }
    Ok(())
}

pub fn verify(r: &mut Report, input: Object) -> Outcome {
    match &input {
        Object::Simplicial(x) => {
            if validated(r, x) {
                unit_rows(r, x)?;
            }
        }
        Object::Duplicial(x) => {
            if validated(r, x) {
                unit_rows(r, x.underlying())?;
                let duchains = normalized_duchains(x)?;
                let c = classify(&duchains.complex)?;
                for n in 0..x.trunc() {
                    let lhs = &c.degrees[n].cyclic_operator;
                    let rhs = shift_on_normalized(x, n)?;
                    r.degrees[n]["cyclic_equation"] = (lhs == &rhs).into();
                    if lhs != &rhs {
                        r.failures.push(failure(format!("cyclic equation in degree {n}"), lhs, &rhs));
                    }
                }
            }
        }
        Object::Chain(b) => {
            let nerve = dold_kan_nerve(b, b.trunc())?;
            let eps = counit(&nerve)?;
            let c = normalized_chains(nerve.object())?.complex;
            for (n, e) in eps.iter().enumerate() {
                let unimodular = is_unimodular(e);
                let mut row = json!({ "degree": n, "counit": mat(e), "counit_unimodular": unimodular });
                if n > 0 {
                    let lhs = &eps[n - 1] * c.d(n);
                    let rhs = b.d(n) * e;
                    row["d_intertwined"] = (lhs == rhs).into();
                    if lhs != rhs {
                        r.failures.push(failure(format!("ε·d = d·ε in degree {n}"), &lhs, &rhs));
                    }
                }
                if !unimodular {
                    r.failures.push(failure(format!("counit in degree {n} is invertible"), e, &IntMatrix::identity(e.rows())));
                }
                r.degrees.push(row);
            }
        }
        Object::Duchain(b) => {
            if b.trunc() == 0 {
                r.note("note", "nothing to compare below truncation 1");
            } else {
                roundtrip_rows(r, b, b, b.trunc() - 1)?;
            }
        }
    }
    Ok(())
}

fn roundtrip_rows(r: &mut Report, b: &DuchainComplex, reference: &DuchainComplex, trunc: usize) -> Outcome {
    let rt = roundtrip_against(b, reference, trunc)?;
    let c = &rt.recovered;
    for deg in &rt.degrees {
        let n = deg.degree;
        let eps = &rt.degrees;
        let pass = |ok: bool| if ok { "PASS" } else { "FAIL" };
        r.degrees.push(json!({
            "degree": n,
            "comparison": mat(&deg.comparison),
            "unimodular": deg.unimodular,
            "d": pass(deg.d_intertwined),
            "delta": pass(deg.delta_intertwined),
        }));
        if !deg.unimodular {
            r.failures.push(failure(
                format!("comparison in degree {n} is invertible"),
                &deg.comparison,
                &IntMatrix::identity(deg.comparison.rows()),
            ));
        }
        if !deg.d_intertwined {
            let lhs = &eps[n - 1].comparison * c.d(n);
            let rhs = reference.d(n) * &deg.comparison;
            r.failures.push(failure(format!("ε·d = d·ε in degree {n}"), &lhs, &rhs));
        }
        if !deg.delta_intertwined {
            let lhs = &eps[n + 1].comparison * c.delta(n);
            let rhs = reference.delta(n) * &deg.comparison;
            r.failures.push(failure(format!("ε·δ = δ·ε in degree {n}"), &lhs, &rhs));
        }
    }
    r.note("first_failure", rt.first_failure());
    Ok(())
}

/// `flip_delta` negates `δ[n]` in the reference complex only, so the
/// comparison must fail in degree `n` unless that `δ` vanishes.
pub fn roundtrip(r: &mut Report, b: &DuchainComplex, trunc: usize, flip_delta: Option<usize>) -> Outcome {
    r.note("trunc", trunc);
    let reference = match flip_delta {
        Some(n) if n < b.trunc() => b.with_delta(n, -b.delta(n))?,
        Some(n) => return Err(CliError::Input(format!("no δ[{n}] to corrupt"))),
        None => b.clone(),
    };
    roundtrip_rows(r, b, &reference, trunc)
}

pub fn roundtrip_input(input: Object) -> Result<DuchainComplex, CliError> {
    match input {
        Object::Duchain(b) => Ok(b),
        other => Err(wrong_kind("roundtrip", &other, "duchain")),
    }
}

pub fn generate(seed: u64, params: GenParams) -> Object {
    Object::Duchain(gen_random_duchain(seed, params))
}

/// Used by text output of `gen`.
pub fn describe_duchain(b: &DuchainComplex) -> String {
    let mut out = format!("duchain, trunc {}, ranks {:?}\n", b.trunc(), b.ranks());
    for n in 1..=b.trunc() {
        out.push_str(&format!("d[{n}] = {}\n", b.d(n)));
    }
    for n in 0..b.trunc() {
        out.push_str(&format!("delta[{n}] = {}\n", b.delta(n)));
    }
    out
}

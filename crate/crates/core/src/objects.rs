//! Truncated simplicial and duplicial abelian groups as generator matrices.
//!
//! A functor `X : Ξ^op → Ab` sends `h : ⟨a⟩ → ⟨b⟩` to a matrix
//! `X(h) : X_b → X_a` of shape `r_a × r_b`. Face `d_i = X(∂_i)` and
//! degeneracy `s_i = X(σ_i)` carry the same indices as the generators in
//! [`crate::index_cat`], so `face(n, i) : X_n → X_{n−1}` and
//! `degeneracy(n, i) : X_n → X_{n+1}`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::index_cat::{self, compose, cube_f, factorize, Generator, GeneratorWord, XiMap};
use crate::linalg::{kernel_basis, IntMatrix, Subgroup};

/// Seed of the randomized functoriality probes in [`validate`].
pub const VALIDATION_SEED: u64 = 0x5eed_d01d;
/// Number of randomized functoriality probes in [`validate`].
pub const VALIDATION_PROBES: usize = 50;

/// Read access to the generator matrices of a truncated (du)plicial group.
pub trait GeneratorMatrices {
    fn trunc(&self) -> usize;
    fn rank(&self, n: usize) -> usize;
    /// `d_i : X_n → X_{n−1}`.
    fn face(&self, n: usize, i: usize) -> Result<&IntMatrix>;
    /// `s_i : X_n → X_{n+1}`, including `i = n + 1` for duplicial objects.
    fn degeneracy(&self, n: usize, i: usize) -> Result<&IntMatrix>;
    fn is_duplicial(&self) -> bool;
}

/// A simplicial abelian group with free levels `ℤ^{r_0}, …, ℤ^{r_N}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialGroup {
    trunc: usize,
    ranks: Vec<usize>,
    /// `faces[n][i]` for `1 ≤ n ≤ trunc`; `faces[0]` is empty.
    faces: Vec<Vec<IntMatrix>>,
    /// `degeneracies[n][i]` for `0 ≤ n < trunc`, `0 ≤ i ≤ n`.
    degeneracies: Vec<Vec<IntMatrix>>,
}

/// A duplicial abelian group: a simplicial one plus the extra degeneracies
/// `s_{n+1} : X_n → X_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DuplicialGroup {
    simplicial: SimplicialGroup,
    extra: Vec<IntMatrix>,
}

impl SimplicialGroup {
    pub fn new(
        trunc: usize,
        ranks: Vec<usize>,
        faces: Vec<Vec<IntMatrix>>,
        degeneracies: Vec<Vec<IntMatrix>>,
    ) -> Result<Self> {
        if ranks.len() != trunc + 1 {
            return Err(Error::InvalidObject(format!(
                "{} ranks for truncation {trunc}",
                ranks.len()
            )));
        }
        if faces.len() != trunc + 1 || !faces[0].is_empty() {
            return Err(Error::InvalidObject(
                "faces must be indexed by degree 0..=trunc with no faces in degree 0".into(),
            ));
        }
        if degeneracies.len() != trunc {
            return Err(Error::InvalidObject(format!(
                "{} degeneracy levels for truncation {trunc}",
                degeneracies.len()
            )));
        }
        for n in 1..=trunc {
            if faces[n].len() != n + 1 {
                return Err(Error::InvalidObject(format!("degree {n} needs {} faces", n + 1)));
            }
            for (i, d) in faces[n].iter().enumerate() {
                if d.shape() != (ranks[n - 1], ranks[n]) {
                    return Err(Error::InvalidObject(format!(
                        "face d_{i} in degree {n} has shape {:?}, expected {:?}",
                        d.shape(),
                        (ranks[n - 1], ranks[n])
                    )));
                }
            }
        }
        for n in 0..trunc {
            if degeneracies[n].len() != n + 1 {
                return Err(Error::InvalidObject(format!(
                    "degree {n} needs {} ordinary degeneracies",
                    n + 1
                )));
            }
            for (i, s) in degeneracies[n].iter().enumerate() {
                check_degeneracy_shape(&ranks, n, i, s)?;
            }
        }
        Ok(SimplicialGroup {
            trunc,
            ranks,
            faces,
            degeneracies,
        })
    }

    /// The object with every level zero.
    pub fn zero(trunc: usize) -> Self {
        let ranks = vec![0; trunc + 1];
        let faces = (0..=trunc)
            .map(|n| if n == 0 { vec![] } else { vec![IntMatrix::zeros(0, 0); n + 1] })
            .collect();
        let degeneracies = (0..trunc).map(|n| vec![IntMatrix::zeros(0, 0); n + 1]).collect();
        SimplicialGroup {
            trunc,
            ranks,
            faces,
            degeneracies,
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn faces(&self) -> &[Vec<IntMatrix>] {
        &self.faces
    }

    pub fn degeneracies(&self) -> &[Vec<IntMatrix>] {
        &self.degeneracies
    }

    /// Replaces one generator matrix; used to build corrupted fixtures.
    pub fn with_face(mut self, n: usize, i: usize, m: IntMatrix) -> Result<Self> {
        let slot = self
            .faces
            .get_mut(n)
            .and_then(|f| f.get_mut(i))
            .ok_or_else(|| Error::IndexOutOfRange(format!("face d_{i} in degree {n}")))?;
        if slot.shape() != m.shape() {
            return Err(Error::Shape(format!("replacement face has shape {:?}", m.shape())));
        }
        *slot = m;
        Ok(self)
    }

    pub fn with_degeneracy(mut self, n: usize, i: usize, m: IntMatrix) -> Result<Self> {
        let slot = self
            .degeneracies
            .get_mut(n)
            .and_then(|f| f.get_mut(i))
            .ok_or_else(|| Error::IndexOutOfRange(format!("degeneracy s_{i} in degree {n}")))?;
        if slot.shape() != m.shape() {
            return Err(Error::Shape(format!("replacement degeneracy has shape {:?}", m.shape())));
        }
        *slot = m;
        Ok(self)
    }

    /// Restriction to degrees `0..=trunc`.
    pub fn truncate(&self, trunc: usize) -> Result<Self> {
        if trunc > self.trunc {
            return Err(Error::OutOfTruncation {
                degree: trunc,
                trunc: self.trunc,
            });
        }
        Ok(SimplicialGroup {
            trunc,
            ranks: self.ranks[..=trunc].to_vec(),
            faces: self.faces[..=trunc].to_vec(),
            degeneracies: self.degeneracies[..trunc].to_vec(),
        })
    }
}

fn check_degeneracy_shape(ranks: &[usize], n: usize, i: usize, s: &IntMatrix) -> Result<()> {
    if s.shape() != (ranks[n + 1], ranks[n]) {
        return Err(Error::InvalidObject(format!(
            "degeneracy s_{i} in degree {n} has shape {:?}, expected {:?}",
            s.shape(),
            (ranks[n + 1], ranks[n])
        )));
    }
    Ok(())
}

impl DuplicialGroup {
    /// `extra[n]` is `s_{n+1} : X_n → X_{n+1}` for `0 ≤ n < trunc`.
    pub fn new(simplicial: SimplicialGroup, extra: Vec<IntMatrix>) -> Result<Self> {
        if extra.len() != simplicial.trunc {
            return Err(Error::InvalidObject(format!(
                "{} extra degeneracies for truncation {}",
                extra.len(),
                simplicial.trunc
            )));
        }
        for (n, s) in extra.iter().enumerate() {
            check_degeneracy_shape(&simplicial.ranks, n, n + 1, s)?;
        }
        Ok(DuplicialGroup { simplicial, extra })
    }

    pub fn zero(trunc: usize) -> Self {
        DuplicialGroup {
            simplicial: SimplicialGroup::zero(trunc),
            extra: vec![IntMatrix::zeros(0, 0); trunc],
        }
    }

    pub fn underlying(&self) -> &SimplicialGroup {
        &self.simplicial
    }

    pub fn ranks(&self) -> &[usize] {
        &self.simplicial.ranks
    }

    pub fn extra_degeneracies(&self) -> &[IntMatrix] {
        &self.extra
    }

    pub fn with_extra_degeneracy(mut self, n: usize, m: IntMatrix) -> Result<Self> {
        let slot = self
            .extra
            .get_mut(n)
            .ok_or_else(|| Error::IndexOutOfRange(format!("extra degeneracy in degree {n}")))?;
        if slot.shape() != m.shape() {
            return Err(Error::Shape(format!("replacement degeneracy has shape {:?}", m.shape())));
        }
        *slot = m;
        Ok(self)
    }

    pub fn with_face(self, n: usize, i: usize, m: IntMatrix) -> Result<Self> {
        Ok(DuplicialGroup {
            simplicial: self.simplicial.with_face(n, i, m)?,
            extra: self.extra,
        })
    }

    /// The shift `T_n = d_0 ∘ s_{n+1} : X_n → X_n`; needs `n < trunc`.
    pub fn shift(&self, n: usize) -> Result<IntMatrix> {
        Ok(self.face(n + 1, 0)? * self.degeneracy(n, n + 1)?)
    }
}

impl GeneratorMatrices for SimplicialGroup {
    fn trunc(&self) -> usize {
        self.trunc
    }

    fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    fn face(&self, n: usize, i: usize) -> Result<&IntMatrix> {
        if n > self.trunc {
            return Err(Error::OutOfTruncation {
                degree: n,
                trunc: self.trunc,
            });
        }
        if n == 0 || i > n {
            return Err(Error::IndexOutOfRange(format!("face d_{i} in degree {n}")));
        }
        Ok(&self.faces[n][i])
    }

    fn degeneracy(&self, n: usize, i: usize) -> Result<&IntMatrix> {
        if n + 1 > self.trunc {
            return Err(Error::OutOfTruncation {
                degree: n + 1,
                trunc: self.trunc,
            });
        }
        if i == n + 1 {
            return Err(Error::NotDuplicial(format!("extra degeneracy s_{i} in degree {n}")));
        }
        if i > n {
            return Err(Error::IndexOutOfRange(format!("degeneracy s_{i} in degree {n}")));
        }
        Ok(&self.degeneracies[n][i])
    }

    fn is_duplicial(&self) -> bool {
        false
    }
}

impl GeneratorMatrices for DuplicialGroup {
    fn trunc(&self) -> usize {
        self.simplicial.trunc
    }

    fn rank(&self, n: usize) -> usize {
        self.simplicial.ranks[n]
    }

    fn face(&self, n: usize, i: usize) -> Result<&IntMatrix> {
        self.simplicial.face(n, i)
    }

    fn degeneracy(&self, n: usize, i: usize) -> Result<&IntMatrix> {
        if i == n + 1 {
            if n + 1 > self.trunc() {
                return Err(Error::OutOfTruncation {
                    degree: n + 1,
                    trunc: self.trunc(),
                });
            }
            return Ok(&self.extra[n]);
        }
        self.simplicial.degeneracy(n, i)
    }

    fn is_duplicial(&self) -> bool {
        true
    }
}

fn generator_matrix<X: GeneratorMatrices + ?Sized>(x: &X, g: &Generator) -> Result<IntMatrix> {
    match *g {
        Generator::Face { n, i } => Ok(x.face(n, i)?.clone()),
        Generator::Degeneracy { n, i } => Ok(x.degeneracy(n, i)?.clone()),
        Generator::Shift { n, k } => {
            if k < 0 {
                return Err(Error::InvalidMap(format!("negative shift power t_{n}^{k}")));
            }
            let t = x.face(n + 1, 0)? * x.degeneracy(n, n + 1)?;
            t.pow(k as u32)
        }
    }
}

/// `X(w)` for a generator word `[g_1, …, g_k]`: the product `X(g_1)···X(g_k)`.
pub fn evaluate_word<X: GeneratorMatrices + ?Sized>(x: &X, w: &GeneratorWord) -> Result<IntMatrix> {
    check_degree(x, w.src())?;
    let mut acc = IntMatrix::identity(x.rank(w.src()));
    for g in w.tokens() {
        acc = acc.checked_mul(&generator_matrix(x, g)?)?;
    }
    Ok(acc)
}

fn check_degree<X: GeneratorMatrices + ?Sized>(x: &X, n: usize) -> Result<()> {
    if n > x.trunc() {
        return Err(Error::OutOfTruncation {
            degree: n,
            trunc: x.trunc(),
        });
    }
    Ok(())
}

/// The matrix of `X(h) : X_{tgt} → X_{src}`, through the canonical
/// factorization of `h`.
pub fn evaluate<X: GeneratorMatrices + ?Sized>(x: &X, h: &XiMap) -> Result<IntMatrix> {
    check_degree(x, h.src())?;
    check_degree(x, h.tgt())?;
    evaluate_word(x, &factorize(h)?)
}

/// One violated identity, with both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub identity: String,
    pub lhs: IntMatrix,
    pub rhs: IntMatrix,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ≠ {}", self.identity, self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub(crate) fn record(&mut self, identity: impl Into<String>, lhs: IntMatrix, rhs: IntMatrix) {
        self.checked += 1;
        if lhs != rhs {
            self.failures.push(Failure {
                identity: identity.into(),
                lhs,
                rhs,
            });
        }
    }
}

fn generators_within<X: GeneratorMatrices + ?Sized>(x: &X) -> Vec<Generator> {
    let n_max = x.trunc();
    let mut out = Vec::new();
    for n in 1..=n_max {
        for i in 0..=n {
            out.push(Generator::Face { n, i });
        }
    }
    for n in 0..n_max {
        let top = if x.is_duplicial() { n + 1 } else { n };
        for i in 0..=top {
            out.push(Generator::Degeneracy { n, i });
        }
    }
    out
}

/// Checks every quadratic generator relation expressible within the
/// truncation (each composable pair against its canonical word), then
/// [`VALIDATION_PROBES`] seeded functoriality probes on random composable
/// maps.
pub fn validate<X: GeneratorMatrices + ?Sized>(x: &X) -> ValidationReport {
    let mut report = ValidationReport::default();
    let gens = generators_within(x);
    for g1 in &gens {
        for g2 in &gens {
            if g1.tgt() != g2.src() {
                continue;
            }
            let (Ok(m1), Ok(m2)) = (g1.to_map(), g2.to_map()) else { continue };
            let Ok(c) = compose(&m2, &m1) else { continue };
            let Ok(word) = factorize(&c) else { continue };
            if word.tokens() == [*g1, *g2] {
                continue;
            }
            let (Ok(a), Ok(b)) = (generator_matrix(x, g1), generator_matrix(x, g2)) else { continue };
            let Ok(rhs) = evaluate_word(x, &word) else { continue };
            let lhs = &a * &b;
            let canon: Vec<String> = word.tokens().iter().map(|t| t.to_string()).collect();
            report.record(format!("{g2} ∘ {g1} = [{}]", canon.join(", ")), lhs, rhs);
        }
    }
    functoriality_probes(x, &mut report);
    report
}

fn functoriality_probes<X: GeneratorMatrices + ?Sized>(x: &X, report: &mut ValidationReport) {
    let n_max = x.trunc();
    let mut rng = ChaCha8Rng::seed_from_u64(VALIDATION_SEED);
    let mut done = 0;
    let mut attempts = 0;
    while done < VALIDATION_PROBES && attempts < 20 * VALIDATION_PROBES {
        attempts += 1;
        let a = rng.gen_range(0..=n_max);
        let b = rng.gen_range(0..=n_max);
        let c = rng.gen_range(0..=n_max);
        let (f, g) = if x.is_duplicial() {
            (
                index_cat::random_xi_map(&mut rng, a, b, b as i64 + 1),
                index_cat::random_xi_map(&mut rng, b, c, c as i64 + 1),
            )
        } else {
            (
                index_cat::random_delta_map(&mut rng, a, b),
                index_cat::random_delta_map(&mut rng, b, c),
            )
        };
        let gf = compose(&g, &f).expect("composable by construction");
        let (Ok(ef), Ok(eg), Ok(egf)) = (evaluate(x, &f), evaluate(x, &g), evaluate(x, &gf)) else {
            continue;
        };
        report.record(format!("X({g} ∘ {f}) = X({f})·X({g})"), egf, &ef * &eg);
        done += 1;
    }
}

/// `Σ_{i=0}^{n} (−1)^{n−i} d_i : X_n → X_{n−1}`.
pub fn alternating_differential<X: GeneratorMatrices + ?Sized>(x: &X, n: usize) -> Result<IntMatrix> {
    if n == 0 {
        return Err(Error::IndexOutOfRange("the alternating differential starts in degree 1".into()));
    }
    check_degree(x, n)?;
    let mut acc = IntMatrix::zeros(x.rank(n - 1), x.rank(n));
    for i in 0..=n {
        let d = x.face(n, i)?;
        acc = if (n - i) % 2 == 0 { &acc + d } else { &acc - d };
    }
    Ok(acc)
}

/// `D(X)_n`: the span of the images of `s_0, …, s_{n−1} : X_{n−1} → X_n`.
pub fn degenerate_subgroup<X: GeneratorMatrices + ?Sized>(x: &X, n: usize) -> Result<Subgroup> {
    if n == 0 {
        return Ok(Subgroup::zero(x.rank(0)));
    }
    check_degree(x, n)?;
    let blocks = (0..n).map(|i| x.degeneracy(n - 1, i)).collect::<Result<Vec<_>>>()?;
    Ok(Subgroup::span(&IntMatrix::hstack(x.rank(n), &blocks)?))
}

/// `C(X)_n = ⋂_{i<n} ker d_i` as a Hermite basis of columns in `X_n`.
pub fn normalized_inclusion<X: GeneratorMatrices + ?Sized>(x: &X, n: usize) -> Result<IntMatrix> {
    check_degree(x, n)?;
    if n == 0 {
        return Ok(IntMatrix::identity(x.rank(0)));
    }
    let blocks = (0..n).map(|i| x.face(n, i)).collect::<Result<Vec<_>>>()?;
    let stacked = IntMatrix::vstack(x.rank(n), &blocks)?;
    Ok(kernel_basis(&stacked).into_basis())
}

/// `π_n = Σ_{a ∈ {0,1}^n} (−1)^{|a|} X(f_n(a))`.
pub fn pi_matrix<X: GeneratorMatrices + ?Sized>(x: &X, n: usize) -> Result<IntMatrix> {
    check_degree(x, n)?;
    let r = x.rank(n);
    let mut acc = IntMatrix::zeros(r, r);
    for mask in 0u64..(1u64 << n) {
        let bits: Vec<bool> = (0..n).map(|j| mask >> j & 1 == 1).collect();
        let term = evaluate(x, &cube_f(n, &bits)?)?;
        acc = if mask.count_ones() % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    Ok(acc)
}

/// `ℤΔ^n`: degree `m` is free on the monotone maps `[m] → [n]`
/// (lexicographic), with faces and degeneracies acting by precomposition.
pub fn linearized_simplex(n: usize, trunc: usize) -> SimplicialGroup {
    let bases: Vec<Vec<XiMap>> = (0..=trunc).map(|m| index_cat::delta_maps(m, n)).collect();
    let index: Vec<HashMap<Vec<i64>, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(k, f)| (f.values().to_vec(), k)).collect())
        .collect();
    let precompose = |m_from: usize, m_to: usize, g: &XiMap| -> IntMatrix {
        let mut out = IntMatrix::zeros(bases[m_to].len(), bases[m_from].len());
        for (col, f) in bases[m_from].iter().enumerate() {
            let h = compose(f, g).expect("degrees match");
            out.set(index[m_to][h.values()], col, BigInt::from(1));
        }
        out
    };
    let faces = (0..=trunc)
        .map(|m| {
            if m == 0 {
                return vec![];
            }
            (0..=m)
                .map(|i| precompose(m, m - 1, &XiMap::face(m, i).expect("in range")))
                .collect()
        })
        .collect();
    let degeneracies = (0..trunc)
        .map(|m| {
            (0..=m)
                .map(|i| precompose(m, m + 1, &XiMap::degeneracy(m, i).expect("in range")))
                .collect()
        })
        .collect();
    let ranks = bases.iter().map(Vec::len).collect();
    SimplicialGroup::new(trunc, ranks, faces, degeneracies).expect("consistent shapes")
}

/// A levelwise map between two truncated objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectMorphism {
    pub components: Vec<IntMatrix>,
}

impl ObjectMorphism {
    /// Checks `f_{n−1} d_i = d'_i f_n` and `f_{n+1} s_i = s'_i f_n` on every
    /// generator of the source.
    pub fn check<X: GeneratorMatrices + ?Sized>(&self, source: &X, target: &X) -> Result<ValidationReport> {
        let n_max = source.trunc();
        if target.trunc() != n_max || self.components.len() != n_max + 1 {
            return Err(Error::Shape("morphism truncations disagree".into()));
        }
        for (n, c) in self.components.iter().enumerate() {
            if c.shape() != (target.rank(n), source.rank(n)) {
                return Err(Error::Shape(format!("component {n} has shape {:?}", c.shape())));
            }
        }
        let mut report = ValidationReport::default();
        for g in generators_within(source) {
            let (s, t) = (g.src(), g.tgt());
            // X(g) : X_t → X_s
            let lhs = &self.components[s] * &generator_matrix(source, &g)?;
            let rhs = &generator_matrix(target, &g)? * &self.components[t];
            report.record(format!("f commutes with X({g})"), lhs, rhs);
        }
        Ok(report)
    }

    pub fn is_levelwise_unimodular(&self) -> bool {
        self.components.iter().all(crate::linalg::is_unimodular)
    }
}

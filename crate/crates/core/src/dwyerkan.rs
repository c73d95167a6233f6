//! Duchain complexes, the Dwyer-Kan nerve, and the shift analysis.
//!
//! An `n`-cell of `N′(B)` is a family `(b_τ)` indexed by Ξ-maps
//! `τ : ⟨m⟩ → ⟨n⟩` injective on `{0, …, m}`, subject to
//! `d(b_τ) = Σ_i (−1)^{m−i} b_{τ∘∂_i}` and `δ(b_τ) = b_{τ∘σ_{m+1}}` (zero when
//! `τ∘σ_{m+1}` is not injective). Such a family is determined by its
//! restriction to Δ, i.e. by a Dold-Kan cell; [`extend`] reconstructs the
//! rest level by level as linear maps out of the cell space.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::doldkan::{counit_on, dold_kan_nerve, normalized_chains, ChainComplex, DoldKanNerve};
use crate::error::{Error, Result};
use crate::index_cat::{compose, Flavor, XiMap};
use crate::linalg::{cokernel_factors, is_unimodular, kernel_basis, rank, IntMatrix, LinearSolver};
use crate::objects::{
    normalized_inclusion, pi_matrix, DuplicialGroup, GeneratorMatrices, ValidationReport,
};

/// A chain complex with an extra degree-raising differential
/// `δ[n] : B_n → B_{n+1}`, `δ² = 0`, for `n < trunc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DuchainComplex {
    chain: ChainComplex,
    delta: Vec<IntMatrix>,
}

impl DuchainComplex {
    pub fn new(chain: ChainComplex, delta: Vec<IntMatrix>) -> Result<Self> {
        let trunc = chain.trunc();
        if delta.len() != trunc {
            return Err(Error::InvalidObject(format!(
                "{} δ matrices for truncation {trunc}",
                delta.len()
            )));
        }
        for (n, m) in delta.iter().enumerate() {
            let expected = (chain.rank(n + 1), chain.rank(n));
            if m.shape() != expected {
                return Err(Error::InvalidObject(format!(
                    "δ[{n}] has shape {:?}, expected {:?}",
                    m.shape(),
                    expected
                )));
            }
        }
        for n in 0..trunc.saturating_sub(1) {
            if !(&delta[n + 1] * &delta[n]).is_zero() {
                return Err(Error::NotAComplex(format!("δ[{}]·δ[{n}] ≠ 0", n + 1)));
            }
        }
        Ok(DuchainComplex { chain, delta })
    }

    pub fn zero(trunc: usize) -> Self {
        DuchainComplex {
            chain: ChainComplex::zero(trunc),
            delta: vec![IntMatrix::zeros(0, 0); trunc],
        }
    }

    pub fn chain(&self) -> &ChainComplex {
        &self.chain
    }

    pub fn trunc(&self) -> usize {
        self.chain.trunc()
    }

    pub fn ranks(&self) -> &[usize] {
        self.chain.ranks()
    }

    pub fn rank(&self, n: usize) -> usize {
        self.chain.rank(n)
    }

    pub fn d(&self, n: usize) -> &IntMatrix {
        self.chain.d(n)
    }

    pub fn delta(&self, n: usize) -> &IntMatrix {
        &self.delta[n]
    }

    pub fn deltas(&self) -> &[IntMatrix] {
        &self.delta
    }

    /// Replaces `δ[n]`, re-checking `δ² = 0`.
    pub fn with_delta(&self, n: usize, m: IntMatrix) -> Result<Self> {
        let mut delta = self.delta.clone();
        *delta
            .get_mut(n)
            .ok_or_else(|| Error::IndexOutOfRange(format!("δ[{n}]")))? = m;
        DuchainComplex::new(self.chain.clone(), delta)
    }

    pub fn truncate(&self, trunc: usize) -> Result<Self> {
        Ok(DuchainComplex {
            chain: self.chain.truncate(trunc)?,
            delta: self.delta[..trunc].to_vec(),
        })
    }
}

/// `C(X)` of a duplicial group with `δ = π_{n+1} ∘ s_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedDuchains {
    pub complex: DuchainComplex,
    pub inclusions: Vec<IntMatrix>,
}

pub fn normalized_duchains(x: &DuplicialGroup) -> Result<NormalizedDuchains> {
    let chains = normalized_chains(x)?;
    let trunc = x.trunc();
    let mut delta = Vec::with_capacity(trunc);
    for n in 0..trunc {
        let image = &(&pi_matrix(x, n + 1)? * x.degeneracy(n, n + 1)?) * &chains.inclusions[n];
        let dn = LinearSolver::new(&chains.inclusions[n + 1])
            .solve_matrix(&image)
            .map_err(|_| Error::InvalidObject(format!("π_{}·s_{} leaves C_{}", n + 1, n + 1, n + 1)))?;
        delta.push(dn);
    }
    Ok(NormalizedDuchains {
        complex: DuchainComplex::new(chains.complex, delta)?,
        inclusions: chains.inclusions,
    })
}

/// The linear maps `E_τ : N(B)_n → B_m` for every Ξ-map `τ : ⟨m⟩ → ⟨n⟩`
/// injective on `{0, …, m}` with `τ(m) ≤ level`.
#[derive(Clone, Debug)]
pub struct ExtensionTable {
    base: usize,
    level: usize,
    cell_rank: usize,
    entries: BTreeMap<Vec<i64>, IntMatrix>,
}

impl ExtensionTable {
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, tau: &XiMap) -> Option<&IntMatrix> {
        if tau.tgt() != self.base {
            return None;
        }
        self.entries.get(tau.values())
    }

    /// Housed maps, ordered by their values.
    pub fn maps(&self) -> impl Iterator<Item = XiMap> + '_ {
        let n = self.base;
        self.entries
            .keys()
            .map(move |v| XiMap::new(Flavor::Xi, v.len() - 1, n, v.clone()).expect("housed maps are valid"))
    }

    fn entry(&self, values: &[i64]) -> &IntMatrix {
        self.entries
            .get(values)
            .unwrap_or_else(|| panic!("extension entry {values:?} missing at level {}", self.level))
    }

    /// Re-checks both equation families on every housed map:
    /// `d·E_τ = Σ_i (−1)^{m−i} E_{τ∘∂_i}` for `m ≥ 1`, and
    /// `δ·E_τ = E_{τ∘σ_{m+1}}` when the right side is housed (zero when it is
    /// not injective) and `δ` is available in `b`.
    pub fn check(&self, b: &DuchainComplex) -> ValidationReport {
        let mut report = ValidationReport::default();
        let period = self.base as i64 + 1;
        for (values, e) in &self.entries {
            let m = values.len() - 1;
            if m >= 1 {
                let lhs = b.d(m) * e;
                let mut rhs = IntMatrix::zeros(b.rank(m - 1), self.cell_rank);
                for i in 0..=m {
                    let face = drop_index(values, i);
                    let term = self.entry(&face);
                    rhs = if (m - i) % 2 == 0 { &rhs + term } else { &rhs - term };
                }
                report.record(format!("d·E{values:?} = Σ(−1)^(m−i) E(τ∘∂_i)"), lhs, rhs);
            }
            if m >= b.trunc() {
                continue;
            }
            let wrap = values[0] + period;
            let lhs = b.delta(m) * e;
            if values[m] == wrap {
                report.record(
                    format!("δ·E{values:?} = 0"),
                    lhs,
                    IntMatrix::zeros(b.rank(m + 1), self.cell_rank),
                );
            } else if wrap <= self.level as i64 {
                let mut next = values.clone();
                next.push(wrap);
                report.record(format!("δ·E{values:?} = E{next:?}"), lhs, self.entry(&next).clone());
            }
        }
        report
    }
}

fn drop_index(values: &[i64], i: usize) -> Vec<i64> {
    let mut v = values.to_vec();
    v.remove(i);
    v
}

/// Strictly increasing sequences from `first` to `last` whose inner values
/// lie strictly between them.
fn chains_between(first: i64, last: i64) -> Vec<Vec<i64>> {
    let inner: Vec<i64> = (first + 1..last).collect();
    (0u64..1 << inner.len())
        .map(|mask| {
            let mut v = vec![first];
            v.extend(inner.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &x)| x));
            v.push(last);
            v
        })
        .collect()
}

/// Builds the table for base degree `n` at level `k ≥ n`.
pub fn extend(b: &DuchainComplex, n: usize, k: usize) -> Result<ExtensionTable> {
    if b.trunc() < n + 1 {
        return Err(Error::OutOfTruncation {
            degree: n + 1,
            trunc: b.trunc(),
        });
    }
    let nerve = dold_kan_nerve(b.chain(), n)?;
    extend_from(&nerve, b, n, k)
}

pub(crate) fn extend_from(nerve: &DoldKanNerve, b: &DuchainComplex, n: usize, k: usize) -> Result<ExtensionTable> {
    if k < n {
        return Err(Error::IndexOutOfRange(format!("extension level {k} below base degree {n}")));
    }
    if b.trunc() < n + 1 {
        return Err(Error::OutOfTruncation {
            degree: n + 1,
            trunc: b.trunc(),
        });
    }
    let mut table = ExtensionTable {
        base: n,
        level: n,
        cell_rank: nerve.kernel_basis(n).cols(),
        entries: BTreeMap::new(),
    };
    for tau in nerve.cells(n) {
        table.entries.insert(tau.values().to_vec(), nerve.component(n, tau)?);
    }
    let n_i = n as i64;
    while table.level < k {
        let lvl = table.level as i64;
        let top = lvl + 1;
        let base = lvl - n_i;
        // forced: τ(0) = level − n, τ(m) = level + 1, so τ = (τ∘∂_m)∘σ_m
        let mut fresh = Vec::new();
        if base >= 0 {
            for values in chains_between(base, top) {
                let m = values.len() - 1;
                let e = b.delta(m - 1) * table.entry(&values[..m]);
                fresh.push((values, e));
            }
        }
        table.entries.extend(fresh);
        // solved: τ(0) > level − n, τ(m) = level + 1, through φ = (level − n, τ)
        let mut solved = Vec::new();
        for first in (base + 1).max(0)..=top {
            let candidates = if first == top { vec![vec![top]] } else { chains_between(first, top) };
            for values in candidates {
                let m = values.len() - 1;
                let mut phi = Vec::with_capacity(m + 2);
                phi.push(base);
                phi.extend_from_slice(&values);
                // φ(0) < 0 only happens below level n, where nothing is new
                debug_assert!(base >= 0);
                let mut acc = b.d(m + 1) * table.entry(&phi);
                for i in 1..=m + 1 {
                    let term = table.entry(&drop_index(&phi, i));
                    acc = if (m + 1 - i) % 2 == 0 { &acc - term } else { &acc + term };
                }
                let e = if (m + 1) % 2 == 0 { acc } else { -&acc };
                solved.push((values, e));
            }
        }
        table.entries.extend(solved);
        table.level += 1;
    }
    Ok(table)
}

/// The Dwyer-Kan nerve `N′(B)` truncated at `trunc`, with the Dold-Kan nerve
/// of the underlying chain complex as its simplicial part.
#[derive(Clone, Debug)]
pub struct DwyerKanNerve {
    simplicial: DoldKanNerve,
    object: DuplicialGroup,
}

impl DwyerKanNerve {
    pub fn dold_kan(&self) -> &DoldKanNerve {
        &self.simplicial
    }

    pub fn object(&self) -> &DuplicialGroup {
        &self.object
    }

    pub fn into_object(self) -> DuplicialGroup {
        self.object
    }
}

/// `N′(B)` up to degree `trunc`; needs `B.trunc ≥ trunc + 1`. The extra
/// degeneracy `s_{n+1}` sends a cell to `(E_{σ_{n+1}∘ρ})_ρ` from the level
/// `n + 1` extension table.
pub fn dwyer_kan_nerve(b: &DuchainComplex, trunc: usize) -> Result<DwyerKanNerve> {
    if b.trunc() < trunc + 1 {
        return Err(Error::OutOfTruncation {
            degree: trunc + 1,
            trunc: b.trunc(),
        });
    }
    let simplicial = dold_kan_nerve(b.chain(), trunc)?;
    let mut extra = Vec::with_capacity(trunc);
    for n in 0..trunc {
        let table = extend_from(&simplicial, b, n, n + 1)?;
        let sigma = XiMap::degeneracy(n, n + 1)?;
        let layout = simplicial.layout(n + 1);
        let mut family = IntMatrix::zeros(layout.dim, table.cell_rank);
        for (idx, rho) in layout.cells.iter().enumerate() {
            let tau = compose(&sigma, rho)?;
            if !tau.is_injective_on_fd() {
                continue;
            }
            let e = table
                .get(&tau)
                .ok_or_else(|| Error::InvalidMap(format!("{tau} missing from the extension table")))?;
            family.set_block(layout.offsets[idx], 0, e);
        }
        extra.push(simplicial.to_cell_coordinates(n + 1, &family)?);
    }
    let object = DuplicialGroup::new(simplicial.object().clone(), extra)?;
    Ok(DwyerKanNerve { simplicial, object })
}

/// `T_n^{n+1}` restricted to `C(X)_n`, in the inclusion basis.
pub fn shift_on_normalized(x: &DuplicialGroup, n: usize) -> Result<IntMatrix> {
    shift_power_on_normalized(x, n, n as u32 + 1)
}

/// `T_n^k` restricted to `C(X)_n`. Only `k = n + 1` is guaranteed to
/// preserve `C(X)_n`; other powers report an error when they do not.
pub fn shift_power_on_normalized(x: &DuplicialGroup, n: usize, k: u32) -> Result<IntMatrix> {
    if n >= x.trunc() {
        return Err(Error::OutOfTruncation {
            degree: n + 1,
            trunc: x.trunc(),
        });
    }
    let iota = normalized_inclusion(x, n)?;
    let image = &x.shift(n)?.pow(k)? * &iota;
    LinearSolver::new(&iota)
        .solve_matrix(&image)
        .map_err(|_| Error::InvalidObject(format!("T_{n}^{k} does not preserve C_{n}")))
}

/// Both sides of `(I − dδ)^{n+1}(I − δd)^n = T_n^{n+1}` on `C(X)_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicEquation {
    pub degree: usize,
    pub lhs: IntMatrix,
    pub rhs: IntMatrix,
}

impl CyclicEquation {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `(I − d_{n+1}δ_n)^{n+1} · (I − δ_{n−1}d_n)^n` on `B_n`; needs `n < trunc`.
pub fn cyclic_operator(b: &DuchainComplex, n: usize) -> Result<IntMatrix> {
    let (a, c) = paracyclic_witnesses(b, n)?;
    let left = a.pow(n as u32 + 1)?;
    Ok(match c {
        Some(c) => &left * &c.pow(n as u32)?,
        None => left,
    })
}

/// `I − d_{n+1}δ_n` and, for `n ≥ 1`, `I − δ_{n−1}d_n`.
pub fn paracyclic_witnesses(b: &DuchainComplex, n: usize) -> Result<(IntMatrix, Option<IntMatrix>)> {
    if n >= b.trunc() {
        return Err(Error::OutOfTruncation {
            degree: n + 1,
            trunc: b.trunc(),
        });
    }
    let id = IntMatrix::identity(b.rank(n));
    let a = &id - &(b.d(n + 1) * b.delta(n));
    let c = (n >= 1).then(|| &id - &(b.delta(n - 1) * b.d(n)));
    Ok((a, c))
}

pub fn cyclic_equation_check(x: &DuplicialGroup, n: usize) -> Result<CyclicEquation> {
    let duchains = normalized_duchains(x)?;
    cyclic_equation_with(x, &duchains, n)
}

pub fn cyclic_equation_with(x: &DuplicialGroup, duchains: &NormalizedDuchains, n: usize) -> Result<CyclicEquation> {
    Ok(CyclicEquation {
        degree: n,
        lhs: cyclic_operator(&duchains.complex, n)?,
        rhs: shift_on_normalized(x, n)?,
    })
}

/// Per-degree verdicts, all relative to the truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeVerdict {
    pub degree: usize,
    pub duplicial_ok: bool,
    pub paracyclic_ok: bool,
    pub cyclic_ok: bool,
    /// `I − dδ`
    pub id_minus_d_delta: IntMatrix,
    /// `I − δd`, absent in degree 0
    pub id_minus_delta_d: Option<IntMatrix>,
    /// `(I − dδ)^{n+1}(I − δd)^n`
    pub cyclic_operator: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub trunc: usize,
    pub degrees: Vec<DegreeVerdict>,
}

impl Classification {
    pub fn paracyclic(&self) -> bool {
        self.degrees.iter().all(|v| v.paracyclic_ok)
    }

    pub fn cyclic(&self) -> bool {
        self.degrees.iter().all(|v| v.cyclic_ok)
    }
}

/// Paracyclic and cyclic verdicts for each degree `n < B.trunc`.
pub fn classify(b: &DuchainComplex) -> Result<Classification> {
    let mut degrees = Vec::with_capacity(b.trunc());
    for n in 0..b.trunc() {
        let (a, c) = paracyclic_witnesses(b, n)?;
        let paracyclic_ok = is_unimodular(&a) && c.as_ref().is_none_or(is_unimodular);
        let op = cyclic_operator(b, n)?;
        degrees.push(DegreeVerdict {
            degree: n,
            duplicial_ok: true,
            paracyclic_ok,
            cyclic_ok: op.is_identity(),
            id_minus_d_delta: a,
            id_minus_delta_d: c,
            cyclic_operator: op,
        });
    }
    Ok(Classification {
        trunc: b.trunc(),
        degrees,
    })
}

/// Injectivity and ℤ-surjectivity of `I − gf` and `I − fg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub injective_gf: bool,
    pub injective_fg: bool,
    pub surjective_gf: bool,
    pub surjective_fg: bool,
}

impl TransferReport {
    pub fn holds(&self) -> bool {
        self.injective_gf == self.injective_fg && self.surjective_gf == self.surjective_fg
    }
}

/// For `f : A → B` (a `b × a` matrix) and `g : B → A`.
pub fn transfer_check(f: &IntMatrix, g: &IntMatrix) -> Result<TransferReport> {
    if f.rows() != g.cols() || f.cols() != g.rows() {
        return Err(Error::Shape(format!(
            "f is {:?} and g is {:?}; they must be opposed",
            f.shape(),
            g.shape()
        )));
    }
    let gf = &IntMatrix::identity(f.cols()) - &(g * f);
    let fg = &IntMatrix::identity(f.rows()) - &(f * g);
    let injective = |m: &IntMatrix| rank(m) == m.cols();
    let surjective = |m: &IntMatrix| cokernel_factors(m).is_empty();
    Ok(TransferReport {
        injective_gf: injective(&gf),
        injective_fg: injective(&fg),
        surjective_gf: surjective(&gf),
        surjective_fg: surjective(&fg),
    })
}

/// Per-degree comparison `C(N′(B)) → B` through the counit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripDegree {
    pub degree: usize,
    pub comparison: IntMatrix,
    pub unimodular: bool,
    /// `ε_{n−1}·d = d·ε_n` (vacuous in degree 0)
    pub d_intertwined: bool,
    /// `ε_{n+1}·δ = δ·ε_n` (vacuous in the top degree)
    pub delta_intertwined: bool,
}

impl RoundtripDegree {
    pub fn passed(&self) -> bool {
        self.unimodular && self.d_intertwined && self.delta_intertwined
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Roundtrip {
    pub degrees: Vec<RoundtripDegree>,
    /// `C(N′(B))`, the source of the comparison maps
    pub recovered: DuchainComplex,
}

impl Roundtrip {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(RoundtripDegree::passed)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.degrees.iter().find(|d| !d.passed()).map(|d| d.degree)
    }
}

/// `B → N′(B) → C(N′(B))`, compared with `B` through the counit.
pub fn roundtrip(b: &DuchainComplex, trunc: usize) -> Result<Roundtrip> {
    roundtrip_against(b, b, trunc)
}

/// Like [`roundtrip`], but checks the intertwining against `reference`
/// (same ranks as `b`). A reference that differs from `b` exposes which
/// degrees disagree.
pub fn roundtrip_against(b: &DuchainComplex, reference: &DuchainComplex, trunc: usize) -> Result<Roundtrip> {
    if reference.ranks()[..=trunc] != b.ranks()[..=trunc] {
        return Err(Error::Shape("reference complex has different ranks".into()));
    }
    let nerve = dwyer_kan_nerve(b, trunc)?;
    let duchains = normalized_duchains(nerve.object())?;
    let chains = crate::doldkan::NormalizedChains {
        complex: duchains.complex.chain().clone(),
        inclusions: duchains.inclusions.clone(),
    };
    let eps = counit_on(nerve.dold_kan(), &chains)?;
    let c = &duchains.complex;
    let degrees = (0..=trunc)
        .map(|n| RoundtripDegree {
            degree: n,
            comparison: eps[n].clone(),
            unimodular: is_unimodular(&eps[n]),
            d_intertwined: n == 0 || &eps[n - 1] * c.d(n) == reference.d(n) * &eps[n],
            delta_intertwined: n == trunc || &eps[n + 1] * c.delta(n) == reference.delta(n) * &eps[n],
        })
        .collect();
    Ok(Roundtrip {
        degrees,
        recovered: duchains.complex,
    })
}

/// Parameters for [`gen_random_duchain`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub trunc: usize,
    pub max_rank: usize,
    /// Bound on the entries drawn before they are multiplied into kernel
    /// bases; final entries may exceed it.
    pub entry_bound: i64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            trunc: 4,
            max_rank: 3,
            entry_bound: 2,
        }
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
    IntMatrix::from_vec(rows, cols, data).expect("sized")
}

/// A random duchain complex, deterministic in `seed`. `d[n+1]` is drawn
/// inside `ker d[n]` and `δ[n−1]` inside `ker δ[n]`, so both square to zero.
pub fn gen_random_duchain(seed: u64, params: GenParams) -> DuchainComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trunc = params.trunc;
    // rank 0 only when forced, so that generated complexes are not mostly empty
    let low = params.max_rank.min(1);
    let ranks: Vec<usize> = (0..=trunc).map(|_| rng.gen_range(low..=params.max_rank)).collect();
    let bound = params.entry_bound;

    let mut d = vec![IntMatrix::zeros(0, ranks[0])];
    for n in 1..=trunc {
        let dn = if n == 1 {
            random_matrix(&mut rng, ranks[0], ranks[1], bound)
        } else {
            let ker = kernel_basis(&d[n - 1]).into_basis();
            let coeffs = random_matrix(&mut rng, ker.cols(), ranks[n], bound);
            &ker * &coeffs
        };
        d.push(dn);
    }

    let mut delta = vec![IntMatrix::zeros(0, 0); trunc];
    for n in (0..trunc).rev() {
        delta[n] = if n + 1 == trunc {
            random_matrix(&mut rng, ranks[n + 1], ranks[n], bound)
        } else {
            let ker = kernel_basis(&delta[n + 1]).into_basis();
            let coeffs = random_matrix(&mut rng, ker.cols(), ranks[n], bound);
            &ker * &coeffs
        };
    }
    let chain = ChainComplex::new(trunc, ranks, d).expect("d² = 0 by construction");
    DuchainComplex::new(chain, delta).expect("δ² = 0 by construction")
}

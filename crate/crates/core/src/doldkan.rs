//! Normalized chains, the Dold-Kan nerve, and the unit and counit between them.
//!
//! An `n`-cell of the nerve `N(B)` is a family `(b_τ)` indexed by the injective
//! monotone `τ : [m] ↪ [n]`, with `b_τ ∈ B_m` and
//! `d(b_τ) = Σ_i (−1)^{m−i} b_{τ∘∂_i}`. Degree `n` of the nerve is the kernel
//! of these constraints inside `V_n = ⊕_τ B_m`; cells are enumerated by `m`,
//! then lexicographically by values, and that order fixes the basis.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::index_cat::{compose, injective_delta_maps, XiMap};
use crate::linalg::{kernel_basis, IntMatrix, LinearSolver};
use crate::objects::{
    evaluate, normalized_inclusion, pi_matrix, GeneratorMatrices, ObjectMorphism, SimplicialGroup,
};

/// A connective chain complex of free groups, `d[n] : B_n → B_{n−1}`.
///
/// `d[0]` is the empty `0 × r_0` matrix so that `d` is indexed by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    trunc: usize,
    ranks: Vec<usize>,
    d: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(trunc: usize, ranks: Vec<usize>, d: Vec<IntMatrix>) -> Result<Self> {
        if ranks.len() != trunc + 1 || d.len() != trunc + 1 {
            return Err(Error::InvalidObject(format!(
                "truncation {trunc} needs {} ranks and differentials",
                trunc + 1
            )));
        }
        for n in 0..=trunc {
            let expected = (if n == 0 { 0 } else { ranks[n - 1] }, ranks[n]);
            if d[n].shape() != expected {
                return Err(Error::InvalidObject(format!(
                    "d[{n}] has shape {:?}, expected {:?}",
                    d[n].shape(),
                    expected
                )));
            }
        }
        for n in 1..trunc {
            if !(&d[n] * &d[n + 1]).is_zero() {
                return Err(Error::NotAComplex(format!("d[{n}]·d[{}] ≠ 0", n + 1)));
            }
        }
        Ok(ChainComplex { trunc, ranks, d })
    }

    pub fn zero(trunc: usize) -> Self {
        ChainComplex {
            trunc,
            ranks: vec![0; trunc + 1],
            d: vec![IntMatrix::zeros(0, 0); trunc + 1],
        }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    pub fn d(&self, n: usize) -> &IntMatrix {
        &self.d[n]
    }

    pub fn differentials(&self) -> &[IntMatrix] {
        &self.d
    }

    pub fn truncate(&self, trunc: usize) -> Result<Self> {
        if trunc > self.trunc {
            return Err(Error::OutOfTruncation {
                degree: trunc,
                trunc: self.trunc,
            });
        }
        Ok(ChainComplex {
            trunc,
            ranks: self.ranks[..=trunc].to_vec(),
            d: self.d[..=trunc].to_vec(),
        })
    }

    /// Invariant factors of `H_n` for `n < trunc` (the top degree lacks `d[trunc+1]`).
    pub fn homology(&self) -> Result<Vec<Vec<BigInt>>> {
        (0..self.trunc)
            .map(|n| crate::linalg::homology(&self.d[n], &self.d[n + 1]))
            .collect()
    }
}

/// `C(X)` together with the inclusions `ι_n : C(X)_n → X_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedChains {
    pub complex: ChainComplex,
    pub inclusions: Vec<IntMatrix>,
}

/// `C(X)_n = ⋂_{i<n} ker d_i` with differential `d_n`, expressed in the
/// Hermite bases of the kernels.
pub fn normalized_chains<X: GeneratorMatrices + ?Sized>(x: &X) -> Result<NormalizedChains> {
    let trunc = x.trunc();
    let inclusions = (0..=trunc)
        .map(|n| normalized_inclusion(x, n))
        .collect::<Result<Vec<_>>>()?;
    let ranks: Vec<usize> = inclusions.iter().map(IntMatrix::cols).collect();
    let mut d = vec![IntMatrix::zeros(0, ranks[0])];
    for n in 1..=trunc {
        let image = x.face(n, n)? * &inclusions[n];
        let dn = LinearSolver::new(&inclusions[n - 1])
            .solve_matrix(&image)
            .map_err(|_| Error::InvalidObject(format!("d_{n} does not map C_{n} into C_{}", n - 1)))?;
        d.push(dn);
    }
    Ok(NormalizedChains {
        complex: ChainComplex::new(trunc, ranks, d)?,
        inclusions,
    })
}

/// Index data for the nerve's ambient modules `V_n = ⊕_{τ:[m]↪[n]} B_m`.
#[derive(Clone, Debug)]
pub(crate) struct CellLayout {
    /// Injective `τ` into `[n]`, by `m` then lexicographically.
    pub(crate) cells: Vec<XiMap>,
    pub(crate) offsets: Vec<usize>,
    pub(crate) index: HashMap<Vec<i64>, usize>,
    pub(crate) dim: usize,
}

impl CellLayout {
    fn new(n: usize, ranks: &[usize]) -> Self {
        let cells: Vec<XiMap> = (0..=n).flat_map(|m| injective_delta_maps(m, n)).collect();
        let mut offsets = Vec::with_capacity(cells.len());
        let mut dim = 0;
        for c in &cells {
            offsets.push(dim);
            dim += ranks[c.src()];
        }
        let index = cells.iter().enumerate().map(|(k, c)| (c.values().to_vec(), k)).collect();
        CellLayout {
            cells,
            offsets,
            index,
            dim,
        }
    }

    pub(crate) fn offset_of(&self, values: &[i64]) -> Option<usize> {
        self.index.get(values).map(|&k| self.offsets[k])
    }
}

/// The Dold-Kan nerve `N(B)` up to a truncation, with its cell embedding.
#[derive(Clone, Debug)]
pub struct DoldKanNerve {
    complex: ChainComplex,
    layouts: Vec<CellLayout>,
    kernels: Vec<IntMatrix>,
    object: SimplicialGroup,
}

fn ambient_projection(layout: &CellLayout, k: usize, rank: usize) -> IntMatrix {
    let mut p = IntMatrix::zeros(rank, layout.dim);
    let off = layout.offsets[k];
    for j in 0..rank {
        p.set(j, off + j, BigInt::from(1));
    }
    p
}

impl DoldKanNerve {
    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn object(&self) -> &SimplicialGroup {
        &self.object
    }

    pub fn into_object(self) -> SimplicialGroup {
        self.object
    }

    pub fn trunc(&self) -> usize {
        self.object.trunc()
    }

    /// The injective `τ : [m] ↪ [n]` indexing a cell's components.
    pub fn cells(&self, n: usize) -> &[XiMap] {
        &self.layouts[n].cells
    }

    /// Columns: a basis of `N(B)_n` inside `V_n`.
    pub fn kernel_basis(&self, n: usize) -> &IntMatrix {
        &self.kernels[n]
    }

    pub(crate) fn layout(&self, n: usize) -> &CellLayout {
        &self.layouts[n]
    }

    /// The `b_τ` coordinate of a cell as a map `N(B)_n → B_m`.
    pub fn component(&self, n: usize, tau: &XiMap) -> Result<IntMatrix> {
        let layout = &self.layouts[n];
        let k = *layout
            .index
            .get(tau.values())
            .ok_or_else(|| Error::InvalidMap(format!("{tau} is not an injective simplex of [{n}]")))?;
        let p = ambient_projection(layout, k, self.complex.rank(tau.src()));
        Ok(&p * &self.kernels[n])
    }

    /// Re-expresses families (columns in `V_n`) in the kernel basis.
    pub fn to_cell_coordinates(&self, n: usize, families: &IntMatrix) -> Result<IntMatrix> {
        LinearSolver::new(&self.kernels[n]).solve_matrix(families).map_err(|e| match e {
            Error::NoSolution => Error::InvalidObject(format!("family is not a cell of degree {n}")),
            other => other,
        })
    }

    /// Precomposition with a Δ-map `α : [k] → [n]` as a map `V_n → V_k`:
    /// `b'_σ = b_{α∘σ}` when `α∘σ` is injective and `0` otherwise.
    pub(crate) fn precomposition(&self, alpha: &XiMap) -> Result<IntMatrix> {
        let (k, n) = (alpha.src(), alpha.tgt());
        let (from, to) = (&self.layouts[n], &self.layouts[k]);
        let mut a = IntMatrix::zeros(to.dim, from.dim);
        for (idx, sigma) in to.cells.iter().enumerate() {
            let composite = compose(alpha, sigma)?;
            if !composite.is_injective_on_fd() {
                continue;
            }
            let src_off = from.offset_of(composite.values()).expect("injective Δ-map is a cell");
            let dst_off = to.offsets[idx];
            for j in 0..self.complex.rank(sigma.src()) {
                a.set(dst_off + j, src_off + j, BigInt::from(1));
            }
        }
        Ok(a)
    }

    /// `N(B)(α) : N(B)_n → N(B)_k` in kernel coordinates.
    pub fn structure_map(&self, alpha: &XiMap) -> Result<IntMatrix> {
        let a = self.precomposition(alpha)?;
        self.to_cell_coordinates(alpha.src(), &(&a * &self.kernels[alpha.tgt()]))
    }
}

fn constraint_matrix(b: &ChainComplex, layout: &CellLayout) -> IntMatrix {
    let rows: usize = layout.cells.iter().filter(|t| t.src() >= 1).map(|t| b.rank(t.src() - 1)).sum();
    let mut c = IntMatrix::zeros(rows, layout.dim);
    let mut row = 0;
    for (k, tau) in layout.cells.iter().enumerate() {
        let m = tau.src();
        if m == 0 {
            continue;
        }
        c.set_block(row, layout.offsets[k], b.d(m));
        for i in 0..=m {
            let face = compose(tau, &XiMap::face(m, i).expect("in range")).expect("composable");
            let off = layout.offset_of(face.values()).expect("faces of injective maps are injective");
            let sign: i64 = if (m - i) % 2 == 0 { -1 } else { 1 };
            for j in 0..b.rank(m - 1) {
                let cur = c.get(row + j, off + j).clone();
                c.set(row + j, off + j, cur + sign);
            }
        }
        row += b.rank(m - 1);
    }
    c
}

/// `N(B)` truncated at `trunc ≤ B.trunc`, with structure maps computed per
/// generator.
pub fn dold_kan_nerve(b: &ChainComplex, trunc: usize) -> Result<DoldKanNerve> {
    if trunc > b.trunc() {
        return Err(Error::OutOfTruncation {
            degree: trunc,
            trunc: b.trunc(),
        });
    }
    let complex = b.truncate(trunc)?;
    let layouts: Vec<CellLayout> = (0..=trunc).map(|n| CellLayout::new(n, complex.ranks())).collect();
    let kernels: Vec<IntMatrix> = layouts
        .iter()
        .map(|l| kernel_basis(&constraint_matrix(&complex, l)).into_basis())
        .collect();
    let mut nerve = DoldKanNerve {
        complex,
        layouts,
        kernels,
        object: SimplicialGroup::zero(0),
    };
    let ranks: Vec<usize> = nerve.kernels.iter().map(IntMatrix::cols).collect();
    let mut faces = vec![vec![]];
    for n in 1..=trunc {
        faces.push(
            (0..=n)
                .map(|i| nerve.structure_map(&XiMap::face(n, i)?))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let degeneracies = (0..trunc)
        .map(|n| {
            (0..=n)
                .map(|i| nerve.structure_map(&XiMap::degeneracy(n, i)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    nerve.object = SimplicialGroup::new(trunc, ranks, faces, degeneracies)?;
    Ok(nerve)
}

/// `Σ_{m ≤ n} C(n, m)·r_m`, the rank the nerve must have in degree `n`.
pub fn nerve_rank_formula(ranks: &[usize], n: usize) -> usize {
    (0..=n.min(ranks.len() - 1)).map(|m| binomial(n, m) * ranks[m]).sum()
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The counit `C(N(B))_n → B_n`, `(b_τ) ↦ b_id`, per degree.
pub fn counit(nerve: &DoldKanNerve) -> Result<Vec<IntMatrix>> {
    let chains = normalized_chains(nerve.object())?;
    counit_on(nerve, &chains)
}

pub(crate) fn counit_on(nerve: &DoldKanNerve, chains: &NormalizedChains) -> Result<Vec<IntMatrix>> {
    (0..=nerve.trunc())
        .map(|n| Ok(&nerve.component(n, &XiMap::identity(n))? * &chains.inclusions[n]))
        .collect()
}

/// The unit `X → N(C(X))`: `x ↦ (π_m X(τ) x)_τ`, in the nerve's kernel
/// coordinates, per degree `n ≤ trunc`.
pub fn unit<X: GeneratorMatrices + ?Sized>(x: &X, trunc: usize) -> Result<(DoldKanNerve, ObjectMorphism)> {
    if trunc > x.trunc() {
        return Err(Error::OutOfTruncation {
            degree: trunc,
            trunc: x.trunc(),
        });
    }
    let chains = normalized_chains(x)?;
    let nerve = dold_kan_nerve(&chains.complex, trunc)?;
    let to_c: Vec<LinearSolver> = chains.inclusions[..=trunc].iter().map(LinearSolver::new).collect();
    let pis = (0..=trunc).map(|m| pi_matrix(x, m)).collect::<Result<Vec<_>>>()?;
    let mut components = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let layout = nerve.layout(n);
        let mut family = IntMatrix::zeros(layout.dim, x.rank(n));
        for (k, tau) in layout.cells.iter().enumerate() {
            let m = tau.src();
            let value = &pis[m] * &evaluate(x, tau)?;
            let coords = to_c[m]
                .solve_matrix(&value)
                .map_err(|_| Error::InvalidObject(format!("π_{m}·X({tau}) leaves C_{m}")))?;
            family.set_block(layout.offsets[k], 0, &coords);
        }
        components.push(nerve.to_cell_coordinates(n, &family)?);
    }
    Ok((nerve, ObjectMorphism { components }))
}

/// `C(f)_n`: a morphism restricted to normalized chains, in the inclusion bases.
pub fn induced_on_normalized<X: GeneratorMatrices + ?Sized>(
    f: &ObjectMorphism,
    source: &X,
    target: &X,
) -> Result<Vec<IntMatrix>> {
    let src = normalized_chains(source)?;
    let tgt = normalized_chains(target)?;
    f.components
        .iter()
        .enumerate()
        .map(|(n, fn_)| {
            LinearSolver::new(&tgt.inclusions[n])
                .solve_matrix(&(fn_ * &src.inclusions[n]))
                .map_err(|_| Error::InvalidObject(format!("f_{n} does not preserve normalized chains")))
        })
        .collect()
}

/// `N(φ) : N(B) → N(B')` for a chain map `φ`, acting on each `b_τ`.
pub fn nerve_map(phi: &[IntMatrix], source: &DoldKanNerve, target: &DoldKanNerve) -> Result<ObjectMorphism> {
    let trunc = source.trunc();
    if target.trunc() != trunc || phi.len() < trunc + 1 {
        return Err(Error::Shape("chain map and nerves disagree on truncation".into()));
    }
    let mut components = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let (ls, lt) = (source.layout(n), target.layout(n));
        let mut block = IntMatrix::zeros(lt.dim, ls.dim);
        for (k, tau) in ls.cells.iter().enumerate() {
            block.set_block(lt.offsets[k], ls.offsets[k], &phi[tau.src()]);
        }
        components.push(target.to_cell_coordinates(n, &(&block * source.kernel_basis(n)))?);
    }
    Ok(ObjectMorphism { components })
}

//! Morphisms of the indexing categories Δ ⊂ Ξ ⊂ Λ∞.
//!
//! A morphism `⟨m⟩ → ⟨n⟩` is a weakly increasing map `ℤ → ℤ` with
//! `f(a + m + 1) = f(a) + n + 1`. It is determined by its values on the
//! fundamental domain `{0, …, m}`, which is all [`XiMap`] stores.
//!
//! Generator conventions:
//! - `∂_i : ⟨n−1⟩ → ⟨n⟩` skips `i`, for `0 ≤ i ≤ n`;
//! - `σ_i : ⟨n+1⟩ → ⟨n⟩` repeats `i`, for `0 ≤ i ≤ n`; `σ_{n+1}` is the extra
//!   duplicial degeneracy with values `(0, 1, …, n, n+1)`;
//! - `t_n^k : ⟨n⟩ → ⟨n⟩` is `a ↦ a + k`, and `t_n = σ_{n+1} ∘ ∂_0`.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

/// Which category a morphism is regarded in. Δ ⊂ Ξ ⊂ Λ∞, ordered accordingly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    Delta,
    Xi,
    ParaCyclic,
}

impl Flavor {
    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Delta => "Delta",
            Flavor::Xi => "Xi",
            Flavor::ParaCyclic => "ParaCyclic",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "Delta" => Ok(Flavor::Delta),
            "Xi" => Ok(Flavor::Xi),
            "ParaCyclic" => Ok(Flavor::ParaCyclic),
            other => Err(Error::Parse(format!("unknown flavor {other:?}"))),
        }
    }
}

/// A morphism `⟨src⟩ → ⟨tgt⟩`, stored by its fundamental-domain values.
///
/// Equality compares the underlying morphism (degrees and values); the
/// flavor only records which category the map was constructed in.
#[derive(Clone, Debug, Eq)]
pub struct XiMap {
    flavor: Flavor,
    src: usize,
    tgt: usize,
    values: Vec<i64>,
}

impl PartialEq for XiMap {
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src && self.tgt == other.tgt && self.values == other.values
    }
}

impl std::hash::Hash for XiMap {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.src.hash(state);
        self.tgt.hash(state);
        self.values.hash(state);
    }
}

impl fmt::Display for XiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({}): ⟨{}⟩→⟨{}⟩", vals.join(","), self.src, self.tgt)
    }
}

impl XiMap {
    pub fn new(flavor: Flavor, src: usize, tgt: usize, values: Vec<i64>) -> Result<Self> {
        if values.len() != src + 1 {
            return Err(Error::InvalidMap(format!(
                "{} values for a map out of ⟨{src}⟩",
                values.len()
            )));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidMap(format!("values {values:?} are not weakly increasing")));
        }
        let first = values[0];
        let last = values[src];
        if last > first + tgt as i64 + 1 {
            return Err(Error::InvalidMap(format!(
                "values {values:?} violate periodicity into ⟨{tgt}⟩"
            )));
        }
        match flavor {
            Flavor::Xi if first < 0 => {
                return Err(Error::InvalidMap(format!("Ξ-map with f(0) = {first} < 0")))
            }
            Flavor::Delta if first < 0 || last > tgt as i64 => {
                return Err(Error::InvalidMap(format!("values {values:?} do not define a Δ-map into [{tgt}]")))
            }
            _ => {}
        }
        Ok(XiMap {
            flavor,
            src,
            tgt,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        XiMap {
            flavor: Flavor::Delta,
            src: n,
            tgt: n,
            values: (0..=n as i64).collect(),
        }
    }

    /// `∂_i : ⟨n−1⟩ → ⟨n⟩`.
    pub fn face(n: usize, i: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(Error::IndexOutOfRange(format!("face ∂_{i} into ⟨{n}⟩")));
        }
        let values = (0..n).map(|j| if j < i { j as i64 } else { j as i64 + 1 }).collect();
        Ok(XiMap {
            flavor: Flavor::Delta,
            src: n - 1,
            tgt: n,
            values,
        })
    }

    /// `σ_i : ⟨n+1⟩ → ⟨n⟩`; `i = n + 1` is the extra degeneracy.
    pub fn degeneracy(n: usize, i: usize) -> Result<Self> {
        if i > n + 1 {
            return Err(Error::IndexOutOfRange(format!("degeneracy σ_{i} onto ⟨{n}⟩")));
        }
        if i == n + 1 {
            return Ok(XiMap {
                flavor: Flavor::Xi,
                src: n + 1,
                tgt: n,
                values: (0..=n as i64 + 1).collect(),
            });
        }
        let values = (0..=n + 1).map(|j| if j <= i { j as i64 } else { j as i64 - 1 }).collect();
        Ok(XiMap {
            flavor: Flavor::Delta,
            src: n + 1,
            tgt: n,
            values,
        })
    }

    /// `t_n^k`. Nonnegative powers live in Ξ, negative ones only in Λ∞.
    pub fn shift(n: usize, k: i64) -> Self {
        let flavor = match k {
            0 => Flavor::Delta,
            k if k > 0 => Flavor::Xi,
            _ => Flavor::ParaCyclic,
        };
        XiMap {
            flavor,
            src: n,
            tgt: n,
            values: (0..=n as i64).map(|j| j + k).collect(),
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Regards the same morphism in a larger category.
    pub fn widen(mut self, flavor: Flavor) -> Self {
        self.flavor = self.flavor.max(flavor);
        self
    }

    /// The periodic extension at an arbitrary integer.
    pub fn eval_at(&self, a: i64) -> i64 {
        let period = self.src as i64 + 1;
        let q = a.div_euclid(period);
        let r = a.rem_euclid(period) as usize;
        self.values[r] + q * (self.tgt as i64 + 1)
    }

    pub fn is_injective_on_fd(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_delta(&self) -> bool {
        self.values[0] >= 0 && self.values[self.src] <= self.tgt as i64
    }

    /// The least flavor this morphism belongs to.
    pub fn natural_flavor(&self) -> Flavor {
        if self.is_delta() {
            Flavor::Delta
        } else if self.values[0] >= 0 {
            Flavor::Xi
        } else {
            Flavor::ParaCyclic
        }
    }
}

/// `g ∘ f`.
pub fn compose(g: &XiMap, f: &XiMap) -> Result<XiMap> {
    if f.tgt != g.src {
        return Err(Error::DegreeMismatch(format!("cannot compose {g} after {f}")));
    }
    Ok(XiMap {
        flavor: f.flavor.max(g.flavor),
        src: f.src,
        tgt: g.tgt,
        values: f.values.iter().map(|&v| g.eval_at(v)).collect(),
    })
}

/// Pointwise order `f ≤ g`, i.e. a 2-morphism `f ⇒ g`.
pub fn two_morphism_leq(f: &XiMap, g: &XiMap) -> Result<bool> {
    if f.src != g.src || f.tgt != g.tgt {
        return Err(Error::DegreeMismatch(format!("cannot compare {f} with {g}")));
    }
    Ok(f.values.iter().zip(&g.values).all(|(a, b)| a <= b))
}

/// Whether `l ⊣ r`: `l ∘ r ≤ id` and `id ≤ r ∘ l`. In a poset-enriched
/// 2-category these two inequalities already are the adjunction.
pub fn verify_adjunction(l: &XiMap, r: &XiMap) -> Result<bool> {
    if l.tgt != r.src || r.tgt != l.src {
        return Err(Error::DegreeMismatch(format!("{l} and {r} are not opposed")));
    }
    let counit_ok = two_morphism_leq(&compose(l, r)?, &XiMap::identity(l.tgt))?;
    let unit_ok = two_morphism_leq(&XiMap::identity(l.src), &compose(r, l)?)?;
    Ok(counit_ok && unit_ok)
}

/// The chain `d_0 ⊣ s_0 ⊣ d_1 ⊣ … ⊣ d_n ⊣ s_n` between `⟨n⟩` and `⟨n−1⟩`,
/// translated to Ξ: `d_i ⊣ s_i` is `σ_i ⊣ ∂_i` and `s_i ⊣ d_{i+1}` is
/// `∂_{i+1} ⊣ σ_i`. Returns a label and verdict for each consecutive pair.
pub fn duplicial_adjunction_chain(n: usize) -> Result<Vec<(String, bool)>> {
    if n == 0 {
        return Err(Error::IndexOutOfRange("the chain needs n ≥ 1".into()));
    }
    let mut out = Vec::with_capacity(2 * n + 1);
    for i in 0..=n {
        let sigma = XiMap::degeneracy(n - 1, i)?;
        let partial = XiMap::face(n, i)?;
        out.push((format!("d_{i} ⊣ s_{i}"), verify_adjunction(&sigma, &partial)?));
        if i < n {
            let next = XiMap::face(n, i + 1)?;
            out.push((format!("s_{i} ⊣ d_{}", i + 1), verify_adjunction(&next, &sigma)?));
        }
    }
    Ok(out)
}

/// The cube vertex `f_n(a) : [n] → [n]`, `j ↦ j + a_j` with `a_n = 0`.
pub fn cube_f(n: usize, a: &[bool]) -> Result<XiMap> {
    if a.len() != n {
        return Err(Error::Shape(format!("cube vertex of length {} in dimension {n}", a.len())));
    }
    let values = (0..=n).map(|j| j as i64 + i64::from(j < n && a[j])).collect();
    XiMap::new(Flavor::Delta, n, n, values)
}

/// A generator of Ξ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `∂_i : ⟨n−1⟩ → ⟨n⟩`
    Face { n: usize, i: usize },
    /// `σ_i : ⟨n+1⟩ → ⟨n⟩`
    Degeneracy { n: usize, i: usize },
    /// `t_n^k : ⟨n⟩ → ⟨n⟩`
    Shift { n: usize, k: i64 },
}

impl Generator {
    pub fn src(&self) -> usize {
        match *self {
            Generator::Face { n, .. } => n - 1,
            Generator::Degeneracy { n, .. } => n + 1,
            Generator::Shift { n, .. } => n,
        }
    }

    pub fn tgt(&self) -> usize {
        match *self {
            Generator::Face { n, .. } | Generator::Degeneracy { n, .. } | Generator::Shift { n, .. } => n,
        }
    }

    pub fn to_map(&self) -> Result<XiMap> {
        match *self {
            Generator::Face { n, i } => XiMap::face(n, i),
            Generator::Degeneracy { n, i } => XiMap::degeneracy(n, i),
            Generator::Shift { n, k } => Ok(XiMap::shift(n, k)),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::Face { n, i } => write!(f, "∂_{i}[{n}]"),
            Generator::Degeneracy { n, i } => write!(f, "σ_{i}[{n}]"),
            Generator::Shift { n, k } => write!(f, "t_{n}^{k}"),
        }
    }
}

/// Generators listed in order of application: `[g_1, …, g_k]` denotes
/// `g_k ∘ … ∘ g_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorWord {
    src: usize,
    tokens: Vec<Generator>,
}

impl GeneratorWord {
    pub fn new(src: usize, tokens: Vec<Generator>) -> Result<Self> {
        let mut at = src;
        for t in &tokens {
            if t.src() != at {
                return Err(Error::DegreeMismatch(format!("{t} does not start at ⟨{at}⟩")));
            }
            at = t.tgt();
        }
        Ok(GeneratorWord { src, tokens })
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tokens.last().map_or(self.src, Generator::tgt)
    }

    pub fn tokens(&self) -> &[Generator] {
        &self.tokens
    }

    pub fn compose(&self) -> Result<XiMap> {
        let mut acc = XiMap::identity(self.src);
        for t in &self.tokens {
            acc = compose(&t.to_map()?, &acc)?;
        }
        Ok(acc)
    }
}

/// Factors a Δ- or Ξ-map as degeneracies, then a shift power, then faces.
///
/// Degeneracies are peeled off the source (ordinary ones first, then the
/// extra one when the last value wraps to `f(0) + n + 1`), faces off the
/// target at the first missed value. What remains is `t_p^{f(0)}`. Every
/// intermediate degree is at most `max(src, tgt)`. Δ-maps yield classical
/// epi-mono words without shifts or extra degeneracies.
pub fn factorize(f: &XiMap) -> Result<GeneratorWord> {
    if f.values[0] < 0 {
        return Err(Error::InvalidMap(format!("{f} is not a Ξ-map; Λ∞ maps are not factorized")));
    }
    let n = f.tgt;
    let period = n as i64 + 1;
    let mut vals = f.values.clone();
    let mut degens = Vec::new();
    loop {
        let m = vals.len() - 1;
        if let Some(i) = (0..m).find(|&i| vals[i] == vals[i + 1]) {
            degens.push(Generator::Degeneracy { n: m - 1, i });
            vals.remove(i + 1);
        } else if m >= 1 && vals[m] == vals[0] + period {
            degens.push(Generator::Degeneracy { n: m - 1, i: m });
            vals.pop();
        } else {
            break;
        }
    }

    let mut faces = Vec::new();
    let mut tgt = n;
    while vals.len() - 1 < tgt {
        let first = vals[0];
        let p = tgt as i64 + 1;
        let missing = (first + 1..=first + tgt as i64)
            .find(|v| !vals.contains(v))
            .expect("an injective map into a larger degree misses a value");
        let i = missing.rem_euclid(p);
        faces.push(Generator::Face { n: tgt, i: i as usize });
        for v in vals.iter_mut() {
            let q = v.div_euclid(p);
            let r = v.rem_euclid(p);
            debug_assert_ne!(r, i);
            *v = q * tgt as i64 + if r < i { r } else { r - 1 };
        }
        tgt -= 1;
    }

    let mut tokens = degens;
    if vals[0] != 0 {
        tokens.push(Generator::Shift { n: tgt, k: vals[0] });
    }
    tokens.extend(faces.into_iter().rev());
    GeneratorWord::new(f.src, tokens)
}

/// All monotone maps `[m] → [n]`, lexicographic.
pub fn delta_maps(m: usize, n: usize) -> Vec<XiMap> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn rec(m: usize, n: i64, lo: i64, cur: &mut Vec<i64>, out: &mut Vec<XiMap>) {
        if cur.len() == m + 1 {
            out.push(XiMap {
                flavor: Flavor::Delta,
                src: m,
                tgt: n as usize,
                values: cur.clone(),
            });
            return;
        }
        for v in lo..=n {
            cur.push(v);
            rec(m, n, v, cur, out);
            cur.pop();
        }
    }
    rec(m, n as i64, 0, &mut cur, &mut out);
    out
}

/// Injective monotone maps `[m] ↪ [n]`, lexicographic.
pub fn injective_delta_maps(m: usize, n: usize) -> Vec<XiMap> {
    delta_maps(m, n).into_iter().filter(XiMap::is_injective_on_fd).collect()
}

/// Ξ-maps `⟨m⟩ → ⟨n⟩` with `f(m) ≤ max_value`, lexicographic.
pub fn bounded_xi_maps(m: usize, n: usize, max_value: i64) -> Vec<XiMap> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn rec(m: usize, n: i64, max_value: i64, lo: i64, cur: &mut Vec<i64>, out: &mut Vec<XiMap>) {
        if cur.len() == m + 1 {
            out.push(XiMap {
                flavor: Flavor::Xi,
                src: m,
                tgt: n as usize,
                values: cur.clone(),
            });
            return;
        }
        let hi = match cur.first() {
            Some(&f0) => max_value.min(f0 + n + 1),
            None => max_value,
        };
        for v in lo..=hi {
            cur.push(v);
            rec(m, n, max_value, v, cur, out);
            cur.pop();
        }
    }
    rec(m, n as i64, max_value, 0, &mut cur, &mut out);
    out
}

/// A random Ξ-map `⟨m⟩ → ⟨n⟩` with `f(0) ≤ max_first`.
pub fn random_xi_map<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize, max_first: i64) -> XiMap {
    let first = rng.gen_range(0..=max_first);
    let top = first + n as i64 + 1;
    let mut rest: Vec<i64> = (0..m).map(|_| rng.gen_range(first..=top)).collect();
    rest.sort_unstable();
    let mut values = Vec::with_capacity(m + 1);
    values.push(first);
    values.extend(rest);
    XiMap {
        flavor: Flavor::Xi,
        src: m,
        tgt: n,
        values,
    }
}

/// A random monotone map `[m] → [n]`.
pub fn random_delta_map<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize) -> XiMap {
    let mut values: Vec<i64> = (0..=m).map(|_| rng.gen_range(0..=n as i64)).collect();
    values.sort_unstable();
    XiMap {
        flavor: Flavor::Delta,
        src: m,
        tgt: n,
        values,
    }
}

//! Exchange-algebra rewriting of words in abstract Lax letters.
//!
//! A [`WordExpression`] is a formal sum `Σ_w c_w[i₁,j₁,…,i_k,j_k] L^{w₁}_{i₁j₁} ⋯ L^{w_k}_{i_kj_k}`.
//! Every exchange relation is used as a linear map on the four coefficient
//! axes of two adjacent letters, so normal ordering is plain tensor algebra
//! at one numerical parameter point.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::models::RModel;
use crate::param::ParamPoint;
use crate::tensor::{CMatrix, Residual, C64};

/// Auxiliary slot of a letter; `Lambda` sits in aux space 1, `Mu` in aux space 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Mu,
    Lambda,
}

/// Lax letter `L̂ⁿ(λ)` or `L̂ⁿ(μ)`; in monodromy layout the single site carries `T̂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub site: usize,
    pub slot: Slot,
}

impl Letter {
    pub fn new(site: usize, slot: Slot) -> Self {
        Self { site, slot }
    }

    /// Target order: site descending, then `Mu` before `Lambda`.
    fn order_key(self) -> (Reverse<usize>, Slot) {
        (Reverse(self.site), self.slot)
    }

    pub fn target_cmp(self, other: Letter) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

pub type Word = Vec<Letter>;

/// Number of target-order inversions; every rule application lowers it by one.
pub fn inversions(word: &[Letter]) -> usize {
    let mut n = 0;
    for (i, a) in word.iter().enumerate() {
        n += word[i + 1..].iter().filter(|b| a.target_cmp(**b) == Ordering::Greater).count();
    }
    n
}

pub fn is_ordered(word: &[Letter]) -> bool {
    word.windows(2).all(|w| w[0].target_cmp(w[1]) != Ordering::Greater)
}

/// Upper bound on complex entries held by one coefficient tensor or exchange map.
pub const MAX_ENTRIES: usize = 1 << 22;

/// Formal linear combination of words with dense coefficient tensors.
#[derive(Clone, Debug, PartialEq)]
pub struct WordExpression {
    dim: usize,
    terms: BTreeMap<Word, Vec<C64>>,
}

impl WordExpression {
    pub fn new(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of coefficient entries for a word of `letters` letters.
    pub fn entries(dim: usize, letters: usize) -> Result<usize> {
        let exp = u32::try_from(letters.saturating_mul(2)).unwrap_or(u32::MAX);
        dim.checked_pow(exp).filter(|&n| n <= MAX_ENTRIES).ok_or(Error::MemoryBound(dim.saturating_pow(exp)))
    }

    /// Adds `coef` to the term of `word`; all words must carry the same letter multiset.
    pub fn add_term(&mut self, word: Word, coef: Vec<C64>) -> Result<()> {
        let n = Self::entries(self.dim, word.len())?;
        if coef.len() != n {
            return Err(Error::Dimension(format!("word of {} letters needs {n} coefficients", word.len())));
        }
        if let Some(first) = self.terms.keys().next() {
            if multiset(first) != multiset(&word) {
                return Err(Error::Config("words of one expression must share their letters".into()));
            }
        }
        match self.terms.get_mut(&word) {
            Some(acc) => acc.iter_mut().zip(&coef).for_each(|(a, b)| *a += b),
            None => {
                self.terms.insert(word, coef);
            }
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &[C64])> {
        self.terms.iter().map(|(w, c)| (w, c.as_slice()))
    }

    pub fn coefficient(&self, word: &[Letter]) -> Option<&[C64]> {
        self.terms.get(word).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_normal_ordered(&self) -> bool {
        self.terms.keys().all(|w| is_ordered(w))
    }

    /// Frobenius norm over all terms.
    pub fn norm(&self) -> f64 {
        self.terms.values().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖self − other‖`, treating missing words as zero.
    pub fn distance(&self, other: &WordExpression) -> f64 {
        let mut sq = 0.0;
        for (w, c) in &self.terms {
            sq += match other.terms.get(w) {
                Some(o) => c.iter().zip(o).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>(),
                None => c.iter().map(|z| z.norm_sqr()).sum(),
            };
        }
        for (w, o) in &other.terms {
            if !self.terms.contains_key(w) {
                sq += o.iter().map(|z| z.norm_sqr()).sum::<f64>();
            }
        }
        sq.sqrt()
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.iter().any(|z| z.re != 0.0 || z.im != 0.0));
    }
}

fn multiset(word: &[Letter]) -> Vec<Letter> {
    let mut v = word.to_vec();
    v.sort();
    v
}

/// How the letters of a monodromy are laid out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    /// One letter per spectral parameter standing for the whole monodromy `T̂`, exchanged by the global relation.
    Monodromy,
    /// `T̂ = L̂ᴺ γ ⋯ γ L̂¹` on an open chain.
    Open(usize),
    /// As `Open`, with sites `N` and `1` adjacent; needs `N ≥ 3`.
    Periodic(usize),
}

impl Layout {
    pub fn sites(self) -> usize {
        match self {
            Layout::Monodromy => 1,
            Layout::Open(n) | Layout::Periodic(n) => n,
        }
    }

    fn next(self, n: usize) -> Option<usize> {
        match self {
            Layout::Monodromy => None,
            Layout::Open(len) => (n < len).then_some(n + 1),
            Layout::Periodic(len) => Some(if n < len { n + 1 } else { 1 }),
        }
    }

    /// Layout of the `transfer_commutator` site counts.
    pub fn for_sites(n_sites: usize) -> Result<Self> {
        match n_sites {
            1 => Ok(Layout::Monodromy),
            2 => Ok(Layout::Open(2)),
            n => Err(Error::Config(format!("n_sites must be 1 or 2, got {n}"))),
        }
    }
}

/// Condition bound above which an exchange map is rejected.
pub const MAX_EXCHANGE_CONDITION: f64 = 1e8;

/// Linear map on the four coefficient axes `(i₁,j₁,i₂,j₂)` of an adjacent letter pair.
#[derive(Clone, Debug)]
enum BlockMap {
    /// New block `= M · old`.
    Dense(CMatrix),
    Swap,
    Monodromy(Box<MonodromyMap>),
}

/// Reorders `T(λ)T(μ) → T(μ)T(λ)` through `𝒜₁₂T₁ℬ₁₂T₂ = T₂𝒞₁₂T₁𝒟₁₂`.
///
/// The left side factorizes as `M′ ⊗ 1`, so only a `d³×d³` matrix is inverted.
#[derive(Clone, Debug)]
struct MonodromyMap {
    d: usize,
    /// `(M′)⁻ᵀ`.
    ml_inv_t: CMatrix,
    c: CMatrix,
    d_mat: CMatrix,
}

impl MonodromyMap {
    fn new(a: &CMatrix, b: &CMatrix, c: &CMatrix, dm: &CMatrix, d: usize) -> Result<(Self, f64)> {
        let t = |x: &CMatrix, i: usize, j: usize, k: usize, l: usize| x[(i * d + j, k * d + l)];
        let d3 = d * d * d;
        // M′[(i,j,m),(I,k,l)] = Σ_J 𝒜[i,j,I,J] ℬ[k,J,m,l]
        let ml = CMatrix::from_fn(d3, d3, |r, s| {
            let (i, j, m) = (r / (d * d), (r / d) % d, r % d);
            let (ii, k, l) = (s / (d * d), (s / d) % d, s % d);
            (0..d).map(|jj| t(a, i, j, ii, jj) * t(b, k, jj, m, l)).sum()
        });
        let (inv, cond) = ml.inverse_with_condition().map_err(|_| Error::SingularExchange(f64::INFINITY))?;
        if cond.is_nan() || cond >= MAX_EXCHANGE_CONDITION {
            return Err(Error::SingularExchange(cond));
        }
        Ok((Self { d, ml_inv_t: inv.transpose(), c: c.clone(), d_mat: dm.clone() }, cond))
    }

    /// Maps one `d⁴` coefficient vector over `T(λ)_{Ik} T(μ)_{ln}` to `T(μ)_{jl} T(λ)_{kK}`.
    fn apply_vec(&self, x: &[C64]) -> Vec<C64> {
        let d = self.d;
        let d2 = d * d;
        // Z = (M′)⁻ᵀ acting on the (I,k,l) index, n passing through
        let xm = CMatrix::from_row_major(d * d2, d, x.to_vec()).expect("block size");
        let z = self.ml_inv_t.matmul(&xm);
        // W[(i,j),(K,K′)] = Σ_{m,n} Z[i,j,m,n] 𝒟[K,K′,m,n]
        let zm = CMatrix::from_row_major(d2, d2, z.as_slice().to_vec()).expect("block size");
        let w = zm.matmul(&self.d_mat.transpose());
        let mut out = vec![C64::new(0.0, 0.0); d2 * d2];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for kp in 0..d {
                        for kk in 0..d {
                            let wv = w[(i * d + j, kk * d + kp)];
                            if wv.re == 0.0 && wv.im == 0.0 {
                                continue;
                            }
                            for l in 0..d {
                                out[((j * d + l) * d + k) * d + kk] += wv * self.c[(i * d + l, k * d + kp)];
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

impl BlockMap {
    /// Applies the map to a `d⁴ × post` block stored row-major.
    fn apply(&self, block: Vec<C64>, d: usize, post: usize) -> Vec<C64> {
        let d2 = d * d;
        match self {
            BlockMap::Dense(m) => {
                let x = CMatrix::from_row_major(d2 * d2, post, block).expect("block size");
                m.matmul(&x).as_slice().to_vec()
            }
            BlockMap::Swap => {
                let mut out = vec![C64::new(0.0, 0.0); block.len()];
                for a in 0..d2 {
                    for b in 0..d2 {
                        let (src, dst) = ((a * d2 + b) * post, (b * d2 + a) * post);
                        out[dst..dst + post].copy_from_slice(&block[src..src + post]);
                    }
                }
                out
            }
            BlockMap::Monodromy(mm) => {
                let n = d2 * d2;
                let mut out = vec![C64::new(0.0, 0.0); block.len()];
                for r in 0..post {
                    let col: Vec<C64> = (0..n).map(|x| block[x * post + r]).collect();
                    for (x, v) in mm.apply_vec(&col).into_iter().enumerate() {
                        out[x * post + r] = v;
                    }
                }
                out
            }
        }
    }
}

/// Exchange rules of one model at one parameter point.
#[derive(Clone, Debug)]
pub struct ExchangeRuleSet {
    dim: usize,
    layout: Layout,
    same_site: BlockMap,
    adjacent: Option<BlockMap>,
    adjacent_inverse: Option<BlockMap>,
    /// Condition estimate of the same-site left map.
    pub condition: f64,
    /// `(M_R⁻¹M_L)(M_L⁻¹M_R)`, kept for the round-trip invariant; absent in monodromy layout.
    roundtrip: Option<CMatrix>,
}

/// `𝒳[i₁,i₂,j₁,j₂]` for a two-leg matrix with composite indices `i₁d+i₂`.
fn at(x: &CMatrix, d: usize, i1: usize, i2: usize, j1: usize, j2: usize) -> C64 {
    x[(i1 * d + i2, j1 * d + j2)]
}

fn block_index(d: usize, a: usize, b: usize, c: usize, e: usize) -> usize {
    ((a * d + b) * d + c) * d + e
}

fn checked(m: &CMatrix) -> Result<(CMatrix, f64)> {
    let (inv, cond) = m.inverse_with_condition().map_err(|_| Error::SingularExchange(f64::INFINITY))?;
    if cond.is_nan() || cond >= MAX_EXCHANGE_CONDITION {
        return Err(Error::SingularExchange(cond));
    }
    Ok((inv, cond))
}

impl ExchangeRuleSet {
    /// Builds the rules; `𝒜`, `𝒟` enter at `λ/μ` for the `Lambda` letter to the left.
    pub fn build(model: &dyn RModel, pt: &ParamPoint, layout: Layout) -> Result<Self> {
        let d = model.dim();
        if let Layout::Periodic(n) = layout {
            if n < 3 {
                return Err(Error::Config("a periodic chain needs at least 3 sites".into()));
            }
        }
        if layout.sites() == 0 {
            return Err(Error::Config("a chain needs at least one site".into()));
        }
        let x = pt.ratio();
        let a = model.a_q(pt.p, x)?;
        let dm = model.d_q(pt.p, x)?;
        let c = model.c_q(pt.p);
        if layout == Layout::Monodromy {
            let (mm, cond) = MonodromyMap::new(&a, &model.b_q(pt.p), &c, &dm, d)?;
            return Ok(Self {
                dim: d,
                layout,
                same_site: BlockMap::Monodromy(Box::new(mm)),
                adjacent: None,
                adjacent_inverse: None,
                condition: cond,
                roundtrip: None,
            });
        }
        let n4 = d.pow(4);
        if n4 * n4 > MAX_ENTRIES {
            return Err(Error::MemoryBound(n4 * n4));
        }
        // 𝒜₁₂L₁(λ)L₂(μ) = L₂(μ)L₁(λ)𝒟₁₂ in components: M_L X = M_R Y with
        // X[k,j₁,l,j₂] = L(λ)_{kj₁}L(μ)_{lj₂}, Y[i₂,m,i₁,n] = L(μ)_{i₂m}L(λ)_{i₁n}
        let mut ml = CMatrix::zeros(n4, n4);
        let mut mr = CMatrix::zeros(n4, n4);
        for i1 in 0..d {
            for i2 in 0..d {
                for j1 in 0..d {
                    for j2 in 0..d {
                        let row = block_index(d, i1, i2, j1, j2);
                        for k in 0..d {
                            for l in 0..d {
                                ml[(row, block_index(d, k, j1, l, j2))] = at(&a, d, i1, i2, k, l);
                                mr[(row, block_index(d, i2, l, i1, k))] = at(&dm, d, k, l, j1, j2);
                            }
                        }
                    }
                }
            }
        }
        let (ml_inv, cond_l) = checked(&ml)?;
        let (mr_inv, cond_r) = checked(&mr)?;
        let forward = &ml_inv * &mr;
        let roundtrip = (&mr_inv * &ml) * &forward;
        // coefficients of X expressed through Y transform with the transpose
        let same_site = BlockMap::Dense(forward.transpose());

        // ℒⁿ_{ij}ℒⁿ⁺¹_{kl} = Σ ℒⁿ⁺¹_{km} 𝒞[i,m,s,l] ℒⁿ_{sj}
        let mut adj = CMatrix::zeros(n4, n4);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let col = block_index(d, i, j, k, l);
                        for m in 0..d {
                            for s in 0..d {
                                adj[(block_index(d, k, m, s, j), col)] = at(&c, d, i, m, s, l);
                            }
                        }
                    }
                }
            }
        }
        // inverse direction through the reshuffle Cr[(i,l),(m,s)] = 𝒞[i,m,s,l]
        let cr = CMatrix::from_fn(d * d, d * d, |r, s| at(&c, d, r / d, s / d, s % d, r % d));
        let (cr_inv, _) = checked(&cr)?;
        let mut adj_inv = CMatrix::zeros(n4, n4);
        for k in 0..d {
            for m in 0..d {
                for s in 0..d {
                    for j in 0..d {
                        let col = block_index(d, k, m, s, j);
                        for i in 0..d {
                            for l in 0..d {
                                adj_inv[(block_index(d, i, j, k, l), col)] = cr_inv[(m * d + s, i * d + l)];
                            }
                        }
                    }
                }
            }
        }
        Ok(Self {
            dim: d,
            layout,
            same_site,
            adjacent: Some(BlockMap::Dense(adj)),
            adjacent_inverse: Some(BlockMap::Dense(adj_inv)),
            condition: cond_l.max(cond_r),
            roundtrip: Some(roundtrip),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    /// Distance of the same-site map composed with its inverse-role counterpart from the identity.
    pub fn roundtrip_residual(&self) -> Option<Residual> {
        self.roundtrip.as_ref().map(|m| Residual::between(m, &CMatrix::identity(m.rows())))
    }

    /// Rule exchanging `first · second` into `second · first`.
    fn rule(&self, first: Letter, second: Letter) -> Result<&BlockMap> {
        if first.site == second.site {
            if first.slot == Slot::Lambda && second.slot == Slot::Mu {
                return Ok(&self.same_site);
            }
            return Err(Error::Config(format!("no exchange rule for {first:?} {second:?}")));
        }
        if self.layout.next(first.site) == Some(second.site) {
            return self.adjacent.as_ref().ok_or_else(|| Error::Config("layout has no adjacent sites".into()));
        }
        if self.layout.next(second.site) == Some(first.site) {
            return self.adjacent_inverse.as_ref().ok_or_else(|| Error::Config("layout has no adjacent sites".into()));
        }
        Ok(&BlockMap::Swap)
    }

    /// Exchanges the letters at positions `j`, `j+1` of one term.
    pub fn exchange(&self, word: &[Letter], coef: &[C64], j: usize) -> Result<(Word, Vec<C64>)> {
        let k = word.len();
        if j + 1 >= k {
            return Err(Error::Dimension(format!("no letter pair at position {j} of a {k}-letter word")));
        }
        let map = self.rule(word[j], word[j + 1])?;
        let d = self.dim;
        let blk = d.pow(4);
        let post = d.pow(2 * (k - j - 2) as u32);
        let pre = coef.len() / (blk * post);
        let mut out = Vec::with_capacity(coef.len());
        for p in 0..pre {
            let block = coef[p * blk * post..(p + 1) * blk * post].to_vec();
            out.extend(map.apply(block, d, post));
        }
        let mut w = word.to_vec();
        w.swap(j, j + 1);
        Ok((w, out))
    }
}

/// Which out-of-order pair to rewrite first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
}

/// Rewrites every word into target order.
pub fn normal_order(expr: &WordExpression, rules: &ExchangeRuleSet) -> Result<WordExpression> {
    normal_order_with(expr, rules, Strategy::Leftmost)
}

pub fn normal_order_with(expr: &WordExpression, rules: &ExchangeRuleSet, strategy: Strategy) -> Result<WordExpression> {
    if expr.dim != rules.dim {
        return Err(Error::Dimension(format!("expression over d={}, rules over d={}", expr.dim, rules.dim)));
    }
    let mut current = expr.clone();
    loop {
        let mut next = WordExpression::new(expr.dim);
        let mut changed = false;
        for (word, coef) in &current.terms {
            let pos =
                (0..word.len().saturating_sub(1)).filter(|&j| word[j].target_cmp(word[j + 1]) == Ordering::Greater);
            let pos = match strategy {
                Strategy::Leftmost => pos.min(),
                Strategy::Rightmost => pos.max(),
            };
            let (w, c) = match pos {
                Some(j) => {
                    changed = true;
                    rules.exchange(word, coef, j)?
                }
                None => (word.clone(), coef.clone()),
            };
            next.add_term(w, c)?;
        }
        next.prune();
        if !changed {
            return Ok(next);
        }
        current = next;
    }
}

/// Letters of `T̂` for one slot, leftmost first.
pub fn monodromy_word(layout: Layout, slot: Slot) -> Word {
    (1..=layout.sites()).rev().map(|s| Letter::new(s, slot)).collect()
}

/// Coefficients of `T̂_{xy}`: letter axes followed by the free pair `(x, y)`.
fn monodromy_coefficients(d: usize, sites: usize, gamma: &[C64]) -> Vec<C64> {
    let letter_axes = d.pow(2 * sites as u32);
    let mut out = vec![C64::new(0.0, 0.0); letter_axes * d * d];
    // chain x = b₀, b₁, …, b_N = y; letter k carries (b_k, b_{k+1})
    let total = d.pow(sites as u32 + 1);
    for flat in 0..total {
        let chain: Vec<usize> = (0..=sites).map(|k| (flat / d.pow((sites - k) as u32)) % d).collect();
        let coef: C64 = chain[1..sites].iter().map(|&b| gamma[b]).product();
        let mut idx = 0;
        for k in 0..sites {
            idx = (idx * d + chain[k]) * d + chain[k + 1];
        }
        out[(idx * d + chain[0]) * d + chain[sites]] = coef;
    }
    out
}

/// Coefficients of `tr(γ̃ᵗ T̂)` over its letter axes.
fn transfer_coefficients(d: usize, sites: usize, gamma: &[C64], gamma_tilde: &[C64]) -> Vec<C64> {
    let t = monodromy_coefficients(d, sites, gamma);
    let n = d.pow(2 * sites as u32);
    (0..n).map(|i| (0..d).map(|a| gamma_tilde[a] * t[(i * d + a) * d + a]).sum()).collect()
}

fn outer(x: &[C64], y: &[C64]) -> Vec<C64> {
    x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect()
}

fn relative(lhs: &WordExpression, rhs: &WordExpression) -> Residual {
    Residual::from_parts(lhs.distance(rhs), lhs.norm().max(rhs.norm()))
}

/// Checks the letter budget before any allocation.
fn guard(d: usize, layout: Layout) -> Result<()> {
    WordExpression::entries(d, 2 * layout.sites()).map(|_| ())
}

/// `t(λ)t(μ) − t(μ)t(λ)` after normal ordering, relative to the size of the products.
pub fn transfer_commutator_with(model: &dyn RModel, pt: &ParamPoint, layout: Layout) -> Result<Residual> {
    let d = model.dim();
    guard(d, layout)?;
    let rules = ExchangeRuleSet::build(model, pt, layout)?;
    let t = transfer_coefficients(d, layout.sites(), &model.gamma(pt.p), &model.gamma_tilde(pt.p));
    let tt = outer(&t, &t);
    let (wl, wm) = (monodromy_word(layout, Slot::Lambda), monodromy_word(layout, Slot::Mu));
    let mut lm = WordExpression::new(d);
    lm.add_term([wl.clone(), wm.clone()].concat(), tt.clone())?;
    let mut ml = WordExpression::new(d);
    ml.add_term([wm, wl].concat(), tt)?;
    Ok(relative(&normal_order(&lm, &rules)?, &normal_order(&ml, &rules)?))
}

/// Transfer-matrix commutator for `n_sites ∈ {1, 2}`.
pub fn transfer_commutator(model: &dyn RModel, pt: &ParamPoint, n_sites: usize) -> Result<Residual> {
    transfer_commutator_with(model, pt, Layout::for_sites(n_sites)?)
}

/// Seed of the random probes contracting the free indices of the global relation.
pub const PROBE_SEED: u64 = 0x5eed;

/// Both sides of `𝒜₁₂T̂₁ℬ₁₂T̂₂ = T̂₂𝒞₁₂T̂₁𝒟₁₂`, contracted with random probes and normal ordered.
pub fn global_relation_with(model: &dyn RModel, pt: &ParamPoint, layout: Layout) -> Result<Residual> {
    let d = model.dim();
    guard(d, layout)?;
    let rules = ExchangeRuleSet::build(model, pt, layout)?;
    let sites = layout.sites();
    let x = pt.ratio();
    let (a, b, c, dm) = (model.a_q(pt.p, x)?, model.b_q(pt.p), model.c_q(pt.p), model.d_q(pt.p, x)?);
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    let mut probe = || -> Vec<C64> {
        (0..d * d).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()
    };
    let (u, v) = (probe(), probe());
    let g = |x: &CMatrix, i: usize, j: usize, k: usize, l: usize| at(x, d, i, j, k, l);
    // left: Σ u[i₁i₂] 𝒜[i₁,i₂,k,z] T(λ)[k,y] ℬ[y,z,s,r] T(μ)[r,t] v[s,t]
    let mut w_left = vec![C64::new(0.0, 0.0); d.pow(4)];
    // right: Σ u[i,j] T(μ)[j,r] 𝒞[i,r,k,z] T(λ)[k,y] 𝒟[y,z,s,t] v[s,t]
    let mut w_right = vec![C64::new(0.0, 0.0); d.pow(4)];
    let mut ua = vec![C64::new(0.0, 0.0); d * d];
    let mut dv = vec![C64::new(0.0, 0.0); d * d];
    for k in 0..d {
        for z in 0..d {
            for i in 0..d {
                for j in 0..d {
                    ua[k * d + z] += u[i * d + j] * g(&a, i, j, k, z);
                    dv[k * d + z] += g(&dm, k, z, i, j) * v[i * d + j];
                }
            }
        }
    }
    for (k, y, r, t) in quad(d) {
        let mut acc = C64::new(0.0, 0.0);
        for z in 0..d {
            for s in 0..d {
                acc += ua[k * d + z] * g(&b, y, z, s, r) * v[s * d + t];
            }
        }
        w_left[block_index(d, k, y, r, t)] = acc;
    }
    for (j, r, k, y) in quad(d) {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..d {
            for z in 0..d {
                acc += u[i * d + j] * g(&c, i, r, k, z) * dv[y * d + z];
            }
        }
        w_right[block_index(d, j, r, k, y)] = acc;
    }
    let t = monodromy_coefficients(d, sites, &model.gamma(pt.p));
    let (wl, wm) = (monodromy_word(layout, Slot::Lambda), monodromy_word(layout, Slot::Mu));
    let mut lhs = WordExpression::new(d);
    lhs.add_term([wl.clone(), wm.clone()].concat(), contract_pair(&t, &w_left, d))?;
    let mut rhs = WordExpression::new(d);
    rhs.add_term([wm, wl].concat(), contract_pair(&t, &w_right, d))?;
    Ok(relative(&normal_order(&lhs, &rules)?, &normal_order(&rhs, &rules)?))
}

/// Global relation on the open two-site chain.
pub fn global_relation_check(model: &dyn RModel, pt: &ParamPoint) -> Result<Residual> {
    global_relation_with(model, pt, Layout::Open(2))
}

fn quad(d: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..d.pow(4)).map(move |n| (n / (d * d * d), (n / (d * d)) % d, (n / d) % d, n % d))
}

/// `c[w₁,w₂] = Σ T[w₁,a,b] T[w₂,e,f] W[a,b,e,f]`.
fn contract_pair(t: &[C64], w: &[C64], d: usize) -> Vec<C64> {
    let d2 = d * d;
    let n = t.len() / d2;
    let tm = CMatrix::from_row_major(n, d2, t.to_vec()).expect("monodromy size");
    let wm = CMatrix::from_row_major(d2, d2, w.to_vec()).expect("probe size");
    // (T W Tᵀ)[w₁,w₂]
    (tm.matmul(&wm) * tm.transpose()).as_slice().to_vec()
}

/// `‖G∘F − 1‖` for the same-site map `F` at `(λ, μ)` and the map `G` at `(μ, λ)`.
pub fn double_reorder_residual(model: &dyn RModel, pt: &ParamPoint) -> Result<Residual> {
    let d = model.dim();
    let forward = ExchangeRuleSet::build(model, pt, Layout::Open(1))?;
    let back = ExchangeRuleSet::build(model, &ParamPoint::new(pt.p, pt.mu, pt.lambda), Layout::Open(1))?;
    let word = vec![Letter::new(1, Slot::Lambda), Letter::new(1, Slot::Mu)];
    let n = d.pow(4);
    let mut worst = Residual::from_parts(0.0, 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    for _ in 0..3 {
        let x: Vec<C64> = (0..n).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let (w, y) = forward.exchange(&word, &x, 0)?;
        // the swapped point labels the μ letter as Lambda
        let relabeled: Word =
            w.iter().map(|l| Letter::new(l.site, if l.slot == Slot::Mu { Slot::Lambda } else { Slot::Mu })).collect();
        let (_, z) = back.exchange(&relabeled, &y, 0)?;
        let (xm, zm) = (CMatrix::from_row_major(n, 1, x)?, CMatrix::from_row_major(n, 1, z)?);
        worst = worst.worst(Residual::between(&zm, &xm));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inversion_count() {
        let w = [Letter::new(1, Slot::Lambda), Letter::new(2, Slot::Mu), Letter::new(2, Slot::Lambda)];
        assert_eq!(inversions(&w), 2);
        assert!(!is_ordered(&w));
        let sorted = [Letter::new(2, Slot::Mu), Letter::new(2, Slot::Lambda), Letter::new(1, Slot::Lambda)];
        assert_eq!(inversions(&sorted), 0);
    }

    #[test]
    fn entries_are_bounded() {
        assert_eq!(WordExpression::entries(4, 4).unwrap(), 1 << 16);
        assert!(matches!(WordExpression::entries(8, 4), Err(Error::MemoryBound(_))));
        assert!(matches!(WordExpression::entries(4, 6), Err(Error::MemoryBound(_))));
    }

    #[test]
    fn monodromy_coefficients_of_one_site_are_delta() {
        let t = monodromy_coefficients(2, 1, &[C64::new(1.0, 0.0); 2]);
        // T_{xy} = L_{xy}
        for i in 0..2 {
            for j in 0..2 {
                for x in 0..2 {
                    for y in 0..2 {
                        let want = if i == x && j == y { 1.0 } else { 0.0 };
                        assert_eq!(t[((i * 2 + j) * 2 + x) * 2 + y].re, want);
                    }
                }
            }
        }
    }
}

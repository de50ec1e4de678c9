//! Principal-series data of `GL(N,ℂ)`, reduction to Langlands position, and
//! the comparison of candidate homology exponents with `e_ψ`.
//!
//! An entry `(μ, ν)` stands for `λ(z) = (z/z̄)^μ (z z̄)^ν = z^p z̄^q` with
//! `p = ν + μ`, `q = ν - μ`. Exponents are reported in units of `2ν`.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arthur::{e_psi_raw, e_psi_total, ArthurParameter};
use crate::error::{Error, Result};
use crate::exact::{is_integer, q, CplxStr, Cq, RatStr, Q};
use crate::orders::{leq_g, leq_theta, Exponent};
use crate::roots::{cone_membership, CoeffSet, Family, RootSystem};
use crate::twisted::restrict_character;

/// Default bound on `N` for Weyl-orbit scans.
pub const DEFAULT_MAX_RANK: usize = 8;

/// Environment variable overriding [`DEFAULT_MAX_RANK`].
pub const MAX_RANK_ENV: &str = "TORSADE_MAX_RANK";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_rank: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_rank: DEFAULT_MAX_RANK }
    }
}

impl Limits {
    /// Reads [`MAX_RANK_ENV`]; unset or unparsable values give the default.
    pub fn from_env() -> Self {
        let max_rank = std::env::var(MAX_RANK_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_RANK);
        Limits { max_rank }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.max_rank {
            let fact = |k: usize| (1..=k as u128).product::<u128>();
            return Err(Error::OrbitBound { order: fact(n), bound: fact(self.max_rank) });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedEntry {
    pub mu: Q,
    pub nu: Cq,
}

impl InducedEntry {
    pub fn new(mu: Q, nu: Cq) -> Self {
        InducedEntry { mu, nu }
    }

    pub fn p(&self) -> Cq {
        self.nu.clone() + Cq::new(self.mu.clone(), q(0))
    }

    pub fn q(&self) -> Cq {
        self.nu.clone() - Cq::new(self.mu.clone(), q(0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedDatum {
    pub chars: Vec<InducedEntry>,
}

impl InducedDatum {
    pub fn new(chars: Vec<InducedEntry>) -> Result<Self> {
        if let Some(e) = chars.iter().find(|e| !is_integer(&(e.mu.clone() * q(2)))) {
            return Err(Error::Precondition(format!("2μ = {} is not integral", e.mu.clone() * q(2))));
        }
        Ok(InducedDatum { chars })
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    /// `(2ν_1, …, 2ν_N)`.
    pub fn exponent(&self) -> Exponent {
        Exponent::split(self.chars.iter().map(|e| e.nu.clone() * Cq::new(q(2), q(0))).collect())
    }

    /// θ acts by `λ_j ↦ λ_{N+1-j}⁻¹`.
    pub fn theta(&self) -> InducedDatum {
        InducedDatum {
            chars: self.chars.iter().rev().map(|e| InducedEntry::new(-e.mu.clone(), -e.nu.clone())).collect(),
        }
    }

    pub fn is_theta_invariant(&self) -> bool {
        self.theta() == *self
    }
}

fn cmp_entry(a: &InducedEntry, b: &InducedEntry) -> Ordering {
    a.nu.re
        .cmp(&b.nu.re)
        .then_with(|| a.nu.im.cmp(&b.nu.im))
        .then_with(|| a.mu.cmp(&b.mu))
}

/// The datum of `ψ`: every `(μ, ν)` with `μ = k/2` and
/// `ν = it/2 + (1-a)/2, …, it/2 + (a-1)/2`, sorted ascending by
/// `(Re ν, Im ν, μ)`. The sort puts it in Langlands position and makes it
/// θ-invariant.
pub fn induced_from_parameter(psi: &ArthurParameter) -> Result<InducedDatum> {
    if !psi.is_valid() {
        return Err(Error::Precondition("invalid Arthur parameter".into()));
    }
    let mut chars = Vec::with_capacity(psi.n);
    for b in &psi.blocks {
        for z in b.exponent_string() {
            chars.push(InducedEntry::new(b.chi.mu(), z / Cq::new(q(2), q(0))));
        }
    }
    chars.sort_by(cmp_entry);
    InducedDatum::new(chars)
}

/// `Re ν_1 ≤ Re ν_2 ≤ … ≤ Re ν_N`.
pub fn is_langlands_position(d: &InducedDatum) -> bool {
    d.chars.windows(2).all(|w| w[0].nu.re <= w[1].nu.re)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    /// Irreducible rank-one intertwiner: the two entries are exchanged.
    Swap,
    /// Reducible case: pass to the kernel, lowering the exponent.
    Kernel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    /// 0-based position of the pair `(i, i+1)`.
    pub position: usize,
    pub kind: StepKind,
    /// `p = Δν + Δμ`, `q = Δν - Δμ` of the pair before the step.
    pub p: Cq,
    pub q: Cq,
    /// Swap with `p = 0` or `q = 0`.
    pub borderline: bool,
    pub before: Exponent,
    pub after: Exponent,
    /// Coefficient `c` with `before - after = c·α_i` (real parts).
    pub decrement: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub initial: InducedDatum,
    pub steps: Vec<ReductionStep>,
    pub final_datum: InducedDatum,
}

impl ReductionTrace {
    pub fn kernel_steps(&self) -> usize {
        self.steps.iter().filter(|s| s.kind == StepKind::Kernel).count()
    }

    /// Total decrement `Σ c_i α_i` as coefficients on the simple roots.
    pub fn total_decrement(&self) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.initial.len().saturating_sub(1)];
        for s in &self.steps {
            out[s.position] += &s.decrement;
        }
        out
    }
}

fn positive_int(z: &Cq) -> bool {
    z.im.is_zero() && is_integer(&z.re) && z.re.is_positive()
}

/// One step at position `i` (0-based), which needs `Re ν_i > Re ν_{i+1}`.
pub fn reduction_step(d: &InducedDatum, i: usize) -> Result<(InducedDatum, ReductionStep)> {
    if i + 1 >= d.len() {
        return Err(Error::Index(format!("position {i} in a datum of length {}", d.len())));
    }
    let (a, b) = (&d.chars[i], &d.chars[i + 1]);
    if a.nu.re <= b.nu.re {
        return Err(Error::Precondition(format!("Re ν_{i} ≤ Re ν_{}", i + 1)));
    }
    let dnu = a.nu.clone() - b.nu.clone();
    let dmu = Cq::new(a.mu.clone() - b.mu.clone(), q(0));
    let p = dnu.clone() + dmu.clone();
    let qq = dnu.clone() - dmu.clone();
    let mut next = d.clone();
    let (kind, decrement) = if positive_int(&p) && positive_int(&qq) {
        // λ'_i λ'_{i+1} = λ_i λ_{i+1} and λ'_i / λ'_{i+1} = z^p z̄^{-q}
        let half = Cq::new(qq.re.clone() / q(2), q(0));
        next.chars[i].nu = a.nu.clone() - half.clone();
        next.chars[i + 1].nu = b.nu.clone() + half;
        let mu_sum = a.mu.clone() + b.mu.clone();
        let mu_diff = (p.re.clone() + qq.re.clone()) / q(2);
        next.chars[i].mu = (mu_sum.clone() + mu_diff.clone()) / q(2);
        next.chars[i + 1].mu = (mu_sum - mu_diff) / q(2);
        (StepKind::Kernel, qq.re.clone())
    } else {
        next.chars.swap(i, i + 1);
        (StepKind::Swap, dnu.re.clone() * q(2))
    };
    let borderline = kind == StepKind::Swap && (p.is_zero() || qq.is_zero());
    let step = ReductionStep {
        position: i,
        kind,
        p,
        q: qq,
        borderline,
        before: d.exponent(),
        after: next.exponent(),
        decrement,
    };
    Ok((next, step))
}

/// `Σ k · Re ν_k`, which every step strictly increases.
pub fn potential(d: &InducedDatum) -> Q {
    d.chars.iter().enumerate().map(|(k, e)| q(k as i64 + 1) * &e.nu.re).sum()
}

/// Repeats [`reduction_step`] at the leftmost violating pair until the datum
/// is in Langlands position.
pub fn reduce_to_langlands(d: &InducedDatum) -> ReductionTrace {
    let mut cur = d.clone();
    let mut steps = Vec::new();
    while let Some(i) = cur.chars.windows(2).position(|w| w[0].nu.re > w[1].nu.re) {
        let (next, step) = reduction_step(&cur, i).expect("violating pair satisfies the precondition");
        debug_assert!(potential(&next) > potential(&cur));
        steps.push(step);
        cur = next;
    }
    ReductionTrace { initial: d.clone(), steps, final_datum: cur }
}

/// Next permutation in lexicographic order; `false` after the last one.
fn next_permutation(v: &mut [i64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Distinct rearrangements of an integer vector, in lexicographic order.
pub fn distinct_permutations(v: &[i64]) -> Vec<Vec<i64>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn int_theta_stable(e: &[i64]) -> bool {
    let n = e.len();
    (0..n).all(|i| e[n - 1 - i] == -e[i])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub exponent: Vec<i64>,
    pub theta_stable: bool,
}

fn real_exponent(psi: &ArthurParameter) -> Result<Vec<i64>> {
    e_psi_total(psi)?
        .re()
        .iter()
        .map(|x| {
            i64::try_from(x.to_integer()).map_err(|_| Error::Precondition("exponent out of range".into()))
        })
        .collect()
}

/// All rearrangements of the real exponent of `ψ`, each tagged θ-stable or not.
pub fn candidate_exponents(psi: &ArthurParameter, limits: &Limits) -> Result<Vec<Candidate>> {
    limits.check(psi.n)?;
    let base = real_exponent(psi)?;
    Ok(distinct_permutations(&base)
        .into_iter()
        .map(|e| Candidate { theta_stable: int_theta_stable(&e), exponent: e })
        .collect())
}

fn to_exp(v: &[i64]) -> Exponent {
    Exponent::split(v.iter().map(|&x| Cq::new(q(x), q(0))).collect())
}

/// Simple roots of the `Nα` in the coordinates of `A¹`: twice those of `B_ℓ`.
pub fn normed_simple_roots(ell: usize) -> Vec<Vec<Q>> {
    if ell == 0 {
        return Vec::new();
    }
    RootSystem::new(Family::B, ell)
        .expect("rank ≥ 1")
        .simple_roots()
        .into_iter()
        .map(|v| v.into_iter().map(|x| x * q(2)).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateCheck {
    pub exponent: Vec<i64>,
    pub theta_ok: bool,
    /// The normed difference lies in the `ℕ`-cone of the simple `Nα`.
    pub chain_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub n: usize,
    pub candidates: usize,
    pub theta_stable: usize,
    /// θ-stable candidates above `E_ψ` for `≤_G`.
    pub checked: Vec<CandidateCheck>,
}

impl TheoremReport {
    pub fn failures(&self) -> Vec<&CandidateCheck> {
        self.checked.iter().filter(|c| !(c.theta_ok && c.chain_ok)).collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }
}

/// Checks `e_ψ ≤_θ norm(E)` for every θ-stable candidate `E` with
/// `E_ψ ≤_G E`, and that `norm(E) - norm(E_ψ)` is an `ℕ`-combination of the
/// simple `Nα`.
pub fn verify_theorem(psi: &ArthurParameter, limits: &Limits) -> Result<TheoremReport> {
    let cands = candidate_exponents(psi, limits)?;
    let e_psi = to_exp(&real_exponent(psi)?);
    let e_psi_norm = e_psi_raw(psi)?;
    let e_psi_norm = Exponent::fixed(e_psi_norm.coords.iter().map(|z| Cq::new(z.re.clone(), q(0))).collect());
    let simple = normed_simple_roots(psi.n / 2);
    let mut checked = Vec::new();
    let mut stable = 0;
    for c in &cands {
        if !c.theta_stable {
            continue;
        }
        stable += 1;
        let e = to_exp(&c.exponent);
        if !leq_g(&e_psi, &e)? {
            continue;
        }
        let normed = e.norm()?;
        let theta_ok = leq_theta(&e_psi_norm, &normed)?;
        let diff: Vec<Q> = restrict_character(&c.exponent.iter().zip(&e_psi.re()).map(|(&x, y)| q(x) - y).collect::<Vec<_>>());
        let chain_ok = cone_membership(&simple, &diff, CoeffSet::Natural)?.is_some();
        checked.push(CandidateCheck { exponent: c.exponent.clone(), theta_ok, chain_ok });
    }
    Ok(TheoremReport { n: psi.n, candidates: cands.len(), theta_stable: stable, checked })
}

/// On-disk form of an induced datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumFile {
    pub chars: Vec<EntrySpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntrySpec {
    pub mu: RatStr,
    pub nu: CplxStr,
}

impl TryFrom<DatumFile> for InducedDatum {
    type Error = Error;

    fn try_from(f: DatumFile) -> Result<Self> {
        InducedDatum::new(f.chars.into_iter().map(|e| InducedEntry::new(e.mu.0, e.nu.into())).collect())
    }
}

impl From<&InducedDatum> for DatumFile {
    fn from(d: &InducedDatum) -> Self {
        DatumFile {
            chars: d
                .chars
                .iter()
                .map(|e| EntrySpec { mu: RatStr(e.mu.clone()), nu: CplxStr::from(&e.nu) })
                .collect(),
        }
    }
}

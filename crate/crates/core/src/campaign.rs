//! Seeded sampling and the identity-check campaigns run by the command line
//! tool and the acceptance suite.

use itertools::Itertools;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arthur::{endoscopic_catalog, ArthurParameter, Block};
use crate::denominators::{check_den_lemma_1, check_den_lemma_2, check_wd_identity, denom_e_weyl, denom_operator, denom_product};
use crate::error::{Error, Result};
use crate::exact::{cq, format_cq, q, qf, Cq, Q};
use crate::groups::HKind;
use crate::langlands::{verify_theorem, Limits, TheoremReport};
use crate::twisted::TorusPoint;

/// Largest `N` accepted by the denominator campaign.
pub const MAX_DENOM_N: usize = 12;

/// Deterministic source of rational test data.
pub struct Sampler(ChaCha8Rng);

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.0.gen_range(lo..=hi)
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.0.gen_range(0..len)
    }

    pub fn coin(&mut self) -> bool {
        self.0.gen()
    }

    /// Nonzero `a/b` with `1 ≤ |a| ≤ 9`, `1 ≤ b ≤ 9`.
    pub fn nonzero_rational(&mut self) -> Q {
        let a = self.int(1, 9) * if self.coin() { 1 } else { -1 };
        qf(a, self.int(1, 9))
    }

    /// `a/b` with `|a| ≤ bound·b`, `1 ≤ b ≤ den`.
    pub fn rational(&mut self, bound: i64, den: i64) -> Q {
        let b = self.int(1, den);
        qf(self.int(-bound * b, bound * b), b)
    }

    pub fn point(&mut self, len: usize) -> Vec<Cq> {
        (0..len).map(|_| cq(self.nonzero_rational())).collect()
    }
}

/// Coordinates `{2, 3, 1/2, 1/5, -2}^ℓ` for `ℓ ≤ 3`.
pub fn denominator_grid(ell: usize) -> Vec<Vec<Cq>> {
    let vals = [q(2), q(3), qf(1, 2), qf(1, 5), q(-2)];
    (0..ell).map(|_| vals.iter().cloned().map(cq)).multi_cartesian_product().collect()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct DenomReport {
    pub n: usize,
    pub points: usize,
    pub mismatches: Vec<String>,
    pub wd_checked: usize,
    pub wd_failures: Vec<String>,
    pub lemma_checked: usize,
    pub lemma_failures: Vec<String>,
    pub lemma_max_rel_error: f64,
    /// Largest `|Δ - 1|` for the odd orthogonal and symplectic targets.
    pub unit_transfer_max_dev: f64,
    pub skipped_irregular: usize,
}

impl DenomReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.wd_failures.is_empty() && self.lemma_failures.is_empty()
    }
}

fn show(v: &[Cq]) -> String {
    format!("({})", v.iter().map(format_cq).join(", "))
}

/// Operator, product and Weyl-of-`E` forms at one point; `None` if all agree.
pub fn denominator_mismatch(n: usize, y: &[Cq]) -> Result<Option<String>> {
    let op = denom_operator(&TorusPoint::theta_fixed(n, y)?)?;
    let prod = denom_product(n, y)?;
    let weyl = denom_e_weyl(n, y)?;
    if op == prod && prod == weyl {
        Ok(None)
    } else {
        Ok(Some(format!(
            "N={n} t={}: operator {} product {} weyl {}",
            show(y),
            format_cq(&op),
            format_cq(&prod),
            format_cq(&weyl)
        )))
    }
}

/// Tolerances pinned for the transfer-factor checks.
pub const UNIT_TRANSFER_TOL: f64 = 1e-10;
pub const LEMMA_TOL: f64 = 1e-9;

/// Runs every denominator identity at `N` on the fixed grid and `samples`
/// seeded random points.
pub fn denom_campaign(n: usize, samples: usize, seed: u64) -> Result<DenomReport> {
    if n == 0 || n > MAX_DENOM_N {
        return Err(Error::RankOutOfRange { family: 'A', rank: n });
    }
    let ell = n / 2;
    let mut sampler = Sampler::new(seed ^ (n as u64) << 32);
    let mut points = if ell <= 3 { denominator_grid(ell) } else { Vec::new() };
    points.extend((0..samples).map(|_| sampler.point(ell)));
    let mut r = DenomReport { n, points: points.len(), ..DenomReport::default() };
    let kinds: Vec<HKind> = HKind::ALL.iter().copied().filter(|h| h.accepts(n)).collect();
    let catalog: Vec<_> = kinds.iter().flat_map(|&h| endoscopic_catalog(h, n).unwrap_or_default()).collect();
    for (i, y) in points.iter().enumerate() {
        if let Some(m) = denominator_mismatch(n, y)? {
            r.mismatches.push(m);
        }
        let t = TorusPoint::theta_fixed(n, y)?;
        match check_wd_identity(&t) {
            Ok(c) if c.holds() => r.wd_checked += 1,
            Ok(c) => {
                r.wd_checked += 1;
                r.wd_failures.push(format!("t={}: {} vs {}", show(y), format_cq(&c.lhs), format_cq(&c.rhs)));
            }
            Err(Error::Irregular(_)) => r.skipped_irregular += 1,
            Err(e) => return Err(e),
        }
        for &kind in &kinds {
            match check_den_lemma_1(kind, n, y) {
                Ok(c) => {
                    r.lemma_checked += 1;
                    r.lemma_max_rel_error = r.lemma_max_rel_error.max(c.rel_error);
                    if !c.holds(LEMMA_TOL) {
                        r.lemma_failures.push(format!("den=1 {kind} y={}: {c:?}", show(y)));
                    }
                    if kind != HKind::SoEven {
                        let dev = (c.transfer_factor - 1.0).abs();
                        r.unit_transfer_max_dev = r.unit_transfer_max_dev.max(dev);
                        if dev > UNIT_TRANSFER_TOL {
                            r.lemma_failures.push(format!("Δ ≠ 1 for {kind} y={}: {}", show(y), c.transfer_factor));
                        }
                    }
                }
                Err(Error::Irregular(_)) => r.skipped_irregular += 1,
                Err(e) => return Err(e),
            }
        }
        if !catalog.is_empty() {
            let datum = catalog[i % catalog.len()];
            let (g1, _) = datum.groups();
            let (y1, y2) = y.split_at(g1.rank);
            match check_den_lemma_2(&datum, y1, y2) {
                Ok(c) => {
                    r.lemma_checked += 1;
                    r.lemma_max_rel_error = r.lemma_max_rel_error.max(c.rel_error);
                    if !c.holds(LEMMA_TOL) {
                        r.lemma_failures.push(format!("den=2 {datum} y={}: {c:?}", show(y)));
                    }
                }
                Err(Error::Irregular(_)) => r.skipped_irregular += 1,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(r)
}

/// All compositions of `n`.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (0u32..1 << (n - 1))
        .map(|mask| {
            let mut out = Vec::new();
            let mut run = 1;
            for i in 0..n - 1 {
                if mask >> i & 1 == 1 {
                    out.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            out.push(run);
            out
        })
        .collect()
}

/// Parameters with trivial characters, one per composition of each
/// `1 ≤ N ≤ max_n` and each compatible target.
pub fn unipotent_family(max_n: usize) -> Vec<ArthurParameter> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for sizes in compositions(n) {
            for kind in HKind::ALL {
                if kind.accepts(n) {
                    out.push(ArthurParameter::unipotent(kind, &sizes));
                }
            }
        }
    }
    out
}

/// A valid parameter with at least one pair of mutually inverse nontrivial
/// characters and total size at most `max_n`.
pub fn random_paired_parameter(s: &mut Sampler, max_n: usize) -> ArthurParameter {
    assert!(max_n >= 2);
    loop {
        let mut blocks = Vec::new();
        let mut n = 0;
        let pairs = 1 + s.index(2);
        for _ in 0..pairs {
            let a = 1 + s.index(max_n / 2);
            if n + 2 * a > max_n {
                break;
            }
            let (k, t) = loop {
                let k = s.int(-3, 3);
                let t = qf(s.int(-6, 6), s.int(1, 3));
                if k != 0 || !t.is_zero() {
                    break (k, t);
                }
            };
            blocks.push(Block::new(k, t.clone(), a));
            blocks.push(Block::new(-k, -t, a));
            n += 2 * a;
        }
        if blocks.is_empty() {
            continue;
        }
        while n < max_n && s.coin() {
            let a = 1 + s.index(max_n - n);
            blocks.push(Block::new(0, q(0), a));
            n += a;
        }
        let kinds: Vec<HKind> = HKind::ALL.iter().copied().filter(|h| h.accepts(n)).collect();
        let target = kinds[s.index(kinds.len())];
        return ArthurParameter::new(n, target, blocks);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyOutcome {
    pub parameter: String,
    pub target: HKind,
    pub candidates: usize,
    pub checked: usize,
    pub failures: usize,
}

pub fn describe(psi: &ArthurParameter) -> String {
    psi.blocks
        .iter()
        .map(|b| {
            if b.chi.is_self_dual() {
                format!("R{}", b.a)
            } else {
                format!("χ({},{})R{}", b.chi.k, crate::exact::DisplayQ(&b.chi.t), b.a)
            }
        })
        .join("+")
}

pub fn family_outcome(psi: &ArthurParameter, report: &TheoremReport) -> FamilyOutcome {
    FamilyOutcome {
        parameter: describe(psi),
        target: psi.target,
        candidates: report.candidates,
        checked: report.checked.len(),
        failures: report.failures().len(),
    }
}

/// Runs the theorem check over a list of parameters.
pub fn verify_all(params: &[ArthurParameter], limits: &Limits) -> Result<Vec<FamilyOutcome>> {
    params.iter().map(|p| Ok(family_outcome(p, &verify_theorem(p, limits)?))).collect()
}

//! Exponents and the partial orders on them.
//!
//! Every order compares real parts only: `e ≤ e'` when `Re(e' - e)` lies in
//! the cone spanned by a set of simple roots with coefficients in `ℕ` (or
//! `2ℕ`). Each order has a closed form in terms of partial sums and a generic
//! form through [`cone_membership`]; the two are tested against each other.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{is_even_natural, is_natural, Cq, Q};
use crate::groups::HKind;
use crate::roots::{cone_membership, CoeffSet, Family, RootSystem};
use crate::twisted::{is_theta_stable_coords, norm_on_characters};

/// Which torus an exponent is a character of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExpContext {
    /// Split part `A` of the torus of `GL(N)`: `N` coordinates.
    Split,
    /// θ-fixed part `A¹`, in normed coordinates: `ℓ` coordinates.
    Fixed,
    /// Split part of the torus of an endoscopic group: `ℓ` coordinates.
    Endoscopic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exponent {
    pub coords: Vec<Cq>,
    pub context: ExpContext,
}

impl Exponent {
    pub fn new(coords: Vec<Cq>, context: ExpContext) -> Self {
        Exponent { coords, context }
    }

    pub fn split(coords: Vec<Cq>) -> Self {
        Self::new(coords, ExpContext::Split)
    }

    pub fn fixed(coords: Vec<Cq>) -> Self {
        Self::new(coords, ExpContext::Fixed)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn re(&self) -> Vec<Q> {
        self.coords.iter().map(|z| z.re.clone()).collect()
    }

    /// Normed exponent on `A¹`; the exponent must be θ-stable.
    pub fn norm(&self) -> Result<Exponent> {
        if self.context != ExpContext::Split {
            return Err(Error::ContextMismatch("norm applies to exponents of A".into()));
        }
        Ok(Exponent::fixed(norm_on_characters(&self.coords)?))
    }

    /// `e + θ*e`, which is always θ-stable.
    pub fn theta_average(&self) -> Exponent {
        let n = self.len();
        let coords = (0..n).map(|i| self.coords[i].clone() - self.coords[n - 1 - i].clone()).collect();
        Exponent::split(coords)
    }
}

/// `e_{N+1-i} = -e_i` for all `i`.
pub fn is_theta_stable(e: &Exponent) -> Result<bool> {
    if e.context != ExpContext::Split {
        return Err(Error::ContextMismatch("θ-stability is defined on A".into()));
    }
    Ok(is_theta_stable_coords(&e.coords))
}

/// The family of orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    /// `≤` of `GL(N)`: type `A_{N-1}` cone.
    G,
    /// `≤_θ`: type `B_ℓ` cone in normed coordinates.
    Theta,
    /// `≤_E`: type `B_ℓ` for `N` even, `C_ℓ` for `N` odd.
    E { n_odd: bool },
    /// `≤_H` for `SO(2ℓ+1)`, `Sp(2ℓ)`, `SO(2ℓ)`.
    H(HKind),
    /// `≤'_θ × ≤''_θ` on `f' ⊕ f''` with `f'` of length `split`.
    Product { split: usize },
}

impl OrderKind {
    /// Context the compared exponents must carry.
    pub fn context(self) -> ExpContext {
        match self {
            OrderKind::G => ExpContext::Split,
            OrderKind::Theta | OrderKind::E { .. } | OrderKind::Product { .. } => ExpContext::Fixed,
            OrderKind::H(_) => ExpContext::Endoscopic,
        }
    }

    /// Simple roots and coefficient lattice of the cone for vectors of
    /// length `len`.
    pub fn cone(self, len: usize) -> Result<(Vec<Vec<Q>>, CoeffSet)> {
        let simple = |family: Family, rank: usize| -> Result<Vec<Vec<Q>>> {
            if rank == 0 {
                return Ok(Vec::new());
            }
            Ok(RootSystem::new(family, rank)?.simple_roots())
        };
        let roots = match self {
            OrderKind::G => simple(Family::A, len.saturating_sub(1))?,
            OrderKind::Theta | OrderKind::H(HKind::SoOdd) | OrderKind::E { n_odd: false } => simple(Family::B, len)?,
            OrderKind::E { n_odd: true } | OrderKind::H(HKind::Sp) => simple(Family::C, len)?,
            OrderKind::H(HKind::SoEven) => {
                if len < 2 {
                    return Err(Error::OrderRank { needed: 2, got: len });
                }
                simple(Family::D, len)?
            }
            OrderKind::Product { split } => {
                if split > len {
                    return Err(Error::DimensionMismatch { expected: split, got: len });
                }
                let pad = |v: Vec<Q>, before: usize, after: usize| -> Vec<Q> {
                    let mut out = vec![Q::default(); before];
                    out.extend(v);
                    out.extend(std::iter::repeat(Q::default()).take(after));
                    out
                };
                let mut roots: Vec<Vec<Q>> =
                    simple(Family::B, split)?.into_iter().map(|v| pad(v, 0, len - split)).collect();
                roots.extend(simple(Family::B, len - split)?.into_iter().map(|v| pad(v, split, 0)));
                roots
            }
        };
        Ok((roots, CoeffSet::Natural))
    }
}

fn diff(e: &Exponent, e2: &Exponent, ctx: ExpContext) -> Result<Vec<Q>> {
    if e.context != e2.context {
        return Err(Error::ContextMismatch(format!("{:?} vs {:?}", e.context, e2.context)));
    }
    if e.context != ctx {
        return Err(Error::ContextMismatch(format!("expected {ctx:?}, got {:?}", e.context)));
    }
    if e.len() != e2.len() {
        return Err(Error::DimensionMismatch { expected: e.len(), got: e2.len() });
    }
    Ok(e2.coords.iter().zip(&e.coords).map(|(b, a)| &b.re - &a.re).collect())
}

fn partial_sums(x: &[Q]) -> Vec<Q> {
    x.iter()
        .scan(Q::default(), |acc, v| {
            *acc += v;
            Some(acc.clone())
        })
        .collect()
}

/// `e ≤ e'` for `GL(N)`: partial sums `1..N-1` in `ℕ` and total `0`.
pub fn leq_g(e: &Exponent, e2: &Exponent) -> Result<bool> {
    let x = diff(e, e2, ExpContext::Split)?;
    Ok(leq_g_diff(&x))
}

fn leq_g_diff(x: &[Q]) -> bool {
    let s = partial_sums(x);
    match s.split_last() {
        None => true,
        Some((total, head)) => num_traits::Zero::is_zero(total) && head.iter().all(is_natural),
    }
}

/// `f ≤_θ f'`: all partial sums in `ℕ`.
pub fn leq_theta(f: &Exponent, f2: &Exponent) -> Result<bool> {
    let x = diff(f, f2, ExpContext::Fixed)?;
    Ok(leq_theta_diff(&x))
}

fn leq_theta_diff(x: &[Q]) -> bool {
    partial_sums(x).iter().all(is_natural)
}

/// `f ≤_E f'`: partial sums `1..ℓ-1` in `ℕ`, total in `ℕ` (N even) or `2ℕ` (N odd).
pub fn leq_e(f: &Exponent, f2: &Exponent, n_odd: bool) -> Result<bool> {
    let x = diff(f, f2, ExpContext::Fixed)?;
    Ok(leq_e_diff(&x, n_odd))
}

fn leq_e_diff(x: &[Q], n_odd: bool) -> bool {
    let s = partial_sums(x);
    match s.split_last() {
        None => true,
        Some((total, head)) => {
            head.iter().all(is_natural) && if n_odd { is_even_natural(total) } else { is_natural(total) }
        }
    }
}

/// `f ≤_H f'` for `SO(2ℓ)`: partial sums `1..ℓ-2` in `ℕ`, total in `2ℕ`,
/// and `x_1 + … + x_{ℓ-1} - x_ℓ` in `2ℕ`.
pub fn leq_h_so_even(f: &Exponent, f2: &Exponent) -> Result<bool> {
    let x = diff(f, f2, ExpContext::Endoscopic)?;
    leq_h_so_even_diff(&x)
}

fn leq_h_so_even_diff(x: &[Q]) -> Result<bool> {
    let l = x.len();
    if l < 2 {
        return Err(Error::OrderRank { needed: 2, got: l });
    }
    let s = partial_sums(x);
    Ok(s[..l - 2].iter().all(is_natural) && is_even_natural(&s[l - 1]) && is_even_natural(&(&s[l - 2] - &x[l - 1])))
}

/// `≤_H` for each endoscopic target; the odd orthogonal and symplectic cases
/// coincide with `≤_θ` and `≤_E` for odd `N`.
pub fn leq_h(kind: HKind, f: &Exponent, f2: &Exponent) -> Result<bool> {
    let x = diff(f, f2, ExpContext::Endoscopic)?;
    match kind {
        HKind::SoOdd => Ok(leq_theta_diff(&x)),
        HKind::Sp => Ok(leq_e_diff(&x, true)),
        HKind::SoEven => leq_h_so_even_diff(&x),
    }
}

/// `≤'_θ × ≤''_θ` on concatenated coordinates.
pub fn leq_product(split: usize, f: &Exponent, f2: &Exponent) -> Result<bool> {
    let x = diff(f, f2, ExpContext::Fixed)?;
    if split > x.len() {
        return Err(Error::DimensionMismatch { expected: split, got: x.len() });
    }
    Ok(leq_theta_diff(&x[..split]) && leq_theta_diff(&x[split..]))
}

/// Closed-form comparison for any order kind.
pub fn compare(kind: OrderKind, f: &Exponent, f2: &Exponent) -> Result<bool> {
    match kind {
        OrderKind::G => leq_g(f, f2),
        OrderKind::Theta => leq_theta(f, f2),
        OrderKind::E { n_odd } => leq_e(f, f2, n_odd),
        OrderKind::H(h) => leq_h(h, f, f2),
        OrderKind::Product { split } => leq_product(split, f, f2),
    }
}

/// Closed form on a raw real difference vector.
pub fn compare_diff(kind: OrderKind, x: &[Q]) -> Result<bool> {
    match kind {
        OrderKind::G => Ok(leq_g_diff(x)),
        OrderKind::Theta | OrderKind::H(HKind::SoOdd) => Ok(leq_theta_diff(x)),
        OrderKind::E { n_odd } => Ok(leq_e_diff(x, n_odd)),
        OrderKind::H(HKind::Sp) => Ok(leq_e_diff(x, true)),
        OrderKind::H(HKind::SoEven) => leq_h_so_even_diff(x),
        OrderKind::Product { split } => {
            if split > x.len() {
                return Err(Error::DimensionMismatch { expected: split, got: x.len() });
            }
            Ok(leq_theta_diff(&x[..split]) && leq_theta_diff(&x[split..]))
        }
    }
}

/// Coefficients expressing `x` in the cone of `kind`, or `None`.
pub fn cone_witness(kind: OrderKind, x: &[Q]) -> Result<Option<Vec<Q>>> {
    let (simple, coeffs) = kind.cone(x.len())?;
    cone_membership(&simple, x, coeffs)
}

/// Generic comparison through the cone oracle.
pub fn compare_by_cone(kind: OrderKind, f: &Exponent, f2: &Exponent) -> Result<bool> {
    let x = diff(f, f2, kind.context())?;
    Ok(cone_witness(kind, &x)?.is_some())
}

//! Twisted `GL(N)`: the torus with its involution, restricted roots on the
//! fixed torus, the norm map, correspondences of semisimple classes with the
//! classical groups `E` and `H`, and twisted transfer factors.
//!
//! Indices of roots and coordinates are 1-based in public signatures,
//! matching the usual `α_{i,j} = e_i - e_j` notation.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::adjoint::{det_one_minus, LieSpace, Twist};
use crate::error::{Error, Result};
use crate::exact::{abs_f64, ci, is_integer, powi, q, Cq, Q};
use crate::groups::{ClassicalGroup, HKind};
use crate::roots::{Family, RootSystem, WeylElement};

/// `(GL(N), θ)` with `ℓ = ⌊N/2⌋`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedDatum {
    pub n: usize,
}

impl TwistedDatum {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::RankOutOfRange { family: 'A', rank: 0 });
        }
        Ok(TwistedDatum { n })
    }

    pub fn ell(&self) -> usize {
        self.n / 2
    }

    pub fn is_odd(&self) -> bool {
        self.n % 2 == 1
    }

    /// Family of `E`: `SO(2ℓ+1)` (B) for even `N`, `Sp(2ℓ)` (C) for odd `N`.
    pub fn e_family(&self) -> Family {
        if self.is_odd() {
            Family::C
        } else {
            Family::B
        }
    }

    pub fn e_group(&self) -> ClassicalGroup {
        ClassicalGroup::new(self.e_family(), self.ell())
    }

    pub fn e_system(&self) -> Option<RootSystem> {
        self.e_group().root_system()
    }

    /// Partner index `N + 1 - i` (1-based).
    pub fn mirror(&self, i: usize) -> usize {
        self.n + 1 - i
    }
}

/// A point of the diagonal torus of `GL(N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusPoint(Vec<Cq>);

impl TorusPoint {
    pub fn new(coords: Vec<Cq>) -> Result<Self> {
        if coords.iter().any(|z| z.is_zero()) {
            return Err(Error::ZeroCoordinate);
        }
        Ok(TorusPoint(coords))
    }

    /// `(y_1, …, y_ℓ, [1], y_ℓ⁻¹, …, y_1⁻¹)`, a point of `T¹`.
    pub fn theta_fixed(n: usize, y: &[Cq]) -> Result<Self> {
        let ell = n / 2;
        if y.len() != ell {
            return Err(Error::DimensionMismatch { expected: ell, got: y.len() });
        }
        let mut c = y.to_vec();
        if n % 2 == 1 {
            c.push(Cq::one());
        }
        c.extend(y.iter().rev().map(|z| if z.is_zero() { z.clone() } else { z.inv() }));
        Self::new(c)
    }

    /// `diag(s_1, …, s_ℓ, 1, …, 1)`.
    pub fn padded(n: usize, s: &[Cq]) -> Result<Self> {
        if s.len() != n / 2 {
            return Err(Error::DimensionMismatch { expected: n / 2, got: s.len() });
        }
        let mut c = s.to_vec();
        c.resize(n, Cq::one());
        Self::new(c)
    }

    pub fn coords(&self) -> &[Cq] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_theta_fixed(&self) -> bool {
        theta_on_torus(self) == *self
    }
}

/// `θ(t) = (t_N⁻¹, …, t_1⁻¹)`.
pub fn theta_on_torus(t: &TorusPoint) -> TorusPoint {
    TorusPoint(t.0.iter().rev().map(|z| z.inv()).collect())
}

/// `θ(α_{i,j}) = α_{N+1-j, N+1-i}`.
pub fn theta_on_root(n: usize, root: (usize, usize)) -> Result<(usize, usize)> {
    let (i, j) = root;
    if i == 0 || j == 0 || i > n || j > n || i == j {
        return Err(Error::Index(format!("({i},{j}) is not a root of GL({n})")));
    }
    Ok((n + 1 - j, n + 1 - i))
}

/// Character `e_i - e_j` in the coordinates of `T`.
pub fn gl_root(n: usize, i: usize, j: usize) -> Vec<Q> {
    let mut v = vec![q(0); n];
    v[i - 1] = q(1);
    v[j - 1] = q(-1);
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootType {
    /// `α` and `θα` are orthogonal.
    R1,
    /// `α + θα` is a root.
    R2,
    /// `θα = α`.
    R3,
}

impl RootType {
    /// `2` for roots whose sum with their conjugate is a root, else `1`.
    pub fn d(self) -> u32 {
        match self {
            RootType::R2 => 2,
            RootType::R1 | RootType::R3 => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedRoot {
    /// Positive root `(i, j)`, `i < j`, 1-based.
    pub source: (usize, usize),
    pub kind: RootType,
    /// Restriction to `T¹` in the coordinates `y ↦ (y, [1], y⁻¹)`.
    pub restricted: Vec<Q>,
}

/// Classifies every positive root of `GL(N)` and records its restriction.
pub fn classify_restricted_roots(n: usize) -> Vec<RestrictedRoot> {
    let mid = if n % 2 == 1 { Some(n.div_ceil(2)) } else { None };
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let kind = if i + j == n + 1 {
                RootType::R3
            } else if mid == Some(i) || mid == Some(j) {
                RootType::R2
            } else {
                RootType::R1
            };
            out.push(RestrictedRoot {
                source: (i, j),
                kind,
                restricted: restrict_character(&gl_root(n, i, j)),
            });
        }
    }
    out
}

/// Pullback of a character of `T` to `T¹`: `f_k = e_k - e_{N+1-k}`, `k ≤ ℓ`.
pub fn restrict_character<T>(e: &[T]) -> Vec<T>
where
    T: Clone + std::ops::Sub<Output = T>,
{
    let n = e.len();
    (0..n / 2).map(|k| e[k].clone() - e[n - 1 - k].clone()).collect()
}

/// `e_{N+1-i} = -e_i` for all `i` (so the middle entry vanishes).
pub fn is_theta_stable_coords(e: &[Cq]) -> bool {
    let n = e.len();
    (0..n).all(|i| e[n - 1 - i] == -e[i].clone())
}

/// Norm of a θ-stable exponent of `GL(N)` to the fixed torus.
pub fn norm_on_characters(e: &[Cq]) -> Result<Vec<Cq>> {
    if !is_theta_stable_coords(e) {
        return Err(Error::NotThetaStable);
    }
    Ok(restrict_character(e))
}

/// `Nα`: `α + θα` when `θα ≠ α`, else `α`, as a character of `T`.
pub fn norm_root(n: usize, i: usize, j: usize) -> Result<Vec<Q>> {
    let (a, b) = theta_on_root(n, (i, j))?;
    let alpha = gl_root(n, i, j);
    if (a, b) == (i, j) {
        return Ok(alpha);
    }
    let beta = gl_root(n, a, b);
    Ok(alpha.iter().zip(&beta).map(|(x, y)| x + y).collect())
}

/// Coroot attached to a restricted root: `Nα` for types R1 and R3, `2Nα` for R2.
pub fn coroot_of_restricted(n: usize, r: &RestrictedRoot) -> Result<Vec<Q>> {
    let (i, j) = r.source;
    let v = norm_root(n, i, j)?;
    let c = q(i64::from(r.kind.d()));
    Ok(v.into_iter().map(|x| x * &c).collect())
}

/// A θ-invariant character of `T` read on `T/(1-θ)T` in the coordinates of
/// the norm map: its first `ℓ` entries.
pub fn quotient_coords(c: &[Q]) -> Result<Vec<Q>> {
    let n = c.len();
    if (0..n).any(|k| c[n - 1 - k] != -c[k].clone()) {
        return Err(Error::NotThetaStable);
    }
    Ok(c[..n / 2].to_vec())
}

/// `N(t) = (t_1/t_N, …, t_ℓ/t_{N-ℓ+1})`.
pub fn norm_torus(t: &TorusPoint) -> Vec<Cq> {
    let c = t.coords();
    let n = c.len();
    (0..n / 2).map(|k| c[k].clone() / c[n - 1 - k].clone()).collect()
}

/// Restriction of the norm to `T¹`, landing in the torus of `E`:
/// `(x, [1], x⁻¹) ↦ (x², [1], x⁻²)`, the middle 1 present for even `N`.
pub fn restriction_norm(t: &TorusPoint) -> Result<Vec<Cq>> {
    if !t.is_theta_fixed() {
        return Err(Error::NotThetaFixed);
    }
    let n = t.len();
    let sq: Vec<Cq> = t.coords()[..n / 2].iter().map(|z| z.clone() * z.clone()).collect();
    let mut out = sq.clone();
    if n % 2 == 0 {
        out.push(Cq::one());
    }
    out.extend(sq.iter().rev().map(|z| z.inv()));
    Ok(out)
}

/// `x^λ` for an integral weight `λ`.
pub fn eval_monomial(x: &[Cq], weight: &[Q]) -> Result<Cq> {
    if x.len() != weight.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), got: weight.len() });
    }
    let mut acc = Cq::one();
    for (z, w) in x.iter().zip(weight) {
        if !is_integer(w) {
            return Err(Error::Precondition(format!("weight entry {w} is not integral")));
        }
        if w.is_zero() {
            continue;
        }
        let e: i64 = w.to_integer().try_into().map_err(|_| Error::Precondition("weight too large".into()))?;
        acc *= powi(z, e);
    }
    Ok(acc)
}

/// `w · s` for the multiplicative action of `𝔖_r ⋉ {±1}^r`: coordinate
/// `i` moves to `perm[i]` and is inverted when `signs[i] = -1`.
pub fn weyl_act_mult(w: &WeylElement, s: &[Cq]) -> Vec<Cq> {
    let mut out = vec![Cq::one(); s.len()];
    for (i, z) in s.iter().enumerate() {
        out[w.perm()[i]] = if w.signs()[i] < 0 { z.inv() } else { z.clone() };
    }
    out
}

fn cmp_cq(a: &Cq, b: &Cq) -> Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

fn cmp_vec(a: &[Cq], b: &[Cq]) -> Ordering {
    a.iter().zip(b).map(|(x, y)| cmp_cq(x, y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

/// Lexicographically least point of the orbit of `s` under the Weyl group of
/// `group` (a full signed-permutation group, or its even part for type D).
pub fn canonical_class(group: &ClassicalGroup, s: &[Cq]) -> Vec<Cq> {
    if group.family != Family::D {
        let mut c: Vec<Cq> = s
            .iter()
            .map(|z| {
                let w = z.inv();
                if cmp_cq(&w, z).is_lt() {
                    w
                } else {
                    z.clone()
                }
            })
            .collect();
        c.sort_by(cmp_cq);
        return c;
    }
    group
        .weyl_elements()
        .iter()
        .map(|w| weyl_act_mult(w, s))
        .min_by(|a, b| cmp_vec(a, b))
        .unwrap_or_default()
}

pub fn same_class(group: &ClassicalGroup, a: &[Cq], b: &[Cq]) -> bool {
    a.len() == b.len() && canonical_class(group, a) == canonical_class(group, b)
}

/// Number of classes of `group` inside the orbit of `s` under the full group
/// `𝔖_r ⋉ {±1}^r`.
pub fn fiber_size(group: &ClassicalGroup, s: &[Cq]) -> usize {
    let full = ClassicalGroup::new(Family::B, group.rank);
    let mut reps: Vec<Vec<Cq>> = full
        .weyl_elements()
        .iter()
        .map(|w| canonical_class(group, &weyl_act_mult(w, s)))
        .collect();
    reps.sort_by(|a, b| cmp_vec(a, b));
    reps.dedup();
    reps.len()
}

/// `x^α ≠ 1` for every root `α` of `group`.
pub fn is_regular(group: &ClassicalGroup, x: &[Cq]) -> Result<bool> {
    if x.len() != group.rank {
        return Err(Error::DimensionMismatch { expected: group.rank, got: x.len() });
    }
    for a in group.positive_roots() {
        if eval_monomial(x, &a)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_nonzero(s: &[Cq]) -> Result<()> {
    if s.iter().any(|z| z.is_zero()) {
        return Err(Error::ZeroCoordinate);
    }
    Ok(())
}

/// `𝒜`: a regular class of `E` with torus coordinates `s` goes to the
/// θ-class of `diag(s_1, …, s_ℓ, 1, …, 1)`.
pub fn correspondence_a(n: usize, s: &[Cq]) -> Result<TorusPoint> {
    let datum = TwistedDatum::new(n)?;
    check_nonzero(s)?;
    if !is_regular(&datum.e_group(), s)? {
        return Err(Error::Irregular(format!("point is not regular in {}", datum.e_group().label())));
    }
    TorusPoint::padded(n, s)
}

/// `𝒩`: a θ-class of `T` goes to the `W`-class of its norm.
pub fn correspondence_n(t: &TorusPoint) -> Vec<Cq> {
    norm_torus(t)
}

/// `𝒜_{H/G}`: a strongly regular class of `H` with coordinates `x` goes to
/// the θ-class of `diag(x, 1, …, 1)`, which must be θ-regular.
pub fn correspondence_h_to_g(kind: HKind, n: usize, x: &[Cq]) -> Result<TorusPoint> {
    kind.check_n(n)?;
    check_nonzero(x)?;
    let h = kind.group(n);
    if !is_regular(&h, x)? {
        return Err(Error::Irregular(format!("point is not regular in {}", h.label())));
    }
    let t = TorusPoint::padded(n, x)?;
    if twisted_adjoint_det(&t)?.is_zero() {
        return Err(Error::Irregular("image is not θ-regular in GL(N)".into()));
    }
    Ok(t)
}

/// Action of `w ∈ 𝔖_ℓ ⋉ {±1}^ℓ`, embedded in the θ-fixed part of the Weyl
/// group of `GL(N)`, on a point of `T`. The pair of positions `(i, N+1-i)`
/// moves to `(perm[i], N+1-perm[i])`, swapped when `signs[i] = -1`.
pub fn theta_weyl_act_on_torus(w: &WeylElement, t: &TorusPoint) -> Result<TorusPoint> {
    let n = t.len();
    if w.perm().len() != n / 2 {
        return Err(Error::DimensionMismatch { expected: n / 2, got: w.perm().len() });
    }
    let c = t.coords();
    let mut out = c.to_vec();
    for i in 0..n / 2 {
        let (a, b) = (w.perm()[i], n - 1 - w.perm()[i]);
        let (lo, hi) = if w.signs()[i] < 0 { (b, a) } else { (a, b) };
        out[lo] = c[i].clone();
        out[hi] = c[n - 1 - i].clone();
    }
    TorusPoint::new(out)
}

/// `t · u · θ(u)⁻¹`, a point in the same θ-class as `t`.
pub fn theta_conjugate(t: &TorusPoint, u: &TorusPoint) -> Result<TorusPoint> {
    if t.len() != u.len() {
        return Err(Error::DimensionMismatch { expected: t.len(), got: u.len() });
    }
    let tu = theta_on_torus(u);
    TorusPoint::new(
        t.coords()
            .iter()
            .zip(u.coords())
            .zip(tu.coords())
            .map(|((a, b), c)| a.clone() * b.clone() / c.clone())
            .collect(),
    )
}

/// `det(1 - Ad(t)∘θ)` on `𝔤/𝔱`.
pub fn twisted_adjoint_det(t: &TorusPoint) -> Result<Cq> {
    det_one_minus(t, Twist::AdAfterTheta, &LieSpace::OffDiagonal)
}

/// `det(1 - Ad(x))` on `𝔥/𝔱_H`, i.e. the product of `1 - x^α` over all roots.
pub fn adjoint_det(group: &ClassicalGroup, x: &[Cq]) -> Result<Cq> {
    if x.len() != group.rank {
        return Err(Error::DimensionMismatch { expected: group.rank, got: x.len() });
    }
    let mut acc = Cq::one();
    for a in group.positive_roots() {
        let v = eval_monomial(x, &a)?;
        acc *= (Cq::one() - v.clone()) * (Cq::one() - v.inv());
    }
    Ok(acc)
}

fn ratio_sqrt(num: &Cq, den: &Cq) -> Result<f64> {
    if num.is_zero() || den.is_zero() {
        return Err(Error::Irregular("vanishing discriminant".into()));
    }
    Ok((abs_f64(num) / abs_f64(den)).sqrt())
}

/// `|det(Ad(t̃)θ - 1)|_{𝔤/𝔱}|^{1/2} / |det(Ad(x) - 1)|_{𝔥/𝔱_H}|^{1/2}`
/// for associated regular `x ∈ T_H` and `t̃ ∈ T`.
pub fn transfer_factor_hg(kind: HKind, x: &[Cq], t: &TorusPoint) -> Result<f64> {
    let n = t.len();
    kind.check_n(n)?;
    let h = kind.group(n);
    check_nonzero(x)?;
    let full = ClassicalGroup::new(Family::B, h.rank);
    if !same_class(&full, x, &norm_torus(t)) {
        return Err(Error::Precondition("points are not associated".into()));
    }
    ratio_sqrt(&twisted_adjoint_det(t)?, &adjoint_det(&h, x)?)
}

/// Ratio of Weyl discriminants for an elliptic endoscopic datum
/// `H' × H''` of `H`: `|D_H(x)|^{1/2} / (|D_{H'}(y')|^{1/2} |D_{H''}(y'')|^{1/2})`,
/// where `x` is associated with the concatenation `y' ⊕ y''`.
pub fn transfer_factor_endo(
    h: &ClassicalGroup,
    factors: (&ClassicalGroup, &ClassicalGroup),
    y: (&[Cq], &[Cq]),
    x: &[Cq],
) -> Result<f64> {
    let merged: Vec<Cq> = y.0.iter().chain(y.1).cloned().collect();
    if factors.0.rank + factors.1.rank != h.rank {
        return Err(Error::DimensionMismatch { expected: h.rank, got: factors.0.rank + factors.1.rank });
    }
    check_nonzero(x)?;
    check_nonzero(&merged)?;
    let full = ClassicalGroup::new(Family::B, h.rank);
    if !same_class(&full, x, &merged) {
        return Err(Error::Precondition("points are not associated".into()));
    }
    let den = adjoint_det(factors.0, y.0)? * adjoint_det(factors.1, y.1)?;
    ratio_sqrt(&adjoint_det(h, x)?, &den)
}

/// Exact orbit sizes are cheap to get wrong; this is the brute-force count.
pub fn orbit_size(group: &ClassicalGroup, s: &[Cq]) -> usize {
    let mut pts: Vec<Vec<Cq>> = group.weyl_elements().iter().map(|w| weyl_act_mult(w, s)).collect();
    pts.sort_by(|a, b| cmp_vec(a, b));
    pts.dedup();
    pts.len()
}

/// `|z|` of an exact value is `1` up to sign on the real line.
pub fn is_unit_real(z: &Cq) -> bool {
    z.im.is_zero() && z.re.abs().is_one()
}

/// Convenience for tests and tables: integer coordinates as exact complex.
pub fn cvec(v: &[i64]) -> Vec<Cq> {
    v.iter().map(|&k| ci(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{cq, qf};

    fn qv(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&k| q(k)).collect()
    }

    #[test]
    fn theta_examples() {
        let t = TorusPoint::new(cvec(&[2, 3, 5])).unwrap();
        let th = theta_on_torus(&t);
        assert_eq!(th.coords(), &[cq(qf(1, 5)), cq(qf(1, 3)), cq(qf(1, 2))]);
        assert_eq!(theta_on_torus(&th), t);
        assert_eq!(theta_on_root(4, (1, 2)).unwrap(), (3, 4));
        assert_eq!(theta_on_root(4, (1, 4)).unwrap(), (1, 4));
        assert!(theta_on_root(4, (2, 2)).is_err());
        let y = TorusPoint::theta_fixed(5, &cvec(&[2, 3])).unwrap();
        assert!(y.is_theta_fixed());
        assert!(!t.is_theta_fixed());
    }

    #[test]
    fn root_type_counts() {
        for n in 1..=9usize {
            let roots = classify_restricted_roots(n);
            let count = |k| roots.iter().filter(|r| r.kind == k).count();
            assert_eq!(count(RootType::R3), n / 2);
            assert_eq!(count(RootType::R2), if n % 2 == 1 { 2 * (n / 2) } else { 0 });
            assert_eq!(roots.len(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(restrict_character(&qv(&[1, 0, 0, -1])), qv(&[2, 0]));
        assert_eq!(restrict_character(&qv(&[-1, 1])), qv(&[-2]));
        let e: Vec<Cq> = qv(&[-3, -1, 1, 3]).into_iter().map(cq).collect();
        assert_eq!(norm_on_characters(&e).unwrap(), vec![ci(-6), ci(-2)]);
        assert_eq!(norm_on_characters(&cvec(&[1, 1])), Err(Error::NotThetaStable));
    }

    #[test]
    fn norm_of_roots_give_type_b_coordinates() {
        // In norm coordinates every Nα is a positive root of B_ℓ, and every
        // positive root of B_ℓ arises.
        for n in 2..=9usize {
            let ell = n / 2;
            let mut got: Vec<Vec<Q>> = classify_restricted_roots(n)
                .iter()
                .map(|r| quotient_coords(&norm_root(n, r.source.0, r.source.1).unwrap()).unwrap())
                .collect();
            got.sort();
            got.dedup();
            let mut want = RootSystem::new(Family::B, ell).unwrap().positive_roots();
            want.sort();
            assert_eq!(got, want, "N = {n}");
        }
    }

    #[test]
    fn coroot_example() {
        let roots = classify_restricted_roots(4);
        let r = roots.iter().find(|r| r.source == (1, 2)).unwrap();
        assert_eq!(r.kind, RootType::R1);
        assert_eq!(coroot_of_restricted(4, r).unwrap(), qv(&[1, -1, 1, -1]));
        let roots = classify_restricted_roots(3);
        let r = roots.iter().find(|r| r.source == (1, 2)).unwrap();
        assert_eq!(r.kind, RootType::R2);
        assert_eq!(coroot_of_restricted(3, r).unwrap(), qv(&[2, 0, -2]));
    }

    #[test]
    fn norm_and_restriction_norm() {
        let t = TorusPoint::new(cvec(&[6, 2, 3, 1])).unwrap();
        assert_eq!(norm_torus(&t), vec![ci(6), cq(qf(2, 3))]);
        let y = TorusPoint::theta_fixed(4, &cvec(&[2, 3])).unwrap();
        assert_eq!(
            restriction_norm(&y).unwrap(),
            vec![ci(4), ci(9), ci(1), cq(qf(1, 9)), cq(qf(1, 4))]
        );
        let y = TorusPoint::theta_fixed(3, &cvec(&[2])).unwrap();
        assert_eq!(restriction_norm(&y).unwrap(), vec![ci(4), cq(qf(1, 4))]);
        assert_eq!(restriction_norm(&t), Err(Error::NotThetaFixed));
    }

    #[test]
    fn correspondence_examples() {
        let t = correspondence_a(4, &cvec(&[2, 3])).unwrap();
        assert_eq!(t.coords(), cvec(&[2, 3, 1, 1]).as_slice());
        assert!(matches!(correspondence_a(5, &cvec(&[1, 1])), Err(Error::Irregular(_))));
        assert!(matches!(correspondence_a(4, &cvec(&[2, 2])), Err(Error::Irregular(_))));
        assert_eq!(correspondence_n(&t), cvec(&[2, 3]));
    }

    #[test]
    fn theta_weyl_action_commutes_with_norm() {
        let t = TorusPoint::new(cvec(&[2, 3, 7, 5, 11])).unwrap();
        let b = ClassicalGroup::new(Family::B, 2);
        for w in b.weyl_elements() {
            let moved = theta_weyl_act_on_torus(&w, &t).unwrap();
            assert_eq!(norm_torus(&moved), weyl_act_mult(&w, &norm_torus(&t)));
        }
    }

    #[test]
    fn fast_canonical_form_matches_enumeration() {
        let s = vec![cq(qf(1, 2)), ci(3), cq(qf(-2, 5))];
        let b = ClassicalGroup::new(Family::C, 3);
        let brute = b.weyl_elements().iter().map(|w| weyl_act_mult(w, &s)).min_by(|x, y| cmp_vec(x, y)).unwrap();
        assert_eq!(canonical_class(&b, &s), brute);
    }

    #[test]
    fn so_even_fiber_has_two_classes() {
        for ell in 1..=4 {
            let s: Vec<Cq> = (0..ell).map(|k| ci(k as i64 + 2)).collect();
            assert_eq!(fiber_size(&ClassicalGroup::new(Family::D, ell), &s), 2);
            assert_eq!(fiber_size(&ClassicalGroup::new(Family::B, ell), &s), 1);
        }
        // a self-inverse coordinate merges the two classes
        let s = vec![ci(-1), ci(3)];
        assert_eq!(fiber_size(&ClassicalGroup::new(Family::D, 2), &s), 1);
    }

    #[test]
    fn gl2_transfer_factor_for_so3_is_one() {
        let x = vec![ci(5)];
        let t = correspondence_h_to_g(HKind::SoOdd, 2, &x).unwrap();
        let d = transfer_factor_hg(HKind::SoOdd, &x, &t).unwrap();
        assert!((d - 1.0).abs() < 1e-12, "{d}");
    }

    #[test]
    fn unassociated_points_rejected() {
        let t = TorusPoint::padded(4, &cvec(&[2, 3])).unwrap();
        assert!(matches!(transfer_factor_hg(HKind::SoOdd, &cvec(&[2, 5]), &t), Err(Error::Precondition(_))));
        assert!(transfer_factor_hg(HKind::Sp, &cvec(&[2, 3]), &t).is_err());
    }
}

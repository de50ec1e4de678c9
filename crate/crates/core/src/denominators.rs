//! Twisted Weyl denominators on the θ-fixed torus and the identities they
//! satisfy: product formula, Weyl denominator of `E`, alternating traces on
//! exterior powers, the square identity for `Δ_θ`, and the ratios expressing
//! transfer factors through denominators.

use num_traits::{One, Zero};

use crate::adjoint::{det_one_minus, eigenvalues_f64, operator_matrix, theta_lie, LieSpace, SparseMat, Twist};
use crate::arthur::EndoscopicDatum;
use crate::error::{Error, Result};
use crate::exact::{abs_f64, ci, powi, q, Cq, Q};
use crate::groups::{ClassicalGroup, HKind};
use crate::linalg::{determinant, Matrix};
use crate::twisted::{
    classify_restricted_roots, eval_monomial, transfer_factor_endo, transfer_factor_hg, TorusPoint, TwistedDatum,
};

/// Tolerance on the unit-circle margin for contraction tests.
pub const CONTRACTION_TOL: f64 = 1e-10;

fn require_fixed(t: &TorusPoint) -> Result<()> {
    if t.is_theta_fixed() {
        Ok(())
    } else {
        Err(Error::NotThetaFixed)
    }
}

/// `det(1 - Ad(θt))` on `𝔲⁺`, from the matrix of `X ↦ -J Ad(t⁻¹)(ᵗX) J⁻¹`.
pub fn denom_operator(t: &TorusPoint) -> Result<Cq> {
    require_fixed(t)?;
    det_one_minus(t, Twist::ThetaAfterAd, &LieSpace::borel(t.len()))
}

/// Closed product: `Π(1 - t_i²)` (N even) or `Π(1 - t_i⁴)` (N odd), times
/// `Π_{i<j} (1 - t_i²/t_j²)(1 - t_i² t_j²)`.
pub fn denom_product(n: usize, t: &[Cq]) -> Result<Cq> {
    if t.len() != n / 2 {
        return Err(Error::DimensionMismatch { expected: n / 2, got: t.len() });
    }
    if t.iter().any(Zero::is_zero) {
        return Err(Error::ZeroCoordinate);
    }
    let sq: Vec<Cq> = t.iter().map(|z| z.clone() * z.clone()).collect();
    let one = Cq::one();
    let mut acc = one.clone();
    for s in &sq {
        acc *= if n % 2 == 0 { one.clone() - s.clone() } else { one.clone() - s.clone() * s.clone() };
    }
    for i in 0..sq.len() {
        for j in i + 1..sq.len() {
            acc *= (one.clone() - sq[i].clone() / sq[j].clone()) * (one.clone() - sq[i].clone() * sq[j].clone());
        }
    }
    Ok(acc)
}

/// `Π_{α>0} (1 - e^α)` for `E` at the squared coordinates.
pub fn denom_e_weyl(n: usize, t: &[Cq]) -> Result<Cq> {
    let e = TwistedDatum::new(n)?.e_group();
    let sq: Vec<Cq> = t.iter().map(|z| z.clone() * z.clone()).collect();
    if sq.len() != e.rank {
        return Err(Error::DimensionMismatch { expected: e.rank, got: sq.len() });
    }
    let mut acc = Cq::one();
    for a in e.positive_roots() {
        acc *= Cq::one() - eval_monomial(&sq, &a)?;
    }
    Ok(acc)
}

/// `det(1 - θt)` on the nilradical of the θ-stable parabolic with the given
/// (palindromic) block sizes.
pub fn denom_n_theta(blocks: &[usize], t: &TorusPoint) -> Result<Cq> {
    require_fixed(t)?;
    det_one_minus(t, Twist::ThetaAfterAd, &LieSpace::Nilradical(blocks.to_vec()))
}

/// Largest nilradical handled by [`alternating_trace`].
pub const MAX_EXTERIOR_DIM: usize = 16;

/// `Σ_q (-1)^q tr(θt | Λ^q 𝔫)`, with `tr Λ^q A` the sum of the principal
/// `q × q` minors of `A`.
pub fn alternating_trace(blocks: &[usize], t: &TorusPoint) -> Result<Cq> {
    require_fixed(t)?;
    let a = operator_matrix(t, Twist::ThetaAfterAd, &LieSpace::Nilradical(blocks.to_vec()))?;
    let d = a.len();
    if d > MAX_EXTERIOR_DIM {
        return Err(Error::Precondition(format!("dim 𝔫 = {d} exceeds {MAX_EXTERIOR_DIM}")));
    }
    let mut acc = Cq::zero();
    for mask in 0u32..(1 << d) {
        let idx: Vec<usize> = (0..d).filter(|i| mask >> i & 1 == 1).collect();
        let minor: Matrix<Cq> = idx.iter().map(|&r| idx.iter().map(|&c| a[r][c].clone()).collect()).collect();
        let m = determinant(minor);
        if idx.len() % 2 == 0 {
            acc += m;
        } else {
            acc -= m;
        }
    }
    Ok(acc)
}

/// `1 - max |λ|` over the eigenvalues `λ` of `θt` on `𝔫`.
pub fn contraction_margin(blocks: &[usize], t: &TorusPoint) -> Result<f64> {
    require_fixed(t)?;
    let a = operator_matrix(t, Twist::ThetaAfterAd, &LieSpace::Nilradical(blocks.to_vec()))?;
    let max = eigenvalues_f64(&a).iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(1.0 - max)
}

/// All eigenvalues of `θt` on `𝔫` have modulus `< 1`.
pub fn is_contracting(blocks: &[usize], t: &TorusPoint) -> Result<bool> {
    Ok(contraction_margin(blocks, t)? > CONTRACTION_TOL)
}

/// `ρ = ½ Σ α_res` over the positive roots of `GL(N)`, on `T¹`: its `k`-th
/// coordinate is `N + 1 - 2k`.
pub fn rho_restricted(n: usize) -> Vec<Q> {
    let mut rho = vec![q(0); n / 2];
    for r in classify_restricted_roots(n) {
        for (x, y) in rho.iter_mut().zip(&r.restricted) {
            *x += y;
        }
    }
    rho.into_iter().map(|x| x / q(2)).collect()
}

/// `e^{-ρ}(t)` for `t = (y, [1], y⁻¹) ∈ T¹`.
pub fn e_minus_rho(t: &TorusPoint) -> Result<Cq> {
    require_fixed(t)?;
    let n = t.len();
    let minus: Vec<Q> = rho_restricted(n).into_iter().map(|x| -x).collect();
    eval_monomial(&t.coords()[..n / 2], &minus)
}

/// `Δ_θ(t) = e^{-ρ}(t) D^θ_{𝔲⁺}(t)`.
pub fn delta_theta(t: &TorusPoint) -> Result<Cq> {
    Ok(e_minus_rho(t)? * denom_operator(t)?)
}

/// `det(1 - θ)` on `𝔱/𝔱¹`.
pub fn det_one_minus_theta_torus(n: usize) -> Result<Cq> {
    let space = LieSpace::ModFixedTorus;
    let basis = space.basis(n);
    let off = n * (n - 1);
    let diag: Vec<SparseMat> = basis[off..].to_vec();
    let d = diag.len();
    let mut m = vec![vec![Cq::zero(); d]; d];
    for (k, b) in diag.iter().enumerate() {
        let image = space.coords(n, &theta_lie(n, b))?;
        for r in 0..d {
            let id = if r == k { Cq::one() } else { Cq::zero() };
            m[r][k] = id - image[off + r].clone();
        }
    }
    Ok(determinant(m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WdCheck {
    /// `Δ_θ(t)² · det(1 - θ)|_{𝔱/𝔱¹}`
    pub lhs: Cq,
    /// `(-1)^{dim 𝔲⁺} det(1 - Ad(θt))|_{𝔤/𝔱¹}`
    pub rhs: Cq,
}

impl WdCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Both sides of the square identity for `Δ_θ` at a regular point of `T¹`.
pub fn check_wd_identity(t: &TorusPoint) -> Result<WdCheck> {
    require_fixed(t)?;
    let n = t.len();
    let full = det_one_minus(t, Twist::ThetaAfterAd, &LieSpace::ModFixedTorus)?;
    if full.is_zero() {
        return Err(Error::Irregular("det(1 - Ad(θt)) vanishes on 𝔤/𝔱¹".into()));
    }
    let dim_u = n * (n - 1) / 2;
    let sign = if dim_u % 2 == 0 { ci(1) } else { ci(-1) };
    let d = delta_theta(t)?;
    Ok(WdCheck { lhs: d.clone() * d * det_one_minus_theta_torus(n)?, rhs: sign * full })
}

/// `e^{-ρ_H}(x) D_{𝔫_H}(x)` at `x = y²`, with `x^{-ρ_H} = y^{-2ρ_H}`.
pub fn weyl_denominator_h(group: &ClassicalGroup, y: &[Cq]) -> Result<Cq> {
    if y.len() != group.rank {
        return Err(Error::DimensionMismatch { expected: group.rank, got: y.len() });
    }
    let x: Vec<Cq> = y.iter().map(|z| z.clone() * z.clone()).collect();
    let roots = group.positive_roots();
    let mut two_rho = vec![q(0); group.rank];
    let mut d = Cq::one();
    for a in &roots {
        for (r, v) in two_rho.iter_mut().zip(a) {
            *r += v;
        }
        d *= Cq::one() - eval_monomial(&x, a)?;
    }
    let minus: Vec<Q> = two_rho.into_iter().map(|v| -v).collect();
    Ok(eval_monomial(y, &minus)? * d)
}

/// Relative deviation `|a - b| / |b|`.
fn rel_dev(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaCheck {
    pub transfer_factor: f64,
    pub ratio: f64,
    pub rel_error: f64,
}

impl LemmaCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.rel_error <= tol
    }
}

/// First ratio identity at the point of `T_H` with square roots `y`:
/// `Δ_{H,G}(x, 𝒜(x)) = |e^{-ρ}(t) D^θ(t)| / |e^{-ρ_H}(x) D_{𝔫_H}(x)|`
/// with `x = y²` and `t = (y, [1], y⁻¹)`.
///
/// The transfer factor is evaluated at `diag(x, 1, …, 1)`, which is a
/// different representative of the θ-class of `t`.
pub fn check_den_lemma_1(kind: HKind, n: usize, y: &[Cq]) -> Result<LemmaCheck> {
    kind.check_n(n)?;
    let x: Vec<Cq> = y.iter().map(|z| z.clone() * z.clone()).collect();
    let t_rep = TorusPoint::padded(n, &x)?;
    let t_fixed = TorusPoint::theta_fixed(n, y)?;
    let transfer_factor = transfer_factor_hg(kind, &x, &t_rep)?;
    let num = delta_theta(&t_fixed)?;
    let den = weyl_denominator_h(&kind.group(n), y)?;
    if den.is_zero() || num.is_zero() {
        return Err(Error::Irregular("vanishing denominator".into()));
    }
    let ratio = abs_f64(&num) / abs_f64(&den);
    Ok(LemmaCheck { transfer_factor, ratio, rel_error: rel_dev(transfer_factor, ratio) })
}

/// Second ratio identity for `H' × H''`:
/// `Δ = |e^{-ρ_H} D_H(x)| / (|e^{-ρ_{H'}} D_{H'}(x')| |e^{-ρ_{H''}} D_{H''}(x'')|)`
/// with `x = x' ⊕ x''` and all points given by square roots.
pub fn check_den_lemma_2(datum: &EndoscopicDatum, y1: &[Cq], y2: &[Cq]) -> Result<LemmaCheck> {
    let h = datum.target.group(datum.n());
    let (g1, g2) = datum.groups();
    let y: Vec<Cq> = y1.iter().chain(y2).cloned().collect();
    let sq = |v: &[Cq]| -> Vec<Cq> { v.iter().map(|z| z.clone() * z.clone()).collect() };
    let transfer_factor = transfer_factor_endo(&h, (&g1, &g2), (&sq(y1), &sq(y2)), &sq(&y))?;
    let num = weyl_denominator_h(&h, &y)?;
    let den = weyl_denominator_h(&g1, y1)? * weyl_denominator_h(&g2, y2)?;
    if den.is_zero() || num.is_zero() {
        return Err(Error::Irregular("vanishing denominator".into()));
    }
    let ratio = abs_f64(&num) / abs_f64(&den);
    Ok(LemmaCheck { transfer_factor, ratio, rel_error: rel_dev(transfer_factor, ratio) })
}

/// `t^k` coordinatewise, for building test points.
pub fn power_point(t: &[Cq], k: i64) -> Vec<Cq> {
    t.iter().map(|z| powi(z, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{cq, qf};
    use crate::roots::Family;
    use crate::twisted::cvec;
    use proptest::prelude::*;

    fn fixed(n: usize, y: &[Cq]) -> TorusPoint {
        TorusPoint::theta_fixed(n, y).unwrap()
    }

    #[test]
    fn gl2_operator_is_one_minus_x_squared() {
        let x = ci(3);
        let v = denom_operator(&fixed(2, &[x.clone()])).unwrap();
        assert_eq!(v, ci(1 - 9));
        assert_eq!(denom_product(2, &[x]).unwrap(), ci(-8));
    }

    #[test]
    fn product_examples() {
        assert_eq!(denom_product(2, &[ci(2)]).unwrap(), ci(-3));
        assert_eq!(denom_product(3, &[ci(2)]).unwrap(), ci(-15));
        assert_eq!(denom_product(4, &cvec(&[1, 3])).unwrap(), ci(0));
        assert_eq!(denom_product(5, &cvec(&[-1, 3])).unwrap(), ci(0));
        assert_eq!(denom_e_weyl(3, &[ci(2)]).unwrap(), ci(-15));
        assert_eq!(denom_product(1, &[]).unwrap(), ci(1));
    }

    #[test]
    fn identity_point_is_singular() {
        for n in 2..=5 {
            let one = vec![ci(1); n / 2];
            assert_eq!(denom_operator(&fixed(n, &one)).unwrap(), ci(0));
            assert!(!is_contracting(&vec![1; n], &fixed(n, &one)).unwrap());
        }
    }

    #[test]
    fn wrong_shape_rejected() {
        let t = TorusPoint::new(cvec(&[2, 3])).unwrap();
        assert_eq!(denom_operator(&t), Err(Error::NotThetaFixed));
    }

    #[test]
    fn rho_coordinates() {
        assert_eq!(rho_restricted(4), vec![q(3), q(1)]);
        assert_eq!(rho_restricted(5), vec![q(4), q(2)]);
        assert_eq!(rho_restricted(2), vec![q(1)]);
    }

    #[test]
    fn torus_quotient_determinant() {
        for n in 1..=7 {
            let ell = n / 2;
            assert_eq!(det_one_minus_theta_torus(n).unwrap(), ci(1 << (n - ell)));
        }
    }

    #[test]
    fn wd_identity_gl2_exact() {
        let t = fixed(2, &[ci(4)]);
        let check = check_wd_identity(&t).unwrap();
        assert!(check.holds(), "{check:?}");
        assert!(check_wd_identity(&fixed(2, &[ci(1)])).is_err());
    }

    #[test]
    fn borel_case_of_n_theta() {
        let t = fixed(4, &[cq(qf(2, 3)), ci(5)]);
        assert_eq!(denom_n_theta(&[1, 1, 1, 1], &t).unwrap(), denom_operator(&t).unwrap());
        assert!(denom_n_theta(&[1, 3], &t).is_err());
    }

    /// Eigenvalue moduli from the cycle structure of the monomial operator.
    fn cycle_margin(blocks: &[usize], t: &TorusPoint) -> f64 {
        let a = operator_matrix(t, Twist::ThetaAfterAd, &LieSpace::Nilradical(blocks.to_vec())).unwrap();
        let d = a.len();
        let target: Vec<usize> = (0..d).map(|c| (0..d).find(|&r| !a[r][c].is_zero()).unwrap()).collect();
        let mut seen = vec![false; d];
        let mut max: f64 = 0.0;
        for s in 0..d {
            if seen[s] {
                continue;
            }
            let (mut cur, mut len, mut prod) = (s, 0, Cq::one());
            while !seen[cur] {
                seen[cur] = true;
                prod *= a[target[cur]][cur].clone();
                cur = target[cur];
                len += 1;
            }
            max = max.max(abs_f64(&prod).powf(1.0 / len as f64));
        }
        1.0 - max
    }

    #[test]
    fn contraction_examples() {
        let small = fixed(4, &[cq(qf(1, 5)), cq(qf(1, 2))]);
        assert!(is_contracting(&[1, 1, 1, 1], &small).unwrap());
        let large = fixed(4, &cvec(&[5, 2]));
        assert!(!is_contracting(&[1, 1, 1, 1], &large).unwrap());
        assert!(!denom_operator(&small).unwrap().is_zero());
    }

    #[test]
    fn den_lemma_1_on_each_target() {
        let y = vec![cq(qf(3, 2)), ci(5), cq(qf(-2, 7))];
        for (kind, n) in [(HKind::SoOdd, 6), (HKind::SoEven, 6), (HKind::Sp, 7), (HKind::SoOdd, 2), (HKind::Sp, 3)] {
            let check = check_den_lemma_1(kind, n, &y[..n / 2]).unwrap();
            assert!(check.holds(1e-9), "{kind} N={n}: {check:?}");
            if kind != HKind::SoEven {
                assert!((check.transfer_factor - 1.0).abs() < 1e-10, "{kind} N={n}: {check:?}");
            }
        }
    }

    #[test]
    fn den_lemma_2_on_catalog() {
        let y = vec![cq(qf(3, 2)), ci(5), cq(qf(-2, 7)), ci(3)];
        for (kind, n) in [(HKind::SoOdd, 8), (HKind::SoEven, 8), (HKind::Sp, 9), (HKind::SoEven, 2), (HKind::Sp, 1)] {
            for datum in crate::arthur::endoscopic_catalog(kind, n).unwrap() {
                let (g1, g2) = datum.groups();
                let check = check_den_lemma_2(&datum, &y[..g1.rank], &y[g1.rank..g1.rank + g2.rank]).unwrap();
                assert!(check.holds(1e-9), "{datum}: {check:?}");
            }
        }
    }

    fn arb_q() -> impl Strategy<Value = Cq> {
        (prop::sample::select(vec![-7i64, -5, -3, -2, -1, 1, 2, 3, 5, 7]), 1i64..=6).prop_map(|(a, b)| cq(qf(a, b)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn three_denominators_agree(n in 2usize..=7, raw in prop::collection::vec(arb_q(), 3)) {
            let y = &raw[..n / 2];
            let op = denom_operator(&fixed(n, y)).unwrap();
            prop_assert_eq!(&op, &denom_product(n, y).unwrap());
            prop_assert_eq!(&op, &denom_e_weyl(n, y).unwrap());
        }

        #[test]
        fn alternating_trace_is_determinant(n in 2usize..=4, raw in prop::collection::vec(arb_q(), 2)) {
            let t = fixed(n, &raw[..n / 2]);
            let parabolics: Vec<Vec<usize>> = match n {
                2 => vec![vec![1, 1]],
                3 => vec![vec![1, 1, 1]],
                _ => vec![vec![1, 1, 1, 1], vec![2, 2], vec![1, 2, 1]],
            };
            for p in parabolics {
                prop_assert_eq!(alternating_trace(&p, &t).unwrap(), denom_n_theta(&p, &t).unwrap());
            }
        }

        #[test]
        fn eigenvalues_match_cycle_structure(n in 2usize..=6, raw in prop::collection::vec(arb_q(), 3)) {
            let t = fixed(n, &raw[..n / 2]);
            let blocks = vec![1; n];
            let schur = contraction_margin(&blocks, &t).unwrap();
            prop_assert!((schur - cycle_margin(&blocks, &t)).abs() < 1e-9);
        }

        #[test]
        fn wd_identity(n in 2usize..=5, raw in prop::collection::vec(arb_q(), 2)) {
            let t = fixed(n, &raw[..n / 2]);
            if let Ok(check) = check_wd_identity(&t) {
                prop_assert!(check.holds(), "{:?}", check);
            }
        }

        #[test]
        fn delta_is_weyl_invariant_up_to_sign(n in 2usize..=7, raw in prop::collection::vec(arb_q(), 3)) {
            let y = &raw[..n / 2];
            let delta = |v: &[Cq]| delta_theta(&fixed(n, v)).unwrap();
            let base = delta(y);
            for w in ClassicalGroup::new(Family::B, n / 2).weyl_elements() {
                let moved = delta(&crate::twisted::weyl_act_mult(&w, y));
                prop_assert!(moved == base || moved == -base.clone());
                prop_assert_eq!(moved.clone() * moved, base.clone() * base.clone());
            }
        }
    }
}

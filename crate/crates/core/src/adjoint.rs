//! Literal matrix model of `gl(N)` with the involution
//! `θ(X) = -J ᵗX J⁻¹` (differential of `g ↦ J ᵗg⁻¹ J⁻¹`) and the twisted
//! adjoint operators built from it.
//!
//! `J` is anti-diagonal with entries `J_{k, N+1-k} = (-1)^k` (1-based), so the
//! top-right entry is `-1` and the bottom-left one is `(-1)^N`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{ci, q_to_f64, Cq};
use crate::linalg::{determinant, Matrix};
use crate::twisted::TorusPoint;

/// Sparse `N × N` matrix, 0-based `(row, col)` keys.
pub type SparseMat = BTreeMap<(usize, usize), Cq>;

pub fn elementary(i: usize, j: usize) -> SparseMat {
    let mut m = SparseMat::new();
    m.insert((i, j), Cq::one());
    m
}

pub fn j_matrix(n: usize) -> SparseMat {
    (0..n)
        .map(|k| {
            let sign = if (k + 1) % 2 == 0 { 1 } else { -1 };
            ((k, n - 1 - k), ci(sign))
        })
        .collect()
}

pub fn transpose(a: &SparseMat) -> SparseMat {
    a.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect()
}

pub fn mul(a: &SparseMat, b: &SparseMat) -> SparseMat {
    let mut out = SparseMat::new();
    for (&(i, k), x) in a {
        for (&(_, j), y) in b.range((k, 0)..(k + 1, 0)) {
            let e = out.entry((i, j)).or_insert_with(Cq::zero);
            *e = e.clone() + x.clone() * y.clone();
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn scale(a: &SparseMat, c: &Cq) -> SparseMat {
    a.iter().map(|(&k, v)| (k, v.clone() * c.clone())).collect()
}

/// `θ(X) = -J ᵗX J⁻¹`; `J` is a signed permutation matrix so `J⁻¹ = ᵗJ`.
pub fn theta_lie(n: usize, x: &SparseMat) -> SparseMat {
    let j = j_matrix(n);
    let j_inv = transpose(&j);
    scale(&mul(&mul(&j, &transpose(x)), &j_inv), &ci(-1))
}

/// `Ad(t) X = t X t⁻¹` for diagonal `t`.
pub fn ad_torus(t: &TorusPoint, x: &SparseMat) -> SparseMat {
    let t = t.coords();
    x.iter()
        .map(|(&(a, b), v)| ((a, b), v.clone() * t[a].clone() / t[b].clone()))
        .collect()
}

/// Order of composition in the twisted adjoint operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Twist {
    /// `Ad(θt) = θ ∘ Ad(t)`, the operator of twisted Weyl denominators.
    ThetaAfterAd,
    /// `Ad(t) ∘ θ`, the operator of twisted transfer factors.
    AdAfterTheta,
}

/// Subspaces and quotients of `gl(N)` the operators are restricted to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieSpace {
    /// Nilradical of the standard parabolic with the given block sizes.
    /// `vec![1; N]` is the Borel nilradical `𝔲⁺`.
    Nilradical(Vec<usize>),
    /// `𝔤/𝔱`, spanned by the off-diagonal elementary matrices.
    OffDiagonal,
    /// `𝔤/𝔱¹`: off-diagonal part plus `𝔱/𝔱¹ ≅ (1-θ)𝔱`.
    ModFixedTorus,
}

impl LieSpace {
    pub fn borel(n: usize) -> Self {
        LieSpace::Nilradical(vec![1; n])
    }

    fn check(&self, n: usize) -> Result<()> {
        if let LieSpace::Nilradical(blocks) = self {
            let total: usize = blocks.iter().sum();
            if total != n || blocks.iter().any(|&b| b == 0) {
                return Err(Error::Precondition(format!(
                    "parabolic blocks {blocks:?} do not compose N = {n}"
                )));
            }
            if blocks.iter().ne(blocks.iter().rev()) {
                return Err(Error::Precondition(format!(
                    "parabolic blocks {blocks:?} are not θ-stable (not palindromic)"
                )));
            }
        }
        Ok(())
    }

    fn off_diagonal_index(n: usize) -> Vec<(usize, usize)> {
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .collect()
    }

    /// Entries spanning the space, in basis order. Diagonal generators of
    /// `(1-θ)𝔱` are reported separately by [`LieSpace::basis`].
    fn entries(&self, n: usize) -> Vec<(usize, usize)> {
        match self {
            LieSpace::Nilradical(blocks) => {
                let block_of: Vec<usize> = blocks
                    .iter()
                    .enumerate()
                    .flat_map(|(b, &len)| std::iter::repeat(b).take(len))
                    .collect();
                (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| block_of[i] < block_of[j])
                    .collect()
            }
            LieSpace::OffDiagonal | LieSpace::ModFixedTorus => Self::off_diagonal_index(n),
        }
    }

    /// Basis elements as matrices.
    pub fn basis(&self, n: usize) -> Vec<SparseMat> {
        let mut out: Vec<SparseMat> = self.entries(n).into_iter().map(|(i, j)| elementary(i, j)).collect();
        if *self == LieSpace::ModFixedTorus {
            for k in 0..n.div_ceil(2) {
                let mut d = elementary(k, k);
                d.insert((n - 1 - k, n - 1 - k), Cq::one());
                out.push(d);
            }
        }
        out
    }

    pub fn dim(&self, n: usize) -> usize {
        self.basis(n).len()
    }

    /// Coordinates of `x` in the basis; for the quotient by `𝔱¹` the diagonal
    /// is projected onto `(1-θ)𝔱` along `𝔱¹`.
    pub fn coords(&self, n: usize, x: &SparseMat) -> Result<Vec<Cq>> {
        let entries = self.entries(n);
        let mut out = Vec::with_capacity(entries.len());
        for &(i, j) in &entries {
            out.push(x.get(&(i, j)).cloned().unwrap_or_else(Cq::zero));
        }
        let outside = x.keys().any(|&(i, j)| {
            if i == j {
                *self != LieSpace::ModFixedTorus && *self != LieSpace::OffDiagonal
            } else {
                !entries.contains(&(i, j))
            }
        });
        if outside {
            return Err(Error::Precondition("operator does not preserve the subspace".into()));
        }
        if *self == LieSpace::ModFixedTorus {
            let diag = |k: usize| x.get(&(k, k)).cloned().unwrap_or_else(Cq::zero);
            for k in 0..n.div_ceil(2) {
                let kk = n - 1 - k;
                if k == kk {
                    out.push(diag(k));
                } else {
                    out.push((diag(k) + diag(kk)) / ci(2));
                }
            }
        }
        Ok(out)
    }
}

pub fn apply(n: usize, t: &TorusPoint, twist: Twist, x: &SparseMat) -> SparseMat {
    match twist {
        Twist::ThetaAfterAd => theta_lie(n, &ad_torus(t, x)),
        Twist::AdAfterTheta => ad_torus(t, &theta_lie(n, x)),
    }
}

/// Matrix of the twisted operator on `space`; column `k` holds the image of
/// the `k`-th basis element.
pub fn operator_matrix(t: &TorusPoint, twist: Twist, space: &LieSpace) -> Result<Matrix<Cq>> {
    let n = t.len();
    space.check(n)?;
    let basis = space.basis(n);
    let d = basis.len();
    let mut m = vec![vec![Cq::zero(); d]; d];
    for (k, b) in basis.iter().enumerate() {
        let image = space.coords(n, &apply(n, t, twist, b))?;
        for (r, v) in image.into_iter().enumerate() {
            m[r][k] = v;
        }
    }
    Ok(m)
}

/// `det(1 - A)` for the twisted operator `A` on `space`.
pub fn det_one_minus(t: &TorusPoint, twist: Twist, space: &LieSpace) -> Result<Cq> {
    let mut m = operator_matrix(t, twist, space)?;
    for (i, row) in m.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let id = if i == j { Cq::one() } else { Cq::zero() };
            *x = id - x.clone();
        }
    }
    Ok(determinant(m))
}

/// Complex eigenvalues of an exact matrix, in binary64 via a Schur form.
pub fn eigenvalues_f64(m: &Matrix<Cq>) -> Vec<Complex<f64>> {
    let d = m.len();
    if d == 0 {
        return Vec::new();
    }
    let dm = DMatrix::from_fn(d, d, |i, j| Complex::new(q_to_f64(&m[i][j].re), q_to_f64(&m[i][j].im)));
    dm.schur().eigenvalues().expect("complex Schur form is triangular").iter().copied().collect()
}

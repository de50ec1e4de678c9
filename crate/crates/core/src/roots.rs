//! Classical root systems A/B/C/D in the standard coordinates, Weyl groups
//! as signed permutations, and membership in the cone spanned by simple
//! roots. The cone test is the generic oracle every closed-form exponent
//! order in [`crate::orders`] is checked against.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{is_even_natural, is_natural, q, Q};
use crate::linalg::solve_columns;

/// Default cap on `|W|` for orbit enumeration.
pub const DEFAULT_MAX_WEYL_ORDER: u128 = 3_628_800;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootSystem {
    family: Family,
    rank: usize,
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = if family == Family::D { 2 } else { 1 };
        if rank < min {
            return Err(Error::RankOutOfRange {
                family: family.letter(),
                rank,
            });
        }
        Ok(RootSystem { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Length of the coordinate vectors: `A_{n-1}` lives in `n` coordinates.
    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    pub fn simple_roots(&self) -> Vec<Vec<Q>> {
        let n = self.ambient_dim();
        let l = self.rank;
        let mut out: Vec<Vec<Q>> = (0..self.chain_len()).map(|i| unit_pair(n, i, 1, i + 1, -1)).collect();
        match self.family {
            Family::A => {}
            Family::B => out.push(unit(n, l - 1, 1)),
            Family::C => out.push(unit(n, l - 1, 2)),
            Family::D => out.push(unit_pair(n, l - 2, 1, l - 1, 1)),
        }
        out
    }

    pub fn positive_roots(&self) -> Vec<Vec<Q>> {
        let n = self.ambient_dim();
        let mut out = Vec::new();
        for (i, j) in (0..n).tuple_combinations() {
            out.push(unit_pair(n, i, 1, j, -1));
            if self.family != Family::A {
                out.push(unit_pair(n, i, 1, j, 1));
            }
        }
        match self.family {
            Family::B => out.extend((0..n).map(|i| unit(n, i, 1))),
            Family::C => out.extend((0..n).map(|i| unit(n, i, 2))),
            _ => {}
        }
        out
    }

    /// Number of simple roots of the form `e_i - e_{i+1}`.
    fn chain_len(&self) -> usize {
        match self.family {
            Family::A => self.rank,
            _ => self.rank - 1,
        }
    }

    pub fn weyl_order(&self) -> u128 {
        let l = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(l + 1),
            Family::B | Family::C => (1u128 << l) * fact(l),
            Family::D => (1u128 << (l - 1)) * fact(l),
        }
    }

    /// All Weyl group elements, in a deterministic order.
    pub fn weyl_elements(&self, bound: u128) -> Result<Vec<WeylElement>> {
        self.check_bound(bound)?;
        let n = self.ambient_dim();
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        if self.family == Family::A {
            return Ok(perms.into_iter().map(WeylElement::permutation).collect());
        }
        let mut out = Vec::new();
        for perm in perms {
            for mask in 0u32..(1 << n) {
                let signs: Vec<i8> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
                if self.family == Family::D && signs.iter().filter(|&&s| s < 0).count() % 2 == 1 {
                    continue;
                }
                out.push(WeylElement {
                    perm: perm.clone(),
                    signs,
                });
            }
        }
        Ok(out)
    }

    fn check_bound(&self, bound: u128) -> Result<()> {
        let order = self.weyl_order();
        if order > bound {
            return Err(Error::OrbitBound { order, bound });
        }
        Ok(())
    }

    /// Reflections in the simple roots, as signed permutations.
    pub fn simple_reflections(&self) -> Vec<WeylElement> {
        let n = self.ambient_dim();
        let mut out: Vec<WeylElement> = (0..self.chain_len())
            .map(|i| {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(i, i + 1);
                WeylElement::permutation(perm)
            })
            .collect();
        match self.family {
            Family::A => {}
            Family::B | Family::C => {
                let mut signs = vec![1; n];
                signs[n - 1] = -1;
                out.push(WeylElement {
                    perm: (0..n).collect(),
                    signs,
                });
            }
            Family::D => {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(n - 2, n - 1);
                let mut signs = vec![1; n];
                signs[n - 2] = -1;
                signs[n - 1] = -1;
                out.push(WeylElement { perm, signs });
            }
        }
        out
    }
}

fn unit(n: usize, i: usize, c: i64) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = q(c);
    v
}

fn unit_pair(n: usize, i: usize, a: i64, j: usize, b: i64) -> Vec<Q> {
    let mut v = unit(n, i, a);
    v[j] = q(b);
    v
}

/// A signed permutation. Acting on a vector `v` it sends the entry at `i`
/// to position `perm[i]`, multiplied by `signs[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl WeylElement {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: signs.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Index(format!("not a permutation: {perm:?}")));
            }
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Index(format!("signs must be ±1: {signs:?}")));
        }
        Ok(WeylElement { perm, signs })
    }

    pub fn permutation(perm: Vec<usize>) -> Self {
        let n = perm.len();
        WeylElement {
            perm,
            signs: vec![1; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::permutation((0..n).collect())
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign_product(&self) -> i8 {
        self.signs.iter().product()
    }

    pub fn act(&self, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); v.len()];
        for (i, x) in v.iter().enumerate() {
            out[self.perm[i]] = if self.signs[i] < 0 { -x.clone() } else { x.clone() };
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let perm = other.perm.iter().map(|&p| self.perm[p]).collect();
        let signs = other
            .perm
            .iter()
            .zip(&other.signs)
            .map(|(&p, &s)| self.signs[p] * s)
            .collect();
        WeylElement { perm, signs }
    }

    pub fn inverse(&self) -> WeylElement {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        WeylElement { perm, signs }
    }
}

pub fn dot(u: &[Q], v: &[Q]) -> Q {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Weyl orbit of `v`, sorted lexicographically and free of duplicates.
pub fn weyl_orbit(sys: &RootSystem, v: &[Q], bound: u128) -> Result<Vec<Vec<Q>>> {
    if v.len() != sys.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: sys.ambient_dim(),
            got: v.len(),
        });
    }
    sys.check_bound(bound)?;
    let gens = sys.simple_reflections();
    let mut seen: BTreeSet<Vec<Q>> = BTreeSet::new();
    let mut frontier = vec![v.to_vec()];
    seen.insert(v.to_vec());
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = g.act(&x);
            if !seen.contains(&y) {
                seen.insert(y.clone());
                frontier.push(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Lattice the cone coefficients must live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoeffSet {
    /// `ℕ`
    Natural,
    /// `2ℕ`
    EvenNatural,
    /// `ℚ≥0`
    NonNegRational,
}

impl CoeffSet {
    pub fn contains(self, x: &Q) -> bool {
        match self {
            CoeffSet::Natural => is_natural(x),
            CoeffSet::EvenNatural => is_even_natural(x),
            CoeffSet::NonNegRational => !x.is_negative(),
        }
    }
}

/// Coefficients `n_α` with `v = Σ n_α α` over the given simple roots, all in
/// `coeffs`; `None` when `v` is outside the cone (or not in the span).
pub fn cone_membership(simple: &[Vec<Q>], v: &[Q], coeffs: CoeffSet) -> Result<Option<Vec<Q>>> {
    let Some(n) = solve_columns(simple, v)? else {
        return Ok(None);
    };
    Ok(n.iter().all(|x| coeffs.contains(x)).then_some(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qf;

    fn qv(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    fn sys(f: Family, r: usize) -> RootSystem {
        RootSystem::new(f, r).unwrap()
    }

    #[test]
    fn rank_validation() {
        assert!(RootSystem::new(Family::A, 0).is_err());
        assert!(RootSystem::new(Family::D, 1).is_err());
        assert!(RootSystem::new(Family::D, 2).is_ok());
    }

    #[test]
    fn standard_simple_roots() {
        assert_eq!(sys(Family::A, 2).simple_roots(), vec![qv(&[1, -1, 0]), qv(&[0, 1, -1])]);
        assert_eq!(sys(Family::B, 2).simple_roots(), vec![qv(&[1, -1]), qv(&[0, 1])]);
        assert_eq!(sys(Family::C, 2).simple_roots(), vec![qv(&[1, -1]), qv(&[0, 2])]);
        assert_eq!(sys(Family::D, 3).simple_roots(), vec![qv(&[1, -1, 0]), qv(&[0, 1, -1]), qv(&[0, 1, 1])]);
        assert_eq!(sys(Family::B, 1).simple_roots(), vec![qv(&[1])]);
    }

    #[test]
    fn positive_root_counts() {
        for r in 1..=6 {
            assert_eq!(sys(Family::A, r).positive_roots().len(), (r + 1) * r / 2);
            assert_eq!(sys(Family::B, r).positive_roots().len(), r * r);
            assert_eq!(sys(Family::C, r).positive_roots().len(), r * r);
            if r >= 2 {
                assert_eq!(sys(Family::D, r).positive_roots().len(), r * (r - 1));
            }
        }
    }

    #[test]
    fn cone_examples() {
        let a2 = sys(Family::A, 2).simple_roots();
        assert_eq!(
            cone_membership(&a2, &qv(&[1, 0, -1]), CoeffSet::Natural).unwrap(),
            Some(qv(&[1, 1]))
        );
        assert_eq!(
            cone_membership(&a2, &qv(&[0, 0, 0]), CoeffSet::Natural).unwrap(),
            Some(qv(&[0, 0]))
        );
        assert_eq!(cone_membership(&a2, &qv(&[1, 0, 0]), CoeffSet::Natural).unwrap(), None);
        assert_eq!(cone_membership(&a2, &qv(&[-1, 1, 0]), CoeffSet::Natural).unwrap(), None);
    }

    /// Exhaustive search over the integer box `0 ≤ n_i ≤ Σ|v_j|`.
    fn brute_cone(simple: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
        let bound: i64 = v.iter().map(|x| x.abs().to_integer().try_into().unwrap_or(0i64)).sum::<i64>() * 2;
        (0..simple.len())
            .map(|_| 0..=bound)
            .multi_cartesian_product()
            .find(|ns| {
                let mut acc = vec![Q::zero(); v.len()];
                for (n, a) in ns.iter().zip(simple) {
                    for (x, y) in acc.iter_mut().zip(a) {
                        *x += q(*n) * y;
                    }
                }
                acc == v
            })
            .map(|ns| ns.into_iter().map(q).collect())
    }

    #[test]
    fn cone_b2_against_box_search() {
        let b2 = sys(Family::B, 2).simple_roots();
        // (1,1) = 1·(e1 - e2) + 2·e2
        let expected = brute_cone(&b2, &qv(&[1, 1]));
        assert_eq!(expected, Some(qv(&[1, 2])));
        assert_eq!(cone_membership(&b2, &qv(&[1, 1]), CoeffSet::Natural).unwrap(), expected);
        for x in -3..=3 {
            for y in -3..=3 {
                let v = qv(&[x, y]);
                assert_eq!(
                    cone_membership(&b2, &v, CoeffSet::Natural).unwrap(),
                    brute_cone(&b2, &v),
                    "{v:?}"
                );
            }
        }
    }

    #[test]
    fn coefficient_sets() {
        let b1 = sys(Family::B, 1).simple_roots();
        let half = vec![qf(1, 2)];
        assert_eq!(cone_membership(&b1, &half, CoeffSet::Natural).unwrap(), None);
        assert!(cone_membership(&b1, &half, CoeffSet::NonNegRational).unwrap().is_some());
        assert_eq!(cone_membership(&b1, &qv(&[3]), CoeffSet::EvenNatural).unwrap(), None);
        assert!(cone_membership(&b1, &qv(&[4]), CoeffSet::EvenNatural).unwrap().is_some());
    }

    #[test]
    fn cone_dimension_mismatch() {
        let a2 = sys(Family::A, 2).simple_roots();
        assert!(cone_membership(&a2, &qv(&[1, -1]), CoeffSet::Natural).is_err());
    }

    #[test]
    fn simple_roots_are_unit_coefficients() {
        for (f, r) in [(Family::A, 4), (Family::B, 3), (Family::C, 3), (Family::D, 4), (Family::D, 2)] {
            let simple = sys(f, r).simple_roots();
            for (i, a) in simple.iter().enumerate() {
                let mut e = vec![Q::zero(); simple.len()];
                e[i] = q(1);
                assert_eq!(cone_membership(&simple, a, CoeffSet::Natural).unwrap(), Some(e));
            }
        }
    }

    #[test]
    fn orbit_examples() {
        let a1 = sys(Family::A, 1);
        assert_eq!(
            weyl_orbit(&a1, &qv(&[1, -1]), DEFAULT_MAX_WEYL_ORDER).unwrap(),
            vec![qv(&[-1, 1]), qv(&[1, -1])]
        );
        let a2 = sys(Family::A, 2);
        assert_eq!(weyl_orbit(&a2, &qv(&[2, 1, 0]), DEFAULT_MAX_WEYL_ORDER).unwrap().len(), 6);
        // B2 orbit of (1,0): enumerate the 8 signed permutations directly.
        let b2 = sys(Family::B, 2);
        let by_group: BTreeSet<Vec<Q>> = b2
            .weyl_elements(DEFAULT_MAX_WEYL_ORDER)
            .unwrap()
            .iter()
            .map(|w| w.act(&qv(&[1, 0])))
            .collect();
        let orbit = weyl_orbit(&b2, &qv(&[1, 0]), DEFAULT_MAX_WEYL_ORDER).unwrap();
        assert_eq!(orbit, by_group.into_iter().collect::<Vec<_>>());
        assert_eq!(orbit, vec![qv(&[-1, 0]), qv(&[0, -1]), qv(&[0, 1]), qv(&[1, 0])]);
    }

    #[test]
    fn orbit_bound() {
        let a9 = sys(Family::A, 10);
        assert!(matches!(
            weyl_orbit(&a9, &vec![q(0); 11], DEFAULT_MAX_WEYL_ORDER),
            Err(Error::OrbitBound { .. })
        ));
    }

    #[test]
    fn regular_orbits_have_full_size() {
        let cases = [
            (Family::A, 3, qv(&[3, 2, 1, 0])),
            (Family::B, 3, qv(&[3, 2, 1])),
            (Family::C, 3, qv(&[3, 2, 1])),
            (Family::D, 3, qv(&[3, 2, 1])),
            (Family::D, 4, qv(&[4, 3, 2, 1])),
        ];
        for (f, r, v) in cases {
            let s = sys(f, r);
            let orbit = weyl_orbit(&s, &v, DEFAULT_MAX_WEYL_ORDER).unwrap();
            assert_eq!(orbit.len() as u128, s.weyl_order(), "{f:?}{r}");
            assert_eq!(s.weyl_elements(DEFAULT_MAX_WEYL_ORDER).unwrap().len() as u128, s.weyl_order());
        }
        assert_eq!(sys(Family::D, 4).weyl_order(), 192);
    }

    #[test]
    fn d_elements_have_even_sign_product() {
        let d3 = sys(Family::D, 3);
        assert!(d3
            .weyl_elements(DEFAULT_MAX_WEYL_ORDER)
            .unwrap()
            .iter()
            .all(|w| w.sign_product() == 1));
    }

    #[test]
    fn weyl_element_validation() {
        assert!(WeylElement::new(vec![0, 0], vec![1, 1]).is_err());
        assert!(WeylElement::new(vec![1, 0], vec![1, 2]).is_err());
        assert!(WeylElement::new(vec![1, 0], vec![1, -1]).is_ok());
    }
}

//! Arthur parameters `ψ = ⊕ χ_j ⊗ R_{a_j}` of `GL(N,ℂ)` that factor through
//! a classical dual group, the elliptic endoscopic data of the target, and
//! the exponents attached to `ψ`.
//!
//! Exponents use the unit `|z|_ℂ = z z̄`, so a block `R_a` contributes the
//! integer string `1-a, 3-a, …, a-1` (plus `i·t` from the character).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error as ThisError;

use crate::error::{Error, Result};
use crate::exact::{q, Cq, RatStr, Q};
use crate::groups::{ClassicalGroup, HKind};
use crate::orders::Exponent;
use crate::twisted::norm_on_characters;

/// `χ(z) = (z/z̄)^{k/2} (z z̄)^{it/2}`, i.e. `z^p z̄^q` with
/// `p = (k+it)/2`, `q = (-k+it)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitaryChar {
    pub k: i64,
    pub t: Q,
}

impl UnitaryChar {
    pub fn new(k: i64, t: Q) -> Self {
        UnitaryChar { k, t }
    }

    pub fn trivial() -> Self {
        Self::new(0, q(0))
    }

    pub fn inverse(&self) -> Self {
        Self::new(-self.k, -self.t.clone())
    }

    /// Self-inverse unitary characters of `ℂ*` are trivial.
    pub fn is_self_dual(&self) -> bool {
        *self == self.inverse()
    }

    pub fn p(&self) -> Cq {
        Cq::new(q(self.k), self.t.clone()) / Cq::new(q(2), q(0))
    }

    pub fn q(&self) -> Cq {
        Cq::new(q(-self.k), self.t.clone()) / Cq::new(q(2), q(0))
    }

    /// `μ = k/2`.
    pub fn mu(&self) -> Q {
        Q::new(self.k.into(), 2.into())
    }
}

impl fmt::Display for UnitaryChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ(k={}, t={})", self.k, self.t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub chi: UnitaryChar,
    pub a: usize,
}

impl Block {
    pub fn new(k: i64, t: Q, a: usize) -> Self {
        Block { chi: UnitaryChar::new(k, t), a }
    }

    /// `2ν` of the entries: `it + (1-a), it + (3-a), …, it + (a-1)`.
    pub fn exponent_string(&self) -> Vec<Cq> {
        let a = self.a as i64;
        (0..a).map(|m| Cq::new(q(1 - a + 2 * m), self.chi.t.clone())).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArthurParameter {
    /// Declared `N`; [`validate`] checks it against `Σ a_j`.
    pub n: usize,
    pub target: HKind,
    pub blocks: Vec<Block>,
}

#[derive(Clone, Debug, PartialEq, Eq, ThisError)]
pub enum Violation {
    #[error("block sizes sum to {sum}, but N = {declared}")]
    SizeMismatch { declared: usize, sum: usize },
    #[error("block {index} has a = 0")]
    EmptyBlock { index: usize },
    #[error("block {index} ({chi}, a={a}) has no partner with inverse character")]
    Unpaired { index: usize, chi: UnitaryChar, a: usize },
    #[error("N = {n} is incompatible with target {target}")]
    TargetParity { n: usize, target: HKind },
}

impl ArthurParameter {
    pub fn new(n: usize, target: HKind, blocks: Vec<Block>) -> Self {
        ArthurParameter { n, target, blocks }
    }

    /// Parameter with trivial characters and the given block sizes.
    pub fn unipotent(target: HKind, sizes: &[usize]) -> Self {
        let blocks = sizes.iter().map(|&a| Block::new(0, q(0), a)).collect();
        Self::new(sizes.iter().sum(), target, blocks)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.a).collect()
    }

    pub fn is_valid(&self) -> bool {
        validate(self).is_empty()
    }

    fn ensure_valid(&self) -> Result<()> {
        match validate(self).first() {
            None => Ok(()),
            Some(v) => Err(Error::Precondition(v.to_string())),
        }
    }
}

/// All violated constraints; empty when `ψ` is a valid θ-stable parameter.
pub fn validate(psi: &ArthurParameter) -> Vec<Violation> {
    let mut out = Vec::new();
    let sum: usize = psi.blocks.iter().map(|b| b.a).sum();
    if sum != psi.n {
        out.push(Violation::SizeMismatch { declared: psi.n, sum });
    }
    for (index, b) in psi.blocks.iter().enumerate() {
        if b.a == 0 {
            out.push(Violation::EmptyBlock { index });
        }
    }
    if !psi.target.accepts(psi.n) {
        out.push(Violation::TargetParity { n: psi.n, target: psi.target });
    }
    for index in unpaired_blocks(&psi.blocks) {
        let b = &psi.blocks[index];
        out.push(Violation::Unpaired { index, chi: b.chi.clone(), a: b.a });
    }
    out
}

/// Indices of non-self-dual blocks left over by a maximal pairing of
/// `(χ, a)` with `(χ⁻¹, a)`.
fn unpaired_blocks(blocks: &[Block]) -> Vec<usize> {
    let mut open: BTreeMap<(UnitaryChar, usize), Vec<usize>> = BTreeMap::new();
    for (i, b) in blocks.iter().enumerate() {
        if b.chi.is_self_dual() {
            continue;
        }
        let partner = (b.chi.inverse(), b.a);
        match open.get_mut(&partner).and_then(|v| v.pop()) {
            Some(_) => {}
            None => open.entry((b.chi.clone(), b.a)).or_default().push(i),
        }
    }
    let mut left: Vec<usize> = open.into_values().flatten().collect();
    left.sort_unstable();
    left
}

/// `s_ψ` acts on block `j` by `(-1)^{a_j - 1}`; it is central exactly when
/// all `a_j` share one parity.
pub fn s_psi_is_central(psi: &ArthurParameter) -> bool {
    let mut parities = psi.blocks.iter().map(|b| b.a % 2);
    match parities.next() {
        None => true,
        Some(p) => parities.all(|x| x == p),
    }
}

/// Elliptic endoscopic datum `H' × H''` of a target `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EndoscopicDatum {
    pub target: HKind,
    pub n_prime: usize,
    pub n_second: usize,
}

impl EndoscopicDatum {
    /// Targets of the two factors.
    pub fn kinds(&self) -> (HKind, HKind) {
        match self.target {
            HKind::SoOdd => (HKind::SoOdd, HKind::SoOdd),
            HKind::SoEven => (HKind::SoEven, HKind::SoEven),
            HKind::Sp => (HKind::SoEven, HKind::Sp),
        }
    }

    /// Sizes of `G' × G'' = GL(N') × GL(N'')`, or `GL(N') × GL(N''+1)` for `Sp`.
    pub fn g_sizes(&self) -> (usize, usize) {
        match self.target {
            HKind::Sp => (self.n_prime, self.n_second + 1),
            _ => (self.n_prime, self.n_second),
        }
    }

    pub fn n(&self) -> usize {
        let (a, b) = self.g_sizes();
        a + b
    }

    pub fn groups(&self) -> (ClassicalGroup, ClassicalGroup) {
        let (k1, k2) = self.kinds();
        let (n1, n2) = self.g_sizes();
        (k1.group(n1), k2.group(n2))
    }

    /// Whether `(N', N'')` satisfies the arithmetic constraints for `target`.
    pub fn satisfies_constraints(target: HKind, n: usize, n_prime: usize, n_second: usize) -> bool {
        let even = n_prime % 2 == 0 && n_second % 2 == 0;
        match target {
            HKind::SoOdd | HKind::SoEven => even && n_second >= n_prime && n_prime + n_second == n,
            HKind::Sp => even && n_prime + n_second + 1 == n,
        }
    }
}

impl fmt::Display for EndoscopicDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (h1, h2) = self.groups();
        write!(f, "(N'={}, N''={}) {} x {}", self.n_prime, self.n_second, h1.label(), h2.label())
    }
}

/// All elliptic endoscopic data of the target attached to `GL(N)`.
pub fn endoscopic_catalog(target: HKind, n: usize) -> Result<Vec<EndoscopicDatum>> {
    target.check_n(n)?;
    let out = match target {
        HKind::SoOdd | HKind::SoEven => (0..=n / 2)
            .step_by(2)
            .map(|n_prime| EndoscopicDatum { target, n_prime, n_second: n - n_prime })
            .collect(),
        HKind::Sp => (0..n)
            .step_by(2)
            .map(|n_prime| EndoscopicDatum { target, n_prime, n_second: n - 1 - n_prime })
            .collect(),
    };
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub prime: ArthurParameter,
    pub second: ArthurParameter,
    pub datum: EndoscopicDatum,
}

/// Splits `ψ` along the eigenspaces of `s_ψ`: blocks with `a` even and
/// blocks with `a` odd.
///
/// For `Sp` the even-`a` blocks form `ψ'`. For the orthogonal targets `ψ'` is
/// the smaller of the two parts, the even-`a` part on a tie.
pub fn factor_through(psi: &ArthurParameter) -> Result<Factorization> {
    psi.ensure_valid()?;
    let (even, odd): (Vec<Block>, Vec<Block>) = psi.blocks.iter().cloned().partition(|b| b.a % 2 == 0);
    let size = |v: &[Block]| v.iter().map(|b| b.a).sum::<usize>();
    let (prime, second) = match psi.target {
        HKind::Sp => (even, odd),
        _ if size(&odd) < size(&even) => (odd, even),
        _ => (even, odd),
    };
    let n_prime = size(&prime);
    let n_second = match psi.target {
        HKind::Sp => size(&second) - 1,
        _ => size(&second),
    };
    let datum = EndoscopicDatum { target: psi.target, n_prime, n_second };
    debug_assert!(EndoscopicDatum::satisfies_constraints(psi.target, psi.n, n_prime, n_second));
    let (k1, k2) = datum.kinds();
    let (n1, n2) = datum.g_sizes();
    Ok(Factorization {
        prime: ArthurParameter::new(n1, k1, prime),
        second: ArthurParameter::new(n2, k2, second),
        datum,
    })
}

fn cmp_re_im(a: &Cq, b: &Cq) -> std::cmp::Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

/// Total exponent `E_ψ` on `A`: the merged strings, sorted ascending by
/// real then imaginary part. Sorting this way makes it θ-stable.
pub fn e_psi_total(psi: &ArthurParameter) -> Result<Exponent> {
    psi.ensure_valid()?;
    let mut coords: Vec<Cq> = psi.blocks.iter().flat_map(Block::exponent_string).collect();
    coords.sort_by(cmp_re_im);
    Ok(Exponent::split(coords))
}

/// Normed exponent of `E_ψ`, as produced by the norm map (non-positive entries).
pub fn e_psi_raw(psi: &ArthurParameter) -> Result<Exponent> {
    let e = e_psi_total(psi)?;
    Ok(Exponent::fixed(norm_on_characters(&e.coords)?))
}

/// `e_ψ` with the orientation of the segments: the negatives of the raw
/// normed coordinates, sorted ascending.
pub fn e_psi(psi: &ArthurParameter) -> Result<Exponent> {
    let mut coords: Vec<Cq> = e_psi_raw(psi)?.coords.into_iter().map(|z| -z).collect();
    coords.sort_by(cmp_re_im);
    Ok(Exponent::fixed(coords))
}

/// On-disk form of a parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterFile {
    #[serde(rename = "N")]
    pub n: usize,
    pub target: HKind,
    pub blocks: Vec<BlockSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSpec {
    #[serde(default)]
    pub k: i64,
    #[serde(default = "zero_t")]
    pub t: RatStr,
    pub a: usize,
}

fn zero_t() -> RatStr {
    RatStr(q(0))
}

impl From<ParameterFile> for ArthurParameter {
    fn from(f: ParameterFile) -> Self {
        let blocks = f.blocks.into_iter().map(|b| Block::new(b.k, b.t.0, b.a)).collect();
        ArthurParameter::new(f.n, f.target, blocks)
    }
}

impl From<&ArthurParameter> for ParameterFile {
    fn from(p: &ArthurParameter) -> Self {
        ParameterFile {
            n: p.n,
            target: p.target,
            blocks: p
                .blocks
                .iter()
                .map(|b| BlockSpec { k: b.chi.k, t: RatStr(b.chi.t.clone()), a: b.a })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ci;
    use crate::orders::is_theta_stable;
    use proptest::prelude::*;

    fn ints(e: &Exponent) -> Vec<i64> {
        e.coords.iter().map(|z| i64::try_from(z.re.to_integer()).unwrap()).collect()
    }

    /// Backtracking search for a perfect matching of non-self-dual blocks.
    fn has_matching(blocks: &[Block]) -> bool {
        fn go(rest: &mut Vec<Block>) -> bool {
            let Some(b) = rest.pop() else { return true };
            for i in 0..rest.len() {
                if rest[i].a == b.a && rest[i].chi == b.chi.inverse() {
                    let partner = rest.remove(i);
                    if go(rest) {
                        return true;
                    }
                    rest.insert(i, partner);
                }
            }
            rest.push(b);
            false
        }
        let mut rest: Vec<Block> = blocks.iter().filter(|b| !b.chi.is_self_dual()).cloned().collect();
        go(&mut rest)
    }

    #[test]
    fn validate_examples() {
        assert!(ArthurParameter::unipotent(HKind::SoOdd, &[4]).is_valid());
        let lone = ArthurParameter::new(2, HKind::SoEven, vec![Block::new(2, q(0), 2)]);
        assert!(matches!(validate(&lone)[..], [Violation::Unpaired { index: 0, .. }]));
        let pair = ArthurParameter::new(
            4,
            HKind::SoOdd,
            vec![Block::new(1, q(3), 2), Block::new(-1, q(-3), 2)],
        );
        assert!(pair.is_valid());
        let wrong_a = ArthurParameter::new(
            5,
            HKind::SoOdd,
            vec![Block::new(1, q(3), 2), Block::new(-1, q(-3), 3)],
        );
        let v = validate(&wrong_a);
        assert_eq!(v.len(), 3, "{v:?}");
        let bad_n = ArthurParameter::new(3, HKind::SoOdd, vec![Block::new(0, q(0), 2)]);
        assert!(validate(&bad_n).contains(&Violation::SizeMismatch { declared: 3, sum: 2 }));
    }

    #[test]
    fn centrality() {
        assert!(s_psi_is_central(&ArthurParameter::unipotent(HKind::Sp, &[3, 1, 5])));
        assert!(s_psi_is_central(&ArthurParameter::unipotent(HKind::SoOdd, &[2, 4])));
        assert!(!s_psi_is_central(&ArthurParameter::unipotent(HKind::Sp, &[2, 3])));
    }

    #[test]
    fn catalog_examples() {
        let pairs = |h, n| -> Vec<(usize, usize)> {
            endoscopic_catalog(h, n).unwrap().iter().map(|d| (d.n_prime, d.n_second)).collect()
        };
        assert_eq!(pairs(HKind::SoOdd, 4), vec![(0, 4), (2, 2)]);
        assert_eq!(pairs(HKind::Sp, 5), vec![(0, 4), (2, 2), (4, 0)]);
        assert_eq!(pairs(HKind::SoEven, 2), vec![(0, 2)]);
        assert_eq!(pairs(HKind::Sp, 1), vec![(0, 0)]);
        assert!(endoscopic_catalog(HKind::Sp, 4).is_err());
    }

    #[test]
    fn factor_examples() {
        let f = factor_through(&ArthurParameter::unipotent(HKind::Sp, &[2, 3])).unwrap();
        assert_eq!(f.prime.sizes(), vec![2]);
        assert_eq!(f.second.sizes(), vec![3]);
        assert_eq!((f.datum.n_prime, f.datum.n_second), (2, 2));
        assert_eq!(f.prime.target, HKind::SoEven);
        assert_eq!(f.second.target, HKind::Sp);

        let f = factor_through(&ArthurParameter::unipotent(HKind::Sp, &[2, 2, 1])).unwrap();
        assert_eq!((f.prime.n, f.second.n), (4, 1));

        let f = factor_through(&ArthurParameter::unipotent(HKind::SoOdd, &[3, 1])).unwrap();
        assert!(f.prime.blocks.is_empty());
        assert_eq!((f.datum.n_prime, f.datum.n_second), (0, 4));

        let f = factor_through(&ArthurParameter::unipotent(HKind::SoEven, &[1, 1, 2, 2, 2])).unwrap();
        assert_eq!(f.prime.sizes(), vec![1, 1]);
        assert_eq!(f.second.sizes(), vec![2, 2, 2]);
    }

    #[test]
    fn exponent_examples() {
        let two = ArthurParameter::unipotent(HKind::SoOdd, &[2]);
        assert_eq!(ints(&e_psi_total(&two).unwrap()), vec![-1, 1]);
        assert_eq!(ints(&e_psi_raw(&two).unwrap()), vec![-2]);
        assert_eq!(ints(&e_psi(&two).unwrap()), vec![2]);
        let tempered = ArthurParameter::unipotent(HKind::Sp, &[1, 1, 1]);
        assert_eq!(ints(&e_psi_total(&tempered).unwrap()), vec![0, 0, 0]);
        assert_eq!(ints(&e_psi(&tempered).unwrap()), vec![0]);
        let pair = ArthurParameter::unipotent(HKind::SoOdd, &[2, 2]);
        assert_eq!(ints(&e_psi_total(&pair).unwrap()), vec![-1, -1, 1, 1]);
        let four = ArthurParameter::unipotent(HKind::SoOdd, &[4]);
        assert_eq!(ints(&e_psi_raw(&four).unwrap()), vec![-6, -2]);
        assert_eq!(ints(&e_psi(&four).unwrap()), vec![2, 6]);
    }

    #[test]
    fn twisted_block_exponents_carry_imaginary_part() {
        let psi = ArthurParameter::new(
            4,
            HKind::SoOdd,
            vec![Block::new(1, q(3), 2), Block::new(-1, q(-3), 2)],
        );
        let e = e_psi_total(&psi).unwrap();
        assert_eq!(e.coords[0], Cq::new(q(-1), q(-3)));
        assert!(is_theta_stable(&e).unwrap());
        assert_eq!(e.coords.iter().filter(|z| **z == ci(1)).count(), 0);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"N":4,"target":"SO_odd","blocks":[{"k":1,"t":"3/2","a":2},{"k":-1,"t":"-3/2","a":2}]}"#;
        let f: ParameterFile = serde_json::from_str(text).unwrap();
        let psi = ArthurParameter::from(f.clone());
        assert!(psi.is_valid());
        let back = serde_json::to_string(&ParameterFile::from(&psi)).unwrap();
        assert_eq!(serde_json::from_str::<ParameterFile>(&back).unwrap(), f);
    }

    fn arb_param() -> impl Strategy<Value = ArthurParameter> {
        let chi = (-2i64..=2, -2i64..=2);
        prop::collection::vec((chi, 1usize..=4, prop::bool::ANY), 0..=4).prop_flat_map(|raw| {
            let mut blocks = Vec::new();
            for ((k, t), a, paired) in raw {
                if paired && (k, t) != (0, 0) {
                    blocks.push(Block::new(k, q(t), a));
                    blocks.push(Block::new(-k, q(-t), a));
                } else {
                    blocks.push(Block::new(0, q(0), a));
                }
            }
            let n: usize = blocks.iter().map(|b| b.a).sum();
            let targets: Vec<HKind> = HKind::ALL.iter().copied().filter(|h| h.accepts(n)).collect();
            let targets = if targets.is_empty() { vec![HKind::Sp] } else { targets };
            (Just(blocks), prop::sample::select(targets)).prop_map(|(blocks, target)| {
                let n = blocks.iter().map(|b| b.a).sum();
                ArthurParameter::new(n, target, blocks)
            })
        })
    }

    proptest! {
        #[test]
        fn validation_matches_matching_search(
            raw in prop::collection::vec(((-1i64..=1, -1i64..=1), 1usize..=2), 0..=6)
        ) {
            let blocks: Vec<Block> = raw.into_iter().map(|((k, t), a)| Block::new(k, q(t), a)).collect();
            prop_assert_eq!(unpaired_blocks(&blocks).is_empty(), has_matching(&blocks));
        }

        #[test]
        fn parameter_properties(psi in arb_param()) {
            prop_assume!(psi.n > 0 && psi.is_valid());
            let e = e_psi_total(&psi).unwrap();
            prop_assert!(is_theta_stable(&e).unwrap());
            let f = factor_through(&psi).unwrap();
            prop_assert!(f.prime.is_valid() || f.prime.n == 0);
            prop_assert!(f.second.is_valid());
            prop_assert!(endoscopic_catalog(psi.target, psi.n).unwrap().contains(&f.datum));
            let mut all: Vec<Block> = f.prime.blocks.iter().chain(&f.second.blocks).cloned().collect();
            let mut orig = psi.blocks.clone();
            all.sort();
            orig.sort();
            prop_assert_eq!(all, orig);
            // e_ψ = e_ψ' ⊕ e_ψ'' as multisets
            let mut merged: Vec<Cq> = Vec::new();
            for part in [&f.prime, &f.second] {
                if part.n > 0 {
                    merged.extend(e_psi(part).unwrap().coords);
                }
            }
            merged.sort_by(cmp_re_im);
            prop_assert_eq!(merged, e_psi(&psi).unwrap().coords);
        }
    }
}

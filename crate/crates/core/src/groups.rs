//! Complex classical groups that show up as endoscopic groups of twisted
//! `GL(N)`, with their torus coordinates and Weyl groups.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{Family, RootSystem, WeylElement};

/// Endoscopic target `H` of `(GL(N), θ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HKind {
    /// `SO(2ℓ+1)` for `N = 2ℓ`.
    #[serde(rename = "SO_odd")]
    SoOdd,
    /// `SO(2ℓ)` for `N = 2ℓ`.
    #[serde(rename = "SO_even")]
    SoEven,
    /// `Sp(2ℓ)` for `N = 2ℓ+1`.
    #[serde(rename = "Sp")]
    Sp,
}

impl HKind {
    pub const ALL: [HKind; 3] = [HKind::SoOdd, HKind::SoEven, HKind::Sp];

    pub fn name(self) -> &'static str {
        match self {
            HKind::SoOdd => "SO_odd",
            HKind::SoEven => "SO_even",
            HKind::Sp => "Sp",
        }
    }

    pub fn family(self) -> Family {
        match self {
            HKind::SoOdd => Family::B,
            HKind::SoEven => Family::D,
            HKind::Sp => Family::C,
        }
    }

    pub fn accepts(self, n: usize) -> bool {
        match self {
            HKind::SoOdd | HKind::SoEven => n % 2 == 0,
            HKind::Sp => n % 2 == 1,
        }
    }

    pub fn check_n(self, n: usize) -> Result<()> {
        if self.accepts(n) {
            Ok(())
        } else {
            Err(Error::TargetParity { n, target: self.name() })
        }
    }

    /// The group `H` attached to `GL(N)`, of rank `⌊N/2⌋`.
    pub fn group(self, n: usize) -> ClassicalGroup {
        ClassicalGroup::new(self.family(), n / 2)
    }
}

impl fmt::Display for HKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "SO_odd" => Ok(HKind::SoOdd),
            "SO_even" => Ok(HKind::SoEven),
            "Sp" => Ok(HKind::Sp),
            other => Err(Error::Parse(format!("unknown target {other:?}"))),
        }
    }
}

/// `SO(2r+1)` (B), `Sp(2r)` (C) or `SO(2r)` (D) of rank `r`, including the
/// degenerate ranks that carry no roots (`r = 0`, and `SO(2)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassicalGroup {
    pub family: Family,
    pub rank: usize,
}

impl ClassicalGroup {
    pub fn new(family: Family, rank: usize) -> Self {
        debug_assert!(family != Family::A);
        ClassicalGroup { family, rank }
    }

    pub fn root_system(&self) -> Option<RootSystem> {
        RootSystem::new(self.family, self.rank).ok()
    }

    pub fn positive_roots(&self) -> Vec<Vec<crate::exact::Q>> {
        self.root_system().map(|s| s.positive_roots()).unwrap_or_default()
    }

    /// Weyl group `𝔖_r ⋉ {±1}^r`, or its index-2 subgroup for type D.
    pub fn weyl_elements(&self) -> Vec<WeylElement> {
        use itertools::Itertools;
        let r = self.rank;
        let mut out = Vec::new();
        for perm in (0..r).permutations(r) {
            for mask in 0u32..(1 << r) {
                let signs: Vec<i8> = (0..r).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
                if self.family == Family::D && signs.iter().filter(|&&s| s < 0).count() % 2 == 1 {
                    continue;
                }
                out.push(WeylElement::new(perm.clone(), signs).expect("valid signed permutation"));
            }
        }
        out
    }

    pub fn label(&self) -> String {
        match self.family {
            Family::B => format!("SO({})", 2 * self.rank + 1),
            Family::C => format!("Sp({})", 2 * self.rank),
            Family::D => format!("SO({})", 2 * self.rank),
            Family::A => format!("GL({})", self.rank + 1),
        }
    }
}

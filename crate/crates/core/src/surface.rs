//! Index formulas for 𝒟̄ on a compact Riemann surface of genus g, and their
//! genus-zero cross-check against the CP¹ matrices.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::cp1;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpinorKind {
    Metaplectic,
    Fock,
}

impl fmt::Display for SpinorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpinorKind::Metaplectic => "metaplectic",
            SpinorKind::Fock => "fock",
        })
    }
}

impl FromStr for SpinorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "metaplectic" | "mp" => Ok(SpinorKind::Metaplectic),
            "fock" => Ok(SpinorKind::Fock),
            _ => Err(Error::Parse(format!(
                "unknown spinor kind {s:?} (expected metaplectic or fock)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexQuery {
    pub genus: u64,
    pub level: u64,
    pub kind: SpinorKind,
}

/// `(2l+2)(1−g)` for metaplectic spinors, `(2l+1)(1−g)` for Fock spinors.
pub fn index(q: IndexQuery) -> i128 {
    let l = q.level as i128;
    let rank = match q.kind {
        SpinorKind::Metaplectic => 2 * l + 2,
        SpinorKind::Fock => 2 * l + 1,
    };
    rank * (1 - q.genus as i128)
}

/// Dimension of the holomorphic sections of the canonical bundle, read off
/// from the `l = 1` Fock index.
pub fn canonical_sections(genus: u64) -> u64 {
    genus
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Consistency {
    Agrees {
        index: i128,
        ker_dbar: usize,
        ker_d_next: usize,
    },
    Disagrees {
        index: i128,
        ker_dbar: usize,
        ker_d_next: usize,
    },
    /// `gamma_max` does not reach the first block of `E_{l+1}`.
    Inconclusive { needed_gamma_max: usize },
}

impl Consistency {
    pub fn to_json(&self, l: usize, gamma_max: usize) -> Value {
        match self {
            Consistency::Agrees {
                index,
                ker_dbar,
                ker_d_next,
            }
            | Consistency::Disagrees {
                index,
                ker_dbar,
                ker_d_next,
            } => json!({
                "l": l,
                "gamma_max": gamma_max,
                "status": if matches!(self, Consistency::Agrees { .. }) { "PASS" } else { "FAIL" },
                "index": index,
                "ker_dbar": ker_dbar,
                "ker_d_next": ker_d_next,
            }),
            Consistency::Inconclusive { needed_gamma_max } => json!({
                "l": l,
                "gamma_max": gamma_max,
                "status": "INCONCLUSIVE",
                "needed_gamma_max": needed_gamma_max,
            }),
        }
    }
}

/// Compares `index(0, l, metaplectic)` with
/// `dim ker 𝒟̄|_{E_l} − dim ker 𝒟|_{E_{l+1}}` from the CP¹ blocks. The kernel
/// counts are only trusted once the truncation contains a block of
/// `E_{l+1}`, i.e. `gamma_max ≥ 2l+3`.
pub fn cp1_consistency(l: usize, gamma_max: usize) -> Result<Consistency> {
    let needed = 2 * l + 3;
    if gamma_max < needed {
        return Ok(Consistency::Inconclusive {
            needed_gamma_max: needed,
        });
    }
    let (ker_dbar, _) = cp1::kernel_ledger(l, gamma_max)?;
    let (_, ker_d_next) = cp1::kernel_ledger(l + 1, gamma_max)?;
    let index = index(IndexQuery {
        genus: 0,
        level: l as u64,
        kind: SpinorKind::Metaplectic,
    });
    let diff = ker_dbar as i128 - ker_d_next as i128;
    Ok(if diff == index {
        Consistency::Agrees {
            index,
            ker_dbar,
            ker_d_next,
        }
    } else {
        Consistency::Disagrees {
            index,
            ker_dbar,
            ker_d_next,
        }
    })
}

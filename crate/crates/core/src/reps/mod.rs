//! Highest-weight representation data: Weyl dimensions, weight
//! multiplicities, Casimir values and norm-bounded enumeration of dominant
//! weights.

pub mod cache;
mod freudenthal;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::rootsys::{Family, RootSystem, Weight};

pub use cache::{CacheLookup, CacheRecord, WeightCache};
pub use freudenthal::DominantCharacter;

/// Full weight multiset of one irreducible representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    pub highest: Weight,
    pub mults: BTreeMap<Weight, u64>,
    pub dim: u128,
}

impl WeightSystem {
    pub fn multiplicity(&self, mu: &Weight) -> u64 {
        self.mults.get(mu).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.mults.values().map(|&m| m as u128).sum()
    }
}

type MemoKey = (Family, usize, Weight);

fn memo() -> &'static Mutex<HashMap<MemoKey, Arc<DominantCharacter>>> {
    static MEMO: OnceLock<Mutex<HashMap<MemoKey, Arc<DominantCharacter>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

fn memo_get(rs: &RootSystem, gamma: &Weight) -> Option<Arc<DominantCharacter>> {
    memo()
        .lock()
        .unwrap()
        .get(&(rs.family(), rs.rank(), gamma.clone()))
        .cloned()
}

fn memo_put(rs: &RootSystem, gamma: &Weight, ch: Arc<DominantCharacter>) {
    memo()
        .lock()
        .unwrap()
        .insert((rs.family(), rs.rank(), gamma.clone()), ch);
}

/// Drops every memoized character. Used by benchmarks to time cold runs.
pub fn clear_memo() {
    memo().lock().unwrap().clear();
}

fn check_weight(rs: &RootSystem, x: &Weight) -> Result<()> {
    if x.rank() != rs.rank() {
        return Err(Error::Dimension(format!(
            "weight {x:?} does not match rank {} of {}",
            rs.rank(),
            rs.label()
        )));
    }
    Ok(())
}

fn check_dominant(rs: &RootSystem, gamma: &Weight) -> Result<()> {
    check_weight(rs, gamma)?;
    if !rs.is_dominant(gamma) {
        return Err(Error::NotDominant(gamma.to_string()));
    }
    Ok(())
}

/// Memoized dominant character of V_γ, computed by Freudenthal's recursion.
pub fn dominant_character(rs: &RootSystem, gamma: &Weight) -> Result<Arc<DominantCharacter>> {
    check_dominant(rs, gamma)?;
    if let Some(ch) = memo_get(rs, gamma) {
        return Ok(ch);
    }
    let ch = Arc::new(freudenthal::dominant_character(rs, gamma)?);
    memo_put(rs, gamma, ch.clone());
    Ok(ch)
}

/// Like [`dominant_character`], consulting and filling a persistent cache.
/// A corrupt cache entry is reported through `on_warning` and recomputed.
pub fn dominant_character_cached(
    rs: &RootSystem,
    gamma: &Weight,
    cache: Option<&WeightCache>,
    on_warning: &(dyn Fn(String) + Sync),
) -> Result<Arc<DominantCharacter>> {
    check_dominant(rs, gamma)?;
    if let Some(ch) = memo_get(rs, gamma) {
        return Ok(ch);
    }
    // C₁ lives outside the classical table and has no cache file.
    let Some(cache) = cache.filter(|_| rs.family().accepts(rs.rank())) else {
        return dominant_character(rs, gamma);
    };
    match cache.load(rs.family(), rs.rank(), gamma) {
        CacheLookup::Hit(ws) => {
            let ch: DominantCharacter = ws
                .mults
                .into_iter()
                .filter(|(w, _)| rs.is_dominant(w))
                .collect();
            let ch = Arc::new(ch);
            memo_put(rs, gamma, ch.clone());
            return Ok(ch);
        }
        CacheLookup::Corrupt(msg) => on_warning(format!("weight cache: {msg}; recomputing")),
        CacheLookup::Miss => {}
    }
    let ch = dominant_character(rs, gamma)?;
    let ws = expand(rs, gamma, &ch)?;
    if let Err(e) = cache.store(&CacheRecord::new(rs.family(), rs.rank(), ws)) {
        on_warning(format!("weight cache: store failed: {e}"));
    }
    Ok(ch)
}

/// `Π_{α>0} K(γ+ρ, α) / K(ρ, α)`.
pub fn weyl_dimension(rs: &RootSystem, gamma: &Weight) -> Result<u128> {
    check_dominant(rs, gamma)?;
    Ok(weyl_dimension_unchecked(rs, gamma))
}

pub(crate) fn weyl_dimension_unchecked(rs: &RootSystem, gamma: &Weight) -> u128 {
    let rho = rs.rho();
    let gr = gamma.add(&rho);
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for alpha in rs.positive_roots_fund() {
        num *= rs.form_scaled(&gr, alpha);
        den *= rs.form_scaled(&rho, alpha);
    }
    let q = Rational::new(num, den);
    debug_assert!(q.is_integer());
    q.to_integer().to_u128().expect("dimension fits in u128")
}

/// Multiplicity of μ in V_γ; zero iff μ is not a weight.
pub fn weight_multiplicity(rs: &RootSystem, gamma: &Weight, mu: &Weight) -> Result<u64> {
    check_weight(rs, mu)?;
    let ch = dominant_character(rs, gamma)?;
    Ok(multiplicity_in(rs, &ch, mu))
}

pub(crate) fn multiplicity_in(rs: &RootSystem, ch: &DominantCharacter, mu: &Weight) -> u64 {
    ch.get(&rs.dominant_conjugate(mu)).copied().unwrap_or(0)
}

/// The complete multiplicity map of V_γ.
pub fn weight_system(rs: &RootSystem, gamma: &Weight) -> Result<WeightSystem> {
    let ch = dominant_character(rs, gamma)?;
    expand(rs, gamma, &ch)
}

fn expand(rs: &RootSystem, gamma: &Weight, ch: &DominantCharacter) -> Result<WeightSystem> {
    let mut mults = BTreeMap::new();
    for (w, &m) in ch {
        for x in rs.weyl_orbit(w) {
            mults.insert(x, m);
        }
    }
    let ws = WeightSystem {
        highest: gamma.clone(),
        mults,
        dim: weyl_dimension_unchecked(rs, gamma),
    };
    if ws.total() != ws.dim {
        return Err(Error::Contract(format!(
            "V_{gamma} of {}: weight multiplicities sum to {} but the Weyl dimension is {}",
            rs.label(),
            ws.total(),
            ws.dim
        )));
    }
    Ok(ws)
}

/// `−(K(γ+ρ, γ+ρ) − K(ρ, ρ))`, the Casimir eigenvalue in the negative-Killing
/// convention; nonpositive, zero only for the trivial representation.
pub fn casimir_value(rs: &RootSystem, gamma: &Weight) -> Result<Rational> {
    check_dominant(rs, gamma)?;
    let rho = rs.rho();
    let gr = gamma.add(&rho);
    Ok(rs.norm(&rho)? - rs.norm(&gr)?)
}

/// Dominant γ with `K(γ+ρ, γ+ρ) ≤ bound`, sorted by that norm, then
/// lexicographically. Complete because adding a fundamental weight to a
/// dominant γ strictly increases the norm.
pub fn dominant_weights_with_norm_bound(rs: &RootSystem, bound: &Rational) -> Vec<Weight> {
    let den = rs.form_denominator();
    let scaled_bound = bound * Rational::from_integer(den.into());
    let bound_int = scaled_bound.floor().to_integer();
    let rho = rs.rho();
    let norm = |g: &Weight| {
        let x = g.add(&rho);
        rs.form_scaled(&x, &x)
    };
    let mut out: Vec<(i64, Weight)> = Vec::new();
    let zero = Weight::zero(rs.rank());
    if BigInt::from(norm(&zero)) > bound_int {
        return Vec::new();
    }
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(g) = queue.pop_front() {
        out.push((norm(&g), g.clone()));
        for i in 0..rs.rank() {
            let next = g.add(&Weight::fundamental(rs.rank(), i));
            if BigInt::from(norm(&next)) <= bound_int && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    out.sort();
    out.into_iter().map(|(_, w)| w).collect()
}

/// `K(γ+ρ, γ+ρ)` as an exact rational.
pub fn shifted_norm(rs: &RootSystem, gamma: &Weight) -> Rational {
    let x = gamma.add(&rs.rho());
    Rational::new(rs.form_scaled(&x, &x).into(), rs.form_denominator().into())
}

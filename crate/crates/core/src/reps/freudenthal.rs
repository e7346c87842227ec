//! Freudenthal's recursion on dominant weights.
//!
//! For a dominant μ below γ,
//!
//! ```text
//! (K(γ+ρ, γ+ρ) − K(μ+ρ, μ+ρ)) m(μ) = 2 Σ_{α>0} Σ_{k≥1} m(μ+kα) K(μ+kα, α)
//! ```
//!
//! Multiplicities are Weyl-invariant, so `m(μ+kα)` is read at the dominant
//! conjugate, which lies strictly higher than μ and is already known when
//! weights are processed by depth `ht(γ − μ)`. Everything runs on the
//! integer-scaled form; the ratio is scale-free.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};

/// Dominant weights of V_γ with their multiplicities.
pub type DominantCharacter = BTreeMap<Weight, u64>;

/// Dominant μ with γ − μ a nonnegative integer combination of simple roots,
/// paired with the depth `ht(γ − μ)`.
fn dominant_candidates(rs: &RootSystem, gamma: &Weight) -> Vec<(usize, Weight)> {
    let k = rs.rank();
    let bounds: Vec<i64> = rs
        .simple_root_coords(gamma)
        .iter()
        .map(|c| c.floor().to_integer().to_i64().unwrap_or(0).max(0))
        .collect();
    let simple: Vec<Weight> = (0..k).map(|i| rs.simple_root(i)).collect();
    let mut out = Vec::new();
    let mut n = vec![0i64; k];
    loop {
        let mut mu = gamma.clone();
        for i in 0..k {
            if n[i] != 0 {
                mu = mu.sub(&simple[i].scale(n[i]));
            }
        }
        if rs.is_dominant(&mu) {
            out.push((n.iter().sum::<i64>() as usize, mu));
        }
        // odometer over the box
        let mut i = 0;
        loop {
            if i == k {
                out.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));
                return out;
            }
            if n[i] < bounds[i] {
                n[i] += 1;
                break;
            }
            n[i] = 0;
            i += 1;
        }
    }
}

pub fn dominant_character(rs: &RootSystem, gamma: &Weight) -> Result<DominantCharacter> {
    if !rs.is_dominant(gamma) {
        return Err(Error::NotDominant(gamma.to_string()));
    }
    let rho = rs.rho();
    let gr = gamma.add(&rho);
    let top = rs.form_scaled(&gr, &gr) as i128;
    let roots = rs.positive_roots_fund();

    let mut mult: DominantCharacter = BTreeMap::new();
    for (depth, mu) in dominant_candidates(rs, gamma) {
        if depth == 0 {
            mult.insert(mu, 1);
            continue;
        }
        let mut acc: i128 = 0;
        for alpha in roots {
            let mut x = mu.add(alpha);
            loop {
                let d = rs.dominant_conjugate(&x);
                let Some(&m) = mult.get(&d) else { break };
                acc += m as i128 * rs.form_scaled(&x, alpha) as i128;
                x = x.add(alpha);
            }
        }
        let mr = mu.add(&rho);
        let denom = top - rs.form_scaled(&mr, &mr) as i128;
        if denom <= 0 || (2 * acc) % denom != 0 {
            return Err(Error::Contract(format!(
                "Freudenthal step for {}: 2·{acc}/{denom} is not a nonnegative integer",
                mu
            )));
        }
        let m = 2 * acc / denom;
        if m < 0 {
            return Err(Error::Contract(format!("negative multiplicity at {mu}")));
        }
        if m > 0 {
            mult.insert(mu, m as u64);
        }
    }
    Ok(mult)
}

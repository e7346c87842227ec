//! Spectral data on flag manifolds G/T: spinor weights, the ground-state
//! kernel, the spectrum of `P_μ` on `E₀`, and the comparison of
//! Spin(2n+1)/T with Sp(n)/T.
//!
//! On `E₀` the operator `P_μ` acts on the isotypic summand of `V_γ` by
//!
//! ```text
//! λ_γ = K(γ+ρ, γ+ρ) − K(μ+ρ, μ+ρ)
//! ```
//!
//! with multiplicity `dim V_γ(μ) · dim V_γ`, for each dominant γ having μ as
//! a weight. `K` is the positive-definite dual form of [`crate::rootsys`].

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{int, rat, Rational};
use crate::fock::level_basis;
use crate::par::Exec;
use crate::reps::{self, shifted_norm, WeightCache};
use crate::rootsys::{build_root_system, Family, RootSystem, Weight};

/// `μ_β = ρ + Σ_j β_j α_j`, positive roots in [`RootSystem::positive_roots`]
/// order.
pub fn spinor_weight(rs: &RootSystem, beta: &[u64]) -> Result<Weight> {
    let roots = rs.positive_roots_fund();
    if beta.len() != roots.len() {
        return Err(Error::Dimension(format!(
            "multi-index of length {} but {} has {} positive roots",
            beta.len(),
            rs.label(),
            roots.len()
        )));
    }
    let mut mu = rs.rho();
    for (b, alpha) in beta.iter().zip(roots) {
        if *b > 0 {
            mu = mu.add(&alpha.scale(*b as i64));
        }
    }
    Ok(mu)
}

/// The weights of `E_l ≅ Sˡℂⁿ ⊗ E₀` with multiplicities, `n = |Δ⁺|`.
pub fn spinor_weight_multiset(rs: &RootSystem, l: usize) -> BTreeMap<Weight, u64> {
    let mut out = BTreeMap::new();
    for idx in level_basis(rs.num_positive_roots(), l) {
        let beta: Vec<u64> = idx.beta().iter().map(|&b| b as u64).collect();
        *out.entry(spinor_weight(rs, &beta).expect("length matches"))
            .or_default() += 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroundKernel {
    /// `ker 𝒟̄_μ|_{E₀} ≅ V_μ`.
    Irrep { highest: Weight, dim: u128 },
    /// μ is not dominant: no holomorphic sections (Borel–Weil).
    Vanishing { mu: Weight },
}

impl GroundKernel {
    pub fn dim(&self) -> u128 {
        match self {
            GroundKernel::Irrep { dim, .. } => *dim,
            GroundKernel::Vanishing { .. } => 0,
        }
    }
}

pub fn ground_kernel(rs: &RootSystem, mu: &Weight) -> Result<GroundKernel> {
    check_rank(rs, mu)?;
    if !rs.is_dominant(mu) {
        return Ok(GroundKernel::Vanishing { mu: mu.clone() });
    }
    Ok(GroundKernel::Irrep {
        highest: mu.clone(),
        dim: reps::weyl_dimension(rs, mu)?,
    })
}

fn check_rank(rs: &RootSystem, x: &Weight) -> Result<()> {
    if x.rank() != rs.rank() {
        return Err(Error::Dimension(format!(
            "weight {x:?} has length {}, {} has rank {}",
            x.rank(),
            rs.label(),
            rs.rank()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constituent {
    pub gamma: Weight,
    pub weight_mult: u64,
    pub dim: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumRow {
    pub lambda: Rational,
    pub total: u128,
    pub constituents: Vec<Constituent>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumTable {
    pub algebra: String,
    pub family: Family,
    pub rank: usize,
    pub killing_scale: Rational,
    pub mu: Weight,
    pub cutoff: Rational,
    pub rows: Vec<SpectrumRow>,
}

pub const CSV_HEADER: &str = "lambda,total,gamma,weight_mult,dim";

fn dim_json(d: u128) -> Value {
    match u64::try_from(d) {
        Ok(v) => json!(v),
        Err(_) => json!(d.to_string()),
    }
}

impl SpectrumTable {
    pub fn to_json(&self) -> Value {
        json!({
            "algebra": self.algebra,
            "mu": self.mu.coords(),
            "cutoff": self.cutoff.to_string(),
            "killing_scale": self.killing_scale.to_string(),
            "rows": self.rows.iter().map(|r| json!({
                "lambda": r.lambda.to_string(),
                "total": dim_json(r.total),
                "constituents": r.constituents.iter().map(|c| json!({
                    "gamma": c.gamma.coords(),
                    "weight_mult": c.weight_mult,
                    "dim": dim_json(c.dim),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }

    /// One line per `(λ, γ)`, headed by [`CSV_HEADER`].
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            for c in &r.constituents {
                out.push_str(&format!(
                    "{},{},\"{}\",{},{}\n",
                    r.lambda, r.total, c.gamma, c.weight_mult, c.dim
                ));
            }
        }
        out
    }

    pub fn first_positive(&self) -> Option<&SpectrumRow> {
        self.rows.iter().find(|r| r.lambda.is_positive())
    }

    /// The table invariants; a failure is a contract violation.
    pub fn check(&self, rs: &RootSystem) -> Result<()> {
        let fail = |m: String| {
            Err(Error::Contract(format!(
                "{} spectrum at μ = {}: {m}",
                self.algebra, self.mu
            )))
        };
        let Some(first) = self.rows.first() else {
            return fail("empty table".into());
        };
        let dim_mu = reps::weyl_dimension(rs, &self.mu)?;
        if !first.lambda.is_zero()
            || first.constituents
                != [Constituent {
                    gamma: self.mu.clone(),
                    weight_mult: 1,
                    dim: dim_mu,
                }]
        {
            return fail("lowest row is not λ = 0 with V_μ alone".into());
        }
        for w in self.rows.windows(2) {
            if w[0].lambda >= w[1].lambda {
                return fail("eigenvalues not strictly increasing".into());
            }
        }
        for r in &self.rows {
            if r.lambda.is_negative() || r.lambda > self.cutoff {
                return fail(format!("eigenvalue {} outside [0, cutoff]", r.lambda));
            }
            let sum: u128 = r
                .constituents
                .iter()
                .map(|c| c.weight_mult as u128 * c.dim)
                .sum();
            if sum != r.total {
                return fail(format!("row {} total {} ≠ {sum}", r.lambda, r.total));
            }
            if r.constituents.iter().any(|c| c.weight_mult == 0) {
                return fail("zero weight multiplicity listed".into());
            }
        }
        Ok(())
    }
}

/// Execution and caching knobs shared by the spectrum computations.
#[derive(Clone, Copy, Default)]
pub struct SpectrumOptions<'a> {
    pub exec: Exec,
    pub cache: Option<&'a WeightCache>,
    pub on_warning: Option<&'a (dyn Fn(String) + Sync)>,
}

/// All eigenvalues `λ ≤ cutoff` of `P_μ|_{E₀}`.
pub fn p_spectrum(rs: &RootSystem, mu: &Weight, cutoff: &Rational) -> Result<SpectrumTable> {
    p_spectrum_with(rs, mu, cutoff, &SpectrumOptions::default())
}

pub fn p_spectrum_with(
    rs: &RootSystem,
    mu: &Weight,
    cutoff: &Rational,
    opts: &SpectrumOptions<'_>,
) -> Result<SpectrumTable> {
    check_rank(rs, mu)?;
    if !rs.is_dominant(mu) {
        return Err(Error::NotDominant(mu.to_string()));
    }
    if cutoff.is_negative() {
        return Err(Error::InvalidArgument(format!(
            "cutoff {cutoff} is negative"
        )));
    }
    let base = shifted_norm(rs, mu);
    let bound = cutoff + &base;
    // μ can only be a weight of V_γ if γ − μ is a sum of positive roots
    let candidates: Vec<Weight> = reps::dominant_weights_with_norm_bound(rs, &bound)
        .into_iter()
        .filter(|g| rs.in_positive_root_cone(&g.sub(mu)))
        .collect();

    let silent = |_: String| {};
    let warn: &(dyn Fn(String) + Sync) = opts.on_warning.unwrap_or(&silent);
    let evaluated = opts
        .exec
        .map(candidates, |g| -> Result<Option<Constituent>> {
            let ch = reps::dominant_character_cached(rs, &g, opts.cache, warn)?;
            let m = ch.get(mu).copied().unwrap_or(0);
            if m == 0 {
                return Ok(None);
            }
            let dim = reps::weyl_dimension_unchecked(rs, &g);
            Ok(Some(Constituent {
                gamma: g,
                weight_mult: m,
                dim,
            }))
        });

    let mut grouped: BTreeMap<Rational, Vec<Constituent>> = BTreeMap::new();
    for c in evaluated {
        if let Some(c) = c? {
            let lambda = shifted_norm(rs, &c.gamma) - &base;
            grouped.entry(lambda).or_default().push(c);
        }
    }
    let rows = grouped
        .into_iter()
        .map(|(lambda, mut constituents)| {
            constituents.sort_by(|a, b| a.gamma.cmp(&b.gamma));
            let total = constituents
                .iter()
                .map(|c| c.weight_mult as u128 * c.dim)
                .sum();
            SpectrumRow {
                lambda,
                total,
                constituents,
            }
        })
        .collect();
    let table = SpectrumTable {
        algebra: rs.label(),
        family: rs.family(),
        rank: rs.rank(),
        killing_scale: rs.killing_scale().clone(),
        mu: mu.clone(),
        cutoff: cutoff.clone(),
        rows,
    };
    table.check(rs)?;
    Ok(table)
}

/// Smallest positive eigenvalue of `P_0|_{E₀}`, found by doubling the cutoff.
pub fn first_positive_eigenvalue(rs: &RootSystem, opts: &SpectrumOptions<'_>) -> Result<Rational> {
    let mu = Weight::zero(rs.rank());
    let mut cutoff = rat(1, 2);
    for _ in 0..64 {
        let t = p_spectrum_with(rs, &mu, &cutoff, opts)?;
        if let Some(r) = t.first_positive() {
            return Ok(r.lambda.clone());
        }
        cutoff *= int(2);
    }
    Err(Error::Contract(format!(
        "{} has no positive eigenvalue",
        rs.label()
    )))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishReport {
    pub n: usize,
    pub cutoff: Rational,
    pub left: SpectrumTable,
    pub right: SpectrumTable,
    /// Index of the first row whose `(λ, total)` differs, if any.
    pub first_difference: Option<usize>,
}

impl DistinguishReport {
    pub fn differ(&self) -> bool {
        self.first_difference.is_some()
    }

    pub fn verdict(&self) -> String {
        match self.first_difference {
            Some(_) => "spectra differ".into(),
            None => format!("spectra agree up to cutoff {}", self.cutoff),
        }
    }

    pub fn to_json(&self) -> Value {
        let row = |t: &SpectrumTable, i: usize| {
            t.rows
                .get(i)
                .map(|r| json!({"lambda": r.lambda.to_string(), "total": dim_json(r.total)}))
                .unwrap_or(Value::Null)
        };
        json!({
            "n": self.n,
            "cutoff": self.cutoff.to_string(),
            "verdict": self.verdict(),
            "differ": self.differ(),
            "first_difference": self.first_difference.map(|i| json!({
                "row": i,
                self.left.algebra.clone(): row(&self.left, i),
                self.right.algebra.clone(): row(&self.right, i),
            })),
            "tables": [self.left.to_json(), self.right.to_json()],
        })
    }
}

fn compare(
    n: usize,
    cutoff: Rational,
    left: SpectrumTable,
    right: SpectrumTable,
) -> DistinguishReport {
    let len = left.rows.len().max(right.rows.len());
    let first_difference = (0..len).find(|&i| match (left.rows.get(i), right.rows.get(i)) {
        (Some(a), Some(b)) => (&a.lambda, a.total) != (&b.lambda, b.total),
        _ => true,
    });
    DistinguishReport {
        n,
        cutoff,
        left,
        right,
        first_difference,
    }
}

fn compare_systems(
    n: usize,
    left: &RootSystem,
    right: &RootSystem,
    cutoff: Option<Rational>,
    opts: &SpectrumOptions<'_>,
) -> Result<DistinguishReport> {
    let cutoff = match cutoff {
        Some(c) => c,
        None => {
            let a = first_positive_eigenvalue(left, opts)?;
            let b = first_positive_eigenvalue(right, opts)?;
            int(2) * a.max(b)
        }
    };
    let mu = |rs: &RootSystem| Weight::zero(rs.rank());
    let lt = p_spectrum_with(left, &mu(left), &cutoff, opts)?;
    let rt = p_spectrum_with(right, &mu(right), &cutoff, opts)?;
    Ok(compare(n, cutoff, lt, rt))
}

/// Compares `P_0|_{E₀}` on `B_n` and `C_n`. Without an explicit cutoff, uses
/// twice the larger of the two first positive eigenvalues.
pub fn distinguish(n: usize) -> Result<DistinguishReport> {
    distinguish_with(n, None, &SpectrumOptions::default())
}

pub fn distinguish_with(
    n: usize,
    cutoff: Option<Rational>,
    opts: &SpectrumOptions<'_>,
) -> Result<DistinguishReport> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "distinguish needs n >= 2 (B_1 and C_1 are not in the classical table), got {n}"
        )));
    }
    let b = build_root_system(Family::B, n)?;
    let c = build_root_system(Family::C, n)?;
    compare_systems(n, &b, &c, cutoff, opts)
}

/// `A₁` against `C₁`: the same algebra, so the spectra must agree.
pub fn distinguish_rank_one(
    cutoff: Option<Rational>,
    opts: &SpectrumOptions<'_>,
) -> Result<DistinguishReport> {
    let a = build_root_system(Family::A, 1)?;
    let c = RootSystem::symplectic_rank_one();
    compare_systems(1, &a, &c, cutoff, opts)
}

/// Dominant γ with `dim V_γ ≤ dim_bound`, sorted by dimension then weight.
/// Complete because the Weyl dimension strictly increases along γ → γ+ω_i.
pub fn small_irrep_inventory(rs: &RootSystem, dim_bound: u128) -> Vec<(Weight, u128)> {
    let mut out = Vec::new();
    if dim_bound == 0 {
        return out;
    }
    let zero = Weight::zero(rs.rank());
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(g) = queue.pop_front() {
        out.push((g.clone(), reps::weyl_dimension_unchecked(rs, &g)));
        for i in 0..rs.rank() {
            let next = g.add(&Weight::fundamental(rs.rank(), i));
            if reps::weyl_dimension_unchecked(rs, &next) <= dim_bound && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    out
}

/// Approximate decimal for display columns.
pub fn approx(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

//! Classical root systems A, B, C, D and G2 with the dual Killing form.
//!
//! Each family is realized on orthogonal coordinates (the usual `e_i ± e_j`
//! pictures). Public weights are always in the fundamental-weight basis.
//! The stored form `K` is positive definite and equals the form with long
//! roots of squared length 2 divided by twice the dual Coxeter number, so for
//! A1 `K(α, α) = 1/2`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, invert_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::A, Family::B, Family::C, Family::D, Family::G];

    pub fn admissible_ranges() -> &'static str {
        "A_k (k>=1), B_k (k>=2), C_k (k>=2), D_k (k>=3), G_2"
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C | Family::G => 2,
            Family::D => 3,
        }
    }

    pub fn accepts(self, rank: usize) -> bool {
        match self {
            Family::G => rank == 2,
            _ => rank >= self.min_rank(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G => "G",
        };
        f.write_str(c)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "G" => Ok(Family::G),
            other => Err(Error::Parse(format!(
                "unknown root system family {other:?}; supported: {}",
                Family::admissible_ranges()
            ))),
        }
    }
}

/// Integer coordinates in the fundamental-weight basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = vec![0; rank];
        w[i] = 1;
        Weight(w)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scale(-1)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        if s.is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad weight coordinate {p:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// Simple roots in orthogonal coordinates.
    simple_roots: Vec<Vec<Rational>>,
    /// Positive roots in orthogonal coordinates, ordered by height then by
    /// simple-root coordinates (simple roots first).
    positive_roots: Vec<Vec<Rational>>,
    positive_simple_coords: Vec<Vec<i64>>,
    positive_fund: Vec<Weight>,
    fundamental_orth: Vec<Vec<Rational>>,
    dual_coxeter: u32,
    /// Multiplier taking the ambient dot product to the long-root-2 form.
    long_root_scale: Rational,
    /// Multiplier taking the long-root-2 form to `K`: `1 / (2 h∨)`.
    killing_scale: Rational,
    /// `K(ω_i, ω_j)`.
    gram: Vec<Vec<Rational>>,
    /// `gram = gram_int / gram_den` with integer entries.
    gram_int: Vec<Vec<i64>>,
    gram_den: i64,
    /// Fundamental coordinates to simple-root coordinates, `(Cᵀ)⁻¹`.
    fund_to_simple: Vec<Vec<Rational>>,
}

fn unit(dim: usize, i: usize, c: i64) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = int(c);
    v
}

fn e_diff(dim: usize, i: usize, j: usize) -> Vec<Rational> {
    let mut v = unit(dim, i, 1);
    v[j] = int(-1);
    v
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Simple roots of the standard orthogonal realization.
fn orthogonal_simple_roots(family: Family, rank: usize) -> Vec<Vec<Rational>> {
    let k = rank;
    match family {
        Family::A => (0..k).map(|i| e_diff(k + 1, i, i + 1)).collect(),
        Family::B => {
            let mut r: Vec<_> = (0..k - 1).map(|i| e_diff(k, i, i + 1)).collect();
            r.push(unit(k, k - 1, 1));
            r
        }
        Family::C => {
            let mut r: Vec<_> = (0..k - 1).map(|i| e_diff(k, i, i + 1)).collect();
            r.push(unit(k, k - 1, 2));
            r
        }
        Family::D => {
            let mut r: Vec<_> = (0..k - 1).map(|i| e_diff(k, i, i + 1)).collect();
            let mut last = unit(k, k - 2, 1);
            last[k - 1] = int(1);
            r.push(last);
            r
        }
        // short α1 = e1 − e2, long α2 = −2e1 + e2 + e3 in the sum-zero plane of R³
        Family::G => vec![e_diff(3, 0, 1), vec![int(-2), int(1), int(1)]],
    }
}

fn dual_coxeter(family: Family, rank: usize) -> u32 {
    let k = rank as u32;
    match family {
        Family::A => k + 1,
        Family::B => 2 * k - 1,
        Family::C => k + 1,
        Family::D => 2 * k - 2,
        Family::G => 4,
    }
}

/// Positive roots in simple-root coordinates by the root-string algorithm:
/// for a positive root β and simple αᵢ with β − pαᵢ the bottom of the string,
/// β + αᵢ is a root iff `p − ⟨β, αᵢ∨⟩ > 0`.
fn positive_roots_by_strings(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let k = cartan.len();
    let pairing = |beta: &[i64], i: usize| -> i64 { (0..k).map(|j| beta[j] * cartan[j][i]).sum() };
    let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<Vec<i64>> = (0..k)
        .map(|i| {
            let mut v = vec![0; k];
            v[i] = 1;
            v
        })
        .collect();
    all.extend(layer.iter().cloned());
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..k {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing(beta, i) > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        layer = next.into_iter().filter(|r| !all.contains(r)).collect();
        all.extend(layer.iter().cloned());
    }
    let mut roots: Vec<Vec<i64>> = all.into_iter().collect();
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    roots
}

/// `(family, rank) → RootSystem`, rejecting pairs outside the classical table.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem> {
    RootSystem::new(family, rank)
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if !family.accepts(rank) {
            return Err(Error::UnsupportedRootSystem {
                family: family.to_string(),
                rank,
                reason: format!("admissible: {}", Family::admissible_ranges()),
            });
        }
        Ok(Self::assemble(family, rank))
    }

    /// C₁ with simple root `2e₁`. It lies outside the classical table (it is
    /// A₁ in disguise) and exists only for the rank-one sanity comparison.
    pub fn symplectic_rank_one() -> Self {
        Self::assemble(Family::C, 1)
    }

    fn assemble(family: Family, rank: usize) -> Self {
        let simple = orthogonal_simple_roots(family, rank);
        let k = rank;
        let cartan: Vec<Vec<i64>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let c = int(2) * dot(&simple[i], &simple[j]) / dot(&simple[j], &simple[j]);
                        assert!(c.is_integer(), "non-integral Cartan entry");
                        c.to_integer().to_i64().unwrap()
                    })
                    .collect()
            })
            .collect();

        let max_len = simple.iter().map(|a| dot(a, a)).max().unwrap();
        let long_root_scale = int(2) / max_len;
        let h = dual_coxeter(family, rank);
        let killing_scale = Rational::one() / int(2 * h as i64);
        let k_scale = &long_root_scale * &killing_scale;

        // ω_i = Σ_j (C⁻¹)_{ij} α_j
        let cartan_q: Vec<Vec<Rational>> = cartan
            .iter()
            .map(|row| row.iter().map(|&c| int(c)).collect())
            .collect();
        let cinv = invert_rational(&cartan_q).expect("Cartan matrix is invertible");
        let dim = simple[0].len();
        let fundamental_orth: Vec<Vec<Rational>> = (0..k)
            .map(|i| {
                (0..dim)
                    .map(|d| (0..k).map(|j| &cinv[i][j] * &simple[j][d]).sum())
                    .collect()
            })
            .collect();
        let gram: Vec<Vec<Rational>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| &k_scale * dot(&fundamental_orth[i], &fundamental_orth[j]))
                    .collect()
            })
            .collect();
        let gram_den = gram
            .iter()
            .flatten()
            .fold(num_bigint::BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let gram_int = gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|r| {
                        (r * Rational::from_integer(gram_den.clone()))
                            .to_integer()
                            .to_i64()
                            .unwrap()
                    })
                    .collect()
            })
            .collect();
        let gram_den = gram_den.to_i64().unwrap();

        let cartan_t: Vec<Vec<Rational>> = (0..k)
            .map(|i| (0..k).map(|j| cartan_q[j][i].clone()).collect())
            .collect();
        let fund_to_simple = invert_rational(&cartan_t).expect("invertible");

        let positive_simple_coords = positive_roots_by_strings(&cartan);
        let positive_roots = positive_simple_coords
            .iter()
            .map(|c| {
                (0..dim)
                    .map(|d| (0..k).map(|j| int(c[j]) * &simple[j][d]).sum())
                    .collect()
            })
            .collect();
        let positive_fund = positive_simple_coords
            .iter()
            .map(|c| {
                Weight(
                    (0..k)
                        .map(|i| (0..k).map(|j| c[j] * cartan[j][i]).sum())
                        .collect(),
                )
            })
            .collect();

        RootSystem {
            family,
            rank,
            cartan,
            simple_roots: simple,
            positive_roots,
            positive_simple_coords,
            positive_fund,
            fundamental_orth,
            dual_coxeter: h,
            long_root_scale,
            killing_scale,
            gram,
            gram_int,
            gram_den,
            fund_to_simple,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Short label such as `B3`.
    pub fn label(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    /// `cartan[i][j] = 2 B(αᵢ, αⱼ) / B(αⱼ, αⱼ)`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Vec<Rational>] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[Vec<Rational>] {
        &self.positive_roots
    }

    /// Positive roots as nonnegative integer combinations of simple roots.
    pub fn positive_roots_simple_coords(&self) -> &[Vec<i64>] {
        &self.positive_simple_coords
    }

    /// Positive roots in fundamental-weight coordinates.
    pub fn positive_roots_fund(&self) -> &[Weight] {
        &self.positive_fund
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_fund.len()
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight(self.cartan[i].clone())
    }

    pub fn dual_coxeter(&self) -> u32 {
        self.dual_coxeter
    }

    pub fn killing_scale(&self) -> &Rational {
        &self.killing_scale
    }

    pub fn long_root_scale(&self) -> &Rational {
        &self.long_root_scale
    }

    /// Gram matrix `K(ωᵢ, ωⱼ)`.
    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    fn check(&self, x: &Weight) -> Result<()> {
        if x.rank() != self.rank {
            return Err(Error::Dimension(format!(
                "weight {x:?} has {} coordinates, {} expects {}",
                x.rank(),
                self.label(),
                self.rank
            )));
        }
        Ok(())
    }

    /// The positive-definite dual Killing form `K(x, y)`.
    pub fn killing_dual_form(&self, x: &Weight, y: &Weight) -> Result<Rational> {
        self.check(x)?;
        self.check(y)?;
        Ok(Rational::new(
            self.form_scaled(x, y).into(),
            self.gram_den.into(),
        ))
    }

    /// `K(x, x)`.
    pub fn norm(&self, x: &Weight) -> Result<Rational> {
        self.killing_dual_form(x, x)
    }

    /// `K(x, y) · form_denominator()`, an integer. Unchecked fast path for the
    /// inner loops; callers guarantee matching ranks.
    pub fn form_scaled(&self, x: &Weight, y: &Weight) -> i64 {
        let mut s = 0i64;
        for i in 0..self.rank {
            if x.0[i] == 0 {
                continue;
            }
            let row = &self.gram_int[i];
            let t: i64 = row.iter().zip(&y.0).map(|(g, c)| g * c).sum();
            s += x.0[i] * t;
        }
        s
    }

    pub fn form_denominator(&self) -> i64 {
        self.gram_den
    }

    /// Reflection in the i-th simple root (0-based): `x − ⟨x, αᵢ∨⟩ αᵢ`.
    pub fn simple_reflection(&self, i: usize, x: &Weight) -> Result<Weight> {
        self.check(x)?;
        if i >= self.rank {
            return Err(Error::IndexOutOfRange(format!(
                "simple reflection {i} in rank {}",
                self.rank
            )));
        }
        Ok(self.reflect_unchecked(i, x))
    }

    pub(crate) fn reflect_unchecked(&self, i: usize, x: &Weight) -> Weight {
        let c = x.0[i];
        if c == 0 {
            return x.clone();
        }
        Weight(
            x.0.iter()
                .zip(&self.cartan[i])
                .map(|(a, r)| a - c * r)
                .collect(),
        )
    }

    pub fn is_dominant(&self, x: &Weight) -> bool {
        x.0.iter().all(|&c| c >= 0)
    }

    /// The dominant Weyl conjugate.
    pub fn dominant_conjugate(&self, x: &Weight) -> Weight {
        let mut w = x.clone();
        while let Some(i) = w.0.iter().position(|&c| c < 0) {
            w = self.reflect_unchecked(i, &w);
        }
        w
    }

    /// Orbit under the Weyl group, generated by simple reflections.
    pub fn weyl_orbit(&self, x: &Weight) -> Vec<Weight> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![x.clone()];
        seen.insert(x.clone());
        while let Some(w) = stack.pop() {
            for i in 0..self.rank {
                let r = self.reflect_unchecked(i, &w);
                if seen.insert(r.clone()) {
                    stack.push(r);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn to_orthogonal(&self, x: &Weight) -> Result<Vec<Rational>> {
        self.check(x)?;
        let dim = self.simple_roots[0].len();
        Ok((0..dim)
            .map(|d| {
                (0..self.rank)
                    .map(|i| int(x.0[i]) * &self.fundamental_orth[i][d])
                    .sum()
            })
            .collect())
    }

    /// Inverse of [`to_orthogonal`](Self::to_orthogonal); rejects vectors off
    /// the integral weight lattice.
    pub fn from_orthogonal(&self, v: &[Rational]) -> Result<Weight> {
        let coords = (0..self.rank)
            .map(|i| {
                let a = &self.simple_roots[i];
                let c = int(2) * dot(v, a) / dot(a, a);
                if c.is_integer() {
                    Ok(c.to_integer().to_i64().unwrap())
                } else {
                    Err(Error::InvalidArgument(format!(
                        "vector is not an integral weight of {}",
                        self.label()
                    )))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight(coords))
    }

    /// Ambient dot product scaled to `K`.
    pub fn orthogonal_form(&self, a: &[Rational], b: &[Rational]) -> Rational {
        &self.long_root_scale * &self.killing_scale * dot(a, b)
    }

    /// Coordinates of `x` in the simple-root basis (rational in general).
    pub fn simple_root_coords(&self, x: &Weight) -> Vec<Rational> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| &self.fund_to_simple[i][j] * int(x.0[j]))
                    .sum()
            })
            .collect()
    }

    /// True iff `x` is a nonnegative integer combination of simple roots.
    pub fn in_positive_root_cone(&self, x: &Weight) -> bool {
        self.simple_root_coords(x)
            .iter()
            .all(|c| c.is_integer() && *c >= Rational::zero())
    }
}

impl PartialEq for RootSystem {
    fn eq(&self, o: &Self) -> bool {
        self.family == o.family && self.rank == o.rank
    }
}

impl Eq for RootSystem {}

/// Classical number of positive roots.
pub fn classical_positive_root_count(family: Family, rank: usize) -> usize {
    let k = rank;
    match family {
        Family::A => k * (k + 1) / 2,
        Family::B | Family::C => k * k,
        Family::D => k * (k - 1),
        Family::G => 6,
    }
}

/// All implemented (family, rank) pairs up to `max_rank`.
pub fn implemented_systems(max_rank: usize) -> Vec<(Family, usize)> {
    let mut out = Vec::new();
    for f in Family::ALL {
        for r in 1..=max_rank {
            if f.accepts(r) {
                out.push((f, r));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    /// Orbit of the simple roots under simple reflections, done on
    /// orthogonal coordinates only, keeping the positive ones (those with
    /// positive inner product against a regular element).
    fn positive_roots_by_reflection_closure(rs: &RootSystem) -> usize {
        let simple = rs.simple_roots().to_vec();
        let reflect = |v: &Vec<Rational>, a: &Vec<Rational>| -> Vec<Rational> {
            let c = int(2) * dot(v, a) / dot(a, a);
            v.iter().zip(a).map(|(x, y)| x - &c * y).collect()
        };
        let mut all: BTreeSet<Vec<Rational>> = simple.iter().cloned().collect();
        let mut stack: Vec<Vec<Rational>> = simple.clone();
        while let Some(v) = stack.pop() {
            for a in &simple {
                let r = reflect(&v, a);
                if all.insert(r.clone()) {
                    stack.push(r);
                }
            }
        }
        let rho = rs.to_orthogonal(&rs.rho()).unwrap();
        all.iter()
            .filter(|v| dot(v, &rho) > Rational::zero())
            .count()
    }

    #[test]
    fn rank_one_and_examples() {
        let a1 = build_root_system(Family::A, 1).unwrap();
        assert_eq!(a1.num_positive_roots(), 1);
        let b3 = build_root_system(Family::B, 3).unwrap();
        assert_eq!(b3.num_positive_roots(), 9);
        assert_eq!(positive_roots_by_reflection_closure(&b3), 9);
        let g2 = build_root_system(Family::G, 2).unwrap();
        assert_eq!(g2.num_positive_roots(), 6);
        assert_eq!(positive_roots_by_reflection_closure(&g2), 6);
    }

    #[test]
    fn rejects_bad_pairs() {
        for (f, r) in [
            (Family::A, 0),
            (Family::B, 1),
            (Family::C, 1),
            (Family::D, 2),
            (Family::G, 3),
        ] {
            let err = build_root_system(f, r).unwrap_err().to_string();
            assert!(err.contains("D_k (k>=3)"), "{err}");
        }
        assert!("E".parse::<Family>().is_err());
    }

    #[test]
    fn positive_root_counts_match_closure() {
        for (f, r) in implemented_systems(8) {
            let rs = build_root_system(f, r).unwrap();
            assert_eq!(
                rs.num_positive_roots(),
                classical_positive_root_count(f, r),
                "{f}{r}"
            );
            if r <= 5 {
                assert_eq!(
                    positive_roots_by_reflection_closure(&rs),
                    rs.num_positive_roots(),
                    "{f}{r}"
                );
            }
        }
    }

    #[test]
    fn rho_examples_and_half_sum() {
        let a2 = build_root_system(Family::A, 2).unwrap();
        assert_eq!(a2.rho(), Weight(vec![1, 1]));
        let g2 = build_root_system(Family::G, 2).unwrap();
        assert_eq!(g2.rho(), Weight(vec![1, 1]));
        for (f, r) in implemented_systems(6) {
            let rs = build_root_system(f, r).unwrap();
            let dim = rs.simple_roots()[0].len();
            let half_sum: Vec<Rational> = (0..dim)
                .map(|d| {
                    rs.positive_roots()
                        .iter()
                        .map(|a| a[d].clone())
                        .sum::<Rational>()
                        / int(2)
                })
                .collect();
            assert_eq!(rs.to_orthogonal(&rs.rho()).unwrap(), half_sum, "{f}{r}");
        }
        let b3 = build_root_system(Family::B, 3).unwrap();
        assert_eq!(
            b3.to_orthogonal(&b3.rho()).unwrap(),
            vec![rat(5, 2), rat(3, 2), rat(1, 2)]
        );
    }

    #[test]
    fn killing_values() {
        let a1 = build_root_system(Family::A, 1).unwrap();
        let alpha = a1.simple_root(0);
        assert_eq!(alpha, Weight(vec![2]));
        assert_eq!(a1.killing_dual_form(&alpha, &alpha).unwrap(), rat(1, 2));
        assert_eq!(a1.norm(&a1.rho()).unwrap(), rat(1, 8));
        // B3 oracle: |ρ|² = 35/4 in the long-root-2 form, scaled by 1/10
        let b3 = build_root_system(Family::B, 3).unwrap();
        let rho = b3.to_orthogonal(&b3.rho()).unwrap();
        assert_eq!(dot(&rho, &rho) / int(10), rat(7, 8));
        assert_eq!(b3.norm(&b3.rho()).unwrap(), rat(7, 8));
        assert!(a1.killing_dual_form(&Weight(vec![1, 0]), &alpha).is_err());
    }

    #[test]
    fn reflections() {
        let a1 = build_root_system(Family::A, 1).unwrap();
        assert_eq!(
            a1.simple_reflection(0, &Weight(vec![3])).unwrap(),
            Weight(vec![-3])
        );
        let a2 = build_root_system(Family::A, 2).unwrap();
        assert_eq!(
            a2.simple_reflection(0, &Weight(vec![1, 0])).unwrap(),
            Weight(vec![-1, 1])
        );
        assert!(a2.simple_reflection(2, &Weight(vec![1, 0])).is_err());
        for (f, r) in implemented_systems(5) {
            let rs = build_root_system(f, r).unwrap();
            for i in 0..r {
                let s = rs.simple_reflection(i, &rs.rho()).unwrap();
                assert_eq!(s, rs.rho().sub(&rs.simple_root(i)));
            }
        }
    }

    #[test]
    fn dominance() {
        let a2 = build_root_system(Family::A, 2).unwrap();
        assert!(a2.is_dominant(&Weight::zero(2)));
        assert!(a2.is_dominant(&a2.rho()));
        assert!(!a2.is_dominant(&Weight(vec![-1, 1])));
    }

    #[test]
    fn cartan_recovery_from_form() {
        for (f, r) in implemented_systems(8) {
            let rs = build_root_system(f, r).unwrap();
            for i in 0..r {
                for j in 0..r {
                    let ai = rs.simple_root(i);
                    let aj = rs.simple_root(j);
                    let c = int(2) * rs.killing_dual_form(&ai, &aj).unwrap()
                        / rs.killing_dual_form(&aj, &aj).unwrap();
                    assert_eq!(c, int(rs.cartan_matrix()[i][j]), "{f}{r} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn positive_roots_are_nonnegative_combinations() {
        for (f, r) in implemented_systems(6) {
            let rs = build_root_system(f, r).unwrap();
            for (c, w) in rs
                .positive_roots_simple_coords()
                .iter()
                .zip(rs.positive_roots_fund())
            {
                assert!(c.iter().all(|&x| x >= 0));
                let back: Vec<Rational> = rs.simple_root_coords(w);
                assert_eq!(back, c.iter().map(|&x| int(x)).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn weight_parse_roundtrip() {
        let w: Weight = "1,-2,3".parse().unwrap();
        assert_eq!(w, Weight(vec![1, -2, 3]));
        assert_eq!(w.to_string().parse::<Weight>().unwrap(), w);
        assert!("1,a".parse::<Weight>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn system() -> impl Strategy<Value = (Family, usize)> {
            prop::sample::select(implemented_systems(5))
        }

        proptest! {
            #[test]
            fn killing_form_weyl_invariant(
                (f, r) in system(),
                xs in prop::collection::vec(-6i64..6, 5),
                ys in prop::collection::vec(-6i64..6, 5),
                i in 0usize..5,
            ) {
                let rs = build_root_system(f, r).unwrap();
                let x = Weight(xs[..r].to_vec());
                let y = Weight(ys[..r].to_vec());
                let i = i % r;
                let sx = rs.simple_reflection(i, &x).unwrap();
                let sy = rs.simple_reflection(i, &y).unwrap();
                prop_assert_eq!(rs.killing_dual_form(&sx, &sy).unwrap(), rs.killing_dual_form(&x, &y).unwrap());
                prop_assert_eq!(rs.killing_dual_form(&x, &y).unwrap(), rs.killing_dual_form(&y, &x).unwrap());
                prop_assert_eq!(rs.simple_reflection(i, &sx).unwrap(), x.clone());
                if !x.is_zero() {
                    prop_assert!(rs.norm(&x).unwrap() > Rational::zero());
                }
            }

            #[test]
            fn orthogonal_roundtrip((f, r) in system(), xs in prop::collection::vec(-9i64..9, 5)) {
                let rs = build_root_system(f, r).unwrap();
                let x = Weight(xs[..r].to_vec());
                let v = rs.to_orthogonal(&x).unwrap();
                prop_assert_eq!(rs.from_orthogonal(&v).unwrap(), x.clone());
                prop_assert_eq!(rs.orthogonal_form(&v, &v), rs.norm(&x).unwrap());
            }
        }
    }
}

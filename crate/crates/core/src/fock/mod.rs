//! Truncated Fock model of canonical quantization.
//!
//! The level-`l` space `E_l` is spanned by Hermite products `h_β` with
//! `|β| = l`. Ladder operators act by
//!
//! ```text
//! σ(Z_j) h_β = −(i/2) h_{β+e_j}        σ(Z̄_j) h_β = −i β_j h_{β−e_j}
//! ```
//!
//! and the real directions by `σ(a_j) = σ(Z_j) + σ(Z̄_j)`,
//! `σ(b_j) = i(σ(Z_j) − σ(Z̄_j))`. The basis is not normalized:
//! `⟨h_β, h_β⟩ = 2^{l−1} Π β_j!`. The factorial is required for
//! `σ(Z_j)* = −σ(Z̄_j)` and is confirmed by Hermite quadrature.
//!
//! Direction indices `j` are 0-based.

pub mod quadrature;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{int, rat, GaussRat, Rational};

pub use quadrature::{hermite_quadrature_oracle, ladder_quadrature};

/// Multi-index β of a Hermite product.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockIndex {
    beta: Vec<u32>,
}

impl FockIndex {
    pub fn new(beta: Vec<u32>) -> Self {
        Self { beta }
    }

    pub fn vacuum(n: usize) -> Self {
        Self { beta: vec![0; n] }
    }

    pub fn beta(&self) -> &[u32] {
        &self.beta
    }

    pub fn n(&self) -> usize {
        self.beta.len()
    }

    pub fn level(&self) -> usize {
        self.beta.iter().map(|&b| b as usize).sum()
    }

    fn shifted(&self, j: usize, up: bool) -> Option<Self> {
        let mut beta = self.beta.clone();
        if up {
            beta[j] += 1;
        } else {
            beta[j] = beta[j].checked_sub(1)?;
        }
        Some(Self { beta })
    }
}

impl fmt::Display for FockIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.beta.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for FockIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h{self}")
    }
}

/// `binomial(n+l−1, l)`.
pub fn dim_level(n: usize, l: usize) -> u128 {
    assert!(n >= 1, "need at least one direction");
    let mut acc: u128 = 1;
    for k in 1..=l as u128 {
        acc = acc * (n as u128 - 1 + k) / k;
    }
    acc
}

/// Basis of `E_l`, reverse-lexicographic: `(l,0,…)` first.
pub fn level_basis(n: usize, l: usize) -> Vec<FockIndex> {
    fn rec(n: usize, rest: usize, prefix: &mut Vec<u32>, out: &mut Vec<FockIndex>) {
        if prefix.len() + 1 == n {
            prefix.push(rest as u32);
            out.push(FockIndex::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for b in (0..=rest).rev() {
            prefix.push(b as u32);
            rec(n, rest - b, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, l, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Finite Gaussian-rational combination of basis vectors; zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FockVector {
    n: usize,
    terms: BTreeMap<FockIndex, GaussRat>,
}

impl FockVector {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(idx: FockIndex) -> Self {
        let n = idx.n();
        Self::zero(n).plus_term(idx, GaussRat::one())
    }

    /// `h_β` from its multi-index.
    pub fn h(beta: &[u32]) -> Self {
        Self::basis(FockIndex::new(beta.to_vec()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<FockIndex, GaussRat> {
        &self.terms
    }

    pub fn coeff(&self, idx: &FockIndex) -> GaussRat {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, idx: FockIndex, c: GaussRat) {
        debug_assert_eq!(idx.n(), self.n);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(idx).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn plus_term(mut self, idx: FockIndex, c: GaussRat) -> Self {
        self.add_term(idx, c);
        self
    }

    pub fn add(&self, o: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, o: &FockVector) -> FockVector {
        self.add(&o.scale(&GaussRat::from_int(-1)))
    }

    pub fn scale(&self, c: &GaussRat) -> FockVector {
        let mut out = FockVector::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v * c);
        }
        out
    }

    /// Levels occurring in the vector.
    pub fn levels(&self) -> Vec<usize> {
        let mut ls: Vec<usize> = self.terms.keys().map(FockIndex::level).collect();
        ls.sort_unstable();
        ls.dedup();
        ls
    }

    fn check_direction(&self, j: usize) -> Result<()> {
        if j >= self.n {
            return Err(Error::IndexOutOfRange(format!(
                "direction {j} (0-based) with n = {}",
                self.n
            )));
        }
        Ok(())
    }
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, x| acc * x)
}

/// `⟨h_β, h_β⟩ = 2^{l−1} Π β_j!`.
pub fn basis_norm(idx: &FockIndex) -> Rational {
    let fact: BigInt = idx.beta.iter().map(|&b| factorial(b)).product();
    let l = idx.level() as i64;
    let pow = if l >= 1 {
        Rational::from_integer(BigInt::from(2).pow(l as u32 - 1))
    } else {
        rat(1, 2)
    };
    pow * Rational::from_integer(fact)
}

/// Sesquilinear, conjugate-linear in the second slot.
pub fn inner_product(v: &FockVector, w: &FockVector) -> Result<GaussRat> {
    if v.n != w.n {
        return Err(Error::Dimension(format!("n = {} vs n = {}", v.n, w.n)));
    }
    let mut acc = GaussRat::zero();
    for (k, a) in &v.terms {
        if let Some(b) = w.terms.get(k) {
            acc += &(a * &b.conj()).scale(&basis_norm(k));
        }
    }
    Ok(acc)
}

/// `σ(Z_j)`: `h_β ↦ −(i/2) h_{β+e_j}`.
pub fn sigma_raise(j: usize, v: &FockVector) -> Result<FockVector> {
    v.check_direction(j)?;
    let c = GaussRat::from_ratios((0, 1), (-1, 2));
    let mut out = FockVector::zero(v.n);
    for (k, a) in &v.terms {
        out.add_term(k.shifted(j, true).unwrap(), a * &c);
    }
    Ok(out)
}

/// `σ(Z̄_j)`: `h_β ↦ −i β_j h_{β−e_j}`.
pub fn sigma_lower(j: usize, v: &FockVector) -> Result<FockVector> {
    v.check_direction(j)?;
    let mut out = FockVector::zero(v.n);
    for (k, a) in &v.terms {
        if let Some(t) = k.shifted(j, false) {
            let c = GaussRat::new(int(0), int(-(k.beta[j] as i64)));
            out.add_term(t, a * &c);
        }
    }
    Ok(out)
}

/// `σ(Σ c_a[j] a_j + c_b[j] b_j)` for complex coefficients.
pub fn sigma_complex(ca: &[GaussRat], cb: &[GaussRat], v: &FockVector) -> Result<FockVector> {
    if ca.len() != v.n || cb.len() != v.n {
        return Err(Error::Dimension(format!(
            "coefficient vectors of length {}/{} for n = {}",
            ca.len(),
            cb.len(),
            v.n
        )));
    }
    let i = GaussRat::i();
    let mut out = FockVector::zero(v.n);
    for j in 0..v.n {
        // c_a σ(a) + c_b σ(b) = (c_a + i c_b) σ(Z) + (c_a − i c_b) σ(Z̄)
        let ib = &i * &cb[j];
        let up = &ca[j] + &ib;
        let down = &ca[j] - &ib;
        if !up.is_zero() {
            out = out.add(&sigma_raise(j, v)?.scale(&up));
        }
        if !down.is_zero() {
            out = out.add(&sigma_lower(j, v)?.scale(&down));
        }
    }
    Ok(out)
}

/// `σ(u)` for a real tangent vector `u = Σ c_a[j] a_j + c_b[j] b_j`.
pub fn sigma_real(ca: &[Rational], cb: &[Rational], v: &FockVector) -> Result<FockVector> {
    let lift = |c: &[Rational]| c.iter().cloned().map(GaussRat::real).collect::<Vec<_>>();
    sigma_complex(&lift(ca), &lift(cb), v)
}

/// Harmonic oscillator `H₀ h_β = −(|β| + n/2) h_β`.
pub fn h0_apply(v: &FockVector) -> FockVector {
    let mut out = FockVector::zero(v.n);
    for (k, a) in &v.terms {
        let e = -(int(k.level() as i64) + rat(v.n as i64, 2));
        out.add_term(k.clone(), a.scale(&e));
    }
    out
}

/// One of the `2n` real directions of the symplectic vector space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    A(usize),
    B(usize),
}

impl Direction {
    pub fn all(n: usize) -> Vec<Direction> {
        (0..n)
            .map(Direction::A)
            .chain((0..n).map(Direction::B))
            .collect()
    }

    /// `(c_a, c_b)` coordinates of the unit vector.
    pub fn coords(self, n: usize) -> (Vec<Rational>, Vec<Rational>) {
        let mut a = vec![int(0); n];
        let mut b = vec![int(0); n];
        match self {
            Direction::A(j) => a[j] = int(1),
            Direction::B(j) => b[j] = int(1),
        }
        (a, b)
    }
}

/// `ω₀(a_i, b_j) = δ_ij`, antisymmetric, zero otherwise.
pub fn omega0(u: Direction, w: Direction) -> Rational {
    match (u, w) {
        (Direction::A(i), Direction::B(j)) if i == j => int(1),
        (Direction::B(i), Direction::A(j)) if i == j => int(-1),
        _ => int(0),
    }
}

pub fn sigma_direction(u: Direction, v: &FockVector) -> Result<FockVector> {
    let (a, b) = u.coords(v.n);
    sigma_real(&a, &b, v)
}

/// Residual `[σ(u), σ(w)] h + i ω₀(u,w) h`; zero when the canonical
/// commutation relation holds on `h`.
pub fn commutator_residual(u: Direction, w: Direction, h: &FockVector) -> Result<FockVector> {
    let uw = sigma_direction(u, &sigma_direction(w, h)?)?;
    let wu = sigma_direction(w, &sigma_direction(u, h)?)?;
    let expect = h.scale(&GaussRat::new(int(0), -omega0(u, w)));
    Ok(uw.sub(&wu).sub(&expect))
}

/// Level bookkeeping for operators. `None` means "every level" (used for
/// level-preserving operators such as `H₀`).
pub type Level = Option<usize>;

/// Sparse matrix between Fock levels, keyed `(row, col)` = (target, source).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FockOperator {
    n: usize,
    source_level: Level,
    target_level: Level,
    entries: BTreeMap<(FockIndex, FockIndex), GaussRat>,
}

impl FockOperator {
    /// Materializes a linear map on the basis of `E_source`.
    pub fn from_map(
        n: usize,
        source: usize,
        target: usize,
        f: impl Fn(&FockVector) -> Result<FockVector>,
    ) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for col in level_basis(n, source) {
            let img = f(&FockVector::basis(col.clone()))?;
            for (row, c) in img.terms {
                if row.level() != target {
                    return Err(Error::Contract(format!(
                        "map from level {source} hit level {} (declared {target})",
                        row.level()
                    )));
                }
                entries.insert((row, col.clone()), c);
            }
        }
        Ok(Self {
            n,
            source_level: Some(source),
            target_level: Some(target),
            entries,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn source_level(&self) -> Level {
        self.source_level
    }

    pub fn target_level(&self) -> Level {
        self.target_level
    }

    pub fn entries(&self) -> &BTreeMap<(FockIndex, FockIndex), GaussRat> {
        &self.entries
    }

    pub fn entry(&self, row: &FockIndex, col: &FockIndex) -> GaussRat {
        self.entries
            .get(&(row.clone(), col.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero(self.n);
        for ((row, col), c) in &self.entries {
            if let Some(a) = v.terms.get(col) {
                out.add_term(row.clone(), a * c);
            }
        }
        out
    }

    /// `Some(c)` if the operator is `c·id` on its source level.
    pub fn as_scalar(&self) -> Option<GaussRat> {
        let l = self.source_level?;
        if self.target_level != Some(l) {
            return None;
        }
        let basis = level_basis(self.n, l);
        let c = self.entry(&basis[0], &basis[0]);
        let diag_ok = basis.iter().all(|b| self.entry(b, b) == c);
        let off_ok = self.entries.keys().all(|(r, k)| r == k);
        (diag_ok && off_ok).then_some(c)
    }

    /// Sparse triplets `[row, col, "a+bi"]` with rows and columns numbered
    /// along [`level_basis`]. Requires definite levels.
    pub fn to_json(&self) -> Result<Value> {
        let (Some(src), Some(tgt)) = (self.source_level, self.target_level) else {
            return Err(Error::InvalidArgument(
                "export needs definite levels".into(),
            ));
        };
        let pos = |l: usize| -> BTreeMap<FockIndex, usize> {
            level_basis(self.n, l)
                .into_iter()
                .enumerate()
                .map(|(i, b)| (b, i))
                .collect()
        };
        let (rows, cols) = (pos(tgt), pos(src));
        let mut triplets: Vec<(usize, usize, String)> = self
            .entries
            .iter()
            .map(|((r, c), v)| (rows[r], cols[c], v.to_string()))
            .collect();
        triplets.sort();
        Ok(json!({
            "n": self.n,
            "source_level": src,
            "target_level": tgt,
            "rows": rows.len(),
            "cols": cols.len(),
            "basis_source": level_basis(self.n, src).iter().map(|b| b.beta.clone()).collect::<Vec<_>>(),
            "basis_target": level_basis(self.n, tgt).iter().map(|b| b.beta.clone()).collect::<Vec<_>>(),
            "entries": triplets.into_iter().map(|(r, c, v)| json!([r, c, v])).collect::<Vec<_>>(),
        }))
    }
}

/// What to do when an operator would leave the truncated space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Truncation {
    /// Raising past `l_max` is an error.
    #[default]
    Strict,
    /// Components above `l_max` are dropped.
    Symbol,
}

/// `E_0 ⊕ … ⊕ E_{l_max}` with a truncation policy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockSpace {
    pub n: usize,
    pub l_max: usize,
    pub mode: Truncation,
}

/// The named operators the CLI can export.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    Raise(usize),
    Lower(usize),
    A(usize),
    B(usize),
    H0,
}

impl FockSpace {
    pub fn new(n: usize, l_max: usize, mode: Truncation) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        Ok(Self { n, l_max, mode })
    }

    pub fn basis(&self, l: usize) -> Result<Vec<FockIndex>> {
        if l > self.l_max {
            return Err(Error::Truncation { l_max: self.l_max });
        }
        Ok(level_basis(self.n, l))
    }

    pub fn dim(&self) -> u128 {
        (0..=self.l_max).map(|l| dim_level(self.n, l)).sum()
    }

    fn truncate(&self, v: FockVector) -> Result<FockVector> {
        if v.levels().last().is_some_and(|&top| top > self.l_max) {
            match self.mode {
                Truncation::Strict => return Err(Error::Truncation { l_max: self.l_max }),
                Truncation::Symbol => {
                    let mut out = v;
                    out.terms.retain(|k, _| k.level() <= self.l_max);
                    return Ok(out);
                }
            }
        }
        Ok(v)
    }

    pub fn apply(&self, kind: OperatorKind, v: &FockVector) -> Result<FockVector> {
        if v.n != self.n {
            return Err(Error::Dimension(format!(
                "vector has n = {}, space n = {}",
                v.n, self.n
            )));
        }
        if v.levels().last().is_some_and(|&top| top > self.l_max) {
            return Err(Error::Truncation { l_max: self.l_max });
        }
        let img = match kind {
            OperatorKind::Raise(j) => sigma_raise(j, v)?,
            OperatorKind::Lower(j) => sigma_lower(j, v)?,
            OperatorKind::A(j) => sigma_direction(Direction::A(j), v)?,
            OperatorKind::B(j) => sigma_direction(Direction::B(j), v)?,
            OperatorKind::H0 => h0_apply(v),
        };
        self.truncate(img)
    }

    /// Matrix of `kind` restricted to `E_l`, as blocks into each target level.
    pub fn operator(&self, kind: OperatorKind, l: usize) -> Result<Vec<FockOperator>> {
        self.basis(l)?;
        let targets: Vec<usize> = match kind {
            OperatorKind::Raise(_) => vec![l + 1],
            OperatorKind::Lower(_) => l.checked_sub(1).into_iter().collect(),
            OperatorKind::A(_) | OperatorKind::B(_) => {
                l.checked_sub(1).into_iter().chain([l + 1]).collect()
            }
            OperatorKind::H0 => vec![l],
        };
        let mut out = Vec::new();
        for t in targets {
            if t > self.l_max {
                if self.mode == Truncation::Strict {
                    return Err(Error::Truncation { l_max: self.l_max });
                }
                continue;
            }
            out.push(FockOperator::from_map(self.n, l, t, |h| {
                let img = self.apply(kind, h)?;
                let mut keep = FockVector::zero(self.n);
                for (k, c) in img.terms {
                    if k.level() == t {
                        keep.add_term(k, c);
                    }
                }
                Ok(keep)
            })?);
        }
        Ok(out)
    }
}

/// Coefficients of `v ± iJ₀v` for `v = Σ x_j a_j + y_j b_j`, with
/// `J₀a_j = b_j`, `J₀b_j = −a_j`.
fn pm_i_j(x: &[Rational], y: &[Rational], sign: i64) -> (Vec<GaussRat>, Vec<GaussRat>) {
    let s = int(sign);
    let ca = x
        .iter()
        .zip(y)
        .map(|(x, y)| GaussRat::new(x.clone(), -(&s * y)))
        .collect();
    let cb = x
        .iter()
        .zip(y)
        .map(|(x, y)| GaussRat::new(y.clone(), &s * x))
        .collect();
    (ca, cb)
}

fn split_vector(n: usize, v: &[Rational]) -> Result<(Vec<Rational>, Vec<Rational>)> {
    if v.len() != 2 * n {
        return Err(Error::Dimension(format!(
            "symbol vector has {} coordinates, expected 2n = {}",
            v.len(),
            2 * n
        )));
    }
    if v.iter().all(Zero::is_zero) {
        return Err(Error::InvalidArgument(
            "symbol vector must be nonzero".into(),
        ));
    }
    Ok((v[..n].to_vec(), v[n..].to_vec()))
}

/// `g₀(v,v)` in the unitary basis `{a_j, b_j}`.
pub fn g0_norm(v: &[Rational]) -> Rational {
    v.iter().map(|c| c * c).sum()
}

/// `σ(v+iJ₀v) ∘ σ(v−iJ₀v)` on `E_l`; `v = (x_1…x_n, y_1…y_n)`.
pub fn symbol_product(n: usize, l: usize, v: &[Rational]) -> Result<FockOperator> {
    symbol_composite(n, l, v, 1)
}

/// The reversed composite `σ(v−iJ₀v) ∘ σ(v+iJ₀v)` on `E_l`.
pub fn symbol_product_reversed(n: usize, l: usize, v: &[Rational]) -> Result<FockOperator> {
    symbol_composite(n, l, v, -1)
}

fn symbol_composite(n: usize, l: usize, v: &[Rational], outer: i64) -> Result<FockOperator> {
    let (x, y) = split_vector(n, v)?;
    let (oa, ob) = pm_i_j(&x, &y, outer);
    let (ia, ib) = pm_i_j(&x, &y, -outer);
    FockOperator::from_map(n, l, l, |h| {
        sigma_complex(&oa, &ob, &sigma_complex(&ia, &ib, h)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(re: (i64, i64), im: (i64, i64)) -> GaussRat {
        GaussRat::from_ratios(re, im)
    }

    #[test]
    fn dimensions() {
        assert_eq!(dim_level(2, 3), 4);
        assert_eq!(dim_level(5, 0), 1);
        assert_eq!(dim_level(3, 2), 6);
        for n in 1..5 {
            for l in 0..7 {
                let b = level_basis(n, l);
                assert_eq!(b.len() as u128, dim_level(n, l));
                assert!(b.iter().all(|x| x.level() == l));
                let mut s = b.clone();
                s.sort();
                s.dedup();
                assert_eq!(s.len(), b.len());
            }
        }
    }

    #[test]
    fn ladder_coefficients() {
        let h0 = FockVector::h(&[0]);
        assert_eq!(
            sigma_raise(0, &h0).unwrap(),
            FockVector::h(&[1]).scale(&gi((0, 1), (-1, 2)))
        );
        assert_eq!(
            sigma_lower(0, &FockVector::h(&[1])).unwrap(),
            h0.scale(&gi((0, 1), (-1, 1)))
        );
        assert!(sigma_lower(0, &h0).unwrap().is_zero());
        let v = h0.scale(&GaussRat::from_int(2)).add(&FockVector::h(&[1]));
        let expect = FockVector::h(&[1])
            .scale(&gi((0, 1), (-1, 1)))
            .add(&FockVector::h(&[2]).scale(&gi((0, 1), (-1, 2))));
        assert_eq!(sigma_raise(0, &v).unwrap(), expect);
        assert!(sigma_raise(1, &h0).is_err());
    }

    #[test]
    fn number_operator() {
        for beta in level_basis(2, 4) {
            let h = FockVector::basis(beta.clone());
            for j in 0..2 {
                let a = sigma_raise(j, &sigma_lower(j, &h).unwrap()).unwrap();
                let b = sigma_lower(j, &sigma_raise(j, &h).unwrap()).unwrap();
                let expect = -(int(beta.beta()[j] as i64) + rat(1, 2));
                assert_eq!(a.add(&b), h.scale(&GaussRat::real(expect)));
                assert_eq!(a.sub(&b), h.scale(&GaussRat::real(rat(1, 2))));
            }
        }
    }

    #[test]
    fn h0_spectrum() {
        assert_eq!(
            h0_apply(&FockVector::h(&[0])),
            FockVector::h(&[0]).scale(&gi((-1, 2), (0, 1)))
        );
        let h = FockVector::h(&[1, 0, 1]);
        assert_eq!(h0_apply(&h), h.scale(&gi((-7, 2), (0, 1))));
        let up = sigma_raise(1, &h).unwrap();
        assert_eq!(h0_apply(&up), up.scale(&gi((-9, 2), (0, 1))));
    }

    #[test]
    fn inner_product_values() {
        assert_eq!(
            inner_product(&FockVector::h(&[0]), &FockVector::h(&[0])).unwrap(),
            GaussRat::real(rat(1, 2))
        );
        assert!(inner_product(&FockVector::h(&[1]), &FockVector::h(&[2]))
            .unwrap()
            .is_zero());
        assert_eq!(
            inner_product(&FockVector::h(&[3]), &FockVector::h(&[3])).unwrap(),
            GaussRat::from_int(24)
        );
        let v = FockVector::h(&[1]).scale(&GaussRat::i());
        // conjugate-linear in the second slot
        assert_eq!(
            inner_product(&FockVector::h(&[1]), &v).unwrap(),
            gi((0, 1), (-1, 1))
        );
        assert!(inner_product(&FockVector::h(&[1]), &FockVector::h(&[1, 0])).is_err());
    }

    #[test]
    fn adjoint_relations() {
        for n in 1..4 {
            for l in 0..5 {
                for beta in level_basis(n, l) {
                    let h = FockVector::basis(beta.clone());
                    for j in 0..n {
                        let up = FockVector::basis(beta.shifted(j, true).unwrap());
                        let lhs = inner_product(&sigma_raise(j, &h).unwrap(), &up).unwrap();
                        let rhs = inner_product(&h, &sigma_lower(j, &up).unwrap()).unwrap();
                        assert_eq!(lhs, -rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn commutators_small() {
        let h = FockVector::h(&[2, 1]);
        for u in Direction::all(2) {
            for w in Direction::all(2) {
                assert!(
                    commutator_residual(u, w, &h).unwrap().is_zero(),
                    "{u:?} {w:?}"
                );
            }
        }
        // [σ(Z), σ(Z̄)] = 1/2
        let z = sigma_raise(0, &sigma_lower(0, &h).unwrap()).unwrap();
        let zb = sigma_lower(0, &sigma_raise(0, &h).unwrap()).unwrap();
        assert_eq!(z.sub(&zb), h.scale(&GaussRat::real(rat(1, 2))));
    }

    #[test]
    fn symbol_scalars() {
        let unit = vec![int(1), int(0)];
        assert_eq!(
            symbol_product(1, 0, &unit).unwrap().as_scalar(),
            Some(GaussRat::from_int(-2))
        );
        assert_eq!(
            symbol_product(1, 2, &unit).unwrap().as_scalar(),
            Some(GaussRat::from_int(-6))
        );
        assert_eq!(
            symbol_product_reversed(1, 0, &unit).unwrap().as_scalar(),
            Some(GaussRat::zero())
        );
        let v = vec![int(3), int(-2)];
        assert_eq!(
            symbol_product(1, 4, &v).unwrap().as_scalar(),
            Some(GaussRat::real(int(-10) * g0_norm(&v)))
        );
        assert_eq!(
            symbol_product_reversed(1, 4, &v).unwrap().as_scalar(),
            Some(GaussRat::real(int(-8) * g0_norm(&v)))
        );
        assert!(matches!(
            symbol_product(1, 0, &[int(0), int(0)]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(symbol_product(2, 0, &unit).is_err());
    }

    #[test]
    fn truncation_modes() {
        let strict = FockSpace::new(1, 2, Truncation::Strict).unwrap();
        let sym = FockSpace::new(1, 2, Truncation::Symbol).unwrap();
        let top = FockVector::h(&[2]);
        assert!(matches!(
            strict.apply(OperatorKind::Raise(0), &top),
            Err(Error::Truncation { l_max: 2 })
        ));
        assert!(sym.apply(OperatorKind::Raise(0), &top).unwrap().is_zero());
        let a = sym.apply(OperatorKind::A(0), &top).unwrap();
        assert_eq!(a.levels(), vec![1]);
        assert!(strict.operator(OperatorKind::Raise(0), 2).is_err());
        assert!(sym.operator(OperatorKind::Raise(0), 2).unwrap().is_empty());
        assert_eq!(strict.operator(OperatorKind::A(0), 1).unwrap().len(), 2);
        assert_eq!(strict.dim(), 3);
    }

    #[test]
    fn json_export() {
        let sp = FockSpace::new(2, 3, Truncation::Strict).unwrap();
        let op = &sp.operator(OperatorKind::Raise(0), 1).unwrap()[0];
        let js = op.to_json().unwrap();
        assert_eq!(js["rows"], 3);
        assert_eq!(js["cols"], 2);
        let entries = js["entries"].as_array().unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0], json!([0, 0, "0-1/2i"]));
    }
}

//! Block-matrix model of the symplectic Dolbeault operators on
//! CP¹ = SU(2)/U(1), metaplectic spinors.
//!
//! Sections of `E_l` are functions on SU(2) whose right factor lies in the
//! weight line `−(2l+1)`. Peter–Weyl splits them into blocks
//! `V_γ ⊗ v_i`, γ odd with `γ ≥ 2l+1` and `γ − 2i = −(2l+1)`, so each block
//! is a copy of `V_γ` (dimension `γ+1`). All operators act through the right
//! factor and the fiber, hence are scalar on every block:
//!
//! ```text
//! 𝒟̄ = −4i σ(Z) ⊗ Z̄     𝒟 = 4i σ(Z̄) ⊗ Z     Z = X/4,  Z̄ = −Y/2
//! ```
//!
//! with the Fock fiber coefficients of [`crate::fock`]. `P = ½(𝒟𝒟̄ − 𝒟̄𝒟)`
//! is assembled from the compositions; a missing neighbour block is a zero
//! space, not a truncation, since every operator preserves γ. With this
//! choice of `Z, Z̄` the adjoint relation `𝒟* = 𝒟̄` holds for the block
//! inner product `binom(γ,i)/2^i · ⟨h_l, h_l⟩`.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{int, rat, CMatrix, GaussRat, Rational};
use crate::fock::{basis_norm, h0_apply, sigma_lower, sigma_raise, FockIndex, FockVector};
use crate::par::Exec;

/// Weight-basis model of the `(k+1)`-dimensional irrep of sl(2):
/// `h v_i = (k−2i) v_i`, `X v_i = (k−i+1) v_{i−1}`, `Y v_i = (i+1) v_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Irrep {
    pub k: usize,
    pub h: CMatrix,
    pub x: CMatrix,
    pub y: CMatrix,
}

pub fn sl2_irrep(k: usize) -> Sl2Irrep {
    let n = k + 1;
    let g = |v: i64| GaussRat::from_int(v);
    let ki = k as i64;
    let h = CMatrix::from_fn(n, n, |r, c| {
        if r == c {
            g(ki - 2 * c as i64)
        } else {
            GaussRat::zero()
        }
    });
    let x = CMatrix::from_fn(n, n, |r, c| {
        if c >= 1 && r == c - 1 {
            g(ki - c as i64 + 1)
        } else {
            GaussRat::zero()
        }
    });
    let y = CMatrix::from_fn(n, n, |r, c| {
        if r == c + 1 {
            g(c as i64 + 1)
        } else {
            GaussRat::zero()
        }
    });
    Sl2Irrep { k, h, x, y }
}

fn bracket(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.mul(b).unwrap().sub(&b.mul(a).unwrap()).unwrap()
}

impl Sl2Irrep {
    pub fn dim(&self) -> usize {
        self.k + 1
    }

    /// `[h,X] = 2X`, `[h,Y] = −2Y`, `[X,Y] = h`.
    pub fn relations_hold(&self) -> bool {
        let two = GaussRat::from_int(2);
        bracket(&self.h, &self.x) == self.x.scaled(&two)
            && bracket(&self.h, &self.y) == self.y.scaled(&-two)
            && bracket(&self.x, &self.y) == self.h
    }

    /// `Ω = −⅛h² − ¼(XY + YX)`.
    pub fn casimir(&self) -> CMatrix {
        let hh = self.h.mul(&self.h).unwrap();
        let xy = self
            .x
            .mul(&self.y)
            .unwrap()
            .add(&self.y.mul(&self.x).unwrap())
            .unwrap();
        hh.scaled(&GaussRat::real(rat(-1, 8)))
            .add(&xy.scaled(&GaussRat::real(rat(-1, 4))))
            .unwrap()
    }
}

/// `λ_{l,j} = (4(l+j+1)² − 3(2l+1)² − 1)/8`.
pub fn lambda(l: usize, j: usize) -> Rational {
    let a = (l + j + 1) as i64;
    let b = (2 * l + 1) as i64;
    rat(4 * a * a - 3 * b * b - 1, 8)
}

/// γ of the block `Γ_{l,j}`.
pub fn gamma_of(l: usize, j: usize) -> usize {
    2 * (l + j) + 1
}

/// Dimension of block `(l, γ)`; zero when the block does not exist.
fn block_dim(l: Option<usize>, gamma: usize) -> usize {
    match l {
        Some(l) if gamma % 2 == 1 && gamma > 2 * l => gamma + 1,
        _ => 0,
    }
}

/// Index of the `−(2l+1)` weight vector in the weight basis of `V_γ`.
fn right_index(l: usize, gamma: usize) -> usize {
    (gamma + 2 * l).div_ceil(2)
}

fn h_l(l: usize) -> FockVector {
    FockVector::h(&[l as u32])
}

fn fiber_raise(l: usize) -> GaussRat {
    sigma_raise(0, &h_l(l))
        .unwrap()
        .coeff(&FockIndex::new(vec![l as u32 + 1]))
}

fn fiber_lower(l: usize) -> GaussRat {
    if l == 0 {
        return GaussRat::zero();
    }
    sigma_lower(0, &h_l(l))
        .unwrap()
        .coeff(&FockIndex::new(vec![l as u32 - 1]))
}

fn z_scale() -> GaussRat {
    GaussRat::real(rat(1, 4))
}

fn zbar_scale() -> GaussRat {
    GaussRat::real(rat(-1, 2))
}

fn scalar_block(rows: usize, cols: usize, c: GaussRat) -> CMatrix {
    CMatrix::from_fn(rows, cols, |r, k| {
        if r == k {
            c.clone()
        } else {
            GaussRat::zero()
        }
    })
}

/// `𝒟̄: (l, γ) → (l+1, γ)`.
pub fn block_dbar(l: usize, gamma: usize) -> CMatrix {
    let (src, tgt) = (block_dim(Some(l), gamma), block_dim(Some(l + 1), gamma));
    if src == 0 || tgt == 0 {
        return CMatrix::zeros(tgt, src);
    }
    let i = right_index(l, gamma);
    let ybar = &sl2_irrep(gamma).y[(i + 1, i)] * &zbar_scale();
    let c = &(&GaussRat::new(int(0), int(-4)) * &fiber_raise(l)) * &ybar;
    scalar_block(tgt, src, c)
}

/// `𝒟: (l, γ) → (l−1, γ)`.
pub fn block_d(l: usize, gamma: usize) -> CMatrix {
    let src = block_dim(Some(l), gamma);
    let tgt = block_dim(l.checked_sub(1), gamma);
    if src == 0 || tgt == 0 {
        return CMatrix::zeros(tgt, src);
    }
    let i = right_index(l, gamma);
    let z = &sl2_irrep(gamma).x[(i - 1, i)] * &z_scale();
    let c = &(&GaussRat::new(int(0), int(4)) * &fiber_lower(l)) * &z;
    scalar_block(tgt, src, c)
}

/// `H = σ(Z)σ(Z̄) + σ(Z̄)σ(Z)` on the fiber, i.e. `H₀` for `n = 1`.
pub fn block_h(l: usize, gamma: usize) -> CMatrix {
    let d = block_dim(Some(l), gamma);
    scalar_block(
        d,
        d,
        h0_apply(&h_l(l)).coeff(&FockIndex::new(vec![l as u32])),
    )
}

/// Casimir of the left factor `V_γ`.
pub fn block_omega(l: usize, gamma: usize) -> CMatrix {
    if block_dim(Some(l), gamma) == 0 {
        return CMatrix::zeros(0, 0);
    }
    sl2_irrep(gamma).casimir()
}

/// `½(𝒟𝒟̄ − 𝒟̄𝒟)` on block `(l, γ)`.
pub fn block_p(l: usize, gamma: usize) -> CMatrix {
    let up = block_d(l + 1, gamma).mul(&block_dbar(l, gamma)).unwrap();
    let down = match l.checked_sub(1) {
        Some(lm) => block_dbar(lm, gamma).mul(&block_d(l, gamma)).unwrap(),
        None => CMatrix::zeros(up.rows(), up.cols()),
    };
    up.sub(&down).unwrap().scaled(&GaussRat::real(rat(1, 2)))
}

fn binomial(n: usize, k: usize) -> Rational {
    let mut acc = int(1);
    for t in 0..k {
        acc = acc * int((n - t) as i64) / int(t as i64 + 1);
    }
    acc
}

/// Gram matrix of the block inner product on `(l, γ)`.
pub fn block_gram(l: usize, gamma: usize) -> CMatrix {
    let d = block_dim(Some(l), gamma);
    if d == 0 {
        return CMatrix::zeros(0, 0);
    }
    let i = right_index(l, gamma);
    let w = binomial(gamma, i) / Rational::from_integer(num_bigint::BigInt::from(2).pow(i as u32));
    let fiber = basis_norm(&FockIndex::new(vec![l as u32]));
    scalar_block(d, d, GaussRat::real(w * fiber))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockOperators {
    pub l: usize,
    pub gamma: usize,
    pub dbar: CMatrix,
    pub d: CMatrix,
    pub h: CMatrix,
    pub omega: CMatrix,
    pub p: CMatrix,
}

impl BlockOperators {
    pub fn new(l: usize, gamma: usize) -> Self {
        Self {
            l,
            gamma,
            dbar: block_dbar(l, gamma),
            d: block_d(l, gamma),
            h: block_h(l, gamma),
            omega: block_omega(l, gamma),
            p: block_p(l, gamma),
        }
    }

    /// The spectral index `j` with `γ = 2(l+j)+1`.
    pub fn j(&self) -> usize {
        (self.gamma - 1) / 2 - self.l
    }

    pub fn dim(&self) -> usize {
        self.gamma + 1
    }
}

/// All blocks of one level `E_l` up to `gamma_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cp1Operators {
    pub l: usize,
    pub gamma_max: usize,
    pub blocks: Vec<BlockOperators>,
}

impl Cp1Operators {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(BlockOperators::dim).sum()
    }

    /// `P` on the truncated level as one block-diagonal matrix.
    pub fn level_p(&self) -> CMatrix {
        CMatrix::direct_sum(&self.blocks.iter().map(|b| b.p.clone()).collect::<Vec<_>>())
    }

    pub fn ker_dbar(&self) -> usize {
        self.blocks.iter().map(|b| b.dbar.nullity()).sum()
    }

    pub fn ker_d(&self) -> usize {
        self.blocks.iter().map(|b| b.d.nullity()).sum()
    }

    /// Exact spectrum of `P` on the truncated level.
    pub fn spectrum(&self) -> Result<Vec<(Rational, usize)>> {
        let spec = self.level_p().certified_spectrum().ok_or_else(|| {
            Error::Contract(format!(
                "P on level {} is not certifiably diagonalizable",
                self.l
            ))
        })?;
        let mut out = Vec::new();
        for (ev, m) in spec {
            if !ev.is_real() {
                return Err(Error::Contract(format!("non-real eigenvalue {ev} of P")));
            }
            out.push((ev.re, m));
        }
        out.sort();
        Ok(out)
    }
}

fn check_args(l: usize, gamma_max: usize) -> Result<()> {
    if gamma_max.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "gamma_max = {gamma_max} has the wrong parity: sections of E_l only occur in odd γ"
        )));
    }
    if gamma_max < 2 * l + 1 {
        return Err(Error::InvalidArgument(format!(
            "gamma_max = {gamma_max} is below the lowest block γ = {} of E_{l}",
            2 * l + 1
        )));
    }
    Ok(())
}

/// Odd γ from `2l+1` to `gamma_max`.
pub fn level_gammas(l: usize, gamma_max: usize) -> Vec<usize> {
    (2 * l + 1..=gamma_max).step_by(2).collect()
}

pub fn build_operators(l: usize, gamma_max: usize) -> Result<Cp1Operators> {
    build_operators_with(l, gamma_max, Exec::default())
}

pub fn build_operators_with(l: usize, gamma_max: usize, exec: Exec) -> Result<Cp1Operators> {
    check_args(l, gamma_max)?;
    let blocks = exec.map(level_gammas(l, gamma_max), |g| BlockOperators::new(l, g));
    Ok(Cp1Operators {
        l,
        gamma_max,
        blocks,
    })
}

/// One named pass/fail verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn eq(name: impl Into<String>, lhs: &CMatrix, rhs: &CMatrix) -> Self {
        let ok = lhs == rhs;
        let detail = if ok {
            String::new()
        } else {
            format!("lhs {lhs:?} rhs {rhs:?}")
        };
        Self::new(name, ok, detail)
    }

    fn to_json(&self) -> Value {
        json!({"name": self.name, "status": if self.passed { "PASS" } else { "FAIL" }, "detail": self.detail})
    }
}

fn g(r: Rational) -> GaussRat {
    GaussRat::real(r)
}

/// Rank and annihilation claims for `Γ_{l,j}`.
pub fn verify_ladder(l: usize, j: usize, gamma_max: usize) -> Result<Vec<Check>> {
    let gamma = gamma_of(l, j);
    check_args(l, gamma_max)?;
    if gamma > gamma_max {
        return Err(Error::InvalidArgument(format!(
            "Γ_{{{l},{j}}} needs gamma_max >= {gamma}"
        )));
    }
    let dim = 2 * (l + j + 1);
    let tag = format!("l={l}, j={j}");
    let mut out = Vec::new();
    let b = BlockOperators::new(l, gamma);
    out.push(Check::new(
        format!("dim Γ_{{l,j}} = 2(l+j+1) ({tag})"),
        b.dim() == dim,
        format!("{}", b.dim()),
    ));
    if l >= 1 {
        let r = b.d.rank();
        out.push(Check::new(
            format!("D: Γ_{{l,j}} → Γ_{{l-1,j+1}} has rank 2(l+j+1) ({tag})"),
            r == dim,
            format!("rank {r}"),
        ));
        let lhs = block_p(l - 1, gamma).mul(&b.d)?;
        out.push(Check::eq(
            format!("P D = λ_{{l-1,j+1}} D ({tag})"),
            &lhs,
            &b.d.scaled(&g(lambda(l - 1, j + 1))),
        ));
        out.push(Check::new(
            format!("λ_{{l,j}} + 3l = λ_{{l-1,j+1}} ({tag})"),
            lambda(l, j) + int(3 * l as i64) == lambda(l - 1, j + 1),
            "",
        ));
    }
    if j >= 1 {
        let r = b.dbar.rank();
        out.push(Check::new(
            format!("Dbar: Γ_{{l,j}} → Γ_{{l+1,j-1}} has rank 2(l+j+1) ({tag})"),
            r == dim,
            format!("rank {r}"),
        ));
        let lhs = block_p(l + 1, gamma).mul(&b.dbar)?;
        out.push(Check::eq(
            format!("P Dbar = λ_{{l+1,j-1}} Dbar ({tag})"),
            &lhs,
            &b.dbar.scaled(&g(lambda(l + 1, j - 1))),
        ));
    } else {
        out.push(Check::new(
            format!("Dbar Γ_{{l,0}} = 0 ({tag})"),
            b.dbar.is_zero(),
            "",
        ));
    }
    Ok(out)
}

/// `[H,𝒟] = 𝒟`, `[H,𝒟̄] = −𝒟̄`, `[P,𝒟] = −3𝒟H − 3/2 𝒟`,
/// `[P,𝒟̄] = 3𝒟̄H − 3/2 𝒟̄`, `P = −Ω − 3/2 H²`, `𝒟* = 𝒟̄` and the spectrum of
/// `P`, on every block of level `l`.
pub fn commutator_suite(l: usize, gamma_max: usize) -> Result<Vec<Check>> {
    commutator_suite_with(l, gamma_max, Exec::default())
}

pub fn commutator_suite_with(l: usize, gamma_max: usize, exec: Exec) -> Result<Vec<Check>> {
    check_args(l, gamma_max)?;
    let per_block = exec.map(level_gammas(l, gamma_max), |gamma| block_checks(l, gamma));
    let mut out = Vec::new();
    for c in per_block {
        out.extend(c?);
    }
    Ok(out)
}

fn block_checks(l: usize, gamma: usize) -> Result<Vec<Check>> {
    let tag = format!("l={l}, γ={gamma}");
    let b = BlockOperators::new(l, gamma);
    let h_up = block_h(l + 1, gamma);
    let p_up = block_p(l + 1, gamma);
    let (h_down, p_down) = match l.checked_sub(1) {
        Some(lm) => (block_h(lm, gamma), block_p(lm, gamma)),
        None => (CMatrix::zeros(0, 0), CMatrix::zeros(0, 0)),
    };
    let three_halves = g(rat(3, 2));
    let mut out = Vec::new();

    let lhs = h_down.mul(&b.d)?.sub(&b.d.mul(&b.h)?)?;
    out.push(Check::eq(format!("[H,D] = D ({tag})"), &lhs, &b.d));
    let lhs = h_up.mul(&b.dbar)?.sub(&b.dbar.mul(&b.h)?)?;
    out.push(Check::eq(
        format!("[H,Dbar] = -Dbar ({tag})"),
        &lhs,
        &b.dbar.scaled(&GaussRat::from_int(-1)),
    ));

    let lhs = p_down.mul(&b.d)?.sub(&b.d.mul(&b.p)?)?;
    let rhs =
        b.d.mul(&b.h)?
            .scaled(&GaussRat::from_int(-3))
            .sub(&b.d.scaled(&three_halves))?;
    out.push(Check::eq(
        format!("[P,D] = -3DH - 3/2 D ({tag})"),
        &lhs,
        &rhs,
    ));
    let lhs = p_up.mul(&b.dbar)?.sub(&b.dbar.mul(&b.p)?)?;
    let rhs = b
        .dbar
        .mul(&b.h)?
        .scaled(&GaussRat::from_int(3))
        .sub(&b.dbar.scaled(&three_halves))?;
    out.push(Check::eq(
        format!("[P,Dbar] = 3DbarH - 3/2 Dbar ({tag})"),
        &lhs,
        &rhs,
    ));

    let rhs = b
        .omega
        .scaled(&GaussRat::from_int(-1))
        .sub(&b.h.mul(&b.h)?.scaled(&three_halves))?;
    out.push(Check::eq(
        format!("P = -Omega - 3/2 H^2 ({tag})"),
        &b.p,
        &rhs,
    ));

    let omega_expect = {
        let k = gamma as i64 + 1;
        CMatrix::scalar(b.dim(), g(rat(-(k * k - 1), 8)))
    };
    out.push(Check::eq(
        format!("Omega = -((γ+1)^2-1)/8 ({tag})"),
        &b.omega,
        &omega_expect,
    ));

    // ⟨𝒟̄u, v⟩_{l+1} = ⟨u, 𝒟v⟩_l  ⇔  G_{l+1} 𝒟̄_l = 𝒟_{l+1}† G_l
    let lhs = block_gram(l + 1, gamma).mul(&b.dbar)?;
    let rhs = block_d(l + 1, gamma).adjoint().mul(&block_gram(l, gamma))?;
    out.push(Check::eq(format!("D* = Dbar ({tag})"), &lhs, &rhs));

    let spec = b.p.certified_spectrum();
    let expect = vec![(g(lambda(l, b.j())), b.dim())];
    out.push(Check::new(
        format!("spec P = {{λ_{{l,j}}}} with multiplicity 2(l+j+1) ({tag})"),
        spec.as_ref() == Some(&expect),
        format!("{spec:?}"),
    ));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockReport {
    pub gamma: usize,
    pub j: usize,
    pub dim: usize,
    pub eigenvalue: Rational,
    pub rank_d: usize,
    pub rank_dbar: usize,
    pub ker_d: usize,
    pub ker_dbar: usize,
    pub matrices: Option<BlockOperators>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelReport {
    pub l: usize,
    pub blocks: Vec<BlockReport>,
    pub ker_dbar: usize,
    pub ker_d: usize,
    pub spectrum: Vec<(Rational, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cp1Report {
    pub l_max: usize,
    pub gamma_max: usize,
    pub levels: Vec<LevelReport>,
    pub checks: Vec<Check>,
}

impl Cp1Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn to_json(&self) -> Value {
        let mat = |m: &CMatrix| -> Value {
            json!({
                "rows": m.rows(),
                "cols": m.cols(),
                "entries": m.triplets().into_iter().map(|(r, c, v)| json!([r, c, v.to_string()])).collect::<Vec<_>>(),
            })
        };
        json!({
            "l_max": self.l_max,
            "gamma_max": self.gamma_max,
            "status": if self.all_passed() { "PASS" } else { "FAIL" },
            "levels": self.levels.iter().map(|lv| json!({
                "l": lv.l,
                "ker_dbar": lv.ker_dbar,
                "ker_d": lv.ker_d,
                "spectrum": lv.spectrum.iter().map(|(e, m)| json!({"lambda": e.to_string(), "mult": m})).collect::<Vec<_>>(),
                "blocks": lv.blocks.iter().map(|b| {
                    let mut v = json!({
                        "gamma": b.gamma,
                        "j": b.j,
                        "dim": b.dim,
                        "eigenvalue": b.eigenvalue.to_string(),
                        "rank_d": b.rank_d,
                        "rank_dbar": b.rank_dbar,
                        "ker_d": b.ker_d,
                        "ker_dbar": b.ker_dbar,
                    });
                    if let Some(m) = &b.matrices {
                        v["matrices"] = json!({
                            "dbar": mat(&m.dbar), "d": mat(&m.d), "h": mat(&m.h),
                            "omega": mat(&m.omega), "p": mat(&m.p),
                        });
                    }
                    v
                }).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Every verification for levels `0..=l_max` with blocks up to `gamma_max`.
pub fn full_report(
    l_max: usize,
    gamma_max: usize,
    with_matrices: bool,
    exec: Exec,
) -> Result<Cp1Report> {
    check_args(l_max, gamma_max)?;
    let mut levels = Vec::new();
    let mut checks = Vec::new();
    for l in 0..=l_max {
        let ops = build_operators_with(l, gamma_max, exec)?;
        let spectrum = ops.spectrum()?;
        let blocks = ops
            .blocks
            .iter()
            .map(|b| BlockReport {
                gamma: b.gamma,
                j: b.j(),
                dim: b.dim(),
                eigenvalue: lambda(l, b.j()),
                rank_d: b.d.rank(),
                rank_dbar: b.dbar.rank(),
                ker_d: b.d.nullity(),
                ker_dbar: b.dbar.nullity(),
                matrices: with_matrices.then(|| b.clone()),
            })
            .collect();

        let expect: Vec<(Rational, usize)> = ops
            .blocks
            .iter()
            .map(|b| (lambda(l, b.j()), 2 * (l + b.j() + 1)))
            .collect();
        let mut expect_sorted = expect.clone();
        expect_sorted.sort();
        checks.push(Check::new(
            format!("spec P|E_l = {{λ_{{l,j}} : 2(l+j)+1 <= γmax}} (l={l})"),
            spectrum == expect_sorted,
            format!("{spectrum:?}"),
        ));
        let kdb = ops.ker_dbar();
        let concentrated = ops
            .blocks
            .iter()
            .all(|b| (b.dbar.nullity() > 0) == (b.gamma == 2 * l + 1));
        checks.push(Check::new(
            format!("dim ker Dbar|E_l = 2l+2, in γ = 2l+1 (l={l})"),
            kdb == 2 * l + 2 && concentrated,
            format!("{kdb}"),
        ));
        let kd = ops.ker_d();
        if l >= 1 {
            checks.push(Check::new(
                format!("ker D|E_l = 0 (l={l})"),
                kd == 0,
                format!("{kd}"),
            ));
        }
        checks.extend(commutator_suite_with(l, gamma_max, exec)?);
        for b in &ops.blocks {
            checks.extend(verify_ladder(l, b.j(), gamma_max)?);
        }
        levels.push(LevelReport {
            l,
            blocks,
            ker_dbar: kdb,
            ker_d: kd,
            spectrum,
        });
    }
    // Γ_N collects the γ = 2N+1 blocks of levels 0..=N
    for n in 0..=l_max {
        let gamma = 2 * n + 1;
        if gamma > gamma_max {
            break;
        }
        let total: usize = (0..=n).map(|l| block_dim(Some(l), gamma)).sum();
        checks.push(Check::new(
            format!("dim Γ_N = 2(N+1)^2 (N={n})"),
            total == 2 * (n + 1) * (n + 1),
            format!("{total}"),
        ));
    }
    Ok(Cp1Report {
        l_max,
        gamma_max,
        levels,
        checks,
    })
}

/// `dim ker 𝒟̄|_{E_l}` and `dim ker 𝒟|_{E_l}` over blocks up to `gamma_max`.
pub fn kernel_ledger(l: usize, gamma_max: usize) -> Result<(usize, usize)> {
    let ops = build_operators(l, gamma_max)?;
    Ok((ops.ker_dbar(), ops.ker_d()))
}

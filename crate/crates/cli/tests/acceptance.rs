//! End-to-end acceptance checks, one test per criterion.

use std::process::Command;

use dolbeault::cp1::{self, build_operators, full_report, lambda, sl2_irrep};
use dolbeault::exact::{int, rat, to_f64, CMatrix, GaussRat, Rational};
use dolbeault::flagspec::{
    distinguish, distinguish_with, p_spectrum, spinor_weight, SpectrumOptions,
};
use dolbeault::fock::{
    basis_norm, commutator_residual, g0_norm, hermite_quadrature_oracle, inner_product,
    ladder_quadrature, level_basis, sigma_lower, sigma_raise, symbol_product,
    symbol_product_reversed, Direction, FockIndex, FockVector,
};
use dolbeault::oracle::{orthogonal_weyl_dimension, tensor_weight_system};
use dolbeault::par::Exec;
use dolbeault::reps::{casimir_value, weight_system, weyl_dimension};
use dolbeault::rootsys::{build_root_system, implemented_systems, Family, RootSystem, Weight};
use dolbeault::surface::{cp1_consistency, index, Consistency, IndexQuery, SpinorKind};

fn dominant_weights(rank: usize, level: i64) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|w: Vec<i64>| {
                (0..=level).map(move |c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .filter(|w| w.iter().sum::<i64>() <= level)
            .collect();
    }
    out.into_iter().map(Weight).collect()
}

#[test]
fn criterion_01_weyl_algebra_relations() {
    let mut checked = 0usize;
    for n in 1..=4 {
        let dirs = Direction::all(n);
        for l in 0..=8 {
            for b in level_basis(n, l) {
                let h = FockVector::basis(b);
                for &u in &dirs {
                    for &w in &dirs {
                        let r = commutator_residual(u, w, &h).unwrap();
                        assert!(r.is_zero(), "[σ({u:?}),σ({w:?})] + iω₀ on {h:?}: {r:?}");
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 30_000);
}

#[test]
fn criterion_02_hermite_quadrature_oracle() {
    let scale = 2.0 * std::f64::consts::PI.sqrt();
    let h = |m: u32| FockVector::h(&[m]);
    let norm = |m: u32| to_f64(&basis_norm(&FockIndex::new(vec![m])));
    let close = |quad: f64, exact: f64, m: u32, k: u32| {
        let tol = 1e-10 * (norm(m) * norm(k)).sqrt().max(1.0);
        assert!(
            (quad / scale - exact).abs() <= tol,
            "m={m} k={k}: {} vs {exact}",
            quad / scale
        );
    };
    for m in 0..=8u32 {
        for k in 0..=8u32 {
            let exact = inner_product(&h(m), &h(k)).unwrap();
            assert!(exact.is_real());
            close(
                hermite_quadrature_oracle(m as usize, k as usize),
                to_f64(&exact.re),
                m,
                k,
            );
        }
        // without the factorial the norms would be 2^{m−1}; that disagrees from m = 2 on
        let q = hermite_quadrature_oracle(m as usize, m as usize) / scale;
        let no_factorial = 2f64.powi(m as i32 - 1);
        assert_eq!((q - no_factorial).abs() < 1e-6, m < 2, "m={m}");
    }
    // (t − d/dt) = −2iσ(Z), (t + d/dt) = −2iσ(Z̄)
    let minus_2i = GaussRat::new(int(0), int(-2));
    for m in 0..=8u32 {
        for k in 0..=9u32 {
            let up = sigma_raise(0, &h(m)).unwrap().scale(&minus_2i);
            let exact = inner_product(&up, &h(k)).unwrap();
            assert!(exact.is_real());
            close(
                ladder_quadrature(m as usize, k as usize, true),
                to_f64(&exact.re),
                m + 1,
                k,
            );
            let down = sigma_lower(0, &h(m)).unwrap().scale(&minus_2i);
            let exact = inner_product(&down, &h(k)).unwrap();
            close(
                ladder_quadrature(m as usize, k as usize, false),
                to_f64(&exact.re),
                m,
                k,
            );
        }
    }
}

#[test]
fn criterion_03_symbol_scalars() {
    let vectors = [
        vec![int(1), int(0)],
        vec![int(0), int(1)],
        vec![int(3), int(-4)],
        vec![rat(1, 2), rat(2, 3)],
        vec![int(-7), rat(5, 11)],
    ];
    for l in 0..=8usize {
        for v in &vectors {
            let g = g0_norm(v);
            let c = symbol_product(1, l, v)
                .unwrap()
                .as_scalar()
                .expect("scalar");
            assert_eq!(
                c,
                GaussRat::real(-int(2 * l as i64 + 2) * &g),
                "l={l} v={v:?}"
            );
            let r = symbol_product_reversed(1, l, v)
                .unwrap()
                .as_scalar()
                .expect("scalar");
            assert_eq!(r, GaussRat::real(-int(2 * l as i64) * &g), "l={l} v={v:?}");
        }
    }
}

#[test]
fn criterion_04_dim_v_rho() {
    let systems = implemented_systems(4);
    assert!(systems.contains(&(Family::G, 2)) && systems.contains(&(Family::D, 4)));
    for (f, r) in systems {
        let rs = build_root_system(f, r).unwrap();
        let rho = rs.rho();
        let expect = 1u128 << rs.num_positive_roots();
        assert_eq!(weyl_dimension(&rs, &rho).unwrap(), expect, "{f}{r}");
        assert_eq!(
            orthogonal_weyl_dimension(&rs, &rho),
            Rational::from_integer(expect.into()),
            "{f}{r}"
        );
    }
}

#[test]
fn criterion_05_freudenthal_vs_tensor_oracle() {
    let cases: [(Family, usize, i64); 3] =
        [(Family::A, 1, 10), (Family::A, 2, 3), (Family::B, 2, 2)];
    let mut tested = 0;
    for (f, r, level) in cases {
        let rs = build_root_system(f, r).unwrap();
        for g in dominant_weights(r, level) {
            let ws = weight_system(&rs, &g).unwrap();
            assert_eq!(ws.mults, tensor_weight_system(&rs, &g), "{f}{r} {g}");
            assert_eq!(ws.total(), weyl_dimension(&rs, &g).unwrap(), "{f}{r} {g}");
            tested += 1;
        }
    }
    assert_eq!(tested, 11 + 10 + 6);
}

#[test]
fn criterion_06_a1_casimir() {
    let a1 = build_root_system(Family::A, 1).unwrap();
    for k in 0..=20i64 {
        let expect = rat(-((k + 1) * (k + 1) - 1), 8);
        assert_eq!(
            casimir_value(&a1, &Weight(vec![k])).unwrap(),
            expect,
            "k={k}"
        );
        let rep = sl2_irrep(k as usize);
        assert!(rep.relations_hold());
        assert_eq!(
            rep.casimir(),
            CMatrix::scalar(k as usize + 1, GaussRat::real(expect)),
            "k={k}"
        );
    }
}

/// `p_spectrum` normalizes its lowest eigenvalue to 0, while the closed form
/// is the spectrum of P on the untwisted level `E_l` of CP¹, whose lowest
/// value is `λ_{l,0}`. Both are `−Ω_γ` plus a constant, so the comparison is
/// row by row after adding `λ_{l,0}`; at `l = 0` the constant vanishes.
#[test]
fn criterion_07_a1_spectrum_closed_form() {
    let a1 = build_root_system(Family::A, 1).unwrap();
    assert_eq!(lambda(0, 0), int(0));
    for l in 0..=3usize {
        let mu = Weight(vec![2 * l as i64 + 1]);
        let cutoff = &lambda(l, 10) - &lambda(l, 0);
        let t = p_spectrum(&a1, &mu, &cutoff).unwrap();
        assert_eq!(t.rows.len(), 11, "l={l}");
        let ops = build_operators(l, cp1::gamma_of(l, 10)).unwrap();
        let cp1_spec = ops.spectrum().unwrap();
        for (j, row) in t.rows.iter().enumerate() {
            assert_eq!(&row.lambda + &lambda(l, 0), lambda(l, j), "l={l} j={j}");
            assert_eq!(row.total, 2 * (l + j + 1) as u128, "l={l} j={j}");
            assert_eq!(row.constituents.len(), 1);
            assert_eq!(
                row.constituents[0].gamma,
                Weight(vec![cp1::gamma_of(l, j) as i64])
            );
            // the same eigenvalue and multiplicity from the CP¹ matrices
            assert_eq!(cp1_spec[j], (lambda(l, j), 2 * (l + j + 1)), "l={l} j={j}");
        }
        if l == 0 {
            for (j, row) in t.rows.iter().enumerate() {
                assert_eq!(row.lambda, lambda(0, j));
            }
        }
    }
}

#[test]
fn criterion_08_cp1_matrix_engine() {
    let report = full_report(4, 9, false, Exec::Parallel).unwrap();
    let failures: Vec<String> = report
        .failures()
        .iter()
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
    for needle in [
        "P = -Omega - 3/2 H^2",
        "[H,D] = D",
        "[H,Dbar] = -Dbar",
        "dim ker Dbar|E_l",
        "ker D|E_l = 0",
        "dim Γ_N",
    ] {
        assert!(
            report.checks.iter().any(|c| c.name.starts_with(needle)),
            "missing {needle}"
        );
    }
    for n in 0..=4 {
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == format!("dim Γ_N = 2(N+1)^2 (N={n})")));
    }
    for lv in &report.levels {
        assert_eq!(lv.ker_dbar, 2 * lv.l + 2);
        if lv.l >= 1 {
            assert_eq!(lv.ker_d, 0);
        }
        for b in &lv.blocks {
            assert_eq!(b.ker_dbar > 0, b.gamma == 2 * lv.l + 1);
            let full = 2 * (lv.l + b.j + 1);
            assert_eq!(b.dim, full);
            if lv.l >= 1 {
                assert_eq!(b.rank_d, full, "D on Γ_{{{},{}}}", lv.l, b.j);
            }
            if b.j >= 1 {
                assert_eq!(b.rank_dbar, full, "Dbar on Γ_{{{},{}}}", lv.l, b.j);
            }
        }
    }
    for l in 0..=3usize {
        for j in 0..=(9 - cp1::gamma_of(l, 0)) / 2 {
            for c in cp1::verify_ladder(l, j, 9).unwrap() {
                assert!(c.passed, "{}: {}", c.name, c.detail);
            }
        }
    }
}

#[test]
fn criterion_09_index_formulas() {
    for g in 0..=5u64 {
        for l in 0..=5u64 {
            let m = index(IndexQuery {
                genus: g,
                level: l,
                kind: SpinorKind::Metaplectic,
            });
            let f = index(IndexQuery {
                genus: g,
                level: l,
                kind: SpinorKind::Fock,
            });
            assert_eq!(m, (2 * l as i128 + 2) * (1 - g as i128));
            assert_eq!(f, (2 * l as i128 + 1) * (1 - g as i128));
        }
    }
    for l in 0..=5usize {
        match cp1_consistency(l, 2 * l + 3).unwrap() {
            Consistency::Agrees {
                index,
                ker_dbar,
                ker_d_next,
            } => {
                assert_eq!(index, 2 * l as i128 + 2);
                assert_eq!(ker_dbar as i128 - ker_d_next as i128, index);
            }
            other => panic!("l={l}: {other:?}"),
        }
    }
}

#[test]
fn criterion_10_distinguisher() {
    let r = distinguish(3).unwrap();
    assert!(r.differ());
    assert_eq!(r.first_difference, Some(1));
    assert_eq!(r.left.algebra, "B3");
    let b3 = r.left.first_positive().unwrap();
    assert_eq!(b3.total, 7);
    assert_eq!(b3.lambda, rat(3, 5));
    assert_eq!(r.verdict(), "spectra differ");

    let r = distinguish_with(2, Some(int(2)), &SpectrumOptions::default()).unwrap();
    assert!(!r.differ(), "{}", r.verdict());
    assert_eq!(r.verdict(), "spectra agree up to cutoff 2");
    assert!(r.left.rows.len() > 1);
}

#[test]
fn criterion_11_vacuum_spinor_weight_is_rho() {
    let mut systems: Vec<RootSystem> = implemented_systems(8)
        .into_iter()
        .map(|(f, r)| build_root_system(f, r).unwrap())
        .collect();
    systems.push(RootSystem::symplectic_rank_one());
    for rs in systems {
        let zero = vec![0u64; rs.num_positive_roots()];
        assert_eq!(
            spinor_weight(&rs, &zero).unwrap(),
            rs.rho(),
            "{}",
            rs.label()
        );
    }
}

fn dolbeault(args: &[&str], extra: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_dolbeault"))
        .args(args)
        .args(extra)
        .env_remove("DOLBEAULT_CACHE_DIR")
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

#[test]
fn criterion_12_cli_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cache_dir = dir.path().to_str().unwrap();
    let cached: &[&str] = &["--cache-dir", cache_dir];
    let uncached: &[&str] = &["--no-cache"];
    let runs: [&[&str]; 3] = [
        &[
            "spectrum", "--family", "B", "--rank", "3", "--mu", "0,0,0", "--cutoff", "2",
            "--format", "json",
        ],
        &[
            "spectrum", "--family", "A", "--rank", "2", "--mu", "1,1", "--cutoff", "5", "--format",
            "json",
        ],
        &["distinguish", "--n", "3", "--format", "json"],
    ];
    for args in runs {
        let cold = dolbeault(args, cached);
        let warm = dolbeault(args, cached);
        let none = dolbeault(args, uncached);
        assert_eq!(cold, warm, "{args:?}");
        assert_eq!(cold, none, "{args:?}");
        serde_json::from_slice::<serde_json::Value>(&cold).unwrap();
    }
    assert!(dir.path().join("B3.wsc").exists());
    assert!(dir.path().join("C3.wsc").exists());

    // cp1 never touches the weight cache
    let args = [
        "cp1",
        "--lmax",
        "2",
        "--gamma-max",
        "11",
        "--format",
        "json",
    ];
    let first = dolbeault(&args, &[]);
    assert_eq!(first, dolbeault(&args, &[]));
    assert_eq!(first, dolbeault(&args, &["--sequential"]));
    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["status"], "PASS");
}

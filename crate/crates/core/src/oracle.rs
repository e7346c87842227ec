//! Independent reference computations used by the test suites.
//!
//! Weight systems here are built from hand-written fundamental
//! representations by tensoring and peeling off constituents with the
//! Brauer–Klimyk rule; nothing in this module calls Freudenthal's recursion.

use std::collections::{BTreeMap, HashMap};

use crate::exact::{rat, Rational};
use crate::rootsys::{Family, RootSystem, Weight};

type Character = BTreeMap<Weight, u64>;

fn half(n: i64) -> Rational {
    rat(n, 2)
}

/// Orthogonal-coordinate weights of the fundamental representation ω_i, for
/// the systems covered by the oracle.
fn fundamental_orthogonal(rs: &RootSystem, i: usize) -> Option<Vec<Vec<Rational>>> {
    let unit = |dim: usize, j: usize, c: i64| {
        let mut v = vec![rat(0, 1); dim];
        v[j] = rat(c, 1);
        v
    };
    match (rs.family(), rs.rank(), i) {
        // defining rep: e_j; its dual: −e_j
        (Family::A, k, 0) => Some((0..=k).map(|j| unit(k + 1, j, 1)).collect()),
        (Family::A, 2, 1) => Some((0..3).map(|j| unit(3, j, -1)).collect()),
        (Family::B, 2, 0) => {
            let mut v: Vec<_> = (0..2)
                .flat_map(|j| [unit(2, j, 1), unit(2, j, -1)])
                .collect();
            v.push(vec![rat(0, 1), rat(0, 1)]);
            Some(v)
        }
        (Family::B, 2, 1) => Some(
            [(1, 1), (1, -1), (-1, 1), (-1, -1)]
                .iter()
                .map(|&(a, b)| vec![half(a), half(b)])
                .collect(),
        ),
        _ => None,
    }
}

fn fundamental_character(rs: &RootSystem, i: usize) -> Character {
    let weights = fundamental_orthogonal(rs, i)
        .unwrap_or_else(|| panic!("oracle has no fundamental rep {i} for {}", rs.label()));
    let mut ch = Character::new();
    for v in weights {
        *ch.entry(rs.from_orthogonal(&v).expect("integral weight"))
            .or_default() += 1;
    }
    ch
}

/// Dot-action straightening: `Some((sign, λ))` with `w(x+ρ)−ρ = λ` dominant,
/// or `None` when `x+ρ` lies on a wall.
fn straighten(rs: &RootSystem, x: &Weight) -> Option<(i64, Weight)> {
    let rho = rs.rho();
    let mut y = x.add(&rho);
    let mut sign = 1;
    loop {
        if y.0.contains(&0) {
            return None;
        }
        match y.0.iter().position(|&c| c < 0) {
            Some(i) => {
                y = rs.simple_reflection(i, &y).unwrap();
                sign = -sign;
            }
            None => return Some((sign, y.sub(&rho))),
        }
    }
}

struct Oracle<'a> {
    rs: &'a RootSystem,
    memo: HashMap<Weight, Character>,
}

impl Oracle<'_> {
    fn character(&mut self, gamma: &Weight) -> Character {
        if let Some(c) = self.memo.get(gamma) {
            return c.clone();
        }
        let k = self.rs.rank();
        let ch = match gamma.0.iter().position(|&c| c > 0) {
            None => Character::from([(Weight::zero(k), 1)]),
            Some(i) => {
                let omega = Weight::fundamental(k, i);
                let fund = fundamental_character(self.rs, i);
                let rest = gamma.sub(&omega);
                let base = self.character(&rest);
                // product character
                let mut prod: BTreeMap<Weight, i64> = BTreeMap::new();
                for (a, &ma) in &base {
                    for (b, &mb) in &fund {
                        *prod.entry(a.add(b)).or_default() += (ma * mb) as i64;
                    }
                }
                // constituents of V_rest ⊗ V_ω
                let mut constituents: BTreeMap<Weight, i64> = BTreeMap::new();
                for (nu, &m) in &fund {
                    if let Some((s, lam)) = straighten(self.rs, &rest.add(nu)) {
                        *constituents.entry(lam).or_default() += s * m as i64;
                    }
                }
                assert_eq!(
                    constituents.get(gamma),
                    Some(&1),
                    "top constituent of {gamma}"
                );
                for (lam, &n) in &constituents {
                    if lam == gamma || n == 0 {
                        continue;
                    }
                    assert!(n > 0, "negative constituent multiplicity");
                    for (w, m) in self.character(lam) {
                        *prod.entry(w).or_default() -= n * m as i64;
                    }
                }
                prod.into_iter()
                    .filter(|&(_, m)| m != 0)
                    .map(|(w, m)| {
                        assert!(m > 0, "negative weight multiplicity at {w}");
                        (w, m as u64)
                    })
                    .collect()
            }
        };
        self.memo.insert(gamma.clone(), ch.clone());
        ch
    }
}

/// Weight multiplicities of V_γ for A1, A2 and B2 via tensor products.
pub fn tensor_weight_system(rs: &RootSystem, gamma: &Weight) -> BTreeMap<Weight, u64> {
    Oracle {
        rs,
        memo: HashMap::new(),
    }
    .character(gamma)
}

/// Weyl dimension by brute force over orthogonal coordinates:
/// `Π (γ+ρ, α) / (ρ, α)` with the ambient dot product.
pub fn orthogonal_weyl_dimension(rs: &RootSystem, gamma: &Weight) -> Rational {
    let gr = rs.to_orthogonal(&gamma.add(&rs.rho())).unwrap();
    let r = rs.to_orthogonal(&rs.rho()).unwrap();
    let dot =
        |a: &[Rational], b: &[Rational]| -> Rational { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    rs.positive_roots()
        .iter()
        .map(|a| dot(&gr, a) / dot(&r, a))
        .product()
}

//! Exact scalars: arbitrary-precision rationals, Gaussian rationals `a + bi`,
//! and small dense matrices over the Gaussian rationals with exact rank.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator. Display renders `p/q`, or `p`
/// when the denominator is one.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `p/q` or `-p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => BigInt::from_str(s)
            .map(Rational::from_integer)
            .map_err(|_| bad()),
    }
}

/// Lossy conversion for display columns only.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// An element of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRat {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(int(n))
    }

    /// `re_num/re_den + (im_num/im_den) i`
    pub fn from_ratios(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::new(rat(re.0, re.1), rat(im.0, im.1))
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus `re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, o: GaussRat) -> GaussRat {
        GaussRat::new(self.re + o.re, self.im + o.im)
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, o: &GaussRat) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, o: GaussRat) -> GaussRat {
        GaussRat::new(self.re - o.re, self.im - o.im)
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: GaussRat) -> GaussRat {
        &self * &o
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussRat {
    /// `a+bi` / `a-bi` with rational parts as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}i", self.re, sign, self.im.abs())
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussRat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let body = s
            .strip_suffix('i')
            .ok_or_else(|| Error::Parse(format!("gaussian rational must end in 'i': {s:?}")))?;
        // the separating sign is the last '+'/'-' that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last()
            .ok_or_else(|| Error::Parse(format!("missing imaginary part: {s:?}")))?;
        let re = parse_rational(&body[..split])?;
        let im = parse_rational(body[split..].trim_start_matches('+'))?;
        Ok(GaussRat::new(re, im))
    }
}

/// Dense row-major matrix over Q(i).
#[derive(Clone, PartialEq, Eq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussRat>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GaussRat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, GaussRat::one())
    }

    pub fn scalar(n: usize, c: GaussRat) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = c.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussRat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn scaled(&self, c: &GaussRat) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn mul(&self, o: &CMatrix) -> Result<CMatrix> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = CMatrix::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = &o[(k, c)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(r, c)] += &p;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &CMatrix) -> Result<CMatrix> {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &CMatrix) -> Result<CMatrix> {
        self.zip(o, |a, b| a - b)
    }

    fn zip(&self, o: &CMatrix, f: impl Fn(&GaussRat, &GaussRat) -> GaussRat) -> Result<CMatrix> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    /// Exact rank by fraction-based Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !m[r * cols + col].is_zero()) else {
                continue;
            };
            if p != rank {
                for c in 0..cols {
                    m.swap(p * cols + c, rank * cols + c);
                }
            }
            let inv = m[rank * cols + col].inv().expect("nonzero pivot");
            for r in rank + 1..rows {
                let f = &m[r * cols + col] * &inv;
                if f.is_zero() {
                    continue;
                }
                for c in col..cols {
                    let t = &f * &m[rank * cols + c];
                    m[r * cols + c] = &m[r * cols + c] - &t;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Diagonal entries of a square matrix.
    pub fn diagonal(&self) -> Vec<GaussRat> {
        (0..self.rows.min(self.cols))
            .map(|k| self[(k, k)].clone())
            .collect()
    }

    /// Exact spectrum of a diagonalizable matrix whose eigenvalues appear on
    /// its diagonal (true for the triangular and block-scalar operators built
    /// here). Candidates are read off the diagonal and certified by
    /// `Σ nullity(A − λ) = n`; returns `None` if certification fails.
    pub fn certified_spectrum(&self) -> Option<Vec<(GaussRat, usize)>> {
        if !self.is_square() {
            return None;
        }
        let mut candidates: Vec<GaussRat> = Vec::new();
        for d in self.diagonal() {
            if !candidates.contains(&d) {
                candidates.push(d);
            }
        }
        let mut out = Vec::new();
        let mut total = 0;
        for lambda in candidates {
            let shifted = self
                .sub(&CMatrix::scalar(self.rows, lambda.clone()))
                .expect("square");
            let k = shifted.nullity();
            if k > 0 {
                total += k;
                out.push((lambda, k));
            }
        }
        (total == self.rows).then_some(out)
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(blocks: &[CMatrix]) -> CMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = CMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out[(r0 + r, c0 + c)] = b[(r, c)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, GaussRat)> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = &self[(r, c)];
                if !v.is_zero() {
                    out.push((r, c, v.clone()));
                }
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = GaussRat;
    fn index(&self, (r, c): (usize, usize)) -> &GaussRat {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut GaussRat {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Inverse of a square rational matrix, `None` if singular.
pub fn invert_rational(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut row = row.clone();
            row.extend((0..n).map(|c| {
                if c == r {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_and_display() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap().to_string(), "7");
        assert_eq!(rat(3, 5).to_string(), "3/5");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn gauss_display_parse() {
        let z = GaussRat::from_ratios((0, 1), (-1, 2));
        assert_eq!(z.to_string(), "0-1/2i");
        assert_eq!("0-1/2i".parse::<GaussRat>().unwrap(), z);
        let w = GaussRat::from_ratios((-3, 4), (5, 1));
        assert_eq!(w.to_string().parse::<GaussRat>().unwrap(), w);
        assert!("1+2".parse::<GaussRat>().is_err());
    }

    #[test]
    fn gauss_field_ops() {
        let i = GaussRat::i();
        assert_eq!(&i * &i, GaussRat::from_int(-1));
        let z = GaussRat::from_ratios((1, 2), (3, 1));
        assert_eq!(&z * &z.inv().unwrap(), GaussRat::one());
        assert!(GaussRat::zero().inv().is_none());
    }

    #[test]
    fn rank_and_spectrum() {
        let m = CMatrix::from_fn(3, 3, |r, c| GaussRat::from_int((r * 3 + c) as i64));
        assert_eq!(m.rank(), 2);
        let d = CMatrix::direct_sum(&[
            CMatrix::scalar(2, GaussRat::from_int(3)),
            CMatrix::scalar(1, GaussRat::from_int(-1)),
        ]);
        let spec = d.certified_spectrum().unwrap();
        assert_eq!(
            spec,
            vec![(GaussRat::from_int(3), 2), (GaussRat::from_int(-1), 1)]
        );
        // a Jordan block is not diagonalizable: certification must fail
        let mut j = CMatrix::identity(2);
        j[(0, 1)] = GaussRat::one();
        assert!(j.certified_spectrum().is_none());
    }

    #[test]
    fn rational_inverse() {
        let m = vec![vec![int(2), int(-1)], vec![int(-1), int(2)]];
        let inv = invert_rational(&m).unwrap();
        assert_eq!(
            inv,
            vec![vec![rat(2, 3), rat(1, 3)], vec![rat(1, 3), rat(2, 3)]]
        );
        assert!(invert_rational(&[vec![int(1), int(2)], vec![int(2), int(4)]]).is_none());
    }
}

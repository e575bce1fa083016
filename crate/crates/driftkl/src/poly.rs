//! Dense integer polynomials in q, Gaussian binomials, fraction-free
//! determinants of polynomial matrices, and the determinant q-analogue of
//! the Hilbert-Samuel multiplicity.

use crate::diagram::{flag_vector, shape};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Sub};

/// Integer-coefficient polynomial in q, coefficients indexed by exponent,
/// trailing zeros trimmed; the zero polynomial has an empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        IntPoly::from_coeffs(vec![BigInt::from(c)])
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// q^e
    pub fn monomial(e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::one();
        IntPoly { coeffs }
    }

    /// [a]_q = 1 + q + ... + q^{a-1}
    pub fn q_integer(a: usize) -> Self {
        IntPoly { coeffs: vec![BigInt::one(); a] }
    }

    /// Sum of q^w over an iterator of weights.
    pub fn from_weights<I: IntoIterator<Item = usize>>(weights: I) -> Self {
        let mut coeffs: Vec<BigInt> = vec![];
        for w in weights {
            if coeffs.len() <= w {
                coeffs.resize(w + 1, BigInt::zero());
            }
            coeffs[w] += BigInt::one();
        }
        IntPoly::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Smallest exponent with nonzero coefficient, or None if zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divide by q^e exactly; None if some lower coefficient is nonzero.
    pub fn shift_down(&self, e: usize) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.valuation()? < e {
            return None;
        }
        Some(IntPoly::from_coeffs(self.coeffs[e..].to_vec()))
    }

    /// Exact polynomial division; None when the remainder is nonzero.
    pub fn exact_div(&self, d: &IntPoly) -> Option<IntPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dd = d.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return None;
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let lead = rem[k + dd].clone();
            if lead.is_zero() {
                continue;
            }
            if (&lead % &d.coeffs[dd]) != BigInt::zero() {
                return None;
            }
            let q = &lead / &d.coeffs[dd];
            for (i, dc) in d.coeffs.iter().enumerate() {
                let prod = dc * &q;
                rem[k + i] -= prod;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::from_coeffs(quot))
    }

    pub fn pow(&self, e: usize) -> IntPoly {
        let mut r = IntPoly::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Every coefficient of self <= the corresponding coefficient of other.
    pub fn coefficientwise_leq(&self, other: &IntPoly) -> bool {
        let m = self.coeffs.len().max(other.coeffs.len());
        (0..m).all(|e| self.coeff(e) <= other.coeff(e))
    }

    /// Coefficient arrays for wire formats, low to high.
    pub fn to_i64_vec(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .map(|c| i64::try_from(c).expect("coefficient exceeds i64 wire range"))
            .collect()
    }

    /// Weakly increasing then weakly decreasing coefficients.
    pub fn is_unimodal(&self) -> bool {
        let c = &self.coeffs;
        let mut i = 0;
        while i + 1 < c.len() && c[i] <= c[i + 1] {
            i += 1;
        }
        while i + 1 < c.len() && c[i] >= c[i + 1] {
            i += 1;
        }
        c.is_empty() || i == c.len() - 1
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "q")?,
                1 => write!(f, "{c}q")?,
                _ if c.is_one() => write!(f, "q^{e}")?,
                _ => write!(f, "{c}q^{e}")?,
            }
        }
        Ok(())
    }
}

/// Gaussian binomial (a choose b)_q; zero when b < 0 or b > a.
pub fn q_binomial(a: i64, b: i64) -> IntPoly {
    if b < 0 || b > a {
        return IntPoly::zero();
    }
    let (a, b) = (a as usize, b as usize);
    let mut p = IntPoly::one();
    // prod_{i=1}^{b} [a-b+i]_q / [i]_q, dividing exactly at every step.
    for i in 1..=b {
        p = &p * &IntPoly::q_integer(a - b + i);
        p = p
            .exact_div(&IntPoly::q_integer(i))
            .expect("q-binomial division must be exact");
    }
    p
}

/// Determinant of a square polynomial matrix by fraction-free (Bareiss)
/// Gaussian elimination; exact over Z[q].
pub fn determinant(matrix: &[Vec<IntPoly>]) -> IntPoly {
    let n = matrix.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mut m: Vec<Vec<IntPoly>> = matrix.to_vec();
    for row in &m {
        assert_eq!(row.len(), n, "determinant requires a square matrix");
    }
    let mut sign = 1i64;
    let mut prev_pivot = IntPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return IntPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .exact_div(&prev_pivot)
                    .expect("Bareiss division is exact over an integral domain");
            }
        }
        prev_pivot = m[k][k].clone();
        for i in k + 1..n {
            m[i][k] = IntPoly::zero();
        }
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        &IntPoly::zero() - &det
    } else {
        det
    }
}

/// The q-analogue H̃_{v,w}(q) of the multiplicity: the determinant of the
/// ℓ(λ)×ℓ(λ) Gaussian-binomial matrix with (i,j) entry
/// binom(b_i + λ_i - i + j - 1, λ_i - i + j)_q, divided by
/// q^{Σ_i (i-1)λ_i}; the division is exact for every valid pair.
pub fn htilde_determinant(v: &Permutation, w: &Permutation) -> Result<IntPoly> {
    if v.n() != w.n() {
        return Err(Error::RankMismatch(v.n(), w.n()));
    }
    if !v.bruhat_leq(w)? {
        return Err(Error::NotComparable);
    }
    if !w.is_covexillary() {
        return Err(Error::NotCovexillary);
    }
    let lambda = shape(w);
    if lambda.is_empty() {
        return Ok(IntPoly::one());
    }
    let flags = flag_vector(v, w)?;
    let l = lambda.len();
    let matrix: Vec<Vec<IntPoly>> = (1..=l)
        .map(|i| {
            let (bi, li, ii) = (flags.bound(i) as i64, lambda.row(i) as i64, i as i64);
            (1..=l)
                .map(|j| q_binomial(bi + li - ii + j as i64 - 1, li - ii + j as i64))
                .collect()
        })
        .collect();
    let det = determinant(&matrix);
    let prefactor: usize = (1..=l).map(|i| (i - 1) * lambda.row(i)).sum();
    det.shift_down(prefactor).ok_or(Error::NegativeExponent)
}

//! Independent Kazhdan-Lusztig polynomial oracle for arbitrary pairs in
//! S_n, via the standard recursion on a left descent, with memoization.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Memoized Kazhdan-Lusztig polynomial table for one rank n.
///
/// The mu-sum in the recursion depends only on w (through its chosen
/// descent), not on v, so the list of (z, mu, exponent) correction terms is
/// cached per w and shared by every v.
#[derive(Debug, Default, Clone)]
pub struct KLTable {
    memo: HashMap<(Permutation, Permutation), IntPoly>,
    corrections: HashMap<Permutation, Vec<(Permutation, BigInt, usize)>>,
}

impl KLTable {
    pub fn new() -> Self {
        KLTable::default()
    }

    /// P_{v,w}(q); zero when v is not below w.
    pub fn kl_polynomial(&mut self, v: &Permutation, w: &Permutation) -> Result<IntPoly> {
        if v.n() != w.n() {
            return Err(Error::RankMismatch(v.n(), w.n()));
        }
        self.kl(v, w)
    }

    fn kl(&mut self, v: &Permutation, w: &Permutation) -> Result<IntPoly> {
        if let Some(p) = self.memo.get(&(v.clone(), w.clone())) {
            return Ok(p.clone());
        }
        let p = self.kl_uncached(v, w)?;
        self.memo.insert((v.clone(), w.clone()), p.clone());
        Ok(p)
    }

    fn kl_uncached(&mut self, v: &Permutation, w: &Permutation) -> Result<IntPoly> {
        if v == w {
            return Ok(IntPoly::one());
        }
        if !v.bruhat_leq(w)? {
            return Ok(IntPoly::zero());
        }
        let s = w
            .leftmost_left_descent()
            .expect("w above v is not the identity");
        let sw = w.left_multiply_simple(s);
        let sv = v.left_multiply_simple(s);
        let c: usize = if v.has_left_descent(s) { 1 } else { 0 };
        let lead = &(&IntPoly::monomial(1 - c) * &self.kl(&sv, &sw)?)
            + &(&IntPoly::monomial(c) * &self.kl(v, &sw)?);
        let mut p = lead;
        let corrections = self.corrections_for(w, s, &sw)?;
        for (z, mu, half) in corrections {
            let term = &(&IntPoly::monomial(half) * &IntPoly::from_coeffs(vec![mu])) * &self.kl(v, &z)?;
            p = &p - &term;
        }
        // sanity guaranteed by the theory: nonnegative, constant term 1,
        // degree at most (ℓ(w) - ℓ(v) - 1)/2
        assert!(p.coeffs().iter().all(|c| *c >= BigInt::zero()), "negative KL coefficient");
        assert!(p.coeff(0).is_one(), "KL constant term must be 1");
        let bound = (w.coxeter_length() - v.coxeter_length() - 1) / 2;
        assert!(p.degree().unwrap_or(0) <= bound, "KL degree bound violated");
        Ok(p)
    }

    /// Correction terms for the recursion at w with descent s: all
    /// (z, mu(z, sw), (ℓ(w) - ℓ(z))/2) with z < sw, sz < z, mu nonzero.
    fn corrections_for(
        &mut self,
        w: &Permutation,
        s: usize,
        sw: &Permutation,
    ) -> Result<Vec<(Permutation, BigInt, usize)>> {
        if let Some(list) = self.corrections.get(w) {
            return Ok(list.clone());
        }
        let lw = w.coxeter_length();
        let mut list = Vec::new();
        for z in Permutation::all(w.n()) {
            if !z.has_left_descent(s) || z == *sw || !z.bruhat_leq(sw)? {
                continue;
            }
            let mu = self.mu(&z, sw)?;
            if mu.is_zero() {
                continue;
            }
            // ℓ(w) - ℓ(z) is even whenever mu(z, sw) is nonzero; an odd
            // value would require half-integral powers of q.
            let diff = lw - z.coxeter_length();
            if diff % 2 != 0 {
                return Err(Error::InternalHalfPower);
            }
            list.push((z, mu, diff / 2));
        }
        self.corrections.insert(w.clone(), list.clone());
        Ok(list)
    }

    fn mu(&mut self, z: &Permutation, w: &Permutation) -> Result<BigInt> {
        let (lz, lw) = (z.coxeter_length(), w.coxeter_length());
        if lw <= lz || (lw - lz - 1) % 2 != 0 {
            return Ok(BigInt::zero());
        }
        Ok(self.kl(z, w)?.coeff((lw - lz - 1) / 2))
    }

    /// mu(v, w): the coefficient of q^{(ℓ(w)-ℓ(v)-1)/2} in P_{v,w}, or 0
    /// when that exponent is not an integer.
    pub fn mu_coefficient(&mut self, v: &Permutation, w: &Permutation) -> Result<BigInt> {
        if v.n() != w.n() {
            return Err(Error::RankMismatch(v.n(), w.n()));
        }
        if v == w || !v.bruhat_leq(w)? {
            return Err(Error::NotStrictlyBelow);
        }
        self.mu(v, w)
    }
}

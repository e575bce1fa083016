//! Symmetric-group fundamentals: one-line notation, group operations,
//! Coxeter length, Bruhat order, 3412-pattern avoidance.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// A permutation of {1..n} in one-line notation (1-based values).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::NotABijection(values));
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v < 1 || v > n || seen[v] {
                return Err(Error::NotABijection(values));
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { values: (1..=n).collect() }
    }

    /// w0 = [n, n-1, ..., 1].
    pub fn longest_element(n: usize) -> Self {
        Permutation { values: (1..=n).rev().collect() }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// w(i) for 1-based i.
    pub fn apply(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn inverse(&self) -> Self {
        let mut r = vec![0; self.values.len()];
        for (i, &v) in self.values.iter().enumerate() {
            r[v - 1] = i + 1;
        }
        Permutation { values: r }
    }

    /// (self ∘ v)(i) = self(v(i)).
    pub fn compose(&self, v: &Permutation) -> Result<Self> {
        if self.n() != v.n() {
            return Err(Error::RankMismatch(self.n(), v.n()));
        }
        Ok(Permutation { values: v.values.iter().map(|&i| self.values[i - 1]).collect() })
    }

    /// Number of inversions #{i<j : w(i)>w(j)}.
    pub fn coxeter_length(&self) -> usize {
        let v = &self.values;
        let mut len = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    len += 1;
                }
            }
        }
        len
    }

    /// Left multiplication by the simple transposition s_i (1 <= i < n):
    /// swaps the *values* i and i+1.
    pub fn left_multiply_simple(&self, i: usize) -> Self {
        let mut r = self.values.clone();
        for v in r.iter_mut() {
            if *v == i {
                *v = i + 1;
            } else if *v == i + 1 {
                *v = i;
            }
        }
        Permutation { values: r }
    }

    /// Whether s_i * self is shorter than self, i.e. i appears after i+1.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let inv_i = self.values.iter().position(|&v| v == i).unwrap();
        let inv_i1 = self.values.iter().position(|&v| v == i + 1).unwrap();
        inv_i > inv_i1
    }

    /// Smallest i with s_i * self < self, or None for the identity.
    pub fn leftmost_left_descent(&self) -> Option<usize> {
        (1..self.n()).find(|&i| self.has_left_descent(i))
    }

    /// Bruhat order via the rank-table criterion:
    /// v <= w iff #{k<=j : v(k) >= i} <= #{k<=j : w(k) >= i} for all (i,j).
    pub fn bruhat_leq(&self, w: &Permutation) -> Result<bool> {
        let n = self.n();
        if n != w.n() {
            return Err(Error::RankMismatch(n, w.n()));
        }
        for i in 1..=n {
            let (mut cv, mut cw) = (0usize, 0usize);
            for j in 1..=n {
                if self.values[j - 1] >= i {
                    cv += 1;
                }
                if w.values[j - 1] >= i {
                    cw += 1;
                }
                if cv > cw {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True iff no i1<i2<i3<i4 has values in the relative order of 3412.
    pub fn is_covexillary(&self) -> bool {
        let v = &self.values;
        let n = v.len();
        // pattern 3412: v[i3] < v[i4] < v[i1] < v[i2]
        for i1 in 0..n {
            for i2 in i1 + 1..n {
                if v[i2] <= v[i1] {
                    continue;
                }
                for i3 in i2 + 1..n {
                    if v[i3] >= v[i1] {
                        continue;
                    }
                    for i4 in i3 + 1..n {
                        if v[i3] < v[i4] && v[i4] < v[i1] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// All permutations of S_n in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Permutation::identity(n);
        loop {
            out.push(cur.clone());
            match cur.next_lex() {
                Some(next) => cur = next,
                None => break,
            }
        }
        out
    }

    fn next_lex(&self) -> Option<Permutation> {
        let mut v = self.values.clone();
        let n = v.len();
        if n < 2 {
            return None;
        }
        let mut i = n - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            return None;
        }
        let mut j = n - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        Some(Permutation { values: v })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Comma-separated one-line notation, e.g. "5,2,3,4,1".
    fn from_str(s: &str) -> Result<Self> {
        let values: std::result::Result<Vec<usize>, _> =
            s.split(',').map(|t| t.trim().parse::<usize>()).collect();
        match values {
            Ok(v) => Permutation::new(v),
            Err(e) => Err(Error::ParseError(format!("bad permutation {s:?}: {e}"))),
        }
    }
}

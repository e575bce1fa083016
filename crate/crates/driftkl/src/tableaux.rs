//! Flagged semistandard Young tableaux and their set-valued counterparts:
//! saturation and depth statistics, both h-polynomial formulas, the
//! weight-preserving map from drift configurations to tableaux, its image
//! test, and the augmentation procedure.

use crate::diagram::{flag_vector, shape, Cell, FlagVector, Partition};
use crate::drift::{continents, special_boxes_parens, DriftConfiguration};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poly::IntPoly;
use std::fmt;

/// A filling of a shape, weakly increasing along rows (left to right) and
/// strictly increasing up columns, with row-i entries capped by a flag.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlaggedTableau {
    rows: Vec<Vec<usize>>,
}

impl FlaggedTableau {
    /// Rows bottom-up: `rows[0]` is the bottom row.
    pub fn new(rows: Vec<Vec<usize>>) -> Self {
        FlaggedTableau { rows }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        if self.rows.is_empty() {
            Partition::empty()
        } else {
            Partition::new(self.rows.iter().map(|r| r.len()).collect())
        }
    }

    /// Entry at 1-based (row, col).
    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.rows[i - 1][j - 1]
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_semistandard(&self) -> bool {
        for (i, row) in self.rows.iter().enumerate() {
            if row.windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
            if i > 0 {
                let below = &self.rows[i - 1];
                if row.len() > below.len()
                    || row.iter().zip(below).any(|(hi, lo)| hi <= lo)
                {
                    return false;
                }
            }
        }
        true
    }

    pub fn respects_flags(&self, flags: &FlagVector) -> bool {
        self.rows.len() == flags.len()
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i, row)| row.iter().all(|&e| e <= flags.bound(i + 1)))
    }
}

impl fmt::Display for FlaggedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "[{}]", body.join(" | "))
    }
}

/// A filling of a shape by nonempty finite sets, semistandard in the sense
/// that every choice of a single entry per box is semistandard.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetValuedTableau {
    /// Rows bottom-up; each entry a sorted set.
    rows: Vec<Vec<Vec<usize>>>,
}

impl SetValuedTableau {
    pub fn new(rows: Vec<Vec<Vec<usize>>>) -> Self {
        SetValuedTableau { rows }
    }

    pub fn rows(&self) -> &[Vec<Vec<usize>>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &[usize] {
        &self.rows[i - 1][j - 1]
    }

    /// Total number of entries.
    pub fn total_entries(&self) -> usize {
        self.rows.iter().flatten().map(|s| s.len()).sum()
    }

    pub fn num_boxes(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// ex(U) = |U| - |λ|: the number of extra entries.
    pub fn excess(&self) -> usize {
        self.total_entries() - self.num_boxes()
    }

    /// The tableau of maxima of each box.
    pub fn sup(&self) -> FlaggedTableau {
        FlaggedTableau::new(
            self.rows
                .iter()
                .map(|r| r.iter().map(|s| *s.last().unwrap()).collect())
                .collect(),
        )
    }
}

/// All flagged semistandard tableaux of the shape, in row-reading
/// lexicographic order.
pub fn enumerate_flagged_ssyt(
    lambda: &Partition,
    flags: &FlagVector,
) -> Result<Vec<FlaggedTableau>> {
    if flags.len() != lambda.len() {
        return Err(Error::FlagMismatch { got: flags.len(), want: lambda.len() });
    }
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = (0..lambda.len()).map(|_| Vec::new()).collect();
    fill(lambda, flags, 0, 0, &mut rows, &mut out);
    return Ok(out);

    fn fill(
        lambda: &Partition,
        flags: &FlagVector,
        i: usize, // 0-based row being filled
        j: usize, // 0-based next column in that row
        rows: &mut Vec<Vec<usize>>,
        out: &mut Vec<FlaggedTableau>,
    ) {
        if i == lambda.len() {
            out.push(FlaggedTableau::new(rows.clone()));
            return;
        }
        if j == lambda.row(i + 1) {
            fill(lambda, flags, i + 1, 0, rows, out);
            return;
        }
        let mut lo = 1;
        if j > 0 {
            lo = lo.max(rows[i][j - 1]);
        }
        if i > 0 {
            lo = lo.max(rows[i - 1][j] + 1);
        }
        for e in lo..=flags.bound(i + 1) {
            rows[i].push(e);
            fill(lambda, flags, i, j + 1, rows, out);
            rows[i].pop();
        }
    }
}

/// sat(T): each box becomes the interval [max{T(i,j-1), 1+T(i-1,j)}, T(i,j)]
/// with boundary values T(i,0) = 1 and T(0,j) = 0.
pub fn saturate(t: &FlaggedTableau) -> SetValuedTableau {
    let rows = t
        .rows()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &e)| {
                    let left = if j > 0 { row[j - 1] } else { 1 };
                    let below = if i > 0 { 1 + t.rows()[i - 1][j] } else { 1 };
                    (left.max(below)..=e).collect()
                })
                .collect()
        })
        .collect();
    SetValuedTableau::new(rows)
}

/// depth(T) = ex(sat(T)).
pub fn depth(t: &FlaggedTableau) -> usize {
    saturate(t).excess()
}

fn validate_pair(v: &Permutation, w: &Permutation) -> Result<()> {
    if v.n() != w.n() {
        return Err(Error::RankMismatch(v.n(), w.n()));
    }
    if !v.bruhat_leq(w)? {
        return Err(Error::NotComparable);
    }
    if !w.is_covexillary() {
        return Err(Error::NotCovexillary);
    }
    Ok(())
}

/// H_{v,w}(q) = Σ q^{depth(T)} over T in SSYT(λ(w), b).
pub fn h_polynomial(v: &Permutation, w: &Permutation) -> Result<IntPoly> {
    validate_pair(v, w)?;
    let lambda = shape(w);
    if lambda.is_empty() {
        return Ok(IntPoly::one());
    }
    let flags = flag_vector(v, w)?;
    Ok(IntPoly::from_weights(
        enumerate_flagged_ssyt(&lambda, &flags)?.iter().map(depth),
    ))
}

/// All set-valued flagged semistandard tableaux: max U(i,j) <= min U(i,j+1),
/// max U(i,j) < min U(i+1,j), and row-i entries at most b_i.
pub fn enumerate_set_valued(
    lambda: &Partition,
    flags: &FlagVector,
) -> Result<Vec<SetValuedTableau>> {
    if flags.len() != lambda.len() {
        return Err(Error::FlagMismatch { got: flags.len(), want: lambda.len() });
    }
    let mut out = Vec::new();
    let mut rows: Vec<Vec<Vec<usize>>> = (0..lambda.len()).map(|_| Vec::new()).collect();
    fill(lambda, flags, 0, 0, &mut rows, &mut out);
    return Ok(out);

    fn fill(
        lambda: &Partition,
        flags: &FlagVector,
        i: usize,
        j: usize,
        rows: &mut Vec<Vec<Vec<usize>>>,
        out: &mut Vec<SetValuedTableau>,
    ) {
        if i == lambda.len() {
            out.push(SetValuedTableau::new(rows.clone()));
            return;
        }
        if j == lambda.row(i + 1) {
            fill(lambda, flags, i + 1, 0, rows, out);
            return;
        }
        let mut lo = 1;
        if j > 0 {
            lo = lo.max(*rows[i][j - 1].last().unwrap());
        }
        if i > 0 {
            lo = lo.max(rows[i - 1][j].last().unwrap() + 1);
        }
        let hi = flags.bound(i + 1);
        if lo > hi {
            return;
        }
        // nonempty subsets of {lo..hi}
        let width = hi - lo + 1;
        for mask in 1u32..(1 << width) {
            let set: Vec<usize> = (0..width).filter(|k| mask >> k & 1 == 1).map(|k| lo + k).collect();
            rows[i].push(set);
            fill(lambda, flags, i, j + 1, rows, out);
            rows[i].pop();
        }
    }
}

/// H_{v,w}(q) computed as Σ (q-1)^{ex(U)} over all set-valued tableaux.
pub fn h_polynomial_setvalued_oracle(v: &Permutation, w: &Permutation) -> Result<IntPoly> {
    validate_pair(v, w)?;
    let lambda = shape(w);
    if lambda.is_empty() {
        return Ok(IntPoly::one());
    }
    let flags = flag_vector(v, w)?;
    let q_minus_1 = IntPoly::from_i64_coeffs(&[-1, 1]);
    let mut acc = IntPoly::zero();
    for u in enumerate_set_valued(&lambda, &flags)? {
        acc = &acc + &q_minus_1.pow(u.excess());
    }
    Ok(acc)
}

/// Value of T at (i,j) extended by the boundary conventions: None means +∞.
fn extended_entry(t: &FlaggedTableau, lambda: &Partition, i: i64, j: usize) -> Option<i64> {
    let m = lambda.num_cols();
    if i == 0 {
        return if j <= m { Some(0) } else { None };
    }
    if i > 0 && j >= 1 && j <= m && lambda.contains(&Cell::new(i as usize, j)) {
        Some(t.entry(i as usize, j) as i64)
    } else {
        None
    }
}

/// min{T(i+1,j) - 1, T(i-1,j+1) + 1} under the boundary conventions;
/// None when both arguments are infinite.
fn prescription(t: &FlaggedTableau, lambda: &Partition, i: usize, j: usize) -> Option<i64> {
    let above = extended_entry(t, lambda, i as i64 + 1, j).map(|x| x - 1);
    let diag = extended_entry(t, lambda, i as i64 - 1, j + 1).map(|x| x + 1);
    match (above, diag) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (Some(a), None) => Some(a),
        (None, Some(b)) => Some(b),
        (None, None) => None,
    }
}

/// Top boxes (î, j) of the columns holding special boxes, keyed by column.
fn special_tops(lambda: &Partition) -> Vec<Cell> {
    special_boxes_parens(lambda)
        .cells()
        .iter()
        .map(|b| Cell::new(lambda.col_height(b.col), b.col))
        .collect()
}

/// The tableau of a drift configuration: the top box of each special column
/// gets its drifted height î + d, everything else follows the prescription
/// working down columns, right to left.
pub fn psi(
    config: &DriftConfiguration,
    v: &Permutation,
    w: &Permutation,
) -> Result<FlaggedTableau> {
    validate_pair(v, w)?;
    let lambda = shape(w);
    if lambda.is_empty() {
        assert!(config.drifts.is_empty());
        return Ok(FlaggedTableau::new(vec![]));
    }
    let pangaea = continents(&lambda);
    assert_eq!(
        config.drifts.len(),
        pangaea.continents.len(),
        "drift configuration does not match the continents of λ(w)"
    );
    let mut rows: Vec<Vec<usize>> =
        lambda.rows().iter().map(|&len| vec![0; len]).collect();
    let mut t = FlaggedTableau::new(rows.clone());
    let mut filled: Vec<Vec<bool>> = lambda.rows().iter().map(|&len| vec![false; len]).collect();
    for ((b, _), &d) in pangaea.continents.iter().zip(&config.drifts) {
        let top = lambda.col_height(b.col);
        rows[top - 1][b.col - 1] = top + d;
        filled[top - 1][b.col - 1] = true;
        t = FlaggedTableau::new(rows.clone());
    }
    for j in (1..=lambda.num_cols()).rev() {
        for i in (1..=lambda.col_height(j)).rev() {
            if filled[i - 1][j - 1] {
                continue;
            }
            let val = prescription(&t, &lambda, i, j)
                .expect("the prescription is finite on every non-special-top box");
            assert!(val >= 1, "prescription produced a non-positive entry");
            rows[i - 1][j - 1] = val as usize;
            filled[i - 1][j - 1] = true;
            t = FlaggedTableau::new(rows.clone());
        }
    }
    let flags = flag_vector(v, w)?;
    assert!(t.is_semistandard(), "drift tableau must be semistandard: {t}");
    assert!(t.respects_flags(&flags), "drift tableau must respect the flags: {t}");
    Ok(t)
}

/// Whether a flagged tableau arises from a drift configuration: the
/// prescription must hold away from the special column tops, and the
/// normalized top entries must weakly increase from southwest to northeast
/// across special boxes.
pub fn is_in_psi_image(t: &FlaggedTableau, v: &Permutation, w: &Permutation) -> Result<bool> {
    validate_pair(v, w)?;
    let lambda = shape(w);
    if lambda.is_empty() {
        return Ok(t.rows().is_empty());
    }
    let tops = special_tops(&lambda);
    for b in lambda.cells() {
        if tops.contains(&b) {
            continue;
        }
        if prescription(t, &lambda, b.row, b.col) != Some(t.entry(b.row, b.col) as i64) {
            return Ok(false);
        }
    }
    let special = special_boxes_parens(&lambda);
    let normalized = |b: &Cell| -> i64 {
        let top = lambda.col_height(b.col);
        t.entry(top, b.col) as i64 - top as i64
    };
    for (b, _) in &special.boxes {
        for (b2, _) in &special.boxes {
            if b.weakly_sw_of(b2) && normalized(b) > normalized(b2) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Drift distances read off a tableau in the image: the continent of a
/// special box (i,j) drifted by T(î,j) - î.
pub fn psi_inverse(t: &FlaggedTableau, v: &Permutation, w: &Permutation) -> Result<DriftConfiguration> {
    validate_pair(v, w)?;
    let lambda = shape(w);
    if lambda.is_empty() {
        return Ok(DriftConfiguration { drifts: vec![] });
    }
    let pangaea = continents(&lambda);
    let drifts = pangaea
        .continents
        .iter()
        .map(|(b, _)| {
            let top = lambda.col_height(b.col);
            t.entry(top, b.col) - top
        })
        .collect();
    Ok(DriftConfiguration { drifts })
}

/// Repeatedly repair the smallest (column-first) non-corner box violating
/// the prescription until none remains; the result is in the image of the
/// drift-to-tableau map and its depth weakly dominates the input's.
pub fn augment_to_image(
    t: &FlaggedTableau,
    v: &Permutation,
    w: &Permutation,
) -> Result<FlaggedTableau> {
    validate_pair(v, w)?;
    let lambda = shape(w);
    if lambda.is_empty() {
        return Ok(t.clone());
    }
    let corners = lambda.corners();
    let mut cur = t.clone();
    let cap = 1usize
        .checked_shl(lambda.size().min(63) as u32)
        .unwrap_or(usize::MAX);
    for _ in 0..cap {
        // boxes ordered left to right, bottom up within a column
        let violator = (1..=lambda.num_cols())
            .flat_map(|j| (1..=lambda.col_height(j)).map(move |i| Cell::new(i, j)))
            .find(|b| {
                !corners.contains(b)
                    && prescription(&cur, &lambda, b.row, b.col)
                        != Some(cur.entry(b.row, b.col) as i64)
            });
        let Some(b) = violator else {
            return Ok(cur);
        };
        let val = prescription(&cur, &lambda, b.row, b.col)
            .expect("a non-corner box always has a finite prescription");
        assert!(val >= 1);
        let mut rows = cur.rows().to_vec();
        rows[b.row - 1][b.col - 1] = val as usize;
        let next = FlaggedTableau::new(rows);
        debug_assert!(next.is_semistandard());
        debug_assert!(depth(&next) >= depth(&cur));
        cur = next;
    }
    Err(Error::NonTermination)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drift::enumerate_drift;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn tab(rows: &[&[usize]]) -> FlaggedTableau {
        FlaggedTableau::new(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn flagged_enumeration_example() {
        let lam = Partition::new(vec![2, 1]);
        let ts = enumerate_flagged_ssyt(&lam, &FlagVector::new(vec![2, 3])).unwrap();
        assert_eq!(
            ts,
            vec![
                tab(&[&[1, 1], &[2]]),
                tab(&[&[1, 1], &[3]]),
                tab(&[&[1, 2], &[2]]),
                tab(&[&[1, 2], &[3]]),
                tab(&[&[2, 2], &[3]]),
            ]
        );
        let forced = enumerate_flagged_ssyt(&lam, &FlagVector::new(vec![1, 2])).unwrap();
        assert_eq!(forced, vec![tab(&[&[1, 1], &[2]])]);
        assert_eq!(
            enumerate_flagged_ssyt(&Partition::empty(), &FlagVector::new(vec![])).unwrap(),
            vec![FlaggedTableau::new(vec![])]
        );
        assert!(enumerate_flagged_ssyt(&lam, &FlagVector::new(vec![2])).is_err());
    }

    #[test]
    fn saturation_and_depth() {
        // the five tableaux above have depths 0, 1, 1, 2, 1
        let lam = Partition::new(vec![2, 1]);
        let ts = enumerate_flagged_ssyt(&lam, &FlagVector::new(vec![2, 3])).unwrap();
        let depths: Vec<usize> = ts.iter().map(depth).collect();
        assert_eq!(depths, vec![0, 1, 1, 2, 1]);
        // frozen saturations
        let sats: Vec<SetValuedTableau> = ts.iter().map(saturate).collect();
        let sv = |rows: &[&[&[usize]]]| {
            SetValuedTableau::new(
                rows.iter()
                    .map(|r| r.iter().map(|s| s.to_vec()).collect())
                    .collect(),
            )
        };
        assert_eq!(sats[0], sv(&[&[&[1], &[1]], &[&[2]]]));
        assert_eq!(sats[1], sv(&[&[&[1], &[1]], &[&[2, 3]]]));
        assert_eq!(sats[2], sv(&[&[&[1], &[1, 2]], &[&[2]]]));
        assert_eq!(sats[3], sv(&[&[&[1], &[1, 2]], &[&[2, 3]]]));
        assert_eq!(sats[4], sv(&[&[&[1, 2], &[2]], &[&[3]]]));
        // minimal tableau is fixed
        let min = tab(&[&[1, 1], &[2]]);
        assert_eq!(depth(&min), 0);
        // rows [1,2],[3]
        assert_eq!(depth(&tab(&[&[1, 2], &[3]])), 2);
    }

    #[test]
    fn h_polynomial_examples() {
        let id = Permutation::identity(5);
        let w = p(&[5, 2, 3, 4, 1]);
        assert_eq!(h_polynomial(&id, &w).unwrap(), IntPoly::from_i64_coeffs(&[1, 3, 1]));
        assert_eq!(h_polynomial(&w, &w).unwrap(), IntPoly::one());
        assert_eq!(
            h_polynomial(&p(&[3, 2, 1, 4, 5]), &w).unwrap(),
            IntPoly::from_i64_coeffs(&[1, 1])
        );
    }

    #[test]
    fn set_valued_oracle_example() {
        let id = Permutation::identity(5);
        let w = p(&[5, 2, 3, 4, 1]);
        let lam = shape(&w);
        let flags = flag_vector(&id, &w).unwrap();
        let all = enumerate_set_valued(&lam, &flags).unwrap();
        assert_eq!(all.len(), 11); // Σ 2^depth = 1 + 2 + 2 + 4 + 2
        assert_eq!(
            h_polynomial_setvalued_oracle(&id, &w).unwrap(),
            IntPoly::from_i64_coeffs(&[1, 3, 1])
        );
        assert_eq!(h_polynomial_setvalued_oracle(&w, &w).unwrap(), IntPoly::one());
    }

    #[test]
    fn sat_and_sup_are_mutually_inverse() {
        let lam = Partition::new(vec![2, 1]);
        let flags = FlagVector::new(vec![2, 3]);
        for t in enumerate_flagged_ssyt(&lam, &flags).unwrap() {
            assert_eq!(saturate(&t).sup(), t);
        }
        for u in enumerate_set_valued(&lam, &flags).unwrap() {
            let lower_saturated = saturate(&u.sup()) == u;
            // sat ∘ sup is the identity exactly on lower-saturated tableaux
            if lower_saturated {
                assert_eq!(saturate(&u.sup()), u);
            }
        }
    }

    #[test]
    fn psi_examples() {
        let id = Permutation::identity(5);
        let w = p(&[5, 2, 3, 4, 1]);
        let configs = enumerate_drift(&id, &w).unwrap();
        let images: Vec<FlaggedTableau> =
            configs.iter().map(|d| psi(d, &id, &w).unwrap()).collect();
        assert!(images.contains(&tab(&[&[1, 1], &[2]]))); // zero drift
        assert!(images.contains(&tab(&[&[1, 2], &[3]]))); // drift (1,1)
        // weights match depths
        for (d, t) in configs.iter().zip(&images) {
            assert_eq!(d.weight(), depth(t));
        }
        // injectivity
        let mut sorted = images.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), configs.len());
    }

    #[test]
    fn image_test_and_inverse() {
        let id = Permutation::identity(5);
        let w = p(&[5, 2, 3, 4, 1]);
        assert!(is_in_psi_image(&tab(&[&[1, 2], &[3]]), &id, &w).unwrap());
        assert!(!is_in_psi_image(&tab(&[&[2, 2], &[3]]), &id, &w).unwrap());
        // exactly 4 of the 5 flagged tableaux are in the image
        let lam = shape(&w);
        let flags = flag_vector(&id, &w).unwrap();
        let in_image: Vec<bool> = enumerate_flagged_ssyt(&lam, &flags)
            .unwrap()
            .iter()
            .map(|t| is_in_psi_image(t, &id, &w).unwrap())
            .collect();
        assert_eq!(in_image.iter().filter(|&&b| b).count(), 4);
        // ψ⁻¹ ∘ ψ = id on configurations
        for d in enumerate_drift(&id, &w).unwrap() {
            let t = psi(&d, &id, &w).unwrap();
            assert_eq!(psi_inverse(&t, &id, &w).unwrap(), d);
        }
    }

    #[test]
    fn augmentation_examples() {
        let id = Permutation::identity(5);
        let w = p(&[5, 2, 3, 4, 1]);
        let t = tab(&[&[2, 2], &[3]]);
        let fixed = augment_to_image(&t, &id, &w).unwrap();
        assert_eq!(fixed, tab(&[&[1, 2], &[3]]));
        assert_eq!(depth(&t), 1);
        assert_eq!(depth(&fixed), 2);
        // image tableaux are fixed points
        for d in enumerate_drift(&id, &w).unwrap() {
            let im = psi(&d, &id, &w).unwrap();
            assert_eq!(augment_to_image(&im, &id, &w).unwrap(), im);
        }
    }
}

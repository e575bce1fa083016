//! Diagram combinatorics of a permutation: the (flipped) diagram D(w), dot
//! graphs G(u), essential sets, the shape λ(w), southwest rank counts, the
//! shifted essential set, the bounding partition B(v,w), and flag vectors.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use std::collections::BTreeSet;
use std::fmt;

/// A box in a French-convention grid: row counted from the bottom, column
/// from the left, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// Weakly southwest: row <= other.row and col <= other.col.
    pub fn weakly_sw_of(&self, other: &Cell) -> bool {
        self.row <= other.row && self.col <= other.col
    }

    pub fn translate(&self, d: usize) -> Cell {
        Cell::new(self.row + d, self.col + d)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A Young diagram in French convention: `rows[0]` is the bottom (longest)
/// row; rows past the end have length 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    rows: Vec<usize>,
}

impl Partition {
    pub fn new(rows: Vec<usize>) -> Self {
        assert!(
            rows.windows(2).all(|w| w[0] >= w[1]) && rows.iter().all(|&r| r > 0),
            "partition rows must be weakly decreasing and positive: {rows:?}"
        );
        Partition { rows }
    }

    pub fn empty() -> Self {
        Partition { rows: vec![] }
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// Length of 1-based row i; 0 past the last row.
    pub fn row(&self, i: usize) -> usize {
        assert!(i >= 1, "rows are 1-based");
        self.rows.get(i - 1).copied().unwrap_or(0)
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Total number of boxes.
    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Number of columns (length of the bottom row).
    pub fn num_cols(&self) -> usize {
        self.rows.first().copied().unwrap_or(0)
    }

    /// Height of 1-based column c (the conjugate partition entry).
    pub fn col_height(&self, c: usize) -> usize {
        self.rows.iter().take_while(|&&r| r >= c).count()
    }

    pub fn contains(&self, b: &Cell) -> bool {
        b.row >= 1 && b.col >= 1 && b.col <= self.row(b.row)
    }

    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.size());
        for (i, &len) in self.rows.iter().enumerate() {
            for c in 1..=len {
                out.push(Cell::new(i + 1, c));
            }
        }
        out
    }

    /// Removable corners (r, λ_r) with λ_{r+1} < λ_r, bottom row first.
    pub fn corners(&self) -> Vec<Cell> {
        (1..=self.len())
            .filter(|&r| self.row(r + 1) < self.row(r))
            .map(|r| Cell::new(r, self.row(r)))
            .collect()
    }

    /// Containment of Young diagrams.
    pub fn contains_partition(&self, other: &Partition) -> bool {
        (1..=other.len()).all(|i| other.row(i) <= self.row(i))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Per-row entry caps for flagged tableaux over a shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagVector {
    bounds: Vec<usize>,
}

impl FlagVector {
    pub fn new(bounds: Vec<usize>) -> Self {
        FlagVector { bounds }
    }

    pub fn len(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }

    /// Cap for 1-based row i.
    pub fn bound(&self, i: usize) -> usize {
        self.bounds[i - 1]
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }
}

/// The flipped diagram D(w): boxes (i,j) with i < n - w(j) + 1 and
/// j < w^{-1}(n - i + 1), rows indexed from the bottom.
pub fn flipped_diagram(w: &Permutation) -> BTreeSet<Cell> {
    let n = w.n();
    let winv = w.inverse();
    let mut out = BTreeSet::new();
    for j in 1..=n {
        for i in 1..=n {
            if i < n - w.apply(j) + 1 && j < winv.apply(n - i + 1) {
                out.insert(Cell::new(i, j));
            }
        }
    }
    out
}

/// The dot graph G(u): one dot per column j, at row n - u(j) + 1.
pub fn graph_dots(u: &Permutation) -> BTreeSet<Cell> {
    let n = u.n();
    (1..=n).map(|j| Cell::new(n - u.apply(j) + 1, j)).collect()
}

/// Boxes of D(w) whose north and east neighbours are both absent.
pub fn essential_set(w: &Permutation) -> BTreeSet<Cell> {
    let d = flipped_diagram(w);
    d.iter()
        .filter(|b| {
            !d.contains(&Cell::new(b.row + 1, b.col)) && !d.contains(&Cell::new(b.row, b.col + 1))
        })
        .copied()
        .collect()
}

/// The shape λ(w): row sizes of D(w) sorted decreasingly.
pub fn shape(w: &Permutation) -> Partition {
    let mut counts = vec![0usize; w.n()];
    for b in flipped_diagram(w) {
        counts[b.row - 1] += 1;
    }
    counts.retain(|&c| c > 0);
    counts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(counts)
}

/// r^u_b: number of dots of G(u) weakly southwest of b.
pub fn rank_sw(u: &Permutation, b: &Cell) -> Result<usize> {
    let n = u.n();
    if b.row < 1 || b.row > n || b.col < 1 || b.col > n {
        return Err(Error::BoxOutOfGrid(b.row, b.col));
    }
    Ok(graph_dots(u)
        .iter()
        .filter(|d| d.weakly_sw_of(b))
        .count())
}

fn require_pair(v: &Permutation, w: &Permutation) -> Result<()> {
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

/// Essential boxes of w, each moved diagonally southwest by r^v units.
pub fn theta_essential(v: &Permutation, w: &Permutation) -> Result<BTreeSet<Cell>> {
    require_pair(v, w)?;
    let mut out = BTreeSet::new();
    for e in essential_set(w) {
        let r = rank_sw(v, &e)?;
        if e.row <= r || e.col <= r {
            return Err(Error::InternalGeometry);
        }
        out.insert(Cell::new(e.row - r, e.col - r));
    }
    Ok(out)
}

/// B(v,w): the smallest Young diagram containing the shifted essential boxes
/// and the box (1,1).
pub fn bounding_partition(v: &Permutation, w: &Permutation) -> Result<Partition> {
    let mut boxes = theta_essential(v, w)?;
    boxes.insert(Cell::new(1, 1));
    let max_row = boxes.iter().map(|b| b.row).max().unwrap();
    let rows: Vec<usize> = (1..=max_row)
        .map(|r| boxes.iter().filter(|b| b.row >= r).map(|b| b.col).max().unwrap())
        .collect();
    Ok(Partition::new(rows))
}

/// The flag vector b with b_i = max{m : B(v,w)_m >= λ(w)_i + m - i}.
pub fn flag_vector(v: &Permutation, w: &Permutation) -> Result<FlagVector> {
    let lambda = shape(w);
    if lambda.is_empty() {
        return Err(Error::EmptyShape);
    }
    let b = bounding_partition(v, w)?;
    let mut bounds = Vec::with_capacity(lambda.len());
    for i in 1..=lambda.len() {
        // For m > max(rows(B), i) the requirement λ_i + m - i <= B_m = 0
        // fails (λ_i >= 1), so the search range below is exhaustive.
        let hi = b.len().max(i);
        let bi = (1..=hi)
            .rev()
            .find(|&m| b.row(m) as i64 >= lambda.row(i) as i64 + m as i64 - i as i64)
            .expect("flag maximum exists whenever v <= w");
        assert!(bi >= i, "flag bound below its row index: b_{i} = {bi}");
        bounds.push(bi);
    }
    assert!(
        bounds.windows(2).all(|w| w[0] <= w[1]),
        "flag vector must be weakly increasing: {bounds:?}"
    );
    Ok(FlagVector::new(bounds))
}

//! Special boxes, continents, drift-configuration enumeration (the
//! combinatorial rule for P_{v,w}), country-level drifts (multiplicity),
//! rooted trees with bounded edge labelings, and bigrassmannian
//! comparisons.

use crate::diagram::{
    bounding_partition, essential_set, flag_vector, rank_sw, shape, Cell, Partition,
};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poly::IntPoly;
use std::collections::HashSet;

/// Special boxes of a shape with their levels; every northeast corner is
/// 0-special, deeper levels are found by the greedy recursion or,
/// equivalently, by parenthesis pairing of the boundary word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialBoxes {
    /// (box, z-level), sorted by column.
    pub boxes: Vec<(Cell, usize)>,
}

impl SpecialBoxes {
    pub fn cells(&self) -> Vec<Cell> {
        self.boxes.iter().map(|(b, _)| *b).collect()
    }
}

/// The decomposition of a shape into continents (one per special box) plus
/// the immovable reference region covered by no continent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pangaea {
    /// (special box, boxes of its continent), sorted by special box.
    pub continents: Vec<(Cell, Vec<Cell>)>,
    pub reference: Vec<Cell>,
}

/// A drift distance per continent, parallel to `Pangaea::continents`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DriftConfiguration {
    pub drifts: Vec<usize>,
}

impl DriftConfiguration {
    pub fn weight(&self) -> usize {
        self.drifts.iter().sum()
    }
}

/// Greedy special boxes: corners are 0-special; for each z >= 1 the
/// maximally-northeast boxes with |arm| = |leg| whose hook (box, arm, leg)
/// avoids all lower-level special boxes. Distinct diagonals can contribute
/// incomparable maxima at the same level (first seen on λ = (6,6,3,3)), so
/// every maximal candidate is taken.
pub fn special_boxes_greedy(lambda: &Partition) -> Result<SpecialBoxes> {
    assert!(!lambda.is_empty(), "special boxes need a nonempty shape");
    let mut special: Vec<(Cell, usize)> = lambda.corners().iter().map(|&c| (c, 0)).collect();
    let hook = |b: &Cell| -> Vec<Cell> {
        let mut h = vec![*b];
        h.extend((b.col + 1..=lambda.row(b.row)).map(|c| Cell::new(b.row, c)));
        h.extend((b.row + 1..=lambda.col_height(b.col)).map(|r| Cell::new(r, b.col)));
        h
    };
    for z in 1.. {
        let taken: HashSet<Cell> = special.iter().map(|(b, _)| *b).collect();
        let candidates: Vec<Cell> = lambda
            .cells()
            .into_iter()
            .filter(|b| {
                let arm = lambda.row(b.row) - b.col;
                let leg = lambda.col_height(b.col) - b.row;
                arm == leg && hook(b).iter().all(|x| !taken.contains(x))
            })
            .collect();
        if candidates.is_empty() {
            break;
        }
        let maximal: Vec<Cell> = candidates
            .iter()
            .filter(|b| candidates.iter().all(|o| o == *b || !b.weakly_sw_of(o)))
            .copied()
            .collect();
        if maximal.is_empty() {
            return Err(Error::AmbiguousMaximum(z));
        }
        special.extend(maximal.into_iter().map(|b| (b, z)));
    }
    special.sort_by_key(|(b, _)| b.col);
    Ok(SpecialBoxes { boxes: special })
}

/// Special boxes via the boundary parenthesis word: walking the northeast
/// border of λ from top-left to bottom-right, record '(' for each east step
/// (over a column) and ')' for each south step (past a row); matched pairs
/// are special boxes, z-level = nesting depth among matched pairs.
pub fn special_boxes_parens(lambda: &Partition) -> SpecialBoxes {
    assert!(!lambda.is_empty(), "special boxes need a nonempty shape");
    // tokens: Some(col) for '(' , None with row label for ')'
    #[derive(Clone, Copy)]
    enum Tok {
        Open(usize),  // east step over this column
        Close(usize), // south step past this row
    }
    let mut word = Vec::new();
    let mut h = lambda.len();
    for c in 1..=lambda.num_cols() {
        while h > lambda.col_height(c) {
            word.push(Tok::Close(h));
            h -= 1;
        }
        word.push(Tok::Open(c));
    }
    while h > 0 {
        word.push(Tok::Close(h));
        h -= 1;
    }
    // match parentheses
    let mut stack: Vec<usize> = Vec::new(); // positions of unmatched '('
    let mut pairs: Vec<(usize, usize, Cell)> = Vec::new(); // (open pos, close pos, box)
    for (p, tok) in word.iter().enumerate() {
        match tok {
            Tok::Open(_) => stack.push(p),
            Tok::Close(row) => {
                if let Some(open) = stack.pop() {
                    let col = match word[open] {
                        Tok::Open(c) => c,
                        Tok::Close(_) => unreachable!(),
                    };
                    pairs.push((open, p, Cell::new(*row, col)));
                }
            }
        }
    }
    // z-level = nesting height from the innermost pairs: 0 for pairs
    // enclosing nothing, else one more than the deepest enclosed pair.
    // The stack matching emits inner pairs first, so one forward pass works.
    let mut levels = vec![0usize; pairs.len()];
    for k in 0..pairs.len() {
        let (ok, ck, _) = pairs[k];
        levels[k] = (0..k)
            .filter(|&j| ok < pairs[j].0 && pairs[j].1 < ck)
            .map(|j| levels[j] + 1)
            .max()
            .unwrap_or(0);
    }
    let mut boxes: Vec<(Cell, usize)> = pairs
        .iter()
        .zip(&levels)
        .map(|(&(_, _, b), &z)| (b, z))
        .collect();
    boxes.sort_by_key(|(b, _)| b.col);
    SpecialBoxes { boxes }
}

/// Partition of λ into continents: box x belongs to the continent of the
/// maximally-northeast special box weakly southwest of x; boxes with no
/// special box weakly southwest form the reference region.
pub fn continents(lambda: &Partition) -> Pangaea {
    let special = special_boxes_parens(lambda);
    let mut continents: Vec<(Cell, Vec<Cell>)> =
        special.boxes.iter().map(|(b, _)| (*b, Vec::new())).collect();
    continents.sort_by_key(|(b, _)| (b.row, b.col));
    let mut reference = Vec::new();
    for x in lambda.cells() {
        let sw: Vec<Cell> = continents
            .iter()
            .map(|(b, _)| *b)
            .filter(|b| b.weakly_sw_of(&x))
            .collect();
        let maximal: Vec<Cell> = sw
            .iter()
            .filter(|b| sw.iter().all(|o| o == *b || !b.weakly_sw_of(o)))
            .copied()
            .collect();
        match maximal.as_slice() {
            [] => reference.push(x),
            [owner] => {
                let owner = *owner;
                continents
                    .iter_mut()
                    .find(|(b, _)| *b == owner)
                    .unwrap()
                    .1
                    .push(x);
            }
            _ => panic!("special boxes weakly southwest of {x} have two maxima"),
        }
    }
    Pangaea { continents, reference }
}

/// A set of "countries" drifting diagonally northeast inside an arena.
struct DriftProblem {
    /// (anchor box, all boxes), anchors pairwise distinct.
    countries: Vec<(Cell, Vec<Cell>)>,
    reference: Vec<Cell>,
    arena: Partition,
}

impl DriftProblem {
    /// All assignments of a drift distance to each country such that the
    /// translated countries stay in the arena, are pairwise disjoint and
    /// disjoint from the reference region, and anchors that start weakly
    /// southwest of one another stay that way.
    fn enumerate(&self) -> Vec<Vec<usize>> {
        // Largest drift keeping a country inside the arena. Young diagrams
        // are down-sets, so feasibility is monotone in the drift.
        let cap = |boxes: &[Cell]| -> usize {
            let mut d = 0;
            while boxes.iter().all(|b| self.arena.contains(&b.translate(d + 1))) {
                d += 1;
            }
            d
        };
        for b in &self.reference {
            assert!(self.arena.contains(b), "reference region must sit inside the arena");
        }
        // Process anchors in southwest-to-northeast reading order so the
        // relative-position constraints prune early.
        let mut order: Vec<usize> = (0..self.countries.len()).collect();
        order.sort_by_key(|&i| {
            let a = self.countries[i].0;
            (a.row + a.col, a.row)
        });
        let caps: Vec<usize> = self.countries.iter().map(|(_, boxes)| cap(boxes)).collect();
        let mut occupied: HashSet<Cell> = self.reference.iter().copied().collect();
        let mut drifts = vec![0usize; self.countries.len()];
        let mut out = Vec::new();
        self.search(&order, 0, &caps, &mut occupied, &mut drifts, &mut out);
        out.sort();
        out
    }

    fn search(
        &self,
        order: &[usize],
        pos: usize,
        caps: &[usize],
        occupied: &mut HashSet<Cell>,
        drifts: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == order.len() {
            out.push(drifts.clone());
            return;
        }
        let i = order[pos];
        let (anchor, boxes) = &self.countries[i];
        'next_d: for d in 0..=caps[i] {
            // anchors weakly southwest of each other must stay so
            for &k in &order[..pos] {
                let (ka, _) = &self.countries[k];
                let (kt, it) = (ka.translate(drifts[k]), anchor.translate(d));
                if ka.weakly_sw_of(anchor) && !kt.weakly_sw_of(&it) {
                    continue 'next_d;
                }
                if anchor.weakly_sw_of(ka) && !it.weakly_sw_of(&kt) {
                    continue 'next_d;
                }
            }
            let translated: Vec<Cell> = boxes.iter().map(|b| b.translate(d)).collect();
            if translated.iter().any(|b| occupied.contains(b)) {
                continue;
            }
            for b in &translated {
                occupied.insert(*b);
            }
            drifts[i] = d;
            self.search(order, pos + 1, caps, occupied, drifts, out);
            for b in &translated {
                occupied.remove(b);
            }
        }
        drifts[i] = 0;
    }
}

fn drift_context(v: &Permutation, w: &Permutation) -> Result<Option<(Partition, Partition, Pangaea)>> {
    let lambda = shape(w);
    if lambda.is_empty() {
        // validate the preconditions anyway
        if !v.bruhat_leq(w)? {
            return Err(Error::NotComparable);
        }
        if !w.is_covexillary() {
            return Err(Error::NotCovexillary);
        }
        return Ok(None);
    }
    let arena = bounding_partition(v, w)?;
    assert!(
        arena.contains_partition(&lambda),
        "the arena must contain the shape when v <= w"
    );
    let pangaea = continents(&lambda);
    Ok(Some((lambda, arena, pangaea)))
}

/// All drift configurations of the continents of λ(w) inside B(v,w).
pub fn enumerate_drift(v: &Permutation, w: &Permutation) -> Result<Vec<DriftConfiguration>> {
    let Some((_, arena, pangaea)) = drift_context(v, w)? else {
        return Ok(vec![DriftConfiguration { drifts: vec![] }]);
    };
    let problem = DriftProblem {
        countries: pangaea.continents.clone(),
        reference: pangaea.reference.clone(),
        arena,
    };
    Ok(problem
        .enumerate()
        .into_iter()
        .map(|drifts| DriftConfiguration { drifts })
        .collect())
}

/// Q_{v,w}(q) = Σ q^{wt(D)} over drift configurations.
pub fn q_polynomial(v: &Permutation, w: &Permutation) -> Result<IntPoly> {
    Ok(IntPoly::from_weights(
        enumerate_drift(v, w)?.iter().map(|d| d.weight()),
    ))
}

/// Generating series of total distance when every box of λ(w) drifts as its
/// own country; its value at q = 1 is the multiplicity.
pub fn country_drift_series(v: &Permutation, w: &Permutation) -> Result<IntPoly> {
    let Some((lambda, arena, _)) = drift_context(v, w)? else {
        return Ok(IntPoly::one());
    };
    let problem = DriftProblem {
        countries: lambda.cells().into_iter().map(|b| (b, vec![b])).collect(),
        reference: vec![],
        arena,
    };
    Ok(IntPoly::from_weights(
        problem.enumerate().iter().map(|d| d.iter().sum()),
    ))
}

/// Node of a rooted continent tree; index 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    /// None exactly for the root.
    pub special_box: Option<Cell>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Cap of the incident edge label, present exactly on leaves.
    pub leaf_bound: Option<usize>,
}

/// Rooted tree with one non-root vertex per continent, built from the
/// nesting of the boundary parenthesis pairs; leaves are the northeast
/// corners (h, λ_h), with leaf bound b_h - h.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LascouxTree {
    pub nodes: Vec<TreeNode>,
}

impl LascouxTree {
    pub fn num_edges(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn leaves(&self) -> Vec<usize> {
        (1..self.nodes.len())
            .filter(|&i| self.nodes[i].children.is_empty())
            .collect()
    }
}

pub fn lascoux_tree(v: &Permutation, w: &Permutation) -> Result<LascouxTree> {
    let Some((lambda, _, _)) = drift_context(v, w)? else {
        return Ok(LascouxTree {
            nodes: vec![TreeNode { special_box: None, parent: None, children: vec![], leaf_bound: None }],
        });
    };
    let flags = flag_vector(v, w)?;
    let special = special_boxes_parens(&lambda);
    // nesting forest: parent of a box is the special box at the next z-level
    // whose hook interval encloses it; equivalently the minimal strictly
    // enclosing matched pair. Enclosure of pairs translates to boxes as
    // strict containment of (row, col) intervals.
    let mut nodes = vec![TreeNode { special_box: None, parent: None, children: vec![], leaf_bound: None }];
    let mut order: Vec<Cell> = special.cells();
    order.sort_by_key(|b| (b.row, b.col)); // deterministic node order
    for b in &order {
        nodes.push(TreeNode {
            special_box: Some(*b),
            parent: None,
            children: vec![],
            leaf_bound: None,
        });
    }
    // Pair (r,c) encloses (r',c') iff r < r' and c < c': its '(' lies in an
    // earlier column and its ')' in a lower row, which the border walk
    // visits later. Enclosing pairs of a fixed box are totally nested, so
    // the tightest one is the one with the largest row.
    for i in 0..order.len() {
        let b = order[i];
        let mut parent_idx = 0usize; // root by default
        let mut best: Option<Cell> = None;
        for (j, &o) in order.iter().enumerate() {
            if o.row < b.row && o.col < b.col && best.map_or(true, |p| o.row > p.row) {
                best = Some(o);
                parent_idx = j + 1;
            }
        }
        nodes[i + 1].parent = Some(parent_idx);
        nodes[parent_idx].children.push(i + 1);
    }
    // leaf bounds: leaf special boxes are corners (h, λ_h)
    for i in 1..nodes.len() {
        if nodes[i].children.is_empty() {
            let b = nodes[i].special_box.unwrap();
            assert_eq!(
                lambda.row(b.row),
                b.col,
                "leaf special box must be a northeast corner"
            );
            nodes[i].leaf_bound = Some(flags.bound(b.row) - b.row);
        }
    }
    Ok(LascouxTree { nodes })
}

/// All labelings of the tree edges by nonnegative integers, weakly
/// increasing from root to leaf, with each leaf edge at most its bound.
/// Returned as vectors of labels indexed by node (entry 0, the root, is 0).
pub fn enumerate_labelings(tree: &LascouxTree) -> Vec<Vec<usize>> {
    // an edge label can never exceed any descendant leaf's bound
    fn cap(tree: &LascouxTree, i: usize) -> usize {
        let node = &tree.nodes[i];
        match node.leaf_bound {
            Some(b) => b,
            None => node.children.iter().map(|&c| cap(tree, c)).min().unwrap_or(0),
        }
    }
    fn go(tree: &LascouxTree, i: usize, lower: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        // assign children of i one after another (preorder product)
        fn assign(
            tree: &LascouxTree,
            siblings: &[usize],
            k: usize,
            lower_of: usize,
            labels: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if k == siblings.len() {
                out.push(labels.clone());
                return;
            }
            let child = siblings[k];
            for d in lower_of..=cap(tree, child) {
                labels[child] = d;
                // recurse into child's subtree, then continue with the
                // next sibling for every completion of that subtree
                let mut sub = Vec::new();
                go(tree, child, d, labels, &mut sub);
                for labeling in sub {
                    let mut l2 = labeling;
                    assign(tree, siblings, k + 1, lower_of, &mut l2, out);
                }
            }
            labels[child] = 0;
        }
        assign(tree, &tree.nodes[i].children, 0, lower, labels, out);
    }
    let mut labels = vec![0usize; tree.nodes.len()];
    let mut out = Vec::new();
    go(tree, 0, 0, &mut labels, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Weight (label sum) of one labeling.
pub fn labeling_weight(labels: &[usize]) -> usize {
    labels.iter().sum()
}

/// The bigrassmannian permutation [a,b,c,d] of S_{a+b+c+d}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bigrassmannian {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl Bigrassmannian {
    pub fn n(&self) -> usize {
        self.a + self.b + self.c + self.d
    }

    /// (1..a, a+c+1..a+c+b, a+1..a+c, a+c+b+1..n) in one-line notation.
    pub fn expand(&self) -> Permutation {
        let (a, b, c) = (self.a, self.b, self.c);
        let mut vals: Vec<usize> = (1..=a).collect();
        vals.extend(a + c + 1..=a + c + b);
        vals.extend(a + 1..=a + c);
        vals.extend(a + c + b + 1..=self.n());
        Permutation::new(vals).expect("bigrassmannian expansion is a permutation")
    }
}

/// [a,b,c,d] <= ṽ in Bruhat order, via the rank criterion
/// r^v_{(a+b, a+c)} <= a with v = w0 · ṽ^{-1}.
pub fn bigrassmannian_leq(g: &Bigrassmannian, vtilde: &Permutation) -> Result<bool> {
    let n = vtilde.n();
    if g.n() != n {
        return Err(Error::RankMismatch(g.n(), n));
    }
    if g.b == 0 || g.c == 0 {
        return Ok(true); // the expansion is the identity
    }
    let v = Permutation::longest_element(n).compose(&vtilde.inverse())?;
    Ok(rank_sw(&v, &Cell::new(g.a + g.b, g.a + g.c))? <= g.a)
}

/// distance([a,b,c,d], ṽ) = max{r >= 0 : [a-r, b+r, c+r, d-r] <= ṽ}.
pub fn bigrassmannian_distance(g: &Bigrassmannian, vtilde: &Permutation) -> Result<usize> {
    if !bigrassmannian_leq(g, vtilde)? {
        return Err(Error::NotBelow);
    }
    let mut r = 0;
    while g.a > r && g.d > r {
        let shifted = Bigrassmannian { a: g.a - r - 1, b: g.b + r + 1, c: g.c + r + 1, d: g.d - r - 1 };
        if !bigrassmannian_leq(&shifted, vtilde)? {
            break;
        }
        r += 1;
    }
    Ok(r)
}

/// The unique essential box of D(w) diagonally northeast of the corner
/// (h, λ_h); shifting it southwest by r^w recovers the corner.
pub fn corner_to_essential(w: &Permutation, corner: &Cell) -> Result<Cell> {
    let mut hits = essential_set(w).into_iter().filter(|e| {
        e.row >= corner.row
            && e.col >= corner.col
            && e.row - corner.row == e.col - corner.col
            && rank_sw(w, e).map_or(false, |r| r == e.row - corner.row)
    });
    let e = hits.next().ok_or(Error::InternalGeometry)?;
    if hits.next().is_some() {
        return Err(Error::InternalGeometry);
    }
    Ok(e)
}

/// The maximal bigrassmannian below w̃ = w^{-1}·w0 attached to an essential
/// box 𝔢 = (j, w̃_k): [z, j-z, w̃_k - z, n - w̃_k - j + z] with z = r^w_𝔢.
pub fn leaf_bigrassmannian(w: &Permutation, essential: &Cell) -> Result<Bigrassmannian> {
    let n = w.n();
    let z = rank_sw(w, essential)?;
    let (j, col) = (essential.row, essential.col);
    assert!(z <= j && z <= col && col + j <= n + z, "essential box out of range");
    Ok(Bigrassmannian { a: z, b: j - z, c: col - z, d: n + z - col - j })
}

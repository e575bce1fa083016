//! The simplicial complex of drift tableaux: faces are limit-semistandard
//! set-valued drift tableaux ordered by reverse containment, facets are the
//! drift configurations, and the complex is a ball or a sphere. Also the
//! hybrid polynomial with its K-polynomial, monomial, and P-polynomial
//! specializations, and vertex decompositions with an exact K-polynomial
//! identity.

use crate::drift::enumerate_drift;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

/// A filling of the continents by nonempty finite sets of drift distances.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DriftTableau {
    /// Sorted set per continent, parallel to `Pangaea::continents`.
    pub entries: Vec<Vec<usize>>,
}

impl DriftTableau {
    /// All singletons, i.e. exactly one drift configuration.
    pub fn is_ordinary(&self) -> bool {
        self.entries.iter().all(|s| s.len() == 1)
    }

    pub fn total_entries(&self) -> usize {
        self.entries.iter().map(|s| s.len()).sum()
    }

    /// Number of entries beyond one per continent.
    pub fn excess(&self) -> usize {
        self.total_entries() - self.entries.len()
    }
}

impl fmt::Display for DriftTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .entries
            .iter()
            .map(|s| format!("{{{}}}", s.iter().map(|y| y.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", body.join(" "))
    }
}

/// One face of the complex: a limit-semistandard drift tableau together with
/// its vertex set (the removed entries) and interiority.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub tableau: DriftTableau,
    /// Bitmask over the complex's vertex list: removed non-phantom entries.
    pub mask: u64,
    /// Interior faces are exactly the semistandard tableaux (every
    /// singleton selection is a drift configuration).
    pub interior: bool,
}

/// The drift-tableau complex of a pair (v, w).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableauComplex {
    num_continents: usize,
    /// E(b) per continent: all drifts continent b takes across
    /// configurations; the union of all ordinary semistandard tableaux.
    empty_face: Vec<Vec<usize>>,
    /// (continent index, removed drift value); only for |E(b)| > 1.
    vertices: Vec<(usize, usize)>,
    faces: Vec<Face>,
}

/// Homeomorphism type, with the dimension of the complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Ball(i64),
    Sphere(i64),
}

impl TableauComplex {
    pub fn num_continents(&self) -> usize {
        self.num_continents
    }

    pub fn empty_face_tableau(&self) -> DriftTableau {
        DriftTableau { entries: self.empty_face.clone() }
    }

    pub fn vertices(&self) -> &[(usize, usize)] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Index of the vertex (continent, removed value), if present.
    pub fn vertex_index(&self, continent: usize, value: usize) -> Option<usize> {
        self.vertices.iter().position(|&v| v == (continent, value))
    }

    /// Inclusion-maximal faces.
    pub fn facets(&self) -> Vec<&Face> {
        self.faces
            .iter()
            .filter(|f| {
                !self
                    .faces
                    .iter()
                    .any(|g| g.mask != f.mask && g.mask & f.mask == f.mask)
            })
            .collect()
    }

    /// Largest face dimension; -1 when only the empty face exists.
    pub fn dimension(&self) -> i64 {
        self.faces
            .iter()
            .map(|f| f.mask.count_ones() as i64 - 1)
            .max()
            .expect("a complex always has the empty face")
    }

    /// χ = Σ (-1)^{dim F} over nonempty faces.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .filter(|f| f.mask != 0)
            .map(|f| if f.mask.count_ones() % 2 == 1 { 1 } else { -1 })
            .sum()
    }

    pub fn has_exterior_faces(&self) -> bool {
        self.faces.iter().any(|f| !f.interior)
    }

    /// Ball or sphere, decided by the presence of exterior faces; the Euler
    /// characteristic is cross-checked against the classification.
    pub fn classify(&self) -> Result<Classification> {
        let d = self.dimension();
        let chi = self.euler_characteristic();
        if self.has_exterior_faces() {
            if chi != 1 {
                return Err(Error::ClassificationMismatch);
            }
            Ok(Classification::Ball(d))
        } else {
            let expected = if d < 0 {
                0 // the (-1)-sphere: only the empty face
            } else if d % 2 == 0 {
                2
            } else {
                0
            };
            if chi != expected {
                return Err(Error::ClassificationMismatch);
            }
            Ok(Classification::Sphere(d))
        }
    }
}

/// Build the complex of a pair: faces are all limit-semistandard set-valued
/// drift tableaux (at least one selection is a drift configuration), with
/// face containment by reverse tableau containment.
pub fn build_drift_complex(v: &Permutation, w: &Permutation) -> Result<TableauComplex> {
    let configs = enumerate_drift(v, w)?;
    let k = configs[0].drifts.len();
    if k == 0 && crate::diagram::shape(w).is_empty() {
        return Err(Error::EmptyShape);
    }
    let config_set: HashSet<Vec<usize>> = configs.iter().map(|c| c.drifts.clone()).collect();
    let empty_face: Vec<Vec<usize>> = (0..k)
        .map(|b| {
            let vals: BTreeSet<usize> = configs.iter().map(|c| c.drifts[b]).collect();
            vals.into_iter().collect()
        })
        .collect();
    let mut vertices: Vec<(usize, usize)> = Vec::new();
    for (b, e) in empty_face.iter().enumerate() {
        if e.len() > 1 {
            vertices.extend(e.iter().map(|&y| (b, y)));
        }
    }
    assert!(vertices.len() <= 64, "vertex masks are limited to 64 bits");

    // enumerate candidate tableaux: one nonempty subset of E(b) per continent
    let mut faces = Vec::new();
    let mut chosen: Vec<Vec<usize>> = vec![Vec::new(); k];
    build(
        &empty_face,
        &config_set,
        &vertices,
        0,
        &mut chosen,
        &mut faces,
    );
    faces.sort_by(|a, b| a.tableau.cmp(&b.tableau));

    // facets are exactly the ordinary tableaux, one per configuration
    let ordinary = faces
        .iter()
        .filter(|f| f.tableau.is_ordinary())
        .inspect(|f| assert!(f.interior, "ordinary faces are interior"))
        .count();
    assert_eq!(ordinary, configs.len(), "facets must biject with drift configurations");

    return Ok(TableauComplex { num_continents: k, empty_face, vertices, faces });

    fn build(
        empty_face: &[Vec<usize>],
        config_set: &HashSet<Vec<usize>>,
        vertices: &[(usize, usize)],
        b: usize,
        chosen: &mut Vec<Vec<usize>>,
        faces: &mut Vec<Face>,
    ) {
        if b == empty_face.len() {
            // count valid singleton selections of the candidate tableau
            let total: usize = chosen.iter().map(|s| s.len()).product();
            let mut valid = 0usize;
            let mut selection = vec![0usize; chosen.len()];
            count_valid(chosen, config_set, 0, &mut selection, &mut valid);
            if valid == 0 {
                return; // not limit semistandard
            }
            let mut mask = 0u64;
            for (i, &(c, y)) in vertices.iter().enumerate() {
                if !chosen[c].contains(&y) {
                    mask |= 1 << i;
                }
            }
            faces.push(Face {
                tableau: DriftTableau { entries: chosen.clone() },
                mask,
                interior: valid == total,
            });
            return;
        }
        let e = &empty_face[b];
        for subset in 1u32..(1 << e.len()) {
            chosen[b] = (0..e.len()).filter(|i| subset >> i & 1 == 1).map(|i| e[i]).collect();
            build(empty_face, config_set, vertices, b + 1, chosen, faces);
        }
        chosen[b] = Vec::new();
    }

    fn count_valid(
        chosen: &[Vec<usize>],
        config_set: &HashSet<Vec<usize>>,
        b: usize,
        selection: &mut Vec<usize>,
        valid: &mut usize,
    ) {
        if b == chosen.len() {
            if config_set.contains(selection) {
                *valid += 1;
            }
            return;
        }
        for &y in &chosen[b] {
            selection[b] = y;
            count_valid(chosen, config_set, b + 1, selection, valid);
        }
    }
}

/// A multilinear integer polynomial in the vertex variables t_i, stored as
/// bitmask-monomial → coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<u64, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = MultiPoly::default();
        if !c.is_zero() {
            p.terms.insert(0, c);
        }
        p
    }

    pub fn one() -> Self {
        MultiPoly::constant(BigInt::one())
    }

    /// The variable t_i.
    pub fn var(i: usize) -> Self {
        let mut p = MultiPoly::default();
        p.terms.insert(1 << i, BigInt::one());
        p
    }

    /// 1 - t_i.
    pub fn one_minus_var(i: usize) -> Self {
        let mut p = MultiPoly::one();
        p.terms.insert(1 << i, BigInt::from(-1));
        p
    }

    pub fn terms(&self) -> &BTreeMap<u64, BigInt> {
        &self.terms
    }

    pub fn add(&self, rhs: &MultiPoly) -> MultiPoly {
        let mut terms = self.terms.clone();
        for (&m, c) in &rhs.terms {
            let entry = terms.entry(m).or_insert_with(BigInt::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly { terms }
    }

    pub fn mul(&self, rhs: &MultiPoly) -> MultiPoly {
        let mut terms: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (&m1, c1) in &self.terms {
            for (&m2, c2) in &rhs.terms {
                assert_eq!(m1 & m2, 0, "product is no longer multilinear");
                let entry = terms.entry(m1 | m2).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly { terms }
    }

    /// Evaluate with every variable set to the same value.
    pub fn eval_uniform(&self, t: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(m, c)| c * t.pow(m.count_ones()))
            .sum()
    }
}

/// Stanley-Reisner K-polynomial of the faces over the complex's vertex set:
/// K = Σ_{F} Π_{i∈F} t_i Π_{i∉F} (1 - t_i).
pub fn k_polynomial(c: &TableauComplex) -> MultiPoly {
    let n = c.vertices.len();
    let mut acc = MultiPoly::zero();
    for face in &c.faces {
        let mut term = MultiPoly::one();
        for i in 0..n {
            let factor = if face.mask >> i & 1 == 1 {
                MultiPoly::var(i)
            } else {
                MultiPoly::one_minus_var(i)
            };
            term = term.mul(&factor);
        }
        acc = acc.add(&term);
    }
    acc
}

/// Split the complex at a vertex: the deletion keeps the faces omitting the
/// vertex, the star keeps the faces F with F ∪ {vertex} still a face. Both
/// keep the parent's vertex list, so K-polynomials line up termwise and
/// satisfy K(c) = K(del) + t · K(star): faces containing the vertex are in
/// bijection with star faces, and summing a star face G with G ∪ {vertex}
/// cancels the (1 - t) factor.
pub fn vertex_decompose(
    c: &TableauComplex,
    vertex: usize,
) -> Result<(TableauComplex, TableauComplex)> {
    if vertex >= c.vertices.len() {
        return Err(Error::NoSuchVertex);
    }
    let bit = 1u64 << vertex;
    let masks: HashSet<u64> = c.faces.iter().map(|f| f.mask).collect();
    let del = TableauComplex {
        num_continents: c.num_continents,
        empty_face: c.empty_face.clone(),
        vertices: c.vertices.clone(),
        faces: c.faces.iter().filter(|f| f.mask & bit == 0).cloned().collect(),
    };
    let star = TableauComplex {
        num_continents: c.num_continents,
        empty_face: c.empty_face.clone(),
        vertices: c.vertices.clone(),
        faces: c.faces.iter().filter(|f| masks.contains(&(f.mask | bit))).cloned().collect(),
    };
    Ok((del, star))
}

/// The hybrid polynomial at β = -1 with one formal variable per vertex:
/// Σ over semistandard set-valued tableaux D of
/// (-1)^{excess(D)} Π_{b, y ∈ D(b)} (1 - t_{(b↛y)}), entries of single-value
/// continents contributing no factor. Equals the Stanley-Reisner
/// K-polynomial of the complex.
pub fn hybrid_k_polynomial(v: &Permutation, w: &Permutation) -> Result<MultiPoly> {
    let c = build_drift_complex(v, w)?;
    let mut acc = MultiPoly::zero();
    for face in c.faces.iter().filter(|f| f.interior) {
        let sign = if face.tableau.excess() % 2 == 0 { 1 } else { -1 };
        let mut term = MultiPoly::constant(BigInt::from(sign));
        for (b, entries) in face.tableau.entries.iter().enumerate() {
            for &y in entries {
                if let Some(i) = c.vertex_index(b, y) {
                    term = term.mul(&MultiPoly::one_minus_var(i));
                }
            }
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// The hybrid polynomial at β = 0 with t_{(b↛y)} ↦ 1 - x_y: the sum of
/// x^D over ordinary semistandard drift tableaux, returned as exponent
/// vector (counts of each drift value 0, 1, ...) → coefficient.
pub fn hybrid_monomial_sum(
    v: &Permutation,
    w: &Permutation,
) -> Result<BTreeMap<Vec<usize>, BigInt>> {
    let configs = enumerate_drift(v, w)?;
    if crate::diagram::shape(w).is_empty() {
        return Err(Error::EmptyShape);
    }
    let width = 1 + configs.iter().flat_map(|c| c.drifts.iter().copied()).max().unwrap_or(0);
    let mut out: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
    for config in &configs {
        let mut exps = vec![0usize; width];
        for &d in &config.drifts {
            exps[d] += 1;
        }
        let entry = out.entry(exps).or_insert_with(BigInt::zero);
        *entry += 1;
    }
    Ok(out)
}

/// The hybrid polynomial at β = 0, t_{(b↛y)} ↦ 1 - q^y: the principal
/// specialization Σ q^{wt(D)} over drift configurations, which equals
/// P_{v,w}(q).
pub fn hybrid_principal(v: &Permutation, w: &Permutation) -> Result<IntPoly> {
    if crate::diagram::shape(w).is_empty() {
        return Err(Error::EmptyShape);
    }
    Ok(IntPoly::from_weights(
        enumerate_drift(v, w)?.iter().map(|c| c.weight()),
    ))
}

/// The hybrid polynomial with numeric β and every vertex variable set to the
/// same value t (with 0^0 = 1): Σ β^{excess(D)} (1-t)^{|D|} over
/// semistandard set-valued drift tableaux.
pub fn hybrid_scalar(
    v: &Permutation,
    w: &Permutation,
    beta: &BigInt,
    t: &BigInt,
) -> Result<BigInt> {
    let c = build_drift_complex(v, w)?;
    let one_minus_t = BigInt::one() - t;
    Ok(c.faces
        .iter()
        .filter(|f| f.interior)
        .map(|f| {
            beta.pow(f.tableau.excess() as u32) * one_minus_t.pow(f.tableau.total_entries() as u32)
        })
        .sum())
}

//! Exhaustive verification scan over all covexillary pairs of a rank.

use anyhow::{anyhow, Result};
use driftkl::complex::build_drift_complex;
use driftkl::diagram::shape;
use driftkl::drift::{
    enumerate_drift, enumerate_labelings, labeling_weight, lascoux_tree, q_polynomial,
    special_boxes_greedy, special_boxes_parens,
};
use driftkl::hecke::KLTable;
use driftkl::poly::htilde_determinant;
use driftkl::tableaux::{
    augment_to_image, depth, enumerate_flagged_ssyt, h_polynomial,
    h_polynomial_setvalued_oracle, is_in_psi_image, psi,
};
use driftkl::{IntPoly, Permutation};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Instant;

/// Set-valued and face enumerations grow exponentially with the shape, so
/// the corresponding checks skip shapes above this size.
const MAX_ENUMERATION_BOXES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    PeqQ,
    PleqH,
    DegEq,
    Semicontinuity,
    HoracleEq,
    HtildeEq,
    MultEq,
    SpecialBoxAgree,
    PsiBijection,
    ComplexFacets,
    CoeffBound,
    Symmetry,
    UnimodalityReport,
}

pub const ALL_CHECKS: [Check; 13] = [
    Check::PeqQ,
    Check::PleqH,
    Check::DegEq,
    Check::Semicontinuity,
    Check::HoracleEq,
    Check::HtildeEq,
    Check::MultEq,
    Check::SpecialBoxAgree,
    Check::PsiBijection,
    Check::ComplexFacets,
    Check::CoeffBound,
    Check::Symmetry,
    Check::UnimodalityReport,
];

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::PeqQ => "PeqQ",
            Check::PleqH => "PleqH",
            Check::DegEq => "degEq",
            Check::Semicontinuity => "semicontinuity",
            Check::HoracleEq => "HoracleEq",
            Check::HtildeEq => "HtildeEq",
            Check::MultEq => "multEq",
            Check::SpecialBoxAgree => "specialBoxAgree",
            Check::PsiBijection => "psiBijection",
            Check::ComplexFacets => "complexFacets",
            Check::CoeffBound => "coeffBound",
            Check::Symmetry => "symmetry",
            Check::UnimodalityReport => "unimodalityReport",
        }
    }
}

pub fn parse_checks(text: Option<&str>) -> Result<Vec<Check>> {
    let Some(text) = text else {
        return Ok(ALL_CHECKS.to_vec());
    };
    text.split(',')
        .map(|name| {
            ALL_CHECKS
                .iter()
                .copied()
                .find(|c| c.name() == name.trim())
                .ok_or_else(|| anyhow!("unknown check {name:?}"))
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub check: String,
    pub v: String,
    pub w: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct CheckSummary {
    pub passes: u64,
    pub skipped: u64,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Serialize)]
pub struct ScanReport {
    pub n: usize,
    pub checks: Vec<String>,
    pub jobs: usize,
    pub covexillary_w: usize,
    pub pairs: usize,
    pub summary: BTreeMap<String, CheckSummary>,
    /// Informational: pairs whose P has non-unimodal coefficients.
    pub non_unimodal: Vec<Violation>,
    pub elapsed_ms: u128,
}

impl ScanReport {
    pub fn total_violations(&self) -> usize {
        self.summary.values().map(|s| s.violations.len()).sum()
    }
}

#[derive(Debug, Default)]
struct Tally {
    passes: BTreeMap<Check, u64>,
    skipped: BTreeMap<Check, u64>,
    violations: Vec<Violation>,
    non_unimodal: Vec<Violation>,
    pairs: usize,
}

impl Tally {
    fn pass(&mut self, check: Check) {
        *self.passes.entry(check).or_default() += 1;
    }

    fn skip(&mut self, check: Check) {
        *self.skipped.entry(check).or_default() += 1;
    }

    fn fail(&mut self, check: Check, v: &Permutation, w: &Permutation, detail: String) {
        self.violations.push(Violation {
            check: check.name().to_string(),
            v: v.to_string(),
            w: w.to_string(),
            detail,
        });
    }

    fn record(&mut self, check: Check, ok: bool, v: &Permutation, w: &Permutation, detail: impl FnOnce() -> String) {
        if ok {
            self.pass(check);
        } else {
            self.fail(check, v, w, detail());
        }
    }
}

pub fn run_scan(n: usize, checks: &[Check], jobs: usize) -> Result<ScanReport> {
    let start = Instant::now();
    let all: Vec<Permutation> = Permutation::all(n);
    let covexillary: Vec<Permutation> =
        all.iter().filter(|w| w.is_covexillary()).cloned().collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| anyhow!("thread pool: {e}"))?;
    let tallies: Vec<Tally> = pool.install(|| {
        covexillary
            .par_iter()
            .map_init(KLTable::new, |table, w| scan_w(w, &all, checks, table))
            .collect()
    });
    let mut summary: BTreeMap<String, CheckSummary> = checks
        .iter()
        .map(|c| (c.name().to_string(), CheckSummary::default()))
        .collect();
    let mut non_unimodal = Vec::new();
    let mut pairs = 0;
    for tally in tallies {
        pairs += tally.pairs;
        for (check, count) in tally.passes {
            summary.get_mut(check.name()).unwrap().passes += count;
        }
        for (check, count) in tally.skipped {
            summary.get_mut(check.name()).unwrap().skipped += count;
        }
        for violation in tally.violations {
            summary.get_mut(&violation.check).unwrap().violations.push(violation);
        }
        non_unimodal.extend(tally.non_unimodal);
    }
    Ok(ScanReport {
        n,
        checks: checks.iter().map(|c| c.name().to_string()).collect(),
        jobs,
        covexillary_w: covexillary.len(),
        pairs,
        summary,
        non_unimodal,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn scan_w(w: &Permutation, all: &[Permutation], checks: &[Check], table: &mut KLTable) -> Tally {
    let mut tally = Tally::default();
    let has = |c: Check| checks.contains(&c);
    let n = w.n();
    let lambda = shape(w);
    let small_shape = lambda.size() <= MAX_ENUMERATION_BOXES;

    if has(Check::SpecialBoxAgree) {
        if lambda.is_empty() {
            tally.skip(Check::SpecialBoxAgree);
        } else {
            let ok = special_boxes_greedy(&lambda)
                .map(|g| g == special_boxes_parens(&lambda))
                .unwrap_or(false);
            tally.record(Check::SpecialBoxAgree, ok, w, w, || {
                format!("greedy and parenthesis special boxes differ on λ = {lambda}")
            });
        }
    }

    let vs: Vec<&Permutation> = all
        .iter()
        .filter(|v| v.bruhat_leq(w).expect("same rank"))
        .collect();
    tally.pairs = vs.len();

    // H per v, retained for the semicontinuity chain check
    let mut h_cache: Vec<Option<IntPoly>> = vec![None; vs.len()];
    let need_h = has(Check::PleqH)
        || has(Check::DegEq)
        || has(Check::Semicontinuity)
        || has(Check::HoracleEq)
        || has(Check::MultEq);

    for (vi, v) in vs.iter().enumerate() {
        let p = table.kl_polynomial(v, w).expect("comparable pair");
        let h = if need_h {
            let h = h_polynomial(v, w).expect("valid covexillary pair");
            h_cache[vi] = Some(h.clone());
            Some(h)
        } else {
            None
        };

        if has(Check::PeqQ) {
            let q = q_polynomial(v, w).expect("valid covexillary pair");
            tally.record(Check::PeqQ, p == q, v, w, || format!("P = {p} but Q = {q}"));
        }
        if has(Check::PleqH) {
            let h = h.as_ref().unwrap();
            tally.record(Check::PleqH, p.coefficientwise_leq(h), v, w, || {
                format!("P = {p} exceeds H = {h}")
            });
        }
        if has(Check::DegEq) {
            let h = h.as_ref().unwrap();
            tally.record(Check::DegEq, p.degree() == h.degree(), v, w, || {
                format!("deg P = {:?} but deg H = {:?}", p.degree(), h.degree())
            });
        }
        if has(Check::HoracleEq) {
            if small_shape {
                let h = h.as_ref().unwrap();
                let oracle = h_polynomial_setvalued_oracle(v, w).expect("valid pair");
                tally.record(Check::HoracleEq, *h == oracle, v, w, || {
                    format!("H = {h} but the set-valued oracle gives {oracle}")
                });
            } else {
                tally.skip(Check::HoracleEq);
            }
        }
        if has(Check::HtildeEq) {
            let country = driftkl::drift::country_drift_series(v, w).expect("valid pair");
            let htilde = htilde_determinant(v, w).expect("valid pair");
            tally.record(Check::HtildeEq, country == htilde, v, w, || {
                format!("country series {country} but determinant {htilde}")
            });
        }
        if has(Check::MultEq) {
            let h1 = h_polynomial(v, w).expect("valid pair").eval_at_one();
            let ht1 = htilde_determinant(v, w).expect("valid pair").eval_at_one();
            let country1 =
                driftkl::drift::country_drift_series(v, w).expect("valid pair").eval_at_one();
            let ssyt = if lambda.is_empty() {
                1usize
            } else {
                let flags = driftkl::diagram::flag_vector(v, w).expect("valid pair");
                enumerate_flagged_ssyt(&lambda, &flags).expect("valid flags").len()
            };
            let ok = h1 == ht1 && h1 == country1 && h1 == ssyt.into();
            tally.record(Check::MultEq, ok, v, w, || {
                format!("H(1) = {h1}, H̃(1) = {ht1}, country(1) = {country1}, #SSYT = {ssyt}")
            });
        }
        if has(Check::PsiBijection) {
            tally.record(Check::PsiBijection, psi_bijection_holds(v, w), v, w, || {
                "drift-to-tableau bijection checks failed".to_string()
            });
        }
        if has(Check::ComplexFacets) {
            if lambda.is_empty() || !small_shape {
                tally.skip(Check::ComplexFacets);
            } else {
                let configs = enumerate_drift(v, w).expect("valid pair").len();
                let c = build_drift_complex(v, w).expect("valid pair");
                let ok = c.facets().len() == configs && c.classify().is_ok();
                tally.record(Check::ComplexFacets, ok, v, w, || {
                    format!(
                        "facets = {}, configurations = {configs}, classification = {:?}",
                        c.facets().len(),
                        c.classify()
                    )
                });
            }
        }
        if has(Check::CoeffBound) {
            let k = if lambda.is_empty() {
                0
            } else {
                special_boxes_parens(&lambda).boxes.len()
            };
            let m = (n - k + 1) / 2;
            let bound = IntPoly::q_integer(m).pow(k);
            tally.record(Check::CoeffBound, p.coefficientwise_leq(&bound), v, w, || {
                format!("P = {p} exceeds ([{m}]_q)^{k} = {bound}")
            });
        }
        if has(Check::Symmetry) {
            let w0 = Permutation::longest_element(n);
            let conj = |u: &Permutation| {
                w0.compose(u).and_then(|x| x.compose(&w0)).expect("same rank")
            };
            let q = q_polynomial(v, w).expect("valid pair");
            let q_conj = q_polynomial(&conj(v), &conj(w)).expect("conjugate pair");
            let q_inv = q_polynomial(&v.inverse(), &w.inverse()).expect("inverse pair");
            tally.record(Check::Symmetry, q == q_conj && q == q_inv, v, w, || {
                format!("Q = {q}, conjugate {q_conj}, inverse {q_inv}")
            });
        }
        if has(Check::UnimodalityReport) {
            tally.pass(Check::UnimodalityReport);
            if !p.is_unimodal() {
                tally.non_unimodal.push(Violation {
                    check: Check::UnimodalityReport.name().to_string(),
                    v: v.to_string(),
                    w: w.to_string(),
                    detail: format!("P = {p}"),
                });
            }
        }
    }

    if has(Check::Semicontinuity) {
        for (i, vhi) in vs.iter().enumerate() {
            for (j, vlo) in vs.iter().enumerate() {
                if i == j || !vlo.bruhat_leq(vhi).expect("same rank") {
                    continue;
                }
                let (hhi, hlo) = (h_cache[i].as_ref().unwrap(), h_cache[j].as_ref().unwrap());
                tally.record(
                    Check::Semicontinuity,
                    hhi.coefficientwise_leq(hlo),
                    vhi,
                    w,
                    || format!("H_{{{vhi},{w}}} = {hhi} exceeds H_{{{vlo},{w}}} = {hlo}"),
                );
            }
        }
    }

    tally
}

/// All per-pair claims about the drift-to-tableau map: weights match depths,
/// the map is injective, its image is cut out by the prescription-and-order
/// predicate, label multisets match drift weights, and augmentation lands in
/// the image without decreasing depth.
fn psi_bijection_holds(v: &Permutation, w: &Permutation) -> bool {
    let configs = enumerate_drift(v, w).expect("valid pair");
    let lambda = shape(w);
    if lambda.is_empty() {
        return configs.len() == 1;
    }
    let flags = driftkl::diagram::flag_vector(v, w).expect("valid pair");
    let mut images = Vec::new();
    for config in &configs {
        let t = match psi(config, v, w) {
            Ok(t) => t,
            Err(_) => return false,
        };
        if depth(&t) != config.weight() {
            return false;
        }
        if is_in_psi_image(&t, v, w) != Ok(true) {
            return false;
        }
        images.push(t);
    }
    images.sort();
    images.dedup();
    if images.len() != configs.len() {
        return false;
    }
    // the predicate accepts exactly the images, and augmentation repairs
    // every flagged tableau into the image without lowering its depth
    let mut in_image = 0usize;
    for t in enumerate_flagged_ssyt(&lambda, &flags).expect("valid flags") {
        if is_in_psi_image(&t, v, w) == Ok(true) {
            in_image += 1;
            if images.binary_search(&t).is_err() {
                return false;
            }
        }
        let fixed = match augment_to_image(&t, v, w) {
            Ok(fixed) => fixed,
            Err(_) => return false,
        };
        if is_in_psi_image(&fixed, v, w) != Ok(true) || depth(&fixed) < depth(&t) {
            return false;
        }
    }
    if in_image != configs.len() {
        return false;
    }
    // edge labelings of the continent tree carry the same weight multiset
    let tree = lascoux_tree(v, w).expect("valid pair");
    let mut label_weights: Vec<usize> = enumerate_labelings(&tree)
        .iter()
        .map(|l| labeling_weight(l))
        .collect();
    let mut config_weights: Vec<usize> = configs.iter().map(|c| c.weight()).collect();
    label_weights.sort_unstable();
    config_weights.sort_unstable();
    label_weights == config_weights
}

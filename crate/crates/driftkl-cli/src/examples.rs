//! Reproduces the worked examples and diffs the results against their
//! expected values. Returns true when everything matches.

use driftkl::complex::{build_drift_complex, Classification};
use driftkl::diagram::{flag_vector, shape};
use driftkl::drift::{enumerate_drift, q_polynomial};
use driftkl::hecke::KLTable;
use driftkl::poly::htilde_determinant;
use driftkl::tableaux::{
    enumerate_flagged_ssyt, h_polynomial, h_polynomial_setvalued_oracle, psi, saturate,
    FlaggedTableau,
};
use driftkl::{IntPoly, Permutation};

fn perm(values: &[usize]) -> Permutation {
    Permutation::new(values.to_vec()).expect("valid example permutation")
}

struct Checker {
    failures: usize,
}

impl Checker {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, got: T, expected: T) {
        if got == expected {
            println!("ok   {name}: {expected:?}");
        } else {
            println!("FAIL {name}: expected {expected:?}, got {got:?}");
            self.failures += 1;
        }
    }
}

pub fn run() -> bool {
    let mut check = Checker { failures: 0 };
    let id5 = Permutation::identity(5);
    let w5 = perm(&[5, 2, 3, 4, 1]);

    // the S_5 pair: KL polynomial, drift rule, and both h-polynomials
    let p = KLTable::new().kl_polynomial(&id5, &w5).unwrap();
    check.eq("P_{12345,52341}", p.to_i64_vec(), vec![1, 2, 1]);
    check.eq(
        "Q_{12345,52341}",
        q_polynomial(&id5, &w5).unwrap().to_i64_vec(),
        vec![1, 2, 1],
    );
    check.eq(
        "#drift(12345,52341)",
        enumerate_drift(&id5, &w5).unwrap().len(),
        4,
    );
    check.eq(
        "H_{12345,52341}",
        h_polynomial(&id5, &w5).unwrap().to_i64_vec(),
        vec![1, 3, 1],
    );
    check.eq(
        "H oracle agrees",
        h_polynomial_setvalued_oracle(&id5, &w5).unwrap(),
        h_polynomial(&id5, &w5).unwrap(),
    );
    let lambda = shape(&w5);
    let flags = flag_vector(&id5, &w5).unwrap();
    let excesses: Vec<usize> = enumerate_flagged_ssyt(&lambda, &flags)
        .unwrap()
        .iter()
        .map(|t| saturate(t).excess())
        .collect();
    check.eq("saturation excesses", excesses, vec![0, 1, 1, 2, 1]);
    check.eq(
        "mult = H(1)",
        h_polynomial(&id5, &w5).unwrap().eval_at_one(),
        5.into(),
    );
    check.eq(
        "Htilde_{12345,52341}",
        htilde_determinant(&id5, &w5).unwrap().to_i64_vec(),
        vec![1, 2, 1, 1],
    );

    // P_{13425,34512}: degree-1 polynomial with value 3 at q = 1
    let p2 = KLTable::new()
        .kl_polynomial(&perm(&[1, 3, 4, 2, 5]), &perm(&[3, 4, 5, 1, 2]))
        .unwrap();
    check.eq("P_{13425,34512}", p2.to_i64_vec(), vec![1, 2]);
    check.eq("P_{13425,34512}(1)", p2.eval_at_one(), 3.into());

    // the S_10 pair with λ = (4,4,3)
    let w10 = perm(&[10, 9, 5, 4, 3, 8, 2, 7, 6, 1]);
    let v10 = perm(&[2, 3, 4, 6, 5, 1, 7, 8, 9, 10]);
    check.eq("λ of the S_10 pair", shape(&w10).rows().to_vec(), vec![4, 4, 3]);
    let configs10 = enumerate_drift(&v10, &w10).unwrap();
    check.eq("#drift for the S_10 pair", configs10.len(), 5);
    check.eq(
        "Q for the S_10 pair",
        q_polynomial(&v10, &w10).unwrap().to_i64_vec(),
        vec![1, 2, 1, 1],
    );
    let tab = |rows: &[&[usize]]| FlaggedTableau::new(rows.iter().map(|r| r.to_vec()).collect());
    let mut images: Vec<FlaggedTableau> = configs10
        .iter()
        .map(|d| psi(d, &v10, &w10).unwrap())
        .collect();
    images.sort();
    let mut expected = vec![
        tab(&[&[1, 1, 1, 1], &[2, 2, 2, 2], &[3, 3, 3]]),
        tab(&[&[1, 1, 1, 1], &[2, 2, 2, 2], &[3, 3, 4]]),
        tab(&[&[1, 1, 1, 2], &[2, 2, 2, 3], &[3, 3, 3]]),
        tab(&[&[1, 1, 1, 2], &[2, 2, 3, 3], &[3, 3, 4]]),
        tab(&[&[1, 1, 1, 2], &[2, 2, 3, 3], &[3, 4, 4]]),
    ];
    expected.sort();
    check.eq("Ψ-images for the S_10 pair", images, expected);
    let c10 = build_drift_complex(&v10, &w10).unwrap();
    check.eq("facets of the S_10 complex", c10.facets().len(), 5);
    check.eq(
        "S_10 complex classification",
        c10.classify().unwrap(),
        Classification::Ball(2),
    );

    // the 4-cycle complex of the S_5 pair
    let c5 = build_drift_complex(&id5, &w5).unwrap();
    check.eq("vertices of the S_5 complex", c5.vertices().len(), 4);
    check.eq("facets of the S_5 complex", c5.facets().len(), 4);
    check.eq("χ of the S_5 complex", c5.euler_characteristic(), 0);
    check.eq(
        "S_5 complex classification",
        c5.classify().unwrap(),
        Classification::Sphere(1),
    );

    // smooth point: every polynomial collapses to 1
    check.eq(
        "P_{w,w}",
        KLTable::new().kl_polynomial(&w5, &w5).unwrap(),
        IntPoly::one(),
    );
    check.eq("H_{w,w}", h_polynomial(&w5, &w5).unwrap(), IntPoly::one());
    check.eq("Htilde_{w,w}", htilde_determinant(&w5, &w5).unwrap(), IntPoly::one());

    if check.failures == 0 {
        println!("all examples reproduced");
        true
    } else {
        println!("{} example(s) failed", check.failures);
        false
    }
}

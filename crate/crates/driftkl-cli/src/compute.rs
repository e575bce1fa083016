//! Per-pair computation and report rendering.

use anyhow::{anyhow, bail, Result};
use driftkl::complex::{build_drift_complex, Classification};
use driftkl::drift::{lascoux_tree, q_polynomial};
use driftkl::hecke::KLTable;
use driftkl::poly::htilde_determinant;
use driftkl::tableaux::{h_polynomial, h_polynomial_setvalued_oracle};
use driftkl::{Error, Permutation};
use serde::Serialize;
use std::fmt::Write as _;

use crate::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    P,
    Q,
    H,
    Horacle,
    Htilde,
    Mult,
    Complex,
    Tree,
}

pub fn parse_quantities(text: Option<&str>) -> Result<Vec<Quantity>> {
    let text = text.unwrap_or("P,Q,H,Horacle,Htilde,mult");
    text.split(',')
        .map(|q| match q.trim() {
            "P" => Ok(Quantity::P),
            "Q" => Ok(Quantity::Q),
            "H" => Ok(Quantity::H),
            "Horacle" => Ok(Quantity::Horacle),
            "Htilde" => Ok(Quantity::Htilde),
            "mult" => Ok(Quantity::Mult),
            "complex" => Ok(Quantity::Complex),
            "tree" => Ok(Quantity::Tree),
            other => Err(anyhow!("unknown quantity {other:?}")),
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct ComplexSummary {
    pub vertices: usize,
    pub faces: usize,
    pub facets: usize,
    pub dimension: i64,
    pub euler_characteristic: i64,
    pub classification: String,
}

#[derive(Debug, Serialize)]
pub struct TreeNodeSummary {
    pub index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub special_box: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leaf_bound: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub v: String,
    pub w: String,
    #[serde(rename = "P", skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<i64>>,
    #[serde(rename = "Q", skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<i64>>,
    #[serde(rename = "H", skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<i64>>,
    #[serde(rename = "Horacle", skip_serializing_if = "Option::is_none")]
    pub horacle: Option<Vec<i64>>,
    #[serde(rename = "Htilde", skip_serializing_if = "Option::is_none")]
    pub htilde: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mult: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree: Option<Vec<TreeNodeSummary>>,
}

fn friendly(e: Error) -> anyhow::Error {
    match e {
        Error::NotCovexillary => anyhow!(
            "w is not covexillary (it contains a 3412 pattern); \
             only the quantity P is available for such w"
        ),
        other => anyhow!(other),
    }
}

pub fn compute(v: &Permutation, w: &Permutation, quantities: &[Quantity]) -> Result<Report> {
    let mut report = Report {
        v: v.to_string(),
        w: w.to_string(),
        p: None,
        q: None,
        h: None,
        horacle: None,
        htilde: None,
        mult: None,
        complex: None,
        tree: None,
    };
    for &quantity in quantities {
        match quantity {
            Quantity::P => {
                let p = KLTable::new().kl_polynomial(v, w).map_err(friendly)?;
                report.p = Some(p.to_i64_vec());
            }
            Quantity::Q => {
                report.q = Some(q_polynomial(v, w).map_err(friendly)?.to_i64_vec());
            }
            Quantity::H => {
                report.h = Some(h_polynomial(v, w).map_err(friendly)?.to_i64_vec());
            }
            Quantity::Horacle => {
                report.horacle =
                    Some(h_polynomial_setvalued_oracle(v, w).map_err(friendly)?.to_i64_vec());
            }
            Quantity::Htilde => {
                report.htilde = Some(htilde_determinant(v, w).map_err(friendly)?.to_i64_vec());
            }
            Quantity::Mult => {
                let h = h_polynomial(v, w).map_err(friendly)?;
                report.mult = Some(
                    i64::try_from(&h.eval_at_one()).map_err(|_| anyhow!("multiplicity exceeds i64"))?,
                );
            }
            Quantity::Complex => {
                let c = build_drift_complex(v, w).map_err(friendly)?;
                let classification = match c.classify().map_err(friendly)? {
                    Classification::Ball(d) => format!("{d}-ball"),
                    Classification::Sphere(d) => format!("{d}-sphere"),
                };
                report.complex = Some(ComplexSummary {
                    vertices: c.vertices().len(),
                    faces: c.faces().len(),
                    facets: c.facets().len(),
                    dimension: c.dimension(),
                    euler_characteristic: c.euler_characteristic(),
                    classification,
                });
            }
            Quantity::Tree => {
                let tree = lascoux_tree(v, w).map_err(friendly)?;
                report.tree = Some(
                    tree.nodes
                        .iter()
                        .enumerate()
                        .map(|(i, node)| TreeNodeSummary {
                            index: i,
                            special_box: node.special_box.map(|b| [b.row, b.col]),
                            parent: node.parent,
                            children: node.children.clone(),
                            leaf_bound: node.leaf_bound,
                        })
                        .collect(),
                );
            }
        }
    }
    Ok(report)
}

pub fn render(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string(report)?),
        Format::Csv => render_csv(report),
        Format::Latex => render_latex(report),
    }
}

fn csv_poly(out: &mut String, name: &str, coeffs: &Option<Vec<i64>>) {
    if let Some(c) = coeffs {
        let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{name},{}", body.join(","));
    }
}

fn render_csv(report: &Report) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "v,{}", report.v)?;
    writeln!(out, "w,{}", report.w)?;
    csv_poly(&mut out, "P", &report.p);
    csv_poly(&mut out, "Q", &report.q);
    csv_poly(&mut out, "H", &report.h);
    csv_poly(&mut out, "Horacle", &report.horacle);
    csv_poly(&mut out, "Htilde", &report.htilde);
    if let Some(m) = report.mult {
        writeln!(out, "mult,{m}")?;
    }
    if let Some(c) = &report.complex {
        writeln!(out, "complex.vertices,{}", c.vertices)?;
        writeln!(out, "complex.faces,{}", c.faces)?;
        writeln!(out, "complex.facets,{}", c.facets)?;
        writeln!(out, "complex.dimension,{}", c.dimension)?;
        writeln!(out, "complex.euler_characteristic,{}", c.euler_characteristic)?;
        writeln!(out, "complex.classification,{}", c.classification)?;
    }
    if let Some(tree) = &report.tree {
        for node in tree {
            let special = node
                .special_box
                .map_or("-".to_string(), |[r, c]| format!("({r};{c})"));
            let parent = node.parent.map_or("-".to_string(), |p| p.to_string());
            let bound = node.leaf_bound.map_or("-".to_string(), |b| b.to_string());
            writeln!(out, "tree.node,{},{special},{parent},{bound}", node.index)?;
        }
    }
    Ok(out.trim_end().to_string())
}

fn latex_poly(coeffs: &[i64]) -> String {
    if coeffs.is_empty() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for (e, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let var = match e {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{{{e}}}"),
        };
        let coeff = if c == 1 && e > 0 {
            String::new()
        } else {
            c.to_string()
        };
        terms.push(format!("{coeff}{var}"));
    }
    terms.join(" + ")
}

fn render_latex(report: &Report) -> Result<String> {
    let mut out = String::new();
    let pair = format!("{{{}\\,,\\,{}}}", report.v, report.w);
    let mut line = |name: &str, coeffs: &Option<Vec<i64>>| {
        if let Some(c) = coeffs {
            let _ = writeln!(out, "{name}_{pair}(q) = {}", latex_poly(c));
        }
    };
    line("P", &report.p);
    line("Q", &report.q);
    line("H", &report.h);
    line("H^{\\mathrm{sv}}", &report.horacle);
    line("\\widetilde{H}", &report.htilde);
    if let Some(m) = report.mult {
        writeln!(out, "\\mathrm{{mult}}_{pair} = {m}")?;
    }
    if report.complex.is_some() || report.tree.is_some() {
        bail!("LaTeX output supports polynomial quantities and mult only");
    }
    Ok(out.trim_end().to_string())
}

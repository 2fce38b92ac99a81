//! Table output for `roots`, `ideals`, and `exponents`.

use std::fmt::Write as _;

use serde::Serialize;

use idealshi::ideals::{enumerate_ideals, height_profile, ideal_exponents, weyl_catalan};
use idealshi::{ExponentMultiset, Result, RootSystem, Sign};

use crate::campaign::Subset;
use crate::report::{SubsetDesc, SCHEMA_VERSION};
use crate::Format;

#[derive(Serialize)]
struct RootRow {
    index: usize,
    root: String,
    coeffs: Vec<i64>,
    height: i64,
}

#[derive(Serialize)]
struct RootsTable {
    schema_version: u32,
    #[serde(rename = "type")]
    ty: String,
    coxeter_number: u64,
    roots: Vec<RootRow>,
}

pub fn roots(rs: &RootSystem, format: Format) -> String {
    let rows: Vec<RootRow> = rs
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(index, r)| RootRow { index, root: r.to_string(), coeffs: r.coeffs().to_vec(), height: r.height() })
        .collect();
    match format {
        Format::Json => json(&RootsTable {
            schema_version: SCHEMA_VERSION,
            ty: rs.ty().to_string(),
            coxeter_number: rs.coxeter_number(),
            roots: rows,
        }),
        Format::Csv => csv_table(["index", "root", "height"], rows.iter().map(|r| [r.index.to_string(), r.root.clone(), r.height.to_string()])),
        Format::Pretty => {
            let mut out = format!("{}: {} positive roots, h = {}\n", rs.ty(), rows.len(), rs.coxeter_number());
            let width = rows.iter().map(|r| r.root.chars().count()).max().unwrap_or(4).max(4);
            writeln!(out, "{:>5}  {:<width$}  height", "index", "root").unwrap();
            for r in &rows {
                writeln!(out, "{:>5}  {:<width$}  {}", r.index, r.root, r.height).unwrap();
            }
            out
        }
    }
}

#[derive(Serialize)]
struct IdealRow {
    index: usize,
    size: usize,
    roots: Vec<String>,
    height_profile: Vec<usize>,
    exponents: ExponentMultiset,
}

#[derive(Serialize)]
struct IdealsTable {
    schema_version: u32,
    #[serde(rename = "type")]
    ty: String,
    catalan_number: String,
    ideals: Vec<IdealRow>,
}

pub fn ideals(rs: &RootSystem, format: Format) -> Result<String> {
    let rows = enumerate_ideals(rs)?
        .iter()
        .enumerate()
        .map(|(index, ideal)| {
            Ok(IdealRow {
                index,
                size: ideal.len(),
                roots: ideal.iter().map(|i| rs.root(i).to_string()).collect(),
                height_profile: height_profile(rs, ideal),
                exponents: ideal_exponents(rs, ideal)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let catalan = weyl_catalan(rs);
    Ok(match format {
        Format::Json => json(&IdealsTable {
            schema_version: SCHEMA_VERSION,
            ty: rs.ty().to_string(),
            catalan_number: catalan.to_string(),
            ideals: rows,
        }),
        Format::Csv => csv_table(
            ["index", "size", "roots", "exponents"],
            rows.iter().map(|r| [r.index.to_string(), r.size.to_string(), r.roots.join(","), r.exponents.to_string()]),
        ),
        Format::Pretty => {
            let mut out = format!("{}: {} ideals (Catalan number {catalan})\n", rs.ty(), rows.len());
            for r in &rows {
                let members = if r.roots.is_empty() { "∅".to_string() } else { r.roots.join(", ") };
                writeln!(out, "{:>4}  |I| = {:<3} exp {:<14} {{{members}}}", r.index, r.size, r.exponents.to_string()).unwrap();
            }
            out
        }
    })
}

#[derive(Serialize)]
struct ShiRow {
    k: u64,
    sign: String,
    subset: SubsetDesc,
    exponents: ExponentMultiset,
}

#[derive(Serialize)]
struct ExponentsTable {
    schema_version: u32,
    #[serde(rename = "type")]
    ty: String,
    coxeter_number: u64,
    num_positive: usize,
    weyl_exponents: ExponentMultiset,
    shi: Vec<ShiRow>,
}

/// Weyl exponents, and the predicted Shi exponents for each ideal case.
pub fn exponents(rs: &RootSystem, k: u64, cases: &[Subset], signs: &[Sign], format: Format) -> Result<String> {
    let mut shi = Vec::new();
    for subset in cases {
        let Some(ideal) = subset.ideal(rs) else {
            return Err(idealshi::Error::Precondition(format!(
                "{{{}}} is not an ideal; the exponent formula needs an ideal",
                subset.desc.label()
            )));
        };
        for &sign in signs {
            shi.push(ShiRow {
                k,
                sign: sign.to_string(),
                subset: subset.desc.clone(),
                exponents: rs.shi_exponents_dp(k, &ideal, sign)?,
            });
        }
    }
    let table = ExponentsTable {
        schema_version: SCHEMA_VERSION,
        ty: rs.ty().to_string(),
        coxeter_number: rs.coxeter_number(),
        num_positive: rs.num_positive(),
        weyl_exponents: rs.weyl_exponents(),
        shi,
    };
    Ok(match format {
        Format::Json => json(&table),
        Format::Csv => csv_table(
            ["type", "k", "sign", "subset", "exponents"],
            table.shi.iter().map(|r| [table.ty.clone(), r.k.to_string(), r.sign.clone(), r.subset.label(), r.exponents.to_string()]),
        ),
        Format::Pretty => {
            let mut out = format!(
                "{}: h = {}, |Φ+| = {}, exponents {}\n",
                table.ty, table.coxeter_number, table.num_positive, table.weyl_exponents
            );
            for r in &table.shi {
                writeln!(out, "Shi^{}_{}{{{}}}: {}", r.k, r.sign, r.subset.label(), r.exponents).unwrap();
            }
            out
        }
    })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("table serializes");
    s.push('\n');
    s
}

fn csv_table<const N: usize>(header: [&str; N], rows: impl Iterator<Item = [String; N]>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

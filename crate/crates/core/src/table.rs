//! Exact radii of BCH(2, m) and Melas(m) for m = 6..11, compared against
//! reference values, with a sweep over every primitive modulus when the
//! default basis disagrees.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::bounds_report;
use crate::cyclic::{make_bch_with, make_melas_with};
use crate::error::Result;
use crate::gf2::{default_primitive, primitive_polynomials, BinaryPolynomial};
use crate::radius::cyclic_burst_radius;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub m: usize,
    pub bch: usize,
    pub melas: usize,
    pub upper: i64,
}

/// Published reference values: exact radii of BCH(2, m) and Melas(m) and the
/// floored BCH upper bound.
pub const REFERENCE: [TableRow; 6] = [
    TableRow { m: 6, bch: 9, melas: 10, upper: 10 },
    TableRow { m: 7, bch: 11, melas: 11, upper: 11 },
    TableRow { m: 8, bch: 12, melas: 12, upper: 13 },
    TableRow { m: 9, bch: 13, melas: 14, upper: 14 },
    TableRow { m: 10, bch: 14, melas: 15, upper: 16 },
    TableRow { m: 11, bch: 16, melas: 16, upper: 17 },
];

pub fn reference_row(m: usize) -> Option<TableRow> {
    REFERENCE.iter().copied().find(|r| r.m == m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Column {
    Bch,
    Melas,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComputedRow {
    pub m: usize,
    pub modulus: String,
    pub bch: usize,
    pub melas: usize,
    pub upper: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<TableRow>,
}

impl ComputedRow {
    pub fn mismatches(&self) -> Vec<Column> {
        let Some(e) = self.expected else { return Vec::new() };
        let mut out = Vec::new();
        if self.bch != e.bch {
            out.push(Column::Bch);
        }
        if self.melas != e.melas {
            out.push(Column::Melas);
        }
        out
    }

    pub fn upper_matches(&self) -> bool {
        self.expected.is_none_or(|e| e.upper == self.upper)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SensitivityEntry {
    pub m: usize,
    pub column: Column,
    pub modulus: String,
    /// Generator of the resulting code; moduli giving the same generator form one class.
    pub generator: String,
    pub radius: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dependence {
    pub m: usize,
    pub column: Column,
    pub default_radius: usize,
    pub expected: usize,
    /// Moduli attaining the expected value.
    pub attained_by: Vec<String>,
    /// Distinct radii over all primitive moduli.
    pub observed: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Report {
    pub rows: Vec<ComputedRow>,
    pub dependences: Vec<Dependence>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sensitivity: Vec<SensitivityEntry>,
    /// Cells that disagree with the reference under every modulus, or upper-bound mismatches.
    pub unresolved: Vec<String>,
}

impl Table1Report {
    /// Every cell matches under the chosen modulus.
    pub fn exact(&self) -> bool {
        self.rows.iter().all(|r| r.mismatches().is_empty() && r.upper_matches())
    }

    /// Every mismatch is explained by the choice of modulus.
    pub fn resolved(&self) -> bool {
        self.unresolved.is_empty()
    }
}

/// Radii of both codes under `modulus`.
pub fn compute_row(m: usize, modulus: &BinaryPolynomial) -> Result<ComputedRow> {
    let bch = make_bch_with(2, m, Some(modulus.clone()))?;
    let melas = make_melas_with(m, Some(modulus.clone()))?;
    let upper =
        bounds_report(&bch).entry("bch_upper").and_then(|e| e.value).expect("bch upper bound applies for e = 2");
    Ok(ComputedRow {
        m,
        modulus: modulus.to_hex(),
        bch: cyclic_burst_radius(&bch)?.b,
        melas: cyclic_burst_radius(&melas)?.b,
        upper,
        expected: reference_row(m),
    })
}

/// Radius of one column under every primitive modulus of degree `m`.
pub fn sensitivity(m: usize, column: Column) -> Result<Vec<SensitivityEntry>> {
    let moduli: Vec<BinaryPolynomial> = primitive_polynomials(m).collect();
    moduli
        .par_iter()
        .map(|p| {
            let code = match column {
                Column::Bch => make_bch_with(2, m, Some(p.clone()))?,
                Column::Melas => make_melas_with(m, Some(p.clone()))?,
            };
            Ok(SensitivityEntry {
                m,
                column,
                modulus: p.to_hex(),
                generator: code.generator().to_hex(),
                radius: cyclic_burst_radius(&code)?.b,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Default)]
pub struct Table1Options {
    /// Rows to compute.
    pub ms: Vec<usize>,
    /// Modulus overrides by degree.
    pub moduli: BTreeMap<usize, BinaryPolynomial>,
    /// Sweep all moduli for every cell, not only mismatching ones.
    pub full_sensitivity: bool,
}

pub fn table1(opts: &Table1Options) -> Result<Table1Report> {
    let mut rows = Vec::new();
    let mut dependences = Vec::new();
    let mut sweep = Vec::new();
    let mut unresolved = Vec::new();
    for &m in &opts.ms {
        let modulus = opts.moduli.get(&m).cloned().unwrap_or_else(|| default_primitive(m));
        let row = compute_row(m, &modulus)?;
        if !row.upper_matches() {
            unresolved.push(format!("m={m}: upper bound {} differs from reference", row.upper));
        }
        let mismatched = row.mismatches();
        for column in [Column::Bch, Column::Melas] {
            let mismatch = mismatched.contains(&column);
            if !mismatch && !opts.full_sensitivity {
                continue;
            }
            let entries = sensitivity(m, column)?;
            if mismatch {
                let expected = row.expected.expect("mismatch implies a reference row");
                let (default_radius, want) = match column {
                    Column::Bch => (row.bch, expected.bch),
                    Column::Melas => (row.melas, expected.melas),
                };
                let attained_by: Vec<String> =
                    entries.iter().filter(|e| e.radius == want).map(|e| e.modulus.clone()).collect();
                let mut observed: Vec<usize> = entries.iter().map(|e| e.radius).collect();
                observed.sort_unstable();
                observed.dedup();
                if attained_by.is_empty() {
                    unresolved.push(format!("m={m} {column:?}: {want} not attained by any primitive modulus"));
                }
                dependences.push(Dependence { m, column, default_radius, expected: want, attained_by, observed });
            }
            sweep.extend(entries);
        }
        rows.push(row);
    }
    Ok(Table1Report { rows, dependences, sensitivity: sweep, unresolved })
}

//! Two-variable tables of D, the closed form, the oracle gap and the
//! multiplicity-aware Schwartz-Zippel bound, rendered as CSV, Markdown or JSON.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bounds::{closed_form_bound_unchecked, sz_mult_bound, BoundError, BoundParams, DEvaluator};
use crate::oracle::lower_bound_search;
use crate::rational::floor;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    D,
    /// `floor(sz_mult)` indexed by `i1 + i2`; needs `s1 = s2`.
    Sz,
    ClosedFloor,
    Gap,
}

impl FromStr for TableKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "d" => Ok(Self::D),
            "sz" => Ok(Self::Sz),
            "closed_floor" | "closed-floor" => Ok(Self::ClosedFloor),
            "gap" => Ok(Self::Gap),
            _ => Err(format!("unknown table kind `{s}` (expected d, sz, closed_floor or gap)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Markdown,
    Json,
}

impl FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "markdown" | "md" => Ok(Self::Markdown),
            "json" => Ok(Self::Json),
            _ => Err(format!("unknown format `{s}` (expected csv, markdown or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSpec {
    pub kind: TableKind,
    pub r: u32,
    pub sizes: [u64; 2],
    /// Column range; for [`TableKind::Sz`] the range of `i1 + i2`.
    pub i1: RangeInclusive<u64>,
    /// Row range; unused for [`TableKind::Sz`].
    pub i2: RangeInclusive<u64>,
    /// Leave cells with `floor(i1/s1) + floor(i2/s2) >= r` empty.
    pub blank_saturated: bool,
    /// Mark closed-form cells below D (`u`) or below the oracle bound (`uu`).
    pub annotate: bool,
}

impl TableSpec {
    /// Columns and rows `0..=r s - 1` with saturated cells blank. The sz
    /// table runs up to `(r + 1) s - 2`, the largest unsaturated `i1 + i2`.
    pub fn standard(kind: TableKind, r: u32, sizes: [u64; 2]) -> Self {
        let (i1, i2) = if kind == TableKind::Sz {
            let top = (u64::from(r) + 1) * sizes[0] - 2;
            (0..=top, 0..=0)
        } else {
            (0..=u64::from(r) * sizes[0] - 1, 0..=u64::from(r) * sizes[1] - 1)
        };
        Self { kind, r, sizes, i1, i2, blank_saturated: true, annotate: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mark {
    None,
    /// Below D.
    Single,
    /// Below the constructive lower bound.
    Double,
}

impl Mark {
    fn suffix(self) -> &'static str {
        match self {
            Self::None => "",
            Self::Single => "u",
            Self::Double => "uu",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Blank,
    Value { value: BigInt, mark: Mark },
}

impl Cell {
    pub fn value(&self) -> Option<&BigInt> {
        match self {
            Self::Blank => None,
            Self::Value { value, .. } => Some(value),
        }
    }

    pub fn mark(&self) -> Mark {
        match self {
            Self::Blank => Mark::None,
            Self::Value { mark, .. } => *mark,
        }
    }

    fn text(&self, annotate: bool) -> String {
        match self {
            Self::Blank => String::new(),
            Self::Value { value, mark } if annotate => format!("{value}{}", mark.suffix()),
            Self::Value { value, .. } => value.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub spec: TableSpec,
    pub columns: Vec<u64>,
    /// `(row label, cells)`; the label is `i2`, or `None` for the one-row sz table.
    pub rows: Vec<(Option<u64>, Vec<Cell>)>,
}

impl Table {
    /// Cell at `(i1, i2)` when both are within range.
    pub fn get(&self, i1: u64, i2: u64) -> Option<&Cell> {
        let col = self.columns.iter().position(|&c| c == i1)?;
        let row = self.rows.iter().position(|(label, _)| label.unwrap_or(0) == i2)?;
        Some(&self.rows[row].1[col])
    }

    fn corner(&self) -> &'static str {
        if self.spec.kind == TableKind::Sz {
            "i1+i2"
        } else {
            "i2\\i1"
        }
    }

    fn row_label(&self, label: Option<u64>) -> String {
        label.map_or_else(|| "sz".to_string(), |v| v.to_string())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.columns.iter().map(u64::to_string).collect();
        writeln!(out, "{},{}", self.corner(), header.join(",")).unwrap();
        for (label, cells) in &self.rows {
            let texts: Vec<String> = cells.iter().map(|c| c.text(self.spec.annotate)).collect();
            writeln!(out, "{},{}", self.row_label(*label), texts.join(",")).unwrap();
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.columns.iter().map(u64::to_string).collect();
        writeln!(out, "| {} | {} |", self.corner(), header.join(" | ")).unwrap();
        writeln!(out, "|{}", "---|".repeat(self.columns.len() + 1)).unwrap();
        for (label, cells) in &self.rows {
            let texts: Vec<String> = cells.iter().map(|c| c.text(self.spec.annotate)).collect();
            writeln!(out, "| {} | {} |", self.row_label(*label), texts.join(" | ")).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let kind = match self.spec.kind {
            TableKind::D => "d",
            TableKind::Sz => "sz",
            TableKind::ClosedFloor => "closed_floor",
            TableKind::Gap => "gap",
        };
        let cell_value = |c: &Cell| match c.value() {
            // every table value is far below 2^63
            Some(v) => json!(i64::try_from(v).expect("table values fit in i64")),
            None => Value::Null,
        };
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|(label, cells)| {
                let mut row = json!({
                    "i2": label,
                    "cells": cells.iter().map(cell_value).collect::<Vec<_>>(),
                });
                if self.spec.annotate {
                    row["marks"] = json!(cells.iter().map(|c| c.mark().suffix()).collect::<Vec<_>>());
                }
                row
            })
            .collect();
        json!({
            "kind": kind,
            "r": self.spec.r,
            "sizes": self.spec.sizes,
            "column_index": if self.spec.kind == TableKind::Sz { "i1+i2" } else { "i1" },
            "columns": self.columns,
            "rows": rows,
        })
    }

    pub fn render(&self, format: TableFormat) -> String {
        match format {
            TableFormat::Csv => self.to_csv(),
            TableFormat::Markdown => self.to_markdown(),
            TableFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }
}

fn params(i1: u64, i2: u64, spec: &TableSpec) -> BoundParams {
    BoundParams::new(vec![i1, i2], spec.r, spec.sizes.to_vec()).expect("validated spec")
}

fn cell(i1: u64, i2: u64, spec: &TableSpec, ev: &mut DEvaluator) -> Cell {
    if spec.blank_saturated && i1 / spec.sizes[0] + i2 / spec.sizes[1] >= u64::from(spec.r) {
        return Cell::Blank;
    }
    let p = params(i1, i2, spec);
    let lower = || BigInt::from(lower_bound_search(&[i1, i2], u64::from(spec.r), &spec.sizes).0);
    let (value, mark) = match spec.kind {
        TableKind::D => (BigInt::from(ev.d(&p)), Mark::None),
        TableKind::Gap => (BigInt::from(ev.d(&p)) - lower(), Mark::None),
        TableKind::ClosedFloor => {
            let value = floor(&closed_form_bound_unchecked(&p));
            let mark = if !spec.annotate {
                Mark::None
            } else if value < lower() {
                Mark::Double
            } else if value < BigInt::from(ev.d(&p)) {
                Mark::Single
            } else {
                Mark::None
            };
            (value, mark)
        }
        TableKind::Sz => unreachable!("sz is one-dimensional"),
    };
    Cell::Value { value, mark }
}

pub fn build_table(spec: &TableSpec) -> Result<Table, BoundError> {
    if spec.r == 0 || spec.sizes.contains(&0) {
        return Err(BoundError::InvalidParams("r and set sizes must be positive".into()));
    }
    if spec.i1.is_empty() || spec.i2.is_empty() {
        return Err(BoundError::InvalidParams("table ranges must be non-empty".into()));
    }
    let columns: Vec<u64> = spec.i1.clone().collect();
    if spec.kind == TableKind::Sz {
        if spec.sizes[0] != spec.sizes[1] {
            return Err(BoundError::InvalidParams("the sz table needs s1 = s2".into()));
        }
        // with equal sizes sz_mult depends on i1 + i2 only
        let cells = columns
            .iter()
            .map(|&n| Cell::Value { value: floor(&sz_mult_bound(&params(n, 0, spec))), mark: Mark::None })
            .collect();
        return Ok(Table { spec: spec.clone(), columns, rows: vec![(None, cells)] });
    }
    let row_labels: Vec<u64> = spec.i2.clone().collect();
    let rows = row_labels
        .par_iter()
        .map(|&i2| {
            let mut ev = DEvaluator::new();
            let cells = columns.iter().map(|&i1| cell(i1, i2, spec, &mut ev)).collect();
            (Some(i2), cells)
        })
        .collect();
    Ok(Table { spec: spec.clone(), columns, rows })
}

//! The (m1,m2) refinement table.
//!
//! Rows are ordered by m1+m2 ascending, ties by m1 descending; each cell
//! lists partitions in lexicographic descending order.

use std::collections::BTreeSet;
use std::fmt::Write;

use partmaps::enumeration::Preset;
use partmaps::{Partition, Result};

pub const MAX_TABLE_N: u32 = 60;

pub struct Row {
    pub m1: u64,
    pub m2: u64,
    pub b1: Vec<Partition>,
    pub b2: Vec<Partition>,
}

pub fn refinement_rows(n: u32) -> Result<Vec<Row>> {
    let mut b1 = Preset::B1.family(1)?.list_by_type(n)?;
    let mut b2 = Preset::B2.family(1)?.list_by_type(n)?;
    let keys: BTreeSet<Vec<u64>> = b1.keys().chain(b2.keys()).cloned().collect();
    let mut keys: Vec<Vec<u64>> = keys.into_iter().collect();
    keys.sort_by_key(|k| (k[0] + k[1], std::cmp::Reverse(k[0])));
    Ok(keys
        .into_iter()
        .map(|k| Row {
            m1: k[0],
            m2: k[1],
            b1: b1.remove(&k).unwrap_or_default(),
            b2: b2.remove(&k).unwrap_or_default(),
        })
        .collect())
}

fn cell(p: Option<&Partition>) -> String {
    match p {
        Some(p) if p.is_empty() => "(empty)".to_string(),
        Some(p) => p.to_string(),
        None => String::new(),
    }
}

/// Plain-text rendering with space-padded columns and no trailing spaces.
pub fn render(n: u32, rows: &[Row]) -> String {
    let mut lines: Vec<[String; 3]> = vec![[
        "(m1,m2)".to_string(),
        format!("B1(m1,m2,{n})"),
        format!("B2(m1,m2,{n})"),
    ]];
    for row in rows {
        for i in 0..row.b1.len().max(row.b2.len()) {
            let label = if i == 0 {
                format!("({},{})", row.m1, row.m2)
            } else {
                String::new()
            };
            lines.push([label, cell(row.b1.get(i)), cell(row.b2.get(i))]);
        }
    }
    let w0 = lines.iter().map(|l| l[0].len()).max().unwrap_or(0);
    let w1 = lines.iter().map(|l| l[1].len()).max().unwrap_or(0);
    let mut out = String::new();
    for [a, b, c] in &lines {
        let line = format!("{a:<w0$}  {b:<w1$}  {c}");
        writeln!(out, "{}", line.trim_end()).expect("writing to a string");
    }
    out
}

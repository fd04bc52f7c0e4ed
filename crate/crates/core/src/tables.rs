//! The explicit small-case subalgebras of vect(0|2) and h′(0|4), and the
//! Borel data of degree 0, with their text and JSON layouts.
//!
//! Rows are stored as written, in symbolic variable names (`xa`, `eb`, `z`,
//! `zb`, …) together with a rename into the variables of a concrete
//! coordinate split. Every row is validated against the prolongation of
//! its nonpositive part before it is printed.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{build_algebra, build_hamiltonian, Series};
use crate::catalog::borel0;
use crate::grassmann::HSplit;
use crate::linalg::Subspace;
use crate::liestruct::{GradedSubalgebra, Lie};
use crate::parse::parse_element;
use crate::prolong::cartan_prolong;
use crate::scalar::Rational;
use crate::{Error, Result};

type Q = Rational;

/// One row: a name and bases of s_{−1}, s_0, s_1.
#[derive(Clone, Debug)]
pub struct StoredRow {
    pub table: u8,
    pub name: &'static str,
    pub series: Series,
    pub n: usize,
    pub split: Option<HSplit>,
    pub rename: &'static [(&'static str, &'static str)],
    pub cells: [&'static [&'static str]; 3],
}

const NO_RENAME: &[(&str, &str)] = &[];
const TABLE4: &[(&str, &str)] = &[("xa", "x2"), ("ea", "e2")];
const PAIR1: &[(&str, &str)] = &[("xb", "x1"), ("eb", "e1"), ("z", "z1"), ("zb", "z2")];
const PAIR3: &[(&str, &str)] = &[("xa", "x1"), ("xb", "x2"), ("ea", "e1"), ("eb", "e2")];

const H04_S0: &[&str] = &["x1.e1", "x1.x2", "x1.e2", "x2.e2"];
const H04_TILDE: [&[&str]; 3] = [
    &["x1", "x2", "e2"],
    H04_S0,
    &["x1.e1.e2", "x1.x2.e1", "x1.x2.e2"],
];

fn vect02(name: &'static str, cells: [&'static [&'static str]; 3]) -> StoredRow {
    StoredRow {
        table: 2,
        name,
        series: Series::Vect,
        n: 2,
        split: None,
        rename: NO_RENAME,
        cells,
    }
}

fn h04(
    table: u8,
    name: &'static str,
    split: HSplit,
    rename: &'static [(&'static str, &'static str)],
    cells: [&'static [&'static str]; 3],
) -> StoredRow {
    StoredRow {
        table,
        name,
        series: Series::HPrime,
        n: 4,
        split: Some(split),
        rename,
        cells,
    }
}

/// Every stored row of Tables 2–5, in order.
pub fn stored_rows() -> Vec<StoredRow> {
    let std = HSplit::new(2, 0);
    let odd = HSplit::new(1, 2);
    vec![
        vect02(
            "msV",
            [&["d1"], &["x1.d1", "x2.d1", "x2.d2"], &["x1.x2.d1", "x1.x2.d2"]],
        ),
        vect02(
            "msc",
            [&["d1", "d2"], &["x1.d1", "x2.d1", "x2.d2"], &["x1.x2.d1"]],
        ),
        h04(
            3,
            "msV",
            std,
            NO_RENAME,
            [&["x1"], H04_S0, &["x1.e1.e2", "x1.x2.e1", "x1.x2.e2", "x2.e1.e2"]],
        ),
        h04(3, "msc", std, NO_RENAME, [&["x1", "x2", "e1", "e2"], H04_S0, &["x1.x2.e2"]]),
        h04(3, "ms~V", std, NO_RENAME, H04_TILDE),
        h04(
            4,
            "ms~V",
            std,
            TABLE4,
            [
                &["x1", "xa", "ea"],
                &["x1.e1", "x1.xa", "x1.ea", "xa.ea"],
                &["x1.e1.ea", "x1.e1.xa", "x1.xa.ea"],
            ],
        ),
        h04(
            5,
            "msV",
            odd,
            PAIR1,
            [&["z"], &["xb.eb", "xb.zb"], &["xb.eb.zb", "xb.zb.z", "xb.eb.z"]],
        ),
        h04(
            5,
            "ms~V",
            odd,
            PAIR1,
            [
                &["z", "xb", "zb"],
                &["xb.eb", "xb.zb", "xb.z", "z.zb"],
                &["xb.eb.zb", "xb.zb.z", "xb.eb.z"],
            ],
        ),
        h04(
            5,
            "msV",
            std,
            NO_RENAME,
            [&["x1", "x2"], H04_S0, &["x1.e1.e2", "x1.x2.e1", "x1.x2.e2"]],
        ),
        h04(5, "ms~V", std, NO_RENAME, H04_TILDE),
        h04(
            5,
            "msV",
            std,
            PAIR3,
            [&["xa", "ea"], &["xa.ea", "xb.eb"], &["xb.eb.xa", "xb.eb.ea"]],
        ),
        h04(
            5,
            "ms~V",
            std,
            PAIR3,
            [
                &["xa", "ea", "xb"],
                &["xa.ea", "xb.eb", "xa.xb", "xb.ea"],
                &["xb.eb.xa", "xb.eb.ea", "xb.xa.ea"],
            ],
        ),
    ]
}

/// Rows of one table.
pub fn table_rows(table: u8) -> Vec<StoredRow> {
    stored_rows().into_iter().filter(|r| r.table == table).collect()
}

/// The (non-maximal, ambient) pairs of Table 5.
pub fn table5_pairs() -> Vec<(StoredRow, StoredRow)> {
    let rows = table_rows(5);
    rows.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect()
}

impl StoredRow {
    pub fn ambient(&self) -> Result<Arc<Lie<Q>>> {
        let desc = match self.split {
            Some(s) => build_hamiltonian(self.series, s)?,
            None => build_algebra(self.series, self.n)?,
        };
        Ok(Lie::from_desc(desc))
    }

    /// True if this row lives in the ambient of `lie`.
    pub fn fits(&self, lie: &Lie<Q>) -> bool {
        let d = lie.desc();
        d.series() == self.series && d.n() == self.n && d.split() == self.split
    }

    fn concrete(&self, symbol: &str) -> String {
        symbol
            .split('.')
            .map(|t| {
                self.rename
                    .iter()
                    .find(|(s, _)| *s == t)
                    .map_or(t, |(_, c)| *c)
            })
            .collect::<Vec<_>>()
            .join(".")
    }

    /// The row as a subspace of `lie`, which must fit.
    pub fn build_in(&self, lie: &Arc<Lie<Q>>) -> Result<GradedSubalgebra<Q>> {
        if !self.fits(lie) {
            return Err(Error::Mismatch(format!("row {} does not live in {}", self.name, lie.desc().name())));
        }
        let mut s = GradedSubalgebra::zero(lie);
        for (cell, degree) in self.cells.iter().zip(-1..) {
            for sym in cell.iter() {
                let e = parse_element(&self.concrete(sym), lie.desc())?;
                let (d, v) = lie.coords_of(&e)?;
                if d != degree {
                    return Err(Error::Internal(format!("{sym} has degree {d}, expected {degree}")));
                }
                if !s.insert(d, &v) {
                    return Err(Error::Internal(format!("{sym} is linearly dependent")));
                }
            }
        }
        Ok(s)
    }

    pub fn build(&self) -> Result<GradedSubalgebra<Q>> {
        self.build_in(&self.ambient()?)
    }

    /// Closed, solvable, and equal to the prolongation of (s_{−1}, s_0).
    pub fn validate(&self) -> Result<GradedSubalgebra<Q>> {
        let s = self.build()?;
        if !s.is_closed() {
            return Err(Error::NotClosed(format!("table {} row {}", self.table, self.name)));
        }
        if !s.is_solvable() {
            return Err(Error::Internal(format!("table {} row {} is not solvable", self.table, self.name)));
        }
        let p = cartan_prolong(s.lie(), s.component(-1), s.component(0))?;
        if p != s {
            return Err(Error::Internal(format!(
                "table {} row {} differs from its prolongation {:?}",
                self.table,
                self.name,
                p.dims_trimmed()
            )));
        }
        Ok(s)
    }

    pub fn dims(&self) -> [usize; 3] {
        [self.cells[0].len(), self.cells[1].len(), self.cells[2].len()]
    }

    fn text_cells(&self) -> Vec<String> {
        let mut out = vec![self.name.to_string()];
        out.extend(self.cells.iter().map(|c| c.join(", ")));
        out
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "table": self.table,
            "name": self.name,
            "series": self.series.label(),
            "n": self.n,
            "components": self.cells.iter().zip(-1..).map(|(c, d)| json!({"degree": d, "basis": c})).collect::<Vec<_>>(),
        });
        if let Some(s) = self.split {
            v["split"] = json!({"k": s.k, "l": s.l});
        }
        if !self.rename.is_empty() {
            v["rename"] = json!(self.rename.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>());
        }
        v
    }
}

/// The stored row equal to `s`, if any.
pub fn match_row(s: &GradedSubalgebra<Q>) -> Option<StoredRow> {
    stored_rows()
        .into_iter()
        .filter(|r| r.fits(s.lie()))
        .find(|r| r.build_in(s.lie()).map_or(false, |b| &b == s))
}

/// Align `name | s_-1 | s_0 | s_1` rows into columns.
pub fn layout(rows: &[Vec<String>]) -> String {
    let header: Vec<String> = ["name", "basis of s_-1", "basis of s_0", "basis of s_1"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut all = vec![header];
    all.extend(rows.iter().cloned());
    let cols = all.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|i| all.iter().filter_map(|r| r.get(i)).map(|c| c.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in &all {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c:<w$}", w = widths[i]))
            .collect();
        out.push_str(line.join(" | ").trim_end());
        out.push('\n');
    }
    out
}

/// Cells of a computed subalgebra: the stored spelling when it equals a
/// stored row, canonical basis vectors otherwise.
pub fn subalgebra_cells(name: &str, s: &GradedSubalgebra<Q>) -> Vec<String> {
    if let Some(r) = match_row(s) {
        let mut c = r.text_cells();
        c[0] = name.to_string();
        return c;
    }
    let mut out = vec![name.to_string()];
    for (d, elems) in s.render_basis() {
        if d >= -1 {
            out.push(elems.join(", "));
        }
    }
    while out.len() > 1 && out.last().map_or(false, |c| c.is_empty()) {
        out.pop();
    }
    out
}

/// Header and one row for `s`, aligned as in the stored table it equals
/// (the pair, for Table 5), or laid out on its own.
pub fn emit_row(name: &str, s: &GradedSubalgebra<Q>) -> String {
    let Some(r) = match_row(s) else {
        return layout(&[subalgebra_cells(name, s)]);
    };
    let rows = table_rows(r.table);
    let at = rows.iter().position(|x| x.name == r.name && x.cells == r.cells).unwrap_or(0);
    let group: &[StoredRow] = if r.table == 5 { &rows[at / 2 * 2..at / 2 * 2 + 2] } else { &rows };
    let cells: Vec<Vec<String>> = group.iter().map(|x| x.text_cells()).collect();
    let text = layout(&cells);
    let lines: Vec<&str> = text.lines().collect();
    let idx = if r.table == 5 { at % 2 } else { at };
    let mut out = format!("{}\n{}\n", lines[0], lines[idx + 1]);
    if !r.rename.is_empty() {
        let m: Vec<String> = r.rename.iter().map(|(a, b)| format!("{a}={b}")).collect();
        out.push_str(&format!("where {}\n", m.join(", ")));
    }
    out
}

/// Text layout of a stored table.
pub fn table_text(table: u8) -> Result<String> {
    let rows = table_rows(table);
    if rows.is_empty() {
        return Err(Error::UnknownCase(format!("table {table}")));
    }
    let mut out = String::new();
    if table == 5 {
        for (i, pair) in rows.chunks(2).enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let cells: Vec<Vec<String>> = pair.iter().map(|r| r.text_cells()).collect();
            out.push_str(&layout(&cells));
        }
    } else {
        let cells: Vec<Vec<String>> = rows.iter().map(|r| r.text_cells()).collect();
        out.push_str(&layout(&cells));
    }
    if let Some(r) = rows.iter().find(|r| !r.rename.is_empty()) {
        if rows.iter().all(|x| x.rename == r.rename) {
            let m: Vec<String> = r.rename.iter().map(|(a, b)| format!("{a}={b}")).collect();
            out.push_str(&format!("where {}\n", m.join(", ")));
        }
    }
    Ok(out)
}

pub fn table_json(table: u8) -> Result<Value> {
    let rows = table_rows(table);
    if rows.is_empty() {
        return Err(Error::UnknownCase(format!("table {table}")));
    }
    Ok(json!({
        "table": table,
        "rows": rows.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    }))
}

/// Degree-0 Borel data: g_0 and the chosen solvable s_0.
pub struct BorelRow {
    pub ambient: String,
    pub g0_dim: usize,
    pub s0: Vec<String>,
}

pub fn table1(series: Series, n: usize) -> Result<BorelRow> {
    let lie = Lie::<Q>::from_desc(build_algebra(series, n)?);
    let b: Subspace<Q> = borel0(&lie)?;
    Ok(BorelRow {
        ambient: series.display(n),
        g0_dim: lie.dim(0),
        s0: b.rows().iter().map(|r| lie.render(0, r)).collect(),
    })
}

/// Table 1 for the given ambients.
pub fn table1_text(ambients: &[(Series, usize)]) -> Result<String> {
    let mut rows = Vec::new();
    for &(s, n) in ambients {
        let r = table1(s, n)?;
        rows.push(vec![r.ambient, r.g0_dim.to_string(), r.s0.len().to_string(), r.s0.join(", ")]);
    }
    let mut all = vec![vec!["g".to_string(), "dim g_0".into(), "dim s_0".into(), "basis of s_0".into()]];
    all.extend(rows);
    let widths: Vec<usize> = (0..4)
        .map(|i| all.iter().map(|r| r[i].chars().count()).max().unwrap())
        .collect();
    let mut out = String::new();
    for r in &all {
        let line: Vec<String> = r.iter().enumerate().map(|(i, c)| format!("{c:<w$}", w = widths[i])).collect();
        out.push_str(line.join(" | ").trim_end());
        out.push('\n');
    }
    Ok(out)
}

pub fn table1_json(ambients: &[(Series, usize)]) -> Result<Value> {
    let mut rows = Vec::new();
    for &(s, n) in ambients {
        let r = table1(s, n)?;
        rows.push(json!({"ambient": r.ambient, "g0_dim": r.g0_dim, "s0": r.s0}));
    }
    Ok(json!({"table": 1, "rows": rows}))
}

/// Default ambients for Table 1.
pub const TABLE1_AMBIENTS: &[(Series, usize)] = &[
    (Series::Vect, 3),
    (Series::Svect, 3),
    (Series::H, 4),
    (Series::H, 5),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_rows_are_prolongations() {
        for r in stored_rows() {
            r.validate().unwrap_or_else(|e| panic!("table {} {}: {e}", r.table, r.name));
        }
    }

    #[test]
    fn table4_is_table3_renamed() {
        let r3 = &table_rows(3)[2];
        let lie = r3.ambient().unwrap();
        let t3 = r3.build_in(&lie).unwrap();
        let t4 = table_rows(4)[0].build_in(&lie).unwrap();
        assert_eq!(t3, t4);
    }

    #[test]
    fn layout_is_aligned() {
        let t = table_text(2).unwrap();
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines[2], "msc  | d1, d2        | x1.d1, x2.d1, x2.d2 | x1.x2.d1");
    }
}

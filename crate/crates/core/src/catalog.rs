//! The polytopes of the optimal-ratio tables, grouped by dimension.

use serde::Serialize;

use crate::error::Result;
use crate::polytope::{CatalogId, Family};
use crate::ratio::{cross_checked_report, RatioReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableEntry {
    /// 1 = 2D, 2 = 3D, 3 = 4D, 4 = 5D.
    pub table: u8,
    pub label: &'static str,
    pub id: CatalogId,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub table: u8,
    pub label: String,
    pub id: String,
    pub delta_over_edge: f64,
    pub r_opt: f64,
    pub report: RatioReport,
}

const ENTRIES: [(u8, &str, Family, usize); 16] = [
    (1, "Triangle", Family::Polygon(3), 2),
    (1, "Square", Family::Polygon(4), 2),
    (1, "Pentagon", Family::Polygon(5), 2),
    (1, "Hexagon", Family::Polygon(6), 2),
    (2, "Tetrahedron", Family::Tetrahedron, 3),
    (2, "Cube", Family::Cube, 3),
    (2, "Octahedron", Family::Octahedron, 3),
    (2, "Icosahedron", Family::Icosahedron, 3),
    (2, "Dodecahedron", Family::Dodecahedron, 3),
    (3, "5-cell (4-simplex)", Family::FiveCell, 4),
    (3, "8-cell (4-cube)", Family::EightCell, 4),
    (3, "16-cell", Family::SixteenCell, 4),
    (3, "24-cell", Family::TwentyFourCell, 4),
    (4, "5-simplex", Family::Simplex, 5),
    (4, "5-cube", Family::Hypercube, 5),
    (4, "5-orthoplex", Family::Orthoplex, 5),
];

pub fn table_entries() -> Vec<TableEntry> {
    ENTRIES
        .iter()
        .map(|&(table, label, family, dimension)| TableEntry {
            table,
            label,
            id: CatalogId { family, dimension },
        })
        .collect()
}

/// Ratio report for one entry at unit edge length.
pub fn table_row(entry: &TableEntry) -> Result<TableRow> {
    let p = entry.id.generate(1.0)?;
    let report = cross_checked_report(&p)?;
    Ok(TableRow {
        table: entry.table,
        label: entry.label.to_string(),
        id: entry.id.to_string(),
        delta_over_edge: report.delta_over_edge(),
        r_opt: report.r_opt,
        report,
    })
}

pub fn compute_tables() -> Result<Vec<TableRow>> {
    table_entries().iter().map(table_row).collect()
}

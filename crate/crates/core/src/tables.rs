//! Bundled example tables: `Q61`, `Q72`, and the canonical matrices of two
//! order-5 quandles `Q52` and `Q53`.

use crate::catalog_io::CatalogEntry;
use crate::quandle::Quandle;

pub const Q61: &[&[usize]] = &[
    &[1, 1, 5, 6, 3, 4],
    &[2, 2, 6, 5, 4, 3],
    &[5, 6, 3, 3, 1, 2],
    &[6, 5, 4, 4, 2, 1],
    &[3, 4, 1, 2, 5, 5],
    &[4, 3, 2, 1, 6, 6],
];

pub const Q72: &[&[usize]] = &[
    &[1, 5, 2, 6, 3, 7, 4],
    &[5, 2, 6, 3, 7, 4, 1],
    &[2, 6, 3, 7, 4, 1, 5],
    &[6, 3, 7, 4, 1, 5, 2],
    &[3, 7, 4, 1, 5, 2, 6],
    &[7, 4, 1, 5, 2, 6, 3],
    &[4, 1, 5, 2, 6, 3, 7],
];

/// Canonical matrix of `Q52`, profile `{1,4}`.
pub const Q52: &[&[usize]] = &[
    &[1, 4, 5, 3, 2],
    &[4, 2, 1, 5, 3],
    &[5, 1, 3, 2, 4],
    &[3, 5, 2, 4, 1],
    &[2, 3, 4, 1, 5],
];

/// Canonical matrix of `Q53`, profile `{1,4}`.
pub const Q53: &[&[usize]] = &[
    &[1, 5, 4, 3, 2],
    &[4, 2, 5, 1, 3],
    &[2, 1, 3, 5, 4],
    &[5, 3, 2, 4, 1],
    &[3, 4, 1, 2, 5],
];

pub fn to_rows(table: &[&[usize]]) -> Vec<Vec<usize>> {
    table.iter().map(|r| r.to_vec()).collect()
}

fn load(table: &[&[usize]]) -> Quandle {
    Quandle::from_table(&to_rows(table)).expect("bundled tables are quandles")
}

pub fn q61() -> Quandle {
    load(Q61)
}

pub fn q72() -> Quandle {
    load(Q72)
}

pub fn q52() -> Quandle {
    load(Q52)
}

pub fn q53() -> Quandle {
    load(Q53)
}

/// The four tables as catalog entries with ids `q52`, `q53`, `q61`, `q72`.
pub fn example_catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry::new("q52", q52()),
        CatalogEntry::new("q53", q53()),
        CatalogEntry::new("q61", q61()),
        CatalogEntry::new("q72", q72()),
    ]
}

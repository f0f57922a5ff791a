//! Exhaustive generation of connected quandles of small order up to
//! isomorphism.
//!
//! Every connected quandle is isomorphic to one whose `r_n` has form (N), so
//! for each partition `ℓ_1 ≤ ... ≤ ℓ_k` of `n - 1` the last column is fixed
//! to that form and the search only fills the rest. In a connected quandle
//! all right translations are conjugate, so every candidate column must share
//! the profile's pattern. Right-distributivity is the identity
//! `r_{r_b(a)} = r_b ∘ r_a ∘ r_b⁻¹`; each newly known column is closed under it
//! against all known columns, which fixes whole orbits of columns at once and
//! detects conflicts early. Complete tables are checked for connectivity and
//! deduplicated by canonical form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use itertools::Itertools;
use rayon::prelude::*;

use crate::canon::{self, FormN};
use crate::catalog_io::CatalogEntry;
use crate::error::{Error, Result};
use crate::perm::{Pattern, Perm};
use crate::quandle::{Profile, Quandle};

pub const DEFAULT_MAX_ORDER: usize = 8;

#[derive(Debug, Clone)]
pub struct EnumOptions {
    /// Orders above this are refused.
    pub max_order: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

/// Reported after each finished unit of work.
#[derive(Debug, Clone)]
pub struct Progress {
    pub order: usize,
    pub done: usize,
    pub total: usize,
}

/// Nondecreasing sequences of positive integers summing to `total`.
pub fn partitions(total: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in min..=rest {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, 1, &mut Vec::new(), &mut out);
    out
}

/// A partially filled table, stored by column. The diagonal is fixed, every
/// assigned column is a bijection, and assigned columns are closed under
/// right-distributivity.
#[derive(Debug, Clone)]
pub struct SearchNode {
    n: usize,
    columns: Vec<Option<Vec<usize>>>,
    known: Vec<usize>,
}

impl SearchNode {
    fn new(n: usize) -> Self {
        SearchNode {
            n,
            columns: vec![None; n],
            known: Vec::with_capacity(n),
        }
    }

    pub fn assigned(&self) -> usize {
        self.known.len()
    }

    pub fn is_complete(&self) -> bool {
        self.known.len() == self.n
    }

    fn first_unassigned(&self) -> Option<usize> {
        self.columns.iter().position(Option::is_none)
    }

    /// Assigns column `b` and closes under distributivity. Returns `false` on
    /// a conflict, leaving the node in an unspecified state.
    fn assign(&mut self, b: usize, column: Vec<usize>) -> bool {
        match &self.columns[b] {
            Some(existing) => return *existing == column,
            None => {
                self.columns[b] = Some(column);
                self.known.push(b);
            }
        }
        let mut work = vec![b];
        while let Some(c) = work.pop() {
            let mut i = 0;
            while i < self.known.len() {
                let a = self.known[i];
                i += 1;
                let rc = self.columns[c].as_ref().unwrap();
                let ra = self.columns[a].as_ref().unwrap();
                let derived = [
                    (rc[a], conjugate(rc, ra)),
                    (inverse_index(rc, a), conjugate_inv(rc, ra)),
                    (ra[c], conjugate(ra, rc)),
                    (inverse_index(ra, c), conjugate_inv(ra, rc)),
                ];
                for (idx, col) in derived {
                    match &self.columns[idx] {
                        Some(existing) => {
                            if *existing != col {
                                return false;
                            }
                        }
                        None => {
                            self.columns[idx] = Some(col);
                            self.known.push(idx);
                            work.push(idx);
                        }
                    }
                }
            }
        }
        true
    }

    fn to_quandle(&self) -> Quandle {
        let n = self.n;
        let mut table = vec![0; n * n];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, &v) in col.as_ref().expect("complete").iter().enumerate() {
                table[i * n + j] = v;
            }
        }
        Quandle::from_raw(n, table)
    }
}

/// `s ∘ r ∘ s⁻¹`.
fn conjugate(s: &[usize], r: &[usize]) -> Vec<usize> {
    let mut out = vec![0; s.len()];
    for x in 0..s.len() {
        out[s[x]] = s[r[x]];
    }
    out
}

/// `s⁻¹ ∘ r ∘ s`.
fn conjugate_inv(s: &[usize], r: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; s.len()];
    for (x, &y) in s.iter().enumerate() {
        inv[y] = x;
    }
    (0..s.len()).map(|x| inv[r[s[x]]]).collect()
}

fn inverse_index(s: &[usize], y: usize) -> usize {
    s.iter().position(|&v| v == y).expect("bijection")
}

/// Columns allowed at element `b`: fix `b`, have the profile's pattern, and
/// commute with `r_n^ℓ` where `ℓ` is the length of `b`'s cycle in `r_n`.
fn candidates(n: usize, b: usize, last: &Perm, pattern: &Pattern) -> Vec<Vec<usize>> {
    let cycle_len = (1..)
        .scan(b, |x, _| {
            *x = last.as_zero_based()[*x];
            Some(*x)
        })
        .position(|x| x == b)
        .unwrap()
        + 1;
    let stab = last.power(cycle_len as i64);
    let stab = stab.as_zero_based();
    let others: Vec<usize> = (0..n).filter(|&x| x != b).collect();
    others
        .iter()
        .copied()
        .permutations(others.len())
        .filter_map(|imgs| {
            let mut col = vec![b; n];
            for (&x, y) in others.iter().zip(imgs) {
                col[x] = y;
            }
            let commutes = (0..n).all(|x| col[stab[x]] == stab[col[x]]);
            (commutes && Perm::from_zero_based(col.clone()).pattern() == *pattern).then_some(col)
        })
        .collect()
}

struct Search<'a> {
    candidates: &'a [Vec<Vec<usize>>],
}

impl Search<'_> {
    fn run(&self, node: SearchNode, found: &mut BTreeSet<Quandle>) {
        let Some(b) = node.first_unassigned() else {
            let q = node.to_quandle();
            if q.is_connected() {
                found.insert(canon::canonical_form(&q).expect("connected"));
            }
            return;
        };
        for col in &self.candidates[b] {
            let mut child = node.clone();
            if child.assign(b, col.clone()) {
                self.run(child, found);
            }
        }
    }
}

fn check_order(n: usize, options: &EnumOptions) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidProfile("order must be positive".into()));
    }
    if n > options.max_order {
        return Err(Error::OrderTooLarge {
            n,
            max: options.max_order,
        });
    }
    Ok(())
}

/// One canonical representative per isomorphism class of connected quandles
/// of order `n`, sorted.
pub fn enumerate_connected(n: usize) -> Result<Vec<Quandle>> {
    enumerate_connected_with(n, &EnumOptions::default(), None)
}

pub fn enumerate_connected_with(
    n: usize,
    options: &EnumOptions,
    progress: Option<&(dyn Fn(&Progress) + Sync)>,
) -> Result<Vec<Quandle>> {
    check_order(n, options)?;
    // Work units: (last-column form, candidate for the first open column).
    struct Unit {
        root: SearchNode,
        candidates: Vec<Vec<Vec<usize>>>,
    }
    let mut units = Vec::new();
    for lengths in partitions(n - 1) {
        // r_n = id with n > 1 forces every column to be the identity.
        if n > 1 && lengths.iter().all(|&l| l == 1) {
            continue;
        }
        let profile = Profile::from_cycle_lengths(&lengths);
        let last = FormN::new(profile.clone()).permutation();
        let mut root = SearchNode::new(n);
        assert!(root.assign(n - 1, last.as_zero_based().to_vec()));
        let cands: Vec<Vec<Vec<usize>>> = (0..n)
            .map(|b| {
                if b == n - 1 {
                    Vec::new()
                } else {
                    candidates(n, b, &last, profile.pattern())
                }
            })
            .collect();
        units.push(Unit {
            root,
            candidates: cands,
        });
    }

    // Split each partition on its first open column for parallelism.
    let mut jobs: Vec<(usize, Option<usize>)> = Vec::new();
    for (u, unit) in units.iter().enumerate() {
        match unit.root.first_unassigned() {
            None => jobs.push((u, None)),
            Some(b) => jobs.extend((0..unit.candidates[b].len()).map(|c| (u, Some(c)))),
        }
    }
    let done = AtomicUsize::new(0);
    let total = jobs.len();
    let found: BTreeSet<Quandle> = jobs
        .par_iter()
        .map(|&(u, choice)| {
            let unit = &units[u];
            let search = Search {
                candidates: &unit.candidates,
            };
            let mut found = BTreeSet::new();
            let mut node = unit.root.clone();
            let viable = match choice {
                None => true,
                Some(c) => {
                    let b = node.first_unassigned().unwrap();
                    node.assign(b, unit.candidates[b][c].clone())
                }
            };
            if viable {
                search.run(node, &mut found);
            }
            if let Some(report) = progress {
                let done = done.fetch_add(1, Ordering::Relaxed) + 1;
                report(&Progress {
                    order: n,
                    done,
                    total,
                });
            }
            found
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(found.into_iter().collect())
}

pub fn filter_by_profile(list: &[Quandle], profile: &Profile) -> Vec<Quandle> {
    list.iter()
        .filter(|q| q.profile().is_ok_and(|p| p == *profile))
        .cloned()
        .collect()
}

/// Catalog entries `c<n>_<k>` for an enumerated list, `k` 1-based.
pub fn to_catalog(list: &[Quandle]) -> Vec<CatalogEntry> {
    list.iter()
        .enumerate()
        .map(|(k, q)| CatalogEntry::new(format!("c{}_{}", q.order(), k + 1), q.clone()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSummary {
    pub profile: Profile,
    pub latin: bool,
    pub automorphisms: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProfileCount {
    pub classes: usize,
    pub latin: usize,
    /// Automorphism group orders, one per class.
    pub automorphism_orders: Vec<usize>,
}

/// Class counts of one order, broken down by profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub order: usize,
    pub classes: Vec<ClassSummary>,
    pub by_profile: BTreeMap<Profile, ProfileCount>,
}

impl Census {
    pub fn from_classes(order: usize, list: &[Quandle]) -> Self {
        let classes: Vec<ClassSummary> = list
            .iter()
            .map(|q| ClassSummary {
                profile: q.profile().expect("enumerated quandles are connected"),
                latin: q.is_latin(),
                automorphisms: canon::automorphisms(q).expect("naturally ordered").len(),
            })
            .collect();
        let mut by_profile: BTreeMap<Profile, ProfileCount> = BTreeMap::new();
        for c in &classes {
            let slot = by_profile.entry(c.profile.clone()).or_default();
            slot.classes += 1;
            slot.latin += c.latin as usize;
            slot.automorphism_orders.push(c.automorphisms);
        }
        Census {
            order,
            classes,
            by_profile,
        }
    }

    pub fn total(&self) -> usize {
        self.classes.len()
    }
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order {}: {} classes", self.order, self.total())?;
        for (profile, count) in &self.by_profile {
            let auts: Vec<String> = count
                .automorphism_orders
                .iter()
                .map(usize::to_string)
                .collect();
            writeln!(
                f,
                "  profile {profile}: {} classes, {} latin, |Aut| {}",
                count.classes,
                count.latin,
                auts.join(",")
            )?;
        }
        Ok(())
    }
}

pub fn census(n: usize) -> Result<Census> {
    Ok(Census::from_classes(n, &enumerate_connected(n)?))
}

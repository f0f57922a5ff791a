//! Validated quandle operation tables.
//!
//! Right-distributivity is checked in its standard form
//! `(a*b)*c = (a*c)*(b*c)`, equivalently `r_c(a*b) = r_c(a) * r_c(b)`.

use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{Pattern, Perm};

/// A finite quandle given by its operation table. Row `i`, column `j` holds
/// `i*j`. Values of this type always satisfy the three axioms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quandle {
    n: usize,
    // Row-major, 0-based entries.
    table: Vec<usize>,
}

/// Whether a step of an inner word applies `r_b` or `r_b⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// The pattern of `r_n` of a connected quandle, `{1, ℓ_1, ..., ℓ_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile(Pattern);

impl Profile {
    /// Accepts any pattern containing a 1.
    pub fn new(pattern: Pattern) -> Result<Self> {
        if !pattern.lengths().contains(&1) {
            return Err(Error::InvalidProfile(format!(
                "{pattern} has no fixed point"
            )));
        }
        Ok(Profile(pattern))
    }

    /// Profile `{1} ∪ lengths`.
    pub fn from_cycle_lengths(lengths: &[usize]) -> Self {
        Profile(Pattern::from_lengths(
            std::iter::once(1).chain(lengths.iter().copied()),
        ))
    }

    pub fn pattern(&self) -> &Pattern {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.total()
    }

    /// `ℓ_1 ≤ ... ≤ ℓ_k`: the pattern with the fixed point of `r_n` removed.
    pub fn cycle_lengths(&self) -> &[usize] {
        &self.0.lengths()[1..]
    }

    /// True for `{1, n-1}` with `n ≥ 2`.
    pub fn is_single_cycle(&self) -> bool {
        self.cycle_lengths().len() == 1
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl std::str::FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Profile::new(s.parse()?)
    }
}

/// A triple violating one of the derived identities checked by
/// [`Quandle::formula_violation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormulaViolation {
    pub formula: DerivedFormula,
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

/// The three standard identities derived from the axioms; `/` denotes the
/// dual operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DerivedFormula {
    /// `(a*b)/c = (a/c)*(b/c)`
    DualOverOp,
    /// `(a/b)*c = (a*c)/(b*c)`
    OpOverDual,
    /// `a*(b*c) = ((a/c)*b)*c`
    LeftConjugation,
}

impl DerivedFormula {
    pub const ALL: [DerivedFormula; 3] = [
        DerivedFormula::DualOverOp,
        DerivedFormula::OpOverDual,
        DerivedFormula::LeftConjugation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DerivedFormula::DualOverOp => "dual-over-op",
            DerivedFormula::OpOverDual => "op-over-dual",
            DerivedFormula::LeftConjugation => "left-conjugation",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == s)
    }
}

impl Quandle {
    /// Validates a 1-based square table against the axioms, reporting the
    /// first violation found.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    row: i + 1,
                    len: row.len(),
                    n,
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v == 0 || v > n {
                    return Err(Error::EntryOutOfRange {
                        row: i + 1,
                        col: j + 1,
                        value: v,
                        n,
                    });
                }
                table.push(v - 1);
            }
        }
        let q = Quandle { n, table };
        q.validate()?;
        Ok(q)
    }

    /// Trusted constructor for tables known to be quandles (reorderings of
    /// valid quandles, search leaves).
    pub(crate) fn from_raw(n: usize, table: Vec<usize>) -> Self {
        let q = Quandle { n, table };
        debug_assert!(q.validate().is_ok());
        q
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            if self.at(i, i) != i {
                return Err(Error::NotIdempotent(i + 1));
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for i in 0..n {
                if std::mem::replace(&mut seen[self.at(i, j)], true) {
                    return Err(Error::ColumnNotBijective(j + 1));
                }
            }
        }
        let first = (0..n).into_par_iter().find_map_first(|a| {
            for b in 0..n {
                let ab = self.at(a, b);
                for c in 0..n {
                    if self.at(ab, c) != self.at(self.at(a, c), self.at(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
            None
        });
        match first {
            Some((a, b, c)) => Err(Error::NotRightDistributive {
                a: a + 1,
                b: b + 1,
                c: c + 1,
            }),
            None => Ok(()),
        }
    }

    /// The trivial quandle `a*b = a`.
    pub fn trivial(n: usize) -> Self {
        assert!(n > 0, "quandles are nonempty");
        let table = (0..n).flat_map(|i| std::iter::repeat_n(i, n)).collect();
        Quandle::from_raw(n, table)
    }

    /// The dihedral quandle on residues mod `n`: `i*j = 2j - i`, with residue
    /// `r` labelled `r + 1`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0, "quandles are nonempty");
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push((2 * j + n - i) % n);
            }
        }
        Quandle::from_raw(n, table)
    }

    /// The conjugation quandle `a*b = b⁻¹ab` of a group given by a 1-based
    /// Cayley table (`cayley[x-1][y-1] = x·y`).
    pub fn conjugation(cayley: &[Vec<usize>]) -> Result<Self> {
        let m = cayley.len();
        if m == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (x, row) in cayley.iter().enumerate() {
            if row.len() != m {
                return Err(Error::NotAGroup(format!("row {} is ragged", x + 1)));
            }
            if let Some(&v) = row.iter().find(|&&v| v == 0 || v > m) {
                return Err(Error::NotAGroup(format!("entry {v} out of range")));
            }
        }
        let mul = |x: usize, y: usize| cayley[x][y] - 1;
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    if mul(mul(x, y), z) != mul(x, mul(y, z)) {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({},{},{})",
                            x + 1,
                            y + 1,
                            z + 1
                        )));
                    }
                }
            }
        }
        let e = (0..m)
            .find(|&e| (0..m).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        let mut inv = vec![0; m];
        for (x, slot) in inv.iter_mut().enumerate() {
            *slot = (0..m)
                .find(|&y| mul(x, y) == e && mul(y, x) == e)
                .ok_or_else(|| Error::NotAGroup(format!("{} has no inverse", x + 1)))?;
        }
        let mut table = Vec::with_capacity(m * m);
        for a in 0..m {
            for (b, &b_inv) in inv.iter().enumerate() {
                table.push(mul(mul(b_inv, a), b));
            }
        }
        let q = Quandle { n: m, table };
        q.validate()
            .expect("conjugation in a group always yields a quandle");
        Ok(q)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub(crate) fn at(&self, i: usize, j: usize) -> usize {
        self.table[i * self.n + j]
    }

    /// The table as 1-based rows.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.n)
            .map(|r| r.iter().map(|&v| v + 1).collect())
            .collect()
    }

    fn check(&self, x: usize) -> Result<usize> {
        if x == 0 || x > self.n {
            Err(Error::ElementOutOfRange {
                element: x,
                n: self.n,
            })
        } else {
            Ok(x - 1)
        }
    }

    /// `a*b`.
    pub fn op(&self, a: usize, b: usize) -> Result<usize> {
        Ok(self.at(self.check(a)?, self.check(b)?) + 1)
    }

    /// The unique `c` with `c*b = a`.
    pub fn inv_op(&self, a: usize, b: usize) -> Result<usize> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(self.inv_at(a, b) + 1)
    }

    pub(crate) fn inv_at(&self, a: usize, b: usize) -> usize {
        (0..self.n)
            .find(|&c| self.at(c, b) == a)
            .expect("columns are bijections")
    }

    /// The dual quandle, with operation `(a, b) ↦ r_b⁻¹(a)`.
    pub fn dual(&self) -> Quandle {
        let n = self.n;
        let mut table = vec![0; n * n];
        for b in 0..n {
            for c in 0..n {
                table[self.at(c, b) * n + b] = c;
            }
        }
        let d = Quandle { n, table };
        debug_assert!(d.validate().is_ok(), "the dual of a quandle is a quandle");
        d
    }

    pub(crate) fn column(&self, b: usize) -> Vec<usize> {
        (0..self.n).map(|x| self.at(x, b)).collect()
    }

    /// `r_b : x ↦ x*b`, read from column `b`.
    pub fn right_translation(&self, b: usize) -> Result<Perm> {
        let b = self.check(b)?;
        Ok(Perm::from_zero_based(self.column(b)))
    }

    /// `l_a : x ↦ a*x`, when it is a bijection.
    pub fn left_translation(&self, a: usize) -> Result<Option<Perm>> {
        let a = self.check(a)?;
        let row = self.table[a * self.n..(a + 1) * self.n].to_vec();
        Ok(crate::perm::is_bijection(&row).then(|| Perm::from_zero_based(row)))
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.at(i, j) == i))
    }

    /// Every row is a bijection.
    pub fn is_latin(&self) -> bool {
        self.table.chunks(self.n).all(crate::perm::is_bijection)
    }

    /// Orbit of a 0-based element under all `r_b` and `r_b⁻¹`.
    pub(crate) fn orbit(&self, seed: usize) -> Vec<bool> {
        let n = self.n;
        let mut seen = vec![false; n];
        seen[seed] = true;
        let mut queue = VecDeque::from([seed]);
        while let Some(x) = queue.pop_front() {
            for b in 0..n {
                for y in [self.at(x, b), self.inv_at(x, b)] {
                    if !std::mem::replace(&mut seen[y], true) {
                        queue.push_back(y);
                    }
                }
            }
        }
        seen
    }

    /// The orbit of element 1 is everything. Orbits partition the set, so one
    /// seed decides it.
    pub fn is_connected(&self) -> bool {
        self.orbit(0).into_iter().all(|s| s)
    }

    pub fn pattern_sequence(&self) -> Vec<Pattern> {
        (0..self.n)
            .map(|b| Perm::from_zero_based(self.column(b)).pattern())
            .collect()
    }

    /// The pattern of `r_n`; only defined here for connected quandles.
    pub fn profile(&self) -> Result<Profile> {
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        Ok(self.last_column_profile())
    }

    pub(crate) fn last_column_profile(&self) -> Profile {
        Profile(Perm::from_zero_based(self.column(self.n - 1)).pattern())
    }

    /// First triple breaking one of the derived identities, if any.
    pub fn formula_violation(&self) -> Option<FormulaViolation> {
        let n = self.n;
        let dual = self.dual();
        let op = |a, b| self.at(a, b);
        let inv = |a, b| dual.at(a, b);
        (0..n).into_par_iter().find_map_first(|a| {
            for b in 0..n {
                for c in 0..n {
                    let checks = [
                        inv(op(a, b), c) == op(inv(a, c), inv(b, c)),
                        op(inv(a, b), c) == inv(op(a, c), op(b, c)),
                        op(a, op(b, c)) == op(op(inv(a, c), b), c),
                    ];
                    if let Some(k) = checks.iter().position(|ok| !ok) {
                        return Some(FormulaViolation {
                            formula: DerivedFormula::ALL[k],
                            a: a + 1,
                            b: b + 1,
                            c: c + 1,
                        });
                    }
                }
            }
            None
        })
    }

    /// A shortest word `[(i_1, ε_1), ..., (i_m, ε_m)]` whose composite
    /// `r_{i_m}^{ε_m} ∘ ... ∘ r_{i_1}^{ε_1}` sends `from` to `to`. Breadth-first,
    /// trying every `r_b` before any `r_b⁻¹`.
    pub fn inner_transport(&self, from: usize, to: usize) -> Result<Vec<(usize, Sign)>> {
        let (from, to) = (self.check(from)?, self.check(to)?);
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        let n = self.n;
        let mut parent: Vec<Option<(usize, usize, Sign)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        'bfs: while let Some(x) = queue.pop_front() {
            for sign in [Sign::Plus, Sign::Minus] {
                for b in 0..n {
                    let y = match sign {
                        Sign::Plus => self.at(x, b),
                        Sign::Minus => self.inv_at(x, b),
                    };
                    if !std::mem::replace(&mut seen[y], true) {
                        parent[y] = Some((x, b, sign));
                        if y == to {
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                }
            }
        }
        let mut word = Vec::new();
        let mut cur = to;
        while let Some((prev, b, sign)) = parent[cur] {
            word.push((b + 1, sign));
            cur = prev;
        }
        word.reverse();
        let composite = self.word_composite(&word);
        assert_eq!(composite.apply(from + 1), to + 1, "transport word replays");
        Ok(word)
    }

    /// The automorphism `r_{i_m}^{ε_m} ∘ ... ∘ r_{i_1}^{ε_1}` of a word.
    pub fn word_composite(&self, word: &[(usize, Sign)]) -> Perm {
        word.iter().fold(Perm::identity(self.n), |acc, &(b, sign)| {
            let r = Perm::from_zero_based(self.column(b - 1));
            let step = match sign {
                Sign::Plus => r,
                Sign::Minus => r.inverse(),
            };
            step.compose_unchecked(&acc)
        })
    }

    /// `σ(a*b) = σ(a)*σ(b)` for all `a, b`.
    pub fn is_automorphism(&self, sigma: &Perm) -> bool {
        if sigma.len() != self.n {
            return false;
        }
        let s = sigma.as_zero_based();
        (0..self.n).all(|a| (0..self.n).all(|b| s[self.at(a, b)] == self.at(s[a], s[b])))
    }
}

impl fmt::Debug for Quandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Quandle(order {})", self.n)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables;

    /// Plain triple loop over the 1-based table, sharing nothing with
    /// `validate`.
    fn axioms_hold(rows: &[Vec<usize>]) -> bool {
        let n = rows.len();
        let op = |a: usize, b: usize| rows[a - 1][b - 1];
        if rows
            .iter()
            .any(|r| r.len() != n || r.iter().any(|&v| v < 1 || v > n))
        {
            return false;
        }
        let idem = (1..=n).all(|a| op(a, a) == a);
        let cols = (1..=n).all(|b| {
            let mut col: Vec<usize> = (1..=n).map(|a| op(a, b)).collect();
            col.sort();
            col == (1..=n).collect::<Vec<_>>()
        });
        let mut dist = true;
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    dist &= op(op(a, b), c) == op(op(a, c), op(b, c));
                }
            }
        }
        idem && cols && dist
    }

    #[test]
    fn paper_tables_validate() {
        for rows in [tables::Q61, tables::Q72, tables::Q52, tables::Q53] {
            let rows = tables::to_rows(rows);
            assert!(axioms_hold(&rows));
            Quandle::from_table(&rows).unwrap();
        }
    }

    #[test]
    fn diagonal_violation() {
        let mut rows = tables::to_rows(tables::Q61);
        rows[0][0] = 2;
        assert_eq!(Quandle::from_table(&rows), Err(Error::NotIdempotent(1)));
    }

    #[test]
    fn mutated_entry_is_rejected() {
        let mut rows = tables::to_rows(tables::Q61);
        rows[2][3] = 1;
        assert!(!axioms_hold(&rows));
        // Column 4 now reads 6,5,1,4,2,1.
        assert_eq!(
            Quandle::from_table(&rows),
            Err(Error::ColumnNotBijective(4))
        );
    }

    #[test]
    fn distributivity_violation_is_found() {
        // Columns are bijections fixing the diagonal, but r_3 ∘ r_2 breaks
        // distributivity.
        let rows = vec![vec![1, 3, 2], vec![2, 2, 1], vec![3, 1, 3]];
        assert!(!axioms_hold(&rows));
        assert!(matches!(
            Quandle::from_table(&rows),
            Err(Error::NotRightDistributive { .. })
        ));
    }

    #[test]
    fn from_table_agrees_with_triple_loop_on_all_order_3_tables() {
        let n: usize = 3;
        let total = n.pow((n * n) as u32);
        let mut accepted = 0;
        for code in 0..total {
            let mut c = code;
            let rows: Vec<Vec<usize>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let v = c % n + 1;
                            c /= n;
                            v
                        })
                        .collect()
                })
                .collect();
            let ok = Quandle::from_table(&rows).is_ok();
            assert_eq!(ok, axioms_hold(&rows), "{rows:?}");
            accepted += ok as usize;
        }
        // Trivial, dihedral, and the three one-transposition quandles.
        assert_eq!(accepted, 5);
    }

    #[test]
    fn shape_errors() {
        assert_eq!(Quandle::from_table(&[]), Err(Error::EmptyTable));
        assert!(matches!(
            Quandle::from_table(&[vec![1, 2], vec![1]]),
            Err(Error::NotSquare { row: 2, .. })
        ));
        assert!(matches!(
            Quandle::from_table(&[vec![1, 3], vec![1, 2]]),
            Err(Error::EntryOutOfRange { value: 3, .. })
        ));
    }

    #[test]
    fn op_and_inverse() {
        let q = tables::q61();
        assert_eq!(q.op(3, 4).unwrap(), 3);
        assert_eq!(q.inv_op(3, 4).unwrap(), 3);
        for a in 1..=6 {
            assert_eq!(q.op(a, a).unwrap(), a);
            for b in 1..=6 {
                assert_eq!(q.op(q.inv_op(a, b).unwrap(), b).unwrap(), a);
            }
        }
        assert!(matches!(q.op(7, 1), Err(Error::ElementOutOfRange { .. })));
        assert!(q.inv_op(0, 1).is_err());
    }

    #[test]
    fn dual_examples() {
        for q in [tables::q61(), tables::q72(), Quandle::dihedral(5)] {
            assert_eq!(q.dual().dual(), q);
        }
        assert_eq!(Quandle::trivial(4).dual(), Quandle::trivial(4));
        let q72 = tables::q72();
        let d = q72.dual();
        for j in 1..=7 {
            assert_eq!(
                d.right_translation(j).unwrap(),
                q72.right_translation(j).unwrap().inverse()
            );
        }
        Quandle::from_table(&d.rows()).unwrap();
    }

    #[test]
    fn right_translations() {
        let q61 = tables::q61();
        assert_eq!(
            q61.right_translation(4).unwrap().to_string(),
            "(1 6)(2 5)(3)(4)"
        );
        let q72 = tables::q72();
        let r2 = q72.right_translation(2).unwrap();
        let expect = Perm::from_cycles(7, &[vec![1, 5, 7], vec![3, 6, 4]]).unwrap();
        assert_eq!(r2, expect);
        assert!(Quandle::trivial(4)
            .right_translation(3)
            .unwrap()
            .is_identity());
    }

    #[test]
    fn latin_examples() {
        assert!(!tables::q61().is_latin());
        assert!(tables::q52().is_latin());
        assert!(tables::q53().is_latin());
        assert!(!Quandle::trivial(2).is_latin());
        assert!(Quandle::trivial(1).is_latin());
        assert!(tables::q61().left_translation(1).unwrap().is_none());
    }

    #[test]
    fn connectivity_examples() {
        assert!(tables::q61().is_connected());
        assert!(!Quandle::trivial(2).is_connected());
        assert!(Quandle::dihedral(3).is_connected());
        assert!(!Quandle::dihedral(4).is_connected());
        assert!(Quandle::trivial(1).is_connected());
    }

    #[test]
    fn one_seed_agrees_with_all_seeds() {
        let mut corpus = vec![tables::q61(), tables::q72(), tables::q52(), tables::q53()];
        corpus.extend((1..=8).map(Quandle::dihedral));
        corpus.extend((1..=4).map(Quandle::trivial));
        corpus.push(s3_conjugation());
        for q in corpus {
            let all = (0..q.order()).all(|s| q.orbit(s).into_iter().all(|x| x));
            assert_eq!(q.is_connected(), all);
        }
    }

    #[test]
    fn pattern_sequences_and_profiles() {
        let q61 = tables::q61();
        let seq = q61.pattern_sequence();
        assert!(seq.iter().all(|p| p.to_string() == "{1,1,2,2}"));
        assert_eq!(q61.profile().unwrap().to_string(), "{1,1,2,2}");
        let trivial = Quandle::trivial(3).pattern_sequence();
        assert!(trivial.iter().all(|p| p.lengths() == [1, 1, 1]));
        let q72 = tables::q72();
        assert!(q72
            .pattern_sequence()
            .iter()
            .all(|p| p.lengths() == [1, 3, 3]));
        assert_eq!(tables::q52().profile().unwrap().to_string(), "{1,4}");
        assert_eq!(Quandle::trivial(2).profile(), Err(Error::NotConnected));
        let p = tables::q52().profile().unwrap();
        assert_eq!(p.cycle_lengths(), &[4]);
        assert!(p.is_single_cycle());
        assert_eq!(p.order(), 5);
    }

    #[test]
    fn translations_are_automorphisms() {
        for q in [
            tables::q61(),
            tables::q72(),
            Quandle::dihedral(6),
            s3_conjugation(),
        ] {
            for b in 1..=q.order() {
                assert!(q.is_automorphism(&q.right_translation(b).unwrap()));
            }
        }
    }

    #[test]
    fn derived_formulas_hold() {
        for q in [
            tables::q61(),
            tables::q72(),
            Quandle::trivial(1),
            Quandle::dihedral(6),
            s3_conjugation(),
        ] {
            assert_eq!(q.formula_violation(), None);
        }
    }

    fn s3_cayley() -> Vec<Vec<usize>> {
        use itertools::Itertools;
        let elems: Vec<Vec<usize>> = (0..3).permutations(3).collect();
        let idx = |p: &Vec<usize>| elems.iter().position(|e| e == p).unwrap() + 1;
        elems
            .iter()
            .map(|x| {
                elems
                    .iter()
                    .map(|y| idx(&(0..3).map(|i| x[y[i]]).collect()))
                    .collect()
            })
            .collect()
    }

    fn s3_conjugation() -> Quandle {
        Quandle::conjugation(&s3_cayley()).unwrap()
    }

    #[test]
    fn conjugation_quandles() {
        let z3 = vec![vec![1, 2, 3], vec![2, 3, 1], vec![3, 1, 2]];
        assert_eq!(Quandle::conjugation(&z3).unwrap(), Quandle::trivial(3));
        assert_eq!(
            Quandle::conjugation(&[vec![1]]).unwrap(),
            Quandle::trivial(1)
        );
        let s3 = s3_conjugation();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_connected());
        assert!(matches!(
            Quandle::conjugation(&[vec![1, 1], vec![1, 1]]),
            Err(Error::NotAGroup(_))
        ));
        assert!(matches!(
            Quandle::conjugation(&[vec![2, 1], vec![1, 1]]),
            Err(Error::NotAGroup(_))
        ));
    }

    #[test]
    fn dihedral_examples() {
        let d3 = Quandle::dihedral(3);
        assert!(d3.is_connected() && d3.is_latin());
        assert_eq!(d3.profile().unwrap().to_string(), "{1,2}");
        assert_eq!(Quandle::dihedral(1), Quandle::trivial(1));
        let d5 = Quandle::dihedral(5);
        assert!(d5.is_connected());
        assert_eq!(d5.profile().unwrap().to_string(), "{1,2,2}");
    }

    #[test]
    fn inner_transport_words_replay() {
        let q61 = tables::q61();
        assert!(q61.inner_transport(4, 4).unwrap().is_empty());
        let word = q61.inner_transport(1, 6).unwrap();
        let w = q61.word_composite(&word);
        assert_eq!(w.apply(1), 6);
        assert!(q61.is_automorphism(&w));
        let q72 = tables::q72();
        let word = q72.inner_transport(3, 7).unwrap();
        assert_eq!(q72.word_composite(&word).apply(3), 7);
        assert_eq!(word.len(), 1);
        assert_eq!(
            Quandle::trivial(2).inner_transport(1, 2),
            Err(Error::NotConnected)
        );
        for q in [tables::q61(), tables::q72(), tables::q52()] {
            let n = q.order();
            for a in 1..=n {
                for b in 1..=n {
                    let w = q.word_composite(&q.inner_transport(a, b).unwrap());
                    assert_eq!(w.apply(a), b);
                    assert!(q.is_automorphism(&w));
                }
            }
        }
    }
}

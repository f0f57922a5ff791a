//! Instance checks of the structural results about natural reorderings, plus
//! report-only checks of two open conjectures.
//!
//! Each check yields a [`VerificationReport`] serialized as one line:
//!
//! ```text
//! CLAIM <id> <pass|fail|report> scope=<id> witness=<witness|-> [note=<note>]
//! ```
//!
//! Proved results report `pass` or `fail`; a `fail` means an implementation
//! bug. Report-only claims always use `report` and put their outcome in the
//! note. Every witness can be re-checked with [`replay`].

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;

use crate::canon::{self, FormN, MAX_BRUTE_FORCE_ORDER};
use crate::catalog_io::CatalogEntry;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::quandle::{DerivedFormula, FormulaViolation, Profile, Quandle};

/// Bijections are checked exhaustively for the naturality criterion up to
/// this order, sampled above it.
pub const EXHAUSTIVE_BIJECTION_ORDER: usize = 7;
const SAMPLED_BIJECTIONS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    /// The three derived identities hold for all triples.
    Formulas,
    /// All right translations of a connected quandle are conjugate.
    TranslationsConjugate,
    /// `ν` is natural w.r.t. `r_{ν⁻¹(n)}` iff the relabeled table is canonical.
    NaturalityCriterion,
    /// Inner automorphisms move any element to `n`.
    TransportToLast,
    /// `ν ∘ μ` is natural w.r.t. `r_q` when `μ` is and `ν` is natural w.r.t. `r_n`.
    NaturalComposite,
    /// Inverses of reorderings natural w.r.t. `r_n` are natural w.r.t. `r_n`.
    NaturalInverse,
    /// Reorderings natural w.r.t. `r_n` form a subgroup.
    NaturalSubgroup,
    /// Every automorphism of a naturally ordered quandle is natural.
    AutomorphismsNatural,
    /// Every natural reordering's table is reached by one natural w.r.t. `r_n`.
    CanonicalCoincidence,
    /// ... by one that also maps a longest block onto the last block.
    CanonicalBlockAlignment,
    /// ... by one fixing the last block pointwise, when `ℓ_{k-1} < ℓ_k`.
    CanonicalTailFixing,
    /// Strict profiles have at most `ℓ_1⋯ℓ_{k-1}` canonical matrices.
    CanonicalCountBound,
    /// Profiles `{1,n-1}` and `{1,1,n-2}`: every natural reordering is an automorphism.
    AutomorphismsAllNatural,
    /// Profile `{1,n-1}` implies latin.
    SingleCycleLatin,
    /// A latin quandle whose profile is not `{1,n-1}` exists (report-only).
    SingleCycleLatinConverse,
    /// `ℓ_k` is divisible by every `ℓ_i` (report-only).
    ConjectureDivisibility,
    /// Tail fixing also works when `ℓ_{k-1} = ℓ_k` (report-only).
    ConjectureTailFixing,
    /// `r_k = r_n^k r_{n-1} r_n^{±k}` for profile `{1,n-1}` (report-only).
    TranslationPowerFormula,
}

impl Claim {
    pub const ALL: [Claim; 18] = [
        Claim::Formulas,
        Claim::TranslationsConjugate,
        Claim::NaturalityCriterion,
        Claim::TransportToLast,
        Claim::NaturalComposite,
        Claim::NaturalInverse,
        Claim::NaturalSubgroup,
        Claim::AutomorphismsNatural,
        Claim::CanonicalCoincidence,
        Claim::CanonicalBlockAlignment,
        Claim::CanonicalTailFixing,
        Claim::CanonicalCountBound,
        Claim::AutomorphismsAllNatural,
        Claim::SingleCycleLatin,
        Claim::SingleCycleLatinConverse,
        Claim::ConjectureDivisibility,
        Claim::ConjectureTailFixing,
        Claim::TranslationPowerFormula,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::Formulas => "derived-formulas",
            Claim::TranslationsConjugate => "translations-conjugate",
            Claim::NaturalityCriterion => "naturality-criterion",
            Claim::TransportToLast => "transport-to-last",
            Claim::NaturalComposite => "natural-composite",
            Claim::NaturalInverse => "natural-inverse",
            Claim::NaturalSubgroup => "natural-subgroup",
            Claim::AutomorphismsNatural => "automorphisms-natural",
            Claim::CanonicalCoincidence => "canonical-coincidence",
            Claim::CanonicalBlockAlignment => "canonical-block-alignment",
            Claim::CanonicalTailFixing => "canonical-tail-fixing",
            Claim::CanonicalCountBound => "canonical-count-bound",
            Claim::AutomorphismsAllNatural => "automorphisms-all-natural",
            Claim::SingleCycleLatin => "single-cycle-latin",
            Claim::SingleCycleLatinConverse => "single-cycle-latin-converse",
            Claim::ConjectureDivisibility => "conjecture-divisibility",
            Claim::ConjectureTailFixing => "conjecture-tail-fixing",
            Claim::TranslationPowerFormula => "translation-power-formula",
        }
    }

    /// Report-only claims never fail a run.
    pub fn is_report_only(self) -> bool {
        matches!(
            self,
            Claim::SingleCycleLatinConverse
                | Claim::ConjectureDivisibility
                | Claim::ConjectureTailFixing
                | Claim::TranslationPowerFormula
        )
    }

    fn is_catalog_level(self) -> bool {
        matches!(
            self,
            Claim::SingleCycleLatin
                | Claim::SingleCycleLatinConverse
                | Claim::ConjectureDivisibility
        )
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| format!("unknown claim {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Report,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Report => "report",
        })
    }
}

/// Evidence attached to a report: a counterexample for failures, or the
/// object a report-only claim found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Perm(Perm),
    PermPair(Perm, Perm),
    Formula(FormulaViolation),
    Pair(usize, usize),
    Element(usize),
    Quandle(String),
    Count(usize),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Perm(p) => write!(f, "perm:{}", p.image_notation()),
            Witness::PermPair(a, b) => {
                write!(f, "perms:{};{}", a.image_notation(), b.image_notation())
            }
            Witness::Formula(v) => write!(f, "{}:{},{},{}", v.formula.name(), v.a, v.b, v.c),
            Witness::Pair(i, j) => write!(f, "pair:{i},{j}"),
            Witness::Element(k) => write!(f, "element:{k}"),
            Witness::Quandle(id) => write!(f, "quandle:{id}"),
            Witness::Count(c) => write!(f, "count:{c}"),
        }
    }
}

impl FromStr for Witness {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bad = || format!("bad witness {s:?}");
        let (kind, body) = s.split_once(':').ok_or_else(bad)?;
        let nums = |body: &str| -> std::result::Result<Vec<usize>, String> {
            body.split(',')
                .map(|t| t.parse().map_err(|_| bad()))
                .collect()
        };
        let perm = |body: &str| Perm::parse_image_notation(body).map_err(|_| bad());
        Ok(match kind {
            "perm" => Witness::Perm(perm(body)?),
            "perms" => {
                let (a, b) = body.split_once(';').ok_or_else(bad)?;
                Witness::PermPair(perm(a)?, perm(b)?)
            }
            "pair" => match nums(body)?[..] {
                [i, j] => Witness::Pair(i, j),
                _ => return Err(bad()),
            },
            "element" => Witness::Element(body.parse().map_err(|_| bad())?),
            "quandle" => Witness::Quandle(body.to_string()),
            "count" => Witness::Count(body.parse().map_err(|_| bad())?),
            name => {
                let formula = DerivedFormula::from_name(name).ok_or_else(bad)?;
                match nums(body)?[..] {
                    [a, b, c] => Witness::Formula(FormulaViolation { formula, a, b, c }),
                    _ => return Err(bad()),
                }
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub claim: Claim,
    pub status: Status,
    /// Catalog id of the checked quandle, or `catalog` for catalog-wide
    /// claims.
    pub scope: String,
    pub order: Option<usize>,
    pub witness: Option<Witness>,
    /// Whitespace-free annotation; outcome of report-only claims.
    pub note: Option<String>,
}

pub const CATALOG_SCOPE: &str = "catalog";

impl VerificationReport {
    fn new(claim: Claim, status: Status) -> Self {
        VerificationReport {
            claim,
            status,
            scope: "-".into(),
            order: None,
            witness: None,
            note: None,
        }
    }

    fn pass(claim: Claim) -> Self {
        Self::new(claim, Status::Pass)
    }

    fn fail(claim: Claim, witness: Witness) -> Self {
        Self::new(claim, Status::Fail).witness(witness)
    }

    fn report(claim: Claim, note: impl Into<String>) -> Self {
        Self::new(claim, Status::Report).note(note)
    }

    fn from_counterexample(claim: Claim, w: Option<Witness>) -> Self {
        match w {
            Some(w) => Self::fail(claim, w),
            None => Self::pass(claim),
        }
    }

    fn witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_scope(mut self, scope: &str, order: Option<usize>) -> Self {
        self.scope = scope.to_string();
        self.order = order;
        self
    }

    pub fn is_theorem_failure(&self) -> bool {
        self.status == Status::Fail && !self.claim.is_report_only()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let witness = self
            .witness
            .as_ref()
            .map_or_else(|| "-".to_string(), Witness::to_string);
        write!(
            f,
            "CLAIM {} {} scope={} witness={}",
            self.claim, self.status, self.scope, witness
        )?;
        if let Some(note) = &self.note {
            write!(f, " note={note}")?;
        }
        Ok(())
    }
}

impl FromStr for VerificationReport {
    type Err = String;

    fn from_str(line: &str) -> std::result::Result<Self, String> {
        let bad = || format!("bad report line {line:?}");
        let mut fields = line.split_whitespace();
        if fields.next() != Some("CLAIM") {
            return Err(bad());
        }
        let claim: Claim = fields.next().ok_or_else(bad)?.parse()?;
        let status = match fields.next().ok_or_else(bad)? {
            "pass" => Status::Pass,
            "fail" => Status::Fail,
            "report" => Status::Report,
            _ => return Err(bad()),
        };
        let mut value = |key: &str| {
            fields
                .next()
                .and_then(|f| f.strip_prefix(key))
                .map(str::to_string)
        };
        let scope = value("scope=").ok_or_else(bad)?;
        let witness = match value("witness=").ok_or_else(bad)?.as_str() {
            "-" => None,
            w => Some(w.parse()?),
        };
        let note = value("note=");
        Ok(VerificationReport {
            claim,
            status,
            scope,
            order: None,
            witness,
            note,
        })
    }
}

fn require_natural(q: &Quandle) -> Result<()> {
    if canon::is_naturally_ordered(q)? {
        Ok(())
    } else {
        Err(Error::NotNaturallyOrdered)
    }
}

/// The per-μ data behind the coincidence, alignment and tail-fixing checks.
struct Coincidence {
    mu: Perm,
    matching: Vec<Perm>,
}

/// For every natural μ, the reorderings natural w.r.t. `r_n` yielding the
/// same table.
fn coincidences(q: &Quandle) -> Result<Vec<Coincidence>> {
    let n = q.order();
    let mut by_table: HashMap<Quandle, Vec<Perm>> = HashMap::new();
    for nu in canon::natural_reorderings_wrt(q, n)? {
        by_table
            .entry(canon::apply_reordering(q, &nu.perm)?)
            .or_default()
            .push(nu.perm);
    }
    let all = canon::all_natural_reorderings(q)?;
    Ok(all
        .into_par_iter()
        .map(|mu| {
            let table = canon::apply_reordering(q, &mu.perm).expect("sizes match");
            Coincidence {
                matching: by_table.get(&table).cloned().unwrap_or_default(),
                mu: mu.perm,
            }
        })
        .collect())
}

/// `Σ_{j<s} ℓ_j` for each block `s`, 0-based positions.
fn block_offsets(lengths: &[usize]) -> Vec<usize> {
    lengths
        .iter()
        .scan(0, |acc, &l| {
            let start = *acc;
            *acc += l;
            Some(start)
        })
        .collect()
}

/// Some block `m` with `ℓ_m = ℓ_k` goes positionally onto the last block.
fn maps_longest_block_to_last(nu: &Perm, lengths: &[usize]) -> bool {
    let Some(&last_len) = lengths.last() else {
        return true;
    };
    let offsets = block_offsets(lengths);
    let last_start = *offsets.last().unwrap();
    lengths.iter().zip(&offsets).any(|(&len, &start)| {
        len == last_len && (1..=len).all(|i| nu.apply(start + i) == last_start + i)
    })
}

/// `ν(i) = i` from the start of the last block through `n`.
fn fixes_tail(nu: &Perm, lengths: &[usize]) -> bool {
    let tail = lengths.iter().rev().skip(1).sum::<usize>() + 1;
    (tail..=nu.len()).all(|i| nu.apply(i) == i)
}

/// The strict-inequality case of tail fixing: `k = 1` or `ℓ_{k-1} < ℓ_k`.
fn tail_fixing_guaranteed(lengths: &[usize]) -> bool {
    match lengths {
        [] | [_] => true,
        [.., a, b] => a < b,
    }
}

pub fn check_formulas(q: &Quandle) -> VerificationReport {
    VerificationReport::from_counterexample(
        Claim::Formulas,
        q.formula_violation().map(Witness::Formula),
    )
}

/// Brute-force automorphisms are all natural. Requires natural order and
/// `n ≤ 9`.
pub fn verify_automorphism_theorem(q: &Quandle) -> Result<VerificationReport> {
    require_natural(q)?;
    let natural: HashSet<Perm> = canon::all_natural_reorderings(q)?
        .into_iter()
        .map(|r| r.perm)
        .collect();
    let auts = canon::brute_force_automorphisms(q)?;
    let bad = auts.iter().find(|s| !natural.contains(s)).cloned();
    Ok(
        VerificationReport::from_counterexample(
            Claim::AutomorphismsNatural,
            bad.map(Witness::Perm),
        )
        .note(format!(
            "automorphisms={},natural={}",
            auts.len(),
            natural.len()
        )),
    )
}

/// Coincidence, block alignment, and (where guaranteed) tail fixing, checked
/// simultaneously on one matching `ν` per `μ`.
pub fn verify_canonical_theorem(q: &Quandle) -> Result<Vec<VerificationReport>> {
    require_natural(q)?;
    let profile = q.profile()?;
    let lengths = profile.cycle_lengths();
    let rows = coincidences(q)?;

    let missing = rows.iter().find(|r| r.matching.is_empty());
    let coincidence = VerificationReport::from_counterexample(
        Claim::CanonicalCoincidence,
        missing.map(|r| Witness::Perm(r.mu.clone())),
    );

    let unaligned = rows.iter().find(|r| {
        !r.matching
            .iter()
            .any(|nu| maps_longest_block_to_last(nu, lengths))
    });
    let mut alignment = VerificationReport::from_counterexample(
        Claim::CanonicalBlockAlignment,
        unaligned.map(|r| Witness::Perm(r.mu.clone())),
    );
    if unaligned.is_some() {
        // Separate the weaker reading, where the aligned ν need not match.
        let weak = canon::natural_reorderings_wrt(q, q.order())?
            .iter()
            .any(|nu| maps_longest_block_to_last(&nu.perm, lengths));
        alignment = alignment.note(if weak {
            "weak-reading-holds"
        } else {
            "weak-reading-fails"
        });
    }

    let tail = if tail_fixing_guaranteed(lengths) {
        let unfixed = rows
            .iter()
            .find(|r| !r.matching.iter().any(|nu| fixes_tail(nu, lengths)));
        VerificationReport::from_counterexample(
            Claim::CanonicalTailFixing,
            unfixed.map(|r| Witness::Perm(r.mu.clone())),
        )
    } else {
        VerificationReport::pass(Claim::CanonicalTailFixing).note("vacuous")
    };
    Ok(vec![coincidence, alignment, tail])
}

/// Tail fixing when the two longest blocks have equal length (report-only).
pub fn check_conjecture_tail_fixing(q: &Quandle) -> Result<VerificationReport> {
    require_natural(q)?;
    let profile = q.profile()?;
    let lengths = profile.cycle_lengths();
    if tail_fixing_guaranteed(lengths) {
        return Ok(VerificationReport::report(
            Claim::ConjectureTailFixing,
            "not-applicable",
        ));
    }
    let rows = coincidences(q)?;
    let failures: Vec<&Coincidence> = rows
        .iter()
        .filter(|r| !r.matching.iter().any(|nu| fixes_tail(nu, lengths)))
        .collect();
    let report = VerificationReport::report(
        Claim::ConjectureTailFixing,
        if failures.is_empty() {
            format!("holds,checked={}", rows.len())
        } else {
            format!("fails,failures={},checked={}", failures.len(), rows.len())
        },
    );
    Ok(match failures.first() {
        Some(r) => report.witness(Witness::Perm(r.mu.clone())),
        None => report,
    })
}

fn divides_last(profile: &Profile) -> bool {
    let lengths = profile.cycle_lengths();
    lengths
        .last()
        .is_none_or(|&last| lengths.iter().all(|&l| last % l == 0))
}

/// Divisibility of the longest cycle length by all others (report-only).
pub fn check_conjecture_divisibility(catalog: &[CatalogEntry]) -> VerificationReport {
    let mut consistent = 0;
    let mut violations = Vec::new();
    for entry in catalog {
        if let Ok(profile) = entry.quandle.profile() {
            if divides_last(&profile) {
                consistent += 1;
            } else {
                violations.push(entry.id.clone());
            }
        }
    }
    let status = if violations.is_empty() {
        "holds"
    } else {
        "fails"
    };
    let report = VerificationReport::report(
        Claim::ConjectureDivisibility,
        format!(
            "{status},consistent={consistent},violations={}",
            violations.len()
        ),
    );
    match violations.into_iter().next() {
        Some(id) => report.witness(Witness::Quandle(id)),
        None => report,
    }
}

/// Profile `{1,n-1}` implies latin, plus a report of whether the converse
/// fails somewhere in the catalog, witnessed by a smallest such quandle.
pub fn verify_latin_theorem(catalog: &[CatalogEntry]) -> Vec<VerificationReport> {
    let mut checked = 0;
    let mut counterexample = None;
    let mut converse_witness = None;
    for entry in catalog {
        let Ok(profile) = entry.quandle.profile() else {
            continue;
        };
        let latin = entry.quandle.is_latin();
        if profile.is_single_cycle() {
            checked += 1;
            if !latin && counterexample.is_none() {
                counterexample = Some(entry.id.clone());
            }
        } else if latin && entry.quandle.order() > 1 {
            let key = (entry.quandle.order(), entry.id.clone());
            if converse_witness.as_ref().is_none_or(|w| key < *w) {
                converse_witness = Some(key);
            }
        }
    }
    let theorem = VerificationReport::from_counterexample(
        Claim::SingleCycleLatin,
        counterexample.map(Witness::Quandle),
    )
    .note(format!("checked={checked}"));
    let converse = match converse_witness {
        Some((_, id)) => {
            VerificationReport::report(Claim::SingleCycleLatinConverse, "converse-fails")
                .witness(Witness::Quandle(id))
        }
        None => VerificationReport::report(Claim::SingleCycleLatinConverse, "no-witness"),
    };
    vec![theorem, converse]
}

/// Every pair of right translations is conjugate, with a validated witness.
pub fn verify_conjugacy_corollary(q: &Quandle) -> Result<VerificationReport> {
    if !q.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = q.order();
    let translations: Vec<Perm> = (1..=n)
        .map(|b| q.right_translation(b))
        .collect::<Result<_>>()?;
    let bad = (0..n).tuple_combinations().find(|&(i, j)| {
        let (ri, rj) = (&translations[i], &translations[j]);
        match ri.conjugacy_witness(rj) {
            Ok(Some(w)) => ri.conjugate_by(&w).ok().as_ref() != Some(rj),
            _ => true,
        }
    });
    Ok(VerificationReport::from_counterexample(
        Claim::TranslationsConjugate,
        bad.map(|(i, j)| Witness::Pair(i + 1, j + 1)),
    ))
}

/// Outcome of the power formula for one sign of the trailing exponent.
fn power_formula_failure(q: &Quandle, sign: i64) -> Option<usize> {
    let n = q.order();
    let rn = q.right_translation(n).ok()?;
    let rn1 = q.right_translation(n - 1).ok()?;
    (1..=n - 2).find(|&k| {
        let lhs = q.right_translation(k).expect("in range");
        let rhs = rn
            .power(k as i64)
            .compose_unchecked(&rn1.compose_unchecked(&rn.power(sign * k as i64)));
        lhs != rhs
    })
}

/// Tests `r_k = r_n^k r_{n-1} r_n^k` and `r_k = r_n^k r_{n-1} r_n^{-k}` for
/// `1 ≤ k ≤ n-2` on a naturally ordered quandle of profile `{1,n-1}`
/// (report-only; the first does not hold in general).
pub fn check_translation_power_formula(q: &Quandle) -> Result<VerificationReport> {
    let profile = q.profile()?;
    if !profile.is_single_cycle() || q.order() < 3 {
        return Ok(VerificationReport::report(
            Claim::TranslationPowerFormula,
            "not-applicable",
        ));
    }
    require_natural(q)?;
    let printed = power_formula_failure(q, 1);
    let inverse = power_formula_failure(q, -1);
    let word = |f: Option<usize>| if f.is_none() { "holds" } else { "fails" };
    let report = VerificationReport::report(
        Claim::TranslationPowerFormula,
        format!(
            "positive-exponent={},negative-exponent={}",
            word(printed),
            word(inverse)
        ),
    );
    Ok(match printed.or(inverse) {
        Some(k) => report.witness(Witness::Element(k)),
        None => report,
    })
}

/// Composition, inverse and subgroup closure of the reorderings natural with
/// respect to `r_n`, and composition with reorderings natural w.r.t. any `r_q`.
pub fn verify_group_lemmas(q: &Quandle) -> Result<Vec<VerificationReport>> {
    require_natural(q)?;
    let n = q.order();
    let wrt_n: Vec<Perm> = canon::natural_reorderings_wrt(q, n)?
        .into_iter()
        .map(|r| r.perm)
        .collect();
    let set_n: HashSet<&Perm> = wrt_n.iter().collect();
    let by_q: Vec<HashSet<Perm>> = (1..=n)
        .map(|x| {
            canon::natural_reorderings_wrt(q, x).map(|v| v.into_iter().map(|r| r.perm).collect())
        })
        .collect::<Result<_>>()?;

    let mut composite = None;
    'outer: for (qi, set) in by_q.iter().enumerate() {
        for mu in set.iter().sorted() {
            for nu in &wrt_n {
                if !set.contains(&nu.compose_unchecked(mu)) {
                    composite = Some((qi, mu.clone(), nu.clone()));
                    break 'outer;
                }
            }
        }
    }
    let inverse = wrt_n.iter().find(|nu| !set_n.contains(&nu.inverse()));
    let product = wrt_n
        .iter()
        .cartesian_product(&wrt_n)
        .find(|(a, b)| !set_n.contains(&a.compose_unchecked(b)));
    let has_identity = set_n.contains(&Perm::identity(n));
    Ok(vec![
        VerificationReport::from_counterexample(
            Claim::NaturalComposite,
            composite.map(|(_, mu, nu)| Witness::PermPair(mu, nu)),
        ),
        VerificationReport::from_counterexample(
            Claim::NaturalInverse,
            inverse.map(|nu| Witness::Perm(nu.clone())),
        ),
        match product {
            Some((a, b)) => VerificationReport::fail(
                Claim::NaturalSubgroup,
                Witness::PermPair(a.clone(), b.clone()),
            ),
            None if !has_identity => {
                VerificationReport::fail(Claim::NaturalSubgroup, Witness::Perm(Perm::identity(n)))
            }
            None => VerificationReport::pass(Claim::NaturalSubgroup)
                .note(format!("order={}", wrt_n.len())),
        },
    ])
}

fn bijections_to_check(q: &Quandle) -> Vec<Perm> {
    let n = q.order();
    if n <= EXHAUSTIVE_BIJECTION_ORDER {
        return (0..n).permutations(n).map(Perm::from_zero_based).collect();
    }
    let mut out: Vec<Perm> = canon::all_natural_reorderings(q)
        .map(|v| v.into_iter().map(|r| r.perm).collect())
        .unwrap_or_default();
    let mut rng = StdRng::seed_from_u64(0x5eed ^ n as u64);
    let mut base: Vec<usize> = (0..n).collect();
    for _ in 0..SAMPLED_BIJECTIONS {
        base.shuffle(&mut rng);
        out.push(Perm::from_zero_based(base.clone()));
    }
    out
}

fn is_canonical_relabeling(q: &Quandle, nu: &Perm, form: &Perm) -> bool {
    let r = canon::apply_reordering(q, nu).expect("sizes match");
    r.right_translation(q.order()).expect("in range") == *form
}

/// A bijection is natural (w.r.t. `r_{ν⁻¹(n)}`) exactly when the relabeled
/// table has form (N). Exhaustive over bijections for small orders.
pub fn verify_naturality_criterion(q: &Quandle) -> Result<VerificationReport> {
    let profile = q.profile()?;
    let form = FormN::new(profile).permutation();
    let natural: HashSet<Perm> = canon::all_natural_reorderings(q)?
        .into_iter()
        .map(|r| r.perm)
        .collect();
    let candidates = bijections_to_check(q);
    let bad = candidates
        .par_iter()
        .find_first(|nu| natural.contains(*nu) != is_canonical_relabeling(q, nu, &form));
    Ok(VerificationReport::from_counterexample(
        Claim::NaturalityCriterion,
        bad.cloned().map(Witness::Perm),
    )
    .note(format!("bijections={}", candidates.len())))
}

/// Every element is carried to `n` by a replayed inner automorphism.
pub fn verify_transport(q: &Quandle) -> Result<VerificationReport> {
    let n = q.order();
    let mut bad = None;
    for x in 1..=n {
        let word = q.inner_transport(x, n)?;
        let w = q.word_composite(&word);
        if w.apply(x) != n || !q.is_automorphism(&w) {
            bad = Some(x);
            break;
        }
    }
    Ok(VerificationReport::from_counterexample(
        Claim::TransportToLast,
        bad.map(Witness::Element),
    ))
}

fn count_bound(lengths: &[usize]) -> Option<usize> {
    let strict = lengths.windows(2).all(|w| w[0] < w[1]);
    if !strict {
        return None;
    }
    let unique = matches!(lengths, [] | [_] | [1, _]);
    Some(if unique {
        1
    } else {
        lengths[..lengths.len() - 1].iter().product()
    })
}

/// Strict profiles: the canonical set has at most `ℓ_1⋯ℓ_{k-1}` members,
/// exactly one when `k = 1` or `k = 2, ℓ_1 = 1`.
pub fn verify_canonical_count(q: &Quandle) -> Result<VerificationReport> {
    let profile = q.profile()?;
    let size = canon::canonical_set(q)?.len();
    Ok(match count_bound(profile.cycle_lengths()) {
        None => VerificationReport::pass(Claim::CanonicalCountBound)
            .note(format!("vacuous,size={size}")),
        Some(bound) if size <= bound => VerificationReport::pass(Claim::CanonicalCountBound)
            .note(format!("size={size},bound={bound}")),
        Some(bound) => VerificationReport::fail(Claim::CanonicalCountBound, Witness::Count(size))
            .note(format!("bound={bound}")),
    })
}

fn all_natural_case(profile: &Profile) -> bool {
    let n = profile.order();
    match profile.cycle_lengths() {
        [_] => true,
        [1, l] => *l == n - 2 && *l > 1,
        _ => false,
    }
}

/// For profiles `{1,n-1}` and `{1,1,n-2}` every natural reordering of a
/// naturally ordered quandle is an automorphism.
pub fn verify_all_natural_automorphisms(q: &Quandle) -> Result<VerificationReport> {
    require_natural(q)?;
    let profile = q.profile()?;
    if !all_natural_case(&profile) {
        return Ok(VerificationReport::pass(Claim::AutomorphismsAllNatural).note("vacuous"));
    }
    let all = canon::all_natural_reorderings(q)?;
    let bad = all.iter().find(|nu| !q.is_automorphism(&nu.perm));
    Ok(VerificationReport::from_counterexample(
        Claim::AutomorphismsAllNatural,
        bad.map(|nu| Witness::Perm(nu.perm.clone())),
    )
    .note(format!("natural={}", all.len())))
}

/// The quandle the per-entry checks run on: connected entries are
/// naturalized first.
pub fn subject(q: &Quandle) -> Quandle {
    if q.is_connected() && !canon::is_naturally_ordered(q).unwrap_or(false) {
        canon::naturalize(q).expect("connected").0
    } else {
        q.clone()
    }
}

fn per_quandle(q: &Quandle) -> Vec<VerificationReport> {
    let mut out = vec![check_formulas(q)];
    if !q.is_connected() {
        return out;
    }
    let q = &subject(q);
    let must = |r: Result<VerificationReport>| r.expect("preconditions established");
    out.push(must(verify_conjugacy_corollary(q)));
    out.push(must(verify_naturality_criterion(q)));
    out.push(must(verify_transport(q)));
    out.extend(verify_group_lemmas(q).expect("naturally ordered"));
    out.push(if q.order() <= MAX_BRUTE_FORCE_ORDER {
        must(verify_automorphism_theorem(q))
    } else {
        VerificationReport::report(Claim::AutomorphismsNatural, "skipped-order")
    });
    out.extend(verify_canonical_theorem(q).expect("naturally ordered"));
    out.push(must(verify_canonical_count(q)));
    out.push(must(verify_all_natural_automorphisms(q)));
    out.push(must(check_conjecture_tail_fixing(q)));
    out.push(must(check_translation_power_formula(q)));
    out
}

/// Runs every check on every entry plus the catalog-wide checks, keeping the
/// claims selected by `claims` (all when `None`). Sorted by order, claim,
/// then scope; catalog-wide reports come last.
pub fn verify_all_with(
    catalog: &[CatalogEntry],
    claims: Option<&[Claim]>,
) -> Vec<VerificationReport> {
    let wanted = |c: Claim| claims.is_none_or(|cs| cs.contains(&c));
    let mut reports: Vec<VerificationReport> = catalog
        .par_iter()
        .flat_map_iter(|entry| {
            let order = entry.quandle.order();
            per_quandle(&entry.quandle)
                .into_iter()
                .map(move |r| r.with_scope(&entry.id, Some(order)))
        })
        .filter(|r| wanted(r.claim))
        .collect();
    if !catalog.is_empty() {
        let mut global = verify_latin_theorem(catalog);
        global.push(check_conjecture_divisibility(catalog));
        reports.extend(
            global
                .into_iter()
                .filter(|r| wanted(r.claim))
                .map(|r| r.with_scope(CATALOG_SCOPE, None)),
        );
    }
    reports.sort_by(|a, b| {
        (a.order.unwrap_or(usize::MAX), a.claim, &a.scope).cmp(&(
            b.order.unwrap_or(usize::MAX),
            b.claim,
            &b.scope,
        ))
    });
    reports
}

pub fn verify_all(catalog: &[CatalogEntry]) -> Vec<VerificationReport> {
    verify_all_with(catalog, None)
}

/// Re-executes a report's witness against the catalog. `Some(true)` means the
/// witness exhibits what the report says (a violation for `fail`, the found
/// object for report-only claims); `None` means the report has no witness or
/// its scope is not in the catalog.
pub fn replay(report: &VerificationReport, catalog: &[CatalogEntry]) -> Option<bool> {
    let witness = report.witness.as_ref()?;
    let find = |id: &str| catalog.iter().find(|e| e.id == id).map(|e| &e.quandle);
    if report.claim.is_catalog_level() {
        let Witness::Quandle(id) = witness else {
            return Some(false);
        };
        let q = find(id)?;
        let Ok(profile) = q.profile() else {
            return Some(false);
        };
        return Some(match report.claim {
            Claim::SingleCycleLatin => profile.is_single_cycle() && !q.is_latin(),
            Claim::SingleCycleLatinConverse => !profile.is_single_cycle() && q.is_latin(),
            Claim::ConjectureDivisibility => !divides_last(&profile),
            _ => unreachable!(),
        });
    }
    let q = subject(find(&report.scope)?);
    Some(replay_on(report.claim, witness, &q))
}

fn natural_set(q: &Quandle, x: usize) -> HashSet<Perm> {
    canon::natural_reorderings_wrt(q, x)
        .map(|v| v.into_iter().map(|r| r.perm).collect())
        .unwrap_or_default()
}

fn all_natural_set(q: &Quandle) -> HashSet<Perm> {
    (1..=q.order()).flat_map(|x| natural_set(q, x)).collect()
}

fn replay_on(claim: Claim, witness: &Witness, q: &Quandle) -> bool {
    let n = q.order();
    let fits = |p: &Perm| p.len() == n;
    match (claim, witness) {
        (Claim::Formulas, Witness::Formula(v)) => {
            let op = |a, b| q.op(a, b).unwrap();
            let inv = |a, b| q.inv_op(a, b).unwrap();
            let (a, b, c) = (v.a, v.b, v.c);
            if [a, b, c].iter().any(|&x| x == 0 || x > n) {
                return false;
            }
            match v.formula {
                DerivedFormula::DualOverOp => inv(op(a, b), c) != op(inv(a, c), inv(b, c)),
                DerivedFormula::OpOverDual => op(inv(a, b), c) != inv(op(a, c), op(b, c)),
                DerivedFormula::LeftConjugation => op(a, op(b, c)) != op(op(inv(a, c), b), c),
            }
        }
        (Claim::TranslationsConjugate, &Witness::Pair(i, j)) => {
            match (q.right_translation(i), q.right_translation(j)) {
                (Ok(a), Ok(b)) => a.pattern() != b.pattern(),
                _ => false,
            }
        }
        (Claim::NaturalityCriterion, Witness::Perm(nu)) if fits(nu) => {
            let Ok(profile) = q.profile() else {
                return false;
            };
            let form = FormN::new(profile).permutation();
            all_natural_set(q).contains(nu) != is_canonical_relabeling(q, nu, &form)
        }
        (Claim::TransportToLast, &Witness::Element(x)) if (1..=n).contains(&x) => {
            match q.inner_transport(x, n) {
                Ok(word) => {
                    let w = q.word_composite(&word);
                    w.apply(x) != n || !q.is_automorphism(&w)
                }
                Err(_) => true,
            }
        }
        (Claim::NaturalComposite, Witness::PermPair(mu, nu)) if fits(mu) && fits(nu) => {
            let x = mu.inverse().apply(n);
            natural_set(q, x).contains(mu)
                && natural_set(q, n).contains(nu)
                && !natural_set(q, x).contains(&nu.compose_unchecked(mu))
        }
        (Claim::NaturalInverse, Witness::Perm(nu)) if fits(nu) => {
            let set = natural_set(q, n);
            set.contains(nu) && !set.contains(&nu.inverse())
        }
        (Claim::NaturalSubgroup, Witness::PermPair(a, b)) if fits(a) && fits(b) => {
            let set = natural_set(q, n);
            set.contains(a) && set.contains(b) && !set.contains(&a.compose_unchecked(b))
        }
        (Claim::NaturalSubgroup, Witness::Perm(id)) if fits(id) => {
            id.is_identity() && !natural_set(q, n).contains(id)
        }
        (Claim::AutomorphismsNatural, Witness::Perm(s)) if fits(s) => {
            q.is_automorphism(s) && !all_natural_set(q).contains(s)
        }
        (Claim::AutomorphismsAllNatural, Witness::Perm(nu)) if fits(nu) => {
            all_natural_set(q).contains(nu) && !q.is_automorphism(nu)
        }
        (
            Claim::CanonicalCoincidence
            | Claim::CanonicalBlockAlignment
            | Claim::CanonicalTailFixing
            | Claim::ConjectureTailFixing,
            Witness::Perm(mu),
        ) if fits(mu) => {
            let Ok(profile) = q.profile() else {
                return false;
            };
            let lengths = profile.cycle_lengths();
            if !all_natural_set(q).contains(mu) {
                return false;
            }
            let target = canon::apply_reordering(q, mu).expect("fits");
            let matching: Vec<Perm> = natural_set(q, n)
                .into_iter()
                .filter(|nu| canon::apply_reordering(q, nu).expect("fits") == target)
                .collect();
            match claim {
                Claim::CanonicalCoincidence => matching.is_empty(),
                Claim::CanonicalBlockAlignment => !matching
                    .iter()
                    .any(|nu| maps_longest_block_to_last(nu, lengths)),
                _ => !matching.iter().any(|nu| fixes_tail(nu, lengths)),
            }
        }
        (Claim::CanonicalCountBound, &Witness::Count(c)) => {
            let Ok(profile) = q.profile() else {
                return false;
            };
            let actual = canon::canonical_set(q).map(|s| s.len()).unwrap_or(0);
            actual == c && count_bound(profile.cycle_lengths()).is_some_and(|b| c > b)
        }
        (Claim::TranslationPowerFormula, &Witness::Element(k)) => {
            k >= 1
                && n >= 3
                && k <= n - 2
                && [1, -1].into_iter().any(|sign| {
                    let rn = q.right_translation(n).unwrap();
                    let rhs = rn.power(k as i64).compose_unchecked(
                        &q.right_translation(n - 1)
                            .unwrap()
                            .compose_unchecked(&rn.power(sign * k as i64)),
                    );
                    q.right_translation(k).unwrap() != rhs
                })
        }
        _ => false,
    }
}

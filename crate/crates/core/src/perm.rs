//! Permutations of `{1, ..., n}`.
//!
//! Every public method takes and returns 1-based points. The image vector is
//! stored 0-based so that composition and table lookups index directly.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A bijection on `{1, ..., n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    image: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            image: (0..n).collect(),
        }
    }

    /// Builds a permutation from its 1-based image list: `images[x - 1] = p(x)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut image = Vec::with_capacity(n);
        for &v in images {
            if v == 0 || v > n {
                return Err(Error::ElementOutOfRange { element: v, n });
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::NotBijection {
                    n,
                    reason: format!("{v} appears twice"),
                });
            }
            image.push(v - 1);
        }
        Ok(Perm { image })
    }

    /// Builds a permutation of `{1..n}` from disjoint cycles; points not
    /// mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut image: Vec<Option<usize>> = vec![None; n];
        for cycle in cycles {
            for (t, &x) in cycle.iter().enumerate() {
                let y = cycle[(t + 1) % cycle.len()];
                for v in [x, y] {
                    if v == 0 || v > n {
                        return Err(Error::ElementOutOfRange { element: v, n });
                    }
                }
                if image[x - 1].replace(y - 1).is_some() {
                    return Err(Error::NotBijection {
                        n,
                        reason: format!("{x} appears in two cycles"),
                    });
                }
            }
        }
        Ok(Perm {
            image: image
                .into_iter()
                .enumerate()
                .map(|(x, y)| y.unwrap_or(x))
                .collect(),
        })
    }

    /// Caller guarantees `image` is a 0-based bijection.
    pub(crate) fn from_zero_based(image: Vec<usize>) -> Self {
        debug_assert!(is_bijection(&image));
        Perm { image }
    }

    pub(crate) fn as_zero_based(&self) -> &[usize] {
        &self.image
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// `p(x)` for a 1-based point `x`.
    ///
    /// Panics if `x` is outside `1..=n`.
    pub fn apply(&self, x: usize) -> usize {
        self.image[x - 1] + 1
    }

    /// The 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|&y| y + 1).collect()
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Perm) -> Perm {
        Perm {
            image: other.image.iter().map(|&y| self.image[y]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Perm { image: inv }
    }

    /// `k`-fold composition; negative `k` uses the inverse.
    pub fn power(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut result = Perm::identity(self.len());
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose_unchecked(&sq);
            }
            sq = sq.compose_unchecked(&sq);
            e >>= 1;
        }
        result
    }

    /// `inverse(w) ∘ self ∘ w`.
    pub fn conjugate_by(&self, w: &Perm) -> Result<Perm> {
        w.inverse().compose(&self.compose(w)?)
    }

    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.image[x];
            }
            cycles.push(cycle);
        }
        // Scanning starts in ascending order, so every cycle already begins
        // with its minimum and the cycles are sorted by it.
        CycleDecomposition { n, cycles }
    }

    pub fn pattern(&self) -> Pattern {
        Pattern::from_lengths(self.cycle_decomposition().lengths())
    }

    /// Returns `ω` with `other = ω⁻¹ ∘ self ∘ ω` when the two permutations
    /// have the same pattern, `None` otherwise.
    pub fn conjugacy_witness(&self, other: &Perm) -> Result<Option<Perm>> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let mut mine = self.cycle_decomposition().cycles;
        let mut theirs = other.cycle_decomposition().cycles;
        mine.sort_by_key(|c| c.len());
        theirs.sort_by_key(|c| c.len());
        if mine.iter().map(Vec::len).ne(theirs.iter().map(Vec::len)) {
            return Ok(None);
        }
        // ω(other's cycle[t]) = self's cycle[t] makes ω ∘ other = self ∘ ω.
        let mut w = vec![0; self.len()];
        for (a, b) in theirs.iter().zip(&mine) {
            for (&x, &y) in a.iter().zip(b) {
                w[x - 1] = y - 1;
            }
        }
        let w = Perm::from_zero_based(w);
        debug_assert_eq!(&self.conjugate_by(&w)?, other);
        Ok(Some(w))
    }

    pub fn are_conjugate(&self, other: &Perm) -> Result<bool> {
        Ok(self.conjugacy_witness(other)?.is_some())
    }

    /// Image notation with no spaces, e.g. `[6,5,3,4,2,1]`.
    pub fn image_notation(&self) -> String {
        let body: Vec<String> = self.images().iter().map(usize::to_string).collect();
        format!("[{}]", body.join(","))
    }

    /// Parses [`Perm::image_notation`].
    pub fn parse_image_notation(s: &str) -> Result<Perm> {
        let bad = || Error::NotBijection {
            n: 0,
            reason: format!("cannot parse {s:?}"),
        };
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        if inner.is_empty() {
            return Ok(Perm::identity(0));
        }
        let images = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Perm::from_images(&images)
    }
}

pub(crate) fn is_bijection(image: &[usize]) -> bool {
    let mut seen = vec![false; image.len()];
    image
        .iter()
        .all(|&y| y < image.len() && !std::mem::replace(&mut seen[y], true))
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.cycle_decomposition().fmt(f)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self)
    }
}

/// Disjoint cycles covering `{1..n}`, each starting at its minimum, sorted by
/// that minimum. Fixed points are kept as 1-cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    n: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.cycles.iter().map(Vec::len)
    }

    pub fn to_perm(&self) -> Perm {
        Perm::from_cycles(self.n, &self.cycles).expect("normalized cycles are disjoint")
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Multiset of cycle lengths, kept sorted nondecreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(Vec<usize>);

impl Pattern {
    pub fn from_lengths(lengths: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = lengths.into_iter().collect();
        v.sort_unstable();
        Pattern(v)
    }

    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    /// Sum of the lengths, i.e. the size of the permuted set.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", body.join(","))
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// Accepts `{1,2,2}`, `1,2,2` or `1 2 2`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        let lengths = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(Error::InvalidProfile(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        if lengths.is_empty() {
            return Err(Error::InvalidProfile(s.to_string()));
        }
        Ok(Pattern::from_lengths(lengths))
    }
}

//! Natural reorderings, canonical quandle matrices, automorphisms and
//! isomorphism testing for connected quandles.
//!
//! A reordering `ν` relabels element `x` as `ν(x)`: the new table has
//! `ν(i*j)` in row `ν(i)`, column `ν(j)`. It is *natural with respect to
//! `r_q`* when it sends `q` to `n` and lays out the remaining cycles of `r_q`,
//! shortest first, as consecutive blocks `1..ℓ_1`, `ℓ_1+1..ℓ_1+ℓ_2`, ... with
//! each cycle mapped onto its block in order. After a natural reordering
//! `r_n` has *form (N)*: `(1 ⋯ ℓ_1)(ℓ_1+1 ⋯ ℓ_1+ℓ_2)⋯(n)`.
//!
//! The canonical representative of a connected quandle is the row-major
//! lexicographic minimum of all tables reachable by natural reorderings. A
//! bijection yields a form-(N) table exactly when it is natural with respect
//! to `r_{ν⁻¹(n)}`, so this set is the set of all form-(N) tables isomorphic
//! to the input and the minimum is a complete isomorphism invariant.

use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::quandle::{Profile, Quandle};

/// Orders above this are refused by the factorial-time oracles.
pub const MAX_BRUTE_FORCE_ORDER: usize = 9;

/// A relabeling of the elements, optionally tagged with the element `q` it is
/// natural with respect to (then `perm(q) = n`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Reordering {
    pub perm: Perm,
    pub natural_wrt: Option<usize>,
}

impl Reordering {
    pub fn plain(perm: Perm) -> Self {
        Reordering {
            perm,
            natural_wrt: None,
        }
    }
}

/// Target shape of `r_n` for a given profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormN {
    profile: Profile,
}

impl FormN {
    pub fn new(profile: Profile) -> Self {
        FormN { profile }
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    /// 1-based first position of each block: `Σ_{j<s} ℓ_j + 1`.
    pub fn block_starts(&self) -> Vec<usize> {
        self.profile
            .cycle_lengths()
            .iter()
            .scan(1, |pos, &len| {
                let start = *pos;
                *pos += len;
                Some(start)
            })
            .collect()
    }

    pub fn permutation(&self) -> Perm {
        let n = self.profile.order();
        let mut image: Vec<usize> = (0..n).collect();
        let mut pos = 0;
        for &len in self.profile.cycle_lengths() {
            for t in 0..len {
                image[pos + t] = pos + (t + 1) % len;
            }
            pos += len;
        }
        Perm::from_zero_based(image)
    }
}

/// Every canonical matrix reachable from one quandle, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalSet {
    pub matrices: Vec<Quandle>,
}

impl CanonicalSet {
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn contains(&self, q: &Quandle) -> bool {
        self.matrices.binary_search(q).is_ok()
    }
}

fn require_connected(q: &Quandle) -> Result<()> {
    if q.is_connected() {
        Ok(())
    } else {
        Err(Error::NotConnected)
    }
}

/// Relabels `q` by `nu`.
pub fn apply_reordering(q: &Quandle, nu: &Perm) -> Result<Quandle> {
    if nu.len() != q.order() {
        return Err(Error::SizeMismatch {
            left: q.order(),
            right: nu.len(),
        });
    }
    Ok(relabel(q, nu.as_zero_based()))
}

pub(crate) fn relabel(q: &Quandle, nu: &[usize]) -> Quandle {
    Quandle::from_raw(q.order(), relabel_raw(q, nu))
}

fn relabel_raw(q: &Quandle, nu: &[usize]) -> Vec<usize> {
    let n = q.order();
    let mut table = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            table[nu[i] * n + nu[j]] = nu[q.at(i, j)];
        }
    }
    table
}

/// Calls `f` for every index tuple with `0 ≤ t[i] < radices[i]`, last index
/// fastest. A zero-length tuple is visited once.
fn for_each_tuple(radices: &[usize], mut f: impl FnMut(&[usize])) {
    if radices.contains(&0) {
        return;
    }
    let mut t = vec![0; radices.len()];
    loop {
        f(&t);
        let mut i = radices.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < radices[i] {
                break;
            }
            t[i] = 0;
        }
    }
}

/// 0-based images of all reorderings natural with respect to `r_q`, `q`
/// 0-based, in the documented deterministic order: cycles grouped by length
/// and sorted by minimum; equal-length cycles permuted lexicographically;
/// each cycle rotated by ascending starting element.
fn natural_images(qd: &Quandle, q: usize) -> Vec<Vec<usize>> {
    let n = qd.order();
    let rq = Perm::from_zero_based(qd.column(q));
    let mut cycles: Vec<Vec<usize>> = rq
        .cycle_decomposition()
        .cycles()
        .iter()
        .map(|c| c.iter().map(|x| x - 1).collect())
        .collect();
    let fixed = cycles.iter().position(|c| c == &[q]).expect("r_q fixes q");
    cycles.remove(fixed);
    // Stable sort keeps minimum-element order within each length.
    cycles.sort_by_key(Vec::len);
    let groups: Vec<Vec<Vec<usize>>> = cycles
        .into_iter()
        .chunk_by(Vec::len)
        .into_iter()
        .map(|(_, g)| g.collect())
        .collect();
    let orderings: Vec<Vec<Vec<usize>>> = groups
        .iter()
        .map(|g| (0..g.len()).permutations(g.len()).collect())
        .collect();
    let rotation_orders: Vec<Vec<Vec<usize>>> = groups
        .iter()
        .map(|g| {
            g.iter()
                .map(|c| (0..c.len()).sorted_by_key(|&r| c[r]).collect())
                .collect()
        })
        .collect();
    let ordering_radices: Vec<usize> = orderings.iter().map(Vec::len).collect();
    let rotation_radices: Vec<usize> = groups.iter().flatten().map(Vec::len).collect();

    let rotation_orders = &rotation_orders;
    let mut out = Vec::new();
    for_each_tuple(&ordering_radices, |choice| {
        // Lay the cycles out in this block order.
        let laid: Vec<(&Vec<usize>, &Vec<usize>)> = groups
            .iter()
            .zip(choice)
            .enumerate()
            .flat_map(|(g, (cycles, &o))| {
                orderings[g][o]
                    .iter()
                    .map(move |&c| (&cycles[c], &rotation_orders[g][c]))
            })
            .collect();
        // Rotation radices are per cycle in group order, but laid is in
        // block order; lengths agree positionally because groups are
        // length-homogeneous.
        for_each_tuple(&rotation_radices, |rots| {
            let mut nu = vec![0; n];
            nu[q] = n - 1;
            let mut pos = 0;
            for ((cycle, rot_order), &r) in laid.iter().zip(rots) {
                let start = rot_order[r];
                let len = cycle.len();
                for t in 0..len {
                    nu[cycle[(start + t) % len]] = pos + t;
                }
                pos += len;
            }
            out.push(nu);
        });
    });
    out
}

/// All reorderings natural with respect to `r_q` (1-based `q`).
pub fn natural_reorderings_wrt(qd: &Quandle, q: usize) -> Result<Vec<Reordering>> {
    if q == 0 || q > qd.order() {
        return Err(Error::ElementOutOfRange {
            element: q,
            n: qd.order(),
        });
    }
    require_connected(qd)?;
    Ok(natural_images(qd, q - 1)
        .into_iter()
        .map(|nu| Reordering {
            perm: Perm::from_zero_based(nu),
            natural_wrt: Some(q),
        })
        .collect())
}

/// Natural reorderings with respect to every `r_q`, grouped by `q`
/// ascending.
pub fn all_natural_reorderings(qd: &Quandle) -> Result<Vec<Reordering>> {
    require_connected(qd)?;
    let mut out = Vec::new();
    for q in 1..=qd.order() {
        out.extend(natural_reorderings_wrt(qd, q)?);
    }
    Ok(out)
}

/// `n · Π ℓ_i · Π_d m_d!`, the size of [`all_natural_reorderings`] for a
/// connected quandle with this profile.
pub fn natural_reordering_count(profile: &Profile) -> usize {
    let lengths = profile.cycle_lengths();
    let rotations: usize = lengths.iter().product();
    let orderings: usize = lengths
        .iter()
        .chunk_by(|&&l| l)
        .into_iter()
        .map(|(_, g)| (1..=g.count()).product::<usize>())
        .product();
    profile.order() * rotations * orderings
}

/// `r_n` is in form (N) for the quandle's own profile.
pub fn is_naturally_ordered(q: &Quandle) -> Result<bool> {
    let profile = q.profile()?;
    Ok(q.right_translation(q.order())? == FormN::new(profile).permutation())
}

/// Applies the first natural reordering with respect to `r_n`.
pub fn naturalize(q: &Quandle) -> Result<(Quandle, Reordering)> {
    let nu = natural_reorderings_wrt(q, q.order())?
        .into_iter()
        .next()
        .expect("r_n has at least one presentation");
    let out = relabel(q, nu.perm.as_zero_based());
    debug_assert!(is_naturally_ordered(&out).unwrap_or(false));
    Ok((out, nu))
}

fn canonical_tables(q: &Quandle) -> Result<BTreeSet<Vec<usize>>> {
    require_connected(q)?;
    let images: Vec<Vec<usize>> = (0..q.order()).flat_map(|x| natural_images(q, x)).collect();
    Ok(images
        .par_iter()
        .map(|nu| relabel_raw(q, nu))
        .collect::<Vec<_>>()
        .into_iter()
        .collect())
}

/// The distinct matrices obtained from all natural reorderings.
pub fn canonical_set(q: &Quandle) -> Result<CanonicalSet> {
    let n = q.order();
    Ok(CanonicalSet {
        matrices: canonical_tables(q)?
            .into_iter()
            .map(|t| Quandle::from_raw(n, t))
            .collect(),
    })
}

/// Row-major lexicographic minimum of [`canonical_set`].
pub fn canonical_form(q: &Quandle) -> Result<Quandle> {
    require_connected(q)?;
    let n = q.order();
    let best = (0..n)
        .into_par_iter()
        .flat_map_iter(|x| natural_images(q, x))
        .map(|nu| relabel_raw(q, &nu))
        .min()
        .expect("at least one natural reordering");
    Ok(Quandle::from_raw(n, best))
}

/// Same canonical form; quandles of different order are never isomorphic.
pub fn are_isomorphic(a: &Quandle, b: &Quandle) -> Result<bool> {
    require_connected(a)?;
    require_connected(b)?;
    if a.order() != b.order() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Natural reorderings that leave the table unchanged. The input must be
/// naturally ordered; see [`automorphism_group`] for arbitrary labelings.
pub fn automorphisms(q: &Quandle) -> Result<Vec<Reordering>> {
    if !is_naturally_ordered(q)? {
        return Err(Error::NotNaturallyOrdered);
    }
    Ok(all_natural_reorderings(q)?
        .into_iter()
        .filter(|nu| q.is_automorphism(&nu.perm))
        .collect())
}

/// The automorphism group of a connected quandle in any labeling: naturalize
/// by `ν`, collect the natural automorphisms `σ'`, and return
/// `ν⁻¹ ∘ σ' ∘ ν`, sorted.
pub fn automorphism_group(q: &Quandle) -> Result<Vec<Perm>> {
    let (natural, nu) = naturalize(q)?;
    let inv = nu.perm.inverse();
    let mut group: Vec<Perm> = automorphisms(&natural)?
        .into_iter()
        .map(|s| inv.compose_unchecked(&s.perm.compose_unchecked(&nu.perm)))
        .collect();
    group.sort();
    debug_assert!(group.iter().all(|s| q.is_automorphism(s)));
    Ok(group)
}

fn guard(n: usize) -> Result<()> {
    if n > MAX_BRUTE_FORCE_ORDER {
        Err(Error::OrderTooLarge {
            n,
            max: MAX_BRUTE_FORCE_ORDER,
        })
    } else {
        Ok(())
    }
}

/// Every bijection preserving the operation, by exhaustive scan.
pub fn brute_force_automorphisms(q: &Quandle) -> Result<Vec<Perm>> {
    let n = q.order();
    guard(n)?;
    let mut out: Vec<Perm> = (0..n)
        .permutations(n)
        .par_bridge()
        .filter(|s| (0..n).all(|a| (0..n).all(|b| s[q.at(a, b)] == q.at(s[a], s[b]))))
        .map(Perm::from_zero_based)
        .collect();
    out.sort();
    Ok(out)
}

/// Some `σ` with `apply_reordering(a, σ) = b`, by exhaustive scan.
pub fn brute_force_isomorphism(a: &Quandle, b: &Quandle) -> Result<Option<Perm>> {
    let n = a.order();
    guard(n)?;
    if b.order() != n {
        return Ok(None);
    }
    Ok((0..n)
        .permutations(n)
        .find(|s| (0..n).all(|x| (0..n).all(|y| s[a.at(x, y)] == b.at(s[x], s[y]))))
        .map(Perm::from_zero_based))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use std::collections::HashSet;

    fn perm(images: &[usize]) -> Perm {
        Perm::from_images(images).unwrap()
    }

    fn random_perm(n: usize, rng: &mut StdRng) -> Perm {
        let mut v: Vec<usize> = (0..n).collect();
        v.shuffle(rng);
        Perm::from_zero_based(v)
    }

    #[test]
    fn identity_reordering_is_noop() {
        let q = tables::q61();
        assert_eq!(apply_reordering(&q, &Perm::identity(6)).unwrap(), q);
        assert!(apply_reordering(&q, &Perm::identity(5)).is_err());
    }

    #[test]
    fn xi_brings_q72_into_form_n() {
        let q = tables::q72();
        let xi = perm(&[1, 7, 4, 6, 2, 5, 3]);
        let r = apply_reordering(&q, &xi).unwrap();
        assert_eq!(
            r.right_translation(7).unwrap().to_string(),
            "(1 2 3)(4 5 6)(7)"
        );
        assert!(is_naturally_ordered(&r).unwrap());
    }

    #[test]
    fn q72_natural_reorderings_wrt_r1() {
        let q = tables::q72();
        let list = natural_reorderings_wrt(&q, 1).unwrap();
        assert_eq!(list.len(), 18);
        let perms: HashSet<Perm> = list.iter().map(|r| r.perm.clone()).collect();
        assert_eq!(perms.len(), 18);
        for images in [
            [7, 1, 3, 4, 2, 5, 6],
            [7, 4, 6, 1, 5, 2, 3],
            [7, 5, 4, 3, 6, 1, 2],
        ] {
            assert!(perms.contains(&perm(&images)), "{images:?}");
        }
        assert!(list
            .iter()
            .all(|r| r.perm.apply(1) == 7 && r.natural_wrt == Some(1)));
        let xi = perm(&[1, 7, 4, 6, 2, 5, 3]);
        let wrt2: Vec<Perm> = natural_reorderings_wrt(&q, 2)
            .unwrap()
            .into_iter()
            .map(|r| r.perm)
            .collect();
        assert!(wrt2.contains(&xi));
        // The first ν lays out (2 5 3) then (4 6 7), each from its minimum.
        assert_eq!(list[0].perm, perm(&[7, 1, 3, 4, 2, 5, 6]));
    }

    #[test]
    fn natural_reordering_counts() {
        let q52 = tables::q52();
        assert_eq!(natural_reorderings_wrt(&q52, 5).unwrap().len(), 4);
        assert_eq!(all_natural_reorderings(&q52).unwrap().len(), 20);
        let q72 = tables::q72();
        assert_eq!(all_natural_reorderings(&q72).unwrap().len(), 126);
        assert_eq!(natural_reordering_count(&q72.profile().unwrap()), 126);
        let q61 = tables::q61();
        assert_eq!(all_natural_reorderings(&q61).unwrap().len(), 48);
        let one = Quandle::trivial(1);
        let all = all_natural_reorderings(&one).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].perm.is_identity());
        assert_eq!(
            all_natural_reorderings(&Quandle::trivial(3)),
            Err(Error::NotConnected)
        );
        assert!(natural_reorderings_wrt(&q52, 6).is_err());
    }

    #[test]
    fn natural_ordering_examples() {
        assert!(is_naturally_ordered(&tables::q52()).unwrap());
        assert!(is_naturally_ordered(&tables::q53()).unwrap());
        let q72 = tables::q72();
        assert_eq!(
            q72.right_translation(7).unwrap().to_string(),
            "(1 4 2)(3 5 6)(7)"
        );
        assert!(!is_naturally_ordered(&q72).unwrap());
        assert_eq!(
            is_naturally_ordered(&Quandle::trivial(2)),
            Err(Error::NotConnected)
        );
    }

    #[test]
    fn form_n_shape() {
        let f = FormN::new("{1,1,2,2}".parse().unwrap());
        assert_eq!(f.permutation().to_string(), "(1)(2 3)(4 5)(6)");
        assert_eq!(f.block_starts(), vec![1, 2, 4]);
        let f = FormN::new("{1}".parse().unwrap());
        assert!(f.permutation().is_identity());
    }

    #[test]
    fn naturalize_examples() {
        let q52 = tables::q52();
        let (out, nu) = naturalize(&q52).unwrap();
        assert_eq!(out, q52);
        assert_eq!(nu.perm.apply(5), 5);
        let (out, _) = naturalize(&tables::q72()).unwrap();
        assert_eq!(
            out.right_translation(7).unwrap().to_string(),
            "(1 2 3)(4 5 6)(7)"
        );
        let one = Quandle::trivial(1);
        let (out, nu) = naturalize(&one).unwrap();
        assert_eq!(out, one);
        assert!(nu.perm.is_identity());
    }

    #[test]
    fn canonical_sets_and_forms() {
        for q in [tables::q52(), tables::q53()] {
            let set = canonical_set(&q).unwrap();
            assert_eq!(set.matrices, vec![q.clone()]);
            assert_eq!(canonical_form(&q).unwrap(), q);
        }
        let q61 = tables::q61();
        let set = canonical_set(&q61).unwrap();
        assert!(!set.is_empty());
        let min = canonical_form(&q61).unwrap();
        assert_eq!(set.matrices[0], min);
        for m in &set.matrices {
            assert!(is_naturally_ordered(m).unwrap());
        }
        let mut rng = StdRng::seed_from_u64(61);
        for _ in 0..20 {
            let s = random_perm(6, &mut rng);
            let relabeled = apply_reordering(&q61, &s).unwrap();
            assert_eq!(canonical_set(&relabeled).unwrap(), set);
        }
    }

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        let mut rng = StdRng::seed_from_u64(7);
        for q in [
            tables::q52(),
            tables::q53(),
            tables::q72(),
            Quandle::dihedral(7),
        ] {
            let canon = canonical_form(&q).unwrap();
            for _ in 0..100 {
                let s = random_perm(q.order(), &mut rng);
                let r = apply_reordering(&q, &s).unwrap();
                assert_eq!(canonical_form(&r).unwrap(), canon);
            }
        }
    }

    #[test]
    fn isomorphism_examples() {
        let (a, b) = (tables::q52(), tables::q53());
        assert!(!are_isomorphic(&a, &b).unwrap());
        assert_eq!(brute_force_isomorphism(&a, &b).unwrap(), None);
        assert!(!are_isomorphic(&tables::q61(), &tables::q72()).unwrap());
        let q72 = tables::q72();
        let xi = perm(&[1, 7, 4, 6, 2, 5, 3]);
        let r = apply_reordering(&q72, &xi).unwrap();
        assert!(are_isomorphic(&q72, &r).unwrap());
        let w = brute_force_isomorphism(&q72, &r).unwrap().unwrap();
        assert_eq!(apply_reordering(&q72, &w).unwrap(), r);
        let id = brute_force_isomorphism(&a, &a).unwrap().unwrap();
        assert!(id.is_identity());
        assert_eq!(
            are_isomorphic(&a, &Quandle::trivial(5)),
            Err(Error::NotConnected)
        );
    }

    #[test]
    fn automorphism_examples() {
        let q52 = tables::q52();
        let aut = automorphisms(&q52).unwrap();
        assert_eq!(aut.len(), 20);
        assert_eq!(aut, all_natural_reorderings(&q52).unwrap());
        assert_eq!(brute_force_automorphisms(&q52).unwrap().len(), 20);
        let one = automorphisms(&Quandle::trivial(1)).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(
            automorphisms(&tables::q72()),
            Err(Error::NotNaturallyOrdered)
        );

        let (q61n, _) = naturalize(&tables::q61()).unwrap();
        let mut natural: Vec<Perm> = automorphisms(&q61n)
            .unwrap()
            .into_iter()
            .map(|r| r.perm)
            .collect();
        natural.sort();
        assert_eq!(natural, brute_force_automorphisms(&q61n).unwrap());

        let q72 = tables::q72();
        assert_eq!(
            automorphism_group(&q72).unwrap(),
            brute_force_automorphisms(&q72).unwrap()
        );
    }

    #[test]
    fn automorphisms_form_a_group() {
        let (q, _) = naturalize(&tables::q61()).unwrap();
        let group: HashSet<Perm> = automorphisms(&q)
            .unwrap()
            .into_iter()
            .map(|r| r.perm)
            .collect();
        for a in &group {
            assert!(group.contains(&a.inverse()));
            for b in &group {
                assert!(group.contains(&a.compose(b).unwrap()));
            }
        }
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(
            brute_force_automorphisms(&Quandle::trivial(3))
                .unwrap()
                .len(),
            6
        );
        let one = brute_force_automorphisms(&Quandle::trivial(1)).unwrap();
        assert_eq!(one, vec![Perm::identity(1)]);
        assert!(matches!(
            brute_force_automorphisms(&Quandle::trivial(10)),
            Err(Error::OrderTooLarge { n: 10, max: 9 })
        ));
        assert!(brute_force_isomorphism(&Quandle::trivial(10), &Quandle::trivial(10)).is_err());
    }

    #[test]
    fn orbit_stabilizer_count() {
        // |Aut| times the number of distinct relabeled tables is n!.
        for q in [
            tables::q61(),
            tables::q52(),
            tables::q53(),
            Quandle::dihedral(5),
            Quandle::trivial(3),
        ] {
            let n = q.order();
            let tables: HashSet<Quandle> =
                (0..n).permutations(n).map(|s| relabel(&q, &s)).collect();
            let aut = brute_force_automorphisms(&q).unwrap().len();
            assert_eq!(aut * tables.len(), (1..=n).product::<usize>());
        }
    }

    #[test]
    fn naturality_criterion_exhaustive_q61() {
        // ν is natural exactly when the relabeled table has r_n in form (N).
        let q = tables::q61();
        let natural: HashSet<Vec<usize>> = all_natural_reorderings(&q)
            .unwrap()
            .into_iter()
            .map(|r| r.perm.images())
            .collect();
        for s in (0..6).permutations(6) {
            let p = Perm::from_zero_based(s);
            let relabeled = apply_reordering(&q, &p).unwrap();
            assert_eq!(
                natural.contains(&p.images()),
                is_naturally_ordered(&relabeled).unwrap()
            );
        }
    }
}

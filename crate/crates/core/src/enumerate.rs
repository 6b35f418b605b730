//! Exhaustive small-instance generators with canonical-form deduplication.
//!
//! Posets are generated level by level: every poset on n elements arises
//! from one on n-1 elements by adding a new maximal element above a downset,
//! so keeping one canonical representative per isomorphism class at each
//! level is complete. Classes (semilattices, distributive lattices, boolean
//! algebras, spaces) are cut out of the poset stream by their predicates.
//!
//! Two independent generation strategies exist for distributive lattices
//! (the predicate filter and the downset-lattice construction); the harness
//! checks they agree. A brute-force labeled generator cross-checks
//! completeness at small sizes.

use serde::{Deserialize, Serialize};

use std::collections::BTreeSet;

use crate::algebra::{classify_frame, is_distributive_lattice, is_distributive_semilattice};
use crate::error::{Error, Result};
use crate::functors::DualObject;
use crate::poset::{bits, FinitePoset, Mask};
use crate::space::Space;

/// Default hard cap for enumeration; override with the environment variable
/// `DUALITY_SIZE_CAP`.
pub const DEFAULT_SIZE_CAP: usize = 8;

/// Cap for the expensive brute-force oracles.
pub const ORACLE_SIZE_CAP: usize = 12;

pub fn size_cap() -> usize {
    std::env::var("DUALITY_SIZE_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_SIZE_CAP)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    Poset,
    Ms,
    Dms,
    Bdms,
    Dl,
    Ba,
    Frame,
    Gps,
    Pgps,
}

impl ClassKind {
    pub fn parse(s: &str) -> Option<ClassKind> {
        Some(match s {
            "poset" => ClassKind::Poset,
            "ms" => ClassKind::Ms,
            "dms" => ClassKind::Dms,
            "bdms" => ClassKind::Bdms,
            "dl" => ClassKind::Dl,
            "ba" => ClassKind::Ba,
            "frame" => ClassKind::Frame,
            "gps" => ClassKind::Gps,
            "pgps" => ClassKind::Pgps,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceClass {
    pub kind: ClassKind,
    pub max_size: usize,
}

/// All isomorphism classes of posets, grouped by size from 0 to `max`,
/// exactly one canonical representative each.
pub fn poset_classes_by_size(max: usize) -> Result<Vec<Vec<FinitePoset>>> {
    let cap = size_cap();
    if max > cap {
        return Err(Error::SizeCapExceeded { requested: max, cap });
    }
    let empty = FinitePoset::new(Vec::new(), &[]).expect("empty poset");
    let mut by_size: Vec<Vec<FinitePoset>> = vec![vec![empty]];
    for n in 1..=max {
        let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
        let mut reps = Vec::new();
        for p in &by_size[n - 1] {
            for d in p.downsets() {
                let q = add_maximal_element(p, d);
                if seen.insert(q.canonical_key()) {
                    reps.push(q);
                }
            }
        }
        by_size.push(reps);
    }
    Ok(by_size)
}

/// Extend a poset with one new maximal element whose strict downset is `d`.
fn add_maximal_element(p: &FinitePoset, d: Mask) -> FinitePoset {
    let n = p.len();
    let mut elements: Vec<String> = p.elements().to_vec();
    elements.push(format!("e{n}"));
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if p.leq(a, b) {
                pairs.push((a, b));
            }
        }
    }
    for a in bits(d) {
        pairs.push((a, n));
    }
    FinitePoset::new(elements, &pairs).expect("adding a maximal element keeps the order valid")
}

/// Class membership, computed from the definitions.
pub fn class_member(kind: ClassKind, p: &FinitePoset) -> bool {
    let class = p.classify();
    match kind {
        ClassKind::Poset => true,
        ClassKind::Ms => class.is_meet_semilattice,
        ClassKind::Dms => {
            class.is_meet_semilattice
                && is_distributive_semilattice(p).map(|(ok, _)| ok).unwrap_or(false)
        }
        ClassKind::Bdms => {
            class.is_meet_semilattice
                && class.has_bottom
                && is_distributive_semilattice(p).map(|(ok, _)| ok).unwrap_or(false)
        }
        ClassKind::Dl | ClassKind::Frame => {
            class.is_lattice && is_distributive_lattice(p).map(|(ok, _)| ok).unwrap_or(false)
        }
        ClassKind::Ba => {
            class.is_lattice && classify_frame(p).map(|f| f.is_boolean).unwrap_or(false)
        }
        ClassKind::Gps => false,
        ClassKind::Pgps => false,
    }
}

/// All instances of a class, grouped by size (index = carrier size; index 0
/// is always empty). Space classes are built over the enumerated carriers:
/// at finite scale a generalized Priestley space is a poset with X0 = X and
/// a pointed one is a unique-maximum poset with X0 = X \ {m}.
pub fn enumerate_instances(c: InstanceClass) -> Result<Vec<Vec<DualObject>>> {
    let posets = poset_classes_by_size(c.max_size)?;
    let mut out: Vec<Vec<DualObject>> = vec![Vec::new(); c.max_size + 1];
    for (n, reps) in posets.iter().enumerate().skip(1) {
        for p in reps {
            match c.kind {
                ClassKind::Gps => {
                    let space =
                        Space::unpointed(p.clone(), p.full_mask()).expect("x0 within carrier");
                    out[n].push(DualObject::Space(space));
                }
                ClassKind::Pgps => {
                    if let Some(m) = unique_maximum(p) {
                        let x0 = p.full_mask() & !(1 << m);
                        let space = Space::pointed(p.clone(), x0, m).expect("point in carrier");
                        out[n].push(DualObject::Space(space));
                    }
                }
                kind => {
                    if class_member(kind, p) {
                        out[n].push(DualObject::Poset(p.clone()));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn unique_maximum(p: &FinitePoset) -> Option<usize> {
    (0..p.len()).find(|&m| (0..p.len()).all(|x| p.leq(x, m)))
}

/// Brute-force count of poset isomorphism classes on exactly `n` labeled
/// elements: try all 3^(n choose 2) pair orientations, keep the transitive
/// ones, and dedup by canonical key. Independent of the staged generator.
pub fn brute_force_poset_count(n: usize) -> Result<usize> {
    if n > 5 {
        return Err(Error::SizeCapExceeded { requested: n, cap: 5 });
    }
    if n == 0 {
        return Ok(1);
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
        }
    }
    let mut keys = BTreeSet::new();
    let mut choice = vec![0u8; pairs.len()];
    loop {
        // Build the strict relation from the current orientation choice.
        let mut lt = vec![0u64; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            match choice[k] {
                1 => lt[i] |= 1 << j,
                2 => lt[j] |= 1 << i,
                _ => {}
            }
        }
        let mut transitive = true;
        'trans: for a in 0..n {
            for b in bits(lt[a]) {
                if lt[b] & !lt[a] != 0 {
                    transitive = false;
                    break 'trans;
                }
            }
        }
        if transitive {
            let elements = (0..n).map(|i| format!("e{i}")).collect();
            let mut rel_pairs = Vec::new();
            for a in 0..n {
                for b in bits(lt[a]) {
                    rel_pairs.push((a, b));
                }
            }
            let p = FinitePoset::new(elements, &rel_pairs).expect("transitive is acyclic");
            keys.insert(p.canonical_key());
        }
        // Odometer over the 3^k choices.
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Ok(keys.len());
            }
            choice[pos] += 1;
            if choice[pos] < 3 {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// Second, independent generation strategy for distributive lattices: the
/// downset lattices of small posets realize every finite distributive
/// lattice. Returns canonical keys grouped by size.
pub fn dl_keys_via_downset_lattices(max: usize) -> Result<Vec<BTreeSet<Vec<u64>>>> {
    let mut out: Vec<BTreeSet<Vec<u64>>> = vec![BTreeSet::new(); max + 1];
    if max == 0 {
        return Ok(out);
    }
    // A poset on k elements has at least k+1 downsets, so carriers of size
    // up to max-1 suffice.
    let posets = poset_classes_by_size(max.saturating_sub(1))?;
    for reps in posets.iter() {
        for p in reps {
            let downsets = p.downsets();
            if downsets.len() > max {
                continue;
            }
            let elements: Vec<String> = (0..downsets.len()).map(|i| format!("d{i}")).collect();
            let mut pairs = Vec::new();
            for (i, &x) in downsets.iter().enumerate() {
                for (j, &y) in downsets.iter().enumerate() {
                    if x & !y == 0 {
                        pairs.push((i, j));
                    }
                }
            }
            let lattice = FinitePoset::new(elements, &pairs).expect("downset order");
            out[downsets.len()].insert(lattice.canonical_key());
        }
    }
    Ok(out)
}

/// Known counting sequences, used only as advisory cross-checks in reports,
/// never as assertions.
pub fn advisory_counts(kind: ClassKind) -> Option<&'static [usize]> {
    match kind {
        // Posets up to isomorphism by size, 0-indexed; spaces with X0 = X
        // are in bijection with posets.
        ClassKind::Poset | ClassKind::Gps => Some(&[1, 1, 2, 5, 16, 63, 318, 2045, 16999]),
        // Finite meet-semilattices with a top are exactly finite lattices.
        ClassKind::Ms => Some(&[1, 1, 1, 1, 2, 5, 15, 53, 222]),
        ClassKind::Dms | ClassKind::Bdms | ClassKind::Dl | ClassKind::Frame => {
            Some(&[1, 1, 1, 1, 2, 3, 5, 8, 15])
        }
        // Boolean algebras exist only at power-of-two sizes.
        ClassKind::Ba => Some(&[0, 1, 1, 0, 1, 0, 0, 0, 1]),
        ClassKind::Pgps => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts_match_known_values() {
        let by_size = poset_classes_by_size(6).unwrap();
        let counts: Vec<usize> = by_size.iter().map(|v| v.len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63, 318]);
    }

    #[test]
    fn generator_matches_brute_force_at_small_sizes() {
        let by_size = poset_classes_by_size(4).unwrap();
        for n in 1..=4 {
            assert_eq!(by_size[n].len(), brute_force_poset_count(n).unwrap(), "size {n}");
        }
    }

    #[test]
    fn dl_census_examples() {
        let instances =
            enumerate_instances(InstanceClass { kind: ClassKind::Dl, max_size: 5 }).unwrap();
        assert_eq!(instances[1].len(), 1);
        assert_eq!(instances[4].len(), 2, "the 4-chain and B2");
        assert_eq!(instances[5].len(), 3);
    }

    #[test]
    fn dl_strategies_agree() {
        let filtered =
            enumerate_instances(InstanceClass { kind: ClassKind::Dl, max_size: 6 }).unwrap();
        let via_downsets = dl_keys_via_downset_lattices(6).unwrap();
        for n in 1..=6 {
            let keys: BTreeSet<Vec<u64>> = filtered[n]
                .iter()
                .map(|obj| match obj {
                    DualObject::Poset(p) => p.canonical_key(),
                    DualObject::Space(_) => unreachable!(),
                })
                .collect();
            assert_eq!(keys, via_downsets[n], "distributive lattices of size {n}");
        }
    }

    #[test]
    fn generator_soundness() {
        for kind in [ClassKind::Ms, ClassKind::Dl, ClassKind::Ba] {
            let instances = enumerate_instances(InstanceClass { kind, max_size: 5 }).unwrap();
            for bucket in &instances {
                for obj in bucket {
                    let DualObject::Poset(p) = obj else { panic!("poset class") };
                    assert!(class_member(kind, p));
                }
            }
        }
    }

    #[test]
    fn space_classes_have_valid_instances() {
        for kind in [ClassKind::Gps, ClassKind::Pgps] {
            let instances = enumerate_instances(InstanceClass { kind, max_size: 4 }).unwrap();
            for bucket in &instances {
                for obj in bucket {
                    let DualObject::Space(x) = obj else { panic!("space class") };
                    assert!(crate::space::check_space_axioms(x).all_pass());
                }
            }
        }
    }

    #[test]
    fn size_cap_is_enforced() {
        assert!(matches!(
            poset_classes_by_size(size_cap() + 1),
            Err(Error::SizeCapExceeded { .. })
        ));
    }

    #[test]
    fn lattice_counts_match_literature() {
        let by_size = poset_classes_by_size(6).unwrap();
        let lattice_counts: Vec<usize> = (1..=6)
            .map(|n| by_size[n].iter().filter(|p| p.classify().is_lattice).count())
            .collect();
        assert_eq!(lattice_counts, vec![1, 1, 1, 2, 5, 15]);
        let dl_counts: Vec<usize> = (1..=6)
            .map(|n| by_size[n].iter().filter(|p| class_member(ClassKind::Dl, p)).count())
            .collect();
        assert_eq!(dl_counts, vec![1, 1, 1, 2, 3, 5]);
    }
}

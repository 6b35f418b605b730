//! Lattice- and frame-level predicates: distributivity in both senses, the
//! way-below relation, compact / prime / pseudoprime / irreducible elements,
//! pseudocomplements, and the frame taxonomy.
//!
//! Prime and pseudoprime classes are computed by independent code paths on
//! purpose: their coincidence on finite frames is a theorem the harness
//! checks, not an assumption the code relies on.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{bits, BoundKind, FinitePoset, Mask};

/// Size gate for the full-powerset way-below oracle.
pub const POWERSET_ORACLE_CAP: usize = 12;

fn require_lattice(p: &FinitePoset) -> Result<()> {
    if p.classify().is_lattice {
        Ok(())
    } else {
        Err(Error::NotALattice("carrier lacks a finite meet or join".into()))
    }
}

fn require_semilattice(p: &FinitePoset) -> Result<()> {
    if p.classify().is_meet_semilattice {
        Ok(())
    } else {
        Err(Error::NotASemilattice("some finite meet is missing".into()))
    }
}

/// Join of a subset in a lattice; all joins exist once `require_lattice` passed.
fn join_all(p: &FinitePoset, s: Mask) -> usize {
    p.bound(s, BoundKind::Join).expect("finite lattice has all joins")
}

fn meet_all(p: &FinitePoset, s: Mask) -> usize {
    p.bound(s, BoundKind::Meet).expect("finite lattice has all meets")
}

/// Per-subset meet and join lookup tables, built incrementally from the
/// binary operations. Worth the memory only up to `TABLE_CAP` elements;
/// larger carriers fall back to the direct bound computation.
struct SubsetTables {
    meet: Vec<u32>,
    join: Vec<u32>,
}

const TABLE_CAP: usize = 20;

impl SubsetTables {
    fn build(p: &FinitePoset) -> Option<SubsetTables> {
        let n = p.len();
        if n == 0 || n > TABLE_CAP {
            return None;
        }
        let top = p.top()? as u32;
        let bottom = p.bottom()? as u32;
        let size = 1usize << n;
        let mut meet = vec![top; size];
        let mut join = vec![bottom; size];
        for s in 1..size {
            let low = s.trailing_zeros() as usize;
            let rest = s & (s - 1);
            meet[s] = p.meet2(meet[rest] as usize, low)? as u32;
            join[s] = p.join2(join[rest] as usize, low)? as u32;
        }
        Some(SubsetTables { meet, join })
    }

    fn meet(&self, s: Mask) -> usize {
        self.meet[s as usize] as usize
    }

    fn join(&self, s: Mask) -> usize {
        self.join[s as usize] as usize
    }
}

/// Semilattice distributivity: every a, b, c with a ∧ b <= c admit a' >= a
/// and b' >= b with a' ∧ b' = c. Returns the least witness triple in
/// declared element order when the condition fails.
pub fn is_distributive_semilattice(p: &FinitePoset) -> Result<(bool, Option<[usize; 3]>)> {
    require_semilattice(p)?;
    let n = p.len();
    for a in 0..n {
        for b in 0..n {
            let m = p.meet2(a, b).expect("meet-semilattice has binary meets");
            for c in 0..n {
                if !p.leq(m, c) {
                    continue;
                }
                let mut liftable = false;
                'search: for a2 in bits(p.up_mask(a)) {
                    for b2 in bits(p.up_mask(b)) {
                        if p.meet2(a2, b2) == Some(c) {
                            liftable = true;
                            break 'search;
                        }
                    }
                }
                if !liftable {
                    return Ok((false, Some([a, b, c])));
                }
            }
        }
    }
    Ok((true, None))
}

/// Lattice distributivity a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c), with the least
/// witness triple on failure.
pub fn is_distributive_lattice(p: &FinitePoset) -> Result<(bool, Option<[usize; 3]>)> {
    require_lattice(p)?;
    let n = p.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = p.meet2(a, join_all(p, 1 << b | 1 << c)).unwrap();
                let rhs = join_all(
                    p,
                    1 << p.meet2(a, b).unwrap() | 1 << p.meet2(a, c).unwrap(),
                );
                if lhs != rhs {
                    return Ok((false, Some([a, b, c])));
                }
            }
        }
    }
    Ok((true, None))
}

/// Way-below via directed subsets: a ≪ b iff every nonempty directed D with
/// b <= ⋁D contains some d >= a. This is the primary algorithm.
pub fn way_below(p: &FinitePoset, a: usize, b: usize) -> Result<bool> {
    require_lattice(p)?;
    for d in 1..=p.full_mask() {
        if !is_directed(p, d) {
            continue;
        }
        if !p.leq(b, join_all(p, d)) {
            continue;
        }
        if !bits(d).any(|x| p.leq(a, x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_directed(p: &FinitePoset, d: Mask) -> bool {
    if d == 0 {
        return false;
    }
    for x in bits(d) {
        for y in bits(d) {
            if p.upper_bounds(1 << x | 1 << y) & d == 0 {
                return false;
            }
        }
    }
    true
}

/// Way-below by brute force over the full powerset: a ≪ b iff for every
/// S with b <= ⋁S some subset T of S already has a <= ⋁T. Only for small
/// carriers; the directed algorithm is the production path.
pub fn way_below_powerset_oracle(p: &FinitePoset, a: usize, b: usize) -> Result<bool> {
    require_lattice(p)?;
    if p.len() > POWERSET_ORACLE_CAP {
        return Err(Error::SizeCapExceeded { requested: p.len(), cap: POWERSET_ORACLE_CAP });
    }
    for s in 0..=p.full_mask() {
        if !p.leq(b, join_all(p, s)) {
            continue;
        }
        let mut found = false;
        let mut t = s;
        loop {
            if p.leq(a, join_all(p, t)) {
                found = true;
                break;
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & s;
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The full way-below relation as per-element masks: `wb[b]` holds the set
/// {a : a ≪ b}. Same directed-subset algorithm as [`way_below`], with the
/// directed subsets and their joins precomputed once per carrier.
pub fn way_below_matrix(p: &FinitePoset) -> Result<Vec<Mask>> {
    require_lattice(p)?;
    let n = p.len();
    let tables = SubsetTables::build(p);
    let mut directed_joins: Vec<(Mask, usize)> = Vec::new();
    for d in 1..=p.full_mask() {
        if is_directed(p, d) {
            let join = match &tables {
                Some(t) => t.join(d),
                None => join_all(p, d),
            };
            directed_joins.push((d, join));
        }
    }
    let mut wb = vec![0u64; n];
    for b in 0..n {
        'pair: for a in 0..n {
            // The set an element must meet to witness a ≪ b.
            let above_a = p.up_mask(a);
            for &(d, join) in &directed_joins {
                if p.leq(b, join) && d & above_a == 0 {
                    continue 'pair;
                }
            }
            wb[b] |= 1 << a;
        }
    }
    Ok(wb)
}

/// Compact elements {k : k ≪ k}, via the directed algorithm.
pub fn compact_elements(p: &FinitePoset) -> Result<Mask> {
    let wb = way_below_matrix(p)?;
    Ok((0..p.len()).filter(|&k| wb[k] >> k & 1 == 1).fold(0, |acc, k| acc | 1 << k))
}

/// Prime, pseudoprime, and meet-irreducible elements. All three exclude the
/// top from their domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElementClasses {
    pub primes: Mask,
    pub pseudoprimes: Mask,
    pub irreducibles: Mask,
}

pub fn prime_and_pseudoprime(p: &FinitePoset) -> Result<ElementClasses> {
    require_lattice(p)?;
    let n = p.len();
    let top = p.top().expect("finite lattice has a top");
    let mut primes = 0u64;
    let mut irreducibles = 0u64;
    for q in 0..n {
        if q == top {
            continue;
        }
        let mut prime = true;
        let mut irr = true;
        for a in 0..n {
            for b in 0..n {
                let m = p.meet2(a, b).unwrap();
                if p.leq(m, q) && !p.leq(a, q) && !p.leq(b, q) {
                    prime = false;
                }
                if m == q && a != q && b != q {
                    irr = false;
                }
            }
        }
        if prime {
            primes |= 1 << q;
        }
        if irr {
            irreducibles |= 1 << q;
        }
    }
    // Pseudoprimes take an independent path through the way-below relation,
    // quantifying nonempty families of every size up to the carrier.
    let wb = way_below_matrix(p)?;
    let tables = SubsetTables::build(p);
    let mut pseudoprimes = 0u64;
    'outer: for q in 0..n {
        if q == top {
            continue;
        }
        let below_q = p.down_mask(q);
        for s in 1..=p.full_mask() {
            let m = match &tables {
                Some(t) => t.meet(s),
                None => meet_all(p, s),
            };
            if wb[q] >> m & 1 == 1 && s & below_q == 0 {
                continue 'outer;
            }
        }
        pseudoprimes |= 1 << q;
    }
    Ok(ElementClasses { primes, pseudoprimes, irreducibles })
}

/// Pseudocomplement a* = ⋁{x : a ∧ x = 0} in a finite frame.
pub fn pseudocomplement(p: &FinitePoset, a: usize) -> Result<usize> {
    let (distributive, _) = is_distributive_lattice(p).map_err(|_| {
        Error::NotAFrame("carrier is not a complete lattice".into())
    })?;
    if !distributive {
        return Err(Error::NotAFrame("carrier is not distributive".into()));
    }
    let bottom = p.bottom().ok_or(Error::NoBottom)?;
    let mut zeros = 0u64;
    for x in 0..p.len() {
        if p.meet2(a, x) == Some(bottom) {
            zeros |= 1 << x;
        }
    }
    let star = join_all(p, zeros);
    assert_eq!(p.meet2(a, star), Some(bottom), "a ∧ a* = 0 must hold in a frame");
    Ok(star)
}

/// Is `a` complemented, i.e. a ∨ a* = 1?
pub fn is_complemented(p: &FinitePoset, a: usize) -> Result<bool> {
    let star = pseudocomplement(p, a)?;
    let top = p.top().expect("finite lattice has a top");
    Ok(p.join2(a, star) == Some(top))
}

/// Classification flags for a finite lattice viewed as a candidate frame.
/// Each false flag carries a counterexample in `witnesses`, keyed by flag
/// name; witness entries are element names (set witnesses are brace-joined).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameProfile {
    pub is_distributive_lattice: bool,
    pub satisfies_jid: bool,
    pub is_frame: bool,
    pub is_compact_frame: bool,
    pub is_algebraic: bool,
    pub is_coherent: bool,
    pub is_arithmetic: bool,
    pub is_zero_dimensional: bool,
    pub is_stone_frame: bool,
    pub is_generalized_stone_frame: bool,
    pub is_boolean: bool,
    pub is_generalized_boolean: bool,
    pub witnesses: BTreeMap<String, Vec<String>>,
}

pub fn classify_frame(p: &FinitePoset) -> Result<FrameProfile> {
    require_lattice(p)?;
    let n = p.len();
    let top = p.top().expect("finite lattice has a top");
    let bottom = p.bottom().expect("finite lattice has a bottom");
    let mut witnesses: BTreeMap<String, Vec<String>> = BTreeMap::new();
    fn witness(key: &str, elems: Vec<String>, map: &mut BTreeMap<String, Vec<String>>) {
        map.entry(key.to_string()).or_insert(elems);
    }

    let (is_dl, dl_witness) = is_distributive_lattice(p)?;
    if let Some([a, b, c]) = dl_witness {
        witness(
            "is_distributive_lattice",
            vec![p.name(a).into(), p.name(b).into(), p.name(c).into()],
            &mut witnesses,
        );
    }

    let tables = SubsetTables::build(p);
    let sub_meet = |s: Mask| match &tables {
        Some(t) => t.meet(s),
        None => meet_all(p, s),
    };
    let sub_join = |s: Mask| match &tables {
        Some(t) => t.join(s),
        None => join_all(p, s),
    };

    // Join infinite distributive law, quantified over every subset.
    let mut satisfies_jid = true;
    'jid: for a in 0..n {
        for s in 0..=p.full_mask() {
            let lhs = sub_meet(1 << a | 1 << sub_join(s));
            let image = bits(s).fold(0u64, |acc, x| acc | 1 << sub_meet(1 << a | 1 << x));
            let rhs = sub_join(image);
            if lhs != rhs {
                satisfies_jid = false;
                let mut w = vec![p.name(a).to_string()];
                w.push(format!("{{{}}}", p.names_of(s).join(",")));
                witness("satisfies_jid", w, &mut witnesses);
                break 'jid;
            }
        }
    }

    let is_frame = is_dl;
    if !is_frame {
        if let Some(w) = witnesses.get("is_distributive_lattice").cloned() {
            witness("is_frame", w, &mut witnesses);
        }
    }

    let compacts = compact_elements(p)?;
    let is_compact_frame = is_frame && compacts >> top & 1 == 1;
    if is_frame && compacts >> top & 1 == 0 {
        witness("is_compact_frame", vec![p.name(top).into()], &mut witnesses);
    }

    let mut is_algebraic = true;
    for b in 0..n {
        if sub_join(compacts & p.down_mask(b)) != b {
            is_algebraic = false;
            witness("is_algebraic", vec![p.name(b).into()], &mut witnesses);
            break;
        }
    }

    // Coherent: algebraic frame whose finite meets of compacts (including
    // the empty meet, i.e. the top) are compact.
    let mut meets_of_compacts_compact = true;
    'coh: for s in 0..=p.full_mask() {
        if s & !compacts != 0 {
            continue;
        }
        let m = sub_meet(s);
        if compacts >> m & 1 == 0 {
            meets_of_compacts_compact = false;
            witness(
                "is_coherent",
                vec![format!("{{{}}}", p.names_of(s).join(","))],
                &mut witnesses,
            );
            break 'coh;
        }
    }
    let is_coherent = is_frame && is_algebraic && meets_of_compacts_compact;

    let mut binary_meets_compact = true;
    'arith: for a in bits(compacts) {
        for b in bits(compacts) {
            let m = p.meet2(a, b).unwrap();
            if compacts >> m & 1 == 0 {
                binary_meets_compact = false;
                witness("is_arithmetic", vec![p.name(a).into(), p.name(b).into()], &mut witnesses);
                break 'arith;
            }
        }
    }
    let is_arithmetic = is_frame && is_algebraic && binary_meets_compact;

    // Zero-dimensional: complemented elements are join-dense. Needs the
    // frame structure for pseudocomplements to behave.
    let mut is_zero_dimensional = is_frame;
    if is_frame {
        let mut complemented = 0u64;
        for c in 0..n {
            let zeros = (0..n)
                .filter(|&x| sub_meet(1 << c | 1 << x) == bottom)
                .fold(0u64, |acc, x| acc | 1 << x);
            let star = sub_join(zeros);
            if sub_join(1 << c | 1 << star) == top {
                complemented |= 1 << c;
            }
        }
        for b in 0..n {
            if sub_join(complemented & p.down_mask(b)) != b {
                is_zero_dimensional = false;
                witness("is_zero_dimensional", vec![p.name(b).into()], &mut witnesses);
                break;
            }
        }
    } else if let Some(w) = witnesses.get("is_frame").cloned() {
        witness("is_zero_dimensional", w, &mut witnesses);
    }

    let is_stone_frame = is_compact_frame && is_zero_dimensional;
    let is_generalized_stone_frame = is_frame && is_algebraic && is_zero_dimensional;

    let mut is_boolean = is_dl;
    if is_dl {
        for a in 0..n {
            let has_complement = (0..n)
                .any(|b| p.meet2(a, b) == Some(bottom) && p.join2(a, b) == Some(top));
            if !has_complement {
                is_boolean = false;
                witness("is_boolean", vec![p.name(a).into()], &mut witnesses);
                break;
            }
        }
    }

    // Generalized boolean: every interval [a, 1] is a boolean algebra.
    let mut is_generalized_boolean = is_dl;
    if is_dl {
        'gba: for a in 0..n {
            let interval = p.up_mask(a);
            for x in bits(interval) {
                let has_rel_complement = bits(interval)
                    .any(|y| p.meet2(x, y) == Some(a) && p.join2(x, y) == Some(top));
                if !has_rel_complement {
                    is_generalized_boolean = false;
                    witness(
                        "is_generalized_boolean",
                        vec![p.name(a).into(), p.name(x).into()],
                        &mut witnesses,
                    );
                    break 'gba;
                }
            }
        }
    }

    Ok(FrameProfile {
        is_distributive_lattice: is_dl,
        satisfies_jid,
        is_frame,
        is_compact_frame,
        is_algebraic,
        is_coherent,
        is_arithmetic,
        is_zero_dimensional,
        is_stone_frame,
        is_generalized_stone_frame,
        is_boolean,
        is_generalized_boolean,
        witnesses,
    })
}

/// A prime separating a from b: the least prime p (declared order) with
/// b <= p and a not <= p. Requires a frame and a not <= b.
pub fn separating_prime(p: &FinitePoset, a: usize, b: usize) -> Result<usize> {
    let (distributive, _) = is_distributive_lattice(p)
        .map_err(|_| Error::NotAFrame("carrier is not a complete lattice".into()))?;
    if !distributive {
        return Err(Error::NotAFrame("carrier is not distributive".into()));
    }
    if p.leq(a, b) {
        return Err(Error::PreconditionViolated(format!(
            "{} <= {}",
            p.name(a),
            p.name(b)
        )));
    }
    let classes = prime_and_pseudoprime(p)?;
    bits(classes.primes)
        .find(|&q| p.leq(b, q) && !p.leq(a, q))
        .ok_or_else(|| Error::NoPrimeFound { a: p.name(a).into(), b: p.name(b).into() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixtures::*;

    #[test]
    fn distributive_semilattice_examples() {
        let (ok, _) = is_distributive_semilattice(&b2()).unwrap();
        assert!(ok);
        let (ok, w) = is_distributive_semilattice(&m3()).unwrap();
        assert!(!ok);
        let m3 = m3();
        let [a, b, c] = w.unwrap();
        assert_eq!(
            (m3.name(a), m3.name(b), m3.name(c)),
            ("a", "b", "c"),
            "least witness triple in declared order"
        );
        let (ok, _) = is_distributive_semilattice(&ch3()).unwrap();
        assert!(ok);
        assert!(matches!(
            is_distributive_semilattice(&antichain(2)),
            Err(Error::NotASemilattice(_))
        ));
    }

    #[test]
    fn way_below_examples() {
        let b2 = b2();
        let (a, one) = (b2.idx("a").unwrap(), b2.idx("1").unwrap());
        assert!(way_below(&b2, a, one).unwrap());
        assert!(!way_below(&b2, one, a).unwrap());
        assert!(way_below_powerset_oracle(&b2, a, one).unwrap());
        assert!(!way_below_powerset_oracle(&b2, one, a).unwrap());
        let ch3 = ch3();
        let h = ch3.idx("h").unwrap();
        assert!(way_below(&ch3, h, h).unwrap());
    }

    #[test]
    fn way_below_three_way_agreement() {
        for p in [ch1(), ch2(), ch3(), b2(), m3(), n5()] {
            let matrix = way_below_matrix(&p).unwrap();
            for a in 0..p.len() {
                for b in 0..p.len() {
                    let directed = way_below(&p, a, b).unwrap();
                    let oracle = way_below_powerset_oracle(&p, a, b).unwrap();
                    assert_eq!(directed, oracle);
                    assert_eq!(directed, p.leq(a, b), "on finite lattices ≪ is <=");
                    assert_eq!(directed, matrix[b] >> a & 1 == 1);
                }
            }
        }
    }

    #[test]
    fn compact_elements_cover_the_carrier() {
        for p in [ch1(), ch3(), b2(), m3()] {
            assert_eq!(compact_elements(&p).unwrap(), p.full_mask());
        }
    }

    #[test]
    fn prime_classes_on_fixtures() {
        let b2 = b2();
        let classes = prime_and_pseudoprime(&b2).unwrap();
        assert_eq!(classes.primes, b2.mask_of(&["a", "b"]).unwrap());
        assert_eq!(classes.pseudoprimes, b2.mask_of(&["a", "b"]).unwrap());
        let ch3 = ch3();
        let classes = prime_and_pseudoprime(&ch3).unwrap();
        assert_eq!(classes.primes, ch3.mask_of(&["0", "h"]).unwrap());
        let ch1 = ch1();
        assert_eq!(prime_and_pseudoprime(&ch1).unwrap().primes, 0);
    }

    #[test]
    fn pseudocomplement_examples() {
        let b2 = b2();
        let (a, b) = (b2.idx("a").unwrap(), b2.idx("b").unwrap());
        assert_eq!(pseudocomplement(&b2, a).unwrap(), b);
        let ch3 = ch3();
        assert_eq!(pseudocomplement(&ch3, ch3.idx("h").unwrap()).unwrap(), ch3.idx("0").unwrap());
        for p in [ch3, b2] {
            let zero = p.bottom().unwrap();
            assert_eq!(pseudocomplement(&p, zero).unwrap(), p.top().unwrap());
        }
        assert!(matches!(pseudocomplement(&m3(), 1), Err(Error::NotAFrame(_))));
    }

    #[test]
    fn frame_profiles_of_fixtures() {
        let profile = classify_frame(&b2()).unwrap();
        assert!(profile.is_frame && profile.is_compact_frame && profile.is_coherent);
        assert!(profile.is_arithmetic && profile.is_zero_dimensional);
        assert!(profile.is_stone_frame && profile.is_boolean && profile.is_generalized_boolean);
        assert!(profile.satisfies_jid && profile.is_algebraic);

        let profile = classify_frame(&m3()).unwrap();
        assert!(!profile.is_frame);
        assert!(profile.witnesses.contains_key("is_distributive_lattice"));

        let profile = classify_frame(&ch3()).unwrap();
        assert!(profile.is_frame);
        assert!(!profile.is_zero_dimensional, "h is not a join of complemented elements");
        assert_eq!(profile.witnesses["is_zero_dimensional"], vec!["h".to_string()]);
        assert!(!profile.is_stone_frame && !profile.is_boolean);
    }

    #[test]
    fn jid_agrees_with_frame_on_finite_carriers() {
        for p in [ch1(), ch2(), ch3(), b2(), m3(), n5()] {
            let profile = classify_frame(&p).unwrap();
            assert_eq!(profile.satisfies_jid, profile.is_frame);
        }
    }

    #[test]
    fn separating_prime_examples() {
        let b2 = b2();
        let (a, zero, b) = (b2.idx("a").unwrap(), b2.idx("0").unwrap(), b2.idx("b").unwrap());
        assert_eq!(separating_prime(&b2, a, zero).unwrap(), b);
        let ch3 = ch3();
        let (one, h) = (ch3.idx("1").unwrap(), ch3.idx("h").unwrap());
        assert_eq!(separating_prime(&ch3, one, h).unwrap(), h);
        assert!(matches!(
            separating_prime(&b2, a, a),
            Err(Error::PreconditionViolated(_))
        ));
    }
}

//! Filters, ideals, prime and optimal filters, and the distributive
//! envelope of a finite distributive meet-semilattice.
//!
//! Optimal filters are computed along two independent routes (restriction of
//! prime filters of the envelope, and pseudoprime elements of the filter
//! lattice) and the two answers are compared on every call; a disagreement
//! is an implementation bug surfaced as [`Error::OracleMismatch`], never
//! resolved silently.

use serde::Serialize;

use crate::algebra::{is_distributive_semilattice, prime_and_pseudoprime};
use crate::error::{Error, Result};
use crate::morphism::StructureMap;
use crate::poset::{bits, FinitePoset, Mask};

/// All filters of a meet-semilattice together with their inclusion order.
#[derive(Debug, Clone)]
pub struct FilterFamily {
    pub base: FinitePoset,
    /// Filter carriers as subset masks of `base`, ascending by mask value.
    pub filters: Vec<Mask>,
    /// Poset on the filters, ordered by set inclusion; element names are the
    /// brace-joined member lists.
    pub inclusion_order: FinitePoset,
}

impl FilterFamily {
    /// Index of a filter given by carrier mask.
    pub fn position(&self, f: Mask) -> Option<usize> {
        self.filters.iter().position(|&g| g == f)
    }

    /// The improper filter (the whole carrier).
    pub fn improper(&self) -> usize {
        self.position(self.base.full_mask()).expect("the whole carrier is a filter")
    }
}

/// Canonical label of a carrier subset: member names in declared order,
/// brace-wrapped.
pub fn set_label(p: &FinitePoset, s: Mask) -> String {
    format!("{{{}}}", p.names_of(s).join(","))
}

fn require_semilattice(p: &FinitePoset) -> Result<()> {
    if p.classify().is_meet_semilattice {
        Ok(())
    } else {
        Err(Error::NotASemilattice("some finite meet is missing".into()))
    }
}

fn is_filter(p: &FinitePoset, s: Mask) -> bool {
    if s == 0 || !p.is_upset(s) {
        return false;
    }
    for a in bits(s) {
        for b in bits(s) {
            let m = p.meet2(a, b).expect("meet-semilattice has binary meets");
            if s >> m & 1 == 0 {
                return false;
            }
        }
    }
    true
}

/// Enumerate the nonempty meet-closed upsets of a finite meet-semilattice.
pub fn filters(p: &FinitePoset) -> Result<FilterFamily> {
    require_semilattice(p)?;
    let filters: Vec<Mask> = (1..=p.full_mask()).filter(|&s| is_filter(p, s)).collect();
    let elements: Vec<String> = filters.iter().map(|&f| set_label(p, f)).collect();
    let mut pairs = Vec::new();
    for (i, &f) in filters.iter().enumerate() {
        for (j, &g) in filters.iter().enumerate() {
            if f & !g == 0 {
                pairs.push((i, j));
            }
        }
    }
    let inclusion_order = FinitePoset::new(elements, &pairs)?;
    Ok(FilterFamily { base: p.clone(), filters, inclusion_order })
}

/// Proper filters P with F1 ∩ F2 ⊆ P forcing F1 ⊆ P or F2 ⊆ P. The improper
/// filter is excluded here; the spectrum functor adjoins it back as the
/// point m.
pub fn prime_filters(p: &FinitePoset) -> Result<Vec<Mask>> {
    let family = filters(p)?;
    let full = p.full_mask();
    let mut primes = Vec::new();
    'outer: for &cand in &family.filters {
        if cand == full {
            continue;
        }
        for &f1 in &family.filters {
            for &f2 in &family.filters {
                let inter = f1 & f2;
                if inter & !cand == 0 && f1 & !cand != 0 && f2 & !cand != 0 {
                    continue 'outer;
                }
            }
        }
        primes.push(cand);
    }
    Ok(primes)
}

/// All ideals (nonempty downsets in which every finite subset has an upper
/// bound inside the ideal), each with its prime flag. The improper ideal is
/// listed but never prime.
pub fn ideals(p: &FinitePoset) -> Result<Vec<(Mask, bool)>> {
    require_semilattice(p)?;
    let full = p.full_mask();
    let mut out = Vec::new();
    'cand: for s in 1..=full {
        if !p.is_downset(s) {
            continue;
        }
        // Every finite subset of the ideal needs an upper bound inside it;
        // the empty subset makes nonemptiness part of the same condition.
        let mut t = s;
        loop {
            if !bits(s).any(|c| t & !p.down_mask(c) == 0) {
                continue 'cand;
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & s;
        }
        let mut prime = s != full;
        if prime {
            'prime: for a in 0..p.len() {
                for b in 0..p.len() {
                    let m = p.meet2(a, b).expect("meet-semilattice has binary meets");
                    if s >> m & 1 == 1 && s >> a & 1 == 0 && s >> b & 1 == 0 {
                        prime = false;
                        break 'prime;
                    }
                }
            }
        }
        out.push((s, prime));
    }
    Ok(out)
}

/// The distributive envelope realized inside the powerset of the prime
/// filters, with the embedding a ↦ φ(a).
#[derive(Debug, Clone)]
pub struct EnvelopeResult {
    pub envelope: FinitePoset,
    pub embedding: StructureMap,
    /// Envelope elements as masks over the prime-filter list, parallel to
    /// the envelope carrier.
    pub point_sets: Vec<Mask>,
    pub prime_filter_list: Vec<Mask>,
}

fn require_distributive(p: &FinitePoset) -> Result<()> {
    let (ok, witness) = is_distributive_semilattice(p)?;
    if ok {
        Ok(())
    } else {
        let [a, b, c] = witness.expect("failure carries a witness");
        Err(Error::NotDistributive {
            a: p.name(a).into(),
            b: p.name(b).into(),
            c: p.name(c).into(),
        })
    }
}

/// Compute φ(a) = {P prime : a ∈ P} as a mask over `primes`.
fn phi(primes: &[Mask], a: usize) -> Mask {
    primes
        .iter()
        .enumerate()
        .filter(|(_, &f)| f >> a & 1 == 1)
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// The sublattice of the powerset of prime filters generated by the φ-image
/// under union and intersection, with the empty and full set adjoined.
pub fn distributive_envelope(p: &FinitePoset) -> Result<EnvelopeResult> {
    require_distributive(p)?;
    let primes = prime_filters(p)?;
    let full: Mask = if primes.is_empty() { 0 } else { (1u64 << primes.len()) - 1 };
    let mut sets: Vec<Mask> = vec![0, full];
    for a in 0..p.len() {
        sets.push(phi(&primes, a));
    }
    sets.sort_unstable();
    sets.dedup();
    loop {
        let mut added = false;
        let snapshot = sets.clone();
        for &x in &snapshot {
            for &y in &snapshot {
                for z in [x | y, x & y] {
                    if let Err(pos) = sets.binary_search(&z) {
                        sets.insert(pos, z);
                        added = true;
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    let prime_labels: Vec<String> = primes.iter().map(|&f| set_label(p, f)).collect();
    let elements: Vec<String> = sets
        .iter()
        .map(|&s| {
            let members: Vec<&str> =
                bits(s).map(|i| prime_labels[i].as_str()).collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    let mut pairs = Vec::new();
    for (i, &x) in sets.iter().enumerate() {
        for (j, &y) in sets.iter().enumerate() {
            if x & !y == 0 {
                pairs.push((i, j));
            }
        }
    }
    let envelope = FinitePoset::new(elements, &pairs)?;
    let map: Vec<usize> = (0..p.len())
        .map(|a| sets.binary_search(&phi(&primes, a)).expect("φ image is generated"))
        .collect();
    let embedding = StructureMap::new(p.clone(), envelope.clone(), map)?;
    Ok(EnvelopeResult { envelope, embedding, point_sets: sets, prime_filter_list: primes })
}

/// Optimal filters, computed two ways and cross-checked: restrictions of
/// prime filters of the envelope, and pseudoprime elements of the filter
/// lattice. Only proper results are kept.
pub fn optimal_filters(p: &FinitePoset) -> Result<Vec<Mask>> {
    require_distributive(p)?;
    let env = distributive_envelope(p)?;
    let full = p.full_mask();

    let mut via_envelope: Vec<Mask> = Vec::new();
    for q in prime_filters(&env.envelope)? {
        let mut restricted: Mask = 0;
        for a in 0..p.len() {
            if q >> env.embedding.map[a] & 1 == 1 {
                restricted |= 1 << a;
            }
        }
        if restricted != full {
            via_envelope.push(restricted);
        }
    }
    via_envelope.sort_unstable();
    via_envelope.dedup();

    let family = filters(p)?;
    let classes = prime_and_pseudoprime(&family.inclusion_order)?;
    let mut via_pseudoprimes: Vec<Mask> =
        bits(classes.pseudoprimes).map(|i| family.filters[i]).collect();
    via_pseudoprimes.sort_unstable();

    if via_envelope != via_pseudoprimes {
        return Err(Error::OracleMismatch(format!(
            "envelope route {:?} vs pseudoprime route {:?}",
            via_envelope.iter().map(|&f| set_label(p, f)).collect::<Vec<_>>(),
            via_pseudoprimes.iter().map(|&f| set_label(p, f)).collect::<Vec<_>>(),
        )));
    }
    Ok(via_envelope)
}

/// Serialized form of a filter family: member arrays plus the nested poset
/// document for the inclusion order.
#[derive(Debug, Clone, Serialize)]
pub struct FilterFamilyDoc {
    pub filters: Vec<Vec<String>>,
    pub inclusion_order: crate::doc::PosetDoc,
}

impl FilterFamily {
    pub fn to_doc(&self) -> FilterFamilyDoc {
        FilterFamilyDoc {
            filters: self.filters.iter().map(|&f| self.base.names_of(f)).collect(),
            inclusion_order: crate::doc::PosetDoc::from_poset(&self.inclusion_order),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixtures::*;

    #[test]
    fn filter_counts_and_shapes() {
        let fam = filters(&ch1()).unwrap();
        assert_eq!(fam.filters.len(), 1);
        let fam = filters(&ch3()).unwrap();
        assert_eq!(fam.filters.len(), 3);
        assert!(fam.inclusion_order.classify().is_chain);
        let fam = filters(&b2()).unwrap();
        assert_eq!(fam.filters.len(), 4);
        let b2 = b2();
        let expected: Vec<Mask> = vec![
            b2.mask_of(&["1"]).unwrap(),
            b2.mask_of(&["a", "1"]).unwrap(),
            b2.mask_of(&["b", "1"]).unwrap(),
            b2.full_mask(),
        ];
        let mut sorted = expected.clone();
        sorted.sort_unstable();
        assert_eq!(fam.filters, sorted);
    }

    #[test]
    fn every_filter_is_principal_and_filt_is_dual() {
        for p in [ch1(), ch2(), ch3(), b2(), m3(), n5()] {
            let fam = filters(&p).unwrap();
            assert_eq!(fam.filters.len(), p.len());
            for &f in &fam.filters {
                let m = p.bound(f, crate::poset::BoundKind::Meet).expect("filter has a meet");
                assert_eq!(f, p.up_mask(m), "every filter of a finite semilattice is principal");
            }
            // F ↦ ⋀F is an order-isomorphism onto the order-dual.
            for (i, &f) in fam.filters.iter().enumerate() {
                for (j, &g) in fam.filters.iter().enumerate() {
                    let mf = p.bound(f, crate::poset::BoundKind::Meet).unwrap();
                    let mg = p.bound(g, crate::poset::BoundKind::Meet).unwrap();
                    assert_eq!(fam.inclusion_order.leq(i, j), p.leq(mg, mf));
                }
            }
        }
    }

    #[test]
    fn prime_filter_examples() {
        let b2 = b2();
        let primes = prime_filters(&b2).unwrap();
        assert_eq!(
            primes,
            vec![b2.mask_of(&["a", "1"]).unwrap(), b2.mask_of(&["b", "1"]).unwrap()]
        );
        let ch3 = ch3();
        let primes = prime_filters(&ch3).unwrap();
        assert_eq!(
            primes,
            vec![ch3.mask_of(&["1"]).unwrap(), ch3.mask_of(&["h", "1"]).unwrap()]
        );
        assert!(prime_filters(&ch1()).unwrap().is_empty());
    }

    #[test]
    fn ideal_examples() {
        let ch3 = ch3();
        let ideals = ideals(&ch3).unwrap();
        assert_eq!(ideals.len(), 3);
        assert_eq!(ideals.iter().filter(|(_, prime)| *prime).count(), 2);

        let b2 = b2();
        let list = super::ideals(&b2).unwrap();
        let masks: Vec<Mask> = list.iter().map(|&(m, _)| m).collect();
        assert_eq!(masks.len(), 4, "the downset {{0,a,b}} has no internal upper bound");
        let primes: Vec<Mask> = list.iter().filter(|(_, p)| *p).map(|&(m, _)| m).collect();
        assert_eq!(
            primes,
            vec![b2.mask_of(&["0", "a"]).unwrap(), b2.mask_of(&["0", "b"]).unwrap()]
        );

        let list = super::ideals(&ch1()).unwrap();
        assert_eq!(list, vec![(1, false)], "the only ideal of CH1 is improper");
    }

    #[test]
    fn prime_ideal_complement_is_prime_filter() {
        for p in [ch2(), ch3(), b2(), n5()] {
            let primes = prime_filters(&p).unwrap();
            for (ideal, prime) in ideals(&p).unwrap() {
                let complement = p.full_mask() & !ideal;
                let complement_is_prime_filter = primes.contains(&complement);
                if prime {
                    assert!(complement_is_prime_filter);
                }
                if complement_is_prime_filter {
                    assert!(prime, "complement of a prime filter must be a prime ideal");
                }
            }
        }
    }

    #[test]
    fn envelope_of_fixtures_is_isomorphic_to_the_base() {
        for p in [ch1(), ch3(), b2()] {
            let env = distributive_envelope(&p).unwrap();
            assert!(
                env.envelope.find_isomorphism(&p).is_some(),
                "finite distributive M is already a lattice, so D(M) ≅ M"
            );
            // The embedding is injective and preserves binary meets.
            let e = &env.embedding;
            for a in 0..p.len() {
                for b in 0..p.len() {
                    assert_eq!(
                        e.map[p.meet2(a, b).unwrap()],
                        env.envelope.meet2(e.map[a], e.map[b]).unwrap()
                    );
                    if a != b {
                        assert_ne!(e.map[a], e.map[b]);
                    }
                    if let Some(j) = p.join2(a, b) {
                        assert_eq!(
                            e.map[j],
                            env.envelope.join2(e.map[a], e.map[b]).unwrap(),
                            "existing joins are preserved"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn envelope_rejects_nondistributive() {
        assert!(matches!(distributive_envelope(&m3()), Err(Error::NotDistributive { .. })));
    }

    #[test]
    fn filter_family_serializes_with_nested_order() {
        let fam = filters(&ch3()).unwrap();
        let doc = fam.to_doc();
        assert_eq!(doc.filters, vec![vec!["1"], vec!["h", "1"], vec!["0", "h", "1"]]);
        let json = serde_json::to_string(&doc).unwrap();
        assert!(json.contains("inclusion_order"));
    }

    #[test]
    fn optimal_filters_two_oracle_agreement() {
        let b2 = b2();
        assert_eq!(optimal_filters(&b2).unwrap(), prime_filters(&b2).unwrap());
        let ch3 = ch3();
        assert_eq!(optimal_filters(&ch3).unwrap(), prime_filters(&ch3).unwrap());
        assert!(optimal_filters(&ch1()).unwrap().is_empty());
    }
}

//! Property tests over randomly generated posets: structural invariants
//! that should hold for every carrier, not just the named fixtures.

use proptest::prelude::*;

use duality_core::doc::PosetDoc;
use duality_core::poset::{bits, BoundKind, FinitePoset};
use duality_core::space::{admissible_clopen_upsets, Space};

/// Random poset on up to 6 elements: orient a random subset of the i < j
/// pairs, which is always acyclic, then close.
fn arb_poset() -> impl Strategy<Value = FinitePoset> {
    (1usize..=6, proptest::collection::vec(any::<bool>(), 15)).prop_map(|(n, edges)| {
        let elements = (0..n).map(|i| format!("e{i}")).collect();
        let mut pairs = Vec::new();
        let mut k = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if edges[k % edges.len()] {
                    pairs.push((i, j));
                }
                k += 1;
            }
        }
        FinitePoset::new(elements, &pairs).expect("upward-oriented pairs are acyclic")
    })
}

proptest! {
    #[test]
    fn loaded_order_is_its_own_closure(p in arb_poset()) {
        let mut pairs = Vec::new();
        for a in 0..p.len() {
            for b in 0..p.len() {
                if p.leq(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        let rebuilt = FinitePoset::new(p.elements().to_vec(), &pairs).unwrap();
        prop_assert!(rebuilt.same_labeled(&p));
    }

    #[test]
    fn meet_is_the_greatest_lower_bound(p in arb_poset(), s in any::<u64>()) {
        let s = s & p.full_mask();
        if let Some(g) = p.bound(s, BoundKind::Meet) {
            let lb = p.lower_bounds(s);
            prop_assert!(lb >> g & 1 == 1);
            for l in bits(lb) {
                prop_assert!(p.leq(l, g));
            }
            for i in bits(s) {
                prop_assert!(p.leq(g, i));
            }
        }
    }

    #[test]
    fn relabeling_preserves_canonical_key(p in arb_poset(), rot in 0usize..6) {
        let n = p.len();
        let renamed: Vec<String> = (0..n).map(|i| format!("r{}", (i + rot) % n)).collect();
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if p.leq(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        let q = FinitePoset::new(renamed, &pairs).unwrap();
        prop_assert_eq!(p.canonical_key(), q.canonical_key());
        prop_assert!(p.find_isomorphism(&q).is_some());
    }

    #[test]
    fn poset_documents_round_trip(p in arb_poset()) {
        let doc = PosetDoc::from_poset(&p);
        let back = doc.to_poset().unwrap();
        prop_assert!(back.same_labeled(&p));
    }

    #[test]
    fn semilattice_filters_are_principal(p in arb_poset()) {
        if !p.classify().is_meet_semilattice {
            return Ok(());
        }
        let fam = duality_core::filters::filters(&p).unwrap();
        prop_assert_eq!(fam.filters.len(), p.len());
        for &f in &fam.filters {
            let g = p.bound(f, BoundKind::Meet).unwrap();
            prop_assert_eq!(f, p.up_mask(g));
        }
    }

    #[test]
    fn admissible_families_are_intersection_closed(p in arb_poset(), x0_bits in any::<u64>()) {
        let x0 = x0_bits & p.full_mask();
        let space = Space::unpointed(p, x0).unwrap();
        let family = admissible_clopen_upsets(&space);
        for &u in &family.sets {
            for &v in &family.sets {
                prop_assert!(
                    family.contains(u & v),
                    "admissible upsets must be closed under intersection"
                );
            }
        }
    }
}

//! Finite posets and the order-theoretic primitives everything else consumes.
//!
//! A [`FinitePoset`] owns its carrier (a list of distinct element names) and a
//! reflexive-transitive-antisymmetric order, stored as per-element up/down
//! bitmasks. Subsets of the carrier are plain `u64` masks: bit `i` stands for
//! `elements[i]`. Declared element order is the tie-breaking order for every
//! operation that must pick one of several valid answers.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on carrier size so subsets fit in a `u64` with room to spare.
pub const MAX_ELEMENTS: usize = 60;

/// Subset of a poset carrier, bit `i` = element `i`.
pub type Mask = u64;

/// Iterate the element indices of a mask in ascending order.
pub fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundKind {
    Meet,
    Join,
}

/// Structural classification of a finite poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetClass {
    pub is_meet_semilattice: bool,
    pub is_lattice: bool,
    pub has_top: bool,
    pub has_bottom: bool,
    pub is_chain: bool,
    pub is_antichain: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    /// up[i] = mask of all j with i <= j (includes i).
    up: Vec<Mask>,
    /// down[i] = mask of all j with j <= i (includes i).
    down: Vec<Mask>,
}

impl FinitePoset {
    /// Build a poset from element names and a generating relation given as
    /// index pairs. The relation is closed reflexively and transitively;
    /// antisymmetry violations after closure are rejected.
    pub fn new(elements: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge { n, limit: MAX_ELEMENTS });
        }
        let mut index = HashMap::with_capacity(n);
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::DuplicateElement(e.clone()));
            }
        }
        let mut up = vec![0u64; n];
        for i in 0..n {
            up[i] |= 1 << i;
        }
        for &(a, b) in pairs {
            debug_assert!(a < n && b < n);
            up[a] |= 1 << b;
        }
        // Warshall closure over the up-masks.
        for k in 0..n {
            for i in 0..n {
                if up[i] >> k & 1 == 1 {
                    up[i] |= up[k];
                }
            }
        }
        for i in 0..n {
            for j in bits(up[i]) {
                if j != i && up[j] >> i & 1 == 1 {
                    return Err(Error::Cycle { a: elements[i].clone(), b: elements[j].clone() });
                }
            }
        }
        let mut down = vec![0u64; n];
        for i in 0..n {
            for j in bits(up[i]) {
                down[j] |= 1 << i;
            }
        }
        Ok(FinitePoset { elements, index, up, down })
    }

    /// Same as [`FinitePoset::new`] but with name pairs.
    pub fn from_names(elements: Vec<String>, pairs: &[(String, String)]) -> Result<Self> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::DuplicateElement(e.clone()));
            }
        }
        let mut idx_pairs = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let ia = *index.get(a).ok_or_else(|| Error::UnknownElement(a.clone()))?;
            let ib = *index.get(b).ok_or_else(|| Error::UnknownElement(b.clone()))?;
            idx_pairs.push((ia, ib));
        }
        FinitePoset::new(elements, &idx_pairs)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn idx(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.idx(name).ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn full_mask(&self) -> Mask {
        if self.elements.is_empty() {
            0
        } else {
            (1u64 << self.elements.len()) - 1
        }
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a] >> b & 1 == 1
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn up_mask(&self, a: usize) -> Mask {
        self.up[a]
    }

    pub fn down_mask(&self, a: usize) -> Mask {
        self.down[a]
    }

    /// Upward closure of a subset.
    pub fn up_closure(&self, s: Mask) -> Mask {
        bits(s).fold(0, |acc, i| acc | self.up[i])
    }

    /// Downward closure of a subset.
    pub fn down_closure(&self, s: Mask) -> Mask {
        bits(s).fold(0, |acc, i| acc | self.down[i])
    }

    pub fn is_upset(&self, s: Mask) -> bool {
        self.up_closure(s) == s
    }

    pub fn is_downset(&self, s: Mask) -> bool {
        self.down_closure(s) == s
    }

    /// Maximal elements of a subset.
    pub fn maximal_in(&self, s: Mask) -> Mask {
        bits(s).filter(|&i| self.up[i] & s == 1 << i).fold(0, |acc, i| acc | (1 << i))
    }

    /// Minimal elements of a subset.
    pub fn minimal_in(&self, s: Mask) -> Mask {
        bits(s).filter(|&i| self.down[i] & s == 1 << i).fold(0, |acc, i| acc | (1 << i))
    }

    /// Common lower bounds of a subset (the full carrier for the empty set).
    pub fn lower_bounds(&self, s: Mask) -> Mask {
        bits(s).fold(self.full_mask(), |acc, i| acc & self.down[i])
    }

    /// Common upper bounds of a subset.
    pub fn upper_bounds(&self, s: Mask) -> Mask {
        bits(s).fold(self.full_mask(), |acc, i| acc & self.up[i])
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.down[i] == self.full_mask())
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.up[i] == self.full_mask())
    }

    /// Greatest lower bound or least upper bound of a subset, when it exists.
    /// The empty meet is the top and the empty join is the bottom.
    pub fn bound(&self, s: Mask, kind: BoundKind) -> Option<usize> {
        let candidates = match kind {
            BoundKind::Meet => self.lower_bounds(s),
            BoundKind::Join => self.upper_bounds(s),
        };
        match kind {
            BoundKind::Meet => bits(candidates).find(|&g| candidates & self.down[g] == candidates),
            BoundKind::Join => bits(candidates).find(|&l| candidates & self.up[l] == candidates),
        }
    }

    pub fn meet2(&self, a: usize, b: usize) -> Option<usize> {
        self.bound(1 << a | 1 << b, BoundKind::Meet)
    }

    pub fn join2(&self, a: usize, b: usize) -> Option<usize> {
        self.bound(1 << a | 1 << b, BoundKind::Join)
    }

    /// Cover pairs (x, y): x < y with nothing strictly between.
    pub fn hasse_covers(&self) -> Vec<(usize, usize)> {
        let mut covers = Vec::new();
        for x in 0..self.len() {
            for y in 0..self.len() {
                if self.lt(x, y) {
                    let between = self.up[x] & self.down[y] & !(1 << x) & !(1 << y);
                    if between == 0 {
                        covers.push((x, y));
                    }
                }
            }
        }
        covers
    }

    pub fn classify(&self) -> PosetClass {
        let n = self.len();
        let has_top = self.top().is_some();
        let has_bottom = self.bottom().is_some();
        let mut binary_meets = true;
        let mut binary_joins = true;
        for a in 0..n {
            for b in 0..n {
                if self.meet2(a, b).is_none() {
                    binary_meets = false;
                }
                if self.join2(a, b).is_none() {
                    binary_joins = false;
                }
            }
        }
        // Finite meets of all arities exist iff the empty and binary ones do.
        let is_meet_semilattice = n > 0 && has_top && binary_meets;
        let is_lattice = is_meet_semilattice && has_bottom && binary_joins;
        let mut is_chain = true;
        let mut is_antichain = true;
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    if !self.leq(a, b) && !self.leq(b, a) {
                        is_chain = false;
                    }
                    if self.leq(a, b) {
                        is_antichain = false;
                    }
                }
            }
        }
        PosetClass { is_meet_semilattice, is_lattice, has_top, has_bottom, is_chain, is_antichain }
    }

    /// The order-dual poset on the same carrier.
    pub fn order_dual(&self) -> FinitePoset {
        FinitePoset {
            elements: self.elements.clone(),
            index: self.index.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// Subposet induced on the elements of `s`, keeping names and the
    /// declared-order of the ambient carrier.
    pub fn restrict(&self, s: Mask) -> FinitePoset {
        let kept: Vec<usize> = bits(s).collect();
        let elements: Vec<String> = kept.iter().map(|&i| self.elements[i].clone()).collect();
        let mut pairs = Vec::new();
        for (ai, &a) in kept.iter().enumerate() {
            for (bi, &b) in kept.iter().enumerate() {
                if self.leq(a, b) {
                    pairs.push((ai, bi));
                }
            }
        }
        FinitePoset::new(elements, &pairs).expect("restriction of a valid order is a valid order")
    }

    /// All upsets, ascending by mask value.
    pub fn upsets(&self) -> Vec<Mask> {
        (0..=self.full_mask()).filter(|&s| self.is_upset(s)).collect()
    }

    /// All downsets, ascending by mask value.
    pub fn downsets(&self) -> Vec<Mask> {
        (0..=self.full_mask()).filter(|&s| self.is_downset(s)).collect()
    }

    pub fn names_of(&self, s: Mask) -> Vec<String> {
        bits(s).map(|i| self.elements[i].clone()).collect()
    }

    pub fn mask_of(&self, names: &[&str]) -> Result<Mask> {
        let mut m = 0;
        for name in names {
            m |= 1 << self.require(name)?;
        }
        Ok(m)
    }

    /// True when the two posets have the same named carrier and the same
    /// order under the name identification (declared order may differ).
    pub fn same_labeled(&self, other: &FinitePoset) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut map = Vec::with_capacity(self.len());
        for e in &self.elements {
            match other.idx(e) {
                Some(j) => map.push(j),
                None => return false,
            }
        }
        for a in 0..self.len() {
            for b in 0..self.len() {
                if self.leq(a, b) != other.leq(map[a], map[b]) {
                    return false;
                }
            }
        }
        true
    }

    /// Per-element invariant used to cut the isomorphism search space:
    /// iterated refinement of (|down|, |up|) by cover neighborhoods.
    fn invariants(&self) -> Vec<u64> {
        let n = self.len();
        let covers = self.hasse_covers();
        let mut inv: Vec<u64> = (0..n)
            .map(|i| (self.down[i].count_ones() as u64) << 8 | self.up[i].count_ones() as u64)
            .collect();
        for _ in 0..2 {
            let mut next = Vec::with_capacity(n);
            for i in 0..n {
                let mut ups: Vec<u64> = covers.iter().filter(|&&(x, _)| x == i).map(|&(_, y)| inv[y]).collect();
                let mut downs: Vec<u64> = covers.iter().filter(|&&(_, y)| y == i).map(|&(x, _)| inv[x]).collect();
                ups.sort_unstable();
                downs.sort_unstable();
                let mut h = inv[i].wrapping_mul(0x9e3779b97f4a7c15);
                for v in ups.iter().chain(downs.iter()) {
                    h = (h ^ v.wrapping_add(0x100)).wrapping_mul(0x100000001b3);
                }
                next.push(h.rotate_left(17) ^ inv[i]);
            }
            inv = next;
        }
        inv
    }

    /// Order-isomorphism onto `other`, if one exists. Deterministic: first
    /// match found by backtracking in declared element order on both sides.
    pub fn find_isomorphism(&self, other: &FinitePoset) -> Option<Vec<usize>> {
        self.find_isomorphism_with(other, |_, _| true)
    }

    /// Isomorphism search with an extra per-pair constraint (used for space
    /// isomorphisms that must respect distinguished subsets).
    pub fn find_isomorphism_with<F>(&self, other: &FinitePoset, admissible: F) -> Option<Vec<usize>>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        if n == 0 {
            return Some(Vec::new());
        }
        let inv_a = self.invariants();
        let inv_b = other.invariants();
        {
            let mut sa = inv_a.clone();
            let mut sb = inv_b.clone();
            sa.sort_unstable();
            sb.sort_unstable();
            if sa != sb {
                return None;
            }
        }
        let mut assign: Vec<usize> = Vec::with_capacity(n);
        let mut used = 0u64;
        fn backtrack<F>(
            a: &FinitePoset,
            b: &FinitePoset,
            inv_a: &[u64],
            inv_b: &[u64],
            admissible: &F,
            assign: &mut Vec<usize>,
            used: &mut Mask,
        ) -> bool
        where
            F: Fn(usize, usize) -> bool,
        {
            let i = assign.len();
            if i == a.len() {
                return true;
            }
            for j in 0..b.len() {
                if *used >> j & 1 == 1 || inv_a[i] != inv_b[j] || !admissible(i, j) {
                    continue;
                }
                let ok = (0..i).all(|k| {
                    a.leq(k, i) == b.leq(assign[k], j) && a.leq(i, k) == b.leq(j, assign[k])
                });
                if ok {
                    assign.push(j);
                    *used |= 1 << j;
                    if backtrack(a, b, inv_a, inv_b, admissible, assign, used) {
                        return true;
                    }
                    assign.pop();
                    *used &= !(1 << j);
                }
            }
            false
        }
        if backtrack(self, other, &inv_a, &inv_b, &admissible, &mut assign, &mut used) {
            Some(assign)
        } else {
            None
        }
    }

    /// Canonical form for isomorphism-class deduplication: the minimal
    /// row-major adjacency encoding over all invariant-respecting
    /// permutations. Two posets are isomorphic iff their keys agree.
    pub fn canonical_key(&self) -> Vec<u64> {
        let n = self.len();
        if n == 0 {
            return Vec::new();
        }
        let inv = self.invariants();
        // Group elements into classes sorted by invariant value; candidate
        // permutations assign positions class block by class block.
        let mut sorted_vals: Vec<u64> = inv.clone();
        sorted_vals.sort_unstable();
        sorted_vals.dedup();
        let classes: Vec<Vec<usize>> = sorted_vals
            .iter()
            .map(|v| (0..n).filter(|&i| inv[i] == *v).collect())
            .collect();
        let mut perm: Vec<usize> = Vec::with_capacity(n);
        let mut best: Option<Vec<u64>> = None;
        fn enumerate(
            p: &FinitePoset,
            classes: &[Vec<usize>],
            class_idx: usize,
            remaining: Mask,
            perm: &mut Vec<usize>,
            best: &mut Option<Vec<u64>>,
        ) {
            if class_idx == classes.len() {
                let n = p.len();
                let mut key = vec![0u64; n];
                for (pos_i, &i) in perm.iter().enumerate() {
                    for (pos_j, &j) in perm.iter().enumerate() {
                        if p.leq(i, j) {
                            key[pos_i] |= 1 << pos_j;
                        }
                    }
                }
                if best.as_ref().is_none_or(|b| key < *b) {
                    *best = Some(key);
                }
                return;
            }
            let class = &classes[class_idx];
            if remaining == 0 {
                // All members of this class placed; move on.
                enumerate(p, classes, class_idx + 1, full_class_mask(classes, class_idx + 1), perm, best);
                return;
            }
            for (slot, &elem) in class.iter().enumerate() {
                if remaining >> slot & 1 == 1 {
                    perm.push(elem);
                    enumerate(p, classes, class_idx, remaining & !(1 << slot), perm, best);
                    perm.pop();
                }
            }
        }
        fn full_class_mask(classes: &[Vec<usize>], idx: usize) -> Mask {
            match classes.get(idx) {
                Some(class) if !class.is_empty() => (1u64 << class.len()) - 1,
                _ => 0,
            }
        }
        enumerate(self, &classes, 0, full_class_mask(&classes, 0), &mut perm, &mut best);
        best.expect("at least one permutation exists")
    }
}

/// Named fixtures used across the test suites.
pub mod fixtures {
    use super::FinitePoset;

    fn build(names: &[&str], pairs: &[(&str, &str)]) -> FinitePoset {
        let elements = names.iter().map(|s| s.to_string()).collect();
        let pairs: Vec<(String, String)> =
            pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        FinitePoset::from_names(elements, &pairs).expect("fixture is a valid poset")
    }

    /// One-element chain.
    pub fn ch1() -> FinitePoset {
        build(&["1"], &[])
    }

    /// Two-element chain 0 < 1.
    pub fn ch2() -> FinitePoset {
        build(&["0", "1"], &[("0", "1")])
    }

    /// Three-element chain 0 < h < 1.
    pub fn ch3() -> FinitePoset {
        build(&["0", "h", "1"], &[("0", "h"), ("h", "1")])
    }

    /// Four-element boolean lattice {0, a, b, 1}.
    pub fn b2() -> FinitePoset {
        build(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    }

    /// Diamond M3: three incomparable atoms between bounds.
    pub fn m3() -> FinitePoset {
        build(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
    }

    /// Pentagon N5: 0 < a < c < 1 and 0 < b < 1 with b incomparable to a, c.
    pub fn n5() -> FinitePoset {
        build(&["0", "a", "b", "c", "1"], &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")])
    }

    /// Antichain on `k` elements named x0, x1, ...
    pub fn antichain(k: usize) -> FinitePoset {
        let elements = (0..k).map(|i| format!("x{i}")).collect();
        FinitePoset::new(elements, &[]).expect("antichain is a valid poset")
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn loader_closes_generating_relation() {
        let b2 = b2();
        let (z, o) = (b2.idx("0").unwrap(), b2.idx("1").unwrap());
        assert!(b2.leq(z, o), "0 <= 1 must be inferred by transitive closure");
    }

    #[test]
    fn loader_rejects_cycles() {
        let err = FinitePoset::from_names(
            vec!["x".into(), "y".into()],
            &[("x".into(), "y".into()), ("y".into(), "x".into())],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Cycle { .. }));
    }

    #[test]
    fn loader_rejects_unknown_and_duplicate() {
        let err =
            FinitePoset::from_names(vec!["x".into()], &[("x".into(), "z".into())]).unwrap_err();
        assert!(matches!(err, Error::UnknownElement(_)));
        let err = FinitePoset::from_names(vec!["x".into(), "x".into()], &[]).unwrap_err();
        assert!(matches!(err, Error::DuplicateElement(_)));
    }

    #[test]
    fn closure_is_idempotent() {
        // Rebuilding from the closed relation reproduces the same order.
        for p in [ch3(), b2(), m3(), n5()] {
            let mut pairs = Vec::new();
            for a in 0..p.len() {
                for b in 0..p.len() {
                    if p.leq(a, b) {
                        pairs.push((a, b));
                    }
                }
            }
            let q = FinitePoset::new(p.elements().to_vec(), &pairs).unwrap();
            assert!(p.same_labeled(&q));
        }
    }

    #[test]
    fn hasse_covers_match_brute_force() {
        let b2 = b2();
        let mut covers = b2.hasse_covers();
        covers.sort_unstable();
        let named: Vec<(String, String)> = covers
            .iter()
            .map(|&(x, y)| (b2.name(x).to_string(), b2.name(y).to_string()))
            .collect();
        assert_eq!(
            named,
            vec![
                ("0".to_string(), "a".to_string()),
                ("0".to_string(), "b".to_string()),
                ("a".to_string(), "1".to_string()),
                ("b".to_string(), "1".to_string()),
            ]
        );
        assert_eq!(ch2().hasse_covers().len(), 1);
        assert!(antichain(2).hasse_covers().is_empty());
    }

    #[test]
    fn bounds_on_fixtures() {
        let b2 = b2();
        let ab = b2.mask_of(&["a", "b"]).unwrap();
        assert_eq!(b2.bound(ab, BoundKind::Meet), b2.idx("0"));
        assert_eq!(b2.bound(ab, BoundKind::Join), b2.idx("1"));
        assert_eq!(b2.bound(0, BoundKind::Meet), b2.idx("1"), "empty meet is the top");
        assert_eq!(b2.bound(0, BoundKind::Join), b2.idx("0"), "empty join is the bottom");
        let pair = antichain(2);
        assert_eq!(pair.bound(pair.full_mask(), BoundKind::Meet), None);
        assert_eq!(pair.bound(0, BoundKind::Meet), None, "no top, no empty meet");
    }

    #[test]
    fn meet_is_greatest_lower_bound() {
        for p in [ch3(), b2(), m3(), n5(), antichain(3)] {
            for s in 0..=p.full_mask() {
                if let Some(g) = p.bound(s, BoundKind::Meet) {
                    let lb = p.lower_bounds(s);
                    assert!(lb >> g & 1 == 1);
                    for l in bits(lb) {
                        assert!(p.leq(l, g));
                    }
                    for i in bits(s) {
                        assert!(p.leq(g, i));
                    }
                }
            }
        }
    }

    #[test]
    fn classification_of_fixtures() {
        let c = b2().classify();
        assert!(c.is_meet_semilattice && c.is_lattice && c.has_top && c.has_bottom);
        assert!(!c.is_chain && !c.is_antichain);
        assert!(!antichain(2).classify().is_meet_semilattice, "no top");
        assert!(m3().classify().is_lattice);
        assert!(ch3().classify().is_chain);
        assert!(antichain(3).classify().is_antichain);
    }

    #[test]
    fn isomorphism_on_fixtures() {
        let id = ch2().find_isomorphism(&ch2()).unwrap();
        assert_eq!(id, vec![0, 1]);
        // B2 is self-dual.
        assert!(b2().find_isomorphism(&b2().order_dual()).is_some());
        assert!(ch3().find_isomorphism(&antichain(3)).is_none());
        assert!(m3().find_isomorphism(&n5()).is_none());
    }

    #[test]
    fn isomorphism_is_symmetric_and_composes_to_automorphism() {
        let p = b2();
        let q = b2().order_dual();
        let f = p.find_isomorphism(&q).unwrap();
        let g = q.find_isomorphism(&p).unwrap();
        for a in 0..p.len() {
            for b in 0..p.len() {
                assert_eq!(p.leq(a, b), p.leq(g[f[a]], g[f[b]]));
            }
        }
    }

    #[test]
    fn canonical_key_separates_and_identifies() {
        assert_eq!(b2().canonical_key(), b2().order_dual().canonical_key());
        assert_ne!(m3().canonical_key(), n5().canonical_key());
        let relabeled = FinitePoset::from_names(
            vec!["w".into(), "x".into(), "y".into(), "z".into()],
            &[
                ("z".into(), "x".into()),
                ("z".into(), "y".into()),
                ("x".into(), "w".into()),
                ("y".into(), "w".into()),
            ],
        )
        .unwrap();
        assert_eq!(b2().canonical_key(), relabeled.canonical_key());
    }

    #[test]
    fn every_finite_meet_semilattice_is_a_lattice() {
        for p in [ch1(), ch2(), ch3(), b2(), m3(), n5()] {
            let c = p.classify();
            if c.is_meet_semilattice {
                assert!(c.is_lattice, "finite meet-semilattices have all joins");
            }
        }
    }
}

//! Finite (pointed) generalized Priestley spaces.
//!
//! Topology is implicitly discrete: every subset is clopen, density of a
//! subset means equality with its ambient set, and closedness is vacuous.
//! The axiom checker evaluates each topological condition in that finite
//! reduction and records the reduction alongside the verdict, so reports
//! stay honest about what was actually tested.
//!
//! Construction validates structural invariants only (x0 and the point live
//! in the carrier, the point is outside x0); the semantic space axioms are
//! the checker's job, so corrupted instances can be represented and then
//! caught.

use serde::Serialize;

use crate::algebra::prime_and_pseudoprime;
use crate::error::{Error, Result};
use crate::poset::{bits, FinitePoset, Mask};
use crate::report::Status;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    pub carrier: FinitePoset,
    pub x0: Mask,
    /// The designated maximum of a pointed space; `None` for plain spaces.
    pub point: Option<usize>,
}

impl Space {
    pub fn unpointed(carrier: FinitePoset, x0: Mask) -> Result<Self> {
        if x0 & !carrier.full_mask() != 0 {
            return Err(Error::UnknownElement("x0 mentions elements outside the carrier".into()));
        }
        Ok(Space { carrier, x0, point: None })
    }

    pub fn pointed(carrier: FinitePoset, x0: Mask, point: usize) -> Result<Self> {
        if point >= carrier.len() {
            return Err(Error::UnknownElement("point lies outside the carrier".into()));
        }
        if x0 & !carrier.full_mask() != 0 {
            return Err(Error::UnknownElement("x0 mentions elements outside the carrier".into()));
        }
        if x0 >> point & 1 == 1 {
            return Err(Error::PreconditionViolated("the point m may not lie in x0".into()));
        }
        Ok(Space { carrier, x0, point: Some(point) })
    }

    pub fn is_pointed(&self) -> bool {
        self.point.is_some()
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    /// Literal equality of carrier names, order, x0, and point.
    pub fn same_labeled(&self, other: &Space) -> bool {
        self.carrier.same_labeled(&other.carrier)
            && self.carrier.names_of(self.x0) == other.carrier.names_of(other.x0)
            && self.point.map(|m| self.carrier.name(m)) == other.point.map(|m| other.carrier.name(m))
    }

    /// Space isomorphism: an order isomorphism carrying x0 onto x0 and point
    /// to point.
    pub fn find_isomorphism(&self, other: &Space) -> Option<Vec<usize>> {
        if self.is_pointed() != other.is_pointed() {
            return None;
        }
        if self.x0.count_ones() != other.x0.count_ones() {
            return None;
        }
        self.carrier.find_isomorphism_with(&other.carrier, |i, j| {
            (self.x0 >> i & 1) == (other.x0 >> j & 1)
                && (self.point == Some(i)) == (other.point == Some(j))
        })
    }
}

/// A family of upsets of one space, ascending by subset mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleFamily {
    pub sets: Vec<Mask>,
}

impl AdmissibleFamily {
    pub fn contains(&self, s: Mask) -> bool {
        self.sets.binary_search(&s).is_ok()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Which way a family poset is ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyOrder {
    Inclusion,
    ReverseInclusion,
}

/// View a family of subsets as a poset whose elements are the brace-joined
/// member labels.
pub fn family_as_poset(space: &Space, family: &AdmissibleFamily, order: FamilyOrder) -> FinitePoset {
    let elements: Vec<String> =
        family.sets.iter().map(|&s| crate::filters::set_label(&space.carrier, s)).collect();
    let mut pairs = Vec::new();
    for (i, &x) in family.sets.iter().enumerate() {
        for (j, &y) in family.sets.iter().enumerate() {
            let included = match order {
                FamilyOrder::Inclusion => x & !y == 0,
                FamilyOrder::ReverseInclusion => y & !x == 0,
            };
            if included {
                pairs.push((i, j));
            }
        }
    }
    FinitePoset::new(elements, &pairs).expect("inclusion order is a valid poset")
}

/// Is U admissible: max(X \ U) ⊆ X0. Equivalent to X \ U = ↓(X0 \ U).
fn is_admissible_upset(space: &Space, u: Mask) -> bool {
    let complement = space.carrier.full_mask() & !u;
    space.carrier.maximal_in(complement) & !space.x0 == 0
}

/// The admissible clopen upsets A(X): every upset whose complement's maxima
/// lie in X0. On a finite discrete carrier every upset is clopen.
pub fn admissible_clopen_upsets(space: &Space) -> AdmissibleFamily {
    let sets = space
        .carrier
        .upsets()
        .into_iter()
        .filter(|&u| is_admissible_upset(space, u))
        .collect();
    AdmissibleFamily { sets }
}

/// The admissible closed upsets V^a(X): the closure of A(X) under arbitrary
/// (including empty) intersections. Every returned set is independently
/// verified against the defining equation X \ C = ↓(X0 \ C), and every
/// closed upset satisfying the equation must appear in the closure; a
/// disagreement raises [`Error::InternalMismatch`].
pub fn admissible_closed_upsets(space: &Space) -> Result<AdmissibleFamily> {
    let clopens = admissible_clopen_upsets(space);
    let full = space.carrier.full_mask();
    // The empty intersection contributes the whole carrier; binary
    // intersections iterated to a fixpoint give every other one.
    let mut sets: Vec<Mask> = vec![full];
    sets.extend_from_slice(&clopens.sets);
    sets.sort_unstable();
    sets.dedup();
    loop {
        let mut added = false;
        let snapshot = sets.clone();
        for &x in &snapshot {
            for &y in &snapshot {
                let z = x & y;
                if let Err(pos) = sets.binary_search(&z) {
                    sets.insert(pos, z);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    for &c in &sets {
        if !(space.carrier.is_upset(c) && satisfies_admissible_equation(space, c)) {
            return Err(Error::InternalMismatch(format!(
                "intersection closure produced a non-admissible set {}",
                crate::filters::set_label(&space.carrier, c)
            )));
        }
    }
    for c in space.carrier.upsets() {
        if satisfies_admissible_equation(space, c) && sets.binary_search(&c).is_err() {
            return Err(Error::InternalMismatch(format!(
                "admissible closed upset {} is not an intersection of admissible clopen upsets",
                crate::filters::set_label(&space.carrier, c)
            )));
        }
    }
    Ok(AdmissibleFamily { sets })
}

/// The defining equation of admissibility for closed upsets.
fn satisfies_admissible_equation(space: &Space, c: Mask) -> bool {
    let complement = space.carrier.full_mask() & !c;
    complement == space.carrier.down_closure(space.x0 & !c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IxFlags {
    pub nonempty: bool,
    pub directed: bool,
}

/// The family I_x = {U ∈ A(X) : x ∉ U}, with its nonemptiness and
/// directedness flags. Directedness quantifies pairs; the empty family is
/// vacuously directed but not nonempty.
pub fn ix_family(space: &Space, x: usize) -> Result<(AdmissibleFamily, IxFlags)> {
    if x >= space.carrier.len() {
        return Err(Error::UnknownElement(format!("index {x} outside the carrier")));
    }
    let all = admissible_clopen_upsets(space);
    let sets: Vec<Mask> = all.sets.iter().copied().filter(|&u| u >> x & 1 == 0).collect();
    let nonempty = !sets.is_empty();
    let mut directed = true;
    'pairs: for &u in &sets {
        for &v in &sets {
            if !sets.iter().any(|&w| u & !w == 0 && v & !w == 0) {
                directed = false;
                break 'pairs;
            }
        }
    }
    Ok((AdmissibleFamily { sets }, IxFlags { nonempty, directed }))
}

/// One axiom verdict: id and text, the finite reduction actually tested,
/// the status, and a witness when it failed.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomCheck {
    pub id: String,
    pub condition: String,
    pub reduction: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpaceAxiomReport {
    pub pointed: bool,
    pub axioms: Vec<AxiomCheck>,
}

impl SpaceAxiomReport {
    pub fn all_pass(&self) -> bool {
        self.axioms.iter().all(|a| a.status != Status::Fail)
    }
}

/// Check the generalized Priestley space axioms (five unpointed, six
/// pointed) in their finite-discrete reductions. The degenerate empty space
/// is excluded from axiom checking and reported as skipped.
pub fn check_space_axioms(space: &Space) -> SpaceAxiomReport {
    let pointed = space.is_pointed();
    let mut axioms = Vec::new();
    if space.is_empty() {
        axioms.push(AxiomCheck {
            id: "empty".into(),
            condition: "degenerate empty space".into(),
            reduction: "axiom checking skipped on the empty carrier".into(),
            status: Status::Skipped,
            witness: None,
        });
        return SpaceAxiomReport { pointed, axioms };
    }
    let p = &space.carrier;
    let full = p.full_mask();
    let mut push = |id: &str, condition: &str, reduction: &str, ok: bool, witness: Option<String>| {
        axioms.push(AxiomCheck {
            id: id.into(),
            condition: condition.into(),
            reduction: reduction.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: if ok { None } else { witness },
        });
    };

    push(
        "1",
        "the carrier with its topology and order is a Priestley space",
        "finite discrete ordered spaces are Priestley spaces: automatic",
        true,
        None,
    );

    if pointed {
        let m = space.point.expect("pointed space has a point");
        let unique_max = (0..p.len()).all(|x| p.leq(x, m));
        push(
            "2",
            "m is the unique maximum of the carrier",
            "checked literally",
            unique_max,
            (0..p.len()).find(|&x| !p.leq(x, m)).map(|x| p.name(x).to_string()),
        );
        let rest = full & !(1 << m);
        let dense = space.x0 == rest;
        push(
            "3",
            "X0 is a dense subset of X minus m",
            "dense in a discrete space means equal: X0 = X \\ {m}",
            dense,
            Some(format!(
                "X0 = {}, X \\ {{m}} = {}",
                crate::filters::set_label(p, space.x0),
                crate::filters::set_label(p, rest)
            )),
        );
        let mut order_dense = true;
        let mut od_witness = None;
        for x in bits(rest) {
            if p.up_mask(x) & space.x0 == 0 {
                order_dense = false;
                od_witness = Some(p.name(x).to_string());
                break;
            }
        }
        push(
            "4",
            "X0 is order-dense in X minus m",
            "every x below m lies below some member of X0",
            order_dense,
            od_witness,
        );
        let mut criterion = true;
        let mut witness = None;
        for x in 0..p.len() {
            let (_, flags) = ix_family(space, x).expect("x is a carrier index");
            let in_x0 = space.x0 >> x & 1 == 1;
            if in_x0 != (flags.nonempty && flags.directed) {
                criterion = false;
                witness = Some(p.name(x).to_string());
                break;
            }
        }
        push(
            "5",
            "x lies in X0 iff I_x is nonempty and directed",
            "checked literally over A(X)",
            criterion,
            witness,
        );
        let (ok, w) = order_determination(space);
        push(
            "6",
            "x <= y iff every admissible clopen upset containing x contains y",
            "checked literally over A(X)",
            ok,
            w,
        );
    } else {
        let dense = space.x0 == full;
        push(
            "2",
            "X0 is a dense subset of X",
            "dense in a discrete space means equal: X0 = X",
            dense,
            Some(crate::filters::set_label(p, full & !space.x0)),
        );
        let mut order_dense = true;
        let mut od_witness = None;
        for x in 0..p.len() {
            if p.up_mask(x) & space.x0 == 0 {
                order_dense = false;
                od_witness = Some(p.name(x).to_string());
                break;
            }
        }
        push(
            "3",
            "X0 is order-dense in X",
            "every x lies below some member of X0",
            order_dense,
            od_witness,
        );
        let mut criterion = true;
        let mut witness = None;
        for x in 0..p.len() {
            let (_, flags) = ix_family(space, x).expect("x is a carrier index");
            let in_x0 = space.x0 >> x & 1 == 1;
            if in_x0 != flags.directed {
                criterion = false;
                witness = Some(p.name(x).to_string());
                break;
            }
        }
        push("4", "x lies in X0 iff I_x is directed", "checked literally over A(X)", criterion, witness);
        let (ok, w) = order_determination(space);
        push(
            "5",
            "x <= y iff every admissible clopen upset containing x contains y",
            "checked literally over A(X)",
            ok,
            w,
        );
    }
    SpaceAxiomReport { pointed, axioms }
}

fn order_determination(space: &Space) -> (bool, Option<String>) {
    let p = &space.carrier;
    let family = admissible_clopen_upsets(space);
    for x in 0..p.len() {
        for y in 0..p.len() {
            let separated = family.sets.iter().all(|&u| u >> x & 1 == 0 || u >> y & 1 == 1);
            if p.leq(x, y) != separated {
                return (false, Some(format!("({},{})", p.name(x), p.name(y))));
            }
        }
    }
    (true, None)
}

/// Outcome of dropping the point: the resulting space plus a flag marking
/// the degenerate empty result (legal, but worth surfacing).
#[derive(Debug, Clone)]
pub struct UnpointOutcome {
    pub space: Space,
    pub empty: bool,
}

/// X^-: drop the point m, keep X0. At finite scale m is always isolated.
pub fn unpoint(space: &Space) -> Result<UnpointOutcome> {
    let m = space
        .point
        .ok_or_else(|| Error::PreconditionViolated("X^- needs a pointed space".into()))?;
    let keep = space.carrier.full_mask() & !(1 << m);
    let carrier = space.carrier.restrict(keep);
    let mut x0 = 0u64;
    for (new_idx, old_idx) in bits(keep).enumerate() {
        if space.x0 >> old_idx & 1 == 1 {
            x0 |= 1 << new_idx;
        }
    }
    let empty = carrier.is_empty();
    Ok(UnpointOutcome { space: Space::unpointed(carrier, x0)?, empty })
}

/// X^+: adjoin a fresh isolated top, keeping X0. The new point's name is the
/// first of m, m0, m1, ... not already used.
pub fn adjoin_point(space: &Space) -> Result<Space> {
    if space.is_pointed() {
        return Err(Error::PreconditionViolated("X^+ needs an unpointed space".into()));
    }
    let mut name = "m".to_string();
    let mut k = 0usize;
    while space.carrier.idx(&name).is_some() {
        name = format!("m{k}");
        k += 1;
    }
    let mut elements = space.carrier.elements().to_vec();
    elements.push(name);
    let new_top = elements.len() - 1;
    let mut pairs = Vec::new();
    for a in 0..space.carrier.len() {
        for b in 0..space.carrier.len() {
            if space.carrier.leq(a, b) {
                pairs.push((a, b));
            }
        }
        pairs.push((a, new_top));
    }
    let carrier = FinitePoset::new(elements, &pairs)?;
    Space::pointed(carrier, space.x0, new_top)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpaceKind {
    pub is_priestley: bool,
    pub is_pointed_priestley: bool,
    pub is_pointed_stone: bool,
    pub is_stone: bool,
}

/// Classify by the distinguished-subset shape: Priestley means X0 = X,
/// pointed Priestley means X0 = X \ {m}; the Stone variants additionally
/// require the order (away from m) to be equality.
pub fn space_kind(space: &Space) -> SpaceKind {
    let p = &space.carrier;
    let full = p.full_mask();
    let is_priestley = !space.is_pointed() && space.x0 == full;
    let is_pointed_priestley = match space.point {
        Some(m) => space.x0 == full & !(1 << m),
        None => false,
    };
    let equality_on = |s: Mask| {
        bits(s).all(|a| bits(s).all(|b| a == b || !p.leq(a, b)))
    };
    let is_stone = is_priestley && equality_on(full);
    let is_pointed_stone = is_pointed_priestley
        && equality_on(full & !(1 << space.point.expect("pointed by the flag above")));
    SpaceKind { is_priestley, is_pointed_priestley, is_pointed_stone, is_stone }
}

/// The spectrum space of a finite frame: carrier PP(L) ∪ {1} with X0 = P(L)
/// and point 1, inheriting names and order from L. Also returns, per space
/// point, its index in the frame carrier.
pub fn spectrum_of_frame(frame: &FinitePoset) -> Result<(Space, Vec<usize>)> {
    let (distributive, _) = crate::algebra::is_distributive_lattice(frame)
        .map_err(|_| Error::NotAFrame("carrier is not a complete lattice".into()))?;
    if !distributive {
        return Err(Error::NotAFrame("carrier is not distributive".into()));
    }
    let classes = prime_and_pseudoprime(frame)?;
    let top = frame.top().expect("finite lattice has a top");
    let keep = classes.pseudoprimes | 1 << top;
    let carrier = frame.restrict(keep);
    let lattice_indices: Vec<usize> = bits(keep).collect();
    let mut x0 = 0u64;
    let mut point = None;
    for (new_idx, &old_idx) in lattice_indices.iter().enumerate() {
        if classes.primes >> old_idx & 1 == 1 {
            x0 |= 1 << new_idx;
        }
        if old_idx == top {
            point = Some(new_idx);
        }
    }
    let space = Space::pointed(carrier, x0, point.expect("top is kept"))?;
    Ok((space, lattice_indices))
}

/// Fixture spaces used across the test suites.
pub mod fixtures {
    use super::Space;
    use crate::poset::FinitePoset;

    /// P3: carrier {p, q, m} with p < m, q < m, X0 = {p, q}, point m.
    pub fn p3() -> Space {
        let carrier = FinitePoset::from_names(
            vec!["p".into(), "q".into(), "m".into()],
            &[("p".into(), "m".into()), ("q".into(), "m".into())],
        )
        .unwrap();
        let x0 = carrier.mask_of(&["p", "q"]).unwrap();
        Space::pointed(carrier, x0, 2).unwrap()
    }

    /// Pointed singleton {m} with empty X0.
    pub fn pointed_singleton() -> Space {
        let carrier = FinitePoset::from_names(vec!["m".into()], &[]).unwrap();
        Space::pointed(carrier, 0, 0).unwrap()
    }

    /// Two-element antichain with X0 = X (a Priestley space).
    pub fn antichain2_priestley() -> Space {
        let carrier = crate::poset::fixtures::antichain(2);
        let full = carrier.full_mask();
        Space::unpointed(carrier, full).unwrap()
    }
}

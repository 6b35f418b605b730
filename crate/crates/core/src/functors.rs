//! The six functors between semilattices, algebraic frames, and (pointed)
//! generalized Priestley spaces, the natural isomorphisms relating their
//! composites, and the object-level round-trip battery.
//!
//! Conventions the checks depend on:
//! - Filter-lattice points, spectrum points, and admissible-family elements
//!   are labeled canonically by their member sets, so composite-functor
//!   coincidences can be asserted as literal labeled equality rather than
//!   mere isomorphism.
//! - The compact-element functor is the single place where an order gets
//!   dualized; nothing else flips implicitly.
//! - The bounded variants drop the adjoined point and are related to the
//!   pointed ones through the point translations.

use serde::{Deserialize, Serialize};

use crate::algebra::{
    classify_frame, compact_elements, is_distributive_lattice, is_distributive_semilattice,
    prime_and_pseudoprime,
};
use crate::error::{Error, Result};
use crate::filters::{filters, optimal_filters, prime_filters, set_label};
use crate::morphism::{
    check_gp_morphism, compose_gp, functional_to_map, left_adjoint_on_filters,
    relation_from_frame_morphism, relation_minus, SpaceRelation, StructureMap,
};
use crate::poset::{bits, BoundKind, FinitePoset, Mask};
use crate::report::DualityReport;
use crate::space::{
    admissible_clopen_upsets, admissible_closed_upsets, check_space_axioms, family_as_poset,
    space_kind, spectrum_of_frame, AdmissibleFamily, FamilyOrder, Space,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FunctorName {
    F,
    K,
    X,
    A,
    Y,
    Va,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Pointed,
    Bounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorTag {
    pub name: FunctorName,
    pub variant: Variant,
}

/// Objects the functors move between.
#[derive(Debug, Clone)]
pub enum DualObject {
    Poset(FinitePoset),
    Space(Space),
}

/// Morphisms the functors move between.
#[derive(Debug, Clone)]
pub enum DualMorphism {
    Map(StructureMap),
    Relation(SpaceRelation),
}

fn require_distributive_ms(p: &FinitePoset) -> Result<()> {
    if !p.classify().is_meet_semilattice {
        return Err(Error::SourceAxiomFailure("not a meet-semilattice".into()));
    }
    let (ok, w) = is_distributive_semilattice(p)?;
    if ok {
        Ok(())
    } else {
        let [a, b, c] = w.expect("failure carries a witness");
        Err(Error::SourceAxiomFailure(format!(
            "not distributive: witness ({},{},{})",
            p.name(a),
            p.name(b),
            p.name(c)
        )))
    }
}

fn require_frame(p: &FinitePoset) -> Result<()> {
    if !p.classify().is_lattice {
        return Err(Error::SourceAxiomFailure("not a complete lattice".into()));
    }
    let (ok, _) = is_distributive_lattice(p)?;
    if ok {
        Ok(())
    } else {
        Err(Error::SourceAxiomFailure("not a frame: distributivity fails".into()))
    }
}

/// F on objects: the filter lattice, points labeled by their filters.
pub fn functor_f_obj(m: &FinitePoset) -> Result<FinitePoset> {
    Ok(filters(m)?.inclusion_order)
}

/// K on objects: the compact elements with the dual order. This is the one
/// explicit dualization point in the whole crate.
pub fn functor_k_obj(l: &FinitePoset) -> Result<FinitePoset> {
    let compacts = compact_elements(l)?;
    Ok(l.restrict(compacts).order_dual())
}

/// X on objects: the spectrum of optimal filters ordered by inclusion, with
/// the prime filters distinguished; the pointed variant adjoins the
/// improper filter as the maximum.
pub fn functor_x_obj(m: &FinitePoset, variant: Variant) -> Result<Space> {
    require_distributive_ms(m)?;
    let points = x_space_point_filters(m, variant)?;
    let primes = prime_filters(m)?;
    let elements: Vec<String> = points.iter().map(|&f| set_label(m, f)).collect();
    let mut pairs = Vec::new();
    for (i, &f) in points.iter().enumerate() {
        for (j, &g) in points.iter().enumerate() {
            if f & !g == 0 {
                pairs.push((i, j));
            }
        }
    }
    let carrier = FinitePoset::new(elements, &pairs)?;
    let x0 = points
        .iter()
        .enumerate()
        .filter(|(_, f)| primes.contains(f))
        .fold(0u64, |acc, (i, _)| acc | 1 << i);
    match variant {
        Variant::Pointed => Space::pointed(carrier, x0, points.len() - 1),
        Variant::Bounded => Space::unpointed(carrier, x0),
    }
}

/// The filter carried by each point of X(M), in carrier order.
pub fn x_space_point_filters(m: &FinitePoset, variant: Variant) -> Result<Vec<Mask>> {
    let mut points = optimal_filters(m)?;
    if variant == Variant::Pointed {
        points.push(m.full_mask());
    }
    Ok(points)
}

/// A on objects: admissible clopen upsets under inclusion.
pub fn functor_a_obj(x: &Space) -> FinitePoset {
    let family = admissible_clopen_upsets(x);
    family_as_poset(x, &family, FamilyOrder::Inclusion)
}

/// Y on objects: the pseudoprime spectrum of a frame; the bounded variant
/// drops the adjoined top.
pub fn functor_y_obj(l: &FinitePoset, variant: Variant) -> Result<Space> {
    require_frame(l)?;
    let (space, _) = spectrum_of_frame(l)?;
    match variant {
        Variant::Pointed => Ok(space),
        Variant::Bounded => Ok(crate::space::unpoint(&space)?.space),
    }
}

/// V^a on objects: admissible closed upsets under reverse inclusion (an
/// algebraic frame), plus the family itself for callers that need the sets.
pub fn functor_va_obj(x: &Space) -> Result<(FinitePoset, AdmissibleFamily)> {
    let family = admissible_closed_upsets(x)?;
    Ok((family_as_poset(x, &family, FamilyOrder::ReverseInclusion), family))
}

/// F on morphisms: the left adjoint of the filter preimage.
pub fn functor_f_mor(alpha: &StructureMap) -> Result<StructureMap> {
    left_adjoint_on_filters(alpha)
}

/// Gate for AlgLat morphisms: arbitrary joins and compact elements
/// preserved; distributivity not required.
pub fn require_alglat(alpha: &StructureMap) -> Result<()> {
    if !alpha.dom.classify().is_lattice || !alpha.cod.classify().is_lattice {
        return Err(Error::NotAlgFrmJ("carriers must be complete lattices".into()));
    }
    for s in 0..=alpha.dom.full_mask() {
        let j = alpha.dom.bound(s, BoundKind::Join).expect("lattice");
        let img = alpha.cod.bound(alpha.image(s), BoundKind::Join).expect("lattice");
        if alpha.map[j] != img {
            return Err(Error::NotAlgFrmJ(format!(
                "joins not preserved at {}",
                set_label(&alpha.dom, s)
            )));
        }
    }
    let k_cod = compact_elements(&alpha.cod)?;
    for k in bits(compact_elements(&alpha.dom)?) {
        if k_cod >> alpha.map[k] & 1 == 0 {
            return Err(Error::NotAlgFrmJ("compacts not preserved".into()));
        }
    }
    Ok(())
}

/// K on morphisms: restriction to compact elements under the dual orders.
pub fn functor_k_mor(alpha: &StructureMap) -> Result<StructureMap> {
    require_alglat(alpha)?;
    let k_dom = functor_k_obj(&alpha.dom)?;
    let k_cod = functor_k_obj(&alpha.cod)?;
    let map: Vec<usize> = (0..k_dom.len())
        .map(|i| {
            let lat_idx = alpha.dom.idx(k_dom.name(i)).expect("compacts keep their names");
            k_cod.idx(alpha.cod.name(alpha.map[lat_idx])).expect("compacts map to compacts")
        })
        .collect();
    StructureMap::new(k_dom, k_cod, map)
}

/// X on morphisms: for α : M1 → M2 the relation R_α ⊆ X(M2) × X(M1) with
/// x R_α y iff α⁻¹(x) ⊆ y.
pub fn functor_x_mor(alpha: &StructureMap, variant: Variant) -> Result<SpaceRelation> {
    let classification = crate::morphism::classify_map(alpha);
    if !classification.meet_hom.is_true() {
        return Err(Error::NotMeetHom(
            classification.witnesses.get("meet_hom").cloned().unwrap_or_default(),
        ));
    }
    let x2 = functor_x_obj(&alpha.cod, variant)?;
    let x1 = functor_x_obj(&alpha.dom, variant)?;
    let points2 = x_space_point_filters(&alpha.cod, variant)?;
    let points1 = x_space_point_filters(&alpha.dom, variant)?;
    let mut images = Vec::with_capacity(points2.len());
    for &x_filter in &points2 {
        let preimage = alpha.preimage(x_filter);
        let img = points1
            .iter()
            .enumerate()
            .filter(|&(_, &y)| preimage & !y == 0)
            .fold(0u64, |acc, (i, _)| acc | 1 << i);
        images.push(img);
    }
    Ok(SpaceRelation::new(x2, x1, images))
}

/// A on morphisms: □_R as a map A(Y) → A(X) for R ⊆ X × Y.
pub fn functor_a_mor(r: &SpaceRelation) -> Result<StructureMap> {
    let check = check_gp_morphism(r);
    if !check.ok() {
        return Err(Error::NotAMorphism(format!("{check:?}")));
    }
    let a_dom = admissible_clopen_upsets(&r.dom);
    let a_cod = admissible_clopen_upsets(&r.cod);
    let dom_poset = family_as_poset(&r.cod, &a_cod, FamilyOrder::Inclusion);
    let cod_poset = family_as_poset(&r.dom, &a_dom, FamilyOrder::Inclusion);
    let map: Vec<usize> = a_cod
        .sets
        .iter()
        .map(|&u| {
            let boxed = r.box_set(u);
            a_dom.sets.binary_search(&boxed).expect("□ preserves admissibility")
        })
        .collect();
    StructureMap::new(dom_poset, cod_poset, map)
}

/// Y on morphisms: R_α for a join-and-compact preserving frame map; the
/// bounded variant restricts away the adjoined points.
pub fn functor_y_mor(alpha: &StructureMap, variant: Variant) -> Result<SpaceRelation> {
    let rel = relation_from_frame_morphism(alpha)?;
    match variant {
        Variant::Pointed => Ok(rel),
        Variant::Bounded => relation_minus(&rel),
    }
}

/// V^a on morphisms: □_R on closed admissible upsets, a map between the
/// reverse-inclusion frames.
pub fn functor_va_mor(r: &SpaceRelation) -> Result<StructureMap> {
    let check = check_gp_morphism(r);
    if !check.ok() {
        return Err(Error::NotAMorphism(format!("{check:?}")));
    }
    let (dom_poset, fam_cod) = functor_va_obj(&r.cod)?;
    let (cod_poset, fam_dom) = functor_va_obj(&r.dom)?;
    let map: Vec<usize> = fam_cod
        .sets
        .iter()
        .map(|&c| {
            let boxed = r.box_set(c);
            fam_dom.sets.binary_search(&boxed).expect("□ preserves closed admissibility")
        })
        .collect();
    StructureMap::new(dom_poset, cod_poset, map)
}

/// Dispatch a functor application on an object.
pub fn apply_functor_obj(tag: FunctorTag, obj: &DualObject) -> Result<DualObject> {
    match (tag.name, obj) {
        (FunctorName::F, DualObject::Poset(m)) => Ok(DualObject::Poset(functor_f_obj(m)?)),
        (FunctorName::K, DualObject::Poset(l)) => Ok(DualObject::Poset(functor_k_obj(l)?)),
        (FunctorName::X, DualObject::Poset(m)) => {
            Ok(DualObject::Space(functor_x_obj(m, tag.variant)?))
        }
        (FunctorName::Y, DualObject::Poset(l)) => {
            Ok(DualObject::Space(functor_y_obj(l, tag.variant)?))
        }
        (FunctorName::A, DualObject::Space(x)) => Ok(DualObject::Poset(functor_a_obj(x))),
        (FunctorName::Va, DualObject::Space(x)) => Ok(DualObject::Poset(functor_va_obj(x)?.0)),
        (name, DualObject::Poset(_)) => {
            Err(Error::WrongSourceKind(format!("{name:?} expects a space document")))
        }
        (name, DualObject::Space(_)) => {
            Err(Error::WrongSourceKind(format!("{name:?} expects a poset document")))
        }
    }
}

/// Dispatch a functor application on a morphism.
pub fn apply_functor_mor(tag: FunctorTag, mor: &DualMorphism) -> Result<DualMorphism> {
    match (tag.name, mor) {
        (FunctorName::F, DualMorphism::Map(a)) => Ok(DualMorphism::Map(functor_f_mor(a)?)),
        (FunctorName::K, DualMorphism::Map(a)) => Ok(DualMorphism::Map(functor_k_mor(a)?)),
        (FunctorName::X, DualMorphism::Map(a)) => {
            Ok(DualMorphism::Relation(functor_x_mor(a, tag.variant)?))
        }
        (FunctorName::Y, DualMorphism::Map(a)) => {
            Ok(DualMorphism::Relation(functor_y_mor(a, tag.variant)?))
        }
        (FunctorName::A, DualMorphism::Relation(r)) => Ok(DualMorphism::Map(functor_a_mor(r)?)),
        (FunctorName::Va, DualMorphism::Relation(r)) => Ok(DualMorphism::Map(functor_va_mor(r)?)),
        (name, DualMorphism::Map(_)) => {
            Err(Error::WrongSourceKind(format!("{name:?} expects a relation document")))
        }
        (name, DualMorphism::Relation(_)) => {
            Err(Error::WrongSourceKind(format!("{name:?} expects a map document")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IsoKind {
    Epsilon,
    Eta,
    Upsilon,
}

/// ε_X : X → Y(V^a(X)), x ↦ ↑x. Returns the map together with the target
/// space; the conclusions (order-isomorphism, x0 onto x0, point to point)
/// are asserted.
pub fn natural_iso_epsilon(x: &Space) -> Result<(StructureMap, Space)> {
    if !check_space_axioms(x).all_pass() {
        return Err(Error::SourceAxiomFailure("space fails its axioms".into()));
    }
    if !x.is_pointed() {
        return Err(Error::SourceAxiomFailure("ε needs a pointed space".into()));
    }
    let (va_poset, _) = functor_va_obj(x)?;
    let target = functor_y_obj(&va_poset, Variant::Pointed)?;
    let map: Vec<usize> = (0..x.carrier.len())
        .map(|p| {
            let label = set_label(&x.carrier, x.carrier.up_mask(p));
            target.carrier.idx(&label).ok_or_else(|| {
                Error::InternalMismatch(format!(
                    "↑{} is not a spectrum point",
                    x.carrier.name(p)
                ))
            })
        })
        .collect::<Result<_>>()?;
    let eps = StructureMap::new(x.carrier.clone(), target.carrier.clone(), map)?;
    assert_epsilon_conclusions(x, &eps, &target);
    Ok((eps, target))
}

fn assert_epsilon_conclusions(x: &Space, eps: &StructureMap, target: &Space) {
    let n = x.carrier.len();
    assert_eq!(n, target.carrier.len(), "ε is onto");
    for a in 0..n {
        for b in 0..n {
            assert_eq!(
                x.carrier.leq(a, b),
                target.carrier.leq(eps.map[a], eps.map[b]),
                "ε is an order-isomorphism"
            );
        }
    }
    let image_x0 = bits(x.x0).fold(0u64, |acc, p| acc | 1 << eps.map[p]);
    assert_eq!(image_x0, target.x0, "ε carries X0 onto the target X0");
    assert_eq!(x.point.map(|m| eps.map[m]), target.point, "ε carries the point to the point");
}

/// η_L : L → V^a(Y(L)), a ↦ ↑a ∩ Y_L; a frame isomorphism.
pub fn natural_iso_eta(l: &FinitePoset) -> Result<(StructureMap, FinitePoset)> {
    require_frame(l)?;
    let (y_space, lattice_idx) = spectrum_of_frame(l)?;
    let (va_poset, family) = functor_va_obj(&y_space)?;
    let mut map = Vec::with_capacity(l.len());
    for a in 0..l.len() {
        let restricted: Mask = lattice_idx
            .iter()
            .enumerate()
            .filter(|&(_, &q)| l.leq(a, q))
            .fold(0, |acc, (i, _)| acc | 1 << i);
        let idx = family.sets.binary_search(&restricted).map_err(|_| {
            Error::InternalMismatch(format!("↑{} ∩ Y_L is not admissible", l.name(a)))
        })?;
        map.push(idx);
    }
    let eta = StructureMap::new(l.clone(), va_poset.clone(), map)?;
    let n = l.len();
    assert_eq!(n, va_poset.len(), "η is onto");
    for a in 0..n {
        for b in 0..n {
            assert_eq!(
                l.leq(a, b),
                va_poset.leq(eta.map[a], eta.map[b]),
                "η is an order-isomorphism, hence a frame isomorphism"
            );
        }
    }
    Ok((eta, va_poset))
}

/// Υ_X ⊆ X × Y(V^a(X)), x Υ C iff ε(x) ≤ C; a PGPS-isomorphism.
pub fn natural_iso_upsilon(x: &Space) -> Result<SpaceRelation> {
    let (eps, target) = natural_iso_epsilon(x)?;
    let images: Vec<Mask> =
        (0..x.carrier.len()).map(|p| target.carrier.up_mask(eps.map[p])).collect();
    let upsilon = SpaceRelation::new(x.clone(), target.clone(), images);
    assert!(check_gp_morphism(&upsilon).ok(), "Υ is a generalized Priestley morphism");
    let f = functional_to_map(&upsilon).expect("Υ is functional");
    assert_eq!(f.map, eps.map, "the least element of Υ[x] is ε(x)");
    // Isomorphism: the relation from ε⁻¹ composes with Υ to the identities.
    let mut inverse_assignment = vec![0usize; target.carrier.len()];
    for p in 0..x.carrier.len() {
        inverse_assignment[eps.map[p]] = p;
    }
    let inverse_images: Vec<Mask> =
        (0..target.carrier.len()).map(|c| x.carrier.up_mask(inverse_assignment[c])).collect();
    let inverse = SpaceRelation::new(target.clone(), x.clone(), inverse_images);
    let round = compose_gp(&inverse, &upsilon).expect("composable");
    assert!(round.same_labeled(&SpaceRelation::identity(x)), "Υ⁻¹ * Υ is the identity");
    let round = compose_gp(&upsilon, &inverse).expect("composable");
    assert!(round.same_labeled(&SpaceRelation::identity(&target)), "Υ * Υ⁻¹ is the identity");
    Ok(upsilon)
}

/// Dispatch a natural-isomorphism component request.
pub fn natural_iso(kind: IsoKind, obj: &DualObject) -> Result<DualMorphism> {
    match (kind, obj) {
        (IsoKind::Epsilon, DualObject::Space(x)) => {
            Ok(DualMorphism::Map(natural_iso_epsilon(x)?.0))
        }
        (IsoKind::Eta, DualObject::Poset(l)) => Ok(DualMorphism::Map(natural_iso_eta(l)?.0)),
        (IsoKind::Upsilon, DualObject::Space(x)) => {
            Ok(DualMorphism::Relation(natural_iso_upsilon(x)?))
        }
        (IsoKind::Eta, DualObject::Space(_)) => {
            Err(Error::WrongSourceKind("η is indexed by frames".into()))
        }
        (_, DualObject::Poset(_)) => {
            Err(Error::WrongSourceKind("ε and Υ are indexed by pointed spaces".into()))
        }
    }
}

/// The object-level round-trip battery: every composite-functor coincidence
/// and natural-isomorphism conclusion the theory promises for one object.
/// Failures become report entries; downstream checks are skipped once the
/// object fails its own class axioms.
pub fn verify_duality(obj: &DualObject) -> DualityReport {
    let mut report = DualityReport::new();
    match obj {
        DualObject::Poset(m) => verify_semilattice(m, &mut report),
        DualObject::Space(x) => verify_space(x, &mut report),
    }
    report
}

fn verify_semilattice(m: &FinitePoset, report: &mut DualityReport) {
    match require_distributive_ms(m) {
        Ok(()) => report.pass("object.distributive_ms"),
        Err(e) => {
            report.fail("object.distributive_ms", e.to_string());
            report.skip("object.round_trips", "skipped: object fails its class axioms");
            return;
        }
    }

    // Filt collapse: Filt(M) ≅ M^op via F ↦ ⋀F, |Filt(M)| = |M|.
    let fam = filters(m).expect("distributive ms");
    let mut filt_ok = fam.filters.len() == m.len();
    if filt_ok {
        for (i, &f) in fam.filters.iter().enumerate() {
            for (j, &g) in fam.filters.iter().enumerate() {
                let mf = m.bound(f, BoundKind::Meet).expect("principal");
                let mg = m.bound(g, BoundKind::Meet).expect("principal");
                if fam.inclusion_order.leq(i, j) != m.leq(mg, mf) {
                    filt_ok = false;
                }
            }
        }
    }
    report.record("m.filt_dual_iso", filt_ok, "F ↦ ⋀F is not an order-iso onto the dual");

    // K(F(M)) ≅ M via the principal-filter map.
    let f_m = functor_f_obj(m).expect("distributive ms");
    let kf = functor_k_obj(&f_m).expect("filter lattice");
    let mut kf_ok = kf.len() == m.len();
    if kf_ok {
        let meets: Vec<usize> = (0..kf.len())
            .map(|i| {
                let filter_mask = fam.filters
                    [fam.inclusion_order.idx(kf.name(i)).expect("K preserves labels")];
                m.bound(filter_mask, BoundKind::Meet).expect("principal")
            })
            .collect();
        for i in 0..kf.len() {
            for j in 0..kf.len() {
                if kf.leq(i, j) != m.leq(meets[i], meets[j]) {
                    kf_ok = false;
                }
            }
        }
    }
    report.record("m.kf_iso", kf_ok, "K(F(M)) is not isomorphic to M via ⋀");

    // A(X(M)) ≅ M via φ.
    let x_m = functor_x_obj(m, Variant::Pointed).expect("distributive ms");
    let point_filters = x_space_point_filters(m, Variant::Pointed).expect("distributive ms");
    let a_xm = functor_a_obj(&x_m);
    let mut phi_ok = a_xm.len() == m.len();
    if phi_ok {
        let phi: Vec<Mask> = (0..m.len())
            .map(|a| {
                point_filters
                    .iter()
                    .enumerate()
                    .filter(|&(_, &f)| f >> a & 1 == 1)
                    .fold(0u64, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        let family = admissible_clopen_upsets(&x_m);
        for a in 0..m.len() {
            if !family.contains(phi[a]) {
                phi_ok = false;
            }
        }
        let mut image: Vec<Mask> = phi.clone();
        image.sort_unstable();
        image.dedup();
        if image != family.sets {
            phi_ok = false;
        }
        for a in 0..m.len() {
            for b in 0..m.len() {
                if m.leq(a, b) != (phi[a] & !phi[b] == 0) {
                    phi_ok = false;
                }
            }
        }
    }
    report.record("m.ax_iso_via_phi", phi_ok, "a ↦ φ(a) is not an isomorphism onto A(X(M))");

    // Y(F(M)) = X(M) as labeled structures.
    match functor_y_obj(&f_m, Variant::Pointed) {
        Ok(yf) => report.record(
            "m.yf_equals_x",
            yf.same_labeled(&x_m),
            "Y(F(M)) and X(M) differ as labeled spaces",
        ),
        Err(e) => report.fail("m.yf_equals_x", e.to_string()),
    }

    // X(M) is a valid pointed generalized Priestley space.
    let axioms = check_space_axioms(&x_m);
    report.record("m.xm_axioms", axioms.all_pass(), "X(M) fails the pointed space axioms");

    // K(V^a(X(M))) = A(X(M)) literally.
    match functor_va_obj(&x_m) {
        Ok((va, _)) => match functor_k_obj(&va) {
            Ok(kva) => report.record(
                "m.kva_equals_a",
                kva.same_labeled(&a_xm),
                "K(V^a(X(M))) and A(X(M)) differ as labeled posets",
            ),
            Err(e) => report.fail("m.kva_equals_a", e.to_string()),
        },
        Err(e) => report.fail("m.kva_equals_a", e.to_string()),
    }

    // Natural isomorphisms on the two round-trip corners.
    match natural_iso_epsilon(&x_m) {
        Ok(_) => report.pass("m.epsilon_iso"),
        Err(e) => report.fail("m.epsilon_iso", e.to_string()),
    }
    match natural_iso_upsilon(&x_m) {
        Ok(_) => report.pass("m.upsilon_iso"),
        Err(e) => report.fail("m.upsilon_iso", e.to_string()),
    }
    match natural_iso_eta(&f_m) {
        Ok(_) => report.pass("m.eta_iso"),
        Err(e) => report.fail("m.eta_iso", e.to_string()),
    }

    // Bounded restriction: M has a bottom iff F(M) is compact iff {m} is
    // admissible in X(M); the bounded functors agree through the point
    // translations.
    let has_bottom = m.bottom().is_some();
    let f_profile = classify_frame(&f_m).expect("filter lattice");
    let family = admissible_clopen_upsets(&x_m);
    let m_singleton = 1u64 << x_m.point.expect("pointed spectrum");
    let chain_ok =
        has_bottom == f_profile.is_compact_frame && has_bottom == family.contains(m_singleton);
    report.record(
        "m.bounded_chain",
        chain_ok,
        "bottom / compact / isolated-point conditions disagree",
    );
    match (functor_x_obj(m, Variant::Bounded), crate::space::unpoint(&x_m)) {
        (Ok(bounded), Ok(dropped)) => report.record(
            "m.bounded_x_translation",
            bounded.same_labeled(&dropped.space),
            "bounded X(M) differs from X(M) minus its point",
        ),
        (Err(e), _) | (_, Err(e)) => report.fail("m.bounded_x_translation", e.to_string()),
    }

    // Classification triangles.
    let m_profile = classify_frame(m).expect("finite distributive lattice");
    let primes_of_f = prime_and_pseudoprime(&f_m).expect("lattice").primes;
    let f_primes_antichain =
        bits(primes_of_f).all(|a| bits(primes_of_f).all(|b| a == b || !f_m.leq(a, b)));
    let xm_minus = crate::space::unpoint(&x_m).expect("pointed").space;
    let minus_kind = space_kind(&xm_minus);
    let stone_ok = m_profile.is_boolean == f_profile.is_stone_frame
        && f_profile.is_stone_frame == f_primes_antichain
        && m_profile.is_boolean == minus_kind.is_stone;
    report.record(
        "m.stone_triangle",
        stone_ok,
        "boolean / Stone frame / antichain spectrum disagree",
    );
    let xm_kind = space_kind(&x_m);
    let pointed_priestley_ok = f_profile.is_arithmetic && xm_kind.is_pointed_priestley;
    report.record(
        "m.pointed_priestley_triangle",
        pointed_priestley_ok,
        "F(M) arithmetic / X(M) pointed Priestley disagree for a distributive lattice",
    );
    report.record(
        "m.coherent_and_priestley_minus",
        f_profile.is_coherent && minus_kind.is_priestley,
        "F(M) not coherent or X(M) minus its point not a Priestley space",
    );
    report.record(
        "m.gba_coincides_with_ba",
        m_profile.is_generalized_boolean == m_profile.is_boolean,
        "finite GBA/BA coincidence failed (logged, not assumed)",
    );

    // Finite coherence collapse on the filter side.
    let classes = prime_and_pseudoprime(&f_m).expect("lattice");
    report.record(
        "m.pp_equals_p",
        classes.pseudoprimes == classes.primes,
        "pseudoprimes differ from primes on the filter frame",
    );
    match (optimal_filters(m), prime_filters(m)) {
        (Ok(opt), Ok(pr)) => {
            report.record("m.optimal_equals_prime", opt == pr, "Opt(M) differs from Pr(M)")
        }
        (Err(e), _) | (_, Err(e)) => report.fail("m.optimal_equals_prime", e.to_string()),
    }
}

fn verify_space(x: &Space, report: &mut DualityReport) {
    let axioms = check_space_axioms(x);
    if !axioms.all_pass() {
        let failing: Vec<String> = axioms
            .axioms
            .iter()
            .filter(|a| a.status == crate::report::Status::Fail)
            .map(|a| format!("axiom {}", a.id))
            .collect();
        report.fail("x.axioms", failing.join(", "));
        report.skip("x.round_trips", "skipped: space fails its axioms");
        return;
    }
    report.pass("x.axioms");
    if !x.is_pointed() {
        // Unpointed spaces round-trip through the adjoined point.
        match crate::space::adjoin_point(x) {
            Ok(plus) => {
                let back = crate::space::unpoint(&plus).expect("pointed");
                report.record(
                    "x.plus_minus_roundtrip",
                    back.space.same_labeled(x),
                    "(X^+)^- differs from X",
                );
                // C ↦ C ∪ {m} and D ↦ D ∩ X are inverse isomorphisms
                // between the closed admissible families of X and X^+.
                match (admissible_closed_upsets(x), admissible_closed_upsets(&plus)) {
                    (Ok(fam), Ok(fam_plus)) => {
                        let restricted: Vec<Mask> = fam_plus
                            .sets
                            .iter()
                            .map(|&d| d & x.carrier.full_mask())
                            .collect();
                        let mut sorted = restricted.clone();
                        sorted.sort_unstable();
                        sorted.dedup();
                        report.record(
                            "x.va_translation_iso",
                            sorted == fam.sets && restricted.len() == fam.sets.len(),
                            "V^a(X) and V^a(X^+) do not correspond through the point",
                        );
                    }
                    (Err(e), _) | (_, Err(e)) => {
                        report.fail("x.va_translation_iso", e.to_string())
                    }
                }
                verify_pointed_space(&plus, report);
            }
            Err(e) => report.fail("x.plus_minus_roundtrip", e.to_string()),
        }
        return;
    }
    verify_pointed_space(x, report);
}

fn verify_pointed_space(x: &Space, report: &mut DualityReport) {
    let (va, family) = match functor_va_obj(x) {
        Ok(v) => v,
        Err(e) => {
            report.fail("x.va_construction", e.to_string());
            return;
        }
    };
    let clopens = admissible_clopen_upsets(x);
    report.record(
        "x.a_subset_va",
        clopens.sets.iter().all(|u| family.sets.binary_search(u).is_ok()),
        "A(X) is not contained in V^a(X)",
    );
    let profile = classify_frame(&va).expect("V^a is a finite lattice");
    report.record(
        "x.va_is_algebraic_frame",
        profile.is_frame && profile.is_algebraic,
        "V^a(X) under reverse inclusion is not an algebraic frame",
    );
    // Compacts of V^a are exactly A(X), recomputed rather than assumed.
    let compacts = compact_elements(&va).expect("lattice");
    let mut compact_sets: Vec<Mask> = bits(compacts)
        .map(|i| {
            family.sets[family
                .sets
                .iter()
                .position(|&s| set_label(&x.carrier, s) == va.name(i))
                .expect("labels agree")]
        })
        .collect();
    compact_sets.sort_unstable();
    report.record(
        "x.compacts_of_va_equal_a",
        compact_sets == clopens.sets,
        "K(V^a(X)) differs from A(X)",
    );
    match functor_k_obj(&va) {
        Ok(kva) => {
            let a_poset = functor_a_obj(x);
            report.record(
                "x.kva_equals_a",
                kva.same_labeled(&a_poset),
                "K(V^a(X)) and A(X) differ as labeled posets",
            );
        }
        Err(e) => report.fail("x.kva_equals_a", e.to_string()),
    }
    match natural_iso_epsilon(x) {
        Ok((_, target)) => {
            report.pass("x.epsilon_iso");
            report.record(
                "x.round_trip_iso",
                x.find_isomorphism(&target).is_some(),
                "X is not isomorphic to Y(V^a(X)) as a pointed space",
            );
        }
        Err(e) => {
            report.fail("x.epsilon_iso", e.to_string());
        }
    }
    match natural_iso_upsilon(x) {
        Ok(_) => report.pass("x.upsilon_iso"),
        Err(e) => report.fail("x.upsilon_iso", e.to_string()),
    }
}

/// Naturality squares for one semilattice morphism: η-naturality of F(α),
/// Υ-naturality of X(α), and the composite-functor coincidence
/// Y(F(α)) = X(α).
pub fn naturality_battery(alpha: &StructureMap) -> DualityReport {
    let mut report = DualityReport::new();
    let classification = crate::morphism::classify_map(alpha);
    if !classification.meet_hom.is_true()
        || require_distributive_ms(&alpha.dom).is_err()
        || require_distributive_ms(&alpha.cod).is_err()
    {
        report.skip("nat.applicable", "not a DMS-morphism; naturality not applicable");
        return report;
    }
    report.pass("nat.applicable");

    let ell = functor_f_mor(alpha).expect("meet-hom");
    match (functor_y_mor(&ell, Variant::Pointed), functor_x_mor(alpha, Variant::Pointed)) {
        (Ok(y_f_alpha), Ok(x_alpha)) => {
            report.record(
                "nat.yf_equals_x_on_morphisms",
                y_f_alpha.same_labeled(&x_alpha),
                "Y(F(α)) and X(α) differ as labeled relations",
            );
            // Bounded and pointed variants agree through the point
            // translations on morphisms as well as on objects.
            match (functor_x_mor(alpha, Variant::Bounded), relation_minus(&x_alpha)) {
                (Ok(bounded), Ok(minus)) => report.record(
                    "nat.bounded_x_translation",
                    bounded.same_labeled(&minus),
                    "bounded X(α) differs from the restricted pointed one",
                ),
                (Err(e), _) | (_, Err(e)) => {
                    report.fail("nat.bounded_x_translation", e.to_string())
                }
            }
        }
        (Err(e), _) | (_, Err(e)) => report.fail("nat.yf_equals_x_on_morphisms", e.to_string()),
    }

    // η-naturality: □_{R_ℓ}(η_{L1}(a)) = η_{L2}(ℓ(a)) on the filter frames.
    let (eta1, _) = natural_iso_eta(&ell.dom).expect("filter frame");
    let (eta2, _) = natural_iso_eta(&ell.cod).expect("filter frame");
    match functor_y_mor(&ell, Variant::Pointed) {
        Ok(r_ell) => {
            let (_, fam1) = functor_va_obj(&r_ell.cod).expect("valid spectrum");
            let (_, fam2) = functor_va_obj(&r_ell.dom).expect("valid spectrum");
            let mut ok = true;
            for a in 0..ell.dom.len() {
                let boxed = r_ell.box_set(fam1.sets[reindex_family(&eta1, a, &fam1, &r_ell.cod)]);
                let expected = fam2.sets[reindex_family(&eta2, ell.map[a], &fam2, &r_ell.dom)];
                if boxed != expected {
                    ok = false;
                    break;
                }
            }
            report.record("nat.eta_square", ok, "η-naturality square does not commute");
        }
        Err(e) => report.fail("nat.eta_square", e.to_string()),
    }

    // Υ-naturality: Υ_Y * R = R_{□_R} * Υ_X for R = X(α).
    match functor_x_mor(alpha, Variant::Pointed) {
        Ok(r) => {
            let upsilon_dom = natural_iso_upsilon(&r.dom).expect("valid spectrum");
            let upsilon_cod = natural_iso_upsilon(&r.cod).expect("valid spectrum");
            let box_r = functor_va_mor(&r).expect("morphism");
            let r_box = functor_y_mor(&box_r, Variant::Pointed).expect("frame morphism");
            match (compose_gp(&upsilon_cod, &r), compose_gp(&r_box, &upsilon_dom)) {
                (Ok(left), Ok(right)) => report.record(
                    "nat.upsilon_square",
                    left.same_labeled(&right),
                    "Υ-naturality square does not commute",
                ),
                (Err(e), _) | (_, Err(e)) => report.fail("nat.upsilon_square", e.to_string()),
            }
        }
        Err(e) => report.fail("nat.upsilon_square", e.to_string()),
    }
    report
}

/// Family index of η(a) for an element of the frame under a spectrum space.
fn reindex_family(eta: &StructureMap, a: usize, family: &AdmissibleFamily, space: &Space) -> usize {
    let label = eta.cod.name(eta.map[a]);
    family
        .sets
        .iter()
        .position(|&s| set_label(&space.carrier, s) == label)
        .expect("η lands in the admissible family")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixtures::*;
    use crate::space::fixtures::*;

    #[test]
    fn functor_objects_on_fixtures() {
        let f_ch2 = functor_f_obj(&ch2()).unwrap();
        assert!(f_ch2.find_isomorphism(&ch2()).is_some(), "F(CH2) ≅ CH2");

        let x_b2 = functor_x_obj(&b2(), Variant::Pointed).unwrap();
        assert!(x_b2.find_isomorphism(&p3()).is_some(), "X(B2) is P3 up to labels");
        assert_eq!(
            x_b2.carrier.elements(),
            &["{a,1}".to_string(), "{b,1}".to_string(), "{0,a,b,1}".to_string()]
        );

        let y_b2 = functor_y_obj(&b2(), Variant::Pointed).unwrap();
        assert!(y_b2.find_isomorphism(&p3()).is_some(), "Y(B2) ≅ P3");
        assert_eq!(y_b2.carrier.elements(), &["a".to_string(), "b".to_string(), "1".to_string()]);

        let a_p3 = functor_a_obj(&p3());
        assert!(a_p3.find_isomorphism(&b2()).is_some(), "A(P3) ≅ B2");
    }

    #[test]
    fn k_dualizes_once() {
        let k = functor_k_obj(&ch3()).unwrap();
        assert_eq!(k.len(), 3);
        let (zero, one) = (k.idx("0").unwrap(), k.idx("1").unwrap());
        assert!(k.leq(one, zero) && !k.leq(zero, one), "K flips the order");
    }

    #[test]
    fn functor_identity_laws() {
        let b2 = b2();
        let id = StructureMap::identity(&b2);
        let f_id = functor_f_mor(&id).unwrap();
        assert_eq!(f_id.map, (0..4).collect::<Vec<_>>());
        let x_id = functor_x_mor(&id, Variant::Pointed).unwrap();
        let expected = SpaceRelation::identity(&functor_x_obj(&b2, Variant::Pointed).unwrap());
        assert!(x_id.same_labeled(&expected), "X(identity) is the order relation");
    }

    #[test]
    fn x_on_morphisms_from_preimages() {
        let b2 = b2();
        let alpha = StructureMap::new(
            ch3(),
            b2.clone(),
            vec![b2.idx("0").unwrap(), b2.idx("a").unwrap(), b2.idx("1").unwrap()],
        )
        .unwrap();
        let rel = functor_x_mor(&alpha, Variant::Pointed).unwrap();
        assert_eq!(rel.dom.carrier.len(), 3, "X(B2) has three points");
        assert_eq!(rel.cod.carrier.len(), 3, "X(CH3) has three points");
        assert!(check_gp_morphism(&rel).ok());
        // Preimages: α⁻¹(↑a) = ↑h, α⁻¹(↑b) = ↑1, α⁻¹(B2) = CH3, so the
        // pairs are forced.
        let expect = |x: &str, ys: &[&str]| {
            let xi = rel.dom.carrier.idx(x).unwrap();
            let got = rel.cod.carrier.names_of(rel.image(xi));
            assert_eq!(got, ys.iter().map(|s| s.to_string()).collect::<Vec<_>>(), "R[{x}]");
        };
        expect("{a,1}", &["{h,1}", "{0,h,1}"]);
        expect("{b,1}", &["{1}", "{h,1}", "{0,h,1}"]);
        expect("{0,a,b,1}", &["{0,h,1}"]);

        // The bounded variant is the pointed one with the adjoined points
        // restricted away.
        let bounded = functor_x_mor(&alpha, Variant::Bounded).unwrap();
        let minus = relation_minus(&rel).unwrap();
        assert!(bounded.same_labeled(&minus));
    }

    #[test]
    fn a_on_morphisms_boxes() {
        let p3 = p3();
        let m = p3.carrier.idx("m").unwrap();
        let all_to_m = SpaceRelation::new(p3.clone(), p3.clone(), vec![1 << m; 3]);
        let boxed = functor_a_mor(&all_to_m).unwrap();
        // Every admissible upset containing m boxes to the full carrier.
        let full_label = set_label(&p3.carrier, p3.carrier.full_mask());
        for i in 0..boxed.dom.len() {
            assert_eq!(boxed.cod.name(boxed.map[i]), full_label);
        }
    }

    #[test]
    fn natural_isos_on_p3() {
        let p3 = p3();
        let (eps, _) = natural_iso_epsilon(&p3).unwrap();
        let names: Vec<&str> = (0..3).map(|i| eps.cod.name(eps.map[i])).collect();
        assert_eq!(names, vec!["{p,m}", "{q,m}", "{m}"]);
        natural_iso_upsilon(&p3).unwrap();
        let b2 = b2();
        let (eta, _) = natural_iso_eta(&b2).unwrap();
        let expected = ["{a,b,1}", "{a,1}", "{b,1}", "{1}"];
        for (i, exp) in expected.iter().enumerate() {
            assert_eq!(eta.cod.name(eta.map[i]), *exp, "η on {}", b2.name(i));
        }
    }

    #[test]
    fn natural_isos_on_degenerate_objects() {
        let (eps, _) = natural_iso_epsilon(&pointed_singleton()).unwrap();
        assert_eq!(eps.map, vec![0]);
        let (eta, _) = natural_iso_eta(&ch1()).unwrap();
        assert_eq!(eta.map, vec![0]);
    }

    #[test]
    fn verify_duality_passes_on_fixtures() {
        for m in [ch1(), ch2(), ch3(), b2()] {
            let report = verify_duality(&DualObject::Poset(m));
            assert!(!report.has_failures(), "{}", report.to_json());
        }
        let report = verify_duality(&DualObject::Space(p3()));
        assert!(!report.has_failures(), "{}", report.to_json());
    }

    #[test]
    fn verify_duality_flags_corrupted_spaces() {
        let p3 = p3();
        let corrupted =
            Space::pointed(p3.carrier.clone(), p3.carrier.mask_of(&["p"]).unwrap(), 2).unwrap();
        let report = verify_duality(&DualObject::Space(corrupted));
        assert!(report.has_failures());
        let skipped: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| c.status == crate::report::Status::Skipped)
            .map(|c| c.check_id.as_str())
            .collect();
        assert!(skipped.contains(&"x.round_trips"), "downstream checks are skipped");
    }

    #[test]
    fn verify_duality_rejects_nondistributive() {
        let report = verify_duality(&DualObject::Poset(m3()));
        assert!(report.has_failures());
    }

    #[test]
    fn naturality_battery_on_fixture_morphisms() {
        let b2 = b2();
        let alpha = StructureMap::new(
            ch3(),
            b2.clone(),
            vec![b2.idx("0").unwrap(), b2.idx("a").unwrap(), b2.idx("1").unwrap()],
        )
        .unwrap();
        let report = naturality_battery(&alpha);
        assert!(!report.has_failures(), "{}", report.to_json());

        let id = StructureMap::identity(&b2);
        let report = naturality_battery(&id);
        assert!(!report.has_failures(), "{}", report.to_json());
    }
}

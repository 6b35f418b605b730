//! Maps between algebras and relations between spaces.
//!
//! The algebra side classifies a total map into the morphism classes the
//! dualities distinguish (meet-homomorphism, sup-homomorphism, the
//! prime-filter pullback condition, join-complete, the compact-meet
//! condition, frame homomorphism), quantifying over every subset of the
//! domain rather than stopping at pairs. The space side implements
//! generalized Priestley morphisms: relations with separating admissible
//! upsets and admissibility-preserving box operators, their * composition,
//! and the functional/strong translation.
//!
//! Direction bookkeeping: a frame map α : L1 → L2 induces a relation
//! R_α ⊆ Y(L2) × Y(L1); the result records dom and cod explicitly so the
//! contravariant flip can never happen silently.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{compact_elements, is_distributive_lattice};
use crate::error::{Error, Result};
use crate::filters::{filters, set_label};
use crate::poset::{bits, BoundKind, FinitePoset, Mask};
use crate::space::{
    admissible_clopen_upsets, adjoin_point, spectrum_of_frame, unpoint, Space,
};

/// A total function between poset carriers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureMap {
    pub dom: FinitePoset,
    pub cod: FinitePoset,
    /// `map[i]` is the codomain index of the i-th domain element.
    pub map: Vec<usize>,
}

impl StructureMap {
    pub fn new(dom: FinitePoset, cod: FinitePoset, map: Vec<usize>) -> Result<Self> {
        if map.len() != dom.len() {
            return Err(Error::Parse("assignment is not total".into()));
        }
        if map.iter().any(|&j| j >= cod.len()) {
            return Err(Error::UnknownElement("assignment leaves the codomain".into()));
        }
        Ok(StructureMap { dom, cod, map })
    }

    pub fn identity(p: &FinitePoset) -> Self {
        StructureMap { dom: p.clone(), cod: p.clone(), map: (0..p.len()).collect() }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// Image of a subset mask.
    pub fn image(&self, s: Mask) -> Mask {
        bits(s).fold(0, |acc, i| acc | 1 << self.map[i])
    }

    /// Preimage of a subset mask.
    pub fn preimage(&self, s: Mask) -> Mask {
        (0..self.dom.len()).filter(|&i| s >> self.map[i] & 1 == 1).fold(0, |acc, i| acc | 1 << i)
    }

    /// g ∘ self, defined when the labeled middle objects agree.
    pub fn then(&self, g: &StructureMap) -> Result<StructureMap> {
        if !self.cod.same_labeled(&g.dom) {
            return Err(Error::DomainMismatch("composition through unequal objects".into()));
        }
        // Translate through names in case declared orders differ.
        let translate: Vec<usize> = self
            .cod
            .elements()
            .iter()
            .map(|name| g.dom.idx(name).expect("same labeled carriers"))
            .collect();
        let map = self.map.iter().map(|&i| g.map[translate[i]]).collect();
        StructureMap::new(self.dom.clone(), g.cod.clone(), map)
    }

    pub fn is_order_preserving(&self) -> bool {
        let n = self.dom.len();
        (0..n).all(|a| (0..n).all(|b| !self.dom.leq(a, b) || self.cod.leq(self.map[a], self.map[b])))
    }
}

/// Tri-state verdict for one morphism-class flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    True,
    False,
    /// The flag's structural preconditions on dom/cod fail; reported
    /// explicitly rather than silently false.
    NotApplicable,
}

impl Flag {
    pub fn is_true(self) -> bool {
        self == Flag::True
    }

    fn of(b: bool) -> Flag {
        if b {
            Flag::True
        } else {
            Flag::False
        }
    }
}

/// Morphism-class flags with witnesses for the false ones, plus the subset
/// quantification bound that was used.
#[derive(Debug, Clone, Serialize)]
pub struct MapClassification {
    pub order_preserving: Flag,
    pub meet_hom: Flag,
    pub top_preserving: Flag,
    pub sup_hom: Flag,
    pub p_condition: Flag,
    pub join_complete: Flag,
    pub dagger: Flag,
    pub frame_hom: Flag,
    /// Subsets of the domain up to this size were quantified.
    pub subset_bound: usize,
    pub witnesses: BTreeMap<String, String>,
}

/// Classify a map into the morphism classes of the duality hierarchy.
/// Subset quantifications include the empty set except for the compact-meet
/// condition, whose families are nonempty (the empty meet only enters when
/// the top is compact, where join-completeness already pins it down).
pub fn classify_map(alpha: &StructureMap) -> MapClassification {
    let dom = &alpha.dom;
    let cod = &alpha.cod;
    let dom_class = dom.classify();
    let cod_class = cod.classify();
    let mut witnesses = BTreeMap::new();
    let record = |key: &str, w: String, map: &mut BTreeMap<String, String>| {
        map.entry(key.to_string()).or_insert(w);
    };

    let mut order_preserving = true;
    'order: for a in 0..dom.len() {
        for b in 0..dom.len() {
            if dom.leq(a, b) && !cod.leq(alpha.map[a], alpha.map[b]) {
                order_preserving = false;
                record(
                    "order_preserving",
                    format!("({},{})", dom.name(a), dom.name(b)),
                    &mut witnesses,
                );
                break 'order;
            }
        }
    }

    let meets_applicable = dom_class.is_meet_semilattice && cod_class.is_meet_semilattice;
    let mut meet_hom = Flag::NotApplicable;
    if meets_applicable {
        let mut ok = true;
        for s in 0..=dom.full_mask() {
            let m = dom.bound(s, BoundKind::Meet).expect("meet-semilattice has all meets");
            let img_meet =
                cod.bound(alpha.image(s), BoundKind::Meet).expect("cod has all meets");
            if alpha.map[m] != img_meet {
                ok = false;
                record("meet_hom", set_label(dom, s), &mut witnesses);
                break;
            }
        }
        meet_hom = Flag::of(ok);
    }

    let top_preserving = match (dom.top(), cod.top()) {
        (Some(t1), Some(t2)) => {
            let ok = alpha.map[t1] == t2;
            if !ok {
                record("top_preserving", dom.name(t1).to_string(), &mut witnesses);
            }
            Flag::of(ok)
        }
        _ => Flag::NotApplicable,
    };

    // Sup-homomorphism: every existing finite join (including the empty one)
    // is preserved, meaning the image join exists and matches.
    let mut sup_hom = Flag::True;
    for s in 0..=dom.full_mask() {
        if let Some(j) = dom.bound(s, BoundKind::Join) {
            let expected = alpha.map[j];
            match cod.bound(alpha.image(s), BoundKind::Join) {
                Some(jj) if jj == expected => {}
                _ => {
                    sup_hom = Flag::False;
                    record("sup_hom", set_label(dom, s), &mut witnesses);
                    break;
                }
            }
        }
    }

    // The prime-pullback condition: x above every α(s) admits c above every
    // s with α(c) <= x. The empty subset makes the image coinitial.
    let mut p_condition = Flag::True;
    'pcond: for s in 0..=dom.full_mask() {
        let image = alpha.image(s);
        for x in 0..cod.len() {
            if image & !cod.down_mask(x) != 0 {
                continue;
            }
            let ubs = dom.upper_bounds(s);
            if !bits(ubs).any(|c| cod.leq(alpha.map[c], x)) {
                p_condition = Flag::False;
                record(
                    "p_condition",
                    format!("({},{})", set_label(dom, s), cod.name(x)),
                    &mut witnesses,
                );
                break 'pcond;
            }
        }
    }

    let lattices = dom_class.is_lattice && cod_class.is_lattice;
    let mut join_complete = Flag::NotApplicable;
    let mut dagger = Flag::NotApplicable;
    let mut frame_hom = Flag::NotApplicable;
    if lattices {
        let mut ok = true;
        for s in 0..=dom.full_mask() {
            let j = dom.bound(s, BoundKind::Join).expect("finite lattice has all joins");
            let img_join = cod.bound(alpha.image(s), BoundKind::Join).expect("lattice");
            if alpha.map[j] != img_join {
                ok = false;
                record("join_complete", set_label(dom, s), &mut witnesses);
                break;
            }
        }
        join_complete = Flag::of(ok);

        let k_dom = compact_elements(dom).expect("lattice");
        let mut dag = true;
        'dagger: for s in 1..=dom.full_mask() {
            if s & !k_dom != 0 {
                continue;
            }
            let m = dom.bound(s, BoundKind::Meet).expect("lattice");
            if k_dom >> m & 1 == 0 {
                continue;
            }
            let img_meet = cod.bound(alpha.image(s), BoundKind::Meet).expect("lattice");
            if alpha.map[m] != img_meet {
                dag = false;
                record("dagger", set_label(dom, s), &mut witnesses);
                break 'dagger;
            }
        }
        dagger = Flag::of(dag);

        let frames = is_distributive_lattice(dom).map(|(d, _)| d).unwrap_or(false)
            && is_distributive_lattice(cod).map(|(d, _)| d).unwrap_or(false);
        if frames {
            frame_hom = Flag::of(join_complete.is_true() && meet_hom.is_true());
            if frame_hom == Flag::False {
                let w = witnesses
                    .get("join_complete")
                    .or_else(|| witnesses.get("meet_hom"))
                    .cloned()
                    .unwrap_or_default();
                record("frame_hom", w, &mut witnesses);
            }
        }
    }

    MapClassification {
        order_preserving: Flag::of(order_preserving),
        meet_hom,
        top_preserving,
        sup_hom,
        p_condition,
        join_complete,
        dagger,
        frame_hom,
        subset_bound: dom.len(),
        witnesses,
    }
}

/// Gate for the join-and-compact-preserving frame maps: dom and cod must be
/// finite frames, α must preserve arbitrary joins and compact elements.
pub fn require_algfrm_j(alpha: &StructureMap) -> Result<()> {
    for (side, p) in [("domain", &alpha.dom), ("codomain", &alpha.cod)] {
        let distributive = is_distributive_lattice(p)
            .map(|(d, _)| d)
            .map_err(|_| Error::NotAlgFrmJ(format!("{side} is not a complete lattice")))?;
        if !distributive {
            return Err(Error::NotAlgFrmJ(format!("{side} is not a frame")));
        }
    }
    for s in 0..=alpha.dom.full_mask() {
        let j = alpha.dom.bound(s, BoundKind::Join).expect("finite lattice");
        let img_join = alpha.cod.bound(alpha.image(s), BoundKind::Join).expect("finite lattice");
        if alpha.map[j] != img_join {
            return Err(Error::NotAlgFrmJ(format!(
                "joins not preserved at {}",
                set_label(&alpha.dom, s)
            )));
        }
    }
    let k_dom = compact_elements(&alpha.dom)?;
    let k_cod = compact_elements(&alpha.cod)?;
    for k in bits(k_dom) {
        if k_cod >> alpha.map[k] & 1 == 0 {
            return Err(Error::NotAlgFrmJ(format!(
                "compact {} maps to a non-compact element",
                alpha.dom.name(k)
            )));
        }
    }
    Ok(())
}

/// Right adjoint r(b) = ⋁{a : α(a) <= b} of a join-preserving map between
/// finite lattices; the Galois property is asserted exhaustively.
pub fn right_adjoint(alpha: &StructureMap) -> Result<StructureMap> {
    let dom = &alpha.dom;
    let cod = &alpha.cod;
    if !dom.classify().is_lattice || !cod.classify().is_lattice {
        return Err(Error::NotALattice("right adjoints need finite lattices".into()));
    }
    for s in 0..=dom.full_mask() {
        let j = dom.bound(s, BoundKind::Join).expect("lattice");
        let img_join = cod.bound(alpha.image(s), BoundKind::Join).expect("lattice");
        if alpha.map[j] != img_join {
            return Err(Error::NotJoinPreserving(dom.names_of(s).join(",")));
        }
    }
    let mut r = Vec::with_capacity(cod.len());
    for b in 0..cod.len() {
        let below: Mask =
            (0..dom.len()).filter(|&a| cod.leq(alpha.map[a], b)).fold(0, |acc, a| acc | 1 << a);
        r.push(dom.bound(below, BoundKind::Join).expect("lattice"));
    }
    for a in 0..dom.len() {
        for b in 0..cod.len() {
            assert_eq!(
                cod.leq(alpha.map[a], b),
                dom.leq(a, r[b]),
                "Galois property must hold for a join-preserving map"
            );
        }
    }
    StructureMap::new(cod.clone(), dom.clone(), r)
}

/// The left adjoint `ℓ(F) = ↑α[F]` of the filter-preimage map, as a map
/// between the filter lattices. Preservation of joins and compacts and the
/// adjunction itself are asserted.
pub fn left_adjoint_on_filters(alpha: &StructureMap) -> Result<StructureMap> {
    let classification = classify_map(alpha);
    if !classification.meet_hom.is_true() {
        let w = classification.witnesses.get("meet_hom").cloned().unwrap_or_default();
        return Err(Error::NotMeetHom(w));
    }
    let fam_dom = filters(&alpha.dom)?;
    let fam_cod = filters(&alpha.cod)?;
    let mut map = Vec::with_capacity(fam_dom.filters.len());
    for &f in &fam_dom.filters {
        let lifted = alpha.cod.up_closure(alpha.image(f));
        let idx = fam_cod
            .position(lifted)
            .expect("the upset of a meet-hom image of a filter is a filter");
        map.push(idx);
    }
    let ell =
        StructureMap::new(fam_dom.inclusion_order.clone(), fam_cod.inclusion_order.clone(), map)?;
    // Adjunction: ℓ(F) ⊆ G iff F ⊆ α⁻¹(G).
    for (i, &f) in fam_dom.filters.iter().enumerate() {
        for &g in &fam_cod.filters {
            let left = fam_cod.filters[ell.map[i]] & !g == 0;
            let right = f & !alpha.preimage(g) == 0;
            assert_eq!(left, right, "ℓ must be left adjoint to the preimage map");
        }
    }
    let check = classify_map(&ell);
    assert!(check.join_complete.is_true(), "ℓ preserves joins");
    let k_cod = compact_elements(&ell.cod)?;
    for k in bits(compact_elements(&ell.dom)?) {
        assert!(k_cod >> ell.map[k] & 1 == 1, "ℓ preserves compact elements");
    }
    Ok(ell)
}

/// A relation R ⊆ X × Y between space carriers, stored as per-element
/// image masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceRelation {
    pub dom: Space,
    pub cod: Space,
    images: Vec<Mask>,
}

impl SpaceRelation {
    pub fn new(dom: Space, cod: Space, images: Vec<Mask>) -> Self {
        assert_eq!(images.len(), dom.carrier.len());
        for &img in &images {
            assert_eq!(img & !cod.carrier.full_mask(), 0, "image leaves the codomain");
        }
        SpaceRelation { dom, cod, images }
    }

    /// The identity morphism on a space is its order.
    pub fn identity(space: &Space) -> Self {
        let images = (0..space.carrier.len()).map(|x| space.carrier.up_mask(x)).collect();
        SpaceRelation { dom: space.clone(), cod: space.clone(), images }
    }

    pub fn image(&self, x: usize) -> Mask {
        self.images[x]
    }

    pub fn relates(&self, x: usize, y: usize) -> bool {
        self.images[x] >> y & 1 == 1
    }

    /// `□_R U = {x : R[x] ⊆ U}`.
    pub fn box_set(&self, u: Mask) -> Mask {
        (0..self.dom.carrier.len())
            .filter(|&x| self.images[x] & !u == 0)
            .fold(0, |acc, x| acc | 1 << x)
    }

    /// Literal equality of dom, cod, and pair set under labels.
    pub fn same_labeled(&self, other: &SpaceRelation) -> bool {
        if !self.dom.same_labeled(&other.dom) || !self.cod.same_labeled(&other.cod) {
            return false;
        }
        (0..self.dom.carrier.len()).all(|x| {
            let ox = other
                .dom
                .carrier
                .idx(self.dom.carrier.name(x))
                .expect("same labeled carriers");
            self.cod.carrier.names_of(self.images[x])
                == other.cod.carrier.names_of(other.images[ox])
        })
    }
}

/// Witnesses for the two generalized-Priestley-morphism conditions; `None`
/// in both places means the relation is a morphism.
#[derive(Debug, Clone, Serialize)]
pub struct GpCheck {
    /// A pair (x, y) outside R that no admissible upset separates.
    pub separation_failure: Option<(String, String)>,
    /// An admissible upset of the codomain whose box is not admissible.
    pub box_failure: Option<String>,
}

impl GpCheck {
    pub fn ok(&self) -> bool {
        self.separation_failure.is_none() && self.box_failure.is_none()
    }
}

/// Check both generalized Priestley morphism conditions exhaustively over
/// the codomain's admissible family.
pub fn check_gp_morphism(r: &SpaceRelation) -> GpCheck {
    let a_cod = admissible_clopen_upsets(&r.cod);
    let a_dom = admissible_clopen_upsets(&r.dom);
    let mut separation_failure = None;
    'sep: for x in 0..r.dom.carrier.len() {
        for y in 0..r.cod.carrier.len() {
            if r.relates(x, y) {
                continue;
            }
            let separated =
                a_cod.sets.iter().any(|&u| r.images[x] & !u == 0 && u >> y & 1 == 0);
            if !separated {
                separation_failure = Some((
                    r.dom.carrier.name(x).to_string(),
                    r.cod.carrier.name(y).to_string(),
                ));
                break 'sep;
            }
        }
    }
    let mut box_failure = None;
    for &u in &a_cod.sets {
        if !a_dom.contains(r.box_set(u)) {
            box_failure = Some(set_label(&r.cod.carrier, u));
            break;
        }
    }
    GpCheck { separation_failure, box_failure }
}

fn require_gp(r: &SpaceRelation, what: &str) -> Result<()> {
    let check = check_gp_morphism(r);
    if check.ok() {
        Ok(())
    } else {
        Err(Error::NotAMorphism(format!("{what}: {:?}", check)))
    }
}

/// Composition S * R of generalized Priestley morphisms R ⊆ X × Y and
/// S ⊆ Y × Z: x (S*R) z iff every admissible U of Z with x ∈ □_R □_S U
/// contains z. The result is again a morphism (asserted).
pub fn compose_gp(s: &SpaceRelation, r: &SpaceRelation) -> Result<SpaceRelation> {
    if !r.cod.same_labeled(&s.dom) {
        return Err(Error::DomainMismatch("cod(R) must equal dom(S)".into()));
    }
    require_gp(r, "left factor")?;
    require_gp(s, "right factor")?;
    let a_z = admissible_clopen_upsets(&s.cod);
    let full_z = s.cod.carrier.full_mask();
    let mut images = Vec::with_capacity(r.dom.carrier.len());
    for x in 0..r.dom.carrier.len() {
        let mut constraint = full_z;
        for &u in &a_z.sets {
            let box_su = s.box_set(u);
            if r.box_set(box_su) >> x & 1 == 1 {
                constraint &= u;
            }
        }
        images.push(constraint);
    }
    let composed = SpaceRelation::new(r.dom.clone(), s.cod.clone(), images);
    debug_assert!(check_gp_morphism(&composed).ok(), "composition of morphisms is a morphism");
    Ok(composed)
}

/// Extract the point function of a functional morphism: f(x) is the least
/// element of `R[x]`. The resulting map is a strong Priestley morphism.
pub fn functional_to_map(r: &SpaceRelation) -> Result<StructureMap> {
    require_gp(r, "functional extraction")?;
    let mut map = Vec::with_capacity(r.dom.carrier.len());
    for x in 0..r.dom.carrier.len() {
        let img = r.images[x];
        let least = bits(img).find(|&l| img & !r.cod.carrier.up_mask(l) == 0);
        match least {
            Some(l) => map.push(l),
            None => return Err(Error::NotFunctional(r.dom.carrier.name(x).to_string())),
        }
    }
    let f = StructureMap::new(r.dom.carrier.clone(), r.cod.carrier.clone(), map)?;
    assert!(
        is_strong(&r.dom, &r.cod, &f.map).is_ok(),
        "the point map of a functional morphism is strong"
    );
    Ok(f)
}

/// Is f a strong Priestley morphism: order-preserving with admissible
/// preimages of admissible upsets?
pub fn is_strong(dom: &Space, cod: &Space, f: &[usize]) -> Result<()> {
    for a in 0..dom.carrier.len() {
        for b in 0..dom.carrier.len() {
            if dom.carrier.leq(a, b) && !cod.carrier.leq(f[a], f[b]) {
                return Err(Error::PreconditionViolated(format!(
                    "not order-preserving at ({},{})",
                    dom.carrier.name(a),
                    dom.carrier.name(b)
                )));
            }
        }
    }
    let a_dom = admissible_clopen_upsets(dom);
    for &u in &admissible_clopen_upsets(cod).sets {
        let preimage = (0..dom.carrier.len())
            .filter(|&x| u >> f[x] & 1 == 1)
            .fold(0u64, |acc, x| acc | 1 << x);
        if !a_dom.contains(preimage) {
            return Err(Error::NotStrong(set_label(&cod.carrier, u)));
        }
    }
    Ok(())
}

/// Turn a strong Priestley morphism into its functional relation
/// R_f = {(x, y) : f(x) <= y}. Round-trips with [`functional_to_map`].
pub fn strong_map_to_relation(dom: &Space, cod: &Space, f: &[usize]) -> Result<SpaceRelation> {
    is_strong(dom, cod, f)?;
    let images = (0..dom.carrier.len()).map(|x| cod.carrier.up_mask(f[x])).collect();
    let rel = SpaceRelation::new(dom.clone(), cod.clone(), images);
    debug_assert!(check_gp_morphism(&rel).ok());
    Ok(rel)
}

/// The dual relation R_α ⊆ Y(L2) × Y(L1) of a join-and-compact-preserving
/// map α : L1 → L2, defined by p R_α q iff r(p) <= q for the right adjoint
/// r. Passes the morphism conditions and satisfies the box identity
/// □_{R_α}(↑k ∩ Y(L1)) = ↑α(k) ∩ Y(L2), both asserted.
pub fn relation_from_frame_morphism(alpha: &StructureMap) -> Result<SpaceRelation> {
    require_algfrm_j(alpha)?;
    let r = right_adjoint(alpha)?;
    let (y_dom_space, dom_lattice_idx) = spectrum_of_frame(&alpha.cod)?;
    let (y_cod_space, cod_lattice_idx) = spectrum_of_frame(&alpha.dom)?;
    let mut images = Vec::with_capacity(y_dom_space.carrier.len());
    for &p_lat in &dom_lattice_idx {
        let rp = r.map[p_lat];
        let img = cod_lattice_idx
            .iter()
            .enumerate()
            .filter(|&(_, &q_lat)| alpha.dom.leq(rp, q_lat))
            .fold(0u64, |acc, (q_space, _)| acc | 1 << q_space);
        images.push(img);
    }
    let rel = SpaceRelation::new(y_dom_space, y_cod_space, images);
    assert!(check_gp_morphism(&rel).ok(), "R_α is a generalized Priestley morphism");
    for k in bits(compact_elements(&alpha.dom)?) {
        let u = cod_lattice_idx
            .iter()
            .enumerate()
            .filter(|&(_, &q)| alpha.dom.leq(k, q))
            .fold(0u64, |acc, (i, _)| acc | 1 << i);
        let expected = dom_lattice_idx
            .iter()
            .enumerate()
            .filter(|&(_, &p)| alpha.cod.leq(alpha.map[k], p))
            .fold(0u64, |acc, (i, _)| acc | 1 << i);
        assert_eq!(rel.box_set(u), expected, "box identity for principal admissible upsets");
    }
    Ok(rel)
}

/// R^- : restrict a morphism between pointed spaces to the unpointed parts.
pub fn relation_minus(r: &SpaceRelation) -> Result<SpaceRelation> {
    let dom = unpoint(&r.dom)?;
    let cod = unpoint(&r.cod)?;
    let m_dom = r.dom.point.expect("pointed");
    let n_cod = r.cod.point.expect("pointed");
    let kept_dom: Vec<usize> =
        (0..r.dom.carrier.len()).filter(|&x| x != m_dom).collect();
    let cod_translate: Vec<usize> = (0..r.cod.carrier.len()).filter(|&y| y != n_cod).collect();
    let mut images = Vec::with_capacity(kept_dom.len());
    for &x in &kept_dom {
        let img = cod_translate
            .iter()
            .enumerate()
            .filter(|&(_, &y)| r.relates(x, y))
            .fold(0u64, |acc, (new_y, _)| acc | 1 << new_y);
        images.push(img);
    }
    Ok(SpaceRelation::new(dom.space, cod.space, images))
}

/// R^+ : extend a morphism between unpointed spaces to the adjoined points,
/// relating everything on the left to the new point on the right.
pub fn relation_plus(r: &SpaceRelation) -> Result<SpaceRelation> {
    let dom = adjoin_point(&r.dom)?;
    let cod = adjoin_point(&r.cod)?;
    let n_new = cod.point.expect("adjoined point");
    let mut images: Vec<Mask> = r.images.iter().map(|&img| img | 1 << n_new).collect();
    images.push(1 << n_new);
    Ok(SpaceRelation::new(dom, cod, images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixtures::*;
    use crate::space::fixtures::*;

    fn map(dom: &FinitePoset, cod: &FinitePoset, pairs: &[(&str, &str)]) -> StructureMap {
        let mut assignment = vec![usize::MAX; dom.len()];
        for (a, b) in pairs {
            assignment[dom.idx(a).unwrap()] = cod.idx(b).unwrap();
        }
        StructureMap::new(dom.clone(), cod.clone(), assignment).unwrap()
    }

    #[test]
    fn classify_map_examples() {
        let b2 = b2();
        let ch3 = ch3();
        let alpha = map(&b2, &ch3, &[("0", "0"), ("a", "h"), ("b", "0"), ("1", "1")]);
        let c = classify_map(&alpha);
        assert!(c.meet_hom.is_true());
        assert_eq!(c.sup_hom, Flag::False, "a ∨ b = 1 but α(a) ∨ α(b) = h");
        assert_eq!(c.p_condition, Flag::False);

        let c = classify_map(&StructureMap::identity(&b2));
        assert!(c.order_preserving.is_true() && c.meet_hom.is_true() && c.sup_hom.is_true());
        assert!(c.p_condition.is_true() && c.join_complete.is_true());
        assert!(c.dagger.is_true() && c.frame_hom.is_true() && c.top_preserving.is_true());

        let alpha = map(&ch3, &b2, &[("0", "0"), ("h", "a"), ("1", "1")]);
        let c = classify_map(&alpha);
        assert!(c.meet_hom.is_true() && c.sup_hom.is_true());
        assert!(c.dagger.is_true() && c.frame_hom.is_true());
    }

    #[test]
    fn right_adjoint_examples() {
        let ch2 = ch2();
        let ch3 = ch3();
        let alpha = map(&ch2, &ch3, &[("0", "0"), ("1", "1")]);
        let r = right_adjoint(&alpha).unwrap();
        // r sends 0 ↦ 0, h ↦ 0, 1 ↦ 1.
        assert_eq!(
            r.map,
            vec![ch2.idx("0").unwrap(), ch2.idx("0").unwrap(), ch2.idx("1").unwrap()]
        );

        let b2 = b2();
        let id = StructureMap::identity(&b2);
        assert_eq!(right_adjoint(&id).unwrap().map, id.map);

        let bad = map(&b2, &ch3, &[("0", "0"), ("a", "h"), ("b", "0"), ("1", "1")]);
        match right_adjoint(&bad) {
            Err(Error::NotJoinPreserving(w)) => assert_eq!(w, "a,b"),
            other => panic!("expected NotJoinPreserving, got {other:?}"),
        }
    }

    #[test]
    fn galois_law_holds_for_enumerated_join_preserving_maps() {
        let dom = b2();
        let cod = ch3();
        for assignment in all_maps(dom.len(), cod.len()) {
            let alpha = StructureMap::new(dom.clone(), cod.clone(), assignment).unwrap();
            if let Ok(r) = right_adjoint(&alpha) {
                for a in 0..dom.len() {
                    for b in 0..cod.len() {
                        assert_eq!(cod.leq(alpha.map[a], b), dom.leq(a, r.map[b]));
                    }
                }
            }
        }
    }

    fn all_maps(dom_len: usize, cod_len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..dom_len {
            let mut next = Vec::new();
            for stub in &out {
                for target in 0..cod_len {
                    let mut extended = stub.clone();
                    extended.push(target);
                    next.push(extended);
                }
            }
            out = next;
        }
        out
    }

    #[test]
    fn left_adjoint_on_filters_examples() {
        let ch2 = ch2();
        let ch3 = ch3();
        let alpha = map(&ch2, &ch3, &[("0", "0"), ("1", "1")]);
        let ell = left_adjoint_on_filters(&alpha).unwrap();
        assert_eq!(ell.dom.len(), 2);
        assert_eq!(ell.cod.len(), 3);
        // ℓ({1}) = {1} and ℓ({0,1}) = CH3.
        assert_eq!(ell.cod.name(ell.map[ell.dom.idx("{1}").unwrap()]), "{1}");
        assert_eq!(ell.cod.name(ell.map[ell.dom.idx("{0,1}").unwrap()]), "{0,h,1}");

        let id = StructureMap::identity(&b2());
        let ell = left_adjoint_on_filters(&id).unwrap();
        assert_eq!(ell.map, (0..4).collect::<Vec<_>>());

        let alpha = map(&ch3, &b2(), &[("0", "0"), ("h", "a"), ("1", "1")]);
        let ell = left_adjoint_on_filters(&alpha).unwrap();
        assert_eq!(ell.cod.name(ell.map[ell.dom.idx("{h,1}").unwrap()]), "{a,1}");

        // a ∧ b = 0 but both map to 1, so meets are not preserved.
        let bad = map(&b2(), &ch2, &[("0", "0"), ("a", "1"), ("b", "1"), ("1", "1")]);
        assert!(matches!(left_adjoint_on_filters(&bad), Err(Error::NotMeetHom(_))));
    }

    #[test]
    fn gp_morphism_checks_on_p3() {
        let p3 = p3();
        assert!(check_gp_morphism(&SpaceRelation::identity(&p3)).ok());

        let m = p3.carrier.idx("m").unwrap();
        let all_to_m =
            SpaceRelation::new(p3.clone(), p3.clone(), vec![1 << m; p3.carrier.len()]);
        assert!(check_gp_morphism(&all_to_m).ok());

        let p = p3.carrier.idx("p").unwrap();
        let mut images = vec![0u64; p3.carrier.len()];
        images[m] = 1 << p;
        let bad = SpaceRelation::new(p3.clone(), p3.clone(), images);
        let check = check_gp_morphism(&bad);
        assert!(!check.ok());
        assert!(check.box_failure.is_some(), "□_R {{m}} = {{p,q}} is not an upset");
    }

    #[test]
    fn box_operator_examples() {
        let p3 = p3();
        let id = SpaceRelation::identity(&p3);
        for &u in &admissible_clopen_upsets(&p3).sets {
            assert_eq!(id.box_set(u), u, "□ along the identity is the identity");
        }
        let m = p3.carrier.idx("m").unwrap();
        let all_to_m =
            SpaceRelation::new(p3.clone(), p3.clone(), vec![1 << m; p3.carrier.len()]);
        let qm = p3.carrier.mask_of(&["q", "m"]).unwrap();
        assert_eq!(all_to_m.box_set(qm), p3.carrier.full_mask());
        assert_eq!(all_to_m.box_set(p3.carrier.full_mask()), p3.carrier.full_mask());
    }

    #[test]
    fn composition_identity_laws() {
        let p3 = p3();
        let id = SpaceRelation::identity(&p3);
        let m = p3.carrier.idx("m").unwrap();
        let s = SpaceRelation::new(p3.clone(), p3.clone(), vec![1 << m; p3.carrier.len()]);
        assert!(compose_gp(&s, &id).unwrap().same_labeled(&s));
        assert!(compose_gp(&id, &s).unwrap().same_labeled(&s));
        // Box distributes over composition.
        let composed = compose_gp(&s, &s).unwrap();
        for &u in &admissible_clopen_upsets(&p3).sets {
            assert_eq!(composed.box_set(u), s.box_set(s.box_set(u)));
        }
    }

    #[test]
    fn functional_translation_round_trips() {
        let p3 = p3();
        let id = SpaceRelation::identity(&p3);
        let f = functional_to_map(&id).unwrap();
        assert_eq!(f.map, (0..3).collect::<Vec<_>>());

        let m = p3.carrier.idx("m").unwrap();
        let s = SpaceRelation::new(p3.clone(), p3.clone(), vec![1 << m; p3.carrier.len()]);
        let f = functional_to_map(&s).unwrap();
        assert!(f.map.iter().all(|&y| y == m));
        let back = strong_map_to_relation(&p3, &p3, &f.map).unwrap();
        assert!(back.same_labeled(&s), "R = R_{{f_R}}");

        // A relation whose image is an antichain has no least element.
        let point = Space::unpointed(
            FinitePoset::from_names(vec!["w".into()], &[]).unwrap(),
            1,
        )
        .unwrap();
        let pair = antichain2_priestley();
        let r = SpaceRelation::new(point, pair, vec![0b11]);
        assert!(matches!(functional_to_map(&r), Err(Error::NotFunctional(w)) if w == "w"));
    }

    #[test]
    fn relation_from_frame_morphism_examples() {
        let b2 = b2();
        let id = StructureMap::identity(&b2);
        let r_alpha = relation_from_frame_morphism(&id).unwrap();
        let expected = SpaceRelation::identity(&r_alpha.dom);
        assert!(r_alpha.same_labeled(&expected), "R of the identity is <= on Y(B2)");

        let alpha = map(&ch2(), &ch3(), &[("0", "0"), ("1", "1")]);
        let rel = relation_from_frame_morphism(&alpha).unwrap();
        assert!(check_gp_morphism(&rel).ok());

        let alpha = map(&ch3(), &b2, &[("0", "0"), ("h", "a"), ("1", "1")]);
        let rel = relation_from_frame_morphism(&alpha).unwrap();
        let r = right_adjoint(&alpha).unwrap();
        // Pairs are exactly {(x, y) : r(x) <= y} under the carrier labels.
        for x in 0..rel.dom.carrier.len() {
            let x_lat = b2.idx(rel.dom.carrier.name(x)).unwrap();
            for y in 0..rel.cod.carrier.len() {
                let y_lat = alpha.dom.idx(rel.cod.carrier.name(y)).unwrap();
                assert_eq!(rel.relates(x, y), alpha.dom.leq(r.map[x_lat], y_lat));
            }
        }

        let not_alg = map(&b2, &ch3(), &[("0", "0"), ("a", "h"), ("b", "0"), ("1", "1")]);
        assert!(matches!(relation_from_frame_morphism(&not_alg), Err(Error::NotAlgFrmJ(_))));
    }

    #[test]
    fn relation_plus_minus_round_trip() {
        let p3 = p3();
        let id = SpaceRelation::identity(&p3);
        let minus = relation_minus(&id).unwrap();
        assert_eq!(minus.dom.len(), 2);
        assert!(check_gp_morphism(&minus).ok());
        let plus = relation_plus(&minus).unwrap();
        assert!(check_gp_morphism(&plus).ok());
        assert!(plus.dom.find_isomorphism(&p3).is_some());
    }
}

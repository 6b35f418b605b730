//! JSON document schemas for posets, spaces, maps, and relations.
//!
//! Exact key names, unknown keys rejected. The order in a poset document is
//! any generating relation; the loader closes it reflexively and
//! transitively.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::morphism::{SpaceRelation, StructureMap};
use crate::poset::FinitePoset;
use crate::space::Space;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
}

impl PosetDoc {
    pub fn from_poset(p: &FinitePoset) -> Self {
        let leq = p
            .hasse_covers()
            .into_iter()
            .map(|(a, b)| (p.name(a).to_string(), p.name(b).to_string()))
            .collect();
        PosetDoc { elements: p.elements().to_vec(), leq }
    }

    pub fn to_poset(&self) -> Result<FinitePoset> {
        FinitePoset::from_names(self.elements.clone(), &self.leq)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
    pub x0: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
}

impl SpaceDoc {
    pub fn from_space(s: &Space) -> Self {
        let poset = PosetDoc::from_poset(&s.carrier);
        SpaceDoc {
            elements: poset.elements,
            leq: poset.leq,
            x0: s.carrier.names_of(s.x0),
            point: s.point.map(|m| s.carrier.name(m).to_string()),
        }
    }

    pub fn to_space(&self) -> Result<Space> {
        let carrier = FinitePoset::from_names(self.elements.clone(), &self.leq)?;
        let mut x0 = 0u64;
        for name in &self.x0 {
            x0 |= 1 << carrier.require(name)?;
        }
        match &self.point {
            Some(name) => {
                let m = carrier.require(name)?;
                Space::pointed(carrier, x0, m)
            }
            None => Space::unpointed(carrier, x0),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub dom: PosetDoc,
    pub cod: PosetDoc,
    pub map: BTreeMap<String, String>,
}

impl MapDoc {
    pub fn from_map(m: &StructureMap) -> Self {
        let map = m
            .dom
            .elements()
            .iter()
            .enumerate()
            .map(|(i, name)| (name.clone(), m.cod.name(m.map[i]).to_string()))
            .collect();
        MapDoc { dom: PosetDoc::from_poset(&m.dom), cod: PosetDoc::from_poset(&m.cod), map }
    }

    pub fn to_map(&self) -> Result<StructureMap> {
        let dom = self.dom.to_poset()?;
        let cod = self.cod.to_poset()?;
        let mut assignment = Vec::with_capacity(dom.len());
        for name in dom.elements() {
            let target = self
                .map
                .get(name)
                .ok_or_else(|| Error::Parse(format!("map is not total: missing {name}")))?;
            assignment.push(cod.require(target)?);
        }
        if self.map.len() != dom.len() {
            return Err(Error::Parse("map mentions elements outside the domain".into()));
        }
        StructureMap::new(dom, cod, assignment)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDoc {
    pub dom: SpaceDoc,
    pub cod: SpaceDoc,
    pub pairs: Vec<(String, String)>,
}

impl RelationDoc {
    pub fn from_relation(r: &SpaceRelation) -> Self {
        let mut pairs = Vec::new();
        for x in 0..r.dom.carrier.len() {
            for y in crate::poset::bits(r.image(x)) {
                pairs.push((r.dom.carrier.name(x).to_string(), r.cod.carrier.name(y).to_string()));
            }
        }
        RelationDoc {
            dom: SpaceDoc::from_space(&r.dom),
            cod: SpaceDoc::from_space(&r.cod),
            pairs,
        }
    }

    pub fn to_relation(&self) -> Result<SpaceRelation> {
        let dom = self.dom.to_space()?;
        let cod = self.cod.to_space()?;
        let mut pairs = vec![0u64; dom.carrier.len()];
        for (x, y) in &self.pairs {
            let xi = dom.carrier.require(x)?;
            let yi = cod.carrier.require(y)?;
            pairs[xi] |= 1 << yi;
        }
        Ok(SpaceRelation::new(dom, cod, pairs))
    }
}

/// Any of the four document kinds, detected by shape.
#[derive(Debug, Clone)]
pub enum Document {
    Poset(PosetDoc),
    Space(SpaceDoc),
    Map(MapDoc),
    Relation(RelationDoc),
}

/// Parse a document, detecting its kind from the keys present.
pub fn parse_document(text: &str) -> Result<Document> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = value.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    let doc = if obj.contains_key("pairs") {
        Document::Relation(from_value(value)?)
    } else if obj.contains_key("map") {
        Document::Map(from_value(value)?)
    } else if obj.contains_key("x0") {
        Document::Space(from_value(value)?)
    } else {
        Document::Poset(from_value(value)?)
    };
    Ok(doc)
}

fn from_value<T: serde::de::DeserializeOwned>(v: serde_json::Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))
}

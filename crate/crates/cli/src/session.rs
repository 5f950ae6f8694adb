//! Named fields, elements, algebra elements and groups, persisted as one JSON
//! document.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use nlfield::json::{AlgebraJson, ElementJson, FieldJson};
use nlfield::{AlgebraElement, FieldElement, GaloisGroup, GaussianRational, GroupFamily, NumberField};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedElement {
    pub field: String,
    pub value: ElementJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedAlgebra {
    pub field: String,
    pub value: AlgebraJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedGroup {
    pub field: String,
    /// Generator images, as element documents.
    pub generators: Vec<ElementJson>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Session {
    #[serde(default)]
    pub fields: BTreeMap<String, FieldJson>,
    #[serde(default)]
    pub elements: BTreeMap<String, NamedElement>,
    #[serde(default)]
    pub algebra: BTreeMap<String, NamedAlgebra>,
    #[serde(default)]
    pub groups: BTreeMap<String, NamedGroup>,
    #[serde(skip)]
    cache: BTreeMap<String, Arc<NumberField>>,
}

#[derive(Debug)]
pub struct SessionError(pub String);

impl std::fmt::Display for SessionError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SessionError {}

type SResult<T> = Result<T, SessionError>;

fn err<E: std::fmt::Display>(ctx: &str) -> impl Fn(E) -> SessionError + '_ {
    move |e| SessionError(format!("{ctx}: {e}"))
}

impl Session {
    pub fn from_json(text: &str) -> SResult<Self> {
        let mut s: Session = serde_json::from_str(text).map_err(err("session document"))?;
        s.check_references()?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }

    pub fn load(path: &Path) -> SResult<Self> {
        let text = std::fs::read_to_string(path).map_err(err(&path.display().to_string()))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> SResult<()> {
        std::fs::write(path, self.to_json()).map_err(err(&path.display().to_string()))
    }

    /// Every element, algebra element and group refers to a stored field and
    /// decodes against it.
    fn check_references(&mut self) -> SResult<()> {
        let names: Vec<String> = self.fields.keys().cloned().collect();
        for name in names {
            self.field(&name)?;
        }
        let elements = self.elements.clone();
        for (name, e) in &elements {
            let k = self.field(&e.field)?;
            e.value
                .to_element(&k)
                .map_err(err(&format!("element {name}")))?;
        }
        let algebra = self.algebra.clone();
        for (name, a) in &algebra {
            let k = self.field(&a.field)?;
            a.value
                .to_algebra::<GaussianRational>(&k)
                .map_err(err(&format!("algebra element {name}")))?;
        }
        let groups: Vec<String> = self.groups.keys().cloned().collect();
        for name in groups {
            self.group(&name)?;
        }
        Ok(())
    }

    pub fn add_field(&mut self, name: &str, field: &Arc<NumberField>) {
        self.fields
            .insert(name.into(), FieldJson::from_field(field));
        self.cache.insert(name.into(), field.clone());
    }

    pub fn field(&mut self, name: &str) -> SResult<Arc<NumberField>> {
        if let Some(k) = self.cache.get(name) {
            return Ok(k.clone());
        }
        let doc = self
            .fields
            .get(name)
            .ok_or_else(|| SessionError(format!("no field named {name:?}")))?;
        let k = doc.to_field().map_err(err(&format!("field {name}")))?;
        self.cache.insert(name.into(), k.clone());
        Ok(k)
    }

    pub fn add_element(&mut self, name: &str, field: &str, x: &FieldElement) {
        self.elements.insert(
            name.into(),
            NamedElement {
                field: field.into(),
                value: ElementJson::from_element(x),
            },
        );
    }

    pub fn element(&mut self, name: &str) -> SResult<FieldElement> {
        let e = self
            .elements
            .get(name)
            .cloned()
            .ok_or_else(|| SessionError(format!("no element named {name:?}")))?;
        let k = self.field(&e.field)?;
        e.value.to_element(&k).map_err(err(name))
    }

    pub fn add_algebra(&mut self, name: &str, field: &str, f: &AlgebraElement<GaussianRational>) {
        self.algebra.insert(
            name.into(),
            NamedAlgebra {
                field: field.into(),
                value: AlgebraJson::from_algebra(f),
            },
        );
    }

    pub fn algebra(&mut self, name: &str) -> SResult<AlgebraElement<GaussianRational>> {
        let a = self
            .algebra
            .get(name)
            .cloned()
            .ok_or_else(|| SessionError(format!("no algebra element named {name:?}")))?;
        let k = self.field(&a.field)?;
        a.value.to_algebra(&k).map_err(err(name))
    }

    pub fn add_group(&mut self, name: &str, field: &str, group: &GaloisGroup) {
        let generators = group
            .elements()
            .iter()
            .skip(1)
            .map(|s| ElementJson::from_element(s.image()))
            .collect();
        self.groups.insert(
            name.into(),
            NamedGroup {
                field: field.into(),
                generators,
            },
        );
    }

    pub fn group(&mut self, name: &str) -> SResult<GaloisGroup> {
        let g = self
            .groups
            .get(name)
            .cloned()
            .ok_or_else(|| SessionError(format!("no group named {name:?}")))?;
        let k = self.field(&g.field)?;
        let images = g
            .generators
            .iter()
            .map(|e| e.to_element(&k))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err(name))?;
        GaloisGroup::from_family(&k, &GroupFamily::Explicit(images)).map_err(err(name))
    }
}

//! JSON system documents.
//!
//! A document names a ground set and an operator, and may chain to a second
//! system through a forward map `f` and a backward map `g`:
//!
//! ```json
//! {
//!   "ground": ["a", "b", "c", "d"],
//!   "operator": {
//!     "kind": "extended",
//!     "singletons": {"a": ["a","c"], "b": ["b","c"], "c": ["c","d"], "d": ["d"]},
//!     "overrides": {"a,b": ["a","b","c","d"]},
//!     "empty": []
//!   }
//! }
//! ```
//!
//! Subset keys are comma-joined labels; `""` is the empty set.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{Operator, OperatorSpec};
use crate::setcore::{GroundSet, Subset, SubsetFamily};
use crate::transforms::Transformation;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum OperatorDoc {
    Table {
        images: BTreeMap<String, Vec<String>>,
    },
    Extended {
        singletons: BTreeMap<String, Vec<String>>,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        overrides: BTreeMap<String, Vec<String>>,
        #[serde(default)]
        empty: Vec<String>,
    },
    PosetDownset {
        /// Pairs `[x, y]` read as `x ≤ y`.
        order: Vec<(String, String)>,
    },
    Star {
        star: String,
        #[serde(default)]
        empty_to_star: bool,
    },
    Family {
        closed: Vec<Vec<String>>,
    },
    Adjacency {
        matrix: Vec<Vec<u8>>,
    },
    Compose {
        first: Box<OperatorDoc>,
        then: Box<OperatorDoc>,
    },
    Identity,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MapDoc {
    Table {
        images: BTreeMap<String, Vec<String>>,
    },
    Extended {
        singletons: BTreeMap<String, Vec<String>>,
        #[serde(default)]
        empty: Vec<String>,
    },
    /// Same labels on both sides.
    Identity,
    /// Every source label kept, in a target that contains them all.
    Inclusion,
    /// Intersection with the target's labels.
    Restriction,
    /// The source system's operator, when source and target coincide.
    Operator,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    pub ground: Vec<String>,
    #[serde(default = "identity_doc")]
    pub operator: OperatorDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<MapDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<MapDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second: Option<Box<SystemDoc>>,
}

fn identity_doc() -> OperatorDoc {
    OperatorDoc::Identity
}

/// A validated chain of systems: this one, and optionally a second reached
/// through `f` (forward) and left through `g` (backward).
#[derive(Clone, Debug)]
pub struct SetSystem {
    pub ground: GroundSet,
    pub operator: Operator,
    pub f: Option<Transformation>,
    pub g: Option<Transformation>,
    pub second: Option<Box<SetSystem>>,
}

impl SetSystem {
    pub fn new(operator: Operator) -> Self {
        SetSystem {
            ground: operator.ground().clone(),
            operator,
            f: None,
            g: None,
            second: None,
        }
    }

    /// Appends `next`, linked by the given maps.
    pub fn link(
        mut self,
        next: SetSystem,
        f: Option<Transformation>,
        g: Option<Transformation>,
    ) -> Result<Self> {
        for m in f.iter() {
            if m.source() != &self.ground || m.target() != &next.ground {
                return Err(Error::GroundMismatch);
            }
        }
        for m in g.iter() {
            if m.source() != &next.ground || m.target() != &self.ground {
                return Err(Error::GroundMismatch);
            }
        }
        self.f = f;
        self.g = g;
        self.second = Some(Box::new(next));
        Ok(self)
    }

    /// The systems along the chain, starting with this one.
    pub fn stages(&self) -> Vec<&SetSystem> {
        let mut out = vec![self];
        while let Some(next) = &out[out.len() - 1].second {
            out.push(next);
        }
        out
    }

    pub fn to_doc(&self) -> SystemDoc {
        SystemDoc {
            ground: self.ground.labels().to_vec(),
            operator: operator_to_doc(&self.operator),
            f: self.f.as_ref().map(map_to_doc),
            g: self.g.as_ref().map(map_to_doc),
            second: self.second.as_ref().map(|s| Box::new(s.to_doc())),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_doc()).expect("documents serialize")
    }
}

pub fn parse_system(text: &str) -> Result<SetSystem> {
    let doc: SystemDoc = serde_json::from_str(text)?;
    system_from_doc(&doc, "")
}

pub fn load_system(path: impl AsRef<Path>) -> Result<SetSystem> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_system(&text).map_err(|e| match e {
        Error::Json(j) => Error::invalid(path.display().to_string(), j.to_string()),
        other => other,
    })
}

fn field(ctx: &str, name: &str) -> String {
    if ctx.is_empty() {
        name.to_string()
    } else {
        format!("{ctx}.{name}")
    }
}

fn at(ctx: String) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Invalid { what, reason } => Error::invalid(format!("{ctx}: {what}"), reason),
        Error::UnknownLabel(l) => Error::invalid(ctx.clone(), format!("unknown label `{l}`")),
        other => Error::invalid(ctx.clone(), other.to_string()),
    }
}

pub fn system_from_doc(doc: &SystemDoc, ctx: &str) -> Result<SetSystem> {
    let ground = GroundSet::new(doc.ground.iter().cloned()).map_err(at(field(ctx, "ground")))?;
    let operator = operator_from_doc(&ground, &doc.operator, &field(ctx, "operator"))?;
    let mut system = SetSystem::new(operator);
    if let Some(second) = &doc.second {
        let next = system_from_doc(second, &field(ctx, "second"))?;
        let f = doc
            .f
            .as_ref()
            .map(|m| map_from_doc(&system, &next, m, &field(ctx, "f")))
            .transpose()?;
        let g = doc
            .g
            .as_ref()
            .map(|m| map_from_doc(&next, &system, m, &field(ctx, "g")))
            .transpose()?;
        system = system.link(next, f, g)?;
    } else {
        // Maps without a second system act on this one.
        let f = doc
            .f
            .as_ref()
            .map(|m| map_from_doc(&system, &system, m, &field(ctx, "f")))
            .transpose()?;
        let g = doc
            .g
            .as_ref()
            .map(|m| map_from_doc(&system, &system, m, &field(ctx, "g")))
            .transpose()?;
        system.f = f;
        system.g = g;
    }
    Ok(system)
}

fn labels(g: &GroundSet, names: &[String], ctx: &str) -> Result<Subset> {
    g.subset_from_labels(names).map_err(at(ctx.to_string()))
}

fn key(g: &GroundSet, text: &str, ctx: &str) -> Result<Subset> {
    g.parse_subset(text).map_err(at(ctx.to_string()))
}

fn element(g: &GroundSet, name: &str, ctx: &str) -> Result<usize> {
    g.index_of(name).map_err(at(ctx.to_string()))
}

fn singleton_images(
    g: &GroundSet,
    target: &GroundSet,
    singletons: &BTreeMap<String, Vec<String>>,
    ctx: &str,
) -> Result<Vec<Subset>> {
    let mut out = vec![None; g.len()];
    for (name, image) in singletons {
        let c = field(ctx, name);
        out[element(g, name, &c)?] = Some(labels(target, image, &c)?);
    }
    out.into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| Error::invalid(ctx.to_string(), format!("missing `{}`", g.label(i))))
        })
        .collect()
}

fn table_images(
    g: &GroundSet,
    target: &GroundSet,
    images: &BTreeMap<String, Vec<String>>,
    ctx: &str,
) -> Result<Vec<Subset>> {
    g.check_table_capacity().map_err(at(ctx.to_string()))?;
    let mut out = vec![None; g.size()];
    for (k, image) in images {
        let c = field(ctx, &format!("\"{k}\""));
        let y = key(g, k, &c)?;
        if out[y.index()].replace(labels(target, image, &c)?).is_some() {
            return Err(Error::invalid(c, "subset listed twice"));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(b, v)| {
            v.ok_or_else(|| {
                Error::invalid(
                    ctx.to_string(),
                    format!("missing image of {}", g.render(Subset::from_bits(b as u32))),
                )
            })
        })
        .collect()
}

pub fn operator_from_doc(g: &GroundSet, doc: &OperatorDoc, ctx: &str) -> Result<Operator> {
    let spec = spec_from_doc(g, doc, ctx)?;
    Operator::new(g, spec).map_err(at(ctx.to_string()))
}

fn spec_from_doc(g: &GroundSet, doc: &OperatorDoc, ctx: &str) -> Result<OperatorSpec> {
    Ok(match doc {
        OperatorDoc::Table { images } => OperatorSpec::Table {
            images: table_images(g, g, images, &field(ctx, "images"))?,
        },
        OperatorDoc::Extended {
            singletons,
            overrides,
            empty,
        } => {
            let singletons = singleton_images(g, g, singletons, &field(ctx, "singletons"))?;
            let mut parsed = BTreeMap::new();
            for (k, image) in overrides {
                let c = field(ctx, &format!("overrides.\"{k}\""));
                parsed.insert(key(g, k, &c)?, labels(g, image, &c)?);
            }
            OperatorSpec::Extended {
                singletons,
                overrides: parsed,
                empty: labels(g, empty, &field(ctx, "empty"))?,
            }
        }
        OperatorDoc::PosetDownset { order } => OperatorSpec::PosetDownset {
            order: order
                .iter()
                .map(|(x, y)| {
                    let c = field(ctx, "order");
                    Ok((element(g, x, &c)?, element(g, y, &c)?))
                })
                .collect::<Result<_>>()?,
        },
        OperatorDoc::Star {
            star,
            empty_to_star,
        } => OperatorSpec::Star {
            star: element(g, star, &field(ctx, "star"))?,
            empty_maps_to_star: *empty_to_star,
        },
        OperatorDoc::Family { closed } => OperatorSpec::Family {
            closed: closed
                .iter()
                .map(|c| labels(g, c, &field(ctx, "closed")))
                .collect::<Result<SubsetFamily>>()?,
        },
        OperatorDoc::Adjacency { matrix } => OperatorSpec::Adjacency {
            matrix: matrix.clone(),
        },
        OperatorDoc::Compose { first, then } => OperatorSpec::Compose {
            first: Box::new(spec_from_doc(g, first, &field(ctx, "first"))?),
            then: Box::new(spec_from_doc(g, then, &field(ctx, "then"))?),
        },
        OperatorDoc::Identity => OperatorSpec::Identity,
    })
}

fn labels_of(g: &GroundSet, y: Subset) -> Vec<String> {
    g.labels_of(y)
}

fn spec_to_doc(g: &GroundSet, spec: &OperatorSpec) -> OperatorDoc {
    match spec {
        OperatorSpec::Table { images } => OperatorDoc::Table {
            images: images
                .iter()
                .enumerate()
                .map(|(b, &img)| (g.key(Subset::from_bits(b as u32)), labels_of(g, img)))
                .collect(),
        },
        OperatorSpec::Extended {
            singletons,
            overrides,
            empty,
        } => OperatorDoc::Extended {
            singletons: singletons
                .iter()
                .enumerate()
                .map(|(i, &img)| (g.label(i).to_string(), labels_of(g, img)))
                .collect(),
            overrides: overrides
                .iter()
                .map(|(&k, &img)| (g.key(k), labels_of(g, img)))
                .collect(),
            empty: labels_of(g, *empty),
        },
        OperatorSpec::PosetDownset { order } => OperatorDoc::PosetDownset {
            order: order
                .iter()
                .map(|&(x, y)| (g.label(x).to_string(), g.label(y).to_string()))
                .collect(),
        },
        OperatorSpec::Star {
            star,
            empty_maps_to_star,
        } => OperatorDoc::Star {
            star: g.label(*star).to_string(),
            empty_to_star: *empty_maps_to_star,
        },
        OperatorSpec::Family { closed } => OperatorDoc::Family {
            closed: closed.iter().map(|c| labels_of(g, c)).collect(),
        },
        OperatorSpec::Adjacency { matrix } => OperatorDoc::Adjacency {
            matrix: matrix.clone(),
        },
        OperatorSpec::Compose { first, then } => OperatorDoc::Compose {
            first: Box::new(spec_to_doc(g, first)),
            then: Box::new(spec_to_doc(g, then)),
        },
        OperatorSpec::Identity => OperatorDoc::Identity,
    }
}

pub fn operator_to_doc(op: &Operator) -> OperatorDoc {
    spec_to_doc(op.ground(), &op.spec())
}

pub fn map_to_doc(f: &Transformation) -> MapDoc {
    MapDoc::Table {
        images: f
            .images()
            .iter()
            .enumerate()
            .map(|(b, &img)| {
                (
                    f.source().key(Subset::from_bits(b as u32)),
                    f.target().labels_of(img),
                )
            })
            .collect(),
    }
}

fn map_from_doc(
    source: &SetSystem,
    target: &SetSystem,
    doc: &MapDoc,
    ctx: &str,
) -> Result<Transformation> {
    let (s, t) = (&source.ground, &target.ground);
    let wrap = at(ctx.to_string());
    match doc {
        MapDoc::Table { images } => {
            Transformation::table(s, t, table_images(s, t, images, &field(ctx, "images"))?)
        }
        MapDoc::Extended { singletons, empty } => Transformation::extended(
            s,
            t,
            singleton_images(s, t, singletons, &field(ctx, "singletons"))?,
            labels(t, empty, &field(ctx, "empty"))?,
        ),
        MapDoc::Identity => {
            if s != t {
                return Err(Error::invalid(ctx.to_string(), "identity needs equal ground sets"));
            }
            Transformation::identity(s)
        }
        MapDoc::Inclusion => Transformation::inclusion(s, t),
        MapDoc::Restriction => Transformation::restriction(s, t),
        MapDoc::Operator => {
            if s != t {
                return Err(Error::invalid(
                    ctx.to_string(),
                    "operator maps need equal ground sets",
                ));
            }
            Transformation::from_operator(&source.operator)
        }
    }
    .map_err(wrap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    const DSTAR: &str = r#"{"ground": ["a","b","c","d"], "operator": {"kind": "extended",
        "singletons": {"a": ["a","c"], "b": ["b","c"], "c": ["c","d"], "d": ["d"]},
        "overrides": {"a,b": ["a","b","c","d"]}, "empty": []}}"#;

    #[test]
    fn loads_dstar_document() {
        let sys = parse_system(DSTAR).unwrap();
        let g = &sys.ground;
        let ab = g.parse_subset("a,b").unwrap();
        assert_eq!(sys.operator.eval(ab).unwrap(), g.full());
        assert!(sys.operator.same_as(&instances::dstar()).unwrap());
    }

    #[test]
    fn round_trips_every_kind() {
        let docs = [
            DSTAR,
            r#"{"ground": ["a","b","c"], "operator": {"kind": "poset-downset", "order": [["a","b"],["b","c"]]}}"#,
            r#"{"ground": ["p","q","*"], "operator": {"kind": "star", "star": "*", "empty_to_star": true}}"#,
            r#"{"ground": ["a","b"], "operator": {"kind": "family", "closed": [[], ["a"], ["a","b"]]}}"#,
            r#"{"ground": ["a","b"], "operator": {"kind": "adjacency", "matrix": [[0,1],[1,0]]}}"#,
            r#"{"ground": ["a","b"], "operator": {"kind": "table", "images": {"": [], "a": ["a"], "b": ["a","b"], "a,b": ["a","b"]}}}"#,
            r#"{"ground": ["a","b"], "operator": {"kind": "compose", "first": {"kind": "identity"}, "then": {"kind": "star", "star": "a"}}}"#,
            r#"{"ground": ["a","b"]}"#,
        ];
        for text in docs {
            let sys = parse_system(text).unwrap();
            let back = parse_system(&sys.to_json().to_string()).unwrap();
            assert!(sys.operator.same_as(&back.operator).unwrap(), "{text}");
        }
    }

    #[test]
    fn empty_ground_set_loads() {
        let sys = parse_system(r#"{"ground": [], "operator": {"kind": "table", "images": {"": []}}}"#)
            .unwrap();
        assert_eq!(sys.ground.len(), 0);
        assert!(crate::properties::is_closure(&sys.operator).unwrap().holds);
    }

    #[test]
    fn validation_errors_name_the_field() {
        let missing_top = r#"{"ground": ["a","b"], "operator": {"kind": "family", "closed": [[], ["a"]]}}"#;
        let err = parse_system(missing_top).unwrap_err().to_string();
        assert!(err.contains("operator"), "{err}");
        assert!(err.contains("{a,b}"), "{err}");

        let unknown = r#"{"ground": ["a"], "operator": {"kind": "extended", "singletons": {"z": ["a"]}}}"#;
        let err = parse_system(unknown).unwrap_err().to_string();
        assert!(err.contains("operator.singletons.z"), "{err}");

        let bad_json = "{\"ground\": [\"a\"],\n \"operator\": {\"kind\": \"nope\"}}";
        let err = parse_system(bad_json).unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn chained_systems_and_maps() {
        let text = r#"{"ground": ["a","b"], "f": {"kind": "inclusion"}, "g": {"kind": "restriction"},
            "second": {"ground": ["a","b","c"]}}"#;
        let sys = parse_system(text).unwrap();
        assert_eq!(sys.stages().len(), 2);
        let f = sys.f.as_ref().unwrap();
        assert_eq!(f.target().len(), 3);
        let back = parse_system(&sys.to_json().to_string()).unwrap();
        assert_eq!(back.f.as_ref().unwrap(), f);
        assert_eq!(back.g, sys.g);
    }
}

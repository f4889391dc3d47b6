//! The pullback property of generator families, and exhaustive enumeration
//! of small operator classes.
//!
//! Generators of a common image `Z`, ordered by inclusion, form a thin
//! category. Two generators `X` and `Y` have a pullback among the generators
//! exactly when `X ∩ Y` is again a generator; any common lower generator `V`
//! then factors uniquely through it as `V ⊆ X ∩ Y`. A dominating operator has
//! the pullback property when every generator family is intersection-closed.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::operators::Operator;
use crate::properties::{self, PropertyReport, Witness};
use crate::setcore::{GroundSet, Subset, SubsetFamily};
use crate::transforms;

/// Largest ground set for closure-family enumeration.
pub const CLOSURE_ENUM_MAX: usize = 4;
/// Largest ground set for exhaustive dominating-operator enumeration.
pub const DOMINATING_ENUM_MAX: usize = 3;

/// Generator family summary for one image value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageSummary {
    pub target: Subset,
    pub generators: usize,
    pub minimal: SubsetFamily,
    pub intersection_closed: bool,
}

#[derive(Clone, Debug)]
pub struct PullbackReport {
    pub holds: bool,
    /// `Generators { target: Z, left: X, right: Y }` with `X ∩ Y` not generating `Z`.
    pub witness: Option<Witness>,
    pub per_image: Vec<ImageSummary>,
    pub ground: GroundSet,
}

impl PullbackReport {
    pub fn to_report(&self) -> PropertyReport {
        PropertyReport::new(
            "pullback",
            &self.ground,
            self.witness.clone(),
            self.per_image.len() as u64,
        )
    }
}

/// Whether every generator family of the dominating operator `delta` is closed
/// under pairwise intersection.
pub fn pullback_property(delta: &Operator) -> Result<PullbackReport> {
    properties::is_dominating(delta)?.require()?;
    let g = delta.ground();
    let t = delta.images()?;
    let mut classes: std::collections::BTreeMap<Subset, Vec<Subset>> = Default::default();
    for y in g.powerset()? {
        classes.entry(t[y.index()]).or_default().push(y);
    }
    let mut witness = None;
    let mut per_image = Vec::with_capacity(classes.len());
    for (target, members) in classes {
        // For a monotone operator the family is intersection-closed exactly
        // when the meet of all its members is itself a generator.
        let meet = members.iter().fold(g.full(), |acc, &x| acc & x);
        let closed = t[meet.index()] == target;
        if !closed && witness.is_none() {
            witness = first_gap(t, &members, target);
        }
        let family: SubsetFamily = members.iter().copied().collect();
        per_image.push(ImageSummary {
            target,
            generators: members.len(),
            minimal: family.minimal_members(),
            intersection_closed: closed,
        });
    }
    Ok(PullbackReport {
        holds: witness.is_none(),
        witness,
        per_image,
        ground: g.clone(),
    })
}

fn first_gap(t: &[Subset], members: &[Subset], target: Subset) -> Option<Witness> {
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            if t[(x & y).index()] != target {
                return Some(Witness::Generators {
                    target,
                    left: x,
                    right: y,
                });
            }
        }
    }
    None
}

/// Independent verdicts on one dominating operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub pullback: bool,
    pub closure: bool,
    /// Anti-exchange; `false` when the operator is not a closure.
    pub antimatroid: bool,
    pub uniquely_generated: bool,
}

impl Equivalence {
    /// Pullback property ⇔ antimatroid closure.
    pub fn agrees(&self) -> bool {
        self.pullback == (self.closure && self.antimatroid)
    }

    /// Additionally, unique generation agrees with both.
    pub fn triple_agrees(&self) -> bool {
        self.agrees() && self.uniquely_generated == self.pullback
    }

    pub fn to_report(&self, ground: &GroundSet) -> PropertyReport {
        let report = PropertyReport::new("antimatroid-equivalence", ground, None, 1);
        let report = if self.triple_agrees() {
            report
        } else {
            PropertyReport {
                holds: false,
                ..report
            }
        };
        report.with_note(format!(
            "pullback={} closure={} antimatroid={} uniquely-generated={}",
            self.pullback, self.closure, self.antimatroid, self.uniquely_generated
        ))
    }
}

pub fn antimatroid_equivalence(delta: &Operator) -> Result<Equivalence> {
    let pullback = pullback_property(delta)?.holds;
    let closure = properties::is_closure(delta)?.holds;
    let antimatroid = closure && properties::is_antimatroid(delta)?.holds;
    let uniquely_generated = properties::is_uniquely_generated(delta)?.holds;
    Ok(Equivalence {
        pullback,
        closure,
        antimatroid,
        uniquely_generated,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorClass {
    Dominating,
    Closure,
    Antimatroid,
    Matroid,
    Topological,
}

impl OperatorClass {
    pub const ALL: [OperatorClass; 5] = [
        OperatorClass::Dominating,
        OperatorClass::Closure,
        OperatorClass::Antimatroid,
        OperatorClass::Matroid,
        OperatorClass::Topological,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OperatorClass::Dominating => "dominating",
            OperatorClass::Closure => "closure",
            OperatorClass::Antimatroid => "antimatroid",
            OperatorClass::Matroid => "matroid",
            OperatorClass::Topological => "topological",
        }
    }
}

impl fmt::Display for OperatorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OperatorClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OperatorClass::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| {
                Error::invalid(
                    "class",
                    format!(
                        "`{s}` is not one of dominating, closure, antimatroid, matroid, topological"
                    ),
                )
            })
    }
}

/// Every operator of the class on `letters(n)`, in a deterministic order.
pub fn enumerate_class(n: usize, class: OperatorClass) -> Result<Vec<Operator>> {
    let ground = GroundSet::letters(n)?;
    match class {
        OperatorClass::Dominating => {
            if n > DOMINATING_ENUM_MAX {
                return Err(Error::Capacity {
                    n,
                    max: DOMINATING_ENUM_MAX,
                });
            }
            let allowed: Vec<Vec<Subset>> = (0..ground.size() as u32)
                .map(|b| {
                    let y = Subset::from_bits(b);
                    ground.powerset().expect("small").filter(|&z| y.is_subset(z)).collect()
                })
                .collect();
            transforms::monotone_selections(&ground, &allowed, usize::MAX)
                .into_iter()
                .map(|images| Operator::table(&ground, images))
                .collect()
        }
        OperatorClass::Closure => moore_families(&ground)?
            .into_iter()
            .map(|family| Operator::from_family(&ground, family))
            .collect(),
        OperatorClass::Antimatroid | OperatorClass::Matroid | OperatorClass::Topological => {
            let check = match class {
                OperatorClass::Antimatroid => properties::is_antimatroid,
                OperatorClass::Matroid => properties::is_matroid,
                _ => properties::is_topological,
            };
            let mut out = Vec::new();
            for op in enumerate_class(n, OperatorClass::Closure)? {
                if check(&op)?.holds {
                    out.push(op);
                }
            }
            Ok(out)
        }
    }
}

pub fn count_class(n: usize, class: OperatorClass) -> Result<usize> {
    Ok(enumerate_class(n, class)?.len())
}

/// Intersection-closed families containing `S`, for `n ≤` [`CLOSURE_ENUM_MAX`].
pub fn moore_families(ground: &GroundSet) -> Result<Vec<SubsetFamily>> {
    let n = ground.len();
    if n > CLOSURE_ENUM_MAX {
        return Err(Error::Capacity {
            n,
            max: CLOSURE_ENUM_MAX,
        });
    }
    let full = ground.full();
    let others: Vec<Subset> = ground.powerset()?.filter(|&y| y != full).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << others.len()) {
        let mut member = vec![false; ground.size()];
        member[full.index()] = true;
        for (k, &y) in others.iter().enumerate() {
            if mask >> k & 1 == 1 {
                member[y.index()] = true;
            }
        }
        let chosen: Vec<Subset> = (0..ground.size() as u32)
            .map(Subset::from_bits)
            .filter(|y| member[y.index()])
            .collect();
        let closed = chosen
            .iter()
            .all(|&x| chosen.iter().all(|&y| member[(x & y).index()]));
        if closed {
            out.push(chosen.into_iter().collect());
        }
    }
    Ok(out)
}

/// Counts closure operators a second way: rebuild `Y ↦ ⋂ { C ∈ F : Y ⊆ C }`
/// from every family `F` whatsoever, and keep the distinct results that pass
/// the closure check.
pub fn count_closures_by_fixed_points(n: usize) -> Result<usize> {
    if n > CLOSURE_ENUM_MAX {
        return Err(Error::Capacity {
            n,
            max: CLOSURE_ENUM_MAX,
        });
    }
    let ground = GroundSet::letters(n)?;
    let size = ground.size();
    let full = ground.full();
    let mut seen = std::collections::HashSet::new();
    for mask in 0u64..(1u64 << size) {
        let family: Vec<Subset> = (0..size as u32)
            .filter(|&b| mask >> b & 1 == 1)
            .map(Subset::from_bits)
            .collect();
        let images: Vec<Subset> = (0..size as u32)
            .map(|b| {
                let y = Subset::from_bits(b);
                family
                    .iter()
                    .filter(|c| y.is_subset(**c))
                    .fold(full, |acc, &c| acc & c)
            })
            .collect();
        if seen.contains(&images) {
            continue;
        }
        let op = Operator::table(&ground, images.clone())?;
        if properties::is_closure(&op)?.holds {
            seen.insert(images);
        }
    }
    Ok(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure;
    use crate::instances;

    #[test]
    fn star_and_identity_have_pullbacks() {
        assert!(pullback_property(&instances::star_space(false)).unwrap().holds);
        let id = Operator::identity(&GroundSet::letters(3).unwrap());
        let r = pullback_property(&id).unwrap();
        assert!(r.holds);
        assert_eq!(r.per_image.len(), 8);
    }

    #[test]
    fn dstar_closure_pullback_witness() {
        let d = instances::dstar();
        let g = d.ground().clone();
        let phi = closure::dominated_closure(&d).unwrap();
        let r = pullback_property(&phi).unwrap();
        assert_eq!(
            r.witness,
            Some(Witness::Generators {
                target: g.parse_subset("a,c,d").unwrap(),
                left: g.parse_subset("a,c").unwrap(),
                right: g.parse_subset("a,d").unwrap(),
            })
        );
    }

    #[test]
    fn equivalence_examples() {
        let star = antimatroid_equivalence(&instances::star_space(false)).unwrap();
        assert!(star.pullback && star.closure && star.antimatroid && star.agrees());
        let d = antimatroid_equivalence(&instances::dstar()).unwrap();
        assert!(!d.pullback && !d.closure && d.agrees());
    }

    #[test]
    fn pullback_requires_dominating() {
        let g = GroundSet::letters(1).unwrap();
        let op = Operator::from_fn(&g, |_| Subset::EMPTY).unwrap();
        assert!(matches!(pullback_property(&op), Err(Error::Precondition { .. })));
    }

    #[test]
    fn small_class_counts() {
        assert_eq!(count_class(1, OperatorClass::Closure).unwrap(), 2);
        assert_eq!(count_class(2, OperatorClass::Closure).unwrap(), 7);
        assert_eq!(count_class(1, OperatorClass::Dominating).unwrap(), 2);
        assert_eq!(count_class(2, OperatorClass::Dominating).unwrap(), 9);
        assert!(count_class(4, OperatorClass::Dominating).is_err());
        assert!(count_class(5, OperatorClass::Closure).is_err());
    }

    #[test]
    fn class_names_round_trip() {
        for class in OperatorClass::ALL {
            assert_eq!(class.as_str().parse::<OperatorClass>().unwrap(), class);
        }
        assert!("convex".parse::<OperatorClass>().is_err());
    }
}

//! Dominated closure, closed sets and generator analysis.
//!
//! The closure `φ_Δ` induced by a dominating operator `Δ` keeps the elements
//! of `Y.Δ` whose own region stays inside `Y.Δ`:
//!
//! ```text
//! Y.φ_Δ = ⋃ { Z ⊆ Y.Δ : Z.Δ ⊆ Y.Δ }
//!       = Y ∪ { z ∈ Y.η : {z}.Δ ⊆ Y.Δ }
//! ```
//!
//! The second form is the default; the first is kept as an oracle.

use crate::error::Result;
use crate::operators::{ClosureMode, Operator};
use crate::properties::{self, PropertyReport, Witness};
use crate::setcore::{Subset, SubsetFamily};

/// All generators of one image value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub target: Subset,
    pub generators: SubsetFamily,
    pub minimal: SubsetFamily,
}

impl GeneratorSet {
    /// False when `target` is not the image of any set.
    pub fn is_image(&self) -> bool {
        !self.generators.is_empty()
    }
}

/// Sets sharing one image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClass {
    pub image: Subset,
    pub members: SubsetFamily,
}

/// `φ_Δ`, evaluated through dominated neighbourhoods.
pub fn dominated_closure(delta: &Operator) -> Result<Operator> {
    dominated_closure_with(delta, ClosureMode::Neighborhood)
}

/// `φ_Δ` with an explicit evaluation strategy.
pub fn dominated_closure_with(delta: &Operator, mode: ClosureMode) -> Result<Operator> {
    properties::is_dominating(delta)?.require()?;
    Ok(Operator::dominated_closure_unchecked(delta, mode))
}

/// Fixed points of a closure operator, in canonical order.
pub fn closed_sets(phi: &Operator) -> Result<SubsetFamily> {
    properties::is_closure(phi)?.require()?;
    let t = phi.images()?;
    Ok(phi.ground().powerset()?.filter(|&y| t[y.index()] == y).collect())
}

/// Every `X` with `X.α = target`, and the minimal ones among them.
pub fn generators(op: &Operator, target: Subset) -> Result<GeneratorSet> {
    op.ground().check(target)?;
    let t = op.images()?;
    let generators: SubsetFamily = op
        .ground()
        .powerset()?
        .filter(|&x| t[x.index()] == target)
        .collect();
    let minimal = generators.minimal_members();
    Ok(GeneratorSet {
        target,
        generators,
        minimal,
    })
}

/// `Y.γ`: the minimal generators of `Y.α`.
pub fn gamma(op: &Operator, y: Subset) -> Result<SubsetFamily> {
    Ok(generators(op, op.eval(y)?)?.minimal)
}

/// `X.α = Y.α`.
pub fn delta_equivalent(op: &Operator, x: Subset, y: Subset) -> Result<bool> {
    Ok(op.eval(x)? == op.eval(y)?)
}

/// The partition of `2^S` by image, ordered by image.
pub fn equivalence_classes(op: &Operator) -> Result<Vec<EquivalenceClass>> {
    let t = op.images()?;
    let mut classes: std::collections::BTreeMap<Subset, Vec<Subset>> = Default::default();
    for y in op.ground().powerset()? {
        classes.entry(t[y.index()]).or_default().push(y);
    }
    Ok(classes
        .into_iter()
        .map(|(image, members)| EquivalenceClass {
            image,
            members: members.into_iter().collect(),
        })
        .collect())
}

/// Whether `X ∩ Y` generates `target` whenever `X` and `Y` do.
pub fn generator_intersection_closed(op: &Operator, target: Subset) -> Result<PropertyReport> {
    let gens = generators(op, target)?;
    let t = op.images()?;
    let members = gens.generators.members();
    let mut found = None;
    'outer: for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            if t[(x & y).index()] != target {
                found = Some(Witness::Generators {
                    target,
                    left: x,
                    right: y,
                });
                break 'outer;
            }
        }
    }
    let k = members.len() as u64;
    Ok(PropertyReport::new(
        "generator-intersection",
        op.ground(),
        found,
        k * k.saturating_sub(1) / 2,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::setcore::GroundSet;

    fn set(g: &GroundSet, s: &str) -> Subset {
        g.parse_subset(s).unwrap()
    }

    fn family(g: &GroundSet, sets: &[&str]) -> SubsetFamily {
        sets.iter().map(|s| set(g, s)).collect()
    }

    #[test]
    fn dstar_closure_values() {
        let d = instances::dstar();
        let g = d.ground().clone();
        for mode in [ClosureMode::Neighborhood, ClosureMode::Subsets] {
            let phi = dominated_closure_with(&d, mode).unwrap();
            assert_eq!(phi.eval(set(&g, "a")).unwrap(), set(&g, "a"));
            assert_eq!(phi.eval(set(&g, "c")).unwrap(), set(&g, "c,d"));
        }
    }

    #[test]
    fn dstar_closed_sets() {
        let d = instances::dstar();
        let g = d.ground().clone();
        let phi = dominated_closure(&d).unwrap();
        assert_eq!(
            closed_sets(&phi).unwrap(),
            family(&g, &["", "a", "b", "d", "c,d", "a,c,d", "b,c,d", "a,b,c,d"])
        );
        assert!(closed_sets(&d).is_err());
    }

    #[test]
    fn noncommuting_example() {
        let d = instances::noncommuting();
        let g = d.ground().clone();
        let phi = dominated_closure(&d).unwrap();
        let a = set(&g, "a");
        assert_eq!(d.apply(phi.apply(a)), set(&g, "a,b"));
        assert_eq!(phi.apply(d.apply(a)), set(&g, "a,b,c"));
    }

    #[test]
    fn identity_is_its_own_closure() {
        let g = GroundSet::letters(3).unwrap();
        let id = Operator::identity(&g);
        let phi = dominated_closure(&id).unwrap();
        assert!(phi.same_as(&id).unwrap());
        assert_eq!(closed_sets(&id).unwrap().len(), 8);
        for y in g.powerset().unwrap() {
            let gens = generators(&id, y).unwrap();
            assert_eq!(gens.generators.members(), &[y]);
            assert_eq!(gamma(&id, y).unwrap().members(), &[y]);
        }
        assert_eq!(equivalence_classes(&id).unwrap().len(), 8);
    }

    #[test]
    fn chain_closed_sets() {
        let chain = instances::chain_downset();
        let g = chain.ground().clone();
        assert_eq!(
            closed_sets(&chain).unwrap(),
            family(&g, &["", "a", "a,b", "a,b,c"])
        );
    }

    #[test]
    fn generator_examples() {
        let d = instances::dstar();
        let g = d.ground().clone();
        let gens = generators(&d, g.full()).unwrap();
        assert_eq!(gens.generators, family(&g, &["a,b", "a,b,c", "a,b,d", "a,b,c,d"]));
        assert_eq!(gens.minimal, family(&g, &["a,b"]));

        let phi = dominated_closure(&d).unwrap();
        let acd = generators(&phi, set(&g, "a,c,d")).unwrap();
        assert_eq!(acd.minimal, family(&g, &["a,c", "a,d"]));
        assert_eq!(gamma(&phi, set(&g, "a,c")).unwrap(), family(&g, &["a,c", "a,d"]));

        let none = generators(&phi, set(&g, "c")).unwrap();
        assert!(!none.is_image());
    }

    #[test]
    fn star_gamma() {
        let star = instances::star_space(false);
        let g = star.ground().clone();
        assert_eq!(gamma(&star, set(&g, "p,*")).unwrap(), family(&g, &["p"]));
    }

    #[test]
    fn equivalence_examples() {
        let d = instances::dstar();
        let g = d.ground().clone();
        assert!(delta_equivalent(&d, set(&g, "a,b"), set(&g, "a,b,c")).unwrap());
        assert!(!delta_equivalent(&d, set(&g, "a"), set(&g, "b")).unwrap());
        let classes = equivalence_classes(&d).unwrap();
        assert_eq!(classes.iter().map(|c| c.members.len()).sum::<usize>(), 16);
    }

    #[test]
    fn intersection_closed_examples() {
        let d = instances::dstar();
        let g = d.ground().clone();
        let phi = dominated_closure(&d).unwrap();
        let r = generator_intersection_closed(&phi, set(&g, "a,c,d")).unwrap();
        assert_eq!(
            r.witness,
            Some(Witness::Generators {
                target: set(&g, "a,c,d"),
                left: set(&g, "a,c"),
                right: set(&g, "a,d"),
            })
        );
        let star = instances::star_space(false);
        let sg = star.ground().clone();
        assert!(generator_intersection_closed(&star, set(&sg, "p,*")).unwrap().holds);
    }

    #[test]
    fn precondition_witness_names_the_failure() {
        let g = GroundSet::letters(2).unwrap();
        let shrink = Operator::from_fn(&g, |_| Subset::EMPTY).unwrap();
        let err = dominated_closure(&shrink).unwrap_err().to_string();
        assert!(err.contains("expansive"), "{err}");
        assert!(err.contains("{a}"), "{err}");
    }
}

//! Transformations between set systems and Galois connections.
//!
//! A [`Transformation`] is a total map `2^S → 2^S'`, stored as a table indexed
//! by the source subset. Composition reads left to right: `f·g` applies `f`
//! first.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::closure;
use crate::error::{Error, Result};
use crate::operators::Operator;
use crate::properties::{PropertyReport, Witness};
use crate::setcore::{GroundSet, Subset, SubsetFamily};

/// Largest ground sets for which adjoint uniqueness is decided exhaustively.
pub const ADJOINT_MAX: usize = 3;
/// Largest combined ground size for the pairwise adjunction criterion.
pub const ADJUNCTION_MAX_BITS: usize = 24;

#[derive(Clone)]
pub struct Transformation {
    source: GroundSet,
    target: GroundSet,
    table: Arc<[Subset]>,
}

impl Transformation {
    pub fn table(source: &GroundSet, target: &GroundSet, images: Vec<Subset>) -> Result<Self> {
        source.check_table_capacity()?;
        if images.len() != source.size() {
            return Err(Error::invalid(
                "transformation",
                format!("expected {} images, found {}", source.size(), images.len()),
            ));
        }
        for &y in &images {
            target.check(y).map_err(|_| {
                Error::invalid("transformation", format!("image {y:?} outside the target"))
            })?;
        }
        Ok(Transformation {
            source: source.clone(),
            target: target.clone(),
            table: images.into(),
        })
    }

    pub fn from_fn(
        source: &GroundSet,
        target: &GroundSet,
        f: impl Fn(Subset) -> Subset,
    ) -> Result<Self> {
        source.check_table_capacity()?;
        let images = (0..source.size() as u32)
            .map(|b| f(Subset::from_bits(b)))
            .collect();
        Transformation::table(source, target, images)
    }

    /// Union of singleton images, with an explicit image for `∅`.
    pub fn extended(
        source: &GroundSet,
        target: &GroundSet,
        singletons: Vec<Subset>,
        empty: Subset,
    ) -> Result<Self> {
        if singletons.len() != source.len() {
            return Err(Error::invalid(
                "transformation",
                format!(
                    "expected {} singleton images, found {}",
                    source.len(),
                    singletons.len()
                ),
            ));
        }
        Transformation::from_fn(source, target, |y| {
            if y.is_empty() {
                empty
            } else {
                y.iter().fold(Subset::EMPTY, |acc, i| acc | singletons[i])
            }
        })
    }

    /// `X ↦ X`, matching elements by label; every source label must occur in the target.
    pub fn inclusion(source: &GroundSet, target: &GroundSet) -> Result<Self> {
        let map = label_map(source, target)?;
        Transformation::from_fn(source, target, |y| {
            y.iter().fold(Subset::EMPTY, |acc, i| acc.with(map[i]))
        })
    }

    /// `Y ↦ Y ∩ target`, matching elements by label.
    pub fn restriction(source: &GroundSet, target: &GroundSet) -> Result<Self> {
        let back = label_map(target, source)?;
        Transformation::from_fn(source, target, |y| {
            back.iter()
                .enumerate()
                .filter(|(_, &j)| y.contains(j))
                .fold(Subset::EMPTY, |acc, (i, _)| acc.with(i))
        })
    }

    pub fn identity(ground: &GroundSet) -> Result<Self> {
        Transformation::from_fn(ground, ground, |y| y)
    }

    /// An operator viewed as a self-map.
    pub fn from_operator(op: &Operator) -> Result<Self> {
        Transformation::table(op.ground(), op.ground(), op.images()?.to_vec())
    }

    /// A self-map viewed as an operator.
    pub fn to_operator(&self) -> Result<Operator> {
        if self.source != self.target {
            return Err(Error::GroundMismatch);
        }
        Operator::table(&self.source, self.table.to_vec())
    }

    pub fn source(&self) -> &GroundSet {
        &self.source
    }

    pub fn target(&self) -> &GroundSet {
        &self.target
    }

    pub fn images(&self) -> &[Subset] {
        &self.table
    }

    pub fn apply(&self, y: Subset) -> Subset {
        self.table[y.index()]
    }

    pub fn eval(&self, y: Subset) -> Result<Subset> {
        self.source.check(y)?;
        Ok(self.apply(y))
    }
}

impl PartialEq for Transformation {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.table == other.table
    }
}

impl Eq for Transformation {}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Transformation")
            .field("source", &self.source)
            .field("target", &self.target)
            .finish()
    }
}

fn label_map(from: &GroundSet, into: &GroundSet) -> Result<Vec<usize>> {
    from.labels().iter().map(|l| into.index_of(l)).collect()
}

fn same_ground(a: &GroundSet, b: &GroundSet) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::GroundMismatch)
    }
}

/// `f·g`: apply `f`, then `g`.
pub fn compose_maps(f: &Transformation, g: &Transformation) -> Result<Transformation> {
    same_ground(&f.target, &g.source)?;
    Transformation::from_fn(&f.source, &g.target, |y| g.apply(f.apply(y)))
}

/// `X ⊆ Y ⇒ X.f ⊆ Y.f`, on covering pairs of the source.
pub fn is_monotone_map(f: &Transformation) -> Result<PropertyReport> {
    let g = &f.source;
    let witness = g
        .covering_pairs()?
        .find(|&(x, i)| !f.apply(x).is_subset(f.apply(x.with(i))))
        .map(|(x, i)| Witness::Covering(x, i));
    Ok(PropertyReport::new(
        "monotone",
        g,
        witness,
        (g.len() * g.size() / 2) as u64,
    ))
}

/// `Y.f = ∅ ⇒ X.f = ∅` for every `X ⊆ Y`.
pub fn empty_image_downward(f: &Transformation) -> Result<PropertyReport> {
    let g = &f.source;
    let mut found = None;
    for y in g.powerset()?.filter(|&y| f.apply(y).is_empty()) {
        if let Some(x) = y.submasks().filter(|&x| !f.apply(x).is_empty()).min() {
            found = Some(Witness::Pair(x, y));
            break;
        }
    }
    Ok(PropertyReport::new("empty-image-downward", g, found, g.size() as u64))
}

fn check_system(f: &Transformation, alpha: &Operator, alpha_t: &Operator) -> Result<()> {
    same_ground(&f.source, alpha.ground())?;
    same_ground(&f.target, alpha_t.ground())
}

/// `Y.α.f ⊆ Y.f.α′` for all `Y ⊆ S`.
pub fn is_continuous(
    f: &Transformation,
    alpha: &Operator,
    alpha_t: &Operator,
) -> Result<PropertyReport> {
    check_system(f, alpha, alpha_t)?;
    let witness = f
        .source
        .powerset()?
        .find(|&y| !f.apply(alpha.apply(y)).is_subset(alpha_t.apply(f.apply(y))))
        .map(Witness::Set);
    Ok(PropertyReport::new(
        "continuous",
        &f.source,
        witness,
        f.source.size() as u64,
    ))
}

/// Both readings of preservation, side by side.
#[derive(Clone, Debug)]
pub struct PreservationReport {
    /// `Y.α.f = Y.f.α′` for all `Y`.
    pub definitional: PropertyReport,
    /// `Y.f.α′ ⊆ Y.α.f` for all `Y`.
    pub inclusion: PropertyReport,
    pub source_idempotent: bool,
}

impl PreservationReport {
    pub fn agree(&self) -> bool {
        self.definitional.holds == self.inclusion.holds
    }
}

pub fn is_preserving(
    f: &Transformation,
    alpha: &Operator,
    alpha_t: &Operator,
) -> Result<PreservationReport> {
    check_system(f, alpha, alpha_t)?;
    let g = &f.source;
    let size = g.size() as u64;
    let definitional = g
        .powerset()?
        .find(|&y| f.apply(alpha.apply(y)) != alpha_t.apply(f.apply(y)))
        .map(Witness::Set);
    let inclusion = g
        .powerset()?
        .find(|&y| !alpha_t.apply(f.apply(y)).is_subset(f.apply(alpha.apply(y))))
        .map(Witness::Set);
    Ok(PreservationReport {
        definitional: PropertyReport::new("preserving", g, definitional, size),
        inclusion: PropertyReport::new("preserving-inclusion", g, inclusion, size),
        source_idempotent: crate::properties::is_idempotent(alpha)?.holds,
    })
}

/// Every image of `Δ′` has a preimage under `f`.
pub fn is_delta_surjective(f: &Transformation, delta_t: &Operator) -> Result<PropertyReport> {
    same_ground(&f.target, delta_t.ground())?;
    let hit: std::collections::HashSet<Subset> = f.table.iter().copied().collect();
    let images: SubsetFamily = delta_t.images()?.iter().copied().collect();
    let witness = images.iter().find(|y| !hit.contains(y)).map(Witness::Set);
    Ok(PropertyReport::new(
        "delta-surjective",
        &f.target,
        witness,
        images.len() as u64,
    ))
}

/// Every image of `Δ′` is the `f`-image of some image of `Δ`.
pub fn delta_set_preimages(
    f: &Transformation,
    delta: &Operator,
    delta_t: &Operator,
) -> Result<PropertyReport> {
    check_system(f, delta, delta_t)?;
    let hit: std::collections::HashSet<Subset> =
        delta.images()?.iter().map(|&y| f.apply(y)).collect();
    let images: SubsetFamily = delta_t.images()?.iter().copied().collect();
    let witness = images.iter().find(|y| !hit.contains(y)).map(Witness::Set);
    Ok(PropertyReport::new(
        "delta-set-preimages",
        &f.target,
        witness,
        images.len() as u64,
    ))
}

/// `X.Δ = Y.Δ ⇒ X.f.Δ′ = Y.f.Δ′`.
pub fn generator_transport(
    f: &Transformation,
    delta: &Operator,
    delta_t: &Operator,
) -> Result<PropertyReport> {
    check_system(f, delta, delta_t)?;
    let mut first: BTreeMap<Subset, Subset> = BTreeMap::new();
    let mut witness = None;
    for y in f.source.powerset()? {
        let rep = *first.entry(delta.apply(y)).or_insert(y);
        if delta_t.apply(f.apply(rep)) != delta_t.apply(f.apply(y)) {
            witness = Some(Witness::Pair(rep, y));
            break;
        }
    }
    Ok(PropertyReport::new(
        "generator-transport",
        &f.source,
        witness,
        f.source.size() as u64,
    ))
}

/// The component checks of a candidate Galois connection `(f, g)`.
#[derive(Clone, Debug)]
pub struct GaloisReport {
    pub monotone_f: PropertyReport,
    pub monotone_g: PropertyReport,
    /// `X ⊆ X.f.g` over `S`.
    pub expansive: PropertyReport,
    /// `Y′.g.f ⊆ Y′` over `S′`.
    pub contractive: PropertyReport,
    /// `X.f ⊆ Y′ ⇔ X ⊆ Y′.g`; absent when `|S| + |S′|` exceeds [`ADJUNCTION_MAX_BITS`].
    pub adjunction: Option<PropertyReport>,
}

impl GaloisReport {
    /// The axiom-form verdict.
    pub fn holds(&self) -> bool {
        [
            &self.monotone_f,
            &self.monotone_g,
            &self.expansive,
            &self.contractive,
        ]
        .iter()
        .all(|r| r.holds)
    }

    /// Whether the axiom form and the adjunction criterion agree.
    pub fn agrees(&self) -> bool {
        match &self.adjunction {
            // The criterion presupposes monotone maps.
            Some(adj) if self.monotone_f.holds && self.monotone_g.holds => {
                adj.holds == self.holds()
            }
            _ => true,
        }
    }

    pub fn parts(&self) -> Vec<&PropertyReport> {
        let mut parts = vec![
            &self.monotone_f,
            &self.monotone_g,
            &self.expansive,
            &self.contractive,
        ];
        parts.extend(self.adjunction.as_ref());
        parts
    }

    /// A single verdict carrying the first failing component's witness.
    pub fn to_report(&self) -> PropertyReport {
        let axioms = [
            ("f not monotone", &self.monotone_f),
            ("g not monotone", &self.monotone_g),
            ("f·g not expansive", &self.expansive),
            ("g·f not contractive", &self.contractive),
        ];
        let checked = axioms.iter().map(|(_, r)| r.checked).sum();
        match axioms.iter().find(|(_, r)| !r.holds) {
            Some((note, r)) => {
                let mut report = (*r).clone();
                report.property = "galois".into();
                report.checked = checked;
                report.with_note(*note)
            }
            None => PropertyReport::new("galois", &self.monotone_f.ground, None, checked),
        }
    }
}

/// Monotone `f: S → S′`, `g: S′ → S` with `f·g` expansive and `g·f` contractive.
pub fn is_galois(f: &Transformation, g: &Transformation) -> Result<GaloisReport> {
    same_ground(&f.target, &g.source)?;
    same_ground(&g.target, &f.source)?;
    let s = &f.source;
    let t = &f.target;
    let expansive = s
        .powerset()?
        .find(|&x| !x.is_subset(g.apply(f.apply(x))))
        .map(Witness::Set);
    let contractive = t
        .powerset()?
        .find(|&y| !f.apply(g.apply(y)).is_subset(y))
        .map(Witness::Set);
    let adjunction = if s.len() + t.len() <= ADJUNCTION_MAX_BITS {
        let mut found = None;
        'outer: for x in s.powerset()? {
            let fx = f.apply(x);
            for y in t.powerset()? {
                if fx.is_subset(y) != x.is_subset(g.apply(y)) {
                    found = Some(Witness::Pair(x, y));
                    break 'outer;
                }
            }
        }
        Some(
            PropertyReport::new("adjunction", s, found, (s.size() * t.size()) as u64).across(t),
        )
    } else {
        None
    };
    Ok(GaloisReport {
        monotone_f: is_monotone_map(f)?,
        monotone_g: is_monotone_map(g)?,
        expansive: PropertyReport::new("expansive", s, expansive, s.size() as u64),
        contractive: PropertyReport::new("contractive", t, contractive, t.size() as u64),
        adjunction,
    })
}

/// A validated Galois connection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisPair {
    f: Transformation,
    g: Transformation,
}

impl GaloisPair {
    pub fn new(f: Transformation, g: Transformation) -> Result<Self> {
        is_galois(&f, &g)?.to_report().require()?;
        Ok(GaloisPair { f, g })
    }

    pub fn f(&self) -> &Transformation {
        &self.f
    }

    pub fn g(&self) -> &Transformation {
        &self.g
    }
}

/// `f·g` as an operator on `S`.
pub fn galois_closure(pair: &GaloisPair) -> Result<Operator> {
    compose_maps(&pair.f, &pair.g)?.to_operator()
}

/// `f·g·f = f` and `g·f·g = g`, pointwise.
pub fn galois_identities(pair: &GaloisPair) -> Result<PropertyReport> {
    let (f, g) = (&pair.f, &pair.g);
    let s = f.source();
    let t = f.target();
    let checked = (s.size() + t.size()) as u64;
    if let Some(x) = s.powerset()?.find(|&x| f.apply(g.apply(f.apply(x))) != f.apply(x)) {
        return Ok(
            PropertyReport::new("galois-identities", s, Some(Witness::Set(x)), checked)
                .with_note("f·g·f ≠ f"),
        );
    }
    if let Some(y) = t.powerset()?.find(|&y| g.apply(f.apply(g.apply(y))) != g.apply(y)) {
        return Ok(
            PropertyReport::new("galois-identities", t, Some(Witness::Set(y)), checked)
                .with_note("g·f·g ≠ g"),
        );
    }
    Ok(PropertyReport::new("galois-identities", s, None, checked))
}

/// `(f·h, k·g)` for `(f, g)` on `S ↔ S′` and `(h, k)` on `S′ ↔ S″`.
pub fn compose_galois(first: &GaloisPair, second: &GaloisPair) -> Result<GaloisPair> {
    GaloisPair::new(
        compose_maps(&first.f, &second.f)?,
        compose_maps(&second.g, &first.g)?,
    )
}

/// `Y ↦` the single minimal generator of `Y.α`.
pub fn gamma_map(op: &Operator) -> Result<Transformation> {
    let g = op.ground();
    let mut images = vec![Subset::EMPTY; g.size()];
    for y in g.powerset()? {
        let minimal = closure::gamma(op, y)?;
        if minimal.len() != 1 {
            return Err(Error::GammaNotFunction {
                image: g.render(op.apply(y)),
                generators: g.render_family(&minimal),
            });
        }
        images[y.index()] = minimal.members()[0];
    }
    Transformation::table(g, g, images)
}

/// Every monotone map `2^source → 2^target`, for ground sets of at most
/// [`ADJOINT_MAX`] elements.
pub fn monotone_maps(source: &GroundSet, target: &GroundSet) -> Result<Vec<Transformation>> {
    check_adjoint_capacity(source, target)?;
    let all: Vec<Subset> = target.powerset()?.collect();
    let allowed = vec![all; source.size()];
    monotone_selections(source, &allowed, usize::MAX)
        .into_iter()
        .map(|images| Transformation::table(source, target, images))
        .collect()
}

fn check_adjoint_capacity(a: &GroundSet, b: &GroundSet) -> Result<()> {
    for g in [a, b] {
        if g.len() > ADJOINT_MAX {
            return Err(Error::Capacity {
                n: g.len(),
                max: ADJOINT_MAX,
            });
        }
    }
    Ok(())
}

/// Monotone tables on `2^source` choosing `table[X] ∈ allowed[X]`, up to `limit`.
pub(crate) fn monotone_selections(source: &GroundSet, allowed: &[Vec<Subset>], limit: usize) -> Vec<Vec<Subset>> {
    let order: Vec<Subset> = source.powerset().expect("capacity checked").collect();
    let mut table = vec![Subset::EMPTY; source.size()];
    let mut out = Vec::new();
    fn go(
        pos: usize,
        order: &[Subset],
        allowed: &[Vec<Subset>],
        table: &mut [Subset],
        out: &mut Vec<Vec<Subset>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if pos == order.len() {
            out.push(table.to_vec());
            return;
        }
        let x = order[pos];
        // Canonical order visits every X − {x} before X.
        let floor = x
            .iter()
            .fold(Subset::EMPTY, |acc, i| acc | table[x.without(i).index()]);
        for &v in &allowed[x.index()] {
            if floor.is_subset(v) {
                table[x.index()] = v;
                go(pos + 1, order, allowed, table, out, limit);
            }
        }
    }
    go(0, &order, allowed, &mut table, &mut out, limit);
    out
}

/// All `g′` making `(f, g′)` a Galois connection.
pub fn right_adjoints(f: &Transformation) -> Result<Vec<Transformation>> {
    let (s, t) = (f.source(), f.target());
    check_adjoint_capacity(s, t)?;
    // g′(Y′) must satisfy g′(Y′).f ⊆ Y′, and contain every X with X.f = Y′.
    let allowed: Vec<Vec<Subset>> = t
        .powerset()?
        .map(|y| {
            let floor = s
                .powerset()
                .expect("capacity checked")
                .filter(|&x| f.apply(x) == y)
                .fold(Subset::EMPTY, |acc, x| acc | x);
            s.powerset()
                .expect("capacity checked")
                .filter(|&x| f.apply(x).is_subset(y) && floor.is_subset(x))
                .collect()
        })
        .collect();
    let mut by_index = vec![Vec::new(); t.size()];
    for (y, a) in t.powerset()?.zip(allowed) {
        by_index[y.index()] = a;
    }
    Ok(monotone_selections(t, &by_index, usize::MAX)
        .into_iter()
        .map(|images| Transformation::table(t, s, images))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|g| matches!(is_galois(f, g), Ok(r) if r.holds()))
        .collect())
}

/// All `f′` making `(f′, g)` a Galois connection.
pub fn left_adjoints(g: &Transformation) -> Result<Vec<Transformation>> {
    let (t, s) = (g.source(), g.target());
    check_adjoint_capacity(s, t)?;
    // f′(X) must satisfy X ⊆ f′(X).g, and lie inside every Y′ with Y′.g = X.
    let mut by_index = vec![Vec::new(); s.size()];
    for x in s.powerset()? {
        let ceiling = t
            .powerset()?
            .filter(|&y| g.apply(y) == x)
            .fold(t.full(), |acc, y| acc & y);
        by_index[x.index()] = t
            .powerset()?
            .filter(|&y| x.is_subset(g.apply(y)) && y.is_subset(ceiling))
            .collect();
    }
    Ok(monotone_selections(s, &by_index, usize::MAX)
        .into_iter()
        .map(|images| Transformation::table(s, t, images))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|f| matches!(is_galois(f, g), Ok(r) if r.holds()))
        .collect())
}

/// Whether `g` is the only right adjoint of `f` and `f` the only left adjoint of `g`.
pub fn galois_unique_adjoint(f: &Transformation, g: &Transformation) -> Result<PropertyReport> {
    is_galois(f, g)?.to_report().require()?;
    let rights = right_adjoints(f)?;
    let lefts = left_adjoints(g)?;
    let checked = (rights.len() + lefts.len()) as u64;
    if let Some(other) = rights.iter().find(|h| *h != g) {
        let y = f
            .target()
            .powerset()?
            .find(|&y| other.apply(y) != g.apply(y))
            .expect("distinct tables differ somewhere");
        return Ok(
            PropertyReport::new("unique-adjoint", f.target(), Some(Witness::Set(y)), checked)
                .with_note("another right adjoint exists"),
        );
    }
    if let Some(other) = lefts.iter().find(|h| *h != f) {
        let x = f
            .source()
            .powerset()?
            .find(|&x| other.apply(x) != f.apply(x))
            .expect("distinct tables differ somewhere");
        return Ok(
            PropertyReport::new("unique-adjoint", f.source(), Some(Witness::Set(x)), checked)
                .with_note("another left adjoint exists"),
        );
    }
    Ok(PropertyReport::new("unique-adjoint", f.source(), None, checked))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    fn set(g: &GroundSet, s: &str) -> Subset {
        g.parse_subset(s).unwrap()
    }

    fn ab_abc() -> (GroundSet, GroundSet) {
        (GroundSet::letters(2).unwrap(), GroundSet::letters(3).unwrap())
    }

    #[test]
    fn inclusion_restriction_is_galois() {
        let (s, t) = ab_abc();
        let f = Transformation::inclusion(&s, &t).unwrap();
        let g = Transformation::restriction(&t, &s).unwrap();
        let report = is_galois(&f, &g).unwrap();
        assert!(report.holds());
        assert!(report.agrees());
        assert_eq!(report.adjunction.as_ref().unwrap().checked, 32);
        let pair = GaloisPair::new(f.clone(), g.clone()).unwrap();
        let phi = galois_closure(&pair).unwrap();
        assert!(phi.same_as(&Operator::identity(&s)).unwrap());
        assert!(galois_identities(&pair).unwrap().holds);
        assert!(galois_unique_adjoint(&f, &g).unwrap().holds);
        assert_eq!(compose_maps(&f, &g).unwrap(), Transformation::identity(&s).unwrap());
    }

    #[test]
    fn identity_pairs() {
        let s = GroundSet::letters(1).unwrap();
        let id = Transformation::identity(&s).unwrap();
        let pair = GaloisPair::new(id.clone(), id.clone()).unwrap();
        assert!(galois_identities(&pair).unwrap().holds);
        assert!(galois_unique_adjoint(&id, &id).unwrap().holds);
        let both = compose_galois(&pair, &pair).unwrap();
        assert_eq!(both, pair);
    }

    #[test]
    fn star_closure_with_identity_is_not_galois() {
        let star = instances::star_space(false);
        let g = star.ground().clone();
        let f = Transformation::from_operator(&star).unwrap();
        let id = Transformation::identity(&g).unwrap();
        let report = is_galois(&f, &id).unwrap();
        assert!(!report.holds());
        assert!(report.agrees());
        assert_eq!(report.contractive.witness, Some(Witness::Set(set(&g, "p"))));
        assert_eq!(report.to_report().note.as_deref(), Some("g·f not contractive"));
        assert!(GaloisPair::new(f, id).is_err());
    }

    #[test]
    fn chained_inclusions_compose() {
        let a = GroundSet::letters(1).unwrap();
        let (ab, abc) = ab_abc();
        let p1 = GaloisPair::new(
            Transformation::inclusion(&a, &ab).unwrap(),
            Transformation::restriction(&ab, &a).unwrap(),
        )
        .unwrap();
        let p2 = GaloisPair::new(
            Transformation::inclusion(&ab, &abc).unwrap(),
            Transformation::restriction(&abc, &ab).unwrap(),
        )
        .unwrap();
        let both = compose_galois(&p1, &p2).unwrap();
        assert_eq!(both.f(), &Transformation::inclusion(&a, &abc).unwrap());
    }

    #[test]
    fn monotone_map_examples() {
        let (s, t) = ab_abc();
        assert!(is_monotone_map(&Transformation::inclusion(&s, &t).unwrap()).unwrap().holds);
        let (f, g) = instances::terminal_pair();
        assert!(is_monotone_map(&f).unwrap().holds);
        assert!(is_monotone_map(&g).unwrap().holds);
        let x = GroundSet::new(["x"]).unwrap();
        let bad = Transformation::from_fn(&s, &x, |y| {
            if y == set(&s, "a") {
                Subset::singleton(0)
            } else {
                Subset::EMPTY
            }
        })
        .unwrap();
        assert!(!is_monotone_map(&bad).unwrap().holds);
        assert!(!empty_image_downward(&bad).unwrap().holds);
    }

    #[test]
    fn terminal_pair_agrees_on_the_whole_set() {
        let (f, g) = instances::terminal_pair();
        let s = f.source().full();
        assert_eq!(f.apply(s), g.apply(s));
        assert_ne!(f, g);
    }

    #[test]
    fn monotone_map_counts() {
        // Monotone Boolean functions on 0..3 variables: 2, 3, 6, 20.
        let counts = [2usize, 3, 6, 20];
        for (n, count) in counts.iter().enumerate() {
            for m in 0..=3 {
                let s = GroundSet::letters(n).unwrap();
                let t = GroundSet::letters(m).unwrap();
                let expected = count.pow(m as u32);
                assert_eq!(monotone_maps(&s, &t).unwrap().len(), expected, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn continuity_examples() {
        let d = instances::dstar();
        let phi = closure::dominated_closure(&d).unwrap();
        let f = Transformation::from_operator(&d).unwrap();
        assert!(is_continuous(&f, &phi, &phi).unwrap().holds);

        let star = instances::star_space(false);
        let g = star.ground().clone();
        let drop_star = Transformation::from_fn(&g, &g, |y| y.without(2)).unwrap();
        assert!(is_continuous(&drop_star, &star, &star).unwrap().holds);

        let (p, q) = (Subset::singleton(0), Subset::singleton(1));
        let moved = Transformation::extended(&g, &g, vec![q, q, p], Subset::EMPTY).unwrap();
        let r = is_continuous(&moved, &star, &star).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness, Some(Witness::Set(p)));
        let w = match r.witness {
            Some(Witness::Set(y)) => y,
            other => panic!("{other:?}"),
        };
        assert!(!moved
            .apply(star.apply(w))
            .is_subset(star.apply(moved.apply(w))));
    }

    #[test]
    fn preservation_examples() {
        let star = instances::star_space(false);
        let g = star.ground().clone();
        let id = Transformation::identity(&g).unwrap();
        let r = is_preserving(&id, &star, &star).unwrap();
        assert!(r.definitional.holds && r.inclusion.holds);
        let f = Transformation::from_operator(&star).unwrap();
        assert!(is_preserving(&f, &star, &star).unwrap().definitional.holds);
    }

    #[test]
    fn surjectivity_examples() {
        let d = instances::dstar();
        let g = d.ground().clone();
        let id = Transformation::identity(&g).unwrap();
        assert!(is_delta_surjective(&id, &d).unwrap().holds);
        let zero = Transformation::from_fn(&g, &g, |_| Subset::EMPTY).unwrap();
        assert!(!is_delta_surjective(&zero, &d).unwrap().holds);
    }

    #[test]
    fn gamma_map_requires_unique_generation() {
        let d = instances::dstar();
        let phi = closure::dominated_closure(&d).unwrap();
        assert!(matches!(gamma_map(&phi), Err(Error::GammaNotFunction { .. })));
        let star = instances::star_space(false);
        let gamma = gamma_map(&star).unwrap();
        let g = star.ground().clone();
        assert_eq!(gamma.apply(set(&g, "p,*")), set(&g, "p"));
    }
}

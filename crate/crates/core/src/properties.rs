//! Axiom checks for operators.
//!
//! Every check returns a [`PropertyReport`]. A failing report always carries
//! the first witness in canonical enumeration order, and re-evaluating the
//! operator on that witness reproduces the violation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::operators::Operator;
use crate::setcore::{GroundSet, Subset};

/// Exhaustive path-independence checks stop at this ground-set size.
pub const PATH_EXHAUSTIVE_MAX: usize = 10;
/// Pair budget for sampled path-independence checks.
pub const PATH_SAMPLE_CAP: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sampled,
}

impl CheckMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckMode::Exhaustive => "exhaustive",
            CheckMode::Sampled => "sampled",
        }
    }
}

/// The cases that demonstrate a failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Set(Subset),
    Pair(Subset, Subset),
    /// A covering pair `(X, X ∪ {x})`.
    Covering(Subset, usize),
    /// A closed set `Y` and elements `x ≠ z` outside it.
    Exchange { closed: Subset, x: usize, z: usize },
    /// Two generators of `target`.
    Generators {
        target: Subset,
        left: Subset,
        right: Subset,
    },
}

impl Witness {
    pub fn describe(&self, g: &GroundSet) -> String {
        self.describe_across(g, g)
    }

    /// Renders a witness whose right-hand set lives in `right`.
    pub fn describe_across(&self, g: &GroundSet, right: &GroundSet) -> String {
        match *self {
            Witness::Set(y) => g.render(y),
            Witness::Pair(x, y) => format!("({}, {})", g.render(x), right.render(y)),
            Witness::Covering(x, i) => format!("({}, {})", g.render(x), g.label(i)),
            Witness::Exchange { closed, x, z } => format!(
                "(Y={}, x={}, z={})",
                g.render(closed),
                g.label(x),
                g.label(z)
            ),
            Witness::Generators {
                target,
                left,
                right,
            } => format!(
                "(Z={}, X={}, Y={})",
                g.render(target),
                g.render(left),
                g.render(right)
            ),
        }
    }

    pub fn to_json(&self, g: &GroundSet) -> Value {
        self.to_json_across(g, g)
    }

    pub fn to_json_across(&self, g: &GroundSet, right: &GroundSet) -> Value {
        match *self {
            Witness::Set(y) => json!({ "set": g.render(y) }),
            Witness::Pair(x, y) => json!({ "left": g.render(x), "right": right.render(y) }),
            Witness::Covering(x, i) => json!({ "set": g.render(x), "element": g.label(i) }),
            Witness::Exchange { closed, x, z } => json!({
                "closed": g.render(closed),
                "x": g.label(x),
                "z": g.label(z),
            }),
            Witness::Generators {
                target,
                left,
                right,
            } => json!({
                "target": g.render(target),
                "left": g.render(left),
                "right": g.render(right),
            }),
        }
    }
}

/// Verdict of one check, with a witness on failure.
#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub property: String,
    pub holds: bool,
    pub witness: Option<Witness>,
    /// Size of the quantified domain (sample count when sampled).
    pub checked: u64,
    pub mode: CheckMode,
    /// The ground set the witness lives in.
    pub ground: GroundSet,
    /// Ground set of the right-hand set of a pair witness, when it differs.
    pub right_ground: Option<GroundSet>,
    /// Which part of a compound check failed.
    pub note: Option<String>,
}

impl PropertyReport {
    pub(crate) fn new(
        property: &str,
        ground: &GroundSet,
        witness: Option<Witness>,
        checked: u64,
    ) -> Self {
        PropertyReport {
            property: property.to_string(),
            holds: witness.is_none(),
            witness,
            checked,
            mode: CheckMode::Exhaustive,
            ground: ground.clone(),
            right_ground: None,
            note: None,
        }
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub(crate) fn sampled(mut self) -> Self {
        self.mode = CheckMode::Sampled;
        self
    }

    pub(crate) fn across(mut self, right: &GroundSet) -> Self {
        self.right_ground = Some(right.clone());
        self
    }

    fn right(&self) -> &GroundSet {
        self.right_ground.as_ref().unwrap_or(&self.ground)
    }

    /// `Ok` when the check holds, otherwise a precondition error carrying the witness.
    pub fn require(&self) -> Result<()> {
        if self.holds {
            return Ok(());
        }
        Err(Error::Precondition {
            property: match &self.note {
                Some(note) => format!("{} ({note})", self.property),
                None => self.property.clone(),
            },
            witness: self.witness_text().unwrap_or_default(),
        })
    }

    pub fn witness_text(&self) -> Option<String> {
        self.witness
            .as_ref()
            .map(|w| w.describe_across(&self.ground, self.right()))
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "property": self.property,
            "holds": self.holds,
            "checked": self.checked,
            "mode": self.mode.as_str(),
        });
        if let Some(w) = &self.witness {
            v["witness"] = w.to_json_across(&self.ground, self.right());
        }
        if let Some(note) = &self.note {
            v["note"] = json!(note);
        }
        v
    }
}

/// First subset (canonical order) violating `ok`.
fn scan_sets(
    op: &Operator,
    property: &str,
    ok: impl Fn(Subset, Subset) -> bool,
) -> Result<PropertyReport> {
    let g = op.ground();
    let table = op.images()?;
    let witness = g
        .powerset()?
        .find(|&y| !ok(y, table[y.index()]))
        .map(Witness::Set);
    Ok(PropertyReport::new(property, g, witness, g.size() as u64))
}

/// `Y ⊆ Y.α` for all `Y`.
pub fn is_expansive(op: &Operator) -> Result<PropertyReport> {
    scan_sets(op, "expansive", |y, img| y.is_subset(img))
}

/// `Y.α ⊆ Y` for all `Y`.
pub fn is_contractive(op: &Operator) -> Result<PropertyReport> {
    scan_sets(op, "contractive", |y, img| img.is_subset(y))
}

/// `X ⊆ Y ⇒ X.α ⊆ Y.α`, decided on covering pairs `X ⊂ X ∪ {x}`.
pub fn is_monotone(op: &Operator) -> Result<PropertyReport> {
    let g = op.ground();
    let t = op.images()?;
    let witness = g
        .covering_pairs()?
        .find(|&(x, i)| !t[x.index()].is_subset(t[x.with(i).index()]))
        .map(|(x, i)| Witness::Covering(x, i));
    let pairs = (g.len() * g.size() / 2) as u64;
    Ok(PropertyReport::new("monotone", g, witness, pairs))
}

/// `Y.α.α = Y.α` for all `Y`.
pub fn is_idempotent(op: &Operator) -> Result<PropertyReport> {
    let t = op.images()?;
    scan_sets(op, "idempotent", |_, img| t[img.index()] == img)
}

/// `Y.α = ⋃_{y ∈ Y} {y}.α` for all `Y`, so in particular `∅.α = ∅`.
pub fn is_extended(op: &Operator) -> Result<PropertyReport> {
    let t = op.images()?;
    scan_sets(op, "extended", |y, img| {
        img == y
            .iter()
            .fold(Subset::EMPTY, |acc, i| acc | t[Subset::singleton(i).index()])
    })
}

/// `(X.α ∪ Y.α).α = (X ∪ Y).α`; exhaustive up to [`PATH_EXHAUSTIVE_MAX`]
/// elements, sampled with seed 0 above.
pub fn is_path_independent(op: &Operator) -> Result<PropertyReport> {
    is_path_independent_seeded(op, 0)
}

pub fn is_path_independent_seeded(op: &Operator, seed: u64) -> Result<PropertyReport> {
    let g = op.ground();
    let n = g.len();
    let holds_at = |x: Subset, y: Subset| op.apply(op.apply(x) | op.apply(y)) == op.apply(x | y);
    if n <= PATH_EXHAUSTIVE_MAX {
        let mut found = None;
        'outer: for x in g.powerset()? {
            for y in g.powerset()? {
                if !holds_at(x, y) {
                    found = Some(Witness::Pair(x, y));
                    break 'outer;
                }
            }
        }
        return Ok(PropertyReport::new(
            "path-independent",
            g,
            found,
            (g.size() as u64).pow(2),
        ));
    }
    let pairs = PATH_SAMPLE_CAP.min(1u64.checked_shl(2 * n as u32).unwrap_or(u64::MAX));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = g.full().bits();
    let found = (0..pairs)
        .map(|_| {
            (
                Subset::from_bits(rng.random::<u32>() & mask),
                Subset::from_bits(rng.random::<u32>() & mask),
            )
        })
        .find(|&(x, y)| !holds_at(x, y))
        .map(|(x, y)| Witness::Pair(x, y));
    Ok(PropertyReport::new("path-independent", g, found, pairs).sampled())
}

/// Expansive, monotone and idempotent.
pub fn is_closure(op: &Operator) -> Result<PropertyReport> {
    let parts = [is_expansive(op)?, is_monotone(op)?, is_idempotent(op)?];
    let checked = parts.iter().map(|r| r.checked).sum();
    let failed = parts.iter().find(|r| !r.holds);
    let report = PropertyReport::new("closure", op.ground(), failed.and_then(|r| r.witness.clone()), checked);
    Ok(match failed {
        Some(r) => report.with_note(format!("not {}", r.property)),
        None => report,
    })
}

/// Expansive and monotone.
pub fn is_dominating(op: &Operator) -> Result<PropertyReport> {
    let parts = [is_expansive(op)?, is_monotone(op)?];
    let checked = parts.iter().map(|r| r.checked).sum();
    let failed = parts.iter().find(|r| !r.holds);
    let report = PropertyReport::new(
        "dominating",
        op.ground(),
        failed.and_then(|r| r.witness.clone()),
        checked,
    );
    Ok(match failed {
        Some(r) => report.with_note(format!("not {}", r.property)),
        None => report,
    })
}

/// Every generator `Y` of an image `Z` lies above exactly one minimal generator of `Z`.
pub fn is_uniquely_generated(op: &Operator) -> Result<PropertyReport> {
    let g = op.ground();
    let t = op.images()?;
    let minimal = minimal_generator_flags(t);
    let mut found = None;
    for y in g.powerset()? {
        let z = t[y.index()];
        let mut below = y.submasks().filter(|x| minimal[x.index()] && t[x.index()] == z);
        let first = below.next();
        let second = below.next();
        if let (Some(a), Some(b)) = (first, second) {
            let mut all: Vec<Subset> = vec![a, b];
            all.extend(below);
            all.sort_unstable();
            found = Some(Witness::Generators {
                target: z,
                left: all[0],
                right: all[1],
            });
            break;
        }
    }
    Ok(PropertyReport::new(
        "uniquely-generated",
        g,
        found,
        g.size() as u64,
    ))
}

/// `flags[X]` is true when no proper subset of `X` has the same image.
pub(crate) fn minimal_generator_flags(t: &[Subset]) -> Vec<bool> {
    // All proper subsets are scanned: without monotonicity, checking only
    // the sets X − {x} is not enough.
    (0..t.len())
        .map(|b| {
            let x = Subset::from_bits(b as u32);
            let z = t[b];
            x.submasks().skip(1).all(|w| t[w.index()] != z)
        })
        .collect()
}

/// `X ⊆ Y.α ⇒ X.α ⊆ Y.α` for all `X`, `Y`.
pub fn is_region_closed(op: &Operator) -> Result<PropertyReport> {
    let g = op.ground();
    let t = op.images()?;
    let mut seen = vec![false; g.size()];
    let mut found = None;
    for y in g.powerset()? {
        let region = t[y.index()];
        if std::mem::replace(&mut seen[region.index()], true) {
            continue;
        }
        let bad = region
            .submasks()
            .filter(|x| !t[x.index()].is_subset(region))
            .min();
        if let Some(x) = bad {
            found = Some(Witness::Pair(x, y));
            break;
        }
    }
    Ok(PropertyReport::new(
        "region-closed",
        g,
        found,
        (g.size() as u64).pow(2),
    ))
}

fn require_closure(op: &Operator) -> Result<&[Subset]> {
    is_closure(op)?.require()?;
    op.images()
}

fn exchange_scan(
    op: &Operator,
    property: &str,
    violated: impl Fn(bool) -> bool,
) -> Result<PropertyReport> {
    let t = require_closure(op)?;
    let g = op.ground();
    let n = g.len();
    let mut checked = 0u64;
    let mut found = None;
    for y in g.powerset()?.filter(|&y| t[y.index()] == y) {
        for x in (0..n).filter(|&x| !y.contains(x)) {
            for z in (0..n).filter(|&z| z != x && !y.contains(z)) {
                checked += 1;
                if found.is_none()
                    && t[y.with(x).index()].contains(z)
                    && violated(t[y.with(z).index()].contains(x))
                {
                    found = Some(Witness::Exchange { closed: y, x, z });
                }
            }
        }
    }
    Ok(PropertyReport::new(property, g, found, checked))
}

/// Exchange: for closed `Y` and `x ≠ z` outside it,
/// `z ∈ (Y ∪ {x}).φ ⇒ x ∈ (Y ∪ {z}).φ`.
pub fn is_matroid(op: &Operator) -> Result<PropertyReport> {
    exchange_scan(op, "matroid", |x_in| !x_in)
}

/// Anti-exchange: for closed `Y` and `x ≠ z` outside it,
/// `z ∈ (Y ∪ {x}).φ ⇒ x ∉ (Y ∪ {z}).φ`.
pub fn is_antimatroid(op: &Operator) -> Result<PropertyReport> {
    exchange_scan(op, "antimatroid", |x_in| x_in)
}

/// `∅.φ = ∅` and `(X ∪ Y).φ = X.φ ∪ Y.φ`.
///
/// Union preservation is decided through singleton decomposition: if `Y` is
/// the first set whose image is not the union of its singleton images, then
/// `({y}, Y − {y})` with `y` the least element of `Y` violates distributivity.
pub fn is_topological(op: &Operator) -> Result<PropertyReport> {
    let t = require_closure(op)?;
    let g = op.ground();
    let checked = (g.size() as u64).pow(2);
    if !t[0].is_empty() {
        return Ok(
            PropertyReport::new("topological", g, Some(Witness::Set(Subset::EMPTY)), checked)
                .with_note("empty set not closed"),
        );
    }
    let found = g
        .powerset()?
        .find(|&y| {
            t[y.index()]
                != y
                    .iter()
                    .fold(Subset::EMPTY, |acc, i| acc | t[Subset::singleton(i).index()])
        })
        .map(|y| {
            let least = y.iter().next().expect("the empty set is closed here");
            Witness::Pair(Subset::singleton(least), y.without(least))
        });
    Ok(PropertyReport::new("topological", g, found, checked))
}

/// Checks a named property; the names match the report `property` field.
pub fn check_named(op: &Operator, name: &str) -> Result<PropertyReport> {
    match name {
        "expansive" => is_expansive(op),
        "contractive" => is_contractive(op),
        "monotone" => is_monotone(op),
        "idempotent" => is_idempotent(op),
        "extended" => is_extended(op),
        "path-independent" => is_path_independent(op),
        "closure" => is_closure(op),
        "dominating" => is_dominating(op),
        "uniquely-generated" => is_uniquely_generated(op),
        "region-closed" => is_region_closed(op),
        "matroid" => is_matroid(op),
        "antimatroid" => is_antimatroid(op),
        "topological" => is_topological(op),
        other => Err(Error::invalid(
            "property",
            format!("`{other}` is not one of {}", PROPERTY_NAMES.join(", ")),
        )),
    }
}

pub const PROPERTY_NAMES: &[&str] = &[
    "expansive",
    "contractive",
    "monotone",
    "idempotent",
    "extended",
    "path-independent",
    "closure",
    "dominating",
    "uniquely-generated",
    "region-closed",
    "matroid",
    "antimatroid",
    "topological",
];

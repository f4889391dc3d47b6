//! The catalogue of implications under test.
//!
//! Each claim pairs an instance generator with a checker. The checker reports
//! [`Outcome::Vacuous`] when the hypothesis fails, so a candidate stream can
//! mix instances that satisfy it with instances that do not.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::category;
use crate::closure;
use crate::error::{Error, Result};
use crate::io::SetSystem;
use crate::operators::{ClosureMode, Operator};
use crate::properties::{self, PropertyReport};
use crate::search::random::{self, DominatingOptions};
use crate::setcore::{GroundSet, Subset};
use crate::transforms::{self, GaloisPair, Transformation, ADJOINT_MAX};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimKind {
    /// A stated result; a counterexample refutes it.
    Proposition,
    /// An open target; either outcome is informational.
    Conjecture,
}

impl ClaimKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ClaimKind::Proposition => "proposition",
            ClaimKind::Conjecture => "conjecture",
        }
    }
}

/// Result of checking one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// The hypothesis does not hold on this instance.
    Vacuous,
    Holds,
    Fails { witness: String, detail: String },
}

impl Outcome {
    pub fn is_failure(&self) -> bool {
        matches!(self, Outcome::Fails { .. })
    }

    fn fails(witness: impl Into<String>, detail: impl Into<String>) -> Self {
        Outcome::Fails {
            witness: witness.into(),
            detail: detail.into(),
        }
    }

    fn from_report(report: &PropertyReport) -> Self {
        if report.holds {
            return Outcome::Holds;
        }
        let detail = match &report.note {
            Some(note) => format!("{} fails ({note})", report.property),
            None => format!("{} fails", report.property),
        };
        Outcome::fails(report.witness_text().unwrap_or_default(), detail)
    }
}

/// How an instance is laid out as a chain of linked systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// One operator.
    Operator,
    /// `(S, Δ) → (S′, Δ′)` through `f`.
    Link,
    /// `S → S′ → S″` through two forward maps.
    Chain,
    /// `f: S → S′` and `g: S′ → S`.
    Pair,
    /// Two Galois pairs `S ↔ S′ ↔ S″`.
    PairChain,
}

type Generator = fn(&mut ChaCha8Rng, usize) -> Result<SetSystem>;
type Checker = fn(&SetSystem) -> Result<Outcome>;

pub struct Claim {
    pub id: &'static str,
    pub kind: ClaimKind,
    pub statement: &'static str,
    /// Largest ground set the generator supports.
    pub max_n: usize,
    pub shape: Shape,
    generate: Generator,
    check: Checker,
}

impl Claim {
    /// Builds the instance for one candidate.
    pub fn generate(&self, rng: &mut ChaCha8Rng, n: usize) -> Result<SetSystem> {
        if n == 0 || n > self.max_n {
            return Err(Error::invalid(
                "n",
                format!("claim `{}` accepts ground sets of 1 to {} elements", self.id, self.max_n),
            ));
        }
        (self.generate)(rng, n)
    }

    pub fn check(&self, system: &SetSystem) -> Result<Outcome> {
        (self.check)(system)
    }
}

impl std::fmt::Debug for Claim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Claim")
            .field("id", &self.id)
            .field("kind", &self.kind)
            .finish()
    }
}

const P: ClaimKind = ClaimKind::Proposition;
const MAX: usize = random::RANDOM_MAX;

macro_rules! claim {
    ($id:expr, $kind:expr, $statement:expr, $max:expr, $shape:expr, $gen:expr, $check:expr) => {
        Claim {
            id: $id,
            kind: $kind,
            statement: $statement,
            max_n: $max,
            shape: $shape,
            generate: $gen,
            check: $check,
        }
    };
}

pub static CLAIMS: &[Claim] = &[
    claim!("p.RC", P, "for every dominating Δ, φ_Δ is a closure operator", MAX, Shape::Operator, gen_dominating, check_rc),
    claim!("p.RC/extended", P, "for every extended dominating Δ, φ_Δ is a closure operator", MAX, Shape::Operator, gen_extended_dominating, check_rc_extended),
    claim!("p.CLO.REG", P, "for every dominating Δ and all Y, Y.φ_Δ.Δ = Y.Δ", MAX, Shape::Operator, gen_dominating, check_clo_reg),
    claim!("p.CLO.REG/extended", P, "for every extended dominating Δ and all Y, Y.φ_Δ.Δ = Y.Δ", MAX, Shape::Operator, gen_extended_dominating, check_clo_reg_extended),
    claim!("p.REG.GEN", P, "X.Δ = Y.Δ if and only if X.φ_Δ = Y.φ_Δ", MAX, Shape::Operator, gen_dominating, check_reg_gen),
    claim!("p.REG.GEN/extended", P, "for every extended dominating Δ, X.Δ = Y.Δ if and only if X.φ_Δ = Y.φ_Δ", MAX, Shape::Operator, gen_extended_dominating, check_reg_gen_extended),
    claim!("eq1-eq2-agreement", P, "the subset-union and neighbourhood forms of φ_Δ agree", MAX, Shape::Operator, gen_dominating, check_eq1_eq2),
    claim!("p.C.REG", P, "a dominating Δ is idempotent if and only if X ⊆ Y.Δ implies X.Δ ⊆ Y.Δ", MAX, Shape::Operator, gen_mixed_dominating, check_c_reg),
    claim!("p.TC", P, "for a closure φ, y ∈ X.φ implies {y}.φ ⊆ X.φ", MAX, Shape::Operator, gen_closure, check_tc),
    claim!("prop.CC3", P, "an expansive operator is a closure operator if and only if it is path independent", MAX, Shape::Operator, gen_expansive, check_cc3),
    claim!("p.FGEN1", P, "for an antimatroid closure, generators of a closed set are closed under intersection", MAX, Shape::Operator, gen_closure, check_fgen1),
    claim!("p.FGEN2", P, "a closure operator is antimatroid if and only if it is uniquely generated", MAX, Shape::Operator, gen_closure, check_fgen2),
    claim!("p.EX1", P, "for an extended α, z ∈ Y.α implies z ∈ {y}.α for some y ∈ Y", MAX, Shape::Operator, gen_extended, check_ex1),
    claim!("c.EX2", P, "every extended operator is monotone", MAX, Shape::Operator, gen_extended, check_ex2),
    claim!("c.EX3", P, "every extended operator maps ∅ to ∅", MAX, Shape::Operator, gen_extended, check_ex3),
    claim!("p.MONOTONE", P, "the composite of monotone maps is monotone", MAX, Shape::Chain, gen_monotone_chain, check_monotone),
    claim!("p.COP", P, "the composite of monotone α-continuous maps is α-continuous", MAX, Shape::Chain, gen_continuity_chain, check_cop),
    claim!("p.IC4", P, "a monotone f is Δ-continuous if and only if X.Δ = Y.Δ implies X.f.Δ′ = Y.f.Δ′", MAX, Shape::Link, gen_link, check_ic4),
    claim!("p.IC4/closure", P, "the same equivalence when Δ and Δ′ are closure operators", MAX, Shape::Link, gen_closure_link, check_ic4_closure),
    claim!("p.IC2", P, "a monotone, Δ-continuous, Δ-surjective f hits every Δ′-set from some Δ-set", MAX, Shape::Link, gen_link, check_ic2),
    claim!("p.IC2/closure", P, "the same statement when Δ and Δ′ are closure operators", MAX, Shape::Link, gen_closure_link, check_ic2_closure),
    claim!("p.COMP.SUR", P, "the composite of monotone, Δ-continuous, Δ-surjective maps is Δ-surjective", MAX, Shape::Chain, gen_continuity_chain, check_comp_sur),
    claim!("p.AP", P, "a monotone f is Δ-preserving if and only if Y.f.Δ′ ⊆ Y.Δ.f for all Y", MAX, Shape::Link, gen_link, check_ap),
    claim!("c.AP", P, "a monotone f is Δ-continuous and Δ-preserving if and only if Y.Δ.f = Y.f.Δ′", MAX, Shape::Link, gen_link, check_c_ap),
    claim!("p.GC1", P, "for monotone f, g: f·g expansive and g·f contractive if and only if X.f ⊆ Y′ ⇔ X ⊆ Y′.g", MAX, Shape::Pair, gen_monotone_pair, check_gc1),
    claim!("p.GC2", P, "in a Galois connection each map determines the other", ADJOINT_MAX, Shape::Pair, gen_galois, check_gc2),
    claim!("p.GC3", P, "in a Galois connection f·g·f = f and g·f·g = g", MAX, Shape::Pair, gen_galois, check_gc3),
    claim!("c.GC4", P, "in a Galois connection f·g is a closure operator", MAX, Shape::Pair, gen_galois, check_gc4),
    claim!("p.GC5", P, "composites of Galois connections are Galois connections", MAX, Shape::PairChain, gen_galois_chain, check_gc5),
    claim!("p.UGGC", P, "for a uniquely generated Δ, γ and Δ form a Galois connection", MAX, Shape::Operator, gen_mixed_dominating, check_uggc),
    claim!("p.ANTIMATROID", P, "a dominating Δ has the pullback property if and only if it is an antimatroid closure, if and only if it is uniquely generated", MAX, Shape::Operator, gen_mixed_dominating, check_antimatroid),
    claim!("ug-dominating-closure", ClaimKind::Conjecture, "every uniquely generated dominating operator is a closure operator", MAX, Shape::Operator, gen_mixed_dominating, check_ug_closure),
    claim!("matroid-pushout", ClaimKind::Conjecture, "a dominating Δ has union-closed generator families if and only if it is a matroid closure", MAX, Shape::Operator, gen_mixed_dominating, check_pushout),
];

pub fn find_claim(id: &str) -> Result<&'static Claim> {
    CLAIMS
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownClaim(id.to_string()))
}

// ---------------------------------------------------------------------------
// Instance access

fn stage(system: &SetSystem, i: usize) -> Result<&SetSystem> {
    system.stages().get(i).copied().ok_or_else(|| {
        Error::invalid("instance", format!("expected at least {} linked systems", i + 1))
    })
}

fn forward(system: &SetSystem, i: usize) -> Result<&Transformation> {
    stage(system, i)?
        .f
        .as_ref()
        .ok_or_else(|| Error::invalid("instance", format!("system {} has no forward map", i + 1)))
}

fn backward(system: &SetSystem, i: usize) -> Result<&Transformation> {
    stage(system, i)?
        .g
        .as_ref()
        .ok_or_else(|| Error::invalid("instance", format!("system {} has no backward map", i + 1)))
}

fn ops(system: &SetSystem) -> Vec<&Operator> {
    system.stages().into_iter().map(|s| &s.operator).collect()
}

fn all_hold(reports: &[PropertyReport]) -> bool {
    reports.iter().all(|r| r.holds)
}

// ---------------------------------------------------------------------------
// Generators

fn gen_dominating(rng: &mut ChaCha8Rng, n: usize) -> Result<SetSystem> {
    Ok(SetSystem::new(random::dominating_with(rng, n, DominatingOptions::default())?))
}

fn gen_extended_dominating(rng: &mut ChaCha8Rng, n: usize) -> Result<SetSystem> {
    let opts = DominatingOptions {
        max_overrides: 0,
        ..DominatingOptions::default()
    };
    Ok(SetSystem::new(random::dominating_with(rng, n, opts)?))
}

fn gen_mixed_dominating(rng: &mut ChaCha8Rng, n: usize) -> Result<SetSystem> {
    Ok(SetSystem::new(random::random_mixed_dominating(rng, n)?))
}

fn gen_closure(rng: &mut ChaCha8Rng, n: usize) -> Result<SetSystem> {
    Ok(SetSystem::new(random::random_mixed_closure(rng, n)?))
}

fn gen_expansive(rng: &mut ChaCha8Rng, n: usize) -> Result<SetSystem> {
    let op = match rng.random_range(0..3) {
        0 => random::random_expansive(rng, n)?,
        1 => random::random_mixed_closure(rng, n)?,
        _ => random::random_mixed_dominating(rng, n)?,
    };
    Ok(SetSystem::new(op))
}

fn gen_extended(rng: &mut ChaCha8Rng, n: usize) -> Result<SetSystem> {
    Ok(SetSystem::new(random::random_extended(rng, n)?))
}

fn smaller_ground(rng: &mut ChaCha8Rng, n: usize) -> Result<GroundSet> {
    random::random_ground(rng.random_range(1..=n))
}

fn random_operator(rng: &mut ChaCha8Rng, g: &GroundSet, closures: bool) -> Result<Operator> {
    if closures {
        random::random_mixed_closure(rng, g.len())
    } else {
        random::random_mixed_dominating(rng, g.len())
    }
}

/// An operator on `s` and a monotone `f: s → t` towards the given `alpha_t`,
/// built so that continuity, surjectivity and class-constancy all occur.
fn link_into(
    rng: &mut ChaCha8Rng,
    s: &GroundSet,
    t: &GroundSet,
    alpha_t: &Operator,
    closures: bool,
) -> Result<(Operator, Transformation)> {
    let shape = rng.random_range(0..4);
    if shape == 0 && t.len() <= s.len() {
        let (f, sigma) = random::random_surjection(rng, s, t)?;
        let pulled = random::pullback_operator(s, &sigma, alpha_t)?;
        let alpha = random::meet(&random_operator(rng, s, closures)?, &pulled)?;
        return Ok((alpha, f));
    }
    let alpha = random_operator(rng, s, closures)?;
    let k = random::random_monotone_map(rng, s, t)?;
    let f = match shape {
        1 => {
            let before = Transformation::from_operator(&random::iterate_to_fixpoint(&alpha)?)?;
            let after = Transformation::from_operator(&random::iterate_to_fixpoint(alpha_t)?)?;
            transforms::compose_maps(&transforms::compose_maps(&before, &k)?, &after)?
        }
        2 => transforms::compose_maps(&Transformation::from_operator(&alpha)?, &k)?,
        _ => k,
    };
    Ok((alpha, f))
}

fn gen_link_with(rng: &mut ChaCha8Rng, n: usize, closures: bool) -> Result<SetSystem> {
    let s = random::random_ground(n)?;
    let t = smaller_ground(rng, n)?;
    let alpha_t = random_operator(rng, &t, closures)?;
    let (alpha, f) = link_into(rng, &s, &t, &alpha_t, closures)?;
    SetSystem::new(alpha).link(SetSystem::new(alpha_t), Some(f), None)
}

fn gen_link(rng: &mut ChaCha8Rng, n: usize) -> Result<SetSystem> {
    gen_link_with(rng, n, false)
}

fn gen_closure_link(rng: &mut ChaCha8Rng, n: usize) -> Result<SetSystem> {
    gen_link_with(rng, n, true)
}

fn gen_continuity_chain(rng: &mut ChaCha8Rng, n: usize) -> Result<SetSystem> {
    let s = random::random_ground(n)?;
    let t = smaller_ground(rng, n)?;
    let u = smaller_ground(rng, t.len())?;
    let alpha_u = random_operator(rng, &u, false)?;
    let (alpha_t, g) = link_into(rng, &t, &u, &alpha_u, false)?;
    let (alpha, f) = link_into(rng, &s, &t, &alpha_t, false)?;
    let tail = SetSystem::new(alpha_t).link(SetSystem::new(alpha_u), Some(g), None)?;
    SetSystem::new(alpha).link(tail, Some(f), None)
}

fn gen_monotone_chain(rng: &mut ChaCha8Rng, n: usize) -> Result<SetSystem> {
    let s = random::random_ground(n)?;
    let t = smaller_ground(rng, n)?;
    let u = smaller_ground(rng, n)?;
    let f = random::random_monotone_map(rng, &s, &t)?;
    let g = random::random_monotone_map(rng, &t, &u)?;
    let tail = SetSystem::new(Operator::identity(&t)).link(
        SetSystem::new(Operator::identity(&u)),
        Some(g),
        None,
    )?;
    SetSystem::new(Operator::identity(&s)).link(tail, Some(f), None)
}

fn pair_system(f: Transformation, g: Transformation) -> Result<SetSystem> {
    let s = f.source().clone();
    let t = f.target().clone();
    SetSystem::new(Operator::identity(&s)).link(
        SetSystem::new(Operator::identity(&t)),
        Some(f),
        Some(g),
    )
}

fn gen_galois(rng: &mut ChaCha8Rng, n: usize) -> Result<SetSystem> {
    let s = random::random_ground(n)?;
    let t = smaller_ground(rng, n)?;
    let pair = random::random_mixed_galois(rng, &s, &t)?;
    pair_system(pair.f().clone(), pair.g().clone())
}

fn gen_monotone_pair(rng: &mut ChaCha8Rng, n: usize) -> Result<SetSystem> {
    if rng.random_bool(0.5) {
        return gen_galois(rng, n);
    }
    let s = random::random_ground(n)?;
    let t = smaller_ground(rng, n)?;
    let f = random::random_monotone_map(rng, &s, &t)?;
    let g = random::random_monotone_map(rng, &t, &s)?;
    pair_system(f, g)
}

fn gen_galois_chain(rng: &mut ChaCha8Rng, n: usize) -> Result<SetSystem> {
    let s = random::random_ground(n)?;
    let t = smaller_ground(rng, n)?;
    let u = smaller_ground(rng, n)?;
    let first = random::random_mixed_galois(rng, &s, &t)?;
    let second = random::random_mixed_galois(rng, &t, &u)?;
    let tail = SetSystem::new(Operator::identity(&t)).link(
        SetSystem::new(Operator::identity(&u)),
        Some(second.f().clone()),
        Some(second.g().clone()),
    )?;
    SetSystem::new(Operator::identity(&s)).link(
        tail,
        Some(first.f().clone()),
        Some(first.g().clone()),
    )
}

// ---------------------------------------------------------------------------
// Checkers on one operator

fn dominating(system: &SetSystem) -> Result<Option<&Operator>> {
    let d = &system.operator;
    Ok(properties::is_dominating(d)?.holds.then_some(d))
}

fn extended_dominating(system: &SetSystem) -> Result<Option<&Operator>> {
    match dominating(system)? {
        Some(d) if properties::is_extended(d)?.holds => Ok(Some(d)),
        _ => Ok(None),
    }
}

fn rc(d: &Operator) -> Result<Outcome> {
    let phi = closure::dominated_closure(d)?;
    Ok(Outcome::from_report(&properties::is_closure(&phi)?))
}

fn check_rc(system: &SetSystem) -> Result<Outcome> {
    dominating(system)?.map_or(Ok(Outcome::Vacuous), rc)
}

fn check_rc_extended(system: &SetSystem) -> Result<Outcome> {
    extended_dominating(system)?.map_or(Ok(Outcome::Vacuous), rc)
}

fn clo_reg(d: &Operator) -> Result<Outcome> {
    let g = d.ground();
    let phi = closure::dominated_closure(d)?;
    for y in g.powerset()? {
        let lhs = d.apply(phi.apply(y));
        if lhs != d.apply(y) {
            return Ok(Outcome::fails(
                format!("Y={}", g.render(y)),
                format!(
                    "Y.φ = {}, Y.φ.Δ = {}, Y.Δ = {}",
                    g.render(phi.apply(y)),
                    g.render(lhs),
                    g.render(d.apply(y))
                ),
            ));
        }
    }
    Ok(Outcome::Holds)
}

fn check_clo_reg(system: &SetSystem) -> Result<Outcome> {
    dominating(system)?.map_or(Ok(Outcome::Vacuous), clo_reg)
}

fn check_clo_reg_extended(system: &SetSystem) -> Result<Outcome> {
    extended_dominating(system)?.map_or(Ok(Outcome::Vacuous), clo_reg)
}

fn check_reg_gen(system: &SetSystem) -> Result<Outcome> {
    dominating(system)?.map_or(Ok(Outcome::Vacuous), reg_gen)
}

fn check_reg_gen_extended(system: &SetSystem) -> Result<Outcome> {
    extended_dominating(system)?.map_or(Ok(Outcome::Vacuous), reg_gen)
}

fn reg_gen(d: &Operator) -> Result<Outcome> {
    let g = d.ground();
    let phi = closure::dominated_closure(d)?;
    let mut by_delta: BTreeMap<Subset, Subset> = BTreeMap::new();
    let mut by_phi: BTreeMap<Subset, Subset> = BTreeMap::new();
    for y in g.powerset()? {
        let x = *by_delta.entry(d.apply(y)).or_insert(y);
        let w = *by_phi.entry(phi.apply(y)).or_insert(y);
        let pair = if phi.apply(x) != phi.apply(y) {
            Some(x)
        } else if d.apply(w) != d.apply(y) {
            Some(w)
        } else {
            None
        };
        if let Some(x) = pair {
            return Ok(Outcome::fails(
                format!("X={}, Y={}", g.render(x), g.render(y)),
                format!(
                    "X.Δ = {}, Y.Δ = {}, X.φ = {}, Y.φ = {}",
                    g.render(d.apply(x)),
                    g.render(d.apply(y)),
                    g.render(phi.apply(x)),
                    g.render(phi.apply(y))
                ),
            ));
        }
    }
    Ok(Outcome::Holds)
}

fn check_eq1_eq2(system: &SetSystem) -> Result<Outcome> {
    let Some(d) = dominating(system)? else {
        return Ok(Outcome::Vacuous);
    };
    let g = d.ground();
    let eq1 = closure::dominated_closure_with(d, ClosureMode::Subsets)?;
    let eq2 = closure::dominated_closure_with(d, ClosureMode::Neighborhood)?;
    Ok(match g.powerset()?.find(|&y| eq1.apply(y) != eq2.apply(y)) {
        Some(y) => Outcome::fails(
            format!("Y={}", g.render(y)),
            format!(
                "subset form {} ≠ neighbourhood form {}",
                g.render(eq1.apply(y)),
                g.render(eq2.apply(y))
            ),
        ),
        None => Outcome::Holds,
    })
}

fn check_c_reg(system: &SetSystem) -> Result<Outcome> {
    let Some(d) = dominating(system)? else {
        return Ok(Outcome::Vacuous);
    };
    let g = d.ground();
    let idempotent = properties::is_idempotent(d)?.holds;
    let mut violation = None;
    'scan: for y in g.powerset()? {
        let region = d.apply(y);
        for x in region.submasks() {
            if !d.apply(x).is_subset(region) {
                violation = Some((x, y));
                break 'scan;
            }
        }
    }
    if idempotent == violation.is_none() {
        return Ok(Outcome::Holds);
    }
    let witness = match violation {
        Some((x, y)) => format!("X={}, Y={}", g.render(x), g.render(y)),
        None => String::new(),
    };
    Ok(Outcome::fails(
        witness,
        format!("idempotent={idempotent}, region condition={}", violation.is_none()),
    ))
}

fn closure_op(system: &SetSystem) -> Result<Option<&Operator>> {
    let op = &system.operator;
    Ok(properties::is_closure(op)?.holds.then_some(op))
}

fn check_tc(system: &SetSystem) -> Result<Outcome> {
    let Some(phi) = closure_op(system)? else {
        return Ok(Outcome::Vacuous);
    };
    let g = phi.ground();
    for x in g.powerset()? {
        let img = phi.apply(x);
        if let Some(y) = img.iter().find(|&y| !phi.apply(Subset::singleton(y)).is_subset(img)) {
            return Ok(Outcome::fails(
                format!("X={}, y={}", g.render(x), g.label(y)),
                format!("{{y}}.φ = {}", g.render(phi.apply(Subset::singleton(y)))),
            ));
        }
    }
    Ok(Outcome::Holds)
}

fn check_cc3(system: &SetSystem) -> Result<Outcome> {
    let op = &system.operator;
    if !properties::is_expansive(op)?.holds {
        return Ok(Outcome::Vacuous);
    }
    let closed = properties::is_closure(op)?;
    let path = properties::is_path_independent(op)?;
    if closed.holds == path.holds {
        return Ok(Outcome::Holds);
    }
    let report = if closed.holds { &path } else { &closed };
    Ok(Outcome::fails(
        report.witness_text().unwrap_or_default(),
        format!("closure={}, path-independent={}", closed.holds, path.holds),
    ))
}

fn check_fgen1(system: &SetSystem) -> Result<Outcome> {
    let Some(phi) = closure_op(system)? else {
        return Ok(Outcome::Vacuous);
    };
    if !properties::is_antimatroid(phi)?.holds {
        return Ok(Outcome::Vacuous);
    }
    Ok(Outcome::from_report(&category::pullback_property(phi)?.to_report()))
}

fn check_fgen2(system: &SetSystem) -> Result<Outcome> {
    let Some(phi) = closure_op(system)? else {
        return Ok(Outcome::Vacuous);
    };
    let anti = properties::is_antimatroid(phi)?;
    let ug = properties::is_uniquely_generated(phi)?;
    if anti.holds == ug.holds {
        return Ok(Outcome::Holds);
    }
    let report = if anti.holds { &ug } else { &anti };
    Ok(Outcome::fails(
        report.witness_text().unwrap_or_default(),
        format!("antimatroid={}, uniquely-generated={}", anti.holds, ug.holds),
    ))
}

fn extended(system: &SetSystem) -> Result<Option<&Operator>> {
    let op = &system.operator;
    Ok(properties::is_extended(op)?.holds.then_some(op))
}

fn check_ex1(system: &SetSystem) -> Result<Outcome> {
    let Some(op) = extended(system)? else {
        return Ok(Outcome::Vacuous);
    };
    let g = op.ground();
    for y in g.powerset()? {
        let img = op.apply(y);
        let reached = y
            .iter()
            .fold(Subset::EMPTY, |acc, i| acc | op.apply(Subset::singleton(i)));
        if let Some(z) = (img - reached).iter().next() {
            return Ok(Outcome::fails(
                format!("Y={}, z={}", g.render(y), g.label(z)),
                "z is in Y.α but in no {y}.α",
            ));
        }
    }
    Ok(Outcome::Holds)
}

fn check_ex2(system: &SetSystem) -> Result<Outcome> {
    let Some(op) = extended(system)? else {
        return Ok(Outcome::Vacuous);
    };
    Ok(Outcome::from_report(&properties::is_monotone(op)?))
}

fn check_ex3(system: &SetSystem) -> Result<Outcome> {
    let Some(op) = extended(system)? else {
        return Ok(Outcome::Vacuous);
    };
    let img = op.apply(Subset::EMPTY);
    Ok(if img.is_empty() {
        Outcome::Holds
    } else {
        Outcome::fails("Y={}", format!("∅.α = {}", op.ground().render(img)))
    })
}

// ---------------------------------------------------------------------------
// Checkers on maps

fn check_monotone(system: &SetSystem) -> Result<Outcome> {
    let (f, g) = (forward(system, 0)?, forward(system, 1)?);
    if !(transforms::is_monotone_map(f)?.holds && transforms::is_monotone_map(g)?.holds) {
        return Ok(Outcome::Vacuous);
    }
    let fg = transforms::compose_maps(f, g)?;
    Ok(Outcome::from_report(&transforms::is_monotone_map(&fg)?))
}

fn check_cop(system: &SetSystem) -> Result<Outcome> {
    let a = ops(system);
    let (f, g) = (forward(system, 0)?, forward(system, 1)?);
    if a.len() < 3 {
        return Err(Error::invalid("instance", "expected three linked systems"));
    }
    let mut hyp = Vec::new();
    for op in &a[..3] {
        hyp.push(properties::is_monotone(op)?);
    }
    hyp.push(transforms::is_monotone_map(f)?);
    hyp.push(transforms::is_monotone_map(g)?);
    hyp.push(transforms::is_continuous(f, a[0], a[1])?);
    hyp.push(transforms::is_continuous(g, a[1], a[2])?);
    if !all_hold(&hyp) {
        return Ok(Outcome::Vacuous);
    }
    let fg = transforms::compose_maps(f, g)?;
    Ok(Outcome::from_report(&transforms::is_continuous(&fg, a[0], a[2])?))
}

struct Link<'a> {
    delta: &'a Operator,
    delta_t: &'a Operator,
    f: &'a Transformation,
}

/// `Δ`, `Δ′` dominating and `f` monotone, or `None`.
fn link(system: &SetSystem, closures: bool) -> Result<Option<Link<'_>>> {
    let a = ops(system);
    let f = forward(system, 0)?;
    if a.len() < 2 {
        return Err(Error::invalid("instance", "expected two linked systems"));
    }
    for op in &a[..2] {
        let r = if closures {
            properties::is_closure(op)?
        } else {
            properties::is_dominating(op)?
        };
        if !r.holds {
            return Ok(None);
        }
    }
    if !transforms::is_monotone_map(f)?.holds {
        return Ok(None);
    }
    Ok(Some(Link {
        delta: a[0],
        delta_t: a[1],
        f,
    }))
}

fn ic4(system: &SetSystem, closures: bool) -> Result<Outcome> {
    let Some(l) = link(system, closures)? else {
        return Ok(Outcome::Vacuous);
    };
    let cont = transforms::is_continuous(l.f, l.delta, l.delta_t)?;
    let transport = transforms::generator_transport(l.f, l.delta, l.delta_t)?;
    if cont.holds == transport.holds {
        return Ok(Outcome::Holds);
    }
    let report = if cont.holds { &transport } else { &cont };
    Ok(Outcome::fails(
        report.witness_text().unwrap_or_default(),
        format!(
            "continuous={}, generator-transport={}",
            cont.holds, transport.holds
        ),
    ))
}

fn check_ic4(system: &SetSystem) -> Result<Outcome> {
    ic4(system, false)
}

fn check_ic4_closure(system: &SetSystem) -> Result<Outcome> {
    ic4(system, true)
}

fn ic2(system: &SetSystem, closures: bool) -> Result<Outcome> {
    let Some(l) = link(system, closures)? else {
        return Ok(Outcome::Vacuous);
    };
    if !(transforms::is_continuous(l.f, l.delta, l.delta_t)?.holds
        && transforms::is_delta_surjective(l.f, l.delta_t)?.holds)
    {
        return Ok(Outcome::Vacuous);
    }
    let r = transforms::delta_set_preimages(l.f, l.delta, l.delta_t)?;
    Ok(Outcome::from_report(&r))
}

fn check_ic2(system: &SetSystem) -> Result<Outcome> {
    ic2(system, false)
}

fn check_ic2_closure(system: &SetSystem) -> Result<Outcome> {
    ic2(system, true)
}

fn check_comp_sur(system: &SetSystem) -> Result<Outcome> {
    let a = ops(system);
    let (f, g) = (forward(system, 0)?, forward(system, 1)?);
    if a.len() < 3 {
        return Err(Error::invalid("instance", "expected three linked systems"));
    }
    let mut hyp = Vec::new();
    for op in &a[..3] {
        hyp.push(properties::is_dominating(op)?);
    }
    hyp.push(transforms::is_monotone_map(f)?);
    hyp.push(transforms::is_monotone_map(g)?);
    hyp.push(transforms::is_continuous(f, a[0], a[1])?);
    hyp.push(transforms::is_continuous(g, a[1], a[2])?);
    hyp.push(transforms::is_delta_surjective(f, a[1])?);
    hyp.push(transforms::is_delta_surjective(g, a[2])?);
    if !all_hold(&hyp) {
        return Ok(Outcome::Vacuous);
    }
    let fg = transforms::compose_maps(f, g)?;
    Ok(Outcome::from_report(&transforms::is_delta_surjective(&fg, a[2])?))
}

fn check_ap(system: &SetSystem) -> Result<Outcome> {
    let Some(l) = link(system, false)? else {
        return Ok(Outcome::Vacuous);
    };
    let r = transforms::is_preserving(l.f, l.delta, l.delta_t)?;
    if r.agree() {
        return Ok(Outcome::Holds);
    }
    let report = if r.definitional.holds {
        &r.inclusion
    } else {
        &r.definitional
    };
    Ok(Outcome::fails(
        report.witness_text().unwrap_or_default(),
        format!(
            "preserving={}, inclusion Y.f.Δ′ ⊆ Y.Δ.f={}, Δ idempotent={}",
            r.definitional.holds, r.inclusion.holds, r.source_idempotent
        ),
    ))
}

fn check_c_ap(system: &SetSystem) -> Result<Outcome> {
    let Some(l) = link(system, false)? else {
        return Ok(Outcome::Vacuous);
    };
    let cont = transforms::is_continuous(l.f, l.delta, l.delta_t)?.holds;
    let pres = transforms::is_preserving(l.f, l.delta, l.delta_t)?
        .definitional
        .holds;
    let g = l.f.source();
    let commuting = g
        .powerset()?
        .find(|&y| l.f.apply(l.delta.apply(y)) != l.delta_t.apply(l.f.apply(y)));
    if (cont && pres) == commuting.is_none() {
        return Ok(Outcome::Holds);
    }
    Ok(Outcome::fails(
        commuting.map(|y| format!("Y={}", g.render(y))).unwrap_or_default(),
        format!(
            "continuous={cont}, preserving={pres}, Y.Δ.f = Y.f.Δ′ everywhere={}",
            commuting.is_none()
        ),
    ))
}

fn galois_pair(system: &SetSystem, i: usize) -> Result<Option<GaloisPair>> {
    let (f, g) = (forward(system, i)?, backward(system, i)?);
    if !transforms::is_galois(f, g)?.holds() {
        return Ok(None);
    }
    Ok(Some(GaloisPair::new(f.clone(), g.clone())?))
}

fn check_gc1(system: &SetSystem) -> Result<Outcome> {
    let (f, g) = (forward(system, 0)?, backward(system, 0)?);
    let r = transforms::is_galois(f, g)?;
    if !(r.monotone_f.holds && r.monotone_g.holds) {
        return Ok(Outcome::Vacuous);
    }
    let Some(adj) = &r.adjunction else {
        return Ok(Outcome::Vacuous);
    };
    let axioms = r.expansive.holds && r.contractive.holds;
    if axioms == adj.holds {
        return Ok(Outcome::Holds);
    }
    let report = if axioms { adj } else if r.expansive.holds { &r.contractive } else { &r.expansive };
    Ok(Outcome::fails(
        report.witness_text().unwrap_or_default(),
        format!("axioms={axioms}, adjunction={}", adj.holds),
    ))
}

fn check_gc2(system: &SetSystem) -> Result<Outcome> {
    let Some(pair) = galois_pair(system, 0)? else {
        return Ok(Outcome::Vacuous);
    };
    Ok(Outcome::from_report(&transforms::galois_unique_adjoint(pair.f(), pair.g())?))
}

fn check_gc3(system: &SetSystem) -> Result<Outcome> {
    let Some(pair) = galois_pair(system, 0)? else {
        return Ok(Outcome::Vacuous);
    };
    Ok(Outcome::from_report(&transforms::galois_identities(&pair)?))
}

fn check_gc4(system: &SetSystem) -> Result<Outcome> {
    let Some(pair) = galois_pair(system, 0)? else {
        return Ok(Outcome::Vacuous);
    };
    let phi = transforms::galois_closure(&pair)?;
    Ok(Outcome::from_report(&properties::is_closure(&phi)?))
}

fn check_gc5(system: &SetSystem) -> Result<Outcome> {
    let (Some(first), Some(second)) = (galois_pair(system, 0)?, galois_pair(system, 1)?) else {
        return Ok(Outcome::Vacuous);
    };
    let f = transforms::compose_maps(first.f(), second.f())?;
    let g = transforms::compose_maps(second.g(), first.g())?;
    Ok(Outcome::from_report(&transforms::is_galois(&f, &g)?.to_report()))
}

// ---------------------------------------------------------------------------
// Generator structure

fn uniquely_generated(system: &SetSystem) -> Result<Option<&Operator>> {
    match dominating(system)? {
        Some(d) if properties::is_uniquely_generated(d)?.holds => Ok(Some(d)),
        _ => Ok(None),
    }
}

fn check_uggc(system: &SetSystem) -> Result<Outcome> {
    let Some(d) = uniquely_generated(system)? else {
        return Ok(Outcome::Vacuous);
    };
    let gamma = transforms::gamma_map(d)?;
    let delta = Transformation::from_operator(d)?;
    Ok(Outcome::from_report(&transforms::is_galois(&gamma, &delta)?.to_report()))
}

fn check_antimatroid(system: &SetSystem) -> Result<Outcome> {
    let Some(d) = dominating(system)? else {
        return Ok(Outcome::Vacuous);
    };
    let eq = category::antimatroid_equivalence(d)?;
    if eq.triple_agrees() {
        return Ok(Outcome::Holds);
    }
    let report = eq.to_report(d.ground());
    Ok(Outcome::fails(
        String::new(),
        report.note.unwrap_or_default(),
    ))
}

fn check_ug_closure(system: &SetSystem) -> Result<Outcome> {
    let Some(d) = uniquely_generated(system)? else {
        return Ok(Outcome::Vacuous);
    };
    Ok(Outcome::from_report(&properties::is_closure(d)?))
}

fn check_pushout(system: &SetSystem) -> Result<Outcome> {
    let Some(d) = dominating(system)? else {
        return Ok(Outcome::Vacuous);
    };
    let g = d.ground();
    let mut joins: BTreeMap<Subset, Subset> = BTreeMap::new();
    for y in g.powerset()? {
        let j = joins.entry(d.apply(y)).or_insert(Subset::EMPTY);
        *j = *j | y;
    }
    let gap = joins.iter().find(|(z, j)| d.apply(**j) != **z).map(|(z, _)| *z);
    let matroid = properties::is_closure(d)?.holds && properties::is_matroid(d)?.holds;
    if gap.is_none() == matroid {
        return Ok(Outcome::Holds);
    }
    Ok(Outcome::fails(
        gap.map(|z| format!("Z={}", g.render(z))).unwrap_or_default(),
        format!("union-closed generators={}, matroid={matroid}", gap.is_none()),
    ))
}

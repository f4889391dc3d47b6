//! Seeded generators for operators, maps and Galois pairs.
//!
//! Every generator draws from a caller-supplied [`ChaCha8Rng`]. Search streams
//! key the generator by `(seed, candidate index)` through [`candidate_rng`], so
//! a candidate does not depend on which worker builds it.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::operators::Operator;
use crate::setcore::{GroundSet, Subset};
use crate::transforms::{GaloisPair, Transformation};

/// Largest ground set the generators accept.
pub const RANDOM_MAX: usize = 8;

/// The generator for candidate `index` of the stream keyed by `seed`.
pub fn candidate_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DominatingOptions {
    /// Allow `∅.Δ ≠ ∅`.
    pub empty_expands: bool,
    /// Upper bound on the number of non-singleton overrides.
    pub max_overrides: usize,
}

impl Default for DominatingOptions {
    fn default() -> Self {
        DominatingOptions {
            empty_expands: false,
            max_overrides: 3,
        }
    }
}

pub fn random_ground(n: usize) -> Result<GroundSet> {
    if n > RANDOM_MAX {
        return Err(Error::Capacity { n, max: RANDOM_MAX });
    }
    GroundSet::letters(n)
}

/// A dominating operator on `letters(n)` drawn from `seed`, with `∅ ↦ ∅`.
pub fn random_dominating(seed: u64, n: usize) -> Result<Operator> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    dominating_with(&mut rng, n, DominatingOptions::default())
}

/// Singletons get random supersets, the table is their union extension, and
/// each override `X ↦ X.Δ ∪ E` is pushed to every superset of `X`.
pub fn dominating_with(rng: &mut ChaCha8Rng, n: usize, opts: DominatingOptions) -> Result<Operator> {
    let g = random_ground(n)?;
    let p = density(rng);
    let singles: Vec<Subset> = (0..n)
        .map(|i| Subset::singleton(i) | sparse(rng, n, p))
        .collect();
    let mut t = union_table(n, &singles, Subset::EMPTY);
    if opts.empty_expands {
        let e = sparse(rng, n, p);
        t.iter_mut().for_each(|y| *y = *y | e);
    }
    if n >= 2 && opts.max_overrides > 0 {
        for _ in 0..rng.random_range(0..=opts.max_overrides) {
            let key = loop {
                let k = sparse(rng, n, 0.5);
                if k.len() >= 2 {
                    break k;
                }
            };
            let extra = sparse(rng, n, p);
            for (b, y) in t.iter_mut().enumerate() {
                if key.is_subset(Subset::from_bits(b as u32)) {
                    *y = *y | extra;
                }
            }
        }
    }
    Operator::table(&g, t)
}

/// `Y ↦` the intersection of the random generating sets containing `Y`.
pub fn random_closure(rng: &mut ChaCha8Rng, n: usize) -> Result<Operator> {
    let g = random_ground(n)?;
    let p = density(rng);
    let gens: Vec<Subset> = (0..rng.random_range(0..=2 * n))
        .map(|_| sparse(rng, n, p))
        .collect();
    Operator::from_fn(&g, |y| {
        gens.iter()
            .filter(|c| y.is_subset(**c))
            .fold(g.full(), |acc, &c| acc & c)
    })
}

/// The convex-hull operator whose closed sets are complements of unions of
/// prefixes of a few random orderings.
pub fn random_antimatroid(rng: &mut ChaCha8Rng, n: usize) -> Result<Operator> {
    let g = random_ground(n)?;
    let mut prefixes = Vec::new();
    for _ in 0..rng.random_range(1..=3) {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut acc = Subset::EMPTY;
        for i in order {
            acc = acc.with(i);
            prefixes.push(acc);
        }
    }
    Operator::from_fn(&g, |y| {
        prefixes
            .iter()
            .filter(|p| (**p & y).is_empty())
            .fold(g.full(), |acc, &p| acc & (g.full() - p))
    })
}

/// A union-extension operator with arbitrary singleton images.
pub fn random_extended(rng: &mut ChaCha8Rng, n: usize) -> Result<Operator> {
    let g = random_ground(n)?;
    let p = density(rng);
    let singles = (0..n).map(|_| sparse(rng, n, p)).collect();
    Operator::extended(&g, singles, BTreeMap::new(), Subset::EMPTY)
}

/// `Y ↦ Y ∪ R(Y)` with independent random `R(Y)`.
pub fn random_expansive(rng: &mut ChaCha8Rng, n: usize) -> Result<Operator> {
    let g = random_ground(n)?;
    let p = density(rng) / 2.0;
    let images = g.powerset()?.map(|y| y | sparse(rng, n, p)).collect();
    Operator::table(&g, images)
}

/// A dominating operator from one of several families, so that closures and
/// antimatroids appear often enough for implications to bite.
pub fn random_mixed_dominating(rng: &mut ChaCha8Rng, n: usize) -> Result<Operator> {
    match rng.random_range(0..10) {
        0..=4 => dominating_with(rng, n, DominatingOptions::default()),
        5 | 6 => random_closure(rng, n),
        7 | 8 => random_antimatroid(rng, n),
        _ => dominating_with(
            rng,
            n,
            DominatingOptions {
                max_overrides: 0,
                ..DominatingOptions::default()
            },
        ),
    }
}

/// A closure operator, either from a random Moore family or a convex geometry.
pub fn random_mixed_closure(rng: &mut ChaCha8Rng, n: usize) -> Result<Operator> {
    if rng.random_bool(0.5) {
        random_closure(rng, n)
    } else {
        random_antimatroid(rng, n)
    }
}

/// A monotone map: sparse random seeds `R(Y)` propagated upward by union.
pub fn random_monotone_map(
    rng: &mut ChaCha8Rng,
    source: &GroundSet,
    target: &GroundSet,
) -> Result<Transformation> {
    let (n, m) = (source.len(), target.len());
    let q = 1.0 / (n as f64 + 1.0);
    let p = density(rng);
    let size = source.size();
    let mut t = vec![Subset::EMPTY; size];
    for b in 0..size {
        let mut y = if rng.random_bool(q) {
            sparse(rng, m, p)
        } else {
            Subset::EMPTY
        };
        let mut rest = b;
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            y = y | t[b & !low];
            rest &= rest - 1;
        }
        t[b] = y;
    }
    Transformation::table(source, target, t)
}

/// A union-preserving `f` with its residual `Y′ ↦ {x : {x}.f ⊆ Y′}`.
pub fn random_galois(
    rng: &mut ChaCha8Rng,
    source: &GroundSet,
    target: &GroundSet,
) -> Result<GaloisPair> {
    let p = density(rng);
    let singles: Vec<Subset> = (0..source.len())
        .map(|_| sparse(rng, target.len(), p))
        .collect();
    let f = Transformation::table(
        source,
        target,
        union_table(source.len(), &singles, Subset::EMPTY),
    )?;
    let g = Transformation::from_fn(target, source, |y| {
        (0..singles.len())
            .filter(|&x| singles[x].is_subset(y))
            .fold(Subset::EMPTY, |acc, x| acc.with(x))
    })?;
    GaloisPair::new(f, g)
}

/// A Galois pair of one of three shapes: random residuated, inclusion and
/// restriction, or a composite of two random pairs through a middle system.
pub fn random_mixed_galois(
    rng: &mut ChaCha8Rng,
    source: &GroundSet,
    target: &GroundSet,
) -> Result<GaloisPair> {
    match rng.random_range(0..4) {
        0 if source.len() <= target.len() => GaloisPair::new(
            Transformation::inclusion(source, target)?,
            Transformation::restriction(target, source)?,
        ),
        1 => {
            let middle = random_ground(rng.random_range(1..=source.len().max(1)))?;
            let first = random_galois(rng, source, &middle)?;
            let second = random_galois(rng, &middle, target)?;
            crate::transforms::compose_galois(&first, &second)
        }
        _ => random_galois(rng, source, target),
    }
}

/// A map `2^S → 2^{S′}` induced by an onto function of elements; `|S′| ≤ |S|`.
pub fn random_surjection(
    rng: &mut ChaCha8Rng,
    source: &GroundSet,
    target: &GroundSet,
) -> Result<(Transformation, Vec<usize>)> {
    let (n, m) = (source.len(), target.len());
    if m > n || (m == 0 && n > 0) {
        return Err(Error::invalid(
            "surjection",
            format!("no onto map from {n} to {m} elements"),
        ));
    }
    let mut slots: Vec<usize> = (0..n).collect();
    slots.shuffle(rng);
    let mut sigma = vec![0; n];
    for (k, &i) in slots.iter().enumerate() {
        sigma[i] = if k < m { k } else { rng.random_range(0..m) };
    }
    let singles: Vec<Subset> = sigma.iter().map(|&j| Subset::singleton(j)).collect();
    let f = Transformation::table(source, target, union_table(n, &singles, Subset::EMPTY))?;
    Ok((f, sigma))
}

/// `Y ↦ (Y.σ.α′).σ⁻¹`.
pub fn pullback_operator(source: &GroundSet, sigma: &[usize], alpha_t: &Operator) -> Result<Operator> {
    Operator::from_fn(source, |y| {
        let image = y
            .iter()
            .fold(Subset::EMPTY, |acc, i| acc.with(sigma[i]));
        let region = alpha_t.apply(image);
        (0..sigma.len())
            .filter(|&i| region.contains(sigma[i]))
            .fold(Subset::EMPTY, |acc, i| acc.with(i))
    })
}

/// Pointwise intersection `Y ↦ Y.α ∩ Y.β`.
pub fn meet(alpha: &Operator, beta: &Operator) -> Result<Operator> {
    if alpha.ground() != beta.ground() {
        return Err(Error::GroundMismatch);
    }
    Operator::from_fn(alpha.ground(), |y| alpha.apply(y) & beta.apply(y))
}

/// `Y ↦` the least fixed point of `α` above `Y`, for expansive monotone `α`.
pub fn iterate_to_fixpoint(alpha: &Operator) -> Result<Operator> {
    Operator::from_fn(alpha.ground(), |y| {
        let mut cur = y;
        loop {
            let next = alpha.apply(cur);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    })
}

/// A random set over `n` elements, each present with probability `p`.
pub fn sparse(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Subset {
    (0..n)
        .filter(|_| rng.random_bool(p))
        .fold(Subset::EMPTY, |acc, i| acc.with(i))
}

fn density(rng: &mut ChaCha8Rng) -> f64 {
    [0.15, 0.3, 0.5][rng.random_range(0..3)]
}

/// The union extension of singleton images, indexed by subset bits.
pub(crate) fn union_table(n: usize, singles: &[Subset], empty: Subset) -> Vec<Subset> {
    let mut t = vec![empty; 1 << n];
    for b in 1..t.len() {
        let low = b.trailing_zeros() as usize;
        t[b] = t[b & (b - 1)] | singles[low];
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::properties;

    #[test]
    fn dominating_is_expansive_and_monotone() {
        for seed in 0..200 {
            for n in 1..=6 {
                let d = random_dominating(seed, n).unwrap();
                assert!(properties::is_dominating(&d).unwrap().holds, "seed {seed} n {n}");
            }
        }
    }

    #[test]
    fn singleton_ground_has_one_dominating_operator() {
        for seed in 0..50 {
            let d = random_dominating(seed, 1).unwrap();
            assert!(d.same_as(&Operator::identity(d.ground())).unwrap());
        }
    }

    #[test]
    fn replay_is_identical() {
        let a = random_dominating(42, 6).unwrap();
        let b = random_dominating(42, 6).unwrap();
        assert_eq!(a.images().unwrap(), b.images().unwrap());
        let mut r1 = candidate_rng(9, 3);
        let mut r2 = candidate_rng(9, 3);
        assert_eq!(r1.random::<u64>(), r2.random::<u64>());
        assert_ne!(candidate_rng(9, 3).random::<u64>(), candidate_rng(9, 4).random::<u64>());
    }

    #[test]
    fn closures_and_antimatroids() {
        let mut rng = candidate_rng(1, 0);
        for n in 1..=5 {
            for _ in 0..30 {
                let c = random_closure(&mut rng, n).unwrap();
                assert!(properties::is_closure(&c).unwrap().holds);
                let a = random_antimatroid(&mut rng, n).unwrap();
                assert!(properties::is_closure(&a).unwrap().holds);
                assert!(properties::is_antimatroid(&a).unwrap().holds);
            }
        }
    }

    #[test]
    fn maps_and_pairs() {
        let mut rng = candidate_rng(2, 0);
        for n in 1..=4 {
            let s = GroundSet::letters(n).unwrap();
            for m in 1..=n {
                let t = GroundSet::letters(m).unwrap();
                for _ in 0..20 {
                    let f = random_monotone_map(&mut rng, &s, &t).unwrap();
                    assert!(crate::transforms::is_monotone_map(&f).unwrap().holds);
                    random_mixed_galois(&mut rng, &s, &t).unwrap();
                    let (h, _) = random_surjection(&mut rng, &s, &t).unwrap();
                    let hit: std::collections::BTreeSet<Subset> = h.images().iter().copied().collect();
                    assert_eq!(hit.len(), t.size());
                }
            }
        }
    }

    #[test]
    fn fixpoint_iteration_closes() {
        let d = crate::instances::dstar();
        let c = iterate_to_fixpoint(&d).unwrap();
        assert!(properties::is_closure(&c).unwrap().holds);
        let g = d.ground().clone();
        assert_eq!(c.apply(g.parse_subset("a").unwrap()), g.parse_subset("a,c,d").unwrap());
    }
}

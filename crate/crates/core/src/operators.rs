//! Unary operators `2^S → 2^S`.
//!
//! An [`Operator`] pairs a ground set with an evaluation kernel built from an
//! [`OperatorSpec`]. For ground sets of at most [`MAX_TABLE`] elements the
//! full image table is materialised on first use and shared afterwards; larger
//! ground sets are evaluated lazily through the kernel.
//!
//! Construction validates only well-formedness. Whether an operator is
//! expansive, monotone or idempotent is decided by [`crate::properties`], so
//! broken operators remain representable.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::setcore::{GroundSet, Subset, SubsetFamily, MAX_TABLE};

/// Index-level description of an operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorSpec {
    /// One image per subset, indexed by the subset's bits.
    Table { images: Vec<Subset> },
    /// Union of singleton images, except on the override keys.
    Extended {
        singletons: Vec<Subset>,
        overrides: BTreeMap<Subset, Subset>,
        empty: Subset,
    },
    /// Pairs `(x, y)` read as `x ≤ y`; completed reflexively and transitively.
    PosetDownset { order: Vec<(usize, usize)> },
    Star {
        star: usize,
        empty_maps_to_star: bool,
    },
    /// An intersection-closed family containing `S`.
    Family { closed: SubsetFamily },
    /// Row `i` lists the elements dominated by `i`; the diagonal is implied.
    Adjacency { matrix: Vec<Vec<u8>> },
    /// Evaluate `first`, then `then`.
    Compose {
        first: Box<OperatorSpec>,
        then: Box<OperatorSpec>,
    },
    Identity,
}

impl OperatorSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            OperatorSpec::Table { .. } => "table",
            OperatorSpec::Extended { .. } => "extended",
            OperatorSpec::PosetDownset { .. } => "poset-downset",
            OperatorSpec::Star { .. } => "star",
            OperatorSpec::Family { .. } => "family",
            OperatorSpec::Adjacency { .. } => "adjacency",
            OperatorSpec::Compose { .. } => "compose",
            OperatorSpec::Identity => "identity",
        }
    }
}

/// How a dominated closure is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureMode {
    /// Union of every `Z ⊆ Y.Δ` with `Z.Δ ⊆ Y.Δ`. Exponential; kept as an oracle.
    Subsets,
    /// `Y` plus every neighbour `z` with `{z}.Δ ⊆ Y.Δ`.
    Neighborhood,
}

enum Kernel {
    Table(Box<[Subset]>),
    Extended {
        singles: Box<[Subset]>,
        overrides: HashMap<Subset, Subset>,
        empty: Subset,
    },
    Star {
        star: Subset,
        empty_maps_to_star: bool,
    },
    Family(Box<[Subset]>),
    Compose(Operator, Operator),
    Identity,
    DominatedClosure {
        delta: Operator,
        mode: ClosureMode,
    },
}

struct Inner {
    ground: GroundSet,
    spec: Option<OperatorSpec>,
    kernel: Kernel,
    table: OnceLock<Box<[Subset]>>,
}

/// An evaluable, memoised map on the subsets of a ground set.
#[derive(Clone)]
pub struct Operator(Arc<Inner>);

impl Operator {
    pub fn new(ground: &GroundSet, spec: OperatorSpec) -> Result<Self> {
        let kernel = build_kernel(ground, &spec)?;
        Ok(Operator::from_kernel(ground, Some(spec), kernel))
    }

    fn from_kernel(ground: &GroundSet, spec: Option<OperatorSpec>, kernel: Kernel) -> Self {
        Operator(Arc::new(Inner {
            ground: ground.clone(),
            spec,
            kernel,
            table: OnceLock::new(),
        }))
    }

    pub fn identity(ground: &GroundSet) -> Self {
        Operator::from_kernel(ground, Some(OperatorSpec::Identity), Kernel::Identity)
    }

    pub fn table(ground: &GroundSet, images: Vec<Subset>) -> Result<Self> {
        Operator::new(ground, OperatorSpec::Table { images })
    }

    /// Tabulates `f` over the power set.
    pub fn from_fn(ground: &GroundSet, f: impl Fn(Subset) -> Subset) -> Result<Self> {
        ground.check_table_capacity()?;
        let images = (0..ground.size() as u32).map(|b| f(Subset::from_bits(b))).collect();
        Operator::table(ground, images)
    }

    pub fn extended(
        ground: &GroundSet,
        singletons: Vec<Subset>,
        overrides: BTreeMap<Subset, Subset>,
        empty: Subset,
    ) -> Result<Self> {
        Operator::new(
            ground,
            OperatorSpec::Extended {
                singletons,
                overrides,
                empty,
            },
        )
    }

    /// `Y ↦` the least member of `closed` containing `Y`.
    pub fn from_family(ground: &GroundSet, closed: SubsetFamily) -> Result<Self> {
        Operator::new(ground, OperatorSpec::Family { closed })
    }

    /// `Y ↦ { x | x ≤ y ∈ Y }` for the order generated by `order`.
    pub fn downset(ground: &GroundSet, order: Vec<(usize, usize)>) -> Result<Self> {
        Operator::new(ground, OperatorSpec::PosetDownset { order })
    }

    pub fn star(ground: &GroundSet, star: usize, empty_maps_to_star: bool) -> Result<Self> {
        Operator::new(
            ground,
            OperatorSpec::Star {
                star,
                empty_maps_to_star,
            },
        )
    }

    pub fn from_adjacency(ground: &GroundSet, matrix: Vec<Vec<u8>>) -> Result<Self> {
        Operator::new(ground, OperatorSpec::Adjacency { matrix })
    }

    /// `Y ↦ Y.first.then`.
    pub fn compose(first: &Operator, then: &Operator) -> Result<Self> {
        if first.ground() != then.ground() {
            return Err(Error::GroundMismatch);
        }
        let spec = OperatorSpec::Compose {
            first: Box::new(first.spec()),
            then: Box::new(then.spec()),
        };
        Ok(Operator::from_kernel(
            first.ground(),
            Some(spec),
            Kernel::Compose(first.clone(), then.clone()),
        ))
    }

    /// Dominated closure kernel; callers validate `delta` first.
    pub(crate) fn dominated_closure_unchecked(delta: &Operator, mode: ClosureMode) -> Self {
        Operator::from_kernel(
            delta.ground(),
            None,
            Kernel::DominatedClosure {
                delta: delta.clone(),
                mode,
            },
        )
    }

    pub fn ground(&self) -> &GroundSet {
        &self.0.ground
    }

    pub fn n(&self) -> usize {
        self.0.ground.len()
    }

    /// The spec this operator was built from, or its table for derived operators.
    pub fn spec(&self) -> OperatorSpec {
        match &self.0.spec {
            Some(spec) => spec.clone(),
            None => OperatorSpec::Table {
                images: self
                    .images()
                    .expect("derived operators are built over tabulable ground sets")
                    .to_vec(),
            },
        }
    }

    pub fn kind(&self) -> &'static str {
        match (&self.0.spec, &self.0.kernel) {
            (Some(spec), _) => spec.kind(),
            (None, Kernel::DominatedClosure { .. }) => "dominated-closure",
            (None, _) => "table",
        }
    }

    /// `Y.α`, after checking that `Y` belongs to this ground set.
    pub fn eval(&self, y: Subset) -> Result<Subset> {
        self.0.ground.check(y)?;
        Ok(self.apply(y))
    }

    /// `Y.α` without the range check.
    pub fn apply(&self, y: Subset) -> Subset {
        debug_assert!(self.0.ground.check(y).is_ok());
        if self.n() <= MAX_TABLE {
            self.table_unchecked()[y.index()]
        } else {
            self.compute(y)
        }
    }

    /// The full image table, indexed by subset bits.
    pub fn images(&self) -> Result<&[Subset]> {
        self.0.ground.check_table_capacity()?;
        Ok(self.table_unchecked())
    }

    fn table_unchecked(&self) -> &[Subset] {
        self.0.table.get_or_init(|| {
            if let Kernel::Table(t) = &self.0.kernel {
                return t.clone();
            }
            (0..self.0.ground.size() as u32)
                .map(|b| self.compute(Subset::from_bits(b)))
                .collect()
        })
    }

    fn compute(&self, y: Subset) -> Subset {
        match &self.0.kernel {
            Kernel::Table(t) => t[y.index()],
            Kernel::Extended {
                singles,
                overrides,
                empty,
            } => {
                if y.is_empty() {
                    return *empty;
                }
                if let Some(&image) = overrides.get(&y) {
                    return image;
                }
                y.iter().fold(Subset::EMPTY, |acc, i| acc | singles[i])
            }
            Kernel::Star {
                star,
                empty_maps_to_star,
            } => {
                if y.is_empty() && !empty_maps_to_star {
                    Subset::EMPTY
                } else {
                    y | *star
                }
            }
            Kernel::Family(members) => members
                .iter()
                .filter(|c| y.is_subset(**c))
                .fold(self.0.ground.full(), |acc, &c| acc & c),
            Kernel::Compose(f, g) => g.apply(f.apply(y)),
            Kernel::Identity => y,
            Kernel::DominatedClosure { delta, mode } => match mode {
                ClosureMode::Neighborhood => neighborhood_closure(delta, y),
                ClosureMode::Subsets => subset_union_closure(delta, y),
            },
        }
    }

    /// The dominated neighbourhood `Y.η = Y.α − Y`.
    pub fn eta(&self, y: Subset) -> Result<Subset> {
        Ok(self.eval(y)? - y)
    }

    /// Whether experience `f` is congruent with knowledge `Y`: `{f}.η ⊆ Y.η`.
    pub fn congruent_experience(&self, f: usize, y: Subset) -> Result<bool> {
        if f >= self.n() {
            return Err(Error::invalid("element", format!("index {f} outside ground set")));
        }
        Ok(self.eta(Subset::singleton(f))?.is_subset(self.eta(y)?))
    }

    /// Pointwise equality over the whole power set.
    pub fn same_as(&self, other: &Operator) -> Result<bool> {
        if self.ground() != other.ground() {
            return Err(Error::GroundMismatch);
        }
        Ok(self.images()? == other.images()?)
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Operator")
            .field("kind", &self.kind())
            .field("ground", self.ground())
            .finish()
    }
}

fn neighborhood_closure(delta: &Operator, y: Subset) -> Subset {
    let region = delta.apply(y);
    (region - y)
        .iter()
        .filter(|&z| delta.apply(Subset::singleton(z)).is_subset(region))
        .fold(y, |acc, z| acc.with(z))
}

fn subset_union_closure(delta: &Operator, y: Subset) -> Subset {
    let region = delta.apply(y);
    region
        .submasks()
        .filter(|&z| delta.apply(z).is_subset(region))
        .fold(Subset::EMPTY, |acc, z| acc | z)
}

fn build_kernel(ground: &GroundSet, spec: &OperatorSpec) -> Result<Kernel> {
    let n = ground.len();
    let in_ground = |what: &str, y: Subset| -> Result<Subset> {
        ground
            .check(y)
            .map_err(|_| Error::invalid(what, format!("{y:?} is not a subset of the ground set")))
    };
    match spec {
        OperatorSpec::Table { images } => {
            ground.check_table_capacity()?;
            if images.len() != ground.size() {
                return Err(Error::invalid(
                    "table",
                    format!("expected {} images, found {}", ground.size(), images.len()),
                ));
            }
            for &image in images {
                in_ground("table image", image)?;
            }
            Ok(Kernel::Table(images.clone().into_boxed_slice()))
        }
        OperatorSpec::Extended {
            singletons,
            overrides,
            empty,
        } => {
            if singletons.len() != n {
                return Err(Error::invalid(
                    "extended operator",
                    format!("expected {n} singleton images, found {}", singletons.len()),
                ));
            }
            for &image in singletons {
                in_ground("singleton image", image)?;
            }
            in_ground("empty-set image", *empty)?;
            for (&key, &image) in overrides {
                in_ground("override key", key)?;
                in_ground("override image", image)?;
                if key.len() < 2 {
                    return Err(Error::invalid(
                        "override",
                        format!(
                            "key {} is not a set of two or more elements",
                            ground.render(key)
                        ),
                    ));
                }
            }
            Ok(Kernel::Extended {
                singles: singletons.clone().into_boxed_slice(),
                overrides: overrides.iter().map(|(&k, &v)| (k, v)).collect(),
                empty: *empty,
            })
        }
        OperatorSpec::PosetDownset { order } => {
            let below = downsets(ground, order)?;
            Ok(Kernel::Extended {
                singles: below.into_boxed_slice(),
                overrides: HashMap::new(),
                empty: Subset::EMPTY,
            })
        }
        OperatorSpec::Star { star, .. } if *star >= n => Err(Error::invalid(
            "star",
            format!("element index {star} outside ground set"),
        )),
        OperatorSpec::Star {
            star,
            empty_maps_to_star,
        } => Ok(Kernel::Star {
            star: Subset::singleton(*star),
            empty_maps_to_star: *empty_maps_to_star,
        }),
        OperatorSpec::Family { closed } => {
            for c in closed {
                in_ground("family member", c)?;
            }
            if !closed.contains(ground.full()) {
                return Err(Error::invalid(
                    "closed family",
                    format!("missing the ground set {}", ground.render(ground.full())),
                ));
            }
            if let Some((x, y)) = closed.intersection_gap() {
                return Err(Error::invalid(
                    "closed family",
                    format!(
                        "not intersection-closed: {} ∩ {} = {} is missing",
                        ground.render(x),
                        ground.render(y),
                        ground.render(x & y)
                    ),
                ));
            }
            Ok(Kernel::Family(closed.members().into()))
        }
        OperatorSpec::Adjacency { matrix } => {
            if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
                return Err(Error::invalid(
                    "adjacency matrix",
                    format!("expected a square matrix of side {n}"),
                ));
            }
            let singles = matrix
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|(_, &v)| v != 0)
                        .fold(Subset::singleton(i), |acc, (k, _)| acc.with(k))
                })
                .collect();
            Ok(Kernel::Extended {
                singles,
                overrides: HashMap::new(),
                empty: Subset::EMPTY,
            })
        }
        OperatorSpec::Compose { first, then } => Ok(Kernel::Compose(
            Operator::new(ground, (**first).clone())?,
            Operator::new(ground, (**then).clone())?,
        )),
        OperatorSpec::Identity => Ok(Kernel::Identity),
    }
}

/// `below[y] = { x | x ≤ y }` for the reflexive-transitive closure of `order`.
fn downsets(ground: &GroundSet, order: &[(usize, usize)]) -> Result<Vec<Subset>> {
    let n = ground.len();
    let mut below: Vec<Subset> = (0..n).map(Subset::singleton).collect();
    for &(x, y) in order {
        if x >= n || y >= n {
            return Err(Error::invalid("order", format!("pair ({x}, {y}) outside ground set")));
        }
        below[y] = below[y].with(x);
    }
    // Iterated composition of the relation with itself until it stops growing.
    loop {
        let next: Vec<Subset> = below
            .iter()
            .map(|b| b.iter().fold(*b, |acc, x| acc | below[x]))
            .collect();
        if next == below {
            break;
        }
        below = next;
    }
    for y in 0..n {
        for x in below[y].iter() {
            if x != y && below[x].contains(y) {
                return Err(Error::invalid(
                    "order",
                    format!("cycle {}", describe_cycle(ground, order, x, y)),
                ));
            }
        }
    }
    Ok(below)
}

fn describe_cycle(ground: &GroundSet, order: &[(usize, usize)], x: usize, y: usize) -> String {
    let path = |from: usize, to: usize| -> Vec<usize> {
        let mut parent = vec![usize::MAX; ground.len()];
        let mut queue = VecDeque::from([from]);
        parent[from] = from;
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &(a, b) in order {
                if a == u && parent[b] == usize::MAX {
                    parent[b] = u;
                    queue.push_back(b);
                }
            }
        }
        let mut out = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[cur];
            out.push(cur);
        }
        out.reverse();
        out
    };
    let mut cycle = path(x, y);
    cycle.extend(path(y, x).into_iter().skip(1));
    cycle
        .into_iter()
        .map(|i| ground.label(i))
        .collect::<Vec<_>>()
        .join(" ≤ ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    fn set(g: &GroundSet, s: &str) -> Subset {
        g.parse_subset(s).unwrap()
    }

    #[test]
    fn dstar_values() {
        let d = instances::dstar();
        let g = d.ground().clone();
        assert_eq!(d.eval(set(&g, "a")).unwrap(), set(&g, "a,c"));
        assert_eq!(d.eval(set(&g, "a,b")).unwrap(), set(&g, "a,b,c,d"));
        assert_eq!(d.eval(Subset::EMPTY).unwrap(), Subset::EMPTY);
        // naive label-set union of the singleton images
        let naive: std::collections::BTreeSet<&str> =
            ["a", "c"].into_iter().chain(["c", "d"]).collect();
        let expect = g.subset_from_labels(&naive.into_iter().collect::<Vec<_>>()).unwrap();
        assert_eq!(d.eval(set(&g, "a,c")).unwrap(), expect);
    }

    #[test]
    fn eval_rejects_foreign_bits() {
        let d = instances::dstar();
        assert!(matches!(
            d.eval(Subset::from_bits(1 << 4)),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn from_family_examples() {
        let g = GroundSet::letters(2).unwrap();
        let fam: SubsetFamily = ["", "a", "a,b"].iter().map(|s| set(&g, s)).collect();
        let phi = Operator::from_family(&g, fam).unwrap();
        assert_eq!(phi.eval(set(&g, "b")).unwrap(), set(&g, "a,b"));

        let indiscrete = Operator::from_family(&g, [g.full()].into_iter().collect()).unwrap();
        for y in g.powerset().unwrap() {
            assert_eq!(indiscrete.apply(y), g.full());
        }
        let discrete = Operator::from_family(&g, g.powerset().unwrap().collect()).unwrap();
        for y in g.powerset().unwrap() {
            assert_eq!(discrete.apply(y), y);
        }
    }

    #[test]
    fn from_family_validation() {
        let g = GroundSet::letters(3).unwrap();
        let no_top: SubsetFamily = ["", "a"].iter().map(|s| set(&g, s)).collect();
        assert!(Operator::from_family(&g, no_top).is_err());

        let gap: SubsetFamily = ["a,b", "b,c", "a,b,c"].iter().map(|s| set(&g, s)).collect();
        let err = Operator::from_family(&g, gap).unwrap_err().to_string();
        assert!(err.contains("{a,b} ∩ {b,c} = {b}"), "{err}");
    }

    #[test]
    fn downset_examples() {
        let chain = instances::chain_downset();
        let g = chain.ground().clone();
        assert_eq!(chain.eval(set(&g, "b")).unwrap(), set(&g, "a,b"));
        assert_eq!(chain.eval(set(&g, "b,c")).unwrap(), set(&g, "a,b,c"));

        let antichain = Operator::downset(&g, vec![]).unwrap();
        for y in g.powerset().unwrap() {
            assert_eq!(antichain.apply(y), y);
        }
    }

    #[test]
    fn downset_rejects_cycles() {
        let g = GroundSet::letters(3).unwrap();
        let err = Operator::downset(&g, vec![(0, 1), (1, 2), (2, 0)])
            .unwrap_err()
            .to_string();
        assert!(err.contains("cycle"), "{err}");
        assert!(err.contains("a ≤ b ≤ c ≤ a") || err.contains("b ≤ c ≤ a ≤ b"), "{err}");
    }

    #[test]
    fn downset_region_property() {
        // X ⊆ Y.Δ implies X.Δ ⊆ Y.Δ
        let g = GroundSet::letters(4).unwrap();
        let d = Operator::downset(&g, vec![(0, 2), (1, 2), (2, 3)]).unwrap();
        for x in g.powerset().unwrap() {
            for y in g.powerset().unwrap() {
                if x.is_subset(d.apply(y)) {
                    assert!(d.apply(x).is_subset(d.apply(y)));
                }
            }
        }
    }

    #[test]
    fn star_examples() {
        let g = GroundSet::new(["p", "q", "*"]).unwrap();
        let plain = Operator::star(&g, 2, false).unwrap();
        let flagged = Operator::star(&g, 2, true).unwrap();
        assert_eq!(plain.eval(set(&g, "p")).unwrap(), set(&g, "p,*"));
        assert_eq!(plain.eval(set(&g, "*")).unwrap(), set(&g, "*"));
        assert_eq!(plain.eval(Subset::EMPTY).unwrap(), Subset::EMPTY);
        assert_eq!(flagged.eval(Subset::EMPTY).unwrap(), set(&g, "*"));
    }

    #[test]
    fn adjacency_examples() {
        let g = GroundSet::letters(2).unwrap();
        let path = Operator::from_adjacency(&g, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(path.eval(set(&g, "a")).unwrap(), set(&g, "a,b"));
        let zero = Operator::from_adjacency(&g, vec![vec![0, 0], vec![0, 0]]).unwrap();
        for y in g.powerset().unwrap() {
            assert_eq!(zero.apply(y), y);
        }
        let directed = Operator::from_adjacency(&g, vec![vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(directed.eval(set(&g, "b")).unwrap(), set(&g, "b"));
        assert!(Operator::from_adjacency(&g, vec![vec![0, 1], vec![0]]).is_err());
    }

    #[test]
    fn eta_examples() {
        let d = instances::dstar();
        let g = d.ground().clone();
        assert_eq!(d.eta(set(&g, "a")).unwrap(), set(&g, "c"));
        assert_eq!(d.eta(set(&g, "d")).unwrap(), Subset::EMPTY);
        let id = Operator::identity(&g);
        for y in g.powerset().unwrap() {
            assert_eq!(id.eta(y).unwrap(), Subset::EMPTY);
        }
    }

    #[test]
    fn compose_examples() {
        let d = instances::dstar();
        let g = d.ground().clone();
        let dd = Operator::compose(&d, &d).unwrap();
        assert_eq!(dd.eval(set(&g, "a")).unwrap(), d.apply(set(&g, "a,c")));
        assert_eq!(dd.eval(set(&g, "a")).unwrap(), set(&g, "a,c,d"));
        let id = Operator::identity(&g);
        assert!(Operator::compose(&id, &d).unwrap().same_as(&d).unwrap());
        assert!(Operator::compose(&d, &id).unwrap().same_as(&d).unwrap());

        let other = Operator::identity(&GroundSet::letters(3).unwrap());
        assert!(matches!(Operator::compose(&d, &other), Err(Error::GroundMismatch)));
    }

    #[test]
    fn congruent_experience_examples() {
        let d = instances::dstar();
        let g = d.ground().clone();
        let (a, dd) = (g.index_of("a").unwrap(), g.index_of("d").unwrap());
        assert!(d.congruent_experience(dd, set(&g, "c")).unwrap());
        assert!(d.congruent_experience(dd, set(&g, "a,b")).unwrap());
        assert!(!d.congruent_experience(a, set(&g, "d")).unwrap());
    }

    #[test]
    fn extended_override_keys_must_be_non_singleton() {
        let g = GroundSet::letters(2).unwrap();
        let singles = vec![set(&g, "a"), set(&g, "b")];
        let bad: BTreeMap<_, _> = [(set(&g, "a"), set(&g, "a,b"))].into_iter().collect();
        assert!(Operator::extended(&g, singles, bad, Subset::EMPTY).is_err());
    }

    #[test]
    fn large_ground_sets_evaluate_lazily() {
        let g = GroundSet::letters(20).unwrap();
        let star = Operator::star(&g, 19, false).unwrap();
        assert!(star.images().is_err());
        let y = Subset::from_bits(0b101);
        assert_eq!(star.eval(y).unwrap(), y.with(19));
    }
}

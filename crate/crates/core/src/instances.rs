//! Small worked systems used throughout the tests, the guide and the
//! verification suite.

use std::collections::BTreeMap;

use crate::operators::Operator;
use crate::setcore::{GroundSet, Subset};
use crate::transforms::Transformation;

fn subset(g: &GroundSet, text: &str) -> Subset {
    g.parse_subset(text).expect("built-in labels")
}

/// Dominating but neither extended nor idempotent, over `{a,b,c,d}`:
/// `a ↦ ac`, `b ↦ bc`, `c ↦ cd`, `d ↦ d`, with the override `ab ↦ abcd`.
pub fn dstar() -> Operator {
    let g = GroundSet::letters(4).expect("four labels");
    let singles = ["a,c", "b,c", "c,d", "d"].map(|s| subset(&g, s)).to_vec();
    let overrides = BTreeMap::from([(subset(&g, "a,b"), g.full())]);
    Operator::extended(&g, singles, overrides, Subset::EMPTY).expect("well-formed")
}

/// Extended dominating operator on `{a,b,c}` with `a ↦ ab`, `b ↦ bc`, `c ↦ c`,
/// whose closure does not commute with it.
pub fn noncommuting() -> Operator {
    let g = GroundSet::letters(3).expect("three labels");
    let singles = ["a,b", "b,c", "c"].map(|s| subset(&g, s)).to_vec();
    Operator::extended(&g, singles, BTreeMap::new(), Subset::EMPTY).expect("well-formed")
}

/// `Y ↦ Y ∪ {*}` on `{p,q,*}`.
pub fn star_space(empty_maps_to_star: bool) -> Operator {
    let g = GroundSet::new(["p", "q", "*"]).expect("distinct labels");
    Operator::star(&g, 2, empty_maps_to_star).expect("star in ground")
}

/// Downset closure of the chain `a < b < c`.
pub fn chain_downset() -> Operator {
    let g = GroundSet::letters(3).expect("three labels");
    Operator::downset(&g, vec![(0, 1), (1, 2)]).expect("a chain is a partial order")
}

/// Two distinct extended maps `2^{x,y} → 2^{x}` with the same image of the
/// whole ground set: `f: x ↦ x, y ↦ ∅` and `g: x ↦ ∅, y ↦ x`.
pub fn terminal_pair() -> (Transformation, Transformation) {
    let s = GroundSet::new(["x", "y"]).expect("distinct labels");
    let t = GroundSet::new(["x"]).expect("one label");
    let x = Subset::singleton(0);
    let f = Transformation::extended(&s, &t, vec![x, Subset::EMPTY], Subset::EMPTY)
        .expect("well-formed");
    let g = Transformation::extended(&s, &t, vec![Subset::EMPTY, x], Subset::EMPTY)
        .expect("well-formed");
    (f, g)
}

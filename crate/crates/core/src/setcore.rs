//! Ground sets, bit-indexed subsets and subset families.
//!
//! A [`Subset`] is a plain membership word: bit `i` is set when the element
//! with index `i` of its [`GroundSet`] is a member. Set algebra is word
//! arithmetic, which keeps the exhaustive `2^n` sweeps elsewhere in the crate
//! cheap. Subsets do not carry a pointer to their ground set; the operators
//! and transformations that consume them do, and they reject words with bits
//! above `n`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Hard limit on the number of elements in a ground set.
pub const MAX_GROUND: usize = 24;

/// Limit for operations that materialise a table over the whole power set.
pub const MAX_TABLE: usize = 16;

/// A labelled finite universe.
///
/// Cloning is cheap; equality compares the label sequences.
#[derive(Clone)]
pub struct GroundSet {
    inner: Arc<GroundInner>,
}

struct GroundInner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_GROUND {
            return Err(Error::Capacity {
                n: labels.len(),
                max: MAX_GROUND,
            });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label.contains(',') {
                return Err(Error::invalid(
                    "ground set",
                    format!("label {label:?} must be non-empty and free of commas"),
                ));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(GroundSet {
            inner: Arc::new(GroundInner { labels, index }),
        })
    }

    /// Ground set `{a, b, c, ...}` with `n` single-letter labels (two letters past `z`).
    pub fn letters(n: usize) -> Result<Self> {
        GroundSet::new((0..n).map(letter_label))
    }

    pub fn len(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.inner.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.inner
            .index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// The whole universe `S`.
    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn size(&self) -> usize {
        1usize << self.len()
    }

    /// Checks that `y` only uses the low `n` bits.
    pub fn check(&self, y: Subset) -> Result<Subset> {
        if y.0 & !self.full().0 != 0 {
            return Err(Error::OutOfRange {
                bits: y.0,
                n: self.len(),
            });
        }
        Ok(y)
    }

    pub fn check_table_capacity(&self) -> Result<()> {
        if self.len() > MAX_TABLE {
            return Err(Error::Capacity {
                n: self.len(),
                max: MAX_TABLE,
            });
        }
        Ok(())
    }

    /// Parses a comma-separated list of labels. Surrounding braces are
    /// accepted so rendered subsets read back unchanged.
    pub fn parse_subset(&self, text: &str) -> Result<Subset> {
        let text = text.trim();
        let text = text
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .unwrap_or(text);
        let mut bits = 0u32;
        for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            bits |= 1 << self.index_of(name)?;
        }
        Ok(Subset(bits))
    }

    pub fn subset_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        let mut bits = 0u32;
        for name in labels {
            bits |= 1 << self.index_of(name.as_ref())?;
        }
        Ok(Subset(bits))
    }

    /// Renders `y` as sorted labels in braces, e.g. `{a,c,d}`.
    pub fn render(&self, y: Subset) -> String {
        let mut out = String::from("{");
        for (k, i) in y.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(self.label(i));
        }
        out.push('}');
        out
    }

    /// Comma-joined labels without braces; the key format of documents.
    pub fn key(&self, y: Subset) -> String {
        self.labels_of(y).join(",")
    }

    pub fn labels_of(&self, y: Subset) -> Vec<String> {
        y.iter().map(|i| self.label(i).to_string()).collect()
    }

    pub fn render_family(&self, family: &SubsetFamily) -> String {
        let parts: Vec<String> = family.iter().map(|y| self.render(y)).collect();
        format!("[{}]", parts.join(", "))
    }

    /// All `2^n` subsets in canonical order.
    pub fn powerset(&self) -> Result<Powerset> {
        self.check_table_capacity()?;
        Ok(Powerset::new(self.len()))
    }

    /// Every pair `(X, x)` with `x ∉ X`: the covering relations of `2^S`.
    pub fn covering_pairs(&self) -> Result<impl Iterator<Item = (Subset, usize)>> {
        let n = self.len();
        Ok(self
            .powerset()?
            .flat_map(move |x| (0..n).filter(move |&i| !x.contains(i)).map(move |i| (x, i))))
    }
}

impl PartialEq for GroundSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.labels == other.inner.labels
    }
}

impl Eq for GroundSet {}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("GroundSet").field(&self.inner.labels).finish()
    }
}

pub(crate) fn letter_label(i: usize) -> String {
    const ALPHA: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
    if i < 26 {
        (ALPHA[i] as char).to_string()
    } else {
        format!("{}{}", ALPHA[i / 26 - 1] as char, ALPHA[i % 26] as char)
    }
}

/// A member set of some ground set, stored as a membership word.
///
/// `Ord` is the canonical order used everywhere a family is emitted:
/// ascending cardinality, ties broken by ascending numeric value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 32);
        if n >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Subset) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1 << i))
    }

    /// Element indices in ascending order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// All subsets of `self`, including `∅` and `self`, in descending
    /// numeric order.
    pub fn submasks(self) -> Submasks {
        Submasks {
            mask: self.0,
            next: Some(self.0),
        }
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .count_ones()
            .cmp(&other.0.count_ones())
            .then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

impl Sub for Subset {
    type Output = Subset;
    fn sub(self, rhs: Subset) -> Subset {
        Subset(self.0 & !rhs.0)
    }
}

/// Complement within the full 32-bit word; mask with a ground set's `full()`.
impl Not for Subset {
    type Output = Subset;
    fn not(self) -> Subset {
        Subset(!self.0)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Elements {}

pub struct Submasks {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Submasks {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & self.mask)
        };
        Some(Subset(cur))
    }
}

/// Canonical-order enumeration of `2^S`: by cardinality, then numerically.
pub struct Powerset {
    n: u32,
    k: u32,
    cur: Option<u32>,
}

impl Powerset {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_GROUND, "powerset of {n} elements");
        Powerset {
            n: n as u32,
            k: 0,
            cur: Some(0),
        }
    }
}

impl Iterator for Powerset {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.cur?;
        let limit = 1u64 << self.n;
        // Gosper's hack: next word with the same popcount.
        let next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur as u64 + c as u64;
            let nxt = (((r as u32 ^ cur) >> 2) / c) | r as u32;
            (r < limit).then_some(nxt)
        };
        self.cur = match next {
            Some(w) => Some(w),
            None if self.k < self.n => {
                self.k += 1;
                Some((1u32 << self.k) - 1)
            }
            None => None,
        };
        Some(Subset(cur))
    }
}

/// A deduplicated family of subsets kept in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct SubsetFamily {
    members: Vec<Subset>,
}

impl SubsetFamily {
    pub fn new() -> Self {
        SubsetFamily::default()
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, y: Subset) -> bool {
        self.members.binary_search(&y).is_ok()
    }

    pub fn insert(&mut self, y: Subset) -> bool {
        match self.members.binary_search(&y) {
            Ok(_) => false,
            Err(pos) => {
                self.members.insert(pos, y);
                true
            }
        }
    }

    /// First pair (canonical order) whose intersection is missing.
    pub fn intersection_gap(&self) -> Option<(Subset, Subset)> {
        for (i, &x) in self.members.iter().enumerate() {
            for &y in &self.members[i + 1..] {
                if !self.contains(x & y) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Members that contain no other member.
    pub fn minimal_members(&self) -> SubsetFamily {
        self.iter()
            .filter(|&x| !self.iter().any(|w| w.is_proper_subset(x)))
            .collect()
    }
}

impl FromIterator<Subset> for SubsetFamily {
    fn from_iter<I: IntoIterator<Item = Subset>>(iter: I) -> Self {
        let mut members: Vec<Subset> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        SubsetFamily { members }
    }
}

impl<'a> IntoIterator for &'a SubsetFamily {
    type Item = Subset;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Subset>>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abcd() -> GroundSet {
        GroundSet::new(["a", "b", "c", "d"]).unwrap()
    }

    #[test]
    fn parse_subset_examples() {
        let s = abcd();
        assert_eq!(s.render(s.parse_subset("a,c").unwrap()), "{a,c}");
        assert_eq!(s.parse_subset("").unwrap(), Subset::EMPTY);
        assert_eq!(s.parse_subset("a,a").unwrap(), s.parse_subset("a").unwrap());
        assert_eq!(s.parse_subset("{b, d}").unwrap(), s.parse_subset("d,b").unwrap());
        match s.parse_subset("a,e") {
            Err(Error::UnknownLabel(l)) => assert_eq!(l, "e"),
            other => panic!("expected unknown label, got {other:?}"),
        }
    }

    #[test]
    fn ground_set_rejects_duplicates_and_oversize() {
        assert!(matches!(
            GroundSet::new(["a", "b", "a"]),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(
            GroundSet::letters(MAX_GROUND + 1),
            Err(Error::Capacity { .. })
        ));
        assert!(GroundSet::letters(MAX_GROUND).is_ok());
    }

    #[test]
    fn powerset_small_cases() {
        let empty = GroundSet::letters(0).unwrap();
        assert_eq!(empty.powerset().unwrap().collect::<Vec<_>>(), vec![Subset::EMPTY]);

        let ab = GroundSet::letters(2).unwrap();
        let rendered: Vec<String> = ab.powerset().unwrap().map(|y| ab.render(y)).collect();
        assert_eq!(rendered, ["{}", "{a}", "{b}", "{a,b}"]);
    }

    #[test]
    fn powerset_is_canonical_and_complete() {
        for n in 0..=10 {
            let all: Vec<Subset> = Powerset::new(n).collect();
            assert_eq!(all.len(), 1 << n);
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn powerset_capacity() {
        let big = GroundSet::letters(MAX_TABLE + 1).unwrap();
        assert!(matches!(big.powerset(), Err(Error::Capacity { .. })));
    }

    #[test]
    fn covering_pair_counts() {
        let one = GroundSet::letters(1).unwrap();
        assert_eq!(
            one.covering_pairs().unwrap().collect::<Vec<_>>(),
            vec![(Subset::EMPTY, 0)]
        );
        for n in 0..=6 {
            let s = GroundSet::letters(n).unwrap();
            let mut naive = 0;
            for x in 0..1u32 << n {
                for i in 0..n {
                    if x >> i & 1 == 0 {
                        naive += 1;
                    }
                }
            }
            assert_eq!(s.covering_pairs().unwrap().count(), naive);
        }
    }

    #[test]
    fn submasks_enumerates_all() {
        let y = Subset::from_bits(0b1011);
        let mut subs: Vec<u32> = y.submasks().map(Subset::bits).collect();
        subs.sort();
        assert_eq!(subs, vec![0, 1, 2, 3, 8, 9, 10, 11]);
    }

    #[test]
    fn family_is_canonical_and_deduplicated() {
        let f: SubsetFamily = [0b11, 0b1, 0b0, 0b11, 0b100, 0b10]
            .into_iter()
            .map(Subset::from_bits)
            .collect();
        let bits: Vec<u32> = f.iter().map(Subset::bits).collect();
        assert_eq!(bits, vec![0, 1, 2, 4, 3]);
        assert_eq!(
            f.intersection_gap(),
            None,
            "contains all pairwise intersections"
        );
    }

    #[test]
    fn letters_past_z() {
        assert_eq!(letter_label(25), "z");
        assert_eq!(letter_label(26), "aa");
    }
}

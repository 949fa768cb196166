//! Set families over a ground set `[n] = {1, …, n}`.
//!
//! Subsets are stored as machine-word bitmasks (bit `i-1` encodes membership
//! of element `i`), which caps the ground set at [`MAX_GROUND`] elements.
//! A [`Family`] keeps its member sets deduplicated and sorted in canonical
//! order (cardinality first, then numeric mask value), so equal families
//! compare equal structurally and all emitted artifacts are reproducible
//! byte for byte.

use std::fmt;

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::poset::Poset;

/// Largest supported ground set; subsets must fit in one `u32` mask.
pub const MAX_GROUND: u32 = 30;

/// A subset of `[n]`, encoded as a bitmask with bit `i-1` for element `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubsetMask(u32);

impl SubsetMask {
    /// The empty set.
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// Wraps raw bits. The caller is responsible for keeping bits within the
    /// ground set; [`Family::new`] re-validates.
    pub fn new(bits: u32) -> SubsetMask {
        SubsetMask(bits)
    }

    /// The full ground set `[n]`.
    pub fn full(n: u32) -> SubsetMask {
        debug_assert!(n <= MAX_GROUND);
        SubsetMask(((1u64 << n) - 1) as u32)
    }

    /// Builds a mask from 1-based elements, validating the range.
    pub fn from_elements<I>(n: u32, elements: I) -> Result<SubsetMask, Error>
    where
        I: IntoIterator<Item = u32>,
    {
        let mut bits = 0u32;
        for e in elements {
            if e < 1 || e > n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            bits |= 1 << (e - 1);
        }
        Ok(SubsetMask(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Cardinality.
    pub fn size(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Membership of the 1-based element `e`.
    pub fn contains(self, e: u32) -> bool {
        e >= 1 && e <= 32 && (self.0 >> (e - 1)) & 1 == 1
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset_of(self, other: SubsetMask) -> bool {
        self != other && self.is_subset_of(other)
    }

    /// True iff the two sets are equal or nested either way.
    pub fn comparable(self, other: SubsetMask) -> bool {
        self.is_subset_of(other) || other.is_subset_of(self)
    }

    /// Complement within `[n]`.
    pub fn complement(self, n: u32) -> SubsetMask {
        SubsetMask(!self.0 & SubsetMask::full(n).0)
    }

    /// True iff exactly one of `x`, `y` lies in the set.
    pub fn separates(self, x: u32, y: u32) -> bool {
        self.contains(x) != self.contains(y)
    }

    /// 1-based elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() + 1;
                bits &= bits - 1;
                Some(e)
            }
        })
    }

    /// Canonical sort key: cardinality first, then numeric mask value.
    pub fn canonical_key(self) -> u64 {
        ((self.size() as u64) << 32) | self.0 as u64
    }
}

/// Total order used for canonical emission: by cardinality, then by numeric
/// mask value. This is unrelated to the containment order on subsets.
impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.canonical_key().cmp(&other.canonical_key())
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// A family of distinct subsets of `[n]`, sorted canonically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    n: u32,
    sets: Vec<SubsetMask>,
}

impl Family {
    /// Validates the ground set size and every mask, then sorts and
    /// deduplicates. Duplicate sets collapse silently.
    pub fn new(n: u32, mut sets: Vec<SubsetMask>) -> Result<Family, Error> {
        if n < 1 || n > MAX_GROUND {
            return Err(Error::GroundSetOutOfRange { n });
        }
        let full = SubsetMask::full(n);
        for &s in &sets {
            if !s.is_subset_of(full) {
                let e = (s.bits() & !full.bits()).trailing_zeros() + 1;
                return Err(Error::ElementOutOfRange { element: e, n });
            }
        }
        sets.sort();
        sets.dedup();
        Ok(Family { n, sets })
    }

    /// The empty family over `[n]`.
    pub fn empty(n: u32) -> Family {
        Family::new(n, Vec::new()).expect("empty family")
    }

    /// All `2^n` subsets of `[n]`.
    pub fn full_lattice(n: u32) -> Family {
        let sets = (0..(1u64 << n)).map(|b| SubsetMask::new(b as u32)).collect();
        Family::new(n, sets).expect("full lattice")
    }

    /// Builds a family from explicit element lists (1-based, any order).
    pub fn from_sets(n: u32, sets: &[Vec<u32>]) -> Result<Family, Error> {
        if n < 1 || n > MAX_GROUND {
            return Err(Error::GroundSetOutOfRange { n });
        }
        let masks = sets
            .iter()
            .map(|s| SubsetMask::from_elements(n, s.iter().copied()))
            .collect::<Result<Vec<_>, _>>()?;
        Family::new(n, masks)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Member sets in canonical order.
    pub fn sets(&self) -> &[SubsetMask] {
        &self.sets
    }

    pub fn contains(&self, s: SubsetMask) -> bool {
        self.sets.binary_search(&s).is_ok()
    }

    /// A copy of the family with one more set (no-op if already present).
    pub fn with_added(&self, s: SubsetMask) -> Result<Family, Error> {
        let mut sets = self.sets.clone();
        sets.push(s);
        Family::new(self.n, sets)
    }

    /// The family of complements `{[n] \ S : S in F}`; an anti-automorphism
    /// of the containment order.
    pub fn complement_family(&self) -> Family {
        let sets = self.sets.iter().map(|s| s.complement(self.n)).collect();
        Family::new(self.n, sets).expect("complement family")
    }

    /// The containment order restricted to the member sets, labeled by the
    /// canonical set notation. Fails for families larger than the poset cap.
    pub fn induced_poset(&self) -> Result<Poset, Error> {
        let m = self.sets.len();
        let mut covers = Vec::new();
        // Pairs (i, j) with sets[i] properly below sets[j] and nothing between.
        for i in 0..m {
            for j in 0..m {
                if !self.sets[i].is_proper_subset_of(self.sets[j]) {
                    continue;
                }
                let between = (0..m).any(|z| {
                    z != i
                        && z != j
                        && self.sets[i].is_proper_subset_of(self.sets[z])
                        && self.sets[z].is_proper_subset_of(self.sets[j])
                });
                if !between {
                    covers.push((i, j));
                }
            }
        }
        let p = crate::poset::poset_from_covers(m, &covers)?;
        p.with_labels(self.sets.iter().map(|s| format!("{s:?}")).collect())
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family(n={}, {:?})", self.n, self.sets)
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let sets: Vec<Vec<u32>> = self.sets.iter().map(|s| s.elements().collect()).collect();
        let mut st = serializer.serialize_struct("Family", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("sets", &sets)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct FamilyRaw {
    n: u32,
    #[serde(default)]
    sets: Option<Vec<Vec<u32>>>,
    #[serde(default)]
    masks: Option<Vec<String>>,
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Family, D::Error> {
        let raw = FamilyRaw::deserialize(deserializer)?;
        match (raw.sets, raw.masks) {
            (Some(sets), None) => {
                for s in &sets {
                    if !s.windows(2).all(|w| w[0] < w[1]) {
                        return Err(D::Error::custom(
                            "each set must list its elements strictly increasing",
                        ));
                    }
                }
                Family::from_sets(raw.n, &sets).map_err(D::Error::custom)
            }
            (None, Some(masks)) => {
                let parsed = masks
                    .iter()
                    .map(|h| {
                        let digits = h
                            .strip_prefix("0x")
                            .or_else(|| h.strip_prefix("0X"))
                            .ok_or_else(|| D::Error::custom(format!("mask `{h}` lacks 0x prefix")))?;
                        u32::from_str_radix(digits, 16)
                            .map(SubsetMask::new)
                            .map_err(|e| D::Error::custom(format!("mask `{h}`: {e}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Family::new(raw.n, parsed).map_err(D::Error::custom)
            }
            _ => Err(D::Error::custom(
                "family must have exactly one of `sets` or `masks`",
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_sorts_by_size_then_value() {
        let f = Family::from_sets(3, &[vec![1, 2, 3], vec![2], vec![], vec![1, 3], vec![1]])
            .unwrap();
        let got: Vec<u32> = f.sets().iter().map(|s| s.bits()).collect();
        assert_eq!(got, vec![0b000, 0b001, 0b010, 0b101, 0b111]);
    }

    #[test]
    fn duplicates_collapse() {
        let f = Family::from_sets(3, &[vec![1, 2], vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn out_of_range_elements_rejected() {
        assert!(matches!(
            Family::from_sets(3, &[vec![4]]),
            Err(Error::ElementOutOfRange { element: 4, n: 3 })
        ));
        assert!(matches!(
            Family::from_sets(0, &[]),
            Err(Error::GroundSetOutOfRange { n: 0 })
        ));
        assert!(matches!(
            Family::from_sets(31, &[]),
            Err(Error::GroundSetOutOfRange { n: 31 })
        ));
    }

    #[test]
    fn complement_family_is_an_involution() {
        let f = Family::from_sets(4, &[vec![], vec![1], vec![2, 3], vec![1, 2, 3, 4]]).unwrap();
        assert_eq!(f.complement_family().complement_family(), f);
        assert!(f.complement_family().contains(SubsetMask::full(4)));
    }

    #[test]
    fn separates_is_symmetric_difference_membership() {
        let s = SubsetMask::from_elements(4, [1, 3]).unwrap();
        assert!(s.separates(1, 2));
        assert!(s.separates(2, 3));
        assert!(!s.separates(1, 3));
        assert!(!s.separates(2, 4));
    }

    #[test]
    fn induced_poset_of_small_family_is_the_containment_order() {
        // {∅, {1}, {2}} under containment: one minimum below two tops.
        let f = Family::from_sets(2, &[vec![], vec![1], vec![2]]).unwrap();
        let p = f.induced_poset().unwrap();
        let v = crate::poset::named_poset("V", Some(2)).unwrap();
        assert!(p.is_isomorphic(&v).unwrap().is_some());
    }
}

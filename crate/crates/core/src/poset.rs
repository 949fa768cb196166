//! Finite posets: validated order relations, Hasse covers, duals,
//! isomorphism testing, and the catalog of named target posets.
//!
//! Elements are indices `0 .. m`; the relation is stored as reflexive
//! up-set bitmasks, so `m` is capped at [`MAX_POSET`]. Constructors validate
//! eagerly: covers must be acyclic and every stored relation is a genuine
//! partial order. Catalog posets list minimal elements first (then in
//! left-to-right display order), and carry human-readable labels.

use std::fmt;

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Largest supported number of poset elements (one `u64` up-set row each).
pub const MAX_POSET: usize = 64;

/// Elements with isomorphism testing are capped much lower; the test
/// enumerates labeled embeddings.
pub const MAX_ISO: usize = 10;

/// Hasse diagram as `(lower, upper)` pairs, sorted; always a transitive
/// reduction when produced by [`Poset::covers`].
pub type CoverList = Vec<(usize, usize)>;

/// A finite poset on elements `0 .. m`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    m: usize,
    /// `up[i]` bit `j` set iff `i <= j`; reflexive, antisymmetric, transitive.
    up: Vec<u64>,
    labels: Vec<String>,
}

impl Poset {
    fn from_up(up: Vec<u64>, labels: Vec<String>) -> Poset {
        let m = up.len();
        debug_assert_eq!(labels.len(), m);
        let p = Poset { m, up, labels };
        debug_assert!(p.relation_is_partial_order().is_ok());
        p
    }

    fn relation_is_partial_order(&self) -> Result<(), Error> {
        let m = self.m;
        for i in 0..m {
            if self.up[i] >> m != 0 {
                return Err(Error::NotAPartialOrder(format!(
                    "row {i} references elements beyond {m}"
                )));
            }
            if !self.leq(i, i) {
                return Err(Error::NotAPartialOrder(format!("not reflexive at {i}")));
            }
            for j in 0..m {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Err(Error::NotAPartialOrder(format!(
                        "antisymmetry fails on ({i}, {j})"
                    )));
                }
                if self.leq(i, j) && self.up[j] & !self.up[i] != 0 {
                    return Err(Error::NotAPartialOrder(format!(
                        "transitivity fails above ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        (self.up[i] >> j) & 1 == 1
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn incomparable(&self, i: usize, j: usize) -> bool {
        !self.leq(i, j) && !self.leq(j, i)
    }

    /// Reflexive up-set of `i` as a bitmask.
    pub fn up_mask(&self, i: usize) -> u64 {
        self.up[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Replaces the labels, which must be distinct and match the size.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Poset, Error> {
        if labels.len() != self.m {
            return Err(Error::LabelCountMismatch {
                expected: self.m,
                got: labels.len(),
            });
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(Error::NotAPartialOrder(format!("duplicate label `{a}`")));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    /// The transitive reduction: pairs `(i, j)` with `i < j` and no element
    /// strictly between.
    pub fn covers(&self) -> CoverList {
        let mut out = Vec::new();
        for i in 0..self.m {
            for j in 0..self.m {
                if !self.lt(i, j) {
                    continue;
                }
                let between = (0..self.m).any(|z| z != i && z != j && self.lt(i, z) && self.lt(z, j));
                if !between {
                    out.push((i, j));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The order-reversed poset on the same elements and labels.
    pub fn dual(&self) -> Poset {
        let mut up = vec![0u64; self.m];
        for i in 0..self.m {
            for j in 0..self.m {
                if self.leq(j, i) {
                    up[i] |= 1 << j;
                }
            }
        }
        Poset::from_up(up, self.labels.clone())
    }

    /// True iff the relations agree (labels ignored).
    pub fn same_order(&self, other: &Poset) -> bool {
        self.m == other.m && self.up == other.up
    }

    /// A deterministic linear extension: repeatedly take the smallest-index
    /// element whose strict down-set is exhausted.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut taken = 0u64;
        let mut out = Vec::with_capacity(self.m);
        while out.len() < self.m {
            let next = (0..self.m)
                .find(|&i| (taken >> i) & 1 == 0 && (0..self.m).all(|j| !self.lt(j, i) || (taken >> j) & 1 == 1))
                .expect("acyclic relation always has a minimal element");
            taken |= 1 << next;
            out.push(next);
        }
        out
    }

    /// Searches for an order isomorphism onto `other`; returns the image of
    /// each element when one exists. Capped at [`MAX_ISO`] elements.
    pub fn is_isomorphic(&self, other: &Poset) -> Result<Option<Vec<usize>>, Error> {
        if self.m > MAX_ISO || other.m > MAX_ISO {
            return Err(Error::InstanceTooLarge {
                what: "poset isomorphism test",
                limit: MAX_ISO,
                actual: self.m.max(other.m),
            });
        }
        if self.m != other.m {
            return Ok(None);
        }
        let m = self.m;
        // Degree invariant: (strict up-set size, strict down-set size).
        let inv = |p: &Poset, i: usize| -> (u32, u32) {
            let ups = (p.up[i].count_ones() - 1) as u32;
            let downs = (0..p.m).filter(|&j| p.lt(j, i)).count() as u32;
            (ups, downs)
        };
        let self_inv: Vec<_> = (0..m).map(|i| inv(self, i)).collect();
        let other_inv: Vec<_> = (0..m).map(|i| inv(other, i)).collect();
        let mut map = vec![usize::MAX; m];
        let mut used = vec![false; m];
        fn go(
            d: usize,
            a: &Poset,
            b: &Poset,
            ai: &[(u32, u32)],
            bi: &[(u32, u32)],
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if d == a.size() {
                return true;
            }
            for c in 0..b.size() {
                if used[c] || ai[d] != bi[c] {
                    continue;
                }
                let consistent = (0..d).all(|e| {
                    a.leq(d, e) == b.leq(c, map[e]) && a.leq(e, d) == b.leq(map[e], c)
                });
                if !consistent {
                    continue;
                }
                map[d] = c;
                used[c] = true;
                if go(d + 1, a, b, ai, bi, map, used) {
                    return true;
                }
                used[c] = false;
                map[d] = usize::MAX;
            }
            false
        }
        if go(0, self, other, &self_inv, &other_inv, &mut map, &mut used) {
            Ok(Some(map))
        } else {
            Ok(None)
        }
    }

    /// Checks the unique-cover twin property: every element with exactly one
    /// cover must share that cover with a second element. `class_member`
    /// additionally requires at least two elements.
    pub fn uctp(&self) -> UctpReport {
        let covers = self.covers();
        for i in 0..self.m {
            let covers_of_i: Vec<usize> = covers
                .iter()
                .filter(|&&(lo, _)| lo == i)
                .map(|&(_, hi)| hi)
                .collect();
            if covers_of_i.len() != 1 {
                continue;
            }
            let t = covers_of_i[0];
            let twin = covers.iter().any(|&(lo, hi)| hi == t && lo != i);
            if !twin {
                return UctpReport {
                    holds: false,
                    violator: Some(i),
                    class_member: false,
                };
            }
        }
        UctpReport {
            holds: true,
            violator: None,
            class_member: self.m >= 2,
        }
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset(m={}, covers=", self.m)?;
        let covers = self.covers();
        let named: Vec<(String, String)> = covers
            .iter()
            .map(|&(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
            .collect();
        write!(f, "{named:?})")
    }
}

/// Builds a poset as the reflexive transitive closure of arbitrary strict
/// pairs `(lower, upper)`. The pairs need not form a reduction; cycles are
/// rejected with an offending cycle.
pub fn poset_from_covers(m: usize, covers: &[(usize, usize)]) -> Result<Poset, Error> {
    if m == 0 {
        return Err(Error::EmptyPoset);
    }
    if m > MAX_POSET {
        return Err(Error::InstanceTooLarge {
            what: "poset",
            limit: MAX_POSET,
            actual: m,
        });
    }
    let mut succ = vec![Vec::new(); m];
    for &(a, b) in covers {
        for x in [a, b] {
            if x >= m {
                return Err(Error::IndexOutOfRange { index: x, size: m });
            }
        }
        if a == b {
            return Err(Error::CycleDetected(vec![a]));
        }
        succ[a].push(b);
    }
    // Depth-first closure with cycle detection (0 fresh, 1 on stack, 2 done).
    let mut state = vec![0u8; m];
    let mut up = vec![0u64; m];
    let mut stack: Vec<usize> = Vec::new();
    fn visit(
        i: usize,
        succ: &[Vec<usize>],
        state: &mut [u8],
        up: &mut [u64],
        stack: &mut Vec<usize>,
    ) -> Result<(), Error> {
        state[i] = 1;
        stack.push(i);
        up[i] |= 1 << i;
        for &j in &succ[i] {
            match state[j] {
                1 => {
                    let pos = stack.iter().position(|&x| x == j).unwrap();
                    return Err(Error::CycleDetected(stack[pos..].to_vec()));
                }
                0 => visit(j, succ, state, up, stack)?,
                _ => {}
            }
            up[i] |= up[j];
        }
        stack.pop();
        state[i] = 2;
        Ok(())
    }
    for i in 0..m {
        if state[i] == 0 {
            visit(i, &succ, &mut state, &mut up, &mut stack)?;
        }
    }
    let labels = (0..m).map(|i| i.to_string()).collect();
    Ok(Poset::from_up(up, labels))
}

/// The named target posets.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CatalogPoset {
    /// Total order on `k` elements.
    Chain,
    /// `k` pairwise incomparable elements.
    Antichain,
    /// One minimum below `k` pairwise incomparable maximal elements.
    V,
    /// One maximum above `k` pairwise incomparable minimal elements.
    Lambda,
    /// Minimum, `k` incomparable middles, maximum.
    Diamond,
    /// Four elements `A, C, B, D` with `A < B`, `C < B`, `C < D`.
    N,
    /// Two minimal elements each below two maximal elements.
    Butterfly,
    /// Three elements `a < c` with `b` incomparable to both.
    Q,
}

impl CatalogPoset {
    pub fn parse(name: &str) -> Option<CatalogPoset> {
        match name.to_ascii_lowercase().as_str() {
            "chain" => Some(CatalogPoset::Chain),
            "antichain" => Some(CatalogPoset::Antichain),
            "v" => Some(CatalogPoset::V),
            "lambda" => Some(CatalogPoset::Lambda),
            "diamond" => Some(CatalogPoset::Diamond),
            "n" => Some(CatalogPoset::N),
            "butterfly" => Some(CatalogPoset::Butterfly),
            "q" => Some(CatalogPoset::Q),
            _ => None,
        }
    }

    pub fn takes_arity(self) -> bool {
        matches!(
            self,
            CatalogPoset::Chain
                | CatalogPoset::Antichain
                | CatalogPoset::V
                | CatalogPoset::Lambda
                | CatalogPoset::Diamond
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            CatalogPoset::Chain => "chain",
            CatalogPoset::Antichain => "antichain",
            CatalogPoset::V => "V",
            CatalogPoset::Lambda => "Lambda",
            CatalogPoset::Diamond => "diamond",
            CatalogPoset::N => "N",
            CatalogPoset::Butterfly => "butterfly",
            CatalogPoset::Q => "Q",
        }
    }

    /// Builds the poset; `k` is the arity where one applies.
    pub fn build(self, k: Option<u32>) -> Result<Poset, Error> {
        let need_k = || -> Result<usize, Error> {
            match k {
                Some(k) if k >= 1 => Ok(k as usize),
                Some(k) => Err(Error::InvalidArity {
                    name: self.name().to_string(),
                    k,
                }),
                None => Err(Error::MissingArity(self.name().to_string())),
            }
        };
        let no_k = || -> Result<(), Error> {
            match k {
                None => Ok(()),
                Some(k) => Err(Error::InvalidArity {
                    name: self.name().to_string(),
                    k,
                }),
            }
        };
        match self {
            CatalogPoset::Chain => {
                let k = need_k()?;
                let covers: Vec<_> = (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect();
                let p = poset_from_covers(k, &covers)?;
                p.with_labels((1..=k).map(|i| format!("x{i}")).collect())
            }
            CatalogPoset::Antichain => {
                let k = need_k()?;
                let p = poset_from_covers(k, &[])?;
                p.with_labels((1..=k).map(|i| format!("a{i}")).collect())
            }
            CatalogPoset::V => {
                let k = need_k()?;
                let covers: Vec<_> = (1..=k).map(|i| (0, i)).collect();
                let p = poset_from_covers(k + 1, &covers)?;
                let mut labels = vec!["bottom".to_string()];
                labels.extend((1..=k).map(|i| format!("top{i}")));
                p.with_labels(labels)
            }
            CatalogPoset::Lambda => {
                let k = need_k()?;
                let covers: Vec<_> = (0..k).map(|i| (i, k)).collect();
                let p = poset_from_covers(k + 1, &covers)?;
                let mut labels: Vec<_> = (1..=k).map(|i| format!("bot{i}")).collect();
                labels.push("top".to_string());
                p.with_labels(labels)
            }
            CatalogPoset::Diamond => {
                let k = need_k()?;
                let mut covers: Vec<_> = (1..=k).map(|i| (0, i)).collect();
                covers.extend((1..=k).map(|i| (i, k + 1)));
                let p = poset_from_covers(k + 2, &covers)?;
                let mut labels = vec!["bottom".to_string()];
                labels.extend((1..=k).map(|i| format!("mid{i}")));
                labels.push("top".to_string());
                p.with_labels(labels)
            }
            CatalogPoset::N => {
                no_k()?;
                // Minimal elements A, C first; A < B, C < B, C < D.
                let p = poset_from_covers(4, &[(0, 2), (1, 2), (1, 3)])?;
                p.with_labels(vec!["A".into(), "C".into(), "B".into(), "D".into()])
            }
            CatalogPoset::Butterfly => {
                no_k()?;
                // Minimal elements A, C each below both maximal elements B, D.
                let p = poset_from_covers(4, &[(0, 2), (0, 3), (1, 2), (1, 3)])?;
                p.with_labels(vec!["A".into(), "C".into(), "B".into(), "D".into()])
            }
            CatalogPoset::Q => {
                no_k()?;
                let p = poset_from_covers(3, &[(0, 2)])?;
                p.with_labels(vec!["a".into(), "b".into(), "c".into()])
            }
        }
    }
}

/// Parses a catalog spec of the form `name` or `name-k` (case-insensitive)
/// into the poset. An explicit `k` argument overrides a missing suffix; the
/// two may not disagree.
pub fn named_poset(spec: &str, k: Option<u32>) -> Result<Poset, Error> {
    let (name, suffix) = match spec.rsplit_once('-') {
        Some((head, tail)) => match tail.parse::<u32>() {
            Ok(v) if CatalogPoset::parse(head).is_some() => (head, Some(v)),
            _ => (spec, None),
        },
        None => (spec, None),
    };
    let cat = CatalogPoset::parse(name).ok_or_else(|| Error::UnknownPoset(spec.to_string()))?;
    let arity = match (suffix, k) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::InvalidArity {
                name: cat.name().to_string(),
                k: b,
            })
        }
        (Some(a), _) => Some(a),
        (None, b) => b,
    };
    cat.build(arity)
}

/// Membership report for the unique-cover twin property.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UctpReport {
    pub holds: bool,
    /// An element with exactly one cover and no second element sharing it.
    pub violator: Option<usize>,
    /// `holds` plus the two-element minimum required of the class.
    pub class_member: bool,
}

impl Serialize for Poset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let covers: Vec<(String, String)> = self
            .covers()
            .into_iter()
            .map(|(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
            .collect();
        let mut st = serializer.serialize_struct("Poset", 2)?;
        st.serialize_field("elements", &self.labels)?;
        st.serialize_field("covers", &covers)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct PosetRaw {
    elements: Vec<String>,
    covers: Vec<(String, String)>,
}

impl<'de> Deserialize<'de> for Poset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Poset, D::Error> {
        let raw = PosetRaw::deserialize(deserializer)?;
        let index_of = |name: &str| -> Result<usize, D::Error> {
            raw.elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| D::Error::custom(format!("unknown element `{name}` in covers")))
        };
        let mut covers = Vec::with_capacity(raw.covers.len());
        for (a, b) in &raw.covers {
            covers.push((index_of(a)?, index_of(b)?));
        }
        let p = poset_from_covers(raw.elements.len(), &covers).map_err(D::Error::custom)?;
        p.with_labels(raw.elements).map_err(D::Error::custom)
    }
}

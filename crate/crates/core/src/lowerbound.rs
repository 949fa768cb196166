//! Lower-bound machinery: separability graphs, exact biclique cover
//! number, pair-separation certificates, Dilworth chain decomposition, and
//! the logarithmic bound for unique-cover-twin targets.

use std::collections::HashMap;

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ceil_log2;
use crate::error::Error;
use crate::family::{Family, SubsetMask, MAX_GROUND};
use crate::poset::Poset;

/// Largest graph accepted by the exact biclique-cover search.
pub const MAX_BC_VERTICES: u32 = 10;

/// Largest family accepted by the chain-decomposition matching.
pub const MAX_DILWORTH: usize = 4096;

/// Simple graph on vertex set `[n]`; vertex `v` is bit `v-1` of a mask.
/// In a separability graph, `x ~ y` iff some family member contains exactly
/// one of `x`, `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparabilityGraph {
    n: u32,
    adj: Vec<u32>,
}

impl SeparabilityGraph {
    /// Graph from an explicit edge list (1-based endpoints).
    pub fn new(n: u32, edges: &[(u32, u32)]) -> Result<SeparabilityGraph, Error> {
        if n < 1 || n > MAX_GROUND {
            return Err(Error::InvalidGraph(format!(
                "vertex count {n} outside 1..={MAX_GROUND}"
            )));
        }
        let mut g = SeparabilityGraph {
            n,
            adj: vec![0; n as usize],
        };
        for &(x, y) in edges {
            if x == y {
                return Err(Error::InvalidGraph(format!("loop at vertex {x}")));
            }
            if x < 1 || x > n || y < 1 || y > n {
                return Err(Error::InvalidGraph(format!(
                    "edge {x}-{y} outside vertex range 1..={n}"
                )));
            }
            g.adj[(x - 1) as usize] |= 1 << (y - 1);
            g.adj[(y - 1) as usize] |= 1 << (x - 1);
        }
        Ok(g)
    }

    /// The complete graph `K_n`.
    pub fn complete(n: u32) -> Result<SeparabilityGraph, Error> {
        let mut edges = Vec::new();
        for x in 1..=n {
            for y in (x + 1)..=n {
                edges.push((x, y));
            }
        }
        SeparabilityGraph::new(n, &edges)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// True iff `x ~ y` (1-based; false for out-of-range or equal vertices).
    pub fn has_edge(&self, x: u32, y: u32) -> bool {
        x >= 1
            && y >= 1
            && x <= self.n
            && y <= self.n
            && x != y
            && self.adj[(x - 1) as usize] & (1 << (y - 1)) != 0
    }

    /// Edges as 1-based pairs `(x, y)` with `x < y`, lexicographically.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for x in 1..=self.n {
            for y in (x + 1)..=self.n {
                if self.has_edge(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Neighbors of `x` as a vertex mask (bit `v-1` for vertex `v`).
    pub fn neighbor_mask(&self, x: u32) -> u32 {
        self.adj[(x - 1) as usize]
    }

    pub fn is_complete(&self) -> bool {
        let full = if self.n as usize >= 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        };
        (0..self.n as usize).all(|v| self.adj[v] == full & !(1 << v))
    }
}

impl Serialize for SeparabilityGraph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SeparabilityGraph", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("edges", &self.edges())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SeparabilityGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<SeparabilityGraph, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: u32,
            edges: Vec<(u32, u32)>,
        }
        let raw = Raw::deserialize(d)?;
        SeparabilityGraph::new(raw.n, &raw.edges).map_err(D::Error::custom)
    }
}

/// The separability graph of a family: `x ~ y` iff some member separates
/// the pair.
pub fn separability_graph(f: &Family) -> SeparabilityGraph {
    let n = f.n();
    let mut g = SeparabilityGraph {
        n,
        adj: vec![0; n as usize],
    };
    for &s in f.sets() {
        for x in 1..=n {
            for y in (x + 1)..=n {
                if s.separates(x, y) {
                    g.adj[(x - 1) as usize] |= 1 << (y - 1);
                    g.adj[(y - 1) as usize] |= 1 << (x - 1);
                }
            }
        }
    }
    g
}

/// A complete bipartite subgraph, stored as two disjoint nonempty vertex
/// sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Biclique {
    left: SubsetMask,
    right: SubsetMask,
}

impl Biclique {
    pub fn new(left: SubsetMask, right: SubsetMask) -> Result<Biclique, Error> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::DegenerateBiclique);
        }
        if left.bits() & right.bits() != 0 {
            return Err(Error::InvalidCover(format!(
                "biclique sides overlap: {left:?} and {right:?}"
            )));
        }
        Ok(Biclique { left, right })
    }

    pub fn left(&self) -> SubsetMask {
        self.left
    }

    pub fn right(&self) -> SubsetMask {
        self.right
    }

    /// True iff the edge `x-y` runs between the two sides.
    pub fn covers(&self, x: u32, y: u32) -> bool {
        (self.left.contains(x) && self.right.contains(y))
            || (self.left.contains(y) && self.right.contains(x))
    }
}

impl Serialize for Biclique {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Biclique", 2)?;
        let left: Vec<u32> = self.left.elements().collect();
        let right: Vec<u32> = self.right.elements().collect();
        st.serialize_field("left", &left)?;
        st.serialize_field("right", &right)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Biclique {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Biclique, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            left: Vec<u32>,
            right: Vec<u32>,
        }
        let raw = Raw::deserialize(d)?;
        let left = SubsetMask::from_elements(MAX_GROUND, raw.left.iter().copied())
            .map_err(D::Error::custom)?;
        let right = SubsetMask::from_elements(MAX_GROUND, raw.right.iter().copied())
            .map_err(D::Error::custom)?;
        Biclique::new(left, right).map_err(D::Error::custom)
    }
}

/// The one-set biclique: the member on one side, its complement on the
/// other. The empty set and the full ground set separate nothing and are
/// rejected.
pub fn biclique_of_set(s: SubsetMask, n: u32) -> Result<Biclique, Error> {
    if s.is_empty() || s == SubsetMask::full(n) {
        return Err(Error::DegenerateBiclique);
    }
    Biclique::new(s, s.complement(n))
}

/// A set of bicliques whose edge union equals a graph's edge set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicliqueCover {
    bicliques: Vec<Biclique>,
}

impl BicliqueCover {
    /// Validates that every biclique edge lies in the graph and that the
    /// union covers every graph edge.
    pub fn new(g: &SeparabilityGraph, bicliques: Vec<Biclique>) -> Result<BicliqueCover, Error> {
        for b in &bicliques {
            for x in b.left.elements() {
                for y in b.right.elements() {
                    if !g.has_edge(x, y) {
                        return Err(Error::InvalidCover(format!(
                            "biclique edge {x}-{y} is not a graph edge"
                        )));
                    }
                }
            }
        }
        for (x, y) in g.edges() {
            if !bicliques.iter().any(|b| b.covers(x, y)) {
                return Err(Error::InvalidCover(format!("edge {x}-{y} is uncovered")));
            }
        }
        Ok(BicliqueCover { bicliques })
    }

    pub fn value(&self) -> usize {
        self.bicliques.len()
    }

    pub fn bicliques(&self) -> &[Biclique] {
        &self.bicliques
    }
}

impl Serialize for BicliqueCover {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BicliqueCover", 2)?;
        st.serialize_field("value", &self.bicliques.len())?;
        st.serialize_field("bicliques", &self.bicliques)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for BicliqueCover {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<BicliqueCover, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            value: usize,
            bicliques: Vec<Biclique>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.value != raw.bicliques.len() {
            return Err(D::Error::custom(format!(
                "cover value {} does not match {} bicliques",
                raw.value,
                raw.bicliques.len()
            )));
        }
        Ok(BicliqueCover {
            bicliques: raw.bicliques,
        })
    }
}

/// Exact biclique cover number with a witnessing minimum cover.
///
/// Branch and bound over maximal bicliques: branch on the least uncovered
/// edge, prune with the signature bound bc >= ceil(log2 w) where w is the
/// largest clique among uncovered edges (distinct side-patterns are forced
/// on clique vertices, so 2^bc >= w).
pub fn bc_exact(g: &SeparabilityGraph) -> Result<(usize, BicliqueCover), Error> {
    if g.n > MAX_BC_VERTICES {
        return Err(Error::InstanceTooLarge {
            what: "biclique cover graph",
            limit: MAX_BC_VERTICES as usize,
            actual: g.n as usize,
        });
    }
    let edges = g.edges();
    if edges.is_empty() {
        return Ok((0, BicliqueCover { bicliques: Vec::new() }));
    }

    let edge_index: HashMap<(u32, u32), usize> =
        edges.iter().copied().enumerate().map(|(i, e)| (e, i)).collect();
    let all_edges: u64 = (1u64 << edges.len()) - 1;

    // Maximal bicliques are the Galois-closed pairs (L, N(L)); every
    // biclique grows to one, so restricting to them preserves exactness.
    let maximal = maximal_bicliques(g);
    let edge_sets: Vec<u64> = maximal
        .iter()
        .map(|b| {
            let mut m = 0u64;
            for x in b.left.elements() {
                for y in b.right.elements() {
                    let key = (x.min(y), x.max(y));
                    m |= 1 << edge_index[&key];
                }
            }
            m
        })
        .collect();

    let mut search = CoverSearch {
        g,
        edges: &edges,
        maximal: &maximal,
        edge_sets: &edge_sets,
        clique_memo: HashMap::new(),
        best: greedy_cover(&maximal, &edge_sets, all_edges),
    };
    let mut chosen = Vec::new();
    search.run(all_edges, &mut chosen);
    let cover = BicliqueCover {
        bicliques: search.best.iter().map(|&i| maximal[i]).collect(),
    };
    debug_assert!(BicliqueCover::new(g, cover.bicliques.clone()).is_ok());
    Ok((cover.bicliques.len(), cover))
}

struct CoverSearch<'a> {
    g: &'a SeparabilityGraph,
    edges: &'a [(u32, u32)],
    maximal: &'a [Biclique],
    edge_sets: &'a [u64],
    clique_memo: HashMap<u64, u32>,
    best: Vec<usize>,
}

impl CoverSearch<'_> {
    fn run(&mut self, uncovered: u64, chosen: &mut Vec<usize>) {
        if uncovered == 0 {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        if chosen.len() + self.lower_bound(uncovered) >= self.best.len() {
            return;
        }
        let e = uncovered.trailing_zeros() as usize;
        let (x, y) = self.edges[e];
        for i in 0..self.maximal.len() {
            if self.maximal[i].covers(x, y) {
                chosen.push(i);
                self.run(uncovered & !self.edge_sets[i], chosen);
                chosen.pop();
            }
        }
    }

    fn lower_bound(&mut self, uncovered: u64) -> usize {
        if let Some(&w) = self.clique_memo.get(&uncovered) {
            return ceil_log2(w) as usize;
        }
        let mut adj = vec![0u32; self.g.n as usize];
        let mut verts = 0u32;
        let mut bits = uncovered;
        while bits != 0 {
            let e = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (x, y) = self.edges[e];
            adj[(x - 1) as usize] |= 1 << (y - 1);
            adj[(y - 1) as usize] |= 1 << (x - 1);
            verts |= (1 << (x - 1)) | (1 << (y - 1));
        }
        let mut w = 1;
        max_clique(&adj, verts, 0, &mut w);
        self.clique_memo.insert(uncovered, w);
        ceil_log2(w) as usize
    }
}

fn max_clique(adj: &[u32], cand: u32, size: u32, best: &mut u32) {
    if size + cand.count_ones() <= *best {
        return;
    }
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    let v = cand.trailing_zeros();
    max_clique(adj, cand & adj[v as usize], size + 1, best);
    max_clique(adj, cand & !(1 << v), size, best);
}

/// All maximal bicliques, normalized (lesser side left) and sorted.
fn maximal_bicliques(g: &SeparabilityGraph) -> Vec<Biclique> {
    let n = g.n as usize;
    let common = |side: u32| -> u32 {
        let mut c = u32::MAX;
        let mut bits = side;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            c &= g.adj[v];
        }
        c
    };
    let mut seen = std::collections::BTreeSet::new();
    for l in 1u32..(1 << n) {
        let r = common(l);
        if r == 0 {
            continue;
        }
        let l_closed = common(r);
        let (a, b) = if SubsetMask::new(l_closed) <= SubsetMask::new(r) {
            (l_closed, r)
        } else {
            (r, l_closed)
        };
        seen.insert((SubsetMask::new(a), SubsetMask::new(b)));
    }
    seen.into_iter()
        .map(|(a, b)| Biclique::new(a, b).expect("closed pairs are disjoint and nonempty"))
        .collect()
}

/// Initial cover: repeatedly take the first maximal biclique covering the
/// most uncovered edges.
fn greedy_cover(maximal: &[Biclique], edge_sets: &[u64], all_edges: u64) -> Vec<usize> {
    let mut uncovered = all_edges;
    let mut out = Vec::new();
    while uncovered != 0 {
        let i = (0..maximal.len())
            .max_by_key(|&i| ((edge_sets[i] & uncovered).count_ones(), usize::MAX - i))
            .expect("nonempty maximal list when edges remain");
        debug_assert!(edge_sets[i] & uncovered != 0);
        out.push(i);
        uncovered &= !edge_sets[i];
    }
    out
}

/// Lexicographically least pair of ground elements no member separates.
pub fn first_unseparated_pair(f: &Family) -> Option<(u32, u32)> {
    let g = separability_graph(f);
    for x in 1..=f.n() {
        for y in (x + 1)..=f.n() {
            if !g.has_edge(x, y) {
                return Some((x, y));
            }
        }
    }
    None
}

/// True iff every pair of ground elements is separated by some member,
/// i.e. the separability graph is complete.
pub fn separates_all_pairs(f: &Family) -> bool {
    first_unseparated_pair(f).is_none()
}

/// Disjoint containment-chains partitioning a family; the count of a
/// minimum decomposition equals the family's width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainDecomposition {
    chains: Vec<Vec<SubsetMask>>,
}

impl ChainDecomposition {
    pub fn chains(&self) -> &[Vec<SubsetMask>] {
        &self.chains
    }

    pub fn width(&self) -> usize {
        self.chains.len()
    }
}

/// Minimum chain decomposition via minimum path cover on the strict
/// containment digraph: chains = |f| - maximum matching between members and
/// their proper supersets.
pub fn dilworth_chain_cover(f: &Family) -> Result<ChainDecomposition, Error> {
    let sets = f.sets();
    let m = sets.len();
    if m > MAX_DILWORTH {
        return Err(Error::InstanceTooLarge {
            what: "chain decomposition family",
            limit: MAX_DILWORTH,
            actual: m,
        });
    }
    let succs: Vec<Vec<usize>> = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| sets[i].is_proper_subset_of(sets[j]))
                .collect()
        })
        .collect();

    // Kuhn's augmenting paths; left nodes in canonical order keeps the
    // matching deterministic.
    let mut match_to: Vec<Option<usize>> = vec![None; m];
    let mut match_from: Vec<Option<usize>> = vec![None; m];
    fn augment(
        u: usize,
        succs: &[Vec<usize>],
        seen: &mut [bool],
        match_to: &mut [Option<usize>],
        match_from: &mut [Option<usize>],
    ) -> bool {
        for &v in &succs[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if match_from[v].is_none()
                || augment(match_from[v].unwrap(), succs, seen, match_to, match_from)
            {
                match_to[u] = Some(v);
                match_from[v] = Some(u);
                return true;
            }
        }
        false
    }
    for u in 0..m {
        let mut seen = vec![false; m];
        augment(u, &succs, &mut seen, &mut match_to, &mut match_from);
    }

    let mut chains = Vec::new();
    for start in 0..m {
        if match_from[start].is_some() {
            continue;
        }
        let mut chain = vec![sets[start]];
        let mut cur = start;
        while let Some(next) = match_to[cur] {
            chain.push(sets[next]);
            cur = next;
        }
        chains.push(chain);
    }
    Ok(ChainDecomposition { chains })
}

/// The biclique-cover lower bound on the size of any family with the same
/// separability graph: |f| >= bc(G_f).
pub fn family_size_lower_bound(f: &Family) -> Result<usize, Error> {
    Ok(bc_exact(&separability_graph(f))?.0)
}

/// Logarithmic lower bound on induced saturation for unique-cover-twin
/// targets: ceil(log2 n) when the target qualifies (at least two elements
/// and the cover-twin property), the trivial bound 1 otherwise.
pub fn uctp_lower_bound(p: &Poset, n: u32) -> u32 {
    if p.uctp().class_member {
        ceil_log2(n).max(1)
    } else {
        1
    }
}

/// How a family treats an unseparated pair: every member avoids both
/// elements, every member contains both, or a mixture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairProfile {
    EmptyFamily,
    AllAvoid,
    AllContain,
    Mixed,
}

/// Classifies the members' behavior on an unseparated pair; a member that
/// separates the pair is reported as an error.
pub fn lemma_pair_profile(f: &Family, x: u32, y: u32) -> Result<PairProfile, Error> {
    let n = f.n();
    for e in [x, y] {
        if e < 1 || e > n {
            return Err(Error::ElementOutOfRange { element: e, n });
        }
    }
    if x == y {
        return Err(Error::InvalidGraph(format!("pair ({x},{y}) is degenerate")));
    }
    let mut avoid = false;
    let mut contain = false;
    for &s in f.sets() {
        if s.separates(x, y) {
            return Err(Error::PairSeparated { x, y, by: s });
        }
        if s.contains(x) {
            contain = true;
        } else {
            avoid = true;
        }
    }
    Ok(match (avoid, contain) {
        (false, false) => PairProfile::EmptyFamily,
        (true, false) => PairProfile::AllAvoid,
        (false, true) => PairProfile::AllContain,
        (true, true) => PairProfile::Mixed,
    })
}

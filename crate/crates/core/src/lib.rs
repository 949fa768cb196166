//! Exact computation of weak and induced poset saturation numbers in the
//! Boolean lattice.
//!
//! A family `F` of subsets of `[n] = {1, …, n}` is *P-free* (for a finite
//! target poset `P` and a containment mode) when `F` contains no copy of `P`,
//! and *P-saturated* when it is P-free and adding any missing subset creates
//! a copy. The minimum size of a saturated family is the saturation number;
//! this crate computes it exactly for small `n` by symmetry-pruned exhaustive
//! search, verifies explicit families with closed-form sizes, and computes
//! the separability lower-bound machinery (biclique covers, Dilworth chain
//! decompositions, the unique-cover-twin bound).
//!
//! Two containment modes are supported throughout:
//!
//! * [`Mode::Weak`]: a copy is an injective order-preserving image of the
//!   target (comparabilities map to containments).
//! * [`Mode::Induced`]: the image must reproduce the target's order exactly,
//!   incomparabilities included.
//!
//! With the `parallel` feature (default) the witness scans and the search
//! enumeration run on a rayon pool; without it the same code paths run
//! sequentially. Results are identical in both configurations and do not
//! depend on the worker count.

pub mod constructions;
pub mod embed;
pub mod error;
pub mod family;
pub mod lowerbound;
mod par;
pub mod poset;
pub mod saturation;

pub use constructions::{
    antichain_construction, butterfly_construction, chains_construction,
    diamond_interior_construction, n_construction, q_example_construction, weak_sat_construction,
};
pub use embed::{find_induced_copy, find_weak_copy, Embedding};
pub use error::Error;
pub use family::{Family, SubsetMask, MAX_GROUND};
pub use lowerbound::{
    bc_exact, biclique_of_set, dilworth_chain_cover, family_size_lower_bound,
    first_unseparated_pair, lemma_pair_profile, separability_graph, separates_all_pairs,
    uctp_lower_bound, Biclique, BicliqueCover, ChainDecomposition, PairProfile,
    SeparabilityGraph,
};
pub use par::with_threads;
pub use poset::{named_poset, poset_from_covers, CatalogPoset, CoverList, Poset, UctpReport};
pub use saturation::{
    is_free, is_saturated, minimum_saturated, unsaturated_witnesses, MaskRestriction, Mode,
    PruningFlags, SearchOptions, SearchResult,
};

/// Smallest `t` with `2^t >= x` (and 0 for `x <= 1`).
pub(crate) fn ceil_log2(x: u32) -> u32 {
    if x <= 1 {
        0
    } else {
        32 - (x - 1).leading_zeros()
    }
}

//! Freeness and saturation predicates, and the exact minimum-saturation
//! search.
//!
//! A family is saturated for a target poset (in a containment mode) when it
//! is copy-free and every missing subset would create a copy. The search
//! enumerates candidate families by increasing size as sorted mask tuples,
//! expanding a prefix only when it is the lexicographic minimum of its orbit
//! under coordinate permutations (plus the complement map when the target is
//! self-dual) and only while it stays copy-free; copies never disappear when
//! sets are added, so both prunings are sound. Work is partitioned into
//! independent prefix subtrees, which makes the result independent of the
//! worker count: every subtree reports its lexicographically first hit and
//! the coordinator keeps the least.

use serde::{Deserialize, Serialize};

use crate::ceil_log2;
use crate::embed::{extension_creates_copy, find_copy_in};
use crate::error::Error;
use crate::family::{Family, SubsetMask, MAX_GROUND};
use crate::par;
use crate::poset::Poset;

/// Containment mode for copies of the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Comparabilities map to containments; incomparabilities are free.
    Weak,
    /// The image reproduces the target order exactly.
    Induced,
}

/// True iff the family contains no copy of the target.
pub fn is_free(family: &Family, target: &Poset, mode: Mode) -> bool {
    find_copy_in(family.sets(), target, mode).is_none()
}

/// Missing sets whose addition keeps the family free, in canonical order.
/// The family itself must be free; otherwise the found copy is returned as
/// an error.
pub fn unsaturated_witnesses(
    family: &Family,
    target: &Poset,
    mode: Mode,
) -> Result<Vec<SubsetMask>, Error> {
    if let Some(e) = find_copy_in(family.sets(), target, mode) {
        return Err(Error::NotFree(e));
    }
    let end = 1u32 << family.n();
    let witnesses = par::mask_filter(end, |bits| {
        let s = SubsetMask::new(bits);
        !family.contains(s) && !extension_creates_copy(family.sets(), s, target, mode)
    });
    let mut out: Vec<SubsetMask> = witnesses.into_iter().map(SubsetMask::new).collect();
    out.sort();
    Ok(out)
}

/// True iff the family is free and every missing subset would create a copy.
pub fn is_saturated(family: &Family, target: &Poset, mode: Mode) -> bool {
    if !is_free(family, target, mode) {
        return false;
    }
    let end = 1u32 << family.n();
    !par::mask_any(end, |bits| {
        let s = SubsetMask::new(bits);
        !family.contains(s) && !extension_creates_copy(family.sets(), s, target, mode)
    })
}

/// Restriction on which subsets may appear in searched families. Both
/// restricted classes are closed under coordinate permutations and under
/// complementation, so symmetry pruning stays sound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MaskRestriction {
    Unrestricted,
    /// Families may contain neither the empty set nor the full ground set.
    AvoidExtremes,
    /// Families must contain the empty set or the full ground set.
    RequireExtreme,
}

/// Knobs for [`minimum_saturated`]. `max_n` caps the ground set (full
/// enumeration is exponential), `max_size` optionally caps the family sizes
/// tried, and `collect_all_minima` additionally gathers every minimum
/// certificate up to symmetry.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub max_n: u32,
    pub max_size: Option<usize>,
    pub symmetry: bool,
    pub theorem_pruning: bool,
    pub restriction: MaskRestriction,
    pub threads: Option<usize>,
    pub collect_all_minima: bool,
}

impl Default for SearchOptions {
    fn default() -> SearchOptions {
        SearchOptions {
            max_n: 5,
            max_size: None,
            symmetry: true,
            theorem_pruning: true,
            restriction: MaskRestriction::Unrestricted,
            threads: None,
            collect_all_minima: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruningFlags {
    pub symmetry: bool,
    pub uctp: bool,
}

/// Outcome of a minimum-saturation search. `value` is `None` when no
/// saturated family exists within the searched sizes; `exhaustive` records
/// that every smaller size (within the restriction) was fully enumerated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub n: u32,
    pub mode: Mode,
    pub value: Option<u64>,
    pub certificate: Option<Family>,
    pub exhaustive: bool,
    pub families_examined: u64,
    pub lower_start: u64,
    pub pruning: PruningFlags,
    /// Every minimum certificate up to symmetry, canonically sorted; only
    /// with [`SearchOptions::collect_all_minima`].
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub all_minimum_certificates: Option<Vec<Family>>,
}

/// Exact minimum size of a saturated family, with a lexicographically least
/// certificate under canonical order.
///
/// If the full lattice itself contains no copy of the target then no proper
/// subfamily can be saturated and the full lattice vacuously is; the value
/// `2^n` is returned directly.
pub fn minimum_saturated(
    n: u32,
    target: &Poset,
    mode: Mode,
    opts: &SearchOptions,
) -> Result<SearchResult, Error> {
    if n < 1 || n > MAX_GROUND {
        return Err(Error::GroundSetOutOfRange { n });
    }
    if n > opts.max_n {
        return Err(Error::InstanceTooLarge {
            what: "exhaustive search ground set",
            limit: opts.max_n as usize,
            actual: n as usize,
        });
    }
    par::with_threads(opts.threads, || search_impl(n, target, mode, opts))
}

fn search_impl(n: u32, target: &Poset, mode: Mode, opts: &SearchOptions) -> Result<SearchResult, Error> {
    let uctp_on = mode == Mode::Induced && opts.theorem_pruning && target.uctp().class_member;
    let lower_start = if uctp_on { ceil_log2(n).max(1) as usize } else { 1 };
    let pruning = PruningFlags {
        symmetry: opts.symmetry,
        uctp: uctp_on,
    };
    let result = |value: Option<u64>,
                  certificate: Option<Family>,
                  families_examined: u64,
                  all: Option<Vec<Family>>| SearchResult {
        n,
        mode,
        value,
        certificate,
        exhaustive: true,
        families_examined,
        lower_start: lower_start as u64,
        pruning,
        all_minimum_certificates: all,
    };

    // One-element targets: every non-empty family contains a copy, so the
    // empty family is the unique saturated one.
    if target.size() == 1 {
        let (value, cert) = match opts.restriction {
            MaskRestriction::RequireExtreme => (None, None),
            _ => (Some(0), Some(Family::empty(n))),
        };
        let all = opts
            .collect_all_minima
            .then(|| cert.clone().into_iter().collect());
        return Ok(result(value, cert, 0, all));
    }

    // Vacuous case: the target does not embed in the full lattice at all,
    // so the full lattice is the unique saturated family.
    let full = Family::full_lattice(n);
    if find_copy_in(full.sets(), target, mode).is_none() {
        let allowed = !matches!(opts.restriction, MaskRestriction::AvoidExtremes);
        let (value, cert) = if allowed {
            (Some(1u64 << n), Some(full))
        } else {
            (None, None)
        };
        let all = opts
            .collect_all_minima
            .then(|| cert.clone().into_iter().collect());
        return Ok(result(value, cert, 0, all));
    }

    let mut pool: Vec<SubsetMask> = (0..(1u64 << n) as u32).map(SubsetMask::new).collect();
    if opts.restriction == MaskRestriction::AvoidExtremes {
        pool.retain(|&s| !s.is_empty() && s != SubsetMask::full(n));
    }
    pool.sort();
    let keys: Vec<u64> = pool.iter().map(|s| s.canonical_key()).collect();

    let self_dual = matches!(target.is_isomorphic(&target.dual()), Ok(Some(_)));
    let tables = if opts.symmetry {
        group_tables(n, self_dual)
    } else {
        Vec::new()
    };

    let ctx = Ctx {
        pool: &pool,
        keys: &keys,
        tables: &tables,
        target,
        mode,
        restriction: opts.restriction,
        n,
        collect_all: opts.collect_all_minima,
    };

    let cap = opts.max_size.unwrap_or(pool.len()).min(pool.len());
    let mut examined: u64 = 0;
    for s in lower_start..=cap {
        let units = build_units(&ctx, s);
        let outcomes = par::map_units(&units, |u| run_unit(&ctx, u, s));
        let mut found: Vec<Vec<SubsetMask>> = Vec::new();
        for o in outcomes {
            examined += o.examined;
            found.extend(o.found);
        }
        if !found.is_empty() {
            found.sort_by(|a, b| tuple_key(a).cmp(&tuple_key(b)));
            let certificate = Family::new(n, found[0].clone())?;
            let all = opts.collect_all_minima.then(|| {
                found
                    .iter()
                    .map(|masks| Family::new(n, masks.clone()).expect("searched family"))
                    .collect()
            });
            return Ok(result(Some(s as u64), Some(certificate), examined, all));
        }
    }
    let all = opts.collect_all_minima.then(Vec::new);
    Ok(result(None, None, examined, all))
}

fn tuple_key(masks: &[SubsetMask]) -> Vec<u64> {
    masks.iter().map(|m| m.canonical_key()).collect()
}

struct Ctx<'a> {
    pool: &'a [SubsetMask],
    keys: &'a [u64],
    tables: &'a [Vec<u32>],
    target: &'a Poset,
    mode: Mode,
    restriction: MaskRestriction,
    n: u32,
    collect_all: bool,
}

/// A work unit: a canonical copy-free prefix plus the pool index to resume
/// from. Units are independent, so worker scheduling cannot change results.
struct Unit {
    prefix: Vec<SubsetMask>,
    prefix_keys: Vec<u64>,
    resume: usize,
}

struct UnitOutcome {
    examined: u64,
    found: Vec<Vec<SubsetMask>>,
}

fn build_units(ctx: &Ctx<'_>, s: usize) -> Vec<Unit> {
    let depth = s.min(2);
    let mut units = Vec::new();
    for i in 0..ctx.pool.len() {
        if i + s > ctx.pool.len() {
            break;
        }
        let prefix = vec![ctx.pool[i]];
        let prefix_keys = vec![ctx.keys[i]];
        if !is_canonical(&prefix, &prefix_keys, ctx.tables) {
            continue;
        }
        if depth == 1 {
            units.push(Unit {
                prefix,
                prefix_keys,
                resume: i + 1,
            });
            continue;
        }
        for j in (i + 1)..ctx.pool.len() {
            if j + (s - 1) > ctx.pool.len() {
                break;
            }
            if extension_creates_copy(&prefix, ctx.pool[j], ctx.target, ctx.mode) {
                continue;
            }
            let p2 = vec![ctx.pool[i], ctx.pool[j]];
            let k2 = vec![ctx.keys[i], ctx.keys[j]];
            if !is_canonical(&p2, &k2, ctx.tables) {
                continue;
            }
            units.push(Unit {
                prefix: p2,
                prefix_keys: k2,
                resume: j + 1,
            });
        }
    }
    units
}

fn run_unit(ctx: &Ctx<'_>, unit: &Unit, s: usize) -> UnitOutcome {
    let mut out = UnitOutcome {
        examined: 0,
        found: Vec::new(),
    };
    let mut prefix = unit.prefix.clone();
    let mut prefix_keys = unit.prefix_keys.clone();
    dfs(ctx, s, &mut prefix, &mut prefix_keys, unit.resume, &mut out);
    out
}

fn dfs(
    ctx: &Ctx<'_>,
    s: usize,
    prefix: &mut Vec<SubsetMask>,
    prefix_keys: &mut Vec<u64>,
    resume: usize,
    out: &mut UnitOutcome,
) {
    if prefix.len() == s {
        if restriction_satisfied(ctx, prefix) {
            out.examined += 1;
            if complete_is_saturated(ctx, prefix) {
                out.found.push(prefix.clone());
            }
        }
        return;
    }
    if !out.found.is_empty() && !ctx.collect_all {
        return;
    }
    let need = s - prefix.len();
    for i in resume..ctx.pool.len() {
        if i + need > ctx.pool.len() {
            break;
        }
        let m = ctx.pool[i];
        if extension_creates_copy(prefix, m, ctx.target, ctx.mode) {
            continue;
        }
        prefix.push(m);
        prefix_keys.push(ctx.keys[i]);
        if is_canonical(prefix, prefix_keys, ctx.tables) {
            dfs(ctx, s, prefix, prefix_keys, i + 1, out);
        }
        prefix.pop();
        prefix_keys.pop();
        if !out.found.is_empty() && !ctx.collect_all {
            return;
        }
    }
}

fn restriction_satisfied(ctx: &Ctx<'_>, masks: &[SubsetMask]) -> bool {
    match ctx.restriction {
        MaskRestriction::Unrestricted => true,
        // The pool already excludes the extremes.
        MaskRestriction::AvoidExtremes => true,
        MaskRestriction::RequireExtreme => {
            masks.contains(&SubsetMask::EMPTY) || masks.contains(&SubsetMask::full(ctx.n))
        }
    }
}

/// The prefix is copy-free by construction, so saturation reduces to the
/// witness scan.
fn complete_is_saturated(ctx: &Ctx<'_>, masks: &[SubsetMask]) -> bool {
    let end = 1u32 << ctx.n;
    for bits in 0..end {
        let s = SubsetMask::new(bits);
        if masks.contains(&s) {
            continue;
        }
        if !extension_creates_copy(masks, s, ctx.target, ctx.mode) {
            return false;
        }
    }
    true
}

/// True iff no group element maps the prefix to a lexicographically smaller
/// sorted tuple. Prefix keys arrive sorted (the search extends in canonical
/// order).
fn is_canonical(prefix: &[SubsetMask], prefix_keys: &[u64], tables: &[Vec<u32>]) -> bool {
    let mut mapped: Vec<u64> = Vec::with_capacity(prefix.len());
    for table in tables {
        mapped.clear();
        mapped.extend(
            prefix
                .iter()
                .map(|m| SubsetMask::new(table[m.bits() as usize]).canonical_key()),
        );
        mapped.sort_unstable();
        if mapped.as_slice() < prefix_keys {
            return false;
        }
    }
    true
}

/// Mask relabeling tables for every non-identity coordinate permutation,
/// plus complement composed with every permutation when the target is
/// self-dual (complementation reverses containment).
fn group_tables(n: u32, include_complement: bool) -> Vec<Vec<u32>> {
    let full = SubsetMask::full(n).bits();
    let perms = permutations(n as usize);
    let mut tables = Vec::new();
    for (pi, perm) in perms.iter().enumerate() {
        let identity = pi == 0;
        let mut table = vec![0u32; 1 << n];
        for mask in 0u32..(1 << n) {
            let mut image = 0u32;
            let mut bits = mask;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                image |= 1 << perm[b];
            }
            table[mask as usize] = image;
        }
        if include_complement {
            let comp: Vec<u32> = table.iter().map(|&v| !v & full).collect();
            tables.push(comp);
        }
        if !identity {
            tables.push(table);
        }
    }
    tables
}

/// All permutations of `0..n` in lexicographic order (identity first).
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    fn go(n: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, depth: usize, out: &mut Vec<Vec<usize>>) {
        if depth == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            used[v] = true;
            current[depth] = v;
            go(n, current, used, depth + 1, out);
            used[v] = false;
        }
    }
    go(n, &mut current, &mut used, 0, &mut out);
    out
}

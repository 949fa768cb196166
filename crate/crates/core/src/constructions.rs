//! Explicit families with closed-form sizes: rotated chain unions, the
//! layered antichain family, and the small hand-built families, each
//! saturated for its declared target and mode.

use crate::error::Error;
use crate::family::{Family, SubsetMask, MAX_GROUND};
use crate::poset::CatalogPoset;

fn check_ground(n: u32, min: u32) -> Result<(), Error> {
    if n < min || n > MAX_GROUND {
        Err(Error::InvalidConstruction(format!(
            "ground size must lie in {min}..={MAX_GROUND}, got {n}"
        )))
    } else {
        Ok(())
    }
}

fn binomial(n: u32, k: u32) -> u64 {
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}

/// Union of `k` maximal chains that pairwise meet only in the empty set and
/// the full ground set; size `k(n-1) + 2`. Chain `i` takes the prefixes of
/// the cyclic order `i+1, i+2, ..., n, 1, ..., i`; proper cyclic intervals
/// with distinct starts are distinct, so the chains share no interior.
/// Saturated (induced) for the antichain, fan, dual fan, and diamond
/// targets of arity `k+1`.
pub fn chains_construction(n: u32, k: u32) -> Result<Family, Error> {
    check_ground(n, 2)?;
    if k < 1 || k >= n {
        return Err(Error::InvalidConstruction(format!(
            "chain count must satisfy 1 <= k < n, got k={k} with n={n}"
        )));
    }
    let mut sets = vec![SubsetMask::EMPTY, SubsetMask::full(n)];
    for i in 0..k {
        let mut cur = 0u32;
        for j in 0..(n - 1) {
            cur |= 1 << ((i + j) % n);
            sets.push(SubsetMask::new(cur));
        }
    }
    let f = Family::new(n, sets)?;
    debug_assert_eq!(f.len() as u64, k as u64 * (n as u64 - 1) + 2);
    Ok(f)
}

/// The width-`k` family saturated (induced) for the antichain of arity
/// `k+1`, where `k = C(l, (l-1)/2)` for an odd layer parameter `l`:
/// the lower half of the cube on `[l]`, the middle layer padded by growing
/// tails `{l+1}, {l+1,l+2}, ...`, and the upper half padded by the full
/// tail. Size `2^l + (n-l)k`.
pub fn antichain_construction(n: u32, ell: u32) -> Result<Family, Error> {
    if ell < 3 || ell % 2 == 0 {
        return Err(Error::InvalidConstruction(format!(
            "layer parameter must be odd and at least 3, got {ell}"
        )));
    }
    let half = (ell - 1) / 2;
    let k = binomial(ell, half);
    check_ground(n, 2)?;
    if n as u64 <= k {
        return Err(Error::InvalidConstruction(format!(
            "need n > C({ell},{half}) = {k}, got n={n}"
        )));
    }
    let full_tail = SubsetMask::full(n).bits() & !((1u32 << ell) - 1);
    let mut sets = Vec::new();
    for s in 0u32..(1 << ell) {
        if s.count_ones() <= half {
            sets.push(SubsetMask::new(s));
        } else {
            sets.push(SubsetMask::new(s | full_tail));
        }
        if s.count_ones() == half {
            let mut tail = 0u32;
            for t in 1..=(n - ell) {
                tail |= 1 << (ell + t - 1);
                sets.push(SubsetMask::new(s | tail));
            }
        }
    }
    let f = Family::new(n, sets)?;
    debug_assert_eq!(
        f.len() as u64,
        (1u64 << ell) + (n as u64 - ell as u64) * k
    );
    Ok(f)
}

/// The empty set, all singletons, and all prefixes `{1,...,i}`; the
/// singleton `{1}` is shared, so the size is exactly `2n`. Saturated
/// (induced) for the four-element N target.
pub fn n_construction(n: u32) -> Result<Family, Error> {
    check_ground(n, 3)?;
    let mut sets = vec![SubsetMask::EMPTY];
    let mut prefix = 0u32;
    for i in 0..n {
        sets.push(SubsetMask::new(1 << i));
        prefix |= 1 << i;
        sets.push(SubsetMask::new(prefix));
    }
    let f = Family::new(n, sets)?;
    debug_assert_eq!(f.len() as u64, 2 * n as u64);
    Ok(f)
}

/// The empty set, all singletons, all pairs, and the prefixes `{1,...,i}`
/// for `3 <= i <= n`; size `C(n,2) + 2n - 1`. Saturated (induced) for the
/// butterfly target.
pub fn butterfly_construction(n: u32) -> Result<Family, Error> {
    check_ground(n, 3)?;
    let mut sets = vec![SubsetMask::EMPTY];
    for i in 0..n {
        sets.push(SubsetMask::new(1 << i));
        for j in (i + 1)..n {
            sets.push(SubsetMask::new((1 << i) | (1 << j)));
        }
    }
    let mut prefix = 0b111u32;
    sets.push(SubsetMask::new(prefix));
    for i in 3..n {
        prefix |= 1 << i;
        sets.push(SubsetMask::new(prefix));
    }
    let f = Family::new(n, sets)?;
    debug_assert_eq!(f.len() as u64, binomial(n, 2) + 2 * n as u64 - 1);
    Ok(f)
}

/// The size-`2n` family `{1}`, `{1,i}`, `[n]\{1}`, `[n]\{1,i}` that is
/// saturated (induced) for the two-middle diamond while containing neither
/// the empty set nor the full ground set. At `n = 3` the listed sets
/// collide, so the domain starts at 4.
pub fn diamond_interior_construction(n: u32) -> Result<Family, Error> {
    check_ground(n, 4)?;
    let one = SubsetMask::new(1);
    let mut sets = vec![one, one.complement(n)];
    for i in 1..n {
        let pair = SubsetMask::new(1 | (1 << i));
        sets.push(pair);
        sets.push(pair.complement(n));
    }
    let f = Family::new(n, sets)?;
    debug_assert_eq!(f.len() as u64, 2 * n as u64);
    debug_assert!(!f.contains(SubsetMask::EMPTY) && !f.contains(SubsetMask::full(n)));
    Ok(f)
}

/// The four-set family `{∅, {1}, [n]\{1}, [n]}`, saturated (induced) for
/// the three-element target with one related pair; its size never grows
/// with `n`.
pub fn q_example_construction(n: u32) -> Result<Family, Error> {
    check_ground(n, 3)?;
    let one = SubsetMask::new(1);
    Family::new(
        n,
        vec![SubsetMask::EMPTY, one, one.complement(n), SubsetMask::full(n)],
    )
}

/// The catalog of minimum weakly saturated families: two sets for the
/// arity-2 fan and its dual, three for the two-middle diamond and the N
/// target, four for the butterfly, and any `m-1` sets (the canonically
/// first ones) for the arity-`m` antichain.
pub fn weak_sat_construction(
    target: CatalogPoset,
    k: Option<u32>,
    n: u32,
) -> Result<Family, Error> {
    check_ground(n, 3)?;
    let no_family = || {
        Err(Error::InvalidConstruction(format!(
            "no catalog weak-saturation family for target {}",
            target.name()
        )))
    };
    let arity_2 = |sets: Vec<SubsetMask>| {
        if k == Some(2) {
            Family::new(n, sets)
        } else {
            Err(Error::InvalidConstruction(format!(
                "catalog weak-saturation family for {} exists only at arity 2",
                target.name()
            )))
        }
    };
    let one = SubsetMask::new(1);
    let full = SubsetMask::full(n);
    match target {
        CatalogPoset::V => arity_2(vec![SubsetMask::EMPTY, one]),
        CatalogPoset::Lambda => arity_2(vec![one.complement(n), full]),
        CatalogPoset::Diamond => arity_2(vec![SubsetMask::EMPTY, one, full]),
        CatalogPoset::N => match k {
            None => Family::new(n, vec![SubsetMask::EMPTY, one, full]),
            Some(k) => Err(Error::InvalidArity {
                name: target.name().to_string(),
                k,
            }),
        },
        CatalogPoset::Butterfly => match k {
            None => Family::new(n, vec![SubsetMask::EMPTY, one, one.complement(n), full]),
            Some(k) => Err(Error::InvalidArity {
                name: target.name().to_string(),
                k,
            }),
        },
        CatalogPoset::Antichain => {
            let m = match k {
                Some(m) if m >= 2 => m as u64,
                Some(k) => {
                    return Err(Error::InvalidArity {
                        name: target.name().to_string(),
                        k,
                    })
                }
                None => return Err(Error::MissingArity(target.name().to_string())),
            };
            if m - 1 > 1u64 << n {
                return Err(Error::InvalidConstruction(format!(
                    "cannot pick {} sets from a lattice of {}",
                    m - 1,
                    1u64 << n
                )));
            }
            let mut all: Vec<SubsetMask> = (0..1u32 << n).map(SubsetMask::new).collect();
            all.sort();
            all.truncate((m - 1) as usize);
            Family::new(n, all)
        }
        CatalogPoset::Chain | CatalogPoset::Q => no_family(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::named_poset;
    use crate::saturation::{is_saturated, Mode};

    #[test]
    fn chains_shape_and_intersections() {
        let f = chains_construction(3, 1).unwrap();
        assert_eq!(f.len(), 4);
        let f = chains_construction(5, 3).unwrap();
        assert_eq!(f.len(), 14);
        assert!(matches!(
            chains_construction(2, 2),
            Err(Error::InvalidConstruction(_))
        ));

        // Interiors are pairwise disjoint: the union has full size.
        let n = 6;
        for k in 1..n {
            let f = chains_construction(n, k).unwrap();
            assert_eq!(f.len() as u32, k * (n - 1) + 2);
        }
    }

    #[test]
    fn antichain_shape() {
        let f = antichain_construction(5, 3).unwrap();
        assert_eq!(f.len(), 14);
        let f = antichain_construction(7, 3).unwrap();
        assert_eq!(f.len(), 20);
        assert!(antichain_construction(3, 3).is_err());
        assert!(antichain_construction(7, 4).is_err());
        assert!(antichain_construction(7, 1).is_err());
    }

    #[test]
    fn n_family_matches_the_quoted_sets() {
        let f = n_construction(3).unwrap();
        let want = Family::from_sets(
            3,
            &[
                vec![],
                vec![1],
                vec![2],
                vec![3],
                vec![1, 2],
                vec![1, 2, 3],
            ],
        )
        .unwrap();
        assert_eq!(f, want);
        assert_eq!(n_construction(5).unwrap().len(), 10);
        assert!(n_construction(2).is_err());
    }

    #[test]
    fn butterfly_shape() {
        assert_eq!(butterfly_construction(3).unwrap().len(), 8);
        assert_eq!(butterfly_construction(5).unwrap().len(), 19);
        assert!(butterfly_construction(2).is_err());
    }

    #[test]
    fn diamond_interior_shape() {
        let f = diamond_interior_construction(4).unwrap();
        assert_eq!(f.len(), 8);
        assert!(!f.contains(SubsetMask::EMPTY));
        assert!(!f.contains(SubsetMask::full(4)));
        assert!(diamond_interior_construction(3).is_err());
    }

    #[test]
    fn q_example_shape() {
        let f = q_example_construction(10).unwrap();
        assert_eq!(f.len(), 4);
        assert!(q_example_construction(2).is_err());
    }

    #[test]
    fn weak_catalog_families() {
        let v = weak_sat_construction(CatalogPoset::V, Some(2), 4).unwrap();
        assert_eq!(v, Family::from_sets(4, &[vec![], vec![1]]).unwrap());
        let l = weak_sat_construction(CatalogPoset::Lambda, Some(2), 4).unwrap();
        assert_eq!(l, v.complement_family());
        let b = weak_sat_construction(CatalogPoset::Butterfly, None, 4).unwrap();
        assert_eq!(b.len(), 4);
        let a = weak_sat_construction(CatalogPoset::Antichain, Some(4), 5).unwrap();
        assert_eq!(a.len(), 3);
        assert!(weak_sat_construction(CatalogPoset::Q, None, 4).is_err());
        assert!(weak_sat_construction(CatalogPoset::V, Some(3), 4).is_err());
        assert!(weak_sat_construction(CatalogPoset::Antichain, None, 4).is_err());
    }

    #[test]
    fn small_instances_verify_saturated() {
        let n3 = n_construction(3).unwrap();
        let n_target = named_poset("N", None).unwrap();
        assert!(is_saturated(&n3, &n_target, Mode::Induced));

        let q = q_example_construction(4).unwrap();
        let q_target = named_poset("Q", None).unwrap();
        assert!(is_saturated(&q, &q_target, Mode::Induced));

        let w = weak_sat_construction(CatalogPoset::Diamond, Some(2), 3).unwrap();
        let d2 = named_poset("diamond", Some(2)).unwrap();
        assert!(is_saturated(&w, &d2, Mode::Weak));
    }
}

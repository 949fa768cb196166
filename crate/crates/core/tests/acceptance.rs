//! The toolkit's acceptance checks: exact reproduction of the known
//! small-ground saturation values, the construction verification grid, the
//! biclique-cover machinery, and the recorded exact data points. Each
//! criterion prints a single PASS or FAIL line (visible with
//! `--nocapture`); computed data points are printed separately before it.

use itertools::Itertools;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use posat_core::{
    antichain_construction, butterfly_construction, chains_construction,
    diamond_interior_construction, family_size_lower_bound, is_saturated, minimum_saturated,
    n_construction, named_poset, q_example_construction, separates_all_pairs, uctp_lower_bound,
    Family, MaskRestriction, Mode, SearchOptions, SeparabilityGraph, SubsetMask,
};

fn report(k: u32, what: &str, ok: bool) {
    println!("ACCEPTANCE {k} {what}: {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "acceptance criterion {k} failed: {what}");
}

fn search(n: u32, spec: &str, mode: Mode, opts: &SearchOptions) -> Option<u64> {
    let target = named_poset(spec, None).unwrap();
    minimum_saturated(n, &target, mode, opts).unwrap().value
}

#[test]
fn acceptance_01_fan_and_dual_minimum_is_n_plus_1() {
    let mut ok = true;
    for spec in ["V-2", "Lambda-2"] {
        for n in 2..=4u32 {
            let got = search(n, spec, Mode::Induced, &SearchOptions::default());
            ok &= got == Some(n as u64 + 1);
        }
    }
    report(1, "induced minimum for V-2 and Lambda-2 equals n+1 at n=2..4", ok);
}

#[test]
fn acceptance_02_small_antichain_exact_values() {
    let mut ok = true;
    for n in 2..=4u32 {
        ok &= search(n, "antichain-2", Mode::Induced, &SearchOptions::default())
            == Some(n as u64 + 1);
    }
    for n in 3..=4u32 {
        ok &= search(n, "antichain-3", Mode::Induced, &SearchOptions::default())
            == Some(2 * n as u64);
    }
    report(
        2,
        "induced minima: antichain-2 equals n+1 at n=2..4, antichain-3 equals 2n at n=3..4",
        ok,
    );
}

#[test]
fn acceptance_03_weak_minimum_catalog() {
    let cases: [(&str, u64); 7] = [
        ("V-2", 2),
        ("Lambda-2", 2),
        ("diamond-2", 3),
        ("N", 3),
        ("butterfly", 4),
        ("antichain-3", 2),
        ("antichain-4", 3),
    ];
    let mut ok = true;
    for (spec, want) in cases {
        for n in 3..=4u32 {
            ok &= search(n, spec, Mode::Weak, &SearchOptions::default()) == Some(want);
        }
    }
    report(
        3,
        "weak minima at n=3,4: 2 (V-2, Lambda-2), 3 (diamond-2, N), 4 (butterfly), k (antichain-(k+1))",
        ok,
    );
}

#[test]
fn acceptance_04_construction_verification_grid() {
    let mut ok = true;
    let check = |f: &Family, spec: &str, mode: Mode, expect_size: u64, what: &str| -> bool {
        let target = named_poset(spec, None).unwrap();
        let good = f.len() as u64 == expect_size && is_saturated(f, &target, mode);
        if !good {
            println!("ACCEPTANCE 4 detail: {what} failed (size {})", f.len());
        }
        good
    };

    for k in 1..=3u32 {
        for n in (k + 1)..=10 {
            let f = chains_construction(n, k).unwrap();
            let size = k as u64 * (n as u64 - 1) + 2;
            for head in ["antichain", "V", "Lambda", "diamond"] {
                let spec = format!("{head}-{}", k + 1);
                ok &= check(&f, &spec, Mode::Induced, size, &format!("chains n={n} k={k} vs {spec}"));
            }
        }
    }
    for n in 4..=8u32 {
        let f = antichain_construction(n, 3).unwrap();
        ok &= check(
            &f,
            "antichain-4",
            Mode::Induced,
            8 + 3 * (n as u64 - 3),
            &format!("antichain family n={n}"),
        );
    }
    for n in 3..=12u32 {
        let f = n_construction(n).unwrap();
        ok &= check(&f, "N", Mode::Induced, 2 * n as u64, &format!("n_construction n={n}"));
    }
    for n in 3..=9u32 {
        let f = butterfly_construction(n).unwrap();
        let size = n as u64 * (n as u64 - 1) / 2 + 2 * n as u64 - 1;
        ok &= check(&f, "butterfly", Mode::Induced, size, &format!("butterfly family n={n}"));
    }
    for n in 4..=10u32 {
        let f = diamond_interior_construction(n).unwrap();
        let interior = !f.contains(SubsetMask::EMPTY) && !f.contains(SubsetMask::full(n));
        if !interior {
            println!("ACCEPTANCE 4 detail: diamond interior n={n} touches an extreme");
        }
        ok &= interior;
        ok &= check(&f, "diamond-2", Mode::Induced, 2 * n as u64, &format!("diamond interior n={n}"));
    }
    for n in 3..=10u32 {
        let f = q_example_construction(n).unwrap();
        ok &= check(&f, "Q", Mode::Induced, 4, &format!("q example n={n}"));
    }
    report(4, "every construction has its closed-form size and verifies saturated", ok);
}

/// Unpruned reference: enumerate covers by size over every biclique of the
/// graph.
fn oracle_bc(n: u32, edges: &[(u32, u32)]) -> usize {
    if edges.is_empty() {
        return 0;
    }
    let mut adj = vec![0u32; n as usize];
    for &(x, y) in edges {
        adj[(x - 1) as usize] |= 1 << (y - 1);
        adj[(y - 1) as usize] |= 1 << (x - 1);
    }
    let complete = |a: u32, b: u32| {
        (0..n).all(|v| a & (1 << v) == 0 || b & !adj[v as usize] == 0)
    };
    let edge_bit = |x: u32, y: u32| {
        edges
            .iter()
            .position(|&e| e == (x.min(y), x.max(y)))
            .unwrap()
    };
    let full_mask = (1u64 << edges.len()) - 1;

    let mut biclique_edges: Vec<u64> = Vec::new();
    for a in 1u32..(1 << n) {
        let comp = !a & ((1u32 << n) - 1);
        let mut b = comp;
        while b != 0 {
            if a < b && complete(a, b) && complete(b, a) {
                let mut mask = 0u64;
                for x in 1..=n {
                    for y in 1..=n {
                        if a & (1 << (x - 1)) != 0 && b & (1 << (y - 1)) != 0 {
                            mask |= 1 << edge_bit(x, y);
                        }
                    }
                }
                if mask != 0 {
                    biclique_edges.push(mask);
                }
            }
            b = (b - 1) & comp;
        }
    }
    for t in 1..=edges.len() {
        for combo in (0..biclique_edges.len()).combinations(t) {
            if combo.iter().fold(0u64, |m, &i| m | biclique_edges[i]) == full_mask {
                return t;
            }
        }
    }
    unreachable!("single-edge bicliques always cover");
}

#[test]
fn acceptance_05_biclique_cover_machinery() {
    let mut ok = true;
    for n in 2..=8u32 {
        let g = SeparabilityGraph::complete(n).unwrap();
        let (value, _) = posat_core::bc_exact(&g).unwrap();
        ok &= value as u32 == 32 - (n - 1).leading_zeros();
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for _ in 0..100 {
        let len = rng.gen_range(0..=20u32);
        let mut masks: Vec<u32> = (0..1u32 << 6).collect();
        masks.shuffle(&mut rng);
        masks.truncate(len as usize);
        let f = Family::new(6, masks.into_iter().map(SubsetMask::new).collect()).unwrap();
        ok &= family_size_lower_bound(&f).unwrap() <= f.len();
    }

    'graphs: for n in 1..=5u32 {
        let pairs: Vec<(u32, u32)> = (1..=n)
            .flat_map(|x| ((x + 1)..=n).map(move |y| (x, y)))
            .collect();
        for picks in 0u32..(1 << pairs.len()) {
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| picks & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            let g = SeparabilityGraph::new(n, &edges).unwrap();
            if posat_core::bc_exact(&g).unwrap().0 != oracle_bc(n, &edges) {
                println!("ACCEPTANCE 5 detail: oracle mismatch on n={n}, edges {edges:?}");
                ok = false;
                break 'graphs;
            }
        }
    }
    report(
        5,
        "biclique covers: log law on complete graphs, bound <= family size on 100 random families, oracle parity on all 5-vertex graphs",
        ok,
    );
}

#[test]
fn acceptance_06_log_bound_and_pair_separation_for_cover_twin_targets() {
    let specs = ["V-2", "Lambda-2", "diamond-2", "N", "butterfly", "antichain-3"];
    let opts = SearchOptions {
        symmetry: false,
        theorem_pruning: false,
        collect_all_minima: true,
        ..SearchOptions::default()
    };
    let mut ok = true;
    for spec in specs {
        let target = named_poset(spec, None).unwrap();
        ok &= target.uctp().class_member;
        for n in 3..=4u32 {
            let bound = uctp_lower_bound(&target, n) as u64;
            let r = minimum_saturated(n, &target, Mode::Induced, &opts).unwrap();
            let value = r.value.expect("catalog targets embed at n=3,4");
            let minima = r.all_minimum_certificates.expect("collection requested");
            let good = value >= bound
                && !minima.is_empty()
                && minima.iter().all(separates_all_pairs)
                && minima.iter().all(|f| is_saturated(f, &target, Mode::Induced));
            if !good {
                println!("ACCEPTANCE 6 detail: {spec} n={n} value={value} bound={bound}");
            }
            ok &= good;
        }
    }
    report(
        6,
        "every minimum induced-saturated family for the cover-twin catalog separates all pairs and meets the log bound",
        ok,
    );
}

#[test]
fn acceptance_07_antichain4_gap_and_exact_value() {
    let capped = SearchOptions {
        max_size: Some(10),
        theorem_pruning: false,
        ..SearchOptions::default()
    };
    let none_small = search(4, "antichain-4", Mode::Induced, &capped).is_none();

    let full = search(4, "antichain-4", Mode::Induced, &SearchOptions::default());
    println!(
        "ACCEPTANCE 7 data point: exact induced minimum for antichain-4 at n=4 = {:?}",
        full
    );

    // The rotated-chains family gives the matching upper bound.
    let upper = chains_construction(4, 3).unwrap();
    let a4 = named_poset("antichain-4", None).unwrap();
    let upper_ok = upper.len() == 11 && is_saturated(&upper, &a4, Mode::Induced);

    report(
        7,
        "no induced antichain-4 saturated family of size <= 10 at n=4; exact value recorded",
        none_small && upper_ok && full == Some(11),
    );
}

#[test]
fn acceptance_08_extreme_bearing_families_need_more_than_n_sets() {
    let mut ok = true;
    for n in 3..=4u32 {
        let opts = SearchOptions {
            restriction: MaskRestriction::RequireExtreme,
            max_size: Some(n as usize),
            theorem_pruning: false,
            ..SearchOptions::default()
        };
        let r = search(n, "diamond-2", Mode::Induced, &opts);
        ok &= r.is_none();
    }
    report(
        8,
        "no induced diamond-2 saturated family of size <= n contains the empty or full set at n=3,4",
        ok,
    );
}

#[test]
fn acceptance_09_non_monotone_example_pair() {
    let q = named_poset("Q", None).unwrap();
    let mut ok = true;
    for n in 4..=10u32 {
        let f = q_example_construction(n).unwrap();
        ok &= f.len() == 4 && is_saturated(&f, &q, Mode::Induced);
        ok &= 4 < n as u64 + 1;
    }
    // Anchor the comparison's right side exhaustively at n=4.
    ok &= search(4, "antichain-2", Mode::Induced, &SearchOptions::default()) == Some(5);
    report(
        9,
        "the 4-set Q family stays saturated for n=4..10 while the antichain-2 minimum n+1 grows past it",
        ok,
    );
}

#[test]
fn acceptance_10_interior_diamond_minima_recorded() {
    let d2 = named_poset("diamond-2", None).unwrap();
    let mut ok = true;

    // Witness families give self-contained upper bounds: the six proper
    // nonempty subsets at n=3, the interior construction at n=4.
    let middle: Vec<SubsetMask> = (1u32..7).map(SubsetMask::new).collect();
    let middle = Family::new(3, middle).unwrap();
    ok &= is_saturated(&middle, &d2, Mode::Induced);
    let interior4 = diamond_interior_construction(4).unwrap();
    ok &= is_saturated(&interior4, &d2, Mode::Induced);

    for (n, upper) in [(3u32, 6u64), (4, 8)] {
        let opts = SearchOptions {
            restriction: MaskRestriction::AvoidExtremes,
            ..SearchOptions::default()
        };
        let r = minimum_saturated(n, &d2, Mode::Induced, &opts).unwrap();
        let value = r.value.expect("interior witnesses exist");
        println!(
            "ACCEPTANCE 10 data point: interior induced minimum for diamond-2 at n={n} = {value} (2n = {})",
            2 * n
        );
        let cert = r.certificate.unwrap();
        ok &= value <= upper
            && r.exhaustive
            && !cert.contains(SubsetMask::EMPTY)
            && !cert.contains(SubsetMask::full(n))
            && is_saturated(&cert, &d2, Mode::Induced);
    }
    report(
        10,
        "exact interior minima for induced diamond-2 at n=3,4 computed and recorded",
        ok,
    );
}

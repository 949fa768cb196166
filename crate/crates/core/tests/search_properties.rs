//! Behavioral contracts of the minimum search: worker-count independence,
//! pruning parity, size-cap monotonicity, certificate validity, and the
//! restricted-search semantics.

use posat_core::{
    is_saturated, minimum_saturated, named_poset, Family, MaskRestriction, Mode, SearchOptions,
    SubsetMask,
};

#[test]
fn results_do_not_depend_on_worker_count() {
    let cases = [
        ("V-2", Mode::Induced, 3),
        ("antichain-3", Mode::Induced, 3),
        ("N", Mode::Induced, 3),
        ("diamond-2", Mode::Weak, 4),
    ];
    for (spec, mode, n) in cases {
        let target = named_poset(spec, None).unwrap();
        let runs: Vec<_> = [None, Some(1), Some(2), Some(4)]
            .into_iter()
            .map(|threads| {
                let opts = SearchOptions {
                    threads,
                    collect_all_minima: true,
                    ..SearchOptions::default()
                };
                minimum_saturated(n, &target, mode, &opts).unwrap()
            })
            .collect();
        for r in &runs[1..] {
            assert_eq!(r, &runs[0], "{spec} {mode:?} differs across worker counts");
        }
    }
}

#[test]
fn pruning_changes_work_but_not_answers() {
    for spec in ["V-2", "Lambda-2", "antichain-2", "diamond-2", "N", "Q"] {
        let target = named_poset(spec, None).unwrap();
        for mode in [Mode::Weak, Mode::Induced] {
            let pruned =
                minimum_saturated(3, &target, mode, &SearchOptions::default()).unwrap();
            let plain = SearchOptions {
                symmetry: false,
                theorem_pruning: false,
                ..SearchOptions::default()
            };
            let unpruned = minimum_saturated(3, &target, mode, &plain).unwrap();
            assert_eq!(pruned.value, unpruned.value, "{spec} {mode:?}");
            assert_eq!(pruned.certificate, unpruned.certificate, "{spec} {mode:?}");
            assert!(pruned.families_examined <= unpruned.families_examined);
            assert!(!unpruned.pruning.symmetry && !unpruned.pruning.uctp);
        }
    }
}

#[test]
fn certificates_are_saturated_and_caps_are_monotone() {
    for (spec, mode) in [
        ("V-2", Mode::Induced),
        ("antichain-3", Mode::Induced),
        ("butterfly", Mode::Weak),
        ("N", Mode::Weak),
    ] {
        let target = named_poset(spec, None).unwrap();
        let full = minimum_saturated(4, &target, mode, &SearchOptions::default()).unwrap();
        let value = full.value.expect("catalog targets embed at n=4") as usize;
        let cert = full.certificate.expect("value implies certificate");
        assert_eq!(cert.len(), value);
        assert!(is_saturated(&cert, &target, mode), "{spec} {mode:?}");

        // A cap below the value proves absence; at the value it recovers
        // the same certificate.
        let below = SearchOptions {
            max_size: Some(value - 1),
            ..SearchOptions::default()
        };
        let r = minimum_saturated(4, &target, mode, &below).unwrap();
        assert_eq!(r.value, None, "{spec} {mode:?} capped below the minimum");
        let at = SearchOptions {
            max_size: Some(value),
            ..SearchOptions::default()
        };
        let r = minimum_saturated(4, &target, mode, &at).unwrap();
        assert_eq!(r.value, Some(value as u64));
        assert_eq!(r.certificate, Some(cert));
    }
}

#[test]
fn theorem_pruning_only_skips_sizes_below_the_bound() {
    for spec in ["V-2", "diamond-2", "antichain-3"] {
        let target = named_poset(spec, None).unwrap();
        for n in [3, 4] {
            let with = minimum_saturated(n, &target, Mode::Induced, &SearchOptions::default())
                .unwrap();
            let without = minimum_saturated(
                n,
                &target,
                Mode::Induced,
                &SearchOptions {
                    theorem_pruning: false,
                    ..SearchOptions::default()
                },
            )
            .unwrap();
            assert_eq!(with.value, without.value, "{spec} n={n}");
            assert_eq!(with.certificate, without.certificate);
            assert!(with.pruning.uctp && !without.pruning.uctp);
            assert_eq!(with.lower_start, 2, "{spec} n={n} starts at the log bound");
            assert_eq!(without.lower_start, 1);
        }
    }
}

#[test]
fn weak_mode_vacuous_case_returns_the_full_lattice() {
    let tall = named_poset("antichain", Some(5)).unwrap();
    let r = minimum_saturated(2, &tall, Mode::Weak, &SearchOptions::default()).unwrap();
    assert_eq!(r.value, Some(4));
    assert_eq!(r.certificate, Some(Family::full_lattice(2)));
}

#[test]
fn collected_minima_are_exactly_the_saturated_families_of_minimum_size() {
    let target = named_poset("V-2", None).unwrap();
    let opts = SearchOptions {
        symmetry: false,
        theorem_pruning: false,
        collect_all_minima: true,
        ..SearchOptions::default()
    };
    let r = minimum_saturated(3, &target, Mode::Induced, &opts).unwrap();
    let value = r.value.unwrap();
    let all = r.all_minimum_certificates.unwrap();
    assert!(all.contains(r.certificate.as_ref().unwrap()));
    assert_eq!(r.certificate.as_ref(), all.first());
    for f in &all {
        assert_eq!(f.len() as u64, value);
        assert!(is_saturated(f, &target, Mode::Induced));
    }
    for w in all.windows(2) {
        assert!(w[0] != w[1], "minima are pairwise distinct");
    }

    // Independent count: enumerate every family of the minimum size.
    let mut count = 0;
    let pool: Vec<SubsetMask> = (0..8u32).map(SubsetMask::new).collect();
    let mut combo = Vec::new();
    fn walk(
        pool: &[SubsetMask],
        start: usize,
        need: usize,
        combo: &mut Vec<SubsetMask>,
        hit: &mut dyn FnMut(&[SubsetMask]),
    ) {
        if need == 0 {
            hit(combo);
            return;
        }
        for i in start..=pool.len().saturating_sub(need) {
            combo.push(pool[i]);
            walk(pool, i + 1, need - 1, combo, hit);
            combo.pop();
        }
    }
    walk(&pool, 0, value as usize, &mut combo, &mut |masks| {
        let f = Family::new(3, masks.to_vec()).unwrap();
        if is_saturated(&f, &target, Mode::Induced) {
            count += 1;
        }
    });
    assert_eq!(all.len(), count);
}

#[test]
fn restricted_searches_respect_their_mask_classes() {
    let d2 = named_poset("diamond-2", None).unwrap();

    let avoid = SearchOptions {
        restriction: MaskRestriction::AvoidExtremes,
        ..SearchOptions::default()
    };
    let r = minimum_saturated(4, &d2, Mode::Induced, &avoid).unwrap();
    let cert = r.certificate.expect("interior-saturated families exist");
    assert!(!cert.contains(SubsetMask::EMPTY));
    assert!(!cert.contains(SubsetMask::full(4)));
    assert!(is_saturated(&cert, &d2, Mode::Induced));

    // Any saturated family containing an extreme needs more than n sets.
    let require = SearchOptions {
        restriction: MaskRestriction::RequireExtreme,
        theorem_pruning: false,
        ..SearchOptions::default()
    };
    for n in [3, 4] {
        let r = minimum_saturated(n, &d2, Mode::Induced, &require).unwrap();
        let value = r.value.expect("extend an extreme-containing free family");
        assert!(value > n as u64, "n={n}: got {value}");
        let cert = r.certificate.unwrap();
        assert!(cert.contains(SubsetMask::EMPTY) || cert.contains(SubsetMask::full(n)));
    }
}

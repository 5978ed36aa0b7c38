//! Acceptance suite: one test per top-level claim, so `cargo test` prints
//! one pass/fail line for each.  Every check is exact; the timing bounds
//! are generous desk-scale budgets.

use djt::determinant::{jt_det_e, jt_det_h};
use djt::folding::{
    enumerate_p, enumerate_p2, phi, phi_t, phi_t_inv, pi_inv_q1, q_conditions, t0, third_sum,
};
use djt::graphs::{
    all_graphs, build_overlap_graph, dual_graph, has_odd_segment, lemma_a2_rhs, segments,
};
use djt::partition::{Partition, SkewDiagram};
use djt::paths::{
    enumerate_tuples, first_sum, iota1, path_sum_e, signed_total_sum, PathTuple, TupleMode,
};
use djt::regions::{
    components, epsilon_k, iota2, p2_membership, positive_sum_p2, project_pi,
    region_parity, regions, unit_adjacent, unit_class, HPair, RegionClass, Unit, UnitClass,
};
use djt::ring::eq_in_z;
use djt::series::{e_poly, series_e, series_h, series_mul};
use djt::tableaux::{
    enumerate_hv, extra_rule_lu, extra_rule_paths, rule_e1r, rule_e2c, rule_e2r, rule_e3r,
    tableau_sum,
};
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

/// All skew diagrams with the outer shape inside a rows x cols box.
fn all_skew(rows: u32, cols: u32) -> Vec<SkewDiagram> {
    let mut out = vec![];
    for l in Partition::all_in_box(rows, cols) {
        for m in Partition::all_in_box(rows, cols) {
            if let Ok(d) = SkewDiagram::new(l.clone(), m) {
                out.push(d);
            }
        }
    }
    out
}

fn assert_budget(start: Instant, budget: Duration) {
    let used = start.elapsed();
    assert!(used < budget, "exceeded time budget: {used:?} > {budget:?}");
}

/// Deterministic linear congruential sampler for the randomized suites.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }
}

#[test]
fn criterion_01_series_duality() {
    let start = Instant::now();
    let k = 5;
    for n in [2u8, 3, 4] {
        let prod = series_mul(&series_h(n, k), &series_e(n, k).negate_x()).unwrap();
        assert_eq!(*prod.coeff(0), djt::ring::ZPolynomial::one(), "n={n}");
        for m in 1..=k {
            assert!(prod.coeff(m).is_zero(), "n={n} degree {m}");
        }
    }
    assert_budget(start, Duration::from_secs(5));
}

#[test]
fn criterion_02_path_series_agreement() {
    let start = Instant::now();
    for n in [2u8, 3] {
        for r in 0..=4i64 {
            for k in -2..=2i32 {
                let lhs = path_sum_e(r, k, n);
                let rhs = e_poly(r, k, n, 6).unwrap();
                assert_eq!(lhs, rhs, "n={n} r={r} k={k}");
            }
        }
    }
    assert_budget(start, Duration::from_secs(5));
}

#[test]
fn criterion_03_determinant_identity() {
    let start = Instant::now();
    for n in [2u8, 3] {
        for d in all_skew(3, 3) {
            let h = jt_det_h(&d, n);
            let e = jt_det_e(&d, n);
            assert!(eq_in_z(&h, &e, n), "h/e determinants differ on {d} at n={n}");
        }
    }
    assert_budget(start, Duration::from_secs(60));
}

#[test]
fn criterion_04_gv_cancellation() {
    let start = Instant::now();
    let mut cases: Vec<(SkewDiagram, u8)> = all_skew(2, 2).into_iter().map(|d| (d, 2)).collect();
    for n in [2u8, 3] {
        cases.extend(all_skew(2, 3).into_iter().map(move |d| (d, n)));
    }
    for (d, n) in cases {
        let signed = signed_total_sum(&d, n).unwrap();
        let first = first_sum(&d, n).unwrap();
        assert!(
            signed.sub(&first).is_zero(),
            "signed and first sums differ in the free ring on {d} at n={n}"
        );
        let det = jt_det_h(&d, n);
        assert!(
            eq_in_z(&first, &det, n),
            "first sum and determinant differ on {d} at n={n}"
        );
    }
    assert_budget(start, Duration::from_secs(60));
}

#[test]
fn criterion_05_involution_suites() {
    let start = Instant::now();
    let n = 2u8;
    for d in all_skew(2, 2) {
        // iota1 on every tuple with an ordinary intersection: free ring.
        for t in enumerate_tuples(&d, n, TupleMode::All).unwrap() {
            if t.first_ordinary_pair().is_none() {
                continue;
            }
            let u = iota1(&t).unwrap();
            assert_eq!(u.sign(), -t.sign(), "iota1 sign on {d}");
            assert_eq!(u.weight(n), t.weight(n), "iota1 weight on {d}");
            assert_eq!(iota1(&u).unwrap(), t, "iota1 involution on {d}");
        }
        // iota2 on every non-ordinary tuple with an odd region: eq_in_Z.
        for t in enumerate_tuples(&d, n, TupleMode::NoOrdinary).unwrap() {
            if p2_membership(&t, n).unwrap() {
                continue;
            }
            let u = iota2(&t, n).unwrap();
            assert_eq!(u.sign(), -t.sign(), "iota2 sign on {d}");
            assert_eq!(
                u.weight(n).specialize(n),
                t.weight(n).specialize(n),
                "iota2 specialized weight on {d}"
            );
            assert_eq!(iota2(&u, n).unwrap(), t, "iota2 involution on {d}");
        }
    }
    assert_budget(start, Duration::from_secs(30));
}

/// The family shared by the positive-sum, folding, and tableau criteria.
fn positive_family() -> Vec<(SkewDiagram, u8)> {
    let mut out = vec![];
    for n in [2u8, 3] {
        for d in all_skew(2, 3) {
            if d.positivity_condition(n) {
                out.push((d, n));
            }
        }
    }
    out
}

#[test]
fn criterion_06_positive_sum() {
    let start = Instant::now();
    for (d, n) in positive_family() {
        let pos = positive_sum_p2(&d, n).unwrap();
        let det = jt_det_h(&d, n);
        assert!(
            eq_in_z(&pos, &det, n),
            "positive sum and determinant differ on {d} at n={n}"
        );
    }
    assert_budget(start, Duration::from_secs(60));
}

fn specialized_weights(ts: &[PathTuple], n: u8) -> Vec<String> {
    let mut w: Vec<String> = ts
        .iter()
        .map(|t| format!("{:?}", t.weight(n).specialize(n)))
        .collect();
    w.sort();
    w
}

#[test]
fn criterion_07_folding_map() {
    let start = Instant::now();
    for (d, n) in positive_family() {
        let p2 = enumerate_p2(&d, n).unwrap();
        let p = enumerate_p(&d, n).unwrap();
        assert_eq!(p2.len(), p.len(), "family sizes differ on {d} at n={n}");
        let mut images: Vec<PathTuple> = p2.iter().map(|t| phi(t, n).unwrap()).collect();
        assert_eq!(
            specialized_weights(&p2, n),
            specialized_weights(&p, n),
            "specialized weight multisets differ on {d} at n={n}"
        );
        images.sort();
        images.dedup();
        let mut target = p.clone();
        target.sort();
        assert_eq!(images, target, "phi is not onto/injective on {d} at n={n}");
        let third = third_sum(&d, n).unwrap();
        assert!(
            eq_in_z(&third, &jt_det_h(&d, n), n),
            "non-crossing sum and determinant differ on {d} at n={n}"
        );
        // Inverse round-trip through the tower stages and the pairing maps.
        for t in &p2 {
            let mut h = project_pi(t, n).unwrap();
            let l = h.l();
            if l == 0 {
                continue;
            }
            let mut stages = vec![];
            let mut s = 1u32;
            while s < t0(l) && q_conditions(&h, s).q_hat() {
                h = phi_t(&h, s).unwrap();
                stages.push(s);
                s += 1;
            }
            for &s in stages.iter().rev() {
                h = phi_t_inv(&h, s).unwrap();
            }
            let back = pi_inv_q1(&h).unwrap();
            assert_eq!(back, *t, "tower round-trip fails on {d} at n={n}");
        }
    }
    assert_budget(start, Duration::from_secs(120));
}

#[test]
fn criterion_08_tableau_theorems() {
    let start = Instant::now();
    for (d, n) in positive_family() {
        let p = enumerate_p(&d, n).unwrap();
        let tabs: Vec<_> = enumerate_hv(&d, n)
            .unwrap()
            .into_iter()
            .filter(|t| extra_rule_lu(t, n))
            .collect();
        // The tableau encoding is a bijection: exact free-ring weight match.
        assert_eq!(p.len(), tabs.len(), "tableau count differs on {d} at n={n}");
        let mut pw: Vec<_> = p.iter().map(|t| format!("{:?}", t.weight(n))).collect();
        let mut tw: Vec<_> = tabs.iter().map(|t| format!("{:?}", t.weight())).collect();
        pw.sort();
        tw.sort();
        assert_eq!(pw, tw, "free-ring weights differ on {d} at n={n}");
        let tab = tableau_sum(&d, n).unwrap();
        let det = jt_det_h(&d, n);
        assert!(
            eq_in_z(&tab, &det, n),
            "tableau sum and determinant differ on {d} at n={n}"
        );
    }
    // Fixture: nine admissible one-row two-cell tableaux at rank two.
    let d = SkewDiagram::straight(Partition::new(vec![2]).unwrap());
    let count = enumerate_hv(&d, 2)
        .unwrap()
        .into_iter()
        .filter(|t| extra_rule_lu(t, 2))
        .count();
    assert_eq!(count, 9);
    assert_budget(start, Duration::from_secs(60));
}

#[test]
fn criterion_09_rule_equivalence() {
    let start = Instant::now();
    for n in [2u8, 3, 4] {
        for d in all_skew(3, 3) {
            let rows = d.num_rows();
            let cols = d.num_cols();
            if rows > 3 && cols > 2 {
                continue;
            }
            for t in enumerate_hv(&d, n).unwrap() {
                let via_paths = extra_rule_paths(&t, n).unwrap();
                let via_lu = extra_rule_lu(&t, n);
                assert_eq!(via_paths, via_lu, "path/configuration rules differ on {d} n={n}");
                // The explicit lists, per shape class.
                if rows <= 1 {
                    assert_eq!(via_lu, rule_e1r(&t, n), "one-row list on {d} n={n}");
                }
                if rows == 2 {
                    assert_eq!(
                        via_lu,
                        rule_e1r(&t, n) && rule_e2r(&t, n).unwrap(),
                        "two-row lists on {d} n={n}"
                    );
                }
                if cols <= 2 {
                    assert_eq!(via_lu, rule_e2c(&t, n).unwrap(), "two-column list on {d} n={n}");
                }
                if rows == 3 {
                    assert_eq!(
                        via_lu,
                        rule_e1r(&t, n) && rule_e2r(&t, n).unwrap() && rule_e3r(&t, n).unwrap(),
                        "three-row lists on {d} n={n}"
                    );
                }
            }
        }
    }
    assert_budget(start, Duration::from_secs(120));
}

#[test]
fn criterion_10_arc_graphs() {
    let start = Instant::now();
    let mut total = 0usize;
    for nv in 0..=10 {
        for g in all_graphs(nv) {
            total += 1;
            let no_odd = !has_odd_segment(&g);
            let ends_differ = segments(&g).iter().all(|s| {
                g.label(*s.vertices.first().unwrap()) != g.label(*s.vertices.last().unwrap())
            });
            assert_eq!(no_odd, ends_differ, "end-label lemma fails on {g:?}");
            assert_eq!(no_odd, lemma_a2_rhs(&g), "dual-graph lemma fails on {g:?}");
            let _ = dual_graph(&g);
        }
    }
    assert!(total > 1000);
    // The overlap graph reproduces the typing conditions on the pipeline's
    // profile pairs.
    for (d, n) in positive_family() {
        for t in enumerate_p2(&d, n).unwrap() {
            let h = project_pi(&t, n).unwrap();
            for k in 2..=h.l() {
                let Ok(g) = build_overlap_graph(&h, k) else {
                    continue;
                };
                let no_odd = regions(&h, k - 1, RegionClass::I)
                    .iter()
                    .all(|v| region_parity(&h, v) % 2 == 0);
                assert_eq!(!has_odd_segment(&g), no_odd, "overlap graph on {d} n={n}");
                let rhs = typing_conditions(&h, k);
                assert_eq!(lemma_a2_rhs(&g), rhs, "typing conditions on {d} n={n}");
            }
        }
    }
    assert_budget(start, Duration::from_secs(30));
}

/// The three component-typing conditions at gap `k`, stated on components.
fn typing_conditions(h: &HPair, k: usize) -> bool {
    match djt::folding::lr_rl_typing(h, k) {
        Err(_) => false,
        Ok(ty) => {
            let regs = regions(h, k, RegionClass::II);
            components(h, k, RegionClass::II).iter().all(|(c, _)| {
                let types: BTreeSet<bool> = c
                    .units
                    .iter()
                    .filter(|u| u.rho == 0)
                    .map(|&u| ty.unit_is_lr(u))
                    .collect();
                types.len() <= 1
                    && (!types.contains(&true) || regs.iter().any(|r| r.units == c.units))
            })
        }
    }
}

#[test]
fn criterion_11_unit_calculus_lemmas() {
    let start = Instant::now();
    for n in [2u8, 3] {
        // Pool of profile pairs arising from positivity-satisfying shapes.
        let mut pool: Vec<HPair> = vec![];
        for d in all_skew(2, 3) {
            if !d.positivity_condition(n) {
                continue;
            }
            for t in enumerate_tuples(&d, n, TupleMode::NoOrdinary).unwrap() {
                pool.push(project_pi(&t, n).unwrap());
            }
        }
        assert!(pool.len() >= 500, "pool too small at n={n}");
        let mut rng = Lcg(42 + n as u64);
        for _ in 0..500 {
            let h = &pool[(rng.next() as usize) % pool.len()];
            check_unit_lemmas(h);
        }
    }
    assert_budget(start, Duration::from_secs(60));
}

fn check_unit_lemmas(h: &HPair) {
    let kmax = h.l().max(2);
    let mut classified: Vec<(Unit, usize, UnitClass)> = vec![];
    for k in 1..kmax {
        for klass in [RegionClass::I, RegionClass::II] {
            for (c, _) in components(h, k, klass) {
                for &u in &c.units {
                    classified.push((u, k, unit_class(h, u, k)));
                }
            }
        }
    }
    // Duals preserve the class, and no unit carries both classes at one gap.
    for &(u, k, c) in &classified {
        let cd = unit_class(h, u.dual(), k);
        assert_eq!(
            std::mem::discriminant(&c),
            std::mem::discriminant(&cd),
            "dual changed class of {u:?} at gap {k}"
        );
        if c == UnitClass::I {
            assert!(
                !matches!(unit_class(h, u, k + 1), UnitClass::II { .. }),
                "{u:?} is both class I at gap {k} and class II at gap {}",
                k + 1
            );
        }
    }
    // Class-I units at gap k never touch class-II units at gap k' <= k.
    for &(u, k, c) in &classified {
        if c != UnitClass::I {
            continue;
        }
        for &(w, k2, c2) in &classified {
            if k2 <= k && unit_adjacent(u, w) {
                assert!(
                    !matches!(c2, UnitClass::II { .. }),
                    "class-I {u:?} (gap {k}) adjacent to class-II {w:?} (gap {k2})"
                );
            }
        }
    }
    for k in 1..kmax {
        // Every region is closed under the dual map.
        for klass in [RegionClass::I, RegionClass::II] {
            for v in regions(h, k, klass) {
                assert!(v.is_self_dual(), "region not self-dual: {v:?}");
            }
        }
        // Folding a class-I region yields a class-II region and inverts.
        for v in regions(h, k, RegionClass::I) {
            let h2 = epsilon_k(h, &v, k).unwrap();
            assert!(
                regions(&h2, k, RegionClass::II)
                    .iter()
                    .any(|w| w.units == v.units),
                "folded region is not class II afterwards"
            );
            let back = epsilon_k(&h2, &v, k).unwrap();
            assert_eq!(back, *h, "folding is not an involution");
        }
        // Same-class regions across gaps are nested or disjoint.
        for klass in [RegionClass::I, RegionClass::II] {
            for k2 in k..kmax {
                for a in regions(h, k, klass) {
                    for b in regions(h, k2, klass) {
                        let inter: BTreeSet<_> =
                            a.units.intersection(&b.units).copied().collect();
                        assert!(
                            inter.is_empty()
                                || a.units.is_subset(&b.units)
                                || b.units.is_subset(&a.units),
                            "regions neither nested nor disjoint"
                        );
                    }
                }
            }
        }
    }
}

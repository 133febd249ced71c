//! Acceptance gate: one test per criterion, each printing a PASS line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use localmodel::admissible::{adm, adm_parahoric, point_count_poly, ParahoricSubgroup, QPoly};
use localmodel::affine_weyl::{
    bruhat_leq_by_subwords, make_iwahori_weyl, Caps, ExtAffineWeylGroup,
};
use localmodel::classical_catalog::catalog;
use localmodel::galois_lattice::{
    cyclic_h1, cyclic_h1_order_by_divisors, cyclic_h2, cyclic_h2_order_by_divisors, kottwitz_pi1,
    FgAbelianGroup, LatticeWithAction,
};
use localmodel::hecke::{z_mu_support, HeckeAlgebra};
use localmodel::intmat::Mat;
use localmodel::lattice_chain::{
    compare_with_admissible, enumerate_gl_points, enumerate_gsp_points, ChainShape,
};
use localmodel::root_data::{
    build_root_datum, pinned_automorphism, pinned_identity, two_rho_pairing, AutKind, AutName,
    Family, GroupSpec,
};

fn split_group(family: Family, rank: usize) -> ExtAffineWeylGroup {
    let rd = build_root_datum(&GroupSpec::new(family, rank)).unwrap();
    let gamma = pinned_identity(&rd);
    make_iwahori_weyl(&rd, &gamma, Caps::default()).unwrap()
}

#[test]
fn acceptance_01_gl2_chain_counts_match_the_cell_polynomial() {
    let shape = ChainShape::maximal(2, false).unwrap();
    let group = split_group(Family::Gl, 2);
    let poly = point_count_poly(&group, &[1, 0], &ParahoricSubgroup::iwahori()).unwrap();
    for (q, expected) in [(2u64, 5u64), (3, 7)] {
        let (geometric, _) = enumerate_gl_points(&shape, 1, q as usize, false).unwrap();
        assert_eq!(geometric, expected, "geometric count at q={q}");
        assert_eq!(poly.eval(q as i64), expected as i64, "cell count at q={q}");
    }
    println!("ACCEPTANCE 1: PASS");
}

#[test]
fn acceptance_02_gl3_chain_count_matches_the_cell_polynomial() {
    let shape = ChainShape::maximal(3, false).unwrap();
    let (geometric, _) = enumerate_gl_points(&shape, 1, 2, false).unwrap();
    assert_eq!(geometric, 19);
    let group = split_group(Family::Gl, 3);
    let poly = point_count_poly(&group, &[1, 0, 0], &ParahoricSubgroup::iwahori()).unwrap();
    assert_eq!(poly, QPoly::from_counts(&[1, 3, 3]));
    assert_eq!(poly.eval(2), 19);
    println!("ACCEPTANCE 2: PASS");
}

#[test]
fn acceptance_03_gsp4_chain_counts_match_at_both_levels() {
    let single = ChainShape::single(4, true).unwrap();
    let report = compare_with_admissible(&single, 2, 2).unwrap();
    assert!(report.matched);
    assert_eq!(report.geometric, 15);

    let maximal = ChainShape::maximal(4, true).unwrap();
    let report = compare_with_admissible(&maximal, 2, 2).unwrap();
    assert!(report.matched);
    assert_eq!(report.geometric, 59);
    assert_eq!(report.poly, QPoly::from_counts(&[1, 3, 5, 4]));
    println!("ACCEPTANCE 3: PASS");
}

#[test]
fn acceptance_04_translation_lengths_follow_the_dimension_law() {
    let configs = [
        (Family::A, 1),
        (Family::A, 2),
        (Family::A, 3),
        (Family::B, 2),
        (Family::B, 3),
        (Family::C, 2),
        (Family::C, 3),
        (Family::D, 3),
        (Family::Gl, 2),
        (Family::Gl, 3),
        (Family::Gsp, 4),
    ];
    let mut checked = 0usize;
    for (family, n) in configs {
        let rd = build_root_datum(&GroupSpec::new(family, n)).unwrap();
        let group = split_group(family, n);
        let rank = rd.rank;
        // Every cocharacter with |mu_i| <= 3 and total size <= 3.
        let mut mu = vec![-3i64; rank];
        loop {
            let size: i64 = mu.iter().map(|x| x.abs()).sum();
            if size <= 3 && rd.is_dominant(&mu) {
                let t = group.translation_of_cocharacter(&mu).unwrap();
                assert_eq!(
                    group.length(&t),
                    two_rho_pairing(&rd, &mu).unwrap(),
                    "{family:?} rank {n}, mu = {mu:?}"
                );
                checked += 1;
            }
            let mut i = 0;
            while i < rank && mu[i] == 3 {
                mu[i] = -3;
                i += 1;
            }
            if i == rank {
                break;
            }
            mu[i] += 1;
        }
    }
    assert!(checked > 50, "the sweep must be non-trivial, got {checked}");
    println!("ACCEPTANCE 4: PASS");
}

#[test]
fn acceptance_05_bruhat_recursion_agrees_with_the_subword_oracle() {
    for (family, rank) in [(Family::A, 1), (Family::A, 2), (Family::C, 2)] {
        let group = split_group(family, rank);
        let ball = group.ball(6, 0).unwrap();
        for a in &ball {
            for b in &ball {
                assert_eq!(
                    group.bruhat_leq(a, b).unwrap(),
                    bruhat_leq_by_subwords(&group, a, b),
                    "{family:?} rank {rank}"
                );
            }
        }
    }
    println!("ACCEPTANCE 5: PASS");
}

#[test]
fn acceptance_06_admissible_sets_are_downward_closed_with_translation_crest() {
    let cases: [(Family, usize, Vec<i64>); 4] = [
        (Family::Gl, 2, vec![1, 0]),
        (Family::Gl, 3, vec![1, 0, 0]),
        (Family::Gl, 3, vec![1, 1, 0]),
        (Family::Gsp, 4, vec![1, 1, 1]),
    ];
    for (family, n, mu) in cases {
        let group = split_group(family, n);
        let a = adm(&group, &mu).unwrap();
        let radius = *a.lengths.iter().max().unwrap() as usize;

        // Downward closure against the full ball.
        for y in group.ball(radius, 2).unwrap() {
            let below = a.elements.iter().any(|x| group.bruhat_leq(&y, x).unwrap());
            assert_eq!(below, a.contains(&y), "{family:?} {mu:?}");
        }

        // Maximal elements are exactly the extreme translations.
        let crest: BTreeSet<_> = a
            .elements
            .iter()
            .filter(|x| {
                !a.elements
                    .iter()
                    .any(|y| y != *x && group.bruhat_leq(x, y).unwrap())
            })
            .cloned()
            .collect();
        let translations: BTreeSet<_> = a
            .lambda_orbit
            .iter()
            .map(|lam| group.translation(lam).unwrap())
            .collect();
        assert_eq!(crest, translations, "{family:?} {mu:?}");

        // One double coset at the special maximal parahoric.
        let special = ParahoricSubgroup::special_maximal(&group);
        assert_eq!(
            adm_parahoric(&group, &mu, &special).unwrap().len(),
            1,
            "{family:?} {mu:?}"
        );
    }
    println!("ACCEPTANCE 6: PASS");
}

#[test]
fn acceptance_07_bernstein_elements_are_central_with_admissible_support() {
    let cases: [(Family, usize, Vec<i64>); 4] = [
        (Family::Gl, 2, vec![1, 0]),
        (Family::Gl, 3, vec![1, 0, 0]),
        (Family::Gl, 3, vec![1, 1, 0]),
        (Family::Gsp, 4, vec![1, 1, 1]),
    ];
    for (family, n, mu) in cases {
        let group = split_group(family, n);
        let algebra = HeckeAlgebra::with_default_params(group).unwrap();
        let z = algebra.bernstein_z_mu(&mu).unwrap();
        assert!(algebra.is_central(&z).unwrap(), "{family:?} {mu:?}");

        let report = z_mu_support(&algebra, &z, &mu).unwrap();
        assert!(report.subset, "support must lie in the admissible set");
        assert!(report.extremes_nonzero, "extreme translations must survive");

        // Exact coefficients at q = 1: each Theta_lambda degenerates to the
        // group-algebra translation, so z_mu becomes the orbit sum.
        let a = adm(&algebra.group, &mu).unwrap();
        let q1 = z.at_q_one();
        assert_eq!(q1.len(), a.lambda_orbit.len());
        for lam in &a.lambda_orbit {
            let t = algebra.group.translation(lam).unwrap();
            assert_eq!(q1.get(&t), Some(&1), "{family:?} {mu:?}");
        }
    }
    println!("ACCEPTANCE 7: PASS");
}

/// Signed, conjugated block-permutation of finite order: cycles of length
/// 1..=3 (order lcm <= 6), an optional sign on one cycle, conjugated by a
/// random unimodular matrix.
fn random_finite_action(rng: &mut ChaCha8Rng, signs: bool, conjugate: bool) -> (Mat, usize) {
    let rank = rng.gen_range(1..=6usize);
    let mut gamma = Mat::zero(rank, rank);
    let mut start = 0usize;
    while start < rank {
        let len = (rng.gen_range(1..=3usize)).min(rank - start);
        let flip = signs && rng.gen_bool(0.5);
        for i in 0..len {
            let to = start + (i + 1) % len;
            gamma[(to, start + i)] = if flip && i == len - 1 { -1 } else { 1 };
        }
        start += len;
    }
    if conjugate {
        for _ in 0..4 {
            let i = rng.gen_range(0..rank);
            let j = rng.gen_range(0..rank);
            if i == j {
                continue;
            }
            let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
            // gamma <- E gamma E^{-1} with E = I + c e_{ij}.
            let mut e = Mat::identity(rank);
            e[(i, j)] = c;
            let mut e_inv = Mat::identity(rank);
            e_inv[(i, j)] = -c;
            gamma = e.mul(&gamma).mul(&e_inv);
        }
    }
    // Exact multiplicative order (bounded by lcm(1,2,3) doubled for signs).
    let id = Mat::identity(rank);
    let mut p = gamma.clone();
    let mut order = 1usize;
    while p != id {
        p = p.mul(&gamma);
        order += 1;
        assert!(order <= 12, "unexpected order");
    }
    (gamma, order)
}

#[test]
fn acceptance_08_cohomology_is_torsion_killed_by_the_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let (gamma, e) = random_finite_action(&mut rng, true, true);
        let x = LatticeWithAction::new(gamma, e).unwrap();
        for h in [cyclic_h1(&x), cyclic_h2(&x)] {
            assert_eq!(h.free_rank, 0);
            assert!(
                h.torsion.iter().all(|d| e as i64 % d == 0),
                "e = {e}, h = {h:?}"
            );
        }
        // The two elementary-divisor pipelines agree on the orders.
        assert_eq!(cyclic_h1(&x).order(), Some(cyclic_h1_order_by_divisors(&x)));
        assert_eq!(cyclic_h2(&x).order(), Some(cyclic_h2_order_by_divisors(&x)));
    }
    // Permutation modules have vanishing H^1.
    for _ in 0..50 {
        let (gamma, e) = random_finite_action(&mut rng, false, false);
        let x = LatticeWithAction::new(gamma, e).unwrap();
        assert!(cyclic_h1(&x).is_trivial());
    }
    println!("ACCEPTANCE 8: PASS");
}

#[test]
fn acceptance_09_length_zero_subgroup_realizes_the_coinvariants() {
    // (datum, twist, expected pi_1 coinvariants, omega count within bound 2)
    let cases: [(Family, usize, bool, FgAbelianGroup, usize); 7] = [
        (Family::Gl, 2, false, FgAbelianGroup::new(1, vec![]), 5),
        (Family::Gl, 3, false, FgAbelianGroup::new(1, vec![]), 5),
        (Family::Sl, 2, false, FgAbelianGroup::new(0, vec![]), 1),
        (Family::Sl, 3, false, FgAbelianGroup::new(0, vec![]), 1),
        (Family::Pgl, 2, false, FgAbelianGroup::new(0, vec![2]), 2),
        (Family::A, 3, true, FgAbelianGroup::new(0, vec![]), 1),
        (Family::Pgl, 4, true, FgAbelianGroup::new(0, vec![2]), 2),
    ];
    for (family, n, flip, expected, omega_count) in cases {
        let rd = build_root_datum(&GroupSpec::new(family, n)).unwrap();
        let gamma = if flip {
            pinned_automorphism(&rd, 2, &AutKind::Named(AutName::Flip)).unwrap()
        } else {
            pinned_identity(&rd)
        };
        let group = make_iwahori_weyl(&rd, &gamma, Caps::default()).unwrap();
        assert_eq!(group.pi1, expected, "{family:?} {n} flip={flip}");
        assert_eq!(
            kottwitz_pi1(&rd, &gamma),
            expected,
            "{family:?} {n} flip={flip}"
        );
        let omega = group.omega_elements(2).unwrap();
        assert_eq!(omega.len(), omega_count, "{family:?} {n} flip={flip}");
        // The kappa images of the enumerated elements are pairwise distinct,
        // so Omega really is the coinvariant group (within the free bound).
        let kappas: BTreeSet<_> = omega.iter().map(|x| group.kappa(x)).collect();
        assert_eq!(kappas.len(), omega.len(), "{family:?} {n} flip={flip}");
        if let Some(order) = expected.order() {
            assert_eq!(
                order,
                BigInt::from(omega_count),
                "{family:?} {n} flip={flip}"
            );
        }
    }
    println!("ACCEPTANCE 9: PASS");
}

#[derive(serde::Deserialize)]
struct FixtureRow {
    id: String,
    symbol: String,
    inertia_order: Option<i64>,
    quasi_split: bool,
}

#[test]
fn acceptance_10_catalog_matches_the_fixture_transcript() {
    let raw = include_str!("fixtures/catalog_rows.json");
    let rows: Vec<FixtureRow> = serde_json::from_str(raw).unwrap();
    assert_eq!(rows.len(), catalog().len());
    for row in &rows {
        let entry = catalog()
            .iter()
            .find(|e| e.id == row.id)
            .unwrap_or_else(|| panic!("fixture row {} missing from the catalog", row.id));
        assert_eq!(entry.tits_symbol, row.symbol, "{}", row.id);
        assert_eq!(entry.inertia_order, row.inertia_order, "{}", row.id);
        assert_eq!(entry.quasi_split, row.quasi_split, "{}", row.id);
    }
    let fixture_ids: BTreeSet<_> = rows.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(fixture_ids.len(), rows.len(), "fixture ids must be unique");
    for e in catalog() {
        assert!(
            fixture_ids.contains(e.id),
            "catalog row {} missing from the fixture",
            e.id
        );
    }
    println!("ACCEPTANCE 10: PASS");
}

use dybkit::bialgebra::{face_weights, normalize, normalize_with, Factor, Q};
use dybkit::dyb::{
    check_braid_on_quiver, check_dyb_map, check_dybe, check_dybe_check_convention, check_invariance, check_invariance_check_convention,
    to_check_convention, DybCandidate,
};
use dybkit::dynset::{compose_morphisms, enumerate_morphisms, tensor_morphisms, terminal_morphism, DynMorphism, DynSet};
use dybkit::embedding::{braided_quiver, q_morphism, q_object};
use dybkit::json::{parse, to_json};
use dybkit::ph::{LeftQuasigroup, sigma_from_ternary, ternary_from_sigma, ternary_satisfies, transport, TernaryOp};
use dybkit::quiver::count_quiver_morphisms;
use dybkit::search::{canonical_ternary, search_ternary, SearchSpec};
use dybkit::{fixtures, Error};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dynset(max_n: usize, max_m: usize) -> impl Strategy<Value = DynSet> {
    (1..=max_n, 0..=max_m).prop_flat_map(|(n, m)| {
        proptest::collection::vec(proptest::collection::vec(0..n, m), n)
            .prop_map(move |rows| DynSet::new(n, m, rows).unwrap())
    })
}

fn latin_rows(n: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    proptest::collection::vec(Just((0..n).collect::<Vec<_>>()).prop_shuffle(), n)
}

fn ph_dynset(n: usize) -> impl Strategy<Value = DynSet> {
    latin_rows(n).prop_map(move |rows| DynSet::new(n, n, rows).unwrap())
}

fn ternary(n: usize) -> impl Strategy<Value = TernaryOp> {
    proptest::collection::vec(0..n, n * n * n).prop_map(move |t| TernaryOp::new(n, t).unwrap())
}

/// A candidate that satisfies the invariance condition, chosen at random.
fn invariant_candidate(x: &DynSet, seed: u64) -> DybCandidate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n, m) = (x.n(), x.m());
    let mut pick = std::collections::HashMap::new();
    for l in 0..n {
        for a in 0..m {
            for b in 0..m {
                let want = x.act(x.act(l, a), b);
                let options: Vec<(usize, usize)> = (0..m)
                    .flat_map(|u| (0..m).map(move |v| (u, v)))
                    .filter(|&(u, v)| x.act(x.act(l, u), v) == want)
                    .collect();
                pick.insert((l, a, b), options[rng.gen_range(0..options.len())]);
            }
        }
    }
    DybCandidate::from_fn(x, |l, a, b| pick[&(l, a, b)]).unwrap()
}

fn endo(x: &DynSet, pick: usize) -> Option<DynMorphism> {
    let all = enumerate_morphisms(x, x).unwrap();
    (!all.is_empty()).then(|| all[pick % all.len()].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn tensor_is_strictly_associative(x in dynset(2, 2), y in dynset(2, 2), z in dynset(2, 2)) {
        prop_assume!(x.n() == y.n() && y.n() == z.n());
        let left = x.tensor(&y).unwrap().tensor(&z).unwrap();
        let right = x.tensor(&y.tensor(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn terminal_object_has_one_morphism_in(x in dynset(3, 3)) {
        let k = fixtures::k(x.n());
        let all = enumerate_morphisms(&x, &k).unwrap();
        prop_assert_eq!(all.len(), 1);
        prop_assert_eq!(&all[0], &terminal_morphism(&x));
    }

    #[test]
    fn interchange_law(x in dynset(2, 2), y in dynset(2, 2), picks in proptest::array::uniform4(0usize..1000)) {
        prop_assume!(x.n() == y.n());
        let (Some(f), Some(g), Some(f2), Some(g2)) = (endo(&x, picks[0]), endo(&x, picks[1]), endo(&y, picks[2]), endo(&y, picks[3])) else {
            return Ok(());
        };
        let lhs = tensor_morphisms(&compose_morphisms(&g, &f).unwrap(), &compose_morphisms(&g2, &f2).unwrap()).unwrap();
        let rhs = compose_morphisms(&tensor_morphisms(&g, &g2).unwrap(), &tensor_morphisms(&f, &f2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn embedding_is_a_functor(x in dynset(2, 2), picks in proptest::array::uniform2(0usize..1000)) {
        let (Some(f), Some(g)) = (endo(&x, picks[0]), endo(&x, picks[1])) else { return Ok(()); };
        let composed = q_morphism(&compose_morphisms(&g, &f).unwrap()).unwrap();
        let separately = q_morphism(&g).unwrap().after(&q_morphism(&f).unwrap()).unwrap();
        prop_assert_eq!(composed, separately);
        let id = q_morphism(&DynMorphism::identity(&x)).unwrap();
        prop_assert!(id.table().iter().enumerate().all(|(i, &v)| i == v));
    }

    #[test]
    fn embedding_is_fully_faithful_by_count(x in dynset(2, 2), y in dynset(2, 2)) {
        prop_assume!(x.n() == y.n());
        let dset = enumerate_morphisms(&x, &y).unwrap().len() as u128;
        prop_assert_eq!(count_quiver_morphisms(&q_object(&x), &q_object(&y)), dset);
    }

    #[test]
    fn braid_on_quiver_agrees_with_dybe(x in dynset(3, 3), seed in any::<u64>()) {
        let s = invariant_candidate(&x, seed);
        prop_assert!(check_invariance(&s).passed);
        let b = braided_quiver(&s).unwrap();
        prop_assert_eq!(check_braid_on_quiver(&b).passed, check_dybe(&s).passed);
    }

    #[test]
    fn reversed_convention_is_equivalent(x in dynset(3, 3), seed in any::<u64>(), scramble in any::<bool>()) {
        let s = if scramble {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (n, m) = (x.n(), x.m());
            let cells: Vec<(usize, usize)> = (0..n * m * m).map(|_| (rng.gen_range(0..m), rng.gen_range(0..m))).collect();
            DybCandidate::from_fn(&x, |l, a, b| cells[(l * m + a) * m + b]).unwrap()
        } else {
            invariant_candidate(&x, seed)
        };
        let c = to_check_convention(&s);
        prop_assert_eq!(&to_check_convention(&c), &s);
        prop_assert_eq!(check_invariance(&s).passed, check_invariance_check_convention(&c).passed);
        let both = check_invariance_check_convention(&c).passed && check_dybe_check_convention(&c).passed;
        prop_assert_eq!(check_dyb_map(&s).passed, both);
    }

    #[test]
    fn ternary_round_trip_on_ph_sets(x in ph_dynset(3), t in ternary(3)) {
        let s = sigma_from_ternary(&x, &t).unwrap();
        prop_assert!(check_invariance(&s).passed);
        prop_assert_eq!(ternary_from_sigma(&s).unwrap(), t);
    }

    #[test]
    fn classification_on_random_ph_sets(x in ph_dynset(3), t in ternary(3)) {
        let s = sigma_from_ternary(&x, &t).unwrap();
        prop_assert_eq!(check_dybe(&s).passed, ternary_satisfies(&t).passed);
    }

    #[test]
    fn transport_matches_direct_construction(x1 in ph_dynset(3), x2 in ph_dynset(3), t in ternary(3)) {
        let moved = transport(&sigma_from_ternary(&x1, &t).unwrap(), &x2).unwrap();
        prop_assert_eq!(moved, sigma_from_ternary(&x2, &t).unwrap());
    }

    #[test]
    fn face_matrix_is_a_selection(x in dynset(2, 3), seed in any::<u64>()) {
        let s = invariant_candidate(&x, seed);
        let f = face_weights(&s).unwrap();
        prop_assert!(f.is_selection());
        let bijective = (0..x.n()).all(|l| s.is_bijective_at(l));
        prop_assert_eq!(f.is_permutation(), bijective);
    }

    #[test]
    fn json_round_trip(x in dynset(3, 3), seed in any::<u64>(), t in ternary(2)) {
        let s = invariant_candidate(&x, seed);
        prop_assert_eq!(parse::<DybCandidate>("mem", &to_json(&s)).unwrap(), s);
        prop_assert_eq!(parse::<DynSet>("mem", &to_json(&x)).unwrap(), x);
        prop_assert_eq!(parse::<TernaryOp>("mem", &to_json(&t)).unwrap(), t);
    }
}

fn raw_product(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<Factor> {
    let len = rng.gen_range(0..7);
    (0..len)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Factor::Gen(rng.gen_range(0..m), rng.gen_range(0..m))
            } else {
                Factor::Coeff((0..n * n).map(|_| Q::from_integer(rng.gen_range(-2..3))).collect())
            }
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normalization_is_confluent(seed in any::<u64>(), order in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fixtures = [fixtures::f_g(), fixtures::k(2), fixtures::k(3), LeftQuasigroup::cyclic(3).dynset()];
        let x = &fixtures[rng.gen_range(0..fixtures.len())];
        let raw: Vec<Vec<Factor>> = (0..rng.gen_range(1..4)).map(|_| raw_product(&mut rng, x.n(), x.m())).collect();
        let mut chooser = ChaCha8Rng::seed_from_u64(order);
        let a = normalize(x, &raw);
        let b = normalize_with(x, &raw, |k| chooser.gen_range(0..k));
        let c = normalize_with(x, &raw, |k| k - 1);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(&a, &c);
    }
}

#[test]
fn orbit_representatives_are_stable_under_relabeling() {
    let reps = search_ternary(&SearchSpec::new(3).reduced().limit(200)).unwrap();
    let perms = dybkit::search::permutations(3);
    for r in &reps {
        for p in &perms {
            assert_eq!(&canonical_ternary(&r.relabel(p)), r);
        }
    }
}

#[test]
fn search_rejects_oversized_requests() {
    assert!(matches!(search_ternary(&SearchSpec::new(5)), Err(Error::SizeLimit(_))));
}

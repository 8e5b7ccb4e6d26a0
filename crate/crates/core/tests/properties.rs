//! Randomized invariants across modules.

use lie_homology::characters::{decompose, irreducible_character, skew_decomposition};
use lie_homology::closedform::{general_isotypical, isotypical_map};
use lie_homology::exactlinalg::{rank, rat, SparseVec};
use lie_homology::freelie::{bracket, lyndon_coordinates, lyndon_expand, LieElement};
use lie_homology::homology::beads_slice;
use lie_homology::irreps::{seminormal, skew_module, EquivariantMap};
use lie_homology::partitions::{contains, partitions_of, Partition};
use lie_homology::perm::{compose, cycle_type};
use proptest::prelude::*;

fn arb_partition(max: usize) -> impl Strategy<Value = Partition> {
    (1..=max).prop_flat_map(|n| {
        let all = partitions_of(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn arb_lie_element(letters: usize) -> impl Strategy<Value = LieElement> {
    // Random combination of brackets of pairs of letters.
    prop::collection::vec((0..letters, 0..letters, -3i64..=3), 1..4).prop_map(|terms| {
        let mut acc = LieElement::new();
        for (a, b, c) in terms {
            let x = LieElement::from([(vec![a], rat(1))]);
            let y = LieElement::from([(vec![b], rat(c))]);
            for (w, v) in bracket(&x, &y) {
                *acc.entry(w).or_insert_with(|| rat(0)) += v;
            }
        }
        acc.retain(|_, v| *v != rat(0));
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn seminormal_models_are_homomorphisms(
        (lambda, p, q) in arb_partition(6).prop_flat_map(|l| {
            let n = l.size();
            (Just(l), arb_perm(n), arb_perm(n))
        }),
    ) {
        let rep = seminormal(&lambda);
        prop_assert_eq!(rep.matrix_of(&compose(&p, &q)), rep.matrix_of(&p).mul(&rep.matrix_of(&q)));
    }

    #[test]
    fn skew_modules_have_skew_characters(lambda in arb_partition(6), k in 0usize..6) {
        let alphas: Vec<Partition> = (1..lambda.size())
            .flat_map(partitions_of)
            .filter(|a| contains(a, &lambda))
            .collect();
        prop_assume!(!alphas.is_empty());
        let alpha = &alphas[k % alphas.len()];
        let rep = skew_module(&lambda, alpha);
        prop_assert!(rep.check_relations());
        prop_assert_eq!(decompose(&rep.character()).unwrap(), skew_decomposition(&lambda, alpha));
    }

    #[test]
    fn constructed_maps_are_equivariant_with_full_rank_checks(rho in arb_partition(6), n in 1usize..=6) {
        prop_assume!(n <= rho.size());
        let m = isotypical_map(&rho, n).unwrap();
        let f = EquivariantMap { source: m.domain_rep.clone(), target: m.codomain_rep.clone(), matrix: m.matrix.clone() };
        prop_assert!(f.is_equivariant());
        // The cokernel dimension agrees with the rank of the map.
        let coker = m.cokernel_decomposition().dimension() as usize;
        prop_assert_eq!(coker, m.codomain_rep.dim - rank(&m.matrix));
    }

    #[test]
    fn random_group_elements_act_consistently(lambda in arb_partition(5), p in arb_perm(5)) {
        prop_assume!(lambda.size() == 5);
        let rep = seminormal(&lambda);
        let m = rep.matrix_of(&p);
        for j in 0..rep.dim {
            prop_assert_eq!(&rep.apply_perm(&p, &SparseVec::unit(j)), m.column(j));
        }
        prop_assert_eq!(m.trace(), irreducible_character(&lambda).get(&cycle_type(&p)).clone());
    }

    #[test]
    fn brackets_are_antisymmetric_and_satisfy_jacobi(
        x in arb_lie_element(4),
        y in arb_lie_element(4),
        z in arb_lie_element(4),
    ) {
        let xy = bracket(&x, &y);
        let yx = bracket(&y, &x);
        let sum = lyndon_coordinates(&{
            let mut e = lyndon_expand(&xy);
            for (w, c) in lyndon_expand(&yx) {
                *e.entry(w).or_insert_with(|| rat(0)) += c;
            }
            e.retain(|_, c| *c != rat(0));
            e
        });
        prop_assert!(sum.is_empty());
        let mut jacobi = std::collections::BTreeMap::new();
        for t in [bracket(&x, &bracket(&y, &z)), bracket(&y, &bracket(&z, &x)), bracket(&z, &bracket(&x, &y))] {
            for (w, c) in lyndon_expand(&t) {
                *jacobi.entry(w).or_insert_with(|| rat(0)) += c;
            }
        }
        prop_assert!(jacobi.values().all(|c| *c == rat(0)));
    }

    #[test]
    fn master_equivalence_on_random_slices(rho in arb_partition(6), n in 1usize..=6) {
        prop_assume!(n <= rho.size());
        prop_assert_eq!(general_isotypical(&rho, n).unwrap().decomposition, beads_slice(&rho, n, true));
    }
}

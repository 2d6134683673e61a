mod common;

use common::arb_graph;
use graphtda::complex::{
    clique_complex, enclaveless_complex, independent_complex, is_enclaveless,
    neighborhood_complex, Simplex,
};
use graphtda::graph::{csusp, elsusp, isusp, WeightedGraph};
use graphtda::homology::reduced_betti_numbers;
use graphtda::SimplicialComplex;
use proptest::prelude::*;

fn every_subset_present(k: &SimplicialComplex) -> bool {
    k.facets().iter().all(|f| f.faces(None).all(|s| k.contains(&s)))
}

/// Reduced Betti numbers shifted up by one degree.
fn suspended(b: &[usize]) -> Vec<usize> {
    let mut s = vec![0];
    s.extend_from_slice(&b[..b.len() - 1]);
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructions_are_closed(g in arb_graph(15, 1)) {
        prop_assert!(every_subset_present(&clique_complex(&g, None)));
        prop_assert!(every_subset_present(&neighborhood_complex(&g, Some(4))));
        prop_assert!(every_subset_present(&enclaveless_complex(&g, Some(4))));
        prop_assert!(every_subset_present(&independent_complex(&g, Some(3))));
    }

    #[test]
    fn enclavelessness_is_hereditary(g in arb_graph(8, 1)) {
        let n = g.vertex_count();
        for mask in 1u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if !is_enclaveless(&g, &set) {
                continue;
            }
            for drop in 0..set.len() {
                let mut sub = set.clone();
                sub.remove(drop);
                prop_assert!(sub.is_empty() || is_enclaveless(&g, &sub));
            }
        }
    }

    #[test]
    fn enclaveless_complex_is_exactly_the_enclaveless_sets(g in arb_graph(8, 1)) {
        let k = enclaveless_complex(&g, None);
        let n = g.vertex_count();
        let mut count = 0;
        for mask in 1u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let el = is_enclaveless(&g, &set);
            prop_assert_eq!(el, k.contains(&Simplex::new(set).unwrap()));
            count += el as usize;
        }
        prop_assert_eq!(count, k.len());
    }

    #[test]
    fn clique_suspension_shifts_homology(g in arb_graph(7, 1)) {
        prop_assume!(g.vertex_count() > 0);
        let base = reduced_betti_numbers(&clique_complex(&g, None), 4);
        let susp = reduced_betti_numbers(&clique_complex(&csusp(&g), None), 5);
        prop_assert_eq!(&susp[..], &suspended(&[base, vec![0]].concat())[..]);
    }

    #[test]
    fn independence_suspension_shifts_homology(g in arb_graph(7, 1)) {
        prop_assume!(g.vertex_count() > 0);
        let base = reduced_betti_numbers(&independent_complex(&g, None), 4);
        let susp = reduced_betti_numbers(&independent_complex(&isusp(&g), None), 5);
        prop_assert_eq!(&susp[..], &suspended(&[base, vec![0]].concat())[..]);
    }

    #[test]
    fn enclaveless_suspension_shifts_homology(g in arb_graph(7, 1)) {
        let k = enclaveless_complex(&g, None);
        prop_assume!(!k.is_empty());
        let base = reduced_betti_numbers(&k, 4);
        let susp = reduced_betti_numbers(&enclaveless_complex(&elsusp(&g), None), 5);
        prop_assert_eq!(&susp[..], &suspended(&[base, vec![0]].concat())[..]);
    }
}

#[test]
fn enclaveless_complexes_of_complete_graphs_are_spheres() {
    for n in 2..=6 {
        let k = enclaveless_complex(&WeightedGraph::complete(n), None);
        let mut want = vec![0; n];
        want[n - 2] = 1;
        assert_eq!(reduced_betti_numbers(&k, n - 1), want, "n = {n}");
        assert_eq!(k.facets().len(), n);
    }
}

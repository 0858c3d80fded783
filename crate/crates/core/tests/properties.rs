use graphprod::exponential::{exp_adjacent, lift_simple, simple_adjacent, ExpContext};
use graphprod::graph::{
    add_loops, blowup, digraph_product, tensor_product, Coloring, Digraph, Graph,
};
use graphprod::solvers::{
    chromatic_number, compose, find_homomorphism, independence_number, is_homomorphism,
    is_proper_coloring, k_colorable,
};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let arcs = (0..n * n)
                .filter(|&i| bits[i] && i / n != i % n)
                .map(|i| (i / n, i % n));
            Digraph::from_arcs(n, arcs).unwrap()
        })
    })
}

/// Exhaustive k-colourability over all `k^n` assignments.
fn brute_force_colorable(g: &Graph, k: usize) -> bool {
    let n = g.n() as u32;
    if k == 0 {
        return n == 0;
    }
    (0..(k as u64).pow(n)).any(|mut code| {
        let colors: Vec<usize> = (0..n)
            .map(|_| {
                let c = (code % k as u64) as usize;
                code /= k as u64;
                c
            })
            .collect();
        g.edges().all(|(u, v)| colors[u] != colors[v])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn k_colorable_agrees_with_brute_force(g in graph(7), k in 0usize..5) {
        let found = k_colorable(&g, k).unwrap();
        prop_assert_eq!(found.is_some(), brute_force_colorable(&g, k));
        if let Some(col) = found {
            prop_assert!(is_proper_coloring(&g, &col).unwrap());
        }
    }

    #[test]
    fn k_colorable_is_monotone(g in graph(8), k in 1usize..5) {
        if k_colorable(&g, k).unwrap().is_some() {
            prop_assert!(k_colorable(&g, k + 1).unwrap().is_some());
        }
    }

    #[test]
    fn product_chi_at_most_min(g in graph(6), h in graph(6)) {
        let chi = chromatic_number(&tensor_product(&g, &h)).unwrap();
        prop_assert!(chi <= chromatic_number(&g).unwrap().min(chromatic_number(&h).unwrap()));
    }

    #[test]
    fn projections_are_homomorphisms(g in graph(6), h in graph(6)) {
        let p = tensor_product(&g, &h);
        let m = h.n();
        let first: Vec<usize> = (0..p.n()).map(|v| v / m).collect();
        let second: Vec<usize> = (0..p.n()).map(|v| v % m).collect();
        prop_assert!(is_homomorphism(&p, &g, &first));
        prop_assert!(is_homomorphism(&p, &h, &second));
        let lg = add_loops(&g);
        let lp = tensor_product(&lg, &h);
        prop_assert!(is_homomorphism(&lp, &lg, &first));
    }

    #[test]
    fn projection_coloring_is_proper(g in graph(6), h in graph(6)) {
        let phi = graphprod::solvers::optimal_coloring(&g).unwrap();
        let p = tensor_product(&g, &h);
        let lifted = Coloring::new((0..p.n()).map(|v| phi.colors[v / h.n()]).collect(), phi.k.max(1)).unwrap();
        prop_assert!(is_proper_coloring(&p, &lifted).unwrap());
    }

    #[test]
    fn blowup_keeps_alpha(g in graph(8), q in 1usize..=3) {
        let alpha = independence_number(&g).unwrap();
        prop_assert_eq!(independence_number(&blowup(&g, q).unwrap()).unwrap(), alpha);
        prop_assert!(chromatic_number(&g).unwrap() * alpha >= g.n());
    }

    #[test]
    fn exp_adjacency_is_symmetric(g in graph(5), seed in any::<u64>(), loops in any::<bool>()) {
        let base = if loops { add_loops(&g) } else { g.clone() };
        let c = 3;
        let ctx = ExpContext::new(base, c).unwrap();
        let total = ctx.vertex_count().unwrap();
        let f = ctx.map_at(seed as u128 % total);
        let h = ctx.map_at((seed as u128 / 7) % total);
        prop_assert_eq!(exp_adjacent(&ctx, &f, &h).unwrap(), exp_adjacent(&ctx, &h, &f).unwrap());
    }

    #[test]
    fn simple_adjacency_matches_raw(g in graph(4), a in any::<u64>(), b in any::<u64>(), q in 2usize..=3) {
        let c = 3;
        let small = ExpContext::new(g.clone(), c).unwrap();
        let total = small.vertex_count().unwrap();
        let phi = small.map_at(a as u128 % total);
        let psi = small.map_at(b as u128 % total);
        let big = ExpContext::new(blowup(&g, q).unwrap(), c).unwrap();
        let raw = exp_adjacent(&big, &lift_simple(phi.values(), q), &lift_simple(psi.values(), q)).unwrap();
        prop_assert_eq!(raw, simple_adjacent(&g, phi.values(), psi.values()));
    }

    #[test]
    fn homomorphisms_compose(g in graph(6), h in graph(5), k in graph(4)) {
        if let (Some(f1), Some(f2)) = (find_homomorphism(&g, &h), find_homomorphism(&h, &k)) {
            prop_assert!(is_homomorphism(&g, &k, &compose(&f1, &f2)));
        }
        if find_homomorphism(&g, &h).is_some() {
            prop_assert!(chromatic_number(&g).unwrap() <= chromatic_number(&h).unwrap());
        }
    }

    #[test]
    fn digraph_operator_laws(d1 in digraph(4), d2 in digraph(4)) {
        prop_assert_eq!(digraph_product(&d1, &d2).arc_count(), d1.arc_count() * d2.arc_count());
        prop_assert_eq!(d1.reverse().reverse(), d1.clone());
        prop_assert_eq!(d1.reverse().underline(), d1.underline());
    }
}

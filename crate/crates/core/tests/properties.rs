use num_rational::BigRational;
use proptest::prelude::*;

use cutspectra::eigen::{rayleigh_consistency, verify, witness_holds, EigenproblemId, Form};
use cutspectra::functionals::{
    indicator, lovasz_extension, ratio_objective, signless_variation, total_variation, RatioKind,
};
use cutspectra::graph::{emit_graph, parse_graph, random_connected};
use cutspectra::lp::{Affine, Lp};
use cutspectra::oracles::{k_way_dual_cheeger, minmax_k_cut, Caps};
use cutspectra::{Graph, Rational, VertexSet};

fn big(r: &Rational) -> BigRational {
    r.to_big()
}

fn rational() -> impl Strategy<Value = Rational> {
    prop_oneof![
        (-50i64..50, 1i64..20).prop_map(|(p, q)| Rational::new(p, q)),
        (any::<i64>(), 1i64..i64::MAX).prop_map(|(p, q)| Rational::new(p, q)),
        (-3i64..3, prop_oneof![Just(i64::MAX), Just(1i64 << 40)]).prop_map(|(p, q)| Rational::new(p, q)),
    ]
}

fn weighted_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, any::<u64>(), proptest::collection::vec((1i64..5, 1i64..4), 32)).prop_map(|(n, seed, w)| {
        let base = random_connected(n, 0.4, seed);
        let edges: Vec<(usize, usize, Rational)> = base
            .edges()
            .iter()
            .zip(w.iter().cycle())
            .map(|(e, (p, q))| (e.u, e.v, Rational::new(*p, *q)))
            .collect();
        Graph::new(n, edges).expect("valid edges")
    })
}

fn unit_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, any::<u64>(), 0.0f64..0.7).prop_map(|(n, seed, p)| random_connected(n, p, seed))
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-6i64..7, 1i64..4).prop_map(|(p, q)| Rational::new(p, q)), n)
}

proptest! {
    #[test]
    fn rational_matches_bigrational(a in rational(), b in rational()) {
        prop_assert_eq!(big(&(&a + &b)), big(&a) + big(&b));
        prop_assert_eq!(big(&(&a - &b)), big(&a) - big(&b));
        prop_assert_eq!(big(&(&a * &b)), big(&a) * big(&b));
        if !b.is_zero() {
            prop_assert_eq!(big(&(&a / &b)), big(&a) / big(&b));
        }
        prop_assert_eq!(big(&-&a), -big(&a));
        prop_assert_eq!(a.cmp(&b), big(&a).cmp(&big(&b)));
        prop_assert_eq!(a == b, big(&a) == big(&b));
    }

    #[test]
    fn rational_text_round_trip(a in rational()) {
        let s = a.to_string();
        prop_assert_eq!(s.parse::<Rational>().unwrap(), a.clone());
        let j = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&j).unwrap(), a.clone());
        let from_parts = Rational::from_bigints(a.numer(), a.denom());
        prop_assert_eq!(from_parts, a);
    }

    #[test]
    fn variations_are_homogeneous(g in weighted_graph(7), seed in any::<u64>(), t in (-5i64..6, 1i64..4)) {
        let n = g.n();
        let x: Vec<Rational> = (0..n).map(|i| Rational::new(((seed >> (3 * i)) % 7) as i64 - 3, 1)).collect();
        let t = Rational::new(t.0, t.1);
        let tx: Vec<Rational> = x.iter().map(|v| v * &t).collect();
        prop_assert_eq!(total_variation(&g, &tx), total_variation(&g, &x) * t.abs());
        prop_assert_eq!(signless_variation(&g, &tx), signless_variation(&g, &x) * t.abs());
        let shifted: Vec<Rational> = x.iter().map(|v| v + Rational::new(5, 2)).collect();
        prop_assert_eq!(total_variation(&g, &shifted), total_variation(&g, &x));
        let neg: Vec<Rational> = x.iter().map(|v| -v).collect();
        prop_assert_eq!(signless_variation(&g, &neg), signless_variation(&g, &x));
    }

    #[test]
    fn ratios_ignore_positive_scaling(g in unit_graph(7), x in vector(7), t in 1i64..9) {
        let x = &x[..g.n()];
        let tx: Vec<Rational> = x.iter().map(|v| v * Rational::from_integer(t)).collect();
        for kind in RatioKind::ALL {
            match (ratio_objective(kind, &g, x), ratio_objective(kind, &g, &tx)) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a, b, "{}", kind),
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "{kind}: {a:?} vs {b:?}"),
            }
        }
    }

    #[test]
    fn lovasz_extension_of_cut_is_total_variation(g in weighted_graph(7), x in vector(7)) {
        let x = &x[..g.n()];
        // I(x) = ∫ |∂{x > t}| dt; the set-pair form splits into both signs.
        let f = |p: &VertexSet, m: &VertexSet| {
            g.boundary(p) + g.boundary(m)
        };
        let lhs = lovasz_extension(f, x);
        let plus: Vec<Rational> = x.iter().map(|v| if v.is_positive() { v.clone() } else { Rational::zero() }).collect();
        let minus: Vec<Rational> = x.iter().map(|v| if v.is_negative() { -v } else { Rational::zero() }).collect();
        prop_assert_eq!(lhs, total_variation(&g, &plus) + total_variation(&g, &minus));
    }

    #[test]
    fn lp_finds_a_point_when_one_exists(
        y0 in proptest::collection::vec((-9i64..10, 1i64..4), 1..6),
        rows in proptest::collection::vec(proptest::collection::vec(-3i64..4, 6), 0..6),
        slack in proptest::collection::vec((0i64..3, 0i64..3), 6),
    ) {
        let y0: Vec<Rational> = y0.iter().map(|(p, q)| Rational::new(*p, *q)).collect();
        let mut lp = Lp::new();
        for (j, v) in y0.iter().enumerate() {
            let (a, b) = slack[j];
            lp.add_var(v - Rational::from_integer(a), v + Rational::from_integer(b));
        }
        for (r, coeffs) in rows.iter().enumerate() {
            let mut e = Affine::constant(Rational::from_integer(r as i64));
            for (j, c) in coeffs.iter().take(y0.len()).enumerate() {
                e.add_scaled(&Affine::var(j), &Rational::from_integer(*c));
            }
            let at = e.eval(&y0);
            let (a, b) = slack[r];
            if a + b == 0 {
                lp.constrain_eq(&e, at);
            } else {
                lp.constrain(&e, at.clone() - Rational::from_integer(a), at + Rational::from_integer(b));
            }
        }
        prop_assert!(lp.satisfied_by(&y0));
        let y = lp.solve();
        prop_assert!(y.is_some());
        prop_assert!(lp.satisfied_by(&y.unwrap()));
    }

    #[test]
    fn graph_invariants(g in weighted_graph(8), mask in any::<u64>()) {
        let n = g.n();
        let a = VertexSet::from_mask(mask & ((1u64 << n) - 1));
        let ac = a.complement(n);
        let total: Rational = g.edges().iter().map(|e| e.w.clone()).sum();
        prop_assert_eq!(g.vol_all(), &total * Rational::from_integer(2));
        prop_assert_eq!(g.boundary(&a), g.boundary(&ac));
        prop_assert_eq!(g.cut_weight(&a, &ac).unwrap(), g.boundary(&a));
        prop_assert_eq!(g.vol(&a), g.internal_weight(&a) * Rational::from_integer(2) + g.boundary(&a));
        prop_assert!(g.is_connected());
        let back = parse_graph(&emit_graph(&g)).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn indicator_pairs_verify_with_checked_witness(g in weighted_graph(6), mask in any::<u64>()) {
        let n = g.n();
        let a = VertexSet::from_mask(mask & ((1u64 << n) - 1));
        let ac = a.complement(n);
        let x = indicator(n, &a, &ac);
        let vol = g.vol_all();
        let cut = g.boundary(&a);
        let cases = [
            (EigenproblemId::MaxcutInf, &cut * Rational::from_integer(2) / &vol),
            (EigenproblemId::AntiCheeger, &cut / g.vol(&a).max(g.vol(&ac))),
        ];
        for (id, lambda) in cases {
            let r = verify(id, &g, &lambda, &x).unwrap();
            prop_assert!(r.verdict, "{id} at {lambda}");
            let w = r.witness.as_ref().expect("accepted pairs carry a witness");
            prop_assert!(witness_holds(id, Form::Median, &g, &lambda, &x, w));
            prop_assert!(rayleigh_consistency(id, &g, &lambda, &x));
            let off = &lambda + Rational::new(1, 7);
            prop_assert!(!verify(id, &g, &off, &x).unwrap().verdict || !rayleigh_consistency(id, &g, &off, &x));
        }
    }
}

/// `max` over `k` disjoint set-pairs of the smallest `2|E(A,B)|/vol(A∪B)`,
/// by direct labelling of every vertex.
fn brute_kway(g: &Graph, k: usize) -> Option<Rational> {
    let n = g.n();
    let labels = 2 * k + 1;
    let mut best: Option<Rational> = None;
    let mut code = vec![0usize; n];
    loop {
        let mut worst: Option<Rational> = None;
        let mut ok = true;
        for i in 0..k {
            let a: VertexSet = (0..n).filter(|&v| code[v] == 2 * i + 1).collect();
            let b: VertexSet = (0..n).filter(|&v| code[v] == 2 * i + 2).collect();
            let vol = g.vol(&a.union(&b));
            if vol.is_zero() {
                ok = false;
                break;
            }
            let r = g.cut_weight(&a, &b).unwrap() * Rational::from_integer(2) / vol;
            worst = Some(worst.map_or(r.clone(), |w: Rational| w.min(r)));
        }
        if ok {
            let w = worst.unwrap();
            if best.as_ref().is_none_or(|b| w > *b) {
                best = Some(w);
            }
        }
        let mut i = 0;
        while i < n && code[i] == labels - 1 {
            code[i] = 0;
            i += 1;
        }
        if i == n {
            return best;
        }
        code[i] += 1;
    }
}

/// `2 max_S |E(∪_S V_i, ∪_{S^c} V_i)| + |E(V₁∪…∪V_k, V₀)|` minimized over
/// labellings with every block nonempty.
fn brute_minmax(g: &Graph, k: usize, partition: bool) -> Rational {
    let n = g.n();
    let base = k + 1;
    let mut best: Option<Rational> = None;
    for code in 0..base.pow(n as u32) {
        let mut c = code;
        let mut blocks = vec![VertexSet::new(); base];
        for v in 0..n {
            blocks[c % base].insert(v);
            c /= base;
        }
        if blocks[1..].iter().any(|b| b.is_empty()) || (partition && !blocks[0].is_empty()) {
            continue;
        }
        let mut top = Rational::zero();
        for s in 0..(1u32 << k) {
            let inside: VertexSet =
                (0..k).filter(|i| s >> i & 1 == 1).fold(VertexSet::new(), |u, i| u.union(&blocks[i + 1]));
            let outside: VertexSet =
                (0..k).filter(|i| s >> i & 1 == 0).fold(VertexSet::new(), |u, i| u.union(&blocks[i + 1]));
            top = top.max(g.cut_weight(&inside, &outside).unwrap());
        }
        let used = blocks[0].complement(n);
        let value = top * Rational::from_integer(2) + g.cut_weight(&used, &blocks[0]).unwrap();
        if best.as_ref().is_none_or(|b| value < *b) {
            best = Some(value);
        }
    }
    best.unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kway_dp_matches_labelling(g in weighted_graph(5), k in 1usize..4) {
        prop_assume!(k <= g.n());
        let caps = Caps::default();
        let cert = k_way_dual_cheeger(&g, k, &caps).unwrap();
        prop_assert_eq!(Some(cert.value.clone()), brute_kway(&g, k));
        prop_assert_eq!(cert.sets.len(), 2 * k);
        for pair in cert.sets.chunks(2) {
            let vol = g.vol(&pair[0].union(&pair[1]));
            let r = g.cut_weight(&pair[0], &pair[1]).unwrap() * Rational::from_integer(2) / vol;
            prop_assert!(r >= cert.value);
        }
    }

    #[test]
    fn minmax_matches_labelling(g in weighted_graph(5), k in 1usize..5, partition in any::<bool>()) {
        prop_assume!(k <= g.n());
        let caps = Caps::default();
        let cert = minmax_k_cut(&g, k, partition, &caps).unwrap();
        prop_assert_eq!(cert.value, brute_minmax(&g, k, partition));
        prop_assert_eq!(cert.sets.len(), k);
    }
}

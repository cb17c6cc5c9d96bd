use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;

fn unit(n: usize, edges: Vec<(usize, usize)>) -> Graph {
    Graph::unit(n, edges).expect("generator edges are valid")
}

/// Path on `k` vertices.
pub fn path(k: usize) -> Graph {
    unit(k, (1..k).map(|i| (i - 1, i)).collect())
}

/// Cycle on `k` vertices; degenerates to `path(k)` for `k < 3`.
pub fn cycle(k: usize) -> Graph {
    if k < 3 {
        return path(k);
    }
    unit(k, (0..k).map(|i| (i, (i + 1) % k)).collect())
}

pub fn complete(k: usize) -> Graph {
    unit(k, (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect())
}

/// Star with centre 0 and `k` leaves.
pub fn star(k: usize) -> Graph {
    unit(k + 1, (1..=k).map(|i| (0, i)).collect())
}

/// Outer 5-cycle on 0..5, spokes `(i, i+5)`, inner pentagram on 5..10.
pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    unit(10, e)
}

/// `k` triangles sharing the apex `c = 2k`: vertices `a_i = i`, `b_i = k + i`,
/// edges `(a_i, c)`, `(b_i, c)`, `(a_i, b_i)`.
pub fn star_triangle(k: usize) -> Graph {
    let c = 2 * k;
    let mut e = Vec::new();
    for i in 0..k {
        e.push((i, c));
        e.push((k + i, c));
        e.push((i, k + i));
    }
    unit(2 * k + 1, e)
}

/// Random connected unit-weight graph: a random spanning tree plus each
/// remaining pair with probability `p`.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e = Vec::new();
    for i in 1..n {
        e.push((rng.gen_range(0..i), i));
    }
    for i in 0..n {
        for j in i + 1..n {
            if !e.contains(&(i, j)) && rng.gen_bool(p) {
                e.push((i, j));
            }
        }
    }
    unit(n, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!((path(2).n(), path(2).m()), (2, 1));
        assert_eq!((petersen().n(), petersen().m()), (10, 15));
        assert_eq!((star_triangle(2).n(), star_triangle(2).m()), (5, 6));
        assert_eq!((complete(4).m(), cycle(5).m(), star(3).m()), (6, 5, 3));
        assert!((0..10).all(|i| petersen().neighbors(i).len() == 3));
    }

    #[test]
    fn random_is_connected_and_reproducible() {
        for seed in 0..20 {
            let g = random_connected(9, 0.3, seed);
            assert!(g.is_connected());
            assert_eq!(g, random_connected(9, 0.3, seed));
        }
    }
}

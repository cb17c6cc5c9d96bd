use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphParams {
    pub alpha: usize,
    pub matching: usize,
    pub edge_cover: usize,
    pub is_bipartite: bool,
    pub is_forest: bool,
}

fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap.min(64) {
        return Err(Error::TooLarge { what, n, cap });
    }
    Ok(())
}

fn neighbor_masks(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|i| g.neighbors(i).iter().fold(0u64, |m, &(j, _)| m | (1 << j))).collect()
}

fn mis(adj: &[u64], cand: u64, size: usize, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + cand.count_ones() as usize <= *best {
        return;
    }
    // Branch on the candidate with the most candidate neighbours.
    let mut pick = cand.trailing_zeros() as usize;
    let mut pick_deg = 0;
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & cand).count_ones();
        if d > pick_deg {
            pick = v;
            pick_deg = d;
        }
    }
    if pick_deg == 0 {
        *best = (*best).max(size + cand.count_ones() as usize);
        return;
    }
    mis(adj, cand & !(1 << pick) & !adj[pick], size + 1, best);
    mis(adj, cand & !(1 << pick), size, best);
}

/// Independence number by branch and bound.
pub fn independence_number(g: &Graph, cap: usize) -> Result<usize> {
    check_cap("independence number", g.n(), cap)?;
    let adj = neighbor_masks(g);
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let mut best = 0;
    mis(&adj, all, 0, &mut best);
    Ok(best)
}

fn matching(adj: &[u64], free: u64) -> usize {
    // The lowest free vertex is either left unmatched or matched to a free neighbour.
    let mut f = free;
    while f != 0 {
        let u = f.trailing_zeros() as usize;
        let nb = adj[u] & free & !(1 << u);
        if nb == 0 {
            f &= f - 1;
            continue;
        }
        let without = free & !(1 << u);
        let mut best = matching(adj, without);
        let mut rest = nb;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            best = best.max(1 + matching(adj, without & !(1 << v)));
        }
        return best;
    }
    0
}

/// Maximum matching size by exhaustive search.
pub fn maximum_matching(g: &Graph, cap: usize) -> Result<usize> {
    check_cap("maximum matching", g.n(), cap)?;
    let adj = neighbor_masks(g);
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    Ok(matching(&adj, all))
}

/// Minimum edge cover `n − matching`.
pub fn edge_cover_number(g: &Graph, cap: usize) -> Result<usize> {
    if let Some(i) = g.isolated_vertex() {
        return Err(Error::IsolatedVertex(i));
    }
    Ok(g.n() - maximum_matching(g, cap)?)
}

pub fn is_bipartite(g: &Graph) -> bool {
    let mut color: Vec<Option<bool>> = vec![None; g.n()];
    for s in 0..g.n() {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let cu = color[u].unwrap();
            for &(v, _) in g.neighbors(u) {
                match color[v] {
                    None => {
                        color[v] = Some(!cu);
                        stack.push(v);
                    }
                    Some(cv) if cv == cu => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

pub fn is_forest(g: &Graph) -> bool {
    g.m() + g.component_count() == g.n()
}

pub fn graph_params(g: &Graph, alpha_cap: usize, matching_cap: usize) -> Result<GraphParams> {
    Ok(GraphParams {
        alpha: independence_number(g, alpha_cap)?,
        matching: maximum_matching(g, matching_cap)?,
        edge_cover: edge_cover_number(g, matching_cap)?,
        is_bipartite: is_bipartite(g),
        is_forest: is_forest(g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, petersen};

    #[test]
    fn small_parameters() {
        let c5 = graph_params(&cycle(5), 24, 20).unwrap();
        assert_eq!(
            c5,
            GraphParams { alpha: 2, matching: 2, edge_cover: 3, is_bipartite: false, is_forest: false }
        );
        let k2 = graph_params(&path(2), 24, 20).unwrap();
        assert_eq!(
            k2,
            GraphParams { alpha: 1, matching: 1, edge_cover: 1, is_bipartite: true, is_forest: true }
        );
        assert_eq!(independence_number(&petersen(), 24).unwrap(), 4);
        assert_eq!(maximum_matching(&petersen(), 20).unwrap(), 5);
        assert_eq!(independence_number(&complete(6), 24).unwrap(), 1);
    }

    #[test]
    fn isolated_vertex_blocks_edge_cover() {
        let g = Graph::unit(3, [(0, 1)]).unwrap();
        assert_eq!(edge_cover_number(&g, 20), Err(Error::IsolatedVertex(2)));
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(independence_number(&path(30), 24), Err(Error::TooLarge { .. })));
    }
}

//! Exhaustive combinatorial oracles for the cut constants.
//!
//! Every oracle enumerates its whole search space, so results are exact. Among
//! optimal certificates the one with the lexicographically smallest list of
//! sorted vertex sets is returned; bipartitions always list the side holding
//! vertex 0 first.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functionals::{Opt, RatioKind};
use crate::graph::{Graph, VertexSet};
use crate::rational::Rational;

/// Enumeration limits, in vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// `2ⁿ` subset scans.
    pub subset: usize,
    /// `3ⁿ` set-pair scans.
    pub set_pair: usize,
    /// Multi-pair scans for `h⁺_k`.
    pub kway: usize,
    /// Subpartition scans for `M_k`.
    pub partition: usize,
    /// Independence number search.
    pub alpha: usize,
    /// Matching search.
    pub matching: usize,
    /// Ternary eigenvector scans, each candidate solving a linear program.
    pub scan: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { subset: 20, set_pair: 14, kway: 12, partition: 10, alpha: 24, matching: 20, scan: 10 }
    }
}

impl Caps {
    pub fn uniform(cap: usize) -> Self {
        Caps { subset: cap, set_pair: cap, kway: cap, partition: cap, alpha: cap, matching: cap, scan: cap }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertKind {
    Subset,
    SetPair,
    Subpartition,
    Partition,
}

/// An optimal set system and its objective value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutCertificate {
    pub kind: CertKind,
    pub sets: Vec<VertexSet>,
    pub value: Rational,
}

pub(crate) fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap.min(63) {
        return Err(Error::TooLarge { what, n, cap });
    }
    Ok(())
}

/// Running optimum with the lexicographic tie-break.
struct Best {
    opt: Opt,
    value: Option<Rational>,
    sets: Vec<VertexSet>,
}

impl Best {
    fn new(opt: Opt) -> Self {
        Best { opt, value: None, sets: Vec::new() }
    }

    fn offer(&mut self, value: Rational, sets: impl FnOnce() -> Vec<VertexSet>) {
        let ord = match &self.value {
            None => Ordering::Less,
            Some(v) => match self.opt {
                Opt::Min => value.cmp(v),
                Opt::Max => v.cmp(&value),
            },
        };
        match ord {
            Ordering::Less => {
                self.value = Some(value);
                self.sets = sets();
            }
            Ordering::Equal => {
                let s = sets();
                if s < self.sets {
                    self.sets = s;
                }
            }
            Ordering::Greater => {}
        }
    }

    fn finish(self, kind: CertKind) -> Option<CutCertificate> {
        self.value.map(|value| CutCertificate { kind, sets: self.sets, value })
    }
}

/// Edge list and measure flattened for mask arithmetic.
struct Flat {
    n: usize,
    edges: Vec<(usize, usize, Rational)>,
    mu: Vec<Rational>,
    vol: Rational,
}

impl Flat {
    fn new(g: &Graph) -> Self {
        Flat {
            n: g.n(),
            edges: g.edges().iter().map(|e| (e.u, e.v, e.w.clone())).collect(),
            mu: g.mu().to_vec(),
            vol: g.vol_all(),
        }
    }

    fn vol(&self, mask: u64) -> Rational {
        let mut total = Rational::zero();
        let mut rest = mask;
        while rest != 0 {
            total += &self.mu[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        total
    }

    fn boundary(&self, mask: u64) -> Rational {
        let mut total = Rational::zero();
        for (u, v, w) in &self.edges {
            if (mask >> u) & 1 != (mask >> v) & 1 {
                total += w;
            }
        }
        total
    }

    fn full(&self) -> u64 {
        (1u64 << self.n) - 1
    }
}

/// Weight sums of one set-pair `(A, B)` with `C` the rest.
struct PairWeights {
    ab: Rational,
    aa: Rational,
    bb: Rational,
    /// Edges between `A ∪ B` and `C`.
    out: Rational,
}

impl Flat {
    fn pair_weights(&self, labels: &[u8]) -> PairWeights {
        let mut pw = PairWeights {
            ab: Rational::zero(),
            aa: Rational::zero(),
            bb: Rational::zero(),
            out: Rational::zero(),
        };
        for (u, v, w) in &self.edges {
            match (labels[*u], labels[*v]) {
                (1, 2) | (2, 1) => pw.ab += w,
                (1, 1) => pw.aa += w,
                (2, 2) => pw.bb += w,
                (0, 0) => {}
                _ => pw.out += w,
            }
        }
        pw
    }
}

fn mask_set(mask: u64) -> VertexSet {
    VertexSet::from_mask(mask)
}

fn bipartition(n: usize, mask: u64) -> Vec<VertexSet> {
    let s = mask_set(mask);
    let c = s.complement(n);
    vec![s, c]
}

/// Visits every `(A, B)` with labels 0 (neither), 1 (A), 2 (B), in base-3 order.
fn for_each_pair(n: usize, mut f: impl FnMut(&[u8], u64, u64)) {
    let mut labels = vec![0u8; n];
    let (mut a, mut b) = (0u64, 0u64);
    loop {
        f(&labels, a, b);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            let bit = 1u64 << i;
            match labels[i] {
                0 => {
                    labels[i] = 1;
                    a |= bit;
                    break;
                }
                1 => {
                    labels[i] = 2;
                    a &= !bit;
                    b |= bit;
                    break;
                }
                _ => {
                    labels[i] = 0;
                    b &= !bit;
                    i += 1;
                }
            }
        }
    }
}

fn two_cut_scan(
    g: &Graph,
    cap: usize,
    opt: Opt,
    nontrivial: bool,
    objective: impl Fn(&Flat, u64, &Rational) -> Option<Rational>,
) -> Result<CutCertificate> {
    check_cap("subset enumeration", g.n(), cap)?;
    if g.n() < 2 {
        return Err(Error::InvalidParameter("need at least two vertices".into()));
    }
    let flat = Flat::new(g);
    let full = flat.full();
    let mut best = Best::new(opt);
    // Masks always contain vertex 0.
    for half in 0..(1u64 << (g.n() - 1)) {
        let mask = (half << 1) | 1;
        if nontrivial && mask == full {
            continue;
        }
        let cut = flat.boundary(mask);
        if let Some(value) = objective(&flat, mask, &cut) {
            best.offer(value, || bipartition(g.n(), mask));
        }
    }
    best.finish(CertKind::Subset).ok_or_else(|| Error::DegenerateDenominator("no admissible cut".into()))
}

/// `h(G) = min |∂S| / min(vol S, vol Sᶜ)`.
pub fn cheeger(g: &Graph, caps: &Caps) -> Result<CutCertificate> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    two_cut_scan(g, caps.subset, Opt::Min, true, |f, mask, cut| {
        let small = f.vol(mask).min(f.vol(f.full() & !mask));
        (!small.is_zero()).then(|| cut / small)
    })
}

/// `h_max(G) = max 2|E(S,Sᶜ)| / vol(V)`.
pub fn maxcut(g: &Graph, caps: &Caps) -> Result<CutCertificate> {
    two_cut_scan(g, caps.subset, Opt::Max, false, |f, _, cut| {
        (!f.vol.is_zero()).then(|| cut * Rational::from_integer(2) / &f.vol)
    })
}

/// Minimum of `2|E(S,Sᶜ)| / vol(V)` over nontrivial `S`.
pub fn mincut(g: &Graph, caps: &Caps) -> Result<CutCertificate> {
    two_cut_scan(g, caps.subset, Opt::Min, true, |f, _, cut| {
        (!f.vol.is_zero()).then(|| cut * Rational::from_integer(2) / &f.vol)
    })
}

/// `h_anti(G) = max |∂S| / max(vol S, vol Sᶜ)`.
pub fn anti_cheeger(g: &Graph, caps: &Caps) -> Result<CutCertificate> {
    two_cut_scan(g, caps.subset, Opt::Max, true, |f, mask, cut| {
        let big = f.vol(mask).max(f.vol(f.full() & !mask));
        (!big.is_zero()).then(|| cut / big)
    })
}

fn pair_scan(
    g: &Graph,
    cap: usize,
    opt: Opt,
    objective: impl Fn(&Flat, &[u8], u64, u64) -> Option<Rational>,
) -> Result<CutCertificate> {
    check_cap("set-pair enumeration", g.n(), cap)?;
    let flat = Flat::new(g);
    let mut best = Best::new(opt);
    for_each_pair(g.n(), |labels, a, b| {
        if a | b == 0 {
            return;
        }
        if let Some(value) = objective(&flat, labels, a, b) {
            best.offer(value, || vec![mask_set(a), mask_set(b)]);
        }
    });
    best.finish(CertKind::SetPair)
        .ok_or_else(|| Error::DegenerateDenominator("no admissible set-pair".into()))
}

/// `h⁺(G) = max 2|E(V₁,V₂)| / vol(V₁ ∪ V₂)`.
pub fn dual_cheeger(g: &Graph, caps: &Caps) -> Result<CutCertificate> {
    pair_scan(g, caps.set_pair, Opt::Max, |f, labels, a, b| {
        let vol = f.vol(a | b);
        let pw = f.pair_weights(labels);
        (!vol.is_zero()).then(|| pw.ab * Rational::from_integer(2) / vol)
    })
}

/// `ĥ⁺(G) = max (2|E(V₁,V₂)| + |∂(V₁∪V₂)|) / (vol(V₁∪V₂) + |∂(V₁∪V₂)|)`.
pub fn modified_dual_cheeger(g: &Graph, caps: &Caps) -> Result<CutCertificate> {
    pair_scan(g, caps.set_pair, Opt::Max, |f, labels, a, b| {
        let pw = f.pair_weights(labels);
        let den = f.vol(a | b) + &pw.out;
        (!den.is_zero()).then(|| (pw.ab * Rational::from_integer(2) + &pw.out) / den)
    })
}

/// Value of a set-pair ratio at `1_A − 1_B`, written with cut weights.
fn pair_ratio(kind: RatioKind, f: &Flat, labels: &[u8], a: u64, b: u64) -> Option<Rational> {
    let two = Rational::from_integer(2);
    let pw = f.pair_weights(labels);
    let tv = &pw.ab * &two + &pw.out;
    let tv_plus = (&pw.aa + &pw.bb) * &two + &pw.out;
    let full = f.full();
    let median = || {
        let va = f.vol(a).min(f.vol(full & !a));
        let vb = f.vol(b).min(f.vol(full & !b));
        va + vb
    };
    let (num, den) = match kind {
        RatioKind::CheegerTv => (tv, median()),
        RatioKind::CheegerNew => {
            let e: Rational = f.edges.iter().map(|(_, _, w)| w).sum::<Rational>() * &two;
            (e - tv_plus, median())
        }
        RatioKind::Dual => (tv_plus, f.vol(a | b)),
        RatioKind::ModifiedDual => {
            let den = &tv_plus + &tv;
            (tv_plus, den)
        }
        RatioKind::MaxcutRatio => (tv, f.vol.clone()),
        RatioKind::Anti => (tv, &f.vol * &two - median()),
    };
    (!den.is_zero()).then(|| num / den)
}

/// Optimizes a registered ratio over set-pairs `(A, B)`, i.e. over the vectors
/// `1_A − 1_B`; constant vectors are excluded for the Cheeger forms.
pub fn ratio_oracle(kind: RatioKind, g: &Graph, caps: &Caps) -> Result<CutCertificate> {
    pair_scan(g, caps.set_pair, kind.opt(), |f, labels, a, b| {
        let full = f.full();
        if kind.needs_nonconstant() && (a == full || b == full) {
            return None;
        }
        pair_ratio(kind, f, labels, a, b)
    })
}

/// `h⁺_k(G)`: the largest `t` such that `k` set-pairs with pairwise disjoint
/// supports all reach ratio `t`.
pub fn k_way_dual_cheeger(g: &Graph, k: usize, caps: &Caps) -> Result<CutCertificate> {
    let n = g.n();
    if k < 1 || k > n {
        return Err(Error::BadK { k, n });
    }
    check_cap("k-way set-pair enumeration", n, caps.kway)?;
    let flat = Flat::new(g);
    let size = 1usize << n;
    // Best split of every support U.
    let mut best: Vec<Option<(Rational, u64)>> = vec![None; size];
    for_each_pair(n, |labels, a, b| {
        let u = a | b;
        if u == 0 {
            return;
        }
        let vol = flat.vol(u);
        if vol.is_zero() {
            return;
        }
        let value = flat.pair_weights(labels).ab * Rational::from_integer(2) / vol;
        let slot = &mut best[u as usize];
        let better = match slot {
            None => true,
            Some((v, a0)) => value > *v || (value == *v && pair_key(a, u) < pair_key(*a0, u)),
        };
        if better {
            *slot = Some((value, a));
        }
    });
    // layer[j][mask]: best min-ratio of j disjoint supports inside mask, and
    // the support of one pair achieving it.
    let mut layer: Vec<Vec<Option<Rational>>> = vec![Vec::new()];
    let mut choice: Vec<Vec<usize>> = vec![Vec::new()];
    for j in 1..=k {
        let mut cur: Vec<Option<Rational>> = vec![None; size];
        let mut pick = vec![0usize; size];
        for mask in 1..size {
            let low = mask & mask.wrapping_neg();
            let rest = mask & !low;
            let mut top = cur[rest].clone();
            let mut top_pick = pick[rest];
            let mut sub = rest;
            loop {
                let u = sub | low;
                if let Some((bu, _)) = &best[u] {
                    let cand = if j == 1 {
                        Some(bu.clone())
                    } else {
                        layer[j - 1][mask & !u].clone().map(|p| p.min(bu.clone()))
                    };
                    if let Some(c) = cand {
                        if top.as_ref().is_none_or(|t| c > *t) {
                            top = Some(c);
                            top_pick = u;
                        }
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
            cur[mask] = top;
            pick[mask] = top_pick;
        }
        layer.push(cur);
        choice.push(pick);
    }
    let full = size - 1;
    let value = layer[k][full].clone().ok_or(Error::BadK { k, n })?;
    let mut sets = Vec::new();
    let mut mask = full;
    for j in (1..=k).rev() {
        let u = choice[j][mask];
        let (_, a) = best[u].clone().expect("recorded support has a split");
        sets.push(mask_set(a));
        sets.push(mask_set(u as u64 & !a));
        mask &= !u;
    }
    Ok(CutCertificate { kind: CertKind::SetPair, sets, value })
}

fn pair_key(a: u64, u: u64) -> (VertexSet, VertexSet) {
    (mask_set(a), mask_set(u & !a))
}

/// Visits set partitions of `items` into exactly `k` nonempty blocks as
/// block labels `1..=k`, blocks numbered by first appearance.
fn for_each_partition(items: &[usize], k: usize, labels: &mut [usize], f: &mut impl FnMut(&[usize])) {
    fn rec(
        items: &[usize],
        pos: usize,
        used: usize,
        k: usize,
        labels: &mut [usize],
        f: &mut impl FnMut(&[usize]),
    ) {
        if pos == items.len() {
            if used == k {
                f(labels);
            }
            return;
        }
        if k - used > items.len() - pos {
            return;
        }
        for b in 1..=(used + 1).min(k) {
            labels[items[pos]] = b;
            rec(items, pos + 1, used.max(b), k, labels, f);
        }
        labels[items[pos]] = 0;
    }
    rec(items, 0, 0, k, labels, f);
}

/// `MC(V₁,…,V_k) = 2 max_S Σ_{i∈S, j∉S} |E(V_i,V_j)| + Σ_i |E(V_i,V₀)|`.
fn minmax_value(flat: &Flat, labels: &[usize], k: usize) -> Rational {
    let mut q = vec![vec![Rational::zero(); k + 1]; k + 1];
    for (u, v, w) in &flat.edges {
        let (a, b) = (labels[*u], labels[*v]);
        if a != b {
            q[a][b] += w;
            q[b][a] += w;
        }
    }
    let to_rest: Rational = (1..=k).map(|i| &q[i][0]).sum();
    let mut top = Rational::zero();
    // Block 1 stays in S; complements give the same sum.
    for s in 0..(1u64 << (k - 1)) {
        let inside = (s << 1) | 1;
        let mut total = Rational::zero();
        for i in 1..=k {
            if (inside >> (i - 1)) & 1 == 1 {
                for j in 1..=k {
                    if (inside >> (j - 1)) & 1 == 0 {
                        total += &q[i][j];
                    }
                }
            }
        }
        top = top.max(total);
    }
    top * Rational::from_integer(2) + to_rest
}

/// Min-max `k`-cut `M_k` over subpartitions into `k` nonempty blocks, or
/// `M′_k` over partitions when `require_partition` is set.
pub fn minmax_k_cut(g: &Graph, k: usize, require_partition: bool, caps: &Caps) -> Result<CutCertificate> {
    let n = g.n();
    if k < 1 || k > n {
        return Err(Error::BadK { k, n });
    }
    check_cap("subpartition enumeration", n, caps.partition)?;
    let flat = Flat::new(g);
    let mut best = Best::new(Opt::Min);
    let rest_masks: Vec<u64> = if require_partition { vec![0] } else { (0..(1u64 << n)).collect() };
    let mut labels = vec![0usize; n];
    for rest in rest_masks {
        let items: Vec<usize> = (0..n).filter(|i| (rest >> i) & 1 == 0).collect();
        if items.len() < k {
            continue;
        }
        labels.iter_mut().for_each(|l| *l = 0);
        for_each_partition(&items, k, &mut labels, &mut |labels| {
            let value = minmax_value(&flat, labels, k);
            best.offer(value, || {
                (1..=k).map(|b| (0..n).filter(|&i| labels[i] == b).collect::<VertexSet>()).collect()
            });
        });
    }
    let kind = if require_partition { CertKind::Partition } else { CertKind::Subpartition };
    Ok(best.finish(kind).expect("k ≤ n admits a subpartition"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, petersen, star_triangle};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn set(ids: &[usize]) -> VertexSet {
        VertexSet::from_ids(ids.iter().copied())
    }

    #[test]
    fn cheeger_values() {
        let caps = Caps::default();
        let p4 = cheeger(&path(4), &caps).unwrap();
        assert_eq!(p4.value, q(1, 3));
        assert_eq!(p4.sets[0], set(&[0, 1]));
        assert_eq!(cheeger(&cycle(4), &caps).unwrap().value, q(1, 2));
        let k2 = cheeger(&path(2), &caps).unwrap();
        assert_eq!((k2.value, k2.sets[0].clone()), (q(1, 1), set(&[0])));
        let split = Graph::unit(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(cheeger(&split, &caps), Err(Error::Disconnected));
    }

    #[test]
    fn maxcut_values() {
        let caps = Caps::default();
        assert_eq!(maxcut(&complete(3), &caps).unwrap().value, q(2, 3));
        assert_eq!(maxcut(&star_triangle(2), &caps).unwrap().value, q(2, 3));
        assert_eq!(maxcut(&petersen(), &caps).unwrap().value, q(4, 5));
        assert_eq!(mincut(&complete(3), &caps).unwrap().value, q(2, 3));
        assert_eq!(mincut(&path(4), &caps).unwrap().value, q(1, 3));
    }

    #[test]
    fn dual_values() {
        let caps = Caps::default();
        let k3 = dual_cheeger(&complete(3), &caps).unwrap();
        assert_eq!(k3.value, q(2, 3));
        assert_eq!(k3.sets, vec![set(&[0]), set(&[1, 2])]);
        assert_eq!(dual_cheeger(&cycle(5), &caps).unwrap().value, q(4, 5));
        assert_eq!(dual_cheeger(&cycle(6), &caps).unwrap().value, q(1, 1));
        assert_eq!(modified_dual_cheeger(&path(5), &caps).unwrap().value, q(1, 1));
    }

    #[test]
    fn anti_values() {
        let caps = Caps::default();
        let k3 = anti_cheeger(&complete(3), &caps).unwrap();
        assert_eq!((k3.value, k3.sets[0].clone()), (q(1, 2), set(&[0])));
        assert_eq!(anti_cheeger(&path(2), &caps).unwrap().value, q(1, 1));
    }

    #[test]
    fn minmax_small() {
        let caps = Caps::default();
        let k3 = complete(3);
        assert_eq!(minmax_k_cut(&k3, 1, false, &caps).unwrap().value, q(0, 1));
        assert_eq!(minmax_k_cut(&k3, 2, false, &caps).unwrap().value, q(4, 1));
        assert_eq!(minmax_k_cut(&k3, 3, false, &caps).unwrap().value, q(4, 1));
        assert!(matches!(minmax_k_cut(&k3, 4, false, &caps), Err(Error::BadK { .. })));
    }

    #[test]
    fn kway_first_layer_is_dual() {
        let caps = Caps::default();
        for g in [complete(4), cycle(5), path(4), petersen()] {
            assert_eq!(
                k_way_dual_cheeger(&g, 1, &caps).unwrap().value,
                dual_cheeger(&g, &caps).unwrap().value
            );
        }
        assert_eq!(k_way_dual_cheeger(&path(3), 2, &caps).unwrap().value, q(0, 1));
        assert!(matches!(k_way_dual_cheeger(&path(3), 0, &caps), Err(Error::BadK { .. })));
    }

    #[test]
    fn caps_raise_too_large() {
        let caps = Caps::uniform(4);
        assert!(matches!(maxcut(&path(5), &caps), Err(Error::TooLarge { .. })));
        assert!(matches!(dual_cheeger(&path(5), &caps), Err(Error::TooLarge { .. })));
    }
}

//! Nodal domains of vertex vectors and the structure theorems on them.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::eigen::{verify, EigenpairReport, EigenproblemId};
use crate::error::{Error, Result};
use crate::functionals::{check_len, indicator, median_interval, sup_norm, RVector};
use crate::graph::{Graph, VertexSet};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// Components of `{x > 0}` and `{x < 0}`.
    #[default]
    SignBased,
    /// Components of the support `{x ≠ 0}`.
    SupportBased,
    /// Components of `D₊ = {x = ‖x‖∞}`, `D₋ = {x = −‖x‖∞}` and `D₀`.
    SupNormBased,
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sign" | "sign_based" => Convention::SignBased,
            "support" | "support_based" => Convention::SupportBased,
            "sup_norm" | "sup_norm_based" => Convention::SupNormBased,
            _ => return Err(Error::InvalidParameter(format!("unknown convention `{s}`"))),
        })
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::SignBased => "sign_based",
            Convention::SupportBased => "support_based",
            Convention::SupNormBased => "sup_norm_based",
        })
    }
}

/// A component of `D₊ ∪ D₋` split into its `D₊` part `a` and `D₋` part `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitComponent {
    pub a: VertexSet,
    pub b: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodalReport {
    pub convention: Convention,
    pub strong_pos: Vec<VertexSet>,
    pub strong_neg: Vec<VertexSet>,
    pub support_domains: Vec<VertexSet>,
    pub d_plus: VertexSet,
    pub d_minus: VertexSet,
    pub d_zero: VertexSet,
    /// The ± domains of the chosen convention.
    pub pm_domains: Vec<VertexSet>,
    pub null_domains: Vec<VertexSet>,
    pub split_components: Vec<SplitComponent>,
    #[serde(rename = "S")]
    pub s: usize,
    #[serde(rename = "S0")]
    pub s0: usize,
    #[serde(rename = "Sprime")]
    pub sprime: usize,
    #[serde(rename = "N_nonsingleton")]
    pub n_nonsingleton: usize,
}

pub fn analyze(g: &Graph, x: &[Rational], convention: Convention) -> Result<NodalReport> {
    check_len(g, x)?;
    if x.iter().all(Rational::is_zero) {
        return Err(Error::ZeroVector);
    }
    let n = g.n();
    let m = sup_norm(x);
    let set = |f: &dyn Fn(&Rational) -> bool| -> VertexSet { (0..n).filter(|&i| f(&x[i])).collect() };
    let pos = set(&|t| t.is_positive());
    let neg = set(&|t| t.is_negative());
    let zero = set(&|t| t.is_zero());
    let d_plus = set(&|t| t == &m);
    let d_minus = set(&|t| t == &-&m);
    let d_zero = set(&|t| t.abs() < m);

    let strong_pos = g.connected_components(&pos);
    let strong_neg = g.connected_components(&neg);
    let support_domains = g.connected_components(&pos.union(&neg));
    let split_components: Vec<SplitComponent> = g
        .connected_components(&d_plus.union(&d_minus))
        .into_iter()
        .map(|c| SplitComponent { a: c.intersection(&d_plus), b: c.intersection(&d_minus) })
        .collect();

    let (pm_domains, null_domains) = match convention {
        Convention::SignBased => {
            let mut pm = strong_pos.clone();
            pm.extend(strong_neg.iter().cloned());
            (pm, g.connected_components(&zero))
        }
        Convention::SupportBased => (support_domains.clone(), g.connected_components(&zero)),
        Convention::SupNormBased => {
            let mut pm = g.connected_components(&d_plus);
            pm.extend(g.connected_components(&d_minus));
            (pm, g.connected_components(&d_zero))
        }
    };
    let n_nonsingleton = null_domains.iter().filter(|d| d.len() >= 2).count();
    Ok(NodalReport {
        convention,
        s: pm_domains.len(),
        s0: null_domains.len(),
        sprime: split_components.len(),
        n_nonsingleton,
        strong_pos,
        strong_neg,
        support_domains,
        d_plus,
        d_minus,
        d_zero,
        pm_domains,
        null_domains,
        split_components,
    })
}

fn require(report: &EigenpairReport, allowed: &[EigenproblemId]) -> Result<()> {
    if !allowed.contains(&report.problem) {
        return Err(Error::InvalidParameter(format!("check does not apply to {}", report.problem)));
    }
    if !report.verdict {
        return Err(Error::NotVerified);
    }
    Ok(())
}

/// `|E(D₊, ω)| = |E(D₋, ω)|` for every null domain `ω` of a verified
/// `maxcut_inf` eigenpair.
pub fn check_null_symmetry(g: &Graph, report: &EigenpairReport) -> Result<bool> {
    require(report, &[EigenproblemId::MaxcutInf])?;
    let nr = analyze(g, &report.x, Convention::SupNormBased)?;
    for w in &nr.null_domains {
        if g.cut_weight(&nr.d_plus, w)? != g.cut_weight(&nr.d_minus, w)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `S₀(x) ≤ 2` for an eigenvector of the smallest nonzero `maxcut_inf`
/// eigenvalue; the caller supplies such an eigenpair.
pub fn check_min_nonzero_null_count(g: &Graph, report: &EigenpairReport) -> Result<bool> {
    require(report, &[EigenproblemId::MaxcutInf])?;
    Ok(analyze(g, &report.x, Convention::SupNormBased)?.s0 <= 2)
}

/// Outcome of the checks on an eigenvector of the largest eigenvalue.
/// A check that does not apply to the problem is `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub problem: EigenproblemId,
    pub sprime: usize,
    /// `|∂A_i| = |∂B_i|` per component.
    pub boundary_balance: Option<bool>,
    /// `|E(A_i, {v})| = |E(B_i, {v})|` for `v ∈ D₀`.
    pub vertex_balance: Option<bool>,
    /// Every `Σ a_i 1_{A_i,B_i}` with `a_i = ±1` verifies at the same eigenvalue.
    pub sign_flip_closure: Option<bool>,
    /// `D₀` induces no edge.
    pub null_edgeless: Option<bool>,
    /// Every null component is a single vertex.
    pub null_singletons: Option<bool>,
    /// `S′ ≤ (n − 1)/2` when `n ≥ 3`.
    pub sprime_bound: Option<bool>,
    /// `|D₀| ≤ 1` whenever some median has `|c| < ‖x‖∞`.
    pub median_null_bound: Option<bool>,
    /// `S ≤ k + r − 1` and `S₀ ≤ k + r − 2`.
    pub courant: Option<bool>,
    pub all_hold: bool,
}

/// Largest number of components for the exhaustive sign-flip check.
const FLIP_CAP: usize = 16;

/// Structure of an eigenvector at the largest eigenvalue of `maxcut_inf` or
/// `anti_cheeger`. Whether the eigenvalue is the largest is the caller's
/// claim. `courant = Some((k, r))` adds the Courant-type count bounds.
pub fn check_max_eigvec_structure(
    g: &Graph,
    report: &EigenpairReport,
    courant: Option<(usize, usize)>,
) -> Result<StructureReport> {
    require(report, &[EigenproblemId::MaxcutInf, EigenproblemId::AntiCheeger])?;
    let x = &report.x;
    let nr = analyze(g, x, Convention::SupNormBased)?;
    let n = g.n();
    let maxcut = report.problem == EigenproblemId::MaxcutInf;

    let null_edgeless = g.internal_weight(&nr.d_zero).is_zero();
    let null_singletons = nr.n_nonsingleton == 0;

    let (mut boundary_balance, mut vertex_balance, mut sign_flip, mut sprime_bound) =
        (None, None, None, None);
    let mut median_null_bound = None;
    if maxcut {
        let mut bb = true;
        let mut vb = true;
        for c in &nr.split_components {
            bb &= g.boundary(&c.a) == g.boundary(&c.b);
            for v in nr.d_zero.iter() {
                let sv = VertexSet::singleton(v);
                vb &= g.cut_weight(&c.a, &sv)? == g.cut_weight(&c.b, &sv)?;
            }
        }
        boundary_balance = Some(bb);
        vertex_balance = Some(vb);
        sign_flip = Some(sign_flip_closure(g, report, &nr.split_components)?);
        sprime_bound = Some(n < 3 || 2 * nr.sprime < n);
    } else {
        let iv = median_interval(g, x)?;
        let m = sup_norm(x);
        let interior = iv.lo < m && iv.hi > -&m;
        median_null_bound = Some(!interior || nr.d_zero.len() <= 1);
    }
    let courant = courant.map(|(k, r)| nr.s < k + r && nr.s0 + 2 <= k + r);
    let all_hold = [
        boundary_balance,
        vertex_balance,
        sign_flip,
        Some(null_edgeless),
        Some(null_singletons),
        sprime_bound,
        median_null_bound,
        courant,
    ]
    .iter()
    .all(|c| c.unwrap_or(true));
    Ok(StructureReport {
        problem: report.problem,
        sprime: nr.sprime,
        boundary_balance,
        vertex_balance,
        sign_flip_closure: sign_flip,
        null_edgeless: Some(null_edgeless),
        null_singletons: Some(null_singletons),
        sprime_bound,
        median_null_bound,
        courant,
        all_hold,
    })
}

fn sign_flip_closure(g: &Graph, report: &EigenpairReport, comps: &[SplitComponent]) -> Result<bool> {
    let k = comps.len();
    if k > FLIP_CAP {
        return Err(Error::TooLarge { what: "sign-flip closure", n: k, cap: FLIP_CAP });
    }
    for signs in 0..(1u64 << k) {
        let mut y: RVector = vec![Rational::zero(); g.n()];
        for (i, c) in comps.iter().enumerate() {
            let part =
                if signs >> i & 1 == 0 { indicator(g.n(), &c.a, &c.b) } else { indicator(g.n(), &c.b, &c.a) };
            for (yj, pj) in y.iter_mut().zip(part) {
                *yj += pj;
            }
        }
        if !verify(report.problem, g, &report.lambda, &y)?.verdict {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{path, star_triangle};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn ids(sets: &[VertexSet]) -> Vec<Vec<usize>> {
        sets.iter().map(VertexSet::to_vec).collect()
    }

    fn star_triangle_vector(k: usize) -> RVector {
        let mut x = vec![q(0); 2 * k + 1];
        for i in 0..k {
            x[i] = q(1);
            x[k + i] = q(-1);
        }
        x
    }

    #[test]
    fn path_three_conventions() {
        let g = path(3);
        let x = vec![q(1), q(0), q(-1)];
        let r = analyze(&g, &x, Convention::SignBased).unwrap();
        assert_eq!(ids(&r.strong_pos), vec![vec![0]]);
        assert_eq!(ids(&r.strong_neg), vec![vec![2]]);
        assert_eq!(r.s, 2);
        let r = analyze(&g, &x, Convention::SupportBased).unwrap();
        assert_eq!(ids(&r.support_domains), vec![vec![0], vec![2]]);
        assert_eq!(r.s, 2);
        assert_eq!(r.s0, 1);
    }

    #[test]
    fn star_triangle_split() {
        let g = star_triangle(2);
        let x = star_triangle_vector(2);
        let r = analyze(&g, &x, Convention::SupNormBased).unwrap();
        assert_eq!(r.sprime, 2);
        assert_eq!(r.d_zero.to_vec(), vec![4]);
        assert_eq!(r.s, 4);
        assert_eq!(r.s0, 1);
    }

    #[test]
    fn structure_on_star_triangles() {
        for k in 1..=3 {
            let g = star_triangle(k);
            let x = star_triangle_vector(k);
            let rep = verify(EigenproblemId::MaxcutInf, &g, &Rational::new(2, 3), &x).unwrap();
            assert!(check_null_symmetry(&g, &rep).unwrap());
            let s = check_max_eigvec_structure(&g, &rep, None).unwrap();
            assert!(s.all_hold, "{s:?}");
            assert_eq!(s.sprime, k);
        }
    }

    #[test]
    fn unverified_pairs_are_refused() {
        let g = path(2);
        let x = vec![q(1), q(-1)];
        let rep = verify(EigenproblemId::MaxcutInf, &g, &q(0), &x).unwrap();
        assert!(!rep.verdict);
        assert_eq!(check_null_symmetry(&g, &rep), Err(Error::NotVerified));
        let rep = verify(EigenproblemId::MaxcutInf, &g, &q(1), &x).unwrap();
        let s = check_max_eigvec_structure(&g, &rep, None).unwrap();
        assert!(s.all_hold);
        assert_eq!(s.sprime, 1);
    }
}

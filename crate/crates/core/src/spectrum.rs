//! Normalized Laplacian spectrum and the inequalities tying it to the
//! combinatorial constants. Floating point is confined to this module.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::eigen::{spectrum_scan, ternary_eigenpairs, EigenproblemId};
use crate::error::{Error, Result};
use crate::graph::{edge_cover_number, independence_number, is_bipartite, is_forest, Graph};
use crate::nodal::{analyze, Convention};
use crate::oracles::{cheeger, dual_cheeger, k_way_dual_cheeger, maxcut, Caps};
use crate::rational::Rational;

/// Absolute tolerance for every float comparison.
pub const TOLERANCE: f64 = 1e-9;

/// Largest graph the dense solver accepts.
pub const SPECTRUM_CAP: usize = 64;

const OFF_DIAGONAL_TARGET: f64 = 1e-12;
const MAX_SWEEPS: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k]` belongs to `eigenvalues[k]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvectors: Option<Vec<Vec<f64>>>,
    /// Largest `|Av − λv|∞` over the returned pairs.
    pub residual_bound: f64,
}

fn off_diagonal(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut s = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                s += a[p][q] * a[p][q];
            }
        }
    }
    s.sqrt()
}

/// Eigenpairs of a symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigen(matrix: &[Vec<f64>]) -> Spectrum {
    let n = matrix.len();
    let mut a = matrix.to_vec();
    let mut v: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    for _ in 0..MAX_SWEEPS {
        if off_diagonal(&a) < OFF_DIAGONAL_TARGET {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i][i]).collect();
    let eigenvectors: Vec<Vec<f64>> = order.iter().map(|&k| (0..n).map(|i| v[i][k]).collect()).collect();
    let mut residual: f64 = 0.0;
    for (lambda, x) in eigenvalues.iter().zip(&eigenvectors) {
        for i in 0..n {
            let ax: f64 = (0..n).map(|j| matrix[i][j] * x[j]).sum();
            residual = residual.max((ax - lambda * x[i]).abs());
        }
    }
    Spectrum { eigenvalues, eigenvectors: Some(eigenvectors), residual_bound: residual }
}

/// `I − D^{-1/2} W D^{-1/2}` with `D` the weighted degrees.
pub fn normalized_laplacian(g: &Graph) -> Result<Vec<Vec<f64>>> {
    if let Some(i) = g.isolated_vertex() {
        return Err(Error::IsolatedVertex(i));
    }
    let n = g.n();
    let d: Vec<f64> = g.degrees().iter().map(Rational::to_f64).collect();
    let mut l: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    for e in g.edges() {
        let w = e.w.to_f64() / (d[e.u] * d[e.v]).sqrt();
        l[e.u][e.v] -= w;
        l[e.v][e.u] -= w;
    }
    Ok(l)
}

pub fn normalized_laplacian_spectrum(g: &Graph) -> Result<Spectrum> {
    if g.n() > SPECTRUM_CAP {
        return Err(Error::TooLarge { what: "dense eigensolver", n: g.n(), cap: SPECTRUM_CAP });
    }
    Ok(jacobi_eigen(&normalized_laplacian(g)?))
}

/// `lhs ≤ mid ≤ rhs` within [`TOLERANCE`]. `exact` keeps the rational
/// constants the float sides were computed from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: f64,
    pub mid: f64,
    pub rhs: f64,
    pub holds: bool,
    pub slack: f64,
    pub exact: Vec<(String, Rational)>,
}

impl InequalityReport {
    pub fn new(
        name: impl Into<String>,
        lhs: f64,
        mid: f64,
        rhs: f64,
        exact: Vec<(String, Rational)>,
    ) -> Self {
        let holds = lhs <= mid + TOLERANCE && mid <= rhs + TOLERANCE;
        InequalityReport { name: name.into(), lhs, mid, rhs, holds, slack: (mid - lhs).min(rhs - mid), exact }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Suite {
    #[default]
    All,
    Cheeger,
    Dual,
    DelormePoljak,
    Kway,
    Forest,
    Multiplicity,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "cheeger" => Suite::Cheeger,
            "dual" => Suite::Dual,
            "delorme_poljak" | "maxcut" => Suite::DelormePoljak,
            "kway" => Suite::Kway,
            "forest" => Suite::Forest,
            "multiplicity" => Suite::Multiplicity,
            _ => return Err(Error::InvalidParameter(format!("unknown suite `{s}`"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Cheeger => "cheeger",
            Suite::Dual => "dual",
            Suite::DelormePoljak => "delorme_poljak",
            Suite::Kway => "kway",
            Suite::Forest => "forest",
            Suite::Multiplicity => "multiplicity",
        })
    }
}

fn degree_measured(g: &Graph) -> Result<Graph> {
    if g.has_degree_measure() {
        Ok(g.clone())
    } else {
        g.clone().with_measure(g.degrees().to_vec())
    }
}

fn named(items: &[(&str, &Rational)]) -> Vec<(String, Rational)> {
    items.iter().map(|(k, v)| (k.to_string(), (*v).clone())).collect()
}

/// Evaluates the selected inequalities. Constants are computed with the
/// degree measure so that they match the normalized Laplacian.
pub fn inequality_suite(g: &Graph, caps: &Caps, which: Suite) -> Result<Vec<InequalityReport>> {
    let g = degree_measured(g)?;
    let sp = normalized_laplacian_spectrum(&g)?;
    let lam = &sp.eigenvalues;
    let n = g.n();
    let lambda_n = lam[n - 1];
    let one = Rational::one();
    let mut out = Vec::new();
    let want = |s: Suite| which == Suite::All || which == s;

    if want(Suite::Cheeger) {
        let h = if g.is_connected() { cheeger(&g, caps)?.value } else { Rational::zero() };
        let hf = h.to_f64();
        out.push(InequalityReport::new(
            "cheeger",
            hf * hf / 2.0,
            lam[1.min(n - 1)],
            2.0 * hf,
            named(&[("h", &h)]),
        ));
    }
    if want(Suite::Dual) {
        let hp = dual_cheeger(&g, caps)?.value;
        let c = (&one - &hp).to_f64();
        out.push(InequalityReport::new(
            "dual_cheeger",
            c * c / 2.0,
            2.0 - lambda_n,
            2.0 * c,
            named(&[("h_plus", &hp)]),
        ));
    }
    if want(Suite::DelormePoljak) {
        let mc = maxcut(&g, caps)?;
        let vol = g.vol_all();
        // Cut weight 2|∂A|/vol(V) · vol(V)/2.
        let weight = &mc.value * &vol / Rational::from_integer(2);
        out.push(InequalityReport::new(
            "delorme_poljak",
            0.0,
            weight.to_f64(),
            vol.to_f64() / 4.0 * lambda_n,
            named(&[("h_max", &mc.value), ("maxcut_weight", &weight), ("vol", &vol)]),
        ));
    }
    if want(Suite::Kway) {
        out.extend(kway_reports(&g, caps)?);
    }
    if want(Suite::Forest) && is_forest(&g) {
        out.extend(forest_reports(&g, caps, lam)?);
    }
    if want(Suite::Multiplicity) {
        out.push(multiplicity_bounds_check(&g, caps)?);
        let alpha = independence_number(&g, caps.alpha)?;
        let low = lam.iter().filter(|&&l| l <= 1.0 + TOLERANCE).count();
        let high = lam.iter().filter(|&&l| l >= 1.0 - TOLERANCE).count();
        out.push(InequalityReport::new(
            "cvetkovic_inertia",
            0.0,
            alpha as f64,
            low.min(high) as f64,
            named(&[("alpha", &Rational::from(alpha))]),
        ));
    }
    Ok(out)
}

/// `1 − h⁺_{S(x)} ≤ c` on every scanned ternary signless eigenpair, with
/// `S(x)` its number of support domains, and `c₁ = 1 − h⁺₁` at the bottom of
/// the scan.
fn kway_reports(g: &Graph, caps: &Caps) -> Result<Vec<InequalityReport>> {
    let n = g.n();
    let one = Rational::one();
    let pairs = ternary_eigenpairs(EigenproblemId::SignlessOneLap, g, caps)?;
    let mut counted = Vec::with_capacity(pairs.len());
    for r in &pairs {
        counted.push((analyze(g, &r.x, Convention::SupportBased)?.support_domains.len(), &r.lambda));
    }
    let mut h: Vec<Option<Rational>> = vec![None; n + 1];
    for &(m, _) in &counted {
        if h[m].is_none() {
            h[m] = Some(k_way_dual_cheeger(g, m, caps)?.value);
        }
    }
    let mut out = Vec::new();
    let mut tightest: Option<InequalityReport> = None;
    let mut all_hold = true;
    for &(m, c) in &counted {
        let hm = h[m].as_ref().expect("computed above");
        let lower = &one - hm;
        all_hold &= &lower <= c;
        let rep = InequalityReport::new(
            format!("S={m}, c={c}"),
            lower.to_f64(),
            c.to_f64(),
            1.0,
            named(&[("c", c), ("h_plus_S", hm)]),
        );
        if tightest.as_ref().is_none_or(|t| rep.slack < t.slack) {
            tightest = Some(rep);
        }
    }
    if let Some(mut t) = tightest {
        t.name = format!("kway_lower({} pairs; tightest {})", pairs.len(), t.name);
        t.holds = all_hold;
        out.push(t);
    }
    if let Some(c1) = pairs.iter().map(|r| r.lambda.clone()).min() {
        let h1 = k_way_dual_cheeger(g, 1, caps)?.value;
        let upper = &one - &h1;
        let mut rep = InequalityReport::new(
            "kway_upper(k=1)",
            upper.to_f64(),
            c1.to_f64(),
            upper.to_f64(),
            named(&[("c1", &c1), ("h_plus_1", &h1)]),
        );
        rep.holds = c1 == upper;
        out.push(rep);
    }
    Ok(out)
}

/// On forests `c_k = 1 − h⁺_k`; checks that these values appear among the
/// signless eigenvalues, are nondecreasing, and satisfy
/// `c_k²/2 ≤ 2 − λ_{n−k+1} ≤ 2c_k`.
fn forest_reports(g: &Graph, caps: &Caps, lam: &[f64]) -> Result<Vec<InequalityReport>> {
    let n = g.n();
    let one = Rational::one();
    let scan: Vec<Rational> =
        spectrum_scan(EigenproblemId::SignlessOneLap, g, caps)?.into_iter().map(|p| p.lambda).collect();
    let mut out = Vec::new();
    let mut prev: Option<Rational> = None;
    let mut in_scan = true;
    let mut monotone = true;
    for k in 1..=n {
        let hk = k_way_dual_cheeger(g, k, caps)?.value;
        let ck = &one - &hk;
        in_scan &= scan.contains(&ck);
        if let Some(p) = &prev {
            monotone &= p <= &ck;
        }
        let c = ck.to_f64();
        out.push(InequalityReport::new(
            format!("forest_dual_cheeger(k={k})"),
            c * c / 2.0,
            2.0 - lam[n - k],
            2.0 * c,
            named(&[("c_k", &ck), ("h_plus_k", &hk)]),
        ));
        prev = Some(ck);
    }
    let flag = |name: &str, ok: bool| {
        let v = if ok { 1.0 } else { 0.0 };
        InequalityReport::new(name, 1.0, v, 1.0, Vec::new())
    };
    out.push(flag("forest_c_k_in_signless_scan", in_scan));
    out.push(flag("forest_c_k_monotone", monotone));
    Ok(out)
}

/// `α ≤ η` (independence number against edge cover number), with equality
/// required on connected bipartite graphs.
pub fn multiplicity_bounds_check(g: &Graph, caps: &Caps) -> Result<InequalityReport> {
    let alpha = independence_number(g, caps.alpha)?;
    let eta = edge_cover_number(g, caps.matching)?;
    let bipartite = is_bipartite(g);
    let equality = bipartite && g.is_connected();
    let rhs = if equality { alpha } else { eta };
    let exact = vec![
        ("alpha".to_string(), Rational::from(alpha)),
        ("edge_cover".to_string(), Rational::from(eta)),
        ("bipartite".to_string(), Rational::from(usize::from(bipartite))),
    ];
    let mut r = InequalityReport::new("multiplicity_bounds", alpha as f64, eta as f64, rhs as f64, exact);
    r.holds = alpha <= eta && (!equality || alpha == eta);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, star};

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
    }

    #[test]
    fn small_spectra() {
        let s = normalized_laplacian_spectrum(&complete(2)).unwrap();
        assert!(close(&s.eigenvalues, &[0.0, 2.0]));
        let s = normalized_laplacian_spectrum(&complete(3)).unwrap();
        assert!(close(&s.eigenvalues, &[0.0, 1.5, 1.5]));
        let s = normalized_laplacian_spectrum(&cycle(4)).unwrap();
        assert!(close(&s.eigenvalues, &[0.0, 1.0, 1.0, 2.0]));
        assert!(s.residual_bound < 1e-9);
    }

    #[test]
    fn isolated_vertex_rejected() {
        let g = Graph::unit(3, [(0, 1)]).unwrap();
        assert_eq!(normalized_laplacian_spectrum(&g), Err(Error::IsolatedVertex(2)));
    }

    #[test]
    fn suites_hold_on_small_graphs() {
        let caps = Caps::default();
        for g in [cycle(5), path(6), star(4), complete(4)] {
            for r in inequality_suite(&g, &caps, Suite::All).unwrap() {
                assert!(r.holds, "{r:?}");
            }
        }
    }

    #[test]
    fn multiplicity_numbers() {
        let caps = Caps::default();
        let r = multiplicity_bounds_check(&cycle(6), &caps).unwrap();
        assert_eq!((r.lhs, r.mid), (3.0, 3.0));
        assert!(r.holds);
        let r = multiplicity_bounds_check(&path(5), &caps).unwrap();
        assert_eq!((r.lhs, r.mid), (3.0, 3.0));
        assert!(r.holds);
    }
}

//! Exact verification of eigenpairs of the 1-Laplacian family.
//!
//! Each eigenproblem is written in coordinate form: edge selections
//! `z_e ∈ Sgn(x_u − x_v)` (difference type) or `z_e ∈ Sgn(x_u + x_v)`
//! (signless type), and where the problem involves the median functional `N`,
//! a selection `v_i ∈ μ_i Sgn(x_i − c)` with `Σ v = 0` for a median `c`.
//! Once the sign pattern of `x` is fixed these systems are linear, so each is
//! decided exactly by [`Lp::solve`].
//!
//! In the `cheeger_new` and `anti_cheeger` systems the median selection enters
//! as `λ·v`, that is, the eigenvalue multiplies the subgradient of `N`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functionals::{
    check_len, indicator, median_interval, ratio_objective, sup_norm, RVector, RatioKind,
};
use crate::graph::{Graph, VertexSet};
use crate::lp::{Affine, Choice, Lp};
use crate::oracles::{check_cap, Caps, CertKind, CutCertificate};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EigenproblemId {
    /// `0 ∈ Δ₁x − λ ∂N(x)`
    OneLap,
    /// `0 ∈ Δ₁⁺x − λ μ Sgn(x)`
    SignlessOneLap,
    /// `0 ∈ (1 − λ) Δ₁⁺x − λ Δ₁x`
    HatSignless,
    /// `0 ∈ e ∂‖x‖∞ − Δ₁⁺x − λ ∂N(x)`
    CheegerNew,
    /// `0 ∈ Δ₁x − λ vol(V) ∂‖x‖∞`
    MaxcutInf,
    /// `0 ∈ Δ₁x − λ (2 vol(V) ∂‖x‖∞ − ∂N(x))`
    AntiCheeger,
}

impl EigenproblemId {
    pub const ALL: [EigenproblemId; 6] = [
        EigenproblemId::OneLap,
        EigenproblemId::SignlessOneLap,
        EigenproblemId::HatSignless,
        EigenproblemId::CheegerNew,
        EigenproblemId::MaxcutInf,
        EigenproblemId::AntiCheeger,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EigenproblemId::OneLap => "one_lap",
            EigenproblemId::SignlessOneLap => "signless_one_lap",
            EigenproblemId::HatSignless => "hat_signless",
            EigenproblemId::CheegerNew => "cheeger_new",
            EigenproblemId::MaxcutInf => "maxcut_inf",
            EigenproblemId::AntiCheeger => "anti_cheeger",
        }
    }

    /// The ratio whose critical values are this problem's eigenvalues.
    pub fn ratio_kind(self) -> RatioKind {
        match self {
            EigenproblemId::OneLap => RatioKind::CheegerTv,
            EigenproblemId::SignlessOneLap => RatioKind::Dual,
            EigenproblemId::HatSignless => RatioKind::ModifiedDual,
            EigenproblemId::CheegerNew => RatioKind::CheegerNew,
            EigenproblemId::MaxcutInf => RatioKind::MaxcutRatio,
            EigenproblemId::AntiCheeger => RatioKind::Anti,
        }
    }

    pub fn for_ratio(kind: RatioKind) -> Self {
        match kind {
            RatioKind::CheegerTv => EigenproblemId::OneLap,
            RatioKind::CheegerNew => EigenproblemId::CheegerNew,
            RatioKind::Dual => EigenproblemId::SignlessOneLap,
            RatioKind::ModifiedDual => EigenproblemId::HatSignless,
            RatioKind::MaxcutRatio => EigenproblemId::MaxcutInf,
            RatioKind::Anti => EigenproblemId::AntiCheeger,
        }
    }

    fn uses_median(self) -> bool {
        matches!(self, EigenproblemId::OneLap | EigenproblemId::CheegerNew | EigenproblemId::AntiCheeger)
    }

    /// Eigenvectors of these problems are scanned over `1_{A,Aᶜ}` only.
    fn binary_spectrum(self) -> bool {
        matches!(self, EigenproblemId::MaxcutInf | EigenproblemId::AntiCheeger)
    }
}

impl fmt::Display for EigenproblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EigenproblemId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "one_lap" => EigenproblemId::OneLap,
            "signless_one_lap" | "signless" => EigenproblemId::SignlessOneLap,
            "hat_signless" | "hat" => EigenproblemId::HatSignless,
            "cheeger_new" => EigenproblemId::CheegerNew,
            "maxcut_inf" | "maxcut" => EigenproblemId::MaxcutInf,
            "anti_cheeger" | "anti" => EigenproblemId::AntiCheeger,
            _ => return Err(Error::UnknownProblem(s.to_string())),
        })
    }
}

impl Serialize for EigenproblemId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Which coordinate system `one_lap` is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Form {
    /// `0 ∈ Δ₁x − λ ∂N(x)`, invariant under adding constants.
    #[default]
    Median,
    /// `0 ∈ Δ₁x − λ μ Sgn(x)`.
    Raw,
}

/// Selections certifying an eigenpair.
///
/// `z` is indexed like [`Graph::edges`]; for an edge `{u, v}` with `u < v` it
/// is the value of `z_uv`. `v` holds the vertex selection scaled by `μ_i`
/// (from `∂N` for median problems, from `μ Sgn(x)` otherwise). For the
/// sup-norm problems `u = S/T` where `S` is the vertex sum and `T` the total
/// mass, and for `anti_cheeger` `p_i = |S_i| / (2λ vol(V))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub z: Vec<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_diff: Option<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_x: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenpairReport {
    pub problem: EigenproblemId,
    pub verdict: bool,
    pub lambda: Rational,
    pub x: RVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violated: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

const MEDIAN_NOTE: &str = "the median subgradient v enters the system multiplied by lambda";

fn sgn_choice(lp: &mut Lp, s: &Rational, scale: &Rational) -> Choice {
    if s.is_positive() {
        Choice::Fixed(scale.clone())
    } else if s.is_negative() {
        Choice::Fixed(-scale)
    } else {
        lp.choice(-scale, scale.clone())
    }
}

fn edge_choices(lp: &mut Lp, g: &Graph, x: &[Rational], signless: bool) -> Vec<Choice> {
    let one = Rational::one();
    g.edges()
        .iter()
        .map(|e| {
            let s = if signless { &x[e.u] + &x[e.v] } else { &x[e.u] - &x[e.v] };
            sgn_choice(lp, &s, &one)
        })
        .collect()
}

/// Per-vertex `Σ_j w_ij z_ij`.
fn vertex_sums(g: &Graph, z: &[Choice], signless: bool) -> Vec<Affine> {
    let mut out = vec![Affine::default(); g.n()];
    for (e, c) in g.edges().iter().zip(z) {
        let a = c.affine();
        out[e.u].add_scaled(&a, &e.w);
        let back = if signless { e.w.clone() } else { -&e.w };
        out[e.v].add_scaled(&a, &back);
    }
    out
}

fn vertex_choices(lp: &mut Lp, g: &Graph, x: &[Rational], c: &Rational) -> Vec<Choice> {
    x.iter().zip(g.mu()).map(|(xi, m)| sgn_choice(lp, &(xi - c), m)).collect()
}

fn sum_zero(lp: &mut Lp, v: &[Choice]) {
    let mut total = Affine::default();
    for c in v {
        total.add_scaled(&c.affine(), &Rational::one());
    }
    lp.constrain_eq(&total, Rational::zero());
}

/// `S ∈ T ∂‖x‖∞`: zero off the extreme set, sign-constrained on it, total `T`.
fn sup_rows(lp: &mut Lp, x: &[Rational], s: &[Affine], t: &Rational) {
    let m = sup_norm(x);
    let zero = Rational::zero();
    let mut total = Affine::default();
    for (xi, si) in x.iter().zip(s) {
        if xi == &m {
            lp.constrain(si, zero.clone(), t.clone());
            total.add_scaled(si, &Rational::one());
        } else if xi == &-&m {
            lp.constrain(si, -t, zero.clone());
            total.add_scaled(si, &Rational::from_integer(-1));
        } else {
            lp.constrain_eq(si, zero.clone());
        }
    }
    lp.constrain_eq(&total, t.clone());
}

/// Admissible medians: the distinct coordinates inside the median interval
/// and one point in each open gap between them.
fn median_candidates(g: &Graph, x: &[Rational]) -> Result<Vec<Rational>> {
    let iv = median_interval(g, x)?;
    let mut pts: Vec<Rational> = x.iter().filter(|t| iv.contains(t)).cloned().collect();
    pts.sort();
    pts.dedup();
    let mut out = Vec::with_capacity(2 * pts.len());
    for (k, p) in pts.iter().enumerate() {
        if k > 0 {
            out.push((&pts[k - 1] + p) / Rational::from_integer(2));
        }
        out.push(p.clone());
    }
    out.sort();
    Ok(out)
}

fn values(cs: &[Choice], y: &[Rational]) -> Vec<Rational> {
    cs.iter().map(|c| c.value(y)).collect()
}

fn affine_values(a: &[Affine], y: &[Rational]) -> Vec<Rational> {
    a.iter().map(|e| e.eval(y)).collect()
}

/// Sup-norm total mass `T` for the problems that carry one.
fn sup_total(id: EigenproblemId, g: &Graph, lambda: &Rational) -> Option<Rational> {
    match id {
        EigenproblemId::CheegerNew => Some(g.twice_edge_weight()),
        EigenproblemId::MaxcutInf => Some(lambda * g.vol_all()),
        EigenproblemId::AntiCheeger => Some(lambda * g.vol_all() * Rational::from_integer(2)),
        _ => None,
    }
}

/// One LP for a fixed median candidate (ignored by problems without `N`).
fn try_system(
    id: EigenproblemId,
    form: Form,
    g: &Graph,
    lambda: &Rational,
    x: &[Rational],
    c: &Rational,
) -> Option<Witness> {
    let mut lp = Lp::new();
    let signless = matches!(
        id,
        EigenproblemId::SignlessOneLap | EigenproblemId::HatSignless | EigenproblemId::CheegerNew
    );
    let z = edge_choices(&mut lp, g, x, signless);
    let sums = vertex_sums(g, &z, signless);
    let mut z_diff = None;
    let mut v = None;
    let mut rows: Vec<Affine> = Vec::new();
    match (id, form) {
        (EigenproblemId::OneLap, Form::Raw) | (EigenproblemId::SignlessOneLap, _) => {
            let zero = Rational::zero();
            let s = vertex_choices(&mut lp, g, x, &zero);
            for (i, si) in s.iter().enumerate() {
                let mut r = sums[i].clone();
                r.add_scaled(&si.affine(), &-lambda);
                lp.constrain_eq(&r, Rational::zero());
            }
            v = Some(s);
        }
        (EigenproblemId::HatSignless, _) => {
            let zd = edge_choices(&mut lp, g, x, false);
            let diff = vertex_sums(g, &zd, false);
            let keep = Rational::one() - lambda;
            for i in 0..g.n() {
                let mut r = Affine::default();
                r.add_scaled(&sums[i], &keep);
                r.add_scaled(&diff[i], &-lambda);
                lp.constrain_eq(&r, Rational::zero());
            }
            z_diff = Some(zd);
        }
        (EigenproblemId::OneLap, Form::Median) => {
            let s = vertex_choices(&mut lp, g, x, c);
            sum_zero(&mut lp, &s);
            for (i, si) in s.iter().enumerate() {
                let mut r = sums[i].clone();
                r.add_scaled(&si.affine(), &-lambda);
                lp.constrain_eq(&r, Rational::zero());
            }
            v = Some(s);
        }
        (EigenproblemId::MaxcutInf, _) => {
            rows = sums.clone();
        }
        (EigenproblemId::CheegerNew, _) | (EigenproblemId::AntiCheeger, _) => {
            let s = vertex_choices(&mut lp, g, x, c);
            sum_zero(&mut lp, &s);
            rows = sums
                .iter()
                .zip(&s)
                .map(|(a, si)| {
                    let mut r = a.clone();
                    r.add_scaled(&si.affine(), lambda);
                    r
                })
                .collect();
            v = Some(s);
        }
    }
    let total = sup_total(id, g, lambda);
    if let Some(t) = &total {
        sup_rows(&mut lp, x, &rows, t);
    }
    let y = lp.solve()?;
    let mut w = Witness {
        z: values(&z, &y),
        z_diff: z_diff.map(|zd| values(&zd, &y)),
        v: v.map(|s| values(&s, &y)),
        p: None,
        u: None,
        c_x: id.uses_median().then(|| c.clone()),
    };
    if let Some(t) = total.filter(|t| !t.is_zero()) {
        let s = affine_values(&rows, &y);
        w.u = Some(s.iter().map(|si| si / &t).collect());
        if id == EigenproblemId::AntiCheeger {
            w.p = Some(s.iter().map(|si| si.abs() / &t).collect());
        }
    }
    Some(w)
}

/// Decides whether `(λ, x)` is an eigenpair of `id`.
pub fn verify(id: EigenproblemId, g: &Graph, lambda: &Rational, x: &[Rational]) -> Result<EigenpairReport> {
    verify_with(id, Form::Median, g, lambda, x)
}

pub fn verify_with(
    id: EigenproblemId,
    form: Form,
    g: &Graph,
    lambda: &Rational,
    x: &[Rational],
) -> Result<EigenpairReport> {
    check_len(g, x)?;
    if x.iter().all(Rational::is_zero) {
        return Err(Error::ZeroVector);
    }
    let medians = if id.uses_median() && !(id == EigenproblemId::OneLap && form == Form::Raw) {
        median_candidates(g, x)?
    } else {
        vec![Rational::zero()]
    };
    let mut witness = None;
    for c in &medians {
        if let Some(w) = try_system(id, form, g, lambda, x, c) {
            debug_assert!(witness_holds(id, form, g, lambda, x, &w));
            witness = Some(w);
            break;
        }
    }
    let verdict = witness.is_some();
    let violated = (!verdict).then(|| {
        let what = match id {
            EigenproblemId::OneLap if form == Form::Raw => "no z, s satisfy Δ₁x = λ μ s",
            EigenproblemId::OneLap => "no z, v satisfy Δ₁x = λ v for any median",
            EigenproblemId::SignlessOneLap => "no z, s satisfy Δ₁⁺x = λ μ s",
            EigenproblemId::HatSignless => "no selections satisfy (1 − λ) Δ₁⁺x = λ Δ₁x",
            EigenproblemId::CheegerNew => "no z, v put Δ₁⁺x + λ v in e ∂‖x‖∞ for any median",
            EigenproblemId::MaxcutInf => "no z puts Δ₁x in λ vol(V) ∂‖x‖∞",
            EigenproblemId::AntiCheeger => "no z, v put Δ₁x + λ v in 2λ vol(V) ∂‖x‖∞ for any median",
        };
        what.to_string()
    });
    let note = matches!(id, EigenproblemId::CheegerNew | EigenproblemId::AntiCheeger).then_some(MEDIAN_NOTE);
    Ok(EigenpairReport {
        problem: id,
        verdict,
        lambda: lambda.clone(),
        x: x.to_vec(),
        witness,
        violated,
        note,
    })
}

fn in_sgn(value: &Rational, s: &Rational, scale: &Rational) -> bool {
    if s.is_positive() {
        value == scale
    } else if s.is_negative() {
        value == &-scale
    } else {
        value.abs() <= *scale
    }
}

/// Substitutes a witness into the system of `id` and checks every constraint.
pub fn witness_holds(
    id: EigenproblemId,
    form: Form,
    g: &Graph,
    lambda: &Rational,
    x: &[Rational],
    w: &Witness,
) -> bool {
    let n = g.n();
    let one = Rational::one();
    if x.len() != n || w.z.len() != g.m() {
        return false;
    }
    let signless = matches!(
        id,
        EigenproblemId::SignlessOneLap | EigenproblemId::HatSignless | EigenproblemId::CheegerNew
    );
    let sums_of = |z: &[Rational], signless: bool| -> Option<Vec<Rational>> {
        let mut out = vec![Rational::zero(); n];
        for (e, ze) in g.edges().iter().zip(z) {
            let s = if signless { &x[e.u] + &x[e.v] } else { &x[e.u] - &x[e.v] };
            if !in_sgn(ze, &s, &one) {
                return None;
            }
            out[e.u] += &e.w * ze;
            if signless {
                out[e.v] += &e.w * ze;
            } else {
                out[e.v] -= &e.w * ze;
            }
        }
        Some(out)
    };
    let Some(sums) = sums_of(&w.z, signless) else { return false };
    let check_v = |c: &Rational, need_sum: bool| -> Option<Vec<Rational>> {
        let v = w.v.as_ref()?;
        if v.len() != n {
            return None;
        }
        for i in 0..n {
            if !in_sgn(&v[i], &(&x[i] - c), &g.mu()[i]) {
                return None;
            }
        }
        if need_sum && !v.iter().cloned().sum::<Rational>().is_zero() {
            return None;
        }
        Some(v.clone())
    };
    let zero = Rational::zero();
    let rows: Vec<Rational> = match (id, form) {
        (EigenproblemId::OneLap, Form::Raw) | (EigenproblemId::SignlessOneLap, _) => {
            let Some(v) = check_v(&zero, false) else { return false };
            return (0..n).all(|i| sums[i] == lambda * &v[i]);
        }
        (EigenproblemId::HatSignless, _) => {
            let Some(zd) = &w.z_diff else { return false };
            if zd.len() != g.m() {
                return false;
            }
            let Some(diff) = sums_of(zd, false) else { return false };
            let keep = &one - lambda;
            return (0..n).all(|i| &keep * &sums[i] == lambda * &diff[i]);
        }
        (EigenproblemId::OneLap, Form::Median) => {
            let Some(c) = &w.c_x else { return false };
            let Some(v) = check_v(c, true) else { return false };
            return (0..n).all(|i| sums[i] == lambda * &v[i]);
        }
        (EigenproblemId::MaxcutInf, _) => sums,
        (EigenproblemId::CheegerNew, _) | (EigenproblemId::AntiCheeger, _) => {
            let Some(c) = &w.c_x else { return false };
            let Some(v) = check_v(c, true) else { return false };
            sums.iter().zip(&v).map(|(s, vi)| s + lambda * vi).collect()
        }
    };
    let t = sup_total(id, g, lambda).expect("sup-norm problem");
    let m = sup_norm(x);
    let mut total = Rational::zero();
    for i in 0..n {
        if x[i] == m {
            if rows[i].is_negative() || rows[i] > t {
                return false;
            }
            total += &rows[i];
        } else if x[i] == -&m {
            if rows[i].is_positive() || rows[i] < -&t {
                return false;
            }
            total -= &rows[i];
        } else if !rows[i].is_zero() {
            return false;
        }
    }
    total == t
}

/// Whether the problem's ratio at `x` equals `λ` exactly. An undefined ratio
/// (constant `x` for the median problems) never matches.
pub fn rayleigh_consistency(id: EigenproblemId, g: &Graph, lambda: &Rational, x: &[Rational]) -> bool {
    matches!(ratio_objective(id.ratio_kind(), g, x), Ok(r) if &r == lambda)
}

/// Induced vector for the sup-norm problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Binarization {
    /// `1_{D₊, D₊ᶜ}` for `maxcut_inf` and `anti_cheeger`.
    #[default]
    PlusRest,
    /// `1_{D₊, D₋}`.
    PlusMinus,
}

/// Canonical ternary vector induced by `x`: the extreme-set indicator for the
/// sup-norm problems and the sign pattern `1_{V₀⁺, V₀⁻}` otherwise.
pub fn binarize(id: EigenproblemId, x: &[Rational], variant: Binarization) -> Result<RVector> {
    if x.iter().all(Rational::is_zero) {
        return Err(Error::ZeroVector);
    }
    let n = x.len();
    let m = sup_norm(x);
    let set = |f: &dyn Fn(&Rational) -> bool| -> VertexSet { (0..n).filter(|&i| f(&x[i])).collect() };
    let (a, b) = match (id, variant) {
        (EigenproblemId::MaxcutInf | EigenproblemId::AntiCheeger, Binarization::PlusRest) => {
            let a = set(&|t| t == &m);
            let b = a.complement(n);
            (a, b)
        }
        (EigenproblemId::MaxcutInf | EigenproblemId::AntiCheeger, Binarization::PlusMinus) => {
            (set(&|t| t == &m), set(&|t| t == &-&m))
        }
        _ => (set(&|t| t.is_positive()), set(&|t| t.is_negative())),
    };
    Ok(indicator(n, &a, &b))
}

/// One eigenvalue found by [`spectrum_scan`] with its smallest witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumPoint {
    pub lambda: Rational,
    pub certificate: CutCertificate,
}

/// Ternary vectors `1_A − 1_B` with the first nonzero entry positive, in
/// lexicographic order of `[A, B]`.
fn ternary_candidates(n: usize) -> Vec<(VertexSet, VertexSet)> {
    let mut out = Vec::new();
    let mut labels = vec![0u8; n];
    loop {
        let first = labels.iter().find(|&&l| l != 0);
        if first == Some(&1) {
            let a = (0..n).filter(|&i| labels[i] == 1).collect();
            let b = (0..n).filter(|&i| labels[i] == 2).collect();
            out.push((a, b));
        }
        let mut i = 0;
        while i < n && labels[i] == 2 {
            labels[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        labels[i] += 1;
    }
    out.sort();
    out
}

/// Eigenvalue of a ternary candidate, if its ratio is defined. Constant
/// vectors sit at `0` for the median problems.
fn candidate_lambda(id: EigenproblemId, g: &Graph, x: &[Rational]) -> Option<Rational> {
    match ratio_objective(id.ratio_kind(), g, x) {
        Ok(r) => Some(r),
        Err(_) if id.uses_median() && x.windows(2).all(|p| p[0] == p[1]) => Some(Rational::zero()),
        Err(_) => None,
    }
}

fn subset_lambda(id: EigenproblemId, g: &Graph, a: &VertexSet) -> Rational {
    let n = g.n();
    let cut = g.boundary(a);
    match id {
        EigenproblemId::MaxcutInf => cut * Rational::from_integer(2) / g.vol_all(),
        _ => {
            let va = g.vol(a);
            let vb = g.vol(&a.complement(n));
            cut / va.max(vb)
        }
    }
}

/// Eigenvalues realized by indicator-type eigenvectors, ascending, each with
/// the lexicographically smallest witness. `maxcut_inf` and `anti_cheeger`
/// range over `1_{A,Aᶜ}`; the other problems over ternary `1_A − 1_B`, each
/// candidate checked with [`verify`] at its ratio value.
pub fn spectrum_scan(id: EigenproblemId, g: &Graph, caps: &Caps) -> Result<Vec<SpectrumPoint>> {
    let n = g.n();
    let mut found: BTreeMap<Rational, Vec<VertexSet>> = BTreeMap::new();
    if id.binary_spectrum() {
        check_cap("binary spectrum scan", n, caps.subset)?;
        for mask in 0..(1u64 << n) {
            let a = VertexSet::from_mask(mask);
            let sets = vec![a.clone(), a.complement(n)];
            let lambda = subset_lambda(id, g, &a);
            let slot = found.entry(lambda).or_insert_with(|| sets.clone());
            if sets < *slot {
                *slot = sets;
            }
        }
        let mut out = Vec::new();
        for (lambda, sets) in found {
            let x = indicator(n, &sets[0], &sets[1]);
            if verify(id, g, &lambda, &x)?.verdict {
                out.push(point(CertKind::Subset, lambda, sets));
            }
        }
        return Ok(out);
    }
    check_cap("ternary spectrum scan", n, caps.scan)?;
    for (a, b) in ternary_candidates(n) {
        let x = indicator(n, &a, &b);
        let Some(lambda) = candidate_lambda(id, g, &x) else { continue };
        if found.contains_key(&lambda) {
            continue;
        }
        if verify(id, g, &lambda, &x)?.verdict {
            found.insert(lambda, vec![a, b]);
        }
    }
    Ok(found.into_iter().map(|(l, s)| point(CertKind::SetPair, l, s)).collect())
}

fn point(kind: CertKind, lambda: Rational, sets: Vec<VertexSet>) -> SpectrumPoint {
    SpectrumPoint { lambda: lambda.clone(), certificate: CutCertificate { kind, sets, value: lambda } }
}

/// Every ternary vector (up to sign) that is an eigenvector at its own ratio
/// value, as verified reports in lexicographic order of `[A, B]`.
pub fn ternary_eigenpairs(id: EigenproblemId, g: &Graph, caps: &Caps) -> Result<Vec<EigenpairReport>> {
    let n = g.n();
    check_cap("ternary eigenpair scan", n, caps.scan)?;
    let mut out = Vec::new();
    for (a, b) in ternary_candidates(n) {
        let x = indicator(n, &a, &b);
        let Some(lambda) = candidate_lambda(id, g, &x) else { continue };
        let r = verify(id, g, &lambda, &x)?;
        if r.verdict {
            out.push(r);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path, star_triangle};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn vec_of(v: &[(i64, i64)]) -> RVector {
        v.iter().map(|&(n, d)| q(n, d)).collect()
    }

    fn star_triangle_vector(k: usize) -> RVector {
        let mut x = vec![Rational::zero(); 2 * k + 1];
        for i in 0..k {
            x[i] = q(1, 1);
            x[k + i] = q(-1, 1);
        }
        x
    }

    #[test]
    fn maxcut_binary_eigenpairs() {
        let g = complete(3);
        let x = vec_of(&[(1, 1), (-1, 1), (-1, 1)]);
        let r = verify(EigenproblemId::MaxcutInf, &g, &q(2, 3), &x).unwrap();
        assert!(r.verdict);
        let w = r.witness.unwrap();
        assert!(witness_holds(EigenproblemId::MaxcutInf, Form::Median, &g, &q(2, 3), &x, &w));
        assert!(!verify(EigenproblemId::MaxcutInf, &g, &q(1, 3), &x).unwrap().verdict);
    }

    #[test]
    fn one_lap_kernel() {
        let g = path(4);
        let ones = vec![q(1, 1); 4];
        assert!(verify(EigenproblemId::OneLap, &g, &q(0, 1), &ones).unwrap().verdict);
        let x = vec_of(&[(1, 1), (0, 1), (0, 1), (0, 1)]);
        assert!(!verify(EigenproblemId::OneLap, &g, &q(0, 1), &x).unwrap().verdict);
        let x = vec_of(&[(1, 4), (1, 4), (-1, 4), (-1, 4)]);
        assert!(verify(EigenproblemId::OneLap, &g, &q(1, 3), &x).unwrap().verdict);
        assert!(verify_with(EigenproblemId::OneLap, Form::Raw, &g, &q(1, 3), &x).unwrap().verdict);
    }

    #[test]
    fn cheeger_new_and_anti_on_subsets() {
        let g = path(4);
        let x = vec_of(&[(1, 1), (1, 1), (-1, 1), (-1, 1)]);
        let r = verify(EigenproblemId::CheegerNew, &g, &q(1, 3), &x).unwrap();
        assert!(r.verdict);
        assert!(rayleigh_consistency(EigenproblemId::CheegerNew, &g, &q(1, 3), &x));
        assert!(!rayleigh_consistency(EigenproblemId::CheegerNew, &g, &q(4, 3), &x));
        let x = vec_of(&[(1, 1), (-1, 1), (-1, 1), (-1, 1)]);
        let r = verify(EigenproblemId::AntiCheeger, &g, &q(1, 5), &x).unwrap();
        assert!(r.verdict);
        let p = r.witness.unwrap().p.unwrap();
        let plus: Rational = (0..1).map(|i| p[i].clone()).sum();
        let minus: Rational = (1..4).map(|i| p[i].clone()).sum();
        assert_eq!((plus, minus), (q(1, 2), q(1, 2)));
    }

    #[test]
    fn star_triangle_maximum() {
        let g = star_triangle(2);
        let x = star_triangle_vector(2);
        assert!(verify(EigenproblemId::MaxcutInf, &g, &q(2, 3), &x).unwrap().verdict);
        assert!(rayleigh_consistency(EigenproblemId::MaxcutInf, &g, &q(2, 3), &x));
    }

    #[test]
    fn binarize_examples() {
        let x = vec_of(&[(1, 1), (1, 2), (-1, 1)]);
        assert_eq!(
            binarize(EigenproblemId::MaxcutInf, &x, Binarization::PlusRest).unwrap(),
            vec_of(&[(1, 1), (-1, 1), (-1, 1)])
        );
        assert_eq!(
            binarize(EigenproblemId::MaxcutInf, &x, Binarization::PlusMinus).unwrap(),
            vec_of(&[(1, 1), (0, 1), (-1, 1)])
        );
        let x = vec_of(&[(2, 1), (0, 1), (-1, 1)]);
        assert_eq!(
            binarize(EigenproblemId::CheegerNew, &x, Binarization::default()).unwrap(),
            vec_of(&[(1, 1), (0, 1), (-1, 1)])
        );
        let zero = vec![Rational::zero(); 3];
        assert_eq!(
            binarize(EigenproblemId::CheegerNew, &zero, Binarization::default()),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn maxcut_spectra_of_small_cliques() {
        let caps = Caps::default();
        let vals = |g: &Graph| -> Vec<Rational> {
            spectrum_scan(EigenproblemId::MaxcutInf, g, &caps)
                .unwrap()
                .into_iter()
                .map(|p| p.lambda)
                .collect()
        };
        assert_eq!(vals(&complete(2)), vec![q(0, 1), q(1, 1)]);
        assert_eq!(vals(&complete(3)), vec![q(0, 1), q(2, 3)]);
    }

    #[test]
    fn zero_vector_is_rejected() {
        let g = path(3);
        let x = vec![Rational::zero(); 3];
        assert_eq!(verify(EigenproblemId::OneLap, &g, &q(0, 1), &x), Err(Error::ZeroVector));
    }

    #[test]
    fn ternary_candidates_are_sign_classes() {
        assert_eq!(ternary_candidates(3).len(), 13);
    }
}

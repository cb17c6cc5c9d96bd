//! Dinkelbach iteration for ratios of differences of one-homogeneous convex
//! functionals, `Q = (f₁ − f₂)/(g₁ − g₂)`, over the normalized sets `Ω`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::eigen::{verify, EigenproblemId};
use crate::error::{Error, Result};
use crate::functionals::{
    check_len, indicator, l1_mu_norm, median_norm, signless_variation, sup_norm, total_variation, Opt,
    RVector, RatioKind,
};
use crate::graph::{Graph, VertexSet};
use crate::oracles::{check_cap, Caps, CertKind, CutCertificate};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Functional {
    /// `I(x)`
    TotalVariation,
    /// `I⁺(x)`
    SignlessVariation,
    /// `N(x)`
    Median,
    /// `‖x‖₁,μ`
    L1Mu,
    /// `‖x‖∞`
    Sup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    One,
    /// Twice the total edge weight.
    E,
    Vol,
    TwoVol,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Term {
    pub scale: Scale,
    pub functional: Functional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainKind {
    /// `{‖x‖₁ = 1}`
    Nonzero,
    /// `{‖x‖₁ = 1, max x + min x = 0}`
    Nonconstant2Cut,
    /// `{‖x‖₁ = 1, max x + min x = 0 or min |x| = 0}`
    Nonconstant3Cut,
}

impl DomainKind {
    /// Whether `x` lies in `Ω`.
    pub fn contains(self, x: &[Rational]) -> bool {
        if x.iter().map(Rational::abs).sum::<Rational>() != Rational::one() {
            return false;
        }
        let max = x.iter().max().cloned().unwrap_or_default();
        let min = x.iter().min().cloned().unwrap_or_default();
        let balanced = (max + min).is_zero();
        match self {
            DomainKind::Nonzero => true,
            DomainKind::Nonconstant2Cut => balanced,
            DomainKind::Nonconstant3Cut => balanced || x.iter().any(Rational::is_zero),
        }
    }

    /// Membership of the ternary vector `1_A − 1_B` up to scaling.
    fn admits(self, n: usize, a: &VertexSet, b: &VertexSet) -> bool {
        let nonzero = !(a.is_empty() && b.is_empty());
        let both = !a.is_empty() && !b.is_empty();
        match self {
            DomainKind::Nonzero => nonzero,
            DomainKind::Nonconstant2Cut => both,
            DomainKind::Nonconstant3Cut => both || (nonzero && a.len() + b.len() < n),
        }
    }

    /// Shifts (for the cut domains) and rescales `x` into `Ω`.
    pub fn project(self, x: &[Rational]) -> Result<RVector> {
        let mut y = x.to_vec();
        let needs_shift = match self {
            DomainKind::Nonzero => false,
            DomainKind::Nonconstant2Cut => true,
            DomainKind::Nonconstant3Cut => {
                let max = y.iter().max().cloned().unwrap_or_default();
                let min = y.iter().min().cloned().unwrap_or_default();
                !(max + min).is_zero() && !y.iter().any(Rational::is_zero)
            }
        };
        if needs_shift {
            let max = y.iter().max().cloned().unwrap_or_default();
            let min = y.iter().min().cloned().unwrap_or_default();
            let mid = (max + min) / Rational::from_integer(2);
            for t in y.iter_mut() {
                *t -= &mid;
            }
        }
        let norm: Rational = y.iter().map(Rational::abs).sum();
        if norm.is_zero() {
            return Err(Error::NotInOmega);
        }
        for t in y.iter_mut() {
            *t = &*t / &norm;
        }
        debug_assert!(self.contains(&y));
        Ok(y)
    }
}

/// A registered ratio problem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioProblem {
    pub kind: RatioKind,
    pub f1: Vec<Term>,
    pub f2: Vec<Term>,
    pub g1: Vec<Term>,
    pub g2: Vec<Term>,
    pub opt: Opt,
    pub domain: DomainKind,
}

fn t(scale: Scale, functional: Functional) -> Term {
    Term { scale, functional }
}

impl RatioProblem {
    pub fn registered(kind: RatioKind) -> Self {
        use Functional::*;
        use Scale::*;
        let (f1, f2, g1, g2, domain) = match kind {
            RatioKind::CheegerTv => (
                vec![t(One, TotalVariation)],
                vec![],
                vec![t(One, Median)],
                vec![],
                DomainKind::Nonconstant2Cut,
            ),
            RatioKind::CheegerNew => (
                vec![t(E, Sup)],
                vec![t(One, SignlessVariation)],
                vec![t(One, Median)],
                vec![],
                DomainKind::Nonconstant3Cut,
            ),
            RatioKind::Dual => {
                (vec![t(One, SignlessVariation)], vec![], vec![t(One, L1Mu)], vec![], DomainKind::Nonzero)
            }
            RatioKind::ModifiedDual => (
                vec![t(One, SignlessVariation)],
                vec![],
                vec![t(One, SignlessVariation), t(One, TotalVariation)],
                vec![],
                DomainKind::Nonzero,
            ),
            RatioKind::MaxcutRatio => {
                (vec![t(One, TotalVariation)], vec![], vec![t(Vol, Sup)], vec![], DomainKind::Nonzero)
            }
            RatioKind::Anti => (
                vec![t(One, TotalVariation)],
                vec![],
                vec![t(TwoVol, Sup)],
                vec![t(One, Median)],
                DomainKind::Nonzero,
            ),
        };
        RatioProblem { kind, f1, f2, g1, g2, opt: kind.opt(), domain }
    }

    /// Numerator and denominator of `Q` at `x`.
    pub fn parts(&self, g: &Graph, x: &[Rational]) -> Result<(Rational, Rational)> {
        check_len(g, x)?;
        let sum = |terms: &[Term]| -> Result<Rational> {
            let mut total = Rational::zero();
            for term in terms {
                total += scale_value(term.scale, g) * eval_functional(term.functional, g, x)?;
            }
            Ok(total)
        };
        Ok((sum(&self.f1)? - sum(&self.f2)?, sum(&self.g1)? - sum(&self.g2)?))
    }

    pub fn value(&self, g: &Graph, x: &[Rational]) -> Result<Rational> {
        let (num, den) = self.parts(g, x)?;
        if !den.is_positive() {
            return Err(Error::DegenerateDenominator(format!("{} denominator is not positive", self.kind)));
        }
        Ok(num / den)
    }
}

fn scale_value(s: Scale, g: &Graph) -> Rational {
    match s {
        Scale::One => Rational::one(),
        Scale::E => g.twice_edge_weight(),
        Scale::Vol => g.vol_all(),
        Scale::TwoVol => g.vol_all() * Rational::from_integer(2),
    }
}

pub fn eval_functional(f: Functional, g: &Graph, x: &[Rational]) -> Result<Rational> {
    Ok(match f {
        Functional::TotalVariation => total_variation(g, x),
        Functional::SignlessVariation => signless_variation(g, x),
        Functional::Median => median_norm(g, x)?,
        Functional::L1Mu => l1_mu_norm(g, x),
        Functional::Sup => sup_norm(x),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerSolver {
    /// Exhaustive scan of the scaled ternary vectors in `Ω`.
    #[default]
    ExactEnum,
    /// Single-vertex moves from random starts; no optimality claim.
    LocalFlip,
}

impl FromStr for InnerSolver {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" | "exact_enum" => Ok(InnerSolver::ExactEnum),
            "flip" | "local_flip" => Ok(InnerSolver::LocalFlip),
            _ => Err(Error::InvalidParameter(format!("unknown inner solver `{s}`"))),
        }
    }
}

impl fmt::Display for InnerSolver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InnerSolver::ExactEnum => "exact_enum",
            InnerSolver::LocalFlip => "local_flip",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub inner: InnerSolver,
    pub seed: u64,
    pub restarts: usize,
    pub max_iterations: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { inner: InnerSolver::ExactEnum, seed: 0, restarts: 16, max_iterations: 10_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Iteration {
    pub k: usize,
    pub r_k: Rational,
    pub x_k: RVector,
    /// Inner objective at `x_k` with the previous ratio; zero for `k = 0`.
    pub inner_value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DinkelbachTrace {
    pub problem: RatioKind,
    pub inner: InnerSolver,
    /// Set when the inner solver gives no optimality guarantee.
    pub heuristic: bool,
    pub iterations: Vec<Iteration>,
    pub converged: bool,
    #[serde(rename = "final")]
    pub final_cert: CutCertificate,
}

impl DinkelbachTrace {
    pub fn value(&self) -> &Rational {
        &self.final_cert.value
    }
}

/// A ternary vector `1_A − 1_B` with its parts of `Q`.
#[derive(Clone)]
struct Candidate {
    a: VertexSet,
    b: VertexSet,
    size: Rational,
    num: Rational,
    den: Rational,
}

impl Candidate {
    fn new(p: &RatioProblem, g: &Graph, a: VertexSet, b: VertexSet) -> Result<Option<Self>> {
        let x = indicator(g.n(), &a, &b);
        let (num, den) = p.parts(g, &x)?;
        if !den.is_positive() {
            return Ok(None);
        }
        let size = Rational::from(a.len() + b.len());
        Ok(Some(Candidate { a, b, size, num, den }))
    }

    fn inner(&self, r: &Rational) -> Rational {
        (&self.num - r * &self.den) / &self.size
    }

    fn ratio(&self) -> Rational {
        &self.num / &self.den
    }

    fn vector(&self, n: usize) -> RVector {
        indicator(n, &self.a, &self.b).into_iter().map(|t| t / &self.size).collect()
    }

    fn key(&self) -> (&VertexSet, &VertexSet) {
        (&self.a, &self.b)
    }
}

/// `Less` when `(v1, c1)` is the better inner optimum.
fn better(opt: Opt, v1: &Rational, c1: &Candidate, v2: &Rational, c2: &Candidate) -> Ordering {
    let by_value = match opt {
        Opt::Min => v1.cmp(v2),
        Opt::Max => v2.cmp(v1),
    };
    by_value.then_with(|| c1.key().cmp(&c2.key()))
}

fn all_candidates(p: &RatioProblem, g: &Graph) -> Result<Vec<Candidate>> {
    let n = g.n();
    let mut labels = vec![0u8; n];
    let mut pairs = Vec::new();
    loop {
        let a: VertexSet = (0..n).filter(|&i| labels[i] == 1).collect();
        let b: VertexSet = (0..n).filter(|&i| labels[i] == 2).collect();
        if p.domain.admits(n, &a, &b) {
            pairs.push((a, b));
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
    let built: Vec<Option<Candidate>> =
        pairs.into_par_iter().map(|(a, b)| Candidate::new(p, g, a, b)).collect::<Result<_>>()?;
    Ok(built.into_iter().flatten().collect())
}

fn exact_argopt<'c>(opt: Opt, cands: &'c [Candidate], r: &Rational) -> Option<(&'c Candidate, Rational)> {
    cands.par_iter().map(|c| (c, c.inner(r))).reduce_with(|x, y| {
        if better(opt, &x.1, x.0, &y.1, y.0) == Ordering::Greater {
            y
        } else {
            x
        }
    })
}

fn labels_to_sets(labels: &[u8]) -> (VertexSet, VertexSet) {
    let a = (0..labels.len()).filter(|&i| labels[i] == 1).collect();
    let b = (0..labels.len()).filter(|&i| labels[i] == 2).collect();
    (a, b)
}

/// Best local optimum over random restarts with single-vertex relabelling.
fn flip_argopt(
    p: &RatioProblem,
    g: &Graph,
    r: &Rational,
    rng: &mut ChaCha8Rng,
    restarts: usize,
) -> Result<Option<(Candidate, Rational)>> {
    let n = g.n();
    let mut best: Option<(Candidate, Rational)> = None;
    for _ in 0..restarts {
        let mut labels: Vec<u8> = Vec::new();
        let mut current = None;
        for _ in 0..64 {
            labels = (0..n).map(|_| rng.gen_range(0..3u8)).collect();
            let (a, b) = labels_to_sets(&labels);
            if p.domain.admits(n, &a, &b) {
                if let Some(c) = Candidate::new(p, g, a, b)? {
                    current = Some(c);
                    break;
                }
            }
        }
        let Some(mut cur) = current else { continue };
        let mut cur_val = cur.inner(r);
        loop {
            let mut step: Option<(Candidate, Rational, usize, u8)> = None;
            for i in 0..n {
                for l in 0..3u8 {
                    if l == labels[i] {
                        continue;
                    }
                    let old = labels[i];
                    labels[i] = l;
                    let (a, b) = labels_to_sets(&labels);
                    labels[i] = old;
                    if !p.domain.admits(n, &a, &b) {
                        continue;
                    }
                    let Some(c) = Candidate::new(p, g, a, b)? else { continue };
                    let v = c.inner(r);
                    let improves = match &step {
                        Some((sc, sv, _, _)) => better(p.opt, &v, &c, sv, sc) == Ordering::Less,
                        None => better(p.opt, &v, &c, &cur_val, &cur) == Ordering::Less && v != cur_val,
                    };
                    if improves {
                        step = Some((c, v, i, l));
                    }
                }
            }
            match step {
                Some((c, v, i, l)) => {
                    labels[i] = l;
                    cur = c;
                    cur_val = v;
                }
                None => break,
            }
        }
        let replace = match &best {
            None => true,
            Some((bc, bv)) => better(p.opt, &cur_val, &cur, bv, bc) == Ordering::Less,
        };
        if replace {
            best = Some((cur, cur_val));
        }
    }
    Ok(best)
}

/// Runs the iteration from `x0` (projected into `Ω` first).
pub fn solve(
    problem: &RatioProblem,
    g: &Graph,
    x0: &[Rational],
    opts: &SolveOptions,
    caps: &Caps,
) -> Result<DinkelbachTrace> {
    check_len(g, x0)?;
    if problem.domain != DomainKind::Nonzero && !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let x = problem.domain.project(x0)?;
    let mut r = problem.value(g, &x)?;
    let mut iterations = vec![Iteration { k: 0, r_k: r.clone(), x_k: x, inner_value: Rational::zero() }];
    let cands = match opts.inner {
        InnerSolver::ExactEnum => {
            check_cap("exact inner enumeration", n, caps.set_pair)?;
            all_candidates(problem, g)?
        }
        InnerSolver::LocalFlip => Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut last: Option<Candidate> = None;
    let mut converged = false;
    for k in 1..=opts.max_iterations {
        let found = match opts.inner {
            InnerSolver::ExactEnum => exact_argopt(problem.opt, &cands, &r).map(|(c, v)| (c.clone(), v)),
            InnerSolver::LocalFlip => flip_argopt(problem, g, &r, &mut rng, opts.restarts)?,
        };
        let Some((c, inner_value)) = found else { return Err(Error::NotInOmega) };
        let improves = match problem.opt {
            Opt::Min => inner_value.is_negative(),
            Opt::Max => inner_value.is_positive(),
        };
        if !improves && opts.inner == InnerSolver::LocalFlip {
            // No strict improvement found: keep the current iterate.
            converged = true;
            if last.is_none() {
                last = Some(c);
            }
            break;
        }
        let next = c.ratio();
        iterations.push(Iteration { k, r_k: next.clone(), x_k: c.vector(n), inner_value });
        let done = next == r;
        r = next;
        last = Some(c);
        if done {
            converged = true;
            break;
        }
    }
    let last = last.expect("at least one inner step");
    let final_x = &iterations.last().expect("nonempty").x_k;
    let (a, b) = if opts.inner == InnerSolver::LocalFlip && iterations.len() == 1 {
        // Heuristic run that never moved: certify the projected start.
        let a = (0..n).filter(|&i| final_x[i].is_positive()).collect();
        let b = (0..n).filter(|&i| final_x[i].is_negative()).collect();
        (a, b)
    } else {
        (last.a.clone(), last.b.clone())
    };
    Ok(DinkelbachTrace {
        problem: problem.kind,
        inner: opts.inner,
        heuristic: opts.inner == InnerSolver::LocalFlip,
        final_cert: CutCertificate { kind: CertKind::SetPair, sets: vec![a, b], value: r },
        iterations,
        converged,
    })
}

/// Default start: the projected indicator of vertex 0.
pub fn default_start(n: usize) -> RVector {
    let mut x = vec![Rational::zero(); n];
    if n > 0 {
        x[0] = Rational::one();
    }
    x
}

/// Checks that `(λ, x)` is a critical pair of the problem's ratio, through
/// the eigenproblem the critical point equation coincides with.
pub fn stationary_check(kind: RatioKind, g: &Graph, lambda: &Rational, x: &[Rational]) -> Result<bool> {
    check_len(g, x)?;
    if x.iter().all(Rational::is_zero) {
        return Err(Error::ZeroVector);
    }
    let domain = RatioProblem::registered(kind).domain;
    if domain == DomainKind::Nonconstant2Cut && x.windows(2).all(|p| p[0] == p[1]) {
        return Err(Error::NonconstantRequired);
    }
    Ok(verify(EigenproblemId::for_ratio(kind), g, lambda, x)?.verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::ratio_objective;
    use crate::graph::{complete, path, star_triangle};

    fn exact(kind: RatioKind, g: &Graph) -> DinkelbachTrace {
        let p = RatioProblem::registered(kind);
        solve(&p, g, &default_start(g.n()), &SolveOptions::default(), &Caps::default()).unwrap()
    }

    #[test]
    fn desk_examples() {
        let t = exact(RatioKind::CheegerTv, &path(4));
        assert_eq!(t.value(), &Rational::new(1, 3));
        assert!(t.converged);
        assert!(t.iterations.windows(2).all(|w| w[1].r_k <= w[0].r_k));
        assert_eq!(exact(RatioKind::MaxcutRatio, &star_triangle(2)).value(), &Rational::new(2, 3));
        assert_eq!(exact(RatioKind::Dual, &complete(3)).value(), &Rational::new(1, 3));
        assert_eq!(exact(RatioKind::Anti, &complete(3)).value(), &Rational::new(1, 2));
    }

    #[test]
    fn pieces_match_ratio_objective() {
        let g = star_triangle(2);
        let x: RVector = [3, -1, 0, 2, -2].iter().map(|&v| Rational::from_integer(v)).collect();
        for kind in RatioKind::ALL {
            let p = RatioProblem::registered(kind);
            assert_eq!(p.value(&g, &x).unwrap(), ratio_objective(kind, &g, &x).unwrap(), "{kind}");
        }
    }

    #[test]
    fn projection_lands_in_omega() {
        let x = default_start(4);
        for d in [DomainKind::Nonzero, DomainKind::Nonconstant2Cut, DomainKind::Nonconstant3Cut] {
            assert!(d.contains(&d.project(&x).unwrap()));
        }
        let ones = vec![Rational::one(); 3];
        assert_eq!(DomainKind::Nonconstant2Cut.project(&ones), Err(Error::NotInOmega));
    }

    #[test]
    fn stationary_examples() {
        let g = path(4);
        let x: RVector = [1, 1, -1, -1].iter().map(|&v| Rational::new(v, 4)).collect();
        assert!(stationary_check(RatioKind::CheegerTv, &g, &Rational::new(1, 3), &x).unwrap());
        let ones = vec![Rational::one(); 4];
        assert_eq!(
            stationary_check(RatioKind::CheegerTv, &g, &Rational::zero(), &ones),
            Err(Error::NonconstantRequired)
        );
    }

    #[test]
    fn local_flip_is_deterministic() {
        let g = star_triangle(3);
        let p = RatioProblem::registered(RatioKind::MaxcutRatio);
        let opts = SolveOptions { inner: InnerSolver::LocalFlip, seed: 7, ..Default::default() };
        let a = solve(&p, &g, &default_start(7), &opts, &Caps::default()).unwrap();
        let b = solve(&p, &g, &default_start(7), &opts, &Caps::default()).unwrap();
        assert_eq!(a, b);
        assert!(a.heuristic);
        let x = a.iterations.last().unwrap().x_k.clone();
        assert_eq!(&p.value(&g, &x).unwrap(), a.value());
    }
}

//! Batch checks over a graph corpus, one outcome per theorem-level criterion.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::dinkelbach::{default_start, solve, stationary_check, DomainKind, RatioProblem, SolveOptions};
use crate::eigen::{spectrum_scan, ternary_eigenpairs, verify, EigenproblemId};
use crate::error::{Error, Result};
use crate::functionals::{indicator, ratio_objective, Opt, RatioKind};
use crate::graph::{parse_graph, Graph, VertexSet};
use crate::nodal::{check_max_eigvec_structure, check_min_nonzero_null_count, check_null_symmetry};
use crate::oracles::{cheeger, dual_cheeger, maxcut, minmax_k_cut, ratio_oracle, Caps};
use crate::rational::Rational;
use crate::spectrum::{inequality_suite, Suite};

/// Largest `n` for the exhaustive eigenvector criteria.
pub const EXHAUSTIVE_N: usize = 8;
/// Largest `n` for the inequality criterion.
pub const INEQUALITY_N: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    RatioEquivalence,
    DinkelbachExactness,
    EigenpairConstructors,
    SpectralIdentities,
    StructureTheorems,
    Inequalities,
}

impl Criterion {
    pub const ALL: [Criterion; 6] = [
        Criterion::RatioEquivalence,
        Criterion::DinkelbachExactness,
        Criterion::EigenpairConstructors,
        Criterion::SpectralIdentities,
        Criterion::StructureTheorems,
        Criterion::Inequalities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::RatioEquivalence => "ratio_equivalence",
            Criterion::DinkelbachExactness => "dinkelbach_exactness",
            Criterion::EigenpairConstructors => "eigenpair_constructors",
            Criterion::SpectralIdentities => "spectral_identities",
            Criterion::StructureTheorems => "structure_theorems",
            Criterion::Inequalities => "inequalities",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub criterion: Criterion,
    pub status: Status,
    /// First failure, or the reason for skipping.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckOutcome {
    fn from_failures(criterion: Criterion, r: Result<Vec<String>>) -> Self {
        match r {
            Ok(f) if f.is_empty() => CheckOutcome { criterion, status: Status::Pass, detail: None },
            Ok(f) => CheckOutcome {
                criterion,
                status: Status::Fail,
                detail: Some(format!("{} failure(s); first: {}", f.len(), f[0])),
            },
            Err(e) => CheckOutcome { criterion, status: Status::Fail, detail: Some(e.to_string()) },
        }
    }

    fn skip(criterion: Criterion, why: String) -> Self {
        CheckOutcome { criterion, status: Status::Skip, detail: Some(why) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphOutcome {
    pub file: String,
    pub n: usize,
    pub m: usize,
    pub checks: Vec<CheckOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub criterion: Criterion,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub graphs: Vec<GraphOutcome>,
    pub totals: Vec<Tally>,
    pub all_passed: bool,
}

fn fail_if(failures: &mut Vec<String>, bad: bool, msg: impl FnOnce() -> String) {
    if bad {
        failures.push(msg());
    }
}

fn ternary_pairs(n: usize) -> Vec<(VertexSet, VertexSet)> {
    let mut out = Vec::new();
    let mut labels = vec![0u8; n];
    loop {
        if labels.iter().any(|&l| l != 0) {
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
    out
}

/// Optimum of each ratio over all nonzero ternary vectors against the
/// combinatorial oracle.
pub fn ratio_equivalence(g: &Graph, caps: &Caps) -> Result<Vec<String>> {
    let n = g.n();
    let pairs = ternary_pairs(n);
    let mut failures = Vec::new();
    for kind in RatioKind::ALL {
        let mut best: Option<Rational> = None;
        for (a, b) in &pairs {
            let Ok(r) = ratio_objective(kind, g, &indicator(n, a, b)) else { continue };
            let better = match (&best, kind.opt()) {
                (None, _) => true,
                (Some(v), Opt::Min) => r < *v,
                (Some(v), Opt::Max) => r > *v,
            };
            if better {
                best = Some(r);
            }
        }
        let oracle = ratio_oracle(kind, g, caps)?.value;
        fail_if(&mut failures, best.as_ref() != Some(&oracle), || {
            format!("{kind}: ternary optimum {best:?} vs oracle {oracle}")
        });
    }
    Ok(failures)
}

/// Exact Dinkelbach runs against the oracle: value, monotone trace, finite
/// termination, membership in `Ω` and stationarity of the limit.
pub fn dinkelbach_exactness(g: &Graph, caps: &Caps) -> Result<Vec<String>> {
    let n = g.n();
    let pairs = ternary_pairs(n);
    let mut failures = Vec::new();
    for kind in RatioKind::ALL {
        let p = RatioProblem::registered(kind);
        let t = solve(&p, g, &default_start(n), &SolveOptions::default(), caps)?;
        let oracle = ratio_oracle(kind, g, caps)?.value;
        fail_if(&mut failures, t.value() != &oracle, || format!("{kind}: {} vs oracle {oracle}", t.value()));
        fail_if(&mut failures, !t.converged, || format!("{kind}: not converged"));
        let monotone = t.iterations.windows(2).all(|w| match p.opt {
            Opt::Min => w[1].r_k <= w[0].r_k,
            Opt::Max => w[1].r_k >= w[0].r_k,
        });
        fail_if(&mut failures, !monotone, || format!("{kind}: trace not monotone"));
        fail_if(&mut failures, !t.iterations.iter().all(|it| p.domain.contains(&it.x_k)), || {
            format!("{kind}: iterate outside the feasible set")
        });
        let mut values: Vec<Rational> = pairs
            .iter()
            .filter(|(a, b)| admits(p.domain, n, a, b))
            .filter_map(|(a, b)| p.value(g, &indicator(n, a, b)).ok())
            .collect();
        values.sort();
        values.dedup();
        fail_if(&mut failures, t.iterations.len() - 1 > values.len(), || {
            format!("{kind}: {} steps exceed {} distinct ratio values", t.iterations.len() - 1, values.len())
        });
        let x = &t.iterations.last().expect("nonempty").x_k;
        fail_if(&mut failures, !stationary_check(kind, g, t.value(), x)?, || {
            format!("{kind}: limit ({}, {x:?}) is not stationary", t.value())
        });
    }
    Ok(failures)
}

fn admits(d: DomainKind, n: usize, a: &VertexSet, b: &VertexSet) -> bool {
    let both = !a.is_empty() && !b.is_empty();
    let some = !a.is_empty() || !b.is_empty();
    match d {
        DomainKind::Nonzero => some,
        DomainKind::Nonconstant2Cut => both,
        DomainKind::Nonconstant3Cut => both || (some && a.len() + b.len() < n),
    }
}

/// Every `1_{A,Aᶜ}` verifies at its explicit eigenvalue for the three
/// sup-norm-type problems.
pub fn eigenpair_constructors(g: &Graph) -> Result<Vec<String>> {
    let n = g.n();
    let vol = g.vol_all();
    let mut failures = Vec::new();
    for mask in 0..(1u64 << n) {
        let a = VertexSet::from_mask(mask);
        let ac = a.complement(n);
        let x = indicator(n, &a, &ac);
        let cut = g.boundary(&a);
        let (va, vc) = (g.vol(&a), g.vol(&ac));
        let mut cases = vec![
            (EigenproblemId::MaxcutInf, &cut * Rational::from_integer(2) / &vol),
            (EigenproblemId::AntiCheeger, &cut / va.clone().max(vc.clone())),
        ];
        if !a.is_empty() && !ac.is_empty() && g.is_connected() {
            cases.push((EigenproblemId::CheegerNew, &cut / va.min(vc)));
        }
        for (id, lambda) in cases {
            if !verify(id, g, &lambda, &x)?.verdict {
                failures.push(format!("{id} rejects A = {a:?} at {lambda}"));
            }
        }
    }
    Ok(failures)
}

fn values(points: &[crate::eigen::SpectrumPoint]) -> Vec<Rational> {
    points.iter().map(|p| p.lambda.clone()).collect()
}

/// Extremes of the scanned spectra against the oracles.
pub fn spectral_identities(g: &Graph, caps: &Caps) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    let one = Rational::one();
    let vol = g.vol_all();
    if g.is_connected() {
        let cn = values(&spectrum_scan(EigenproblemId::CheegerNew, g, caps)?);
        let h = cheeger(g, caps)?.value;
        let first = cn.iter().find(|l| !l.is_zero());
        fail_if(&mut failures, first != Some(&h), || format!("cheeger_new: min nonzero {first:?} vs h {h}"));
    }
    let sl = values(&spectrum_scan(EigenproblemId::SignlessOneLap, g, caps)?);
    let hp = dual_cheeger(g, caps)?.value;
    fail_if(&mut failures, sl.first() != Some(&(&one - &hp)), || {
        format!("signless: first {:?} vs 1 - h+ {}", sl.first(), &one - &hp)
    });
    let mx = values(&spectrum_scan(EigenproblemId::MaxcutInf, g, caps)?);
    let hmax = maxcut(g, caps)?.value;
    fail_if(&mut failures, mx.last() != Some(&hmax), || {
        format!("maxcut_inf: max {:?} vs h_max {hmax}", mx.last())
    });
    let n = g.n();
    if n >= 2 {
        let m2 = minmax_k_cut(g, 2, false, caps)?.value;
        let second = mx.get(1).map(|c| c * &vol);
        fail_if(&mut failures, second.as_ref() != Some(&m2), || format!("vol·c₂ {second:?} vs M₂ {m2}"));
        let mn = minmax_k_cut(g, n, false, caps)?.value;
        let top = mx.last().map(|c| c * &vol);
        fail_if(&mut failures, top.as_ref() != Some(&mn), || format!("vol·c_n {top:?} vs M_n {mn}"));
    }
    let an = values(&spectrum_scan(EigenproblemId::AntiCheeger, g, caps)?);
    let ha = ratio_oracle(RatioKind::Anti, g, caps)?.value;
    fail_if(&mut failures, an.last() != Some(&ha), || format!("anti: max {:?} vs h_anti {ha}", an.last()));
    Ok(failures)
}

/// Nodal structure on every verified ternary eigenpair of `maxcut_inf` and
/// `anti_cheeger`.
pub fn structure_theorems(g: &Graph, caps: &Caps) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    for id in [EigenproblemId::MaxcutInf, EigenproblemId::AntiCheeger] {
        let pairs = ternary_eigenpairs(id, g, caps)?;
        let Some(top) = pairs.iter().map(|r| r.lambda.clone()).max() else { continue };
        let min_nonzero = pairs.iter().map(|r| r.lambda.clone()).filter(|l| !l.is_zero()).min();
        for r in &pairs {
            if id == EigenproblemId::MaxcutInf {
                fail_if(&mut failures, !check_null_symmetry(g, r)?, || {
                    format!("null symmetry fails at {:?}", r.x)
                });
                if Some(&r.lambda) == min_nonzero.as_ref() && g.is_connected() {
                    fail_if(&mut failures, !check_min_nonzero_null_count(g, r)?, || {
                        format!("S₀ > 2 at the smallest nonzero eigenvalue, x = {:?}", r.x)
                    });
                }
            }
            if r.lambda == top && g.isolated_vertex().is_none() {
                let s = check_max_eigvec_structure(g, r, None)?;
                fail_if(&mut failures, !s.all_hold, || format!("{id} top structure {s:?} at {:?}", r.x));
            }
        }
    }
    Ok(failures)
}

pub fn inequalities(g: &Graph, caps: &Caps) -> Result<Vec<String>> {
    Ok(inequality_suite(g, caps, Suite::All)?
        .into_iter()
        .filter(|r| !r.holds)
        .map(|r| format!("{} fails: {} ≤ {} ≤ {}", r.name, r.lhs, r.mid, r.rhs))
        .collect())
}

/// All criteria on one graph.
pub fn check_graph(file: &str, g: &Graph, caps: &Caps) -> GraphOutcome {
    let n = g.n();
    let exhaustive = |c: Criterion, f: &dyn Fn() -> Result<Vec<String>>| {
        if n <= EXHAUSTIVE_N {
            CheckOutcome::from_failures(c, f())
        } else {
            CheckOutcome::skip(c, format!("n = {n} > {EXHAUSTIVE_N}"))
        }
    };
    let mut checks = vec![
        exhaustive(Criterion::RatioEquivalence, &|| ratio_equivalence(g, caps)),
        exhaustive(Criterion::DinkelbachExactness, &|| dinkelbach_exactness(g, caps)),
        exhaustive(Criterion::EigenpairConstructors, &|| eigenpair_constructors(g)),
    ];
    checks.push(if n <= caps.scan {
        CheckOutcome::from_failures(Criterion::SpectralIdentities, spectral_identities(g, caps))
    } else {
        CheckOutcome::skip(Criterion::SpectralIdentities, format!("n = {n} > scan cap {}", caps.scan))
    });
    checks.push(exhaustive(Criterion::StructureTheorems, &|| structure_theorems(g, caps)));
    checks.push(if n <= INEQUALITY_N {
        CheckOutcome::from_failures(Criterion::Inequalities, inequalities(g, caps))
    } else {
        CheckOutcome::skip(Criterion::Inequalities, format!("n = {n} > {INEQUALITY_N}"))
    });
    GraphOutcome { file: file.to_string(), n, m: g.m(), checks }
}

/// Graph files of a corpus directory, sorted by file name.
pub fn read_corpus(dir: &Path) -> Result<Vec<(String, Graph)>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<String> = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::Io(e.to_string()))?;
        let path = entry.path();
        let ext = path.extension().and_then(|s| s.to_str());
        if path.is_file() && matches!(ext, Some("txt") | Some("json")) {
            files.push(entry.file_name().to_string_lossy().into_owned());
        }
    }
    files.sort();
    files
        .into_iter()
        .map(|f| {
            let text = fs::read_to_string(dir.join(&f)).map_err(|e| Error::Io(format!("{f}: {e}")))?;
            let g = parse_graph(&text).map_err(|e| Error::Io(format!("{f}: {e}")))?;
            Ok((f, g))
        })
        .collect()
}

/// Runs [`check_graph`] over a corpus on `workers` threads. The report does
/// not depend on the worker count.
pub fn run_suite(corpus: &[(String, Graph)], caps: &Caps, workers: usize) -> Result<SuiteReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let graphs: Vec<GraphOutcome> =
        pool.install(|| corpus.par_iter().map(|(f, g)| check_graph(f, g, caps)).collect());
    let mut counts: BTreeMap<Criterion, (usize, usize, usize)> = BTreeMap::new();
    for c in Criterion::ALL {
        counts.insert(c, (0, 0, 0));
    }
    for go in &graphs {
        for ch in &go.checks {
            let e = counts.get_mut(&ch.criterion).expect("all criteria present");
            match ch.status {
                Status::Pass => e.0 += 1,
                Status::Fail => e.1 += 1,
                Status::Skip => e.2 += 1,
            }
        }
    }
    let totals: Vec<Tally> = counts
        .into_iter()
        .map(|(criterion, (passed, failed, skipped))| Tally { criterion, passed, failed, skipped })
        .collect();
    let all_passed = totals.iter().all(|t| t.failed == 0);
    Ok(SuiteReport { graphs, totals, all_passed })
}

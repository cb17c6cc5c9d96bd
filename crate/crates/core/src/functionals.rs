//! One-homogeneous functionals on vertex vectors.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rational::Rational;

/// A rational vector indexed by vertex.
pub type RVector = Vec<Rational>;

/// A closed interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn contains(&self, t: &Rational) -> bool {
        &self.lo <= t && t <= &self.hi
    }
}

pub fn check_len(g: &Graph, x: &[Rational]) -> Result<()> {
    if x.len() != g.n() {
        return Err(Error::LengthMismatch { got: x.len(), n: g.n() });
    }
    Ok(())
}

/// `1_A − 1_B`.
pub fn indicator(n: usize, a: &VertexSet, b: &VertexSet) -> RVector {
    (0..n)
        .map(|i| {
            if a.contains(i) {
                Rational::one()
            } else if b.contains(i) {
                Rational::from_integer(-1)
            } else {
                Rational::zero()
            }
        })
        .collect()
}

/// `I(x) = Σ w_ij |x_i − x_j|`.
pub fn total_variation(g: &Graph, x: &[Rational]) -> Rational {
    g.edges().iter().map(|e| (&x[e.u] - &x[e.v]).abs() * &e.w).sum()
}

/// `I⁺(x) = Σ w_ij |x_i + x_j|`.
pub fn signless_variation(g: &Graph, x: &[Rational]) -> Rational {
    g.edges().iter().map(|e| (&x[e.u] + &x[e.v]).abs() * &e.w).sum()
}

/// Minimizers of `t ↦ Σ μ_i |x_i − t|`.
pub fn median_interval(g: &Graph, x: &[Rational]) -> Result<Interval> {
    let total = g.vol_all();
    if !total.is_positive() {
        return Err(Error::ZeroMeasure);
    }
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&i, &j| x[i].cmp(&x[j]));
    let half = &total / Rational::from_integer(2);
    let mut acc = Rational::zero();
    let mut lo = None;
    let mut k = 0;
    while k < order.len() {
        let value = &x[order[k]];
        while k < order.len() && &x[order[k]] == value {
            acc += &g.mu()[order[k]];
            k += 1;
        }
        if lo.is_none() && acc >= half {
            lo = Some(value.clone());
        }
        if acc > half {
            return Ok(Interval { lo: lo.unwrap(), hi: value.clone() });
        }
    }
    unreachable!("cumulative measure reaches the total")
}

/// `N(x) = min_t Σ μ_i |x_i − t|`.
pub fn median_norm(g: &Graph, x: &[Rational]) -> Result<Rational> {
    let t = median_interval(g, x)?.lo;
    Ok(x.iter().zip(g.mu()).map(|(xi, m)| (xi - &t).abs() * m).sum())
}

pub fn sup_norm(x: &[Rational]) -> Rational {
    x.iter().map(Rational::abs).max().unwrap_or_default()
}

pub fn l1_mu_norm(g: &Graph, x: &[Rational]) -> Rational {
    x.iter().zip(g.mu()).map(|(xi, m)| xi.abs() * m).sum()
}

/// Lovász extension of a set-pair function:
/// `Σ_i (|x_σ(i+1)| − |x_σ(i)|) f(V⁺, V⁻)` with `σ` sorting `|x|` ascending,
/// a leading level of 0, and `V± = {j : ±x_j > |x_σ(i)|}`.
pub fn lovasz_extension<F>(f: F, x: &[Rational]) -> Rational
where
    F: Fn(&VertexSet, &VertexSet) -> Rational,
{
    let mut levels: Vec<Rational> = x.iter().map(Rational::abs).collect();
    levels.push(Rational::zero());
    levels.sort();
    levels.dedup();
    let mut total = Rational::zero();
    for pair in levels.windows(2) {
        let t = &pair[0];
        let plus: VertexSet = (0..x.len()).filter(|&j| &x[j] > t).collect();
        let minus: VertexSet = (0..x.len()).filter(|&j| -&x[j] > *t).collect();
        total += (&pair[1] - t) * f(&plus, &minus);
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Opt {
    Min,
    Max,
}

/// The ratio objectives whose optima are the cut constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RatioKind {
    /// `I / N`
    CheegerTv,
    /// `(e‖x‖∞ − I⁺) / N`
    CheegerNew,
    /// `I⁺ / ‖x‖₁,μ`
    Dual,
    /// `I⁺ / (I⁺ + I)`
    ModifiedDual,
    /// `I / (vol(V)‖x‖∞)`
    MaxcutRatio,
    /// `I / (2 vol(V)‖x‖∞ − N)`
    Anti,
}

impl RatioKind {
    pub const ALL: [RatioKind; 6] = [
        RatioKind::CheegerTv,
        RatioKind::CheegerNew,
        RatioKind::Dual,
        RatioKind::ModifiedDual,
        RatioKind::MaxcutRatio,
        RatioKind::Anti,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RatioKind::CheegerTv => "cheeger_tv",
            RatioKind::CheegerNew => "cheeger_new",
            RatioKind::Dual => "dual",
            RatioKind::ModifiedDual => "mdual",
            RatioKind::MaxcutRatio => "maxcut_ratio",
            RatioKind::Anti => "anti",
        }
    }

    pub fn opt(self) -> Opt {
        match self {
            RatioKind::MaxcutRatio | RatioKind::Anti => Opt::Max,
            _ => Opt::Min,
        }
    }

    /// Whether the denominator vanishes on constant vectors.
    pub fn needs_nonconstant(self) -> bool {
        matches!(self, RatioKind::CheegerTv | RatioKind::CheegerNew)
    }
}

impl fmt::Display for RatioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RatioKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cheeger_tv" | "cheeger" => RatioKind::CheegerTv,
            "cheeger_new" => RatioKind::CheegerNew,
            "dual" | "dual_cheeger" => RatioKind::Dual,
            "mdual" | "modified_dual" | "modified_dual_cheeger" => RatioKind::ModifiedDual,
            "maxcut_ratio" | "maxcut" => RatioKind::MaxcutRatio,
            "anti" | "anti_cheeger" => RatioKind::Anti,
            _ => return Err(Error::UnknownProblem(s.to_string())),
        })
    }
}

impl Serialize for RatioKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

fn nonzero(den: Rational, what: &str) -> Result<Rational> {
    if den.is_zero() {
        Err(Error::DegenerateDenominator(what.to_string()))
    } else {
        Ok(den)
    }
}

/// Evaluates the ratio objective of `kind` at `x`.
pub fn ratio_objective(kind: RatioKind, g: &Graph, x: &[Rational]) -> Result<Rational> {
    check_len(g, x)?;
    let (num, den) = match kind {
        RatioKind::CheegerTv => {
            (total_variation(g, x), nonzero(median_norm(g, x)?, "N(x) = 0 (constant x)")?)
        }
        RatioKind::CheegerNew => (
            g.twice_edge_weight() * sup_norm(x) - signless_variation(g, x),
            nonzero(median_norm(g, x)?, "N(x) = 0 (constant x)")?,
        ),
        RatioKind::Dual => (signless_variation(g, x), nonzero(l1_mu_norm(g, x), "‖x‖₁,μ = 0")?),
        RatioKind::ModifiedDual => {
            let plus = signless_variation(g, x);
            let den = &plus + total_variation(g, x);
            (plus, nonzero(den, "I⁺(x) + I(x) = 0")?)
        }
        RatioKind::MaxcutRatio => {
            (total_variation(g, x), nonzero(g.vol_all() * sup_norm(x), "vol(V)‖x‖∞ = 0")?)
        }
        RatioKind::Anti => {
            let two_vol = g.vol_all() * Rational::from_integer(2);
            let den = two_vol * sup_norm(x) - median_norm(g, x)?;
            (total_variation(g, x), nonzero(den, "2vol(V)‖x‖∞ − N(x) = 0")?)
        }
    };
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path, star_triangle};

    fn v(xs: &[i64]) -> RVector {
        xs.iter().map(|&a| Rational::from_integer(a)).collect()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn st2_vector() -> RVector {
        v(&[1, 1, -1, -1, 0])
    }

    #[test]
    fn variations() {
        assert_eq!(total_variation(&path(2), &v(&[1, -1])), q(2, 1));
        assert_eq!(total_variation(&path(4), &v(&[3, 3, 3, 3])), q(0, 1));
        assert_eq!(total_variation(&star_triangle(2), &st2_vector()), q(8, 1));
        assert_eq!(signless_variation(&path(2), &v(&[1, -1])), q(0, 1));
        assert_eq!(signless_variation(&complete(3), &v(&[1, -1, 0])), q(2, 1));
        let p3 = path(3);
        let x = v(&[1, 0, -1]);
        assert_eq!(total_variation(&p3, &x), q(2, 1));
        assert_eq!(signless_variation(&p3, &x), q(2, 1));
        assert_eq!(p3.twice_edge_weight() * sup_norm(&x), q(4, 1));
    }

    #[test]
    fn medians() {
        let k2 = path(2);
        assert_eq!(median_interval(&k2, &v(&[1, -1])).unwrap(), Interval { lo: q(-1, 1), hi: q(1, 1) });
        assert_eq!(median_interval(&path(3), &v(&[0, 1, 1])).unwrap(), Interval { lo: q(1, 1), hi: q(1, 1) });
        assert_eq!(median_interval(&path(3), &v(&[4, 4, 4])).unwrap(), Interval { lo: q(4, 1), hi: q(4, 1) });
        assert_eq!(median_norm(&k2, &v(&[1, -1])).unwrap(), q(2, 1));
        assert_eq!(median_norm(&path(3), &v(&[1, 0, 0])).unwrap(), q(1, 1));
        let empty = Graph::unit(2, []).unwrap();
        assert_eq!(median_interval(&empty, &v(&[1, 0])), Err(Error::ZeroMeasure));
    }

    #[test]
    fn norms() {
        assert_eq!(sup_norm(&v(&[1, -2, 0])), q(2, 1));
        assert_eq!(l1_mu_norm(&path(3), &v(&[1, 1, 1])), q(4, 1));
        assert_eq!(sup_norm(&v(&[0, 0])), q(0, 1));
        assert_eq!(l1_mu_norm(&path(2), &v(&[0, 0])), q(0, 1));
    }

    #[test]
    fn lovasz_on_indicators_and_by_hand() {
        let k3 = complete(3);
        let cut = |a: &VertexSet, b: &VertexSet| k3.cut_weight(a, b).unwrap();
        assert_eq!(lovasz_extension(cut, &v(&[2, 1, -1])), q(2, 1));
        let a = VertexSet::from_ids([0]);
        let b = VertexSet::from_ids([1, 2]);
        assert_eq!(lovasz_extension(cut, &indicator(3, &a, &b)), q(2, 1));
        assert_eq!(lovasz_extension(cut, &v(&[0, 0, 0])), q(0, 1));
    }

    #[test]
    fn ratios() {
        assert_eq!(ratio_objective(RatioKind::CheegerTv, &path(4), &v(&[1, 1, 0, 0])).unwrap(), q(1, 3));
        assert_eq!(ratio_objective(RatioKind::Dual, &path(2), &v(&[1, -1])).unwrap(), q(0, 1));
        assert_eq!(
            ratio_objective(RatioKind::MaxcutRatio, &star_triangle(2), &st2_vector()).unwrap(),
            q(2, 3)
        );
        assert!(matches!(
            ratio_objective(RatioKind::CheegerTv, &path(3), &v(&[2, 2, 2])),
            Err(Error::DegenerateDenominator(_))
        ));
        assert!(matches!(
            ratio_objective(RatioKind::Dual, &path(3), &v(&[0, 0, 0])),
            Err(Error::DegenerateDenominator(_))
        ));
    }

    #[test]
    fn parses_names() {
        for k in RatioKind::ALL {
            assert_eq!(k.name().parse::<RatioKind>().unwrap(), k);
        }
        assert_eq!("dual_cheeger".parse::<RatioKind>().unwrap(), RatioKind::Dual);
        assert!("nope".parse::<RatioKind>().is_err());
    }
}

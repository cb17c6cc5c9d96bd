//! Exact feasibility for small linear systems with bounded variables.
//!
//! A problem is a set of variables `l_j ≤ y_j ≤ u_j` and ranged rows
//! `L_r ≤ a_r·y ≤ U_r`. Fixed variables and single-variable rows are folded
//! away, then a bounded-variable Phase I simplex with Bland's rule decides
//! feasibility and returns an exact point.

use crate::rational::Rational;

#[derive(Debug, Clone, Default)]
pub struct Lp {
    lower: Vec<Rational>,
    upper: Vec<Rational>,
    rows: Vec<Row>,
}

#[derive(Debug, Clone)]
struct Row {
    terms: Vec<(usize, Rational)>,
    lo: Rational,
    hi: Rational,
}

/// An affine expression `constant + Σ coeff·var`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Affine {
    pub constant: Rational,
    pub terms: Vec<(usize, Rational)>,
}

impl Affine {
    pub fn constant(c: Rational) -> Self {
        Affine { constant: c, terms: Vec::new() }
    }

    pub fn var(j: usize) -> Self {
        Affine { constant: Rational::zero(), terms: vec![(j, Rational::one())] }
    }

    pub fn add_scaled(&mut self, other: &Affine, k: &Rational) {
        if k.is_zero() {
            return;
        }
        self.constant += &other.constant * k;
        for (j, c) in &other.terms {
            self.terms.push((*j, c * k));
        }
    }

    pub fn eval(&self, y: &[Rational]) -> Rational {
        let mut total = self.constant.clone();
        for (j, c) in &self.terms {
            total += c * &y[*j];
        }
        total
    }
}

/// A variable value or a free selection inside an interval.
#[derive(Debug, Clone)]
pub enum Choice {
    Fixed(Rational),
    Var(usize),
}

impl Choice {
    pub fn affine(&self) -> Affine {
        match self {
            Choice::Fixed(c) => Affine::constant(c.clone()),
            Choice::Var(j) => Affine::var(*j),
        }
    }

    pub fn value(&self, y: &[Rational]) -> Rational {
        match self {
            Choice::Fixed(c) => c.clone(),
            Choice::Var(j) => y[*j].clone(),
        }
    }
}

impl Lp {
    pub fn new() -> Self {
        Lp::default()
    }

    pub fn num_vars(&self) -> usize {
        self.lower.len()
    }

    pub fn add_var(&mut self, lo: Rational, hi: Rational) -> usize {
        self.lower.push(lo);
        self.upper.push(hi);
        self.lower.len() - 1
    }

    /// A fixed value when `lo == hi`, otherwise a fresh variable.
    pub fn choice(&mut self, lo: Rational, hi: Rational) -> Choice {
        if lo == hi {
            Choice::Fixed(lo)
        } else {
            Choice::Var(self.add_var(lo, hi))
        }
    }

    /// Adds `lo ≤ expr ≤ hi`.
    pub fn constrain(&mut self, expr: &Affine, lo: Rational, hi: Rational) {
        let mut terms: Vec<(usize, Rational)> = Vec::new();
        let mut sorted = expr.terms.clone();
        sorted.sort_by_key(|t| t.0);
        for (j, c) in sorted {
            match terms.last_mut() {
                Some((k, acc)) if *k == j => *acc += c,
                _ => terms.push((j, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        self.rows.push(Row { terms, lo: lo - &expr.constant, hi: hi - &expr.constant });
    }

    pub fn constrain_eq(&mut self, expr: &Affine, value: Rational) {
        self.constrain(expr, value.clone(), value);
    }

    /// Checks a point exactly.
    pub fn satisfied_by(&self, y: &[Rational]) -> bool {
        y.len() == self.num_vars()
            && y.iter().zip(&self.lower).all(|(v, l)| v >= l)
            && y.iter().zip(&self.upper).all(|(v, u)| v <= u)
            && self.rows.iter().all(|r| {
                let s: Rational = r.terms.iter().map(|(j, c)| c * &y[*j]).sum();
                r.lo <= s && s <= r.hi
            })
    }

    /// Returns a feasible point, or `None` when the system is infeasible.
    pub fn solve(&self) -> Option<Vec<Rational>> {
        let mut lower = self.lower.clone();
        let mut upper = self.upper.clone();
        if lower.iter().zip(&upper).any(|(l, u)| l > u) || self.rows.iter().any(|r| r.lo > r.hi) {
            return None;
        }
        let mut rows: Vec<Row> = self.rows.clone();
        // Fold fixed variables and singleton rows until nothing changes.
        loop {
            let mut changed = false;
            let mut kept = Vec::with_capacity(rows.len());
            for mut r in rows {
                let mut shift = Rational::zero();
                r.terms.retain(|(j, c)| {
                    if lower[*j] == upper[*j] {
                        shift += c * &lower[*j];
                        false
                    } else {
                        true
                    }
                });
                if !shift.is_zero() {
                    r.lo -= &shift;
                    r.hi -= &shift;
                }
                match r.terms.len() {
                    0 => {
                        if r.lo.is_positive() || r.hi.is_negative() {
                            return None;
                        }
                        changed = true;
                    }
                    1 => {
                        let (j, c) = r.terms[0].clone();
                        let (mut lo, mut hi) = (&r.lo / &c, &r.hi / &c);
                        if c.is_negative() {
                            std::mem::swap(&mut lo, &mut hi);
                        }
                        if lo > lower[j] {
                            lower[j] = lo;
                        }
                        if hi < upper[j] {
                            upper[j] = hi;
                        }
                        if lower[j] > upper[j] {
                            return None;
                        }
                        changed = true;
                    }
                    _ => kept.push(r),
                }
            }
            rows = kept;
            if !changed {
                break;
            }
        }
        let mut y: Vec<Rational> = lower.clone();
        if rows.is_empty() {
            return Some(y);
        }
        let free: Vec<usize> = (0..y.len()).filter(|&j| lower[j] != upper[j]).collect();
        let mut col_of = vec![usize::MAX; y.len()];
        for (c, &j) in free.iter().enumerate() {
            col_of[j] = c;
        }
        let mut cols_lb: Vec<Rational> = free.iter().map(|&j| lower[j].clone()).collect();
        let mut cols_ub: Vec<Rational> = free.iter().map(|&j| upper[j].clone()).collect();
        let mut a: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(rows.len());
        let mut b = Vec::with_capacity(rows.len());
        for r in &rows {
            let mut terms: Vec<(usize, Rational)> =
                r.terms.iter().map(|(j, c)| (col_of[*j], c.clone())).collect();
            if r.lo == r.hi {
                b.push(r.lo.clone());
            } else {
                // a·y − t = 0 with t ∈ [lo, hi].
                terms.push((cols_lb.len(), Rational::from_integer(-1)));
                cols_lb.push(r.lo.clone());
                cols_ub.push(r.hi.clone());
                b.push(Rational::zero());
            }
            a.push(terms);
        }
        let x = phase_one(&a, &b, &cols_lb, &cols_ub)?;
        for (c, &j) in free.iter().enumerate() {
            y[j] = x[c].clone();
        }
        debug_assert!(self.satisfied_by(&y));
        Some(y)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Lower,
    Upper,
    Basic,
}

/// Finds `x` with `A x = b` and `lb ≤ x ≤ ub` (all bounds finite).
fn phase_one(
    a: &[Vec<(usize, Rational)>],
    b: &[Rational],
    lb: &[Rational],
    ub: &[Rational],
) -> Option<Vec<Rational>> {
    let m = a.len();
    let nstruct = lb.len();
    let ncols = nstruct + m;
    let mut tab = vec![vec![Rational::zero(); ncols]; m];
    let mut beta = Vec::with_capacity(m);
    for (r, row) in a.iter().enumerate() {
        let mut resid = b[r].clone();
        for (j, c) in row {
            resid -= c * &lb[*j];
        }
        let neg = resid.is_negative();
        for (j, c) in row {
            tab[r][*j] = if neg { -c } else { c.clone() };
        }
        tab[r][nstruct + r] = Rational::one();
        beta.push(resid.abs());
    }
    let mut state = vec![State::Lower; ncols];
    let mut basis: Vec<usize> = (nstruct..ncols).collect();
    for j in nstruct..ncols {
        state[j] = State::Basic;
    }
    let mut d: Vec<Rational> = (0..ncols)
        .map(|j| if j >= nstruct { Rational::zero() } else { -(0..m).map(|r| &tab[r][j]).sum::<Rational>() })
        .collect();
    let col_lb = |j: usize| if j < nstruct { lb[j].clone() } else { Rational::zero() };
    let col_ub = |j: usize| if j < nstruct { Some(ub[j].clone()) } else { None };

    loop {
        let entering = (0..nstruct).find(|&j| match state[j] {
            State::Lower => d[j].is_negative() && ub[j] > lb[j],
            State::Upper => d[j].is_positive(),
            State::Basic => false,
        });
        let Some(j) = entering else { break };
        let up = state[j] == State::Lower;
        // Basic value in row r moves by rate_r · θ.
        let rates: Vec<Rational> = (0..m).map(|r| if up { -&tab[r][j] } else { tab[r][j].clone() }).collect();
        let mut theta = &ub[j] - &lb[j];
        let mut leave: Option<(usize, bool)> = None;
        for r in 0..m {
            let rate = &rates[r];
            if rate.is_zero() {
                continue;
            }
            let bv = basis[r];
            let (limit, to_upper) = if rate.is_negative() {
                ((&beta[r] - col_lb(bv)) / -rate, false)
            } else {
                match col_ub(bv) {
                    Some(u) => ((u - &beta[r]) / rate, true),
                    None => continue,
                }
            };
            let better = match &leave {
                _ if limit < theta => true,
                Some((r0, _)) if limit == theta => bv < basis[*r0],
                None if limit == theta => true,
                _ => false,
            };
            if better {
                theta = limit;
                leave = Some((r, to_upper));
            }
        }
        for r in 0..m {
            if !rates[r].is_zero() {
                let delta = &rates[r] * &theta;
                beta[r] += delta;
            }
        }
        match leave {
            None => {
                state[j] = if up { State::Upper } else { State::Lower };
            }
            Some((r, to_upper)) => {
                let entering_value = if up { &lb[j] + &theta } else { &ub[j] - &theta };
                let old = basis[r];
                if old >= nstruct {
                    // Artificials never re-enter.
                    state[old] = State::Lower;
                } else {
                    state[old] = if to_upper { State::Upper } else { State::Lower };
                }
                basis[r] = j;
                state[j] = State::Basic;
                beta[r] = entering_value;
                let piv = tab[r][j].clone();
                if piv != Rational::one() {
                    for v in tab[r].iter_mut() {
                        if !v.is_zero() {
                            *v = &*v / &piv;
                        }
                    }
                }
                let prow = tab[r].clone();
                for (rr, row) in tab.iter_mut().enumerate() {
                    if rr == r || row[j].is_zero() {
                        continue;
                    }
                    let f = row[j].clone();
                    for (c, pv) in prow.iter().enumerate() {
                        if !pv.is_zero() {
                            row[c] -= &f * pv;
                        }
                    }
                }
                if !d[j].is_zero() {
                    let f = d[j].clone();
                    for (c, pv) in prow.iter().enumerate() {
                        if !pv.is_zero() {
                            d[c] -= &f * pv;
                        }
                    }
                }
            }
        }
    }
    for r in 0..m {
        if basis[r] >= nstruct && !beta[r].is_zero() {
            return None;
        }
    }
    let mut x: Vec<Rational> =
        (0..nstruct).map(|j| if state[j] == State::Upper { ub[j].clone() } else { lb[j].clone() }).collect();
    for r in 0..m {
        if basis[r] < nstruct {
            x[basis[r]] = beta[r].clone();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn expr(terms: &[(usize, i64)], c: i64) -> Affine {
        Affine { constant: q(c, 1), terms: terms.iter().map(|&(j, k)| (j, q(k, 1))).collect() }
    }

    #[test]
    fn finds_interior_point() {
        let mut lp = Lp::new();
        let x = lp.add_var(q(-1, 1), q(1, 1));
        let y = lp.add_var(q(-1, 1), q(1, 1));
        let z = lp.add_var(q(0, 1), q(5, 1));
        lp.constrain_eq(&expr(&[(x, 1), (y, 1)], 0), q(1, 2));
        lp.constrain(&expr(&[(x, 1), (y, -1), (z, 2)], 0), q(3, 1), q(4, 1));
        lp.constrain_eq(&expr(&[(x, 2), (z, 1)], -1), q(1, 1));
        let sol = lp.solve().unwrap();
        assert!(lp.satisfied_by(&sol));
    }

    #[test]
    fn detects_infeasibility() {
        let mut lp = Lp::new();
        let x = lp.add_var(q(-1, 1), q(1, 1));
        let y = lp.add_var(q(-1, 1), q(1, 1));
        lp.constrain_eq(&expr(&[(x, 1), (y, 1)], 0), q(3, 1));
        assert!(lp.solve().is_none());
        let mut lp = Lp::new();
        let x = lp.add_var(q(0, 1), q(1, 1));
        let y = lp.add_var(q(0, 1), q(1, 1));
        let z = lp.add_var(q(0, 1), q(1, 1));
        lp.constrain_eq(&expr(&[(x, 1), (y, 1)], 0), q(1, 1));
        lp.constrain_eq(&expr(&[(y, 1), (z, 1)], 0), q(1, 1));
        lp.constrain_eq(&expr(&[(x, 1), (z, 1)], 0), q(1, 1));
        lp.constrain_eq(&expr(&[(x, 1), (y, 1), (z, 1)], 0), q(2, 1));
        assert!(lp.solve().is_none());
        lp.rows.pop();
        let sol = lp.solve().unwrap();
        assert_eq!(sol, vec![q(1, 2), q(1, 2), q(1, 2)]);
    }

    #[test]
    fn constant_rows_are_checked() {
        let mut lp = Lp::new();
        lp.constrain(&Affine::constant(q(2, 1)), q(0, 1), q(1, 1));
        assert!(lp.solve().is_none());
    }
}

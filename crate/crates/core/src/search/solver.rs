//! Exact elimination with backtracking for small polynomial systems.

use super::poly::Poly;
use crate::scalar::solve_univariate;
use crate::scalar::GaussScalar;
use std::collections::BTreeSet;

/// Named unknowns and the polynomials that must vanish.
#[derive(Clone, Debug, Default)]
pub struct UnknownSystem {
    pub variables: Vec<String>,
    pub constraints: Vec<Poly>,
}

impl UnknownSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_variable(&mut self, name: impl Into<String>) -> usize {
        self.variables.push(name.into());
        self.variables.len() - 1
    }

    pub fn add_constraint(&mut self, p: Poly) {
        if !p.is_zero() {
            self.constraints.push(p);
        }
    }

    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }
}

/// Candidate values for unknowns that elimination leaves free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub values: Vec<GaussScalar>,
}

impl GridSpec {
    pub fn new(mut values: Vec<GaussScalar>) -> Self {
        values.retain(|v| !v.is_zero() && !v.is_one());
        let mut out = vec![GaussScalar::zero(), GaussScalar::one()];
        for v in values {
            if !out.contains(&v) {
                out.push(v);
            }
        }
        GridSpec { values: out }
    }

    /// Comma-separated canonical scalars; 0 and 1 are always included.
    pub fn parse(s: &str) -> crate::Result<Self> {
        let values = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<crate::Result<Vec<GaussScalar>>>()?;
        Ok(Self::new(values))
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        let names = [
            "-1", "2", "-2", "3", "-3", "1/2", "-1/2", "3/2", "-3/2", "1/4", "-1/4", "3/4", "-3/4", "i", "-i",
        ];
        GridSpec::new(names.iter().map(|s| s.parse().expect("grid literal")).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SearchStatus {
    Complete,
    GridLimited,
}

impl SearchStatus {
    pub fn and(self, other: SearchStatus) -> SearchStatus {
        if self == SearchStatus::Complete && other == SearchStatus::Complete {
            SearchStatus::Complete
        } else {
            SearchStatus::GridLimited
        }
    }
}

impl std::fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SearchStatus::Complete => "complete",
            SearchStatus::GridLimited => "grid-limited",
        })
    }
}

/// A solution in which some unknowns stay free; every other unknown is a polynomial in them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionFamily {
    pub free: Vec<usize>,
    pub values: Vec<Poly>,
}

impl SolutionFamily {
    pub fn is_point(&self) -> bool {
        self.free.is_empty()
    }

    pub fn point(&self) -> Option<Vec<GaussScalar>> {
        self.values.iter().map(Poly::as_constant).collect()
    }

    pub fn specialize(&self, assignment: &[GaussScalar]) -> Vec<GaussScalar> {
        let mut full = vec![GaussScalar::zero(); self.values.len()];
        for (&v, a) in self.free.iter().zip(assignment) {
            full[v] = a.clone();
        }
        self.values.iter().map(|p| p.eval(&full)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub status: SearchStatus,
    pub points: Vec<Vec<GaussScalar>>,
    pub branches: u64,
    pub budget_exhausted: bool,
}

#[derive(Clone, Debug)]
pub struct FamilyOutcome {
    pub status: SearchStatus,
    pub families: Vec<SolutionFamily>,
    pub branches: u64,
    pub budget_exhausted: bool,
}

#[derive(Clone)]
struct Branch {
    values: Vec<Poly>,
    eqs: Vec<Poly>,
    gridded: bool,
}

struct Run<'a> {
    grid: Option<&'a GridSpec>,
    budget: u64,
    branches: u64,
    exhausted: bool,
    inexact: bool,
    families: Vec<(SolutionFamily, bool)>,
}

enum Step {
    Infeasible,
    Split(Vec<Branch>),
    Done,
}

impl Branch {
    fn assign(&mut self, v: usize, p: &Poly) {
        for e in self.eqs.iter_mut() {
            *e = e.substitute(v, p);
        }
        for x in self.values.iter_mut() {
            *x = x.substitute(v, p);
        }
        self.values[v] = p.clone();
    }

    fn with_equation(&self, p: Poly) -> Branch {
        let mut b = self.clone();
        b.eqs.push(p);
        b
    }

    fn with_value(&self, v: usize, c: GaussScalar, gridded: bool) -> Branch {
        let mut b = self.clone();
        b.assign(v, &Poly::constant(c));
        b.gridded |= gridded;
        b
    }

    /// Drops zeros and duplicates; `false` on a nonzero constant.
    fn normalize(&mut self) -> bool {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(self.eqs.len());
        for e in self.eqs.drain(..) {
            if e.is_zero() {
                continue;
            }
            if e.as_constant().is_some() {
                return false;
            }
            let m = e.monic();
            let key = format!("{m}");
            if seen.insert(key) {
                out.push(m);
            }
        }
        out.sort_by_key(|e| (e.degree(), e.len()));
        self.eqs = out;
        true
    }

    fn free_vars(&self) -> Vec<usize> {
        let mut vars = BTreeSet::new();
        for p in &self.values {
            vars.extend(p.vars());
        }
        vars.into_iter().collect()
    }

    /// One round of exact propagation followed by a branching decision.
    fn step(&mut self, run: &mut Run) -> Step {
        loop {
            if !self.normalize() {
                return Step::Infeasible;
            }
            match self.pick_elimination() {
                Some((v, p)) => self.assign(v, &p),
                None => break,
            }
        }
        if self.eqs.is_empty() {
            return Step::Done;
        }
        if let Some(branches) = self.split_on_factor() {
            return Step::Split(branches);
        }
        if let Some(branches) = self.split_on_univariate(run) {
            return Step::Split(branches);
        }
        match run.grid {
            Some(grid) => {
                run.inexact = true;
                let v = self.most_frequent_var();
                Step::Split(grid.values.iter().map(|c| self.with_value(v, c.clone(), true)).collect())
            }
            None => Step::Done,
        }
    }

    /// A variable that one equation determines as a polynomial in the others.
    fn pick_elimination(&self) -> Option<(usize, Poly)> {
        let mut best: Option<(u32, usize, usize, Poly)> = None;
        for e in &self.eqs {
            for v in e.vars() {
                if let Some(c) = e.isolated_linear(v) {
                    let rest = e.sub(&Poly::var(v).scale(&c));
                    let expr = rest.scale(&-c.inv().expect("nonzero"));
                    let key = (expr.degree(), expr.len(), v);
                    if best.as_ref().is_none_or(|b| key < (b.0, b.1, b.2)) {
                        best = Some((key.0, key.1, key.2, expr));
                    }
                }
            }
        }
        best.map(|(_, _, v, p)| (v, p))
    }

    /// `v^k · q = 0` splits into `v = 0` and `q = 0`.
    fn split_on_factor(&self) -> Option<Vec<Branch>> {
        for (i, e) in self.eqs.iter().enumerate() {
            for v in e.vars() {
                let k = e.var_multiplicity(v);
                if k > 0 && !e.is_empty() {
                    let q = e.divide_by_var(v, k);
                    if q.as_constant().is_some_and(|c| c.is_zero()) {
                        continue;
                    }
                    let mut rest = self.clone();
                    rest.eqs.remove(i);
                    let mut out = vec![rest.with_value(v, GaussScalar::zero(), false)];
                    if q.as_constant().is_none() {
                        out.push(rest.with_equation(q));
                    }
                    return Some(out);
                }
            }
        }
        None
    }

    fn split_on_univariate(&self, run: &mut Run) -> Option<Vec<Branch>> {
        for e in &self.eqs {
            let vars = e.vars();
            if vars.len() != 1 {
                continue;
            }
            let v = *vars.iter().next().unwrap();
            let u = e.as_univariate(v)?;
            match solve_univariate(&u) {
                Ok(roots) => {
                    if !roots.unresolved.is_empty() {
                        run.inexact = true;
                    }
                    return Some(roots.roots.into_iter().map(|r| self.with_value(v, r, false)).collect());
                }
                Err(_) => continue,
            }
        }
        None
    }

    fn most_frequent_var(&self) -> usize {
        let mut counts = std::collections::BTreeMap::new();
        for e in &self.eqs {
            for v in e.vars() {
                *counts.entry(v).or_insert(0usize) += 1;
            }
        }
        counts.into_iter().max_by_key(|&(v, c)| (c, std::cmp::Reverse(v))).map(|(v, _)| v).expect("nonempty system")
    }
}

impl Run<'_> {
    fn explore(&mut self, root: Branch) {
        let mut stack = vec![root];
        while let Some(mut b) = stack.pop() {
            if self.branches >= self.budget {
                self.exhausted = true;
                return;
            }
            self.branches += 1;
            match b.step(self) {
                Step::Infeasible => {}
                Step::Split(children) => stack.extend(children.into_iter().rev()),
                Step::Done => {
                    if !b.eqs.is_empty() {
                        self.inexact = true;
                        continue;
                    }
                    let free = b.free_vars();
                    let family = SolutionFamily { free, values: b.values.clone() };
                    self.families.push((family, b.gridded));
                }
            }
        }
    }
}

fn initial(system: &UnknownSystem) -> Branch {
    Branch {
        values: (0..system.len()).map(Poly::var).collect(),
        eqs: system.constraints.clone(),
        gridded: false,
    }
}

/// Solutions as families; residual free unknowns are left symbolic.
pub fn solve_families(system: &UnknownSystem, budget: u64) -> FamilyOutcome {
    let mut run = Run { grid: None, budget, branches: 0, exhausted: false, inexact: false, families: Vec::new() };
    run.explore(initial(system));
    let mut families: Vec<SolutionFamily> = Vec::new();
    for (f, _) in run.families {
        if !families.contains(&f) {
            families.push(f);
        }
    }
    let status = if run.exhausted || run.inexact { SearchStatus::GridLimited } else { SearchStatus::Complete };
    FamilyOutcome { status, families, branches: run.branches, budget_exhausted: run.exhausted }
}

/// Solution points; residual free unknowns draw their values from `grid`.
pub fn solve(system: &UnknownSystem, grid: &GridSpec, budget: u64) -> SolveOutcome {
    let mut run = Run { grid: Some(grid), budget, branches: 0, exhausted: false, inexact: false, families: Vec::new() };
    let mut pending = vec![initial(system)];
    let mut points: Vec<Vec<GaussScalar>> = Vec::new();
    while let Some(root) = pending.pop() {
        run.explore(root);
        for (f, gridded) in std::mem::take(&mut run.families) {
            if gridded {
                run.inexact = true;
            }
            match f.point() {
                Some(p) => {
                    if !points.contains(&p) {
                        points.push(p);
                    }
                }
                None => {
                    run.inexact = true;
                    let v = f.free[0];
                    let b = Branch { values: f.values.clone(), eqs: Vec::new(), gridded: true };
                    for c in grid.values.iter().rev() {
                        pending.push(b.with_value(v, c.clone(), true));
                    }
                }
            }
        }
        if run.exhausted {
            break;
        }
    }
    points.sort();
    let status = if run.exhausted || run.inexact { SearchStatus::GridLimited } else { SearchStatus::Complete };
    SolveOutcome { status, points, branches: run.branches, budget_exhausted: run.exhausted }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::sc;

    fn v(i: usize) -> Poly {
        Poly::var(i)
    }
    fn c(s: &str) -> Poly {
        Poly::constant(sc(s))
    }

    fn system(n: usize, eqs: Vec<Poly>) -> UnknownSystem {
        let mut s = UnknownSystem::new();
        for i in 0..n {
            s.add_variable(format!("u{i}"));
        }
        for e in eqs {
            s.add_constraint(e);
        }
        s
    }

    #[test]
    fn linear_then_quadratic() {
        // u0 + u1 = 1, u0·u1 = 0
        let s = system(2, vec![v(0).add(&v(1)).sub(&c("1")), v(0).mul(&v(1))]);
        let out = solve(&s, &GridSpec::default(), 1000);
        assert_eq!(out.status, SearchStatus::Complete);
        assert_eq!(out.points, vec![vec![sc("0"), sc("1")], vec![sc("1"), sc("0")]]);
    }

    #[test]
    fn contradiction_is_complete_and_empty() {
        // u0·u1 = 0 with u0 = u1 = 1
        let s = system(2, vec![v(0).mul(&v(1)), v(0).sub(&c("1")), v(1).sub(&c("1"))]);
        let out = solve(&s, &GridSpec::default(), 1000);
        assert_eq!(out.status, SearchStatus::Complete);
        assert!(out.points.is_empty());
    }

    #[test]
    fn free_unknowns_use_the_grid() {
        let s = system(2, vec![v(0).sub(&v(1).mul(&v(1)))]);
        let fams = solve_families(&s, 100);
        assert_eq!(fams.status, SearchStatus::Complete);
        assert_eq!(fams.families.len(), 1);
        assert_eq!(fams.families[0].free, vec![1]);
        let out = solve(&s, &GridSpec::default(), 1000);
        assert_eq!(out.status, SearchStatus::GridLimited);
        assert!(out.points.contains(&vec![sc("4"), sc("-2")]));
        assert!(out.points.contains(&vec![sc("-1"), sc("i")]));
    }

    #[test]
    fn gaussian_roots_are_found() {
        let s = system(1, vec![v(0).mul(&v(0)).add(&c("1"))]);
        let out = solve(&s, &GridSpec::default(), 100);
        assert_eq!(out.status, SearchStatus::Complete);
        assert_eq!(out.points.len(), 2);
    }

    #[test]
    fn irrational_roots_are_not_complete() {
        let s = system(1, vec![v(0).mul(&v(0)).sub(&c("2"))]);
        let out = solve(&s, &GridSpec::default(), 100);
        assert_eq!(out.status, SearchStatus::GridLimited);
        assert!(out.points.is_empty());
    }

    #[test]
    fn budget_poisons_status() {
        let s = system(3, vec![v(0).mul(&v(1)).add(&v(1).mul(&v(2))).add(&v(0).mul(&v(2))).sub(&c("1"))]);
        let out = solve(&s, &GridSpec::default(), 3);
        assert!(out.budget_exhausted);
        assert_eq!(out.status, SearchStatus::GridLimited);
    }

    #[test]
    fn grid_parsing_keeps_zero_and_one() {
        let g = GridSpec::parse("2, -1/2").unwrap();
        assert_eq!(g.values, vec![sc("0"), sc("1"), sc("2"), sc("-1/2")]);
        assert!(GridSpec::parse("2,x").is_err());
    }
}

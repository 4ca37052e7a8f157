//! Exact rational linear algebra and a small LP feasibility engine.
//!
//! Everything in this module is arbitrary-precision: determinant signs are
//! decided by fraction-free Bareiss elimination on an integer lift of the
//! matrix, and linear programs are solved by an exact simplex method with
//! Bland's pivoting rule, so all verdicts are free of rounding.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};

use crate::error::Error;

/// Exact rational scalar, always stored in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse a rational from a decimal integer or `"p/q"` string.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let make_err = || Error::Parse(format!("invalid rational literal: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().map_err(|_| make_err())?;
        let den: BigInt = q.trim().parse().map_err(|_| make_err())?;
        if den.is_zero() {
            return Err(make_err());
        }
        Ok(Rat::new(num, den))
    } else {
        let num: BigInt = s.parse().map_err(|_| make_err())?;
        Ok(Rat::from_integer(num))
    }
}

/// Render a rational as a decimal integer or `"p/q"` string.
pub fn rat_to_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Dense rational vector with immutable length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RVec {
    data: Vec<Rat>,
}

impl RVec {
    pub fn new(data: Vec<Rat>) -> Self {
        RVec { data }
    }

    pub fn zeros(n: usize) -> Self {
        RVec { data: vec![Rat::zero(); n] }
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        RVec { data: entries.iter().map(|&x| rat(x)).collect() }
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.data[i] = Rat::one();
        v
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.data.iter()
    }

    pub fn as_slice(&self) -> &[Rat] {
        &self.data
    }

    pub fn dot(&self, other: &RVec) -> Rat {
        assert_eq!(self.len(), other.len(), "dot of mismatched lengths");
        self.data
            .iter()
            .zip(&other.data)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn add(&self, other: &RVec) -> RVec {
        assert_eq!(self.len(), other.len());
        RVec::new(self.iter().zip(other.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RVec) -> RVec {
        assert_eq!(self.len(), other.len());
        RVec::new(self.iter().zip(other.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rat) -> RVec {
        RVec::new(self.iter().map(|a| a * c).collect())
    }

    /// First `k` coordinates.
    pub fn truncate(&self, k: usize) -> RVec {
        RVec::new(self.data[..k].to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl std::ops::Index<usize> for RVec {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.data[i]
    }
}

impl fmt::Debug for RVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", rat_to_string(x))?;
        }
        write!(f, "]")
    }
}

/// Dense rational matrix, row-major, with immutable shape.
#[derive(Clone, PartialEq, Eq)]
pub struct RMat {
    nrows: usize,
    ncols: usize,
    data: Vec<Rat>,
}

impl RMat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        RMat { nrows, ncols, data: vec![Rat::zero(); nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        RMat { nrows, ncols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: &[RVec]) -> Self {
        let ncols = cols.len();
        let nrows = cols.first().map_or(0, |c| c.len());
        assert!(cols.iter().all(|c| c.len() == nrows), "ragged columns");
        let mut m = Self::zeros(nrows, ncols);
        for (j, c) in cols.iter().enumerate() {
            for i in 0..nrows {
                m.set(i, j, c[i].clone());
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> RVec {
        RVec::new(self.data[i * self.ncols..(i + 1) * self.ncols].to_vec())
    }

    pub fn col(&self, j: usize) -> RVec {
        RVec::new((0..self.nrows).map(|i| self.at(i, j).clone()).collect())
    }

    pub fn transpose(&self) -> RMat {
        let mut t = RMat::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &RVec) -> RVec {
        assert_eq!(self.ncols, v.len(), "matrix-vector shape mismatch");
        RVec::new((0..self.nrows).map(|i| self.row(i).dot(v)).collect())
    }

    pub fn mul_mat(&self, other: &RMat) -> RMat {
        assert_eq!(self.ncols, other.nrows, "matrix-matrix shape mismatch");
        let mut out = RMat::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for j in 0..other.ncols {
                let mut acc = Rat::zero();
                for k in 0..self.ncols {
                    acc += self.at(i, k) * other.at(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Inverse via Gauss-Jordan, `None` if singular.
    pub fn inverse(&self) -> Option<RMat> {
        if self.nrows != self.ncols {
            return None;
        }
        let n = self.nrows;
        let mut a = self.clone();
        let mut inv = RMat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.at(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let (x, y) = (a.at(pivot, j).clone(), a.at(col, j).clone());
                    a.set(pivot, j, y);
                    a.set(col, j, x);
                    let (x, y) = (inv.at(pivot, j).clone(), inv.at(col, j).clone());
                    inv.set(pivot, j, y);
                    inv.set(col, j, x);
                }
            }
            let p = a.at(col, col).clone();
            for j in 0..n {
                a.set(col, j, a.at(col, j) / &p);
                inv.set(col, j, inv.at(col, j) / &p);
            }
            for r in 0..n {
                if r != col && !a.at(r, col).is_zero() {
                    let f = a.at(r, col).clone();
                    for j in 0..n {
                        let v = a.at(r, j) - &f * a.at(col, j);
                        a.set(r, j, v);
                        let v = inv.at(r, j) - &f * inv.at(col, j);
                        inv.set(r, j, v);
                    }
                }
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for RMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RMat {}x{} [", self.nrows, self.ncols)?;
        for i in 0..self.nrows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Lift rows to integers by clearing denominators row by row.
/// Row scalings are positive, so the determinant sign is unchanged.
fn integer_lift(m: &RMat) -> Vec<Vec<BigInt>> {
    let mut out = Vec::with_capacity(m.nrows);
    for i in 0..m.nrows {
        let mut lcm = BigInt::one();
        for j in 0..m.ncols {
            let den = m.at(i, j).denom();
            lcm = num::integer::lcm(lcm, den.clone());
        }
        out.push(
            (0..m.ncols)
                .map(|j| {
                    let e = m.at(i, j);
                    e.numer() * (&lcm / e.denom())
                })
                .collect(),
        );
    }
    out
}

fn bigint_sign(x: &BigInt) -> i32 {
    match x.sign() {
        num::bigint::Sign::Minus => -1,
        num::bigint::Sign::NoSign => 0,
        num::bigint::Sign::Plus => 1,
    }
}

/// Exact determinant sign via fraction-free Bareiss elimination.
pub fn det_sign(m: &RMat) -> Result<i32, Error> {
    if m.nrows != m.ncols {
        return Err(Error::Dimension(format!(
            "det_sign needs a square matrix, got {}x{}",
            m.nrows, m.ncols
        )));
    }
    let n = m.nrows;
    if n == 0 {
        return Ok(1);
    }
    let mut a = integer_lift(m);
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = match (k..n).find(|&r| !a[r][k].is_zero()) {
            Some(p) => p,
            None => return Ok(0),
        };
        if pivot != k {
            a.swap(pivot, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(sign * bigint_sign(&a[n - 1][n - 1]))
}

/// Exact determinant value.
pub fn det(m: &RMat) -> Result<Rat, Error> {
    if m.nrows != m.ncols {
        return Err(Error::Dimension(format!(
            "det needs a square matrix, got {}x{}",
            m.nrows, m.ncols
        )));
    }
    let n = m.nrows;
    if n == 0 {
        return Ok(Rat::one());
    }
    // Rational Gaussian elimination; fine at the matrix sizes used here.
    let mut a: Vec<Vec<Rat>> = (0..n).map(|i| (0..n).map(|j| m.at(i, j).clone()).collect()).collect();
    let mut result = Rat::one();
    for k in 0..n {
        let pivot = match (k..n).find(|&r| !a[r][k].is_zero()) {
            Some(p) => p,
            None => return Ok(Rat::zero()),
        };
        if pivot != k {
            a.swap(pivot, k);
            result = -result;
        }
        let p = a[k][k].clone();
        result *= &p;
        for i in k + 1..n {
            if !a[i][k].is_zero() {
                let f = &a[i][k] / &p;
                for j in k + 1..n {
                    let v = &a[i][j] - &f * &a[k][j];
                    a[i][j] = v;
                }
                a[i][k] = Rat::zero();
            }
        }
    }
    Ok(result)
}

/// Exact rank over the rationals.
pub fn rank(m: &RMat) -> usize {
    let mut a = integer_lift(m);
    let (nr, nc) = (m.nrows, m.ncols);
    let mut row = 0usize;
    for col in 0..nc {
        if row == nr {
            break;
        }
        let pivot = match (row..nr).find(|&r| !a[r][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        a.swap(pivot, row);
        for i in row + 1..nr {
            if !a[i][col].is_zero() {
                let (pa, pb) = (a[row][col].clone(), a[i][col].clone());
                for j in col..nc {
                    let v = &a[i][j] * &pa - &a[row][j] * &pb;
                    a[i][j] = v;
                }
            }
        }
        row += 1;
    }
    row
}

/// Reduced row echelon form over the rationals; returns pivot columns.
fn rref(a: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let nr = a.len();
    let nc = if nr == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut row = 0usize;
    for col in 0..nc {
        if row == nr {
            break;
        }
        let pivot = match (row..nr).find(|&r| !a[r][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        a.swap(pivot, row);
        let p = a[row][col].clone();
        for j in 0..nc {
            let v = &a[row][j] / &p;
            a[row][j] = v;
        }
        for i in 0..nr {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..nc {
                    let v = &a[i][j] - &f * &a[row][j];
                    a[i][j] = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Solve `m x = b` exactly; `None` if inconsistent.
/// Free variables are set to zero, so the answer is deterministic.
pub fn solve(m: &RMat, b: &RVec) -> Option<RVec> {
    assert_eq!(m.nrows, b.len(), "solve: rows(m) must equal len(b)");
    let nc = m.ncols;
    let mut aug: Vec<Vec<Rat>> = (0..m.nrows)
        .map(|i| {
            let mut r: Vec<Rat> = (0..nc).map(|j| m.at(i, j).clone()).collect();
            r.push(b[i].clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&nc) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![Rat::zero(); nc];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = aug[r][nc].clone();
    }
    Some(RVec::new(x))
}

/// Basis of the kernel of `m`.
pub fn kernel(m: &RMat) -> Vec<RVec> {
    let nc = m.ncols;
    let mut a: Vec<Vec<Rat>> =
        (0..m.nrows).map(|i| (0..nc).map(|j| m.at(i, j).clone()).collect()).collect();
    let pivots = rref(&mut a);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..nc {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); nc];
        v[free] = Rat::one();
        for (r, &col) in pivots.iter().enumerate() {
            v[col] = -a[r][free].clone();
        }
        basis.push(RVec::new(v));
    }
    basis
}

/// Normal direction of the affine hyperplane spanned by `points` in
/// dimension `ambient`; `None` when the points do not span one.
pub fn affine_hyperplane_normal(points: &[RVec], ambient: usize) -> Option<RVec> {
    if ambient == 0 || points.is_empty() {
        return None;
    }
    if points.len() == 1 {
        return if ambient == 1 { Some(RVec::unit(1, 0)) } else { None };
    }
    let rows: Vec<Vec<Rat>> =
        points[1..].iter().map(|p| p.sub(&points[0]).iter().cloned().collect()).collect();
    let mut basis = kernel(&RMat::from_rows(rows));
    if basis.len() == 1 {
        basis.pop()
    } else {
        None
    }
}

/// A linear constraint `coeffs . x REL rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: RVec,
    pub rel: Rel,
    pub rhs: Rat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Lt,
    Eq,
}

impl Constraint {
    pub fn le(coeffs: RVec, rhs: Rat) -> Self {
        Constraint { coeffs, rel: Rel::Le, rhs }
    }
    pub fn lt(coeffs: RVec, rhs: Rat) -> Self {
        Constraint { coeffs, rel: Rel::Lt, rhs }
    }
    pub fn eq(coeffs: RVec, rhs: Rat) -> Self {
        Constraint { coeffs, rel: Rel::Eq, rhs }
    }

    pub fn satisfied_by(&self, x: &RVec) -> bool {
        let lhs = self.coeffs.dot(x);
        match self.rel {
            Rel::Le => lhs <= self.rhs,
            Rel::Lt => lhs < self.rhs,
            Rel::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(RVec),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&RVec> {
        match self {
            Feasibility::Feasible(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }
}

/// Dense simplex tableau over the rationals, pivoting by Bland's rule.
struct Tableau {
    // rows: one per constraint, columns: variables then rhs
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    nvars: usize,
}

impl Tableau {
    /// Pivot so that `col` becomes basic in `row`.
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..self.rows.len() {
            if r != row && !self.rows[r][col].is_zero() {
                let f = self.rows[r][col].clone();
                for j in 0..self.rows[r].len() {
                    let v = &self.rows[r][j] - &f * &self.rows[row][j];
                    self.rows[r][j] = v;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Maximize `obj . x` over the current feasible tableau.
    /// Returns false if unbounded.
    fn maximize(&mut self, obj: &[Rat]) -> bool {
        let ncols = self.nvars + 1;
        loop {
            // reduced costs: c_j - c_B . column_j
            let mut entering = None;
            for j in 0..self.nvars {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut red = obj[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    red -= &obj[b] * &self.rows[r][j];
                }
                if red > Rat::zero() {
                    entering = Some(j); // Bland: first improving index
                    break;
                }
            }
            let col = match entering {
                Some(c) => c,
                None => return true,
            };
            let mut leaving: Option<(usize, Rat)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if *a > Rat::zero() {
                    let ratio = &self.rows[r][ncols - 1] / a;
                    let better = match &leaving {
                        None => true,
                        Some((lr, lratio)) => {
                            ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leaving = Some((r, ratio));
                    }
                }
            }
            match leaving {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }

    fn value(&self, obj: &[Rat]) -> Rat {
        let ncols = self.nvars + 1;
        let mut v = Rat::zero();
        for (r, &b) in self.basis.iter().enumerate() {
            v += &obj[b] * &self.rows[r][ncols - 1];
        }
        v
    }

    fn solution(&self) -> Vec<Rat> {
        let ncols = self.nvars + 1;
        let mut x = vec![Rat::zero(); self.nvars];
        for (r, &b) in self.basis.iter().enumerate() {
            x[b] = self.rows[r][ncols - 1].clone();
        }
        x
    }
}

/// Exact feasibility of a system of weak, strict and equality constraints
/// on `n` free real variables.
///
/// Strict inequalities are handled by a shared slack variable `g`: the weak
/// system with `coeffs.x + g <= rhs` is solved maximizing `g` (capped at 1),
/// and the strict system is feasible exactly when the optimum is positive.
pub fn lp_feasible(n: usize, constraints: &[Constraint]) -> Feasibility {
    for c in constraints {
        assert_eq!(c.coeffs.len(), n, "constraint arity mismatch");
    }
    let has_strict = constraints.iter().any(|c| c.rel == Rel::Lt);

    // variables: x_i = u_i - w_i (2n), gap g (if strict), slacks, artificials.
    let base = 2 * n + usize::from(has_strict);
    let gap_idx = 2 * n;
    let mut rows: Vec<(Vec<Rat>, Rat)> = Vec::new();
    let mut slack_count = 0usize;
    for c in constraints {
        let mut row = vec![Rat::zero(); base];
        for i in 0..n {
            row[2 * i] = c.coeffs[i].clone();
            row[2 * i + 1] = -c.coeffs[i].clone();
        }
        match c.rel {
            Rel::Eq => {}
            Rel::Le => slack_count += 1,
            Rel::Lt => {
                row[gap_idx] = Rat::one();
                slack_count += 1;
            }
        }
        rows.push((row, c.rhs.clone()));
    }
    if has_strict {
        // g <= 1 keeps phase 2 bounded
        let row = vec![Rat::zero(); base];
        rows.push((row, Rat::one()));
        slack_count += 1;
    }

    let nslack = slack_count;
    let m = rows.len();
    let nvars = base + nslack + m; // artificials at the end
    let mut tab_rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut slack_at = 0usize;
    for (ri, (row, rhs)) in rows.iter().enumerate() {
        let mut full = vec![Rat::zero(); nvars + 1];
        full[..base].clone_from_slice(row);
        let needs_slack = if ri < constraints.len() {
            constraints[ri].rel != Rel::Eq
        } else {
            true // the g <= 1 cap row
        };
        if ri == constraints.len() && has_strict {
            full[gap_idx] = Rat::one();
        }
        if needs_slack {
            full[base + slack_at] = Rat::one();
            slack_at += 1;
        }
        let mut rhs = rhs.clone();
        if rhs < Rat::zero() {
            for v in full.iter_mut() {
                *v = -v.clone();
            }
            rhs = -rhs;
        }
        full[nvars] = rhs;
        full[base + nslack + ri] = Rat::one();
        basis.push(base + nslack + ri);
        tab_rows.push(full);
    }

    let mut tab = Tableau { rows: tab_rows, basis, nvars };

    // phase 1: drive artificials to zero
    let mut phase1 = vec![Rat::zero(); nvars];
    for j in base + nslack..nvars {
        phase1[j] = -Rat::one();
    }
    tab.maximize(&phase1);
    if tab.value(&phase1) < Rat::zero() {
        return Feasibility::Infeasible;
    }
    // pivot lingering artificials out of the basis where possible
    for r in 0..tab.basis.len() {
        if tab.basis[r] >= base + nslack {
            if let Some(col) = (0..base + nslack).find(|&j| !tab.rows[r][j].is_zero()) {
                tab.pivot(r, col);
            }
        }
    }

    if has_strict {
        // phase 2: maximize the gap
        let mut obj = vec![Rat::zero(); nvars];
        obj[gap_idx] = Rat::one();
        // forbid re-entering artificials by treating them as cost -1
        for j in base + nslack..nvars {
            obj[j] = -rat(1_000_000);
        }
        tab.maximize(&obj);
        let sol = tab.solution();
        if sol[gap_idx] <= Rat::zero() {
            return Feasibility::Infeasible;
        }
        let x = RVec::new((0..n).map(|i| &sol[2 * i] - &sol[2 * i + 1]).collect());
        debug_assert!(constraints.iter().all(|c| c.satisfied_by(&x)));
        return Feasibility::Feasible(x);
    }

    let sol = tab.solution();
    let x = RVec::new((0..n).map(|i| &sol[2 * i] - &sol[2 * i + 1]).collect());
    debug_assert!(constraints.iter().all(|c| c.satisfied_by(&x)));
    Feasibility::Feasible(x)
}

//! Exact univariate polynomial algebra over the rationals, matrices of
//! polynomials, and exact rational linear algebra.
//!
//! [`Poly`] stores dense coefficients in ascending degree with no trailing
//! zeros; the zero polynomial is the empty sequence and its degree is `None`.
//! [`solve_exact`] performs exact Gaussian elimination and distinguishes
//! unique / inconsistent / underdetermined outcomes, which downstream code
//! maps to "basis insufficient" vs "basis dependent".

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::{format_rat, parse_rat, rat, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("exact division failed: nonzero remainder")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("cannot parse polynomial coefficient {0:?}")]
    Parse(String),
}

/// Dense univariate polynomial in `t` over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Rat::one())
    }

    /// Exact quotient; errors when the remainder is nonzero.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly, PolyError> {
        if d.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let dd = d.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let lead = d.coeffs[dd].clone();
        if rem.len() < dd + 1 {
            return Err(PolyError::NotDivisible);
        }
        let qlen = rem.len() - dd;
        let mut quot = vec![Rat::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (k, dc) in d.coeffs.iter().enumerate() {
                    let v = &c * dc;
                    rem[i + k] = &rem[i + k] - v;
                }
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(PolyError::NotDivisible);
        }
        Ok(Poly::from_coeffs(quot))
    }

    /// Serial form: array of canonical rational strings, ascending degree.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rat).collect()
    }

    pub fn from_strings(strings: &[String]) -> Result<Poly, PolyError> {
        let coeffs = strings
            .iter()
            .map(|s| parse_rat(s).map_err(|_| PolyError::Parse(s.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = format_rat(c);
            if first {
                match k {
                    0 => write!(f, "{cs}")?,
                    _ => write!(f, "({cs}){}", tpow(k))?,
                }
                first = false;
            } else if cs.starts_with('-') {
                match k {
                    0 => write!(f, " - {}", &cs[1..])?,
                    _ => write!(f, " - ({}){}", &cs[1..], tpow(k))?,
                }
            } else {
                match k {
                    0 => write!(f, " + {cs}")?,
                    _ => write!(f, " + ({cs}){}", tpow(k))?,
                }
            }
        }
        Ok(())
    }
}

fn tpow(k: usize) -> String {
    if k == 1 {
        "t".to_string()
    } else {
        format!("t^{k}")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

/// Rectangular matrix with polynomial entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self, PolyError> {
        if entries.len() != rows * cols {
            return Err(PolyError::ShapeMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = PolyMatrix::zeros(size, size);
        for i in 0..size {
            *m.at_mut(i, i) = Poly::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Poly {
        &mut self.entries[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if self.cols != rhs.rows {
            return Err(PolyError::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = PolyMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = Poly::zero();
                for m in 0..self.cols {
                    acc = &acc + &(self.at(r, m) * rhs.at(m, c));
                }
                *out.at_mut(r, c) = acc;
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(PolyError::ShapeMismatch("add".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(PolyError::ShapeMismatch("sub".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Multiply every entry by `t` (left side of the recurrence identity).
    pub fn mul_by_t(&self) -> PolyMatrix {
        let t = Poly::monomial(Rat::one(), 1);
        self.map(|p| p * &t)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn eval(&self, x: &Rat) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| p.eval(x)).collect(),
        }
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    /// Adjugate and determinant by cofactor expansion; `A * adj = det * I`.
    /// Sizes in this artifact are at most 3.
    pub fn adjugate_det(&self) -> Result<(PolyMatrix, Poly), PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NotSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Err(PolyError::NotSquare);
        }
        if n == 1 {
            return Ok((PolyMatrix::identity(1), self.at(0, 0).clone()));
        }
        let det = self.determinant()?;
        let mut adj = PolyMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let minor = self.minor(r, c).determinant()?;
                let cof = if (r + c) % 2 == 0 { minor } else { minor.neg() };
                // adjugate is the transposed cofactor matrix
                *adj.at_mut(c, r) = cof;
            }
        }
        Ok((adj, det))
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> PolyMatrix {
        let n = self.rows;
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for r in 0..n {
            if r == skip_r {
                continue;
            }
            for c in 0..n {
                if c == skip_c {
                    continue;
                }
                entries.push(self.at(r, c).clone());
            }
        }
        PolyMatrix {
            rows: n - 1,
            cols: n - 1,
            entries,
        }
    }

    fn determinant(&self) -> Result<Poly, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NotSquare);
        }
        match self.rows {
            0 => Ok(Poly::one()),
            1 => Ok(self.at(0, 0).clone()),
            n => {
                let mut det = Poly::zero();
                for c in 0..n {
                    if self.at(0, c).is_zero() {
                        continue;
                    }
                    let term = self.at(0, c) * &self.minor(0, c).determinant()?;
                    det = if c % 2 == 0 { &det + &term } else { &det - &term };
                }
                Ok(det)
            }
        }
    }

    /// Nested serial form: rows of columns of ascending coefficient strings.
    pub fn to_strings(&self) -> Vec<Vec<Vec<String>>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c).to_strings()).collect())
            .collect()
    }

    pub fn from_strings(rows: &[Vec<Vec<String>>]) -> Result<PolyMatrix, PolyError> {
        let nrows = rows.len();
        if nrows == 0 {
            return Err(PolyError::ShapeMismatch("empty matrix".into()));
        }
        let ncols = rows[0].len();
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(PolyError::ShapeMismatch("ragged rows".into()));
            }
            for cell in row {
                entries.push(Poly::from_strings(cell)?);
            }
        }
        PolyMatrix::new(nrows, ncols, entries)
    }
}

/// Constant rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self, PolyError> {
        if entries.len() != rows * cols {
            return Err(PolyError::ShapeMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(RatMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = RatMatrix::zeros(size, size);
        for i in 0..size {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.entries[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn add(&self, rhs: &RatMatrix) -> Result<RatMatrix, PolyError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(PolyError::ShapeMismatch("add".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn row_sums(&self) -> Vec<Rat> {
        (0..self.rows)
            .map(|r| (0..self.cols).fold(Rat::zero(), |acc, c| acc + self.at(r, c)))
            .collect()
    }

    /// Left action of a constant matrix on a polynomial matrix.
    pub fn mul_poly(&self, rhs: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if self.cols != rhs.rows() {
            return Err(PolyError::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows,
                self.cols,
                rhs.rows(),
                rhs.cols()
            )));
        }
        let mut out = PolyMatrix::zeros(self.rows, rhs.cols());
        for r in 0..self.rows {
            for c in 0..rhs.cols() {
                let mut acc = Poly::zero();
                for m in 0..self.cols {
                    acc = &acc + &rhs.at(m, c).scale(self.at(r, m));
                }
                *out.at_mut(r, c) = acc;
            }
        }
        Ok(out)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| format_rat(self.at(r, c))).collect())
            .collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<RatMatrix, PolyError> {
        let nrows = rows.len();
        if nrows == 0 {
            return Err(PolyError::ShapeMismatch("empty matrix".into()));
        }
        let ncols = rows[0].len();
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(PolyError::ShapeMismatch("ragged rows".into()));
            }
            for cell in row {
                entries.push(parse_rat(cell).map_err(|_| PolyError::Parse(cell.clone()))?);
            }
        }
        RatMatrix::new(nrows, ncols, entries)
    }
}

/// Outcome of an exact linear solve `M x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Unique(Vec<Rat>),
    /// An eliminated row reduced to `0 = nonzero`; the index refers to the
    /// original row order.
    Inconsistent { witness_row: usize },
    Underdetermined { rank: usize, free: usize },
}

/// Exact Gaussian elimination over the rationals. The outcome is independent
/// of pivot order because the arithmetic is exact.
pub fn solve_exact(m: &RatMatrix, b: &[Rat]) -> Result<SolveOutcome, PolyError> {
    if m.rows() != b.len() {
        return Err(PolyError::ShapeMismatch(format!(
            "{} rows vs rhs length {}",
            m.rows(),
            b.len()
        )));
    }
    let nrows = m.rows();
    let ncols = m.cols();
    // augmented rows, remembering original indices for witnesses
    let mut aug: Vec<(usize, Vec<Rat>)> = (0..nrows)
        .map(|r| {
            let mut row: Vec<Rat> = (0..ncols).map(|c| m.at(r, c).clone()).collect();
            row.push(b[r].clone());
            (r, row)
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..ncols {
        let Some(sel) = (pivot_row..nrows).find(|&r| !aug[r].1[col].is_zero()) else {
            continue;
        };
        aug.swap(pivot_row, sel);
        let pivot = aug[pivot_row].1[col].clone();
        for c in col..=ncols {
            let v = &aug[pivot_row].1[c] / &pivot;
            aug[pivot_row].1[c] = v;
        }
        for r in 0..nrows {
            if r == pivot_row || aug[r].1[col].is_zero() {
                continue;
            }
            let factor = aug[r].1[col].clone();
            for c in col..=ncols {
                let v = &aug[r].1[c] - &factor * &aug[pivot_row].1[c];
                aug[r].1[c] = v;
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == nrows {
            break;
        }
    }
    let rank = pivot_cols.len();

    for (orig, row) in aug.iter().skip(rank) {
        if !row[ncols].is_zero() {
            return Ok(SolveOutcome::Inconsistent { witness_row: *orig });
        }
        debug_assert!(row[..ncols].iter().all(Rat::is_zero));
    }

    if rank < ncols {
        return Ok(SolveOutcome::Underdetermined {
            rank,
            free: ncols - rank,
        });
    }

    let mut x = vec![Rat::zero(); ncols];
    for (i, &col) in pivot_cols.iter().enumerate() {
        x[col] = aug[i].1[ncols].clone();
    }
    Ok(SolveOutcome::Unique(x))
}

//! Exact integer and rational linear algebra.
//!
//! Everything downstream (polytopes, width certificates, theorem verifiers)
//! is built on the types here: arbitrary-precision integers (`Int`),
//! rationals in lowest terms (`Rat`), and thin vector/matrix wrappers with
//! the lattice operations the geometry needs — Hermite normal form with a
//! unimodular transformation witness, integer kernels, unimodularity tests,
//! and primitive parts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision integer.
pub type Int = BigInt;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (maintained by `num_rational`).
pub type Rat = BigRational;

/// Shorthand constructors used pervasively in tests and instance builders.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Integer row vector. Invariant: nonempty.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IntVec(Vec<Int>);

impl IntVec {
    pub fn new(entries: Vec<Int>) -> Self {
        assert!(!entries.is_empty(), "IntVec must be nonempty");
        IntVec(entries)
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Self::new(entries.iter().map(|&e| Int::from(e)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![Int::zero(); dim])
    }

    /// Standard basis vector `e_i` in the given dimension.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![Int::zero(); dim];
        v[i] = Int::one();
        Self::new(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Int> {
        self.0.iter()
    }

    pub fn entries(&self) -> &[Int] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }

    pub fn dot(&self, other: &IntVec) -> Int {
        assert_eq!(self.len(), other.len());
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn dot_rat(&self, other: &RatVec) -> Rat {
        assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| Rat::from_integer(a.clone()) * b)
            .sum()
    }

    pub fn add(&self, other: &IntVec) -> IntVec {
        assert_eq!(self.len(), other.len());
        IntVec(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &IntVec) -> IntVec {
        assert_eq!(self.len(), other.len());
        IntVec(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> IntVec {
        IntVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &Int) -> IntVec {
        IntVec(self.0.iter().map(|a| a * k).collect())
    }

    /// Max-norm (largest absolute entry).
    pub fn linf_norm(&self) -> Int {
        self.0.iter().map(|e| e.abs()).max().expect("nonempty")
    }

    /// Greatest common divisor of the entries (nonnegative; 0 for the zero
    /// vector).
    pub fn content(&self) -> Int {
        self.0.iter().fold(Int::zero(), |acc, e| acc.gcd(e))
    }

    /// Writes `v = c * p` with `c > 0` integer and `p` primitive (entry gcd
    /// 1, sign pattern of `v` preserved). Errors on the zero vector.
    pub fn primitive_part(&self) -> Result<(IntVec, Int)> {
        let c = self.content();
        if c.is_zero() {
            return Err(Error::ZeroVector);
        }
        let p = IntVec(self.0.iter().map(|e| e / &c).collect());
        Ok((p, c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn to_rat(&self) -> RatVec {
        RatVec(
            self.0
                .iter()
                .map(|e| Rat::from_integer(e.clone()))
                .collect(),
        )
    }

    /// Canonical sign representative of the pair `{v, -v}`: the one whose
    /// first nonzero entry is positive.
    pub fn sign_canonical(&self) -> IntVec {
        match self.0.iter().find(|e| !e.is_zero()) {
            Some(e) if e.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }
}

impl std::ops::Index<usize> for IntVec {
    type Output = Int;
    fn index(&self, i: usize) -> &Int {
        &self.0[i]
    }
}

impl std::fmt::Display for IntVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Rational row vector. Invariant: nonempty.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RatVec(Vec<Rat>);

impl RatVec {
    pub fn new(entries: Vec<Rat>) -> Self {
        assert!(!entries.is_empty(), "RatVec must be nonempty");
        RatVec(entries)
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Self::new(entries.iter().map(|&e| rat_int(e)).collect())
    }

    pub fn from_frac(entries: &[(i64, i64)]) -> Self {
        Self::new(entries.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![Rat::zero(); dim])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }

    pub fn dot(&self, other: &RatVec) -> Rat {
        assert_eq!(self.len(), other.len());
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &RatVec) -> RatVec {
        assert_eq!(self.len(), other.len());
        RatVec(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &RatVec) -> RatVec {
        assert_eq!(self.len(), other.len());
        RatVec(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> RatVec {
        RatVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &Rat) -> RatVec {
        RatVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|e| e.is_integer())
    }

    /// Exact conversion to an integer vector; errors if any entry has a
    /// nontrivial denominator.
    pub fn to_int(&self) -> Result<IntVec> {
        if !self.is_integral() {
            return Err(Error::Parse(format!("vector {self} is not integral")));
        }
        Ok(IntVec(self.0.iter().map(|e| e.to_integer()).collect()))
    }

    /// Writes `v = lambda * p` with `lambda` a positive rational and `p`
    /// primitive integer (sign pattern of `v` preserved). Errors on zero.
    pub fn primitive_direction(&self) -> Result<(IntVec, Rat)> {
        let t = self.0.iter().fold(Int::one(), |acc, e| acc.lcm(e.denom()));
        let scaled = IntVec(
            self.0
                .iter()
                .map(|e| (e * Rat::from_integer(t.clone())).to_integer())
                .collect(),
        );
        let (p, c) = scaled.primitive_part()?;
        Ok((p, Rat::new(c, t)))
    }
}

impl std::ops::Index<usize> for RatVec {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl std::fmt::Display for RatVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Rectangular integer matrix, stored by rows. The column count is kept
/// explicitly so matrices with zero rows stay well-formed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat {
    ncols: usize,
    rows: Vec<IntVec>,
}

impl IntMat {
    pub fn from_rows(ncols: usize, rows: Vec<IntVec>) -> Self {
        assert!(ncols > 0, "IntMat needs at least one column");
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged matrix");
        }
        IntMat { ncols, rows }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        assert!(!rows.is_empty(), "use from_rows for empty matrices");
        Self::from_rows(
            rows[0].len(),
            rows.iter().map(|r| IntVec::from_i64(r)).collect(),
        )
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_rows(dim, (0..dim).map(|i| IntVec::unit(dim, i)).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &IntVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[IntVec] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &Int {
        &self.rows[i][j]
    }

    pub fn transpose(&self) -> IntMat {
        assert!(self.nrows() > 0, "cannot transpose a matrix with no rows");
        let rows = (0..self.ncols)
            .map(|j| IntVec::new(self.rows.iter().map(|r| r[j].clone()).collect()))
            .collect();
        IntMat::from_rows(self.nrows(), rows)
    }

    /// Matrix product `self * other`.
    pub fn mul_mat(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.ncols, other.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                IntVec::new(
                    (0..other.ncols)
                        .map(|j| {
                            r.iter()
                                .enumerate()
                                .map(|(k, e)| e * &other.rows[k][j])
                                .sum()
                        })
                        .collect(),
                )
            })
            .collect();
        IntMat::from_rows(other.ncols, rows)
    }

    /// Matrix-vector product `self * v` with `v` a column vector.
    pub fn mul_vec(&self, v: &IntVec) -> IntVec {
        assert_eq!(self.ncols, v.len());
        IntVec::new(self.rows.iter().map(|r| r.dot(v)).collect())
    }

    pub fn mul_rat_vec(&self, v: &RatVec) -> RatVec {
        assert_eq!(self.ncols, v.len());
        RatVec::new(self.rows.iter().map(|r| r.dot_rat(v)).collect())
    }

    /// Exact determinant by the Bareiss fraction-free algorithm.
    /// Requires a square matrix.
    pub fn det(&self) -> Int {
        let n = self.nrows();
        assert_eq!(n, self.ncols, "determinant of a non-square matrix");
        if n == 0 {
            return Int::one();
        }
        let mut a: Vec<Vec<Int>> = self.rows.iter().map(|r| r.0.clone()).collect();
        let mut sign = 1i32;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = &num / &prev; // exact by Bareiss
                }
                a[i][k] = Int::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// True iff square with determinant +1 or -1.
    pub fn is_unimodular(&self) -> bool {
        self.nrows() == self.ncols && self.det().abs().is_one()
    }

    /// Row-style Hermite normal form.
    ///
    /// Returns `(H, U)` with `U * self = H`, `U` unimodular, `H` in row
    /// echelon form with positive pivots and every entry above a pivot
    /// reduced into `[0, pivot)`. Zero rows sit at the bottom of `H`.
    pub fn hnf(&self) -> (IntMat, IntMat) {
        let m = self.nrows();
        let n = self.ncols;
        let mut h: Vec<Vec<Int>> = self.rows.iter().map(|r| r.0.clone()).collect();
        let mut u: Vec<Vec<Int>> = (0..m)
            .map(|i| {
                let mut r = vec![Int::zero(); m];
                if m > 0 {
                    r[i] = Int::one();
                }
                r
            })
            .collect();
        let mut pr = 0usize;
        for pc in 0..n {
            if pr == m {
                break;
            }
            let Some(pivot_row) = (pr..m).find(|&r| !h[r][pc].is_zero()) else {
                continue;
            };
            h.swap(pr, pivot_row);
            u.swap(pr, pivot_row);
            for r in pr + 1..m {
                if h[r][pc].is_zero() {
                    continue;
                }
                // Unimodular 2x2 transform sending (a, b) to (gcd, 0).
                let a = h[pr][pc].clone();
                let b = h[r][pc].clone();
                let eg = a.extended_gcd(&b);
                let (g, x, y) = (eg.gcd, eg.x, eg.y);
                let nb = -(&b / &g);
                let na = &a / &g;
                let (hp, hr): (Vec<Int>, Vec<Int>) = (0..n)
                    .map(|j| {
                        (
                            &x * &h[pr][j] + &y * &h[r][j],
                            &nb * &h[pr][j] + &na * &h[r][j],
                        )
                    })
                    .unzip();
                h[pr] = hp;
                h[r] = hr;
                let (up, ur): (Vec<Int>, Vec<Int>) = (0..m)
                    .map(|j| {
                        (
                            &x * &u[pr][j] + &y * &u[r][j],
                            &nb * &u[pr][j] + &na * &u[r][j],
                        )
                    })
                    .unzip();
                u[pr] = up;
                u[r] = ur;
            }
            if h[pr][pc].is_negative() {
                h[pr] = h[pr].iter().map(|e| -e).collect();
                u[pr] = u[pr].iter().map(|e| -e).collect();
            }
            let piv = h[pr][pc].clone();
            for r in 0..pr {
                let q = h[r][pc].div_floor(&piv);
                if q.is_zero() {
                    continue;
                }
                for j in 0..n {
                    h[r][j] = &h[r][j] - &q * &h[pr][j];
                }
                for j in 0..m {
                    u[r][j] = &u[r][j] - &q * &u[pr][j];
                }
            }
            pr += 1;
        }
        (
            IntMat::from_rows(n, h.into_iter().map(IntVec::new).collect()),
            IntMat::from_rows(m.max(1), u.into_iter().map(IntVec::new).collect()),
        )
    }

    /// Rank over the rationals (number of nonzero rows of the HNF).
    pub fn rank(&self) -> usize {
        let (h, _) = self.hnf();
        h.rows.iter().filter(|r| !r.is_zero()).count()
    }

    /// HNF-canonical basis of `{v : self * v = 0, v integer}`, one basis
    /// vector per row. The basis generates a saturated sublattice (it is
    /// the full integer kernel, not a finite-index subgroup).
    pub fn integer_kernel(&self) -> IntMat {
        if self.nrows() == 0 {
            return IntMat::identity(self.ncols);
        }
        let (h, u) = self.transpose().hnf();
        let gens: Vec<IntVec> = h
            .rows
            .iter()
            .zip(u.rows.iter())
            .filter(|(hr, _)| hr.is_zero())
            .map(|(_, ur)| ur.clone())
            .collect();
        if gens.is_empty() {
            return IntMat::from_rows(self.ncols, vec![]);
        }
        let (hk, _) = IntMat::from_rows(self.ncols, gens).hnf();
        let rows: Vec<IntVec> = hk.rows.into_iter().filter(|r| !r.is_zero()).collect();
        IntMat::from_rows(self.ncols, rows)
    }

    /// True iff `v` lies in the lattice generated by the rows of `self`.
    pub fn row_lattice_contains(&self, v: &IntVec) -> bool {
        assert_eq!(v.len(), self.ncols);
        let (h0, _) = self.hnf();
        let mut stacked = self.rows.clone();
        stacked.push(v.clone());
        let (h1, _) = IntMat::from_rows(self.ncols, stacked).hnf();
        let nz = |m: &IntMat| -> Vec<IntVec> {
            m.rows().iter().filter(|r| !r.is_zero()).cloned().collect()
        };
        nz(&h0) == nz(&h1)
    }

    /// Exact inverse of an integer matrix that happens to have an integer
    /// inverse (|det| = 1). Panics if not unimodular.
    pub fn inverse_unimodular(&self) -> IntMat {
        assert!(self.is_unimodular(), "matrix is not unimodular");
        let inv =
            crate::ratmat::inverse(&self.to_rat_rows()).expect("unimodular implies invertible");
        IntMat::from_rows(
            self.ncols,
            inv.into_iter()
                .map(|r| r.to_int().expect("unimodular inverse is integral"))
                .collect(),
        )
    }

    pub fn to_rat_rows(&self) -> Vec<RatVec> {
        self.rows.iter().map(|r| r.to_rat()).collect()
    }
}

impl std::fmt::Display for IntMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in &self.rows {
            writeln!(f, "[{r}]")?;
        }
        Ok(())
    }
}

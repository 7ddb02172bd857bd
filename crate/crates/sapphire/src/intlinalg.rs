//! Exact integer linear algebra and elementary number theory.
//!
//! Everything here is exact: 2x2 matrices use `i64`, while Smith normal
//! form runs on arbitrary-precision integers because entries can grow
//! without bound during reduction even when the input is small.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Deserializer;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A 2x2 integer matrix `[[r, s], [t, u]]`.
///
/// No invariant is imposed here; callers such as [`crate::SapphireMatrix`]
/// layer their own conditions on top.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mat2Z {
    pub r: i64,
    pub s: i64,
    pub t: i64,
    pub u: i64,
}

impl Mat2Z {
    pub fn new(r: i64, s: i64, t: i64, u: i64) -> Self {
        Mat2Z { r, s, t, u }
    }

    pub fn identity() -> Self {
        Mat2Z::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> i64 {
        self.r * self.u - self.s * self.t
    }

    pub fn trace(&self) -> i64 {
        self.r + self.u
    }

    pub fn mul(&self, other: &Mat2Z) -> Mat2Z {
        Mat2Z::new(
            self.r * other.r + self.s * other.t,
            self.r * other.s + self.s * other.u,
            self.t * other.r + self.u * other.t,
            self.t * other.s + self.u * other.u,
        )
    }

    /// Exact inverse, defined only for determinant +1 or -1.
    pub fn inv(&self) -> Result<Mat2Z, Error> {
        match self.det() {
            1 => Ok(Mat2Z::new(self.u, -self.s, -self.t, self.r)),
            -1 => Ok(Mat2Z::new(-self.u, self.s, self.t, -self.r)),
            det => Err(Error::NotUnimodular { det }),
        }
    }

    pub fn entries(&self) -> (i64, i64, i64, i64) {
        (self.r, self.s, self.t, self.u)
    }

    /// All four entries strictly positive.
    pub fn is_positive(&self) -> bool {
        self.r > 0 && self.s > 0 && self.t > 0 && self.u > 0
    }
}

impl std::ops::Neg for Mat2Z {
    type Output = Mat2Z;
    fn neg(self) -> Mat2Z {
        Mat2Z::new(-self.r, -self.s, -self.t, -self.u)
    }
}

impl std::ops::Mul for Mat2Z {
    type Output = Mat2Z;
    fn mul(self, rhs: Mat2Z) -> Mat2Z {
        Mat2Z::mul(&self, &rhs)
    }
}

impl fmt::Display for Mat2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}; {} {}", self.r, self.s, self.t, self.u)
    }
}

impl FromStr for Mat2Z {
    type Err = Error;

    /// Accepts both `"r s; t u"` and JSON `[[r,s],[t,u]]`.
    fn from_str(text: &str) -> Result<Self, Error> {
        let trimmed = text.trim();
        let err = || Error::ParseMatrix(text.to_string());
        if trimmed.starts_with('[') {
            let m: [[i64; 2]; 2] = serde_json::from_str(trimmed).map_err(|_| err())?;
            return Ok(Mat2Z::new(m[0][0], m[0][1], m[1][0], m[1][1]));
        }
        let rows: Vec<&str> = trimmed.split(';').collect();
        if rows.len() != 2 {
            return Err(err());
        }
        let mut entries = Vec::with_capacity(4);
        for row in rows {
            let cells: Vec<&str> = row.split_whitespace().collect();
            if cells.len() != 2 {
                return Err(err());
            }
            for cell in cells {
                entries.push(cell.parse::<i64>().map_err(|_| err())?);
            }
        }
        Ok(Mat2Z::new(entries[0], entries[1], entries[2], entries[3]))
    }
}

impl Serialize for Mat2Z {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [[self.r, self.s], [self.t, self.u]].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Mat2Z {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let m = <[[i64; 2]; 2]>::deserialize(deserializer)?;
        Ok(Mat2Z::new(m[0][0], m[0][1], m[1][0], m[1][1]))
    }
}

/// A dense integer matrix with arbitrary-precision entries, used for
/// abelianized relation matrices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    /// Builds a matrix from machine-integer rows. The column count is
    /// explicit so the empty-row (free group) case stays well-defined.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {i} has wrong length");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }
}

/// A finitely generated abelian group in canonical form: invariant factors
/// `d1 | d2 | ...` (all at least 2) plus a free rank.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AbelianGroup {
    invariant_factors: Vec<BigUint>,
    free_rank: usize,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { invariant_factors: Vec::new(), free_rank: 0 }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { invariant_factors: Vec::new(), free_rank: rank }
    }

    /// Canonicalizes an arbitrary direct sum of cyclic groups into
    /// invariant-factor form. Orders equal to 1 are dropped.
    ///
    /// This is how presentations like `Z_6 + Z_4` become comparable with
    /// Smith normal form output (`Z_2 + Z_12` in that example).
    pub fn from_cyclic_orders(orders: &[u64], free_rank: usize) -> Self {
        let mut exponents: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &order in orders {
            assert!(order >= 1, "cyclic order must be positive");
            if order == 1 {
                continue;
            }
            let factors = factorize(order as i64).expect("order is positive");
            for &(p, e) in factors.factors() {
                exponents.entry(p).or_default().push(e);
            }
        }
        for exps in exponents.values_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
        }
        let count = exponents.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = Vec::with_capacity(count);
        for slot in 0..count {
            let mut f = BigUint::from(1u32);
            for (&p, exps) in &exponents {
                if let Some(&e) = exps.get(slot) {
                    f *= BigUint::from(p).pow(e);
                }
            }
            factors.push(f);
        }
        factors.reverse();
        AbelianGroup { invariant_factors: factors, free_rank }
    }

    fn from_diagonal(diagonal: Vec<BigInt>, free_rank: usize) -> Self {
        let one = BigInt::from(1);
        let invariant_factors: Vec<BigUint> = diagonal
            .into_iter()
            .filter(|d| *d != one)
            .map(|d| d.to_biguint().expect("diagonal entries are positive"))
            .collect();
        debug_assert!(invariant_factors
            .windows(2)
            .all(|w| (&w[1] % &w[0]).is_zero()));
        AbelianGroup { invariant_factors, free_rank }
    }

    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<BigUint> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().product())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z_{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(untagged)]
        enum Factor {
            Small(u64),
            Big(String),
        }
        let torsion: Vec<Factor> = self
            .invariant_factors
            .iter()
            .map(|d| match d.to_u64() {
                Some(v) => Factor::Small(v),
                None => Factor::Big(d.to_string()),
            })
            .collect();
        let mut st = serializer.serialize_struct("AbelianGroup", 2)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.serialize_field("torsion", &torsion)?;
        st.end()
    }
}

/// Cokernel of an integer matrix acting on the free module of rank
/// `cols()`: the invariant factors together with `cols - rank` free
/// summands.
pub fn smith_normal_form(m: &IntMatrix) -> AbelianGroup {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let rows = m.rows();
    let cols = m.cols();
    let mut diagonal = Vec::new();

    let mut k = 0;
    while k < rows.min(cols) {
        let Some((pi, pj)) = min_nonzero(&a, k) else {
            break;
        };
        a.swap(k, pi);
        swap_cols(&mut a, k, pj);
        loop {
            let mut dirty = false;
            for i in k + 1..rows {
                if !a[i][k].is_zero() {
                    let q = &a[i][k] / &a[k][k];
                    if !q.is_zero() {
                        for j in k..cols {
                            let sub = &q * &a[k][j];
                            a[i][j] -= sub;
                        }
                    }
                    if !a[i][k].is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                for j in k + 1..cols {
                    if !a[k][j].is_zero() {
                        let q = &a[k][j] / &a[k][k];
                        if !q.is_zero() {
                            for i in k..rows {
                                let sub = &q * &a[i][k];
                                a[i][j] -= sub;
                            }
                        }
                        if !a[k][j].is_zero() {
                            dirty = true;
                        }
                    }
                }
            }
            if dirty {
                let (pi, pj) = min_nonzero(&a, k).expect("dirty pivot leaves nonzero entries");
                a.swap(k, pi);
                swap_cols(&mut a, k, pj);
                continue;
            }
            // Row and column are clear; force the pivot to divide the rest.
            let offender = (k + 1..rows)
                .find(|&i| (k + 1..cols).any(|j| !(&a[i][j] % &a[k][k]).is_zero()));
            match offender {
                Some(i) => {
                    for j in k..cols {
                        let add = a[i][j].clone();
                        a[k][j] += add;
                    }
                }
                None => break,
            }
        }
        if a[k][k].is_negative() {
            for j in k..cols {
                a[k][j] = -a[k][j].clone();
            }
        }
        diagonal.push(a[k][k].clone());
        k += 1;
    }

    let rank = diagonal.len();
    AbelianGroup::from_diagonal(diagonal, cols - rank)
}

fn min_nonzero(a: &[Vec<BigInt>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(k) {
        for (j, v) in row.iter().enumerate().skip(k) {
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[bi][bj].magnitude() <= v.magnitude() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<BigInt>], j1: usize, j2: usize) {
    if j1 == j2 {
        return;
    }
    for row in a {
        row.swap(j1, j2);
    }
}

/// Prime factorization as `(prime, multiplicity)` pairs with primes
/// strictly increasing. `factorize(1)` is the empty map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactorMap {
    factors: Vec<(u64, u32)>,
}

impl FactorMap {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Recomposes the factored value.
    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

/// Trial-division factorization of a positive integer.
pub fn factorize(x: i64) -> Result<FactorMap, Error> {
    if x < 1 {
        return Err(Error::Domain(format!("factorize needs a positive integer, got {x}")));
    }
    let mut n = x as u64;
    let mut factors = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut n);
    let mut p = 3;
    while p * p <= n {
        push(p, &mut n);
        p += 2;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Ok(FactorMap { factors })
}

/// Trial-division primality check.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The p-adic valuation |x|_p: the largest e with p^e dividing x.
/// Zero when p does not divide x.
pub fn valuation(x: i64, p: u64) -> Result<u32, Error> {
    if x == 0 {
        return Err(Error::Domain("valuation of 0 is undefined".to_string()));
    }
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let mut n = x.unsigned_abs();
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    Ok(e)
}

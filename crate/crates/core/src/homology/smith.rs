//! Smith normal form and ranks of integer matrices.
//!
//! Elimination runs in checked `i64` arithmetic and restarts in `BigInt` on the
//! first overflow, so results are always exact.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Dense integer matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

trait Entry: Clone + PartialEq + Sized {
    fn is_zero(&self) -> bool;
    fn magnitude_lt(&self, other: &Self) -> bool;
    fn is_unit(&self) -> bool;
    /// `self - q * b`, or `None` on overflow.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn quot(&self, b: &Self) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn quot(&self, b: &Self) -> Self {
        self / b
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn quot(&self, b: &Self) -> Self {
        self / b
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Work<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
}

impl<T: Entry> Work<T> {
    fn at(&self, r: usize, c: usize) -> &T {
        &self.a[r * self.cols + c]
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(r1 * self.cols + c, r2 * self.cols + c);
        }
    }

    fn swap_cols(&mut self, c1: usize, c2: usize) {
        if c1 == c2 {
            return;
        }
        for r in 0..self.rows {
            self.a.swap(r * self.cols + c1, r * self.cols + c2);
        }
    }

    /// Smallest-magnitude nonzero entry in the trailing block from `t`.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                let x = self.at(r, c);
                if x.is_zero() {
                    continue;
                }
                if x.is_unit() {
                    return Some((r, c));
                }
                match best {
                    Some((br, bc)) if !x.magnitude_lt(self.at(br, bc)) => {}
                    _ => best = Some((r, c)),
                }
            }
        }
        best
    }

    /// Diagonalize; returns the nonzero diagonal entries or `None` on overflow.
    fn diagonalize(&mut self) -> Option<Vec<T>> {
        let mut diag = Vec::new();
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((r, c)) = self.pivot(t) else { break };
            self.swap_rows(t, r);
            self.swap_cols(t, c);
            loop {
                let mut dirty = false;
                let p = self.at(t, t).clone();
                for r in t + 1..self.rows {
                    if self.at(r, t).is_zero() {
                        continue;
                    }
                    let q = self.at(r, t).quot(&p);
                    for c in t..self.cols {
                        let b = self.at(t, c).clone();
                        if b.is_zero() {
                            continue;
                        }
                        let idx = r * self.cols + c;
                        self.a[idx] = self.a[idx].sub_mul(&q, &b)?;
                    }
                    if !self.at(r, t).is_zero() {
                        dirty = true;
                    }
                }
                for c in t + 1..self.cols {
                    if self.at(t, c).is_zero() {
                        continue;
                    }
                    let q = self.at(t, c).quot(&p);
                    for r in t..self.rows {
                        let b = self.at(r, t).clone();
                        if b.is_zero() {
                            continue;
                        }
                        let idx = r * self.cols + c;
                        self.a[idx] = self.a[idx].sub_mul(&q, &b)?;
                    }
                    if !self.at(t, c).is_zero() {
                        dirty = true;
                    }
                }
                if !dirty {
                    break;
                }
                // A remainder smaller than the pivot survived; move it to the pivot slot.
                let mut best = (t, t);
                for r in t..self.rows {
                    if !self.at(r, t).is_zero() && self.at(r, t).magnitude_lt(self.at(best.0, best.1)) {
                        best = (r, t);
                    }
                }
                for c in t..self.cols {
                    if !self.at(t, c).is_zero() && self.at(t, c).magnitude_lt(self.at(best.0, best.1)) {
                        best = (t, c);
                    }
                }
                self.swap_rows(t, best.0);
                self.swap_cols(t, best.1);
            }
            diag.push(self.at(t, t).clone());
            t += 1;
        }
        Some(diag)
    }
}

/// Nonzero diagonal of a diagonalization of `m` (not yet a divisibility chain).
fn diagonal(m: &DenseMatrix) -> Vec<BigInt> {
    let mut w = Work { rows: m.rows, cols: m.cols, a: m.data.clone() };
    if let Some(d) = w.diagonalize() {
        return d.iter().map(Entry::to_big).collect();
    }
    let mut w = Work { rows: m.rows, cols: m.cols, a: m.data.iter().map(|&x| BigInt::from(x)).collect() };
    w.diagonalize().expect("arbitrary precision cannot overflow")
}

/// Invariant factors `d_1 | d_2 | … | d_r` of `m`, all positive.
pub fn invariant_factors(m: &DenseMatrix) -> Vec<BigUint> {
    let mut d: Vec<BigUint> = diagonal(m).into_iter().map(|x| x.magnitude().clone()).collect();
    // Turn the diagonal into a divisibility chain: (a, b) -> (gcd, lcm) preserves the module.
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if d[i].is_one() {
                break;
            }
            if (&d[j] % &d[i]).is_zero() {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = &d[i] / &g * &d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Rank over the rationals.
pub fn rank_rational(m: &DenseMatrix) -> usize {
    diagonal(m).len()
}

/// Rank over the field with `p` elements (`p` prime, below 2^31).
pub fn rank_mod_p(m: &DenseMatrix, p: u64) -> usize {
    assert!((2..(1 << 31)).contains(&p), "prime out of supported range");
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<u64> = m.data.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| a[r * cols + c] != 0) else { continue };
        for k in 0..cols {
            a.swap(pr * cols + k, rank * cols + k);
        }
        let inv = pow_mod(a[rank * cols + c], p - 2, p);
        for k in c..cols {
            a[rank * cols + k] = a[rank * cols + k] * inv % p;
        }
        for r in 0..rows {
            if r == rank {
                continue;
            }
            let f = a[r * cols + c];
            if f == 0 {
                continue;
            }
            for k in c..cols {
                let sub = f * a[rank * cols + k] % p;
                a[r * cols + k] = (a[r * cols + k] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: usize, cols: usize, data: &[i64]) -> DenseMatrix {
        DenseMatrix { rows, cols, data: data.to_vec() }
    }

    #[test]
    fn diagonal_two_by_two() {
        let m = mat(2, 2, &[2, 4, 6, 8]);
        let f = invariant_factors(&m);
        assert_eq!(f, vec![BigUint::from(2u32), BigUint::from(4u32)]);
    }

    #[test]
    fn chain_from_coprime_diagonal() {
        let m = mat(2, 2, &[2, 0, 0, 3]);
        assert_eq!(invariant_factors(&m), vec![BigUint::from(1u32), BigUint::from(6u32)]);
    }

    #[test]
    fn rank_over_fields() {
        let m = mat(2, 2, &[1, 1, 1, -1]);
        assert_eq!(rank_rational(&m), 2);
        assert_eq!(rank_mod_p(&m, 2), 1);
        assert_eq!(rank_mod_p(&m, 3), 2);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = 3_000_000_000i64;
        let m = mat(2, 2, &[big, big + 1, big + 2, big * 3]);
        let f = invariant_factors(&m);
        let det = BigInt::from(big) * BigInt::from(big * 3) - BigInt::from(big + 1) * BigInt::from(big + 2);
        let prod: BigUint = f.iter().product();
        assert_eq!(prod, det.magnitude().clone());
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(7) && !is_prime(9) && !is_prime(1));
    }
}
